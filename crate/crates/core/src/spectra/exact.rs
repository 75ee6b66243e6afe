//! Exact integer linear algebra: characteristic polynomials by multi-modular
//! Hessenberg reduction with Chinese remaindering, and rank by fraction-free
//! (Bareiss) elimination over big integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, largest first.
fn large_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Characteristic polynomial of a square matrix modulo `p`, low degree first.
pub(crate) fn charpoly_mod(m: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut h: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|&x| reduce(x)).collect()).collect();

    // Similarity transform to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let u = mul_mod(h[i][j], inv, p);
            if u == 0 {
                continue;
            }
            // row_i -= u * row_{j+1}
            let (upper, lower) = h.split_at_mut(i);
            for (x, &y) in lower[0].iter_mut().zip(&upper[j + 1]) {
                *x = (*x + p - mul_mod(u, y, p)) % p;
            }
            // col_{j+1} += u * col_i
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[j + 1] = (row[j + 1] + t) % p;
            }
        }
    }

    // polys[k] is the characteristic polynomial of the leading k×k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        // (x - h[k][k]) * polys[k]
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(h[k][k], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in 1..=k {
            prod = mul_mod(prod, h[k - i + 1][k - i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(h[k - i][k], prod, p);
            for (d, &c) in polys[k - i].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact characteristic polynomial `det(xI − M)`, coefficients low degree first.
pub fn characteristic_polynomial(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // Coefficient of x^(n-k) is a sum of C(n,k) principal minors, each bounded
    // by Hadamard's inequality through the largest row norm.
    let max_row_sq = m
        .iter()
        .map(|row| row.iter().map(|&x| (x as f64) * (x as f64)).sum::<f64>())
        .fold(1.0f64, f64::max);
    let bits = n as f64 + n as f64 * 0.5 * max_row_sq.log2() + 4.0;
    let modulus_bits_needed = bits.ceil() as u64 + 1;

    let mut residue = vec![BigUint::zero(); n + 1];
    let mut modulus = BigUint::one();
    let mut have_bits = 0u64;
    for p in large_primes() {
        let coeffs = charpoly_mod(m, p);
        let m_mod_p = (&modulus % p).to_u64().unwrap();
        let m_inv = inv_mod(m_mod_p, p);
        for (x, &r) in residue.iter_mut().zip(&coeffs) {
            let x_mod_p = (&*x % p).to_u64().unwrap();
            let t = mul_mod((r + p - x_mod_p) % p, m_inv, p);
            *x += &modulus * t;
        }
        modulus *= p;
        have_bits += 61;
        if have_bits >= modulus_bits_needed {
            break;
        }
    }
    let half = &modulus >> 1;
    residue
        .into_iter()
        .map(|x| {
            if x > half {
                BigInt::from(x) - BigInt::from(modulus.clone())
            } else {
                BigInt::from(x)
            }
        })
        .collect()
}

/// Divides `poly` by `(x − root)`, returning the quotient if the remainder is zero.
pub fn divide_by_linear(poly: &[BigInt], root: i64) -> Option<Vec<BigInt>> {
    let n = poly.len();
    if n < 2 {
        return None;
    }
    let r = BigInt::from(root);
    let mut quotient = vec![BigInt::zero(); n - 1];
    let mut carry = poly[n - 1].clone();
    for k in (0..n - 1).rev() {
        quotient[k] = carry.clone();
        carry = &poly[k] + &r * &carry;
    }
    carry.is_zero().then_some(quotient)
}

/// Multiplicity of `root` as a root of `poly`, by repeated synthetic division.
pub fn root_multiplicity(poly: &[BigInt], root: i64) -> usize {
    let mut current = poly.to_vec();
    let mut k = 0;
    while let Some(q) = divide_by_linear(&current, root) {
        current = q;
        k += 1;
    }
    k
}

/// Exact rank of an integer matrix by fraction-free Gaussian elimination.
pub fn exact_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss step must divide exactly");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_charpolys() {
        // C4: x^4 - 4x^2
        let c4 = vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 1, 0]];
        assert_eq!(characteristic_polynomial(&c4), big(&[0, 0, -4, 0, 1]));
        // [[2,1],[1,2]]: x^2 - 4x + 3
        assert_eq!(characteristic_polynomial(&[vec![2, 1], vec![1, 2]]), big(&[3, -4, 1]));
        // non-symmetric, needs a row swap in the Hessenberg step
        let m = vec![vec![1, 2, 3], vec![0, 0, 1], vec![4, 5, 6]];
        // det(xI - M) = x^3 - 7x^2 - 11x - 3 (expanded by hand)
        assert_eq!(characteristic_polynomial(&m), big(&[-3, -11, -7, 1]));
    }

    #[test]
    fn multiplicities() {
        let p = big(&[0, 0, -4, 0, 1]);
        assert_eq!(root_multiplicity(&p, 0), 2);
        assert_eq!(root_multiplicity(&p, 2), 1);
        assert_eq!(root_multiplicity(&p, -2), 1);
        assert_eq!(root_multiplicity(&p, 1), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(exact_rank(&[vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(exact_rank(&[vec![0, 0, 1], vec![0, 0, 2], vec![1, 1, 0]]), 2);
        assert_eq!(exact_rank(&vec![vec![0; 3]; 3]), 0);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_305_843_009_213_693_953));
    }
}
