//! Persistent verdict records (one JSON object per line) and the batch
//! atlas runner, plus the pinned reproduction cases.

mod repro;

pub use repro::{repro, repro_against, CaseExpectation, Check, Expectations, ReproReport, REPRO_CASES};

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::mpsc;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equiv::Action;
use crate::group::GroupContext;
use crate::verify::{group_property, Limits, Property, Verdict};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub s: String,
    pub t: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordStats {
    pub orbit_count: u64,
    pub iso_calls: u64,
    pub elapsed_ms: u64,
}

/// One verdict as stored in an atlas file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub property: Property,
    pub valency: Option<usize>,
    pub set: Option<String>,
    /// `None` when the run hit a resource cap; see `error`.
    pub holds: Option<bool>,
    pub witness: Option<WitnessPair>,
    pub stats: RecordStats,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds since the Unix epoch; not part of the key.
    pub recorded_at: u64,
}

/// Uniqueness key of a record within one file.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordKey {
    pub group: String,
    pub property: Property,
    pub valency: Option<usize>,
    pub set: Option<String>,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

impl AtlasRecord {
    pub fn from_verdict(v: &Verdict) -> Self {
        AtlasRecord {
            schema_version: SCHEMA_VERSION,
            group: v.group.clone(),
            order: v.order,
            property: v.property,
            valency: v.valency,
            set: v.set.clone(),
            holds: Some(v.holds),
            witness: v.witness.as_ref().map(|w| WitnessPair {
                s: w.s_literal.clone(),
                t: w.t_literal.clone(),
            }),
            stats: RecordStats {
                orbit_count: v.stats.orbit_count,
                iso_calls: v.stats.iso_calls,
                elapsed_ms: v.stats.elapsed_ms,
            },
            engine_version: ENGINE_VERSION.into(),
            error: None,
            recorded_at: now(),
        }
    }

    /// A record for a run that stopped at a resource limit.
    pub fn failed(group: &str, order: usize, property: Property, valency: Option<usize>, err: &Error) -> Self {
        AtlasRecord {
            schema_version: SCHEMA_VERSION,
            group: group.into(),
            order,
            property,
            valency,
            set: None,
            holds: None,
            witness: None,
            stats: RecordStats::default(),
            engine_version: ENGINE_VERSION.into(),
            error: Some(err.to_string()),
            recorded_at: now(),
        }
    }

    pub fn key(&self) -> RecordKey {
        RecordKey {
            group: self.group.clone(),
            property: self.property,
            valency: self.valency,
            set: self.set.clone(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }
}

/// Reads every record; a blank file or missing file is empty.
pub fn read_records(path: &Path) -> Result<Vec<AtlasRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(AtlasRecord::from_line(&line).map_err(|e| Error::Parse {
            position: i + 1,
            token: line.chars().take(40).collect(),
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Appends one record and flushes, so an interrupted run loses at most the
/// record in flight.
pub fn append_record(path: &Path, record: &AtlasRecord) -> Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{}", record.to_line())?;
    f.flush()?;
    Ok(())
}

/// Rewrites the file sorted by key, keeping the first record for each key.
pub fn finalize(path: &Path) -> Result<Vec<AtlasRecord>> {
    let mut by_key = BTreeMap::new();
    for r in read_records(path)? {
        by_key.entry(r.key()).or_insert(r);
    }
    let records: Vec<AtlasRecord> = by_key.into_values().collect();
    let mut text = String::new();
    for r in &records {
        text += &r.to_line();
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(records)
}

/// One `(group, property)` job for [`run_atlas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasJob {
    pub descriptor: String,
    pub property: Property,
    pub valency: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtlasSummary {
    pub computed: usize,
    pub skipped: usize,
    pub records: Vec<AtlasRecord>,
}

fn run_job(job: &AtlasJob, limits: &Limits) -> Result<AtlasRecord> {
    let ctx = GroupContext::from_descriptor(&job.descriptor)?;
    let action = match job.property {
        Property::Ci | Property::MCi => Action::Ci,
        Property::Bci | Property::MBci => Action::Bci,
        other => return Err(Error::Hypothesis(format!("atlas runs group properties, not {other}"))),
    };
    match group_property(&ctx, action, job.valency, limits) {
        Ok(mut v) => {
            v.group = job.descriptor.clone();
            Ok(AtlasRecord::from_verdict(&v))
        }
        Err(e) if e.is_resource_limit() => Ok(AtlasRecord::failed(&job.descriptor, ctx.order(), job.property, job.valency, &e)),
        Err(e) => Err(e),
    }
}

/// Computes every job whose key is not yet in `path`, appending records as
/// they finish (one writer, many workers), then sorts the file by key.
pub fn run_atlas(jobs: &[AtlasJob], limits: &Limits, path: &Path) -> Result<AtlasSummary> {
    let done: std::collections::HashSet<RecordKey> = read_records(path)?.iter().map(AtlasRecord::key).collect();
    let pending: Vec<&AtlasJob> = jobs
        .iter()
        .filter(|j| {
            !done.contains(&RecordKey {
                group: j.descriptor.clone(),
                property: j.property,
                valency: j.valency,
                set: None,
            })
        })
        .collect();
    let skipped = jobs.len() - pending.len();
    let (tx, rx) = mpsc::channel::<Result<AtlasRecord>>();
    let mut first_error = None;
    // Workers run in the rayon pool; this thread is the single writer. It
    // must not be a pool thread, or a one-thread pool would deadlock.
    std::thread::scope(|scope| {
        scope.spawn(|| {
            pending.par_iter().for_each_with(tx, |tx, job| {
                let _ = tx.send(run_job(job, limits));
            });
        });
        for r in rx {
            if let Err(e) = r.and_then(|rec| append_record(path, &rec)) {
                first_error.get_or_insert(e);
            }
        }
    });
    if let Some(e) = first_error {
        return Err(e);
    }
    let records = finalize(path)?;
    Ok(AtlasSummary {
        computed: pending.len(),
        skipped,
        records,
    })
}
