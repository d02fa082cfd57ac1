//! Resumable surveys. Progress is a contiguous prefix of shards; the
//! checkpoint file records the next shard to run plus the merged partial
//! state, and is replaced atomically after every batch.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::atoms::AtomTable;
use crate::error::{Error, Result};
use crate::factor::Limits;
use crate::fsutil::{write_atomic, LockFile};
use crate::group::Block;
use crate::report::{config_hash, VERSION};
use crate::survey::{check_survey_group, ShardRunner, SurveyConfig, SurveyPartial, SurveyReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PartialRecord {
    found: Vec<(Vec<u64>, String)>,
    blocks_examined: u64,
    skipped: Vec<String>,
    best: Option<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: String,
    pub config_hash: String,
    pub config: SurveyConfig,
    pub limits: Limits,
    pub next_shard: usize,
    pub total_shards: usize,
    partial: PartialRecord,
}

impl Checkpoint {
    fn fresh(config: &SurveyConfig, limits: Limits) -> Self {
        Self {
            version: VERSION.to_string(),
            config_hash: config_hash(config, &limits),
            config: config.clone(),
            limits,
            next_shard: 0,
            total_shards: config.shard_count(),
            partial: encode(&SurveyPartial::default()),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.next_shard >= self.total_shards
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        let cp: Checkpoint = serde_json::from_slice(&bytes)
            .map_err(|e| Error::Corrupt { path: path.to_path_buf(), message: e.to_string() })?;
        if cp.version != VERSION {
            return Err(Error::VersionMismatch(format!(
                "checkpoint written by version {}, this is {VERSION}",
                cp.version
            )));
        }
        if cp.config_hash != config_hash(&cp.config, &cp.limits) {
            return Err(Error::Corrupt { path: path.to_path_buf(), message: "config hash does not match".into() });
        }
        if cp.total_shards != cp.config.shard_count() || cp.next_shard > cp.total_shards {
            return Err(Error::Corrupt { path: path.to_path_buf(), message: "bad shard cursor".into() });
        }
        Ok(cp)
    }

    fn save(&self, path: &Path) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        write_atomic(path, &bytes)
    }

    pub fn partial(&self) -> Result<SurveyPartial> {
        decode(&self.config, &self.partial)
    }
}

fn encode(p: &SurveyPartial) -> PartialRecord {
    PartialRecord {
        found: p.found.iter().map(|(t, w)| (t.clone(), w.to_text())).collect(),
        blocks_examined: p.blocks_examined,
        skipped: p.skipped.iter().map(Block::to_text).collect(),
        best: p.best.as_ref().map(|(c, w)| (*c, w.to_text())),
    }
}

fn decode(config: &SurveyConfig, r: &PartialRecord) -> Result<SurveyPartial> {
    let parse = |s: &str| Block::parse(config.group, s);
    Ok(SurveyPartial {
        found: r.found.iter().map(|(t, w)| Ok((t.clone(), parse(w)?))).collect::<Result<_>>()?,
        blocks_examined: r.blocks_examined,
        skipped: r.skipped.iter().map(|s| parse(s)).collect::<Result<_>>()?,
        best: r.best.as_ref().map(|(c, w)| Ok::<_, Error>((*c, parse(w)?))).transpose()?,
    })
}

/// Outcome of one invocation: finished, or stopped early by `max_shards`.
#[derive(Debug)]
pub enum SurveyProgress {
    Finished(Box<SurveyReport>),
    Interrupted { next_shard: usize, total_shards: usize },
}

/// Runs (or continues) the survey recorded at `path`. A missing file starts
/// from scratch with `config`; an existing one must match `config` exactly.
/// At most `max_shards` shards are evaluated in this call when given.
pub fn survey_checkpointed(
    config: &SurveyConfig,
    limits: Limits,
    path: &Path,
    max_shards: Option<usize>,
) -> Result<SurveyProgress> {
    survey_checkpointed_with_table(config, limits, path, max_shards, None)
}

/// As [`survey_checkpointed`], reusing a prebuilt global atom table.
pub fn survey_checkpointed_with_table(
    config: &SurveyConfig,
    limits: Limits,
    path: &Path,
    max_shards: Option<usize>,
    table: Option<Arc<AtomTable>>,
) -> Result<SurveyProgress> {
    check_survey_group(config)?;
    let _lock = LockFile::acquire(path)?;
    let cp = if path.exists() {
        let cp = Checkpoint::load(path)?;
        if cp.config != *config || cp.limits != limits {
            return Err(Error::VersionMismatch(format!(
                "checkpoint {} was written for config hash {}, requested {}",
                path.display(),
                cp.config_hash,
                config_hash(config, &limits)
            )));
        }
        cp
    } else {
        Checkpoint::fresh(config, limits)
    };
    drive(cp, path, max_shards, table)
}

/// Continues from an existing checkpoint using the configuration stored in it.
pub fn resume_survey(path: &Path, max_shards: Option<usize>) -> Result<SurveyProgress> {
    resume_survey_with_table(path, max_shards, None)
}

/// As [`resume_survey`]; a table for a different group is an error.
pub fn resume_survey_with_table(
    path: &Path,
    max_shards: Option<usize>,
    table: Option<Arc<AtomTable>>,
) -> Result<SurveyProgress> {
    let _lock = LockFile::acquire(path)?;
    let cp = Checkpoint::load(path)?;
    check_survey_group(&cp.config)?;
    drive(cp, path, max_shards, table)
}

/// Group order recorded in a checkpoint, for picking the matching atom table.
pub fn checkpoint_group(path: &Path) -> Result<crate::group::CyclicGroup> {
    Ok(Checkpoint::load(path)?.config.group)
}

fn drive(
    mut cp: Checkpoint,
    path: &Path,
    max_shards: Option<usize>,
    table: Option<Arc<AtomTable>>,
) -> Result<SurveyProgress> {
    let config = cp.config.clone();
    let limits = cp.limits;
    if cp.is_complete() {
        let partial = cp.partial()?;
        return Ok(SurveyProgress::Finished(Box::new(SurveyReport::from_partial(&config, limits, &partial)?)));
    }
    let runner = match table {
        Some(t) => ShardRunner::with_table(&config, limits, t)?,
        None => ShardRunner::new(&config, limits)?,
    };
    let batch = rayon::current_num_threads().max(1);
    let stop = max_shards.map_or(cp.total_shards, |m| (cp.next_shard + m).min(cp.total_shards));
    let mut partial = cp.partial()?;
    while cp.next_shard < stop {
        let end = (cp.next_shard + batch).min(stop);
        partial.merge(runner.run_shards(cp.next_shard..end)?);
        cp.next_shard = end;
        cp.partial = encode(&partial);
        cp.save(path)?;
        log::info!("checkpoint: {}/{} shards", cp.next_shard, cp.total_shards);
    }
    if !cp.is_complete() {
        return Ok(SurveyProgress::Interrupted { next_shard: cp.next_shard, total_shards: cp.total_shards });
    }
    Ok(SurveyProgress::Finished(Box::new(SurveyReport::from_partial(&config, limits, &partial)?)))
}
