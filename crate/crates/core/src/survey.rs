//! Exhaustive block enumeration and realizability surveys over Z_n.
//!
//! Blocks are enumerated with `v_0 = 0`: the atom `0` is prime, so zeros
//! shift every length uniformly and never change a delta set. The block
//! space is split into shards by the multiplicity of the smallest allowed
//! residue; shard results merge by set union with a least-witness
//! tie-break, so any evaluation order yields the same report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::{enumerate_atoms_with_limit, AtomTable};
use crate::error::{Error, Result};
use crate::factor::{DeltaSet, Factorization, Factorizer, Limits};
use crate::group::{Block, CyclicGroup};

/// Largest `n − 2` for which all subsets of {1, …, n−2} are tabulated.
pub const MAX_SURVEY_RANGE: u64 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub group: CyclicGroup,
    pub max_len: u64,
    /// Allowed residues (restriction to B(G, S)); `None` means all of G.
    pub support: Option<BTreeSet<u64>>,
    pub quotient_by_units: bool,
}

impl SurveyConfig {
    pub fn new(group: CyclicGroup, max_len: u64) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidParameter("max_len must be at least 1".into()));
        }
        Ok(Self { group, max_len, support: None, quotient_by_units: false })
    }

    /// Bound 2n + 4: covers g^n(−g)^n and the length-14 example block over Z_5.
    pub fn with_default_bound(group: CyclicGroup) -> Self {
        Self::new(group, default_max_len(group.order())).expect("bound is positive")
    }

    pub fn with_support<I: IntoIterator<Item = u64>>(mut self, support: I) -> Result<Self> {
        let set: BTreeSet<u64> = support.into_iter().collect();
        if let Some(&r) = set.iter().find(|&&r| r >= self.group.order()) {
            return Err(Error::ResidueOutOfRange { residue: r, n: self.group.order() });
        }
        self.support = Some(set);
        Ok(self)
    }

    pub fn quotient_by_units(mut self, on: bool) -> Self {
        self.quotient_by_units = on;
        self
    }

    /// Nonzero residues a block may use, increasing.
    pub fn allowed_residues(&self) -> Vec<u64> {
        (1..self.group.order()).filter(|r| self.support.as_ref().is_none_or(|s| s.contains(r))).collect()
    }

    pub fn shard_count(&self) -> usize {
        self.max_len as usize + 1
    }

    fn in_support(&self, b: &Block) -> bool {
        match &self.support {
            None => true,
            Some(s) => b.support().iter().all(|r| s.contains(r)),
        }
    }

    // Orbit representative: lexicographically greatest multiplicity vector
    // among the unit images that stay inside the support, so mass sits on
    // small residues (g^n rather than (2g)^n).
    fn is_orbit_rep(&self, b: &Block) -> bool {
        self.group.units().into_iter().skip(1).all(|u| {
            let img = b.scale(u).expect("u is a unit");
            !self.in_support(&img) || *b >= img
        })
    }

    /// Blocks of shard `k`: the smallest allowed residue has multiplicity `k`.
    pub fn shard_blocks(&self, k: usize) -> Vec<Block> {
        let residues = self.allowed_residues();
        let mut out = Vec::new();
        let Some((&lead, rest)) = residues.split_first() else {
            return out;
        };
        let k = k as u64;
        if k > self.max_len {
            return out;
        }
        let n = self.group.order();
        let mut mult = vec![0u64; n as usize];
        mult[lead as usize] = k;
        let sum = (lead * k) % n;
        self.extend(rest, &mut mult, k, sum, &mut out);
        out
    }

    fn extend(&self, rest: &[u64], mult: &mut Vec<u64>, len: u64, sum: u64, out: &mut Vec<Block>) {
        let n = self.group.order();
        let Some((&r, tail)) = rest.split_first() else {
            if len > 0 && sum == 0 {
                let b = Block::from_mult(self.group, mult.clone()).expect("zero-sum by construction");
                if !self.quotient_by_units || self.is_orbit_rep(&b) {
                    out.push(b);
                }
            }
            return;
        };
        for c in 0..=(self.max_len - len) {
            mult[r as usize] = c;
            self.extend(tail, mult, len + c, (sum + r * (c % n)) % n, out);
        }
        mult[r as usize] = 0;
    }
}

pub fn default_max_len(n: u64) -> u64 {
    2 * n + 4
}

/// Every nonempty zero-free block allowed by `config`, each exactly once.
pub fn enumerate_blocks(config: &SurveyConfig) -> impl Iterator<Item = Block> + '_ {
    (0..config.shard_count()).flat_map(move |k| config.shard_blocks(k))
}

/// Whether T cannot be realized because it contains n − 2 but is not {n − 2}.
pub fn corollary_excludes(n: u64, t: &BTreeSet<u64>) -> Result<bool> {
    if t.is_empty() {
        return Err(Error::OutOfRange("T must be nonempty".into()));
    }
    if n < 3 || t.iter().any(|&d| d == 0 || d > n - 2) {
        return Err(Error::OutOfRange(format!("T must be a subset of {{1, …, {}}}", n.saturating_sub(2))));
    }
    Ok(t.contains(&(n - 2)) && t.len() > 1)
}

/// All nonempty subsets of {1, …, k}, ordered by size then lexicographically.
pub fn nonempty_subsets(k: u64) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> =
        (1u64..(1u64 << k)).map(|mask| (1..=k).filter(|d| mask & (1 << (d - 1)) != 0).collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn better_witness(candidate: &Block, current: Option<&Block>) -> bool {
    current.is_none_or(|w| candidate.witness_cmp(w).is_lt())
}

/// Mergeable survey state for a set of shards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyPartial {
    /// Least witness per observed delta set (including Δ = ∅ is not recorded).
    pub found: BTreeMap<Vec<u64>, Block>,
    pub blocks_examined: u64,
    /// Blocks abandoned on a resource limit.
    pub skipped: BTreeSet<Block>,
    /// Largest |Δ(x)| with least witness.
    pub best: Option<(usize, Block)>,
}

impl SurveyPartial {
    fn record(&mut self, x: Block, delta: &DeltaSet) {
        self.blocks_examined += 1;
        if delta.is_empty() {
            return;
        }
        let card = delta.len();
        let improves = match &self.best {
            None => true,
            Some((c, w)) => card > *c || (card == *c && x.witness_cmp(w).is_lt()),
        };
        if improves {
            self.best = Some((card, x.clone()));
        }
        let key = delta.as_slice().to_vec();
        if better_witness(&x, self.found.get(&key)) {
            self.found.insert(key, x);
        }
    }

    /// Commutative, associative merge.
    pub fn merge(&mut self, other: SurveyPartial) {
        for (t, w) in other.found {
            if better_witness(&w, self.found.get(&t)) {
                self.found.insert(t, w);
            }
        }
        self.blocks_examined += other.blocks_examined;
        self.skipped.extend(other.skipped);
        if let Some((c, w)) = other.best {
            let improves = match &self.best {
                None => true,
                Some((c0, w0)) => c > *c0 || (c == *c0 && w.witness_cmp(w0).is_lt()),
            };
            if improves {
                self.best = Some((c, w));
            }
        }
    }

    pub fn delta_union(&self) -> BTreeSet<u64> {
        self.found.keys().flatten().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Realized(Block),
    ExcludedByCorollary,
    Unknown,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Realized(_) => "realized",
            Status::ExcludedByCorollary => "excluded",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub config: SurveyConfig,
    pub limits: Limits,
    pub entries: Vec<(Vec<u64>, Status)>,
    pub delta_union: BTreeSet<u64>,
    /// Delta sets observed that are not subsets of {1, …, n−2}; always
    /// empty unless something is badly wrong.
    pub out_of_range: Vec<(Vec<u64>, Block)>,
    pub max_delta_card: Option<(usize, Block)>,
    pub blocks_examined: u64,
    pub skipped: Vec<Block>,
}

impl SurveyReport {
    pub fn from_partial(config: &SurveyConfig, limits: Limits, partial: &SurveyPartial) -> Result<Self> {
        let n = config.group.order();
        if n < 3 {
            return Err(Error::InvalidParameter("surveys need n >= 3".into()));
        }
        let range = n - 2;
        let mut entries = Vec::new();
        for t in nonempty_subsets(range) {
            let set: BTreeSet<u64> = t.iter().copied().collect();
            let excluded = corollary_excludes(n, &set)?;
            let status = match partial.found.get(&t) {
                Some(w) => {
                    let check = crate::factor::delta_set(w)?;
                    if check.as_slice() != t.as_slice() {
                        return Err(Error::InvalidParameter(format!(
                            "witness `{w}` re-verified to Δ = {check}, not {t:?}"
                        )));
                    }
                    Status::Realized(w.clone())
                }
                None if excluded => Status::ExcludedByCorollary,
                None => Status::Unknown,
            };
            entries.push((t, status));
        }
        let out_of_range = partial
            .found
            .iter()
            .filter(|(t, _)| t.iter().any(|&d| d > range))
            .map(|(t, w)| (t.clone(), w.clone()))
            .collect();
        Ok(Self {
            config: config.clone(),
            limits,
            entries,
            delta_union: partial.delta_union(),
            out_of_range,
            max_delta_card: partial.best.clone(),
            blocks_examined: partial.blocks_examined,
            skipped: partial.skipped.iter().cloned().collect(),
        })
    }

    pub fn status_of(&self, t: &[u64]) -> Option<&Status> {
        self.entries.iter().find(|(s, _)| s == t).map(|(_, st)| st)
    }

    pub fn sets_with(&self, label: &str) -> Vec<Vec<u64>> {
        self.entries.iter().filter(|(_, s)| s.label() == label).map(|(t, _)| t.clone()).collect()
    }

    /// True when no block was abandoned on a resource limit.
    pub fn is_complete(&self) -> bool {
        self.skipped.is_empty()
    }
}

pub(crate) fn check_survey_group(config: &SurveyConfig) -> Result<()> {
    let n = config.group.order();
    if n < 3 {
        return Err(Error::InvalidParameter("surveys need n >= 3".into()));
    }
    if n - 2 > MAX_SURVEY_RANGE {
        return Err(Error::InvalidParameter(format!(
            "n = {n} gives 2^{} subsets; at most n = {} is supported",
            n - 2,
            MAX_SURVEY_RANGE + 2
        )));
    }
    Ok(())
}

/// Shared context for evaluating shards: the global atom table and limits.
#[derive(Clone)]
pub struct ShardRunner {
    config: SurveyConfig,
    table: Arc<AtomTable>,
    limits: Limits,
}

impl ShardRunner {
    pub fn new(config: &SurveyConfig, limits: Limits) -> Result<Self> {
        let table = Arc::new(enumerate_atoms_with_limit(config.group, limits.max_atoms)?);
        Ok(Self { config: config.clone(), table, limits })
    }

    /// Uses a prebuilt global atom table (e.g. loaded from the cache).
    pub fn with_table(config: &SurveyConfig, limits: Limits, table: Arc<AtomTable>) -> Result<Self> {
        if table.group() != config.group {
            return Err(Error::GroupMismatch { left: table.group().order(), right: config.group.order() });
        }
        if table.cap().is_some() {
            return Err(Error::InvalidParameter("shards need the global atom table, not a restricted one".into()));
        }
        Ok(Self { config: config.clone(), table, limits })
    }

    pub fn config(&self) -> &SurveyConfig {
        &self.config
    }

    fn engine(&self) -> Factorizer {
        Factorizer::new(self.table.clone(), self.limits)
    }

    pub fn run_shard(&self, k: usize) -> Result<SurveyPartial> {
        let mut engine = self.engine();
        let mut partial = SurveyPartial::default();
        for x in self.config.shard_blocks(k) {
            match engine.delta_set(&x) {
                Ok(delta) => partial.record(x, &delta),
                Err(e) if e.is_resource_limit() => {
                    log::warn!("skipping `{x}`: {e}");
                    partial.blocks_examined += 1;
                    partial.skipped.insert(x);
                }
                Err(e) => return Err(e),
            }
        }
        Ok(partial)
    }

    /// Evaluates shards in parallel and merges them in shard order.
    pub fn run_shards(&self, shards: std::ops::Range<usize>) -> Result<SurveyPartial> {
        let parts: Vec<SurveyPartial> = shards.into_par_iter().map(|k| self.run_shard(k)).collect::<Result<_>>()?;
        let mut acc = SurveyPartial::default();
        for p in parts {
            acc.merge(p);
        }
        Ok(acc)
    }
}

pub fn survey(config: &SurveyConfig) -> Result<SurveyReport> {
    survey_with_limits(config, Limits::default())
}

pub fn survey_with_limits(config: &SurveyConfig, limits: Limits) -> Result<SurveyReport> {
    check_survey_group(config)?;
    survey_with_runner(&ShardRunner::new(config, limits)?)
}

pub fn survey_with_runner(runner: &ShardRunner) -> Result<SurveyReport> {
    let (config, limits) = (&runner.config, runner.limits);
    check_survey_group(config)?;
    let partial = runner.run_shards(0..config.shard_count())?;
    SurveyReport::from_partial(config, limits, &partial)
}

/// Largest |Δ(x)| over the enumerated blocks and any `extra` blocks, with
/// the least witness. Δ(B(G)) may hold larger sets beyond the bound, so the
/// result is a lower bound for Λ(G).
pub fn lambda_lower_bound(config: &SurveyConfig, limits: Limits, extra: &[Block]) -> Result<(usize, Block)> {
    let runner = ShardRunner::new(config, limits)?;
    let mut partial = runner.run_shards(0..config.shard_count())?;
    let mut engine = runner.engine();
    for x in extra {
        let (_, stripped) = x.strip_zeros();
        let delta = engine.delta_set(&stripped)?;
        let mut p = SurveyPartial::default();
        p.record(stripped, &delta);
        partial.merge(p);
    }
    partial.best.ok_or(Error::NotFound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome<V> {
    pub violations: Vec<V>,
    pub blocks_checked: u64,
    pub skipped: Vec<Block>,
}

impl<V> CheckOutcome<V> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }
}

/// Blocks with n − 2 ∈ Δ(x) but Δ(x) ≠ {n − 2}.
pub fn check_max_gap_isolated(config: &SurveyConfig, limits: Limits) -> Result<CheckOutcome<(Block, DeltaSet)>> {
    let n = config.group.order();
    if n < 3 {
        return Err(Error::InvalidParameter("the check needs n >= 3".into()));
    }
    let runner = ShardRunner::new(config, limits)?;
    let per_shard: Vec<CheckOutcome<(Block, DeltaSet)>> = (0..config.shard_count())
        .into_par_iter()
        .map(|k| {
            let mut engine = runner.engine();
            let mut out = CheckOutcome { violations: Vec::new(), blocks_checked: 0, skipped: Vec::new() };
            for x in config.shard_blocks(k) {
                out.blocks_checked += 1;
                match engine.delta_set(&x) {
                    Ok(d) if d.contains(n - 2) && d.len() > 1 => out.violations.push((x, d)),
                    Ok(_) => {}
                    Err(e) if e.is_resource_limit() => out.skipped.push(x),
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(concat_outcomes(per_shard))
}

fn concat_outcomes<V>(parts: Vec<CheckOutcome<V>>) -> CheckOutcome<V> {
    let mut out = CheckOutcome { violations: Vec::new(), blocks_checked: 0, skipped: Vec::new() };
    for p in parts {
        out.violations.extend(p.violations);
        out.blocks_checked += p.blocks_checked;
        out.skipped.extend(p.skipped);
    }
    out
}

/// A factorization `z = W^r (−W)^s · B · V^q` (r, s > 0) of the shorter
/// length in a gap of exactly n − 2 whose rest `B` holds an atom other than 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapViolation {
    pub block: Block,
    pub factorization: Factorization,
    /// The generator g the decomposition was taken relative to.
    pub generator: u64,
}

/// For every block, every consecutive pair of lengths at distance n − 2 and
/// every generator g: any factorization of the shorter length divisible by
/// both g^n and (−g)^n has only the atom 0 besides g^n, (−g)^n and (−g)g.
pub fn check_gap_factorizations(
    group: CyclicGroup,
    max_len: u64,
    limits: Limits,
) -> Result<CheckOutcome<GapViolation>> {
    let n = group.order();
    if n < 3 {
        return Err(Error::InvalidParameter("the check needs n >= 3".into()));
    }
    let config = SurveyConfig::new(group, max_len)?;
    let runner = ShardRunner::new(&config, limits)?;
    let table = runner.table.clone();
    let size = n as usize;
    let single = |entries: &[(u64, u64)]| {
        let mut mult = vec![0u64; size];
        for &(r, m) in entries {
            mult[r as usize] += m;
        }
        table.index_of(&Block::from_mult(group, mult).expect("zero-sum"))
    };
    // (generator, W, −W, V) as table indices
    let special: Vec<(u64, usize, usize, usize)> = group
        .units()
        .into_iter()
        .map(|g| {
            let w = single(&[(g, n)]).expect("g^n is an atom");
            let mw = single(&[(n - g, n)]).expect("(-g)^n is an atom");
            let v = single(&[(g, 1), (n - g, 1)]).expect("(-g)g is an atom");
            (g, w, mw, v)
        })
        .collect();
    let zero = single(&[(0, 1)]);

    let per_shard: Vec<CheckOutcome<GapViolation>> = (0..config.shard_count())
        .into_par_iter()
        .map(|k| {
            let mut engine = runner.engine();
            let mut out = CheckOutcome { violations: Vec::new(), blocks_checked: 0, skipped: Vec::new() };
            for x in config.shard_blocks(k) {
                out.blocks_checked += 1;
                let zs = match engine.factorizations(&x) {
                    Ok(zs) => zs,
                    Err(e) if e.is_resource_limit() => {
                        out.skipped.push(x);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let lengths: BTreeSet<u64> = zs.iter().map(Factorization::length).collect();
                let lengths: Vec<u64> = lengths.into_iter().collect();
                let shorter: Vec<u64> = lengths.windows(2).filter(|w| w[1] - w[0] == n - 2).map(|w| w[0]).collect();
                for z in zs.iter().filter(|z| shorter.contains(&z.length())) {
                    for &(g, w, mw, v) in &special {
                        if z.count_of(w) == 0 || z.count_of(mw) == 0 {
                            continue;
                        }
                        let stray = z.counts().iter().any(|&(i, _)| i != w && i != mw && i != v && Some(i) != zero);
                        if stray {
                            out.violations.push(GapViolation {
                                block: x.clone(),
                                factorization: z.clone(),
                                generator: g,
                            });
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(concat_outcomes(per_shard))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    fn texts(c: &SurveyConfig) -> Vec<String> {
        let mut v: Vec<String> = enumerate_blocks(c).map(|b| b.to_text()).collect();
        v.sort();
        v
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn enumeration_examples() {
        let c = SurveyConfig::new(z(3), 3).unwrap();
        assert_eq!(texts(&c), vec!["1 2", "1^3", "2^3"]);
        assert_eq!(texts(&c.clone().quotient_by_units(true)), vec!["1 2", "1^3"]);
        let c = SurveyConfig::new(z(5), 2).unwrap().with_support([1, 2]).unwrap();
        assert!(texts(&c).is_empty());
    }

    #[test]
    fn enumeration_is_duplicate_free_and_zero_free() {
        let c = SurveyConfig::new(z(6), 9).unwrap();
        let all: Vec<Block> = enumerate_blocks(&c).collect();
        let distinct: BTreeSet<Block> = all.iter().cloned().collect();
        assert_eq!(all.len(), distinct.len());
        assert!(all.iter().all(|b| b.multiplicity(0) == 0 && b.len() <= 9 && !b.is_empty()));
    }

    #[test]
    fn exclusion_examples() {
        assert!(corollary_excludes(5, &set(&[1, 3])).unwrap());
        assert!(!corollary_excludes(5, &set(&[3])).unwrap());
        assert!(!corollary_excludes(5, &set(&[1, 2])).unwrap());
        assert!(matches!(corollary_excludes(5, &set(&[4])), Err(Error::OutOfRange(_))));
        assert!(matches!(corollary_excludes(5, &set(&[])), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn subsets_order() {
        assert_eq!(
            nonempty_subsets(3),
            vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn z3_survey() {
        let r = survey(&SurveyConfig::new(z(3), 6).unwrap()).unwrap();
        assert_eq!(r.entries.len(), 1);
        match &r.entries[0].1 {
            Status::Realized(w) => assert_eq!(crate::factor::delta_set(w).unwrap().as_slice(), &[1]),
            other => panic!("expected realized, got {other:?}"),
        }
    }

    #[test]
    fn z4_survey() {
        let r = survey(&SurveyConfig::new(z(4), 12).unwrap()).unwrap();
        assert_eq!(r.status_of(&[1, 2]), Some(&Status::ExcludedByCorollary));
        assert!(matches!(r.status_of(&[2]), Some(Status::Realized(_))));
        assert!(matches!(r.status_of(&[1]), Some(Status::Realized(_))));
        assert!(r.is_complete());
        let d = crate::factor::delta_set(&Block::parse(z(4), "1^4 3^4").unwrap()).unwrap();
        assert_eq!(d.as_slice(), &[2]);
    }

    #[test]
    fn partial_merge_is_order_independent() {
        let c = SurveyConfig::new(z(5), 10).unwrap();
        let runner = ShardRunner::new(&c, Limits::default()).unwrap();
        let parts: Vec<SurveyPartial> = (0..c.shard_count()).map(|k| runner.run_shard(k).unwrap()).collect();
        let mut fwd = SurveyPartial::default();
        parts.iter().cloned().for_each(|p| fwd.merge(p));
        let mut rev = SurveyPartial::default();
        parts.into_iter().rev().for_each(|p| rev.merge(p));
        assert_eq!(fwd, rev);
    }

    #[test]
    fn resource_limits_mark_blocks_skipped() {
        let c = SurveyConfig::new(z(5), 10).unwrap();
        let limits = Limits { max_nodes: 3, ..Limits::default() };
        let r = survey_with_limits(&c, limits).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.blocks_examined, enumerate_blocks(&c).count() as u64);
    }

    #[test]
    fn small_checks_pass() {
        let c = SurveyConfig::new(z(3), 10).unwrap();
        assert!(check_max_gap_isolated(&c, Limits::default()).unwrap().passed());
        let out = check_gap_factorizations(z(4), 12, Limits::default()).unwrap();
        assert!(out.passed(), "{:?}", out.violations);
    }

    #[test]
    fn lambda_for_z3() {
        let c = SurveyConfig::new(z(3), 9).unwrap();
        let (card, w) = lambda_lower_bound(&c, Limits::default(), &[]).unwrap();
        assert_eq!(card, 1);
        assert_eq!(crate::factor::delta_set(&w).unwrap().len(), 1);
    }

    #[test]
    fn rejects_huge_groups() {
        let c = SurveyConfig::new(z(30), 3).unwrap();
        assert!(matches!(survey(&c), Err(Error::InvalidParameter(_))));
    }
}
