//! Explicit blocks with prescribed delta sets.
//!
//! [`ArchimedeanWitness`] builds, for any `m`, a block over a suitable Z_n
//! whose delta set has at least `m` elements, together with the closed-form
//! length set it should have. [`singleton_witness`] finds blocks with
//! Δ(x) = {i} by search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{DeltaSet, Factorizer, LengthSet, Limits};
use crate::group::{subsequence_sums, Block, CyclicGroup, Sequence};
use crate::survey::{ShardRunner, SurveyConfig};

/// The block `g^{2n−σ} (−g)^n · Π (b_i g)` over Z_n, where
/// `b_{k+1} = 2(b_0 + … + b_k) + 2m` and σ = b_1 + … + b_m < n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArchimedeanWitness {
    pub m: u64,
    /// b_0, b_1, …, b_m.
    pub b: Vec<u64>,
    pub sigma: u64,
    pub n: u64,
    #[serde(serialize_with = "crate::report::ser_block")]
    pub block: Block,
}

impl ArchimedeanWitness {
    /// Defaults: `b0 = m + 1`, `n = σ + 2`.
    pub fn build(m: u64, b0: Option<u64>, n: Option<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let b0 = b0.unwrap_or(m + 1);
        if b0 <= m {
            return Err(Error::InvalidParameter(format!("b0 = {b0} must exceed m = {m}")));
        }
        let mut b = vec![b0];
        let mut prefix = b0;
        for _ in 0..m {
            let next = prefix.checked_mul(2).and_then(|v| v.checked_add(2 * m)).ok_or(Error::Overflow)?;
            b.push(next);
            prefix = prefix.checked_add(next).ok_or(Error::Overflow)?;
        }
        let sigma = prefix - b0;
        let n = match n {
            Some(n) if n <= sigma => return Err(Error::InvalidParameter(format!("n = {n} must exceed σ = {sigma}"))),
            Some(n) => n,
            None => sigma + 2,
        };
        let group = CyclicGroup::new(n)?;
        let mut seq = Sequence::empty(group);
        let ones = n.checked_mul(2).ok_or(Error::Overflow)? - sigma;
        seq.push(1, ones)?;
        seq.push(n - 1, n)?;
        for &bi in &b[1..] {
            seq.push(bi % n, 1)?;
        }
        let block = seq.into_block()?;
        Ok(Self { m, b, sigma, n, block })
    }

    pub fn terms(&self) -> &[u64] {
        &self.b[1..]
    }

    pub fn group(&self) -> CyclicGroup {
        self.block.group()
    }

    /// A_I = g^{n − Σ_I b_i} Π_{i∈I} (b_i g), with `I` given as 1-based indices.
    pub fn subset_atom(&self, subset: &[usize]) -> Result<Block> {
        let mut seq = Sequence::empty(self.group());
        let mut used = 0u64;
        for &i in subset {
            let bi = *self
                .b
                .get(i)
                .filter(|_| i >= 1)
                .ok_or_else(|| Error::OutOfRange(format!("index {i} outside 1..={}", self.m)))?;
            used += bi;
            seq.push(bi % self.n, 1)?;
        }
        seq.push(1, self.n - used)?;
        seq.into_block()
    }

    fn subset_length(&self, mask: u64) -> u64 {
        let (count, total) = self
            .terms()
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .fold((0u64, 0u64), |(c, s), (_, &bj)| (c + 1, s + bj));
        1 + count + self.n - total
    }

    /// {3} ∪ {1 + |J| + n − Σ_{j∈J} b_j : J ⊆ {1, …, m}}.
    pub fn predicted_length_set(&self) -> LengthSet {
        let masks = 0..(1u64 << self.m);
        LengthSet::from_iter_unsorted(std::iter::once(3).chain(masks.map(|j| self.subset_length(j))))
    }

    /// Bands L_0, …, L_m: L_k collects the lengths from subsets J with max J = k.
    pub fn length_bands(&self) -> Vec<LengthSet> {
        let m = self.m as u32;
        (0..=m)
            .map(|k| {
                let masks: Vec<u64> = if k == 0 {
                    vec![0]
                } else {
                    let top = 1u64 << (k - 1);
                    (0..top).map(|low| low | top).collect()
                };
                LengthSet::from_iter_unsorted(masks.into_iter().map(|j| self.subset_length(j)))
            })
            .collect()
    }

    /// min L_{k−1} − max L_k = b_k − Σ_{j<k} b_j + (k − 2) for k = 1..=m.
    pub fn band_gaps(&self) -> Vec<u64> {
        let mut prefix = 0u64;
        (1..=self.m as usize)
            .map(|k| {
                let bk = self.b[k];
                let gap = bk + k as u64 - prefix - 2;
                prefix += bk;
                gap
            })
            .collect()
    }

    pub fn predicted_delta(&self) -> DeltaSet {
        self.predicted_length_set().delta()
    }

    pub fn predicted_delta_card(&self) -> usize {
        self.predicted_delta().len()
    }

    /// L(x) computed by factorization search over the atoms dividing x.
    pub fn actual_length_set(&self, limits: Limits) -> Result<LengthSet> {
        Factorizer::for_block(&self.block, limits)?.length_set(&self.block)
    }

    pub fn verify(&self, limits: Limits) -> Result<bool> {
        Ok(self.actual_length_set(limits)? == self.predicted_length_set())
    }

    /// Distinct subset sums of b_1, …, b_m (all 2^m − 1 of them).
    pub fn has_distinct_subset_sums(&self) -> Result<bool> {
        let sums = subsequence_sums(self.terms())?;
        Ok(sums.sums.len() as u64 == (1u64 << self.m) - 1)
    }
}

pub fn build_witness(m: u64, b0: Option<u64>, n: Option<u64>) -> Result<ArchimedeanWitness> {
    ArchimedeanWitness::build(m, b0, n)
}

pub fn verify_witness(w: &ArchimedeanWitness) -> Result<bool> {
    w.verify(Limits::default())
}

/// A block with Δ(x) = {i}. For i = n − 2 this is g^n (−g)^n; otherwise the
/// least such block (by length, then multiplicities) with |x| ≤ `max_len`.
pub fn singleton_witness(group: CyclicGroup, i: u64, max_len: u64, limits: Limits) -> Result<Block> {
    let n = group.order();
    if n < 3 || i == 0 || i > n - 2 {
        return Err(Error::OutOfRange(format!("i = {i} must lie in 1..={}", n.saturating_sub(2))));
    }
    let target = DeltaSet::from(vec![i]);
    if i == n - 2 && 2 * n <= max_len {
        let seed = Block::parse(group, &format!("1^{n} {}^{n}", n - 1))?;
        if crate::factor::delta_set(&seed)? == target {
            return Ok(seed);
        }
    }
    let config = SurveyConfig::new(group, max_len)?;
    let runner = ShardRunner::new(&config, limits)?;
    let partial = runner.run_shards(0..config.shard_count())?;
    partial.found.get(target.as_slice()).cloned().ok_or(Error::NotFound)
}
