//! Factorizations of blocks into atoms, sets of lengths and delta sets.
//!
//! Search is driven by a pivot: the smallest residue still present in the
//! residual block. Every factorization of the residual uses some atom whose
//! smallest residue is that pivot, so branching only over those atoms (in
//! nondecreasing table order per pivot) visits each multiset of atoms once.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::atoms::{atoms_dividing_with_limit, AtomTable, DEFAULT_MAX_ATOMS};
use crate::error::{Error, Result};
use crate::group::Block;

/// Resource ceilings. Exceeding any of them aborts the computation with
/// [`Error::ResourceLimit`]; partial results are never returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_nodes: u64,
    pub max_factorizations: usize,
    pub max_graph_vertices: usize,
    pub max_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            max_factorizations: 1_000_000,
            max_graph_vertices: 5_000,
            max_atoms: DEFAULT_MAX_ATOMS,
        }
    }
}

/// A factorization `z ∈ Z(x)`: a multiset of atoms, kept as sorted
/// `(atom index, count)` pairs with positive counts.
#[derive(Clone)]
pub struct Factorization {
    table: Arc<AtomTable>,
    counts: Vec<(usize, u64)>,
}

impl Factorization {
    pub fn new(table: Arc<AtomTable>, mut counts: Vec<(usize, u64)>) -> Result<Self> {
        counts.retain(|&(_, c)| c > 0);
        counts.sort_unstable();
        if counts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("repeated atom index".into()));
        }
        if let Some(&(i, _)) = counts.iter().find(|(i, _)| *i >= table.len()) {
            return Err(Error::OutOfRange(format!("atom index {i} not in table")));
        }
        Ok(Self { table, counts })
    }

    pub fn empty(table: Arc<AtomTable>) -> Self {
        Self { table, counts: Vec::new() }
    }

    pub fn table(&self) -> &Arc<AtomTable> {
        &self.table
    }

    pub fn counts(&self) -> &[(usize, u64)] {
        &self.counts
    }

    pub fn count_of(&self, index: usize) -> u64 {
        self.counts.binary_search_by_key(&index, |&(i, _)| i).map_or(0, |k| self.counts[k].1)
    }

    /// |z|, the number of atoms.
    pub fn length(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn same_table(&self, other: &Factorization) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    /// The block this factorization multiplies out to.
    pub fn recompose(&self) -> Result<Block> {
        let g = self.table.group();
        let mut mult = vec![0u64; g.order() as usize];
        for &(i, c) in &self.counts {
            for (slot, &m) in mult.iter_mut().zip(self.table.atoms()[i].mult()) {
                let add = m.checked_mul(c).ok_or(Error::Overflow)?;
                *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
            }
        }
        Block::from_mult(g, mult)
    }

    /// Product in the factorization monoid.
    pub fn concat(&self, other: &Factorization) -> Result<Factorization> {
        if !self.same_table(other) {
            return Err(Error::TableMismatch);
        }
        let mut merged: Vec<(usize, u64)> = self.counts.clone();
        for &(i, c) in &other.counts {
            match merged.binary_search_by_key(&i, |&(j, _)| j) {
                Ok(k) => merged[k].1 = merged[k].1.checked_add(c).ok_or(Error::Overflow)?,
                Err(k) => merged.insert(k, (i, c)),
            }
        }
        Ok(Self { table: self.table.clone(), counts: merged })
    }
}

impl PartialEq for Factorization {
    fn eq(&self, other: &Self) -> bool {
        self.counts == other.counts && self.same_table(other)
    }
}

impl Eq for Factorization {}

impl std::hash::Hash for Factorization {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.counts.hash(state);
    }
}

impl PartialOrd for Factorization {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factorization {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.counts.cmp(&other.counts)
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("1");
        }
        for &(i, c) in &self.counts {
            write!(f, "({})", self.table.atoms()[i])?;
            if c > 1 {
                write!(f, "^{c}")?;
            }
        }
        Ok(())
    }
}

/// A sorted set of nonnegative integers, L(x).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthSet(Vec<u64>);

impl LengthSet {
    pub fn from_iter_unsorted<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut v: Vec<u64> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn is_subset_of(&self, other: &LengthSet) -> bool {
        self.0.iter().all(|l| other.contains(*l))
    }

    pub fn shift(&self, by: u64) -> Self {
        Self(self.0.iter().map(|l| l + by).collect())
    }

    /// Successive differences.
    pub fn delta(&self) -> DeltaSet {
        DeltaSet::from_iter_unsorted(self.0.windows(2).map(|w| w[1] - w[0]))
    }
}

impl From<Vec<u64>> for LengthSet {
    fn from(v: Vec<u64>) -> Self {
        Self::from_iter_unsorted(v)
    }
}

/// A sorted set of positive integers, Δ(x).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaSet(Vec<u64>);

impl DeltaSet {
    pub fn from_iter_unsorted<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut v: Vec<u64> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn is_subset_of(&self, other: &DeltaSet) -> bool {
        self.0.iter().all(|d| other.contains(*d))
    }
}

impl From<Vec<u64>> for DeltaSet {
    fn from(v: Vec<u64>) -> Self {
        Self::from_iter_unsorted(v)
    }
}

impl fmt::Display for DeltaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Growable bitset of lengths used by the memoized length search.
#[derive(Clone, Default, PartialEq, Eq)]
struct LengthBits(Vec<u64>);

impl LengthBits {
    fn singleton(l: u64) -> Self {
        let mut b = Self::default();
        b.insert(l);
        b
    }

    fn insert(&mut self, l: u64) {
        let (w, bit) = ((l / 64) as usize, l % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << bit;
    }

    /// `self ∪= other + 1`.
    fn union_shifted_by_one(&mut self, other: &LengthBits) {
        let need = other.0.len() + 1;
        if self.0.len() < need {
            self.0.resize(need, 0);
        }
        let mut carry = 0u64;
        for (k, &w) in other.0.iter().enumerate() {
            self.0[k] |= (w << 1) | carry;
            carry = w >> 63;
        }
        self.0[other.0.len()] |= carry;
    }

    fn to_length_set(&self) -> LengthSet {
        let mut v = Vec::new();
        for (k, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                v.push(k as u64 * 64 + b);
                w &= w - 1;
            }
        }
        LengthSet(v)
    }
}

/// Factorization engine bound to one atom table. Length sets are memoized
/// per residual block for the lifetime of the engine, so reusing one engine
/// across many blocks of the same group shares work.
pub struct Factorizer {
    table: Arc<AtomTable>,
    // Atom indices grouped by their smallest residue, increasing.
    by_pivot: Arc<Vec<Vec<usize>>>,
    limits: Limits,
    memo: HashMap<Vec<u64>, Arc<LengthBits>>,
    nodes: u64,
}

impl Factorizer {
    pub fn new(table: Arc<AtomTable>, limits: Limits) -> Self {
        let n = table.group().order() as usize;
        let mut by_pivot = vec![Vec::new(); n];
        for (i, a) in table.atoms().iter().enumerate() {
            if let Some(&p) = a.support().first() {
                by_pivot[p as usize].push(i);
            }
        }
        Self { table, by_pivot: Arc::new(by_pivot), limits, memo: HashMap::new(), nodes: 0 }
    }

    /// Engine over the atoms dividing `x`.
    pub fn for_block(x: &Block, limits: Limits) -> Result<Self> {
        let table = atoms_dividing_with_limit(x, limits.max_atoms)?;
        Ok(Self::new(Arc::new(table), limits))
    }

    pub fn table(&self) -> &Arc<AtomTable> {
        &self.table
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn check_covered(&self, x: &Block) -> Result<()> {
        if x.group() != self.table.group() {
            return Err(Error::GroupMismatch { left: self.table.group().order(), right: x.order() });
        }
        if let Some(cap) = self.table.cap() {
            if !x.divides(cap) {
                return Err(Error::InvalidParameter(format!("block `{x}` does not divide the table's cap `{cap}`")));
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::ResourceLimit { what: "search nodes", limit: self.limits.max_nodes });
        }
        Ok(())
    }

    /// Z(x), sorted by atom counts.
    pub fn factorizations(&mut self, x: &Block) -> Result<Vec<Factorization>> {
        self.check_covered(x)?;
        self.nodes = 0;
        let mut residual = x.mult().to_vec();
        let mut stack = Vec::new();
        let mut out = Vec::new();
        self.search(&mut residual, usize::MAX, 0, &mut stack, &mut out)?;
        let mut result: Vec<Factorization> = out
            .into_iter()
            .map(|picked: Vec<usize>| {
                let mut counts: Vec<(usize, u64)> = Vec::new();
                for i in picked {
                    match counts.last_mut() {
                        Some((j, c)) if *j == i => *c += 1,
                        _ => counts.push((i, 1)),
                    }
                }
                counts.sort_unstable();
                Factorization { table: self.table.clone(), counts }
            })
            .collect();
        result.sort();
        Ok(result)
    }

    fn search(
        &mut self,
        residual: &mut [u64],
        prev_pivot: usize,
        from: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        self.tick()?;
        let Some(pivot) = residual.iter().position(|&m| m > 0) else {
            if out.len() >= self.limits.max_factorizations {
                return Err(Error::ResourceLimit {
                    what: "stored factorizations",
                    limit: self.limits.max_factorizations as u64,
                });
            }
            let mut picked = stack.clone();
            picked.sort_unstable();
            out.push(picked);
            return Ok(());
        };
        let start = if pivot == prev_pivot { from } else { 0 };
        let table = self.table.clone();
        let by_pivot = self.by_pivot.clone();
        let candidates = &by_pivot[pivot];
        for (k, &idx) in candidates.iter().enumerate().skip(start) {
            let atom = table.atoms()[idx].mult();
            if atom.iter().zip(residual.iter()).any(|(a, r)| a > r) {
                continue;
            }
            residual.iter_mut().zip(atom).for_each(|(r, a)| *r -= a);
            stack.push(idx);
            let res = self.search(residual, pivot, k, stack, out);
            stack.pop();
            residual.iter_mut().zip(atom).for_each(|(r, a)| *r += a);
            res?;
        }
        Ok(())
    }

    /// L(x), using the memoized residual recursion and the fact that `0` is
    /// a prime atom: L(x) = v_0(x) + L(x without zeros).
    pub fn length_set(&mut self, x: &Block) -> Result<LengthSet> {
        self.check_covered(x)?;
        self.nodes = 0;
        let (zeros, stripped) = x.strip_zeros();
        if zeros > 0 && self.by_pivot[0].is_empty() {
            return Err(Error::InvalidParameter("atom table lacks the atom `0`".into()));
        }
        let bits = self.lengths_of(stripped.mult().to_vec())?;
        Ok(bits.to_length_set().shift(zeros))
    }

    pub fn delta_set(&mut self, x: &Block) -> Result<DeltaSet> {
        Ok(self.length_set(x)?.delta())
    }

    fn lengths_of(&mut self, residual: Vec<u64>) -> Result<Arc<LengthBits>> {
        if let Some(hit) = self.memo.get(&residual) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let Some(pivot) = residual.iter().position(|&m| m > 0) else {
            return Ok(Arc::new(LengthBits::singleton(0)));
        };
        let table = self.table.clone();
        let by_pivot = self.by_pivot.clone();
        let mut acc = LengthBits::default();
        for &idx in &by_pivot[pivot] {
            let atom = table.atoms()[idx].mult();
            if atom.iter().zip(&residual).any(|(a, r)| a > r) {
                continue;
            }
            let rest: Vec<u64> = residual.iter().zip(atom).map(|(r, a)| r - a).collect();
            let sub = self.lengths_of(rest)?;
            acc.union_shifted_by_one(&sub);
        }
        let acc = Arc::new(acc);
        self.memo.insert(residual, acc.clone());
        Ok(acc)
    }
}

/// Z(x) with default limits, over the atoms dividing `x`.
pub fn factorizations(x: &Block) -> Result<Vec<Factorization>> {
    Factorizer::for_block(x, Limits::default())?.factorizations(x)
}

pub fn length_set(x: &Block) -> Result<LengthSet> {
    Factorizer::for_block(x, Limits::default())?.length_set(x)
}

pub fn delta_set(x: &Block) -> Result<DeltaSet> {
    Ok(length_set(x)?.delta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CyclicGroup;

    fn blk(n: u64, s: &str) -> Block {
        Block::parse(CyclicGroup::new(n).unwrap(), s).unwrap()
    }

    fn lens(v: &[u64]) -> LengthSet {
        LengthSet::from(v.to_vec())
    }

    #[test]
    fn two_factorizations_of_w_and_minus_w() {
        let x = blk(5, "1^5 4^5");
        let zs = factorizations(&x).unwrap();
        assert_eq!(zs.len(), 2);
        let mut lengths: Vec<u64> = zs.iter().map(Factorization::length).collect();
        lengths.sort();
        assert_eq!(lengths, vec![2, 5]);
        for z in &zs {
            assert_eq!(z.recompose().unwrap(), x);
        }
    }

    #[test]
    fn atom_has_one_factorization() {
        let x = blk(5, "1^3 2");
        let zs = factorizations(&x).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].length(), 1);
        assert!(delta_set(&x).unwrap().is_empty());
    }

    #[test]
    fn example_block_factorization_through_two_four_squared() {
        let x = blk(5, "1^8 2 4^5");
        let zs = factorizations(&x).unwrap();
        let table = zs[0].table().clone();
        let a = table.index_of(&blk(5, "2 4^2")).unwrap();
        let through: Vec<&Factorization> = zs.iter().filter(|z| z.count_of(a) > 0).collect();
        assert_eq!(through.len(), 1);
        let z = through[0];
        assert_eq!(z.length(), 5);
        assert_eq!(z.count_of(table.index_of(&blk(5, "1 4")).unwrap()), 3);
        assert_eq!(z.count_of(table.index_of(&blk(5, "1^5")).unwrap()), 1);
    }

    #[test]
    fn length_and_delta_examples() {
        assert_eq!(length_set(&blk(5, "1^8 2 4^5")).unwrap(), lens(&[3, 5, 6]));
        assert_eq!(delta_set(&blk(5, "1^8 2 4^5")).unwrap(), DeltaSet::from(vec![1, 2]));
        assert_eq!(length_set(&blk(5, "0^4")).unwrap(), lens(&[4]));
        assert_eq!(length_set(&blk(7, "1^7 6^7")).unwrap(), lens(&[2, 7]));
        assert_eq!(delta_set(&blk(5, "1^5 4^5")).unwrap(), DeltaSet::from(vec![3]));
    }

    #[test]
    fn empty_block() {
        let e = blk(5, "");
        assert_eq!(length_set(&e).unwrap(), lens(&[0]));
        assert!(delta_set(&e).unwrap().is_empty());
        let zs = factorizations(&e).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(zs[0].is_empty());
    }

    #[test]
    fn node_budget_is_enforced() {
        let x = blk(5, "1^10 4^10 2^5 3^5");
        let limits = Limits { max_nodes: 10, ..Limits::default() };
        let mut f = Factorizer::for_block(&x, limits).unwrap();
        assert!(f.factorizations(&x).unwrap_err().is_resource_limit());
        let limits = Limits { max_factorizations: 3, ..Limits::default() };
        let mut f = Factorizer::for_block(&x, limits).unwrap();
        assert!(f.factorizations(&x).unwrap_err().is_resource_limit());
    }

    #[test]
    fn capped_table_rejects_foreign_blocks() {
        let x = blk(5, "1^5 4^5");
        let mut f = Factorizer::for_block(&x, Limits::default()).unwrap();
        assert!(f.length_set(&blk(5, "2 3")).is_err());
    }

    #[test]
    fn length_bits_shift_crosses_words() {
        let mut acc = LengthBits::default();
        let mut src = LengthBits::singleton(63);
        src.insert(2);
        acc.union_shifted_by_one(&src);
        assert_eq!(acc.to_length_set(), lens(&[3, 64]));
    }

    #[test]
    fn concat_and_recompose() {
        let x = blk(5, "1^5 4^5");
        let zs = factorizations(&x).unwrap();
        let both = zs[0].concat(&zs[1]).unwrap();
        assert_eq!(both.length(), zs[0].length() + zs[1].length());
        assert_eq!(both.recompose().unwrap(), x.concat(&x).unwrap());
    }
}
