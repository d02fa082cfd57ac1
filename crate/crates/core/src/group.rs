//! The cyclic group Z_n, sequences over it and zero-sum blocks.
//!
//! A sequence is stored as a dense multiplicity vector indexed by residue:
//! `mult[i]` counts how often the element `i·g` occurs, where `g` is the
//! fixed generator represented by residue 1.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { order })
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub(crate) fn size(self) -> usize {
        self.order as usize
    }

    pub fn neg(self, r: u64) -> u64 {
        (self.order - r % self.order) % self.order
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.order as u128) as u64
    }

    /// Order of the element represented by residue `r`.
    pub fn element_order(self, r: u64) -> u64 {
        self.order / gcd(r % self.order, self.order)
    }

    /// Residues coprime to n, in increasing order. These are both the
    /// generators of the group and the multipliers of its automorphisms.
    pub fn units(self) -> Vec<u64> {
        (1..self.order).filter(|&u| gcd(u, self.order) == 1).collect()
    }
}

impl TryFrom<u64> for CyclicGroup {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Self::new(n)
    }
}

impl From<CyclicGroup> for u64 {
    fn from(g: CyclicGroup) -> u64 {
        g.order
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite sequence over Z_n, not necessarily zero-sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    group: CyclicGroup,
    mult: Vec<u64>,
}

impl Sequence {
    pub fn empty(group: CyclicGroup) -> Self {
        Self { group, mult: vec![0; group.size()] }
    }

    pub fn from_mult(group: CyclicGroup, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != group.size() {
            return Err(Error::InvalidParameter(format!(
                "multiplicity vector has {} entries, expected {}",
                mult.len(),
                group.order()
            )));
        }
        Ok(Self { group, mult })
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn multiplicity(&self, residue: u64) -> u64 {
        self.mult[(residue % self.group.order()) as usize]
    }

    pub fn len(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Σ i·mult[i] reduced mod n.
    pub fn sum_mod(&self) -> u64 {
        let n = self.group.order() as u128;
        let s = self.mult.iter().enumerate().fold(0u128, |acc, (i, &m)| (acc + (i as u128 % n) * (m as u128 % n)) % n);
        s as u64
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum_mod() == 0
    }

    pub fn push(&mut self, residue: u64, count: u64) -> Result<()> {
        if residue >= self.group.order() {
            return Err(Error::ResidueOutOfRange { residue, n: self.group.order() });
        }
        let slot = &mut self.mult[residue as usize];
        *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn into_block(self) -> Result<Block> {
        let sum = self.sum_mod();
        if sum != 0 {
            return Err(Error::NotZeroSum { n: self.group.order(), sum });
        }
        Ok(Block(self))
    }
}

/// A zero-sum sequence over Z_n, i.e. an element of the block monoid B(Z_n).
///
/// The derived ordering compares multiplicity vectors lexicographically
/// (groups of different order compare by order first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Sequence);

impl Block {
    pub fn empty(group: CyclicGroup) -> Self {
        Block(Sequence::empty(group))
    }

    pub fn from_mult(group: CyclicGroup, mult: Vec<u64>) -> Result<Self> {
        Sequence::from_mult(group, mult)?.into_block()
    }

    /// Parses the canonical text grammar: whitespace- or comma-separated
    /// terms `r^m`, with `^m` optional when `m = 1`. Repeated residues add up.
    pub fn parse(group: CyclicGroup, text: &str) -> Result<Self> {
        let mut seq = Sequence::empty(group);
        let mut offset = 0;
        for raw in text.split(|c: char| c.is_whitespace() || c == ',') {
            let position = offset;
            offset += raw.len() + 1;
            if raw.is_empty() {
                continue;
            }
            let (res_text, mult_text) = match raw.split_once('^') {
                Some((r, m)) => (r, Some(m)),
                None => (raw, None),
            };
            let residue: u64 = res_text
                .parse()
                .map_err(|_| Error::Parse { position, message: format!("bad residue `{res_text}` in term `{raw}`") })?;
            let count: u64 = match mult_text {
                Some(m) => m.parse().map_err(|_| Error::Parse {
                    position,
                    message: format!("bad multiplicity `{m}` in term `{raw}`"),
                })?,
                None => 1,
            };
            if count == 0 {
                return Err(Error::Parse {
                    position,
                    message: format!("multiplicity must be at least 1 in term `{raw}`"),
                });
            }
            seq.push(residue, count)?;
        }
        seq.into_block()
    }

    /// Parses the serialized form `[n; m_0, m_1, ..., m_{n-1}]`.
    pub fn parse_serialized(text: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse { position: 0, message: message.to_string() };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected `[n; m_0, ..., m_{n-1}]`"))?;
        let (n_text, rest) = inner.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let n: u64 = n_text.trim().parse().map_err(|_| bad("bad group order"))?;
        let group = CyclicGroup::new(n)?;
        let mult = rest
            .split(',')
            .map(|m| m.trim().parse::<u64>().map_err(|_| bad("bad multiplicity")))
            .collect::<Result<Vec<_>>>()?;
        Block::from_mult(group, mult)
    }

    pub fn group(&self) -> CyclicGroup {
        self.0.group
    }

    pub fn order(&self) -> u64 {
        self.0.group.order()
    }

    pub fn mult(&self) -> &[u64] {
        &self.0.mult
    }

    pub fn multiplicity(&self, residue: u64) -> u64 {
        self.0.multiplicity(residue)
    }

    pub fn len(&self) -> u64 {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_sequence(&self) -> &Sequence {
        &self.0
    }

    /// Residues occurring in the block, increasing.
    pub fn support(&self) -> Vec<u64> {
        self.mult().iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i as u64).collect()
    }

    /// −X: every element replaced by its inverse.
    pub fn negate(&self) -> Block {
        let g = self.group();
        let mult = (0..g.order()).map(|i| self.0.mult[g.neg(i) as usize]).collect();
        Block(Sequence { group: g, mult })
    }

    /// Image under the automorphism `i ↦ u·i` of Z_n (`u` a unit).
    pub fn scale(&self, unit: u64) -> Result<Block> {
        let g = self.group();
        if gcd(unit % g.order(), g.order()) != 1 {
            return Err(Error::InvalidParameter(format!("{unit} is not a unit mod {}", g.order())));
        }
        let mut mult = vec![0; g.size()];
        for (i, &m) in self.0.mult.iter().enumerate() {
            let j = ((i as u128 * unit as u128) % g.order() as u128) as usize;
            mult[j] = m;
        }
        Ok(Block(Sequence { group: g, mult }))
    }

    /// Splits off the prime factor `0^t`: returns `t = v_0(x)` and `x` with
    /// its zeros removed.
    pub fn strip_zeros(&self) -> (u64, Block) {
        let mut rest = self.clone();
        let t = std::mem::take(&mut rest.0.mult[0]);
        (t, rest)
    }

    pub fn with_zeros(&self, t: u64) -> Result<Block> {
        let mut out = self.clone();
        out.0.mult[0] = out.0.mult[0].checked_add(t).ok_or(Error::Overflow)?;
        Ok(out)
    }

    /// True if `self` is a subsequence of `other`.
    pub fn divides(&self, other: &Block) -> bool {
        self.group() == other.group() && self.mult().iter().zip(other.mult()).all(|(a, b)| a <= b)
    }

    /// The monoid operation: concatenation of sequences.
    pub fn concat(&self, other: &Block) -> Result<Block> {
        self.same_group(other)?;
        let mult = self
            .mult()
            .iter()
            .zip(other.mult())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Block(Sequence { group: self.group(), mult }))
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Block) -> Option<Block> {
        if !other.divides(self) {
            return None;
        }
        let mult = self.mult().iter().zip(other.mult()).map(|(a, b)| a - b).collect();
        Some(Block(Sequence { group: self.group(), mult }))
    }

    fn same_group(&self, other: &Block) -> Result<()> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    /// Canonical text, e.g. `1^8 2 4^5`. The empty block renders as `""`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Serialized form `[n; m_0, ..., m_{n-1}]`.
    pub fn to_serialized(&self) -> String {
        let body: Vec<String> = self.mult().iter().map(u64::to_string).collect();
        format!("[{}; {}]", self.order(), body.join(", "))
    }

    /// Ordering used when a single representative has to be picked: shorter
    /// blocks first, then lexicographic on the multiplicity vector.
    pub fn witness_cmp(&self, other: &Block) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, &m) in self.mult().iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{r}")?;
            } else {
                write!(f, "{r}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Nonempty subsequence sums of a sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsequenceSums {
    pub sums: BTreeSet<u64>,
    /// σ(B), the sum of all terms.
    pub total: u64,
}

pub fn subsequence_sums(terms: &[u64]) -> Result<SubsequenceSums> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sums = BTreeSet::new();
    let mut total: u64 = 0;
    for &b in terms {
        let shifted = sums.iter().map(|s: &u64| s.checked_add(b).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        sums.extend(shifted);
        sums.insert(b);
        total = total.checked_add(b).ok_or(Error::Overflow)?;
    }
    Ok(SubsequenceSums { sums, total })
}
