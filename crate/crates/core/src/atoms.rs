//! Atoms (minimal zero-sum sequences) of B(Z_n).
//!
//! Every atom `A ≠ 0` splits as `P·f` where `f` is its largest residue and
//! `P = A·f⁻¹` is zero-sum free. Conversely, if `P` is zero-sum free then
//! `P·(−σ(P))` is an atom. Enumeration therefore walks zero-sum free
//! sequences in nondecreasing residue order and closes each one with its
//! negated sum whenever that residue is not smaller than the last one used.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Block, CyclicGroup, Sequence};

/// Default ceiling on the size of a single atom table.
pub const DEFAULT_MAX_ATOMS: usize = 1_000_000;

/// Achievable sums (mod n) of nonempty subsequences.
#[derive(Clone)]
struct SumSet {
    hit: Vec<bool>,
}

impl SumSet {
    fn new(n: usize) -> Self {
        Self { hit: vec![false; n] }
    }

    fn with(&self, residue: usize) -> Self {
        let n = self.hit.len();
        let mut hit = self.hit.clone();
        for (i, &h) in self.hit.iter().enumerate() {
            if h {
                hit[(i + residue) % n] = true;
            }
        }
        hit[residue] = true;
        Self { hit }
    }

    fn has_zero(&self) -> bool {
        self.hit[0]
    }
}

/// True if no nonempty subsequence of `seq` sums to zero.
pub fn is_zero_sum_free(seq: &Sequence) -> bool {
    let n = seq.group().order();
    if seq.len() >= n {
        return false;
    }
    let mut sums = SumSet::new(n as usize);
    for (r, &m) in seq.mult().iter().enumerate() {
        for _ in 0..m {
            sums = sums.with(r);
            if sums.has_zero() {
                return false;
            }
        }
    }
    true
}

/// True iff `x` is nonempty and has no proper nonempty zero-sum subsequence.
pub fn is_atom(x: &Block) -> bool {
    let Some(&top) = x.support().last() else {
        return false;
    };
    let mut rest = x.as_sequence().mult().to_vec();
    rest[top as usize] -= 1;
    match Sequence::from_mult(x.group(), rest) {
        Ok(p) => is_zero_sum_free(&p),
        Err(_) => false,
    }
}

/// A sorted, duplicate-free list of atoms. The position of an atom in the
/// table is the handle used by factorizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTable {
    group: CyclicGroup,
    atoms: Vec<Block>,
    cap: Option<Block>,
    index: HashMap<Block, usize>,
}

impl AtomTable {
    fn from_sorted(group: CyclicGroup, atoms: Vec<Block>, cap: Option<Block>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        let index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Self { group, atoms, cap, index }
    }

    /// Builds a table from an arbitrary list, validating every entry.
    pub fn from_atoms(group: CyclicGroup, mut atoms: Vec<Block>) -> Result<Self> {
        for a in &atoms {
            if a.group() != group {
                return Err(Error::GroupMismatch { left: group.order(), right: a.order() });
            }
            if !is_atom(a) {
                return Err(Error::InvalidParameter(format!("`{a}` is not an atom")));
            }
        }
        atoms.sort();
        atoms.dedup();
        Ok(Self::from_sorted(group, atoms, None))
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn atoms(&self) -> &[Block] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Block> {
        self.atoms.get(i)
    }

    pub fn index_of(&self, atom: &Block) -> Option<usize> {
        self.index.get(atom).copied()
    }

    /// The block this table was restricted to, if any.
    pub fn cap(&self) -> Option<&Block> {
        self.cap.as_ref()
    }

    /// Atoms of this table dividing `x`, as a new table capped by `x`.
    pub fn restrict_to(&self, x: &Block) -> AtomTable {
        let atoms = self.atoms.iter().filter(|a| a.divides(x)).cloned().collect();
        Self::from_sorted(self.group, atoms, Some(x.clone()))
    }
}

struct Enumerator<'a> {
    group: CyclicGroup,
    cap: Option<&'a [u64]>,
    max_atoms: usize,
    out: Vec<Block>,
}

impl Enumerator<'_> {
    fn allows(&self, residue: usize, count: u64) -> bool {
        self.cap.is_none_or(|c| count <= c[residue])
    }

    fn emit(&mut self, mult: Vec<u64>) -> Result<()> {
        if self.out.len() >= self.max_atoms {
            return Err(Error::ResourceLimit { what: "atom count", limit: self.max_atoms as u64 });
        }
        self.out.push(Block::from_mult(self.group, mult)?);
        Ok(())
    }

    // `partial` is zero-sum free with residues all >= 1 and <= `last`.
    fn walk(&mut self, partial: &mut Vec<u64>, sums: &SumSet, sum: u64, last: usize) -> Result<()> {
        let n = self.group.size();
        let closing = self.group.neg(sum) as usize;
        let is_empty = last == 0;
        if (is_empty || closing >= last) && self.allows(closing, partial[closing] + 1) {
            let mut atom = partial.clone();
            atom[closing] += 1;
            self.emit(atom)?;
        }
        for r in last.max(1)..n {
            if !self.allows(r, partial[r] + 1) {
                continue;
            }
            let next = sums.with(r);
            if next.has_zero() {
                continue;
            }
            partial[r] += 1;
            self.walk(partial, &next, self.group.add(sum, r as u64), r)?;
            partial[r] -= 1;
        }
        Ok(())
    }

    fn run(mut self) -> Result<Vec<Block>> {
        let n = self.group.size();
        let mut partial = vec![0; n];
        self.walk(&mut partial, &SumSet::new(n), 0, 0)?;
        self.out.sort();
        Ok(self.out)
    }
}

/// All atoms of B(Z_n).
pub fn enumerate_atoms(group: CyclicGroup) -> Result<AtomTable> {
    enumerate_atoms_with_limit(group, DEFAULT_MAX_ATOMS)
}

pub fn enumerate_atoms_with_limit(group: CyclicGroup, max_atoms: usize) -> Result<AtomTable> {
    let atoms = Enumerator { group, cap: None, max_atoms, out: Vec::new() }.run()?;
    log::debug!("enumerated {} atoms of B(Z_{})", atoms.len(), group.order());
    Ok(AtomTable::from_sorted(group, atoms, None))
}

/// All atoms dividing `x`, found by searching only inside `supp(x)` with
/// multiplicities bounded by those of `x`.
pub fn atoms_dividing(x: &Block) -> Result<AtomTable> {
    atoms_dividing_with_limit(x, DEFAULT_MAX_ATOMS)
}

pub fn atoms_dividing_with_limit(x: &Block, max_atoms: usize) -> Result<AtomTable> {
    let group = x.group();
    let atoms = Enumerator { group, cap: Some(x.mult()), max_atoms, out: Vec::new() }.run()?;
    Ok(AtomTable::from_sorted(group, atoms, Some(x.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    fn blk(n: u64, s: &str) -> Block {
        Block::parse(z(n), s).unwrap()
    }

    fn texts(t: &AtomTable) -> Vec<String> {
        t.atoms().iter().map(Block::to_text).collect()
    }

    #[test]
    fn is_atom_examples() {
        assert!(is_atom(&blk(3, "1^3")));
        assert!(!is_atom(&blk(5, "1^5 4^5")));
        assert!(is_atom(&blk(5, "2 1^3")));
        assert!(is_atom(&blk(5, "0")));
        assert!(!is_atom(&blk(5, "")));
        assert!(!is_atom(&blk(5, "0^2")));
        assert!(!is_atom(&blk(4, "2^4")));
        assert!(is_atom(&blk(4, "2^2")));
    }

    #[test]
    fn z3_and_z2_tables() {
        let t = enumerate_atoms(z(3)).unwrap();
        assert_eq!(texts(&t), vec!["2^3", "1 2", "1^3", "0"]);
        let t = enumerate_atoms(z(2)).unwrap();
        assert_eq!(texts(&t), vec!["1^2", "0"]);
    }

    #[test]
    fn maximal_length_atoms_of_z5() {
        let t = enumerate_atoms(z(5)).unwrap();
        let mut long: Vec<String> = t.atoms().iter().filter(|a| a.len() == 5).map(Block::to_text).collect();
        long.sort();
        assert_eq!(long, vec!["1^5", "2^5", "3^5", "4^5"]);
        assert!(t.atoms().iter().all(|a| a.len() <= 5));
    }

    #[test]
    fn dividing_examples() {
        let t = atoms_dividing(&blk(5, "1^5 4^5")).unwrap();
        assert_eq!(texts(&t), vec!["4^5", "1 4", "1^5"]);

        let a = blk(5, "2 1^3");
        assert_eq!(texts(&atoms_dividing(&a).unwrap()), vec!["1^3 2"]);

        let t = atoms_dividing(&blk(5, "1^8 2 4^5")).unwrap();
        let mut with_two: Vec<String> =
            t.atoms().iter().filter(|a| a.multiplicity(2) == 1).map(Block::to_text).collect();
        with_two.sort();
        assert_eq!(with_two, vec!["1^3 2", "2 4^2"]);
    }

    #[test]
    fn atom_limit() {
        let err = enumerate_atoms_with_limit(z(7), 5).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn from_atoms_validates() {
        assert!(AtomTable::from_atoms(z(5), vec![blk(5, "1^5 4^5")]).is_err());
        let t = AtomTable::from_atoms(z(5), vec![blk(5, "1 4"), blk(5, "0"), blk(5, "1 4")]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.index_of(&blk(5, "0")), Some(1));
    }
}
