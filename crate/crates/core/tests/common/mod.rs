//! Naive reference implementations used as oracles by the integration tests.
//! They share no code with the library beyond the `Block` container.

#![allow(dead_code)]

use std::collections::BTreeSet;

use zerosum::{Block, CyclicGroup};

pub fn z(n: u64) -> CyclicGroup {
    CyclicGroup::new(n).unwrap()
}

pub fn blk(n: u64, text: &str) -> Block {
    Block::parse(z(n), text).unwrap()
}

/// Every multiplicity vector over Z_n with total in `1..=max_len` whose
/// entries at residues outside `allowed` are zero.
pub fn all_vectors(n: u64, max_len: u64, allowed: &[u64]) -> Vec<Vec<u64>> {
    fn rec(pos: usize, left: u64, allowed: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos == allowed.len() {
            if cur.iter().any(|&m| m > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=left {
            cur[allowed[pos] as usize] = m;
            rec(pos + 1, left - m, allowed, cur, out);
        }
        cur[allowed[pos] as usize] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_len, allowed, &mut vec![0; n as usize], &mut out);
    out
}

fn weighted_sum(v: &[u64], n: u64) -> u64 {
    v.iter().enumerate().map(|(i, &m)| i as u64 * m).sum::<u64>() % n
}

/// All nonempty zero-sum blocks with |x| ≤ max_len; zeros optional.
pub fn all_blocks(n: u64, max_len: u64, with_zero: bool) -> Vec<Block> {
    let allowed: Vec<u64> = (if with_zero { 0 } else { 1 }..n).collect();
    all_vectors(n, max_len, &allowed)
        .into_iter()
        .filter(|v| weighted_sum(v, n) == 0)
        .map(|v| Block::from_mult(z(n), v).unwrap())
        .collect()
}

/// Every sub-multiset of `v` other than the empty one and `v` itself.
fn proper_subvectors(v: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0; v.len()]];
    for (i, &m) in v.iter().enumerate() {
        let mut next = Vec::new();
        for s in &out {
            for k in 0..=m {
                let mut t = s.clone();
                t[i] = k;
                next.push(t);
            }
        }
        out = next;
    }
    out.into_iter().filter(|s| s.iter().any(|&k| k > 0) && s.as_slice() != v).collect()
}

/// Atoms by definition: zero-sum blocks of length ≤ n with no proper
/// nonempty zero-sum sub-multiset.
pub fn brute_atoms(n: u64) -> BTreeSet<Block> {
    all_blocks(n, n, true)
        .into_iter()
        .filter(|b| proper_subvectors(b.mult()).iter().all(|s| weighted_sum(s, n) != 0))
        .collect()
}

/// All factorizations of `x` as sorted lists of atoms, by trying every atom
/// through the smallest residue present.
pub fn naive_factorizations(x: &Block, atoms: &BTreeSet<Block>) -> BTreeSet<Vec<Block>> {
    let mut out = BTreeSet::new();
    if x.is_empty() {
        out.insert(Vec::new());
        return out;
    }
    let r = x.mult().iter().position(|&m| m > 0).unwrap() as u64;
    for a in atoms.iter().filter(|a| a.multiplicity(r) > 0 && a.divides(x)) {
        let rest = x.quotient(a).unwrap();
        for mut z in naive_factorizations(&rest, atoms) {
            z.push(a.clone());
            z.sort();
            out.insert(z);
        }
    }
    out
}

/// Distance between factorizations given as sorted atom lists.
pub fn naive_distance(a: &[Block], b: &[Block]) -> u64 {
    let mut rest_b: Vec<Block> = b.to_vec();
    let mut only_a = 0;
    for x in a {
        match rest_b.iter().position(|y| y == x) {
            Some(k) => {
                rest_b.remove(k);
            }
            None => only_a += 1,
        }
    }
    only_a.max(rest_b.len() as u64)
}

/// Catenary degree by trying N = 0, 1, 2, … until the threshold graph is
/// connected (checked by depth-first search).
pub fn naive_catenary(zs: &[Vec<Block>]) -> u64 {
    if zs.len() <= 1 {
        return 0;
    }
    let k = zs.len();
    let d: Vec<Vec<u64>> = zs.iter().map(|a| zs.iter().map(|b| naive_distance(a, b)).collect()).collect();
    for bound in 0.. {
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !seen[j] && d[i][j] <= bound {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return bound;
        }
    }
    unreachable!()
}

pub fn lengths_of(zs: &BTreeSet<Vec<Block>>) -> Vec<u64> {
    let set: BTreeSet<u64> = zs.iter().map(|z| z.len() as u64).collect();
    set.into_iter().collect()
}

pub fn gaps(lengths: &[u64]) -> Vec<u64> {
    let set: BTreeSet<u64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
    set.into_iter().collect()
}
