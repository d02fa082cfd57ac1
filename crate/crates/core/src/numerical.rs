//! Numerical monoids ⟨a_1, …, a_k⟩ ⊆ (N_0, +): factorizations, length sets
//! and delta sets of their elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{DeltaSet, LengthSet};

/// Unsigned machine integers usable as monoid elements.
pub trait Scalar: PrimInt + Unsigned + Hash + Debug + Display + Send + Sync + Serialize + 'static {}

impl<T> Scalar for T where T: PrimInt + Unsigned + Hash + Debug + Display + Send + Sync + Serialize + 'static {}

/// Upper bound on `up_to` for [`NumericalMonoid::scan`].
pub const MAX_SCAN: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct NumericalMonoid<T: Scalar> {
    generators: Vec<T>,
}

/// Exponent vector `(x_1, …, x_k)` with Σ x_i a_i = s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NmFactorization<T: Scalar> {
    pub exponents: Vec<T>,
}

impl<T: Scalar> NmFactorization<T> {
    pub fn length(&self) -> u64 {
        self.exponents.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).sum()
    }

    pub fn value(&self, monoid: &NumericalMonoid<T>) -> Option<T> {
        self.exponents
            .iter()
            .zip(&monoid.generators)
            .try_fold(T::zero(), |acc, (&x, &a)| acc.checked_add(&x.checked_mul(&a)?))
    }
}

fn gcd<T: Scalar>(mut a: T, mut b: T) -> T {
    while !b.is_zero() {
        (a, b) = (b, a % b);
    }
    a
}

// All solutions of Σ x_i gens[i] = s, largest generator first.
fn solve<T: Scalar>(gens: &[T], s: T, exps: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    let Some((&last, init)) = gens.split_last() else {
        if s.is_zero() {
            let mut e = exps.clone();
            e.reverse();
            out.push(e);
        }
        return;
    };
    if init.is_empty() {
        if (s % last).is_zero() {
            exps.push(s / last);
            solve(init, T::zero(), exps, out);
            exps.pop();
        }
        return;
    }
    let mut x = s / last;
    loop {
        exps.push(x);
        solve(init, s - x * last, exps, out);
        exps.pop();
        if x.is_zero() {
            break;
        }
        x = x - T::one();
    }
}

impl<T: Scalar> NumericalMonoid<T> {
    /// Requires a strictly increasing, primitive, minimal generating set.
    pub fn new(generators: Vec<T>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        if generators[0].is_zero() {
            return Err(Error::InvalidParameter("generators must be positive".into()));
        }
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("generators must be strictly increasing".into()));
        }
        let g = generators.iter().fold(T::zero(), |acc, &a| gcd(acc, a));
        if !g.is_one() {
            return Err(Error::InvalidParameter(format!("generators share the factor {g}")));
        }
        for (i, &a) in generators.iter().enumerate().skip(1) {
            let mut out = Vec::new();
            solve(&generators[..i], a, &mut Vec::new(), &mut out);
            if !out.is_empty() {
                return Err(Error::InvalidParameter(format!("generator {a} is a combination of smaller generators")));
            }
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    /// All factorizations of `s`, sorted by exponent vector. Empty when s ∉ S.
    pub fn factorizations(&self, s: T) -> Vec<NmFactorization<T>> {
        let mut out = Vec::new();
        solve(&self.generators, s, &mut Vec::new(), &mut out);
        let mut v: Vec<NmFactorization<T>> = out.into_iter().map(|exponents| NmFactorization { exponents }).collect();
        v.sort();
        v
    }

    pub fn contains(&self, s: T) -> bool {
        !self.factorizations(s).is_empty()
    }

    pub fn length_set(&self, s: T) -> LengthSet {
        LengthSet::from_iter_unsorted(self.factorizations(s).iter().map(NmFactorization::length))
    }

    pub fn delta_set(&self, s: T) -> DeltaSet {
        self.length_set(s).delta()
    }

    /// Δ(s) for every s ∈ S with s ≤ `up_to`, by the recursion
    /// L(s) = ∪_i (1 + L(s − a_i)). Results are bound-limited: no
    /// periodicity certificate is computed.
    pub fn scan(&self, up_to: T) -> Result<NmScan<T>> {
        if up_to < self.generators[0] {
            return Err(Error::InvalidParameter(format!("scan bound {up_to} is below the smallest generator")));
        }
        let limit = up_to
            .to_usize()
            .filter(|&u| u <= MAX_SCAN)
            .ok_or(Error::ResourceLimit { what: "scan bound", limit: MAX_SCAN as u64 })?;
        let gens: Vec<usize> = self.generators.iter().map(|a| a.to_usize().unwrap_or(usize::MAX)).collect();
        let mut lengths: Vec<Option<BTreeSet<u64>>> = vec![None; limit + 1];
        lengths[0] = Some(BTreeSet::from([0]));
        for s in 1..=limit {
            let mut acc: Option<BTreeSet<u64>> = None;
            for &a in gens.iter().filter(|&&a| a <= s) {
                if let Some(prev) = &lengths[s - a] {
                    acc.get_or_insert_with(BTreeSet::new).extend(prev.iter().map(|l| l + 1));
                }
            }
            lengths[s] = acc;
        }
        let mut scan = NmScan {
            generators: self.generators.clone(),
            up_to,
            bound_limited: true,
            deltas: Vec::new(),
            delta_union: BTreeSet::new(),
            realized: BTreeMap::new(),
        };
        for (s, ls) in lengths.into_iter().enumerate() {
            let Some(ls) = ls else { continue };
            let delta = LengthSet::from_iter_unsorted(ls).delta();
            let elt = T::from(s).ok_or(Error::Overflow)?;
            if !delta.is_empty() {
                scan.delta_union.extend(delta.as_slice().iter().copied());
                scan.realized.entry(delta.as_slice().to_vec()).or_insert(elt);
            }
            scan.deltas.push((elt, delta));
        }
        Ok(scan)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NmScan<T: Scalar> {
    pub generators: Vec<T>,
    pub up_to: T,
    pub bound_limited: bool,
    /// (s, Δ(s)) for every s ∈ S ∩ [0, up_to], increasing.
    pub deltas: Vec<(T, DeltaSet)>,
    pub delta_union: BTreeSet<u64>,
    /// Least element realizing each nonempty delta set.
    pub realized: BTreeMap<Vec<u64>, T>,
}
