//! Distances between factorizations and the catenary degree.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{enumerate_atoms_with_limit, AtomTable};
use crate::error::{Error, Result};
use crate::factor::{Factorization, Factorizer, Limits};
use crate::group::{Block, CyclicGroup};
use crate::survey::{enumerate_blocks, SurveyConfig};

/// Componentwise minimum of atom counts.
pub fn gcd_factorizations(z: &Factorization, w: &Factorization) -> Result<Factorization> {
    if !z.same_table(w) {
        return Err(Error::TableMismatch);
    }
    Ok(common_part(z, w))
}

fn common_part(z: &Factorization, w: &Factorization) -> Factorization {
    let counts = z
        .counts()
        .iter()
        .filter_map(|&(i, c)| {
            let d = w.count_of(i);
            (d > 0).then_some((i, c.min(d)))
        })
        .collect();
    Factorization::new(z.table().clone(), counts).expect("counts drawn from a valid factorization")
}

// max(|z / gcd|, |w / gcd|) without building the quotients.
fn raw_distance(z: &Factorization, w: &Factorization) -> u64 {
    let common: u64 = common_part(z, w).length();
    (z.length() - common).max(w.length() - common)
}

/// d(z, z′). Both factorizations must multiply out to the same block.
pub fn distance(z: &Factorization, w: &Factorization) -> Result<u64> {
    if !z.same_table(w) {
        return Err(Error::TableMismatch);
    }
    if z.recompose()? != w.recompose()? {
        return Err(Error::DifferentElements);
    }
    Ok(raw_distance(z, w))
}

/// The complete graph on Z(x) weighted by distance.
pub struct FactorizationGraph {
    vertices: Vec<Factorization>,
    weights: Vec<Vec<u64>>,
}

impl FactorizationGraph {
    pub fn new(vertices: Vec<Factorization>) -> Self {
        let weights = vertices.par_iter().map(|z| vertices.iter().map(|w| raw_distance(z, w)).collect()).collect();
        Self { vertices, weights }
    }

    pub fn vertices(&self) -> &[Factorization] {
        &self.vertices
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weights[i][j]
    }

    /// Smallest N for which the subgraph of edges of weight ≤ N is
    /// connected; the heaviest edge of a minimum spanning tree (Kruskal).
    pub fn bottleneck(&self) -> u64 {
        let k = self.vertices.len();
        if k <= 1 {
            return 0;
        }
        let mut edges: Vec<(u64, usize, usize)> =
            (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).map(|(i, j)| (self.weights[i][j], i, j)).collect();
        edges.sort_unstable();
        let mut sets = DisjointSets::new(k);
        let mut components = k;
        for (w, i, j) in edges {
            if sets.union(i, j) {
                components -= 1;
                if components == 1 {
                    return w;
                }
            }
        }
        unreachable!("complete graph is connected")
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(k: usize) -> Self {
        Self { parent: (0..k).collect(), rank: vec![0; k] }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }
}

/// c(x) from an explicit factorization set.
pub fn catenary_of(zs: Vec<Factorization>, limits: &Limits) -> Result<u64> {
    if zs.len() > limits.max_graph_vertices {
        return Err(Error::ResourceLimit {
            what: "factorization graph vertices",
            limit: limits.max_graph_vertices as u64,
        });
    }
    Ok(FactorizationGraph::new(zs).bottleneck())
}

pub fn catenary_degree_with(x: &Block, engine: &mut Factorizer) -> Result<u64> {
    let zs = engine.factorizations(x)?;
    catenary_of(zs, &engine.limits())
}

pub fn catenary_degree(x: &Block) -> Result<u64> {
    let mut engine = Factorizer::for_block(x, Limits::default())?;
    catenary_degree_with(x, &mut engine)
}

#[derive(Clone, Debug, Serialize)]
pub struct CatenaryScan {
    pub n: u64,
    pub max_len: u64,
    /// Maximum of c(x) over the scanned blocks; a lower bound for c(B(Z_n)).
    pub sup: u64,
    #[serde(serialize_with = "crate::report::ser_opt_block")]
    pub witness: Option<Block>,
    pub blocks_checked: u64,
    /// Blocks whose catenary degree exceeded n.
    #[serde(serialize_with = "crate::report::ser_blocks")]
    pub above_order: Vec<Block>,
}

/// sup of c(x) over all nonempty zero-free blocks with |x| ≤ `max_len`.
/// Zeros are prime atoms and never change distances, so they are skipped.
pub fn catenary_sup(group: CyclicGroup, max_len: u64, limits: Limits) -> Result<CatenaryScan> {
    let table = Arc::new(enumerate_atoms_with_limit(group, limits.max_atoms)?);
    catenary_sup_with_table(table, max_len, limits)
}

/// As [`catenary_sup`], over a prebuilt global atom table.
pub fn catenary_sup_with_table(table: Arc<AtomTable>, max_len: u64, limits: Limits) -> Result<CatenaryScan> {
    let group = table.group();
    if table.cap().is_some() {
        return Err(Error::InvalidParameter("catenary scans need the global atom table".into()));
    }
    let config = SurveyConfig::new(group, max_len)?;
    let blocks: Vec<Block> = enumerate_blocks(&config).collect();
    let results: Vec<(Block, u64)> = blocks
        .into_par_iter()
        .map_init(
            || Factorizer::new(table.clone(), limits),
            |engine, x| catenary_degree_with(&x, engine).map(|c| (x, c)),
        )
        .collect::<Result<_>>()?;
    let mut scan = CatenaryScan {
        n: group.order(),
        max_len,
        sup: 0,
        witness: None,
        blocks_checked: results.len() as u64,
        above_order: Vec::new(),
    };
    for (x, c) in results {
        if c > group.order() {
            scan.above_order.push(x.clone());
        }
        let better = match &scan.witness {
            None => true,
            Some(w) => c > scan.sup || (c == scan.sup && x.witness_cmp(w).is_lt()),
        };
        if better {
            scan.sup = c;
            scan.witness = Some(x);
        }
    }
    Ok(scan)
}
