//! Rado's bit model of the random graph.
//!
//! Vertices are the naturals. For `x < y` the pair is an edge of the direct
//! model when bit `x` of `y` is set, and an edge of the complement model when
//! it is clear. Vertices are arbitrary precision: extension witnesses grow
//! like `2^(max + 1)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

pub type Vertex = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Direct,
    Complement,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Direct => Polarity::Complement,
            Polarity::Complement => Polarity::Direct,
        }
    }
}

/// The coefficient of `2^x` in the binary expansion of `y` (bit 0 is the
/// least significant).
pub fn bit(x: &BigUint, y: &BigUint) -> bool {
    // An index past u64 range is beyond any representable y.
    x.to_u64().is_some_and(|i| y.bit(i))
}

/// Adjacency in the bit model. Always reads the bit of the smaller vertex in
/// the larger one; the reverse bit is zero anyway since `x < 2^y`.
pub fn rado_adjacent(x: &Vertex, y: &Vertex, polarity: Polarity) -> Result<bool> {
    let (lo, hi) = match x.cmp(y) {
        std::cmp::Ordering::Less => (x, y),
        std::cmp::Ordering::Greater => (y, x),
        std::cmp::Ordering::Equal => return Err(Error::SelfLoop(x.clone())),
    };
    let set = bit(lo, hi);
    Ok(match polarity {
        Polarity::Direct => set,
        Polarity::Complement => !set,
    })
}

/// The exponent `k` used by [`extension_witness`]: one more than the largest
/// listed vertex, or 0 when both sets are empty.
pub fn witness_exponent(nbrs: &BTreeSet<Vertex>, nonnbrs: &BTreeSet<Vertex>) -> BigUint {
    match nbrs.iter().chain(nonnbrs).max() {
        Some(m) => m + 1u32,
        None => BigUint::zero(),
    }
}

/// A fresh vertex adjacent to every vertex of `nbrs` and to none of `nonnbrs`.
///
/// In the direct model this is `2^k + sum(2^u for u in nbrs)`; the complement
/// model sets the bits of `nonnbrs` instead. Every listed vertex is below `k`,
/// so its bit in the witness decides the adjacency.
pub fn extension_witness(
    nbrs: &BTreeSet<Vertex>,
    nonnbrs: &BTreeSet<Vertex>,
    polarity: Polarity,
) -> Result<Vertex> {
    if let Some(v) = nbrs.intersection(nonnbrs).next() {
        return Err(Error::OverlappingSets(v.clone()));
    }
    let k = witness_exponent(nbrs, nonnbrs);
    let shift = |v: &BigUint| -> Result<u64> {
        v.to_u64()
            .filter(|&s| s < u64::from(u32::MAX))
            .ok_or_else(|| Error::TooLarge(format!("2^{v}")))
    };
    let mut z = BigUint::one() << shift(&k)?;
    let ones = match polarity {
        Polarity::Direct => nbrs,
        Polarity::Complement => nonnbrs,
    };
    for u in ones {
        z.set_bit(shift(u)?, true);
    }
    Ok(z)
}

/// Whether `map` is an injective map from `g` into the bit model that
/// preserves both edges and non-edges.
pub fn is_induced_embedding(g: &FiniteGraph, map: &[Vertex], polarity: Polarity) -> Result<bool> {
    if map.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: map.len(),
        });
    }
    let distinct: BTreeSet<&Vertex> = map.iter().collect();
    if distinct.len() != map.len() {
        return Ok(false);
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != rado_adjacent(&map[u], &map[v], polarity)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The induced subgraph of the bit model on `0..n`.
pub fn rado_truncation(n: usize, polarity: Polarity) -> FiniteGraph {
    let mut g = FiniteGraph::empty(n);
    for y in 0..n {
        for x in 0..y {
            let adjacent = match polarity {
                Polarity::Direct => y >> x & 1 == 1,
                Polarity::Complement => y >> x & 1 == 0,
            };
            if adjacent {
                g.add_edge(x, y).expect("indices are in range");
            }
        }
    }
    g
}

/// Erdős–Rényi `G(n, 1/2)` from a seeded ChaCha stream. Pairs are drawn in
/// lexicographic order, so the graph is a pure function of `(n, seed)`.
pub fn er_random_graph(n: usize, seed: u64) -> FiniteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = FiniteGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<bool>() {
                g.add_edge(u, v).expect("indices are in range");
            }
        }
    }
    g
}

/// A vertex of `g` outside `nbrs ∪ nonnbrs` adjacent to all of `nbrs` and
/// none of `nonnbrs`; the smallest such vertex if any exists.
pub fn find_extension_witness(g: &FiniteGraph, nbrs: &[usize], nonnbrs: &[usize]) -> Option<usize> {
    (0..g.n()).find(|&z| {
        !nbrs.contains(&z)
            && !nonnbrs.contains(&z)
            && nbrs.iter().all(|&u| g.has_edge(z, u))
            && nonnbrs.iter().all(|&w| !g.has_edge(z, w))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSplit {
    pub nbrs: Vec<usize>,
    pub nonnbrs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub trials: usize,
    pub successes: usize,
    pub fraction: f64,
    pub first_failure: Option<ExtensionSplit>,
}

/// Samples `trials` splits of `t` distinct vertices into `(U, W)` and asks
/// for a witness inside `g` for each. Each sampled vertex lands in `U` or
/// `W` by a fair coin.
pub fn check_extension_samples(
    g: &FiniteGraph,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<ExtensionReport> {
    if t > g.n() {
        return Err(Error::SampleTooLarge { t, n: g.n() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let mut split = ExtensionSplit {
            nbrs: Vec::new(),
            nonnbrs: Vec::new(),
        };
        for v in index::sample(&mut rng, g.n(), t).into_iter() {
            if rng.gen::<bool>() {
                split.nbrs.push(v);
            } else {
                split.nonnbrs.push(v);
            }
        }
        split.nbrs.sort_unstable();
        split.nonnbrs.sort_unstable();
        if find_extension_witness(g, &split.nbrs, &split.nonnbrs).is_some() {
            successes += 1;
        } else if first_failure.is_none() {
            first_failure = Some(split);
        }
    }
    Ok(ExtensionReport {
        trials,
        successes,
        fraction: if trials == 0 {
            1.0
        } else {
            successes as f64 / trials as f64
        },
        first_failure,
    })
}
