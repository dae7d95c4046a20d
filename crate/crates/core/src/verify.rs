//! End-to-end sweeps over all pairs `0 <= x < y <= N`.
//!
//! The pair set is split by `y` across a rayon pool; mismatches are merged
//! and sorted by `(x, y)`, so reports do not depend on the worker count.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedder::{embed_finite_graph, genus_upper_bound, recipe_curve_graph};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::layout::{crossings, layout, CurvePath};
use crate::multicurve::{algebraic_intersection, bracket, homology_class, multicurve_intersection};
use crate::rado::{bit, rado_adjacent, Polarity};

/// Mismatch lists in reports are truncated to this many entries.
pub const MISMATCH_CAP: usize = 100;

/// Largest vertex count for [`verify_embedder_exhaustive`].
pub const EMBEDDER_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Compare the multicurve pairing `i([x], [y])`.
    Bracket,
    /// Compare crossings of the routed curves `c(x)`, `c(y)`.
    Layout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub x: u64,
    pub y: u64,
    pub expected: u64,
    pub got: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub range: u64,
    pub pairs_checked: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch_count == 0
    }

    /// `checked P pairs up to N: OK` or `...: FAILED(k)`.
    pub fn summary(&self) -> String {
        format!(
            "checked {} pairs up to {}: {}",
            self.pairs_checked,
            self.range,
            status(self.mismatch_count)
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn status(failures: u64) -> String {
    if failures == 0 {
        "OK".into()
    } else {
        format!("FAILED({failures})")
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Runs `check` over every pair `x < y <= range`.
fn sweep<F>(range: u64, jobs: usize, check: F) -> Result<SweepReport>
where
    F: Fn(usize, usize) -> Option<Mismatch> + Sync,
{
    if range < 1 {
        return Err(Error::EmptyRange);
    }
    let top = usize::try_from(range).map_err(|_| Error::TooLarge(range.to_string()))?;
    let start = Instant::now();
    let rows: Vec<(u64, Vec<Mismatch>)> = pool(jobs).install(|| {
        (1..=top)
            .into_par_iter()
            .map(|y| {
                let mut count = 0;
                let mut kept = Vec::new();
                for x in 0..y {
                    if let Some(m) = check(x, y) {
                        count += 1;
                        if kept.len() < MISMATCH_CAP {
                            kept.push(m);
                        }
                    }
                }
                (count, kept)
            })
            .collect()
    });
    let mismatch_count = rows.iter().map(|(c, _)| c).sum();
    let mut mismatches: Vec<Mismatch> = rows.into_iter().flat_map(|(_, m)| m).collect();
    mismatches.sort_by_key(|m| (m.x, m.y));
    mismatches.truncate(MISMATCH_CAP);
    Ok(SweepReport {
        range,
        pairs_checked: range * (range + 1) / 2,
        mismatch_count,
        mismatches,
        elapsed: start.elapsed(),
    })
}

fn vertices(range: u64) -> Vec<BigUint> {
    (0..=range).map(BigUint::from).collect()
}

fn layouts(vs: &[BigUint], jobs: usize) -> Vec<CurvePath> {
    pool(jobs).install(|| vs.par_iter().map(layout).collect())
}

/// For every `x < y <= range`, checks that the level's intersection count is
/// zero exactly when `x` and `y` are adjacent in the complement Rado model.
/// `expected` in a mismatch is bit `x` of `y`.
pub fn verify_main_theorem(range: u64, level: Level, jobs: usize) -> Result<SweepReport> {
    let vs = vertices(range);
    let judge = |x: usize, y: usize, got: u64| {
        let adjacent = rado_adjacent(&vs[x], &vs[y], Polarity::Complement).expect("x < y");
        (adjacent != (got == 0)).then(|| Mismatch {
            x: x as u64,
            y: y as u64,
            expected: u64::from(bit(&vs[x], &vs[y])),
            got,
        })
    };
    match level {
        Level::Bracket => {
            let brackets: Vec<_> = pool(jobs).install(|| vs.par_iter().map(bracket).collect());
            sweep(range, jobs, |x, y| {
                judge(x, y, multicurve_intersection(&brackets[x], &brackets[y]))
            })
        }
        Level::Layout => {
            let paths = layouts(&vs, jobs);
            sweep(range, jobs, |x, y| {
                judge(
                    x,
                    y,
                    crossings(&paths[x], &paths[y]).expect("distinct labels"),
                )
            })
        }
    }
}

/// Pair-for-pair agreement of the two levels: `expected` is the multicurve
/// pairing, `got` the crossing count.
pub fn compare_levels(range: u64, jobs: usize) -> Result<SweepReport> {
    let vs = vertices(range);
    let brackets: Vec<_> = vs.iter().map(bracket).collect();
    let paths = layouts(&vs, jobs);
    sweep(range, jobs, |x, y| {
        let expected = multicurve_intersection(&brackets[x], &brackets[y]);
        let got = crossings(&paths[x], &paths[y]).expect("distinct labels");
        (expected != got).then_some(Mismatch {
            x: x as u64,
            y: y as u64,
            expected,
            got,
        })
    })
}

/// Checks `|<[x], [y]>| = crossings(c(x), c(y)) = i([x], [y])`. The
/// homological pairing bounds any realization from below, so equality shows
/// the drawn curves are in minimal position. `expected` is the absolute
/// pairing; `got` is whichever count disagrees with it.
pub fn verify_minimality(range: u64, jobs: usize) -> Result<SweepReport> {
    let vs = vertices(range);
    let brackets: Vec<_> = vs.iter().map(bracket).collect();
    let classes: Vec<_> = brackets.iter().map(homology_class).collect();
    let paths = layouts(&vs, jobs);
    sweep(range, jobs, |x, y| {
        let lower = algebraic_intersection(&classes[x], &classes[y]).unsigned_abs();
        let drawn = crossings(&paths[x], &paths[y]).expect("distinct labels");
        let pairing = multicurve_intersection(&brackets[x], &brackets[y]);
        let got = if u128::from(drawn) != lower {
            drawn
        } else {
            pairing
        };
        (u128::from(got) != lower).then(|| Mismatch {
            x: x as u64,
            y: y as u64,
            expected: u64::try_from(lower).unwrap_or(u64::MAX),
            got,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedderFailure {
    pub graph: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedderReport {
    pub max_n: usize,
    pub graphs_checked: u64,
    /// Recipes of genus at least 2, where the clique bound applies.
    pub clique_checks: u64,
    pub failure_count: u64,
    pub failures: Vec<EmbedderFailure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl EmbedderReport {
    pub fn is_ok(&self) -> bool {
        self.failure_count == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "checked {} graphs up to {} vertices: {}",
            self.graphs_checked,
            self.max_n,
            status(self.failure_count)
        )
    }
}

/// Problems with the recipe of `g`, if any: it must round-trip to `g` itself,
/// have genus `ceil((n - 1) / 2) + |E|`, and declare no more than `3g - 3`
/// pairwise disjoint curves once `g >= 2`.
pub fn check_embedding(g: &FiniteGraph) -> Result<Vec<String>> {
    let recipe = embed_finite_graph(g)?;
    let mut problems = Vec::new();
    let back = recipe_curve_graph(&recipe)?;
    if &back != g {
        problems.push(format!(
            "round trip gave {}",
            back.to_string().replace('\n', ";")
        ));
    }
    let genus = genus_upper_bound(g.n(), g.edge_count())?;
    if recipe.genus != genus {
        problems.push(format!("genus {} instead of {genus}", recipe.genus));
    }
    if recipe.genus >= 2 {
        let clique = back.clique_number() as u64;
        if clique > 3 * recipe.genus - 3 {
            problems.push(format!(
                "clique of {clique} curves on genus {}",
                recipe.genus
            ));
        }
    }
    Ok(problems)
}

/// Every labeled graph on `1..=max_n` vertices through [`check_embedding`].
pub fn verify_embedder_exhaustive(max_n: usize) -> Result<EmbedderReport> {
    if max_n > EMBEDDER_MAX_N {
        return Err(Error::EnumerationBudget {
            limit: EMBEDDER_MAX_N,
            got: max_n,
        });
    }
    let start = Instant::now();
    let mut report = EmbedderReport {
        max_n,
        graphs_checked: 0,
        clique_checks: 0,
        failure_count: 0,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for n in 1..=max_n {
        for g in FiniteGraph::all_labeled(n) {
            report.graphs_checked += 1;
            if genus_upper_bound(n, g.edge_count())? >= 2 {
                report.clique_checks += 1;
            }
            for reason in check_embedding(&g)? {
                report.failure_count += 1;
                if report.failures.len() < MISMATCH_CAP {
                    report.failures.push(EmbedderFailure {
                        graph: g.to_string().trim_end().replace('\n', ";"),
                        reason,
                    });
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

impl fmt::Display for EmbedderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
