//! Every finite graph embeds in the curve graph of some closed surface.
//!
//! Start from `n` curves pairwise intersecting once (a complete 1-system,
//! which fits on a closed surface of genus `ceil((n - 1) / 2)`). For each
//! edge `{u, v}` add a handle next to the intersection of curves `u` and `v`
//! and thread one of them through it, removing that intersection. The
//! disjoint pairs are then exactly the edges.
//!
//! The recipe is symbolic: it records the declared intersection numbers and
//! which pairs received a handle, not an explicit surface.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecipe {
    pub n: usize,
    pub genus: u64,
    /// Unordered pairs `(u, v)` with `u < v` whose intersection was removed.
    pub handles: Vec<(usize, usize)>,
    /// Row-major `n x n` matrix of declared intersection numbers.
    pub pairwise: Vec<u64>,
}

impl SurfaceRecipe {
    pub fn intersection(&self, u: usize, v: usize) -> u64 {
        self.pairwise[u * self.n + v]
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("recipe serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedRecipe(e.to_string()))
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedRecipe(msg));
        if self.n == 0 {
            return bad("no curves".into());
        }
        if self.pairwise.len() != self.n * self.n {
            return bad(format!(
                "pairwise has {} entries, expected {}",
                self.pairwise.len(),
                self.n * self.n
            ));
        }
        for u in 0..self.n {
            if self.intersection(u, u) != 0 {
                return bad(format!("nonzero diagonal entry at {u}"));
            }
            for v in u + 1..self.n {
                if self.intersection(u, v) != self.intersection(v, u) {
                    return bad(format!("asymmetric entries at ({u}, {v})"));
                }
            }
        }
        for &(u, v) in &self.handles {
            if u >= v || v >= self.n {
                return bad(format!("bad handle pair ({u}, {v})"));
            }
        }
        Ok(())
    }
}

/// `ceil((n - 1) / 2) + m`: enough genus for a complete 1-system on `n`
/// curves plus one handle per edge. A single curve needs a torus.
pub fn genus_upper_bound(n: usize, m: usize) -> Result<u64> {
    match n {
        0 => Err(Error::EmptyGraph),
        1 => Ok(1 + m as u64),
        _ => Ok((n as u64 - 1).div_ceil(2) + m as u64),
    }
}

pub fn embed_finite_graph(g: &FiniteGraph) -> Result<SurfaceRecipe> {
    let n = g.n();
    let genus = genus_upper_bound(n, g.edge_count())?;
    let mut pairwise = vec![1; n * n];
    for v in 0..n {
        pairwise[v * n + v] = 0;
    }
    for (u, v) in g.edges() {
        pairwise[u * n + v] = 0;
        pairwise[v * n + u] = 0;
    }
    Ok(SurfaceRecipe {
        n,
        genus,
        handles: g.edges().collect(),
        pairwise,
    })
}

/// Curve graph of the declared system: `u ~ v` iff `i(u, v) = 0`.
pub fn recipe_curve_graph(r: &SurfaceRecipe) -> Result<FiniteGraph> {
    r.validate()?;
    let mut g = FiniteGraph::empty(r.n);
    for u in 0..r.n {
        for v in u + 1..r.n {
            if r.intersection(u, v) == 0 {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(genus_upper_bound(4, 3).unwrap(), 5);
        assert_eq!(genus_upper_bound(2, 0).unwrap(), 1);
        assert_eq!(genus_upper_bound(5, 0).unwrap(), 2);
        assert_eq!(genus_upper_bound(1, 0).unwrap(), 1);
        assert_eq!(genus_upper_bound(0, 0), Err(Error::EmptyGraph));
    }

    #[test]
    fn embed_examples() {
        let r = embed_finite_graph(&FiniteGraph::empty(3)).unwrap();
        assert_eq!(r.genus, 1);
        assert!(r.handles.is_empty());
        assert_eq!(r.pairwise, vec![0, 1, 1, 1, 0, 1, 1, 1, 0]);

        let r = embed_finite_graph(&FiniteGraph::complete(3)).unwrap();
        assert_eq!(r.genus, 4);
        assert_eq!(r.pairwise, vec![0; 9]);
        assert_eq!(recipe_curve_graph(&r).unwrap(), FiniteGraph::complete(3));

        let r = embed_finite_graph(&FiniteGraph::empty(1)).unwrap();
        assert_eq!((r.n, r.genus), (1, 1));
        assert_eq!(r.pairwise, vec![0]);

        assert_eq!(
            embed_finite_graph(&FiniteGraph::empty(0)),
            Err(Error::EmptyGraph)
        );
    }

    #[test]
    fn four_cycle_round_trip() {
        let c4 = FiniteGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = embed_finite_graph(&c4).unwrap();
        // Opposite corners keep their intersection.
        assert_eq!(r.intersection(0, 2), 1);
        assert_eq!(r.intersection(1, 3), 1);
        assert_eq!(recipe_curve_graph(&r).unwrap(), c4);
    }

    #[test]
    fn rejects_malformed_matrices() {
        let mut r = embed_finite_graph(&FiniteGraph::empty(3)).unwrap();
        r.pairwise[1] = 0;
        assert!(matches!(
            recipe_curve_graph(&r),
            Err(Error::MalformedRecipe(_))
        ));
        let mut r = embed_finite_graph(&FiniteGraph::empty(3)).unwrap();
        r.pairwise[4] = 2;
        assert!(recipe_curve_graph(&r).is_err());
        let mut r = embed_finite_graph(&FiniteGraph::empty(3)).unwrap();
        r.pairwise.pop();
        assert!(recipe_curve_graph(&r).is_err());
    }

    #[test]
    fn json_keeps_field_order_and_round_trips() {
        let r = embed_finite_graph(&FiniteGraph::complete(2)).unwrap();
        let text = r.to_json();
        let keys: Vec<usize> = ["\"n\"", "\"genus\"", "\"handles\"", "\"pairwise\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SurfaceRecipe::from_json(&text).unwrap(), r);
        assert!(SurfaceRecipe::from_json("{\"n\": 2}").is_err());
    }

    #[test]
    fn adding_an_edge_costs_one_handle() {
        for g in FiniteGraph::all_labeled(4) {
            let before = embed_finite_graph(&g).unwrap();
            for u in 0..4 {
                for v in u + 1..4 {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v).unwrap();
                    let after = embed_finite_graph(&h).unwrap();
                    assert_eq!(after.genus, before.genus + 1);
                    assert!(after
                        .pairwise
                        .iter()
                        .zip(&before.pairwise)
                        .all(|(a, b)| a <= b));
                }
            }
        }
    }
}
