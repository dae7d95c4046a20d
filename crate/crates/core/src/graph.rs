//! Simple undirected graphs on `0..n` and their text format.
//!
//! The text format is `n m` on the first line followed by `m` lines `u v`.
//! Anything after a `#` is a comment; blank lines are skipped.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteGraph {
    n: usize,
    // Invariant: every pair is stored as (u, v) with u < v < n.
    edges: BTreeSet<(usize, usize)>,
}

impl FiniteGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(g)
    }

    /// Inserts `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {u} {v} out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.has_edge(u, v))
    }

    /// The graph whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.edges.insert((u, v));
                }
            }
        }
        g
    }

    /// Size of a largest clique (Bron–Kerbosch with pivoting).
    pub fn clique_number(&self) -> usize {
        let adj: Vec<BTreeSet<usize>> = (0..self.n).map(|v| self.neighbours(v).collect()).collect();
        let mut best = 0;
        bron_kerbosch(&adj, 0, (0..self.n).collect(), BTreeSet::new(), &mut best);
        best
    }

    /// All labeled graphs on `n` vertices, indexed by the bitmask of
    /// present pairs in lexicographic pair order.
    pub fn all_labeled(n: usize) -> impl Iterator<Item = FiniteGraph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let count = 1u64 << pairs.len();
        (0..count).map(move |mask| FiniteGraph {
            n,
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect(),
        })
    }
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    size: usize,
    mut candidates: BTreeSet<usize>,
    mut excluded: BTreeSet<usize>,
    best: &mut usize,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            *best = (*best).max(size);
        }
        return;
    }
    if size + candidates.len() <= *best {
        return;
    }
    let pivot = candidates
        .union(&excluded)
        .copied()
        .max_by_key(|&u| candidates.intersection(&adj[u]).count())
        .expect("candidates is nonempty");
    let branch: Vec<usize> = candidates.difference(&adj[pivot]).copied().collect();
    for v in branch {
        bron_kerbosch(
            adj,
            size + 1,
            candidates.intersection(&adj[v]).copied().collect(),
            excluded.intersection(&adj[v]).copied().collect(),
            best,
        );
        candidates.remove(&v);
        excluded.insert(v);
    }
}

impl fmt::Display for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line, header) = lines.next().ok_or(Error::GraphParse {
            line: 1,
            msg: "missing header \"n m\"".into(),
        })?;
        let [n, m] = parse_pair(line, header)?;
        let mut g = FiniteGraph::empty(n);
        let mut seen = 0;
        for (line, body) in lines {
            if seen == m {
                return Err(Error::GraphParse {
                    line,
                    msg: format!("more than the {m} declared edges"),
                });
            }
            let [u, v] = parse_pair(line, body)?;
            match g.add_edge(u, v) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(Error::GraphParse {
                        line,
                        msg: format!("duplicate edge {u} {v}"),
                    })
                }
                Err(e) => {
                    return Err(Error::GraphParse {
                        line,
                        msg: e.to_string(),
                    })
                }
            }
            seen += 1;
        }
        if seen != m {
            return Err(Error::GraphParse {
                line: s.lines().count(),
                msg: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    let err = |msg: String| Error::GraphParse { line, msg };
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, got {body:?}")));
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| err(format!("not a vertex index: {field:?}")))?;
    }
    Ok(out)
}
