//! Routed representatives `c(x)` on the lattice realization of the surface.
//!
//! The surface is the regular neighbourhood of the grid `N x N`. Row 0
//! carries the handles where the base curves live; column `i` runs upward
//! from handle `i`. `c(x)` takes each constituent of `[x]`, opens it into an
//! arc, and lifts its two ends along column `i` (front face) up to row
//! `x + 1`, where consecutive columns are joined along the back face.
//!
//! Crossings are counted by local rules:
//!
//! * an `a`-loop and a `b`-loop at the same handle cross once;
//! * runs of the same strand in the same column cross once when the run
//!   that turns off lower is the inner one (it has to pass over the strand
//!   that keeps climbing);
//! * back arcs live on stratified levels of the back face and only cross
//!   when they share a row, lane and depth and their spans interleave;
//! * front segments never meet back segments.
//!
//! Depth is the label itself: a larger depth is further inside, so for
//! `x < y` the curve `c(x)` passes outside `c(y)` on every shared column.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multicurve::{bracket, Family, Multicurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strand {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcLane {
    /// Joins consecutive used columns, left to right.
    Forward,
    /// Closes the curve from the last used column back to the first, on a
    /// level above the forward arcs.
    Return,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Segment {
    HoleLoop {
        family: Family,
        column: BigUint,
    },
    /// One strand of the pair of vertical lines along a column. The left
    /// strand is traversed downward and the right strand upward.
    VerticalRun {
        column: BigUint,
        from_row: BigUint,
        to_row: BigUint,
        depth: BigUint,
        strand: Strand,
    },
    /// `from_column < to_column`, except for the return arc of a curve that
    /// uses a single column.
    BackArc {
        row: BigUint,
        from_column: BigUint,
        to_column: BigUint,
        depth: BigUint,
        lane: ArcLane,
    },
}

/// Attachment points used to check that a path closes up.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Port<'a> {
    Bottom(&'a BigUint, Strand),
    Top(&'a BigUint, Strand),
}

impl Segment {
    fn ports(&self) -> (Port<'_>, Port<'_>) {
        use Strand::{Left, Right};
        match self {
            Segment::HoleLoop { column, .. } => {
                (Port::Bottom(column, Left), Port::Bottom(column, Right))
            }
            Segment::VerticalRun {
                column,
                strand: Left,
                ..
            } => (Port::Top(column, Left), Port::Bottom(column, Left)),
            Segment::VerticalRun {
                column,
                strand: Right,
                ..
            } => (Port::Bottom(column, Right), Port::Top(column, Right)),
            Segment::BackArc {
                from_column,
                to_column,
                lane: ArcLane::Forward,
                ..
            } => (Port::Top(from_column, Right), Port::Top(to_column, Left)),
            Segment::BackArc {
                from_column,
                to_column,
                lane: ArcLane::Return,
                ..
            } => (Port::Top(to_column, Right), Port::Top(from_column, Left)),
        }
    }

    /// The column of a front-face segment.
    fn front_column(&self) -> Option<&BigUint> {
        match self {
            Segment::HoleLoop { column, .. } | Segment::VerticalRun { column, .. } => Some(column),
            Segment::BackArc { .. } => None,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::HoleLoop { family, column } => {
                let name = if *family == Family::A { "a" } else { "b" };
                write!(f, "loop {name} column={column}")
            }
            Segment::VerticalRun {
                column,
                from_row,
                to_row,
                depth,
                strand,
            } => {
                let (strand, dir) = match strand {
                    Strand::Left => ("left", "down"),
                    Strand::Right => ("right", "up"),
                };
                write!(f, "run column={column} rows={from_row}..{to_row} depth={depth} strand={strand} {dir}")
            }
            Segment::BackArc {
                row,
                from_column,
                to_column,
                depth,
                lane,
            } => {
                let lane = match lane {
                    ArcLane::Forward => "forward",
                    ArcLane::Return => "return",
                };
                write!(
                    f,
                    "arc row={row} columns={from_column}..{to_column} depth={depth} lane={lane}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurvePath {
    label: BigUint,
    segments: Vec<Segment>,
    // Indices of front-face segments sorted by column.
    front: Vec<usize>,
}

impl CurvePath {
    pub fn label(&self) -> &BigUint {
        &self.label
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The depth carried by the runs and arcs of this path.
    pub fn depth(&self) -> &BigUint {
        self.segments
            .iter()
            .find_map(|s| match s {
                Segment::VerticalRun { depth, .. } | Segment::BackArc { depth, .. } => Some(depth),
                Segment::HoleLoop { .. } => None,
            })
            .expect("every path has runs")
    }

    /// The row where the back arcs run.
    pub fn top_row(&self) -> &BigUint {
        self.segments
            .iter()
            .find_map(|s| match s {
                Segment::BackArc { row, .. } => Some(row),
                _ => None,
            })
            .expect("every path has a return arc")
    }

    pub fn hole_loops(&self) -> impl Iterator<Item = (Family, &BigUint)> {
        self.segments.iter().filter_map(|s| match s {
            Segment::HoleLoop { family, column } => Some((*family, column)),
            _ => None,
        })
    }

    /// Each segment ends where the next one starts, cyclically.
    pub fn is_closed(&self) -> bool {
        let n = self.segments.len();
        n > 0 && (0..n).all(|i| self.segments[i].ports().1 == self.segments[(i + 1) % n].ports().0)
    }

    /// Crossings among the segments of this path, by the same rules used
    /// between paths.
    pub fn self_crossings(&self) -> u64 {
        let s = &self.segments;
        (0..s.len())
            .flat_map(|i| (i + 1..s.len()).map(move |j| (i, j)))
            .map(|(i, j)| segment_crossings(&s[i], &s[j]))
            .sum()
    }
}

/// Nesting depth of `c(x)`; larger means further inside.
pub fn depth(x: &BigUint) -> BigUint {
    x.clone()
}

/// Whether `c(x)` passes outside `c(y)` where they share a column.
pub fn passes_outside(x: &BigUint, y: &BigUint) -> bool {
    depth(x) < depth(y)
}

/// `c(x)`: the routed curve for `[x]`, joined at row `x + 1`.
pub fn layout(x: &BigUint) -> CurvePath {
    route(x, &bracket(x), depth(x)).expect("brackets never pair a_i with b_i")
}

/// Routes a multicurve with multiplicities 1 and no handle carrying both an
/// `a` and a `b` constituent, joining at row `label + 1` at the given depth.
pub fn route(label: &BigUint, multicurve: &Multicurve, depth: BigUint) -> Result<CurvePath> {
    let mut loops: Vec<(BigUint, Family)> = Vec::new();
    for (c, m) in multicurve.iter() {
        if m != 1 {
            return Err(Error::InvalidGraph(format!(
                "{c} has multiplicity {m}; a curve needs 1"
            )));
        }
        if loops.last().is_some_and(|(col, _)| *col == c.index) {
            return Err(Error::SameColumnPair(c.index.clone()));
        }
        loops.push((c.index.clone(), c.family));
    }
    let (Some(first), Some(last)) = (loops.first(), loops.last()) else {
        return Err(Error::InvalidGraph(
            "cannot route the empty multicurve".into(),
        ));
    };
    let (first, last) = (first.0.clone(), last.0.clone());
    let row = label + BigUint::one();

    let mut segments = Vec::with_capacity(loops.len() * 4);
    for (i, (column, family)) in loops.iter().enumerate() {
        let run = |strand| Segment::VerticalRun {
            column: column.clone(),
            from_row: BigUint::zero(),
            to_row: row.clone(),
            depth: depth.clone(),
            strand,
        };
        segments.push(run(Strand::Left));
        segments.push(Segment::HoleLoop {
            family: *family,
            column: column.clone(),
        });
        segments.push(run(Strand::Right));
        segments.push(match loops.get(i + 1) {
            Some((next, _)) => Segment::BackArc {
                row: row.clone(),
                from_column: column.clone(),
                to_column: next.clone(),
                depth: depth.clone(),
                lane: ArcLane::Forward,
            },
            None => Segment::BackArc {
                row: row.clone(),
                from_column: first.clone(),
                to_column: last.clone(),
                depth: depth.clone(),
                lane: ArcLane::Return,
            },
        });
    }
    let mut front: Vec<usize> = (0..segments.len())
        .filter(|&i| segments[i].front_column().is_some())
        .collect();
    front.sort_by(|&i, &j| segments[i].front_column().cmp(&segments[j].front_column()));
    Ok(CurvePath {
        label: label.clone(),
        segments,
        front,
    })
}

/// Transverse crossings between two segments under the local rules.
pub fn segment_crossings(s: &Segment, t: &Segment) -> u64 {
    use Segment::*;
    match (s, t) {
        (
            HoleLoop {
                family: f,
                column: c,
            },
            HoleLoop {
                family: g,
                column: d,
            },
        ) => u64::from(c == d && f != g),
        (
            VerticalRun {
                column: c,
                to_row: r,
                depth: dr,
                strand: sr,
                ..
            },
            VerticalRun {
                column: d,
                to_row: q,
                depth: dq,
                strand: sq,
                ..
            },
        ) => {
            if c != d || sr != sq {
                return 0;
            }
            let turns_inside = match r.cmp(q) {
                Ordering::Less => dr > dq,
                Ordering::Greater => dq > dr,
                Ordering::Equal => false,
            };
            u64::from(turns_inside)
        }
        (
            BackArc {
                row: r,
                from_column: a,
                to_column: b,
                depth: dr,
                lane: lr,
            },
            BackArc {
                row: q,
                from_column: c,
                to_column: d,
                depth: dq,
                lane: lq,
            },
        ) => {
            let interleave = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            u64::from(r == q && dr == dq && lr == lq && interleave)
        }
        _ => 0,
    }
}

/// Sum of [`segment_crossings`] over all segment pairs, without any
/// bucketing. Reference for [`crossings`].
pub fn crossings_naive(p: &CurvePath, q: &CurvePath) -> u64 {
    p.segments
        .iter()
        .flat_map(|s| q.segments.iter().map(move |t| segment_crossings(s, t)))
        .sum()
}

/// Crossings between two routed curves with distinct labels.
///
/// Front segments can only meet in a shared column and back arcs only in a
/// shared row, so the two paths are merged column by column and their arcs
/// compared only when the rows agree.
pub fn crossings(p: &CurvePath, q: &CurvePath) -> Result<u64> {
    fn column(path: &CurvePath, k: usize) -> &BigUint {
        path.segments[path.front[k]]
            .front_column()
            .expect("front segment")
    }
    if p.label == q.label {
        return Err(Error::EqualLabels(p.label.clone()));
    }
    let mut total = 0;
    let (mut i, mut j) = (0, 0);
    while i < p.front.len() && j < q.front.len() {
        match column(p, i).cmp(column(q, j)) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                let c = column(p, i);
                let i_end = (i..p.front.len())
                    .find(|&k| column(p, k) != c)
                    .unwrap_or(p.front.len());
                let j_end = (j..q.front.len())
                    .find(|&k| column(q, k) != c)
                    .unwrap_or(q.front.len());
                for &s in &p.front[i..i_end] {
                    for &t in &q.front[j..j_end] {
                        total += segment_crossings(&p.segments[s], &q.segments[t]);
                    }
                }
                i = i_end;
                j = j_end;
            }
        }
    }
    if p.top_row() == q.top_row() {
        fn arcs(path: &CurvePath) -> impl Iterator<Item = &Segment> {
            path.segments
                .iter()
                .filter(|s| matches!(s, Segment::BackArc { .. }))
        }
        for s in arcs(p) {
            for t in arcs(q) {
                total += segment_crossings(s, t);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::{algebraic_intersection, homology_class, multicurve_intersection};

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn loops(p: &CurvePath) -> Vec<(Family, u64)> {
        p.hole_loops()
            .map(|(f, c)| (f, u64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn layout_examples() {
        let c0 = layout(&n(0));
        assert_eq!(loops(&c0), vec![(Family::B, 0)]);
        assert_eq!(c0.top_row(), &n(1));
        assert!(c0.is_closed());
        assert!(c0.segments().contains(&Segment::BackArc {
            row: n(1),
            from_column: n(0),
            to_column: n(0),
            depth: n(0),
            lane: ArcLane::Return,
        }));

        let c2 = layout(&n(2));
        assert_eq!(loops(&c2), vec![(Family::A, 1), (Family::B, 2)]);
        assert_eq!(c2.top_row(), &n(3));

        let c5 = layout(&n(5));
        assert_eq!(
            loops(&c5),
            vec![(Family::A, 0), (Family::A, 2), (Family::B, 5)]
        );
        assert_eq!(c5.top_row(), &n(6));
        assert_eq!(c5.segments().len(), 12);
    }

    #[test]
    fn depth_order() {
        assert!(passes_outside(&n(2), &n(5)));
        assert!(!passes_outside(&n(5), &n(2)));
        assert!(!passes_outside(&n(3), &n(3)));
        for x in 0..4u64 {
            for y in 0..4u64 {
                assert_eq!(passes_outside(&n(x), &n(y)), x < y);
            }
        }
    }

    #[test]
    fn crossing_examples() {
        let c = |x| layout(&n(x));
        assert_eq!(crossings(&c(2), &c(5)).unwrap(), 1);
        assert_eq!(crossings(&c(0), &c(4)).unwrap(), 0);
        assert_eq!(crossings(&c(1), &c(2)).unwrap(), 1);
        assert_eq!(crossings(&c(3), &c(3)), Err(Error::EqualLabels(n(3))));
    }

    #[test]
    fn inverted_nesting_adds_two_crossings_per_shared_column() {
        // c(2) uses columns 1, 2 and c(5) uses 0, 2, 5. With c(2) pushed
        // inside, both of its strands in column 2 cross c(5)'s on the way out.
        let c2 = route(&n(2), &bracket(&n(2)), n(10)).unwrap();
        let c5 = layout(&n(5));
        assert_eq!(crossings(&c2, &c5).unwrap(), 3);
        assert_eq!(crossings_naive(&c2, &c5), 3);
    }

    #[test]
    fn same_column_pair_is_rejected() {
        let m: Multicurve = "a3 + b3".parse().unwrap();
        assert_eq!(route(&n(9), &m, n(9)), Err(Error::SameColumnPair(n(3))));
        let doubled: Multicurve = "2a1 + b4".parse().unwrap();
        assert!(route(&n(4), &doubled, n(4)).is_err());
    }

    #[test]
    fn layouts_are_coherent_closed_and_embedded() {
        for x in 0..=512u64 {
            let p = layout(&n(x));
            let support: Vec<(Family, u64)> = {
                let mut v: Vec<(Family, u64)> = bracket(&n(x))
                    .iter()
                    .map(|(c, _)| (c.family, u64::try_from(&c.index).unwrap()))
                    .collect();
                v.sort_by_key(|&(_, i)| i);
                v
            };
            assert_eq!(loops(&p), support, "c({x})");
            assert!(p.is_closed(), "c({x})");
            assert_eq!(p.self_crossings(), 0, "c({x})");
        }
    }

    #[test]
    fn crossings_match_pairing_and_certificate_up_to_512() {
        let paths: Vec<CurvePath> = (0..=512u64).map(|x| layout(&n(x))).collect();
        let brackets: Vec<Multicurve> = (0..=512u64).map(|x| bracket(&n(x))).collect();
        let classes: Vec<_> = brackets.iter().map(homology_class).collect();
        for y in 0..=512usize {
            for x in 0..y {
                let drawn = crossings(&paths[x], &paths[y]).unwrap();
                assert_eq!(drawn, crossings(&paths[y], &paths[x]).unwrap());
                assert_eq!(
                    drawn,
                    multicurve_intersection(&brackets[x], &brackets[y]),
                    "({x}, {y})"
                );
                assert_eq!(
                    u128::from(drawn),
                    algebraic_intersection(&classes[x], &classes[y]).unsigned_abs()
                );
            }
        }
    }

    #[test]
    fn bucketed_count_agrees_with_naive_count() {
        for y in 0..=64u64 {
            for x in 0..y {
                let (p, q) = (layout(&n(x)), layout(&n(y)));
                assert_eq!(crossings(&p, &q).unwrap(), crossings_naive(&p, &q));
            }
        }
    }
}
