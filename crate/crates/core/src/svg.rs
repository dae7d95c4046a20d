//! SVG drawings of routed curves on the grid surface.
//!
//! Each handle sits at the bottom of its column. An `a`-loop is drawn as a
//! square around the hole, opened at the top where its two strands leave;
//! nested curves get smaller squares and closer strands. A `b`-loop shows
//! its front part as a short radial segment below the hole. Strands climb
//! the front of the column and, at the curve's row, step outward before
//! diving to the back face, where the arcs are drawn dashed.
//!
//! Crossings are found from the drawn front-face geometry alone (exact
//! integer segment tests) and marked with small circles, which gives an
//! independent count to hold against [`crate::layout::crossings`].
//!
//! Layout constants, in SVG user units: hole half-size 8, nesting gap 6,
//! stroke width 1.5 (front) and 1 (back, dashed `4 3`), crossing marks of
//! radius 3. Curves cycle through a fixed eight-colour palette by label.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::layout::{ArcLane, CurvePath, Segment, Strand};
use crate::multicurve::Family;

const HOLE: i64 = 8;
const GAP: i64 = 6;
const MARGIN: i64 = 40;
/// Largest column or row index accepted for drawing.
pub const MAX_INDEX: u64 = 4096;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub show_surface: bool,
    pub mark_crossings: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            show_surface: true,
            mark_crossings: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingMark {
    pub labels: (BigUint, BigUint),
    /// Position in drawing coordinates (y up, before the SVG flip).
    pub at: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rendering {
    pub svg: String,
    pub marks: Vec<CrossingMark>,
}

type Point = (i64, i64);

/// Drawn pieces of one curve: front polylines (solid, tested for crossings)
/// and back polylines (dashed).
struct Drawn {
    label: BigUint,
    top: i64,
    front: Vec<Vec<Point>>,
    back: Vec<Vec<Point>>,
}

/// Geometry shared by all curves in one drawing.
struct Frame {
    levels: usize,
    pitch: i64,
}

impl Frame {
    fn new(levels: usize) -> Self {
        let frame = Self { levels, pitch: 0 };
        let reach = frame.radius(0).max(frame.strand(0) + frame.stub());
        Self {
            pitch: 2 * (reach + GAP) + 2 * GAP,
            ..frame
        }
    }

    /// Half-size of the `a`-square at nesting rank `k` (0 is outermost).
    fn radius(&self, k: usize) -> i64 {
        HOLE + GAP * (self.levels - k) as i64
    }

    /// Half-distance between the two strands at rank `k`.
    fn strand(&self, k: usize) -> i64 {
        HOLE / 2 + GAP / 2 * (self.levels - k) as i64
    }

    /// Width of the tube around a column or row.
    fn tube(&self) -> i64 {
        self.radius(0) + GAP
    }

    /// Length of the outward step before a strand goes to the back. Longer
    /// than the spread of the strands, and off their spacing grid.
    fn stub(&self) -> i64 {
        GAP / 2 * self.levels as i64 + GAP + 1
    }

    fn x(&self, column: i64) -> i64 {
        column * self.pitch
    }

    fn y(&self, row: i64) -> i64 {
        row * self.pitch
    }
}

fn small(v: &BigUint) -> Result<i64> {
    u64::try_from(v)
        .ok()
        .filter(|&x| x <= MAX_INDEX)
        .map(|x| x as i64)
        .ok_or_else(|| Error::Render(format!("index {v} exceeds {MAX_INDEX}")))
}

fn draw(path: &CurvePath, rank: usize, frame: &Frame) -> Result<Drawn> {
    let rho = frame.radius(rank);
    let w = frame.strand(rank);
    let stub = frame.stub();
    let top = frame.y(small(path.top_row())?);
    let lift = frame.pitch / 3;
    let mut front = Vec::new();
    let mut back = Vec::new();
    for seg in path.segments() {
        match seg {
            Segment::HoleLoop {
                family: Family::A,
                column,
            } => {
                let x = frame.x(small(column)?);
                front.push(vec![
                    (x - w, rho),
                    (x - rho, rho),
                    (x - rho, -rho),
                    (x + rho, -rho),
                    (x + rho, rho),
                    (x + w, rho),
                ]);
            }
            Segment::HoleLoop {
                family: Family::B,
                column,
            } => {
                let x = frame.x(small(column)?);
                let out = frame.tube();
                front.push(vec![(x, -HOLE), (x, -out)]);
                back.push(vec![(x - w, rho), (x, -HOLE)]);
                back.push(vec![
                    (x, -out),
                    (x + out, -out),
                    (x + out, rho),
                    (x + w, rho),
                ]);
            }
            Segment::VerticalRun { column, strand, .. } => {
                let x = frame.x(small(column)?);
                let (sx, step) = match strand {
                    Strand::Left => (x - w, -stub),
                    Strand::Right => (x + w, stub),
                };
                front.push(vec![(sx, rho), (sx, top), (sx + step, top)]);
            }
            Segment::BackArc {
                from_column,
                to_column,
                lane,
                ..
            } => {
                let right_end = |c: &BigUint| -> Result<i64> { Ok(frame.x(small(c)?) + w + stub) };
                let left_end = |c: &BigUint| -> Result<i64> { Ok(frame.x(small(c)?) - w - stub) };
                match lane {
                    ArcLane::Forward => back.push(vec![
                        (right_end(from_column)?, top),
                        (left_end(to_column)?, top),
                    ]),
                    ArcLane::Return => {
                        // From the last column's right strand back to the
                        // first column's left strand, one level up.
                        let (from, to) = (right_end(to_column)?, left_end(from_column)?);
                        back.push(vec![
                            (from, top),
                            (from, top + lift),
                            (to, top + lift),
                            (to, top),
                        ])
                    }
                }
            }
        }
    }
    Ok(Drawn {
        label: path.label().clone(),
        top,
        front,
        back,
    })
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (i128::from(a.0), i128::from(a.1));
    (i128::from(b.0) - ax) * (i128::from(c.1) - ay)
        - (i128::from(b.1) - ay) * (i128::from(c.0) - ax)
}

/// The crossing point of two segments when they cross transversally at a
/// point interior to both.
fn proper_crossing(p: Point, q: Point, r: Point, s: Point) -> Option<(f64, f64)> {
    let (d1, d2) = (orient(p, q, r), orient(p, q, s));
    let (d3, d4) = (orient(r, s, p), orient(r, s, q));
    if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 || (d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0) {
        return None;
    }
    let t = d3 as f64 / (d3 - d4) as f64;
    Some((
        p.0 as f64 + t * (q.0 - p.0) as f64,
        p.1 as f64 + t * (q.1 - p.1) as f64,
    ))
}

fn edges(lines: &[Vec<Point>]) -> impl Iterator<Item = (Point, Point)> + '_ {
    lines
        .iter()
        .flat_map(|l| l.windows(2).map(|w| (w[0], w[1])))
}

fn find_crossings(drawn: &[Drawn]) -> Vec<CrossingMark> {
    let mut marks = Vec::new();
    for (i, a) in drawn.iter().enumerate() {
        for b in &drawn[i + 1..] {
            for (p, q) in edges(&a.front) {
                for (r, s) in edges(&b.front) {
                    if let Some(at) = proper_crossing(p, q, r, s) {
                        marks.push(CrossingMark {
                            labels: (a.label.clone(), b.label.clone()),
                            at,
                        });
                    }
                }
            }
        }
    }
    marks
}

/// Draws the curves over the grid surface. Curves are drawn in label
/// order; nesting ranks follow their depths.
pub fn render_svg(paths: &[CurvePath], options: RenderOptions) -> Result<Rendering> {
    if paths.is_empty() {
        return Err(Error::Render("nothing to draw".into()));
    }
    let mut sorted: Vec<&CurvePath> = paths.iter().collect();
    sorted.sort_by(|p, q| p.label().cmp(q.label()));
    if sorted.windows(2).any(|w| w[0].label() == w[1].label()) {
        return Err(Error::Render("duplicate curve labels".into()));
    }
    let depths: Vec<&BigUint> = sorted
        .iter()
        .map(|p| p.depth())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let frame = Frame::new(depths.len());
    let drawn = sorted
        .iter()
        .map(|p| {
            let rank = depths.binary_search(&p.depth()).expect("depth is listed");
            draw(p, rank, &frame)
        })
        .collect::<Result<Vec<_>>>()?;
    let marks = find_crossings(&drawn);

    let mut max_column = 0;
    for p in &sorted {
        for (_, c) in p.hole_loops() {
            max_column = max_column.max(small(c)?);
        }
    }
    let max_row = drawn.iter().map(|d| d.top).max().unwrap_or(0) / frame.pitch;
    let tube = frame.tube();
    let left = -tube - frame.pitch / 2 - MARGIN;
    let right = frame.x(max_column) + tube + frame.pitch / 2 + MARGIN;
    let bottom = -tube - MARGIN;
    let top = frame.y(max_row) + frame.pitch / 2 + MARGIN;
    let (width, height) = (right - left, top - bottom);
    let sx = |x: i64| x - left;
    let sy = |y: i64| top - y;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    if options.show_surface {
        let _ = writeln!(
            out,
            r##"<g id="surface" fill="#eeeeee" stroke="#bbbbbb" stroke-width="1">"##
        );
        for c in 0..=max_column {
            let x = frame.x(c);
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                sx(x - tube),
                sy(frame.y(max_row) + tube),
                2 * tube,
                frame.y(max_row) + 2 * tube
            );
        }
        for r in 1..=max_row {
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                sx(-tube),
                sy(frame.y(r) + tube),
                frame.x(max_column) + 2 * tube,
                2 * tube
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r##"<g id="holes" fill="white" stroke="#888888" stroke-width="1">"##
        );
        for c in 0..=max_column {
            let x = frame.x(c);
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                sx(x - HOLE),
                sy(HOLE),
                2 * HOLE,
                2 * HOLE
            );
        }
        let _ = writeln!(out, "</g>");
    }
    for d in &drawn {
        let colour = PALETTE[(&d.label % PALETTE.len() as u64)
            .try_into()
            .unwrap_or(0usize)];
        let _ = writeln!(
            out,
            r#"<g id="c{}" stroke="{colour}" fill="none">"#,
            d.label
        );
        for line in &d.back {
            let _ = writeln!(
                out,
                r#"<polyline points="{}" stroke-width="1" stroke-dasharray="4 3" opacity="0.6"/>"#,
                points(line, &sx, &sy)
            );
        }
        for line in &d.front {
            let _ = writeln!(
                out,
                r#"<polyline points="{}" stroke-width="1.5"/>"#,
                points(line, &sx, &sy)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{colour}" stroke="none">c({})</text>"#,
            sx(-tube - frame.pitch / 2 + 4),
            sy(d.top) + 4,
            d.label
        );
        let _ = writeln!(out, "</g>");
    }
    if options.mark_crossings {
        let _ = writeln!(
            out,
            r#"<g id="crossings" fill="none" stroke="black" stroke-width="1">"#
        );
        for m in &marks {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3"/>"#,
                m.at.0 - left as f64,
                top as f64 - m.at.1
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(Rendering { svg: out, marks })
}

fn points(line: &[Point], sx: &impl Fn(i64) -> i64, sy: &impl Fn(i64) -> i64) -> String {
    line.iter()
        .map(|&(x, y)| format!("{},{}", sx(x), sy(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{crossings, layout, route};
    use crate::multicurve::bracket;

    fn c(x: u64) -> CurvePath {
        layout(&BigUint::from(x))
    }

    #[test]
    fn two_and_five_cross_once() {
        let r = render_svg(&[c(2), c(5)], RenderOptions::default()).unwrap();
        assert_eq!(r.marks.len(), 1);
        // At column 2, below the hole where c(2)'s b-loop meets c(5)'s a-loop.
        let frame = Frame::new(2);
        assert_eq!(r.marks[0].at.0, frame.x(2) as f64);
        assert!(r.marks[0].at.1 < 0.0);
        assert_eq!(r.svg.matches("<circle").count(), 1);
        assert!(r.svg.starts_with("<?xml"));
        assert!(r.svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn single_curve_has_no_crossings() {
        let r = render_svg(&[c(0)], RenderOptions::default()).unwrap();
        assert!(r.marks.is_empty());
        assert!(r.svg.contains(r#"id="c0""#));
    }

    #[test]
    fn drawn_crossings_match_the_engine() {
        for y in 1..=40u64 {
            for x in 0..y {
                let (p, q) = (c(x), c(y));
                let r = render_svg(&[p.clone(), q.clone()], RenderOptions::default()).unwrap();
                assert_eq!(
                    r.marks.len() as u64,
                    crossings(&p, &q).unwrap(),
                    "({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn drawn_crossings_match_with_inverted_nesting() {
        let five = BigUint::from(5u32);
        let c5_inside = route(&five, &bracket(&five), BigUint::from(50u32)).unwrap();
        for x in [2u64, 3, 4, 6, 7, 13] {
            let other = c(x);
            let r = render_svg(
                &[other.clone(), c5_inside.clone()],
                RenderOptions::default(),
            )
            .unwrap();
            assert_eq!(
                r.marks.len() as u64,
                crossings(&other, &c5_inside).unwrap(),
                "x = {x}"
            );
        }
    }

    #[test]
    fn many_curves_at_once() {
        let paths: Vec<CurvePath> = (0..=16).map(c).collect();
        let r = render_svg(&paths, RenderOptions::default()).unwrap();
        let mut expected = 0;
        for y in 0..paths.len() {
            for x in 0..y {
                expected += crossings(&paths[x], &paths[y]).unwrap();
            }
        }
        assert_eq!(r.marks.len() as u64, expected);
    }

    #[test]
    fn output_is_deterministic_and_order_free() {
        let a = render_svg(&[c(2), c(5), c(9)], RenderOptions::default()).unwrap();
        let b = render_svg(&[c(9), c(2), c(5)], RenderOptions::default()).unwrap();
        assert_eq!(a.svg, b.svg);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(render_svg(&[], RenderOptions::default()).is_err());
        assert!(render_svg(&[c(3), c(3)], RenderOptions::default()).is_err());
        assert!(render_svg(&[c(5000)], RenderOptions::default()).is_err());
    }
}
