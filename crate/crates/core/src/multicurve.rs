//! Multicurves in the basis `a_i`, `b_i` of the one-ended infinite-genus
//! surface, and the map `x -> [x]`.
//!
//! `a_i` winds around the `i`th hole and `b_i` runs through the `i`th
//! handle, so `i(a_i, b_j)` is 1 when `i == j` and 0 otherwise; curves of
//! the same family are pairwise disjoint.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Peekable;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn dual(self) -> Self {
        match self {
            Family::A => Family::B,
            Family::B => Family::A,
        }
    }
}

/// `a_i` or `b_i`. Ordered by index first so that the two curves meeting at
/// one handle sit next to each other in a sorted map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseCurve {
    pub index: BigUint,
    pub family: Family,
}

impl BaseCurve {
    pub fn a(index: impl Into<BigUint>) -> Self {
        Self {
            index: index.into(),
            family: Family::A,
        }
    }

    pub fn b(index: impl Into<BigUint>) -> Self {
        Self {
            index: index.into(),
            family: Family::B,
        }
    }
}

impl fmt::Display for BaseCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "a{}", self.index),
            Family::B => write!(f, "b{}", self.index),
        }
    }
}

pub fn base_intersection(c: &BaseCurve, d: &BaseCurve) -> u64 {
    u64::from(c.index == d.index && c.family != d.family)
}

/// A finite multiset of base curves. Arbitrary multisets are allowed; use
/// [`Multicurve::is_disjoint_system`] where the constituents must be disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multicurve {
    entries: BTreeMap<BaseCurve, u32>,
}

impl Multicurve {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(curve: BaseCurve) -> Self {
        Self::new().with(curve, 1)
    }

    pub fn with(mut self, curve: BaseCurve, multiplicity: u32) -> Self {
        self.insert(curve, multiplicity);
        self
    }

    pub fn insert(&mut self, curve: BaseCurve, multiplicity: u32) {
        if multiplicity > 0 {
            *self.entries.entry(curve).or_insert(0) += multiplicity;
        }
    }

    pub fn multiplicity(&self, curve: &BaseCurve) -> u32 {
        self.entries.get(curve).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct constituents with their multiplicities, sorted by
    /// `(index, family)`.
    pub fn iter(&self) -> impl Iterator<Item = (&BaseCurve, u32)> {
        self.entries.iter().map(|(c, &m)| (c, m))
    }

    /// True when no two constituents intersect, i.e. the multiset is a vertex
    /// of the multicurve graph.
    pub fn is_disjoint_system(&self) -> bool {
        handles(self).all(|(_, a, b)| a == 0 || b == 0)
    }
}

impl Add for &Multicurve {
    type Output = Multicurve;

    fn add(self, rhs: &Multicurve) -> Multicurve {
        let mut out = self.clone();
        for (c, m) in rhs.iter() {
            out.insert(c.clone(), m);
        }
        out
    }
}

/// Groups a multicurve by handle: `(index, mult of a_index, mult of b_index)`.
fn handles(m: &Multicurve) -> Handles<'_, impl Iterator<Item = (&BaseCurve, u32)>> {
    Handles {
        inner: m.iter().peekable(),
    }
}

struct Handles<'a, I: Iterator<Item = (&'a BaseCurve, u32)>> {
    inner: Peekable<I>,
}

impl<'a, I: Iterator<Item = (&'a BaseCurve, u32)>> Iterator for Handles<'a, I> {
    type Item = (&'a BigUint, u64, u64);

    fn next(&mut self) -> Option<Self::Item> {
        let (first, m) = self.inner.next()?;
        let mut counts = [0u64; 2];
        counts[first.family as usize] = u64::from(m);
        if let Some((c, m)) = self.inner.next_if(|(c, _)| c.index == first.index) {
            counts[c.family as usize] = u64::from(m);
        }
        Some((&first.index, counts[0], counts[1]))
    }
}

/// `i(U, V)`: the sum of `i(c, d)` over all constituents `c` of `U` and `d`
/// of `V`, counted with multiplicity.
pub fn multicurve_intersection(u: &Multicurve, v: &Multicurve) -> u64 {
    let mut left = handles(u).peekable();
    let mut right = handles(v).peekable();
    let mut total = 0u64;
    while let (Some(l), Some(r)) = (left.peek(), right.peek()) {
        match l.0.cmp(r.0) {
            std::cmp::Ordering::Less => {
                left.next();
            }
            std::cmp::Ordering::Greater => {
                right.next();
            }
            std::cmp::Ordering::Equal => {
                total += l.1 * r.2 + l.2 * r.1;
                left.next();
                right.next();
            }
        }
    }
    total
}

/// `[x] = b_x + sum of a_i over the set bits i of x`. For `x = 0` the sum is
/// empty and `[0] = b_0`.
pub fn bracket(x: &BigUint) -> Multicurve {
    let mut m = Multicurve::single(BaseCurve::b(x.clone()));
    for i in 0..x.bits() {
        if x.bit(i) {
            m.insert(BaseCurve::a(i), 1);
        }
    }
    m
}

/// `i([x], [y])` for `x < y`, which equals bit `x` of `y`.
pub fn bracket_intersection_bit(x: &BigUint, y: &BigUint) -> Result<u64> {
    if x >= y {
        return Err(Error::NotIncreasing {
            x: x.clone(),
            y: y.clone(),
        });
    }
    Ok(multicurve_intersection(&bracket(x), &bracket(y)))
}

impl fmt::Display for Multicurve {
    /// Additive notation with the `b` terms first, e.g. `b5 + a0 + a2` or
    /// `3a0 + b0`. The empty multicurve prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let terms = [Family::B, Family::A]
            .into_iter()
            .flat_map(|family| self.iter().filter(move |(c, _)| c.family == family));
        for (i, (c, m)) in terms.enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m != 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Multicurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Multicurve::new();
        if s.trim() == "0" {
            return Ok(out);
        }
        for term in s.split('+') {
            let term = term.trim();
            let bad = || Error::MulticurveParse(term.to_string());
            let letter = term.find(['a', 'b']).ok_or_else(bad)?;
            let (mult, rest) = term.split_at(letter);
            let multiplicity: u32 = match mult {
                "" => 1,
                digits if digits.bytes().all(|b| b.is_ascii_digit()) => {
                    digits.parse().map_err(|_| bad())?
                }
                _ => return Err(bad()),
            };
            let digits = rest[1..].trim_start_matches('_');
            if multiplicity == 0 || digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(bad());
            }
            let index: BigUint = digits.parse().map_err(|_| bad())?;
            let family = if rest.starts_with('a') {
                Family::A
            } else {
                Family::B
            };
            out.insert(BaseCurve { index, family }, multiplicity);
        }
        Ok(out)
    }
}

/// Coefficients of a multicurve in the homology basis `{a_i, b_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HomologyVector {
    pub a: BTreeMap<BigUint, i64>,
    pub b: BTreeMap<BigUint, i64>,
}

impl HomologyVector {
    pub fn is_zero(&self) -> bool {
        self.a.values().chain(self.b.values()).all(Zero::is_zero)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let scale =
            |m: &BTreeMap<BigUint, i64>| m.iter().map(|(i, c)| (i.clone(), c * k)).collect();
        Self {
            a: scale(&self.a),
            b: scale(&self.b),
        }
    }
}

impl Add for &HomologyVector {
    type Output = HomologyVector;

    fn add(self, rhs: &HomologyVector) -> HomologyVector {
        let mut out = self.clone();
        for (i, c) in &rhs.a {
            *out.a.entry(i.clone()).or_insert(0) += c;
        }
        for (i, c) in &rhs.b {
            *out.b.entry(i.clone()).or_insert(0) += c;
        }
        out
    }
}

pub fn homology_class(u: &Multicurve) -> HomologyVector {
    let mut h = HomologyVector::default();
    for (c, m) in u.iter() {
        let slot = match c.family {
            Family::A => &mut h.a,
            Family::B => &mut h.b,
        };
        slot.insert(c.index.clone(), i64::from(m));
    }
    h
}

/// The symplectic pairing `sum_i (u.a[i] * v.b[i] - u.b[i] * v.a[i])`, with
/// `<a_i, b_i> = +1`. Its absolute value is a lower bound for the geometric
/// intersection number of any representatives.
pub fn algebraic_intersection(u: &HomologyVector, v: &HomologyVector) -> i128 {
    let pair = |x: &BTreeMap<BigUint, i64>, y: &BTreeMap<BigUint, i64>| -> i128 {
        x.iter()
            .filter_map(|(i, &c)| y.get(i).map(|&d| i128::from(c) * i128::from(d)))
            .sum()
    };
    pair(&u.a, &v.b) - pair(&u.b, &v.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn mc(s: &str) -> Multicurve {
        s.parse().unwrap()
    }

    #[test]
    fn base_pairing() {
        assert_eq!(
            base_intersection(&BaseCurve::a(3u32), &BaseCurve::b(3u32)),
            1
        );
        assert_eq!(
            base_intersection(&BaseCurve::b(3u32), &BaseCurve::a(3u32)),
            1
        );
        assert_eq!(
            base_intersection(&BaseCurve::a(3u32), &BaseCurve::b(4u32)),
            0
        );
        assert_eq!(
            base_intersection(&BaseCurve::a(3u32), &BaseCurve::a(7u32)),
            0
        );
        assert_eq!(
            base_intersection(&BaseCurve::a(3u32), &BaseCurve::a(3u32)),
            0
        );
        assert_eq!(
            base_intersection(&BaseCurve::b(2u32), &BaseCurve::b(2u32)),
            0
        );
    }

    /// Pairwise expansion over the underlying multisets.
    fn expanded_intersection(u: &Multicurve, v: &Multicurve) -> u64 {
        let flat = |m: &Multicurve| -> Vec<BaseCurve> {
            m.iter()
                .flat_map(|(c, k)| std::iter::repeat_n(c.clone(), k as usize))
                .collect()
        };
        let (fu, fv) = (flat(u), flat(v));
        fu.iter()
            .flat_map(|c| fv.iter().map(move |d| base_intersection(c, d)))
            .sum()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            multicurve_intersection(&mc("b2 + a1"), &mc("b5 + a0 + a2")),
            1
        );
        assert_eq!(
            multicurve_intersection(&mc("b2 + a1"), &Multicurve::new()),
            0
        );
        let u = mc("3a0 + b0");
        let v = mc("b0 + a0");
        assert_eq!(expanded_intersection(&u, &v), 4);
        assert_eq!(multicurve_intersection(&u, &v), 4);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&n(0)), Multicurve::single(BaseCurve::b(0u32)));
        assert_eq!(bracket(&n(4)), mc("b4 + a2"));
        assert_eq!(bracket(&n(5)), mc("b5 + a0 + a2"));
        assert_eq!(bracket(&n(4)).to_string(), "b4 + a2");
        assert_eq!(bracket(&n(5)).to_string(), "b5 + a0 + a2");
        assert!(bracket(&n(5)).is_disjoint_system());
        assert!(!mc("a3 + b3").is_disjoint_system());
    }

    #[test]
    fn bracket_bit_examples() {
        assert_eq!(bracket_intersection_bit(&n(2), &n(5)).unwrap(), 1);
        assert_eq!(bracket_intersection_bit(&n(0), &n(4)).unwrap(), 0);
        assert_eq!(bracket_intersection_bit(&n(1), &n(2)).unwrap(), 1);
        assert!(bracket_intersection_bit(&n(3), &n(3)).is_err());
        assert!(bracket_intersection_bit(&n(4), &n(3)).is_err());
    }

    #[test]
    fn bracket_bit_identity_and_complement_adjacency() {
        use crate::rado::{bit, rado_adjacent, Polarity};
        let brackets: Vec<Multicurve> = (0..=4096u64).map(|x| bracket(&n(x))).collect();
        for y in 0..=4096u64 {
            for x in 0..y {
                let i = multicurve_intersection(&brackets[x as usize], &brackets[y as usize]);
                assert_eq!(i, u64::from(bit(&n(x), &n(y))), "({x}, {y})");
                assert_eq!(
                    i == 0,
                    rado_adjacent(&n(x), &n(y), Polarity::Complement).unwrap()
                );
            }
        }
    }

    #[test]
    fn homology_examples() {
        let h = homology_class(&bracket(&n(4)));
        assert_eq!(h.a, BTreeMap::from([(n(2), 1)]));
        assert_eq!(h.b, BTreeMap::from([(n(4), 1)]));
        assert!(homology_class(&Multicurve::new()).is_zero());
        let h = homology_class(&mc("2a1"));
        assert_eq!(h.a, BTreeMap::from([(n(1), 2)]));
        assert!(h.b.is_empty());
    }

    #[test]
    fn pairing_examples() {
        let a2 = homology_class(&mc("a2"));
        let b2 = homology_class(&mc("b2"));
        assert_eq!(algebraic_intersection(&a2, &b2), 1);
        assert_eq!(algebraic_intersection(&b2, &a2), -1);
        // [2] = b2 + a1, [5] = b5 + a0 + a2: only b2 against a2 contributes,
        // -(1 * 1).
        let two = homology_class(&bracket(&n(2)));
        let five = homology_class(&bracket(&n(5)));
        assert_eq!(algebraic_intersection(&two, &five), -1);
        assert_eq!(algebraic_intersection(&two, &two), 0);
    }

    #[test]
    fn minimal_position_certificate_up_to_512() {
        for y in 0..=512u64 {
            let hy = homology_class(&bracket(&n(y)));
            for x in 0..y {
                let hx = homology_class(&bracket(&n(x)));
                assert_eq!(
                    algebraic_intersection(&hx, &hy).unsigned_abs(),
                    u128::from(multicurve_intersection(&bracket(&n(x)), &bracket(&n(y))))
                );
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "c1", "a", "0a1", "a1 +", "x3b2", "b-1", "2 a1"] {
            assert!(bad.parse::<Multicurve>().is_err(), "{bad:?}");
        }
        assert_eq!(mc("a_3 + b_3"), mc("b3 + a3"));
        assert_eq!(mc("a1 + a1"), mc("2a1"));
        assert!(mc("0").is_empty());
    }

    fn multicurve() -> impl Strategy<Value = Multicurve> {
        proptest::collection::vec((0u32..=32, any::<bool>(), 1u32..=4), 0..8).prop_map(|terms| {
            let mut m = Multicurve::new();
            for (i, is_a, k) in terms {
                m.insert(
                    if is_a {
                        BaseCurve::a(i)
                    } else {
                        BaseCurve::b(i)
                    },
                    k,
                );
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn bilinear_and_symmetric(u in multicurve(), v in multicurve(), w in multicurve()) {
            prop_assert_eq!(
                multicurve_intersection(&(&u + &w), &v),
                multicurve_intersection(&u, &v) + multicurve_intersection(&w, &v)
            );
            prop_assert_eq!(multicurve_intersection(&u, &v), multicurve_intersection(&v, &u));
            prop_assert_eq!(multicurve_intersection(&u, &v), expanded_intersection(&u, &v));
        }

        #[test]
        fn pairing_antisymmetric_and_bilinear(u in multicurve(), v in multicurve(), w in multicurve()) {
            let (hu, hv, hw) = (homology_class(&u), homology_class(&v), homology_class(&w));
            prop_assert_eq!(algebraic_intersection(&hu, &hv), -algebraic_intersection(&hv, &hu));
            prop_assert_eq!(algebraic_intersection(&hu, &hu), 0);
            prop_assert_eq!(
                algebraic_intersection(&(&hu + &hw.scaled(3)), &hv),
                algebraic_intersection(&hu, &hv) + 3 * algebraic_intersection(&hw, &hv)
            );
        }

        #[test]
        fn text_round_trip(u in multicurve()) {
            prop_assert_eq!(u.to_string().parse::<Multicurve>().unwrap(), u);
        }
    }
}
