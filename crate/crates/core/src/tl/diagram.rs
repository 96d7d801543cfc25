//! Planar matchings between `n` bottom and `m` top boundary points.
//!
//! Boundary labels run `1..=n` along the bottom from left to right and then `n+1..=n+m`
//! along the top from right to left, so that increasing labels trace the boundary
//! cyclically. With this labelling a matching is planar exactly when no two pairs
//! interleave.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::TlError;

/// A boundary point addressed by side and 0-based position from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

/// A Temperley–Lieb diagram `n -> m` (a non-crossing perfect matching).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct TLDiagram {
    n: usize,
    m: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    n: usize,
    m: usize,
    pairs: Vec<[usize; 2]>,
}

impl TryFrom<RawDiagram> for TLDiagram {
    type Error = TlError;
    fn try_from(raw: RawDiagram) -> Result<Self, TlError> {
        TLDiagram::new(raw.n, raw.m, raw.pairs.iter().map(|p| (p[0], p[1])))
    }
}

impl From<TLDiagram> for RawDiagram {
    fn from(d: TLDiagram) -> Self {
        RawDiagram {
            n: d.n,
            m: d.m,
            pairs: d.pairs.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TLDiagram {
    /// Validates and canonicalises a list of label pairs.
    pub fn new<I>(n: usize, m: usize, pairs: I) -> Result<Self, TlError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let total = n + m;
        if total % 2 == 1 {
            return Err(TlError::InvalidDiagram(format!("{n} + {m} boundary points is odd")));
        }
        let mut seen = vec![false; total + 1];
        let mut out = Vec::with_capacity(total / 2);
        for (a, b) in pairs {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if a == 0 || b > total || a == b {
                return Err(TlError::InvalidDiagram(format!("pair ({a}, {b}) out of range 1..={total}")));
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(TlError::InvalidDiagram(format!("point {p} used twice")));
                }
            }
            out.push((a, b));
        }
        if out.len() * 2 != total {
            return Err(TlError::InvalidDiagram("matching is not perfect".into()));
        }
        out.sort_unstable();
        for (i, &(a, b)) in out.iter().enumerate() {
            for &(c, d) in &out[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(TlError::InvalidDiagram(format!(
                        "pairs ({a}, {b}) and ({c}, {d}) cross"
                    )));
                }
            }
        }
        Ok(Self { n, m, pairs: out })
    }

    pub(crate) fn from_points(n: usize, m: usize, pairs: impl IntoIterator<Item = (Point, Point)>) -> Self {
        let labelled = pairs
            .into_iter()
            .map(|(p, q)| (label_of(n, m, p), label_of(n, m, q)));
        Self::new(n, m, labelled).expect("planar construction produced an invalid diagram")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_points(n, n, (0..n).map(|i| (Point::Bottom(i), Point::Top(i))))
    }

    /// Bottom object.
    pub fn source(&self) -> usize {
        self.n
    }

    /// Top object.
    pub fn target(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn point(&self, label: usize) -> Point {
        point_of(self.n, self.m, label)
    }

    pub fn point_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.pairs.iter().map(|&(a, b)| (self.point(a), self.point(b)))
    }

    fn partners(&self) -> (Vec<Point>, Vec<Point>) {
        let mut bottom = vec![Point::Bottom(0); self.n];
        let mut top = vec![Point::Top(0); self.m];
        for (p, q) in self.point_pairs() {
            for (x, y) in [(p, q), (q, p)] {
                match x {
                    Point::Bottom(i) => bottom[i] = y,
                    Point::Top(j) => top[j] = y,
                }
            }
        }
        (bottom, top)
    }

    /// Number of pairs joining a bottom point to a top point.
    pub fn through_strands(&self) -> usize {
        self.point_pairs()
            .filter(|(p, q)| matches!((p, q), (Point::Bottom(_), Point::Top(_)) | (Point::Top(_), Point::Bottom(_))))
            .count()
    }

    /// Top-to-bottom reflection, a diagram `m -> n`.
    pub fn star(&self) -> Self {
        let flip = |p: Point| match p {
            Point::Bottom(i) => Point::Top(i),
            Point::Top(j) => Point::Bottom(j),
        };
        Self::from_points(self.m, self.n, self.point_pairs().map(|(p, q)| (flip(p), flip(q))))
    }

    /// Side-by-side juxtaposition with `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = |p: Point| match p {
            Point::Bottom(i) => Point::Bottom(i + self.n),
            Point::Top(j) => Point::Top(j + self.m),
        };
        let pairs = self
            .point_pairs()
            .chain(other.point_pairs().map(|(p, q)| (shift(p), shift(q))));
        Self::from_points(self.n + other.n, self.m + other.m, pairs.collect::<Vec<_>>())
    }

    /// Stacks `self` (below) under `next` (above): `self` first, then `next`.
    /// Returns the resulting diagram and the number of closed loops removed.
    pub fn compose(&self, next: &Self) -> Result<(Self, usize), TlError> {
        if self.m != next.n {
            return Err(TlError::ObjectMismatch {
                target: self.m,
                next_source: next.n,
            });
        }
        let (f_bottom, f_top) = self.partners();
        let (g_bottom, g_top) = next.partners();
        let mid = self.m;
        let mut mid_seen = vec![false; mid];

        // Where a strand leaving the middle line at `j` ends, heading into layer `in_next`.
        let follow = |mut j: usize, mut in_next: bool, seen: &mut Vec<bool>| -> Point {
            loop {
                seen[j] = true;
                let q = if in_next { g_bottom[j] } else { f_top[j] };
                match (in_next, q) {
                    (true, Point::Top(k)) => return Point::Top(k),
                    (false, Point::Bottom(i)) => return Point::Bottom(i),
                    (true, Point::Bottom(j2)) => {
                        seen[j2] = true;
                        j = j2;
                        in_next = false;
                    }
                    (false, Point::Top(j2)) => {
                        seen[j2] = true;
                        j = j2;
                        in_next = true;
                    }
                }
            }
        };

        let mut pairs: Vec<(Point, Point)> = Vec::new();
        for i in 0..self.n {
            let end = match f_bottom[i] {
                Point::Bottom(i2) => Point::Bottom(i2),
                Point::Top(j) => follow(j, true, &mut mid_seen),
            };
            if Point::Bottom(i) < end {
                pairs.push((Point::Bottom(i), end));
            }
        }
        for k in 0..next.m {
            let end = match g_top[k] {
                Point::Top(k2) => Point::Top(k2),
                Point::Bottom(j) => follow(j, false, &mut mid_seen),
            };
            match end {
                Point::Top(k2) if k < k2 => pairs.push((Point::Top(k), end)),
                _ => {}
            }
        }
        let mut loops = 0;
        for start in 0..mid {
            if mid_seen[start] {
                continue;
            }
            loops += 1;
            let mut j = start;
            loop {
                mid_seen[j] = true;
                let Point::Top(j2) = f_top[j] else { unreachable!("open strand left untraced") };
                mid_seen[j2] = true;
                let Point::Bottom(j3) = g_bottom[j2] else { unreachable!("open strand left untraced") };
                if j3 == start {
                    break;
                }
                j = j3;
            }
        }
        Ok((Self::from_points(self.n, next.m, pairs), loops))
    }

    /// The standard generator `e_i` of `End(n)`, `1 <= i <= n-1`.
    pub fn generator(n: usize, i: usize) -> Result<Self, TlError> {
        if i == 0 || i >= n {
            return Err(TlError::IndexOutOfRange { n, i });
        }
        let (a, b) = (i - 1, i);
        let mut pairs = vec![
            (Point::Bottom(a), Point::Bottom(b)),
            (Point::Top(a), Point::Top(b)),
        ];
        pairs.extend((0..n).filter(|&k| k != a && k != b).map(|k| (Point::Bottom(k), Point::Top(k))));
        Ok(Self::from_points(n, n, pairs))
    }

    /// Splits `self = compose(S, star(T))` through the object `t = through_strands()`.
    pub fn factor_through(&self) -> (HalfDiagram, HalfDiagram) {
        let mut through: Vec<(usize, usize)> = Vec::new();
        let mut bottom_caps = Vec::new();
        let mut top_cups = Vec::new();
        for (p, q) in self.point_pairs() {
            match (p, q) {
                (Point::Bottom(i), Point::Top(j)) | (Point::Top(j), Point::Bottom(i)) => through.push((i, j)),
                (Point::Bottom(i), Point::Bottom(k)) => bottom_caps.push((Point::Bottom(i), Point::Bottom(k))),
                (Point::Top(j), Point::Top(k)) => top_cups.push((Point::Bottom(j), Point::Bottom(k))),
            }
        }
        through.sort_unstable();
        let t = through.len();
        let s = Self::from_points(
            self.n,
            t,
            bottom_caps
                .into_iter()
                .chain(through.iter().enumerate().map(|(k, &(i, _))| (Point::Bottom(i), Point::Top(k)))),
        );
        let tt = Self::from_points(
            self.m,
            t,
            top_cups
                .into_iter()
                .chain(through.iter().enumerate().map(|(k, &(_, j))| (Point::Bottom(j), Point::Top(k)))),
        );
        (HalfDiagram(s), HalfDiagram(tt))
    }
}

pub(crate) fn label_of(n: usize, m: usize, p: Point) -> usize {
    match p {
        Point::Bottom(i) => i + 1,
        Point::Top(j) => n + m - j,
    }
}

pub(crate) fn point_of(n: usize, _m: usize, label: usize) -> Point {
    if label <= n {
        Point::Bottom(label - 1)
    } else {
        Point::Top(n + _m - label)
    }
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL({}->{}:", self.n, self.m)?;
        for (a, b) in &self.pairs {
            write!(f, " {a}-{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All non-crossing perfect matchings `n -> m`, in a fixed deterministic order.
/// Empty when `n + m` is odd.
pub fn enumerate_diagrams(n: usize, m: usize) -> Vec<TLDiagram> {
    let total = n + m;
    if total % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(total / 2);
    let points: Vec<usize> = (1..=total).collect();
    matchings(&points, &mut acc, &mut |pairs| {
        out.push(TLDiagram::new(n, m, pairs.iter().copied()).expect("enumerated matching is planar"));
    });
    out
}

fn matchings(points: &[usize], acc: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[(usize, usize)])) {
    if points.is_empty() {
        emit(acc);
        return;
    }
    let first = points[0];
    for k in (1..points.len()).step_by(2) {
        acc.push((first, points[k]));
        let inside = &points[1..k];
        let outside = &points[k + 1..];
        let mut inner_results: Vec<Vec<(usize, usize)>> = Vec::new();
        matchings(inside, &mut Vec::new(), &mut |p| inner_results.push(p.to_vec()));
        for inner in inner_results {
            let mark = acc.len();
            acc.extend(inner);
            matchings(outside, acc, emit);
            acc.truncate(mark);
        }
        acc.pop();
    }
}

/// A diagram `n -> t` with exactly `t` through strands: the cell indices `K(n, t)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TLDiagram", into = "TLDiagram")]
pub struct HalfDiagram(TLDiagram);

impl HalfDiagram {
    pub fn new(d: TLDiagram) -> Result<Self, TlError> {
        if d.through_strands() != d.target() {
            return Err(TlError::NotHalfDiagram(d.to_string()));
        }
        Ok(Self(d))
    }

    pub fn diagram(&self) -> &TLDiagram {
        &self.0
    }

    pub fn source(&self) -> usize {
        self.0.source()
    }

    pub fn through(&self) -> usize {
        self.0.target()
    }
}

impl TryFrom<TLDiagram> for HalfDiagram {
    type Error = TlError;
    fn try_from(d: TLDiagram) -> Result<Self, TlError> {
        HalfDiagram::new(d)
    }
}

impl From<HalfDiagram> for TLDiagram {
    fn from(h: HalfDiagram) -> Self {
        h.0
    }
}

impl fmt::Debug for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Half{:?}", self.0)
    }
}

impl fmt::Display for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `K(n, t)`: every half-diagram `n -> t`; empty when `t > n` or the parities differ.
pub fn half_diagrams(n: usize, t: usize) -> Vec<HalfDiagram> {
    if t > n {
        return Vec::new();
    }
    enumerate_diagrams(n, t)
        .into_iter()
        .filter_map(|d| HalfDiagram::new(d).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(k: usize) -> usize {
        let mut c = vec![1usize];
        for j in 1..=k {
            c.push((0..j).map(|i| c[i] * c[j - 1 - i]).sum());
        }
        c[k]
    }

    #[test]
    fn small_enumerations() {
        let empty = enumerate_diagrams(0, 0);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].pairs().is_empty());
        let end2 = enumerate_diagrams(2, 2);
        assert_eq!(end2.len(), 2);
        assert!(end2.contains(&TLDiagram::identity(2)));
        assert!(end2.contains(&TLDiagram::generator(2, 1).unwrap()));
        assert!(enumerate_diagrams(3, 2).is_empty());
    }

    #[test]
    fn counts_are_catalan() {
        for n in 0..=12 {
            for m in 0..=12 - n {
                let count = enumerate_diagrams(n, m).len();
                let expected = if (n + m) % 2 == 0 { catalan((n + m) / 2) } else { 0 };
                assert_eq!(count, expected, "({n},{m})");
            }
        }
    }

    #[test]
    fn rejects_bad_diagrams() {
        assert!(TLDiagram::new(2, 2, [(1, 3), (2, 4)]).is_err());
        assert!(TLDiagram::new(2, 2, [(1, 2), (2, 3)]).is_err());
        assert!(TLDiagram::new(1, 2, [(1, 2)]).is_err());
        assert!(TLDiagram::new(2, 0, [(1, 2)]).is_ok());
    }

    #[test]
    fn loops_in_composition() {
        let e1 = TLDiagram::generator(2, 1).unwrap();
        let (d, loops) = e1.compose(&e1).unwrap();
        assert_eq!((d, loops), (e1.clone(), 1));
        let cup = TLDiagram::new(0, 2, [(1, 2)]).unwrap();
        let cap = cup.star();
        let (d, loops) = cup.compose(&cap).unwrap();
        assert_eq!(d, TLDiagram::identity(0));
        assert_eq!(loops, 1);
        assert!(matches!(e1.compose(&cup), Err(TlError::ObjectMismatch { .. })));
    }

    #[test]
    fn generator_shape() {
        let e = TLDiagram::generator(3, 2).unwrap();
        // bottom {2,3}, top positions 2,3 are labels 5,4, strand 1 through to label 6
        assert_eq!(e.pairs(), &[(1, 6), (2, 3), (4, 5)]);
        assert!(TLDiagram::generator(2, 2).is_err());
        assert_eq!(TLDiagram::generator(2, 1).unwrap().through_strands(), 0);
    }

    #[test]
    fn tensor_of_cups() {
        let cup = TLDiagram::new(0, 2, [(1, 2)]).unwrap();
        let both = cup.tensor(&cup);
        let expected = TLDiagram::from_points(
            0,
            4,
            [(Point::Top(0), Point::Top(1)), (Point::Top(2), Point::Top(3))],
        );
        assert_eq!(both, expected);
        assert_eq!(TLDiagram::identity(1).tensor(&TLDiagram::identity(1)), TLDiagram::identity(2));
    }

    #[test]
    fn factorisation_examples() {
        let (s, t) = TLDiagram::identity(2).factor_through();
        assert_eq!((s.diagram(), t.diagram()), (&TLDiagram::identity(2), &TLDiagram::identity(2)));
        let (s, t) = TLDiagram::generator(2, 1).unwrap().factor_through();
        let cap_half = TLDiagram::new(2, 0, [(1, 2)]).unwrap();
        assert_eq!((s.diagram(), t.diagram()), (&cap_half, &cap_half));
        let d = TLDiagram::from_points(
            4,
            2,
            [
                (Point::Bottom(1), Point::Bottom(2)),
                (Point::Bottom(0), Point::Top(0)),
                (Point::Bottom(3), Point::Top(1)),
            ],
        );
        let (s, t) = d.factor_through();
        assert_eq!(s.diagram(), &d);
        assert_eq!(t.diagram(), &TLDiagram::identity(2));
    }

    #[test]
    fn half_diagram_counts() {
        assert_eq!(half_diagrams(2, 0).len(), 1);
        assert_eq!(half_diagrams(4, 0).len(), 2);
        assert_eq!(half_diagrams(3, 1).len(), 2);
        assert_eq!(half_diagrams(4, 2).len(), 3);
        assert_eq!(half_diagrams(3, 3), vec![HalfDiagram::new(TLDiagram::identity(3)).unwrap()]);
        assert!(half_diagrams(3, 2).is_empty());
        assert!(half_diagrams(2, 4).is_empty());
    }

    #[test]
    fn factor_through_is_a_bijection() {
        for n in 0..=6 {
            for m in 0..=6 {
                let all = enumerate_diagrams(n, m);
                let mut count = 0;
                for t in 0..=n.min(m) {
                    count += half_diagrams(n, t).len() * half_diagrams(m, t).len();
                }
                assert_eq!(count, all.len(), "({n},{m})");
                for d in &all {
                    let (s, t) = d.factor_through();
                    let (back, loops) = s.diagram().compose(&t.diagram().star()).unwrap();
                    assert_eq!(loops, 0);
                    assert_eq!(&back, d);
                }
            }
        }
    }

    #[test]
    fn json_encoding() {
        let e1 = TLDiagram::generator(2, 1).unwrap();
        assert_eq!(serde_json::to_string(&e1).unwrap(), r#"{"n":2,"m":2,"pairs":[[1,2],[3,4]]}"#);
        let back: TLDiagram = serde_json::from_str(r#"{"n":2,"m":2,"pairs":[[3,4],[2,1]]}"#).unwrap();
        assert_eq!(back, e1);
        assert!(serde_json::from_str::<TLDiagram>(r#"{"n":2,"m":2,"pairs":[[1,3],[2,4]]}"#).is_err());
    }
}
