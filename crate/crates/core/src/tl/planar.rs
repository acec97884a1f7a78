use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::TlError;

/// A boundary point of a planar diagram, 0-based from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

/// A non-crossing perfect matching on `bottom` points below and `top`
/// points above.
///
/// Boundary points are numbered around the rectangle: the bottom row left
/// to right, then the top row right to left. `partner[i]` is the point
/// matched with boundary index `i`, so equal pairings are equal values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PlanarDiagram {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

impl PlanarDiagram {
    fn index(&self, p: Point) -> usize {
        match p {
            Point::Bottom(i) => i,
            Point::Top(j) => self.bottom + self.top - 1 - j,
        }
    }

    fn point(&self, idx: usize) -> Point {
        if idx < self.bottom {
            Point::Bottom(idx)
        } else {
            Point::Top(self.bottom + self.top - 1 - idx)
        }
    }

    /// Builds a diagram from its list of matched pairs.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(Point, Point)]) -> Result<Self, TlError> {
        let size = bottom + top;
        let mut d = PlanarDiagram {
            bottom,
            top,
            partner: vec![usize::MAX; size],
        };
        for &(p, q) in pairs {
            for x in [p, q] {
                let ok = match x {
                    Point::Bottom(i) => i < bottom,
                    Point::Top(j) => j < top,
                };
                if !ok {
                    return Err(TlError::NotPlanar(format!(
                        "{x:?} is outside a {bottom} -> {top} diagram"
                    )));
                }
            }
            let (a, b) = (d.index(p), d.index(q));
            if a == b || d.partner[a] != usize::MAX || d.partner[b] != usize::MAX {
                return Err(TlError::NotPlanar(format!("point used twice in pair {p:?}-{q:?}")));
            }
            d.partner[a] = b;
            d.partner[b] = a;
        }
        if let Some(i) = d.partner.iter().position(|&p| p == usize::MAX) {
            return Err(TlError::NotPlanar(format!("{:?} is unmatched", d.point(i))));
        }
        if !d.is_non_crossing() {
            return Err(TlError::NotPlanar(d.to_string()));
        }
        Ok(d)
    }

    fn from_partner(bottom: usize, top: usize, partner: Vec<usize>) -> Self {
        PlanarDiagram { bottom, top, partner }
    }

    pub fn identity(k: usize) -> Self {
        let pairs: Vec<_> = (0..k).map(|i| (Point::Bottom(i), Point::Top(i))).collect();
        PlanarDiagram::from_pairs(k, k, &pairs).expect("identity is planar")
    }

    /// The cap `2 -> 0`.
    pub fn cap() -> Self {
        PlanarDiagram::from_pairs(2, 0, &[(Point::Bottom(0), Point::Bottom(1))]).expect("planar")
    }

    /// The cup `0 -> 2`.
    pub fn cup() -> Self {
        PlanarDiagram::from_pairs(0, 2, &[(Point::Top(0), Point::Top(1))]).expect("planar")
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn partner(&self, p: Point) -> Point {
        self.point(self.partner[self.index(p)])
    }

    /// Each pair once, listed from its first point in the order bottom
    /// left to right, then top left to right.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        let points = (0..self.bottom).map(Point::Bottom).chain((0..self.top).map(Point::Top));
        let mut seen = vec![false; self.partner.len()];
        let mut out = Vec::with_capacity(self.partner.len() / 2);
        for p in points {
            let i = self.index(p);
            if seen[i] {
                continue;
            }
            seen[i] = true;
            seen[self.partner[i]] = true;
            out.push((p, self.partner(p)));
        }
        out
    }

    /// Balanced-parenthesis scan around the boundary.
    pub fn is_non_crossing(&self) -> bool {
        let mut stack = Vec::new();
        for (i, &p) in self.partner.iter().enumerate() {
            if p > i {
                stack.push(i);
            } else if stack.pop() != Some(p) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Cups: pairs of top points, as `(left, right)`.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pq| match pq {
                (Point::Top(a), Point::Top(b)) => Some((a.min(b), a.max(b))),
                _ => None,
            })
            .collect()
    }

    /// Caps: pairs of bottom points, as `(left, right)`.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pq| match pq {
                (Point::Bottom(a), Point::Bottom(b)) => Some((a.min(b), a.max(b))),
                _ => None,
            })
            .collect()
    }

    /// Number of strands joining the bottom to the top.
    pub fn through_strands(&self) -> usize {
        self.bottom - 2 * self.caps().len()
    }

    /// Reflection in a horizontal line: a diagram `top -> bottom`.
    pub fn mirror(&self) -> Self {
        let flip = |p: Point| match p {
            Point::Bottom(i) => Point::Top(i),
            Point::Top(j) => Point::Bottom(j),
        };
        let pairs: Vec<_> = self.pairs().into_iter().map(|(p, q)| (flip(p), flip(q))).collect();
        PlanarDiagram::from_pairs(self.top, self.bottom, &pairs).expect("mirror of a planar diagram")
    }

    /// Side by side, `self` on the left.
    pub fn tensor(&self, other: &PlanarDiagram) -> Self {
        let shift = |p: Point| match p {
            Point::Bottom(i) => Point::Bottom(i + self.bottom),
            Point::Top(j) => Point::Top(j + self.top),
        };
        let mut pairs = self.pairs();
        pairs.extend(other.pairs().into_iter().map(|(p, q)| (shift(p), shift(q))));
        PlanarDiagram::from_pairs(self.bottom + other.bottom, self.top + other.top, &pairs)
            .expect("juxtaposition is planar")
    }

    /// Stacks `self` on top of `below` and returns the resulting diagram
    /// with the number of closed loops removed from the middle.
    pub fn stack_on(&self, below: &PlanarDiagram) -> Result<(PlanarDiagram, usize), TlError> {
        if self.bottom != below.top {
            return Err(TlError::BoundaryMismatch {
                above: self.bottom,
                below: below.top,
            });
        }
        let mid = self.bottom;
        let mut visited = vec![false; mid];
        let mut pairs = Vec::with_capacity((below.bottom + self.top) / 2);
        let mut done_outer = vec![false; below.bottom + self.top];
        let outer_index = |p: Point| match p {
            Point::Bottom(i) => i,
            Point::Top(j) => below.bottom + j,
        };
        let outer = (0..below.bottom)
            .map(Point::Bottom)
            .chain((0..self.top).map(Point::Top));
        for start in outer {
            if done_outer[outer_index(start)] {
                continue;
            }
            // `in_above` says which diagram the current point lives in.
            let (mut in_above, mut cur) = match start {
                Point::Bottom(_) => (false, start),
                Point::Top(_) => (true, start),
            };
            let end = loop {
                let q = if in_above {
                    self.partner(cur)
                } else {
                    below.partner(cur)
                };
                match (in_above, q) {
                    (false, Point::Top(t)) => {
                        visited[t] = true;
                        in_above = true;
                        cur = Point::Bottom(t);
                    }
                    (true, Point::Bottom(b)) => {
                        visited[b] = true;
                        in_above = false;
                        cur = Point::Top(b);
                    }
                    (_, q) => break q,
                }
            };
            done_outer[outer_index(start)] = true;
            done_outer[outer_index(end)] = true;
            pairs.push((start, end));
        }
        let mut loops = 0;
        for m in 0..mid {
            if visited[m] {
                continue;
            }
            loops += 1;
            let mut cur = m;
            let mut use_below = true;
            loop {
                visited[cur] = true;
                let next = if use_below {
                    below.partner(Point::Top(cur))
                } else {
                    self.partner(Point::Bottom(cur))
                };
                let (Point::Top(n) | Point::Bottom(n)) = next;
                use_below = !use_below;
                if n == m {
                    break;
                }
                cur = n;
            }
        }
        let d = PlanarDiagram::from_pairs(below.bottom, self.top, &pairs)?;
        Ok((d, loops))
    }
}

impl fmt::Display for PlanarDiagram {
    /// `(i)` for a vertical strand at position `i`, otherwise `(bI,tJ)`,
    /// `(bI,bJ)` or `(tI,tJ)`; positions are 1-based. The empty diagram
    /// prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return write!(f, "()");
        }
        let name = |p: Point| match p {
            Point::Bottom(i) => format!("b{}", i + 1),
            Point::Top(j) => format!("t{}", j + 1),
        };
        for (p, q) in pairs {
            match (p, q) {
                (Point::Bottom(i), Point::Top(j)) if i == j => write!(f, "({})", i + 1)?,
                _ => write!(f, "({},{})", name(p), name(q))?,
            }
        }
        Ok(())
    }
}

impl FromStr for PlanarDiagram {
    type Err = TlError;

    /// Parses the display format; the numbers of bottom and top points are
    /// the largest indices mentioned.
    fn from_str(s: &str) -> Result<Self, TlError> {
        let err = |reason: &str| TlError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "()" {
            return PlanarDiagram::from_pairs(0, 0, &[]);
        }
        let point = |tok: &str| -> Result<Point, TlError> {
            let (kind, num) = tok.split_at(
                tok.find(|c: char| c.is_ascii_digit())
                    .ok_or_else(|| err("missing index"))?,
            );
            let n: usize = num.parse().map_err(|_| err(&format!("bad index in {tok:?}")))?;
            if n == 0 {
                return Err(err("indices are 1-based"));
            }
            match kind {
                "b" => Ok(Point::Bottom(n - 1)),
                "t" => Ok(Point::Top(n - 1)),
                _ => Err(err(&format!("expected b or t before the index in {tok:?}"))),
            }
        };
        let mut pairs = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| err("unclosed parenthesis"))?;
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let body = &body[..body_end - 1];
            rest = &rest[body_end + 1..];
            match body.split_once(',') {
                None => {
                    let n: usize = body.parse().map_err(|_| err(&format!("bad strand {body:?}")))?;
                    if n == 0 {
                        return Err(err("indices are 1-based"));
                    }
                    pairs.push((Point::Bottom(n - 1), Point::Top(n - 1)));
                }
                Some((a, b)) => pairs.push((point(a)?, point(b)?)),
            }
        }
        let extent = |want_top: bool| {
            pairs
                .iter()
                .flat_map(|&(p, q)| [p, q])
                .filter_map(|p| match (p, want_top) {
                    (Point::Bottom(i), false) => Some(i + 1),
                    (Point::Top(j), true) => Some(j + 1),
                    _ => None,
                })
                .max()
                .unwrap_or(0)
        };
        PlanarDiagram::from_pairs(extent(false), extent(true), &pairs)
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn matchings(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>, acc: &mut Vec<(usize, usize)>) {
    let Some((&first, rest)) = points.split_first() else {
        out.push(acc.clone());
        return;
    };
    // The partner of the first point must enclose an even block.
    for idx in (0..rest.len()).step_by(2) {
        acc.push((first, rest[idx]));
        let inside = &rest[..idx];
        let outside = &rest[idx + 1..];
        let mut inner = Vec::new();
        matchings(inside, &mut inner, &mut Vec::new());
        for m in inner {
            let len = acc.len();
            acc.extend(m);
            matchings(outside, out, acc);
            acc.truncate(len);
        }
        acc.pop();
    }
}

/// All non-crossing perfect matchings on `k` bottom and `l` top points.
pub fn tl_basis(k: usize, l: usize) -> Vec<PlanarDiagram> {
    if (k + l) % 2 == 1 {
        return Vec::new();
    }
    let points: Vec<usize> = (0..k + l).collect();
    let mut all = Vec::new();
    matchings(&points, &mut all, &mut Vec::new());
    all.into_iter()
        .map(|m| {
            let mut partner = vec![0; k + l];
            for (a, b) in m {
                partner[a] = b;
                partner[b] = a;
            }
            PlanarDiagram::from_partner(k, l, partner)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Every perfect matching, then filtered by a direct pairwise crossing
    /// test.
    fn brute_force(n: usize) -> BTreeSet<Vec<usize>> {
        fn all(free: &mut Vec<usize>, partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(a) = free.pop() else {
                out.push(partner.clone());
                return;
            };
            for i in 0..free.len() {
                let b = free.remove(i);
                partner[a] = b;
                partner[b] = a;
                all(free, partner, out);
                free.insert(i, b);
            }
            free.push(a);
        }
        let mut out = Vec::new();
        all(&mut (0..n).collect(), &mut vec![0; n], &mut out);
        out.into_iter()
            .filter(|p| {
                (0..n).all(|a| {
                    (0..n).all(|c| {
                        let (b, d) = (p[a], p[c]);
                        !(a < c && c < b && b < d)
                    })
                })
            })
            .collect()
    }

    #[test]
    fn basis_sizes_are_catalan() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429];
        for (k, &c) in expected.iter().enumerate() {
            assert_eq!(tl_basis(k, k).len() as u64, c);
            assert_eq!(catalan(k), c);
        }
        assert!(tl_basis(2, 1).is_empty());
        assert_eq!(tl_basis(0, 0).len(), 1);
        assert_eq!(tl_basis(1, 3).len(), 2);
    }

    #[test]
    fn basis_matches_brute_force() {
        for (k, l) in [(2, 2), (3, 3), (4, 2), (4, 4), (1, 5)] {
            let fast: BTreeSet<Vec<usize>> = tl_basis(k, l).into_iter().map(|d| d.partner).collect();
            assert_eq!(fast, brute_force(k + l), "({k}, {l})");
        }
    }

    #[test]
    fn basis_elements_are_distinct_and_planar() {
        let b = tl_basis(5, 5);
        let set: BTreeSet<_> = b.iter().collect();
        assert_eq!(set.len(), b.len());
        assert!(b.iter().all(PlanarDiagram::is_non_crossing));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(PlanarDiagram::identity(3).to_string(), "(1)(2)(3)");
        assert_eq!(PlanarDiagram::cap().to_string(), "(b1,b2)");
        assert_eq!(PlanarDiagram::cup().to_string(), "(t1,t2)");
        assert_eq!(PlanarDiagram::from_pairs(0, 0, &[]).unwrap().to_string(), "()");
        for d in tl_basis(3, 5).into_iter().chain(tl_basis(4, 4)) {
            let back: PlanarDiagram = d.to_string().parse().unwrap();
            assert_eq!(back, d);
        }
        let d: PlanarDiagram = "(b1,b2)(b3,t1) (t2, t3)".parse().unwrap();
        assert_eq!((d.bottom(), d.top()), (3, 3));
    }

    #[test]
    fn crossing_pairs_are_rejected() {
        let r = "(b1,t2)(b2,t1)".parse::<PlanarDiagram>();
        assert!(matches!(r, Err(TlError::NotPlanar(_))));
        assert!(matches!("(b1,b2".parse::<PlanarDiagram>(), Err(TlError::Parse { .. })));
        assert!(matches!("(b1,b1)".parse::<PlanarDiagram>(), Err(TlError::NotPlanar(_))));
        assert!(matches!(
            "(b1,t1)(b3,t3)".parse::<PlanarDiagram>(),
            Err(TlError::NotPlanar(_))
        ));
    }

    #[test]
    fn cap_on_cup_is_a_loop() {
        let (d, loops) = PlanarDiagram::cap().stack_on(&PlanarDiagram::cup()).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(d, PlanarDiagram::from_pairs(0, 0, &[]).unwrap());
        let (d, loops) = PlanarDiagram::cup().stack_on(&PlanarDiagram::cap()).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(d.to_string(), "(b1,b2)(t1,t2)");
    }

    #[test]
    fn zigzag_straightens() {
        let left = PlanarDiagram::cap().tensor(&PlanarDiagram::identity(1));
        let right = PlanarDiagram::identity(1).tensor(&PlanarDiagram::cup());
        let (d, loops) = left.stack_on(&right).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(d, PlanarDiagram::identity(1));
    }

    #[test]
    fn mismatched_stack_is_an_error() {
        assert!(matches!(
            PlanarDiagram::identity(2).stack_on(&PlanarDiagram::identity(3)),
            Err(TlError::BoundaryMismatch { above: 2, below: 3 })
        ));
    }
}
