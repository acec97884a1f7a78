//! The matrix model of `TL(2)` on tensor powers of the two-dimensional
//! `sl_2` module.
//!
//! A planar diagram `D` goes to `(-1)^{s(D)} M(D)`, where `M` is the rigid
//! model built from the antisymmetric form (cup `e1 (x) e2 - e2 (x) e1`,
//! cap `e1 (x) e2 -> -1`, `e2 (x) e1 -> 1`, whose loop is `-2`) and `s(D)`
//! sums the left ends of the cups and the right ends of the caps, 0-based.
//! This sends the cup and the cap to the prescribed vectors, a loop to `2`,
//! and is compatible with composition.

use super::{tl_basis, PlanarDiagram, Point, TLMorphism};
use crate::diagram::ObjectWord;
use crate::evaluator::{hom_dim_oracle, MatrixMap};
use crate::exactfield::{lcm, ExactMatrix, RowEchelon, Scalar};
use crate::repgraph::{su2, GroupData};

/// `sl_2` acting on its trivial and two-dimensional modules, labelled `0`
/// and `1`.
pub fn sl2_group() -> GroupData {
    su2(2)
}

fn word(k: usize) -> ObjectWord {
    ObjectWord::from_labels(&vec!["1"; k])
}

/// The bit of `index` for tensor position `pos` out of `len`, with the
/// leftmost factor most significant.
fn bit(index: usize, pos: usize, len: usize) -> usize {
    (index >> (len - 1 - pos)) & 1
}

fn sign(d: &PlanarDiagram) -> i64 {
    let s: usize = d.cups().iter().map(|&(a, _)| a).sum::<usize>() + d.caps().iter().map(|&(_, b)| b).sum::<usize>();
    if s % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Integer matrix of one planar diagram.
fn diagram_entries(d: &PlanarDiagram) -> Vec<Vec<i64>> {
    let (k, l) = (d.bottom(), d.top());
    let pairs = d.pairs();
    let s = sign(d);
    let mut rows = vec![vec![0i64; 1 << k]; 1 << l];
    for (t, row) in rows.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let value = |p: Point| match p {
                Point::Bottom(i) => bit(b, i, k),
                Point::Top(j) => bit(t, j, l),
            };
            let mut v = s;
            for &(p, q) in &pairs {
                let (x, y) = (value(p), value(q));
                let f = match (p, q) {
                    (Point::Bottom(i), Point::Bottom(j)) | (Point::Top(i), Point::Top(j)) => {
                        let (lx, rx) = if i < j { (x, y) } else { (y, x) };
                        let cap = matches!(p, Point::Bottom(_));
                        match (lx, rx, cap) {
                            (0, 1, true) => -1,
                            (1, 0, true) => 1,
                            (0, 1, false) => 1,
                            (1, 0, false) => -1,
                            _ => 0,
                        }
                    }
                    _ => i64::from(x == y),
                };
                v *= f;
                if v == 0 {
                    break;
                }
            }
            *entry = v;
        }
    }
    rows
}

/// The image of a morphism of `TL(2)` as a map `V^k -> V^l`.
pub fn tl_to_matrix(m: &TLMorphism) -> MatrixMap {
    let conductor = m
        .terms()
        .fold(m.delta().conductor(), |acc, (_, c)| lcm(acc, c.conductor()));
    let mut matrix = ExactMatrix::zeros(1 << m.top(), 1 << m.bottom(), conductor);
    for (d, c) in m.terms() {
        for (r, row) in diagram_entries(d).into_iter().enumerate() {
            for (col, v) in row.into_iter().enumerate() {
                if v != 0 {
                    let add = &(c * &Scalar::from_int(1, v)) + matrix.get(r, col);
                    matrix.set(r, col, add.embed(conductor).expect("conductor divides the lcm"));
                }
            }
        }
    }
    MatrixMap {
        source: word(m.bottom()),
        target: word(m.top()),
        matrix,
    }
}

/// Rank of the span of the matrices of the planar basis `k -> l`.
pub fn tl_matrix_rank(k: usize, l: usize) -> usize {
    let two = Scalar::from_int(1, 2);
    let mut re = RowEchelon::new(1 << (k + l), 1);
    for d in tl_basis(k, l) {
        re.insert(&tl_to_matrix(&TLMorphism::from_diagram(d, &two)).matrix.flatten());
    }
    re.rank()
}

/// `dim End_{sl_2}(V^k, V^l)` from the module data.
pub fn sl2_intertwiner_dim(k: usize, l: usize) -> usize {
    hom_dim_oracle(&word(k), &word(l), &sl2_group()).expect("labels 1 exist")
}
