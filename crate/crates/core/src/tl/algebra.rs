use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::matrix::{sl2_group, tl_to_matrix};
use super::{PlanarDiagram, Point, TlError};
use crate::evaluator::is_equivariant;
use crate::exactfield::Scalar;

/// A linear combination of planar diagrams `bottom -> top` in `TL(delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TLMorphism {
    bottom: usize,
    top: usize,
    delta: Scalar,
    terms: BTreeMap<PlanarDiagram, Scalar>,
}

impl TLMorphism {
    pub fn zero(bottom: usize, top: usize, delta: &Scalar) -> Self {
        TLMorphism {
            bottom,
            top,
            delta: delta.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: PlanarDiagram, delta: &Scalar) -> Self {
        let mut m = TLMorphism::zero(d.bottom(), d.top(), delta);
        m.terms.insert(d, Scalar::one(delta.conductor()));
        m
    }

    pub fn identity(k: usize, delta: &Scalar) -> Self {
        TLMorphism::from_diagram(PlanarDiagram::identity(k), delta)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `d` (zero when absent).
    pub fn coefficient(&self, d: &PlanarDiagram) -> Scalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.delta.conductor()))
    }

    fn add_term(&mut self, d: PlanarDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn same_delta(&self, other: &TLMorphism) -> Result<(), TlError> {
        if self.delta != other.delta {
            return Err(TlError::DeltaMismatch(self.delta.to_string(), other.delta.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &TLMorphism) -> Result<TLMorphism, TlError> {
        self.same_delta(other)?;
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(TlError::BoundaryMismatch {
                above: self.bottom,
                below: other.bottom,
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> TLMorphism {
        let mut out = TLMorphism::zero(self.bottom, self.top, &self.delta);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, other: &TLMorphism) -> Result<TLMorphism, TlError> {
        self.add(&other.scale(&-Scalar::one(1)))
    }

    /// `self` stacked on `below`, each removed loop contributing `loop_value`.
    pub fn compose_with_loop(&self, below: &TLMorphism, loop_value: &Scalar) -> Result<TLMorphism, TlError> {
        self.same_delta(below)?;
        if self.bottom != below.top {
            return Err(TlError::BoundaryMismatch {
                above: self.bottom,
                below: below.top,
            });
        }
        let mut out = TLMorphism::zero(below.bottom, self.top, &self.delta);
        for (a, ca) in &self.terms {
            for (b, cb) in &below.terms {
                let (d, loops) = a.stack_on(b)?;
                let c = &(ca * cb) * &loop_value.pow(loops as u32);
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &TLMorphism) -> Result<TLMorphism, TlError> {
        self.same_delta(other)?;
        let mut out = TLMorphism::zero(self.bottom + other.bottom, self.top + other.top, &self.delta);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.tensor(b), ca * cb);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TLMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{d}")?;
            } else {
                write!(f, "{{{c}}} {d}")?;
            }
        }
        Ok(())
    }
}

/// `f o g`: `f` stacked on top of `g`, each closed loop replaced by `delta`.
pub fn tl_compose(f: &TLMorphism, g: &TLMorphism) -> Result<TLMorphism, TlError> {
    f.compose_with_loop(g, &f.delta.clone())
}

/// `e_i` in `TL_k` (1-based `i`): a cap on strands `i, i+1` below a cup on
/// the same strands, with vertical strands elsewhere.
pub fn e_generator(i: usize, k: usize, delta: &Scalar) -> Result<TLMorphism, TlError> {
    if i == 0 || i >= k {
        return Err(TlError::IndexOutOfRange { i, k });
    }
    let mut pairs: Vec<(Point, Point)> = (0..k)
        .filter(|&j| j + 1 != i && j != i)
        .map(|j| (Point::Bottom(j), Point::Top(j)))
        .collect();
    pairs.push((Point::Bottom(i - 1), Point::Bottom(i)));
    pairs.push((Point::Top(i - 1), Point::Top(i)));
    Ok(TLMorphism::from_diagram(
        PlanarDiagram::from_pairs(k, k, &pairs)?,
        delta,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TlCheck {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl TlCheck {
    fn new(name: &str) -> Self {
        TlCheck {
            name: name.to_string(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TlReport {
    pub k: usize,
    pub delta: Scalar,
    /// Whether the matrix model was checked (only at `delta = 2`).
    pub matrix_model: bool,
    pub checks: Vec<TlCheck>,
}

impl TlReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(TlCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&TlCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks `e_i^2 = delta e_i`, `e_i e_{i+-1} e_i = e_i` and `e_i e_j = e_j e_i`
/// for `|i - j| >= 2` in `TL_k(delta)`; at `delta = 2` also in the matrix
/// model, together with equivariance and compatibility of the matrices with
/// diagram composition.
pub fn check_tl_presentation(k: usize, delta: &Scalar) -> Result<TlReport, TlError> {
    check_tl_presentation_with_loop(k, delta, delta)
}

/// As [`check_tl_presentation`], but composing with `loop_value` as the
/// value of a closed loop while the relations still demand `delta`.
pub fn check_tl_presentation_with_loop(k: usize, delta: &Scalar, loop_value: &Scalar) -> Result<TlReport, TlError> {
    let compose = |f: &TLMorphism, g: &TLMorphism| f.compose_with_loop(g, loop_value);
    let e: Vec<TLMorphism> = (1..k).map(|i| e_generator(i, k, delta)).collect::<Result<_, _>>()?;

    let mut square = TlCheck::new("e_i e_i = delta e_i");
    let mut braid = TlCheck::new("e_i e_j e_i = e_i for |i - j| = 1");
    let mut far = TlCheck::new("e_i e_j = e_j e_i for |i - j| >= 2");
    for i in 0..e.len() {
        let lhs = compose(&e[i], &e[i])?;
        let rhs = e[i].scale(delta);
        square.record(lhs == rhs, || format!("i = {}: got {lhs}, expected {rhs}", i + 1));
        for j in 0..e.len() {
            let gap = i.abs_diff(j);
            if gap == 1 {
                let lhs = compose(&compose(&e[i], &e[j])?, &e[i])?;
                braid.record(lhs == e[i], || format!("i = {}, j = {}: got {lhs}", i + 1, j + 1));
            } else if gap >= 2 && i < j {
                let a = compose(&e[i], &e[j])?;
                let b = compose(&e[j], &e[i])?;
                far.record(a == b, || format!("i = {}, j = {}: {a} vs {b}", i + 1, j + 1));
            }
        }
    }
    let mut checks = vec![square, braid, far];

    let two = Scalar::from_int(delta.conductor(), 2);
    let matrix_model = *delta == two;
    if matrix_model {
        let group = sl2_group();
        let m = delta.conductor();
        let mats: Vec<_> = e.iter().map(tl_to_matrix).collect();
        let mut mat_square = TlCheck::new("matrices: E_i E_i = 2 E_i");
        let mut mat_braid = TlCheck::new("matrices: E_i E_j E_i = E_i for |i - j| = 1");
        let mut mat_far = TlCheck::new("matrices: E_i E_j = E_j E_i for |i - j| >= 2");
        let mut equi = TlCheck::new("matrices commute with the sl2 action");
        let mut functor = TlCheck::new("matrix of e_i e_j = E_i E_j");
        let two = Scalar::from_int(m, 2);
        for i in 0..mats.len() {
            let ei = &mats[i].matrix;
            let sq = ei.mat_mul(ei).expect("square matrices");
            mat_square.record(sq == ei.scale(&two), || format!("i = {}", i + 1));
            let ok = is_equivariant(&mats[i], &group).unwrap_or(false);
            equi.record(ok, || format!("E_{} is not equivariant", i + 1));
            for j in 0..mats.len() {
                let ej = &mats[j].matrix;
                let prod = ei.mat_mul(ej).expect("square matrices");
                let diagrammatic = tl_to_matrix(&compose(&e[i], &e[j])?).matrix;
                functor.record(prod == diagrammatic, || format!("i = {}, j = {}", i + 1, j + 1));
                let gap = i.abs_diff(j);
                if gap == 1 {
                    let triple = prod.mat_mul(ei).expect("square matrices");
                    mat_braid.record(&triple == ei, || format!("i = {}, j = {}", i + 1, j + 1));
                } else if gap >= 2 && i < j {
                    let other = ej.mat_mul(ei).expect("square matrices");
                    mat_far.record(prod == other, || format!("i = {}, j = {}", i + 1, j + 1));
                }
            }
        }
        checks.extend([mat_square, mat_braid, mat_far, equi, functor]);
    }
    Ok(TlReport {
        k,
        delta: delta.clone(),
        matrix_model,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Scalar {
        Scalar::from_int(1, 2)
    }

    fn diagram(s: &str) -> PlanarDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn e1_in_tl2() {
        let e1 = e_generator(1, 2, &two()).unwrap();
        let (d, c) = e1.terms().next().unwrap();
        assert!(c.is_one());
        assert_eq!(d.to_string(), "(b1,b2)(t1,t2)");
        assert!(matches!(
            e_generator(2, 2, &two()),
            Err(TlError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            e_generator(0, 3, &two()),
            Err(TlError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn loop_gives_delta() {
        let delta = Scalar::from_int(1, -3);
        let cap = TLMorphism::from_diagram(PlanarDiagram::cap(), &delta);
        let cup = TLMorphism::from_diagram(PlanarDiagram::cup(), &delta);
        let out = tl_compose(&cap, &cup).unwrap();
        assert_eq!(out.coefficient(&PlanarDiagram::identity(0)), delta);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn worked_example_has_one_loop() {
        let d1 = diagram("(b1,b2)(b3,t1)(b4,t2)(b5,t7)(b6,t8)(b7,b8)(9)(t3,t6)(t4,t5)");
        let d2 = diagram("(b1,b2)(3)(b4,b7)(b5,b6)(b8,b9)(t1,t2)(t4,t5)(t6,t7)(t8,t9)");
        let (d, loops) = d1.stack_on(&d2).unwrap();
        assert_eq!(loops, 1);
        let expected = diagram("(b1,b2)(b3,t1)(b4,b7)(b5,b6)(b8,b9)(t2,t7)(t3,t6)(t4,t5)(t8,t9)");
        assert_eq!(d, expected);
        let delta = Scalar::from_int(1, 5);
        let f = TLMorphism::from_diagram(d1, &delta);
        let g = TLMorphism::from_diagram(d2, &delta);
        assert_eq!(
            tl_compose(&f, &g).unwrap(),
            TLMorphism::from_diagram(expected, &delta).scale(&delta)
        );
    }

    #[test]
    fn presentation_holds() {
        for k in 2..=5 {
            let r = check_tl_presentation(k, &two()).unwrap();
            assert!(r.matrix_model);
            assert!(r.passed(), "{r:?}");
        }
        let r = check_tl_presentation(4, &Scalar::from_frac(1, 1, 3)).unwrap();
        assert!(!r.matrix_model && r.passed());
        let r = check_tl_presentation(4, &Scalar::from_int(1, 1)).unwrap();
        assert_eq!(r.checks.iter().map(|c| c.instances).collect::<Vec<_>>(), vec![3, 4, 1]);
    }

    #[test]
    fn wrong_loop_value_is_flagged() {
        let r = check_tl_presentation_with_loop(3, &two(), &Scalar::one(1)).unwrap();
        assert!(!r.check("e_i e_i = delta e_i").unwrap().passed());
        assert!(r.check("e_i e_j e_i = e_i for |i - j| = 1").unwrap().passed());
        assert!(!r.check("matrix of e_i e_j = E_i E_j").unwrap().passed());
    }

    #[test]
    fn linear_structure() {
        let delta = two();
        let e1 = e_generator(1, 3, &delta).unwrap();
        let e2 = e_generator(2, 3, &delta).unwrap();
        let sum = e1.add(&e2).unwrap();
        assert_eq!(sum.len(), 2);
        assert!(sum.sub(&e1).unwrap().sub(&e2).unwrap().is_zero());
        let other = e_generator(1, 3, &Scalar::from_int(1, 3)).unwrap();
        assert!(matches!(e1.add(&other), Err(TlError::DeltaMismatch(..))));
        let sq = tl_compose(&sum, &sum).unwrap();
        // (e1 + e2)^2 = 2 e1 + 2 e2 + e1 e2 + e2 e1
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.coefficient(&PlanarDiagram::identity(3)), Scalar::zero(1));
    }
}
