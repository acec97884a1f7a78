use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Diagram, DiagramError, ObjectWord};
use crate::exactfield::Scalar;

/// A formal linear combination of diagrams sharing source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    source: ObjectWord,
    target: ObjectWord,
    terms: BTreeMap<Diagram, Scalar>,
}

impl Morphism {
    pub fn zero(source: ObjectWord, target: ObjectWord) -> Self {
        Morphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram, m: u32) -> Self {
        Self::term(d, Scalar::one(m))
    }

    pub fn term(d: Diagram, c: Scalar) -> Self {
        let mut out = Morphism::zero(d.source().clone(), d.target().clone());
        if !c.is_zero() {
            out.terms.insert(d, c);
        }
        out
    }

    pub fn identity(word: ObjectWord, m: u32) -> Self {
        Self::from_diagram(Diagram::identity(word), m)
    }

    pub fn source(&self) -> &ObjectWord {
        &self.source
    }

    pub fn target(&self) -> &ObjectWord {
        &self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single diagram and its coefficient, if there is exactly one term.
    pub fn single(&self) -> Option<(&Diagram, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn push(&mut self, d: Diagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, DiagramError> {
        if self.source != other.source || self.target != other.target {
            return Err(DiagramError::BoundaryMismatch {
                context: format!("sum with morphism {} -> {}", other.source, other.target),
                expected: self.source.concat(&self.target),
                found: other.source.concat(&other.target),
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.push(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        let mut out = Morphism::zero(self.source.clone(), self.target.clone());
        for (d, c) in &self.terms {
            out.push(d.clone(), c * s);
        }
        out
    }

    /// `self` after `g`, extended bilinearly.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism, DiagramError> {
        if g.target != self.source {
            return Err(DiagramError::BoundaryMismatch {
                context: "compose".into(),
                expected: self.source.clone(),
                found: g.target.clone(),
            });
        }
        let mut out = Morphism::zero(g.source.clone(), self.target.clone());
        for (df, cf) in &self.terms {
            for (dg, cg) in &g.terms {
                out.push(df.compose(dg)?, cf * cg);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, g: &Morphism) -> Morphism {
        let mut out = Morphism::zero(self.source.concat(&g.source), self.target.concat(&g.target));
        for (df, cf) in &self.terms {
            for (dg, cg) in &g.terms {
                out.push(df.tensor(dg), cf * cg);
            }
        }
        out
    }

    /// DSL text. Coefficients other than 1 are written in braces before the
    /// term, e.g. `{1/2 z^6} m[1,1->2] + s[2->1,1] ; m[1,1->2]`. The zero
    /// morphism prints as `0`.
    pub fn to_dsl(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let body = if d.slices().len() > 1 || self.terms.len() > 1 {
                    format!("({})", d.to_dsl())
                } else {
                    d.to_dsl()
                };
                if c.is_one() {
                    body
                } else {
                    format!("{{{c}}} {body}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Cell, Strand};

    #[test]
    fn linear_combinations_cancel() {
        let d = Diagram::cell(Cell::merge(Strand::node("1"), Strand::node("1"), Strand::node("2")));
        let a = Morphism::from_diagram(d.clone(), 24);
        let b = a.scale(&Scalar::from_int(24, -1));
        assert!(a.add(&b).unwrap().is_zero());
        let c = a.add(&a).unwrap();
        assert_eq!(c.single().unwrap().1, &Scalar::from_int(24, 2));
    }
}
