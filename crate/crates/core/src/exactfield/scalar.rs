use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::cyclotomic::{euler_phi, lcm, tables};
use super::FieldError;

pub type Rational = BigRational;

/// An element of `Q(zeta_m)`, stored as its coordinates in the power basis
/// `1, zeta, .., zeta^(phi(m)-1)`. Reduction modulo the cyclotomic
/// polynomial is done eagerly so structural equality is field equality.
#[derive(Clone, Debug)]
pub struct Scalar {
    m: u32,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero(m: u32) -> Self {
        assert!(m > 0, "conductor must be positive");
        Scalar {
            m,
            coeffs: vec![Rational::zero(); euler_phi(m)],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = r;
        s
    }

    pub fn from_frac(m: u32, num: i64, den: i64) -> Self {
        Self::from_rational(m, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let t = tables(m);
        let idx = k.rem_euclid(m as i64) as usize;
        Scalar {
            m,
            coeffs: t.powers[idx]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds `sum_k c_k zeta_m^k` from arbitrary (unreduced) exponents.
    pub fn from_terms<I>(m: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let t = tables(m);
        let mut out = vec![Rational::zero(); t.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let idx = k.rem_euclid(m as i64) as usize;
            for (o, &p) in out.iter_mut().zip(&t.powers[idx]) {
                if p != 0 {
                    *o += &c * BigInt::from(p);
                }
            }
        }
        Scalar { m, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Reduced coordinates in the power basis (length `phi(m)`).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-express this element in `Q(zeta_target)`; `m` must divide `target`.
    pub fn embed(&self, target: u32) -> Result<Scalar, FieldError> {
        if target == self.m {
            return Ok(self.clone());
        }
        if target == 0 {
            return Err(FieldError::ZeroConductor);
        }
        if target % self.m != 0 {
            return Err(FieldError::ConductorMismatch(self.m, target));
        }
        let step = (target / self.m) as i64;
        Ok(Scalar::from_terms(
            target,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64 * step, c.clone())),
        ))
    }

    fn unify(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        let l = lcm(a.m, b.m);
        (a.embed(l).expect("lcm embedding"), b.embed(l).expect("lcm embedding"))
    }

    fn add_same(&self, other: &Scalar) -> Scalar {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Scalar { m: self.m, coeffs }
    }

    fn mul_same(&self, other: &Scalar) -> Scalar {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let t = tables(self.m);
        let phi = t.phi;
        let mut out = vec![Rational::zero(); phi];
        let mut high: Vec<Rational> = vec![Rational::zero(); phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < phi {
                    out[i + j] += p;
                } else {
                    high[i + j - phi] += p;
                }
            }
        }
        for (d, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (d + phi) % self.m as usize;
            for (o, &p) in out.iter_mut().zip(&t.powers[idx]) {
                if p != 0 {
                    *o += &c * BigInt::from(p);
                }
            }
        }
        Scalar { m: self.m, coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Checked addition: both operands must share a conductor.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(self.add_same(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(FieldError::ConductorMismatch(self.m, other.m))
        }
    }

    /// Multiplicative inverse, found by solving `self * x = 1` as a
    /// `phi x phi` rational linear system.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(self.m, r.recip()));
        }
        let phi = self.coeffs.len();
        // Column j of the multiplication matrix is self * zeta^j.
        let mut aug: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_same(&Scalar::zeta_pow(self.m, j as i64));
            for (i, c) in col.coeffs.into_iter().enumerate() {
                aug[i][j] = c;
            }
        }
        aug[0][phi] = Rational::one();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(FieldError::DivisionByZero)?;
            aug.swap(col, piv);
            let p = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &p;
            }
            let prow = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Ok(Scalar {
            m: self.m,
            coeffs: aug.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Scalar::unify(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.m == rhs.m {
            self.add_same(rhs)
        } else {
            let (a, b) = Scalar::unify(self, rhs);
            a.add_same(&b)
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.m == rhs.m {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.m == rhs.m {
            self.mul_same(rhs)
        } else {
            let (a, b) = Scalar::unify(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Literal syntax: `1/2 + 1/2 z^6`, `-z^3`, `0`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => f.write_str(&fmt_rational(&mag))?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{} z^{k}", fmt_rational(&mag))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithResult {
    Value(Scalar),
    Bool(bool),
}

/// Strict single-entry arithmetic: unlike the operator impls, mixed
/// conductors are an error here rather than being embedded into a common field.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<ArithResult, FieldError> {
    let need_b = || {
        b.ok_or(FieldError::Literal {
            text: String::new(),
            reason: "binary operation needs two operands".into(),
        })
    };
    Ok(match op {
        ArithOp::Add => ArithResult::Value(a.try_add(need_b()?)?),
        ArithOp::Mul => ArithResult::Value(a.try_mul(need_b()?)?),
        ArithOp::Neg => ArithResult::Value(-a),
        ArithOp::Inv => ArithResult::Value(a.inv()?),
        ArithOp::Eq => {
            let b = need_b()?;
            a.check(b)?;
            ArithResult::Bool(a.coeffs == b.coeffs)
        }
    })
}
