use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::linsolve::{RowEchelon, SparseRow};
use super::{parse_scalar, FieldError, Scalar};

/// Dense row-major matrix over `Q(zeta_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    m: u32,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, m: u32) -> Self {
        ExactMatrix {
            rows,
            cols,
            m,
            data: vec![Scalar::zero(m); rows * cols],
        }
    }

    pub fn identity(n: usize, m: u32) -> Self {
        let mut out = Self::zeros(n, n, m);
        for i in 0..n {
            out.data[i * n + i] = Scalar::one(m);
        }
        out
    }

    pub fn scalar(s: Scalar) -> Self {
        ExactMatrix {
            rows: 1,
            cols: 1,
            m: s.conductor(),
            data: vec![s],
        }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, m: u32) -> Result<Self, FieldError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(FieldError::ShapeMismatch {
                    op: "from_rows",
                    left_rows: nrows,
                    left_cols: cols,
                    right_rows: 1,
                    right_cols: r.len(),
                });
            }
            for s in r {
                data.push(s.embed(m)?);
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            m,
            data,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]], m: u32) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(m, v)).collect())
            .collect();
        Self::from_rows(data, cols, m).expect("ragged integer rows")
    }

    /// Rows of scalar literals such as `"1/2 z^6"`.
    pub fn from_literal_rows<S: AsRef<str>>(rows: &[Vec<S>], m: u32) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s.as_ref(), m)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Self::from_rows(parsed, cols, m)
    }

    pub fn column(v: Vec<Scalar>, m: u32) -> Self {
        let n = v.len();
        ExactMatrix {
            rows: n,
            cols: 1,
            m,
            data: v,
        }
    }

    pub fn diag(entries: Vec<Scalar>, m: u32) -> Self {
        let n = entries.len();
        let mut out = Self::zeros(n, n, m);
        for (i, e) in entries.into_iter().enumerate() {
            out.data[i * n + i] = e;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row_vec(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn shape_err(&self, op: &'static str, other: &ExactMatrix) -> FieldError {
        FieldError::ShapeMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// Exact product `self * other`.
    pub fn mat_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.cols != other.rows {
            return Err(self.shape_err("mat_mul", other));
        }
        let m = super::lcm(self.m, other.m);
        let mut out = ExactMatrix::zeros(self.rows, other.cols, m);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let one = a.is_one();
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * other.cols + j];
                    if one {
                        *slot += b;
                    } else {
                        *slot += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let m = super::lcm(self.m, other.m);
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ExactMatrix::zeros(rows, cols, m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        let v = if a.is_one() { b.embed(m).unwrap() } else { a * b };
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.shape() != other.shape() {
            return Err(self.shape_err("add", other));
        }
        let m = super::lcm(self.m, other.m);
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            m,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        self.add(&other.scale(&Scalar::from_int(other.m, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let m = super::lcm(self.m, s.conductor());
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            m,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows, self.m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination with leftmost-nonzero pivots.
    pub fn inverse(&self) -> Result<ExactMatrix, FieldError> {
        if !self.is_square() {
            return Err(FieldError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| self.row_vec(r).to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            Scalar::one(self.m)
                        } else {
                            Scalar::zero(self.m)
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(FieldError::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            if !p.is_one() {
                for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
                    if !v.is_zero() {
                        *v = &*v * &p;
                    }
                }
            }
            let (prow, pinv) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for (v, pv) in a[r].iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v = &*v - &(&f * pv);
                    }
                }
                for (v, pv) in inv[r].iter_mut().zip(&pinv) {
                    if !pv.is_zero() {
                        *v = &*v - &(&f * pv);
                    }
                }
            }
        }
        ExactMatrix::from_rows(inv, n, self.m)
    }

    fn sparse_rows(&self) -> impl Iterator<Item = SparseRow> + '_ {
        (0..self.rows).map(move |r| {
            self.row_vec(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
    }

    pub fn echelon(&self) -> RowEchelon {
        let mut re = RowEchelon::new(self.cols, self.m);
        for row in self.sparse_rows() {
            re.insert(&row);
        }
        re
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{x : self * x = 0}` as column vectors, ordered by the free
    /// columns of the reduced echelon form.
    pub fn nullspace_basis(&self) -> Vec<ExactMatrix> {
        self.echelon()
            .nullspace()
            .into_iter()
            .map(|v| ExactMatrix::column(v, self.m))
            .collect()
    }

    /// Stacks blocks vertically; all must share a column count.
    pub fn vstack(blocks: &[ExactMatrix]) -> Result<ExactMatrix, FieldError> {
        let Some(first) = blocks.first() else {
            return Ok(ExactMatrix::zeros(0, 0, 1));
        };
        let cols = first.cols;
        let m = blocks.iter().fold(1, |acc, b| super::lcm(acc, b.m));
        let mut rows = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(first.shape_err("vstack", b));
            }
            for r in 0..b.rows {
                rows.push(b.row_vec(r).to_vec());
            }
        }
        ExactMatrix::from_rows(rows, cols, m)
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn column_block(&self, start: usize, len: usize) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows, len, self.m);
        for r in 0..self.rows {
            for c in 0..len {
                out.data[r * len + c] = self.get(r, start + c).clone();
            }
        }
        out
    }

    /// If this is `c * I`, returns `c`.
    pub fn as_scalar_identity(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Scalar::one(self.m));
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Row-major flattening, used when testing linear independence of maps.
    pub fn flatten(&self) -> SparseRow {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row_vec(r).iter().map(|s| s.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits = self.to_literal_rows();
        let width = lits.iter().flatten().map(String::len).max().unwrap_or(0);
        for row in &lits {
            f.write_str("[")?;
            for (i, s) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{s:>width$}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactMatrix", 4)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("conductor", &self.m)?;
        st.serialize_field("entries", &self.to_literal_rows())?;
        st.end()
    }
}
