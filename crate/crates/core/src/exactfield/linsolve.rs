use std::collections::BTreeMap;

use super::Scalar;

/// Sparse row: `(column, value)` pairs in increasing column order, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Incrementally maintained reduced row echelon form.
///
/// Rows are inserted one at a time; each insertion reduces the new row against
/// the existing pivots, scales its leading entry to 1 and clears that column
/// from the other rows. Pivot choice is always the leftmost nonzero entry, so
/// the result is independent of anything but the insertion order.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    m: u32,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl RowEchelon {
    pub fn new(ncols: usize, m: u32) -> Self {
        RowEchelon {
            ncols,
            m,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut work: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in row {
            if !v.is_zero() {
                *work.entry(*c).or_insert_with(|| Scalar::zero(self.m)) += v;
            }
        }
        // Pivot rows only touch non-pivot columns beyond their pivot, so a
        // single ascending sweep over the original pivot entries suffices.
        let pivot_cols: Vec<usize> = work.keys().copied().filter(|&c| self.pivot_row[c].is_some()).collect();
        for c in pivot_cols {
            let Some(f) = work.remove(&c) else { continue };
            if f.is_zero() {
                continue;
            }
            let prow = &self.rows[self.pivot_row[c].unwrap()];
            for (pc, pv) in prow.iter().skip(1) {
                let delta = &f * pv;
                let e = work.entry(*pc).or_insert_with(|| Scalar::zero(self.m));
                *e = &*e - &delta;
            }
        }
        work.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Returns true when the row was independent of the existing ones.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        let mut red = self.reduce(row);
        if red.is_empty() {
            return false;
        }
        let (pc, lead) = red[0].clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero lead");
            for (_, v) in red.iter_mut() {
                *v = &*v * &inv;
            }
        }
        for r in self.rows.iter_mut() {
            let Ok(pos) = r.binary_search_by_key(&pc, |(c, _)| *c) else {
                continue;
            };
            let f = r[pos].1.clone();
            let mut merged: BTreeMap<usize, Scalar> = r.drain(..).collect();
            for (c, v) in &red {
                let delta = &f * v;
                let e = merged.entry(*c).or_insert_with(|| Scalar::zero(self.m));
                *e = &*e - &delta;
            }
            *r = merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(red);
        true
    }

    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of the solution space of `rows * x = 0`, one vector per free
    /// column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut x = vec![Scalar::zero(self.m); self.ncols];
            x[free] = Scalar::one(self.m);
            for r in &self.rows {
                if let Ok(pos) = r.binary_search_by_key(&free, |(c, _)| *c) {
                    x[r[0].0] = -&r[pos].1;
                }
            }
            out.push(x);
        }
        out
    }
}
