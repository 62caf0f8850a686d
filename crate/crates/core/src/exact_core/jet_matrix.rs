use super::{ExactError, Jet};

/// Matrix of jets with a common truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMatrix {
    rows: usize,
    cols: usize,
    trunc: usize,
    entries: Vec<Jet>,
}

impl JetMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Jet>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(ExactError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let trunc = entries[0].truncation();
        if entries.iter().any(|e| e.truncation() != trunc) {
            return Err(ExactError::DimensionMismatch("mixed truncations".into()));
        }
        Ok(JetMatrix { rows, cols, trunc, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Jet>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, trunc: usize) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(if i == j { Jet::one(trunc) } else { Jet::zero(trunc) });
            }
        }
        JetMatrix { rows: n, cols: n, trunc, entries: e }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Jet) {
        assert_eq!(v.truncation(), self.trunc);
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &JetMatrix) -> Result<JetMatrix, ExactError> {
        if self.cols != o.rows || self.trunc != o.trunc {
            return Err(ExactError::DimensionMismatch("matrix product".into()));
        }
        let mut e = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Jet::zero(self.trunc);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                e.push(acc);
            }
        }
        JetMatrix::new(self.rows, o.cols, e)
    }

    /// Determinant by cofactor expansion (small square matrices only).
    pub fn det(&self) -> Result<Jet, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch("det of non-square".into()));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.det_minor(0, &idx))
    }

    fn det_minor(&self, row: usize, cols: &[usize]) -> Jet {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Jet::zero(self.trunc);
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.get(row, c) * &self.det_minor(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Diagonal valuations of a Smith form over Q[[t]]/t^N, ascending, with
    /// `None` for diagonal entries that vanish to the known precision. Length
    /// is `min(rows, cols)`.
    pub fn smith_form(&self) -> Vec<Option<usize>> {
        let n = self.trunc;
        let mut a: Vec<Vec<Jet>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rows: Vec<usize> = (0..self.rows).collect();
        let mut cols: Vec<usize> = (0..self.cols).collect();
        let mut out = Vec::new();
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (ri, &r) in rows.iter().enumerate() {
                for (ci, &c) in cols.iter().enumerate() {
                    if let Some(v) = a[r][c].valuation() {
                        if best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, ri, ci));
                        }
                    }
                }
            }
            let Some((v, ri, ci)) = best else { break };
            let pr = rows.remove(ri);
            let pc = cols.remove(ci);
            // pivot = t^v u; every other entry has valuation >= v
            let unit_inv = a[pr][pc].div_t_pow(v).inverse();
            for &r in &rows {
                if a[r][pc].is_zero() {
                    continue;
                }
                let factor = &a[r][pc].div_t_pow(v) * &unit_inv;
                for &c in cols.iter() {
                    let delta = &factor * &a[pr][c];
                    a[r][c] = &a[r][c] - &delta;
                }
                a[r][pc] = Jet::zero(n);
            }
            out.push(Some(v));
        }
        let total = self.rows.min(self.cols);
        let mut vals: Vec<usize> = out.into_iter().flatten().collect();
        vals.sort_unstable();
        let mut res: Vec<Option<usize>> = vals.into_iter().map(Some).collect();
        res.resize(total, None);
        res
    }

    /// Elementary-divisor exponents of the cokernel of this matrix (viewed as
    /// a map into R^rows), one per row, ascending.
    pub fn smith_exponents(&self) -> Result<Vec<usize>, ExactError> {
        let form = self.smith_form();
        if form.len() < self.rows || form.iter().any(|x| x.is_none()) {
            return Err(ExactError::Indeterminate);
        }
        Ok(form.into_iter().flatten().collect())
    }
}
