use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactError, Rational};

/// Dense row-major rational matrix.
pub type QMatrix = Vec<Vec<Rational>>;

/// Clears denominators row by row.
fn integer_rows(a: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free forward elimination. Returns the echelon matrix and
/// pivot columns.
fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        // rows above the pivot row are unaffected; entries left of c in rows
        // below are already zero
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &[Vec<Rational>]) -> (QMatrix, Vec<usize>) {
    let ncols = a.first().map_or(0, |r| r.len());
    let (ech, pivots) = bareiss(integer_rows(a), ncols);
    let mut q: QMatrix = ech
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let inv = q[i][pc].recip();
        for x in q[i].iter_mut() {
            *x *= &inv;
        }
        for k in 0..i {
            if q[k][pc].is_zero() {
                continue;
            }
            let f = q[k][pc].clone();
            for j in pc..ncols {
                let d = &f * &q[i][j];
                q[k][j] -= d;
            }
        }
    }
    (q, pivots)
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let ncols = a[0].len();
    bareiss(integer_rows(a), ncols).1.len()
}

/// Some solution of `a x = b`, free variables set to zero.
pub fn linear_solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, ExactError> {
    if a.len() != b.len() {
        return Err(ExactError::DimensionMismatch(format!(
            "{} rows against {} right-hand entries",
            a.len(),
            b.len()
        )));
    }
    let ncols = a.first().map_or(0, |r| r.len());
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Ok(vec![Rational::zero(); ncols]);
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return Err(ExactError::NoSolution);
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r[i][ncols].clone();
    }
    Ok(x)
}

/// Basis of the right kernel `{x : a x = 0}`, one vector per free column.
pub fn kernel_basis(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    kernel_basis_cols(a, ncols)
}

/// Same as [`kernel_basis`] but with an explicit column count, so an empty
/// row list still has a well-defined kernel.
pub fn kernel_basis_cols(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = if a.is_empty() { (Vec::new(), Vec::new()) } else { rref(a) };
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        out.push(v);
    }
    out
}
