//! Splitting types of rank-2 subsheaves of `O^2` on P^1 presented by local
//! lattices at `0` and `infinity`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_core::{kernel_basis_cols, rank, ExactError, Jet, JetMatrix, Rational, UniPoly};
use crate::triple_cover::{CoverError, FiberType, MirandaCover, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("truncation {0} is too small to certify the lattice")]
    PrecisionExhausted(usize),
    #[error("generator jets must have truncation {expected}, found {found}")]
    TruncationMismatch { expected: usize, found: usize },
    #[error("the lattice at infinity is not the full lattice")]
    NotSplitNormalization,
    #[error("expected splitting ({expected_m}, {expected_n}), found ({m}, {n})")]
    SplittingMismatch { expected_m: usize, expected_n: usize, m: usize, n: usize },
    #[error("h0 sequence is not that of a split rank-2 bundle")]
    Inconsistent,
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// A rank-2 sheaf `F` inside `O^2`. Near `0` (coordinate `x`) it is spanned by
/// `gens_at_0` together with `x^N O^2`; near infinity (coordinate `u = 1/x`)
/// by `gens_at_inf` together with `u^N O^2`, or everything when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSheaf {
    pub truncation: usize,
    pub gens_at_0: Vec<[Jet; 2]>,
    pub gens_at_inf: Option<Vec<[Jet; 2]>>,
}

/// Linear conditions cutting out a local lattice inside `Q^{2N}`.
#[derive(Debug, Clone)]
struct LocalConditions {
    n: usize,
    annihilator: Vec<Vec<Rational>>,
    colength: usize,
}

impl LocalConditions {
    fn new(gens: &[[Jet; 2]], n: usize) -> Result<Self, SplittingError> {
        for g in gens {
            for j in g {
                if j.truncation() != n {
                    return Err(SplittingError::TruncationMismatch {
                        expected: n,
                        found: j.truncation(),
                    });
                }
            }
        }
        // certify with the implicit t^N lattice one order higher: an exponent
        // reaching N means the truncation cannot see the true lattice
        let mut entries = Vec::new();
        for row in 0..2 {
            for g in gens {
                entries.push(g[row].with_truncation(n + 1));
            }
            for col in 0..2 {
                let e = if col == row { Jet::monomial(Rational::one(), n, n + 1) } else { Jet::zero(n + 1) };
                entries.push(e);
            }
        }
        let m = JetMatrix::new(2, gens.len() + 2, entries).map_err(|_| SplittingError::Inconsistent)?;
        match m.smith_exponents() {
            Ok(ex) if ex.iter().all(|&e| e < n) => {}
            _ => return Err(SplittingError::PrecisionExhausted(n)),
        }
        let mut span = Vec::new();
        for g in gens {
            for j in 0..n {
                let mut v = Vec::with_capacity(2 * n);
                v.extend(g[0].mul_t_pow(j).coeffs().iter().cloned());
                v.extend(g[1].mul_t_pow(j).coeffs().iter().cloned());
                span.push(v);
            }
        }
        let dim = rank(&span);
        let annihilator = kernel_basis_cols(&span, 2 * n);
        Ok(LocalConditions { n, annihilator, colength: 2 * n - dim })
    }

    fn full(n: usize) -> Self {
        LocalConditions { n, annihilator: Vec::new(), colength: 0 }
    }

    /// Rows of the linear conditions on a pair of jets given as a map from
    /// unknowns: `jet_coeff(component, i)` lists `(unknown, scalar)`.
    fn rows(&self, jet_coeff: impl Fn(usize, usize) -> Option<usize>, nvars: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for y in &self.annihilator {
            let mut row = vec![Rational::zero(); nvars];
            for comp in 0..2 {
                for i in 0..self.n {
                    let c = &y[comp * self.n + i];
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(var) = jet_coeff(comp, i) {
                        row[var] += c;
                    }
                }
            }
            out.push(row);
        }
        out
    }
}

/// Precomputed local data; reused across twists.
#[derive(Debug, Clone)]
pub struct PreparedSheaf {
    zero: LocalConditions,
    inf: LocalConditions,
}

impl LatticeSheaf {
    pub fn full(truncation: usize) -> Self {
        let one = Jet::one(truncation);
        let zero = Jet::zero(truncation);
        LatticeSheaf {
            truncation,
            gens_at_0: vec![[one.clone(), zero.clone()], [zero, one]],
            gens_at_inf: None,
        }
    }

    pub fn prepare(&self) -> Result<PreparedSheaf, SplittingError> {
        let n = self.truncation;
        let zero = LocalConditions::new(&self.gens_at_0, n)?;
        let inf = match &self.gens_at_inf {
            Some(g) => LocalConditions::new(g, n)?,
            None => LocalConditions::full(n),
        };
        Ok(PreparedSheaf { zero, inf })
    }

    /// Total colength of `F` in `O^2`, i.e. `m' + n'`.
    pub fn colength(&self) -> Result<usize, SplittingError> {
        let p = self.prepare()?;
        Ok(p.colength())
    }

    pub fn h0_twist(&self, k: i64) -> Result<usize, SplittingError> {
        Ok(self.prepare()?.h0_twist(k))
    }

    pub fn splitting_type(&self) -> Result<(usize, usize), SplittingError> {
        self.prepare()?.splitting_type()
    }
}

impl PreparedSheaf {
    pub fn colength(&self) -> usize {
        self.zero.colength + self.inf.colength
    }

    /// `h^0(F(k))`: pairs of polynomials of degree at most `k` whose jets lie in
    /// both local lattices.
    pub fn h0_twist(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        let k = k as usize;
        let nvars = 2 * (k + 1);
        // unknown index: comp * (k+1) + degree
        let at0 = |comp: usize, i: usize| (i <= k).then(|| comp * (k + 1) + i);
        // at infinity the local coefficient of u^i is the x^{k-i} coefficient
        let atinf = |comp: usize, i: usize| (i <= k).then(|| comp * (k + 1) + (k - i));
        let mut rows = self.zero.rows(at0, nvars);
        rows.extend(self.inf.rows(atinf, nvars));
        nvars - rank(&rows)
    }

    /// A basis of `H^0(F(k))` as pairs of polynomials of degree at most `k`.
    pub fn sections(&self, k: i64) -> Vec<[UniPoly; 2]> {
        if k < 0 {
            return Vec::new();
        }
        let k = k as usize;
        let nvars = 2 * (k + 1);
        let at0 = |comp: usize, i: usize| (i <= k).then(|| comp * (k + 1) + i);
        let atinf = |comp: usize, i: usize| (i <= k).then(|| comp * (k + 1) + (k - i));
        let mut rows = self.zero.rows(at0, nvars);
        rows.extend(self.inf.rows(atinf, nvars));
        kernel_basis_cols(&rows, nvars)
            .into_iter()
            .map(|v| [UniPoly::new(v[..=k].to_vec()), UniPoly::new(v[k + 1..].to_vec())])
            .collect()
    }

    /// Whether the lattice at infinity is everything.
    pub fn full_at_infinity(&self) -> bool {
        self.inf.colength == 0
    }

    pub fn splitting_type(&self) -> Result<(usize, usize), SplittingError> {
        let total = self.colength();
        let mut m = None;
        for k in 0..=total as i64 {
            if self.h0_twist(k) > 0 {
                m = Some(k as usize);
                break;
            }
        }
        let m = m.ok_or(SplittingError::Inconsistent)?;
        let n = total.checked_sub(m).ok_or(SplittingError::Inconsistent)?;
        if m > n {
            return Err(SplittingError::Inconsistent);
        }
        for k in m as i64..=n as i64 + 1 {
            let expect = (k - m as i64 + 1).max(0) + (k - n as i64 + 1).max(0);
            if self.h0_twist(k) as i64 != expect {
                return Err(SplittingError::Inconsistent);
            }
        }
        Ok((m, n))
    }
}

/// Maroni invariant `n - m`, or its refined value through the cyclic pullback
/// of degree `r` branched over `0` and `infinity`.
pub fn maroni(cover: &MirandaCover, r: usize) -> Result<Rational, SplittingError> {
    if r == 1 {
        return Ok(Rational::from_integer(((cover.n - cover.m) as i64).into()));
    }
    if cover.fiber_type(&Point::infinity())? != FiberType::Etale {
        return Err(CoverError::NotEtaleAtInfinity.into());
    }
    let pulled = cover.cyclic_pullback(r)?;
    let inner = maroni(&pulled, 1)?;
    Ok(inner / Rational::from_integer((r as i64).into()))
}

// ---------------------------------------------------------------------------
// Balancing by twisting with points over infinity.

/// `h^0` of `phi_*O_C(D) (k)` for the triple cover whose normalization is three
/// copies of P^1, with `phi_*O_C / O = F`, and `D = sum d_i t_i` over infinity.
pub fn twisted_h0(f: &PreparedSheaf, d: [usize; 3], k: i64) -> usize {
    // unknowns: coefficients of f_1, f_2, f_3 with deg f_i <= k + d_i
    let degs: Vec<i64> = d.iter().map(|&di| k + di as i64).collect();
    let mut offs = [0usize; 4];
    for i in 0..3 {
        offs[i + 1] = offs[i] + (degs[i] + 1).max(0) as usize;
    }
    let nvars = offs[3];
    if nvars == 0 {
        return 0;
    }
    let var = |sheet: usize, i: usize| -> Option<usize> {
        (degs[sheet] >= 0 && i as i64 <= degs[sheet]).then(|| offs[sheet] + i)
    };
    // (f_2 - f_1, f_3 - f_1) must lie in F at 0
    let mut rows = Vec::new();
    for y in &f.zero.annihilator {
        let mut row = vec![Rational::zero(); nvars];
        for comp in 0..2 {
            for i in 0..f.zero.n {
                let c = &y[comp * f.zero.n + i];
                if c.is_zero() {
                    continue;
                }
                if let Some(v) = var(comp + 1, i) {
                    row[v] += c;
                }
                if let Some(v) = var(0, i) {
                    row[v] -= c;
                }
            }
        }
        rows.push(row);
    }
    nvars - rank(&rows)
}

/// Effective divisor `d_1 t_1 + d_2 t_2 + d_3 t_3` of degree `n - m` over
/// infinity balancing the pushforward, found greedily one point at a time.
pub fn balance_by_twist(f: &LatticeSheaf, m: usize, n: usize) -> Result<[usize; 3], SplittingError> {
    if let Some(g) = &f.gens_at_inf {
        let p = LocalConditions::new(g, f.truncation)?;
        if p.colength != 0 {
            return Err(SplittingError::NotSplitNormalization);
        }
    }
    let prep = f.prepare()?;
    let (sm, sn) = prep.splitting_type()?;
    if (sm, sn) != (m, n) {
        return Err(SplittingError::SplittingMismatch { expected_m: m, expected_n: n, m: sm, n: sn });
    }
    let mut d = [0usize; 3];
    let k = m as i64 - 1;
    for _ in 0..(n - m) {
        let base = twisted_h0(&prep, d, k);
        let mut stepped = false;
        for j in 0..3 {
            let mut cand = d;
            cand[j] += 1;
            if twisted_h0(&prep, cand, k) == base {
                d = cand;
                stepped = true;
                break;
            }
        }
        if !stepped {
            return Err(SplittingError::Inconsistent);
        }
    }
    Ok(d)
}

/// Splitting `(a_1, a_2, a_3)` with `phi_*O_C(D) = O(-a_1) + O(-a_2) + O(-a_3)`,
/// `a_1 <= a_2 <= a_3`, read from the h0 sequence.
pub fn twisted_splitting(f: &PreparedSheaf, d: [usize; 3]) -> Result<[i64; 3], SplittingError> {
    let total = f.colength() as i64 - d.iter().sum::<usize>() as i64;
    let lo = -(d.iter().sum::<usize>() as i64) - 1;
    let hi = f.colength() as i64 + 2;
    let mut prev = 0i64;
    let mut jumps = Vec::new();
    for k in lo..=hi {
        let h = twisted_h0(f, d, k) as i64;
        // h(k) - h(k-1) counts summands O(-a) with a <= k
        let diff = h - prev;
        let already = jumps.len() as i64;
        for _ in already..diff {
            jumps.push(k);
        }
        prev = h;
        if jumps.len() == 3 {
            break;
        }
    }
    if jumps.len() != 3 || jumps.iter().sum::<i64>() != total {
        return Err(SplittingError::Inconsistent);
    }
    Ok([jumps[0], jumps[1], jumps[2]])
}

/// Convenience: a jet pair from two coefficient lists.
pub fn jet_pair(a: &[Rational], b: &[Rational], n: usize) -> [Jet; 2] {
    [Jet::from_slice(a, n), Jet::from_slice(b, n)]
}

pub fn unit_pair(n: usize, comp: usize) -> [Jet; 2] {
    let mut p = [Jet::zero(n), Jet::zero(n)];
    p[comp] = Jet::constant(Rational::one(), n);
    p
}

impl From<ExactError> for SplittingError {
    fn from(_: ExactError) -> Self {
        SplittingError::Inconsistent
    }
}
