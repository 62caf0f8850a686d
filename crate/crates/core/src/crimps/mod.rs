//! Triple-point singularities over a formal disk, presented as subalgebras of
//! the normalized algebra ("crimps").

pub mod ambient;
mod strata;

pub use ambient::{AmbElem, LocalRamType};
pub use strata::{sample_crimp, stratum, CrimpStratum, NormalForm};

use num_traits::Zero;
use thiserror::Error;

use crate::exact_core::{rank, rat, Jet, JetMatrix, Rational};
use crate::splitting::LatticeSheaf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrimpError {
    #[error("truncation {0} is too small to certify the module")]
    PrecisionExhausted(usize),
    #[error("valuations {0:?} violate the required congruence pattern")]
    InvalidValuations(Vec<usize>),
    #[error("expected {expected} parameters, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("component {0} does not exist for this stratum")]
    BadComponent(usize),
    #[error("operation requires an etale crimp, got {0}")]
    UnsupportedRamType(&'static str),
    #[error("generators have mismatched truncations")]
    TruncationMismatch,
}

/// The module spanned over `R` by `1, g_1, g_2` and `t^N` times the
/// normalized algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrimpGens {
    pub ram: LocalRamType,
    pub truncation: usize,
    pub gens: [AmbElem; 2],
}

/// `mu` and the length `delta` of the normalization quotient, with the branch
/// degree `b = 2 delta + e` (`e` = 0, 2, 1 for etale, total, simple) and the
/// exponents `(m, n)` of the quotient after the base change that splits the
/// normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuDelta {
    pub mu: Rational,
    pub delta: usize,
    pub branch_degree: usize,
    pub exponents: (usize, usize),
}

impl CrimpGens {
    pub fn new(ram: LocalRamType, gens: [AmbElem; 2]) -> Result<Self, CrimpError> {
        let n = ambient::truncation(&gens[0]);
        for g in &gens {
            if g.iter().any(|j| j.truncation() != n) {
                return Err(CrimpError::TruncationMismatch);
            }
        }
        Ok(CrimpGens { ram, truncation: n, gens })
    }

    pub fn one(&self) -> AmbElem {
        ambient::one(self.ram, self.truncation)
    }

    pub fn mul(&self, a: &AmbElem, b: &AmbElem) -> AmbElem {
        ambient::mul(self.ram, a, b)
    }

    /// Rows spanning `S / t^N S~` inside `Q^{3N}`.
    pub fn span_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = Vec::with_capacity(3 * self.truncation);
        let gens = [self.one(), self.gens[0].clone(), self.gens[1].clone()];
        for g in &gens {
            for j in 0..self.truncation {
                rows.push(ambient::flatten(&ambient::mul_t_pow(g, j)));
            }
        }
        rows
    }

    /// Membership modulo `t^N S~`.
    pub fn contains(&self, x: &AmbElem) -> bool {
        let mut rows = self.span_rows();
        let r = rank(&rows);
        rows.push(ambient::flatten(x));
        rank(&rows) == r
    }

    fn check_generic_rank(&self) -> Result<(), CrimpError> {
        let cols = [self.one(), self.gens[0].clone(), self.gens[1].clone()];
        let mut entries = Vec::with_capacity(9);
        for i in 0..3 {
            for c in &cols {
                entries.push(c[i].clone());
            }
        }
        let m = JetMatrix::new(3, 3, entries).map_err(|_| CrimpError::TruncationMismatch)?;
        m.smith_exponents()
            .map(|_| ())
            .map_err(|_| CrimpError::PrecisionExhausted(self.truncation))
    }

    pub fn is_subalgebra(&self) -> Result<bool, CrimpError> {
        self.check_generic_rank()?;
        let g = &self.gens;
        let products = [self.mul(&g[0], &g[0]), self.mul(&g[0], &g[1]), self.mul(&g[1], &g[1])];
        Ok(products.iter().all(|p| self.contains(p)))
    }

    /// Invariants of the module; closure under multiplication is not required.
    pub fn mu_delta(&self) -> Result<MuDelta, CrimpError> {
        self.check_generic_rank()?;
        match self.ram {
            LocalRamType::Etale => self.mu_delta_etale(),
            LocalRamType::Total => self.mu_delta_ramified(3),
            LocalRamType::Simple => self.mu_delta_ramified(2),
        }
    }

    /// Elementary divisors of `S~/S` for an etale crimp.
    pub fn quotient_exponents(&self) -> Result<(usize, usize), CrimpError> {
        if self.ram != LocalRamType::Etale {
            return Err(CrimpError::UnsupportedRamType(self.ram.name()));
        }
        let n = self.truncation;
        let n1 = n + 1;
        let mut cols: Vec<AmbElem> = vec![
            ambient::with_truncation(&self.one(), n1),
            ambient::with_truncation(&self.gens[0], n1),
            ambient::with_truncation(&self.gens[1], n1),
        ];
        for i in 0..3 {
            cols.push(ambient::mul_t_pow(&ambient::basis(i, n1), n));
        }
        let mut entries = Vec::new();
        for i in 0..3 {
            for c in &cols {
                entries.push(c[i].clone());
            }
        }
        let m = JetMatrix::new(3, cols.len(), entries).map_err(|_| CrimpError::TruncationMismatch)?;
        let ex = m
            .smith_exponents()
            .map_err(|_| CrimpError::PrecisionExhausted(n))?;
        if ex[0] != 0 {
            return Err(CrimpError::InvalidValuations(ex));
        }
        Ok((ex[1], ex[2]))
    }

    fn mu_delta_etale(&self) -> Result<MuDelta, CrimpError> {
        let (m, n) = self.quotient_exponents()?;
        Ok(MuDelta {
            mu: rat((n - m) as i64),
            delta: m + n,
            branch_degree: 2 * (m + n),
            exponents: (m, n),
        })
    }

    /// Minimal valuation in each nonzero residue class mod `e` of the image of
    /// `S` in the ramified factor modulo the constants.
    pub fn class_valuations(&self) -> Result<Vec<usize>, CrimpError> {
        let e = match self.ram {
            LocalRamType::Etale => return Err(CrimpError::UnsupportedRamType("etale")),
            LocalRamType::Total => 3,
            LocalRamType::Simple => 2,
        };
        let n = self.truncation;
        let image = |g: &AmbElem| -> Vec<Rational> {
            let mut v = ambient::to_x_jet(&g[..e], e);
            if e == 2 {
                // (p, q) -> p(x) - q(x^2)
                for j in 0..n {
                    v[2 * j] -= g[2].coeff(j);
                }
            }
            v
        };
        let mut rows = Vec::new();
        let gens: Vec<AmbElem> = if e == 3 {
            vec![self.one(), self.gens[0].clone(), self.gens[1].clone()]
        } else {
            vec![self.gens[0].clone(), self.gens[1].clone()]
        };
        for g in &gens {
            for j in 0..n {
                rows.push(image(&ambient::mul_t_pow(g, j)));
            }
        }
        let (_, pivots) = crate::exact_core::rref(&rows);
        let mins: Vec<Option<usize>> = (0..e)
            .map(|r| pivots.iter().copied().filter(|p| p % e == r).min())
            .collect();
        if mins.iter().any(|v| v.is_none()) {
            return Err(CrimpError::InvalidValuations(pivots));
        }
        Ok(mins.into_iter().flatten().collect())
    }

    fn mu_delta_ramified(&self, e: usize) -> Result<MuDelta, CrimpError> {
        let mins = self.class_valuations()?;
        let (mut v1, mut v2) = if e == 3 {
            if mins[0] != 0 {
                return Err(CrimpError::InvalidValuations(mins));
            }
            (mins[1], mins[2])
        } else {
            (mins[0], mins[1])
        };
        if v1 > v2 {
            std::mem::swap(&mut v1, &mut v2);
        }
        let delta = if e == 3 {
            (v1 + v2) / 3 - 1
        } else {
            (v1 + v2 - 1) / 2
        };
        Ok(MuDelta {
            mu: Rational::new(((v2 - v1) as i64).into(), (e as i64).into()),
            delta,
            branch_degree: 2 * delta + self.ram.base_branch(),
            exponents: (v1, v2),
        })
    }

    /// The concentrated-branching cover of P^1 that is this crimp over `0`
    /// and the trivial cover elsewhere, as the sheaf `F` of
    /// `phi_* O_C = O + F` inside `O^2` via `(f_1, f_2, f_3) -> (f_2 - f_1, f_3 - f_1)`.
    pub fn globalize(&self) -> Result<LatticeSheaf, CrimpError> {
        if self.ram != LocalRamType::Etale {
            return Err(CrimpError::UnsupportedRamType(self.ram.name()));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| [&g[1] - &g[0], &g[2] - &g[0]])
            .collect();
        Ok(LatticeSheaf { truncation: self.truncation, gens_at_0: gens, gens_at_inf: None })
    }

    /// Image under a permutation of the three sheets (etale only).
    pub fn permute(&self, perm: [usize; 3]) -> CrimpGens {
        let p = |g: &AmbElem| -> AmbElem { [g[perm[0]].clone(), g[perm[1]].clone(), g[perm[2]].clone()] };
        CrimpGens { ram: self.ram, truncation: self.truncation, gens: [p(&self.gens[0]), p(&self.gens[1])] }
    }
}

/// The singularity `(y^2 - x^{2g})(y - x) = 0`, generated by `1`,
/// `(x, x^g, -x^g)` and `x^{g+1}` times the normalization.
pub fn hyperelliptic_limit(g: usize) -> CrimpGens {
    assert!(g >= 2, "hyperelliptic limit needs g >= 2");
    let n = g + 2;
    let x = Jet::monomial(rat(1), 1, n);
    let xg = Jet::monomial(rat(1), g, n);
    let g1 = [x, xg.clone(), -&xg];
    let g2 = [Jet::zero(n), Jet::zero(n), Jet::monomial(rat(1), g + 1, n)];
    CrimpGens { ram: LocalRamType::Etale, truncation: n, gens: [g1, g2] }
}

/// Coefficient-wise zero test on an ambient element.
pub fn is_zero_elem(a: &AmbElem) -> bool {
    a.iter().all(|j| j.coeffs().iter().all(|c| c.is_zero()))
}
