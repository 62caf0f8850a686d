//! One-parameter families of rank-2 bundles on P^1 over a formal disk,
//! encoded by extension classes, and the semistable-reduction rewrite.
//!
//! A family `(m, n, e)` is the subsheaf `V` of `O^2` that is everything near
//! `x = 0` and, near infinity (coordinate `u = 1/x`), is spanned by the
//! columns `(u^n, 0)` and `(E(u), u^m)` with `E(u) = sum e_i u^{n-1-i}`. It
//! sits in `0 -> O(-n) -> V -> O(-m) -> 0`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_core::{kernel_basis, linear_solve, rank, Jet, JetMatrix, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("transform is not integral: coefficient {index} has valuation {valuation}, needs {needed}")]
    NotIntegral { index: usize, valuation: usize, needed: usize },
    #[error("truncation {0} is too small for the rewrite")]
    PrecisionExhausted(usize),
    #[error("generic fiber has Maroni invariant {generic}, above the level {l}")]
    NonGenericInput { generic: usize, l: usize },
    #[error("level {l} has the wrong parity for splitting ({m}, {n})")]
    InvalidLevel { l: usize, m: usize, n: usize },
    #[error("no balanced central fiber after {0} transforms")]
    IterationLimit(usize),
    #[error("inconsistent rewrite: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFamily {
    pub m: usize,
    pub n: usize,
    pub t_trunc: usize,
    /// `e[i]` is the coefficient of `X^i Y^{n-m-2-i}`.
    pub e: Vec<Jet>,
}

impl ExtensionFamily {
    pub fn new(m: usize, n: usize, t_trunc: usize, e: Vec<Jet>) -> Result<Self, FamilyError> {
        if m >= n {
            return Err(FamilyError::InvalidFamily(format!("need m < n, got ({m}, {n})")));
        }
        if e.len() != n - m - 1 {
            return Err(FamilyError::InvalidFamily(format!(
                "expected {} class coefficients, got {}",
                n - m - 1,
                e.len()
            )));
        }
        if t_trunc == 0 {
            return Err(FamilyError::InvalidFamily("t_trunc must be positive".into()));
        }
        if let Some(j) = e.iter().find(|j| j.truncation() != t_trunc) {
            return Err(FamilyError::InvalidFamily(format!(
                "jet truncation {} differs from t_trunc {t_trunc}",
                j.truncation()
            )));
        }
        Ok(ExtensionFamily { m, n, t_trunc, e })
    }

    pub fn from_i64(m: usize, n: usize, t_trunc: usize, e: &[&[i64]]) -> Result<Self, FamilyError> {
        Self::new(m, n, t_trunc, e.iter().map(|c| Jet::from_i64(c, t_trunc)).collect())
    }

    pub fn split(m: usize, n: usize, t_trunc: usize) -> Result<Self, FamilyError> {
        let len = n.saturating_sub(m + 1);
        Self::new(m, n, t_trunc, vec![Jet::zero(t_trunc); len])
    }

    pub fn is_split(&self) -> bool {
        self.e.iter().all(Jet::is_zero)
    }

    /// `e mod t`.
    pub fn central_class(&self) -> Vec<Rational> {
        self.e.iter().map(|j| j.coeff(0)).collect()
    }

    pub fn central_splitting(&self) -> (usize, usize) {
        central_splitting(self.m, self.n, &self.central_class())
    }

    pub fn central_maroni(&self) -> usize {
        let (a, b) = self.central_splitting();
        b - a
    }

    /// Splitting type of the generic fiber, as far as the truncation can see.
    pub fn generic_splitting(&self) -> (usize, usize) {
        let (m, n) = (self.m, self.n);
        let t = self.t_trunc;
        for k in 0..=n {
            let cols = (k + 1).saturating_sub(m);
            let mut h = (k + 1).saturating_sub(n);
            let rows: Vec<usize> = (k + 1..n).collect();
            if cols > 0 {
                let r = if rows.is_empty() {
                    0
                } else {
                    let entries = rows
                        .iter()
                        .flat_map(|&j| (0..cols).map(move |c| (j, c)))
                        .map(|(j, c)| class_coeff(m, n, j as i64 - c as i64, |i| self.e[i].clone(), || Jet::zero(t)))
                        .collect();
                    let mat = JetMatrix::new(rows.len(), cols, entries).expect("shape");
                    mat.smith_form().iter().filter(|v| v.is_some()).count()
                };
                h += cols - r;
            }
            if h > 0 {
                return (k, m + n - k);
            }
        }
        unreachable!("h0(V(n)) is positive")
    }
}

/// Coefficient of `u^d` in `E(u)`.
fn class_coeff<T>(m: usize, n: usize, d: i64, get: impl Fn(usize) -> T, zero: impl Fn() -> T) -> T {
    if d > m as i64 && d < n as i64 {
        get(n - 1 - d as usize)
    } else {
        zero()
    }
}

/// Splitting type of the extension of `O(-m)` by `O(-n)` with class `e0`.
///
/// `h^0(V(k)) = h^0(O(k-n)) + dim ker(H^0(O(k-m)) -> H^1(O(k-n)))`; a section
/// `Q(u)` of the quotient lifts iff `Q E` has no `u^j` terms for `k < j < n`.
pub fn central_splitting(m: usize, n: usize, e0: &[Rational]) -> (usize, usize) {
    assert!(m < n && e0.len() == n - m - 1, "class length must be n - m - 1");
    for k in 0..=n {
        let cols = (k + 1).saturating_sub(m);
        let mut h = (k + 1).saturating_sub(n);
        if cols > 0 {
            let rows: Vec<Vec<Rational>> = (k + 1..n)
                .map(|j| {
                    (0..cols)
                        .map(|c| class_coeff(m, n, j as i64 - c as i64, |i| e0[i].clone(), Rational::zero))
                        .collect()
                })
                .collect();
            h += cols - rank(&rows);
        }
        if h > 0 {
            return (k, m + n - k);
        }
    }
    unreachable!("h0(V(n)) is positive")
}

/// The class `t^{m-n+1+i} e_i` of the elementary transformation.
pub fn transform_class(f: &ExtensionFamily) -> Result<ExtensionFamily, FamilyError> {
    let d = f.n - f.m - 1;
    for (i, ei) in f.e.iter().enumerate() {
        if let Some(v) = ei.valuation() {
            if v < d - i {
                return Err(FamilyError::NotIntegral { index: i, valuation: v, needed: d - i });
            }
        }
    }
    let t = f.t_trunc.checked_sub(d).filter(|&t| t > 0).ok_or(FamilyError::PrecisionExhausted(f.t_trunc))?;
    let e = f.e.iter().enumerate().map(|(i, ei)| ei.div_t_pow(d - i).with_truncation(t)).collect();
    Ok(ExtensionFamily { m: f.m, n: f.n, t_trunc: t, e })
}

/// Substitutes `t -> t^N`.
pub fn base_change(f: &ExtensionFamily, n: usize) -> ExtensionFamily {
    assert!(n >= 1, "base change exponent must be positive");
    ExtensionFamily {
        m: f.m,
        n: f.n,
        t_trunc: f.t_trunc * n,
        e: f.e.iter().map(|j| j.substitute_pow(n)).collect(),
    }
}

/// Least `N` making the transform of `base_change(f, N)` integral.
pub fn integral_exponent(f: &ExtensionFamily) -> Result<usize, FamilyError> {
    let d = f.n - f.m - 1;
    let mut big = 1;
    for (i, ei) in f.e.iter().enumerate() {
        match ei.valuation() {
            Some(0) if i < d => return Err(FamilyError::NotIntegral { index: i, valuation: 0, needed: d - i }),
            Some(v) => big = big.max((d - i).div_ceil(v)),
            None => {}
        }
    }
    Ok(big)
}

/// Cokernel of the evaluation map along the exceptional curve, as Smith
/// exponents of the `u`-matrix built from the transformed class mod `t`.
pub fn blow_down_cokernel(f: &ExtensionFamily) -> Result<(usize, usize), FamilyError> {
    let g = transform_class(f)?;
    let (m, n) = (f.m, f.n);
    let tr = n + 2;
    let c: Vec<Rational> = g.central_class();
    let mut off = Jet::zero(tr);
    for (i, ci) in c.iter().enumerate() {
        off.set_coeff(n - 1 - i, ci.clone());
    }
    let mat = JetMatrix::from_rows(vec![
        vec![Jet::monomial(Rational::one(), n, tr), Jet::zero(tr)],
        vec![off, Jet::monomial(Rational::one(), m, tr)],
    ])
    .expect("2x2");
    let ex = mat.smith_exponents().map_err(|_| FamilyError::PrecisionExhausted(tr))?;
    Ok((ex[0], ex[1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    BaseChange { n: usize },
    Transform,
    /// Central fiber after a transform, with the `mu` of the singularity the
    /// blow-down produced.
    Central { maroni: usize, mu: usize },
    /// The family rewritten as an extension matching its central splitting.
    Represent { m: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub outer_iterations: usize,
}

impl ReductionTrace {
    pub fn transforms(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TraceStep::Transform)).count()
    }

    pub fn mu_values(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                TraceStep::Central { mu, .. } => Some(*mu),
                _ => None,
            })
            .collect()
    }
}

/// Rewrites `f` by base changes and elementary transformations until its
/// central fiber has Maroni invariant at most `l`.
pub fn balance_limit(f: &ExtensionFamily, l: usize) -> Result<(ExtensionFamily, ReductionTrace), FamilyError> {
    let gap = f.n - f.m;
    if l % 2 != gap % 2 {
        return Err(FamilyError::InvalidLevel { l, m: f.m, n: f.n });
    }
    let mut trace = ReductionTrace::default();
    if f.central_maroni() <= l {
        return Ok((f.clone(), trace));
    }
    let (gm, gn) = f.generic_splitting();
    if gn - gm > l {
        return Err(FamilyError::NonGenericInput { generic: gn - gm, l });
    }
    let cap = gap * f.t_trunc;
    let mut cur = f.clone();
    let mut transforms = 0;
    trace.outer_iterations = 1;
    loop {
        let (cm, cn) = cur.central_splitting();
        if cn - cm <= l {
            break;
        }
        if (cm, cn) != (cur.m, cur.n) {
            cur = represent(&cur, cm, cn)?;
            trace.steps.push(TraceStep::Represent { m: cm, n: cn });
            trace.outer_iterations += 1;
            continue;
        }
        if cur.is_split() {
            return Err(FamilyError::PrecisionExhausted(cur.t_trunc));
        }
        transforms += 1;
        if transforms > cap {
            return Err(FamilyError::IterationLimit(cap));
        }
        let big = integral_exponent(&cur)?;
        if big > 1 {
            cur = base_change(&cur, big);
            trace.steps.push(TraceStep::BaseChange { n: big });
        }
        let (bm, bn) = blow_down_cokernel(&cur)?;
        cur = transform_class(&cur)?;
        trace.steps.push(TraceStep::Transform);
        trace.steps.push(TraceStep::Central { maroni: cur.central_maroni(), mu: bn - bm });
    }
    Ok((cur, trace))
}

/// Polynomial in one variable with coefficients in `Q[t]/t^T`, stored by
/// `t`-order.
type TPoly = Vec<UniPoly>;

fn tp_mul(a: &TPoly, b: &TPoly, t: usize) -> TPoly {
    let mut out = vec![UniPoly::zero(); t];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(t.saturating_sub(i)) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn tp_sub(a: &TPoly, b: &TPoly) -> TPoly {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `x^{-k} a`, failing unless every term has degree at least `k`.
fn tp_shift_down(a: &TPoly, k: usize) -> Option<TPoly> {
    a.iter()
        .map(|p| {
            let c = p.coeffs();
            if c.iter().take(k).any(|x| !x.is_zero()) {
                None
            } else {
                Some(UniPoly::new(c.iter().skip(k).cloned().collect()))
            }
        })
        .collect()
}

/// Coefficient of `x^d` as a jet.
fn tp_coeff(a: &TPoly, d: usize, t: usize) -> Jet {
    Jet::new((0..t).map(|s| a[s].coeff(d)).collect())
}

/// Solves `p delta - q gamma = 1` over `Q[t]/t^T [x]`, order by order in `t`.
fn bezout(p: &TPoly, q: &TPoly, t: usize) -> Result<(TPoly, TPoly), FamilyError> {
    let (p0, q0) = (&p[0], &q[0]);
    let (g, _, r0) = p0.xgcd(&-q0);
    if g != UniPoly::constant(Rational::one()) {
        return Err(FamilyError::Inconsistent("section vanishes on the central fiber".into()));
    }
    let mut gam: TPoly = Vec::with_capacity(t);
    let mut del: TPoly = Vec::with_capacity(t);
    for s in 0..t {
        let mut rho = if s == 0 { UniPoly::constant(Rational::one()) } else { UniPoly::zero() };
        for r in 1..=s {
            rho = &rho - &(&(&p[r] * &del[s - r]) - &(&q[r] * &gam[s - r]));
        }
        let (ga, de) = if p0.is_zero() {
            (rho.scale(&-q0.coeff(0).recip()), UniPoly::zero())
        } else {
            let ga = (&rho * &r0).div_rem(p0).1;
            let (de, rem) = (&rho + &(q0 * &ga)).div_rem(p0);
            if !rem.is_zero() {
                return Err(FamilyError::Inconsistent("Bezout lift failed".into()));
            }
            (ga, de)
        };
        gam.push(ga);
        del.push(de);
    }
    Ok((gam, del))
}

/// Rewrites `f` as an extension of `O(-m2)` by `O(-n2)`, where `(m2, n2)` is
/// the central splitting. The new class vanishes mod `t`.
pub fn represent(f: &ExtensionFamily, m2: usize, n2: usize) -> Result<ExtensionFamily, FamilyError> {
    let (m, n, t) = (f.m, f.n, f.t_trunc);
    if m2 + n2 != m + n || m2 > n2 || m2 < m {
        return Err(FamilyError::Inconsistent(format!("({m2}, {n2}) is not a splitting of ({m}, {n})")));
    }
    if m2 == n2 {
        return Err(FamilyError::Inconsistent("balanced fiber needs no extension".into()));
    }
    // E(u) by t-order
    let big_e: TPoly = (0..t)
        .map(|s| {
            let mut c = vec![Rational::zero(); n];
            for (i, ei) in f.e.iter().enumerate() {
                c[n - 1 - i] = ei.coeff(s);
            }
            UniPoly::new(c)
        })
        .collect();
    // sigma = (p, q) in H^0(V(n2)): unknowns p_0..p_{n2}, q_0..q_{n2-m}
    let np = n2 + 1;
    let nq = n2 - m + 1;
    let nv = np + nq;
    let system = |s: usize| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|j| {
                let mut row = vec![Rational::zero(); nv];
                if s == 0 && j <= n2 {
                    row[n2 - j] = Rational::one();
                }
                for b in 0..nq {
                    // q_b sits at u^{n2-m-b} in c2
                    let a = n2 - m - b;
                    if j >= a {
                        let c = big_e[s].coeff(j - a);
                        if !c.is_zero() {
                            row[np + b] -= c;
                        }
                    }
                }
                row
            })
            .collect()
    };
    let l0 = system(0);
    let lk: Vec<Vec<Vec<Rational>>> = (1..t).map(system).collect();
    let split = |v: &[Rational]| (UniPoly::new(v[..np].to_vec()), UniPoly::new(v[np..].to_vec()));
    let c_at_inf = |p: &TPoly, q: &TPoly| -> Option<(TPoly, TPoly)> {
        let ptil: TPoly = p.iter().map(|x| reverse(x, n2)).collect();
        let c2: TPoly = q.iter().map(|x| reverse(x, n2 - m)).collect();
        let num = tp_sub(&ptil, &tp_mul(&c2, &big_e, p.len()));
        Some((tp_shift_down(&num, n)?, c2))
    };
    let ker = kernel_basis(&l0);
    let unit = UniPoly::constant(Rational::one());
    let sigma0 = candidates(&ker)
        .into_iter()
        .find(|v| {
            let (p0, q0) = split(v);
            if p0.gcd(&q0) != unit {
                return false;
            }
            match c_at_inf(&vec![p0], &vec![q0]) {
                Some((c1, c2)) => c1[0].gcd(&c2[0]) == unit,
                None => false,
            }
        })
        .ok_or_else(|| FamilyError::Inconsistent("no nowhere-vanishing section".into()))?;
    let mut sig = vec![sigma0];
    for s in 1..t {
        let mut rhs = vec![Rational::zero(); n];
        for r in 1..=s {
            for (j, row) in lk[r - 1].iter().enumerate() {
                let dot: Rational = row.iter().zip(&sig[s - r]).map(|(a, b)| a * b).sum();
                rhs[j] -= dot;
            }
        }
        let x = linear_solve(&l0, &rhs).map_err(|_| FamilyError::Inconsistent("section does not lift".into()))?;
        sig.push(x);
    }
    let (p, q): (TPoly, TPoly) = sig.iter().map(|v| split(v)).unzip();
    let (gam0, del0) = bezout(&p, &q, t)?;
    let (c1, c2) = c_at_inf(&p, &q).ok_or_else(|| FamilyError::Inconsistent("section leaves the lattice".into()))?;
    let (gami, deli) = bezout(&c1, &c2, t)?;
    // s_inf = gam' (u^n, 0) + del' (E, u^m) in the frame of O^2
    let un = vec![UniPoly::monomial(Rational::one(), n)];
    let um = vec![UniPoly::monomial(Rational::one(), m)];
    let s1 = {
        let a = tp_mul(&gami, &pad(un, t), t);
        let b = tp_mul(&deli, &big_e, t);
        a.iter().zip(&b).map(|(x, y)| x + y).collect::<TPoly>()
    };
    let s2 = tp_mul(&deli, &pad(um, t), t);
    // kappa = x^{m2} det[s_inf | s_0]; the new e_i is its x^{-(n2-m2-1-i)} term
    let deg = |a: &TPoly| a.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let bmax = deg(&gam0).max(deg(&del0));
    let e_new: Vec<Jet> = (0..n2 - m2 - 1)
        .map(|i| {
            let mut acc = Jet::zero(t);
            for b in 0..=bmax {
                let a = b + n2 - 1 - i;
                let x1 = &tp_coeff(&s1, a, t) * &tp_coeff(&del0, b, t);
                let x2 = &tp_coeff(&s2, a, t) * &tp_coeff(&gam0, b, t);
                acc = &(&acc + &x1) - &x2;
            }
            acc
        })
        .collect();
    if e_new.iter().any(|j| !j.coeff(0).is_zero()) {
        return Err(FamilyError::Inconsistent("rewritten class is nonzero mod t".into()));
    }
    ExtensionFamily::new(m2, n2, t, e_new)
}

fn pad(mut a: TPoly, t: usize) -> TPoly {
    a.resize(t, UniPoly::zero());
    a
}

/// `u^d p(1/u)` for `deg p <= d`.
fn reverse(p: &UniPoly, d: usize) -> UniPoly {
    UniPoly::new((0..=d).map(|j| p.coeff(d - j)).collect())
}

/// Basis vectors, then a few fixed combinations of them.
fn candidates(basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = basis.to_vec();
    let Some(len) = basis.first().map(Vec::len) else { return out };
    for pw in 0..6u32 {
        for shift in 1..4i64 {
            let mut v = vec![Rational::zero(); len];
            for (k, b) in basis.iter().enumerate() {
                let w = Rational::from_integer(((k as i64 + shift).pow(pw + 1) % 7 + 1).into());
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &w * y;
                }
            }
            out.push(v);
        }
    }
    out
}

/// Hassett weighted stability of `(P^1, eps Sigma + sigma)` on an irreducible
/// base.
pub fn epsilon_stable(mults: &[usize], sigma_disjoint: bool, eps: &Rational) -> bool {
    let b: usize = mults.iter().sum();
    let one = Rational::one();
    sigma_disjoint
        && mults.iter().all(|&k| eps * Rational::from_integer(k.into()) <= one)
        && eps * Rational::from_integer(b.into()) - one > Rational::zero()
}
