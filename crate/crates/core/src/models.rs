//! Cross-ratio and principal-part invariants of unbalanced covers, and the
//! normal form of balanced even-genus covers as points of a weighted space.
//!
//! Points of `Q^3 / Q` are kept as traceless triples, so the sheet
//! permutations act by permuting coordinates and the orbit of a line is read
//! off the pair `[s2^3 : s3^2]` of elementary symmetric functions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::crimps::{CrimpError, CrimpGens, LocalRamType};
use crate::exact_core::{pow_i, rref, Rational, UniPoly};
use crate::splitting::{LatticeSheaf, SplittingError};
use crate::triple_cover::{discriminant_scalar, CoverError, MirandaCover, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("cover is balanced (m = n), the cross-ratio is undefined")]
    BalancedCover,
    #[error("crimp is balanced (m = n), the principal part is undefined")]
    BalancedCrimp,
    #[error("the fiber over infinity does not split into three rational points")]
    NonSplitFiber,
    #[error("normal form needs m = n, got ({m}, {n})")]
    NotBalanced { m: usize, n: usize },
    #[error("all weighted coordinates vanish")]
    ExcludedPoint,
    #[error("triple {0:?} is not a traceless nonzero vector")]
    NotTraceless(Vec<String>),
    #[error("weighted point for genus {g} needs {expected} coordinates in {field}, got {found}")]
    CoordinateCount { g: usize, field: char, expected: usize, found: usize },
    #[error("genus {0} is not even and positive")]
    OddGenus(usize),
    #[error("sections of the expected twist are not one-dimensional: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Crimp(#[from] CrimpError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

// ---------------------------------------------------------------------------
// Lines in Q^3 / Q and their coarse values.

/// A nonzero triple with coordinate sum zero, up to scale.
#[derive(Debug, Clone, Serialize)]
pub struct TracelessLine {
    #[serde(serialize_with = "crate::io::ser_rationals")]
    rep: Vec<Rational>,
}

impl TracelessLine {
    pub fn new(rep: [Rational; 3]) -> Result<Self, ModelError> {
        let sum = &rep[0] + &rep[1] + &rep[2];
        if !sum.is_zero() || rep.iter().all(|c| c.is_zero()) {
            return Err(ModelError::NotTraceless(rep.iter().map(|c| c.to_string()).collect()));
        }
        Ok(TracelessLine { rep: normalize_scale(rep.to_vec()) })
    }

    /// The class of `v` modulo constants.
    pub fn from_values(v: [Rational; 3]) -> Result<Self, ModelError> {
        let mean = (&v[0] + &v[1] + &v[2]) / Rational::from_integer(3.into());
        Self::new([&v[0] - &mean, &v[1] - &mean, &v[2] - &mean])
    }

    /// Representative scaled to coprime integers with a positive first
    /// nonzero entry.
    pub fn rep(&self) -> [Rational; 3] {
        [self.rep[0].clone(), self.rep[1].clone(), self.rep[2].clone()]
    }

    pub fn permuted(&self, perm: [usize; 3]) -> TracelessLine {
        let r = &self.rep;
        TracelessLine { rep: normalize_scale(vec![r[perm[0]].clone(), r[perm[1]].clone(), r[perm[2]].clone()]) }
    }

    pub fn coarse(&self) -> CoarsePoint {
        let [x, y, z] = self.rep();
        let s2 = &x * &y + &x * &z + &y * &z;
        let s3 = &x * &y * &z;
        CoarsePoint::new(&s2 * &s2 * &s2, &s3 * &s3).expect("a nonzero traceless triple has s2 or s3 nonzero")
    }
}

impl PartialEq for TracelessLine {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep
    }
}

impl Eq for TracelessLine {}

fn normalize_scale(v: Vec<Rational>) -> Vec<Rational> {
    let Some(first) = v.iter().find(|c| !c.is_zero()).cloned() else {
        return v;
    };
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = v
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
    let mut s = Rational::new(den, num);
    if first.is_negative() {
        s = -s;
    }
    v.into_iter().map(|c| c * &s).collect()
}

/// A point `[p : q]` of the projective line.
#[derive(Debug, Clone)]
pub struct CoarsePoint {
    pub p: Rational,
    pub q: Rational,
}

impl CoarsePoint {
    pub fn new(p: Rational, q: Rational) -> Option<Self> {
        if p.is_zero() && q.is_zero() {
            None
        } else {
            Some(CoarsePoint { p, q })
        }
    }

    /// Representative `[p/q : 1]`, or `[1 : 0]`.
    pub fn normalized(&self) -> (Rational, Rational) {
        if self.q.is_zero() {
            (Rational::one(), Rational::zero())
        } else {
            (&self.p / &self.q, Rational::one())
        }
    }
}

impl PartialEq for CoarsePoint {
    fn eq(&self, o: &Self) -> bool {
        &self.p * &o.q == &o.p * &self.q
    }
}

impl Eq for CoarsePoint {}

impl fmt::Display for CoarsePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.normalized();
        write!(f, "[{p} : {q}]")
    }
}

impl Serialize for CoarsePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let (p, q) = self.normalized();
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&p.to_string())?;
        seq.serialize_element(&q.to_string())?;
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineInvariant {
    pub line: TracelessLine,
    pub coarse: CoarsePoint,
}

impl LineInvariant {
    fn of(line: TracelessLine) -> Self {
        let coarse = line.coarse();
        LineInvariant { line, coarse }
    }
}

// ---------------------------------------------------------------------------
// Fiber algebras over Q.

/// The three algebra maps `A -> Q` of a split etale fiber with cubic `q`,
/// each given by its values on `1, z, w`.
pub fn fiber_points(q: &[Rational; 4]) -> Result<[[Rational; 3]; 3], ModelError> {
    if discriminant_scalar(q).is_zero() {
        return Err(ModelError::NonSplitFiber);
    }
    let roots = binary_cubic_roots(q).ok_or(ModelError::NonSplitFiber)?;
    let [a, b, c, _] = q;
    let pts = roots.map(|(s, t)| {
        if t.is_zero() {
            // root at s/t = infinity, only when a = 0
            [Rational::one(), -b, -c]
        } else {
            let xi = &s / &t;
            [Rational::one(), a * &xi, a * &xi * &xi + b * &xi]
        }
    });
    debug_assert!(pts.iter().all(|p| is_algebra_map(q, p)));
    Ok(pts)
}

fn is_algebra_map(q: &[Rational; 4], p: &[Rational; 3]) -> bool {
    let table = crate::triple_cover::scalar_table(q);
    (0..3).all(|i| {
        (0..3).all(|j| {
            let prod: Rational = (0..3).map(|k| &table[i][j][k] * &p[k]).sum();
            prod == &p[i] * &p[j]
        })
    })
}

/// Three distinct rational roots `[s : t]` of `a s^3 + b s^2 t + c s t^2 + d t^3`,
/// ordered with `[1 : 0]` first and the rest by decreasing `s/t`.
fn binary_cubic_roots(q: &[Rational; 4]) -> Option<[(Rational, Rational); 3]> {
    let [a, b, c, d] = q;
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    if a.is_zero() {
        out.push((Rational::one(), Rational::zero()));
    }
    let mut aff = UniPoly::new(vec![d.clone(), c.clone(), b.clone(), a.clone()]).rational_roots();
    aff.dedup();
    aff.reverse();
    out.extend(aff.into_iter().map(|r| (r, Rational::one())));
    (out.len() == 3).then(|| [out[0].clone(), out[1].clone(), out[2].clone()])
}

// ---------------------------------------------------------------------------
// Cross-ratio and principal part.

/// Cross-ratio of an unbalanced cover over infinity: the section spanning
/// `H^0(F(m))` is `z`, and its value at infinity is read in the idempotent
/// basis of the fiber.
pub fn cross_ratio(cover: &MirandaCover) -> Result<LineInvariant, ModelError> {
    if cover.m == cover.n {
        return Err(ModelError::BalancedCover);
    }
    let q = cover.cubic_at(&Point::infinity())?;
    let pts = fiber_points(&q)?;
    let z = [pts[0][1].clone(), pts[1][1].clone(), pts[2][1].clone()];
    Ok(LineInvariant::of(TracelessLine::from_values(z)?))
}

/// Cross-ratio of `O + F` with `F` given as a lattice sheaf inside `O^2`
/// (sheet differences `f_2 - f_1, f_3 - f_1`); the normalization is three
/// copies of the line, so the fiber at infinity is already split.
pub fn cross_ratio_lattice(f: &LatticeSheaf) -> Result<LineInvariant, ModelError> {
    let prep = f.prepare()?;
    if !prep.full_at_infinity() {
        return Err(ModelError::NonSplitFiber);
    }
    let (m, n) = prep.splitting_type()?;
    if m == n {
        return Err(ModelError::BalancedCover);
    }
    let secs = prep.sections(m as i64);
    if secs.len() != 1 {
        return Err(ModelError::Inconsistent(format!("h0(F({m})) = {}", secs.len())));
    }
    let [p, q] = &secs[0];
    let value = [Rational::zero(), p.coeff(m), q.coeff(m)];
    Ok(LineInvariant::of(TracelessLine::from_values(value)?))
}

/// Principal part of an etale crimp with quotient exponents `m < n`: the
/// image of the crimp modulo constants lies in `t^m`, and its `t^m`
/// coefficients span a line.
pub fn principal_part(c: &CrimpGens) -> Result<LineInvariant, ModelError> {
    if c.ram != LocalRamType::Etale {
        return Err(CrimpError::UnsupportedRamType(c.ram.name()).into());
    }
    let (m, n) = c.quotient_exponents()?;
    if m == n {
        return Err(ModelError::BalancedCrimp);
    }
    let mut rows = Vec::new();
    for g in &c.gens {
        let diff = [&g[1] - &g[0], &g[2] - &g[0]];
        for j in 0..=m {
            let shifted = [diff[0].mul_t_pow(j), diff[1].mul_t_pow(j)];
            for k in 0..m {
                if !shifted[0].coeff(k).is_zero() || !shifted[1].coeff(k).is_zero() {
                    return Err(ModelError::Inconsistent(format!("element of valuation {k} < {m}")));
                }
            }
            rows.push(vec![shifted[0].coeff(m), shifted[1].coeff(m)]);
        }
    }
    let (r, pivots) = rref(&rows);
    if pivots.len() != 1 {
        return Err(ModelError::Inconsistent(format!("t^{m} coefficients span {} dimensions", pivots.len())));
    }
    let v = &r[0];
    let value = [Rational::zero(), v[0].clone(), v[1].clone()];
    Ok(LineInvariant::of(TracelessLine::from_values(value)?))
}

// ---------------------------------------------------------------------------
// Even genus: the weighted normal form.

/// Coordinates of a balanced cover with `h = (g+2)/2` after fixing the fiber
/// at infinity to `st(s+t)` and killing `2a1 + 2d1 - b1 - c1`. Index `i`
/// is the coefficient of `x^(h-i)` and has weight `i`; `d` starts at index 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WPoint {
    pub g: usize,
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub a: Vec<Rational>,
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub b: Vec<Rational>,
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub c: Vec<Rational>,
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub d: Vec<Rational>,
}

impl WPoint {
    pub fn new(g: usize, a: Vec<Rational>, b: Vec<Rational>, c: Vec<Rational>, d: Vec<Rational>) -> Result<Self, ModelError> {
        if g == 0 || g % 2 == 1 {
            return Err(ModelError::OddGenus(g));
        }
        let h = (g + 2) / 2;
        for (field, v, want) in [('a', &a, h), ('b', &b, h), ('c', &c, h), ('d', &d, h - 1)] {
            if v.len() != want {
                return Err(ModelError::CoordinateCount { g, field, expected: want, found: v.len() });
            }
        }
        let p = WPoint { g, a, b, c, d };
        if p.coords().iter().all(|x| x.is_zero()) {
            return Err(ModelError::ExcludedPoint);
        }
        Ok(p)
    }

    pub fn h(&self) -> usize {
        (self.g + 2) / 2
    }

    /// `a1..ah, b1..bh, c1..ch, d2..dh`.
    pub fn coords(&self) -> Vec<Rational> {
        self.a.iter().chain(&self.b).chain(&self.c).chain(&self.d).cloned().collect()
    }

    pub fn weights(&self) -> Vec<usize> {
        let h = self.h();
        (1..=h).chain(1..=h).chain(1..=h).chain(2..=h).collect()
    }

    pub fn d1(&self) -> Rational {
        (&self.b[0] + &self.c[0] - &self.a[0] * Rational::from_integer(2.into())) / Rational::from_integer(2.into())
    }

    /// Image under `x -> x / t`, which multiplies index `i` by `t^i`.
    pub fn scaled(&self, t: &Rational) -> WPoint {
        let s = |v: &[Rational], from: i64| -> Vec<Rational> {
            v.iter().enumerate().map(|(k, c)| c * pow_i(t, from + k as i64)).collect()
        };
        WPoint { g: self.g, a: s(&self.a, 1), b: s(&self.b, 1), c: s(&self.c, 1), d: s(&self.d, 2) }
    }

    /// The four coefficient polynomials in `x`.
    pub fn polys(&self) -> [UniPoly; 4] {
        let h = self.h();
        let build = |top: Rational, rest: Vec<Rational>| {
            let mut v = vec![Rational::zero(); h + 1];
            v[h] = top;
            for (i, c) in rest.into_iter().enumerate() {
                v[h - 1 - i] = c;
            }
            UniPoly::new(v)
        };
        let mut d = vec![self.d1()];
        d.extend(self.d.iter().cloned());
        [
            build(Rational::zero(), self.a.clone()),
            build(Rational::one(), self.b.clone()),
            build(Rational::one(), self.c.clone()),
            build(Rational::zero(), d),
        ]
    }

    /// The cover `(h, h, a, b, c, d)`; fails if its discriminant vanishes.
    pub fn to_cover(&self) -> Result<MirandaCover, ModelError> {
        let h = self.h();
        let [a, b, c, d] = self.polys();
        Ok(MirandaCover::new(h, h, a, b, c, d)?)
    }
}

/// Matrix `[[g00, g01], [g10, g11]]` acting by `s -> g00 s + g01 t`,
/// `t -> g10 s + g11 t`.
type Mat2 = [[Rational; 2]; 2];

/// Linear map on cubic coefficients induced by `f -> det(g)^-1 f(g(s, t))`.
fn cubic_action(g: &Mat2) -> [[Rational; 4]; 4] {
    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    let ls = [g[0][0].clone(), g[0][1].clone()];
    let lt = [g[1][0].clone(), g[1][1].clone()];
    let mul = |p: &[Rational], l: &[Rational; 2]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            out[i] += c * &l[0];
            out[i + 1] += c * &l[1];
        }
        out
    };
    let mut m: [[Rational; 4]; 4] = Default::default();
    for k in 0..4 {
        let mut p = vec![Rational::one()];
        for _ in 0..3 - k {
            p = mul(&p, &ls);
        }
        for _ in 0..k {
            p = mul(&p, &lt);
        }
        for j in 0..4 {
            m[j][k] = &p[j] / &det;
        }
    }
    m
}

fn apply_scalar(m: &[[Rational; 4]; 4], q: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|j| (0..4).map(|k| &m[j][k] * &q[k]).sum())
}

fn apply_poly(m: &[[Rational; 4]; 4], q: &[UniPoly; 4]) -> [UniPoly; 4] {
    std::array::from_fn(|j| {
        (0..4).fold(UniPoly::zero(), |acc, k| &acc + &q[k].scale(&m[j][k]))
    })
}

/// The `g` with `det(g)^-1 f(g(s, t)) = st(s+t)`, sending `[1:0]`, `[0:1]`,
/// `[1:-1]` to the given roots of `f`.
fn frame(f: &[Rational; 4], roots: &[(Rational, Rational); 3]) -> Mat2 {
    let (r1, r2, r3) = (&roots[0], &roots[1], &roots[2]);
    // l1 r1 - l2 r2 = r3
    let det = -(&r1.0 * &r2.1) + &r2.0 * &r1.1;
    let l1 = (-(&r3.0 * &r2.1) + &r2.0 * &r3.1) / &det;
    let l2 = (&r1.0 * &r3.1 - &r3.0 * &r1.1) / &det;
    let g: Mat2 = [[&l1 * &r1.0, &l2 * &r2.0], [&l1 * &r1.1, &l2 * &r2.1]];
    let image = apply_scalar(&cubic_action(&g), f);
    debug_assert!(image[0].is_zero() && image[3].is_zero() && image[1] == image[2]);
    // scaling g by lambda scales the twisted cubic by lambda
    let lam = image[1].recip();
    [[&g[0][0] * &lam, &g[0][1] * &lam], [&g[1][0] * &lam, &g[1][1] * &lam]]
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Normal form of raw balanced coefficients of degree at most `h`, with the
/// roots at infinity taken in the order `perm`.
fn normalize_raw(q: &[UniPoly; 4], h: usize, perm: [usize; 3]) -> Result<WPoint, ModelError> {
    let top: [Rational; 4] = std::array::from_fn(|i| q[i].coeff(h));
    if discriminant_scalar(&top).is_zero() {
        return Err(ModelError::NonSplitFiber);
    }
    let roots = binary_cubic_roots(&top).ok_or(ModelError::NonSplitFiber)?;
    let ordered = [roots[perm[0]].clone(), roots[perm[1]].clone(), roots[perm[2]].clone()];
    let g = frame(&top, &ordered);
    let moved = apply_poly(&cubic_action(&g), q);
    let coeff = |p: &UniPoly, i: usize| p.coeff(h - i);
    let two = Rational::from_integer(2.into());
    let rel = &two * coeff(&moved[0], 1) + &two * coeff(&moved[3], 1) - coeff(&moved[1], 1) - coeff(&moved[2], 1);
    let beta = rel / (&two * Rational::from_integer((h as i64).into()));
    let shifted: Vec<UniPoly> = moved.iter().map(|p| p.shift(&beta)).collect();
    let read = |p: &UniPoly, from: usize| (from..=h).map(|i| coeff(p, i)).collect::<Vec<_>>();
    WPoint::new(2 * h - 2, read(&shifted[0], 1), read(&shifted[1], 1), read(&shifted[2], 1), read(&shifted[3], 2))
}

/// Normal form of a balanced cover with split etale fiber at infinity.
pub fn even_normal_form(cover: &MirandaCover) -> Result<WPoint, ModelError> {
    if cover.m != cover.n {
        return Err(ModelError::NotBalanced { m: cover.m, n: cover.n });
    }
    let q = [cover.a.clone(), cover.b.clone(), cover.c.clone(), cover.d.clone()];
    normalize_raw(&q, cover.m, PERMS[0])
}

/// The six images of `p` under relabelling the sheets over infinity.
pub fn s3_images(p: &WPoint) -> Vec<WPoint> {
    let q = p.polys();
    PERMS
        .iter()
        .map(|&perm| normalize_raw(&q, p.h(), perm).expect("a weighted point has a split fiber at infinity"))
        .collect()
}

/// Whether some `t` over the algebraic closure gives `q_k = t^(w_k) p_k`.
pub fn scaling_equivalent(p: &[Rational], q: &[Rational], w: &[usize]) -> bool {
    if p.len() != q.len() || p.len() != w.len() {
        return false;
    }
    let mut ratios = Vec::new();
    for ((pk, qk), &wk) in p.iter().zip(q).zip(w) {
        match (pk.is_zero(), qk.is_zero()) {
            (true, true) => {}
            (false, false) => ratios.push((qk / pk, wk as i64)),
            _ => return false,
        }
    }
    if ratios.is_empty() {
        return true;
    }
    // t^gcd is forced to prod r_k^(c_k) with sum c_k w_k = gcd
    let mut gcd = 0i64;
    let mut coef: Vec<i64> = Vec::new();
    for (_, wk) in &ratios {
        let e = gcd.extended_gcd(wk);
        for c in coef.iter_mut() {
            *c *= e.x;
        }
        coef.push(e.y);
        gcd = e.gcd;
    }
    let s = ratios
        .iter()
        .zip(&coef)
        .fold(Rational::one(), |acc, ((r, _), &c)| acc * pow_i(r, c));
    ratios.iter().all(|(r, wk)| *r == pow_i(&s, wk / gcd))
}

/// Equivalence under sheet relabelling and weighted scaling.
pub fn orbit_equivalent(p: &WPoint, q: &WPoint) -> bool {
    if p.g != q.g {
        return false;
    }
    let target = q.coords();
    let w = q.weights();
    s3_images(p).iter().any(|img| scaling_equivalent(&img.coords(), &target, &w))
}
