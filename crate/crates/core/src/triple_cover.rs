//! Triple covers of P^1 in Miranda form: a splitting `(m, n)` of the Tschirnhausen
//! bundle together with a binary cubic `a s^3 + b s^2 t + c s t^2 + d t^3`.
//!
//! Polynomials are written in the affine coordinate `x = X/Y`; the point at
//! infinity `[1:0]` is read off the top allowed-degree coefficients.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_core::{rat, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("m = {m} must not exceed n = {n}")]
    Unordered { m: usize, n: usize },
    #[error("coefficient {name} has degree {deg}, allowed at most {bound}")]
    DegreeBound { name: char, deg: usize, bound: i64 },
    #[error("discriminant vanishes identically")]
    DegenerateCover,
    #[error("the fiber over the marked point is not etale")]
    NotEtaleAtInfinity,
    #[error("invalid point [0:0]")]
    InvalidPoint,
    #[error("cyclic pullback degree must be 1, 2 or 3, got {0}")]
    BadDegree(usize),
}

/// Ramification shape of a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberType {
    Etale,
    Simple,
    Total,
}

/// A point of P^1 in homogeneous rational coordinates `[X : Y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn infinity() -> Self {
        Point { x: Rational::one(), y: Rational::zero() }
    }

    pub fn affine(x: Rational) -> Self {
        Point { x, y: Rational::one() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirandaCover {
    pub m: usize,
    pub n: usize,
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
    pub d: UniPoly,
}

/// Homogeneous form of degree `degree` in `[X:Y]`, stored through its affine
/// polynomial: the coefficient of `X^i Y^(degree-i)` is `affine.coeff(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: usize,
    pub affine: UniPoly,
}

impl BinaryForm {
    pub fn eval(&self, p: &Point) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..=self.degree {
            let c = self.affine.coeff(i);
            if c.is_zero() {
                continue;
            }
            acc += c * crate::exact_core::pow_i(&p.x, i as i64)
                * crate::exact_core::pow_i(&p.y, (self.degree - i) as i64);
        }
        acc
    }

    /// Order of vanishing at `[1:0]`.
    pub fn order_at_infinity(&self) -> usize {
        match self.affine.degree() {
            Some(d) => self.degree - d,
            None => self.degree,
        }
    }
}

/// Element of the cover algebra: coefficients on `1, z, w`.
pub type AlgElem = [UniPoly; 3];

/// Structure constants: `table[i][j][k]` is the `e_k` coefficient of `e_i e_j`
/// in the basis `e_0 = 1, e_1 = z, e_2 = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverAlgebra {
    pub table: [[[UniPoly; 3]; 3]; 3],
}

impl MirandaCover {
    pub fn new(
        m: usize,
        n: usize,
        a: UniPoly,
        b: UniPoly,
        c: UniPoly,
        d: UniPoly,
    ) -> Result<Self, CoverError> {
        let cover = MirandaCover { m, n, a, b, c, d };
        cover.validate()?;
        Ok(cover)
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        let (m, n) = (self.m, self.n);
        if m > n {
            return Err(CoverError::Unordered { m, n });
        }
        for (name, p, bound) in self.named_coeffs() {
            if let Some(deg) = p.degree() {
                if (deg as i64) > bound {
                    return Err(CoverError::DegreeBound { name, deg, bound });
                }
            }
        }
        if self.discriminant_poly().is_zero() {
            return Err(CoverError::DegenerateCover);
        }
        Ok(())
    }

    /// Allowed degrees of `a, b, c, d`; negative means the coefficient is zero.
    pub fn degree_bounds(&self) -> [i64; 4] {
        let (m, n) = (self.m as i64, self.n as i64);
        [2 * m - n, m, n, 2 * n - m]
    }

    fn named_coeffs(&self) -> [(char, &UniPoly, i64); 4] {
        let [ba, bb, bc, bd] = self.degree_bounds();
        [('a', &self.a, ba), ('b', &self.b, bb), ('c', &self.c, bc), ('d', &self.d, bd)]
    }

    pub fn genus(&self) -> i64 {
        self.m as i64 + self.n as i64 - 2
    }

    pub fn branch_degree(&self) -> usize {
        2 * (self.m + self.n)
    }

    fn discriminant_poly(&self) -> UniPoly {
        discriminant_of(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn discriminant(&self) -> Result<BinaryForm, CoverError> {
        let p = self.discriminant_poly();
        if p.is_zero() {
            return Err(CoverError::DegenerateCover);
        }
        Ok(BinaryForm { degree: self.branch_degree(), affine: p })
    }

    /// Cubic coefficients `(a, b, c, d)` of the fiber over `p`, up to the
    /// weighted rescaling that does not affect the root pattern.
    pub fn cubic_at(&self, p: &Point) -> Result<[Rational; 4], CoverError> {
        if p.y.is_zero() {
            if p.x.is_zero() {
                return Err(CoverError::InvalidPoint);
            }
            let bounds = self.degree_bounds();
            let top = |q: &UniPoly, b: i64| {
                if b < 0 {
                    Rational::zero()
                } else {
                    q.coeff(b as usize)
                }
            };
            Ok([
                top(&self.a, bounds[0]),
                top(&self.b, bounds[1]),
                top(&self.c, bounds[2]),
                top(&self.d, bounds[3]),
            ])
        } else {
            let x0 = &p.x / &p.y;
            Ok([self.a.eval(&x0), self.b.eval(&x0), self.c.eval(&x0), self.d.eval(&x0)])
        }
    }

    pub fn fiber_type(&self, p: &Point) -> Result<FiberType, CoverError> {
        cubic_shape(&self.cubic_at(p)?)
    }

    /// Pullback along `x -> x^r`, totally ramified over `0` and `infinity`.
    /// Whether the marked fiber is etale is left to the caller.
    pub fn cyclic_pullback(&self, r: usize) -> Result<MirandaCover, CoverError> {
        if !(1..=3).contains(&r) {
            return Err(CoverError::BadDegree(r));
        }
        MirandaCover::new(
            r * self.m,
            r * self.n,
            self.a.compose_pow(r),
            self.b.compose_pow(r),
            self.c.compose_pow(r),
            self.d.compose_pow(r),
        )
    }

    pub fn algebra(&self) -> CoverAlgebra {
        algebra_from_cubic(self)
    }
}

/// Classical discriminant of the binary cubic.
pub fn discriminant_of(a: &UniPoly, b: &UniPoly, c: &UniPoly, d: &UniPoly) -> UniPoly {
    let k = |v: i64| UniPoly::constant(rat(v));
    let abcd = &(&(a * b) * c) * d;
    let b3d = &(&(b * b) * b) * d;
    let b2c2 = &(b * b) * &(c * c);
    let ac3 = &(&(c * c) * c) * a;
    let a2d2 = &(a * a) * &(d * d);
    let mut acc = &k(18) * &abcd;
    acc = &acc - &(&k(4) * &b3d);
    acc = &acc + &b2c2;
    acc = &acc - &(&k(4) * &ac3);
    &acc - &(&k(27) * &a2d2)
}

pub fn discriminant_scalar(q: &[Rational; 4]) -> Rational {
    let [a, b, c, d] = q;
    rat(18) * a * b * c * d - rat(4) * b * b * b * d + b * b * c * c
        - rat(4) * a * c * c * c
        - rat(27) * a * a * d * d
}

/// Root pattern of a binary cubic over Q, decided by a gcd computation.
pub fn cubic_shape(q: &[Rational; 4]) -> Result<FiberType, CoverError> {
    if q.iter().all(|c| c.is_zero()) {
        return Err(CoverError::DegenerateCover);
    }
    let form = |s: &Rational, t: &Rational| -> Rational {
        &q[0] * s * s * s + &q[1] * s * s * t + &q[2] * s * t * t + &q[3] * t * t * t
    };
    // pick k with F(k, 1) != 0, then p(t) = F(1 + k t, t) has degree exactly 3
    let k = (0..4)
        .map(rat)
        .find(|k| !form(k, &Rational::one()).is_zero())
        .expect("a nonzero cubic has at most three roots");
    let one = UniPoly::constant(Rational::one());
    let t = UniPoly::x();
    let s = &one + &t.scale(&k);
    let s2 = &s * &s;
    let t2 = &t * &t;
    let p = &(&(&(&s2 * &s).scale(&q[0]) + &(&s2 * &t).scale(&q[1]))
        + &(&s * &t2).scale(&q[2]))
        + &(&t2 * &t).scale(&q[3]);
    debug_assert_eq!(p.degree(), Some(3));
    let g = p.gcd(&p.derivative());
    Ok(match g.degree() {
        Some(0) => FiberType::Etale,
        Some(1) => FiberType::Simple,
        _ => FiberType::Total,
    })
}

// ---------------------------------------------------------------------------
// Symbolic derivation of the multiplication table.

/// Laurent monomial exponents in (a, b, c, d).
type Mono = [i32; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct MPoly(BTreeMap<Mono, Rational>);

impl MPoly {
    fn var(i: usize) -> MPoly {
        let mut e = [0; 4];
        e[i] = 1;
        MPoly::mono(e, Rational::one())
    }

    fn mono(e: Mono, c: Rational) -> MPoly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        MPoly(m)
    }

    fn konst(c: i64) -> MPoly {
        MPoly::mono([0; 4], rat(c))
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let entry = m.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                m.remove(e);
            }
        }
        MPoly(m)
    }

    fn neg(&self) -> MPoly {
        MPoly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut acc = MPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                acc = acc.add(&MPoly::mono(e, c1 * c2));
            }
        }
        acc
    }

    /// Multiplication by a^k, k possibly negative.
    fn shift_a(&self, k: i32) -> MPoly {
        MPoly(self.0.iter().map(|(e, c)| ([e[0] + k, e[1], e[2], e[3]], c.clone())).collect())
    }

    fn is_polynomial(&self) -> bool {
        self.0.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn eval(&self, vals: &[&UniPoly; 4]) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (e, c) in &self.0 {
            let mut term = UniPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = &term * vals[i];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    fn eval_scalar(&self, vals: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.0 {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                term *= crate::exact_core::pow_i(&vals[i], k as i64);
            }
            acc += term;
        }
        acc
    }
}

/// Polynomial in xi with MPoly coefficients, reduced modulo
/// `a xi^3 + b xi^2 + c xi + d`.
#[derive(Clone, Debug)]
struct XiPoly(Vec<MPoly>);

impl XiPoly {
    fn mul(&self, o: &XiPoly) -> XiPoly {
        let mut v = vec![MPoly::default(); self.0.len() + o.0.len() - 1];
        for (i, p) in self.0.iter().enumerate() {
            for (j, q) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&p.mul(q));
            }
        }
        XiPoly(v).reduce()
    }

    fn reduce(mut self) -> XiPoly {
        // xi^3 = -(b xi^2 + c xi + d) / a
        while self.0.len() > 3 {
            let top = self.0.pop().unwrap();
            let k = self.0.len() - 3;
            let f = top.shift_a(-1).neg();
            self.0[k + 2] = self.0[k + 2].add(&f.mul(&MPoly::var(1)));
            self.0[k + 1] = self.0[k + 1].add(&f.mul(&MPoly::var(2)));
            self.0[k] = self.0[k].add(&f.mul(&MPoly::var(3)));
        }
        self.0.resize(3, MPoly::default());
        self
    }

    /// Coordinates on the basis `1, z = a xi, w = a xi^2 + b xi`.
    fn coords(&self) -> [MPoly; 3] {
        let p = &self.0;
        let w = p[2].shift_a(-1);
        let z = p[1].add(&MPoly::var(1).mul(&w).neg()).shift_a(-1);
        [p[0].clone(), z, w]
    }
}

fn universal_table() -> &'static [[[MPoly; 3]; 3]; 3] {
    static TABLE: OnceLock<[[[MPoly; 3]; 3]; 3]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let basis = [
            XiPoly(vec![MPoly::konst(1), MPoly::default(), MPoly::default()]),
            XiPoly(vec![MPoly::default(), MPoly::var(0), MPoly::default()]),
            XiPoly(vec![MPoly::default(), MPoly::var(1), MPoly::var(0)]),
        ];
        let mut table: [[[MPoly; 3]; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let coords = basis[i].mul(&basis[j]).coords();
                for c in &coords {
                    assert!(c.is_polynomial(), "structure constant is not integral in a");
                }
                table[i][j] = coords;
            }
        }
        table
    })
}

/// Multiplication table of the cover algebra, obtained by writing `z, w` in
/// terms of a root `xi` of the cubic and reducing products.
pub fn algebra_from_cubic(cover: &MirandaCover) -> CoverAlgebra {
    let vals = [&cover.a, &cover.b, &cover.c, &cover.d];
    let u = universal_table();
    let table = std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|k| u[i][j][k].eval(&vals)))
    });
    CoverAlgebra { table }
}

/// Structure constants of the fiber algebra for scalar cubic coefficients.
pub fn scalar_table(q: &[Rational; 4]) -> [[[Rational; 3]; 3]; 3] {
    let u = universal_table();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|k| u[i][j][k].eval_scalar(q)))
    })
}

impl CoverAlgebra {
    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out: AlgElem = Default::default();
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o = &*o + &(&xy * &self.table[i][j][k]);
                }
            }
        }
        out
    }

    pub fn basis(i: usize) -> AlgElem {
        let mut e: AlgElem = Default::default();
        e[i] = UniPoly::constant(Rational::one());
        e
    }

    /// Trace of multiplication by `x`.
    pub fn trace(&self, x: &AlgElem) -> UniPoly {
        let mut acc = UniPoly::zero();
        for k in 0..3 {
            let col = self.mul(x, &Self::basis(k));
            acc = &acc + &col[k];
        }
        acc
    }

    /// Determinant of the trace form `tr(e_i e_j)`.
    pub fn trace_form_discriminant(&self) -> UniPoly {
        let m: Vec<Vec<UniPoly>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| self.trace(&self.mul(&Self::basis(i), &Self::basis(j))))
                    .collect()
            })
            .collect();
        let d2 = |a: &UniPoly, b: &UniPoly, c: &UniPoly, d: &UniPoly| &(a * d) - &(b * c);
        let t0 = &m[0][0] * &d2(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
        let t1 = &m[0][1] * &d2(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
        let t2 = &m[0][2] * &d2(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
        &(&t0 - &t1) + &t2
    }
}
