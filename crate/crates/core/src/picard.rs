//! Divisor classes on the rational Picard group spanned by `c1^2` and `c2`,
//! the named classes, nef cones, the chamber fan and dimension counts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_core::{frac, rat, sign, Rational};
use crate::io::{ser_rational, ser_rational_opt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("lambda and delta are dependent in genus 3")]
    BasisDegenerate,
    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(usize),
    #[error("level {l} is not admissible in genus {g}")]
    InvalidLevel { g: usize, l: usize },
    #[error("classes from different genera ({0} and {1})")]
    GenusMismatch(usize, usize),
    #[error("unknown class name `{0}`")]
    UnknownClass(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The class `u c1^2 + v c2` in genus `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DivClass {
    #[serde(serialize_with = "ser_rational")]
    pub u: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub v: Rational,
    pub g: usize,
}

impl DivClass {
    pub fn new(u: Rational, v: Rational, g: usize) -> Self {
        DivClass { u, v, g }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DivClass::new(&self.u * s, &self.v * s, self.g)
    }

    /// Intersection with a curve of the given `c1^2` and `c2` degrees.
    pub fn pair(&self, c1_sq: &Rational, c2: &Rational) -> Rational {
        &self.u * c1_sq + &self.v * c2
    }

    /// `det [self | other]` in `(u, v)` coordinates; its sign says on which
    /// side of the line through `self` the class `other` lies.
    pub fn det(&self, other: &DivClass) -> Rational {
        &self.u * &other.v - &self.v * &other.u
    }

    /// Same ray: a positive multiple.
    pub fn same_ray(&self, other: &DivClass) -> bool {
        self.det(other).is_zero() && (&self.u * &other.u + &self.v * &other.v).is_positive()
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) c1^2 + ({}) c2", self.u, self.v)
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        assert_eq!(self.g, o.g, "classes from different genera");
        DivClass::new(&self.u + &o.u, &self.v + &o.v, self.g)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        assert_eq!(self.g, o.g, "classes from different genera");
        DivClass::new(&self.u - &o.u, &self.v - &o.v, self.g)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-&self.u, -&self.v, self.g)
    }
}

impl Mul<&DivClass> for &Rational {
    type Output = DivClass;
    fn mul(self, d: &DivClass) -> DivClass {
        d.scale(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassName {
    Lambda,
    Delta,
    T,
    BrSq,
    SigmaSq,
    K,
    D(usize),
}

impl std::str::FromStr for ClassName {
    type Err = PicardError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Ok(match t {
            "lambda" | "λ" => ClassName::Lambda,
            "delta" | "δ" => ClassName::Delta,
            "T" => ClassName::T,
            "Br2" | "Br^2" | "Br²" => ClassName::BrSq,
            "sigma2" | "sigma^2" | "σ²" => ClassName::SigmaSq,
            "K" => ClassName::K,
            _ => {
                let inner = t
                    .strip_prefix("D(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix("D_"))
                    .ok_or_else(|| PicardError::UnknownClass(t.into()))?;
                ClassName::D(inner.parse().map_err(|_| PicardError::UnknownClass(t.into()))?)
            }
        })
    }
}

fn check_genus(g: usize) -> Result<(), PicardError> {
    if g < 2 {
        return Err(PicardError::InvalidGenus(g));
    }
    Ok(())
}

fn gi(g: usize) -> i64 {
    g as i64
}

pub fn standard_class(name: ClassName, g: usize) -> Result<DivClass, PicardError> {
    check_genus(g)?;
    let gg = gi(g);
    let c = |u: Rational, v: Rational| DivClass::new(u, v, g);
    Ok(match name {
        ClassName::Lambda => c(frac(gg + 1, 2 * (gg + 2)), rat(-1)),
        ClassName::Delta => c(frac(4 * gg + 6, gg + 2), rat(-9)),
        ClassName::T => c(rat(0), rat(3)),
        ClassName::BrSq => c(rat(4), rat(0)),
        ClassName::SigmaSq => c(frac(-1, (gg + 2) * (gg + 2)), rat(0)),
        ClassName::K => c(frac(-(gg + 3) * (2 * gg + 3), (gg + 2) * (gg + 2)), rat(6)),
        ClassName::D(l) => {
            if l > g + 2 {
                return Err(PicardError::InvalidLevel { g, l });
            }
            d_raw(l, g)
        }
    })
}

/// `D_l = (4 c2 - c1^2) + (2l/b)^2 c1^2` with `b = 2g + 4`.
fn d_raw(l: usize, g: usize) -> DivClass {
    let r = frac(2 * l as i64, 2 * gi(g) + 4);
    DivClass::new(&r * &r - rat(1), rat(4), g)
}

fn d(l: usize, g: usize) -> DivClass {
    standard_class(ClassName::D(l), g).expect("valid level")
}

/// Coefficients `(a, b)` with `D = a lambda + b delta`.
pub fn to_lambda_delta(dc: &DivClass) -> Result<(Rational, Rational), PicardError> {
    let g = dc.g;
    check_genus(g)?;
    if g == 3 {
        return Err(PicardError::BasisDegenerate);
    }
    let lam = standard_class(ClassName::Lambda, g)?;
    let del = standard_class(ClassName::Delta, g)?;
    let det = lam.det(&del);
    // u = a lam.u + b del.u, v = a lam.v + b del.v
    let a = (&dc.u * &del.v - &dc.v * &del.u) / &det;
    let b = (&lam.u * &dc.v - &lam.v * &dc.u) / &det;
    Ok((a, b))
}

/// `lambda` and `delta` coefficients of the right side of
/// `((g-3)/2) D_l = (7g+6) lambda - g delta + (l^2/(g+2)) (9 lambda - delta)`.
pub fn scaled_d_coefficients(g: usize, l: usize) -> (Rational, Rational) {
    let gg = gi(g);
    let s = frac((l * l) as i64, gg + 2);
    (rat(7 * gg + 6) + rat(9) * &s, -rat(gg) - s)
}

/// `lambda` and `delta` coefficients of `3(2g+3)(g-1) lambda - (g^2-3) delta`,
/// a multiple of `K` by `(g+2)(g-3)/2`.
pub fn scaled_k_coefficients(g: usize) -> (Rational, Rational) {
    let gg = gi(g);
    (rat(3 * (2 * gg + 3) * (gg - 1)), rat(-(gg * gg - 3)))
}

/// `lambda / (-delta)` coefficient ratio.
pub fn lambda_ratio(coeffs: &(Rational, Rational)) -> Option<Rational> {
    if coeffs.1.is_zero() {
        None
    } else {
        Some(-&coeffs.0 / &coeffs.1)
    }
}

/// `3 T + delta`, the pullback of the discriminant under the branch map.
pub fn branch_pullback(g: usize) -> Result<DivClass, PicardError> {
    let t = standard_class(ClassName::T, g)?;
    let del = standard_class(ClassName::Delta, g)?;
    Ok(&t.scale(&rat(3)) + &del)
}

fn check_flip_level(g: usize, l: usize) -> Result<(), PicardError> {
    check_genus(g)?;
    if l == 0 || l >= g || (g - l) % 2 != 0 {
        return Err(PicardError::InvalidLevel { g, l });
    }
    Ok(())
}

pub fn nef_cone(g: usize, l: usize) -> Result<(DivClass, DivClass), PicardError> {
    check_flip_level(g, l)?;
    Ok((d(l, g), d(l + 2, g)))
}

/// `(a, b)` with `x = a D_l + b D_{l+2}`.
fn cone_coordinates(x: &DivClass, g: usize, l: usize) -> Result<(Rational, Rational), PicardError> {
    let (p, q) = nef_cone(g, l)?;
    if x.g != g {
        return Err(PicardError::GenusMismatch(x.g, g));
    }
    let det = p.det(&q);
    let a = x.det(&q) / &det;
    let b = p.det(x) / &det;
    Ok((a, b))
}

pub fn is_nef(x: &DivClass, g: usize, l: usize) -> Result<bool, PicardError> {
    let (a, b) = cone_coordinates(x, g, l)?;
    Ok(!a.is_negative() && !b.is_negative())
}

pub fn is_ample(x: &DivClass, g: usize, l: usize) -> Result<bool, PicardError> {
    let (a, b) = cone_coordinates(x, g, l)?;
    Ok(a.is_positive() && b.is_positive())
}

/// True when `K` and `D_{l+2}` lie strictly on opposite sides of the line
/// spanned by `D_l`.
pub fn canonical_opposite_side(g: usize, l: usize) -> Result<bool, PicardError> {
    check_flip_level(g, l)?;
    let k = standard_class(ClassName::K, g)?;
    let dl = d(l, g);
    let s1 = sign(&dl.det(&k));
    let s2 = sign(&dl.det(&d(l + 2, g)));
    Ok(s1 != 0 && s2 != 0 && s1 != s2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub l: usize,
    pub class: DivClass,
    #[serde(serialize_with = "ser_rational_opt")]
    pub lambda_ratio: Option<Rational>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub lower: usize,
    pub upper: usize,
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberFan {
    pub g: usize,
    pub rays: Vec<Ray>,
    pub chambers: Vec<Chamber>,
    #[serde(serialize_with = "ser_rational")]
    pub d0_ratio: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub top_ratio: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub k_ratio: Rational,
}

pub fn chamber_fan(g: usize) -> Result<ChamberFan, PicardError> {
    check_genus(g)?;
    let l0 = g % 2;
    let ratio = |l: usize| lambda_ratio(&scaled_d_coefficients(g, l));
    let mut rays = Vec::new();
    for l in (l0..=g + 2).step_by(2) {
        let mut tags = Vec::new();
        if l == l0 {
            tags.push("effective_edge");
        }
        if g % 2 == 0 && l == 2 {
            tags.push("maroni_contraction");
        }
        if l == g {
            tags.push("hyperelliptic_contraction");
        }
        if l == g + 2 {
            tags.push("outer_edge");
        }
        if tags.is_empty() {
            tags.push("flip_wall");
        }
        rays.push(Ray { l, class: d(l, g), lambda_ratio: ratio(l), label: tags.join(";") });
    }
    let chambers = (l0..=g)
        .step_by(2)
        .map(|l| Chamber { lower: l, upper: l + 2, model: format!("T^{l}") })
        .collect();
    Ok(ChamberFan {
        g,
        rays,
        chambers,
        d0_ratio: ratio(0).expect("nonzero"),
        top_ratio: ratio(g + 2).expect("nonzero"),
        k_ratio: lambda_ratio(&scaled_k_coefficients(g)).expect("nonzero"),
    })
}

impl ChamberFan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,ray_u,ray_v,lambda_ratio,label\n");
        for r in &self.rays {
            let ratio = r.lambda_ratio.as_ref().map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", r.l, r.class.u, r.class.v, ratio, r.label));
        }
        out
    }
}

fn check_stratum_level(g: usize, l: usize) -> Result<(), PicardError> {
    check_genus(g)?;
    if l > g || (g - l) % 2 != 0 {
        return Err(PicardError::InvalidLevel { g, l });
    }
    Ok(())
}

/// Dimensions of the Maroni stratum and of the concentrated-branching
/// stratum with `mu = l`. An empty stratum has dimension `-1`.
pub fn stratum_dimensions(g: usize, l: usize) -> Result<(i64, i64), PicardError> {
    check_stratum_level(g, l)?;
    let (gg, ll) = (gi(g), l as i64);
    let low = 3 * ll <= gg + 2;
    let maroni = if l == 0 {
        2 * gg + 2
    } else if low {
        2 * gg + 3 - ll
    } else {
        (3 * gg + ll) / 2 + 1
    };
    let mu = if low { ll - 1 } else { (gg - ll) / 2 };
    Ok((maroni, mu))
}

/// Codimensions in the `2g+2`-dimensional space of both strata.
pub fn stratum_codimensions(g: usize, l: usize) -> Result<(i64, i64), PicardError> {
    let (a, b) = stratum_dimensions(g, l)?;
    let total = 2 * gi(g) + 2;
    Ok((total - a, total - b))
}

/// Upper bound on the dimension of the locus with branching partition `parts`.
pub fn collision_bound(parts: &[usize]) -> Result<i64, PicardError> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(PicardError::InvalidArgument("need at least two positive parts".into()));
    }
    Ok(parts.len() as i64 - 2 + parts.iter().map(|&b| (b / 6) as i64).sum::<i64>())
}

/// Chern degrees of a test curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCurve {
    pub g: usize,
    pub c1_sq: Rational,
    pub c2: Rational,
}

impl TestCurve {
    pub fn pair(&self, x: &DivClass) -> Rational {
        x.pair(&self.c1_sq, &self.c2)
    }

    pub fn pair_d(&self, j: usize) -> Rational {
        self.pair(&d_raw(j, self.g))
    }
}

fn test_genus(m: usize, n: usize) -> Result<usize, PicardError> {
    (m + n).checked_sub(2).ok_or_else(|| PicardError::InvalidArgument("m + n < 2".into()))
}

/// The blown-up plane family with bundle splitting `(m, n)`.
pub fn test_family_a(m: usize, n: usize) -> Result<TestCurve, PicardError> {
    if m == 0 || m > n {
        return Err(PicardError::InvalidArgument(format!("need 0 < m <= n, got ({m}, {n})")));
    }
    let g = test_genus(m, n)?;
    Ok(TestCurve { g, c1_sq: rat(((m + n) * (m + n)) as i64), c2: rat((m * n) as i64) })
}

/// The weighted family with constant `mu`, normalized to `c1^2 = -1`.
pub fn test_family_b(m: usize, n: usize) -> Result<TestCurve, PicardError> {
    if m == 0 || m >= n {
        return Err(PicardError::InvalidArgument(format!("need 0 < m < n, got ({m}, {n})")));
    }
    let g = test_genus(m, n)?;
    let s = ((m + n) * (m + n)) as i64;
    Ok(TestCurve { g, c1_sq: -Rational::one(), c2: frac(-((m * n) as i64), s) })
}
