//! The normalized algebra over `R = Q[[t]]` as a free rank-3 module.
//!
//! Elements are three t-jets of common truncation `N`:
//! * etale: the three sheets `(f_1, f_2, f_3)`;
//! * total: `h_0 + x h_1 + x^2 h_2` in `R[x]/(x^3 - t)`;
//! * simple: `(h_0 + x h_1, q)` in `R[x]/(x^2 - t) + R`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_core::{Jet, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalRamType {
    Etale,
    Total,
    Simple,
}

impl LocalRamType {
    pub fn name(self) -> &'static str {
        match self {
            LocalRamType::Etale => "etale",
            LocalRamType::Total => "total",
            LocalRamType::Simple => "simple",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "etale" => Some(LocalRamType::Etale),
            "total" => Some(LocalRamType::Total),
            "simple" => Some(LocalRamType::Simple),
            _ => None,
        }
    }

    /// t-valuation of the discriminant of the normalized algebra.
    pub fn base_branch(self) -> usize {
        match self {
            LocalRamType::Etale => 0,
            LocalRamType::Total => 2,
            LocalRamType::Simple => 1,
        }
    }
}

pub type AmbElem = [Jet; 3];

pub fn one(ram: LocalRamType, n: usize) -> AmbElem {
    let o = Jet::one(n);
    let z = Jet::zero(n);
    match ram {
        LocalRamType::Etale => [o.clone(), o.clone(), o],
        LocalRamType::Total => [o, z.clone(), z],
        LocalRamType::Simple => [o.clone(), z, o],
    }
}

pub fn zero(n: usize) -> AmbElem {
    [Jet::zero(n), Jet::zero(n), Jet::zero(n)]
}

pub fn add(a: &AmbElem, b: &AmbElem) -> AmbElem {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub(a: &AmbElem, b: &AmbElem) -> AmbElem {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn scale(a: &AmbElem, s: &Rational) -> AmbElem {
    [a[0].scale(s), a[1].scale(s), a[2].scale(s)]
}

pub fn mul_t_pow(a: &AmbElem, k: usize) -> AmbElem {
    [a[0].mul_t_pow(k), a[1].mul_t_pow(k), a[2].mul_t_pow(k)]
}

/// Multiplication by an element of `R`.
pub fn mul_scalar_jet(a: &AmbElem, r: &Jet) -> AmbElem {
    [&a[0] * r, &a[1] * r, &a[2] * r]
}

pub fn truncation(a: &AmbElem) -> usize {
    a[0].truncation()
}

/// Coefficients of the ramified part as a jet in `x`, of length `e N`.
pub fn to_x_jet(parts: &[Jet], e: usize) -> Vec<Rational> {
    let n = parts[0].truncation();
    let mut v = vec![Rational::zero(); e * n];
    for (i, h) in parts.iter().enumerate().take(e) {
        for j in 0..n {
            v[e * j + i] = h.coeff(j);
        }
    }
    v
}

pub fn from_x_jet(v: &[Rational], e: usize, n: usize) -> Vec<Jet> {
    (0..e)
        .map(|i| {
            let c: Vec<Rational> = (0..n)
                .map(|j| v.get(e * j + i).cloned().unwrap_or_else(Rational::zero))
                .collect();
            Jet::new(c)
        })
        .collect()
}

fn mul_x_jets(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len();
    let mut out = vec![Rational::zero(); len];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().take(len - i).enumerate() {
            if !q.is_zero() {
                out[i + j] += p * q;
            }
        }
    }
    out
}

pub fn mul(ram: LocalRamType, a: &AmbElem, b: &AmbElem) -> AmbElem {
    let n = truncation(a);
    match ram {
        LocalRamType::Etale => [&a[0] * &b[0], &a[1] * &b[1], &a[2] * &b[2]],
        LocalRamType::Total => {
            let p = mul_x_jets(&to_x_jet(a, 3), &to_x_jet(b, 3));
            let v = from_x_jet(&p, 3, n);
            [v[0].clone(), v[1].clone(), v[2].clone()]
        }
        LocalRamType::Simple => {
            let p = mul_x_jets(&to_x_jet(&a[..2], 2), &to_x_jet(&b[..2], 2));
            let v = from_x_jet(&p, 2, n);
            [v[0].clone(), v[1].clone(), &a[2] * &b[2]]
        }
    }
}

/// Flattened coordinates in `Q^{3N}`, R-coordinate blocks one after another.
pub fn flatten(a: &AmbElem) -> Vec<Rational> {
    let mut v = Vec::with_capacity(3 * truncation(a));
    for j in a {
        v.extend(j.coeffs().iter().cloned());
    }
    v
}

/// Value at `t = 0` of an etale element.
pub fn at_zero(a: &AmbElem) -> [Rational; 3] {
    [a[0].coeff(0), a[1].coeff(0), a[2].coeff(0)]
}

pub fn basis(i: usize, n: usize) -> AmbElem {
    let mut e = zero(n);
    e[i] = Jet::constant(Rational::one(), n);
    e
}

pub fn with_truncation(a: &AmbElem, n: usize) -> AmbElem {
    [a[0].with_truncation(n), a[1].with_truncation(n), a[2].with_truncation(n)]
}
