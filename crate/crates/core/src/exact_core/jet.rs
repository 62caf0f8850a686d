use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat, Rational, UniPoly};

/// Element of Q[[t]] known modulo t^N, with N = `truncation()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    coeffs: Vec<Rational>,
}

impl Jet {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "jet truncation must be positive");
        Jet { coeffs }
    }

    /// Builds a jet of truncation `n` from leading coefficients, padding with
    /// zeros or dropping the excess.
    pub fn from_slice(c: &[Rational], n: usize) -> Self {
        assert!(n > 0);
        let mut v: Vec<Rational> = c.iter().take(n).cloned().collect();
        v.resize(n, Rational::zero());
        Jet { coeffs: v }
    }

    pub fn from_i64(c: &[i64], n: usize) -> Self {
        let v: Vec<Rational> = c.iter().map(|&x| rat(x)).collect();
        Self::from_slice(&v, n)
    }

    pub fn from_poly(p: &UniPoly, n: usize) -> Self {
        Self::from_slice(p.coeffs(), n)
    }

    pub fn zero(n: usize) -> Self {
        Jet { coeffs: vec![Rational::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut j = Self::zero(n);
        j.coeffs[0] = c;
        j
    }

    /// `c t^k`, zero if `k >= n`.
    pub fn monomial(c: Rational, k: usize, n: usize) -> Self {
        let mut j = Self::zero(n);
        if k < n {
            j.coeffs[k] = c;
        }
        j
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: Rational) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    /// t-adic valuation, `None` when the jet vanishes to the known precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn with_truncation(&self, n: usize) -> Jet {
        Jet::from_slice(&self.coeffs, n)
    }

    pub fn scale(&self, s: &Rational) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Multiplication by t^k, keeping the truncation.
    pub fn mul_t_pow(&self, k: usize) -> Jet {
        let n = self.truncation();
        let mut v = vec![Rational::zero(); n];
        if k < n {
            v[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        Jet { coeffs: v }
    }

    /// Division by t^k for a jet of valuation at least k. The top k
    /// coefficients of the result are unknown and set to zero.
    pub fn div_t_pow(&self, k: usize) -> Jet {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        let n = self.truncation();
        let mut v = vec![Rational::zero(); n];
        if k < n {
            v[..n - k].clone_from_slice(&self.coeffs[k..]);
        }
        Jet { coeffs: v }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Jet {
        assert!(self.is_unit(), "inverse of a non-unit jet");
        let n = self.truncation();
        let a0inv = self.coeffs[0].recip();
        let mut inv = vec![Rational::zero(); n];
        inv[0] = a0inv.clone();
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &inv[k - j];
                }
            }
            inv[k] = -s * &a0inv;
        }
        Jet { coeffs: inv }
    }

    /// Substitution t -> t^r; the truncation is multiplied by r.
    pub fn substitute_pow(&self, r: usize) -> Jet {
        assert!(r >= 1);
        let n = self.truncation();
        let mut v = vec![Rational::zero(); n * r];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * r] = c.clone();
        }
        Jet { coeffs: v }
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    fn check(&self, o: &Jet) {
        assert_eq!(
            self.truncation(),
            o.truncation(),
            "jet arithmetic requires equal truncation"
        );
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        self.check(o);
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        self.check(o);
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        self.check(o);
        let n = self.truncation();
        let mut v = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Jet { coeffs: v }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        &self + &o
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        &self - &o
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        &self * &o
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.truncation())
    }
}
