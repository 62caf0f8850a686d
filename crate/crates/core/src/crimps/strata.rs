use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ambient::{self, AmbElem, LocalRamType};
use super::{CrimpError, CrimpGens};
use crate::exact_core::{is_integer, rat, to_i64, Jet, Rational};

/// Free parameters of a normal form: `a_i` multiplies `var^i` in `f`, and the
/// generators are `var^m f` and `var^n` times a complementary unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub pattern: String,
    pub variable: char,
    pub param_exponents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrimpStratum {
    pub b: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub l: Rational,
    pub ram: LocalRamType,
    pub m: usize,
    pub n: usize,
    pub dimension: usize,
    pub components: usize,
    pub normal_form: NormalForm,
}

fn nonneg_int(q: &Rational) -> Option<usize> {
    if !is_integer(q) || q.is_negative() {
        return None;
    }
    to_i64(q).map(|v| v as usize)
}

/// `m` and `n` with `n + m = s` and `n - m = d`.
fn solve_mn(s: &Rational, d: &Rational) -> Option<(usize, usize)> {
    let two = rat(2);
    let m = nonneg_int(&((s - d) / &two))?;
    let n = nonneg_int(&((s + d) / &two))?;
    Some((m, n))
}

/// Classification of crimps with branch degree `b` and `mu = l`; `None` when
/// the stratum is empty.
pub fn stratum(b: usize, l: &Rational, ram: LocalRamType) -> Option<CrimpStratum> {
    if l.is_negative() {
        return None;
    }
    let bq = rat(b as i64);
    match ram {
        LocalRamType::Etale => {
            if b % 2 == 1 {
                return None;
            }
            let (m, n) = solve_mn(&(bq / rat(2)), l)?;
            if 2 * m >= n {
                let d = n - m;
                Some(CrimpStratum {
                    b,
                    l: l.clone(),
                    ram,
                    m,
                    n,
                    dimension: d,
                    components: 1,
                    normal_form: NormalForm {
                        pattern: "f = (0, 1, sum a_i t^i)".into(),
                        variable: 't',
                        param_exponents: (0..d).collect(),
                    },
                })
            } else {
                Some(CrimpStratum {
                    b,
                    l: l.clone(),
                    ram,
                    m,
                    n,
                    dimension: m,
                    components: 3,
                    normal_form: NormalForm {
                        pattern: "f = (1, h, -h) up to sheet order, h = sum a_i t^i".into(),
                        variable: 't',
                        param_exponents: (n - 2 * m..n - m).collect(),
                    },
                })
            }
        }
        LocalRamType::Total => {
            let (m, n) = solve_mn(&(bq * rat(3) / rat(2)), &(l * rat(3)))?;
            if m % 3 == 0 || n % 3 == 0 || m % 3 == n % 3 || 2 * m < n {
                return None;
            }
            let exps: Vec<usize> = (1..n - m).filter(|i| i % 3 == m % 3).collect();
            Some(CrimpStratum {
                b,
                l: l.clone(),
                ram,
                m,
                n,
                dimension: exps.len(),
                components: 1,
                normal_form: NormalForm {
                    pattern: "f = 1 + sum a_i x^i".into(),
                    variable: 'x',
                    param_exponents: exps,
                },
            })
        }
        LocalRamType::Simple => {
            let (m, n) = solve_mn(&bq, &(l * rat(2)))?;
            if m % 2 == n % 2 {
                return None;
            }
            let lo = if 2 * m >= n {
                1
            } else if m % 2 == 1 {
                return None;
            } else {
                n - 2 * m
            };
            let exps: Vec<usize> = (lo..n - m).filter(|i| i % 2 == 1).collect();
            Some(CrimpStratum {
                b,
                l: l.clone(),
                ram,
                m,
                n,
                dimension: exps.len(),
                components: 1,
                normal_form: NormalForm {
                    pattern: "(x^m f, 0) with f = 1 + sum a_i x^i".into(),
                    variable: 'x',
                    param_exponents: exps,
                },
            })
        }
    }
}

fn etale_gens(s: &CrimpStratum, params: &[Rational], component: usize) -> [AmbElem; 2] {
    let (m, n) = (s.m, s.n);
    let trunc = n + 1;
    let mut h = vec![Rational::zero(); trunc];
    for (e, a) in s.normal_form.param_exponents.iter().zip(params) {
        h[*e] = a.clone();
    }
    let h = Jet::new(h);
    let one = Jet::one(trunc);
    let f: AmbElem = if s.components == 1 {
        [Jet::zero(trunc), one, h]
    } else {
        match component {
            1 => [one, h.clone(), -&h],
            2 => [h.clone(), one, -&h],
            _ => [h.clone(), -&h, one],
        }
    };
    let f0 = ambient::at_zero(&f);
    // first standard vector independent of 1 and f(0)
    let e_idx = (0..3)
        .find(|&i| {
            let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
            v[i] = Rational::one();
            det3(&[Rational::one(), Rational::one(), Rational::one()], &f0, &v) != Rational::zero()
        })
        .expect("f(0) is not a constant vector");
    [
        ambient::mul_t_pow(&f, m),
        ambient::mul_t_pow(&ambient::basis(e_idx, trunc), n),
    ]
}

fn det3(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]) -> Rational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn ramified_gens(s: &CrimpStratum, params: &[Rational], e: usize) -> [AmbElem; 2] {
    let (m, n) = (s.m, s.n);
    let trunc = n.div_ceil(e) + 1;
    let len = e * trunc;
    let mut f = vec![Rational::zero(); len];
    f[m] = Rational::one();
    for (i, a) in s.normal_form.param_exponents.iter().zip(params) {
        f[m + i] = a.clone();
    }
    let mut xn = vec![Rational::zero(); len];
    xn[n] = Rational::one();
    let lift = |v: &[Rational]| -> AmbElem {
        let parts = ambient::from_x_jet(v, e, trunc);
        if e == 3 {
            [parts[0].clone(), parts[1].clone(), parts[2].clone()]
        } else {
            [parts[0].clone(), parts[1].clone(), Jet::zero(trunc)]
        }
    };
    [lift(&f), lift(&xn)]
}

/// Instantiate the normal form of a stratum; `component` is 1-based.
pub fn sample_crimp(s: &CrimpStratum, params: &[Rational], component: usize) -> Result<CrimpGens, CrimpError> {
    if params.len() != s.dimension {
        return Err(CrimpError::DimensionMismatch { expected: s.dimension, found: params.len() });
    }
    if component == 0 || component > s.components {
        return Err(CrimpError::BadComponent(component));
    }
    let gens = match s.ram {
        LocalRamType::Etale => etale_gens(s, params, component),
        LocalRamType::Total => ramified_gens(s, params, 3),
        LocalRamType::Simple => ramified_gens(s, params, 2),
    };
    CrimpGens::new(s.ram, gens)
}
