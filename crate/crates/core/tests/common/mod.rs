#![allow(dead_code)]

pub mod fp;

use fp::Amb;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trigonal::crimps::{CrimpGens, CrimpStratum, LocalRamType};
use trigonal::exact_core::{frac, rat, Jet, Rational, UniPoly};
use trigonal::families::ExtensionFamily;
use trigonal::models::WPoint;
use trigonal::triple_cover::{FiberType, MirandaCover, Point};

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: i64) -> UniPoly {
    if max_deg < 0 {
        return UniPoly::zero();
    }
    UniPoly::new((0..=max_deg).map(|_| small_rat(rng)).collect())
}

/// Random cover with the given splitting, nondegenerate and etale over infinity.
pub fn random_cover(rng: &mut ChaCha8Rng, m: usize, n: usize) -> MirandaCover {
    let (mi, ni) = (m as i64, n as i64);
    loop {
        let a = random_poly(rng, 2 * mi - ni);
        let b = random_poly(rng, mi);
        let c = random_poly(rng, ni);
        let d = random_poly(rng, 2 * ni - mi);
        if let Ok(cov) = MirandaCover::new(m, n, a, b, c, d) {
            if cov.fiber_type(&Point::infinity()) == Ok(FiberType::Etale) {
                return cov;
            }
        }
    }
}

pub fn random_splitting(rng: &mut ChaCha8Rng, max: usize) -> (usize, usize) {
    let m = rng.gen_range(1..=max);
    let n = rng.gen_range(m..=(2 * m).min(max + m));
    (m, n)
}

pub fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

pub fn konst(c: i64) -> UniPoly {
    UniPoly::constant(rat(c))
}

/// Random etale crimp drawn from the normal forms, sheets shuffled.
pub fn random_etale_crimp(rng: &mut ChaCha8Rng, max_b: usize) -> trigonal::crimps::CrimpGens {
    use trigonal::crimps::{sample_crimp, stratum, LocalRamType};
    loop {
        let b = 2 * rng.gen_range(1..=max_b / 2);
        let l = rat(rng.gen_range(0..=(b / 2) as i64));
        let Some(s) = stratum(b, &l, LocalRamType::Etale) else { continue };
        let params: Vec<Rational> = (0..s.dimension).map(|_| small_rat(rng)).collect();
        let comp = rng.gen_range(1..=s.components);
        let c = sample_crimp(&s, &params, comp).unwrap();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        return c.permute(perms[rng.gen_range(0..6)]);
    }
}

pub const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Every nonempty stratum with branch degree at most `max_b`, scanning `l`
/// over sixths.
pub fn all_strata(max_b: usize) -> Vec<trigonal::crimps::CrimpStratum> {
    use trigonal::crimps::{stratum, LocalRamType};
    let mut out = Vec::new();
    for ram in [LocalRamType::Etale, LocalRamType::Total, LocalRamType::Simple] {
        for b in 0..=max_b {
            for k in 0..=(6 * b) {
                if let Some(s) = stratum(b, &frac(k as i64, 6), ram) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Random crimp of any type, from a random nonempty stratum.
pub fn random_crimp(rng: &mut ChaCha8Rng, max_b: usize) -> trigonal::crimps::CrimpGens {
    use trigonal::crimps::sample_crimp;
    let strata = all_strata(max_b);
    let s = &strata[rng.gen_range(0..strata.len())];
    let params: Vec<Rational> = (0..s.dimension).map(|_| small_rat(rng)).collect();
    let comp = rng.gen_range(1..=s.components);
    sample_crimp(s, &params, comp).unwrap()
}

/// t-valuation of the discriminant of the trace form on the basis `1, g_1, g_2`.
pub fn trace_discriminant_valuation(c: &trigonal::crimps::CrimpGens) -> usize {
    use trigonal::crimps::{ambient, LocalRamType};
    use trigonal::exact_core::Jet;
    let big = 4 * c.truncation + 8;
    let basis = [
        ambient::one(c.ram, big),
        ambient::with_truncation(&c.gens[0], big),
        ambient::with_truncation(&c.gens[1], big),
    ];
    let tr = |a: &ambient::AmbElem| -> Jet {
        match c.ram {
            LocalRamType::Etale => &(&a[0] + &a[1]) + &a[2],
            LocalRamType::Total => a[0].scale(&rat(3)),
            LocalRamType::Simple => &a[0].scale(&rat(2)) + &a[2],
        }
    };
    let mut g: Vec<Vec<Jet>> = Vec::new();
    for x in &basis {
        g.push(basis.iter().map(|y| tr(&ambient::mul(c.ram, x, y))).collect());
    }
    let det = &(&(&g[0][0] * &(&(&g[1][1] * &g[2][2]) - &(&g[1][2] * &g[2][1])))
        - &(&g[0][1] * &(&(&g[1][0] * &g[2][2]) - &(&g[1][2] * &g[2][0]))))
        + &(&g[0][2] * &(&(&g[1][0] * &g[2][1]) - &(&g[1][1] * &g[2][0])));
    det.valuation().expect("discriminant vanishes to the truncation")
}

/// Crimp `1, t^m (v + t^(n-m) w), t^n e` with `v` nonconstant.
pub fn concentrated_crimp(rng: &mut ChaCha8Rng) -> Option<CrimpGens> {
    let m = rng.gen_range(1..=4usize);
    let n = rng.gen_range(m + 1..=3 * m + 1);
    let trunc = n + 1;
    let mut v: [Rational; 3] = std::array::from_fn(|_| small_rat(rng));
    if n > 2 * m {
        // two equal sheets keep v^2 in the span of 1 and v
        let k = rng.gen_range(0..3);
        v[(k + 1) % 3] = v[k].clone();
    }
    let mut jet = |i: usize| {
        let mut c = vec![rat(0); trunc];
        c[m] = v[i].clone();
        c[n] = small_rat(rng);
        Jet::new(c)
    };
    let f = [jet(0), jet(1), jet(2)];
    let e = rng.gen_range(0..3);
    let mut g2 = [Jet::zero(trunc), Jet::zero(trunc), Jet::zero(trunc)];
    g2[e] = Jet::monomial(rat(1), n, trunc);
    let c = CrimpGens::new(LocalRamType::Etale, [f, g2]).ok()?;
    (c.quotient_exponents().ok()? == (m, n) && c.is_subalgebra().ok()?).then_some(c)
}

pub fn random_wpoint(rng: &mut ChaCha8Rng, g: usize) -> WPoint {
    let h = (g + 2) / 2;
    loop {
        let v = |rng: &mut ChaCha8Rng, k: usize| (0..k).map(|_| small_rat(rng)).collect::<Vec<_>>();
        let (a, b, c, d) = (v(rng, h), v(rng, h), v(rng, h), v(rng, h - 1));
        if let Ok(p) = WPoint::new(g, a, b, c, d) {
            if p.to_cover().is_ok() {
                return p;
            }
        }
    }
}

/// `det(g)^-1 f(g(s,t))` on coefficient polynomials, written out by hand.
pub fn act(q: &[UniPoly; 4], g: [[Rational; 2]; 2]) -> [UniPoly; 4] {
    let [[p, r], [u, v]] = g;
    let det = &p * &v - &r * &u;
    // s -> p s + r t, t -> u s + v t; coefficients of s^3, s^2 t, s t^2, t^3
    let mono: [[Rational; 4]; 4] = [
        [&p * &p * &p, rat(3) * &p * &p * &r, rat(3) * &p * &r * &r, &r * &r * &r],
        [
            &p * &p * &u,
            &p * &p * &v + rat(2) * &p * &r * &u,
            &r * &r * &u + rat(2) * &p * &r * &v,
            &r * &r * &v,
        ],
        [
            &p * &u * &u,
            &r * &u * &u + rat(2) * &p * &u * &v,
            &p * &v * &v + rat(2) * &r * &u * &v,
            &r * &v * &v,
        ],
        [&u * &u * &u, rat(3) * &u * &u * &v, rat(3) * &u * &v * &v, &v * &v * &v],
    ];
    std::array::from_fn(|j| {
        (0..4).fold(UniPoly::zero(), |acc, k| &acc + &q[k].scale(&(&mono[k][j] / &det)))
    })
}

/// Numerical conditions re-derived case by case.
pub fn expected_dimension(b: usize, l: &Rational, ram: LocalRamType) -> Option<(usize, usize)> {
    let (sum, diff) = match ram {
        LocalRamType::Etale => (frac(b as i64, 2), l.clone()),
        LocalRamType::Total => (frac(3 * b as i64, 2), l * rat(3)),
        LocalRamType::Simple => (rat(b as i64), l * rat(2)),
    };
    let m2 = &sum - &diff;
    let n2 = &sum + &diff;
    if !m2.is_integer() || !n2.is_integer() || m2 < rat(0) {
        return None;
    }
    let m: i64 = m2.to_integer().try_into().unwrap();
    let n: i64 = n2.to_integer().try_into().unwrap();
    if m % 2 != 0 || n % 2 != 0 {
        return None;
    }
    let (m, n) = (m / 2, n / 2);
    let fl = l.floor().to_integer().try_into().unwrap();
    match ram {
        LocalRamType::Etale => {
            if b % 2 == 1 {
                None
            } else if 2 * m >= n {
                Some((fl, 1))
            } else {
                Some((m as usize, 3))
            }
        }
        LocalRamType::Total => {
            let ok = m % 3 != 0 && n % 3 != 0 && m % 3 != n % 3 && 2 * m >= n;
            ok.then_some((fl, 1))
        }
        LocalRamType::Simple => {
            if m % 2 == n % 2 {
                None
            } else if 2 * m >= n {
                Some((fl, 1))
            } else if m % 2 == 1 {
                None
            } else {
                Some((m as usize / 2, 1))
            }
        }
    }
}

pub fn expected_points(s: &CrimpStratum, p: u64) -> usize {
    let p = p as usize;
    if s.components == 3 {
        3 * p.pow(s.dimension as u32)
    } else if s.ram == LocalRamType::Etale && s.dimension > 0 {
        (p + 1) * p.pow(s.dimension as u32 - 1)
    } else {
        p.pow(s.dimension as u32)
    }
}

pub fn prime_for(ram: LocalRamType) -> (u64, Amb) {
    match ram {
        LocalRamType::Etale => (3, Amb::Etale),
        LocalRamType::Total => (5, Amb::Total),
        LocalRamType::Simple => (3, Amb::Simple),
    }
}

pub fn random_family(rng: &mut ChaCha8Rng, max_sum: usize, t: usize) -> ExtensionFamily {
    let m = rng.gen_range(1..=(max_sum - 1) / 2);
    let n = rng.gen_range(m + 1..=max_sum - m);
    let e: Vec<Jet> = (0..n - m - 1)
        .map(|_| {
            if rng.gen_bool(0.2) {
                return Jet::zero(t);
            }
            let v = rng.gen_range(0..4usize);
            let mut j = Jet::zero(t);
            for k in v..(v + 3).min(t) {
                j.set_coeff(k, small_rat(rng));
            }
            j.set_coeff(v.min(t - 1), rat(rng.gen_range(1..4)));
            j
        })
        .collect();
    ExtensionFamily::new(m, n, t, e).unwrap()
}
