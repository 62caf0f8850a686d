mod common;

use common::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trigonal::crimps::{hyperelliptic_limit, CrimpGens};
use trigonal::exact_core::{kernel_basis, rank, rat, Jet, Rational};
use trigonal::splitting::*;

fn diag(a: usize, b: usize, n: usize) -> LatticeSheaf {
    LatticeSheaf {
        truncation: n,
        gens_at_0: vec![
            [Jet::monomial(rat(1), a, n), Jet::zero(n)],
            [Jet::zero(n), Jet::monomial(rat(1), b, n)],
        ],
        gens_at_inf: None,
    }
}

/// h0 by an existential presentation: (p, q) = sum r_j g_j mod t^N, with the
/// generator coefficients r_j as extra unknowns; count the projection to (p, q).
fn h0_oracle(f: &LatticeSheaf, k: usize) -> usize {
    assert!(f.gens_at_inf.is_none());
    let n = f.truncation;
    let ng = f.gens_at_0.len();
    let nv = 2 * (k + 1) + ng * n;
    let mut eqs = Vec::new();
    for comp in 0..2 {
        for i in 0..n {
            let mut row = vec![Rational::zero(); nv];
            if i <= k {
                row[comp * (k + 1) + i] = rat(1);
            }
            for (j, g) in f.gens_at_0.iter().enumerate() {
                for a in 0..=i {
                    let c = g[comp].coeff(i - a);
                    if !c.is_zero() {
                        row[2 * (k + 1) + j * n + a] -= c;
                    }
                }
            }
            eqs.push(row);
        }
    }
    let ker = kernel_basis(&eqs);
    let proj: Vec<Vec<Rational>> = ker.iter().map(|v| v[..2 * (k + 1)].to_vec()).collect();
    rank(&proj)
}

fn random_lattice(rng: &mut ChaCha8Rng) -> LatticeSheaf {
    let n = 7;
    let a = rng.gen_range(0..=3);
    let b = rng.gen_range(a..=4);
    let d = diag(a, b, n);
    // scramble by a random 2x2 jet matrix with unit determinant
    loop {
        let rj = |rng: &mut ChaCha8Rng| {
            Jet::new((0..n).map(|i| if i < 3 { small_rat(rng) } else { Rational::zero() }).collect())
        };
        let u = [[rj(rng), rj(rng)], [rj(rng), rj(rng)]];
        let det = &(&u[0][0] * &u[1][1]) - &(&u[0][1] * &u[1][0]);
        if !det.is_unit() {
            continue;
        }
        let gens = d
            .gens_at_0
            .iter()
            .map(|g| [&(&u[0][0] * &g[0]) + &(&u[0][1] * &g[1]), &(&u[1][0] * &g[0]) + &(&u[1][1] * &g[1])])
            .collect();
        return LatticeSheaf { truncation: n, gens_at_0: gens, gens_at_inf: None };
    }
}

#[test]
fn h0_examples() {
    assert_eq!(LatticeSheaf::full(4).h0_twist(1), Ok(4));
    assert_eq!(diag(1, 3, 8).h0_twist(2), Ok(2));
    // (t, t) plus t^2 times the full lattice, written out at truncation 3
    let n = 3;
    let t = |k| Jet::monomial(rat(1), k, n);
    let tt = LatticeSheaf {
        truncation: n,
        gens_at_0: vec![[t(1), t(1)], [t(2), Jet::zero(n)], [Jet::zero(n), t(2)]],
        gens_at_inf: None,
    };
    assert_eq!(tt.colength(), Ok(3));
    assert_eq!(tt.h0_twist(0), Ok(0));
    assert_eq!(tt.h0_twist(0).unwrap(), h0_oracle(&tt, 0));
}

#[test]
fn splitting_examples() {
    assert_eq!(LatticeSheaf::full(4).splitting_type(), Ok((0, 0)));
    assert_eq!(diag(1, 3, 8).splitting_type(), Ok((1, 3)));
    assert_eq!(diag(3, 1, 8).splitting_type(), Ok((1, 3)));
}

#[test]
fn insufficient_truncation_is_reported() {
    assert_eq!(diag(1, 3, 3).splitting_type(), Err(SplittingError::PrecisionExhausted(3)));
}

#[test]
fn h0_matches_existential_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let f = random_lattice(&mut rng);
        let p = f.prepare().unwrap();
        for k in 0..7 {
            assert_eq!(p.h0_twist(k), h0_oracle(&f, k as usize), "k = {k}");
        }
    }
}

#[test]
fn splitting_degree_bookkeeping_and_h0_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let f = random_lattice(&mut rng);
        let p = f.prepare().unwrap();
        let (m, n) = p.splitting_type().unwrap();
        assert_eq!(m + n, p.colength());
        let h: Vec<i64> = (0..12).map(|k| p.h0_twist(k) as i64).collect();
        for k in 1..h.len() {
            assert!(h[k] >= h[k - 1]);
        }
        for k in (n + 1)..h.len() - 1 {
            assert!(h[k + 1] - 2 * h[k] + h[k - 1] <= 0);
        }
    }
}

#[test]
fn hyperelliptic_lattice_splitting() {
    let f = hyperelliptic_limit(2).globalize().unwrap();
    let (m, n) = f.splitting_type().unwrap();
    assert_eq!(m + n, 4);
    // independent count of the same h0 sequence
    let oracle: Vec<usize> = (0..8).map(|k| h0_oracle(&f, k)).collect();
    let expect: Vec<usize> = (0..8usize).map(|k| (k + 1).saturating_sub(m) + (k + 1).saturating_sub(n)).collect();
    assert_eq!(oracle, expect);
    assert_eq!((m, n), (2, 2));
}

#[test]
fn maroni_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let q = random_cover(&mut rng, 3, 3);
    assert_eq!(maroni(&q, 1), Ok(rat(0)));
    for g in 2..6 {
        let q = random_cover(&mut rng, 1, g + 1);
        assert_eq!(maroni(&q, 1), Ok(rat(g as i64)));
    }
    let q = random_cover(&mut rng, 1, 2);
    let pulled = q.cyclic_pullback(2).unwrap();
    assert_eq!(maroni(&q, 2).unwrap(), rat((pulled.n - pulled.m) as i64) / rat(2));
    assert_eq!(maroni(&q, 2).unwrap(), rat(1));
}

#[test]
fn maroni_parity_matches_genus() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let (m, n) = random_splitting(&mut rng, 5);
        let q = random_cover(&mut rng, m, n);
        let mr = maroni(&q, 1).unwrap();
        assert_eq!((mr.to_integer() - q.genus()) % 2, 0.into());
    }
}

fn check_balance(c: &CrimpGens) {
    let f = c.globalize().unwrap();
    let p = f.prepare().unwrap();
    let (m, n) = p.splitting_type().unwrap();
    let d = balance_by_twist(&f, m, n).unwrap();
    assert_eq!(d.iter().sum::<usize>(), n - m);
    assert!(d.iter().filter(|&&x| x > 0).count() <= 2);
    assert_eq!(twisted_splitting(&p, d).unwrap(), [0, m as i64, m as i64]);
}

#[test]
fn balance_by_twist_examples() {
    let f = LatticeSheaf::full(3);
    assert_eq!(balance_by_twist(&f, 0, 0), Ok([0, 0, 0]));
    check_balance(&hyperelliptic_limit(2));
    check_balance(&hyperelliptic_limit(3));
    let mut bad = LatticeSheaf::full(3);
    bad.gens_at_inf = Some(diag(1, 0, 3).gens_at_0);
    assert_eq!(balance_by_twist(&bad, 0, 1), Err(SplittingError::NotSplitNormalization));
    assert!(matches!(
        balance_by_twist(&diag(1, 3, 6), 2, 2),
        Err(SplittingError::SplittingMismatch { .. })
    ));
}

#[test]
fn balance_by_twist_on_random_crimp_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut unbalanced = 0;
    while unbalanced < 50 {
        let c = random_etale_crimp(&mut rng, 14);
        let (m, n) = c.globalize().unwrap().splitting_type().unwrap();
        if m == n {
            continue;
        }
        unbalanced += 1;
        check_balance(&c);
    }
}
