use trigonal::exact_core::{frac, rat, Rational};
use trigonal::picard::*;

fn class(name: &str, g: usize) -> DivClass {
    standard_class(name.parse().unwrap(), g).unwrap()
}

fn combo(a: &Rational, x: &DivClass, b: &Rational, y: &DivClass) -> DivClass {
    &x.scale(a) + &y.scale(b)
}

#[test]
fn standard_class_examples() {
    assert_eq!(class("lambda", 4), DivClass::new(frac(5, 12), rat(-1), 4));
    assert_eq!(class("D(2)", 4), DivClass::new(frac(-8, 9), rat(4), 4));
    assert_eq!(class("K", 4), DivClass::new(frac(-77, 36), rat(6), 4));
    assert_eq!(class("Br2", 7), DivClass::new(rat(4), rat(0), 7));
    assert_eq!(class("T", 7), DivClass::new(rat(0), rat(3), 7));
    assert_eq!(class("sigma2", 4), DivClass::new(frac(-1, 36), rat(0), 4));
    assert!(matches!("X".parse::<ClassName>(), Err(PicardError::UnknownClass(_))));
    assert!(standard_class(ClassName::D(7), 4).is_err());
}

#[test]
fn lambda_delta_coordinates() {
    for g in [2usize, 4, 5, 9] {
        assert_eq!(to_lambda_delta(&class("lambda", g)), Ok((rat(1), rat(0))));
        assert_eq!(to_lambda_delta(&class("delta", g)), Ok((rat(0), rat(1))));
    }
    assert_eq!(to_lambda_delta(&class("D(2)", 4)), Ok((rat(80), frac(-28, 3))));
    assert_eq!(to_lambda_delta(&class("K", 3)), Err(PicardError::BasisDegenerate));
    // K in genus 4 from the second display: (2/((g+2)(g-3))) (99 lambda - 13 delta)
    assert_eq!(to_lambda_delta(&class("K", 4)), Ok((rat(33), frac(-13, 3))));
}

#[test]
fn scaled_d_identity_holds() {
    for g in (2..=40).filter(|&g| g != 3) {
        let lam = class("lambda", g);
        let del = class("delta", g);
        for l in 0..=g + 2 {
            let (a, b) = scaled_d_coefficients(g, l);
            let lhs = class(&format!("D({l})"), g).scale(&frac(g as i64 - 3, 2));
            assert_eq!(lhs, combo(&a, &lam, &b, &del), "g={g} l={l}");
        }
    }
}

#[test]
fn canonical_class_expressions_agree() {
    for g in (2..=40).filter(|&g| g != 3) {
        let (a, b) = scaled_k_coefficients(g);
        let s = frac(2, (g as i64 + 2) * (g as i64 - 3));
        let k = combo(&(&a * &s), &class("lambda", g), &(&b * &s), &class("delta", g));
        assert_eq!(k, class("K", g), "g={g}");
    }
}

#[test]
fn branch_pullback_identity() {
    for g in 2..=40 {
        let expect = DivClass::new(frac(4 * g as i64 + 6, g as i64 + 2), rat(0), g);
        assert_eq!(branch_pullback(g).unwrap(), expect);
        // and Br^2 is four times c1^2, sigma^2 a negative multiple of it
        assert_eq!(class("Br2", g).u, rat(4));
        assert!(class("sigma2", g).u < rat(0));
    }
}

#[test]
fn nef_cone_examples() {
    let (d2, d4) = nef_cone(4, 2).unwrap();
    assert!(is_ample(&(&d2 + &d4), 4, 2).unwrap());
    assert!(!is_nef(&class("D(0)", 4), 4, 2).unwrap());
    assert!(is_nef(&class("D(2)", 4), 4, 2).unwrap());
    assert!(!is_ample(&class("D(2)", 4), 4, 2).unwrap());
    assert!(nef_cone(4, 4).is_err());
    assert!(nef_cone(5, 2).is_err());
}

#[test]
fn chamber_fan_ratios_and_rays() {
    let fan = chamber_fan(4).unwrap();
    assert_eq!(fan.d0_ratio, frac(17, 2));
    assert_eq!(fan.top_ratio, frac(44, 5));
    assert_eq!(fan.k_ratio, frac(99, 13));
    assert!(rat(6) < fan.k_ratio && fan.k_ratio < fan.d0_ratio);
    let ls: Vec<usize> = fan.rays.iter().map(|r| r.l).collect();
    assert_eq!(ls, vec![0, 2, 4, 6]);
    assert_eq!(fan.rays[0].label, "effective_edge");
    assert_eq!(fan.rays[1].label, "maroni_contraction");
    assert_eq!(fan.rays[2].label, "hyperelliptic_contraction");
    assert_eq!(fan.chambers.len(), 3);
    let odd = chamber_fan(5).unwrap();
    assert_eq!(odd.rays[0].l, 1);
    assert_eq!(odd.rays[0].label, "effective_edge");
    let csv = fan.to_csv();
    assert!(csv.starts_with("l,ray_u,ray_v,lambda_ratio,label\n0,-1,4,17/2,effective_edge\n"));
}

#[test]
fn fan_properties_up_to_genus_40() {
    for g in 2..=40usize {
        let fan = chamber_fan(g).unwrap();
        let gi = g as i64;
        assert_eq!(fan.d0_ratio, frac(7 * gi + 6, gi));
        assert_eq!(fan.top_ratio, rat(8) + frac(4, gi + 1));
        for w in fan.rays.windows(2) {
            // rays rotate one way; the lambda-delta frame flips orientation at g = 3
            assert!(w[0].class.det(&w[1].class) < rat(0));
            match g {
                2 => assert!(w[0].lambda_ratio > w[1].lambda_ratio),
                3 => assert_eq!(w[0].lambda_ratio, w[1].lambda_ratio),
                _ => assert!(w[0].lambda_ratio < w[1].lambda_ratio),
            }
        }
        if g != 3 {
            for r in &fan.rays {
                let ld = to_lambda_delta(&r.class).unwrap();
                assert_eq!(lambda_ratio(&ld), r.lambda_ratio);
            }
        }
        for l in (1..g).filter(|l| (g - l) % 2 == 0) {
            assert!(canonical_opposite_side(g, l).unwrap(), "g={g} l={l}");
        }
        if g >= 4 {
            assert!(rat(6) < fan.k_ratio && fan.k_ratio < fan.d0_ratio);
        }
    }
}

#[test]
fn dimension_formulas() {
    assert_eq!(stratum_dimensions(4, 0), Ok((10, -1)));
    assert_eq!(stratum_dimensions(4, 2), Ok((9, 1)));
    assert_eq!(stratum_dimensions(4, 4), Ok((9, 0)));
    assert_eq!(stratum_dimensions(7, 3), Ok((14, 2)));
    assert_eq!(stratum_dimensions(7, 5), Ok((14, 1)));
    assert_eq!(collision_bound(&[6, 6]), Ok(2));
    assert_eq!(collision_bound(&[1, 1]), Ok(0));
    assert!(stratum_dimensions(4, 3).is_err());
    for g in 2..=20usize {
        // codimension one exactly at l = g and at l = 2 for even g
        for l in (0..=g).filter(|l| (g - l) % 2 == 0) {
            let (cm, cmu) = stratum_codimensions(g, l).unwrap();
            if l == g || (l == 2 && g % 2 == 0) {
                assert_eq!(cm, 1, "g={g} l={l}");
            }
            if 2 < l && l < g {
                assert!(cm >= 2 && cmu >= 2, "g={g} l={l}");
            }
        }
    }
}

#[test]
fn test_family_pairings() {
    let a = test_family_a(2, 4).unwrap();
    assert_eq!(a.pair_d(2), rat(0));
    assert_eq!(a.pair_d(4), rat(12));
    assert_eq!(test_family_a(3, 3).unwrap().pair_d(0), rat(0));
    let b = test_family_b(2, 4).unwrap();
    assert_eq!(b.pair_d(2), rat(0));
    assert_eq!(b.pair_d(0), frac(4, 36));
    for n in 1..=20usize {
        for m in 1..=n {
            let a = test_family_a(m, n).unwrap();
            assert_eq!(a.pair_d(n - m), rat(0));
            assert!(a.pair_d(n - m + 2) > rat(0));
            if m < n {
                let b = test_family_b(m, n).unwrap();
                assert_eq!(b.pair_d(n - m), rat(0));
                for j in 0..n - m {
                    assert!(b.pair_d(j) > rat(0));
                }
            }
        }
    }
}
