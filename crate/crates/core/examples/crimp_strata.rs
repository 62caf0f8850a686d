//! Strata of triple-point singularities with a given branch order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trigonal::crimps::{hyperelliptic_limit, sample_crimp, stratum, LocalRamType};
use trigonal::exact_core::{frac, rat, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:<7} {:>5} {:>8} {:>4} {:>10}", "type", "mu", "(m, n)", "dim", "components");
    for ram in [LocalRamType::Etale, LocalRamType::Total, LocalRamType::Simple] {
        for k in 0..=6 * b as i64 {
            let l = frac(k, 6);
            let Some(s) = stratum(b, &l, ram) else { continue };
            println!(
                "{:<7} {:>5} {:>8} {:>4} {:>10}",
                ram.name(),
                l.to_string(),
                format!("({}, {})", s.m, s.n),
                s.dimension,
                s.components
            );
            let params: Vec<Rational> = (0..s.dimension).map(|_| rat(rng.gen_range(1..5))).collect();
            let c = sample_crimp(&s, &params, 1)?;
            let md = c.mu_delta()?;
            assert_eq!((md.mu, md.branch_degree), (l, b));
        }
    }
    let h = hyperelliptic_limit(4);
    let md = h.mu_delta()?;
    println!("hyperelliptic limit in genus 4: mu = {}, delta = {}", md.mu, md.delta);
    Ok(())
}
