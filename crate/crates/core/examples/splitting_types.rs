//! Global splitting types of covers built from a local singularity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trigonal::crimps::{sample_crimp, stratum, LocalRamType};
use trigonal::exact_core::{rat, Rational};
use trigonal::splitting::balance_by_twist;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (b, l) in [(8, 0), (8, 2), (10, 1), (12, 4), (14, 3)] {
        let s = stratum(b, &rat(l), LocalRamType::Etale).ok_or("empty stratum")?;
        for comp in 1..=s.components {
            let params: Vec<Rational> = (0..s.dimension).map(|_| rat(rng.gen_range(-3..4))).collect();
            let c = sample_crimp(&s, &params, comp)?;
            let sheaf = c.globalize()?;
            let (m, n) = sheaf.splitting_type()?;
            let twist = balance_by_twist(&sheaf, m, n)?;
            println!("b = {b:>2}, mu = {l}, component {comp}: splitting ({m}, {n}), Maroni {} <= {l}, twist {twist:?}", n - m);
        }
    }
    Ok(())
}
