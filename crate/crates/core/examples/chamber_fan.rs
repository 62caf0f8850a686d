//! The fan of divisor classes D_l on the space of trigonal curves of genus g.

use trigonal::picard::{chamber_fan, is_nef, standard_class, stratum_dimensions, to_lambda_delta, ClassName};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    let fan = chamber_fan(g)?;
    print!("{}", fan.to_csv());
    println!("ratios: D_0 {}, D_(g+2) {}, K {}", fan.d0_ratio, fan.top_ratio, fan.k_ratio);
    if g != 3 {
        let (a, b) = to_lambda_delta(&standard_class(ClassName::K, g)?)?;
        println!("K = {a} lambda + {b} delta");
    }
    for ch in &fan.chambers {
        let mid = &standard_class(ClassName::D(ch.lower), g)? + &standard_class(ClassName::D(ch.upper), g)?;
        let nef = ch.lower > 0 && ch.lower < g && is_nef(&mid, g, ch.lower)?;
        println!("chamber [{}, {}] -> {}{}", ch.lower, ch.upper, ch.model, if nef { " (nef interior)" } else { "" });
    }
    for l in (g % 2..=g).step_by(2) {
        let (a, b) = stratum_dimensions(g, l)?;
        println!("l = {l}: Maroni stratum dim {a}, mu stratum dim {b}");
    }
    Ok(())
}
