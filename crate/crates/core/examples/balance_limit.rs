//! Semistable reduction of a family of rank-2 bundles to an l-balanced limit.

use trigonal::families::{balance_limit, ExtensionFamily, TraceStep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // O(-1) + O(-5) degenerating, class t^2 u^3 + t u^2 + t^3 u^4 in the middle slots
    let f = ExtensionFamily::from_i64(1, 5, 12, &[&[0, 0, 1], &[0, 1], &[0, 0, 0, 1]])?;
    println!("generic splitting {:?}, central {:?}", f.generic_splitting(), f.central_splitting());
    for l in [0, 2] {
        let (g, trace) = balance_limit(&f, l)?;
        println!("l = {l}: central splitting {:?} after {} transforms", g.central_splitting(), trace.transforms());
        for step in &trace.steps {
            match step {
                TraceStep::BaseChange { n } => println!("  base change t -> t^{n}"),
                TraceStep::Transform => println!("  elementary transformation"),
                TraceStep::Central { maroni, mu } => println!("  central Maroni {maroni}, new mu {mu}"),
                TraceStep::Represent { m, n } => println!("  rewritten over ({m}, {n})"),
            }
        }
    }
    Ok(())
}
