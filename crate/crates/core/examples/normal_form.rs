//! Cross-ratios and the even-genus normal form.

use trigonal::crimps::hyperelliptic_limit;
use trigonal::exact_core::{frac, rat, UniPoly};
use trigonal::models::{cross_ratio, even_normal_form, orbit_equivalent, principal_part, s3_images, WPoint};
use trigonal::triple_cover::MirandaCover;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the fiber over infinity is s t (s + t), three rational points
    let p = |c: &[i64]| UniPoly::from_i64(c);
    let cover = MirandaCover::new(1, 2, UniPoly::zero(), p(&[5, 1]), p(&[0, 0, 1]), p(&[7, 0, 1]))?;
    let chi = cross_ratio(&cover)?;
    let rep: Vec<String> = chi.line.rep().iter().map(|x| x.to_string()).collect();
    println!("cross-ratio ({}), coarse {}", rep.join(", "), chi.coarse);

    let hyp = principal_part(&hyperelliptic_limit(4))?;
    println!("principal part of the hyperelliptic limit: coarse {}", hyp.coarse);

    let w = WPoint::new(4, vec![rat(1), frac(3, 2), rat(-1)], vec![rat(0), rat(2), rat(1)], vec![rat(2), rat(0), rat(1)], vec![rat(1), rat(4)])?;
    println!("weights {:?}", w.weights());
    let cov = w.to_cover()?;
    let nf = even_normal_form(&cov)?;
    println!("normal form fixes the point: {}", nf == w);
    let scaled = w.scaled(&rat(-2));
    println!("scaled point is orbit-equivalent: {}", orbit_equivalent(&w, &scaled));
    println!("distinct sheet reorderings: {}", s3_images(&w).len());
    Ok(())
}
