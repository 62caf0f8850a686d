//! Invariants of a trigonal curve given in Miranda form.

use trigonal::exact_core::{rat, UniPoly};
use trigonal::splitting::maroni;
use trigonal::triple_cover::{MirandaCover, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = |c: &[i64]| UniPoly::from_i64(c);
    // O + O(-1) + O(-2): genus 1, Maroni invariant 1
    let cover = MirandaCover::new(1, 2, UniPoly::zero(), p(&[5, 1]), p(&[0, 0, 1]), p(&[7, 0, 0, 1]))?;
    println!("genus {}", cover.genus());
    println!("splitting ({}, {})", cover.m, cover.n);
    println!("branch degree {}", cover.branch_degree());
    let disc = cover.discriminant()?;
    println!("discriminant of degree {}: {}", disc.degree, disc.affine);
    for x in [-5, 0, 1] {
        let pt = Point::affine(rat(x));
        println!("fiber over {x}: {:?}", cover.fiber_type(&pt)?);
    }
    println!("fiber over inf: {:?}", cover.fiber_type(&Point::infinity())?);
    for r in 1..=3 {
        println!("refined Maroni r = {r}: {}", maroni(&cover, r)?);
    }
    let pulled = cover.cyclic_pullback(3)?;
    println!("triple pullback splits as ({}, {})", pulled.m, pulled.n);
    Ok(())
}
