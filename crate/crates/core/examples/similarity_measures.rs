//! The seven distance measures, on two toy count vectors and on the
//! fingerprints of a plain weave and some altered copies.

use textile_core::experiment::features;
use textile_core::generators::{generate, perturb, Family, PatternSpec, PerturbationPlan};
use textile_core::{Measure, SparseVector};

fn main() -> textile_core::Result<()> {
    let r = SparseVector::from_pairs([(1, 4.0)]);
    let s = SparseVector::from_pairs([(0, 2.0), (1, 2.0)]);
    println!("(0,4) vs (2,2):");
    for m in Measure::ALL.into_iter().filter(|m| !m.needs_stats()) {
        println!("  {:<9} {:.6}", m.name(), m.distance(&r, &s, None)?);
    }

    // Plain weave against noisier copies of itself and against a twill.
    let plain = generate(&PatternSpec::new(Family::PlainWeave, 16, 16, 1))?;
    let noisy = |fraction: f64| {
        perturb(
            &plain,
            &PerturbationPlan {
                flip_fraction: fraction,
                seed: 9,
                ..PerturbationPlan::identity()
            },
        )
    };
    let twill = generate(&PatternSpec::new(Family::Twill { over: 2, under: 1 }, 16, 16, 1))?;
    let names = ["1% flipped", "5% flipped", "20% flipped", "twill-2-1"];
    let graphs = vec![plain.clone(), noisy(0.01), noisy(0.05), noisy(0.2), twill];
    let f = features(&graphs, 2)?;
    println!("\ndistance from plain weave at k = 2:");
    print!("  {:<9}", "");
    for name in names {
        print!(" {name:>12}");
    }
    println!();
    for m in Measure::ALL {
        let matrix = f.matrix(m)?;
        print!("  {:<9}", m.name());
        for j in 1..graphs.len() {
            print!(" {:>12.4}", matrix.get(0, j));
        }
        println!();
    }
    Ok(())
}
