//! Rotating or mirroring a fabric relabels its crossings but leaves every
//! fingerprint unchanged.

use textile_core::generators::{generate, transform, Family, PatternSpec, Transform};
use textile_core::{fingerprint, serialize};

fn main() -> textile_core::Result<()> {
    for family in Family::categories() {
        let g = generate(&PatternSpec::new(family, 14, 18, 7))?;
        let mut same = 0;
        let mut relabelled = 0;
        for op in Transform::ALL {
            let t = transform(&g, op);
            relabelled += usize::from(serialize(&t) != serialize(&g));
            for k in 1..=6 {
                same += usize::from(fingerprint(&t, k)? == fingerprint(&g, k)?);
            }
        }
        println!(
            "{:<12} {:>4} crossings: {relabelled}/{} transforms change the file, {same}/{} fingerprints equal",
            family.label(),
            g.crossing_count(),
            Transform::ALL.len(),
            6 * Transform::ALL.len()
        );
    }
    Ok(())
}
