//! Fingerprint and distance-matrix timings on plain-weave corpora of
//! growing size. Run with `--release`.

use std::collections::BTreeMap;

use textile_core::experiment::{bench, BenchConfig};
use textile_core::Measure;

fn main() -> textile_core::Result<()> {
    let config = BenchConfig {
        measures: vec![Measure::HammingBool, Measure::Euclidean, Measure::Jaccard],
        ..BenchConfig::default()
    };
    let rows = bench(&config)?;
    let mut fp = BTreeMap::new();
    println!("{:>9} {:>3} {:<9} {:>12} {:>12}", "crossings", "k", "measure", "fingerprint", "matrix");
    for r in &rows {
        fp.insert((r.crossings, r.k), r.fingerprint_secs);
        println!(
            "{:>9} {:>3} {:<9} {:>10.2}ms {:>10.2}ms",
            r.crossings,
            r.k,
            r.measure.name(),
            r.fingerprint_secs * 1e3,
            r.matrix_secs * 1e3
        );
    }
    println!("\nfingerprint time per crossing and k:");
    for ((n, k), secs) in fp {
        let per = secs / (n * k * config.items) as f64 * 1e9;
        println!("  {n:>5} crossings, k = {k}: {per:.1} ns");
    }
    Ok(())
}
