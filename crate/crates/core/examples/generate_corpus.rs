//! Generate a small labelled corpus on disk and read it back.
//!
//! `cargo run --example generate_corpus -- <dir>` keeps the files; without
//! an argument they go to a temporary directory.

use textile_core::corpus::{load_corpus, make_corpus, write_corpus, CorpusConfig};
use textile_core::generators::Family;

fn main() -> textile_core::Result<()> {
    let config = CorpusConfig {
        families: vec![Family::PlainWeave, Family::Satin { float: 4 }, Family::ChainMail, Family::Braid { strands: 4 }],
        samples: 3,
        rows: 10..=14,
        cols: 10..=14,
        ..CorpusConfig::desk()
    };
    let specimens = make_corpus(&config)?;
    for s in &specimens {
        println!(
            "{:<14} {:>3}x{:<3} rotate {:<10} mirror {:<12} {:>4} crossings",
            s.name,
            s.spec.rows,
            s.spec.cols,
            format!("{:?}", s.plan.rotate),
            format!("{:?}", s.plan.mirror),
            s.graph.crossing_count()
        );
    }

    let dir = match std::env::args().nth(1) {
        Some(d) => std::path::PathBuf::from(d),
        None => std::env::temp_dir().join("textile-example-corpus"),
    };
    write_corpus(&dir, &specimens)?;
    let back = load_corpus(&dir)?;
    println!("wrote and reloaded {} graphs in {}", back.len(), dir.display());
    println!("corpus sha256 {}", back.hash());
    Ok(())
}
