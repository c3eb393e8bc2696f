//! Rank a corpus against one query, then score every query by MAP, MeanP
//! and the 11-point interpolated curves.

use textile_core::corpus::{make_corpus, Corpus, CorpusConfig};
use textile_core::experiment::features;
use textile_core::retrieval::{evaluate, rank_in_matrix, recall_levels, Qrels};
use textile_core::Measure;

fn main() -> textile_core::Result<()> {
    let config = CorpusConfig {
        samples: 6,
        rows: 12..=20,
        cols: 12..=20,
        ..CorpusConfig::desk()
    };
    let corpus = Corpus::from(make_corpus(&config)?);
    let qrels = Qrels::new(corpus.labels.clone());
    let f = features(&corpus.graphs, 4)?;

    let matrix = f.matrix(Measure::Jaccard)?;
    let q = 0;
    println!("top 8 for {} ({}):", corpus.names[q], corpus.labels[q]);
    for (item, d) in rank_in_matrix(&matrix, q).items.iter().take(8) {
        println!("  {:<18} {:.4}", corpus.names[*item], d);
    }

    println!("\n{:<10} {:>6} {:>6}", "measure", "MAP", "MeanP");
    for m in Measure::ALL {
        let r = evaluate(&f.matrix(m)?, &qrels)?;
        println!("{:<10} {:>6.3} {:>6.3}", m.name(), r.map, r.mean_p);
    }

    let r = evaluate(&matrix, &qrels)?;
    println!("\njaccard, interpolated precision and F:");
    for ((level, p), fm) in recall_levels().iter().zip(r.precision).zip(r.f_measure) {
        println!("  recall {level:.1}: P {p:.3}  F {fm:.3}");
    }
    Ok(())
}
