//! Agglomerative clustering with the four linkage criteria, scored against
//! the category labels.

use textile_core::clustering::{hac, Criterion, Quality};
use textile_core::corpus::{make_corpus, Corpus, CorpusConfig};
use textile_core::experiment::features;
use textile_core::retrieval::Qrels;
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
    let m = qrels.category_count();
    let f = features(&corpus.graphs, 2)?;

    println!("{m} clusters over {} items, k = 2", corpus.len());
    println!("{:<9} {:<10} {}", "linkage", "measure", Quality::NAMES.join("  "));
    for criterion in Criterion::ALL {
        let measures: &[Measure] = if criterion == Criterion::Ward {
            &[Measure::Euclidean]
        } else {
            &[Measure::CosineTfIdf, Measure::Jaccard, Measure::Overlap]
        };
        for &measure in measures {
            let result = hac(&f.vectors, m, measure, criterion, Some(&f.stats))?;
            let q = Quality::compute(result.clustering.assignments(), qrels.classes())?;
            let cells: Vec<String> = q.values().iter().map(|v| format!("{v:.3}")).collect();
            println!("{:<9} {:<10} {}", criterion.name(), measure.name(), cells.join("  "));
        }
    }

    let last = hac(&f.vectors, 1, Measure::CosineTfIdf, Criterion::Complete, Some(&f.stats))?;
    println!("\nlast three merges of the full complete-linkage tree:");
    for merge in last.merges.iter().rev().take(3) {
        println!("  {} + {} at {:.4} -> size {}", merge.left, merge.right, merge.distance, merge.size);
    }
    Ok(())
}
