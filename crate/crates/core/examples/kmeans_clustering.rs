//! K-means per measure, and how the metrics move with the iteration cap.

use textile_core::clustering::{kmeans, Quality};
use textile_core::corpus::{make_corpus, Corpus, CorpusConfig};
use textile_core::experiment::{clustering_k, features};
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

    println!("{:<10} {:>4} {:>6} {:>6} {:>6} {:>6}", "measure", "k", "iter", "purity", "nmi", "f");
    for measure in Measure::ALL {
        let k = clustering_k(measure);
        let f = features(&corpus.graphs, k)?;
        for max_iter in [1, 5, 10] {
            let r = kmeans(&f.vectors, m, max_iter, measure, Some(&f.stats), 0)?;
            let q = Quality::compute(r.clustering.assignments(), qrels.classes())?;
            println!(
                "{:<10} {:>4} {:>6} {:>6.3} {:>6.3} {:>6.3}{}",
                measure.name(),
                k,
                r.iterations,
                q.purity,
                q.nmi,
                q.f,
                if r.converged { "  converged" } else { "" }
            );
        }
    }

    let f = features(&corpus.graphs, 4)?;
    let r = kmeans(&f.vectors, m, 10, Measure::Euclidean, None, 3)?;
    let objective: Vec<String> = r.objective.iter().map(|x| format!("{x:.0}")).collect();
    println!("\neuclid objective per iteration: {}", objective.join(" "));
    Ok(())
}
