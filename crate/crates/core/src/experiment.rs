//! Parameter sweeps, timing runs and the end-to-end reproduction run, built
//! from the library's retrieval and clustering pieces.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::clustering::{hac, hac_with_matrix, kmeans, Criterion, Quality};
use crate::distance::{distance_matrix, CorpusStats, DistanceMatrix, Measure, SparseVector};
use crate::error::{Error, Result};
use crate::fingerprint::{fingerprint, Fingerprint, Vocabulary};
use crate::generators::{generate, perturb, Family, PatternSpec, PerturbationPlan};
use crate::graph::TextileGraph;
use crate::retrieval::{evaluate, Qrels, RetrievalReport};

/// Fingerprints of a corpus as interned sparse vectors.
#[derive(Clone, Debug)]
pub struct Features {
    pub k: usize,
    pub vocabulary: Vocabulary,
    pub vectors: Vec<SparseVector>,
    pub stats: CorpusStats,
}

pub fn fingerprints(graphs: &[TextileGraph], k: usize) -> Result<Vec<Fingerprint>> {
    graphs.par_iter().map(|g| fingerprint(g, k)).collect()
}

pub fn features(graphs: &[TextileGraph], k: usize) -> Result<Features> {
    let fps = fingerprints(graphs, k)?;
    let vocabulary = Vocabulary::build(&fps);
    let vectors: Vec<SparseVector> = fps.iter().map(|f| vocabulary.vectorize(f)).collect();
    let stats = CorpusStats::new(&vectors)?;
    Ok(Features {
        k,
        vocabulary,
        vectors,
        stats,
    })
}

impl Features {
    pub fn matrix(&self, measure: Measure) -> Result<DistanceMatrix> {
        Ok(distance_matrix(&self.vectors, measure, Some(&self.stats))?.with_k(self.k))
    }
}

/// A clustering algorithm with its parameters other than `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Hac(Criterion),
    KMeans,
}

impl Method {
    pub fn name(self) -> String {
        match self {
            Method::Hac(c) => format!("hac-{c}"),
            Method::KMeans => "kmeans".into(),
        }
    }

    /// Whether the method can run with `measure`: ward is defined on
    /// Euclidean centroids only.
    pub fn accepts(self, measure: Measure) -> bool {
        self != Method::Hac(Criterion::Ward) || measure == Measure::Euclidean
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kmeans" => Ok(Method::KMeans),
            _ => s
                .strip_prefix("hac-")
                .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))?
                .parse()
                .map(Method::Hac),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub ks: Vec<usize>,
    pub measures: Vec<Measure>,
    /// Clustering methods; without any, each row holds retrieval only.
    pub methods: Vec<Method>,
    pub retrieval: bool,
    /// Cluster count; `None` means one per category.
    pub m: Option<usize>,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ks: vec![1, 2, 3, 4],
            measures: Measure::ALL.to_vec(),
            methods: Vec::new(),
            retrieval: true,
            m: None,
            max_iter: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub measure: Measure,
    pub method: Option<Method>,
    pub map: Option<f64>,
    pub mean_p: Option<f64>,
    pub quality: Option<Quality>,
}

/// Runs one clustering method on prepared features.
pub fn cluster(
    features: &Features,
    matrix: Option<&DistanceMatrix>,
    method: Method,
    measure: Measure,
    m: usize,
    max_iter: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    let stats = Some(&features.stats);
    let clustering = match method {
        Method::Hac(Criterion::Ward) => hac(&features.vectors, m, measure, Criterion::Ward, stats)?.clustering,
        Method::Hac(c) => match matrix {
            Some(d) => hac_with_matrix(d, m, c)?.clustering,
            None => hac(&features.vectors, m, measure, c, stats)?.clustering,
        },
        Method::KMeans => kmeans(&features.vectors, m, max_iter, measure, stats, seed)?.clustering,
    };
    Ok(clustering.assignments().to_vec())
}

/// Evaluates every `(k, measure, method)` combination. Combinations a method
/// does not accept (ward with a measure other than `euclid`) are skipped.
pub fn sweep(graphs: &[TextileGraph], labels: &[String], config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if graphs.len() != labels.len() {
        return Err(Error::PartitionMismatch {
            left: graphs.len(),
            right: labels.len(),
        });
    }
    let qrels = Qrels::new(labels.iter().cloned());
    let m = config.m.unwrap_or_else(|| qrels.category_count());
    let mut rows = Vec::new();
    for &k in &config.ks {
        let f = features(graphs, k)?;
        for &measure in &config.measures {
            let needs_matrix = config.retrieval
                || config
                    .methods
                    .iter()
                    .any(|&x| matches!(x, Method::Hac(c) if c != Criterion::Ward));
            let matrix = needs_matrix.then(|| f.matrix(measure)).transpose()?;
            let retrieval = match (&matrix, config.retrieval) {
                (Some(d), true) => Some(evaluate(d, &qrels)?),
                _ => None,
            };
            let row = |method, quality| SweepRow {
                k,
                measure,
                method,
                map: retrieval.as_ref().map(|r| r.map),
                mean_p: retrieval.as_ref().map(|r| r.mean_p),
                quality,
            };
            if config.methods.is_empty() {
                rows.push(row(None, None));
            }
            for &method in config.methods.iter().filter(|x| x.accepts(measure)) {
                let assignments = cluster(&f, matrix.as_ref(), method, measure, m, config.max_iter, config.seed)?;
                let quality = Quality::compute(&assignments, qrels.classes())?;
                rows.push(row(Some(method), Some(quality)));
            }
        }
    }
    Ok(rows)
}

pub const SWEEP_HEADER: [&str; 11] = [
    "k", "measure", "method", "map", "mean_p", "purity", "nmi", "rand", "precision", "recall", "f",
];

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let mut rec = vec![
            r.k.to_string(),
            r.measure.to_string(),
            r.method.map(|m| m.name()).unwrap_or_default(),
            num(r.map),
            num(r.mean_p),
        ];
        match &r.quality {
            Some(q) => rec.extend(q.values().iter().map(|&v| num(Some(v)))),
            None => rec.extend(std::iter::repeat(String::new()).take(6)),
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<sweep output>", e))?;
    Ok(())
}

/// Writes MAP and MeanP as comment lines, then the interpolated curves.
pub fn write_retrieval<W: Write>(mut out: W, measure: Measure, k: usize, report: &RetrievalReport) -> Result<()> {
    let io = |e| Error::io("<retrieval output>", e);
    writeln!(out, "# measure={measure} k={k} map={:.6} mean_p={:.6}", report.map, report.mean_p).map_err(io)?;
    writeln!(out, "recall_level,precision,f_measure").map_err(io)?;
    for (i, level) in crate::retrieval::recall_levels().iter().enumerate() {
        writeln!(out, "{level:.1},{:.6},{:.6}", report.precision[i], report.f_measure[i]).map_err(io)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    /// Plain-weave grid dimensions `(rows, cols)`.
    pub sizes: Vec<(usize, usize)>,
    pub ks: Vec<usize>,
    pub measures: Vec<Measure>,
    /// Graphs per corpus.
    pub items: usize,
    /// Timed repetitions; the median is reported.
    pub runs: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![(32, 32), (32, 64), (64, 64), (64, 128)],
            ks: vec![2, 4, 8],
            measures: Measure::ALL.to_vec(),
            items: 48,
            runs: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub rows: usize,
    pub cols: usize,
    pub crossings: usize,
    pub k: usize,
    pub measure: Measure,
    /// Median seconds to fingerprint the whole corpus.
    pub fingerprint_secs: f64,
    /// Median seconds to fill the distance matrix.
    pub matrix_secs: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Times every task `runs` times, cycling through the tasks so that slow
/// phases of the machine spread over all of them, after one untimed warm-up
/// pass. Returns the median per task.
fn timed_round_robin<T>(runs: usize, tasks: usize, task: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<f64>> {
    for i in 0..tasks {
        std::hint::black_box(task(i)?);
    }
    let mut times = vec![Vec::with_capacity(runs); tasks];
    for _ in 0..runs {
        for (i, t) in times.iter_mut().enumerate() {
            let start = Instant::now();
            std::hint::black_box(task(i)?);
            t.push(start.elapsed().as_secs_f64());
        }
    }
    Ok(times.into_iter().map(median).collect())
}

/// Plain-weave corpus with 1% of the crossings flipped per item, so that
/// fingerprints differ.
pub fn bench_corpus(rows: usize, cols: usize, items: usize, seed: u64) -> Result<Vec<TextileGraph>> {
    let g = generate(&PatternSpec::new(Family::PlainWeave, rows, cols, seed))?;
    Ok((0..items as u64)
        .map(|i| {
            perturb(
                &g,
                &PerturbationPlan {
                    flip_fraction: 0.01,
                    seed: seed.wrapping_add(i),
                    ..PerturbationPlan::identity()
                },
            )
        })
        .collect())
}

/// Times fingerprint extraction and the distance matrix per size, `k` and
/// measure. Both run on one thread so that timings compare measures and
/// sizes rather than scheduling.
pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.runs == 0 {
        return Err(Error::Config("bench needs at least one run".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let corpora = config
        .sizes
        .iter()
        .map(|&(rows, cols)| bench_corpus(rows, cols, config.items, config.seed))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..corpora.len())
        .flat_map(|s| config.ks.iter().map(move |&k| (s, k)))
        .collect();

    let fp_secs = timed_round_robin(config.runs, cells.len(), |c| {
        let (s, k) = cells[c];
        corpora[s].iter().map(|g| fingerprint(g, k)).collect::<Result<Vec<_>>>()
    })?;

    let features = cells
        .iter()
        .map(|&(s, k)| features(&corpora[s], k))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, Measure)> = (0..cells.len())
        .flat_map(|c| config.measures.iter().map(move |&m| (c, m)))
        .collect();
    let matrix_secs = pool.install(|| {
        timed_round_robin(config.runs, jobs.len(), |j| {
            let (c, m) = jobs[j];
            distance_matrix(&features[c].vectors, m, Some(&features[c].stats))
        })
    })?;

    Ok(jobs
        .iter()
        .zip(matrix_secs)
        .map(|(&(c, measure), matrix_secs)| {
            let (s, k) = cells[c];
            let (rows, cols) = config.sizes[s];
            BenchRow {
                rows,
                cols,
                crossings: rows * cols,
                k,
                measure,
                fingerprint_secs: fp_secs[c],
                matrix_secs,
            }
        })
        .collect())
}

pub fn write_bench<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rows", "cols", "crossings", "k", "measure", "fingerprint_secs", "matrix_secs"])?;
    for r in rows {
        w.write_record([
            r.rows.to_string(),
            r.cols.to_string(),
            r.crossings.to_string(),
            r.k.to_string(),
            r.measure.to_string(),
            format!("{:.9}", r.fingerprint_secs),
            format!("{:.9}", r.matrix_secs),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<bench output>", e))?;
    Ok(())
}

/// Neighbourhood size used for clustering with each measure.
pub fn clustering_k(measure: Measure) -> usize {
    match measure {
        Measure::CosineTfIdf => 2,
        Measure::CosineFreq => 3,
        _ => 4,
    }
}

/// Neighbourhood size for ward linkage.
pub const WARD_K: usize = 3;

/// Measures compared in the clustering grid.
pub const CLUSTERING_MEASURES: [Measure; 4] =
    [Measure::Jaccard, Measure::Overlap, Measure::CosineFreq, Measure::CosineTfIdf];

#[derive(Clone, Debug, PartialEq)]
pub struct ReproConfig {
    pub corpus: crate::corpus::CorpusConfig,
    pub kmeans_seed: u64,
    pub max_iter: usize,
    /// Longer k-means run compared against `max_iter`.
    pub long_max_iter: usize,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            corpus: crate::corpus::CorpusConfig::desk(),
            kmeans_seed: 0,
            max_iter: 5,
            long_max_iter: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproReport {
    pub corpus_hash: String,
    pub items: usize,
    /// Retrieval at k = 3 and k = 4 for every measure.
    pub retrieval: Vec<SweepRow>,
    /// Single, complete and average linkage and k-means for the clustering
    /// measures, each at its own k, plus ward on Euclidean centroids.
    pub clustering: Vec<SweepRow>,
    pub kmeans_short: Vec<SweepRow>,
    pub kmeans_long: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Runs a sweep with one measure group per distinct `k`.
fn sweep_grouped(
    graphs: &[TextileGraph],
    labels: &[String],
    groups: &[(usize, Vec<Measure>)],
    methods: &[Method],
    max_iter: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for (k, measures) in groups {
        let cfg = SweepConfig {
            ks: vec![*k],
            measures: measures.clone(),
            methods: methods.to_vec(),
            retrieval: false,
            m: None,
            max_iter,
            seed,
        };
        rows.extend(sweep(graphs, labels, &cfg)?);
    }
    Ok(rows)
}

fn by_k(measures: &[Measure]) -> Vec<(usize, Vec<Measure>)> {
    let mut groups: Vec<(usize, Vec<Measure>)> = Vec::new();
    for &m in measures {
        let k = clustering_k(m);
        match groups.iter_mut().find(|g| g.0 == k) {
            Some(g) => g.1.push(m),
            None => groups.push((k, vec![m])),
        }
    }
    groups
}

/// Generates the corpus and evaluates retrieval, the clustering grid and
/// k-means stability on it.
pub fn repro(config: &ReproConfig) -> Result<(crate::corpus::Corpus, ReproReport)> {
    let corpus = crate::corpus::Corpus::from(crate::corpus::make_corpus(&config.corpus)?);
    let (g, l) = (&corpus.graphs, &corpus.labels);
    let retrieval = sweep(
        g,
        l,
        &SweepConfig {
            ks: vec![3, 4],
            measures: Measure::ALL.to_vec(),
            ..SweepConfig::default()
        },
    )?;
    let linkage = [
        Method::Hac(Criterion::Single),
        Method::Hac(Criterion::Complete),
        Method::Hac(Criterion::Average),
        Method::KMeans,
    ];
    let seed = config.kmeans_seed;
    let mut clustering = sweep_grouped(g, l, &by_k(&CLUSTERING_MEASURES), &linkage, config.max_iter, seed)?;
    clustering.extend(sweep_grouped(
        g,
        l,
        &[(WARD_K, vec![Measure::Euclidean])],
        &[Method::Hac(Criterion::Ward)],
        config.max_iter,
        seed,
    )?);
    let all = by_k(&Measure::ALL);
    let kmeans_short = sweep_grouped(g, l, &all, &[Method::KMeans], config.max_iter, seed)?;
    let kmeans_long = sweep_grouped(g, l, &all, &[Method::KMeans], config.long_max_iter, seed)?;
    let report = ReproReport {
        corpus_hash: corpus.hash(),
        items: corpus.len(),
        retrieval,
        clustering,
        kmeans_short,
        kmeans_long,
    };
    Ok((corpus, report))
}

impl ReproReport {
    pub fn map(&self, k: usize, measure: Measure) -> Option<f64> {
        self.retrieval
            .iter()
            .find(|r| r.k == k && r.measure == measure)
            .and_then(|r| r.map)
    }

    pub fn cell(&self, method: Method, measure: Measure) -> Option<&Quality> {
        self.clustering
            .iter()
            .find(|r| r.method == Some(method) && r.measure == measure)
            .and_then(|r| r.quality.as_ref())
    }

    /// The retrieval, clustering and k-means checks with their tolerances.
    pub fn checks(&self) -> Vec<Check> {
        use Measure::*;
        let mut out = Vec::new();
        let map4 = |m| self.map(4, m).unwrap_or(f64::NAN);
        let j = map4(Jaccard);
        out.push(check(
            "retrieval: MAP(jaccard, k=4) within 0.10 of 0.91",
            (j - 0.91).abs() <= 0.10,
            format!("{j:.4}"),
        ));
        let top = [CosineFreq, CosineTfIdf, Overlap].map(map4);
        let mid = [Euclidean, HammingFreq].map(map4);
        let hb = map4(HammingBool);
        let fold = |xs: &[f64], f: fn(f64, f64) -> f64, init| xs.iter().copied().fold(init, f);
        let ordered = top.iter().all(|&x| j >= x)
            && fold(&top, f64::min, f64::INFINITY) > fold(&mid, f64::max, f64::NEG_INFINITY)
            && fold(&mid, f64::min, f64::INFINITY) > hb;
        let detail = Measure::ALL
            .iter()
            .map(|&m| format!("{m}={:.4}", map4(m)))
            .collect::<Vec<_>>()
            .join(" ");
        out.push(check(
            "retrieval: jaccard >= {cos-freq, cos-tfidf, overlap} > {euclid, ham-freq} > ham-bool",
            ordered,
            detail,
        ));
        out.push(check(
            "retrieval: MAP(jaccard) - MAP(ham-bool) >= 0.10",
            j - hb >= 0.10,
            format!("{:.4}", j - hb),
        ));
        let j3 = self.map(3, Jaccard).unwrap_or(f64::NAN);
        out.push(check(
            "retrieval: MAP(jaccard, k=4) - MAP(jaccard, k=3) <= 0.05",
            j - j3 <= 0.05,
            format!("{:.4}", j - j3),
        ));

        let best = Method::Hac(Criterion::Complete);
        let winner = self.cell(best, CosineTfIdf).cloned();
        let best_f = winner.as_ref().map_or(f64::NAN, |q| q.f);
        let (arg, max_f) = self
            .clustering
            .iter()
            .filter_map(|r| Some((format!("{}+{}", r.method?, r.measure), r.quality.as_ref()?.f)))
            .fold((String::new(), f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        out.push(check(
            "clustering: complete linkage + cos-tfidf has the highest F",
            best_f >= max_f,
            format!("complete+cos-tfidf F={best_f:.4}, best {arg} F={max_f:.4}"),
        ));
        for (name, target, value) in [
            ("purity", 0.842, winner.as_ref().map(|q| q.purity)),
            ("NMI", 0.912, winner.as_ref().map(|q| q.nmi)),
            ("Rand index", 0.976, winner.as_ref().map(|q| q.rand)),
        ] {
            let v = value.unwrap_or(f64::NAN);
            out.push(check(
                &format!("clustering: complete + cos-tfidf {name} within 0.10 of {target}"),
                (v - target).abs() <= 0.10,
                format!("{v:.4}"),
            ));
        }
        let single = self
            .cell(Method::Hac(Criterion::Single), Overlap)
            .map_or(f64::NAN, |q| q.purity);
        let best_purity = winner.as_ref().map_or(f64::NAN, |q| q.purity);
        out.push(check(
            "clustering: single linkage + overlap has lower purity",
            single < best_purity,
            format!("{single:.4} vs {best_purity:.4}"),
        ));

        let mut worst = (String::new(), 0.0f64);
        for (a, b) in self.kmeans_short.iter().zip(&self.kmeans_long) {
            if let (Some(qa), Some(qb)) = (&a.quality, &b.quality) {
                for ((name, x), y) in Quality::NAMES.iter().zip(qa.values()).zip(qb.values()) {
                    let d = (x - y).abs();
                    if d > worst.1 {
                        worst = (format!("{} {name}", a.measure), d);
                    }
                }
            }
        }
        out.push(check(
            "k-means: metrics at the short and long iteration caps differ by < 0.02",
            worst.1 < 0.02 && self.kmeans_short.len() == self.kmeans_long.len(),
            format!("largest change {:.4} ({})", worst.1, worst.0),
        ));
        out
    }

    /// Writes the sweep tables and a summary of the checks into `dir`.
    pub fn write(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let file = |name: &str| {
            let path = dir.join(name);
            std::fs::File::create(&path)
                .map(std::io::BufWriter::new)
                .map_err(|e| Error::io(path, e))
        };
        write_sweep(file("retrieval.csv")?, &self.retrieval)?;
        write_sweep(file("clustering.csv")?, &self.clustering)?;
        write_sweep(file("kmeans_short.csv")?, &self.kmeans_short)?;
        write_sweep(file("kmeans_long.csv")?, &self.kmeans_long)?;
        let path = dir.join("summary.txt");
        std::fs::write(&path, self.summary()).map_err(|e| Error::io(path, e))
    }

    pub fn summary(&self) -> String {
        let mut s = format!("corpus {} items, sha256 {}\n", self.items, self.corpus_hash);
        for c in self.checks() {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            s += &format!("{verdict} {}: {}\n", c.name, c.detail);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_corpus, Corpus, CorpusConfig};

    fn small() -> Corpus {
        Corpus::from(
            make_corpus(&CorpusConfig {
                families: vec![Family::PlainWeave, Family::WarpAbove, Family::ChainMail],
                samples: 4,
                rows: 8..=10,
                cols: 8..=10,
                ..CorpusConfig::desk()
            })
            .unwrap(),
        )
    }

    #[test]
    fn sweep_row_count() {
        let c = small();
        let cfg = SweepConfig {
            ks: vec![1, 2],
            measures: vec![Measure::Jaccard, Measure::CosineTfIdf],
            methods: vec![Method::Hac(Criterion::Complete), Method::KMeans],
            ..SweepConfig::default()
        };
        let rows = sweep(&c.graphs, &c.labels, &cfg).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2);
        let mut buf = Vec::new();
        write_sweep(&mut buf, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 9);
    }

    #[test]
    fn ward_only_with_euclid() {
        let c = small();
        let cfg = SweepConfig {
            ks: vec![2],
            measures: vec![Measure::Euclidean, Measure::Jaccard],
            methods: vec![Method::Hac(Criterion::Ward)],
            retrieval: false,
            ..SweepConfig::default()
        };
        let rows = sweep(&c.graphs, &c.labels, &cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].measure, Measure::Euclidean);
        assert!(rows[0].map.is_none());
    }

    #[test]
    fn single_cell_matches_direct_evaluation() {
        let c = small();
        let cfg = SweepConfig {
            ks: vec![3],
            measures: vec![Measure::Overlap],
            ..SweepConfig::default()
        };
        let rows = sweep(&c.graphs, &c.labels, &cfg).unwrap();
        let f = features(&c.graphs, 3).unwrap();
        let report = evaluate(&f.matrix(Measure::Overlap).unwrap(), &Qrels::new(c.labels.clone())).unwrap();
        assert_eq!(rows[0].map, Some(report.map));
    }

    #[test]
    fn method_names() {
        for m in [Method::KMeans, Method::Hac(Criterion::Average), Method::Hac(Criterion::Ward)] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("hac-foo".parse::<Method>().is_err());
    }

    #[test]
    fn bench_reports_every_cell() {
        let cfg = BenchConfig {
            sizes: vec![(4, 4)],
            ks: vec![1, 2],
            measures: vec![Measure::HammingBool],
            items: 3,
            runs: 1,
            seed: 0,
        };
        let rows = bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.crossings == 16 && r.fingerprint_secs >= 0.0));
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
