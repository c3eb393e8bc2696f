use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};

use textile_core::clustering::{Criterion, Quality};
use textile_core::corpus::{self, Corpus, CorpusConfig};
use textile_core::experiment::{self, BenchConfig, Features, Method, ReproConfig, SweepConfig};
use textile_core::generators::Family;
use textile_core::retrieval::{self, Qrels};
use textile_core::{Error, Measure};

#[derive(Parser)]
#[command(name = "textile", version, about = "Textile crossing graphs: generation, fingerprints, retrieval and clustering")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Flat key=value file with default flag values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labelled corpus of TG1 files and a manifest.
    Generate(GenerateArgs),
    /// Write the k-neighbourhood fingerprint of one graph or a directory.
    Fingerprint {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank a corpus against a query graph, or every item against the rest.
    Query {
        #[command(flatten)]
        common: MeasureArgs,
        /// A TG1 file, or `all`.
        #[arg(long)]
        query: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the pairwise distance matrix of a corpus.
    Matrix {
        #[command(flatten)]
        common: MeasureArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cluster a corpus and write item_id,cluster_id.
    Cluster {
        #[command(flatten)]
        common: MeasureArgs,
        #[arg(long, default_value = "hac")]
        algo: String,
        #[arg(long, default_value = "complete")]
        criterion: Criterion,
        /// Cluster count (default: number of labels in the corpus).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_iter: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// MAP, MeanP and the 11-point interpolated PR/FR curves.
    EvaluateRetrieval {
        #[command(flatten)]
        common: MeasureArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Purity, NMI, Rand index and pairwise precision/recall/F of a clustering.
    EvaluateClustering {
        /// Manifest (`path,label`) with the true categories.
        #[arg(long)]
        truth: PathBuf,
        /// Output of `cluster` (`item_id,cluster_id`).
        #[arg(long)]
        assignments: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metrics for every combination of k, measure and clustering method.
    Sweep {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "euclid,cos-freq,cos-tfidf,ham-bool,ham-freq,jaccard,overlap")]
        measures: Vec<Measure>,
        /// hac-single, hac-complete, hac-average, hac-ward, kmeans.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<Method>,
        #[arg(long)]
        no_retrieval: bool,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_iter: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median wall times of fingerprinting and distance matrices.
    Bench {
        /// Plain-weave grids as ROWSxCOLS.
        #[arg(long, value_delimiter = ',', default_value = "32x32,32x64,64x64,64x128")]
        sizes: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "euclid,cos-freq,cos-tfidf,ham-bool,ham-freq,jaccard,overlap")]
        measures: Vec<Measure>,
        #[arg(long, default_value_t = 48)]
        items: usize,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the evaluation corpus, run the sweeps and summarize.
    Repro {
        #[arg(long)]
        out: PathBuf,
        /// 16 x 100 specimens of 48..96 instead of 16 x 25 of 16..32.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// Comma-separated family names (default: the sixteen categories).
    #[arg(long, value_delimiter = ',')]
    families: Vec<Family>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, requires = "cols")]
    rows: Option<usize>,
    #[arg(long, requires = "rows")]
    cols: Option<usize>,
    /// MIN-MAX for both grid dimensions.
    #[arg(long, conflicts_with = "rows")]
    size_range: Option<String>,
    #[arg(long, default_value_t = 0.01)]
    flip_rate: f64,
    #[arg(long, default_value_t = 0.85)]
    rotate_rate: f64,
    #[arg(long, default_value_t = 0.35)]
    mirror_rate: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Full-scale defaults: 100 samples of 48..96.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    measure: Measure,
    #[arg(long)]
    corpus: PathBuf,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Error {
    Error::Io {
        path: "output".into(),
        source: e,
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Error> {
    let bad = || Error::Config(format!("size range {s:?} is not MIN-MAX"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
}

fn parse_size(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Config(format!("size {s:?} is not ROWSxCOLS"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn load_features(common: &MeasureArgs) -> Result<(Corpus, Features), Error> {
    let corpus = corpus::load_corpus(&common.corpus)?;
    let features = experiment::features(&corpus.graphs, common.k)?;
    Ok((corpus, features))
}

fn generate(a: GenerateArgs) -> Result<(), Error> {
    let mut cfg = if a.full { CorpusConfig::full() } else { CorpusConfig::desk() };
    if !a.families.is_empty() {
        cfg.families = a.families;
    }
    if let Some(n) = a.samples {
        cfg.samples = n;
    }
    if let (Some(r), Some(c)) = (a.rows, a.cols) {
        cfg.rows = r..=r;
        cfg.cols = c..=c;
    }
    if let Some(s) = &a.size_range {
        cfg.rows = parse_range(s)?;
        cfg.cols = cfg.rows.clone();
    }
    cfg.flip_rate = a.flip_rate;
    cfg.rotate_rate = a.rotate_rate;
    cfg.mirror_rate = a.mirror_rate;
    cfg.seed = a.seed;
    let specimens = corpus::make_corpus(&cfg)?;
    corpus::write_corpus(&a.out, &specimens)?;
    eprintln!("wrote {} graphs to {}", specimens.len(), a.out.display());
    Ok(())
}

fn fingerprint_cmd(k: usize, input: &Path, out: &Option<PathBuf>) -> Result<(), Error> {
    let corpus = if input.is_dir() {
        corpus::load_corpus(input)?
    } else {
        let g = corpus::read_graph(input)?;
        let name = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Corpus {
            names: vec![name],
            labels: vec![g.label().unwrap_or_default().to_string()],
            graphs: vec![g],
        }
    };
    let fps = experiment::fingerprints(&corpus.graphs, k)?;
    let mut w = csv::Writer::from_writer(output(out)?);
    w.write_record(["graph_id", "neighbourhood_code", "count"])?;
    for (name, fp) in corpus.names.iter().zip(&fps) {
        for (nb, count) in fp.sorted() {
            w.write_record([name.clone(), nb.to_string(), count.to_string()])?;
        }
    }
    w.flush().map_err(io_err)
}

fn query_cmd(common: &MeasureArgs, query: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    let corpus = corpus::load_corpus(&common.corpus)?;
    let mut w = csv::Writer::from_writer(output(out)?);
    w.write_record(["query", "rank", "item", "distance"])?;
    let mut emit = |q: &str, list: &retrieval::RankedList| -> Result<(), Error> {
        for (r, &(item, d)) in list.items.iter().enumerate() {
            w.write_record([q, &(r + 1).to_string(), &corpus.names[item], &d.to_string()])?;
        }
        Ok(())
    };
    if query == "all" {
        let f = experiment::features(&corpus.graphs, common.k)?;
        let matrix = f.matrix(common.measure)?;
        for q in 0..corpus.len() {
            emit(&corpus.names[q], &retrieval::rank_in_matrix(&matrix, q))?;
        }
    } else {
        // The query joins the corpus for vocabulary and document statistics.
        let path = Path::new(query);
        let g = corpus::read_graph(path)?;
        let mut graphs = corpus.graphs.clone();
        graphs.push(g);
        let f = experiment::features(&graphs, common.k)?;
        let (items, q) = f.vectors.split_at(corpus.len());
        let list = retrieval::rank(items, &q[0], None, common.measure, Some(&f.stats))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        emit(&name, &list)?;
    }
    w.flush().map_err(io_err)
}

fn cluster_cmd(
    common: &MeasureArgs,
    algo: &str,
    criterion: Criterion,
    m: Option<usize>,
    max_iter: usize,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<(), Error> {
    let method = match algo {
        "hac" => Method::Hac(criterion),
        "kmeans" => Method::KMeans,
        _ => return Err(Error::Config(format!("unknown algorithm {algo:?}; use hac or kmeans"))),
    };
    let (corpus, f) = load_features(common)?;
    let m = m.unwrap_or_else(|| Qrels::new(corpus.labels.clone()).category_count());
    let assignments = experiment::cluster(&f, None, method, common.measure, m, max_iter, seed)?;
    let mut w = csv::Writer::from_writer(output(out)?);
    w.write_record(["item_id", "cluster_id"])?;
    for (name, c) in corpus.names.iter().zip(assignments) {
        w.write_record([name.as_str(), &c.to_string()])?;
    }
    w.flush().map_err(io_err)
}

fn evaluate_clustering(truth: &Path, assignments: &Path, out: &Option<PathBuf>) -> Result<(), Error> {
    let manifest = corpus::read_manifest(truth)?;
    let stem = |p: &str| {
        Path::new(p)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let labels: std::collections::HashMap<String, String> =
        manifest.into_iter().map(|(p, l)| (stem(&p), l)).collect();
    let mut rdr = csv::Reader::from_path(assignments)?;
    let mut found = Vec::new();
    let mut truth_labels = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let (item, cluster) = (rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""));
        let label = labels
            .get(item)
            .ok_or_else(|| Error::Config(format!("item {item:?} is not in the manifest")))?;
        let cluster: usize = cluster
            .parse()
            .map_err(|_| Error::Config(format!("bad cluster id {cluster:?}")))?;
        found.push(cluster);
        truth_labels.push(label.clone());
    }
    if found.len() != labels.len() {
        return Err(Error::PartitionMismatch {
            left: found.len(),
            right: labels.len(),
        });
    }
    let qrels = Qrels::new(truth_labels);
    let q = Quality::compute(&found, qrels.classes())?;
    let mut w = csv::Writer::from_writer(output(out)?);
    w.write_record(Quality::NAMES)?;
    w.write_record(q.values().iter().map(|v| format!("{v:.6}")))?;
    w.flush().map_err(io_err)
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Fingerprint { k, input, out } => fingerprint_cmd(k, &input, &out),
        Command::Query { common, query, out } => query_cmd(&common, &query, &out),
        Command::Matrix { common, out } => {
            let (corpus, f) = load_features(&common)?;
            let matrix = f.matrix(common.measure)?;
            let mut w = output(&out)?;
            matrix.write_csv(&mut w, &corpus.hash()).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        Command::Cluster {
            common,
            algo,
            criterion,
            m,
            max_iter,
            seed,
            out,
        } => cluster_cmd(&common, &algo, criterion, m, max_iter, seed, &out),
        Command::EvaluateRetrieval { common, out } => {
            let (corpus, f) = load_features(&common)?;
            let report = retrieval::evaluate(&f.matrix(common.measure)?, &Qrels::new(corpus.labels))?;
            experiment::write_retrieval(output(&out)?, common.measure, common.k, &report)
        }
        Command::EvaluateClustering { truth, assignments, out } => evaluate_clustering(&truth, &assignments, &out),
        Command::Sweep {
            corpus,
            k,
            measures,
            methods,
            no_retrieval,
            m,
            max_iter,
            seed,
            out,
        } => {
            let c = corpus::load_corpus(&corpus)?;
            let cfg = SweepConfig {
                ks: k,
                measures,
                methods,
                retrieval: !no_retrieval,
                m,
                max_iter,
                seed,
            };
            let rows = experiment::sweep(&c.graphs, &c.labels, &cfg)?;
            experiment::write_sweep(output(&out)?, &rows)
        }
        Command::Bench {
            sizes,
            k,
            measures,
            items,
            runs,
            out,
        } => {
            let cfg = BenchConfig {
                sizes: sizes.iter().map(|s| parse_size(s)).collect::<Result<_, _>>()?,
                ks: k,
                measures,
                items,
                runs,
                seed: 0,
            };
            let rows = experiment::bench(&cfg)?;
            for r in &rows {
                eprintln!(
                    "{}x{} k={} {}: fingerprint {:.6}s matrix {:.6}s",
                    r.rows, r.cols, r.k, r.measure, r.fingerprint_secs, r.matrix_secs
                );
            }
            experiment::write_bench(output(&out)?, &rows)
        }
        Command::Repro { out, full, seed } => {
            let mut cfg = ReproConfig::default();
            if full {
                cfg.corpus = CorpusConfig::full();
            }
            if let Some(s) = seed {
                cfg.corpus.seed = s;
            }
            let (_, report) = experiment::repro(&cfg)?;
            let specimens = corpus::make_corpus(&cfg.corpus)?;
            corpus::write_corpus(&out.join("corpus"), &specimens)?;
            report.write(&out)?;
            print!("{}", report.summary());
            Ok(())
        }
    }
}

/// Turns `key=value` lines into flags placed right after the subcommand.
/// Keys whose flag is also given on the command line are dropped.
fn with_config(mut argv: Vec<String>) -> Result<Vec<String>, String> {
    let pos = argv
        .iter()
        .position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else { return Ok(argv) };
    let path = if let Some(v) = argv[pos].strip_prefix("--config=") {
        let v = v.to_string();
        argv.remove(pos);
        v
    } else {
        if pos + 1 >= argv.len() {
            return Err("--config needs a file".into());
        }
        argv.remove(pos);
        argv.remove(pos)
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", n + 1))?;
        let flag = format!("--{}", key.trim().replace('_', "-"));
        let given = |a: &String| *a == flag || a.starts_with(&format!("{flag}="));
        if argv.iter().any(given) {
            continue;
        }
        match value.trim() {
            "true" => extra.push(flag),
            "false" => {}
            v => extra.extend([flag, v.to_string()]),
        }
    }
    let names: Vec<String> = Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect();
    let at = argv
        .iter()
        .position(|a| names.contains(a))
        .ok_or("--config needs a subcommand")?;
    argv.splice(at + 1..at + 1, extra);
    Ok(argv)
}

fn main() -> ExitCode {
    let argv = match with_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let cmd = Cli::command().args_override_self(true);
    let cli = match cmd.try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::Config(_) | Error::UnknownMeasure(_) | Error::UnknownCriterion(_) | Error::WardMeasure(_)
            );
            ExitCode::from(if usage { 1 } else { 2 })
        }
    }
}

/// A reader such as `head` closing the pipe early is not a failure.
fn broken_pipe(e: &Error) -> bool {
    if let Error::Csv(c) = e {
        if let csv::ErrorKind::Io(io) = c.kind() {
            return io.kind() == io::ErrorKind::BrokenPipe;
        }
    }
    let mut cur: Option<&(dyn std::error::Error + 'static)> = Some(e);
    while let Some(err) = cur {
        if let Some(io) = err.downcast_ref::<io::Error>() {
            return io.kind() == io::ErrorKind::BrokenPipe;
        }
        cur = err.source();
    }
    false
}
