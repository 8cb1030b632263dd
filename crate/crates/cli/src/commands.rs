use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use linkpred_core::analysis::default_k_min;
use linkpred_core::evaluation::{format_epsilon_trace, format_theta_trace, ThetaSearchConfig};
use linkpred_core::formats::{read_pairs, read_scores, write_pairs, write_scores, ScoreFile};
use linkpred_core::synthgen::default_window;
use linkpred_core::{
    auc, classify_pairs, degree_histogram, fit_power_law, generate_pa_network, make_benchmark,
    normalize_scores, optimize_epsilon, optimize_theta, score_batch, Adjacency, Binning,
    CombinationWeight, EdgeList, GrowthParams, Method, QueryPairSet, Scores, ThetaGrid, Weighting,
};

use crate::config::Echo;
use crate::{
    join, CombineArgs, GenerateArgs, GraphInput, InspectArgs, Mode, OptimizeArgs, ScoreArgs,
    WeightingArg,
};

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("opening {}", path.display()))?,
    ))
}

fn write_file(
    path: &Path,
    fill: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    fill(&mut out)
        .and_then(|_| out.flush())
        .with_context(|| format!("writing {}", path.display()))
}

fn load_graph(input: &GraphInput) -> Result<EdgeList> {
    let edges = EdgeList::read(open(&input.edges)?, input.nodes)
        .with_context(|| format!("reading {}", input.edges.display()))?;
    Ok(match input.t1 {
        Some(t1) => edges.filter_by_time(|t| t <= t1),
        None => edges,
    })
}

/// Graph plus pairs. Without `--nodes`, ids that only occur in the pairs
/// file count as isolated nodes.
fn load_graph_and_pairs(input: &GraphInput, path: &Path) -> Result<(EdgeList, QueryPairSet)> {
    let mut edges = load_graph(input)?;
    let pairs = read_pairs(open(path)?).with_context(|| format!("reading {}", path.display()))?;
    if input.nodes.is_none() {
        let top = pairs
            .pairs()
            .iter()
            .map(|&(u, v)| u.index().max(v.index()) + 1)
            .max();
        if let Some(top) = top.filter(|&t| t > edges.node_count()) {
            edges = EdgeList::new(top, edges.edges().to_vec())?;
        }
    }
    pairs
        .check_range(edges.node_count())
        .with_context(|| format!("pairs in {}", path.display()))?;
    Ok((edges, pairs))
}

/// Labels from `labels_path`, or from `pairs` itself; positional alignment
/// with `pairs` is required.
fn with_labels(pairs: QueryPairSet, labels_path: Option<&Path>) -> Result<QueryPairSet> {
    let Some(path) = labels_path else {
        ensure!(
            pairs.labels().is_some(),
            "pairs file has no labels; pass --labels"
        );
        return Ok(pairs);
    };
    let labelled =
        read_pairs(open(path)?).with_context(|| format!("reading {}", path.display()))?;
    ensure!(
        labelled.labels().is_some(),
        "{} has no labels",
        path.display()
    );
    ensure!(
        labelled.pairs() == pairs.pairs(),
        "{} does not list the same pairs in the same order",
        path.display()
    );
    Ok(labelled)
}

fn weighting(arg: &WeightingArg) -> Weighting<f64> {
    match arg {
        WeightingArg::Uniform => Weighting::Uniform,
        WeightingArg::Time(p) => Weighting::Time(*p),
    }
}

fn method(id: &str, eps: f64) -> Result<Method<f64>> {
    Ok(match id.parse::<Method<f64>>()? {
        Method::PreferentialAttachment { .. } => {
            ensure!(
                eps.is_finite() && eps >= 0.0,
                "--eps must be a non-negative number"
            );
            Method::PreferentialAttachment { epsilon: eps }
        }
        other => other,
    })
}

fn graph_echo(echo: Echo, g: &GraphInput) -> Echo {
    echo.set("edges", g.edges.display())
        .opt("nodes", g.nodes)
        .opt("t1", g.t1)
}

pub fn generate(a: GenerateArgs) -> Result<()> {
    let params = GrowthParams {
        n_final: a.n,
        m: a.m,
        b_offset: a.b,
        seed: a.seed,
    };
    params.validate()?;
    let split = a.pairs_out.is_some() || a.train_out.is_some();
    let (dt1, dt2) = default_window(&params);
    let (t1, t2) = (a.t1.unwrap_or(dt1), a.t2.unwrap_or(dt2));

    let mut echo = Echo::new("generate")
        .set("n", a.n)
        .set("m", a.m)
        .set("b", a.b)
        .set("seed", a.seed)
        .set("out", a.out.display());
    if split {
        echo = echo
            .opt("pairs-out", a.pairs_out.as_ref().map(|p| p.display()))
            .opt("train-out", a.train_out.as_ref().map(|p| p.display()))
            .set("t1", t1)
            .set("t2", t2)
            .set("n-pairs", a.n_pairs)
            .set("pos-cap", a.pos_cap);
    }
    echo.print();

    let edges = generate_pa_network::<f64>(&params)?;
    write_file(&a.out, |w| edges.write(w))?;
    println!("nodes {}", edges.node_count());
    println!("links {}", edges.len());

    if split {
        let bench = make_benchmark(&edges, t1, t2, a.n_pairs, a.pos_cap, a.seed)?;
        let header = bench.header();
        if let Some(path) = &a.pairs_out {
            write_file(path, |w| write_pairs(w, &bench.pairs, Some(&header)))?;
        }
        if let Some(path) = &a.train_out {
            write_file(path, |w| bench.train_edges.write(w))?;
        }
        println!("{}", header.trim_start_matches("# "));
    }
    Ok(())
}

pub fn inspect(a: InspectArgs) -> Result<()> {
    let echo = graph_echo(Echo::new("inspect"), &a.graph)
        .opt("pairs", a.pairs.as_ref().map(|p| p.display()))
        .opt("kmin", a.kmin)
        .set("ratio", a.ratio)
        .opt("out", a.out.as_ref().map(|p| p.display()));
    echo.print();

    let (edges, pairs) = match &a.pairs {
        Some(path) => {
            let (e, p) = load_graph_and_pairs(&a.graph, path)?;
            (e, Some(p))
        }
        None => (load_graph(&a.graph)?, None),
    };
    let adj = Adjacency::build(&edges, &Weighting::Uniform);
    let deg = adj.degrees();
    let isolated = deg.as_slice().iter().filter(|&&k| k == 0.0).count();
    println!("nodes {}", edges.node_count());
    println!("links {}", edges.len());
    println!("distinct_links {}", adj.nnz() / 2);
    println!("isolated {isolated}");

    if let Some(pairs) = &pairs {
        println!("pairs {}", pairs.len());
        if let Some(labels) = pairs.labels() {
            let pos = labels.iter().filter(|l| l.is_positive()).count();
            println!("positives {pos}");
            println!("negatives {}", labels.len() - pos);
        }
        println!("{}", classify_pairs(&deg, pairs));
    }

    let hist = degree_histogram(&deg, Binning::Logarithmic { ratio: a.ratio }, false)?;
    let k_min = a.kmin.unwrap_or_else(|| default_k_min(&deg));
    let fit = match fit_power_law(&hist, k_min) {
        Ok(fit) => {
            println!(
                "gamma {:.6} kmin {} r2 {:.6} bins {}",
                fit.gamma, fit.k_min, fit.r_squared, fit.points_used
            );
            Some(fit)
        }
        Err(e) => {
            eprintln!("warning: power-law fit failed: {e}");
            None
        }
    };
    if let Some(path) = &a.out {
        let text = linkpred_core::analysis::format_histogram(&hist, fit.as_ref());
        write_file(path, |w| w.write_all(text.as_bytes()))?;
    }
    Ok(())
}

pub fn score(a: ScoreArgs) -> Result<()> {
    let method = method(&a.method, a.eps)?;
    graph_echo(Echo::new("score"), &a.graph)
        .set("pairs", a.pairs.display())
        .set("method", method.tag())
        .set("eps", a.eps)
        .set("theta", &a.theta)
        .set("out", a.out.display())
        .print();

    let (edges, pairs) = load_graph_and_pairs(&a.graph, &a.pairs)?;
    let adj = Adjacency::build(&edges, &weighting(&a.theta));
    let deg = adj.degrees();
    let scores = score_batch(&method, &adj, &deg, &pairs)?;
    write_file(&a.out, |w| write_scores(w, &pairs, &scores))?;
    println!("pairs {}", pairs.len());
    if let Some(labels) = pairs.labels() {
        println!("auc {:.5}", auc(&scores.scores, labels)?);
    }
    Ok(())
}

fn load_scores(path: &Path, pairs: &QueryPairSet, tag: &str) -> Result<Scores> {
    let file: ScoreFile<f64> =
        read_scores(open(path)?).with_context(|| format!("reading {}", path.display()))?;
    ensure!(
        file.pairs == pairs.pairs(),
        "{} is not aligned with the labels file",
        path.display()
    );
    Ok(Scores::new(tag, file.scores))
}

pub fn combine(a: CombineArgs) -> Result<()> {
    let mut echo = Echo::new("combine");
    echo = match &a.scores {
        Some(s) => echo.set("scores", s.display()),
        None => echo
            .opt("pa", a.pa.as_ref().map(|p| p.display()))
            .opt("aa", a.aa.as_ref().map(|p| p.display()))
            .opt("eps", a.eps),
    };
    echo.set("labels", a.labels.display())
        .opt("out", a.out.as_ref().map(|p| p.display()))
        .print();

    let labelled =
        read_pairs(open(&a.labels)?).with_context(|| format!("reading {}", a.labels.display()))?;
    let Some(labels) = labelled.labels() else {
        bail!("{} has no labels", a.labels.display());
    };
    let scores = match (&a.scores, &a.pa, &a.aa) {
        (Some(path), _, _) => load_scores(path, &labelled, "scores")?,
        (None, Some(pa), Some(aa)) => {
            let Some(eps) = a.eps else {
                bail!("--eps is required when blending two score files");
            };
            let w = CombinationWeight::new(eps)?;
            let pa = normalize_scores(&load_scores(pa, &labelled, "pa")?);
            let aa = normalize_scores(&load_scores(aa, &labelled, "aa")?);
            linkpred_core::combine(&aa, &pa, w)?
        }
        _ => bail!("give either --scores or both --pa and --aa"),
    };
    if let Some(path) = &a.out {
        write_file(path, |w| write_scores(w, &labelled, &scores))?;
    }
    println!("auc {:.5}", auc(&scores.scores, labels)?);
    Ok(())
}

pub fn optimize(a: OptimizeArgs) -> Result<()> {
    let mut echo = graph_echo(Echo::new("optimize"), &a.graph)
        .set("pairs", a.pairs.display())
        .opt("labels", a.labels.as_ref().map(|p| p.display()))
        .set("mode", format!("{:?}", a.mode).to_lowercase())
        .set("eps", a.eps);
    echo = match a.mode {
        Mode::Epsilon => echo.set("grid-step", a.grid_step).set("theta", &a.theta),
        Mode::Theta => echo
            .set("method", &a.method)
            .set("theta0", join(&a.theta0.0))
            .set("theta1", join(&a.theta1.0))
            .set("theta2", join(&a.theta2.0))
            .set("theta3", join(&a.theta3.0))
            .set("max-passes", a.max_passes),
    };
    echo.opt("out", a.out.as_ref().map(|p| p.display())).print();

    let (edges, pairs) = load_graph_and_pairs(&a.graph, &a.pairs)?;
    let pairs = with_labels(pairs, a.labels.as_deref())?;
    let labels = pairs.labels().expect("checked above");

    let trace = match a.mode {
        Mode::Epsilon => {
            let adj = Adjacency::build(&edges, &weighting(&a.theta));
            let deg = adj.degrees();
            let pa = score_batch(&method("pa", a.eps)?, &adj, &deg, &pairs)?;
            let aa = score_batch(&Method::AdamicAdar, &adj, &deg, &pairs)?;
            let found = optimize_epsilon(&aa, &pa, labels, a.grid_step)?;
            println!("best_eps {} auc {:.5}", found.best, found.best_auc);
            println!("evaluations {}", found.trace.len());
            format_epsilon_trace(&found.trace)
        }
        Mode::Theta => {
            let grid = ThetaGrid {
                theta0: a.theta0.0.clone(),
                theta1: a.theta1.0.clone(),
                theta2: a.theta2.0.clone(),
                theta3: a.theta3.0.clone(),
            };
            let config = ThetaSearchConfig {
                max_passes: a.max_passes,
                ..ThetaSearchConfig::default()
            };
            let found = optimize_theta(&edges, &pairs, &method(&a.method, a.eps)?, &grid, &config)?;
            println!("best_theta {} auc {:.5}", found.best, found.best_auc);
            println!("evaluations {}", found.evaluations);
            println!("passes {}", found.passes);
            format_theta_trace(&found.trace)
        }
    };
    if let Some(path) = &a.out {
        write_file(path, |w| w.write_all(trace.as_bytes()))?;
    }
    Ok(())
}
