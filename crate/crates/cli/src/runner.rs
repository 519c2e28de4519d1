//! Loading/generating instances and running algorithm jobs.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use hypercover::cover::{
    adapted_greedy_degree, adapted_greedy_radius, approximation_ratio, degree_component_limit,
    exact_cover, standard_greedy, ExactResult, ExactStatus,
};
use hypercover::generator::{
    self, calibrate_offset, generate, EdgeBuilder, GeneratorConfig, SampleMode,
};
use hypercover::geometry::ModelParams;
use hypercover::graph::{
    self, is_vertex_cover, load_edge_list, load_graph_with_coordinates, Graph,
};

use crate::args::{BuilderArg, ModeArg, ModelArgs, SeedArgs};
use crate::report::Row;
use crate::report::RowError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    AdaptedDegree,
    AdaptedRadius,
    Exact,
    Standard,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::AdaptedDegree => "adapted-degree",
            Algorithm::AdaptedRadius => "adapted-radius",
            Algorithm::Exact => "exact",
            Algorithm::Standard => "standard",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "adapted-degree" => Ok(Algorithm::AdaptedDegree),
            "adapted-radius" => Ok(Algorithm::AdaptedRadius),
            "exact" => Ok(Algorithm::Exact),
            "standard" => Ok(Algorithm::Standard),
            other => bail!(
                "unknown algorithm {other:?}; expected standard, adapted-degree, \
                 adapted-radius, or exact"
            ),
        }
    }
}

pub fn parse_algorithms(names: &[String]) -> Result<Vec<Algorithm>> {
    let mut algorithms: Vec<Algorithm> = names
        .iter()
        .map(|s| Algorithm::parse(s.trim()))
        .collect::<Result<_>>()?;
    algorithms.sort_unstable();
    algorithms.dedup();
    if algorithms.is_empty() {
        bail!("no algorithms selected");
    }
    Ok(algorithms)
}

/// One graph to run jobs on.
pub struct Instance {
    pub name: String,
    pub graph: Arc<Graph>,
    pub seed: Option<u64>,
}

pub struct ResolvedModel {
    pub params: ModelParams,
    pub mode: SampleMode,
    pub edge_builder: EdgeBuilder,
}

impl ModeArg {
    fn to_core(self) -> SampleMode {
        match self {
            ModeArg::Fixed => SampleMode::FixedCount,
            ModeArg::Poisson => SampleMode::PoissonCount,
        }
    }
}

impl BuilderArg {
    fn to_core(self) -> EdgeBuilder {
        match self {
            BuilderArg::Naive => EdgeBuilder::Naive,
            BuilderArg::Accelerated => EdgeBuilder::Accelerated,
        }
    }
}

/// Resolves model arguments, calibrating the offset when `--avg-degree`
/// was given instead of `--c`.
pub fn resolve_model(model: &ModelArgs, seeds: &[u64]) -> Result<ResolvedModel> {
    let n = model.n.context("--n is required to generate graphs")?;
    let alpha = model
        .alpha
        .context("--alpha is required to generate graphs")?;
    let c = match (model.c, model.avg_degree) {
        (Some(c), _) => c,
        (None, Some(target)) => {
            let c = calibrate_offset(target, n, alpha, seeds)?;
            eprintln!("calibrated C = {c} for average degree {target}");
            c
        }
        (None, None) => bail!("either --c or --avg-degree is required"),
    };
    Ok(ResolvedModel {
        params: ModelParams::new(n, alpha, c)?,
        mode: model.mode.to_core(),
        edge_builder: model.edge_builder.to_core(),
    })
}

pub fn instance_name(params: &ModelParams, seed: u64) -> String {
    format!(
        "hrg-n{}-a{}-c{}-s{seed}",
        params.n(),
        params.alpha(),
        params.c()
    )
}

/// Collects the instances for solve/evaluate/diagnose: either loaded from
/// files or generated per seed.
pub fn gather_instances(
    inputs: &[PathBuf],
    coords: Option<&Path>,
    model: &ModelArgs,
    seeds: &SeedArgs,
) -> Result<Vec<Instance>> {
    if !inputs.is_empty() {
        if coords.is_some() && inputs.len() > 1 {
            bail!("--coords applies to a single --input");
        }
        return inputs
            .iter()
            .map(|path| {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                let file =
                    File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
                let reader = BufReader::new(file);
                let graph = match coords {
                    Some(cpath) => {
                        let cfile = File::open(cpath)
                            .with_context(|| format!("cannot open {}", cpath.display()))?;
                        load_graph_with_coordinates(reader, BufReader::new(cfile))?
                    }
                    None => load_edge_list(reader)?.graph,
                };
                Ok(Instance {
                    name,
                    graph: Arc::new(graph),
                    seed: None,
                })
            })
            .collect();
    }
    let seed_list = seeds.list();
    let resolved = resolve_model(model, &seed_list)?;
    let instances: Vec<Instance> = seed_list
        .par_iter()
        .map(|&seed| {
            let config = GeneratorConfig {
                params: resolved.params,
                seed,
                mode: resolved.mode,
                edge_builder: resolved.edge_builder,
            };
            Instance {
                name: instance_name(&resolved.params, seed),
                graph: Arc::new(generate(&config)),
                seed: Some(seed),
            }
        })
        .collect();
    Ok(instances)
}

/// Component-size cap used by adapted-degree for this instance.
pub fn degree_limit_for(n: usize, tau: Option<f64>, component_limit: Option<usize>) -> usize {
    match component_limit {
        Some(l) => l.max(1),
        None => degree_component_limit(n, tau.unwrap_or(1.0)),
    }
}

struct AlgoOutcome {
    cover_size: usize,
    greedy_count: Option<usize>,
    exact_cover_count: Option<usize>,
    time_ms: f64,
    exact: Option<ExactResult>,
}

/// Runs every (instance, algorithm) job, in parallel, and assembles the
/// deterministic row set. Per-row failures become [`RowError`]s.
pub fn run_jobs(
    instances: &[Instance],
    algorithms: &[Algorithm],
    tau: Option<f64>,
    component_limit: Option<usize>,
    time_limit: Duration,
) -> (Vec<Row>, Vec<RowError>) {
    // Startup validation: radius ordering needs coordinates everywhere.
    let mut errors: Vec<RowError> = Vec::new();
    if algorithms.contains(&Algorithm::AdaptedRadius) {
        for inst in instances {
            if inst.graph.coordinates().is_none() {
                errors.push(RowError {
                    graph: inst.name.clone(),
                    algorithm: "adapted-radius".into(),
                    seed: inst.seed,
                    message: "graph has no coordinates (supply --coords)".into(),
                });
            }
        }
        if !errors.is_empty() {
            return (Vec::new(), errors);
        }
    }

    let jobs: Vec<(usize, Algorithm)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, _)| algorithms.iter().map(move |&a| (i, a)))
        .collect();
    let outcomes: Vec<(usize, Algorithm, Result<AlgoOutcome>)> = jobs
        .par_iter()
        .map(|&(i, alg)| {
            let inst = &instances[i];
            let res = run_one(inst, alg, tau, component_limit, time_limit);
            (i, alg, res)
        })
        .collect();

    let mut per_instance: Vec<Vec<(Algorithm, AlgoOutcome)>> =
        (0..instances.len()).map(|_| Vec::new()).collect();
    for (i, alg, res) in outcomes {
        match res {
            Ok(outcome) => per_instance[i].push((alg, outcome)),
            Err(e) => errors.push(RowError {
                graph: instances[i].name.clone(),
                algorithm: alg.name().into(),
                seed: instances[i].seed,
                message: e.to_string(),
            }),
        }
    }

    let mut rows = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let outcomes = &per_instance[i];
        let exact = outcomes
            .iter()
            .find(|(a, _)| *a == Algorithm::Exact)
            .and_then(|(_, o)| o.exact.clone());
        let standard_size = outcomes
            .iter()
            .find(|(a, _)| *a == Algorithm::Standard)
            .map(|(_, o)| o.cover_size);
        for (alg, outcome) in outcomes {
            match build_row(inst, *alg, outcome, exact.as_ref(), standard_size) {
                Ok(row) => rows.push(row),
                Err(e) => errors.push(RowError {
                    graph: inst.name.clone(),
                    algorithm: alg.name().into(),
                    seed: inst.seed,
                    message: e.to_string(),
                }),
            }
        }
    }
    (rows, errors)
}

fn run_one(
    inst: &Instance,
    alg: Algorithm,
    tau: Option<f64>,
    component_limit: Option<usize>,
    time_limit: Duration,
) -> Result<AlgoOutcome> {
    let g = &*inst.graph;
    let result = match alg {
        Algorithm::Standard => standard_greedy(g),
        Algorithm::AdaptedDegree => {
            let limit = degree_limit_for(g.vertex_count(), tau, component_limit);
            adapted_greedy_degree(g, limit)
        }
        Algorithm::AdaptedRadius => adapted_greedy_radius(g, tau.unwrap_or(1.0))?,
        Algorithm::Exact => {
            let started = std::time::Instant::now();
            let exact = exact_cover(g, time_limit);
            let time_ms = started.elapsed().as_secs_f64() * 1e3;
            if let Some(cover) = &exact.cover {
                if !is_vertex_cover(g, cover) {
                    bail!("exact solver returned an invalid cover");
                }
            }
            return Ok(AlgoOutcome {
                cover_size: exact.upper_bound,
                greedy_count: None,
                exact_cover_count: None,
                time_ms,
                exact: Some(exact),
            });
        }
    };
    if !is_vertex_cover(g, &result.cover) {
        bail!("{} returned an invalid cover", alg.name());
    }
    Ok(AlgoOutcome {
        cover_size: result.cover.len(),
        greedy_count: Some(result.greedy_count),
        exact_cover_count: Some(result.exact_region_cover_count),
        time_ms: result.elapsed.as_secs_f64() * 1e3,
        exact: None,
    })
}

fn build_row(
    inst: &Instance,
    alg: Algorithm,
    outcome: &AlgoOutcome,
    exact: Option<&ExactResult>,
    standard_size: Option<usize>,
) -> Result<Row> {
    let mut row = Row {
        graph: inst.name.clone(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        algorithm: alg.name().into(),
        seed: inst.seed,
        cover_size: Some(outcome.cover_size),
        greedy_count: outcome.greedy_count,
        exact_cover_count: outcome.exact_cover_count,
        time_ms: outcome.time_ms,
        ..Row::default()
    };
    if let Some(exact) = exact {
        row.opt_status = Some(match exact.status {
            ExactStatus::Optimal => "optimal",
            ExactStatus::LowerBoundOnly => "lower_bound_only",
        });
        row.lower_bound = Some(exact.lower_bound);
        let ratio = approximation_ratio(outcome.cover_size, exact)
            .map_err(|e| anyhow!("solver inconsistency: {e}"))?;
        row.ratio = Some(ratio.value);
        row.ratio_is_bound = Some(ratio.is_bound);
        // Relative improvement over standard greedy, defined when the
        // optimum is exact and standard greedy missed it.
        if matches!(alg, Algorithm::AdaptedDegree | Algorithm::AdaptedRadius)
            && exact.status == ExactStatus::Optimal
        {
            let opt = exact.upper_bound;
            if let Some(std_size) = standard_size {
                if std_size > opt {
                    row.relative_error =
                        Some((outcome.cover_size - opt) as f64 / (std_size - opt) as f64);
                }
            }
        }
    }
    Ok(row)
}

/// Writes `<base>.edges` and `<base>.coords` for a generated graph.
pub fn write_graph_files(
    base: &Path,
    graph: &Graph,
    config: &GeneratorConfig,
) -> Result<(PathBuf, PathBuf)> {
    let edges_path = base.with_extension("edges");
    let coords_path = base.with_extension("coords");
    let coords = graph
        .coordinates()
        .expect("generated graphs carry coordinates");
    let meta = generator::metadata(config, graph.vertex_count());
    graph::write_edge_list(BufWriter::new(File::create(&edges_path)?), graph)?;
    graph::write_coordinates(BufWriter::new(File::create(&coords_path)?), coords, &meta)?;
    Ok((edges_path, coords_path))
}
