//! Subcommand implementations. Each returns the number of failed jobs so
//! `main` can set the exit code.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{Context, Result};

use hypercover::diagnostics::bounds_report;
use hypercover::generator::{calibrate_offset, generate, GeneratorConfig};
use hypercover::geometry::ModelParams;

use crate::args::{CalibrateArgs, DiagnoseArgs, EvaluateArgs, GenerateArgs, SolveArgs};
use crate::report::{config_hash, write_solve_csv};
use crate::runner::{
    gather_instances, instance_name, parse_algorithms, resolve_model, run_jobs, write_graph_files,
    Instance,
};

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<usize> {
    let seeds = args.seeds.list();
    let resolved = resolve_model(&args.model, &seeds)?;
    for &seed in &seeds {
        let config = GeneratorConfig {
            params: resolved.params,
            seed,
            mode: resolved.mode,
            edge_builder: resolved.edge_builder,
        };
        let graph = generate(&config);
        let base = if seeds.len() == 1 {
            args.output.clone()
        } else {
            let mut name = args
                .output
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            name.push_str(&format!("-s{seed}"));
            args.output.with_file_name(name)
        };
        let (edges_path, coords_path) = write_graph_files(&base, &graph, &config)?;
        eprintln!(
            "wrote {} and {} (n = {}, m = {}, avg deg = {:.3})",
            edges_path.display(),
            coords_path.display(),
            graph.vertex_count(),
            graph.edge_count(),
            graph.average_degree()
        );
    }
    Ok(0)
}

fn describe_solve(
    command: &str,
    instances: &[Instance],
    algorithms: &str,
    tau: Option<f64>,
    component_limit: Option<usize>,
    time_limit: f64,
) -> String {
    let names: Vec<&str> = instances.iter().map(|i| i.name.as_str()).collect();
    format!(
        "{command} graphs=[{}] algorithms=[{algorithms}] tau={tau:?} \
         component_limit={component_limit:?} time_limit={time_limit}",
        names.join(",")
    )
}

fn solve_like(
    command: &str,
    instances: Vec<Instance>,
    algorithm_names: &[String],
    tau: Option<f64>,
    component_limit: Option<usize>,
    time_limit: f64,
    output: &Option<PathBuf>,
) -> Result<usize> {
    let algorithms = parse_algorithms(algorithm_names)?;
    let (mut rows, errors) = run_jobs(
        &instances,
        &algorithms,
        tau,
        component_limit,
        Duration::from_secs_f64(time_limit),
    );
    let description = describe_solve(
        command,
        &instances,
        &algorithm_names.join(","),
        tau,
        component_limit,
        time_limit,
    );
    let mut out = open_output(output)?;
    write_solve_csv(&mut out, &description, &mut rows, &errors)?;
    out.flush()?;
    for e in &errors {
        eprintln!(
            "error: graph={} algorithm={} seed={:?}: {}",
            e.graph, e.algorithm, e.seed, e.message
        );
    }
    Ok(errors.len())
}

pub fn cmd_solve(args: &SolveArgs) -> Result<usize> {
    let instances = gather_instances(
        &args.input,
        args.coords.as_deref(),
        &args.model,
        &args.seeds,
    )?;
    solve_like(
        "solve",
        instances,
        &args.algorithms,
        args.tau,
        args.component_limit,
        args.time_limit,
        &args.output,
    )
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<usize> {
    let instances = gather_instances(
        &args.input,
        args.coords.as_deref(),
        &args.model,
        &args.seeds,
    )?;
    solve_like(
        "evaluate",
        instances,
        &args.algorithms,
        args.tau,
        args.component_limit,
        args.time_limit,
        &args.output,
    )
}

pub const DIAGNOSE_HEADER: &str = "graph,n,m,seed,tau,model,gamma,rho,sector_width,n_sectors,w,\
                                   component_limit,inner_disk,n_outer,wide_run_vertices,\
                                   large_narrow_vertices,narrow_run_vertices,nonempty_fraction,\
                                   occupancy_lower,occupancy_upper,predicted_inner,predicted_wide,\
                                   predicted_large_narrow,inner_ratio,wide_ratio,\
                                   large_narrow_ratio,excess_ratio,edge_span_violations";

pub fn cmd_diagnose(args: &DiagnoseArgs) -> Result<usize> {
    if !args.input.is_empty() && args.coords.is_none() {
        anyhow::bail!("diagnose on --input requires --coords (coordinates are measured)");
    }
    let instances = gather_instances(
        &args.input,
        args.coords.as_deref(),
        &args.model,
        &args.seeds,
    )?;
    // Region predictors need the model parameters. They come from the
    // generator config for sampled graphs; for loaded graphs `n` is the
    // file's vertex count and alpha/C must be given on the command line.
    let params = if args.input.is_empty() {
        resolve_model(&args.model, &args.seeds.list())?.params
    } else {
        let alpha = args
            .model
            .alpha
            .context("diagnose on --input requires --alpha")?;
        let c = args
            .model
            .c
            .context("diagnose on --input requires --c (the offset the graph was built with)")?;
        ModelParams::new(instances[0].graph.vertex_count(), alpha, c)?
    };
    let model_label = if args.input.is_empty() {
        match args.model.mode {
            crate::args::ModeArg::Fixed => "fixed",
            crate::args::ModeArg::Poisson => "poisson",
        }
    } else {
        "file"
    };

    let mut out = open_output(&args.output)?;
    let description = format!(
        "diagnose graphs=[{}] tau={} model={model_label}",
        instances
            .iter()
            .map(|i| i.name.as_str())
            .collect::<Vec<_>>()
            .join(","),
        args.tau
    );
    writeln!(out, "# config_hash {}", config_hash(&description))?;
    writeln!(out, "# config {description}")?;
    writeln!(out, "{DIAGNOSE_HEADER}")?;
    let mut failures = 0usize;
    for inst in &instances {
        match bounds_report(&inst.graph, &params, args.tau) {
            Ok(rep) => {
                let c = rep.counts;
                let k = rep.constants;
                writeln!(
                    out,
                    "{},{},{},{},{},{model_label},{:.9},{:.9},{:.9e},{},{:.6},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.3},{:.3},{:.3},{:.6},{:.6},{:.6},{:.6},{}",
                    inst.name,
                    inst.graph.vertex_count(),
                    inst.graph.edge_count(),
                    inst.seed.map(|s| s.to_string()).unwrap_or_default(),
                    args.tau,
                    k.gamma,
                    k.rho,
                    k.sector_width,
                    k.n_sectors,
                    k.w,
                    k.component_limit,
                    c.inner_disk,
                    c.n_outer,
                    c.wide_run_vertices,
                    c.large_narrow_vertices,
                    c.narrow_run_vertices,
                    rep.nonempty_fraction,
                    rep.occupancy_lower,
                    rep.occupancy_upper,
                    rep.predicted_inner,
                    rep.predicted_wide,
                    rep.predicted_large_narrow,
                    rep.inner_ratio,
                    rep.wide_ratio,
                    rep.large_narrow_ratio,
                    rep.excess_ratio,
                    rep.outer_edge_span_violations,
                )?;
                eprintln!(
                    "{}: n={} inner={} ({:.1}% of n) outer={} wide={} large_narrow={} \
                     nonempty={:.4} in [{:.4}, {:.4}] ratios inner/wide/large = \
                     {:.3}/{:.3}/{:.3} excess={:.3} span_violations={}",
                    inst.name,
                    rep.vertex_count,
                    c.inner_disk,
                    100.0 * c.inner_disk as f64 / rep.vertex_count.max(1) as f64,
                    c.n_outer,
                    c.wide_run_vertices,
                    c.large_narrow_vertices,
                    rep.nonempty_fraction,
                    rep.occupancy_lower,
                    rep.occupancy_upper,
                    rep.inner_ratio,
                    rep.wide_ratio,
                    rep.large_narrow_ratio,
                    rep.excess_ratio,
                    rep.outer_edge_span_violations,
                );
            }
            Err(e) => {
                failures += 1;
                writeln!(out, "# error graph={} : {e}", inst.name)?;
                eprintln!("error: graph={}: {e}", inst.name);
            }
        }
    }
    out.flush()?;
    Ok(failures)
}

pub fn cmd_calibrate(args: &CalibrateArgs) -> Result<usize> {
    let seeds = args.seeds.list();
    let c = calibrate_offset(args.avg_degree, args.n, args.alpha, &seeds)?;
    let params = ModelParams::new(args.n, args.alpha, c)?;
    eprintln!(
        "n = {}, alpha = {}, target degree {} -> C = {c} (R = {}), e.g. {}",
        args.n,
        args.alpha,
        args.avg_degree,
        params.radius(),
        instance_name(&params, 0),
    );
    println!("{c}");
    Ok(0)
}
