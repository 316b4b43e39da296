use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use dirgap_core::graph::{ball, one_median, resolve_boundary, BoundaryRule, Graph, NodeSet};
use dirgap_core::ingest::{
    format_edge_list, gen_tree, parse_edge_list, tree_node_count, write_csv, CsvTable, GeneratorSpec,
};
use dirgap_core::spectral::{dirichlet_gap_with, spectral_gap_with, EigenSolver, DEFAULT_DENSE_LIMIT};
use dirgap_core::{clustering, tree, Error};

use crate::{Boundary, Common, GapArgs, GenArgs, GrowArgs, Source, SweepArgs, TreeArgs, UsageError};

fn solver(common: &Common) -> Result<EigenSolver> {
    if common.tol.is_nan() || common.tol <= 0.0 {
        return Err(UsageError(format!("--tol must be positive, got {}", common.tol)).into());
    }
    Ok(EigenSolver::with_tol(common.tol))
}

fn generator(spec: &str, seed: u64) -> Result<GeneratorSpec> {
    let spec: GeneratorSpec = spec.parse().map_err(|e: Error| UsageError(e.to_string()))?;
    Ok(spec.with_seed(seed))
}

fn load(source: &Source) -> Result<Vec<Graph>> {
    let raw = match &source.gen {
        Some(spec) => vec![generator(spec, source.seed)?.generate()?],
        None => {
            let mut graphs = Vec::with_capacity(source.input.len());
            for path in &source.input {
                let (g, report) =
                    parse_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
                if report.duplicates + report.self_loops > 0 {
                    log::info!(
                        "{}: dropped {} duplicate edges and {} self-loops",
                        path.display(),
                        report.duplicates,
                        report.self_loops
                    );
                }
                graphs.push(g);
            }
            graphs
        }
    };
    Ok(raw
        .into_iter()
        .map(|g| {
            if source.keep_disconnected || g.is_connected() {
                return g;
            }
            let lcc = g.largest_component();
            log::warn!(
                "input is disconnected; keeping the largest component ({} of {} nodes)",
                lcc.graph.node_count(),
                g.node_count()
            );
            lcc.graph
        })
        .collect())
}

fn load_one(source: &Source) -> Result<Graph> {
    if source.input.len() > 1 {
        return Err(UsageError("this command takes a single --input".into()).into());
    }
    Ok(load(source)?.remove(0))
}

fn rule(boundary: Boundary) -> BoundaryRule<'static> {
    match boundary {
        Boundary::DegreeOne => BoundaryRule::DegreeOne,
        Boundary::Leaves => BoundaryRule::Leaves,
        Boundary::GridPerimeter => BoundaryRule::GridPerimeter,
    }
}

fn out_dir(common: &Common) -> Result<&Path> {
    fs::create_dir_all(&common.out).with_context(|| format!("creating {}", common.out.display()))?;
    Ok(&common.out)
}

pub fn gap(args: &GapArgs) -> Result<()> {
    let solver = solver(&args.common)?;
    let graphs = load(&args.source)?;
    let mut table = CsvTable::new(["n", "m", "boundary_size", "traditional_gap", "dirichlet_gap"]);
    for g in &graphs {
        let b = resolve_boundary(g, &rule(args.boundary))?;
        let traditional = spectral_gap_with(g, &solver)?;
        let dirichlet = dirichlet_gap_with(g, &b, &solver)?;
        table.push(vec![
            g.node_count().into(),
            g.edge_count().into(),
            b.boundary().len().into(),
            traditional.into(),
            dirichlet.into(),
        ]);
    }
    write_csv(&table, out_dir(&args.common)?.join("gap.csv"))?;
    Ok(())
}

pub fn tree_converge(args: &TreeArgs) -> Result<()> {
    if args.d < 3 || args.l_max < 1 {
        return Err(UsageError(format!("need --d >= 3 and --l-max >= 1, got {} and {}", args.d, args.l_max)).into());
    }
    let solver = solver(&args.common)?;
    let mut table = CsvTable::new(["L", "analytic_gap", "numeric_gap"]);
    for depth in 1..=args.l_max {
        let analytic = tree::dirichlet_gap_analytic(args.d, depth)?;
        let numeric = match tree_node_count(args.d, depth + 1) {
            Some(n) if n <= DEFAULT_DENSE_LIMIT => {
                let g = gen_tree(args.d, depth + 1)?;
                let b = resolve_boundary(&g, &BoundaryRule::Leaves)?;
                Some(dirichlet_gap_with(&g, &b, &solver)?)
            }
            _ => None,
        };
        table.push(vec![depth.into(), analytic.into(), numeric.into()]);
    }
    write_csv(&table, out_dir(&args.common)?.join("tree_converge.csv"))?;
    Ok(())
}

pub fn grow(args: &GrowArgs) -> Result<()> {
    let solver = solver(&args.common)?;
    let g = load_one(&args.source)?;
    let center = one_median(&g)?;
    let max_radius = g.eccentricity(center);
    log::info!("growing from node {} out to radius {max_radius}", g.label(center));
    let mut table = CsvTable::new(["r", "n_sub", "traditional_gap", "dirichlet_gap"]);
    for r in 1..=max_radius {
        let sub = g.induced(&ball(&g, center, r));
        let traditional = spectral_gap_with(&sub.graph, &solver)?;
        let dirichlet = match resolve_boundary(&sub.graph, &BoundaryRule::RadiusCut { parent: &g, subgraph: &sub }) {
            Ok(b) => Some(dirichlet_gap_with(&sub.graph, &b, &solver)?),
            Err(Error::NoInterior) => None,
            Err(e) => return Err(e.into()),
        };
        table.push(vec![r.into(), sub.graph.node_count().into(), traditional.into(), dirichlet.into()]);
    }
    write_csv(&table, out_dir(&args.common)?.join("grow.csv"))?;
    Ok(())
}

fn write_crossing_edges(g: &Graph, cut: &NodeSet, path: &Path) -> Result<()> {
    let mut text = String::new();
    for (u, v) in g.edges().filter(|&(u, v)| cut.contains(u) != cut.contains(v)) {
        text.push_str(g.label(u));
        text.push(' ');
        text.push_str(g.label(v));
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn cluster_sweep(args: &SweepArgs) -> Result<()> {
    let solver = solver(&args.common)?;
    let g = load_one(&args.source)?;
    let b = resolve_boundary(&g, &rule(args.boundary))?;
    let opts = clustering::SweepOptions { solver, sizes: args.sizes.clone() };
    let sweep = clustering::sweep_with(&g, &b, &opts)?;
    let report = clustering::compare_report(&sweep)?;
    let out = out_dir(&args.common)?;
    write_csv(&report.sizes, out.join("sweep_sizes.csv"))?;
    write_csv(&report.aggregate, out.join("sweep_aggregate.csv"))?;
    write_csv(&report.scatter, out.join("sweep_scatter.csv"))?;
    if args.write_cuts {
        let dir = out.join("cuts");
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for row in &sweep.rows {
            write_crossing_edges(&g, &sweep.dirichlet_cut(&g, &b, row), &dir.join(format!("dirichlet_{}.edges", row.k)))?;
            write_crossing_edges(&g, &sweep.traditional_cut(&g, row), &dir.join(format!("traditional_{}.edges", row.k)))?;
        }
    }
    Ok(())
}

pub fn gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<()> {
    let g = generator(&args.spec, args.seed)?.generate()?;
    let text = format_edge_list(&g);
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => stdout.write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(())
}
