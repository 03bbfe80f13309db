//! Implementations of the six subcommands.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde_json::json;

use assort_core::{
    assort_correlation, generate_block_network, global_assort_cat, global_assort_scalar,
    list_presets, load_attributes, mixing_matrix, null_distribution, preset_by_name, r_min,
    sample_null, AttributeTable, BlockSpec, Column, ColumnKind, Graph, LocalKind,
    LocalMixingResult, NullModelConfig, NullRunStats, WalkerConfig, WeightedHistogram, Weighting,
};

use crate::error::{CliError, CliResult};
use crate::manifest::ManifestBuilder;
use crate::{CompareArgs, Format, GenerateArgs, GlobalArgs, InputArgs, LocalArgs, NullArgs,
            SummaryArgs, WalkerArgs};

/// Loads the graph and the requested attribute column.
fn load_input(
    input: &InputArgs,
    mb: &mut ManifestBuilder,
) -> CliResult<(Graph, AttributeTable, Column)> {
    let edge_text = mb.read_input(&input.edges)?;
    let graph = Graph::load_edge_list(&edge_text, input.directed, input.lenient)?;
    let attr_text = mb.read_input(&input.attrs)?;
    let mut overrides = HashMap::new();
    if input.scalar {
        overrides.insert(input.column.clone(), ColumnKind::Scalar);
    }
    if input.categorical {
        overrides.insert(input.column.clone(), ColumnKind::Categorical);
    }
    let table = load_attributes(&attr_text, &graph, &overrides)?;
    let column = table
        .column(&input.column)
        .ok_or_else(|| {
            CliError::usage(format!(
                "column `{}` not found; available: {}",
                input.column,
                table.column_names().join(", ")
            ))
        })?
        .clone();
    Ok((graph, table, column))
}

fn walker_config(w: &WalkerArgs, alpha: f64) -> WalkerConfig {
    WalkerConfig {
        alpha,
        tol: w.tol,
        max_iter: w.max_iter,
        eta_max: w.eta_max,
        multi_tol: w.multi_tol,
    }
}

/// Writes `content` to `output` (plus a manifest) or to stdout.
fn emit(
    mb: ManifestBuilder,
    output: Option<&PathBuf>,
    content: &str,
    config: serde_json::Value,
) -> CliResult<()> {
    match output {
        Some(path) => {
            let mut mb = mb;
            std::fs::write(path, content)?;
            mb.record_output(path);
            mb.write(path, config)
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn global(args: GlobalArgs) -> CliResult<()> {
    let mut mb = ManifestBuilder::new();
    let (graph, _table, column) = load_input(&args.input, &mut mb)?;
    let report = match column.kind() {
        ColumnKind::Categorical => {
            let mix = mixing_matrix(&graph, &column, None)?;
            let r = global_assort_cat(&mix)?;
            let rmin = r_min(&mix)?;
            let (_, categories) = column.as_categorical()?;
            let marginals: Vec<serde_json::Value> = categories
                .iter()
                .enumerate()
                .map(|(g, name)| {
                    json!({"category": name, "a": mix.a[g], "b": mix.b[g]})
                })
                .collect();
            json!({
                "attribute": args.input.column,
                "kind": "categorical",
                "n_nodes": graph.n_nodes(),
                "n_edges": graph.n_edges(),
                "directed": graph.is_directed(),
                "r_global": r,
                "q_max": mix.q_max(),
                "r_min": rmin,
                "r_min_below_minus_one": rmin < -1.0,
                "marginals": marginals,
            })
        }
        ColumnKind::Scalar => {
            let r = global_assort_scalar(&graph, &column)?;
            json!({
                "attribute": args.input.column,
                "kind": "scalar",
                "n_nodes": graph.n_nodes(),
                "n_edges": graph.n_edges(),
                "directed": graph.is_directed(),
                "r_global": r,
            })
        }
    };
    let content = match args.format {
        Format::Text => global_text(&report),
        _ => format!("{}\n", serde_json::to_string_pretty(&report)?),
    };
    let config = json!({
        "column": args.input.column,
        "directed": args.input.directed,
        "lenient": args.input.lenient,
    });
    emit(mb, args.output.as_ref(), &content, config)
}

fn global_text(report: &serde_json::Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "attribute:  {} ({})\n",
        report["attribute"].as_str().unwrap_or("?"),
        report["kind"].as_str().unwrap_or("?")
    ));
    out.push_str(&format!(
        "graph:      {} nodes, {} edges{}\n",
        report["n_nodes"],
        report["n_edges"],
        if report["directed"].as_bool().unwrap_or(false) {
            " (directed)"
        } else {
            ""
        }
    ));
    out.push_str(&format!("r_global:   {}\n", report["r_global"]));
    if let Some(q) = report.get("q_max") {
        out.push_str(&format!("q_max:      {q}\n"));
        out.push_str(&format!("r_min:      {}\n", report["r_min"]));
        if report["r_min_below_minus_one"].as_bool() == Some(true) {
            out.push_str("note:       r_min lies below -1 for these marginals\n");
        }
        out.push_str("marginals:\n");
        if let Some(ms) = report["marginals"].as_array() {
            for m in ms {
                out.push_str(&format!(
                    "  {:12} a = {}  b = {}\n",
                    m["category"].as_str().unwrap_or("?"),
                    m["a"],
                    m["b"]
                ));
            }
        }
    }
    out
}

pub fn local(args: LocalArgs) -> CliResult<()> {
    let mut mb = ManifestBuilder::new();
    let (graph, _table, column) = load_input(&args.input, &mut mb)?;
    let (weighting, cfg) = match args.alpha {
        Some(alpha) => (
            Weighting::FixedAlpha(alpha),
            walker_config(&args.walker, alpha),
        ),
        None => (Weighting::Multiscale, walker_config(&args.walker, 0.5)),
    };
    let results = assort_core::local_assort_all(&graph, &column, weighting, &cfg)?;
    let content = match args.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|res| json!({"node": graph.node_id(res.node), "r": res.r, "z": res.z}))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows)?)
        }
        _ => local_csv(&graph, &results)?,
    };
    let config = json!({
        "column": args.input.column,
        "directed": args.input.directed,
        "weighting": match args.alpha {
            Some(alpha) => json!({"alpha": alpha}),
            None => json!("multiscale"),
        },
        "tol": args.walker.tol,
        "max_iter": args.walker.max_iter,
        "eta_max": args.walker.eta_max,
        "multi_tol": args.walker.multi_tol,
    });
    emit(mb, args.output.as_ref(), &content, config)
}

fn local_csv(graph: &Graph, results: &[LocalMixingResult]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["node", "r", "z"])?;
    for res in results {
        let r = res.r.map(|r| format!("{r}")).unwrap_or_default();
        w.write_record([graph.node_id(res.node), &r, &format!("{}", res.z)])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn null(args: NullArgs) -> CliResult<()> {
    let mut mb = ManifestBuilder::new();
    let (graph, _table, column) = load_input(&args.input, &mut mb)?;
    mb.record_seed(args.seed);
    let null_cfg = NullModelConfig {
        n_samples: args.samples,
        swaps_per_sample: args.swaps_per_sample,
        burn_in: args.burn_in,
        t0: args.t0,
        t_min: args.t_min,
        cooling: args.cooling,
        rng_seed: args.seed,
    };
    let walker_cfg = walker_config(&args.walker, 0.5);
    let (hist, stats) = match &args.save_samples {
        Some(prefix) if args.samples > 0 => {
            sample_and_save(&graph, &column, &null_cfg, &walker_cfg, args.bins, prefix, &mut mb)?
        }
        _ => null_distribution(&graph, &column, &null_cfg, &walker_cfg, args.bins)?,
    };
    if let Some(note) = &stats.note {
        eprintln!("note: {note}");
    }
    let content = match args.format {
        Format::Csv => histogram_csv(&hist)?,
        _ => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({"histogram": hist, "stats": stats}))?
        ),
    };
    let config = json!({
        "column": args.input.column,
        "samples": args.samples,
        "bins": args.bins,
        "swaps_per_sample": args.swaps_per_sample,
        "burn_in": args.burn_in,
        "t0": args.t0,
        "t_min": args.t_min,
        "cooling": args.cooling,
        "seed": args.seed,
    });
    emit(mb, args.output.as_ref(), &content, config)
}

/// Variant of the pooled null computation that also persists every sampled
/// graph as a numbered edge-list file.
fn sample_and_save(
    graph: &Graph,
    column: &Column,
    null_cfg: &NullModelConfig,
    walker_cfg: &WalkerConfig,
    bins: usize,
    prefix: &Path,
    mb: &mut ManifestBuilder,
) -> CliResult<(WeightedHistogram, NullRunStats)> {
    let mut sampler = sample_null(graph, column, null_cfg)?;
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut m_in_trace = Vec::new();
    let mut count = 0usize;
    while let Some(sample) = sampler.next() {
        let path = prefix.with_file_name(format!(
            "{}.{count:03}.edges",
            prefix.file_name().unwrap_or_default().to_string_lossy()
        ));
        std::fs::write(&path, sample.graph.to_edge_list())?;
        mb.record_output(&path);
        m_in_trace.push(sample.m_in);
        let locals =
            assort_core::local_assort_all(&sample.graph, column, Weighting::Multiscale, walker_cfg)?;
        pooled.extend(locals.iter().filter_map(|res| res.r.map(|r| (r, res.z))));
        count += 1;
    }
    let stats = NullRunStats {
        n_samples: count,
        acceptance_rate: sampler.acceptance_rate(),
        m_in_trace,
        note: None,
    };
    Ok((WeightedHistogram::from_weighted(&pooled, bins), stats))
}

fn histogram_csv(hist: &WeightedHistogram) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["bin_lo", "bin_hi", "mass"])?;
    for (i, m) in hist.mass.iter().enumerate() {
        w.write_record([
            format!("{}", hist.bin_edges[i]),
            format!("{}", hist.bin_edges[i + 1]),
            format!("{m}"),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn generate(args: GenerateArgs) -> CliResult<()> {
    if args.list {
        for p in list_presets() {
            println!("{:18} {}", p.name, p.description);
        }
        return Ok(());
    }
    let mut mb = ManifestBuilder::new();
    mb.record_seed(args.seed.unwrap_or(0));
    let (spec, source) = match (&args.preset, &args.spec) {
        (Some(name), None) => {
            let preset = preset_by_name(name).ok_or_else(|| {
                CliError::usage(format!(
                    "unknown preset `{name}`; available: {}",
                    list_presets()
                        .iter()
                        .map(|p| p.name)
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })?;
            (preset.spec(args.seed.unwrap_or(0)), json!({"preset": name}))
        }
        (None, Some(path)) => {
            let text = mb.read_input(path)?;
            let mut spec: BlockSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("invalid block spec: {e}")))?;
            if let Some(seed) = args.seed {
                spec.rng_seed = seed;
            }
            (spec, json!({"spec": path.display().to_string()}))
        }
        _ => return Err(CliError::usage("pass exactly one of --preset or --spec")),
    };
    let (graph, table) = generate_block_network(&spec)?;
    let prefix = args.output_prefix.as_ref().expect("required by clap");
    let with_ext = |ext: &str| -> PathBuf {
        prefix.with_file_name(format!(
            "{}.{ext}",
            prefix.file_name().unwrap_or_default().to_string_lossy()
        ))
    };
    let edges_path = with_ext("edges");
    std::fs::write(&edges_path, graph.to_edge_list())?;
    mb.record_output(&edges_path);
    let attrs_path = with_ext("attrs.csv");
    let column = table.column("type").expect("generator attaches `type`");
    let (values, categories) = column.as_categorical()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["node", "type"])?;
    for (i, v) in values.iter().enumerate() {
        let label = v.map(|c| categories[c as usize].as_str()).unwrap_or("");
        w.write_record([graph.node_id(i), label])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::usage(e.to_string()))?;
    std::fs::write(&attrs_path, bytes)?;
    mb.record_output(&attrs_path);
    let config = json!({
        "source": source,
        "seed": args.seed.unwrap_or(0),
        "group_sizes": spec.group_sizes,
        "block_edges": spec.block_edges,
        "type_of_group": spec.type_of_group,
    });
    mb.write(prefix, config)?;
    eprintln!(
        "wrote {} and {} ({} nodes, {} edges)",
        edges_path.display(),
        attrs_path.display(),
        graph.n_nodes(),
        graph.n_edges()
    );
    Ok(())
}

/// One row of a per-node CSV file.
type LocalRow = (String, Option<f64>, f64);

fn read_local_csv(path: &Path, mb: &mut ManifestBuilder) -> CliResult<Vec<LocalRow>> {
    let text = mb.read_input(path)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let want = ["node", "r", "z"];
    if headers.len() < 3 || (0..3).any(|i| &headers[i] != want[i]) {
        return Err(CliError::usage(format!(
            "{}: expected header node,r,z",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let r = if record[1].is_empty() {
            None
        } else {
            Some(record[1].parse::<f64>().map_err(|e| {
                CliError::usage(format!("{}: bad r value `{}`: {e}", path.display(), &record[1]))
            })?)
        };
        let z = record[2].parse::<f64>().map_err(|e| {
            CliError::usage(format!("{}: bad z value `{}`: {e}", path.display(), &record[2]))
        })?;
        rows.push((record[0].to_string(), r, z));
    }
    Ok(rows)
}

pub fn compare(args: CompareArgs) -> CliResult<()> {
    let mut mb = ManifestBuilder::new();
    let rows_a = read_local_csv(&args.a, &mut mb)?;
    let rows_b = read_local_csv(&args.b, &mut mb)?;
    let by_name: HashMap<&str, &LocalRow> =
        rows_b.iter().map(|row| (row.0.as_str(), row)).collect();
    let mut a_results = Vec::new();
    let mut b_results = Vec::new();
    for row in &rows_a {
        if let Some(other) = by_name.get(row.0.as_str()) {
            let node = a_results.len();
            a_results.push(LocalMixingResult {
                node,
                r: row.1,
                z: row.2,
                kind: LocalKind::Multiscale,
            });
            b_results.push(LocalMixingResult {
                node,
                r: other.1,
                z: other.2,
                kind: LocalKind::Multiscale,
            });
        }
    }
    let (pearson, frac) = assort_correlation(&a_results, &b_results, !args.unweighted)?;
    let n_compared = a_results
        .iter()
        .zip(&b_results)
        .filter(|(x, y)| x.r.is_some() && y.r.is_some())
        .count();
    let report = json!({
        "pearson": pearson,
        "frac_a_more_assortative": frac,
        "n_compared": n_compared,
        "weighted": !args.unweighted,
    });
    let content = format!("{}\n", serde_json::to_string_pretty(&report)?);
    let config = json!({"a": args.a.display().to_string(), "b": args.b.display().to_string()});
    emit(mb, args.output.as_ref(), &content, config)
}

pub fn summary(args: SummaryArgs) -> CliResult<()> {
    let mut mb = ManifestBuilder::new();
    let rows = read_local_csv(&args.local, &mut mb)?;
    let pairs: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|(_, r, z)| r.map(|r| (r, *z)))
        .collect();
    let hist = WeightedHistogram::from_weighted(&pairs, args.bins);
    let content = match args.format {
        Format::Csv => histogram_csv(&hist)?,
        _ => format!("{}\n", serde_json::to_string_pretty(&hist)?),
    };
    let config = json!({
        "local": args.local.display().to_string(),
        "bins": args.bins,
    });
    emit(mb, args.output.as_ref(), &content, config)
}
