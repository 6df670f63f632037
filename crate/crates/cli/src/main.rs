use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use chibound::constructions::{build_counterexample, CrossRange, GadgetVariant};
use chibound::harness::{verify_lemma, CorpusEntry};
use chibound::invariants::{chi_local, chromatic_number_with_budget, clique_number_with_budget};
use chibound::io::{parse_graph, write_graph, GraphFormat};
use chibound::iso::{find_induced_embedding_with_budget, is_kd_starry_with_budget};
use chibound::machinery::find_spire_with_budget;
use chibound::tree_zoo;
use chibound::{
    lemma_threshold, run_experiment, Budget, Certificate, ExperimentConfig, Graph, LemmaId, ThresholdParams,
};

#[derive(Parser)]
#[command(
    name = "chibound",
    version,
    about = "χ-boundedness workbench: colouring, tree search, certificates, thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file: `.g6` is graph6, anything else an edge list.
    #[arg(long)]
    graph: PathBuf,
    /// Override the format guessed from the file name.
    #[arg(long)]
    format: Option<GraphFormat>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        read_graph(&self.graph, self.format)
    }
}

#[derive(Args)]
struct NodeBudget {
    /// Search node limit; exhausting it reports an indeterminate result.
    #[arg(long)]
    nodes: Option<u64>,
}

impl NodeBudget {
    fn budget(&self) -> Budget {
        Budget::unbounded().with_nodes(self.nodes)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit graphs, either one generator call or every corpus entry of a config.
    Gen {
        #[arg(long, conflicts_with = "generator")]
        config: Option<PathBuf>,
        /// Directory for the corpus files (with --config).
        #[arg(long, requires = "config")]
        out: Option<PathBuf>,
        #[arg(long)]
        generator: Option<String>,
        /// Generator parameter as name=value; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "graph6")]
        format: GraphFormat,
    },
    /// Chromatic number with an optimal colouring.
    Chi {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        budget: NodeBudget,
    },
    /// Clique number with a maximum clique.
    Omega {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        budget: NodeBudget,
    },
    /// Largest χ of a closed ball of radius k.
    Chik {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
    },
    /// Induced copy of a named tree, optionally with one pattern vertex pinned to a host vertex.
    FindTree {
        #[command(flatten)]
        input: GraphInput,
        /// superstar, broom, bristle, binary-star, bristled-star, caterpillar or double-broom.
        #[arg(long)]
        tree: String,
        /// Comma-separated shape parameters, e.g. `2,3`.
        #[arg(long, value_delimiter = ',')]
        args: Vec<usize>,
        #[arg(long, requires = "anchor_host")]
        anchor_pattern: Option<usize>,
        #[arg(long, requires = "anchor_pattern")]
        anchor_host: Option<usize>,
        #[command(flatten)]
        budget: NodeBudget,
    },
    /// Whether the graph contains both star patterns for (k, d).
    Starry {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        budget: NodeBudget,
    },
    /// Builds a spire of height d dominating a set with χ above min-chi.
    Spire {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        min_chi: usize,
        #[command(flatten)]
        budget: NodeBudget,
    },
    /// Evaluates a threshold constant exactly.
    Threshold {
        #[arg(long)]
        lemma: String,
        /// Parameter as name=value (tau for τ, kappa for κ, k1..ks for rooted-sum-ball); repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Builds one of the gadget counterexamples and reports its checks as JSON.
    Counterexample {
        #[arg(long)]
        variant: GadgetVariant,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "k")]
        cross_range: CrossRange,
        /// Triangle-free vertex-critical base graph with χ = k + 1.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-checks a certificate under the named lemma.
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        cert: PathBuf,
        /// Host graph; not needed for stored certificates that embed it.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        format: Option<GraphFormat>,
    },
    /// Runs an experiment config and writes the report bundle.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.unwrap_or_else(|| GraphFormat::from_path(path));
    parse_graph(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn named_tree(name: &str, args: &[usize]) -> Result<Graph> {
    let want = |n: usize| -> Result<()> {
        if args.len() != n {
            bail!("tree `{name}` takes {n} parameters, got {}", args.len());
        }
        Ok(())
    };
    Ok(match name {
        "superstar" => {
            want(1)?;
            tree_zoo::superstar(args[0])?.graph
        }
        "broom" => {
            want(2)?;
            tree_zoo::broom(args[0], args[1])?.graph
        }
        "bristle" => {
            want(2)?;
            tree_zoo::bristle(args[0], args[1])?.graph
        }
        "binary-star" => {
            want(2)?;
            tree_zoo::binary_star(args[0], args[1])?
        }
        "bristled-star" => {
            want(2)?;
            tree_zoo::bristled_star(args[0], args[1])?
        }
        "caterpillar" => {
            want(3)?;
            tree_zoo::two_legged_caterpillar(args[0], args[1], args[2])?
        }
        "double-broom" => {
            want(3)?;
            tree_zoo::double_broom(args[0], args[1], args[2])?
        }
        other => bail!("unknown tree `{other}`"),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            config,
            out,
            generator,
            params,
            seed,
            format,
        } => {
            if let Some(path) = config {
                let config = ExperimentConfig::from_path(&path)?;
                let instances = config.expand_corpus()?;
                match out {
                    Some(dir) => {
                        std::fs::create_dir_all(&dir)?;
                        for (i, inst) in instances.iter().enumerate() {
                            std::fs::write(
                                dir.join(format!("{i:05}.g6")),
                                write_graph(&inst.graph, GraphFormat::Graph6) + "\n",
                            )?;
                        }
                        out!("wrote {} graphs to {}", instances.len(), dir.display());
                    }
                    None => {
                        for inst in &instances {
                            out!("{}", write_graph(&inst.graph, GraphFormat::Graph6));
                        }
                    }
                }
            } else {
                let Some(generator) = generator else {
                    bail!("gen needs --config or --generator");
                };
                let mut map = serde_json::Map::new();
                for p in &params {
                    let (k, v) = p
                        .split_once('=')
                        .with_context(|| format!("expected name=value, got `{p}`"))?;
                    let value = serde_json::from_str(v).unwrap_or_else(|_| serde_json::Value::String(v.to_string()));
                    map.insert(k.to_string(), value);
                }
                let entry = CorpusEntry {
                    generator,
                    params: map.into_iter().collect(),
                    seeds: seed.into_iter().collect(),
                    expect: None,
                };
                for (_, g) in entry.expand()? {
                    print!("{}", write_graph(&g, format));
                    if format == GraphFormat::Graph6 {
                        out!();
                    }
                }
            }
        }
        Command::Chi { input, budget } => {
            let g = input.load()?;
            let c = chromatic_number_with_budget(&g, &budget.budget())?;
            print_json(&serde_json::json!({ "chi": c.color_count(), "coloring": c }))?;
        }
        Command::Omega { input, budget } => {
            let g = input.load()?;
            let (w, clique) = clique_number_with_budget(&g, &budget.budget())?;
            print_json(&serde_json::json!({ "omega": w, "clique": clique }))?;
        }
        Command::Chik { input, k } => {
            let g = input.load()?;
            print_json(&serde_json::json!({ "k": k, "chi_k": chi_local(&g, k) }))?;
        }
        Command::FindTree {
            input,
            tree,
            args,
            anchor_pattern,
            anchor_host,
            budget,
        } => {
            let g = input.load()?;
            let pattern = named_tree(&tree, &args)?;
            let anchor = anchor_pattern.zip(anchor_host);
            let found = find_induced_embedding_with_budget(&g, &pattern, anchor, &budget.budget())?;
            print_json(&serde_json::json!({ "found": found.is_some(), "embedding": found }))?;
            if found.is_none() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Starry { input, k, d, budget } => {
            let g = input.load()?;
            match is_kd_starry_with_budget(&g, k, d, &budget.budget())? {
                Some(certificate) => print_json(&Certificate::Starry { k, d, certificate })?,
                None => {
                    out!("not ({k},{d})-starry");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Spire {
            input,
            d,
            min_chi,
            budget,
        } => {
            let g = input.load()?;
            match find_spire_with_budget(&g, d, min_chi, &budget.budget())? {
                Some((spire, c)) => print_json(&Certificate::Spire {
                    spire,
                    dominated: Some(c),
                    min_chi: Some(min_chi),
                })?,
                None => {
                    out!("no spire of height {d} dominating a set with χ > {min_chi}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Threshold { lemma, params } => {
            let lemma: LemmaId = lemma.parse()?;
            let params = ThresholdParams::parse(params.iter().map(String::as_str))?;
            out!("{}", lemma_threshold(lemma, &params)?);
        }
        Command::Counterexample {
            variant,
            k,
            cross_range,
            base,
            out,
        } => {
            let base = base.map(|p| read_graph(&p, None)).transpose()?;
            let result = match build_counterexample(variant, k, base.as_ref(), cross_range) {
                Err(chibound::Error::ConstructionRefuted { gadgets, log }) => {
                    eprintln!("refuted: chromatic number never increased after {gadgets} gadgets");
                    for line in log {
                        eprintln!("  {line}");
                    }
                    return Ok(ExitCode::from(1));
                }
                other => other?,
            };
            let json = serde_json::to_string_pretty(&result)?;
            match out {
                Some(path) => std::fs::write(&path, json + "\n")?,
                None => out!("{json}"),
            }
        }
        Command::Verify {
            lemma,
            cert,
            graph,
            format,
        } => {
            let g = graph.map(|p| read_graph(&p, format)).transpose()?;
            let text = std::fs::read_to_string(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let (verdict, notes) = verify_lemma(&lemma, g.as_ref(), &text)?;
            match verdict {
                Ok(()) => {
                    out!("accept");
                    for n in notes {
                        out!("{n}");
                    }
                }
                Err(v) => {
                    out!("reject: {v}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Run { config, out } => {
            let config = ExperimentConfig::from_path(&config)?;
            let report = run_experiment(&config)?;
            report.write(&out)?;
            let s = &report.summary;
            out!(
                "{} instances, {} certificates, {} violations, {} indeterminate",
                s.instances,
                s.certificates,
                s.violations,
                s.indeterminate
            );
            for f in &s.violation_details {
                eprintln!("violation: {} [{}] {}", f.label, f.check, f.detail);
            }
            if report.has_violations() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
