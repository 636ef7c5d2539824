use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use choicegraph::choice::{
    construct_distinguishing, construct_irreducible_ds, derive_choice, ChoiceFunction, IndexMin,
};
use choicegraph::colouring::{is_proper, Colour, Kind};
use choicegraph::exec::Exec;
use choicegraph::family::{
    build_family_graph, build_ga, build_ha, AcceptableFamilySpec, FamilyVariant, TwoStarGraph,
    TwoStarVariant,
};
use choicegraph::graph::Graph;
use choicegraph::io::{
    chain_element_to_json, colouring_from_json, colouring_to_json, graph_from_json, graph_to_json,
    group_to_json, oracle_result_to_json, to_pretty, two_star_from_json,
};
use choicegraph::options::{Caps, Options};
use choicegraph::oracle::{compute, Parameter};
use choicegraph::reduction::{
    compare, enumerate_chain_with, find_irreducible_greedy_with, find_least_in_chain_with, reduce,
    PropertyTag, Target,
};
use choicegraph::symmetry::{
    automorphisms_with, is_distinguishing_with, preserving_automorphisms_with,
};
use choicegraph::transfer::{de_to_pe, ds_transfer, dv_to_de, pe_to_pv, pv_to_dv};
use choicegraph::verify::{fuzz_specs, verify_all, Fuzz};

/// Family graphs, two-star graphs, colouring transfers, choice-driven
/// distinguishing colourings, reductions and exact oracles.
#[derive(Parser)]
#[command(name = "choicegraph", version)]
struct Cli {
    /// Run every search on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph or a two-star graph and print it as graph JSON.
    Build {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        out: Output,
    },
    /// Automorphism group (or the subgroup preserving a colouring).
    Aut {
        #[command(flatten)]
        source: GraphSource,
        /// Restrict to automorphisms preserving this colouring.
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Whether a colouring is proper and whether it is distinguishing.
    Check {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        colouring: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Transfer a colouring between kinds on a family or two-star graph.
    Transfer {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        colouring: PathBuf,
        /// dv, de, pv or pe.
        #[arg(long)]
        from: PropertyTag,
        /// dv, de, pv or pe.
        #[arg(long)]
        to: PropertyTag,
        #[command(flatten)]
        out: Output,
    },
    /// Choice-driven colourings and choice extraction.
    Choice {
        #[command(flatten)]
        source: GraphSource,
        /// Build a distinguishing colouring of G_A with at most K colours.
        #[arg(long)]
        k: Option<usize>,
        /// Choice function JSON to use instead of the index-min rule.
        #[arg(long)]
        choice: Option<PathBuf>,
        /// Extract the min-colour choice function from this colouring of G_A.
        #[arg(long)]
        derive: Option<PathBuf>,
        /// Injection JSON {"x": "y", ...} for the two-star construction
        /// (default x_i -> y_i by position).
        #[arg(long)]
        injection: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Apply one reduction: every element of colour B becomes A.
    Reduce {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        b: Colour,
        #[arg(long)]
        a: Colour,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate the reduction chain of a colouring in increasing order.
    Chain {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        colouring: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Find an irreducible colouring with the given property.
    Irreducible {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Greedy)]
        mode: Mode,
        /// proper or distinguishing.
        #[arg(long)]
        phi: Target,
        /// vertex or edge (defaults to the colouring's kind).
        #[arg(long)]
        kind: Option<Kind>,
        #[command(flatten)]
        out: Output,
    },
    /// Exact distinguishing number/index or chromatic number/index.
    Oracle {
        #[command(flatten)]
        source: GraphSource,
        /// D, Dprime, chi or chiprime.
        #[arg(long)]
        param: Parameter,
        #[command(flatten)]
        out: Output,
    },
    /// Run the instance-level claim suite and print a pass/fail report.
    Verify {
        /// Family spec JSON; repeatable.
        #[arg(long)]
        family: Vec<PathBuf>,
        /// Additionally verify N random specs.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the flat CSV projection here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Greedy,
    Least,
}

#[derive(Args)]
struct GraphSource {
    /// Graph JSON.
    #[arg(long, conflicts_with_all = ["family", "two_star"])]
    graph: Option<PathBuf>,
    /// Family spec JSON.
    #[arg(long, conflicts_with = "two_star")]
    family: Option<PathBuf>,
    /// Two-star JSON {"X": [...], "Y": [...], "variant": "DS"}.
    #[arg(long)]
    two_star: Option<PathBuf>,
    /// GA or HA for families, DS or DC for two-star graphs.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json(&self, value: &Value) -> Result<()> {
        self.emit(&to_pretty(value))
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_spec(path: &Path) -> Result<AcceptableFamilySpec> {
    let spec: AcceptableFamilySpec = serde_json::from_value(read_json(path)?)
        .with_context(|| format!("parsing family spec {}", path.display()))?;
    spec.validate()?;
    Ok(spec)
}

enum Source {
    Plain(Graph),
    Family(AcceptableFamilySpec, FamilyVariant),
    TwoStar(TwoStarGraph),
}

impl Source {
    fn graph(&self) -> Result<Graph> {
        Ok(match self {
            Source::Plain(g) => g.clone(),
            Source::Family(spec, variant) => build_family_graph(spec, *variant)?.graph,
            Source::TwoStar(ts) => ts.graph.clone(),
        })
    }
}

impl GraphSource {
    fn load(&self) -> Result<Source> {
        if let Some(path) = &self.graph {
            return Ok(Source::Plain(graph_from_json(&read_json(path)?)?));
        }
        if let Some(path) = &self.family {
            let variant = match &self.variant {
                Some(v) => v.parse()?,
                None => FamilyVariant::GA,
            };
            return Ok(Source::Family(read_spec(path)?, variant));
        }
        if let Some(path) = &self.two_star {
            let mut ts = two_star_from_json(&read_json(path)?)?;
            if let Some(v) = &self.variant {
                ts = ts.sibling(v.parse::<TwoStarVariant>()?);
            }
            return Ok(Source::TwoStar(ts));
        }
        bail!("one of --graph, --family or --two-star is required")
    }
}

fn options(cli: &Cli) -> Result<Options> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    Ok(Options {
        caps: Caps::from_env()?,
        exec,
    })
}

/// Outcome of a successful command: whether a verification failed.
enum Outcome {
    Done,
    VerificationFailed,
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Build { source, out } => {
            let g = source.load()?.graph()?;
            out.json(&graph_to_json(&g))?;
        }
        Command::Aut {
            source,
            colouring,
            out,
        } => {
            let g = source.load()?.graph()?;
            let group = match colouring {
                Some(path) => {
                    let c = colouring_from_json(&g, &read_json(path)?)?;
                    preserving_automorphisms_with(&g, &c, &opts)?
                }
                None => automorphisms_with(&g, &opts)?,
            };
            out.json(&group_to_json(&g, &group))?;
        }
        Command::Check {
            source,
            colouring,
            out,
        } => {
            let g = source.load()?.graph()?;
            let c = colouring_from_json(&g, &read_json(colouring)?)?;
            out.json(&json!({
                "kind": c.kind(),
                "colours": c.colour_count(),
                "proper": is_proper(&g, &c)?,
                "distinguishing": is_distinguishing_with(&g, &c, &opts)?,
            }))?;
        }
        Command::Transfer {
            source,
            colouring,
            from,
            to,
            out,
        } => transfer(source.load()?, colouring, *from, *to, &opts, out)?,
        Command::Choice {
            source,
            k,
            choice,
            derive,
            injection,
            out,
        } => choice_cmd(source.load()?, *k, choice, derive, injection, out)?,
        Command::Reduce {
            source,
            colouring,
            b,
            a,
            out,
        } => {
            let g = source.load()?.graph()?;
            let c = colouring_from_json(&g, &read_json(colouring)?)?;
            out.json(&colouring_to_json(&g, &reduce(&c, *b, *a)?))?;
        }
        Command::Chain {
            source,
            colouring,
            out,
        } => {
            let g = source.load()?.graph()?;
            let c = colouring_from_json(&g, &read_json(colouring)?)?;
            let mut chain = enumerate_chain_with(&c, &opts)?;
            chain.sort_by(|x, y| compare(x, y, &c).expect("same base"));
            let elements: Vec<Value> = chain.iter().map(|e| chain_element_to_json(&g, e)).collect();
            out.json(&json!({ "size": chain.len(), "elements": elements }))?;
        }
        Command::Irreducible {
            source,
            colouring,
            mode,
            phi,
            kind,
            out,
        } => {
            let g = source.load()?.graph()?;
            let c = colouring_from_json(&g, &read_json(colouring)?)?;
            let phi = PropertyTag::new(*phi, kind.unwrap_or(c.kind()));
            let doc = match mode {
                Mode::Greedy => {
                    let r = find_irreducible_greedy_with(&g, &c, phi, &opts)?;
                    json!({
                        "colouring": colouring_to_json(&g, &r.colouring),
                        "steps": r.steps,
                    })
                }
                Mode::Least => chain_element_to_json(&g, &find_least_in_chain_with(&g, &c, phi, &opts)?),
            };
            out.json(&doc)?;
        }
        Command::Oracle { source, param, out } => {
            let g = source.load()?.graph()?;
            out.json(&oracle_result_to_json(&g, &compute(&g, *param, &opts)?))?;
        }
        Command::Verify {
            family,
            fuzz,
            seed,
            csv,
            out,
        } => {
            let mut specs = family.iter().map(|p| read_spec(p)).collect::<Result<Vec<_>>>()?;
            let fuzz = fuzz.map(|count| Fuzz { seed: *seed, count });
            if let Some(f) = &fuzz {
                specs.extend(fuzz_specs(f.seed, f.count));
            }
            if specs.is_empty() {
                bail!("nothing to verify: pass --family and/or --fuzz");
            }
            let report = verify_all(&specs, fuzz, &opts);
            if let Some(path) = csv {
                fs::write(path, report.to_csv()?).with_context(|| format!("writing {}", path.display()))?;
            }
            out.json(&serde_json::to_value(&report)?)?;
            if !report.passed() {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn transfer(
    source: Source,
    colouring: &Path,
    from: PropertyTag,
    to: PropertyTag,
    opts: &Options,
    out: &Output,
) -> Result<()> {
    let doc = read_json(colouring)?;
    match source {
        Source::Family(spec, _) => {
            let (ga, ha) = (build_ga(&spec)?, build_ha(&spec)?);
            let (input_graph, output_graph) = match (from, to) {
                (PropertyTag::DV, PropertyTag::DE) | (PropertyTag::DE, PropertyTag::PE) => (&ga, &ga),
                (PropertyTag::PE, PropertyTag::PV) => (&ga, &ha),
                (PropertyTag::PV, PropertyTag::DV) => (&ha, &ga),
                _ => bail!("unsupported family transfer {from} -> {to} (use dv->de, de->pe, pe->pv, pv->dv)"),
            };
            let c = colouring_from_json(&input_graph.graph, &doc)?;
            let result = match (from, to) {
                (PropertyTag::DV, PropertyTag::DE) => dv_to_de(&ga, &c)?,
                (PropertyTag::DE, PropertyTag::PE) => de_to_pe(&ga, &c)?,
                (PropertyTag::PE, PropertyTag::PV) => pe_to_pv(&ga, &ha, &c)?,
                _ => pv_to_dv(&ha, &ga, &c)?,
            };
            out.json(&colouring_to_json(&output_graph.graph, &result))
        }
        Source::TwoStar(ts) => {
            let input = ts.sibling(choicegraph::transfer::two_star_variant_for(from));
            let c = colouring_from_json(&input.graph, &doc)?;
            let r = ds_transfer(&ts, &c, from, to, opts)?;
            let g = ts.sibling(r.variant).graph;
            out.json(&json!({
                "variant": r.variant,
                "colouring": colouring_to_json(&g, &r.colouring),
                "constructed": colouring_to_json(&g, &r.constructed),
                "steps": r.steps,
            }))
        }
        Source::Plain(_) => bail!("transfer needs --family or --two-star"),
    }
}

fn choice_cmd(
    source: Source,
    k: Option<usize>,
    choice: &Option<PathBuf>,
    derive: &Option<PathBuf>,
    injection: &Option<PathBuf>,
    out: &Output,
) -> Result<()> {
    match source {
        Source::Family(spec, _) => {
            if let Some(path) = derive {
                let ga = build_ga(&spec)?;
                let c = colouring_from_json(&ga.graph, &read_json(path)?)?;
                return out.json(&serde_json::to_value(derive_choice(&spec, &c)?)?);
            }
            let k = k.unwrap_or_else(|| spec.max_size());
            let built = match choice {
                Some(path) => {
                    let f: ChoiceFunction = serde_json::from_value(read_json(path)?)
                        .with_context(|| format!("parsing choice function {}", path.display()))?;
                    construct_distinguishing(&spec, &f, k)?
                }
                None => construct_distinguishing(&spec, &IndexMin, k)?,
            };
            out.json(&json!({
                "k": k,
                "colouring": colouring_to_json(&built.graph.graph, &built.colouring),
                "choice": built.choice,
            }))
        }
        Source::TwoStar(ts) => {
            let (x, y) = (ts.x_ids(), ts.y_ids());
            let f = match injection {
                Some(path) => serde_json::from_value(read_json(path)?)
                    .with_context(|| format!("parsing injection {}", path.display()))?,
                None => x.iter().cloned().zip(y.iter().cloned()).collect(),
            };
            let (ds, c) = construct_irreducible_ds(&x, &y, &f)?;
            out.json(&json!({
                "graph": graph_to_json(&ds.graph),
                "colouring": colouring_to_json(&ds.graph, &c),
            }))
        }
        Source::Plain(_) => Err(anyhow!("choice needs --family or --two-star")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
