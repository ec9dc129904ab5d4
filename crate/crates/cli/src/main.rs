use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use matchseq::fixtures::{check_fact, complete_multipartite_graph, gallery};
use matchseq::ordering::first_violation;
use matchseq::theorem::value_with_branch;
use matchseq::{
    build_complete_multipartite, construct, exact_ms, EdgeOrdering, Hypergraph, PartiteSpec,
    SearchBudget, TheoremInput,
};

/// Matching sequencibility of complete multipartite hypergraphs.
#[derive(Parser)]
#[command(name = "matchseq", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form ms_r (or cms_r with --cyclic) of λK_{n1,…,nk}.
    Value(SpecArgs),
    /// Build an ordering attaining the closed-form value and certify it.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Where to write the certified ordering (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the hypergraph the ordering refers to.
        #[arg(long)]
        hypergraph_out: Option<PathBuf>,
    },
    /// Check every legal window of an ordering against a degree bound.
    Check {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long)]
        cyclic: bool,
    },
    /// Exact ms_r / cms_r of a small hypergraph by exhaustive search.
    Oracle {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long)]
        cyclic: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare oracle values of K_{s(n)} with ⌊sn/2⌋ − 1 for 2 ≤ s ≤ s_max, 2 ≤ n ≤ n_max.
    Conjecture {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        s_max: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        n_max: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay the known facts about the gallery graphs G, G', H and 2H.
    Fixtures {
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Edge multiplicity λ.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    lambda: u64,
    /// Part sizes n1 ≤ … ≤ nk, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    r: u64,
    #[arg(long)]
    cyclic: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search time limit in milliseconds.
    #[arg(long, env = "MATCHSEQ_BUDGET_MS", default_value_t = 60_000)]
    budget: u64,
}

impl BudgetArgs {
    fn get(&self) -> Result<SearchBudget, Failure> {
        SearchBudget::from_millis(self.budget).map_err(|e| Failure::Usage(e.to_string()))
    }
}

enum Failure {
    /// Exit 1: a check or fixture did not hold.
    Rejected(String),
    /// Exit 2: bad flags or unreadable input.
    Usage(String),
    /// Exit 3: the search budget ran out.
    Unknown(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unknown(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Value(args) => cmd_value(&args, json),
        Command::Construct {
            spec,
            out,
            hypergraph_out,
        } => cmd_construct(&spec, out.as_deref(), hypergraph_out.as_deref(), json),
        Command::Check {
            hypergraph,
            ordering,
            r,
            s,
            cyclic,
        } => cmd_check(&hypergraph, &ordering, r as usize, s as usize, cyclic, json),
        Command::Oracle {
            hypergraph,
            r,
            cyclic,
            budget,
        } => cmd_oracle(&hypergraph, r as usize, cyclic, &budget.get()?, json),
        Command::Conjecture {
            s_max,
            n_max,
            budget,
        } => cmd_conjecture(s_max as usize, n_max as usize, &budget.get()?, json),
        Command::Fixtures { budget } => cmd_fixtures(&budget.get()?, json),
    }
}

fn theorem_input(args: &SpecArgs) -> Result<TheoremInput, Failure> {
    if let Some(w) = args.sizes.windows(2).find(|w| w[0] > w[1]) {
        let mut sorted = args.sizes.clone();
        sorted.sort_unstable();
        let hint = sorted
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        return Err(Failure::Usage(format!(
            "sizes must be nondecreasing ({} comes before {}); try --sizes {hint}",
            w[0], w[1]
        )));
    }
    let spec = PartiteSpec::new(args.lambda as usize, args.sizes.clone())
        .map_err(|e| Failure::Usage(e.to_string()))?;
    TheoremInput::new(spec, args.r as usize).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_value(args: &SpecArgs, json: bool) -> Outcome {
    let input = theorem_input(args)?;
    let (value, branch) = value_with_branch(&input, args.cyclic);
    if json {
        println!(
            "{}",
            json!({ "value": value, "branch": branch.to_string(), "r": input.r(), "cyclic": args.cyclic })
        );
    } else {
        println!("{value} ({branch})");
    }
    Ok(())
}

fn cmd_construct(
    args: &SpecArgs,
    out: Option<&Path>,
    hypergraph_out: Option<&Path>,
    json: bool,
) -> Outcome {
    let input = theorem_input(args)?;
    let certified = construct(&input, args.cyclic).map_err(|e| Failure::Rejected(e.to_string()))?;
    if let Some(path) = hypergraph_out {
        let h = build_complete_multipartite(input.spec());
        fs::write(path, h.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = certified.to_json();
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            if json {
                println!("{text}");
            } else {
                println!(
                    "wrote {} labels certified at s = {} (r = {}, {}) to {}",
                    certified.ordering.len(),
                    certified.s,
                    certified.r,
                    if certified.cyclic {
                        "cyclic"
                    } else {
                        "non-cyclic"
                    },
                    path.display()
                );
            }
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {what} {}: {e}", path.display())))
}

fn cmd_check(hpath: &Path, opath: &Path, r: usize, s: usize, cyclic: bool, json: bool) -> Outcome {
    let h: Hypergraph = read_json(hpath, "hypergraph")?;
    let ordering: EdgeOrdering = read_json(opath, "ordering")?;
    ordering
        .validate_for(&h)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    match first_violation(&h, &ordering, r, s, cyclic) {
        None => {
            if json {
                println!(
                    "{}",
                    json!({ "pass": true, "r": r, "s": s, "cyclic": cyclic })
                );
            } else {
                println!("pass: every legal window of length {s} has maximum degree <= {r}");
            }
            Ok(())
        }
        Some(v) => {
            let vertex = h.vertex_at(v.vertex);
            if json {
                println!(
                    "{}",
                    json!({
                        "pass": false, "r": r, "s": s, "cyclic": cyclic,
                        "start": v.start, "vertex": [vertex.part, vertex.index], "degree": v.degree,
                    })
                );
            } else {
                println!(
                    "fail: window starting at {} gives vertex {} of part {} degree {} > {r}",
                    v.start, vertex.index, vertex.part, v.degree
                );
            }
            Err(Failure::Rejected(format!(
                "check failed at window start {}",
                v.start
            )))
        }
    }
}

fn cmd_oracle(hpath: &Path, r: usize, cyclic: bool, budget: &SearchBudget, json: bool) -> Outcome {
    let h: Hypergraph = read_json(hpath, "hypergraph")?;
    let report = exact_ms(&h, r, cyclic, budget).map_err(|e| Failure::Usage(e.to_string()))?;
    let name = if cyclic { "cms" } else { "ms" };
    if json {
        println!("{}", report.to_json());
    } else {
        match report.ms {
            Some(ms) => println!("{name}_{r} = {ms} ({} nodes)", report.nodes),
            None => println!("{name}_{r} = unknown ({} nodes)", report.nodes),
        }
    }
    match report.ms {
        Some(_) => Ok(()),
        None => Err(Failure::Unknown("search budget exhausted".into())),
    }
}

fn cmd_conjecture(s_max: usize, n_max: usize, budget: &SearchBudget, json: bool) -> Outcome {
    let mut rows = Vec::new();
    let mut disagreements = 0;
    if !json {
        println!(
            "{:>3} {:>3} {:>5} {:>8} {:>8} {:>9}  status",
            "s", "n", "edges", "ms", "cms", "predicted"
        );
    }
    for s in 2..=s_max {
        for n in 2..=n_max {
            let h = complete_multipartite_graph(s, n);
            let predicted = (s * n / 2).saturating_sub(1);
            let ms = exact_ms(&h, 1, false, budget)
                .map_err(|e| Failure::Usage(e.to_string()))?
                .ms;
            let cms = exact_ms(&h, 1, true, budget)
                .map_err(|e| Failure::Usage(e.to_string()))?
                .ms;
            let status = match (ms, cms) {
                (Some(a), Some(b)) if a == predicted && b == predicted => "agree",
                (Some(a), _) if a != predicted => "DISAGREE",
                (_, Some(b)) if b != predicted => "DISAGREE",
                _ => "unknown",
            };
            if status == "DISAGREE" {
                disagreements += 1;
            }
            let show = |v: Option<usize>| v.map_or("unknown".to_string(), |x| x.to_string());
            if json {
                rows.push(json!({
                    "s": s, "n": n, "edges": h.edge_count(),
                    "ms": ms.map_or(json!("unknown"), |x| json!(x)),
                    "cms": cms.map_or(json!("unknown"), |x| json!(x)),
                    "predicted": predicted, "status": status,
                }));
            } else {
                println!(
                    "{s:>3} {n:>3} {:>5} {:>8} {:>8} {predicted:>9}  {status}",
                    h.edge_count(),
                    show(ms),
                    show(cms)
                );
            }
        }
    }
    if json {
        println!("{}", serde_json::Value::Array(rows));
    }
    if disagreements > 0 {
        return Err(Failure::Rejected(format!(
            "{disagreements} cell(s) disagree with the prediction"
        )));
    }
    Ok(())
}

fn cmd_fixtures(budget: &SearchBudget, json: bool) -> Outcome {
    let (mut failed, mut unknown) = (0, 0);
    let mut rows = Vec::new();
    for fixture in gallery() {
        for fact in &fixture.facts {
            let outcome = check_fact(&fixture.hypergraph, fact, budget)
                .map_err(|e| Failure::Internal(e.into()))?;
            let status = match outcome.holds {
                Some(true) => "PASS",
                Some(false) => {
                    failed += 1;
                    "FAIL"
                }
                None => {
                    unknown += 1;
                    "UNKNOWN"
                }
            };
            if json {
                rows.push(json!({ "fixture": fixture.name, "fact": fact, "status": status, "detail": outcome.detail }));
            } else {
                println!("{status:<7} {:<3} {}", fixture.name, outcome.detail);
            }
        }
    }
    if json {
        println!("{}", serde_json::Value::Array(rows));
    }
    if failed > 0 {
        Err(Failure::Rejected(format!(
            "{failed} fixture fact(s) failed"
        )))
    } else if unknown > 0 {
        Err(Failure::Unknown(format!(
            "{unknown} fixture fact(s) undecided within budget"
        )))
    } else {
        Ok(())
    }
}
