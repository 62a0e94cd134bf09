//! Command-line frontend: L polynomials, the verification suite, and
//! listings of galleries, characters and tableaux.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hlfold::folding::{defining_chain, enumerate_pf, enumerate_pf_all, is_ls};
use hlfold::hlengine::{character_ls, character_to_json, Engine, EngineOptions};
use hlfold::tableaux::all_tableaux;
use hlfold::verify::{Suite, Verifier, VerifyConfig, DEFAULT_SYSTEMS};
use hlfold::{Error, QPoly, RootSystem, RootSystemSpec};

#[derive(Parser)]
#[command(name = "hlfold", version, about = "Hall-Littlewood coefficients from positively folded galleries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// L_{λ,μ}(q); every dominant μ with L ≠ 0 when --mu is omitted.
    #[command(name = "L")]
    L(Weights),
    /// Run the oracle-equality and invariant suite.
    Verify(VerifyArgs),
    /// Positively folded galleries of type γ_λ.
    Galleries(GalleryArgs),
    /// The character of V(λ) counted by LS-galleries.
    Char(LambdaArgs),
    /// Tableaux of shape p_λ.
    Tableaux(TableauArgs),
}

#[derive(Args)]
struct LambdaArgs {
    /// Root system, e.g. A2, B3, C3.
    #[arg(long = "type")]
    ty: RootSystemSpec,
    /// λ as coefficients over the fundamental coweights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    lambda: Vec<i64>,
}

#[derive(Args)]
struct Weights {
    #[command(flatten)]
    base: LambdaArgs,
    /// μ as coefficients over the fundamental coweights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu: Option<Vec<i64>>,
}

#[derive(Args)]
struct GalleryArgs {
    #[command(flatten)]
    weights: Weights,
    /// Only LS-galleries.
    #[arg(long)]
    ls_only: bool,
}

#[derive(Args)]
struct TableauArgs {
    #[command(flatten)]
    weights: Weights,
    /// Only semistandard tableaux.
    #[arg(long)]
    semistandard: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Default,
    A2Example,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Default)]
    suite: SuiteArg,
    /// Restrict to these root systems (default: A1 A2 A3 B2 C2 B3 C3).
    #[arg(long = "type", value_delimiter = ',')]
    ty: Vec<RootSystemSpec>,
    /// Bound on the sum of the coefficients of λ.
    #[arg(long, default_value_t = 3)]
    max_sum: i64,
    /// Bound on ⟨λ, 2ρ⟩.
    #[arg(long, default_value_t = 16)]
    max_two_rho: i64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Junctions sampled per system of rank ≥ 3.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Count crossings with the wrong sign (harness self-test).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum Failure {
    Usage(String),
    Mismatch,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn csv_out(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Outcome {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    let io = |e: csv::Error| Failure::Internal(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Internal(e.to_string()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value"));
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn root_system(spec: RootSystemSpec) -> Result<RootSystem, Failure> {
    Ok(RootSystem::new(spec)?)
}

fn cmd_l(w: &Weights, format: Format) -> Outcome {
    let rs = root_system(w.base.ty)?;
    let lambda = &w.base.lambda;
    let engine = Engine::new(&rs);
    let rows: Vec<(Vec<i64>, QPoly)> = match &w.mu {
        Some(mu) => vec![(mu.clone(), engine.l_polynomial(lambda, mu)?)],
        None => engine.l_all(lambda)?.into_iter().collect(),
    };
    match format {
        Format::Pretty => {
            if w.mu.is_some() {
                println!("{}", rows[0].1);
            } else {
                for (mu, p) in &rows {
                    println!("{}\t{p}", list(mu));
                }
            }
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(mu, p)| json!({ "type": rs.spec.to_string(), "lambda": lambda, "mu": mu, "L": p.to_json(), "display": p.to_string() }))
                .collect();
            print_json(&if w.mu.is_some() { items[0].clone() } else { Value::Array(items) });
        }
        Format::Csv => csv_out(
            &["type", "lambda", "mu", "L", "coeffs"],
            rows.iter().map(|(mu, p)| {
                vec![rs.spec.to_string(), list(lambda), list(mu), p.to_string(), p.to_json()["coeffs"].to_string()]
            }),
        )?,
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Outcome {
    let systems = if a.ty.is_empty() {
        DEFAULT_SYSTEMS.iter().map(|s| s.parse().expect("valid type")).collect()
    } else {
        a.ty.clone()
    };
    let cfg = VerifyConfig {
        suite: match a.suite {
            SuiteArg::Default => Suite::Full,
            SuiteArg::A2Example => Suite::A2Example,
        },
        systems,
        max_sum: a.max_sum,
        max_two_rho: a.max_two_rho,
        engine: EngineOptions { flip_crossing_sign: a.inject_fault, ..Default::default() },
        seed: a.seed,
        samples: a.samples,
    };
    let report = Verifier::new(cfg)?.run();
    match format {
        Format::Pretty => print!("{}", report.pretty()),
        Format::Json => print_json(&report.to_json()),
        Format::Csv => csv_out(
            &["check", "passed", "checked", "counterexample"],
            report.checks.iter().map(|c| {
                vec![
                    c.name.clone(),
                    c.passed.to_string(),
                    c.checked.to_string(),
                    c.counterexample.as_ref().map(Value::to_string).unwrap_or_default(),
                ]
            }),
        )?,
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_galleries(a: &GalleryArgs, format: Format) -> Outcome {
    let w = &a.weights;
    let rs = root_system(w.base.ty)?;
    let gs = match &w.mu {
        Some(mu) => enumerate_pf(&rs, &w.base.lambda, mu)?,
        None => enumerate_pf_all(&rs, &w.base.lambda)?,
    };
    let engine = Engine::new(&rs);
    let mut rows = Vec::new();
    for g in &gs {
        let ls = is_ls(&rs, g)?;
        if a.ls_only && !ls {
            continue;
        }
        let chain: Vec<Vec<usize>> = defining_chain(&rs, g)
            .unwrap_or_default()
            .into_iter()
            .map(|t| rs.all_reduced_words(t).into_iter().min().unwrap_or_default().iter().map(|i| i + 1).collect())
            .collect();
        let weight = engine.gallery_weight(g)?;
        rows.push((g, ls, chain, weight));
    }
    match format {
        Format::Pretty => {
            for (k, (g, ls, chain, weight)) in rows.iter().enumerate() {
                let dirs: Vec<String> = g.directions().iter().map(ToString::to_string).collect();
                let chain: Vec<String> = chain
                    .iter()
                    .map(|w| if w.is_empty() { "e".into() } else { w.iter().map(|i| format!("s{i}")).collect::<String>() })
                    .collect();
                println!(
                    "{:>4}  target {}  ls {}  weight {}  chain [{}]  directions {}",
                    k + 1,
                    g.target(),
                    ls,
                    weight,
                    chain.join(" ≥ "),
                    dirs.join(" ")
                );
            }
        }
        Format::Json => print_json(&Value::Array(
            rows.iter()
                .map(|(g, ls, chain, weight)| {
                    json!({
                        "target": g.target().to_strings(),
                        "ls": ls,
                        "defining_chain": chain,
                        "weight": weight.to_json(),
                        "gallery": g.to_json(),
                    })
                })
                .collect(),
        )),
        Format::Csv => csv_out(
            &["index", "target", "ls", "weight", "defining_chain", "directions"],
            rows.iter().enumerate().map(|(k, (g, ls, chain, weight))| {
                vec![
                    (k + 1).to_string(),
                    g.target().to_string(),
                    ls.to_string(),
                    weight.to_string(),
                    serde_json::to_string(chain).expect("JSON"),
                    g.directions().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                ]
            }),
        )?,
    }
    Ok(())
}

fn cmd_char(a: &LambdaArgs, format: Format) -> Outcome {
    let rs = root_system(a.ty)?;
    let ch = character_ls(&rs, &a.lambda)?;
    match format {
        Format::Pretty => {
            for (w, m) in &ch {
                println!("{w}\t{m}");
            }
        }
        Format::Json => print_json(&character_to_json(&ch)),
        Format::Csv => csv_out(&["weight", "mult"], ch.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]))?,
    }
    Ok(())
}

fn cmd_tableaux(a: &TableauArgs, format: Format) -> Outcome {
    let w = &a.weights;
    let rs = root_system(w.base.ty)?;
    let lam = rs.coweight(&w.base.lambda)?;
    let target = match &w.mu {
        Some(mu) => match rs.coweight_in_coset(mu, &lam)? {
            Some(m) => Some(m),
            None => return emit_tableaux(&rs, &[], format),
        },
        None => None,
    };
    let mut rows = Vec::new();
    for t in all_tableaux(&rs, &w.base.lambda)? {
        if a.semistandard && !t.is_semistandard() {
            continue;
        }
        let wt = t.weight(&rs)?;
        if target.as_ref().is_some_and(|m| *m != wt) {
            continue;
        }
        rows.push(t);
    }
    emit_tableaux(&rs, &rows, format)
}

fn emit_tableaux(rs: &RootSystem, rows: &[hlfold::tableaux::Tableau], format: Format) -> Outcome {
    let weight = |t: &hlfold::tableaux::Tableau| t.weight(rs).map_err(Failure::from);
    match format {
        Format::Pretty => {
            for (k, t) in rows.iter().enumerate() {
                if k > 0 {
                    println!();
                }
                print!("{}", t.pretty());
            }
        }
        Format::Json => {
            let mut items = Vec::new();
            for t in rows {
                items.push(json!({
                    "columns": t.to_json(),
                    "semistandard": t.is_semistandard(),
                    "weight": weight(t)?.to_strings(),
                }));
            }
            print_json(&Value::Array(items));
        }
        Format::Csv => {
            let mut out = Vec::new();
            for (k, t) in rows.iter().enumerate() {
                out.push(vec![
                    (k + 1).to_string(),
                    t.is_semistandard().to_string(),
                    weight(t)?.to_string(),
                    t.to_json().to_string(),
                ]);
            }
            csv_out(&["index", "semistandard", "weight", "columns"], out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool");
    }
    let result = match &cli.command {
        Command::L(w) => cmd_l(w, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::Galleries(a) => cmd_galleries(a, cli.format),
        Command::Char(a) => cmd_char(a, cli.format),
        Command::Tableaux(a) => cmd_tableaux(a, cli.format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
