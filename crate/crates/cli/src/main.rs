use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hahnval::corpus::{render, run_corpus};
use hahnval::envelope::AffineItem;
use hahnval::ops::{checks_pass, exit_code, run, Conjugate, Request};
use hahnval::typefile::{Session, TypeSpec};
use hahnval::{Error, Result};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "hahnval", version, about = "Approximation types over truncated Hahn series")]
struct Cli {
    /// Residue characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Precision for series literals written without O(...).
    #[arg(long, global = true)]
    precision: Option<String>,
    /// Number of approximants kept from a generator.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Print JSON instead of key = value lines.
    #[arg(long, global = true)]
    json: bool,
    /// key=value file overriding the session settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArg {
    /// JSON type description.
    #[arg(long = "type", value_name = "FILE", conflicts_with = "curated")]
    file: Option<PathBuf>,
    /// A bundled type: theta, lacunary-unit, lacunary-polar, lacunary-five,
    /// half-power, geometric, trace.
    #[arg(long)]
    curated: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a series.
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: String,
        /// Only terms below this exponent are computed.
        #[arg(long)]
        cap: Option<String>,
    },
    /// Distance of a type to the ground field.
    Dist {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Whether the type fixes the value of a polynomial.
    Fixes {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        poly: String,
    },
    /// The value of a polynomial under a transcendental type.
    Extend {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        poly: String,
    },
    /// Relative approximation degree and constant.
    Reldeg {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        poly: String,
    },
    /// Approximation coefficient with its certificates.
    ApproxCoeff {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        poly: String,
    },
    /// Residue polynomial of the rescaled factor at an approximant.
    FactorShape {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Eventual order of affine functions `index:intercept:slope`.
    Envelope {
        #[arg(long = "item", value_name = "I:A:T", required = true)]
        items: Vec<String>,
        #[arg(long)]
        cut: String,
    },
    /// Valuation-independence witness in a tame cyclic extension.
    TameWitness {
        #[arg(long)]
        n: u64,
        #[arg(long = "sigma", required = true)]
        sigmas: Vec<u64>,
        #[arg(long = "d", required = true)]
        ds: Vec<String>,
    },
    /// Trace pull-down with conjugates given as `sigma:poly`.
    TraceGen {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        n: u64,
        #[arg(long = "conj", value_name = "K:POLY", required = true)]
        conjugates: Vec<String>,
    },
    /// Run the bundled corpus.
    Corpus {
        #[arg(long)]
        filter: Option<String>,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::parse(0, msg)
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn type_spec(arg: &TypeArg, cli: &Cli) -> Result<TypeSpec> {
    match (&arg.file, &arg.curated) {
        (Some(f), _) => TypeSpec::from_json(&read(f)?),
        (None, Some(name)) => Ok(TypeSpec::Curated { curated: name.clone(), p: cli.p }),
        (None, None) => Err(usage("give --type FILE or --curated NAME")),
    }
}

fn session(cli: &Cli) -> Result<Session> {
    let mut s = Session::default();
    if let Some(p) = cli.p {
        s.set("p", &p.to_string())?;
    }
    if let Some(pr) = &cli.precision {
        s.set("precision", pr)?;
    }
    if let Some(d) = cli.depth {
        s.depth = Some(d);
    }
    if let Some(path) = &cli.config {
        s.merge_config(&read(path)?)?;
    }
    Ok(s)
}

fn request(cli: &Cli) -> Result<Request> {
    Ok(match &cli.command {
        Command::Eval { poly, x, cap } => {
            Request::Eval { p: cli.p, poly: poly.clone(), x: x.clone(), cap: cap.clone() }
        }
        Command::Dist { ty } => Request::Dist { ty: type_spec(ty, cli)? },
        Command::Fixes { ty, poly } => Request::Fixes { ty: type_spec(ty, cli)?, poly: poly.clone() },
        Command::Extend { ty, poly } => Request::Extend { ty: type_spec(ty, cli)?, poly: poly.clone() },
        Command::Reldeg { ty, poly } => Request::Reldeg { ty: type_spec(ty, cli)?, poly: poly.clone() },
        Command::ApproxCoeff { ty, poly } => {
            Request::ApproxCoeff { ty: type_spec(ty, cli)?, poly: poly.clone() }
        }
        Command::FactorShape { ty, poly, index } => {
            Request::FactorShape { ty: type_spec(ty, cli)?, poly: poly.clone(), index: *index }
        }
        Command::Envelope { items, cut } => {
            let items = items.iter().map(|s| parse_item(s)).collect::<Result<Vec<_>>>()?;
            Request::Envelope { items, cut: cut.parse()? }
        }
        Command::TameWitness { n, sigmas, ds } => {
            let p = cli.p.ok_or_else(|| usage("tame-witness needs --p"))?;
            Request::TameWitness { p, n: *n, sigmas: sigmas.clone(), ds: ds.clone() }
        }
        Command::TraceGen { ty, n, conjugates } => {
            let conjugates = conjugates
                .iter()
                .map(|c| {
                    let (k, poly) = c.split_once(':').ok_or_else(|| usage("--conj expects K:POLY"))?;
                    let sigma = k.trim().parse().map_err(|_| usage("--conj: bad σ index"))?;
                    Ok(Conjugate { sigma, poly: poly.to_string() })
                })
                .collect::<Result<Vec<_>>>()?;
            Request::TraceGen { n: *n, ty: type_spec(ty, cli)?, conjugates }
        }
        Command::Corpus { .. } => unreachable!("handled separately"),
    })
}

fn parse_item(s: &str) -> Result<AffineItem> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("item {s:?}: expected index:intercept:slope")));
    }
    let index = parts[0].trim().parse().map_err(|_| usage("bad item index"))?;
    let slope = parts[2].trim().parse().map_err(|_| usage("bad item slope"))?;
    Ok(AffineItem::new(index, parts[1].parse()?, slope))
}

fn print_value(v: &Value, json: bool) {
    if json {
        println!("{v}");
        return;
    }
    if let Value::Object(m) = v {
        for (k, val) in m {
            if k == "input" {
                continue;
            }
            match val {
                Value::String(s) => println!("{k} = {s}"),
                other => println!("{k} = {other}"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = session(&cli).and_then(|s| {
        if let Command::Corpus { filter } = &cli.command {
            let reports = run_corpus(filter.as_deref(), &s);
            print!("{}", render(&reports));
            return Ok(if reports.iter().all(|r| r.status == "pass") { 0 } else { 1 });
        }
        let v = run(&request(&cli)?, &s)?;
        print_value(&v, cli.json);
        Ok(if checks_pass(&v) { 0 } else { 1 })
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({"error": e.kind(), "message": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
