//! Command-line front end. [`run`] takes the argument vector and output
//! streams so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or parse error,
//! 3 size limit exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::certificate::{self, Certificate};
use crate::dsl;
use crate::error::Error;
use crate::gallery::{self, FiniteMap, FiniteRing};
use crate::inductive::{InductiveConstruction, Subset};
use crate::logic::{find_models, KSet, Theory, DEFAULT_MAX_UNIVERSE};
use crate::site::degeneracy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "geosat", version, about = "Degeneracy of geometric propositional theories")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest symbol universe accepted (at most 30).
    #[arg(long, default_value_t = DEFAULT_MAX_UNIVERSE, global = true)]
    max_universe: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the theory's classifying topos is degenerate.
    Check { file: PathBuf },
    /// Enumerate set models of the theory.
    Model {
        file: PathBuf,
        #[arg(long, conflicts_with = "limit")]
        all: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Emit a certificate for the verdict.
    Prove {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a theory.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Write a theory from one of the built-in families.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Inspect an inductive construction.
    Ind(IndArgs),
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Non-trivial ideals of Z/N or Z/N x Z/M.
    Nti {
        #[arg(long, conflicts_with = "product", required_unless_present = "product")]
        zmod: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["N", "M"])]
        product: Option<Vec<usize>>,
    },
    /// Dedekind finiteness of an N-element set.
    Dedekind {
        #[arg(long)]
        size: usize,
    },
    /// Sections of a surjection given as "a:b,a':b',...".
    Epi {
        #[arg(long)]
        map: String,
    },
    /// Injections {0..K} -> an N-element set.
    Mono {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        size: usize,
    },
    /// Seeded random theory.
    Random {
        #[arg(long)]
        symbols: usize,
        #[arg(long)]
        axioms: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_disjuncts: usize,
    },
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group = ArgGroup::new("mode").required(true).multiple(false))]
struct IndArgs {
    file: PathBuf,
    #[arg(long, group = "mode")]
    closure: bool,
    #[arg(long, group = "mode")]
    total: bool,
    #[arg(long, group = "mode", value_name = "ORDERFILE")]
    stratified: Option<PathBuf>,
}

/// A failed command: exit code plus message for standard error.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UniverseTooLarge { .. } => EXIT_LIMIT,
            Error::HashMismatch | Error::NotStratified => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

struct Ctx<'a> {
    format: Format,
    max_universe: usize,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        max_universe: cli.max_universe,
        out,
        err,
    };
    let result = match cli.command {
        Command::Check { file } => cmd_check(&mut ctx, &file),
        Command::Model { file, all, limit } => {
            cmd_model(&mut ctx, &file, if all { None } else { Some(limit.unwrap_or(1)) })
        }
        Command::Prove { file, out } => cmd_prove(&mut ctx, &file, out.as_ref()),
        Command::Verify { file, cert } => cmd_verify(&mut ctx, &file, &cert),
        Command::Gen { family, out } => cmd_gen(&mut ctx, &family, out.as_ref()),
        Command::Ind(args) => cmd_ind(&mut ctx, &args),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            code
        }
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_file(path: &PathBuf, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_theory(ctx: &Ctx, path: &PathBuf) -> std::result::Result<Theory, Failure> {
    let text = read(path)?;
    dsl::parse_theory_with_max(&text, ctx.max_universe).map_err(|e| {
        let f = Failure::from(e);
        Failure(f.0, format!("{}: {}", path.display(), f.1))
    })
}

fn emit(ctx: &mut Ctx, text: &str, value: serde_json::Value) -> std::result::Result<(), Failure> {
    let res = match ctx.format {
        Format::Text => writeln!(ctx.out, "{text}"),
        Format::Json => writeln!(ctx.out, "{}", serde_json::to_string_pretty(&value).expect("json")),
    };
    res.map_err(|e| Failure(EXIT_USAGE, e.to_string()))
}

fn set_names(s: &KSet) -> Vec<&str> {
    s.symbols().collect()
}

fn cmd_check(ctx: &mut Ctx, file: &PathBuf) -> Outcome {
    let t = load_theory(ctx, file)?;
    let tr = degeneracy(&t)?;
    let v = tr.verdict;
    emit(
        ctx,
        &v.to_string(),
        json!({
            "verdict": v,
            "symbols": t.universe().size(),
            "axioms": t.len(),
            "closureSize": tr.zset.len(),
            "rounds": tr.rounds,
        }),
    )?;
    Ok(if v.is_degenerate() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_model(ctx: &mut Ctx, file: &PathBuf, limit: Option<usize>) -> Outcome {
    let t = load_theory(ctx, file)?;
    let models = find_models(&t, limit);
    let text = if models.is_empty() {
        "no model".to_string()
    } else {
        models.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n")
    };
    let list: Vec<Vec<&str>> = models.iter().map(set_names).collect();
    emit(ctx, &text, json!({ "count": models.len(), "models": list }))?;
    Ok(if models.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_prove(ctx: &mut Ctx, file: &PathBuf, out: Option<&PathBuf>) -> Outcome {
    let t = load_theory(ctx, file)?;
    let cert = certificate::prove(&t)?;
    let what = if cert.kind.is_degenerate() { "refutation" } else { "witness" };
    let status = format!("{}: {what} emitted", cert.kind);
    let json = cert.to_json();
    match out {
        Some(path) => {
            write_file(path, &json)?;
            emit(
                ctx,
                &status,
                json!({ "verdict": cert.kind, "certificate": path.display().to_string() }),
            )?;
        }
        None => {
            ctx.out
                .write_all(json.as_bytes())
                .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let _ = writeln!(ctx.err, "{status}");
        }
    }
    Ok(if cert.kind.is_degenerate() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_verify(ctx: &mut Ctx, file: &PathBuf, cert: &PathBuf) -> Outcome {
    let t = load_theory(ctx, file)?;
    let c = Certificate::from_json(&read(cert)?)?;
    match certificate::verify(&t, &c)? {
        Ok(()) => {
            emit(ctx, "valid", json!({ "valid": true, "kind": c.kind }))?;
            Ok(EXIT_OK)
        }
        Err(r) => {
            emit(
                ctx,
                &format!("invalid: {r}"),
                json!({ "valid": false, "kind": c.kind, "locus": r.locus, "reason": r.reason }),
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn generate(family: &Family) -> crate::Result<Theory> {
    match family {
        Family::Nti { zmod, product } => {
            let ring = match (zmod, product) {
                (Some(n), _) => FiniteRing::zmod(*n)?,
                (None, Some(nm)) => {
                    FiniteRing::product(&FiniteRing::zmod(nm[0])?, &FiniteRing::zmod(nm[1])?)?
                }
                (None, None) => unreachable!("clap requires one of --zmod, --product"),
            };
            gallery::gen_nti(&ring)
        }
        Family::Dedekind { size } => gallery::gen_dedekind(*size),
        Family::Epi { map } => gallery::gen_splitting_epi(&FiniteMap::parse(map)?),
        Family::Mono { k, size } => gallery::gen_mono(*k, *size),
        Family::Random {
            symbols,
            axioms,
            seed,
            max_disjuncts,
        } => gallery::gen_random(*symbols, *axioms, *max_disjuncts, *seed),
    }
}

fn cmd_gen(ctx: &mut Ctx, family: &Family, out: Option<&PathBuf>) -> Outcome {
    let t = generate(family)?;
    let size = t.universe().size();
    let max = ctx.max_universe.min(crate::logic::HARD_MAX_UNIVERSE);
    if size > max {
        return Err(Error::UniverseTooLarge { size, max }.into());
    }
    let text = dsl::serialize_theory(&t);
    match out {
        Some(path) => {
            write_file(path, &text)?;
            emit(
                ctx,
                &format!("wrote {} ({} symbols, {} axioms)", path.display(), size, t.len()),
                json!({ "file": path.display().to_string(), "symbols": size, "axioms": t.len() }),
            )?;
        }
        None => match ctx.format {
            Format::Text => ctx
                .out
                .write_all(text.as_bytes())
                .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?,
            Format::Json => {
                let axioms: Vec<_> = t
                    .axioms()
                    .iter()
                    .map(|a| {
                        json!({
                            "premise": set_names(&a.premise()),
                            "disjuncts": a.disjuncts().map(|q| q.symbols().map(str::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(ctx, "", json!({ "symbols": t.universe().names(), "axioms": axioms }))?;
            }
        },
    }
    Ok(EXIT_OK)
}

fn element_names<'a>(ic: &'a InductiveConstruction, set: &Subset) -> Vec<&'a str> {
    set.iter().map(|&i| ic.elements()[i].as_str()).collect()
}

fn cmd_ind(ctx: &mut Ctx, args: &IndArgs) -> Outcome {
    let ic = dsl::parse_inductive(&read(&args.file)?)?;
    let closure = ic.closure(&Subset::new());
    let total = closure.len() == ic.len();
    if args.closure {
        let names = element_names(&ic, &closure);
        emit(ctx, &format!("{{{}}}", names.join(" ")), json!({ "closure": names }))?;
        return Ok(EXIT_OK);
    }
    if args.total {
        let text = if total { "total" } else { "not total" };
        emit(ctx, text, json!({ "total": total }))?;
        return Ok(if total { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let order_path = args.stratified.as_ref().expect("clap requires a mode");
    let order = dsl::parse_order(&read(order_path)?, &ic)?;
    let degenerate = ic.stratified_degeneracy(&order).map_err(|e| match e {
        Error::NotStratified => Failure(EXIT_NEGATIVE, "construction is not downward stratified for this order".into()),
        e => e.into(),
    })?;
    let verdict = if degenerate { "degenerate" } else { "nondegenerate" };
    let covered = ic.site_closure(&order, &Subset::new());
    emit(
        ctx,
        verdict,
        json!({
            "verdict": verdict,
            "total": total,
            "emptyClosure": element_names(&ic, &covered),
        }),
    )?;
    Ok(if degenerate { EXIT_OK } else { EXIT_NEGATIVE })
}
