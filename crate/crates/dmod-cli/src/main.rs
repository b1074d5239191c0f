//! dmod: exact arithmetic for Drinfeld modular forms of level Gamma_0(T)
//! over F_q[T], driven entirely by flags and JSON on stdin/stdout.
//!
//! Exit codes: 0 success, 1 mathematical failure (a series that is not
//! modular, a form that is not pi-integral, a failed verification), 2
//! usage or configuration errors.

use std::io::Read as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmod_core::coeff::RingTag;
use dmod_core::fq::split_prime_power;
use dmod_core::generators::Generators;
use dmod_core::graded::{phi_d, victor_miller, GradedForm};
use dmod_core::json::{
    form_any_from_json, form_to_json, iso_to_json, series_from_json, series_ring,
    series_to_json, AnyForm, JsonCoeff,
};
use dmod_core::modp;
use dmod_core::residue::ResidueCtx;
use dmod_core::text::{apoly_from_text, xpoly_from_text};
use dmod_core::verify::{identity_suite, modp_suite, Check};
use dmod_core::{APoly, Error, FieldCtx, KFrac};

const DEFAULT_MAX_PREC: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "dmod",
    version,
    about = "Exact arithmetic for Drinfeld modular forms of level Gamma_0(T)"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Field size q: a prime, or a prime power together with --modulus.
    #[arg(long, global = true)]
    q: Option<u64>,

    /// Field characteristic p (alternative to --q).
    #[arg(long, global = true, conflicts_with = "q")]
    p: Option<u64>,

    /// Extension degree r over F_p (with --p; defaults to 1).
    #[arg(long, global = true, requires = "p")]
    r: Option<usize>,

    /// Defining polynomial of F_q over F_p, in x, e.g. "x^2+1".
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// A monic irreducible polynomial in T other than T itself, e.g. "T+1".
    #[arg(long, global = true)]
    pi: Option<String>,

    /// Working precision: series carry the terms below u^prec.
    #[arg(long, global = true, default_value_t = 20)]
    prec: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the u-expansion of a named generator.
    Gen {
        /// One of E, ET, g1, g1T, deltaT, deltaW, h, delta, uT, or gd:<d>.
        name: String,
    },
    /// Recover the (weight, type, isobaric polynomial) presentation of a
    /// series read from stdin.
    Decompose {
        #[arg(long)]
        weight: i64,
        #[arg(long = "type")]
        r#type: i64,
    },
    /// Expand a form read from stdin into its u-series at --prec.
    Series,
    /// Print the Victor-Miller basis for a weight and type.
    Vm {
        #[arg(long)]
        weight: i64,
        #[arg(long = "type")]
        r#type: i64,
    },
    /// Print the isobaric polynomial phi_d of the Eisenstein series g_d.
    Phi {
        #[arg(long)]
        d: u32,
    },
    /// Weight filtration mod --pi of a form read from stdin.
    Filtration,
    /// Decide whether two forms are congruent mod --pi.
    Congruent {
        /// Each form: inline JSON, @file, or "-" for stdin (alone: a
        /// two-element JSON array on stdin).
        forms: Vec<String>,
    },
    /// Run the built-in verification suites at --prec.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Modp,
    All,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotModular { .. }
            | Error::NotPIntegral
            | Error::PrimeIsT
            | Error::TypeMismatch { .. }
            | Error::EmptySpace
            | Error::PrecisionTooLow { .. } => 1,
            _ => 2,
        };
        fail(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Gen { name } => cmd_gen(cfg, name),
        Command::Decompose { weight, r#type } => cmd_decompose(cfg, *weight, *r#type),
        Command::Series => cmd_series(cfg),
        Command::Vm { weight, r#type } => cmd_vm(cfg, *weight, *r#type),
        Command::Phi { d } => cmd_phi(cfg, *d),
        Command::Filtration => cmd_filtration(cfg),
        Command::Congruent { forms } => cmd_congruent(cfg, forms),
        Command::Verify { suite } => cmd_verify(cfg, *suite),
    }
}

fn field_ctx(cfg: &Config) -> Result<Arc<FieldCtx>, Failure> {
    let parse_modulus = |p: u64| -> Result<Option<Vec<i64>>, Failure> {
        match &cfg.modulus {
            None => Ok(None),
            Some(s) => {
                let coeffs = xpoly_from_text(p, s)?;
                Ok(Some(coeffs.into_iter().map(|c| c as i64).collect()))
            }
        }
    };
    match (cfg.q, cfg.p) {
        (Some(q), None) => {
            let (p, _) = split_prime_power(q)
                .ok_or_else(|| fail(2, format!("{q} is not a prime power")))?;
            let m = parse_modulus(p)?;
            Ok(FieldCtx::from_q(q, m.as_deref())?)
        }
        (None, Some(p)) => {
            let m = parse_modulus(p)?;
            Ok(FieldCtx::new(p, cfg.r.unwrap_or(1), m.as_deref())?)
        }
        _ => Err(fail(2, "a field is required: pass --q, or --p with --r and --modulus")),
    }
}

fn residue_ctx(cfg: &Config, ctx: &Arc<FieldCtx>) -> Result<Arc<ResidueCtx>, Failure> {
    let text = cfg
        .pi
        .as_ref()
        .ok_or_else(|| fail(2, "this command needs --pi"))?;
    let pi = apoly_from_text(ctx, text)?;
    Ok(ResidueCtx::from_pi(pi)?)
}

fn prec(cfg: &Config) -> Result<usize, Failure> {
    let cap = std::env::var("DMOD_MAX_PREC")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_PREC);
    if cfg.prec < 1 || cfg.prec > cap {
        return Err(fail(2, format!("--prec must be between 1 and {cap}")));
    }
    Ok(cfg.prec)
}

fn stdin_json() -> Result<Value, Failure> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| fail(2, format!("cannot read stdin: {e}")))?;
    parse_json(&buf)
}

fn parse_json(s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| fail(2, format!("malformed JSON: {e}")))
}

fn emit(cfg: &Config, v: Value, text: String) {
    use std::io::Write as _;
    let out = std::io::stdout();
    let mut lock = out.lock();
    let result = match cfg.format {
        Format::Json => writeln!(lock, "{v}"),
        Format::Text => writeln!(lock, "{text}"),
    };
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // Downstream closed the pipe; die the way line tools do.
            std::process::exit(141);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn form_text<C: JsonCoeff>(f: &GradedForm<C>) -> String {
    format!("weight {}, type {}: {}", f.k(), f.l(), f.iso())
}

fn cmd_gen(cfg: &Config, name: &str) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let n = prec(cfg)?;
    let gens = Generators::new(&ctx);
    let s = match name {
        "E" => gens.e(n),
        "ET" => gens.et(n),
        "g1" => gens.g1(n),
        "g1T" => gens.g1_tz(n),
        "deltaT" => gens.delta_t(n),
        "deltaW" => gens.delta_w(n),
        "h" => gens.h(n),
        "delta" => gens.delta(n),
        "uT" => gens.u_t(n),
        other => match other.strip_prefix("gd:").and_then(|d| d.parse::<u32>().ok()) {
            Some(d) => gens.gd(d, n),
            None => {
                return Err(fail(
                    2,
                    format!(
                        "unknown generator {other:?}; expected E, ET, g1, g1T, \
                         deltaT, deltaW, h, delta, uT, or gd:<d>"
                    ),
                ))
            }
        },
    }?;
    emit(cfg, series_to_json(&s), s.to_string());
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(cfg: &Config, k: i64, l: i64) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let gens = Generators::new(&ctx);
    let v = stdin_json()?;
    match series_ring(&v)? {
        RingTag::A => {
            let s = series_from_json::<APoly>(&ctx, &v)?;
            let f = GradedForm::from_series(&gens, k, l, &s)?;
            emit(cfg, form_to_json(&f), form_text(&f));
        }
        RingTag::K => {
            let s = series_from_json::<KFrac>(&ctx, &v)?;
            let f = GradedForm::from_series(&gens, k, l, &s)?;
            emit(cfg, form_to_json(&f), form_text(&f));
        }
        RingTag::Fpd => {
            return Err(fail(2, "decompose expects a series over A or K"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_series(cfg: &Config) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let n = prec(cfg)?;
    let gens = Generators::new(&ctx);
    match form_any_from_json(&ctx, &stdin_json()?)? {
        AnyForm::A(f) => {
            let s = f.to_series(&gens, n)?;
            emit(cfg, series_to_json(&s), s.to_string());
        }
        AnyForm::K(f) => {
            let s = f.to_series(&gens, n)?;
            emit(cfg, series_to_json(&s), s.to_string());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_vm(cfg: &Config, k: i64, l: i64) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let gens = Generators::new(&ctx);
    let basis = victor_miller(&gens, k, l)?;
    let arr = Value::Array(basis.iter().map(form_to_json).collect());
    let text = basis.iter().map(form_text).collect::<Vec<_>>().join("\n");
    emit(cfg, arr, text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_phi(cfg: &Config, d: u32) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let iso = phi_d(&ctx, d)?;
    emit(cfg, iso_to_json(&iso), iso.to_string());
    Ok(ExitCode::SUCCESS)
}

fn cmd_filtration(cfg: &Config) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let rc = residue_ctx(cfg, &ctx)?;
    let r = match form_any_from_json(&ctx, &stdin_json()?)? {
        AnyForm::A(f) => modp::filtration(&f, &rc)?,
        AnyForm::K(f) => modp::filtration(&f, &rc)?,
    };
    let w = match r.value {
        Some(w) => json!(w),
        None => json!("-inf"),
    };
    let text = format!(
        "w = {}, steps = {}, witness = {}",
        r.value.map_or_else(|| "-inf".to_string(), |w| w.to_string()),
        r.steps,
        r.witness
    );
    emit(
        cfg,
        json!({ "w": w, "steps": r.steps, "witness": iso_to_json(&r.witness) }),
        text,
    );
    Ok(ExitCode::SUCCESS)
}

fn one_form_source(arg: &str) -> Result<Value, Failure> {
    if arg == "-" {
        stdin_json()
    } else if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| fail(2, format!("cannot read {path}: {e}")))?;
        parse_json(&text)
    } else {
        parse_json(arg)
    }
}

fn two_form_sources(args: &[String]) -> Result<(Value, Value), Failure> {
    match args {
        [only] if only == "-" => {
            let v = stdin_json()?;
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| fail(2, "stdin must hold a JSON array of exactly two forms"))?;
            Ok((arr[0].clone(), arr[1].clone()))
        }
        [a, b] => {
            if a == "-" && b == "-" {
                return Err(fail(2, "at most one form may come from stdin"));
            }
            Ok((one_form_source(a)?, one_form_source(b)?))
        }
        _ => Err(fail(
            2,
            "congruent needs two forms, or \"-\" for a two-form array on stdin",
        )),
    }
}

fn cmd_congruent(cfg: &Config, args: &[String]) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let rc = residue_ctx(cfg, &ctx)?;
    let (vf, vg) = two_form_sources(args)?;
    let f = form_any_from_json(&ctx, &vf)?;
    let g = form_any_from_json(&ctx, &vg)?;
    let rep = match (f, g) {
        (AnyForm::A(f), AnyForm::A(g)) => modp::congruent(&f, &g, &rc)?,
        (f, g) => {
            let lift = |h: AnyForm| -> Result<GradedForm<KFrac>, Failure> {
                Ok(match h {
                    AnyForm::A(h) => h.embed::<KFrac>(&ctx)?,
                    AnyForm::K(h) => h,
                })
            };
            modp::congruent(&lift(f)?, &lift(g)?, &rc)?
        }
    };
    let power = match rep.m {
        Some(m) => {
            let phi = modp::iso_reduce(&phi_d(&ctx, rc.degree() as u32)?, &rc)?;
            Some(phi.pow(m.unsigned_abs()))
        }
        None => None,
    };
    let text = format!(
        "{}, m = {}{}",
        rep.congruent,
        rep.m.map_or_else(|| "none".to_string(), |m| m.to_string()),
        power
            .as_ref()
            .map_or_else(String::new, |p| format!(", phi_d^|m| = {p}")),
    );
    emit(
        cfg,
        json!({
            "congruent": rep.congruent,
            "m": rep.m,
            "phi_d_power": power.as_ref().map(iso_to_json).unwrap_or(Value::Null),
        }),
        text,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &Config, suite: Suite) -> Result<ExitCode, Failure> {
    let ctx = field_ctx(cfg)?;
    let n = prec(cfg)?;
    let gens = Generators::new(&ctx);
    let mut suites: Vec<(&str, Vec<Check>)> = Vec::new();
    match suite {
        Suite::Identities => {
            suites.push(("identities", identity_suite(&gens, n)?));
        }
        Suite::Modp => {
            let rc = residue_ctx(cfg, &ctx)?;
            suites.push(("modp", modp_suite(&gens, &rc, n)?));
        }
        Suite::All => {
            suites.push(("identities", identity_suite(&gens, n)?));
            if cfg.pi.is_some() {
                let rc = residue_ctx(cfg, &ctx)?;
                suites.push(("modp", modp_suite(&gens, &rc, n)?));
            }
        }
    }
    let all_pass = suites.iter().all(|(_, cs)| cs.iter().all(|c| c.pass));
    let reports: Vec<Value> = suites
        .iter()
        .map(|(name, cs)| {
            let pass = cs.iter().all(|c| c.pass);
            json!({
                "suite": name,
                "pass": pass,
                "checks": serde_json::to_value(cs).expect("checks serialize"),
            })
        })
        .collect();
    let mut lines = Vec::new();
    for (name, cs) in &suites {
        for c in cs {
            lines.push(format!(
                "{} {name}/{}: {} ({})",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.statement,
                c.details
            ));
        }
    }
    lines.push(if all_pass {
        "all checks passed".to_string()
    } else {
        "some checks FAILED".to_string()
    });
    emit(
        cfg,
        json!({ "pass": all_pass, "suites": reports }),
        lines.join("\n"),
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
