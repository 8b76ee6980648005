//! Command-line front end for exact computations in the group rings of
//! `Z/dZ wr Z`.
//!
//! Exit codes: 0 success, 1 verification failed, 2 parse error, 3 limit
//! exceeded, 4 invalid configuration.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lamplighter::certificates::{
    certify, lzero_annihilator, mod_b2_reduce, Certificate, ZVector, DEFAULT_ENUMERATION_CAP,
};
use lamplighter::foxwords::{
    fox_derivative, parse_group_ring_element, parse_word, FreeWord, Generator,
};
use lamplighter::json;
use lamplighter::oresearch::{self, Annihilator, SearchOptions, SearchReport, Window};
use lamplighter::sample::Sampler;
use lamplighter::selftest;
use lamplighter::{Error, GroupParams, GroupRingElement, ScalarRing};

const AFTER_HELP: &str = "\
Group elements are written in a and x with a[i] = x^i a x^-i, e.g.
  a^2 x a^-1,  a[3]^2 x^-1,  [a, x a x^-1],  (a x)^3,  e
Group-ring elements are signed sums of integer multiples of such words, e.g.
  1 - a[0] + 2*a[1]*x^-1

Exit codes: 0 success, 1 verification failed, 2 parse error,
3 limit exceeded, 4 invalid configuration.";

#[derive(Parser, Debug)]
#[command(
    name = "lamplighter",
    version,
    about = "Exact arithmetic, Fox calculus and zerodivisor certificates for group rings of Z/dZ wr Z",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Order d of the lamp group Z/dZ (at least 2).
    #[arg(long = "d", global = true, default_value_t = 2)]
    d: u32,
    /// Coefficient modulus; 0 means the integers. ore-search defaults to d.
    #[arg(long = "mod", global = true)]
    modulus: Option<u64>,
    /// Cap on enumerated group elements (subgroups, windows).
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two group-ring elements.
    Mul { lhs: String, rhs: String },
    /// Fox derivative of a word with respect to a generator (a or x).
    Fox { word: String, generator: String },
    /// Print the relator r_L: a^d for L = 0, [a, x^L a x^-L] otherwise.
    Relator {
        #[arg(long = "L", default_value_t = 1)]
        l: usize,
    },
    /// Build u from z_0..z_N and check u * gamma = 0 for
    /// gamma = (1 - a) times the sum over the lamps at 1 <= |n| <= N.
    Certify {
        /// Largest relator index N; inferred from --z when omitted.
        #[arg(long = "N")]
        n: Option<usize>,
        /// Coefficients z_0;z_1;...;z_N. Random (see --seed) when omitted.
        #[arg(long)]
        z: Option<String>,
        /// Re-verify a certificate file instead of building one.
        #[arg(long, conflicts_with_all = ["n", "z"])]
        check: Option<PathBuf>,
    },
    /// Solve (1 - a) sigma = (1 - x) alpha over GF(p) on a finite window and
    /// check every basis solution.
    OreSearch {
        /// Lamp positions range over [-W, W].
        #[arg(long = "window-lamps", default_value_t = 1)]
        window_lamps: i64,
        /// Powers of x range over [-W, W].
        #[arg(long = "window-shift", default_value_t = 1)]
        window_shift: i64,
        /// Extra lamp positions on each side for the annihilator search.
        #[arg(long = "annihilator-lamps", default_value_t = 1)]
        annihilator_lamps: i64,
        /// Skip the right annihilator search.
        #[arg(long = "no-annihilators")]
        no_annihilators: bool,
        /// Cap on dense matrix entries.
        #[arg(long = "matrix-cap", default_value_t = oresearch::DEFAULT_MATRIX_CAP)]
        matrix_cap: usize,
    },
    /// Left annihilator of elements of b kG from a finite base subgroup.
    Annihilate {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Image of an element of the base augmentation ideal in B (x) GF(p).
    ReduceB2 { element: String },
    /// Run the built-in consistency checks.
    Selftest {
        /// Random cases per randomized check and configuration.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum Failure {
    Lib(Error),
    Config(String),
    Io(PathBuf, io::Error),
    Verification(String),
    Json(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Json(_) => 2,
            Failure::Lib(Error::Parse { .. } | Error::Schema(_)) => 2,
            Failure::Lib(Error::LimitExceeded { .. }) => 3,
            Failure::Lib(_) | Failure::Config(_) | Failure::Io(..) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(Error::Parse { position, message }) => {
                format!("parse error at byte {position}: {message}")
            }
            Failure::Lib(e) => e.to_string(),
            Failure::Config(m) => format!("invalid configuration: {m}"),
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Verification(m) => format!("verification failed: {m}"),
            Failure::Json(m) => format!("malformed JSON: {m}"),
        }
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// Rendered output plus whether the run counts as a success.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn success(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            ok: true,
        }
    }
}

struct Context {
    params: GroupParams,
    ring: ScalarRing,
    common: Common,
}

impl Context {
    fn new(common: Common) -> std::result::Result<Self, Failure> {
        let params = GroupParams::new(common.d)?;
        let ring = ScalarRing::from_modulus(common.modulus.unwrap_or(0))?;
        Ok(Context {
            params,
            ring,
            common,
        })
    }

    fn element(&self, text: &str) -> std::result::Result<GroupRingElement, Failure> {
        Ok(parse_group_ring_element(text, self.ring, self.params)?)
    }
}

fn mul(ctx: &Context, lhs: &str, rhs: &str) -> Outcome {
    let product = ctx.element(lhs)?.checked_mul(&ctx.element(rhs)?)?;
    Ok(Output::success(
        product.to_string(),
        json::group_ring_to_json(&product),
    ))
}

fn fox(ctx: &Context, word: &str, generator: &str) -> Outcome {
    let w = parse_word(word)?;
    let s: Generator = generator.parse()?;
    let derivative = fox_derivative(&w, s, ctx.ring, ctx.params);
    Ok(Output::success(
        derivative.to_string(),
        json::group_ring_to_json(&derivative),
    ))
}

fn relator(ctx: &Context, l: usize) -> Outcome {
    let r = FreeWord::relator(ctx.params, l);
    let text = r.to_string();
    let json = json!({"index": l, "d": ctx.params.d(), "word": text, "length": r.len()});
    Ok(Output::success(text, json))
}

fn parse_z(ctx: &Context, text: &str) -> std::result::Result<Vec<GroupRingElement>, Failure> {
    text.split(';').map(|entry| ctx.element(entry)).collect()
}

fn certificate_text(cert: &Certificate) -> String {
    let ring = cert.ring();
    format!(
        "d = {}, k = {ring}, N = {}\nu = {}\ngamma: {} terms\nu * gamma = {}\nverified = {}",
        cert.params().d(),
        cert.max_index(),
        cert.u,
        cert.gamma.len(),
        cert.product,
        cert.verified
    )
}

fn certify_cmd(ctx: &Context, n: Option<usize>, z: Option<&str>) -> Outcome {
    let entries = match (z, n) {
        (Some(text), n) => {
            let entries = parse_z(ctx, text)?;
            if let Some(n) = n {
                if entries.len() != n + 1 {
                    return Err(Failure::Config(format!(
                        "--z has {} entries but --N {n} needs {}",
                        entries.len(),
                        n + 1
                    )));
                }
            }
            entries
        }
        (None, n) => {
            Sampler::seeded(ctx.common.seed).z_entries(ctx.ring, ctx.params, n.unwrap_or(1), 3)
        }
    };
    let cert = certify(&ZVector::new(entries)?, ctx.common.cap)?;
    Ok(Output {
        text: certificate_text(&cert),
        json: json::certificate_to_json(&cert),
        ok: cert.verified,
    })
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Json(e.to_string()))
}

fn check_certificate(path: &Path) -> Outcome {
    let cert = json::certificate_from_json(&read_json(path)?)?;
    if !cert.recheck() {
        return Err(Failure::Verification(format!(
            "{} does not hold a valid certificate",
            path.display()
        )));
    }
    let text = format!(
        "{}: certificate holds\n{}",
        path.display(),
        certificate_text(&cert)
    );
    Ok(Output::success(
        text,
        json!({"file": path.display().to_string(), "valid": true}),
    ))
}

fn report_text(r: &SearchReport) -> String {
    let mut lines = vec![
        format!("d = {}, p = {}, window: {}", r.d, r.p, r.window),
        format!("extended window size = {}", r.extended_window_size),
        format!("nullspace dimension = {}", r.nullspace_dim),
    ];
    for (i, s) in r.solutions.iter().enumerate() {
        let ann = match &s.annihilator {
            None => "skipped".to_string(),
            Some(Annihilator::NotFound) => "not found".to_string(),
            Some(Annihilator::Found(w)) => format!("{} terms", w.len()),
        };
        lines.push(format!(
            "solution {i}: in bkG = {}, annihilator: {ann}, sigma = {}",
            s.in_bkg, s.sigma
        ));
    }
    lines.push(format!("verdict = {}", r.verdict));
    lines.join("\n")
}

fn ore_search(
    ctx: &Context,
    window_lamps: i64,
    window_shift: i64,
    annihilator_lamps: i64,
    no_annihilators: bool,
    matrix_cap: usize,
) -> Outcome {
    if window_lamps < 0 || window_shift < 0 || annihilator_lamps < 0 {
        return Err(Failure::Config("window radii must be non-negative".into()));
    }
    let p = ctx.common.modulus.unwrap_or(ctx.params.d() as u64);
    let p = u32::try_from(p)
        .map_err(|_| Failure::Config(format!("modulus {p} too large for the solver")))?;
    let window = Window::symmetric(window_lamps, window_shift);
    let options = SearchOptions {
        window_cap: ctx.common.cap,
        matrix_cap,
        annihilator_window: (!no_annihilators).then(|| window.widened(annihilator_lamps, 0)),
    };
    let report = oresearch::run(ctx.params.d(), p, window, &options)?;
    Ok(Output {
        text: report_text(&report),
        json: json::report_to_json(&report),
        ok: report.verdict.is_success(),
    })
}

fn annihilate(ctx: &Context, elements: &[String]) -> Outcome {
    let alphas = elements
        .iter()
        .map(|e| ctx.element(e))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let beta = lzero_annihilator(&alphas, ctx.ring, ctx.params, ctx.common.cap)?;
    for a in &alphas {
        if !beta.checked_mul(a)?.is_zero() {
            return Err(Failure::Verification(format!("beta * ({a}) is not zero")));
        }
    }
    Ok(Output::success(
        beta.to_string(),
        json::group_ring_to_json(&beta),
    ))
}

fn reduce_b2(ctx: &Context, element: &str) -> Outcome {
    let v = mod_b2_reduce(&ctx.element(element)?)?;
    Ok(Output::success(v.to_string(), json::mod_b2_to_json(&v)))
}

fn selftest_cmd(ctx: &Context, trials: usize) -> Outcome {
    let results = selftest::run_all(ctx.common.seed, trials)?;
    let ok = results.iter().all(|r| r.passed());
    let text = results
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    let json = Value::Array(
        results
            .iter()
            .map(|r| json!({"name": r.name, "cases": r.cases, "passed": r.passed(), "failures": r.failures}))
            .collect(),
    );
    Ok(Output { text, json, ok })
}

fn execute(cli: Cli) -> std::result::Result<(), Failure> {
    let ctx = Context::new(cli.common)?;
    let mut certificate_file = None;
    let output = match &cli.command {
        Command::Mul { lhs, rhs } => mul(&ctx, lhs, rhs),
        Command::Fox { word, generator } => fox(&ctx, word, generator),
        Command::Relator { l } => relator(&ctx, *l),
        Command::Certify {
            check: Some(path), ..
        } => check_certificate(path),
        Command::Certify { n, z, check: None } => {
            certificate_file = ctx.common.out.clone();
            certify_cmd(&ctx, *n, z.as_deref())
        }
        Command::OreSearch {
            window_lamps,
            window_shift,
            annihilator_lamps,
            no_annihilators,
            matrix_cap,
        } => ore_search(
            &ctx,
            *window_lamps,
            *window_shift,
            *annihilator_lamps,
            *no_annihilators,
            *matrix_cap,
        ),
        Command::Annihilate { elements } => annihilate(&ctx, elements),
        Command::ReduceB2 { element } => reduce_b2(&ctx, element),
        Command::Selftest { trials } => selftest_cmd(&ctx, *trials),
    }?;

    let json_text = || serde_json::to_string(&output.json).expect("serializable") + "\n";
    let rendered = match ctx.common.format {
        Format::Text => output.text.clone() + "\n",
        Format::Json => json_text(),
    };
    match (&certificate_file, &ctx.common.out) {
        // certificate files are always JSON; the summary still goes to stdout
        (Some(path), _) => {
            fs::write(path, json_text()).map_err(|e| Failure::Io(path.clone(), e))?;
            print!("{rendered}");
        }
        (None, Some(path)) => {
            fs::write(path, &rendered).map_err(|e| Failure::Io(path.clone(), e))?
        }
        (None, None) => print!("{rendered}"),
    }
    io::stdout().flush().ok();
    if output.ok {
        Ok(())
    } else {
        Err(Failure::Verification(match &cli.command {
            Command::OreSearch { .. } => "the search verdict is not consistent".into(),
            Command::Selftest { .. } => "some self-test checks failed".into(),
            _ => "certificate does not verify".into(),
        }))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
