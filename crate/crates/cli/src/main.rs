//! `apostol`: λ-Euler tables, λ-zeta and λ-l-values, p-adic l-values,
//! Riemann sums of p-adic integrals and verification suites.

use std::process::ExitCode;

use apostol::apostol::{bernoulli_numbers, euler_numbers};
use apostol::characters::{
    generalized_euler_numbers, generalized_euler_polynomial, teichmuller_character, DirichletCharacter,
};
use apostol::cyclotomic::Cyclotomic;
use apostol::integral::{
    fermionic_sum, lemma1_residual, parse_character, parse_integrand, q_sum, theorem2_residual,
    volkenborn_derivative_residual, volkenborn_sum, QValue,
};
use apostol::padic::{h_lambda_p, l_lambda_p, theorem10_rhs, theorem10_verify, PadicContext, PadicNumber};
use apostol::rational::{format_rational, parse_rational};
use apostol::verify::{run_suite, VerifyOptions};
use apostol::zeta::{l_lambda, partial_zeta, zeta_lambda, Acceleration, SeriesEvalConfig, SeriesValue};
use apostol::{Error, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

const DEFAULT_PRECISION: &str = "8";

#[derive(Parser)]
#[command(name = "apostol", version, about = "Exact and p-adic computation with λ-Euler numbers")]
#[command(after_help = "Exit codes: 0 ok, 1 check failed or tolerance not met, 2 usage or domain error.\n\
APOSTOL_PRECISION sets the default p-adic precision M (flags override).\n\
Output schemas are listed under each subcommand's --help.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// λ-Euler numbers E_0(λ)..E_n(λ), or polynomial values E_k(λ:x)
    #[command(after_help = "Text: comma-separated exact rationals.\n\
JSON: {\"lambda\": \"r\", \"n\": int, \"x\": \"r\"|null, \"values\": [\"r\", ...]}\n\
CSV: header k,value then one row per index.")]
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Bernoulli numbers B_0..B_n (B_1 = -1/2)
    #[command(after_help = "JSON: {\"n\": int, \"values\": [\"r\", ...]}")]
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Generalized λ-Euler numbers E_{k,χ}(λ) in Q(ζ_L)
    #[command(
        after_help = "Each value is a vector of rational coordinates in the power basis 1, ζ_L, ..., ζ_L^{φ(L)-1}.\n\
JSON: {\"chi\": {\"modulus\", \"order\", \"values\"}, \"lambda\": \"r\", \"x\": \"r\"|null, \"values\": [[\"r\", ...], ...]}"
    )]
    CharEuler {
        /// d:index into the characters mod d (index 0 is trivial)
        #[arg(long)]
        chi: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// λ-zeta function ζ_λ(s, x) = 2 Σ_{n≥0} (-1)^n λ^n (n+x)^{-s}
    #[command(after_help = SERIES_SCHEMA)]
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// λ-l-function l_λ(s, χ) = 2 Σ_{n≥1} (-1)^n χ(n) λ^n n^{-s}
    #[command(after_help = SERIES_SCHEMA)]
    L {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        chi: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Partial λ-zeta function H_λ(s, a | F)
    #[command(after_help = SERIES_SCHEMA)]
    PartialZeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        a: u64,
        #[arg(long = "F")]
        f: u64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// p-adic λ-l-function l_{λ,p}(s, χ), or H_{λ,p}(s, a | F) with --a
    #[command(after_help = PADIC_SCHEMA)]
    PadicL {
        #[command(flatten)]
        padic: PadicArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        /// d:index, or teich:t for the t-th power of the Teichmüller character
        #[arg(long, default_value = "1:0")]
        chi: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
        #[arg(long = "F")]
        f: Option<u64>,
        /// evaluate the partial function H_{λ,p}(s, a | F) instead
        #[arg(long)]
        a: Option<u64>,
    },
    /// Alternating p-adic harmonic sums against their l-function expansion
    #[command(after_help = "JSON: {\"lhs\": padic, \"rhs\": padic, \"agreement_precision\": int, \"k_start\": int}\n\
padic = {\"p\": int, \"valuation\": int, \"digits\": [int, ...] (least significant first), \"precision\": int}\n\
Exits 1 when --require is given and agreement_precision is below it.")]
    Harmonic {
        #[command(flatten)]
        padic: PadicArgs,
        /// n, positive and even
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
        /// first index of the k-sum (0 adds the spurious k = 0 term for comparison)
        #[arg(long, default_value_t = 1)]
        k_start: u64,
        #[arg(long)]
        require: Option<i64>,
    },
    /// Riemann sums of p-adic integrals and their translation residuals
    #[command(after_help = INTEGRATE_HELP)]
    Integrate {
        #[command(flatten)]
        padic: PadicArgs,
        /// integrand in prefix syntax
        #[arg(long)]
        f: String,
        #[arg(long = "N", default_value_t = 3)]
        level: u32,
        #[arg(long, value_enum, default_value_t = Measure::Fermionic)]
        measure: Measure,
        /// q for the bosonic measure μ_q (needs q ≡ 1 mod p)
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// value bound to `lambda` in the integrand
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        residual: Option<Residual>,
        /// shift n for the theorem2 residual
        #[arg(long, default_value_t = 1)]
        shift: u64,
        /// exact value to compare against
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<String>,
        #[arg(long)]
        require: Option<i64>,
    },
    /// Run a named verification suite
    #[command(
        after_help = "Suites: recurrence theorem5 distribution characters corollary6 corollary9 interpolation\n\
binomial-identities theorem10 lemma1 witt trig qbinom all\n\
JSON: {\"suite\": str, \"cases\": [{\"id\": str, \"status\": \"pass\"|\"fail\"|\"skipped\", \"detail\": str}], \"exit_code\": 0|1}"
    )]
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        padic: PadicArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const SERIES_SCHEMA: &str = "s is a complex number: -1, 2.5, 1+2i, 0.5-3i.\n\
JSON: {\"re\": float, \"im\": float, \"terms_used\": int}\n\
Exits 1 when the tolerance is not met within --max-terms.";

const PADIC_SCHEMA: &str = "JSON: {\"p\": int, \"valuation\": int, \"digits\": [int, ...], \"precision\": int}\n\
digits are base-p digits of the unit part, least significant first; the value is\n\
p^valuation * Σ digits[i] p^i + O(p^(valuation + precision)).";

const INTEGRATE_HELP: &str = "Integrand syntax (prefix):\n  \
x | c:1/2 | 3 | lambda\n  \
pow(B, x)  B^x for a constant unit B     pow(f, n)  f^n\n  \
sin(a) cos(a) exp(a)  functions of a·x, v_p(a) >= 1\n  \
log(B)  the constant log_p B             chi(d:i)   a Dirichlet character\n  \
qbinom(n, q)  [x choose n]_q              shift(f, n)  f(x + n)\n  \
add(f, ...) mul(f, ...) sub(f, g) neg(f)\n\
Example: mul(pow(lambda, x), pow(add(x, c:1/2), 3))\n\
JSON: {\"integrand\": str, \"measure\": str, \"N\": int, \"p\": int, \"M\": int, \"value\": padic,\n       \
\"compare\": padic|null, \"agreement_precision\": int|null}";

#[derive(Args)]
struct TableFormat {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_terms: usize,
    #[arg(long, value_enum)]
    accel: Option<Accel>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Accel {
    Direct,
    Alternating,
}

#[derive(Args)]
struct PadicArgs {
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// p-adic precision (digits)
    #[arg(long = "M", env = "APOSTOL_PRECISION", default_value = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Fermionic,
    Volkenborn,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum Residual {
    Lemma1,
    Theorem2,
    VolkenbornDerivative,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ToleranceNotMet { .. } | Error::PrecisionExhausted { .. } => Self::Check(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn parse_complex(s: &str) -> Result<Complex<f64>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse complex number {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse().map_err(|_| bad())?,
        };
        return Ok(Complex::new(re.parse().map_err(|_| bad())?, im));
    }
    Ok(Complex::new(t.parse().map_err(|_| bad())?, 0.0))
}

fn series_config(lambda: f64, args: &SeriesArgs) -> Result<SeriesEvalConfig<f64>, Failure> {
    let accel = match args.accel {
        Some(Accel::Direct) => Acceleration::Direct,
        Some(Accel::Alternating) => Acceleration::Alternating,
        None => SeriesEvalConfig::auto(lambda).acceleration(),
    };
    Ok(SeriesEvalConfig::new(args.max_terms, accel, args.tol)?)
}

fn series_json(v: &SeriesValue<f64>) -> Value {
    json!({ "re": v.value.re, "im": v.value.im, "terms_used": v.terms_used })
}

fn character(spec: &str, p: u64) -> Result<DirichletCharacter, Failure> {
    if let Some(t) = spec.strip_prefix("teich:") {
        let t: i64 = t.parse().map_err(|_| Failure::Usage(format!("bad Teichmüller power {t:?}")))?;
        return Ok(teichmuller_character(p)?.pow(t));
    }
    Ok(parse_character(spec)?)
}

fn context(args: &PadicArgs) -> Result<PadicContext, Failure> {
    Ok(PadicContext::new(args.p, args.precision)?)
}

fn emit_table(values: &[String], format: &TableFormat, json_value: Value) {
    if format.json {
        print_json(&json_value);
    } else if format.csv {
        println!("k,value");
        for (k, v) in values.iter().enumerate() {
            println!("{k},{v}");
        }
    } else {
        println!("{}", values.join(", "));
    }
}

fn cmd_euler(lambda: &str, n: usize, x: Option<&str>, format: &TableFormat) -> Outcome {
    let lambda = rational(lambda)?;
    let values: Vec<Rational> = match x {
        None => euler_numbers(&lambda, n)?.values,
        Some(x) => {
            let x = rational(x)?;
            let table = euler_numbers(&lambda, n)?;
            (0..=n).map(|k| table.polynomial(k, &x)).collect()
        }
    };
    let text: Vec<String> = values.iter().map(format_rational).collect();
    let x_json = x.map(|s| rational(s).map(|r| format_rational(&r))).transpose()?;
    emit_table(&text, format, json!({ "lambda": format_rational(&lambda), "n": n, "x": x_json, "values": text }));
    Ok(())
}

fn cmd_char_euler(chi: &str, lambda: &str, n: usize, x: Option<&str>, as_json: bool) -> Outcome {
    let chi = parse_character(chi)?;
    let lambda = rational(lambda)?;
    let table = generalized_euler_numbers(&chi, &lambda, n)?;
    let values: Vec<Cyclotomic> = match x {
        None => table.values.clone(),
        Some(x) => {
            let x = Cyclotomic::from_rational(chi.order(), &rational(x)?);
            (0..=n).map(|k| generalized_euler_polynomial(&table, k, &x)).collect()
        }
    };
    if as_json {
        let x_json = x.map(|s| rational(s).map(|r| format_rational(&r))).transpose()?;
        print_json(&json!({
            "chi": chi.to_json(),
            "lambda": format_rational(&lambda),
            "x": x_json,
            "values": values.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
        }));
    } else {
        for (k, v) in values.iter().enumerate() {
            println!("{k}: {v}");
        }
    }
    Ok(())
}

fn cmd_padic_l(args: &PadicArgs, s: i64, chi: &str, lambda: &str, f: Option<u64>, a: Option<u64>) -> Outcome {
    let ctx = context(args)?;
    let lambda = rational(lambda)?;
    let s = ctx.from_int(s);
    let value = match a {
        Some(a) => {
            let f = f.ok_or_else(|| Failure::Usage("--a requires --F".into()))?;
            h_lambda_p(&s, a, f, &lambda, &ctx)?
        }
        None => l_lambda_p(&s, &character(chi, args.p)?, &lambda, f, &ctx)?,
    };
    print_json(&value.to_json());
    Ok(())
}

fn cmd_harmonic(args: &PadicArgs, n: u64, r: u64, lambda: &str, k_start: u64, require: Option<i64>) -> Outcome {
    let ctx = context(args)?;
    let lambda = rational(lambda)?;
    let rep = if k_start == 1 {
        theorem10_verify(n, r, &lambda, &ctx)?
    } else {
        let mut rep = theorem10_verify(n, r, &lambda, &ctx)?;
        rep.rhs = theorem10_rhs(n, r, &lambda, &ctx, k_start)?;
        rep.agreement_precision = rep.lhs.agreement(&rep.rhs).min(args.precision as i64);
        rep
    };
    let mut v = rep.to_json();
    v["k_start"] = json!(k_start);
    print_json(&v);
    require_digits(rep.agreement_precision, require)
}

fn require_digits(got: i64, require: Option<i64>) -> Outcome {
    match require {
        Some(need) if got < need => Err(Failure::Check(format!("agreement {got} below required {need}"))),
        _ => Ok(()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_integrate(
    args: &PadicArgs,
    f: &str,
    level: u32,
    measure: Measure,
    q: Option<&str>,
    lambda: Option<&str>,
    residual: Option<Residual>,
    shift: u64,
    compare: Option<&str>,
    require: Option<i64>,
) -> Outcome {
    let ctx = context(args)?;
    let lambda = lambda.map(rational).transpose()?;
    let integrand = parse_integrand(f, lambda.as_ref())?;
    let (label, value): (String, PadicNumber) = match residual {
        Some(Residual::Lemma1) => ("lemma1-residual".into(), lemma1_residual(&integrand, level, &ctx)?),
        Some(Residual::Theorem2) => {
            (format!("theorem2-residual(n={shift})"), theorem2_residual(&integrand, shift, level, &ctx)?)
        }
        Some(Residual::VolkenbornDerivative) => {
            ("volkenborn-derivative-residual".into(), volkenborn_derivative_residual(&integrand, level, &ctx)?)
        }
        None => match measure {
            Measure::Fermionic => ("fermionic".into(), fermionic_sum(&integrand, level, &ctx)?),
            Measure::Volkenborn => ("volkenborn".into(), volkenborn_sum(&integrand, level, &ctx)?),
            Measure::Q => {
                let q = q.ok_or_else(|| Failure::Usage("--measure q requires --q".into()))?;
                let qv = QValue::bosonic(rational(q)?, args.p)?;
                (format!("q={q}"), q_sum(&integrand, &qv, level, &ctx)?)
            }
        },
    };
    let target = compare.map(|c| rational(c).map(|r| ctx.from_rational(&r))).transpose()?;
    let agreement = target.as_ref().map(|t| value.agreement(t).min(args.precision as i64));
    print_json(&json!({
        "integrand": integrand.to_string(),
        "measure": label,
        "N": level,
        "p": args.p,
        "M": args.precision,
        "value": value.to_json(),
        "compare": target.as_ref().map(PadicNumber::to_json),
        "agreement_precision": agreement,
    }));
    match (agreement, require) {
        (Some(a), r) => require_digits(a, r),
        (None, Some(_)) => Err(Failure::Usage("--require needs --compare".into())),
        (None, None) => Ok(()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Euler { lambda, n, x, format } => cmd_euler(&lambda, n, x.as_deref(), &format),
        Command::Bernoulli { n, format } => {
            let t = bernoulli_numbers(n);
            let text: Vec<String> = t.values.iter().map(format_rational).collect();
            emit_table(&text, &format, t.to_json());
            Ok(())
        }
        Command::CharEuler { chi, lambda, n, x, json } => cmd_char_euler(&chi, &lambda, n, x.as_deref(), json),
        Command::Zeta { s, x, lambda, series } => {
            let v = zeta_lambda(parse_complex(&s)?, x, lambda, &series_config(lambda, &series)?)?;
            print_json(&series_json(&v));
            Ok(())
        }
        Command::L { s, chi, lambda, series } => {
            let v = l_lambda(parse_complex(&s)?, &parse_character(&chi)?, lambda, &series_config(lambda, &series)?)?;
            print_json(&series_json(&v));
            Ok(())
        }
        Command::PartialZeta { s, a, f, lambda, series } => {
            let v = partial_zeta(parse_complex(&s)?, a, f, lambda, &series_config(lambda, &series)?)?;
            print_json(&series_json(&v));
            Ok(())
        }
        Command::PadicL { padic, s, chi, lambda, f, a } => cmd_padic_l(&padic, s, &chi, &lambda, f, a),
        Command::Harmonic { padic, n, r, lambda, k_start, require } => {
            cmd_harmonic(&padic, n, r, &lambda, k_start, require)
        }
        Command::Integrate { padic, f, level, measure, q, lambda, residual, shift, compare, require } => cmd_integrate(
            &padic,
            &f,
            level,
            measure,
            q.as_deref(),
            lambda.as_deref(),
            residual,
            shift,
            compare.as_deref(),
            require,
        ),
        Command::Verify { suite, padic, seed } => {
            let opts = VerifyOptions { p: padic.p, precision: padic.precision, seed };
            let result = run_suite(&suite, &opts)?;
            print_json(&serde_json::to_value(&result).expect("serializable"));
            if result.exit_code == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("suite {suite}: failing cases")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("apostol: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("apostol: {msg}");
            ExitCode::from(2)
        }
    }
}
