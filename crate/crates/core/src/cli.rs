//! Command-line front-end. Every command emits a `CommandResult` whose status
//! maps onto the process exit code: ok = 0, invalid-input = 1,
//! precondition-violated = 2, certificate-failure = 3. Large integers are
//! always decimal strings in JSON output.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::arith;
use crate::family;
use crate::forms::{self, Bqf};
use crate::reps;
use crate::slopes::Slope;
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qfslopes",
    version,
    about = "Quadratic-form arithmetic: Legendre symbols, reduced forms, representation counts, and certified slope families",
    after_help = "Exit codes: 0 ok, 1 invalid input, 2 precondition violated, 3 certificate failure.\n\
                  JSON payloads carry all large integers as decimal strings."
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of tables
    #[arg(long, global = true)]
    pub json: bool,

    /// Suppress informational output
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Legendre symbol (a/p) for an odd prime p
    Legendre {
        a: BigInt,
        p: BigInt,
        /// Re-verify the result against the brute-force set of squares mod p
        #[arg(long)]
        verify: bool,
    },
    /// Prime factorization with the distinct-prime count tau
    Factor { n: BigInt },
    /// All reduced forms of a negative discriminant (the class number)
    Forms {
        /// The discriminant, e.g. --disc=-48
        #[arg(long, allow_hyphen_values = true)]
        disc: BigInt,
    },
    /// Lagrange-reduce a form given as "a,b,c"
    Reduce { form: String },
    /// Enumerate or count representations of m
    Represent(RepresentArgs),
    /// Build a slope family with invariants and certificate
    Family(FamilyArgs),
    /// The invariant table (k, n_k, D_k) for a given A = p^2 + 12 q^2
    Surfaces {
        /// The common value A
        #[arg(long = "A", visible_alias = "a")]
        a: BigInt,
        #[arg(long, default_value_t = 10)]
        kmax: u64,
    },
    /// Distance |ps - qr| between two slopes given as "p/q"
    Distance { alpha: String, sigma: String },
    /// Rebuild the 16-slope family for N = 7,932,652 and certify it
    #[command(name = "verify-example")]
    VerifyExample {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
pub struct RepresentArgs {
    pub m: BigInt,
    /// A single form "a,b,c"
    #[arg(long, conflicts_with = "disc")]
    pub form: Option<String>,
    /// Aggregate over every reduced form of this discriminant
    #[arg(long, allow_hyphen_values = true)]
    pub disc: Option<BigInt>,
    /// Restrict to proper representations (gcd(x, y) = 1)
    #[arg(long)]
    pub proper: bool,
    /// Report counts without the solution list
    #[arg(long)]
    pub count_only: bool,
    /// Cross-check the enumeration against the closed-form count
    #[arg(long)]
    pub check_formula: bool,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Construct the smallest menu N with at least this many slopes
    #[arg(long, conflicts_with = "target")]
    pub n: Option<u64>,
    /// Use this target N directly
    #[arg(long = "N")]
    pub target: Option<BigInt>,
    #[arg(long, default_value_t = 100)]
    pub kmax: u64,
    /// Comma-separated explicit prime menu, e.g. --primes 7,13,19,31,37
    #[arg(long, conflicts_with_all = ["n", "target"])]
    pub primes: Option<String>,
    /// Also list the sign-variant slopes -p/q
    #[arg(long)]
    pub signed: bool,
}

/// Outcome of one command, stable across invocations.
#[derive(Debug)]
pub struct CommandResult {
    pub status: &'static str,
    pub exit_code: i32,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Human-readable rendering, one line per entry.
    pub table: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value, table: Vec<String>) -> Self {
        CommandResult { status: "ok", exit_code: 0, payload, diagnostics: Vec::new(), table }
    }

    fn from_error(err: &Error) -> Self {
        let (status, code) = match err.exit_code() {
            3 => ("certificate-failure", 3),
            2 => ("precondition-violated", 2),
            _ => ("invalid-input", 1),
        };
        CommandResult {
            status,
            exit_code: code,
            payload: Value::Null,
            diagnostics: vec![err.to_string()],
            table: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}

fn form_json(f: &Bqf) -> Value {
    json!({"a": f.a.to_string(), "b": f.b.to_string(), "c": f.c.to_string()})
}

fn slope_json(s: &Slope) -> Value {
    json!({"p": s.p().to_string(), "q": s.q().to_string()})
}

fn parse_form(text: &str) -> Result<Bqf> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!("form must be \"a,b,c\", got {text:?}")));
    }
    let nums: Vec<BigInt> = parts
        .iter()
        .map(|p| p.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {p:?}"))))
        .collect::<Result<_>>()?;
    Ok(Bqf { a: nums[0].clone(), b: nums[1].clone(), c: nums[2].clone() })
}

fn parse_slope(text: &str) -> Result<Slope> {
    let (p, q) = text
        .split_once('/')
        .ok_or_else(|| Error::InvalidInput(format!("slope must be \"p/q\", got {text:?}")))?;
    let p = p.trim().parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {p:?}")))?;
    let q = q.trim().parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {q:?}")))?;
    Slope::new(p, q)
}

fn cmd_legendre(a: &BigInt, p: &BigInt, verify: bool) -> Result<CommandResult> {
    let sym = arith::legendre(a, p)?;
    let mut payload = json!({"a": a.to_string(), "p": p.to_string(), "symbol": sym});
    let mut table = vec![format!("({a}/{p}) = {sym:+}")];
    if verify {
        let brute = brute_force_legendre(a, p)?;
        if brute != sym {
            return Err(Error::InvalidInput(format!(
                "internal disagreement: fast path {sym}, brute force {brute}"
            )));
        }
        payload["verified"] = json!(true);
        table.push("verified against the full square table mod p".into());
    }
    Ok(CommandResult::ok(payload, table))
}

// Independent check: scan the squares x^2 mod p directly.
fn brute_force_legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    use num_integer::Integer;
    use num_traits::{ToPrimitive, Zero};
    let p_u64 = p
        .to_u64()
        .filter(|&v| v <= 1_000_000)
        .ok_or_else(|| Error::UnsupportedRange("--verify supports p up to 10^6".into()))?;
    let r = a.mod_floor(p).to_u64().unwrap();
    if BigInt::from(r).is_zero() {
        return Ok(0);
    }
    for x in 0..p_u64 {
        if x * x % p_u64 == r {
            return Ok(1);
        }
    }
    Ok(-1)
}

fn cmd_factor(n: &BigInt) -> Result<CommandResult> {
    let f = arith::factorize(n)?;
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|(p, e)| json!({"prime": p.to_string(), "exponent": e}))
        .collect();
    let payload = json!({"n": n.to_string(), "factors": factors, "tau": f.tau()});
    let rendered = f
        .factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ");
    let table = vec![
        format!("{n} = {}", if rendered.is_empty() { "1".into() } else { rendered }),
        format!("tau = {}", f.tau()),
    ];
    Ok(CommandResult::ok(payload, table))
}

fn cmd_forms(disc: &BigInt) -> Result<CommandResult> {
    let list = forms::enumerate_reduced(disc)?;
    let payload = json!({
        "discriminant": disc.to_string(),
        "class_number": list.len(),
        "forms": list.iter().map(form_json).collect::<Vec<_>>(),
    });
    let mut table = vec![format!("discriminant {disc}: {} reduced form(s)", list.len())];
    table.extend(list.iter().map(|f| format!("  {f}")));
    Ok(CommandResult::ok(payload, table))
}

fn cmd_reduce(text: &str) -> Result<CommandResult> {
    let f = parse_form(text)?;
    let (g, u) = forms::reduce(&f)?;
    let payload = json!({
        "input": form_json(&f),
        "reduced": form_json(&g),
        "change": {
            "p": u.p.to_string(), "q": u.q.to_string(),
            "r": u.r.to_string(), "s": u.s.to_string(),
        },
    });
    let table = vec![
        format!("{f} ~ {g}"),
        format!("via x -> {}x + {}y, y -> {}x + {}y", u.p, u.q, u.r, u.s),
    ];
    Ok(CommandResult::ok(payload, table))
}

fn cmd_represent(args: &RepresentArgs) -> Result<CommandResult> {
    let target_forms: Vec<Bqf> = match (&args.form, &args.disc) {
        (Some(text), None) => vec![parse_form(text)?],
        (None, Some(disc)) => forms::enumerate_reduced(disc)?,
        (None, None) => {
            return Err(Error::InvalidInput("one of --form or --disc is required".into()))
        }
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    let mut per_form = Vec::new();
    let mut total = 0usize;
    for f in &target_forms {
        let set = reps::enumerate_representations(f, &args.m, args.proper)?;
        total += set.count();
        let mut entry = json!({
            "form": form_json(f),
            "count": set.count(),
        });
        if !args.count_only {
            entry["reps"] = Value::Array(
                set.reps
                    .iter()
                    .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                    .collect(),
            );
        }
        per_form.push((f.clone(), set, entry));
    }
    let mut payload = json!({
        "m": args.m.to_string(),
        "proper": args.proper,
        "count": total,
        "forms": per_form.iter().map(|(_, _, e)| e.clone()).collect::<Vec<_>>(),
    });
    let mut table = vec![format!(
        "{} representations of {} across {} form(s)",
        total,
        args.m,
        target_forms.len()
    )];
    for (f, set, _) in &per_form {
        table.push(format!("  {f}: {}", set.count()));
        if !args.count_only {
            for (x, y) in &set.reps {
                table.push(format!("    ({x}, {y})"));
            }
        }
    }
    if args.check_formula {
        let disc = args
            .disc
            .clone()
            .unwrap_or_else(|| target_forms[0].discriminant());
        let k = -(&disc) / BigInt::from(4);
        if !args.proper {
            return Err(Error::InvalidInput(
                "--check-formula counts proper representations; pass --proper".into(),
            ));
        }
        let formula = reps::gauss_count(&args.m, &k)?;
        let agree = args.disc.is_some() && formula == BigInt::from(total);
        payload["formula"] = json!(formula.to_string());
        if args.disc.is_some() {
            payload["agree"] = json!(agree);
            table.push(format!("closed form: {formula}, enumeration: {total}, agree: {agree}"));
            if !agree {
                return Err(Error::CertificateFailure {
                    clause: "formula".into(),
                    detail: format!("closed form {formula} != enumerated {total} for m = {}", args.m),
                });
            }
        } else {
            table.push(format!("closed form over the whole discriminant class: {formula}"));
        }
    }
    Ok(CommandResult::ok(payload, table))
}

fn family_payload(fam: &family::SlopeFamily, cert: &family::Certificate, signed: bool) -> Value {
    let mut slopes: Vec<Value> = fam.slopes.iter().map(slope_json).collect();
    if signed {
        for s in &fam.slopes {
            slopes.push(json!({"p": (-s.p()).to_string(), "q": s.q().to_string()}));
        }
    }
    json!({
        "N": fam.n.to_string(),
        "provenance": fam.provenance.factors.iter()
            .map(|(p, e)| json!({"prime": p.to_string(), "exponent": e}))
            .collect::<Vec<_>>(),
        "positive_count": fam.slopes.len(),
        "signed_count": fam.signed_count(),
        "slopes": slopes,
        "invariants": cert.invariants.iter().map(|row| json!({
            "k": row.k,
            "n_k": row.n_k.to_string(),
            "D_k": row.d_k.to_string(),
        })).collect::<Vec<_>>(),
        "certificate": {
            "kmax": cert.k_max,
            "pairs": cert.pair_count,
            "min_distance": cert.min_distance.as_ref().map(|d| d.to_string()),
            "ok": true,
        },
    })
}

fn family_table(fam: &family::SlopeFamily, cert: &family::Certificate) -> Vec<String> {
    let mut table = vec![
        format!("N = {}", fam.n),
        format!(
            "{} positive-quadrant slope(s), {} signed",
            fam.slopes.len(),
            fam.signed_count()
        ),
    ];
    for s in &fam.slopes {
        table.push(format!("  {s}"));
    }
    table.push(format!("invariants to k = {}:", cert.k_max));
    for row in cert.invariants.iter().take(5) {
        table.push(format!("  k={} n_k={} D_k={}", row.k, row.n_k, row.d_k));
    }
    if cert.invariants.len() > 5 {
        table.push(format!("  ... {} more rows", cert.invariants.len() - 5));
    }
    table.push(format!(
        "certificate: ok (agreement, D_k = 2 mod 3, strictly increasing, {} distinct admissible slopes)",
        cert.pair_count
    ));
    table
}

fn cmd_family(args: &FamilyArgs) -> Result<CommandResult> {
    let n = if let Some(menu) = &args.primes {
        let primes: Vec<u64> = menu
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad prime {t:?}")))
            })
            .collect::<Result<_>>()?;
        family::construct_n_from_primes(&primes)?
    } else if let Some(target) = &args.target {
        target.clone()
    } else if let Some(count) = args.n {
        family::construct_n(count)?
    } else {
        return Err(Error::InvalidInput("one of --n, --N, or --primes is required".into()));
    };
    let fam = family::find_family(&n)?;
    let cert = family::certify_family(&fam, args.kmax)?;
    if let Some(count) = args.n {
        if (fam.slopes.len() as u64) < count {
            return Err(Error::CertificateFailure {
                clause: "count".into(),
                detail: format!("requested {count} slopes, constructed N yields {}", fam.slopes.len()),
            });
        }
    }
    Ok(CommandResult::ok(
        family_payload(&fam, &cert, args.signed),
        family_table(&fam, &cert),
    ))
}

fn cmd_surfaces(a: &BigInt, kmax: u64) -> Result<CommandResult> {
    if !a.is_positive() {
        return Err(Error::InvalidInput(format!("A must be positive, got {a}")));
    }
    let rows = family::surface_invariants(a, kmax);
    let payload = json!({
        "A": a.to_string(),
        "invariants": rows.iter().map(|row| json!({
            "k": row.k,
            "n_k": row.n_k.to_string(),
            "D_k": row.d_k.to_string(),
        })).collect::<Vec<_>>(),
    });
    let mut table = vec![format!("A = {a}")];
    for row in &rows {
        table.push(format!("  k={} n_k={} D_k={}", row.k, row.n_k, row.d_k));
    }
    Ok(CommandResult::ok(payload, table))
}

fn cmd_distance(alpha: &str, sigma: &str) -> Result<CommandResult> {
    let a = parse_slope(alpha)?;
    let s = parse_slope(sigma)?;
    let d = a.distance(&s);
    let payload = json!({
        "alpha": slope_json(&a),
        "sigma": slope_json(&s),
        "distance": d.to_string(),
    });
    Ok(CommandResult::ok(payload, vec![format!("delta({a}, {s}) = {d}")]))
}

fn cmd_verify_example(inject_fault: bool) -> Result<CommandResult> {
    let n = BigInt::from(family::EXAMPLE_N);
    let mut fam = family::find_family(&n)?;
    if inject_fault {
        let last = fam.slopes.len() - 1;
        fam.slopes[last] = Slope::new(32, 814)?;
    }
    let expected: Vec<Slope> = family::EXAMPLE_PAIRS
        .iter()
        .map(|&(p, q)| Slope::new(BigInt::from(p), BigInt::from(q)))
        .collect::<Result<_>>()?;
    let matched = fam
        .slopes
        .iter()
        .zip(&expected)
        .filter(|(a, b)| a == b)
        .count();
    if fam.slopes != expected {
        return Err(Error::CertificateFailure {
            clause: "pairs".into(),
            detail: format!(
                "{matched}/{} pairs matched the expected family for N = {n}",
                expected.len()
            ),
        });
    }
    let cert = family::certify_family(&fam, 100)?;
    let payload = json!({
        "N": n.to_string(),
        "matched": matched,
        "expected": expected.len(),
        "pairs_ok": true,
        "certificate_ok": true,
        "kmax": cert.k_max,
        "D_1": cert.invariants[0].d_k.to_string(),
    });
    let table = vec![
        format!("N = {n}: {matched}/{} pairs matched", expected.len()),
        format!("certificate to k = {}: ok", cert.k_max),
        "pass".into(),
    ];
    Ok(CommandResult::ok(payload, table))
}

pub fn execute(command: &Command) -> Result<CommandResult> {
    match command {
        Command::Legendre { a, p, verify } => cmd_legendre(a, p, *verify),
        Command::Factor { n } => cmd_factor(n),
        Command::Forms { disc } => cmd_forms(disc),
        Command::Reduce { form } => cmd_reduce(form),
        Command::Represent(args) => cmd_represent(args),
        Command::Family(args) => cmd_family(args),
        Command::Surfaces { a, kmax } => cmd_surfaces(a, *kmax),
        Command::Distance { alpha, sigma } => cmd_distance(alpha, sigma),
        Command::VerifyExample { inject_fault } => cmd_verify_example(*inject_fault),
    }
}

/// Parse argv, run, print, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path with code 0.
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match execute(&cli.command) {
        Ok(r) => r,
        Err(err) => CommandResult::from_error(&err),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
    } else if !cli.quiet {
        for line in &result.table {
            println!("{line}");
        }
        for diag in &result.diagnostics {
            eprintln!("error: {diag}");
        }
    } else {
        for diag in &result.diagnostics {
            eprintln!("error: {diag}");
        }
    }
    result.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<CommandResult> {
        let cli = Cli::try_parse_from(std::iter::once("qfslopes").chain(args.iter().copied())).unwrap();
        execute(&cli.command)
    }

    #[test]
    fn legendre_command() {
        let r = exec(&["legendre", "3", "13"]).unwrap();
        assert_eq!(r.payload["symbol"], json!(1));
        let r = exec(&["legendre", "3", "5", "--verify"]).unwrap();
        assert_eq!(r.payload["symbol"], json!(-1));
        assert_eq!(r.payload["verified"], json!(true));
        let err = exec(&["legendre", "4", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn forms_command() {
        let r = exec(&["forms", "--disc", "-48"]).unwrap();
        assert_eq!(r.payload["class_number"], json!(2));
        assert_eq!(r.payload["forms"][0]["c"], json!("12"));
        assert!(exec(&["forms", "--disc", "-5"]).is_err());
    }

    #[test]
    fn represent_command() {
        let r = exec(&["represent", "7", "--disc", "-48", "--proper", "--check-formula"]).unwrap();
        assert_eq!(r.payload["count"], json!(4));
        assert_eq!(r.payload["formula"], json!("4"));
        assert_eq!(r.payload["agree"], json!(true));

        let r = exec(&["represent", "1983163", "--form", "3,0,4", "--proper", "--count-only"]).unwrap();
        assert_eq!(r.payload["count"], json!(64));

        let r = exec(&["represent", "7", "--form", "1,0,12", "--proper"]).unwrap();
        assert_eq!(r.payload["count"], json!(0));
    }

    #[test]
    fn family_command() {
        let r = exec(&["family", "--n", "1", "--kmax", "10"]).unwrap();
        assert_eq!(r.payload["N"], json!("28"));
        assert_eq!(r.payload["positive_count"], json!(1));
        assert_eq!(r.payload["slopes"][0]["p"], json!("4"));

        let err = exec(&["family", "--N", "30"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn family_with_explicit_primes() {
        let r = exec(&["family", "--primes", "7,13,19,31,37", "--kmax", "2"]).unwrap();
        assert_eq!(r.payload["N"], json!("7932652"));
        assert_eq!(r.payload["positive_count"], json!(16));
    }

    #[test]
    fn distance_command() {
        let r = exec(&["distance", "32/813", "200/811"]).unwrap();
        assert_eq!(r.payload["distance"], json!("136648"));
    }

    #[test]
    fn surfaces_command() {
        let r = exec(&["surfaces", "--A", "28", "--kmax", "1"]).unwrap();
        assert_eq!(r.payload["invariants"][0]["n_k"], json!("-411"));
        assert_eq!(r.payload["invariants"][0]["D_k"], json!("4729793"));
    }

    #[test]
    fn verify_example_command() {
        let r = exec(&["verify-example"]).unwrap();
        assert_eq!(r.payload["matched"], json!(16));
        assert_eq!(r.payload["certificate_ok"], json!(true));

        let err = exec(&["verify-example", "--inject-fault"]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn reduce_command() {
        let r = exec(&["reduce", "1,4,5"]).unwrap();
        assert_eq!(r.payload["reduced"], json!({"a": "1", "b": "0", "c": "1"}));
    }

    #[test]
    fn json_output_is_deterministic() {
        let a = exec(&["family", "--n", "4", "--kmax", "3"]).unwrap();
        let b = exec(&["family", "--n", "4", "--kmax", "3"]).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }
}
