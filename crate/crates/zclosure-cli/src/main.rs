//! Command-line surface for closures, witnesses, duality checks, and the
//! verification suites. Identical inputs (including seeds) produce
//! byte-identical JSON.
//!
//! Exit codes: 0 success, 1 internal failure or failing checks,
//! 2 validation error, 3 size cap exceeded.

mod checks;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zclosure::closures::{self, fast_path_applies, ClosureQuery, ClosureResult};
use zclosure::cube::ENUM_CAP;
use zclosure::witness::{self, ProductShape, SearchForm};
use zclosure::{Error, PrimeField, SymmetricSet};

pub const SCHEMA: &str = "zclosure/1";

#[derive(Parser)]
#[command(name = "zclosure", version, about = "finite-degree closures of symmetric sets of the Boolean cube")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree-d Zariski closure of a symmetric set
    Zcl(ZclArgs),
    /// Degree-d symmetric closure (polynomial time)
    Symcl(CommonArgs),
    /// Closed-form closure of a single layer
    Layer(LayerArgs),
    /// Build and verify a witness polynomial (h_i, or r_{i,j} when -j given)
    Witness(WitnessArgs),
    /// Exhaustive search for a product-form witness
    SearchWitness(SearchArgs),
    /// Run a named verification suite
    Check(CheckArgs),
    /// Scan small-n instances for zcl != symcl
    Scan(ScanArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Field characteristic (prime)
    #[arg(short)]
    p: u64,
    /// Cube dimension
    #[arg(short)]
    n: usize,
    /// Degree bound
    #[arg(short)]
    d: usize,
    /// Weight set, sorted comma-separated (empty when omitted)
    #[arg(short = 'E', default_value = "")]
    e: String,
    /// Emit JSON instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Bruteforce,
    Symcl,
}

#[derive(Args)]
struct ZclArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// auto dispatches to the poly-time path when the theorem applies
    #[arg(long, value_enum, default_value = "bruteforce")]
    method: Method,
    /// Re-run brute force and assert equality
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct LayerArgs {
    #[arg(short)]
    p: u64,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    d: usize,
    /// The layer (weight)
    #[arg(short)]
    i: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(short)]
    p: u64,
    #[arg(short)]
    n: usize,
    /// Residue anchor i (h_i), or lower weight of the pair (r_{i,j})
    #[arg(short)]
    i: u64,
    /// Upper weight j: build r_{i,j} instead of h_i
    #[arg(short)]
    j: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    /// Products of generalized monomials times a symmetric polynomial
    Gm,
    /// Products of affine forms times a symmetric polynomial (p = 2)
    Affine,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Target layer the witness must not vanish on
    #[arg(short)]
    j: usize,
    #[arg(long, value_enum)]
    form: FormArg,
}

#[derive(Args)]
struct CheckArgs {
    /// layer-theorem | main-theorem | duality | translate-lemmas |
    /// motivating-lemmas | counterexample | all
    suite: String,
    /// Seed for the sampled main-theorem instances
    #[arg(long, default_value_t = 271828)]
    seed: u64,
    /// Sample count for the sampled main-theorem instances
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Scan mode; only small-n is defined
    #[arg(long, default_value = "small-n")]
    mode: String,
    /// Largest dimension to scan
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Primes to scan
    #[arg(short, default_values_t = [2u64, 3])]
    p: Vec<u64>,
    /// Only enumerate E within [d, n-d] (the regime of the equality theorem)
    #[arg(long)]
    restrict_range: bool,
    #[arg(long)]
    json: bool,
}

/// Enumeration cap: ZCLOSURE_CAP_N can lower it; 24 is a hard limit.
fn effective_cap() -> usize {
    std::env::var("ZCLOSURE_CAP_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map_or(ENUM_CAP, |v| v.min(ENUM_CAP))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCapExceeded { .. } => 3,
        _ => 2,
    }
}

#[derive(Serialize)]
struct ClosureOutput {
    schema: &'static str,
    p: u64,
    n: usize,
    d: usize,
    #[serde(rename = "E")]
    e: SymmetricSet,
    closure: SymmetricSet,
    method: &'static str,
    hilbert_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyOutput>,
}

#[derive(Serialize)]
struct VerifyOutput {
    matches: bool,
    bruteforce: SymmetricSet,
}

fn print_closure(out: &ClosureOutput, json: bool) {
    if json {
        println!("{}", serde_json::to_string(out).expect("serializable"));
    } else {
        println!(
            "closure of {{{}}} at degree {} over F_{} in dimension {}: {{{}}}  [{}{}]",
            out.e,
            out.d,
            out.p,
            out.n,
            out.closure,
            out.method,
            out.hilbert_dim
                .map_or(String::new(), |h| format!(", hilbert_dim {h}")),
        );
        if let Some(v) = &out.verify {
            println!(
                "verify: bruteforce {{{}}} {}",
                v.bruteforce,
                if v.matches { "matches" } else { "DIFFERS" }
            );
        }
    }
}

fn build_query(common: &CommonArgs) -> Result<ClosureQuery, Error> {
    let field = PrimeField::new(common.p)?;
    let e = SymmetricSet::parse(common.n, &common.e)?;
    let q = ClosureQuery::new(field, common.n, common.d, e)?;
    if q.clamped {
        eprintln!(
            "warning: degree {} clamped to n = {} (higher degrees are meaningless on the cube)",
            common.d, common.n
        );
    }
    Ok(q)
}

fn cap_check(n: usize) -> Result<(), Error> {
    let cap = effective_cap();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    Ok(())
}

fn run_zcl(args: &ZclArgs) -> Result<i32, Error> {
    let q = build_query(&args.common)?;
    let result: ClosureResult = match args.method {
        Method::Bruteforce => {
            cap_check(q.n)?;
            closures::zcl_bruteforce(&q)?
        }
        Method::Symcl => closures::symcl(&q)?,
        Method::Auto => {
            if fast_path_applies(&q) {
                closures::zcl_fast(&q)?
            } else {
                cap_check(q.n)?;
                closures::zcl_bruteforce(&q)?
            }
        }
    };
    let verify = if args.verify {
        cap_check(q.n)?;
        let brute = closures::zcl_bruteforce(&q)?;
        Some(VerifyOutput {
            matches: brute.closure == result.closure,
            bruteforce: brute.closure,
        })
    } else {
        None
    };
    let ok = verify.as_ref().map_or(true, |v| v.matches);
    let out = ClosureOutput {
        schema: SCHEMA,
        p: args.common.p,
        n: q.n,
        d: q.d,
        e: q.e.clone(),
        closure: result.closure,
        method: result.method.as_str(),
        hilbert_dim: result.hilbert_dim,
        verify,
    };
    print_closure(&out, args.common.json);
    if !ok {
        eprintln!("internal error: verified closure differs from the computed one");
        return Ok(1);
    }
    Ok(0)
}

fn run_symcl(common: &CommonArgs) -> Result<i32, Error> {
    let q = build_query(common)?;
    let result = closures::symcl(&q)?;
    let out = ClosureOutput {
        schema: SCHEMA,
        p: common.p,
        n: q.n,
        d: q.d,
        e: q.e.clone(),
        closure: result.closure,
        method: result.method.as_str(),
        hilbert_dim: result.hilbert_dim,
        verify: None,
    };
    print_closure(&out, common.json);
    Ok(0)
}

fn run_layer(args: &LayerArgs) -> Result<i32, Error> {
    let field = PrimeField::new(args.p)?;
    let e = SymmetricSet::new(args.n, [args.i])?;
    let q = ClosureQuery::new(field, args.n, args.d, e)?;
    let result = closures::layer_zcl(&q)?;
    let out = ClosureOutput {
        schema: SCHEMA,
        p: args.p,
        n: q.n,
        d: q.d,
        e: q.e.clone(),
        closure: result.closure,
        method: result.method.as_str(),
        hilbert_dim: None,
        verify: None,
    };
    print_closure(&out, args.json);
    Ok(0)
}

#[derive(Serialize)]
struct WitnessOutput {
    schema: &'static str,
    p: u64,
    #[serde(flatten)]
    report: serde_json::Value,
}

fn run_witness(args: &WitnessArgs) -> Result<i32, Error> {
    let field = PrimeField::new(args.p)?;
    let report = match args.j {
        Some(j) => witness::r_report(field, args.n, args.i, j)?,
        None => witness::h_report(field, args.n, args.i)?,
    };
    if args.json {
        let out = WitnessOutput {
            schema: SCHEMA,
            p: args.p,
            report: serde_json::to_value(&report).expect("serializable"),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!(
            "{} witness over F_{}, n = {}: degree {:?} (claimed <= {}), verified: {}",
            report.form.as_str(),
            args.p,
            args.n,
            report.polynomial.degree(),
            report.claimed_degree,
            report.verified
        );
    }
    Ok(if report.verified { 0 } else { 1 })
}

#[derive(Serialize)]
struct SearchOutput {
    schema: &'static str,
    p: u64,
    n: usize,
    d: usize,
    #[serde(rename = "E")]
    e: SymmetricSet,
    j: usize,
    form: &'static str,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shape: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cofactor: Option<serde_json::Value>,
}

fn mask_string(mask: u32, n: usize) -> String {
    format!("{:0width$b}", mask, width = n.max(1))
}

fn run_search(args: &SearchArgs) -> Result<i32, Error> {
    let field = PrimeField::new(args.common.p)?;
    let e = SymmetricSet::parse(args.common.n, &args.common.e)?;
    let form = match args.form {
        FormArg::Gm => SearchForm::GmTimesSymmetric,
        FormArg::Affine => SearchForm::AffineTimesSymmetric,
    };
    let hit =
        witness::search_product_witness(field, args.common.n, args.common.d, &e, args.j, form)?;
    let form_str = match form {
        SearchForm::GmTimesSymmetric => "gm-times-symmetric",
        SearchForm::AffineTimesSymmetric => "affine-times-symmetric",
    };
    let (witness_json, shape_json, cofactor_json) = match &hit {
        None => (None, None, None),
        Some(w) => {
            let shape = match &w.shape {
                ProductShape::Gm(gm) => serde_json::json!({
                    "s": mask_string(gm.s_mask, args.common.n),
                    "t": mask_string(gm.t_mask, args.common.n),
                }),
                ProductShape::Affine(factors) => serde_json::json!(factors
                    .iter()
                    .map(|f| serde_json::json!({
                        "constant": f.constant,
                        "variables": mask_string(f.mask, args.common.n),
                    }))
                    .collect::<Vec<_>>()),
            };
            (
                Some(serde_json::to_value(&w.report).expect("serializable")),
                Some(shape),
                Some(serde_json::to_value(&w.cofactor).expect("serializable")),
            )
        }
    };
    if args.common.json {
        let out = SearchOutput {
            schema: SCHEMA,
            p: args.common.p,
            n: args.common.n,
            d: args.common.d,
            e,
            j: args.j,
            form: form_str,
            found: hit.is_some(),
            witness: witness_json,
            shape: shape_json,
            cofactor: cofactor_json,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        match &hit {
            None => println!(
                "no {form_str} witness of degree <= {} separating layer {} from {{{}}}",
                args.common.d, args.j, e
            ),
            Some(w) => println!(
                "found {form_str} witness of degree {:?} separating layer {} from {{{}}} (verified: {})",
                w.report.polynomial.degree(),
                args.j,
                e,
                w.report.verified
            ),
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ScanViolation {
    p: u64,
    n: usize,
    d: usize,
    #[serde(rename = "E")]
    e: SymmetricSet,
    zcl: SymmetricSet,
    symcl: SymmetricSet,
    within_main_range: bool,
}

#[derive(Serialize)]
struct ScanOutput {
    schema: &'static str,
    mode: &'static str,
    max_n: usize,
    primes: Vec<u64>,
    restrict_range: bool,
    checked: u64,
    violations: Vec<ScanViolation>,
}

/// Enumerates instances below the equality theorem's dimension threshold
/// (`n < 4p^l - 1`) and reports every disagreement between the two
/// closures. The theorem also needs E inside [d, n-d]; scans without
/// --restrict-range cover all symmetric sets and tag each violation with
/// whether it falls in that regime.
fn run_scan(args: &ScanArgs) -> Result<i32, Error> {
    if args.mode != "small-n" {
        return Err(Error::InvalidParameter(format!(
            "unknown scan mode '{}'",
            args.mode
        )));
    }
    cap_check(args.max_n)?;
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for &p in &args.p {
        let field = PrimeField::new(p)?;
        for n in 1..=args.max_n {
            for d in 0..=n {
                let l = zclosure::ell_p(d as u64, &field);
                let bound = field.p().saturating_pow(l).saturating_mul(4) - 1;
                if n as u64 >= bound {
                    continue; // the theorem covers this instance
                }
                let (lo, hi) = if args.restrict_range {
                    if d + d > n {
                        continue;
                    }
                    (d, n - d)
                } else {
                    (0, n)
                };
                let width = hi - lo + 1;
                for bits in 0u64..(1 << width) {
                    let e = SymmetricSet::new(
                        n,
                        (0..width).filter(|&t| bits >> t & 1 == 1).map(|t| lo + t),
                    )?;
                    let q = ClosureQuery::new(field, n, d, e.clone())?;
                    let z = closures::zcl_bruteforce(&q)?.closure;
                    let s = closures::symcl(&q)?.closure;
                    checked += 1;
                    if z != s {
                        let within =
                            d + d <= n && e.weights().all(|w| d <= w && w <= n - d);
                        violations.push(ScanViolation {
                            p,
                            n,
                            d,
                            e,
                            zcl: z,
                            symcl: s,
                            within_main_range: within,
                        });
                    }
                }
            }
        }
    }
    let out = ScanOutput {
        schema: SCHEMA,
        mode: "small-n",
        max_n: args.max_n,
        primes: args.p.clone(),
        restrict_range: args.restrict_range,
        checked,
        violations,
    };
    if args.json {
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!(
            "scanned {} instances (n <= {}, p in {:?}); {} with zcl != symcl",
            out.checked,
            out.max_n,
            out.primes,
            out.violations.len()
        );
        for v in &out.violations {
            println!(
                "  p={} n={} d={} E={{{}}}: zcl={{{}}} symcl={{{}}}{}",
                v.p,
                v.n,
                v.d,
                v.e,
                v.zcl,
                v.symcl,
                if v.within_main_range {
                    "  [within [d, n-d]]"
                } else {
                    ""
                }
            );
        }
    }
    Ok(0)
}

fn run_check(args: &CheckArgs) -> Result<i32, Error> {
    let lines = match args.suite.as_str() {
        "layer-theorem" => checks::layer_theorem()?,
        "main-theorem" => checks::main_theorem(args.seed, args.samples)?,
        "duality" => checks::duality()?,
        "translate-lemmas" => checks::translate_lemmas()?,
        "motivating-lemmas" => checks::motivating_lemmas()?,
        "counterexample" => checks::counterexample()?,
        "all" => {
            let mut all = checks::layer_theorem()?;
            all.extend(checks::main_theorem(args.seed, args.samples)?);
            all.extend(checks::duality()?);
            all.extend(checks::translate_lemmas()?);
            all.extend(checks::motivating_lemmas()?);
            all.extend(checks::counterexample()?);
            all
        }
        other => {
            return Err(Error::InvalidParameter(format!("unknown suite '{other}'")))
        }
    };
    let all_pass = lines.iter().all(|l| l.pass);
    if args.json {
        let out = serde_json::json!({
            "schema": SCHEMA,
            "suite": args.suite,
            "seed": args.seed,
            "results": lines,
            "pass": all_pass,
        });
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        for l in &lines {
            println!(
                "{} {:<44} {}",
                if l.pass { "PASS" } else { "FAIL" },
                l.name,
                l.detail
            );
        }
        println!(
            "{}: {}/{} checks passed (seed {})",
            args.suite,
            lines.iter().filter(|l| l.pass).count(),
            lines.len(),
            args.seed
        );
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn main() {
    // die quietly when the consumer closes the pipe (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Zcl(a) => run_zcl(a),
        Cmd::Symcl(a) => run_symcl(a),
        Cmd::Layer(a) => run_layer(a),
        Cmd::Witness(a) => run_witness(a),
        Cmd::SearchWitness(a) => run_search(a),
        Cmd::Check(a) => run_check(a),
        Cmd::Scan(a) => run_scan(a),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}
