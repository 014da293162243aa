//! `zerocen` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a computed result fails
//! its verification, 2 on usage, input or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zerocen::centralizer::{self, MatrixSpace, DEFAULT_MAX_DIM};
use zerocen::jordan::{fitting_decomposition, jordan_base, rank_partition};
use zerocen::ncpoly::NCPoly;
use zerocen::pi::{self, FactoredPoly, PiLimits, PiReport, DEFAULT_BUDGET};
use zerocen::structured::{self, membership, BlockProfile, ModelSet};
use zerocen::text::{parse_matrix, parse_poly_matrix};
use zerocen::verify::{self, Suite, VerifyConfig};
use zerocen::{ExactMatrix, FieldSpec};

const SCHEMA: &str = "zerocen.cli/1";

#[derive(Parser, Debug)]
#[command(
    name = "zerocen",
    version,
    about = "Exact centralizers, zero-level centralizers and their polynomial identities"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Field for all input (`Q`, `Fp5`, `GF(5)`); overrides field lines in files.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Total random trials per suite (`verify`).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Size bound for centralizer systems; in `verify`, the largest size or profile total.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration budget for identity checks.
    #[arg(long, global = true)]
    budget: Option<u128>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nilpotent Jordan base of a matrix.
    Jordan { matrix: PathBuf },
    /// Fitting decomposition of a matrix.
    Fitting { matrix: PathBuf },
    /// Centralizer Cen(A).
    Cen {
        matrix: PathBuf,
        /// Print the basis matrices.
        #[arg(long)]
        basis: bool,
    },
    /// Zero-level centralizer Cen0(A) and the dimension formula.
    Cen0 {
        matrix: PathBuf,
        #[arg(long)]
        basis: bool,
    },
    /// Span of the levels UA, U in Cen(A).
    Lcen {
        matrix: PathBuf,
        #[arg(long)]
        basis: bool,
    },
    /// Compare Cen0(A) and Cen0(B) directly and through kernels and images.
    Contain { a: PathBuf, b: PathBuf },
    /// Matrix of the endomorphism attached to a polynomial matrix in N(X).
    Lambda { poly_matrix: PathBuf },
    /// Model dimensions and quotient patterns of a block profile.
    Dims {
        #[arg(required = true, num_args = 1..)]
        profile: Vec<usize>,
    },
    /// Product identities on Cen0(A) and Cen(A)/Cen0(A).
    PiCheck(PiCheckArgs),
    /// Run the seeded verification suites.
    Verify {
        /// Comma-separated suites (default: all).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Directory for witness files of failing trials.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PiCheckArgs {
    /// Nilpotent matrix; alternatively use --profile.
    #[arg(required_unless_present = "profile")]
    matrix: Option<PathBuf>,
    /// Use the canonical nilpotent matrix of this profile.
    #[arg(long, num_args = 1.., conflicts_with = "matrix")]
    profile: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Level::Both)]
    level: Level,
    /// Factor identity by library name (`comm`, `comm2`, `s4`, `s4*comm`, ...).
    /// Give one to use it for every factor, or one per factor.
    #[arg(long = "identity", conflicts_with = "poly")]
    identities: Vec<String>,
    /// File holding a polynomial such as `+ 1 * x1 x2 - 1 * x2 x1`, used for every factor.
    #[arg(long)]
    poly: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Zero,
    Quotient,
    Both,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: zerocen::Error| e.to_string())
}

type CmdResult = Result<Outcome, String>;

struct Outcome {
    verified: bool,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    match run(&cli.command, g) {
        Ok(out) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, g: &Global) -> CmdResult {
    match cmd {
        Command::Jordan { matrix } => cmd_jordan(&read_matrix(matrix, g)?),
        Command::Fitting { matrix } => cmd_fitting(&read_matrix(matrix, g)?),
        Command::Cen { matrix, basis } => cmd_space(Space::Cen, &read_matrix(matrix, g)?, *basis, g),
        Command::Cen0 { matrix, basis } => cmd_space(Space::Cen0, &read_matrix(matrix, g)?, *basis, g),
        Command::Lcen { matrix, basis } => cmd_space(Space::Lcen, &read_matrix(matrix, g)?, *basis, g),
        Command::Contain { a, b } => cmd_contain(&read_matrix(a, g)?, &read_matrix(b, g)?, g),
        Command::Lambda { poly_matrix } => cmd_lambda(poly_matrix, g),
        Command::Dims { profile } => cmd_dims(profile, g),
        Command::PiCheck(args) => cmd_pi(args, g),
        Command::Verify { suite, witness_dir } => cmd_verify(suite, witness_dir.as_deref(), g),
    }
}

fn err(e: zerocen::Error) -> String {
    e.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path, g: &Global) -> Result<ExactMatrix, String> {
    parse_matrix(&read(path)?, g.field).map_err(|e| format!("{}: {e}", path.display()))
}

fn max_dim(g: &Global) -> usize {
    g.max_dim.unwrap_or(DEFAULT_MAX_DIM)
}

fn envelope(command: &str, field: FieldSpec, verified: bool, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command, "field": field.to_string(), "verified": verified });
    if let (Some(obj), Value::Object(extra)) = (v.as_object_mut(), body) {
        obj.extend(extra);
    }
    v
}

fn rows(m: &ExactMatrix) -> Value {
    json!(m.to_string_rows())
}

fn matrix_text(m: &ExactMatrix) -> String {
    m.to_string_rows().iter().map(|r| format!("  {}\n", r.join(" "))).collect()
}

fn verified_line(ok: bool) -> String {
    format!("verified: {}\n", if ok { "yes" } else { "NO" })
}

fn cmd_jordan(a: &ExactMatrix) -> CmdResult {
    let base = jordan_base(a).map_err(err)?;
    let ok = base.satisfies_chain_property(a) && base.block_sizes() == rank_partition(a).map_err(err)?.as_slice();
    let text = format!(
        "block sizes: {:?}\nnilpotency index: {}\nbase change (columns x_(g,i)):\n{}{}",
        base.block_sizes(),
        base.nilpotency_index(),
        matrix_text(base.base_change()),
        verified_line(ok)
    );
    Ok(Outcome { verified: ok, json: envelope("jordan", a.field(), ok, base.to_json()), text })
}

fn cmd_fitting(a: &ExactMatrix) -> CmdResult {
    let fd = fitting_decomposition(a).map_err(err)?;
    let ok = fd.verify(a).map_err(err)?;
    let body = json!({
        "t": fd.t,
        "dim_v": fd.v.dim(),
        "dim_w": fd.w.dim(),
        "dim_w1": fd.w1.dim(),
        "dim_w2": fd.w2.dim(),
        "nilpotent_blocks": fd.jordan.block_sizes(),
        "cen0_dim": fd.cen0_dim(),
        "v_basis": rows(fd.v.basis()),
        "w_basis": rows(fd.w.basis()),
    });
    let text = format!(
        "t = {}\ndim V = {}, dim W = {} (W1 {}, W2 {})\nblocks of A on W: {:?}\ndim T = dim W1 * dim ker A = {}\n{}",
        fd.t,
        fd.v.dim(),
        fd.w.dim(),
        fd.w1.dim(),
        fd.w2.dim(),
        fd.jordan.block_sizes(),
        fd.cen0_dim(),
        verified_line(ok)
    );
    Ok(Outcome { verified: ok, json: envelope("fitting", a.field(), ok, body), text })
}

#[derive(Clone, Copy)]
enum Space {
    Cen,
    Cen0,
    Lcen,
}

fn cmd_space(which: Space, a: &ExactMatrix, show_basis: bool, g: &Global) -> CmdResult {
    let md = max_dim(g);
    let commutes = |x: &ExactMatrix| x * a == a * x;
    let basis_ok = |s: &MatrixSpace, f: &dyn Fn(&ExactMatrix) -> bool| s.basis().iter().all(f);
    let (name, space, ok, mut body, extra) = match which {
        Space::Cen => {
            let s = centralizer::cen_basis(a, md).map_err(err)?;
            let ok = basis_ok(&s, &commutes);
            ("cen", s, ok, json!({}), String::new())
        }
        Space::Cen0 => {
            let r = centralizer::check_dim_formula(a, md).map_err(err)?;
            let s = centralizer::cen0_basis(a, md).map_err(err)?;
            let ok = r.ok && basis_ok(&s, &|x| (x * a).is_zero() && (a * x).is_zero());
            let text = format!("(dim ker A)^2 = {}\nformula holds: {}\n", r.rhs, r.ok);
            ("cen0", s, ok, json!({ "kernel_dim_squared": r.rhs, "formula_ok": r.ok }), text)
        }
        Space::Lcen => {
            let cb = centralizer::CentralizerBasis::compute(a, md).map_err(err)?;
            let ok = cb.lcen.dim() + cb.cen0.dim() == cb.cen.dim() && basis_ok(&cb.lcen, &commutes);
            let failures = cb.lcen_closure_failures();
            let text = format!(
                "dim Cen - dim Cen0 = {} - {}\nbasis products leaving LCen: {failures}\n",
                cb.cen.dim(),
                cb.cen0.dim()
            );
            let body = json!({ "dim_cen": cb.cen.dim(), "dim_cen0": cb.cen0.dim(), "closure_failures": failures });
            ("lcen", cb.lcen, ok, body, text)
        }
    };
    body["dim"] = json!(space.dim());
    if show_basis {
        body["basis"] = json!(space.basis().iter().map(rows).collect::<Vec<_>>());
    }
    let mut text = format!("dim {name}(A) = {}\n{extra}", space.dim());
    if show_basis {
        for (i, b) in space.basis().iter().enumerate() {
            text.push_str(&format!("basis[{}]:\n{}", i + 1, matrix_text(b)));
        }
    }
    text.push_str(&verified_line(ok));
    Ok(Outcome { verified: ok, json: envelope(name, a.field(), ok, body), text })
}

fn cmd_contain(a: &ExactMatrix, b: &ExactMatrix, g: &Global) -> CmdResult {
    let md = max_dim(g);
    let c = centralizer::cen0_containment(a, b, md).map_err(err)?;
    let d = centralizer::double_zero_centralizer_check(a, b, md).map_err(err)?;
    let ok = d.equivalent && c.direct == c.criterion && c.direct == d.cond1;
    let mut body = d.to_json();
    body["direct"] = json!(c.direct);
    body["criterion"] = json!(c.criterion);
    let text = format!(
        "Cen0(A) <= Cen0(B): {}\nker A <= ker B and ker A^T <= ker B^T: {}\nim B <= im A and im B^T <= im A^T: {}\nker A <= ker B and im B <= im A: {}\n{}",
        d.cond1,
        d.cond2,
        d.cond3,
        c.criterion,
        verified_line(ok)
    );
    Ok(Outcome { verified: ok, json: envelope("contain", a.field(), ok, body), text })
}

fn cmd_lambda(path: &Path, g: &Global) -> CmdResult {
    let (profile, p) = parse_poly_matrix(&read(path)?, FieldSpec::Rationals, g.field)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let base = profile.canonical_base();
    let m = structured::lambda_map(&p, &base).map_err(err)?;
    let a = profile.canonical_nilpotent();
    let commutes = &m * &a == &a * &m;
    let in_n0 = membership(&p, &profile, ModelSet::N0);
    let annihilates = (&m * &a).is_zero() && (&a * &m).is_zero();
    let ok = commutes && (!in_n0 || annihilates);
    let body = json!({
        "profile": profile.k(),
        "matrix": rows(&m),
        "commutes": commutes,
        "in_n0": in_n0,
        "annihilates": annihilates,
    });
    let text = format!(
        "profile {profile}\nmatrix (canonical basis x_(g,i)):\n{}commutes with A: {commutes}\nP in N0: {in_n0}\nannihilates A on both sides: {annihilates}\n{}",
        matrix_text(&m),
        verified_line(ok)
    );
    Ok(Outcome { verified: ok, json: envelope("lambda", profile.field(), ok, body), text })
}

fn one_based(ps: &structured::PositionSet) -> Vec<(usize, usize)> {
    ps.positions.iter().map(|&(d, g)| (d + 1, g + 1)).collect()
}

fn cmd_dims(k: &[usize], g: &Global) -> CmdResult {
    let field = g.field.unwrap_or(FieldSpec::Rationals);
    let profile = BlockProfile::new(field, k.to_vec()).map_err(err)?;
    let dims = structured::model_dims(&profile);
    let (w, u0) = (structured::w_space(&profile), structured::u0_space(&profile));
    let a = profile.canonical_nilpotent();
    let md = max_dim(g);
    // Cross-check against the centralizers of the canonical matrix when small enough.
    let checked = if profile.total() <= md {
        let cen = centralizer::cen_basis(&a, md).map_err(err)?.dim();
        let cen0 = centralizer::cen0_basis(&a, md).map_err(err)?.dim();
        Some(cen == dims.n_mod_i && cen0 == dims.n0_mod_i)
    } else {
        None
    };
    let ok = checked.unwrap_or(true);
    let body = json!({
        "profile": profile.k(),
        "n": profile.n(),
        "dim_n_mod_i": dims.n_mod_i,
        "dim_n0_mod_i": dims.n0_mod_i,
        "dim_n_mod_n0": dims.n_mod_n0,
        "w_positions": one_based(&w),
        "w_dim": w.dim(),
        "u0_positions": one_based(&u0),
        "u0_dim": u0.dim(),
        "checked_against_centralizers": checked,
    });
    let text = format!(
        "profile {profile} (n = {})\ndim N/I = {}\ndim N0/I = {}\ndim N/N0 = {}\nW positions {:?} (dim {})\nU0 positions {:?} (dim {})\n{}",
        profile.n(),
        dims.n_mod_i,
        dims.n0_mod_i,
        dims.n_mod_n0,
        one_based(&w),
        w.dim(),
        one_based(&u0),
        u0.dim(),
        match checked {
            Some(ok) => verified_line(ok),
            None => "verified: skipped (profile total above --max-dim)\n".to_string(),
        }
    );
    Ok(Outcome { verified: ok, json: envelope("dims", field, ok, body), text })
}

fn pi_factors(args: &PiCheckArgs, field: FieldSpec, count: usize) -> Result<Option<Vec<FactoredPoly>>, String> {
    let single = if let Some(path) = &args.poly {
        let p = NCPoly::parse(field, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
        vec![FactoredPoly::from_poly(p)]
    } else if args.identities.is_empty() {
        return Ok(None);
    } else {
        args.identities.iter().map(|n| pi::library(field, n)).collect::<Result<_, _>>().map_err(err)?
    };
    match single.len() {
        1 => Ok(Some(vec![single[0].clone(); count])),
        n if n == count => Ok(Some(single)),
        n => Err(format!("{n} identities given, the check needs {count}")),
    }
}

fn pi_text(r: &PiReport) -> String {
    let status = match &r.outcome {
        pi::PiOutcome::Holds => "product vanishes".to_string(),
        pi::PiOutcome::PreconditionFailed { index, .. } => {
            format!("factor {} is not an identity of {}", index + 1, r.precondition_algebra)
        }
        pi::PiOutcome::ProductFails { .. } => format!("product does not vanish on {}", r.target),
    };
    format!(
        "{} (dim {}) <- [{}] checked on {} (dim {}): {status}\n",
        r.target,
        r.target_dim,
        r.factors.join(", "),
        r.precondition_algebra,
        r.precondition_dim
    )
}

fn cmd_pi(args: &PiCheckArgs, g: &Global) -> CmdResult {
    let a = match &args.matrix {
        Some(path) => read_matrix(path, g)?,
        None => BlockProfile::new(g.field.unwrap_or(FieldSpec::Prime(2)), args.profile.clone())
            .map_err(err)?
            .canonical_nilpotent(),
    };
    let limits = PiLimits { budget: g.budget.unwrap_or(DEFAULT_BUDGET), max_dim: max_dim(g) };
    let n = jordan_base(&a).map_err(err)?.nilpotency_index();
    let mut reports = Vec::new();
    let mut skipped = None;
    if args.level != Level::Quotient {
        reports.push(match pi_factors(args, a.field(), n)? {
            Some(fs) => pi::zero_level_check(&a, &fs, limits),
            None => pi::auto_zero_level_check(&a, limits),
        });
    }
    if args.level != Level::Zero {
        let r = if n == 1 {
            pi::auto_quotient_check(&a, limits)
        } else {
            match pi_factors(args, a.field(), n - 1)? {
                Some(fs) => pi::quotient_check(&a, &fs, limits),
                None => pi::auto_quotient_check(&a, limits),
            }
        };
        // Under --level both an empty quotient product is reported, not an input error.
        match (r, args.level) {
            (Err(e @ zerocen::Error::IllPosed(_)), Level::Both) => skipped = Some(e.to_string()),
            (r, _) => reports.push(r),
        }
    }
    finish_pi(&a, n, reports, skipped)
}

fn finish_pi(a: &ExactMatrix, n: usize, reports: Vec<zerocen::Result<PiReport>>, skipped: Option<String>) -> CmdResult {
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>().map_err(err)?;
    let ok = reports.iter().all(PiReport::holds);
    let mut text = format!("nilpotency index {n}\n");
    for r in &reports {
        text.push_str(&pi_text(r));
    }
    if let Some(reason) = &skipped {
        text.push_str(&format!("quotient check skipped: {reason}\n"));
    }
    text.push_str(&verified_line(ok));
    let mut body = json!({ "n": n, "checks": reports.iter().map(PiReport::to_json).collect::<Vec<_>>() });
    if let Some(reason) = skipped {
        body["quotient_skipped"] = json!(reason);
    }
    Ok(Outcome { verified: ok, json: envelope("pi-check", a.field(), ok, body), text })
}

fn cmd_verify(names: &[String], witness_dir: Option<&Path>, g: &Global) -> CmdResult {
    let suites = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse::<Suite>()).collect::<Result<_, _>>().map_err(err)?
    };
    let cfg = VerifyConfig {
        seed: g.seed,
        suites,
        trials: g.trials,
        max_dim: g.max_dim,
        field: g.field,
        budget: g.budget.unwrap_or(DEFAULT_BUDGET),
    };
    let report = verify::run(&cfg);
    let mut text = String::new();
    for s in &report.suites {
        let status = if s.failed == 0 { "pass" } else { "FAIL" };
        text.push_str(&format!(
            "{status} {:<11} {}/{} passed, {} failed, {} skipped\n",
            s.suite, s.passed, s.trials, s.failed, s.skipped
        ));
        for f in s.failures.iter().take(5) {
            text.push_str(&format!("     trial {} [{}]: {}\n", f.trial, f.cell, f.detail));
        }
    }
    let files = report.witness_files();
    if let Some(dir) = witness_dir.filter(|_| !files.is_empty()) {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for (name, body) in &files {
            let path = dir.join(name);
            fs::write(&path, serde_json::to_string_pretty(body).expect("serializable"))
                .map_err(|e| format!("{}: {e}", path.display()))?;
        }
        text.push_str(&format!("wrote {} witness files to {}\n", files.len(), dir.display()));
    }
    Ok(Outcome { verified: report.passed(), json: report.to_json(), text })
}
