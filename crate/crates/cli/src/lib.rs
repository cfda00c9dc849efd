//! Command-line front end for `ebeta`. [`run`] does all the work and returns
//! the text and exit code, so tests can drive it without spawning a process.

pub mod report;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ebeta::codings::{count_codings, enumerate_codings, eval_coding, is_unique, lambda_sample};
use ebeta::embedding::{
    branch_classify, check_asymmetry, classify_generating, not_totally_self_similar_witness,
    overlap_gap_bound, overlap_levels, verify_overlap_identity, BranchCase, CandidateMap,
    ClassifyResult, RefutationKind, DEFAULT_CLASSIFY_DEPTH,
};
use ebeta::geometry::{delta_level, holes, level_maps};
use ebeta::membership::{decide_membership, Membership, DEFAULT_MAX_DEPTH};
use ebeta::spectrum::{spectrum_search, verify_claim_induction, ClaimCheck};
use ebeta::symbolic::poly::{default_tolerance, perron_dominant, spectral_radius};
use ebeta::symbolic::{dimension, measure_upper_bound};
use ebeta::{parse_rat, CodingCount, EPCoding, Rat, RatBeta, TransitionMatrix};
use num_traits::{FromPrimitive, One, Signed};
use serde_json::{json, Value};

use crate::report::{enclosure, interval, rat, Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest level accepted by the geometry commands.
pub const MAX_LEVEL: usize = 12;
/// Largest vector length accepted by `spectrum`.
pub const MAX_SPECTRUM_LEN: usize = 14;
/// Largest depth accepted by `codings enumerate`; continua of codings grow
/// like the Fibonacci numbers in the depth.
pub const MAX_ENUMERATION_DEPTH: usize = 24;

#[derive(Debug, Parser)]
#[command(
    name = "ebeta",
    version,
    about = "Exact checks on the set E generated by x/b, (x+1)/b, (x+b+1)/b"
)]
pub struct Cli {
    /// Add the current Unix time to the report.
    #[arg(long, global = true)]
    pub timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomials, spectral radii, dimensions and cover bounds.
    Dims {
        #[arg(long)]
        beta: String,
        /// Width of the radius brackets, as p/q or a decimal.
        #[arg(long)]
        tol: Option<String>,
        /// Cover bounds are reported for levels 1..=level.
        #[arg(long, default_value_t = 8)]
        level: usize,
    },
    #[command(subcommand)]
    Codings(CodingsCmd),
    #[command(subcommand)]
    Geometry(GeometryCmd),
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Minimum nonzero |Σ d_i β^i| over difference digits.
    Spectrum {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        max_len: usize,
    },
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum CodingsCmd {
    /// Number of codings, as 2^m or "continuum".
    Count {
        #[arg(long)]
        coding: String,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Prefixes of all codings of the same point.
    Enumerate {
        #[arg(long)]
        coding: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Exact value of a coding.
    Eval {
        #[arg(long)]
        coding: String,
        #[arg(long)]
        beta: String,
    },
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long)]
    pub beta: String,
    #[arg(long)]
    pub level: usize,
}

#[derive(Debug, Subcommand)]
pub enum GeometryCmd {
    /// The intervals of Δ_n.
    Levels(LevelArgs),
    /// The gaps of Δ_n.
    Holes(LevelArgs),
    /// Levels 0..=n as an SVG picture; printed unless --out is given.
    Svg {
        #[command(flatten)]
        args: LevelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EmbedCmd {
    /// Decide whether x ↦ μx + b is a generating composition.
    Classify {
        #[arg(long)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_DEPTH)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run every structural check at one base.
    All {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 8)]
        level: usize,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

type CmdResult<T> = std::result::Result<T, String>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let timestamp = cli.timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let result = match cli.command {
        Command::Dims { beta, tol, level } => cmd_dims(&beta, tol.as_deref(), level),
        Command::Codings(c) => cmd_codings(c),
        Command::Geometry(GeometryCmd::Svg { args, out }) => {
            return cmd_svg(&args, out, timestamp);
        }
        Command::Geometry(g) => cmd_geometry(g),
        Command::Embed(EmbedCmd::Classify { beta, mu, b, depth }) => {
            cmd_classify(&beta, &mu, &b, depth)
        }
        Command::Spectrum { beta, max_len } => cmd_spectrum(&beta, max_len),
        Command::Verify(VerifyCmd::All { beta, level }) => cmd_verify(&beta, level),
    };
    match result {
        Ok(r) => Outcome {
            code: if r.status == Status::Fail {
                EXIT_FAIL
            } else {
                EXIT_OK
            },
            stdout: r.render(timestamp),
            stderr: String::new(),
        },
        Err(msg) => Outcome::usage(msg),
    }
}

fn parse_beta(s: &str) -> CmdResult<RatBeta> {
    let v = parse_rat(s).map_err(|e| e.to_string())?;
    RatBeta::new(v).map_err(|e| e.to_string())
}

fn parse_coding(s: &str) -> CmdResult<EPCoding> {
    s.parse().map_err(|e: ebeta::Error| e.to_string())
}

fn parse_tol(s: &str) -> CmdResult<Rat> {
    let t = match parse_rat(s) {
        Ok(t) => t,
        Err(_) => s
            .parse::<f64>()
            .ok()
            .and_then(Rat::from_f64)
            .ok_or_else(|| format!("cannot read tolerance {s:?}"))?,
    };
    if !t.is_positive() {
        return Err(format!("tolerance must be positive, got {s:?}"));
    }
    Ok(t)
}

fn check_level(level: usize) -> CmdResult<()> {
    if level > MAX_LEVEL {
        return Err(format!("level {level} exceeds the limit {MAX_LEVEL}"));
    }
    Ok(())
}

fn count_json(c: CodingCount) -> Value {
    json!(c.to_string())
}

pub fn cmd_dims(beta: &str, tol: Option<&str>, level: usize) -> CmdResult<Report> {
    let beta = parse_beta(beta)?;
    let tol = tol
        .map(parse_tol)
        .transpose()?
        .unwrap_or_else(default_tolerance);
    let mut r = Report::new("dims", Some(beta.value()));
    for (name, m) in [
        ("a", TransitionMatrix::matrix_a()),
        ("b", TransitionMatrix::matrix_b()),
    ] {
        let p = m.char_poly();
        let radius = spectral_radius(&p, &tol).map_err(|e| e.to_string())?;
        let dim = dimension(&radius.enclosure(), &beta);
        r.set(&format!("char_poly_{name}"), json!(p.to_string()));
        r.set(
            &format!("radius_{name}"),
            json!({
                "enclosure": enclosure(&radius.enclosure()),
                "bracket": [rat(&radius.lo), rat(&radius.hi)],
                "perron_dominant": perron_dominant(&p, &radius),
            }),
        );
        let key = if name == "a" { "s" } else { "t" };
        r.set(key, enclosure(&dim));
    }
    let bounds: Vec<Value> = (1..=level.max(1))
        .map(|n| json!({ "level": n, "bound": enclosure(&measure_upper_bound(&beta, n)) }))
        .collect();
    r.set("measure_upper_bound", Value::Array(bounds));
    Ok(r)
}

pub fn cmd_codings(cmd: CodingsCmd) -> CmdResult<Report> {
    match cmd {
        CodingsCmd::Count { coding, beta } => {
            let beta = beta.as_deref().map(parse_beta).transpose()?;
            let c = parse_coding(&coding)?;
            let count = count_codings(&c);
            let mut r = Report::new("codings count", beta.as_ref().map(|b| b.value()));
            r.set("coding", json!(c.to_string()));
            r.set("count", count_json(count));
            r.set(
                "branch_blocks",
                match count {
                    CodingCount::Finite(m) => json!(m),
                    CodingCount::Continuum => Value::Null,
                },
            );
            r.set("unique", json!(is_unique(&c)));
            Ok(r)
        }
        CodingsCmd::Enumerate {
            coding,
            depth,
            beta,
        } => {
            let beta = beta.as_deref().map(parse_beta).transpose()?;
            let c = parse_coding(&coding)?;
            if depth == 0 || depth > MAX_ENUMERATION_DEPTH {
                return Err(format!("depth must be in 1..={MAX_ENUMERATION_DEPTH}"));
            }
            let prefixes = enumerate_codings(&c, depth);
            let mut r = Report::new("codings enumerate", beta.as_ref().map(|b| b.value()));
            r.set("coding", json!(c.to_string()));
            r.set("depth", json!(depth));
            r.set("count", json!(prefixes.len()));
            r.set("scan_count", count_json(count_codings(&c)));
            r.set(
                "prefixes",
                Value::Array(prefixes.iter().map(|w| json!(w.to_string())).collect()),
            );
            Ok(r)
        }
        CodingsCmd::Eval { coding, beta } => {
            let beta = parse_beta(&beta)?;
            let c = parse_coding(&coding)?;
            let mut r = Report::new("codings eval", Some(beta.value()));
            r.set("coding", json!(c.to_string()));
            r.set("value", rat(&eval_coding(&beta, &c)));
            Ok(r)
        }
    }
}

pub fn cmd_geometry(cmd: GeometryCmd) -> CmdResult<Report> {
    match cmd {
        GeometryCmd::Levels(a) => {
            let beta = parse_beta(&a.beta)?;
            check_level(a.level)?;
            let d = delta_level(&beta, a.level);
            let mut r = Report::new("geometry levels", Some(beta.value()));
            r.set("level", json!(a.level));
            r.set("maps", json!(level_maps(&beta, a.level).len()));
            r.set(
                "intervals",
                Value::Array(d.parts().iter().map(interval).collect()),
            );
            r.set("total_length", rat(&d.total_length()));
            Ok(r)
        }
        GeometryCmd::Holes(a) => {
            let beta = parse_beta(&a.beta)?;
            check_level(a.level)?;
            let mut r = Report::new("geometry holes", Some(beta.value()));
            r.set("level", json!(a.level));
            r.set(
                "holes",
                Value::Array(holes(&beta, a.level).iter().map(interval).collect()),
            );
            Ok(r)
        }
        GeometryCmd::Svg { .. } => unreachable!("handled by cmd_svg"),
    }
}

fn cmd_svg(a: &LevelArgs, out: Option<PathBuf>, timestamp: Option<u64>) -> Outcome {
    let beta = match parse_beta(&a.beta).and_then(|b| check_level(a.level).map(|_| b)) {
        Ok(b) => b,
        Err(e) => return Outcome::usage(e),
    };
    let fig = svg::render_levels(&beta, a.level);
    let Some(path) = out else {
        return Outcome {
            code: EXIT_OK,
            stdout: fig.svg,
            stderr: String::new(),
        };
    };
    if let Err(e) = std::fs::write(&path, &fig.svg) {
        return Outcome::usage(format!("cannot write {}: {e}", path.display()));
    }
    let mut r = Report::new("geometry svg", Some(beta.value()));
    r.set("file", json!(path.display().to_string()));
    r.set("rows", json!(fig.rows));
    r.set("highlighted", json!(fig.highlighted));
    Outcome {
        code: EXIT_OK,
        stdout: r.render(timestamp),
        stderr: String::new(),
    }
}

fn branch_name(b: BranchCase) -> &'static str {
    match b {
        BranchCase::SubF0 => "sub_f0",
        BranchCase::SubF1 => "sub_f1",
        BranchCase::SubFB => "sub_fb",
        BranchCase::Inconclusive => "inconclusive",
    }
}

pub fn cmd_classify(beta: &str, mu: &str, b: &str, depth: usize) -> CmdResult<Report> {
    let beta = parse_beta(beta)?;
    let mu = parse_rat(mu).map_err(|e| e.to_string())?;
    let b = parse_rat(b).map_err(|e| e.to_string())?;
    if depth == 0 {
        return Err("depth must be at least 1".into());
    }
    let g = CandidateMap::new(mu, b).map_err(|e| e.to_string())?;
    let mut r = Report::new("embed classify", Some(beta.value()));
    r.set("mu", rat(g.mu()));
    r.set("b", rat(g.b()));
    r.set("depth", json!(depth));
    if g.mu().abs() <= Rat::one() {
        r.set(
            "branch_case",
            json!(branch_name(branch_classify(&beta, &g))),
        );
    }
    match classify_generating(&beta, &g, depth) {
        ClassifyResult::Generating(w) => {
            r.set("verdict", json!("generating"));
            r.set("word", json!(w.to_string()));
        }
        ClassifyResult::Refuted(f) => {
            r.set("verdict", json!("refuted"));
            r.set(
                "refutation",
                json!({
                    "kind": match f.kind {
                        RefutationKind::Diameter => "diameter",
                        RefutationKind::Witness => "witness",
                    },
                    "witness": f.witness.to_string(),
                    "point": rat(&f.point),
                    "image": rat(&f.image),
                    "hole": f.hole.as_ref().map_or(Value::Null, interval),
                    "escape_level": f.depth,
                }),
            );
        }
        ClassifyResult::Undetermined { depth, obstruction } => {
            r.set("verdict", json!("undetermined"));
            r.set("searched_depth", json!(depth));
            r.set(
                "obstruction_level",
                obstruction.map_or(Value::Null, |k| json!(k)),
            );
            r.status = Status::Partial;
        }
    }
    Ok(r)
}

pub fn cmd_spectrum(beta: &str, max_len: usize) -> CmdResult<Report> {
    let beta = parse_beta(beta)?;
    if max_len == 0 || max_len > MAX_SPECTRUM_LEN {
        return Err(format!("max-len must be in 1..={MAX_SPECTRUM_LEN}"));
    }
    let res = spectrum_search(&beta, max_len).map_err(|e| e.to_string())?;
    let mut r = Report::new("spectrum", Some(beta.value()));
    r.set("max_len", json!(max_len));
    r.set("min_value", rat(&res.min_value));
    r.set("witness", json!(res.witness.to_string()));
    r.set("length", json!(res.length));
    r.set(
        "per_length",
        Value::Array(res.per_length.iter().map(rat).collect()),
    );
    match verify_claim_induction(&beta, max_len) {
        ClaimCheck::Verified { .. } => r.set("claim", json!("verified")),
        ClaimCheck::Counterexample(v) => {
            r.set("claim", json!({ "counterexample": v.to_string() }));
            r.fail("results.claim".into());
        }
    }
    if !res.min_value.is_one() {
        r.fail("results.min_value".into());
    }
    Ok(r)
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: Value,
    failure: Option<String>,
}

fn check_overlap(beta: &RatBeta, level: usize) -> Check {
    let levels = overlap_levels(beta, level);
    let detail = json!({
        "gaps": levels.iter().map(|l| rat(&l.gap)).collect::<Vec<_>>(),
        "contained": levels.iter().all(|l| l.contained),
        "bound_at_level": rat(&overlap_gap_bound(beta, level)),
    });
    let (pass, failure) = match verify_overlap_identity(beta, level) {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };
    Check {
        name: "overlap_identity",
        pass,
        detail,
        failure,
    }
}

fn check_reflections(beta: &RatBeta) -> Check {
    let gamma = beta.gamma();
    let cs: Vec<Rat> = (0..=8)
        .map(|j| gamma * Rat::new(j.into(), 4.into()))
        .collect();
    let mut rows = Vec::new();
    let mut failure = None;
    for c in &cs {
        match check_asymmetry(beta, c, DEFAULT_MAX_DEPTH) {
            Ok(w) => rows.push(json!({
                "c": rat(c),
                "witness": w.witness.to_string(),
                "image": rat(&w.image),
            })),
            Err(e) => {
                failure.get_or_insert_with(|| format!("c = {}: {e}", ebeta::fmt_rat(c)));
            }
        }
    }
    Check {
        name: "asymmetry",
        pass: failure.is_none(),
        detail: Value::Array(rows),
        failure,
    }
}

fn check_hole_image(beta: &RatBeta) -> Check {
    match not_totally_self_similar_witness(beta) {
        Ok((x, h0)) => {
            let member = decide_membership(beta, &x, DEFAULT_MAX_DEPTH);
            let pass = member == Membership::In;
            Check {
                name: "not_totally_self_similar",
                pass,
                detail: json!({ "point": rat(&x), "hole_image": interval(&h0) }),
                failure: (!pass).then(|| format!("membership of the point is {member:?}")),
            }
        }
        Err(e) => Check {
            name: "not_totally_self_similar",
            pass: false,
            detail: Value::Null,
            failure: Some(e.to_string()),
        },
    }
}

/// Samples `Λ_{n,m}` should have exactly `2^m` codings.
fn check_power_of_two(_beta: &RatBeta) -> Check {
    let mut rows = Vec::new();
    let mut failure = None;
    for n in 1..=3 {
        for m in 0..=3 {
            let c = lambda_sample(n, m, None).expect("default prefix is valid");
            let depth = c.preperiod().len() + 3;
            let found = enumerate_codings(&c, depth).len();
            let expected = 1usize << m;
            if found != expected {
                failure.get_or_insert_with(|| format!("{c}: {found} codings, expected {expected}"));
            }
            rows.push(json!({
                "coding": c.to_string(),
                "scan_count": count_codings(&c).to_string(),
                "enumerated": found,
            }));
        }
    }
    Check {
        name: "power_of_two_sample",
        pass: failure.is_none(),
        detail: Value::Array(rows),
        failure,
    }
}

fn check_collisions(beta: &RatBeta, level: usize) -> Check {
    let a = TransitionMatrix::matrix_a();
    let mut rows = Vec::new();
    let mut failure = None;
    for n in 1..=level.min(MAX_LEVEL) {
        let maps = level_maps(beta, n).len();
        let words = a.count_words(n);
        if words != maps.into() {
            failure.get_or_insert_with(|| format!("level {n}: {maps} maps, {words} A-words"));
        }
        rows.push(json!({ "level": n, "maps": maps, "words": words.to_string() }));
    }
    Check {
        name: "map_collision",
        pass: failure.is_none(),
        detail: Value::Array(rows),
        failure,
    }
}

pub fn cmd_verify(beta: &str, level: usize) -> CmdResult<Report> {
    let beta = parse_beta(beta)?;
    if level == 0 {
        return Err("level must be at least 1".into());
    }
    check_level(level)?;
    let mut r = Report::new("verify all", Some(beta.value()));
    let checks = [
        check_overlap(&beta, level),
        check_reflections(&beta),
        check_hole_image(&beta),
        check_power_of_two(&beta),
        check_collisions(&beta, level),
    ];
    for c in checks {
        let mut v = json!({ "status": if c.pass { "pass" } else { "fail" }, "detail": c.detail });
        if let Some(f) = &c.failure {
            v["failure"] = json!(f);
            r.fail(format!("results.{}: {f}", c.name));
        }
        r.set(c.name, v);
    }
    Ok(r)
}
