use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::ball::pow2;
use crate::expr::mpoly::{MPoly, Var};
use crate::expr::parse::{parse, ParseError};
use crate::expr::rat::{parse_rat, GaussRat, LiteralError, Rat};
use crate::grading::{detect_weights, WeightDetection, WeightSystem};
use crate::invariants::{compare_members, hp_coefficients, k_values, Distinction, KEntry};
use crate::localalg::{
    graded_membership, isolated_check, membership_at, milnor, tf_gens, ExceptionalT, LocalAlgError,
    Membership,
};
use crate::polar::branch_roots;
use crate::report::{
    ComparisonDoc, HPDoc, InputEcho, KDoc, MembershipDoc, MilnorDoc, PointCheckDoc, PolarDoc,
    ReportDocument, SampleDoc, WeightsDoc, TOOL_VERSION,
};
use crate::roots::{RootConfig, RootValue};
use crate::verdict::{analyze_family, corpus, AnalysisError, FamilySpec, FamilyVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "germlab",
    version,
    about = "Triviality criteria for weighted homogeneous germ families F(x, y[, z], t)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline: weights, isolated check, k-condition, TF membership, verdict.
    Analyze(CommonArgs),
    /// Polar branches of F_x at each sampled t.
    Polar(CommonArgs),
    /// k-values and Henry-Parusinski coefficients at each sampled t.
    Invariants(CommonArgs),
    /// Milnor number and orbit codimension.
    Milnor(CommonArgs),
    /// Membership of F_t in the ideal generated by x_i F_{x_j}.
    Membership(CommonArgs),
    /// Run the built-in families and check the reference values.
    Corpus(OutputArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Family expression in x, y, z and t.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub expr: Option<String>,
    /// Input file: expression on the first line, then optional `t = ...` and `domain = ...` lines.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Parameter sample, exact: 1/4, -3, 1/2+1/3*i. Repeatable.
    #[arg(long = "t", allow_hyphen_values = true)]
    pub t: Vec<String>,
    /// Parameter domain, e.g. "0<|t|<1/2" or "t != 0".
    #[arg(long)]
    pub domain: Option<String>,
    /// Working precision in bits (at least 64).
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    /// Cluster radius: 2^-k or a rational in (0, 1).
    #[arg(long, default_value = "2^-40")]
    pub epsilon: String,
    /// Accept a family that does not depend on t.
    #[arg(long)]
    pub allow_constant: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    pub expression: String,
    pub t_samples: Vec<GaussRat>,
    pub domain: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("input file is empty")]
    Empty,
    #[error("line {line}: {source}")]
    Literal { line: usize, source: LiteralError },
    #[error("line {line}: expected `t = <value>` or `domain = <text>`")]
    UnknownLine { line: usize },
    #[error("line {line}: domain given twice")]
    DuplicateDomain { line: usize },
    #[error("input file is not valid UTF-8")]
    Utf8,
}

/// Parses the input file format. The expression itself is not parsed here.
pub fn parse_input_file(text: &str) -> Result<InputFile, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (_, first) = lines.next().ok_or(InputError::Empty)?;
    let mut file = InputFile {
        expression: first.trim().to_string(),
        t_samples: Vec::new(),
        domain: None,
    };
    for (k, line) in lines {
        let line_no = k + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or(InputError::UnknownLine { line: line_no })?;
        match key.trim() {
            "t" => {
                let t = GaussRat::parse(value).map_err(|source| InputError::Literal {
                    line: line_no,
                    source,
                })?;
                file.t_samples.push(t);
            }
            "domain" => {
                if file.domain.is_some() {
                    return Err(InputError::DuplicateDomain { line: line_no });
                }
                file.domain = Some(value.trim().to_string());
            }
            _ => return Err(InputError::UnknownLine { line: line_no }),
        }
    }
    Ok(file)
}

pub fn parse_input_bytes(data: &[u8]) -> Result<InputFile, InputError> {
    std::str::from_utf8(data)
        .map_err(|_| InputError::Utf8)
        .and_then(parse_input_file)
}

/// `2^-k` or a rational strictly between 0 and 1.
pub fn parse_epsilon(text: &str) -> Result<Rat, String> {
    let s = text.trim();
    let value = match s.strip_prefix("2^") {
        Some(e) => {
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| format!("malformed epsilon `{s}`"))?;
            if !(-100_000..0).contains(&e) {
                return Err(format!("epsilon `{s}` must lie in (0, 1)"));
            }
            pow2(e)
        }
        None => parse_rat(s).map_err(|e| e.to_string())?,
    };
    if !value.is_positive() || value >= Rat::one() {
        return Err(format!("epsilon `{s}` must lie in (0, 1)"));
    }
    Ok(value)
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

fn parse_error(e: &ParseError, src: &str) -> Failure {
    let pos = e.position().min(src.len());
    Failure::input(format!(
        "{e}\n  {src}\n  {}^",
        " ".repeat(src[..pos].chars().count())
    ))
}

struct Prepared {
    source: String,
    f: MPoly,
    ts: Vec<GaussRat>,
    domain: Option<String>,
    cfg: RootConfig,
    allow_constant: bool,
}

impl Prepared {
    fn echo(&self) -> InputEcho {
        InputEcho::new(
            &self.source,
            self.domain.as_deref(),
            &self.ts,
            &self.cfg,
            self.allow_constant,
        )
    }
}

fn prepare(args: &CommonArgs) -> Result<Prepared, Failure> {
    let (source, mut ts, mut domain) = match (&args.expr, &args.file) {
        (Some(e), _) => (e.clone(), Vec::new(), None),
        (None, Some(path)) => {
            let data = std::fs::read(path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let file = parse_input_bytes(&data)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            (file.expression, file.t_samples, file.domain)
        }
        (None, None) => return Err(Failure::input("one of --expr or --file is required")),
    };
    for t in &args.t {
        ts.push(GaussRat::parse(t).map_err(|e| Failure::input(format!("--t {t}: {e}")))?);
    }
    if args.domain.is_some() {
        domain = args.domain.clone();
    }
    if args.precision < 64 {
        return Err(Failure::input(format!(
            "--precision must be at least 64 bits, got {}",
            args.precision
        )));
    }
    let epsilon = parse_epsilon(&args.epsilon).map_err(Failure::input)?;
    let cfg = RootConfig {
        precision: args.precision,
        epsilon,
        max_precision: args.precision.max(4096),
    };
    let f = parse(&source).map_err(|e| parse_error(&e, &source))?;
    if !f.depends_on(Var::T) && !args.allow_constant {
        return Err(Failure::input(
            "F does not depend on t; pass --allow-constant to analyze a constant family",
        ));
    }
    Ok(Prepared {
        source,
        f,
        ts,
        domain,
        cfg,
        allow_constant: args.allow_constant,
    })
}

/// Weights with the heavier variable first for plane germs.
fn normalized_weights(
    p: &Prepared,
) -> Result<(WeightDetection, MPoly, WeightSystem, bool), Failure> {
    let det = detect_weights(&p.f).map_err(|e| Failure::input(e.to_string()))?;
    let Some(w) = det.system().cloned() else {
        return Err(Failure::input("F is not weighted homogeneous"));
    };
    if w.n() == 2 && w.weights[0] < w.weights[1] {
        let (a, b) = (w.vars[0], w.vars[1]);
        Ok((det, p.f.swap_vars(a, b), w.swapped(a, b), true))
    } else {
        Ok((det, p.f.clone(), w, false))
    }
}

fn require_samples(p: &Prepared) -> Result<(), Failure> {
    if p.ts.is_empty() && p.f.depends_on(Var::T) {
        return Err(Failure::input("at least one --t sample is required"));
    }
    Ok(())
}

fn sample_points(p: &Prepared) -> Vec<GaussRat> {
    if p.ts.is_empty() {
        vec![GaussRat::default()]
    } else {
        p.ts.clone()
    }
}

fn cmd_analyze(p: &Prepared) -> Result<ReportDocument, Failure> {
    let spec = FamilySpec {
        name: "input".into(),
        source: p.source.clone(),
        f: p.f.clone(),
        domain_note: p.domain.clone(),
        t_samples: p.ts.clone(),
        config: p.cfg.clone(),
        allow_constant: p.allow_constant,
    };
    match analyze_family(&spec) {
        Ok(a) => Ok(ReportDocument::from_analysis(&a)),
        Err(AnalysisError::Internal(m)) => Err(Failure::internal(m)),
        Err(e) => Err(Failure::input(e.to_string())),
    }
}

fn plane_setup(p: &Prepared, cmd: &str) -> Result<(ReportDocument, MPoly, WeightSystem), Failure> {
    require_samples(p)?;
    let (det, g, w, swapped) = normalized_weights(p)?;
    if w.n() != 2 {
        return Err(Failure::input(format!(
            "`{cmd}` needs a germ in two variables"
        )));
    }
    if w.weights[0] == w.weights[1] {
        return Err(Failure::input(
            "weights are homogeneous; polar branches (a s^w1, s^w2) need w1 > w2",
        ));
    }
    let mut doc = ReportDocument::new(cmd, p.echo());
    doc.weights = Some(WeightsDoc::new(&det, &w, swapped, &g));
    doc.footnotes.push(crate::verdict::WEIGHT_ORDER_NOTE.into());
    Ok((doc, g, w))
}

fn cmd_polar(p: &Prepared, with_invariants: bool) -> Result<ReportDocument, Failure> {
    let cmd = if with_invariants {
        "invariants"
    } else {
        "polar"
    };
    let (mut doc, g, w) = plane_setup(p, cmd)?;
    for t0 in sample_points(p) {
        let mut s = SampleDoc::empty(&t0);
        s.isolated = isolated_check(&g, &w, &t0).map_err(|e| Failure::internal(e.to_string()))?;
        let d = branch_roots(&g, &w, &t0, &p.cfg).map_err(|e| Failure::internal(e.to_string()))?;
        if d.x_axis_order > 0 {
            doc.conditions.push(format!(
                "the polar set has a component along y = 0 at t = {t0}"
            ));
        }
        if with_invariants {
            s.k = Some(KDoc::from(&k_values(&g, &d, &p.cfg)));
            s.hp = Some(HPDoc::from(&hp_coefficients(&g, &d)));
        }
        s.polar = Some(PolarDoc::from(&d));
        doc.samples.push(s);
    }
    if with_invariants && p.ts.len() >= 2 {
        let r = compare_members(&g, &w, &p.ts[0], &p.ts[1], &p.cfg)
            .map_err(|e| Failure::internal(e.to_string()))?;
        doc.comparison = Some(ComparisonDoc::from(&r));
    }
    Ok(doc)
}

fn cmd_milnor(p: &Prepared) -> Result<ReportDocument, Failure> {
    require_samples(p)?;
    let (det, g, w, swapped) = normalized_weights(p)?;
    let mut doc = ReportDocument::new("milnor", p.echo());
    doc.weights = Some(WeightsDoc::new(&det, &w, swapped, &g));
    for t0 in sample_points(p) {
        let mut s = SampleDoc::empty(&t0);
        s.isolated = isolated_check(&g, &w, &t0).map_err(|e| Failure::internal(e.to_string()))?;
        match milnor(&g, &w, Some(&t0)) {
            Ok(m) => s.milnor = Some(MilnorDoc::from(&m)),
            Err(LocalAlgError::NonIsolated) => s
                .notes
                .push("non-isolated singularity: Milnor number is infinite".into()),
            Err(e @ LocalAlgError::MethodsDisagree { .. }) => {
                return Err(Failure::internal(e.to_string()))
            }
            Err(e) => return Err(Failure::input(e.to_string())),
        }
        doc.samples.push(s);
    }
    Ok(doc)
}

fn cmd_membership(p: &Prepared) -> Result<ReportDocument, Failure> {
    let (det, g, w, swapped) = normalized_weights(p)?;
    let mut doc = ReportDocument::new("membership", p.echo());
    doc.weights = Some(WeightsDoc::new(&det, &w, swapped, &g));
    let gens = tf_gens(&g, &w).map_err(|e| Failure::internal(e.to_string()))?;
    let target = g.derive(Var::T);
    let m = graded_membership(&target, &gens, &w).map_err(|e| Failure::input(e.to_string()))?;
    let mut md = MembershipDoc::new(&target, "TF", &gens, &m);
    let check = |t0: &GaussRat| -> Result<PointCheckDoc, Failure> {
        let member =
            membership_at(&target, &gens, &w, t0).map_err(|e| Failure::internal(e.to_string()))?;
        Ok(PointCheckDoc {
            t: t0.to_string(),
            member,
        })
    };
    if let Membership::Member(cert) = &m {
        if !cert.verify(&gens) {
            return Err(Failure::internal(
                "membership certificate does not resubstitute",
            ));
        }
        for e in &cert.exceptional_t {
            if let ExceptionalT::Rational(r) = e {
                md.exceptional_checks
                    .push(check(&GaussRat::real(r.clone()))?);
            }
        }
    }
    for t0 in &p.ts {
        md.sample_checks.push(check(t0)?);
    }
    doc.membership = Some(md);
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub name: String,
    pub expression: String,
    pub weights: String,
    pub verdict: String,
    pub expected: String,
    pub checks: Vec<CorpusCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCheck {
    pub what: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDoc {
    pub tool: String,
    pub version: String,
    pub rows: Vec<CorpusRow>,
    pub passed: bool,
}

fn exact_strings<'a>(vals: impl Iterator<Item = &'a RootValue>) -> Vec<String> {
    let mut v: Vec<String> = vals
        .map(|x| x.exact().map_or("ball".into(), |z| z.to_string()))
        .collect();
    v.sort();
    v
}

fn set(items: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn expected_verdict(name: &str) -> &'static str {
    match name {
        "whitney" => "Inconclusive",
        "henry-parusinski" | "numeric-control" => "FailsKCondition",
        "example-z5" => "NotAnalyticallyTrivialByTangentCriterion",
        _ => "AnalyticallyTrivialGeneric",
    }
}

fn milnor_of(src: &str) -> Option<(u64, u64, u64)> {
    let f = parse(src).ok()?;
    let w = detect_weights(&f).ok()?.system()?.clone();
    let m = milnor(&f, &w, None).ok()?;
    (m.method_dimension == m.method_formula).then_some((m.mu, m.orbit_codim, m.method_formula))
}

/// Runs every built-in family and compares against the reference values.
pub fn corpus_report() -> Result<CorpusDoc, String> {
    let mut rows = Vec::new();
    for spec in corpus() {
        let a = analyze_family(&spec).map_err(|e| format!("{}: {e}", spec.name))?;
        let mut checks = Vec::new();
        let mut push = |what: &str, passed: bool| {
            checks.push(CorpusCheck {
                what: what.into(),
                passed,
            })
        };
        let sample = |t: &str| a.samples.iter().find(|s| s.t0.to_string() == t);
        match spec.name.as_str() {
            "henry-parusinski" => {
                let s = sample("1/4");
                let ks = s.and_then(|s| s.k.as_ref()).map(|k| {
                    exact_strings(k.branches.iter().filter_map(|b| match &b.k {
                        KEntry::Value(v) => Some(v),
                        _ => None,
                    }))
                });
                push(
                    "k(1/4) = {-2/31, 2/33}",
                    ks == Some(set(&["-2/31", "2/33"])),
                );
                let a_vals = s
                    .and_then(|s| s.polar.as_ref())
                    .map(|d| exact_strings(d.branches.iter().map(|b| &b.a)));
                push(
                    "branches a(1/4) = {1/4, -1/4}",
                    a_vals == Some(set(&["1/4", "-1/4"])),
                );
                let cs = |t: &str| {
                    sample(t)
                        .and_then(|s| s.hp.as_ref())
                        .map(|h| exact_strings(h.entries.iter().map(|e| &e.c)))
                };
                push(
                    "HP(1/4) = {31/32, 33/32}",
                    cs("1/4") == Some(set(&["31/32", "33/32"])),
                );
                push(
                    "HP(1/3) = {25/27, 29/27}",
                    cs("1/3") == Some(set(&["25/27", "29/27"])),
                );
                let w = a.weights.clone().unwrap();
                let cmp = compare_members(
                    &a.normalized,
                    &w,
                    &GaussRat::parse("1/4").unwrap(),
                    &GaussRat::parse("1/3").unwrap(),
                    &spec.config,
                );
                push(
                    "compare(1/4, 1/3) = DISTINGUISHED",
                    matches!(cmp, Ok(r) if r.outcome == Distinction::Distinguished),
                );
            }
            "control-y7" => {
                let ok = match &a.verdict {
                    FamilyVerdict::AnalyticallyTrivialGeneric { certificate } => {
                        certificate.exceptional_t
                            == vec![ExceptionalT::Rational(Rat::from_integer(BigInt::from(-1)))]
                            && certificate.multipliers.len() == 1
                    }
                    _ => false,
                };
                push(
                    "certificate y^7 = y F_y / (7(1+t)), exceptional t = {-1}",
                    ok,
                );
                let mu = a.samples.iter().all(|s| {
                    s.milnor
                        .as_ref()
                        .is_some_and(|m| m.method_dimension == 12 && m.method_formula == 12)
                });
                push("Milnor number 12 by both methods", mu);
            }
            "control-xy4" => {
                let ok = a.samples.iter().all(|s| {
                    let expected = GaussRat::real(
                        Rat::one() / (Rat::from_integer(BigInt::from(4)) * &s.t0.re),
                    );
                    s.k.as_ref()
                        .is_some_and(|k| k.k_common.as_ref() == Some(&expected))
                        && matches!(
                            &s.reduced,
                            Some(crate::verdict::ReducedPathResult::Success {
                                residual_is_zero: true,
                                ..
                            })
                        )
                });
                push("k = 1/(4t) on both branches, reduced path with R = 0", ok);
            }
            "example-z5" => {
                push(
                    "strong bi-Lipschitz side NOT EVALUATED",
                    a.caveats
                        .contains(&crate::verdict::Caveat::StrongBiLipschitzNotEvaluated),
                );
                push(
                    "x^4+y^4+z^5: mu = 36, codim = 38",
                    milnor_of("x^4+y^4+z^5") == Some((36, 38, 36)),
                );
            }
            "whitney" => {
                let homog = matches!(&a.detection, WeightDetection::Homogeneous { system, .. } if system.weights == vec![1, 1]);
                push("weights homogeneous (1, 1)", homog);
                push(
                    "Whitney quartic: mu = 9",
                    a.samples
                        .iter()
                        .all(|s| s.milnor.as_ref().is_some_and(|m| m.mu == 9)),
                );
                push(
                    "x^3+y^6: mu = 10, codim = 11",
                    milnor_of("x^3+y^6") == Some((10, 11, 10)),
                );
            }
            "numeric-control" => {
                let a_m3 = sample("-3")
                    .and_then(|s| s.polar.as_ref())
                    .map(|d| exact_strings(d.branches.iter().map(|b| &b.a)));
                push("branches a(-3) = {1, -1}", a_m3 == Some(set(&["1", "-1"])));
                let at_one = sample("1").and_then(|s| s.k.as_ref());
                let balls = sample("1").and_then(|s| s.polar.as_ref()).is_some_and(|d| {
                    d.branches.iter().all(|b| matches!(&b.a, RootValue::Ball(c) if c.radius() <= &spec.config.epsilon))
                });
                push("ball branches at t = 1 within epsilon", balls);
                push(
                    "k-inequality certified by balls at t = 1",
                    at_one.and_then(|k| k.witness()).is_some_and(|w| !w.exact),
                );
            }
            _ => {}
        }
        let expected = expected_verdict(&spec.name);
        checks.push(CorpusCheck {
            what: format!("verdict {expected}"),
            passed: a.verdict.label() == expected,
        });
        rows.push(CorpusRow {
            name: spec.name.clone(),
            expression: spec.source.clone(),
            weights: a
                .weights
                .as_ref()
                .map_or("-".into(), |w| format!("{:?}; d = {}", w.weights, w.degree)),
            verdict: a.verdict.label().into(),
            expected: expected.into(),
            checks,
        });
    }
    let passed = rows.iter().all(|r| r.checks.iter().all(|c| c.passed));
    Ok(CorpusDoc {
        tool: "germlab".into(),
        version: TOOL_VERSION.into(),
        rows,
        passed,
    })
}

fn corpus_text(doc: &CorpusDoc) -> String {
    use std::fmt::Write as _;
    let mut o = String::new();
    writeln!(
        o,
        "{:<18} {:<30} {:<16} {:<42} status",
        "family", "F", "weights", "verdict"
    )
    .unwrap();
    for r in &doc.rows {
        let ok = r.checks.iter().all(|c| c.passed);
        writeln!(
            o,
            "{:<18} {:<30} {:<16} {:<42} {}",
            r.name,
            r.expression,
            r.weights,
            r.verdict,
            if ok { "ok" } else { "MISMATCH" }
        )
        .unwrap();
        for c in &r.checks {
            writeln!(
                o,
                "    [{}] {}",
                if c.passed { "pass" } else { "FAIL" },
                c.what
            )
            .unwrap();
        }
    }
    writeln!(
        o,
        "{}",
        if doc.passed {
            "all reference values reproduced"
        } else {
            "reference values NOT reproduced"
        }
    )
    .unwrap();
    o
}

fn emit(output: &OutputArgs, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_IO,
        message: e.to_string(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => stdout.write_all(body.as_bytes()).map_err(io),
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (args, doc) = match &cli.command {
        Command::Corpus(out) => {
            let doc = corpus_report().map_err(Failure::internal)?;
            let body = if out.json {
                serde_json::to_string_pretty(&doc).expect("corpus serializes") + "\n"
            } else {
                corpus_text(&doc)
            };
            emit(out, &body, stdout)?;
            return Ok(if doc.passed { EXIT_OK } else { EXIT_INTERNAL });
        }
        Command::Analyze(a) => (a, cmd_analyze(&prepare(a)?)?),
        Command::Polar(a) => (a, cmd_polar(&prepare(a)?, false)?),
        Command::Invariants(a) => (a, cmd_polar(&prepare(a)?, true)?),
        Command::Milnor(a) => (a, cmd_milnor(&prepare(a)?)?),
        Command::Membership(a) => (a, cmd_membership(&prepare(a)?)?),
    };
    let body = if args.output.json {
        doc.to_json() + "\n"
    } else {
        doc.to_text()
    };
    emit(&args.output, &body, stdout)?;
    Ok(EXIT_OK)
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            let kind = match f.code {
                EXIT_INPUT => "input error",
                EXIT_IO => "I/O error",
                _ => "internal error",
            };
            let _ = writeln!(stderr, "germlab: {kind}: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_file_format() {
        let f = parse_input_file(
            "x^3 + y^6 - 3*t^2*x*y^4\n t = 1/4\n\n# comment\nt=1/3+1/2*i\ndomain = 0<|t|<1/2\n",
        )
        .unwrap();
        assert_eq!(f.expression, "x^3 + y^6 - 3*t^2*x*y^4");
        assert_eq!(
            f.t_samples,
            vec![
                GaussRat::parse("1/4").unwrap(),
                GaussRat::parse("1/3+1/2*i").unwrap()
            ]
        );
        assert_eq!(f.domain.as_deref(), Some("0<|t|<1/2"));
        assert_eq!(parse_input_file(""), Err(InputError::Empty));
        assert!(matches!(
            parse_input_file("x\nt = 0.25"),
            Err(InputError::Literal {
                line: 2,
                source: LiteralError::Decimal(_)
            })
        ));
        assert_eq!(
            parse_input_file("x\nfoo"),
            Err(InputError::UnknownLine { line: 2 })
        );
    }

    #[test]
    fn epsilon_forms() {
        assert_eq!(parse_epsilon("2^-40").unwrap(), pow2(-40));
        assert_eq!(parse_epsilon("1/1024").unwrap(), pow2(-10));
        assert!(parse_epsilon("2^3").is_err());
        assert!(parse_epsilon("1").is_err());
        assert!(parse_epsilon("0").is_err());
        assert!(parse_epsilon("0.001").is_err());
    }

    #[test]
    fn corpus_reproduces_reference_values() {
        let doc = corpus_report().unwrap();
        for r in &doc.rows {
            for c in &r.checks {
                assert!(c.passed, "{}: {}", r.name, c.what);
            }
        }
        assert!(doc.passed);
    }
}
