//! Serializable report document shared by the JSON and text outputs.
//!
//! Every exact number is a string (`p/q`, `a+b*i`); every enclosure carries
//! its exact dyadic center and radius.  The text form is rendered from the
//! document, never from the analysis structures directly.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::ball::CBall;
use crate::expr::mpoly::{MPoly, Monomial};
use crate::expr::rat::{fmt_rat, GaussRat, Rat};
use crate::expr::ring::Ring;
use crate::expr::unipoly::UniPoly;
use crate::grading::{WeightDetection, WeightSystem};
use crate::invariants::{
    ComparisonReport, Distinction, HPReport, KEntry, KReport, KStatus, KWitness,
};
use crate::localalg::{
    tf_gens, ExceptionalT, IdealGens, Membership, MembershipCertificate, MilnorData, NonMembership,
};
use crate::polar::PolarDecomposition;
use crate::roots::{RootConfig, RootValue};
use crate::verdict::{ExtraCheck, FamilyAnalysis, FamilyVerdict, ReducedPathResult, SampleReport};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "germlab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Number {
    Exact {
        value: String,
    },
    Ball {
        re: String,
        im: String,
        radius: String,
        approx: String,
    },
}

impl Number {
    pub fn exact(z: &GaussRat) -> Number {
        Number::Exact {
            value: z.to_string(),
        }
    }

    pub fn ball(b: &CBall) -> Number {
        Number::Ball {
            re: fmt_rat(b.center_re()),
            im: fmt_rat(b.center_im()),
            radius: fmt_rat(b.radius()),
            approx: b.to_string(),
        }
    }

    pub fn from_value(v: &RootValue) -> Number {
        match v {
            RootValue::Exact(z) => Number::exact(z),
            RootValue::Ball(b) => Number::ball(b),
        }
    }

    fn render(&self) -> String {
        match self {
            Number::Exact { value } => value.clone(),
            Number::Ball { approx, .. } => approx.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub expression: String,
    pub domain: Option<String>,
    pub t_samples: Vec<String>,
    pub precision: u32,
    pub epsilon: String,
    pub allow_constant: bool,
}

impl InputEcho {
    pub fn new(
        expression: &str,
        domain: Option<&str>,
        ts: &[GaussRat],
        cfg: &RootConfig,
        allow_constant: bool,
    ) -> Self {
        InputEcho {
            expression: expression.to_string(),
            domain: domain.map(str::to_string),
            t_samples: ts.iter().map(|t| t.to_string()).collect(),
            precision: cfg.precision,
            epsilon: fmt_rat(&cfg.epsilon),
            allow_constant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsDoc {
    pub detection: String,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub degree: u32,
    pub ambiguous: bool,
    pub swapped: bool,
    pub normalized: String,
}

impl WeightsDoc {
    pub fn new(det: &WeightDetection, w: &WeightSystem, swapped: bool, normalized: &MPoly) -> Self {
        let (detection, ambiguous) = match det {
            WeightDetection::Weighted { ambiguous, .. } => ("weighted", *ambiguous),
            WeightDetection::Homogeneous { ambiguous, .. } => ("homogeneous", *ambiguous),
            WeightDetection::NotWeightedHomogeneous => ("none", false),
        };
        WeightsDoc {
            detection: detection.into(),
            vars: w.vars.iter().map(|v| v.name().to_string()).collect(),
            weights: w.weights.clone(),
            degree: w.degree,
            ambiguous,
            swapped,
            normalized: normalized.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorDoc {
    pub mu: u64,
    pub method_dimension: u64,
    pub method_formula: u64,
    pub orbit_codim: u64,
    pub graded_dimensions: Vec<(u32, usize)>,
}

impl From<&MilnorData> for MilnorDoc {
    fn from(m: &MilnorData) -> Self {
        MilnorDoc {
            mu: m.mu,
            method_dimension: m.method_dimension,
            method_formula: m.method_formula,
            orbit_codim: m.orbit_codim,
            graded_dimensions: m.graded_dimensions.clone(),
        }
    }
}

fn gauss_poly_text(p: &UniPoly<GaussRat>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero_elem() {
            continue;
        }
        let c = if c.is_real() {
            let text = c.to_string();
            match (out.is_empty(), text.strip_prefix('-')) {
                (true, _) => text,
                (false, Some(abs)) => {
                    out.push_str(" - ");
                    abs.to_string()
                }
                (false, None) => {
                    out.push_str(" + ");
                    text
                }
            }
        } else {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            format!("({c})")
        };
        let c = match (k, c.as_str()) {
            (0, _) => c,
            (_, "1") => String::new(),
            (_, "-1") => "-".into(),
            _ => format!("{c}*"),
        };
        match k {
            0 => out.push_str(&c),
            1 => write!(out, "{c}{var}").unwrap(),
            _ => write!(out, "{c}{var}^{k}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn t_poly_text(p: &UniPoly<Rat>) -> String {
    MPoly::from_t_poly(p).to_string()
}

fn monomial_text(m: &Monomial) -> String {
    MPoly::term(Rat::from_integer(1.into()), *m).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub a: Number,
    pub multiplicity: u32,
    pub factor: String,
    pub cluster_size: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarDoc {
    pub x: String,
    pub y: String,
    pub polar: String,
    pub p: String,
    pub branches: Vec<BranchDoc>,
    pub root_count: u32,
    pub x_axis_order: u32,
    pub y_axis_in_branches: bool,
    pub squarefree: bool,
    pub degenerate: bool,
    pub precision: u32,
}

impl From<&PolarDecomposition> for PolarDoc {
    fn from(d: &PolarDecomposition) -> Self {
        PolarDoc {
            x: d.vars.0.name().into(),
            y: d.vars.1.name().into(),
            polar: d.polar.to_string(),
            p: gauss_poly_text(&d.p, "a"),
            branches: d
                .branches
                .iter()
                .map(|b| BranchDoc {
                    a: Number::from_value(&b.a),
                    multiplicity: b.multiplicity,
                    factor: gauss_poly_text(&b.factor, "a"),
                    cluster_size: b.cluster_size,
                })
                .collect(),
            root_count: d.root_count(),
            x_axis_order: d.x_axis_order,
            y_axis_in_branches: d.y_axis_in_branches,
            squarefree: d.squarefree,
            degenerate: d.degenerate,
            precision: d.precision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KValueDoc {
    Value { k: Number },
    Degenerate,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KBranchDoc {
    pub a: Number,
    pub multiplicity: u32,
    pub k: KValueDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub i: usize,
    pub j: usize,
    pub k_i: Number,
    pub k_j: Number,
    pub exact: bool,
}

impl From<&KWitness> for WitnessDoc {
    fn from(w: &KWitness) -> Self {
        WitnessDoc {
            i: w.i,
            j: w.j,
            k_i: Number::from_value(&w.k_i),
            k_j: Number::from_value(&w.k_j),
            exact: w.exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KStatusDoc {
    AllEqual,
    Unequal { witness: WitnessDoc },
    Undecided { pairs: Vec<(usize, usize)> },
    Degenerate { branches: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KDoc {
    pub branches: Vec<KBranchDoc>,
    pub status: KStatusDoc,
    pub excluded_axis: bool,
    pub k_common: Option<String>,
}

impl From<&KReport> for KDoc {
    fn from(r: &KReport) -> Self {
        KDoc {
            branches: r
                .branches
                .iter()
                .map(|b| KBranchDoc {
                    a: Number::from_value(&b.a),
                    multiplicity: b.multiplicity,
                    k: match &b.k {
                        KEntry::Value(v) => KValueDoc::Value {
                            k: Number::from_value(v),
                        },
                        KEntry::Degenerate => KValueDoc::Degenerate,
                        KEntry::Unresolved => KValueDoc::Unresolved,
                    },
                })
                .collect(),
            status: match &r.status {
                KStatus::AllEqual => KStatusDoc::AllEqual,
                KStatus::Unequal(w) => KStatusDoc::Unequal { witness: w.into() },
                KStatus::Undecided { pairs } => KStatusDoc::Undecided {
                    pairs: pairs.clone(),
                },
                KStatus::Degenerate { branches } => KStatusDoc::Degenerate {
                    branches: branches.clone(),
                },
            },
            excluded_axis: r.excluded_axis,
            k_common: r.k_common.as_ref().map(|k| k.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPEntryDoc {
    pub a: Number,
    pub multiplicity: u32,
    pub c: Number,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPDoc {
    pub t: String,
    pub entries: Vec<HPEntryDoc>,
    pub anchor: Option<usize>,
    pub ratios: Vec<(usize, Number)>,
    pub zero_branches: Vec<usize>,
    pub possibly_zero: Vec<usize>,
}

impl From<&HPReport> for HPDoc {
    fn from(r: &HPReport) -> Self {
        HPDoc {
            t: r.t0.to_string(),
            entries: r
                .entries
                .iter()
                .map(|e| HPEntryDoc {
                    a: Number::from_value(&e.a),
                    multiplicity: e.multiplicity,
                    c: Number::from_value(&e.c),
                })
                .collect(),
            anchor: r.anchor,
            ratios: r
                .ratios
                .iter()
                .map(|(i, v)| (*i, Number::from_value(v)))
                .collect(),
            zero_branches: r.zero_branches.clone(),
            possibly_zero: r.possibly_zero.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReducedDoc {
    NotApplicable {
        reason: String,
    },
    Success {
        k_common: String,
        cofactor: Vec<(String, String)>,
        residual_is_zero: bool,
        u_vanishes_at_origin: bool,
    },
    Failed {
        k_common: String,
    },
}

impl From<&ReducedPathResult> for ReducedDoc {
    fn from(r: &ReducedPathResult) -> Self {
        match r {
            ReducedPathResult::NotApplicable { reason } => ReducedDoc::NotApplicable {
                reason: reason.clone(),
            },
            ReducedPathResult::Success {
                k_common,
                cofactor,
                residual_is_zero,
                u_vanishes_at_origin,
                ..
            } => ReducedDoc::Success {
                k_common: k_common.to_string(),
                cofactor: cofactor
                    .iter()
                    .map(|(m, c)| (monomial_text(m), c.to_string()))
                    .collect(),
                residual_is_zero: *residual_is_zero,
                u_vanishes_at_origin: *u_vanishes_at_origin,
            },
            ReducedPathResult::Failed { k_common, .. } => ReducedDoc::Failed {
                k_common: k_common.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub t: String,
    pub generated: bool,
    pub in_domain: Option<bool>,
    pub isolated: bool,
    pub milnor: Option<MilnorDoc>,
    pub polar: Option<PolarDoc>,
    pub k: Option<KDoc>,
    pub hp: Option<HPDoc>,
    pub reduced: Option<ReducedDoc>,
    pub notes: Vec<String>,
}

impl From<&SampleReport> for SampleDoc {
    fn from(s: &SampleReport) -> Self {
        SampleDoc {
            t: s.t0.to_string(),
            generated: s.generated,
            in_domain: s.in_domain,
            isolated: s.isolated,
            milnor: s.milnor.as_ref().map(MilnorDoc::from),
            polar: s.polar.as_ref().map(PolarDoc::from),
            k: s.k.as_ref().map(KDoc::from),
            hp: s.hp.as_ref().map(HPDoc::from),
            reduced: s.reduced.as_ref().map(ReducedDoc::from),
            notes: s.notes.clone(),
        }
    }
}

impl SampleDoc {
    pub fn empty(t: &GaussRat) -> Self {
        SampleDoc {
            t: t.to_string(),
            generated: false,
            in_domain: None,
            isolated: true,
            milnor: None,
            polar: None,
            k: None,
            hp: None,
            reduced: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierDoc {
    pub generator: String,
    pub numerator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub denominator: String,
    pub multipliers: Vec<MultiplierDoc>,
    pub exceptional_t: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMemberDoc {
    pub degree: u32,
    pub piece_dimension: usize,
    pub span_rank: usize,
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheckDoc {
    pub t: String,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipDoc {
    pub target: String,
    pub ideal: String,
    pub generators: Vec<String>,
    pub member: bool,
    pub certificate: Option<CertificateDoc>,
    pub non_membership: Option<NonMemberDoc>,
    pub exceptional_checks: Vec<PointCheckDoc>,
    pub random_checks: Vec<PointCheckDoc>,
    pub sample_checks: Vec<PointCheckDoc>,
}

fn exceptional_text(e: &ExceptionalT) -> String {
    match e {
        ExceptionalT::Rational(r) => fmt_rat(r),
        ExceptionalT::Algebraic(p) => format!("roots of {}", t_poly_text(p)),
    }
}

pub fn certificate_doc(cert: &MembershipCertificate, gens: &IdealGens) -> CertificateDoc {
    CertificateDoc {
        denominator: t_poly_text(&cert.denominator),
        multipliers: cert
            .multipliers
            .iter()
            .map(|(k, numer)| MultiplierDoc {
                generator: gens.gens[*k].label.clone(),
                numerator: numer.to_string(),
            })
            .collect(),
        exceptional_t: cert.exceptional_t.iter().map(exceptional_text).collect(),
    }
}

pub fn non_member_doc(n: &NonMembership) -> NonMemberDoc {
    NonMemberDoc {
        degree: n.degree,
        piece_dimension: n.piece_dimension,
        span_rank: n.span_rank,
        residual: n.residual.iter().map(t_poly_text).collect(),
    }
}

pub fn checks(v: &[ExtraCheck]) -> Vec<PointCheckDoc> {
    v.iter()
        .map(|c| PointCheckDoc {
            t: c.t0.to_string(),
            member: c.member,
        })
        .collect()
}

impl MembershipDoc {
    pub fn new(target: &MPoly, ideal: &str, gens: &IdealGens, m: &Membership) -> Self {
        MembershipDoc {
            target: target.to_string(),
            ideal: ideal.to_string(),
            generators: gens.gens.iter().map(|g| g.label.clone()).collect(),
            member: m.is_member(),
            certificate: match m {
                Membership::Member(c) => Some(certificate_doc(c, gens)),
                Membership::NotMember(_) => None,
            },
            non_membership: match m {
                Membership::NotMember(n) => Some(non_member_doc(n)),
                Membership::Member(_) => None,
            },
            exceptional_checks: Vec::new(),
            random_checks: Vec::new(),
            sample_checks: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    pub a: HPDoc,
    pub b: HPDoc,
    pub outcome: String,
}

impl From<&ComparisonReport> for ComparisonDoc {
    fn from(r: &ComparisonReport) -> Self {
        ComparisonDoc {
            a: (&r.a).into(),
            b: (&r.b).into(),
            outcome: match r.outcome {
                Distinction::Distinguished => "DISTINGUISHED",
                Distinction::NotDistinguished => "NOT_DISTINGUISHED",
            }
            .into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub label: String,
    pub t: Option<String>,
    pub witness: Option<WitnessDoc>,
    pub reasons: Vec<String>,
}

impl From<&FamilyVerdict> for VerdictDoc {
    fn from(v: &FamilyVerdict) -> Self {
        let (t, witness, reasons) = match v {
            FamilyVerdict::FailsKCondition { t0, witness } => {
                (Some(t0.to_string()), Some(witness.into()), vec![])
            }
            FamilyVerdict::Inconclusive { reasons } => {
                (None, None, reasons.iter().map(|c| c.to_string()).collect())
            }
            _ => (None, None, vec![]),
        };
        VerdictDoc {
            label: v.label().into(),
            t,
            witness,
            reasons,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub weights: Option<WeightsDoc>,
    pub samples: Vec<SampleDoc>,
    pub membership: Option<MembershipDoc>,
    pub comparison: Option<ComparisonDoc>,
    pub verdict: Option<VerdictDoc>,
    pub conditions: Vec<String>,
    pub footnotes: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, input: InputEcho) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            command: command.into(),
            input,
            weights: None,
            samples: Vec::new(),
            membership: None,
            comparison: None,
            verdict: None,
            conditions: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    pub fn from_analysis(a: &FamilyAnalysis) -> Self {
        let s = &a.spec;
        let input = InputEcho::new(
            &s.source,
            s.domain_note.as_deref(),
            &s.t_samples,
            &s.config,
            s.allow_constant,
        );
        let mut doc = ReportDocument::new("analyze", input);
        doc.weights = a
            .weights
            .as_ref()
            .map(|w| WeightsDoc::new(&a.detection, w, a.swapped, &a.normalized));
        doc.samples = a.samples.iter().map(SampleDoc::from).collect();
        if let (Some(m), Some(w)) = (&a.membership, &a.weights) {
            if let Ok(gens) = tf_gens(&a.normalized, w) {
                let target = a.normalized.derive(crate::expr::mpoly::Var::T);
                let mut md = MembershipDoc::new(&target, "TF", &gens, m);
                md.exceptional_checks = checks(&a.exceptional_checks);
                md.random_checks = checks(&a.random_checks);
                doc.membership = Some(md);
            }
        }
        doc.verdict = Some((&a.verdict).into());
        doc.conditions = a.caveats.iter().map(|c| c.to_string()).collect();
        doc.footnotes = a.footnotes.clone();
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let i = &self.input;
        writeln!(o, "{} {} {}", self.tool, self.version, self.command).unwrap();
        writeln!(o, "F = {}", i.expression).unwrap();
        if let Some(d) = &i.domain {
            writeln!(o, "domain: {d}").unwrap();
        }
        if !i.t_samples.is_empty() {
            writeln!(o, "t samples: {}", i.t_samples.join(", ")).unwrap();
        }
        writeln!(o, "precision: {} bits, epsilon: {}", i.precision, i.epsilon).unwrap();
        if let Some(w) = &self.weights {
            let pairs: Vec<String> = w
                .vars
                .iter()
                .zip(&w.weights)
                .map(|(v, k)| format!("w({v}) = {k}"))
                .collect();
            writeln!(
                o,
                "weights ({}): {}, degree {}",
                w.detection,
                pairs.join(", "),
                w.degree
            )
            .unwrap();
            if w.swapped {
                writeln!(o, "normalized F = {}", w.normalized).unwrap();
            }
        }
        for s in &self.samples {
            render_sample(&mut o, s);
        }
        if let Some(m) = &self.membership {
            render_membership(&mut o, m);
        }
        if let Some(c) = &self.comparison {
            writeln!(
                o,
                "\nHP comparison t = {} vs t = {}: {}",
                c.a.t, c.b.t, c.outcome
            )
            .unwrap();
            render_hp(&mut o, &c.a);
            render_hp(&mut o, &c.b);
        }
        if let Some(v) = &self.verdict {
            write!(o, "\nverdict: {}", v.label).unwrap();
            if let Some(t) = &v.t {
                write!(o, " at t = {t}").unwrap();
            }
            o.push('\n');
            if let Some(w) = &v.witness {
                writeln!(
                    o,
                    "  witness: k[{}] = {}, k[{}] = {}",
                    w.i,
                    w.k_i.render(),
                    w.j,
                    w.k_j.render()
                )
                .unwrap();
            }
            for r in &v.reasons {
                writeln!(o, "  reason: {r}").unwrap();
            }
        }
        for c in &self.conditions {
            writeln!(o, "condition: {c}").unwrap();
        }
        for (k, f) in self.footnotes.iter().enumerate() {
            writeln!(o, "[{}] {f}", k + 1).unwrap();
        }
        o
    }
}

fn render_hp(o: &mut String, h: &HPDoc) {
    for e in &h.entries {
        writeln!(
            o,
            "    a = {} (mult {}): c = {}",
            e.a.render(),
            e.multiplicity,
            e.c.render()
        )
        .unwrap();
    }
    for (i, r) in &h.ratios {
        writeln!(o, "    c[{i}]/c[anchor] = {}", r.render()).unwrap();
    }
}

fn render_sample(o: &mut String, s: &SampleDoc) {
    let origin = if s.generated { " (generated)" } else { "" };
    writeln!(o, "\nt = {}{origin}", s.t).unwrap();
    writeln!(o, "  isolated: {}", s.isolated).unwrap();
    if let Some(m) = &s.milnor {
        writeln!(
            o,
            "  Milnor number: {} (dimension {}, formula {}), orbit codimension {}",
            m.mu, m.method_dimension, m.method_formula, m.orbit_codim
        )
        .unwrap();
    }
    if let Some(p) = &s.polar {
        writeln!(o, "  polar curve {} = 0, p(a) = {}", p.polar, p.p).unwrap();
        writeln!(
            o,
            "  branches: {} (squarefree {}, y-axis order {})",
            p.root_count, p.squarefree, p.x_axis_order
        )
        .unwrap();
    }
    if let Some(k) = &s.k {
        for (i, b) in k.branches.iter().enumerate() {
            let kv = match &b.k {
                KValueDoc::Value { k } => k.render(),
                KValueDoc::Degenerate => "undefined (F_y = 0)".into(),
                KValueDoc::Unresolved => "unresolved".into(),
            };
            writeln!(
                o,
                "  k[{i}]: a = {} (mult {}), k = {kv}",
                b.a.render(),
                b.multiplicity
            )
            .unwrap();
        }
        let status = match &k.status {
            KStatusDoc::AllEqual => "all equal".to_string(),
            KStatusDoc::Unequal { witness } => {
                format!("unequal (k[{}] != k[{}])", witness.i, witness.j)
            }
            KStatusDoc::Undecided { pairs } => format!("undecided on {} pair(s)", pairs.len()),
            KStatusDoc::Degenerate { branches } => format!("degenerate on branches {branches:?}"),
        };
        writeln!(o, "  k-condition: {status}").unwrap();
    }
    if let Some(h) = &s.hp {
        writeln!(o, "  HP coefficients:").unwrap();
        render_hp(o, h);
    }
    if let Some(r) = &s.reduced {
        match r {
            ReducedDoc::NotApplicable { reason } => {
                writeln!(o, "  reduced path: not applicable ({reason})").unwrap()
            }
            ReducedDoc::Success {
                k_common,
                cofactor,
                residual_is_zero,
                ..
            } => {
                let u: Vec<String> = cofactor.iter().map(|(m, c)| format!("{c}*{m}")).collect();
                let u = if u.is_empty() {
                    "0".into()
                } else {
                    u.join(" + ")
                };
                writeln!(o, "  reduced path: F_t - ({k_common}) y F_y = u F_x with u = {u}; R = 0: {residual_is_zero}").unwrap()
            }
            ReducedDoc::Failed { k_common } => {
                writeln!(o, "  reduced path: failed for k = {k_common}").unwrap()
            }
        }
    }
    for n in &s.notes {
        writeln!(o, "  note: {n}").unwrap();
    }
}

fn render_membership(o: &mut String, m: &MembershipDoc) {
    writeln!(
        o,
        "\nmembership of {} in {}: {}",
        m.target,
        m.ideal,
        if m.member { "member" } else { "not a member" }
    )
    .unwrap();
    if let Some(c) = &m.certificate {
        writeln!(o, "  ({}) * target =", c.denominator).unwrap();
        for mu in &c.multipliers {
            writeln!(o, "    + ({}) * {}", mu.numerator, mu.generator).unwrap();
        }
        if !c.exceptional_t.is_empty() {
            writeln!(o, "  exceptional t: {}", c.exceptional_t.join(", ")).unwrap();
        }
    }
    if let Some(n) = &m.non_membership {
        writeln!(
            o,
            "  degree {} piece: dimension {}, span rank {}, residual [{}]",
            n.degree,
            n.piece_dimension,
            n.span_rank,
            n.residual.join(", ")
        )
        .unwrap();
    }
    for c in &m.exceptional_checks {
        writeln!(o, "  at exceptional t = {}: member {}", c.t, c.member).unwrap();
    }
    for c in &m.random_checks {
        writeln!(o, "  at random t = {}: member {}", c.t, c.member).unwrap();
    }
    for c in &m.sample_checks {
        writeln!(o, "  at t = {}: member {}", c.t, c.member).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::{analyze_family, corpus};

    #[test]
    fn corpus_documents_round_trip() {
        for spec in corpus() {
            let a = analyze_family(&spec).unwrap();
            let doc = ReportDocument::from_analysis(&a);
            let back = ReportDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc, "{}", spec.name);
        }
    }

    #[test]
    fn balls_carry_center_and_radius() {
        let b = CBall::with_radius(
            &GaussRat::new(Rat::new(1.into(), 4.into()), Rat::from_integer((-3).into())),
            &Rat::new(1.into(), 1024.into()),
            64,
        );
        let json = serde_json::to_value(Number::ball(&b)).unwrap();
        assert_eq!(json["kind"], "ball");
        assert_eq!(json["re"], "1/4");
        assert_eq!(json["im"], "-3");
        assert_eq!(json["radius"], "1/1024");
    }

    #[test]
    fn text_repeats_json_numbers() {
        let spec = corpus()
            .into_iter()
            .find(|s| s.name == "henry-parusinski")
            .unwrap();
        let doc = ReportDocument::from_analysis(&analyze_family(&spec).unwrap());
        let text = doc.to_text();
        for needle in ["-2/31", "2/33", "31/32", "33/32", "FailsKCondition"] {
            assert!(text.contains(needle), "{needle}");
            assert!(doc.to_json().contains(needle), "{needle}");
        }
    }
}
