//! Family analysis: weights, isolated singularity, the k-condition at sampled
//! parameter values, tangent-ideal membership over Q(t), and the reduced
//! polar cofactor check, combined into one verdict.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::mpoly::{MPoly, Monomial, Var};
use crate::expr::parse::{parse, ParseError};
use crate::expr::rat::{parse_rat, GaussRat, Rat};
use crate::expr::ring::Ring;
use crate::expr::unipoly::UniPoly;
use crate::grading::{detect_weights, graded_basis, GradingError, WeightDetection, WeightSystem};
use crate::invariants::{hp_coefficients, k_values, HPReport, KReport, KStatus, KWitness};
use crate::linalg::{solve_columns, Solve};
use crate::localalg::{
    eval_t, graded_membership, isolated_check, membership_at, milnor, tf_gens, ExceptionalT,
    LocalAlgError, Membership, MembershipCertificate, MilnorData, NonMembership,
};
use crate::polar::{branch_roots, PolarDecomposition, PolarError};
use crate::roots::RootConfig;

const SAMPLE_SEED: u64 = 0x6765_726d_6c61_6221;
const GENERATED_SAMPLES: usize = 3;

/// The region `U` of parameter values, as far as it can be read from the note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamDomain {
    /// `|t| < radius`, optionally with `t ≠ 0`.
    Disk { radius: Rat, punctured: bool },
    /// `t ≠ 0`.
    PuncturedPlane,
    /// No note, or a note this parser does not understand.
    Unspecified,
}

impl ParamDomain {
    pub fn parse(note: &str) -> ParamDomain {
        let s: String = note.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "t!=0" || s == "t≠0" || s == "0<|t|" {
            return ParamDomain::PuncturedPlane;
        }
        let (rest, punctured) = match s.strip_prefix("0<") {
            Some(r) => (r, true),
            None => (s.as_str(), false),
        };
        match rest.strip_prefix("|t|<").map(parse_rat) {
            Some(Ok(radius)) if radius.is_positive() => ParamDomain::Disk { radius, punctured },
            _ => ParamDomain::Unspecified,
        }
    }

    /// `None` when the domain is unspecified.
    pub fn contains(&self, t: &GaussRat) -> Option<bool> {
        match self {
            ParamDomain::Disk { radius, punctured } => {
                let n = t.norm_sqr();
                Some(n < radius * radius && !(*punctured && n.is_zero()))
            }
            ParamDomain::PuncturedPlane => Some(!t.is_zero_elem()),
            ParamDomain::Unspecified => None,
        }
    }

    /// Radius used for generated samples.
    fn sampling_radius(&self) -> Rat {
        match self {
            ParamDomain::Disk { radius, .. } => radius.clone(),
            _ => Rat::from_integer(BigInt::from(1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub source: String,
    pub f: MPoly,
    pub domain_note: Option<String>,
    pub t_samples: Vec<GaussRat>,
    pub config: RootConfig,
    pub allow_constant: bool,
}

impl FamilySpec {
    pub fn new(name: &str, source: &str) -> Result<FamilySpec, ParseError> {
        Ok(FamilySpec {
            name: name.to_string(),
            source: source.to_string(),
            f: parse(source)?,
            domain_note: None,
            t_samples: Vec::new(),
            config: RootConfig::default(),
            allow_constant: false,
        })
    }

    pub fn domain(mut self, note: &str) -> Self {
        self.domain_note = Some(note.to_string());
        self
    }

    pub fn samples(mut self, ts: &[GaussRat]) -> Self {
        self.t_samples = ts.to_vec();
        self
    }

    pub fn param_domain(&self) -> ParamDomain {
        self.domain_note
            .as_deref()
            .map_or(ParamDomain::Unspecified, ParamDomain::parse)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedPathResult {
    NotApplicable {
        reason: String,
    },
    /// `F_t − k·y·F_y = u·F_x` at `t0`, verified exactly.
    Success {
        t0: GaussRat,
        k_common: GaussRat,
        cofactor: Vec<(Monomial, GaussRat)>,
        residual_is_zero: bool,
        u_vanishes_at_origin: bool,
    },
    Failed {
        t0: GaussRat,
        k_common: GaussRat,
    },
}

impl ReducedPathResult {
    pub fn applicable(&self) -> bool {
        !matches!(self, ReducedPathResult::NotApplicable { .. })
    }
}

fn gauss_poly(p: &MPoly, t0: &GaussRat) -> std::collections::BTreeMap<Monomial, GaussRat> {
    eval_t(p, t0)
}

/// Solves `F_t − k·y·F_y = u·F_x` for `u` of weighted degree `w1` at `t0`.
pub fn reduced_path_check(
    f: &MPoly,
    w: &WeightSystem,
    decomp: &PolarDecomposition,
    k: &KReport,
) -> ReducedPathResult {
    if !decomp.squarefree {
        return ReducedPathResult::NotApplicable {
            reason: "F_x is not squarefree".into(),
        };
    }
    let Some(k_common) = k.k_common.clone() else {
        let reason = if k.all_equal() {
            "the common k-value is not known exactly"
        } else {
            "the k-condition does not hold at this sample"
        };
        return ReducedPathResult::NotApplicable {
            reason: reason.into(),
        };
    };
    let (x, y) = decomp.vars;
    let t0 = &decomp.t0;
    let ft = gauss_poly(&f.derive(Var::T), t0);
    let yfy = gauss_poly(&f.derive(y).mul(&MPoly::var(y)), t0);
    let fx = gauss_poly(&f.derive(x), t0);
    let mut r = ft;
    for (m, c) in yfy {
        let e = r.entry(m).or_insert_with(GaussRat::zero_elem);
        *e = e.sub_ref(&k_common.mul_ref(&c));
    }
    r.retain(|_, c| !c.is_zero_elem());
    let w1 = w.weights[0];
    let u_basis = graded_basis(w, w1).monomials();
    let target = graded_basis(w, w.degree).monomials();
    let columns: Vec<Vec<GaussRat>> = u_basis
        .iter()
        .map(|m| {
            let mut col = vec![GaussRat::zero_elem(); target.len()];
            for (mono, c) in &fx {
                let k = target
                    .iter()
                    .position(|t| *t == mono.mul(m))
                    .expect("u·F_x has degree d");
                col[k] = c.clone();
            }
            col
        })
        .collect();
    let rhs: Vec<GaussRat> = target
        .iter()
        .map(|m| r.get(m).cloned().unwrap_or_else(GaussRat::zero_elem))
        .collect();
    match solve_columns(&columns, &rhs) {
        Solve::Inconsistent { .. } => ReducedPathResult::Failed {
            t0: t0.clone(),
            k_common,
        },
        Solve::Solution(sol) => {
            let cofactor: Vec<(Monomial, GaussRat)> = u_basis
                .into_iter()
                .zip(sol)
                .filter(|(_, c)| !c.is_zero_elem())
                .collect();
            // Exact resubstitution of u·F_x against R.
            let mut prod = std::collections::BTreeMap::new();
            for (m, c) in &cofactor {
                for (mono, d) in &fx {
                    let e = prod.entry(mono.mul(m)).or_insert_with(GaussRat::zero_elem);
                    *e = e.add_ref(&c.mul_ref(d));
                }
            }
            prod.retain(|_, c: &mut GaussRat| !c.is_zero_elem());
            assert_eq!(prod, r, "reduced-path cofactor must resubstitute");
            ReducedPathResult::Success {
                t0: t0.clone(),
                k_common,
                residual_is_zero: r.is_empty(),
                u_vanishes_at_origin: cofactor.iter().all(|(m, _)| *m != Monomial::one()),
                cofactor,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub t0: GaussRat,
    pub generated: bool,
    pub in_domain: Option<bool>,
    pub isolated: bool,
    pub milnor: Option<MilnorData>,
    pub polar: Option<PolarDecomposition>,
    pub k: Option<KReport>,
    pub hp: Option<HPReport>,
    pub reduced: Option<ReducedPathResult>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Caveat {
    Homogeneous,
    NotWeightedHomogeneous,
    AmbiguousWeights,
    NonIsolated {
        t0: GaussRat,
    },
    AxisPolarComponent {
        t0: GaussRat,
    },
    UndecidedComparison {
        t0: GaussRat,
    },
    DegenerateBranch {
        t0: GaussRat,
    },
    ReducedPathFailed {
        t0: GaussRat,
    },
    /// Generic non-membership, yet `F_t ∈ TF` at this special value.
    MemberAtSpecialT {
        t0: GaussRat,
    },
    RadicalHypothesisUnchecked,
    StrongBiLipschitzNotEvaluated,
}

impl std::fmt::Display for Caveat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Caveat::Homogeneous => f.write_str("weights are homogeneous; the criteria need weighted homogeneous but not homogeneous germs"),
            Caveat::NotWeightedHomogeneous => f.write_str("F is not weighted homogeneous"),
            Caveat::AmbiguousWeights => f.write_str("the weight system is not unique; the smallest one was used"),
            Caveat::NonIsolated { t0 } => write!(f, "non-isolated singularity at t = {t0}"),
            Caveat::AxisPolarComponent { t0 } => write!(f, "the polar set has a component along y = 0 at t = {t0}; it is left out of the k-comparison"),
            Caveat::UndecidedComparison { t0 } => write!(f, "k-values could not be separated or confirmed equal at t = {t0} at this precision"),
            Caveat::DegenerateBranch { t0 } => write!(f, "F_y vanishes on a polar branch at t = {t0}"),
            Caveat::ReducedPathFailed { t0 } => write!(f, "F_t - k y F_y is not a multiple of F_x at t = {t0}"),
            Caveat::MemberAtSpecialT { t0 } => write!(f, "F_t lies in TF at the special value t = {t0}"),
            Caveat::RadicalHypothesisUnchecked => f.write_str("radical hypothesis on the ideal: UNCHECKED"),
            Caveat::StrongBiLipschitzNotEvaluated => f.write_str("strong bi-Lipschitz triviality: NOT EVALUATED"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    AnalyticallyTrivialGeneric { certificate: MembershipCertificate },
    FailsKCondition { t0: GaussRat, witness: KWitness },
    NotAnalyticallyTrivialByTangentCriterion { evidence: NonMembership },
    Inconclusive { reasons: Vec<Caveat> },
}

impl FamilyVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyVerdict::AnalyticallyTrivialGeneric { .. } => "AnalyticallyTrivialGeneric",
            FamilyVerdict::FailsKCondition { .. } => "FailsKCondition",
            FamilyVerdict::NotAnalyticallyTrivialByTangentCriterion { .. } => {
                "NotAnalyticallyTrivialByTangentCriterion"
            }
            FamilyVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraCheck {
    pub t0: GaussRat,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyAnalysis {
    pub spec: FamilySpec,
    pub domain: ParamDomain,
    pub detection: WeightDetection,
    /// Weights after putting the heavier variable first (two variables).
    pub weights: Option<WeightSystem>,
    /// Whether `x` and `y` were exchanged to get `w1 > w2`.
    pub swapped: bool,
    /// The family polynomial after that exchange.
    pub normalized: MPoly,
    pub samples: Vec<SampleReport>,
    pub membership: Option<Membership>,
    /// Membership re-tested at exceptional rational t and at random t.
    pub exceptional_checks: Vec<ExtraCheck>,
    pub random_checks: Vec<ExtraCheck>,
    pub verdict: FamilyVerdict,
    pub caveats: Vec<Caveat>,
    pub footnotes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("F does not depend on t; pass --allow-constant to analyze a constant family")]
    ConstantFamily,
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub const WEIGHT_ORDER_NOTE: &str = "The k-argument is applied with w1 > w2 (weight of x larger than weight of y). \
The statement of the polar proposition reads (w_2>w_1) while its proof uses w_1>w_2; this tool follows the proof.";

pub const TANGENT_NOTE: &str =
    "If f_t were analytically trivial, the curve t -> f_t would stay in one orbit, \
so its velocity F_t would lie in the orbit tangent space TF. F_t is not in TF for generic t.";

/// Deterministic rational samples inside the domain, avoiding `avoid`.
pub fn generated_samples(domain: &ParamDomain, avoid: &[GaussRat]) -> Vec<GaussRat> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let radius = domain.sampling_radius();
    let mut out: Vec<GaussRat> = Vec::new();
    let mut attempts = 0;
    while out.len() < GENERATED_SAMPLES && attempts < 10_000 {
        attempts += 1;
        let den: i64 = rng.gen_range(3..=29);
        let bound = (&radius * Rat::from_integer(BigInt::from(den)))
            .ceil()
            .to_integer();
        let bound: i64 = bound.try_into().unwrap_or(i64::MAX / 2).min(1 << 40);
        let num: i64 = rng.gen_range(-bound..=bound);
        if num == 0 {
            continue;
        }
        let t = GaussRat::real(Rat::new(BigInt::from(num), BigInt::from(den)));
        let inside = match domain {
            ParamDomain::Unspecified | ParamDomain::PuncturedPlane => {
                t.norm_sqr() < &radius * &radius
            }
            d => d.contains(&t) == Some(true),
        };
        if inside && !avoid.contains(&t) && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

fn normalize(f: &MPoly, w: &WeightSystem) -> (MPoly, WeightSystem, bool) {
    if w.n() == 2 && w.weights[0] < w.weights[1] {
        let (a, b) = (w.vars[0], w.vars[1]);
        (f.swap_vars(a, b), w.swapped(a, b), true)
    } else {
        (f.clone(), w.clone(), false)
    }
}

fn analyze_sample(
    f: &MPoly,
    w: &WeightSystem,
    t0: &GaussRat,
    plane: bool,
    cfg: &RootConfig,
    caveats: &mut Vec<Caveat>,
) -> Result<SampleReport, AnalysisError> {
    let mut report = SampleReport {
        t0: t0.clone(),
        generated: false,
        in_domain: None,
        isolated: false,
        milnor: None,
        polar: None,
        k: None,
        hp: None,
        reduced: None,
        notes: Vec::new(),
    };
    report.isolated =
        isolated_check(f, w, t0).map_err(|e| AnalysisError::Internal(e.to_string()))?;
    if !report.isolated {
        caveats.push(Caveat::NonIsolated { t0: t0.clone() });
        report
            .notes
            .push("non-isolated singularity; sample skipped".into());
        return Ok(report);
    }
    match milnor(f, w, Some(t0)) {
        Ok(m) => report.milnor = Some(m),
        Err(e @ LocalAlgError::MethodsDisagree { .. }) => {
            return Err(AnalysisError::Internal(e.to_string()))
        }
        Err(e) => report.notes.push(format!("Milnor number unavailable: {e}")),
    }
    if !plane {
        return Ok(report);
    }
    let decomp = match branch_roots(f, w, t0, cfg) {
        Ok(d) => d,
        Err(PolarError::Roots(e)) => {
            report
                .notes
                .push(format!("polar branches unavailable: {e}"));
            caveats.push(Caveat::UndecidedComparison { t0: t0.clone() });
            return Ok(report);
        }
        Err(e) => return Err(AnalysisError::Internal(e.to_string())),
    };
    if decomp.x_axis_order > 0 {
        caveats.push(Caveat::AxisPolarComponent { t0: t0.clone() });
    }
    if decomp.degenerate {
        report
            .notes
            .push("F_x vanishes identically at this t".into());
    }
    let k = k_values(f, &decomp, cfg);
    match &k.status {
        KStatus::Undecided { .. } => caveats.push(Caveat::UndecidedComparison { t0: t0.clone() }),
        KStatus::Degenerate { .. } => caveats.push(Caveat::DegenerateBranch { t0: t0.clone() }),
        _ => {}
    }
    let reduced = reduced_path_check(f, w, &decomp, &k);
    if let ReducedPathResult::Failed { t0, .. } = &reduced {
        caveats.push(Caveat::ReducedPathFailed { t0: t0.clone() });
    }
    report.hp = Some(hp_coefficients(f, &decomp));
    report.k = Some(k);
    report.reduced = Some(reduced);
    report.polar = Some(decomp);
    Ok(report)
}

pub fn analyze_family(spec: &FamilySpec) -> Result<FamilyAnalysis, AnalysisError> {
    let f = &spec.f;
    let domain = spec.param_domain();
    let constant = !f.depends_on(Var::T);
    if constant && !spec.allow_constant {
        return Err(AnalysisError::ConstantFamily);
    }
    let detection = detect_weights(f)?;
    let mut caveats = Vec::new();
    let mut footnotes = Vec::new();
    let (weights, homogeneous) = match &detection {
        WeightDetection::Weighted { system, ambiguous } => {
            if *ambiguous {
                caveats.push(Caveat::AmbiguousWeights);
            }
            (Some(system.clone()), false)
        }
        WeightDetection::Homogeneous { system, .. } => {
            caveats.push(Caveat::Homogeneous);
            (Some(system.clone()), true)
        }
        WeightDetection::NotWeightedHomogeneous => {
            caveats.push(Caveat::NotWeightedHomogeneous);
            (None, false)
        }
    };
    let mut analysis = FamilyAnalysis {
        spec: spec.clone(),
        domain: domain.clone(),
        detection: detection.clone(),
        weights: None,
        swapped: false,
        normalized: f.clone(),
        samples: Vec::new(),
        membership: None,
        exceptional_checks: Vec::new(),
        random_checks: Vec::new(),
        verdict: FamilyVerdict::Inconclusive {
            reasons: Vec::new(),
        },
        caveats: Vec::new(),
        footnotes: Vec::new(),
    };
    let Some(w0) = weights else {
        analysis.verdict = FamilyVerdict::Inconclusive {
            reasons: caveats.clone(),
        };
        analysis.caveats = caveats;
        return Ok(analysis);
    };
    let (g, w, swapped) = normalize(f, &w0);
    if swapped {
        footnotes.push(
            "x and y were exchanged so that the first variable carries the larger weight".into(),
        );
    }
    analysis.weights = Some(w.clone());
    analysis.swapped = swapped;
    analysis.normalized = g.clone();
    let plane = w.n() == 2 && !homogeneous;
    if plane {
        footnotes.push(WEIGHT_ORDER_NOTE.into());
    }

    // Membership first: its exceptional values are kept out of the generated samples.
    let membership = if homogeneous || constant {
        None
    } else {
        let gens = tf_gens(&g, &w).map_err(|e| AnalysisError::Internal(e.to_string()))?;
        Some(
            graded_membership(&g.derive(Var::T), &gens, &w)
                .map_err(|e| AnalysisError::Internal(e.to_string()))?,
        )
    };
    let exceptional: Vec<GaussRat> = match &membership {
        Some(Membership::Member(cert)) => cert
            .exceptional_t
            .iter()
            .filter_map(|e| match e {
                ExceptionalT::Rational(r) => Some(GaussRat::real(r.clone())),
                ExceptionalT::Algebraic(_) => None,
            })
            .collect(),
        _ => Vec::new(),
    };
    let mut avoid = spec.t_samples.clone();
    avoid.extend(exceptional.iter().cloned());
    let generated = generated_samples(&domain, &avoid);
    let mut k_failure: Option<(GaussRat, KWitness)> = None;
    let all_samples = spec
        .t_samples
        .iter()
        .map(|t| (t, false))
        .chain(generated.iter().map(|t| (t, true)));
    for (t0, is_generated) in all_samples {
        let mut s = analyze_sample(&g, &w, t0, plane, &spec.config, &mut caveats)?;
        s.generated = is_generated;
        s.in_domain = domain.contains(t0);
        if s.in_domain == Some(false) {
            s.notes
                .push("sample lies outside the declared domain".into());
        }
        if k_failure.is_none() {
            if let Some(wit) = s.k.as_ref().and_then(KReport::witness) {
                k_failure = Some((t0.clone(), wit.clone()));
            }
        }
        analysis.samples.push(s);
    }

    if w.n() > 2 {
        caveats.push(Caveat::RadicalHypothesisUnchecked);
    }
    let verdict = if homogeneous {
        FamilyVerdict::Inconclusive {
            reasons: vec![Caveat::Homogeneous],
        }
    } else if constant {
        FamilyVerdict::AnalyticallyTrivialGeneric {
            certificate: MembershipCertificate {
                target: MPoly::zero(),
                denominator: UniPoly::constant(Rat::one_elem()),
                multipliers: Vec::new(),
                exceptional_t: Vec::new(),
            },
        }
    } else {
        match (membership.clone().expect("computed above"), k_failure) {
            (Membership::Member(_), Some((t0, _))) => {
                return Err(AnalysisError::Internal(format!(
                    "F_t lies in TF generically, yet the k-condition fails at t = {t0}"
                )))
            }
            (Membership::Member(cert), None) => {
                let gens = tf_gens(&g, &w).map_err(|e| AnalysisError::Internal(e.to_string()))?;
                let ft = g.derive(Var::T);
                for t0 in &exceptional {
                    let member = membership_at(&ft, &gens, &w, t0)
                        .map_err(|e| AnalysisError::Internal(e.to_string()))?;
                    analysis.exceptional_checks.push(ExtraCheck {
                        t0: t0.clone(),
                        member,
                    });
                }
                for t0 in &generated {
                    let member = membership_at(&ft, &gens, &w, t0)
                        .map_err(|e| AnalysisError::Internal(e.to_string()))?;
                    if !member {
                        return Err(AnalysisError::Internal(format!(
                            "generic membership certificate does not specialize at t = {t0}"
                        )));
                    }
                    analysis.random_checks.push(ExtraCheck {
                        t0: t0.clone(),
                        member,
                    });
                }
                if caveats
                    .iter()
                    .any(|c| matches!(c, Caveat::ReducedPathFailed { .. }))
                {
                    FamilyVerdict::Inconclusive {
                        reasons: caveats
                            .iter()
                            .filter(|c| matches!(c, Caveat::ReducedPathFailed { .. }))
                            .cloned()
                            .collect(),
                    }
                } else {
                    FamilyVerdict::AnalyticallyTrivialGeneric { certificate: cert }
                }
            }
            (Membership::NotMember(_), Some((t0, witness))) => {
                FamilyVerdict::FailsKCondition { t0, witness }
            }
            (Membership::NotMember(evidence), None) => {
                let special = evidence
                    .residual
                    .iter()
                    .fold(UniPoly::zero(), |g: UniPoly<Rat>, r| g.gcd(r));
                if !special.is_constant() {
                    let gens =
                        tf_gens(&g, &w).map_err(|e| AnalysisError::Internal(e.to_string()))?;
                    let ft = g.derive(Var::T);
                    for r in special.rational_roots().unwrap_or_default() {
                        let t0 = GaussRat::real(r);
                        let member = membership_at(&ft, &gens, &w, &t0)
                            .map_err(|e| AnalysisError::Internal(e.to_string()))?;
                        if member && domain.contains(&t0) != Some(false) {
                            caveats.push(Caveat::MemberAtSpecialT { t0: t0.clone() });
                        }
                        analysis.exceptional_checks.push(ExtraCheck { t0, member });
                    }
                }
                footnotes.push(TANGENT_NOTE.into());
                if !plane {
                    caveats.push(Caveat::StrongBiLipschitzNotEvaluated);
                }
                FamilyVerdict::NotAnalyticallyTrivialByTangentCriterion { evidence }
            }
        }
    };
    if matches!(verdict, FamilyVerdict::FailsKCondition { .. }) {
        footnotes.push(
            "A single sampled t with unequal k-values shows the family is not strongly bi-Lipschitz trivial."
                .into(),
        );
    }
    let mut seen = Vec::new();
    for c in caveats {
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    analysis.membership = membership;
    analysis.verdict = verdict;
    analysis.caveats = seen;
    analysis.footnotes = footnotes;
    Ok(analysis)
}

fn q(s: &str) -> GaussRat {
    GaussRat::parse(s).expect("corpus literal")
}

/// The built-in families.
pub fn corpus() -> Vec<FamilySpec> {
    let spec = |name: &str, src: &str| FamilySpec::new(name, src).expect("corpus expression");
    vec![
        spec("whitney", "x*y*(x-y)*(x-t*y)")
            .domain("0<|t|<1")
            .samples(&[q("1/2"), q("1/3")]),
        spec("henry-parusinski", "x^3 + y^6 - 3*t^2*x*y^4")
            .domain("0<|t|<1/2")
            .samples(&[q("1/4"), q("1/3")]),
        spec("example-z5", "x^4 + y^4 + z^5 + t*x^2*y^2")
            .domain("|t|<1")
            .samples(&[q("0"), q("1/2")]),
        spec("control-y7", "x^3 + (1+t)*y^7")
            .domain("|t|<1")
            .samples(&[q("0"), q("1/2")]),
        spec("control-xy4", "x^3 + 3*t*x*y^4")
            .domain("0<|t|<1")
            .samples(&[q("1/2"), q("1/4")]),
        spec("numeric-control", "x^3 + y^6 + t*x*y^4")
            .domain("t != 0")
            .samples(&[q("-3"), q("1")]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat::{int, rat};

    fn find(name: &str) -> FamilySpec {
        corpus().into_iter().find(|s| s.name == name).unwrap()
    }

    #[test]
    fn domain_notes() {
        assert_eq!(
            ParamDomain::parse("0<|t|<1/2"),
            ParamDomain::Disk {
                radius: rat(1, 2),
                punctured: true
            }
        );
        assert_eq!(
            ParamDomain::parse(" |t| < 2 "),
            ParamDomain::Disk {
                radius: int(2),
                punctured: false
            }
        );
        assert_eq!(ParamDomain::parse("t != 0"), ParamDomain::PuncturedPlane);
        assert_eq!(ParamDomain::parse("near zero"), ParamDomain::Unspecified);
        let d = ParamDomain::parse("0<|t|<1/2");
        assert_eq!(d.contains(&q("1/4")), Some(true));
        assert_eq!(d.contains(&q("0")), Some(false));
        assert_eq!(d.contains(&q("1/2")), Some(false));
        assert_eq!(d.contains(&q("1/4+1/4*i")), Some(true));
    }

    #[test]
    fn generated_samples_are_deterministic_and_inside() {
        let d = ParamDomain::parse("0<|t|<1/2");
        let a = generated_samples(&d, &[]);
        assert_eq!(a, generated_samples(&d, &[]));
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|t| d.contains(t) == Some(true)));
        let avoid = vec![a[0].clone()];
        assert!(!generated_samples(&d, &avoid).contains(&a[0]));
    }

    #[test]
    fn hp_fails_k_condition() {
        let a = analyze_family(&find("henry-parusinski")).unwrap();
        let FamilyVerdict::FailsKCondition { t0, witness } = &a.verdict else {
            panic!("{:?}", a.verdict)
        };
        assert_eq!(*t0, q("1/4"));
        assert_eq!(witness.k_i.exact(), Some(&q("2/33")));
        assert_eq!(witness.k_j.exact(), Some(&q("-2/31")));
    }

    #[test]
    fn positive_control_is_trivial() {
        let a = analyze_family(&find("control-y7")).unwrap();
        let FamilyVerdict::AnalyticallyTrivialGeneric { certificate } = &a.verdict else {
            panic!("{:?}", a.verdict)
        };
        assert_eq!(
            certificate.exceptional_t,
            vec![ExceptionalT::Rational(int(-1))]
        );
        assert_eq!(a.random_checks.len(), 3);
        assert!(a.random_checks.iter().all(|c| c.member));
        let m = a.samples[0].milnor.as_ref().unwrap();
        assert_eq!((m.method_dimension, m.method_formula), (12, 12));
        assert!(a
            .samples
            .iter()
            .all(|s| matches!(s.reduced, Some(ReducedPathResult::NotApplicable { .. }))));
        // at t = -1 the family degenerates to x^3: membership fails there
        assert_eq!(
            a.exceptional_checks,
            vec![ExtraCheck {
                t0: q("-1"),
                member: false
            }]
        );
    }

    #[test]
    fn reduced_path_on_xy4_control() {
        let a = analyze_family(&find("control-xy4")).unwrap();
        assert!(matches!(
            a.verdict,
            FamilyVerdict::AnalyticallyTrivialGeneric { .. }
        ));
        for s in &a.samples {
            let k = s.k.as_ref().unwrap();
            let expected = GaussRat::real(Rat::from_integer(1.into()) / (int(4) * &s.t0.re));
            assert_eq!(k.k_common, Some(expected));
            let Some(ReducedPathResult::Success {
                residual_is_zero,
                cofactor,
                u_vanishes_at_origin,
                ..
            }) = &s.reduced
            else {
                panic!("{:?}", s.reduced)
            };
            assert!(*residual_is_zero && cofactor.is_empty() && *u_vanishes_at_origin);
        }
    }

    #[test]
    fn three_variable_example() {
        let a = analyze_family(&find("example-z5")).unwrap();
        assert!(matches!(
            a.verdict,
            FamilyVerdict::NotAnalyticallyTrivialByTangentCriterion { .. }
        ));
        assert!(a.caveats.contains(&Caveat::StrongBiLipschitzNotEvaluated));
        assert!(a.caveats.contains(&Caveat::RadicalHypothesisUnchecked));
        let m = a.samples[0].milnor.as_ref().unwrap();
        assert_eq!((m.mu, m.orbit_codim), (36, 38));
        // the non-membership residual vanishes at t = ±2, outside |t| < 1
        let special: Vec<&GaussRat> = a.exceptional_checks.iter().map(|c| &c.t0).collect();
        assert_eq!(special, vec![&q("-2"), &q("2")]);
        assert!(!a
            .caveats
            .iter()
            .any(|c| matches!(c, Caveat::MemberAtSpecialT { .. })));
    }

    #[test]
    fn special_values_inside_the_domain_are_flagged() {
        let spec = find("example-z5").domain("|t|<3");
        let a = analyze_family(&spec).unwrap();
        let flagged: Vec<&ExtraCheck> = a.exceptional_checks.iter().filter(|c| c.member).collect();
        for c in &flagged {
            assert!(a
                .caveats
                .contains(&Caveat::MemberAtSpecialT { t0: c.t0.clone() }));
        }
    }

    #[test]
    fn whitney_is_inconclusive() {
        let a = analyze_family(&find("whitney")).unwrap();
        assert_eq!(
            a.verdict,
            FamilyVerdict::Inconclusive {
                reasons: vec![Caveat::Homogeneous]
            }
        );
        assert_eq!(a.samples[0].milnor.as_ref().unwrap().mu, 9);
    }

    #[test]
    fn numeric_control() {
        let a = analyze_family(&find("numeric-control")).unwrap();
        let FamilyVerdict::FailsKCondition { t0, witness } = &a.verdict else {
            panic!("{:?}", a.verdict)
        };
        assert_eq!(*t0, q("-3"));
        assert!(witness.exact);
        let at_one = &a.samples[1];
        let w = at_one.k.as_ref().unwrap().witness().unwrap();
        assert!(!w.exact);
    }

    #[test]
    fn weights_are_swapped_when_y_is_heavier() {
        let spec = FamilySpec::new("swap", "y^3 + x^6 - 3*t^2*y*x^4")
            .unwrap()
            .samples(&[q("1/4")]);
        let a = analyze_family(&spec).unwrap();
        assert!(a.swapped);
        assert_eq!(a.weights.as_ref().unwrap().weights, vec![2, 1]);
        assert!(matches!(a.verdict, FamilyVerdict::FailsKCondition { .. }));
    }

    #[test]
    fn constant_family_needs_flag() {
        let spec = FamilySpec::new("c", "x^3 + y^5").unwrap();
        assert_eq!(analyze_family(&spec), Err(AnalysisError::ConstantFamily));
        let mut spec = spec;
        spec.allow_constant = true;
        let a = analyze_family(&spec).unwrap();
        assert!(matches!(
            a.verdict,
            FamilyVerdict::AnalyticallyTrivialGeneric { .. }
        ));
    }
}
