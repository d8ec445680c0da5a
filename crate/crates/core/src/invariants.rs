//! k-values along polar branches, Henry–Parusinski leading coefficients, and
//! the comparison of two family members by those coefficients.

use crate::ball::{pow2, CBall};
use crate::expr::mpoly::{MPoly, Var};
use crate::expr::rat::GaussRat;
use crate::expr::ring::{Field, Ring};
use crate::expr::unipoly::UniPoly;
use crate::grading::WeightSystem;
use crate::polar::{
    branch_roots, dehomogenize, AlgebraicCoeff, PolarBranch, PolarDecomposition, PolarError,
};
use crate::roots::{isolate_squarefree, RootConfig, RootValue};

/// Required shrink factor of a difference radius at doubled precision before
/// two enclosures are reported equal.
const SHRINK_BITS: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Unequal,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KEntry {
    Value(AlgebraicCoeff),
    /// `F_y(a, 1, t0) = 0`: the quotient is undefined.
    Degenerate,
    /// The enclosure of `F_y(a, 1, t0)` kept containing zero.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchK {
    pub a: AlgebraicCoeff,
    pub multiplicity: u32,
    pub k: KEntry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWitness {
    pub i: usize,
    pub j: usize,
    pub k_i: AlgebraicCoeff,
    pub k_j: AlgebraicCoeff,
    /// Both values exact; otherwise the difference ball excludes zero.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KStatus {
    AllEqual,
    Unequal(KWitness),
    Undecided { pairs: Vec<(usize, usize)> },
    Degenerate { branches: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KReport {
    pub t0: GaussRat,
    pub branches: Vec<BranchK>,
    pub status: KStatus,
    /// The polar set has a `{y = 0}` component, left out of the comparison.
    pub excluded_axis: bool,
    /// Exact common value when all k agree and one of them is exact.
    pub k_common: Option<GaussRat>,
}

impl KReport {
    pub fn all_equal(&self) -> bool {
        self.status == KStatus::AllEqual
    }

    pub fn witness(&self) -> Option<&KWitness> {
        match &self.status {
            KStatus::Unequal(w) => Some(w),
            _ => None,
        }
    }
}

/// Shared evaluation data for one decomposition.
struct KContext<'a> {
    ft: UniPoly<GaussRat>,
    fy: UniPoly<GaussRat>,
    decomp: &'a PolarDecomposition,
    cfg: &'a RootConfig,
}

impl KContext<'_> {
    /// k at `a` as an enclosure at precision `prec`, re-isolating the root.
    fn k_ball(&self, branch: &PolarBranch, k: &KEntry, prec: u32) -> Option<CBall> {
        match k {
            KEntry::Value(RootValue::Exact(v)) => Some(CBall::from_gauss(v, prec)),
            KEntry::Value(RootValue::Ball(b)) if b.precision() >= prec => Some(b.clone()),
            KEntry::Value(RootValue::Ball(_)) => {
                let a = refine_root(branch, self.cfg, prec)?;
                eval_quotient(&self.ft, &self.fy, &a)
            }
            _ => None,
        }
    }
}

fn eval_quotient(num: &UniPoly<GaussRat>, den: &UniPoly<GaussRat>, a: &CBall) -> Option<CBall> {
    CBall::eval_poly(num.coeffs(), a).div(&CBall::eval_poly(den.coeffs(), a))
}

/// Enclosure of the branch root at a higher precision.
pub fn refine_root(branch: &PolarBranch, cfg: &RootConfig, prec: u32) -> Option<CBall> {
    match &branch.a {
        RootValue::Exact(z) => Some(CBall::from_gauss(z, prec)),
        RootValue::Ball(old) => {
            let found = isolate_squarefree(&branch.factor, &cfg.with_precision(prec)).ok()?;
            found
                .into_iter()
                .map(|(v, _)| v.ball(prec))
                .find(|b| b.overlaps(old))
        }
    }
}

/// `num · den^{-1} mod q` when it is a constant: then it is the exact value
/// of `num/den` at every root of `q`.
fn constant_mod(
    num: &UniPoly<GaussRat>,
    den: &UniPoly<GaussRat>,
    q: &UniPoly<GaussRat>,
) -> Option<GaussRat> {
    let inv = den.inverse_mod(q)?;
    let r = num.mul(&inv).div_rem(q).1;
    r.is_constant().then(|| r.coeff(0))
}

fn branch_k(ctx: &KContext<'_>, b: &PolarBranch) -> KEntry {
    match &b.a {
        RootValue::Exact(a) => {
            let den = ctx.fy.eval(a);
            match ctx.ft.eval(a).div_ref(&den) {
                Some(v) => KEntry::Value(RootValue::Exact(v)),
                None => KEntry::Degenerate,
            }
        }
        RootValue::Ball(ball) => {
            let g = b.factor.gcd(&ctx.fy);
            if !g.is_constant() {
                let hits = isolate_squarefree(&g.monic(), ctx.cfg).unwrap_or_default();
                if hits
                    .iter()
                    .any(|(v, _)| v.ball(ball.precision()).overlaps(ball))
                {
                    return KEntry::Degenerate;
                }
            }
            if let Some(v) = constant_mod(&ctx.ft, &ctx.fy, &b.factor) {
                return KEntry::Value(RootValue::Exact(v));
            }
            let mut prec = ball.precision();
            for _ in 0..4 {
                let a = if prec == ball.precision() {
                    Some(ball.clone())
                } else {
                    refine_root(b, ctx.cfg, prec)
                };
                if let Some(k) = a.and_then(|a| eval_quotient(&ctx.ft, &ctx.fy, &a)) {
                    return KEntry::Value(RootValue::Ball(k));
                }
                prec *= 2;
            }
            KEntry::Unresolved
        }
    }
}

/// Ball equality policy: equal only if the difference contains zero and its
/// radius shrinks by `2^20` at doubled precision; unequal once a difference
/// excludes zero; otherwise undecided.
fn compare_pair(ctx: &KContext<'_>, i: usize, j: usize, ks: &[KEntry]) -> Comparison {
    let (bi, bj) = (&ctx.decomp.branches[i], &ctx.decomp.branches[j]);
    if let (KEntry::Value(RootValue::Exact(x)), KEntry::Value(RootValue::Exact(y))) =
        (&ks[i], &ks[j])
    {
        return if x == y {
            Comparison::Equal
        } else {
            Comparison::Unequal
        };
    }
    let prec = ctx.decomp.precision;
    let (Some(ki), Some(kj)) = (ctx.k_ball(bi, &ks[i], prec), ctx.k_ball(bj, &ks[j], prec)) else {
        return Comparison::Undecided;
    };
    let d1 = ki.sub(&kj);
    if d1.excludes_zero() {
        return Comparison::Unequal;
    }
    let (Some(ki2), Some(kj2)) = (
        ctx.k_ball(bi, &ks[i], 2 * prec),
        ctx.k_ball(bj, &ks[j], 2 * prec),
    ) else {
        return Comparison::Undecided;
    };
    let d2 = ki2.sub(&kj2);
    if d2.excludes_zero() {
        Comparison::Unequal
    } else if d2.radius() * pow2(SHRINK_BITS) <= *d1.radius() {
        Comparison::Equal
    } else {
        Comparison::Undecided
    }
}

/// `k_i = F_t(a_i, 1, t0) / F_y(a_i, 1, t0)` for every branch, and whether
/// they agree.
pub fn k_values(f: &MPoly, decomp: &PolarDecomposition, cfg: &RootConfig) -> KReport {
    let (x, y) = decomp.vars;
    let ctx = KContext {
        ft: dehomogenize(&f.derive(Var::T), x, y, &decomp.t0),
        fy: dehomogenize(&f.derive(y), x, y, &decomp.t0),
        decomp,
        cfg,
    };
    let ks: Vec<KEntry> = decomp.branches.iter().map(|b| branch_k(&ctx, b)).collect();
    let degenerate: Vec<usize> = (0..ks.len())
        .filter(|&i| ks[i] == KEntry::Degenerate)
        .collect();
    let mut undecided = Vec::new();
    let mut witness = None;
    'outer: for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            if matches!(ks[i], KEntry::Degenerate) || matches!(ks[j], KEntry::Degenerate) {
                continue;
            }
            match compare_pair(&ctx, i, j, &ks) {
                Comparison::Equal => {}
                Comparison::Undecided => undecided.push((i, j)),
                Comparison::Unequal => {
                    let (KEntry::Value(k_i), KEntry::Value(k_j)) = (&ks[i], &ks[j]) else {
                        unreachable!("unequal values are resolved")
                    };
                    witness = Some(KWitness {
                        i,
                        j,
                        k_i: k_i.clone(),
                        k_j: k_j.clone(),
                        exact: k_i.exact().is_some() && k_j.exact().is_some(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let status = if let Some(w) = witness {
        KStatus::Unequal(w)
    } else if !degenerate.is_empty() {
        KStatus::Degenerate {
            branches: degenerate,
        }
    } else if !undecided.is_empty() || ks.iter().any(|k| *k == KEntry::Unresolved) {
        KStatus::Undecided { pairs: undecided }
    } else {
        KStatus::AllEqual
    };
    let k_common = match status {
        KStatus::AllEqual => ks.iter().find_map(|k| match k {
            KEntry::Value(RootValue::Exact(v)) => Some(v.clone()),
            _ => None,
        }),
        _ => None,
    };
    KReport {
        t0: decomp.t0.clone(),
        branches: decomp
            .branches
            .iter()
            .zip(ks)
            .map(|(b, k)| BranchK {
                a: b.a.clone(),
                multiplicity: b.multiplicity,
                k,
            })
            .collect(),
        status,
        excluded_axis: decomp.x_axis_order > 0,
        k_common,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPEntry {
    pub a: AlgebraicCoeff,
    pub multiplicity: u32,
    /// `c = f_{t0}(a, 1)`.
    pub c: AlgebraicCoeff,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPReport {
    pub t0: GaussRat,
    pub entries: Vec<HPEntry>,
    /// First entry (canonical order) whose `c` is certainly nonzero.
    pub anchor: Option<usize>,
    /// `c_i / c_anchor` for entries with certainly nonzero `c`.
    pub ratios: Vec<(usize, AlgebraicCoeff)>,
    /// Entries with `c = 0` exactly.
    pub zero_branches: Vec<usize>,
    /// Entries whose enclosure of `c` still contains zero.
    pub possibly_zero: Vec<usize>,
}

fn is_certainly_nonzero(v: &AlgebraicCoeff) -> bool {
    match v {
        RootValue::Exact(z) => !z.is_zero_elem(),
        RootValue::Ball(b) => b.excludes_zero(),
    }
}

fn divide(a: &AlgebraicCoeff, b: &AlgebraicCoeff, prec: u32) -> Option<AlgebraicCoeff> {
    match (a, b) {
        (RootValue::Exact(x), RootValue::Exact(y)) => x.div_ref(y).map(RootValue::Exact),
        _ => a.ball(prec).div(&b.ball(prec)).map(RootValue::Ball),
    }
}

pub fn hp_coefficients(f: &MPoly, decomp: &PolarDecomposition) -> HPReport {
    let (x, y) = decomp.vars;
    let prec = decomp.precision;
    let f0 = dehomogenize(f, x, y, &decomp.t0);
    let entries: Vec<HPEntry> = decomp
        .branches
        .iter()
        .map(|b| {
            let c = match &b.a {
                RootValue::Exact(a) => RootValue::Exact(f0.eval(a)),
                RootValue::Ball(ball) => {
                    let one = UniPoly::constant(GaussRat::one_elem());
                    match constant_mod(&f0, &one, &b.factor) {
                        Some(v) => RootValue::Exact(v),
                        None => RootValue::Ball(CBall::eval_poly(f0.coeffs(), ball)),
                    }
                }
            };
            HPEntry {
                a: b.a.clone(),
                multiplicity: b.multiplicity,
                c,
            }
        })
        .collect();
    let anchor = entries.iter().position(|e| is_certainly_nonzero(&e.c));
    let ratios = match anchor {
        Some(k) => entries
            .iter()
            .enumerate()
            .filter(|(_, e)| is_certainly_nonzero(&e.c))
            .filter_map(|(i, e)| divide(&e.c, &entries[k].c, prec).map(|r| (i, r)))
            .collect(),
        None => Vec::new(),
    };
    let zero_branches = (0..entries.len())
        .filter(|&i| matches!(&entries[i].c, RootValue::Exact(z) if z.is_zero_elem()))
        .collect();
    let possibly_zero = (0..entries.len())
        .filter(|&i| matches!(&entries[i].c, RootValue::Ball(b) if b.contains_zero()))
        .collect();
    HPReport {
        t0: decomp.t0.clone(),
        entries,
        anchor,
        ratios,
        zero_branches,
        possibly_zero,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinction {
    Distinguished,
    NotDistinguished,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub a: HPReport,
    pub b: HPReport,
    pub outcome: Distinction,
}

fn may_equal(x: &AlgebraicCoeff, y: &AlgebraicCoeff, prec: u32) -> bool {
    match (x, y) {
        (RootValue::Exact(p), RootValue::Exact(q)) => p == q,
        _ => x.ball(prec).overlaps(&y.ball(prec)),
    }
}

fn mul(x: &AlgebraicCoeff, y: &AlgebraicCoeff, prec: u32) -> AlgebraicCoeff {
    match (x, y) {
        (RootValue::Exact(p), RootValue::Exact(q)) => RootValue::Exact(p.mul_ref(q)),
        _ => RootValue::Ball(x.ball(prec).mul(&y.ball(prec))),
    }
}

/// Kuhn's augmenting-path bipartite matching; `true` if perfect.
fn perfect_matching(n: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    fn augment(
        u: usize,
        n: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for v in 0..n {
            if edge(u, v) && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, n, edge, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|u| augment(u, n, &edge, &mut vec![false; n], &mut owner))
}

fn expand(r: &HPReport) -> Vec<AlgebraicCoeff> {
    r.entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.c.clone(), e.multiplicity as usize))
        .collect()
}

/// Whether the multisets `{c_i}` of two reports could agree up to a common
/// nonzero scale factor. `Distinguished` is returned only when every
/// candidate scaling is certainly excluded.
pub fn compare_hp(a: &HPReport, b: &HPReport, prec: u32) -> Distinction {
    let (ca, cb) = (expand(a), expand(b));
    if ca.len() != cb.len() {
        return Distinction::Distinguished;
    }
    let Some(anchor) = ca.iter().find(|c| is_certainly_nonzero(c)) else {
        let all_zero = |v: &[AlgebraicCoeff]| {
            v.iter()
                .all(|c| matches!(c, RootValue::Exact(z) if z.is_zero_elem()))
        };
        return if all_zero(&ca) && cb.iter().any(is_certainly_nonzero) {
            Distinction::Distinguished
        } else {
            Distinction::NotDistinguished
        };
    };
    for target in &cb {
        if !is_certainly_nonzero(target) {
            if matches!(target, RootValue::Exact(z) if z.is_zero_elem()) {
                continue;
            }
            return Distinction::NotDistinguished;
        }
        let Some(lambda) = divide(target, anchor, prec) else {
            return Distinction::NotDistinguished;
        };
        let scaled: Vec<AlgebraicCoeff> = ca.iter().map(|c| mul(&lambda, c, prec)).collect();
        if perfect_matching(ca.len(), |i, j| may_equal(&scaled[i], &cb[j], prec)) {
            return Distinction::NotDistinguished;
        }
    }
    Distinction::Distinguished
}

pub fn compare_members(
    f: &MPoly,
    w: &WeightSystem,
    t0_a: &GaussRat,
    t0_b: &GaussRat,
    cfg: &RootConfig,
) -> Result<ComparisonReport, PolarError> {
    let da = branch_roots(f, w, t0_a, cfg)?;
    let db = branch_roots(f, w, t0_b, cfg)?;
    let a = hp_coefficients(f, &da);
    let b = hp_coefficients(f, &db);
    let outcome = compare_hp(&a, &b, cfg.precision);
    Ok(ComparisonReport { a, b, outcome })
}
