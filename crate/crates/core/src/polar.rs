//! The polar curve `{F_x = 0}` of a two-variable family and its branches
//! `γ(s) = (a·s^{w1}, s^{w2})` at a fixed parameter value.

use crate::ball::CBall;
use crate::expr::mpoly::{MPoly, Var};
use crate::expr::rat::GaussRat;
use crate::expr::ratfunc::gcd_over_qt;
use crate::expr::ring::Ring;
use crate::expr::unipoly::UniPoly;
use crate::grading::WeightSystem;
use crate::roots::{isolate_roots, RootConfig, RootError, RootValue};

/// A branch coefficient: exact Gaussian rational or certified enclosure.
pub type AlgebraicCoeff = RootValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolarError {
    #[error("F does not depend on {0}; the polar curve is undefined")]
    ConstantInX(Var),
    #[error("branch parametrization needs exactly two spatial variables, found {0}")]
    NotPlane(usize),
    #[error("branch parametrization needs w1 > w2, found ({0}, {1})")]
    WeightOrder(u32, u32),
    #[error("F is not w-homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Roots(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarBranch {
    pub a: AlgebraicCoeff,
    pub multiplicity: u32,
    pub weights: (u32, u32),
    /// Monic squarefree factor of `p` vanishing at `a`.
    pub factor: UniPoly<GaussRat>,
    pub cluster_size: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarDecomposition {
    pub t0: GaussRat,
    /// `(x, y)` roles; `x` carries the larger weight.
    pub vars: (Var, Var),
    pub polar: MPoly,
    /// `p(a) = F_x(a, 1, t0)`.
    pub p: UniPoly<GaussRat>,
    pub branches: Vec<PolarBranch>,
    /// Exponent of `y` dividing `F_x`: the order of `{y = 0}` as a component.
    pub x_axis_order: u32,
    /// A root `a = 0` is present, i.e. the branch runs along `{x = 0}`.
    pub y_axis_in_branches: bool,
    /// `F_x` squarefree as a polynomial in `x` over Q(t).
    pub squarefree: bool,
    /// `p` vanished identically at `t0`.
    pub degenerate: bool,
    pub precision: u32,
}

pub fn polar_poly(f: &MPoly, x: Var) -> Result<MPoly, PolarError> {
    let fx = f.derive(x);
    if fx.is_zero() {
        return Err(PolarError::ConstantInX(x));
    }
    Ok(fx)
}

/// `q(a, 1)` at `t = t0`, as a polynomial in `a`.
pub fn dehomogenize(q: &MPoly, x: Var, y: Var, t0: &GaussRat) -> UniPoly<GaussRat> {
    q.substitute(&[(y, MPoly::one())])
        .to_uni_at(x, t0)
        .expect("only x and t remain after setting y = 1")
}

/// Whether `F_x` is squarefree as a polynomial in `x` over Q(t)[y]: at most a
/// simple `y` factor and no repeated factor of the dehomogenization.
fn squarefree_over_qt(fx: &MPoly, x: Var, y: Var, x_axis_order: u32) -> bool {
    if x_axis_order > 1 {
        return false;
    }
    let p = fx
        .substitute(&[(y, MPoly::one())])
        .to_uni_over_ratfunc(x)
        .expect("only x and t remain");
    gcd_over_qt(&p, &p.derivative()).is_constant()
}

pub fn branch_roots(
    f: &MPoly,
    w: &WeightSystem,
    t0: &GaussRat,
    cfg: &RootConfig,
) -> Result<PolarDecomposition, PolarError> {
    if w.n() != 2 {
        return Err(PolarError::NotPlane(w.n()));
    }
    let (w1, w2) = (w.weights[0], w.weights[1]);
    if w1 <= w2 {
        return Err(PolarError::WeightOrder(w1, w2));
    }
    if w.homogeneous_degree(f).is_none() {
        return Err(PolarError::NotHomogeneous);
    }
    let (x, y) = (w.vars[0], w.vars[1]);
    let fx = polar_poly(f, x)?;
    let x_axis_order = fx.terms().map(|(m, _)| m.exp(y)).min().unwrap_or(0);
    let squarefree = squarefree_over_qt(&fx, x, y, x_axis_order);
    let p = dehomogenize(&fx, x, y, t0);
    let mut out = PolarDecomposition {
        t0: t0.clone(),
        vars: (x, y),
        polar: fx,
        p: p.clone(),
        branches: Vec::new(),
        x_axis_order,
        y_axis_in_branches: false,
        squarefree,
        degenerate: p.is_zero(),
        precision: cfg.precision,
    };
    if p.is_zero() {
        return Ok(out);
    }
    for root in isolate_roots(&p, cfg)? {
        if root.value.exact().is_some_and(Ring::is_zero_elem) {
            out.y_axis_in_branches = true;
        }
        out.branches.push(PolarBranch {
            a: root.value,
            multiplicity: root.multiplicity,
            weights: (w1, w2),
            factor: root.factor,
            cluster_size: root.cluster_size,
        });
    }
    Ok(out)
}

impl PolarDecomposition {
    /// Σ multiplicities over branches; equals `deg p` when `p ≠ 0`.
    pub fn root_count(&self) -> u32 {
        self.branches.iter().map(|b| b.multiplicity).sum()
    }
}

impl PolarBranch {
    /// Enclosure of `p(a)`, which is zero on a true branch.
    pub fn residual(&self, p: &UniPoly<GaussRat>, prec: u32) -> CBall {
        CBall::eval_poly(p.coeffs(), &self.a.ball(prec))
    }
}

/// A point of a branch: exact when the coefficient is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchPoint {
    Exact(GaussRat, GaussRat),
    Ball(CBall, CBall),
}

fn gauss_pow(z: &GaussRat, e: u32) -> GaussRat {
    (0..e).fold(GaussRat::one_elem(), |acc, _| acc.mul_ref(z))
}

/// `γ(s) = (a·s^{w1}, s^{w2})` at each sample.
pub fn branch_curve(b: &PolarBranch, s_samples: &[GaussRat], prec: u32) -> Vec<BranchPoint> {
    let (w1, w2) = b.weights;
    s_samples
        .iter()
        .map(|s| match &b.a {
            RootValue::Exact(a) => {
                BranchPoint::Exact(a.mul_ref(&gauss_pow(s, w1)), gauss_pow(s, w2))
            }
            RootValue::Ball(ball) => {
                let sb = CBall::from_gauss(s, prec);
                BranchPoint::Ball(ball.mul(&sb.pow(w1)), sb.pow(w2))
            }
        })
        .collect()
}
