//! Certified isolation of the complex roots of a univariate polynomial with
//! Gaussian-rational coefficients.
//!
//! Multiplicities come from Yun's squarefree decomposition, never from the
//! numerics. Rational roots of real factors are found exactly; the rest are
//! approximated by Aberth–Ehrlich iteration (a double-precision pass, then
//! dyadic numbers at the working precision) and then
//! enclosed by Weierstrass disks `D(z_i, n·|W_i|)` with
//! `W_i = q(z_i) / (lc · Π_{j≠i} (z_i − z_j))`. Each connected component of
//! the union of these disks holds as many roots as disks, so pairwise
//! disjoint disks isolate one root each. The disk radii are computed from
//! exact rational values, so the enclosures are rigorous.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{pow2, round_dyadic, sqrt_up, CBall};
use crate::expr::rat::{GaussRat, Rat};
use crate::expr::ring::{Field, Ring};
use crate::expr::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootConfig {
    /// Working precision in bits.
    pub precision: u32,
    /// Disks whose union is narrower than this collapse into one cluster.
    pub epsilon: Rat,
    /// Precision is doubled on failure up to this many bits.
    pub max_precision: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            precision: 128,
            epsilon: pow2(-40),
            max_precision: 4096,
        }
    }
}

impl RootConfig {
    pub fn with_precision(&self, precision: u32) -> RootConfig {
        RootConfig {
            precision,
            max_precision: self.max_precision.max(precision),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("cannot isolate the roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("root isolation did not converge for a factor of degree {degree} up to {bits} bits")]
    NotIsolated { degree: usize, bits: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootValue {
    Exact(GaussRat),
    Ball(CBall),
}

impl RootValue {
    pub fn ball(&self, prec: u32) -> CBall {
        match self {
            RootValue::Exact(z) => CBall::from_gauss(z, prec),
            RootValue::Ball(b) => b.clone(),
        }
    }

    pub fn exact(&self) -> Option<&GaussRat> {
        match self {
            RootValue::Exact(z) => Some(z),
            RootValue::Ball(_) => None,
        }
    }

    fn sort_key(&self) -> (Rat, Rat) {
        match self {
            RootValue::Exact(z) => (z.re.clone(), z.im.clone()),
            RootValue::Ball(b) => (b.center_re().clone(), b.center_im().clone()),
        }
    }
}

/// One distinct root (or an epsilon-cluster of roots).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub value: RootValue,
    pub multiplicity: u32,
    /// Monic squarefree factor of the input that this root annihilates.
    pub factor: UniPoly<GaussRat>,
    /// Number of distinct roots of `factor` merged into this entry (1 unless clustered).
    pub cluster_size: u32,
}

/// All distinct complex roots of `p` with exact multiplicities, sorted by
/// real part and then imaginary part of the (center) value.
pub fn isolate_roots(p: &UniPoly<GaussRat>, cfg: &RootConfig) -> Result<Vec<Root>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.is_constant() {
            continue;
        }
        let factor = factor.monic();
        for (value, cluster_size) in isolate_squarefree(&factor, cfg)? {
            out.push(Root {
                value,
                multiplicity: mult * cluster_size,
                factor: factor.clone(),
                cluster_size,
            });
        }
    }
    out.sort_by(|a, b| a.value.sort_key().cmp(&b.value.sort_key()));
    Ok(out)
}

fn is_real_poly(q: &UniPoly<GaussRat>) -> bool {
    q.coeffs().iter().all(GaussRat::is_real)
}

/// Roots of a squarefree polynomial, each with its cluster count.
pub fn isolate_squarefree(
    q: &UniPoly<GaussRat>,
    cfg: &RootConfig,
) -> Result<Vec<(RootValue, u32)>, RootError> {
    let mut out = Vec::new();
    let mut rest = q.monic();
    if is_real_poly(&rest) {
        let real = rest.map(|c| c.re.clone());
        if let Some(rs) = real.rational_roots() {
            for r in rs {
                let lin = UniPoly::new(vec![GaussRat::real(-r.clone()), GaussRat::one_elem()]);
                rest = rest.div_exact_poly(&lin).expect("rational root divides");
                out.push((RootValue::Exact(GaussRat::real(r)), 1));
            }
        }
    }
    match rest.degree() {
        None | Some(0) => return Ok(out),
        Some(1) => {
            let z = rest
                .coeff(0)
                .neg_ref()
                .div_ref(&rest.coeff(1))
                .expect("degree one");
            out.push((RootValue::Exact(z), 1));
            return Ok(out);
        }
        _ => {}
    }
    let snap = GaussianSnap::new(&rest);
    let mut prec = cfg.precision;
    let mut approx = initial_guesses(&rest);
    let mut polish = true;
    if let Some(z) = aberth_f64(&rest, &approx) {
        approx = z;
        polish = false;
    }
    loop {
        if polish {
            approx = aberth(&rest, approx, prec);
        }
        polish = true;
        if let Some(found) = certify(&rest, &approx, cfg) {
            for (ball, count) in found {
                let value = match (count, snap.try_snap(&rest, &ball)) {
                    (1, Some(z)) => RootValue::Exact(z),
                    _ => RootValue::Ball(ball),
                };
                out.push((value, count));
            }
            return Ok(out);
        }
        if prec >= cfg.max_precision {
            return Err(RootError::NotIsolated {
                degree: rest.degree().unwrap_or(0),
                bits: prec,
            });
        }
        prec = (prec * 2).min(cfg.max_precision);
    }
}

fn round_gauss(z: &GaussRat, prec: u32) -> GaussRat {
    GaussRat::new(round_dyadic(&z.re, prec).0, round_dyadic(&z.im, prec).0)
}

/// Loose upper bound `|re| + |im|`.
fn abs_bound(z: &GaussRat) -> Rat {
    z.re.abs() + z.im.abs()
}

/// Points `r·ω^k` with `ω = (3 + 4i)/5`, on a circle of Cauchy-bound
/// radius. `ω` has an irrational angle and exact powers, so the guesses are
/// the same on every platform.
fn initial_guesses(q: &UniPoly<GaussRat>) -> Vec<GaussRat> {
    let n = q.degree().unwrap_or(0);
    let lc = q.lead();
    let radius = q.coeffs()[..n]
        .iter()
        .map(|c| abs_bound(&c.div_ref(&lc).expect("nonzero lead")))
        .fold(Rat::zero(), |a, b| a.max(b));
    let radius = GaussRat::real((Rat::one() + radius) / Rat::from_integer(BigInt::from(2)));
    let five = Rat::from_integer(BigInt::from(5));
    let omega = GaussRat::new(
        Rat::from_integer(BigInt::from(3)) / &five,
        Rat::from_integer(BigInt::from(4)) / &five,
    );
    let mut w = omega.clone();
    (0..n)
        .map(|_| {
            let z = round_gauss(&radius.mul_ref(&w), 53);
            w = round_gauss(&w.mul_ref(&omega), 64);
            z
        })
        .collect()
}

fn to_c64(z: &GaussRat) -> Option<Complex64> {
    let c = Complex64::new(z.re.to_f64()?, z.im.to_f64()?);
    (c.re.is_finite() && c.im.is_finite()).then_some(c)
}

/// Double-precision Aberth pass; only produces starting points.
fn aberth_f64(q: &UniPoly<GaussRat>, start: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let coeffs: Vec<Complex64> = q.coeffs().iter().map(to_c64).collect::<Option<_>>()?;
    let mut z: Vec<Complex64> = start.iter().map(to_c64).collect::<Option<_>>()?;
    let horner = |cs: &[Complex64], x: Complex64| {
        cs.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    };
    let dcoeffs: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..z.len() {
            let p = horner(&coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = p / horner(&dcoeffs, z[i]);
            let sum: Complex64 = (0..z.len())
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * sum);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[i] -= step;
            moved = moved.max(step.norm_sqr() / z[i].norm_sqr().max(1.0));
        }
        if moved < 1e-30 {
            break;
        }
    }
    Some(
        z.iter()
            .map(|c| {
                Some(GaussRat::new(
                    Rat::from_float(c.re)?,
                    Rat::from_float(c.im)?,
                ))
            })
            .collect::<Option<_>>()?,
    )
}

fn aberth(q: &UniPoly<GaussRat>, mut z: Vec<GaussRat>, prec: u32) -> Vec<GaussRat> {
    let dq = q.derivative();
    let n = z.len();
    let tol = pow2(-(prec as i64) + 8);
    let mut settled_rounds = 0;
    for _ in 0..(40 + 8 * prec as usize) {
        let mut converged = true;
        for i in 0..n {
            let pz = q.eval(&z[i]);
            if pz.is_zero_elem() {
                continue;
            }
            let dz = dq.eval(&z[i]);
            let newton = match pz.div_ref(&dz) {
                Some(v) => round_gauss(&v, prec),
                None => {
                    z[i] = round_gauss(&z[i].add_ref(&GaussRat::new(pow2(-20), pow2(-21))), prec);
                    converged = false;
                    continue;
                }
            };
            let mut sum = GaussRat::zero_elem();
            for j in 0..n {
                if j != i {
                    if let Some(inv) = z[i].sub_ref(&z[j]).inv() {
                        sum = round_gauss(&sum.add_ref(&inv), prec);
                    }
                }
            }
            let denom = GaussRat::one_elem().sub_ref(&newton.mul_ref(&sum));
            let step = match newton.div_ref(&denom) {
                Some(v) => round_gauss(&v, prec),
                None => newton,
            };
            let scale = Rat::one().max(abs_bound(&z[i]));
            if abs_bound(&step) > &tol * scale {
                converged = false;
            }
            z[i] = round_gauss(&z[i].sub_ref(&step), prec);
        }
        if converged {
            settled_rounds += 1;
            if settled_rounds >= 2 {
                break;
            }
        }
    }
    z
}

/// Weierstrass disks, clustered into components; `None` when some component
/// is wider than epsilon or some disk is too large.
fn certify(q: &UniPoly<GaussRat>, z: &[GaussRat], cfg: &RootConfig) -> Option<Vec<(CBall, u32)>> {
    let n = z.len();
    let lc = q.lead();
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul_ref(&z[i].sub_ref(&z[j]));
            }
        }
        let w = q.eval(&z[i]).div_ref(&den)?;
        let r = sqrt_up(&w.norm_sqr(), 64) * Rat::from_integer(BigInt::from(n));
        disks.push(CBall::with_radius(&z[i], &r, cfg.precision.max(64)));
    }
    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks[i].overlaps(&disks[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = Vec::new();
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| find(&mut parent, i) == root).collect();
        if members.is_empty() {
            continue;
        }
        let ball = members[1..]
            .iter()
            .fold(disks[members[0]].clone(), |acc, &i| acc.hull(&disks[i]));
        if ball.radius() > &cfg.epsilon {
            return None;
        }
        out.push((ball, members.len() as u32));
    }
    Some(out)
}

/// Exact Gaussian-rational root recovery: any such root of a polynomial with
/// Gaussian-integer coefficients is `m / a_n` for a Gaussian integer `m`.
struct GaussianSnap {
    lead: GaussRat,
}

impl GaussianSnap {
    fn new(q: &UniPoly<GaussRat>) -> Self {
        let lcm = q.coeffs().iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(c.re.denom()).lcm(c.im.denom())
        });
        let scale = GaussRat::real(Rat::from_integer(lcm));
        GaussianSnap {
            lead: q.lead().mul_ref(&scale),
        }
    }

    fn try_snap(&self, q: &UniPoly<GaussRat>, ball: &CBall) -> Option<GaussRat> {
        let m = ball.center().mul_ref(&self.lead);
        let m = GaussRat::new(
            Rat::from_integer(m.re.round().to_integer()),
            Rat::from_integer(m.im.round().to_integer()),
        );
        let z = m.div_ref(&self.lead)?;
        (ball.contains_point(&z) && q.eval(&z).is_zero_elem()).then_some(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat::{int, rat};

    fn gpoly(cs: &[Rat]) -> UniPoly<GaussRat> {
        UniPoly::new(cs.iter().map(|c| GaussRat::real(c.clone())).collect())
    }

    #[test]
    fn exact_rational_roots() {
        // 3a^2 - 3/16
        let roots = isolate_roots(
            &gpoly(&[rat(-3, 16), int(0), int(3)]),
            &RootConfig::default(),
        )
        .unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.value.exact().cloned().unwrap())
            .collect();
        assert_eq!(
            values,
            vec![GaussRat::real(rat(-1, 4)), GaussRat::real(rat(1, 4))]
        );
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn double_root_from_structure() {
        let roots =
            isolate_roots(&gpoly(&[int(0), int(0), int(3)]), &RootConfig::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[0].value, RootValue::Exact(GaussRat::real(int(0))));
    }

    #[test]
    fn irrational_roots_are_certified_balls() {
        // 3a^2 + 1: roots ±i/sqrt(3)
        let cfg = RootConfig::default();
        let roots = isolate_roots(&gpoly(&[int(1), int(0), int(3)]), &cfg).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let RootValue::Ball(b) = &r.value else {
                panic!("irrational root")
            };
            assert!(b.radius() <= &cfg.epsilon);
            // 3 z^2 + 1 must vanish somewhere in the ball
            let v = CBall::eval_poly(
                &[
                    GaussRat::real(int(1)),
                    GaussRat::real(int(0)),
                    GaussRat::real(int(3)),
                ],
                b,
            );
            assert!(v.contains_zero());
        }
        assert!(roots[0].value.ball(128).center_im() < roots[1].value.ball(128).center_im());
    }

    #[test]
    fn gaussian_roots_snap_exactly() {
        // a^2 + 1/4 has roots ±i/2
        let roots =
            isolate_roots(&gpoly(&[rat(1, 4), int(0), int(1)]), &RootConfig::default()).unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.value.exact().cloned().unwrap())
            .collect();
        assert_eq!(
            values,
            vec![
                GaussRat::new(int(0), rat(-1, 2)),
                GaussRat::new(int(0), rat(1, 2))
            ]
        );
    }

    #[test]
    fn complex_coefficients() {
        // (a - i)(a - 2) = a^2 - (2 + i) a + 2i
        let p = UniPoly::new(vec![
            GaussRat::new(int(0), int(2)),
            GaussRat::new(int(-2), int(-1)),
            GaussRat::one_elem(),
        ]);
        let roots = isolate_roots(&p, &RootConfig::default()).unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.value.exact().cloned().unwrap())
            .collect();
        assert_eq!(values, vec![GaussRat::i(), GaussRat::real(int(2))]);
    }

    #[test]
    fn higher_degree_and_count() {
        // a^5 - 2: five irrational roots
        let p = gpoly(&[int(-2), int(0), int(0), int(0), int(0), int(1)]);
        let roots = isolate_roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<u32>(), 5);
        for r in &roots {
            let b = r.value.ball(128);
            let coeffs: Vec<GaussRat> = p.coeffs().to_vec();
            assert!(CBall::eval_poly(&coeffs, &b).contains_zero());
        }
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            isolate_roots(&UniPoly::zero(), &RootConfig::default()),
            Err(RootError::ZeroPolynomial)
        );
    }
}
