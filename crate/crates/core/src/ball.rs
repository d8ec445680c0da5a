//! Complex ball arithmetic with dyadic centers.
//!
//! Centers are exact dyadic rationals rounded to a relative precision after
//! every operation; the rounding error is pushed into the radius, which is
//! itself kept as an upward-rounded dyadic. Zero tests compare the exact
//! squared norm of the center against the squared radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::expr::rat::{GaussRat, Rat};

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> Rat {
    let mag = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::one(), mag)
    }
}

/// Rough `log2 |x|`, off by at most one; `x` nonzero.
fn log2_approx(x: &Rat) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn scale_exponent(x: &Rat, prec: u32) -> i64 {
    prec as i64 - log2_approx(x)
}

/// Nearest dyadic with about `prec` significant bits, and a bound on the error.
pub fn round_dyadic(x: &Rat, prec: u32) -> (Rat, Rat) {
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let k = scale_exponent(x, prec);
    if x.denom().is_one() && k >= 0 {
        return (x.clone(), Rat::zero());
    }
    let scaled = x * pow2(k);
    if scaled.denom().is_one() {
        return (x.clone(), Rat::zero());
    }
    let m = scaled.round();
    (m * pow2(-k), pow2(-k - 1))
}

/// Dyadic `≥ x` with about `prec` significant bits.
pub fn round_up(x: &Rat, prec: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let k = scale_exponent(x, prec);
    (x * pow2(k)).ceil() * pow2(-k)
}

/// Dyadic `≤ x` with about `prec` significant bits.
pub fn round_down(x: &Rat, prec: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let k = scale_exponent(x, prec);
    (x * pow2(k)).floor() * pow2(-k)
}

/// Dyadic upper bound for `sqrt(q)`, `q ≥ 0`.
pub fn sqrt_up(q: &Rat, prec: u32) -> Rat {
    if q.is_zero() {
        return Rat::zero();
    }
    let k = prec as i64 - log2_approx(q) / 2;
    let scaled = (q * pow2(2 * k)).ceil().to_integer();
    let s = scaled.sqrt();
    let s = if &s * &s == scaled { s } else { s + 1 };
    Rat::from_integer(s) * pow2(-k)
}

/// Dyadic lower bound for `sqrt(q)`, `q ≥ 0`.
pub fn sqrt_down(q: &Rat, prec: u32) -> Rat {
    if q.is_zero() {
        return Rat::zero();
    }
    let k = prec as i64 - log2_approx(q) / 2;
    let scaled = (q * pow2(2 * k)).floor().to_integer();
    Rat::from_integer(scaled.sqrt()) * pow2(-k)
}

/// Closed disk `{ z : |z − center| ≤ radius }`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CBall {
    re: Rat,
    im: Rat,
    rad: Rat,
    prec: u32,
}

impl CBall {
    /// Ball around `z`, exact when `z` is dyadic at this precision.
    pub fn from_gauss(z: &GaussRat, prec: u32) -> CBall {
        let (re, e1) = round_dyadic(&z.re, prec);
        let (im, e2) = round_dyadic(&z.im, prec);
        CBall {
            re,
            im,
            rad: round_up(&(e1 + e2), 32),
            prec,
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> CBall {
        CBall::from_gauss(&GaussRat::real(r.clone()), prec)
    }

    /// Ball with the given center and radius, both rounded outward.
    pub fn with_radius(center: &GaussRat, radius: &Rat, prec: u32) -> CBall {
        let mut b = CBall::from_gauss(center, prec);
        b.rad = round_up(&(&b.rad + radius.abs()), 32);
        b
    }

    pub fn zero(prec: u32) -> CBall {
        CBall {
            re: Rat::zero(),
            im: Rat::zero(),
            rad: Rat::zero(),
            prec,
        }
    }

    pub fn center(&self) -> GaussRat {
        GaussRat::new(self.re.clone(), self.im.clone())
    }

    pub fn center_re(&self) -> &Rat {
        &self.re
    }

    pub fn center_im(&self) -> &Rat {
        &self.im
    }

    pub fn radius(&self) -> &Rat {
        &self.rad
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn center_norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn contains_zero(&self) -> bool {
        self.center_norm_sqr() <= &self.rad * &self.rad
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    pub fn contains_point(&self, z: &GaussRat) -> bool {
        let dre = &z.re - &self.re;
        let dim = &z.im - &self.im;
        dre.clone() * dre + dim.clone() * dim <= &self.rad * &self.rad
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &CBall) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let dre = &other.re - &self.re;
        let dim = &other.im - &self.im;
        let gap = &self.rad - &other.rad;
        dre.clone() * dre + dim.clone() * dim <= gap.clone() * gap
    }

    pub fn overlaps(&self, other: &CBall) -> bool {
        self.sub(other).contains_zero()
    }

    /// Upper bound for `|z|` over the ball.
    pub fn abs_upper(&self) -> Rat {
        sqrt_up(&self.center_norm_sqr(), 64) + &self.rad
    }

    /// Lower bound for `|z|` over the ball, clamped at zero.
    pub fn abs_lower(&self) -> Rat {
        let c = sqrt_down(&self.center_norm_sqr(), 64);
        if c > self.rad {
            c - &self.rad
        } else {
            Rat::zero()
        }
    }

    fn prec_with(&self, other: &CBall) -> u32 {
        self.prec.min(other.prec)
    }

    fn rounded(re: Rat, im: Rat, rad: Rat, prec: u32) -> CBall {
        let (re, e1) = round_dyadic(&re, prec);
        let (im, e2) = round_dyadic(&im, prec);
        CBall {
            re,
            im,
            rad: round_up(&(rad + e1 + e2), 32),
            prec,
        }
    }

    pub fn add(&self, other: &CBall) -> CBall {
        CBall::rounded(
            &self.re + &other.re,
            &self.im + &other.im,
            &self.rad + &other.rad,
            self.prec_with(other),
        )
    }

    pub fn sub(&self, other: &CBall) -> CBall {
        CBall::rounded(
            &self.re - &other.re,
            &self.im - &other.im,
            &self.rad + &other.rad,
            self.prec_with(other),
        )
    }

    pub fn neg(&self) -> CBall {
        CBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &CBall) -> CBall {
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        // |c1 e2 + c2 e1 + e1 e2| ≤ |c1| r2 + |c2| r1 + r1 r2, with |c| ≤ |re| + |im|.
        let m1 = self.re.abs() + self.im.abs();
        let m2 = other.re.abs() + other.im.abs();
        let rad = &m1 * &other.rad + &m2 * &self.rad + &self.rad * &other.rad;
        CBall::rounded(re, im, rad, self.prec_with(other))
    }

    pub fn mul_gauss(&self, z: &GaussRat) -> CBall {
        self.mul(&CBall::from_gauss(z, self.prec))
    }

    /// `1/z` over the ball; `None` when the ball may contain zero.
    pub fn inv(&self) -> Option<CBall> {
        let lower = self.re.abs().max(self.im.abs());
        if lower <= self.rad {
            return None;
        }
        let n = self.center_norm_sqr();
        let re = &self.re / &n;
        let im = -&self.im / &n;
        // |1/(c+e) − 1/c| = |e| / (|c| |c+e|) ≤ r / (L (L − r)).
        let rad = &self.rad / (&lower * (&lower - &self.rad));
        Some(CBall::rounded(re, im, rad, self.prec))
    }

    pub fn div(&self, other: &CBall) -> Option<CBall> {
        other.inv().map(|inv| self.mul(&inv))
    }

    pub fn pow(&self, e: u32) -> CBall {
        let mut acc = CBall::from_rat(&Rat::one(), self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation of a polynomial with exact coefficients.
    pub fn eval_poly(coeffs: &[GaussRat], at: &CBall) -> CBall {
        let mut acc = CBall::zero(at.prec);
        for c in coeffs.iter().rev() {
            acc = acc.mul(at).add(&CBall::from_gauss(c, at.prec));
        }
        acc
    }

    /// Union hull: smallest ball (with this center choice) covering both.
    pub fn hull(&self, other: &CBall) -> CBall {
        let re = (&self.re + &other.re) / Rat::from_integer(BigInt::from(2));
        let im = (&self.im + &other.im) / Rat::from_integer(BigInt::from(2));
        let mid = CBall {
            re,
            im,
            rad: Rat::zero(),
            prec: self.prec_with(other),
        };
        let r = self.sub(&mid).abs_upper().max(other.sub(&mid).abs_upper());
        CBall::rounded(mid.re, mid.im, r, mid.prec)
    }

    pub fn to_f64_parts(&self) -> (f64, f64, f64) {
        let f = |r: &Rat| r.to_f64().unwrap_or(f64::NAN);
        (f(&self.re), f(&self.im), f(&self.rad))
    }

    /// Canonical order by center: real part, then imaginary part.
    pub fn center_cmp(&self, other: &CBall) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im, rad) = self.to_f64_parts();
        if im == 0.0 && self.im.is_zero() {
            write!(f, "[{re:.17e} +/- {rad:.3e}]")
        } else {
            write!(f, "[{re:.17e}{im:+.17e}*i +/- {rad:.3e}]")
        }
    }
}

impl fmt::Debug for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CBall{self}")
    }
}
