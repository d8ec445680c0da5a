//! Rational functions in the parameter `t` over Q.

use std::fmt;

use super::rat::Rat;
use super::ring::{Domain, Field, Ring};
use super::unipoly::{CoeffDisplay, UniPoly};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly<Rat>,
    den: UniPoly<Rat>,
}

impl RatFunc {
    pub fn new(num: UniPoly<Rat>, den: UniPoly<Rat>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::from_poly(UniPoly::zero());
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact_poly(&g).expect("gcd divides numerator");
        let mut d = den.div_exact_poly(&g).expect("gcd divides denominator");
        let lc = d.lead();
        let inv = lc.inv().expect("nonzero leading coefficient");
        n = n.scale(&inv);
        d = d.scale(&inv);
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: UniPoly<Rat>) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::constant(<Rat as Ring>::one_elem()),
        }
    }

    pub fn num(&self) -> &UniPoly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<Rat> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at `t0`, `None` when `t0` is a pole.
    pub fn eval<K: Field>(&self, t0: &K, embed: impl Fn(&Rat) -> K) -> Option<K> {
        let n = self.num.map(&embed).eval(t0);
        let d = self.den.map(&embed).eval(t0);
        n.div_ref(&d)
    }
}

impl Ring for RatFunc {
    fn zero_elem() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one_elem() -> Self {
        RatFunc::from_poly(UniPoly::constant(<Rat as Ring>::one_elem()))
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Domain for RatFunc {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_ref(other)
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl CoeffDisplay for RatFunc {
    fn render(&self) -> (String, bool) {
        let n = self.num.display_in("t");
        if self.is_polynomial() {
            let compound = self
                .num
                .coeffs()
                .iter()
                .filter(|c| !c.is_zero_elem())
                .count()
                > 1;
            (n, compound)
        } else {
            let d = self.den.display_in("t");
            (format!("({n})/({d})"), true)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.render().0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}

/// Monic gcd over Q(t) of two polynomials with rational-function coefficients.
///
/// Denominators are cleared, content is split off, and the primitive parts are
/// combined with the subresultant sequence over Q[t] before normalizing back.
pub fn gcd_over_qt(p: &UniPoly<RatFunc>, q: &UniPoly<RatFunc>) -> UniPoly<RatFunc> {
    let lift = |u: &UniPoly<RatFunc>| -> UniPoly<UniPoly<Rat>> {
        let common =
            u.coeffs()
                .iter()
                .fold(UniPoly::constant(<Rat as Ring>::one_elem()), |acc, c| {
                    let g = acc.gcd(c.den());
                    acc.mul(c.den()).div_exact_poly(&g).expect("lcm")
                });
        u.map(|c| {
            c.num().mul(
                &common
                    .div_exact_poly(c.den())
                    .expect("denominator divides lcm"),
            )
        })
    };
    let g = lift(p).subresultant_gcd(&lift(q));
    g.map(|c| RatFunc::from_poly(c.clone())).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat::int;

    fn tpoly(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn rf(cs: &[i64]) -> RatFunc {
        RatFunc::from_poly(tpoly(cs))
    }

    #[test]
    fn normalizes() {
        let r = RatFunc::new(tpoly(&[-2, 2]), tpoly(&[-3, 0, 3]));
        // 2(t-1) / 3(t-1)(t+1) = (2/3) / (t+1)
        assert_eq!(r.den(), &tpoly(&[1, 1]));
        assert_eq!(r.num().coeff(0), crate::expr::rat::rat(2, 3));
    }

    #[test]
    fn gcd_over_fraction_field() {
        // gcd(3a^2 - 3t^2, 6a) = 1 over Q(t)
        let p = UniPoly::new(vec![rf(&[0, 0, -3]), rf(&[0]), rf(&[3])]);
        let q = UniPoly::new(vec![rf(&[0]), rf(&[6])]);
        assert_eq!(gcd_over_qt(&p, &q), UniPoly::constant(RatFunc::one_elem()));
        // gcd((a - t)(a + 1), (a - t)(a - 2t)) = a - t
        let a_minus_t = UniPoly::new(vec![rf(&[0, -1]), rf(&[1])]);
        let p = a_minus_t.mul(&UniPoly::new(vec![rf(&[1]), rf(&[1])]));
        let q = a_minus_t.mul(&UniPoly::new(vec![rf(&[0, -2]), rf(&[1])]));
        assert_eq!(gcd_over_qt(&p, &q), a_minus_t);
        assert_eq!(gcd_over_qt(&p, &UniPoly::zero()), p.monic());
    }
}
