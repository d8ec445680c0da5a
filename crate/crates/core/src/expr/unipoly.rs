//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Used for the dehomogenized polar polynomial `p(a) = F_x(a, 1, t0)`, for
//! polynomials in the parameter `t`, and for gcd and squarefree computations.

use std::fmt;

use super::rat::{fmt_rat, GaussRat, Rat};
use super::ring::{Domain, Field, Ring};

/// Coefficient domain that also knows a gcd (up to units).
pub trait GcdDomain: Domain {
    fn gcd_ref(&self, other: &Self) -> Self;
}

/// `coeffs[k]` is the coefficient of `var^k`; trailing zeros are never stored,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Ring> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c·var^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero_elem(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn var() -> Self {
        UniPoly::monomial(K::one_elem(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero_elem)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero_elem)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| self.coeff(k).add_ref(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| self.coeff(k).sub_ref(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(Ring::neg_ref).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![K::zero_elem(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::constant(K::one_elem());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero_elem(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    /// Applies `f` coefficientwise.
    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut m = K::zero_elem();
            for _ in 0..k {
                m = m.add_ref(c);
            }
            out.push(m);
        }
        UniPoly::new(out)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let Some(da) = self.degree() else {
            return UniPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lead();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let s = UniPoly::monomial(r.lead(), dr - db);
            r = r.scale(&lb).sub(&s.mul(b));
            e -= 1;
        }
        let mut f = K::one_elem();
        for _ in 0..e {
            f = f.mul_ref(&lb);
        }
        r.scale(&f)
    }
}

impl<K: Domain> UniPoly<K> {
    /// Exact division of every coefficient by `c`.
    pub fn div_scalar_exact(&self, c: &K) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()
            .map(UniPoly::new)
    }
}

impl<K: GcdDomain> UniPoly<K> {
    /// Gcd of the coefficients.
    pub fn content(&self) -> K {
        self.coeffs
            .iter()
            .fold(K::zero_elem(), |acc, c| acc.gcd_ref(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_scalar_exact(&c)
            .expect("content divides every coefficient")
    }

    /// Gcd over the fraction field of `K`, returned as a primitive polynomial
    /// over `K`, computed with the subresultant remainder sequence.
    pub fn subresultant_gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        if b.is_zero() {
            return a.primitive_part();
        }
        a = a.primitive_part();
        b = b.primitive_part();
        let mut g = K::one_elem();
        let mut h = K::one_elem();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_part();
            }
            if r.degree() == Some(0) {
                return UniPoly::constant(K::one_elem());
            }
            let mut hd = K::one_elem();
            for _ in 0..delta {
                hd = hd.mul_ref(&h);
            }
            let divisor = g.mul_ref(&hd);
            a = b;
            b = r
                .div_scalar_exact(&divisor)
                .expect("subresultant division is exact");
            g = a.lead();
            // h <- g^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                let mut gd = K::one_elem();
                for _ in 0..delta {
                    gd = gd.mul_ref(&g);
                }
                let mut hp = K::one_elem();
                for _ in 1..delta {
                    hp = hp.mul_ref(&h);
                }
                gd.div_exact(&hp).expect("subresultant h update is exact")
            };
        }
    }
}

impl<K: Field> UniPoly<K> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Euclidean division `self = q·b + r` with `deg r < deg b`.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = b.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut q = vec![K::zero_elem(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lead().mul_ref(&inv);
            q[dr - db] = c.clone();
            r = r.sub(&UniPoly::monomial(c, dr - db).mul(b));
        }
        (UniPoly::new(q), r)
    }

    /// Exact quotient when `b` divides `self`.
    pub fn div_exact_poly(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(p, 0) = monic(p)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        // Extended Euclid tracking the cofactor of `self`.
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m).1);
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::constant(K::one_elem()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.lead().inv()?;
        Some(s0.scale(&inv).div_rem(m).1)
    }

    /// Squarefree decomposition (Yun): monic pairwise coprime squarefree
    /// factors with their multiplicities, ascending multiplicity. Constant
    /// input yields no factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let a = self.monic();
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.div_exact_poly(&c).expect("gcd divides");
        let mut y = da.div_exact_poly(&c).expect("gcd divides");
        let mut z = y.sub(&w.derivative());
        let mut mult = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), mult));
            }
            w = w.div_exact_poly(&g).expect("gcd divides");
            y = z.div_exact_poly(&g).expect("gcd divides");
            z = y.sub(&w.derivative());
            mult += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }
}

impl<K: Ring> Ring for UniPoly<K> {
    fn zero_elem() -> Self {
        UniPoly::zero()
    }
    fn one_elem() -> Self {
        UniPoly::constant(K::one_elem())
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl<K: Field> Domain for UniPoly<K> {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.div_exact_poly(other)
    }
}

impl<K: Field> GcdDomain for UniPoly<K> {
    fn gcd_ref(&self, other: &Self) -> Self {
        self.gcd(other)
    }
}

impl GcdDomain for Rat {
    fn gcd_ref(&self, other: &Self) -> Self {
        if Ring::is_zero_elem(self) && Ring::is_zero_elem(other) {
            <Rat as Ring>::zero_elem()
        } else {
            <Rat as Ring>::one_elem()
        }
    }
}

/// Largest |coefficient| (after clearing denominators) for which the rational
/// root test enumerates divisors.
const RATIONAL_ROOT_COEFF_LIMIT: u64 = 1 << 40;

impl UniPoly<Rat> {
    /// Integer polynomial with the same roots: denominators cleared and content removed.
    pub fn integer_primitive(&self) -> Vec<num_bigint::BigInt> {
        use num_integer::Integer;
        let lcm = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::from(0), |acc, a| acc.gcd(a));
        if num_traits::Zero::is_zero(&g) {
            return ints;
        }
        ints.into_iter().map(|a| a / &g).collect()
    }

    /// Distinct rational roots by the rational root theorem, ascending. Returns
    /// `None` when the coefficients are too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<Rat>> {
        use num_traits::{Signed, ToPrimitive, Zero};
        if self.is_zero() {
            return None;
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // Strip the root at zero first so the constant term is nonzero.
        if Zero::is_zero(&p.coeff(0)) {
            roots.push(Rat::zero());
            let k = p.coeffs.iter().position(|c| !Zero::is_zero(c)).unwrap_or(0);
            p = UniPoly::new(p.coeffs[k..].to_vec());
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = p.integer_primitive();
            let a0 = ints[0]
                .abs()
                .to_u64()
                .filter(|v| *v <= RATIONAL_ROOT_COEFF_LIMIT)?;
            let an = ints
                .last()
                .expect("nonzero")
                .abs()
                .to_u64()
                .filter(|v| *v <= RATIONAL_ROOT_COEFF_LIMIT)?;
            for q in divisors(an) {
                for num in divisors(a0) {
                    for sign in [1i64, -1] {
                        let r = Rat::new(
                            num_bigint::BigInt::from(num as i128 * sign as i128),
                            num_bigint::BigInt::from(q),
                        );
                        if Zero::is_zero(&p.eval(&r)) && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Renders a coefficient for display inside a polynomial.
pub trait CoeffDisplay {
    /// Returns the coefficient text and whether it needs parentheses in a product.
    fn render(&self) -> (String, bool);
}

impl CoeffDisplay for Rat {
    fn render(&self) -> (String, bool) {
        (fmt_rat(self), false)
    }
}

impl CoeffDisplay for GaussRat {
    fn render(&self) -> (String, bool) {
        let s = self.to_string();
        let compound = !num_traits::Zero::is_zero(&self.re) && !num_traits::Zero::is_zero(&self.im);
        (s, compound)
    }
}

impl<K: Ring + CoeffDisplay> UniPoly<K> {
    /// Human-readable rendering, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elem() {
                continue;
            }
            let (txt, paren) = c.render();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if mono.is_empty() {
                if paren {
                    format!("({txt})")
                } else {
                    txt
                }
            } else if c.is_one_elem() {
                mono
            } else if paren {
                format!("({txt})*{mono}")
            } else if txt == "-1" {
                format!("-{mono}")
            } else {
                format!("{txt}*{mono}")
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, p) in parts.into_iter().enumerate() {
            if i == 0 {
                out.push_str(&p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
        out
    }
}

impl<K: fmt::Debug> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("UniPoly").field(&self.coeffs).finish()
    }
}

impl<K: Ring + CoeffDisplay> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("v"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat::{int, rat};

    fn q(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let p = q(&[2, 0, 4]);
        assert_eq!(
            p.gcd(&UniPoly::zero()),
            UniPoly::new(vec![rat(1, 2), int(0), int(1)])
        );
    }

    #[test]
    fn gcd_common_factor() {
        // gcd(a^2, a) = a
        assert_eq!(q(&[0, 0, 1]).gcd(&q(&[0, 1])), q(&[0, 1]));
        // gcd((a-1)(a+2), (a-1)(a-3)) = a - 1
        let g = q(&[-2, 1, 1]).gcd(&q(&[3, -4, 1]));
        assert_eq!(g, q(&[-1, 1]));
    }

    #[test]
    fn subresultant_matches_euclid_over_q() {
        let a = q(&[-2, 1, 1]).mul(&q(&[5, 0, 3]));
        let b = q(&[3, -4, 1]).mul(&q(&[5, 0, 3]));
        let sr = a.subresultant_gcd(&b).monic();
        assert_eq!(sr, a.gcd(&b));
    }

    #[test]
    fn yun_multiplicities() {
        // (a-1)^3 (a+1) a^2
        let p = q(&[-1, 1]).pow(3).mul(&q(&[1, 1])).mul(&q(&[0, 0, 1]));
        let sf = p.squarefree_decomposition();
        assert_eq!(sf, vec![(q(&[1, 1]), 1), (q(&[0, 1]), 2), (q(&[-1, 1]), 3)]);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = q(&[1, 2, 3, 4]);
        let b = q(&[1, 0, 2]);
        let r = a.pseudo_rem(&b);
        let scaled = a.scale(&int(4));
        assert_eq!(scaled.div_rem(&b).1, r);
    }

    #[test]
    fn inverse_mod_round_trip() {
        let m = q(&[1, 0, 3]);
        let p = q(&[6, 4]);
        let inv = p.inverse_mod(&m).unwrap();
        assert_eq!(p.mul(&inv).div_rem(&m).1, q(&[1]));
        assert!(q(&[0, 0, 1]).inverse_mod(&q(&[0, 1])).is_none());
    }

    #[test]
    fn rational_root_test() {
        // 3a^2 - 3/16 -> ±1/4
        let p = UniPoly::new(vec![rat(-3, 16), int(0), int(3)]);
        assert_eq!(p.rational_roots().unwrap(), vec![rat(-1, 4), rat(1, 4)]);
        // a^2 (a^2 + 1) -> 0 only
        assert_eq!(q(&[0, 0, 1, 0, 1]).rational_roots().unwrap(), vec![int(0)]);
        assert_eq!(q(&[7]).rational_roots().unwrap(), Vec::<Rat>::new());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-3, 0, 3]).display_in("a"), "3*a^2 - 3");
        assert_eq!(q(&[0, -1]).display_in("a"), "-a");
    }
}
