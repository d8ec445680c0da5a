//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are drawn from a fixed ordered set: the spatial variables `x, y, z`,
//! the family parameter `t`, and an auxiliary branch parameter `s` that the
//! parser never produces but substitution along polar branches does.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, GaussRat, Rat};
use super::ratfunc::RatFunc;
use super::ring::Ring;
use super::unipoly::UniPoly;

pub const NVARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
    S = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::T, Var::S];
    pub const SPATIAL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
            Var::S => "s",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "t" => Some(Var::T),
            _ => None,
        }
    }

    pub fn is_spatial(self) -> bool {
        matches!(self, Var::X | Var::Y | Var::Z)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// Graded lexicographic order over (x, y, z, t, s), larger first when used
    /// with `sort_by(|a, b| b.grlex_cmp(a))`.
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.exp(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{e}", v.name())),
            }
        }
        parts.join("*")
    }
}

/// Canonical sparse polynomial: no zero coefficients are stored, so equal
/// polynomials have identical term maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Rat::one(), Monomial::var(v))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in items {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms sorted in descending graded-lex order (the printing order).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    /// Variables that actually occur, in the fixed order.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn spatial_vars(&self) -> Vec<Var> {
        self.vars().into_iter().filter(|v| v.is_spatial()).collect()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact formal partial derivative; an absent variable yields zero.
    pub fn derive(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Simultaneous substitution `v ↦ q` for each binding; unbound variables stay.
    pub fn substitute(&self, bindings: &[(Var, MPoly)]) -> MPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u32), MPoly> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut prod = MPoly::constant(c.clone());
            for (v, q) in bindings {
                let e = m.exp(*v);
                rest = rest.with_exp(*v, 0);
                if e == 0 {
                    continue;
                }
                let p = powers.entry((*v, e)).or_insert_with(|| q.pow(e));
                prod = prod.mul(p);
            }
            out = out.add(&prod.mul_monomial(&rest));
        }
        out
    }

    /// Value after binding every variable in `vars` to the given field element.
    pub fn eval_at(&self, point: &[(Var, GaussRat)]) -> Option<GaussRat> {
        let mut acc = GaussRat::default();
        for (m, c) in &self.terms {
            let mut term = GaussRat::real(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let val = &point.iter().find(|(w, _)| *w == v)?.1;
                for _ in 0..e {
                    term = term.mul_ref(val);
                }
            }
            acc = acc.add_ref(&term);
        }
        Some(acc)
    }

    /// Collects coefficients by the remaining exponents after removing `t`:
    /// `self = Σ_m c_m(t) · m`.
    pub fn coefficients_in_t(&self) -> BTreeMap<Monomial, UniPoly<Rat>> {
        let mut grouped: BTreeMap<Monomial, Vec<(u32, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            grouped
                .entry(m.with_exp(Var::T, 0))
                .or_default()
                .push((m.exp(Var::T), c.clone()));
        }
        grouped
            .into_iter()
            .map(|(m, items)| {
                let deg = items.iter().map(|(e, _)| *e).max().unwrap_or(0) as usize;
                let mut cs = vec![Rat::zero(); deg + 1];
                for (e, c) in items {
                    cs[e as usize] += c;
                }
                (m, UniPoly::new(cs))
            })
            .collect()
    }

    /// Rebuilds a polynomial from `t`-coefficients keyed by t-free monomials.
    pub fn from_coefficients_in_t(items: &BTreeMap<Monomial, UniPoly<Rat>>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in items {
            out = out.add(&MPoly::from_t_poly(c).mul_monomial(m));
        }
        out
    }

    pub fn from_t_poly(p: &UniPoly<Rat>) -> MPoly {
        MPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::one().with_exp(Var::T, k as u32), c.clone())),
        )
    }

    /// View as a polynomial in `v` with coefficients in Q[t]. Returns `None`
    /// if any variable other than `v` and `t` occurs.
    pub fn to_uni_over_qt(&self, v: Var) -> Option<UniPoly<UniPoly<Rat>>> {
        if self.vars().iter().any(|w| *w != v && *w != Var::T) {
            return None;
        }
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut cs: Vec<Vec<Rat>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let slot = &mut cs[m.exp(v) as usize];
            let te = m.exp(Var::T) as usize;
            if slot.len() <= te {
                slot.resize(te + 1, Rat::zero());
            }
            slot[te] += c;
        }
        Some(UniPoly::new(cs.into_iter().map(UniPoly::new).collect()))
    }

    /// Like [`MPoly::to_uni_over_qt`] but over the fraction field Q(t).
    pub fn to_uni_over_ratfunc(&self, v: Var) -> Option<UniPoly<RatFunc>> {
        self.to_uni_over_qt(v)
            .map(|p| p.map(|c| RatFunc::from_poly(c.clone())))
    }

    /// Polynomial in `v` after setting `t = t0`. Returns `None` if any variable
    /// other than `v` and `t` occurs.
    pub fn to_uni_at(&self, v: Var, t0: &GaussRat) -> Option<UniPoly<GaussRat>> {
        let p = self.to_uni_over_qt(v)?;
        Some(p.map(|c| c.map(|r| GaussRat::real(r.clone())).eval(t0)))
    }

    /// Polynomial in `t` alone; `None` if any other variable occurs.
    pub fn to_t_poly(&self) -> Option<UniPoly<Rat>> {
        if self.vars().iter().any(|w| *w != Var::T) {
            return None;
        }
        Some(
            self.coefficients_in_t()
                .remove(&Monomial::one())
                .unwrap_or_else(UniPoly::zero),
        )
    }

    /// Exchanges the roles of `a` and `b`.
    pub fn swap_vars(&self, a: Var, b: Var) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    e.swap(a.index(), b.index());
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = m.render();
            if mono.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rat(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl Ring for MPoly {
    fn zero_elem() -> Self {
        MPoly::zero()
    }
    fn one_elem() -> Self {
        MPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse::parse;
    use crate::expr::rat::int;

    fn p(s: &str) -> MPoly {
        parse(s).unwrap()
    }

    #[test]
    fn derivatives() {
        let hp = p("x^3 + y^6 - 3*t^2*x*y^4");
        assert_eq!(hp.derive(Var::X), p("3*x^2 - 3*t^2*y^4"));
        assert_eq!(hp.derive(Var::T), p("-6*t*x*y^4"));
        assert_eq!(p("7/3").derive(Var::X), MPoly::zero());
        assert_eq!(hp.derive(Var::Z), MPoly::zero());
    }

    #[test]
    fn substitution_along_branch() {
        let hp = p("x^3 + y^6 - 3*t^2*x*y^4");
        let s = MPoly::var(Var::S);
        let along = hp.substitute(&[(Var::X, p("t").mul(&s.pow(2))), (Var::Y, s.clone())]);
        let expected =
            MPoly::term(int(1), Monomial::var(Var::S).with_exp(Var::S, 6)).sub(&MPoly::term(
                int(2),
                Monomial::one().with_exp(Var::S, 6).with_exp(Var::T, 3),
            ));
        assert_eq!(along, expected);
    }

    #[test]
    fn substitution_dehomogenizes_polar() {
        let fx = p("3*x^2 - 3*t^2*y^4");
        let a = MPoly::var(Var::S);
        let out = fx.substitute(&[(Var::X, a), (Var::Y, MPoly::one())]);
        let expected = MPoly::term(int(3), Monomial::one().with_exp(Var::S, 2))
            .sub(&MPoly::term(int(3), Monomial::one().with_exp(Var::T, 2)));
        assert_eq!(out, expected);
        assert_eq!(fx.substitute(&[]), fx);
    }

    #[test]
    fn uni_views() {
        let fx1 = p("3*x^2 - 3*t^2");
        let u = fx1.to_uni_over_qt(Var::X).unwrap();
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.coeff(0).coeff(2), int(-3));
        let at = fx1
            .to_uni_at(Var::X, &GaussRat::real(crate::expr::rat::rat(1, 4)))
            .unwrap();
        assert_eq!(at.coeff(0), GaussRat::real(crate::expr::rat::rat(-3, 16)));
        assert!(p("x*y").to_uni_over_qt(Var::X).is_none());
    }

    #[test]
    fn printing_is_graded_lex() {
        assert_eq!(
            p("y^6 + x^3 - 3*t^2*x*y^4").to_string(),
            "-3*x*y^4*t^2 + y^6 + x^3"
        );
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-1/4*x + 2").to_string(), "-1/4*x + 2");
    }
}
