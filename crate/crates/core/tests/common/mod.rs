#![allow(dead_code)]

use germlab::expr::mpoly::{MPoly, Monomial, Var};
use germlab::expr::parse::parse;
use germlab::expr::rat::{int, rat, GaussRat, Rat};
use germlab::expr::unipoly::UniPoly;
use germlab::grading::{graded_basis, WeightSystem};
use germlab::invariants::{KEntry, KReport};
use germlab::roots::RootValue;
use proptest::prelude::*;

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn monomial(vars: &'static [Var], max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, vars.len()).prop_map(move |es| {
        vars.iter()
            .zip(es)
            .fold(Monomial::one(), |m, (v, e)| m.with_exp(*v, e))
    })
}

pub fn poly(vars: &'static [Var], max_exp: u32, terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(vars, max_exp), small_rat()), 0..=terms)
        .prop_map(|ts| MPoly::from_terms(ts.into_iter().map(|(m, c)| (m, c))))
}

pub const XYT: &[Var] = &[Var::X, Var::Y, Var::T];
pub const XYZ: &[Var] = &[Var::X, Var::Y, Var::Z];

/// Random w-homogeneous polynomial of degree d with coefficients in Q[t].
pub fn weighted(w: &WeightSystem, d: u32, coeffs: &[(Rat, Rat)]) -> MPoly {
    let basis = graded_basis(w, d).monomials();
    let mut f = MPoly::zero();
    for (m, (a, b)) in basis.iter().zip(coeffs) {
        let c = MPoly::constant(a.clone()).add(&MPoly::var(Var::T).scale(b));
        f = f.add(&c.mul_monomial(m));
    }
    f
}

pub fn weight_system() -> impl Strategy<Value = (WeightSystem, u32)> {
    (1u32..=3, 1u32..=3, 2u32..=4).prop_map(|(a, b, k)| {
        let d = a * b * k;
        (WeightSystem::new(vec![Var::X, Var::Y], vec![a, b], d), d)
    })
}

pub fn ball_or_exact_equal(a: &RootValue, b: &RootValue, prec: u32) -> bool {
    match (a, b) {
        (RootValue::Exact(x), RootValue::Exact(y)) => x == y,
        _ => a.ball(prec).overlaps(&b.ball(prec)),
    }
}

pub fn root_poly() -> impl Strategy<Value = UniPoly<GaussRat>> {
    (
        prop::collection::vec((-5i64..=5, -2i64..=2), 1..4),
        1i64..=3,
    )
        .prop_map(|(cs, lead)| {
            let mut v: Vec<GaussRat> = cs
                .iter()
                .map(|(re, im)| GaussRat::new(int(*re), int(*im)))
                .collect();
            v.push(GaussRat::real(int(lead)));
            UniPoly::new(v)
        })
}

pub fn real_root_poly() -> impl Strategy<Value = UniPoly<GaussRat>> {
    (prop::collection::vec(-6i64..=6, 1..4), 1i64..=3).prop_map(|(cs, lead)| {
        let mut v: Vec<GaussRat> = cs.iter().map(|c| GaussRat::real(int(*c))).collect();
        v.push(GaussRat::real(int(lead)));
        UniPoly::new(v)
    })
}

/// Plane family x^3 + (a + b t) x y^4 + (c + e t) y^6 with w = (2, 1).
pub fn plane_family() -> impl Strategy<Value = MPoly> {
    (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, e)| {
        let lin = |p: Rat, q: Rat| MPoly::constant(p).add(&MPoly::var(Var::T).scale(&q));
        parse("x^3")
            .unwrap()
            .add(&lin(a, b).mul(&parse("x*y^4").unwrap()))
            .add(&lin(c, e).mul(&parse("y^6").unwrap()))
    })
}

pub fn w21() -> WeightSystem {
    WeightSystem::new(vec![Var::X, Var::Y], vec![2, 1], 6)
}

pub fn ks_agree(a: &KReport, b: &KReport, prec: u32) -> bool {
    a.branches.len() == b.branches.len()
        && a.branches
            .iter()
            .zip(&b.branches)
            .all(|(x, y)| match (&x.k, &y.k) {
                (KEntry::Value(u), KEntry::Value(v)) => ball_or_exact_equal(u, v, prec),
                (u, v) => u == v,
            })
}
