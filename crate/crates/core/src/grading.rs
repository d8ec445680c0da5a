//! Weight systems for weighted-homogeneous polynomials.
//!
//! A polynomial `f(x_1, ..., x_n)` is w-homogeneous of degree `d` when every
//! monomial `x^m` of `f` satisfies `⟨w, m⟩ = d`. The parameter `t` is never
//! weighted.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::expr::mpoly::{MPoly, Monomial, Var};
use crate::expr::rat::Rat;
use crate::linalg::nullspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradingError {
    #[error("the zero polynomial has no weight system")]
    ZeroPolynomial,
    #[error("polynomial has no spatial variable")]
    NoSpatialVariable,
    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is not w-homogeneous for weights {0:?}")]
    NotHomogeneous(Vec<u32>),
}

/// Primitive positive weights `w` on the spatial variables and a degree `d`,
/// with `gcd(w_1, ..., w_n, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub vars: Vec<Var>,
    pub weights: Vec<u32>,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightDetection {
    Weighted {
        system: WeightSystem,
        ambiguous: bool,
    },
    /// All weights equal; excluded by the triviality theorems.
    Homogeneous {
        system: WeightSystem,
        ambiguous: bool,
    },
    NotWeightedHomogeneous,
}

impl WeightDetection {
    pub fn system(&self) -> Option<&WeightSystem> {
        match self {
            WeightDetection::Weighted { system, .. }
            | WeightDetection::Homogeneous { system, .. } => Some(system),
            WeightDetection::NotWeightedHomogeneous => None,
        }
    }
}

impl WeightSystem {
    pub fn new(vars: Vec<Var>, weights: Vec<u32>, degree: u32) -> Self {
        assert_eq!(vars.len(), weights.len());
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        WeightSystem {
            vars,
            weights,
            degree,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, v: Var) -> Option<u32> {
        self.vars
            .iter()
            .position(|w| *w == v)
            .map(|k| self.weights[k])
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights.windows(2).all(|p| p[0] == p[1])
    }

    /// `⟨w, m⟩` for an exponent vector over the spatial variables.
    pub fn wdegree(&self, m: &[u32]) -> Result<u32, GradingError> {
        if m.len() != self.n() {
            return Err(GradingError::LengthMismatch {
                expected: self.n(),
                got: m.len(),
            });
        }
        Ok(m.iter().zip(&self.weights).map(|(a, w)| a * w).sum())
    }

    /// Weighted degree of a monomial; `t` and any unweighted variable count zero.
    pub fn wdegree_of(&self, m: &Monomial) -> u32 {
        self.vars
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| m.exp(*v) * w)
            .sum()
    }

    /// The common weighted degree of all terms, if `p` is nonzero and
    /// w-homogeneous.
    pub fn homogeneous_degree(&self, p: &MPoly) -> Option<u32> {
        let mut degs = p.terms().map(|(m, _)| self.wdegree_of(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn check_homogeneous(&self, p: &MPoly) -> Result<u32, GradingError> {
        self.homogeneous_degree(p)
            .ok_or_else(|| GradingError::NotHomogeneous(self.weights.clone()))
    }

    /// Spatial exponent vector of `m` in the order of `vars`.
    pub fn exponents(&self, m: &Monomial) -> Vec<u32> {
        self.vars.iter().map(|v| m.exp(*v)).collect()
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        self.vars
            .iter()
            .zip(exps)
            .fold(Monomial::one(), |m, (v, e)| m.with_exp(*v, *e))
    }

    /// Exchanges the weights of `a` and `b` (both must be present).
    pub fn swapped(&self, a: Var, b: Var) -> WeightSystem {
        let mut out = self.clone();
        let ia = self.vars.iter().position(|v| *v == a).expect("var present");
        let ib = self.vars.iter().position(|v| *v == b).expect("var present");
        out.weights.swap(ia, ib);
        out
    }

    /// Milnor number of an isolated w-homogeneous singularity of this type:
    /// `Π (d / w_i − 1)`.
    pub fn milnor_formula(&self) -> Option<u64> {
        let mut acc = Rat::from_integer(1.into());
        for &w in &self.weights {
            acc *= Rat::new((self.degree as i64 - w as i64).into(), (w as i64).into());
        }
        if acc.is_negative() || !acc.is_integer() {
            return None;
        }
        acc.to_integer().to_u64()
    }

    /// Top degree of the Milnor algebra, `Σ (d − 2 w_i)`.
    pub fn socle_degree(&self) -> i64 {
        self.weights
            .iter()
            .map(|&w| self.degree as i64 - 2 * w as i64)
            .sum()
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ws: Vec<String> = self
            .vars
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| format!("{v}:{w}"))
            .collect();
        write!(f, "w = ({}), d = {}", ws.join(", "), self.degree)
    }
}

/// All monomials of a fixed weighted degree, sorted lexicographically with the
/// highest power of the first variable first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub system: WeightSystem,
    pub degree: u32,
    pub exponents: Vec<Vec<u32>>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.exponents
            .iter()
            .map(|e| self.system.monomial(e))
            .collect()
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.exponents.iter().position(|e| e.as_slice() == exps)
    }
}

pub fn graded_basis(w: &WeightSystem, e: u32) -> GradedBasis {
    fn rec(ws: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&w0, rest)) = ws.split_first() else {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for a in (0..=left / w0).rev() {
            prefix.push(a);
            rec(rest, left - a * w0, prefix, out);
            prefix.pop();
        }
    }
    let mut exponents = Vec::new();
    rec(&w.weights, e, &mut Vec::new(), &mut exponents);
    GradedBasis {
        system: w.clone(),
        degree: e,
        exponents,
    }
}

pub fn wdegree(m: &[u32], w: &WeightSystem) -> Result<u32, GradingError> {
    w.wdegree(m)
}

/// Largest coordinate tried when the weight system is not unique.
const AMBIGUOUS_SEARCH_BOUND: u32 = 64;

/// Finds the primitive weight system making `f` w-homogeneous, treating `t`
/// as a coefficient parameter.
pub fn detect_weights(f: &MPoly) -> Result<WeightDetection, GradingError> {
    if f.is_zero() {
        return Err(GradingError::ZeroPolynomial);
    }
    let vars = f.spatial_vars();
    if vars.is_empty() {
        return Err(GradingError::NoSpatialVariable);
    }
    let n = vars.len();
    let exps: BTreeSet<Vec<u32>> = f
        .terms()
        .map(|(m, _)| vars.iter().map(|v| m.exp(*v)).collect())
        .collect();
    if exps.iter().any(|e: &Vec<u32>| e.iter().all(|&a| a == 0)) {
        // A t-only term means f(0, t) ≠ 0; no positive grading can fix it.
        return Ok(WeightDetection::NotWeightedHomogeneous);
    }
    let exps: Vec<Vec<u32>> = exps.into_iter().collect();
    let base = &exps[0];
    let rows: Vec<Vec<Rat>> = exps[1..]
        .iter()
        .map(|e| {
            e.iter()
                .zip(base)
                .map(|(a, b)| Rat::from_integer((*a as i64 - *b as i64).into()))
                .collect()
        })
        .collect();
    let basis = if rows.is_empty() {
        nullspace::<Rat>(&[], n)
    } else {
        nullspace(&rows, n)
    };
    let (weights, ambiguous) = match basis.len() {
        0 => return Ok(WeightDetection::NotWeightedHomogeneous),
        1 => match positive_primitive(&basis[0]) {
            Some(w) => (w, false),
            None => return Ok(WeightDetection::NotWeightedHomogeneous),
        },
        _ => match lex_smallest_positive(&rows, n) {
            Some(w) => (w, true),
            None => return Ok(WeightDetection::NotWeightedHomogeneous),
        },
    };
    let degree: u32 = base.iter().zip(&weights).map(|(a, w)| a * w).sum();
    let system = WeightSystem::new(vars, weights, degree);
    Ok(if system.is_homogeneous() {
        WeightDetection::Homogeneous { system, ambiguous }
    } else {
        WeightDetection::Weighted { system, ambiguous }
    })
}

/// Scales a rational vector to coprime positive integers, if all entries have
/// the same strict sign.
fn positive_primitive(v: &[Rat]) -> Option<Vec<u32>> {
    let positive = v.iter().all(|r| r.is_positive());
    let negative = v.iter().all(|r| r.is_negative());
    if !positive && !negative {
        return None;
    }
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|r| (r * Rat::from_integer(lcm.clone())).to_integer().abs())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, a| acc.gcd(a));
    ints.iter().map(|a| (a / &g).to_u32()).collect()
}

/// Lexicographically smallest positive integer solution of `rows·w = 0`.
fn lex_smallest_positive(rows: &[Vec<Rat>], n: usize) -> Option<Vec<u32>> {
    fn satisfies(rows: &[Vec<Rat>], w: &[u32]) -> bool {
        rows.iter().all(|r| {
            r.iter()
                .zip(w)
                .map(|(a, b)| a * Rat::from_integer((*b).into()))
                .sum::<Rat>()
                .is_zero()
        })
    }
    fn rec(rows: &[Vec<Rat>], n: usize, prefix: &mut Vec<u32>) -> Option<Vec<u32>> {
        if prefix.len() == n {
            return satisfies(rows, prefix).then(|| prefix.clone());
        }
        for a in 1..=AMBIGUOUS_SEARCH_BOUND {
            prefix.push(a);
            if let Some(w) = rec(rows, n, prefix) {
                return Some(w);
            }
            prefix.pop();
        }
        None
    }
    rec(rows, n, &mut Vec::with_capacity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse::parse;

    fn detect(s: &str) -> WeightDetection {
        detect_weights(&parse(s).unwrap()).unwrap()
    }

    fn ws(vars: &[Var], w: &[u32], d: u32) -> WeightSystem {
        WeightSystem::new(vars.to_vec(), w.to_vec(), d)
    }

    #[test]
    fn henry_parusinski_weights() {
        // 3 w1 = 6 w2 = w1 + 4 w2
        assert_eq!(
            detect("x^3 + y^6 - 3*t^2*x*y^4"),
            WeightDetection::Weighted {
                system: ws(&[Var::X, Var::Y], &[2, 1], 6),
                ambiguous: false
            }
        );
    }

    #[test]
    fn whitney_is_homogeneous() {
        assert_eq!(
            detect("x*y*(x-y)*(x-t*y)"),
            WeightDetection::Homogeneous {
                system: ws(&[Var::X, Var::Y], &[1, 1], 4),
                ambiguous: false
            }
        );
    }

    #[test]
    fn three_variable_example() {
        // 4 w1 = 4 w2 = 5 w3 = 2 w1 + 2 w2
        assert_eq!(
            detect("x^4 + y^4 + z^5 + t*x^2*y^2"),
            WeightDetection::Weighted {
                system: ws(&[Var::X, Var::Y, Var::Z], &[5, 5, 4], 20),
                ambiguous: false
            }
        );
    }

    #[test]
    fn ambiguous_and_failing_cases() {
        assert_eq!(
            detect("3*x^3*y^2"),
            WeightDetection::Homogeneous {
                system: ws(&[Var::X, Var::Y], &[1, 1], 5),
                ambiguous: true
            }
        );
        // 2 w1 = 3 w2 + w3: lexicographically smallest positive is (2, 1, 1).
        assert_eq!(
            detect("x^2 + y^3*z").system().unwrap().weights,
            vec![2, 1, 1]
        );
        assert_eq!(detect("x^2 + x^3"), WeightDetection::NotWeightedHomogeneous);
        assert_eq!(
            detect("x^2 + y^2 + t"),
            WeightDetection::NotWeightedHomogeneous
        );
        assert_eq!(
            detect("x^2*y + y^3*x^3 + y^4"),
            WeightDetection::NotWeightedHomogeneous
        );
        assert_eq!(
            detect_weights(&MPoly::zero()),
            Err(GradingError::ZeroPolynomial)
        );
        assert_eq!(
            detect_weights(&parse("t^2").unwrap()),
            Err(GradingError::NoSpatialVariable)
        );
    }

    #[test]
    fn weighted_degrees() {
        let w = ws(&[Var::X, Var::Y], &[2, 1], 6);
        assert_eq!(wdegree(&[1, 4], &w), Ok(6));
        assert_eq!(wdegree(&[0, 0], &w), Ok(0));
        assert!(matches!(
            wdegree(&[1], &w),
            Err(GradingError::LengthMismatch { .. })
        ));
        let w3 = ws(&[Var::X, Var::Y, Var::Z], &[5, 5, 4], 20);
        assert_eq!(wdegree(&[2, 2, 0], &w3), Ok(20));
    }

    #[test]
    fn graded_bases() {
        let w = ws(&[Var::X, Var::Y], &[2, 1], 6);
        assert_eq!(
            graded_basis(&w, 6).exponents,
            vec![vec![3, 0], vec![2, 2], vec![1, 4], vec![0, 6]]
        );
        assert_eq!(graded_basis(&w, 1).exponents, vec![vec![0, 1]]);
        assert_eq!(graded_basis(&w, 0).exponents, vec![vec![0, 0]]);
        let w3 = ws(&[Var::X, Var::Y, Var::Z], &[5, 5, 4], 20);
        assert_eq!(graded_basis(&w3, 0).exponents, vec![vec![0, 0, 0]]);
        assert!(graded_basis(&w3, 3).is_empty());
    }

    #[test]
    fn milnor_formula_values() {
        assert_eq!(ws(&[Var::X, Var::Y], &[2, 1], 6).milnor_formula(), Some(10));
        assert_eq!(ws(&[Var::X, Var::Y], &[1, 1], 4).milnor_formula(), Some(9));
        assert_eq!(
            ws(&[Var::X, Var::Y, Var::Z], &[5, 5, 4], 20).milnor_formula(),
            Some(36)
        );
        assert_eq!(
            ws(&[Var::X, Var::Y], &[7, 3], 21).milnor_formula(),
            Some(12)
        );
    }
}
