//! Exact linear algebra: fraction-free (Bareiss) elimination over an integral
//! domain and reduced row echelon form over a field.
//!
//! Pivots are always chosen as the first eligible row in the given order, so
//! results never depend on anything but the input.

use crate::expr::rat::{GaussRat, Rat};
use crate::expr::ratfunc::RatFunc;
use crate::expr::ring::{Domain, Field, Ring};
use crate::expr::unipoly::UniPoly;

/// A domain together with an embedding into its field of fractions.
pub trait FractionField: Domain {
    type Frac: Field;
    fn to_frac(&self) -> Self::Frac;
}

impl FractionField for Rat {
    type Frac = Rat;
    fn to_frac(&self) -> Rat {
        self.clone()
    }
}

impl FractionField for GaussRat {
    type Frac = GaussRat;
    fn to_frac(&self) -> GaussRat {
        self.clone()
    }
}

impl FractionField for UniPoly<Rat> {
    type Frac = RatFunc;
    fn to_frac(&self) -> RatFunc {
        RatFunc::from_poly(self.clone())
    }
}

/// Result of fraction-free elimination on a matrix.
#[derive(Debug, Clone)]
pub struct Echelon<K> {
    /// Row-echelon form; entry `(k, pivot_cols[k])` is the k-th pivot.
    pub rows: Vec<Vec<K>>,
    pub pivot_cols: Vec<usize>,
}

impl<K> Echelon<K> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Bareiss elimination. Every intermediate entry is a minor of the input, so
/// all divisions are exact and entries stay in the domain.
pub fn bareiss<K: Domain>(mut rows: Vec<Vec<K>>) -> Echelon<K> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut prev = K::one_elem();
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        let Some(r) = (k..nrows).find(|&r| !rows[r][c].is_zero_elem()) else {
            continue;
        };
        rows.swap(k, r);
        let (top, bottom) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let v = p.mul_ref(&row[j]).sub_ref(&lead.mul_ref(&pivot_row[j]));
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[c] = K::zero_elem();
        }
        prev = p;
        pivot_cols.push(c);
        k += 1;
    }
    Echelon { rows, pivot_cols }
}

pub fn rank<K: Domain>(rows: Vec<Vec<K>>) -> usize {
    bareiss(rows).rank()
}

/// Outcome of solving `A·c = b` over the fraction field.
#[derive(Debug, Clone)]
pub enum Solve<K: FractionField> {
    /// A particular solution with free unknowns set to zero.
    Solution(Vec<K::Frac>),
    /// No solution; carries the reduced right-hand side entries of the
    /// inconsistent rows (each nonzero in the domain).
    Inconsistent { residual: Vec<K>, rank: usize },
}

/// Solves `A·c = b` where `columns[j]` is the j-th column of `A`.
pub fn solve_columns<K: FractionField>(columns: &[Vec<K>], rhs: &[K]) -> Solve<K> {
    let nrows = rhs.len();
    let ncols = columns.len();
    let rows: Vec<Vec<K>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<K> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let ech = bareiss(rows);
    if ech.pivot_cols.last() == Some(&ncols) {
        let rank = ech.rank() - 1;
        let residual = ech.rows[rank..]
            .iter()
            .map(|r| r[ncols].clone())
            .filter(|v| !v.is_zero_elem())
            .collect();
        return Solve::Inconsistent { residual, rank };
    }
    let mut sol = vec![K::Frac::zero_elem(); ncols];
    for (k, &c) in ech.pivot_cols.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut acc = row[ncols].to_frac();
        for j in c + 1..ncols {
            if !sol[j].is_zero_elem() {
                acc = acc.sub_ref(&row[j].to_frac().mul_ref(&sol[j]));
            }
        }
        sol[c] = acc
            .div_ref(&row[c].to_frac())
            .expect("pivot entries are nonzero");
    }
    Solve::Solution(sol)
}

/// Reduced row echelon form over a field; returns the pivot columns.
pub fn rref<K: Field>(rows: &mut [Vec<K>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        let Some(r) = (k..nrows).find(|&r| !rows[r][c].is_zero_elem()) else {
            continue;
        };
        rows.swap(k, r);
        let inv = rows[k][c].inv().expect("nonzero pivot");
        for j in c..ncols {
            rows[k][j] = rows[k][j].mul_ref(&inv);
        }
        for i in 0..nrows {
            if i == k || rows[i][c].is_zero_elem() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let v = rows[i][j].sub_ref(&f.mul_ref(&rows[k][j]));
                rows[i][j] = v;
            }
        }
        pivots.push(c);
        k += 1;
    }
    pivots
}

/// Basis of the right nullspace `{v : A·v = 0}` over a field.
pub fn nullspace<K: Field>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut m: Vec<Vec<K>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero_elem(); ncols];
            v[f] = K::one_elem();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = m[k][f].neg_ref();
            }
            v
        })
        .collect()
}
