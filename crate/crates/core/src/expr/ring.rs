//! Minimal algebraic traits shared by the exact linear algebra and gcd code.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::{GaussRat, Rat};

/// Commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == Self::one_elem()
    }
}

/// Integral domain with exact division: `div_exact(a, b)` returns `q` with `a = q·b`
/// when such `q` exists.
pub trait Domain: Ring {
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

pub trait Field: Domain {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.mul_ref(&o))
    }
}

impl Ring for Rat {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Domain for Rat {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_ref(other)
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for GaussRat {
    fn zero_elem() -> Self {
        GaussRat::default()
    }
    fn one_elem() -> Self {
        GaussRat::real(<Rat as One>::one())
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, other: &Self) -> Self {
        GaussRat::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        GaussRat::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg_ref(&self) -> Self {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl Domain for GaussRat {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_ref(other)
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero_elem(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }
}
