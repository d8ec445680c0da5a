//! Exact rational and Gaussian-rational scalars.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical `p/q` rendering (`p` alone when the denominator is one).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiteralError {
    #[error("empty literal")]
    Empty,
    #[error("decimal literal `{0}` is not accepted; write it as a fraction such as 1/4")]
    Decimal(String),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `n`, `-n` or `n/m` exactly. Decimals are rejected.
pub fn parse_rat(text: &str) -> Result<Rat, LiteralError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(LiteralError::Empty);
    }
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(LiteralError::Decimal(s.to_string()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let parse_int = |part: &str, allow_sign: bool| -> Result<BigInt, LiteralError> {
        let digits = if allow_sign {
            part.strip_prefix(['-', '+']).unwrap_or(part)
        } else {
            part
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(LiteralError::Malformed(s.to_string()));
        }
        BigInt::from_str(part).map_err(|_| LiteralError::Malformed(s.to_string()))
    };
    let n = parse_int(num, true)?;
    let d = match den {
        Some(d) => parse_int(d, false)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(LiteralError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(n, d))
}

/// Element of Q(i): `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Total order used for canonical sorting: by real part, then imaginary part.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// Parses `r`, `r+s*i`, `r-s*i`, `s*i`, `i` with rational `r`, `s`.
    pub fn parse(text: &str) -> Result<Self, LiteralError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(LiteralError::Empty);
        }
        if !s.ends_with('i') {
            return parse_rat(&s).map(GaussRat::real);
        }
        let body = &s[..s.len() - 1];
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match im_part {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => parse_rat(other).map_err(|_| LiteralError::Malformed(s.clone()))?,
        };
        let re = if re_part.is_empty() {
            Rat::zero()
        } else {
            parse_rat(re_part).map_err(|_| LiteralError::Malformed(s.clone()))?
        };
        Ok(GaussRat::new(re, im))
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::real(r)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rat(&im_abs))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_txt}")
            } else {
                write!(f, "{im_txt}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rat(&self.re), sign, im_txt)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rat("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-2").unwrap(), int(-2));
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert!(matches!(parse_rat("0.25"), Err(LiteralError::Decimal(_))));
        assert!(matches!(
            parse_rat("1/0"),
            Err(LiteralError::ZeroDenominator(_))
        ));
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("--1").is_err());
    }

    #[test]
    fn gaussian_literals_round_trip() {
        for text in ["1/2", "1/2+3*i", "-1-i", "i", "-2/3*i", "0"] {
            let z = GaussRat::parse(text).unwrap();
            assert_eq!(GaussRat::parse(&z.to_string()).unwrap(), z, "{text}");
        }
        assert_eq!(
            GaussRat::parse("1/4 - 1/2*i").unwrap(),
            GaussRat::new(rat(1, 4), rat(-1, 2))
        );
        assert!(GaussRat::parse("1+2*j").is_err());
    }
}
