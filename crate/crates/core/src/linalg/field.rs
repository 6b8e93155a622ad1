use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field elements. Over a prime field the value is always an integer in `[0, p)`.
pub type Scalar = BigRational;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::Field(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(BigInt::from(n)),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64);
                Scalar::from_integer(BigInt::from(r))
            }
        }
    }

    /// Maps a rational into this field. Fails over `F_p` when `p` divides the denominator.
    pub fn reduce(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = x.numer().mod_floor(&pb);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::Field(format!("{x} has no image in F{p}")));
                }
                let den = den.to_u64().expect("residue fits");
                let inv = mod_inverse(den, *p);
                let v = (num * BigInt::from(inv)).mod_floor(&pb);
                Ok(Scalar::from_integer(v))
            }
        }
    }

    #[inline]
    fn wrap(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                debug_assert!(x.is_integer());
                let pb = BigInt::from(*p);
                Scalar::from_integer(x.to_integer().mod_floor(&pb))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.wrap(-a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let v = a.to_integer().to_u64().expect("residue fits");
                Scalar::from_integer(BigInt::from(mod_inverse(v, *p)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses a literal `a` or `a/b` and maps it into the field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s)?;
        self.reduce(&q)
    }

    /// All field elements, in increasing order. Only meaningful over `F_p`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p as i64).map(|i| self.from_int(i)).collect()),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

/// Parses `a` or `a/b` (b nonzero) into lowest terms.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let bad = || Error::input(format!("invalid rational literal '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Renders a scalar as `a` or `a/b` with `b > 0`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let (n, d) = if x.denom().is_negative() {
            (-x.numer(), -x.denom())
        } else {
            (x.numer().clone(), x.denom().clone())
        };
        format!("{n}/{d}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F<p>` and `F <p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Field(format!("invalid field '{s}'")))?;
            return Field::prime(p);
        }
        Err(Error::Field(format!("invalid field '{s}', expected Q or F<p>")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_int(3);
        let five = f.from_int(5);
        assert_eq!(f.add(&three, &five), f.from_int(1));
        assert_eq!(f.mul(&three, &f.inv(&three)), f.one());
        assert_eq!(f.from_int(-1), f.from_int(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_int(4));
        assert!(f.parse_scalar("1/7").is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("F2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("F 3".parse::<Field>().unwrap(), Field::Prime(3));
        assert!("F4".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn rational_literals_round_trip() {
        let x = parse_rational("6/-4").unwrap();
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(format_scalar(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
