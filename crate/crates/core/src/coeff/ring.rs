use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CoeffError;

/// Ring elements are stored as reduced rationals; each ring keeps them in a
/// canonical range (integers for `Z`, residues in `[0, n)` for `Z/n`).
pub type Scalar = BigRational;

/// The supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Ring {
    Integers,
    Rationals,
    IntegersMod(u64),
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    /// Validating constructor for `Z/n`; `n = p` prime still yields `IntegersMod`.
    pub fn integers_mod(n: u64) -> Result<Ring, CoeffError> {
        if n < 2 {
            return Err(CoeffError::InvalidRing(format!("Z/{n} needs n >= 2")));
        }
        Ok(Ring::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Ring, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::InvalidRing(format!("F_{p}: {p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn validate(&self) -> Result<(), CoeffError> {
        match *self {
            Ring::IntegersMod(n) if n < 2 => Err(CoeffError::InvalidRing(format!("Z/{n}"))),
            Ring::PrimeField(p) if !is_prime(p) => Err(CoeffError::InvalidRing(format!("F_{p}"))),
            _ => Ok(()),
        }
    }

    /// Modulus for the finite rings.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Ring::IntegersMod(n) | Ring::PrimeField(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
            .expect("integers embed in every supported ring")
    }

    /// Bring an arbitrary rational into canonical form for this ring.
    pub fn reduce(&self, v: Scalar) -> Result<Scalar, CoeffError> {
        match *self {
            Ring::Rationals => Ok(v),
            Ring::Integers => {
                if v.is_integer() {
                    Ok(v)
                } else {
                    Err(CoeffError::NotInRing(v.to_string(), *self))
                }
            }
            Ring::IntegersMod(n) | Ring::PrimeField(n) => {
                let n = BigInt::from(n);
                let num = v.numer().mod_floor(&n);
                let den = v.denom().mod_floor(&n);
                if den.is_one() {
                    return Ok(Scalar::from_integer(num));
                }
                // fractions are accepted when the denominator is a unit
                let inv = mod_inverse(&den, &n)
                    .ok_or_else(|| CoeffError::NotInRing(v.to_string(), *self))?;
                Ok(Scalar::from_integer((num * inv).mod_floor(&n)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b).expect("closed under addition")
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b).expect("closed under subtraction")
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b).expect("closed under multiplication")
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a.clone()).expect("closed under negation")
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match *self {
            Ring::Rationals => !a.is_zero(),
            Ring::Integers => a.abs().is_one(),
            Ring::IntegersMod(n) | Ring::PrimeField(n) => a.numer().gcd(&BigInt::from(n)).is_one(),
        }
    }

    /// Canonical textual form, e.g. `-3`, `2/5`, residues in `[0, n)`.
    pub fn format(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, CoeffError> {
        let s = s.trim();
        let bad = || CoeffError::Parse(format!("bad ring element {s:?}"));
        let v = if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Scalar::new(n, d)
        } else {
            Scalar::from_integer(BigInt::from_str(s).map_err(|_| bad())?)
        };
        self.reduce(v)
    }

    /// Symbol used when describing modules: `Z`, `Q`, `Z/4`, `F_2`.
    pub fn symbol(&self) -> String {
        match *self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::IntegersMod(n) => format!("Z/{n}"),
            Ring::PrimeField(p) => format!("F_{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.symbol()
    }
}

impl TryFrom<String> for Ring {
    type Error = CoeffError;

    fn try_from(s: String) -> Result<Ring, CoeffError> {
        s.parse()
    }
}

impl FromStr for Ring {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" | "Integers" => return Ok(Ring::Integers),
            "Q" | "Rationals" => return Ok(Ring::Rationals),
            _ => {}
        }
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CoeffError::Parse(format!("bad ring {s:?}")))
        };
        if let Some(rest) = s.strip_prefix("Z/") {
            return Ring::integers_mod(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("F_") {
            return Ring::prime_field(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            return Ring::prime_field(num(rest)?);
        }
        Err(CoeffError::Parse(format!("unknown ring {s:?}")))
    }
}

pub(crate) fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(Ring::integers_mod(1).is_err());
        assert!(Ring::prime_field(4).is_err());
        assert!(Ring::prime_field(7).is_ok());
        assert_eq!("Z/4".parse::<Ring>().unwrap(), Ring::IntegersMod(4));
        assert_eq!("F_3".parse::<Ring>().unwrap(), Ring::PrimeField(3));
    }

    #[test]
    fn reduction_and_format() {
        let z4 = Ring::IntegersMod(4);
        assert_eq!(z4.format(&z4.from_i64(-1)), "3");
        let f5 = Ring::PrimeField(5);
        assert_eq!(f5.format(&f5.parse_scalar("1/2").unwrap()), "3");
        assert!(Ring::Integers.parse_scalar("1/2").is_err());
        assert!(z4.parse_scalar("1/2").is_err());
        assert_eq!(
            Ring::Rationals.format(&Ring::Rationals.parse_scalar("2/4").unwrap()),
            "1/2"
        );
    }
}
