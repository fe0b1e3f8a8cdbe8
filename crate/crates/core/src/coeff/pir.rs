//! Principal-ideal-ring primitives used by the normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{mod_inverse, Ring, Scalar};

/// Result of `xgcd(a, b)`: `s a + t b = g`, `u a + v b = 0`, and the matrix
/// `[[s, t], [u, v]]` is invertible.
pub(crate) struct Xgcd {
    #[cfg_attr(not(test), allow(dead_code))]
    pub g: Scalar,
    pub s: Scalar,
    pub t: Scalar,
    pub u: Scalar,
    pub v: Scalar,
}

fn int(v: &BigInt) -> Scalar {
    Scalar::from_integer(v.clone())
}

impl Ring {
    /// Canonical `q` with `a q = b`, if one exists.
    pub fn divide(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match *self {
            Ring::Rationals => {
                if a.is_zero() {
                    b.is_zero().then(Scalar::zero)
                } else {
                    Some(b / a)
                }
            }
            Ring::Integers => {
                if a.is_zero() {
                    return b.is_zero().then(Scalar::zero);
                }
                let (q, r) = b.numer().div_rem(a.numer());
                r.is_zero().then(|| int(&q))
            }
            Ring::IntegersMod(n) | Ring::PrimeField(n) => {
                let n = BigInt::from(n);
                let a = a.numer();
                let b = b.numer();
                let g = a.gcd(&n);
                if !(b % &g).is_zero() {
                    return None;
                }
                let m = &n / &g;
                if m.is_one() {
                    return Some(Scalar::zero());
                }
                let inv = mod_inverse(&(a / &g).mod_floor(&m), &m)?;
                Some(int(&((b / &g) * inv).mod_floor(&m)))
            }
        }
    }

    pub(crate) fn xgcd(&self, a: &Scalar, b: &Scalar) -> Xgcd {
        let one = self.one();
        let zero = Scalar::zero();
        if let Some(q) = self.divide(a, b) {
            if !a.is_zero() || b.is_zero() {
                return Xgcd {
                    g: a.clone(),
                    s: one.clone(),
                    t: zero,
                    u: self.neg(&q),
                    v: one,
                };
            }
        }
        if let Some(q) = self.divide(b, a) {
            return Xgcd {
                g: b.clone(),
                s: zero,
                t: one.clone(),
                u: one,
                v: self.neg(&q),
            };
        }
        // only reachable for Z and Z/n with neither dividing the other
        let e = a.numer().extended_gcd(b.numer());
        let g = e.gcd;
        Xgcd {
            g: self.reduce(int(&g)).unwrap(),
            s: self.reduce(int(&e.x)).unwrap(),
            t: self.reduce(int(&e.y)).unwrap(),
            u: self.reduce(int(&(-(b.numer() / &g)))).unwrap(),
            v: self.reduce(int(&(a.numer() / &g))).unwrap(),
        }
    }

    /// Pivot priority: smaller is closer to a unit.
    pub(crate) fn size(&self, a: &Scalar) -> BigInt {
        match *self {
            Ring::Rationals => BigInt::zero(),
            Ring::Integers => a.numer().abs(),
            Ring::IntegersMod(n) | Ring::PrimeField(n) => a.numer().gcd(&BigInt::from(n)),
        }
    }

    /// A unit `w` such that `w a` is the canonical associate of `a`.
    pub(crate) fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match *self {
            Ring::Rationals => {
                if a.is_zero() {
                    Scalar::one()
                } else {
                    a.recip()
                }
            }
            Ring::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            Ring::IntegersMod(n) | Ring::PrimeField(n) => {
                let nb = BigInt::from(n);
                let g = a.numer().gcd(&nb);
                if a.is_zero() {
                    return Scalar::one();
                }
                let m = &nb / &g;
                if m.is_one() {
                    return Scalar::one();
                }
                let base = mod_inverse(&(a.numer() / &g).mod_floor(&m), &m)
                    .expect("a/g is a unit modulo n/g");
                let mut w = base;
                while !w.gcd(&nb).is_one() {
                    w += &m;
                }
                int(&w.mod_floor(&nb))
            }
        }
    }

    /// Generator of the annihilator of `a`; zero when the annihilator is trivial.
    pub(crate) fn annihilator(&self, a: &Scalar) -> Scalar {
        match *self {
            Ring::Rationals | Ring::Integers => {
                if a.is_zero() {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
            Ring::IntegersMod(n) | Ring::PrimeField(n) => {
                let nb = BigInt::from(n);
                let g = a.numer().gcd(&nb);
                self.reduce(int(&(&nb / g))).unwrap()
            }
        }
    }

    /// All ring elements, for finite rings.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.modulus().map(|n| {
            (0..n)
                .map(|k| Scalar::from_integer(BigInt::from(k)))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(v))
    }

    #[test]
    fn xgcd_identities() {
        for ring in [
            Ring::Integers,
            Ring::IntegersMod(12),
            Ring::PrimeField(5),
            Ring::Rationals,
        ] {
            for a in -6..7 {
                for b in -6..7 {
                    let (a, b) = (ring.from_i64(a), ring.from_i64(b));
                    let x = ring.xgcd(&a, &b);
                    let lhs = ring.add(&ring.mul(&x.s, &a), &ring.mul(&x.t, &b));
                    assert_eq!(lhs, x.g);
                    let z = ring.add(&ring.mul(&x.u, &a), &ring.mul(&x.v, &b));
                    assert!(z.is_zero());
                    let det = ring.sub(&ring.mul(&x.s, &x.v), &ring.mul(&x.t, &x.u));
                    assert!(ring.is_unit(&det), "{ring} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn division_mod_n() {
        let r = Ring::IntegersMod(4);
        assert_eq!(r.divide(&s(2), &s(2)), Some(s(1)));
        assert_eq!(r.divide(&s(2), &s(1)), None);
        assert_eq!(r.divide(&s(0), &s(0)), Some(s(0)));
        assert_eq!(r.annihilator(&s(2)), s(2));
        let u = r.normalizing_unit(&s(3));
        assert_eq!(r.mul(&u, &s(3)), s(1));
    }
}
