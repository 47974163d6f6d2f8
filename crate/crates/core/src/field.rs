//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! Coefficients do not carry their field; every operation goes through a
//! [`Field`] value so that a residue never has to store its modulus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`), residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Fp(n.rem_euclid(*p as i64) as u32),
        }
    }

    /// Maps a rational number into the field. Fails in `F_p` when `p` divides
    /// the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(Coeff::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::InvalidInput(format!(
                        "denominator of {q} vanishes mod {p}"
                    )));
                }
                let inv = pow_mod(den, *p as u64 - 2, *p as u64);
                Ok(Coeff::Fp((num * inv % *p as u64) as u32))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x + y),
            (Coeff::Fp(x), Coeff::Fp(y), Field::Prime(p)) => {
                Coeff::Fp(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(-x),
            (Coeff::Fp(x), Field::Prime(p)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x * y),
            (Coeff::Fp(x), Coeff::Fp(y), Field::Prime(p)) => {
                Coeff::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    /// Multiplicative inverse; panics on zero (callers test first).
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), _) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Q(x.recip())
            }
            (Coeff::Fp(x), Field::Prime(p)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_negative(),
            Coeff::Fp(_) => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_i64(2);
        let b = f5.from_i64(3);
        assert_eq!(f5.mul(&a, &b), f5.one());
        assert_eq!(f5.add(&a, &b), f5.zero());
        assert_eq!(f5.inv(&a), b);
        assert_eq!(f5.from_i64(-1), Coeff::Fp(4));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn rational_into_prime_field() {
        let f3 = Field::prime(3).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f3.from_rational(&half).unwrap(), Coeff::Fp(2));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(f3.from_rational(&third).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.from_rational(&BigRational::new(BigInt::from(2), BigInt::from(-4))).unwrap();
        match a {
            Coeff::Q(r) => {
                assert_eq!(*r.numer(), BigInt::from(-1));
                assert_eq!(*r.denom(), BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }
}
