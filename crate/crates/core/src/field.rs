//! Coefficient fields: the rationals and prime fields GF(p) with p <= 97.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime accepted for GF(p).
pub const MAX_PRIME: u32 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("GF({p}) is not a supported prime field (need prime p <= {MAX_PRIME})"),
            });
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Field size, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p as u64),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Mod {
                v: n.rem_euclid(*p as i64) as u32,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod {
                    v: r.to_u32().unwrap_or(0),
                    p: *p,
                }
            }
        }
    }

    /// `num/den` in this field; fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::CoefficientNotInField(format!("{num}/{den}")));
        }
        Ok(self.from_bigint(num).div(&d))
    }

    /// All elements of a finite field in the order 0, 1, ..., p-1.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Rationals => Vec::new(),
            FieldSpec::Prime(p) => (0..*p).map(|v| Scalar::Mod { v, p: *p }).collect(),
        }
    }

    /// Fixed enumeration of nonzero scalars used for shifts: 1, 2, ..., p-1 over
    /// GF(p); 1, 2, ..., `limit` and then -1, ..., -`limit` over the rationals.
    pub fn unit_sequence(&self, limit: i64) -> Vec<Scalar> {
        match self {
            FieldSpec::Prime(p) => (1..*p).map(|v| Scalar::Mod { v, p: *p }).collect(),
            FieldSpec::Rationals => (1..=limit)
                .chain((1..=limit).map(|k| -k))
                .map(|k| self.from_i64(k))
                .collect(),
        }
    }

    /// Small sample of nonzero scalars, the whole unit group for GF(p).
    pub fn scalar_sample(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Prime(_) => self.unit_sequence(0),
            FieldSpec::Rationals => [1, -1, 2, -2, 3, -3].iter().map(|&k| self.from_i64(k)).collect(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element that carries its own field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u32, p: u32 },
}

fn inv_mod(v: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = v as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: (p - v) % p,
                p: *p,
            },
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: inv_mod(*v, *p),
                p: *p,
            },
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut r = self.field().one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Canonical residue (GF(p)) or `None` over the rationals.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod { v, .. } => Some(*v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// True when printing needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { v: a, p: pa }, Scalar::Mod { v: b, p: pb }) => (pa, a).cmp(&(pb, b)),
            (Scalar::Rat(_), Scalar::Mod { .. }) => Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rat(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_table() {
        let f = FieldSpec::prime(7).unwrap();
        for v in 1..7 {
            let s = f.from_i64(v);
            assert!(s.mul(&s.inv()).is_one());
        }
        assert_eq!(f.from_i64(-1).residue(), Some(6));
    }

    #[test]
    fn rejects_composite_and_large_moduli() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(101).is_err());
        assert!(FieldSpec::prime(97).is_ok());
    }

    #[test]
    fn ratio_vanishing_denominator() {
        let f = FieldSpec::prime(3).unwrap();
        assert!(f.ratio(&BigInt::from(1), &BigInt::from(3)).is_err());
        assert_eq!(f.ratio(&BigInt::from(1), &BigInt::from(2)).unwrap().residue(), Some(2));
    }

    #[test]
    fn rational_display() {
        let q = FieldSpec::Rationals;
        let half = q.ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap();
        assert_eq!(half.to_string(), "-1/2");
        assert_eq!(q.from_i64(3).to_string(), "3");
    }
}
