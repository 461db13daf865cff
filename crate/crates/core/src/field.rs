//! Exact scalars over a prime field `F_p` or the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field: characteristic 0 means `Q`, otherwise `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn prime(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidField(0));
        }
        Self::new(p)
    }

    pub fn characteristic(self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(v.clone())),
            p => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits"),
                    p,
                }
            }
        }
    }

    /// Maps a rational number into the field; fails in characteristic `p` when `p` divides the
    /// denominator.
    pub fn from_rational(self, v: &BigRational) -> Result<Scalar> {
        if self.is_rational() {
            return Ok(Scalar::Rat(v.clone()));
        }
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        let inv = den.inv().ok_or_else(|| {
            Error::Parse(format!(
                "denominator {} vanishes in characteristic {}",
                v.denom(),
                self.characteristic
            ))
        })?;
        Ok(&num * &inv)
    }

    /// Parses an integer or a `p/q` fraction.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("not a number: {text:?}"));
        let v = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {text:?}")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        self.from_rational(&v)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Residues are kept in `0..p`, fractions in lowest terms.
///
/// Mixing scalars of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod { value: u32, p: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Mod { p, .. } => FieldSpec { characteristic: *p },
            Scalar::Rat(_) => FieldSpec::RATIONALS,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Mod { value, p } => {
                if *value == 0 {
                    return None;
                }
                let (mut a, mut b) = (*value as i64, *p as i64);
                let (mut x0, mut x1) = (1i64, 0i64);
                while b != 0 {
                    let q = a / b;
                    (a, b) = (b, a - q * b);
                    (x0, x1) = (x1, x0 - q * x1);
                }
                Some(Scalar::Mod {
                    value: x0.rem_euclid(*p as i64) as u32,
                    p: *p,
                })
            }
            Scalar::Rat(r) => (!r.is_zero()).then(|| Scalar::Rat(r.recip())),
        }
    }

    /// Division; panics on a zero divisor.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv().expect("division by zero scalar")
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True for values printed with a leading minus sign (rationals only).
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }
}

fn same_field(a: &Scalar, b: &Scalar) -> u32 {
    match (a, b) {
        (Scalar::Mod { p, .. }, Scalar::Mod { p: q, .. }) if p == q => *p,
        (Scalar::Rat(_), Scalar::Rat(_)) => 0,
        _ => panic!(
            "scalars from different fields: {} vs {}",
            a.field(),
            b.field()
        ),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                same_field(self, rhs);
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                same_field(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                same_field(self, rhs);
                Scalar::Mod {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => {
                same_field(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                same_field(self, rhs);
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => {
                same_field(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7).is_ok());
        assert!(FieldSpec::new(0).unwrap().is_rational());
    }

    #[test]
    fn residues_are_canonical() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(12).to_string(), "2");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    fn fractions_reduce() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("6/3").unwrap(), q.from_i64(2));
    }

    proptest! {
        #[test]
        fn fp_inverse_round_trip(p in prop::sample::select(vec![2u32, 3, 5, 7, 101]), v in 1i64..10_000) {
            let f = FieldSpec::new(p).unwrap();
            let x = f.from_i64(v);
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn rational_field_axioms(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
            let q = FieldSpec::RATIONALS;
            let (a, b, c) = (q.from_i64(a), q.from_i64(b), q.from_i64(c).inv().unwrap());
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a - &a, q.zero());
        }
    }
}
