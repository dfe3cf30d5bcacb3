use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// The coefficient field: a prime field `F_p` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Fp(u32),
    Q,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 / 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Fp(p) => p,
            Field::Q => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { value: 0, p },
            Field::Q => Scalar::Q(Rational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { value: 1 % p, p },
            Field::Q => Scalar::Q(Rational::one()),
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u32, p },
            Field::Q => Scalar::Q(Rational::from_integer(n)),
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::Input(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.from_i64(num) * inv)
    }

    /// All field elements in residue order (prime fields only).
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Fp(p) => Some((0..p).map(|v| Scalar::Fp { value: v, p }).collect()),
            Field::Q => None,
        }
    }

    /// The smallest generator of the multiplicative group of `F_p`.
    pub fn primitive_root(self) -> Option<Scalar> {
        let Field::Fp(p) = self else { return None };
        if p == 2 {
            return Some(self.one());
        }
        let order = p as u64 - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..p).map(|g| self.from_i64(g as i64)).find(|g| factors.iter().all(|&q| !g.pow(order / q).is_one()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F_{p}"),
            Field::Q => write!(f, "Q"),
        }
    }
}

/// An exact field element. `F_p` residues are canonical in `[0, p)`;
/// rationals are kept in lowest terms by `Ratio`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u32, p: u32 },
    Q(Rational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match *self {
            Scalar::Fp { value, p } => {
                Some(Scalar::Fp { value: pow_mod(value as u64, p as u64 - 2, p as u64) as u32, p })
            }
            Scalar::Q(r) => Some(Scalar::Q(r.recip())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = *self;
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Numerator and denominator of the canonical representative.
    pub fn to_fraction(&self) -> (i64, i64) {
        match self {
            Scalar::Fp { value, .. } => (*value as i64, 1),
            Scalar::Q(r) => (*r.numer(), *r.denom()),
        }
    }

    /// The residue of an `F_p` element.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Q(_) => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cold]
fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("arithmetic across fields: {} and {}", a.field(), b.field())
}

impl Add for Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                let s = a as u64 + b as u64;
                Scalar::Fp { value: (if s >= p as u64 { s - p as u64 } else { s }) as u32, p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.checked_add(&b).expect("rational overflow in addition")),
            (a, b) => mixed(&a, &b),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                let v = if a >= b { a - b } else { p - (b - a) };
                Scalar::Fp { value: v, p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.checked_sub(&b).expect("rational overflow in subtraction")),
            (a, b) => mixed(&a, &b),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: ((a as u64 * b as u64) % p as u64) as u32, p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.checked_mul(&b).expect("rational overflow in multiplication")),
            (a, b) => mixed(&a, &b),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: if value == 0 { 0 } else { p - value }, p },
            Scalar::Q(r) => Scalar::Q(-r),
        }
    }
}

impl AddAssign for Scalar {
    #[inline]
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    #[inline]
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for Scalar {
    #[inline]
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl Sum for Scalar {
    /// Panics on an empty iterator, which has no field to take zero from.
    fn sum<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        let first = iter.next().expect("sum of an empty scalar sequence");
        iter.fold(first, |a, b| a + b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Q(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Q(r) => {
                let sign = if r.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
            }
        }
    }
}
