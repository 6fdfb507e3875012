//! Exact scalars of the rational subfield of `Q_p`.
//!
//! Every scalar is a reduced fraction. The prime is not stored in the
//! scalar; it is supplied by a [`FieldDescriptor`] (or a bare [`Prime`])
//! whenever a valuation or absolute value is needed. Absolute values are
//! never evaluated as real numbers: `|x|_p = p^{-v_p(x)}` is carried as the
//! integer exponent only.
//!
//! `Q_p` is spherically complete, but nothing computed here depends on it:
//! for finite groups all constructions have rational coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// A rational prime, checked by trial division on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Does `p` divide `n`? Zero is divisible by everything.
    pub fn divides(self, n: u64) -> bool {
        n % self.0 == 0
    }

    /// `v_p(n)` for a positive integer.
    pub fn valuation_of_u64(self, mut n: u64) -> u32 {
        assert!(n > 0, "valuation of zero has no finite value");
        let mut v = 0;
        while n % self.0 == 0 {
            n /= self.0;
            v += 1;
        }
        v
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: u64 = s
            .trim()
            .parse()
            .map_err(|_| FieldError::Parse(s.to_string()))?;
        Prime::new(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d: u64 = 2;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The valued field `Q_p` as seen by this crate: a prime and the
/// characteristic of its residue field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    prime: Prime,
    residue_characteristic: u64,
}

impl FieldDescriptor {
    pub fn q_p(prime: Prime) -> Self {
        FieldDescriptor {
            prime,
            residue_characteristic: prime.get(),
        }
    }

    pub fn new(p: u64) -> Result<Self, FieldError> {
        Prime::new(p).map(Self::q_p)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn residue_characteristic(&self) -> u64 {
        self.residue_characteristic
    }
}

/// `v_p(x)`, with `+inf` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// An absolute value `p^k` stored by its exponent `k`, or exact zero.
///
/// Ordered as the real numbers it stands for, so `Zero` is the least
/// element. For a scalar `x != 0`, the exponent is `-v_p(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbsValue {
    Zero,
    Pow(i64),
}

impl AbsValue {
    pub fn from_valuation(v: Valuation) -> Self {
        match v {
            Valuation::Finite(v) => AbsValue::Pow(-v),
            Valuation::Infinite => AbsValue::Zero,
        }
    }

    /// The exponent `k` in `p^k`, if nonzero.
    pub fn exponent(self) -> Option<i64> {
        match self {
            AbsValue::Zero => None,
            AbsValue::Pow(k) => Some(k),
        }
    }

    /// Absolute value of a product.
    pub fn mul(self, other: AbsValue) -> AbsValue {
        match (self, other) {
            (AbsValue::Pow(a), AbsValue::Pow(b)) => AbsValue::Pow(a + b),
            _ => AbsValue::Zero,
        }
    }

    /// `<= 1`, i.e. inside the closed unit ball.
    pub fn at_most_one(self) -> bool {
        self <= AbsValue::Pow(0)
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Zero => f.write_str("zero"),
            AbsValue::Pow(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for AbsValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AbsValue::Pow(k) => s.serialize_i64(*k),
            AbsValue::Zero => s.serialize_str("zero"),
        }
    }
}

/// An exact element of `Q`, viewed inside `Q_p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// `num/den`; fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &other.0))
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        Scalar::one().checked_div(self)
    }

    pub fn valuation(&self, p: Prime) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let up = int_valuation(self.0.numer(), p) as i64;
        let down = int_valuation(self.0.denom(), p) as i64;
        Valuation::Finite(up - down)
    }

    pub fn abs_value(&self, p: Prime) -> AbsValue {
        AbsValue::from_valuation(self.valuation(p))
    }

    /// Compares `|self|_p` with `|other|_p`.
    pub fn abs_cmp(&self, other: &Scalar, p: Prime) -> Ordering {
        other.valuation(p).cmp(&self.valuation(p))
    }
}

fn int_valuation(n: &BigInt, p: Prime) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.get());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Scalar::from_ratio(n, d)
            }
            None => t
                .parse::<BigInt>()
                .map(Scalar::from_bigint)
                .map_err(|_| bad()),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign:ident, $assign_method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $assign<&Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: &Scalar) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign<Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: Scalar) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
