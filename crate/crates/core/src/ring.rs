//! Exact coefficient rings: the integers and the residue rings `Z/m`.
//!
//! Every group-ring computation in this crate is carried out over one of
//! these rings. Values are arbitrary-precision integers; residues are kept
//! as canonical representatives in `[0, m)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Integers,
    IntegersMod(u64),
}

impl ScalarRing {
    pub fn integers() -> Self {
        ScalarRing::Integers
    }

    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        Ok(ScalarRing::IntegersMod(m))
    }

    /// `0` selects the integers, anything else `Z/m`.
    pub fn from_modulus(m: u64) -> Result<Self> {
        if m == 0 {
            Ok(ScalarRing::Integers)
        } else {
            Self::integers_mod(m)
        }
    }

    /// The modulus, with `0` standing for the integers.
    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarRing::Integers => 0,
            ScalarRing::IntegersMod(m) => *m,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            ScalarRing::Integers => false,
            ScalarRing::IntegersMod(m) => is_prime(*m),
        }
    }

    /// Canonical representative of `value` in this ring.
    pub fn reduce(&self, value: &BigInt) -> BigInt {
        match self {
            ScalarRing::Integers => value.clone(),
            ScalarRing::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let r = value % &m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            }
        }
    }

    pub(crate) fn reduce_owned(&self, value: BigInt) -> BigInt {
        match self {
            ScalarRing::Integers => value,
            ScalarRing::IntegersMod(m) => {
                if !value.is_negative() && value < BigInt::from(*m) {
                    value
                } else {
                    self.reduce(&value)
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            ring: *self,
            value: BigInt::zero(),
        }
    }

    pub fn one(&self) -> Scalar {
        Scalar {
            ring: *self,
            value: BigInt::one(),
        }
    }

    pub fn scalar(&self, value: impl Into<BigInt>) -> Scalar {
        Scalar::new(*self, value)
    }

    pub(crate) fn check_same(&self, other: &ScalarRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// An element of a [`ScalarRing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: ScalarRing,
    value: BigInt,
}

impl Scalar {
    pub fn new(ring: ScalarRing, value: impl Into<BigInt>) -> Self {
        let value = ring.reduce_owned(value.into());
        Scalar { ring, value }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value + &other.value))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value - &other.value))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value * &other.value))
    }

    pub fn negate(&self) -> Scalar {
        Scalar::new(self.ring, -&self.value)
    }

    /// Multiplicative inverse; only defined in prime fields.
    pub fn invert(&self) -> Result<Scalar> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.to_string()));
        }
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("0 in {}", self.ring)));
        }
        let p = BigInt::from(self.ring.characteristic());
        let inv = self.value.modpow(&(&p - 2u32), &p);
        Ok(Scalar::new(self.ring, inv))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic across rings")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &w in &WITNESSES {
        let mut x = pow(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
