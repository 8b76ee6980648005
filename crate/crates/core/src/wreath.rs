//! Normal-form arithmetic in the wreath product `Z/dZ wr Z`.
//!
//! An element is stored as `b * x^n` where `b` is a finitely supported lamp
//! configuration in the base group `B = (+)_i Z/dZ` and `n` is the shift.
//! Conjugation by `x` moves lamps one step to the right, `x a_i x^-1 = a_{i+1}`,
//! so the multiplication law is
//!
//! ```text
//! (b1, n1) * (b2, n2) = (b1 + shift_{n1}(b2), n1 + n2),   shift_n(f)(i) = f(i - n)
//! ```
//!
//! Lamp positions and shifts are `i64`; arithmetic on them is overflow
//! checked.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Parameters of the group: the order `d` of the lamp group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    d: u32,
}

impl GroupParams {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "lamp order d must be at least 2, got {d}"
            )));
        }
        Ok(GroupParams { d })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub(crate) fn check_same(&self, other: &GroupParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }
}

/// A finitely supported lamp configuration, sorted by position, zero values
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseVector(Vec<(i64, u32)>);

impl BaseVector {
    pub fn zero() -> Self {
        BaseVector(Vec::new())
    }

    /// Builds a configuration from arbitrary `(position, value)` pairs;
    /// values at repeated positions are added.
    pub fn from_pairs(params: GroupParams, pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let d = params.d as i64;
        let mut entries: Vec<(i64, i64)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(p, _)| p);
        let mut out: Vec<(i64, u32)> = Vec::with_capacity(entries.len());
        let mut iter = entries.into_iter().peekable();
        while let Some((pos, mut val)) = iter.next() {
            while let Some(&(next, v)) = iter.peek() {
                if next != pos {
                    break;
                }
                val = (val + v).rem_euclid(d);
                iter.next();
            }
            let val = val.rem_euclid(d);
            if val != 0 {
                out.push((pos, val as u32));
            }
        }
        BaseVector(out)
    }

    pub fn entries(&self) -> &[(i64, u32)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, position: i64) -> u32 {
        match self.0.binary_search_by_key(&position, |&(p, _)| p) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// `self + shift_by(other)` with values taken mod `d`.
    fn add_shifted(&self, other: &BaseVector, shift_by: i64, d: u32) -> BaseVector {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut lhs = self.0.iter().copied().peekable();
        let mut rhs = other
            .0
            .iter()
            .map(|&(p, v)| (p.checked_add(shift_by).expect("lamp position overflow"), v))
            .peekable();
        loop {
            match (lhs.peek().copied(), rhs.peek().copied()) {
                (Some((p1, v1)), Some((p2, v2))) => match p1.cmp(&p2) {
                    Ordering::Less => {
                        out.push((p1, v1));
                        lhs.next();
                    }
                    Ordering::Greater => {
                        out.push((p2, v2));
                        rhs.next();
                    }
                    Ordering::Equal => {
                        let v = (v1 + v2) % d;
                        if v != 0 {
                            out.push((p1, v));
                        }
                        lhs.next();
                        rhs.next();
                    }
                },
                (Some(e), None) => {
                    out.push(e);
                    lhs.next();
                }
                (None, Some(e)) => {
                    out.push(e);
                    rhs.next();
                }
                (None, None) => break,
            }
        }
        BaseVector(out)
    }

    fn negated_shifted(&self, shift_by: i64, d: u32) -> BaseVector {
        BaseVector(
            self.0
                .iter()
                .map(|&(p, v)| {
                    (
                        p.checked_add(shift_by).expect("lamp position overflow"),
                        d - v,
                    )
                })
                .collect(),
        )
    }
}

/// An element `b * x^n` of `Z/dZ wr Z` in normal form.
///
/// The derived ordering is the canonical one used for printing and matrix
/// indexing: shift first, then the lamp list lexicographically by
/// `(position, value)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    shift: i64,
    base: BaseVector,
    params: GroupParams,
}

impl WreathElement {
    pub fn identity(params: GroupParams) -> Self {
        WreathElement {
            shift: 0,
            base: BaseVector::zero(),
            params,
        }
    }

    pub fn new(params: GroupParams, base: BaseVector, shift: i64) -> Self {
        debug_assert!(base.0.iter().all(|&(_, v)| v != 0 && v < params.d));
        WreathElement {
            shift,
            base,
            params,
        }
    }

    pub fn from_lamps(
        params: GroupParams,
        lamps: impl IntoIterator<Item = (i64, i64)>,
        shift: i64,
    ) -> Self {
        Self::new(params, BaseVector::from_pairs(params, lamps), shift)
    }

    /// `x^n`.
    pub fn x_pow(params: GroupParams, n: i64) -> Self {
        WreathElement {
            shift: n,
            base: BaseVector::zero(),
            params,
        }
    }

    /// `a_i = x^i a x^-i`: lamp `i` set to one.
    pub fn generator_a(params: GroupParams, i: i64) -> Self {
        Self::lamp(params, i, 1)
    }

    /// `a_i^k`.
    pub fn lamp(params: GroupParams, i: i64, k: i64) -> Self {
        Self::from_lamps(params, [(i, k)], 0)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn base(&self) -> &BaseVector {
        &self.base
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.base.is_zero()
    }

    pub fn in_base_group(&self) -> bool {
        self.shift == 0
    }

    pub fn checked_mul(&self, other: &WreathElement) -> Result<WreathElement> {
        self.params.check_same(&other.params)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &WreathElement) -> WreathElement {
        WreathElement {
            shift: self.shift.checked_add(other.shift).expect("shift overflow"),
            base: self
                .base
                .add_shifted(&other.base, self.shift, self.params.d),
            params: self.params,
        }
    }

    pub fn inverse(&self) -> WreathElement {
        WreathElement {
            shift: -self.shift,
            base: self.base.negated_shifted(-self.shift, self.params.d),
            params: self.params,
        }
    }

    pub fn pow(&self, k: i64) -> WreathElement {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = WreathElement::identity(self.params);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Total order used for deterministic output.
    pub fn canonical_cmp(&self, other: &WreathElement) -> Ordering {
        self.cmp(other)
    }
}

impl Mul<&WreathElement> for &WreathElement {
    type Output = WreathElement;
    fn mul(self, rhs: &WreathElement) -> WreathElement {
        self.checked_mul(rhs).expect("group parameter mismatch")
    }
}

impl Mul for WreathElement {
    type Output = WreathElement;
    fn mul(self, rhs: WreathElement) -> WreathElement {
        &self * &rhs
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut first = true;
        for &(pos, val) in self.base.entries() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if pos == 0 {
                write!(f, "a")?;
            } else {
                write!(f, "a[{pos}]")?;
            }
            if val != 1 {
                write!(f, "^{val}")?;
            }
        }
        if self.shift != 0 {
            if !first {
                write!(f, "*")?;
            }
            if self.shift == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{}", self.shift)?;
            }
        }
        Ok(())
    }
}
