//! Words in `a, x`, the relators of the lamplighter presentation
//!
//! ```text
//! < a, x | a^d = 1, [a, x^l a x^-l] = 1 (l >= 1) >,     [u, v] = u v u^-1 v^-1
//! ```
//!
//! Fox derivatives, and the two chain maps of the presentation complex
//!
//! ```text
//! (+)_r kG --F--> (+)_s kG --alpha--> kG --eps--> k
//! ```
//!
//! where `alpha(u s) = u (s - 1)` and `F(u r) = sum_s u dr/ds s`. Fox
//! derivatives are evaluated directly in `kG`.

mod parser;
mod word;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::ring::ScalarRing;
use crate::wreath::{GroupParams, WreathElement};

pub use parser::{
    parse_group_element, parse_group_ring_element, parse_word, parse_word_expr, WordExpr,
    MAX_EXPANDED_EXPONENT,
};
pub use word::{FreeWord, Generator, Letter};

/// `dw/ds = sum_k (w_1 ... w_{k-1}) d(w_k)/ds` with `ds/ds = 1`,
/// `d(s^-1)/ds = -s^-1` and zero for the other generator.
pub fn fox_derivative(
    w: &FreeWord,
    s: Generator,
    ring: ScalarRing,
    params: GroupParams,
) -> GroupRingElement {
    let mut terms: Vec<(WreathElement, BigInt)> = Vec::new();
    let mut prefix = WreathElement::identity(params);
    for letter in w.letters() {
        let image = letter.image(params);
        if letter.generator == s {
            if letter.inverse {
                terms.push((prefix.mul_unchecked(&image), BigInt::from(-1)));
            } else {
                terms.push((prefix.clone(), BigInt::from(1)));
            }
        }
        prefix = prefix.mul_unchecked(&image);
    }
    GroupRingElement::from_terms(ring, params, terms)
}

/// The relators `r_0, ..., r_L` of the presentation, truncated at `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationTruncation {
    params: GroupParams,
    max_index: usize,
}

impl PresentationTruncation {
    pub fn new(params: GroupParams, max_index: usize) -> Self {
        PresentationTruncation { params, max_index }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn relator(&self, index: usize) -> Result<FreeWord> {
        if index > self.max_index {
            return Err(Error::RelatorOutOfRange {
                index,
                max: self.max_index,
            });
        }
        Ok(FreeWord::relator(self.params, index))
    }

    pub fn relators(&self) -> Vec<FreeWord> {
        (0..=self.max_index)
            .map(|l| FreeWord::relator(self.params, l))
            .collect()
    }

    /// `F(sum_l z_l r_l) = sum_s (sum_l z_l dr_l/ds) s`.
    pub fn map_f(&self, z: &ModuleVector) -> Result<ModuleVector> {
        if z.basis != Basis::Relators {
            return Err(Error::InvalidParameter(
                "map_f expects a vector over the relator basis".into(),
            ));
        }
        self.params.check_same(&z.params)?;
        let mut out = ModuleVector::zero(z.ring, self.params, Basis::Generators);
        for (&l, coeff) in &z.components {
            let r = self.relator(l)?;
            for s in Generator::ALL {
                let d = fox_derivative(&r, s, z.ring, self.params);
                out.add_to(s.index(), &coeff.checked_mul(&d)?)?;
            }
        }
        Ok(out)
    }
}

/// Which free module a [`ModuleVector`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Basis symbols indexed by generators, `a` = 0 and `x` = 1.
    Generators,
    /// Basis symbols indexed by relator number.
    Relators,
}

/// A left `kG`-linear combination of basis symbols; zero components pruned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    ring: ScalarRing,
    params: GroupParams,
    basis: Basis,
    components: BTreeMap<usize, GroupRingElement>,
}

impl ModuleVector {
    pub fn zero(ring: ScalarRing, params: GroupParams, basis: Basis) -> Self {
        ModuleVector {
            ring,
            params,
            basis,
            components: BTreeMap::new(),
        }
    }

    /// `u a + v x` over the generator basis.
    pub fn generators(u: GroupRingElement, v: GroupRingElement) -> Result<Self> {
        let mut m = Self::zero(u.ring(), u.params(), Basis::Generators);
        m.set(Generator::A.index(), u)?;
        m.set(Generator::X.index(), v)?;
        Ok(m)
    }

    /// `sum_l z_l r_l` over the relator basis.
    pub fn relators(
        ring: ScalarRing,
        params: GroupParams,
        z: impl IntoIterator<Item = GroupRingElement>,
    ) -> Result<Self> {
        let mut m = Self::zero(ring, params, Basis::Relators);
        for (l, c) in z.into_iter().enumerate() {
            m.set(l, c)?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &GroupRingElement)> {
        self.components.iter().map(|(i, c)| (*i, c))
    }

    pub fn component(&self, index: usize) -> GroupRingElement {
        self.components
            .get(&index)
            .cloned()
            .unwrap_or_else(|| GroupRingElement::zero(self.ring, self.params))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if self.basis == Basis::Generators && Generator::from_index(index).is_none() {
            return Err(Error::InvalidParameter(format!(
                "generator index {index} out of range"
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, index: usize, value: GroupRingElement) -> Result<()> {
        self.check_index(index)?;
        self.ring.check_same(&value.ring())?;
        self.params.check_same(&value.params())?;
        if value.is_zero() {
            self.components.remove(&index);
        } else {
            self.components.insert(index, value);
        }
        Ok(())
    }

    fn add_to(&mut self, index: usize, value: &GroupRingElement) -> Result<()> {
        let sum = self.component(index).checked_add(value)?;
        self.set(index, sum)
    }

    pub fn checked_add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        if self.basis != other.basis {
            return Err(Error::InvalidParameter(
                "module vectors over different bases".into(),
            ));
        }
        let mut out = self.clone();
        for (&i, c) in &other.components {
            out.add_to(i, c)?;
        }
        Ok(out)
    }

    /// Left action `w * (sum_i c_i e_i) = sum_i (w c_i) e_i`.
    pub fn left_mul(&self, w: &GroupRingElement) -> Result<ModuleVector> {
        let mut out = Self::zero(self.ring, self.params, self.basis);
        for (&i, c) in &self.components {
            out.set(i, w.checked_mul(c)?)?;
        }
        Ok(out)
    }
}

/// `alpha(sum_s v_s s) = sum_s v_s (s - 1)`.
pub fn map_alpha(v: &ModuleVector) -> Result<GroupRingElement> {
    if v.basis != Basis::Generators {
        return Err(Error::InvalidParameter(
            "map_alpha expects a vector over the generator basis".into(),
        ));
    }
    let mut out = GroupRingElement::zero(v.ring, v.params);
    for (&i, c) in &v.components {
        let s = Generator::from_index(i).expect("validated generator index");
        let s_minus_one = GroupRingElement::from_terms(
            v.ring,
            v.params,
            [
                (s.image(v.params), BigInt::from(1)),
                (WreathElement::identity(v.params), BigInt::from(-1)),
            ],
        );
        out = out.checked_add(&c.checked_mul(&s_minus_one)?)?;
    }
    Ok(out)
}
