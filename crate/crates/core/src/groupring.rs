//! Sparse exact arithmetic in the group ring `kG`.
//!
//! Elements are finite formal sums `sum_g c_g g` keyed by normal forms and
//! iterated in canonical order. Also provides the augmentation `kG -> k`,
//! the projection `kG -> k[x, x^-1]` induced by `b*x^n -> x^n` (whose kernel
//! is the right ideal generated by the augmentation ideal of the base
//! group), and left-multiplication matrices over a window of group
//! elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::ring::{Scalar, ScalarRing};
use crate::wreath::{GroupParams, WreathElement};

/// Products with more term pairs than this are expanded in parallel chunks.
const PARALLEL_PRODUCT_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    ring: ScalarRing,
    params: GroupParams,
    terms: BTreeMap<WreathElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero(ring: ScalarRing, params: GroupParams) -> Self {
        GroupRingElement {
            ring,
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: ScalarRing, params: GroupParams) -> Self {
        Self::from_element(ring, WreathElement::identity(params))
    }

    pub fn from_element(ring: ScalarRing, g: WreathElement) -> Self {
        Self::monomial(ring, 1, g)
    }

    pub fn monomial(ring: ScalarRing, coeff: impl Into<BigInt>, g: WreathElement) -> Self {
        let params = g.params();
        Self::from_terms(ring, params, [(g, coeff.into())])
    }

    /// Sums the given terms; repeated elements accumulate, zeros are pruned.
    /// Panics if a term carries different group parameters.
    pub fn from_terms(
        ring: ScalarRing,
        params: GroupParams,
        terms: impl IntoIterator<Item = (WreathElement, BigInt)>,
    ) -> Self {
        let mut acc: BTreeMap<WreathElement, BigInt> = BTreeMap::new();
        for (g, c) in terms {
            assert_eq!(g.params(), params, "group parameter mismatch");
            *acc.entry(g).or_default() += c;
        }
        Self::from_accumulated(ring, params, acc)
    }

    fn from_accumulated(
        ring: ScalarRing,
        params: GroupParams,
        acc: impl IntoIterator<Item = (WreathElement, BigInt)>,
    ) -> Self {
        let terms = acc
            .into_iter()
            .filter_map(|(g, c)| {
                let c = ring.reduce_owned(c);
                (!c.is_zero()).then_some((g, c))
            })
            .collect();
        GroupRingElement {
            ring,
            params,
            terms,
        }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&WreathElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &WreathElement> {
        self.terms.keys()
    }

    pub fn coefficient(&self, g: &WreathElement) -> Scalar {
        match self.terms.get(g) {
            Some(c) => Scalar::new(self.ring, c.clone()),
            None => self.ring.zero(),
        }
    }

    fn check_compatible(&self, other: &GroupRingElement) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        self.params.check_same(&other.params)
    }

    pub fn checked_add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(other)?;
        let mut acc = self.terms.clone();
        for (g, c) in &other.terms {
            *acc.entry(g.clone()).or_default() += c;
        }
        Ok(Self::from_accumulated(self.ring, self.params, acc))
    }

    pub fn checked_sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(other)?;
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> GroupRingElement {
        Self::from_accumulated(
            self.ring,
            self.params,
            self.terms.iter().map(|(g, c)| (g.clone(), -c)),
        )
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<GroupRingElement> {
        self.ring.check_same(&c.ring())?;
        Ok(self.scale(c.value()))
    }

    pub(crate) fn scale(&self, c: &BigInt) -> GroupRingElement {
        Self::from_accumulated(
            self.ring,
            self.params,
            self.terms.iter().map(|(g, v)| (g.clone(), v * c)),
        )
    }

    /// Convolution `sum_{g,h} a_g b_h (gh)`.
    pub fn checked_mul(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(other)?;
        let pairs = self.len().saturating_mul(other.len());
        let lhs: Vec<(&WreathElement, &BigInt)> = self.terms.iter().collect();
        let expand = |chunk: &[(&WreathElement, &BigInt)]| {
            let mut acc: HashMap<WreathElement, BigInt> = HashMap::new();
            for &(g, a) in chunk {
                for (h, b) in &other.terms {
                    *acc.entry(g.mul_unchecked(h)).or_default() += a * b;
                }
            }
            acc
        };
        let acc = if pairs > PARALLEL_PRODUCT_THRESHOLD && lhs.len() > 1 {
            let chunk = lhs
                .len()
                .div_ceil(rayon::current_num_threads().max(1) * 4)
                .max(1);
            lhs.par_chunks(chunk)
                .map(expand)
                .reduce(HashMap::new, |mut a, b| {
                    for (g, c) in b {
                        *a.entry(g).or_default() += c;
                    }
                    a
                })
        } else {
            expand(&lhs)
        };
        Ok(Self::from_accumulated(self.ring, self.params, acc))
    }

    /// `self * g` for a single group element.
    pub fn mul_element_right(&self, g: &WreathElement) -> Result<GroupRingElement> {
        self.params.check_same(&g.params())?;
        Ok(GroupRingElement {
            ring: self.ring,
            params: self.params,
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (h.mul_unchecked(g), c.clone()))
                .collect(),
        })
    }

    /// `g * self` for a single group element.
    pub fn mul_element_left(&self, g: &WreathElement) -> Result<GroupRingElement> {
        self.params.check_same(&g.params())?;
        Ok(GroupRingElement {
            ring: self.ring,
            params: self.params,
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (g.mul_unchecked(h), c.clone()))
                .collect(),
        })
    }

    pub fn pow(&self, k: u32) -> GroupRingElement {
        let mut acc = Self::one(self.ring, self.params);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The augmentation: sum of all coefficients.
    pub fn augmentation(&self) -> Scalar {
        Scalar::new(self.ring, self.terms.values().sum::<BigInt>())
    }

    /// Image under `b*x^n -> x^n` in `k[x, x^-1]`.
    pub fn project_to_kz(&self) -> LaurentElement {
        LaurentElement::from_terms(
            self.ring,
            self.terms.iter().map(|(g, c)| (g.shift(), c.clone())),
        )
    }

    /// Membership in the kernel of [`project_to_kz`](Self::project_to_kz).
    pub fn is_in_bkg(&self) -> bool {
        self.project_to_kz().is_zero()
    }

    /// Matrix of `beta -> self * beta` from the span of `domain` to the span
    /// of `codomain`: column `j` holds the coordinates of `self * domain[j]`.
    pub fn left_mul_matrix(
        &self,
        domain: &[WreathElement],
        codomain: &[WreathElement],
    ) -> Result<FpMatrix> {
        let p = field_prime(self.ring)?;
        let index: HashMap<&WreathElement, usize> =
            codomain.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut m = FpMatrix::zeros(p, codomain.len(), domain.len())?;
        for (j, g) in domain.iter().enumerate() {
            self.params.check_same(&g.params())?;
            for (h, c) in &self.terms {
                let prod = h.mul_unchecked(g);
                let Some(&i) = index.get(&prod) else {
                    return Err(Error::WindowOverflow(prod.to_string()));
                };
                let v = (m.get(i, j) as u64 + residue(c, p) as u64) % p as u64;
                m.set(i, j, v as u32);
            }
        }
        Ok(m)
    }

    /// Coordinates in the given basis; fails if the support is not inside it.
    pub fn coordinates(&self, basis: &[WreathElement]) -> Result<Vec<u32>> {
        let p = field_prime(self.ring)?;
        let index: HashMap<&WreathElement, usize> =
            basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut v = vec![0u32; basis.len()];
        for (g, c) in &self.terms {
            let Some(&i) = index.get(g) else {
                return Err(Error::WindowOverflow(g.to_string()));
            };
            v[i] = residue(c, p);
        }
        Ok(v)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(
        ring: ScalarRing,
        params: GroupParams,
        basis: &[WreathElement],
        coords: &[u32],
    ) -> Self {
        Self::from_terms(
            ring,
            params,
            basis
                .iter()
                .zip(coords)
                .filter(|(_, &c)| c != 0)
                .map(|(g, &c)| (g.clone(), BigInt::from(c))),
        )
    }
}

/// The prime of a prime-field coefficient ring, as a `u32`.
pub(crate) fn field_prime(ring: ScalarRing) -> Result<u32> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    u32::try_from(ring.characteristic())
        .map_err(|_| Error::InvalidParameter(format!("field {ring} too large for the solver")))
}

fn residue(c: &BigInt, p: u32) -> u32 {
    let r = c % BigInt::from(p);
    let r = if r.is_negative() { r + p } else { r };
    u32::try_from(r).expect("residue below p")
}

macro_rules! ring_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&GroupRingElement> for &GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: &GroupRingElement) -> GroupRingElement {
                self.$checked(rhs)
                    .expect("group ring elements over different rings or groups")
            }
        }
        impl $trait for GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: GroupRingElement) -> GroupRingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_binop!(Add, add, checked_add);
ring_binop!(Sub, sub, checked_sub);
ring_binop!(Mul, mul, checked_mul);

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.negate()
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.negate()
    }
}

/// Writes `c * m` terms joined by signs, with the unit monomial printed as
/// `"1"`; shared by group-ring and Laurent printing.
fn write_signed_sum<'a, M: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, M, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (c, m, is_unit) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if is_unit {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(f, self.terms.iter().map(|(g, c)| (c, g, g.is_identity())))
    }
}

/// An element of `k[x, x^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    ring: ScalarRing,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentElement {
    pub fn zero(ring: ScalarRing) -> Self {
        LaurentElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ring: ScalarRing, terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (n, c) in terms {
            *acc.entry(n).or_default() += c;
        }
        let terms = acc
            .into_iter()
            .filter_map(|(n, c)| {
                let c = ring.reduce_owned(c);
                (!c.is_zero()).then_some((n, c))
            })
            .collect();
        LaurentElement { ring, terms }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: i64) -> Scalar {
        Scalar::new(self.ring, self.terms.get(&n).cloned().unwrap_or_default())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn checked_add(&self, other: &LaurentElement) -> Result<LaurentElement> {
        self.ring.check_same(&other.ring)?;
        Ok(Self::from_terms(
            self.ring,
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(n, c)| (*n, c.clone())),
        ))
    }

    pub fn checked_mul(&self, other: &LaurentElement) -> Result<LaurentElement> {
        self.ring.check_same(&other.ring)?;
        Ok(Self::from_terms(
            self.ring,
            self.terms
                .iter()
                .flat_map(|(n, a)| other.terms.iter().map(move |(m, b)| (n + m, a * b))),
        ))
    }
}

struct XPower(i64);

impl fmt::Display for XPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => write!(f, "x"),
            n => write!(f, "x^{n}"),
        }
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(f, self.terms.iter().map(|(n, c)| (c, XPower(*n), *n == 0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use proptest::prelude::*;

    fn p(d: u32) -> GroupParams {
        GroupParams::new(d).unwrap()
    }

    type Terms<'a> = &'a [(i64, &'a [(i64, i64)], i64)];

    fn el(ring: ScalarRing, d: u32, terms: Terms) -> GroupRingElement {
        GroupRingElement::from_terms(
            ring,
            p(d),
            terms.iter().map(|&(c, lamps, shift)| {
                (
                    WreathElement::from_lamps(p(d), lamps.iter().copied(), shift),
                    BigInt::from(c),
                )
            }),
        )
    }

    /// Double loop over both supports with a linear-scan accumulator.
    fn naive_mul(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let mut out: Vec<(WreathElement, BigInt)> = Vec::new();
        for (g, x) in a.terms() {
            for (h, y) in b.terms() {
                let gh = g * h;
                match out.iter_mut().find(|(k, _)| *k == gh) {
                    Some((_, c)) => *c += x * y,
                    None => out.push((gh, x * y)),
                }
            }
        }
        GroupRingElement::from_terms(a.ring(), a.params(), out)
    }

    #[test]
    fn additive_examples() {
        let z = ScalarRing::Integers;
        let one_minus_a = el(z, 3, &[(1, &[], 0), (-1, &[(0, 1)], 0)]);
        let a_minus_one = el(z, 3, &[(-1, &[], 0), (1, &[(0, 1)], 0)]);
        assert!((&one_minus_a + &a_minus_one).is_zero());
        assert!((&one_minus_a + &(-&one_minus_a)).is_zero());
        assert_eq!(one_minus_a.scalar_mul(&z.one()).unwrap(), one_minus_a);
        assert_eq!(one_minus_a.to_string(), "1 - a");
    }

    #[test]
    fn norm_element_kills_one_minus_a() {
        for d in 2..6 {
            for ring in [
                ScalarRing::Integers,
                ScalarRing::IntegersMod(4),
                ScalarRing::IntegersMod(3),
            ] {
                let norm = GroupRingElement::from_terms(
                    ring,
                    p(d),
                    (0..d as i64).map(|k| (WreathElement::lamp(p(d), 0, k), BigInt::one())),
                );
                let one_minus_a = el(ring, d, &[(1, &[], 0), (-1, &[(0, 1)], 0)]);
                assert!((&one_minus_a * &norm).is_zero());
                assert!((&norm * &one_minus_a).is_zero());
            }
        }
    }

    #[test]
    fn noncommutative_product() {
        let z = ScalarRing::Integers;
        let lhs = el(z, 2, &[(1, &[], 1), (-1, &[(0, 1)], 1)]); // (1-a)x
        let rhs = el(z, 2, &[(1, &[], -1), (-1, &[(1, 1)], -1)]); // (1-a_1)x^-1
        let prod = &lhs * &rhs;
        assert_eq!(prod, naive_mul(&lhs, &rhs));
        // (1-a) x (1-a_1) x^-1 = (1-a)(1-a_2)
        let expect = el(
            z,
            2,
            &[
                (1, &[], 0),
                (-1, &[(0, 1)], 0),
                (-1, &[(2, 1)], 0),
                (1, &[(0, 1), (2, 1)], 0),
            ],
        );
        assert_eq!(prod, expect);
        assert_ne!(prod, &rhs * &lhs);
        let one_minus_x = el(z, 2, &[(1, &[], 0), (-1, &[], 1)]);
        assert_eq!(&one_minus_x * &GroupRingElement::one(z, p(2)), one_minus_x);
    }

    #[test]
    fn augmentation_and_projection() {
        let z = ScalarRing::Integers;
        let g = WreathElement::from_lamps(p(3), [(2, 1), (-1, 2)], 4);
        let single = GroupRingElement::from_element(z, g.clone());
        assert!(single.augmentation().is_one());
        let proj = single.project_to_kz();
        assert_eq!(proj, LaurentElement::from_terms(z, [(4, BigInt::one())]));
        let one_minus_a = el(z, 3, &[(1, &[], 0), (-1, &[(0, 1)], 0)]);
        assert!(one_minus_a.augmentation().is_zero());
        assert!(one_minus_a.project_to_kz().is_zero());
        assert!(one_minus_a.is_in_bkg());
        let one_minus_x = el(z, 3, &[(1, &[], 0), (-1, &[], 1)]);
        assert!(!one_minus_x.is_in_bkg());
        assert_eq!(one_minus_x.project_to_kz().to_string(), "1 - x");
    }

    #[test]
    fn window_overflow() {
        let ring = ScalarRing::IntegersMod(2);
        let one_minus_x = el(ring, 2, &[(1, &[], 0), (-1, &[], 1)]);
        let dom = vec![WreathElement::identity(p(2))];
        assert!(matches!(
            one_minus_x.left_mul_matrix(&dom, &dom),
            Err(Error::WindowOverflow(_))
        ));
        let cod = vec![WreathElement::identity(p(2)), WreathElement::x_pow(p(2), 1)];
        let m = one_minus_x.left_mul_matrix(&dom, &cod).unwrap();
        assert_eq!(m.column(0), vec![1, 1]);
        let over_z = el(ScalarRing::Integers, 2, &[(1, &[], 0)]);
        assert!(matches!(
            over_z.left_mul_matrix(&dom, &dom),
            Err(Error::NotAField(_))
        ));
    }

    #[test]
    fn left_mul_by_one_is_identity_pattern() {
        let ring = ScalarRing::IntegersMod(3);
        let basis: Vec<WreathElement> = (-2..=2)
            .map(|n| WreathElement::from_lamps(p(3), [(1, 2)], n))
            .collect();
        let m = GroupRingElement::one(ring, p(3))
            .left_mul_matrix(&basis, &basis)
            .unwrap();
        assert_eq!(m, FpMatrix::identity(3, 5).unwrap());
    }

    #[test]
    fn one_minus_x_columns_have_two_entries() {
        let ring = ScalarRing::IntegersMod(5);
        let dom: Vec<WreathElement> = (-1..=1).map(|n| WreathElement::x_pow(p(2), n)).collect();
        let cod: Vec<WreathElement> = (-1..=2).map(|n| WreathElement::x_pow(p(2), n)).collect();
        let one_minus_x = el(ring, 2, &[(1, &[], 0), (-1, &[], 1)]);
        let m = one_minus_x.left_mul_matrix(&dom, &cod).unwrap();
        for j in 0..3 {
            let mut col = m.column(j);
            col.retain(|&v| v != 0);
            col.sort();
            assert_eq!(col, vec![1, 4]);
        }
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = GroupRingElement::one(ScalarRing::Integers, p(2));
        let b = GroupRingElement::one(ScalarRing::IntegersMod(2), p(2));
        let c = GroupRingElement::one(ScalarRing::Integers, p(3));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(
            a.checked_mul(&c),
            Err(Error::ParamsMismatch { .. })
        ));
    }

    #[test]
    fn display_forms() {
        let z = ScalarRing::Integers;
        let e = el(z, 3, &[(1, &[], 0), (-1, &[(0, 1)], 0), (2, &[(1, 1)], -1)]);
        assert_eq!(e.to_string(), "2*a[1]*x^-1 + 1 - a");
        let f3 = ScalarRing::IntegersMod(3);
        let e = el(f3, 3, &[(1, &[], 0), (-1, &[(0, 1)], 0)]);
        assert_eq!(e.to_string(), "1 + 2*a");
        assert_eq!(GroupRingElement::zero(z, p(2)).to_string(), "0");
        let neg = el(z, 2, &[(-3, &[], 0)]);
        assert_eq!(neg.to_string(), "-3");
    }

    #[test]
    fn product_support_is_bounded() {
        let mut s = Sampler::seeded(7);
        for _ in 0..200 {
            let a = s.element(ScalarRing::Integers, p(2), 4, 2, 2);
            let b = s.element(ScalarRing::Integers, p(2), 4, 2, 2);
            let prod = &a * &b;
            for g in prod.support() {
                assert!(a.support().any(|x| b.support().any(|y| &(x * y) == g)));
            }
        }
    }

    #[test]
    fn large_products_match_sequential_expansion() {
        let mut s = Sampler::seeded(11);
        let ring = ScalarRing::IntegersMod(4);
        let mut big = || {
            let mut e = GroupRingElement::zero(ring, p(3));
            while e.len() < 300 {
                e = &e + &s.element(ring, p(3), 50, 4, 3);
            }
            e
        };
        let (a, b) = (big(), big());
        assert!(a.len() * b.len() > PARALLEL_PRODUCT_THRESHOLD);
        assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    fn ring_strategy() -> impl Strategy<Value = ScalarRing> {
        prop_oneof![
            Just(ScalarRing::Integers),
            Just(ScalarRing::IntegersMod(2)),
            Just(ScalarRing::IntegersMod(3)),
            Just(ScalarRing::IntegersMod(4)),
        ]
    }

    fn element(ring: ScalarRing, d: u32) -> impl Strategy<Value = GroupRingElement> {
        proptest::collection::vec(
            (
                -3i64..=3,
                proptest::collection::vec((-2i64..=2, 0i64..d as i64), 0..3),
                -2i64..=2,
            ),
            0..5,
        )
        .prop_map(move |terms| {
            GroupRingElement::from_terms(
                ring,
                p(d),
                terms.into_iter().map(|(c, lamps, shift)| {
                    (
                        WreathElement::from_lamps(p(d), lamps, shift),
                        BigInt::from(c),
                    )
                }),
            )
        })
    }

    fn triple() -> impl Strategy<Value = (GroupRingElement, GroupRingElement, GroupRingElement)> {
        (ring_strategy(), 2u32..4)
            .prop_flat_map(|(r, d)| (element(r, d), element(r, d), element(r, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms_against_naive_oracle((a, b, c) in triple()) {
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
            prop_assert_eq!(naive_mul(&naive_mul(&a, &b), &c), naive_mul(&a, &naive_mul(&b, &c)));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1_000))]

        #[test]
        fn augmentation_and_projection_are_homomorphisms((a, b, _c) in triple()) {
            let ab = &a * &b;
            prop_assert_eq!(ab.augmentation(), &a.augmentation() * &b.augmentation());
            prop_assert_eq!(ab.project_to_kz(), a.project_to_kz().checked_mul(&b.project_to_kz()).unwrap());
            prop_assert_eq!((&a + &b).project_to_kz(), a.project_to_kz().checked_add(&b.project_to_kz()).unwrap());
        }

        #[test]
        fn projection_of_one_minus_x_multiple((a, _b, _c) in triple()) {
            let ring = a.ring();
            let d = a.params().d();
            let one_minus_x = el(ring, d, &[(1, &[], 0), (-1, &[], 1)]);
            // (1 - x) * pi(a), expanded by hand
            let direct = LaurentElement::from_terms(
                ring,
                a.project_to_kz().terms().flat_map(|(n, c)| [(n, c.clone()), (n + 1, -c)]),
            );
            prop_assert_eq!((&one_minus_x * &a).project_to_kz(), direct);
        }

        #[test]
        fn left_ideal_of_one_minus_a_lies_in_kernel((a, _b, _c) in triple()) {
            let d = a.params().d();
            let one_minus_a = el(a.ring(), d, &[(1, &[], 0), (-1, &[(0, 1)], 0)]);
            prop_assert!((&one_minus_a * &a).is_in_bkg());
        }

        #[test]
        fn one_minus_x_is_not_a_zerodivisor(a in element(ScalarRing::IntegersMod(2), 2)) {
            prop_assume!(!a.is_zero());
            let one_minus_x = el(a.ring(), 2, &[(1, &[], 0), (-1, &[], 1)]);
            prop_assert!(!(&one_minus_x * &a).is_zero());
            prop_assert!(!(&a * &one_minus_x).is_zero());
        }

        #[test]
        fn matrix_agrees_with_multiplication(a in element(ScalarRing::IntegersMod(3), 3), b in element(ScalarRing::IntegersMod(3), 3)) {
            let domain: Vec<WreathElement> = b.support().cloned().collect();
            let mut codomain: Vec<WreathElement> = domain
                .iter()
                .flat_map(|g| a.support().map(move |h| h * g))
                .collect();
            codomain.sort();
            codomain.dedup();
            let m = a.left_mul_matrix(&domain, &codomain).unwrap();
            let lhs = m.mul_vec(&b.coordinates(&domain).unwrap());
            let rhs = (&a * &b).coordinates(&codomain).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
