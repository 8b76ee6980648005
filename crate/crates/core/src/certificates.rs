//! Zerodivisor witnesses.
//!
//! * [`build_u`] assembles the `a`-coefficient `u` of `F(sum_l z_l r_l)`
//!   from closed forms of the Fox derivatives,
//! * [`gamma`] builds `(1 - a) sum_{c in C} c` where `C` is the finite
//!   subgroup generated by the lamps `a_n`, `1 <= |n| <= N`,
//! * [`certify`] packages `u`, `gamma` and the product `u * gamma`, which
//!   vanishes for every choice of `z`,
//! * [`lzero_annihilator`] finds a nonzero left annihilator of a family of
//!   elements of `b kG` by summing a finite subgroup of the base group,
//! * [`mod_b2_reduce`] maps the augmentation ideal of the base group onto
//!   `B (x) k` modulo its square (prime `d`, characteristic `d`).
//!
//! A certificate checks `u * gamma = 0`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::ring::ScalarRing;
use crate::wreath::{BaseVector, GroupParams, WreathElement};

/// Default cap on enumerated subgroup elements.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Coefficients `z_0, ..., z_N` of `sum_l z_l r_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZVector {
    ring: ScalarRing,
    params: GroupParams,
    entries: Vec<GroupRingElement>,
}

impl ZVector {
    /// Needs at least `z_0`; all entries must share ring and group.
    pub fn new(entries: Vec<GroupRingElement>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidParameter("z needs at least the entry z_0".into()))?;
        let (ring, params) = (first.ring(), first.params());
        for e in &entries {
            ring.check_same(&e.ring())?;
            params.check_same(&e.params())?;
        }
        Ok(ZVector {
            ring,
            params,
            entries,
        })
    }

    pub fn zero(ring: ScalarRing, params: GroupParams, n: usize) -> Self {
        ZVector {
            ring,
            params,
            entries: vec![GroupRingElement::zero(ring, params); n + 1],
        }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// `N`, the largest relator index.
    pub fn max_index(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }
}

/// `1 + a + ... + a^{d-1}`.
pub fn norm_of_a(ring: ScalarRing, params: GroupParams) -> GroupRingElement {
    GroupRingElement::from_terms(
        ring,
        params,
        (0..params.d() as i64).map(|k| (WreathElement::lamp(params, 0, k), BigInt::one())),
    )
}

/// `g - 1`.
fn minus_one(ring: ScalarRing, g: WreathElement) -> GroupRingElement {
    let params = g.params();
    GroupRingElement::from_terms(
        ring,
        params,
        [
            (g, BigInt::one()),
            (WreathElement::identity(params), BigInt::from(-1)),
        ],
    )
}

/// `u = z_0 (1 + a + ... + a^{d-1}) + sum_{n=1}^N z_n x^n (x^-n a x^n - 1) - z_n (x^n a x^-n - 1)`.
pub fn build_u(z: &ZVector) -> GroupRingElement {
    let (ring, params) = (z.ring, z.params);
    let mut u = &z.entries[0] * &norm_of_a(ring, params);
    for (n, zn) in z.entries.iter().enumerate().skip(1) {
        if zn.is_zero() {
            continue;
        }
        let n = n as i64;
        let xn = GroupRingElement::from_element(ring, WreathElement::x_pow(params, n));
        let left = &xn * &minus_one(ring, WreathElement::generator_a(params, -n));
        let right = minus_one(ring, WreathElement::generator_a(params, n));
        u = &u + &(&(zn * &left) - &(zn * &right));
    }
    u
}

/// Number of elements of `C` for the given `N`, i.e. `d^{2N}`, if it fits.
fn subgroup_order(params: GroupParams, n: usize) -> Option<u128> {
    (params.d() as u128).checked_pow(u32::try_from(2 * n).ok()?)
}

/// All configurations supported on `{-N, ..., N} \ {0}`, i.e. the subgroup
/// `C` generated by `a_n` for `1 <= |n| <= N`.
fn enumerate_c(params: GroupParams, n: usize, cap: usize) -> Result<Vec<WreathElement>> {
    let order = subgroup_order(params, n).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(Error::LimitExceeded {
            what: "subgroup C",
            needed: order,
            cap: cap as u128,
        });
    }
    let n = n as i64;
    let positions: Vec<i64> = (-n..=n).filter(|&i| i != 0).collect();
    let d = params.d() as i64;
    let mut digits = vec![0i64; positions.len()];
    let mut out = Vec::with_capacity(order as usize);
    loop {
        out.push(WreathElement::from_lamps(
            params,
            positions.iter().copied().zip(digits.iter().copied()),
            0,
        ));
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < d {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `gamma = (1 - a) sum_{c in C} c`, with `|C| = d^{2N}` bounded by `cap`.
pub fn gamma(
    n: usize,
    ring: ScalarRing,
    params: GroupParams,
    cap: usize,
) -> Result<GroupRingElement> {
    let c = enumerate_c(params, n, cap)?;
    let sum_c =
        GroupRingElement::from_terms(ring, params, c.into_iter().map(|g| (g, BigInt::one())));
    let one_minus_a = -&minus_one(ring, WreathElement::generator_a(params, 0));
    Ok(&one_minus_a * &sum_c)
}

/// A witness that `u` is a left zerodivisor: `gamma != 0` and `u * gamma = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub z: ZVector,
    pub u: GroupRingElement,
    pub gamma: GroupRingElement,
    pub product: GroupRingElement,
    pub verified: bool,
}

impl Certificate {
    pub fn params(&self) -> GroupParams {
        self.z.params
    }

    pub fn ring(&self) -> ScalarRing {
        self.z.ring
    }

    pub fn max_index(&self) -> usize {
        self.z.max_index()
    }

    /// Recomputes everything from `z` and from the stored `u` and `gamma`;
    /// true iff the stored data is consistent and the witness holds.
    pub fn recheck(&self) -> bool {
        let product = match self.u.checked_mul(&self.gamma) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let witness = !self.gamma.is_zero() && product.is_zero();
        witness && product == self.product && self.verified && build_u(&self.z) == self.u
    }
}

/// Builds `u` from `z` and checks it against `gamma` for `N = z.max_index()`.
pub fn certify(z: &ZVector, cap: usize) -> Result<Certificate> {
    let u = build_u(z);
    let gamma = gamma(z.max_index(), z.ring, z.params, cap)?;
    let product = &u * &gamma;
    let verified = !gamma.is_zero() && product.is_zero();
    Ok(Certificate {
        z: z.clone(),
        u,
        gamma,
        product,
        verified,
    })
}

/// The base configurations `b` occurring in `alpha = sum_t beta_t x^t`;
/// fails unless every `beta_t` has augmentation zero.
fn base_parts(alpha: &GroupRingElement) -> Result<Vec<BaseVector>> {
    if !alpha.is_in_bkg() {
        return Err(Error::NotInAugmentationIdeal(alpha.to_string()));
    }
    Ok(alpha.support().map(|g| g.base().clone()).collect())
}

/// The subgroup of the base group generated by `generators`, by breadth
/// first closure under addition.
pub fn base_subgroup_closure(
    params: GroupParams,
    generators: &[BaseVector],
    cap: usize,
) -> Result<Vec<BaseVector>> {
    let gens: Vec<WreathElement> = {
        let mut seen = HashSet::new();
        generators
            .iter()
            .filter(|b| !b.is_zero() && seen.insert((*b).clone()))
            .map(|b| WreathElement::new(params, b.clone(), 0))
            .collect()
    };
    let identity = WreathElement::identity(params);
    let mut seen: HashSet<WreathElement> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = g.mul_unchecked(s);
            if seen.contains(&h) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::LimitExceeded {
                    what: "base subgroup closure",
                    needed: seen.len() as u128 + 1,
                    cap: cap as u128,
                });
            }
            seen.insert(h.clone());
            order.push(h.clone());
            queue.push_back(h);
        }
    }
    order.sort();
    Ok(order.into_iter().map(|g| g.base().clone()).collect())
}

/// A nonzero `beta` in the base group ring with `beta * alpha_i = 0` for
/// every `alpha_i`, each of which must lie in `b kG`.
pub fn lzero_annihilator(
    alphas: &[GroupRingElement],
    ring: ScalarRing,
    params: GroupParams,
    cap: usize,
) -> Result<GroupRingElement> {
    let mut generators = Vec::new();
    for alpha in alphas {
        ring.check_same(&alpha.ring())?;
        params.check_same(&alpha.params())?;
        generators.extend(base_parts(alpha)?);
    }
    let subgroup = base_subgroup_closure(params, &generators, cap)?;
    Ok(GroupRingElement::from_terms(
        ring,
        params,
        subgroup
            .into_iter()
            .map(|b| (WreathElement::new(params, b, 0), BigInt::one())),
    ))
}

/// An element of `B (x) k`: lamp position to coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModB2Vector {
    ring: ScalarRing,
    entries: BTreeMap<i64, BigInt>,
}

impl ModB2Vector {
    /// Coefficients are reduced into the ring; zero entries are dropped.
    pub fn from_entries(
        ring: ScalarRing,
        entries: impl IntoIterator<Item = (i64, BigInt)>,
    ) -> Self {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (pos, c) in entries {
            *acc.entry(pos).or_default() += c;
        }
        let entries = acc
            .into_iter()
            .filter_map(|(pos, c)| {
                let c = ring.reduce(&c);
                (!c.is_zero()).then_some((pos, c))
            })
            .collect();
        ModB2Vector { ring, entries }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.entries.iter().map(|(p, c)| (*p, c))
    }

    pub fn get(&self, position: i64) -> BigInt {
        self.entries.get(&position).cloned().unwrap_or_default()
    }

    /// Coordinates over the listed positions; entries elsewhere are dropped.
    pub fn coordinates(&self, positions: &[i64]) -> Vec<u32> {
        positions
            .iter()
            .map(|p| u32::try_from(self.get(*p)).expect("canonical residue fits u32"))
            .collect()
    }
}

impl fmt::Display for ModB2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, c)| {
                if c.is_one() {
                    format!("e[{p}]")
                } else {
                    format!("{c}*e[{p}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_b c_b b -> sum_b c_b vec(b)` where `vec(b)` is the lamp vector of
/// `b` over `GF(p)`. Requires `k = GF(p)`, `d = p`, support in the base
/// group and augmentation zero.
pub fn mod_b2_reduce(beta: &GroupRingElement) -> Result<ModB2Vector> {
    let ring = beta.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let p = ring.characteristic();
    let d = beta.params().d();
    if d as u64 != p {
        return Err(Error::CharacteristicMismatch { d, p });
    }
    if let Some(g) = beta.support().find(|g| !g.in_base_group()) {
        return Err(Error::NotInBaseGroup(g.to_string()));
    }
    let aug = beta.augmentation();
    if !aug.is_zero() {
        return Err(Error::NonzeroAugmentation(aug.to_string()));
    }
    Ok(ModB2Vector::from_entries(
        ring,
        beta.terms().flat_map(|(g, c)| {
            g.base()
                .entries()
                .iter()
                .map(move |&(pos, val)| (pos, c * BigInt::from(val)))
        }),
    ))
}
