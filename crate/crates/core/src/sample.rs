//! Seeded random generation of group elements, group-ring elements and
//! module vectors, shared by the property suites and the CLI self-test.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::foxwords::{FreeWord, Generator, Letter, ModuleVector};
use crate::groupring::GroupRingElement;
use crate::ring::ScalarRing;
use crate::wreath::{GroupParams, WreathElement};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn seeded(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Lamps at up to four positions in `[-lamp_radius, lamp_radius]`, shift
    /// in `[-shift_radius, shift_radius]`.
    pub fn group_element(
        &mut self,
        params: GroupParams,
        lamp_radius: i64,
        shift_radius: i64,
    ) -> WreathElement {
        let count = self.rng.gen_range(0..=4);
        let lamps: Vec<(i64, i64)> = (0..count)
            .map(|_| {
                (
                    self.rng.gen_range(-lamp_radius..=lamp_radius),
                    self.rng.gen_range(1..params.d() as i64),
                )
            })
            .collect();
        let shift = self.rng.gen_range(-shift_radius..=shift_radius);
        WreathElement::from_lamps(params, lamps, shift)
    }

    /// A nonzero scalar representative: `[-3, 3]` over the integers, a
    /// residue otherwise.
    pub fn coefficient(&mut self, ring: ScalarRing) -> BigInt {
        match ring {
            ScalarRing::Integers => {
                let v = self.rng.gen_range(1..=3);
                BigInt::from(if self.rng.gen_bool(0.5) { v } else { -v })
            }
            ScalarRing::IntegersMod(m) => BigInt::from(self.rng.gen_range(1..m)),
        }
    }

    /// Between one and `max_terms` random terms (cancellation may shrink the
    /// support, possibly to zero).
    pub fn element(
        &mut self,
        ring: ScalarRing,
        params: GroupParams,
        max_terms: usize,
        lamp_radius: i64,
        shift_radius: i64,
    ) -> GroupRingElement {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<(WreathElement, BigInt)> = (0..n)
            .map(|_| {
                (
                    self.group_element(params, lamp_radius, shift_radius),
                    self.coefficient(ring),
                )
            })
            .collect();
        GroupRingElement::from_terms(ring, params, terms)
    }

    /// A random element of the right ideal generated by the base group's
    /// augmentation ideal: a sum of `c (b - b') x^n` with `b, b'` in the base.
    pub fn base_augmentation_element(
        &mut self,
        ring: ScalarRing,
        params: GroupParams,
        max_terms: usize,
        lamp_radius: i64,
        shift_radius: i64,
    ) -> GroupRingElement {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let mut terms = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let g = self.group_element(params, lamp_radius, 0);
            let h = self.group_element(params, lamp_radius, 0);
            let shift =
                WreathElement::x_pow(params, self.rng.gen_range(-shift_radius..=shift_radius));
            let c = self.coefficient(ring);
            terms.push((&g * &shift, c.clone()));
            terms.push((&h * &shift, -c));
        }
        GroupRingElement::from_terms(ring, params, terms)
    }

    pub fn word(&mut self, max_len: usize) -> FreeWord {
        let n = self.rng.gen_range(0..=max_len);
        FreeWord::from_letters(
            (0..n)
                .map(|_| Letter {
                    generator: if self.rng.gen_bool(0.5) {
                        Generator::A
                    } else {
                        Generator::X
                    },
                    inverse: self.rng.gen_bool(0.5),
                })
                .collect(),
        )
    }

    /// Coefficients `z_0, ..., z_max_index`, each zero with probability 1/4.
    pub fn z_entries(
        &mut self,
        ring: ScalarRing,
        params: GroupParams,
        max_index: usize,
        max_terms: usize,
    ) -> Vec<GroupRingElement> {
        (0..=max_index)
            .map(|_| {
                if self.rng.gen_bool(0.25) {
                    GroupRingElement::zero(ring, params)
                } else {
                    self.element(ring, params, max_terms, 3, 3)
                }
            })
            .collect()
    }

    pub fn relator_vector(
        &mut self,
        ring: ScalarRing,
        params: GroupParams,
        max_index: usize,
        max_terms: usize,
    ) -> ModuleVector {
        let z = self.z_entries(ring, params, max_index, max_terms);
        ModuleVector::relators(ring, params, z).expect("consistent ring and params")
    }
}
