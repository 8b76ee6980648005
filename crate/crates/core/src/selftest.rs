//! Built-in consistency checks, seeded and deterministic.

use std::fmt;

use crate::certificates::{certify, mod_b2_reduce, ZVector, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::foxwords::{
    fox_derivative, map_alpha, parse_group_ring_element, FreeWord, Generator,
    PresentationTruncation,
};
use crate::groupring::GroupRingElement;
use crate::linalg::FpMatrix;
use crate::oresearch::{run, SearchOptions, Window};
use crate::ring::ScalarRing;
use crate::sample::Sampler;
use crate::wreath::GroupParams;

pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} failed: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn params(d: u32) -> GroupParams {
    GroupParams::new(d).expect("d >= 2")
}

fn expr(text: &str, ring: ScalarRing, d: u32) -> Result<GroupRingElement> {
    parse_group_ring_element(text, ring, params(d))
}

/// `d(a^d)/da`, `d r_l/da` in two closed forms, and
/// `dr/da (a - 1) + dr/dx (x - 1) = 0` for every relator.
pub fn fox_closed_forms() -> Result<CheckResult> {
    let mut check = Check::new("fox closed forms");
    let z = ScalarRing::Integers;
    for d in 2..=5u32 {
        let norm = (0..d)
            .map(|k| format!("a^{k}"))
            .collect::<Vec<_>>()
            .join(" + ");
        let got = fox_derivative(&FreeWord::relator(params(d), 0), Generator::A, z, params(d));
        let want = expr(&norm, z, d)?;
        check.case(got == want, || {
            format!("d(a^{d})/da = {got}, expected {want}")
        });
        for l in 1..=5i64 {
            let r = FreeWord::relator(params(d), l as usize);
            let got = fox_derivative(&r, Generator::A, z, params(d));
            let four = expr(&format!("1 + a x^{l} - x^{l} a x^{} - x^{l}", -l), z, d)?;
            let simplified = expr(
                &format!("x^{l} (x^{} a x^{l}) - x^{l} - x^{l} a x^{} + 1", -l, -l),
                z,
                d,
            )?;
            check.case(got == four && got == simplified, || {
                format!("d r_{l}/da = {got} for d = {d}")
            });
            let dx = fox_derivative(&r, Generator::X, z, params(d));
            let identity = &(&got * &expr("a - 1", z, d)?) + &(&dx * &expr("x - 1", z, d)?);
            check.case(identity.is_zero(), || {
                format!("fundamental identity fails for r_{l}, d = {d}: {identity}")
            });
        }
    }
    Ok(check.finish())
}

/// `alpha(F(z)) = 0` for random relator vectors over the integers and `GF(2)`.
pub fn fundamental_identity(seed: u64, trials: usize) -> Result<CheckResult> {
    let mut check = Check::new("alpha after F vanishes");
    let mut s = Sampler::seeded(seed);
    for ring in [ScalarRing::Integers, ScalarRing::IntegersMod(2)] {
        for d in [2, 3] {
            let truncation = PresentationTruncation::new(params(d), 6);
            for _ in 0..trials {
                let z = s.relator_vector(ring, params(d), 6, 3);
                let image = map_alpha(&truncation.map_f(&z)?)?;
                check.case(image.is_zero(), || {
                    format!("alpha(F(z)) = {image} over {ring}, d = {d}")
                });
            }
        }
    }
    Ok(check.finish())
}

/// Random certificates verify: `gamma != 0` and `u gamma = 0`.
pub fn sample_certificates(seed: u64, trials: usize) -> Result<CheckResult> {
    let mut check = Check::new("sample certificates");
    let mut s = Sampler::seeded(seed);
    for d in [2, 3] {
        for ring in [
            ScalarRing::Integers,
            ScalarRing::IntegersMod(4),
            ScalarRing::IntegersMod(2),
            ScalarRing::IntegersMod(3),
        ] {
            for i in 0..trials {
                let n = i % 3;
                let z = ZVector::new(s.z_entries(ring, params(d), n, 3))?;
                let cert = certify(&z, DEFAULT_ENUMERATION_CAP)?;
                check.case(cert.verified && cert.recheck(), || {
                    format!("certificate failed for d = {d}, k = {ring}, u = {}", cert.u)
                });
            }
        }
    }
    Ok(check.finish())
}

/// The images of `1 - x^-i a x^i`, `|i| <= 5`, are independent mod `b^2`.
pub fn mod_b2_independence() -> Result<CheckResult> {
    let mut check = Check::new("reduction independence");
    for p in [2u32, 3] {
        let ring = ScalarRing::IntegersMod(p as u64);
        let positions: Vec<i64> = (-5..=5).collect();
        let rows = (-5i64..=5)
            .map(|i| {
                let b = expr(&format!("1 - x^{} a x^{i}", -i), ring, p)?;
                Ok(mod_b2_reduce(&b)?.coordinates(&positions))
            })
            .collect::<Result<Vec<_>>>()?;
        let rank = FpMatrix::from_rows(p, rows)?.rank();
        check.case(rank == positions.len(), || {
            format!("rank {rank} over GF({p})")
        });
    }
    Ok(check.finish())
}

/// Small windows of the bounded search give no contradiction.
pub fn small_searches() -> Result<CheckResult> {
    let mut check = Check::new("small window searches");
    for p in [2u32, 3] {
        for (lamps, shifts) in [(0, 0), (1, 0), (1, 1)] {
            let w = Window::symmetric(lamps, shifts);
            let report = run(p, p, w, &SearchOptions::for_window(w))?;
            check.case(report.verdict.is_success(), || {
                format!("d = p = {p}, {w}: {}", report.verdict)
            });
        }
    }
    Ok(check.finish())
}

/// All checks in a fixed order.
pub fn run_all(seed: u64, trials: usize) -> Result<Vec<CheckResult>> {
    Ok(vec![
        fox_closed_forms()?,
        fundamental_identity(seed, trials)?,
        sample_certificates(seed, trials)?,
        mod_b2_independence()?,
        small_searches()?,
    ])
}
