//! Bounded-support solutions of `(1 - a) sigma = (1 - x) alpha` over `GF(p)`.
//!
//! Unknowns are the coefficients of `sigma` and `alpha` on a [`Window`] of
//! group elements. The constraint rows are indexed by the extended window,
//! the union of the supports of `(1 - a) g` and `(1 - x) g` over the window,
//! so every product is represented exactly. Each kernel basis vector gives a
//! pair `(sigma, alpha)`; the report records whether `sigma` lies in `b kG`
//! and, optionally, a nonzero `w` with `sigma w = 0` found by a second
//! bounded solve.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::linalg::FpMatrix;
use crate::ring::ScalarRing;
use crate::wreath::{GroupParams, WreathElement};

pub const DEFAULT_WINDOW_CAP: usize = 1_000_000;
pub const DEFAULT_MATRIX_CAP: usize = 50_000_000;

/// Group elements with lamps inside `lamps` and shift inside `shifts`
/// (closed intervals; an interval with `lo > hi` is empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lamps: (i64, i64),
    pub shifts: (i64, i64),
}

impl Window {
    /// Lamps in `[-lamp_radius, lamp_radius]`, shifts in `[-shift_radius, shift_radius]`.
    pub fn symmetric(lamp_radius: i64, shift_radius: i64) -> Self {
        Window {
            lamps: (-lamp_radius, lamp_radius),
            shifts: (-shift_radius, shift_radius),
        }
    }

    /// A window with no elements.
    pub fn empty() -> Self {
        Window {
            lamps: (0, -1),
            shifts: (0, -1),
        }
    }

    pub fn widened(&self, extra_lamps: i64, extra_shifts: i64) -> Self {
        Window {
            lamps: (self.lamps.0 - extra_lamps, self.lamps.1 + extra_lamps),
            shifts: (self.shifts.0 - extra_shifts, self.shifts.1 + extra_shifts),
        }
    }

    fn lamp_positions(&self) -> u64 {
        (self.lamps.1 - self.lamps.0 + 1).max(0) as u64
    }

    fn shift_count(&self) -> u64 {
        (self.shifts.1 - self.shifts.0 + 1).max(0) as u64
    }

    /// `d^(lamp positions) * (shift count)`, or `None` on overflow.
    pub fn size(&self, params: GroupParams) -> Option<u128> {
        let configs =
            (params.d() as u128).checked_pow(u32::try_from(self.lamp_positions()).ok()?)?;
        configs.checked_mul(self.shift_count() as u128)
    }

    pub fn contains(&self, g: &WreathElement) -> bool {
        (self.shifts.0..=self.shifts.1).contains(&g.shift())
            && g.base()
                .positions()
                .all(|i| (self.lamps.0..=self.lamps.1).contains(&i))
    }

    /// All elements in canonical order; fails if there are more than `cap`.
    pub fn elements(&self, params: GroupParams, cap: usize) -> Result<Vec<WreathElement>> {
        let size = self.size(params).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::LimitExceeded {
                what: "window elements",
                needed: size,
                cap: cap as u128,
            });
        }
        if size == 0 {
            return Ok(Vec::new());
        }
        let positions: Vec<i64> = (self.lamps.0..=self.lamps.1).collect();
        let d = params.d() as i64;
        let mut configs = Vec::new();
        let mut digits = vec![0i64; positions.len()];
        'outer: loop {
            configs.push(
                positions
                    .iter()
                    .copied()
                    .zip(digits.iter().copied())
                    .collect::<Vec<_>>(),
            );
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit < d {
                    continue 'outer;
                }
                *digit = 0;
            }
            break;
        }
        let mut out: Vec<WreathElement> = (self.shifts.0..=self.shifts.1)
            .flat_map(|n| {
                configs
                    .iter()
                    .map(move |c| WreathElement::from_lamps(params, c.iter().copied(), n))
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lamps [{}, {}], shifts [{}, {}]",
            self.lamps.0, self.lamps.1, self.shifts.0, self.shifts.1
        )
    }
}

/// Limits and switches for [`run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cap on enumerated window elements.
    pub window_cap: usize,
    /// Cap on dense matrix entries.
    pub matrix_cap: usize,
    /// Search window for right annihilators; `None` skips the search.
    pub annihilator_window: Option<Window>,
}

impl SearchOptions {
    /// Default caps, annihilators searched one lamp index wider than `window`.
    pub fn for_window(window: Window) -> Self {
        SearchOptions {
            window_cap: DEFAULT_WINDOW_CAP,
            matrix_cap: DEFAULT_MATRIX_CAP,
            annihilator_window: Some(window.widened(1, 0)),
        }
    }

    pub fn without_annihilators(mut self) -> Self {
        self.annihilator_window = None;
        self
    }
}

/// The linear system `(1 - a) sigma - (1 - x) alpha = 0` on a window.
#[derive(Debug, Clone)]
pub struct OreSystem {
    ring: ScalarRing,
    params: GroupParams,
    window: Window,
    unknowns: Vec<WreathElement>,
    extended: Vec<WreathElement>,
    matrix: FpMatrix,
}

fn one_minus(ring: ScalarRing, g: WreathElement) -> GroupRingElement {
    let params = g.params();
    GroupRingElement::from_terms(
        ring,
        params,
        [
            (WreathElement::identity(params), BigInt::from(1)),
            (g, BigInt::from(-1)),
        ],
    )
}

fn field(p: u32) -> Result<ScalarRing> {
    let ring = ScalarRing::integers_mod(p as u64)?;
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    Ok(ring)
}

fn check_matrix_size(rows: usize, cols: usize, cap: usize) -> Result<()> {
    let entries = rows as u128 * cols as u128;
    if entries > cap as u128 {
        return Err(Error::LimitExceeded {
            what: "matrix entries",
            needed: entries,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Assembles the system for `Z/dZ wr Z` over `GF(p)`.
pub fn build_system(window: Window, p: u32, d: u32, options: &SearchOptions) -> Result<OreSystem> {
    let ring = field(p)?;
    let params = GroupParams::new(d)?;
    let unknowns = window.elements(params, options.window_cap)?;
    let a = WreathElement::generator_a(params, 0);
    let x = WreathElement::x_pow(params, 1);
    let extended: Vec<WreathElement> = unknowns
        .par_iter()
        .flat_map_iter(|g| [g.clone(), a.mul_unchecked(g), x.mul_unchecked(g)])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    check_matrix_size(extended.len(), 2 * unknowns.len(), options.matrix_cap)?;
    let left = one_minus(ring, a).left_mul_matrix(&unknowns, &extended)?;
    let right = one_minus(ring, x).left_mul_matrix(&unknowns, &extended)?;
    let matrix = left.hstack(&right.negated())?;
    Ok(OreSystem {
        ring,
        params,
        window,
        unknowns,
        extended,
        matrix,
    })
}

impl OreSystem {
    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Window elements; the coordinates of `sigma` come first, then `alpha`.
    pub fn unknowns(&self) -> &[WreathElement] {
        &self.unknowns
    }

    pub fn extended_window(&self) -> &[WreathElement] {
        &self.extended
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// Splits a solution vector into `(sigma, alpha)`.
    pub fn split(&self, v: &[u32]) -> (GroupRingElement, GroupRingElement) {
        let n = self.unknowns.len();
        assert_eq!(v.len(), 2 * n, "solution vector length");
        (
            GroupRingElement::from_coordinates(self.ring, self.params, &self.unknowns, &v[..n]),
            GroupRingElement::from_coordinates(self.ring, self.params, &self.unknowns, &v[n..]),
        )
    }

    /// Coordinates of `(sigma, alpha)`; fails if either leaves the window.
    pub fn join(&self, sigma: &GroupRingElement, alpha: &GroupRingElement) -> Result<Vec<u32>> {
        let mut v = sigma.coordinates(&self.unknowns)?;
        v.extend(alpha.coordinates(&self.unknowns)?);
        Ok(v)
    }
}

/// Kernel basis of the system, from the deterministic row reduction.
pub fn nullspace(system: &OreSystem) -> Vec<Vec<u32>> {
    system.matrix.nullspace()
}

/// True iff `(1 - a) sigma = (1 - x) alpha`, by exact multiplication.
pub fn satisfies_equation(sigma: &GroupRingElement, alpha: &GroupRingElement) -> Result<bool> {
    let params = sigma.params();
    let ring = sigma.ring();
    let lhs = one_minus(ring, WreathElement::generator_a(params, 0)).checked_mul(sigma)?;
    let rhs = one_minus(ring, WreathElement::x_pow(params, 1)).checked_mul(alpha)?;
    Ok(lhs == rhs)
}

/// A nonzero `w` supported in `search_window` with `sigma w = 0`, or `None`
/// when the window holds no such element (which proves nothing).
pub fn annihilator_search(
    sigma: &GroupRingElement,
    search_window: Window,
    options: &SearchOptions,
) -> Result<Option<GroupRingElement>> {
    if sigma.is_zero() {
        return Err(Error::InvalidParameter(
            "annihilator search needs a nonzero element".into(),
        ));
    }
    let params = sigma.params();
    let domain = search_window.elements(params, options.window_cap)?;
    let codomain: Vec<WreathElement> = domain
        .par_iter()
        .flat_map_iter(|g| sigma.support().map(move |s| s.mul_unchecked(g)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    check_matrix_size(codomain.len(), domain.len(), options.matrix_cap)?;
    let m = sigma.left_mul_matrix(&domain, &codomain)?;
    Ok(m.nullspace()
        .into_iter()
        .next()
        .map(|v| GroupRingElement::from_coordinates(sigma.ring(), params, &domain, &v)))
}

/// Outcome of the right annihilator search for one solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annihilator {
    Found(GroupRingElement),
    NotFound,
}

/// One kernel basis vector with its checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub sigma: GroupRingElement,
    pub alpha: GroupRingElement,
    pub in_bkg: bool,
    /// `None` when the search was skipped or `sigma` is zero.
    pub annihilator: Option<Annihilator>,
    /// Exact re-substitution into the defining equation.
    pub satisfies_equation: bool,
}

/// Flags for a solution pair; the annihilator search runs when a window
/// is given and `sigma` is nonzero.
pub fn check_solution(
    sigma: GroupRingElement,
    alpha: GroupRingElement,
    options: &SearchOptions,
) -> Result<Solution> {
    let satisfies_equation = satisfies_equation(&sigma, &alpha)?;
    let annihilator = match options.annihilator_window {
        Some(w) if !sigma.is_zero() => Some(match annihilator_search(&sigma, w, options)? {
            Some(found) => Annihilator::Found(found),
            None => Annihilator::NotFound,
        }),
        _ => None,
    };
    Ok(Solution {
        in_bkg: sigma.is_in_bkg(),
        sigma,
        alpha,
        annihilator,
        satisfies_equation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every `sigma` lies in `b kG` (checked when `d = p`) and every nonzero
    /// `sigma` that was searched received an annihilator.
    Consistent,
    /// Some solution fails re-substitution, or `d = p` and some `sigma` is
    /// outside `b kG`.
    Inconsistent,
    /// No contradiction, but some annihilator search came back empty.
    Inconclusive,
    /// The kernel is trivial.
    Vacuous,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Vacuous => "vacuous",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [
            Verdict::Consistent,
            Verdict::Inconsistent,
            Verdict::Inconclusive,
            Verdict::Vacuous,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Verdict::Consistent | Verdict::Vacuous)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub d: u32,
    pub p: u32,
    pub window: Window,
    pub extended_window_size: usize,
    pub nullspace_dim: usize,
    pub solutions: Vec<Solution>,
    pub verdict: Verdict,
}

fn verdict(d: u32, p: u32, solutions: &[Solution]) -> Verdict {
    if solutions.is_empty() {
        return Verdict::Vacuous;
    }
    if solutions
        .iter()
        .any(|s| !s.satisfies_equation || (d == p && !s.in_bkg))
    {
        return Verdict::Inconsistent;
    }
    if solutions
        .iter()
        .any(|s| s.annihilator == Some(Annihilator::NotFound))
    {
        return Verdict::Inconclusive;
    }
    Verdict::Consistent
}

/// Builds and solves the system, then checks every basis solution.
pub fn run(d: u32, p: u32, window: Window, options: &SearchOptions) -> Result<SearchReport> {
    let system = build_system(window, p, d, options)?;
    let basis = nullspace(&system);
    let solutions = basis
        .par_iter()
        .map(|v| {
            let (sigma, alpha) = system.split(v);
            check_solution(sigma, alpha, options)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport {
        d,
        p,
        window,
        extended_window_size: system.extended.len(),
        nullspace_dim: basis.len(),
        verdict: verdict(d, p, &solutions),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foxwords::parse_group_ring_element;

    fn gf(p: u64) -> ScalarRing {
        ScalarRing::IntegersMod(p)
    }

    fn expr(text: &str, p: u64, d: u32) -> GroupRingElement {
        parse_group_ring_element(text, gf(p), GroupParams::new(d).unwrap()).unwrap()
    }

    fn opts(w: Window) -> SearchOptions {
        SearchOptions::for_window(w)
    }

    #[test]
    fn window_contents() {
        let params = GroupParams::new(2).unwrap();
        let w = Window::symmetric(0, 0);
        let els = w.elements(params, 10).unwrap();
        assert_eq!(
            els.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["e", "a"]
        );
        assert_eq!(Window::symmetric(1, 1).size(params), Some(24));
        let els = Window::symmetric(1, 1).elements(params, 100).unwrap();
        assert_eq!(els.len(), 24);
        assert!(els.windows(2).all(|p| p[0] < p[1]));
        assert!(els.iter().all(|g| Window::symmetric(1, 1).contains(g)));
        assert!(Window::empty().elements(params, 10).unwrap().is_empty());
        assert!(matches!(
            Window::symmetric(3, 3).elements(params, 100),
            Err(Error::LimitExceeded { needed: 896, .. })
        ));
    }

    #[test]
    fn system_shape() {
        let w = Window::symmetric(0, 0);
        let s = build_system(w, 2, 2, &opts(w)).unwrap();
        assert_eq!(s.unknowns().len(), 2);
        assert_eq!(s.matrix().ncols(), 4);
        // {e, a, x, a x}
        assert_eq!(s.extended_window().len(), 4);
        for w in [
            Window::symmetric(1, 0),
            Window::symmetric(1, 1),
            Window::symmetric(2, 1),
        ] {
            let s = build_system(w, 3, 3, &opts(w)).unwrap();
            assert_eq!(s.matrix().ncols(), 2 * s.unknowns().len());
            assert_eq!(s.matrix().nrows(), s.extended_window().len());
        }
    }

    #[test]
    fn known_solution_in_kernel() {
        let w = Window::symmetric(0, 0);
        let s = build_system(w, 2, 2, &opts(w)).unwrap();
        let v = s.join(&expr("1 + a", 2, 2), &expr("0", 2, 2)).unwrap();
        assert!(s.matrix().mul_vec(&v).iter().all(|&c| c == 0));
        let basis = nullspace(&s);
        assert_eq!(basis, vec![vec![1, 1, 0, 0]]);
    }

    #[test]
    fn non_prime_rejected() {
        let w = Window::symmetric(0, 0);
        assert!(matches!(
            build_system(w, 4, 2, &opts(w)),
            Err(Error::NotAField(_))
        ));
        assert!(matches!(
            build_system(w, 2, 1, &opts(w)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn matrix_cap() {
        let w = Window::symmetric(1, 1);
        let mut o = opts(w);
        o.matrix_cap = 100;
        assert!(matches!(
            build_system(w, 2, 2, &o),
            Err(Error::LimitExceeded {
                what: "matrix entries",
                ..
            })
        ));
    }

    #[test]
    fn solution_flags() {
        let w = Window::symmetric(1, 0);
        let sol = check_solution(expr("1 + a", 2, 2), expr("0", 2, 2), &opts(w)).unwrap();
        assert!(sol.in_bkg && sol.satisfies_equation);
        let Some(Annihilator::Found(found)) = &sol.annihilator else {
            panic!("expected an annihilator");
        };
        assert!((&expr("1 + a", 2, 2) * found).is_zero());
        assert!(!found.is_zero());
        let zero = check_solution(expr("0", 2, 2), expr("0", 2, 2), &opts(w)).unwrap();
        assert!(zero.in_bkg && zero.annihilator.is_none());
        let bad = check_solution(expr("1", 2, 2), expr("0", 2, 2), &opts(w)).unwrap();
        assert!(!bad.satisfies_equation && !bad.in_bkg);
    }

    #[test]
    fn one_minus_x_has_no_annihilator() {
        for (lamps, shifts) in [(0, 0), (1, 1), (2, 2)] {
            let w = Window::symmetric(lamps, shifts);
            for (p, d) in [(2, 2), (3, 3), (3, 2)] {
                let found = annihilator_search(&expr("1 - x", p, d), w, &opts(w)).unwrap();
                assert!(found.is_none());
            }
        }
    }

    #[test]
    fn certificate_annihilator_is_found() {
        use crate::certificates::{certify, ZVector};
        let params = GroupParams::new(2).unwrap();
        let ring = gf(2);
        let z = ZVector::new(vec![
            GroupRingElement::zero(ring, params),
            GroupRingElement::one(ring, params),
        ])
        .unwrap();
        let cert = certify(&z, 100).unwrap();
        let w = Window::symmetric(1, 0);
        assert!(cert.gamma.support().all(|g| w.contains(g)));
        let found = annihilator_search(&cert.u, w, &opts(w)).unwrap().unwrap();
        assert!((&cert.u * &found).is_zero());
        // gamma itself lies in the kernel of the same system
        let domain = w.elements(params, 100).unwrap();
        let gamma = cert.gamma.coordinates(&domain).unwrap();
        let codomain: Vec<WreathElement> = domain
            .iter()
            .flat_map(|g| cert.u.support().map(move |s| s * g))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let m = cert.u.left_mul_matrix(&domain, &codomain).unwrap();
        assert!(m.mul_vec(&gamma).iter().all(|&c| c == 0));
    }

    #[test]
    fn empty_window_is_vacuous() {
        let w = Window::empty();
        let r = run(2, 2, w, &opts(w)).unwrap();
        assert_eq!(r.nullspace_dim, 0);
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert!(r.verdict.is_success());
    }

    #[test]
    fn shift_free_window_contains_norm() {
        let w = Window::symmetric(1, 0);
        let r = run(2, 2, w, &opts(w)).unwrap();
        let s = build_system(w, 2, 2, &opts(w)).unwrap();
        let basis = nullspace(&s);
        let mut rows = basis.clone();
        rows.push(s.join(&expr("1 + a", 2, 2), &expr("0", 2, 2)).unwrap());
        let m = FpMatrix::from_rows(2, rows).unwrap();
        assert_eq!(m.rank(), basis.len());
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn small_runs_are_consistent() {
        for (d, p) in [(2, 2), (3, 3)] {
            for (lamps, shifts) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let w = Window::symmetric(lamps, shifts);
                let r = run(d, p, w, &opts(w)).unwrap();
                assert!(r.nullspace_dim > 0);
                assert!(r.solutions.iter().all(|s| s.satisfies_equation && s.in_bkg));
                assert_eq!(r.verdict, Verdict::Consistent, "d={d} window {w}");
            }
        }
    }

    #[test]
    fn mismatched_characteristic_does_not_require_bkg() {
        let w = Window::symmetric(1, 1);
        let r = run(2, 3, w, &opts(w).without_annihilators()).unwrap();
        assert!(r.solutions.iter().all(|s| s.satisfies_equation));
        assert_ne!(r.verdict, Verdict::Inconsistent);
    }

    #[test]
    fn window_monotonicity() {
        for (d, p) in [(2, 2), (3, 3), (2, 3)] {
            let small = Window::symmetric(0, 1);
            let big = Window::symmetric(1, 1);
            let s_small = build_system(small, p, d, &opts(small)).unwrap();
            let s_big = build_system(big, p, d, &opts(big)).unwrap();
            let big_basis = nullspace(&s_big);
            let mut rows = big_basis.clone();
            for v in nullspace(&s_small) {
                let (sigma, alpha) = s_small.split(&v);
                rows.push(s_big.join(&sigma, &alpha).unwrap());
            }
            assert_eq!(
                FpMatrix::from_rows(p, rows).unwrap().rank(),
                big_basis.len()
            );
        }
    }

    #[test]
    fn brute_force_gf2_tiny() {
        let w = Window::symmetric(0, 0);
        let s = build_system(w, 2, 2, &opts(w)).unwrap();
        let n = s.unknowns().len() * 2;
        let mut brute = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let v: Vec<u32> = (0..n).map(|i| (mask >> i) & 1).collect();
            let (sigma, alpha) = s.split(&v);
            if satisfies_equation(&sigma, &alpha).unwrap() {
                brute.insert(v);
            }
        }
        let basis = nullspace(&s);
        let mut span = BTreeSet::new();
        for mask in 0u32..(1 << basis.len()) {
            let mut v = vec![0u32; n];
            for (i, b) in basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            span.insert(v);
        }
        assert_eq!(brute, span);
    }

    #[test]
    fn parallel_checks_are_deterministic() {
        let w = Window::symmetric(1, 1);
        let a = run(3, 3, w, &opts(w)).unwrap();
        let b = run(3, 3, w, &opts(w)).unwrap();
        assert_eq!(a, b);
    }
}
