//! Characters of Z_p^n and the spectral identities satisfied by indicator
//! functions of sum-free sets.
//!
//! A character is indexed by a coefficient vector `c` (stored as a group
//! index) and acts by `x ↦ ω^(c·x)` with `ω = exp(2πi/p)`. All transforms
//! are direct sums over the set; there is no FFT.

use std::f64::consts::PI;

use num_complex::Complex64;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{kernel_of_functional, GroupSpec, Subgroup};
use crate::set::DenseSet;

pub const IDENTITY_TOLERANCE: f64 = 1e-9;
pub const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Character {
    group: GroupSpec,
    c: usize,
}

impl Character {
    pub fn new(group: GroupSpec, c: usize) -> Result<Self> {
        group.check_index(c)?;
        Ok(Character { group, c })
    }

    pub fn from_coords(group: GroupSpec, coeffs: &[u32]) -> Result<Self> {
        Ok(Character { group, c: group.encode(coeffs)? })
    }

    pub fn principal(group: GroupSpec) -> Self {
        Character { group, c: 0 }
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn index(&self) -> usize {
        self.c
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.group.coords(self.c)
    }

    pub fn is_principal(&self) -> bool {
        self.c == 0
    }

    /// Exponent `c·x mod p`.
    pub fn exponent(&self, x: usize) -> u32 {
        self.group.dot_idx(self.c, x)
    }

    pub fn value(&self, x: usize) -> Complex64 {
        RootTable::new(self.group.p()).get(self.exponent(x))
    }

    /// `ker χ`, a maximal proper subgroup for non-principal `χ`.
    pub fn kernel(&self) -> Result<Subgroup> {
        if self.is_principal() {
            return Err(Error::PrincipalCharacter);
        }
        Ok(kernel_of_functional(self.group, self.c))
    }
}

/// The p-th roots of unity.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(p: u32) -> Self {
        let roots = (0..p)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64))
            .collect();
        RootTable { roots }
    }

    #[inline]
    pub fn get(&self, k: u32) -> Complex64 {
        self.roots[k as usize]
    }
}

fn check_group(a: &DenseSet, chi: &Character) -> Result<()> {
    if a.group() != chi.group() {
        return Err(Error::GroupMismatch(a.group(), chi.group()));
    }
    Ok(())
}

fn coefficient_with(a: &DenseSet, c: usize, roots: &RootTable) -> Complex64 {
    let g = a.group();
    let mut buckets = vec![0usize; g.p() as usize];
    for x in a.iter() {
        buckets[g.dot_idx(c, x) as usize] += 1;
    }
    let sum: Complex64 = buckets
        .iter()
        .enumerate()
        .map(|(k, &m)| roots.get(k as u32) * m as f64)
        .sum();
    sum / g.size() as f64
}

/// `p^(-n) Σ_{a∈A} χ(a)`.
pub fn fourier_coefficient(a: &DenseSet, chi: &Character) -> Result<Complex64> {
    check_group(a, chi)?;
    Ok(coefficient_with(a, chi.index(), &RootTable::new(a.group().p())))
}

/// Every coefficient, indexed by character index.
pub fn spectrum(a: &DenseSet) -> Vec<Complex64> {
    let roots = RootTable::new(a.group().p());
    (0..a.group().size()).map(|c| coefficient_with(a, c, &roots)).collect()
}

pub fn density(a: &DenseSet) -> f64 {
    a.len() as f64 / a.group().size() as f64
}

/// `|Σ_{χ≠1} |f̂(χ)|² − α(1−α)|`.
pub fn parseval_residual(a: &DenseSet) -> f64 {
    let spec = spectrum(a);
    let alpha = density(a);
    let tail: f64 = spec[1..].iter().map(|z| z.norm_sqr()).sum();
    (tail - alpha * (1.0 - alpha)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleIdentity {
    pub fourier_sum: Complex64,
    pub solution_count: u64,
}

impl TripleIdentity {
    /// `|fourier_sum − count / p^(2n)|`.
    pub fn residual(&self, group: GroupSpec) -> f64 {
        let q = group.size() as f64;
        (self.fourier_sum - Complex64::new(self.solution_count as f64 / (q * q), 0.0)).norm()
    }
}

/// `Σ_χ |f̂(χ)|² f̂(χ)` next to the integer count of `(x, y, z) ∈ A³` with
/// `x + y = z`.
pub fn triple_identity(a: &DenseSet) -> TripleIdentity {
    let fourier_sum = spectrum(a).iter().map(|z| z * z.norm_sqr()).sum();
    let g = a.group();
    let members: Vec<usize> = a.iter().collect();
    let mut solution_count = 0u64;
    for &x in &members {
        for &y in &members {
            if a.contains_idx(g.add_idx(x, y)) {
                solution_count += 1;
            }
        }
    }
    TripleIdentity { fourier_sum, solution_count }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct NegativeCharacter {
    pub character: Vec<u32>,
    pub re_value: f64,
    pub threshold: f64,
}

/// The first non-principal character (ascending coefficient order) with
/// `Re f̂(χ) ≤ −α²/(1−α)`.
pub fn find_negative_character(a: &DenseSet) -> Result<(Character, NegativeCharacter)> {
    let g = a.group();
    if a.is_empty() || a.len() == g.size() {
        return Err(Error::TrivialSet);
    }
    if !crate::sumfree::is_sum_free(a) {
        return Err(Error::NotSumFree);
    }
    let alpha = density(a);
    let threshold = -alpha * alpha / (1.0 - alpha);
    let roots = RootTable::new(g.p());
    for c in 1..g.size() {
        let re = coefficient_with(a, c, &roots).re;
        if re <= threshold + THRESHOLD_SLACK {
            let chi = Character { group: g, c };
            return Ok((chi, NegativeCharacter { character: chi.coeffs(), re_value: re, threshold }));
        }
    }
    Err(Error::NoNegativeCharacter { threshold })
}

/// Coset densities of `A` along the kernel of a non-principal character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DensityProfile {
    pub alpha: f64,
    pub alphas: Vec<f64>,
    /// `α_1 + α_4` (p = 5 only)
    pub s1: Option<f64>,
    /// `α_2 + α_3` (p = 5 only)
    pub s2: Option<f64>,
    /// The element `e` with `χ(e) = ω`, as coordinates.
    pub e: Vec<u32>,
    pub identity_residual: f64,
}

/// `α_i = |(A − ie) ∩ F| / |F|` with `F = ker χ` and `e` the smallest index
/// with `χ(e) = ω`. Checks `p·Re f̂(χ) = Σ α_i cos(2πi/p)`, which for
/// `p = 5` reads `α_0 + s_1 cos(2π/5) + s_2 cos(4π/5)`.
pub fn coset_densities(a: &DenseSet, chi: &Character) -> Result<DensityProfile> {
    check_group(a, chi)?;
    let f = chi.kernel()?;
    let g = a.group();
    let p = g.p();
    let e = (0..g.size()).find(|&x| chi.exponent(x) == 1).expect("non-principal character is onto");
    let alphas: Vec<f64> = (0..p)
        .map(|i| {
            let shifted = a.translate_idx(g.neg_idx(g.smul_idx(i, e)));
            shifted.intersection(f.members()).expect("same group").len() as f64 / f.order() as f64
        })
        .collect();
    let re = fourier_coefficient(a, chi)?.re;
    let (s1, s2, rhs) = if p == 5 {
        let s1 = alphas[1] + alphas[4];
        let s2 = alphas[2] + alphas[3];
        let rhs = alphas[0] + s1 * (2.0 * PI / 5.0).cos() + s2 * (4.0 * PI / 5.0).cos();
        (Some(s1), Some(s2), rhs)
    } else {
        let rhs = alphas
            .iter()
            .enumerate()
            .map(|(i, &al)| al * (2.0 * PI * i as f64 / p as f64).cos())
            .sum();
        (None, None, rhs)
    };
    Ok(DensityProfile {
        alpha: density(a),
        alphas,
        s1,
        s2,
        e: g.coords(e),
        identity_residual: (p as f64 * re - rhs).abs(),
    })
}

/// `−5α²/(1−α) − [(5α − 0.9) cos(2π/5) + 0.9 cos(4π/5)]`.
pub fn final_inequality_margin(alpha: f64) -> f64 {
    let c1 = (2.0 * PI / 5.0).cos();
    let c2 = (4.0 * PI / 5.0).cos();
    -5.0 * alpha * alpha / (1.0 - alpha) - ((5.0 * alpha - 0.9) * c1 + 0.9 * c2)
}

/// Largest margin over `α = 0.3, 0.3 + step, ...` below 1.
pub fn final_inequality_scan(step: f64) -> Result<f64> {
    if !(step > 0.0 && step <= 1e-3) {
        return Err(Error::InvalidStep(step));
    }
    let mut worst = f64::NEG_INFINITY;
    let mut k = 0u64;
    loop {
        let alpha = 0.3 + k as f64 * step;
        if alpha >= 1.0 {
            break;
        }
        worst = worst.max(final_inequality_margin(alpha));
        k += 1;
    }
    Ok(worst)
}

/// `(c, re, im)` rows for JSON output.
pub fn spectrum_rows(a: &DenseSet) -> Vec<(Vec<u32>, f64, f64)> {
    let g = a.group();
    spectrum(a)
        .into_iter()
        .enumerate()
        .map(|(c, z)| (g.coords(c), z.re, z.im))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(p, n).unwrap()
    }

    fn set(g: GroupSpec, idx: &[usize]) -> DenseSet {
        DenseSet::from_indices(g, idx.iter().copied()).unwrap()
    }

    /// Direct evaluation with `exp`, independent of the root table.
    fn coefficient_oracle(a: &DenseSet, c: usize) -> Complex64 {
        let g = a.group();
        let s: Complex64 = a
            .iter()
            .map(|x| {
                let k = g.dot_idx(c, x) as f64;
                Complex64::new(0.0, 2.0 * PI * k / g.p() as f64).exp()
            })
            .sum();
        s / g.size() as f64
    }

    #[test]
    fn coefficient_examples() {
        let g = z(5, 1);
        let a = set(g, &[1, 4]);
        let c0 = fourier_coefficient(&a, &Character::principal(g)).unwrap();
        assert!((c0.re - 0.4).abs() < 1e-12 && c0.im.abs() < 1e-12);
        let c1 = fourier_coefficient(&a, &Character::new(g, 1).unwrap()).unwrap();
        assert!((c1.re - 0.123607).abs() < 1e-6);
        assert!((c1 - coefficient_oracle(&a, 1)).norm() < 1e-12);
        let full = DenseSet::full(z(5, 2));
        for c in 1..25 {
            assert!(fourier_coefficient(&full, &Character::new(z(5, 2), c).unwrap()).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn parseval_examples() {
        let g = z(5, 1);
        assert!(parseval_residual(&DenseSet::empty(g)) < 1e-15);
        assert!(parseval_residual(&set(g, &[1, 4])) < 1e-9);
    }

    #[test]
    fn triple_examples() {
        let g = z(5, 1);
        let t = triple_identity(&set(g, &[1, 4]));
        assert_eq!(t.solution_count, 0);
        assert!(t.fourier_sum.norm() < 1e-12);
        let t = triple_identity(&set(g, &[1, 2]));
        assert_eq!(t.solution_count, 1);
        assert!((t.fourier_sum.re - 1.0 / 25.0).abs() < 1e-12);
        let t = triple_identity(&DenseSet::full(g));
        assert_eq!(t.solution_count, 25);
        assert!((t.fourier_sum.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_character_example() {
        let g = z(5, 1);
        let (chi, rec) = find_negative_character(&set(g, &[1, 4])).unwrap();
        assert_eq!(chi.index(), 2);
        assert!((rec.threshold + 4.0 / 15.0).abs() < 1e-12);
        assert!((rec.re_value - 2.0 * (4.0 * PI / 5.0).cos() / 5.0).abs() < 1e-12);
        assert!((rec.re_value + 0.323607).abs() < 1e-6);
        assert_eq!(find_negative_character(&DenseSet::empty(g)).unwrap_err(), Error::TrivialSet);
        assert_eq!(find_negative_character(&set(g, &[1, 2])).unwrap_err(), Error::NotSumFree);
    }

    #[test]
    fn density_examples() {
        let g = z(5, 1);
        let chi = Character::new(g, 1).unwrap();
        let prof = coset_densities(&set(g, &[1, 4]), &chi).unwrap();
        assert_eq!(prof.alphas, vec![0.0, 1.0, 0.0, 0.0, 1.0]);
        assert!(prof.identity_residual < 1e-9);

        let g2 = z(5, 2);
        let chi2 = Character::from_coords(g2, &[0, 1]).unwrap();
        let f = chi2.kernel().unwrap();
        let e = g2.encode(&prof_e(&chi2)).unwrap();
        let coset = f.members().translate_idx(e);
        let prof = coset_densities(&coset, &chi2).unwrap();
        assert_eq!(prof.alphas, vec![0.0, 1.0, 0.0, 0.0, 0.0]);
        let re = fourier_coefficient(&coset, &chi2).unwrap().re;
        assert!((5.0 * re - (2.0 * PI / 5.0).cos()).abs() < 1e-12);

        let empty = coset_densities(&DenseSet::empty(g2), &chi2).unwrap();
        assert!(empty.alphas.iter().all(|&v| v == 0.0));
        assert_eq!(
            coset_densities(&coset, &Character::principal(g2)).unwrap_err(),
            Error::PrincipalCharacter
        );
    }

    fn prof_e(chi: &Character) -> Vec<u32> {
        let g = chi.group();
        g.coords((0..g.size()).find(|&x| chi.exponent(x) == 1).unwrap())
    }

    #[test]
    fn generic_prime_identity() {
        let g = z(3, 2);
        let a = set(g, &[1, 5, 6]);
        for c in 1..9 {
            let prof = coset_densities(&a, &Character::new(g, c).unwrap()).unwrap();
            assert!(prof.s1.is_none());
            assert!(prof.identity_residual < 1e-9);
        }
    }

    #[test]
    fn final_inequality_examples() {
        // independent evaluation with cos(2π/5) = (√5 − 1)/4 and cos(4π/5) = −(√5 + 1)/4
        let s5 = 5f64.sqrt();
        let oracle = -5.0 * 0.09 / 0.7 - ((1.5 - 0.9) * (s5 - 1.0) / 4.0 - 0.9 * (s5 + 1.0) / 4.0);
        assert!((final_inequality_margin(0.3) - oracle).abs() < 1e-12);
        assert!((final_inequality_margin(0.3) + 0.100152).abs() < 1e-6);
        assert!(final_inequality_margin(1.0 - 1e-9) < -1e8);
        assert!(final_inequality_scan(1e-4).unwrap() < 0.0);
        assert!(final_inequality_scan(0.0).is_err());
        assert!(final_inequality_scan(0.01).is_err());
    }
}
