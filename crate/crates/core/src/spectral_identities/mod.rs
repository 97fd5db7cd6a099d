//! Pointwise tensor algebra in a frame diagonalizing the second fundamental
//! form: power sums, the gap quantity `G`, the cubic contractions `B₁`, `B₂`,
//! `C`, Gauss curvature, the symmetrization inequality for `∇²A`, and the
//! imported cubic inequality `3(B₁ - 2B₂) ≤ (S + C₁G^{1/3})|∇A|²`.
//!
//! Everything is exact over rationals except the last check, which needs a
//! cube root and runs in certified interval arithmetic.

pub mod random;
mod scaled;
pub mod suites;

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{int, rat, Interval, QuadraticNumber, Rational};
use crate::pinch_coefficients::{self, BoundsError, FLambdaBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("dimension mismatch: spectrum has n = {spectrum}, tensor has n = {tensor}")]
    DimensionMismatch { spectrum: usize, tensor: usize },
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("tensor violates the required index symmetry")]
    SymmetryViolation,
    #[error("empty spectrum")]
    Empty,
    #[error("closed forms disagree: {0}")]
    IdentityMismatch(&'static str),
}

/// Principal curvatures `μ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSpectrum {
    mu: Vec<Rational>,
}

impl EigenSpectrum {
    pub fn new(mu: Vec<Rational>) -> Result<Self, IdentityError> {
        if mu.is_empty() {
            return Err(IdentityError::Empty);
        }
        Ok(Self { mu })
    }

    pub fn from_ints(mu: &[i64]) -> Self {
        Self::new(mu.iter().map(|&m| int(m)).collect()).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.mu
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            mu: self.mu.iter().map(|m| m * c).collect(),
        }
    }
}

fn idx3(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

fn idx4(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `h_ijk`, fully symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grad3 {
    n: usize,
    h: Vec<Rational>,
}

impl Grad3 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            h: vec![Rational::zero(); n * n * n],
        }
    }

    /// Accepts a flat row-major `n³` array; rejects asymmetric input.
    pub fn new(n: usize, h: Vec<Rational>) -> Result<Self, IdentityError> {
        if h.len() != n * n * n {
            return Err(IdentityError::DimensionMismatch {
                spectrum: n,
                tensor: h.len(),
            });
        }
        let g = Self { n, h };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = g.get(i, j, k);
                    for p in PERMS3 {
                        let t = [i, j, k];
                        if g.get(t[p[0]], t[p[1]], t[p[2]]) != v {
                            return Err(IdentityError::SymmetryViolation);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Average over all index permutations.
    pub fn symmetrized(n: usize, raw: &[Rational]) -> Self {
        assert_eq!(raw.len(), n * n * n);
        let sixth = rat(1, 6);
        let mut h = vec![Rational::zero(); raw.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = [i, j, k];
                    let s: Rational = PERMS3
                        .iter()
                        .map(|p| &raw[idx3(n, t[p[0]], t[p[1]], t[p[2]])])
                        .sum();
                    h[idx3(n, i, j, k)] = s * &sixth;
                }
            }
        }
        Self { n, h }
    }

    /// Sets every entry in the permutation orbit of `(i,j,k)`.
    pub fn set_orbit(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let t = [i, j, k];
        for p in PERMS3 {
            let at = idx3(self.n, t[p[0]], t[p[1]], t[p[2]]);
            self.h[at] = v.clone();
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.h[idx3(self.n, i, j, k)]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            h: self.h.iter().map(|x| x * c).collect(),
        }
    }

    /// `|∇A|² = Σ h_ijk²`.
    pub fn norm_sq(&self) -> Rational {
        self.h.iter().map(|x| x * x).sum()
    }
}

/// `h_ijkl`, symmetric in its first three indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hess4 {
    n: usize,
    h: Vec<Rational>,
}

impl Hess4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            h: vec![Rational::zero(); n * n * n * n],
        }
    }

    pub fn new(n: usize, h: Vec<Rational>) -> Result<Self, IdentityError> {
        if h.len() != n * n * n * n {
            return Err(IdentityError::DimensionMismatch {
                spectrum: n,
                tensor: h.len(),
            });
        }
        let t = Self { n, h };
        t.check_symmetry()?;
        Ok(t)
    }

    fn check_symmetry(&self) -> Result<(), IdentityError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        let t = [i, j, k];
                        for p in PERMS3 {
                            if self.get(t[p[0]], t[p[1]], t[p[2]], l) != v {
                                return Err(IdentityError::SymmetryViolation);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Average over permutations of the first three indices.
    pub fn symmetrized(n: usize, raw: &[Rational]) -> Self {
        assert_eq!(raw.len(), n * n * n * n);
        let sixth = rat(1, 6);
        let mut h = vec![Rational::zero(); raw.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = [i, j, k];
                    for l in 0..n {
                        let s: Rational = PERMS3
                            .iter()
                            .map(|p| &raw[idx4(n, t[p[0]], t[p[1]], t[p[2]], l)])
                            .sum();
                        h[idx4(n, i, j, k, l)] = s * &sixth;
                    }
                }
            }
        }
        Self { n, h }
    }

    /// Sets every entry in the first-three-index orbit of `(i,j,k,l)`.
    pub fn set_orbit(&mut self, i: usize, j: usize, k: usize, l: usize, v: Rational) {
        let t = [i, j, k];
        for p in PERMS3 {
            let at = idx4(self.n, t[p[0]], t[p[1]], t[p[2]], l);
            self.h[at] = v.clone();
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.h[idx4(self.n, i, j, k, l)]
    }
}

/// Scalar quantities of one `(spectrum, ∇A)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionSet {
    pub s: Rational,
    pub f3: Rational,
    pub f4: Rational,
    pub g: Rational,
    pub b1: Rational,
    pub b2: Rational,
    pub c: Rational,
    pub grad_a2: Rational,
}

/// Ring operations needed by the power-sum identities, so that they run on
/// rationals as well as on quadratic-field numbers.
pub trait ExactScalar:
    Clone
    + Zero
    + One
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl ExactScalar for Rational {}
impl ExactScalar for QuadraticNumber {}

/// `f_k = Σ μ_i^k` for `k = 1..=k_max`.
pub fn power_sums_of<T: ExactScalar>(mu: &[T], k_max: usize) -> Vec<T> {
    let mut powers: Vec<T> = mu.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            for (p, m) in powers.iter_mut().zip(mu) {
                *p = p.clone() * m;
            }
        }
        out.push(powers.iter().cloned().fold(T::zero(), |a, b| a + b));
    }
    out
}

pub fn power_sums(spec: &EigenSpectrum, k_max: usize) -> Vec<Rational> {
    power_sums_of(&spec.mu, k_max)
}

/// `G` by both closed forms; errors if `Σ t_ij²` and `2(Sf₄ - f₃²)` differ.
pub fn gap_of<T: ExactScalar>(mu: &[T]) -> Result<T, IdentityError> {
    let mut direct = T::zero();
    for mi in mu {
        for mj in mu {
            let t = mi.clone() * mj * &(mi.clone() - mj.clone());
            direct = direct + t.clone() * &t;
        }
    }
    let f = power_sums_of(mu, 4);
    let two = T::one() + T::one();
    let closed = two * &(f[1].clone() * &f[3] - f[2].clone() * &f[2]);
    if direct != closed {
        return Err(IdentityError::IdentityMismatch("Σt² vs 2(Sf₄ - f₃²)"));
    }
    Ok(direct)
}

pub fn gap_g(spec: &EigenSpectrum) -> Result<Rational, IdentityError> {
    gap_of(&spec.mu)
}

fn diag_matrix(spec: &EigenSpectrum) -> Vec<Rational> {
    let n = spec.dim();
    let mut m = vec![Rational::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = spec.mu[i].clone();
    }
    m
}

/// `B₁`, `B₂`, `C` from the full index sums, treating `h_ij` as a dense
/// matrix. The sums are staged through partial contractions.
pub fn general_contractions(spec: &EigenSpectrum, g: &Grad3) -> (Rational, Rational, Rational) {
    scaled_route(spec, g, scaled::general).unwrap_or_else(|| general_rational(spec, g))
}

/// Runs an integer kernel on denominator-cleared inputs and rescales.
fn scaled_route(
    spec: &EigenSpectrum,
    g: &Grad3,
    kernel: fn(usize, &scaled::Scaled, &scaled::Scaled) -> Option<(i128, i128, i128)>,
) -> Option<(Rational, Rational, Rational)> {
    let mu = scaled::scale(&spec.mu)?;
    let gs = scaled::scale(&g.h)?;
    let (b1, b2, c) = kernel(spec.dim(), &mu, &gs)?;
    let g2 = &gs.den * &gs.den;
    let quartic = &g2 * &mu.den * &mu.den;
    Some((
        scaled::ratio(b1, &quartic),
        scaled::ratio(b2, &quartic),
        scaled::ratio(c, &(g2 * &mu.den)),
    ))
}

fn general_rational(spec: &EigenSpectrum, g: &Grad3) -> (Rational, Rational, Rational) {
    let n = spec.dim();
    let a = diag_matrix(spec);
    let at = |i: usize, j: usize| &a[i * n + j];
    let zero = Rational::zero();

    // M_kl = Σ_ij h_ijk h_ijl
    let mut m = vec![zero.clone(); n * n];
    for k in 0..n {
        for l in 0..n {
            let mut s = zero.clone();
            for i in 0..n {
                for j in 0..n {
                    s += g.get(i, j, k) * g.get(i, j, l);
                }
            }
            m[k * n + l] = s;
        }
    }
    // (A²)_kl = Σ_m h_km h_ml
    let mut a2 = vec![zero.clone(); n * n];
    for k in 0..n {
        for l in 0..n {
            a2[k * n + l] = (0..n).map(|x| at(k, x) * at(x, l)).sum();
        }
    }
    let b1: Rational = m.iter().zip(&a2).map(|(x, y)| x * y).sum();
    let c: Rational = (0..n * n).map(|kl| &m[kl] * &a[kl]).sum();

    // B₂ = Σ_jkm P_jkm R_kmj, P_jkm = Σ_i h_ijk h_im, R_kmj = Σ_l h_klm h_jl
    let mut b2 = zero.clone();
    for j in 0..n {
        for k in 0..n {
            for mm in 0..n {
                let p: Rational = (0..n).map(|i| g.get(i, j, k) * at(i, mm)).sum();
                if p.is_zero() {
                    continue;
                }
                let r: Rational = (0..n).map(|l| g.get(k, l, mm) * at(j, l)).sum();
                b2 += p * r;
            }
        }
    }
    (b1, b2, c)
}

/// `B₁ = Σ h_ijk² μ_k²`, `B₂ = Σ h_ijk² μ_iμ_j`, `C = Σ h_ijk² μ_k`.
pub fn diagonal_contractions(spec: &EigenSpectrum, g: &Grad3) -> (Rational, Rational, Rational) {
    scaled_route(spec, g, scaled::diagonal).unwrap_or_else(|| diagonal_rational(spec, g))
}

fn diagonal_rational(spec: &EigenSpectrum, g: &Grad3) -> (Rational, Rational, Rational) {
    let n = spec.dim();
    let mu = &spec.mu;
    let mut b1 = Rational::zero();
    let mut b2 = Rational::zero();
    let mut c = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let h = g.get(i, j, k);
                if h.is_zero() {
                    continue;
                }
                let h2 = h * h;
                b1 += &h2 * &mu[k] * &mu[k];
                b2 += &h2 * &mu[i] * &mu[j];
                c += &h2 * &mu[k];
            }
        }
    }
    (b1, b2, c)
}

/// All contractions, with the general and diagonal routes cross-checked.
pub fn contractions(spec: &EigenSpectrum, g: &Grad3) -> Result<ContractionSet, IdentityError> {
    if spec.dim() != g.dim() {
        return Err(IdentityError::DimensionMismatch {
            spectrum: spec.dim(),
            tensor: g.dim(),
        });
    }
    let general = general_contractions(spec, g);
    let diagonal = diagonal_contractions(spec, g);
    if general.0 != diagonal.0 {
        return Err(IdentityError::IdentityMismatch("B₁ routes"));
    }
    if general.1 != diagonal.1 {
        return Err(IdentityError::IdentityMismatch("B₂ routes"));
    }
    if general.2 != diagonal.2 {
        return Err(IdentityError::IdentityMismatch("C routes"));
    }
    let f = power_sums(spec, 4);
    let g_gap = gap_g(spec)?;
    Ok(ContractionSet {
        s: f[1].clone(),
        f3: f[2].clone(),
        f4: f[3].clone(),
        g: g_gap,
        b1: diagonal.0,
        b2: diagonal.1,
        c: diagonal.2,
        grad_a2: g.norm_sq(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBoundWitness {
    pub holds: bool,
    /// `C²`
    pub lhs: Rational,
    /// `S·(|∇A|²)²`
    pub rhs: Rational,
}

/// `|C| ≤ |A|·|∇A|²`, checked in the squared form `C² ≤ S·(|∇A|²)²`.
pub fn check_c_bound(spec: &EigenSpectrum, g: &Grad3) -> Result<CBoundWitness, IdentityError> {
    let cs = contractions(spec, g)?;
    let lhs = &cs.c * &cs.c;
    let rhs = &cs.s * &cs.grad_a2 * &cs.grad_a2;
    Ok(CBoundWitness {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVerdict {
    Holds,
    Counterexample,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaWitness {
    pub verdict: LemmaVerdict,
    /// `(S + C₁G^{1/3})|∇A|² - 3(B₁ - 2B₂)` at the last precision tried.
    pub slack: Interval,
    pub precision: u32,
    pub contractions: ContractionSet,
}

pub const LEMMA_PRECISIONS: [u32; 3] = [256, 512, 1024];

/// `3(B₁ - 2B₂) ≤ (S + C₁G^{1/3})|∇A|²`, certified with escalating precision.
fn c1_cached(prec: u32) -> Interval {
    static CACHE: OnceLock<Vec<Interval>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| LEMMA_PRECISIONS.iter().map(|&p| pinch_coefficients::c1(p)).collect());
    match LEMMA_PRECISIONS.iter().position(|&p| p == prec) {
        Some(i) => cache[i].clone(),
        None => pinch_coefficients::c1(prec),
    }
}

pub fn check_dx_lemma(spec: &EigenSpectrum, g: &Grad3) -> Result<LemmaWitness, IdentityError> {
    let cs = contractions(spec, g)?;
    let lhs = int(3) * (&cs.b1 - int(2) * &cs.b2);
    let mut last = None;
    for prec in LEMMA_PRECISIONS {
        let cube_root = Interval::from_rational(&cs.g, prec).cbrt();
        let factor = &Interval::from_rational(&cs.s, prec) + &(&c1_cached(prec) * &cube_root);
        let rhs = factor.scale(&cs.grad_a2);
        let slack = &rhs - &Interval::from_rational(&lhs, prec);
        let verdict = if slack.is_nonnegative() {
            LemmaVerdict::Holds
        } else if slack.is_negative() {
            LemmaVerdict::Counterexample
        } else {
            LemmaVerdict::Indeterminate
        };
        if verdict != LemmaVerdict::Indeterminate {
            return Ok(LemmaWitness {
                verdict,
                slack,
                precision: prec,
                contractions: cs,
            });
        }
        last = Some((slack, prec));
    }
    let (slack, precision) = last.expect("at least one precision");
    Ok(LemmaWitness {
        verdict: LemmaVerdict::Indeterminate,
        slack,
        precision,
        contractions: cs,
    })
}

/// Result of the cyclic-symmetrization comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizationGap {
    /// `Σ h² - Σ u²`
    pub gap: Rational,
    /// `(3/4) Σ_{i≠j} (h_ijij - h_jiji)²`
    pub bound: Rational,
}

impl SymmetrizationGap {
    pub fn holds(&self) -> bool {
        self.gap >= self.bound
    }
}

/// `u_ijkl = ¼(h_ijkl + h_lijk + h_klij + h_jkli)`, compared against the
/// skew part `h_ijij - h_jiji`.
pub fn symmetrization_gap(h4: &Hess4) -> Result<SymmetrizationGap, IdentityError> {
    h4.check_symmetry()?;
    let n = h4.n;
    if let Some(hs) = scaled::scale(&h4.h) {
        if let Some((sh16, su16, skew)) = scaled::symmetrization(n, &hs) {
            let l2 = &hs.den * &hs.den;
            let l2_16 = &l2 * BigInt::from(16);
            return Ok(SymmetrizationGap {
                gap: scaled::ratio(sh16 - su16, &l2_16),
                bound: rat(3, 4) * scaled::ratio(skew, &l2),
            });
        }
    }
    Ok(symmetrization_rational(h4))
}

fn symmetrization_rational(h4: &Hess4) -> SymmetrizationGap {
    let n = h4.n;
    let quarter = rat(1, 4);
    let mut sum_h = Rational::zero();
    let mut sum_u = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let h = h4.get(i, j, k, l);
                    sum_h += h * h;
                    let u = (h + h4.get(l, i, j, k) + h4.get(k, l, i, j) + h4.get(j, k, l, i)) * &quarter;
                    sum_u += &u * &u;
                }
            }
        }
    }
    let mut skew = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let t = h4.get(i, j, i, j) - h4.get(j, i, j, i);
                skew += &t * &t;
            }
        }
    }
    SymmetrizationGap {
        gap: sum_h - sum_u,
        bound: rat(3, 4) * skew,
    }
}

/// `R_ijkl = μ_iμ_j(δ_ik δ_jl - δ_il δ_jk)` in the diagonal frame.
pub fn gauss_curvature(
    spec: &EigenSpectrum,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<Rational, IdentityError> {
    let n = spec.dim();
    if i >= n || j >= n || k >= n || l >= n {
        return Err(IdentityError::IndexOutOfRange);
    }
    let delta = |a: usize, b: usize| if a == b { 1 } else { 0 };
    let coeff = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k);
    Ok(&spec.mu[i] * &spec.mu[j] * int(coeff))
}

/// `F_λ = S² - S - λf₃`.
pub fn f_lambda_gap(spec: &EigenSpectrum, lambda: &Rational) -> Rational {
    let f = power_sums(spec, 3);
    &f[1] * &f[1] - &f[1] - lambda * &f[2]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FLambdaCheck {
    /// `S` lies outside `[β_λ, β_λ + δ]`; only the lower bound applies.
    LowerOnly { holds: bool },
    Both { lower_holds: bool, upper_holds: bool, bounds: FLambdaBounds },
}

impl FLambdaCheck {
    pub fn holds(&self) -> bool {
        match self {
            FLambdaCheck::LowerOnly { holds } => *holds,
            FLambdaCheck::Both {
                lower_holds,
                upper_holds,
                ..
            } => *lower_holds && *upper_holds,
        }
    }
}

/// Compares the exact `F_λ` against the bounds of
/// [`pinch_coefficients::f_lambda_bounds`].
pub fn check_f_lambda_bounds(
    spec: &EigenSpectrum,
    lambda: &Rational,
    delta: &Rational,
) -> Result<FLambdaCheck, BoundsError> {
    let f = QuadraticNumber::rational(f_lambda_gap(spec, lambda));
    let s = power_sums(spec, 2)[1].clone();
    match pinch_coefficients::f_lambda_bounds(&s, lambda, delta) {
        Ok(bounds) => Ok(FLambdaCheck::Both {
            lower_holds: bounds.lower <= f,
            upper_holds: f <= bounds.upper,
            bounds,
        }),
        Err(BoundsError::OutsidePinchingRange) => {
            let root = QuadraticNumber::sqrt_of(s.clone())?;
            let l = QuadraticNumber::rational(num_traits::Signed::abs(lambda));
            let sq = QuadraticNumber::rational(s.clone());
            let lower = sq.checked_mul(
                &sq.checked_sub(&QuadraticNumber::one())?
                    .checked_sub(&l.checked_mul(&root)?)?,
            )?;
            Ok(FLambdaCheck::LowerOnly { holds: lower <= f })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_kernels_match_rational_routes() {
        for trial in 0..300 {
            let mut rng = random::trial_rng(7, 99, trial);
            let n = 1 + (trial as usize % 6);
            let spec = random::spectrum(&mut rng, n);
            let g = random::grad3(&mut rng, n);
            assert_eq!(general_contractions(&spec, &g), general_rational(&spec, &g));
            assert_eq!(diagonal_contractions(&spec, &g), diagonal_rational(&spec, &g));
        }
    }

    #[test]
    fn integer_symmetrization_matches_rational() {
        for trial in 0..100 {
            let mut rng = random::trial_rng(7, 98, trial);
            let h = random::hess4(&mut rng, 2 + (trial as usize % 5));
            assert_eq!(symmetrization_gap(&h).unwrap(), symmetrization_rational(&h));
        }
    }

    #[test]
    fn oversized_entries_fall_back() {
        let big = Rational::from_integer(BigInt::from(10).pow(30));
        let spec = EigenSpectrum::new(vec![big.clone(), int(1)]).unwrap();
        let mut g = Grad3::zeros(2);
        g.set_orbit(0, 0, 1, big);
        g.set_orbit(0, 1, 1, rat(1, 3));
        assert_eq!(general_contractions(&spec, &g), diagonal_contractions(&spec, &g));
        assert!(contractions(&spec, &g).is_ok());
    }

    fn single(m: i64, a: i64) -> (EigenSpectrum, Grad3) {
        (
            EigenSpectrum::from_ints(&[m]),
            Grad3::new(1, vec![int(a)]).unwrap(),
        )
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&EigenSpectrum::from_ints(&[1, 1, 1]), 3)[2], int(3));
        assert_eq!(
            power_sums(&EigenSpectrum::from_ints(&[2, 1]), 4),
            vec![int(3), int(5), int(9), int(17)]
        );
        let c = rat(-3, 7);
        let spec = EigenSpectrum::new(vec![c.clone(); 5]).unwrap();
        for (k, f) in power_sums(&spec, 4).iter().enumerate() {
            assert_eq!(f, &(int(5) * num_traits::pow(c.clone(), k + 1)));
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_g(&EigenSpectrum::new(vec![rat(2, 3); 4]).unwrap()).unwrap(), int(0));
        assert_eq!(gap_g(&EigenSpectrum::from_ints(&[1, 0, 0, 0])).unwrap(), int(0));
        assert_eq!(gap_g(&EigenSpectrum::from_ints(&[2, 1])).unwrap(), int(8));
    }

    #[test]
    fn contraction_examples() {
        let spec = EigenSpectrum::from_ints(&[1, -2, 3]);
        let z = contractions(&spec, &Grad3::zeros(3)).unwrap();
        assert!(z.b1.is_zero() && z.b2.is_zero() && z.c.is_zero() && z.grad_a2.is_zero());

        let (spec, g) = single(3, 5);
        let cs = contractions(&spec, &g).unwrap();
        assert_eq!(cs.b1, int(25 * 9));
        assert_eq!(cs.b2, int(25 * 9));
        assert_eq!(cs.c, int(25 * 3));

        let c = rat(3, 2);
        let spec = EigenSpectrum::new(vec![c.clone(); 3]).unwrap();
        let raw: Vec<Rational> = (0..27).map(|x| int(x % 5 - 2)).collect();
        let g = Grad3::symmetrized(3, &raw);
        let cs = contractions(&spec, &g).unwrap();
        assert_eq!(&cs.b1 - int(2) * &cs.b2, -(&c * &c) * &cs.grad_a2);

        assert_eq!(
            contractions(&EigenSpectrum::from_ints(&[1, 2]), &Grad3::zeros(3)),
            Err(IdentityError::DimensionMismatch { spectrum: 2, tensor: 3 })
        );
    }

    #[test]
    fn grad3_rejects_asymmetric_input() {
        let mut raw = vec![int(0); 8];
        raw[1] = int(1); // h_001 only
        assert_eq!(Grad3::new(2, raw), Err(IdentityError::SymmetryViolation));
    }

    #[test]
    fn c_bound_examples() {
        let w = check_c_bound(&EigenSpectrum::from_ints(&[1, 2]), &Grad3::zeros(2)).unwrap();
        assert!(w.holds && w.lhs.is_zero() && w.rhs.is_zero());
        let (spec, g) = single(-4, 3);
        let w = check_c_bound(&spec, &g).unwrap();
        assert!(w.holds);
        assert_eq!(w.lhs, w.rhs);
    }

    #[test]
    fn dx_lemma_examples() {
        let w = check_dx_lemma(&EigenSpectrum::from_ints(&[2, 1]), &Grad3::zeros(2)).unwrap();
        assert_eq!(w.verdict, LemmaVerdict::Holds);
        let spec = EigenSpectrum::new(vec![rat(5, 3); 3]).unwrap();
        let raw: Vec<Rational> = (0..27).map(|x| int(x % 7 - 3)).collect();
        let w = check_dx_lemma(&spec, &Grad3::symmetrized(3, &raw)).unwrap();
        assert_eq!(w.verdict, LemmaVerdict::Holds);
        assert_eq!(w.precision, 256);
    }

    #[test]
    fn symmetrization_fixed_point() {
        // fully symmetric in all four indices
        let n = 2;
        let mut h = Hess4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let ones = [i, j, k, l].iter().filter(|&&x| x == 1).count() as i64;
                        h.h[idx4(n, i, j, k, l)] = int(ones * ones - 2);
                    }
                }
            }
        }
        let r = symmetrization_gap(&Hess4::new(n, h.h.clone()).unwrap()).unwrap();
        assert!(r.gap.is_zero() && r.bound.is_zero());
    }

    #[test]
    fn symmetrization_single_orbit() {
        // h₁₂₁₂ = h₂₁₁₂ = h₁₁₂₂ = 1 (0-based: (0,1,0,1) orbit)
        let mut h = Hess4::zeros(2);
        h.set_orbit(0, 1, 0, 1, int(1));
        assert_eq!(h.get(1, 0, 0, 1), &int(1));
        assert_eq!(h.get(0, 0, 1, 1), &int(1));
        let r = symmetrization_gap(&h).unwrap();
        // Σh² = 3. Cyclic orbits: {0101, 1010}: u = ½ on both; {0011, 1001, 1100, 0110}:
        // u = ½ on all four. Σu² = 6/4, gap = 3/2.
        // t'₀₁ = h₀₁₀₁ - h₁₀₁₀ = 1, t'₁₀ = -1, bound = ¾·2 = 3/2.
        assert_eq!(r.gap, rat(3, 2));
        assert_eq!(r.bound, rat(3, 2));
        assert!(r.holds());
    }

    #[test]
    fn symmetrization_rejects_bad_input() {
        let mut raw = vec![int(0); 16];
        raw[idx4(2, 0, 1, 0, 1)] = int(1);
        assert_eq!(Hess4::new(2, raw), Err(IdentityError::SymmetryViolation));
    }

    #[test]
    fn gauss_curvature_examples() {
        let spec = EigenSpectrum::from_ints(&[2, 1, 5]);
        assert_eq!(gauss_curvature(&spec, 0, 1, 0, 1).unwrap(), int(2));
        assert_eq!(gauss_curvature(&spec, 0, 1, 1, 0).unwrap(), int(-2));
        assert_eq!(gauss_curvature(&spec, 0, 2, 0, 2).unwrap(), int(10));
        assert_eq!(gauss_curvature(&spec, 0, 1, 0, 2).unwrap(), int(0));
        assert_eq!(gauss_curvature(&spec, 0, 0, 0, 0).unwrap(), int(0));
        assert_eq!(gauss_curvature(&spec, 0, 3, 0, 1), Err(IdentityError::IndexOutOfRange));
    }

    #[test]
    fn f_lambda_examples() {
        let spec = EigenSpectrum::new(vec![rat(3, 5), rat(4, 5)]).unwrap();
        assert!(f_lambda_gap(&spec, &int(0)).is_zero());
        assert_eq!(f_lambda_gap(&EigenSpectrum::from_ints(&[2, 1]), &int(1)), int(11));
    }

    #[test]
    fn quadratic_spectrum_gap() {
        let mu = QuadraticNumber::new(rat(3, 8), rat(1, 8), int(73)).unwrap();
        let spectrum = vec![mu.clone(), mu, QuadraticNumber::zero()];
        assert_eq!(gap_of(&spectrum).unwrap(), QuadraticNumber::zero());
    }
}
