//! Certified enclosures of the scalar constants in the two coefficient
//! chains: `C₁`, `θ`, `L₁`, `L₂`, the final coefficients `A`, `B`, `D`,
//! the admissible gap `-B/D`, and the λ-perturbation `η_λ`.
//!
//! Every function takes rational parameters and a working precision in bits;
//! the results are [`Interval`]s containing the exact real values.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::rational::{serde_str, to_f64};
use crate::exact_arith::{int, rat, ArithError, Interval, QuadraticNumber, Rational, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{0} must be strictly positive")]
    NotPositive(&'static str),
    #[error("delta must be nonnegative")]
    NegativeDelta,
}

/// Free parameters of the estimate chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofParams {
    #[serde(with = "serde_str")]
    pub sigma: Rational,
    #[serde(with = "serde_str")]
    pub epsilon: Rational,
    #[serde(with = "serde_str")]
    pub kappa: Rational,
    #[serde(with = "serde_str")]
    pub delta: Rational,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
}

impl ProofParams {
    pub fn new(
        sigma: Rational,
        epsilon: Rational,
        kappa: Rational,
        delta: Rational,
        lambda: Rational,
    ) -> Result<Self, ParamError> {
        let p = Self {
            sigma,
            epsilon,
            kappa,
            delta,
            lambda,
        };
        p.validate()?;
        Ok(p)
    }

    /// σ = 0.616, ε = 0.0577, κ = 0.0434, δ = 1/18, λ = 0.
    pub fn reference_point() -> Self {
        Self {
            sigma: rat(616, 1000),
            epsilon: rat(577, 10000),
            kappa: rat(434, 10000),
            delta: rat(1, 18),
            lambda: int(0),
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !self.sigma.is_positive() {
            return Err(ParamError::NotPositive("sigma"));
        }
        if !self.epsilon.is_positive() {
            return Err(ParamError::NotPositive("epsilon"));
        }
        if !self.kappa.is_positive() {
            return Err(ParamError::NotPositive("kappa"));
        }
        if self.delta.is_negative() {
            return Err(ParamError::NegativeDelta);
        }
        Ok(())
    }

    pub fn with_delta(&self, delta: Rational) -> Self {
        Self {
            delta,
            ..self.clone()
        }
    }

    pub fn with_lambda(&self, lambda: Rational) -> Self {
        Self {
            lambda,
            ..self.clone()
        }
    }
}

/// Enclosures of every named quantity of one chain evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub c1: Interval,
    pub theta: Interval,
    pub l1: Interval,
    pub l2: Interval,
    /// `A = 1 + L₁ - 2L₂ + C₁/(12σκ)`
    pub coef_gradient_pinch: Interval,
    /// `B = 1 - L₁ + (4/3)C₁σ⁻¹κ`
    pub coef_constant: Interval,
    /// `D = (4/3)C₁σ⁻¹κ + 2L₂`
    pub coef_delta_slope: Interval,
    pub eta: Interval,
}

impl CoefficientSet {
    /// `B + D·δ + η`, the coefficient of the `|∇A|²` integral.
    pub fn constant_term(&self, delta: &Rational) -> Interval {
        let slope = self.coef_delta_slope.scale(delta);
        &(&self.coef_constant + &slope) + &self.eta
    }
}

fn q(x: &Rational, prec: u32) -> Interval {
    Interval::from_rational(x, prec)
}

/// `C₁ = (2√6 + 3) / ∛(21√6 + 103/2)`.
pub fn c1(prec: u32) -> Interval {
    let s6 = Interval::from_int(6, prec).sqrt().expect("6 > 0");
    let num = &s6.scale(&int(2)) + &Interval::from_int(3, prec);
    let inner = &s6.scale(&int(21)) + &q(&rat(103, 2), prec);
    num.checked_div(&inner.cbrt())
        .expect("cube root of a positive enclosure is positive")
}

struct Base {
    c1: Interval,
    /// C₁/σ
    c1_over_sigma: Interval,
    theta: Interval,
    l1: Interval,
    l2: Interval,
}

fn base(p: &ProofParams, prec: u32) -> Base {
    let c1 = c1(prec);
    let sigma = q(&p.sigma, prec);
    let c1_over_sigma = c1.checked_div(&sigma).expect("sigma > 0");
    let c1_sigma2 = &c1 * &sigma.square();
    let c1_eps_over_sigma = c1_over_sigma.scale(&p.epsilon);
    // θ = 1 - (2/9)C₁σ² - (2/3)C₁σ⁻¹ε
    let theta = &(&Interval::from_int(1, prec) - &c1_sigma2.scale(&rat(2, 9)))
        - &c1_eps_over_sigma.scale(&rat(2, 3));
    // L₁ = (2/3)C₁σ⁻¹ε + 2θ
    let l1 = &c1_eps_over_sigma.scale(&rat(2, 3)) + &theta.scale(&int(2));
    // L₂ = (1/6)C₁σ² + C₁σ⁻¹ε + C₁σ⁻¹/(24ε) + (9/4)θ
    let young = if p.epsilon.is_zero() {
        None
    } else {
        Some(c1_over_sigma.scale(&(Rational::one() / (int(24) * &p.epsilon))))
    };
    let mut l2 = &(&c1_sigma2.scale(&rat(1, 6)) + &c1_eps_over_sigma) + &theta.scale(&rat(9, 4));
    if let Some(y) = young {
        l2 = &l2 + &y;
    }
    Base {
        c1,
        c1_over_sigma,
        theta,
        l1,
        l2,
    }
}

pub fn theta(p: &ProofParams, prec: u32) -> Interval {
    base(p, prec).theta
}

/// `(L₁, L₂)` from the same θ enclosure. Requires ε > 0 for `L₂`.
pub fn l1_l2(p: &ProofParams, prec: u32) -> (Interval, Interval) {
    let b = base(p, prec);
    (b.l1, b.l2)
}

fn final_coefficients(p: &ProofParams, prec: u32, eta: Interval) -> CoefficientSet {
    let b = base(p, prec);
    let one = Interval::from_int(1, prec);
    let kappa_term = b.c1_over_sigma.scale(&(rat(4, 3) * &p.kappa));
    let pinch = b
        .c1_over_sigma
        .scale(&(Rational::one() / (int(12) * &p.kappa)));
    let a = &(&(&one + &b.l1) - &b.l2.scale(&int(2))) + &pinch;
    let bb = &(&one - &b.l1) + &kappa_term;
    let d = &kappa_term + &b.l2.scale(&int(2));
    CoefficientSet {
        c1: b.c1,
        theta: b.theta,
        l1: b.l1,
        l2: b.l2,
        coef_gradient_pinch: a,
        coef_constant: bb,
        coef_delta_slope: d,
        eta,
    }
}

/// Coefficients of the self-shrinker chain; `eta` is exactly zero.
pub fn theorem1_coefficients(p: &ProofParams, prec: u32) -> CoefficientSet {
    final_coefficients(p, prec, Interval::zero(prec))
}

/// Coefficients of the λ-hypersurface chain, with `eta = η_λ`.
pub fn theorem2_coefficients(p: &ProofParams, prec: u32) -> CoefficientSet {
    final_coefficients(p, prec, eta_lambda(p, prec))
}

/// Enclosure of `-B/D` when θ > 0, A < 0 and B < 0 are all certified.
pub fn delta_max(p: &ProofParams, prec: u32) -> Option<Interval> {
    delta_max_of(&theorem1_coefficients(p, prec))
}

pub fn delta_max_of(c: &CoefficientSet) -> Option<Interval> {
    if !(c.theta.is_positive() && c.coef_gradient_pinch.is_negative() && c.coef_constant.is_negative()) {
        return None;
    }
    (-&c.coef_constant).checked_div(&c.coef_delta_slope).ok()
}

fn abs_lambda(lambda: &Rational) -> Rational {
    lambda.abs()
}

/// `(β_λ, α_λ) = ½(2 + λ² ± |λ|√(λ²+4))`, exactly in `Q(√(λ²+4))`.
pub fn beta_alpha(lambda: &Rational) -> (QuadraticNumber, QuadraticNumber) {
    let l = abs_lambda(lambda);
    let d = &l * &l + int(4);
    let a = (int(2) + &l * &l) / int(2);
    let b = &l / int(2);
    let beta = QuadraticNumber::new(a.clone(), b.clone(), d.clone()).expect("d > 0");
    let alpha = QuadraticNumber::new(a, -b, d).expect("d > 0");
    (beta, alpha)
}

/// `√β_λ = (√(λ²+4) + |λ|)/2`.
pub fn sqrt_beta(lambda: &Rational) -> QuadraticNumber {
    let l = abs_lambda(lambda);
    QuadraticNumber::new(&l / int(2), rat(1, 2), &l * &l + int(4)).expect("d > 0")
}

/// `r_λ = |λ|√(λ²+4) + λ² + |λ|δ/√(λ²+4)`, exactly in `Q(√(λ²+4))`.
pub fn r_lambda(lambda: &Rational, delta: &Rational) -> QuadraticNumber {
    let l = abs_lambda(lambda);
    let d = &l * &l + int(4);
    // |λ|δ/√d = (|λ|δ/d)·√d
    let b = &l + &l * delta / &d;
    QuadraticNumber::new(&l * &l, b, d).expect("d > 0")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("S must be nonnegative")]
    NegativeS,
    #[error("supplied root does not square to S")]
    BadRoot,
    #[error("S lies outside the pinching range [β_λ, β_λ + δ]")]
    OutsidePinchingRange,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Two-sided bounds on `F_λ = S² - S - λf₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FLambdaBounds {
    /// `S(S - 1 - |λ|√S)`, valid for every S ≥ 0.
    pub lower: QuadraticNumber,
    /// `S(S - β_λ + r_λ)`, valid on the pinching range.
    pub upper: QuadraticNumber,
}

/// Bounds at a rational `S`; `√S` lives in `Q(√S)`.
pub fn f_lambda_bounds(
    s: &Rational,
    lambda: &Rational,
    delta: &Rational,
) -> Result<FLambdaBounds, BoundsError> {
    if s.is_negative() {
        return Err(BoundsError::NegativeS);
    }
    let root = QuadraticNumber::sqrt_of(s.clone())?;
    f_lambda_bounds_with_root(&QuadraticNumber::rational(s.clone()), &root, lambda, delta)
}

/// Bounds at an `S` given together with its square root, which lets `S`
/// itself be irrational (e.g. `S = β_λ` with `√β_λ` from [`sqrt_beta`]).
pub fn f_lambda_bounds_with_root(
    s: &QuadraticNumber,
    root: &QuadraticNumber,
    lambda: &Rational,
    delta: &Rational,
) -> Result<FLambdaBounds, BoundsError> {
    if s.sign() == Sign::Negative {
        return Err(BoundsError::NegativeS);
    }
    if root.sign() == Sign::Negative || root.checked_mul(root)? != *s {
        return Err(BoundsError::BadRoot);
    }
    let l = QuadraticNumber::rational(abs_lambda(lambda));
    let one = QuadraticNumber::one();
    let inner = s.checked_sub(&one)?.checked_sub(&l.checked_mul(root)?)?;
    let lower = s.checked_mul(&inner)?;

    let (beta, _) = beta_alpha(lambda);
    let top = beta.checked_add(&QuadraticNumber::rational(delta.clone()))?;
    if s < &beta || s > &top {
        return Err(BoundsError::OutsidePinchingRange);
    }
    let r = r_lambda(lambda, delta);
    let upper = s.checked_mul(&s.checked_sub(&beta)?.checked_add(&r)?)?;
    Ok(FLambdaBounds { lower, upper })
}

/// `η_λ = (4/(3σ))C₁r̃κ + (1+L₁)r̃ + C₁r/(12σκ) + 2|λ|(C₁σ⁻¹ε + 3θ)√(1 + r̃ + δ)`
/// with `r̃ = β_λ - 1`.
pub fn eta_lambda(p: &ProofParams, prec: u32) -> Interval {
    let b = base(p, prec);
    let l = abs_lambda(&p.lambda);
    if l.is_zero() {
        return Interval::zero(prec);
    }
    let l2 = &l * &l;
    let root = q(&(&l2 + int(4)), prec).sqrt().expect("λ²+4 > 0");
    // r̃ = ½(λ² + |λ|√(λ²+4)), written without the cancellation in β - 1
    let r_tilde = (&q(&l2, prec) + &root.scale(&l)).scale(&rat(1, 2));
    // r = |λ|√(λ²+4) + λ² + |λ|δ/√(λ²+4)
    let r = &(&root.scale(&l) + &q(&l2, prec))
        + &root.recip().expect("root > 0").scale(&(&l * &p.delta));
    let one = Interval::from_int(1, prec);
    let t1 = (&b.c1_over_sigma * &r_tilde).scale(&(rat(4, 3) * &p.kappa));
    let t2 = &(&one + &b.l1) * &r_tilde;
    let t3 = (&b.c1_over_sigma * &r).scale(&(Rational::one() / (int(12) * &p.kappa)));
    let mix = &b.c1_over_sigma.scale(&p.epsilon) + &b.theta.scale(&int(3));
    let shifted = &(&one + &r_tilde) + &q(&p.delta, prec);
    let t4 = (&mix * &shifted.sqrt().expect("1 + r̃ + δ > 0")).scale(&(int(2) * &l));
    &(&(&t1 + &t2) + &t3) + &t4
}

/// Float evaluation of the chain, used only for ranking search candidates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatEstimate {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

impl FloatEstimate {
    pub fn feasible(&self) -> bool {
        self.theta > 0.0 && self.a < 0.0 && self.b < 0.0
    }

    /// `-B/D` at a feasible point.
    pub fn delta_sup(&self) -> Option<f64> {
        self.feasible().then(|| -self.b / self.d)
    }
}

pub const C1_F64: f64 = 1.685_429_550_200_249_3;

pub fn estimate(sigma: f64, epsilon: f64, kappa: f64) -> FloatEstimate {
    let cs = C1_F64 / sigma;
    let theta = 1.0 - (2.0 / 9.0 * C1_F64 * sigma * sigma + 2.0 / 3.0 * cs * epsilon);
    let l1 = 2.0 / 3.0 * cs * epsilon + 2.0 * theta;
    let l2 = C1_F64 * sigma * sigma / 6.0 + cs * epsilon + cs / (24.0 * epsilon) + 2.25 * theta;
    FloatEstimate {
        theta,
        a: 1.0 + l1 - 2.0 * l2 + cs / (12.0 * kappa),
        b: 1.0 - l1 + 4.0 / 3.0 * cs * kappa,
        d: 4.0 / 3.0 * cs * kappa + 2.0 * l2,
    }
}

pub fn estimate_params(p: &ProofParams) -> FloatEstimate {
    estimate(to_f64(&p.sigma), to_f64(&p.epsilon), to_f64(&p.kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::parse_rational;

    fn close(x: &Interval, v: &str, tol: &str) -> bool {
        let v = parse_rational(v).unwrap();
        let tol = parse_rational(tol).unwrap();
        let m = x.midpoint();
        (m - v).abs() <= tol
    }

    #[test]
    fn c1_value_and_refinement() {
        let c = c1(256);
        assert!(close(&c, "1.68542955020024928508886894033768022385587308584", "0.0000000000000000000000000000000000000001"));
        assert!(c.lo().to_rational() > rat(16, 10) && c.hi().to_rational() < rat(18, 10));
        let coarse = c1(64);
        let fine = c1(128);
        assert!(coarse.encloses(&fine));
        assert!(fine.width() * int(2) <= coarse.width());
    }

    #[test]
    fn theta_drops_epsilon_term() {
        let p = ProofParams::reference_point();
        let p0 = ProofParams {
            epsilon: int(0),
            ..p.clone()
        };
        let expect = &Interval::from_int(1, 256) - &(&c1(256) * &q(&(&p.sigma * &p.sigma), 256)).scale(&rat(2, 9));
        let t = theta(&p0, 256);
        assert!((t.midpoint() - expect.midpoint()).abs() < rat(1, 1_000_000_000));
        assert!(theta(&p, 256).is_positive());
    }

    #[test]
    fn theta_negative_for_large_epsilon() {
        // (2/3)C₁σ⁻¹ε > 1 once ε > 3σ/(2C₁) ≈ 0.548
        let p = ProofParams::reference_point();
        let bad = ProofParams {
            epsilon: rat(6, 10),
            ..p
        };
        assert!(theta(&bad, 256).is_negative());
        assert_eq!(delta_max(&bad, 256), None);
    }

    #[test]
    fn l2_decomposition() {
        let p = ProofParams::reference_point();
        let b = base(&p, 256);
        let rest = &(&b.l2 - &b.theta.scale(&rat(9, 4)))
            - &b.c1_over_sigma.scale(&(Rational::one() / (int(24) * &p.epsilon)));
        let direct = &(&b.c1 * &q(&(&p.sigma * &p.sigma), 256)).scale(&rat(1, 6))
            + &b.c1_over_sigma.scale(&p.epsilon);
        assert!((rest.midpoint() - direct.midpoint()).abs() < rat(1, 10i64.pow(15)));
    }

    #[test]
    fn beta_alpha_product_is_one() {
        for lam in [int(0), rat(1, 2), rat(-7, 3), rat(1, 10000)] {
            let (b, a) = beta_alpha(&lam);
            assert_eq!(b.checked_mul(&a).unwrap(), QuadraticNumber::one());
            assert_eq!(sqrt_beta(&lam).square(), b);
            if !lam.is_zero() {
                assert!(b > QuadraticNumber::one() && a < QuadraticNumber::one());
            }
        }
    }

    #[test]
    fn f_lambda_bounds_at_beta() {
        let lam = rat(3, 4);
        let delta = rat(1, 18);
        let (beta, _) = beta_alpha(&lam);
        let bounds = f_lambda_bounds_with_root(&beta, &sqrt_beta(&lam), &lam, &delta).unwrap();
        assert_eq!(bounds.lower, QuadraticNumber::zero());
        assert_eq!(bounds.upper, beta.checked_mul(&r_lambda(&lam, &delta)).unwrap());
        assert!(bounds.upper.sign() != Sign::Negative);
    }

    #[test]
    fn f_lambda_bounds_collapse_at_zero_lambda() {
        let s = rat(37, 36);
        let b = f_lambda_bounds(&s, &int(0), &rat(1, 18)).unwrap();
        let expect = QuadraticNumber::rational(&s * (&s - int(1)));
        assert_eq!(b.lower, expect);
        assert_eq!(b.upper, expect);
        assert_eq!(
            f_lambda_bounds(&rat(2, 1), &int(0), &rat(1, 18)),
            Err(BoundsError::OutsidePinchingRange)
        );
        assert_eq!(f_lambda_bounds(&int(-1), &int(0), &int(0)), Err(BoundsError::NegativeS));
    }

    #[test]
    fn eta_vanishes_at_zero_lambda() {
        let e = eta_lambda(&ProofParams::reference_point(), 256);
        assert!(e.is_point() && e.lo().is_zero());
    }

    #[test]
    fn params_validation() {
        let p = ProofParams::reference_point();
        assert!(ProofParams::new(int(0), p.epsilon.clone(), p.kappa.clone(), p.delta.clone(), int(0)).is_err());
        assert_eq!(
            ProofParams::new(p.sigma.clone(), p.epsilon.clone(), p.kappa.clone(), int(-1), int(0)),
            Err(ParamError::NegativeDelta)
        );
    }

    #[test]
    fn float_estimate_tracks_certified_chain() {
        let p = ProofParams::reference_point();
        let e = estimate_params(&p);
        let c = theorem1_coefficients(&p, 256);
        assert!((e.b - c.coef_constant.to_f64()).abs() < 1e-12);
        assert!((e.delta_sup().unwrap() - delta_max(&p, 256).unwrap().to_f64()).abs() < 1e-12);
        assert!((C1_F64 - c.c1.to_f64()).abs() < 1e-15);
    }
}
