//! Exact spectral data of the model hypersurfaces `S^k(r) × R^{n-k}`.
//!
//! A model is determined by `(λ, k, n)`; its radius solves `λ = k/r - r`, so
//! `r = (√(λ²+4k) - λ)/2` and every quantity lives in `Q(√(λ²+4k))`. The
//! unit normal is oriented so that `X^N = -r` on the sphere factor, which
//! makes the mean curvature `H = kμ₁` positive.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::rational::serde_str;
use crate::exact_arith::{int, rat, QuadraticNumber, Rational, Sign};
use crate::pinch_coefficients::beta_alpha;
use crate::spectral_identities::suites::repeated_spectrum_gap_vanishes;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("sphere dimension k = {k} must satisfy 1 <= k <= n = {n}")]
    InvalidK { k: usize, n: usize },
    #[error("the self-shrinker equation requires λ = 0")]
    ShrinkerNeedsZeroLambda,
    #[error("classification needs λ ≠ 0; at λ = 0 every model has |A|² = 1")]
    ZeroLambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    RoundSphere,
    Cylinder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    Shrinker,
    LambdaHyp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSurface {
    pub kind: ModelKind,
    pub n: usize,
    pub k: usize,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub radius: QuadraticNumber,
}

/// Builds `S^k(r) × R^{n-k}` with `r = (√(λ²+4k) - λ)/2`; at `λ = 0` the
/// radius is stored as `√k`.
pub fn make_model(lambda: &Rational, k: usize, n: usize) -> Result<ModelSurface, ModelError> {
    if k == 0 || k > n {
        return Err(ModelError::InvalidK { k, n });
    }
    let kq = int(k as i64);
    let radius = if lambda.is_zero() {
        QuadraticNumber::sqrt_of(kq).expect("k > 0")
    } else {
        let d = lambda * lambda + int(4) * kq;
        QuadraticNumber::new(-lambda / int(2), rat(1, 2), d).expect("d > 0")
    };
    let kind = if k == n {
        ModelKind::RoundSphere
    } else {
        ModelKind::Cylinder
    };
    Ok(ModelSurface {
        kind,
        n,
        k,
        lambda: lambda.clone(),
        radius,
    })
}

impl ModelSurface {
    /// `μ₁ = (√(λ²+4k) + λ)/(2k)`.
    pub fn curvature(&self) -> QuadraticNumber {
        let k = int(self.k as i64);
        if self.lambda.is_zero() {
            // 1/√k = √k / k
            return self.radius.scale(&(Rational::one() / k));
        }
        let d = self.radius.radicand().clone();
        QuadraticNumber::new(&self.lambda / (int(2) * &k), Rational::one() / (int(2) * &k), d)
            .expect("d > 0")
    }

    /// `λ·r = k - r²`, the cleared form of `λ = k/r - r`.
    pub fn satisfies_radius_relation(&self) -> bool {
        let lr = self.radius.scale(&self.lambda);
        let rhs = QuadraticNumber::rational(int(self.k as i64)) - self.radius.square();
        lr == rhs && self.radius.sign() == Sign::Positive
    }
}

/// `k` copies of `μ₁` followed by `n - k` zeros.
pub fn principal_curvatures(m: &ModelSurface) -> Vec<QuadraticNumber> {
    let mu = m.curvature();
    let mut out = vec![mu; m.k];
    out.resize(m.n, QuadraticNumber::zero());
    out
}

/// `H + X^N - λ` with `H = kμ₁` and `X^N = -r`; zero on every model.
pub fn residual(m: &ModelSurface, equation: Equation) -> Result<QuadraticNumber, ModelError> {
    if equation == Equation::Shrinker && !m.lambda.is_zero() {
        return Err(ModelError::ShrinkerNeedsZeroLambda);
    }
    let h = m.curvature().scale(&int(m.k as i64));
    let x_n = -&m.radius;
    Ok(h + x_n - QuadraticNumber::rational(m.lambda.clone()))
}

/// Closed form `(λ² + 2k ± |λ|√(λ²+4k))/(2k)`, sign `+` for λ > 0.
pub fn s_k_closed_form(lambda: &Rational, k: usize) -> QuadraticNumber {
    let k = int(k as i64);
    let two_k = int(2) * &k;
    let l2 = lambda * lambda;
    let d = &l2 + int(4) * &k;
    let b = match lambda.cmp(&Rational::zero()) {
        Ordering::Greater => lambda.abs() / &two_k,
        Ordering::Less => -lambda.abs() / &two_k,
        Ordering::Equal => Rational::zero(),
    };
    QuadraticNumber::new((&l2 + &two_k) / &two_k, b, d).expect("d >= 0")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("S_k = kμ₁² disagrees with its closed form for λ = {lambda}, k = {k}")]
pub struct ClosedFormMismatch {
    pub lambda: String,
    pub k: usize,
}

/// `S_k = kμ₁²`, checked against [`s_k_closed_form`].
pub fn norm_s_k(m: &ModelSurface) -> Result<QuadraticNumber, ClosedFormMismatch> {
    let mu = m.curvature();
    let s = mu.square().scale(&int(m.k as i64));
    if s != s_k_closed_form(&m.lambda, m.k) {
        return Err(ClosedFormMismatch {
            lambda: crate::exact_arith::format_rational(&m.lambda),
            k: m.k,
        });
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelVerdict {
    pub k: usize,
    pub admissible: bool,
    pub s_k: QuadraticNumber,
    pub radius: QuadraticNumber,
    /// Sign of `β_λ - S_k`.
    pub beta_minus_s_k: Sign,
}

/// For each `1 <= k <= n`, whether `S_k = β_λ` (only these can satisfy the
/// pinching band at `|∇A| ≡ 0`).
pub fn classify_admissible(lambda: &Rational, n: usize) -> Result<Vec<ModelVerdict>, ModelError> {
    if lambda.is_zero() {
        return Err(ModelError::ZeroLambda);
    }
    let (beta, _) = beta_alpha(lambda);
    (1..=n)
        .map(|k| {
            let m = make_model(lambda, k, n)?;
            let s_k = norm_s_k(&m).expect("closed form is an identity");
            let diff = beta.cmp_value(&s_k);
            Ok(ModelVerdict {
                k,
                admissible: diff == Ordering::Equal,
                s_k,
                radius: m.radius,
                beta_minus_s_k: match diff {
                    Ordering::Less => Sign::Negative,
                    Ordering::Equal => Sign::Zero,
                    Ordering::Greater => Sign::Positive,
                },
            })
        })
        .collect()
}

/// Aggregated exact checks for one `(λ, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub n: usize,
    pub radius_relations_hold: bool,
    pub residuals_vanish: bool,
    pub closed_forms_match: bool,
    pub curvature_times_radius_is_one: bool,
    pub gap_vanishes: bool,
    /// `F_λ = β² - β - λμ₁³` at the `k = 1` model; only checked for λ > 0.
    pub f_lambda_vanishes_at_k1: Option<bool>,
    /// `S_k` values at λ = 0 all equal 1.
    pub unit_norm_at_zero: Option<bool>,
    pub admissible_k: Vec<usize>,
    pub passed: bool,
}

/// Runs every exact model check at `(λ, n)`.
pub fn check_models(lambda: &Rational, n: usize) -> Result<ModelCheck, ModelError> {
    let mut radius_ok = true;
    let mut residual_ok = true;
    let mut closed_ok = true;
    let mut inverse_ok = true;
    let mut gap_ok = true;
    let mut unit_ok = true;
    for k in 1..=n {
        let m = make_model(lambda, k, n)?;
        radius_ok &= m.satisfies_radius_relation();
        let eq = if lambda.is_zero() {
            Equation::Shrinker
        } else {
            Equation::LambdaHyp
        };
        residual_ok &= residual(&m, eq)?.is_zero();
        let s = norm_s_k(&m);
        closed_ok &= s.is_ok();
        if let Ok(s) = &s {
            unit_ok &= *s == QuadraticNumber::one();
        }
        inverse_ok &= (m.curvature() * m.radius.clone()) == QuadraticNumber::one();
        gap_ok &= repeated_spectrum_gap_vanishes(&m.curvature(), k, n);
    }
    let f_k1 = lambda.is_positive().then(|| {
        let m = make_model(lambda, 1, n).expect("k = 1 is valid");
        let mu = m.curvature();
        let s = mu.square();
        let f = &(&s * &s - s.clone()) - &mu.powi(3).scale(lambda);
        f.is_zero()
    });
    let admissible_k = if lambda.is_zero() {
        (1..=n).collect()
    } else {
        classify_admissible(lambda, n)?
            .into_iter()
            .filter(|v| v.admissible)
            .map(|v| v.k)
            .collect()
    };
    let unit_norm_at_zero = lambda.is_zero().then_some(unit_ok);
    let expected_admissible: Vec<usize> = match lambda.cmp(&Rational::zero()) {
        Ordering::Greater => vec![1],
        Ordering::Less => vec![],
        Ordering::Equal => (1..=n).collect(),
    };
    let passed = radius_ok
        && residual_ok
        && closed_ok
        && inverse_ok
        && gap_ok
        && f_k1.unwrap_or(true)
        && unit_norm_at_zero.unwrap_or(true)
        && admissible_k == expected_admissible;
    Ok(ModelCheck {
        lambda: lambda.clone(),
        n,
        radius_relations_hold: radius_ok,
        residuals_vanish: residual_ok,
        closed_forms_match: closed_ok,
        curvature_times_radius_is_one: inverse_ok,
        gap_vanishes: gap_ok,
        f_lambda_vanishes_at_k1: f_k1,
        unit_norm_at_zero,
        admissible_k,
        passed,
    })
}

/// λ values always exercised by the `models` command.
pub fn builtin_lambda_grid() -> Vec<Rational> {
    [
        (-2, 1),
        (-1, 1),
        (-1, 2),
        (-1, 10),
        (-1, 1000),
        (0, 1),
        (1, 1000),
        (1, 10),
        (1, 2),
        (3, 4),
        (1, 1),
        (2, 1),
        (7, 3),
    ]
    .iter()
    .map(|&(p, q)| rat(p, q))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_shrinker_cylinder_radius() {
        let m = make_model(&int(0), 4, 6).unwrap();
        assert_eq!(m.radius, QuadraticNumber::rational(int(2)));
        assert_eq!(m.kind, ModelKind::Cylinder);
        let mu = principal_curvatures(&m);
        let half = QuadraticNumber::rational(rat(1, 2));
        assert_eq!(mu, vec![half.clone(), half.clone(), half.clone(), half, QuadraticNumber::zero(), QuadraticNumber::zero()]);
    }

    #[test]
    fn lambda_cylinder_radius() {
        let m = make_model(&rat(3, 4), 1, 3).unwrap();
        let expect = QuadraticNumber::new(rat(-3, 8), rat(1, 8), int(73)).unwrap();
        assert_eq!(m.radius, expect);
        assert!(m.satisfies_radius_relation());
        let mu = QuadraticNumber::new(rat(3, 8), rat(1, 8), int(73)).unwrap();
        assert_eq!(m.curvature(), mu);
    }

    #[test]
    fn round_sphere() {
        let m = make_model(&int(0), 5, 5).unwrap();
        assert_eq!(m.kind, ModelKind::RoundSphere);
        assert_eq!(m.radius, QuadraticNumber::sqrt_of(int(5)).unwrap());
        let h = m.curvature().scale(&int(5));
        assert_eq!(h, m.radius);
        assert!(residual(&m, Equation::Shrinker).unwrap().is_zero());
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(make_model(&int(0), 0, 3), Err(ModelError::InvalidK { k: 0, n: 3 }));
        assert_eq!(make_model(&int(0), 4, 3), Err(ModelError::InvalidK { k: 4, n: 3 }));
        let m = make_model(&rat(1, 2), 1, 3).unwrap();
        assert_eq!(residual(&m, Equation::Shrinker), Err(ModelError::ShrinkerNeedsZeroLambda));
        assert_eq!(classify_admissible(&int(0), 3), Err(ModelError::ZeroLambda));
    }

    #[test]
    fn norms() {
        for k in 1..6 {
            let m = make_model(&int(0), k, 6).unwrap();
            assert_eq!(norm_s_k(&m).unwrap(), QuadraticNumber::one());
        }
        let lam = rat(1, 2);
        let (beta, _) = beta_alpha(&lam);
        assert_eq!(norm_s_k(&make_model(&lam, 1, 4).unwrap()).unwrap(), beta);
        assert!(norm_s_k(&make_model(&lam, 2, 4).unwrap()).unwrap() < beta);
    }

    #[test]
    fn classification_examples() {
        let pos = classify_admissible(&rat(1, 2), 5).unwrap();
        let ks: Vec<usize> = pos.iter().filter(|v| v.admissible).map(|v| v.k).collect();
        assert_eq!(ks, vec![1]);
        assert_eq!(pos[0].radius, QuadraticNumber::new(rat(-1, 4), rat(1, 4), int(17)).unwrap());
        let neg = classify_admissible(&rat(-1, 2), 5).unwrap();
        assert!(neg.iter().all(|v| !v.admissible && v.beta_minus_s_k == Sign::Positive));
    }

    #[test]
    fn full_checks_on_builtin_grid() {
        for lam in builtin_lambda_grid() {
            let c = check_models(&lam, 5).unwrap();
            assert!(c.passed, "{c:?}");
        }
    }
}
