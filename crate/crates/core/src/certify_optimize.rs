//! Certification of parameter points, search for the largest certifiable
//! pinching gap, and bisection for the largest admissible `|λ|`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::rational::{serde_str, snap_f64, to_f64};
use crate::exact_arith::{format_rational, int, rat, Interval, Rational};
use crate::exec::{map_indexed, Execution};
use crate::pinch_coefficients::{
    delta_max_of, estimate, theorem1_coefficients, theorem2_coefficients, CoefficientSet,
    ProofParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Theorem {
    /// Self-shrinker chain.
    One,
    /// λ-hypersurface chain.
    Two,
}

impl From<Theorem> for u8 {
    fn from(t: Theorem) -> u8 {
        match t {
            Theorem::One => 1,
            Theorem::Two => 2,
        }
    }
}

impl TryFrom<u8> for Theorem {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            other => Err(format!("theorem must be 1 or 2, got {other}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Lt,
    Gt,
    Le,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

pub const INDETERMINATE_REASON: &str = "indeterminate at this precision";

/// One strict comparison of an enclosure against a rational threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub enclosure: Interval,
    pub relation: Relation,
    #[serde(with = "serde_str")]
    pub threshold: Rational,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn evaluate(name: &str, enclosure: Interval, relation: Relation, threshold: Rational) -> Self {
        let lo = enclosure.lo().to_rational();
        let hi = enclosure.hi().to_rational();
        let outcome = match relation {
            Relation::Lt if hi < threshold => Outcome::Pass,
            Relation::Lt if lo >= threshold => Outcome::Fail,
            Relation::Gt if lo > threshold => Outcome::Pass,
            Relation::Gt if hi <= threshold => Outcome::Fail,
            Relation::Le if hi <= threshold => Outcome::Pass,
            Relation::Le if lo > threshold => Outcome::Fail,
            _ => Outcome::Indeterminate,
        };
        let reason = match outcome {
            Outcome::Pass => None,
            Outcome::Fail => Some("enclosure lies on the wrong side of the threshold".to_string()),
            Outcome::Indeterminate => Some(INDETERMINATE_REASON.to_string()),
        };
        Self {
            name: name.to_string(),
            enclosure,
            relation,
            threshold,
            outcome,
            reason,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

pub const THETA_POSITIVE: &str = "θ>0";
pub const A_NEGATIVE: &str = "A<0";
pub const B_NEGATIVE: &str = "B<0";
pub const FINAL_T1: &str = "B+Dδ<0";
pub const FINAL_T2: &str = "B+Dδ+η<0";
pub const REF_B: &str = "B<−0.452";
pub const REF_D: &str = "D<8.03";
pub const REF_ETA: &str = "η≤0.005";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub params: ProofParams,
    pub precision: u32,
    pub verdicts: Vec<Verdict>,
    /// Published reference bounds; informational, not part of `passed`.
    pub reference_checks: Vec<Verdict>,
    pub coefficients: CoefficientSet,
    /// Enclosure of `-B/D`, present when θ > 0, A < 0 and B < 0 are certified.
    pub delta_sup: Option<Interval>,
    pub passed: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .chain(&self.reference_checks)
            .find(|v| v.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed())
    }

    /// Recomputes from the stored params and precision.
    pub fn replay(&self) -> Certificate {
        certify_point(&self.params, self.theorem, self.precision)
    }
}

/// Certifies the sign conditions of one chain at `p`. Theorem 1 ignores
/// `p.lambda` and records the point with λ = 0.
pub fn certify_point(p: &ProofParams, theorem: Theorem, prec: u32) -> Certificate {
    let (params, coefs) = match theorem {
        Theorem::One => {
            let p = p.with_lambda(Rational::zero());
            let c = theorem1_coefficients(&p, prec);
            (p, c)
        }
        Theorem::Two => (p.clone(), theorem2_coefficients(p, prec)),
    };
    let zero = Rational::zero();
    let final_name = match theorem {
        Theorem::One => FINAL_T1,
        Theorem::Two => FINAL_T2,
    };
    let verdicts = vec![
        Verdict::evaluate(THETA_POSITIVE, coefs.theta.clone(), Relation::Gt, zero.clone()),
        Verdict::evaluate(A_NEGATIVE, coefs.coef_gradient_pinch.clone(), Relation::Lt, zero.clone()),
        Verdict::evaluate(B_NEGATIVE, coefs.coef_constant.clone(), Relation::Lt, zero.clone()),
        Verdict::evaluate(final_name, coefs.constant_term(&params.delta), Relation::Lt, zero),
    ];
    let mut reference_checks = vec![
        Verdict::evaluate(REF_B, coefs.coef_constant.clone(), Relation::Lt, rat(-452, 1000)),
        Verdict::evaluate(REF_D, coefs.coef_delta_slope.clone(), Relation::Lt, rat(803, 100)),
    ];
    if theorem == Theorem::Two {
        reference_checks.push(Verdict::evaluate(REF_ETA, coefs.eta.clone(), Relation::Le, rat(1, 200)));
    }
    let passed = verdicts.iter().all(Verdict::passed);
    Certificate {
        theorem,
        precision: prec,
        delta_sup: delta_max_of(&coefs),
        params,
        verdicts,
        reference_checks,
        coefficients: coefs,
        passed,
    }
}

// ---------------------------------------------------------------------------
// Search over (σ, ε, κ)

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    #[serde(with = "serde_str::pair")]
    pub sigma: (Rational, Rational),
    #[serde(with = "serde_str::pair")]
    pub epsilon: (Rational, Rational),
    #[serde(with = "serde_str::pair")]
    pub kappa: (Rational, Rational),
}

impl SearchBox {
    fn axes(&self) -> [&(Rational, Rational); 3] {
        [&self.sigma, &self.epsilon, &self.kappa]
    }

    pub fn contains(&self, x: &[Rational; 3]) -> bool {
        self.axes()
            .iter()
            .zip(x)
            .all(|((lo, hi), v)| lo <= v && v <= hi)
    }

    fn clamp(&self, x: [Rational; 3]) -> [Rational; 3] {
        let mut out = x;
        for (v, (lo, hi)) in out.iter_mut().zip(self.axes()) {
            if *v < *lo {
                *v = lo.clone();
            } else if *v > *hi {
                *v = hi.clone();
            }
        }
        out
    }

    fn float_bounds(&self) -> [(f64, f64); 3] {
        self.axes().map(|(lo, hi)| (to_f64(lo), to_f64(hi)))
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            sigma: (rat(2, 5), rat(4, 5)),
            epsilon: (rat(1, 50), rat(3, 25)),
            kappa: (rat(1, 50), rat(2, 25)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub bounds: SearchBox,
    pub grid_resolution: usize,
    pub refine_iterations: usize,
    #[serde(with = "serde_str")]
    pub refine_shrink: Rational,
    pub seed: u64,
    /// Best grid points used as refinement starts.
    pub top_k: usize,
    /// Additional seeded uniform starts inside the box.
    pub random_starts: usize,
    /// Points always evaluated exactly when inside the box.
    #[serde(with = "serde_triples")]
    pub anchors: Vec<[Rational; 3]>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        let p = ProofParams::reference_point();
        Self {
            bounds: SearchBox::default(),
            grid_resolution: 25,
            refine_iterations: 400,
            refine_shrink: rat(1, 2),
            seed: 0,
            top_k: 4,
            random_starts: 4,
            anchors: vec![[p.sigma, p.epsilon, p.kappa]],
        }
    }
}

mod serde_triples {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact_arith::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[[Rational; 3]], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|t| t.clone().map(|q| format_rational(&q)))
            .collect::<Vec<[String; 3]>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[Rational; 3]>, D::Error> {
        let raw = Vec::<[String; 3]>::deserialize(d)?;
        raw.into_iter()
            .map(|t| {
                let [a, b, c] = t;
                Ok([
                    parse_rational(&a).map_err(serde::de::Error::custom)?,
                    parse_rational(&b).map_err(serde::de::Error::custom)?,
                    parse_rational(&c).map_err(serde::de::Error::custom)?,
                ])
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bounds must be strictly positive with lo <= hi ({0})")]
    BadBounds(&'static str),
    #[error("grid resolution must be at least 2")]
    Resolution,
    #[error("refinement shrink factor must lie strictly between 0 and 1")]
    Shrink,
    #[error("no grid point in the box satisfies θ > 0, A < 0, B < 0")]
    EmptyFeasibleSet,
    #[error("no candidate could be certified with θ > 0, A < 0, B < 0")]
    NothingCertified,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        for ((lo, hi), name) in self.bounds.axes().into_iter().zip(["σ", "ε", "κ"]) {
            if !lo.is_positive() || lo > hi {
                return Err(SearchError::BadBounds(name));
            }
        }
        if self.grid_resolution < 2 {
            return Err(SearchError::Resolution);
        }
        if !self.refine_shrink.is_positive() || self.refine_shrink >= Rational::one() {
            return Err(SearchError::Shrink);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimization {
    pub best: Certificate,
    /// Certificates of every exact candidate, in evaluation order.
    pub trace: Vec<Certificate>,
    pub grid_points: usize,
    pub feasible_points: usize,
    /// Whether the float `-B/D` profile in κ at the best (σ, ε) is unimodal.
    pub kappa_profile_unimodal: bool,
}

fn score(x: [f64; 3]) -> Option<f64> {
    estimate(x[0], x[1], x[2]).delta_sup()
}

/// Descending score, then ascending (σ, ε, κ).
fn rank(a: &(f64, [f64; 3]), b: &(f64, [f64; 3])) -> Ordering {
    b.0.total_cmp(&a.0).then_with(|| {
        a.1.iter()
            .zip(&b.1)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

const KAPPA_SAMPLES: usize = 64;
const GOLDEN_STEPS: usize = 80;

/// Best κ for fixed (σ, ε): a uniform scan of the κ range, then golden-section
/// refinement between the neighbours of the best sample. Infeasible points
/// score −∞, so the refinement also converges onto a feasibility boundary.
fn best_kappa(sigma: f64, epsilon: f64, (lo, hi): (f64, f64)) -> Option<(f64, f64)> {
    let f = |k: f64| score([sigma, epsilon, k]).unwrap_or(f64::NEG_INFINITY);
    if lo >= hi {
        let s = f(lo);
        return s.is_finite().then_some((s, lo));
    }
    let h = (hi - lo) / (KAPPA_SAMPLES - 1) as f64;
    let (mut best_i, mut best_s) = (0, f64::NEG_INFINITY);
    for i in 0..KAPPA_SAMPLES {
        let s = f(lo + h * i as f64);
        if s > best_s {
            best_i = i;
            best_s = s;
        }
    }
    if !best_s.is_finite() {
        return None;
    }
    let mut a = (lo + h * best_i.saturating_sub(1) as f64).max(lo);
    let mut b = (lo + h * (best_i + 1) as f64).min(hi);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_STEPS {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        }
    }
    let k_best = lo + h * best_i as f64;
    [(fc, c), (fd, d), (best_s, k_best)]
        .into_iter()
        .filter(|(s, _)| s.is_finite())
        .max_by(|x, y| x.0.total_cmp(&y.0))
}

/// Compass search in (σ, ε) over the 8 neighbours of the current point,
/// with κ profiled out by [`best_kappa`]; steps contract by `shrink` when no
/// neighbour improves.
fn refine(start: [f64; 3], bounds: [(f64, f64); 3], iterations: usize, shrink: f64, res: usize) -> [f64; 3] {
    let profile = |s: f64, e: f64| best_kappa(s, e, bounds[2]);
    let mut x = [start[0], start[1]];
    let (mut best, mut kappa) = match profile(x[0], x[1]) {
        Some((s, k)) => (s, k),
        None => (f64::NEG_INFINITY, start[2]),
    };
    let mut step = [0, 1].map(|i| (bounds[i].1 - bounds[i].0) / (res - 1) as f64);
    for _ in 0..iterations {
        let mut next = None;
        for a in [-1.0, 0.0, 1.0] {
            for b in [-1.0, 0.0, 1.0] {
                if a == 0.0 && b == 0.0 {
                    continue;
                }
                let y = [
                    (x[0] + a * step[0]).clamp(bounds[0].0, bounds[0].1),
                    (x[1] + b * step[1]).clamp(bounds[1].0, bounds[1].1),
                ];
                if let Some((s, k)) = profile(y[0], y[1]) {
                    if s > best {
                        best = s;
                        next = Some((y, k));
                    }
                }
            }
        }
        match next {
            Some((y, k)) => {
                x = y;
                kappa = k;
            }
            None => {
                step = step.map(|s| s * shrink);
                if step.iter().all(|s| *s < 1e-12) {
                    break;
                }
            }
        }
    }
    [x[0], x[1], kappa]
}

pub const SNAP_DENOMINATOR: u64 = 1_000_000;

/// Rounds to the `1/10⁶` lattice, choosing among the 27 lattice points
/// around the rounded one the best by float score. A refined point sits on
/// the boundary of the feasible set, so plain rounding often leaves it.
fn snap_feasible(bounds: &SearchBox, x: [f64; 3]) -> [Rational; 3] {
    let base = bounds.clamp(x.map(|v| snap_f64(v, SNAP_DENOMINATOR)));
    let unit = Rational::new(1.into(), SNAP_DENOMINATOR.into());
    let mut best: Option<(f64, [Rational; 3])> = None;
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                let y = bounds.clamp([
                    &base[0] + &unit * int(a),
                    &base[1] + &unit * int(b),
                    &base[2] + &unit * int(c),
                ]);
                if let Some(s) = score(y.clone().map(|v| to_f64(&v))) {
                    if best.as_ref().is_none_or(|(bs, _)| s > *bs) {
                        best = Some((s, y));
                    }
                }
            }
        }
    }
    best.map_or(base, |(_, y)| y)
}

/// Grid scan, float refinement, rational snapping and exact certification
/// of the theorem-1 chain at gap `delta`.
pub fn optimize_delta(
    cfg: &SearchConfig,
    delta: &Rational,
    prec: u32,
    exec: Execution,
) -> Result<Optimization, SearchError> {
    cfg.validate()?;
    let res = cfg.grid_resolution;
    let fb = cfg.bounds.float_bounds();
    let coord = |axis: usize, i: usize| {
        let (lo, hi) = fb[axis];
        lo + (hi - lo) * i as f64 / (res - 1) as f64
    };
    let n = res * res * res;
    let scored = map_indexed(n, exec, |idx| {
        let x = [coord(0, idx / (res * res)), coord(1, (idx / res) % res), coord(2, idx % res)];
        score(x).map(|s| (s, x))
    });
    let mut feasible: Vec<(f64, [f64; 3])> = scored.into_iter().flatten().collect();
    let anchors: Vec<[Rational; 3]> = cfg
        .anchors
        .iter()
        .filter(|a| cfg.bounds.contains(a))
        .cloned()
        .collect();
    let anchor_floats: Vec<[f64; 3]> = anchors.iter().map(|a| a.clone().map(|q| to_f64(&q))).collect();
    if feasible.is_empty() && !anchor_floats.iter().any(|a| score(*a).is_some()) {
        return Err(SearchError::EmptyFeasibleSet);
    }
    let feasible_points = feasible.len();
    feasible.sort_by(rank);

    let mut starts: Vec<[f64; 3]> = feasible.iter().take(cfg.top_k).map(|c| c.1).collect();
    starts.extend(&anchor_floats);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_starts {
        starts.push(fb.map(|(lo, hi)| if lo < hi { rng.random_range(lo..=hi) } else { lo }));
    }
    let shrink = to_f64(&cfg.refine_shrink);
    let refined = map_indexed(starts.len(), exec, |i| refine(starts[i], fb, cfg.refine_iterations, shrink, res));

    let mut candidates: Vec<[Rational; 3]> = anchors;
    for x in refined {
        let snapped = snap_feasible(&cfg.bounds, x);
        if !candidates.contains(&snapped) {
            candidates.push(snapped);
        }
    }
    let trace: Vec<Certificate> = map_indexed(candidates.len(), exec, |i| {
        let [s, e, k] = candidates[i].clone();
        let p = ProofParams {
            sigma: s,
            epsilon: e,
            kappa: k,
            delta: delta.clone(),
            lambda: Rational::zero(),
        };
        certify_point(&p, Theorem::One, prec)
    });
    let best = trace
        .iter()
        .filter(|c| c.delta_sup.is_some())
        .fold(None::<&Certificate>, |acc, c| match acc {
            Some(b) if b.delta_sup.as_ref().unwrap().lo() >= c.delta_sup.as_ref().unwrap().lo() => Some(b),
            _ => Some(c),
        })
        .cloned()
        .ok_or(SearchError::NothingCertified)?;
    let kappa_profile_unimodal = kappa_profile(
        to_f64(&best.params.sigma),
        to_f64(&best.params.epsilon),
        fb[2],
        100,
    )
    .unimodal;
    Ok(Optimization {
        best,
        trace,
        grid_points: n,
        feasible_points,
        kappa_profile_unimodal,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KappaProfile {
    pub values: Vec<Option<f64>>,
    pub unimodal: bool,
}

/// Float `-B/D` over `points` evenly spaced κ, with an empirical check that
/// the feasible values rise then fall with no second ascent.
pub fn kappa_profile(sigma: f64, epsilon: f64, range: (f64, f64), points: usize) -> KappaProfile {
    let values: Vec<Option<f64>> = (0..points)
        .map(|i| {
            let t = if points > 1 { i as f64 / (points - 1) as f64 } else { 0.0 };
            score([sigma, epsilon, range.0 + (range.1 - range.0) * t])
        })
        .collect();
    let feasible_run: Vec<(usize, f64)> = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    let contiguous = feasible_run.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    let mut descending = false;
    let mut unimodal = contiguous;
    for w in feasible_run.windows(2) {
        if w[1].1 < w[0].1 {
            descending = true;
        } else if descending && w[1].1 > w[0].1 {
            unimodal = false;
        }
    }
    KappaProfile { values, unimodal }
}

// ---------------------------------------------------------------------------
// Largest admissible |λ|

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GammaMode {
    /// `B + Dδ + η_λ < 0`.
    Sharp,
    /// `η_λ <= bound`; the published bound is 1/200.
    Threshold {
        #[serde(with = "serde_str")]
        bound: Rational,
    },
}

impl GammaMode {
    pub fn reference_threshold() -> Self {
        GammaMode::Threshold { bound: rat(1, 200) }
    }

    pub fn label(&self) -> String {
        match self {
            GammaMode::Sharp => "sharp".to_string(),
            GammaMode::Threshold { bound } => format!("threshold η≤{}", format_rational(bound)),
        }
    }
}

pub const GAMMA_DENOMINATOR: i64 = 1_000_000_000;
const GAMMA_CAP: u64 = 1_000 * GAMMA_DENOMINATOR as u64;
const RECHECK_SAMPLES: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaBracket {
    pub mode: GammaMode,
    /// Largest certified λ on the `1/10⁹` lattice.
    #[serde(with = "serde_str")]
    pub pass: Rational,
    /// Next lattice point, where certification fails.
    #[serde(with = "serde_str")]
    pub fail: Rational,
    pub evaluations: usize,
    /// λ values at which the condition was re-verified below `pass`.
    pub rechecked: usize,
}

impl GammaBracket {
    pub fn width(&self) -> Rational {
        &self.fail - &self.pass
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        Interval::from_rational(&self.pass, prec).hull(&Interval::from_rational(&self.fail, prec))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("theorem-1 certification fails at the base point, so no positive γ is certifiable")]
    InfeasibleAtZero,
    #[error("condition passes at λ = {pass} but fails at smaller λ = {fail}")]
    NonMonotone { pass: String, fail: String },
    #[error("condition still holds at λ = 1000")]
    Unbounded,
}

fn gamma_condition(p: &ProofParams, mode: &GammaMode, j: u64, prec: u32) -> bool {
    let lambda = Rational::new(j.into(), GAMMA_DENOMINATOR.into());
    let p = p.with_lambda(lambda);
    match mode {
        GammaMode::Sharp => certify_point(&p, Theorem::Two, prec).passed,
        GammaMode::Threshold { bound } => {
            let eta = crate::pinch_coefficients::eta_lambda(&p, prec);
            Verdict::evaluate(REF_ETA, eta, Relation::Le, bound.clone()).passed()
        }
    }
}

/// Largest `λ = j/10⁹` for which the mode's condition is certified, by
/// doubling then bisection. The pass/fail pattern along the trace plus
/// evenly spaced re-checks must be monotone.
pub fn gamma_max(p: &ProofParams, mode: &GammaMode, prec: u32) -> Result<GammaBracket, GammaError> {
    if !certify_point(p, Theorem::One, prec).passed {
        return Err(GammaError::InfeasibleAtZero);
    }
    let mut trace: Vec<(u64, bool)> = vec![(0, true)];
    let eval = |j: u64, trace: &mut Vec<(u64, bool)>| {
        let ok = gamma_condition(p, mode, j, prec);
        trace.push((j, ok));
        ok
    };
    let (mut lo, mut hi) = (0u64, 1u64);
    while eval(hi, &mut trace) {
        lo = hi;
        if hi >= GAMMA_CAP {
            return Err(GammaError::Unbounded);
        }
        hi = (hi * 2).min(GAMMA_CAP);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if eval(mid, &mut trace) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut rechecked = 0;
    if lo > 0 {
        for i in 1..=RECHECK_SAMPLES {
            let j = lo * i / RECHECK_SAMPLES;
            if j > 0 {
                eval(j, &mut trace);
                rechecked += 1;
            }
        }
    }
    trace.sort_unstable();
    let first_fail = trace.iter().find(|t| !t.1).map(|t| t.0);
    let last_pass = trace.iter().rev().find(|t| t.1).map(|t| t.0);
    if let (Some(f), Some(ps)) = (first_fail, last_pass) {
        if f < ps {
            let as_str = |j: u64| format!("{j}/{GAMMA_DENOMINATOR}");
            return Err(GammaError::NonMonotone {
                pass: as_str(ps),
                fail: as_str(f),
            });
        }
    }
    let den = int(GAMMA_DENOMINATOR);
    Ok(GammaBracket {
        mode: mode.clone(),
        pass: Rational::from_integer(lo.into()) / &den,
        fail: Rational::from_integer(hi.into()) / &den,
        evaluations: trace.len() - 1,
        rechecked,
    })
}
