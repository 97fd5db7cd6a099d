//! Acceptance suite: seven criteria, one PASS/FAIL line each, run in order so
//! the timings are not skewed by concurrent tests.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use pinchcert::certify_optimize::{
    certify_point, gamma_max, optimize_delta, GammaMode, SearchConfig, Theorem, A_NEGATIVE, FINAL_T1, REF_B, REF_D,
    THETA_POSITIVE,
};
use pinchcert::exact_arith::{int, parse_rational, rat, Interval, QuadraticNumber, Rational, DEFAULT_PRECISION};
use pinchcert::exec::Execution;
use pinchcert::model_geometry::{check_models, classify_admissible, make_model, norm_s_k, residual, Equation};
use pinchcert::pinch_coefficients::{beta_alpha, eta_lambda, ProofParams};
use pinchcert::spectral_identities::suites::{
    c_bound, contraction_routes, dx_lemma, power_sum_identity, symmetrization, SuiteConfig, SuiteReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// 50-digit reference values computed independently with mpmath.
const NEG_B_OVER_D: &str = "0.056341669643059740437362618654413351594148686947327";
const GAMMA_SHARP: &str = "0.00034309098070313697673226878825560213269964343063312";
const GAMMA_THRESHOLD: &str = "0.00027191078581679401722171864624307069464620251522775";

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok: cond, detail: detail.into() }
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn width_ok(x: &Interval, tol: &Rational) -> bool {
    x.width() <= *tol
}

fn criterion_1() -> Outcome {
    let c = certify_point(&ProofParams::reference_point(), Theorem::One, DEFAULT_PRECISION);
    let tol = rat(1, 1_000_000);
    for name in [THETA_POSITIVE, A_NEGATIVE, REF_B, REF_D] {
        let v = c.verdict(name).unwrap();
        if !v.passed() {
            return check(false, format!("{name} not certified: {}", v.enclosure));
        }
        if !width_ok(&v.enclosure, &tol) {
            return check(false, format!("{name} enclosure wider than 1e-6"));
        }
    }
    let k = &c.coefficients;
    pass(format!(
        "θ = {}, A = {}, B = {}, D = {}",
        k.theta.approx(9),
        k.coef_gradient_pinch.approx(9),
        k.coef_constant.approx(9),
        k.coef_delta_slope.approx(9)
    ))
}

fn criterion_2() -> Outcome {
    let c = certify_point(&ProofParams::reference_point(), Theorem::One, DEFAULT_PRECISION);
    let final_ok = c.verdict(FINAL_T1).unwrap().passed() && c.verdict(A_NEGATIVE).unwrap().passed();
    let Some(sup) = c.delta_sup.clone() else {
        return check(false, "delta_sup missing");
    };
    let target = q("0.056342");
    let tol = rat(1, 100_000);
    let lo = sup.lo().to_rational();
    let hi = sup.hi().to_rational();
    let near = (&lo - &target).abs() <= tol && (&hi - &target).abs() <= tol;
    let oracle = sup.contains_rational(&q(NEG_B_OVER_D)) || (sup.midpoint() - q(NEG_B_OVER_D)).abs() < rat(1, 10i64.pow(15));
    check(
        final_ok && near && oracle && lo > rat(1, 18),
        format!("B+D/18 < 0 certified: {final_ok}; −B/D ∈ {sup}"),
    )
}

fn criterion_3() -> Outcome {
    let p = ProofParams::reference_point();
    let one = certify_point(&p, Theorem::One, DEFAULT_PRECISION);
    let two = certify_point(&p, Theorem::Two, DEFAULT_PRECISION);
    let verbatim = one.verdicts.len() == two.verdicts.len()
        && one
            .verdicts
            .iter()
            .zip(&two.verdicts)
            .all(|(a, b)| a.enclosure == b.enclosure && a.outcome == b.outcome)
        && one.reference_checks[..2] == two.reference_checks[..2]
        && two.coefficients.eta.is_point()
        && two.coefficients.eta.lo().is_zero();
    if !verbatim {
        return check(false, "λ = 0 does not reproduce the self-shrinker certificate");
    }
    let sharp = match gamma_max(&p, &GammaMode::Sharp, DEFAULT_PRECISION) {
        Ok(b) => b,
        Err(e) => return check(false, format!("sharp mode: {e}")),
    };
    let thr = match gamma_max(&p, &GammaMode::reference_threshold(), DEFAULT_PRECISION) {
        Ok(b) => b,
        Err(e) => return check(false, format!("threshold mode: {e}")),
    };
    let tight = sharp.width() <= rat(1, 1_000_000_000) && sharp.pass.is_positive();
    let order = sharp.pass > rat(1, 100_000) && sharp.pass < rat(1, 1_000);
    let brackets_oracle = sharp.pass <= q(GAMMA_SHARP) && q(GAMMA_SHARP) < sharp.fail;
    let thr_oracle = thr.pass <= q(GAMMA_THRESHOLD) && q(GAMMA_THRESHOLD) < thr.fail;
    // η ≤ 0.005 on a fine sample of the certified threshold range.
    let samples = 200;
    let bound = rat(1, 200);
    let eta_ok = (0..=samples).all(|i| {
        let l = &thr.pass * rat(i, samples);
        eta_lambda(&p.with_lambda(l), DEFAULT_PRECISION).certainly_at_most(&bound)
    });
    check(
        tight && order && brackets_oracle && thr_oracle && eta_ok && thr.pass <= sharp.pass,
        format!(
            "γ sharp ∈ [{}, {}), γ threshold ∈ [{}, {}), η ≤ 0.005 on {} samples: {eta_ok}",
            pinchcert::exact_arith::rational::to_decimal(&sharp.pass, 9),
            pinchcert::exact_arith::rational::to_decimal(&sharp.fail, 9),
            pinchcert::exact_arith::rational::to_decimal(&thr.pass, 9),
            pinchcert::exact_arith::rational::to_decimal(&thr.fail, 9),
            samples + 1
        ),
    )
}

fn criterion_4() -> (Outcome, Duration) {
    let cfg = SearchConfig::default();
    let start = Instant::now();
    let first = optimize_delta(&cfg, &rat(1, 18), DEFAULT_PRECISION, Execution::Parallel);
    let elapsed = start.elapsed();
    let second = optimize_delta(&cfg, &rat(1, 18), DEFAULT_PRECISION, Execution::Parallel);
    let (a, b) = match (first, second) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return (check(false, e.to_string()), elapsed),
    };
    let identical = serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap();
    let sup = a.best.delta_sup.clone().unwrap();
    let reference = certify_point(&ProofParams::reference_point(), Theorem::One, DEFAULT_PRECISION);
    let beats_reference = sup.lo() >= reference.delta_sup.as_ref().unwrap().lo();
    let out = check(
        sup.lo().to_rational() >= rat(1, 18) && identical && beats_reference && a.best.passed(),
        format!(
            "best −B/D ∈ {sup} at σ={}, ε={}, κ={}; identical reruns: {identical}",
            pinchcert::exact_arith::format_rational(&a.best.params.sigma),
            pinchcert::exact_arith::format_rational(&a.best.params.epsilon),
            pinchcert::exact_arith::format_rational(&a.best.params.kappa),
        ),
    );
    (out, elapsed)
}

fn summarize(reports: &[SuiteReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{} {}/{} failed", r.name, r.failures, r.trials))
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_5() -> Outcome {
    let cfg = SuiteConfig::new(10_000, 0);
    let reports = vec![power_sum_identity(&cfg), contraction_routes(&cfg), c_bound(&cfg), symmetrization(&cfg)];
    let ok = reports.iter().all(|r| r.trials == 10_000 && r.failures == 0 && r.indeterminate == 0);
    check(ok, summarize(&reports))
}

fn criterion_6() -> Outcome {
    let r = dx_lemma(&SuiteConfig::new(10_000, 0));
    check(
        r.trials == 10_000 && r.failures == 0,
        format!(
            "{} trials, {} counterexamples, {} indeterminate at 1024 bits, min relative slack {}",
            r.trials,
            r.failures,
            r.indeterminate,
            r.notes.get("min_relative_slack").map_or("n/a", String::as_str)
        ),
    )
}

fn criterion_7() -> Outcome {
    // (c) and (d) at the named values.
    let half = classify_admissible(&rat(1, 2), 5).unwrap();
    let admissible: Vec<usize> = half.iter().filter(|v| v.admissible).map(|v| v.k).collect();
    let radius = QuadraticNumber::new(rat(-1, 4), rat(1, 4), int(17)).unwrap();
    let c_ok = admissible == vec![1] && half[0].radius == radius;
    let d_ok = classify_admissible(&rat(-1, 2), 5).unwrap().iter().all(|v| !v.admissible);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for t in 0..1000 {
        let lambda = if t % 50 == 0 {
            Rational::zero()
        } else {
            rat(rng.random_range(-60..=60), rng.random_range(1..=25))
        };
        let n = rng.random_range(1..=6);
        match lambda.cmp(&Rational::zero()) {
            std::cmp::Ordering::Greater => pos += 1,
            std::cmp::Ordering::Less => neg += 1,
            std::cmp::Ordering::Equal => zero += 1,
        }
        let eq = if lambda.is_zero() { Equation::Shrinker } else { Equation::LambdaHyp };
        for k in 1..=n {
            let m = make_model(&lambda, k, n).unwrap();
            // (a) exact residual
            if !residual(&m, eq).unwrap().is_zero() {
                failures.push(format!("residual λ={lambda} k={k}"));
            }
            // (b) closed form, checked independently against β for k = 1
            match norm_s_k(&m) {
                Ok(s) => {
                    if k == 1 && lambda.is_positive() && s != beta_alpha(&lambda).0 {
                        failures.push(format!("S_1 ≠ β at λ={lambda}"));
                    }
                    // (e)
                    if lambda.is_zero() && s != QuadraticNumber::from(int(1)) {
                        failures.push(format!("|A|² ≠ 1 at λ=0, k={k}"));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
        match check_models(&lambda, n) {
            Ok(c) if c.passed => {}
            Ok(c) => failures.push(format!("model check failed: {c:?}")),
            Err(e) => failures.push(e.to_string()),
        }
    }
    check(
        c_ok && d_ok && failures.is_empty() && pos > 0 && neg > 0 && zero > 0,
        format!(
            "λ=1/2 → k=[1] r=(√17−1)/4: {c_ok}; λ=−1/2 → none: {d_ok}; 1000 random λ ({pos}+, {neg}−, {zero} zero): {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn main() {
    let mut all_ok = true;
    let mut report = |id: u32, label: &str, limit: Duration, run: &mut dyn FnMut() -> (Outcome, Duration)| {
        let (o, elapsed) = run();
        let in_time = elapsed < limit;
        let ok = o.ok && in_time;
        all_ok &= ok;
        println!(
            "criterion {id} [{}] {label}: {} ({:.2?} of {:?} budget{})",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed,
            limit,
            if in_time { "" } else { ", OVER BUDGET" }
        );
    };
    fn timed(f: fn() -> Outcome) -> impl FnMut() -> (Outcome, Duration) {
        move || {
            let t = Instant::now();
            let o = f();
            (o, t.elapsed())
        }
    }
    report(1, "self-shrinker chain at the reference point", Duration::from_secs(1), &mut timed(criterion_1));
    report(2, "pinching gap 1/18 admissible", Duration::from_secs(1), &mut timed(criterion_2));
    report(3, "λ-chain reduction and γ brackets", Duration::from_secs(30), &mut timed(criterion_3));
    report(4, "optimizer over the default box", Duration::from_secs(300), &mut criterion_4);
    report(5, "exact identity suites", Duration::from_secs(120), &mut timed(criterion_5));
    report(6, "imported cubic inequality probe", Duration::from_secs(300), &mut timed(criterion_6));
    report(7, "model classification", Duration::from_secs(30), &mut timed(criterion_7));
    if !all_ok {
        std::process::exit(1);
    }
}
