//! Integer kernels for the tensor sums. Inputs are cleared to a common
//! denominator first; each kernel runs only when an a-priori magnitude bound
//! keeps every partial sum inside `i128`, and callers fall back to rational
//! arithmetic otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exact_arith::Rational;

/// Partial sums stay below this bound (about 2^116).
const LIMIT: f64 = 1e35;

/// Numerators over the common denominator `den`.
pub(crate) struct Scaled {
    pub den: BigInt,
    pub num: Vec<i128>,
    pub max_abs: f64,
}

pub(crate) fn scale(values: &[Rational]) -> Option<Scaled> {
    let mut den = BigInt::one();
    for v in values {
        den = den.lcm(v.denom());
    }
    let mut num = Vec::with_capacity(values.len());
    let mut max_abs = 0f64;
    for v in values {
        let x = (v.numer() * (&den / v.denom())).to_i64()?;
        max_abs = max_abs.max((x as f64).abs());
        num.push(x as i128);
    }
    Some(Scaled { den, num, max_abs })
}

pub(crate) fn ratio(num: i128, den: &BigInt) -> Rational {
    Rational::new(BigInt::from(num), den.clone())
}

fn fits(n: usize, magnitude: f64) -> bool {
    (n as f64).powi(5) * magnitude < LIMIT
}

/// `(B₁, B₂, C)` numerators from dense index sums; `B₁`, `B₂` are over
/// `Lg²Lμ²`, `C` over `Lg²Lμ`.
pub(crate) fn general(n: usize, mu: &Scaled, g: &Scaled) -> Option<(i128, i128, i128)> {
    if !fits(n, g.max_abs.powi(2) * mu.max_abs.powi(2).max(1.0)) {
        return None;
    }
    let gi = |i: usize, j: usize, k: usize| g.num[(i * n + j) * n + k];
    let mut a = vec![0i128; n * n];
    for i in 0..n {
        a[i * n + i] = mu.num[i];
    }
    let mut m = vec![0i128; n * n];
    for k in 0..n {
        for l in 0..n {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += gi(i, j, k) * gi(i, j, l);
                }
            }
            m[k * n + l] = s;
        }
    }
    let mut b1 = 0;
    let mut c = 0;
    for k in 0..n {
        for l in 0..n {
            let a2: i128 = (0..n).map(|x| a[k * n + x] * a[x * n + l]).sum();
            b1 += m[k * n + l] * a2;
            c += m[k * n + l] * a[k * n + l];
        }
    }
    let mut b2 = 0;
    for j in 0..n {
        for k in 0..n {
            for mm in 0..n {
                let p: i128 = (0..n).map(|i| gi(i, j, k) * a[i * n + mm]).sum();
                if p == 0 {
                    continue;
                }
                let r: i128 = (0..n).map(|l| gi(k, l, mm) * a[j * n + l]).sum();
                b2 += p * r;
            }
        }
    }
    Some((b1, b2, c))
}

/// Same numerators from the diagonal-frame formulas.
pub(crate) fn diagonal(n: usize, mu: &Scaled, g: &Scaled) -> Option<(i128, i128, i128)> {
    if !fits(n, g.max_abs.powi(2) * mu.max_abs.powi(2).max(1.0)) {
        return None;
    }
    let (mut b1, mut b2, mut c) = (0i128, 0i128, 0i128);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let h = g.num[(i * n + j) * n + k];
                if h == 0 {
                    continue;
                }
                let h2 = h * h;
                b1 += h2 * mu.num[k] * mu.num[k];
                b2 += h2 * mu.num[i] * mu.num[j];
                c += h2 * mu.num[k];
            }
        }
    }
    Some((b1, b2, c))
}

/// `(16Σh², 16Σu², Σ_{i≠j}(h_ijij - h_jiji)²)` numerators over `L²`, where
/// `4u` is the cyclic sum.
pub(crate) fn symmetrization(n: usize, h: &Scaled) -> Option<(i128, i128, i128)> {
    if !fits(n, 16.0 * h.max_abs.powi(2)) {
        return None;
    }
    let at = |i: usize, j: usize, k: usize, l: usize| h.num[((i * n + j) * n + k) * n + l];
    let (mut sh, mut su) = (0i128, 0i128);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let x = at(i, j, k, l);
                    sh += x * x;
                    let u4 = x + at(l, i, j, k) + at(k, l, i, j) + at(j, k, l, i);
                    su += u4 * u4;
                }
            }
        }
    }
    let mut skew = 0i128;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let t = at(i, j, i, j) - at(j, i, j, i);
                skew += t * t;
            }
        }
    }
    Some((16 * sh, su, skew))
}
