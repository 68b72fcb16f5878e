//! Reference implementations shared by the integration tests. None of this
//! calls into the library, so it can serve as an independent oracle.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson over unit-width panels so that narrow peaks inside a
/// long interval are never skipped; the tolerance is shared across panels.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let panels = ((b - a).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == panels { b } else { lo + h };
            simpson(f, lo, hi, tol / panels as f64)
        })
        .sum()
}

pub const QUAD_TOL: f64 = 1e-11;
const TAIL: f64 = 40.0;

fn phi(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// `Φ(χ)` from quadrature of the density over the shorter side.
pub fn cdf(chi: f64) -> f64 {
    if chi <= 0.0 {
        integrate(&phi, chi - TAIL, chi, QUAD_TOL)
    } else {
        1.0 - integrate(&phi, chi, chi + TAIL, QUAD_TOL)
    }
}

/// `E[Z | Z > χ]` for standard `Z`, with the density rescaled to stay O(1).
fn std_trunc_upper(chi: f64) -> f64 {
    let m = chi.max(0.0);
    let w = |z: f64| (-0.5 * (z * z - m * m)).exp();
    let num = integrate(&|z| z * w(z), chi, chi + TAIL, QUAD_TOL);
    let den = integrate(&w, chi, chi + TAIL, QUAD_TOL);
    num / den
}

pub fn trunc_mean_upper(mu: f64, sigma: f64, x: f64) -> f64 {
    mu + sigma * std_trunc_upper((x - mu) / sigma)
}

pub fn trunc_mean_lower(mu: f64, sigma: f64, x: f64) -> f64 {
    let chi = (x - mu) / sigma;
    let m = (-chi).max(0.0);
    let w = |z: f64| (-0.5 * (z * z - m * m)).exp();
    let num = integrate(&|z| z * w(z), chi - TAIL, chi, QUAD_TOL);
    let den = integrate(&w, chi - TAIL, chi, QUAD_TOL);
    mu + sigma * num / den
}

/// `E|Y|` for `Y ~ N(μ, σ²)`, split at the kink of `|·|`.
pub fn folded_abs_mean(mu: f64, sigma: f64) -> f64 {
    let f = |z: f64| (mu + sigma * z).abs() * phi(z);
    let kink = (-mu / sigma).clamp(-TAIL, TAIL);
    integrate(&f, -TAIL, kink, QUAD_TOL) + integrate(&f, kink, TAIL, QUAD_TOL)
}

/// Cyclic Jacobi eigendecomposition of a symmetric row-major matrix.
/// Returns eigenvalues in descending order and eigenvectors as columns
/// stored per eigenvalue.
pub fn jacobi_eigen(n: usize, matrix: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = matrix.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off.sqrt() <= 1e-20 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
        .collect();
    (values, vectors)
}

/// Random SPD matrix `A·Aᵀ + 0.1·I` with standard-normal-ish entries.
pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let a: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            r[i * n + j] = (0..n).map(|k| a[i * n + k] * a[j * n + k]).sum();
        }
        r[i * n + i] += 0.1;
    }
    // exact symmetry
    for i in 0..n {
        for j in 0..i {
            r[i * n + j] = r[j * n + i];
        }
    }
    r
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return d.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Aligns the sign of `v` with `reference`.
pub fn align(v: &[f64], reference: &[f64]) -> Vec<f64> {
    let d: f64 = v.iter().zip(reference).map(|(a, b)| a * b).sum();
    if d < 0.0 {
        v.iter().map(|x| -x).collect()
    } else {
        v.to_vec()
    }
}
