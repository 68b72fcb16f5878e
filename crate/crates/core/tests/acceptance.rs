//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! summary is always printed; exits non-zero if any criterion fails.

#![allow(clippy::needless_range_loop)]

mod common;

use std::f64::consts::PI;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use altruist::altruism::{f_ht, solve_hierarchical_constant, verify_root_uniqueness};
use altruist::cli::{example_1d_belief, example_2d_belief, trimodal_solutions};
use altruist::closed_form::{
    analytic_cost, heterarchical_pair, hierarchical_pair, reduction_bounds, Branch,
};
use altruist::distributions::{sample_gaussian, sample_mixture};
use altruist::empirical::{
    assign, lloyd_heterarchical, lloyd_hierarchical, mc_cost, mc_cost_points, CostSurface1d, Region,
};
use altruist::gaussian::{std_cdf, ScalarGaussian};
use altruist::{
    CostKind, CovarianceMatrix, EstimatorPair, GaussianBelief, LloydConfig, MixtureSpec, SampleSet,
};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn near(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    check(
        (got - want).abs() <= tol,
        format!("{what}: {got:.6} vs {want} (tol {tol:e})"),
    )
}

fn within_runtime(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("runtime {elapsed:.2?} exceeds {limit:?}"),
    )
}

/// The unordered pair `{p, q}` matches `{a, b}` coordinate-wise within `tol`.
fn same_pair(p: &EstimatorPair, a: &[f64], b: &[f64], tol: f64) -> bool {
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(u, v)| (u - v).abs() <= tol);
    (close(p.first(), a) && close(p.second(), b)) || (close(p.first(), b) && close(p.second(), a))
}

fn c1_constants() -> Outcome {
    let mut times = Vec::new();
    let mut c = None;
    for _ in 0..11 {
        let t = Instant::now();
        c = Some(solve_hierarchical_constant().map_err(|e| e.to_string())?);
        times.push(t.elapsed());
    }
    times.sort();
    let c = c.unwrap();
    near(c.w_hi, 1.224, 5e-4, "w_hi")?;
    near(c.c_hi, 0.405, 5e-4, "c_hi")?;
    within_runtime(times[5], Duration::from_millis(1))?;
    Ok(format!(
        "w_hi {:.6}, c_hi {:.6}, median solve {:.1?} (first {:.1?})",
        c.w_hi, c.c_hi, times[5], times[0]
    ))
}

fn c2_scalar_example() -> Outcome {
    let start = Instant::now();
    let b = example_1d_belief();
    let err = |e: altruist::Error| e.to_string();
    let het = heterarchical_pair(&b).map_err(err)?;
    check(
        same_pair(&het, &[7.979], &[-7.979], 1e-3),
        format!("heterarchical pair {het:?}"),
    )?;
    for branch in [Branch::Plus, Branch::Minus] {
        let hi = hierarchical_pair(&b, branch).map_err(err)?;
        near(hi.first()[0], 0.0, 0.0, "hierarchical first")?;
        near(hi.second()[0].abs(), 12.240, 1e-3, "hierarchical second")?;
    }
    let j_ht = analytic_cost(&b, CostKind::Heterarchical)
        .map_err(err)?
        .j_value;
    let j_hi = analytic_cost(&b, CostKind::Hierarchical)
        .map_err(err)?
        .j_value;
    near(j_ht, 36.338, 1e-3, "J_HT")?;
    near(j_hi, 59.5, 0.1, "J_HI")?;

    let samples = sample_gaussian(&b, 1_000_000, 42).map_err(err)?;
    let mc_ht = mc_cost(&samples, &het).map_err(err)?;
    let mc_hi =
        mc_cost(&samples, &hierarchical_pair(&b, Branch::Plus).map_err(err)?).map_err(err)?;
    near(mc_ht.mean / j_ht, 1.0, 0.01, "MC J_HT relative")?;
    near(mc_hi.mean / j_hi, 1.0, 0.01, "MC J_HI relative")?;
    let elapsed = start.elapsed();
    within_runtime(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "J_HT {j_ht:.4} (MC {:.4}), J_HI {j_hi:.4} (MC {:.4}), {elapsed:.2?}",
        mc_ht.mean, mc_hi.mean
    ))
}

fn c3_planar_example() -> Outcome {
    let start = Instant::now();
    let err = |e: altruist::Error| e.to_string();
    let b = example_2d_belief();
    let eig = b.cov().leading_eigenpair().map_err(err)?;
    near(eig.value, 5.5, 1e-10, "lambda_1")?;
    let v = align(&eig.vector, &[-0.9487, -0.3162]);
    near(v[0], -0.9487, 1e-3, "v_0")?;
    near(v[1], -0.3162, 1e-3, "v_1")?;

    let het = heterarchical_pair(&b).map_err(err)?;
    check(
        same_pair(&het, &[-1.775, -0.592], &[1.775, 0.592], 2e-3),
        format!("heterarchical pair {:?} / {:?}", het.first(), het.second()),
    )?;
    let plus = hierarchical_pair(&b, Branch::Plus).map_err(err)?;
    let minus = hierarchical_pair(&b, Branch::Minus).map_err(err)?;
    for p in [&plus, &minus] {
        check(
            p.first() == [0.0, 0.0],
            "hierarchical first is not the mean",
        )?;
    }
    let seconds = [plus.second().to_vec(), minus.second().to_vec()];
    let expected = [[2.723, 0.908], [-2.723, -0.908]];
    for e in expected {
        check(
            seconds
                .iter()
                .any(|s| (s[0] - e[0]).abs() <= 2e-3 && (s[1] - e[1]).abs() <= 2e-3),
            format!("no hierarchical branch near {e:?}: {seconds:?}"),
        )?;
    }

    let samples = sample_gaussian(&b, 1_000_000, 42).map_err(err)?;
    let mc_ht = mc_cost(&samples, &het).map_err(err)?.mean;
    let mc_hi = mc_cost(&samples, &plus).map_err(err)?.mean;
    let analytic_ht = 6.0 - 2.0 / PI * 5.5;
    near(analytic_ht, 2.4986, 1e-4, "analytic J_HT")?;
    near(mc_ht / 2.4986, 1.0, 0.01, "MC J_HT relative")?;
    near(mc_hi / 3.773, 1.0, 0.015, "MC J_HI relative")?;
    let elapsed = start.elapsed();
    within_runtime(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "lambda_1 {:.12}, MC J_HT {mc_ht:.4}, MC J_HI {mc_hi:.4}, {elapsed:.2?}",
        eig.value
    ))
}

fn c4_trimodal() -> Outcome {
    let start = Instant::now();
    let samples =
        sample_mixture(&MixtureSpec::trimodal(), 99_999, 42).map_err(|e| e.to_string())?;
    let cfg = LloydConfig::default();
    check(cfg.restarts == 8, "default restarts is not 8")?;
    let sol = trimodal_solutions(&samples, &cfg).map_err(|e| e.to_string())?;
    let pair = &sol.best.pair;
    let (lo, hi) = {
        let (a, b) = (pair.first()[0], pair.second()[0]);
        (a.min(b), a.max(b))
    };
    let lands = ((lo + 10.0).abs() <= 0.2 && (hi - 4.98).abs() <= 0.2)
        || ((lo + 4.98).abs() <= 0.2 && (hi - 10.0).abs() <= 0.2);
    check(lands, format!("Lloyd solution {{{lo:.3}, {hi:.3}}}"))?;

    let m = &sol.mirror.pair;
    let (mlo, mhi) = {
        let (a, b) = (m.first()[0], m.second()[0]);
        (a.min(b), a.max(b))
    };
    check(
        (mlo + hi).abs() <= 0.4 && (mhi + lo).abs() <= 0.4,
        format!("mirror set {{{mlo:.3}, {mhi:.3}}} is not the reflection"),
    )?;
    let diff = (sol.best.mc_cost - sol.mirror.mc_cost).abs();
    let se = sol.combined_stderr();
    check(
        diff <= 2.0 * se,
        format!("cost gap {diff:.4} > 2 x {se:.4}"),
    )?;

    let boundary = 0.5 * (lo + hi);
    let mean = samples.mean()[0];
    check(
        (boundary - mean).abs() > 1.0,
        format!("boundary {boundary:.3} too close to sample mean {mean:.3}"),
    )?;
    let elapsed = start.elapsed();
    within_runtime(elapsed, Duration::from_secs(20))?;
    Ok(format!(
        "{{{lo:.3}, {hi:.3}}} and {{{mlo:.3}, {mhi:.3}}}, costs {:.4} / {:.4} (2se {:.4}), boundary {boundary:.3} vs mean {mean:.3}, {elapsed:.2?}",
        sol.best.mc_cost,
        sol.mirror.mc_cost,
        2.0 * se
    ))
}

/// Largest deviation of a Lloyd estimate from the closed form, in standard
/// errors, matching the unordered pair.
fn lloyd_z(got: &altruist::LloydResult, a: &[f64], b: &[f64], allow_swap: bool) -> f64 {
    let z = |x: &[f64], want: &[f64], se: &[f64]| {
        x.iter()
            .zip(want)
            .zip(se)
            .map(|((g, w), s)| (g - w).abs() / s)
            .fold(0.0, f64::max)
    };
    let p = &got.pair;
    let direct = z(p.first(), a, &got.stderr_first).max(z(p.second(), b, &got.stderr_second));
    if !allow_swap {
        return direct;
    }
    let swapped = z(p.first(), b, &got.stderr_first).max(z(p.second(), a, &got.stderr_second));
    direct.min(swapped)
}

fn c5_lloyd_matches_closed_form() -> Outcome {
    let err = |e: altruist::Error| e.to_string();
    let cfg = LloydConfig::default();
    let mut lines = Vec::new();
    for (name, belief) in [("1-D", example_1d_belief()), ("2-D", example_2d_belief())] {
        let samples = sample_gaussian(&belief, 100_000, 7).map_err(err)?;

        let ht = lloyd_heterarchical(&samples, &cfg).map_err(err)?;
        check(
            ht.converged,
            format!("{name} heterarchical Lloyd did not converge"),
        )?;
        let cf = heterarchical_pair(&belief).map_err(err)?;
        let z_ht = lloyd_z(&ht, cf.first(), cf.second(), true);
        check(
            z_ht <= 4.0,
            format!("{name} heterarchical off by {z_ht:.2} se"),
        )?;

        let hi = lloyd_hierarchical(&samples, &cfg).map_err(err)?;
        check(
            hi.converged,
            format!("{name} hierarchical Lloyd did not converge"),
        )?;
        let z_hi = [Branch::Plus, Branch::Minus]
            .into_iter()
            .map(|br| {
                let cf = hierarchical_pair(&belief, br).unwrap();
                lloyd_z(&hi, cf.first(), cf.second(), false)
            })
            .fold(f64::INFINITY, f64::min);
        check(
            z_hi <= 4.0,
            format!("{name} hierarchical off by {z_hi:.2} se"),
        )?;
        lines.push(format!("{name}: HT {z_ht:.2} se, HI {z_hi:.2} se"));
    }
    Ok(lines.join("; "))
}

fn c6_root_structure() -> Outcome {
    let scan = verify_root_uniqueness(1e-3, 10.0).map_err(|e| e.to_string())?;
    check(
        scan.f_ht_negative.passed,
        format!("f_ht scan {:?}", scan.f_ht_negative),
    )?;
    check(
        scan.g_hi_single_crossing.passed && scan.g_hi_single_crossing.sign_changes.len() == 1,
        format!("g_hi scan {:?}", scan.g_hi_single_crossing),
    )?;
    let root = scan.g_hi_single_crossing.sign_changes[0];
    check(
        root > 0.0 && root < 3f64.sqrt(),
        format!("g_hi crossing at {root}"),
    )?;

    let mut rng = seeded(606);
    let worst = (0..100)
        .map(|_| rng.gen_range(0.0..10.0))
        .map(|chi: f64| (f_ht(chi) + f_ht(-chi)).abs())
        .fold(0.0, f64::max);
    check(worst <= 1e-12, format!("f_ht antisymmetry {worst:e}"))?;
    Ok(format!(
        "f_ht max {:.3e} on (0,10], one g_hi crossing near {root:.3}, antisymmetry {worst:.1e}",
        scan.f_ht_negative.worst_margin
    ))
}

/// Per-coordinate MC checks on one Gaussian belief; returns the worst
/// deviation in standard errors.
fn gaussian_invariants(belief: &GaussianBelief, samples: &SampleSet) -> Result<f64, String> {
    let err = |e: altruist::Error| e.to_string();
    let n = samples.len() as f64;
    let dim = belief.dim();
    let mu = belief.mean();
    let cov = belief.cov();
    let mut worst: f64 = 0.0;
    let mut require = |dev: f64, se: f64, what: String| -> Result<(), String> {
        let z = dev.abs() / se;
        worst = worst.max(z);
        check(z <= 4.0, format!("{what}: {z:.2} se"))
    };

    let het = heterarchical_pair(belief).map_err(err)?;
    let vor = assign(samples, &het).map_err(err)?;
    let p1 = vor.p1;

    // equal split between the heterarchical regions
    require(p1 - 0.5, (0.25 / n).sqrt(), "P(V1)".into())?;

    // P(V1)·a + P(V2)·b recombines to the mean
    for i in 0..dim {
        let (a, b) = (het.first()[i], het.second()[i]);
        let got = p1 * a + (1.0 - p1) * b;
        let se = (p1 * (1.0 - p1) / n).sqrt() * (a - b).abs();
        require(got - mu[i], se, format!("MMSE identity, axis {i}"))?;
    }

    // each heterarchical estimator is the centroid of its own region
    for (region, point) in [(Region::First, het.first()), (Region::Second, het.second())] {
        let members: Vec<&[f64]> = samples
            .iter()
            .zip(&vor.labels)
            .filter(|(_, l)| **l == region)
            .map(|(x, _)| x)
            .collect();
        let m = members.len() as f64;
        for i in 0..dim {
            let mean = members.iter().map(|x| x[i]).sum::<f64>() / m;
            let var = members.iter().map(|x| (x[i] - mean).powi(2)).sum::<f64>() / (m - 1.0);
            require(
                mean - point[i],
                (var / m).sqrt(),
                format!("centroid {region:?}, axis {i}"),
            )?;
        }
    }

    // hierarchical: the pinned first estimator is not a centroid, so the
    // recombination uses the empirical mean of V1 and the analytic second
    let hi = hierarchical_pair(belief, Branch::Plus).map_err(err)?;
    let hv = assign(samples, &hi).map_err(err)?;
    let second: Vec<&[f64]> = samples
        .iter()
        .zip(&hv.labels)
        .filter(|(_, l)| **l == Region::Second)
        .map(|(x, _)| x)
        .collect();
    let m2 = second.len() as f64;
    let all_mean = samples.mean();
    for i in 0..dim {
        let mean2 = second.iter().map(|x| x[i]).sum::<f64>() / m2;
        let var2 = second.iter().map(|x| (x[i] - mean2).powi(2)).sum::<f64>() / (m2 - 1.0);
        // P(V1)·E[θ|V1] + P(V2)·θ̂² = overall mean + P(V2)·(θ̂² − E[θ|V2])
        let recombined = all_mean[i] + (1.0 - hv.p1) * (hi.second()[i] - mean2);
        let se = (cov.get(i, i) / n).sqrt() + (1.0 - hv.p1) * (var2 / m2).sqrt();
        require(
            recombined - mu[i],
            se,
            format!("hierarchical recombination, axis {i}"),
        )?;
    }

    // every estimator is constant given the data, so its error covariance
    // is the sample covariance of θ
    for est in [het.first(), het.second(), hi.first(), hi.second()] {
        let errors: Vec<f64> = samples
            .iter()
            .flat_map(|x| est.iter().zip(x).map(|(e, t)| e - t).collect::<Vec<_>>())
            .collect();
        let errors = SampleSet::new(dim, errors, 0).map_err(err)?;
        let c = errors.covariance();
        for i in 0..dim {
            for j in 0..dim {
                let se = ((cov.get(i, i) * cov.get(j, j) + cov.get(i, j).powi(2)) / n).sqrt();
                require(
                    c[i * dim + j] - cov.get(i, j),
                    se,
                    format!("error covariance ({i},{j})"),
                )?;
            }
        }
    }
    Ok(worst)
}

fn c7_invariants() -> Outcome {
    // truncated and folded moments against quadrature
    let mut worst_quad: f64 = 0.0;
    let mut cases = 0;
    let axis = |lo: f64, hi: f64| (0..10).map(move |k| lo + (hi - lo) * k as f64 / 9.0);
    for mu in axis(-10.0, 10.0) {
        for sigma in axis(0.1, 10.0) {
            let g = ScalarGaussian::new(mu, sigma).map_err(|e| e.to_string())?;
            worst_quad = worst_quad.max((g.folded_abs_mean() - folded_abs_mean(mu, sigma)).abs());
            for x in axis(mu - 5.0 * sigma, mu + 5.0 * sigma) {
                worst_quad = worst_quad
                    .max((g.trunc_mean_upper(x) - trunc_mean_upper(mu, sigma, x)).abs())
                    .max((g.trunc_mean_lower(x) - trunc_mean_lower(mu, sigma, x)).abs())
                    .max((std_cdf((x - mu) / sigma) - cdf((x - mu) / sigma)).abs());
                cases += 1;
            }
        }
    }
    check(cases == 1000, "grid size")?;
    check(
        worst_quad <= 1e-8,
        format!("quadrature deviation {worst_quad:e}"),
    )?;

    // law of total expectation
    let mut rng = seeded(707);
    let mut worst_lte: f64 = 0.0;
    for _ in 0..200 {
        let mu = rng.gen_range(-10.0..10.0);
        let sigma = rng.gen_range(0.1..10.0);
        let x = mu + sigma * rng.gen_range(-5.0..5.0);
        let g = ScalarGaussian::new(mu, sigma).map_err(|e| e.to_string())?;
        let p = std_cdf((x - mu) / sigma);
        let back = p * g.trunc_mean_lower(x) + (1.0 - p) * g.trunc_mean_upper(x);
        worst_lte = worst_lte.max((back - mu).abs());
    }
    check(
        worst_lte <= 1e-9,
        format!("total expectation {worst_lte:e}"),
    )?;

    // MC identities on both examples
    let err = |e: altruist::Error| e.to_string();
    let mut worst_mc: f64 = 0.0;
    for belief in [example_1d_belief(), example_2d_belief()] {
        let samples = sample_gaussian(&belief, 200_000, 77).map_err(err)?;
        worst_mc = worst_mc.max(gaussian_invariants(&belief, &samples)?);
    }

    // cost ordering for random beliefs
    for k in 0..50 {
        let n = 1 + k % 8;
        let cov = CovarianceMatrix::new(n, random_spd(&mut rng, n)).map_err(err)?;
        let mean: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let b = GaussianBelief::new(mean, cov).map_err(err)?;
        let ht = analytic_cost(&b, CostKind::Heterarchical).map_err(err)?;
        let hi = analytic_cost(&b, CostKind::Hierarchical).map_err(err)?;
        check(
            ht.j_value < hi.j_value && hi.j_value < ht.j_ms,
            format!("ordering fails for belief {k}"),
        )?;
    }

    // swap symmetry, bit for bit
    let samples = sample_gaussian(&example_2d_belief(), 10_000, 5).map_err(err)?;
    let line = sample_mixture(&MixtureSpec::trimodal(), 10_000, 5).map_err(err)?;
    let surface = CostSurface1d::new(&line).map_err(err)?;
    for _ in 0..100 {
        let a = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let b = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let ab = mc_cost_points(&samples, &a, &b).map_err(err)?.mean;
        let ba = mc_cost_points(&samples, &b, &a).map_err(err)?.mean;
        check(
            ab.to_bits() == ba.to_bits(),
            "MC cost is not swap symmetric",
        )?;
        let (s, t) = (4.0 * a[0], 4.0 * b[0]);
        check(
            surface.cost(s, t).to_bits() == surface.cost(t, s).to_bits(),
            "1-D surface is not swap symmetric",
        )?;
    }
    Ok(format!(
        "quadrature {worst_quad:.1e} over {cases} cases, total expectation {worst_lte:.1e}, MC identities within {worst_mc:.2} se, ordering and swap symmetry hold"
    ))
}

fn c8_bounds() -> Outcome {
    let err = |e: altruist::Error| e.to_string();
    let c_hi = altruist::constants().c_hi;
    let one = reduction_bounds(1).map_err(err)?;
    near(one.ht_lower, 2.0 / PI, 1e-15, "dim 1 ht_lower")?;
    near(one.ht_upper, 2.0 / PI, 1e-15, "dim 1 ht_upper")?;
    near(one.hi_lower, c_hi, 1e-15, "dim 1 hi_lower")?;
    near(one.hi_upper, c_hi, 1e-15, "dim 1 hi_upper")?;
    let mut prev = one;
    for n in 2..=500 {
        let b = reduction_bounds(n).map_err(err)?;
        check(
            b.ht_lower < prev.ht_lower && b.hi_lower < prev.hi_lower,
            format!("lower bounds not decreasing at dim {n}"),
        )?;
        check(
            b.ht_upper == one.ht_upper && b.hi_upper == one.hi_upper,
            format!("upper bounds change at dim {n}"),
        )?;
        prev = b;
    }
    Ok(format!(
        "dim 1: {:.6} / {:.6}; lower bounds decrease to {:.2e} / {:.2e} at dim 500",
        one.ht_upper, one.hi_upper, prev.ht_lower, prev.hi_lower
    ))
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn c9_determinism() -> Outcome {
    let commands = [
        "example-1d",
        "example-2d",
        "trimodal",
        "bounds",
        "cost-grid",
        "verify",
    ];
    let mut files = 0;
    let start = Instant::now();
    for command in commands {
        let runs: Vec<_> = (0..2)
            .map(|_| {
                let dir = tempfile::tempdir().unwrap();
                let out = Process::new(env!("CARGO_BIN_EXE_altruist"))
                    .args([command, "--out"])
                    .arg(dir.path())
                    .output()
                    .unwrap();
                let stdout = String::from_utf8_lossy(&out.stdout)
                    .replace(&*dir.path().to_string_lossy(), "OUT");
                (out.status.code(), stdout, snapshot(dir.path()))
            })
            .collect();
        check(
            runs[0].0 == Some(0),
            format!("{command} exited with {:?}", runs[0].0),
        )?;
        check(
            runs[0] == runs[1],
            format!("{command} output differs between runs"),
        )?;
        files += runs[0].2.len();
    }
    Ok(format!(
        "{} commands, {files} files byte-identical across two runs, {:.1?}",
        commands.len(),
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("constants", c1_constants),
        ("1-D Gaussian example", c2_scalar_example),
        ("2-D Gaussian example", c3_planar_example),
        ("trimodal mixture", c4_trimodal),
        ("Lloyd vs closed form", c5_lloyd_matches_closed_form),
        ("root structure", c6_root_structure),
        ("invariant suite", c7_invariants),
        ("reduction bounds", c8_bounds),
        ("CLI determinism", c9_determinism),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let result =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
