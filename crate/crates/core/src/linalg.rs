//! Dense symmetric-matrix support: validated covariance matrices, the
//! leading eigenpair by power iteration, and a cyclic Jacobi
//! eigendecomposition used for definiteness checks.

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const DEFINITENESS_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-10;

const POWER_MAX_ITERS: usize = 10_000;
const POWER_RAYLEIGH_TOL: f64 = 1e-13;
const POWER_RESIDUAL_TOL: f64 = 1e-12;
const POWER_ACCEPT_RESIDUAL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Symmetric positive-definite matrix, stored row-major.
///
/// The full Jacobi spectrum is computed once at construction; it backs the
/// definiteness check and lets the power iteration recognize when it has
/// settled on a subdominant eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    dim: usize,
    entries: Vec<f64>,
    // descending
    spectrum: Vec<f64>,
}

impl CovarianceMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut entries = entries;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let upper = entries[i * dim + j];
                let lower = entries[j * dim + i];
                if (upper - lower).abs() > SYMMETRY_TOL * upper.abs().max(1.0) {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        upper,
                        lower,
                    });
                }
                let avg = 0.5 * (upper + lower);
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg;
            }
        }

        let mut spectrum = symmetric_eigen(dim, &entries).values;
        spectrum.sort_by(|a, b| b.total_cmp(a));
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i]).sum();
        let min = *spectrum.last().expect("dim > 0");
        if trace.is_nan() || trace <= 0.0 || min <= DEFINITENESS_TOL * trace {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }

        Ok(Self {
            dim,
            entries,
            spectrum,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = *d;
        }
        Self::new(n, entries)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks_exact(self.dim)
            .map(|row| dot(row, v))
            .collect()
    }

    /// `dᵀ R d` for a unit direction `d`: the variance of the projection of
    /// the parameter onto `d`.
    pub fn quadratic_form(&self, d: &[f64]) -> Result<f64> {
        if d.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d.len(),
            });
        }
        let norm = norm(d);
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(dot(d, &self.mul_vec(d)))
    }

    pub fn leading_eigenpair(&self) -> Result<EigenPair> {
        let n = self.dim;
        let lambda_max = self.spectrum[0];
        let degenerate = n > 1 && self.spectrum[1] >= lambda_max * (1.0 - 1e-10);

        // A repeated leading eigenvalue makes the eigenvector a free choice.
        // Starting from e1 picks the direction of e1 projected onto the
        // dominant eigenspace, which is e1 itself for isotropic blocks.
        let mut starts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        if !degenerate {
            starts.push(vec![1.0 / (n as f64).sqrt(); n]);
        }
        starts.extend((0..n).map(|k| basis(n, k)));

        let mut last_err = Error::NotConverged {
            iterations: 0,
            residual: f64::INFINITY,
        };
        for start in &starts {
            match self.power_iterate(start) {
                Ok(pair) if pair.value >= lambda_max * (1.0 - 1e-8) => return Ok(pair),
                // settled on a subdominant eigenvector: start was orthogonal
                Ok(_) => continue,
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }

    /// Power iteration from an explicit start vector. Does not check the
    /// result against the dominant eigenvalue.
    pub fn power_iterate(&self, start: &[f64]) -> Result<EigenPair> {
        if start.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: start.len(),
            });
        }
        let scale = self.frobenius_norm();
        let start_norm = norm(start);
        if start_norm == 0.0 || !start_norm.is_finite() {
            return Err(Error::InvalidArgument("zero start vector".into()));
        }
        let mut v: Vec<f64> = start.iter().map(|x| x / start_norm).collect();
        let mut prev = f64::NAN;
        let mut residual = f64::INFINITY;

        for iter in 1..=POWER_MAX_ITERS {
            let w = self.mul_vec(&v);
            let lambda = dot(&v, &w);
            residual = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| (wi - lambda * vi).powi(2))
                .sum::<f64>()
                .sqrt();

            let settled = (lambda - prev).abs() < POWER_RAYLEIGH_TOL * lambda.abs();
            if residual <= POWER_RESIDUAL_TOL * scale
                || (settled && residual <= POWER_ACCEPT_RESIDUAL * scale)
            {
                return Ok(EigenPair::normalized(lambda, v));
            }

            let w_norm = norm(&w);
            if w_norm == 0.0 {
                return Err(Error::NotConverged {
                    iterations: iter,
                    residual,
                });
            }
            v = w.into_iter().map(|x| x / w_norm).collect();
            prev = lambda;
        }
        Err(Error::NotConverged {
            iterations: POWER_MAX_ITERS,
            residual,
        })
    }

    /// Lower-triangular Cholesky factor, row-major, without pivoting.
    pub fn cholesky(&self) -> Result<Vec<f64>> {
        let n = self.dim;
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::NotPositiveDefinite {
                            min_eigenvalue: sum,
                        });
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(l)
    }
}

/// Largest eigenvalue of a covariance matrix and its unit eigenvector.
///
/// The vector's first component with magnitude above `1e-12` is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl EigenPair {
    fn normalized(value: f64, mut vector: Vec<f64>) -> Self {
        let n = norm(&vector);
        vector.iter_mut().for_each(|x| *x /= n);
        normalize_sign(&mut vector);
        Self { value, vector }
    }
}

/// Flips `v` so its first non-negligible component is positive.
pub fn normalize_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Unsorted eigenvalues.
    pub values: Vec<f64>,
    /// Row-major `n×n`; column `k` is the eigenvector for `values[k]`.
    pub vectors: Vec<f64>,
}

/// Cyclic Jacobi rotations on a row-major symmetric matrix.
pub fn symmetric_eigen(n: usize, matrix: &[f64]) -> SymmetricEigen {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-3 * f64::EPSILON * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
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

    SymmetricEigen {
        values: (0..n).map(|i| a[i * n + i]).collect(),
        vectors: v,
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn basis(n: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[k] = 1.0;
    e
}
