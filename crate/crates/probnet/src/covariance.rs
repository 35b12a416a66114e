//! Latent covariance structures over the N edge variables: construction,
//! validation, pointwise correlation lookup, and sampling.
//!
//! PowerDecay and Equicorrelated sample in O(N) through closed forms (an
//! AR(1) recursion and a two-coefficient spectral construction); AdditiveNode
//! and DenseExplicit materialize the N x N matrix and factor it once at
//! validation time with a pivot-clamped Cholesky, so exactly-semidefinite
//! matrices are accepted while genuinely indefinite ones are rejected with
//! the offending pivot.

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::pairs;

/// Materialized-dimension cap: N = 1770 is n = 60 in the undirected model.
pub const DEFAULT_DENSE_CAP: usize = 1770;

/// Cholesky pivots may dip this far below zero before the matrix is rejected.
pub const PSD_PIVOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum CovarianceSpec {
    /// Sigma = identity.
    Independent,
    /// sigma_{ts} = sigma0^{|t-s|} over lexicographic latent indices.
    PowerDecay { sigma0: f64 },
    /// All off-diagonals equal rho; PSD iff rho >= -1/(N-1).
    Equicorrelated { rho: f64 },
    /// sigma_{(ij)(kl)} = sigma0 + sigma_i + sigma_j + sigma_k + sigma_l,
    /// with sum_i sigma_i = 0.
    AdditiveNode { sigma0: f64, sigma: Vec<f64> },
    /// Full N x N correlation matrix, row t = latent index t.
    DenseExplicit { matrix: Vec<Vec<f64>> },
}

/// How latent coordinates are enumerated: unordered pairs (undirected model)
/// or row-major ordered pairs (directed extension).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatentLayout {
    Undirected,
    Directed,
}

impl LatentLayout {
    pub fn dim(self, n: usize) -> Result<usize> {
        match self {
            LatentLayout::Undirected => pairs::num_pairs(n),
            LatentLayout::Directed => pairs::num_ordered_pairs(n),
        }
    }
}

/// A spec that has passed validation for a fixed n, holding whatever the
/// sampler needs (closed-form coefficients or a Cholesky factor). Sampling is
/// only reachable through this type, so an unvalidated spec cannot be drawn
/// from by construction.
#[derive(Debug, Clone)]
pub struct ValidatedCov {
    spec: CovarianceSpec,
    n: usize,
    dim: usize,
    layout: LatentLayout,
    sampler: Sampler,
}

#[derive(Debug, Clone)]
enum Sampler {
    Independent,
    PowerDecay { sigma0: f64 },
    /// u = a eps + b (sum eps) 1 reproduces (1-rho) I + rho 1 1^T.
    Equicorrelated { a: f64, b: f64 },
    /// Lower-triangular factor, packed rows: l[i(i+1)/2 + j], j <= i.
    Factor { l: Vec<f64> },
}

impl CovarianceSpec {
    /// Validate for the undirected model with the default dense cap.
    pub fn validate(&self, n: usize) -> Result<ValidatedCov> {
        self.validate_with_cap(n, LatentLayout::Undirected, DEFAULT_DENSE_CAP)
    }

    /// Validate for the directed extension (dimension n(n-1)). Only the
    /// structured variants carry over; AdditiveNode and DenseExplicit are
    /// tied to the unordered-pair enumeration and are rejected.
    pub fn validate_directed(&self, n: usize) -> Result<ValidatedCov> {
        self.validate_with_cap(n, LatentLayout::Directed, DEFAULT_DENSE_CAP)
    }

    pub fn validate_with_cap(
        &self,
        n: usize,
        layout: LatentLayout,
        dense_cap: usize,
    ) -> Result<ValidatedCov> {
        let dim = layout.dim(n)?;
        let sampler = match self {
            CovarianceSpec::Independent => Sampler::Independent,
            CovarianceSpec::PowerDecay { sigma0 } => {
                check_open_unit(*sigma0, "sigma0")?;
                Sampler::PowerDecay { sigma0: *sigma0 }
            }
            CovarianceSpec::Equicorrelated { rho } => {
                check_open_unit(*rho, "rho")?;
                let eig = 1.0 + (dim as f64 - 1.0) * rho;
                if dim > 1 && eig < 0.0 {
                    // Smallest equicorrelation eigenvalue; the Cholesky pivot
                    // that would fail is the last one.
                    return Err(Error::NotPsd {
                        index: dim - 1,
                        pivot: eig,
                    });
                }
                let a = (1.0 - rho).sqrt();
                let b = (eig.max(0.0).sqrt() - a) / dim as f64;
                Sampler::Equicorrelated { a, b }
            }
            CovarianceSpec::AdditiveNode { sigma0, sigma } => {
                if layout == LatentLayout::Directed {
                    return Err(Error::InvalidInput(
                        "AdditiveNode is defined over unordered pairs; not available in directed mode"
                            .into(),
                    ));
                }
                if sigma.len() != n {
                    return Err(Error::InvalidSpec(format!(
                        "AdditiveNode needs one sigma per node: got {} for n = {n}",
                        sigma.len()
                    )));
                }
                let total: f64 = sigma.iter().sum();
                if total.abs() > 1e-12 {
                    return Err(Error::InvalidSpec(format!(
                        "AdditiveNode requires sum sigma_i = 0, got {total:e}"
                    )));
                }
                check_cap(dim, dense_cap)?;
                let matrix = materialize_additive(*sigma0, sigma, n, dim)?;
                let l = clamped_cholesky(&matrix, dim)?;
                Sampler::Factor { l }
            }
            CovarianceSpec::DenseExplicit { matrix } => {
                if layout == LatentLayout::Directed {
                    return Err(Error::InvalidInput(
                        "DenseExplicit matrices are sized to the unordered-pair dimension; not available in directed mode"
                            .into(),
                    ));
                }
                check_cap(dim, dense_cap)?;
                check_dense(matrix, dim)?;
                let flat: Vec<f64> = matrix.iter().flat_map(|r| r.iter().copied()).collect();
                let l = clamped_cholesky(&flat, dim)?;
                Sampler::Factor { l }
            }
        };
        Ok(ValidatedCov {
            spec: self.clone(),
            n,
            dim,
            layout,
            sampler,
        })
    }

    /// Correlation between latent coordinates t and s (t != s) in the
    /// undirected layout. The diagonal is fixed at 1 and may not be queried.
    pub fn correlation_of(&self, t: usize, s: usize, n: usize) -> Result<f64> {
        let total = pairs::num_pairs(n)?;
        if t >= total || s >= total {
            return Err(Error::InvalidIndex(format!(
                "latent index out of range: t = {t}, s = {s}, N = {total}"
            )));
        }
        if t == s {
            return Err(Error::InvalidPair(format!(
                "diagonal query at t = {t}: diagonal of Sigma is fixed at 1"
            )));
        }
        Ok(match self {
            CovarianceSpec::Independent => 0.0,
            CovarianceSpec::PowerDecay { sigma0 } => {
                sigma0.powi((t as i64 - s as i64).unsigned_abs() as i32)
            }
            CovarianceSpec::Equicorrelated { rho } => *rho,
            CovarianceSpec::AdditiveNode { sigma0, sigma } => {
                let (i, j) = pairs::index_to_pair(t, n)?;
                let (k, l) = pairs::index_to_pair(s, n)?;
                sigma0 + sigma[i] + sigma[j] + sigma[k] + sigma[l]
            }
            CovarianceSpec::DenseExplicit { matrix } => matrix[t][s],
        })
    }
}

impl ValidatedCov {
    pub fn spec(&self) -> &CovarianceSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Latent dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn layout(&self) -> LatentLayout {
        self.layout
    }

    /// One draw of u ~ N(0, Sigma). Consumes exactly `dim` standard normals
    /// from `rng` in index order, so identical streams give identical draws.
    pub fn sample_latent<R: RngCore>(&self, rng: &mut R) -> Vec<f64> {
        let dim = self.dim;
        let mut eps: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        match &self.sampler {
            Sampler::Independent => eps,
            Sampler::PowerDecay { sigma0 } => {
                let scale = (1.0 - sigma0 * sigma0).sqrt();
                let mut u = Vec::with_capacity(dim);
                u.push(eps[0]);
                for t in 1..dim {
                    u.push(sigma0 * u[t - 1] + scale * eps[t]);
                }
                u
            }
            Sampler::Equicorrelated { a, b } => {
                let s: f64 = eps.iter().sum();
                for e in eps.iter_mut() {
                    *e = a * *e + b * s;
                }
                eps
            }
            Sampler::Factor { l } => {
                let mut u = vec![0.0; dim];
                for i in 0..dim {
                    let row = &l[i * (i + 1) / 2..i * (i + 1) / 2 + i + 1];
                    let mut acc = 0.0;
                    for (j, lij) in row.iter().enumerate() {
                        acc += lij * eps[j];
                    }
                    u[i] = acc;
                }
                u
            }
        }
    }
}

fn check_open_unit(v: f64, name: &str) -> Result<()> {
    if !(v.abs() < 1.0) {
        return Err(Error::InvalidSpec(format!(
            "{name} must satisfy |{name}| < 1, got {v}"
        )));
    }
    Ok(())
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        return Err(Error::InvalidSpec(format!(
            "materialized covariance dimension N = {dim} exceeds cap {cap}; raise it with validate_with_cap"
        )));
    }
    Ok(())
}

fn materialize_additive(sigma0: f64, sigma: &[f64], n: usize, dim: usize) -> Result<Vec<f64>> {
    let mut pair_sum = vec![0.0; dim];
    for t in 0..dim {
        let (i, j) = pairs::index_to_pair(t, n)?;
        pair_sum[t] = sigma[i] + sigma[j];
    }
    let mut m = vec![0.0; dim * dim];
    for t in 0..dim {
        m[t * dim + t] = 1.0;
        for s in 0..t {
            let v = sigma0 + pair_sum[t] + pair_sum[s];
            if v.abs() >= 1.0 {
                return Err(Error::InvalidSpec(format!(
                    "AdditiveNode correlation {v} at (t, s) = ({t}, {s}) leaves (-1, 1)"
                )));
            }
            m[t * dim + s] = v;
            m[s * dim + t] = v;
        }
    }
    Ok(m)
}

fn check_dense(matrix: &[Vec<f64>], dim: usize) -> Result<()> {
    if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidSpec(format!(
            "DenseExplicit matrix must be {dim} x {dim} (N rows of N columns)"
        )));
    }
    for t in 0..dim {
        if (matrix[t][t] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!(
                "diagonal entry ({t}, {t}) = {} must be 1",
                matrix[t][t]
            )));
        }
        for s in 0..t {
            if (matrix[t][s] - matrix[s][t]).abs() > 1e-12 {
                return Err(Error::InvalidSpec(format!(
                    "asymmetric entries at ({t}, {s})"
                )));
            }
            if !(matrix[t][s].abs() < 1.0) {
                return Err(Error::InvalidSpec(format!(
                    "off-diagonal ({t}, {s}) = {} must lie in (-1, 1)",
                    matrix[t][s]
                )));
            }
        }
    }
    Ok(())
}

/// Outer-product Cholesky with pivot clamping: pivots below -PSD_PIVOT_TOL
/// reject the matrix; tiny negative pivots (exact semidefiniteness plus
/// roundoff) clamp to zero and the corresponding column of L is zeroed.
/// Input is row-major dim x dim; output is the packed lower triangle.
fn clamped_cholesky(a: &[f64], dim: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; dim * (dim + 1) / 2];
    let idx = |i: usize, j: usize| i * (i + 1) / 2 + j;
    for j in 0..dim {
        let mut d = a[j * dim + j];
        for k in 0..j {
            d -= l[idx(j, k)] * l[idx(j, k)];
        }
        if d < -PSD_PIVOT_TOL {
            return Err(Error::NotPsd { index: j, pivot: d });
        }
        let dj = d.max(0.0).sqrt();
        l[idx(j, j)] = dj;
        for i in (j + 1)..dim {
            if dj == 0.0 {
                l[idx(i, j)] = 0.0;
                continue;
            }
            let mut s = a[i * dim + j];
            for k in 0..j {
                s -= l[idx(i, k)] * l[idx(j, k)];
            }
            l[idx(i, j)] = s / dj;
        }
    }
    Ok(l)
}

/// Parse a DenseExplicit matrix from CSV text: N lines of N comma-separated
/// decimals, row t = latent index t. Blank lines and `#` comments allowed.
pub fn load_dense_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let v: f64 = field.trim().parse().map_err(|_| Error::Format {
                line: lineno + 1,
                message: format!("not a decimal number: {:?}", field.trim()),
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Format {
            line: 1,
            message: "empty covariance CSV".into(),
        });
    }
    let n_cols = rows[0].len();
    if rows.len() != n_cols {
        return Err(Error::Format {
            line: rows.len(),
            message: format!("matrix must be square: {} rows x {} columns", rows.len(), n_cols),
        });
    }
    Ok(rows)
}
