//! Symmetric and Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! The rotations are carried out in double-double arithmetic. The downstream
//! spectra span twenty orders of magnitude and some acceptance targets sit
//! below the `f64` rounding floor of the matrix norm, so the solver keeps a
//! `Dd` path alongside the `f64`-facing API. Jacobi iteration also computes
//! small eigenvalues of positive definite matrices to high relative accuracy,
//! which the QR family does not.

use crate::dd::{Dd, DD_EPS};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Dense symmetric matrix, row-major full storage.
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> SymmetricMatrix {
        SymmetricMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    /// Builds from a function of (row, col); only the upper triangle is
    /// sampled, the lower is mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> SymmetricMatrix {
        let mut m = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Builds from banded storage of one triangle: `bands[d]` holds the
    /// diagonal at offset `d` and has length `dim - d`.
    pub fn from_bands(dim: usize, bands: &[Vec<f64>]) -> Result<SymmetricMatrix> {
        if bands.is_empty() || bands.len() > dim {
            return Err(Error::Contract(format!(
                "banded storage needs 1..=dim bands, got {}",
                bands.len()
            )));
        }
        for (d, band) in bands.iter().enumerate() {
            if band.len() != dim - d {
                return Err(Error::Contract(format!(
                    "band {d} has length {}, expected {}",
                    band.len(),
                    dim - d
                )));
            }
        }
        Ok(SymmetricMatrix::from_fn(dim, |i, j| {
            let d = j - i; // j >= i in from_fn
            if d < bands.len() {
                bands[d][i]
            } else {
                0.0
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn to_dd(&self) -> Vec<Vec<Dd>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| Dd::from_f64(self.get(i, j))).collect())
            .collect()
    }
}

/// Full spectrum, values ascending, vectors orthonormal and paired by index.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi in double-double arithmetic. Returns (values, vectors)
/// sorted ascending, each vector with its largest-magnitude entry positive.
pub(crate) fn jacobi_eig_dd(mut a: Vec<Vec<Dd>>) -> Result<(Vec<Dd>, Vec<Vec<Dd>>)> {
    let n = a.len();
    let mut v: Vec<Vec<Dd>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Dd::ONE } else { Dd::ZERO })
                .collect()
        })
        .collect();
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    let fro: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.hi * x.hi)
        .sum::<f64>()
        .sqrt();
    let abs_floor = Dd::from_f64(DD_EPS * fro.max(f64::MIN_POSITIVE));
    let rel_tol = Dd::from_f64(1e-30);

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let mag = apq.abs();
                let rel = rel_tol * (a[p][p].abs() * a[q][q].abs()).sqrt();
                if mag <= abs_floor || mag <= rel {
                    continue;
                }
                rotated = true;
                let app = a[p][p];
                let aqq = a[q][q];
                let theta = (aqq - app) / apq.mul_pwr2(2.0);
                let t = if theta.hi.abs() > 1e100 {
                    Dd::ONE / theta.mul_pwr2(2.0)
                } else if theta >= Dd::ZERO {
                    Dd::ONE / (theta + (theta * theta + Dd::ONE).sqrt())
                } else {
                    Dd::ONE / (theta - (theta * theta + Dd::ONE).sqrt())
                };
                let c = Dd::ONE / (t * t + Dd::ONE).sqrt();
                let s = t * c;
                let tau = s / (Dd::ONE + c);
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = Dd::ZERO;
                a[q][p] = Dd::ZERO;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p];
                    let h = a[r][q];
                    let np = g - s * (h + tau * g);
                    let nq = h + s * (g - tau * h);
                    a[r][p] = np;
                    a[p][r] = np;
                    a[r][q] = nq;
                    a[q][r] = nq;
                }
                for r in 0..n {
                    let g = v[r][p];
                    let h = v[r][q];
                    v[r][p] = g - s * (h + tau * g);
                    v[r][q] = h + s * (g - tau * h);
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Internal(format!(
            "jacobi eigensolver failed to converge for dimension {n}"
        )));
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values: Vec<Dd> = idx.iter().map(|&i| a[i][i]).collect();
    let mut vectors: Vec<Vec<Dd>> = idx
        .iter()
        .map(|&k| (0..n).map(|r| v[r][k]).collect())
        .collect();
    for vec in &mut vectors {
        let mut best = 0usize;
        for (i, x) in vec.iter().enumerate() {
            if x.abs() > vec[best].abs() {
                best = i;
            }
        }
        if vec[best] < Dd::ZERO {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
    }
    Ok((values, vectors))
}

/// Full symmetric eigendecomposition.
pub fn sym_eig(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    if m.dim() == 0 {
        return Err(Error::Contract("empty matrix".into()));
    }
    let (values, vectors) = jacobi_eig_dd(m.to_dd())?;
    Ok(EigenDecomposition {
        values: values.iter().map(|v| v.to_f64()).collect(),
        vectors: vectors
            .iter()
            .map(|v| v.iter().map(|x| x.to_f64()).collect())
            .collect(),
    })
}

/// Hermitian eigendecomposition via the real symmetric embedding
/// [[X, -Y], [Y, X]] of H = X + iY. Values are real and ascending.
pub fn herm_eig(h: &[Vec<Complex64>]) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let n = h.len();
    if n == 0 {
        return Err(Error::Contract("empty matrix".into()));
    }
    let re: Vec<Vec<Dd>> = h
        .iter()
        .map(|row| row.iter().map(|z| Dd::from_f64(z.re)).collect())
        .collect();
    let im: Vec<Vec<Dd>> = h
        .iter()
        .map(|row| row.iter().map(|z| Dd::from_f64(z.im)).collect())
        .collect();
    let (vals, vecs) = herm_eig_dd(&re, &im)?;
    Ok((vals.iter().map(|v| v.to_f64()).collect(), vecs))
}

/// Hermitian eigensolve with double-double entries. Each embedded eigenvalue
/// appears twice; duplicates are removed by projecting candidate complex
/// vectors against the already-accepted ones.
pub(crate) fn herm_eig_dd(
    re: &[Vec<Dd>],
    im: &[Vec<Dd>],
) -> Result<(Vec<Dd>, Vec<Vec<Complex64>>)> {
    let n = re.len();
    let mut embed = vec![vec![Dd::ZERO; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            embed[i][j] = re[i][j];
            embed[n + i][n + j] = re[i][j];
            embed[i][n + j] = -im[i][j];
            embed[n + i][j] = im[i][j];
        }
    }
    let (vals, vecs) = jacobi_eig_dd(embed)?;

    let mut out_vals: Vec<Dd> = Vec::with_capacity(n);
    let mut out_vecs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (k, val) in vals.iter().enumerate() {
        if out_vals.len() == n {
            break;
        }
        let mut z: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(vecs[k][j].to_f64(), vecs[k][n + j].to_f64()))
            .collect();
        for w in &out_vecs {
            let dot: Complex64 = w.iter().zip(&z).map(|(a, b)| a.conj() * b).sum();
            for (zi, wi) in z.iter_mut().zip(w) {
                *zi -= dot * wi;
            }
        }
        let norm: f64 = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.5 {
            continue; // duplicate partner of an accepted vector
        }
        let mut best = 0usize;
        for (i, v) in z.iter().enumerate() {
            if v.norm_sqr() > z[best].norm_sqr() {
                best = i;
            }
        }
        let phase = z[best].conj() / z[best].norm();
        for v in z.iter_mut() {
            *v = *v * phase / norm;
        }
        out_vals.push(*val);
        out_vecs.push(z);
    }
    if out_vals.len() != n {
        return Err(Error::Internal(
            "hermitian embedding did not yield a full basis".into(),
        ));
    }
    Ok((out_vals, out_vecs))
}
