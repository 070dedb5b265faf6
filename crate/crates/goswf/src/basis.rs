//! Construction of the generalized oblate spheroidal wave functions (GOSWFs)
//! and their spectra by two independent routes:
//!
//! * **Method 1** (differential operator): the GOSWFs satisfy a second-order
//!   ODE whose operator commutes with the integral operator F_c. Expanding in
//!   the orthonormal Jacobi basis turns the ODE into a symmetric
//!   pentadiagonal matrix eigenproblem for the chi_n spectrum; the
//!   integral-operator eigenvalues mu_n follow from a Rayleigh quotient.
//! * **Method 2** (Nystrom): discretize F_c on a Gauss-Jacobi rule,
//!   symmetrize, and eigendecompose. The mu_n appear directly.
//!
//! Both spectral paths run in double-double precision; the eigenvalues decay
//! super-exponentially and plain `f64` arithmetic cannot resolve the small
//! ones to the accuracy the rest of the crate promises.
//!
//! ```
//! use goswf::jacobi::WeightParams;
//! use goswf::laplace::OperatorParams;
//! use goswf::basis::{solve_method1, solve_method2_nystrom};
//!
//! let op = OperatorParams::with_defaults(WeightParams::new(0.0, 0.0)?, 1.0)?;
//! let basis = solve_method1(&op, 4, None)?;        // differential operator
//! let system = solve_method2_nystrom(&op, 40)?;    // Nystrom discretization
//! for n in 0..4 {
//!     let rel = (basis.mu[n] - system.mu[n]).abs() / basis.mu[n];
//!     assert!(rel < 1e-10);
//! }
//! # Ok::<(), goswf::Error>(())
//! ```

use std::sync::Arc;

use crate::dd::Dd;
use crate::eigen::{jacobi_eig_dd, herm_eig_dd, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::jacobi::{
    chi_zero, clenshaw_series, recurrence_coeffs, x_action, x_squared_action, WeightParams,
};
use crate::laplace::{fourier_gram_dd, nystrom_matrix_dd, OperatorParams};
use crate::quadrature::{gauss_jacobi, QuadratureRule};

/// Magnitudes below this are reported but flagged as numerically
/// unresolvable in double precision output.
pub const PRECISION_FLOOR: f64 = 1e-14;

/// Hard cap on the Jacobi-series truncation order.
const TRUNC_CAP: usize = 1024;

/// Truncated Jacobi-series representation of the first `n_max` GOSWFs with
/// their ODE eigenvalues chi_n (ascending) and integral-operator eigenvalues
/// mu_n (descending). Each psi_n has unit norm in L^2(omega).
#[derive(Clone, Debug)]
pub struct GoswfBasis {
    pub op: OperatorParams,
    pub trunc_order: usize,
    pub n_max: usize,
    /// coeffs[n][k] is the coefficient of the orthonormal Jacobi polynomial
    /// **P**_k in psi_n; each row has unit Euclidean norm.
    pub coeffs: Vec<Vec<f64>>,
    /// ODE eigenvalues, strictly increasing.
    pub chi: Vec<f64>,
    /// Integral-operator eigenvalues, positive and non-increasing.
    pub mu: Vec<f64>,
    /// True where |mu_n| < the precision floor.
    pub below_floor: Vec<bool>,
    pub precision_floor: f64,
    pub(crate) rule: Arc<QuadratureRule>,
    pub(crate) coeffs_dd: Vec<Vec<Dd>>,
    pub(crate) mu_dd: Vec<Dd>,
}

/// The symmetric pentadiagonal matrix of the (negated) GOSWF differential
/// operator in the orthonormal Jacobi basis; its eigenvalues are +chi_n(c).
///
/// Row/column k carries chi_k(0) on the diagonal, the c^2 x^2 term on
/// offsets 0, +-1, +-2 and the c(beta-alpha) x term on offsets 0, +-1, all
/// with a minus sign.
pub fn build_ode_matrix(op: &OperatorParams, trunc: usize) -> Result<SymmetricMatrix> {
    if trunc < 4 {
        return Err(Error::Contract(format!(
            "ODE matrix truncation must be at least 4, got {trunc}"
        )));
    }
    let dd = ode_matrix_dd(op, trunc);
    let mut m = SymmetricMatrix::zeros(trunc);
    for i in 0..trunc {
        for j in i..trunc.min(i + 3) {
            m.set(i, j, dd[i][j].to_f64());
        }
    }
    Ok(m)
}

fn ode_matrix_dd(op: &OperatorParams, trunc: usize) -> Vec<Vec<Dd>> {
    let p = &op.weight;
    let c = Dd::from_f64(op.c);
    let c2 = c * c;
    let cba = c * Dd::from_f64(p.beta - p.alpha);
    let mut m = vec![vec![Dd::ZERO; trunc]; trunc];
    for k in 0..trunc {
        let (alpha_k, beta_k, _) = x_action::<Dd>(p, k);
        let (e2, e1, e0, _, _) = x_squared_action::<Dd>(p, k);
        m[k][k] = Dd::from_f64(chi_zero(p, k)) - c2 * e0 - cba * beta_k;
        if k + 1 < trunc {
            let v = -(c2 * e1) - cba * alpha_k;
            m[k][k + 1] = v;
            m[k + 1][k] = v;
        }
        if k + 2 < trunc {
            let v = -(c2 * e2);
            m[k][k + 2] = v;
            m[k + 2][k] = v;
        }
    }
    m
}

/// Evaluates sum_k coeffs[k] **P**_k(x) in double-double at a double-double
/// abscissa, by upward recurrence.
fn series_at_dd(p: &WeightParams, coeffs: &[Dd], x: Dd, inv_sqrt_mass: Dd) -> Dd {
    let mut prev = Dd::ZERO;
    let mut cur = inv_sqrt_mass;
    let mut acc = coeffs[0] * cur;
    for k in 0..coeffs.len().saturating_sub(1) {
        let (cap_a, cap_b, cap_c) = recurrence_coeffs::<Dd>(p, k);
        let next = (cap_a * x - cap_b) * cur - cap_c * prev;
        prev = cur;
        cur = next;
        acc = acc + coeffs[k + 1] * cur;
    }
    acc
}

/// Node samples s_j = sqrt(w_j) psi(y_j) of a coefficient row, double-double.
fn node_samples_dd(p: &WeightParams, rule: &QuadratureRule, coeffs: &[Dd]) -> Vec<Dd> {
    let inv_sqrt_mass = Dd::ONE / Dd::from_f64(p.total_mass()).sqrt();
    rule.nodes_dd
        .iter()
        .zip(&rule.weights_dd)
        .map(|(&y, &w)| w.sqrt() * series_at_dd(p, coeffs, y, inv_sqrt_mass))
        .collect()
}

/// Rayleigh quotient s^T B s / s^T s.
fn rayleigh_dd(b: &[Vec<Dd>], s: &[Dd]) -> Dd {
    let mut num = Dd::ZERO;
    let mut den = Dd::ZERO;
    for (j, &sj) in s.iter().enumerate() {
        let mut row = Dd::ZERO;
        for (k, &sk) in s.iter().enumerate() {
            row = row + b[j][k] * sk;
        }
        num = num + sj * row;
        den = den + sj * sj;
    }
    num / den
}

/// Computes the GOSWF basis by the differential-operator route.
///
/// `trunc` defaults to `n_max + max(20, ceil(2c))`. The series tail of every
/// retained eigenvector must fall below 1e-12; otherwise the truncation is
/// doubled and the solve repeats, up to a hard cap.
pub fn solve_method1(op: &OperatorParams, n_max: usize, trunc: Option<usize>) -> Result<GoswfBasis> {
    if n_max == 0 {
        return Err(Error::Contract("n_max must be at least 1".into()));
    }
    let margin = 20usize.max((2.0 * op.c).ceil() as usize);
    let mut trunc = match trunc {
        Some(t) => {
            if t < n_max + 20 {
                return Err(Error::Contract(format!(
                    "truncation order {t} below minimum {} (n_max + 20)",
                    n_max + 20
                )));
            }
            t
        }
        None => n_max + margin,
    };

    loop {
        let m = ode_matrix_dd(op, trunc);
        let (chi_dd, vectors) = jacobi_eig_dd(m)?;

        for n in 0..n_max {
            if (chi_dd[n + 1] - chi_dd[n]).to_f64().abs() < 1e-10 {
                return Err(Error::Precision(format!(
                    "chi eigenvalues {n} and {} are numerically tied; cannot order the basis",
                    n + 1
                )));
            }
        }

        let tail_ok = (0..n_max).all(|n| {
            vectors[n][trunc - 5..]
                .iter()
                .all(|v| v.to_f64().abs() < 1e-12)
        });
        if !tail_ok {
            if trunc * 2 > TRUNC_CAP {
                let worst = (0..n_max)
                    .find(|&n| {
                        vectors[n][trunc - 5..]
                            .iter()
                            .any(|v| v.to_f64().abs() >= 1e-12)
                    })
                    .unwrap_or(0);
                return Err(Error::Precision(format!(
                    "series tail of psi_{worst} has not decayed at truncation cap {TRUNC_CAP}"
                )));
            }
            trunc *= 2;
            continue;
        }

        let rule = op.rule()?;
        let b = nystrom_matrix_dd(&rule, op.c);
        let coeffs_dd: Vec<Vec<Dd>> = vectors.into_iter().take(n_max).collect();
        let mut mu_dd = Vec::with_capacity(n_max);
        for row in &coeffs_dd {
            let s = node_samples_dd(&op.weight, &rule, row);
            mu_dd.push(rayleigh_dd(&b, &s));
        }
        let mu: Vec<f64> = mu_dd.iter().map(|m| m.to_f64()).collect();
        let below_floor: Vec<bool> = mu.iter().map(|m| m.abs() < PRECISION_FLOOR).collect();
        let coeffs: Vec<Vec<f64>> = coeffs_dd
            .iter()
            .map(|row| row.iter().map(|v| v.to_f64()).collect())
            .collect();
        let chi: Vec<f64> = chi_dd.iter().take(n_max).map(|v| v.to_f64()).collect();

        return Ok(GoswfBasis {
            op: *op,
            trunc_order: trunc,
            n_max,
            coeffs,
            chi,
            mu,
            below_floor,
            precision_floor: PRECISION_FLOOR,
            rule,
            coeffs_dd,
            mu_dd,
        });
    }
}

impl GoswfBasis {
    /// The Jacobi-series coefficients in double-double precision, for
    /// consumers that need more than `f64` resolution.
    pub fn coeffs_dd(&self) -> &[Vec<Dd>] {
        &self.coeffs_dd
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n >= self.n_max {
            return Err(Error::Contract(format!(
                "index {n} out of range (basis holds {} functions)",
                self.n_max
            )));
        }
        Ok(())
    }

    /// psi_n(x) by Clenshaw summation of the Jacobi series.
    pub fn eval_psi(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
        }
        Ok(clenshaw_series::<f64>(
            &self.op.weight,
            &self.coeffs[n],
            x,
            self.op.weight.total_mass(),
        ))
    }

    /// psi_n(x) and its derivative, both through the Jacobi series.
    pub fn eval_psi_and_derivative(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        self.check_n(n)?;
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
        }
        let p = &self.op.weight;
        let inv_sqrt_mass = 1.0 / p.total_mass().sqrt();
        let coeffs = &self.coeffs[n];
        let mut prev = 0.0;
        let mut cur = inv_sqrt_mass;
        let mut dprev = 0.0;
        let mut dcur = 0.0;
        let mut val = coeffs[0] * cur;
        let mut dval = 0.0;
        for k in 0..coeffs.len().saturating_sub(1) {
            let (cap_a, cap_b, cap_c) = recurrence_coeffs::<f64>(p, k);
            let next = (cap_a * x - cap_b) * cur - cap_c * prev;
            let dnext = (cap_a * x - cap_b) * dcur + cap_a * cur - cap_c * dprev;
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
            val += coeffs[k + 1] * cur;
            dval += coeffs[k + 1] * dcur;
        }
        Ok((val, dval))
    }

    /// Recomputes mu_n as the double-quadrature Rayleigh quotient
    /// integral of e^{c(uv-1)} psi_n(u) psi_n(v) against omega x omega.
    pub fn compute_mu(&self, n: usize) -> Result<f64> {
        self.check_n(n)?;
        Ok(self.mu_dd[n].to_f64())
    }

    /// Both candidate values of d(mu_n)/dc:
    /// variant A = (1/mu)(I_n/c - mu^2) and variant B = (1/mu)(I_n/c - 1),
    /// with I_n = mu_n^2 * integral of v psi_n(v) psi_n'(v) omega(v) dv.
    /// The finite-difference oracle in the test suite adjudicates which one
    /// is the true derivative.
    pub fn mu_derivative(&self, n: usize) -> Result<(f64, f64)> {
        self.check_n(n)?;
        if self.below_floor[n] {
            return Err(Error::Precision(format!(
                "mu_{n} = {:e} is below the precision floor; derivative not computed",
                self.mu[n]
            )));
        }
        let mu = self.mu[n];
        let i_unit = self.rule.clone();
        let mut integral = 0.0;
        for (&v, &w) in i_unit.nodes.iter().zip(&i_unit.weights) {
            let (psi, dpsi) = self.eval_psi_and_derivative(n, v)?;
            integral += w * v * psi * dpsi;
        }
        let i_n = mu * mu * integral; // scaled so ||psi_n|| = mu_n
        let c = self.op.c;
        let variant_a = (i_n / c - mu * mu) / mu;
        let variant_b = (i_n / c - 1.0) / mu;
        Ok((variant_a, variant_b))
    }
}

/// Symmetrized Nystrom discretization of F_c with its eigenpairs.
#[derive(Clone, Debug)]
pub struct NystromSystem {
    pub op: OperatorParams,
    pub n_quad: usize,
    /// Eigenvalues mu_n, descending.
    pub mu: Vec<f64>,
    /// node_values[n][j] = psi_n(y_j) (eigenvector component / sqrt(w_j)).
    pub node_values: Vec<Vec<f64>>,
    pub rule: Arc<QuadratureRule>,
    pub(crate) mu_dd: Vec<Dd>,
    pub(crate) vectors_dd: Vec<Vec<Dd>>,
}

/// Computes the GOSWF spectrum by the Nystrom route: eigendecomposition of
/// B_{jk} = sqrt(w_j w_k) e^{c(y_j y_k - 1)}.
pub fn solve_method2_nystrom(op: &OperatorParams, n_quad: usize) -> Result<NystromSystem> {
    if n_quad == 0 {
        return Err(Error::Contract("n_quad must be at least 1".into()));
    }
    let rule = Arc::new(gauss_jacobi(&op.weight, n_quad)?);
    let b = nystrom_matrix_dd(&rule, op.c);
    let (vals, vecs) = jacobi_eig_dd(b)?;
    // descending
    let mut mu_dd: Vec<Dd> = vals.into_iter().rev().collect();
    let vectors_dd: Vec<Vec<Dd>> = vecs.into_iter().rev().collect();
    for (n, m) in mu_dd.iter_mut().enumerate() {
        let v = m.to_f64();
        if v.abs() >= PRECISION_FLOOR && v <= 0.0 {
            return Err(Error::Precision(format!(
                "Nystrom eigenvalue {n} = {v:e} is not positive; the kernel is positive definite"
            )));
        }
    }
    let mu: Vec<f64> = mu_dd.iter().map(|m| m.to_f64()).collect();
    let node_values: Vec<Vec<f64>> = vectors_dd
        .iter()
        .map(|v| {
            v.iter()
                .zip(&rule.weights_dd)
                .map(|(&vi, &wi)| (vi / wi.sqrt()).to_f64())
                .collect()
        })
        .collect();
    Ok(NystromSystem {
        op: *op,
        n_quad,
        mu,
        node_values,
        rule,
        mu_dd,
        vectors_dd,
    })
}

impl NystromSystem {
    /// Off-node evaluation by the Nystrom interpolation formula
    /// psi_n(x) = (1/mu_n) sum_j w_j e^{c(x y_j - 1)} psi_n(y_j),
    /// carried out in double-double so the division by a small mu_n does not
    /// amplify roundoff.
    pub fn eval_psi(&self, n: usize, x: f64) -> Result<f64> {
        if n >= self.mu.len() {
            return Err(Error::Contract(format!(
                "index {n} out of range (system holds {} eigenpairs)",
                self.mu.len()
            )));
        }
        if self.mu[n].abs() < PRECISION_FLOOR {
            return Err(Error::Precision(format!(
                "mu_{n} = {:e} is below the precision floor; interpolation would divide by noise",
                self.mu[n]
            )));
        }
        let c = Dd::from_f64(self.op.c);
        let xd = Dd::from_f64(x);
        let mut acc = Dd::ZERO;
        for (j, &vj) in self.vectors_dd[n].iter().enumerate() {
            let arg = c * (xd * self.rule.nodes_dd[j] - Dd::ONE);
            acc = acc + self.rule.weights_dd[j].sqrt() * arg.exp() * vj;
        }
        Ok((acc / self.mu_dd[n]).to_f64())
    }
}

/// Eigenvalues of (c_tilde / 2 pi) F~_c o F~_c^*, the classical PSWF
/// eigenvalue ladder, descending. F~_c is the unit-weight integral operator
/// with kernel e^{i c_tilde x y}.
pub fn pswf_eigenvalues(c_tilde: f64, n_max: usize, n_quad: usize) -> Result<Vec<f64>> {
    if !(c_tilde > 0.0) {
        return Err(Error::Domain(format!("c_tilde must be positive, got {c_tilde}")));
    }
    let min_quad = ((2.0 * std::f64::consts::E * c_tilde).ceil() as usize + 1).max(40);
    if n_quad < min_quad {
        return Err(Error::Contract(format!(
            "n_quad = {n_quad} below the required minimum {min_quad} for c_tilde = {c_tilde}"
        )));
    }
    if n_max > n_quad {
        return Err(Error::Contract(format!(
            "n_max = {n_max} exceeds the discretization size {n_quad}"
        )));
    }
    let (re, im) = fourier_gram_dd(c_tilde, n_quad)?;
    let (vals, _) = herm_eig_dd(&re, &im)?;
    let scale = Dd::from_f64(c_tilde) / (Dd::PI.mul_pwr2(2.0));
    Ok(vals
        .iter()
        .rev()
        .take(n_max)
        .map(|v| (*v * scale).to_f64())
        .collect())
}
