//! Gauss-Jacobi quadrature on (-1, 1) by the Golub-Welsch construction:
//! nodes are eigenvalues of the symmetric tridiagonal multiplication-by-x
//! matrix in the orthonormal Jacobi basis, weights come from the first
//! eigenvector components. The eigensolve runs in double-double precision so
//! the nodes and weights are accurate to better than `f64` roundoff; the
//! rule keeps both representations.
//!
//! ```
//! use goswf::jacobi::WeightParams;
//! use goswf::quadrature::gauss_jacobi;
//!
//! let legendre = WeightParams::new(0.0, 0.0)?;
//! let rule = gauss_jacobi(&legendre, 5)?;
//! let integral = rule.integrate(|x| x * x);   // integral of x^2 over (-1,1)
//! assert!((integral - 2.0 / 3.0).abs() < 1e-14);
//! # Ok::<(), goswf::Error>(())
//! ```

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::jacobi::{x_action, WeightParams};
use crate::special::ln_gamma;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub params: WeightParams,
    pub order: usize,
    /// Strictly increasing, all in (-1, 1).
    pub nodes: Vec<f64>,
    /// All positive; they sum to the total mass of the weight.
    pub weights: Vec<f64>,
    pub(crate) nodes_dd: Vec<Dd>,
    pub(crate) weights_dd: Vec<Dd>,
}

impl QuadratureRule {
    /// Applies the rule to f: approximates the integral of f against the
    /// Jacobi weight.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds the n-point Gauss-Jacobi rule for the given weight.
pub fn gauss_jacobi(params: &WeightParams, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Contract("quadrature order must be at least 1".into()));
    }
    let mut m = vec![vec![Dd::ZERO; n]; n];
    for k in 0..n {
        let (alpha_k, beta_k, _) = x_action::<Dd>(params, k);
        m[k][k] = beta_k;
        if k + 1 < n {
            m[k][k + 1] = alpha_k;
            m[k + 1][k] = alpha_k;
        }
    }
    let (values, vectors) = crate::eigen::jacobi_eig_dd(m)?;
    let mass = Dd::from_f64(params.total_mass());
    let nodes_dd: Vec<Dd> = values;
    let weights_dd: Vec<Dd> = vectors
        .iter()
        .map(|v| {
            let first = v[0];
            mass * first * first
        })
        .collect();
    Ok(QuadratureRule {
        params: *params,
        order: n,
        nodes: nodes_dd.iter().map(|x| x.to_f64()).collect(),
        weights: weights_dd.iter().map(|x| x.to_f64()).collect(),
        nodes_dd,
        weights_dd,
    })
}

const K_EPSILON_CAP: usize = 1000;

/// log of the Gaussian-quadrature truncation bound at order K.
fn ln_bound(params: &WeightParams, c: f64, k: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let kf = k as f64;
    let s = a + b;
    2.0 * c - 0.5 * (2.0 * kf * std::f64::consts::PI).ln()
        + (s + 1.0) * std::f64::consts::LN_2
        + ln_gamma(kf + 1.0).unwrap()
        + ln_gamma(kf + s + 1.0).unwrap()
        + ln_gamma(kf + a + 1.0).unwrap()
        + ln_gamma(kf + b + 1.0).unwrap()
        - (2.0 * kf + s + 1.0).ln()
        - 2.0 * ln_gamma(2.0 * kf + s + 1.0).unwrap()
}

/// Smallest K for which the quadrature truncation bound drops below
/// epsilon * |mu_n|.
pub fn k_epsilon(params: &WeightParams, c: f64, epsilon: f64, mu_abs: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must be in (0,1), got {epsilon}")));
    }
    if !(mu_abs > 0.0) {
        return Err(Error::Domain(format!("mu_abs must be positive, got {mu_abs}")));
    }
    let target = epsilon.ln() + mu_abs.ln();
    for k in 1..=K_EPSILON_CAP {
        if ln_bound(params, c, k) <= target {
            return Ok(k);
        }
    }
    Err(Error::Precision(format!(
        "k_epsilon: requested accuracy {epsilon:e} * {mu_abs:e} unreachable within {K_EPSILON_CAP} points"
    )))
}

/// The working order recommended by the interpolation theorem:
/// max(ceil(2ec) + 1, K_epsilon).
pub fn recommended_order(params: &WeightParams, c: f64, epsilon: f64, mu_abs: f64) -> Result<usize> {
    let base = (2.0 * std::f64::consts::E * c).ceil() as usize + 1;
    Ok(base.max(k_epsilon(params, c, epsilon, mu_abs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta_fn;

    fn w(alpha: f64, beta: f64) -> WeightParams {
        WeightParams::new(alpha, beta).unwrap()
    }

    /// Exact moment of x^m against the weight via powers of the recurrence
    /// matrix: mass * (J^m)_{00}. Independent of the quadrature path.
    fn exact_moment(p: &WeightParams, m: usize) -> f64 {
        let dim = m / 2 + 2;
        let mut e = vec![0.0f64; dim];
        e[0] = 1.0;
        for _ in 0..m {
            let mut next = vec![0.0f64; dim];
            for k in 0..dim {
                let (ak, bk, gk) = x_action::<f64>(p, k);
                // x P_k = ak P_{k+1} + bk P_k + gk P_{k-1}
                if k + 1 < dim {
                    next[k + 1] += ak * e[k];
                }
                next[k] += bk * e[k];
                if k >= 1 {
                    next[k - 1] += gk * e[k];
                }
            }
            e = next;
        }
        p.total_mass() * e[0]
    }

    #[test]
    fn one_point_legendre() {
        let r = gauss_jacobi(&w(0.0, 0.0), 1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn two_point_legendre() {
        let r = gauss_jacobi(&w(0.0, 0.0), 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15);
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weight_sum_is_total_mass() {
        let r = gauss_jacobi(&w(1.0, 2.0), 4).unwrap();
        let total: f64 = r.weights.iter().sum();
        let expect = 16.0 * beta_fn(2.0, 3.0).unwrap();
        assert!((total - expect).abs() < 1e-12 * expect);
        assert!((expect - 16.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn rule_invariants() {
        for &(a, b, n) in &[(0.0, 0.0, 12), (2.5, 0.5, 20), (6.0, 7.0, 40)] {
            let p = w(a, b);
            let r = gauss_jacobi(&p, n).unwrap();
            assert_eq!(r.nodes.len(), n);
            assert!(r.nodes.windows(2).all(|v| v[0] < v[1]), "nodes sorted");
            assert!(r.nodes.iter().all(|x| x.abs() < 1.0), "nodes interior");
            assert!(r.weights.iter().all(|&w| w > 0.0), "weights positive");
            let total: f64 = r.weights.iter().sum();
            assert!((total - p.total_mass()).abs() < 1e-12 * total);
        }
    }

    #[test]
    fn exactness_up_to_degree() {
        for &(a, b, n) in &[(0.0, 0.0, 6usize), (1.5, 3.0, 8)] {
            let p = w(a, b);
            let r = gauss_jacobi(&p, n).unwrap();
            for m in 0..=(2 * n - 1) {
                let got = r.integrate(|x| x.powi(m as i32));
                let expect = exact_moment(&p, m);
                let scale = exact_moment(&p, m - m % 2).abs();
                assert!(
                    (got - expect).abs() <= 1e-12 * scale.max(1e-300),
                    "(a,b,n,m) = ({a},{b},{n},{m}): {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn nodes_interlace() {
        let p = w(0.5, 2.0);
        let r1 = gauss_jacobi(&p, 9).unwrap();
        let r2 = gauss_jacobi(&p, 10).unwrap();
        for i in 0..9 {
            assert!(r2.nodes[i] < r1.nodes[i] && r1.nodes[i] < r2.nodes[i + 1]);
        }
    }

    #[test]
    fn quadrature_convergence_exponential() {
        let p = w(1.0, 0.5);
        let a = gauss_jacobi(&p, 30).unwrap().integrate(f64::exp);
        let b = gauss_jacobi(&p, 40).unwrap().integrate(f64::exp);
        assert!((a - b).abs() <= 1e-13 * b.abs());
    }

    #[test]
    fn k_epsilon_matches_linear_scan_and_monotone() {
        let p = w(0.0, 0.0);
        let k = k_epsilon(&p, 1.0, 1e-8, 0.78).unwrap();
        // brute-force scan oracle
        let target = (1e-8f64).ln() + 0.78f64.ln();
        let brute = (1..=1000)
            .find(|&kk| super::ln_bound(&p, 1.0, kk) <= target)
            .unwrap();
        assert_eq!(k, brute);

        // non-increasing in epsilon and in mu_abs
        let k_loose = k_epsilon(&p, 1.0, 1e-4, 0.78).unwrap();
        assert!(k_loose <= k);
        let k_big_mu = k_epsilon(&p, 1.0, 1e-8, 10.0).unwrap();
        assert!(k_big_mu <= k);
    }

    #[test]
    fn bound_strictly_decreasing_past_threshold() {
        for &a in &[0.0, 1.0, 3.0] {
            for &b in &[0.0, 1.0, 3.0] {
                for &c in &[1.0, 6.0] {
                    let p = w(a, b);
                    let start = (2.0 * std::f64::consts::E * c).ceil() as usize;
                    for k in start..start + 30 {
                        assert!(
                            super::ln_bound(&p, c, k + 1) < super::ln_bound(&p, c, k),
                            "(a,b,c,k) = ({a},{b},{c},{k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn recommended_order_floor() {
        let p = w(0.0, 0.0);
        let k = recommended_order(&p, 6.0, 1e-8, 1e-2).unwrap();
        assert!(k >= (2.0 * std::f64::consts::E * 6.0).ceil() as usize + 1);
    }
}
