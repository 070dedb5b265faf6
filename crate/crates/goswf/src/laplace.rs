//! The finite weighted bilateral Laplace transform
//!
//! F_c[g](x) = integral over (-1,1) of e^{c(xy-1)} g(y) w(y) dy,
//!
//! its self-composition Q_c with the closed-form kernel K(x, y), and the
//! imaginary-bandwidth Fourier variant used to recover the classical PSWF
//! eigenvalues. Operator applications are quadrature sums over a matching
//! Gauss-Jacobi rule.
//!
//! ```
//! use goswf::jacobi::WeightParams;
//! use goswf::laplace::{apply_f, OperatorParams, SampledFunction};
//!
//! let weight = WeightParams::new(0.0, 0.0)?;
//! let op = OperatorParams::with_defaults(weight, 1.5)?;
//! let g = SampledFunction::from_fn(op.rule()?, |_| 1.0);
//! // F_c[1](1) = (1 - e^{-2c}) / c in closed form
//! let v = apply_f(&op, &g, 1.0)?;
//! assert!((v - (1.0 - (-3.0f64).exp()) / 1.5).abs() < 1e-13);
//! # Ok::<(), goswf::Error>(())
//! ```

use std::sync::Arc;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::jacobi::WeightParams;
use crate::quadrature::{gauss_jacobi, QuadratureRule};
use crate::special::{beta_fn, whittaker_m, WhittakerArgs};

pub const DEFAULT_QUAD_ORDER: usize = 40;

/// Weight, bandwidth and discretization order of one operator instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorParams {
    pub weight: WeightParams,
    pub c: f64,
    pub quad_order: usize,
}

impl OperatorParams {
    pub fn new(weight: WeightParams, c: f64, quad_order: usize) -> Result<OperatorParams> {
        if !(c > 0.0) {
            return Err(Error::Domain(format!("bandwidth c must be positive, got {c}")));
        }
        if quad_order == 0 {
            return Err(Error::Domain("quad_order must be at least 1".into()));
        }
        Ok(OperatorParams {
            weight,
            c,
            quad_order,
        })
    }

    pub fn with_defaults(weight: WeightParams, c: f64) -> Result<OperatorParams> {
        Self::new(weight, c, DEFAULT_QUAD_ORDER)
    }

    pub fn rule(&self) -> Result<Arc<QuadratureRule>> {
        Ok(Arc::new(gauss_jacobi(&self.weight, self.quad_order)?))
    }
}

/// A function known by its values at the nodes of a quadrature rule.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub rule: Arc<QuadratureRule>,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(rule: Arc<QuadratureRule>, values: Vec<f64>) -> Result<SampledFunction> {
        if values.len() != rule.order {
            return Err(Error::Contract(format!(
                "sample count {} does not match rule order {}",
                values.len(),
                rule.order
            )));
        }
        Ok(SampledFunction { rule, values })
    }

    pub fn from_fn(rule: Arc<QuadratureRule>, mut f: impl FnMut(f64) -> f64) -> SampledFunction {
        let values = rule.nodes.iter().map(|&x| f(x)).collect();
        SampledFunction { rule, values }
    }
}

fn check_compatible(op: &OperatorParams, g: &SampledFunction) -> Result<()> {
    if g.rule.params != op.weight || g.rule.order != op.quad_order {
        return Err(Error::Contract(format!(
            "sampled function rule (alpha={}, beta={}, order={}) does not match operator \
             (alpha={}, beta={}, order={})",
            g.rule.params.alpha,
            g.rule.params.beta,
            g.rule.order,
            op.weight.alpha,
            op.weight.beta,
            op.quad_order
        )));
    }
    Ok(())
}

/// Applies F_c to the sampled g at the point x.
pub fn apply_f(op: &OperatorParams, g: &SampledFunction, x: f64) -> Result<f64> {
    check_compatible(op, g)?;
    let c = op.c;
    Ok(g.rule
        .nodes
        .iter()
        .zip(&g.rule.weights)
        .zip(&g.values)
        .map(|((&y, &w), &gv)| w * (c * (x * y - 1.0)).exp() * gv)
        .sum())
}

/// Which evaluation route the composed-operator kernel takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    /// Quadrature of e^{ct(x+y)} against the weight.
    Direct,
    /// Closed form via the Whittaker M function (valid as written for
    /// x + y > 0; the limit value at x + y = 0; delegates to `Direct`
    /// for x + y < 0, where the series form is untested territory).
    Whittaker,
}

/// The kernel K(x, y) of Q_c = F_c* compose F_c.
pub fn kernel_k(op: &OperatorParams, x: f64, y: f64, method: KernelMethod) -> Result<f64> {
    let (a, b) = (op.weight.alpha, op.weight.beta);
    let c = op.c;
    let s = x + y;
    match method {
        KernelMethod::Direct => {
            let rule = gauss_jacobi(&op.weight, op.quad_order)?;
            Ok((-2.0 * c).exp() * rule.integrate(|t| (c * t * s).exp()))
        }
        KernelMethod::Whittaker => {
            if s == 0.0 {
                return Ok((-2.0 * c).exp() * op.weight.total_mass());
            }
            if s < 0.0 {
                return kernel_k(op, x, y, KernelMethod::Direct);
            }
            let z = 2.0 * c * s;
            let lambda = (a - b) / 2.0;
            let mu = (a + b + 1.0) / 2.0;
            let m = whittaker_m(WhittakerArgs::new(lambda, mu, z)?)?;
            Ok((-2.0 * c).exp()
                * 2f64.powf(a + b + 1.0)
                * beta_fn(a + 1.0, b + 1.0)?
                * m
                / z.powf((a + b + 2.0) / 2.0))
        }
    }
}

/// Applies Q_c to the sampled g at the point x.
pub fn apply_q(op: &OperatorParams, g: &SampledFunction, x: f64) -> Result<f64> {
    check_compatible(op, g)?;
    let mut acc = 0.0;
    for ((&y, &w), &gv) in g.rule.nodes.iter().zip(&g.rule.weights).zip(&g.values) {
        acc += w * kernel_k(op, x, y, KernelMethod::Direct)? * gv;
    }
    Ok(acc)
}

/// Symmetrized Nystrom matrix of F_c in double-double precision:
/// B_{jk} = sqrt(w_j w_k) e^{c (y_j y_k - 1)}.
pub(crate) fn nystrom_matrix_dd(rule: &QuadratureRule, c: f64) -> Vec<Vec<Dd>> {
    let n = rule.order;
    let cd = Dd::from_f64(c);
    let mut m = vec![vec![Dd::ZERO; n]; n];
    for j in 0..n {
        for k in j..n {
            let arg = cd * (rule.nodes_dd[j] * rule.nodes_dd[k] - Dd::ONE);
            let v = (rule.weights_dd[j] * rule.weights_dd[k]).sqrt() * arg.exp();
            m[j][k] = v;
            m[k][j] = v;
        }
    }
    m
}

/// Discretization of the imaginary-bandwidth operator: the complex symmetric
/// matrix B_{jk} = sqrt(w_j w_k) e^{i c y_j y_k} on the Gauss-Legendre rule.
///
/// Note: B equals its plain transpose but not its conjugate transpose; the
/// Hermitian object is the composed matrix from [`fourier_gram_matrix`].
pub fn fourier_matrix(c_tilde: f64, n_quad: usize) -> Result<Vec<Vec<Complex64>>> {
    if n_quad == 0 {
        return Err(Error::Domain("n_quad must be at least 1".into()));
    }
    let legendre = WeightParams::new(0.0, 0.0)?;
    let rule = gauss_jacobi(&legendre, n_quad)?;
    let n = n_quad;
    let mut b = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let sw = (rule.weights[j] * rule.weights[k]).sqrt();
            let phase = c_tilde * rule.nodes[j] * rule.nodes[k];
            b[j][k] = Complex64::new(sw * phase.cos(), sw * phase.sin());
        }
    }
    Ok(b)
}

/// The Hermitian composition B B^dagger of the Fourier discretization,
/// assembled directly in double-double precision. Its eigenvalues are the
/// squared eigenvalue magnitudes of the imaginary-bandwidth operator.
pub(crate) fn fourier_gram_dd(c_tilde: f64, n_quad: usize) -> Result<(Vec<Vec<Dd>>, Vec<Vec<Dd>>)> {
    let legendre = WeightParams::new(0.0, 0.0)?;
    let rule = gauss_jacobi(&legendre, n_quad)?;
    let n = n_quad;
    let ct = Dd::from_f64(c_tilde);
    let mut re = vec![vec![Dd::ZERO; n]; n];
    let mut im = vec![vec![Dd::ZERO; n]; n];
    for j in 0..n {
        for k in j..n {
            let sw = (rule.weights_dd[j] * rule.weights_dd[k]).sqrt();
            let diff = rule.nodes_dd[j] - rule.nodes_dd[k];
            let mut sr = Dd::ZERO;
            let mut si = Dd::ZERO;
            for m in 0..n {
                let (s, c) = (ct * rule.nodes_dd[m] * diff).sin_cos();
                sr = sr + rule.weights_dd[m] * c;
                si = si + rule.weights_dd[m] * s;
            }
            re[j][k] = sw * sr;
            re[k][j] = re[j][k];
            im[j][k] = sw * si;
            im[k][j] = -im[j][k];
        }
    }
    Ok((re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::jacobi_eig_dd;

    fn op(a: f64, b: f64, c: f64) -> OperatorParams {
        OperatorParams::with_defaults(WeightParams::new(a, b).unwrap(), c).unwrap()
    }

    #[test]
    fn apply_f_constant_closed_forms() {
        let o = op(0.0, 0.0, 1.5);
        let g = SampledFunction::from_fn(o.rule().unwrap(), |_| 1.0);
        let c = o.c;
        // x = 0: e^{-c} * 2
        let v0 = apply_f(&o, &g, 0.0).unwrap();
        assert!((v0 - 2.0 * (-c).exp()).abs() < 1e-13);
        // x = 1: (1 - e^{-2c})/c
        let v1 = apply_f(&o, &g, 1.0).unwrap();
        assert!((v1 - (1.0 - (-2.0 * c).exp()) / c).abs() < 1e-13);
    }

    #[test]
    fn apply_f_small_c_limit() {
        let weight = WeightParams::new(1.0, 0.5).unwrap();
        let o = OperatorParams::with_defaults(weight, 1e-10).unwrap();
        let rule = o.rule().unwrap();
        let g = SampledFunction::from_fn(rule.clone(), |y| y * y + 0.3);
        let direct: f64 = rule.integrate(|y| y * y + 0.3);
        let v = apply_f(&o, &g, 0.42).unwrap();
        assert!((v - direct).abs() < 1e-8);
    }

    #[test]
    fn rule_mismatch_is_contract_error() {
        let o = op(0.0, 0.0, 1.0);
        let other = Arc::new(gauss_jacobi(&WeightParams::new(1.0, 0.0).unwrap(), 40).unwrap());
        let g = SampledFunction::from_fn(other, |_| 1.0);
        assert!(matches!(apply_f(&o, &g, 0.0), Err(Error::Contract(_))));
    }

    #[test]
    fn kernel_limit_and_symmetry() {
        let o = op(0.0, 0.0, 1.0);
        let v = kernel_k(&o, 0.4, -0.4, KernelMethod::Whittaker).unwrap();
        assert!((v - 2.0 * (-2f64).exp()).abs() < 1e-13);

        let o = op(1.2, 0.7, 2.0);
        for &(x, y) in &[(0.3, 0.5), (-0.2, 0.8), (0.9, -0.1)] {
            let a = kernel_k(&o, x, y, KernelMethod::Direct).unwrap();
            let b = kernel_k(&o, y, x, KernelMethod::Direct).unwrap();
            assert!((a - b).abs() < 1e-15 * a.abs());
        }
    }

    #[test]
    fn kernel_cross_method_agreement() {
        for &(a, b, c) in &[(0.0, 0.0, 1.0), (3.0, 3.0, 1.0), (2.0, 3.0, 1.5), (5.0, 5.0, 6.0)] {
            let o = op(a, b, c);
            for i in 0..10 {
                for j in 0..10 {
                    let x = -0.95 + 0.21 * i as f64;
                    let y = 1.0 - 0.098 * j as f64;
                    if x + y <= 1e-6 {
                        continue;
                    }
                    let d = kernel_k(&o, x, y, KernelMethod::Direct).unwrap();
                    let w = kernel_k(&o, x, y, KernelMethod::Whittaker).unwrap();
                    assert!(
                        (d - w).abs() <= 1e-10 * d.abs(),
                        "(a,b,c,x,y) = ({a},{b},{c},{x},{y}): {d} vs {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_positive() {
        let o = op(2.0, 3.0, 1.5);
        for i in 0..8 {
            for j in 0..8 {
                let x = -0.9 + 0.25 * i as f64;
                let y = -0.9 + 0.25 * j as f64;
                assert!(kernel_k(&o, x, y, KernelMethod::Direct).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn q_equals_f_composed_twice() {
        let o = op(0.5, 1.5, 1.2);
        let rule = o.rule().unwrap();
        let g = SampledFunction::from_fn(rule.clone(), |_| 1.0);
        // F applied to g, resampled at the nodes, then F again
        let fg = SampledFunction::from_fn(rule.clone(), |x| apply_f(&o, &g, x).unwrap());
        for &x in &[-0.5, 0.0, 0.5] {
            let q = apply_q(&o, &g, x).unwrap();
            let ff = apply_f(&o, &fg, x).unwrap();
            assert!((q - ff).abs() < 1e-11, "x = {x}: {q} vs {ff}");
        }
    }

    #[test]
    fn discrete_self_adjointness() {
        // D A = A^T D with A_{jk} = w_k e^{c(y_j y_k - 1)}, D = diag(w)
        let o = op(1.0, 2.0, 2.0);
        let rule = o.rule().unwrap();
        let n = rule.order;
        for j in 0..n {
            for k in 0..n {
                let a_jk = rule.weights[k] * (o.c * (rule.nodes[j] * rule.nodes[k] - 1.0)).exp();
                let a_kj = rule.weights[j] * (o.c * (rule.nodes[k] * rule.nodes[j] - 1.0)).exp();
                let lhs = rule.weights[j] * a_jk;
                let rhs = rule.weights[k] * a_kj;
                assert!((lhs - rhs).abs() <= 1e-15 * lhs.abs().max(rhs.abs()));
            }
        }
    }

    #[test]
    fn nystrom_matrix_positive_definite() {
        let o = op(0.0, 0.0, 1.0);
        let rule = gauss_jacobi(&o.weight, 24).unwrap();
        let m = nystrom_matrix_dd(&rule, o.c);
        let (vals, _) = jacobi_eig_dd(m).unwrap();
        for v in &vals {
            assert!(v.to_f64() > -1e-14, "eigenvalue {} not positive", v.to_f64());
        }
        // everything above the double-double floor is strictly positive
        assert!(vals.iter().filter(|v| v.to_f64().abs() > 1e-28).all(|v| *v > Dd::ZERO));
    }

    #[test]
    fn fourier_matrix_structure() {
        let b = fourier_matrix(2.0, 12).unwrap();
        // plain symmetry
        for j in 0..12 {
            for k in 0..12 {
                assert_eq!(b[j][k], b[k][j]);
            }
        }
        // c -> 0: rank one with eigenvalue sum(w) = 2; check via trace of B B^dagger
        let b0 = fourier_matrix(1e-14, 12).unwrap();
        let mut trace = 0.0;
        for j in 0..12 {
            for k in 0..12 {
                trace += b0[j][k].norm_sqr();
            }
        }
        assert!((trace - 4.0).abs() < 1e-10); // sum of |lambda|^2 = 4 = 2^2
    }
}
