//! Orthonormal Jacobi polynomials for the weight (1-x)^alpha (1+x)^beta.
//!
//! All basis work uses the orthonormal family **P**_n = P_n / sqrt(a_n), so
//! the multiplication-by-x matrix is symmetric tridiagonal and downstream
//! eigenvectors come out unit-norm. The recurrence coefficients are rational
//! in (n, alpha, beta), which lets them be evaluated in either `f64` or
//! double-double precision from the same code path.

use crate::dd::Scalar;
use crate::error::{Error, Result};
use crate::special::{beta_fn, ln_gamma};

/// The Jacobi weight exponents. Every computation in the crate carries one.
#[derive(Clone, Copy, Debug, PartialEq)]
/// The Jacobi weight (1-x)^alpha (1+x)^beta on (-1, 1), alpha, beta > -1.
///
/// ```
/// use goswf::jacobi::{eval_normalized, WeightParams};
///
/// let legendre = WeightParams::new(0.0, 0.0)?;
/// // the degree-1 orthonormal polynomial under the unit weight is sqrt(3/2) x
/// let v = eval_normalized(&legendre, 1, 0.5)?;
/// assert!((v - (1.5f64).sqrt() * 0.5).abs() < 1e-15);
/// # Ok::<(), goswf::Error>(())
/// ```
pub struct WeightParams {
    pub alpha: f64,
    pub beta: f64,
}

impl WeightParams {
    pub fn new(alpha: f64, beta: f64) -> Result<WeightParams> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::Domain(format!(
                "weight exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(WeightParams { alpha, beta })
    }

    /// The weight evaluated at x.
    pub fn weight(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.alpha) * (1.0 + x).powf(self.beta)
    }

    /// Total mass of the weight: 2^{alpha+beta+1} B(alpha+1, beta+1).
    pub fn total_mass(&self) -> f64 {
        2f64.powf(self.alpha + self.beta + 1.0) * beta_fn(self.alpha + 1.0, self.beta + 1.0).unwrap()
    }

    /// log of the squared norm a_n of the unnormalized P_n.
    pub fn ln_a_norm(&self, n: usize) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(nf + a + 1.0).unwrap()
            + ln_gamma(nf + b + 1.0).unwrap()
            - ln_gamma(nf + 1.0).unwrap()
            - (a + b + 2.0 * nf + 1.0).ln()
            - ln_gamma(a + b + nf + 1.0).unwrap()
    }

    pub fn a_norm(&self, n: usize) -> f64 {
        self.ln_a_norm(n).exp()
    }
}

/// Ratio a_{n+1}/a_n, rational in n, evaluated in the requested precision.
fn a_ratio<S: Scalar>(p: &WeightParams, n: usize) -> S {
    let a = S::from_f64(p.alpha);
    let b = S::from_f64(p.beta);
    let s = a + b;
    let nf = S::from_f64(n as f64);
    let one = S::one();
    let two = S::from_f64(2.0);
    let num = (nf + a + one) * (nf + b + one) * (s + two * nf + one);
    let den = (nf + one) * (s + nf + one) * (s + two * nf + S::from_f64(3.0));
    num / den
}

/// Upward-recurrence coefficients (A_n, B_n, C_n) for the orthonormal family:
/// **P**_{n+1} = (A_n x - B_n) **P**_n - C_n **P**_{n-1}. C_0 is returned as 0.
pub fn recurrence_coeffs<S: Scalar>(p: &WeightParams, n: usize) -> (S, S, S) {
    let a = S::from_f64(p.alpha);
    let b = S::from_f64(p.beta);
    let s = a + b;
    let nf = S::from_f64(n as f64);
    let one = S::one();
    let two = S::from_f64(2.0);
    let inv_sqrt_r = one / a_ratio::<S>(p, n).sqrt();
    let t1 = two * nf + s + one;
    let t2 = two * nf + s + two;
    let den = two * (nf + one) * (nf + s + one);
    let cap_a = inv_sqrt_r * t1 * t2 / den;
    let b2a2 = (b - a) * (b + a);
    let cap_b = if p.beta * p.beta == p.alpha * p.alpha {
        S::zero()
    } else {
        inv_sqrt_r * b2a2 * t1 / (den * (two * nf + s))
    };
    let cap_c = if n == 0 {
        S::zero()
    } else {
        let inv_sqrt_rr = one / (a_ratio::<S>(p, n - 1) * a_ratio::<S>(p, n)).sqrt();
        inv_sqrt_rr * (a + nf) * (b + nf) * t2
            / ((nf + one) * (nf + s + one) * (two * nf + s))
    };
    (cap_a, cap_b, cap_c)
}

/// One order of the recurrence with both the (A, B, C) and the symmetric
/// (alpha_k, beta_k, gamma_k) forms, plus the norm constants.
#[derive(Clone, Copy, Debug)]
pub struct JacobiRecurrence {
    pub order: usize,
    pub a_norm: f64,
    pub cap_a: f64,
    pub cap_b: f64,
    pub cap_c: f64,
    pub lower_alpha: f64,
    pub lower_beta: f64,
    pub lower_gamma: f64,
}

impl JacobiRecurrence {
    pub fn at(p: &WeightParams, order: usize) -> JacobiRecurrence {
        let (cap_a, cap_b, cap_c) = recurrence_coeffs::<f64>(p, order);
        JacobiRecurrence {
            order,
            a_norm: p.a_norm(order),
            cap_a,
            cap_b,
            cap_c,
            lower_alpha: 1.0 / cap_a,
            lower_beta: cap_b / cap_a,
            lower_gamma: cap_c / cap_a,
        }
    }

    /// Leading coefficient k_n of the unnormalized P_n.
    pub fn leading_coefficient(p: &WeightParams, n: usize) -> f64 {
        let (a, b) = (p.alpha, p.beta);
        let nf = n as f64;
        (ln_gamma(2.0 * nf + a + b + 1.0).unwrap()
            - nf * std::f64::consts::LN_2
            - ln_gamma(nf + 1.0).unwrap()
            - ln_gamma(nf + a + b + 1.0).unwrap())
        .exp()
    }
}

/// Coefficients (alpha_k, beta_k, gamma_k) of
/// x **P**_k = alpha_k **P**_{k+1} + beta_k **P**_k + gamma_k **P**_{k-1}.
pub fn x_action<S: Scalar>(p: &WeightParams, k: usize) -> (S, S, S) {
    let (cap_a, cap_b, cap_c) = recurrence_coeffs::<S>(p, k);
    (S::one() / cap_a, cap_b / cap_a, cap_c / cap_a)
}

/// The five coefficients of x^2 **P**_k on (**P**_{k+2}, ..., **P**_{k-2}).
pub fn x_squared_action<S: Scalar>(p: &WeightParams, k: usize) -> (S, S, S, S, S) {
    let (ak, bk, gk) = x_action::<S>(p, k);
    let (ak1, bk1, _) = x_action::<S>(p, k + 1);
    let (akm1, bkm1) = if k >= 1 {
        let (a, b, _) = x_action::<S>(p, k - 1);
        (a, b)
    } else {
        (S::zero(), S::zero())
    };
    let gk1 = {
        // gamma_{k+1}
        let (_, _, g) = x_action::<S>(p, k + 1);
        g
    };
    let gkm1 = if k >= 2 {
        let (_, _, g) = x_action::<S>(p, k - 1);
        g
    } else {
        S::zero()
    };
    (
        ak * ak1,
        ak * (bk1 + bk),
        ak * gk1 + bk * bk + gk * akm1,
        gk * (bk + bkm1),
        gk * gkm1,
    )
}

/// Jacobi differential-operator eigenvalue chi_k(0) = k(k+alpha+beta+1).
pub fn chi_zero(p: &WeightParams, k: usize) -> f64 {
    let kf = k as f64;
    kf * (kf + p.alpha + p.beta + 1.0)
}

fn check_x(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// **P**_n(x) by upward three-term recurrence.
pub fn eval_normalized(p: &WeightParams, n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(eval_normalized_generic::<f64>(p, n, x, p.total_mass()))
}

/// Generic evaluation; `mass` is the total weight mass a_0 (passed in `f64`
/// because it only rescales uniformly).
pub fn eval_normalized_generic<S: Scalar>(p: &WeightParams, n: usize, x: f64, mass: f64) -> S {
    let x = S::from_f64(x);
    let mut prev = S::zero();
    let mut cur = S::one() / S::from_f64(mass).sqrt();
    for k in 0..n {
        let (cap_a, cap_b, cap_c) = recurrence_coeffs::<S>(p, k);
        let next = (cap_a * x - cap_b) * cur - cap_c * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx **P**_n(x) by the differentiated upward recurrence.
pub fn eval_derivative(p: &WeightParams, n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    let mass = p.total_mass();
    let mut prev = 0.0;
    let mut cur = 1.0 / mass.sqrt();
    let mut dprev = 0.0;
    let mut dcur = 0.0;
    for k in 0..n {
        let (cap_a, cap_b, cap_c) = recurrence_coeffs::<f64>(p, k);
        let next = (cap_a * x - cap_b) * cur - cap_c * prev;
        let dnext = (cap_a * x - cap_b) * dcur + cap_a * cur - cap_c * dprev;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    Ok(dcur)
}

/// Clenshaw summation of sum_k coeffs[k] **P**_k(x).
pub fn clenshaw_series<S: Scalar>(p: &WeightParams, coeffs: &[f64], x: S, mass: f64) -> S {
    let mut b1 = S::zero();
    let mut b2 = S::zero();
    for k in (0..coeffs.len()).rev() {
        let (cap_a, cap_b, cap_c1) = if k + 1 < coeffs.len() {
            let (_, _, c) = recurrence_coeffs::<S>(p, k + 1);
            let (a, b, _) = recurrence_coeffs::<S>(p, k);
            (a, b, c)
        } else {
            let (a, b, _) = recurrence_coeffs::<S>(p, k);
            (a, b, S::zero())
        };
        let bk = S::from_f64(coeffs[k]) + (cap_a * x - cap_b) * b1 - cap_c1 * b2;
        b2 = b1;
        b1 = bk;
    }
    b1 / S::from_f64(mass).sqrt()
}
