//! Generalized oblate spheroidal wave functions (GOSWFs): eigenfunctions of
//! the finite weighted bilateral Laplace transform
//!
//! F_c[g](x) = integral over (-1,1) of e^{c(xy-1)} g(y) (1-y)^alpha (1+y)^beta dy,
//!
//! computed by two independent routes (a commuting differential operator and
//! a Nystrom discretization), together with Gauss-Jacobi quadrature, the
//! closed-form kernel of the composed operator, the classical PSWF eigenvalue
//! ladder as the imaginary-bandwidth special case, and N-term approximation
//! of band-limited functions.
//!
//! # Quick start
//!
//! ```
//! use goswf::jacobi::WeightParams;
//! use goswf::laplace::OperatorParams;
//! use goswf::basis::solve_method1;
//!
//! let weight = WeightParams::new(0.0, 0.0)?;        // Legendre weight
//! let op = OperatorParams::with_defaults(weight, 1.0)?;
//! let basis = solve_method1(&op, 4, None)?;
//! assert!((basis.mu[0] - 0.779836289).abs() < 1e-8);
//! # Ok::<(), goswf::Error>(())
//! ```

pub mod approx;
pub mod basis;
pub mod cli;
pub mod dd;
pub mod eigen;
pub mod error;
pub mod jacobi;
pub mod laplace;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
