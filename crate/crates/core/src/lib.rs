//! Numerical and closed-form solvers for the nonlinear family
//! `dz/dx + a(x) z^2 = f(x)`.
//!
//! The central idea: substituting `y = a z - a'/(2a)` turns the nonlinear
//! equation into `y' + y^2 = F(x)` with `F = a f - a''/(2a) + 3a'^2/(4a^2)`,
//! and `y = q'/q` then reduces that to the *linear* second-order equation
//! `q'' = F(x) q`. Integrating the linear system `(q, p = q')` and
//! reconstructing `z = p/(a q) + a'/(2a^2)` therefore solves the nonlinear
//! equation — and keeps going through the poles of `z`, which are just the
//! simple zeros of `q`.
//!
//! Modules:
//! - [`expr`]: parse/evaluate/differentiate the coefficient expressions.
//! - [`transform`]: the substitution, its inverse, and reconstruction.
//! - [`integrate`]: adaptive RK45 for the linear and direct paths, with
//!   pole detection and blow-up handling.
//! - [`special`]: Bessel functions J, Y, I, K for real order.
//! - [`families`]: closed-form solution families used as oracles.
//! - [`verify`]: residual reports, cross-method comparison, and the
//!   converse construction lifting a solution back to `(p, q)`.
//! - [`output`]: CSV/JSON emission with 17-significant-digit numbers.
//! - [`cli`]: the `riccati` command-line frontend.

pub mod cli;
pub mod expr;
pub mod families;
pub mod integrate;
pub mod output;
pub mod special;
pub mod transform;
pub mod verify;

pub use expr::{parse, Expr};
