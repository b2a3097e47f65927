//! Exact-arithmetic computer algebra for Lie-Butcher series.
//!
//! The basis objects are planar rooted forests ([`forest`]); series are
//! finitely supported rational linear combinations truncated at a fixed
//! order ([`series`]). On top of that sit the combinatorial Hopf algebra
//! structures ([`hopf`], [`cuts`]), the classical Lie idempotents and
//! noncommutative Bell polynomials ([`idempotents`]), the substitution law
//! ([`substitution`]), and flow representations with backward error
//! analysis ([`flows`]).
//!
//! ```
//! use lbseries::{Forest, Series, Product};
//! use lbseries::flows::{backward_error, method_euler};
//!
//! let vertex = Series::basis(4, &Forest::parse("()").unwrap());
//! let euler = Product::Concatenation.exponential(&vertex).unwrap();
//! assert_eq!(euler, method_euler(4));
//!
//! let modified = backward_error(&euler).unwrap();
//! assert_eq!(
//!     modified.coeff(&Forest::parse("(())").unwrap()),
//!     lbseries::rational::rat(-1, 2),
//! );
//! ```

pub mod cuts;
pub mod error;
pub mod flows;
pub mod forest;
pub mod golden;
pub mod hopf;
pub mod idempotents;
pub mod json;
pub mod rational;
pub mod render;
pub mod sampling;
pub mod selftest;
pub mod series;
pub mod substitution;

pub use error::{Error, Result};
pub use forest::{enumerate, forests_of_order, trees_of_order, Forest, Tree};
pub use rational::Rational;
pub use series::{Product, Series};
