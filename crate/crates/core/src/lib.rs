//! Exact verification of metric identities in inner product spaces.
//!
//! Identities such as the parallelogram law, Apollonius' identity, Euler's
//! quadrilateral theorem, the centroid identities and the generalized Euler
//! identity for `n >= 4` points are stated as pairs of [`QuadraticForm`]s over
//! Gram entries `‖x_i‖²` and `Re(x_i, x_j)`. An identity holds for every inner
//! product space, real or complex, exactly when the difference of its two
//! sides has every coefficient equal to zero.
//!
//! The [`models`] module evaluates the same forms on concrete point
//! configurations (exact rational, floating real and complex, and a weighted
//! polynomial space).

pub mod acceptance;
pub mod combinatorics;
pub mod config_file;
pub mod error;
pub mod identities;
pub mod models;
pub mod quadform;
pub mod rational;
pub mod sampling;

pub use error::{Error, Result};
pub use quadform::{FormalVector, GramMatrix, PointSymbol, QuadraticForm, Scalar};
pub use rational::Rational;
