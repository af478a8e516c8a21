//! Exact computations of linear systems with fat points on the Atiyah ruled
//! surface over an elliptic curve.

pub mod atiyah;
pub mod curve;
pub mod error;
pub mod fat;
pub mod field;
pub mod lab;
pub mod matrix;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
