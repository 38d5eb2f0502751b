//! Fractional and integer k-metric dimension of graphs with exact rational
//! arithmetic.

pub mod distance;
pub mod error;
pub mod families;
pub mod frac;
pub mod graph;
pub mod integer;
pub mod lp;
pub mod pairs;
pub mod rational;
pub mod tree;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use frac::{DimensionResult, ResolvingFunction};
pub use graph::{Graph, Vertex};
pub use integer::IntegerDimResult;
pub use pairs::PairSystem;
pub use rational::Rational;
