//! Parameterized approximation schemes, approximate kernels and exact oracles
//! for Maximum Independent Set of Rectangles (MISR) and 2D geometric knapsack
//! with rotations (2DKR), plus the Multi-Subset Sum hardness gadget.
//!
//! Geometry is generic over an exact [`Scalar`]; the aliases below fix the two
//! scalars the pipelines actually use: `i64` for input coordinates and
//! [`Frac`] for rounded packings.

pub mod geometry;
pub mod gknap;
pub mod hardness;
pub mod io;
pub mod misr;
pub mod oracle;
pub mod param;
pub mod planar;
pub mod scalar;

pub use param::Epsilon;
pub use scalar::Scalar;

/// Exact rational used for rounded knapsack dimensions and shifted coordinates.
pub type Frac = num_rational::Ratio<i128>;

pub type Rect = geometry::Rect<i64>;
pub type Item = geometry::Item<i64>;
pub type Placement = geometry::Placement<i64>;
pub type Packing = geometry::Packing<i64>;

pub type FracItem = geometry::Item<Frac>;
pub type FracPacking = geometry::Packing<Frac>;

pub use geometry::{KnapsackInstance, MisrInstance};

/// Surviving object indices of a kernelization together with the parameters
/// that produced them.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct KernelReport {
    pub indices: Vec<usize>,
    pub params: KernelParams,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelParams {
    Misr { k: usize, c: usize, b: usize, cell_sets: usize },
    Knapsack { k_prime: usize, k_tilde: u128 },
}

/// The dichotomy returned by both approximation schemes.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PasOutcome<T> {
    Solution(T),
    /// No solution of size k exists; `sound` tells whether the knob setting
    /// makes this a proof rather than a heuristic verdict.
    OptBelowK {
        sound: bool,
    },
}
