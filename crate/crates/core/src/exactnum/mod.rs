//! Exact rationals, integer matrices and lattice tools.

pub mod fixed;
pub mod hnf;
pub mod intmatrix;
pub mod lattice;
pub mod rational;
pub mod snf;

pub use fixed::Fixed;
pub use hnf::{hermite_normal_form, lattice_contains, lattice_coordinates};
pub use intmatrix::IntMatrix;
pub use lattice::{closest_vector_approx, enumerate_near, lattice_reduce, lll_with_transform, CvpResult, LatticeBasis, Scalar, LLL_DELTA};
pub use rational::{rat_add, rat_lcm_den, rat_mul, Rational};
pub use snf::{smith_normal_form, SmithDecomposition};
