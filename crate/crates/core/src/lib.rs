//! Exact computations with free-fermionic six-vertex R-matrices.
//!
//! Everything is exact over ℚ: the Kac-module R-matrices of the (1|1)
//! quantum group and their Yang–Baxter equations, the Γ/Δ Tokuyama
//! weights, lattice partition functions, and the affine evaluation
//! matrices. [`verify`] collects the checks into named suites.

pub mod affine;
pub mod exactalg;
pub mod lattice;
pub mod quantumgroup;
pub mod sixvertex;
pub mod symfunc;
pub mod verify;
pub mod ybe;
