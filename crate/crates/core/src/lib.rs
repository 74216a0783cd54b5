//! Finite-dimensional incompressible Euler flow on a periodic cubic lattice.
//!
//! The state is a 2-chain of 2h-squares on a lattice of odd period N, evolved
//! by the quadratic ODE Ẋ = π(i(X ⋔ *∂X)): the transverse intersection of the
//! state with its discrete curl, rewritten on infinitesimal sticks and pressure-
//! projected back onto the divergence-free subspace V = Im(*∂).  The metric,
//! linking form and triple bracket built from the intersection pairing make
//! energy (X, X) and helicity (X, *∂X) exact invariants of the semidiscrete
//! flow, which the conservation diagnostics track.
//!
//! Layers:
//! - [`lattice`], [`chain`]: periodic indexing and the graded chain spaces.
//! - [`complex`]: boundary/star/augmentation operators and the 2h cell complex.
//! - [`intersection`]: transverse products and the three fluid-algebra forms.
//! - [`vorticity`]: the curl and the nonlinear term by two independent paths.
//! - [`hodge`]: the r-map, lattice Poisson solvers, Hodge split and projector π.
//! - [`sim`]: state initialization, integrators, conservation diagnostics.
//! - [`config`], [`io`]: run configuration, CSV diagnostics, binary snapshots.

pub mod chain;
pub mod checks;
pub mod complex;
pub mod config;
pub mod error;
pub mod hodge;
pub mod intersection;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod scalar;
pub mod sim;
pub mod vorticity;

pub use chain::{Chain0, Chain1, Chain2, TwoHChain1};
pub use config::{InitRecipe, Integrator, ScalarMode, SimConfig};
pub use error::Error;
pub use hodge::GreenSet;
pub use lattice::{Axis, Field, Lattice, Plane, Site};
pub use scalar::{Rational, Scalar};
pub use sim::{Diagnostics, FluidState};
