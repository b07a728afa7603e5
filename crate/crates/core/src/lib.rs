//! Exact arithmetic on integral lattices: cones, reflections, enumeration of
//! vectors of fixed square, Coxeter analysis of root orbits, nonabelian
//! first cohomology of finite groups and effective bounds.

pub mod arith;
pub mod bounds;
pub mod cohomology;
pub mod cone;
pub mod coxeter;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod par;
pub mod reflection;
pub mod snf;

pub use arith::{Int, IntVector, Rat, RatVector};
pub use error::{Error, Result};
pub use lattice::{Isometry, Lattice, LatticeAction};
