//! Exact arithmetic for integral lattices, Heegaard Floer correction terms of integer
//! surgeries, and the lattice-filling obstruction pipeline built on them.

pub mod error;
pub mod intmat;
pub mod lattice;
pub mod low_rank;
pub mod reduce;
pub mod enumerate;
pub mod names;
pub mod roots;
pub mod isometry;
pub mod recognize;
pub mod floer;
pub mod constructions;
pub mod sweep;
pub mod obstruction;
mod par;

pub use error::{Error, Result};
pub use lattice::{Covector, Lattice, LatticeVector, Signature};
