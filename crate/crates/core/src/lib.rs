//! Exact lattice, graph and coordinate computations for finite group actions on real
//! del Pezzo surfaces.

pub mod exactnum;
pub mod linalg;
pub mod picard;
pub mod weyl;
pub mod minimality;
pub mod confgraphs;
pub mod dp4;
pub mod explicitlines;
pub mod invforms;
pub mod dp1;
pub mod fixtures;
pub mod tables;

pub use exactnum::{CycloNum, Rational};
pub use linalg::Matrix;

pub type IntMatrix = Matrix<i64>;
pub type RatMatrix = Matrix<Rational>;
pub type CycloMatrix = Matrix<CycloNum>;
