//! Exact cohomology ranks for generalized dodecagonal cut-and-project
//! tilings with translation parameter in Q(√3)².

pub mod cyclotomic;
pub mod error;
pub mod exactfield;
pub mod homalg;
pub mod lineorbits;
pub mod oracle;
pub mod pointorbits;
pub mod report;
pub mod selftest;
pub mod window;

pub use cyclotomic::{PlanePoint, TransLattice};
pub use error::{Error, Result};
pub use exactfield::{CosetRep, LatticeId, QuadRat};
pub use lineorbits::{GammaParam, LineOrbitSet, SingularLine};
pub use pointorbits::IntersectionTables;
pub use report::{compute, compute_with, CohomologyReport, LineSource};
pub use window::{Cube, Window, WindowReport};
