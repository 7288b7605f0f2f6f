//! Two-center Coulomb problem in d dimensions for three-particle XXY systems
//! in the Born-Oppenheimer approximation.
//!
//! The pipeline: variational electronic terms U_{s,a}(R) in a Gaussian pair
//! basis -> shifted terms V(R) -> constrained rational approximants ->
//! vibrational spectra, critical masses and stability diagrams. Side modules
//! evaluate the large-R / short-R series, exchange splitting, generalized
//! Stark law and d-dimensional multipole moments of hydrogen-like states.
//!
//! Everything is in Coulomb units (hbar = e = light mass = 1); the space
//! dimension d enters through sigma = (d-1)/2 and is allowed to be fractional.

pub mod asym;
pub mod basis;
pub mod dim;
pub mod eigen;
pub mod elements;
pub mod error;
pub mod fit;
pub mod io;
pub mod model;
pub mod multipole;
pub mod par;
pub mod quad;
pub mod term;
pub mod vib;

pub use dim::DimensionParams;
pub use error::Error;
pub use fit::RationalApprox;
pub use model::{Symmetry, TermCurve, TermPoint, TermSource};

pub type Result<T> = std::result::Result<T, Error>;
