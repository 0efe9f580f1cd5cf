//! Simplicial complexes, Eckmann Laplacians, and high-dimensional expansion
//! quantities: spectral gap, Cheeger constant, mixing discrepancy, and
//! geometric overlap.

pub mod complex;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod overlap;
pub mod random;
pub mod report;
pub mod spectral;

pub use complex::{binomial, Cell, OrientedCell, SimplicialComplex};
pub use error::{Error, Result};
pub use expansion::{ExpansionReport, Method, MixingReport, Partition, Ratio};
pub use operators::{Form, OperatorMatrix, Role};
pub use overlap::{DepthResult, Placement};
pub use random::{ExperimentResult, LmParams};
pub use report::Report;
pub use spectral::SpectralReport;
