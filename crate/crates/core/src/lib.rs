//! Exact cohomology of Alexander f-quandles `x * y = ωx + βy` over finite
//! fields: field arithmetic, cochains as reduced polynomials, the
//! coboundary operator, dense linear algebra over F_q, named cocycle
//! families, and verification reports.

pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod generators;
pub mod gfq;
pub mod linalg;
pub mod quandle;
pub mod report;
pub mod verify;

pub use cochain::{delta_pointwise, delta_poly, is_quandle_cochain, UCochain};
pub use cohomology::{h_dim, CohomologyReport};
pub use error::{Error, Result};
pub use gfq::{Elem, FieldElement, FieldSpec};
pub use linalg::GFqMatrix;
pub use quandle::AlexanderFQuandle;
pub use report::{Status, VerificationReport};
