//! Exact invariants of transversal curve arrangements on geometrically ruled
//! surfaces: Harbourne constants, Chern numbers of the associated (Z/2)^(d-1)
//! branched covers, Hirzebruch-type inequalities, and ball-quotient feasibility.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod arrangement;
pub mod ballquotient;
pub mod bounds;
pub mod covering;
pub mod error;
pub mod incidence;
pub mod num;
pub mod pullback;
pub mod surface;

pub use arrangement::{ArrangementProfile, CheckName, CheckStatus, ProfileStats, ValidationReport};
pub use error::{Error, Result};
pub use incidence::{AuditReport, CurveStats, IncidenceStructure};
pub use num::Rational;
pub use pullback::{klein, pullback, wiman, LineArrangement};
pub use surface::{NumClass, RuledSurface};
