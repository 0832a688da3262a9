//! Triangular uniformization certificates, their verifier, the construction
//! for monomial places and composition of layered systems.

mod abhyankar;
mod ambient;
mod compose;
mod system;
mod verify;

pub use abhyankar::uniformize_abhyankar;
pub use ambient::{Ambient, PlaceValue};
pub use compose::compose;
pub use system::{GeneratorExpr, TriangularSystem};
pub use verify::{
    jacobian_determinant_full, verify, CheckResult, GenerationReport, U1Report, U2Report, U3Report,
    ValueResidue, VerificationReport,
};
