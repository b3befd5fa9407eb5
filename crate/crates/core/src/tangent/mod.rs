//! Bouligand-Severi tangents: cones, limit directions of probe sequences
//! and the outgoing test.

mod cone;
mod direction;
mod outgoing;
mod surd;

pub use cone::{cone_contains, count_in_cone, polytope_meets_cone, Cone, ConeCount};
pub use direction::{limit_direction, surd_direction, DirectionVerdict, IrrationalCertificate};
pub use outgoing::{
    default_lambda_max, is_outgoing, tangent_report, Obstruction, Outgoing, TangentWitness,
};
pub use surd::QuadSurd;
