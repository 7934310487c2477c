//! Poincare-Miranda certificates for planar boxes.
//!
//! A certificate proves that each component of a suitably ordered and
//! signed system is strictly negative on one face of its axis and strictly
//! positive on the opposite face, which implies a zero inside the box. Face
//! signs come from one of three backends: Sturm sequences for polynomial
//! restrictions, Taylor sandwiches for trigonometric-exponential
//! functions, and interval enclosures over adaptive subdivisions.

mod adaptive;
mod cert;
mod lemma;
mod poly;
mod recheck;

pub use adaptive::{bits_for_digits, expression_faces, pm_check_adaptive, prove_sign_adaptive, AdaptiveFace};
pub use cert::{
    assemble, orientation_of, orientations, FaceProof, NotCertified, Orientation, PMCertificate, Payload, Piece,
    PmOutcome, SystemDesc, ZERO_EXISTS, precondition,
};
pub use lemma::{
    m_bar, pm_check_lemma, prove_lemma_face, sandwich_side, taylor_coefficient, taylor_poly_bounds, LemmaFace,
    LemmaForm, TaylorBoundParams, TaylorBounds,
};
pub use poly::{face_restriction, jacobian_preconditioner, pm_check_poly, pm_check_poly_auto, pm_check_poly_preconditioned};
pub use recheck::recheck;
