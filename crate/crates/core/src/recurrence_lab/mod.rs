//! Toeplitz-determinant tools for sequences: recurrence detection,
//! minimal recurrences, the Dodgson condensation identity, extension of a
//! sequence by vanishing determinants, and a search for polynomial
//! recurrences.

mod dodgson;
mod extend;
mod linear;
mod polyrec;
mod toeplitz;

pub use dodgson::{dodgson_check, DodgsonWitness};
pub use extend::extend_sequence;
pub use linear::{
    detect_linear_recurrence, minimal_recurrence, Detection, MinimalRecurrence, RecurrenceReport,
    WindowEvidence,
};
pub use polyrec::{
    find_polynomial_recurrence, monomials, verify_poly_relation, PolyRelation, PolyVerdict,
};
pub use toeplitz::{toeplitz_det, toeplitz_matrix, toeplitz_window};
