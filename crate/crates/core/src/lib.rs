//! Exact sheaf cohomology, regularity and splitting tests on toric scrolls
//! `P(O(a_0) ⊕ … ⊕ O(a_n))` over `P^m`.

pub mod cohomology;
pub mod complex;
pub mod conditions;
pub mod error;
pub mod hypercohom;
pub mod linalg;
pub mod oracle;
pub mod regularity;
pub mod scroll;
pub mod sheaf;
pub mod splitting;
pub mod verify;

pub use cohomology::{bundle_cohom, euler_char, line_cohom, CohomTable, SplitBundle};
pub use error::{Error, Result};
pub use scroll::{DivClass, Scroll};
pub use sheaf::{Evaluator, SheafSpec};

/// Tag stored with persisted results; bump when any computed value may change.
pub const ENGINE_VERSION: &str = concat!("scrollcoh-core/", env!("CARGO_PKG_VERSION"));
