//! Association schemes of unitary groups acting on isotropic vectors.

pub mod chartable;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod relation;
pub mod scheme;
pub mod unitary;
pub mod verify;

pub use chartable::{char_table_closed, CharTable, Fusion};
pub use eisenstein::Eisenstein;
pub use error::{Error, Result};
pub use field::{FieldElem, FieldTables};
pub use relation::{Layout, Range, RelationLabel};
pub use scheme::{BuildMode, SchemeDescriptor};
pub use unitary::{isotropic_count, IsoVector, UnitarySpace};
pub use verify::{run_verification, VerificationReport};
