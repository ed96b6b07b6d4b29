//! d-ary Sidel'nikov sequences over `F_d`: construction, linear and k-error
//! linear complexity, cyclotomic numbers, and the lower bounds and exact
//! predictions that tie them together.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod complexity;
pub mod cyclotomy;
pub mod error;
pub mod field;
pub mod sequence;

pub use error::{Error, Result};
pub use field::FieldCtx;
pub use sequence::{sidelnikov_subsequence, ErrorPattern, PeriodicSequence};
