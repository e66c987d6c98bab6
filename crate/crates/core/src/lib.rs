pub mod algebra;
pub mod axial;
pub mod designs;
pub mod exact;
pub mod idempotents;
pub mod outcome;
pub mod perm;

pub use outcome::Outcome;
