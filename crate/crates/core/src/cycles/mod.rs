//! Odd vanishing cycles: enumeration, shells, closed forms, bilinear forms and holes.

pub mod closed_form;
pub mod enumerate;
pub mod forms;
pub mod holes;
pub mod shells;

pub use closed_form::{closed_form_member, closed_form_orbit, Lattice};
pub use enumerate::{enumerate, enumerate_by_age, enumerate_in_disk, Bound, CycleRecord};
pub use holes::{find_hole, HoleCertificate};
pub use shells::{shell_table, ShellTable};
