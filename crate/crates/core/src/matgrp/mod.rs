//! Small dense matrices over finite fields and the groups `SL2`, `SL3`,
//! `Sp4` (with their central quotients): membership, element orders, exact
//! uniform samplers, enumeration and conjugacy classes.

mod classes;
mod closure;
mod group;
pub mod linalg;
mod matrix;
mod sample;
mod semisimple;

pub use classes::{
    all_classes, classes_of_order, conjugacy_class, elements_of_order, ClassSpec, EnumeratedClass,
};
pub use closure::{close, enumerate_group, Closure};
pub use group::{Family, GroupSpec, MatKey};
pub use matrix::{MatrixSpace, SquareMatrix, MAX_DIM};
pub use sample::{sample_class, sample_lift, sample_uniform};

/// Default bound on the group order for enumeration and closure.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// `group_contains` in function form.
pub fn group_contains(spec: &GroupSpec, m: &SquareMatrix) -> crate::Result<bool> {
    spec.contains(m)
}

/// Element order in the group (modulo the centre for quotients).
pub fn element_order(spec: &GroupSpec, m: &SquareMatrix, cap: u128) -> crate::Result<u128> {
    spec.element_order(m, cap)
}
