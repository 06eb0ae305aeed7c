//! Finite rings, groups, and modules as Cayley tables.

pub mod builtin;
mod group;
mod module;
mod ring;
mod table;

pub use builtin::{boolean_ring, field_gf, ring_multiples, ring_zn};
pub use group::FiniteGroup;
pub use module::{build_module, direct_product_module, FiniteModule};
pub use ring::{
    audit_ring, build_ring, direct_product_ring, is_isomorphism, set_arithmetic, units_and_inverses, FiniteRing,
    LawVerdict, RingAuditReport, SetOp, Units,
};
pub use table::{render_table, OpTable};
