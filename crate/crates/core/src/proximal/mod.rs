//! Verification engine: proximal continuity of maps and one named check per
//! structural result, collected into ordered reports.

mod checks;
mod continuity;
mod options;
mod report;
mod scan;
mod structure;

pub use checks::{
    audit_invertibility, check_closed_set_props, check_multiplicative_maps, check_sandwich_and_swap,
    check_translation_homos, product_structure, registry, run_checks, run_full_suite, verify_product,
    verify_proximal_field, verify_proximal_group, verify_proximal_module, verify_proximal_ring,
    verify_subring_restriction, ADD, CLOSED_SETS, INV, INVERSION, INVERTIBILITY, MODULE_ADD, MODULE_INV, MODULE_MUL,
    MODULE_SCALAR_MAPS, MUL, MULTIPLICATIVE_MAPS, SANDWICH_SWAP, TRANSLATION_HOMOS,
};
pub use continuity::{check_pro_con, check_pro_con_with, check_pro_homo, check_pro_homo_with};
pub use options::{
    ProductMode, ScanOptions, Strategy, CLOSED_SET_CAP, FULL_PRODUCT_CAP, RECTANGLE_CAP, RECTANGLE_CAP_UNSAFE,
    UNARY_CAP,
};
pub use report::{CheckResult, DetailValue, SuiteReport, Verdict, Witness, WitnessKind};
pub use structure::{ProximalStructure, StructureKind};
