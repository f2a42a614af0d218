//! Finitely presented truncations, Hensel lifting, Kähler differentials,
//! low-degree André-Quillen groups, the height-one relation and the 2-adic
//! function algebra.

mod aq;
mod en;
mod hensel;
mod kahler;
mod ko;
mod lcf;
mod presentation;
mod snf;
mod tower;

pub use aq::{aq_low, AqLow, BaseModule, ModuleDescriptor};
pub use en::{en_presentation_check, iteration_count, EnCertificate};
pub use hensel::{
    hensel_lift, hensel_step, hensel_step_values, hensel_tower_values, HenselReport, HenselStep,
};
pub use kahler::{det_in_quotient, jacobian_in_quotient, kahler_rank, KahlerVerdict};
pub use ko::{digit_function, ko_membership, verify_xi_basis, xi_monomial, XiBasisReport};
pub use lcf::{binomial_table, LocallyConstantFn, MAX_TABLE};
pub use presentation::{BaseRing, FinitePresentation, MPoly, RelTerm};
pub use snf::{smith_normal_form, smith_normal_form_mod, SnfResult};
pub use tower::{
    truncation_presentation, truncation_tower, StructureTable, TowerLevel, TowerReport,
    FULL_TABLE_LIMIT,
};
