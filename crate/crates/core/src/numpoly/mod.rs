//! Numerical and stably numerical polynomials.

mod basis;
mod binomial;
mod families;
mod json;
mod laurent;
mod membership;
mod parse;

pub use basis::{verify_plocal_basis, BasisReport};
pub use binomial::{
    binom_product, binomial_coefficient_fn, c, to_binomial, to_monomial, BinomialPoly,
};
pub use families::{
    augment, d_family, d_prime_family, e_family, in_p_local_binomial, p_divide_binomial,
    shift_auto, Augmentation,
};
pub use json::{AnyPoly, Basis, PolyJson, Term};
pub use laurent::LaurentPoly;
pub use membership::{
    denominator_exponent, denominator_primes, is_numerical, is_p_local_numerical,
    is_stably_numerical, mahler_local, p_divide_laurent, residue_sweep, LocalRing,
    MembershipVerdict, Witness, SWEEP_LIMIT,
};
pub use parse::parse_poly;

pub(crate) use basis::rational_det;
