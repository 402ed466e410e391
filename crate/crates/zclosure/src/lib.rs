//! Exact-arithmetic computation of finite-degree Zariski closures and
//! symmetric closures of symmetric subsets of the Boolean cube over prime
//! fields.
//!
//! A symmetric subset of `{0,1}^n` is determined by the set E of Hamming
//! weights it contains. The degree-d Zariski closure of E is the common
//! zero set of all polynomials of degree at most d vanishing on it; the
//! symmetric closure restricts that family to symmetric polynomials and is
//! computable in polynomial time. This crate computes both (the former by
//! an exponential rank-based oracle), the closed-form closure of a single
//! layer, witness polynomials certifying non-membership, and the
//! Reed-Muller dual-code machinery connecting the two closures.

pub mod closures;
pub mod codes;
pub mod cube;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod witness;

pub use closures::{
    hilbert_dim, hilbert_dim_points, layer_zcl, symcl, top_layer_equivalence_check, zcl_bruteforce,
    zcl_bruteforce_all_degrees, zcl_fast, ClosureMethod, ClosureQuery, ClosureResult,
};
pub use cube::{e_oplus, enumerate_symmetric, layer_points, CubePoint, SymmetricSet, ENUM_CAP};
pub use error::{Error, Result};
pub use field::{binom_mod_p, ell_p, p_ary_digits, PAryDigits, PrimeField};
pub use linalg::{FpMatrix, RrefAccumulator};
pub use poly::{
    f_minus, f_plus, multilinearize, sym_to_multilinear, weights_to_sigma_coeffs,
    GeneralizedMonomial, MultilinearPoly, SymmetricPoly,
};
pub use witness::{
    build_h, build_r, newton_interpolate, search_product_witness, verify_witness, SearchForm,
    VanishingSpec, WitnessForm, WitnessPoly, WitnessReport,
};
