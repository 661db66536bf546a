//! Exact computations with Frobenius on `F_p[x_1..x_n]`: bracket powers and
//! Frobenius roots of ideals, minimal gamma-sheaves for cyclic sheaves
//! `N/K` with structural map `f·`, generalized test ideals `τ(f^{m/q^e})`
//! and F-pure-threshold brackets at the origin.
//!
//! All arithmetic is exact. Ideal equality is equality of reduced Groebner
//! bases.

pub mod error;
pub mod frobroot;
pub mod gamma;
pub mod groebner;
pub mod ideal;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod testideals;

pub use error::{Error, Result};
pub use frobroot::{ideal_root, poly_root};
pub use gamma::{
    crystal_equal, nu_exponent, validate, Budgets, Certificate, GammaSheaf, MinimalizationReport,
    Nilpotency,
};
pub use ideal::{bracket_power, colon, ideal_equal, ideal_intersection, membership, Ideal};
pub use parse::{parse_ideal, parse_polynomial};
pub use poly::{poly_arith, ArithOp, Monomial, Polynomial, Term};
pub use ring::{Limits, MonomialOrder, Ring, RingConfig};
pub use testideals::{
    fpt_bracket, je_chain, minimality_vs_fpt, nu, test_ideal, FptBracket, JeLevel, MinimalityReport,
};
