//! Frobenius roots `I^{[1/q^e]}`: the smallest ideal `J` with `I ⊆ J^{[q^e]}`.
//!
//! `R` is free over `R^{q^e}` on the monomials `x^α`, `α ∈ [0, q^e)^n`. Writing
//! `g = Σ_α g_α^{q^e} x^α`, the root of `g` is generated by the `g_α`. A term
//! `c·x^β` lands in component `α = β mod q^e` and contributes `c·x^{⌊β/q^e⌋}`;
//! coefficients are untouched because Frobenius fixes `F_p`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

/// Root of a single polynomial at level `e ≥ 1`.
pub fn poly_root(g: &Polynomial, e: u32) -> Result<Ideal> {
    Ok(Ideal::new(g.ring(), root_components(g, e)?))
}

/// The nonzero components `g_α`, ordered by `α`. Only components hit by a
/// term of `g` are materialized.
pub fn root_components(g: &Polynomial, e: u32) -> Result<Vec<Polynomial>> {
    if e == 0 {
        return Err(Error::Domain(
            "Frobenius root level must be at least 1".into(),
        ));
    }
    let ring = g.ring();
    // q^e larger than every exponent: each term is its own component with a
    // constant root
    let qe = ring.q_pow(e).unwrap_or(u64::MAX);
    let mut components: BTreeMap<Vec<u64>, Vec<(Vec<u32>, i64)>> = BTreeMap::new();
    for t in g.terms() {
        let (alpha, quot): (Vec<u64>, Vec<u32>) = t
            .mon
            .exps()
            .iter()
            .map(|&b| ((b as u64) % qe, ((b as u64) / qe) as u32))
            .unzip();
        components
            .entry(alpha)
            .or_default()
            .push((quot, t.coeff as i64));
    }
    components
        .into_values()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

/// Root of an ideal: the sum of the roots of its generators.
pub fn ideal_root(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Domain(
            "Frobenius root level must be at least 1".into(),
        ));
    }
    let mut gens = Vec::new();
    for g in ideal.gens() {
        gens.extend(root_components(g, e)?);
    }
    Ok(Ideal::new(ideal.ring(), gens))
}

impl Ideal {
    pub fn root(&self, e: u32) -> Result<Ideal> {
        ideal_root(self, e)
    }
}
