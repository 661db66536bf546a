//! Brute-force reference computations for small inputs. They avoid the
//! Groebner engine and the basis-decomposition root so that the main
//! algorithms can be checked against something independent.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Monomial, Polynomial};
use crate::ring::RingConfig;

/// `⌊β/q^e⌋` componentwise: the smallest `x^γ` with `x^β ∈ (x^γ)^{[q^e]}`.
pub fn monomial_root_oracle(ring: &RingConfig, exps: &[u32], e: u32) -> Result<Monomial> {
    if e == 0 {
        return Err(Error::Domain("root level must be at least 1".into()));
    }
    let qe = ring.q_pow(e).unwrap_or(u64::MAX);
    Ok(Monomial::new(
        exps.iter().map(|&b| (b as u64 / qe) as u32).collect(),
    ))
}

/// `f ∈ (x_1^{q^e}, …, x_n^{q^e})`: every term is divisible by some `x_i^{q^e}`.
pub fn bracket_membership_oracle(f: &Polynomial, e: u32) -> bool {
    let qe = f.ring().q_pow(e).unwrap_or(u64::MAX);
    f.terms()
        .iter()
        .all(|t| t.mon.exps().iter().any(|&b| b as u64 >= qe))
}

/// Largest `m` with `f^m` outside the bracket power of the maximal ideal,
/// scanning `m = 0, 1, 2, …` with plain multiplication.
pub fn nu_linear_scan(f: &Polynomial, e: u32) -> Result<u64> {
    if f.is_zero() || f.constant_coeff() != 0 {
        return Err(Error::Domain("needs f ≠ 0 with f(0) = 0".into()));
    }
    let mut power = Polynomial::one(f.ring());
    let mut m = 0u64;
    loop {
        let next = power.mul(f)?;
        if bracket_membership_oracle(&next, e) {
            return Ok(m);
        }
        power = next;
        m += 1;
    }
}

/// The smallest monomial ideal `J` (generators with exponents `≤ cap`) such
/// that `g ∈ J^{[q^e]}`, found by testing every candidate monomial.
///
/// Only meaningful when the true root of `g` is a monomial ideal, e.g. when
/// `g` is a monomial or its terms fall into distinct basis components.
pub fn smallest_ideal_bruteforce(g: &Polynomial, e: u32, cap: u32) -> Result<Ideal> {
    let ring = g.ring();
    let n = ring.nvars();
    let mut gens: Vec<Polynomial> = Vec::new();
    for t in g.terms() {
        // candidates γ with x^β ∈ (x^γ)^{[q^e]}, i.e. (x^γ)^{q^e} divides x^β
        let mut best: Option<Vec<u32>> = None;
        for_each_exponent(n, cap, |gamma| {
            let cand =
                Polynomial::monomial(ring, gamma.to_vec(), 1).and_then(|c| c.frobenius_power(e));
            let Ok(cand) = cand else { return };
            let lm = cand.leading_monomial().unwrap();
            if !lm.divides(&t.mon) {
                return;
            }
            let better = match &best {
                None => true,
                Some(b) => b.iter().zip(gamma).all(|(x, y)| x <= y),
            };
            if better {
                best = Some(gamma.to_vec());
            }
        });
        let best = best.expect("the constant monomial always qualifies");
        if best.contains(&cap) {
            let mut bumped = best.clone();
            for (i, b) in best.iter().enumerate() {
                if *b == cap {
                    bumped[i] = cap + 1;
                    let probe =
                        Polynomial::monomial(ring, bumped.clone(), 1)?.frobenius_power(e)?;
                    if probe.leading_monomial().unwrap().divides(&t.mon) {
                        return Err(Error::Resource(format!(
                            "exponent cap {cap} is too small for {g}"
                        )));
                    }
                    bumped[i] = *b;
                }
            }
        }
        gens.push(Polynomial::monomial(ring, best, 1)?);
    }
    Ok(Ideal::new(ring, gens))
}

fn for_each_exponent(n: usize, cap: u32, mut visit: impl FnMut(&[u32])) {
    let mut v = vec![0u32; n];
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if v[i] < cap {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}
