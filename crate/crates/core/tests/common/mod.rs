#![allow(dead_code)]

use fsing_core::{GammaSheaf, Ideal, MonomialOrder, Polynomial, Ring, RingConfig};
use rand::seq::SliceRandom;
use rand::Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn ring(p: u32, n: usize) -> Ring {
    RingConfig::new(p, 1, &VARS[..n], MonomialOrder::Grevlex).unwrap()
}

/// Random exponent vector with total degree ≤ `max_deg`.
pub fn exps<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Vec<u32> {
    let deg = rng.gen_range(0..=max_deg);
    let mut v = vec![0u32; n];
    for _ in 0..deg {
        v[rng.gen_range(0..n)] += 1;
    }
    v
}

/// Random polynomial with `1..=max_terms` terms of degree ≤ `max_deg`.
pub fn poly<R: Rng>(rng: &mut R, r: &Ring, max_terms: usize, max_deg: u32) -> Polynomial {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms = (0..k)
            .map(|_| {
                (
                    exps(rng, r.nvars(), max_deg),
                    rng.gen_range(1..r.p() as i64),
                )
            })
            .collect();
        let f = Polynomial::from_terms(r, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Like [`poly`] but vanishing at the origin.
pub fn poly_at_origin<R: Rng>(rng: &mut R, r: &Ring, max_terms: usize, max_deg: u32) -> Polynomial {
    loop {
        let f = poly(rng, r, max_terms, max_deg);
        if f.constant_coeff() == 0 && !f.is_zero() {
            return f;
        }
    }
}

pub fn ideal<R: Rng>(
    rng: &mut R,
    r: &Ring,
    max_gens: usize,
    max_terms: usize,
    max_deg: u32,
) -> Ideal {
    let k = rng.gen_range(1..=max_gens);
    Ideal::new(
        r,
        (0..k).map(|_| poly(rng, r, max_terms, max_deg)).collect(),
    )
}

pub fn monomial<R: Rng>(rng: &mut R, r: &Ring, max_deg: u32) -> Polynomial {
    Polynomial::monomial(r, exps(rng, r.nvars(), max_deg), 1).unwrap()
}

/// A monomial `x^a` or a binomial `x^a - c·x^b` with positive degree.
pub fn pool_element<R: Rng>(rng: &mut R, r: &Ring, max_deg: u32) -> Polynomial {
    loop {
        let a = exps(rng, r.nvars(), max_deg);
        if a.iter().all(|&v| v == 0) {
            continue;
        }
        let f = if rng.gen_bool(0.5) {
            Polynomial::monomial(r, a, 1).unwrap()
        } else {
            let b = exps(rng, r.nvars(), max_deg);
            if b.iter().all(|&v| v == 0) {
                continue;
            }
            let c = rng.gen_range(1..r.p() as i64);
            Polynomial::from_terms(r, vec![(a, 1), (b, -c)]).unwrap()
        };
        if !f.is_zero() && !f.is_unit() {
            return f;
        }
    }
}

/// `{f : f·I ⊆ I^[q]}` as an ideal.
fn frobenius_stabilizer(i: &Ideal) -> Ideal {
    let target = i.bracket_power(1).unwrap();
    let mut acc = Ideal::unit(i.ring());
    for g in i.gens() {
        acc = acc.intersection(&target.colon(g).unwrap()).unwrap();
    }
    acc
}

/// A random valid sheaf: `K` from the monomial/binomial pool, `N ⊇ K`, and
/// `f` a random element of the ideal of multipliers compatible with both.
pub fn sheaf<R: Rng>(rng: &mut R, r: &Ring) -> GammaSheaf {
    loop {
        let k_gens: Vec<Polynomial> = (0..rng.gen_range(0..=2))
            .map(|_| pool_element(rng, r, 3))
            .collect();
        let k = Ideal::new(r, k_gens);
        let n = if rng.gen_bool(0.5) {
            Ideal::unit(r)
        } else {
            let mut gens = k.gens().to_vec();
            gens.push(pool_element(rng, r, 2));
            Ideal::new(r, gens)
        };
        let allowed = frobenius_stabilizer(&k)
            .intersection(&frobenius_stabilizer(&n))
            .unwrap();
        let gb = allowed.reduced_gb().unwrap().to_vec();
        if gb.is_empty() {
            continue;
        }
        let mut f = Polynomial::zero(r);
        for g in gb.choose_multiple(rng, 2) {
            let coeff = if rng.gen_bool(0.3) {
                Polynomial::one(r)
            } else {
                poly(rng, r, 2, 1)
            };
            f = f.add(&g.mul(&coeff).unwrap()).unwrap();
        }
        if f.total_degree() > 12 {
            continue;
        }
        return GammaSheaf::new(k, n, f).expect("multiplier drawn from the stabilizer");
    }
}
