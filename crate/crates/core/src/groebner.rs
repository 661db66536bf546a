//! Buchberger's algorithm over `F_p` with the coprime-leading-monomial and
//! chain criteria, normal selection strategy, and a linear-algebra
//! interreduction of the input.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Term};
use crate::ring::Ring;

/// Full reduction of `f` modulo `basis` (leading terms and tails).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let mut work: Vec<Term> = f.terms().to_vec();
    let mut start = 0;
    let mut rem: Vec<Term> = Vec::new();
    while start < work.len() {
        let lt = &work[start];
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|m| m.divides(&lt.mon)));
        match divisor {
            Some(g) => {
                let glt = g.leading_term().unwrap();
                let shift = glt.mon.quotient_of(&lt.mon);
                let c = ring.mul_mod(lt.coeff, ring.inv_mod(glt.coeff));
                work = merge_sub(ring, &work[start..], g, &shift, c);
                start = 0;
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted(ring, rem)
}

/// `a - c * shift * g` where `a` is a descending term slice.
fn merge_sub(ring: &Ring, a: &[Term], g: &Polynomial, shift: &Monomial, c: u32) -> Vec<Term> {
    let negc = ring.neg_mod(c);
    let mut out = Vec::with_capacity(a.len() + g.len());
    let b = g.terms();
    let (mut i, mut j) = (0, 0);
    let mut shifted = |t: &Term| Term {
        mon: t.mon.mul_unchecked(shift),
        coeff: ring.mul_mod(t.coeff, negc),
    };
    let mut next_b = b.first().map(&mut shifted);
    while i < a.len() {
        let Some(bt) = next_b.as_ref() else { break };
        match ring.cmp_exps(a[i].mon.exps(), bt.mon.exps()) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(next_b.take().unwrap());
                j += 1;
                next_b = b.get(j).map(&mut shifted);
            }
            Ordering::Equal => {
                let coeff = ring.add_mod(a[i].coeff, bt.coeff);
                if coeff != 0 {
                    out.push(Term {
                        mon: a[i].mon.clone(),
                        coeff,
                    });
                }
                i += 1;
                j += 1;
                next_b = b.get(j).map(&mut shifted);
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(bt) = next_b {
        out.push(bt);
        out.extend(b[j + 1..].iter().map(&mut shifted));
    }
    out
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let ft = f.leading_term().unwrap();
    let gt = g.leading_term().unwrap();
    let ring = f.ring();
    // both inputs are monic inside the engine, but stay general
    let a = f.mul_term_unchecked(&ft.mon.quotient_of(lcm), ring.inv_mod(ft.coeff));
    let b = g.mul_term_unchecked(&gt.mon.quotient_of(lcm), ring.inv_mod(gt.coeff));
    a.add_scaled(&b, ring.p() - 1)
}

/// Row-reduces the generators as vectors over the monomials they use, so the
/// engine starts from a set with distinct leading monomials.
fn linear_interreduce(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.len() < 2 {
        return gens.into_iter().map(|g| g.monic()).collect();
    }
    let mut monos: Vec<Monomial> = gens
        .iter()
        .flat_map(|g| g.terms().iter().map(|t| t.mon.clone()))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    if monos.len().saturating_mul(gens.len()) > 4_000_000 {
        return gens.into_iter().map(|g| g.monic()).collect();
    }
    monos.sort_unstable_by(|a, b| ring.cmp_exps(b.exps(), a.exps()));
    let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ncols = monos.len();
    let mut rows: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut row = vec![0u32; ncols];
            for t in g.terms() {
                row[col[&t.mon]] = t.coeff;
            }
            row
        })
        .collect();

    let p = ring.p() as u64;
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ring.inv_mod(rows[rank][c]) as u64;
        for v in rows[rank][c..].iter_mut() {
            *v = (*v as u64 * inv % p) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = p - row[c] as u64;
            for (v, &pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if pv != 0 {
                    *v = ((*v as u64 + factor * pv as u64) % p) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.into_iter()
        .map(|row| {
            let terms = row
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, coeff)| Term {
                    mon: monos[i].clone(),
                    coeff,
                })
                .collect();
            Polynomial::from_sorted(ring, terms)
        })
        .collect()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// The reduced Groebner basis of the ideal generated by `gens`: monic,
/// auto-reduced, sorted by leading monomial descending.
pub fn reduced_basis(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let start = linear_interreduce(ring, gens);
    if start.is_empty() {
        return Ok(Vec::new());
    }
    if start.iter().any(|g| g.is_unit()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let max_spairs = ring.limits().max_spairs;

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: Polynomial,
               basis: &mut Vec<Polynomial>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        let lm = h.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().unwrap().lcm(&lm);
            pairs.push(Pair { i, j: k, lcm });
            pending.insert((i, k));
        }
        basis.push(h);
    };

    for g in start {
        add(g, &mut basis, &mut pairs, &mut pending);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| ring.cmp_exps(pairs[a].lcm.exps(), pairs[b].lcm.exps()))
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(lj) {
            continue;
        }
        let chain = basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        processed += 1;
        if processed > max_spairs {
            return Err(Error::Resource(format!(
                "Groebner basis needed more than {max_spairs} S-pair reductions"
            )));
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j], &lcm), &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        add(h.monic(), &mut basis, &mut pairs, &mut pending);
    }

    Ok(reduce_basis(ring, basis))
}

/// Minimal basis, then tail reduction, then canonical sort.
fn reduce_basis(ring: &Ring, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| {
        ring.cmp_exps(
            a.leading_monomial().unwrap().exps(),
            b.leading_monomial().unwrap().exps(),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[k], &others).monic()
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| {
        ring.cmp_exps(
            b.leading_monomial().unwrap().exps(),
            a.leading_monomial().unwrap().exps(),
        )
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::{MonomialOrder, RingConfig};

    fn polys(r: &Ring, src: &[&str]) -> Vec<Polynomial> {
        src.iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect()
    }

    fn assert_s_pairs_reduce(basis: &[Polynomial]) {
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let lcm = basis[a]
                    .leading_monomial()
                    .unwrap()
                    .lcm(basis[b].leading_monomial().unwrap());
                let s = s_polynomial(&basis[a], &basis[b], &lcm);
                assert!(normal_form(&s, basis).is_zero());
            }
        }
    }

    #[test]
    fn divisible_generator_collapses() {
        let r = RingConfig::new(5, 1, &["x"], MonomialOrder::Grevlex).unwrap();
        let gb = reduced_basis(&r, &polys(&r, &["x^2", "x"])).unwrap();
        assert_eq!(gb, polys(&r, &["x"]));
    }

    #[test]
    fn linear_elimination() {
        let r = RingConfig::new(2, 1, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let gb = reduced_basis(&r, &polys(&r, &["x + y", "x"])).unwrap();
        assert_eq!(gb, polys(&r, &["x", "y"]));
    }

    #[test]
    fn empty_input() {
        let r = RingConfig::new(2, 1, &["x"], MonomialOrder::Grevlex).unwrap();
        assert!(reduced_basis(&r, &[]).unwrap().is_empty());
        assert!(reduced_basis(&r, &[Polynomial::zero(&r)])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cyclic_three_is_a_basis() {
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let r = RingConfig::new(7, 1, &["a", "b", "c"], order).unwrap();
            let gens = polys(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
            let gb = reduced_basis(&r, &gens).unwrap();
            assert_s_pairs_reduce(&gb);
            for g in &gens {
                assert!(normal_form(g, &gb).is_zero());
            }
        }
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = RingConfig::new(3, 1, &["t", "x", "y", "z"], MonomialOrder::Lex).unwrap();
        let gens = polys(&r, &["x - t", "y - t^2", "z - t^3"]);
        let gb = reduced_basis(&r, &gens).unwrap();
        assert_s_pairs_reduce(&gb);
        // the t-free part cuts out the cubic
        let free: Vec<_> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|t| t.mon.exps()[0] == 0))
            .collect();
        assert!(
            free.iter()
                .any(|g| g.to_string() == "y^2 + 2*x*z" || g.to_string() == "x*z + 2*y^2"),
            "got {gb:?}"
        );
    }

    #[test]
    fn spair_budget_is_enforced() {
        let r = RingConfig::with_limits(
            7,
            1,
            vec!["a".into(), "b".into(), "c".into()],
            MonomialOrder::Grevlex,
            crate::ring::Limits {
                max_degree: 1000,
                max_spairs: 1,
            },
        )
        .unwrap();
        let gens = polys(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        assert!(matches!(reduced_basis(&r, &gens), Err(Error::Resource(_))));
    }
}
