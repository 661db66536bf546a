//! Sparse polynomials over `F_p`.
//!
//! Terms are kept sorted by the ring's monomial order, descending, with
//! coefficients in `[1, p-1]`. The zero polynomial has no terms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{check_same, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn checked_scale(&self, k: u64) -> Option<Monomial> {
        self.0
            .iter()
            .map(|&a| {
                (a as u64)
                    .checked_mul(k)
                    .and_then(|v| u32::try_from(v).ok())
            })
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub coeff: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        crate::ring::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `a op b` with a ring check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.reduce(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![Term {
                mon: Monomial::one(ring.nvars()),
                coeff: c,
            }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut exps = vec![0; ring.nvars()];
        exps[i] = 1;
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                mon: Monomial(exps),
                coeff: 1,
            }],
        }
    }

    pub fn monomial(ring: &Ring, exps: Vec<u32>, coeff: i64) -> Result<Self> {
        Self::from_terms(ring, vec![(exps, coeff)])
    }

    /// Builds a polynomial from arbitrary `(exponents, coefficient)` pairs,
    /// merging duplicates and reducing coefficients mod p.
    pub fn from_terms(ring: &Ring, terms: Vec<(Vec<u32>, i64)>) -> Result<Self> {
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(Error::Config(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    exps.len(),
                    ring.nvars()
                )));
            }
            let mon = Monomial(exps);
            if mon.degree() > ring.limits().max_degree {
                return Err(degree_error(ring, mon.degree()));
            }
            let c = ring.reduce(c);
            let slot = acc.entry(mon).or_insert(0);
            *slot = ring.add_mod(*slot, c);
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mon, coeff)| Term { mon, coeff })
            .collect();
        terms.sort_unstable_by(|a, b| ring.cmp_exps(b.mon.exps(), a.mon.exps()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0 && t.coeff < ring.p()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_exps(w[0].mon.exps(), w[1].mon.exps()) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    /// Value at the origin.
    pub fn constant_coeff(&self) -> u32 {
        self.terms
            .iter()
            .find(|t| t.mon.is_one())
            .map_or(0, |t| t.coeff)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.add_scaled(other, self.ring.p() - 1))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.p() - 1)
    }

    /// `self + c * other` by merging sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp_exps(a[i].mon.exps(), b[j].mon.exps()) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = ring.mul_mod(b[j].coeff, c);
                    if coeff != 0 {
                        out.push(Term {
                            mon: b[j].mon.clone(),
                            coeff,
                        });
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = ring.add_mod(a[i].coeff, ring.mul_mod(b[j].coeff, c));
                    if coeff != 0 {
                        out.push(Term {
                            mon: a[i].mon.clone(),
                            coeff,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let coeff = ring.mul_mod(t.coeff, c);
            if coeff != 0 {
                out.push(Term {
                    mon: t.mon.clone(),
                    coeff,
                });
            }
        }
        Polynomial::from_sorted(ring, out)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.ring.p();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mon: t.mon.clone(),
                coeff: self.ring.mul_mod(t.coeff, c),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Multiplication by `c * mon`. Monomial orders are compatible with
    /// multiplication, so the term order is preserved.
    pub(crate) fn mul_term_unchecked(&self, mon: &Monomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mon: t.mon.mul_unchecked(mon),
                coeff: self.ring.mul_mod(t.coeff, c),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let deg = self.total_degree() + other.total_degree();
        if deg > self.ring.limits().max_degree {
            return Err(degree_error(&self.ring, deg));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return Ok(large.mul_term_unchecked(&t.mon, t.coeff));
        }
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(small.len() * large.len());
        for a in &small.terms {
            for b in &large.terms {
                let slot = acc.entry(a.mon.mul_unchecked(&b.mon)).or_insert(0);
                *slot = ring.add_mod(*slot, ring.mul_mod(a.coeff, b.coeff));
            }
        }
        Ok(Polynomial::from_map(ring, acc))
    }

    /// Product with every term having an exponent `≥ bound` dropped, i.e. the
    /// product modulo the monomial ideal `(x_1^bound, …, x_n^bound)`.
    pub(crate) fn mul_truncated(&self, other: &Polynomial, bound: u32) -> Polynomial {
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let mon = a.mon.mul_unchecked(&b.mon);
                if mon.exps().iter().any(|&x| x >= bound) {
                    continue;
                }
                let slot = acc.entry(mon).or_insert(0);
                *slot = ring.add_mod(*slot, ring.mul_mod(a.coeff, b.coeff));
            }
        }
        Polynomial::from_map(ring, acc)
    }

    /// `f^m` modulo `(x_1^bound, …, x_n^bound)`.
    pub(crate) fn pow_truncated(&self, mut m: u64, bound: u32) -> Polynomial {
        let one = Polynomial::one(&self.ring);
        let mut acc = if bound == 0 {
            Polynomial::zero(&self.ring)
        } else {
            one
        };
        let mut base = self.mul_truncated(&Polynomial::one(&self.ring), bound);
        while m > 0 && !acc.is_zero() {
            if m & 1 == 1 {
                acc = acc.mul_truncated(&base, bound);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_truncated(&base, bound);
            }
        }
        acc
    }

    /// `f^m`, splitting `m` into base-q digits so that each digit block is a
    /// Frobenius power: `f^m = prod_i (f^{d_i})^{[q^i]}`.
    pub fn pow(&self, m: u64) -> Result<Polynomial> {
        if m == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let deg = (self.total_degree() as u128) * (m as u128);
        if deg > self.ring.limits().max_degree as u128 {
            return Err(degree_error_wide(&self.ring, deg));
        }
        if self.is_monomial() {
            let t = &self.terms[0];
            let mon = t
                .mon
                .checked_scale(m)
                .ok_or_else(|| Error::Resource("exponent overflow".into()))?;
            let coeff = pow_mod(t.coeff, m, self.ring.p());
            return Ok(Polynomial::from_sorted(
                &self.ring,
                vec![Term { mon, coeff }],
            ));
        }
        let q = self.ring.q();
        let mut result = Polynomial::one(&self.ring);
        let mut rest = m;
        let mut level = 0u32;
        while rest > 0 {
            let digit = rest % q;
            rest /= q;
            if digit > 0 {
                let block = self.pow_small(digit)?.frobenius_power(level)?;
                result = result.mul(&block)?;
            }
            level += 1;
        }
        Ok(result)
    }

    fn pow_small(&self, m: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f^{q^e}`: every exponent scaled by `q^e`; coefficients in `F_p` are
    /// fixed by Frobenius.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        if e == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let qe = self
            .ring
            .q_pow(e)
            .ok_or_else(|| Error::Resource(format!("q^{e} overflows")))?;
        let deg = self.total_degree() as u128 * qe as u128;
        if deg > self.ring.limits().max_degree as u128 {
            return Err(degree_error_wide(&self.ring, deg));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.mon
                    .checked_scale(qe)
                    .map(|mon| Term {
                        mon,
                        coeff: t.coeff,
                    })
                    .ok_or_else(|| Error::Resource("exponent overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        // scaling exponents by a positive constant preserves every monomial order
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(self.ring.inv_mod(t.coeff)),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        check_same(&self.ring, divisor.ring())?;
        let lead = divisor
            .leading_term()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let inv = self.ring.inv_mod(lead.coeff);
        let mut rem = self.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some(t) = rem.leading_term() {
            if !lead.mon.divides(&t.mon) {
                return Ok(None);
            }
            let mon = lead.mon.quotient_of(&t.mon);
            let c = self.ring.mul_mod(t.coeff, inv);
            rem = rem.add_scaled(&divisor.mul_term_unchecked(&mon, 1), self.ring.neg_mod(c));
            quot.push(Term { mon, coeff: c });
        }
        // quotient terms come out in descending order
        Ok(Some(Polynomial::from_sorted(&self.ring, quot)))
    }

    /// Re-embeds the polynomial into `target` by mapping each exponent vector.
    pub(crate) fn map_into(&self, target: &Ring, f: impl Fn(&[u32]) -> Vec<u32>) -> Polynomial {
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                mon: Monomial(f(t.mon.exps())),
                coeff: t.coeff,
            })
            .collect();
        terms.sort_unstable_by(|a, b| target.cmp_exps(b.mon.exps(), a.mon.exps()));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }
}

fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let m = p as u64;
    let mut base = a as u64 % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

fn degree_error(ring: &Ring, deg: u64) -> Error {
    Error::Resource(format!(
        "total degree {deg} exceeds the limit {}",
        ring.limits().max_degree
    ))
}

fn degree_error_wide(ring: &Ring, deg: u128) -> Error {
    Error::Resource(format!(
        "total degree {deg} exceeds the limit {}",
        ring.limits().max_degree
    ))
}
