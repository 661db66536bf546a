//! Ideals of `F_p[x_1..x_n]` given by generators, with a lazily computed
//! reduced Groebner basis that serves as the canonical form.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{normal_form, reduced_basis};
use crate::poly::Polynomial;
use crate::ring::{check_same, Ring};

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.gb.get().map_or(&self.gens, |gb| gb.as_ref());
        if shown.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in shown.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Self {
        debug_assert!(gens.iter().all(|g| crate::ring::same_ring(g.ring(), ring)));
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ring(), vec![f.clone()])
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    /// Generated by the given reduced basis, which is installed as the cache.
    fn from_basis(ring: &Ring, basis: Vec<Polynomial>) -> Self {
        let ideal = Ideal::new(ring, basis.clone());
        let _ = ideal.gb.set(Arc::new(basis));
        ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Groebner basis (monic, auto-reduced, sorted by leading
    /// monomial descending). Computed once; concurrent callers may compute it
    /// twice but only one result is kept.
    pub fn reduced_gb(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = reduced_basis(&self.ring, &self.gens)?;
        let _ = self.gb.set(Arc::new(gb));
        Ok(self.gb.get().unwrap())
    }

    /// This ideal with its reduced Groebner basis as the generating set.
    pub fn canonical(&self) -> Result<Ideal> {
        let gb = self.reduced_gb()?.to_vec();
        Ok(Ideal::from_basis(&self.ring, gb))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.reduced_gb()?;
        Ok(gb.len() == 1 && gb[0].is_unit())
    }

    /// Ideal membership via normal form modulo the reduced basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        Ok(normal_form(f, self.reduced_gb()?).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.first_outside(other)?.is_none())
    }

    /// A generator of `other` that is not in `self`, if any.
    pub fn first_outside<'a>(&self, other: &'a Ideal) -> Result<Option<&'a Polynomial>> {
        check_same(&self.ring, &other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// Equality of the reduced Groebner bases, term by term.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.reduced_gb()? == other.reduced_gb()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `f · I`, generator-wise.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Ideal> {
        check_same(&self.ring, f.ring())?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I^{[q^e]}`: the ideal generated by the `q^e`-th powers of the
    /// generators. When the reduced basis is known, its Frobenius image is
    /// again a reduced basis (leading monomials and divisibility scale
    /// uniformly and Frobenius is flat), so the cache carries over.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Ok(self.clone());
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(e))
            .collect::<Result<Vec<_>>>()?;
        let out = Ideal::new(&self.ring, gens);
        if let Some(gb) = self.gb.get() {
            let powered = gb
                .iter()
                .map(|g| g.frobenius_power(e))
                .collect::<Result<Vec<_>>>()?;
            let _ = out.gb.set(Arc::new(powered));
        }
        Ok(out)
    }

    /// `I ∩ J`, by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return other.canonical();
        }
        if other.is_unit()? {
            return self.canonical();
        }
        let ext = self.ring.with_elimination_var("_t")?;
        let lift = |g: &Polynomial, t: u32| {
            g.map_into(&ext, |e| {
                let mut v = Vec::with_capacity(e.len() + 1);
                v.push(t);
                v.extend_from_slice(e);
                v
            })
        };
        let mut gens = Vec::with_capacity(self.gens.len() + 2 * other.gens.len());
        for g in self.reduced_gb()? {
            gens.push(lift(g, 1));
        }
        for h in other.reduced_gb()? {
            // (1 - t)·h
            gens.push(lift(h, 0).sub(&lift(h, 1))?);
        }
        let gb = reduced_basis(&ext, &gens)?;
        let ring = &self.ring;
        let basis: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|t| t.mon.exps()[0] == 0))
            .map(|g| g.map_into(ring, |e| e[1..].to_vec()))
            .collect();
        // an elimination ideal of a reduced basis is again a reduced basis
        Ok(Ideal::from_basis(ring, basis))
    }

    /// `(I : f) = {g : g·f ∈ I}`, computed as `(I ∩ (f)) / f`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(Error::Domain("colon by the zero polynomial".into()));
        }
        if f.is_unit() || self.is_zero() {
            return self.canonical();
        }
        if self.contains(f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersection(&Ideal::principal(f))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                g.div_exact(f)?.ok_or_else(|| {
                    Error::Invariant(format!("{g} lies in (f) but is not divisible by {f}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }
}

/// `f ∈ I`.
pub fn membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.intersection(b)
}

pub fn colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    ideal.colon(f)
}

pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    ideal.bracket_power(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_polynomial};
    use crate::ring::{MonomialOrder, RingConfig};

    fn ring(p: u32) -> Ring {
        RingConfig::new(p, 1, &["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    fn id(r: &Ring, s: &str) -> Ideal {
        parse_ideal(r, s).unwrap()
    }

    fn poly(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn unit_ideal_has_basis_one() {
        let r = ring(3);
        assert_eq!(
            id(&r, "x; 1 + x").reduced_gb().unwrap(),
            &[Polynomial::one(&r)]
        );
        assert!(id(&r, "1").equals(&id(&r, "x; 1 + x")).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring(2);
        assert!(id(&r, "x + y").contains(&poly(&r, "x^2 + y^2")).unwrap());
        assert!(!id(&r, "x^2; y^2").contains(&poly(&r, "x*y")).unwrap());
        assert!(id(&r, "x^2; y^2").contains(&Polynomial::zero(&r)).unwrap());
        assert!(Ideal::zero(&r).contains(&Polynomial::zero(&r)).unwrap());
        assert!(!Ideal::zero(&r).contains(&poly(&r, "x")).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(5);
        assert!(id(&r, "x^2; x").equals(&id(&r, "x")).unwrap());
        assert!(!id(&r, "x").equals(&id(&r, "x^2")).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(3);
        let cases = [
            ("x", "y", "x*y"),
            ("x", "x", "x"),
            ("x^2*y", "x*y^2", "x^2*y^2"),
            ("x", "0", "0"),
            ("1", "x + y", "x + y"),
        ];
        for (a, b, want) in cases {
            let got = id(&r, a).intersection(&id(&r, b)).unwrap();
            assert!(got.equals(&id(&r, want)).unwrap(), "{a} ∩ {b} = {got}");
        }
    }

    #[test]
    fn colon_examples() {
        let r = ring(2);
        let c = id(&r, "x^4").colon(&poly(&r, "x^3")).unwrap();
        assert!(c.equals(&id(&r, "x")).unwrap());
        let c = id(&r, "x^2").colon(&poly(&r, "y")).unwrap();
        assert!(c.equals(&id(&r, "x^2")).unwrap());
        let c = id(&r, "x^2 + x*y").colon(&poly(&r, "x")).unwrap();
        assert!(c.equals(&id(&r, "x + y")).unwrap());
        assert!(id(&r, "x^2")
            .colon(&poly(&r, "x^2"))
            .unwrap()
            .is_unit()
            .unwrap());
    }

    #[test]
    fn colon_by_zero_is_a_domain_error() {
        let r = ring(2);
        assert!(matches!(
            id(&r, "x").colon(&Polynomial::zero(&r)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bracket_examples() {
        let r = ring(2);
        assert!(id(&r, "x; y")
            .bracket_power(1)
            .unwrap()
            .equals(&id(&r, "x^2; y^2"))
            .unwrap());
        assert!(id(&r, "x + y")
            .bracket_power(2)
            .unwrap()
            .equals(&id(&r, "x^4 + y^4"))
            .unwrap());
        let i = id(&r, "x*y + 1; y^3");
        assert!(i.bracket_power(0).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn bracket_of_cached_basis_is_the_reduced_basis() {
        let r = ring(3);
        let i = id(&r, "x^2 + y; x*y - 1; y^3 + x");
        i.reduced_gb().unwrap();
        let cached = i.bracket_power(1).unwrap();
        let fresh = Ideal::new(&r, cached.gens().to_vec());
        assert_eq!(cached.reduced_gb().unwrap(), fresh.reduced_gb().unwrap());
    }

    #[test]
    fn mismatched_rings() {
        let a = id(&ring(2), "x");
        let b = id(&ring(3), "x");
        assert!(matches!(a.equals(&b), Err(Error::Config(_))));
    }
}
