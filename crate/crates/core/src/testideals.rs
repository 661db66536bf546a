//! Test ideals of principal ideals and F-pure-threshold brackets.
//!
//! `τ(f^{m/q^e})` is the level-`e` Frobenius root of `(f^m)`. For the
//! principal gamma-sheaf `R --f·--> R` the minimalization iterates `M_e` are
//! the test ideals `J_e = τ(f^{ν_e/q^e})`; [`je_chain`] computes both sides
//! independently.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gamma::{nu_exponent, GammaSheaf};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

/// `τ(f^{m/q^e})`. `m = 0` gives the unit ideal.
pub fn test_ideal(f: &Polynomial, m: u64, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Domain("test ideal level must be at least 1".into()));
    }
    if m == 0 {
        return Ok(Ideal::unit(f.ring()));
    }
    Ideal::principal(&f.pow(m)?).root(e)
}

#[derive(Clone, Debug)]
pub struct JeLevel {
    pub e: u32,
    /// `τ(f^{ν_e/q^e})` computed in one step.
    pub direct: Ideal,
    /// `M_e = (f·M_{e-1})^{[1/q]}`, `M_0 = (1)`.
    pub iterated: Ideal,
    pub equal: bool,
}

/// Both routes to `J_e` for `e = 1..=e_max`, with their reduced bases.
pub fn je_chain(f: &Polynomial, e_max: u32) -> Result<Vec<JeLevel>> {
    let ring = f.ring();
    let mut levels = Vec::with_capacity(e_max as usize);
    let mut m = Ideal::unit(ring);
    for e in 1..=e_max {
        m = m.mul_poly(f)?.root(1)?.canonical()?;
        let nu = u64::try_from(&nu_exponent(ring.q(), e))
            .map_err(|_| Error::Resource(format!("ν_{e} does not fit in 64 bits")))?;
        let direct = test_ideal(f, nu, e)?.canonical()?;
        let equal = direct.equals(&m)?;
        levels.push(JeLevel {
            e,
            direct,
            iterated: m.clone(),
            equal,
        });
    }
    Ok(levels)
}

fn check_fpt_domain(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::Domain(
            "the F-pure threshold of 0 is undefined".into(),
        ));
    }
    if f.constant_coeff() != 0 {
        return Err(Error::Domain(format!(
            "{f} does not vanish at the origin; its threshold there is infinite"
        )));
    }
    Ok(())
}

/// Largest `m` with `f^m ∉ (x_1^{q^e}, …, x_n^{q^e})`, by binary search over
/// `[0, n·q^e]`. Membership in that monomial ideal is termwise, so powers are
/// computed modulo it.
pub fn nu(f: &Polynomial, e: u32) -> Result<u64> {
    check_fpt_domain(f)?;
    if e == 0 {
        return Err(Error::Domain("threshold level must be at least 1".into()));
    }
    let ring = f.ring();
    let qe = ring
        .q_pow(e)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Resource(format!("q^{e} is too large")))?;
    let outside = |m: u64| !f.pow_truncated(m, qe).is_zero();
    // f ∈ m, so f^{n(q^e - 1) + 1} lands in the bracket power
    let (mut lo, mut hi) = (0u64, ring.nvars() as u64 * qe as u64);
    debug_assert!(outside(lo) && !outside(hi));
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if outside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `(ν_e/q^e, (ν_e + 1)/q^e]`. The threshold at the origin lies in this
/// half-open interval; the lower end is never attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptBracket {
    pub level: u32,
    pub nu: u64,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl FptBracket {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

impl fmt::Display for FptBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

pub fn fpt_bracket(f: &Polynomial, e: u32) -> Result<FptBracket> {
    let nu = nu(f, e)?;
    let qe = BigInt::from(f.ring().q()).pow(e);
    Ok(FptBracket {
        level: e,
        nu,
        lo: BigRational::new(BigInt::from(nu), qe.clone()),
        hi: BigRational::new(BigInt::from(nu) + 1, qe),
    })
}

#[derive(Clone, Debug)]
pub struct MinimalityReport {
    /// The principal sheaf `(0, (1), f)` is minimal.
    pub is_minimal: bool,
    /// `M_1, M_2, …` up to the first repetition (or `e_max`).
    pub chain: Vec<Ideal>,
    pub stabilized_at: Option<u32>,
    /// Every computed `J_e = M_e` is the unit ideal.
    pub chain_trivial: bool,
    /// Brackets at levels `1..=e_max`, when `f` vanishes at the origin.
    pub brackets: Vec<FptBracket>,
    /// `1/(q - 1)`
    pub threshold: BigRational,
    /// For minimal `f` vanishing at the origin: no bracket excludes
    /// `[1/(q-1), ∞)`.
    pub bracket_consistent: Option<bool>,
}

impl MinimalityReport {
    pub fn bracket(&self) -> Option<&FptBracket> {
        self.brackets.last()
    }
}

/// Compares minimality of the principal sheaf with triviality of the test
/// ideals `J_e`, and with the threshold bound `fpt ≥ 1/(q-1)` at the origin.
pub fn minimality_vs_fpt(f: &Polynomial, e_max: u32) -> Result<MinimalityReport> {
    if f.is_zero() {
        return Err(Error::Domain("minimality criterion needs f ≠ 0".into()));
    }
    let ring = f.ring();
    let is_minimal = GammaSheaf::principal(f).is_minimal()?;

    let mut chain: Vec<Ideal> = Vec::new();
    let mut stabilized_at = None;
    let mut current = Ideal::unit(ring);
    for e in 1..=e_max.max(1) {
        let next = current.mul_poly(f)?.root(1)?.canonical()?;
        let repeat = next.equals(&current)?;
        chain.push(next.clone());
        if repeat {
            stabilized_at = Some(e);
            break;
        }
        current = next;
    }
    let mut chain_trivial = true;
    for m in &chain {
        if !m.is_unit()? {
            chain_trivial = false;
            break;
        }
    }
    if is_minimal != chain_trivial {
        return Err(Error::Invariant(format!(
            "minimal = {is_minimal} but test-ideal chain trivial = {chain_trivial} for {f}"
        )));
    }

    let threshold = BigRational::new(BigInt::from(1), BigInt::from(ring.q() - 1));
    let mut brackets = Vec::new();
    let mut bracket_consistent = None;
    if f.constant_coeff() == 0 {
        for e in 1..=e_max {
            brackets.push(fpt_bracket(f, e)?);
        }
        if is_minimal {
            let ok = brackets.iter().all(|b| b.hi >= threshold);
            if !ok {
                return Err(Error::Invariant(format!(
                    "{f} is minimal but a threshold bracket lies below 1/(q-1)"
                )));
            }
            bracket_consistent = Some(ok);
        }
    }
    Ok(MinimalityReport {
        is_minimal,
        chain,
        stabilized_at,
        chain_trivial,
        brackets,
        threshold,
        bracket_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_polynomial};
    use crate::ring::{MonomialOrder, Ring, RingConfig};

    fn ring(p: u32) -> Ring {
        RingConfig::new(p, 1, &["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    fn poly(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn test_ideal_examples() {
        let r = ring(2);
        let x = poly(&r, "x");
        assert!(test_ideal(&x, 5, 2)
            .unwrap()
            .equals(&parse_ideal(&r, "x").unwrap())
            .unwrap());
        assert!(test_ideal(&x, 0, 3).unwrap().is_unit().unwrap());
        assert!(test_ideal(&poly(&r, "x^2 + x*y"), 1, 1)
            .unwrap()
            .is_unit()
            .unwrap());
    }

    #[test]
    fn je_chain_examples() {
        let r = ring(2);
        for level in je_chain(&poly(&r, "x^2"), 4).unwrap() {
            assert!(level.equal);
            assert!(level.direct.equals(&parse_ideal(&r, "x").unwrap()).unwrap());
        }
        for level in je_chain(&poly(&r, "x"), 4).unwrap() {
            assert!(level.equal && level.direct.is_unit().unwrap());
        }
        for level in je_chain(&Polynomial::zero(&r), 3).unwrap() {
            assert!(level.equal && level.direct.is_zero());
        }
    }

    #[test]
    fn nu_examples() {
        let r = ring(2);
        assert_eq!(nu(&poly(&r, "x^3"), 3).unwrap(), 2);
        for e in 1..=6 {
            assert_eq!(nu(&poly(&r, "x"), e).unwrap(), (1 << e) - 1);
        }
        assert_eq!(nu(&poly(&r, "x^2 + y^3"), 1).unwrap(), 0);
    }

    #[test]
    fn nu_domain_errors() {
        let r = ring(3);
        assert!(matches!(nu(&poly(&r, "x + 1"), 1), Err(Error::Domain(_))));
        assert!(matches!(
            nu(&Polynomial::zero(&r), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bracket_examples() {
        let r = ring(2);
        let b = fpt_bracket(&poly(&r, "x"), 4).unwrap();
        assert_eq!((b.lo.clone(), b.hi.clone()), (rat(15, 16), rat(1, 1)));
        assert!(b.contains(&rat(1, 1)));
        let b = fpt_bracket(&poly(&r, "x^3"), 3).unwrap();
        assert_eq!((b.lo.clone(), b.hi.clone()), (rat(2, 8), rat(3, 8)));
        assert!(b.contains(&rat(1, 3)));
        let b = fpt_bracket(&poly(&r, "x^2 + y^3"), 1).unwrap();
        assert_eq!((b.lo.clone(), b.hi.clone()), (rat(0, 1), rat(1, 2)));
        assert_eq!(b.to_string(), "(0, 1/2]");
    }

    #[test]
    fn minimality_examples() {
        let r = ring(2);
        let rep = minimality_vs_fpt(&poly(&r, "x"), 3).unwrap();
        assert!(rep.is_minimal && rep.chain_trivial);
        assert!(rep.bracket().unwrap().contains(&rat(1, 1)));
        assert_eq!(rep.bracket_consistent, Some(true));

        let rep = minimality_vs_fpt(&poly(&r, "x^2"), 3).unwrap();
        assert!(!rep.is_minimal && !rep.chain_trivial);
        assert!(rep
            .chain
            .last()
            .unwrap()
            .equals(&parse_ideal(&r, "x").unwrap())
            .unwrap());
        assert!(rep.bracket().unwrap().contains(&rat(1, 2)));

        let r3 = ring(3);
        let rep = minimality_vs_fpt(&poly(&r3, "x"), 2).unwrap();
        assert!(rep.is_minimal);

        assert!(matches!(
            minimality_vs_fpt(&Polynomial::zero(&r), 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unit_at_origin_has_no_bracket() {
        let r = ring(2);
        let rep = minimality_vs_fpt(&poly(&r, "x + 1"), 2).unwrap();
        assert!(rep.is_minimal);
        assert!(rep.brackets.is_empty());
        assert_eq!(rep.bracket_consistent, None);
    }
}
