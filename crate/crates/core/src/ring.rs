//! Ring configuration: the prime field, the Frobenius step and the monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to a ring configuration. Polynomials and ideals hold one.
pub type Ring = Arc<RingConfig>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `block` variables: compare the degree in that
    /// block first, then grevlex inside the block, then grevlex on the rest.
    Elimination {
        block: usize,
    },
}

impl MonomialOrder {
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination { block } => {
                let k = block.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Elimination { block } => write!(f, "elim:{block}"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => {
                let block = s
                    .strip_prefix("elim:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| {
                        Error::Config(format!(
                            "unknown monomial order '{s}' (expected grevlex, lex or elim:<k>)"
                        ))
                    })?;
                Ok(MonomialOrder::Elimination { block })
            }
        }
    }
}

/// Resource guards. Exceeding any of them is reported as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u64,
    pub max_spairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 1_000_000,
            max_spairs: 200_000,
        }
    }
}

/// `F_p[x_1..x_n]` together with the Frobenius step `q = p^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingConfig {
    p: u32,
    s: u32,
    q: u64,
    vars: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

impl RingConfig {
    pub fn new(p: u32, s: u32, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        Self::with_limits(p, s, vars, order, Limits::default())
    }

    pub fn with_limits(
        p: u32,
        s: u32,
        vars: Vec<String>,
        order: MonomialOrder,
        limits: Limits,
    ) -> Result<Ring> {
        if p >= 1 << 31 {
            return Err(Error::Config(format!("characteristic {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::Config(format!("characteristic {p} is not prime")));
        }
        if s == 0 {
            return Err(Error::Config("Frobenius step s must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(s)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::Config(format!("q = {p}^{s} is too large")))?;
        if vars.is_empty() {
            return Err(Error::Config("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Config(format!("'{v}' is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Config(format!("duplicate variable '{v}'")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block > vars.len() {
                return Err(Error::Config(format!(
                    "elimination block {block} out of range for {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(RingConfig {
            p,
            s,
            q,
            vars,
            order,
            limits,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The Frobenius modulus `q = p^s`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^e`, or `None` when it does not fit in a `u64`.
    pub fn q_pow(&self, e: u32) -> Option<u64> {
        self.q.checked_pow(e)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::with_limits(self.p, self.s, self.vars.clone(), order, self.limits)
    }

    /// Prepends one variable and switches to an order eliminating it.
    pub(crate) fn with_elimination_var(&self, name: &str) -> Result<Ring> {
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(name.to_string());
        vars.extend(self.vars.iter().cloned());
        Self::with_limits(
            self.p,
            self.s,
            vars,
            MonomialOrder::Elimination { block: 1 },
            self.limits,
        )
    }

    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.compare(a, b)
    }

    pub(crate) fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub(crate) fn mul_mod(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub(crate) fn add_mod(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    pub(crate) fn neg_mod(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn inv_mod(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }
}

/// Two ring handles describe the same ring.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::Config("operands belong to different rings".into()))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(RingConfig::new(4, 1, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(RingConfig::new(1, 1, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(RingConfig::new(7, 1, &["x"], MonomialOrder::Grevlex).is_ok());
    }

    #[test]
    fn rejects_bad_variables() {
        assert!(RingConfig::new(2, 1, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(RingConfig::new(2, 1, &["2x"], MonomialOrder::Grevlex).is_err());
        assert!(RingConfig::new(2, 1, &[], MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn q_is_p_to_the_s() {
        let r = RingConfig::new(3, 2, &["x"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(r.q(), 9);
        assert_eq!(r.q_pow(2), Some(81));
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z^1 vs y^2 (same degree): last differing variable z, smaller exponent wins
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.compare(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.compare(&[0, 3], &[2, 0]), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.compare(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(o.compare(&[0, 2], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn order_round_trips_through_text() {
        for o in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Elimination { block: 2 },
        ] {
            assert_eq!(o.to_string().parse::<MonomialOrder>().unwrap(), o);
        }
    }

    #[test]
    fn field_inverse() {
        let r = RingConfig::new(7, 1, &["x"], MonomialOrder::Grevlex).unwrap();
        for a in 1..7 {
            assert_eq!(r.mul_mod(a, r.inv_mod(a)), 1);
        }
    }
}
