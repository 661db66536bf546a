//! Cyclic gamma-sheaves `M = N/K ⊆ R/K` whose structural map
//! `γ: M → σ*M` is multiplication by a fixed polynomial `f`.
//!
//! `σ*M` is represented by the pair `(N^{[q]}, K^{[q]})`, so every statement
//! about pullbacks becomes a statement about bracket powers. `γ^e` is
//! multiplication by `f^{ν_e}` with `ν_e = 1 + q + … + q^{e-1}`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{check_same, Ring};

/// Iteration caps for the kernel chain and the `Fr_γ^{-1}` fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub kernel_chain: usize,
    pub fr_iterations: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            kernel_chain: 32,
            fr_iterations: 64,
        }
    }
}

/// `ν_e = (q^e - 1)/(q - 1)`, exactly.
pub fn nu_exponent(q: u64, e: u32) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..e {
        acc += &power;
        power *= &q;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct GammaSheaf {
    relations: Ideal,
    ambient: Ideal,
    multiplier: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Order(usize),
    NotWithinBudget,
}

/// The ascending chain `K_0 = K ⊆ K_1 ⊆ …` of kernels of `γ^e`, up to the
/// first repetition.
#[derive(Clone, Debug)]
pub struct KernelChain {
    pub ideals: Vec<Ideal>,
}

impl KernelChain {
    /// The stable member `K_∞`.
    pub fn stable(&self) -> &Ideal {
        self.ideals.last().unwrap()
    }

    /// The first `e` with `K_e = K_{e+1}`.
    pub fn length(&self) -> usize {
        self.ideals.len() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub structural_map_injective: bool,
    pub fr_fixed: bool,
}

#[derive(Clone, Debug)]
pub struct MinimalizationReport {
    pub result: GammaSheaf,
    pub kernel_chain_length: usize,
    pub fr_iterations: usize,
    pub certificate: Certificate,
    /// The two iterates after the fixed point agree with it as well.
    pub tail_stable: bool,
}

/// Builds the sheaf `N/K` with `γ = f·`, checking that `K ⊆ N`,
/// `f·K ⊆ K^{[q]}` and `f·N ⊆ N^{[q]}`.
pub fn validate(relations: Ideal, ambient: Ideal, multiplier: Polynomial) -> Result<GammaSheaf> {
    GammaSheaf::new(relations, ambient, multiplier)
}

impl GammaSheaf {
    pub fn new(relations: Ideal, ambient: Ideal, multiplier: Polynomial) -> Result<Self> {
        check_same(relations.ring(), ambient.ring())?;
        check_same(relations.ring(), multiplier.ring())?;
        if let Some(g) = ambient.first_outside(&relations)? {
            return Err(Error::Validation {
                inclusion: "K ⊆ N".into(),
                witness: g.to_string(),
            });
        }
        for (ideal, name) in [(&relations, "f·K ⊆ K^[q]"), (&ambient, "f·N ⊆ N^[q]")] {
            let target = ideal.bracket_power(1)?;
            for g in ideal.gens() {
                let image = g.mul(&multiplier)?;
                if !target.contains(&image)? {
                    return Err(Error::Validation {
                        inclusion: name.into(),
                        witness: format!("{g} (f·g = {image})"),
                    });
                }
            }
        }
        Ok(GammaSheaf {
            relations,
            ambient,
            multiplier,
        })
    }

    /// `R` with `γ = f·`, i.e. `K = (0)`, `N = (1)`. Always valid.
    pub fn principal(f: &Polynomial) -> Self {
        let ring = f.ring();
        GammaSheaf {
            relations: Ideal::zero(ring),
            ambient: Ideal::unit(ring),
            multiplier: f.clone(),
        }
    }

    fn with_parts(&self, relations: Ideal, ambient: Ideal) -> GammaSheaf {
        GammaSheaf {
            relations,
            ambient,
            multiplier: self.multiplier.clone(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.multiplier.ring()
    }

    /// `K`
    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// `N`
    pub fn ambient(&self) -> &Ideal {
        &self.ambient
    }

    /// `f`
    pub fn multiplier(&self) -> &Polynomial {
        &self.multiplier
    }

    /// `N ⊆ K`, i.e. `M = 0`.
    pub fn is_zero_sheaf(&self) -> Result<bool> {
        self.relations.contains_ideal(&self.ambient)
    }

    /// `(J^{[q]} : f) ∩ N`: the preimage under `γ` of `σ*(J/K)`.
    fn pullback(&self, j: &Ideal) -> Result<Ideal> {
        if self.multiplier.is_zero() {
            return self.ambient.canonical();
        }
        j.bracket_power(1)?
            .colon(&self.multiplier)?
            .intersection(&self.ambient)?
            .canonical()
    }

    /// The ideal `(K^{[q]} : f) ∩ N`; `ker γ` is this ideal modulo `K`.
    pub fn structural_kernel(&self) -> Result<Ideal> {
        self.pullback(&self.relations)
    }

    /// Kernels of `γ^e`. Since `γ^{e+1} = σ*(γ^e) ∘ γ` and Frobenius is flat,
    /// `K_{e+1} = (K_e^{[q]} : f) ∩ N`, which equals `(K^{[q^{e+1}]} : f^{ν_{e+1}}) ∩ N`.
    /// Each member depends only on the previous one, so the first repetition
    /// `K_e = K_{e+1}` freezes the chain: the induced map on `M/K_e` is
    /// then injective.
    pub fn kernel_chain(&self, e_max: usize) -> Result<KernelChain> {
        let mut ideals = vec![self.relations.canonical()?];
        for _ in 0..e_max {
            let next = self.pullback(ideals.last().unwrap())?;
            if next.equals(ideals.last().unwrap())? {
                return Ok(KernelChain { ideals });
            }
            ideals.push(next);
        }
        Err(Error::Budget {
            what: "kernel chain",
            limit: e_max,
            partial: ideals,
        })
    }

    /// `K_∞`, representing the maximal nilpotent subsheaf `M° = K_∞/K`.
    pub fn max_nilpotent_subsheaf(&self, e_max: usize) -> Result<Ideal> {
        Ok(self.kernel_chain(e_max)?.stable().clone())
    }

    /// Smallest `e ≤ e_max` with `γ^e = 0`, i.e. `f^{ν_e}·N ⊆ K^{[q^e]}`.
    pub fn nilpotency_order(&self, e_max: usize) -> Result<Nilpotency> {
        let mut current = self.relations.canonical()?;
        for e in 1..=e_max {
            let next = self.pullback(&current)?;
            if next.contains_ideal(&self.ambient)? {
                return Ok(Nilpotency::Order(e));
            }
            if next.equals(&current)? {
                // frozen below N: never nilpotent
                return Ok(Nilpotency::NotWithinBudget);
            }
            current = next;
        }
        Ok(Nilpotency::NotWithinBudget)
    }

    /// Direct test of `γ^e = 0` through `f^{ν_e}·N ⊆ K^{[q^e]}`, without the
    /// kernel recursion. Degrees grow like `q^e`.
    pub fn power_vanishes(&self, e: u32) -> Result<bool> {
        if e == 0 {
            return self.is_zero_sheaf();
        }
        let nu = nu_exponent(self.ring().q(), e);
        let nu = u64::try_from(&nu)
            .map_err(|_| Error::Resource(format!("ν_{e} does not fit in 64 bits")))?;
        let power = self.multiplier.pow(nu)?;
        let target = self.relations.bracket_power(e)?;
        target.contains_ideal(&self.ambient.mul_poly(&power)?)
    }

    /// `M̄ = M/M°`: same ambient, relations enlarged to `K_∞`.
    pub fn image_bar(&self, e_max: usize) -> Result<GammaSheaf> {
        let kinf = self.max_nilpotent_subsheaf(e_max)?;
        let ambient = self.ambient.sum(&kinf)?.canonical()?;
        Ok(self.with_parts(kinf, ambient))
    }

    /// `Fr_γ^{-1} M`: the smallest `N' ⊇ K` with `f·N ⊆ N'^{[q]}`, namely
    /// `K + (f·N)^{[1/q]}`. It is contained in `N` because `f·N ⊆ N^{[q]}`.
    pub fn fr_gamma_inv(&self) -> Result<GammaSheaf> {
        let ambient = self.shrink(&self.relations, &self.ambient)?;
        Ok(self.with_parts(self.relations.clone(), ambient))
    }

    fn shrink(&self, relations: &Ideal, ambient: &Ideal) -> Result<Ideal> {
        let image = ambient.mul_poly(&self.multiplier)?;
        relations.sum(&image.root(1)?)?.canonical()
    }

    /// The minimal gamma-sheaf nil-isomorphic to `M`: first pass to `M̄`, then
    /// iterate `N_{i+1} = K_∞ + (f·N_i)^{[1/q]}` until it repeats.
    pub fn minimalize(&self, budgets: &Budgets) -> Result<MinimalizationReport> {
        let chain = self.kernel_chain(budgets.kernel_chain)?;
        let kinf = chain.stable().clone();
        let mut iterates = vec![self.ambient.sum(&kinf)?.canonical()?];
        let fixed = loop {
            if iterates.len() > budgets.fr_iterations {
                return Err(Error::Budget {
                    what: "Fr_γ^{-1} iteration",
                    limit: budgets.fr_iterations,
                    partial: iterates,
                });
            }
            let current = iterates.last().unwrap();
            let next = self.shrink(&kinf, current)?;
            if next.equals(current)? {
                break next;
            }
            iterates.push(next);
        };
        let fr_iterations = iterates.len();

        let after = self.shrink(&kinf, &fixed)?;
        let after2 = self.shrink(&kinf, &after)?;
        let tail_stable = after.equals(&fixed)? && after2.equals(&fixed)?;

        let result = self.with_parts(kinf, fixed);
        let certificate = Certificate {
            structural_map_injective: result.structural_kernel()?.equals(&result.relations)?,
            fr_fixed: result.fr_gamma_inv()?.ambient.equals(&result.ambient)?,
        };
        if !(certificate.structural_map_injective && certificate.fr_fixed && tail_stable) {
            return Err(Error::Invariant(format!(
                "minimalization certificate failed: {certificate:?}, tail stable {tail_stable}"
            )));
        }
        Ok(MinimalizationReport {
            result,
            kernel_chain_length: chain.length(),
            fr_iterations,
            certificate,
            tail_stable,
        })
    }

    /// No nontrivial nilpotent subsheaves (`γ` injective) and no nontrivial
    /// nilpotent quotients (`Fr_γ^{-1} M = M`).
    pub fn is_minimal(&self) -> Result<bool> {
        if !self.structural_kernel()?.equals(&self.relations)? {
            return Ok(false);
        }
        self.fr_gamma_inv()?.ambient.equals(&self.ambient)
    }

    /// `K` and `N` agree with `other`'s as ideals.
    pub fn same_presentation(&self, other: &GammaSheaf) -> Result<bool> {
        Ok(self.relations.equals(&other.relations)? && self.ambient.equals(&other.ambient)?)
    }
}

/// Whether `a` and `b` have the same minimal gamma-sheaf.
///
/// Both must use the same `f`. Minimal representatives `N_1/K_1`, `N_2/K_2`
/// inside one `R` may still differ in how much of a common nilpotent part
/// they carry (two presentations of the zero sheaf, say), so they are
/// identified when `K_1 + N_2 = K_2 + N_1` and `K_1 ∩ N_2 = K_2 ∩ N_1`. With
/// equal relations this is plain equality of the ambient ideals.
pub fn crystal_equal(a: &GammaSheaf, b: &GammaSheaf, budgets: &Budgets) -> Result<bool> {
    check_same(a.ring(), b.ring())?;
    if a.multiplier != b.multiplier {
        return Err(Error::Domain(
            "crystal comparison needs the same structural multiplier".into(),
        ));
    }
    let ma = a.minimalize(budgets)?.result;
    let mb = b.minimalize(budgets)?.result;
    minimal_forms_agree(&ma, &mb)
}

pub(crate) fn minimal_forms_agree(a: &GammaSheaf, b: &GammaSheaf) -> Result<bool> {
    if a.same_presentation(b)? {
        return Ok(true);
    }
    let sums = a
        .relations
        .sum(&b.ambient)?
        .equals(&b.relations.sum(&a.ambient)?)?;
    if !sums {
        return Ok(false);
    }
    a.relations
        .intersection(&b.ambient)?
        .equals(&b.relations.intersection(&a.ambient)?)
}
