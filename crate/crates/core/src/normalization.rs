//! Normalizations (Galois closures) of coverings, computed by two
//! independent routes, plus the Galois and tameness predicates.
//!
//! Route one is arithmetic: χ(N) = χ(𝒪)·|Mon|, where 𝒪 is the ramification
//! orbifold and |Mon| the monodromy group order from the stabilizer chain.
//! Route two is explicit: the component of the off-diagonal deg-fold self
//! product containing the least injective tuple is itself a Galois covering
//! of the base with degree |Mon| and the same ramification orbifold. The two
//! routes must agree; the test suites compare them on every instance.

use num::{BigInt, BigUint, ToPrimitive};

use crate::covering::{HurwitzSystem, Orbifold};
use crate::error::{Error, Result};
use crate::fiber::{self_product_component_of, self_product_offdiagonal};
use crate::group::group_order;

/// Normalization invariants of a covering V: the monodromy order (= degree of
/// the Galois closure), its ramification orbifold, and the closure's exact
/// Euler characteristic and genus. `explicit_cover` carries the tuple-variety
/// realization when it was computed within budget.
#[derive(Clone, Debug)]
pub struct NormalizationData {
    pub mon_order: BigUint,
    pub orbifold: Orbifold,
    pub chi_n: BigInt,
    pub genus_n: u64,
    pub explicit_cover: Option<HurwitzSystem>,
}

/// Order of the monodromy group: the group generated by all handle and
/// branch permutations of the system.
pub fn monodromy_order(h: &HurwitzSystem, cap: u64) -> Result<BigUint> {
    let gens: Vec<_> = h.generators().into_iter().cloned().collect();
    group_order(&gens, cap)
}

/// Route one: genus of the Galois closure from χ(N) = χ(𝒪)·|Mon|.
/// The product must come out as an even integer with non-negative genus;
/// anything else is an internal-consistency failure, not bad input.
pub fn normalization_genus(h: &HurwitzSystem, cap: u64) -> Result<NormalizationData> {
    let mon_order = monodromy_order(h, cap)?;
    let orbifold = h.ramification_orbifold();
    let chi_rat = orbifold.chi() * num::BigRational::from(BigInt::from(mon_order.clone()));
    if !chi_rat.is_integer() {
        return Err(Error::InternalConsistency {
            reason: format!("closure characteristic {} is not an integer", chi_rat),
        });
    }
    let chi_n = chi_rat.to_integer();
    let two_minus = BigInt::from(2) - &chi_n;
    let (genus2, rem) = num::Integer::div_rem(&two_minus, &BigInt::from(2));
    if rem != BigInt::from(0) || genus2 < BigInt::from(0) {
        return Err(Error::InternalConsistency {
            reason: format!("closure characteristic {} is not of the form 2-2g", chi_n),
        });
    }
    let genus_n = genus2.to_u64().ok_or_else(|| Error::InternalConsistency {
        reason: "closure genus out of range".into(),
    })?;
    Ok(NormalizationData {
        mon_order,
        orbifold,
        chi_n,
        genus_n,
        explicit_cover: None,
    })
}

/// Route two: the explicit Galois closure as a covering of the base — the
/// component of the off-diagonal deg-fold self product containing the
/// lexicographically least injective tuple. Degree-one maps are already
/// Galois coverings and are returned unchanged (the tuple construction is
/// degenerate there).
pub fn normalization_explicit(h: &HurwitzSystem, budget: u64) -> Result<HurwitzSystem> {
    let n = h.degree();
    if n == 1 {
        return Ok(h.clone());
    }
    let seed: Vec<usize> = (0..n).collect();
    let component = self_product_component_of(h, n, &seed, budget)?;
    Ok(component.covering)
}

/// Both routes: arithmetic data always, the explicit cover when the orbit
/// exploration stays within `budget` (absent rather than failing otherwise).
pub fn normalization_data(h: &HurwitzSystem, cap: u64, budget: u64) -> Result<NormalizationData> {
    let mut data = normalization_genus(h, cap)?;
    match normalization_explicit(h, budget) {
        Ok(cover) => data.explicit_cover = Some(cover),
        Err(Error::BudgetExceeded { .. }) => {}
        Err(other) => return Err(other),
    }
    Ok(data)
}

/// A covering is Galois iff its monodromy group order equals its degree.
pub fn is_galois(h: &HurwitzSystem, cap: u64) -> Result<bool> {
    Ok(monodromy_order(h, cap)? == BigUint::from(h.degree()))
}

/// Witness for wildness: an off-diagonal component of the 2-fold self
/// product with genus below two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameWitness {
    pub orbit_key: u64,
    pub orbit_size: usize,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameVerdict {
    pub tame: bool,
    pub witness: Option<TameWitness>,
}

/// A map is tame when every off-diagonal component of its 2-fold self
/// product has genus at least two; otherwise the first low-genus component
/// (in decomposition order) is returned as witness. Genus-one components
/// count as wild. Degree-one maps are vacuously tame: their self product
/// consists of the diagonal alone.
pub fn is_tame(h: &HurwitzSystem, budget: u64) -> Result<TameVerdict> {
    if h.degree() == 1 {
        return Ok(TameVerdict {
            tame: true,
            witness: None,
        });
    }
    let dec = self_product_offdiagonal(h, 2, budget)?;
    for c in &dec.components {
        if c.genus < 2 {
            return Ok(TameVerdict {
                tame: false,
                witness: Some(TameWitness {
                    orbit_key: c.orbit_key,
                    orbit_size: c.orbit_size,
                    genus: c.genus,
                }),
            });
        }
    }
    Ok(TameVerdict {
        tame: true,
        witness: None,
    })
}
