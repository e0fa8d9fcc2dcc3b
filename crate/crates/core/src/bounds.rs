//! Exact genus inequalities evaluated on decomposition and normalization
//! data, collected into a structured, deterministic report.
//!
//! Every check is first-class data: an applicable check that fails is a
//! correctness bug somewhere (the inequalities hold for all genuine covering
//! data), an inapplicable check records which hypothesis failed, and a
//! skipped check records the cap or budget that stopped it. All sides are
//! exact big rationals.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint};
use serde::Serialize;

use crate::covering::HurwitzSystem;
use crate::error::{Error, Result};
use crate::fiber::{
    abhyankar_chi_total, fiber_product, self_product_offdiagonal, AlignedPair, Component,
    FiberProductDecomposition,
};
use crate::normalization::{is_tame, normalization_data, NormalizationData, TameVerdict};

/// How the two sides of a check are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// lhs ≥ rhs
    GreaterEq,
    /// lhs > rhs (strict form)
    Greater,
    /// lhs = rhs (oracle equalities)
    Equal,
}

impl Relation {
    fn compare(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::GreaterEq => lhs >= rhs,
            Relation::Greater => lhs > rhs,
            Relation::Equal => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::GreaterEq => ">=",
            Relation::Greater => ">",
            Relation::Equal => "=",
        }
    }
}

/// One evaluated (or gated) inequality.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub name: &'static str,
    pub context: String,
    pub applicable: bool,
    pub skipped: bool,
    /// Failed hypothesis (inapplicable) or exhausted cap/budget (skipped).
    pub reason: Option<String>,
    pub lhs: Option<BigRational>,
    pub rhs: Option<BigRational>,
    pub relation: Relation,
    pub holds: Option<bool>,
}

impl BoundCheck {
    fn evaluated(
        name: &'static str,
        context: impl Into<String>,
        relation: Relation,
        lhs: BigRational,
        rhs: BigRational,
    ) -> Self {
        let holds = relation.compare(&lhs, &rhs);
        BoundCheck {
            name,
            context: context.into(),
            applicable: true,
            skipped: false,
            reason: None,
            lhs: Some(lhs),
            rhs: Some(rhs),
            relation,
            holds: Some(holds),
        }
    }

    fn inapplicable(
        name: &'static str,
        context: impl Into<String>,
        relation: Relation,
        reason: impl Into<String>,
    ) -> Self {
        BoundCheck {
            name,
            context: context.into(),
            applicable: false,
            skipped: false,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
            relation,
            holds: None,
        }
    }

    fn skipped(
        name: &'static str,
        context: impl Into<String>,
        relation: Relation,
        reason: impl Into<String>,
    ) -> Self {
        BoundCheck {
            name,
            context: context.into(),
            applicable: false,
            skipped: true,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
            relation,
            holds: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }
}

/// Verdicts for every inequality evaluated on one aligned pair.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub checks: Vec<BoundCheck>,
}

/// Per-name counters over a report or a whole fuzz corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounter {
    pub holds: u64,
    pub failed: u64,
    pub inapplicable: u64,
    pub skipped: u64,
}

impl BoundReport {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.failed())
    }

    pub fn counters(&self) -> BTreeMap<String, CheckCounter> {
        let mut map: BTreeMap<String, CheckCounter> = BTreeMap::new();
        for check in &self.checks {
            let slot = map.entry(check.name.to_string()).or_default();
            if check.skipped {
                slot.skipped += 1;
            } else if !check.applicable {
                slot.inapplicable += 1;
            } else if check.failed() {
                slot.failed += 1;
            } else {
                slot.holds += 1;
            }
        }
        map
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct RawReport<'a> {
            format_version: u32,
            checks: Vec<RawCheck<'a>>,
            summary: BTreeMap<String, CheckCounter>,
            failed: bool,
        }
        #[derive(Serialize)]
        struct RawCheck<'a> {
            name: &'a str,
            context: &'a str,
            status: &'a str,
            applicable: bool,
            skipped: bool,
            relation: Relation,
            strict: bool,
            lhs: Option<String>,
            rhs: Option<String>,
            holds: Option<bool>,
            reason: Option<&'a str>,
        }
        let raw = RawReport {
            format_version: 1,
            checks: self
                .checks
                .iter()
                .map(|c| RawCheck {
                    name: c.name,
                    context: &c.context,
                    status: if c.skipped {
                        "skipped"
                    } else if !c.applicable {
                        "inapplicable"
                    } else if c.failed() {
                        "failed"
                    } else {
                        "holds"
                    },
                    applicable: c.applicable,
                    skipped: c.skipped,
                    relation: c.relation,
                    strict: c.relation == Relation::Greater,
                    lhs: c.lhs.as_ref().map(ratio_string),
                    rhs: c.rhs.as_ref().map(ratio_string),
                    holds: c.holds,
                    reason: c.reason.as_deref(),
                })
                .collect(),
            summary: self.counters(),
            failed: self.any_failed(),
        };
        serde_json::to_string_pretty(&raw).expect("report serialization cannot fail")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let line = if c.skipped {
                format!(
                    "SKIP {} [{}] -- {}",
                    c.name,
                    c.context,
                    c.reason.as_deref().unwrap_or("")
                )
            } else if !c.applicable {
                format!(
                    "N/A  {} [{}] -- {}",
                    c.name,
                    c.context,
                    c.reason.as_deref().unwrap_or("")
                )
            } else {
                format!(
                    "{} {} [{}] {} {} {}",
                    if c.failed() { "FAIL" } else { "PASS" },
                    c.name,
                    c.context,
                    ratio_string(c.lhs.as_ref().unwrap()),
                    c.relation.symbol(),
                    ratio_string(c.rhs.as_ref().unwrap()),
                )
            };
            out.push_str(&line);
            out.push('\n');
        }
        let counters = self.counters();
        let (mut holds, mut failed, mut inapplicable, mut skipped) = (0, 0, 0, 0);
        for c in counters.values() {
            holds += c.holds;
            failed += c.failed;
            inapplicable += c.inapplicable;
            skipped += c.skipped;
        }
        out.push_str(&format!(
            "checks: {} hold, {} failed, {} inapplicable, {} skipped\n",
            holds, failed, inapplicable, skipped
        ));
        out
    }
}

/// Caps and budgets for one verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub group_order_cap: u64,
    pub tuple_budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            group_order_cap: 10_000_000,
            tuple_budget: 10_000_000,
        }
    }
}

pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn int(value: i64) -> BigRational {
    BigRational::from(BigInt::from(value))
}

fn usize_rat(value: usize) -> BigRational {
    BigRational::from(BigInt::from(value))
}

fn biguint_rat(value: &BigUint) -> BigRational {
    BigRational::from(BigInt::from(value.clone()))
}

/// n·(n−1)⋯(n−k+1): the number of injective k-tuples from n points.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    falling_factorial(n, n)
}

fn genus_rat(sys: &HurwitzSystem) -> Result<BigRational> {
    Ok(usize_rat(sys.genus()? as usize))
}

fn component_context(index: usize, c: &Component) -> String {
    format!(
        "component {} (orbit {}, size {})",
        index, c.orbit_key, c.orbit_size
    )
}

/// Lower bound for the genus of a one-component fiber product: with
/// deg W ≥ 2 and closure genus of W above one,
/// `g(E) ≥ (g(R)−1)(deg W−1) + 1 + deg P/84`, strict over a sphere base.
/// Emits the main form, the weaker degree-only form
/// `g(E) ≥ (deg P − 84 deg W + 168)/84`, and the sphere-strict variant.
pub fn unique_component_checks(
    pair: &AlignedPair,
    dec: &FiberProductDecomposition,
    norm_w: Option<&NormalizationData>,
) -> Result<Vec<BoundCheck>> {
    const MAIN: &str = "unique_component_genus_bound";
    const DEGREE_FORM: &str = "unique_component_genus_bound_degree_form";
    const STRICT: &str = "unique_component_genus_bound_strict";
    let context = "unique component";
    let names = [
        (MAIN, Relation::GreaterEq),
        (DEGREE_FORM, Relation::GreaterEq),
        (STRICT, Relation::Greater),
    ];

    let gate = |reason: &str| -> Vec<BoundCheck> {
        names
            .iter()
            .map(|&(name, rel)| BoundCheck::inapplicable(name, context, rel, reason))
            .collect()
    };

    let Some(norm_w) = norm_w else {
        return Ok(names
            .iter()
            .map(|&(name, rel)| {
                BoundCheck::skipped(name, context, rel, "group order cap exceeded for W")
            })
            .collect());
    };
    if dec.deg_w < 2 {
        return Ok(gate("deg W < 2"));
    }
    let Some(component) = dec.unique_component() else {
        return Ok(gate("fiber product has more than one component"));
    };
    if norm_w.genus_n <= 1 {
        return Ok(gate("g(N_W) <= 1"));
    }

    let g_e = usize_rat(component.genus as usize);
    let g_r = genus_rat(pair.p())?;
    let deg_p = usize_rat(dec.deg_p);
    let deg_w = usize_rat(dec.deg_w);
    let rhs_main = (g_r - int(1)) * (deg_w.clone() - int(1)) + int(1) + deg_p.clone() / int(84);
    let rhs_weak = (deg_p - int(84) * deg_w + int(168)) / int(84);

    let mut out = vec![
        BoundCheck::evaluated(
            MAIN,
            context,
            Relation::GreaterEq,
            g_e.clone(),
            rhs_main.clone(),
        ),
        BoundCheck::evaluated(
            DEGREE_FORM,
            context,
            Relation::GreaterEq,
            g_e.clone(),
            rhs_weak,
        ),
    ];
    if pair.p().base_genus() == 0 {
        out.push(BoundCheck::evaluated(
            STRICT,
            context,
            Relation::Greater,
            g_e,
            rhs_main,
        ));
    } else {
        out.push(BoundCheck::inapplicable(
            STRICT,
            context,
            Relation::Greater,
            "base is not a sphere",
        ));
    }
    Ok(out)
}

/// Per-component lower bound for reduced squares: with deg V > 1 and every
/// off-diagonal component of the deg V-fold self product of W of genus ≥ 2,
/// `g(E_j) ≥ (g(R)−1)(deg V−1) + 1 + deg P/(deg W·(deg W−1)⋯(deg W−deg V+1))`.
/// `min_genus_kfold` is the minimal genus over that self product; `None`
/// means its enumeration exceeded the budget.
pub fn multi_component_check(
    pair: &AlignedPair,
    dec: &FiberProductDecomposition,
    index: usize,
    component: &Component,
    min_genus_kfold: Option<u64>,
) -> Result<BoundCheck> {
    const NAME: &str = "multi_component_genus_bound";
    let context = component_context(index, component);
    if component.deg_v < 2 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::GreaterEq,
            "deg V = 1",
        ));
    }
    let Some(min_genus) = min_genus_kfold else {
        return Ok(BoundCheck::skipped(
            NAME,
            context,
            Relation::GreaterEq,
            "tuple budget exceeded for the k-fold self product of W",
        ));
    };
    if min_genus < 2 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::GreaterEq,
            format!(
                "k-fold self product of W has a component of genus {}",
                min_genus
            ),
        ));
    }
    let g_e = usize_rat(component.genus as usize);
    let g_r = genus_rat(pair.p())?;
    let ff = falling_factorial(dec.deg_w, component.deg_v);
    let rhs = (g_r - int(1)) * usize_rat(component.deg_v - 1)
        + int(1)
        + usize_rat(dec.deg_p) / BigRational::from(ff);
    Ok(BoundCheck::evaluated(
        NAME,
        context,
        Relation::GreaterEq,
        g_e,
        rhs,
    ))
}

/// Strict per-component bound in the all-spheres case: for a component of
/// bi-degree (k, l) with k = deg V > 1, `g(C) > 2 − k + deg P/(n⋯(n−k+1))`
/// with n = deg W, provided the k-fold self product of W has no off-diagonal
/// component of genus ≤ 1. The pair is read with W in the role of the map
/// whose self products gate the bound and P as the other factor.
pub fn sphere_component_check(
    pair: &AlignedPair,
    dec: &FiberProductDecomposition,
    index: usize,
    component: &Component,
    min_genus_kfold: Option<u64>,
) -> Result<BoundCheck> {
    const NAME: &str = "sphere_component_genus_bound";
    let context = component_context(index, component);
    if pair.p().base_genus() != 0 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "base is not a sphere",
        ));
    }
    if pair.p().genus()? != 0 || pair.w().genus()? != 0 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "a source surface is not a sphere",
        ));
    }
    if component.deg_v < 2 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "bi-degree k = 1",
        ));
    }
    let Some(min_genus) = min_genus_kfold else {
        return Ok(BoundCheck::skipped(
            NAME,
            context,
            Relation::Greater,
            "tuple budget exceeded for the k-fold self product of W",
        ));
    };
    if min_genus < 2 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            format!(
                "k-fold self product of W has a component of genus {}",
                min_genus
            ),
        ));
    }
    let k = component.deg_v;
    let rhs = int(2) - usize_rat(k)
        + usize_rat(dec.deg_p) / BigRational::from(falling_factorial(dec.deg_w, k));
    Ok(BoundCheck::evaluated(
        NAME,
        context,
        Relation::Greater,
        usize_rat(component.genus as usize),
        rhs,
    ))
}

/// Per-component bound under tameness of W over spheres:
/// `g(C) > 2 − n + deg P/n!` with n = deg W, for every component that is not
/// a graph. Components with deg V = 1 are the unless-clause (the graph
/// x − S(y) = 0) and are reported as exceptions, with no bound asserted.
pub fn tame_component_check(
    pair: &AlignedPair,
    dec: &FiberProductDecomposition,
    index: usize,
    component: &Component,
    tame_w: Option<&TameVerdict>,
) -> Result<BoundCheck> {
    const NAME: &str = "tame_component_genus_bound";
    let context = component_context(index, component);
    if pair.p().base_genus() != 0 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "base is not a sphere",
        ));
    }
    if pair.p().genus()? != 0 || pair.w().genus()? != 0 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "a source surface is not a sphere",
        ));
    }
    let Some(tame_w) = tame_w else {
        return Ok(BoundCheck::skipped(
            NAME,
            context,
            Relation::Greater,
            "tuple budget exceeded for the tameness test of W",
        ));
    };
    if !tame_w.tame {
        let witness = tame_w
            .witness
            .as_ref()
            .map(|w| format!(" (witness genus {})", w.genus))
            .unwrap_or_default();
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            format!("W is wild{}", witness),
        ));
    }
    if component.deg_v < 2 {
        return Ok(BoundCheck::inapplicable(
            NAME,
            context,
            Relation::Greater,
            "graph component (deg V = 1, the unless-clause)",
        ));
    }
    let rhs = int(2) - usize_rat(dec.deg_w)
        + usize_rat(dec.deg_p) / BigRational::from(factorial(dec.deg_w));
    Ok(BoundCheck::evaluated(
        NAME,
        context,
        Relation::Greater,
        usize_rat(component.genus as usize),
        rhs,
    ))
}

/// Castelnuovo–Severi upper bound for every component:
/// `g(E_j) ≤ g(R)·deg V + g(T)·deg U + (deg V−1)(deg U−1)`, stated here as
/// bound ≥ genus. Components of a fiber product have no common right factor,
/// so the inequality always applies.
pub fn castelnuovo_severi_check(
    pair: &AlignedPair,
    index: usize,
    component: &Component,
) -> Result<BoundCheck> {
    const NAME: &str = "castelnuovo_severi";
    let g_r = genus_rat(pair.p())?;
    let g_t = genus_rat(pair.w())?;
    let bound = g_r * usize_rat(component.deg_v)
        + g_t * usize_rat(component.deg_u)
        + usize_rat(component.deg_v - 1) * usize_rat(component.deg_u - 1);
    Ok(BoundCheck::evaluated(
        NAME,
        component_context(index, component),
        Relation::GreaterEq,
        bound,
        usize_rat(component.genus as usize),
    ))
}

/// Hurwitz bound through the closure: the closure degree |Mon(W)| equals the
/// order of its covering group, which is at most the full automorphism group
/// order 84(g(N_W)−1) once g(N_W) > 1.
pub fn hurwitz_check(norm_w: Option<&NormalizationData>) -> BoundCheck {
    const NAME: &str = "hurwitz_automorphism_bound";
    let context = "closure of W";
    let Some(norm_w) = norm_w else {
        return BoundCheck::skipped(
            NAME,
            context,
            Relation::GreaterEq,
            "group order cap exceeded for W",
        );
    };
    if norm_w.genus_n <= 1 {
        return BoundCheck::inapplicable(NAME, context, Relation::GreaterEq, "g(N_W) <= 1");
    }
    let bound = int(84) * usize_rat(norm_w.genus_n as usize - 1);
    BoundCheck::evaluated(
        NAME,
        context,
        Relation::GreaterEq,
        bound,
        biguint_rat(&norm_w.mon_order),
    )
}

/// Orbifold characteristic lower bound for any covering:
/// `χ(𝒪) ≥ χ(E) + χ(base)(1 − deg)`, strict over a sphere base at degree ≥ 2
/// (such maps always have critical values).
pub fn orbifold_chi_check(h: &HurwitzSystem, context: impl Into<String>) -> BoundCheck {
    const NAME: &str = "orbifold_chi_lower_bound";
    let relation = if h.base_genus() == 0 && h.degree() >= 2 {
        Relation::Greater
    } else {
        Relation::GreaterEq
    };
    let chi_orb = h.ramification_orbifold().chi();
    let chi_base = int(2 - 2 * h.base_genus() as i64);
    let rhs = int(h.euler_characteristic()) + chi_base * (int(1) - usize_rat(h.degree()));
    BoundCheck::evaluated(NAME, context, relation, chi_orb, rhs)
}

/// Runs the decomposition, the normalization of W, and every check on one
/// aligned pair. Cap and budget exhaustion become skipped entries; anything
/// else is an error. The report is deterministic given the pair and config.
pub fn verify_all(pair: &AlignedPair, config: &VerifyConfig) -> Result<BoundReport> {
    let dec = fiber_product(pair)?;
    let mut checks = Vec::new();

    // Exact-equality oracles for the decomposition itself.
    checks.push(BoundCheck::evaluated(
        "abhyankar_total_chi",
        "whole decomposition",
        Relation::Equal,
        int(dec.chi_total()),
        int(abhyankar_chi_total(pair)),
    ));
    let sum_v: usize = dec.components.iter().map(|c| c.deg_v).sum();
    let sum_u: usize = dec.components.iter().map(|c| c.deg_u).sum();
    checks.push(BoundCheck::evaluated(
        "projection_degree_sum_v",
        "whole decomposition",
        Relation::Equal,
        usize_rat(sum_v),
        usize_rat(dec.deg_w),
    ));
    checks.push(BoundCheck::evaluated(
        "projection_degree_sum_u",
        "whole decomposition",
        Relation::Equal,
        usize_rat(sum_u),
        usize_rat(dec.deg_p),
    ));
    let remainder: usize = dec
        .components
        .iter()
        .map(|c| c.orbit_size % dec.deg_p + c.orbit_size % dec.deg_w)
        .sum();
    checks.push(BoundCheck::evaluated(
        "orbit_divisibility",
        "whole decomposition",
        Relation::Equal,
        usize_rat(remainder),
        int(0),
    ));
    if let Some(c) = dec.unique_component() {
        checks.push(BoundCheck::evaluated(
            "unique_component_degree_v",
            "unique component",
            Relation::Equal,
            usize_rat(c.deg_v),
            usize_rat(dec.deg_w),
        ));
        checks.push(BoundCheck::evaluated(
            "unique_component_degree_u",
            "unique component",
            Relation::Equal,
            usize_rat(c.deg_u),
            usize_rat(dec.deg_p),
        ));
    }

    checks.push(orbifold_chi_check(pair.p(), "input P"));
    checks.push(orbifold_chi_check(pair.w(), "input W"));
    for (i, c) in dec.components.iter().enumerate() {
        checks.push(orbifold_chi_check(&c.covering, component_context(i, c)));
    }

    let norm_w = match normalization_data(pair.w(), config.group_order_cap, config.tuple_budget) {
        Ok(data) => Some(data),
        Err(Error::OrderExceedsCap { .. }) => None,
        Err(other) => return Err(other),
    };
    checks.extend(unique_component_checks(pair, &dec, norm_w.as_ref())?);
    checks.push(hurwitz_check(norm_w.as_ref()));

    // Minimal genus of the k-fold self products of W, cached per k.
    let mut kfold_min_genus: BTreeMap<usize, Option<u64>> = BTreeMap::new();
    for c in &dec.components {
        let k = c.deg_v;
        if k < 2 || kfold_min_genus.contains_key(&k) {
            continue;
        }
        let entry = match self_product_offdiagonal(pair.w(), k, config.tuple_budget) {
            Ok(sp) => sp.min_genus(),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(other) => return Err(other),
        };
        kfold_min_genus.insert(k, entry);
    }

    let tame_w = match is_tame(pair.w(), config.tuple_budget) {
        Ok(verdict) => Some(verdict),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(other) => return Err(other),
    };

    for (i, c) in dec.components.iter().enumerate() {
        let min_genus = kfold_min_genus.get(&c.deg_v).copied().flatten();
        checks.push(multi_component_check(pair, &dec, i, c, min_genus)?);
        checks.push(sphere_component_check(pair, &dec, i, c, min_genus)?);
        checks.push(tame_component_check(pair, &dec, i, c, tame_w.as_ref())?);
        checks.push(castelnuovo_severi_check(pair, i, c)?);
    }

    Ok(BoundReport { checks })
}
