//! Fiber products of aligned coverings: component decomposition over the
//! degree grid, the GCD formula for the total Euler characteristic, and
//! off-diagonal self products on injective k-tuples.

use std::collections::HashMap;

use num::integer::gcd;

use crate::covering::{BranchPoint, HandlePair, HurwitzSystem};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Two coverings of one base carrying the same branch label list (identity
/// permutations filling the labels where a map is unbranched) and handle
/// lists of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignedPair {
    p: HurwitzSystem,
    w: HurwitzSystem,
}

impl AlignedPair {
    pub fn new(p: HurwitzSystem, w: HurwitzSystem) -> Result<Self> {
        if p.base_genus() != w.base_genus() {
            return Err(Error::NotAligned {
                reason: format!("base genus {} vs {}", p.base_genus(), w.base_genus()),
            });
        }
        let p_labels: Vec<&str> = p.branch_points().iter().map(|b| b.label.as_str()).collect();
        let w_labels: Vec<&str> = w.branch_points().iter().map(|b| b.label.as_str()).collect();
        if p_labels != w_labels {
            return Err(Error::NotAligned {
                reason: format!(
                    "branch label lists differ: {:?} vs {:?}",
                    p_labels, w_labels
                ),
            });
        }
        Ok(AlignedPair { p, w })
    }

    pub fn p(&self) -> &HurwitzSystem {
        &self.p
    }

    pub fn w(&self) -> &HurwitzSystem {
        &self.w
    }

    pub fn labels(&self) -> Vec<String> {
        self.p
            .branch_points()
            .iter()
            .map(|b| b.label.clone())
            .collect()
    }
}

/// Aligns two coverings of the same base onto the merged branch list
/// `c(P) ∪ c(W)`, inserting identity permutations where a map is unbranched.
///
/// Branch products are order-sensitive, so the merged list must preserve each
/// input's relative label order; when the shared labels appear in
/// incompatible orders there is no consistent merge and the pair is rejected
/// with [`Error::LabelConflict`]. P-only and W-only labels are interleaved at
/// the earliest position compatible with both orders.
pub fn align(p: &HurwitzSystem, w: &HurwitzSystem) -> Result<AlignedPair> {
    p.validate()?;
    w.validate()?;
    if p.base_genus() != w.base_genus() {
        return Err(Error::BaseMismatch {
            left: p.base_genus(),
            right: w.base_genus(),
        });
    }
    let p_labels: Vec<&str> = p.branch_points().iter().map(|b| b.label.as_str()).collect();
    let w_labels: Vec<&str> = w.branch_points().iter().map(|b| b.label.as_str()).collect();
    let shared_in_p: Vec<&str> = p_labels
        .iter()
        .filter(|l| w_labels.contains(*l))
        .copied()
        .collect();
    let shared_in_w: Vec<&str> = w_labels
        .iter()
        .filter(|l| p_labels.contains(*l))
        .copied()
        .collect();
    if shared_in_p != shared_in_w {
        let clash = shared_in_p
            .iter()
            .zip(&shared_in_w)
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.to_string())
            .unwrap_or_default();
        return Err(Error::LabelConflict { label: clash });
    }

    // Merge: walk the common shared sequence; before each shared label emit
    // the pending P-only labels, then the pending W-only labels.
    let mut merged: Vec<String> = Vec::new();
    let mut pi = 0;
    let mut wi = 0;
    for shared in &shared_in_p {
        while p_labels[pi] != *shared {
            merged.push(p_labels[pi].to_string());
            pi += 1;
        }
        while w_labels[wi] != *shared {
            merged.push(w_labels[wi].to_string());
            wi += 1;
        }
        merged.push(shared.to_string());
        pi += 1;
        wi += 1;
    }
    merged.extend(p_labels[pi..].iter().map(|l| l.to_string()));
    merged.extend(w_labels[wi..].iter().map(|l| l.to_string()));

    let reindex = |sys: &HurwitzSystem| -> HurwitzSystem {
        let by_label: HashMap<&str, &Permutation> = sys
            .branch_points()
            .iter()
            .map(|b| (b.label.as_str(), &b.perm))
            .collect();
        let branch = merged
            .iter()
            .map(|label| {
                let perm = by_label
                    .get(label.as_str())
                    .map(|p| (*p).clone())
                    .unwrap_or_else(|| Permutation::identity(sys.degree()));
                BranchPoint::new(label.clone(), perm)
            })
            .collect();
        HurwitzSystem::new_unchecked(
            sys.degree(),
            sys.base_genus(),
            sys.handles().to_vec(),
            branch,
        )
    };
    AlignedPair::new(reindex(p), reindex(w))
}

/// One component of a fiber product or self product: the restricted covering
/// of the common base, its projection degrees, and its genus.
#[derive(Clone, Debug)]
pub struct Component {
    /// Restricted monodromy on the orbit, over the same base and branch list.
    pub covering: HurwitzSystem,
    pub orbit_size: usize,
    /// Minimal encoded point of the orbit. Grid points are encoded 1-based as
    /// `(i−1)·deg W + (j−1) + 1`; injective k-tuples by their 0-based rank in
    /// falling-factorial mixed-radix order.
    pub orbit_key: u64,
    /// Degree of the projection to the source of P (grid case) or of any
    /// coordinate projection (self products).
    pub deg_v: usize,
    /// Degree of the projection to the source of W.
    pub deg_u: usize,
    pub chi: i64,
    pub genus: u64,
    /// Whether no orbit point has equal coordinates; meaningful for
    /// self products (always true on injective tuples).
    pub off_diagonal: bool,
}

/// Decomposition of the fiber product of an aligned pair into components,
/// sorted by (orbit size, orbit key).
#[derive(Clone, Debug)]
pub struct FiberProductDecomposition {
    pub components: Vec<Component>,
    pub deg_p: usize,
    pub deg_w: usize,
}

impl FiberProductDecomposition {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn unique_component(&self) -> Option<&Component> {
        match self.components.as_slice() {
            [single] => Some(single),
            _ => None,
        }
    }

    pub fn chi_total(&self) -> i64 {
        self.components.iter().map(|c| c.chi).sum()
    }
}

/// Decomposition of the k-fold off-diagonal self product of one covering.
#[derive(Clone, Debug)]
pub struct SelfProductDecomposition {
    pub components: Vec<Component>,
    pub k: usize,
    pub deg_v: usize,
    /// Number of injective k-tuples, i.e. deg V · (deg V − 1) ⋯ (deg V − k + 1).
    pub total_points: u64,
}

impl SelfProductDecomposition {
    pub fn min_genus(&self) -> Option<u64> {
        self.components.iter().map(|c| c.genus).min()
    }
}

fn explore_orbits<F>(num_points: u64, num_gens: usize, apply: &mut F) -> Vec<Vec<u64>>
where
    F: FnMut(usize, u64) -> u64,
{
    let mut seen = vec![false; num_points as usize];
    let mut orbits = Vec::new();
    for seed in 0..num_points {
        if seen[seed as usize] {
            continue;
        }
        let mut orbit = vec![seed];
        seen[seed as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for gi in 0..num_gens {
                let y = apply(gi, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Restricts the encoded action to a sorted orbit, returning one permutation
/// per generator slot.
fn restrict_to_orbit<F>(orbit: &[u64], num_gens: usize, apply: &mut F) -> Vec<Permutation>
where
    F: FnMut(usize, u64) -> u64,
{
    let index: HashMap<u64, usize> = orbit.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    (0..num_gens)
        .map(|gi| {
            let images = orbit.iter().map(|&e| index[&apply(gi, e)]).collect();
            Permutation::from_images(images).expect("restricted action is a bijection")
        })
        .collect()
}

/// Assembles a component covering from restricted generator permutations in
/// relation order (handles first, then branch permutations). Validity is by
/// construction; debug builds re-verify.
fn component_system(
    base_genus: usize,
    labels: &[String],
    restricted: Vec<Permutation>,
    degree: usize,
) -> HurwitzSystem {
    let mut it = restricted.into_iter();
    let handles = (0..base_genus)
        .map(|_| HandlePair {
            a: it.next().expect("handle slot"),
            b: it.next().expect("handle slot"),
        })
        .collect();
    let branch = labels
        .iter()
        .map(|label| BranchPoint::new(label.clone(), it.next().expect("branch slot")))
        .collect();
    HurwitzSystem::new_unchecked(degree, base_genus, handles, branch)
}

#[allow(clippy::too_many_arguments)]
fn build_component<F>(
    orbit: Vec<u64>,
    base_genus: usize,
    labels: &[String],
    num_gens: usize,
    apply: &mut F,
    deg_p: usize,
    deg_w: usize,
    off_diagonal: bool,
    key_offset: u64,
) -> Result<Component>
where
    F: FnMut(usize, u64) -> u64,
{
    let size = orbit.len();
    if !size.is_multiple_of(deg_p) || !size.is_multiple_of(deg_w) {
        return Err(Error::InternalConsistency {
            reason: format!(
                "orbit size {} not divisible by projection degrees {} and {}",
                size, deg_p, deg_w
            ),
        });
    }
    let restricted = restrict_to_orbit(&orbit, num_gens, apply);
    let covering = component_system(base_genus, labels, restricted, size);
    let chi = covering.euler_characteristic();
    let genus = covering.genus()?;
    Ok(Component {
        covering,
        orbit_size: size,
        orbit_key: orbit[0] + key_offset,
        deg_v: size / deg_p,
        deg_u: size / deg_w,
        chi,
        genus,
        off_diagonal,
    })
}

/// Decomposes the fiber product of an aligned pair: each generator of the
/// common base acts simultaneously through P's and W's permutations on the
/// grid `{1..deg P} × {1..deg W}`; the orbits are the components.
pub fn fiber_product(pair: &AlignedPair) -> Result<FiberProductDecomposition> {
    let (p, w) = (pair.p(), pair.w());
    let np = p.degree();
    let nw = w.degree();
    let p_gens = p.generators();
    let w_gens = w.generators();
    let num_gens = p_gens.len();
    let mut apply = |gi: usize, e: u64| -> u64 {
        let (i, j) = ((e / nw as u64) as usize, (e % nw as u64) as usize);
        (p_gens[gi].apply(i) * nw + w_gens[gi].apply(j)) as u64
    };
    let labels = pair.labels();
    let orbits = explore_orbits((np * nw) as u64, num_gens, &mut apply);
    let mut components = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let off_diagonal = orbit.iter().all(|&e| e / nw as u64 != e % nw as u64);
        components.push(build_component(
            orbit,
            p.base_genus(),
            &labels,
            num_gens,
            &mut apply,
            np,
            nw,
            off_diagonal,
            1,
        )?);
    }
    components.sort_by_key(|c| (c.orbit_size, c.orbit_key));
    Ok(FiberProductDecomposition {
        components,
        deg_p: np,
        deg_w: nw,
    })
}

/// The GCD formula for the total Euler characteristic of the fiber product,
/// evaluated directly from the two passports without computing orbits:
/// `(χ(C) − r)·deg P·deg W + Σ_i Σ_{j1} Σ_{j2} gcd(p_{i,j1}, w_{i,j2})`,
/// where `r` counts the labels critical for at least one of the two maps and
/// the inner sums run over all local multiplicities (fixed points included).
/// This is the independent oracle for [`fiber_product`]: the orbit-based
/// total must match it exactly on every aligned pair.
pub fn abhyankar_chi_total(pair: &AlignedPair) -> i64 {
    let (p, w) = (pair.p(), pair.w());
    let chi_base = 2 - 2 * p.base_genus() as i64;
    let mut r = 0i64;
    let mut gcd_sum = 0i64;
    for (bp, bw) in p.branch_points().iter().zip(w.branch_points()) {
        if bp.perm.is_identity() && bw.perm.is_identity() {
            continue;
        }
        r += 1;
        for &pl in bp.perm.cycle_type().parts() {
            for &wl in bw.perm.cycle_type().parts() {
                gcd_sum += gcd(pl, wl) as i64;
            }
        }
    }
    (chi_base - r) * (p.degree() * w.degree()) as i64 + gcd_sum
}

/// Number of injective k-tuples from an n-point set: n·(n−1)⋯(n−k+1).
/// Saturates at `u64::MAX` instead of overflowing.
pub fn injective_tuple_count(n: usize, k: usize) -> u64 {
    let mut total = 1u128;
    for i in 0..k {
        total = total.saturating_mul((n - i) as u128);
        if total > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    total as u64
}

/// Rank of an injective tuple in falling-factorial mixed-radix order: the
/// i-th digit is the position of `tuple[i]` among the points not yet used,
/// and digit i has radix n − i.
pub fn tuple_rank(n: usize, tuple: &[usize]) -> u64 {
    let mut available: Vec<usize> = (0..n).collect();
    let mut rank = 0u64;
    for (i, &t) in tuple.iter().enumerate() {
        let d = available
            .iter()
            .position(|&x| x == t)
            .expect("injective tuple");
        rank = rank * (n - i) as u64 + d as u64;
        available.remove(d);
    }
    rank
}

/// Inverse of [`tuple_rank`].
pub fn tuple_unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut digits = vec![0usize; k];
    for i in (1..k).rev() {
        let radix = (n - i) as u64;
        digits[i] = (rank % radix) as usize;
        rank /= radix;
    }
    digits[0] = rank as usize;
    let mut available: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| available.remove(d)).collect()
}

struct TupleAction<'a> {
    n: usize,
    k: usize,
    gens: Vec<&'a Permutation>,
}

impl TupleAction<'_> {
    fn apply(&self, gi: usize, rank: u64) -> u64 {
        let tuple = tuple_unrank(self.n, self.k, rank);
        let image: Vec<usize> = tuple.iter().map(|&x| self.gens[gi].apply(x)).collect();
        tuple_rank(self.n, &image)
    }
}

/// Components of the diagonal action on injective k-tuples of sheets of `v`
/// (the k-fold fiber product of `v` with itself, big diagonal removed).
/// Full enumeration; errors with [`Error::BudgetExceeded`] when the tuple
/// space is larger than `budget`.
pub fn self_product_offdiagonal(
    v: &HurwitzSystem,
    k: usize,
    budget: u64,
) -> Result<SelfProductDecomposition> {
    let n = v.degree();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    let total = injective_tuple_count(n, k);
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let action = TupleAction {
        n,
        k,
        gens: v.generators(),
    };
    let num_gens = action.gens.len();
    let labels: Vec<String> = v.branch_points().iter().map(|b| b.label.clone()).collect();
    let mut apply = |gi: usize, e: u64| action.apply(gi, e);
    let orbits = explore_orbits(total, num_gens, &mut apply);
    let mut components = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        components.push(build_component(
            orbit,
            v.base_genus(),
            &labels,
            num_gens,
            &mut apply,
            n,
            n,
            true,
            0,
        )?);
    }
    components.sort_by_key(|c| (c.orbit_size, c.orbit_key));
    Ok(SelfProductDecomposition {
        components,
        k,
        deg_v: n,
        total_points: total,
    })
}

/// The single component of the k-fold off-diagonal self product containing
/// the given seed tuple, explored lazily: only this orbit is materialized and
/// the budget bounds the orbit size rather than the whole tuple space.
pub fn self_product_component_of(
    v: &HurwitzSystem,
    k: usize,
    seed: &[usize],
    budget: u64,
) -> Result<Component> {
    let n = v.degree();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    debug_assert_eq!(seed.len(), k);
    let action = TupleAction {
        n,
        k,
        gens: v.generators(),
    };
    let num_gens = action.gens.len();
    let seed_rank = tuple_rank(n, seed);
    let mut orbit = vec![seed_rank];
    let mut seen: HashMap<u64, ()> = HashMap::new();
    seen.insert(seed_rank, ());
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for gi in 0..num_gens {
            let y = action.apply(gi, x);
            if seen.insert(y, ()).is_none() {
                orbit.push(y);
                if orbit.len() as u64 > budget {
                    return Err(Error::BudgetExceeded {
                        needed: orbit.len() as u64,
                        budget,
                    });
                }
            }
        }
    }
    orbit.sort_unstable();
    let labels: Vec<String> = v.branch_points().iter().map(|b| b.label.clone()).collect();
    let mut apply = |gi: usize, e: u64| action.apply(gi, e);
    build_component(
        orbit,
        v.base_genus(),
        &labels,
        num_gens,
        &mut apply,
        n,
        n,
        true,
        0,
    )
}
