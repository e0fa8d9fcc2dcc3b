//! Permutation-group order via a deterministic Schreier–Sims stabilizer chain.
//!
//! The chain stores, per level, a base point, the strong generators that fix
//! all earlier base points, and a transversal of coset representatives for
//! the orbit of the base point. The order of the group is the product of the
//! orbit sizes once every Schreier generator sifts to the identity.

use std::collections::BTreeMap;

use num::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;

struct Level {
    point: usize,
    /// Strong generators first seen at this depth. The generating set of the
    /// level-`i` stabilizer subgroup is the union of `gens` over levels ≥ i:
    /// a generator stored at depth `j` fixes the base points of all levels
    /// before `j`, hence belongs to every stabilizer above it as well.
    gens: Vec<Permutation>,
    /// Coset representatives: `transversal[x]` maps `point` to `x`.
    transversal: BTreeMap<usize, Permutation>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Level {
        let mut transversal = BTreeMap::new();
        transversal.insert(point, Permutation::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            transversal,
        }
    }
}

struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    fn new(degree: usize) -> Chain {
        Chain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Generators acting at level `i`: all strong generators stored at depth
    /// `i` or deeper.
    fn acting_gens(&self, i: usize) -> Vec<Permutation> {
        self.levels[i..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn rebuild_transversal(&mut self, i: usize) {
        let gens = self.acting_gens(i);
        let level = &mut self.levels[i];
        let mut transversal = BTreeMap::new();
        transversal.insert(level.point, Permutation::identity(self.degree));
        let mut frontier = vec![level.point];
        while let Some(x) = frontier.pop() {
            let rep = transversal[&x].clone();
            for g in &gens {
                let y = g.apply(x);
                transversal.entry(y).or_insert_with(|| {
                    frontier.push(y);
                    g.compose_unchecked(&rep)
                });
            }
        }
        self.levels[i].transversal = transversal;
    }

    /// Strips `g` through levels `from..`, returning the level index where
    /// stripping stalled together with the residue. A residue equal to the
    /// identity certifies membership in the group generated below `from`.
    fn sift_from(&self, from: usize, g: Permutation) -> (usize, Permutation) {
        let mut h = g;
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.point);
            match level.transversal.get(&x) {
                Some(rep) => h = rep.inverse().compose_unchecked(&h),
                None => return (i, h),
            }
        }
        (self.levels.len(), h)
    }

    /// Records `h` as a strong generator at depth `at` (it fixes the base
    /// points of all earlier levels). Transversals at levels 0..=at act with
    /// `h` and are refreshed; deeper levels are untouched.
    fn add_generator(&mut self, at: usize, h: Permutation) {
        debug_assert!(!h.is_identity());
        if at == self.levels.len() {
            let point = h.min_moved_point().expect("non-identity generator");
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[at].gens.push(h);
        for i in (0..=at).rev() {
            self.rebuild_transversal(i);
        }
    }

    /// Verifies strong generation bottom-up: every Schreier generator of
    /// every level must sift to the identity through the levels below it.
    /// A non-trivial residue is adjoined where sifting stalled and the scan
    /// restarts from that depth.
    fn close(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'verify: loop {
            let orbit: Vec<usize> = self.levels[i].transversal.keys().copied().collect();
            let gens = self.acting_gens(i);
            for &gamma in &orbit {
                let u_gamma = self.levels[i].transversal[&gamma].clone();
                for s in &gens {
                    let delta = s.apply(gamma);
                    let u_delta = self.levels[i].transversal[&delta].clone();
                    let schreier = u_delta
                        .inverse()
                        .compose_unchecked(&s.compose_unchecked(&u_gamma));
                    let (j, residue) = self.sift_from(i + 1, schreier);
                    if !residue.is_identity() {
                        self.add_generator(j, residue);
                        i = j;
                        continue 'verify;
                    }
                }
            }
            if i == 0 {
                return;
            }
            i -= 1;
        }
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.transversal.len());
        }
        order
    }
}

/// Exact order of the group generated by `gens`, or [`Error::OrderExceedsCap`]
/// if it exceeds `cap`. An empty or all-identity generator list yields 1.
pub fn group_order(gens: &[Permutation], cap: u64) -> Result<BigUint> {
    let nontrivial: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    let Some(first) = nontrivial.first() else {
        return Ok(BigUint::from(1u32));
    };
    let degree = first.degree();
    for g in &nontrivial {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let mut chain = Chain::new(degree);
    for g in nontrivial {
        let (j, residue) = chain.sift_from(0, g.clone());
        if !residue.is_identity() {
            chain.add_generator(j, residue);
        }
    }
    chain.close();
    let order = chain.order();
    if order > BigUint::from(cap) {
        return Err(Error::OrderExceedsCap { order, cap });
    }
    Ok(order)
}
