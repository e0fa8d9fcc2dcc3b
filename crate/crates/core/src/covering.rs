//! Branched coverings of compact surfaces as Hurwitz systems of permutations,
//! with Euler characteristic, genus, passport, critical values, and the
//! ramification orbifold.
//!
//! A covering of a genus-`g` base is encoded by `g` handle pairs `(a_i, b_i)`
//! and one branch permutation per labelled critical value, subject to the
//! surface relation `[a_1,b_1]···[a_g,b_g]·σ_1···σ_r = id` (commutators under
//! the pinned composition order, rightmost factor acting first) and to the
//! generated group acting transitively (the covering surface is connected).
//!
//! Branch-point labels are opaque strings; nothing in the crate depends on
//! coordinates. Systems come in two forms: "aligned" (identity branch
//! permutations allowed, so two coverings can share one branch list) and
//! "canonical" (identity entries stripped). Equality of coverings is tested
//! on canonical form.

use num::{BigInt, BigRational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{orbits, CycleType, Permutation};

/// A labelled branch point together with its monodromy permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: String,
    pub perm: Permutation,
}

impl BranchPoint {
    pub fn new(label: impl Into<String>, perm: Permutation) -> Self {
        BranchPoint {
            label: label.into(),
            perm,
        }
    }
}

/// Monodromy of one handle of the base surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlePair {
    pub a: Permutation,
    pub b: Permutation,
}

/// A branched covering given by permutation monodromy data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzSystem {
    degree: usize,
    base_genus: usize,
    branch_points: Vec<BranchPoint>,
    handles: Vec<HandlePair>,
}

impl HurwitzSystem {
    /// Validating constructor; see [`HurwitzSystem::validate`] for the checks.
    pub fn new(
        degree: usize,
        base_genus: usize,
        handles: Vec<HandlePair>,
        branch_points: Vec<BranchPoint>,
    ) -> Result<Self> {
        let sys = HurwitzSystem {
            degree,
            base_genus,
            branch_points,
            handles,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Constructor for data that is valid by construction (orbit restrictions).
    /// Debug builds re-verify the invariants.
    pub(crate) fn new_unchecked(
        degree: usize,
        base_genus: usize,
        handles: Vec<HandlePair>,
        branch_points: Vec<BranchPoint>,
    ) -> Self {
        let sys = HurwitzSystem {
            degree,
            base_genus,
            branch_points,
            handles,
        };
        debug_assert!(sys.validate().is_ok(), "unchecked system fails validation");
        sys
    }

    /// Checks every invariant: positive degree, matching permutation degrees,
    /// handle count equal to the base genus, distinct labels, the surface
    /// relation, and transitivity.
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidPermutation {
                reason: "covering degree must be at least 1".into(),
            });
        }
        if self.handles.len() != self.base_genus {
            return Err(Error::HandleCountMismatch {
                expected: self.base_genus,
                got: self.handles.len(),
            });
        }
        for g in self.generators() {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    left: self.degree,
                    right: g.degree(),
                });
            }
        }
        for (i, bp) in self.branch_points.iter().enumerate() {
            if self.branch_points[..i].iter().any(|o| o.label == bp.label) {
                return Err(Error::DuplicateLabel {
                    label: bp.label.clone(),
                });
            }
        }
        let word = self.relation_word();
        if let Some(moved) = word.min_moved_point() {
            return Err(Error::RelationViolated {
                moved_point: moved + 1,
            });
        }
        let gens: Vec<Permutation> = self.generators().into_iter().cloned().collect();
        let orbs = orbits(&gens, self.degree);
        if orbs.len() != 1 {
            let orbit = &orbs[0];
            return Err(Error::NotTransitive {
                point: orbit[0] + 1,
                orbit_size: orbit.len(),
                degree: self.degree,
            });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn handles(&self) -> &[HandlePair] {
        &self.handles
    }

    /// All monodromy generators in relation order: a_1, b_1, …, a_g, b_g,
    /// then the branch permutations.
    pub fn generators(&self) -> Vec<&Permutation> {
        let mut out = Vec::with_capacity(2 * self.handles.len() + self.branch_points.len());
        for h in &self.handles {
            out.push(&h.a);
            out.push(&h.b);
        }
        for bp in &self.branch_points {
            out.push(&bp.perm);
        }
        out
    }

    /// The relation word `[a_1,b_1]···[a_g,b_g]·σ_1···σ_r`.
    pub fn relation_word(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for h in &self.handles {
            let comm =
                h.a.compose_unchecked(&h.b)
                    .compose_unchecked(&h.a.inverse())
                    .compose_unchecked(&h.b.inverse());
            acc = acc.compose_unchecked(&comm);
        }
        for bp in &self.branch_points {
            acc = acc.compose_unchecked(&bp.perm);
        }
        acc
    }

    /// Riemann–Hurwitz: `χ(E) = (2−2g_base)·deg − Σ (e−1)` over all cycles of
    /// all branch permutations.
    pub fn euler_characteristic(&self) -> i64 {
        let chi_base = 2 - 2 * self.base_genus as i64;
        let ram: i64 = self
            .branch_points
            .iter()
            .map(|bp| bp.perm.cycle_type().ramification())
            .sum();
        chi_base * self.degree as i64 - ram
    }

    /// Genus of the covering surface, from `χ = 2 − 2g`. A parity failure or a
    /// negative genus signals corrupted data, not bad input: valid systems
    /// always describe a genuine connected closed surface.
    pub fn genus(&self) -> Result<u64> {
        let chi = self.euler_characteristic();
        if chi > 2 || chi.rem_euclid(2) != 0 {
            return Err(Error::InternalParity { chi });
        }
        Ok(((2 - chi) / 2) as u64)
    }

    /// Cycle type over every critical value, identity labels omitted.
    pub fn passport(&self) -> Vec<(String, CycleType)> {
        self.branch_points
            .iter()
            .filter(|bp| !bp.perm.is_identity())
            .map(|bp| (bp.label.clone(), bp.perm.cycle_type()))
            .collect()
    }

    /// Labels whose branch permutation is not the identity, in branch order.
    pub fn critical_values(&self) -> Vec<String> {
        self.branch_points
            .iter()
            .filter(|bp| !bp.perm.is_identity())
            .map(|bp| bp.label.clone())
            .collect()
    }

    /// Ramification orbifold: ν(z) = lcm of the cycle lengths over z, entries
    /// with ν = 1 dropped, base genus copied from the system.
    pub fn ramification_orbifold(&self) -> Orbifold {
        let indices = self
            .branch_points
            .iter()
            .filter_map(|bp| {
                let nu = bp.perm.cycle_type().lcm();
                (nu > 1).then(|| OrbifoldIndex {
                    label: bp.label.clone(),
                    nu,
                })
            })
            .collect();
        Orbifold {
            base_genus: self.base_genus,
            indices,
        }
    }

    /// Canonical form: identity branch permutations stripped, order kept.
    pub fn canonical(&self) -> HurwitzSystem {
        HurwitzSystem {
            degree: self.degree,
            base_genus: self.base_genus,
            branch_points: self
                .branch_points
                .iter()
                .filter(|bp| !bp.perm.is_identity())
                .cloned()
                .collect(),
            handles: self.handles.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.branch_points.iter().all(|bp| !bp.perm.is_identity())
    }
}

/// An orbifold on the base surface: genus plus finitely many ramification
/// indices ν ≥ 2 at labelled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbifold {
    base_genus: usize,
    indices: Vec<OrbifoldIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldIndex {
    pub label: String,
    pub nu: u64,
}

impl Orbifold {
    /// Entries with ν = 1 are dropped; ν = 0 is rejected.
    pub fn new(base_genus: usize, indices: Vec<(String, u64)>) -> Result<Self> {
        let mut kept = Vec::new();
        for (label, nu) in indices {
            if nu == 0 {
                return Err(Error::InternalConsistency {
                    reason: format!("orbifold index 0 at {:?}", label),
                });
            }
            if nu > 1 {
                kept.push(OrbifoldIndex { label, nu });
            }
        }
        Ok(Orbifold {
            base_genus,
            indices: kept,
        })
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn indices(&self) -> &[OrbifoldIndex] {
        &self.indices
    }

    /// Orbifold Euler characteristic `χ(𝒪) = (2−2g) + Σ (1/ν − 1)`, exact.
    pub fn chi(&self) -> BigRational {
        let mut chi = BigRational::from(BigInt::from(2 - 2 * self.base_genus as i64));
        for idx in &self.indices {
            chi += BigRational::new(BigInt::from(1), BigInt::from(idx.nu))
                - BigRational::from(BigInt::from(1));
        }
        chi
    }
}

// --- JSON schema -----------------------------------------------------------
//
// {"degree": n, "base_genus": g,
//  "branch_points": [{"label": "...", "perm": [[...]]}],
//  "handles": [{"a": [[...]], "b": [[...]]}]}
//
// Permutations are lists of cycles of 1-based points in canonical form (each
// cycle led by its minimal point, cycles sorted by leading point, fixed
// points omitted); the identity is []. Deserialization validates the full
// system, so parsed values always satisfy the invariants.

#[derive(Serialize, Deserialize)]
struct RawSystem {
    degree: usize,
    base_genus: usize,
    branch_points: Vec<RawBranchPoint>,
    handles: Vec<RawHandlePair>,
}

#[derive(Serialize, Deserialize)]
struct RawBranchPoint {
    label: String,
    perm: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHandlePair {
    a: Vec<Vec<usize>>,
    b: Vec<Vec<usize>>,
}

impl Serialize for HurwitzSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawSystem {
            degree: self.degree,
            base_genus: self.base_genus,
            branch_points: self
                .branch_points
                .iter()
                .map(|bp| RawBranchPoint {
                    label: bp.label.clone(),
                    perm: bp.perm.cycles(),
                })
                .collect(),
            handles: self
                .handles
                .iter()
                .map(|h| RawHandlePair {
                    a: h.a.cycles(),
                    b: h.b.cycles(),
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HurwitzSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSystem::deserialize(deserializer)?;
        let perm = |cycles: &Vec<Vec<usize>>| {
            Permutation::from_cycles(raw.degree, cycles).map_err(D::Error::custom)
        };
        let mut branch_points = Vec::with_capacity(raw.branch_points.len());
        for bp in &raw.branch_points {
            branch_points.push(BranchPoint {
                label: bp.label.clone(),
                perm: perm(&bp.perm)?,
            });
        }
        let mut handles = Vec::with_capacity(raw.handles.len());
        for h in &raw.handles {
            handles.push(HandlePair {
                a: perm(&h.a)?,
                b: perm(&h.b)?,
            });
        }
        HurwitzSystem::new(raw.degree, raw.base_genus, handles, branch_points)
            .map_err(D::Error::custom)
    }
}

impl HurwitzSystem {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidPermutation {
            reason: format!("cannot parse covering: {}", e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn z3() -> HurwitzSystem {
        HurwitzSystem::new(
            3,
            0,
            vec![],
            vec![
                BranchPoint::new("0", p(3, &[&[1, 2, 3]])),
                BranchPoint::new("inf", p(3, &[&[1, 3, 2]])),
            ],
        )
        .unwrap()
    }

    fn t3() -> HurwitzSystem {
        HurwitzSystem::new(
            3,
            0,
            vec![],
            vec![
                BranchPoint::new("1", p(3, &[&[1, 2]])),
                BranchPoint::new("-1", p(3, &[&[2, 3]])),
                BranchPoint::new("inf", p(3, &[&[1, 3, 2]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn degree_one_system_is_valid_for_any_base_genus() {
        let id = Permutation::identity(1);
        let sys = HurwitzSystem::new(
            1,
            2,
            vec![
                HandlePair {
                    a: id.clone(),
                    b: id.clone(),
                },
                HandlePair {
                    a: id.clone(),
                    b: id.clone(),
                },
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(sys.euler_characteristic(), -2);
        assert_eq!(sys.genus().unwrap(), 2);
        assert!(sys.passport().is_empty());
        assert!(sys.critical_values().is_empty());
    }

    #[test]
    fn relation_violation_is_reported() {
        let err = HurwitzSystem::new(2, 0, vec![], vec![BranchPoint::new("0", p(2, &[&[1, 2]]))])
            .unwrap_err();
        assert!(matches!(err, Error::RelationViolated { moved_point: 1 }));
    }

    #[test]
    fn non_transitive_system_is_rejected() {
        let err = HurwitzSystem::new(
            4,
            0,
            vec![],
            vec![
                BranchPoint::new("0", p(4, &[&[1, 2]])),
                BranchPoint::new("inf", p(4, &[&[1, 2]])),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotTransitive { degree: 4, .. }));
    }

    #[test]
    fn duplicate_label_is_rejected() {
        let err = HurwitzSystem::new(
            2,
            0,
            vec![],
            vec![
                BranchPoint::new("0", p(2, &[&[1, 2]])),
                BranchPoint::new("0", p(2, &[&[1, 2]])),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel { .. }));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(z3().euler_characteristic(), 2);
        assert_eq!(z3().genus().unwrap(), 0);
        assert_eq!(t3().euler_characteristic(), 2);
        assert_eq!(t3().genus().unwrap(), 0);
    }

    #[test]
    fn unbranched_double_cover_of_torus_has_genus_one() {
        let sys = HurwitzSystem::new(
            2,
            1,
            vec![HandlePair {
                a: p(2, &[&[1, 2]]),
                b: Permutation::identity(2),
            }],
            vec![],
        )
        .unwrap();
        assert_eq!(sys.euler_characteristic(), 0);
        assert_eq!(sys.genus().unwrap(), 1);
    }

    #[test]
    fn hyperelliptic_genus_two() {
        let t = p(2, &[&[1, 2]]);
        let branch = (1..=6)
            .map(|i| BranchPoint::new(format!("b{}", i), t.clone()))
            .collect();
        let sys = HurwitzSystem::new(2, 0, vec![], branch).unwrap();
        assert_eq!(sys.euler_characteristic(), -2);
        assert_eq!(sys.genus().unwrap(), 2);
    }

    #[test]
    fn passport_examples() {
        let pass = z3().passport();
        assert_eq!(pass.len(), 2);
        assert_eq!(pass[0].0, "0");
        assert_eq!(pass[0].1.parts(), &[3]);
        let pass = t3().passport();
        assert_eq!(pass[0].1.parts(), &[2, 1]);
        assert_eq!(pass[1].1.parts(), &[2, 1]);
        assert_eq!(pass[2].1.parts(), &[3]);
    }

    #[test]
    fn critical_values_skip_identity_entries() {
        let sys = HurwitzSystem::new(
            3,
            0,
            vec![],
            vec![
                BranchPoint::new("0", p(3, &[&[1, 2, 3]])),
                BranchPoint::new("mid", Permutation::identity(3)),
                BranchPoint::new("inf", p(3, &[&[1, 3, 2]])),
            ],
        )
        .unwrap();
        assert_eq!(sys.critical_values(), vec!["0", "inf"]);
        assert!(!sys.is_canonical());
        assert_eq!(sys.canonical().branch_points().len(), 2);
        assert!(sys.canonical().is_canonical());
    }

    #[test]
    fn ramification_orbifold_and_chi() {
        let orb = z3().ramification_orbifold();
        assert_eq!(orb.indices().len(), 2);
        assert!(orb.indices().iter().all(|i| i.nu == 3));
        assert_eq!(orb.chi(), BigRational::new(2.into(), 3.into()));

        let orb = t3().ramification_orbifold();
        let nus: Vec<u64> = orb.indices().iter().map(|i| i.nu).collect();
        assert_eq!(nus, vec![2, 2, 3]);
        assert_eq!(orb.chi(), BigRational::new(1.into(), 3.into()));

        let sphere = Orbifold::new(0, vec![]).unwrap();
        assert_eq!(sphere.chi(), BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn json_round_trip_is_identity_on_canonical_form() {
        let sys = t3();
        let json = sys.to_json();
        let parsed = HurwitzSystem::from_json(&json).unwrap();
        assert_eq!(parsed, sys.canonical());
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn json_rejects_invalid_systems() {
        let bad = r#"{"degree":2,"base_genus":0,"branch_points":[{"label":"0","perm":[[1,2]]}],"handles":[]}"#;
        assert!(HurwitzSystem::from_json(bad).is_err());
    }
}
