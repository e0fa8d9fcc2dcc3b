//! Named fixture coverings with pinned monodromy realizations.

use crate::covering::{BranchPoint, HurwitzSystem};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A named fixture: either a single covering or an alignable pair.
#[derive(Clone, Debug)]
pub enum Fixture {
    System(HurwitzSystem),
    Pair(HurwitzSystem, HurwitzSystem),
}

/// Looks up a fixture by name: `power(n)` (n ≥ 1), `chebyshev(n)` (n ≥ 2),
/// `zn_plus_inverse(n)` (n ≥ 1), `hyperelliptic(g)`, `dur`, `tame_quartic`.
pub fn fixture(name: &str) -> Result<Fixture> {
    let unknown = || Error::UnknownFixture {
        name: name.to_string(),
    };
    let (head, arg) = match name.find('(') {
        Some(open) => {
            let close = name.rfind(')').ok_or_else(unknown)?;
            if close != name.len() - 1 {
                return Err(unknown());
            }
            let arg: usize = name[open + 1..close]
                .trim()
                .parse()
                .map_err(|_| unknown())?;
            (&name[..open], Some(arg))
        }
        None => (name, None),
    };
    match (head, arg) {
        ("power", Some(n)) => Ok(Fixture::System(power(n)?)),
        ("chebyshev", Some(n)) => Ok(Fixture::System(chebyshev(n)?)),
        ("zn_plus_inverse", Some(n)) => Ok(Fixture::System(zn_plus_inverse(n)?)),
        ("hyperelliptic", Some(g)) => Ok(Fixture::System(hyperelliptic(g))),
        ("dur", None) => {
            let (p, w) = dur_pair();
            Ok(Fixture::Pair(p, w))
        }
        ("tame_quartic", None) => Ok(Fixture::System(tame_quartic())),
        _ => Err(unknown()),
    }
}

/// The power map z ↦ zⁿ: cyclic monodromy, totally ramified over 0 and ∞.
pub fn power(n: usize) -> Result<HurwitzSystem> {
    if n == 0 {
        return Err(Error::UnknownFixture {
            name: "power(0)".into(),
        });
    }
    if n == 1 {
        return HurwitzSystem::new(1, 0, vec![], vec![]);
    }
    let cycle: Vec<usize> = (1..=n).collect();
    let c = Permutation::from_cycles(n, &[cycle])?;
    HurwitzSystem::new(
        n,
        0,
        vec![],
        vec![
            BranchPoint::new("0", c.clone()),
            BranchPoint::new("inf", c.inverse()),
        ],
    )
}

/// The degree-n Chebyshev map: dihedral monodromy on the path 1—2—…—n, with
/// the two chains of transpositions over 1 and −1 and an n-cycle over ∞.
/// Identity entries (n = 2 over −1) are kept so the branch list is uniform.
pub fn chebyshev(n: usize) -> Result<HurwitzSystem> {
    if n < 2 {
        return Err(Error::UnknownFixture {
            name: format!("chebyshev({})", n),
        });
    }
    let odd_pairs: Vec<Vec<usize>> = (0..)
        .map(|i| vec![2 * i + 1, 2 * i + 2])
        .take_while(|c| c[1] <= n)
        .collect();
    let even_pairs: Vec<Vec<usize>> = (1..)
        .map(|i| vec![2 * i, 2 * i + 1])
        .take_while(|c| c[1] <= n)
        .collect();
    let s1 = Permutation::from_cycles(n, &odd_pairs)?;
    let s2 = Permutation::from_cycles(n, &even_pairs)?;
    let sinf = s1.compose(&s2)?.inverse();
    HurwitzSystem::new(
        n,
        0,
        vec![],
        vec![
            BranchPoint::new("1", s1),
            BranchPoint::new("-1", s2),
            BranchPoint::new("inf", sinf),
        ],
    )
}

/// The map z ↦ (zⁿ + z⁻ⁿ)/2 of degree 2n: a Galois covering with dihedral
/// deck group, simply branched over ±1 and with two n-fold points over ∞.
/// Sheets are indexed by the deck group elements tᵉrᵏ as ε·n + k.
pub fn zn_plus_inverse(n: usize) -> Result<HurwitzSystem> {
    if n == 0 {
        return Err(Error::UnknownFixture {
            name: "zn_plus_inverse(0)".into(),
        });
    }
    let degree = 2 * n;
    // left multiplication by t: flips ε
    let mut s1_images = vec![0usize; degree];
    for k in 0..n {
        s1_images[k] = n + k;
        s1_images[n + k] = k;
    }
    // left multiplication by r⁻¹t: (0,k) ↦ (1,k+1), (1,k) ↦ (0,k−1)
    let mut s2_images = vec![0usize; degree];
    for k in 0..n {
        s2_images[k] = n + (k + 1) % n;
        s2_images[n + k] = (k + n - 1) % n;
    }
    let s1 = Permutation::from_images(s1_images)?;
    let s2 = Permutation::from_images(s2_images)?;
    let sinf = s1.compose(&s2)?.inverse();
    HurwitzSystem::new(
        degree,
        0,
        vec![],
        vec![
            BranchPoint::new("1", s1),
            BranchPoint::new("-1", s2),
            BranchPoint::new("inf", sinf),
        ],
    )
}

/// A genus-g hyperelliptic double cover of the sphere: degree 2 with 2g+2
/// simple branch points.
pub fn hyperelliptic(g: usize) -> HurwitzSystem {
    let t = Permutation::from_cycles(2, &[vec![1, 2]]).expect("transposition");
    let branch = (1..=2 * g + 2)
        .map(|i| BranchPoint::new(format!("b{}", i), t.clone()))
        .collect();
    HurwitzSystem::new(2, 0, vec![], branch).expect("hyperelliptic system is valid")
}

/// A reduced square whose fiber product is a unique component of genus zero
/// even though the left-hand degree can be made arbitrarily large: the
/// cubic z·(z+c)² paired with z². The right-hand closure has genus zero, so
/// the unique-component lower bound does not apply — pinned here as the
/// standard inapplicability witness.
pub fn dur_pair() -> (HurwitzSystem, HurwitzSystem) {
    let p = HurwitzSystem::new(
        3,
        0,
        vec![],
        vec![
            BranchPoint::new("0", Permutation::from_cycles(3, &[vec![1, 2]]).unwrap()),
            BranchPoint::new("v", Permutation::from_cycles(3, &[vec![2, 3]]).unwrap()),
            BranchPoint::new(
                "inf",
                Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap(),
            ),
        ],
    )
    .expect("cubic system is valid");
    let w = HurwitzSystem::new(
        2,
        0,
        vec![],
        vec![
            BranchPoint::new("0", Permutation::from_cycles(2, &[vec![1, 2]]).unwrap()),
            BranchPoint::new("inf", Permutation::from_cycles(2, &[vec![1, 2]]).unwrap()),
        ],
    )
    .expect("square system is valid");
    (p, w)
}

/// A tame rational map of degree 4: six simple branch points
/// (1 2)(1 2)(2 3)(2 3)(3 4)(3 4) generating the full symmetric group. Its
/// 2-fold off-diagonal self product is a single component of genus 4 and its
/// Galois closure has genus 13, which makes every genus bound applicable.
pub fn tame_quartic() -> HurwitzSystem {
    let cyc = |c: &[usize]| Permutation::from_cycles(4, &[c.to_vec()]).unwrap();
    let branch = vec![
        BranchPoint::new("c1", cyc(&[1, 2])),
        BranchPoint::new("c2", cyc(&[1, 2])),
        BranchPoint::new("c3", cyc(&[2, 3])),
        BranchPoint::new("c4", cyc(&[2, 3])),
        BranchPoint::new("c5", cyc(&[3, 4])),
        BranchPoint::new("c6", cyc(&[3, 4])),
    ];
    HurwitzSystem::new(4, 0, vec![], branch).expect("quartic system is valid")
}

#[cfg(test)]
mod tests {
    use num::BigUint;

    use super::*;
    use crate::normalization::{is_galois, is_tame, monodromy_order, normalization_genus};

    const CAP: u64 = 10_000_000;
    const BUDGET: u64 = 1 << 24;

    #[test]
    fn power_series_regression() {
        for n in 1..=6 {
            let sys = power(n).unwrap();
            assert_eq!(sys.degree(), n);
            assert_eq!(sys.genus().unwrap(), 0);
            assert_eq!(monodromy_order(&sys, CAP).unwrap(), BigUint::from(n));
            assert_eq!(normalization_genus(&sys, CAP).unwrap().genus_n, 0);
            assert!(is_galois(&sys, CAP).unwrap());
        }
    }

    #[test]
    fn chebyshev_series_regression() {
        for n in 2..=6 {
            let sys = chebyshev(n).unwrap();
            assert_eq!(sys.genus().unwrap(), 0);
            assert_eq!(normalization_genus(&sys, CAP).unwrap().genus_n, 0);
        }
        let t3 = chebyshev(3).unwrap();
        assert_eq!(monodromy_order(&t3, CAP).unwrap(), BigUint::from(6u32));
        let pass = t3.passport();
        assert_eq!(pass[0].1.parts(), &[2, 1]);
        assert_eq!(pass[1].1.parts(), &[2, 1]);
        assert_eq!(pass[2].1.parts(), &[3]);
    }

    #[test]
    fn chebyshev_two_degenerates_to_a_square() {
        let t2 = chebyshev(2).unwrap();
        assert_eq!(t2.degree(), 2);
        // branched over "1" and "inf" only; "-1" carries the identity
        assert_eq!(t2.critical_values(), vec!["1", "inf"]);
        assert!(is_galois(&t2, CAP).unwrap());
    }

    #[test]
    fn zn_plus_inverse_is_a_dihedral_galois_cover() {
        for n in 1..=4 {
            let sys = zn_plus_inverse(n).unwrap();
            assert_eq!(sys.degree(), 2 * n);
            assert_eq!(sys.genus().unwrap(), 0);
            assert!(is_galois(&sys, CAP).unwrap());
            assert_eq!(normalization_genus(&sys, CAP).unwrap().genus_n, 0);
        }
        let sys = zn_plus_inverse(3).unwrap();
        let pass = sys.passport();
        assert_eq!(pass[0].1.parts(), &[2, 2, 2]);
        assert_eq!(pass[1].1.parts(), &[2, 2, 2]);
        assert_eq!(pass[2].1.parts(), &[3, 3]);
    }

    #[test]
    fn hyperelliptic_genus_matches_parameter() {
        for g in 0..=3 {
            assert_eq!(hyperelliptic(g).genus().unwrap(), g as u64);
        }
    }

    #[test]
    fn tame_quartic_is_tame_with_closure_genus_13() {
        let a = tame_quartic();
        assert_eq!(a.genus().unwrap(), 0);
        assert_eq!(monodromy_order(&a, CAP).unwrap(), BigUint::from(24u32));
        assert!(is_tame(&a, BUDGET).unwrap().tame);
        assert_eq!(normalization_genus(&a, CAP).unwrap().genus_n, 13);
    }

    #[test]
    fn dur_pair_is_valid_with_low_genus_closure() {
        let (p, w) = dur_pair();
        assert_eq!(p.degree(), 3);
        assert_eq!(w.degree(), 2);
        assert_eq!(normalization_genus(&w, CAP).unwrap().genus_n, 0);
    }

    #[test]
    fn fixture_parsing() {
        assert!(matches!(fixture("power(3)"), Ok(Fixture::System(_))));
        assert!(matches!(fixture("dur"), Ok(Fixture::Pair(_, _))));
        assert!(matches!(fixture("tame_quartic"), Ok(Fixture::System(_))));
        assert!(matches!(
            fixture("nope(3)"),
            Err(Error::UnknownFixture { .. })
        ));
        assert!(matches!(
            fixture("power"),
            Err(Error::UnknownFixture { .. })
        ));
        assert!(matches!(
            fixture("power(x)"),
            Err(Error::UnknownFixture { .. })
        ));
        assert!(matches!(
            fixture("chebyshev(1)"),
            Err(Error::UnknownFixture { .. })
        ));
    }
}
