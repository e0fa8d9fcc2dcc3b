//! Exact permutation arithmetic: composition, cycle structure, orbits.
//!
//! Points are 0-based contiguous indices `0..degree` internally. The external
//! file format is 1-based cycle notation; [`Permutation::from_cycles`] and
//! [`Permutation::cycles`] convert at the boundary.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..degree-1}`, stored as its image vector.
///
/// The composition order is pinned once for the whole crate:
/// `p.compose(&q)` maps `x` to `p(q(x))`, i.e. `q` acts first. All product
/// relations (surface relations, monodromy products) are stated with respect
/// to this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its 0-based image vector.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation {
                reason: "degree must be at least 1".into(),
            });
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {} out of range 0..{}", v, n),
                });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {} appears twice", v),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 1-based points, the external notation. Fixed points may be omitted.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidCycles {
                reason: "degree must be at least 1".into(),
            });
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidCycles {
                        reason: format!("point {} out of range 1..={}", pt, degree),
                    });
                }
                if touched[pt - 1] {
                    return Err(Error::InvalidCycles {
                        reason: format!("point {} appears in two cycles", pt),
                    });
                }
                touched[pt - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::InvalidCycles {
                        reason: format!("point {} out of range 1..={}", next, degree),
                    });
                }
                images[pt - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: `other` acts first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Canonical cycle decomposition in 1-based notation: each cycle starts
    /// at its minimal point, cycles sorted by first point, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                cycle.push(x + 1);
                seen[x] = true;
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points as 1s.
    pub fn cycle_type(&self) -> CycleType {
        let mut lengths = Vec::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 1;
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                len += 1;
                seen[x] = true;
                x = self.images[x];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts: lengths }
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .parts()
            .iter()
            .fold(1u64, |acc, &l| num::integer::lcm(acc, l as u64))
    }

    /// Smallest point moved by the permutation, if any.
    pub fn min_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| *i != v)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiset of cycle lengths of a permutation, stored in decreasing order.
/// Fixed points appear as 1s, so the parts always sum to the degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// lcm of the parts: the local ramification index ν over a branch point.
    pub fn lcm(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &l| num::integer::lcm(acc, l as u64))
    }

    /// Total ramification Σ(len − 1) contributed to Riemann–Hurwitz.
    pub fn ramification(&self) -> i64 {
        self.parts.iter().map(|&l| l as i64 - 1).sum()
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "}}")
    }
}

/// Orbits of the group generated by `gens` on `0..degree`, as a partition.
/// Orbits are sorted ascending and listed by their minimal element.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(gens: &[Permutation], degree: usize) -> bool {
    orbits(gens, degree).len() == 1
}
