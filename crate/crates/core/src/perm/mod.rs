//! Permutations on `{0, ..., d-1}` and the stabilizer-chain machinery built on them.
//!
//! Permutations act on the right: `compose(a, b)` applies `a` first, and
//! `conjugate(a, g)` is `g^-1 a g`, so that `i^(a^g) = ((i^(g^-1))^a)^g`.

mod chain;
mod handle;
pub(crate) mod stream;

use std::fmt;

use thiserror::Error;

pub use chain::{ChainError, Level, StabilizerChain};
pub use handle::{GroupHandle, GroupInfo};
pub use stream::{
    conjugation_orbit, element_search, KeyCodec, OrbitResult, SearchMode, SearchResult, Stream,
    DEFAULT_CAP,
};

/// Largest supported degree; images are stored as `u16`.
pub const MAX_DEGREE: usize = 65535;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("degree {0} exceeds the cap of 65535")]
    DegreeTooLarge(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("generator is not a member of the supplied chain")]
    ForeignGenerator,
    #[error(
        "conjugacy class exceeds the memory cap of {cap} members and size-only mode was refused"
    )]
    MemoryCap { cap: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds the cap");
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Checked constructor from an image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(d));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotBijection(d));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (j, &a) in cyc.iter().enumerate() {
                if a >= degree {
                    return Err(PermError::PointOutOfRange { point: a, degree });
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(PermError::NotBijection(degree));
                }
                images[a] = cyc[(j + 1) % cyc.len()];
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_u16(images: Box<[u16]>) -> Self {
        debug_assert!(is_bijection(&images));
        Self { images }
    }

    pub(crate) fn from_slice(images: &[u16]) -> Self {
        Self::from_u16(images.into())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        usize::from(self.images[point])
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.images)
    }

    /// First point moved by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| usize::from(p) != i)
            .map(|(i, _)| i)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        self.same_degree(other)?;
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[usize::from(p)] = i as u16;
        }
        Self::from_u16(inv.into())
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Self) -> Result<Self, PermError> {
        self.same_degree(g)?;
        let mut out = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            out[usize::from(g.images[i])] = g.images[usize::from(p)];
        }
        Ok(Self::from_u16(out.into()))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        perm_order(&self.images)
    }

    /// Sorted cycle lengths, including fixed points as 1-cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image(p);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.degree() == other.degree() && commute(&self.images, &other.images)
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let out: Box<[u16]> = self
            .images
            .iter()
            .map(|&p| other.images[usize::from(p)])
            .collect();
        Self::from_u16(out)
    }

    fn same_degree(&self, other: &Self) -> Result<(), PermError> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(PermError::DegreeMismatch(self.degree(), other.degree()))
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "({start}")?;
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                write!(f, " {p}")?;
                seen[p] = true;
                p = self.image(p);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Serialized as the image list.
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.images.iter())
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images: Vec<u16> = serde::Deserialize::deserialize(d)?;
        if !is_bijection(&images) {
            return Err(serde::de::Error::custom("image list is not a bijection"));
        }
        Ok(Self::from_u16(images.into()))
    }
}

pub(crate) fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&p| {
        usize::from(p) < images.len() && !std::mem::replace(&mut seen[usize::from(p)], true)
    })
}

#[inline]
pub(crate) fn is_identity(images: &[u16]) -> bool {
    images.iter().enumerate().all(|(i, &p)| usize::from(p) == i)
}

/// `a` then `b`, written into `out`.
#[inline]
pub(crate) fn mul_into(a: &[u16], b: &[u16], out: &mut [u16]) {
    for (o, &p) in out.iter_mut().zip(a) {
        *o = b[usize::from(p)];
    }
}

#[inline]
pub(crate) fn is_involution(g: &[u16]) -> bool {
    let mut moved = false;
    for (i, &p) in g.iter().enumerate() {
        if usize::from(g[usize::from(p)]) != i {
            return false;
        }
        moved |= usize::from(p) != i;
    }
    moved
}

#[inline]
pub(crate) fn has_order_three(g: &[u16]) -> bool {
    let mut moved = false;
    for (i, &p) in g.iter().enumerate() {
        let p = usize::from(p);
        if usize::from(g[usize::from(g[p])]) != i {
            return false;
        }
        moved |= p != i;
    }
    moved
}

#[inline]
pub(crate) fn commute(a: &[u16], b: &[u16]) -> bool {
    a.iter()
        .zip(b)
        .all(|(&ai, &bi)| b[usize::from(ai)] == a[usize::from(bi)])
}

pub(crate) fn perm_order(g: &[u16]) -> u64 {
    let mut seen = vec![false; g.len()];
    let mut ord = 1u64;
    for start in 0..g.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = usize::from(g[p]);
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / crate::field::gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    #[test]
    fn three_cycle_squared() {
        let a = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(a.compose(&a).unwrap(), cyc(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn order_of_triple_three_cycle() {
        assert_eq!(cyc(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]).order(), 3);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(cyc(5, &[&[0, 1], &[2, 3, 4]]).order(), 6);
    }

    #[test]
    fn conjugate_pointwise() {
        // (0 1)(2 3) conjugated by (0 1 2): relabel each point i as i^g.
        let a = cyc(4, &[&[0, 1], &[2, 3]]);
        let g = cyc(4, &[&[0, 1, 2]]);
        assert_eq!(a.conjugate(&g).unwrap(), cyc(4, &[&[1, 2], &[0, 3]]));
        assert_eq!(a.conjugate(&Permutation::identity(4)).unwrap(), a);
    }

    #[test]
    fn right_action_composition() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).unwrap().image(0), 2);
    }

    #[test]
    fn errors() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b).unwrap_err(), PermError::DegreeMismatch(3, 4));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_cycles() {
        assert_eq!(cyc(5, &[&[2, 4], &[0, 1, 3]]).to_string(), "(0 1 3)(2 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    fn arb_perm(d: usize) -> impl Strategy<Value = Permutation> {
        Just((0..d).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
            let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert_eq!(a.conjugate(&b).unwrap(), b.inverse().compose(&a).unwrap().compose(&b).unwrap());
            prop_assert!(a.pow(a.order()).is_identity());
            prop_assert_eq!(has_order_three(a.images()), a.order() == 3);
            prop_assert_eq!(is_involution(a.images()), a.order() == 2);
            prop_assert_eq!(a.commutes_with(&b), a.compose(&b).unwrap() == b.compose(&a).unwrap());
        }

        #[test]
        fn order_is_minimal(a in arb_perm(8)) {
            let n = a.order();
            for e in 1..n {
                prop_assert!(!a.pow(e).is_identity());
            }
        }
    }
}
