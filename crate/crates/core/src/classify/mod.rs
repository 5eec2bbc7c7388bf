//! Brute-force answers to the two questions asked of every order-3 class:
//! does it centralize an involution, and does it normalize a nontrivial
//! 2-subgroup.
//!
//! Classes come from one stream pass: order-3 elements are recorded by key in
//! stream order and merged with a union-find under conjugation by the group
//! generators, so each class's representative is its first element in the
//! stream. The centralizer order is `|G| / |class|`; by Cauchy it is even
//! exactly when some involution commutes with the representative.
//!
//! An order-3 element `x` normalizes a nontrivial 2-subgroup exactly when
//! some involution `t` has `<t, t^x, t^(x^2)>` a 2-group: that subgroup is
//! `x`-invariant, and conversely an `x`-invariant 2-subgroup has an
//! `x`-invariant center whose involutions give such a `t`. Candidates are
//! filtered by the orders of pairwise products before a closure confirms them.

mod labels;
mod oracle;

use std::ops::ControlFlow;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{Cache, CacheError};
use crate::perm::stream::{element_from_key, ElementKey};
use crate::perm::{
    commute, conjugation_orbit, element_search, has_order_three, is_involution, perm_order,
    GroupHandle, KeyCodec, PermError, Permutation, SearchMode, SearchResult, Stream,
};

pub use labels::class_label;
pub use oracle::{oracle_normalizes_2subgroup, sylow2_subgroup, ORACLE_CAP};

/// Members kept when a class is closed by breadth-first search.
const ORBIT_MEMORY_CAP: usize = 1 << 22;
/// Union-find work is done in batches of this many elements.
const UNION_BATCH: usize = 1 << 16;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("{group} is excluded: {reason}")]
    Excluded { group: String, reason: String },
    #[error("element is not of order 3")]
    NotOrderThree,
    #[error("element is not in the group")]
    NotMember,
    #[error("group order {order} exceeds the oracle cap {cap}")]
    OracleCap { order: u128, cap: u128 },
    #[error("the conjugates of w do not pairwise commute")]
    ConjugatesDoNotCommute,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerWitness {
    pub involution: Permutation,
    /// Order of `<t, t^x, t^(x^2)>`.
    pub two_group_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: Permutation,
    pub class_size: u64,
    pub centralizer_order: u64,
    pub centralizes: bool,
    pub centralizer_witness: Option<Permutation>,
    pub normalizes: bool,
    pub normalizer_witness: Option<NormalizerWitness>,
}

/// Result of a closure restricted to 2-groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoGroupOrder {
    Order(u64),
    /// The closure grew past the cap.
    Overflow,
    /// An element whose order is not a power of 2 appeared.
    NotTwoGroup,
}

fn refuse_excluded(handle: &GroupHandle) -> Result<(), ClassifyError> {
    match &handle.info().excluded {
        Some(reason) => Err(ClassifyError::Excluded {
            group: handle.name().to_string(),
            reason: reason.clone(),
        }),
        None => Ok(()),
    }
}

fn check_order3(handle: &GroupHandle, x: &Permutation) -> Result<(), ClassifyError> {
    if x.degree() != handle.degree() || !has_order_three(x.images()) {
        return Err(ClassifyError::NotOrderThree);
    }
    if !handle.contains(x)? {
        return Err(ClassifyError::NotMember);
    }
    Ok(())
}

/// Largest power of 2 dividing `n`.
pub fn two_part(n: u128) -> u64 {
    if n == 0 {
        return 1;
    }
    1u64 << n.trailing_zeros().min(63)
}

/// Order of the group generated by `elements`, if it is a 2-group of order at most `cap`.
pub fn two_group_order(elements: &[Permutation], cap: u64) -> TwoGroupOrder {
    let Some(first) = elements.first() else {
        return TwoGroupOrder::Order(1);
    };
    let d = first.degree();
    let gens: Vec<&[u16]> = elements.iter().map(|g| g.images()).collect();
    let identity: Box<[u16]> = (0..d as u16).collect();
    let mut seen: FxHashSet<Box<[u16]>> = FxHashSet::default();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    let mut head = 0;
    let mut buf = vec![0u16; d];
    while head < queue.len() {
        let a = queue[head].clone();
        head += 1;
        for g in &gens {
            crate::perm::mul_into(&a, g, &mut buf);
            if seen.contains(buf.as_slice()) {
                continue;
            }
            if !perm_order(&buf).is_power_of_two() {
                return TwoGroupOrder::NotTwoGroup;
            }
            if seen.len() as u64 >= cap {
                return TwoGroupOrder::Overflow;
            }
            let b: Box<[u16]> = buf.as_slice().into();
            seen.insert(b.clone());
            queue.push(b);
        }
    }
    TwoGroupOrder::Order(seen.len() as u64)
}

/// `y = w w^x w^(x^2)`, an involution commuting with `x` when the three
/// conjugates of `w` commute pairwise.
pub fn triple_involution_witness(
    w: &Permutation,
    x: &Permutation,
) -> Result<Permutation, ClassifyError> {
    if w.degree() != x.degree() {
        return Err(PermError::DegreeMismatch(w.degree(), x.degree()).into());
    }
    if !is_involution(w.images()) {
        return Err(ClassifyError::ConjugatesDoNotCommute);
    }
    let x2 = x.mul(x);
    let w1 = w.conjugate(x)?;
    let w2 = w.conjugate(&x2)?;
    if !(w.commutes_with(&w1) && w.commutes_with(&w2) && w1.commutes_with(&w2)) {
        return Err(ClassifyError::ConjugatesDoNotCommute);
    }
    let y = w.mul(&w1).mul(&w2);
    debug_assert!(y.mul(&y).is_identity() && y.commutes_with(x));
    Ok(y)
}

/// Whether the three conjugates of `t` under `<x>` generate a 2-group, with its order.
fn triple_check(t: &Permutation, x: &Permutation, x_inv: &Permutation, cap: u64) -> Option<u64> {
    let d = t.degree();
    let mut tmp = vec![0u16; d];
    let mut t1 = vec![0u16; d];
    let mut t2 = vec![0u16; d];
    // t^x = x^-1 t x and t^(x^2) = x t x^-1 (x has order 3).
    crate::perm::mul_into(x_inv.images(), t.images(), &mut tmp);
    crate::perm::mul_into(&tmp, x.images(), &mut t1);
    crate::perm::mul_into(x.images(), t.images(), &mut tmp);
    crate::perm::mul_into(&tmp, x_inv.images(), &mut t2);
    let pow2 = |a: &[u16], b: &[u16], buf: &mut Vec<u16>| {
        crate::perm::mul_into(a, b, buf);
        perm_order(buf).is_power_of_two()
    };
    let ti = t.images();
    if !(pow2(ti, &t1, &mut tmp) && pow2(ti, &t2, &mut tmp) && pow2(&t1, &t2, &mut tmp)) {
        return None;
    }
    let gens = [
        t.clone(),
        Permutation::from_slice(&t1),
        Permutation::from_slice(&t2),
    ];
    match two_group_order(&gens, cap) {
        TwoGroupOrder::Order(o) => Some(o),
        _ => None,
    }
}

/// First involution in `involutions` (stream order) passing the triple test.
fn first_triple_witness(
    involutions: &[Permutation],
    x: &Permutation,
    cap: u64,
) -> Option<NormalizerWitness> {
    let x_inv = x.inverse();
    involutions.par_iter().find_map_first(|t| {
        triple_check(t, x, &x_inv, cap).map(|o| NormalizerWitness {
            involution: t.clone(),
            two_group_order: o,
        })
    })
}

fn involutions_of(handle: &GroupHandle, cap: u64) -> Result<Vec<Permutation>, ClassifyError> {
    match element_search(handle.chain(), cap, is_involution, SearchMode::All)? {
        SearchResult::All(v) => Ok(v),
        _ => unreachable!(),
    }
}

/// Centralizer parity from the class size, with the first commuting involution
/// in stream order as witness. If the witness scan exceeds `cap` the boolean is
/// still returned, without a witness.
pub fn centralizes_involution(
    handle: &GroupHandle,
    x: &Permutation,
    cap: u64,
) -> Result<(bool, Option<Permutation>), ClassifyError> {
    check_order3(handle, x)?;
    let orbit = conjugation_orbit(
        handle.chain(),
        handle.generators(),
        x,
        ORBIT_MEMORY_CAP,
        cap,
    )?;
    let cent = handle.order() / u128::from(orbit.size);
    let even = cent % 2 == 0;
    if !even {
        return Ok((false, None));
    }
    let xi = x.images().to_vec();
    match element_search(
        handle.chain(),
        cap,
        move |g| is_involution(g) && commute(g, &xi),
        SearchMode::First,
    ) {
        Ok(SearchResult::First(w)) => Ok((true, w)),
        Ok(_) => unreachable!(),
        Err(PermError::CapExceeded { .. }) => Ok((true, None)),
        Err(e) => Err(e.into()),
    }
}

/// The normalization predicate for a single element.
pub fn normalizes_nontrivial_2subgroup(
    handle: &GroupHandle,
    x: &Permutation,
    cap: u64,
) -> Result<(bool, Option<NormalizerWitness>), ClassifyError> {
    let (cent, w) = centralizes_involution(handle, x, cap)?;
    if cent {
        let w = match w {
            Some(w) => w,
            None => return Ok((true, None)),
        };
        return Ok((
            true,
            Some(NormalizerWitness {
                involution: w,
                two_group_order: 2,
            }),
        ));
    }
    let invs = involutions_of(handle, cap)?;
    let found = first_triple_witness(&invs, x, two_part(handle.order()));
    Ok((found.is_some(), found))
}

struct Scan<K> {
    threes: Vec<K>,
    involutions: Vec<Permutation>,
}

fn scan<K: ElementKey>(stream: &Stream, codec: &KeyCodec) -> Scan<K> {
    let mut out = Scan {
        threes: Vec::new(),
        involutions: Vec::new(),
    };
    stream.map_subtrees(
        |s| {
            let mut part = Scan {
                threes: Vec::new(),
                involutions: Vec::new(),
            };
            let _ = stream.for_each_in_subtree(s, &mut |g: &[u16]| {
                if has_order_three(g) {
                    part.threes.push(codec.key(g));
                } else if is_involution(g) {
                    part.involutions.push(Permutation::from_slice(g));
                }
                ControlFlow::Continue(())
            });
            part
        },
        |part| {
            out.threes.extend(part.threes);
            out.involutions.extend(part.involutions);
            ControlFlow::Continue(())
        },
    );
    out
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        let p = parent[i as usize];
        parent[i as usize] = parent[p as usize];
        i = p;
    }
    i
}

/// Partition of the order-3 elements into classes: `(root index, size)` in
/// stream order of the roots, each root being the first member of its class.
fn classes_by_union<K: ElementKey>(
    handle: &GroupHandle,
    codec: &KeyCodec,
    keys: &[K],
) -> Vec<(usize, u64)> {
    let chain = handle.chain();
    let gens: Vec<(Permutation, Permutation)> = handle
        .generators()
        .iter()
        .map(|g| (g.clone(), g.inverse()))
        .collect();
    let index: FxHashMap<&K, u32> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();
    let mut parent: Vec<u32> = (0..keys.len() as u32).collect();
    for batch_start in (0..keys.len()).step_by(UNION_BATCH) {
        let batch_end = (batch_start + UNION_BATCH).min(keys.len());
        let pairs: Vec<Vec<(u32, u32)>> = (batch_start..batch_end)
            .into_par_iter()
            .chunks(1024)
            .map(|idx| {
                let mut out = Vec::new();
                for i in idx {
                    let y = element_from_key(chain, codec, &keys[i]);
                    for (g, gi) in &gens {
                        let k: K = codec.conj_key(y.images(), g.images(), gi.images());
                        let j = index[&k];
                        if j != i as u32 {
                            out.push((i as u32, j));
                        }
                    }
                }
                out
            })
            .collect();
        for (a, b) in pairs.into_iter().flatten() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            // The smaller index becomes the root, so roots are first in stream order.
            match ra.cmp(&rb) {
                std::cmp::Ordering::Less => parent[rb as usize] = ra,
                std::cmp::Ordering::Greater => parent[ra as usize] = rb,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    let mut sizes: FxHashMap<u32, u64> = FxHashMap::default();
    for i in 0..keys.len() as u32 {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut roots: Vec<(usize, u64)> = sizes.into_iter().map(|(r, s)| (r as usize, s)).collect();
    roots.sort_unstable();
    roots
}

/// Classes of order-3 elements together with the group's involutions in stream order.
pub struct Census {
    pub records: Vec<ClassRecord>,
    pub involutions: Vec<Permutation>,
    pub order3_count: u64,
}

fn census_with<K: ElementKey>(handle: &GroupHandle, stream: &Stream) -> Census {
    let chain = handle.chain();
    let codec = KeyCodec::new(chain);
    let Scan {
        threes,
        involutions,
    } = scan::<K>(stream, &codec);
    let roots = classes_by_union(handle, &codec, &threes);
    let cap2 = two_part(handle.order());
    let records = roots
        .into_iter()
        .map(|(r, size)| {
            let rep = element_from_key(chain, &codec, &threes[r]);
            let centralizer_order = (handle.order() / u128::from(size)) as u64;
            let centralizes = centralizer_order % 2 == 0;
            let ri = rep.images();
            let centralizer_witness = if centralizes {
                involutions
                    .par_iter()
                    .find_first(|t| commute(t.images(), ri))
                    .cloned()
            } else {
                None
            };
            assert_eq!(
                centralizes,
                centralizer_witness.is_some(),
                "centralizer parity disagrees with the involution scan"
            );
            let normalizer_witness = match &centralizer_witness {
                Some(t) => Some(NormalizerWitness {
                    involution: t.clone(),
                    two_group_order: 2,
                }),
                None => first_triple_witness(&involutions, &rep, cap2),
            };
            ClassRecord {
                representative: rep,
                class_size: size,
                centralizer_order,
                centralizes,
                centralizer_witness,
                normalizes: normalizer_witness.is_some(),
                normalizer_witness,
            }
        })
        .collect();
    Census {
        records,
        involutions,
        order3_count: threes.len() as u64,
    }
}

/// Full census of order-3 classes; refuses excluded groups and groups over `cap`.
pub fn census(handle: &GroupHandle, cap: u64) -> Result<Census, ClassifyError> {
    refuse_excluded(handle)?;
    let stream = Stream::new(handle.chain(), cap)?;
    let codec = KeyCodec::new(handle.chain());
    Ok(if codec.fits_u128() {
        census_with::<u128>(handle, &stream)
    } else {
        census_with::<Box<[u16]>>(handle, &stream)
    })
}

/// One record per class of order-3 elements, representatives first in stream order.
pub fn order3_class_records(
    handle: &GroupHandle,
    cap: u64,
) -> Result<Vec<ClassRecord>, ClassifyError> {
    Ok(census(handle, cap)?.records)
}

/// As [`order3_class_records`], reading and filling `cache` under the handle's name.
pub fn order3_class_records_cached(
    handle: &GroupHandle,
    cap: u64,
    cache: Option<&Cache>,
) -> Result<Vec<ClassRecord>, ClassifyError> {
    let Some(cache) = cache else {
        return order3_class_records(handle, cap);
    };
    refuse_excluded(handle)?;
    let key = cache.key_for(&format!(
        "classes:{}:{}:{}",
        handle.name(),
        handle.degree(),
        handle.order()
    ));
    if let Some(recs) = cache.load_classes::<Vec<ClassRecord>>(&key)? {
        if recs
            .iter()
            .all(|r| r.representative.degree() == handle.degree())
        {
            return Ok(recs);
        }
    }
    let recs = order3_class_records(handle, cap)?;
    cache.store_classes(&key, &recs)?;
    Ok(recs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupName};
    use crate::perm::DEFAULT_CAP;

    fn records(name: GroupName) -> (GroupHandle, Vec<ClassRecord>) {
        let h = construct(&name).unwrap();
        let r = order3_class_records(&h, DEFAULT_CAP).unwrap();
        (h, r)
    }

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    #[test]
    fn alt5_and_alt6() {
        let (_, r) = records(GroupName::Alt(5));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].class_size, r[0].centralizer_order), (20, 3));
        assert!(!r[0].centralizes && r[0].normalizes);
        let (_, r) = records(GroupName::Alt(6));
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|c| c.centralizer_order == 9));
    }

    #[test]
    fn psl2_13_has_even_centralizer() {
        let (_, r) = records(GroupName::PSL(2, 13));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].centralizer_order % 2, 0);
        assert!(r[0].centralizes);
    }

    #[test]
    fn record_invariants() {
        for name in [
            GroupName::Alt(7),
            GroupName::PSL(2, 8),
            GroupName::PSL(3, 4),
            GroupName::FrobA4,
        ] {
            let h = construct(&name).unwrap();
            let c = census(&h, DEFAULT_CAP).unwrap();
            let total: u64 = c.records.iter().map(|r| r.class_size).sum();
            assert_eq!(total, c.order3_count);
            let SearchResult::Count(n3) =
                element_search(h.chain(), DEFAULT_CAP, has_order_three, SearchMode::Count).unwrap()
            else {
                unreachable!()
            };
            assert_eq!(total, n3);
            for r in &c.records {
                assert_eq!(u128::from(r.class_size * r.centralizer_order), h.order());
                assert_eq!(r.representative.order(), 3);
                assert!(r.normalizes || !r.centralizes);
                if let Some(t) = &r.centralizer_witness {
                    assert!(t.mul(t).is_identity() && t.commutes_with(&r.representative));
                }
                if let Some(w) = &r.normalizer_witness {
                    assert!(w.two_group_order.is_power_of_two() && w.two_group_order >= 2);
                }
                // Union-find class sizes agree with breadth-first conjugation orbits.
                let o = conjugation_orbit(
                    h.chain(),
                    h.generators(),
                    &r.representative,
                    1 << 20,
                    DEFAULT_CAP,
                )
                .unwrap();
                assert_eq!(o.size, r.class_size, "{name}");
            }
        }
    }

    #[test]
    fn single_element_predicates() {
        let h = construct(&GroupName::Alt(7)).unwrap();
        let (c, w) = centralizes_involution(&h, &cyc(7, &[&[0, 1, 2]]), DEFAULT_CAP).unwrap();
        assert!(c);
        let w = w.unwrap();
        assert!(w.commutes_with(&cyc(7, &[&[0, 1, 2]])));
        let (c, w) =
            centralizes_involution(&h, &cyc(7, &[&[0, 1, 2], &[3, 4, 5]]), DEFAULT_CAP).unwrap();
        assert!(!c && w.is_none());
        let (n, w) =
            normalizes_nontrivial_2subgroup(&h, &cyc(7, &[&[0, 1, 2], &[3, 4, 5]]), DEFAULT_CAP)
                .unwrap();
        assert!(n && w.is_some());
        assert!(centralizes_involution(&h, &cyc(7, &[&[0, 1]]), DEFAULT_CAP).is_err());
    }

    #[test]
    fn psl2_8_normalizes_nothing() {
        let (_, r) = records(GroupName::PSL(2, 8));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].centralizer_order, 9);
        assert!(!r[0].centralizes && !r[0].normalizes);
    }

    #[test]
    fn psl2_7_four_group_witness() {
        let (_, r) = records(GroupName::PSL(2, 7));
        assert_eq!(r.len(), 1);
        assert!(!r[0].centralizes && r[0].normalizes);
        assert_eq!(r[0].normalizer_witness.as_ref().unwrap().two_group_order, 4);
    }

    #[test]
    fn two_group_orders() {
        let t = cyc(4, &[&[0, 1], &[2, 3]]);
        let u = cyc(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(
            two_group_order(std::slice::from_ref(&t), 64),
            TwoGroupOrder::Order(2)
        );
        assert_eq!(
            two_group_order(&[t.clone(), u.clone(), t.mul(&u)], 64),
            TwoGroupOrder::Order(4)
        );
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        assert_eq!(two_group_order(&[a, b], 64), TwoGroupOrder::NotTwoGroup);
        let d8 = [cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])];
        assert_eq!(two_group_order(&d8, 4), TwoGroupOrder::Overflow);
    }

    #[test]
    fn triple_witness() {
        // Disjoint supports: w, w^x, w^(x^2) commute.
        let x = cyc(12, &[&[0, 4, 8], &[1, 5, 9], &[2, 6, 10], &[3, 7, 11]]);
        let w = cyc(12, &[&[0, 1], &[2, 3]]);
        let y = triple_involution_witness(&w, &x).unwrap();
        assert!(y.mul(&y).is_identity() && y.commutes_with(&x));
        // Alt9: (12)(45) with x = (123)(456)(789) has non-commuting conjugates.
        let x9 = cyc(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]);
        let w9 = cyc(9, &[&[0, 1], &[3, 4]]);
        assert!(matches!(
            triple_involution_witness(&w9, &x9),
            Err(ClassifyError::ConjugatesDoNotCommute)
        ));
    }

    #[test]
    fn conjugation_invariance() {
        let h = construct(&GroupName::PSL(2, 7)).unwrap();
        let r = &order3_class_records(&h, DEFAULT_CAP).unwrap()[0];
        for g in h.generators() {
            let y = r.representative.conjugate(g).unwrap();
            let (c, _) = centralizes_involution(&h, &y, DEFAULT_CAP).unwrap();
            let (n, _) = normalizes_nontrivial_2subgroup(&h, &y, DEFAULT_CAP).unwrap();
            assert_eq!((c, n), (r.centralizes, r.normalizes));
        }
    }

    #[test]
    fn excluded_groups_are_refused() {
        let h = construct(&GroupName::Sp4(2)).unwrap();
        assert!(matches!(
            order3_class_records(&h, DEFAULT_CAP),
            Err(ClassifyError::Excluded { .. })
        ));
    }

    #[test]
    fn thread_count_independence() {
        let h = construct(&GroupName::PSU(3, 3)).unwrap();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| order3_class_records(&h, DEFAULT_CAP).unwrap());
        let b = four.install(|| order3_class_records(&h, DEFAULT_CAP).unwrap());
        assert_eq!(a, b);
    }
}
