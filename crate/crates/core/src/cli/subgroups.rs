//! Small-group utilities for the normalizer and counterexample reports:
//! closures, conjugation orbits of subgroups, and normalizer orders.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::perm::{
    commute, element_search, is_involution, GroupHandle, PermError, Permutation, SearchMode,
    SearchResult,
};

/// Sorted elements of `<gens>`, or `None` once more than `limit` appear.
pub(crate) fn closure(
    degree: usize,
    gens: &[Permutation],
    limit: usize,
) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let a = out[head].clone();
        head += 1;
        for g in gens {
            let b = a.mul(g);
            if seen.insert(b.clone()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(b);
            }
        }
    }
    out.sort();
    Some(out)
}

fn conjugate_set(set: &[Permutation], g: &Permutation, g_inv: &Permutation) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = set.iter().map(|x| g_inv.mul(x).mul(g)).collect();
    out.sort();
    out
}

/// Orbits of sorted element sets under conjugation by the group generators,
/// as lists of indices into `sets` in first-appearance order.
pub(crate) fn conjugacy_orbits(handle: &GroupHandle, sets: &[Vec<Permutation>]) -> Vec<Vec<usize>> {
    let index: FxHashMap<&[Permutation], usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let gens: Vec<(Permutation, Permutation)> = handle
        .generators()
        .iter()
        .map(|g| (g.clone(), g.inverse()))
        .collect();
    let mut orbit_of = vec![usize::MAX; sets.len()];
    let mut orbits = Vec::new();
    for start in 0..sets.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let s = &sets[members[head]];
            head += 1;
            for (g, gi) in &gens {
                let t = conjugate_set(s, g, gi);
                let j = *index
                    .get(t.as_slice())
                    .expect("set family is closed under conjugation");
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                }
            }
        }
        orbits.push(members);
    }
    orbits
}

/// `|N_G(H)| = |G| / |H^G|`, with `H` given by its sorted elements.
pub(crate) fn normalizer_order(handle: &GroupHandle, subgroup: &[Permutation]) -> u128 {
    let gens: Vec<(Permutation, Permutation)> = handle
        .generators()
        .iter()
        .map(|g| (g.clone(), g.inverse()))
        .collect();
    let mut seen: FxHashSet<Vec<Permutation>> = FxHashSet::default();
    let mut queue = vec![subgroup.to_vec()];
    seen.insert(subgroup.to_vec());
    let mut head = 0;
    while head < queue.len() {
        let s = queue[head].clone();
        head += 1;
        for (g, gi) in &gens {
            let t = conjugate_set(&s, g, gi);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    handle.order() / queue.len() as u128
}

/// Every involution, in stream order.
pub(crate) fn involutions(handle: &GroupHandle, cap: u64) -> Result<Vec<Permutation>, PermError> {
    match element_search(handle.chain(), cap, is_involution, SearchMode::All)? {
        SearchResult::All(v) => Ok(v),
        _ => unreachable!("All mode returns all matches"),
    }
}

/// Every four-group `{1, a, b, ab}`, sorted, ordered by first appearance of `a`.
pub(crate) fn four_groups(invs: &[Permutation]) -> Vec<Vec<Permutation>> {
    let mut seen: FxHashSet<Vec<Permutation>> = FxHashSet::default();
    let mut out = Vec::new();
    for (i, a) in invs.iter().enumerate() {
        for b in &invs[i + 1..] {
            if commute(a.images(), b.images()) {
                let mut v = vec![
                    Permutation::identity(a.degree()),
                    a.clone(),
                    b.clone(),
                    a.mul(b),
                ];
                v.sort();
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupName};
    use crate::perm::DEFAULT_CAP;

    #[test]
    fn alt5_subgroup_counts() {
        let h = construct(&GroupName::Alt(5)).unwrap();
        let invs = involutions(&h, DEFAULT_CAP).unwrap();
        assert_eq!(invs.len(), 15);
        let v4 = four_groups(&invs);
        assert_eq!(v4.len(), 5);
        assert_eq!(conjugacy_orbits(&h, &v4).len(), 1);
        // N(V4) = Alt4, N(<t>) = V4.
        assert_eq!(normalizer_order(&h, &v4[0]), 12);
        let t = closure(5, &invs[..1], 8).unwrap();
        assert_eq!(normalizer_order(&h, &t), 4);
        let singletons: Vec<Vec<Permutation>> = invs.iter().map(|t| vec![t.clone()]).collect();
        assert_eq!(conjugacy_orbits(&h, &singletons).len(), 1);
    }

    #[test]
    fn closure_limit() {
        let h = construct(&GroupName::Alt(5)).unwrap();
        assert!(closure(5, h.generators(), 59).is_none());
        assert_eq!(closure(5, h.generators(), 60).unwrap().len(), 60);
    }
}
