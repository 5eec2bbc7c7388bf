//! Ground truth for small groups by a different route: build a Sylow
//! 2-subgroup P, list every subgroup of P, and ask whether some conjugate of
//! `x` leaves a nontrivial one invariant. Every 2-subgroup is conjugate into
//! P, so this decides whether `x` normalizes a nontrivial 2-subgroup.

use std::ops::ControlFlow;

use rustc_hash::{FxHashMap, FxHashSet};

use super::{check_order3, two_part, ClassifyError};
use crate::perm::{conjugation_orbit, mul_into, perm_order, GroupHandle, Permutation, Stream};

/// Largest group order the oracle accepts.
pub const ORACLE_CAP: u128 = 32768;

/// Elements of a Sylow 2-subgroup, grown greedily along the stream: any
/// 2-element `g` with `<P, g>` a 2-group enlarges `P` until `|P|` is the full
/// 2-part of the group order.
pub fn sylow2_subgroup(handle: &GroupHandle) -> Result<Vec<Permutation>, ClassifyError> {
    let order = handle.order();
    if order > ORACLE_CAP {
        return Err(ClassifyError::OracleCap {
            order,
            cap: ORACLE_CAP,
        });
    }
    let target = two_part(order);
    let stream = Stream::new(handle.chain(), ORACLE_CAP as u64)?;
    let mut two_elements = Vec::new();
    let _ = stream.for_each(|g| {
        let o = perm_order(g);
        if o > 1 && o.is_power_of_two() {
            two_elements.push(Permutation::from_slice(g));
        }
        ControlFlow::Continue(())
    });
    let mut gens: Vec<Permutation> = Vec::new();
    let mut size = 1u64;
    while size < target {
        let grown = two_elements.iter().find_map(|g| {
            let mut trial = gens.clone();
            trial.push(g.clone());
            let o = bounded_closure(handle.degree(), &trial, target)?.len() as u64;
            (o > size && o.is_power_of_two()).then(|| (g.clone(), o))
        });
        let (g, o) = grown.expect("a proper 2-subgroup is normalized by a larger one");
        gens.push(g);
        size = o;
    }
    Ok(closure(handle.degree(), &gens))
}

fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    bounded_closure(degree, gens, u64::MAX).expect("unbounded")
}

/// Sorted elements of `<gens>`, or `None` once more than `limit` appear.
fn bounded_closure(degree: usize, gens: &[Permutation], limit: u64) -> Option<Vec<Permutation>> {
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
                if out.len() as u64 >= limit {
                    return None;
                }
                out.push(b);
            }
        }
    }
    out.sort();
    Some(out)
}

/// Subgroups of a group of order at most 128, as bitsets over `elements`.
fn all_subgroups(elements: &[Permutation]) -> Vec<u128> {
    let n = elements.len();
    assert!(n <= 128, "Sylow 2-subgroup too large for the bitset oracle");
    let index: FxHashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let table: Vec<Vec<u8>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.mul(b)] as u8).collect())
        .collect();
    let id = index[&Permutation::identity(elements[0].degree())];
    let generate = |gens: &[usize]| -> u128 {
        let mut set = 1u128 << id;
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &g in gens {
                let b = table[a][g] as usize;
                if set & (1 << b) == 0 {
                    set |= 1 << b;
                    queue.push(b);
                }
            }
        }
        set
    };
    let mut found: FxHashMap<u128, Vec<usize>> = FxHashMap::default();
    found.insert(1u128 << id, Vec::new());
    let mut queue: Vec<u128> = vec![1u128 << id];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        let hg = found[&h].clone();
        for g in 0..n {
            if h & (1 << g) != 0 {
                continue;
            }
            let mut gens = hg.clone();
            gens.push(g);
            let k = generate(&gens);
            if let std::collections::hash_map::Entry::Vacant(e) = found.entry(k) {
                e.insert(gens);
                queue.push(k);
            }
        }
    }
    queue
}

/// Whether `x` normalizes a nontrivial 2-subgroup, by subgroup enumeration.
pub fn oracle_normalizes_2subgroup(
    handle: &GroupHandle,
    x: &Permutation,
) -> Result<bool, ClassifyError> {
    let order = handle.order();
    if order > ORACLE_CAP {
        return Err(ClassifyError::OracleCap {
            order,
            cap: ORACLE_CAP,
        });
    }
    check_order3(handle, x)?;
    let p = sylow2_subgroup(handle)?;
    let subgroups = all_subgroups(&p);
    let index: FxHashMap<&[u16], usize> =
        p.iter().enumerate().map(|(i, e)| (e.images(), i)).collect();
    let class = conjugation_orbit(
        handle.chain(),
        handle.generators(),
        x,
        usize::MAX,
        ORACLE_CAP as u64,
    )?
    .members
    .expect("small classes are materialized");
    let d = handle.degree();
    let mut tmp = vec![0u16; d];
    let mut conj = vec![0u16; d];
    for y in &class {
        let yi = y.inverse();
        // image[i] = index of y^-1 p_i y, or None if it leaves P.
        let image: Vec<Option<usize>> = p
            .iter()
            .map(|e| {
                mul_into(yi.images(), e.images(), &mut tmp);
                mul_into(&tmp, y.images(), &mut conj);
                index.get(conj.as_slice()).copied()
            })
            .collect();
        for &u in &subgroups {
            if u.count_ones() < 2 {
                continue;
            }
            let invariant = (0..p.len())
                .filter(|&i| u & (1 << i) != 0)
                .all(|i| image[i].is_some_and(|j| u & (1 << j) != 0));
            if invariant {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::order3_class_records;
    use crate::groups::{construct, GroupName};
    use crate::perm::DEFAULT_CAP;

    #[test]
    fn sylow_orders() {
        for (name, two) in [
            (GroupName::Alt(5), 4),
            (GroupName::PSL(2, 8), 8),
            (GroupName::PSL(3, 4), 64),
        ] {
            let h = construct(&name).unwrap();
            assert_eq!(sylow2_subgroup(&h).unwrap().len(), two);
        }
    }

    #[test]
    fn subgroup_counts() {
        // D8 has 10 subgroups; the four-group has 5.
        let d8 = closure(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2]]).unwrap(),
            ],
        );
        assert_eq!(all_subgroups(&d8).len(), 10);
        let v4 = closure(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        );
        assert_eq!(all_subgroups(&v4).len(), 5);
    }

    #[test]
    fn agrees_on_small_groups() {
        for name in [
            GroupName::Alt(5),
            GroupName::PSL(2, 8),
            GroupName::PSL(2, 7),
            GroupName::FrobA4,
        ] {
            let h = construct(&name).unwrap();
            for r in order3_class_records(&h, DEFAULT_CAP).unwrap() {
                assert_eq!(
                    oracle_normalizes_2subgroup(&h, &r.representative).unwrap(),
                    r.normalizes,
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn refuses_large_groups() {
        let h = construct(&GroupName::Alt(9)).unwrap();
        let x = order3_class_records(&h, DEFAULT_CAP).unwrap()[0]
            .representative
            .clone();
        assert!(matches!(
            oracle_normalizes_2subgroup(&h, &x),
            Err(ClassifyError::OracleCap { .. })
        ));
    }
}
