//! Deterministic enumeration of a group through its stabilizer chain, plus the
//! searches and conjugation orbits built on it.
//!
//! Every element factors uniquely as `u_{m-1} ... u_1 u_0` (apply `u_{m-1}`
//! first) with `u_l` a transversal element of level `l`. The stream visits the
//! index tuples `(c_0, ..., c_{m-1})` lexicographically with `c_0` slowest.
//! Work is split across level-0 subtrees; parallel results are always merged
//! in subtree order, so output never depends on the thread count.

use std::hash::Hash;
use std::ops::ControlFlow;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::{commute, mul_into, PermError, Permutation, StabilizerChain};

/// Default enumeration cap on the group order.
pub const DEFAULT_CAP: u64 = 20_000_000;

/// Enumerator over a chain whose order has been checked against a cap.
#[derive(Clone, Copy)]
pub struct Stream<'a> {
    chain: &'a StabilizerChain,
}

impl<'a> Stream<'a> {
    pub fn new(chain: &'a StabilizerChain, cap: u64) -> Result<Self, PermError> {
        let order = chain.order();
        if order > u128::from(cap) {
            return Err(PermError::CapExceeded { order, cap });
        }
        Ok(Self { chain })
    }

    pub fn chain(&self) -> &'a StabilizerChain {
        self.chain
    }

    /// Number of level-0 subtrees (1 for the trivial group).
    pub fn subtree_count(&self) -> usize {
        self.chain.levels().first().map_or(1, |l| l.orbit().len())
    }

    /// Visits every element of subtree `s` in stream order.
    pub fn for_each_in_subtree<F>(&self, s: usize, visitor: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        let levels = self.chain.levels();
        let d = self.chain.degree();
        if levels.is_empty() {
            let id: Vec<u16> = (0..d as u16).collect();
            return visitor(&id);
        }
        let mut bufs = vec![vec![0u16; d]; levels.len()];
        bufs[0].copy_from_slice(levels[0].rep(s).images());
        self.descend(1, &mut bufs, visitor)
    }

    fn descend<F>(&self, l: usize, bufs: &mut [Vec<u16>], visitor: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        let levels = self.chain.levels();
        if l == levels.len() {
            return visitor(&bufs[l - 1]);
        }
        let level = &levels[l];
        let last = l + 1 == levels.len();
        for c in 0..level.orbit().len() {
            {
                let (done, rest) = bufs.split_at_mut(l);
                mul_into(level.rep(c).images(), &done[l - 1], &mut rest[0]);
            }
            if last {
                visitor(&bufs[l])?;
            } else {
                self.descend(l + 1, bufs, visitor)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Visits every element in stream order, sequentially.
    pub fn for_each<F>(&self, mut visitor: F) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        for s in 0..self.subtree_count() {
            self.for_each_in_subtree(s, &mut visitor)?;
        }
        ControlFlow::Continue(())
    }

    /// Maps each subtree in parallel (on the current rayon pool) and hands the
    /// results to `consume` in subtree order. Results are produced in bounded
    /// batches so memory stays proportional to the thread count.
    pub fn map_subtrees<T, M, C>(&self, map: M, mut consume: C)
    where
        T: Send,
        M: Fn(usize) -> T + Sync,
        C: FnMut(T) -> ControlFlow<()>,
    {
        let n = self.subtree_count();
        let batch = (rayon::current_num_threads() * 2).max(1);
        let mut start = 0;
        while start < n {
            let end = (start + batch).min(n);
            let results: Vec<T> = if end - start == 1 {
                vec![map(start)]
            } else {
                (start..end).into_par_iter().map(&map).collect()
            };
            for r in results {
                if consume(r).is_break() {
                    return;
                }
            }
            start = end;
        }
    }
}

/// Packs the sequence of base images of an element, which determines it.
#[derive(Clone, Debug)]
pub struct KeyCodec {
    base: Vec<u16>,
    bits: u32,
}

impl KeyCodec {
    pub fn new(chain: &StabilizerChain) -> Self {
        let d = chain.degree().max(2);
        let bits = usize::BITS - (d - 1).leading_zeros();
        Self {
            base: chain.base().iter().map(|&b| b as u16).collect(),
            bits,
        }
    }

    /// Whether keys fit in a single `u128`.
    pub fn fits_u128(&self) -> bool {
        self.base.len() as u32 * self.bits <= 128
    }

    pub fn base(&self) -> &[u16] {
        &self.base
    }

    #[inline]
    pub(crate) fn key<K: ElementKey>(&self, g: &[u16]) -> K {
        K::pack(self, |l| g[usize::from(self.base[l])])
    }

    /// Key of `h^-1 g h` given `h` and its inverse, evaluated on base points only.
    #[inline]
    pub(crate) fn conj_key<K: ElementKey>(&self, g: &[u16], h: &[u16], h_inv: &[u16]) -> K {
        K::pack(self, |l| {
            let b = usize::from(self.base[l]);
            h[usize::from(g[usize::from(h_inv[b])])]
        })
    }
}

pub(crate) trait ElementKey: Clone + Eq + Hash + Send + Sync + 'static {
    fn pack(codec: &KeyCodec, image: impl Fn(usize) -> u16) -> Self;
    fn get(&self, codec: &KeyCodec, l: usize) -> u16;
}

impl ElementKey for u128 {
    #[inline]
    fn pack(codec: &KeyCodec, image: impl Fn(usize) -> u16) -> Self {
        let mut k = 0u128;
        for l in 0..codec.base.len() {
            k |= u128::from(image(l)) << (codec.bits * l as u32);
        }
        k
    }

    #[inline]
    fn get(&self, codec: &KeyCodec, l: usize) -> u16 {
        ((self >> (codec.bits * l as u32)) & ((1u128 << codec.bits) - 1)) as u16
    }
}

impl ElementKey for Box<[u16]> {
    fn pack(codec: &KeyCodec, image: impl Fn(usize) -> u16) -> Self {
        (0..codec.base.len()).map(image).collect()
    }

    fn get(&self, _codec: &KeyCodec, l: usize) -> u16 {
        self[l]
    }
}

/// Rebuilds the element with the given key by peeling transversal factors.
pub(crate) fn element_from_key<K: ElementKey>(
    chain: &StabilizerChain,
    codec: &KeyCodec,
    key: &K,
) -> Permutation {
    let levels = chain.levels();
    let d = chain.degree();
    if levels.is_empty() {
        return Permutation::identity(d);
    }
    let mut imgs: Vec<u16> = (0..levels.len()).map(|l| key.get(codec, l)).collect();
    let mut acc = vec![0u16; d];
    let mut tmp = vec![0u16; d];
    for (l, level) in levels.iter().enumerate() {
        let c = level
            .orbit_index(usize::from(imgs[l]))
            .expect("key does not belong to the group");
        let inv = level.inv_rep(c).images();
        for img in imgs.iter_mut().skip(l + 1) {
            *img = inv[usize::from(*img)];
        }
        if l == 0 {
            acc.copy_from_slice(level.rep(c).images());
        } else {
            mul_into(level.rep(c).images(), &acc, &mut tmp);
            std::mem::swap(&mut acc, &mut tmp);
        }
    }
    Permutation::from_u16(acc.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    First(Option<Permutation>),
    All(Vec<Permutation>),
    Count(u64),
}

/// Scans the stream with `predicate`. Results equal the sequential scan for
/// any thread count; `First` returns the earliest match in stream order.
pub fn element_search<P>(
    chain: &StabilizerChain,
    cap: u64,
    predicate: P,
    mode: SearchMode,
) -> Result<SearchResult, PermError>
where
    P: Fn(&[u16]) -> bool + Sync,
{
    let stream = Stream::new(chain, cap)?;
    let n = stream.subtree_count();
    Ok(match mode {
        SearchMode::First => SearchResult::First((0..n).into_par_iter().find_map_first(|s| {
            let mut found = None;
            let _ = stream.for_each_in_subtree(s, &mut |g: &[u16]| {
                if predicate(g) {
                    found = Some(Permutation::from_slice(g));
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            found
        })),
        SearchMode::All => {
            let mut out = Vec::new();
            stream.map_subtrees(
                |s| {
                    let mut hits = Vec::new();
                    let _ = stream.for_each_in_subtree(s, &mut |g: &[u16]| {
                        if predicate(g) {
                            hits.push(Permutation::from_slice(g));
                        }
                        ControlFlow::Continue(())
                    });
                    hits
                },
                |hits| {
                    out.extend(hits);
                    ControlFlow::Continue(())
                },
            );
            SearchResult::All(out)
        }
        SearchMode::Count => SearchResult::Count(
            (0..n)
                .into_par_iter()
                .map(|s| {
                    let mut count = 0u64;
                    let _ = stream.for_each_in_subtree(s, &mut |g: &[u16]| {
                        count += u64::from(predicate(g));
                        ControlFlow::Continue(())
                    });
                    count
                })
                .sum(),
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    pub size: u64,
    /// Class members, when the class fit within the memory cap.
    pub members: Option<Vec<Permutation>>,
    /// Whether the size came from the centralizer-counting fallback.
    pub size_only: bool,
}

/// Conjugacy class of `x` under `generators`, by breadth-first closure over
/// packed keys. If more than `memory_cap` keys would be stored, falls back to
/// counting the centralizer in a stream pass (bounded by `enum_cap`).
pub fn conjugation_orbit(
    chain: &StabilizerChain,
    generators: &[Permutation],
    x: &Permutation,
    memory_cap: usize,
    enum_cap: u64,
) -> Result<OrbitResult, PermError> {
    if x.degree() != chain.degree() {
        return Err(PermError::DegreeMismatch(chain.degree(), x.degree()));
    }
    let codec = KeyCodec::new(chain);
    let closed = if codec.fits_u128() {
        orbit_keys::<u128>(chain, &codec, generators, x, memory_cap)
    } else {
        orbit_keys::<Box<[u16]>>(chain, &codec, generators, x, memory_cap)
    };
    if let Some(members) = closed {
        return Ok(OrbitResult {
            size: members.len() as u64,
            members: Some(members),
            size_only: false,
        });
    }
    let stream =
        Stream::new(chain, enum_cap).map_err(|_| PermError::MemoryCap { cap: memory_cap })?;
    let xi = x.images();
    let mut cent = 0u64;
    stream.map_subtrees(
        |s| {
            let mut c = 0u64;
            let _ = stream.for_each_in_subtree(s, &mut |g: &[u16]| {
                c += u64::from(commute(g, xi));
                ControlFlow::Continue(())
            });
            c
        },
        |c| {
            cent += c;
            ControlFlow::Continue(())
        },
    );
    Ok(OrbitResult {
        size: (chain.order() / u128::from(cent)) as u64,
        members: None,
        size_only: true,
    })
}

fn orbit_keys<K: ElementKey>(
    chain: &StabilizerChain,
    codec: &KeyCodec,
    generators: &[Permutation],
    x: &Permutation,
    memory_cap: usize,
) -> Option<Vec<Permutation>> {
    let inverses: Vec<Permutation> = generators.iter().map(Permutation::inverse).collect();
    let start: K = codec.key(x.images());
    let mut seen: FxHashSet<K> = FxHashSet::default();
    seen.insert(start.clone());
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let y = element_from_key(chain, codec, &order[head]);
        head += 1;
        for (g, gi) in generators.iter().zip(&inverses) {
            let k: K = codec.conj_key(y.images(), g.images(), gi.images());
            if !seen.contains(&k) {
                if seen.len() >= memory_cap {
                    return None;
                }
                seen.insert(k.clone());
                order.push(k);
            }
        }
    }
    Some(
        order
            .iter()
            .map(|k| element_from_key(chain, codec, k))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::super::{has_order_three, is_involution};
    use super::*;
    use std::collections::HashSet;

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn alt(n: usize) -> (StabilizerChain, Vec<Permutation>) {
        let mut gens = vec![cyc(n, &[&[0, 1, 2]])];
        for i in 3..n {
            gens.push(cyc(n, &[&[0, 1, i]]));
        }
        (StabilizerChain::build(n, &gens).unwrap(), gens)
    }

    fn psl27() -> (StabilizerChain, Vec<Permutation>) {
        // Action on the 7 points of the Fano plane.
        let gens = vec![
            cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]),
            cyc(7, &[&[1, 2, 4], &[3, 6, 5]]),
            cyc(7, &[&[0, 1], &[3, 6]]),
        ];
        (StabilizerChain::build(7, &gens).unwrap(), gens)
    }

    fn count(chain: &StabilizerChain, p: impl Fn(&[u16]) -> bool + Sync) -> u64 {
        match element_search(chain, DEFAULT_CAP, p, SearchMode::Count).unwrap() {
            SearchResult::Count(c) => c,
            _ => unreachable!(),
        }
    }

    #[test]
    fn alt5_stream_visits_each_element_once() {
        let (c, _) = alt(5);
        let mut seen = HashSet::new();
        let _ = Stream::new(&c, DEFAULT_CAP).unwrap().for_each(|g| {
            assert!(seen.insert(g.to_vec()));
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 60);
        assert_eq!(count(&c, is_involution), 15);
        assert_eq!(
            count(&c, |g| g.iter().enumerate().all(|(i, &p)| p as usize == i)),
            1
        );
    }

    #[test]
    fn trivial_stream_has_one_visit() {
        let c = StabilizerChain::build(3, &[]).unwrap();
        assert_eq!(count(&c, |_| true), 1);
    }

    #[test]
    fn psl27_counts() {
        let (c, _) = psl27();
        assert_eq!(c.order(), 168);
        assert_eq!(count(&c, |_| true), 168);
        assert_eq!(count(&c, is_involution), 21);
        assert_eq!(count(&c, has_order_three), 56);
    }

    #[test]
    fn alt6_counts_and_order_seven_absent() {
        let (c6, _) = alt(6);
        assert_eq!(count(&c6, is_involution), 45);
        let (c5, _) = alt(5);
        assert_eq!(count(&c5, |g| Permutation::from_slice(g).order() == 7), 0);
    }

    #[test]
    fn cap_refusal_names_order_and_cap() {
        let (c, _) = alt(5);
        let err = Stream::new(&c, 59).err().unwrap();
        assert_eq!(err, PermError::CapExceeded { order: 60, cap: 59 });
        assert!(err.to_string().contains("60") && err.to_string().contains("59"));
    }

    #[test]
    fn first_is_earliest_in_stream_order() {
        let (c, _) = alt(6);
        let mut expected = None;
        let _ = Stream::new(&c, DEFAULT_CAP).unwrap().for_each(|g| {
            if has_order_three(g) {
                expected = Some(Permutation::from_slice(g));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        let got = element_search(&c, DEFAULT_CAP, has_order_three, SearchMode::First).unwrap();
        assert_eq!(got, SearchResult::First(expected));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let all1 = element_search(&c, DEFAULT_CAP, is_involution, SearchMode::All).unwrap();
        let all3 = pool
            .install(|| element_search(&c, DEFAULT_CAP, is_involution, SearchMode::All).unwrap());
        assert_eq!(all1, all3);
    }

    #[test]
    fn membership_matches_stream_exactly() {
        // contains() accepts exactly the streamed elements, checked against all of Sym(6).
        let (c, _) = alt(6);
        let mut inside = HashSet::new();
        let _ = Stream::new(&c, DEFAULT_CAP).unwrap().for_each(|g| {
            inside.insert(g.to_vec());
            ControlFlow::Continue(())
        });
        let (sym, _) = {
            let g = vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
            (StabilizerChain::build(6, &g).unwrap(), g)
        };
        let _ = Stream::new(&sym, DEFAULT_CAP).unwrap().for_each(|g| {
            let p = Permutation::from_slice(g);
            assert_eq!(c.contains(&p).unwrap(), inside.contains(g));
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn keys_round_trip() {
        let (c, _) = psl27();
        let codec = KeyCodec::new(&c);
        let _ = Stream::new(&c, DEFAULT_CAP).unwrap().for_each(|g| {
            let k: u128 = codec.key(g);
            assert_eq!(element_from_key(&c, &codec, &k).images(), g);
            let w: Box<[u16]> = codec.key(g);
            assert_eq!(element_from_key(&c, &codec, &w).images(), g);
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn orbit_sizes() {
        let (c5, g5) = alt(5);
        let x = cyc(5, &[&[0, 1, 2]]);
        let o = conjugation_orbit(&c5, &g5, &x, 1 << 20, DEFAULT_CAP).unwrap();
        assert_eq!(o.size, 20);
        assert!(!o.size_only);
        let id = Permutation::identity(5);
        assert_eq!(
            conjugation_orbit(&c5, &g5, &id, 1 << 20, DEFAULT_CAP)
                .unwrap()
                .size,
            1
        );
        let (c6, g6) = alt(6);
        let x6 = cyc(6, &[&[0, 1, 2]]);
        assert_eq!(
            conjugation_orbit(&c6, &g6, &x6, 1 << 20, DEFAULT_CAP)
                .unwrap()
                .size,
            40
        );
        // Size-only fallback agrees.
        let small = conjugation_orbit(&c6, &g6, &x6, 10, DEFAULT_CAP).unwrap();
        assert_eq!(
            (small.size, small.size_only, small.members),
            (40, true, None)
        );
    }
}
