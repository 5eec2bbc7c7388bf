use thiserror::Error;

use super::{mul_into, PermError, Permutation};

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("stabilizer chain failed verification: {0}")]
    Invalid(String),
}

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: u16,
    gens: Vec<Permutation>,
    orbit: Vec<u16>,
    index: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, base_point: u16, gens: Vec<Permutation>) -> Self {
        let mut level = Self {
            base_point,
            gens,
            orbit: Vec::new(),
            index: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    /// Breadth-first orbit of the base point, then sorted ascending so that
    /// stream order does not depend on generator order beyond the reps chosen.
    fn rebuild_orbit(&mut self, degree: usize) {
        let b = usize::from(self.base_point);
        let mut reps: Vec<Option<Permutation>> = vec![None; degree];
        reps[b] = Some(Permutation::identity(degree));
        let mut queue = vec![b];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for s in &self.gens {
                let img = s.image(p);
                if reps[img].is_none() {
                    reps[img] = Some(reps[p].as_ref().unwrap().mul(s));
                    queue.push(img);
                }
            }
        }
        queue.sort_unstable();
        self.index.iter_mut().for_each(|i| *i = NOT_IN_ORBIT);
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        for (k, &p) in queue.iter().enumerate() {
            self.index[p] = k as u32;
            self.orbit.push(p as u16);
            let r = reps[p].take().unwrap();
            self.inv_reps.push(r.inverse());
            self.reps.push(r);
        }
    }

    pub fn base_point(&self) -> usize {
        usize::from(self.base_point)
    }

    /// Basic orbit, ascending.
    pub fn orbit(&self) -> &[u16] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Position of `point` in the basic orbit.
    #[inline]
    pub fn orbit_index(&self, point: usize) -> Option<usize> {
        let i = self.index[point];
        (i != NOT_IN_ORBIT).then_some(i as usize)
    }

    /// Transversal element mapping the base point to `orbit()[i]`.
    pub fn rep(&self, i: usize) -> &Permutation {
        &self.reps[i]
    }

    pub fn inv_rep(&self, i: usize) -> &Permutation {
        &self.inv_reps[i]
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims. The base is extended with the first point
    /// moved by each new sift residue, so the result depends only on the
    /// generator list.
    pub fn build(degree: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }

        let mut base: Vec<u16> = Vec::new();
        for g in &gens {
            if base
                .iter()
                .all(|&b| g.image(usize::from(b)) == usize::from(b))
            {
                base.push(g.first_moved().unwrap() as u16);
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let fixing: Vec<Permutation> = gens
                .iter()
                .filter(|g| {
                    base[..i]
                        .iter()
                        .all(|&c| g.image(usize::from(c)) == usize::from(c))
                })
                .cloned()
                .collect();
            levels.push(Level::new(degree, b, fixing));
        }
        let mut chain = Self { degree, levels };

        let mut cursor = vec![0usize; chain.levels.len()];
        let mut i = chain.levels.len();
        let mut scratch = vec![0u16; degree];
        while i > 0 {
            let l = i - 1;
            let level = &chain.levels[l];
            let ngens = level.gens.len();
            let total = level.orbit.len() * ngens;
            if cursor[l] >= total {
                i -= 1;
                continue;
            }
            let (pos, s) = (cursor[l] / ngens, cursor[l] % ngens);
            cursor[l] += 1;
            let gen = &level.gens[s];
            let beta = usize::from(level.orbit[pos]);
            let target = level.index[gen.image(beta)] as usize;
            mul_into(level.reps[pos].images(), gen.images(), &mut scratch);
            let sg = Permutation::from_slice(&scratch).mul(&level.inv_reps[target]);
            let (h, j) = chain.sift_from(sg, l + 1);
            if h.is_identity() {
                continue;
            }
            if j == chain.levels.len() {
                let b = h.first_moved().unwrap() as u16;
                chain.levels.push(Level::new(degree, b, Vec::new()));
                cursor.push(0);
            }
            for (level, c) in chain.levels[l + 1..=j]
                .iter_mut()
                .zip(&mut cursor[l + 1..=j])
            {
                level.gens.push(h.clone());
                level.rebuild_orbit(degree);
                *c = 0;
            }
            i = j + 1;
        }
        Ok(chain)
    }

    /// Rebuilds a chain from a stored base and per-level generators, then
    /// verifies it from scratch.
    pub fn from_parts(
        degree: usize,
        base: &[u16],
        level_gens: Vec<Vec<Permutation>>,
    ) -> Result<Self, ChainError> {
        if base.len() != level_gens.len() {
            return Err(ChainError::Invalid("base and level count differ".into()));
        }
        let mut levels = Vec::with_capacity(base.len());
        for (&b, gens) in base.iter().zip(level_gens) {
            if usize::from(b) >= degree || gens.iter().any(|g| g.degree() != degree) {
                return Err(ChainError::Invalid(
                    "degree mismatch in stored chain".into(),
                ));
            }
            levels.push(Level::new(degree, b, gens));
        }
        let chain = Self { degree, levels };
        chain.verify()?;
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(Level::base_point).collect()
    }

    /// Product of basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Union of the level generators, in level order without repeats.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for g in self.levels.iter().flat_map(|l| &l.gens) {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    /// Sifts `g` starting at `start`; returns the residue and the level at which
    /// sifting stopped (`levels().len()` when it went all the way through).
    pub(crate) fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.image(level.base_point());
            match level.orbit_index(beta) {
                None => return (h, l),
                Some(k) => h = h.mul(&level.inv_reps[k]),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool, PermError> {
        if x.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, x.degree()));
        }
        let (h, _) = self.sift_from(x.clone(), 0);
        Ok(h.is_identity())
    }

    /// Independent re-check: level generators fixing the base prefix, closed
    /// orbits with consistent transversals, and every Schreier generator
    /// sifting to the identity.
    pub fn verify(&self) -> Result<(), ChainError> {
        let bad = |m: String| Err(ChainError::Invalid(m));
        for (l, level) in self.levels.iter().enumerate() {
            let b = level.base_point();
            if self.levels[..l].iter().any(|e| e.base_point() == b) {
                return bad(format!("repeated base point {b}"));
            }
            for g in &level.gens {
                if self.levels[..l]
                    .iter()
                    .any(|e| g.image(e.base_point()) != e.base_point())
                {
                    return bad(format!(
                        "generator at level {l} moves an earlier base point"
                    ));
                }
            }
            if l + 1 == self.levels.len() && level.orbit.len() < 2 {
                return bad(format!("redundant trailing level {l}"));
            }
            for (k, &p) in level.orbit.iter().enumerate() {
                if level.reps[k].image(b) != usize::from(p)
                    || !level.reps[k].mul(&level.inv_reps[k]).is_identity()
                {
                    return bad(format!("bad transversal entry at level {l}"));
                }
                for s in &level.gens {
                    let Some(t) = level.orbit_index(s.image(usize::from(p))) else {
                        return bad(format!("orbit at level {l} is not closed"));
                    };
                    let sg = level.reps[k].mul(s).mul(&level.inv_reps[t]);
                    if !self.sift_from(sg, l + 1).0.is_identity() {
                        return bad(format!("Schreier generator at level {l} does not sift"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    /// Naive closure used as an order oracle.
    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let d = gens[0].degree();
        let mut seen = HashSet::new();
        let mut queue = vec![Permutation::identity(d)];
        seen.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    fn alt5() -> Vec<Permutation> {
        vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]
    }

    #[test]
    fn alt5_order_and_membership() {
        let c = StabilizerChain::build(5, &alt5()).unwrap();
        assert_eq!(c.order(), 60);
        c.verify().unwrap();
        assert!(!c.contains(&cyc(5, &[&[0, 1]])).unwrap());
        assert!(c.contains(&cyc(5, &[&[0, 1, 2, 3, 4]])).unwrap());
        assert!(c.contains(&cyc(5, &[&[0, 4], &[1, 3]])).unwrap());
        assert!(c.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn single_transposition() {
        let c = StabilizerChain::build(2, &[cyc(2, &[&[0, 1]])]).unwrap();
        assert_eq!(c.order(), 2);
    }

    #[test]
    fn trivial_group_has_empty_base() {
        let c = StabilizerChain::build(4, &[Permutation::identity(4)]).unwrap();
        assert_eq!(c.order(), 1);
        assert!(c.base().is_empty());
        let c = StabilizerChain::build(4, &[]).unwrap();
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn orders_match_closure_oracle() {
        let cases: Vec<Vec<Permutation>> = vec![
            alt5(),
            vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])],
            vec![
                cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]),
                cyc(7, &[&[1, 2, 4], &[3, 6, 5]]),
            ],
            vec![
                cyc(8, &[&[0, 1], &[2, 3]]),
                cyc(8, &[&[4, 5, 6, 7]]),
                cyc(8, &[&[1, 4]]),
            ],
            vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])],
        ];
        for gens in cases {
            let c = StabilizerChain::build(gens[0].degree(), &gens).unwrap();
            c.verify().unwrap();
            let all = closure(&gens);
            assert_eq!(c.order(), all.len() as u128);
            for x in &all {
                assert!(c.contains(x).unwrap());
            }
        }
    }

    #[test]
    fn deterministic_and_reloadable() {
        let a = StabilizerChain::build(5, &alt5()).unwrap();
        let b = StabilizerChain::build(5, &alt5()).unwrap();
        assert_eq!(a.base(), b.base());
        let gens: Vec<Vec<Permutation>> =
            a.levels().iter().map(|l| l.generators().to_vec()).collect();
        let base: Vec<u16> = a.base().iter().map(|&p| p as u16).collect();
        let r = StabilizerChain::from_parts(5, &base, gens).unwrap();
        assert_eq!(r.order(), 60);
        // A stored chain missing its deepest level fails verification.
        let mut short: Vec<Vec<Permutation>> =
            a.levels().iter().map(|l| l.generators().to_vec()).collect();
        short.pop();
        assert!(StabilizerChain::from_parts(5, &base[..base.len() - 1], short).is_err());
    }
}
