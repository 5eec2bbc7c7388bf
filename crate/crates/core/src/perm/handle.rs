use std::sync::Arc;

use super::{PermError, Permutation, StabilizerChain};
use crate::lie::GroupKind;
use crate::matrix::LinearAction;

/// Construction metadata carried alongside a permutation group.
#[derive(Clone, Debug, Default)]
pub struct GroupInfo {
    /// Symbolic family and parameter, when the group belongs to one.
    pub kind: Option<GroupKind>,
    /// Reason the group is outside the classification, if it is.
    pub excluded: Option<String>,
    /// Matrix action the permutations came from.
    pub linear: Option<Arc<LinearAction>>,
    /// Whether the permutations are the natural action of Alt/Sym.
    pub natural: bool,
}

/// A named permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    name: String,
    generators: Vec<Permutation>,
    chain: Arc<StabilizerChain>,
    info: GroupInfo,
}

impl GroupHandle {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        info: GroupInfo,
    ) -> Result<Self, PermError> {
        let chain = StabilizerChain::build(degree, &generators)?;
        Self::with_chain(name, generators, chain, info)
    }

    /// Wraps an existing chain after checking every generator against it.
    pub fn with_chain(
        name: impl Into<String>,
        generators: Vec<Permutation>,
        chain: StabilizerChain,
        info: GroupInfo,
    ) -> Result<Self, PermError> {
        for g in &generators {
            if !chain.contains(g)? {
                return Err(PermError::ForeignGenerator);
            }
        }
        Ok(Self {
            name: name.into(),
            generators,
            chain: Arc::new(chain),
            info,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn info(&self) -> &GroupInfo {
        &self.info
    }

    pub fn is_excluded(&self) -> bool {
        self.info.excluded.is_some()
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool, PermError> {
        self.chain.contains(x)
    }
}
