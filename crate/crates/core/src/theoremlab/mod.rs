//! Executable forms of the induced-module characterisations: orbit sums,
//! invariance, the Mackey step, the global and block-wise criteria for
//! Ind M to be support τ-tilting, and membership in the rigid/tilting
//! orbit sets.

mod corpus;
mod example;

use std::sync::Arc;

use crate::blockdec::{blocks, block_cut_induce, block_of_module, covering_blocks, fong_reynolds_block, inertial_group, Block};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::grouprep::{conjugate_rep, direct_sum, induce, restrict, Budget, Rep};
use crate::grouprep::ext_module;
use crate::meataxe::isomorphism;
use crate::permgroup::{Group, Perm, Transversal};
use crate::taucalc::{GroupAlgebra, Scope, SttCertificate};

pub use corpus::{ClassChecks, ClassInfo, Corpus, CorpusVerdicts};
pub use example::{a4s4_pair, example_a4s4, example_on, ExampleReport};

/// lhs ⇔ rhs for one module, with the certificates behind both sides.
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub lhs: bool,
    pub rhs: bool,
    pub agree: bool,
    /// The support τ-tilting certificate of the induced module.
    pub induced: SttCertificate,
    pub rigid: bool,
    /// The support τ-tilting certificate of the orbit sum.
    pub orbit: SttCertificate,
}

/// Membership in the rigid and tilting orbit sets, globally and for a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemarkFlags {
    pub in_rig_group: bool,
    pub in_sta_group: bool,
    pub in_rig_block: Option<bool>,
    pub in_sta_block: Option<bool>,
}

/// A block B of kG, a block B̃ of k·big covering it, and the inertial data.
#[derive(Clone, Debug)]
pub struct BlockPair {
    pub small_block: usize,
    pub big_block: usize,
    pub inertial: Arc<Group>,
    /// Transversal reps lying in the inertial group: coset reps of G in I.
    pub inertial_reps: Vec<Perm>,
    pub inertial_blocks: Vec<Block>,
    /// The Fong–Reynolds correspondent among `inertial_blocks`.
    pub beta: usize,
}

/// A normal subgroup G of G̃ with both group algebras and their blocks.
#[derive(Clone, Debug)]
pub struct GroupPair {
    pub small: GroupAlgebra,
    pub big: GroupAlgebra,
    pub transversal: Transversal,
    pub small_blocks: Vec<Block>,
    pub big_blocks: Vec<Block>,
}

impl GroupPair {
    pub fn new(small: Arc<Group>, big: Arc<Group>, field: Field, budget: Budget) -> Result<GroupPair> {
        let transversal = Transversal::new(&big, &small)?;
        if !transversal.is_normal() {
            return Err(Error::NotNormal("the subgroup must be normal".into()));
        }
        let small = GroupAlgebra::new(small, field, budget)?;
        let big = GroupAlgebra::new(big, field, budget)?;
        let small_blocks = blocks(&small)?;
        let big_blocks = blocks(&big)?;
        Ok(GroupPair {
            small,
            big,
            transversal,
            small_blocks,
            big_blocks,
        })
    }

    pub fn budget(&self) -> &Budget {
        self.small.budget()
    }

    pub fn field(&self) -> Field {
        self.small.field()
    }

    pub fn induce(&self, m: &Rep) -> Result<Rep> {
        induce(m, self.big.group(), &self.transversal)
    }

    /// g̃M for every transversal rep g̃, identity first.
    pub fn conjugates(&self, m: &Rep) -> Result<Vec<Rep>> {
        self.transversal.reps().iter().map(|t| conjugate_rep(m, t)).collect()
    }

    fn sum(&self, parts: &[Rep]) -> Result<Rep> {
        let refs: Vec<&Rep> = parts.iter().collect();
        direct_sum(self.small.group(), self.field(), &refs)
    }

    /// ⊕ g̃M over the transversal.
    pub fn orbit_module(&self, m: &Rep) -> Result<Rep> {
        self.sum(&self.conjugates(m)?)
    }

    /// ⊕ g̃M over coset reps of G in the given overgroup.
    pub fn orbit_over(&self, m: &Rep, reps: &[Perm]) -> Result<Rep> {
        let parts = reps.iter().map(|t| conjugate_rep(m, t)).collect::<Result<Vec<_>>>()?;
        self.sum(&parts)
    }

    /// M ≅ g̃M for every transversal rep; inner conjugates are always
    /// isomorphic, so the reps suffice.
    pub fn is_invariant(&self, m: &Rep) -> Result<bool> {
        for c in self.conjugates(m)?.iter().skip(1) {
            if isomorphism(c, m, self.budget())?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Res Ind M ≅ ⊕ g̃M.
    pub fn mackey_check(&self, m: &Rep) -> Result<bool> {
        let res = restrict(&self.induce(m)?, self.small.group())?;
        Ok(isomorphism(&res, &self.orbit_module(m)?, self.budget())?.is_some())
    }

    /// Ind M is support τ-tilting ⇔ M is τ-rigid and its orbit sum is
    /// support τ-tilting.
    pub fn check_theorem1(&self, m: &Rep) -> Result<TheoremVerdict> {
        let induced = self.big.is_stt(&self.induce(m)?, &Scope::All)?;
        let rigid = self.small.is_tau_rigid(m)?;
        let orbit = self.small.is_stt(&self.orbit_module(m)?, &Scope::All)?;
        let lhs = induced.stt;
        let rhs = rigid && orbit.stt;
        Ok(TheoremVerdict {
            lhs,
            rhs,
            agree: lhs == rhs,
            induced,
            rigid,
            orbit,
        })
    }

    /// Inertial group, coset reps and Fong–Reynolds correspondent for a
    /// covering pair of blocks.
    pub fn block_pair(&self, small_block: usize, big_block: usize) -> Result<BlockPair> {
        let (g, gg) = (self.small.group(), self.big.group());
        let b = self.small_blocks.get(small_block).ok_or(Error::OutsideBlock)?;
        let bb = self.big_blocks.get(big_block).ok_or(Error::OutsideBlock)?;
        let covering = covering_blocks(b, g, gg, &self.big_blocks, self.field())?;
        if !covering.contains(&big_block) {
            return Err(Error::NotCovering);
        }
        let inertial = Arc::new(inertial_group(b, g, gg)?);
        let inertial_reps: Vec<Perm> = self
            .transversal
            .reps()
            .iter()
            .filter(|t| inertial.contains(t))
            .cloned()
            .collect();
        let ialg = GroupAlgebra::new(inertial.clone(), self.field(), *self.budget())?;
        let inertial_blocks = blocks(&ialg)?;
        let beta = fong_reynolds_block(b, g, bb, gg, &inertial, &inertial_blocks, self.field())?;
        Ok(BlockPair {
            small_block,
            big_block,
            inertial,
            inertial_reps,
            inertial_blocks,
            beta,
        })
    }

    /// B̃ Ind M is support τ-tilting over B̃ ⇔ M is τ-rigid and
    /// ⊕_{[I/G]} g̃M is support τ-tilting over B.
    pub fn check_theorem2(&self, m: &Rep, bp: &BlockPair) -> Result<TheoremVerdict> {
        let b = &self.small_blocks[bp.small_block];
        let bb = &self.big_blocks[bp.big_block];
        if m.dim() > 0 && block_of_module(m, &self.small_blocks)? != bp.small_block {
            return Err(Error::OutsideBlock);
        }
        let (cut, _) = block_cut_induce(m, self.big.group(), &self.transversal, bb)?;
        let induced = self.big.is_stt(&cut, &Scope::Block(bb.simple_labels.clone()))?;
        let rigid = self.small.is_tau_rigid(m)?;
        let orbit_module = self.orbit_over(m, &bp.inertial_reps)?;
        let orbit = self.small.is_stt(&orbit_module, &Scope::Block(b.simple_labels.clone()))?;
        let lhs = induced.stt;
        let rhs = rigid && orbit.stt;
        Ok(TheoremVerdict {
            lhs,
            rhs,
            agree: lhs == rhs,
            induced,
            rigid,
            orbit,
        })
    }

    /// Membership flags; the tilting set lies inside the rigid set, so a
    /// violation is reported as an error.
    pub fn remark_classify(&self, m: &Rep, bp: Option<&BlockPair>) -> Result<RemarkFlags> {
        let own = self.small.is_stt(m, &Scope::All)?;
        let orbit = self.small.is_stt(&self.orbit_module(m)?, &Scope::All)?;
        let in_rig_group = own.rigid && orbit.stt;
        let in_sta_group = own.stt && orbit.stt;
        let (in_rig_block, in_sta_block) = match bp {
            None => (None, None),
            Some(bp) => {
                let labels = self.small_blocks[bp.small_block].simple_labels.clone();
                let own_b = self.small.is_stt(m, &Scope::Block(labels.clone()))?;
                let orbit_b = self
                    .small
                    .is_stt(&self.orbit_over(m, &bp.inertial_reps)?, &Scope::Block(labels))?;
                (Some(own_b.rigid && orbit_b.stt), Some(own_b.stt && orbit_b.stt))
            }
        };
        if (in_sta_group && !in_rig_group) || (in_sta_block == Some(true) && in_rig_block != Some(true)) {
            return Err(Error::Internal("a tilting orbit-set member is missing from the rigid set".into()));
        }
        Ok(RemarkFlags {
            in_rig_group,
            in_sta_group,
            in_rig_block,
            in_sta_block,
        })
    }

    /// The non-split extension with top `top` and radical `bottom` given by
    /// the first Ext¹ cocycle; unique when dim Ext¹(top, bottom) = 1.
    pub fn stacked(&self, top: &Rep, bottom: &Rep) -> Result<Rep> {
        stacked(&self.small, top, bottom)
    }
}

/// The non-split extension of `top` by `bottom` from the first Ext¹ cocycle.
pub fn stacked(alg: &GroupAlgebra, top: &Rep, bottom: &Rep) -> Result<Rep> {
    let e = alg.ext1(top, bottom)?;
    let cocycle = e.cocycles.first().ok_or(Error::SplitExtension)?;
    ext_module(&e.syzygy.cover.module, &e.syzygy.module, &e.syzygy.inclusion, bottom, cocycle)
}

#[cfg(test)]
mod tests;
