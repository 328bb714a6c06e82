//! Projective covers, syzygies, the Auslander–Reiten translate, Ext¹ and
//! the support τ-tilting test for group algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix, Scalar};
use crate::grouprep::{direct_sum, hom_space, in_span, Budget, Rep};
use crate::meataxe::{decompose, radical_top, simples_of, SimpleTable};
use crate::permgroup::Group;

/// The projective indecomposable modules, aligned with the simple labels.
#[derive(Clone, Debug)]
pub struct PimTable {
    pub pims: Vec<Rep>,
    /// Surjections Pᵢ -> Sᵢ.
    pub cover_maps: Vec<Matrix>,
}

/// A minimal projective cover `surjection: module -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: Rep,
    pub surjection: Matrix,
    /// Simple labels of the PIM summands, in block order.
    pub tops: Vec<usize>,
}

/// Ω(M) with its inclusion into the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: Rep,
    pub inclusion: Matrix,
    pub cover: ProjectiveCover,
}

/// Ext¹(M, N) as Hom(ΩM, N) modulo maps that extend over the cover.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Cocycles ΩM -> N representing a basis of Ext¹.
    pub cocycles: Vec<Matrix>,
    pub syzygy: Syzygy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauMethod {
    Omega2,
    DTr,
}

/// Which simple modules count towards n in the support τ-tilting test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    /// The simple labels of a block; the module must lie in that block.
    Block(Vec<usize>),
}

/// The data behind a support τ-tilting verdict.
#[derive(Clone, Debug)]
pub struct SttCertificate {
    pub module: Rep,
    pub tau: Rep,
    /// Pairwise non-isomorphic indecomposable summands (m).
    pub summand_classes: usize,
    /// Labels in scope with Hom(Pᵢ, M) = 0.
    pub cosupport: Vec<usize>,
    /// Simple modules in scope (n).
    pub scope_size: usize,
    /// dim Hom(M, τM).
    pub hom_to_tau: usize,
    pub rigid: bool,
    pub stt: bool,
}

/// A group algebra kG with its simple and projective indecomposable modules.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<Group>,
    field: Field,
    budget: Budget,
    simples: SimpleTable,
    pims: PimTable,
}

impl GroupAlgebra {
    pub fn new(group: Arc<Group>, field: Field, budget: Budget) -> Result<GroupAlgebra> {
        let simples = simples_of(&group, field, &budget)?;
        let pims = pims(&simples, &budget)?;
        Ok(GroupAlgebra {
            group,
            field,
            budget,
            simples,
            pims,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn simples(&self) -> &SimpleTable {
        &self.simples
    }

    pub fn pims(&self) -> &PimTable {
        &self.pims
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    /// dim Hom(Pᵢ, M) for every label i.
    pub fn hom_from_pims(&self, m: &Rep) -> Result<Vec<usize>> {
        self.pims.pims.iter().map(|p| Ok(hom_space(p, m)?.dim())).collect()
    }

    /// Labels i with Sᵢ a composition factor of M.
    pub fn support(&self, m: &Rep) -> Result<Vec<usize>> {
        Ok(self
            .hom_from_pims(m)?
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn projective_cover(&self, m: &Rep) -> Result<ProjectiveCover> {
        let f = self.field;
        if m.dim() == 0 {
            return Ok(ProjectiveCover {
                module: Rep::zero(self.group.clone(), f),
                surjection: Matrix::zeros(f, 0, 0),
                tops: Vec::new(),
            });
        }
        // H: M -> ⊕ Sᵢ^{cᵢ}, the stacked maps to simples, has kernel rad M
        let mut tops = Vec::new();
        let mut maps: Vec<Matrix> = Vec::new();
        for (i, s) in self.simples.simples().iter().enumerate() {
            for h in hom_space(m, s)?.basis() {
                tops.push(i);
                maps.push(h.clone());
            }
        }
        let refs: Vec<&Matrix> = maps.iter().collect();
        let h = Matrix::vstack(f, m.dim(), &refs);
        let top_dim = h.rows();
        let mut columns: Vec<&Matrix> = Vec::new();
        let mut lifts: Vec<Matrix> = Vec::with_capacity(tops.len());
        let mut offset = 0;
        for &i in &tops {
            let p = &self.pims.pims[i];
            let eps = &self.pims.cover_maps[i];
            let si = eps.rows();
            // target: εᵢ placed in this slot of the top
            let mut target = Matrix::zeros(f, top_dim, p.dim());
            for r in 0..si {
                target.row_mut(offset + r).copy_from_slice(eps.row(r));
            }
            offset += si;
            let basis = hom_space(p, m)?;
            let cols: Vec<Vec<Scalar>> = basis.basis().iter().map(|b| (&h * b).to_vec()).collect();
            let a = Matrix::from_columns(f, top_dim * p.dim(), &cols);
            let rhs = Matrix::from_columns(f, top_dim * p.dim(), &[target.to_vec()]);
            let sol = a
                .linsolve(&rhs)?
                .particular
                .ok_or_else(|| Error::Internal("projective cover lifting system is inconsistent".into()))?;
            lifts.push(basis.combination(&sol.column(0)));
        }
        columns.extend(lifts.iter());
        let surjection = Matrix::hstack(f, m.dim(), &columns);
        let parts: Vec<&Rep> = tops.iter().map(|&i| &self.pims.pims[i]).collect();
        let module = direct_sum(&self.group, f, &parts)?;
        debug_assert!(module.is_hom_to(m, &surjection));
        if surjection.rank() != m.dim() {
            return Err(Error::Internal("projective cover map is not surjective".into()));
        }
        Ok(ProjectiveCover {
            module,
            surjection,
            tops,
        })
    }

    pub fn syzygy(&self, m: &Rep) -> Result<Syzygy> {
        let cover = self.projective_cover(m)?;
        let inclusion = cover.surjection.nullspace();
        let module = cover.module.submodule(&inclusion)?;
        Ok(Syzygy {
            module,
            inclusion,
            cover,
        })
    }

    pub fn tau(&self, m: &Rep, method: TauMethod) -> Result<Rep> {
        match method {
            TauMethod::Omega2 => {
                let first = self.syzygy(m)?.module;
                Ok(self.syzygy(&first)?.module)
            }
            TauMethod::DTr => self.tau_dtr(m),
        }
    }

    /// D Tr M from the minimal presentation P₁ -> P₀ -> M.  Hom(-, kG) turns
    /// it into right modules, which become left modules through g ↦ g⁻¹.
    fn tau_dtr(&self, m: &Rep) -> Result<Rep> {
        let f = self.field;
        let first = self.syzygy(m)?;
        let second = self.projective_cover(&first.module)?;
        let d = &first.inclusion * &second.surjection;
        let p0 = &first.cover.module;
        let p1 = &second.module;
        let reg = Rep::regular(self.group.clone(), f);
        let hom1 = hom_space(p1, &reg)?;
        let r = hom1.dim();
        if r == 0 {
            return Ok(Rep::zero(self.group.clone(), f));
        }
        let len = reg.dim() * p1.dim();
        let cols: Vec<Vec<Scalar>> = hom1.basis().iter().map(|x| x.to_vec()).collect();
        let b1 = Matrix::from_columns(f, len, &cols);
        let coords = |vecs: Vec<Vec<Scalar>>| -> Result<Matrix> {
            let rhs = Matrix::from_columns(f, len, &vecs);
            b1.linsolve(&rhs)?
                .particular
                .ok_or_else(|| Error::Internal("homomorphism outside the computed hom space".into()))
        };
        let mut gens = Vec::with_capacity(self.group.generators().len());
        for gi in 0..self.group.generators().len() {
            let g = self.group.generator_index(gi);
            let right = Rep::regular_right_mult(&self.group, f, self.group.inverse_index(g));
            gens.push(coords(hom1.basis().iter().map(|x| (&right * x).to_vec()).collect())?);
        }
        let left = Rep::with_dim(self.group.clone(), f, r, gens)?;
        let hom0 = hom_space(p0, &reg)?;
        let image = if hom0.is_empty() {
            Matrix::zeros(f, r, 0)
        } else {
            coords(hom0.basis().iter().map(|x| (x * &d).to_vec()).collect())?.column_space()
        };
        let (tr, _) = left.quotient(&image)?;
        Ok(crate::grouprep::dual_rep(&tr))
    }

    pub fn ext1(&self, m: &Rep, n: &Rep) -> Result<Ext1> {
        let syzygy = self.syzygy(m)?;
        let homs = hom_space(&syzygy.module, n)?;
        let restrictions: Vec<Matrix> = hom_space(&syzygy.cover.module, n)?
            .basis()
            .iter()
            .map(|psi| psi * &syzygy.inclusion)
            .collect();
        let mut spanning = restrictions.clone();
        let mut cocycles = Vec::new();
        for x in homs.basis() {
            if spanning.is_empty() || !in_span(&spanning, x) {
                spanning.push(x.clone());
                cocycles.push(x.clone());
            }
        }
        Ok(Ext1 {
            dim: cocycles.len(),
            cocycles,
            syzygy,
        })
    }

    /// dim Hom(M, τM) = 0.
    pub fn is_tau_rigid(&self, m: &Rep) -> Result<bool> {
        let tau = self.tau(m, TauMethod::Omega2)?;
        Ok(hom_space(m, &tau)?.is_empty())
    }

    pub fn is_stt(&self, m: &Rep, scope: &Scope) -> Result<SttCertificate> {
        let support = self.support(m)?;
        let labels: Vec<usize> = match scope {
            Scope::All => (0..self.simple_count()).collect(),
            Scope::Block(l) => {
                if support.iter().any(|i| !l.contains(i)) {
                    return Err(Error::OutsideBlock);
                }
                l.clone()
            }
        };
        let tau = self.tau(m, TauMethod::Omega2)?;
        let hom_to_tau = hom_space(m, &tau)?.dim();
        let summand_classes = if m.dim() == 0 {
            0
        } else {
            decompose(m, &self.budget)?.class_count()
        };
        let cosupport: Vec<usize> = labels.iter().copied().filter(|i| !support.contains(i)).collect();
        let rigid = hom_to_tau == 0;
        let stt = rigid && summand_classes + cosupport.len() == labels.len();
        Ok(SttCertificate {
            module: m.clone(),
            tau,
            summand_classes,
            cosupport,
            scope_size: labels.len(),
            hom_to_tau,
            rigid,
            stt,
        })
    }

    /// The projective indecomposable module Pᵢ.
    pub fn pim(&self, i: usize) -> &Rep {
        &self.pims.pims[i]
    }

    /// The module top(M).
    pub fn top(&self, m: &Rep) -> Result<Rep> {
        Ok(radical_top(m, &self.simples)?.top)
    }
}

/// The PIMs: the indecomposable summands of the regular module, matched to
/// their simple tops.
pub fn pims(simples: &SimpleTable, budget: &Budget) -> Result<PimTable> {
    let reg = Rep::regular(simples.group().clone(), simples.field());
    let d = decompose(&reg, budget)?;
    let mut slots: Vec<Option<(Rep, Matrix)>> = vec![None; simples.len()];
    for (p, mult) in &d.summands {
        let mut label = None;
        for (i, s) in simples.simples().iter().enumerate() {
            let h = hom_space(p, s)?;
            if !h.is_empty() {
                if label.is_some() || h.dim() != 1 {
                    return Err(Error::Internal("projective summand without a simple top".into()));
                }
                label = Some((i, h.basis()[0].clone()));
            }
        }
        let (i, eps) = label.ok_or_else(|| Error::Internal("projective summand with zero top".into()))?;
        if *mult != simples.simple(i).dim() || slots[i].is_some() {
            return Err(Error::Internal("regular module has unexpected PIM multiplicities".into()));
        }
        slots[i] = Some((p.clone(), eps));
    }
    let mut pims = Vec::with_capacity(slots.len());
    let mut cover_maps = Vec::with_capacity(slots.len());
    for s in slots {
        let (p, e) = s.ok_or_else(|| Error::Internal("a simple module has no projective cover".into()))?;
        pims.push(p);
        cover_maps.push(e);
    }
    Ok(PimTable { pims, cover_maps })
}
