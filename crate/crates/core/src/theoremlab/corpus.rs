//! A finite, deterministic corpus of modules over a normal pair, evaluated
//! through per-class data.  Every module in the corpus is a sum of distinct
//! indecomposable classes; induction, τ, supports, conjugation and the
//! Hom(X, τY) test are all additive, so the verdicts for a sum are read off
//! tables computed once per class.

use std::collections::BTreeSet;

use super::{BlockPair, GroupPair};
use crate::blockdec::block_of_module;
use crate::error::Result;
use crate::grouprep::{conjugate_rep, direct_sum, hom_space, restrict, Rep};
use crate::meataxe::{decompose, indecomposable_iso, isomorphism};
use crate::taucalc::{GroupAlgebra, TauMethod};

/// One indecomposable isomorphism class with its cached data.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub module: Rep,
    /// Where the class was first met, e.g. `Ω2(S2)` or `t1·[S1/S2]`.
    pub origin: String,
    /// Simple labels i with Hom(Pᵢ, X) ≠ 0.
    pub support: Vec<usize>,
    pub tau: Rep,
    pub block: usize,
}

/// Verdicts for one corpus member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusVerdicts {
    pub classes: Vec<usize>,
    pub thm1_lhs: bool,
    pub thm1_rhs: bool,
    pub invariant: bool,
    pub rigid: bool,
    pub stt: bool,
    pub orbit_stt: bool,
    /// Ind M and Ind(orbit sum) have the same summand classes; only
    /// evaluated when M is τ-rigid with support τ-tilting orbit sum.
    pub ind_matches_orbit: Option<bool>,
}

impl CorpusVerdicts {
    pub fn agree(&self) -> bool {
        self.thm1_lhs == self.thm1_rhs
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub small: Vec<ClassInfo>,
    pub big: Vec<ClassInfo>,
    /// `conj[r][i]`: the class of the conjugate of small class i by the r-th
    /// transversal rep.
    pub conj: Vec<Vec<usize>>,
    /// Big classes occurring in Ind of each small class.
    pub induced: Vec<Vec<usize>>,
    small_hom_tau: Vec<Vec<bool>>,
    big_hom_tau: Vec<Vec<bool>>,
    /// Sorted class lists: the zero module and every sum of at most
    /// `max_terms` distinct small classes.
    pub members: Vec<Vec<usize>>,
    small_simples: usize,
    big_simples: usize,
}

fn find(classes: &[ClassInfo], m: &Rep) -> Result<Option<usize>> {
    for (i, c) in classes.iter().enumerate() {
        if c.module.dim() == m.dim() && indecomposable_iso(&c.module, m)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn class_info(alg: &GroupAlgebra, blocks: &[crate::blockdec::Block], module: Rep, origin: String) -> Result<ClassInfo> {
    let support = alg
        .hom_from_pims(&module)?
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect();
    let tau = alg.tau(&module, TauMethod::Omega2)?;
    let block = block_of_module(&module, blocks)?;
    Ok(ClassInfo {
        module,
        origin,
        support,
        tau,
        block,
    })
}

/// Decompose `m` and file its summands, returning their class indices.
fn register(
    alg: &GroupAlgebra,
    blocks: &[crate::blockdec::Block],
    classes: &mut Vec<ClassInfo>,
    m: &Rep,
    origin: &str,
) -> Result<Vec<usize>> {
    let d = decompose(m, alg.budget())?;
    let several = d.summands.len() > 1 || d.summands.first().is_some_and(|(_, k)| *k > 1);
    let mut out = Vec::new();
    for (j, (x, _)) in d.summands.iter().enumerate() {
        let idx = match find(classes, x)? {
            Some(i) => i,
            None => {
                let name = if several { format!("{origin}#{}", j + 1) } else { origin.to_string() };
                classes.push(class_info(alg, blocks, x.clone(), name)?);
                classes.len() - 1
            }
        };
        out.push(idx);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn hom_tau_table(classes: &[ClassInfo]) -> Result<Vec<Vec<bool>>> {
    classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| Ok(hom_space(&a.module, &b.tau)?.dim() > 0))
                .collect()
        })
        .collect()
}

fn union<'a>(sets: impl IntoIterator<Item = &'a [usize]>) -> Vec<usize> {
    let s: BTreeSet<usize> = sets.into_iter().flatten().copied().collect();
    s.into_iter().collect()
}

fn subsets(n: usize, max_terms: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_terms {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |x| x + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl Corpus {
    /// Seeds: simples, PIMs, Ω and Ω² of the simples, and every extension of
    /// simples given by an Ext¹ basis cocycle; closed under conjugation.
    pub fn build(pair: &GroupPair, max_terms: usize) -> Result<Corpus> {
        let alg = &pair.small;
        let sb = &pair.small_blocks;
        let table = alg.simples();
        let n = table.len();
        let mut small: Vec<ClassInfo> = Vec::new();
        for i in 0..n {
            register(alg, sb, &mut small, table.simple(i), &table.label(i))?;
        }
        for i in 0..n {
            register(alg, sb, &mut small, alg.pim(i), &format!("P{}", i + 1))?;
        }
        for i in 0..n {
            let o1 = alg.syzygy(table.simple(i))?.module;
            let o2 = alg.syzygy(&o1)?.module;
            register(alg, sb, &mut small, &o1, &format!("Ω({})", table.label(i)))?;
            register(alg, sb, &mut small, &o2, &format!("Ω2({})", table.label(i)))?;
        }
        for i in 0..n {
            for j in 0..n {
                let (top, bottom) = (table.simple(i), table.simple(j));
                let e = alg.ext1(top, bottom)?;
                for (c, cocycle) in e.cocycles.iter().enumerate() {
                    let m = crate::grouprep::ext_module(
                        &e.syzygy.cover.module,
                        &e.syzygy.module,
                        &e.syzygy.inclusion,
                        bottom,
                        cocycle,
                    )?;
                    let tag = if e.dim > 1 { format!("~{}", c + 1) } else { String::new() };
                    register(alg, sb, &mut small, &m, &format!("[{}/{}]{tag}", table.label(i), table.label(j)))?;
                }
            }
        }
        // closure under conjugation; conjugates of indecomposables are indecomposable
        let reps = pair.transversal.reps();
        let mut conj_cols: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < small.len() {
            let mut col = Vec::with_capacity(reps.len());
            for (r, t) in reps.iter().enumerate() {
                let c = conjugate_rep(&small[i].module, t)?;
                let idx = match find(&small, &c)? {
                    Some(j) => j,
                    None => {
                        let origin = format!("t{r}·{}", small[i].origin);
                        small.push(class_info(alg, sb, c, origin)?);
                        small.len() - 1
                    }
                };
                col.push(idx);
            }
            conj_cols.push(col);
            i += 1;
        }
        let conj: Vec<Vec<usize>> = (0..reps.len())
            .map(|r| conj_cols.iter().map(|col| col[r]).collect())
            .collect();

        let mut big: Vec<ClassInfo> = Vec::new();
        let mut induced = Vec::with_capacity(small.len());
        for c in &small {
            let ind = pair.induce(&c.module)?;
            induced.push(register(&pair.big, &pair.big_blocks, &mut big, &ind, &format!("Ind {}", c.origin))?);
        }
        let small_hom_tau = hom_tau_table(&small)?;
        let big_hom_tau = hom_tau_table(&big)?;
        let members = subsets(small.len(), max_terms);
        Ok(Corpus {
            small,
            big,
            conj,
            induced,
            small_hom_tau,
            big_hom_tau,
            members,
            small_simples: n,
            big_simples: pair.big.simple_count(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The direct sum of the classes of a member.
    pub fn module(&self, pair: &GroupPair, classes: &[usize]) -> Result<Rep> {
        let parts: Vec<&Rep> = classes.iter().map(|&i| &self.small[i].module).collect();
        direct_sum(pair.small.group(), pair.field(), &parts)
    }

    /// A readable name such as `S1 ⊕ [S1/S2]`.
    pub fn describe(&self, classes: &[usize]) -> String {
        if classes.is_empty() {
            return "0".into();
        }
        classes
            .iter()
            .map(|&i| self.small[i].origin.as_str())
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    fn rigid(table: &[Vec<bool>], c: &[usize]) -> bool {
        c.iter().all(|&i| c.iter().all(|&j| !table[i][j]))
    }

    fn stt(classes: &[ClassInfo], table: &[Vec<bool>], c: &[usize], scope: &[usize]) -> bool {
        if !Self::rigid(table, c) {
            return false;
        }
        let support = union(c.iter().map(|&i| classes[i].support.as_slice()));
        let z = scope.iter().filter(|l| support.binary_search(l).is_err()).count();
        c.len() + z == scope.len()
    }

    fn small_stt(&self, c: &[usize], scope: &[usize]) -> bool {
        Self::stt(&self.small, &self.small_hom_tau, c, scope)
    }

    fn big_stt(&self, c: &[usize], scope: &[usize]) -> bool {
        Self::stt(&self.big, &self.big_hom_tau, c, scope)
    }

    /// Classes of ⊕ over the chosen transversal reps of the conjugates.
    pub fn orbit_classes(&self, c: &[usize], reps: &[usize]) -> Vec<usize> {
        let s: BTreeSet<usize> = reps.iter().flat_map(|&r| c.iter().map(move |&i| self.conj[r][i])).collect();
        s.into_iter().collect()
    }

    pub fn induced_classes(&self, c: &[usize]) -> Vec<usize> {
        union(c.iter().map(|&i| self.induced[i].as_slice()))
    }

    pub fn verdicts(&self, c: &[usize]) -> CorpusVerdicts {
        let all_small: Vec<usize> = (0..self.small_simples).collect();
        let all_big: Vec<usize> = (0..self.big_simples).collect();
        let all_reps: Vec<usize> = (0..self.conj.len()).collect();
        let orbit = self.orbit_classes(c, &all_reps);
        let induced = self.induced_classes(c);
        let rigid = Self::rigid(&self.small_hom_tau, c);
        let stt = self.small_stt(c, &all_small);
        let orbit_stt = self.small_stt(&orbit, &all_small);
        let thm1_lhs = self.big_stt(&induced, &all_big);
        let ind_matches_orbit = (rigid && orbit_stt).then(|| induced == self.induced_classes(&orbit));
        CorpusVerdicts {
            classes: c.to_vec(),
            thm1_lhs,
            thm1_rhs: rigid && orbit_stt,
            invariant: orbit == c,
            rigid,
            stt,
            orbit_stt,
            ind_matches_orbit,
        }
    }

    /// Whether every class of the member lies in the block.
    pub fn in_block(&self, c: &[usize], block: usize) -> bool {
        c.iter().all(|&i| self.small[i].block == block)
    }

    /// (lhs, rhs) of the block-wise criterion for a member of the block.
    pub fn theorem2(&self, pair: &GroupPair, c: &[usize], bp: &BlockPair) -> (bool, bool) {
        let small_scope = &pair.small_blocks[bp.small_block].simple_labels;
        let big_scope = &pair.big_blocks[bp.big_block].simple_labels;
        let reps: Vec<usize> = pair
            .transversal
            .reps()
            .iter()
            .enumerate()
            .filter(|(_, t)| bp.inertial.contains(t))
            .map(|(r, _)| r)
            .collect();
        let cut: Vec<usize> = self
            .induced_classes(c)
            .into_iter()
            .filter(|&a| self.big[a].block == bp.big_block)
            .collect();
        let lhs = self.big_stt(&cut, big_scope);
        let rhs = Self::rigid(&self.small_hom_tau, c) && self.small_stt(&self.orbit_classes(c, &reps), small_scope);
        (lhs, rhs)
    }

    /// Runs `f` on every member across the available cores; results keep
    /// member order and the first error wins.
    pub fn sweep<T: Send>(&self, f: impl Fn(&[usize]) -> Result<T> + Sync) -> Result<Vec<T>> {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(self.members.len().max(1));
        let f = &f;
        let parts: Vec<Vec<(usize, Result<T>)>> = std::thread::scope(|sc| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    sc.spawn(move || {
                        (t..self.members.len())
                            .step_by(threads)
                            .map(|i| (i, f(&self.members[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
        });
        let mut slots: Vec<Option<Result<T>>> = (0..self.members.len()).map(|_| None).collect();
        for (i, r) in parts.into_iter().flatten() {
            slots[i] = Some(r);
        }
        slots.into_iter().map(|r| r.expect("every member visited")).collect()
    }

    /// Per-class homological checks; by additivity they cover every member.
    pub fn class_checks(&self, pair: &GroupPair) -> Result<ClassChecks> {
        let mut out = ClassChecks::default();
        for (alg, classes) in [(&pair.small, &self.small), (&pair.big, &self.big)] {
            for c in classes {
                let dtr = alg.tau(&c.module, TauMethod::DTr)?;
                if isomorphism(&c.tau, &dtr, alg.budget())?.is_none() {
                    out.tau_mismatch.push(c.origin.clone());
                }
                if alg.hom_from_pims(&c.module)? != alg.simples().chop(&c.module, alg.budget())? {
                    out.hom_pim_mismatch.push(c.origin.clone());
                }
                out.checked += 1;
            }
        }
        for c in &self.small {
            let res = restrict(&pair.induce(&c.module)?, pair.small.group())?;
            if isomorphism(&res, &pair.orbit_module(&c.module)?, pair.budget())?.is_none() {
                out.mackey_mismatch.push(c.origin.clone());
            }
        }
        Ok(out)
    }
}

/// Origins of classes failing a per-class check.
#[derive(Clone, Debug, Default)]
pub struct ClassChecks {
    pub checked: usize,
    pub tau_mismatch: Vec<String>,
    pub hom_pim_mismatch: Vec<String>,
    pub mackey_mismatch: Vec<String>,
}

impl ClassChecks {
    pub fn ok(&self) -> bool {
        self.tau_mismatch.is_empty() && self.hom_pim_mismatch.is_empty() && self.mackey_mismatch.is_empty()
    }
}
