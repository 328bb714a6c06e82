//! Blocks of group algebras: central primitive idempotents, covering,
//! inertial groups and Fong–Reynolds correspondents.
//!
//! Group-algebra elements are coefficient vectors over a group's element
//! list.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix, Scalar};
use crate::grouprep::{induce, Budget, Rep};
use crate::meataxe::algebra_radical;
use crate::permgroup::{Group, Transversal};
use crate::taucalc::GroupAlgebra;

/// A block of kG, given by its central primitive idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub idempotent: Vec<Scalar>,
    /// Labels of the simple modules on which the idempotent is the identity.
    pub simple_labels: Vec<usize>,
}

impl Block {
    pub fn is_principal(&self) -> bool {
        self.simple_labels.contains(&0)
    }
}

/// Product in kG.
pub fn alg_mul(group: &Group, field: Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::ZERO; group.order()];
    for (x, &ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, &by) in b.iter().enumerate() {
            if !by.is_zero() {
                let z = group.mul_index(x, y);
                out[z] = field.add(out[z], field.mul(ax, by));
            }
        }
    }
    out
}

/// The image of an element of k·small in k·big.
pub fn embed(small: &Group, big: &Group, a: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::ZERO; big.order()];
    for (x, &c) in a.iter().enumerate() {
        let i = big.index_of(small.element(x)).ok_or(Error::ForeignElement)?;
        out[i] = c;
    }
    Ok(out)
}

/// x a x⁻¹ for an element `a` of kG and a permutation `x` normalising G.
pub fn alg_conjugate(group: &Group, x: &crate::permgroup::Perm, a: &[Scalar]) -> Result<Vec<Scalar>> {
    let xi = x.inverse();
    let mut out = vec![Scalar::ZERO; group.order()];
    for (g, &c) in a.iter().enumerate() {
        let y = x.compose(group.element(g)).compose(&xi);
        let i = group.index_of(&y).ok_or_else(|| Error::NotNormal("conjugate leaves the group".into()))?;
        out[i] = c;
    }
    Ok(out)
}

fn require_normal(small: &Group, big: &Group) -> Result<()> {
    if !big.has_subgroup(small) {
        return Err(Error::NotSubgroup("not a subgroup of the larger group".into()));
    }
    if !big.generators().iter().all(|g| small.is_normalized_by(g)) {
        return Err(Error::NotNormal("subgroup is not normal".into()));
    }
    Ok(())
}

/// The centre Z(kG) in the class-sum basis.
struct Centre {
    classes: Vec<Vec<usize>>,
    /// consts[i][j]: coordinates of cᵢ cⱼ.
    consts: Vec<Vec<Vec<Scalar>>>,
    field: Field,
}

impl Centre {
    fn new(group: &Group, field: Field) -> Centre {
        let classes = group.classes();
        let r = classes.len();
        let mut class_of = vec![0; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let mut consts = vec![vec![vec![Scalar::ZERO; r]; r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut prod = vec![Scalar::ZERO; group.order()];
                for &x in &classes[i] {
                    for &y in &classes[j] {
                        let z = group.mul_index(x, y);
                        prod[z] = field.add(prod[z], Scalar::ONE);
                    }
                }
                // a central element is constant on classes; read one entry each
                consts[i][j] = classes.iter().map(|c| prod[c[0]]).collect();
            }
        }
        Centre { classes, consts, field }
    }

    fn dim(&self) -> usize {
        self.classes.len()
    }

    fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![Scalar::ZERO; self.dim()];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    f.axpy(&mut out, f.mul(ai, bj), &self.consts[i][j]);
                }
            }
        }
        out
    }

    fn expand(&self, order: usize, z: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; order];
        for (c, &zi) in self.classes.iter().zip(z) {
            for &x in c {
                out[x] = zi;
            }
        }
        out
    }

    /// Multiplication by `v` on the ideal spanned by the columns of `ideal`,
    /// in that basis.
    fn operator(&self, ideal: &Matrix, v: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..ideal.cols()).map(|k| self.mul(v, &ideal.column(k))).collect();
        let images = Matrix::from_columns(self.field, self.dim(), &cols);
        ideal
            .linsolve(&images)
            .expect("shapes agree")
            .particular
            .expect("ideal is closed under multiplication")
    }
}

enum IdealSplit {
    Local,
    Split(Matrix, Matrix),
}

fn split_ideal(centre: &Centre, ideal: &Matrix, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<IdealSplit> {
    let d = ideal.cols();
    if d == 1 {
        return Ok(IdealSplit::Local);
    }
    let ops: Vec<Matrix> = (0..d).map(|k| centre.operator(ideal, &ideal.column(k))).collect();
    let rad = algebra_radical(&ops, budget)?;
    let top = d - rad.len();
    if top == 1 {
        return Ok(IdealSplit::Local);
    }
    let mut candidates = ops.clone();
    for _ in 0..budget.trials {
        let mut x = Matrix::zeros(centre.field, d, d);
        for op in &ops {
            x.add_scaled(centre.field.random(rng), op);
        }
        candidates.push(x);
    }
    for theta in candidates {
        let mp = theta.minpoly()?;
        let factors = mp.factor();
        if factors.len() > 1 {
            let head = factors[0].0.pow(factors[0].1);
            let (rest, _) = mp.divrem(&head);
            let u1 = ideal * &theta.eval_poly(&head).nullspace();
            let u2 = ideal * &theta.eval_poly(&rest).nullspace();
            return Ok(IdealSplit::Split(u1, u2));
        }
        if factors[0].0.degree() == Some(top) {
            return Ok(IdealSplit::Local);
        }
    }
    Err(Error::Inconclusive("central idempotent search exhausted its budget".into()))
}

/// Central primitive idempotents of kG and the simple modules they own.
/// The principal block comes first; the others are ordered by their least
/// simple label.
pub fn blocks(alg: &GroupAlgebra) -> Result<Vec<Block>> {
    let group = alg.group();
    let f = alg.field();
    let centre = Centre::new(group, f);
    let r = centre.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(alg.budget().seed);
    let mut one = vec![Scalar::ZERO; r];
    one[0] = Scalar::ONE; // the class of the identity comes first
    let mut todo = vec![(Matrix::identity(f, r), one)];
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    while let Some((ideal, e)) = todo.pop() {
        match split_ideal(&centre, &ideal, alg.budget(), &mut rng)? {
            IdealSplit::Local => found.push(e),
            IdealSplit::Split(u1, u2) => {
                // e = e₁ + e₂ with eᵢ the identity of the ideal spanned by uᵢ
                let both = Matrix::hstack(f, r, &[&u1, &u2]);
                let rhs = Matrix::from_columns(f, r, std::slice::from_ref(&e));
                let c = both
                    .linsolve(&rhs)?
                    .particular
                    .ok_or_else(|| Error::Internal("idempotent outside its ideal".into()))?
                    .column(0);
                let (c1, c2) = c.split_at(u1.cols());
                let e1 = u1.mul_vec(c1);
                let e2 = u2.mul_vec(c2);
                todo.push((u2, e2));
                todo.push((u1, e1));
            }
        }
    }
    let mut out = Vec::with_capacity(found.len());
    for z in found {
        let idempotent = centre.expand(group.order(), &z);
        let mut simple_labels = Vec::new();
        for (i, s) in alg.simples().simples().iter().enumerate() {
            let a = s.act_algebra(&idempotent);
            if a.is_identity() {
                simple_labels.push(i);
            } else if !a.is_zero() {
                return Err(Error::Internal("block idempotent splits a simple module".into()));
            }
        }
        out.push(Block {
            idempotent,
            simple_labels,
        });
    }
    out.sort_by_key(|b| b.simple_labels.first().copied().unwrap_or(usize::MAX));
    Ok(out)
}

/// Exact check that the idempotents are central, idempotent, pairwise
/// orthogonal and sum to 1.
pub fn verify_idempotents(group: &Group, field: Field, blocks: &[Block]) -> bool {
    let n = group.order();
    let mut total = vec![Scalar::ZERO; n];
    for (i, b) in blocks.iter().enumerate() {
        let e = &b.idempotent;
        if e.len() != n || alg_mul(group, field, e, e) != *e {
            return false;
        }
        for (j, c) in blocks.iter().enumerate() {
            if i != j && alg_mul(group, field, e, &c.idempotent).iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
        for gi in 0..group.generators().len() {
            let mut x = vec![Scalar::ZERO; n];
            x[group.generator_index(gi)] = Scalar::ONE;
            if alg_mul(group, field, &x, e) != alg_mul(group, field, e, &x) {
                return false;
            }
        }
        for (t, v) in total.iter_mut().zip(e) {
            *t = field.add(*t, *v);
        }
    }
    let mut one = vec![Scalar::ZERO; n];
    one[0] = Scalar::ONE;
    total == one
}

/// Index of the block containing `m`.  The zero module is assigned to the
/// principal block.
pub fn block_of_module(m: &Rep, blocks: &[Block]) -> Result<usize> {
    if m.dim() == 0 {
        return Ok(0);
    }
    for (i, b) in blocks.iter().enumerate() {
        let a = m.act_algebra(&b.idempotent);
        if a.is_identity() {
            return Ok(i);
        }
        if !a.is_zero() {
            return Err(Error::MixedBlock);
        }
    }
    Err(Error::Internal("no block idempotent acts on the module".into()))
}

/// Blocks of k·big covering `b`: those whose idempotent has nonzero product
/// with 1_b.
pub fn covering_blocks(b: &Block, small: &Group, big: &Group, big_blocks: &[Block], field: Field) -> Result<Vec<usize>> {
    require_normal(small, big)?;
    let e = embed(small, big, &b.idempotent)?;
    Ok(big_blocks
        .iter()
        .enumerate()
        .filter(|(_, bb)| alg_mul(big, field, &bb.idempotent, &e).iter().any(|c| !c.is_zero()))
        .map(|(i, _)| i)
        .collect())
}

/// The stabiliser of 1_b under conjugation by `big`.
pub fn inertial_group(b: &Block, small: &Group, big: &Group) -> Result<Group> {
    require_normal(small, big)?;
    let t = Transversal::new(big, small)?;
    let mut gens = small.generators().to_vec();
    for x in t.reps().iter().skip(1) {
        if alg_conjugate(small, x, &b.idempotent)? == b.idempotent {
            gens.push(x.clone());
        }
    }
    big.subgroup(gens)
}

/// The block β of k·I covering `b` with 1_{big_block} = Σ x 1_β x⁻¹ over
/// x ∈ [big/I], where I is the inertial group of `b`.
pub fn fong_reynolds_block(
    b: &Block,
    small: &Group,
    big_block: &Block,
    big: &Group,
    inertial: &Group,
    inertial_blocks: &[Block],
    field: Field,
) -> Result<usize> {
    let covering = covering_blocks(b, small, big, std::slice::from_ref(big_block), field)?;
    if covering.is_empty() {
        return Err(Error::NotCovering);
    }
    let t = Transversal::new(big, inertial)?;
    let candidates = covering_blocks(b, small, inertial, inertial_blocks, field)?;
    for i in candidates {
        let beta = embed(inertial, big, &inertial_blocks[i].idempotent)?;
        let mut sum = vec![Scalar::ZERO; big.order()];
        for x in t.reps() {
            let c = alg_conjugate(big, x, &beta)?;
            for (s, v) in sum.iter_mut().zip(c) {
                *s = field.add(*s, v);
            }
        }
        if sum == big_block.idempotent {
            return Ok(i);
        }
    }
    Err(Error::Internal("no Fong–Reynolds correspondent satisfies the idempotent identity".into()))
}

/// 1_{big_block} · Ind M as a submodule of Ind M, with its basis.
pub fn block_cut_induce(m: &Rep, big: &Arc<Group>, t: &Transversal, big_block: &Block) -> Result<(Rep, Matrix)> {
    let ind = induce(m, big, t)?;
    let e = ind.act_algebra(&big_block.idempotent);
    ind.image_of(&e)
}
