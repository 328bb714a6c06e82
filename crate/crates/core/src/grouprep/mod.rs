//! kG-modules as matrix representations and the functors between them.

mod hom;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix, Scalar};
use crate::permgroup::{Group, Perm, Transversal};

pub use hom::{hom_space, is_isomorphic, HomBasis};

/// Knobs for every randomised routine.  Identical budgets give identical
/// results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub seed: u64,
    /// Random algebra elements tried before giving up.
    pub trials: usize,
    /// Maximum word length when forming random algebra elements.
    pub word_length: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            seed: 0,
            trials: 64,
            word_length: 12,
        }
    }
}

/// A left kG-module: one invertible matrix per group generator.
#[derive(Clone)]
pub struct Rep {
    group: Arc<Group>,
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
    elements: Arc<OnceLock<Vec<Matrix>>>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rep(dim {} over {:?}, group of order {})",
            self.dim,
            self.field,
            self.group.order()
        )
    }
}

impl Rep {
    /// Validated constructor: checks shapes, invertibility and that the
    /// generator images extend to a homomorphism.
    pub fn new(group: Arc<Group>, field: Field, gens: Vec<Matrix>) -> Result<Rep> {
        if gens.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        if gens.is_empty() {
            return Err(Error::DimensionMismatch(
                "dimension cannot be read from an empty generator list; use Rep::with_dim".into(),
            ));
        }
        Rep::with_dim(group, field, dim, gens)
    }

    /// Validated constructor with an explicit dimension (needed for the
    /// trivial group, which has no generators).
    pub fn with_dim(group: Arc<Group>, field: Field, dim: usize, gens: Vec<Matrix>) -> Result<Rep> {
        if gens.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for (i, m) in gens.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} has a {}x{} matrix, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field().order(), field.order()));
            }
            if !m.is_invertible() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let rep = Rep::from_parts(group, field, dim, gens);
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// Trusted constructor for matrices produced by this crate's own
    /// functors, whose well-definedness holds by construction.
    pub(crate) fn from_parts(group: Arc<Group>, field: Field, dim: usize, gens: Vec<Matrix>) -> Rep {
        Rep {
            group,
            field,
            dim,
            gens,
            elements: Arc::new(OnceLock::new()),
        }
    }

    /// rho(s) rho(x) = rho(s x) for every generator s and element x, where
    /// rho(x) is evaluated along x's recorded word.  By induction on word
    /// length this is equivalent to rho(g) rho(h) = rho(gh) for all pairs.
    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        let mats = self.element_matrices();
        for x in 0..g.order() {
            for (si, s) in g.generators().iter().enumerate() {
                let sx = g.index_of(&s.compose(g.element(x))).expect("closed");
                if &self.gens[si] * &mats[x] != mats[sx] {
                    return Err(Error::NotHomomorphism(format!(
                        "rho({s:?}) rho({:?}) != rho({:?})",
                        g.element(x),
                        g.element(sx)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(group: Arc<Group>, field: Field) -> Rep {
        let gens = vec![Matrix::zeros(field, 0, 0); group.generators().len()];
        Rep::from_parts(group, field, 0, gens)
    }

    pub fn trivial(group: Arc<Group>, field: Field) -> Rep {
        let gens = vec![Matrix::identity(field, 1); group.generators().len()];
        Rep::from_parts(group, field, 1, gens)
    }

    /// The regular module kG with basis the group elements in enumeration
    /// order; g sends e_x to e_{gx}.
    pub fn regular(group: Arc<Group>, field: Field) -> Rep {
        let n = group.order();
        let gens = (0..group.generators().len())
            .map(|gi| {
                let s = group.generator_index(gi);
                let mut m = Matrix::zeros(field, n, n);
                for x in 0..n {
                    m[(group.mul_index(s, x), x)] = Scalar::ONE;
                }
                m
            })
            .collect();
        Rep::from_parts(group, field, n, gens)
    }

    /// Right multiplication by element `a` on the regular module, as a
    /// module endomorphism: e_x -> e_{xa}.
    pub fn regular_right_mult(group: &Group, field: Field, a: usize) -> Matrix {
        let n = group.order();
        let mut m = Matrix::zeros(field, n, n);
        for x in 0..n {
            m[(group.mul_index(x, a), x)] = Scalar::ONE;
        }
        m
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn generator_matrices(&self) -> &[Matrix] {
        &self.gens
    }

    fn element_matrices(&self) -> &[Matrix] {
        self.elements.get_or_init(|| {
            let g = &self.group;
            let mut out: Vec<Matrix> = Vec::with_capacity(g.order());
            for i in 0..g.order() {
                let m = match g.parent(i) {
                    None => Matrix::identity(self.field, self.dim),
                    Some((gi, p)) => &self.gens[gi] * &out[p],
                };
                out.push(m);
            }
            out
        })
    }

    /// Matrix of the element with the given index.
    pub fn act(&self, element: usize) -> &Matrix {
        &self.element_matrices()[element]
    }

    /// Matrix of a group element given as a permutation.
    pub fn act_perm(&self, p: &Perm) -> Result<&Matrix> {
        let i = self.group.index_of(p).ok_or(Error::ForeignElement)?;
        Ok(self.act(i))
    }

    /// Action of a group-algebra element given by coefficients over the
    /// element list.
    pub fn act_algebra(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.group.order());
        let mut out = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, self.act(i));
            }
        }
        out
    }

    pub fn same_context(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.order(), other.field.order()));
        }
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Whether `x` intertwines `self -> other`.
    pub fn is_hom_to(&self, other: &Rep, x: &Matrix) -> bool {
        x.rows() == other.dim
            && x.cols() == self.dim
            && self
                .gens
                .iter()
                .zip(&other.gens)
                .all(|(a, b)| b * x == x * a)
    }

    /// Conjugate the action by an invertible change of basis `q`
    /// (new basis = columns of `q`).
    pub fn change_basis(&self, q: &Matrix) -> Result<Rep> {
        let qi = q
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let gens = self.gens.iter().map(|a| &(&qi * a) * q).collect();
        Ok(Rep::from_parts(self.group.clone(), self.field, self.dim, gens))
    }

    /// The submodule spanned by the columns of `basis` (full column rank).
    pub fn submodule(&self, basis: &Matrix) -> Result<Rep> {
        let k = basis.cols();
        if basis.rows() != self.dim || basis.rank() != k {
            return Err(Error::DimensionMismatch("submodule basis must have full column rank".into()));
        }
        let left = left_inverse(basis);
        let mut gens = Vec::with_capacity(self.gens.len());
        for a in &self.gens {
            let image = a * basis;
            let x = &left * &image;
            if basis * &x != image {
                return Err(Error::DimensionMismatch("subspace is not invariant".into()));
            }
            gens.push(x);
        }
        Ok(Rep::from_parts(self.group.clone(), self.field, k, gens))
    }

    /// The quotient by the invariant subspace spanned by `basis`, together
    /// with the projection matrix `self -> quotient`.
    pub fn quotient(&self, basis: &Matrix) -> Result<(Rep, Matrix)> {
        let n = self.dim;
        let k = basis.cols();
        let complement = complement_columns(basis);
        let q = Matrix::hstack(self.field, n, &[basis, &complement]);
        let qi = q
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("submodule basis must have full column rank".into()))?;
        let mut gens = Vec::with_capacity(self.gens.len());
        for a in &self.gens {
            let b = &(&qi * a) * &q;
            if !b.submatrix(k..n, 0..k).is_zero() {
                return Err(Error::DimensionMismatch("subspace is not invariant".into()));
            }
            gens.push(b.submatrix(k..n, k..n));
        }
        let proj = qi.submatrix(k..n, 0..n);
        Ok((Rep::from_parts(self.group.clone(), self.field, n - k, gens), proj))
    }

    /// The image of a module endomorphism-like matrix `e` (columns of a
    /// basis of `e`'s column space) as a submodule.
    pub fn image_of(&self, e: &Matrix) -> Result<(Rep, Matrix)> {
        let basis = e.column_space();
        Ok((self.submodule(&basis)?, basis))
    }
}

/// L with L * basis = I, built from an invertible square subset of rows.
pub(crate) fn left_inverse(basis: &Matrix) -> Matrix {
    let f = basis.field();
    let k = basis.cols();
    let mut t = basis.transpose();
    let rows = t.rref();
    debug_assert_eq!(rows.len(), k);
    let square = basis.select_rows(&rows);
    let inv = square.inverse().expect("selected rows are independent");
    let mut sel = Matrix::zeros(f, k, basis.rows());
    for (i, &r) in rows.iter().enumerate() {
        sel[(i, r)] = Scalar::ONE;
    }
    &inv * &sel
}

/// Standard basis vectors completing the column span of `basis`.
pub(crate) fn complement_columns(basis: &Matrix) -> Matrix {
    let f = basis.field();
    let n = basis.rows();
    let mut eb = crate::exactfield::EchelonBasis::new(f, n, false);
    for j in 0..basis.cols() {
        eb.insert(&basis.column(j));
    }
    let mut cols = Vec::new();
    for i in 0..n {
        let mut e = vec![Scalar::ZERO; n];
        e[i] = Scalar::ONE;
        if eb.insert(&e) == crate::exactfield::Insert::Independent {
            cols.push(e);
        }
    }
    Matrix::from_columns(f, n, &cols)
}

/// Block-diagonal sum; the empty list gives the zero module.
pub fn direct_sum(group: &Arc<Group>, field: Field, parts: &[&Rep]) -> Result<Rep> {
    for p in parts {
        if p.field != field {
            return Err(Error::FieldMismatch(p.field.order(), field.order()));
        }
        if *p.group != **group {
            return Err(Error::GroupMismatch);
        }
    }
    let dim = parts.iter().map(|p| p.dim).sum();
    let gens = (0..group.generators().len())
        .map(|gi| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.gens[gi]).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    Ok(Rep::from_parts(group.clone(), field, dim, gens))
}

/// Res: the same space with the action of the subgroup's generators.
pub fn restrict(m: &Rep, small: &Arc<Group>) -> Result<Rep> {
    if !m.group.has_subgroup(small) {
        return Err(Error::NotSubgroup("restriction target is not a subgroup".into()));
    }
    let gens = small
        .generators()
        .iter()
        .map(|s| m.act_perm(s).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(Rep::from_parts(small.clone(), m.field, m.dim, gens))
}

/// Ind = k[big] ⊗_{kG} M with basis (t_i ⊗ v) in row blocks by coset; a
/// generator x sends t_i ⊗ v to t_j ⊗ rho(h) v where x t_i = t_j h.
pub fn induce(m: &Rep, big: &Arc<Group>, t: &Transversal) -> Result<Rep> {
    if !t.matches(big, &m.group) {
        return Err(Error::NotSubgroup("transversal does not belong to this pair of groups".into()));
    }
    let d = m.dim;
    let r = t.len();
    let n = r * d;
    let gens = big
        .generators()
        .iter()
        .map(|x| {
            let mut out = Matrix::zeros(m.field, n, n);
            for (i, ti) in t.reps().iter().enumerate() {
                let y = big.index_of(&x.compose(ti)).expect("closed");
                let (j, h) = t.split(y);
                let block = m.act(h);
                for a in 0..d {
                    for b in 0..d {
                        out[(j * d + a, i * d + b)] = block[(a, b)];
                    }
                }
            }
            out
        })
        .collect();
    Ok(Rep::from_parts(big.clone(), m.field, n, gens))
}

/// The conjugate module: g acts on it as `x^-1 g x` acts on `m`.
pub fn conjugate_rep(m: &Rep, x: &Perm) -> Result<Rep> {
    let g = &m.group;
    if x.degree() != g.degree() || !g.is_normalized_by(x) {
        return Err(Error::NotNormal("element does not normalise the group".into()));
    }
    let xi = x.inverse();
    let gens = g
        .generators()
        .iter()
        .map(|s| m.act_perm(&xi.compose(s).compose(x)).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(Rep::from_parts(g.clone(), m.field, m.dim, gens))
}

/// The contragredient module: g acts by the transpose of rho(g^-1).
pub fn dual_rep(m: &Rep) -> Rep {
    let g = &m.group;
    let gens = (0..g.generators().len())
        .map(|gi| m.act(g.inverse_index(g.generator_index(gi))).transpose())
        .collect();
    Rep::from_parts(g.clone(), m.field, m.dim, gens)
}

/// The pushout `(P ⊕ T) / {(ι w, -f(w))}` of a projective cover `P` of
/// `S` along a cocycle `f: ΩS -> T`, where `ι: ΩS -> P` is the syzygy
/// inclusion.  The result has top S and radical T when `f` is nonsplit.
pub fn ext_module(
    cover: &Rep,
    syzygy: &Rep,
    inclusion: &Matrix,
    target: &Rep,
    cocycle: &Matrix,
) -> Result<Rep> {
    cover.same_context(target)?;
    cover.same_context(syzygy)?;
    if !syzygy.is_hom_to(cover, inclusion) {
        return Err(Error::NotHomomorphism("syzygy inclusion is not a module map".into()));
    }
    if !syzygy.is_hom_to(target, cocycle) {
        return Err(Error::NotHomomorphism("cocycle is not a module map".into()));
    }
    // split iff f extends over the inclusion, i.e. f = psi ∘ ι for some psi: P -> T
    let restrictions: Vec<Matrix> = hom_space(cover, target)?
        .basis()
        .iter()
        .map(|psi| psi * inclusion)
        .collect();
    if in_span(&restrictions, cocycle) {
        return Err(Error::SplitExtension);
    }
    let f = cover.field;
    let sum = direct_sum(&cover.group, f, &[cover, target])?;
    let neg = cocycle.scaled(f.neg(Scalar::ONE));
    let relations = Matrix::vstack(f, syzygy.dim, &[inclusion, &neg]);
    Ok(sum.quotient(&relations)?.0)
}

/// Whether `x` lies in the linear span of `mats` (all of the same shape).
pub(crate) fn in_span(mats: &[Matrix], x: &Matrix) -> bool {
    let f = x.field();
    let cols: Vec<Vec<Scalar>> = mats.iter().map(|m| m.to_vec()).collect();
    let a = Matrix::from_columns(f, x.rows() * x.cols(), &cols);
    let b = Matrix::from_columns(f, x.rows() * x.cols(), &[x.to_vec()]);
    a.linsolve(&b).expect("shapes agree").particular.is_some()
}

#[cfg(test)]
mod tests;
