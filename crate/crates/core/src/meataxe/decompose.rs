use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::{composition_flag, Gens};
use crate::error::{Error, Result};
use crate::exactfield::{EchelonBasis, Field, Insert, Matrix, Poly, Scalar};
use crate::grouprep::{direct_sum, hom_space, in_span, is_isomorphic, Budget, Rep};

/// Basis of the Jacobson radical of the unital algebra spanned by `basis`.
///
/// The algebra acts faithfully on the column space, so its radical is the
/// set of elements that act as zero on every composition factor of that
/// module.
pub fn algebra_radical(basis: &[Matrix], budget: &Budget) -> Result<Vec<Matrix>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    // drop dependent spanning elements so the kernel below is a basis of J
    let mut eb = EchelonBasis::new(first.field(), first.rows() * first.cols(), false);
    let basis: Vec<Matrix> = basis
        .iter()
        .filter(|a| eb.insert(&a.to_vec()) == Insert::Independent)
        .cloned()
        .collect();
    for a in &basis {
        for b in &basis {
            if !in_span(&basis, &(a * b)) {
                return Err(Error::NotClosed);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    radical_unchecked(first.field(), first.rows(), &basis, budget, &mut rng)
}

fn radical_unchecked<R: Rng>(
    field: Field,
    n: usize,
    basis: &[Matrix],
    budget: &Budget,
    rng: &mut R,
) -> Result<Vec<Matrix>> {
    let g = Gens {
        field,
        dim: n,
        mats: basis,
        linear: true,
    };
    let flag = composition_flag(&g, budget, rng)?;
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| flag.factors_of(b).iter().flat_map(|m| m.to_vec()).collect())
        .collect();
    let len = flag.sizes.iter().map(|s| s * s).sum();
    let c = Matrix::from_columns(field, len, &cols);
    let null = c.nullspace();
    Ok((0..null.cols())
        .map(|j| {
            let mut x = Matrix::zeros(field, n, n);
            for (i, b) in basis.iter().enumerate() {
                let s = null[(i, j)];
                if !s.is_zero() {
                    x.add_scaled(s, b);
                }
            }
            x
        })
        .collect())
}

/// An exact idempotent congruent to `e0` modulo the radical, obtained by
/// raising `e0` to a large enough power of p.
pub fn lift_idempotent(e0: &Matrix, algebra: &[Matrix], radical: &[Matrix]) -> Result<Matrix> {
    if !e0.is_square() {
        return Err(Error::NotSquare {
            rows: e0.rows(),
            cols: e0.cols(),
        });
    }
    if !algebra.is_empty() && !in_span(algebra, e0) {
        return Err(Error::NotIdempotentModRadical);
    }
    let defect = e0 * e0;
    let defect = defect.sub(e0);
    if !defect.is_zero() && (radical.is_empty() || !in_span(radical, &defect)) {
        return Err(Error::NotIdempotentModRadical);
    }
    let p = e0.field().characteristic() as usize;
    let mut e = e0.clone();
    let mut reach = 1usize;
    while reach < e0.rows().max(1) {
        e = e.pow(p as u64);
        reach *= p;
    }
    debug_assert!(&e * &e == e);
    Ok(e)
}

/// A Krull–Schmidt decomposition.  Conjugating the module by `witness`
/// gives the block diagonal sum of the summands, each repeated according to
/// its multiplicity, in the listed order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<(Rep, usize)>,
    pub witness: Matrix,
}

impl Decomposition {
    pub fn class_count(&self) -> usize {
        self.summands.len()
    }

    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|(_, k)| k).sum()
    }

    /// The block diagonal module the witness conjugates to.
    pub fn reassemble(&self, template: &Rep) -> Result<Rep> {
        let parts: Vec<&Rep> = self
            .summands
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r, *k))
            .collect();
        direct_sum(template.group(), template.field(), &parts)
    }
}

/// An isomorphism between indecomposable modules, decided exactly: their
/// endomorphism rings are local, so if they are isomorphic some element of
/// any basis of Hom(a, b) is invertible.
pub fn indecomposable_iso(a: &Rep, b: &Rep) -> Result<Option<Matrix>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    Ok(hom_space(a, b)?
        .basis()
        .iter()
        .find(|x| x.is_invertible())
        .cloned())
}

enum Leaf {
    Local,
    Split(Matrix, Matrix),
}

fn fitting(theta: &Matrix, mp: &Poly, factors: &[(Poly, usize)]) -> Option<(Matrix, Matrix)> {
    if factors.len() < 2 {
        return None;
    }
    let (f0, e0) = &factors[0];
    let head = f0.pow(*e0);
    let (rest, _) = mp.divrem(&head);
    let u1 = theta.eval_poly(&head).nullspace();
    let u2 = theta.eval_poly(&rest).nullspace();
    Some((u1, u2))
}

fn examine<R: Rng>(piece: &Rep, budget: &Budget, rng: &mut R) -> Result<Leaf> {
    let f = piece.field();
    let n = piece.dim();
    let end = hom_space(piece, piece)?;
    if end.dim() == 1 {
        return Ok(Leaf::Local);
    }
    let rad = radical_unchecked(f, n, end.basis(), budget, rng)?;
    let top = end.dim() - rad.len();
    if top == 1 {
        return Ok(Leaf::Local);
    }
    let mut candidates: Vec<Matrix> = end.basis().to_vec();
    for _ in 0..budget.trials {
        candidates.push(end.random(rng));
    }
    for theta in candidates {
        let mp = theta.minpoly()?;
        let factors = mp.factor();
        if let Some((u1, u2)) = fitting(&theta, &mp, &factors) {
            return Ok(Leaf::Split(u1, u2));
        }
        // a single irreducible factor of degree dim End/J makes End/J a field
        if factors[0].0.degree() == Some(top) {
            return Ok(Leaf::Local);
        }
    }
    Err(Error::Inconclusive(format!(
        "no splitting endomorphism or locality certificate among {} random endomorphisms",
        budget.trials
    )))
}

/// Split `m` into indecomposables, returning each with its embedding.
fn split_all<R: Rng>(m: &Rep, budget: &Budget, rng: &mut R) -> Result<Vec<(Rep, Matrix)>> {
    let f = m.field();
    let mut todo = vec![(m.clone(), Matrix::identity(f, m.dim()))];
    let mut done = Vec::new();
    while let Some((piece, emb)) = todo.pop() {
        if piece.dim() == 0 {
            continue;
        }
        match examine(&piece, budget, rng)? {
            Leaf::Local => done.push((piece, emb)),
            Leaf::Split(u1, u2) => {
                // pushed in reverse so the first factor's part is handled first
                let e2 = &emb * &u2;
                let e1 = &emb * &u1;
                todo.push((piece.submodule(&u2)?, e2));
                todo.push((piece.submodule(&u1)?, e1));
            }
        }
    }
    Ok(done)
}

/// Full Krull–Schmidt decomposition of `m`, classes ordered by dimension
/// and then by first appearance.
pub fn decompose(m: &Rep, budget: &Budget) -> Result<Decomposition> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let leaves = split_all(m, budget, &mut rng)?;
    // (representative, [(embedding expressed in the representative's basis)])
    let mut classes: Vec<(Rep, Vec<Matrix>)> = Vec::new();
    for (leaf, emb) in leaves {
        let mut placed = false;
        for (rep, embs) in classes.iter_mut() {
            if let Some(phi) = indecomposable_iso(&leaf, rep)? {
                let phi_inv = phi.inverse().expect("isomorphism");
                embs.push(&emb * &phi_inv);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((leaf, vec![emb]));
        }
    }
    classes.sort_by_key(|(r, _)| r.dim());
    let mut cols: Vec<&Matrix> = Vec::new();
    for (_, embs) in &classes {
        cols.extend(embs.iter());
    }
    let witness = Matrix::hstack(f, m.dim(), &cols);
    let summands = classes.iter().map(|(r, e)| (r.clone(), e.len())).collect();
    Ok(Decomposition { summands, witness })
}

/// Isomorphism with a verified witness.  The randomised search is tried
/// first; if it is inconclusive, both modules are decomposed and matched
/// summand by summand.
pub fn isomorphism(m: &Rep, n: &Rep, budget: &Budget) -> Result<Option<Matrix>> {
    match is_isomorphic(m, n, budget) {
        Err(Error::Inconclusive(_)) => {}
        other => return other,
    }
    let dm = decompose(m, budget)?;
    let dn = decompose(n, budget)?;
    if dm.summand_count() != dn.summand_count() {
        return Ok(None);
    }
    let mut blocks: Vec<Matrix> = Vec::new();
    let mut used = vec![false; dn.summands.len()];
    let mut order: Vec<usize> = Vec::new();
    for (a, ka) in &dm.summands {
        let mut hit = None;
        for (j, (b, kb)) in dn.summands.iter().enumerate() {
            if used[j] || ka != kb {
                continue;
            }
            if let Some(phi) = indecomposable_iso(a, b)? {
                hit = Some((j, phi));
                break;
            }
        }
        let Some((j, phi)) = hit else {
            return Ok(None);
        };
        used[j] = true;
        order.push(j);
        for _ in 0..*ka {
            blocks.push(phi.clone());
        }
    }
    // rearrange n's blocks into m's class order
    let f = m.field();
    let mut offsets = Vec::with_capacity(dn.summands.len());
    let mut at = 0;
    for (b, k) in &dn.summands {
        offsets.push(at);
        at += b.dim() * k;
    }
    let mut perm_cols: Vec<usize> = Vec::with_capacity(n.dim());
    for &j in &order {
        let (b, k) = &dn.summands[j];
        perm_cols.extend(offsets[j]..offsets[j] + b.dim() * k);
    }
    let wn = dn.witness.select_columns(&perm_cols);
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let phi = Matrix::block_diag(f, &refs);
    let wm_inv = dm.witness.inverse().expect("decomposition witness is invertible");
    let x = &(&wn * &phi) * &wm_inv;
    if x.is_invertible() && m.is_hom_to(n, &x) {
        Ok(Some(x))
    } else {
        Err(Error::Internal("assembled isomorphism failed verification".into()))
    }
}

/// The add-category comparison of two modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AddCompare {
    /// add M ⊆ add N
    pub leq: bool,
    /// add N ⊆ add M
    pub geq: bool,
}

impl AddCompare {
    pub fn equivalent(&self) -> bool {
        self.leq && self.geq
    }
}

fn covered(a: &Decomposition, b: &Decomposition) -> Result<bool> {
    for (x, _) in &a.summands {
        let mut found = false;
        for (y, _) in &b.summands {
            if indecomposable_iso(x, y)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn add_compare(m: &Rep, n: &Rep, budget: &Budget) -> Result<AddCompare> {
    m.same_context(n)?;
    let dm = decompose(m, budget)?;
    let dn = decompose(n, budget)?;
    Ok(AddCompare {
        leq: covered(&dm, &dn)?,
        geq: covered(&dn, &dm)?,
    })
}
