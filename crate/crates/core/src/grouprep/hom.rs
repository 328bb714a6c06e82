use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::{EchelonBasis, Field, Insert, Matrix, Scalar};

use super::{Budget, Rep};

/// A basis of Hom_kG(source, target); each matrix is `dim(target) x dim(source)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    field: Field,
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Matrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.target_dim, self.source_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out.add_scaled(*c, b);
        }
        out
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Matrix {
        let coeffs: Vec<Scalar> = (0..self.basis.len()).map(|_| self.field.random(rng)).collect();
        self.combination(&coeffs)
    }
}

enum Origin {
    Seed(usize),
    Image { gen: usize, parent: usize },
}

/// Hom_kG(M, N) by spinning M.
///
/// Spinning standard basis vectors of M yields a basis b_k where each b_k is
/// either a seed or g·b_parent, plus the linear relations g·b_k = Σ c_l b_l
/// for the remaining products.  A homomorphism is fixed by the images of the
/// seeds; its value on every b_k is then linear in those unknowns, and the
/// relations cut out exactly the intertwiners.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<HomBasis> {
    m.same_context(n)?;
    let f = m.field();
    let (d, e) = (m.dim(), n.dim());
    let empty = HomBasis {
        field: f,
        source_dim: d,
        target_dim: e,
        basis: Vec::new(),
    };
    if d == 0 || e == 0 {
        return Ok(empty);
    }
    let a = m.generator_matrices();
    let b = n.generator_matrices();

    let mut eb = EchelonBasis::new(f, d, true);
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    let mut origin: Vec<Origin> = Vec::with_capacity(d);
    let mut relations: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    let mut seeds = 0;
    let mut processed = 0;
    for j in 0..d {
        if basis.len() == d {
            break;
        }
        let mut ej = vec![Scalar::ZERO; d];
        ej[j] = Scalar::ONE;
        if eb.insert(&ej) != Insert::Independent {
            continue;
        }
        basis.push(ej);
        origin.push(Origin::Seed(seeds));
        seeds += 1;
        while processed < basis.len() {
            let k = processed;
            for (g, ag) in a.iter().enumerate() {
                let w = ag.mul_vec(&basis[k]);
                match eb.insert(&w) {
                    Insert::Independent => {
                        basis.push(w);
                        origin.push(Origin::Image { gen: g, parent: k });
                    }
                    Insert::Dependent(c) => relations.push((k, g, c)),
                }
            }
            processed += 1;
        }
    }
    // processing continued after the basis filled up, so every (k, g) pair
    // either created a basis vector or produced a relation
    let u = seeds * e;
    let mut phi: Vec<Matrix> = Vec::with_capacity(d);
    for o in &origin {
        let p = match *o {
            Origin::Seed(i) => {
                let mut p = Matrix::zeros(f, e, u);
                for r in 0..e {
                    p[(r, i * e + r)] = Scalar::ONE;
                }
                p
            }
            Origin::Image { gen, parent } => &b[gen] * &phi[parent],
        };
        phi.push(p);
    }

    let mut eqs = Matrix::zeros(f, relations.len() * e, u);
    for (ri, (k, g, c)) in relations.iter().enumerate() {
        let mut block = &b[*g] * &phi[*k];
        for (l, &cl) in c.iter().enumerate() {
            if !cl.is_zero() {
                block.add_scaled(f.neg(cl), &phi[l]);
            }
        }
        for r in 0..e {
            eqs.row_mut(ri * e + r).copy_from_slice(block.row(r));
        }
    }
    let sols = eqs.nullspace();
    if sols.cols() == 0 {
        return Ok(empty);
    }
    let bmat = Matrix::from_columns(f, d, &basis);
    let binv = bmat.inverse().expect("spun basis spans the module");
    let mut out = Vec::with_capacity(sols.cols());
    for s in 0..sols.cols() {
        let sv = sols.column(s);
        let cols: Vec<Vec<Scalar>> = phi.iter().map(|p| p.mul_vec(&sv)).collect();
        let y = Matrix::from_columns(f, e, &cols);
        let x = &y * &binv;
        debug_assert!(m.is_hom_to(n, &x));
        out.push(x);
    }
    Ok(HomBasis {
        field: f,
        source_dim: d,
        target_dim: e,
        basis: out,
    })
}

/// Randomised isomorphism test.
///
/// Returns `Some(witness)` with an exactly verified invertible intertwiner
/// `M -> N`, or `None` when the modules are certainly not isomorphic.  When
/// all hom-space dimensions agree but no invertible element turns up within
/// the budget the answer is `Error::Inconclusive`.
pub fn is_isomorphic(m: &Rep, n: &Rep, budget: &Budget) -> Result<Option<Matrix>> {
    m.same_context(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(m.field(), 0, 0)));
    }
    let hom = hom_space(m, n)?;
    if hom.is_empty() {
        return Ok(None);
    }
    let verified = |x: &Matrix| x.is_invertible() && m.is_hom_to(n, x);
    if let Some(x) = hom.basis().iter().find(|x| verified(x)) {
        return Ok(Some(x.clone()));
    }
    let back = hom_space(n, m)?.dim();
    let end_m = hom_space(m, m)?.dim();
    let end_n = hom_space(n, n)?.dim();
    if !(hom.dim() == back && back == end_m && end_m == end_n) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.trials {
        let x = hom.random(&mut rng);
        if verified(&x) {
            return Ok(Some(x));
        }
    }
    Err(Error::Inconclusive(format!(
        "no invertible homomorphism among {} random trials (dim Hom = {}); try a larger field or budget",
        budget.trials,
        hom.dim()
    )))
}
