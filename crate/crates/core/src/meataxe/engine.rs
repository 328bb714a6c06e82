//! Spinning and the Holt–Rees irreducibility test for an algebra given by
//! matrix generators acting on column vectors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactfield::{EchelonBasis, Field, Insert, Matrix, Scalar};
use crate::grouprep::Budget;

/// Generators of a matrix algebra.  When `linear` is set the generators
/// already span the algebra, so a random element is a random combination;
/// otherwise random elements are combinations of random words.
#[derive(Clone, Copy)]
pub(crate) struct Gens<'a> {
    pub field: Field,
    pub dim: usize,
    pub mats: &'a [Matrix],
    pub linear: bool,
}

/// Outcome of an irreducibility test.
#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace (basis in columns).
    Reducible(Matrix),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Basis (columns) of the smallest invariant subspace containing `seeds`.
pub(crate) fn spin(field: Field, dim: usize, mats: &[Matrix], seeds: &[Vec<Scalar>]) -> Matrix {
    let mut eb = EchelonBasis::new(field, dim, false);
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for s in seeds {
        if eb.insert(s) == Insert::Independent {
            basis.push(s.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() && basis.len() < dim {
        for a in mats {
            let w = a.mul_vec(&basis[k]);
            if eb.insert(&w) == Insert::Independent {
                basis.push(w);
            }
        }
        k += 1;
    }
    Matrix::from_columns(field, dim, &basis)
}

fn random_element<R: Rng>(g: &Gens, budget: &Budget, rng: &mut R) -> Matrix {
    let f = g.field;
    let mut theta = Matrix::identity(f, g.dim).scaled(f.random(rng));
    if g.mats.is_empty() {
        return theta;
    }
    if g.linear {
        for a in g.mats {
            theta.add_scaled(f.random(rng), a);
        }
        return theta;
    }
    for _ in 0..4 {
        let len = rng.gen_range(1..=budget.word_length.max(1));
        let mut w = g.mats[rng.gen_range(0..g.mats.len())].clone();
        for _ in 1..len {
            w = &w * &g.mats[rng.gen_range(0..g.mats.len())];
        }
        theta.add_scaled(f.random(rng), &w);
    }
    theta
}

/// Holt–Rees test with Norton's criterion.
///
/// For a random algebra element θ and an irreducible factor f of its
/// minimal polynomial, any nonzero v in ker f(θ) spinning to a proper
/// subspace proves reducibility.  When dim ker f(θ) = deg f, irreducibility
/// is equivalent to v spinning to the whole space and some nonzero w in
/// ker f(θ)ᵀ spinning to the whole space under the transposed generators.
pub(crate) fn irreducibility<R: Rng>(g: &Gens, budget: &Budget, rng: &mut R) -> Result<Irreducibility> {
    let n = g.dim;
    if n == 0 {
        return Err(Error::DimensionMismatch("the zero module is not simple".into()));
    }
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let transposed: Vec<Matrix> = g.mats.iter().map(|a| a.transpose()).collect();
    for _ in 0..budget.trials.max(1) {
        let theta = random_element(g, budget, rng);
        let mp = theta.minpoly()?;
        for (factor, _) in mp.factor() {
            let deg = factor.degree().unwrap_or(0);
            let kernel = theta.eval_poly(&factor).nullspace();
            let v = kernel.column(0);
            let sub = spin(g.field, n, g.mats, &[v]);
            if sub.cols() < n {
                return Ok(Irreducibility::Reducible(sub));
            }
            if kernel.cols() != deg {
                continue;
            }
            let kt = theta.transpose().eval_poly(&factor).nullspace();
            let w = kt.column(0);
            let dual = spin(g.field, n, &transposed, &[w]);
            if dual.cols() == n {
                return Ok(Irreducibility::Irreducible);
            }
            // the annihilator of an invariant subspace of the transpose
            return Ok(Irreducibility::Reducible(dual.transpose().nullspace()));
        }
    }
    Err(Error::Inconclusive(format!(
        "irreducibility undecided after {} random algebra elements; raise the budget",
        budget.trials
    )))
}

/// A composition series: `q` is an invertible change of basis such that
/// q⁻¹ a q is block upper triangular for every generator, with irreducible
/// diagonal blocks of the listed sizes.
#[derive(Clone, Debug)]
pub(crate) struct Flag {
    pub q: Matrix,
    pub sizes: Vec<usize>,
}

impl Flag {
    /// The action of `a` on each composition factor.
    pub fn factors_of(&self, a: &Matrix) -> Vec<Matrix> {
        let qi = self.q.inverse().expect("flag basis is invertible");
        let b = &(&qi * a) * &self.q;
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut at = 0;
        for &s in &self.sizes {
            out.push(b.submatrix(at..at + s, at..at + s));
            at += s;
        }
        out
    }
}

fn conj(qi: &Matrix, a: &Matrix, q: &Matrix) -> Matrix {
    &(qi * a) * q
}

pub(crate) fn composition_flag<R: Rng>(g: &Gens, budget: &Budget, rng: &mut R) -> Result<Flag> {
    let f = g.field;
    let n = g.dim;
    if n == 0 {
        return Ok(Flag {
            q: Matrix::zeros(f, 0, 0),
            sizes: Vec::new(),
        });
    }
    let sub = match irreducibility(g, budget, rng)? {
        Irreducibility::Irreducible => {
            return Ok(Flag {
                q: Matrix::identity(f, n),
                sizes: vec![n],
            })
        }
        Irreducibility::Reducible(s) => s,
    };
    let k = sub.cols();
    let comp = crate::grouprep::complement_columns(&sub);
    let q0 = Matrix::hstack(f, n, &[&sub, &comp]);
    let q0i = q0.inverse().expect("completed basis");
    let blocks: Vec<Matrix> = g.mats.iter().map(|a| conj(&q0i, a, &q0)).collect();
    let lower: Vec<Matrix> = blocks.iter().map(|b| b.submatrix(0..k, 0..k)).collect();
    let upper: Vec<Matrix> = blocks.iter().map(|b| b.submatrix(k..n, k..n)).collect();
    let fl = composition_flag(
        &Gens {
            field: f,
            dim: k,
            mats: &lower,
            linear: g.linear,
        },
        budget,
        rng,
    )?;
    let fu = composition_flag(
        &Gens {
            field: f,
            dim: n - k,
            mats: &upper,
            linear: g.linear,
        },
        budget,
        rng,
    )?;
    let q = &q0 * &Matrix::block_diag(f, &[&fl.q, &fu.q]);
    let mut sizes = fl.sizes;
    sizes.extend(fu.sizes);
    Ok(Flag { q, sizes })
}
