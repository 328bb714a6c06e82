use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::engine::{composition_flag, irreducibility, Gens, Irreducibility};
use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::grouprep::{hom_space, Budget, Rep};
use crate::permgroup::Group;

fn gens(m: &Rep) -> Gens<'_> {
    Gens {
        field: m.field(),
        dim: m.dim(),
        mats: m.generator_matrices(),
        linear: false,
    }
}

/// Irreducibility with a witness submodule when the answer is negative.
pub fn is_irreducible(m: &Rep, budget: &Budget) -> Result<Irreducibility> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    irreducibility(&gens(m), budget, &mut rng)
}

/// The composition factors of `m`, bottom to top, as modules.
pub fn composition_factors(m: &Rep, budget: &Budget) -> Result<Vec<Rep>> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let flag = composition_flag(&gens(m), budget, &mut rng)?;
    let per_gen: Vec<Vec<Matrix>> = m.generator_matrices().iter().map(|a| flag.factors_of(a)).collect();
    (0..flag.sizes.len())
        .map(|i| {
            let g: Vec<Matrix> = per_gen.iter().map(|blocks| blocks[i].clone()).collect();
            Rep::with_dim(m.group().clone(), m.field(), flag.sizes[i], g)
        })
        .collect()
}

/// The simple kG-modules, labelled S1, S2, ... in a fixed order.
#[derive(Clone, Debug)]
pub struct SimpleTable {
    group: Arc<Group>,
    field: Field,
    simples: Vec<Rep>,
}

impl SimpleTable {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn simples(&self) -> &[Rep] {
        &self.simples
    }

    pub fn simple(&self, i: usize) -> &Rep {
        &self.simples[i]
    }

    pub fn label(&self, i: usize) -> String {
        format!("S{}", i + 1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(|s| s.dim()).collect()
    }

    /// The label of a module known to be simple.
    pub fn identify(&self, s: &Rep) -> Result<usize> {
        for (i, t) in self.simples.iter().enumerate() {
            if t.dim() == s.dim() && !hom_space(s, t)?.is_empty() {
                return Ok(i);
            }
        }
        Err(Error::Internal("composition factor matches no simple module".into()))
    }

    /// Composition multiplicities of `m`, indexed by label.
    pub fn chop(&self, m: &Rep, budget: &Budget) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.len()];
        for s in composition_factors(m, budget)? {
            counts[self.identify(&s)?] += 1;
        }
        Ok(counts)
    }
}

/// All simple modules: the composition factors of the regular module up to
/// isomorphism.  Sorted by dimension with the trivial module first; ties
/// keep discovery order.
pub fn simples_of(group: &Arc<Group>, field: Field, budget: &Budget) -> Result<SimpleTable> {
    let reg = Rep::regular(group.clone(), field);
    let mut found: Vec<Rep> = Vec::new();
    let trivial = Rep::trivial(group.clone(), field);
    found.push(trivial);
    for s in composition_factors(&reg, budget)? {
        let mut new = true;
        for t in &found {
            if t.dim() == s.dim() && !hom_space(&s, t)?.is_empty() {
                new = false;
                break;
            }
        }
        if new {
            found.push(s);
        }
    }
    // stable sort keeps the trivial module ahead of the other 1-dimensional ones
    found.sort_by_key(|s| s.dim());
    Ok(SimpleTable {
        group: group.clone(),
        field,
        simples: found,
    })
}

/// `rad M` as a submodule together with `M / rad M`.
#[derive(Clone, Debug)]
pub struct RadicalTop {
    pub radical: Rep,
    /// Columns span rad M inside M.
    pub radical_basis: Matrix,
    pub top: Rep,
    /// The projection M -> top.
    pub projection: Matrix,
}

/// rad M is the intersection of the kernels of all maps to simple modules.
pub fn radical_top(m: &Rep, table: &SimpleTable) -> Result<RadicalTop> {
    let f = m.field();
    let mut rows: Vec<Matrix> = Vec::new();
    for s in table.simples() {
        rows.extend(hom_space(m, s)?.basis().iter().cloned());
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let stacked = Matrix::vstack(f, m.dim(), &refs);
    let radical_basis = stacked.nullspace();
    let radical = m.submodule(&radical_basis)?;
    let (top, projection) = m.quotient(&radical_basis)?;
    Ok(RadicalTop {
        radical,
        radical_basis,
        top,
        projection,
    })
}
