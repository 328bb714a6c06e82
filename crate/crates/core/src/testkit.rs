//! Shared fixtures for unit tests.

use std::sync::Arc;

use crate::exactfield::{Field, Matrix, Scalar};
use crate::grouprep::{hom_space, Rep};
use crate::permgroup::standard::{alternating4, cyclic3, symmetric3, symmetric4};
use crate::permgroup::{Group, Transversal};

pub fn gf4() -> Field {
    Field::new(2, 2).unwrap()
}

pub fn a4() -> Arc<Group> {
    Arc::new(alternating4())
}

pub fn s4() -> Arc<Group> {
    Arc::new(symmetric4())
}

pub fn c3() -> Arc<Group> {
    Arc::new(cyclic3())
}

pub fn s3() -> Arc<Group> {
    Arc::new(symmetric3())
}

pub fn transversal(big: &Group, small: &Group) -> Transversal {
    Transversal::new(big, small).unwrap()
}

/// The 1-dimensional A4-module on which (0 1 2) acts by ω^i.
pub fn a4_linear(g: &Arc<Group>, i: u64) -> Rep {
    let f = gf4();
    let w = f.pow(f.generator(), i);
    Rep::new(
        g.clone(),
        f,
        vec![Matrix::from_data(f, 1, 1, vec![w]), Matrix::identity(f, 1)],
    )
    .unwrap()
}

/// The first non-split extension with 1-dimensional top `top` and radical
/// `bottom`, found by brute force over the off-diagonal entries.
pub fn uniserial(top: &Rep, bottom: &Rep) -> Rep {
    assert_eq!((top.dim(), bottom.dim()), (1, 1));
    let f = top.field();
    let group = top.group().clone();
    let ngens = group.generators().len();
    let q = f.order() as usize;
    let elems: Vec<Scalar> = f.elements().collect();
    let distinct = hom_space(top, bottom).unwrap().is_empty();
    for code in 0..q.pow(ngens as u32) {
        let mut c = code;
        let gens: Vec<Matrix> = (0..ngens)
            .map(|g| {
                let x = elems[c % q];
                c /= q;
                let b = bottom.generator_matrices()[g][(0, 0)];
                let t = top.generator_matrices()[g][(0, 0)];
                Matrix::from_data(f, 2, 2, vec![b, x, Scalar::ZERO, t])
            })
            .collect();
        let Ok(m) = Rep::new(group.clone(), f, gens) else {
            continue;
        };
        let mut to_simples = hom_space(&m, top).unwrap().dim();
        if distinct {
            to_simples += hom_space(&m, bottom).unwrap().dim();
        }
        if to_simples == 1 {
            return m;
        }
    }
    panic!("no non-split extension exists");
}
