//! The A4 ⊴ S4 scenario in characteristic 2 over GF(4), built in code.

use std::sync::Arc;

use super::{GroupPair, RemarkFlags};
use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::grouprep::{conjugate_rep, direct_sum, Budget, Rep};
use crate::meataxe::{add_compare, isomorphism};
use crate::permgroup::standard::{alternating4, symmetric4};
use crate::taucalc::Scope;

/// Every verdict of the scenario; the expected values are fixed by
/// `ExampleReport::expected_mismatches`.
#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub small_simple_dims: Vec<usize>,
    pub big_simple_dims: Vec<usize>,
    /// σS ≅ T and σT ≅ S for the odd transversal rep σ.
    pub sigma_s_is_t: bool,
    pub sigma_t_is_s: bool,
    /// The verified isomorphism σS → T.
    pub sigma_witness: Option<Matrix>,
    pub m_invariant: bool,
    pub m_stt: bool,
    pub ind_m_stt: bool,
    pub n_stt: [bool; 2],
    pub n_invariant: [bool; 2],
    pub n_orbit_add_m: [bool; 2],
    pub ind_n_stt: [bool; 2],
    pub st_rigid: bool,
    pub st_stt: bool,
    pub st_orbit_stt: bool,
    pub ind_st_stt: bool,
    pub st_flags: RemarkFlags,
    pub mackey_s: bool,
}

impl ExampleReport {
    /// Names of the verdicts that differ from the worked example.
    pub fn expected_mismatches(&self) -> Vec<&'static str> {
        let checks: [(&'static str, bool); 20] = [
            ("small simple dims", self.small_simple_dims == [1, 1, 1]),
            ("big simple dims", self.big_simple_dims == [1, 2]),
            ("σS ≅ T", self.sigma_s_is_t),
            ("σT ≅ S", self.sigma_t_is_s),
            ("M invariant", self.m_invariant),
            ("M stt", self.m_stt),
            ("Ind M stt", self.ind_m_stt),
            ("N1 stt", self.n_stt[0]),
            ("N2 stt", self.n_stt[1]),
            ("N1 not invariant", !self.n_invariant[0]),
            ("N2 not invariant", !self.n_invariant[1]),
            ("orbit N1 =add M", self.n_orbit_add_m[0]),
            ("orbit N2 =add M", self.n_orbit_add_m[1]),
            ("Ind N1 stt", self.ind_n_stt[0]),
            ("Ind N2 stt", self.ind_n_stt[1]),
            ("[S/T] rigid, not stt", self.st_rigid && !self.st_stt),
            ("orbit [S/T] stt", self.st_orbit_stt),
            ("Ind [S/T] stt", self.ind_st_stt),
            ("[S/T] in rigid set, not tilting set", self.st_flags.in_rig_group && !self.st_flags.in_sta_group),
            ("Res Ind S ≅ S ⊕ T", self.mackey_s),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

/// The pair A4 ⊴ S4 over GF(4).
pub fn a4s4_pair(budget: Budget) -> Result<GroupPair> {
    GroupPair::new(Arc::new(alternating4()), Arc::new(symmetric4()), Field::new(2, 2)?, budget)
}

pub fn example_a4s4(budget: Budget) -> Result<ExampleReport> {
    let pair = a4s4_pair(budget)?;
    example_on(&pair)
}

/// The scenario on a prebuilt pair; S and T are simples 2 and 3.
pub fn example_on(pair: &GroupPair) -> Result<ExampleReport> {
    let a = &pair.small;
    let budget = pair.budget();
    let table = a.simples();
    if table.dims() != [1, 1, 1] {
        return Err(Error::Internal("kA4 does not have three 1-dimensional simples".into()));
    }
    let (k, s, t) = (table.simple(0), table.simple(1), table.simple(2));
    let sum = |parts: &[&Rep]| direct_sum(a.group(), a.field(), parts);

    let sigma = pair
        .transversal
        .reps()
        .iter()
        .find(|x| !a.group().contains(x))
        .ok_or_else(|| Error::Internal("no odd transversal rep".into()))?;
    let sigma_witness = isomorphism(&conjugate_rep(s, sigma)?, t, budget)?;
    let sigma_t_is_s = isomorphism(&conjugate_rep(t, sigma)?, s, budget)?.is_some();

    let ks = pair.stacked(k, s)?;
    let kt = pair.stacked(k, t)?;
    let m = sum(&[k, &ks, &kt])?;
    let n = [sum(&[k, &ks])?, sum(&[k, &kt])?];
    let st = pair.stacked(s, t)?;

    let stt = |x: &Rep| a.is_stt(x, &Scope::All).map(|c| c.stt);
    let ind_stt = |x: &Rep| -> Result<bool> { Ok(pair.big.is_stt(&pair.induce(x)?, &Scope::All)?.stt) };

    let mut n_stt = [false; 2];
    let mut n_invariant = [false; 2];
    let mut n_orbit_add_m = [false; 2];
    let mut ind_n_stt = [false; 2];
    for i in 0..2 {
        n_stt[i] = stt(&n[i])?;
        n_invariant[i] = pair.is_invariant(&n[i])?;
        n_orbit_add_m[i] = add_compare(&pair.orbit_module(&n[i])?, &m, budget)?.equivalent();
        ind_n_stt[i] = ind_stt(&n[i])?;
    }
    let st_cert = a.is_stt(&st, &Scope::All)?;
    let bp = pair.block_pair(0, 0)?;
    let st_flags = pair.remark_classify(&st, Some(&bp))?;
    let res = crate::grouprep::restrict(&pair.induce(s)?, a.group())?;
    let mackey_s = isomorphism(&res, &sum(&[s, t])?, budget)?.is_some();

    Ok(ExampleReport {
        small_simple_dims: table.dims(),
        big_simple_dims: pair.big.simples().dims(),
        sigma_s_is_t: sigma_witness.is_some(),
        sigma_t_is_s,
        sigma_witness,
        m_invariant: pair.is_invariant(&m)?,
        m_stt: stt(&m)?,
        ind_m_stt: ind_stt(&m)?,
        n_stt,
        n_invariant,
        n_orbit_add_m,
        ind_n_stt,
        st_rigid: st_cert.rigid,
        st_stt: st_cert.stt,
        st_orbit_stt: stt(&pair.orbit_module(&st)?)?,
        ind_st_stt: ind_stt(&st)?,
        st_flags,
        mackey_s,
    })
}
