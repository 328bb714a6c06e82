use std::path::{Path, PathBuf};
use std::sync::Arc;

use indtilt_core::blockdec::{blocks, block_of_module, covering_blocks, verify_idempotents, Block};
use indtilt_core::exactfield::{splitting_degree, Field, Matrix};
use indtilt_core::format::{parse_group, parse_pair, parse_rep, parse_rep_header, scalar_text, write_rep};
use indtilt_core::grouprep::{hom_space, restrict, Budget, Rep};
use indtilt_core::meataxe::{decompose, isomorphism, simples_of};
use indtilt_core::permgroup::Group;
use indtilt_core::taucalc::{GroupAlgebra, Scope, SttCertificate, TauMethod};
use indtilt_core::theoremlab::{example_a4s4, BlockPair, GroupPair};
use indtilt_core::Error;
use serde_json::{json, Value};

use crate::report::{InputFile, Report, Status};
use crate::{Cli, Command};

enum Failure {
    Input(String),
    Mismatch(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(m) => Failure::Inconclusive(m),
            Error::Internal(m) => Failure::Mismatch(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<Status, Failure>;

pub fn execute(cli: &Cli) -> Report {
    let mut report = Report::new(cli.command.name(), cli.seed);
    report.param("trials", cli.trials as u64);
    let outcome = Ctx {
        cli,
        budget: Budget {
            seed: cli.seed,
            trials: cli.trials,
            ..Budget::default()
        },
        report: &mut report,
    }
    .dispatch();
    match outcome {
        Ok(s) => report.status = s,
        Err(f) => {
            let (status, msg) = match f {
                Failure::Input(m) => (Status::InputError, m),
                Failure::Mismatch(m) => (Status::Mismatch, m),
                Failure::Inconclusive(m) => (Status::Inconclusive, format!("inconclusive: {m}")),
            };
            // partial verdicts are withheld so nothing stands in for a result
            report.verdicts.clear();
            report.witnesses.clear();
            report.status = status;
            report.error = Some(msg);
        }
    }
    report
}

fn label(i: usize) -> String {
    format!("S{}", i + 1)
}

fn labels(ls: &[usize]) -> Value {
    ls.iter().map(|&i| label(i)).collect::<Vec<_>>().into()
}

fn matrix_rows(x: &Matrix) -> Value {
    let f = x.field();
    (0..x.rows())
        .map(|r| {
            (0..x.cols())
                .map(|c| scalar_text(f, x[(r, c)]))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .into()
}

/// An isomorphism with its exact re-verification.
fn iso_witness(src: &Rep, dst: &Rep, x: &Matrix) -> Value {
    json!({
        "verified": x.is_invertible() && src.is_hom_to(dst, x),
        "dim": x.rows(),
        "matrix": matrix_rows(x),
    })
}

fn certificate(c: &SttCertificate) -> Value {
    json!({
        "stt": c.stt,
        "tau_rigid": c.rigid,
        "summand_classes": c.summand_classes,
        "cosupport": labels(&c.cosupport),
        "scope_size": c.scope_size,
        "hom_to_tau": c.hom_to_tau,
        "tau_dim": c.tau.dim(),
    })
}

fn field_name(f: Field) -> String {
    format!("GF({}^{})", f.characteristic(), f.degree())
}

struct Ctx<'a> {
    cli: &'a Cli,
    budget: Budget,
    report: &'a mut Report,
}

impl Ctx<'_> {
    fn dispatch(&mut self) -> Outcome {
        match &self.cli.command {
            Command::Simples { group } => self.simples(group),
            Command::Pims { group } => self.pims(group),
            Command::Tau { module, output } => self.tau(module, output.as_deref()),
            Command::CheckRigid { module } => self.check_rigid(module),
            Command::CheckStt { module, block } => self.check_stt(module, *block),
            Command::Induce { group_pair, module } => self.induce(group_pair, module),
            Command::Mackey { group_pair, module } => self.mackey(group_pair, module),
            Command::Blocks { group } => self.blocks(group),
            Command::Thm1 { group_pair, module } => self.thm1(group_pair, module),
            Command::Thm2 {
                group_pair,
                module,
                block,
                big_block,
            } => self.thm2(group_pair, module, *block, *big_block),
            Command::Remark {
                group_pair,
                module,
                block,
            } => self.remark(group_pair, module, *block),
            Command::ExampleA4s4 => self.example(),
        }
    }

    fn read(&mut self, role: &str, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.report.inputs.push(InputFile::new(role, &path.display().to_string(), &bytes));
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8 text", path.display())))
    }

    fn located(path: &Path) -> impl Fn(Error) -> Failure + '_ {
        move |e| match e {
            Error::Inconclusive(m) => Failure::Inconclusive(m),
            e => Failure::Input(format!("{}: {e}", path.display())),
        }
    }

    fn group(&mut self, path: &Path) -> Result<Arc<Group>, Failure> {
        let text = self.read("group", path)?;
        Ok(Arc::new(parse_group(&text).map_err(Self::located(path))?))
    }

    fn pair(&mut self, path: &Path) -> Result<(Arc<Group>, Arc<Group>), Failure> {
        let text = self.read("group-pair", path)?;
        let (s, b) = parse_pair(&text).map_err(Self::located(path))?;
        Ok((Arc::new(s), Arc::new(b)))
    }

    /// The module and the path of its group file.
    fn module(&mut self, path: &Path) -> Result<(Rep, PathBuf), Failure> {
        let text = self.read("module", path)?;
        let h = parse_rep_header(&text).map_err(Self::located(path))?;
        let gpath = path.parent().unwrap_or(Path::new("")).join(&h.group_path);
        let g = self.group(&gpath)?;
        let m = parse_rep(&text, g).map_err(Self::located(path))?;
        self.check_field(m.field())?;
        Ok((m, gpath))
    }

    /// A field given on the command line must agree with a module's field.
    fn check_field(&mut self, f: Field) -> Result<(), Failure> {
        if let Some(a) = self.cli.field {
            if a.p != f.characteristic() || a.m.is_some_and(|m| m != f.degree()) {
                return Err(Failure::Input(format!(
                    "--field disagrees with the module field {}",
                    field_name(f)
                )));
            }
        }
        self.report.param("field", field_name(f));
        Ok(())
    }

    fn field_for(&mut self, g: &Group) -> Result<Field, Failure> {
        let p = self.cli.field.map_or(2, |a| a.p);
        let m = self
            .cli
            .field
            .and_then(|a| a.m)
            .unwrap_or_else(|| splitting_degree(p, g.exponent()));
        let f = Field::new(p, m)?;
        self.report.param("field", field_name(f));
        Ok(f)
    }

    fn algebra(&self, m: &Rep) -> Result<GroupAlgebra, Failure> {
        Ok(GroupAlgebra::new(m.group().clone(), m.field(), self.budget)?)
    }

    /// The pair context with the module moved onto the pair's subgroup.
    fn pair_and_module(&mut self, pair: &Path, module: &Path) -> Result<(GroupPair, Rep), Failure> {
        let (small, big) = self.pair(pair)?;
        let (m, _) = self.module(module)?;
        if **m.group() != *small {
            return Err(Failure::Input(
                "the module's group does not match the pair's subgroup generators".into(),
            ));
        }
        let m = Rep::with_dim(small.clone(), m.field(), m.dim(), m.generator_matrices().to_vec())?;
        let p = GroupPair::new(small, big, m.field(), self.budget)?;
        Ok((p, m))
    }

    fn simples(&mut self, group: &Path) -> Outcome {
        let g = self.group(group)?;
        let f = self.field_for(&g)?;
        let table = simples_of(&g, f, &self.budget)?;
        self.report.verdict("count", table.len());
        self.report.verdict("dims", table.dims());
        let names: Vec<String> = (0..table.len()).map(|i| table.label(i)).collect();
        self.report.witness("labels", names);
        Ok(Status::Ok)
    }

    fn pims(&mut self, group: &Path) -> Outcome {
        let g = self.group(group)?;
        let f = self.field_for(&g)?;
        let alg = GroupAlgebra::new(g.clone(), f, self.budget)?;
        let dims: Vec<usize> = alg.pims().pims.iter().map(|p| p.dim()).collect();
        let total: usize = alg.simples().dims().iter().zip(&dims).map(|(s, p)| s * p).sum();
        let covers = alg
            .pims()
            .pims
            .iter()
            .zip(&alg.pims().cover_maps)
            .enumerate()
            .all(|(i, (p, c))| p.is_hom_to(alg.simples().simple(i), c));
        self.report.verdict("pim_dims", dims);
        self.report.verdict("simple_dims", alg.simples().dims());
        self.report.verdict("sum_dim_products", total);
        self.report.verdict("sum_equals_order", total == g.order());
        self.report.witness("cover_maps_verified", covers);
        Ok(if total == g.order() && covers { Status::Ok } else { Status::Mismatch })
    }

    fn tau(&mut self, module: &Path, output: Option<&Path>) -> Outcome {
        let (m, gpath) = self.module(module)?;
        let alg = self.algebra(&m)?;
        let x = alg.tau(&m, TauMethod::Omega2)?;
        let y = alg.tau(&m, TauMethod::DTr)?;
        let iso = isomorphism(&x, &y, &self.budget)?;
        self.report.verdict("dim_omega2", x.dim());
        self.report.verdict("dim_dtr", y.dim());
        self.report.verdict("methods_agree", iso.is_some());
        if let Some(w) = &iso {
            self.report.witness("isomorphism", iso_witness(&x, &y, w));
        }
        if let Some(out) = output {
            let gp = std::fs::canonicalize(&gpath).unwrap_or(gpath);
            std::fs::write(out, write_rep(&x, &gp.display().to_string()))
                .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
        }
        Ok(if iso.is_some() { Status::Ok } else { Status::Mismatch })
    }

    fn check_rigid(&mut self, module: &Path) -> Outcome {
        let (m, _) = self.module(module)?;
        let alg = self.algebra(&m)?;
        let tau = alg.tau(&m, TauMethod::Omega2)?;
        let hom = hom_space(&m, &tau)?.dim();
        self.report.verdict("tau_rigid", hom == 0);
        self.report.verdict("tau_dim", tau.dim());
        self.report.witness("hom_to_tau", hom);
        Ok(Status::Ok)
    }

    fn block_scope(alg: &GroupAlgebra, block: Option<usize>) -> Result<(Scope, Option<Vec<Block>>), Failure> {
        match block {
            None => Ok((Scope::All, None)),
            Some(b) => {
                let bs = blocks(alg)?;
                let chosen = b
                    .checked_sub(1)
                    .and_then(|i| bs.get(i))
                    .ok_or_else(|| Failure::Input(format!("block {b} does not exist; there are {}", bs.len())))?;
                Ok((Scope::Block(chosen.simple_labels.clone()), Some(bs)))
            }
        }
    }

    fn check_stt(&mut self, module: &Path, block: Option<usize>) -> Outcome {
        let (m, _) = self.module(module)?;
        let alg = self.algebra(&m)?;
        let (scope, _) = Self::block_scope(&alg, block)?;
        if let Scope::Block(ls) = &scope {
            self.report.param("block", block.unwrap_or(0) as u64);
            self.report.witness("block_simples", labels(ls));
        }
        let c = alg.is_stt(&m, &scope)?;
        self.report.verdict("stt", c.stt);
        self.report.verdict("tau_rigid", c.rigid);
        self.report.verdict("summand_classes", c.summand_classes);
        self.report.verdict("cosupport", labels(&c.cosupport));
        self.report.verdict("scope_size", c.scope_size);
        self.report.witness("hom_to_tau", c.hom_to_tau);
        self.report.witness("tau_dim", c.tau.dim());
        Ok(Status::Ok)
    }

    fn induce(&mut self, pair: &Path, module: &Path) -> Outcome {
        let (p, m) = self.pair_and_module(pair, module)?;
        let ind = p.induce(&m)?;
        let d = decompose(&ind, &self.budget)?;
        let summands: Vec<Value> = d
            .summands
            .iter()
            .map(|(x, k)| json!({"dim": x.dim(), "multiplicity": k, "composition": labels(&p.big.simples().chop(x, &self.budget).unwrap_or_default())}))
            .collect();
        self.report.verdict("dim", ind.dim());
        self.report.verdict("summand_classes", d.class_count());
        self.report.verdict("summands", summands);
        let reassembled = d.reassemble(&ind)?;
        self.report
            .witness("decomposition_verified", d.witness.is_invertible() && ind.is_hom_to(&reassembled, &d.witness.inverse().expect("checked")));
        Ok(Status::Ok)
    }

    fn mackey(&mut self, pair: &Path, module: &Path) -> Outcome {
        let (p, m) = self.pair_and_module(pair, module)?;
        let res = restrict(&p.induce(&m)?, p.small.group())?;
        let orbit = p.orbit_module(&m)?;
        let iso = isomorphism(&res, &orbit, &self.budget)?;
        self.report.verdict("res_ind_is_orbit_sum", iso.is_some());
        self.report.verdict("dim", res.dim());
        if let Some(x) = &iso {
            self.report.witness("isomorphism", iso_witness(&res, &orbit, x));
        }
        Ok(if iso.is_some() { Status::Ok } else { Status::Mismatch })
    }

    fn blocks(&mut self, group: &Path) -> Outcome {
        let g = self.group(group)?;
        let f = self.field_for(&g)?;
        let alg = GroupAlgebra::new(g.clone(), f, self.budget)?;
        let bs = blocks(&alg)?;
        let ok = verify_idempotents(&g, f, &bs);
        self.report.verdict("count", bs.len());
        self.report.verdict("idempotents_verified", ok);
        for (i, b) in bs.iter().enumerate() {
            self.report.verdict(
                &format!("B{}", i + 1),
                json!({"simples": labels(&b.simple_labels), "principal": b.is_principal()}),
            );
            let coeffs: Vec<String> = b.idempotent.iter().map(|&c| scalar_text(f, c)).collect();
            self.report.witness(&format!("B{}_idempotent", i + 1), coeffs.join(","));
        }
        Ok(if ok { Status::Ok } else { Status::Mismatch })
    }

    fn thm1(&mut self, pair: &Path, module: &Path) -> Outcome {
        let (p, m) = self.pair_and_module(pair, module)?;
        let v = p.check_theorem1(&m)?;
        self.report.verdict("lhs", v.lhs);
        self.report.verdict("rhs", v.rhs);
        self.report.verdict("agree", v.agree);
        self.report.verdict("tau_rigid", v.rigid);
        self.report.witness("induced", certificate(&v.induced));
        self.report.witness("orbit_sum", certificate(&v.orbit));
        Ok(if v.agree { Status::Ok } else { Status::Mismatch })
    }

    fn small_block(p: &GroupPair, m: &Rep, block: Option<usize>) -> Result<usize, Failure> {
        match block {
            Some(b) if b >= 1 && b <= p.small_blocks.len() => Ok(b - 1),
            Some(b) => Err(Failure::Input(format!(
                "block {b} does not exist; there are {}",
                p.small_blocks.len()
            ))),
            None => Ok(block_of_module(m, &p.small_blocks)?),
        }
    }

    fn covering(p: &GroupPair, b: usize) -> Result<Vec<usize>, Failure> {
        Ok(covering_blocks(
            &p.small_blocks[b],
            p.small.group(),
            p.big.group(),
            &p.big_blocks,
            p.field(),
        )?)
    }

    fn thm2(&mut self, pair: &Path, module: &Path, block: Option<usize>, big_block: Option<usize>) -> Outcome {
        let (p, m) = self.pair_and_module(pair, module)?;
        let b = Self::small_block(&p, &m, block)?;
        let targets = match big_block {
            Some(bb) if bb >= 1 && bb <= p.big_blocks.len() => vec![bb - 1],
            Some(bb) => {
                return Err(Failure::Input(format!(
                    "big block {bb} does not exist; there are {}",
                    p.big_blocks.len()
                )))
            }
            None => Self::covering(&p, b)?,
        };
        self.report.verdict("block", format!("B{}", b + 1));
        let mut all = true;
        for bb in targets {
            let bp = p.block_pair(b, bb)?;
            let v = p.check_theorem2(&m, &bp)?;
            all &= v.agree;
            self.report.verdict(
                &format!("big_B{}", bb + 1),
                json!({"lhs": v.lhs, "rhs": v.rhs, "agree": v.agree, "tau_rigid": v.rigid}),
            );
            self.report.witness(
                &format!("big_B{}", bb + 1),
                json!({
                    "inertial_order": bp.inertial.order(),
                    "fong_reynolds_block": bp.beta + 1,
                    "induced": certificate(&v.induced),
                    "orbit_sum": certificate(&v.orbit),
                }),
            );
        }
        Ok(if all { Status::Ok } else { Status::Mismatch })
    }

    fn remark(&mut self, pair: &Path, module: &Path, block: Option<usize>) -> Outcome {
        let (p, m) = self.pair_and_module(pair, module)?;
        let b = Self::small_block(&p, &m, block)?;
        let cover = Self::covering(&p, b)?;
        let bb = *cover
            .first()
            .ok_or_else(|| Failure::Mismatch("no block of the big group covers the chosen block".into()))?;
        let bp: BlockPair = p.block_pair(b, bb)?;
        let f = p.remark_classify(&m, Some(&bp))?;
        self.report.verdict("in_rig_group", f.in_rig_group);
        self.report.verdict("in_sta_group", f.in_sta_group);
        self.report.verdict("in_rig_block", f.in_rig_block.unwrap_or(false));
        self.report.verdict("in_sta_block", f.in_sta_block.unwrap_or(false));
        self.report.verdict("block", format!("B{}", b + 1));
        Ok(Status::Ok)
    }

    fn example(&mut self) -> Outcome {
        if let Some(a) = self.cli.field {
            if a.p != 2 || a.m.is_some_and(|m| m != 2) {
                return Err(Failure::Input("the built-in scenario runs over GF(2^2)".into()));
            }
        }
        self.report.param("field", "GF(2^2)");
        let r = example_a4s4(self.budget)?;
        let v = |rep: &mut Report, k: &str, x: bool| rep.verdict(k, x);
        let rep = &mut *self.report;
        rep.verdict("small_simple_dims", r.small_simple_dims.clone());
        rep.verdict("big_simple_dims", r.big_simple_dims.clone());
        v(rep, "sigma_S_iso_T", r.sigma_s_is_t);
        v(rep, "sigma_T_iso_S", r.sigma_t_is_s);
        v(rep, "M_invariant", r.m_invariant);
        v(rep, "M_stt", r.m_stt);
        v(rep, "Ind_M_stt", r.ind_m_stt);
        for i in 0..2 {
            v(rep, &format!("N{}_stt", i + 1), r.n_stt[i]);
            v(rep, &format!("N{}_invariant", i + 1), r.n_invariant[i]);
            v(rep, &format!("N{}_orbit_add_M", i + 1), r.n_orbit_add_m[i]);
            v(rep, &format!("Ind_N{}_stt", i + 1), r.ind_n_stt[i]);
        }
        v(rep, "ST_tau_rigid", r.st_rigid);
        v(rep, "ST_stt", r.st_stt);
        v(rep, "ST_orbit_stt", r.st_orbit_stt);
        v(rep, "Ind_ST_stt", r.ind_st_stt);
        v(rep, "ST_in_rig_group", r.st_flags.in_rig_group);
        v(rep, "ST_in_sta_group", r.st_flags.in_sta_group);
        v(rep, "ST_in_rig_block", r.st_flags.in_rig_block.unwrap_or(false));
        v(rep, "ST_in_sta_block", r.st_flags.in_sta_block.unwrap_or(false));
        v(rep, "Res_Ind_S_iso_S_plus_T", r.mackey_s);
        let miss = r.expected_mismatches();
        rep.verdict("expected_all", miss.is_empty());
        rep.witness("mismatches", miss.clone());
        if let Some(w) = &r.sigma_witness {
            rep.witness("sigma_S_to_T", json!({"dim": w.rows(), "matrix": matrix_rows(w)}));
        }
        Ok(if miss.is_empty() { Status::Ok } else { Status::Mismatch })
    }
}
