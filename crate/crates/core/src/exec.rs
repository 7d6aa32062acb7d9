//! Runs a parsed plan against a mutable ring/module context.

use std::fs;

use crate::classify::{check_lattice_witness, check_witness, classify_submodule, SubmoduleVerdict, WitnessReport};
use crate::dsl::{render_generators, Format, Plan, Statement};
use crate::error::{Error, Result};
use crate::harness::{default_family, find_counterexample, run_suite, CheckId, Instance};
use crate::intlattice::IntegerLattice;
use crate::module::{Module, ModuleSpec, Submodule};
use crate::multiplication::{is_faithful, is_multiplication_smith, MaximalStatus};
use crate::radicals::{rad1_submodule, rad_submodule};
use crate::render::{lattice_dot, render_dot, render_records, render_text, Record, Section};
use crate::ring::{build_ring, RingSpec};
use crate::Limits;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub limits: Limits,
    /// Family for `suite` and `counterexample`; the built-in one when unset.
    pub family: Option<Vec<Instance>>,
}

#[derive(Clone, Debug, Default)]
pub struct Output {
    pub sections: Vec<Section>,
    /// Last `format` statement of the script, if any.
    pub format: Option<Format>,
    /// The error that stopped execution.
    pub error: Option<Error>,
    pub failed: bool,
    pub cap_exceeded: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => render_text(&self.sections),
            Format::Records => render_records(&self.sections),
            Format::Dot => render_dot(&self.sections),
        }
    }

    /// 0 clean, 1 usage or domain error, 2 a check failed, 3 a cap was hit.
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(Error::CapExceeded { .. }) => 3,
            Some(_) => 1,
            None if self.failed => 2,
            None if self.cap_exceeded => 3,
            None => 0,
        }
    }
}

struct Context<'a> {
    opts: &'a Options,
    ring: Option<RingSpec>,
    module: Option<(ModuleSpec, Module)>,
}

pub fn execute(plan: &Plan, opts: &Options) -> Output {
    let mut out = Output::default();
    let mut cx = Context {
        opts,
        ring: None,
        module: None,
    };
    for st in &plan.statements {
        if let Statement::Format(f) = st {
            out.format = Some(*f);
            continue;
        }
        match cx.step(st, &mut out) {
            Ok(section) => out.sections.push(section),
            Err(e) => {
                out.error = Some(e);
                break;
            }
        }
    }
    out
}

fn verdict_witnesses(m: &Module, v: &SubmoduleVerdict) -> [Option<String>; 3] {
    let s = m.scalars();
    let triple = |w: [u32; 3]| format!("({}, {}, {})", s.label(w[0]), s.label(w[1]), m.label(w[2]));
    [
        v.prime_witness
            .map(|[r, x]| format!("({}, {})", s.label(r), m.label(x))),
        v.one_absorbing_witness.map(triple),
        v.two_absorbing_witness.map(triple),
    ]
}

fn classify_record(m: &Module, n: &Submodule, v: &SubmoduleVerdict) -> Record {
    let [pw, ow, tw] = verdict_witnesses(m, v);
    Record::Classify {
        instance: m.description(),
        submodule: m.submodule_label(n),
        size: n.len(),
        prime: v.prime(),
        one_absorbing: v.one_absorbing(),
        two_absorbing: v.two_absorbing(),
        prime_witness: pw,
        one_absorbing_witness: ow,
        two_absorbing_witness: tw,
    }
}

fn witness_record(instance: String, submodule: String, w: WitnessReport) -> Record {
    let refutes = w.refutes();
    Record::Witness {
        instance,
        submodule,
        a: w.a,
        b: w.b,
        m: w.m,
        a_nonunit: w.a_nonunit,
        b_nonunit: w.b_nonunit,
        abm_in_n: w.abm_in_n,
        residue: w.residue,
        ab_in_residue: w.ab_in_residue,
        m_in_n: w.m_in_n,
        refutes,
    }
}

fn parse_int(token: &str) -> Result<i64> {
    token
        .trim()
        .parse()
        .map_err(|_| Error::UnknownElement(token.to_string()))
}

/// `(x1,...,xk)` or a bare integer for rank one.
fn parse_vector(token: &str) -> Result<Vec<i64>> {
    let t = token.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    inner.split(',').map(parse_int).collect()
}

impl Context<'_> {
    fn module(&self) -> Result<&Module> {
        self.module
            .as_ref()
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Usage("no module declared".into()))
    }

    fn span(&self, gens: &[String]) -> Result<Submodule> {
        let m = self.module()?;
        let ids = gens
            .iter()
            .map(|g| m.parse_element(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(m.span(ids))
    }

    fn family(&self) -> Vec<Instance> {
        self.opts.family.clone().unwrap_or_else(default_family)
    }

    fn step(&mut self, st: &Statement, out: &mut Output) -> Result<Section> {
        let limits = &self.opts.limits;
        let mut section = Section::default();
        match st {
            Statement::Ring(spec) => {
                build_ring(spec, limits)?;
                self.ring = Some(spec.clone());
                self.module = None;
            }
            Statement::Module(spec) => {
                let ring = self
                    .ring
                    .clone()
                    .ok_or_else(|| Error::Usage("module declared before ring".into()))?;
                let m = Instance::new(ring, spec.clone()).build(limits)?;
                self.module = Some((spec.clone(), m));
            }
            Statement::Classify(None) => {
                let m = self.module()?;
                let a = m.analysis()?;
                section.records = a.proper().map(|(n, v)| classify_record(m, n, v)).collect();
                section.graph = Some(lattice_dot(m)?);
            }
            Statement::Classify(Some(gens)) => {
                let n = self.span(gens)?;
                let m = self.module()?;
                let v = classify_submodule(m, &n)?;
                section.records.push(classify_record(m, &n, &v));
            }
            Statement::Rad(gens) => {
                let n = self.span(gens)?;
                let m = self.module()?;
                let r = rad_submodule(m, &n)?;
                section.records.push(Record::Radical {
                    instance: m.description(),
                    operator: "rad".into(),
                    input: m.submodule_label(&n),
                    omega: None,
                    result: m.submodule_label(&r),
                });
            }
            Statement::Rad1(gens) => {
                let n = self.span(gens)?;
                let m = self.module()?;
                let r = rad1_submodule(m, &n)?;
                section.records.push(Record::Radical {
                    instance: m.description(),
                    operator: "rad1".into(),
                    input: m.submodule_label(&n),
                    omega: Some(r.omega.iter().map(|p| m.submodule_label(p)).collect()),
                    result: m.submodule_label(&r.result),
                });
            }
            Statement::Multiplication => {
                let m = self.module()?;
                let rep = is_multiplication_smith(m)?;
                let maximal = rep
                    .per_maximal
                    .iter()
                    .map(|c| match &c.status {
                        MaximalStatus::Torsion => format!("{} torsion", c.label),
                        MaximalStatus::Cyclic(cert) => {
                            format!("{} cyclic q={} m={}", c.label, cert.q_label, m.label(cert.m))
                        }
                        MaximalStatus::Neither => format!("{} neither", c.label),
                    })
                    .collect();
                section.records.push(Record::Multiplication {
                    instance: m.description(),
                    faithful: is_faithful(m),
                    multiplication: rep.direct(),
                    witness: rep.direct_witness.as_ref().map(|n| m.submodule_label(n)),
                    smith: rep.smith(),
                    maximal,
                });
            }
            Statement::Suite(ids) => {
                let family = match (&self.opts.family, &self.ring, &self.module) {
                    (Some(f), _, _) => f.clone(),
                    (None, Some(r), Some((spec, _))) => vec![Instance::new(r.clone(), spec.clone())],
                    _ => default_family(),
                };
                let ids = ids.clone().unwrap_or_else(|| CheckId::ALL.to_vec());
                let report = run_suite(&family, &ids, limits);
                for r in &report.results {
                    section.records.push(Record::Check {
                        instance: r.instance.clone(),
                        check: r.check.as_str().into(),
                        status: r.status.keyword().into(),
                        combos: r.combos,
                        detail: r.detail(),
                    });
                }
                section.records.push(Record::Suite {
                    cells: report.results.len(),
                    pass: report.count("pass"),
                    fail: report.count("fail"),
                    skipped: report.count("skipped"),
                    error: report.count("error"),
                });
                out.failed |= report.failures().next().is_some();
                out.cap_exceeded |= report.cap_exceeded();
            }
            Statement::Witness {
                a,
                b,
                m: v,
                generators,
            } => {
                let record = match &self.module {
                    Some((_, m)) => {
                        let n = self.span(generators)?;
                        let w = check_witness(m, &n, a, b, v, false)?;
                        witness_record(m.description(), m.submodule_label(&n), w)
                    }
                    None => {
                        let v = parse_vector(v)?;
                        let gens = generators
                            .iter()
                            .map(|g| parse_vector(g))
                            .collect::<Result<Vec<_>>>()?;
                        let lattice = IntegerLattice::new(v.len(), gens)?;
                        let w = check_lattice_witness(&lattice, parse_int(a)?, parse_int(b)?, &v, false)?;
                        witness_record(
                            format!("Z^{} over Z", v.len()),
                            render_generators(generators),
                            w,
                        )
                    }
                };
                section.records.push(record);
            }
            Statement::Counterexample(claim) => {
                let rep = find_counterexample(*claim, &self.family(), limits);
                let w = rep.witness.as_ref();
                section.records.push(Record::Counterexample {
                    claim: claim.as_str().into(),
                    found: w.is_some(),
                    documented: rep.documented,
                    instance: w.map(|h| h.instance.clone()),
                    submodule: w.map(|h| h.submodule.clone()),
                    detail: w.map(|h| h.detail.clone()),
                    first_in_order: rep
                        .first_in_order
                        .as_ref()
                        .map(|h| format!("{} in {}", h.submodule, h.instance)),
                    refutations: rep.refutations,
                    examined: rep.examined,
                });
            }
            Statement::EmitDot(path) => {
                let m = self.module()?;
                let dot = lattice_dot(m)?;
                fs::write(path, &dot)?;
                section.records.push(Record::Emit {
                    instance: m.description(),
                    path: path.clone(),
                    nodes: m.enumerate_submodules()?.len(),
                });
            }
            Statement::Format(_) => unreachable!("handled by execute"),
        }
        Ok(section)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(script: &str) -> Output {
        execute(&Plan::parse(script).unwrap(), &Options::default())
    }

    #[test]
    fn rad1_of_six() {
        let out = run("ring integers\nmodule znz 30\nrad1 <6>");
        assert_eq!(out.exit_code(), 0);
        assert_eq!(
            out.sections[2].records[0],
            Record::Radical {
                instance: "Z_30 over Z".into(),
                operator: "rad1".into(),
                input: "<6>".into(),
                omega: Some(vec!["<3>".into(), "<2>".into()]),
                result: "<6>".into(),
            }
        );
    }

    #[test]
    fn lattice_witness_without_module() {
        let out = run("witness 3 2 (1,0) in <(3,0)>");
        match &out.sections[0].records[0] {
            Record::Witness {
                refutes, residue, ..
            } => {
                assert!(*refutes);
                assert_eq!(residue, "(0)");
            }
            r => panic!("unexpected {r:?}"),
        }
    }

    #[test]
    fn module_needs_ring() {
        let out = run("module regular");
        assert_eq!(out.exit_code(), 1);
        assert!(out.sections.is_empty());
    }

    #[test]
    fn classify_six_in_z30() {
        let out = run("ring integers\nmodule znz 30\nclassify <6>");
        match &out.sections[2].records[0] {
            Record::Classify {
                one_absorbing,
                two_absorbing,
                one_absorbing_witness,
                ..
            } => {
                assert!(!one_absorbing && *two_absorbing);
                assert_eq!(one_absorbing_witness.as_deref(), Some("(2, 2, 3)"));
            }
            r => panic!("unexpected {r:?}"),
        }
    }
}
