//! The task runner.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::category::{AddCategory, EMorphism};
use crate::checks::{compare_structures, dense_extension_check, dualize, induce_functor, left_abelian_witness, left_envelope, FunctorData};
use crate::envelope::{check_embedding, construct_envelope, ext_coherence_report, CheckReport, Envelope, Verdict};
use crate::error::{Error, Result};
use crate::exact::{validate_structure, Bounds, ExactStructure};
use crate::homological::{random_module, small_indecomposables};
use crate::module::hom_dim;
use crate::quotient::{gabriel_hom, is_def_closed, is_lex};

use super::dual::dualize_input;
use super::input::{resolve, to_json, Resolved, TaskDecl, WorkbenchInput};
use super::report::{RunReport, TaskError, TaskOutcome};

/// Overrides applied to every task.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub depth: Option<usize>,
    pub seed: Option<u64>,
}

pub fn input_digest(input: &WorkbenchInput) -> String {
    hex::encode(Sha256::digest(to_json(input).as_bytes()))
}

/// Every check applicable to a structure, in a fixed order.
pub fn full_suite(structure: &str) -> Vec<TaskDecl> {
    [
        "validate",
        "envelope",
        "check:embedding",
        "check:ext-coherence",
        "check:dense",
        "check:universal",
        "check:lex",
        "check:gabriel",
        "check:left-abelian",
        "dualize",
    ]
    .iter()
    .map(|op| TaskDecl { op: op.to_string(), structure: Some(structure.to_string()), params: None })
    .collect()
}

pub fn run_tasks(input: &WorkbenchInput, opts: RunOptions) -> Result<RunReport> {
    let start = Instant::now();
    let resolved = resolve(input)?;
    let seed = opts.seed.unwrap_or(0);
    let mut tasks = Vec::new();
    for (index, decl) in input.tasks.iter().enumerate() {
        let t0 = Instant::now();
        let params = decl.params.clone().unwrap_or_default();
        let depth = params.depth.or(opts.depth);
        let task_seed = params.seed.or(opts.seed).unwrap_or(0).wrapping_add(index as u64);
        let ctx = TaskCtx { input, resolved: &resolved, decl, depth, seed: task_seed, samples: params.samples };
        let outcome = match ctx.run() {
            Ok((checks, summary)) => {
                let verdict = Verdict::all(checks.iter().map(|c| c.verdict));
                (verdict, None, checks, summary)
            }
            Err(e) => {
                let verdict = if matches!(e, Error::SearchExhausted(_)) { Verdict::Inconclusive } else { Verdict::Fail };
                (verdict, Some(TaskError { code: e.code().to_string(), message: e.to_string() }), Vec::new(), None)
            }
        };
        let (verdict, error, mut checks, summary) = outcome;
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        tasks.push(TaskOutcome {
            index,
            op: decl.op.clone(),
            structure: decl.structure.clone(),
            verdict,
            error,
            checks,
            summary,
            millis: t0.elapsed().as_millis() as u64,
        });
    }
    Ok(RunReport {
        tool: "envlab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: input.name.clone(),
        input_sha256: input_digest(input),
        seed,
        verdict: Verdict::all(tasks.iter().map(|t| t.verdict)),
        tasks,
        millis: start.elapsed().as_millis() as u64,
    })
}

struct TaskCtx<'a> {
    input: &'a WorkbenchInput,
    resolved: &'a Resolved,
    decl: &'a TaskDecl,
    depth: Option<usize>,
    seed: u64,
    samples: Option<usize>,
}

type TaskResult = Result<(Vec<CheckReport>, Option<Value>)>;

impl TaskCtx<'_> {
    fn cat(&self) -> &AddCategory {
        &self.resolved.category
    }

    fn bounds(&self) -> Bounds {
        match self.depth {
            Some(d) => Bounds::with_depth(self.cat(), d),
            None => Bounds::default_for(self.cat()),
        }
    }

    fn structure(&self) -> &ExactStructure {
        let name = self.decl.structure.as_ref().expect("resolved task names a structure");
        &self.resolved.structures[name]
    }

    fn envelope(&self) -> Result<Envelope> {
        construct_envelope(self.cat(), self.structure(), self.bounds())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn run(&self) -> TaskResult {
        match self.decl.op.as_str() {
            "validate" => self.validate(),
            "envelope" => self.envelope_summary(),
            "compare" => self.compare(),
            "dualize" => self.dualize(),
            "check:embedding" => Ok((vec![check_embedding(&self.envelope()?)], None)),
            "check:ext-coherence" => Ok((vec![ext_coherence_report(&self.envelope()?)], None)),
            "check:dense" => self.dense(),
            "check:universal" => self.universal(),
            "check:lex" => self.lex(),
            "check:gabriel" => self.gabriel(),
            "check:left-abelian" => self.left_abelian(),
            op => unreachable!("unknown op {op} survived resolution"),
        }
    }

    fn validate(&self) -> TaskResult {
        let names: Vec<&String> = match &self.decl.structure {
            Some(s) => vec![s],
            None => self.resolved.structures.keys().collect(),
        };
        let mut out = Vec::new();
        for name in names {
            let s = &self.resolved.structures[name];
            let start = Instant::now();
            let v = validate_structure(self.cat(), s, self.bounds());
            let mut rep = CheckReport::new(format!("validate:{name}"));
            rep.instances = v.instances;
            if !v.failures.is_empty() {
                rep.verdict = Verdict::Fail;
            } else if !v.inconclusive.is_empty() {
                rep.verdict = Verdict::Inconclusive;
            }
            rep.counterexamples = v.failures;
            rep.inconclusive = v.inconclusive;
            rep.millis = start.elapsed().as_millis() as u64;
            out.push(rep);
        }
        Ok((out, None))
    }

    fn envelope_summary(&self) -> TaskResult {
        let env = self.envelope()?;
        let e = self.cat();
        let gens = e.generators();
        let images: Vec<_> = gens.iter().map(|g| env.embed(g)).collect();
        let image_table: Vec<Vec<usize>> = images.iter().map(|m| images.iter().map(|n| hom_dim(n, m)).collect()).collect();
        let dims: serde_json::Map<String, Value> =
            gens.iter().zip(&images).map(|(g, m)| (e.describe(g), json!(m.dims()))).collect();
        let ends: serde_json::Map<String, Value> =
            gens.iter().zip(&images).map(|(g, m)| (e.describe(g), json!(hom_dim(m, m)))).collect();
        let summary = json!({
            "gamma_dim": e.gamma().dim(),
            "simples": e.n(),
            "def_simples": env.def.labels(),
            "corner_dim": env.corner_dim(),
            "corner_simples": env.quotient.keep.len(),
            "hom_table": e.hom_table(),
            "image_hom_table": image_table,
            "embedding_dims": dims,
            "embedding_end_dims": ends,
        });
        let mut rep = CheckReport::new("envelope");
        rep.check(image_table == e.hom_table(), "hom dimensions preserved by i_R");
        rep.instances = 1;
        Ok((vec![rep], Some(summary)))
    }

    fn compare(&self) -> TaskResult {
        let with = self.decl.params.as_ref().and_then(|p| p.with.as_ref()).expect("resolved compare names a second structure");
        let rep = compare_structures(self.cat(), self.structure(), &self.resolved.structures[with], self.bounds())?;
        Ok((vec![rep], None))
    }

    fn dualize(&self) -> TaskResult {
        let e = self.cat();
        let s = self.structure();
        let start = Instant::now();
        let mut rep = CheckReport::new("dualize");
        let (op, sop) = dualize(e, s);
        let (back, sback) = dualize(&op, &sop);
        rep.check(back == *e && sback == *s, "category-level duality is an involution");
        let once = dualize_input(self.input);
        let twice = dualize_input(&once);
        rep.check(to_json(&twice) == to_json(self.input), "input-level duality is an involution");
        let env = left_envelope(e, s, self.bounds());
        rep.millis = start.elapsed().as_millis() as u64;
        let summary = json!({
            "dual_corner_dim": env.corner_dim(),
            "dual_def_simples": env.def.labels(),
        });
        Ok((vec![rep], Some(summary)))
    }

    fn dense(&self) -> TaskResult {
        let env = self.envelope()?;
        let start = Instant::now();
        let mut rep = CheckReport::new("dense-extension");
        for m in small_indecomposables(&env.quotient.corner) {
            let mut r = dense_extension_check(&env, &m);
            r.name = format!("module {:?}", m.dims());
            rep.absorb(r);
        }
        rep.millis = start.elapsed().as_millis() as u64;
        Ok((vec![rep], None))
    }

    fn universal(&self) -> TaskResult {
        let env = self.envelope()?;
        let modules = small_indecomposables(&env.quotient.corner);
        let mut out = Vec::new();
        let (_, mut rep) = induce_functor(&env, &FunctorData::embedding(&env), &modules)?;
        rep.name = "universal:i_R".into();
        out.push(rep);
        if let Some(f) = FunctorData::inclusion(self.cat()) {
            let (_, mut rep) = induce_functor(&env, &f, &modules)?;
            rep.name = "universal:inclusion".into();
            out.push(rep);
        }
        Ok((out, None))
    }

    fn lex(&self) -> TaskResult {
        let env = self.envelope()?;
        let start = Instant::now();
        let mut rep = CheckReport::new("lex-def-closed");
        for m in small_indecomposables(self.cat().gamma()) {
            let a = is_lex(self.cat(), self.structure(), &m);
            let b = is_def_closed(self.cat(), &env.def, &m);
            rep.check(a == b, format!("module {:?}: lex {a}, def-closed {b}", m.dims()));
        }
        rep.millis = start.elapsed().as_millis() as u64;
        Ok((vec![rep], None))
    }

    fn gabriel(&self) -> TaskResult {
        let env = self.envelope()?;
        let start = Instant::now();
        let mut rng = self.rng();
        let mut rep = CheckReport::new("gabriel-hom");
        let gamma = self.cat().gamma();
        for k in 0..self.samples.unwrap_or(100) {
            let m = random_module(gamma, &mut rng);
            let n = random_module(gamma, &mut rng);
            let lhs = gabriel_hom(&env.def, &m, &n);
            let rhs = hom_dim(&env.quotient.apply(&m), &env.quotient.apply(&n));
            rep.check(lhs == rhs, format!("pair #{k} {:?} {:?}: {lhs} vs {rhs}", m.dims(), n.dims()));
        }
        rep.witnesses.clear();
        rep.millis = start.elapsed().as_millis() as u64;
        Ok((vec![rep], None))
    }

    fn left_abelian(&self) -> TaskResult {
        let env = self.envelope()?;
        let e = self.cat();
        let start = Instant::now();
        let mut rng = self.rng();
        let mut rep = CheckReport::new("left-abelian");
        let gens = e.generators();
        for x in &gens {
            for y in &gens {
                for f in e.hom_basis(x, y) {
                    let fm = env.embed_map(&f);
                    for z in &gens {
                        // g = f ∘ h for a random h, so coker(f) ∘ g = 0
                        let basis = e.hom_basis(z, x);
                        if basis.is_empty() {
                            continue;
                        }
                        let h = random_combination(e, &basis, &mut rng);
                        let g = env.embed_map(&e.compose(&f, &h));
                        let label = format!("{} -> {} via {}", e.describe(x), e.describe(y), e.describe(z));
                        match left_abelian_witness(&fm, &g) {
                            Ok((d, h2)) => {
                                rep.check(d.is_surjective() && fm.compose(&h2) == g.compose(&d), label);
                            }
                            Err(err) => rep.record(Verdict::Fail, format!("{label}: {err}")),
                        }
                    }
                }
            }
        }
        rep.millis = start.elapsed().as_millis() as u64;
        Ok((vec![rep], None))
    }
}

fn random_combination(e: &AddCategory, basis: &[EMorphism], rng: &mut ChaCha8Rng) -> EMorphism {
    let f = e.field();
    let mut acc = e.zero(basis[0].source(), basis[0].target());
    for b in basis {
        let c = if rng.gen_bool(0.8) { f.random(rng) } else { f.zero() };
        acc = e.add(&acc, &e.scale(b, &c));
    }
    acc
}
