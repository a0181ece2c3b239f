use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::battery::{relation_words, run_borel_relations};
use super::golden::{
    index_rank_one, parse_factor, parse_labels, parse_monomial, parse_nodes, Example, FlipForms, GoldenExample,
    GoldenFigure,
};
use super::random::{random_oracle_pair, random_seed};
use super::{CheckRecord, Outcome, VerificationReport};
use crate::basic_quiver::{
    assemble_borel, build_basic_seed, f_path, glue_flip, glue_tensor_square, BorelMode, EPathRegistry, PathPolynomial,
};
use crate::dilog_series::{closed_form_matches_oracle, OracleRegistry, DEFAULT_ORDER};
use crate::error::{Error, Result};
use crate::lie_data::{Rat, ReducedWord};
use crate::mutation_engine::{
    build_phi, derive_mutation_sequence, dilog_factorize_path, monomial_transform, verify_flip, FlipReport, FracElement,
    MutationSequence, PhiKind, PhiOperator, QuantumMutation,
};
use crate::polarization::{
    equal_up_to_commuting_swaps, normalization_shift, polarize, render_phi_operators, AffineShift, LinearForm,
    NormalizationGoal, Polarization, PolarizationMode, RenderedFactor,
};
use crate::qtorus::{LatticeVector, Torus, TorusElement};
use crate::seed_quiver::ClusterSeed;

/// Shared parameters for a verification run.
#[derive(Clone, Debug)]
pub struct CheckContext {
    /// Truncation order of the dilogarithm series oracle.
    pub order: usize,
    /// Seed of the randomized checks.
    pub seed: u64,
    /// Number of randomized samples.
    pub samples: usize,
    pub golden_dir: Option<PathBuf>,
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext { order: DEFAULT_ORDER, seed: 2024, samples: 100, golden_dir: None }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &str;
    fn suite(&self) -> &str;
    /// Acceptance criterion executed by this check, if any.
    fn criterion(&self) -> Option<u8> {
        None
    }
    fn limit(&self) -> Option<Duration> {
        None
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome>;
}

/// A check backed by a plain function.
pub struct FnCheck {
    pub name: String,
    pub suite: String,
    pub criterion: Option<u8>,
    pub limit: Option<Duration>,
    pub body: fn(&CheckContext) -> Result<Outcome>,
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        &self.name
    }
    fn suite(&self) -> &str {
        &self.suite
    }
    fn criterion(&self) -> Option<u8> {
        self.criterion
    }
    fn limit(&self) -> Option<Duration> {
        self.limit
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        (self.body)(ctx)
    }
}

/// Named checks grouped into suites; `all` selects every check.
pub struct CheckRegistry {
    checks: HashMap<String, Box<dyn Check>>,
    order: Vec<String>,
}

type Body = fn(&CheckContext) -> Result<Outcome>;

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut reg = CheckRegistry { checks: HashMap::new(), order: Vec::new() };
        let golden: [(&str, &[(&str, Body)]); 3] = [
            (
                "golden-A1",
                &[
                    ("A1/quivers", a1_quivers),
                    ("A1/phi1", a1_phi1),
                    ("A1/flip", a1_flip),
                    ("A1/phi3", a1_phi3),
                    ("A1/polarization-doubled", a1_polarization_doubled),
                    ("A1/polarization-tensor", a1_polarization_tensor),
                ],
            ),
            (
                "golden-A3",
                &[
                    ("A3/basic-quiver", a3_basic_quiver),
                    ("A3/paths", a3_paths),
                    ("A3/doubled-generators", a3_doubled_generators),
                    ("A3/glued-quiver", a3_glued_quiver),
                    ("A3/phi1-factors", a3_phi1_factors),
                    ("A3/phi1-sequence", a3_phi1_sequence),
                    ("A3/phi1-flip", a3_phi1_flip),
                    ("A3/single-forms", a3_single_forms),
                    ("A3/phi3-rendering", a3_phi3_rendering),
                    ("A3/shift", a3_shift),
                    ("A3/tensor-decomposition", a3_tensor_decomposition),
                ],
            ),
            (
                "golden-B3",
                &[
                    ("B3/basic-quiver", b3_basic_quiver),
                    ("B3/paths", b3_paths),
                    ("B3/glued-flip-quiver", b3_glued_flip_quiver),
                    ("B3/phi1-factors", b3_phi1_factors),
                    ("B3/phi1-sequence", b3_phi1_sequence),
                    ("B3/phi1-flip", b3_phi1_flip),
                    ("B3/glued-tensor-quiver", b3_glued_tensor_quiver),
                    ("B3/phi3-factors", b3_phi3_factors),
                    ("B3/phi3-sequence", b3_phi3_sequence),
                    ("B3/phi3-flip", b3_phi3_flip),
                ],
            ),
        ];
        for (suite, list) in golden {
            for &(name, body) in list {
                reg.add(name, suite, None, None, body);
            }
        }
        let relations: [(&str, Body); 12] = [
            ("relations/A2/single", |_| relation_case(0, BorelMode::Single)),
            ("relations/A2/doubled", |_| relation_case(0, BorelMode::Doubled)),
            ("relations/A2/tensor_square", |_| relation_case(0, BorelMode::TensorSquare)),
            ("relations/A3/single", |_| relation_case(1, BorelMode::Single)),
            ("relations/A3/doubled", |_| relation_case(1, BorelMode::Doubled)),
            ("relations/A3/tensor_square", |_| relation_case(1, BorelMode::TensorSquare)),
            ("relations/B2/single", |_| relation_case(2, BorelMode::Single)),
            ("relations/B2/doubled", |_| relation_case(2, BorelMode::Doubled)),
            ("relations/B2/tensor_square", |_| relation_case(2, BorelMode::TensorSquare)),
            ("relations/B3/single", |_| relation_case(3, BorelMode::Single)),
            ("relations/B3/doubled", |_| relation_case(3, BorelMode::Doubled)),
            ("relations/B3/tensor_square", |_| relation_case(3, BorelMode::TensorSquare)),
        ];
        for (name, body) in relations {
            reg.add(name, "relations", None, None, body);
        }
        let oracle: [(&str, Body); 5] = [
            ("oracle/guv", |c| oracle_identity("guv", c.order)),
            ("oracle/g12", |c| oracle_identity("g12", c.order)),
            ("oracle/gdouble", |c| oracle_identity("gdouble", c.order)),
            ("oracle/gcon", |c| oracle_identity("gcon", c.order)),
            ("oracle/closed-form", |c| closed_form_sampling(c.seed, c.samples, c.order)),
        ];
        for (name, body) in oracle {
            reg.add(name, "oracle", None, None, body);
        }
        let secs = Duration::from_secs;
        let acceptance: [(&str, Option<Duration>, Body); 8] = [
            ("criterion-1 basic quivers", Some(secs(1)), criterion_1),
            ("criterion-2 A1 flip", Some(secs(1)), criterion_2),
            ("criterion-3 A3 flip", Some(secs(10)), criterion_3),
            ("criterion-4 B3 flips", Some(secs(60)), criterion_4),
            ("criterion-5 relation battery", Some(secs(60)), criterion_5),
            ("criterion-6 mutation involution", None, criterion_6),
            ("criterion-7 dilogarithm oracle", Some(secs(30)), criterion_7),
            ("criterion-8 polarization", Some(secs(10)), criterion_8),
        ];
        for (i, (name, limit, body)) in acceptance.into_iter().enumerate() {
            reg.add(name, "acceptance", Some(i as u8 + 1), limit, body);
        }
        reg
    }
}

impl CheckRegistry {
    fn add(&mut self, name: &str, suite: &str, criterion: Option<u8>, limit: Option<Duration>, body: Body) {
        self.register(Box::new(FnCheck { name: name.into(), suite: suite.into(), criterion, limit, body }));
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        let name = check.name().to_string();
        if self.checks.insert(name.clone(), check).is_none() {
            self.order.push(name);
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.order.clone()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(|c| c.as_ref())
    }

    pub fn suites(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for n in &self.order {
            let s = self.checks[n].suite().to_string();
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.push("all".into());
        out
    }

    /// Checks of a suite (or a single check by name), in registration order.
    pub fn select(&self, suite: &str) -> Result<Vec<&dyn Check>> {
        let picked: Vec<&dyn Check> = self
            .order
            .iter()
            .map(|n| self.checks[n].as_ref())
            .filter(|c| suite == "all" || c.suite() == suite || c.name() == suite)
            .collect();
        if picked.is_empty() {
            return Err(Error::UnknownStrategy { kind: "suite", name: suite.to_string() });
        }
        Ok(picked)
    }

    /// Run a suite on up to `jobs` worker threads; records keep registry order.
    pub fn run_suite(&self, suite: &str, ctx: &CheckContext, jobs: usize) -> Result<VerificationReport> {
        let picked = self.select(suite)?;
        let slots: Mutex<Vec<Option<CheckRecord>>> = Mutex::new(vec![None; picked.len()]);
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..jobs.clamp(1, picked.len()) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(check) = picked.get(i) else { break };
                    let rec = CheckRecord::run(check.name(), check.criterion(), check.limit(), || check.run(ctx));
                    slots.lock().expect("no poisoned workers")[i] = Some(rec);
                });
            }
        });
        let mut report = VerificationReport::new(suite);
        for rec in slots.into_inner().expect("workers joined") {
            report.push(rec.expect("every check ran"));
        }
        Ok(report)
    }

    pub fn run_golden(&self, example: Example, ctx: &CheckContext) -> Result<VerificationReport> {
        self.run_suite(&format!("golden-{example}"), ctx, 1)
    }
}

// ---------------------------------------------------------------------------
// shared pieces

fn golden(ex: Example, ctx: &CheckContext) -> Result<GoldenExample> {
    GoldenExample::load(ex, ctx.golden_dir.as_deref())
}

fn short_multiplier(word: &ReducedWord) -> Rat {
    (1..=word.rank()).map(|i| word.datum().d(i)).min().unwrap_or_else(Rat::one)
}

fn compare_quiver(seed: &ClusterSeed, fig: &GoldenFigure, what: &str) -> Result<Outcome> {
    let ours = seed.quiver().edge_multiset();
    let theirs = fig.arrows()?;
    let frozen_ours = seed.quiver().frozen();
    let frozen_theirs = fig.frozen_set();
    let count: u32 = theirs.values().sum();
    if ours == theirs && frozen_ours == frozen_theirs {
        return Ok(Outcome::pass(format!("{what}: {count} arrows")));
    }
    let show = |m: &super::golden::EdgeMultiset, other: &super::golden::EdgeMultiset| -> Vec<String> {
        m.iter()
            .filter(|(k, v)| other.get(*k) != Some(*v))
            .map(|((a, b, s), v)| format!("{a}->{b} {s:?}x{v}"))
            .collect()
    };
    let mut detail = format!("{what}: arrows differ");
    let missing = show(&theirs, &ours);
    let extra = show(&ours, &theirs);
    if !missing.is_empty() {
        detail.push_str(&format!("; missing {}", missing.join(", ")));
    }
    if !extra.is_empty() {
        detail.push_str(&format!("; unexpected {}", extra.join(", ")));
    }
    if frozen_ours != frozen_theirs {
        detail.push_str(&format!("; frozen {frozen_ours:?} vs {frozen_theirs:?}"));
    }
    Ok(Outcome::fail(detail))
}

fn compare_factors(phi: &PhiOperator, printed: &[String], short: Rat, what: &str) -> Result<Outcome> {
    if phi.factors.len() != printed.len() {
        return Ok(Outcome::fail(format!("{what}: {} factors, printed {}", phi.factors.len(), printed.len())));
    }
    for (i, (ours, p)) in phi.factors.iter().zip(printed).enumerate() {
        let theirs = parse_factor(&phi.torus, short, p)?;
        if ours.argument != theirs.argument || ours.flavor != theirs.flavor {
            return Ok(Outcome::fail(format!(
                "{what}: factor #{} is {} but printed {p}",
                i + 1,
                ours.render(&phi.torus)
            )));
        }
    }
    Ok(Outcome::pass(format!("{what}: {} factors", printed.len())))
}

fn compare_sequence(seq: &MutationSequence, printed: &str, what: &str) -> Outcome {
    let theirs = parse_labels(printed);
    if seq.labels == theirs {
        Outcome::pass(format!("{what}: {} mutations", theirs.len()))
    } else {
        Outcome::fail(format!("{what}: derived ({}) vs printed ({})", seq.labels.join(","), theirs.join(",")))
    }
}

struct Flip {
    phi: PhiOperator,
    seq: MutationSequence,
    report: FlipReport,
}

fn flip(word: &ReducedWord, kind: PhiKind) -> Result<Flip> {
    let phi = build_phi(word, kind, &EPathRegistry::default())?;
    let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed)?;
    let report = verify_flip(&phi, &seq)?;
    Ok(Flip { phi, seq, report })
}

fn flip_outcome(report: &FlipReport, what: &str) -> Outcome {
    match report.roots.iter().find(|r| !r.passed()) {
        None => Outcome::pass(format!("{what}: Ad_Φ(f_i) = f_i on the left, K'_i fixed, paths preserved for {} roots", report.roots.len())),
        Some(r) => {
            let o = Outcome::fail(format!(
                "{what}: root {} (polynomial {}, K' {}, path {})",
                r.root, r.polynomial, r.kprime, r.path
            ));
            match &r.residual {
                Some(res) => o.with_residual(res.clone()),
                None => o,
            }
        }
    }
}

fn phi_golden(g: &GoldenExample, kind: PhiKind, fig: &str) -> Result<Outcome> {
    let word = g.word()?;
    let printed = g.phi(&kind.to_string())?;
    let f = flip(&word, kind)?;
    Ok(Outcome::all(vec![
        compare_factors(&f.phi, &printed.factors, short_multiplier(&word), &format!("{kind} factors"))?,
        compare_sequence(&f.seq, &printed.sequence, &format!("{kind} sequence")),
        flip_outcome(&f.report, &format!("{kind} flip")),
        compare_quiver(f.seq.final_seed(), g.figure(fig)?, &format!("{kind} mutated quiver"))?,
    ]))
}

fn paths_golden(g: &GoldenExample) -> Result<Outcome> {
    let word = g.word()?;
    let basic = build_basic_seed(&word);
    let torus = Torus::of_seed(&basic.seed);
    let (source, epaths) = EPathRegistry::default().resolve(&word, &basic.seed)?;
    let mut parts = Vec::new();
    for (i, printed) in g.f_paths.iter().enumerate() {
        let ours: Vec<usize> = f_path(&basic, i + 1).nodes.iter().map(|k| k + 1).collect();
        parts.push(Outcome::check(ours == parse_nodes(printed)?, format!("F{} path {printed}", i + 1)));
    }
    for (i, printed) in g.e_paths.iter().enumerate() {
        let mut nodes = parse_nodes(printed)?;
        nodes.pop(); // the terminal node lies outside Q_F
        parts.push(Outcome::check(epaths[i] == nodes, format!("E{} path {printed} ({source})", i + 1)));
    }
    for (i, printed) in g.e_factors.iter().enumerate() {
        let path = PathPolynomial::open(epaths[i].iter().map(|k| k - 1).collect());
        let ours = dilog_factorize_path(&torus, &path, word.datum().d(i + 1))?;
        let theirs: Vec<_> = printed.iter().map(|p| parse_factor(&torus, short_multiplier(&word), p)).collect::<Result<_>>()?;
        let same = ours.len() == theirs.len()
            && ours.iter().zip(&theirs).all(|(a, b)| a.argument == b.argument && a.flavor == b.flavor);
        parts.push(Outcome::check(same, format!("g(e{}) splits into {} factors", i + 1, theirs.len())));
    }
    let passed = parts.iter().all(|p| p.passed);
    Ok(if passed {
        Outcome::pass(format!("{} F-paths, {} E-paths, {} E-factorizations", g.f_paths.len(), g.e_paths.len(), g.e_factors.len()))
    } else {
        Outcome::all(parts)
    })
}

fn doubled_generators_golden(g: &GoldenExample) -> Result<Outcome> {
    let word = g.word()?;
    let glued = glue_flip(&word);
    let torus = Torus::of_seed(&glued.seed);
    let mut parts = Vec::new();
    for gen in &g.doubled_generators {
        let row = glued.concatenated_row(gen.root);
        let labels: Vec<String> = row.iter().map(|&i| glued.seed.label(i).to_string()).collect();
        let f_ok = labels[..labels.len() - 1] == parse_labels(&gen.f_path)[..];
        let k_ok = labels == parse_labels(&gen.kprime);
        let mut terms_ok = true;
        if !gen.f_terms.is_empty() {
            let mut sum = TorusElement::zero(&torus);
            for t in &gen.f_terms {
                sum = sum.add(&TorusElement::monomial(&torus, parse_monomial(&torus, t)?))?;
            }
            terms_ok = PathPolynomial::closed(row.clone()).polynomial(&torus) == sum;
        }
        parts.push(Outcome::check(f_ok && k_ok && terms_ok, format!("f{0} = X({1}), K'{0} = X_({2})", gen.root, gen.f_path, gen.kprime)));
    }
    Ok(Outcome::all(parts))
}

fn doubled_form(s: &str, rank_one: bool) -> Result<LinearForm> {
    if rank_one {
        index_rank_one(s).parse()
    } else {
        s.parse()
    }
}

fn sorted_forms(forms: impl IntoIterator<Item = LinearForm>) -> Vec<String> {
    let mut v: Vec<String> = forms.into_iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

fn shift_steps(s: &AffineShift) -> BTreeSet<String> {
    s.steps.iter().filter(|(_, inc)| !inc.is_zero()).map(|(sym, inc)| format!("{sym}:{inc}")).collect()
}

fn two() -> Rat {
    Rat::from_integer(2)
}

/// Monomials of the post-flip generators: the left-triangle prefixes.
fn left_monomials(pol: &Polarization, root: usize) -> Vec<LinearForm> {
    let rf = &pol.roots[&root];
    let left_len = match &pol.glued {
        Some(g) => g.left_row(root).len() - 1,
        None => rf.monomials.len() - 1,
    };
    rf.monomials[..left_len].to_vec()
}

fn flip_forms_golden(word: &ReducedWord, kind: PhiKind, printed: &FlipForms, rank_one: bool) -> Result<Outcome> {
    let (mode, lambda, goal) = match kind {
        PhiKind::Phi1 => (PolarizationMode::Doubled, true, NormalizationGoal::KillLambda),
        PhiKind::Phi3 => (PolarizationMode::TensorSquare, false, NormalizationGoal::KillSecondFactor),
    };
    let pol = polarize(word, mode, lambda);
    let parse = |s: &String| doubled_form(s, rank_one);
    let parse_all = |v: &[String]| v.iter().map(parse).collect::<Result<Vec<_>>>();
    let roots = 1..=word.rank();
    let ours_f = sorted_forms(roots.clone().flat_map(|r| {
        let m = &pol.roots[&r].monomials;
        m[..m.len() - 1].iter().map(|f| f.scale(two())).collect::<Vec<_>>()
    }));
    let ours_k: LinearForm = roots.clone().map(|r| pol.roots[&r].kprime.scale(two())).fold(LinearForm::zero(), |a, b| a.add(&b));
    let phi = build_phi(word, kind, &EPathRegistry::default())?;
    let ops: Vec<LinearForm> = render_phi_operators(&phi.factors, &pol)?.into_iter().map(|r| r.exponent).collect();
    let shift = normalization_shift(&pol, goal);
    let printed_shift = AffineShift::from_rendered(
        &printed.shift.iter().map(|s| if rank_one { index_rank_one(s) } else { s.clone() }).collect::<Vec<_>>(),
    )?;
    let after_f = sorted_forms(roots.clone().flat_map(|r| left_monomials(&pol, r)).map(|f| shift.apply(&f).scale(two())));
    let after_k: LinearForm =
        roots.map(|r| shift.apply(&pol.roots[&r].kprime).scale(two())).fold(LinearForm::zero(), |a, b| a.add(&b));
    Ok(Outcome::all(vec![
        Outcome::check(ours_f == sorted_forms(parse_all(&printed.f_terms)?), format!("f monomials {}", ours_f.join(" + "))),
        Outcome::check(ours_k == parse(&printed.kprime)?, format!("K' = e^(πb({ours_k}))")),
        Outcome::check(ops == parse_all(&printed.operators)?, format!("{kind} exponents {}", ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", "))),
        Outcome::check(shift_steps(&shift) == shift_steps(&printed_shift), format!("shift {}", shift.render().join(" ∘ "))),
        Outcome::check(after_f == sorted_forms(parse_all(&printed.f_after)?), format!("shifted f {}", after_f.join(" + "))),
        Outcome::check(after_k == parse(&printed.kprime_after)?, format!("shifted K' {after_k}")),
    ]))
}

// ---------------------------------------------------------------------------
// A1

fn a1_quivers(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A1, ctx)?;
    let w = g.word()?;
    Ok(Outcome::all(vec![
        compare_quiver(&build_basic_seed(&w).seed, g.figure("basic")?, "basic quiver")?,
        compare_quiver(&glue_flip(&w).seed, g.figure("glued_flip")?, "Q^{i ī}")?,
        compare_quiver(&glue_tensor_square(&w).seed, g.figure("glued_tensor")?, "Q^{i i}")?,
    ]))
}

fn a1_phi1(ctx: &CheckContext) -> Result<Outcome> {
    phi_golden(&golden(Example::A1, ctx)?, PhiKind::Phi1, "flip_phi1")
}

fn a1_flip(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A1, ctx)?;
    let f = flip(&g.word()?, PhiKind::Phi1)?;
    Ok(Outcome::all(vec![doubled_generators_golden(&g)?, flip_outcome(&f.report, "Ad_{g(X_1̄)}")]))
}

fn a1_phi3(ctx: &CheckContext) -> Result<Outcome> {
    phi_golden(&golden(Example::A1, ctx)?, PhiKind::Phi3, "flip_phi3")
}

fn a1_polarization_doubled(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A1, ctx)?;
    let printed = g.polarization.doubled.as_ref().ok_or_else(|| Error::Golden("A1 doubled forms".into()))?;
    flip_forms_golden(&g.word()?, PhiKind::Phi1, printed, true)
}

fn a1_polarization_tensor(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A1, ctx)?;
    let printed = g.polarization.tensor.as_ref().ok_or_else(|| Error::Golden("A1 tensor forms".into()))?;
    flip_forms_golden(&g.word()?, PhiKind::Phi3, printed, true)
}

// ---------------------------------------------------------------------------
// A3

fn a3_basic_quiver(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    compare_quiver(&build_basic_seed(&g.word()?).seed, g.figure("basic")?, "Q^i")
}

fn a3_paths(ctx: &CheckContext) -> Result<Outcome> {
    paths_golden(&golden(Example::A3, ctx)?)
}

fn a3_doubled_generators(ctx: &CheckContext) -> Result<Outcome> {
    doubled_generators_golden(&golden(Example::A3, ctx)?)
}

fn a3_glued_quiver(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    compare_quiver(&glue_flip(&g.word()?).seed, g.figure("glued_flip")?, "Q^{i ī}")
}

fn a3_phi1_factors(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let w = g.word()?;
    let phi = build_phi(&w, PhiKind::Phi1, &EPathRegistry::default())?;
    compare_factors(&phi, &g.phi("phi1")?.factors, short_multiplier(&w), "Φ₁")
}

fn a3_phi1_sequence(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let phi = build_phi(&g.word()?, PhiKind::Phi1, &EPathRegistry::default())?;
    let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed)?;
    Ok(compare_sequence(&seq, &g.phi("phi1")?.sequence, "μ_R1"))
}

fn a3_phi1_flip(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let f = flip(&g.word()?, PhiKind::Phi1)?;
    Ok(Outcome::all(vec![
        flip_outcome(&f.report, "Φ₁"),
        compare_quiver(f.seq.final_seed(), g.figure("flip_phi1")?, "mutated quiver")?,
    ]))
}

fn a3_single_forms(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let w = g.word()?;
    let printed = g.polarization.single.as_ref().ok_or_else(|| Error::Golden("A3 single forms".into()))?;
    let pol = polarize(&w, PolarizationMode::Single, false);
    let mut parts = Vec::new();
    for root in 1..=w.rank() {
        let m = &pol.roots[&root].monomials;
        let ours = sorted_forms(m[..m.len() - 1].iter().map(|f| f.scale(two())));
        let theirs = sorted_forms(printed.f_terms[root - 1].iter().map(|s| s.parse()).collect::<Result<Vec<LinearForm>>>()?);
        parts.push(Outcome::check(ours == theirs, format!("f{root}")));
        let k = pol.roots[&root].kprime.scale(two());
        parts.push(Outcome::check(k == printed.kprime[root - 1].parse()?, format!("K'{root}")));
    }
    let passed = parts.iter().all(|p| p.passed);
    Ok(if passed { Outcome::pass("f1, f2, f3, K'1, K'2, K'3") } else { Outcome::all(parts) })
}

/// Is `2·L = exponent` impossible for every integral lattice vector?
fn outside_lattice(pol: &Polarization, exponent: &LinearForm) -> bool {
    match pol.preimage(&exponent.scale(Rat::new(1, 2))) {
        None => true,
        Some(v) => v.iter().any(|c| !c.is_integer()),
    }
}

fn a3_phi3_rendering(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let w = g.word()?;
    let printed = g.polarization.phi3.as_ref().ok_or_else(|| Error::Golden("A3 Φ₃ list".into()))?;
    let pol = polarize(&w, PolarizationMode::TensorSquare, false);
    let phi = build_phi(&w, PhiKind::Phi3, &EPathRegistry::default())?;
    let ours = render_phi_operators(&phi.factors, &pol)?;
    let one = Rat::one();
    let as_factor = |s: &str| -> Result<RenderedFactor> { Ok(RenderedFactor { flavor: one, exponent: s.parse()? }) };
    let mut corrected = Vec::new();
    let mut verbatim = 0;
    let mut misprints = Vec::new();
    for (i, p) in printed.printed.iter().enumerate() {
        let printed_factor = as_factor(p)?;
        match printed.errata.get(&(i + 1)) {
            Some(fix) => {
                // a misprint is accepted only if the printed exponent cannot
                // be the exponent of any cluster monomial
                if !outside_lattice(&pol, &printed_factor.exponent) || ours.contains(&printed_factor) {
                    return Ok(Outcome::fail(format!("entry #{} listed as misprint but is a valid exponent", i + 1)));
                }
                misprints.push(format!("#{}", i + 1));
                corrected.push(as_factor(fix)?);
            }
            None => {
                verbatim += 1;
                corrected.push(printed_factor);
            }
        }
    }
    let same = equal_up_to_commuting_swaps(&ours, &corrected);
    let detail = format!(
        "{} exponents: {verbatim} verbatim, misprints {} lie outside the cluster lattice and are replaced; order equal up to commuting swaps",
        corrected.len(),
        misprints.join(",")
    );
    Ok(if same {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail).with_residual(ours.iter().map(|r| r.exponent.to_string()).collect::<Vec<_>>().join(" | "))
    })
}

/// Does a shift make `Δ(K'_i) ↦ K'_i ⊗ 1` while fixing every first-copy
/// monomial `f^{k} ⊗ 1`? Returns the first offending form.
fn shift_defect(pol: &Polarization, single: &Polarization, shift: &AffineShift) -> Option<String> {
    for root in 1..=pol.word.rank() {
        let k = shift.apply(&pol.roots[&root].kprime);
        if k != single.roots[&root].kprime {
            return Some(format!("K'{root} ↦ {}", k.scale(two())));
        }
        for m in left_monomials(pol, root) {
            let s = shift.apply(&m);
            if s != m {
                return Some(format!("{} ↦ {}", m.scale(two()), s.scale(two())));
            }
        }
    }
    None
}

fn a3_shift(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let w = g.word()?;
    let printed = g.polarization.shift.as_ref().ok_or_else(|| Error::Golden("A3 shift".into()))?;
    let pol = polarize(&w, PolarizationMode::TensorSquare, false);
    let single = polarize(&w, PolarizationMode::Single, false);
    let ours = normalization_shift(&pol, NormalizationGoal::KillSecondFactor);
    if let Some(bad) = shift_defect(&pol, &single, &ours) {
        return Ok(Outcome::fail(format!("derived shift does not normalize: {bad}")));
    }
    // the printed shift must break the defining property, the corrected one must not
    let Some(defect) = shift_defect(&pol, &single, &AffineShift::from_rendered(&printed.printed)?) else {
        return Ok(Outcome::fail("misprints listed but the printed shift normalizes"));
    };
    let mut corrected_lines = printed.printed.clone();
    for (&pos, fix) in &printed.errata {
        corrected_lines[pos - 1] = fix.clone();
    }
    let misprints: Vec<String> = printed.errata.keys().map(|p| format!("#{p}")).collect();
    let corrected = AffineShift::from_rendered(&corrected_lines)?;
    if let Some(bad) = shift_defect(&pol, &single, &corrected) {
        return Ok(Outcome::fail(format!("corrected shift does not normalize: {bad}")));
    }
    let verbatim = printed.printed.len() - printed.errata.len();
    let same = shift_steps(&ours) == shift_steps(&corrected);
    let detail = format!(
        "{} substitutions: {verbatim} verbatim; printed misprint {} leaves second-factor terms ({defect})",
        printed.printed.len(),
        misprints.join(", ")
    );
    Ok(if same { Outcome::pass(detail) } else { Outcome::fail(detail).with_residual(ours.render().join(" ∘ ")) })
}

fn a3_tensor_decomposition(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A3, ctx)?;
    let w = g.word()?;
    let pol = polarize(&w, PolarizationMode::TensorSquare, false);
    let single = polarize(&w, PolarizationMode::Single, false);
    let shift = normalization_shift(&pol, NormalizationGoal::KillSecondFactor);
    let f = flip(&w, PhiKind::Phi3)?;
    Ok(Outcome::all(vec![
        flip_outcome(&f.report, "Ad_Φ₃ Δ(f_i) = f_i ⊗ 1"),
        Outcome::check(shift_defect(&pol, &single, &shift).is_none(), "S Δ(K'_i) = K'_i ⊗ 1 and S (f_i ⊗ 1) = f_i ⊗ 1"),
    ]))
}

// ---------------------------------------------------------------------------
// B3

fn b3_basic_quiver(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    compare_quiver(&build_basic_seed(&g.word()?).seed, g.figure("basic")?, "Q^i")
}

fn b3_paths(ctx: &CheckContext) -> Result<Outcome> {
    paths_golden(&golden(Example::B3, ctx)?)
}

fn b3_glued_flip_quiver(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    compare_quiver(&glue_flip(&g.word()?).seed, g.figure("glued_flip")?, "Q^{i ī}")
}

fn b3_glued_tensor_quiver(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    compare_quiver(&glue_tensor_square(&g.word()?).seed, g.figure("glued_tensor")?, "Q^{i i}")
}

fn b3_factors(ctx: &CheckContext, kind: PhiKind) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    let w = g.word()?;
    let phi = build_phi(&w, kind, &EPathRegistry::default())?;
    compare_factors(&phi, &g.phi(&kind.to_string())?.factors, short_multiplier(&w), &kind.to_string())
}

fn b3_sequence(ctx: &CheckContext, kind: PhiKind) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    let phi = build_phi(&g.word()?, kind, &EPathRegistry::default())?;
    let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed)?;
    Ok(compare_sequence(&seq, &g.phi(&kind.to_string())?.sequence, &format!("{kind} sequence")))
}

fn b3_flip(ctx: &CheckContext, kind: PhiKind, fig: &str) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    let f = flip(&g.word()?, kind)?;
    Ok(Outcome::all(vec![
        flip_outcome(&f.report, &kind.to_string()),
        compare_quiver(f.seq.final_seed(), g.figure(fig)?, "mutated quiver")?,
    ]))
}

fn b3_phi1_factors(ctx: &CheckContext) -> Result<Outcome> {
    b3_factors(ctx, PhiKind::Phi1)
}

fn b3_phi1_sequence(ctx: &CheckContext) -> Result<Outcome> {
    b3_sequence(ctx, PhiKind::Phi1)
}

fn b3_phi1_flip(ctx: &CheckContext) -> Result<Outcome> {
    b3_flip(ctx, PhiKind::Phi1, "flip_phi1")
}

fn b3_phi3_factors(ctx: &CheckContext) -> Result<Outcome> {
    b3_factors(ctx, PhiKind::Phi3)
}

fn b3_phi3_sequence(ctx: &CheckContext) -> Result<Outcome> {
    b3_sequence(ctx, PhiKind::Phi3)
}

fn b3_phi3_flip(ctx: &CheckContext) -> Result<Outcome> {
    b3_flip(ctx, PhiKind::Phi3, "flip_phi3")
}

// ---------------------------------------------------------------------------
// relations, oracle, randomized checks

fn relation_case(index: usize, mode: BorelMode) -> Result<Outcome> {
    let word = relation_words()?.swap_remove(index);
    let r = assemble_borel(&word, mode, &EPathRegistry::default())?;
    let report = run_borel_relations(&r);
    let failures = report.failures();
    Ok(match failures.first() {
        None => Outcome::pass(format!("{} identities", report.checks.len())),
        Some(first) => {
            let o = Outcome::fail(format!(
                "{} of {} identities fail, first: {} ({})",
                failures.len(),
                report.checks.len(),
                first.name,
                first.detail
            ));
            match &first.residual {
                Some(r) => o.with_residual(r.clone()),
                None => o,
            }
        }
    })
}

fn oracle_identity(name: &str, order: usize) -> Result<Outcome> {
    let reg = OracleRegistry::default();
    let cases = reg.get(name)?.run(order)?;
    let bad: Vec<String> = cases
        .iter()
        .filter(|(_, v)| !v.passed || v.terms_compared == 0)
        .map(|(c, v)| format!("{c}: {}", v.mismatch.clone().unwrap_or_default()))
        .collect();
    Ok(if bad.is_empty() {
        Outcome::pass(format!("{name}: {} cases to order {order}", cases.len()))
    } else {
        Outcome::fail(format!("{name}: {}", bad.join("; ")))
    })
}

fn closed_form_sampling(seed: u64, samples: usize, order: usize) -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..samples {
        let (torus, lambda, eta, d, direction) = random_oracle_pair(&mut rng, 3);
        let v = closed_form_matches_oracle(&torus, &lambda, &eta, d, direction, order)?;
        if !v.passed {
            return Ok(Outcome::fail(format!(
                "sample {i}: X_({}) under {direction:?}(X_({})), d = {d}",
                torus.render_vector(&lambda),
                torus.render_vector(&eta)
            ))
            .with_residual(v.mismatch.unwrap_or_default()));
        }
    }
    Ok(Outcome::pass(format!("{samples} random pairs with |m| ≤ 3 agree to order {order}")))
}

/// `μ_k^q ∘ μ_k^q = id` on every generator and `L_k` preserves the skew
/// form, for random seeds of at most 8 nodes.
fn involution_sampling(seed: u64, samples: usize) -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..samples {
        let s = random_seed(&mut rng, 8)?;
        let unfrozen: Vec<usize> = (0..s.len()).filter(|&j| !s.is_frozen(j)).collect();
        let k = unfrozen[rng.gen_range(0..unfrozen.len())];
        let there = QuantumMutation::new(&s, k)?;
        let back = QuantumMutation::new(&there.target, k)?;
        if back.target != s {
            return Ok(Outcome::fail(format!("sample {i}: seed mutation at {} is not an involution", s.label(k))));
        }
        let torus = Torus::of_seed(&s);
        let far = Torus::of_seed(&back.target);
        for j in 0..s.len() {
            let x = FracElement::from_poly(TorusElement::monomial(&far, LatticeVector::unit(j)));
            let image = there.apply(&back.apply(&x)?)?;
            let expected = TorusElement::monomial(&torus, LatticeVector::unit(j));
            if !image.equals_poly(&expected)? {
                return Ok(Outcome::fail(format!("sample {i}: μ∘μ moves X_{}", s.label(j))).with_residual(image.to_string()));
            }
        }
        let l = monomial_transform(&s, k)?;
        let mutated = &there.target;
        for a in 0..s.len() {
            for b in 0..s.len() {
                let lhs = torus.pairing(l.column(a), l.column(b));
                if lhs != mutated.w(a, b) {
                    return Ok(Outcome::fail(format!(
                        "sample {i}: L_k changes the form at ({}, {}): {lhs} vs {}",
                        s.label(a),
                        s.label(b),
                        mutated.w(a, b)
                    )));
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{samples} random seeds (≤ 8 nodes)")))
}

// ---------------------------------------------------------------------------
// acceptance criteria

fn criterion_1(ctx: &CheckContext) -> Result<Outcome> {
    Ok(Outcome::all(vec![a3_basic_quiver(ctx)?, b3_basic_quiver(ctx)?]))
}

fn criterion_2(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::A1, ctx)?;
    let f = flip(&g.word()?, PhiKind::Phi1)?;
    Ok(Outcome::all(vec![
        flip_outcome(&f.report, "Ad_{g(X_1̄)}(X_1 + X_{1,1̄}) = X_1, X_{1,1̄,2̄} fixed"),
        compare_quiver(f.seq.final_seed(), g.figure("flip_phi1")?, "mutated seed")?,
        compare_sequence(&f.seq, &g.phi("phi1")?.sequence, "sequence"),
    ]))
}

fn criterion_3(ctx: &CheckContext) -> Result<Outcome> {
    phi_golden(&golden(Example::A3, ctx)?, PhiKind::Phi1, "flip_phi1")
}

fn criterion_4(ctx: &CheckContext) -> Result<Outcome> {
    let g = golden(Example::B3, ctx)?;
    Ok(Outcome::all(vec![phi_golden(&g, PhiKind::Phi1, "flip_phi1")?, phi_golden(&g, PhiKind::Phi3, "flip_phi3")?]))
}

fn criterion_5(_: &CheckContext) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut total = 0;
    for word in relation_words()? {
        for mode in BorelMode::all() {
            let r = assemble_borel(&word, mode, &EPathRegistry::default())?;
            let report = run_borel_relations(&r);
            total += report.checks.len();
            if let Some(bad) = report.failures().first() {
                let o = Outcome::fail(format!("{}: {} ({})", report.suite, bad.name, bad.detail));
                parts.push(match &bad.residual {
                    Some(res) => o.with_residual(res.clone()),
                    None => o,
                });
            }
        }
    }
    Ok(if parts.is_empty() {
        Outcome::pass(format!("{total} identities on A2, A3, B2, B3 in single, doubled and tensor-square modes"))
    } else {
        Outcome::all(parts)
    })
}

fn criterion_6(ctx: &CheckContext) -> Result<Outcome> {
    involution_sampling(ctx.seed, ctx.samples)
}

fn criterion_7(ctx: &CheckContext) -> Result<Outcome> {
    let mut parts = Vec::new();
    for name in ["guv", "g12", "gdouble", "gcon"] {
        parts.push(oracle_identity(name, ctx.order)?);
    }
    parts.push(closed_form_sampling(ctx.seed, ctx.samples, ctx.order)?);
    Ok(Outcome::all(parts))
}

fn omega_all(ctx: &CheckContext) -> Result<Outcome> {
    let mut count = 0;
    for ex in Example::all() {
        let w = golden(ex, ctx)?.word()?;
        for mode in [PolarizationMode::Single, PolarizationMode::Feigin, PolarizationMode::Doubled, PolarizationMode::TensorSquare] {
            let pol = polarize(&w, mode, true);
            if let Some((a, b, o, wij)) = pol.omega_mismatches().into_iter().next() {
                return Ok(Outcome::fail(format!("{ex} {mode:?}: Ω(L_{a}, L_{b}) = {o} but w = {wij}")));
            }
            count += 1;
        }
    }
    Ok(Outcome::pass(format!("Ω(L_i, L_j) = w_ij on {count} polarized seeds")))
}

fn criterion_8(ctx: &CheckContext) -> Result<Outcome> {
    Ok(Outcome::all(vec![
        a1_polarization_doubled(ctx)?,
        a1_polarization_tensor(ctx)?,
        a3_single_forms(ctx)?,
        omega_all(ctx)?,
        a3_phi3_rendering(ctx)?,
        a3_shift(ctx)?,
        a3_tensor_decomposition(ctx)?,
    ]))
}
