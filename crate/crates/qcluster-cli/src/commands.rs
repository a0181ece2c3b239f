use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;

use qcluster::basic_quiver::{build_basic_seed, e_path, f_path, EPathRegistry};
use qcluster::labels;
use qcluster::lie_data::{ReducedWord, WordSpec};
use qcluster::mutation_engine::{
    build_phi, derive_mutation_sequence, verify_flip, FlipReport, PhiKind, PhiOperator, RootFlipCheck,
};
use qcluster::polarization::{
    normalization_shift, polarize, render_phi_operators, AffineShift, NormalizationGoal, Polarization,
    PolarizationMode, RenderedFactor,
};
use qcluster::qtorus::Torus;
use qcluster::relations_suite::{CheckContext, CheckRecord, CheckRegistry, Outcome, ReportFormat, VerificationReport};
use qcluster::seed_quiver::{export_dot, SeedJson};

use crate::input::{build_quiver, emit, word_from, QuiverMode, SeedDocument, WordArgs};

pub fn quiver_build(words: &WordArgs, mode: QuiverMode, dot: bool, out: Option<&PathBuf>) -> Result<bool> {
    let word = words.resolve()?;
    let seed = build_quiver(&word, mode);
    let text = if dot { export_dot(&seed) } else { SeedDocument::of(&seed, Some(&word), Some(mode)).to_json() };
    emit(out, &text)?;
    Ok(true)
}

pub fn quiver_paths(words: &WordArgs, root: Option<usize>, out: Option<&PathBuf>) -> Result<bool> {
    let word = words.resolve()?;
    let basic = build_basic_seed(&word);
    let torus = Torus::of_seed(&basic.seed);
    let registry = EPathRegistry::default();
    let roots: Vec<usize> = match root {
        Some(r) if r == 0 || r > word.rank() => bail!("root {r} is outside 1..={}", word.rank()),
        Some(r) => vec![r],
        None => (1..=word.rank()).collect(),
    };
    let mut s = format!("word {word}\n");
    for r in roots {
        let f = f_path(&basic, r);
        let _ = writeln!(s, "root {r}");
        let _ = writeln!(s, "  F path  {}", f.render(&basic.seed));
        let _ = writeln!(s, "  f       {}", f.polynomial(&torus));
        let _ = writeln!(s, "  K'      {}", f.monomial(&torus));
        match e_path(&basic, r, &registry) {
            Ok(e) => {
                let _ = writeln!(s, "  E path  {}", e.render(&basic.seed));
                let _ = writeln!(s, "  e       {}", e.polynomial(&torus));
            }
            Err(err) => {
                let _ = writeln!(s, "  E path  unavailable ({err})");
            }
        }
    }
    emit(out, &s)?;
    Ok(true)
}

pub fn mutate(
    words: &WordArgs,
    seed_file: Option<&PathBuf>,
    mode: QuiverMode,
    at: &str,
    dot: bool,
    out: Option<&PathBuf>,
) -> Result<bool> {
    let mut seed = match (words.given(), seed_file) {
        (true, Some(_)) => bail!("give either a word or --seed, not both"),
        (true, None) => build_quiver(&words.resolve()?, mode),
        (false, Some(path)) => SeedDocument::read(path)?.seed()?,
        (false, None) => bail!("a seed is required: --seed FILE or a word"),
    };
    for label in at.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        seed = seed.mutate_at(&labels::canonical(label))?;
    }
    let text = if dot { export_dot(&seed) } else { SeedDocument::of(&seed, None, None).to_json() };
    emit(out, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct FlipJson<'a> {
    word: WordSpec,
    which: PhiKind,
    passed: bool,
    factors: Vec<String>,
    sequence: &'a [String],
    roots: &'a [RootFlipCheck],
    mutated_seed: SeedJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot: Option<serde_json::Value>,
}

fn root_outcome(r: &RootFlipCheck) -> Outcome {
    let path = r.mutated_path.as_ref().map(|p| p.join(",")).unwrap_or_else(|| "missing".into());
    let o = Outcome::check(
        r.passed(),
        format!("polynomial {}, K' {}, mutated path {path}", verdict(r.polynomial), verdict(r.kprime)),
    );
    match &r.residual {
        Some(res) => o.with_residual(res.clone()),
        None => o,
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILS"
    }
}

fn flip_report(phi: &PhiOperator, report: &FlipReport) -> VerificationReport {
    let mut out = VerificationReport::new(format!("flip-{}", phi.kind));
    for r in &report.roots {
        out.push(CheckRecord::run(&format!("root {}", r.root), None, None, || Ok(root_outcome(r))));
    }
    out
}

pub fn flip(
    words: &WordArgs,
    seed_file: Option<&PathBuf>,
    which: PhiKind,
    format: ReportFormat,
    dot: bool,
    out: Option<&PathBuf>,
) -> Result<bool> {
    let mode = match which {
        PhiKind::Phi1 => QuiverMode::Doubled,
        PhiKind::Phi3 => QuiverMode::Tensor,
    };
    let word = word_from(words, seed_file, mode)?;
    let phi = build_phi(&word, which, &EPathRegistry::default())?;
    let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed)?;
    let report = verify_flip(&phi, &seq)?;
    let before = &phi.glued.seed;
    let after = seq.final_seed();
    let text = match format {
        ReportFormat::Json => {
            let doc = FlipJson {
                word: word.spec(),
                which,
                passed: report.passed(),
                factors: phi.render_factors(),
                sequence: &seq.labels,
                roots: &report.roots,
                mutated_seed: after.to_json_value(),
                dot: dot.then(|| json!({ "before": export_dot(before), "after": export_dot(after) })),
            };
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
        ReportFormat::Junit => flip_report(&phi, &report).render(ReportFormat::Junit, false),
        ReportFormat::Text => {
            let mut s = format!("{which} on word {word}\n");
            let factors = phi.render_factors();
            let _ = writeln!(s, "factors ({}): {}", factors.len(), factors.join(" "));
            let _ = writeln!(s, "sequence ({}): {}", seq.labels.len(), seq.labels.join(","));
            s.push_str(&flip_report(&phi, &report).render(ReportFormat::Text, false));
            if dot {
                s.push_str(&export_dot(before));
                s.push_str(&export_dot(after));
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(report.passed())
}

pub struct VerifyOptions {
    pub suite: String,
    pub format: ReportFormat,
    pub jobs: usize,
    pub context: CheckContext,
    pub timings: bool,
    pub list: bool,
}

pub fn verify(opts: &VerifyOptions, out: Option<&PathBuf>) -> Result<bool> {
    let registry = CheckRegistry::default();
    if opts.list {
        let mut s = String::new();
        for suite in registry.suites() {
            let _ = writeln!(s, "{suite}");
            if suite == "all" {
                continue;
            }
            for check in registry.select(&suite)? {
                let _ = writeln!(s, "  {}", check.name());
            }
        }
        emit(out, &s)?;
        return Ok(true);
    }
    let report = registry.run_suite(&opts.suite, &opts.context, opts.jobs)?;
    emit(out, &report.render(opts.format, opts.timings))?;
    Ok(report.passed())
}

pub fn oracle(identity: &str, mut opts: VerifyOptions, out: Option<&PathBuf>) -> Result<bool> {
    opts.suite = match identity {
        "all" => "oracle".into(),
        name => format!("oracle/{name}"),
    };
    if CheckRegistry::default().get(&opts.suite).is_none() && opts.suite != "oracle" {
        bail!("unknown identity '{identity}' (guv, g12, gdouble, gcon, closed-form, all)");
    }
    verify(&opts, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormStyle {
    Plain,
    Latexish,
    Json,
}

pub struct PolarizeOptions {
    pub mode: Option<PolarizationMode>,
    pub lambda: bool,
    pub render_phi: Option<PhiKind>,
    pub shift: bool,
    pub style: FormStyle,
}

fn quiver_mode(mode: PolarizationMode) -> QuiverMode {
    match mode {
        PolarizationMode::Single | PolarizationMode::Feigin => QuiverMode::Single,
        PolarizationMode::Doubled => QuiverMode::Doubled,
        PolarizationMode::TensorSquare => QuiverMode::Tensor,
    }
}

fn exp(style: FormStyle, form: &str) -> String {
    match style {
        FormStyle::Latexish => format!("e^{{πb({form})}}"),
        _ => form.to_string(),
    }
}

pub fn polarize_cmd(words: &WordArgs, seed_file: Option<&PathBuf>, opts: &PolarizeOptions, out: Option<&PathBuf>) -> Result<bool> {
    let needed = opts.render_phi.map(|k| match k {
        PhiKind::Phi1 => PolarizationMode::Doubled,
        PhiKind::Phi3 => PolarizationMode::TensorSquare,
    });
    let mode = match (opts.mode, needed) {
        (Some(m), Some(n)) if m != n => bail!("--render-phi needs --mode {n:?}, got {m:?}"),
        (Some(m), _) => m,
        (None, Some(n)) => n,
        (None, None) => PolarizationMode::Single,
    };
    let word = word_from(words, seed_file, quiver_mode(mode))?;
    let pol = polarize(&word, mode, opts.lambda);
    let phi = match opts.render_phi {
        Some(kind) => Some(render_phi_operators(&build_phi(&word, kind, &EPathRegistry::default())?.factors, &pol)?),
        None => None,
    };
    let shift = opts.shift.then(|| {
        let goal = match mode {
            PolarizationMode::TensorSquare => NormalizationGoal::KillSecondFactor,
            _ => NormalizationGoal::KillLambda,
        };
        normalization_shift(&pol, goal)
    });
    let text = match opts.style {
        FormStyle::Json => polarize_json(&word, &pol, phi.as_deref(), shift.as_ref()),
        style => polarize_text(&word, &pol, phi.as_deref(), shift.as_ref(), style),
    };
    emit(out, &text)?;
    Ok(true)
}

fn doubled(f: &qcluster::polarization::LinearForm) -> String {
    f.scale(qcluster::lie_data::Rat::from_integer(2)).to_string()
}

fn f_terms(pol: &Polarization, root: usize) -> Vec<String> {
    let m = &pol.roots[&root].monomials;
    m[..m.len() - 1].iter().map(doubled).collect()
}

fn polarize_text(
    word: &ReducedWord,
    pol: &Polarization,
    phi: Option<&[RenderedFactor]>,
    shift: Option<&AffineShift>,
    style: FormStyle,
) -> String {
    let mut s = format!("{:?} polarization of word {word}\n", pol.mode);
    for (k, form) in pol.forms.iter().enumerate() {
        let _ = writeln!(s, "X_{} = {}", pol.seed.label(k), exp(style, &doubled(form)));
    }
    for root in pol.roots.keys() {
        let terms: Vec<String> = f_terms(pol, *root).iter().map(|t| exp(style, t)).collect();
        let _ = writeln!(s, "f_{root} = {}", terms.join(" + "));
        let _ = writeln!(s, "K'_{root} = {}", exp(style, &doubled(&pol.roots[root].kprime)));
    }
    if let Some(phi) = phi {
        for (i, r) in phi.iter().enumerate() {
            let line = match style {
                FormStyle::Latexish => r.to_string(),
                _ => r.exponent.to_string(),
            };
            let _ = writeln!(s, "Φ #{}: {line}", i + 1);
        }
    }
    if let Some(shift) = shift {
        for line in shift.render() {
            let _ = writeln!(s, "S: {line}");
        }
    }
    s
}

fn polarize_json(word: &ReducedWord, pol: &Polarization, phi: Option<&[RenderedFactor]>, shift: Option<&AffineShift>) -> String {
    let nodes: Vec<_> = pol
        .forms
        .iter()
        .enumerate()
        .map(|(k, f)| json!({ "label": pol.seed.label(k), "exponent": doubled(f) }))
        .collect();
    let roots: Vec<_> = pol
        .roots
        .iter()
        .map(|(r, rf)| json!({ "root": r, "f": f_terms(pol, *r), "kprime": doubled(&rf.kprime) }))
        .collect();
    let mut doc = json!({
        "word": word.spec(),
        "mode": format!("{:?}", pol.mode).to_lowercase(),
        "nodes": nodes,
        "roots": roots,
    });
    if let Some(phi) = phi {
        doc["phi"] = json!(phi
            .iter()
            .map(|r| json!({ "flavor": r.flavor.to_string(), "exponent": r.exponent.to_string() }))
            .collect::<Vec<_>>());
    }
    if let Some(shift) = shift {
        doc["shift"] = json!(shift.render());
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}
