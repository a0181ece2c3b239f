use std::collections::BTreeMap;

use super::{CheckRecord, Outcome, VerificationReport};
use crate::basic_quiver::{BorelRealization, Sign};
use crate::dilog_series::q_binomial;
use crate::error::Result;
use crate::lie_data::{validate_reduced_word, LieType, Rat, ReducedWord, RootDatum, ShortRootConvention};
use crate::qtorus::{commutator_quotient, QLaurent, TorusElement};

/// Words used by the relation battery: A₂, A₃, B₂, B₃.
pub fn relation_words() -> Result<Vec<ReducedWord>> {
    let mk = |t, n, c, w: &[usize]| validate_reduced_word(&RootDatum::new(t, n, c)?, w);
    Ok(vec![
        mk(LieType::A, 2, ShortRootConvention::Bourbaki, &[1, 2, 1])?,
        mk(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1])?,
        mk(LieType::B, 2, ShortRootConvention::Paper, &[1, 2, 1, 2])?,
        mk(LieType::B, 3, ShortRootConvention::Paper, &[1, 2, 1, 2, 3, 2, 1, 2, 3])?,
    ])
}

fn zero_or_residual(e: &TorusElement, what: String) -> Outcome {
    if e.is_zero() {
        Outcome::pass(what)
    } else {
        Outcome::fail(what).with_residual(e.to_string())
    }
}

/// `K'_i f_j = q_i^{a_ij} f_j K'_i`.
fn cartan(r: &BorelRealization, i: usize, j: usize) -> Result<Outcome> {
    let datum = r.word.datum();
    let (ki, fj) = (&r.generators[&i].k, &r.generators[&j].f);
    let q = QLaurent::q_pow(datum.d(i) * Rat::from_integer(datum.a(i, j)));
    let res = ki.mul(fj)?.sub(&fj.mul(ki)?.scale(&q))?;
    Ok(zero_or_residual(&res, format!("K'{i} f{j}")))
}

/// `Σ_k (-1)^k [n k]_{q_i} f_i^k f_j f_i^{n-k} = 0`, `n = 1 - a_ij`.
fn serre(r: &BorelRealization, i: usize, j: usize) -> Result<Outcome> {
    let datum = r.word.datum();
    let n = (1 - datum.a(i, j)) as usize;
    let (fi, fj) = (&r.generators[&i].f, &r.generators[&j].f);
    let mut powers = vec![TorusElement::one(fi.torus())];
    for _ in 0..n {
        powers.push(powers.last().expect("nonempty").mul(fi)?);
    }
    let mut sum = TorusElement::zero(fi.torus());
    for k in 0..=n {
        let mut c = q_binomial(n, k, datum.d(i));
        if k % 2 == 1 {
            c = c.neg();
        }
        sum = sum.add(&powers[k].mul(fj)?.mul(&powers[n - k])?.scale(&c))?;
    }
    Ok(zero_or_residual(&sum, format!("serre({i},{j}) n={n}")))
}

/// `[e_i⁻, f_j] / (q_i − q_i⁻¹) = δ_ij K'_i`.
fn e_f(r: &BorelRealization, i: usize, j: usize) -> Result<Outcome> {
    let datum = r.word.datum();
    let (e, f) = (&r.generators[&i].e_minus, &r.generators[&j].f);
    let what = format!("[e{i}-, f{j}]");
    let c = match commutator_quotient(e, f, datum.d(i)) {
        Ok(c) => c,
        Err(err) => return Ok(Outcome::fail(format!("{what}: {err}")).with_residual(e.commutator(f)?.to_string())),
    };
    let expected = if i == j { r.generators[&i].k.clone() } else { TorusElement::zero(e.torus()) };
    Ok(zero_or_residual(&c.sub(&expected)?, what))
}

/// `f_i⁻ f_i⁺ = q_i^{-2} f_i⁺ f_i⁻` on a doubled quiver.
fn halves(r: &BorelRealization, i: usize) -> Result<Option<Outcome>> {
    let Some((minus, plus)) = &r.generators[&i].halves else { return Ok(None) };
    let q = QLaurent::q_pow(r.word.datum().d(i) * Rat::from_integer(-2));
    let res = minus.mul(plus)?.sub(&plus.mul(minus)?.scale(&q))?;
    Ok(Some(zero_or_residual(&res, format!("f{i}- f{i}+"))))
}

/// `f^{k,±} f^{l,±} = q_{i_k}^{±a_{i_k i_l}} f^{l,±} f^{k,±}` for `l < k`,
/// compared on lattice vectors: `-2(λ_k, λ_l) = ±d_{i_k} a_{i_k i_l}`.
fn monomial_pairs(r: &BorelRealization) -> Outcome {
    let mut by_class: BTreeMap<(usize, bool), Vec<(usize, &crate::qtorus::LatticeVector)>> = BTreeMap::new();
    for g in r.generators.values() {
        for m in &g.monomials {
            by_class.entry((m.group, m.sign == Sign::Plus)).or_default().push((m.position, &m.vector));
        }
    }
    let datum = r.word.datum();
    let mut checked = 0;
    for ((group, plus), list) in &by_class {
        let word = &r.words[*group];
        let s = if *plus { 1 } else { -1 };
        for (k, vk) in list {
            for (l, vl) in list {
                if l >= k {
                    continue;
                }
                let (ik, il) = (word.root_of(*k), word.root_of(*l));
                let lhs = r.torus.pairing(vk, vl) * Rat::from_integer(-2);
                let rhs = datum.d(ik) * Rat::from_integer(s * datum.a(ik, il));
                checked += 1;
                if lhs != rhs {
                    return Outcome::fail(format!("f^({k},{}) f^({l},{}) in group {group}", s, s))
                        .with_residual(format!("{lhs} != {rhs}"));
                }
            }
        }
    }
    Outcome::pass(format!("{checked} pairs"))
}

/// Evaluate the quantum-group relations on assembled generators: Cartan
/// relations, Serre relations, `[e_i⁻, f_j]`, the `f⁻f⁺` exchange, and the
/// pairwise commutation of the monomials `f^{k,±}`.
pub fn run_borel_relations(r: &BorelRealization) -> VerificationReport {
    let label = format!("{}{} {} {}", r.word.datum().lie_type, r.word.rank(), r.word, r.mode.name());
    let mut report = VerificationReport::new(label);
    let n = r.word.rank();
    let mut rec = |name: String, body: &dyn Fn() -> Result<Outcome>| report.push(CheckRecord::run(&name, None, None, body));
    for i in 1..=n {
        for j in 1..=n {
            rec(format!("cartan K'{i} f{j}"), &|| cartan(r, i, j));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                rec(format!("serre f{i} f{j}"), &|| serre(r, i, j));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            rec(format!("commutator e{i}- f{j}"), &|| e_f(r, i, j));
        }
    }
    if r.generators.values().any(|g| g.halves.is_some()) {
        for i in 1..=n {
            rec(format!("exchange f{i}- f{i}+"), &|| Ok(halves(r, i)?.expect("doubled realization")));
        }
    }
    rec("monomial commutation".to_string(), &|| Ok(monomial_pairs(r)));
    report
}
