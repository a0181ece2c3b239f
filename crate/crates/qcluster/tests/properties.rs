use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use qcluster::basic_quiver::{assemble_borel, BorelMode, EPathRegistry};
use qcluster::dilog_series::closed_form_matches_oracle;
use qcluster::lie_data::{validate_reduced_word, LieType, Rat, ReducedWord, RootDatum, ShortRootConvention};
use qcluster::mutation_engine::{
    ad_dilog_monomial, build_phi, derive_mutation_sequence, monomial_transform, verify_flip, FracElement,
    PhiKind, QuantumMutation,
};
use qcluster::polarization::{polarize, PolarizationMode};
use qcluster::qtorus::{right_divide_general, LatticeVector, QLaurent, Torus, TorusElement};
use qcluster::relations_suite::{random_oracle_pair, random_seed, run_borel_relations};
use qcluster::Error;

fn torus3(entries: [i64; 3], half: bool) -> Arc<Torus> {
    let d = if half { Rat::new(1, 2) } else { Rat::from_integer(1) };
    let mut form = vec![vec![Rat::zero(); 3]; 3];
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        form[i][j] = Rat::from_integer(entries[k]) * d;
        form[j][i] = -form[i][j];
    }
    Torus::new(vec!["a".into(), "b".into(), "c".into()], form, vec![d; 3])
}

fn element(torus: &Arc<Torus>, terms: &[([i64; 3], i64, i64)]) -> TorusElement {
    let mut out = TorusElement::zero(torus);
    for (v, e, c) in terms {
        let coef = QLaurent::monomial(Rat::from_integer(*e), qcluster::qtorus::coef(*c));
        out.add_term(LatticeVector::from_pairs((0..3).map(|i| (i, v[i]))), coef);
    }
    out
}

fn terms() -> impl Strategy<Value = Vec<([i64; 3], i64, i64)>> {
    prop::collection::vec((prop::array::uniform3(-2i64..=2), -3i64..=3, prop_oneof![-2i64..=-1, 1i64..=2]), 1..4)
}

/// Walk through the commutation class and braid moves of a reduced word.
fn braid_walk(datum: &RootDatum, start: &[usize], moves: &[usize]) -> ReducedWord {
    let mut w = start.to_vec();
    for &at in moves {
        let p = at % w.len();
        let (i, j) = (w[p], *w.get(p + 1).unwrap_or(&0));
        if j == 0 || i == j {
            continue;
        }
        let m = match datum.a(i, j) * datum.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => continue,
        };
        if p + m > w.len() {
            continue;
        }
        let window = &w[p..p + m];
        let alternating = window.iter().enumerate().all(|(k, &x)| x == if k % 2 == 0 { i } else { j });
        if alternating {
            for (k, x) in w[p..p + m].iter_mut().enumerate() {
                *x = if k % 2 == 0 { j } else { i };
            }
        }
    }
    validate_reduced_word(datum, &w).expect("braid moves preserve reducedness")
}

fn random_word(kind: u8, moves: &[usize]) -> ReducedWord {
    let (datum, start): (RootDatum, Vec<usize>) = match kind % 4 {
        0 => (RootDatum::new(LieType::A, 2, ShortRootConvention::Bourbaki).unwrap(), vec![1, 2, 1]),
        1 => (RootDatum::new(LieType::A, 3, ShortRootConvention::Bourbaki).unwrap(), vec![1, 2, 1, 3, 2, 1]),
        2 => (RootDatum::new(LieType::B, 2, ShortRootConvention::Paper).unwrap(), vec![1, 2, 1, 2]),
        _ => (RootDatum::new(LieType::B, 3, ShortRootConvention::Paper).unwrap(), vec![1, 2, 1, 2, 3, 2, 1, 2, 3]),
    };
    braid_walk(&datum, &start, moves)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torus_product_is_associative(form in prop::array::uniform3(-2i64..=2), half: bool, a in terms(), b in terms(), c in terms()) {
        let t = torus3(form, half);
        let (a, b, c) = (element(&t, &a), element(&t, &b), element(&t, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn right_division_inverts_multiplication(form in prop::array::uniform3(-2i64..=2), half: bool, a in terms(), d in terms()) {
        let t = torus3(form, half);
        let (a, d) = (element(&t, &a), element(&t, &d));
        let p = a.mul(&d).unwrap();
        prop_assert_eq!(right_divide_general(&p, &d), Some(a));
    }

    #[test]
    fn quantum_mutation_is_an_involution(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = random_seed(&mut rng, 6).unwrap();
        for k in (0..s.len()).filter(|&k| !s.is_frozen(k)) {
            let there = QuantumMutation::new(&s, k).unwrap();
            let back = QuantumMutation::new(&there.target, k).unwrap();
            prop_assert_eq!(&back.target, &s);
            let far = Torus::of_seed(&back.target);
            let near = Torus::of_seed(&s);
            for j in 0..s.len() {
                let x = FracElement::from_poly(TorusElement::monomial(&far, LatticeVector::unit(j)));
                let image = there.apply(&back.apply(&x).unwrap()).unwrap();
                prop_assert!(image.equals_poly(&TorusElement::monomial(&near, LatticeVector::unit(j))).unwrap());
            }
        }
    }

    #[test]
    fn monomial_transform_preserves_the_form(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = random_seed(&mut rng, 8).unwrap();
        let torus = Torus::of_seed(&s);
        for k in (0..s.len()).filter(|&k| !s.is_frozen(k)) {
            let l = monomial_transform(&s, k).unwrap();
            let target = s.mutate(k).unwrap();
            for a in 0..s.len() {
                for b in 0..s.len() {
                    prop_assert_eq!(torus.pairing(l.column(a), l.column(b)), target.w(a, b));
                }
            }
        }
    }

    #[test]
    fn g_then_g_star_is_identity(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (torus, lambda, eta, d, direction) = random_oracle_pair(&mut rng, 3);
        let x = TorusElement::monomial(&torus, lambda);
        let there = ad_dilog_monomial(&FracElement::from_poly(x.clone()), &eta, d, direction).unwrap();
        let back = ad_dilog_monomial(&there, &eta, d, direction.inverse()).unwrap();
        prop_assert!(back.equals_poly(&x).unwrap(), "{}", back);
    }

    #[test]
    fn closed_form_agrees_with_series(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (torus, lambda, eta, d, direction) = random_oracle_pair(&mut rng, 3);
        let v = closed_form_matches_oracle(&torus, &lambda, &eta, d, direction, 6).unwrap();
        prop_assert!(v.passed, "{:?}", v.mismatch);
    }

    #[test]
    fn polarization_matches_the_skew_form(kind: u8, moves in prop::collection::vec(0usize..16, 0..24), lambda: bool) {
        let word = random_word(kind, &moves);
        for mode in [PolarizationMode::Single, PolarizationMode::Feigin, PolarizationMode::Doubled, PolarizationMode::TensorSquare] {
            let pol = polarize(&word, mode, lambda);
            prop_assert!(pol.omega_mismatches().is_empty(), "{} {:?}: {:?}", word, mode, pol.omega_mismatches());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relations_hold_on_braid_equivalent_words(kind: u8, moves in prop::collection::vec(0usize..16, 0..24)) {
        let word = random_word(kind, &moves);
        // E-paths are tabulated for a few words only; other words must say so
        let assembled = match assemble_borel(&word, BorelMode::Single, &EPathRegistry::default()) {
            Err(Error::EPathUnavailable(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let report = run_borel_relations(&assembled);
        prop_assert!(report.passed(), "{}: {:?}", word, report.failures().first().map(|f| (&f.name, &f.detail)));
    }

    #[test]
    fn flips_verify_on_braid_equivalent_words(kind in 0u8..2, moves in prop::collection::vec(0usize..16, 0..24), phi3: bool) {
        let word = random_word(kind, &moves);
        let kind = if phi3 { PhiKind::Phi3 } else { PhiKind::Phi1 };
        let phi = match build_phi(&word, kind, &EPathRegistry::default()) {
            Err(Error::EPathUnavailable(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed).unwrap();
        prop_assert!(verify_flip(&phi, &seq).unwrap().passed(), "{} {}", word, kind);
    }
}
