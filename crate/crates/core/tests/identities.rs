//! Structural identities tying the closed forms, the recursions, and the
//! Moebius composition route together, exercised on random data with fixed
//! seeds. Infinity and zero seeds are first-class throughout.

use cfrac_core::{
    convergent_at, reverse_sequence, tail_sequence, Complex64, ConvergentState, ElementSequence,
    ExtendedComplex, MoebiusMap,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn random_elements(rng: &mut StdRng, len: usize, mag_low: f64, mag_high: f64) -> Vec<Complex64> {
    (0..len)
        .map(|_| {
            Complex64::from_polar(
                10f64.powf(rng.random_range(mag_low.log10()..=mag_high.log10())),
                rng.random_range(-PI..PI),
            )
        })
        .collect()
}

/// Mix of finite, zero, and infinite points.
fn random_point(rng: &mut StdRng) -> ExtendedComplex {
    match rng.random_range(0..10) {
        0 => ExtendedComplex::infinity(),
        1 => ExtendedComplex::zero(),
        _ => ExtendedComplex::finite(Complex64::from_polar(
            rng.random_range(0.05..3.0),
            rng.random_range(-PI..PI),
        )),
    }
}

fn states(seq: &ElementSequence) -> Vec<ConvergentState> {
    let mut out = Vec::with_capacity(seq.len());
    let mut state = ConvergentState::start(seq.element(1).unwrap()).unwrap();
    out.push(state);
    for k in 2..=seq.len() {
        state = state.step(seq.element(k).unwrap()).unwrap();
        out.push(state);
    }
    out
}

#[test]
fn closed_form_matches_moebius_composition() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..300 {
        let n = rng.random_range(1..=20);
        let elements = random_elements(&mut rng, n, 0.5, 2.0);
        let seq = ElementSequence::from_elements(elements.clone()).unwrap();
        let w = random_point(&mut rng);

        let mut composed = MoebiusMap::identity();
        for &b in &elements {
            composed = composed.compose(&MoebiusMap::element_step(b).unwrap());
        }
        let via_maps = composed.apply(&w);
        let via_closed_form = convergent_at(&seq, n, &w).unwrap();
        assert!(
            via_closed_form.approx_eq(&via_maps, 1e-10),
            "n={n} w={w:?}: closed {via_closed_form:?} vs maps {via_maps:?}"
        );
    }
}

#[test]
fn tails_invert_the_convergent_map() {
    let mut rng = StdRng::seed_from_u64(103);
    for _ in 0..300 {
        let n = rng.random_range(1..=10);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let state = states(&seq)[n - 1];
        let w = random_point(&mut rng);
        let tail = state.tail_at(&w);
        let back = state.convergent_at(&tail);
        assert!(
            back.approx_eq(&w, 1e-9),
            "n={n}: f_n(t_n({w:?})) = {back:?}"
        );
    }
}

#[test]
fn reverse_equals_negated_reciprocal_tail() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..300 {
        let n = rng.random_range(1..=10);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let state = states(&seq)[n - 1];
        let w = random_point(&mut rng);
        let lhs = reverse_sequence(&seq, n, w).unwrap();
        let rhs = state.tail_at(&w.neg_reciprocal()).neg_reciprocal();
        assert!(
            lhs.approx_eq(&rhs, 1e-9),
            "n={n} w={w:?}: {lhs:?} vs {rhs:?}"
        );
    }
}

#[test]
fn tail_recursion_reproduces_the_closed_form_family() {
    let mut rng = StdRng::seed_from_u64(109);
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let all = states(&seq);
        let w = random_point(&mut rng);
        let top = all[n - 1].tail_at(&w);
        let tails = tail_sequence(&seq, n, top).unwrap();
        for k in 1..n {
            let closed = all[k - 1].tail_at(&w);
            assert!(
                tails[n - k].approx_eq(&closed, 1e-9),
                "k={k}: recursion {:?} vs closed {closed:?}",
                tails[n - k]
            );
        }
        assert!(tails[n].approx_eq(&w, 1e-9));
    }
}

#[test]
fn tail_run_lands_on_the_convergent_value() {
    // the bottom of the backward recursion from any seed s is f_n(s)
    let mut rng = StdRng::seed_from_u64(111);
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let seed = random_point(&mut rng);
        let tails = tail_sequence(&seq, n, seed).unwrap();
        let direct = convergent_at(&seq, n, &seed).unwrap();
        assert!(
            tails.last().unwrap().approx_eq(&direct, 1e-10),
            "n={n} seed={seed:?}: {:?} vs {direct:?}",
            tails.last().unwrap()
        );
    }
}

#[test]
fn denominator_ratio_family_from_infinite_seed() {
    // seeding the backward recursion with -B_N/B_{N-1} walks the whole
    // -B_n/B_{n-1} family
    let mut rng = StdRng::seed_from_u64(113);
    for _ in 0..200 {
        let n = rng.random_range(2..=12);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let all = states(&seq);
        let (_, _, den_cur, den_prev) = all[n - 1].entries();
        let seed = ExtendedComplex::new(-den_cur, den_prev).unwrap();
        let tails = tail_sequence(&seq, n, seed).unwrap();
        for k in 1..n {
            let (_, _, dc, dp) = all[k - 1].entries();
            let expected = ExtendedComplex::new(-dc, dp).unwrap();
            assert!(
                tails[n - k].approx_eq(&expected, 1e-10),
                "k={k}: {:?} vs {expected:?}",
                tails[n - k]
            );
        }
    }
}

#[test]
fn numerator_ratio_family_from_zero_seed() {
    // seeding with -A_N/A_{N-1} walks the -A_n/A_{n-1} family, whose
    // anchor value at depth zero is 0
    let mut rng = StdRng::seed_from_u64(127);
    for _ in 0..200 {
        let n = rng.random_range(2..=12);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let all = states(&seq);
        let (num_cur, num_prev, _, _) = all[n - 1].entries();
        let seed = ExtendedComplex::new(-num_cur, num_prev).unwrap();
        let tails = tail_sequence(&seq, n, seed).unwrap();
        for k in 1..n {
            let (nc, np, _, _) = all[k - 1].entries();
            let expected = ExtendedComplex::new(-nc, np).unwrap();
            assert!(
                tails[n - k].approx_eq(&expected, 1e-10),
                "k={k}: {:?} vs {expected:?}",
                tails[n - k]
            );
        }
        assert!(tails[n].approx_eq(&ExtendedComplex::zero(), 1e-10));
    }
}

#[test]
fn reverse_families_from_infinity_and_zero() {
    let mut rng = StdRng::seed_from_u64(131);
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let seq = ElementSequence::from_elements(random_elements(&mut rng, n, 0.5, 2.0)).unwrap();
        let all = states(&seq);
        let (num_cur, num_prev, den_cur, den_prev) = all[n - 1].entries();

        // r_{n+1}(inf) = A_{n-1}/A_n
        let from_inf = reverse_sequence(&seq, n, ExtendedComplex::infinity()).unwrap();
        let expected = ExtendedComplex::new(num_prev, num_cur).unwrap();
        assert!(from_inf.approx_eq(&expected, 1e-10));

        // r_{n+1}(0) = B_{n-1}/B_n; the recursion is the authority here
        let from_zero = reverse_sequence(&seq, n, ExtendedComplex::zero()).unwrap();
        let expected = ExtendedComplex::new(den_prev, den_cur).unwrap();
        assert!(from_zero.approx_eq(&expected, 1e-10));
    }
}
