//! Independent cross-checks of the integer and polynomial recursions
//! against direct Laurent mutation of seeds with principal coefficients.

use cluster_lab::laurent::MultiPoly;
use cluster_lab::matrix::ExchangeMatrix;
use cluster_lab::pattern::{evolve, reduced_words, CoefficientSpec, EvolveOptions, Seed};
use cluster_lab::verify::{corpus::random_cases, WordPolicy};
use proptest::prelude::*;

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::from_rows(rows).unwrap()
}

/// Every recursion output that can be read off the Laurent expansions.
fn cross_check(b: &ExchangeMatrix, word: &[usize], check_d: bool) {
    let n = b.rank();
    let state = evolve(b, word, EvolveOptions::default()).unwrap();
    let seed = Seed::initial(b, &CoefficientSpec::Principal)
        .unwrap()
        .mutate_along(word)
        .unwrap();
    let fp = state.fpolys().unwrap();
    for j in 0..n {
        let x = &seed.x()[j];
        assert!(x.is_subtraction_free(), "{word:?} x{}", j + 1);
        // F-polynomial: set every x_i to 1
        let f: MultiPoly = x.specialize_head_to_one(n).to_multi().unwrap();
        assert_eq!(f, fp[j], "F{} at {word:?}", j + 1);
        // g-vector: degree under deg x_i = e_i, deg y_k = -b_k
        for (e, _) in x.terms() {
            let mut deg: Vec<i64> = e[..n].iter().map(|&v| i64::from(v)).collect();
            for k in 0..n {
                for (i, d) in deg.iter_mut().enumerate() {
                    *d -= b.get(i, k) * i64::from(e[n + k]);
                }
            }
            assert_eq!(deg, state.g().column(j), "g{} at {word:?}", j + 1);
        }
        // c-vector: principal coefficients are y^c
        assert_eq!(seed.y()[j], state.c().column(j), "c{} at {word:?}", j + 1);
    }
    assert_eq!(seed.b(), state.b());
    if check_d {
        assert_eq!(&seed.denominator_vectors().unwrap(), state.d(), "D at {word:?}");
    }
}

#[test]
fn finite_types_to_depth_five() {
    for b in [
        m(&[&[0, 1], &[-1, 0]]),
        m(&[&[0, 2], &[-1, 0]]),
        m(&[&[0, 1], &[-3, 0]]),
        m(&[&[0, 1, 0], &[-1, 0, 2], &[0, -1, 0]]),
    ] {
        for w in reduced_words(b.rank(), 5) {
            cross_check(&b, &w, true);
        }
    }
}

#[test]
fn affine_rank_two_line() {
    let b = m(&[&[0, 2], &[-2, 0]]);
    for n in -8..=8 {
        cross_check(&b, &cluster_lab::rank2::vertex_word(n), true);
    }
}

#[test]
fn rank_two_closed_form_degrees() {
    for (p, q) in [(2, 2), (1, 4), (2, 3)] {
        let b = cluster_lab::rank2::rank2_matrix(p, q).unwrap();
        for n in -6..=6 {
            let s = evolve(&b, &cluster_lab::rank2::vertex_word(n), EvolveOptions::default()).unwrap();
            let closed = cluster_lab::rank2::closed_form_f(p, q, n).unwrap();
            for (j, f) in s.fpolys().unwrap().iter().enumerate() {
                let deg: Vec<i64> = f.max_degrees().unwrap().into_iter().map(i64::from).collect();
                assert_eq!(deg, closed.column(j), "({p},{q}) n={n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_walks_agree_with_laurent_mutation(seed in any::<u64>()) {
        let case = random_cases(seed, 1, 3, 2, 4).remove(0);
        let WordPolicy::Walks { words } = &case.policy else { unreachable!() };
        let word = words[0].letters();
        for l in 0..=word.len() {
            cross_check(&case.matrix, &word[..l], false);
        }
    }
}
