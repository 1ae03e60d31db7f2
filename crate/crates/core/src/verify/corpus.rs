//! Named, deterministically generated test corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compat::VariableRef;
use crate::error::{Error, Result};
use crate::matrix::{ExchangeMatrix, IntMat};
use crate::pattern::{EvolveOptions, MutationWord, PatternState};
use crate::rank2::rank2_matrix;
use crate::rootsys::{named_cartan, CartanData};

/// Which vertices of the tree a case covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WordPolicy {
    /// Every vertex within this distance of the root.
    Depth { depth: usize },
    /// Every seed of the exchange graph, which must close up.
    Complete { max_seeds: usize },
    /// Rank-2 vertices `t_n` for `|n| <= max_n`.
    Rank2Line { max_n: i64 },
    /// Every prefix of each listed word.
    Walks { words: Vec<MutationWord> },
}

/// Degrees and vectors expected for one pair of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairExpectation {
    pub a: VariableRef,
    pub b: VariableRef,
    pub f_degrees: Option<(i64, i64)>,
    pub d_degrees: Option<(i64, i64)>,
    /// Column `b.index` of the F-matrix with `a`'s seed as initial.
    pub f_vector: Option<Vec<i64>>,
    /// Column `b.index` of the D-matrix with `a`'s seed as initial.
    pub d_vector: Option<Vec<i64>>,
    /// Column `a.index` of the D-matrix with `b`'s seed as initial.
    pub reverse_d_vector: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusCase {
    pub label: String,
    pub matrix: ExchangeMatrix,
    pub policy: WordPolicy,
    #[serde(skip)]
    pub cartan: Option<CartanData>,
    /// Rank-2 parameters `(b, c)` when the matrix is `[[0, b], [-c, 0]]`.
    pub rank2: Option<(i64, i64)>,
    pub pairs: Vec<PairExpectation>,
    /// Index subset for embedding checks, 0-based.
    pub subset: Option<Vec<usize>>,
    /// The d-vector analogue of exchangeability is known to fail here.
    pub d_exchange_fails: bool,
}

impl CorpusCase {
    pub fn new(label: impl Into<String>, matrix: ExchangeMatrix, policy: WordPolicy) -> Self {
        CorpusCase {
            label: label.into(),
            matrix,
            policy,
            cartan: None,
            rank2: None,
            pairs: Vec::new(),
            subset: None,
            d_exchange_fails: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Corpus {
    pub name: String,
    pub provenance: String,
    pub cases: Vec<CorpusCase>,
}

pub const CORPUS_NAMES: &[&str] = &[
    "a2-golden",
    "finite-small",
    "finite-all",
    "classical",
    "skew-finite",
    "b2g2-depth8",
    "separation",
    "rank2-affine",
    "rank2-finite",
    "rank2-fd",
    "a2hat-embedding",
    "a2hat-counterexample",
    "d4hat-counterexample",
    "ex418",
    "random",
];

pub fn builtin_corpora() -> Vec<Corpus> {
    CORPUS_NAMES
        .iter()
        .map(|n| corpus(n).expect("builtin corpus"))
        .collect()
}

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::from_rows(rows).expect("builtin matrix is skew-symmetrizable")
}

fn r(word: &[usize], index: usize) -> VariableRef {
    VariableRef::new(MutationWord::from_one_based(word).unwrap(), index - 1)
}

fn cartan_case(name: &str) -> CorpusCase {
    let data = CartanData::new(named_cartan(name).expect("known name")).expect("finite type");
    let b = data.exchange_matrix().expect("B(C) is skew-symmetrizable");
    let mut case = CorpusCase::new(name.to_ascii_uppercase(), b, WordPolicy::Complete { max_seeds: 10_000 });
    case.cartan = Some(data);
    case
}

fn rank2_case(b: i64, c: i64, policy: WordPolicy) -> CorpusCase {
    let mut case = CorpusCase::new(format!("rank2({b},{c})"), rank2_matrix(b, c).unwrap(), policy);
    case.rank2 = Some((b, c));
    case
}

pub fn affine_a2() -> ExchangeMatrix {
    m(&[&[0, 2, -1], &[-2, 0, 1], &[1, -1, 0]])
}

pub fn affine_d4() -> ExchangeMatrix {
    m(&[
        &[0, 1, 0, -1, 0],
        &[-1, 0, 1, 1, -1],
        &[0, -1, 0, 1, 0],
        &[1, -1, -1, 0, 1],
        &[0, 1, 0, -1, 0],
    ])
}

pub fn example_7x7() -> ExchangeMatrix {
    m(&[
        &[0, 0, -1, 0, 1, 0, 0],
        &[0, 0, -1, 0, 1, 0, 0],
        &[1, 1, 0, -1, -1, 1, 0],
        &[0, 0, 1, 0, 0, -1, 1],
        &[-1, -1, 1, 0, 0, -1, 1],
        &[0, 0, -1, 1, 1, 0, -1],
        &[0, 0, 0, -1, -1, 1, 0],
    ])
}

/// Looks up a corpus by name.
pub fn corpus(name: &str) -> Result<Corpus> {
    let (provenance, cases) = match name {
        "a2-golden" => (
            "type A2 reference tables",
            vec![CorpusCase::new("A2", m(&[&[0, 1], &[-1, 0]]), WordPolicy::Depth { depth: 6 })],
        ),
        "finite-small" => (
            "Cartan types A2, A3, B2, G2",
            ["a2", "a3", "b2", "g2"].iter().map(|n| cartan_case(n)).collect(),
        ),
        "finite-all" => (
            "Cartan types A1xA1, A2, A3, A4, B2, B3, C3, D4, G2",
            ["a1xa1", "a2", "a3", "a4", "b2", "b3", "c3", "d4", "g2"]
                .iter()
                .map(|n| cartan_case(n))
                .collect(),
        ),
        "classical" => (
            "Cartan types A2, A3, B2, C3, G2",
            ["a2", "a3", "b2", "c3", "g2"].iter().map(|n| cartan_case(n)).collect(),
        ),
        "skew-finite" => (
            "skew-symmetric and skew-symmetrizable finite types A2, A3, B2, G2",
            ["a2", "a3", "b2", "g2"].iter().map(|n| cartan_case(n)).collect(),
        ),
        "b2g2-depth8" => (
            "rank-2 finite types B2 and G2 to depth 8 in both sign conventions",
            vec![
                CorpusCase::new("B2", m(&[&[0, 2], &[-1, 0]]), WordPolicy::Depth { depth: 8 }),
                CorpusCase::new("C2", m(&[&[0, 1], &[-2, 0]]), WordPolicy::Depth { depth: 8 }),
                CorpusCase::new("G2", m(&[&[0, 3], &[-1, 0]]), WordPolicy::Depth { depth: 8 }),
                CorpusCase::new("G2'", m(&[&[0, 1], &[-3, 0]]), WordPolicy::Depth { depth: 8 }),
            ],
        ),
        "separation" => (
            "A2, B2, G2 and A3 to depth 6",
            vec![
                CorpusCase::new("A2", m(&[&[0, 1], &[-1, 0]]), WordPolicy::Depth { depth: 6 }),
                CorpusCase::new("B2", m(&[&[0, 2], &[-1, 0]]), WordPolicy::Depth { depth: 6 }),
                CorpusCase::new("G2", m(&[&[0, 3], &[-1, 0]]), WordPolicy::Depth { depth: 6 }),
                CorpusCase::new(
                    "A3",
                    m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]),
                    WordPolicy::Depth { depth: 4 },
                ),
            ],
        ),
        "rank2-affine" => (
            "rank 2 with bc >= 4",
            [(2, 2), (1, 4), (2, 3), (3, 3)]
                .iter()
                .map(|&(b, c)| rank2_case(b, c, WordPolicy::Rank2Line { max_n: 12 }))
                .collect(),
        ),
        "rank2-finite" => (
            "rank 2 with bc <= 3",
            [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (0, 0)]
                .iter()
                .map(|&(b, c)| rank2_case(b, c, WordPolicy::Rank2Line { max_n: 8 }))
                .collect(),
        ),
        "rank2-fd" => (
            "rank 2 (2,2) to |n| <= 10",
            vec![rank2_case(2, 2, WordPolicy::Rank2Line { max_n: 10 })],
        ),
        "a2hat-embedding" => ("affine A2, subpattern on {1,2}", {
            let mut c = CorpusCase::new("affine A2", affine_a2(), WordPolicy::Depth { depth: 6 });
            c.subset = Some(vec![0, 1]);
            vec![c]
        }),
        "a2hat-counterexample" => ("affine A2 pair with d-degrees (1,1) and f-degrees (2,2)", {
            let mut c = CorpusCase::new(
                "affine A2",
                affine_a2(),
                WordPolicy::Walks {
                    words: vec![MutationWord::from_one_based(&[3, 2, 1]).unwrap()],
                },
            );
            c.pairs.push(PairExpectation {
                a: r(&[], 3),
                b: r(&[3, 2, 1], 1),
                f_degrees: Some((2, 2)),
                d_degrees: Some((1, 1)),
                f_vector: Some(vec![1, 1, 2]),
                d_vector: Some(vec![1, 1, 1]),
                reverse_d_vector: Some(vec![1, 1, 1]),
            });
            c.d_exchange_fails = true;
            vec![c]
        }),
        "d4hat-counterexample" => ("affine D4 pair with d-degrees (1,1) and f-degrees (2,2)", {
            let mut c = CorpusCase::new(
                "affine D4",
                affine_d4(),
                WordPolicy::Walks {
                    words: vec![MutationWord::from_one_based(&[1, 2, 3, 4]).unwrap()],
                },
            );
            c.pairs.push(PairExpectation {
                a: r(&[], 1),
                b: r(&[1, 2, 3, 4], 4),
                f_degrees: Some((2, 2)),
                d_degrees: Some((1, 1)),
                f_vector: None,
                d_vector: None,
                reverse_d_vector: None,
            });
            c.d_exchange_fails = true;
            vec![c]
        }),
        "ex418" => ("7x7 matrix with asymmetric d-degrees 2 and 1", {
            let mut c = CorpusCase::new(
                "7x7",
                example_7x7(),
                WordPolicy::Walks {
                    words: vec![MutationWord::from_one_based(&[2, 3, 4, 5, 7]).unwrap()],
                },
            );
            c.pairs.push(PairExpectation {
                a: r(&[], 2),
                b: r(&[2, 3, 4, 5, 7], 7),
                f_degrees: None,
                d_degrees: Some((2, 1)),
                f_vector: None,
                d_vector: None,
                reverse_d_vector: None,
            });
            vec![c]
        }),
        "random" => ("200 seeded random skew-symmetrizable matrices", random_cases(0x5eed, 200, 4, 3, 6)),
        _ => return Err(Error::UnknownCorpus(name.into())),
    };
    Ok(Corpus {
        name: name.into(),
        provenance: provenance.into(),
        cases,
    })
}

/// Largest number of monomials allowed in the degree box of a random-walk
/// F-polynomial.
pub const MAX_BOX: u64 = 4096;

fn within_budget(s: &PatternState, max_entry: i64) -> bool {
    let n = s.rank();
    s.b().matrix().entries().iter().all(|v| v.abs() <= max_entry)
        && (0..n).all(|j| {
            s.f().column(j)
                .iter()
                .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64 + 1))
                .is_some_and(|b| b <= MAX_BOX)
        })
}

/// Random skew-symmetrizable matrices of rank `2..=max_n` with entries in
/// `[-max_entry, max_entry]`, each with one random reduced walk of length at
/// most `depth` that stays within the entry bound and [`MAX_BOX`].
pub fn random_cases(seed: u64, count: usize, max_n: usize, max_entry: i64, depth: usize) -> Vec<CorpusCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|idx| {
            let n = rng.gen_range(2..=max_n.max(2));
            let s: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            let mut b = IntMat::zeros(n, n).unwrap();
            for i in 0..n {
                for j in (i + 1)..n {
                    // pairs (x, y) with s_i x = -s_j y and both within range
                    let options: Vec<(i64, i64)> = (-max_entry..=max_entry)
                        .filter_map(|x| {
                            let num = -x * s[i];
                            (num % s[j] == 0 && (num / s[j]).abs() <= max_entry).then(|| (x, num / s[j]))
                        })
                        .collect();
                    let (x, y) = options[rng.gen_range(0..options.len())];
                    b.set(i, j, x);
                    b.set(j, i, y);
                }
            }
            let b = ExchangeMatrix::new(b).expect("constructed from a symmetrizer");
            // The walk only visits vertices whose exchange matrix keeps the
            // entry bound and whose F-polynomials fit in a bounded degree box.
            let mut word = Vec::with_capacity(depth);
            let mut current = PatternState::initial(&b, EvolveOptions::matrices_only());
            while word.len() < depth {
                let options: Vec<(usize, PatternState)> = (0..n)
                    .filter(|&k| word.last() != Some(&k))
                    .filter_map(|k| current.step(k).ok().map(|s| (k, s)))
                    .filter(|(_, s)| within_budget(s, max_entry))
                    .collect();
                if options.is_empty() {
                    break;
                }
                let (k, s) = options[rng.gen_range(0..options.len())].clone();
                word.push(k);
                current = s;
            }
            CorpusCase::new(
                format!("random-{idx:03}"),
                b,
                WordPolicy::Walks {
                    words: vec![MutationWord::new(word)],
                },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_build() {
        let all = builtin_corpora();
        assert_eq!(all.len(), CORPUS_NAMES.len());
        assert!(all.iter().all(|c| !c.cases.is_empty()));
        assert!(matches!(corpus("nope"), Err(Error::UnknownCorpus(_))));
    }

    #[test]
    fn random_is_deterministic_and_bounded() {
        let a = random_cases(7, 50, 4, 3, 6);
        let b = random_cases(7, 50, 4, 3, 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.matrix, y.matrix);
            assert_eq!(x.policy, y.policy);
            assert!(x.matrix.matrix().entries().iter().all(|v| v.abs() <= 3));
            assert!(x.matrix.rank() <= 4);
        }
    }
}
