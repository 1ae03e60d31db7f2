//! Rank-2 patterns `B = [[0, b], [-c, 0]]`: closed-form F-matrices through
//! normalized Chebyshev polynomials, and exchangeability decisions.
//!
//! Vertices of the tree are numbered `t_n`, `n` in the integers. The edge
//! `t_n -- t_{n+1}` carries direction 2 for even `n` and 1 for odd `n`, so
//! `t_n` for `n > 0` is reached by the word `2,1,2,...` of length `n` and for
//! `n < 0` by `1,2,1,...` of length `|n|`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::compat::{compatibility_degree, VariableRef};
use crate::error::{Error, Result};
use crate::explorer::{explore, Bounds};
use crate::matrix::{ExchangeMatrix, IntMat};
use crate::pattern::MutationWord;

/// `S_{-1} = 0`, `S_0 = 1`, `S_p = u S_{p-1} - S_{p-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevTable {
    u: i64,
    /// `values[p + 1] = S_p`.
    values: Vec<BigInt>,
}

impl ChebyshevTable {
    pub fn new(u: i64, max_p: usize) -> Self {
        let mut values = vec![BigInt::from(0), BigInt::from(1)];
        for p in 1..=max_p {
            let next = BigInt::from(u) * &values[p] - &values[p - 1];
            values.push(next);
        }
        ChebyshevTable { u, values }
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    /// `S_p` for `p >= -1`.
    pub fn get(&self, p: i64) -> Option<&BigInt> {
        usize::try_from(p + 1).ok().and_then(|i| self.values.get(i))
    }

    pub fn max_p(&self) -> usize {
        self.values.len() - 2
    }

    /// `S_{p+1} > S_p` for every `0 <= p < max_p`.
    pub fn is_strictly_increasing(&self) -> bool {
        self.values[1..].windows(2).all(|w| w[1] > w[0])
    }
}

pub fn rank2_matrix(b: i64, c: i64) -> Result<ExchangeMatrix> {
    ExchangeMatrix::from_rows(&[[0, b], [-c, 0]])
}

/// The 0-based word reaching `t_n`.
pub fn vertex_word(n: i64) -> Vec<usize> {
    let len = n.unsigned_abs() as usize;
    let first = if n > 0 { 1 } else { 0 };
    (0..len).map(|i| if i % 2 == 0 { first } else { 1 - first }).collect()
}

/// Direction (0-based) of the edge `t_m -- t_{m+1}`.
pub fn edge_label(m: i64) -> usize {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        0
    }
}

/// The vertex index of the endpoint of a word.
pub fn vertex_of_word(word: &[usize]) -> Result<i64> {
    let reduced = MutationWord::new(word.to_vec()).reduce();
    if reduced.letters().iter().any(|&k| k > 1) {
        return Err(Error::BadParameters("rank-2 words use directions 1 and 2".into()));
    }
    let len = reduced.len() as i64;
    Ok(match reduced.letters().first() {
        None => 0,
        Some(1) => len,
        Some(_) => -len,
    })
}

/// Canonical label of `x_{i;m}`: the `m'` with `x_{i;m}` sitting at both
/// `t_{m'}` and `t_{m'+1}`. Distinct labels are distinct variables outside
/// finite type.
pub fn variable_label(i: usize, m: i64) -> i64 {
    if edge_label(m) != i {
        m
    } else {
        m - 1
    }
}

/// The index that the variable with label `m'` carries.
pub fn variable_index(label: i64) -> usize {
    1 - edge_label(label)
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow("closed-form entry"))
}

/// Closed-form F-matrix at `t_n` for `b, c >= 0` with `bc >= 4`.
pub fn closed_form_f(b: i64, c: i64, n: i64) -> Result<IntMat> {
    if b < 0 || c < 0 || b.checked_mul(c).map_or(true, |p| p < 4) {
        return Err(Error::BadParameters(format!(
            "closed forms need b, c >= 0 with bc >= 4, got b={b}, c={c}"
        )));
    }
    if n < 0 {
        let m = closed_form_f(c, b, -n)?;
        return IntMat::from_rows(&[[m.get(1, 1), m.get(1, 0)], [m.get(0, 1), m.get(0, 0)]]);
    }
    match n {
        0 => return IntMat::zeros(2, 2),
        1 => return IntMat::from_rows(&[[0, 0], [0, 1]]),
        _ => {}
    }
    let table = ChebyshevTable::new(b * c - 2, (n as usize) / 2 + 1);
    let s = |p: i64| to_i64(table.get(p).expect("table covers index"));
    let mul = |k: i64, v: i64| k.checked_mul(v).ok_or(Error::Overflow("closed-form entry"));
    let add = |a: i64, v: i64| a.checked_add(v).ok_or(Error::Overflow("closed-form entry"));
    if n % 2 == 0 {
        let (p, q) = ((n - 2) / 2, (n - 4) / 2);
        let diag = add(s(p)?, s(q)?)?;
        IntMat::from_rows(&[[diag, mul(b, s(q)?)?], [mul(c, s(p)?)?, diag]])
    } else {
        let (p, q, r) = ((n - 3) / 2, (n - 5) / 2, (n - 1) / 2);
        IntMat::from_rows(&[
            [add(s(p)?, s(q)?)?, mul(b, s(p)?)?],
            [mul(c, s(p)?)?, add(s(r)?, s(p)?)?],
        ])
    }
}

/// F-matrix at `t_k` relative to the seed at `t_m` taken as initial.
fn rebased_f(b: i64, c: i64, m: i64, k: i64) -> Result<IntMat> {
    if edge_label(m) == 1 {
        closed_form_f(b, c, k)
    } else {
        // Relabeling the two indices swaps b and c.
        let f = closed_form_f(c, b, k)?;
        IntMat::from_rows(&[[f.get(1, 1), f.get(1, 0)], [f.get(0, 1), f.get(0, 0)]])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Exchangeability {
    Exchangeable {
        /// The common part `X`, as references.
        witness: Vec<VariableRef>,
        degrees: (i64, i64),
    },
    NotExchangeable {
        degrees: (i64, i64),
        reason: String,
        /// Whether the closed forms reproduce the degrees (infinite type).
        closed_form_agrees: Option<bool>,
    },
}

impl Exchangeability {
    pub fn is_exchangeable(&self) -> bool {
        matches!(self, Exchangeability::Exchangeable { .. })
    }

    pub fn degrees(&self) -> (i64, i64) {
        match self {
            Exchangeability::Exchangeable { degrees, .. }
            | Exchangeability::NotExchangeable { degrees, .. } => *degrees,
        }
    }
}

/// Decides whether two rank-2 cluster variables are exchangeable.
pub fn rank2_exchangeability(
    b: i64,
    c: i64,
    a: &VariableRef,
    other: &VariableRef,
) -> Result<Exchangeability> {
    if b < 0 || c < 0 {
        return Err(Error::BadParameters("b and c must be nonnegative".into()));
    }
    let m = rank2_matrix(b, c)?;
    a.check_rank(2)?;
    other.check_rank(2)?;
    let degrees = (
        compatibility_degree(&m, a, other)?,
        compatibility_degree(&m, other, a)?,
    );
    if b * c < 4 {
        return finite_case(&m, a, other, degrees);
    }
    let la = variable_label(a.index, vertex_of_word(a.word.letters())?);
    let lb = variable_label(other.index, vertex_of_word(other.word.letters())?);
    let rebased = rebased_f(b, c, la, lb - la)?;
    let closed = (
        rebased.get(a.index, other.index),
        rebased_f(b, c, lb, la - lb)?.get(other.index, a.index),
    );
    let agrees = Some(closed == degrees);
    let gap = (la - lb).abs();
    Ok(match gap {
        2 => {
            let mid = la.min(lb) + 1;
            let witness = VariableRef::new(
                MutationWord::new(vertex_word(mid)),
                variable_index(mid),
            );
            Exchangeability::Exchangeable {
                witness: vec![witness],
                degrees,
            }
        }
        0 => Exchangeability::NotExchangeable {
            degrees,
            reason: "same cluster variable".into(),
            closed_form_agrees: agrees,
        },
        1 => Exchangeability::NotExchangeable {
            degrees,
            reason: "compatible: both lie in one cluster".into(),
            closed_form_agrees: agrees,
        },
        _ => Exchangeability::NotExchangeable {
            degrees,
            reason: format!(
                "degree product {} > 1; degrees grow monotonically with distance {gap}",
                degrees.0 * degrees.1
            ),
            closed_form_agrees: agrees,
        },
    })
}

fn finite_case(
    m: &ExchangeMatrix,
    a: &VariableRef,
    other: &VariableRef,
    degrees: (i64, i64),
) -> Result<Exchangeability> {
    let g = explore(m, Bounds::default())?;
    let ia = g.resolve(a)?.ok_or_else(|| Error::NotFound(a.to_string()))?;
    let ib = g.resolve(other)?.ok_or_else(|| Error::NotFound(other.to_string()))?;
    Ok(match g.find_exchange_witness(ia, ib)? {
        Some(x) => Exchangeability::Exchangeable {
            witness: x.iter().map(|&v| g.variables()[v].reference.clone()).collect(),
            degrees,
        },
        None => Exchangeability::NotExchangeable {
            degrees,
            reason: if ia == ib {
                "same cluster variable".into()
            } else {
                "no exchange witness in the complete exchange graph".into()
            },
            closed_form_agrees: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{evolve, EvolveOptions};

    fn x(i: usize, n: i64) -> VariableRef {
        VariableRef::new(MutationWord::new(vertex_word(n)), i - 1)
    }

    #[test]
    fn chebyshev() {
        let t = ChebyshevTable::new(2, 5);
        let vals: Vec<i64> = (-1..=5).map(|p| t.get(p).unwrap().to_i64().unwrap()).collect();
        assert_eq!(vals, [0, 1, 2, 3, 4, 5, 6]);
        assert!(t.is_strictly_increasing());
        assert!(!ChebyshevTable::new(1, 5).is_strictly_increasing());
    }

    #[test]
    fn words_and_labels() {
        assert_eq!(vertex_word(3), vec![1, 0, 1]);
        assert_eq!(vertex_word(-2), vec![0, 1]);
        assert_eq!(vertex_of_word(&[1, 0, 1]).unwrap(), 3);
        assert_eq!(vertex_of_word(&[0, 1, 1]).unwrap(), -1);
        assert_eq!(edge_label(0), 1);
        assert_eq!(edge_label(-1), 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_f(2, 2, 4).unwrap(), IntMat::from_rows(&[[3, 2], [4, 3]]).unwrap());
        assert!(closed_form_f(2, 2, 0).unwrap().is_zero());
        assert_eq!(closed_form_f(2, 2, 1).unwrap(), IntMat::from_rows(&[[0, 0], [0, 1]]).unwrap());
        assert!(closed_form_f(1, 3, 2).is_err());
    }

    #[test]
    fn closed_form_matches_recursion() {
        for (b, c) in [(2, 2), (1, 4), (2, 3), (3, 3), (4, 1), (3, 2)] {
            let m = rank2_matrix(b, c).unwrap();
            for n in -12..=12 {
                let s = evolve(&m, &vertex_word(n), EvolveOptions::matrices_only()).unwrap();
                assert_eq!(&closed_form_f(b, c, n).unwrap(), s.f(), "b={b} c={c} n={n}");
            }
        }
    }

    #[test]
    fn affine_exchange_decisions() {
        let yes = rank2_exchangeability(2, 2, &x(1, 0), &x(1, 2)).unwrap();
        match &yes {
            Exchangeability::Exchangeable { witness, degrees } => {
                assert_eq!(witness, &vec![x(2, 1)]);
                assert_eq!(*degrees, (1, 1));
            }
            other => panic!("{other:?}"),
        }
        let no = rank2_exchangeability(2, 2, &x(1, 0), &x(1, 4)).unwrap();
        match &no {
            Exchangeability::NotExchangeable {
                degrees,
                closed_form_agrees,
                ..
            } => {
                assert!(degrees.0 * degrees.1 > 1);
                assert!(degrees.0 >= 3);
                assert_eq!(*closed_form_agrees, Some(true));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finite_type_delegates() {
        let yes = rank2_exchangeability(1, 1, &x(1, 0), &x(1, 2)).unwrap();
        assert!(yes.is_exchangeable());
        let same = rank2_exchangeability(1, 1, &x(1, 0), &x(1, 1)).unwrap();
        assert!(!same.is_exchangeable());
    }
}
