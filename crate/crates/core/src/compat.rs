//! Compatibility degrees between cluster variables and their properties.
//!
//! The degree `(a || b)` is an entry of the F-matrix computed with the seed of
//! `a` taken as the initial seed. Only integer recursions are involved, so no
//! polynomial arithmetic happens here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{pos, ExchangeMatrix};
use crate::pattern::{evolve, EvolveOptions, MutationWord, PatternState};

/// The cluster variable `x_{index; t(word)}`. `index` is 0-based; the
/// serialized form is the 1-based string `word:index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct VariableRef {
    pub word: MutationWord,
    pub index: usize,
}

impl VariableRef {
    pub fn new(word: MutationWord, index: usize) -> Self {
        VariableRef { word, index }
    }

    /// The initial variable `x_{index+1}`.
    pub fn initial(index: usize) -> Self {
        VariableRef {
            word: MutationWord::empty(),
            index,
        }
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        self.word.check_rank(n)?;
        if self.index >= n {
            return Err(Error::IndexOutOfRange {
                index: self.index + 1,
                n,
            });
        }
        Ok(())
    }
}

/// Printed as `word:index` with 1-based numbers, e.g. `2,1:1` or `:3`.
impl fmt::Display for VariableRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, self.index + 1)
    }
}

impl From<VariableRef> for String {
    fn from(r: VariableRef) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for VariableRef {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for VariableRef {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_variable_ref(s)
    }
}

/// How the path from `t(a)` to `t(b)` is walked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathMode {
    /// Reversed first word followed by the second, as written.
    #[default]
    Full,
    /// Cancel backtracking first. Lands on the same tree vertex.
    Elide,
}

/// Evolves from the seed of `a` to the vertex of `b`.
pub fn relative_state(
    b0: &ExchangeMatrix,
    a: &VariableRef,
    b: &VariableRef,
    mode: PathMode,
) -> Result<PatternState> {
    let n = b0.rank();
    a.check_rank(n)?;
    b.check_rank(n)?;
    let start = b0.mutate_along(a.word.letters())?;
    let mut path = a.word.reversed().concat(&b.word);
    if mode == PathMode::Elide {
        path = path.reduce();
    }
    evolve(&start, path.letters(), EvolveOptions::matrices_only())
}

/// `(a || b)`: the f-vector compatibility degree.
pub fn compatibility_degree(b0: &ExchangeMatrix, a: &VariableRef, b: &VariableRef) -> Result<i64> {
    compatibility_degree_with(b0, a, b, PathMode::default())
}

pub fn compatibility_degree_with(
    b0: &ExchangeMatrix,
    a: &VariableRef,
    b: &VariableRef,
    mode: PathMode,
) -> Result<i64> {
    Ok(relative_state(b0, a, b, mode)?.f().get(a.index, b.index))
}

/// `(a || b)_d`: positive part of the matching denominator-vector entry.
pub fn d_compatibility_degree(
    b0: &ExchangeMatrix,
    a: &VariableRef,
    b: &VariableRef,
) -> Result<i64> {
    Ok(pos(relative_state(b0, a, b, PathMode::default())?.d().get(a.index, b.index)))
}

/// Both degrees in both orders, computed from two walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePair {
    pub forward: i64,
    pub backward: i64,
    pub d_forward: i64,
    pub d_backward: i64,
}

impl DegreePair {
    pub fn compute(b0: &ExchangeMatrix, a: &VariableRef, b: &VariableRef) -> Result<Self> {
        let ab = relative_state(b0, a, b, PathMode::Elide)?;
        let ba = relative_state(b0, b, a, PathMode::Elide)?;
        Ok(DegreePair {
            forward: ab.f().get(a.index, b.index),
            backward: ba.f().get(b.index, a.index),
            d_forward: pos(ab.d().get(a.index, b.index)),
            d_backward: pos(ba.d().get(b.index, a.index)),
        })
    }

    pub fn is_exchange_pair(&self) -> bool {
        self.forward == 1 && self.backward == 1
    }

    pub fn is_d_exchange_pair(&self) -> bool {
        self.d_forward == 1 && self.d_backward == 1
    }
}

/// Outcome of one property check, with the values compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub passed: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub detail: String,
}

impl CheckReport {
    fn compare(property: &str, lhs: i64, rhs: i64, detail: String) -> Self {
        CheckReport {
            property: property.into(),
            passed: lhs == rhs,
            lhs,
            rhs,
            detail,
        }
    }
}

/// Duality: `(a || b)` for `B0` equals `(b || a)` for `-B0^T` with the same
/// words and indices. When `B0` is skew-symmetric the degree is also checked
/// to be symmetric.
pub fn check_duality(b0: &ExchangeMatrix, a: &VariableRef, b: &VariableRef) -> Result<Vec<CheckReport>> {
    let dual = b0.dual()?;
    let lhs = compatibility_degree(b0, a, b)?;
    let rhs = compatibility_degree(&dual, b, a)?;
    let mut out = vec![CheckReport::compare(
        "duality",
        lhs,
        rhs,
        format!("({a} || {b}) vs dual ({b} || {a})"),
    )];
    if b0.matrix().transpose() == b0.negated()?.matrix().clone() {
        let back = compatibility_degree(b0, b, a)?;
        out.push(CheckReport::compare(
            "skew-symmetric-symmetry",
            lhs,
            back,
            format!("({a} || {b}) vs ({b} || {a})"),
        ));
    }
    Ok(out)
}

/// Symmetry ratio: `s_i (a || b) = s_j (b || a)` with `i`, `j` the indices
/// of `a` and `b` and `s` the skew-symmetrizer.
pub fn check_symmetry_ratio(
    b0: &ExchangeMatrix,
    a: &VariableRef,
    b: &VariableRef,
) -> Result<CheckReport> {
    let s = b0.skew_symmetrizer();
    let fwd = compatibility_degree(b0, a, b)?;
    let bwd = compatibility_degree(b0, b, a)?;
    let lhs = s[a.index]
        .checked_mul(fwd)
        .ok_or(Error::Overflow("symmetry ratio"))?;
    let rhs = s[b.index]
        .checked_mul(bwd)
        .ok_or(Error::Overflow("symmetry ratio"))?;
    let mut report = CheckReport::compare(
        "symmetry-ratio",
        lhs,
        rhs,
        format!(
            "s{}*({a} || {b}) = {}*{fwd}, s{}*({b} || {a}) = {}*{bwd}",
            a.index + 1,
            s[a.index],
            b.index + 1,
            s[b.index]
        ),
    );
    report.passed &= (fwd == 0) == (bwd == 0);
    Ok(report)
}

/// Embedding: for refs whose words and indices lie in `j_set` (0-based),
/// the degree computed in the principal submatrix agrees with the full one.
pub fn check_embedding(
    b0: &ExchangeMatrix,
    j_set: &[usize],
    a: &VariableRef,
    b: &VariableRef,
) -> Result<CheckReport> {
    let restrict = |r: &VariableRef| -> Result<VariableRef> {
        let map = |k: usize| {
            j_set.iter().position(|&j| j == k).ok_or_else(|| {
                Error::BadParameters(format!("{r} uses direction {} outside the subset", k + 1))
            })
        };
        let letters = r.word.letters().iter().map(|&k| map(k)).collect::<Result<Vec<_>>>()?;
        Ok(VariableRef::new(MutationWord::new(letters), map(r.index)?))
    };
    let sub = b0.principal_submatrix(j_set)?;
    let full = compatibility_degree(b0, a, b)?;
    let small = compatibility_degree(&sub, &restrict(a)?, &restrict(b)?)?;
    Ok(CheckReport::compare(
        "embedding",
        full,
        small,
        format!("({a} || {b}) in the full pattern vs the subpattern on {:?}", one_based(j_set)),
    ))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|k| k + 1).collect()
}
