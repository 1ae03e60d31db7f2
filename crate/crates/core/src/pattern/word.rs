use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A path from the rooted vertex of the labeled tree. Letters are stored
/// 0-based; parsing and printing use 1-based directions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct MutationWord(Vec<usize>);

impl MutationWord {
    pub fn empty() -> Self {
        MutationWord(Vec::new())
    }

    /// From 0-based letters.
    pub fn new(letters: Vec<usize>) -> Self {
        MutationWord(letters)
    }

    /// From 1-based directions, rejecting zero.
    pub fn from_one_based(dirs: &[usize]) -> Result<Self> {
        dirs.iter()
            .enumerate()
            .map(|(pos, &k)| k.checked_sub(1).ok_or_else(|| Error::parse(pos, "directions start at 1")))
            .collect::<Result<Vec<_>>>()
            .map(MutationWord)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Errors if some letter is not a valid direction for rank `n`.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k >= n) {
            Some(&k) => Err(Error::DirectionOutOfRange { k: k + 1, n }),
            None => Ok(()),
        }
    }

    pub fn reversed(&self) -> Self {
        MutationWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &MutationWord) -> Self {
        MutationWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Cancels adjacent repeated letters. Both words name the same tree vertex.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &k in &self.0 {
            if out.last() == Some(&k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        MutationWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl From<MutationWord> for Vec<usize> {
    fn from(w: MutationWord) -> Self {
        w.0.into_iter().map(|k| k + 1).collect()
    }
}

impl TryFrom<Vec<usize>> for MutationWord {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        MutationWord::from_one_based(&v)
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| (k + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_cancels_backtracking() {
        let w = MutationWord::new(vec![0, 1, 1, 0, 2]);
        assert_eq!(w.reduce(), MutationWord::new(vec![2]));
        assert!(!w.is_reduced());
        assert_eq!(w.to_string(), "1,2,2,1,3");
    }

    #[test]
    fn one_based_round_trip() {
        let w = MutationWord::from_one_based(&[2, 1, 2]).unwrap();
        assert_eq!(w.letters(), &[1, 0, 1]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[2,1,2]");
        assert_eq!(serde_json::from_str::<MutationWord>(&json).unwrap(), w);
        assert!(MutationWord::from_one_based(&[0]).is_err());
        assert!(w.check_rank(1).is_err());
    }
}
