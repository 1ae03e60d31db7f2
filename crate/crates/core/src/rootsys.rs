//! Finite root systems, almost positive roots and the classical
//! compatibility degree.
//!
//! Simple reflections act by `s_i(b) = b - (sum_j C_ij b_j) alpha_i` on
//! coordinate vectors in the simple-root basis.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::explorer::ExchangeGraph;
use crate::compat::VariableRef;
use crate::matrix::{diagonal_scaling, ExchangeMatrix, IntMat};

/// A root, or a negative simple root, as coordinates in the simple roots.
pub type Root = Vec<i64>;

/// A Cartan matrix of finite type with a fixed bipartition of its Dynkin
/// graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanData {
    cartan: IntMat,
    /// `+1` for vertices in `I+`, `-1` for `I-`.
    signs: Vec<i64>,
    /// `d_i` with `d_i C_ij = d_j C_ji`, relatively prime per component.
    symmetrizer: Vec<i64>,
    #[serde(skip)]
    roots: Vec<Root>,
}

/// Default cap on the number of almost positive roots, per `n^2`.
pub const ROOT_BOUND_FACTOR: usize = 10;

impl CartanData {
    /// Validates `c` and picks `I+` as the vertices at even distance from the
    /// lowest-indexed vertex of each connected component.
    pub fn new(c: IntMat) -> Result<CartanData> {
        let n = c.rows();
        let bound = ROOT_BOUND_FACTOR * n * n;
        Self::with_bound(c, bound)
    }

    pub fn with_bound(c: IntMat, bound: usize) -> Result<CartanData> {
        let signs = validate(&c)?.1;
        Self::with_signs(c, signs, bound)
    }

    /// Uses a caller-chosen bipartition; `signs[i]` is `+1` or `-1`.
    pub fn with_signs(c: IntMat, signs: Vec<i64>, bound: usize) -> Result<CartanData> {
        let (symmetrizer, _) = validate(&c)?;
        let n = c.rows();
        if signs.len() != n || signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidCartan("signs must be +1 or -1, one per vertex".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && c.get(i, j) != 0 && signs[i] == signs[j] {
                    return Err(Error::InvalidCartan(format!(
                        "vertices {} and {} are adjacent but share a sign",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut data = CartanData {
            cartan: c,
            signs,
            symmetrizer,
            roots: Vec::new(),
        };
        data.roots = data.close_orbits(bound)?;
        Ok(data)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMat {
        &self.cartan
    }

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `B(C)`: `b_ij = -eps(i) C_ij` off the diagonal.
    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix> {
        let n = self.rank();
        let mut b = IntMat::zeros(n, n)?;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    b.set(i, j, -self.signs[i] * self.cartan.get(i, j));
                }
            }
        }
        ExchangeMatrix::new(b)
    }

    /// The dual datum: transposed Cartan matrix, same bipartition.
    pub fn dual(&self) -> Result<CartanData> {
        Self::with_signs(self.cartan.transpose(), self.signs.clone(), usize::MAX)
    }

    /// The same Cartan matrix with `I+` and `I-` swapped.
    pub fn swapped(&self) -> Result<CartanData> {
        Self::with_signs(self.cartan.clone(), self.signs.iter().map(|e| -e).collect(), usize::MAX)
    }

    /// Restriction to a subset of vertices (0-based, in the given order).
    pub fn restrict(&self, idx: &[usize]) -> Result<CartanData> {
        let sub = self.cartan.principal_submatrix(idx)?;
        Self::with_signs(sub, idx.iter().map(|&i| self.signs[i]).collect(), usize::MAX)
    }

    /// All almost positive roots: negative simple roots by index, then
    /// positive roots by height and descending coordinates.
    pub fn almost_positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn negative_simple(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank()];
        r[i] = -1;
        r
    }

    /// `Some(i)` when `beta = -alpha_i`.
    pub fn as_negative_simple(beta: &[i64]) -> Option<usize> {
        let i = beta.iter().position(|&x| x != 0)?;
        (beta[i] == -1 && beta.iter().filter(|&&x| x != 0).count() == 1).then_some(i)
    }

    pub fn reflect(&self, i: usize, beta: &[i64]) -> Result<Root> {
        let mut pairing = 0i64;
        for (j, &bj) in beta.iter().enumerate() {
            pairing = self
                .cartan
                .get(i, j)
                .checked_mul(bj)
                .and_then(|t| pairing.checked_add(t))
                .ok_or(Error::Overflow("reflection"))?;
        }
        let mut out = beta.to_vec();
        out[i] = out[i].checked_sub(pairing).ok_or(Error::Overflow("reflection"))?;
        Ok(out)
    }

    /// `tau_+` for `sign = 1`, `tau_-` for `sign = -1`.
    pub fn tau(&self, sign: i64, beta: &[i64]) -> Result<Root> {
        if let Some(j) = Self::as_negative_simple(beta) {
            if self.signs[j] == -sign {
                return Ok(beta.to_vec());
            }
        }
        let mut out = beta.to_vec();
        for i in 0..self.rank() {
            if self.signs[i] == sign {
                out = self.reflect(i, &out)?;
            }
        }
        Ok(out)
    }

    fn close_orbits(&self, bound: usize) -> Result<Vec<Root>> {
        let n = self.rank();
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = (0..n).map(|i| self.negative_simple(i)).collect();
        seen.extend(queue.iter().cloned());
        while let Some(beta) = queue.pop_front() {
            for sign in [1, -1] {
                let next = self.tau(sign, &beta)?;
                let ok = Self::as_negative_simple(&next).is_some() || next.iter().all(|&x| x >= 0);
                if !ok {
                    return Err(Error::NotFiniteType { bound });
                }
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(Error::NotFiniteType { bound });
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let key = |r: &Root| {
                let neg = Self::as_negative_simple(r);
                (neg.is_none(), neg, r.iter().sum::<i64>())
            };
            key(a).cmp(&key(b)).then_with(|| b.cmp(a))
        });
        Ok(roots)
    }

    pub fn contains(&self, beta: &[i64]) -> bool {
        self.roots.iter().any(|r| r == beta)
    }

    /// `(alpha || beta)_cl`: move the pair along alternating `tau_+`,
    /// `tau_-` until `alpha` is a negative simple root `-alpha_i`, then read
    /// `[(beta : alpha_i)]_+`.
    pub fn classical_degree(&self, alpha: &[i64], beta: &[i64]) -> Result<i64> {
        if !self.contains(alpha) || !self.contains(beta) {
            return Err(Error::BadParameters("not an almost positive root".into()));
        }
        let (mut a, mut b) = (alpha.to_vec(), beta.to_vec());
        let mut sign = 1;
        for _ in 0..=2 * self.roots.len() + 2 {
            if let Some(i) = Self::as_negative_simple(&a) {
                return Ok(b[i].max(0));
            }
            a = self.tau(sign, &a)?;
            b = self.tau(sign, &b)?;
            sign = -sign;
        }
        Err(Error::OrbitExhausted)
    }

    /// Half the squared length of a root: `sum_ij b_i b_j d_i C_ij / 2`.
    fn half_norm(&self, beta: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                acc += beta[i] * beta[j] * self.symmetrizer[i] * self.cartan.get(i, j);
            }
        }
        acc / 2
    }

    /// The coroot of `beta`, in the simple coroots (the simple roots of
    /// [`CartanData::dual`]).
    pub fn coroot(&self, beta: &[i64]) -> Result<Root> {
        let h = self.half_norm(beta);
        if h <= 0 {
            return Err(Error::BadParameters("not a real root".into()));
        }
        beta.iter()
            .zip(&self.symmetrizer)
            .map(|(&b, &d)| {
                let num = b * d;
                if num % h != 0 {
                    Err(Error::BadParameters("coroot is not integral".into()))
                } else {
                    Ok(num / h)
                }
            })
            .collect()
    }

    /// The cluster variable whose denominator vector is `beta`, looked up in
    /// a complete exploration of `B(C)`.
    pub fn root_to_variable(&self, beta: &[i64], graph: &ExchangeGraph) -> Result<VariableRef> {
        if !graph.is_complete() {
            return Err(Error::RequiresComplete);
        }
        graph
            .variables()
            .iter()
            .find(|v| v.d == beta)
            .map(|v| v.reference.clone())
            .ok_or_else(|| Error::NotFound(format!("no cluster variable with d-vector {beta:?}")))
    }
}

/// Checks the Cartan axioms and returns the symmetrizer and default signs.
fn validate(c: &IntMat) -> Result<(Vec<i64>, Vec<i64>)> {
    if !c.is_square() {
        return Err(Error::NotSquare {
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    let n = c.rows();
    for i in 0..n {
        if c.get(i, i) != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in 0..n {
            if i != j && c.get(i, j) > 0 {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry ({},{}) is positive",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let sym = diagonal_scaling(c, 1).map_err(Error::InvalidCartan)?;
    let mut signs = vec![0i64; n];
    for root in 0..n {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || c.get(i, j) == 0 {
                    continue;
                }
                if signs[j] == 0 {
                    signs[j] = -signs[i];
                    queue.push_back(j);
                } else if signs[j] == signs[i] {
                    return Err(Error::InvalidCartan("Dynkin graph is not bipartite".into()));
                }
            }
        }
    }
    Ok((sym, signs))
}

/// Cartan matrices used by the test corpora, by name.
pub fn named_cartan(name: &str) -> Option<IntMat> {
    let tri = |n: usize| {
        let mut m = IntMat::identity(n).unwrap();
        for i in 0..n {
            m.set(i, i, 2);
            if i + 1 < n {
                m.set(i, i + 1, -1);
                m.set(i + 1, i, -1);
            }
        }
        m
    };
    let lower = name.to_ascii_lowercase();
    let m = match lower.as_str() {
        "a1" => tri(1),
        "a2" => tri(2),
        "a3" => tri(3),
        "a4" => tri(4),
        "a5" => tri(5),
        "a1xa1" | "a1a1" => IntMat::from_rows(&[[2, 0], [0, 2]]).unwrap(),
        "b2" => IntMat::from_rows(&[[2, -1], [-2, 2]]).unwrap(),
        "c2" => IntMat::from_rows(&[[2, -2], [-1, 2]]).unwrap(),
        "g2" => IntMat::from_rows(&[[2, -1], [-3, 2]]).unwrap(),
        "b3" => IntMat::from_rows(&[[2, -1, 0], [-1, 2, -2], [0, -1, 2]]).unwrap(),
        "c3" => IntMat::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -2, 2]]).unwrap(),
        "d4" => IntMat::from_rows(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]])
            .unwrap(),
        _ => return None,
    };
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> CartanData {
        CartanData::new(named_cartan(name).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        let counts = [
            ("a1", 2),
            ("a2", 5),
            ("a3", 9),
            ("a4", 14),
            ("a1xa1", 4),
            ("b2", 6),
            ("g2", 8),
            ("b3", 12),
            ("c3", 12),
            ("d4", 16),
        ];
        for (name, count) in counts {
            assert_eq!(data(name).almost_positive_roots().len(), count, "{name}");
        }
    }

    #[test]
    fn a2_roots_in_order() {
        let roots = data("a2").almost_positive_roots().to_vec();
        assert_eq!(roots, vec![vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn b2_positive_roots() {
        let d = data("b2");
        let pos: Vec<&Root> = d.almost_positive_roots().iter().skip(2).collect();
        assert_eq!(pos, [&vec![1, 0], &vec![0, 1], &vec![1, 1], &vec![1, 2]]);
    }

    #[test]
    fn tau_examples() {
        let d = data("a2");
        assert_eq!(d.signs(), &[1, -1]);
        // tau_+ fixes -alpha_2 since eps(2) = -1
        assert_eq!(d.tau(1, &[0, -1]).unwrap(), vec![0, -1]);
        assert_eq!(d.tau(1, &[-1, 0]).unwrap(), vec![1, 0]);
        for r in d.almost_positive_roots() {
            for s in [1, -1] {
                assert_eq!(&d.tau(s, &d.tau(s, r).unwrap()).unwrap(), r);
            }
        }
    }

    #[test]
    fn classical_examples() {
        let d = data("a2");
        assert_eq!(d.classical_degree(&[-1, 0], &[1, 1]).unwrap(), 1);
        assert_eq!(d.classical_degree(&[-1, 0], &[0, -1]).unwrap(), 0);
        assert!(d.classical_degree(&[2, 0], &[1, 1]).is_err());
    }

    #[test]
    fn rejects_bad_cartan() {
        let bad = IntMat::from_rows(&[[2, 1], [-1, 2]]).unwrap();
        assert!(matches!(CartanData::new(bad), Err(Error::InvalidCartan(_))));
        let one_sided = IntMat::from_rows(&[[2, -1], [0, 2]]).unwrap();
        assert!(CartanData::new(one_sided).is_err());
        let affine = IntMat::from_rows(&[[2, -2], [-2, 2]]).unwrap();
        assert!(matches!(CartanData::new(affine), Err(Error::NotFiniteType { .. })));
        let triangle =
            IntMat::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]).unwrap();
        assert!(CartanData::new(triangle).is_err());
    }

    #[test]
    fn exchange_matrix_of_a2() {
        let b = data("a2").exchange_matrix().unwrap();
        assert_eq!(b.matrix(), &IntMat::from_rows(&[[0, 1], [-1, 0]]).unwrap());
    }

    #[test]
    fn coroots_in_b2() {
        let d = data("b2");
        assert_eq!(d.symmetrizer(), &[2, 1]);
        let dual = d.dual().unwrap();
        for r in d.almost_positive_roots() {
            let c = d.coroot(r).unwrap();
            assert!(dual.contains(&c), "{r:?} -> {c:?}");
        }
        assert_eq!(d.coroot(&[1, 2]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn swapped_signs_give_same_degrees() {
        let d = data("b2");
        let s = d.swapped().unwrap();
        for a in d.almost_positive_roots() {
            for b in d.almost_positive_roots() {
                assert_eq!(d.classical_degree(a, b).unwrap(), s.classical_degree(a, b).unwrap());
            }
        }
    }
}
