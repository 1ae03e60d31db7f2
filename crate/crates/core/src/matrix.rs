//! Integer matrices, exchange matrices and the bracket/mask calculus.
//!
//! All arithmetic is checked: an overflowing entry is reported as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `[b]_+ = max(b, 0)`.
#[inline]
pub fn pos(b: i64) -> i64 {
    b.max(0)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        if rows.iter().any(|row| row.as_ref().len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        IntMat::new(r, c, rows.iter().flat_map(|row| row.as_ref().iter().copied()).collect())
    }

    /// Builds a matrix whose `j`th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut m = IntMat::new(r, c, vec![0; r * c])?;
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        IntMat::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = IntMat::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// `J_l`: the identity with its `(l, l)` entry replaced by `-1`.
    pub fn sign_flip_diag(n: usize, l: usize) -> Result<Self> {
        if l >= n {
            return Err(Error::DirectionOutOfRange { k: l + 1, n });
        }
        let mut m = IntMat::identity(n)?;
        m.set(l, l, -1);
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[i64]) {
        debug_assert_eq!(col.len(), self.rows);
        for (i, &v) in col.iter().enumerate() {
            self.set(i, j, v);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat {
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn checked_neg(&self) -> Result<IntMat> {
        self.map(|v| v.checked_neg().ok_or(Error::Overflow("negation")))
    }

    pub fn checked_add(&self, other: &IntMat) -> Result<IntMat> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("matrix addition")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMat { data, ..*self })
    }

    pub fn checked_mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for l in 0..self.cols {
                    acc = self
                        .get(i, l)
                        .checked_mul(other.get(l, j))
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Entrywise maximum of two matrices of the same shape.
    pub fn entrywise_max(&self, other: &IntMat) -> Result<IntMat> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a.max(b)).collect();
        Ok(IntMat { data, ..*self })
    }

    /// `[M]_+`.
    pub fn positive_part(&self) -> IntMat {
        IntMat {
            data: self.data.iter().map(|&v| pos(v)).collect(),
            ..*self
        }
    }

    /// `M^{k•}`: zero every entry outside row `k`.
    pub fn row_mask(&self, k: usize) -> IntMat {
        let mut out = IntMat {
            data: vec![0; self.data.len()],
            ..*self
        };
        for j in 0..self.cols {
            out.set(k, j, self.get(k, j));
        }
        out
    }

    /// `M^{•k}`: zero every entry outside column `k`.
    pub fn col_mask(&self, k: usize) -> IntMat {
        let mut out = IntMat {
            data: vec![0; self.data.len()],
            ..*self
        };
        for i in 0..self.rows {
            out.set(i, k, self.get(i, k));
        }
        out
    }

    /// Principal submatrix on the given index list (in that order).
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<IntMat> {
        if idx.iter().any(|&i| i >= self.rows || i >= self.cols) {
            return Err(Error::DimensionMismatch("submatrix index out of range".into()));
        }
        let data = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        IntMat::new(idx.len(), idx.len(), data)
    }

    /// `P M P^{-1}` with `(PMP^{-1})_{ij} = m_{σ(i)σ(j)}`.
    pub fn conjugate_by(&self, sigma: &[usize]) -> IntMat {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(sigma[i], sigma[j]));
            }
        }
        out
    }

    /// Permutes columns: column `j` of the result is column `sigma[j]` of `self`.
    pub fn permute_columns(&self, sigma: &[usize]) -> IntMat {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, sigma[j]));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn map(&self, f: impl Fn(i64) -> Result<i64>) -> Result<IntMat> {
        let data = self.data.iter().map(|&v| f(v)).collect::<Result<Vec<_>>>()?;
        Ok(IntMat { data, ..*self })
    }

    fn same_shape(&self, other: &IntMat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            write!(f, "[{}]", row.join(" "))?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMat::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

// ---- vector helpers -------------------------------------------------------

pub(crate) fn vec_axpy(acc: &mut [i64], scale: i64, v: &[i64]) -> Result<()> {
    if scale == 0 {
        return Ok(());
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a = scale
            .checked_mul(*x)
            .and_then(|p| a.checked_add(p))
            .ok_or(Error::Overflow("vector update"))?;
    }
    Ok(())
}

pub(crate) fn vec_neg(a: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|x| x.checked_neg().ok_or(Error::Overflow("negation")))
        .collect()
}

pub(crate) fn vec_max(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn vec_pos(a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| pos(x)).collect()
}

// ---- exchange matrices ----------------------------------------------------

/// Finds a positive diagonal `s` with `s_i m_ij = sign * s_j m_ji` for all
/// `i != j`, normalized to be relatively prime on each connected component of
/// the support graph. `sign = -1` asks for a skew-symmetrizer, `+1` for a
/// symmetrizer.
pub(crate) fn diagonal_scaling(m: &IntMat, sign: i64) -> std::result::Result<Vec<i64>, String> {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (m.get(i, j), m.get(j, i));
            if (a == 0) != (b == 0) {
                return Err(format!(
                    "entry ({},{}) is {a} but ({},{}) is {b}",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                ));
            }
            if a != 0 && (a.signum() * b.signum()) != sign {
                return Err(format!(
                    "entries ({},{})={a} and ({},{})={b} have the wrong sign pattern",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                ));
            }
        }
    }

    let mut scale: Vec<Option<Ratio<i128>>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(Ratio::from_integer(1));
        component[root] = root;
        let mut stack = vec![root];
        let mut members = vec![root];
        while let Some(i) = stack.pop() {
            let si = scale[i].unwrap();
            for j in 0..n {
                if i == j || m.get(i, j) == 0 {
                    continue;
                }
                // s_j = s_i * m_ij / (sign * m_ji)
                let sj = si * Ratio::new(m.get(i, j) as i128, (sign * m.get(j, i)) as i128);
                match scale[j] {
                    Some(existing) if existing != sj => {
                        return Err(format!(
                            "inconsistent scaling around index {} (cycle condition fails)",
                            j + 1
                        ));
                    }
                    Some(_) => {}
                    None => {
                        scale[j] = Some(sj);
                        component[j] = root;
                        stack.push(j);
                        members.push(j);
                    }
                }
            }
        }
        let lcm = members
            .iter()
            .fold(1i128, |acc, &i| acc.lcm(scale[i].unwrap().denom()));
        let ints: Vec<i128> = members
            .iter()
            .map(|&i| (scale[i].unwrap() * lcm).to_integer())
            .collect();
        let g = ints.iter().fold(0i128, |acc, v| acc.gcd(v));
        for (&i, v) in members.iter().zip(&ints) {
            out[i] = i64::try_from(v / g).map_err(|_| "symmetrizer entry overflows".to_string())?;
        }
    }
    Ok(out)
}

/// Returns the componentwise-minimal relatively-prime positive diagonal `S`
/// with `SB` skew-symmetric.
pub fn find_skew_symmetrizer(b: &IntMat) -> Result<Vec<i64>> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if let Some(i) = (0..b.rows()).find(|&i| b.get(i, i) != 0) {
        return Err(Error::NotSkewSymmetrizable(format!(
            "diagonal entry ({},{}) is nonzero",
            i + 1,
            i + 1
        )));
    }
    diagonal_scaling(b, -1).map_err(Error::NotSkewSymmetrizable)
}

/// A skew-symmetrizable exchange matrix together with its normalized
/// skew-symmetrizer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExchangeMatrix {
    b: IntMat,
    symmetrizer: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(b: IntMat) -> Result<Self> {
        let symmetrizer = find_skew_symmetrizer(&b)?;
        Ok(ExchangeMatrix { b, symmetrizer })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        ExchangeMatrix::new(IntMat::from_rows(rows)?)
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b.get(i, j)
    }

    pub fn skew_symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetrizer.iter().all(|&s| s == 1)
    }

    pub(crate) fn check_direction(&self, k: usize) -> Result<()> {
        if k >= self.rank() {
            return Err(Error::DirectionOutOfRange {
                k: k + 1,
                n: self.rank(),
            });
        }
        Ok(())
    }

    /// Matrix mutation in direction `k` (0-based). The skew-symmetrizer is
    /// carried over unchanged.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        self.check_direction(k)?;
        let n = self.rank();
        let b = &self.b;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    b.get(i, j).checked_neg()
                } else {
                    let (bik, bkj) = (b.get(i, k), b.get(k, j));
                    pos(bik)
                        .checked_mul(bkj)
                        .and_then(|t| bik.checked_mul(pos(-bkj)).and_then(|u| t.checked_add(u)))
                        .and_then(|t| b.get(i, j).checked_add(t))
                };
                out.set(i, j, v.ok_or(Error::Overflow("matrix mutation"))?);
            }
        }
        Ok(ExchangeMatrix {
            b: out,
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    /// Mutates along a sequence of 0-based directions.
    pub fn mutate_along(&self, directions: &[usize]) -> Result<ExchangeMatrix> {
        directions.iter().try_fold(self.clone(), |b, &k| b.mutate(k))
    }

    /// `-B^T`, skew-symmetrized by `S^{-1}` (renormalized).
    pub fn dual(&self) -> Result<ExchangeMatrix> {
        ExchangeMatrix::new(self.b.transpose().checked_neg()?)
    }

    pub fn negated(&self) -> Result<ExchangeMatrix> {
        Ok(ExchangeMatrix {
            b: self.b.checked_neg()?,
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    pub fn transposed(&self) -> Result<ExchangeMatrix> {
        ExchangeMatrix::new(self.b.transpose())
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<ExchangeMatrix> {
        ExchangeMatrix::new(self.b.principal_submatrix(idx)?)
    }

    pub fn conjugate_by(&self, sigma: &[usize]) -> ExchangeMatrix {
        ExchangeMatrix {
            b: self.b.conjugate_by(sigma),
            symmetrizer: sigma.iter().map(|&i| self.symmetrizer[i]).collect(),
        }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.b.fmt(f)
    }
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.b.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(rows).unwrap()
    }

    #[test]
    fn symmetrizer_examples() {
        assert_eq!(find_skew_symmetrizer(&m(&[&[0, 1], &[-1, 0]])).unwrap(), vec![1, 1]);
        assert_eq!(find_skew_symmetrizer(&m(&[&[0, 2], &[-1, 0]])).unwrap(), vec![1, 2]);
        assert!(matches!(
            find_skew_symmetrizer(&m(&[&[0, 1], &[1, 0]])),
            Err(Error::NotSkewSymmetrizable(_))
        ));
    }

    #[test]
    fn symmetrizer_rejects_bad_inputs() {
        // one-sided zero
        assert!(find_skew_symmetrizer(&m(&[&[0, 1], &[0, 0]])).is_err());
        // nonzero diagonal
        assert!(find_skew_symmetrizer(&m(&[&[1, 1], &[-1, 0]])).is_err());
        // cycle condition fails: s1*1 = s2*1, s2*1 = s3*1, s3*2 = s1*1
        let b = m(&[&[0, 1, -1], &[-1, 0, 1], &[2, -1, 0]]);
        assert!(find_skew_symmetrizer(&b).is_err());
        assert!(matches!(
            find_skew_symmetrizer(&m(&[&[0, 1, 0], &[-1, 0, 0]])),
            Err(Error::NotSquare { .. })
        ));
        assert_eq!(IntMat::new(0, 0, vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn symmetrizer_components_normalized_separately() {
        // A1 x B2-like block: components {1} and {2,3}
        let b = m(&[&[0, 0, 0], &[0, 0, 3], &[0, -1, 0]]);
        assert_eq!(find_skew_symmetrizer(&b).unwrap(), vec![1, 1, 3]);
        let g2 = m(&[&[0, 1], &[-3, 0]]);
        assert_eq!(find_skew_symmetrizer(&g2).unwrap(), vec![3, 1]);
    }

    #[test]
    fn mutation_examples() {
        let b = ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().matrix(), &m(&[&[0, -1], &[1, 0]]));

        let b = ExchangeMatrix::from_rows(&[[0, 2, -1], [-2, 0, 1], [1, -1, 0]]).unwrap();
        let expected = m(&[&[0, 1, 1], &[-1, 0, -1], &[-1, 1, 0]]);
        assert_eq!(b.mutate(2).unwrap().matrix(), &expected);
    }

    #[test]
    fn mutation_direction_checked() {
        let b = ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(b.mutate(2), Err(Error::DirectionOutOfRange { k: 3, n: 2 }));
    }

    #[test]
    fn mutation_overflow_is_an_error() {
        let big = i64::MAX / 2;
        let b = ExchangeMatrix::from_rows(&[[0, big, 0], [-big, 0, 1], [0, -1, 0]]).unwrap();
        // μ_2 adds b_12 * b_23 into (1,3)
        let r = b.mutate(1).and_then(|b| b.mutate(0)).and_then(|b| b.mutate(1));
        assert!(matches!(r, Err(Error::Overflow(_))));
    }

    #[test]
    fn mask_examples() {
        let a = m(&[&[-1, 2], &[3, -4]]);
        assert_eq!(a.positive_part(), m(&[&[0, 2], &[3, 0]]));
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.row_mask(0), m(&[&[1, 2], &[0, 0]]));
        assert_eq!(a.col_mask(1), m(&[&[0, 2], &[0, 4]]));
        assert_eq!(IntMat::sign_flip_diag(2, 1).unwrap(), m(&[&[1, 0], &[0, -1]]));
    }

    pub(crate) fn skew_symmetrizable(max_n: usize) -> impl Strategy<Value = ExchangeMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(1i64..=3, n),
                    proptest::collection::vec(-3i64..=3, n * n),
                )
            })
            .prop_map(|(s, raw)| {
                let n = s.len();
                let mut b = IntMat::zeros(n, n).unwrap();
                for i in 0..n {
                    for j in (i + 1)..n {
                        // choose b_ij = v * s_j / g, b_ji = -v * s_i / g
                        let g = s[i].gcd(&s[j]);
                        let v = raw[i * n + j];
                        b.set(i, j, v * s[j] / g);
                        b.set(j, i, -v * s[i] / g);
                    }
                }
                ExchangeMatrix::new(b).unwrap()
            })
    }

    proptest! {
        #[test]
        fn mutation_is_involutive(b in skew_symmetrizable(5), k in 0usize..5) {
            let k = k % b.rank();
            prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
        }

        #[test]
        fn symmetrizer_invariant_under_mutation(b in skew_symmetrizable(5), k in 0usize..5) {
            let k = k % b.rank();
            let mutated = b.mutate(k).unwrap();
            prop_assert_eq!(find_skew_symmetrizer(mutated.matrix()).unwrap(), b.skew_symmetrizer().to_vec());
        }

        #[test]
        fn entry_splits_into_brackets(v in -1000i64..1000) {
            prop_assert_eq!(v, pos(v) - pos(-v));
        }

        #[test]
        fn positive_part_commutes_with_masks(
            data in proptest::collection::vec(-5i64..5, 9), k in 0usize..3
        ) {
            let a = IntMat::new(3, 3, data).unwrap();
            prop_assert_eq!(a.row_mask(k).positive_part(), a.positive_part().row_mask(k));
            prop_assert_eq!(a.col_mask(k).positive_part(), a.positive_part().col_mask(k));
        }
    }
}
