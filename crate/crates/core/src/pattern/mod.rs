//! Cluster patterns along paths of the labeled tree.
//!
//! [`evolve`] walks a mutation word from the rooted vertex and carries the
//! exchange matrix together with the C, G, D and F matrices and the
//! F-polynomials, using the standard recursions. [`seed`] implements direct
//! seed mutation with tropical coefficients and [`separation`] rebuilds the
//! same data from g-vectors and F-polynomials; the two paths are each other's
//! oracle.

pub mod seed;
pub mod separation;
mod word;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::MultiPoly;
use crate::matrix::{pos, vec_axpy, vec_max, vec_neg, vec_pos, ExchangeMatrix, IntMat};

pub use seed::{CoefficientSpec, Seed};
pub use separation::{separation_x, separation_y};
pub use word::MutationWord;

/// Controls which data [`evolve`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvolveOptions {
    /// Track F-polynomials. Turning this off keeps only the integer matrices,
    /// which stays cheap far outside finite type.
    pub fpolys: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { fpolys: true }
    }
}

impl EvolveOptions {
    pub fn matrices_only() -> Self {
        EvolveOptions { fpolys: false }
    }
}

/// Everything attached to one vertex `t` of the tree, relative to the
/// initial exchange matrix `B0` at the rooted vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternState {
    #[serde(skip)]
    b0: ExchangeMatrix,
    #[serde(serialize_with = "serialize_word")]
    word: Vec<usize>,
    #[serde(rename = "B")]
    b: ExchangeMatrix,
    #[serde(rename = "C")]
    c: IntMat,
    #[serde(rename = "G")]
    g: IntMat,
    #[serde(rename = "D")]
    d: IntMat,
    #[serde(rename = "F")]
    f: IntMat,
    #[serde(rename = "fpolys", skip_serializing_if = "Option::is_none")]
    fpolys: Option<Vec<MultiPoly>>,
}

fn serialize_word<S: serde::Serializer>(w: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|k| k + 1))
}

impl PatternState {
    /// The rooted vertex: `C = G = E`, `D = -E`, `F = 0`, all F-polynomials 1.
    pub fn initial(b0: &ExchangeMatrix, opts: EvolveOptions) -> Self {
        let n = b0.rank();
        let e = IntMat::identity(n).expect("rank >= 1");
        PatternState {
            b0: b0.clone(),
            word: Vec::new(),
            b: b0.clone(),
            c: e.clone(),
            g: e.clone(),
            d: e.checked_neg().expect("small"),
            f: IntMat::zeros(n, n).expect("rank >= 1"),
            fpolys: opts.fpolys.then(|| vec![MultiPoly::one(n); n]),
        }
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }
    pub fn initial_matrix(&self) -> &ExchangeMatrix {
        &self.b0
    }
    /// The 0-based mutation word leading here from the rooted vertex.
    pub fn word(&self) -> &[usize] {
        &self.word
    }
    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }
    pub fn c(&self) -> &IntMat {
        &self.c
    }
    pub fn g(&self) -> &IntMat {
        &self.g
    }
    pub fn d(&self) -> &IntMat {
        &self.d
    }
    pub fn f(&self) -> &IntMat {
        &self.f
    }
    pub fn fpolys(&self) -> Option<&[MultiPoly]> {
        self.fpolys.as_deref()
    }

    pub fn fpolys_required(&self) -> Result<&[MultiPoly]> {
        self.fpolys().ok_or(Error::MissingData("F-polynomials"))
    }

    /// One mutation step in direction `k` (0-based).
    pub fn step(&self, k: usize) -> Result<PatternState> {
        self.b.check_direction(k)?;
        let n = self.rank();
        let b = &self.b;
        let b0 = self.b0.matrix();

        // c-vectors
        let ck = self.c.column(k);
        let ck_pos = vec_pos(&ck);
        let ck_neg = vec_pos(&vec_neg(&ck)?);
        let mut c = self.c.clone();
        for j in 0..n {
            let col = if j == k {
                vec_neg(&ck)?
            } else {
                let bkj = b.get(k, j);
                let mut col = self.c.column(j);
                vec_axpy(&mut col, pos(bkj), &ck)?;
                vec_axpy(&mut col, bkj, &ck_neg)?;
                col
            };
            c.set_column(j, &col);
        }

        // g-vectors
        let mut gk = vec_neg(&self.g.column(k))?;
        for i in 0..n {
            vec_axpy(&mut gk, pos(b.get(i, k)), &self.g.column(i))?;
            vec_axpy(&mut gk, -ck_pos[i], &b0.column(i))?;
        }
        let mut g = self.g.clone();
        g.set_column(k, &gk);

        // d-vectors
        let dk = self.max_combination(&self.d, k, None, None)?;
        let mut d = self.d.clone();
        d.set_column(k, &dk);

        // f-vectors
        let fk = self.max_combination(&self.f, k, Some(&ck_pos), Some(&ck_neg))?;
        let mut f = self.f.clone();
        f.set_column(k, &fk);

        // F-polynomials
        let fpolys = match &self.fpolys {
            None => None,
            Some(fp) => {
                let mut plus = MultiPoly::monomial(to_exps(&ck_pos)?, 1)?;
                let mut minus = MultiPoly::monomial(to_exps(&ck_neg)?, 1)?;
                for (i, fi) in fp.iter().enumerate() {
                    let bik = b.get(i, k);
                    if bik > 0 {
                        plus = plus.mul(&fi.pow(to_u32(bik)?))?;
                    } else if bik < 0 {
                        minus = minus.mul(&fi.pow(to_u32(-bik)?))?;
                    }
                }
                let mut out = fp.clone();
                out[k] = plus.add(&minus)?.exact_div(&fp[k])?;
                Some(out)
            }
        };

        let mut word = self.word.clone();
        word.push(k);
        Ok(PatternState {
            b0: self.b0.clone(),
            word,
            b: b.mutate(k)?,
            c,
            g,
            d,
            f,
            fpolys,
        })
    }

    /// `-v_k + max(extra_plus + sum [b_ik]_+ v_i, extra_minus + sum [-b_ik]_+ v_i)`
    /// over the columns `v_i` of `m`, with componentwise max.
    fn max_combination(
        &self,
        m: &IntMat,
        k: usize,
        extra_plus: Option<&[i64]>,
        extra_minus: Option<&[i64]>,
    ) -> Result<Vec<i64>> {
        let n = self.rank();
        let mut plus = extra_plus.map_or_else(|| vec![0; n], <[i64]>::to_vec);
        let mut minus = extra_minus.map_or_else(|| vec![0; n], <[i64]>::to_vec);
        for i in 0..n {
            let bik = self.b.get(i, k);
            let col = m.column(i);
            vec_axpy(&mut plus, pos(bik), &col)?;
            vec_axpy(&mut minus, pos(-bik), &col)?;
        }
        let mut out = vec_neg(&m.column(k))?;
        vec_axpy(&mut out, 1, &vec_max(&plus, &minus))?;
        Ok(out)
    }

    /// The H-matrix: entry `(i, j)` is the exponent of `F_j` evaluated in
    /// `Trop(u)` at `y_i = u^-1`, `y_m = u^{[-b_im]_+}` for `m != i`, with
    /// `b` taken from the initial matrix.
    pub fn h_matrix(&self) -> Result<IntMat> {
        let fp = self.fpolys_required()?;
        let n = self.rank();
        let b0 = self.b0.matrix();
        let mut h = IntMat::zeros(n, n)?;
        for i in 0..n {
            let assignment: Vec<Vec<i64>> = (0..n)
                .map(|m| vec![if m == i { -1 } else { pos(-b0.get(i, m)) }])
                .collect();
            for (j, fj) in fp.iter().enumerate() {
                h.set(i, j, fj.tropical_eval(&assignment)?[0]);
            }
        }
        Ok(h)
    }

    /// F-matrix of this vertex with respect to the initial seed moved to the
    /// neighbour `t1` of the rooted vertex along direction `k`, computed from
    /// data at the original rooted vertex only. `eps` must be `+1` or `-1`;
    /// the result does not depend on it.
    pub fn initial_mutation_f(&self, k: usize, eps: i64) -> Result<IntMat> {
        if eps != 1 && eps != -1 {
            return Err(Error::BadParameters("epsilon must be +1 or -1".into()));
        }
        self.b0.check_direction(k)?;
        let n = self.rank();
        let b0 = self.b0.matrix();
        let neg = evolve(&self.b0.negated()?, &self.word, EvolveOptions::matrices_only())?;
        let eps_b = if eps == 1 { b0.clone() } else { b0.checked_neg()? };
        let left = IntMat::sign_flip_diag(n, k)?.checked_add(&eps_b.positive_part().row_mask(k))?;
        let g_neg = if eps == 1 { neg.g.checked_neg()? } else { neg.g.clone() };
        let g_pos = if eps == 1 { self.g.clone() } else { self.g.checked_neg()? };
        left.checked_mul(&self.f)?
            .checked_add(&g_neg.positive_part().row_mask(k))?
            .checked_add(&g_pos.positive_part().row_mask(k))
    }
}

fn to_u32(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Overflow("exponent"))
}

pub(crate) fn to_exps(v: &[i64]) -> Result<Vec<i32>> {
    v.iter()
        .map(|&x| i32::try_from(x).map_err(|_| Error::Overflow("exponent")))
        .collect()
}

/// The state at the end of the 0-based word `word`, starting at the rooted
/// vertex with exchange matrix `b0`.
pub fn evolve(b0: &ExchangeMatrix, word: &[usize], opts: EvolveOptions) -> Result<PatternState> {
    word.iter()
        .try_fold(PatternState::initial(b0, opts), |s, &k| s.step(k))
}

/// Every state along the word, the rooted vertex first.
pub fn evolve_path(
    b0: &ExchangeMatrix,
    word: &[usize],
    opts: EvolveOptions,
) -> Result<Vec<PatternState>> {
    let mut out = vec![PatternState::initial(b0, opts)];
    for &k in word {
        let next = out.last().unwrap().step(k)?;
        out.push(next);
    }
    Ok(out)
}

/// All reduced words (no letter repeated twice in a row) of length at most
/// `depth`, in shortlex order, as 0-based letters.
pub fn reduced_words(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for k in 0..n {
                if w.last() != Some(&k) {
                    let mut v: Vec<usize> = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Visits every vertex of the tree within `depth` of the root, sharing
/// prefixes. The callback sees states in depth-first order.
pub fn for_each_vertex(
    b0: &ExchangeMatrix,
    depth: usize,
    opts: EvolveOptions,
    f: &mut dyn FnMut(&PatternState) -> Result<()>,
) -> Result<()> {
    fn go(
        s: &PatternState,
        depth: usize,
        f: &mut dyn FnMut(&PatternState) -> Result<()>,
    ) -> Result<()> {
        f(s)?;
        if depth == 0 {
            return Ok(());
        }
        for k in 0..s.rank() {
            if s.word.last() != Some(&k) {
                go(&s.step(k)?, depth - 1, f)?;
            }
        }
        Ok(())
    }
    go(&PatternState::initial(b0, opts), depth, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap()
    }

    fn m(rows: &[[i64; 2]]) -> IntMat {
        IntMat::from_rows(rows).unwrap()
    }

    #[test]
    fn rooted_vertex() {
        let s = evolve(&a2(), &[], EvolveOptions::default()).unwrap();
        assert_eq!(s.c(), &m(&[[1, 0], [0, 1]]));
        assert_eq!(s.g(), s.c());
        assert_eq!(s.d(), &m(&[[-1, 0], [0, -1]]));
        assert!(s.f().is_zero());
        assert!(s.fpolys().unwrap().iter().all(MultiPoly::is_one));
        assert!(s.h_matrix().unwrap().is_zero());
    }

    #[test]
    fn a2_second_vertex() {
        let s = evolve(&a2(), &[1, 0], EvolveOptions::default()).unwrap();
        let fp: Vec<String> = s.fpolys().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(fp, ["y1*y2 + y1 + 1", "y2 + 1"]);
        assert_eq!(s.f(), &m(&[[1, 0], [1, 1]]));
        assert_eq!(s.c(), &m(&[[-1, 0], [0, -1]]));
        assert_eq!(s.g(), &m(&[[-1, 0], [0, -1]]));
        assert_eq!(s.d(), &m(&[[1, 0], [1, 1]]));
        assert_eq!(s.h_matrix().unwrap(), m(&[[-1, 0], [0, -1]]));
    }

    #[test]
    fn a2_fourth_vertex_h() {
        let s = evolve(&a2(), &[1, 0, 1, 0], EvolveOptions::default()).unwrap();
        assert_eq!(s.g(), &m(&[[0, -1], [1, 1]]));
        assert_eq!(s.h_matrix().unwrap(), m(&[[0, -1], [0, 0]]));
    }

    #[test]
    fn affine_a2_vectors() {
        let b = ExchangeMatrix::from_rows(&[[0, 2, -1], [-2, 0, 1], [1, -1, 0]]).unwrap();
        let s = evolve(&b, &[2, 1, 0], EvolveOptions::default()).unwrap();
        assert_eq!(s.f().column(0), vec![1, 1, 2]);
        assert_eq!(s.d().column(0), vec![1, 1, 1]);
    }

    #[test]
    fn initial_mutation_matches_oracle_on_a2() {
        let b = a2();
        let s = evolve(&b, &[1, 0], EvolveOptions::default()).unwrap();
        let oracle = evolve(&b.mutate(0).unwrap(), &[0, 1, 0], EvolveOptions::default()).unwrap();
        assert_eq!(&s.initial_mutation_f(0, 1).unwrap(), oracle.f());
        assert_eq!(&s.initial_mutation_f(0, -1).unwrap(), oracle.f());
    }

    #[test]
    fn initial_mutation_at_root() {
        let b = a2();
        let s = PatternState::initial(&b, EvolveOptions::default());
        for k in 0..2 {
            let oracle = evolve(&b.mutate(k).unwrap(), &[k], EvolveOptions::default()).unwrap();
            assert_eq!(&s.initial_mutation_f(k, 1).unwrap(), oracle.f());
        }
    }

    #[test]
    fn stepping_back_restores_state() {
        let b = ExchangeMatrix::from_rows(&[[0, 2, -1], [-2, 0, 1], [1, -1, 0]]).unwrap();
        let s = evolve(&b, &[0, 2, 1], EvolveOptions::default()).unwrap();
        let back = s.step(1).unwrap();
        let direct = evolve(&b, &[0, 2], EvolveOptions::default()).unwrap();
        assert_eq!(back.b(), direct.b());
        assert_eq!(back.c(), direct.c());
        assert_eq!(back.g(), direct.g());
        assert_eq!(back.d(), direct.d());
        assert_eq!(back.f(), direct.f());
        assert_eq!(back.fpolys(), direct.fpolys());
    }

    #[test]
    fn missing_fpolys_reported() {
        let s = evolve(&a2(), &[0], EvolveOptions::matrices_only()).unwrap();
        assert_eq!(s.h_matrix(), Err(Error::MissingData("F-polynomials")));
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 2 + 2 + 2 for n = 2, and 1 + 3 + 6 for n = 3
        assert_eq!(reduced_words(2, 3).len(), 7);
        assert_eq!(reduced_words(3, 2).len(), 10);
    }
}
