//! Direct seed mutation with tropical coefficients.
//!
//! Cluster variables are Laurent polynomials in `n + l` variables: the
//! initial cluster `x1..xn` followed by the tropical generators `u1..ul`.
//! Coefficients are stored as their exponent vectors in the generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{pos, vec_axpy, vec_neg, vec_pos, ExchangeMatrix, IntMat};

use super::to_exps;

/// How the initial coefficients sit inside a tropical semifield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSpec {
    /// `y_j = u_j` with `l = n`.
    Principal,
    /// The one-element semifield, `l = 0`.
    Trivial,
    /// An `l x n` integer matrix `P`: column `j` holds the exponents of `y_j`.
    Tropical(IntMat),
}

impl CoefficientSpec {
    pub fn ell(&self, n: usize) -> usize {
        match self {
            CoefficientSpec::Principal => n,
            CoefficientSpec::Trivial => 0,
            CoefficientSpec::Tropical(p) => p.rows(),
        }
    }

    /// Exponent vector of each initial coefficient `y_j`.
    pub fn initial_exponents(&self, n: usize) -> Result<Vec<Vec<i64>>> {
        match self {
            CoefficientSpec::Principal => Ok((0..n)
                .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
                .collect()),
            CoefficientSpec::Trivial => Ok(vec![Vec::new(); n]),
            CoefficientSpec::Tropical(p) => {
                if p.cols() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "coefficient matrix has {} columns, rank is {n}",
                        p.cols()
                    )));
                }
                Ok((0..n).map(|j| p.column(j)).collect())
            }
        }
    }

    /// Printable names of the generators.
    pub fn generator_names(&self, n: usize) -> Vec<String> {
        let prefix = match self {
            CoefficientSpec::Principal => "y",
            _ => "u",
        };
        (1..=self.ell(n)).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// A labeled seed with Laurent cluster variables and tropical coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Seed {
    #[serde(rename = "B")]
    b: ExchangeMatrix,
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    ell: usize,
    #[serde(skip)]
    names: Vec<String>,
    x: Vec<LaurentPoly>,
    y: Vec<Vec<i64>>,
}

impl Seed {
    pub fn initial(b0: &ExchangeMatrix, spec: &CoefficientSpec) -> Result<Seed> {
        let n = b0.rank();
        let ell = spec.ell(n);
        let y = spec.initial_exponents(n)?;
        let x = (0..n).map(|j| LaurentPoly::var(n + ell, j)).collect();
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend(spec.generator_names(n));
        Ok(Seed {
            b: b0.clone(),
            n,
            ell,
            names,
            x,
            y,
        })
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    /// Cluster variables as Laurent polynomials in `x1..xn, u1..ul`.
    pub fn x(&self) -> &[LaurentPoly] {
        &self.x
    }

    /// Exponent vectors of the coefficients `y_1..y_n`.
    pub fn y(&self) -> &[Vec<i64>] {
        &self.y
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn display_x(&self, j: usize) -> String {
        self.x[j].display_with(&self.names)
    }

    /// Mutation in direction `k` (0-based): exchange relation with exact
    /// Laurent division, coefficients updated with tropical addition.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        self.b.check_direction(k)?;
        let (n, ell) = (self.n, self.ell);
        let yk = &self.y[k];
        let coeff = |v: Vec<i64>| -> Result<LaurentPoly> {
            let mut e = vec![0; n];
            e.extend(to_exps(&v)?);
            LaurentPoly::monomial(e, 1)
        };
        let yk_neg = vec_pos(&vec_neg(yk)?);
        let mut plus = coeff(vec_pos(yk))?;
        let mut minus = coeff(yk_neg.clone())?;
        for i in 0..n {
            let bik = self.b.get(i, k);
            if bik > 0 {
                plus = plus.mul(&self.x[i].pow(exp_u32(bik)?))?;
            } else if bik < 0 {
                minus = minus.mul(&self.x[i].pow(exp_u32(-bik)?))?;
            }
        }
        let mut x = self.x.clone();
        x[k] = plus.add(&minus)?.exact_div(&self.x[k])?;

        let mut y = self.y.clone();
        for j in 0..n {
            if j == k {
                y[j] = vec_neg(yk)?;
            } else {
                let bkj = self.b.get(k, j);
                vec_axpy(&mut y[j], pos(bkj), yk)?;
                vec_axpy(&mut y[j], bkj, &yk_neg)?;
            }
        }
        debug_assert!(y.iter().all(|v| v.len() == ell));
        Ok(Seed {
            b: self.b.mutate(k)?,
            n,
            ell,
            names: self.names.clone(),
            x,
            y,
        })
    }

    pub fn mutate_along(&self, word: &[usize]) -> Result<Seed> {
        word.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Denominator vectors: `d_ij` is minus the least exponent of `x_i` in
    /// the cluster variable `x_j`.
    pub fn denominator_vectors(&self) -> Result<IntMat> {
        let mut d = IntMat::zeros(self.n, self.n)?;
        for (j, xj) in self.x.iter().enumerate() {
            let mins = xj.min_degrees()?;
            for i in 0..self.n {
                d.set(i, j, -i64::from(mins[i]));
            }
        }
        Ok(d)
    }
}

fn exp_u32(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Overflow("exponent"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap()
    }

    #[test]
    fn principal_first_step() {
        let s = Seed::initial(&a2(), &CoefficientSpec::Principal).unwrap().mutate(1).unwrap();
        assert_eq!(s.display_x(1), "x1*x2^-1*y2 + x2^-1");
        assert_eq!(s.y(), &[vec![1, 0], vec![0, -1]]);
    }

    #[test]
    fn principal_third_step() {
        let s = Seed::initial(&a2(), &CoefficientSpec::Principal)
            .unwrap()
            .mutate_along(&[1, 0, 1])
            .unwrap();
        // (y1 + x2) / x1
        assert_eq!(s.display_x(1), "x1^-1*x2 + x1^-1*y1");
    }

    #[test]
    fn trivial_coefficients() {
        let s = Seed::initial(&a2(), &CoefficientSpec::Trivial).unwrap().mutate(1).unwrap();
        assert_eq!(s.display_x(1), "x1*x2^-1 + x2^-1");
    }

    #[test]
    fn tropical_spec_checks_width() {
        let p = IntMat::from_rows(&[[1, 0, 0]]).unwrap();
        assert!(Seed::initial(&a2(), &CoefficientSpec::Tropical(p)).is_err());
    }
}
