//! Rebuilding cluster variables and coefficients from g-vectors, c-vectors
//! and F-polynomials.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, MultiPoly};
use crate::matrix::{vec_axpy, IntMat};

use super::seed::CoefficientSpec;
use super::to_exps;

/// `x^g * F(y_hat) / F|_P(y)` as a Laurent polynomial in `x1..xn, u1..ul`,
/// where `y_hat_i = y_i * prod_k x_k^{b_ki}` with `b` from the initial matrix
/// and the denominator is evaluated tropically.
pub fn separation_x(
    g: &[i64],
    f: &MultiPoly,
    b0: &IntMat,
    spec: &CoefficientSpec,
) -> Result<LaurentPoly> {
    let n = b0.rows();
    if g.len() != n || f.arity() != n {
        return Err(Error::DimensionMismatch("g-vector or F-polynomial arity".into()));
    }
    let p = spec.initial_exponents(n)?;
    let ell = spec.ell(n);
    let yhat = (0..n)
        .map(|i| {
            let mut e: Vec<i64> = b0.column(i);
            e.extend(&p[i]);
            LaurentPoly::monomial(to_exps(&e)?, 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let trop = if ell == 0 { Vec::new() } else { f.tropical_eval(&p)? };
    let mut shift = g.to_vec();
    shift.extend(trop.iter().map(|v| -v));
    let shift = to_exps(&shift)?;
    f.substitute(&yhat)?.mul_monomial(&shift)
}

/// Exponent vector of `y_{j;t} = y^{c_j} * prod_k F_k|_P(y)^{b_kj;t}` in the
/// tropical generators. `bt_column` is column `j` of `B_t`.
pub fn separation_y(
    c: &[i64],
    fpolys: &[MultiPoly],
    bt_column: &[i64],
    spec: &CoefficientSpec,
) -> Result<Vec<i64>> {
    let n = c.len();
    if fpolys.len() != n || bt_column.len() != n {
        return Err(Error::DimensionMismatch("separation data lengths".into()));
    }
    let p = spec.initial_exponents(n)?;
    let ell = spec.ell(n);
    let mut out = vec![0i64; ell];
    if ell == 0 {
        return Ok(out);
    }
    for i in 0..n {
        vec_axpy(&mut out, c[i], &p[i])?;
    }
    for (k, fk) in fpolys.iter().enumerate() {
        vec_axpy(&mut out, bt_column[k], &fk.tropical_eval(&p)?)?;
    }
    Ok(out)
}
