//! Exact multivariate polynomials and Laurent polynomials over big integers.
//!
//! Both share one representation, a sorted map from dense exponent vectors to
//! nonzero coefficients. The kind marker decides whether negative exponents
//! are allowed.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

pub trait PolyKind: Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + Ord {
    const LAURENT: bool;
    const DEFAULT_VAR: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinary;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent;

impl PolyKind for Ordinary {
    const LAURENT: bool = false;
    const DEFAULT_VAR: &'static str = "y";
}

impl PolyKind for Laurent {
    const LAURENT: bool = true;
    const DEFAULT_VAR: &'static str = "x";
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<K: PolyKind> {
    arity: usize,
    terms: BTreeMap<Exponents, BigInt>,
    _kind: PhantomData<K>,
}

/// Polynomial with nonnegative exponents.
pub type MultiPoly = Poly<Ordinary>;
/// Polynomial whose exponents may be negative.
pub type LaurentPoly = Poly<Laurent>;

impl<K: PolyKind> Poly<K> {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigInt::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c.into());
        p
    }

    /// The monomial `coeff * z^exps`.
    pub fn monomial(exps: Exponents, coeff: impl Into<BigInt>) -> Result<Self> {
        if !K::LAURENT && exps.iter().any(|&e| e < 0) {
            return Err(Error::NegativeExponent);
        }
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff.into());
        Ok(p)
    }

    /// The variable `z_i` (0-based).
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e, BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: e.len(),
                });
            }
            if !K::LAURENT && e.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.arity])
    }

    /// True when every coefficient is positive.
    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            _kind: PhantomData,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut acc: std::collections::HashMap<Exponents, BigInt> =
            std::collections::HashMap::with_capacity(
                self.terms.len().saturating_mul(other.terms.len()).min(1 << 16),
            );
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(Poly {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            _kind: PhantomData,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut result = Self::one(self.arity);
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base).expect("same arity");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same arity");
            }
        }
        result
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn mul_monomial(&self, shift: &[i32]) -> Result<Self> {
        if shift.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: shift.len(),
            });
        }
        let terms: BTreeMap<Exponents, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        if !K::LAURENT && terms.keys().any(|e: &Exponents| e.iter().any(|&x| x < 0)) {
            return Err(Error::NegativeExponent);
        }
        Ok(Poly {
            arity: self.arity,
            terms,
            _kind: PhantomData,
        })
    }

    /// Componentwise minimum exponent over all monomials.
    pub fn min_degrees(&self) -> Result<Vec<i32>> {
        self.fold_exponents(i32::min)
    }

    /// Componentwise maximum exponent over all monomials.
    pub fn max_degrees(&self) -> Result<Vec<i32>> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: impl Fn(i32, i32) -> i32) -> Result<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?.clone();
        Ok(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| f(*a, *b)).collect()))
    }

    /// Exact division. Errors with [`Error::NotDivisible`] when `q` does not
    /// divide `self` in the corresponding ring.
    pub fn exact_div(&self, q: &Self) -> Result<Self> {
        self.check_arity(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        // Shift both operands so that no variable divides them, divide as
        // ordinary polynomials, then shift back.
        let pmin = self.min_degrees()?;
        let qmin = q.min_degrees()?;
        let p0 = shift_raw(&self.terms, &pmin, -1);
        let q0 = shift_raw(&q.terms, &qmin, -1);
        let r0 = long_division(p0, &q0)?;
        let offset: Vec<i32> = pmin.iter().zip(&qmin).map(|(a, b)| a - b).collect();
        let terms = shift_raw(&r0, &offset, 1);
        if !K::LAURENT && terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::NotDivisible);
        }
        Ok(Poly {
            arity: self.arity,
            terms,
            _kind: PhantomData,
        })
    }

    /// Evaluates in the tropical semifield: `+` becomes componentwise min and
    /// `*` becomes addition of exponent vectors. Coefficients are ignored.
    /// `assignment[i]` is the exponent vector of the image of variable `i`.
    pub fn tropical_eval(&self, assignment: &[Vec<i64>]) -> Result<Vec<i64>> {
        if assignment.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: assignment.len(),
            });
        }
        let ell = assignment.first().map_or(0, Vec::len);
        if assignment.iter().any(|a| a.len() != ell) {
            return Err(Error::DimensionMismatch("tropical assignment rows differ in length".into()));
        }
        let mut best: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            let mut v = vec![0i64; ell];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                for (vj, aj) in v.iter_mut().zip(&assignment[i]) {
                    *vj = i64::from(ei)
                        .checked_mul(*aj)
                        .and_then(|t| vj.checked_add(t))
                        .ok_or(Error::Overflow("tropical evaluation"))?;
                }
            }
            best = Some(match best {
                None => v,
                Some(b) => b.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        best.ok_or(Error::ZeroPolynomial)
    }

    /// Substitutes `images[i]` for variable `i`. Negative exponents require
    /// the image to be a monomial with coefficient ±1.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.arity);
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                let factor = if ei >= 0 {
                    images[i].pow(ei as u32)
                } else {
                    images[i].monomial_inverse()?.pow(ei.unsigned_abs())
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Renames the kind after checking exponents.
    pub fn to_laurent(&self) -> LaurentPoly {
        Poly {
            arity: self.arity,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }

    /// Formats with the given variable names.
    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &ei) in e.iter().enumerate() {
                let name = names
                    .get(i)
                    .map(|s| s.as_ref().to_string())
                    .unwrap_or_else(|| format!("{}{}", K::DEFAULT_VAR, i + 1));
                match ei {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{ei}")),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{mag}*{}", factors.join("*"))
            };
            parts.push((neg, body));
        }
        let mut s = String::new();
        for (idx, (neg, body)) in parts.iter().enumerate() {
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        s
    }
}

impl LaurentPoly {
    /// Inverse of a unit monomial `±z^e`.
    pub fn monomial_inverse(&self) -> Result<LaurentPoly> {
        if self.terms.len() != 1 {
            return Err(Error::NotDivisible);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return Err(Error::NotDivisible);
        }
        LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c.clone())
    }

    /// Converts to an ordinary polynomial when no exponent is negative.
    pub fn to_multi(&self) -> Result<MultiPoly> {
        if self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::NegativeExponent);
        }
        Ok(Poly {
            arity: self.arity,
            terms: self.terms.clone(),
            _kind: PhantomData,
        })
    }

    /// Keeps the first `k` variables; the remaining ones are set to 1.
    pub fn specialize_tail_to_one(&self, k: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(k);
        for (e, c) in &self.terms {
            out.add_term(e[..k].to_vec(), c.clone());
        }
        out
    }

    /// Keeps only the last `arity - k` variables; the first `k` are set to 1.
    pub fn specialize_head_to_one(&self, k: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.arity - k);
        for (e, c) in &self.terms {
            out.add_term(e[k..].to_vec(), c.clone());
        }
        out
    }
}

fn shift_raw(
    terms: &BTreeMap<Exponents, BigInt>,
    by: &[i32],
    sign: i32,
) -> BTreeMap<Exponents, BigInt> {
    terms
        .iter()
        .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + sign * b).collect(), c.clone()))
        .collect()
}

/// Lex-order long division by a single divisor; succeeds only with remainder 0.
fn long_division(
    mut p: BTreeMap<Exponents, BigInt>,
    q: &BTreeMap<Exponents, BigInt>,
) -> Result<BTreeMap<Exponents, BigInt>> {
    let (lq_e, lq_c) = q.iter().next_back().expect("nonzero divisor");
    let mut quotient = BTreeMap::new();
    while let Some((lp_e, lp_c)) = p.iter().next_back() {
        let e: Exponents = lp_e.iter().zip(lq_e).map(|(a, b)| a - b).collect();
        if e.iter().any(|&x| x < 0) {
            return Err(Error::NotDivisible);
        }
        let (c, rem) = lp_c.div_rem(lq_c);
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        for (qe, qc) in q {
            let key: Exponents = qe.iter().zip(&e).map(|(a, b)| a + b).collect();
            let entry = p.entry(key).or_default();
            *entry -= &c * qc;
            if entry.is_zero() {
                let key: Exponents = qe.iter().zip(&e).map(|(a, b)| a + b).collect();
                p.remove(&key);
            }
        }
        quotient.insert(e, c);
    }
    Ok(quotient)
}

impl<K: PolyKind> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with::<&str>(&[]))
    }
}

impl<K: PolyKind> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.arity, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Exponents,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PolyRepr {
    Terms(Vec<TermRepr>),
    WithArity { arity: usize, terms: Vec<TermRepr> },
}

impl<K: PolyKind> Serialize for Poly<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Descending order, the same as the printed form.
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| TermRepr {
                exponents: e.clone(),
                coefficient: c.to_string(),
            })
            .collect();
        if terms.is_empty() {
            PolyRepr::WithArity {
                arity: self.arity,
                terms,
            }
            .serialize(s)
        } else {
            terms.serialize(s)
        }
    }
}

impl<'de, K: PolyKind> Deserialize<'de> for Poly<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (arity, terms) = match PolyRepr::deserialize(d)? {
            PolyRepr::Terms(t) => {
                let arity = t
                    .first()
                    .map(|x| x.exponents.len())
                    .ok_or_else(|| D::Error::custom("empty term list needs an explicit arity"))?;
                (arity, t)
            }
            PolyRepr::WithArity { arity, terms } => (arity, terms),
        };
        let parsed = terms
            .into_iter()
            .map(|t| {
                t.coefficient
                    .trim()
                    .parse::<BigInt>()
                    .map(|c| (t.exponents, c))
                    .map_err(|e| D::Error::custom(format!("bad coefficient: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Poly::from_terms(arity, parsed).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(&[i32], i64)]) -> MultiPoly {
        let arity = terms[0].0.len();
        MultiPoly::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
            .unwrap()
    }

    fn y1() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y2() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn one() -> MultiPoly {
        MultiPoly::one(2)
    }

    #[test]
    fn ring_examples() {
        let a = y2().add(&one()).unwrap();
        let b = y1().add(&one()).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "y1*y2 + y1 + y2 + 1");
        let f = p(&[(&[1, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(f.add(&MultiPoly::zero(2)).unwrap(), f);
        assert_eq!(a.pow(2).to_string(), "y2^2 + 2*y2 + 1");
        assert_eq!(f.to_string(), "y1*y2 + y1 + 1");
    }

    #[test]
    fn division_examples() {
        let num = p(&[(&[1, 1], 1), (&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let den = y2().add(&one()).unwrap();
        assert_eq!(num.exact_div(&den).unwrap(), y1().add(&one()).unwrap());
        let f = p(&[(&[1, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(f.exact_div(&den), Err(Error::NotDivisible));
        assert_eq!(f.exact_div(&MultiPoly::zero(2)), Err(Error::DivisionByZero));
        // an ordinary polynomial is not divisible by a variable it lacks
        assert_eq!(one().exact_div(&y1()), Err(Error::NotDivisible));
    }

    #[test]
    fn laurent_division() {
        let x1 = LaurentPoly::var(2, 0);
        let x2 = LaurentPoly::var(2, 1);
        let num = x1.add(&LaurentPoly::one(2)).unwrap();
        let r = num.exact_div(&x2).unwrap();
        assert_eq!(r.to_string(), "x1*x2^-1 + x2^-1");
        assert_eq!(r.mul(&x2).unwrap(), num);
    }

    #[test]
    fn degree_examples() {
        let f = p(&[(&[1, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(f.max_degrees().unwrap(), vec![1, 1]);
        assert_eq!(one().max_degrees().unwrap(), vec![0, 0]);
        assert_eq!(y1().add(&one()).unwrap().max_degrees().unwrap(), vec![1, 0]);
        assert_eq!(MultiPoly::zero(2).max_degrees(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn tropical_examples() {
        let f = y2().add(&one()).unwrap();
        assert_eq!(f.tropical_eval(&[vec![0], vec![-1]]).unwrap(), vec![-1]);
        assert_eq!(one().tropical_eval(&[vec![5], vec![7]]).unwrap(), vec![0]);
        let g = p(&[(&[1, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(g.tropical_eval(&[vec![-1], vec![0]]).unwrap(), vec![-1]);
    }

    #[test]
    fn negative_exponents_rejected_for_ordinary() {
        assert_eq!(MultiPoly::monomial(vec![-1, 0], 1), Err(Error::NegativeExponent));
        assert!(LaurentPoly::monomial(vec![-1, 0], 1).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let f = p(&[(&[1, 1], 3), (&[1, 0], -1), (&[0, 0], 1)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"[{"exponents":[1,1],"coefficient":"3"},{"exponents":[1,0],"coefficient":"-1"},{"exponents":[0,0],"coefficient":"1"}]"#
        );
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let z = MultiPoly::zero(3);
        let back: MultiPoly = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }

    fn arb_poly(arity: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0i32..3, arity), -4i64..=4),
            0..5,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(arity, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap()
        })
    }

    fn arb_positive_poly(arity: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0i32..3, arity), 1i64..=4), 1..5)
            .prop_map(move |ts| {
                MultiPoly::from_terms(arity, ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
                    .unwrap()
            })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }

        #[test]
        fn division_round_trip(a in arb_poly(3), q in arb_poly(3)) {
            prop_assume!(!q.is_zero());
            let prod = a.mul(&q).unwrap();
            prop_assert_eq!(prod.exact_div(&q).unwrap(), a);
        }

        #[test]
        fn laurent_division_round_trip(a in arb_poly(2), q in arb_poly(2), s in proptest::collection::vec(-3i32..3, 2)) {
            prop_assume!(!q.is_zero());
            let a = a.to_laurent().mul_monomial(&s).unwrap();
            let q = q.to_laurent();
            prop_assert_eq!(a.mul(&q).unwrap().exact_div(&q).unwrap(), a);
        }

        #[test]
        fn tropical_is_multiplicative(
            a in arb_positive_poly(2), b in arb_positive_poly(2),
            asg in proptest::collection::vec(proptest::collection::vec(-3i64..3, 2), 2)
        ) {
            let lhs = a.mul(&b).unwrap().tropical_eval(&asg).unwrap();
            let ea = a.tropical_eval(&asg).unwrap();
            let eb = b.tropical_eval(&asg).unwrap();
            let rhs: Vec<i64> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
