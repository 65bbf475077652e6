//! Linear functionals on degree-truncated polynomial spaces.
//!
//! A [`Functional`] is determined on `R[x^{≤D}]` only: it carries the bound
//! `D` and a finite coefficient table `α ↦ L.x^α`. Applying it to anything of
//! higher degree is an error, never a silent truncation — the degree
//! preconditions of the extension machinery depend on that.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::degree::Degree;
use crate::ring::exponent::{monomials_up_to, Exponent};
use crate::ring::field::{ExactField, Rat};
use crate::ring::poly::Poly;
use crate::ring::polyxy::PolyXY;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FunctionalError {
    #[error("polynomial degree {degree} exceeds the functional's bound {bound}")]
    DegreeOverflow { degree: Degree, bound: i64 },
    #[error("y-degree {degree} exceeds the functional's bound {bound}")]
    YDegreeOverflow { degree: Degree, bound: i64 },
    #[error("linear combination over an empty term list")]
    EmptyLincomb,
}

/// Errors reading the JSON form of a functional.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FunctionalParseError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("nvars must be at least 1")]
    NoVariables,
    #[error("bound {bound} is negative")]
    NegativeBound { bound: i64 },
    #[error("coefficient {index}: exponent has {have} entries, expected {want}")]
    WrongExponentLength {
        index: usize,
        have: usize,
        want: usize,
    },
    #[error("coefficient {index}: exponent repeats an earlier entry")]
    DuplicateExponent { index: usize },
    #[error("coefficient {index}: total degree {total} exceeds the bound {bound}")]
    ExponentAboveBound {
        index: usize,
        total: u32,
        bound: i64,
    },
    #[error("coefficient {index}: '{text}' is not a rational (expected p or p/q)")]
    BadRational { index: usize, text: String },
    #[error("coefficient {index}: denominator is zero")]
    ZeroDenominator { index: usize },
}

/// A linear functional on `R[x^{≤bound}]`, as the table `α ↦ L.x^α` with zero
/// entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional<K: ExactField> {
    nvars: usize,
    bound: i64,
    coeffs: BTreeMap<Exponent, K>,
}

impl<K: ExactField> Functional<K> {
    pub fn zero(nvars: usize, bound: i64) -> Self {
        assert!(bound >= 0, "functional bound must be nonnegative");
        Functional {
            nvars,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(
        nvars: usize,
        bound: i64,
        coeffs: impl IntoIterator<Item = (Exponent, K)>,
    ) -> Self {
        let mut out = Functional::zero(nvars, bound);
        for (exp, val) in coeffs {
            out.set_coeff(exp, val);
        }
        out
    }

    /// The dual of a single monomial: `L.x^α = 1`, every other monomial `0`.
    pub fn dual_monomial(nvars: usize, bound: i64, exp: Exponent) -> Self {
        Functional::from_coeffs(nvars, bound, [(exp, K::one())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored entries in ascending graded-lex order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&Exponent, &K)> {
        self.coeffs.iter()
    }

    /// `L.x^α`, zero when unset.
    pub fn coeff(&self, exp: &Exponent) -> K {
        self.coeffs.get(exp).cloned().unwrap_or_else(K::zero)
    }

    fn set_coeff(&mut self, exp: Exponent, val: K) {
        assert_eq!(exp.nvars(), self.nvars, "exponent length mismatch");
        assert!(
            (exp.total() as i64) <= self.bound,
            "exponent degree {} outside the functional's bound {}",
            exp.total(),
            self.bound
        );
        if val.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, val);
        }
    }

    /// The dual pairing `L.F`. Errors when `deg F` exceeds the bound.
    pub fn apply(&self, f: &Poly<K>) -> Result<K, FunctionalError> {
        assert_eq!(f.nvars(), self.nvars, "polynomial and functional disagree on n");
        if f.degree() > self.bound {
            return Err(FunctionalError::DegreeOverflow {
                degree: f.degree(),
                bound: self.bound,
            });
        }
        let mut acc = K::zero();
        for (exp, c) in f.terms() {
            if let Some(l) = self.coeffs.get(exp) {
                acc = acc.add_ref(&l.mul_ref(c));
            }
        }
        Ok(acc)
    }

    /// Applies the functional to the `y` block of `q`: writing
    /// `q = Σ_β q_β(x)·y^β`, returns `Σ_β (L.y^β)·q_β(x)`.
    pub fn apply_in_y(&self, q: &PolyXY<K>) -> Result<Poly<K>, FunctionalError> {
        assert_eq!(q.n(), self.nvars, "operands disagree on variable count");
        if q.deg_y() > self.bound {
            return Err(FunctionalError::YDegreeOverflow {
                degree: q.deg_y(),
                bound: self.bound,
            });
        }
        let n = self.nvars;
        let mut out = Poly::zero(n);
        for (exp, c) in q.inner().terms() {
            let ye = Exponent::new(exp.entries()[n..].to_vec());
            if let Some(l) = self.coeffs.get(&ye) {
                let xe = Exponent::new(exp.entries()[..n].to_vec());
                out.add_term(xe, l.mul_ref(c));
            }
        }
        Ok(out)
    }

    /// Extends the domain to `R[x^{≤new_bound}]`, taking the value 0 on every
    /// monomial above the old bound.
    pub fn extend_zero(&self, new_bound: i64) -> Self {
        assert!(
            new_bound >= self.bound,
            "extension bound {new_bound} below current bound {}",
            self.bound
        );
        Functional {
            nvars: self.nvars,
            bound: new_bound,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Restricts the domain to `R[x^{≤new_bound}]`, dropping higher entries.
    pub fn restrict(&self, new_bound: i64) -> Self {
        assert!(
            (0..=self.bound).contains(&new_bound),
            "restriction bound {new_bound} outside 0..={}",
            self.bound
        );
        Functional {
            nvars: self.nvars,
            bound: new_bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| (e.total() as i64) <= new_bound)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    /// Partial comparison: agreement of the coefficient tables on the smaller
    /// of the two bounds. A full equality check must also compare bounds.
    pub fn agrees_on_common_bound(&self, other: &Self) -> bool {
        assert_eq!(self.nvars, other.nvars, "functionals disagree on n");
        let common = self.bound.min(other.bound);
        let within = |f: &Self| {
            f.coeffs
                .iter()
                .filter(|(e, _)| (e.total() as i64) <= common)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect::<BTreeMap<_, _>>()
        };
        within(self) == within(other)
    }

    pub fn scale(&self, factor: &K) -> Self {
        if factor.is_zero() {
            return Functional::zero(self.nvars, self.bound);
        }
        Functional {
            nvars: self.nvars,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (e.clone(), v.mul_ref(factor)))
                .collect(),
        }
    }
}

/// The evaluation functional at a point: `L.F = F(λ)` for all `deg F ≤ bound`,
/// i.e. the table `α ↦ λ^α`.
pub fn eval_functional<K: ExactField>(point: &[K], bound: i64) -> Functional<K> {
    assert!(bound >= 0, "functional bound must be nonnegative");
    let nvars = point.len();
    let mut coeffs = BTreeMap::new();
    for exp in monomials_up_to(nvars, bound) {
        let mut v = K::one();
        for (k, &e) in exp.entries().iter().enumerate() {
            for _ in 0..e {
                v = v.mul_ref(&point[k]);
            }
        }
        if !v.is_zero() {
            coeffs.insert(exp, v);
        }
    }
    Functional {
        nvars,
        bound,
        coeffs,
    }
}

/// Pointwise linear combination, restricted to the smallest bound among the
/// terms. Errors on an empty term list.
pub fn functional_lincomb<K: ExactField>(
    terms: &[(K, &Functional<K>)],
) -> Result<Functional<K>, FunctionalError> {
    let first = terms.first().ok_or(FunctionalError::EmptyLincomb)?;
    let nvars = first.1.nvars;
    let bound = terms
        .iter()
        .map(|(_, f)| {
            assert_eq!(f.nvars, nvars, "functionals disagree on n");
            f.bound
        })
        .min()
        .expect("nonempty");
    let mut acc: BTreeMap<Exponent, K> = BTreeMap::new();
    for (scalar, f) in terms {
        if scalar.is_zero() {
            continue;
        }
        for (exp, v) in &f.coeffs {
            if (exp.total() as i64) > bound {
                continue;
            }
            let add = scalar.mul_ref(v);
            match acc.remove(exp) {
                Some(old) => {
                    let sum = old.add_ref(&add);
                    if !sum.is_zero() {
                        acc.insert(exp.clone(), sum);
                    }
                }
                None => {
                    acc.insert(exp.clone(), add);
                }
            }
        }
    }
    Ok(Functional {
        nvars,
        bound,
        coeffs: acc,
    })
}

// --- JSON form (rational coefficients only) ---

#[derive(Serialize, Deserialize)]
struct FunctionalJson {
    nvars: usize,
    bound: i64,
    coeffs: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    exp: Vec<u32>,
    val: String,
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub(crate) fn rational_from_str(text: &str) -> Result<Rat, RationalStrError> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num = BigInt::from_str(num_text).map_err(|_| RationalStrError::Malformed)?;
    match den_text {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den = BigInt::from_str(d).map_err(|_| RationalStrError::Malformed)?;
            if den == BigInt::from(0) {
                return Err(RationalStrError::ZeroDenominator);
            }
            Ok(Ratio::new(num, den))
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum RationalStrError {
    Malformed,
    ZeroDenominator,
}

impl Functional<Rat> {
    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = FunctionalJson {
            nvars: self.nvars,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| CoeffJson {
                    exp: e.entries().to_vec(),
                    val: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("functional serialization cannot fail")
    }

    pub fn to_json_string(&self, pretty: bool) -> String {
        let value = self.to_json_value();
        if pretty {
            serde_json::to_string_pretty(&value).expect("serialization cannot fail")
        } else {
            serde_json::to_string(&value).expect("serialization cannot fail")
        }
    }

    pub fn from_json_str(input: &str) -> Result<Self, FunctionalParseError> {
        let raw: FunctionalJson = serde_json::from_str(input)
            .map_err(|e| FunctionalParseError::Syntax(e.to_string()))?;
        if raw.nvars == 0 {
            return Err(FunctionalParseError::NoVariables);
        }
        if raw.bound < 0 {
            return Err(FunctionalParseError::NegativeBound { bound: raw.bound });
        }
        let mut out = Functional::zero(raw.nvars, raw.bound);
        for (index, c) in raw.coeffs.into_iter().enumerate() {
            if c.exp.len() != raw.nvars {
                return Err(FunctionalParseError::WrongExponentLength {
                    index,
                    have: c.exp.len(),
                    want: raw.nvars,
                });
            }
            let exp = Exponent::new(c.exp);
            let total = exp.total();
            if (total as i64) > raw.bound {
                return Err(FunctionalParseError::ExponentAboveBound {
                    index,
                    total,
                    bound: raw.bound,
                });
            }
            if out.coeffs.contains_key(&exp) {
                return Err(FunctionalParseError::DuplicateExponent { index });
            }
            let val = rational_from_str(&c.val).map_err(|e| match e {
                RationalStrError::Malformed => FunctionalParseError::BadRational {
                    index,
                    text: c.val.clone(),
                },
                RationalStrError::ZeroDenominator => {
                    FunctionalParseError::ZeroDenominator { index }
                }
            })?;
            if !val.is_zero() {
                out.coeffs.insert(exp, val);
            }
        }
        Ok(out)
    }
}

impl<K: ExactField> fmt::Display for Functional<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[bound {}]", self.bound)?;
        if self.is_zero() {
            return write!(f, " 0");
        }
        for (exp, v) in &self.coeffs {
            write!(f, " ({exp} -> {v})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::rat;
    use crate::ring::parse::poly_parse;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn dual_pairing_extracts_coefficients() {
        let l = Functional::<Rat>::dual_monomial(1, 2, e(&[0]));
        let f = poly_parse("x1^2 - 1", 1).unwrap();
        assert_eq!(l.apply(&f), Ok(rat(-1, 1)));
        assert_eq!(l.apply(&Poly::zero(1)), Ok(rat(0, 1)));
    }

    #[test]
    fn apply_rejects_degree_overflow() {
        let l = Functional::<Rat>::dual_monomial(1, 1, e(&[1]));
        let f = poly_parse("x1^2", 1).unwrap();
        assert_eq!(
            l.apply(&f),
            Err(FunctionalError::DegreeOverflow {
                degree: Degree::Finite(2),
                bound: 1
            })
        );
    }

    #[test]
    fn evaluation_functional_tables() {
        let at1 = eval_functional(&[rat(1, 1)], 2);
        assert_eq!(at1.coeff(&e(&[0])), rat(1, 1));
        assert_eq!(at1.coeff(&e(&[1])), rat(1, 1));
        assert_eq!(at1.coeff(&e(&[2])), rat(1, 1));

        let at2 = eval_functional(&[rat(2, 1)], 2);
        assert_eq!(at2.coeff(&e(&[0])), rat(1, 1));
        assert_eq!(at2.coeff(&e(&[1])), rat(2, 1));
        assert_eq!(at2.coeff(&e(&[2])), rat(4, 1));

        let at0 = eval_functional(&[rat(0, 1), rat(0, 1)], 3);
        assert_eq!(at0, Functional::dual_monomial(2, 3, e(&[0, 0])));
    }

    #[test]
    fn evaluation_agrees_with_eval() {
        let pts = [
            vec![rat(1, 2), rat(-2, 3)],
            vec![rat(0, 1), rat(3, 1)],
            vec![rat(-1, 1), rat(-1, 5)],
        ];
        let f = poly_parse("3/2*x1^2*x2 - x2 + 1", 2).unwrap();
        for pt in &pts {
            let l = eval_functional(pt, 3);
            assert_eq!(l.apply(&f).unwrap(), f.eval(pt));
        }
        let root = eval_functional(&[rat(1, 1)], 2);
        let f = poly_parse("x1^2 - 1", 1).unwrap();
        assert_eq!(root.apply(&f), Ok(rat(0, 1)));
    }

    #[test]
    fn apply_in_y_substitutes() {
        // (x1 + y1) under eval at 1 -> x1 + 1
        let q = PolyXY::embed_x(&poly_parse("x1", 1).unwrap())
            .add(&PolyXY::embed_y(&poly_parse("x1", 1).unwrap()));
        let l = eval_functional(&[rat(1, 1)], 1);
        assert_eq!(l.apply_in_y(&q).unwrap(), poly_parse("x1 + 1", 1).unwrap());

        // q independent of y: scaled by L.1
        let q = PolyXY::embed_x(&poly_parse("x1^2 - 3", 1).unwrap());
        let l = eval_functional(&[rat(5, 1)], 2).scale(&rat(2, 1));
        assert_eq!(
            l.apply_in_y(&q).unwrap(),
            poly_parse("2*x1^2 - 6", 1).unwrap()
        );

        // x1·y1^2 under the dual of x^2 -> x1
        let q = PolyXY::x_var(1, 0).mul(&PolyXY::y_var(1, 0)).mul(&PolyXY::y_var(1, 0));
        let l = Functional::<Rat>::dual_monomial(1, 2, e(&[2]));
        assert_eq!(l.apply_in_y(&q).unwrap(), poly_parse("x1", 1).unwrap());
    }

    #[test]
    fn apply_in_y_rejects_overflow() {
        let q = PolyXY::<Rat>::y_var(1, 0).mul(&PolyXY::y_var(1, 0));
        let l = Functional::<Rat>::dual_monomial(1, 1, e(&[1]));
        assert_eq!(
            l.apply_in_y(&q),
            Err(FunctionalError::YDegreeOverflow {
                degree: Degree::Finite(2),
                bound: 1
            })
        );
    }

    #[test]
    fn apply_in_y_separable_case() {
        let f = poly_parse("x1^2 - x2", 2).unwrap();
        let g = poly_parse("x1*x2 + 1", 2).unwrap();
        let l = eval_functional(&[rat(2, 1), rat(-1, 3)], 2);
        let q = PolyXY::embed_y(&f).mul(&PolyXY::embed_x(&g));
        assert_eq!(
            l.apply_in_y(&q).unwrap(),
            g.scale(&l.apply(&f).unwrap())
        );
    }

    #[test]
    fn lincomb_combines_tables() {
        let l = eval_functional(&[rat(3, 1)], 2);
        let z = functional_lincomb(&[(rat(1, 1), &l), (rat(-1, 1), &l)]).unwrap();
        assert!(z.is_zero());

        let dx = Functional::<Rat>::dual_monomial(1, 1, e(&[1]));
        let two_dx = functional_lincomb(&[(rat(2, 1), &dx)]).unwrap();
        assert_eq!(two_dx.coeff(&e(&[1])), rat(2, 1));

        // eval(1) − eval(0) on R[x^{≤1}] is the dual of x.
        let a = eval_functional(&[rat(1, 1)], 1);
        let b = eval_functional(&[rat(0, 1)], 1);
        let diff = functional_lincomb(&[(rat(1, 1), &a), (rat(-1, 1), &b)]).unwrap();
        assert_eq!(diff, dx);

        assert_eq!(
            functional_lincomb::<Rat>(&[]),
            Err(FunctionalError::EmptyLincomb)
        );
    }

    #[test]
    fn lincomb_takes_min_bound() {
        let a = eval_functional(&[rat(2, 1)], 3);
        let b = eval_functional(&[rat(2, 1)], 1);
        let sum = functional_lincomb(&[(rat(1, 1), &a), (rat(1, 1), &b)]).unwrap();
        assert_eq!(sum.bound(), 1);
        assert_eq!(sum.coeff(&e(&[1])), rat(4, 1));
    }

    #[test]
    fn extend_and_restrict() {
        let l = eval_functional(&[rat(2, 1)], 2);
        let ext = l.extend_zero(4);
        assert_eq!(ext.bound(), 4);
        assert_eq!(ext.coeff(&e(&[3])), rat(0, 1));
        assert!(ext.agrees_on_common_bound(&l));
        assert_eq!(ext.restrict(2), l);
        // eval at 2 genuinely differs from the zero-extension above bound 2.
        let evals = eval_functional(&[rat(2, 1)], 4);
        assert!(!evals.agrees_on_common_bound(&ext));
        assert_ne!(evals, ext);
        assert!(evals.agrees_on_common_bound(&l));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let l = Functional::<Rat>::from_coeffs(
            2,
            2,
            [
                (e(&[1, 1]), rat(-3, 2)),
                (e(&[0, 0]), rat(1, 1)),
                (e(&[0, 2]), rat(7, 1)),
            ],
        );
        let text = l.to_json_string(false);
        let back = Functional::from_json_str(&text).unwrap();
        assert_eq!(back, l);
        // Exponents serialize in ascending graded-lex order.
        let v = l.to_json_value();
        let exps: Vec<Vec<u32>> = v["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                c["exp"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap() as u32)
                    .collect()
            })
            .collect();
        assert_eq!(exps, vec![vec![0, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(v["coeffs"][1]["val"], "7");
        assert_eq!(v["coeffs"][2]["val"], "-3/2");
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(matches!(
            Functional::from_json_str("{"),
            Err(FunctionalParseError::Syntax(_))
        ));
        assert_eq!(
            Functional::from_json_str(r#"{"nvars":0,"bound":1,"coeffs":[]}"#),
            Err(FunctionalParseError::NoVariables)
        );
        assert_eq!(
            Functional::from_json_str(r#"{"nvars":1,"bound":-1,"coeffs":[]}"#),
            Err(FunctionalParseError::NegativeBound { bound: -1 })
        );
        assert_eq!(
            Functional::from_json_str(
                r#"{"nvars":2,"bound":1,"coeffs":[{"exp":[1],"val":"1"}]}"#
            ),
            Err(FunctionalParseError::WrongExponentLength {
                index: 0,
                have: 1,
                want: 2
            })
        );
        assert_eq!(
            Functional::from_json_str(
                r#"{"nvars":1,"bound":1,"coeffs":[{"exp":[1],"val":"1"},{"exp":[1],"val":"2"}]}"#
            ),
            Err(FunctionalParseError::DuplicateExponent { index: 1 })
        );
        assert_eq!(
            Functional::from_json_str(
                r#"{"nvars":1,"bound":1,"coeffs":[{"exp":[2],"val":"1"}]}"#
            ),
            Err(FunctionalParseError::ExponentAboveBound {
                index: 0,
                total: 2,
                bound: 1
            })
        );
        assert_eq!(
            Functional::from_json_str(
                r#"{"nvars":1,"bound":1,"coeffs":[{"exp":[1],"val":"x"}]}"#
            ),
            Err(FunctionalParseError::BadRational {
                index: 0,
                text: "x".into()
            })
        );
        assert_eq!(
            Functional::from_json_str(
                r#"{"nvars":1,"bound":1,"coeffs":[{"exp":[1],"val":"1/0"}]}"#
            ),
            Err(FunctionalParseError::ZeroDenominator { index: 0 })
        );
    }

    #[test]
    fn json_drops_explicit_zeros() {
        let l = Functional::from_json_str(
            r#"{"nvars":1,"bound":2,"coeffs":[{"exp":[1],"val":"0"},{"exp":[2],"val":"0/5"}]}"#,
        )
        .unwrap();
        assert!(l.is_zero());
    }
}
