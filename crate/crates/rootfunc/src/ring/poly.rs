//! Sparse multivariate polynomials over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::degree::Degree;
use super::exponent::Exponent;
use super::field::ExactField;

/// A polynomial in `nvars` variables, stored as a map from exponent vector to
/// nonzero coefficient. Terms iterate in ascending graded-lex order; the last
/// entry is the leading term.
///
/// Arithmetic requires both operands to live in the same variable count and
/// panics otherwise; mixing variable counts is a programming error, not a
/// runtime condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<K: ExactField> {
    nvars: usize,
    terms: BTreeMap<Exponent, K>,
}

impl<K: ExactField> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: K) -> Self {
        let mut p = Poly::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(Exponent::zero(nvars), value);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, K::one())
    }

    /// The variable `x_{k+1}` (0-based `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable index {k} out of range for {nvars} vars");
        let mut p = Poly::zero(nvars);
        p.terms.insert(Exponent::unit(nvars, k), K::one());
        p
    }

    pub fn monomial(nvars: usize, exp: Exponent, coeff: K) -> Self {
        assert_eq!(exp.nvars(), nvars, "exponent length mismatch");
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, K)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (exp, coeff) in terms {
            p.add_term(exp, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `-∞` for the zero polynomial.
    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(exp) => Degree::Finite(exp.total() as i64),
            None => Degree::NegInfinity,
        }
    }

    /// Coefficient of `x^exp`, zero when absent.
    pub fn coeff(&self, exp: &Exponent) -> K {
        self.terms.get(exp).cloned().unwrap_or_else(K::zero)
    }

    /// Leading (graded-lex greatest) term, if any.
    pub fn leading_term(&self) -> Option<(&Exponent, &K)> {
        self.terms.iter().next_back()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &K)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, K> {
        self.terms
    }

    /// Adds `coeff·x^exp` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: Exponent, coeff: K) {
        assert_eq!(exp.nvars(), self.nvars, "exponent length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(existing) => {
                let sum = existing.add_ref(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in different variable counts"
        );
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (exp, coeff) in &other.terms {
            out.add_term(exp.clone(), coeff.clone());
        }
        out
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (exp, coeff) in &other.terms {
            out.add_term(exp.clone(), coeff.neg_ref());
        }
        out
    }

    pub fn neg_poly(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, factor: &K) -> Self {
        if factor.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul_ref(factor)))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^exp` in place.
    pub fn mul_monomial(&self, exp: &Exponent, coeff: &K) -> Self {
        assert_eq!(exp.nvars(), self.nvars, "exponent length mismatch");
        if coeff.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c.mul_ref(coeff)))
                .collect(),
        }
    }

    /// Evaluates at a point, one value per variable.
    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = K::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (k, &e) in exp.entries().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul_ref(&point[k]);
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Substitutes a polynomial for each variable.
    pub fn compose(&self, images: &[Poly<K>]) -> Poly<K> {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let out_vars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(self.nvars);
        for im in images {
            assert_eq!(im.nvars, out_vars, "substitution images disagree on arity");
        }
        let mut acc = Poly::zero(out_vars);
        for (exp, coeff) in &self.terms {
            let mut term = Poly::constant(out_vars, coeff.clone());
            for (k, &e) in exp.entries().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul_poly(&images[k]);
                }
            }
            acc = acc.add_poly(&term);
        }
        acc
    }

    /// Maps this polynomial into a ring with `new_nvars ≥ nvars` variables,
    /// sending `x_k` to the variable at `offset + k`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Poly<K> {
        assert!(offset + self.nvars <= new_nvars, "embedding out of range");
        let mut out = Poly::zero(new_nvars);
        for (exp, coeff) in &self.terms {
            let mut e = vec![0u32; new_nvars];
            e[offset..offset + self.nvars].copy_from_slice(exp.entries());
            out.terms.insert(Exponent::new(e), coeff.clone());
        }
        out
    }

    /// Exact division: returns `q` with `self = q·divisor`, or `None` if the
    /// division leaves a remainder. Long division by leading terms.
    pub fn div_exact(&self, divisor: &Self) -> Option<Poly<K>> {
        self.assert_same_ring(divisor);
        let (lead_exp, lead_coeff) = divisor
            .leading_term()
            .expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rexp, rcoeff)) = rem.leading_term() {
            let qexp = rexp.checked_sub(lead_exp)?;
            let qcoeff = rcoeff.div_ref(lead_coeff);
            rem = rem.sub_poly(&divisor.mul_monomial(&qexp, &qcoeff));
            quot.add_term(qexp, qcoeff);
        }
        Some(quot)
    }
}

impl<K: ExactField> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        self.add_poly(rhs)
    }
}

impl<K: ExactField> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        self.sub_poly(rhs)
    }
}

impl<K: ExactField> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        self.mul_poly(rhs)
    }
}

impl<K: ExactField> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_poly()
    }
}

impl<K: ExactField> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self, &|f, k| write!(f, "x{}", k + 1))
    }
}

/// Shared printer: descending graded-lex, `-` folded into the separator,
/// unit coefficients omitted on non-constant monomials.
pub(crate) fn fmt_poly<K: ExactField>(
    f: &mut fmt::Formatter<'_>,
    poly: &Poly<K>,
    var_name: &dyn Fn(&mut fmt::Formatter<'_>, usize) -> fmt::Result,
) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    let one = K::one();
    let minus_one = one.neg_ref();
    for (i, (exp, coeff)) in poly.terms.iter().rev().enumerate() {
        let negative = coeff.to_string().starts_with('-');
        if i == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let magnitude = if negative { coeff.neg_ref() } else { coeff.clone() };
        if exp.is_zero() {
            write!(f, "{magnitude}")?;
        } else {
            if magnitude != one {
                write!(f, "{magnitude}*")?;
            }
            let mut first = true;
            for (k, &e) in exp.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                var_name(f, k)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        let _ = &minus_one;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{rat, Rat};

    fn x(k: usize) -> Poly<Rat> {
        Poly::var(2, k)
    }

    #[test]
    fn arithmetic_and_degree() {
        let p = &(&x(0) * &x(0)) + &Poly::constant(2, rat(1, 1)); // x1^2 + 1
        assert_eq!(p.degree(), Degree::Finite(2));
        assert_eq!(p.num_terms(), 2);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.degree(), Degree::NegInfinity);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &x(0) * &x(1);
        let q = (&x(1) * &x(0)).neg_poly();
        assert!(p.add_poly(&q).is_zero());
    }

    #[test]
    fn eval_matches_expansion() {
        // 3/2*x1^2*x2 - x2 + 1 at (2, 3) = 9 - 3 + 1 + ... -> 3/2*4*3 - 3 + 1 = 16
        let p = Poly::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 1]), rat(3, 2)),
                (Exponent::new(vec![0, 1]), rat(-1, 1)),
                (Exponent::new(vec![0, 0]), rat(1, 1)),
            ],
        );
        assert_eq!(p.eval(&[rat(2, 1), rat(3, 1)]), rat(16, 1));
    }

    #[test]
    fn compose_substitutes() {
        // p = x1*x2, substitute x1 -> y1 + y2, x2 -> y1: p = y1^2 + y1*y2
        let p = &x(0) * &x(1);
        let images = vec![x(0).add_poly(&x(1)), x(0)];
        let q = p.compose(&images);
        assert_eq!(q.coeff(&Exponent::new(vec![2, 0])), rat(1, 1));
        assert_eq!(q.coeff(&Exponent::new(vec![1, 1])), rat(1, 1));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn div_exact_round_trips() {
        let a = &x(0) + &Poly::constant(2, rat(1, 1));
        let b = &x(1) - &Poly::constant(2, rat(2, 3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let off = prod.add_poly(&Poly::one(2));
        assert_eq!(off.div_exact(&a), None);
    }

    #[test]
    fn display_conventions() {
        let p = Poly::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 1]), rat(3, 2)),
                (Exponent::new(vec![0, 1]), rat(-1, 1)),
                (Exponent::new(vec![0, 0]), rat(1, 1)),
            ],
        );
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x2 + 1");
        assert_eq!(Poly::<Rat>::zero(2).to_string(), "0");
        let m = Poly::monomial(2, Exponent::new(vec![1, 0]), rat(-1, 1));
        assert_eq!(m.to_string(), "-x1");
    }
}
