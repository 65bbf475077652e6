//! Polynomials in a doubled variable set `x_1..x_n, y_1..y_n`.

use std::fmt;

use super::degree::Degree;
use super::exponent::Exponent;
use super::field::ExactField;
use super::poly::{fmt_poly, Poly};

/// A polynomial in the `2n` variables `x_1..x_n, y_1..y_n`, indices `0..n`
/// addressing the `x` block and `n..2n` the `y` block of the underlying ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyXY<K: ExactField> {
    n: usize,
    inner: Poly<K>,
}

impl<K: ExactField> PolyXY<K> {
    pub fn zero(n: usize) -> Self {
        PolyXY {
            n,
            inner: Poly::zero(2 * n),
        }
    }

    pub fn constant(n: usize, value: K) -> Self {
        PolyXY {
            n,
            inner: Poly::constant(2 * n, value),
        }
    }

    /// Wraps a polynomial already living in `2n` variables.
    pub fn from_inner(n: usize, inner: Poly<K>) -> Self {
        assert_eq!(inner.nvars(), 2 * n, "wrapped polynomial must have 2n vars");
        PolyXY { n, inner }
    }

    /// Sends an `n`-variable polynomial to the `x` block.
    pub fn embed_x(p: &Poly<K>) -> Self {
        let n = p.nvars();
        PolyXY {
            n,
            inner: p.embed(2 * n, 0),
        }
    }

    /// Sends an `n`-variable polynomial to the `y` block.
    pub fn embed_y(p: &Poly<K>) -> Self {
        let n = p.nvars();
        PolyXY {
            n,
            inner: p.embed(2 * n, n),
        }
    }

    pub fn x_var(n: usize, k: usize) -> Self {
        assert!(k < n);
        PolyXY {
            n,
            inner: Poly::var(2 * n, k),
        }
    }

    pub fn y_var(n: usize, k: usize) -> Self {
        assert!(k < n);
        PolyXY {
            n,
            inner: Poly::var(2 * n, n + k),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> &Poly<K> {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Total degree in all `2n` variables jointly.
    pub fn degree(&self) -> Degree {
        self.inner.degree()
    }

    /// Degree in the `x` block alone.
    pub fn deg_x(&self) -> Degree {
        self.block_degree(0)
    }

    /// Degree in the `y` block alone.
    pub fn deg_y(&self) -> Degree {
        self.block_degree(self.n)
    }

    fn block_degree(&self, offset: usize) -> Degree {
        let mut best = Degree::NegInfinity;
        for (exp, _) in self.inner.terms() {
            let d: u32 = exp.entries()[offset..offset + self.n].iter().sum();
            if Degree::Finite(d as i64) > best {
                best = Degree::Finite(d as i64);
            }
        }
        best
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "operands disagree on variable count");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        PolyXY {
            n: self.n,
            inner: self.inner.add_poly(&other.inner),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same(other);
        PolyXY {
            n: self.n,
            inner: self.inner.sub_poly(&other.inner),
        }
    }

    pub fn neg(&self) -> Self {
        PolyXY {
            n: self.n,
            inner: self.inner.neg_poly(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        PolyXY {
            n: self.n,
            inner: self.inner.mul_poly(&other.inner),
        }
    }

    pub fn scale(&self, factor: &K) -> Self {
        PolyXY {
            n: self.n,
            inner: self.inner.scale(factor),
        }
    }

    /// Swaps the two blocks: `P(x, y) ↦ P(y, x)`.
    pub fn swap_xy(&self) -> Self {
        let n = self.n;
        let mut out = Poly::zero(2 * n);
        for (exp, coeff) in self.inner.terms() {
            let mut e = vec![0u32; 2 * n];
            e[..n].copy_from_slice(&exp.entries()[n..]);
            e[n..].copy_from_slice(&exp.entries()[..n]);
            out.add_term(Exponent::new(e), coeff.clone());
        }
        PolyXY { n, inner: out }
    }

    /// Sets `y := x`, collapsing to an `n`-variable polynomial.
    pub fn diagonal(&self) -> Poly<K> {
        let n = self.n;
        let mut out = Poly::zero(n);
        for (exp, coeff) in self.inner.terms() {
            let merged: Vec<u32> = (0..n)
                .map(|k| exp.get(k) + exp.get(n + k))
                .collect();
            out.add_term(Exponent::new(merged), coeff.clone());
        }
        out
    }

    /// Evaluates the `y` block at a point, leaving a polynomial in `x`.
    pub fn eval_y(&self, point: &[K]) -> Poly<K> {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        let n = self.n;
        let mut out = Poly::zero(n);
        for (exp, coeff) in self.inner.terms() {
            let mut c = coeff.clone();
            for k in 0..n {
                for _ in 0..exp.get(n + k) {
                    c = c.mul_ref(&point[k]);
                }
            }
            out.add_term(Exponent::new(exp.entries()[..n].to_vec()), c);
        }
        out
    }

    /// Evaluates both blocks.
    pub fn eval(&self, x: &[K], y: &[K]) -> K {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        let mut point = x.to_vec();
        point.extend_from_slice(y);
        self.inner.eval(&point)
    }

    /// Collects the coefficient of each `y` monomial: pairs of
    /// (`y` exponent, coefficient polynomial in `x`).
    pub fn y_sections(&self) -> Vec<(Exponent, Poly<K>)> {
        use std::collections::BTreeMap;
        let n = self.n;
        let mut sections: BTreeMap<Exponent, Poly<K>> = BTreeMap::new();
        for (exp, coeff) in self.inner.terms() {
            let ye = Exponent::new(exp.entries()[n..].to_vec());
            let xe = Exponent::new(exp.entries()[..n].to_vec());
            sections
                .entry(ye)
                .or_insert_with(|| Poly::zero(n))
                .add_term(xe, coeff.clone());
        }
        sections.retain(|_, p| !p.is_zero());
        sections.into_iter().collect()
    }
}

impl<K: ExactField> fmt::Display for PolyXY<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        fmt_poly(f, &self.inner, &|f, k| {
            if k < n {
                write!(f, "x{}", k + 1)
            } else {
                write!(f, "y{}", k - n + 1)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{rat, Rat};

    #[test]
    fn embed_and_swap() {
        let p: Poly<Rat> = Poly::var(2, 0); // x1
        let px = PolyXY::embed_x(&p);
        let py = PolyXY::embed_y(&p);
        assert_eq!(px.swap_xy(), py);
        assert_eq!(py.swap_xy(), px);
        assert_eq!(px.to_string(), "x1");
        assert_eq!(py.to_string(), "y1");
    }

    #[test]
    fn block_degrees() {
        // x1^2*y2 + y1^3
        let p: PolyXY<Rat> = PolyXY::x_var(2, 0)
            .mul(&PolyXY::x_var(2, 0))
            .mul(&PolyXY::y_var(2, 1))
            .add(&PolyXY::y_var(2, 0).mul(&PolyXY::y_var(2, 0)).mul(&PolyXY::y_var(2, 0)));
        assert_eq!(p.deg_x(), Degree::Finite(2));
        assert_eq!(p.deg_y(), Degree::Finite(3));
        assert_eq!(p.degree(), Degree::Finite(3));
        assert_eq!(PolyXY::<Rat>::zero(2).deg_x(), Degree::NegInfinity);
    }

    #[test]
    fn diagonal_collapses() {
        // x1*y1 -> x1^2
        let p: PolyXY<Rat> = PolyXY::x_var(1, 0).mul(&PolyXY::y_var(1, 0));
        let d = p.diagonal();
        assert_eq!(d.coeff(&Exponent::new(vec![2])), rat(1, 1));
        assert_eq!(d.num_terms(), 1);
    }

    #[test]
    fn eval_y_specializes() {
        // x1 + y1, y1 := 3 -> x1 + 3
        let p: PolyXY<Rat> = PolyXY::x_var(1, 0).add(&PolyXY::y_var(1, 0));
        let q = p.eval_y(&[rat(3, 1)]);
        assert_eq!(q.coeff(&Exponent::new(vec![0])), rat(3, 1));
        assert_eq!(q.coeff(&Exponent::new(vec![1])), rat(1, 1));
    }

    #[test]
    fn y_sections_partition() {
        let p: PolyXY<Rat> = PolyXY::x_var(1, 0)
            .mul(&PolyXY::y_var(1, 0))
            .add(&PolyXY::x_var(1, 0))
            .add(&PolyXY::constant(1, rat(5, 1)));
        let sections = p.y_sections();
        assert_eq!(sections.len(), 2);
        assert_eq!(sections[0].0, Exponent::zero(1));
        assert_eq!(sections[1].0, Exponent::new(vec![1]));
    }
}
