//! Difference derivatives.
//!
//! A difference derivative of `F` is a covector `D = (D^1, …, D^n)` of
//! polynomials in `(x, y)` with
//!
//! ```text
//! Σ_k (x_k − y_k)·D^k(x, y) = F(x) − F(y)
//! ```
//!
//! exactly. The canonical one ([`nabla`]) telescopes through the variables in
//! order and is monotonous: every component has total degree ≤ deg F − 1.
//! [`nabla_swapped`] gives a second, generally different derivative of the
//! same polynomial; [`decompose_difference`] expresses the gap between any
//! two as a certified table of quadratic-relation multipliers.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::degree::Degree;
use crate::ring::exponent::Exponent;
use crate::ring::field::ExactField;
use crate::ring::poly::Poly;
use crate::ring::polyxy::PolyXY;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivError {
    #[error("covectors disagree: Σ (x_k − y_k)·D^k differs, so they are not difference derivatives of one polynomial")]
    TelescopingMismatch,
    #[error("covector {which} has total degree {degree}, above the stated component bound {bound}")]
    DegreeOverflow {
        which: usize,
        degree: Degree,
        bound: i64,
    },
}

/// A covector of `n` polynomials in the doubled variable set, the shape of a
/// difference derivative `(D^1, …, D^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovectorXY<K: ExactField> {
    n: usize,
    comps: Vec<PolyXY<K>>,
}

impl<K: ExactField> CovectorXY<K> {
    pub fn new(comps: Vec<PolyXY<K>>) -> Self {
        assert!(!comps.is_empty(), "covector needs at least one component");
        let n = comps[0].n();
        assert!(
            comps.iter().all(|c| c.n() == n),
            "covector components disagree on variable count"
        );
        assert_eq!(comps.len(), n, "covector needs exactly n components");
        CovectorXY { n, comps }
    }

    pub fn zero(n: usize) -> Self {
        CovectorXY {
            n,
            comps: vec![PolyXY::zero(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Component `D^{k+1}` (0-based `k`).
    pub fn comp(&self, k: usize) -> &PolyXY<K> {
        &self.comps[k]
    }

    pub fn comps(&self) -> &[PolyXY<K>] {
        &self.comps
    }

    /// `Σ_k (x_k − y_k)·D^k`.
    pub fn contract(&self) -> PolyXY<K> {
        let n = self.n;
        let mut acc = PolyXY::zero(n);
        for (k, c) in self.comps.iter().enumerate() {
            let factor = PolyXY::x_var(n, k).sub(&PolyXY::y_var(n, k));
            acc = acc.add(&factor.mul(c));
        }
        acc
    }

    /// Whether this covector is a difference derivative of `f`.
    pub fn is_derivative_of(&self, f: &Poly<K>) -> bool {
        assert_eq!(f.nvars(), self.n, "polynomial and covector disagree on n");
        self.contract() == PolyXY::embed_x(f).sub(&PolyXY::embed_y(f))
    }

    /// Largest total degree over the components.
    pub fn max_degree(&self) -> Degree {
        self.comps
            .iter()
            .map(|c| c.degree())
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Whether every component has total degree ≤ deg f − 1.
    pub fn is_monotonous_for(&self, f: &Poly<K>) -> bool {
        self.max_degree() <= f.degree().shifted(-1)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "covectors disagree on variable count");
        CovectorXY {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "covectors disagree on variable count");
        CovectorXY {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &K) -> Self {
        CovectorXY {
            n: self.n,
            comps: self.comps.iter().map(|c| c.scale(factor)).collect(),
        }
    }
}

/// Exact division of `p` by `(v_a − v_b)` where `v_a`, `v_b` are variables of
/// the ambient ring. Returns `None` if a remainder is left.
fn div_by_var_difference<K: ExactField>(p: &Poly<K>, a: usize, b: usize) -> Option<Poly<K>> {
    let nvars = p.nvars();
    let mut rem = p.clone();
    let mut quot = Poly::zero(nvars);
    let b_unit = Exponent::unit(nvars, b);
    while !rem.is_zero() {
        // Any term with a positive v_a exponent works; taking the greatest
        // keeps the loop from revisiting monomials it has already produced.
        let (exp, coeff) = rem.terms().rev().find(|(e, _)| e.get(a) >= 1)?;
        let (exp, coeff) = (exp.clone(), coeff.clone());
        let qexp = exp.with_entry(a, exp.get(a) - 1);
        quot.add_term(qexp.clone(), coeff.clone());
        rem.add_term(exp, coeff.neg_ref());
        rem.add_term(qexp.add(&b_unit), coeff);
    }
    Some(quot)
}

/// Remaps an `n`-variable polynomial into the doubled ring, sending `x_j` to
/// `y_j` for `j < cutoff` and keeping `x_j` for `j ≥ cutoff`.
fn prefix_to_y<K: ExactField>(f: &Poly<K>, cutoff: usize) -> Poly<K> {
    let n = f.nvars();
    let mut out = Poly::zero(2 * n);
    for (exp, coeff) in f.terms() {
        let mut e = vec![0u32; 2 * n];
        for (j, &a) in exp.entries().iter().enumerate() {
            if j < cutoff {
                e[n + j] = a;
            } else {
                e[j] = a;
            }
        }
        out.add_term(Exponent::new(e), coeff.clone());
    }
    out
}

/// The canonical difference derivative: component `k` is
/// `[F(y_{<k}, x_k, x_{>k}) − F(y_{<k}, y_k, x_{>k})] / (x_k − y_k)`.
///
/// Always monotonous, and linear in `F`.
pub fn nabla<K: ExactField>(f: &Poly<K>) -> CovectorXY<K> {
    let n = f.nvars();
    let mut comps = Vec::with_capacity(n);
    for k in 0..n {
        let upper = prefix_to_y(f, k);
        let lower = prefix_to_y(f, k + 1);
        let num = upper.sub_poly(&lower);
        let quot = div_by_var_difference(&num, k, n + k)
            .expect("telescoping numerator vanishes at x_k = y_k, so division is exact");
        comps.push(PolyXY::from_inner(n, quot));
    }
    CovectorXY { n, comps }
}

/// The block-swapped derivative `D(y, x)`: a difference derivative of the
/// same polynomial as `D`, generally different from it.
pub fn nabla_swapped<K: ExactField>(d: &CovectorXY<K>) -> CovectorXY<K> {
    CovectorXY {
        n: d.n,
        comps: d.comps.iter().map(|c| c.swap_xy()).collect(),
    }
}

/// Product rule: given derivatives of `F` and `G`, builds one of `F·G` with
/// components `DF^k·G(y) + F(x)·DG^k`.
///
/// The result can be non-monotonous when leading terms of `F·G` cancel; its
/// components are only bounded by `deg F + deg G − 1`.
pub fn nabla_product<K: ExactField>(
    f: &Poly<K>,
    g: &Poly<K>,
    df: &CovectorXY<K>,
    dg: &CovectorXY<K>,
) -> CovectorXY<K> {
    let n = f.nvars();
    assert_eq!(g.nvars(), n, "factors disagree on variable count");
    assert_eq!(df.n, n, "derivative of F disagrees on variable count");
    assert_eq!(dg.n, n, "derivative of G disagrees on variable count");
    let gy = PolyXY::embed_y(g);
    let fx = PolyXY::embed_x(f);
    let comps = df
        .comps
        .iter()
        .zip(&dg.comps)
        .map(|(a, b)| a.mul(&gy).add(&fx.mul(b)))
        .collect();
    CovectorXY { n, comps }
}

/// The certified gap between two difference derivatives of one polynomial.
///
/// Keys are 0-based component pairs `(k, l)` with `k < l`; the stored
/// multipliers satisfy, for every `m`,
///
/// ```text
/// D1^m − D2^m = Σ_{k<m} (x_k − y_k)·T^{km} − Σ_{l>m} (x_l − y_l)·T^{ml}
/// ```
///
/// and each has total degree ≤ `degree_bound − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyDecomposition<K: ExactField> {
    n: usize,
    t_table: BTreeMap<(usize, usize), PolyXY<K>>,
    degree_bound: i64,
}

impl<K: ExactField> DiscrepancyDecomposition<K> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_table(&self) -> &BTreeMap<(usize, usize), PolyXY<K>> {
        &self.t_table
    }

    /// `T^{kl}` for 0-based `k < l`.
    pub fn multiplier(&self, k: usize, l: usize) -> Option<&PolyXY<K>> {
        self.t_table.get(&(k, l))
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    pub fn max_degree(&self) -> Degree {
        self.t_table
            .values()
            .map(|t| t.degree())
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// The right-hand side of the identity for component `m`.
    pub fn reconstruct(&self, m: usize) -> PolyXY<K> {
        let n = self.n;
        let mut acc = PolyXY::zero(n);
        for (&(k, l), t) in &self.t_table {
            if l == m {
                let factor = PolyXY::x_var(n, k).sub(&PolyXY::y_var(n, k));
                acc = acc.add(&factor.mul(t));
            } else if k == m {
                let factor = PolyXY::x_var(n, l).sub(&PolyXY::y_var(n, l));
                acc = acc.sub(&factor.mul(t));
            }
        }
        acc
    }
}

/// Expresses `D1 − D2` through the table `T^{kl}`, given two difference
/// derivatives of one polynomial whose components stay within degree `d − 1`.
///
/// `T^{kl}` is the `k`-th canonical derivative, in the `x` block only, of the
/// gap component `W^l = D1^l − D2^l`.
pub fn decompose_difference<K: ExactField>(
    d1: &CovectorXY<K>,
    d2: &CovectorXY<K>,
    d: i64,
) -> Result<DiscrepancyDecomposition<K>, DerivError> {
    assert_eq!(d1.n, d2.n, "covectors disagree on variable count");
    let n = d1.n;
    for (which, cov) in [(1usize, d1), (2, d2)] {
        let degree = cov.max_degree();
        if degree > d - 1 {
            return Err(DerivError::DegreeOverflow {
                which,
                degree,
                bound: d - 1,
            });
        }
    }
    if d1.contract() != d2.contract() {
        return Err(DerivError::TelescopingMismatch);
    }

    let w: Vec<PolyXY<K>> = (0..n).map(|l| d1.comps[l].sub(&d2.comps[l])).collect();
    let mut t_table = BTreeMap::new();
    for l in 0..n {
        for k in 0..l {
            let t = nabla_x_component(&w[l], k);
            if !t.is_zero() {
                t_table.insert((k, l), t);
            }
        }
    }
    let out = DiscrepancyDecomposition {
        n,
        t_table,
        degree_bound: d,
    };
    for m in 0..n {
        debug_assert!(
            out.reconstruct(m) == w[m],
            "multiplier table fails to reconstruct component {m}"
        );
    }
    Ok(out)
}

/// Component `k` of the canonical derivative of `w` taken in the `x` block
/// alone, the `y` block riding along as parameters:
/// `[w(y_{<k}, x_k, x_{>k}, y) − w(y_{<k}, y_k, x_{>k}, y)] / (x_k − y_k)`.
fn nabla_x_component<K: ExactField>(w: &PolyXY<K>, k: usize) -> PolyXY<K> {
    let n = w.n();
    let upper = x_prefix_to_y(w, k);
    let lower = x_prefix_to_y(w, k + 1);
    let num = upper.sub(&lower);
    let quot = div_by_var_difference(num.inner(), k, n + k)
        .expect("numerator vanishes at x_k = y_k, so division is exact");
    PolyXY::from_inner(n, quot)
}

/// Sends `x_j` to `y_j` for `j < cutoff` inside the doubled ring, leaving the
/// rest of the `x` block and all of the `y` block alone.
fn x_prefix_to_y<K: ExactField>(w: &PolyXY<K>, cutoff: usize) -> PolyXY<K> {
    let n = w.n();
    let mut out = Poly::zero(2 * n);
    for (exp, coeff) in w.inner().terms() {
        let mut e = exp.entries().to_vec();
        for j in 0..cutoff {
            e[n + j] += e[j];
            e[j] = 0;
        }
        out.add_term(Exponent::new(e), coeff.clone());
    }
    PolyXY::from_inner(n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{rat, Rat};
    use crate::ring::parse::poly_parse;

    fn p(text: &str, n: usize) -> Poly<Rat> {
        poly_parse(text, n).unwrap()
    }

    fn pxy(text: &str, n: usize) -> PolyXY<Rat> {
        // Reuses the plain-variable grammar over 2n slots: x1..xn then y1..yn.
        let raw = text.replace('y', "zz");
        let raw: String = raw
            .split("zz")
            .enumerate()
            .map(|(i, chunk)| {
                if i == 0 {
                    chunk.to_string()
                } else {
                    let (digits, rest) = chunk.split_at(
                        chunk
                            .find(|c: char| !c.is_ascii_digit())
                            .unwrap_or(chunk.len()),
                    );
                    let idx: usize = digits.parse().unwrap();
                    format!("x{}{}", n + idx, rest)
                }
            })
            .collect();
        PolyXY::from_inner(n, poly_parse(&raw, 2 * n).unwrap())
    }

    /// Independent construction of the canonical derivative, term by term:
    /// each monomial contributes `y^{α_{<k}}·(Σ_j x_k^j y_k^{α_k−1−j})·x^{α_{>k}}`.
    fn nabla_termwise(f: &Poly<Rat>) -> CovectorXY<Rat> {
        let n = f.nvars();
        let mut comps = vec![PolyXY::zero(n); n];
        for (exp, coeff) in f.terms() {
            for k in 0..n {
                let ak = exp.get(k);
                for j in 0..ak {
                    let mut e = vec![0u32; 2 * n];
                    for i in 0..k {
                        e[n + i] = exp.get(i);
                    }
                    for i in k + 1..n {
                        e[i] = exp.get(i);
                    }
                    e[k] = j;
                    e[n + k] = ak - 1 - j;
                    comps[k] = comps[k].add(&PolyXY::from_inner(
                        n,
                        Poly::monomial(2 * n, Exponent::new(e), coeff.clone()),
                    ));
                }
            }
        }
        CovectorXY { n, comps }
    }

    #[test]
    fn nabla_of_square_is_sum() {
        let d = nabla(&p("x1^2", 1));
        assert_eq!(d.comp(0), &pxy("x1 + y1", 1));
    }

    #[test]
    fn nabla_of_cross_term() {
        let d = nabla(&p("x1*x2", 2));
        assert_eq!(d.comp(0), &pxy("x2", 2));
        assert_eq!(d.comp(1), &pxy("y1", 2));
    }

    #[test]
    fn nabla_of_constant_is_zero() {
        let d = nabla(&p("7/2", 3));
        assert_eq!(d, CovectorXY::zero(3));
        assert_eq!(nabla(&Poly::<Rat>::zero(2)), CovectorXY::zero(2));
    }

    #[test]
    fn telescoping_and_monotonicity() {
        for (text, n) in [
            ("x1^3 - 2*x1 + 1", 1),
            ("x1^2*x2 - x2^3 + x1 - 5", 2),
            ("x1*x2*x3 + x3^2 - 1/3", 3),
        ] {
            let f = p(text, n);
            let d = nabla(&f);
            assert!(d.is_derivative_of(&f));
            assert!(d.is_monotonous_for(&f));
            assert_eq!(d, nabla_termwise(&f), "termwise oracle for {text}");
        }
    }

    #[test]
    fn nabla_is_linear() {
        let f = p("x1^2*x2 + x2", 2);
        let g = p("x1*x2^2 - 3", 2);
        let a = rat(3, 2);
        let b = rat(-2, 5);
        let combo = f.scale(&a).add_poly(&g.scale(&b));
        assert_eq!(nabla(&combo), nabla(&f).scale(&a).add(&nabla(&g).scale(&b)));
    }

    #[test]
    fn swapped_is_still_a_derivative() {
        let f = p("x1^2*x2 - x2^3 + x1", 2);
        let d = nabla(&f);
        let ds = nabla_swapped(&d);
        assert!(ds.is_derivative_of(&f));
        assert_ne!(d, ds);
        // Symmetric single-variable case collapses to the same covector.
        let sq = nabla(&p("x1^2", 1));
        assert_eq!(nabla_swapped(&sq), sq);
    }

    #[test]
    fn product_rule_builds_a_derivative() {
        let f = p("x1", 1);
        let g = p("x1 + 1", 1);
        let d = nabla_product(&f, &g, &nabla(&f), &nabla(&g));
        assert_eq!(d.comp(0), &pxy("x1 + y1 + 1", 1));
        assert!(d.is_derivative_of(&f.mul_poly(&g)));

        let f = p("x1*x2 - 1", 2);
        let g = p("x2^2 + x1", 2);
        let d = nabla_product(&f, &g, &nabla(&f), &nabla(&g));
        assert!(d.is_derivative_of(&f.mul_poly(&g)));
    }

    #[test]
    fn product_rule_with_unit_factor() {
        let g = p("x1^2*x2 - x2", 2);
        let one = Poly::one(2);
        let d = nabla_product(&one, &g, &nabla(&one), &nabla(&g));
        assert_eq!(d, nabla(&g));
    }

    #[test]
    fn decompose_matches_hand_computation() {
        let f = p("x1*x2", 2);
        let d1 = nabla(&f);
        let d2 = nabla_swapped(&d1);
        let dec = decompose_difference(&d1, &d2, 2).unwrap();
        assert_eq!(dec.t_table().len(), 1);
        assert_eq!(
            dec.multiplier(0, 1),
            Some(&PolyXY::constant(2, rat(-1, 1)))
        );
        for m in 0..2 {
            assert_eq!(dec.reconstruct(m), d1.comp(m).sub(d2.comp(m)));
        }
        assert!(dec.max_degree() <= 0);
    }

    #[test]
    fn decompose_zero_gap_is_empty() {
        let f = p("x1^2 - x2", 2);
        let d = nabla(&f);
        let dec = decompose_difference(&d, &d, 2).unwrap();
        assert!(dec.t_table().is_empty());
    }

    #[test]
    fn decompose_rejects_mismatched_covectors() {
        let d1 = nabla(&p("x1*x2", 2));
        let d2 = nabla(&p("x1*x2 + x1", 2));
        assert_eq!(
            decompose_difference(&d1, &d2, 2),
            Err(DerivError::TelescopingMismatch)
        );
    }

    #[test]
    fn decompose_rejects_degree_overflow() {
        let f = p("x1^3*x2", 2);
        let d = nabla(&f);
        assert!(matches!(
            decompose_difference(&d, &d, 2),
            Err(DerivError::DegreeOverflow { which: 1, .. })
        ));
    }

    #[test]
    fn decompose_respects_degree_bound() {
        let f = p("x1^2*x2^2 - x1*x2 + x2", 2);
        let deg = 4;
        let d1 = nabla(&f);
        let d2 = nabla_swapped(&d1);
        let dec = decompose_difference(&d1, &d2, deg).unwrap();
        assert!(dec.max_degree() <= deg - 2);
        for m in 0..2 {
            assert_eq!(dec.reconstruct(m), d1.comp(m).sub(d2.comp(m)));
        }
    }
}
