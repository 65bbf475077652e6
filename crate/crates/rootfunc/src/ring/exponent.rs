//! Exponent vectors and the graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// The exponent vector of a monomial `x^α = x1^{α_1}·…·xn^{α_n}`.
///
/// Ordered graded-lexicographically: lower total degree first, ties broken by
/// lexicographic comparison of the entries. `BTreeMap<Exponent, _>` therefore
/// iterates monomials in canonical ascending order, ending at the leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    /// The constant monomial in `n` variables.
    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    /// The single variable `x_{k+1}` (0-based `k`).
    pub fn unit(nvars: usize, k: usize) -> Self {
        debug_assert!(k < nvars);
        let mut e = vec![0; nvars];
        e[k] = 1;
        Exponent(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|α|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum (monomial product). Panics on length mismatch.
    pub fn add(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.0.len(), other.0.len(), "exponent length mismatch");
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference (monomial quotient), if it stays nonnegative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        assert_eq!(self.0.len(), other.0.len(), "exponent length mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn with_entry(&self, k: usize, value: u32) -> Exponent {
        let mut e = self.0.clone();
        e[k] = value;
        Exponent(e)
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `C(n + d, n)`: the number of monomials in `n` variables of degree `≤ d`.
/// Saturates at `u128::MAX` instead of overflowing.
pub fn monomial_count(nvars: usize, d: i64) -> u128 {
    if d < 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    // C(n + d, n) = prod_{i=1..n} (d + i) / i, exact at every step.
    for i in 1..=nvars as u128 {
        acc = match acc.checked_mul(d as u128 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// All exponent vectors in `n` variables with total degree `≤ d`, in
/// ascending graded-lex order. Empty when `d < 0`.
pub fn monomials_up_to(nvars: usize, d: i64) -> Vec<Exponent> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut scratch = vec![0u32; nvars];
    for deg in 0..=d as u32 {
        fill_of_degree(&mut out, &mut scratch, 0, deg);
    }
    out
}

fn fill_of_degree(out: &mut Vec<Exponent>, scratch: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        out.push(Exponent(scratch.clone()));
        return;
    }
    for e in 0..=remaining {
        scratch[pos] = e;
        fill_of_degree(out, scratch, pos + 1, remaining - e);
    }
    scratch[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        assert!(e(&[0, 0]) < e(&[0, 1]));
        assert!(e(&[0, 1]) < e(&[1, 0]));
        assert!(e(&[1, 0]) < e(&[0, 2]));
        assert!(e(&[0, 2]) < e(&[1, 1]));
        assert!(e(&[1, 1]) < e(&[2, 0]));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms.len() as u128, monomial_count(2, 2));
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(ms, sorted);
        assert_eq!(ms[0], Exponent::zero(2));
        assert_eq!(ms[5], e(&[2, 0]));
    }

    #[test]
    fn enumeration_handles_negative_bound() {
        assert!(monomials_up_to(3, -1).is_empty());
        assert_eq!(monomial_count(3, -1), 0);
        assert_eq!(monomial_count(3, 0), 1);
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(monomial_count(1, 5), 6);
        assert_eq!(monomial_count(2, 3), 10);
        assert_eq!(monomial_count(3, 2), 10);
        assert_eq!(monomial_count(3, 9), 220);
    }

    #[test]
    fn display_forms() {
        assert_eq!(e(&[0, 0]).to_string(), "1");
        assert_eq!(e(&[2, 1]).to_string(), "x1^2*x2");
        assert_eq!(e(&[0, 3]).to_string(), "x2^3");
    }
}
