//! Degree-truncated ideal pieces and their annihilators.
//!
//! For a system `f = (f_1, …, f_n)` and a degree `d`, the truncated piece is
//! the linear span of the shifted generators `x^α·f_i` with
//! `|α| + deg f_i ≤ d` (empty when `d < 0`). This module tests membership in
//! that span with exact reconstruction witnesses and computes the space of
//! functionals on `R[x^{≤D}]` annihilating it — the bounded root functionals
//! of the system.

pub mod linalg;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::functional::Functional;
use crate::ring::degree::Degree;
use crate::ring::exponent::{monomial_count, monomials_up_to, Exponent};
use crate::ring::field::{ExactField, Rat};
use crate::ring::poly::Poly;
use crate::ring::system::SystemProfile;
use linalg::Echelon;

/// Refuse annihilator computations needing more monomial columns than this
/// unless the caller raises the cap explicitly.
pub const DEFAULT_COLUMN_CAP: u128 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("polynomial degree {degree} exceeds the truncation budget {budget}")]
    DegreeAboveBudget { degree: Degree, budget: i64 },
    #[error("truncation degree {degree} exceeds the functional's bound {bound}")]
    BoundTooSmall { degree: i64, bound: i64 },
    #[error(
        "degree {degree} needs {needed} monomial columns, above the cap of {cap}; \
         raise the cap to proceed"
    )]
    ColumnCapExceeded { degree: i64, needed: u128, cap: u128 },
}

/// The admissible shifts `(generator index, α)` with `|α| + deg f_i ≤ d`,
/// ordered by generator index, then graded-lex on `α`. This order fixes the
/// rows of the Macaulay matrix and the deterministic membership witness.
pub fn truncated_shifts<K: ExactField>(
    f: &SystemProfile<K>,
    d: i64,
) -> Vec<(usize, Exponent)> {
    let n = f.nvars();
    let mut out = Vec::new();
    for i in 0..n {
        for alpha in monomials_up_to(n, d - f.deg(i)) {
            out.push((i, alpha));
        }
    }
    out
}

/// The shifted generators `x^α·f_i` spanning the truncated piece at degree
/// `d`, in [`truncated_shifts`] order. Empty when `d` is below every
/// generator degree.
pub fn truncated_generators<K: ExactField>(f: &SystemProfile<K>, d: i64) -> Vec<Poly<K>> {
    truncated_shifts(f, d)
        .into_iter()
        .map(|(i, alpha)| f.poly(i).mul_monomial(&alpha, &K::one()))
        .collect()
}

/// The coefficient matrix of the shifted generators: rows in
/// [`truncated_shifts`] order, columns the monomials of degree ≤ d in
/// ascending graded-lex order.
pub struct MacaulayMatrix<K: ExactField> {
    system: SystemProfile<K>,
    d: i64,
    shifts: Vec<(usize, Exponent)>,
    rows: Vec<Poly<K>>,
    cols: Vec<Exponent>,
}

impl<K: ExactField> MacaulayMatrix<K> {
    pub fn build(f: &SystemProfile<K>, d: i64) -> Result<Self, IdealError> {
        Self::build_with_cap(f, d, DEFAULT_COLUMN_CAP)
    }

    pub fn build_with_cap(
        f: &SystemProfile<K>,
        d: i64,
        cap: u128,
    ) -> Result<Self, IdealError> {
        let needed = monomial_count(f.nvars(), d);
        if needed > cap {
            return Err(IdealError::ColumnCapExceeded {
                degree: d,
                needed,
                cap,
            });
        }
        let shifts = truncated_shifts(f, d);
        let rows = shifts
            .iter()
            .map(|(i, alpha)| f.poly(*i).mul_monomial(alpha, &K::one()))
            .collect();
        Ok(MacaulayMatrix {
            system: f.clone(),
            d,
            shifts,
            rows,
            cols: monomials_up_to(f.nvars(), d),
        })
    }

    pub fn system(&self) -> &SystemProfile<K> {
        &self.system
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shifts(&self) -> &[(usize, Exponent)] {
        &self.shifts
    }

    pub fn rows(&self) -> &[Poly<K>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Exponent] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> K {
        self.rows[row].coeff(&self.cols[col])
    }

    /// Rank of the row space, by exact elimination.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(false);
        for row in &self.rows {
            ech.insert(row.clone().into_terms());
        }
        ech.rank()
    }
}

/// An exact certificate that `F = Σ_i g^i·f_i` with per-term degree bounds:
/// the coefficient of `x^α` in `g^i` is stored under `(i, α)`, and every
/// stored pair satisfied the admissibility bound of the query that produced
/// the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness<K: ExactField> {
    combiners: BTreeMap<(usize, Exponent), K>,
}

impl<K: ExactField> MembershipWitness<K> {
    pub fn empty() -> Self {
        MembershipWitness {
            combiners: BTreeMap::new(),
        }
    }

    pub fn from_combiners(combiners: BTreeMap<(usize, Exponent), K>) -> Self {
        MembershipWitness { combiners }
    }

    pub fn combiners(&self) -> &BTreeMap<(usize, Exponent), K> {
        &self.combiners
    }

    pub fn is_empty(&self) -> bool {
        self.combiners.is_empty()
    }

    /// The covector `g = (g^1, …, g^m)` over the given generator count.
    pub fn covector(&self, ngens: usize, nvars: usize) -> Vec<Poly<K>> {
        let mut out = vec![Poly::zero(nvars); ngens];
        for ((i, alpha), c) in &self.combiners {
            out[*i].add_term(alpha.clone(), c.clone());
        }
        out
    }

    /// `Σ_i g^i·gens_i`, which must reproduce the queried polynomial.
    pub fn reconstruct(&self, gens: &[Poly<K>]) -> Poly<K> {
        let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
        let mut acc = Poly::zero(nvars);
        for ((i, alpha), c) in &self.combiners {
            acc = acc.add_poly(&gens[*i].mul_monomial(alpha, c));
        }
        acc
    }
}

/// Solves `target ∈ span{x^α·gens_i : |α| ≤ shift_budget(i)}` over the
/// target's variable set. Returns the deterministic witness induced by
/// inserting shifts in (generator, graded-lex) order with first-nonzero
/// pivoting, or `None` when the target is outside the span.
pub fn span_membership<K: ExactField>(
    target: &Poly<K>,
    gens: &[Poly<K>],
    shift_budget: impl Fn(usize) -> i64,
) -> Option<MembershipWitness<K>> {
    let nvars = target.nvars();
    let mut tags: Vec<(usize, Exponent)> = Vec::new();
    let mut ech = Echelon::new(true);
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.nvars(), nvars, "generator variable count mismatch");
        for alpha in monomials_up_to(nvars, shift_budget(i)) {
            tags.push((i, alpha.clone()));
            ech.insert(g.mul_monomial(&alpha, &K::one()).into_terms());
        }
    }
    let combo = ech.solve(&target.clone().into_terms())?;
    let combiners = combo
        .into_iter()
        .map(|(idx, c)| (tags[idx].clone(), c))
        .collect();
    Some(MembershipWitness { combiners })
}

/// Membership of `F` in the truncated piece at degree `d`, with an exact
/// reconstruction witness. `deg F ≤ d` is a precondition; at `d < 0` the
/// piece is the zero space, so only `F = 0` passes it.
pub fn membership<K: ExactField>(
    target: &Poly<K>,
    f: &SystemProfile<K>,
    d: i64,
) -> Result<Option<MembershipWitness<K>>, IdealError> {
    assert_eq!(target.nvars(), f.nvars(), "polynomial and system disagree on n");
    if target.degree() > d {
        return Err(IdealError::DegreeAboveBudget {
            degree: target.degree(),
            budget: d,
        });
    }
    Ok(span_membership(target, f.polys(), |i| d - f.deg(i)))
}

/// Finds a shifted generator the functional fails to kill at degree `d`, if
/// any. `None` means `L` annihilates the whole truncated piece.
pub fn find_violated_generator<K: ExactField>(
    l: &Functional<K>,
    f: &SystemProfile<K>,
    d: i64,
) -> Result<Option<(usize, Exponent)>, IdealError> {
    assert_eq!(l.nvars(), f.nvars(), "functional and system disagree on n");
    if d > l.bound() {
        return Err(IdealError::BoundTooSmall {
            degree: d,
            bound: l.bound(),
        });
    }
    for (i, alpha) in truncated_shifts(f, d) {
        let gen = f.poly(i).mul_monomial(&alpha, &K::one());
        let v = l
            .apply(&gen)
            .expect("generator degree ≤ d ≤ bound by construction");
        if !v.is_zero() {
            return Ok(Some((i, alpha)));
        }
    }
    Ok(None)
}

/// Whether `L` kills every shifted generator at degree `d` — the brute-force
/// annihilation oracle every higher-level construction is checked against.
pub fn annihilates<K: ExactField>(
    l: &Functional<K>,
    f: &SystemProfile<K>,
    d: i64,
) -> Result<bool, IdealError> {
    Ok(find_violated_generator(l, f, d)?.is_none())
}

/// A basis of the space of bounded root functionals: the annihilator of the
/// truncated piece at degree `D` inside the dual of `R[x^{≤D}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedRootBasis<K: ExactField> {
    system: SystemProfile<K>,
    degree: i64,
    basis: Vec<Functional<K>>,
}

impl<K: ExactField> BoundedRootBasis<K> {
    pub fn system(&self) -> &SystemProfile<K> {
        &self.system
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Functional<K>] {
        &self.basis
    }

    /// Whether `l` lies in the span of the basis (its restriction-free
    /// coefficient table does).
    pub fn spans(&self, l: &Functional<K>) -> bool {
        let mut ech = Echelon::new(false);
        for b in &self.basis {
            ech.insert(b.coeffs().map(|(e, v)| (e.clone(), v.clone())).collect());
        }
        ech.is_in_span(&l.coeffs().map(|(e, v)| (e.clone(), v.clone())).collect())
    }
}

impl BoundedRootBasis<Rat> {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "nvars": self.system.nvars(),
            "system": self.system.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "degree": self.degree,
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(|l| l.to_json_value()).collect::<Vec<_>>(),
        })
    }
}

/// Computes the annihilator basis at degree `D ≥ 0` under the default column
/// cap.
pub fn root_functional_basis<K: ExactField>(
    f: &SystemProfile<K>,
    degree: i64,
) -> Result<BoundedRootBasis<K>, IdealError> {
    root_functional_basis_with_cap(f, degree, DEFAULT_COLUMN_CAP)
}

/// As [`root_functional_basis`], refusing degrees whose monomial count
/// exceeds `cap`.
pub fn root_functional_basis_with_cap<K: ExactField>(
    f: &SystemProfile<K>,
    degree: i64,
    cap: u128,
) -> Result<BoundedRootBasis<K>, IdealError> {
    assert!(degree >= 0, "annihilator degree must be nonnegative");
    let needed = monomial_count(f.nvars(), degree);
    if needed > cap {
        return Err(IdealError::ColumnCapExceeded {
            degree,
            needed,
            cap,
        });
    }
    let mut ech = Echelon::new(false);
    for gen in truncated_generators(f, degree) {
        ech.insert(gen.into_terms());
    }
    let cols = monomials_up_to(f.nvars(), degree);
    let basis = ech
        .kernel_basis(&cols)
        .into_iter()
        .map(|coeffs| Functional::from_coeffs(f.nvars(), degree, coeffs))
        .collect();
    Ok(BoundedRootBasis {
        system: f.clone(),
        degree,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::eval_functional;
    use crate::ring::field::rat;
    use crate::ring::parse::{poly_parse, system_parse};

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn sys(text: &str) -> SystemProfile<Rat> {
        system_parse(text).unwrap()
    }

    #[test]
    fn shifted_generators_of_a_single_square() {
        let f = sys("x1^2");
        let gens = truncated_generators(&f, 3);
        assert_eq!(
            gens,
            vec![poly_parse("x1^2", 1).unwrap(), poly_parse("x1^3", 1).unwrap()]
        );
        assert!(truncated_generators(&f, -1).is_empty());
        assert!(truncated_generators(&f, 1).is_empty());
    }

    #[test]
    fn shifted_generators_with_no_room() {
        let f = sys("x1^2\nx2^2");
        let gens = truncated_generators(&f, 2);
        assert_eq!(
            gens,
            vec![
                poly_parse("x1^2", 2).unwrap(),
                poly_parse("x2^2", 2).unwrap()
            ]
        );
    }

    #[test]
    fn macaulay_shape_and_entries() {
        let f = sys("x1^2\nx2^2");
        let m = MacaulayMatrix::build(&f, 3).unwrap();
        assert_eq!(m.ncols(), 10);
        assert_eq!(m.nrows(), 6); // each f_i shifted by 1, x1, x2
        assert_eq!(m.rank(), 6);
        // Row 0 is x1^2 itself: a single 1 in the x1^2 column.
        let col = m.cols().iter().position(|c| *c == e(&[2, 0])).unwrap();
        assert_eq!(m.entry(0, col), rat(1, 1));
    }

    #[test]
    fn membership_in_powers() {
        let f = sys("x1^2");
        let w = membership(&poly_parse("x1^3", 1).unwrap(), &f, 3)
            .unwrap()
            .unwrap();
        let g = w.covector(1, 1);
        assert_eq!(g[0], poly_parse("x1", 1).unwrap());
        assert_eq!(w.reconstruct(f.polys()), poly_parse("x1^3", 1).unwrap());

        assert!(membership(&poly_parse("x1", 1).unwrap(), &f, 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn membership_witness_is_the_known_one() {
        let f = sys("x1^2\nx2^2");
        let target = poly_parse("x1^2*x2 + x2^3", 2).unwrap();
        let w = membership(&target, &f, 3).unwrap().unwrap();
        let g = w.covector(2, 2);
        assert_eq!(g[0], poly_parse("x2", 2).unwrap());
        assert_eq!(g[1], poly_parse("x2", 2).unwrap());
        assert_eq!(w.reconstruct(f.polys()), target);
    }

    #[test]
    fn membership_respects_budget() {
        let f = sys("x1^2");
        let target = poly_parse("x1^3", 1).unwrap();
        assert_eq!(
            membership(&target, &f, 2),
            Err(IdealError::DegreeAboveBudget {
                degree: Degree::Finite(3),
                budget: 2
            })
        );
        // Zero is in the zero space at negative degree; nothing else can ask.
        let w = membership(&Poly::zero(1), &f, -1).unwrap().unwrap();
        assert!(w.is_empty());
        assert!(matches!(
            membership(&poly_parse("1", 1).unwrap(), &f, -1),
            Err(IdealError::DegreeAboveBudget { .. })
        ));
    }

    #[test]
    fn witness_per_term_degrees_stay_admissible() {
        let f = sys("x1^2 - x2\nx2^2 - 1");
        let d = 4;
        // Build an element of the span with known combiners, then re-derive.
        let target = f.poly(0).mul_monomial(&e(&[1, 0]), &rat(2, 1)).add_poly(
            &f.poly(1).mul_monomial(&e(&[0, 1]), &rat(-1, 3)),
        );
        let w = membership(&target, &f, d).unwrap().unwrap();
        for ((i, alpha), _) in w.combiners() {
            assert!(alpha.total() as i64 + f.deg(*i) <= d);
        }
        assert_eq!(w.reconstruct(f.polys()), target);
    }

    #[test]
    fn annihilation_checks() {
        let f = sys("x1^2 - 1");
        let zero = Functional::<Rat>::zero(1, 2);
        assert_eq!(annihilates(&zero, &f, 2), Ok(true));

        let at1 = eval_functional(&[rat(1, 1)], 2);
        assert_eq!(annihilates(&at1, &f, 2), Ok(true));

        let dual_sq = Functional::<Rat>::dual_monomial(1, 2, e(&[2]));
        let fsq = sys("x1^2");
        assert_eq!(annihilates(&dual_sq, &fsq, 2), Ok(false));
        assert_eq!(
            find_violated_generator(&dual_sq, &fsq, 2),
            Ok(Some((0, e(&[0]))))
        );

        assert_eq!(
            annihilates(&at1, &f, 3),
            Err(IdealError::BoundTooSmall {
                degree: 3,
                bound: 2
            })
        );
    }

    #[test]
    fn annihilator_dimensions() {
        // No generators below degree 2: the full dual of {1, x}.
        let f = sys("x1^2 - 1");
        let b1 = root_functional_basis(&f, 1).unwrap();
        assert_eq!(b1.dimension(), 2);

        let b0 = root_functional_basis(&f, 0).unwrap();
        assert_eq!(b0.dimension(), 1);

        let g = sys("x1^2\nx2^2");
        let b = root_functional_basis(&g, 2).unwrap();
        assert_eq!(b.dimension(), 4);
        // Exactly the duals of 1, x1, x2, x1x2 under the canonical form.
        let expect = [e(&[0, 0]), e(&[0, 1]), e(&[1, 0]), e(&[1, 1])];
        for (l, m) in b.basis().iter().zip(expect) {
            assert_eq!(l, &Functional::dual_monomial(2, 2, m));
        }
    }

    #[test]
    fn annihilator_contains_root_evaluations() {
        let f = sys("x1^2 - 1");
        let b = root_functional_basis(&f, 2).unwrap();
        assert_eq!(b.dimension(), 2);
        for l in b.basis() {
            assert_eq!(annihilates(l, &f, 2), Ok(true));
        }
        let at1 = eval_functional(&[rat(1, 1)], 2);
        let at_neg1 = eval_functional(&[rat(-1, 1)], 2);
        assert!(b.spans(&at1));
        assert!(b.spans(&at_neg1));
        assert!(!b.spans(&Functional::dual_monomial(1, 2, e(&[0]))));
    }

    #[test]
    fn dimension_matches_rank_defect() {
        for (text, d) in [("x1^2 - 1", 2i64), ("x1^2\nx2^2", 3), ("x1^2 - x2\nx2", 2)] {
            let f = sys(text);
            let m = MacaulayMatrix::build(&f, d).unwrap();
            let b = root_functional_basis(&f, d).unwrap();
            assert_eq!(b.dimension() + m.rank(), m.ncols());
            for l in b.basis() {
                assert_eq!(annihilates(l, &f, d), Ok(true));
            }
        }
    }

    #[test]
    fn column_cap_refuses_large_degrees() {
        let f = sys("x1^2 - 1");
        let err = root_functional_basis_with_cap(&f, 100, 50).unwrap_err();
        assert_eq!(
            err,
            IdealError::ColumnCapExceeded {
                degree: 100,
                needed: 101,
                cap: 50
            }
        );
        assert!(matches!(
            MacaulayMatrix::build_with_cap(&f, 100, 50),
            Err(IdealError::ColumnCapExceeded { .. })
        ));
    }

    #[test]
    fn basis_json_shape() {
        let f = sys("x1^2\nx2^2");
        let b = root_functional_basis(&f, 2).unwrap();
        let v = b.to_json_value();
        assert_eq!(v["nvars"], 2);
        assert_eq!(v["degree"], 2);
        assert_eq!(v["dimension"], 4);
        assert_eq!(v["system"][0], "x1^2");
        assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    }
}
