//! The bordered Bezoutian determinant, the extension step, and products of
//! bounded root functionals.
//!
//! For a square system `f` and a target polynomial `F`, the central object is
//! the `(n+1)×(n+1)` determinant
//!
//! ```text
//!     | ∇f_1 … ∇f_n   ∇F   |
//! R = | …              …   |      (rows: component index 1..n)
//!     | f_1(x)…f_n(x) F(x) |
//! ```
//!
//! whose last row may equivalently be written at `y` — both forms produce the
//! same polynomial. Applying a bounded root functional to the `y` block of
//! `R` extends it: the degree drops and truncated-ideal membership is
//! preserved, which is what makes the product of two such functionals
//! well defined on a strictly larger truncated space.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::deriv::{nabla, nabla_swapped, CovectorXY};
use crate::functional::Functional;
use crate::ideal::{find_violated_generator, span_membership, MembershipWitness};
use crate::ring::degree::Degree;
use crate::ring::exponent::{monomials_up_to, Exponent};
use crate::ring::field::ExactField;
use crate::ring::poly::Poly;
use crate::ring::polyxy::PolyXY;
use crate::ring::system::SystemProfile;

/// How to pick the difference derivative of one polynomial.
#[derive(Clone, Debug)]
pub enum DerivChoice<K: ExactField> {
    /// The telescoping formula in variable order.
    Canonical,
    /// The canonical derivative with the variable blocks swapped.
    Swapped,
    /// A caller-supplied covector; validated before use.
    Supplied(CovectorXY<K>),
}

/// Derivative choices for the determinant: one per generator plus one for
/// the target. An empty generator list means canonical everywhere.
#[derive(Clone, Debug)]
pub struct BezoutConfig<K: ExactField> {
    gen_choices: Vec<DerivChoice<K>>,
    target_choice: Option<DerivChoice<K>>,
}

impl<K: ExactField> Default for BezoutConfig<K> {
    fn default() -> Self {
        BezoutConfig {
            gen_choices: Vec::new(),
            target_choice: None,
        }
    }
}

impl<K: ExactField> BezoutConfig<K> {
    pub fn canonical() -> Self {
        BezoutConfig::default()
    }

    pub fn with_target_choice(mut self, choice: DerivChoice<K>) -> Self {
        self.target_choice = Some(choice);
        self
    }

    pub fn with_gen_choices(mut self, choices: Vec<DerivChoice<K>>) -> Self {
        self.gen_choices = choices;
        self
    }

    /// Canonical generator derivatives, swapped target derivative.
    pub fn swapped_target() -> Self {
        BezoutConfig::canonical().with_target_choice(DerivChoice::Swapped)
    }

    /// Swapped derivatives for every generator, canonical target.
    pub fn swapped_gens(n: usize) -> Self {
        BezoutConfig::canonical().with_gen_choices(vec![DerivChoice::Swapped; n])
    }

    fn gen_choice(&self, i: usize) -> &DerivChoice<K> {
        self.gen_choices.get(i).unwrap_or(&DerivChoice::Canonical)
    }

    fn target(&self) -> &DerivChoice<K> {
        self.target_choice.as_ref().unwrap_or(&DerivChoice::Canonical)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BezoutError {
    #[error("{count} derivative choices supplied for {want} generators")]
    WrongChoiceCount { count: usize, want: usize },
    #[error("supplied covector for {what} fails the telescoping identity")]
    InvalidDerivative { what: String },
    #[error("supplied covector for {what} has degree {degree}, above the allowed {allowed}")]
    DerivativeDegreeTooHigh {
        what: String,
        degree: Degree,
        allowed: i64,
    },
    #[error("extension degree {delta} is negative")]
    NegativeDelta { delta: i64 },
    #[error("{who} has bound {bound}, below the required {required}")]
    BoundTooSmall {
        who: &'static str,
        bound: i64,
        required: i64,
    },
    #[error("{who} does not annihilate the degree-{degree} truncated piece: pairs nonzero with {generator}")]
    NotAnnihilating {
        who: &'static str,
        degree: i64,
        generator: String,
    },
    #[error("degree budget {budget} is below the target degree {degree}")]
    BudgetBelowTarget { budget: i64, degree: Degree },
    #[error("determinant has y-degree {degree}, above the functional's bound {bound}; extend the functional first")]
    YDegreeOverflow { degree: Degree, bound: i64 },
}

fn shifted_generator_name(i: usize, alpha: &Exponent) -> String {
    if alpha.is_zero() {
        format!("f{}", i + 1)
    } else {
        format!("{}*f{}", alpha, i + 1)
    }
}

/// Laplace expansion with memoized minors, keyed by the set of still-unused
/// columns. Row `size − popcount(mask)` is expanded next.
fn det_xy<K: ExactField>(m: &[Vec<PolyXY<K>>]) -> PolyXY<K> {
    let size = m.len();
    assert!(size > 0, "empty determinant");
    let n = m[0][0].n();
    let full: u32 = (1 << size) - 1;
    let mut memo: HashMap<u32, PolyXY<K>> = HashMap::new();

    fn rec<K: ExactField>(
        m: &[Vec<PolyXY<K>>],
        size: usize,
        n: usize,
        mask: u32,
        memo: &mut HashMap<u32, PolyXY<K>>,
    ) -> PolyXY<K> {
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let row = size - mask.count_ones() as usize;
        let mut acc = PolyXY::zero(n);
        let mut pos = 0usize;
        for col in 0..size {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let sub = rec(m, size, n, mask & !(1 << col), memo);
                let term = entry.mul(&sub);
                acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    // Trivial base: the empty minor is 1.
    memo.insert(0, PolyXY::constant(n, K::one()));
    rec(m, size, n, full, &mut memo)
}

fn resolve_generator_cov<K: ExactField>(
    f_i: &Poly<K>,
    choice: &DerivChoice<K>,
    index: usize,
) -> Result<CovectorXY<K>, BezoutError> {
    match choice {
        DerivChoice::Canonical => Ok(nabla(f_i)),
        DerivChoice::Swapped => Ok(nabla_swapped(&nabla(f_i))),
        DerivChoice::Supplied(cov) => {
            let what = format!("f{}", index + 1);
            if !cov.is_derivative_of(f_i) {
                return Err(BezoutError::InvalidDerivative { what });
            }
            if !cov.is_monotonous_for(f_i) {
                let allowed = f_i.degree().shifted(-1).finite().unwrap_or(-1);
                return Err(BezoutError::DerivativeDegreeTooHigh {
                    what,
                    degree: cov.max_degree(),
                    allowed,
                });
            }
            Ok(cov.clone())
        }
    }
}

fn resolve_target_cov<K: ExactField>(
    target: &Poly<K>,
    choice: &DerivChoice<K>,
    budget: i64,
) -> Result<CovectorXY<K>, BezoutError> {
    match choice {
        DerivChoice::Canonical => Ok(nabla(target)),
        DerivChoice::Swapped => Ok(nabla_swapped(&nabla(target))),
        DerivChoice::Supplied(cov) => {
            let what = "the target".to_string();
            if !cov.is_derivative_of(target) {
                return Err(BezoutError::InvalidDerivative { what });
            }
            // Monotonicity may be relaxed to the budget: components of degree
            // ≤ budget − 1 are acceptable even when deg F < budget.
            if cov.max_degree() > budget - 1 {
                return Err(BezoutError::DerivativeDegreeTooHigh {
                    what,
                    degree: cov.max_degree(),
                    allowed: budget - 1,
                });
            }
            Ok(cov.clone())
        }
    }
}

/// The target-independent part of the determinant: signed minors along the
/// last column, precomputed once per system and derivative configuration.
///
/// Writing cofactor expansion along the last column, both forms become
///
/// ```text
/// R(x,y) = Σ_k comp_minor[k]·∇^{k+1}F + last_minor·F(x or y)
/// ```
///
/// with every minor free of `F`, so one kernel serves any number of targets.
pub struct ExtensionKernel<K: ExactField> {
    n: usize,
    delta_f: i64,
    /// Signed minors multiplying ∇^{k+1}F in the `(f(x), F(x))` form.
    comp_minors_x: Vec<PolyXY<K>>,
    /// Signed minor multiplying F(x) in that form.
    last_minor_x: PolyXY<K>,
    comp_minors_y: Vec<PolyXY<K>>,
    last_minor_y: PolyXY<K>,
}

impl<K: ExactField> ExtensionKernel<K> {
    pub fn new(f: &SystemProfile<K>, cfg: &BezoutConfig<K>) -> Result<Self, BezoutError> {
        let n = f.nvars();
        if !cfg.gen_choices.is_empty() && cfg.gen_choices.len() != n {
            return Err(BezoutError::WrongChoiceCount {
                count: cfg.gen_choices.len(),
                want: n,
            });
        }
        let mut gen_covs = Vec::with_capacity(n);
        for j in 0..n {
            gen_covs.push(resolve_generator_cov(f.poly(j), cfg.gen_choice(j), j)?);
        }
        // First n columns of the bordered matrix, under each last-row form.
        let build = |last_row: Vec<PolyXY<K>>| -> Vec<Vec<PolyXY<K>>> {
            let mut rows: Vec<Vec<PolyXY<K>>> = (0..n)
                .map(|k| (0..n).map(|j| gen_covs[j].comp(k).clone()).collect())
                .collect();
            rows.push(last_row);
            rows
        };
        let last_x: Vec<PolyXY<K>> = (0..n).map(|j| PolyXY::embed_x(f.poly(j))).collect();
        let last_y: Vec<PolyXY<K>> = (0..n).map(|j| PolyXY::embed_y(f.poly(j))).collect();
        let cols_x = build(last_x);
        let cols_y = build(last_y);

        let signed_minor = |rows: &[Vec<PolyXY<K>>], skip: usize| -> PolyXY<K> {
            let sub: Vec<Vec<PolyXY<K>>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != skip)
                .map(|(_, row)| row.clone())
                .collect();
            let d = det_xy(&sub);
            // Cofactor sign along the last column: (−1)^{skip + n}.
            if (skip + n) % 2 == 0 {
                d
            } else {
                d.neg()
            }
        };

        let comp_minors_x = (0..n).map(|k| signed_minor(&cols_x, k)).collect();
        let last_minor_x = signed_minor(&cols_x, n);
        let comp_minors_y = (0..n).map(|k| signed_minor(&cols_y, k)).collect();
        let last_minor_y = signed_minor(&cols_y, n);
        Ok(ExtensionKernel {
            n,
            delta_f: f.delta_f(),
            comp_minors_x,
            last_minor_x,
            comp_minors_y,
            last_minor_y,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_f(&self) -> i64 {
        self.delta_f
    }

    /// The `(f(x), F(x))`-row determinant for a target with its resolved
    /// derivative.
    pub fn bezout(&self, target: &Poly<K>, cov: &CovectorXY<K>) -> PolyXY<K> {
        self.combine(target, cov, true)
    }

    /// Both last-row forms, `(x-form, y-form)`. They agree for every valid
    /// derivative choice; computing the pair exists for exactly that check.
    pub fn bezout_forms(&self, target: &Poly<K>, cov: &CovectorXY<K>) -> (PolyXY<K>, PolyXY<K>) {
        (
            self.combine(target, cov, true),
            self.combine(target, cov, false),
        )
    }

    fn combine(&self, target: &Poly<K>, cov: &CovectorXY<K>, x_form: bool) -> PolyXY<K> {
        assert_eq!(target.nvars(), self.n, "target disagrees on variable count");
        assert_eq!(cov.n(), self.n, "covector disagrees on variable count");
        let (minors, last) = if x_form {
            (&self.comp_minors_x, &self.last_minor_x)
        } else {
            (&self.comp_minors_y, &self.last_minor_y)
        };
        let mut acc = if x_form {
            last.mul(&PolyXY::embed_x(target))
        } else {
            last.mul(&PolyXY::embed_y(target))
        };
        for k in 0..self.n {
            acc = acc.add(&minors[k].mul(cov.comp(k)));
        }
        acc
    }
}

/// The bordered determinant at the default degree budget `d = deg F`.
pub fn bezout_poly<K: ExactField>(
    f: &SystemProfile<K>,
    target: &Poly<K>,
    cfg: &BezoutConfig<K>,
) -> Result<PolyXY<K>, BezoutError> {
    let d = target.degree().finite().unwrap_or(0);
    bezout_poly_with_budget(f, target, cfg, d)
}

/// The bordered determinant with an explicit degree budget `d ≥ deg F`. Both
/// last-row forms are computed and compared; the common value is returned.
pub fn bezout_poly_with_budget<K: ExactField>(
    f: &SystemProfile<K>,
    target: &Poly<K>,
    cfg: &BezoutConfig<K>,
    d: i64,
) -> Result<PolyXY<K>, BezoutError> {
    let (rx, ry) = bezout_poly_forms(f, target, cfg, d)?;
    assert!(
        rx == ry,
        "the two last-row forms of the determinant disagree"
    );
    Ok(rx)
}

/// Both last-row forms of the determinant, for callers that want to observe
/// the form identity rather than assume it.
pub fn bezout_poly_forms<K: ExactField>(
    f: &SystemProfile<K>,
    target: &Poly<K>,
    cfg: &BezoutConfig<K>,
    d: i64,
) -> Result<(PolyXY<K>, PolyXY<K>), BezoutError> {
    assert_eq!(target.nvars(), f.nvars(), "target and system disagree on n");
    if target.degree() > d {
        return Err(BezoutError::BudgetBelowTarget {
            budget: d,
            degree: target.degree(),
        });
    }
    let kernel = ExtensionKernel::new(f, cfg)?;
    let cov = resolve_target_cov(target, cfg.target(), d)?;
    Ok(kernel.bezout_forms(target, &cov))
}

/// One extension step at the default budget `d = deg F`.
pub fn extend_step<K: ExactField>(
    l: &Functional<K>,
    delta: i64,
    f: &SystemProfile<K>,
    target: &Poly<K>,
    cfg: &BezoutConfig<K>,
) -> Result<Poly<K>, BezoutError> {
    let d = target.degree().finite().unwrap_or(0);
    extend_step_with_budget(l, delta, f, target, cfg, d)
}

/// Applies `L` to the `y` block of the determinant: `H = L(y).R(x, y)`.
///
/// Requires `delta ≥ 0`, `L.bound ≥ δ_f + delta`, `L` annihilating the
/// truncated piece at `δ_f + delta`, and `deg F ≤ d`. The determinant's
/// `y`-degree must fit under `L.bound`; zero-extending `L` first is always
/// legitimate (the result does not depend on values beyond `δ_f + delta`).
///
/// The result satisfies `deg H ≤ max(δ_f, d − delta − 1)`, and membership of
/// `F` in the truncated piece at `d` propagates to membership of `H` at
/// `d − delta − 1`.
pub fn extend_step_with_budget<K: ExactField>(
    l: &Functional<K>,
    delta: i64,
    f: &SystemProfile<K>,
    target: &Poly<K>,
    cfg: &BezoutConfig<K>,
    d: i64,
) -> Result<Poly<K>, BezoutError> {
    let kernel = ExtensionKernel::new(f, cfg)?;
    check_functional(l, delta, f, "the functional")?;
    if target.degree() > d {
        return Err(BezoutError::BudgetBelowTarget {
            budget: d,
            degree: target.degree(),
        });
    }
    let cov = resolve_target_cov(target, cfg.target(), d)?;
    let r = kernel.bezout(target, &cov);
    apply_in_y_checked(l, &r)
}

fn check_functional<K: ExactField>(
    l: &Functional<K>,
    delta: i64,
    f: &SystemProfile<K>,
    who: &'static str,
) -> Result<(), BezoutError> {
    if delta < 0 {
        return Err(BezoutError::NegativeDelta { delta });
    }
    let required = f.delta_f() + delta;
    if l.bound() < required {
        return Err(BezoutError::BoundTooSmall {
            who,
            bound: l.bound(),
            required,
        });
    }
    if let Some((i, alpha)) = find_violated_generator(l, f, required)
        .expect("annihilation degree fits the bound (checked above)")
    {
        return Err(BezoutError::NotAnnihilating {
            who,
            degree: required,
            generator: shifted_generator_name(i, &alpha),
        });
    }
    Ok(())
}

fn apply_in_y_checked<K: ExactField>(
    l: &Functional<K>,
    r: &PolyXY<K>,
) -> Result<Poly<K>, BezoutError> {
    if r.deg_y() > l.bound() {
        return Err(BezoutError::YDegreeOverflow {
            degree: r.deg_y(),
            bound: l.bound(),
        });
    }
    Ok(l
        .apply_in_y(r)
        .expect("y-degree is within the bound (checked above)"))
}

/// The product of two bounded root functionals, materialized on the monomial
/// basis of `R[x^{≤D'}]` with `D' = δ_f + delta1 + delta2 + 1`:
/// `L.x^γ = L1.(extension of x^γ through L2)`, each monomial extended at the
/// uniform budget `D'`.
///
/// The result annihilates the truncated piece at `D'` and is independent of
/// the derivative choices and of either input's values beyond its required
/// bound `δ_f + delta_i`.
pub fn product_functional<K: ExactField>(
    l1: &Functional<K>,
    delta1: i64,
    l2: &Functional<K>,
    delta2: i64,
    f: &SystemProfile<K>,
) -> Result<Functional<K>, BezoutError> {
    product_functional_with_cfg(l1, delta1, l2, delta2, f, &BezoutConfig::canonical())
}

/// Terms of the canonical k-th difference derivative of the monomial
/// `x^gamma`, as `(x-part, y-part)` pairs with coefficient 1: the prefix of
/// `gamma` moves to the `y` block, the suffix stays in `x`, and the k-th
/// entry telescopes. `swap` exchanges the blocks.
fn monomial_derivative_terms(gamma: &Exponent, k: usize, swap: bool) -> Vec<(Exponent, Exponent)> {
    let n = gamma.nvars();
    let gk = gamma.get(k);
    let mut out = Vec::with_capacity(gk as usize);
    for j in 0..gk {
        let mut a = vec![0u32; n];
        let mut b = vec![0u32; n];
        for t in 0..k {
            b[t] = gamma.get(t);
        }
        a[k] = j;
        b[k] = gk - 1 - j;
        for t in k + 1..n {
            a[t] = gamma.get(t);
        }
        if swap {
            out.push((Exponent::new(b), Exponent::new(a)));
        } else {
            out.push((Exponent::new(a), Exponent::new(b)));
        }
    }
    out
}

/// `L` contracted against the `y` block of `y^shift · m`, where `m` is given
/// by its `y`-sections: `Σ_e L[e + shift] · m_e(x)`.
fn contract_sections<K: ExactField>(
    sections: &[(Exponent, Poly<K>)],
    l: &Functional<K>,
    shift: &Exponent,
) -> Poly<K> {
    let mut acc = Poly::zero(l.nvars());
    for (e, m) in sections {
        let total = e.add(shift);
        debug_assert!(
            (total.total() as i64) <= l.bound(),
            "contraction reads past the functional's bound"
        );
        let c = l.coeff(&total);
        if !c.is_zero() {
            acc = acc.add_poly(&m.scale(&c));
        }
    }
    acc
}

/// As [`product_functional`] with explicit derivative choices. Per-monomial
/// targets rule out a single supplied target covector, so the target choice
/// must be canonical or swapped.
pub fn product_functional_with_cfg<K: ExactField>(
    l1: &Functional<K>,
    delta1: i64,
    l2: &Functional<K>,
    delta2: i64,
    f: &SystemProfile<K>,
    cfg: &BezoutConfig<K>,
) -> Result<Functional<K>, BezoutError> {
    assert!(
        !matches!(cfg.target(), DerivChoice::Supplied(_)),
        "a supplied target covector cannot serve every monomial"
    );
    let kernel = ExtensionKernel::new(f, cfg)?;
    check_functional(l1, delta1, f, "the first functional")?;
    check_functional(l2, delta2, f, "the second functional")?;
    let n = f.nvars();
    let d_out = f.delta_f() + delta1 + delta2 + 1;
    // The determinant's total degree stays within δ_f + D', so this zero
    // extension makes every application below well defined; values beyond
    // δ_f + delta2 never influence the result.
    let needed = f.delta_f() + d_out;
    let l2x = if l2.bound() >= needed {
        l2.clone()
    } else {
        l2.extend_zero(needed)
    };
    let swap = matches!(cfg.target(), DerivChoice::Swapped);

    // For a monomial target the determinant splits along its last column
    // into minors times derivative terms, so L2 can be folded into each
    // minor's y-sections up front; only the residual y-shift of each
    // derivative term varies, and those repeat heavily across monomials.
    let comp_sections: Vec<Vec<(Exponent, Poly<K>)>> = kernel
        .comp_minors_x
        .iter()
        .map(|m| m.y_sections())
        .collect();
    let contracted_last =
        contract_sections(&kernel.last_minor_x.y_sections(), &l2x, &Exponent::zero(n));
    let mut combos: BTreeMap<(usize, Exponent), Poly<K>> = BTreeMap::new();

    let mut coeffs = Vec::new();
    for gamma in monomials_up_to(n, d_out) {
        let mut h = contracted_last.mul_monomial(&gamma, &K::one());
        for k in 0..n {
            for (a, b) in monomial_derivative_terms(&gamma, k, swap) {
                let combo = combos
                    .entry((k, b.clone()))
                    .or_insert_with(|| contract_sections(&comp_sections[k], &l2x, &b));
                h = h.add_poly(&combo.mul_monomial(&a, &K::one()));
            }
        }
        let value = l1
            .apply(&h)
            .expect("deg H ≤ δ_f + delta1 ≤ L1.bound for valid inputs");
        coeffs.push((gamma, value));
    }
    Ok(Functional::from_coeffs(n, d_out, coeffs))
}

/// The first monomial where the two product orders disagree, with both
/// values. Always `None` when the implementation is correct.
pub fn commutativity_counterexample<K: ExactField>(
    l1: &Functional<K>,
    delta1: i64,
    l2: &Functional<K>,
    delta2: i64,
    f: &SystemProfile<K>,
) -> Result<Option<(Exponent, K, K)>, BezoutError> {
    let p12 = product_functional(l1, delta1, l2, delta2, f)?;
    let p21 = product_functional(l2, delta2, l1, delta1, f)?;
    for gamma in monomials_up_to(f.nvars(), p12.bound()) {
        let a = p12.coeff(&gamma);
        let b = p21.coeff(&gamma);
        if a != b {
            return Ok(Some((gamma, a, b)));
        }
    }
    Ok(None)
}

/// Whether the two product orders give the same functional on the common
/// bound `δ_f + delta1 + delta2 + 1`.
pub fn verify_commutativity<K: ExactField>(
    l1: &Functional<K>,
    delta1: i64,
    l2: &Functional<K>,
    delta2: i64,
    f: &SystemProfile<K>,
) -> Result<bool, BezoutError> {
    Ok(commutativity_counterexample(l1, delta1, l2, delta2, f)?.is_none())
}

/// The antisymmetric pair products `f_i(x)f_j(y) − f_i(y)f_j(x)` for
/// `i < j`, in index order — the ambiguity directions of the determinant
/// under a change of target derivative.
pub fn pair_skew_generators<K: ExactField>(f: &SystemProfile<K>) -> Vec<PolyXY<K>> {
    let n = f.nvars();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let a = PolyXY::embed_x(f.poly(i)).mul(&PolyXY::embed_y(f.poly(j)));
            let b = PolyXY::embed_y(f.poly(i)).mul(&PolyXY::embed_x(f.poly(j)));
            out.push(a.sub(&b));
        }
    }
    out
}

/// The mixed products `f_i(x)F(y) − f_i(y)F(x)` — the extra ambiguity
/// directions under a change of generator derivatives.
pub fn target_skew_generators<K: ExactField>(
    f: &SystemProfile<K>,
    target: &Poly<K>,
) -> Vec<PolyXY<K>> {
    let n = f.nvars();
    (0..n)
        .map(|i| {
            PolyXY::embed_x(f.poly(i))
                .mul(&PolyXY::embed_y(target))
                .sub(&PolyXY::embed_y(f.poly(i)).mul(&PolyXY::embed_x(target)))
        })
        .collect()
}

/// Certifies that a difference of two determinants (two target-derivative
/// choices) lies in the span of the shifted pair products, with per-pair
/// shift budgets `δ_f + d − deg f_i − deg f_j`. Generator indices in the
/// witness follow [`pair_skew_generators`] order.
pub fn target_choice_discrepancy_witness<K: ExactField>(
    f: &SystemProfile<K>,
    d: i64,
    diff: &PolyXY<K>,
) -> Option<MembershipWitness<K>> {
    let n = f.nvars();
    let gens: Vec<Poly<K>> = pair_skew_generators(f)
        .into_iter()
        .map(|g| g.inner().clone())
        .collect();
    let mut budgets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            budgets.push(f.delta_f() + d - f.deg(i) - f.deg(j));
        }
    }
    span_membership(diff.inner(), &gens, |p| budgets[p])
}

/// Certifies a difference coming from a change of generator derivatives: the
/// pair products as above plus the mixed products with shift budgets
/// `δ_f − deg f_i`. Witness indices: pairs first, then the mixed family.
pub fn generator_choice_discrepancy_witness<K: ExactField>(
    f: &SystemProfile<K>,
    target: &Poly<K>,
    d: i64,
    diff: &PolyXY<K>,
) -> Option<MembershipWitness<K>> {
    let n = f.nvars();
    let mut gens: Vec<Poly<K>> = pair_skew_generators(f)
        .into_iter()
        .map(|g| g.inner().clone())
        .collect();
    let mut budgets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            budgets.push(f.delta_f() + d - f.deg(i) - f.deg(j));
        }
    }
    for g in target_skew_generators(f, target) {
        gens.push(g.inner().clone());
        budgets.push(0); // placeholder, fixed below
    }
    let npairs = n * (n - 1) / 2;
    for i in 0..n {
        budgets[npairs + i] = f.delta_f() - f.deg(i);
    }
    span_membership(diff.inner(), &gens, |p| budgets[p])
}
