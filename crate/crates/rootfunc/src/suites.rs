//! Seeded randomized verification suites with machine-readable reports.
//!
//! Every suite draws its cases from a `ChaCha8` stream keyed by `(seed,
//! case index)`, so a report is reproducible from its `seed` alone and
//! independent of how many cases ran before a given index. Reports carry the
//! first counterexample in serialized form; reruns with the same options
//! produce byte-identical JSON apart from `duration_ms`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bezout::{
    bezout_poly_forms, commutativity_counterexample, extend_step_with_budget,
    pair_skew_generators, product_functional, target_choice_discrepancy_witness, BezoutConfig,
};
use crate::deriv::{decompose_difference, nabla, nabla_swapped, CovectorXY};
use crate::functional::{functional_lincomb, Functional};
use crate::ideal::{
    find_violated_generator, membership, root_functional_basis_with_cap, truncated_shifts,
    BoundedRootBasis, DEFAULT_COLUMN_CAP,
};
use crate::ring::exponent::{monomials_up_to, Exponent};
use crate::ring::field::{rat, Rat};
use crate::ring::poly::Poly;
use crate::ring::polyxy::PolyXY;
use crate::ring::system::SystemProfile;

/// Options shared by all suites. `corrupt_derivatives` sabotages each case's
/// data before the checks run; it exists to prove the harness actually fails
/// and reports counterexamples, and is deliberately not reachable from the
/// command line.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cases: usize,
    pub nmax: usize,
    pub degmax: i64,
    pub corrupt_derivatives: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            cases: 25,
            nmax: 3,
            degmax: 3,
            corrupt_derivatives: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case_index: usize,
    pub check: String,
    pub inputs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
    pub duration_ms: u64,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json_string(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serialization")
        } else {
            serde_json::to_string(self).expect("report serialization")
        }
    }
}

type CaseFailure = (String, BTreeMap<String, String>);

fn run_cases(
    suite: &str,
    opts: &SuiteOptions,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), CaseFailure>,
) -> RunReport {
    let start = Instant::now();
    let mut passed = 0;
    let mut failed = 0;
    let mut first = None;
    for index in 0..opts.cases {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(index as u64);
        match case(&mut rng) {
            Ok(()) => passed += 1,
            Err((check, inputs)) => {
                failed += 1;
                if first.is_none() {
                    first = Some(Counterexample {
                        case_index: index,
                        check,
                        inputs,
                    });
                }
            }
        }
    }
    RunReport {
        command: format!(
            "verify {suite} --seed {} --cases {} --nmax {} --degmax {}",
            opts.seed, opts.cases, opts.nmax, opts.degmax
        ),
        suite: suite.to_string(),
        seed: opts.seed,
        cases: opts.cases,
        passed,
        failed,
        first_counterexample: first,
        duration_ms: start.elapsed().as_millis() as u64,
    }
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p = rng.gen_range(-5i64..=5);
    let q = rng.gen_range(1i64..=3);
    rat(p, q)
}

fn rand_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p = rng.gen_range(1i64..=5);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let q = rng.gen_range(1i64..=3);
    rat(sign * p, q)
}

/// A random polynomial of exact total degree `d`: one forced term of degree
/// `d`, every other monomial present with probability one half.
fn rand_poly(rng: &mut ChaCha8Rng, n: usize, d: i64) -> Poly<Rat> {
    let all = monomials_up_to(n, d);
    let top: Vec<&Exponent> = all.iter().filter(|e| i64::from(e.total()) == d).collect();
    let lead = top[rng.gen_range(0..top.len())].clone();
    let mut poly = Poly::monomial(n, lead.clone(), rand_nonzero_rat(rng));
    for exp in all {
        if exp == lead {
            continue;
        }
        if rng.gen_bool(0.5) {
            let c = rand_rat(rng);
            if !c.is_zero() {
                poly = poly.add_poly(&Poly::monomial(n, exp, c));
            }
        }
    }
    poly
}

fn rand_system(rng: &mut ChaCha8Rng, nmin: usize, opts: &SuiteOptions) -> SystemProfile<Rat> {
    let n = rng.gen_range(nmin..=opts.nmax.max(nmin));
    let polys = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=opts.degmax.max(1));
            rand_poly(rng, n, d)
        })
        .collect();
    SystemProfile::new(polys).expect("generated systems are square with degrees >= 1")
}

/// Draws a system together with annihilator bases at the given offsets,
/// redrawing when a basis is trivial or the shift table would blow the
/// column cap. Offsets are small, so a usable draw arrives quickly.
fn rand_system_with_bases(
    rng: &mut ChaCha8Rng,
    opts: &SuiteOptions,
    deltas: &[i64],
) -> (SystemProfile<Rat>, Vec<BoundedRootBasis<Rat>>) {
    for _ in 0..100 {
        let f = rand_system(rng, 1, opts);
        let mut bases = Vec::with_capacity(deltas.len());
        for &delta in deltas {
            match root_functional_basis_with_cap(&f, f.delta_f() + delta, DEFAULT_COLUMN_CAP) {
                Ok(b) if b.dimension() > 0 => bases.push(b),
                _ => break,
            }
        }
        if bases.len() == deltas.len() {
            return (f, bases);
        }
    }
    panic!("no usable system within 100 draws; widen the options");
}

fn rand_combo(rng: &mut ChaCha8Rng, basis: &BoundedRootBasis<Rat>) -> Functional<Rat> {
    let terms: Vec<(Rat, &Functional<Rat>)> = basis
        .basis()
        .iter()
        .map(|l| (rand_rat(rng), l))
        .collect();
    functional_lincomb(&terms).expect("basis is nonempty")
}

fn system_string(f: &SystemProfile<Rat>) -> String {
    f.polys()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn fail(check: &str, inputs: &BTreeMap<String, String>) -> Result<(), CaseFailure> {
    Err((check.to_string(), inputs.clone()))
}

/// Telescoping identity and degree monotonicity of the canonical difference
/// derivative, on random polynomials.
pub fn run_lemma1(opts: &SuiteOptions) -> RunReport {
    run_cases("lemma1", opts, |rng| {
        let n = rng.gen_range(1..=opts.nmax);
        let d = rng.gen_range(1..=opts.degmax.max(1));
        let target = rand_poly(rng, n, d);
        let mut inputs = BTreeMap::new();
        inputs.insert("n".to_string(), n.to_string());
        inputs.insert("target".to_string(), target.to_string());
        let mut cov = nabla(&target);
        if opts.corrupt_derivatives {
            let bumped = cov.comp(0).add(&PolyXY::constant(n, rat(1, 1)));
            let mut comps = cov.comps().to_vec();
            comps[0] = bumped;
            cov = CovectorXY::new(comps);
        }
        if !cov.is_derivative_of(&target) {
            return fail("telescoping", &inputs);
        }
        if !cov.is_monotonous_for(&target) {
            return fail("monotonicity", &inputs);
        }
        Ok(())
    })
}

/// Exact reconstruction of the difference of two derivative choices from the
/// discrepancy multipliers, plus their degree cap.
pub fn run_lemma2(opts: &SuiteOptions) -> RunReport {
    run_cases("lemma2", opts, |rng| {
        let n = rng.gen_range(2..=opts.nmax.max(2));
        let d = rng.gen_range(1..=opts.degmax.max(1));
        let target = rand_poly(rng, n, d);
        let mut inputs = BTreeMap::new();
        inputs.insert("n".to_string(), n.to_string());
        inputs.insert("degree".to_string(), d.to_string());
        inputs.insert("target".to_string(), target.to_string());
        let d1 = nabla(&target);
        let d2 = nabla_swapped(&d1);
        let decomp = match decompose_difference(&d1, &d2, d) {
            Ok(t) => t,
            Err(e) => {
                inputs.insert("error".to_string(), e.to_string());
                return fail("decomposition", &inputs);
            }
        };
        if decomp.max_degree() > d - 2 {
            inputs.insert("multiplier_degree".to_string(), decomp.max_degree().to_string());
            return fail("multiplier-degree", &inputs);
        }
        for m in 0..n {
            let mut expected = d1.comp(m).sub(d2.comp(m));
            if opts.corrupt_derivatives {
                expected = expected.add(&PolyXY::constant(n, rat(1, 1)));
            }
            if decomp.reconstruct(m) != expected {
                inputs.insert("component".to_string(), (m + 1).to_string());
                return fail("reconstruction", &inputs);
            }
        }
        Ok(())
    })
}

/// Equality of the two last-row forms of the determinant and its degree cap.
pub fn run_thm1(opts: &SuiteOptions) -> RunReport {
    run_cases("thm1", opts, |rng| {
        let f = rand_system(rng, 1, opts);
        let d = rng.gen_range(0..=opts.degmax);
        let target = rand_poly(rng, f.nvars(), d);
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("target".to_string(), target.to_string());
        inputs.insert("budget".to_string(), d.to_string());
        let (mut rx, ry) = bezout_poly_forms(&f, &target, &BezoutConfig::canonical(), d)
            .expect("canonical choices are always valid");
        if opts.corrupt_derivatives {
            rx = rx.add(&PolyXY::constant(f.nvars(), rat(1, 1)));
        }
        if rx != ry {
            return fail("forms-equal", &inputs);
        }
        if rx.degree() > f.delta_f() + d {
            inputs.insert("determinant_degree".to_string(), rx.degree().to_string());
            return fail("degree-cap", &inputs);
        }
        Ok(())
    })
}

/// A change of the target derivative moves the determinant inside the span
/// of the shifted antisymmetric pair products, certified by an exact witness.
pub fn run_thm1_uniqueness(opts: &SuiteOptions) -> RunReport {
    run_cases("thm1-uniqueness", opts, |rng| {
        let f = rand_system(rng, 2, opts);
        let d = rng.gen_range(1..=opts.degmax.max(1));
        let target = rand_poly(rng, f.nvars(), d);
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("target".to_string(), target.to_string());
        inputs.insert("budget".to_string(), d.to_string());
        let cfg = BezoutConfig::canonical();
        let r1 = bezout_poly_forms(&f, &target, &cfg, d)
            .expect("canonical choices are always valid")
            .0;
        let r2 = bezout_poly_forms(&f, &target, &BezoutConfig::swapped_target(), d)
            .expect("swapped choices are always valid")
            .0;
        let mut diff = r1.sub(&r2);
        if opts.corrupt_derivatives {
            diff = diff.add(&PolyXY::constant(f.nvars(), rat(1, 1)));
        }
        match target_choice_discrepancy_witness(&f, d, &diff) {
            None => fail("witness-exists", &inputs),
            Some(w) => {
                let gens: Vec<Poly<Rat>> = pair_skew_generators(&f)
                    .into_iter()
                    .map(|g| g.inner().clone())
                    .collect();
                if w.reconstruct(&gens) != *diff.inner() {
                    fail("witness-reconstruction", &inputs)
                } else {
                    Ok(())
                }
            }
        }
    })
}

/// Degree cap of the extension: `deg H ≤ max(δ_f, d − δ − 1)`.
pub fn run_thm2(opts: &SuiteOptions) -> RunReport {
    run_cases("thm2", opts, |rng| {
        let delta = rng.gen_range(0..=1i64);
        let (f, bases) = rand_system_with_bases(rng, opts, &[delta]);
        let l = rand_combo(rng, &bases[0]);
        let d = rng.gen_range(0..=opts.degmax);
        let target = rand_poly(rng, f.nvars(), d);
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("target".to_string(), target.to_string());
        inputs.insert("delta".to_string(), delta.to_string());
        inputs.insert("budget".to_string(), d.to_string());
        inputs.insert("functional".to_string(), l.to_json_string(false));
        let lx = l.extend_zero(f.delta_f() + delta.max(d));
        let cap = f.delta_f().max(d - delta - 1);
        let mut h =
            match extend_step_with_budget(&lx, delta, &f, &target, &BezoutConfig::canonical(), d) {
                Ok(h) => h,
                Err(e) => {
                    inputs.insert("error".to_string(), e.to_string());
                    return fail("extension", &inputs);
                }
            };
        if opts.corrupt_derivatives {
            let n = f.nvars();
            let mut bump = vec![0u32; n];
            bump[0] = (cap + 1) as u32;
            h = h.add_poly(&Poly::monomial(n, Exponent::new(bump), rat(1, 1)));
        }
        if h.degree() > cap {
            inputs.insert("extension_degree".to_string(), h.degree().to_string());
            return fail("degree-cap", &inputs);
        }
        Ok(())
    })
}

/// Truncated-ideal membership propagates through the extension: for a target
/// drawn from the degree-`d` piece, `H` lands in the piece at `d − δ − 1`,
/// with `H = 0` in the degenerate case `d − δ − 1 < 0`.
pub fn run_thm2_membership(opts: &SuiteOptions) -> RunReport {
    run_cases("thm2-membership", opts, |rng| {
        let delta = rng.gen_range(0..=1i64);
        let (f, bases) = rand_system_with_bases(rng, opts, &[delta]);
        let l = rand_combo(rng, &bases[0]);
        let d = rng.gen_range(0..=opts.degmax);
        // A random member of the truncated piece, built from an explicit
        // witness over the shift table.
        let mut target = Poly::zero(f.nvars());
        for (i, alpha) in truncated_shifts(&f, d) {
            if rng.gen_bool(0.5) {
                let c = rand_rat(rng);
                if !c.is_zero() {
                    target = target.add_poly(&f.poly(i).mul_monomial(&alpha, &c));
                }
            }
        }
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("target".to_string(), target.to_string());
        inputs.insert("delta".to_string(), delta.to_string());
        inputs.insert("budget".to_string(), d.to_string());
        inputs.insert("functional".to_string(), l.to_json_string(false));
        let lx = l.extend_zero(f.delta_f() + delta.max(d));
        let mut h =
            match extend_step_with_budget(&lx, delta, &f, &target, &BezoutConfig::canonical(), d) {
                Ok(h) => h,
                Err(e) => {
                    inputs.insert("error".to_string(), e.to_string());
                    return fail("extension", &inputs);
                }
            };
        if opts.corrupt_derivatives {
            h = h.add_poly(&Poly::constant(f.nvars(), rat(1, 1)));
        }
        let d_down = d - delta - 1;
        if d_down < 0 {
            if !h.is_zero() {
                inputs.insert("extension".to_string(), h.to_string());
                return fail("degenerate-zero", &inputs);
            }
            return Ok(());
        }
        match membership(&h, &f, d_down) {
            Ok(Some(w)) => {
                if w.reconstruct(f.polys()) != h {
                    fail("membership-reconstruction", &inputs)
                } else {
                    Ok(())
                }
            }
            _ => {
                inputs.insert("extension".to_string(), h.to_string());
                fail("membership", &inputs)
            }
        }
    })
}

/// The product functional annihilates every truncated generator at the
/// enlarged degree `δ_f + δ1 + δ2 + 1`.
pub fn run_thm3(opts: &SuiteOptions) -> RunReport {
    run_cases("thm3", opts, |rng| {
        let delta1 = rng.gen_range(0..=1i64);
        let delta2 = rng.gen_range(0..=1i64);
        let (f, bases) = rand_system_with_bases(rng, opts, &[delta1, delta2]);
        let l1 = rand_combo(rng, &bases[0]);
        let l2 = rand_combo(rng, &bases[1]);
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("delta1".to_string(), delta1.to_string());
        inputs.insert("delta2".to_string(), delta2.to_string());
        inputs.insert("l1".to_string(), l1.to_json_string(false));
        inputs.insert("l2".to_string(), l2.to_json_string(false));
        let mut prod = match product_functional(&l1, delta1, &l2, delta2, &f) {
            Ok(p) => p,
            Err(e) => {
                inputs.insert("error".to_string(), e.to_string());
                return fail("product", &inputs);
            }
        };
        let d_out = f.delta_f() + delta1 + delta2 + 1;
        if opts.corrupt_derivatives {
            // Break the pairing against the highest shifted generator.
            let (i, alpha) = truncated_shifts(&f, d_out)
                .pop()
                .expect("the truncated piece at d_out has generators");
            let g = f.poly(i).mul_monomial(&alpha, &rat(1, 1));
            let (lead, _) = g.leading_term().expect("generators are nonzero");
            let bump = prod.coeff(lead) + rat(1, 1);
            let mut coeffs: Vec<(Exponent, Rat)> = prod
                .coeffs()
                .map(|(e, c)| (e.clone(), c.clone()))
                .filter(|(e, _)| e != lead)
                .collect();
            coeffs.push((lead.clone(), bump));
            prod = Functional::from_coeffs(f.nvars(), d_out, coeffs);
        }
        match find_violated_generator(&prod, &f, d_out).expect("d_out equals the product's bound")
        {
            None => Ok(()),
            Some((i, alpha)) => {
                inputs.insert(
                    "violated".to_string(),
                    format!("{}*f{}", alpha, i + 1),
                );
                fail("annihilation", &inputs)
            }
        }
    })
}

/// The two product orders agree monomial by monomial on the common bound.
pub fn run_thm4(opts: &SuiteOptions) -> RunReport {
    run_cases("thm4", opts, |rng| {
        let delta1 = rng.gen_range(0..=1i64);
        let delta2 = rng.gen_range(0..=1i64);
        let (f, bases) = rand_system_with_bases(rng, opts, &[delta1, delta2]);
        let l1 = rand_combo(rng, &bases[0]);
        let l2 = rand_combo(rng, &bases[1]);
        let mut inputs = BTreeMap::new();
        inputs.insert("system".to_string(), system_string(&f));
        inputs.insert("delta1".to_string(), delta1.to_string());
        inputs.insert("delta2".to_string(), delta2.to_string());
        inputs.insert("l1".to_string(), l1.to_json_string(false));
        inputs.insert("l2".to_string(), l2.to_json_string(false));
        let cex = if opts.corrupt_derivatives {
            let p12 = product_functional(&l1, delta1, &l2, delta2, &f);
            let p21 = product_functional(&l2, delta2, &l1, delta1, &f);
            match (p12, p21) {
                (Ok(a), Ok(b)) => {
                    let zero = Exponent::zero(f.nvars());
                    let bumped = b.coeff(&zero) + rat(1, 1);
                    let mut coeffs: Vec<(Exponent, Rat)> = b
                        .coeffs()
                        .map(|(e, c)| (e.clone(), c.clone()))
                        .filter(|(e, _)| !e.is_zero())
                        .collect();
                    coeffs.push((zero.clone(), bumped));
                    let b = Functional::from_coeffs(f.nvars(), b.bound(), coeffs);
                    let mut found = None;
                    for gamma in monomials_up_to(f.nvars(), a.bound()) {
                        if a.coeff(&gamma) != b.coeff(&gamma) {
                            let left = a.coeff(&gamma);
                            let right = b.coeff(&gamma);
                            found = Some((gamma, left, right));
                            break;
                        }
                    }
                    Ok(found)
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        } else {
            commutativity_counterexample(&l1, delta1, &l2, delta2, &f)
        };
        match cex {
            Ok(None) => Ok(()),
            Ok(Some((gamma, left, right))) => {
                inputs.insert("monomial".to_string(), gamma.to_string());
                inputs.insert("left".to_string(), left.to_string());
                inputs.insert("right".to_string(), right.to_string());
                fail("commutativity", &inputs)
            }
            Err(e) => {
                inputs.insert("error".to_string(), e.to_string());
                fail("product", &inputs)
            }
        }
    })
}

/// Every suite in order, with the same options.
pub fn run_all(opts: &SuiteOptions) -> Vec<RunReport> {
    vec![
        run_lemma1(opts),
        run_lemma2(opts),
        run_thm1(opts),
        run_thm1_uniqueness(opts),
        run_thm2(opts),
        run_thm2_membership(opts),
        run_thm3(opts),
        run_thm4(opts),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(cases: usize) -> SuiteOptions {
        SuiteOptions {
            cases,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn all_suites_pass_on_small_runs() {
        for report in run_all(&small(6)) {
            assert!(report.ok(), "suite {} failed: {:?}", report.suite, report);
            assert_eq!(report.passed, 6);
        }
    }

    #[test]
    fn corruption_is_caught_and_reported() {
        for runner in [run_lemma1, run_lemma2, run_thm1, run_thm2, run_thm4] {
            let opts = SuiteOptions {
                cases: 3,
                corrupt_derivatives: true,
                ..SuiteOptions::default()
            };
            let report = runner(&opts);
            assert_eq!(report.failed, 3, "suite {}", report.suite);
            let cex = report.first_counterexample.expect("counterexample recorded");
            assert_eq!(cex.case_index, 0);
            assert!(!cex.inputs.is_empty());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let opts = small(4);
        let mut a = run_thm1(&opts);
        let mut b = run_thm1(&opts);
        a.duration_ms = 0;
        b.duration_ms = 0;
        assert_eq!(a, b);
        assert_eq!(a.to_json_string(true), b.to_json_string(true));
    }

    #[test]
    fn distinct_seeds_draw_distinct_cases() {
        let a = run_lemma1(&SuiteOptions {
            cases: 2,
            ..SuiteOptions::default()
        });
        let b = run_lemma1(&SuiteOptions {
            seed: 1,
            cases: 2,
            ..SuiteOptions::default()
        });
        assert_ne!(a.command, b.command);
    }

    #[test]
    fn degenerate_membership_cases_occur() {
        // With degmax 1 the downgraded degree d − δ − 1 is negative in most
        // draws, so the degenerate branch is exercised.
        let opts = SuiteOptions {
            cases: 10,
            degmax: 1,
            ..SuiteOptions::default()
        };
        assert!(run_thm2_membership(&opts).ok());
    }
}
