//! Seeded self-check suite behind the CLI `verify` subcommand: every named
//! invariant runs on freshly drawn random instances and reports pass/fail.
//! Counts are sized for a quick interactive run; the heavier acceptance
//! suite lives in the integration tests.

use crate::bounds::{
    chain_inequality_sides, corollary_logweight_rhs, corollary_threshold_rhs, holder_step_sides,
    sup_form_identity, theorem1_rhs,
};
use crate::charfn::{cf_h, cf_weighted_sum, esseen_functional, symmetrization_envelope, CharFn};
use crate::concentration::{
    central_binomial_concentration, concentration_exact_1d, concentration_mc,
    rademacher_sum_concentration,
};
use crate::idiv::{cf_compound_poisson, sample_compound_poisson, spectral_of_coefficients};
use crate::measures::{
    log_factor, paper_floor, symmetrize, tail_mass, CoefficientVector, FiniteDiscreteMeasure,
    SubMeasureSpec, MERGE_TOL,
};
use crate::quad::QuadratureSpec;
use crate::rng::Stream;
use crate::structure::{deficit, enumerate_k1, search_generators, GeneratorSet, SearchMode};
use num_complex::Complex64;
use serde::Serialize;

/// Outcome of one named invariant check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            passed: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            passed: false,
            detail,
        }
    }
}

/// A random discrete law with 2..=max_atoms atoms in [-span, span].
pub fn random_discrete_law(s: &mut Stream, max_atoms: usize, span: f64) -> FiniteDiscreteMeasure {
    loop {
        let k = 2 + s.next_index(max_atoms.saturating_sub(1).max(1));
        let mut atoms: Vec<(f64, f64)> = (0..k)
            .map(|_| (s.uniform(-span, span), s.uniform(0.05, 1.0)))
            .collect();
        let total: f64 = atoms.iter().map(|(_, p)| p).sum();
        for a in atoms.iter_mut() {
            a.1 /= total;
        }
        if let Ok(m) = FiniteDiscreteMeasure::from_scalar_atoms(&atoms) {
            if m.atoms().len() >= 2 {
                return m;
            }
        }
    }
}

/// Random scalar coefficients, nonzero, 1..=max_n of them.
pub fn random_coefficients(s: &mut Stream, max_n: usize, span: f64) -> CoefficientVector {
    let n = 1 + s.next_index(max_n);
    let values: Vec<f64> = (0..n)
        .map(|_| {
            let mut v = 0.0_f64;
            while v.abs() < 0.05 {
                v = s.uniform(-span, span);
            }
            v
        })
        .collect();
    CoefficientVector::from_scalars(&values).expect("valid coefficients")
}

macro_rules! check {
    ($name:expr, $cond:expr, $detail:expr) => {
        if !($cond) {
            return CheckResult::fail($name, $detail);
        }
    };
}

fn check_paper_floor(seed: u64) -> CheckResult {
    const NAME: &str = "paper-floor-bracketing";
    let mut s = Stream::new(seed);
    for _ in 0..2000 {
        let x = s.uniform(-100.0, 100.0);
        let k = paper_floor(x) as f64;
        check!(NAME, k < x && x <= k + 1.0, format!("x = {x}, k = {k}"));
    }
    for k in -10..=10 {
        let x = k as f64;
        check!(NAME, paper_floor(x) == k - 1, format!("integer x = {x}"));
    }
    CheckResult::pass(NAME, "2000 random + 21 integer points".into())
}

fn check_symmetrize(seed: u64) -> CheckResult {
    const NAME: &str = "symmetrize-symmetry";
    let mut s = Stream::new(seed);
    for _ in 0..200 {
        let x = random_discrete_law(&mut s, 5, 3.0);
        let g = match symmetrize(&x) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(NAME, format!("{e}")),
        };
        check!(NAME, g.is_symmetric(1e-12), format!("asymmetric G from {x:?}"));
        check!(
            NAME,
            (g.total_mass() - 1.0).abs() <= 1e-12,
            format!("total {}", g.total_mass())
        );
    }
    CheckResult::pass(NAME, "200 random laws".into())
}

fn check_log_factor(seed: u64) -> CheckResult {
    const NAME: &str = "log-factor-profile";
    let mut s = Stream::new(seed);
    for _ in 0..1000 {
        let tau = s.uniform(0.1, 3.0);
        let eps = s.uniform(0.1, 3.0);
        let z1 = s.uniform(1e-3, 5.0);
        let z2 = z1 + s.uniform(0.0, 5.0);
        let f1 = log_factor(z1, tau, eps);
        let f2 = log_factor(z2, tau, eps);
        check!(NAME, f1 >= f2 && f2 >= 0.0, format!("z {z1} -> {f1}, z {z2} -> {f2}"));
        if z1 >= tau / eps {
            check!(NAME, f1 == 0.0, format!("nonzero outside window: {f1}"));
        }
    }
    check!(NAME, log_factor(0.0, 1.0, 1.0).is_infinite(), "no sentinel at 0".into());
    CheckResult::pass(NAME, "1000 random triples".into())
}

fn check_tail_mass(seed: u64) -> CheckResult {
    const NAME: &str = "tail-mass-monotone";
    let mut s = Stream::new(seed);
    for _ in 0..100 {
        let g = symmetrize(&random_discrete_law(&mut s, 5, 3.0)).unwrap();
        let mut prev = 1.0;
        for i in 1..40 {
            let d = i as f64 * 0.2;
            let t = tail_mass(&g, d).unwrap();
            check!(NAME, t <= prev + 1e-15, format!("tail jumped at delta {d}"));
            prev = t;
        }
    }
    CheckResult::pass(NAME, "100 laws x 40 thresholds".into())
}

fn check_submeasure_domination(seed: u64) -> CheckResult {
    const NAME: &str = "submeasure-domination";
    let mut s = Stream::new(seed);
    for _ in 0..200 {
        let g = symmetrize(&random_discrete_law(&mut s, 5, 3.0)).unwrap();
        let weights: Vec<f64> = g.atoms().iter().map(|_| s.next_f64()).collect();
        if let Ok(v) = SubMeasureSpec::new(g.clone(), weights) {
            for (f, (_, p)) in v.weights().iter().zip(g.atoms()) {
                check!(NAME, f * p <= p + 1e-15, format!("V exceeds G on an atom"));
            }
            check!(NAME, v.lambda() > 0.0, "lambda must be positive".into());
        }
    }
    CheckResult::pass(NAME, "200 random sub-measures".into())
}

fn check_window_regularity(seed: u64) -> CheckResult {
    const NAME: &str = "window-regularity-1d";
    let mut s = Stream::new(seed);
    for _ in 0..500 {
        let m = random_discrete_law(&mut s, 8, 4.0);
        let mu = s.uniform(0.01, 3.0);
        let lam = s.uniform(0.01, 3.0);
        let q_mu = concentration_exact_1d(&m, mu).unwrap().value;
        let q_lam = concentration_exact_1d(&m, lam).unwrap().value;
        let factor = (paper_floor(mu / lam) + 2) as f64;
        check!(
            NAME,
            q_mu <= factor * q_lam + 1e-12,
            format!("Q({mu}) = {q_mu} > {factor} x Q({lam}) = {q_lam}")
        );
    }
    CheckResult::pass(NAME, "500 random (F, mu, lambda)".into())
}

fn check_window_scaling(seed: u64) -> CheckResult {
    const NAME: &str = "window-scaling";
    let mut s = Stream::new(seed);
    for _ in 0..300 {
        let m = random_discrete_law(&mut s, 6, 3.0);
        let z = s.uniform(0.1, 4.0) * if s.next_f64() < 0.5 { -1.0 } else { 1.0 };
        let tau = s.uniform(0.0, 2.0);
        let left = concentration_exact_1d(&m.scaled(z), tau).unwrap().value;
        let right = concentration_exact_1d(&m, tau / z.abs()).unwrap().value;
        check!(NAME, (left - right).abs() <= 1e-12, format!("{left} vs {right}"));
    }
    CheckResult::pass(NAME, "300 random scalings".into())
}

fn check_window_monotone(seed: u64) -> CheckResult {
    const NAME: &str = "window-monotone-radius";
    let mut s = Stream::new(seed);
    for _ in 0..300 {
        let m = random_discrete_law(&mut s, 8, 4.0);
        let l1 = s.uniform(0.0, 2.0);
        let l2 = l1 + s.uniform(0.0, 2.0);
        let q1 = concentration_exact_1d(&m, l1).unwrap().value;
        let q2 = concentration_exact_1d(&m, l2).unwrap().value;
        check!(NAME, q2 >= q1 - 1e-15, format!("Q not monotone: {q1} > {q2}"));
        check!(NAME, q1 >= m.max_atom_mass() - 1e-15, "below max atom".into());
    }
    CheckResult::pass(NAME, "300 random radii pairs".into())
}

fn check_littlewood_offord(_seed: u64) -> CheckResult {
    const NAME: &str = "littlewood-offord-closed-form";
    for n in 2..=20 {
        let a = CoefficientVector::ones(n);
        let got = rademacher_sum_concentration(&a, 1.0).unwrap().value;
        let want = central_binomial_concentration(n);
        check!(NAME, (got - want).abs() <= 1e-12, format!("n = {n}: {got} vs {want}"));
    }
    CheckResult::pass(NAME, "n = 2..20 all-ones".into())
}

fn check_mc_vs_exact(seed: u64) -> CheckResult {
    const NAME: &str = "mc-vs-exact-1d";
    let mut s = Stream::new(seed);
    for trial in 0..5 {
        let m = random_discrete_law(&mut s, 5, 3.0);
        let lambda = s.uniform(0.2, 2.0);
        let exact = concentration_exact_1d(&m, lambda).unwrap().value;
        let atoms = m.scalar_atoms().unwrap();
        let cdf: Vec<(f64, f64)> = {
            let mut acc = 0.0;
            atoms
                .iter()
                .map(|(x, p)| {
                    acc += p;
                    (*x, acc)
                })
                .collect()
        };
        let sampler = move |sd: u64| {
            let mut st = Stream::new(sd);
            let u = st.next_f64();
            vec![cdf.iter().find(|(_, c)| u < *c).unwrap_or(cdf.last().unwrap()).0]
        };
        let mc = concentration_mc(sampler, lambda, 20_000, seed + trial).unwrap();
        check!(
            NAME,
            mc.value <= exact + 3.0 * mc.half_width + 1e-9,
            format!("mc {} > exact {exact} + 3hw {}", mc.value, mc.half_width)
        );
    }
    CheckResult::pass(NAME, "5 sampled laws, 20k points".into())
}

fn check_cf_basics(seed: u64) -> CheckResult {
    const NAME: &str = "cf-normalization-hermitian";
    let mut s = Stream::new(seed);
    for _ in 0..200 {
        let x = random_discrete_law(&mut s, 4, 3.0);
        let a = random_coefficients(&mut s, 5, 2.0);
        let at0 = cf_weighted_sum(&x, &a, &[0.0]).unwrap();
        check!(NAME, (at0 - Complex64::new(1.0, 0.0)).norm() <= 1e-12, "cf(0) != 1".into());
        let t = s.uniform(-10.0, 10.0);
        let v = cf_weighted_sum(&x, &a, &[t]).unwrap();
        let w = cf_weighted_sum(&x, &a, &[-t]).unwrap();
        check!(NAME, (v - w.conj()).norm() <= 1e-12, "not Hermitian".into());
        check!(NAME, v.norm() <= 1.0 + 1e-12, "modulus above 1".into());
    }
    CheckResult::pass(NAME, "200 random (law, a, t)".into())
}

fn check_cf_h_identities(seed: u64) -> CheckResult {
    const NAME: &str = "cf-h-identities";
    let mut s = Stream::new(seed);
    for _ in 0..500 {
        let a = random_coefficients(&mut s, 6, 2.0);
        let z = s.uniform(-4.0, 4.0);
        let t = s.uniform(-6.0, 6.0);
        let lhs = cf_h(&a, z, 1.0, &[t]).unwrap();
        let rhs = cf_h(&a, 1.0, 1.0, &[z * t]).unwrap();
        check!(NAME, (lhs - rhs).abs() <= 1e-12, format!("scaling: {lhs} vs {rhs}"));
        let l1 = s.uniform(0.0, 2.0);
        let l2 = s.uniform(0.0, 2.0);
        let prod = cf_h(&a, z, l1, &[t]).unwrap() * cf_h(&a, z, l2, &[t]).unwrap();
        let joint = cf_h(&a, z, l1 + l2, &[t]).unwrap();
        check!(NAME, (prod - joint).abs() <= 1e-12, "lambda multiplicativity".into());
        check!(NAME, lhs > 0.0, "not strictly positive".into());
    }
    CheckResult::pass(NAME, "500 random identities".into())
}

fn check_envelope(seed: u64) -> CheckResult {
    const NAME: &str = "envelope-dominance";
    let mut s = Stream::new(seed);
    for _ in 0..500 {
        let x = random_discrete_law(&mut s, 4, 2.5);
        let a = random_coefficients(&mut s, 5, 2.0);
        let g = symmetrize(&x).unwrap();
        let t = s.uniform(-12.0, 12.0);
        let modulus = cf_weighted_sum(&x, &a, &[t]).unwrap().norm();
        let env = symmetrization_envelope(&a, &g, &[t]).unwrap();
        check!(NAME, modulus <= env + 1e-12, format!("{modulus} > {env} at t = {t}"));
    }
    CheckResult::pass(NAME, "500 random (a, X, t)".into())
}

fn check_envelope_monotone(seed: u64) -> CheckResult {
    const NAME: &str = "envelope-monotone-in-measure";
    let mut s = Stream::new(seed);
    for _ in 0..200 {
        let g = symmetrize(&random_discrete_law(&mut s, 4, 2.5)).unwrap();
        let a = random_coefficients(&mut s, 4, 2.0);
        let weights: Vec<f64> = g.atoms().iter().map(|_| s.next_f64()).collect();
        if let Ok(v) = SubMeasureSpec::new(g.clone(), weights) {
            let t = [s.uniform(-10.0, 10.0)];
            let full = CharFn::envelope(&a, &g).unwrap().eval(&t).re;
            let sub = CharFn::envelope_of_submeasure(&a, &v).eval(&t).re;
            check!(NAME, sub >= full - 1e-12, format!("shrinking decreased envelope"));
        }
    }
    CheckResult::pass(NAME, "200 random sub-measures".into())
}

fn check_holder(seed: u64) -> CheckResult {
    const NAME: &str = "holder-step";
    let mut s = Stream::new(seed);
    let spec = QuadratureSpec::default();
    for _ in 0..20 {
        let a = random_coefficients(&mut s, 4, 2.0);
        let f = random_discrete_law(&mut s, 4, 3.0);
        let lam = s.uniform(0.1, 2.0);
        let half_width = s.uniform(0.5, 3.0);
        let (lhs, rhs) =
            holder_step_sides(&a, &f.scalar_atoms().unwrap(), lam, half_width, &spec).unwrap();
        check!(NAME, lhs <= rhs * (1.0 + 1e-6), format!("lhs {lhs} > rhs {rhs}"));
    }
    CheckResult::pass(NAME, "20 quadrature instances".into())
}

fn check_esseen_bounds(seed: u64) -> CheckResult {
    const NAME: &str = "esseen-functional-range";
    let spec = QuadratureSpec::default();
    let one = CharFn::constant_one(1);
    let v = esseen_functional(&one, 0.7, &spec).unwrap().value;
    check!(NAME, (v - 2.0).abs() <= 1e-8, format!("point mass d=1: {v}"));
    let one2 = CharFn::constant_one(2);
    let v2 = esseen_functional(&one2, 1.3, &spec).unwrap().value;
    check!(NAME, (v2 - 4.0).abs() <= 1e-8, format!("point mass d=2: {v2}"));
    let mut s = Stream::new(seed);
    for _ in 0..20 {
        let x = random_discrete_law(&mut s, 4, 2.0);
        let a = random_coefficients(&mut s, 4, 2.0);
        let cf = CharFn::weighted_sum(&x, &a).unwrap();
        let tau = s.uniform(0.3, 2.0);
        let val = esseen_functional(&cf, tau, &spec).unwrap().value;
        check!(NAME, (0.0..=2.0 + 1e-6).contains(&val), format!("out of range: {val}"));
    }
    CheckResult::pass(NAME, "constants + 20 random".into())
}

fn check_spectral_cf(seed: u64) -> CheckResult {
    const NAME: &str = "spectral-cf-equality";
    let mut s = Stream::new(seed);
    for _ in 0..100 {
        let a = random_coefficients(&mut s, 6, 2.0);
        let lam = s.uniform(0.1, 4.0);
        let model = spectral_of_coefficients(&a, lam).unwrap();
        let t = s.uniform(-8.0, 8.0);
        let via_model = cf_compound_poisson(&model, &[t]).unwrap();
        let via_h = cf_h(&a, 1.0, lam, &[t]).unwrap();
        check!(
            NAME,
            (via_model.re - via_h).abs() <= 1e-12 && via_model.im.abs() <= 1e-12,
            format!("{via_model} vs {via_h}")
        );
    }
    CheckResult::pass(NAME, "100 random (a, lam, t)".into())
}

fn check_sampler_cf(seed: u64) -> CheckResult {
    const NAME: &str = "sampler-empirical-cf";
    let a = CoefficientVector::from_scalars(&[1.0, -0.7, 1.9]).unwrap();
    let model = spectral_of_coefficients(&a, 1.5).unwrap();
    let n = 50_000;
    let samples = sample_compound_poisson(&model, n, seed);
    let mut s = Stream::new(seed ^ 0xABCD);
    for _ in 0..10 {
        let t = s.uniform(-4.0, 4.0);
        let emp: Complex64 = samples
            .iter()
            .map(|p| Complex64::new(0.0, t * p[0]).exp())
            .sum::<Complex64>()
            / n as f64;
        let exact = cf_compound_poisson(&model, &[t]).unwrap();
        check!(
            NAME,
            (emp - exact).norm() <= 4.0 / (n as f64).sqrt(),
            format!("t = {t}: {emp} vs {exact}")
        );
    }
    CheckResult::pass(NAME, "50k samples x 10 frequencies".into())
}

fn check_corollary_consistency(seed: u64) -> CheckResult {
    const NAME: &str = "corollary-consistency";
    let mut s = Stream::new(seed);
    let spec = QuadratureSpec::default();
    for _ in 0..20 {
        let a = random_coefficients(&mut s, 5, 2.0);
        let g = symmetrize(&random_discrete_law(&mut s, 4, 3.0)).unwrap();
        let positive: Vec<f64> = g
            .scalar_atoms()
            .unwrap()
            .iter()
            .map(|(z, _)| z.abs())
            .filter(|z| *z > MERGE_TOL)
            .collect();
        if positive.is_empty() {
            continue;
        }
        let delta = positive[s.next_index(positive.len())];
        let eps = s.uniform(0.3, 2.0);
        let tau = s.uniform(0.3, 2.0);
        let cor = corollary_threshold_rhs(&a, &g, delta, eps, tau, &spec).unwrap();
        let v = SubMeasureSpec::indicator_tail(g.clone(), delta).unwrap();
        let thm = theorem1_rhs(&a, &v, eps, tau, &spec).unwrap();
        let tol = 1e-12 * thm.rhs.abs().max(1.0);
        check!(NAME, (cor.rhs - thm.rhs).abs() <= tol, format!("{} vs {}", cor.rhs, thm.rhs));
        let logw = corollary_logweight_rhs(&a, &g, eps, tau, &spec).unwrap();
        check!(
            NAME,
            logw.exponent_integral <= logw.bounding_exponent.unwrap() + 1e-12,
            "exact exponent above bounding exponent".into()
        );
    }
    CheckResult::pass(NAME, "20 random instances".into())
}

fn check_chain(seed: u64) -> CheckResult {
    const NAME: &str = "chain-inequality";
    let mut s = Stream::new(seed);
    let spec = QuadratureSpec::default();
    for _ in 0..10 {
        let a = random_coefficients(&mut s, 4, 2.0);
        let x = random_discrete_law(&mut s, 3, 2.0);
        let g = symmetrize(&x).unwrap();
        let weights: Vec<f64> = g.atoms().iter().map(|_| s.uniform(0.05, 1.0)).collect();
        let v = SubMeasureSpec::new(g, weights).unwrap();
        let tau = s.uniform(0.4, 2.0);
        let sides = chain_inequality_sides(&a, &x, &v, tau, &spec).unwrap();
        let slack = 1.0 + 1e-6;
        check!(
            NAME,
            sides.weighted_sum <= sides.envelope_g * slack
                && sides.envelope_g <= sides.envelope_v * slack
                && sides.envelope_v <= sides.holder_product * slack,
            format!("{sides:?}")
        );
    }
    CheckResult::pass(NAME, "10 random chains".into())
}

fn check_sup_form(seed: u64) -> CheckResult {
    const NAME: &str = "sup-form-collapse";
    let mut s = Stream::new(seed);
    let a = random_coefficients(&mut s, 5, 2.0);
    let r = sup_form_identity(&a, 0.5, 1.0, 1.0, 10_000, seed).unwrap();
    check!(NAME, r.max_cf_scaling_error <= 1e-12, format!("cf error {}", r.max_cf_scaling_error));
    check!(NAME, r.sup_attained_at_smallest_z, "sup not at smallest z".into());
    check!(NAME, r.consistent, format!("gap {}", r.consistency_gap));
    CheckResult::pass(NAME, "cf identity + 4-point grid".into())
}

fn check_k1(seed: u64) -> CheckResult {
    const NAME: &str = "k1-properties";
    let mut s = Stream::new(seed);
    for _ in 0..50 {
        let r = s.next_index(6);
        let u = GeneratorSet::new(
            2,
            (0..r).map(|_| vec![s.uniform(-2.0, 2.0), s.uniform(-2.0, 2.0)]).collect(),
        )
        .unwrap();
        let k1 = enumerate_k1(&u).unwrap();
        check!(NAME, k1.len() <= 3usize.pow(r as u32), "cardinality".into());
        check!(
            NAME,
            k1.iter().any(|p| crate::measures::sup_norm(p) <= MERGE_TOL),
            "origin missing".into()
        );
        for p in &k1 {
            let neg: Vec<f64> = p.iter().map(|v| -v).collect();
            check!(
                NAME,
                k1.iter().any(|q| crate::measures::sup_dist(q, &neg) <= 1e-9),
                "negation closure".into()
            );
        }
    }
    CheckResult::pass(NAME, "50 random generator sets".into())
}

fn check_deficit_oracle(seed: u64) -> CheckResult {
    const NAME: &str = "deficit-oracle";
    let mut s = Stream::new(seed);
    for _ in 0..50 {
        let m = random_discrete_law(&mut s, 8, 4.0);
        let r = s.next_index(4);
        let u = GeneratorSet::new(1, (0..r).map(|_| vec![s.uniform(-2.0, 2.0)]).collect()).unwrap();
        let tau = s.uniform(0.05, 1.5);
        let alpha = s.uniform(0.1, 5.0);
        let got = deficit(
            &FiniteDiscreteMeasure::probability(1, m.atoms().to_vec()).unwrap(),
            alpha,
            &u,
            tau,
        )
        .unwrap();
        let k1 = enumerate_k1(&u).unwrap();
        let mut mass = 0.0;
        for (x, p) in m.atoms() {
            if k1.iter().all(|q| crate::measures::sup_dist(x, q) > tau) {
                mass += p;
            }
        }
        check!(NAME, (got - alpha * mass).abs() <= 1e-12, format!("{got} vs {}", alpha * mass));
    }
    CheckResult::pass(NAME, "50 brute-force comparisons".into())
}

fn check_greedy_vs_exact(seed: u64) -> CheckResult {
    const NAME: &str = "greedy-never-undercuts-exact";
    let mut s = Stream::new(seed);
    for _ in 0..10 {
        let m = random_discrete_law(&mut s, 6, 3.0);
        let m = FiniteDiscreteMeasure::probability(1, m.atoms().to_vec()).unwrap();
        let pool: Vec<Vec<f64>> = (0..8).map(|_| vec![s.uniform(-3.0, 3.0)]).collect();
        let tau = s.uniform(0.1, 0.8);
        let greedy =
            search_generators(&m, 1.0, tau, 2, SearchMode::Greedy, Some(&pool), seed).unwrap();
        let exact =
            search_generators(&m, 1.0, tau, 2, SearchMode::Exact, Some(&pool), seed).unwrap();
        check!(
            NAME,
            exact.deficit <= greedy.deficit + 1e-12,
            format!("exact {} > greedy {}", exact.deficit, greedy.deficit)
        );
    }
    CheckResult::pass(NAME, "10 pool-8 instances".into())
}

/// Run every named invariant with substreams of `seed`.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let root = Stream::new(seed);
    let sub = |i: u64| -> u64 {
        let mut s = root.split(i);
        s.next_u64()
    };
    vec![
        check_paper_floor(sub(0)),
        check_symmetrize(sub(1)),
        check_log_factor(sub(2)),
        check_tail_mass(sub(3)),
        check_submeasure_domination(sub(4)),
        check_window_regularity(sub(5)),
        check_window_scaling(sub(6)),
        check_window_monotone(sub(7)),
        check_littlewood_offord(sub(8)),
        check_mc_vs_exact(sub(9)),
        check_cf_basics(sub(10)),
        check_cf_h_identities(sub(11)),
        check_envelope(sub(12)),
        check_envelope_monotone(sub(13)),
        check_holder(sub(14)),
        check_esseen_bounds(sub(15)),
        check_spectral_cf(sub(16)),
        check_sampler_cf(sub(17)),
        check_corollary_consistency(sub(18)),
        check_chain(sub(19)),
        check_sup_form(sub(20)),
        check_k1(sub(21)),
        check_deficit_oracle(sub(22)),
        check_greedy_vs_exact(sub(23)),
    ]
}
