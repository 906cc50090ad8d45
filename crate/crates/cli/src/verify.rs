//! The full certification run behind `volcert verify`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use volcert::budget::{min_distance_rho, min_distance_rho_bisect, DisplacementBudget, RhoBound};
use volcert::certificate::{
    branch_bound, case_f_derivative, f_minimizer, global_minimum, CaseAnalysisReport, CaseId,
    CaseThresholds, VOLUME_FLOOR,
};
use volcert::homology::{
    fill_slope, hypothesis_gate, mod_p_dim, mod_p_dim_direct, smith_normal_form, GateInput,
    GateResult, IntegerMatrix, PeripheralData,
};
use volcert::hyperbolic::{
    collar_radius, displacement_at_radius, oracle_displacement, tube_radius, Loxodromic,
};
use volcert::packing::{
    ball_volume, packing_profile, paper_constants, profile_grid, IdealTetrahedron, PackingProfile, PaperConstants,
};
use volcert::Result;

use crate::report::{CertificationReport, CheckResult};

pub const DEFAULT_SEED: u64 = 0x5eed_0f_c0ffee;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub quad_tol: f64,
    pub grid_step: f64,
    /// Half-width of the interval a printed truncation stands for.
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            quad_tol: 1e-10,
            grid_step: 1e-4,
            tol: 5e-4,
            seed: DEFAULT_SEED,
        }
    }
}

/// Printed truncations of the constants.
pub const PRINTED_C1: f64 = 1.931;
pub const PRINTED_C2: f64 = 0.929;
pub const PRINTED_D_INF: f64 = 0.853;
pub const PRINTED_B_HALF_LOG3: f64 = 0.737;
pub const PRINTED_CASE_I: f64 = 6.0;
pub const PRINTED_CASE_III: f64 = 5.07;
pub const PRINTED_CASE_IVA: f64 = 5.26;
pub const PRINTED_CASE_IVB: f64 = 5.34;
pub const HEADLINE_RANGE: (f64, f64) = (5.06, 5.07);

/// Distance from `value` to the centre of `[printed, printed + 2·half_width]`.
/// With `half_width = 5e-4` and a three-decimal `printed`, this is at most
/// `half_width` exactly when `value` truncates to `printed`.
pub fn truncation_error(value: f64, printed: f64, half_width: f64) -> f64 {
    (value - (printed + half_width)).abs()
}

pub const DENSITY_GRID: (f64, f64, usize) = (0.05, 12.0, 500);
pub const DENSITY_IDENTITY_TOL: f64 = 1e-10;
pub const ORACLE_SAMPLES: usize = 10_000;
pub const ORACLE_TOL: f64 = 1e-9;
pub const TUBE_ROUNDTRIP_TOL: f64 = 1e-10;
pub const COLLAR_RESIDUAL_TOL: f64 = 1e-12;
pub const COLLAR_ASYMPTOTIC_TOL: f64 = 0.01;
pub const BUDGET_SAMPLES: usize = 10_000;
pub const BUDGET_TOL: f64 = 1e-12;
pub const BUDGET_EXACT_TOL: f64 = 1e-15;
pub const TAU_LIMIT_TOL: f64 = 1e-5;
pub const SHELL_LIMIT_TOL: f64 = 1e-6;
pub const BARYCENTER_TOL: f64 = 1e-12;
pub const SNF_SAMPLES: usize = 1000;
pub const FILLING_SAMPLES: usize = 100;
pub const F_PRIME_TOL: f64 = 1e-8;
/// Required agreement of the global argmin with `x*`.
pub const ARGMIN_TOL: f64 = 1e-6;

fn density_radii() -> Vec<f64> {
    let (lo, hi, n) = DENSITY_GRID;
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn constant_checks(c: &PaperConstants, half_log3: &PackingProfile, tol: f64) -> Vec<CheckResult> {
    [
        ("c1_truncation", c.c1, PRINTED_C1),
        ("c2_truncation", c.c2, PRINTED_C2),
        ("d_inf_truncation", c.d_inf, PRINTED_D_INF),
        ("ball_half_log3_truncation", half_log3.ball_volume, PRINTED_B_HALF_LOG3),
    ]
    .into_iter()
    .map(|(name, v, printed)| CheckResult::at_most(name, truncation_error(v, printed, tol), tol))
    .collect()
}

fn case_floor_checks(c: &PaperConstants, r: &CaseAnalysisReport) -> Vec<CheckResult> {
    let t = CaseThresholds::new(c);
    let infimum = |id| r.case(id).map_or(f64::NAN, |ci| ci.infimum());
    let half = 0.005;
    let iva_formula = PI / c.d_inf * (1.0 + 2.0 / 3.0 / (c.c1 * c.c1)) + c.c2;
    let ivb_formula = c.c2 + PI / c.d_inf + ball_volume(0.5 * 3f64.ln());
    vec![
        CheckResult::above("case_i_infimum", infimum(CaseId::I), PRINTED_CASE_I),
        CheckResult::above(
            "case_iii_at_threshold",
            branch_bound(CaseId::III, t.iii, c),
            PRINTED_CASE_III,
        ),
        CheckResult::at_most(
            "case_iva_threshold_value",
            truncation_error(iva_formula, PRINTED_CASE_IVA, half),
            half,
        ),
        CheckResult::at_most(
            "case_iva_floor",
            truncation_error(infimum(CaseId::IVA), PRINTED_CASE_IVA, half),
            half,
        ),
        CheckResult::at_most(
            "case_ivb_floor",
            truncation_error(ivb_formula, PRINTED_CASE_IVB, half),
            half,
        ),
        CheckResult::at_most(
            "case_ivb_swept_floor",
            truncation_error(infimum(CaseId::IVB), PRINTED_CASE_IVB, half),
            half,
        ),
    ]
}

fn headline_checks(c: &PaperConstants, r: &CaseAnalysisReport) -> Vec<CheckResult> {
    let (lo, hi) = HEADLINE_RANGE;
    let x_star = f_minimizer(c);
    let global_argmin = r
        .case(r.global_case)
        .map_or(f64::NAN, |ci| ci.argmin_beta - 1.0);
    let argmin_error = if r.global_case == CaseId::II {
        (global_argmin - x_star).abs()
    } else {
        f64::INFINITY
    };
    let floor_margin = r
        .per_case
        .iter()
        .map(|ci| ci.infimum())
        .chain([r.sliver.min_iva, r.sliver.min_ivb])
        .fold(f64::INFINITY, f64::min);
    vec![
        CheckResult::new(
            "global_min_in_range",
            r.global_min > lo && r.global_min < hi,
            r.global_min,
            0.5 * (lo + hi),
        ),
        CheckResult::at_most("global_min_at_case_ii_minimizer", argmin_error, ARGMIN_TOL),
        CheckResult::at_most("f_prime_at_minimizer", case_f_derivative(x_star, c).abs(), F_PRIME_TOL),
        CheckResult::above("every_branch_above_floor", floor_margin, VOLUME_FLOOR),
    ]
}

fn density_checks(quad_tol: f64) -> Result<Vec<CheckResult>> {
    let profiles = profile_grid(&density_radii(), quad_tol)?;
    let min_step = profiles
        .windows(2)
        .map(|w| w[1].density - w[0].density)
        .fold(f64::INFINITY, f64::min);
    let identity = profiles
        .iter()
        .map(|p| (p.density * p.simplex_volume - 3.0 * p.dihedral_excess * p.ball_volume / PI).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        CheckResult::above("density_increasing", min_step, 0.0),
        CheckResult::at_most("density_identity", identity, DENSITY_IDENTITY_TOL),
    ])
}

fn oracle_checks(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(f64, f64, f64)> = (0..ORACLE_SAMPLES)
        .map(|_| {
            (
                rng.gen_range(0.01..3.0),
                rng.gen_range(-PI..PI),
                rng.gen_range(0.0..3.0),
            )
        })
        .collect();
    let errors: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|&(l, theta, r)| {
            let iso = Loxodromic::new(l, theta)?;
            let d = displacement_at_radius(&iso, r)?;
            let oracle = (d - oracle_displacement(&iso, r)?).abs();
            // round trip only where the cylinder radius is well conditioned
            let roundtrip = if r > 0.05 {
                match tube_radius(&iso, d)? {
                    Some(back) => (back - r).abs(),
                    None => f64::INFINITY,
                }
            } else {
                0.0
            };
            Ok((oracle, roundtrip))
        })
        .collect::<Result<_>>()?;
    let max_oracle = errors.iter().map(|e| e.0).fold(0.0, f64::max);
    let max_roundtrip = errors.iter().map(|e| e.1).fold(0.0, f64::max);

    let mut residual: f64 = 0.0;
    for l in [1e-3, 0.01, 0.1, 0.5, 1.0, 3f64.ln(), 2.0, 5.0, 10.0] {
        let r = collar_radius(l)?;
        let lhs = 1.0 / (1.0 + l.exp()) + 1.0 / (1.0 + (2.0 * r).exp());
        residual = residual.max((lhs - 0.5).abs());
    }
    let l = 0.01;
    let asymptotic = ((2.0 * collar_radius(l)?).exp() * l / 4.0 - 1.0).abs();
    Ok(vec![
        CheckResult::at_most("displacement_oracle", max_oracle, ORACLE_TOL),
        CheckResult::at_most("tube_radius_roundtrip", max_roundtrip, TUBE_ROUNDTRIP_TOL),
        CheckResult::at_most("collar_residual", residual, COLLAR_RESIDUAL_TOL),
        CheckResult::at_most("collar_asymptotic", asymptotic, COLLAR_ASYMPTOTIC_TOL),
    ])
}

/// A random feasible budget: `m < k` loops, each with `1/(1 + e^λ) < 1/(2k)`.
pub fn random_budget<R: Rng>(rng: &mut R) -> DisplacementBudget {
    let k = rng.gen_range(2..=8u32);
    let m = rng.gen_range(0..k);
    let floor = (2.0 * k as f64).ln();
    let lengths = (0..m).map(|_| floor + rng.gen_range(0.0..6.0)).collect();
    DisplacementBudget::new(k, lengths).expect("valid budget")
}

fn budget_checks(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0d6e7);
    let mut worst: f64 = 0.0;
    for _ in 0..BUDGET_SAMPLES {
        let b = random_budget(&mut rng);
        let diff = match (min_distance_rho(&b)?, min_distance_rho_bisect(&b)?) {
            (RhoBound::Finite(a), RhoBound::Finite(c)) => (a - c).abs(),
            (RhoBound::Divergent, RhoBound::Divergent) => 0.0,
            _ => f64::INFINITY,
        };
        worst = worst.max(diff);
    }
    let exact = match min_distance_rho(&DisplacementBudget::new(2, vec![])?)? {
        RhoBound::Finite(rho) => (rho - 0.5 * 3f64.ln()).abs(),
        RhoBound::Divergent => f64::INFINITY,
    };
    Ok(vec![
        CheckResult::at_most("budget_closed_form_vs_bisection", worst, BUDGET_TOL),
        CheckResult::at_most("budget_k2_m0", exact, BUDGET_EXACT_TOL),
    ])
}

fn limit_checks(c: &PaperConstants, quad_tol: f64) -> Result<Vec<CheckResult>> {
    let p12 = packing_profile(12.0, quad_tol)?;
    let shell_limit = 0.5 * 1.5f64.ln();
    let barycenter = IdealTetrahedron::barycenter_horoball_distances()
        .iter()
        .map(|d| (d - shell_limit).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        CheckResult::at_most("tau_ideal_limit", (p12.simplex_volume - c.v_ideal).abs(), TAU_LIMIT_TOL),
        CheckResult::at_most("shell_limit", (p12.shell - shell_limit).abs(), SHELL_LIMIT_TOL),
        CheckResult::at_most("barycenter_distance", barycenter, BARYCENTER_TOL),
    ])
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntegerMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntegerMatrix::new(rows, cols, entries).expect("consistent dimensions")
}

/// Number of ways the Smith form of `a` violates its contract.
pub fn smith_violations(a: &IntegerMatrix) -> Result<usize> {
    let s = smith_normal_form(a);
    let mut bad = 0;
    if s.u.mul(a)?.mul(&s.v)? != s.d {
        bad += 1;
    }
    if !s.u.is_unimodular() || !s.v.is_unimodular() {
        bad += 1;
    }
    let off_diagonal = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .any(|(i, j)| i != j && *s.d.get(i, j) != BigInt::from(0));
    if off_diagonal {
        bad += 1;
    }
    let divs = &s.divisors.divisors;
    if divs.iter().any(|d| *d <= BigInt::from(0)) || divs.windows(2).any(|w| &w[1] % &w[0] != BigInt::from(0)) {
        bad += 1;
    }
    for p in [2, 3, 5] {
        if mod_p_dim(&s.divisors, p)? != mod_p_dim_direct(a, p)? {
            bad += 1;
        }
    }
    Ok(bad)
}

/// A random presentation with peripheral data whose longitude dies mod `p`,
/// filled along `λ + p·n·μ`. Returns the mod-`p` dimensions before and after.
pub fn random_filling<R: Rng>(rng: &mut R) -> Result<(u64, usize, usize)> {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let cols = rng.gen_range(1..=5);
    let rows = rng.gen_range(0..=4);
    let entries: Vec<BigInt> = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
    let a = IntegerMatrix::new(rows, cols, entries)?;
    // λ = p·w + (combination of relations), zero in H₁(·; Z_p)
    let mut lambda: Vec<BigInt> = (0..cols)
        .map(|_| BigInt::from(p as i64 * rng.gen_range(-3..=3)))
        .collect();
    for i in 0..rows {
        let c = BigInt::from(rng.gen_range(-2..=2));
        for (j, l) in lambda.iter_mut().enumerate() {
            *l += &c * a.get(i, j);
        }
    }
    let mu = (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
    let per = PeripheralData::new(lambda, mu)?;
    let n = rng.gen_range(-5..=5i64);
    let filled = fill_slope(&a, &per, 1, p as i64 * n)?;
    Ok((
        p,
        mod_p_dim(&smith_normal_form(&a).divisors, p)?,
        mod_p_dim(&smith_normal_form(&filled).divisors, p)?,
    ))
}

/// The three stated gate examples with their expected results.
pub fn gate_examples() -> Result<Vec<(GateInput, GateResult)>> {
    Ok(vec![
        (GateInput::new([(2, 5)].into_iter().collect(), None, 3)?, GateResult::ASatisfied),
        (GateInput::new([(2, 4)].into_iter().collect(), Some(1), 3)?, GateResult::BSatisfied),
        (GateInput::new([(2, 3)].into_iter().collect(), Some(0), 3)?, GateResult::Neither),
    ])
}

fn homology_checks(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a17);
    let matrices: Vec<IntegerMatrix> = (0..SNF_SAMPLES).map(|_| random_matrix(&mut rng, 6, 9)).collect();
    let snf_bad: usize = matrices
        .par_iter()
        .map(smith_violations)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    let mut filling_bad = 0;
    for _ in 0..FILLING_SAMPLES {
        let (_, before, after) = random_filling(&mut rng)?;
        if before != after {
            filling_bad += 1;
        }
    }
    let gate_bad = gate_examples()?
        .iter()
        .filter(|(input, expected)| hypothesis_gate(input) != *expected)
        .count();
    Ok(vec![
        CheckResult::at_most("smith_normal_form_suite", snf_bad as f64, 0.0),
        CheckResult::at_most("filling_transport", filling_bad as f64, 0.0),
        CheckResult::at_most("gate_examples", gate_bad as f64, 0.0),
    ])
}

/// Everything `verify` computes before it is turned into a report.
pub struct Verification {
    pub constants: PaperConstants,
    pub case_report: CaseAnalysisReport,
    pub report: CertificationReport,
}

pub fn run_verify(opts: &VerifyOptions) -> Result<Verification> {
    let constants = paper_constants(opts.quad_tol)?;
    let half_log3 = packing_profile(0.5 * 3f64.ln(), opts.quad_tol)?;
    let case_report = global_minimum(&constants, opts.grid_step)?;

    let mut checks = constant_checks(&constants, &half_log3, opts.tol);
    checks.extend(case_floor_checks(&constants, &case_report));
    checks.extend(headline_checks(&constants, &case_report));
    checks.extend(density_checks(opts.quad_tol)?);
    checks.extend(oracle_checks(opts.seed)?);
    checks.extend(budget_checks(opts.seed)?);
    checks.extend(limit_checks(&constants, opts.quad_tol)?);
    checks.extend(homology_checks(opts.seed)?);

    let report = CertificationReport::new(&case_report, checks)?;
    Ok(Verification {
        constants,
        case_report,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_semantics() {
        assert!(truncation_error(1.9318, 1.931, 5e-4) <= 5e-4);
        assert!(truncation_error(1.931, 1.931, 5e-4) <= 5e-4);
        assert!(truncation_error(1.9309, 1.931, 5e-4) > 5e-4);
        assert!(truncation_error(1.9321, 1.931, 5e-4) > 5e-4);
    }

    #[test]
    fn density_grid_endpoints() {
        let r = density_radii();
        assert_eq!(r.len(), 500);
        assert_eq!(r[0], 0.05);
        assert!((r[499] - 12.0).abs() < 1e-15);
    }

    #[test]
    fn random_budgets_are_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let b = random_budget(&mut rng);
            assert!(b.loop_sum() < 0.5);
        }
    }

    #[test]
    fn filling_samples_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (_, before, after) = random_filling(&mut rng).unwrap();
            assert_eq!(before, after);
        }
    }
}
