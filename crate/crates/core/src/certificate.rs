//! Case analysis of the volume lower bound.
//!
//! The cusp volume is `π β` with `1 < β < 2`, and a thick point sits at
//! distance at least `r_β = −½ log((3/2)(β − 1))` from the `log √(3/2)`
//! neighborhood of the cusp. Depending on `r_β` one of five branch formulas
//! bounds the volume from below; this module evaluates them, classifies `β`,
//! sweeps `β` over `(1, 2)` and reports the infimum of every branch.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{finite, Error, Result};
use crate::optimize::golden_section;
use crate::packing::{ball_volume, cusp_shell_lower_bound, sinh_minus_id, PaperConstants};

/// Every certified branch must bound the volume strictly above this value.
pub const VOLUME_FLOOR: f64 = 5.06;

/// Bracket width at which golden-section refinement stops.
pub const REFINE_XTOL: f64 = 1e-12;

/// A branch of the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// `vol H ≥ 2π`.
    CuspLarge,
    I,
    II,
    III,
    IVA,
    IVB,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::CuspLarge,
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IVA,
        CaseId::IVB,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::CuspLarge => "CUSP_LARGE",
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IVA => "IVA",
            CaseId::IVB => "IVB",
        }
    }

    pub fn formula_tag(self) -> &'static str {
        match self {
            CaseId::CuspLarge => "2*pi/d_inf",
            CaseId::I => "pi*beta/d_inf",
            CaseId::II => "f(beta-1)",
            CaseId::III => "pi*beta/d_inf + B(log3/2)",
            CaseId::IVA => "g(beta-1)",
            CaseId::IVB => "C2 + pi*beta/d_inf + B(log3/2)",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case id {s:?}")))
    }
}

/// An interval of β values with explicit endpoint membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl BetaInterval {
    pub fn contains(&self, beta: f64) -> bool {
        let above = if self.lo_closed { beta >= self.lo } else { beta > self.lo };
        let below = if self.hi_closed { beta <= self.hi } else { beta < self.hi };
        above && below
    }
}

impl fmt::Display for BetaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// The bound supplied by one branch at one β.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseBound {
    pub case_id: CaseId,
    pub beta_interval: BetaInterval,
    pub bound_value: f64,
    pub formula_tag: String,
}

/// β thresholds separating the branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseThresholds {
    /// `r_β = 0`: β = 5/3.
    pub i: f64,
    /// `r_β = (log 3)/2`: β = 11/9.
    pub ii: f64,
    /// `r_β = h₃((log 3)/2)`: β = 1 + (2/3)C₁⁻².
    pub iii: f64,
    /// `r_β = h₃((log 3)/2) + log 3`: β = 1 + (2/27)C₁⁻².
    pub iv: f64,
    /// The IV(A)/IV(B) boundary as printed inline, 1 + (2/9)C₁⁻².
    pub iv_inline: f64,
}

impl CaseThresholds {
    pub fn new(c: &PaperConstants) -> Self {
        let inv_c1_sq = 1.0 / (c.c1 * c.c1);
        Self {
            i: 5.0 / 3.0,
            ii: 11.0 / 9.0,
            iii: 1.0 + 2.0 / 3.0 * inv_c1_sq,
            iv: 1.0 + 2.0 / 27.0 * inv_c1_sq,
            iv_inline: 1.0 + 2.0 / 9.0 * inv_c1_sq,
        }
    }

    pub fn interval(&self, case: CaseId) -> BetaInterval {
        let half_open = |lo, hi| BetaInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        };
        match case {
            CaseId::CuspLarge => half_open(2.0, f64::INFINITY),
            CaseId::I => half_open(self.i, 2.0),
            CaseId::II => half_open(self.ii, self.i),
            CaseId::III => half_open(self.iii, self.ii),
            CaseId::IVA => half_open(self.iv, self.iii),
            CaseId::IVB => BetaInterval {
                lo: 1.0,
                hi: self.iv,
                lo_closed: false,
                hi_closed: false,
            },
        }
    }
}

/// `r_β = −½ log((3/2)(β − 1))`.
pub fn r_beta(beta: f64) -> Result<f64> {
    finite("beta", beta)?;
    if !(beta > 1.0 && beta < 2.0) {
        return Err(Error::Domain {
            what: "beta",
            value: beta,
            domain: "(1, 2)",
        });
    }
    Ok(-0.5 * (1.5 * (beta - 1.0)).ln())
}

/// `s_β = ½(r_β − h₃((log 3)/2))`.
pub fn s_beta(beta: f64, c: &PaperConstants) -> Result<f64> {
    Ok(0.5 * (r_beta(beta)? - c.h3_half_log3()))
}

/// Assigns β to its branch. The β thresholds are the images of the `r_β`
/// thresholds `{0, (log 3)/2, log C₁, log C₁ + log 3}`.
pub fn classify_case(beta: f64, c: &PaperConstants) -> Result<CaseId> {
    finite("beta", beta)?;
    if !(beta > 1.0) {
        return Err(Error::Domain {
            what: "beta",
            value: beta,
            domain: "(1, inf)",
        });
    }
    let t = CaseThresholds::new(c);
    Ok(if beta >= 2.0 {
        CaseId::CuspLarge
    } else if beta >= t.i {
        CaseId::I
    } else if beta >= t.ii {
        CaseId::II
    } else if beta >= t.iii {
        CaseId::III
    } else if beta >= t.iv {
        CaseId::IVA
    } else {
        CaseId::IVB
    })
}

/// `f(x) = π((x + 1)/d(∞) − ¾x + ⅓x⁻¹ + log((3/2)x))`, the Case II bound at `x = β − 1`.
pub fn case_f(x: f64, c: &PaperConstants) -> f64 {
    PI * ((x + 1.0) / c.d_inf - 0.75 * x + 1.0 / (3.0 * x) + (1.5 * x).ln())
}

/// `q(y) = −⅓y² + y + (1/d(∞) − ¾)`; `f'(x) = π q(1/x)`.
pub fn quadratic_q(y: f64, c: &PaperConstants) -> f64 {
    -y * y / 3.0 + y + (1.0 / c.d_inf - 0.75)
}

pub fn case_f_derivative(x: f64, c: &PaperConstants) -> f64 {
    PI * quadratic_q(1.0 / x, c)
}

/// The positive root `(3/2)(1 + √(4/(3 d(∞))))` of `q`.
pub fn q_positive_root(c: &PaperConstants) -> f64 {
    1.5 * (1.0 + (4.0 / (3.0 * c.d_inf)).sqrt())
}

/// Minimizer `x* = 1 / q_positive_root` of `f`.
pub fn f_minimizer(c: &PaperConstants) -> f64 {
    2.0 / (3.0 * (1.0 + (4.0 / (3.0 * c.d_inf)).sqrt()))
}

/// The Case IV(A) bound at `x = β − 1`:
/// `g(x) = (π/2)(C₁⁻¹u^{-1/2} − C₁u^{1/2} + log u + 2 log C₁ + (2/d(∞))(x + 1)) + C₂`
/// with `u = (3/2)x`.
pub fn case_g(x: f64, c: &PaperConstants) -> f64 {
    let u = 1.5 * x;
    let su = u.sqrt();
    0.5 * PI * (1.0 / (c.c1 * su) - c.c1 * su + u.ln() + 2.0 * c.c1.ln() + 2.0 / c.d_inf * (x + 1.0))
        + c.c2
}

/// Exact derivative of [`case_g`].
pub fn case_g_derivative(x: f64, c: &PaperConstants) -> f64 {
    let u = 1.5 * x;
    let su = u.sqrt();
    // d/dx of each term, with du/dx = 3/2
    0.5 * PI
        * (-0.75 / (c.c1 * u * su) - 0.75 * c.c1 / su + 1.0 / x + 2.0 / c.d_inf)
}

/// `c(y) = −¾C₁⁻¹y³ + ⅔y² − ¾C₁y + 2/d(∞)`.
pub fn cubic_c(y: f64, c: &PaperConstants) -> f64 {
    -0.75 / c.c1 * y * y * y + 2.0 / 3.0 * y * y - 0.75 * c.c1 * y + 2.0 / c.d_inf
}

/// The roots `A = (8/9)C₁` and `B = 8/(3 d(∞) C₁)` of the factored form
/// `c(y) = −¾C₁⁻¹y²(y − A) − ¾C₁(y − B)`.
pub fn cubic_factor_roots(c: &PaperConstants) -> (f64, f64) {
    (8.0 / 9.0 * c.c1, 8.0 / (3.0 * c.d_inf * c.c1))
}

/// The branch formula of `case` evaluated at `beta`, whether or not `beta`
/// lies in that branch's interval.
pub fn branch_bound(case: CaseId, beta: f64, c: &PaperConstants) -> f64 {
    let b_half_log3 = ball_volume(0.5 * 3f64.ln());
    let cusp = PI * beta / c.d_inf;
    match case {
        CaseId::CuspLarge => 2.0 * PI / c.d_inf,
        CaseId::I => cusp,
        CaseId::II => case_f(beta - 1.0, c),
        CaseId::III => cusp + b_half_log3,
        CaseId::IVA => case_g(beta - 1.0, c),
        CaseId::IVB => c.c2 + cusp + b_half_log3,
    }
}

/// Case II bound computed from its geometric ingredients,
/// `π β / d(∞) + B(r_β)`, independently of the algebraic form of `f`.
pub fn case_ii_from_ball(beta: f64, c: &PaperConstants) -> Result<f64> {
    Ok(PI * beta / c.d_inf + PI * sinh_minus_id(2.0 * r_beta(beta)?))
}

/// Case IV(A) bound from its ingredients, `C₂ + π β / d(∞) + B(s_β)`.
pub fn case_iva_from_ball(beta: f64, c: &PaperConstants) -> Result<f64> {
    Ok(c.c2 + PI * beta / c.d_inf + ball_volume(s_beta(beta, c)?))
}

/// Classifies β and evaluates its branch bound.
pub fn case_volume_bound(beta: f64, c: &PaperConstants) -> Result<CaseBound> {
    let case_id = classify_case(beta, c)?;
    let bound_value = match case_id {
        CaseId::CuspLarge => cusp_shell_lower_bound(2.0 * PI, c)?,
        other => branch_bound(other, beta, c),
    };
    Ok(CaseBound {
        case_id,
        beta_interval: CaseThresholds::new(c).interval(case_id),
        bound_value,
        formula_tag: case_id.formula_tag().to_string(),
    })
}

/// Per-β bounds on `beta_min, beta_min + step, …` up to `beta_max`, in grid order.
pub fn sweep(c: &PaperConstants, beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<(f64, CaseBound)>> {
    finite("beta_min", beta_min)?;
    finite("beta_max", beta_max)?;
    finite("step", step)?;
    if !(step > 0.0) || !(beta_min > 1.0) || beta_max < beta_min {
        return Err(Error::InvalidArgument(format!(
            "sweep needs 1 < beta_min <= beta_max and step > 0 (got {beta_min}, {beta_max}, {step})"
        )));
    }
    let count = ((beta_max - beta_min) / step * (1.0 + 1e-12)).floor() as usize + 1;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let beta = beta_min + i as f64 * step;
            case_volume_bound(beta, c).map(|b| (beta, b))
        })
        .collect()
}

/// The infimum of one branch over its β interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseInfimum {
    pub bound: CaseBound,
    /// β at which the infimum is attained, or the excluded endpoint it approaches.
    pub argmin_beta: f64,
    /// True when the infimum sits at an endpoint that is not in the interval.
    pub at_excluded_endpoint: bool,
}

impl CaseInfimum {
    pub fn case_id(&self) -> CaseId {
        self.bound.case_id
    }

    pub fn infimum(&self) -> f64 {
        self.bound.bound_value
    }
}

/// Branch minima near the disputed IV(A)/IV(B) boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliverCheck {
    pub lo: f64,
    pub hi: f64,
    pub min_iva: f64,
    pub min_ivb: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseAnalysisReport {
    pub constants: PaperConstants,
    pub per_case: Vec<CaseInfimum>,
    pub global_min: f64,
    pub global_case: CaseId,
    pub grid_step: f64,
    pub sliver: SliverCheck,
}

impl CaseAnalysisReport {
    pub fn case(&self, id: CaseId) -> Option<&CaseInfimum> {
        self.per_case.iter().find(|c| c.case_id() == id)
    }

    /// Branches whose infimum does not clear [`VOLUME_FLOOR`].
    pub fn failing_cases(&self) -> Vec<CaseId> {
        let mut failing: Vec<CaseId> = self
            .per_case
            .iter()
            .filter(|c| !(c.infimum() > VOLUME_FLOOR))
            .map(|c| c.case_id())
            .collect();
        if !(self.sliver.min_iva > VOLUME_FLOOR && self.sliver.min_ivb > VOLUME_FLOOR)
            && !failing.contains(&CaseId::IVA)
        {
            failing.push(CaseId::IVA);
        }
        failing
    }

    pub fn is_certified(&self) -> bool {
        self.failing_cases().is_empty()
    }

    /// `Ok` when every branch clears the floor, else a certification error
    /// naming the failing branches.
    pub fn certify(&self) -> Result<()> {
        let failing = self.failing_cases();
        if failing.is_empty() {
            return Ok(());
        }
        let detail: Vec<String> = failing
            .iter()
            .map(|id| match self.case(*id) {
                Some(ci) => format!("{id} infimum {} at beta {}", ci.infimum(), ci.argmin_beta),
                None => id.to_string(),
            })
            .collect();
        Err(Error::Certification(format!(
            "bound <= {VOLUME_FLOOR} in {}",
            detail.join("; ")
        )))
    }
}

/// Minimum of `case`'s formula over `[lo, hi]`: grid scan at `step`, golden-section
/// refinement around the best grid point, and both endpoints as candidates.
fn branch_minimum(case: CaseId, lo: f64, hi: f64, step: f64, c: &PaperConstants) -> Result<(f64, f64)> {
    let eval = |b: f64| branch_bound(case, b, c);
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let grid: Vec<(f64, f64)> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let b = if i == n { hi } else { lo + i as f64 * step };
            (b, eval(b))
        })
        .collect();
    let best = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let a = grid[best.saturating_sub(1)].0;
    let b = grid[(best + 1).min(n)].0;
    let mut candidate = (grid[best].0, grid[best].1);
    if a < b {
        let m = golden_section(eval, a, b, REFINE_XTOL)?;
        if m.value < candidate.1 {
            candidate = (m.x, m.value);
        }
    }
    Ok(candidate)
}

/// Sweeps β over `(1, 2)` at `grid_step`, refines each branch minimum and
/// returns the infima. Excluded endpoints are evaluated as limits and flagged.
pub fn global_minimum(c: &PaperConstants, grid_step: f64) -> Result<CaseAnalysisReport> {
    finite("grid_step", grid_step)?;
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::Domain {
            what: "grid_step",
            value: grid_step,
            domain: "(0, 1e-3]",
        });
    }
    let thresholds = CaseThresholds::new(c);
    let mut per_case = Vec::with_capacity(CaseId::ALL.len());
    for case in CaseId::ALL {
        let interval = thresholds.interval(case);
        let (argmin_beta, value) = if case == CaseId::CuspLarge {
            (2.0, branch_bound(case, 2.0, c))
        } else {
            branch_minimum(case, interval.lo, interval.hi, grid_step, c)?
        };
        let at_excluded_endpoint = (argmin_beta == interval.lo && !interval.lo_closed)
            || (argmin_beta == interval.hi && !interval.hi_closed);
        per_case.push(CaseInfimum {
            bound: CaseBound {
                case_id: case,
                beta_interval: interval,
                bound_value: value,
                formula_tag: case.formula_tag().to_string(),
            },
            argmin_beta,
            at_excluded_endpoint,
        });
    }
    let global = per_case
        .iter()
        .filter(|ci| ci.case_id() != CaseId::CuspLarge)
        .min_by(|a, b| a.infimum().total_cmp(&b.infimum()))
        .expect("five finite branches");
    let (global_min, global_case) = (global.infimum(), global.case_id());

    let (lo, hi) = (thresholds.iv, thresholds.iv_inline);
    let sliver = SliverCheck {
        lo,
        hi,
        min_iva: branch_minimum(CaseId::IVA, lo, hi, grid_step, c)?.1,
        min_ivb: branch_minimum(CaseId::IVB, lo, hi, grid_step, c)?.1,
    };

    Ok(CaseAnalysisReport {
        constants: *c,
        per_case,
        global_min,
        global_case,
        grid_step,
        sliver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // closed-form d(∞) = √3/(2 V_ideal); the branch algebra does not depend on
    // how the constants were obtained
    fn constants() -> PaperConstants {
        PaperConstants {
            d_inf: 0.853276088314080804,
            c1: 1.931851652578136573,
            c2: 0.929781307592634420,
            k3_inf: 0.5 * 1.5f64.ln(),
            v_ideal: 1.014941606409653625,
        }
    }

    #[test]
    fn r_beta_examples() {
        assert!(r_beta(5.0 / 3.0).unwrap().abs() < 1e-16);
        assert!((r_beta(11.0 / 9.0).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
        let c = constants();
        let b = 1.0 + 2.0 / 3.0 / (c.c1 * c.c1);
        assert!((r_beta(b).unwrap() - c.c1.ln()).abs() < 1e-15);
        assert!(r_beta(1.0).is_err());
        assert!(r_beta(2.0).is_err());
        assert!(r_beta(1.3).unwrap() > r_beta(1.4).unwrap());
    }

    #[test]
    fn classify_examples() {
        let c = constants();
        assert_eq!(classify_case(1.8, &c).unwrap(), CaseId::I);
        assert_eq!(classify_case(1.3, &c).unwrap(), CaseId::II);
        assert_eq!(classify_case(1.2, &c).unwrap(), CaseId::III);
        assert_eq!(classify_case(1.1, &c).unwrap(), CaseId::IVA);
        assert_eq!(classify_case(1.01, &c).unwrap(), CaseId::IVB);
        assert_eq!(classify_case(2.0, &c).unwrap(), CaseId::CuspLarge);
        assert_eq!(classify_case(5.0 / 3.0, &c).unwrap(), CaseId::I);
        assert!(classify_case(1.0, &c).is_err());
        // 1.01 is IVB because r_β exceeds h₃ + log 3
        assert!(r_beta(1.01).unwrap() > c.c1.ln() + 3f64.ln());
    }

    #[test]
    fn classification_agrees_with_r_beta_thresholds() {
        let c = constants();
        let h3 = c.c1.ln();
        let l3 = 3f64.ln();
        for i in 1..2000 {
            let beta = 1.0 + i as f64 * 0.0005;
            if beta >= 2.0 {
                break;
            }
            let r = r_beta(beta).unwrap();
            let expected = if r <= 0.0 {
                CaseId::I
            } else if r <= 0.5 * l3 {
                CaseId::II
            } else if r <= h3 {
                CaseId::III
            } else if r <= h3 + l3 {
                CaseId::IVA
            } else {
                CaseId::IVB
            };
            assert_eq!(classify_case(beta, &c).unwrap(), expected, "beta={beta}");
        }
    }

    #[test]
    fn intervals_partition_the_range() {
        let t = CaseThresholds::new(&constants());
        for i in 1..20_000 {
            let beta = 1.0 + i as f64 * 5e-5;
            let hits = CaseId::ALL
                .iter()
                .filter(|&&c| t.interval(c).contains(beta))
                .count();
            assert_eq!(hits, 1, "beta={beta}");
        }
        for b in [t.i, t.ii, t.iii, t.iv, 2.0] {
            let hits = CaseId::ALL.iter().filter(|&&c| t.interval(c).contains(b)).count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn f_derivative_is_q() {
        let c = constants();
        for x in [0.1, 0.2963, 0.5, 1.3] {
            let h = 1e-6;
            let fd = (case_f(x + h, &c) - case_f(x - h, &c)) / (2.0 * h);
            assert!((fd - case_f_derivative(x, &c)).abs() < 1e-6);
        }
        let y = q_positive_root(&c);
        assert!(quadratic_q(y, &c).abs() < 1e-14);
        assert!((f_minimizer(&c) - 1.0 / y).abs() < 1e-16);
        assert!(case_f_derivative(f_minimizer(&c), &c).abs() < 1e-12);
    }

    #[test]
    fn f_value_at_minimizer() {
        // 40-digit evaluation: f(x*) = 5.0612524695566623
        let c = constants();
        let v = case_f(f_minimizer(&c), &c);
        assert!((v - 5.061252469556662).abs() < 1e-13, "{v}");
    }

    #[test]
    fn case_ii_formula_matches_ball_volume_form() {
        let c = constants();
        for i in 0..50 {
            let beta = 11.0 / 9.0 + i as f64 * (5.0 / 3.0 - 11.0 / 9.0) / 50.0;
            let a = case_f(beta - 1.0, &c);
            let b = case_ii_from_ball(beta, &c).unwrap();
            assert!((a - b).abs() < 1e-10, "beta={beta}: {a} vs {b}");
        }
    }

    #[test]
    fn case_iva_formula_matches_ball_volume_form() {
        let c = constants();
        let t = CaseThresholds::new(&c);
        for i in 0..50 {
            let beta = t.iv + i as f64 * (t.iii - t.iv) / 50.0;
            let a = case_g(beta - 1.0, &c);
            let b = case_iva_from_ball(beta, &c).unwrap();
            assert!((a - b).abs() < 1e-10, "beta={beta}: {a} vs {b}");
        }
    }

    #[test]
    fn g_at_case_iv_threshold() {
        let c = constants();
        let x = 2.0 / 3.0 / (c.c1 * c.c1);
        let expected = PI / c.d_inf * (1.0 + x) + c.c2;
        assert!((case_g(x, &c) - expected).abs() < 1e-13);
        assert!((expected - 5.269272570290245).abs() < 1e-12);
    }

    #[test]
    fn g_derivative_matches_finite_differences() {
        let c = constants();
        for x in [0.02, 0.06, 0.1, 0.17, 0.3] {
            let h = 1e-7;
            let fd = (case_g(x + h, &c) - case_g(x - h, &c)) / (2.0 * h);
            assert!((fd - case_g_derivative(x, &c)).abs() < 1e-5, "x={x}");
        }
    }

    #[test]
    fn displayed_cubic_is_not_the_derivative_of_g() {
        // The cubic and its factorization are as displayed, but (π/2)c(√(3/(2x)))
        // is negative on (0, 3/8) while g′ changes sign near x ≈ 0.066.
        let c = constants();
        let (a, b) = cubic_factor_roots(&c);
        assert!((a - 1.717).abs() < 1e-3 && (b - 1.617).abs() < 1e-3);
        for y in [0.5, 1.0, 2.5, 4.0] {
            let factored = -0.75 / c.c1 * y * y * (y - a) - 0.75 * c.c1 * (y - b);
            assert!((factored - cubic_c(y, &c)).abs() < 1e-12);
        }
        assert!(cubic_c(2.5, &c) < 0.0);
        let claimed = 0.5 * PI * cubic_c((3.0 / (2.0 * 0.1f64)).sqrt(), &c);
        assert!(claimed < 0.0);
        assert!(case_g_derivative(0.1, &c) > 0.0);
        assert!(case_g_derivative(0.03, &c) < 0.0);
    }

    #[test]
    fn case_bound_examples() {
        let c = constants();
        let b = case_volume_bound(5.0 / 3.0, &c).unwrap();
        assert_eq!(b.case_id, CaseId::I);
        assert!(b.bound_value > 6.0);
        let b3 = 1.0 + 2.0 / 3.0 / (c.c1 * c.c1);
        let b = case_volume_bound(b3, &c).unwrap();
        assert_eq!(b.case_id, CaseId::III);
        assert!(b.bound_value > 5.07);
        let limit = branch_bound(CaseId::IVB, 1.0, &c);
        assert!((limit - 5.348980098037194).abs() < 1e-12);
        let big = case_volume_bound(2.5, &c).unwrap();
        assert_eq!(big.case_id, CaseId::CuspLarge);
        assert!((big.bound_value - 7.363601761762742).abs() < 1e-12);
    }

    #[test]
    fn sweep_is_in_grid_order() {
        let c = constants();
        let rows = sweep(&c, 1.001, 1.999, 1e-3).unwrap();
        assert_eq!(rows.len(), 999);
        assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(sweep(&c, 1.0, 1.5, 1e-3).is_err());
        assert!(sweep(&c, 1.5, 1.4, 1e-3).is_err());
    }

    #[test]
    fn case_id_roundtrip() {
        for id in CaseId::ALL {
            assert_eq!(id.label().parse::<CaseId>().unwrap(), id);
        }
        assert!("V".parse::<CaseId>().is_err());
    }
}
