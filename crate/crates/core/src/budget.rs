//! Displacement budgets for k-free groups.
//!
//! For `k` independent elements moving a basepoint by `d₁, …, d_k` the sum
//! `Σ 1/(1 + e^{d_j})` is at most ½. Fixing `m` of the displacements (loop
//! lengths `λ_j`) and bounding the remaining `k − m` by `2ρ` yields a lower
//! bound on `ρ`, the distance to a thick point.

use crate::error::{finite, Error, Result};
use crate::hyperbolic::prime_radius;
use crate::optimize::bisect;

/// Slack allowed when testing the ½ budget for equality.
pub const LOG_INEQUALITY_SLACK: f64 = 1e-15;

/// The `(k, m, λ₁..λ_m)` data of a displacement budget.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementBudget {
    k: u32,
    loop_lengths: Vec<f64>,
}

impl DisplacementBudget {
    pub fn new(k: u32, loop_lengths: Vec<f64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("freeness rank k = {k} must be at least 2")));
        }
        if loop_lengths.len() > k as usize {
            return Err(Error::InvalidArgument(format!(
                "m = {} loops exceed freeness rank k = {k}",
                loop_lengths.len()
            )));
        }
        for &l in &loop_lengths {
            finite("loop length", l)?;
            if !(l > 0.0) {
                return Err(Error::Domain {
                    what: "loop length",
                    value: l,
                    domain: "(0, inf)",
                });
            }
        }
        Ok(Self { k, loop_lengths })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.loop_lengths.len() as u32
    }

    pub fn loop_lengths(&self) -> &[f64] {
        &self.loop_lengths
    }

    /// Number of displacements bounded by `2ρ`.
    pub fn free_slots(&self) -> u32 {
        self.k - self.m()
    }

    /// `S = Σ 1/(1 + e^{λ_j})`.
    pub fn loop_sum(&self) -> f64 {
        self.loop_lengths.iter().map(|&l| logistic_tail(l)).sum()
    }
}

/// `1/(1 + e^x)`, safe for large `x`.
pub fn logistic_tail(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Guaranteed distance from the basepoint to a thick point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoBound {
    Finite(f64),
    /// The loop terms use up the whole budget; no finite `ρ` is forced and
    /// the bound is +∞.
    Divergent,
}

impl RhoBound {
    pub fn finite(self) -> Option<f64> {
        match self {
            RhoBound::Finite(x) => Some(x),
            RhoBound::Divergent => None,
        }
    }
}

/// `(k − m)/(1 + e^{2ρ}) + Σ 1/(1 + e^{λ_j})`.
pub fn budget_lhs(b: &DisplacementBudget, rho: f64) -> Result<f64> {
    finite("rho", rho)?;
    if rho < 0.0 {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
            domain: "[0, inf)",
        });
    }
    Ok(b.free_slots() as f64 * logistic_tail(2.0 * rho) + b.loop_sum())
}

/// Smallest `ρ ≥ 0` with `budget_lhs(b, ρ) ≤ ½`, in closed form
/// `ρ* = max(0, ½ log((k − m)/(½ − S) − 1))`.
pub fn min_distance_rho(b: &DisplacementBudget) -> Result<RhoBound> {
    let loop_sum = b.loop_sum();
    let slots = b.free_slots();
    if slots == 0 {
        return if loop_sum <= 0.5 + LOG_INEQUALITY_SLACK {
            Ok(RhoBound::Finite(0.0))
        } else {
            Err(Error::Degenerate { loop_sum })
        };
    }
    let slack = 0.5 - loop_sum;
    if slack < 0.0 {
        return Err(Error::Infeasible { loop_sum });
    }
    if slack == 0.0 {
        return Ok(RhoBound::Divergent);
    }
    let ratio = slots as f64 / slack - 1.0;
    if ratio <= 1.0 {
        return Ok(RhoBound::Finite(0.0));
    }
    Ok(RhoBound::Finite(0.5 * ratio.ln()))
}

/// The same minimal `ρ`, located by bisection on
/// `(k − m)/(1 + e^{2ρ}) − (½ − S)` instead of the closed form.
pub fn min_distance_rho_bisect(b: &DisplacementBudget) -> Result<RhoBound> {
    let loop_sum = b.loop_sum();
    let slots = b.free_slots();
    if slots == 0 {
        return if loop_sum <= 0.5 + LOG_INEQUALITY_SLACK {
            Ok(RhoBound::Finite(0.0))
        } else {
            Err(Error::Degenerate { loop_sum })
        };
    }
    let slack = 0.5 - loop_sum;
    if slack < 0.0 {
        return Err(Error::Infeasible { loop_sum });
    }
    if slack == 0.0 {
        return Ok(RhoBound::Divergent);
    }
    let excess = |rho: f64| slots as f64 * logistic_tail(2.0 * rho) - slack;
    if excess(0.0) <= 0.0 {
        return Ok(RhoBound::Finite(0.0));
    }
    let mut hi = 1.0;
    while excess(hi) > 0.0 {
        hi *= 2.0;
    }
    bisect(excess, 0.0, hi, 0.0).map(RhoBound::Finite)
}

/// Outcome of the tube-based distance estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopeyeBound {
    pub prime_radius: f64,
    pub rho: RhoBound,
    /// Whether `l < μ` held for the supplied Margulis number, when one was given.
    pub below_margulis: Option<bool>,
}

/// Distance from a short geodesic of length `l` with maximal tube radius `R`
/// to a thick point: `R' = prime_radius(R, l)`, then the budget with loops
/// `(l, 2R')`.
pub fn popeye_rho(k: u32, l: f64, big_r: f64, margulis: Option<f64>) -> Result<PopeyeBound> {
    let rp = prime_radius(big_r, l)?;
    let budget = DisplacementBudget::new(k, vec![l, 2.0 * rp])?;
    Ok(PopeyeBound {
        prime_radius: rp,
        rho: min_distance_rho(&budget)?,
        below_margulis: margulis.map(|mu| l < mu),
    })
}

/// Lower bound `−½ log((β − 1)/(k − 2))` for the distance from the thick
/// point to the maximal cusp neighborhood.
pub fn cusp_distance_bound(beta: f64, k: u32) -> Result<f64> {
    finite("beta", beta)?;
    if !(beta > 1.0 && beta < 2.0) {
        return Err(Error::Domain {
            what: "beta",
            value: beta,
            domain: "(1, 2)",
        });
    }
    if k < 3 {
        return Err(Error::InvalidArgument(format!("freeness rank k = {k} must be at least 3")));
    }
    Ok(-0.5 * ((beta - 1.0) / (k - 2) as f64).ln())
}

/// Whether `Σ 1/(1 + e^{d_j}) ≤ ½` (up to [`LOG_INEQUALITY_SLACK`]).
pub fn log_inequality_check(displacements: &[f64]) -> Result<bool> {
    if displacements.is_empty() {
        return Err(Error::InvalidArgument("no displacements given".into()));
    }
    for &d in displacements {
        finite("displacement", d)?;
        if !(d > 0.0) {
            return Err(Error::Domain {
                what: "displacement",
                value: d,
                domain: "(0, inf)",
            });
        }
    }
    let sum: f64 = displacements.iter().map(|&d| logistic_tail(d)).sum();
    Ok(sum <= 0.5 + LOG_INEQUALITY_SLACK)
}
