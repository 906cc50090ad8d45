//! Böröczky-style simplicial density functions for ball and horoball packings.
//!
//! For a regular simplex `Δ₃(r)` of edge `2r` with balls of radius `r` at its
//! vertices, this module evaluates the ball volume `B(r)`, the altitudes and
//! vertex-to-barycenter distances of the 2- and 3-dimensional regular
//! simplices, the dihedral angle `β(r)`, the simplex volume `τ(r)` (by
//! quadrature), the density `d(r)` and the shell width `k₃(r) = h₃(r) − r`.
//!
//! As `r → ∞`, `β(r) → π/3` and `(3β − π)·sinh 2r` is a product of a vanishing
//! and an exploding factor. Every quantity that feeds such a product is
//! computed from cancellation-free forms so the limit density can be read off
//! at `r = 12` to about ten digits.

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{finite, Error, Result};
use crate::hyperbolic::ModelPoint;
use crate::quadrature::integrate;

/// Quadrature tolerance used when none is given.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Radii at which the limit density is read off.
pub const STABILIZATION_RADII: [f64; 3] = [8.0, 10.0, 12.0];
/// Required agreement of successive stabilization values.
pub const STABILIZATION_TOL: f64 = 1e-6;
/// Required agreement of the stabilized value with `√3 / (2 V_ideal)`.
pub const LIMIT_CROSS_CHECK_TOL: f64 = 1e-5;

/// All density-related functions evaluated at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingProfile {
    pub r: f64,
    pub ball_volume: f64,
    pub altitude2: f64,
    pub vertex_to_barycenter2: f64,
    pub altitude3: f64,
    pub vertex_to_barycenter3: f64,
    /// Dihedral angle β(r) in radians.
    pub dihedral: f64,
    /// β(r) − π/3, carried separately because 3β − π cancels for large r.
    pub dihedral_excess: f64,
    pub simplex_volume: f64,
    pub density: f64,
    /// k₃(r) = h₃(r) − r.
    pub shell: f64,
    /// Error estimate reported by the quadrature for `simplex_volume`.
    pub quad_error: f64,
}

/// Named constants of the volume estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperConstants {
    /// Limit density d(∞) of horoball packings.
    pub d_inf: f64,
    /// exp(h₃((log 3)/2)).
    pub c1: f64,
    /// B((log 3)/2) / d((log 3)/2).
    pub c2: f64,
    /// k₃(∞) = log √(3/2).
    pub k3_inf: f64,
    /// Volume of the regular ideal tetrahedron.
    pub v_ideal: f64,
}

impl PaperConstants {
    /// h₃((log 3)/2) = log C₁.
    pub fn h3_half_log3(&self) -> f64 {
        self.c1.ln()
    }

    /// √3 / (2 V_ideal), the closed-form companion of `d_inf`.
    pub fn d_inf_closed_form(&self) -> f64 {
        3f64.sqrt() / (2.0 * self.v_ideal)
    }
}

/// `sinh x − x`, with a Taylor series near 0.
pub fn sinh_minus_id(x: f64) -> f64 {
    if x.abs() < 0.5 {
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum = term;
        let mut n = 3.0;
        while term.abs() > 1e-18 * sum.abs() {
            term *= x2 / ((n + 1.0) * (n + 2.0));
            sum += term;
            n += 2.0;
        }
        sum
    } else {
        x.sinh() - x
    }
}

/// Volume `π(sinh 2r − 2r)` of a hyperbolic ball of radius `r`.
pub fn ball_volume(r: f64) -> f64 {
    PI * sinh_minus_id(2.0 * r)
}

/// `arccosh(cosh p / cosh q)` for `p ≥ q ≥ 0` without forming the ratio − 1.
fn arccosh_ratio(p: f64, q: f64) -> f64 {
    let excess = 2.0 * (0.5 * (p + q)).sinh() * (0.5 * (p - q)).sinh() / q.cosh();
    (excess + (excess * (excess + 2.0)).sqrt()).ln_1p()
}

/// `arctanh((cosh a cosh x − 1) / (sinh a cosh x))`: the distance from a vertex
/// to the barycenter, given the altitude `a` and the previous barycenter offset `x`.
fn barycenter_distance(a: f64, x: f64) -> f64 {
    let cx = x.cosh();
    let y = (a.cosh() * cx - 1.0) / (a.sinh() * cx);
    if y < 0.5 {
        y.atanh()
    } else {
        0.5 * ((a.exp() * cx - 1.0) / (1.0 - (-a).exp() * cx)).ln()
    }
}

/// β(r) − π/3 where β(r) = arcsec(sech 2r + 2).
pub fn dihedral_excess(r: f64) -> f64 {
    let eps = 1.0 / (2.0 * r).cosh();
    let a = 1.0 / (2.0 + eps);
    let s = (1.0 - a * a).sqrt();
    let sqrt3 = 3f64.sqrt();
    // 1 − 4a² = ε(4 + ε)/(2 + ε)²
    let one_minus_4a2 = eps * (4.0 + eps) * a * a;
    (one_minus_4a2 / (s + sqrt3 * a)).atan2(a + sqrt3 * s)
}

/// arcsec 3, the dihedral angle of an infinitesimal regular simplex.
pub fn arcsec3() -> f64 {
    (1.0f64 / 3.0).acos()
}

/// `arcsech(sec t − 2)` at `t = π/3 + s`, written so that neither endpoint
/// of the integration range loses digits.
fn simplex_integrand(s: f64) -> f64 {
    let t0 = arcsec3();
    let t = FRAC_PI_3 + s;
    let c = t.cos();
    // sec t − 2 = (1 − 2 cos t)/cos t
    let x = 4.0 * (FRAC_PI_3 + 0.5 * s).sin() * (0.5 * s).sin() / c;
    // 1 − x = 3(cos t − cos t₀)/cos t
    let u = 6.0 * (0.5 * (t + t0)).sin() * (0.5 * (t0 - FRAC_PI_3 - s)).sin() / c;
    let root = (u.max(0.0) * (1.0 + x)).sqrt();
    if x < 0.5 {
        root.ln_1p() - x.ln()
    } else {
        root.ln_1p() - (-u).ln_1p()
    }
}

/// `τ(r) = 3 ∫_{β(r)}^{arcsec 3} arcsech(sec t − 2) dt`, the volume of `Δ₃(r)`.
pub fn simplex_volume(r: f64, quad_tol: f64) -> Result<(f64, f64)> {
    let lower = dihedral_excess(r);
    let upper = arcsec3() - FRAC_PI_3;
    let q = integrate(simplex_integrand, lower, upper, quad_tol / 3.0)?;
    Ok((3.0 * q.value, 3.0 * q.error_estimate))
}

fn check_quad_tol(quad_tol: f64) -> Result<()> {
    if !(quad_tol > 0.0 && quad_tol <= 1e-6) {
        return Err(Error::Domain {
            what: "quad_tol",
            value: quad_tol,
            domain: "(0, 1e-6]",
        });
    }
    Ok(())
}

/// Evaluates every density function at radius `r`.
pub fn packing_profile(r: f64, quad_tol: f64) -> Result<PackingProfile> {
    finite("r", r)?;
    if !(r > 0.0) || r > 300.0 {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "(0, 300]",
        });
    }
    check_quad_tol(quad_tol)?;

    let altitude2 = arccosh_ratio(2.0 * r, r);
    let vertex_to_barycenter2 = barycenter_distance(altitude2, r);
    let altitude3 = arccosh_ratio(2.0 * r, vertex_to_barycenter2);
    let vertex_to_barycenter3 = barycenter_distance(altitude3, vertex_to_barycenter2);
    let excess = dihedral_excess(r);
    let (simplex_volume, quad_error) = simplex_volume(r, quad_tol)?;
    let density = 3.0 * excess * sinh_minus_id(2.0 * r) / simplex_volume;

    Ok(PackingProfile {
        r,
        ball_volume: ball_volume(r),
        altitude2,
        vertex_to_barycenter2,
        altitude3,
        vertex_to_barycenter3,
        dihedral: FRAC_PI_3 + excess,
        dihedral_excess: excess,
        simplex_volume,
        density,
        shell: vertex_to_barycenter3 - r,
        quad_error,
    })
}

/// Profiles on a grid of radii, evaluated in parallel and returned in grid order.
pub fn profile_grid(radii: &[f64], quad_tol: f64) -> Result<Vec<PackingProfile>> {
    radii
        .par_iter()
        .map(|&r| packing_profile(r, quad_tol))
        .collect()
}

const CLAUSEN_COEFFS: [f64; 23] = [
    1.38888888888888881e-02,
    6.94444444444444444e-05,
    7.87351977828168297e-07,
    1.14822163433274551e-08,
    1.89788699889709990e-10,
    3.38730137095352120e-12,
    6.37263644318318076e-14,
    1.24620599129506715e-15,
    2.51054446089995455e-17,
    5.17825880609062320e-19,
    1.08873573683008492e-20,
    2.32574411430208708e-22,
    5.03519521314738965e-24,
    1.10264992943812150e-25,
    2.43865855090073440e-27,
    5.44014267885625274e-29,
    1.22283401312173518e-30,
    2.76726346896795083e-32,
    6.30009059183201355e-34,
    1.44208683884184764e-35,
    3.31709399915954276e-37,
    7.66391355792065838e-39,
    1.77787147338306586e-40,
];

/// Clausen function `Cl₂(x) = −∫₀ˣ log|2 sin(t/2)| dt`.
///
/// Uses `Cl₂(x) = x − x log x + Σ |B₂ₖ| x^{2k+1} / (2k (2k+1)!)` on `(0, π]`,
/// whose terms shrink at least like `4^{-k}` there.
pub fn clausen2(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    let mut sign = 1.0;
    if y > PI {
        y = two_pi - y;
        sign = -1.0;
    }
    if y == 0.0 {
        return 0.0;
    }
    let y2 = y * y;
    let mut power = y * y2;
    let mut sum = y - y * y.ln();
    for c in CLAUSEN_COEFFS {
        let term = c * power;
        sum += term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        power *= y2;
    }
    sign * sum
}

/// Lobachevsky function `Λ(θ) = −∫₀^θ log|2 sin t| dt = ½ Cl₂(2θ)`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen2(2.0 * theta)
}

/// Volume of the regular ideal tetrahedron, `3 Λ(π/3)`.
pub fn ideal_simplex_volume() -> f64 {
    3.0 * lobachevsky(FRAC_PI_3)
}

/// Computes the named constants. The limit density is the value of `d(r)` at
/// the last stabilization radius, accepted only if the stabilization window
/// has settled and it agrees with `√3 / (2 V_ideal)`.
pub fn paper_constants(quad_tol: f64) -> Result<PaperConstants> {
    check_quad_tol(quad_tol)?;
    let half_log3 = 0.5 * 3f64.ln();
    let base = packing_profile(half_log3, quad_tol)?;
    let window = profile_grid(&STABILIZATION_RADII, quad_tol)?;
    for pair in window.windows(2) {
        let difference = (pair[1].density - pair[0].density).abs();
        if !(difference < STABILIZATION_TOL) {
            return Err(Error::NotStabilized { difference });
        }
    }
    let stabilized = window[window.len() - 1].density;
    let v_ideal = ideal_simplex_volume();
    let closed_form = 3f64.sqrt() / (2.0 * v_ideal);
    if !((stabilized - closed_form).abs() < LIMIT_CROSS_CHECK_TOL) {
        return Err(Error::LimitDisagreement {
            stabilized,
            closed_form,
        });
    }
    Ok(PaperConstants {
        d_inf: stabilized,
        c1: base.vertex_to_barycenter3.exp(),
        c2: base.ball_volume / base.density,
        k3_inf: 0.5 * 1.5f64.ln(),
        v_ideal,
    })
}

/// Guaranteed volume `B(r)/d(r)` inside radius `h₃(r)` of a point whose
/// injectivity radius is at least `r`.
pub fn thick_point_ball_bound(r: f64, quad_tol: f64) -> Result<f64> {
    let p = packing_profile(r, quad_tol)?;
    Ok(p.ball_volume / p.density)
}

/// Lower bound `vol H / d(∞)` for the volume of the `log √(3/2)`-neighborhood
/// of a cusp neighborhood of volume `vol_h`.
pub fn cusp_shell_lower_bound(vol_h: f64, constants: &PaperConstants) -> Result<f64> {
    finite("vol_H", vol_h)?;
    if !(vol_h > 0.0) {
        return Err(Error::Domain {
            what: "vol_H",
            value: vol_h,
            domain: "(0, inf)",
        });
    }
    Ok(vol_h / constants.d_inf)
}

/// The regular ideal tetrahedron with vertices 0, 1, (1+i√3)/2, ∞, its four
/// mutually tangent standard horoballs, and its barycenter.
pub struct IdealTetrahedron;

impl IdealTetrahedron {
    pub fn vertices() -> [Complex64; 3] {
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.5 * 3f64.sqrt()),
        ]
    }

    pub fn barycenter() -> ModelPoint {
        ModelPoint {
            horizontal: Complex64::new(0.5, 3f64.sqrt() / 6.0),
            height: (2.0f64 / 3.0).sqrt(),
        }
    }

    /// Distances from the barycenter to the horoball `t ≥ 1` and to the three
    /// finite horoballs of Euclidean diameter 1.
    pub fn barycenter_horoball_distances() -> [f64; 4] {
        let b = Self::barycenter();
        let [v0, v1, v2] = Self::vertices();
        [
            b.distance_to_horoball_at_infinity(1.0),
            b.distance_to_horoball_at(v0, 1.0),
            b.distance_to_horoball_at(v1, 1.0),
            b.distance_to_horoball_at(v2, 1.0),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit reference values for
    // [B, a₂, h₂, a₃, h₃, β, τ, d, k₃] computed directly from the defining
    // formulas with arbitrary-precision arithmetic and adaptive quadrature.
    const REFERENCE: [(f64, [f64; 9]); 5] = [
        (
            0.05,
            [
                0.000523860637327943768,
                0.0865665025292333559,
                0.0577270191742721711,
                0.0816100362567406038,
                0.0612245057092337752,
                1.23037157027790627,
                0.00011751312332781836,
                0.779766645249762096,
                0.0112245057092337752,
            ],
        ),
        (
            0.3,
            [
                0.115150624404664769,
                0.512165808184615195,
                0.344759413965952637,
                0.481826976379392201,
                0.364813541487379595,
                1.21143866360818446,
                0.0230322268370760112,
                0.784121980277554093,
                0.0648135414873795948,
            ],
        ),
        (
            1.0,
            [
                5.11093270570828898,
                1.53938018250681638,
                1.11273530461305395,
                1.44153768631829693,
                1.16062670465578516,
                1.1136995646843029,
                0.399338557357047077,
                0.812765189777485952,
                0.160626704655785162,
            ],
        ),
        (
            2.5,
            [
                217.408297956008636,
                3.18476573480336652,
                2.6421636272450123,
                3.04370260212945292,
                2.70049413449174217,
                1.0510572054452524,
                0.94542211766698762,
                0.847559394060593879,
                0.20049413449174217,
            ],
        ),
        (
            5.0,
            [
                34567.6755649058825,
                5.69309043251561491,
                5.14382968656550022,
                5.54926831157456082,
                5.20271742108768581,
                1.04722376146994912,
                1.01407666530659298,
                0.853183249141081934,
                0.202717421087685811,
            ],
        ),
    ];

    #[test]
    fn profile_matches_high_precision_reference() {
        for (r, expected) in REFERENCE {
            let p = packing_profile(r, 1e-12).unwrap();
            let got = [
                p.ball_volume,
                p.altitude2,
                p.vertex_to_barycenter2,
                p.altitude3,
                p.vertex_to_barycenter3,
                p.dihedral,
                p.simplex_volume,
                p.density,
                p.shell,
            ];
            for (i, (g, e)) in got.iter().zip(expected.iter()).enumerate() {
                let rel = (g - e).abs() / e.abs();
                assert!(rel < 1e-11, "r={r} field {i}: got {g}, expected {e}, rel {rel:e}");
            }
        }
    }

    #[test]
    fn half_log3_values() {
        let p = packing_profile(0.5 * 3f64.ln(), DEFAULT_QUAD_TOL).unwrap();
        assert!((p.ball_volume - 0.737397909563188).abs() < 1e-13);
        assert!((p.vertex_to_barycenter3 - 0.658478948462408).abs() < 1e-13);
        assert!((p.density - 0.793087475024035).abs() < 1e-10);
    }

    #[test]
    fn sinh_minus_id_series_matches_direct_form() {
        for x in [0.49, 0.3, 0.1] {
            assert!((sinh_minus_id(x) - (x.sinh() - x)).abs() < 1e-16);
        }
        assert!((sinh_minus_id(1e-4) - (1e-12 / 6.0 + 1e-20 / 120.0)).abs() < 1e-28);
        assert!(ball_volume(1e-6) > 0.0 && ball_volume(1e-6) < 1e-16);
    }

    #[test]
    fn dihedral_excess_matches_direct_form_at_moderate_r() {
        for r in [0.1f64, 0.7, 2.0] {
            let direct = (1.0 / (1.0 / (2.0 * r).cosh() + 2.0)).acos() - FRAC_PI_3;
            assert!((dihedral_excess(r) - direct).abs() < 1e-14);
        }
        // β(0) = arcsec 3
        assert!((FRAC_PI_3 + dihedral_excess(0.0) - arcsec3()).abs() < 1e-15);
    }

    #[test]
    fn integrand_endpoint_values() {
        // arcsech(sech 2r) = 2r at the lower limit; 0 at arcsec 3
        for r in [0.2, 1.0, 6.0] {
            assert!((simplex_integrand(dihedral_excess(r)) - 2.0 * r).abs() < 1e-10 * (1.0 + r));
        }
        assert_eq!(simplex_integrand(arcsec3() - FRAC_PI_3), 0.0);
    }

    #[test]
    fn lobachevsky_known_values() {
        // Λ(π/6) = (3/2)Λ(π/3), Λ(π/2) = 0
        let l3 = lobachevsky(FRAC_PI_3);
        assert!((lobachevsky(PI / 6.0) - 1.5 * l3).abs() < 1e-15);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-15);
        assert!((ideal_simplex_volume() - 1.01494160640965362502).abs() < 1e-14);
        // Catalan's constant: Cl₂(π/2) = G
        assert!((clausen2(PI / 2.0) - 0.915965594177219015).abs() < 1e-15);
    }

    #[test]
    fn lobachevsky_agrees_with_fourier_series() {
        // ½ Σ sin(2nθ)/n² summed with a tail correction; only ~1e-9 accurate
        for theta in [0.2, 0.7, 1.3, 2.5] {
            let n_max = 200_000;
            let mut s = 0.0;
            for n in (1..=n_max).rev() {
                let n = n as f64;
                s += (2.0 * n * theta).sin() / (n * n);
            }
            assert!((0.5 * s - lobachevsky(theta)).abs() < 1e-8, "theta={theta}");
        }
    }

    #[test]
    fn clausen_is_odd_and_periodic() {
        for x in [0.3, 1.9, 3.0] {
            assert!((clausen2(-x) + clausen2(x)).abs() < 1e-15);
            assert!((clausen2(x + 2.0 * PI) - clausen2(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn quad_tol_domain() {
        assert!(packing_profile(1.0, 1e-5).is_err());
        assert!(packing_profile(1.0, 0.0).is_err());
        assert!(packing_profile(0.0, 1e-10).is_err());
        assert!(packing_profile(-1.0, 1e-10).is_err());
        assert!(packing_profile(f64::NAN, 1e-10).is_err());
    }

    #[test]
    fn barycenter_is_equidistant_from_standard_horoballs() {
        let k3 = 0.5 * 1.5f64.ln();
        for d in IdealTetrahedron::barycenter_horoball_distances() {
            assert!((d - k3).abs() < 1e-15);
        }
    }

    #[test]
    fn cusp_shell_examples() {
        let c = PaperConstants {
            d_inf: 0.853276088104609,
            c1: 1.0,
            c2: 1.0,
            k3_inf: 0.0,
            v_ideal: 1.0,
        };
        assert!((cusp_shell_lower_bound(c.d_inf, &c).unwrap() - 1.0).abs() < 1e-15);
        assert!((cusp_shell_lower_bound(PI * 1.178, &c).unwrap() - 4.3372).abs() < 1e-3);
        assert!((cusp_shell_lower_bound(PI, &c).unwrap() - 3.6818).abs() < 1e-3);
        assert!(cusp_shell_lower_bound(0.0, &c).is_err());
    }
}
