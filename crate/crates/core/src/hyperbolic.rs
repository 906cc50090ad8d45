//! Closed-form geometry of loxodromic isometries and their tubes.
//!
//! The closed forms here (displacement at a given distance from the axis,
//! radius of the region displaced less than a threshold, collar radius,
//! the enlarged tube radius) are paired with an explicit upper-half-space
//! model of H³ so every formula can be checked against a direct Möbius
//! computation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};

/// A loxodromic isometry of H³ reduced to its complex length data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Loxodromic {
    translation_length: f64,
    twist_angle: f64,
}

impl Loxodromic {
    /// Builds the isometry, normalizing the twist angle into (−π, π].
    pub fn new(translation_length: f64, twist_angle: f64) -> Result<Self> {
        finite("translation_length", translation_length)?;
        finite("twist_angle", twist_angle)?;
        if translation_length <= 0.0 {
            return Err(Error::Domain {
                what: "translation_length",
                value: translation_length,
                domain: "(0, inf)",
            });
        }
        Ok(Self {
            translation_length,
            twist_angle: normalize_angle(twist_angle),
        })
    }

    pub fn translation_length(&self) -> f64 {
        self.translation_length
    }

    pub fn twist_angle(&self) -> f64 {
        self.twist_angle
    }

    /// `cosh l − cos θ`, evaluated without cancellation.
    fn cosh_minus_cos(&self) -> f64 {
        let sl = (0.5 * self.translation_length).sinh();
        let st = (0.5 * self.twist_angle).sin();
        2.0 * (sl * sl + st * st)
    }
}

/// Maps an angle into (−π, π].
pub fn normalize_angle(theta: f64) -> f64 {
    PI - (PI - theta).rem_euclid(2.0 * PI)
}

/// A point `(z, t)` of the upper half-space model, `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub horizontal: Complex64,
    pub height: f64,
}

impl ModelPoint {
    pub fn new(horizontal: Complex64, height: f64) -> Result<Self> {
        finite("horizontal.re", horizontal.re)?;
        finite("horizontal.im", horizontal.im)?;
        finite("height", height)?;
        if height <= 0.0 {
            return Err(Error::Domain {
                what: "height",
                value: height,
                domain: "(0, inf)",
            });
        }
        Ok(Self { horizontal, height })
    }

    /// Hyperbolic distance, from `cosh d = 1 + (|Δz|² + Δt²) / (2 t₁ t₂)`
    /// rewritten as `sinh(d/2) = |Δ| / (2 √(t₁ t₂))`.
    pub fn distance(&self, other: &ModelPoint) -> f64 {
        let dz = (self.horizontal - other.horizontal).norm_sqr();
        let dt = self.height - other.height;
        let chord = (dz + dt * dt).sqrt();
        2.0 * (chord / (2.0 * (self.height * other.height).sqrt())).asinh()
    }

    /// Distance to the vertical geodesic over `z = 0`.
    pub fn distance_to_vertical_axis(&self) -> f64 {
        (self.horizontal.norm() / self.height).asinh()
    }

    /// Distance to the horoball `{t ≥ level}` centred at ∞ (zero inside it).
    pub fn distance_to_horoball_at_infinity(&self, level: f64) -> f64 {
        (level / self.height).ln().max(0.0)
    }

    /// Distance to the horoball tangent to `C` at `base` with Euclidean
    /// diameter `diameter` (zero inside it).
    pub fn distance_to_horoball_at(&self, base: Complex64, diameter: f64) -> f64 {
        let num = (self.horizontal - base).norm_sqr() + self.height * self.height;
        (num / (diameter * self.height)).ln().max(0.0)
    }
}

/// An element of SL(2, C) acting on the upper half-space by Poincaré extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelIsometry {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// Allowed deviation of `det` from 1.
pub const DETERMINANT_TOLERANCE: f64 = 1e-12;

impl ModelIsometry {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let deviation = (a * d - b * c - Complex64::new(1.0, 0.0)).norm();
        if !(deviation < DETERMINANT_TOLERANCE) {
            return Err(Error::Determinant { deviation });
        }
        Ok(Self { a, b, c, d })
    }

    /// `diag(e^{(l+iθ)/2}, e^{−(l+iθ)/2})`, whose axis is the vertical line over 0.
    pub fn from_loxodromic(iso: &Loxodromic) -> Self {
        let half = Complex64::new(0.5 * iso.translation_length, 0.5 * iso.twist_angle);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            a: half.exp(),
            b: zero,
            c: zero,
            d: (-half).exp(),
        }
    }

    pub fn apply(&self, p: &ModelPoint) -> ModelPoint {
        let z = p.horizontal;
        let t2 = p.height * p.height;
        let czd = self.c * z + self.d;
        let denom = czd.norm_sqr() + self.c.norm_sqr() * t2;
        let horizontal = ((self.a * z + self.b) * czd.conj() + self.a * self.c.conj() * t2) / denom;
        ModelPoint {
            horizontal,
            height: p.height / denom,
        }
    }

    pub fn compose(&self, other: &ModelIsometry) -> ModelIsometry {
        ModelIsometry {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

fn nonnegative(what: &'static str, value: f64) -> Result<f64> {
    finite(what, value)?;
    if value < 0.0 {
        return Err(Error::Domain {
            what,
            value,
            domain: "[0, inf)",
        });
    }
    Ok(value)
}

fn positive(what: &'static str, value: f64) -> Result<f64> {
    finite(what, value)?;
    if value <= 0.0 {
        return Err(Error::Domain {
            what,
            value,
            domain: "(0, inf)",
        });
    }
    Ok(value)
}

/// Displacement `d(z, γz)` of a point at distance `r` from the axis:
/// `cosh d = cosh l + sinh²r (cosh l − cos θ)`.
pub fn displacement_at_radius(iso: &Loxodromic, r: f64) -> Result<f64> {
    nonnegative("r", r)?;
    let sl = (0.5 * iso.translation_length).sinh();
    let sr = r.sinh();
    // cosh d − 1, kept away from the catastrophic 1 + tiny form.
    let excess = 2.0 * sl * sl + sr * sr * iso.cosh_minus_cos();
    finite("displacement", 2.0 * (0.5 * excess).sqrt().asinh())
}

/// Radius of the cylinder `{z : d(z, γz) < λ}` about the axis; `None` when
/// the cylinder is empty (`l ≥ λ`).
pub fn tube_radius(iso: &Loxodromic, lambda: f64) -> Result<Option<f64>> {
    positive("lambda", lambda)?;
    let l = iso.translation_length;
    if l >= lambda {
        return Ok(None);
    }
    let numerator = 2.0 * (0.5 * (lambda + l)).sinh() * (0.5 * (lambda - l)).sinh();
    let ratio = numerator / iso.cosh_minus_cos();
    finite("tube_radius", ratio.sqrt().asinh()).map(Some)
}

/// The radius `r` with `1/(1+e^l) + 1/(1+e^{2r}) = 1/2`, i.e.
/// `r = ½ log((e^l + 3)/(e^l − 1))`.
pub fn collar_radius(l: f64) -> Result<f64> {
    positive("l", l)?;
    let e = (-l).exp();
    // log(1 − e^{-l}): expm1 keeps small l accurate, ln_1p keeps large l accurate
    let log_gap = if l < std::f64::consts::LN_2 {
        (-(-l).exp_m1()).ln()
    } else {
        (-e).ln_1p()
    };
    Ok(0.5 * ((3.0 * e).ln_1p() - log_gap))
}

/// `R' = ½ arccosh(cosh 2R · cosh(l/2))`.
pub fn prime_radius(big_r: f64, l: f64) -> Result<f64> {
    nonnegative("R", big_r)?;
    positive("l", l)?;
    if big_r > 20.0 {
        // arccosh(y) = log 2y up to e^{-80}
        return Ok(big_r + 0.5 * (0.5 * l).cosh().ln() + 0.5 * (-4.0 * big_r).exp().ln_1p());
    }
    let sr = big_r.sinh();
    let sq = (0.25 * l).sinh();
    let excess = 2.0 * sr * sr * (0.5 * l).cosh() + 2.0 * sq * sq;
    Ok(0.5 * (excess + (excess * (excess + 2.0)).sqrt()).ln_1p())
}

/// Volume `π l sinh²R` of the tube of radius `R` about a geodesic of length `l`.
pub fn tube_volume(l: f64, big_r: f64) -> Result<f64> {
    positive("l", l)?;
    nonnegative("R", big_r)?;
    let s = big_r.sinh();
    finite("tube_volume", PI * l * s * s)
}

/// Displacement computed in the upper-half-space model: the isometry is
/// realized as a matrix, the point `(tanh r, sech r)` at distance `r` from its
/// axis is moved, and the model distance is measured.
pub fn oracle_displacement(iso: &Loxodromic, r: f64) -> Result<f64> {
    nonnegative("r", r)?;
    let g = ModelIsometry::from_loxodromic(iso);
    let p = ModelPoint::new(Complex64::new(r.tanh(), 0.0), 1.0 / r.cosh())?;
    let q = g.apply(&p);
    finite("oracle_displacement", p.distance(&q))
}
