//! Exponent algebra for the two interpolation inequalities.
//!
//! `θ` is fixed by dimensional balance; the classifiers decide whether a tuple is
//! inside the range where an extremizer exists, sits on an endpoint, or is not an
//! admissible inequality at all. Comparisons use an absolute tolerance of `1e-12`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const REGIME_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeClass {
    Attained,
    EndpointThetaEqualsRatio,
    /// `θ = 1`: the Sobolev endpoint.
    EndpointThetaOne,
    EndpointPBoundary,
    EndpointPInfinity,
    Invalid(String),
}

impl RegimeClass {
    /// Variant name without payload, as written in reports.
    pub fn name(&self) -> &'static str {
        match self {
            RegimeClass::Attained => "Attained",
            RegimeClass::EndpointThetaEqualsRatio => "EndpointThetaEqualsRatio",
            RegimeClass::EndpointThetaOne => "EndpointThetaOne",
            RegimeClass::EndpointPBoundary => "EndpointPBoundary",
            RegimeClass::EndpointPInfinity => "EndpointPInfinity",
            RegimeClass::Invalid(_) => "Invalid",
        }
    }

    pub fn is_attained(&self) -> bool {
        matches!(self, RegimeClass::Attained)
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, RegimeClass::Invalid(_))
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            RegimeClass::Invalid(r) => Some(r),
            _ => None,
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REGIME_TOL
}

/// `θ` from `−r + d/q = (1−θ)d/p + θ(−s + d/2)`.
pub fn gn_theta(d: usize, r: f64, s: f64, p: f64, q: f64) -> Result<f64> {
    let d = d as f64;
    if !(p > 1.0 && p.is_finite() && q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {p}, q = {q} must lie in (1, ∞)")));
    }
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("s = {s} must be positive")));
    }
    let den = d / p + s - d / 2.0;
    if den.abs() <= REGIME_TOL {
        return Err(Error::Degenerate("d/p + s − d/2 = 0".into()));
    }
    Ok((d / p + r - d / q) / den)
}

/// Gagliardo–Nirenberg exponents `‖D^r φ‖_q ≤ C ‖φ‖_p^{1−θ} ‖D^s φ‖_2^θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnParams {
    pub d: usize,
    pub r: f64,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
}

impl GnParams {
    /// Computes `θ`. Tuples outside the admissible ranges are still constructed;
    /// [`GnParams::classify`] reports them as `Invalid`.
    pub fn new(d: usize, r: f64, s: f64, p: f64, q: f64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidParameter(format!("dimension {d} not in 1..=3")));
        }
        if !(r.is_finite() && s.is_finite()) {
            return Err(Error::InvalidParameter("r and s must be finite".into()));
        }
        let theta = gn_theta(d, r, s, p, q)?;
        Ok(Self { d, r, s, p, q, theta })
    }

    /// Residual of the scaling relation at the stored `θ`.
    pub fn scaling_residual(&self) -> f64 {
        let d = self.d as f64;
        let lhs = -self.r + d / self.q;
        let rhs = (1.0 - self.theta) * d / self.p + self.theta * (-self.s + d / 2.0);
        lhs - rhs
    }

    pub fn classify(&self) -> RegimeClass {
        classify_gn(self)
    }
}

/// Attainment classification for Gagliardo–Nirenberg tuples.
///
/// `r = 0` is accepted (the Weinstein case) and treated like `r > 0`.
pub fn classify_gn(p: &GnParams) -> RegimeClass {
    if p.r < 0.0 {
        return RegimeClass::Invalid("r ≥ 0 violated".into());
    }
    if p.r > p.s + REGIME_TOL {
        return RegimeClass::Invalid("r ≤ s violated".into());
    }
    if !(p.p > 1.0 && p.q > 1.0 && p.p.is_finite() && p.q.is_finite()) {
        return RegimeClass::Invalid("1 < p, q < ∞ violated".into());
    }
    let ratio = p.r / p.s;
    if p.theta < ratio - REGIME_TOL || p.theta > 1.0 + REGIME_TOL {
        return RegimeClass::Invalid(format!("θ = {} outside [r/s, 1] = [{ratio}, 1]", p.theta));
    }
    if close(p.theta, 1.0) {
        RegimeClass::EndpointThetaOne
    } else if close(p.theta, ratio) {
        RegimeClass::EndpointThetaEqualsRatio
    } else {
        RegimeClass::Attained
    }
}

/// `θ = (2d − 2pd + pλ)/(d − 2ps − pd + pλ)`; `p = ∞` takes the limit.
pub fn riesz_theta(d: usize, s: f64, lambda: f64, p: f64) -> Result<f64> {
    let d = d as f64;
    if p.is_infinite() && p > 0.0 {
        let den = d + 2.0 * s - lambda;
        if den.abs() <= REGIME_TOL {
            return Err(Error::Degenerate("d + 2s − λ = 0".into()));
        }
        return Ok((2.0 * d - lambda) / den);
    }
    let den = d - 2.0 * p * s - p * d + p * lambda;
    if den.abs() <= REGIME_TOL {
        return Err(Error::Degenerate(format!(
            "denominator d − 2ps − pd + pλ vanishes at p = {p}"
        )));
    }
    Ok((2.0 * d - 2.0 * p * d + p * lambda) / den)
}

/// Riesz-energy exponents `‖φ‖_{2p} ≤ C ‖φ‖_{Ḣ^s}^{θ/(2−θ)} E_λ(φ)^{(1−θ)/(4−2θ)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieszParams {
    pub d: usize,
    pub s: f64,
    pub lambda: f64,
    pub p: f64,
    /// `None` when the exponent algebra is degenerate (`λ = 4s` at the Sobolev point).
    pub theta: Option<f64>,
}

impl RieszParams {
    pub fn new(d: usize, s: f64, lambda: f64, p: f64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidParameter(format!("dimension {d} not in 1..=3")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!("s = {s} must be positive")));
        }
        if !(lambda > 0.0 && lambda < d as f64) {
            return Err(Error::InvalidParameter(format!("λ = {lambda} not in (0, {d})")));
        }
        if !(p > 0.0) || p.is_nan() {
            return Err(Error::InvalidParameter(format!("p = {p} must be positive")));
        }
        let theta = riesz_theta(d, s, lambda, p).ok();
        Ok(Self { d, s, lambda, p, theta })
    }

    /// `(d − λ + 4s)/(d − λ + 2s)`.
    pub fn lower_endpoint(&self) -> f64 {
        let d = self.d as f64;
        (d - self.lambda + 4.0 * self.s) / (d - self.lambda + 2.0 * self.s)
    }

    /// `d/(d − 2s)` when `d > 2s`.
    pub fn sobolev_endpoint(&self) -> Option<f64> {
        let d = self.d as f64;
        (d > 2.0 * self.s + REGIME_TOL).then(|| d / (d - 2.0 * self.s))
    }

    /// Which of the five `(λ vs 4s, d vs 2s)` cases applies to `(d, s, λ)`.
    pub fn case(&self) -> u8 {
        let d = self.d as f64;
        let four_s = 4.0 * self.s;
        let two_s = 2.0 * self.s;
        if close(self.lambda, four_s) {
            4
        } else if self.lambda < four_s {
            if close(d, two_s) {
                2
            } else if d < two_s {
                1
            } else {
                3
            }
        } else {
            5
        }
    }

    /// `(d − λ)/(d + 2s − λ)`, the smallest admissible `θ`.
    pub fn theta_floor(&self) -> f64 {
        let d = self.d as f64;
        (d - self.lambda) / (d + 2.0 * self.s - self.lambda)
    }

    pub fn classify(&self) -> RegimeClass {
        classify_riesz(self)
    }

    /// `θ` for tuples whose algebra is not degenerate.
    pub fn theta_value(&self) -> Result<f64> {
        self.theta
            .ok_or_else(|| Error::Degenerate("θ undefined at the Sobolev coincidence λ = 4s".into()))
    }
}

/// Attainment classification for Riesz-energy tuples.
pub fn classify_riesz(params: &RieszParams) -> RegimeClass {
    let p = params.p;
    let lower = params.lower_endpoint();
    let sobolev = params.sobolev_endpoint();
    let on = |e: f64| close(p, e);
    let (lo, hi, hi_closed) = match params.case() {
        1 => (lower, f64::INFINITY, true),
        2 => (lower, f64::INFINITY, false),
        3 => (lower, sobolev.expect("d > 2s in case 3"), true),
        4 => (lower, lower, true),
        _ => (sobolev.expect("d > 2s in case 5"), lower, true),
    };
    if p.is_infinite() {
        return if hi.is_infinite() && hi_closed {
            RegimeClass::EndpointPInfinity
        } else {
            RegimeClass::Invalid(format!("p = ∞ not admissible in case {}", params.case()))
        };
    }
    let inside = (p > lo || on(lo)) && (p < hi || on(hi));
    if !inside {
        return RegimeClass::Invalid(format!(
            "p = {p} outside the admissible range [{lo}, {hi}] of case {}",
            params.case()
        ));
    }
    if on(lower) || sobolev.is_some_and(on) {
        RegimeClass::EndpointPBoundary
    } else {
        RegimeClass::Attained
    }
}
