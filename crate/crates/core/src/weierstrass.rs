//! Weierstrass ℘ with half-periods `(ω₁, ω₂)` via its q-expansion
//!
//! ```text
//! ℘(u) = π²/ω₁² [ -1/12 + 2 Σ k q^{2k}/(1-q^{2k}) (1 - cos(kπu/ω₁)) + csc²(πu/2ω₁)/4 ]
//! ```
//!
//! with `q = exp(iπω₂/ω₁)`. The series converges on the strip
//! `|Im(u/ω₁)| < 2 Im(ω₂/ω₁)`; arguments are moved into it by period shifts.
//! Before summing, the lattice basis is reduced so that `τ = ω₂/ω₁` lies in
//! the standard fundamental domain, which bounds `|q|` by `e^{-π√3/2}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

type C = Complex64;

/// Terms are summed until `k|q|^{2k}e^{kπ|Im v|}` drops below this.
pub const Q_SERIES_TOL: f64 = 1e-18;
pub const Q_SERIES_MAX_TERMS: usize = 10_000;
/// Reduced arguments closer than this (relative to `|ω₁|`) to a lattice point are poles.
pub const POLE_TOL: f64 = 1e-12;
/// The q-series is refused when `|q| ≥ 1 - Q_MARGIN`.
pub const Q_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodPair {
    pub omega1: C,
    pub omega2: C,
}

impl PeriodPair {
    pub fn new(omega1: C, omega2: C) -> Self {
        PeriodPair { omega1, omega2 }
    }

    pub fn tau(&self) -> C {
        self.omega2 / self.omega1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticInvariants {
    pub e1: C,
    pub e2: C,
    pub e3: C,
}

/// Orient the pair so that `Im(ω₂/ω₁) > 0`, negating `ω₂` if necessary.
pub fn normalize(p: PeriodPair) -> Result<PeriodPair> {
    if p.omega1.norm() == 0.0 || !p.omega1.is_finite() || !p.omega2.is_finite() {
        return Err(Error::DegenerateLattice);
    }
    let im = p.tau().im;
    if im == 0.0 || !im.is_finite() {
        return Err(Error::DegenerateLattice);
    }
    Ok(if im > 0.0 { p } else { PeriodPair::new(p.omega1, -p.omega2) })
}

/// Same lattice, with `τ` in the fundamental domain `|Re τ| ≤ 1/2, |τ| ≥ 1`.
pub fn reduce_basis(p: PeriodPair) -> Result<PeriodPair> {
    let mut p = normalize(p)?;
    for _ in 0..200 {
        let n = p.tau().re.round();
        if n != 0.0 {
            p.omega2 -= n * p.omega1;
        }
        if p.tau().norm_sqr() < 1.0 - 1e-15 {
            p = PeriodPair::new(p.omega2, -p.omega1);
        } else {
            return Ok(p);
        }
    }
    Err(Error::NonConvergence("lattice basis reduction".into()))
}

fn round_half_to_zero(v: f64) -> f64 {
    let r = v.round();
    if (v - v.trunc()).abs() == 0.5 {
        v.trunc()
    } else {
        r
    }
}

/// Shift `u` by full periods `2mω₁ + 2nω₂` into the convergence strip of the
/// q-series for the (normalised) pair `p`.
pub fn reduce_argument(u: C, p: PeriodPair) -> Result<C> {
    let p = normalize(p)?;
    let tau = p.tau();
    let mut v = u / p.omega1;
    let n = round_half_to_zero(v.im / (2.0 * tau.im));
    v -= 2.0 * n * tau;
    let m = round_half_to_zero(v.re / 2.0);
    v -= 2.0 * m;
    if v.norm() < POLE_TOL {
        return Err(Error::Pole(format!("u = {u} lies on the period lattice")));
    }
    if v.im.abs() >= 2.0 * tau.im {
        return Err(Error::Domain(format!("u = {u} lands on the boundary of the convergence strip")));
    }
    Ok(v * p.omega1)
}

/// The q-series for the pair exactly as given (after orientation); `u` must
/// already satisfy the strip condition.
pub fn wp_series(u: C, p: PeriodPair) -> Result<C> {
    let p = normalize(p)?;
    let tau = p.tau();
    let q = (C::new(0.0, PI) * tau).exp();
    if q.norm() >= 1.0 - Q_MARGIN {
        return Err(Error::Domain(format!("|q| = {} too close to 1", q.norm())));
    }
    let v = u / p.omega1;
    if v.norm() < POLE_TOL {
        return Err(Error::Pole(format!("u = {u} is a lattice point")));
    }
    if v.im.abs() >= 2.0 * tau.im {
        return Err(Error::Domain(format!("u = {u} violates the strip condition")));
    }
    let q2 = q * q;
    let growth = (PI * v.im.abs()).exp();
    let mut sum = C::new(0.0, 0.0);
    let mut q2k = C::new(1.0, 0.0);
    let mut g = 1.0;
    let mut converged = false;
    for k in 1..=Q_SERIES_MAX_TERMS {
        let kf = k as f64;
        q2k *= q2;
        g *= growth;
        sum += kf * q2k / (1.0 - q2k) * (1.0 - (kf * PI * v).cos());
        if kf * q2k.norm() * g < Q_SERIES_TOL * (1.0 + sum.norm()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence("q-series of ℘".into()));
    }
    let s = (0.5 * PI * v).sin();
    let bracket = -1.0 / 12.0 + 2.0 * sum + 0.25 / (s * s);
    Ok(PI * PI / (p.omega1 * p.omega1) * bracket)
}

/// `℘(u; ω₁, ω₂)`.
pub fn wp(u: C, p: PeriodPair) -> Result<C> {
    let p = reduce_basis(p)?;
    let v = reduce_argument(u, p)?;
    wp_series(v, p)
}

/// Invariants of the lattice spanned by the hypergeometric periods at `x`.
pub fn picard_invariants(x: C) -> EllipticInvariants {
    let c = (x + 1.0) / 3.0;
    EllipticInvariants { e1: 1.0 - c, e2: x - c, e3: -c }
}
