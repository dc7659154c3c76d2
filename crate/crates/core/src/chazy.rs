//! Chazy's one-parameter family at `μ = −1/2`.
//!
//! With `W = νω₂ + ω₁` and `W' = νω₂' + ω₁'`,
//!
//! ```text
//! y = [(W + 2xW')² − 4xW'²]² / (8 W W' (2(x−1)W' + W)(W + 2xW'))
//! ```
//!
//! The expression is homogeneous of degree zero in `(W, W')`, which makes the
//! projective parameter `ν = ∞` (`W = ω₂`) meaningful and lets the pair be
//! rescaled freely before evaluation.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergeom::{basis_at, basis_at_local, cdiv, BasisValue, Chart};
use crate::picard::{picard_eval, Gamma2Element, PicardParams};
use crate::symmetry::{s1_transform, JetPoint};
use crate::verify::{stencil_derivatives, DEFAULT_STEP_FACTOR};

type C = Complex64;

/// Relative size below which a denominator factor counts as zero.
pub const POLE_REL_TOL: f64 = 1e-12;
/// The ε sequence of the Picard-limit check.
pub const LIMIT_EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

const I: C = C::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChazyParam {
    Finite(C),
    Infinity,
}

impl ChazyParam {
    pub fn real(nu: f64) -> Self {
        ChazyParam::Finite(C::new(nu, 0.0))
    }

    /// `(W, W')` for this parameter from basis values.
    pub fn combine(&self, b: &BasisValue) -> (C, C) {
        match *self {
            ChazyParam::Finite(nu) => (nu * b.omega2 + b.omega1, nu * b.omega2_prime + b.omega1_prime),
            ChazyParam::Infinity => (b.omega2, b.omega2_prime),
        }
    }
}

/// The closed formula in `(x, x − 1, W, W')`; `x − 1` is passed separately so
/// it stays accurate next to `x = 1`.
pub fn chazy_formula(x: C, xm1: C, w: C, wp: C) -> Result<C> {
    chazy_formula_jet(x, xm1, w, wp).map(|(y, _)| y)
}

/// `(y, dy/dx)` from the closed formula, with `W''` taken from the
/// hypergeometric equation.
///
/// Internally the formula is multiplied through by `x²` and written in
/// `u = xW'` and `v = x²W''`, which stay bounded at `x → 0` while `W'` grows
/// like `1/x`.
pub fn chazy_formula_jet(x: C, xm1: C, w: C, wp: C) -> Result<(C, C)> {
    let u = x * wp;
    let s = w.norm() + u.norm();
    if s == 0.0 || !s.is_finite() {
        return Err(Error::Pole("W and W' vanish together".into()));
    }
    let (w, u) = (w / s, u / s);
    // x²W'' = (xW/4 − (1 − 2x)u)/(1 − x).
    let v = cdiv(x * w / 4.0 - (1.0 - 2.0 * x) * u, -xm1);
    let a = w + 2.0 * u;
    let b = 2.0 * xm1 * u + x * w;
    let n = x * a * a - 4.0 * u * u;
    let checks = [
        (w.norm(), 1.0, "W"),
        (u.norm(), 1.0, "W'"),
        (b.norm(), 2.0 * (xm1 * u).norm() + (x * w).norm(), "2(x-1)W' + W"),
        (a.norm(), w.norm() + 2.0 * u.norm(), "W + 2xW'"),
    ];
    for (val, scale, name) in checks {
        if val <= POLE_REL_TOL * scale {
            return Err(Error::Pole(format!("factor {name} vanishes at x = {x}")));
        }
    }
    let y = cdiv(n * n, 8.0 * w * u * b * a);
    // Every logarithmic derivative below carries a common factor 1/x.
    let dn = cdiv(2.0 * a * x * (3.0 * u + 2.0 * v) - 4.0 * u * u - 8.0 * u * v, n);
    let dd = cdiv(u, w) + cdiv(v, u) + cdiv(3.0 * x * u + 2.0 * xm1 * v, b) + cdiv(3.0 * u + 2.0 * v, a);
    Ok((y, y * cdiv(2.0 * dn - dd, x)))
}

fn xm1_of(b: &BasisValue) -> C {
    match b.chart {
        Chart::One => -b.local,
        _ => b.x - 1.0,
    }
}

pub fn chazy_from_basis(b: &BasisValue, nu: &ChazyParam) -> Result<C> {
    let (w, wp) = nu.combine(b);
    chazy_formula(b.x, xm1_of(b), w, wp)
}

/// `(y, y')` with the derivative in closed form.
pub fn chazy_jet_from_basis(b: &BasisValue, nu: &ChazyParam) -> Result<(C, C)> {
    let (w, wp) = nu.combine(b);
    chazy_formula_jet(b.x, xm1_of(b), w, wp)
}

pub fn chazy_eval(x: C, nu: &ChazyParam, chart: Chart) -> Result<C> {
    chazy_from_basis(&basis_at(x, chart)?, nu)
}

/// Evaluation at local coordinate `t` of `chart` (see [`basis_at_local`]).
pub fn chazy_eval_local(chart: Chart, t: C, nu: &ChazyParam) -> Result<C> {
    chazy_from_basis(&basis_at_local(chart, t)?, nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

impl SingularPoint {
    pub fn chart(self) -> Chart {
        match self {
            SingularPoint::Zero => Chart::Zero,
            SingularPoint::One => Chart::One,
            SingularPoint::Infinity => Chart::Infinity,
        }
    }
}

/// Leading logarithmic behaviour of Chazy solutions at a singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeadingForm {
    /// `y ≈ −ln(x)⁻² + b ln(x)⁻³`.
    MinusInvLogSquared,
    /// `y ≈ 1 + ln(1 − x)⁻² + b ln(1 − x)⁻³`.
    OnePlusInvLogSquared,
    /// `y ≈ −x ln(1/x)⁻² + b x ln(1/x)⁻³`.
    MinusXInvLogSquared,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChazyAsymptotics {
    pub leading: LeadingForm,
    pub b: C,
}

fn finite(nu: &ChazyParam, what: &str) -> Result<C> {
    match *nu {
        ChazyParam::Finite(v) => Ok(v),
        ChazyParam::Infinity => Err(Error::Domain(format!("{what} is not defined at ν = ∞"))),
    }
}

/// Published third-order coefficients `b₀ = 1 + iπ/ν − 4 ln 2`,
/// `b₁ = 2[iπ(ν − 1) − 1 + 4 ln 2]`, `b∞ = 2[(ν − 1)(1 − 4 ln 2) + iπ]`.
///
/// These are the closed forms as stated; see [`chazy_branch_coefficient`]
/// for the coefficients realised by the branches evaluated here.
pub fn chazy_asymptotics(nu: &ChazyParam, point: SingularPoint) -> Result<ChazyAsymptotics> {
    let l4 = 4.0 * LN_2;
    Ok(match point {
        SingularPoint::Zero => {
            let b = match *nu {
                ChazyParam::Finite(v) if v == C::new(0.0, 0.0) => {
                    return Err(Error::Domain("b₀ has a pole at ν = 0".into()))
                }
                ChazyParam::Finite(v) => 1.0 + I * PI / v - l4,
                ChazyParam::Infinity => C::new(1.0 - l4, 0.0),
            };
            ChazyAsymptotics { leading: LeadingForm::MinusInvLogSquared, b }
        }
        SingularPoint::One => {
            let v = finite(nu, "b₁")?;
            ChazyAsymptotics { leading: LeadingForm::OnePlusInvLogSquared, b: 2.0 * (I * PI * (v - 1.0) - 1.0 + l4) }
        }
        SingularPoint::Infinity => {
            let v = finite(nu, "b∞")?;
            ChazyAsymptotics { leading: LeadingForm::MinusXInvLogSquared, b: 2.0 * ((v - 1.0) * (1.0 - l4) + I * PI) }
        }
    })
}

/// Coefficient of the cubic inverse logarithm for the branches fixed in
/// [`crate::hypergeom`]. Near each point the solution is
/// `±(L + c)⁻²·(1 + O(L⁻²))` for the local logarithm `L`, so the cubic
/// coefficient is twice the shift `c`:
///
/// * at 0: `2(1 + iπ/ν − 4 ln 2)`,
/// * at 1: `2(iπν − 1 + 4 ln 2)`,
/// * at ∞: `2(1 − 4 ln 2 + iπ/(ν − 1))`.
pub fn chazy_branch_coefficient(nu: &ChazyParam, point: SingularPoint) -> Result<C> {
    let l4 = 4.0 * LN_2;
    match point {
        SingularPoint::Zero => Ok(2.0 * chazy_asymptotics(nu, point)?.b),
        SingularPoint::One => Ok(2.0 * (I * PI * finite(nu, "b₁")? - 1.0 + l4)),
        SingularPoint::Infinity => {
            let tail = match *nu {
                ChazyParam::Finite(v) if v == C::new(1.0, 0.0) => {
                    return Err(Error::Domain("ν = 1 has no logarithmic behaviour at ∞".into()))
                }
                ChazyParam::Finite(v) => I * PI / (v - 1.0),
                ChazyParam::Infinity => C::new(0.0, 0.0),
            };
            Ok(2.0 * (1.0 - l4 + tail))
        }
    }
}

/// Möbius action `ν ↦ (aν + b)/(cν + d)` on the projective parameter.
pub fn gamma2_act_moebius(m: &Gamma2Element, nu: &ChazyParam) -> ChazyParam {
    let (a, b, c, d) = (m.a as f64, m.b as f64, m.c as f64, m.d as f64);
    match *nu {
        ChazyParam::Infinity => {
            if m.c == 0 {
                ChazyParam::Infinity
            } else {
                ChazyParam::Finite(C::new(a / c, 0.0))
            }
        }
        ChazyParam::Finite(v) => {
            let den = c * v + d;
            if den == C::new(0.0, 0.0) {
                ChazyParam::Infinity
            } else {
                ChazyParam::Finite((a * v + b) / den)
            }
        }
    }
}

/// Picard parameters `(ε, εν)` (or `(0, ε)` for `ν = ∞`) of the family
/// degenerating onto the Chazy solution `ν`.
pub fn limit_params(nu: &ChazyParam, eps: f64) -> Result<PicardParams> {
    let e = C::new(eps, 0.0);
    match *nu {
        ChazyParam::Finite(v) => PicardParams::new(e, e * v),
        ChazyParam::Infinity => PicardParams::new(C::new(0.0, 0.0), e),
    }
}

/// `|S1(y_ε) − y_Chazy|` at `x` for each ε, where `y_ε` is the Picard
/// solution with parameters [`limit_params`] and the map is taken at
/// `μ = 1/2`.
pub fn picard_limit_sequence(nu: &ChazyParam, x: C, eps: &[f64]) -> Result<Vec<f64>> {
    let chart = Chart::choose(x)?;
    let target = chazy_eval(x, nu, chart)?;
    let half = num_rational::Rational64::new(1, 2);
    let h = DEFAULT_STEP_FACTOR * x.norm().min((x - 1.0).norm());
    eps.iter()
        .map(|&e| {
            let p = limit_params(nu, e)?;
            let f = |z: C| picard_eval(z, &p, chart);
            let (y, yp, _) = stencil_derivatives(&f, x, h)?;
            let img = s1_transform(&JetPoint::new(x, y, yp, half)?)?;
            Ok((img - target).norm())
        })
        .collect()
}

/// [`picard_limit_sequence`] over [`LIMIT_EPSILONS`].
pub fn picard_limit_check(nu: &ChazyParam, x: C) -> Result<Vec<f64>> {
    picard_limit_sequence(nu, x, &LIMIT_EPSILONS)
}
