//! Numerical verification: PVIμ residuals, exponent fits, algebraic
//! relations and loop-continuation consistency for any [`SolutionHandle`].

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::chazy::{chazy_from_basis, chazy_jet_from_basis, gamma2_act_moebius, ChazyParam, SingularPoint};
use crate::error::{Error, Result};
use crate::hypergeom::{basis_at, basis_at_local, cdiv, continue_basis_value, loop_path, Chart, Loop, LOOP_STEPS};
use crate::picard::{gamma2_act_params, picard_from_basis, Gamma2Element, PicardParams};
use crate::symmetry::{elementary_symmetry, s1_transform_jet, Elementary, JetPoint, LadderStep};

type C = Complex64;

/// Default stencil step as a fraction of the distance to the nearest fixed
/// singular point. With Richardson the truncation error is `O(h⁶)`, so the
/// step is set where the `ε/h²` rounding of `y''` stays near 1e-10.
pub const DEFAULT_STEP_FACTOR: f64 = 1e-2;
/// Step factor when `y'` is exact and only `y''` is differenced (rounding
/// `ε/h`).
pub const SLOPE_STEP_FACTOR: f64 = 1e-3;
/// Solution values closer than this to 0, 1 or x are refused.
pub const SINGULAR_GUARD: f64 = 1e-6;

/// Value, first and second derivative by 5-point central differences with
/// one Richardson step (`h` and `h/2`).
pub fn stencil_derivatives<F>(f: &F, x: C, h: f64) -> Result<(C, C, C)>
where
    F: Fn(C) -> Result<C>,
{
    let y0 = f(x)?;
    let d = |h: f64| -> Result<(C, C)> {
        let fp1 = f(x + h)?;
        let fm1 = f(x - h)?;
        let fp2 = f(x + 2.0 * h)?;
        let fm2 = f(x - 2.0 * h)?;
        let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
        let d2 = (-fp2 + 16.0 * fp1 - 30.0 * y0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
        Ok((d1, d2))
    };
    let (a1, a2) = d(h)?;
    let (b1, b2) = d(0.5 * h)?;
    Ok((y0, (16.0 * b1 - a1) / 15.0, (16.0 * b2 - a2) / 15.0))
}

/// Right-hand side of PVIμ solved for `y''`.
pub fn pvi_rhs(x: C, y: C, yp: C, mu: f64) -> C {
    let a = (2.0 * mu - 1.0).powi(2);
    0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * yp * yp - (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * yp
        + 0.5 * y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) * (x - 1.0)) * (a + x * (x - 1.0) / ((y - x) * (y - x)))
}

/// `c·∏(s − rᵢ)^{pᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factored {
    pub constant: f64,
    pub factors: Vec<(f64, i32)>,
}

impl Factored {
    pub fn eval(&self, s: C) -> C {
        self.factors.iter().fold(C::new(self.constant, 0.0), |acc, &(r, p)| acc * (s - r).powi(p))
    }

    /// Logarithmic derivative `Σ pᵢ/(s − rᵢ)`.
    pub fn log_derivative(&self, s: C) -> C {
        self.factors.iter().fold(C::zero(), |acc, &(r, p)| acc + p as f64 / (s - r))
    }

    pub fn derivative(&self, s: C) -> C {
        self.eval(s) * self.log_derivative(s)
    }

    /// `f·(L² + L')` with `L` the logarithmic derivative.
    pub fn second_derivative(&self, s: C) -> C {
        let l = self.log_derivative(s);
        let dl = self.factors.iter().fold(C::zero(), |acc, &(r, p)| acc - p as f64 / ((s - r) * (s - r)));
        self.eval(s) * (l * l + dl)
    }
}

impl Curve {
    /// `(y, dy/dx, d²y/dx²)` at parameter `s`.
    pub fn jet(self, s: C) -> Result<(C, C, C)> {
        let (xf, yf) = (self.x_of(), self.y_of());
        let (x1, x2) = (xf.derivative(s), xf.second_derivative(s));
        let (y1, y2) = (yf.derivative(s), yf.second_derivative(s));
        if x1.norm() == 0.0 || !x1.is_finite() {
            return Err(Error::NearSingular(format!("x'(s) vanishes at s = {s}")));
        }
        Ok((yf.eval(s), y1 / x1, (y2 * x1 - y1 * x2) / (x1 * x1 * x1)))
    }
}

/// The three parametric algebraic solutions at `μ = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    /// `y = (s−1)²/((s−3)(s+1))`, `x = (s−1)³(s+3)/((s−3)(s+1)³)`.
    A2,
    /// `y = (s+2)/4`, `x = (s+2)²/(8s)`.
    B2,
    /// `y = 3(3−s)(1+s)/(3+s)²`, `x = (3−s)³(1+s)/((1−s)(3+s)³)`.
    G2,
}

impl Curve {
    pub fn x_of(self) -> Factored {
        match self {
            Curve::A2 => Factored { constant: 1.0, factors: vec![(1.0, 3), (-3.0, 1), (3.0, -1), (-1.0, -3)] },
            Curve::B2 => Factored { constant: 0.125, factors: vec![(-2.0, 2), (0.0, -1)] },
            Curve::G2 => Factored { constant: 1.0, factors: vec![(3.0, 3), (-1.0, 1), (1.0, -1), (-3.0, -3)] },
        }
    }

    pub fn y_of(self) -> Factored {
        match self {
            Curve::A2 => Factored { constant: 1.0, factors: vec![(1.0, 2), (3.0, -1), (-1.0, -1)] },
            Curve::B2 => Factored { constant: 0.25, factors: vec![(-2.0, 1)] },
            Curve::G2 => Factored { constant: -3.0, factors: vec![(3.0, 1), (-1.0, 1), (-3.0, -2)] },
        }
    }
}

pub const NEWTON_MAX_ITERS: usize = 200;
pub const NEWTON_TOL: f64 = 1e-14;
pub const NEWTON_STARTS: usize = 8;

/// Damped Newton for `x(s) = x0` from `s`.
pub fn solve_parameter(curve: Curve, x0: C, start: C) -> Result<C> {
    let xf = curve.x_of();
    let mut s = start;
    let mut r = xf.eval(s) - x0;
    for _ in 0..NEWTON_MAX_ITERS {
        if !r.is_finite() {
            break;
        }
        if r.norm() <= NEWTON_TOL * (1.0 + x0.norm()) {
            return Ok(s);
        }
        let step = r / xf.derivative(s);
        let mut lambda = 1.0;
        loop {
            let cand = s - lambda * step;
            let rc = xf.eval(cand) - x0;
            if rc.is_finite() && rc.norm() < r.norm() {
                s = cand;
                r = rc;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return Err(Error::NonConvergence(format!("parameter recovery stalled at s = {s}")));
            }
        }
    }
    Err(Error::NonConvergence(format!("parameter recovery for x = {x0}")))
}

/// Distinct parameter values `s` with `x(s) = x0` found from a fixed set of
/// spread-out starting points.
pub fn recover_parameters(curve: Curve, x0: C) -> Vec<C> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut found: Vec<C> = Vec::new();
    for k in 0..NEWTON_STARTS {
        let start = C::from_polar(0.5 + 0.75 * k as f64, golden * k as f64 + 0.3);
        if let Ok(s) = solve_parameter(curve, x0, start) {
            if !found.iter().any(|f| (f - s).norm() < 1e-8 * (1.0 + s.norm())) {
                found.push(s);
            }
        }
    }
    found.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    found
}

/// A concrete branch of a PVIμ solution that can be sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionHandle {
    Picard(PicardParams),
    Chazy(ChazyParam),
    /// `y = ax/(1 − (1 − a)x)` at `μ = 1`.
    RationalFamily { a: C },
    /// Branch of a parametric curve selected by continuing from `seed`.
    ParametricAlgebraic { curve: Curve, seed: C },
    /// Image of `base` under a ladder of maps (a Picard-type solution when
    /// `base` is Picard).
    Transformed { base: Box<SolutionHandle>, steps: Vec<LadderStep> },
}

impl SolutionHandle {
    pub fn mu(&self) -> Rational64 {
        match self {
            SolutionHandle::Picard(_) | SolutionHandle::ParametricAlgebraic { .. } => Rational64::new(1, 2),
            SolutionHandle::Chazy(_) => Rational64::new(-1, 2),
            SolutionHandle::RationalFamily { .. } => Rational64::from_integer(1),
            SolutionHandle::Transformed { base, steps } => steps.last().map(|s| s.target()).unwrap_or_else(|| base.mu()),
        }
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu().to_f64().unwrap_or(f64::NAN)
    }

    fn step_factor(&self) -> f64 {
        match self {
            SolutionHandle::Chazy(_) => SLOPE_STEP_FACTOR,
            _ => DEFAULT_STEP_FACTOR,
        }
    }

    /// Value at `x`; transcendental kinds use the given chart's branch.
    pub fn eval_on(&self, x: C, chart: Chart) -> Result<C> {
        match self {
            SolutionHandle::Picard(p) => picard_from_basis(&basis_at(x, chart)?, p),
            SolutionHandle::Chazy(nu) => chazy_from_basis(&basis_at(x, chart)?, nu),
            SolutionHandle::RationalFamily { a } => rational_solution_value(*a, x),
            SolutionHandle::ParametricAlgebraic { curve, seed } => {
                let s = solve_parameter(*curve, x, *seed)?;
                Ok(curve.y_of().eval(s))
            }
            SolutionHandle::Transformed { .. } => self.first_jet(x, chart).map(|j| j.0),
        }
    }

    /// `(y, y')`: exact except for Picard bases, whose slope comes from the
    /// stencil; the maps carry it forward in closed form.
    fn first_jet(&self, x: C, chart: Chart) -> Result<(C, C)> {
        match self {
            SolutionHandle::Picard(_) => {
                let h = DEFAULT_STEP_FACTOR * singular_distance(x);
                let (y, yp, _) = stencil_derivatives(&|z| self.eval_on(z, chart), x, h)?;
                Ok((y, yp))
            }
            SolutionHandle::Chazy(nu) => chazy_jet_from_basis(&basis_at(x, chart)?, nu),
            SolutionHandle::RationalFamily { a } => rational_solution_jet(*a, x).map(|(y, yp, _)| (y, yp)),
            SolutionHandle::ParametricAlgebraic { curve, seed } => {
                curve.jet(solve_parameter(*curve, x, *seed)?).map(|(y, yp, _)| (y, yp))
            }
            SolutionHandle::Transformed { base, steps } => {
                let (mut y, mut yp) = base.first_jet(x, chart)?;
                for st in steps {
                    if let LadderStep::S1 { mu } = *st {
                        (y, yp) = s1_transform_jet(&JetPoint::new(x, y, yp, mu)?)?;
                    }
                }
                Ok((y, yp))
            }
        }
    }

    pub fn eval(&self, x: C) -> Result<C> {
        self.eval_on(x, Chart::choose(x).unwrap_or(Chart::Zero))
    }

    /// Value at the local coordinate `t` of `chart`.
    pub fn eval_local(&self, chart: Chart, t: C) -> Result<C> {
        match self {
            SolutionHandle::Picard(p) => picard_from_basis(&basis_at_local(chart, t)?, p),
            SolutionHandle::Chazy(nu) => chazy_from_basis(&basis_at_local(chart, t)?, nu),
            _ => self.eval_on(chart.global(t), chart),
        }
    }

    /// `(y, y', y'')` at `x`; exact for the rational family and the
    /// parametric curves, otherwise by
    /// [`stencil_derivatives`] with all stencil points on the chart chosen
    /// at `x`.
    pub fn jet(&self, x: C, step: Option<f64>) -> Result<(C, C, C)> {
        match self {
            SolutionHandle::RationalFamily { a } => return rational_solution_jet(*a, x),
            SolutionHandle::ParametricAlgebraic { curve, seed } => return curve.jet(solve_parameter(*curve, x, *seed)?),
            _ => {}
        }
        let chart = Chart::choose(x).unwrap_or(Chart::Zero);
        let h = step.unwrap_or(self.step_factor() * singular_distance(x));
        if let SolutionHandle::Chazy(_) | SolutionHandle::Transformed { .. } = self {
            // Only y'' comes from the stencil.
            let (y, _) = self.first_jet(x, chart)?;
            let (yp, ypp, _) = stencil_derivatives(&|z| self.first_jet(z, chart).map(|j| j.1), x, h)?;
            return Ok((y, yp, ypp));
        }
        stencil_derivatives(&|z| self.eval_on(z, chart), x, h)
    }
}

fn singular_distance(x: C) -> f64 {
    x.norm().min((x - 1.0).norm())
}

/// `ax/(1 − (1 − a)x)`.
pub fn rational_solution_value(a: C, x: C) -> Result<C> {
    if a == C::zero() {
        return Err(Error::InvalidParams("a = 0 is excluded".into()));
    }
    let den = 1.0 - (1.0 - a) * x;
    if den.norm() <= 1e-14 * (1.0 + ((1.0 - a) * x).norm()) {
        return Err(Error::Pole(format!("x = {x} is the pole 1/(1 − a)")));
    }
    Ok(a * x / den)
}

/// Exact `(y, y', y'')` of the rational family.
pub fn rational_solution_jet(a: C, x: C) -> Result<(C, C, C)> {
    let y = rational_solution_value(a, x)?;
    let den = 1.0 - (1.0 - a) * x;
    Ok((y, a / (den * den), 2.0 * a * (1.0 - a) / (den * den * den)))
}

/// `|y'' − RHS| / (1 + |RHS|)` at `x`. `step` overrides the stencil step.
pub fn pvi_residual(h: &SolutionHandle, x: C, step: Option<f64>) -> Result<f64> {
    let (y, yp, ypp) = h.jet(x, step)?;
    for (v, name) in [(y, "0"), (y - 1.0, "1"), (y - x, "x")] {
        if v.norm() < SINGULAR_GUARD {
            return Err(Error::NearSingular(format!("y({x}) = {y} is within the guard of {name}")));
        }
    }
    let rhs = pvi_rhs(x, y, yp, h.mu_f64());
    Ok((ypp - rhs).norm() / (1.0 + rhs.norm()))
}

/// Radii `rmin..rmax` (log-spaced) on the ray `arg t = angle` of the local
/// coordinate at the fitted point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub rmin: f64,
    pub rmax: f64,
    pub samples: usize,
    pub angle: f64,
}

impl FitWindow {
    pub fn new(rmin: f64, rmax: f64) -> Self {
        FitWindow { rmin, rmax, samples: 9, angle: 0.4 }
    }

    fn radii(&self) -> Result<Vec<f64>> {
        if self.samples < 8 || !(self.rmin > 0.0 && self.rmin < self.rmax) {
            return Err(Error::Domain("fit window needs ≥ 8 samples and 0 < rmin < rmax".into()));
        }
        let (a, b) = (self.rmin.ln(), self.rmax.ln());
        Ok((0..self.samples).map(|k| (a + (b - a) * k as f64 / (self.samples - 1) as f64).exp()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitOutcome {
    /// Exponent `e` with `y ~ t^e` at 0, `1 − y ~ (1 − x)^e` at 1, `y ~ x^e` at ∞.
    /// Along the fitting ray `Re e` is the log-log slope of `|obs|`.
    Exponent(C),
    /// Coefficients of `obs·L² = leading + third_order/L + …` where `L` is the
    /// local logarithm and `obs` is `y`, `y − 1` or `y/x`.
    LogSeries { leading: C, third_order: C },
}

impl FitOutcome {
    /// Shift `c` in `obs ≈ leading·(L + c)⁻²`.
    pub fn log_shift(&self) -> Option<C> {
        match *self {
            FitOutcome::LogSeries { leading, third_order } => Some(-third_order / (2.0 * leading)),
            FitOutcome::Exponent(_) => None,
        }
    }
}

/// Least-squares exponent (or, for Chazy solutions, inverse-log expansion) at
/// a singular point.
///
/// Power laws are fitted as complex `log obs` against `ln r`. Correction terms
/// of relative size `r^l` make the fitted slope drift off the real axis faster
/// than its real part moves, so compare `Re e` when the exponent is real.
pub fn fit_exponent(h: &SolutionHandle, point: SingularPoint, window: FitWindow) -> Result<FitOutcome> {
    let chart = point.chart();
    let dir = C::from_polar(1.0, window.angle);
    let radii = window.radii()?;
    let mut logs = Vec::with_capacity(radii.len());
    let mut obs = Vec::with_capacity(radii.len());
    for &r in &radii {
        let t = r * dir;
        let y = h.eval_local(chart, t)?;
        let o = match (point, h) {
            (SingularPoint::Zero, _) => y,
            (SingularPoint::One, SolutionHandle::Chazy(_)) => y - 1.0,
            (SingularPoint::One, _) => 1.0 - y,
            (SingularPoint::Infinity, SolutionHandle::Chazy(_)) => y * t,
            (SingularPoint::Infinity, _) => y,
        };
        logs.push(t.ln());
        obs.push(o);
    }
    if let SolutionHandle::Chazy(_) = h {
        // Away from the point `obs ≈ s/((L + c)² − 1)` with `s = ±1`, so
        // `1/obs` is a quadratic in `L` up to terms of order `|t| L⁴`. The
        // free quadratic fit measures the leading coefficient; the shift is
        // then fitted with the leading coefficient pinned to its sign, which
        // is far less sensitive to those terms.
        let scale = logs.iter().map(|l| l.norm()).fold(0.0, f64::max);
        let inv: Vec<C> = obs.iter().map(|&o| cdiv(C::new(1.0, 0.0), o)).collect();
        let rows: Vec<Vec<C>> = logs.iter().map(|&l| (0..3).map(|k| (l / scale).powi(k)).collect()).collect();
        let c = lstsq(&rows, &inv)?;
        let leading = cdiv(C::new(scale * scale, 0.0), c[2]);
        let s = if leading.re < 0.0 { -1.0 } else { 1.0 };
        let rows: Vec<Vec<C>> = logs.iter().map(|&l| vec![C::new(1.0, 0.0), l / scale]).collect();
        let rhs: Vec<C> = inv.iter().zip(&logs).map(|(&v, &l)| s * v - l * l).collect();
        let shift = lstsq(&rows, &rhs)?[1] / (2.0 * scale);
        return Ok(FitOutcome::LogSeries { leading, third_order: -2.0 * s * shift });
    }
    let mut prev_arg: Option<f64> = None;
    let mut unwrapped = Vec::with_capacity(obs.len());
    for o in &obs {
        if o.norm() == 0.0 || !o.is_finite() {
            return Err(Error::Domain("observable vanishes inside the fit window".into()));
        }
        let mut arg = o.arg();
        if let Some(p) = prev_arg {
            arg += (2.0 * PI) * ((p - arg) / (2.0 * PI)).round();
        }
        prev_arg = Some(arg);
        unwrapped.push(C::new(o.norm().ln(), arg));
    }
    let sign = if point == SingularPoint::Infinity { -1.0 } else { 1.0 };
    let rows: Vec<Vec<C>> = radii.iter().map(|r| vec![C::new(1.0, 0.0), C::new(sign * r.ln(), 0.0)]).collect();
    let c = lstsq(&rows, &unwrapped)?;
    Ok(FitOutcome::Exponent(c[1]))
}

/// Complex least squares by modified Gram–Schmidt.
pub fn lstsq(rows: &[Vec<C>], rhs: &[C]) -> Result<Vec<C>> {
    let m = rows.len();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    if m < n || n == 0 {
        return Err(Error::Domain("under-determined least-squares problem".into()));
    }
    let mut q: Vec<Vec<C>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut r = vec![vec![C::zero(); n]; n];
    let mut b = rhs.to_vec();
    for j in 0..n {
        for i in 0..j {
            let (head, tail) = q.split_at_mut(j);
            let (qi, qj) = (&head[i], &mut tail[0]);
            let dot: C = qi.iter().zip(qj.iter()).map(|(a, b)| a.conj() * b).sum();
            r[i][j] = dot;
            for (t, &v) in qj.iter_mut().zip(qi) {
                *t -= dot * v;
            }
        }
        let norm = q[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("rank-deficient least-squares problem".into()));
        }
        r[j][j] = C::new(norm, 0.0);
        for v in q[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut qb = vec![C::zero(); n];
    for j in 0..n {
        let dot: C = (0..m).map(|k| q[j][k].conj() * b[k]).sum();
        qb[j] = dot;
        for k in 0..m {
            let v = q[j][k];
            b[k] -= dot * v;
        }
    }
    let mut c = vec![C::zero(); n];
    for j in (0..n).rev() {
        let s: C = (j + 1..n).map(|k| r[j][k] * c[k]).sum();
        c[j] = (qb[j] - s) / r[j][j];
    }
    Ok(c)
}

/// Polynomial `Σ c·xⁱ·yʲ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    pub terms: Vec<(C, u32, u32)>,
}

impl Poly2 {
    pub fn new(terms: Vec<(f64, u32, u32)>) -> Self {
        Poly2 { terms: terms.into_iter().map(|(c, i, j)| (C::new(c, 0.0), i, j)).collect() }
    }

    pub fn eval(&self, x: C, y: C) -> C {
        self.terms.iter().map(|&(c, i, j)| c * x.powu(i) * y.powu(j)).sum()
    }

    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.0.norm()).sum()
    }
}

/// `max |F(x̃, ỹ)| / Σ|coefficients|` over the samples, where `(x̃, ỹ)` is the
/// point `(x, y(x))` moved by the listed elementary symmetries.
pub fn check_relation(h: &SolutionHandle, relation: &Poly2, samples: &[C], symmetry: &[Elementary]) -> Result<f64> {
    let norm = relation.coefficient_norm();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::Domain("relation has no finite nonzero coefficients".into()));
    }
    let mut worst = 0.0_f64;
    for &x in samples {
        let y = h.eval(x)?;
        let (xs, ys) = elementary_symmetry(symmetry, x, y)?;
        worst = worst.max(relation.eval(xs, ys).norm() / norm);
    }
    Ok(worst)
}

/// Continuation matrix assigned to each loop.
pub fn loop_matrix(lp: Loop) -> Gamma2Element {
    match lp {
        Loop::Gamma0 => Gamma2Element::GAMMA0,
        Loop::Gamma1 => Gamma2Element::GAMMA1,
        Loop::Trivial => Gamma2Element::IDENTITY,
    }
}

/// Test points for [`loop_consistency`].
pub fn loop_test_points() -> Vec<C> {
    (0..8).map(|k| C::new(0.5, 0.0) + C::from_polar(0.1, 2.0 * PI * k as f64 / 8.0)).collect()
}

/// Largest discrepancy `|y_cont − y_ref|/(1 + |y_ref|)` between the solution
/// continued numerically around `lp` and the evaluator with transformed
/// parameters, over [`loop_test_points`].
pub fn loop_consistency(h: &SolutionHandle, lp: Loop) -> Result<f64> {
    let m = loop_matrix(lp);
    let mut worst = 0.0_f64;
    for x in loop_test_points() {
        let b0 = basis_at(x, Chart::Zero)?;
        let b1 = continue_basis_value(&b0, &loop_path(lp, x, LOOP_STEPS)?)?;
        let (cont, reference) = match h {
            SolutionHandle::Picard(p) => (picard_from_basis(&b1, p)?, picard_from_basis(&b0, &gamma2_act_params(&m, p))?),
            SolutionHandle::Chazy(nu) => (chazy_from_basis(&b1, nu)?, chazy_from_basis(&b0, &gamma2_act_moebius(&m, nu))?),
            _ => return Err(Error::Domain("loop consistency applies to Picard and Chazy solutions".into())),
        };
        worst = worst.max((cont - reference).norm() / (1.0 + reference.norm()));
    }
    Ok(worst)
}
