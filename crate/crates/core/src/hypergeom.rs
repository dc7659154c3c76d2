//! Solutions of the hypergeometric equation `x(1-x)ω'' + (1-2x)ω' - ω/4 = 0`.
//!
//! Two local solutions are evaluated by their power series:
//!
//! * `F(x) = F(1/2, 1/2; 1; x)`,
//! * `g(x) = Σ ((1/2)_k / k!)² x^k [ln x + 2ψ(1/2 + k) - 2ψ(k + 1)]`,
//!
//! and combined into the period basis `(ω₁, ω₂)` on three charts:
//!
//! | chart      | disc        | ω₁                          | ω₂                 |
//! |------------|-------------|-----------------------------|--------------------|
//! | `Zero`     | `|x| < 1`   | `π/2 F(x)`                  | `-i/2 g(x)`        |
//! | `One`      | `|1-x| < 1` | `-1/2 g(1-x)`               | `iπ/2 F(1-x)`      |
//! | `Infinity` | `|x| > 1`   | `(i g(1/x) + π F(1/x))/(2√x)` | `-i g(1/x)/(2√x)` |
//!
//! Logarithms and square roots use the principal branch, i.e. cuts along
//! `(-∞, 0]` in the local coordinate. The `Zero` and `One` bases agree on
//! their overlap, and the `Infinity` basis agrees with them for `Im x < 0`;
//! for `Im x > 0` it is `(ω₁ − 2ω₂, ω₂)`.
//!
//! [`continue_basis`] continues the basis numerically around the loops
//! encircling 0 and 1 by re-expanding the equation in Taylor series along a
//! polygonal path.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

type C = Complex64;

/// Distance kept from the boundary of each series disc.
pub const SERIES_MARGIN: f64 = 0.01;
/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 100_000;
/// Relative size of the certified tail at which summation stops.
pub const SERIES_REL_TOL: f64 = 1e-18;

/// Radius of the circles used for the standard loops.
pub const LOOP_RADIUS: f64 = 0.5;
/// Number of re-expansion centres per loop.
pub const LOOP_STEPS: usize = 64;
/// Base point shared by both standard loops.
pub const BASE_POINT: f64 = 0.5;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const I: C = C::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    Zero,
    One,
    Infinity,
}

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::Zero, Chart::One, Chart::Infinity];

    /// Local coordinate of `x` on this chart: `x`, `1 - x` or `1/x`.
    pub fn local(self, x: C) -> C {
        match self {
            Chart::Zero => x,
            Chart::One => C::new(1.0, 0.0) - x,
            Chart::Infinity => cdiv(C::new(1.0, 0.0), x),
        }
    }

    /// Inverse of [`Chart::local`].
    pub fn global(self, t: C) -> C {
        match self {
            Chart::Zero => t,
            Chart::One => C::new(1.0, 0.0) - t,
            Chart::Infinity => cdiv(C::new(1.0, 0.0), t),
        }
    }

    /// `1 - |local(x)|`; positive inside the chart's disc.
    pub fn margin(self, x: C) -> f64 {
        if self == Chart::Infinity && x.norm() == 0.0 {
            return f64::NEG_INFINITY;
        }
        1.0 - self.local(x).norm()
    }

    /// The chart whose disc contains `x` with the largest margin
    /// (ties resolved in the order Zero, One, Infinity).
    pub fn choose(x: C) -> Result<Chart> {
        let mut best = Chart::Zero;
        let mut best_margin = Chart::Zero.margin(x);
        for chart in [Chart::One, Chart::Infinity] {
            let m = chart.margin(x);
            if m > best_margin {
                best = chart;
                best_margin = m;
            }
        }
        if best_margin <= SERIES_MARGIN {
            return Err(Error::Domain(format!("x = {x} is not inside any chart disc")));
        }
        Ok(best)
    }
}

/// Values and x-derivatives of the period basis at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisValue {
    pub omega1: C,
    pub omega2: C,
    pub omega1_prime: C,
    pub omega2_prime: C,
    pub chart: Chart,
    pub x: C,
    /// Local coordinate of `x` on `chart`.
    pub local: C,
}

impl BasisValue {
    pub fn wronskian(&self) -> C {
        self.omega1 * self.omega2_prime - self.omega2 * self.omega1_prime
    }

    /// Relative defect of Abel's identity `x(1-x)W = -iπ/4`, which holds on
    /// every chart because the basis is normalised with unit determinant.
    pub fn abel_defect(&self) -> f64 {
        let w0 = C::new(0.0, -PI / 4.0);
        let x = self.x;
        (x * (1.0 - x) * self.wronskian() - w0).norm() / w0.norm()
    }

    pub fn omega(&self) -> [C; 2] {
        [self.omega1, self.omega2]
    }

    pub fn omega_prime(&self) -> [C; 2] {
        [self.omega1_prime, self.omega2_prime]
    }
}

/// Second derivative of any solution, read off from the equation.
pub fn ode_second_derivative(x: C, w: C, wp: C) -> C {
    (0.25 * w - (1.0 - 2.0 * x) * wp) / (x * (1.0 - x))
}

/// `a / b` by Smith's method, free of the spurious under- and overflow of
/// the textbook formula when `|b|` is very small or large.
pub fn cdiv(a: C, b: C) -> C {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        C::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        C::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

/// Partial sums of F, F', H, H' where `g = F ln t + H`.
#[derive(Debug, Clone, Copy)]
struct Sums {
    f: C,
    fp: C,
    h: C,
    hp: C,
}

fn check_disc(t: C) -> Result<()> {
    let r = t.norm();
    if !r.is_finite() || r >= 1.0 - SERIES_MARGIN {
        return Err(Error::Domain(format!(
            "|t| = {r} outside the series disc of radius {}",
            1.0 - SERIES_MARGIN
        )));
    }
    Ok(())
}

fn sums(t: C) -> Result<Sums> {
    check_disc(t)?;
    let r = t.norm();
    let dmax = 4.0 * LN_2;

    // Digamma values by recurrence from the exact seeds.
    let mut psi_half = -EULER_GAMMA - 2.0 * LN_2;
    let mut psi_int = -EULER_GAMMA;

    let mut s = Sums { f: C::new(0.0, 0.0), fp: C::new(0.0, 0.0), h: C::new(0.0, 0.0), hp: C::new(0.0, 0.0) };
    let mut ck = 1.0_f64;
    let mut tk = C::new(1.0, 0.0); // t^k
    let mut tkm1 = C::new(0.0, 0.0); // t^(k-1)
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let dk = 2.0 * psi_half - 2.0 * psi_int;
        s.f += ck * tk;
        s.h += ck * dk * tk;
        if k > 0 {
            s.fp += kf * ck * tkm1;
            s.hp += kf * ck * dk * tkm1;
        }

        let ratio = ((kf + 0.5) / (kf + 1.0)).powi(2);
        let next = ck * ratio;
        let rho = r * (1.0 + 1.0 / (4.0 * (kf + 1.0) * (kf + 2.0)));
        let next_mag = next * r.powi(k as i32) * r.max(kf + 1.0);
        let scale = s.f.norm() + s.h.norm() + s.fp.norm() + s.hp.norm();
        // The geometric bound on the tail needs the term ratio below one.
        let certified = rho < 1.0 && next_mag * (1.0 + dmax) / (1.0 - rho) <= SERIES_REL_TOL * scale;
        if certified || next_mag == 0.0 {
            return Ok(s);
        }

        psi_half += 1.0 / (kf + 0.5);
        psi_int += 1.0 / (kf + 1.0);
        ck = next;
        tkm1 = tk;
        tk *= t;
    }
    Err(Error::NonConvergence(format!("hypergeometric series at t = {t}")))
}

/// `F(1/2, 1/2; 1; x)`.
pub fn eval_f(x: C) -> Result<C> {
    Ok(sums(x)?.f)
}

/// `dF/dx`.
pub fn eval_f_prime(x: C) -> Result<C> {
    Ok(sums(x)?.fp)
}

/// The logarithmic solution `g(x)`; rejects `x = 0`.
pub fn eval_g(x: C) -> Result<C> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("g has a logarithmic singularity at 0".into()));
    }
    let s = sums(x)?;
    Ok(s.f * x.ln() + s.h)
}

/// `dg/dx`; rejects `x = 0`.
pub fn eval_g_prime(x: C) -> Result<C> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("g has a logarithmic singularity at 0".into()));
    }
    let s = sums(x)?;
    Ok(s.fp * x.ln() + s.f / x + s.hp)
}

/// `(F, F', g, g')` at a nonzero local coordinate.
fn fg(t: C) -> Result<(C, C, C, C)> {
    if t.norm() == 0.0 {
        return Err(Error::Domain("basis rejects the singular point itself".into()));
    }
    let s = sums(t)?;
    let lt = t.ln();
    Ok((s.f, s.fp, s.f * lt + s.h, s.fp * lt + cdiv(s.f, t) + s.hp))
}

/// Basis at `x` on the given chart.
pub fn basis_at(x: C, chart: Chart) -> Result<BasisValue> {
    if chart == Chart::Infinity && x.norm() == 0.0 {
        return Err(Error::Domain("x = 0 is not on the chart at infinity".into()));
    }
    basis_at_local(chart, chart.local(x))
}

/// Basis at the point with local coordinate `t` on `chart`.
///
/// Useful very close to a singular point, where `x` itself would round to
/// the singular value.
pub fn basis_at_local(chart: Chart, t: C) -> Result<BasisValue> {
    let (f, fp, g, gp) = fg(t)?;
    let half_pi = PI / 2.0;
    let x = chart.global(t);
    let b = match chart {
        Chart::Zero => BasisValue {
            omega1: half_pi * f,
            omega2: -0.5 * I * g,
            omega1_prime: half_pi * fp,
            omega2_prime: -0.5 * I * gp,
            chart,
            x,
            local: t,
        },
        Chart::One => BasisValue {
            omega1: -0.5 * g,
            omega2: I * half_pi * f,
            omega1_prime: 0.5 * gp,
            omega2_prime: -I * half_pi * fp,
            chart,
            x,
            local: t,
        },
        Chart::Infinity => {
            // ω = s h(t) with s = x^{-1/2}, t = 1/x:  ω' = -s t (h/2 + t h_t).
            let s = x.sqrt().inv();
            let h1 = 0.5 * (I * g + PI * f);
            let h1t = 0.5 * (I * gp + PI * fp);
            let h2 = -0.5 * I * g;
            let h2t = -0.5 * I * gp;
            BasisValue {
                omega1: s * h1,
                omega2: s * h2,
                omega1_prime: -s * t * (0.5 * h1 + t * h1t),
                omega2_prime: -s * t * (0.5 * h2 + t * h2t),
                chart,
                x,
                local: t,
            }
        }
    };
    Ok(b)
}

/// Basis on the automatically chosen chart.
pub fn basis(x: C) -> Result<BasisValue> {
    basis_at(x, Chart::choose(x)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Loop {
    /// Counter-clockwise around 0.
    Gamma0,
    /// Counter-clockwise around 1.
    Gamma1,
    /// A small circle enclosing neither singular point.
    Trivial,
}

/// Closed polygonal path starting and ending at `start` realising `lp`.
///
/// `Gamma0`/`Gamma1` are circles centred at the singular point through
/// `start`; `Trivial` is a circle through `start` of radius a quarter of its
/// distance to the nearest singular point.
pub fn loop_path(lp: Loop, start: C, steps: usize) -> Result<Vec<C>> {
    let (centre, other) = match lp {
        Loop::Gamma0 => (C::new(0.0, 0.0), C::new(1.0, 0.0)),
        Loop::Gamma1 => (C::new(1.0, 0.0), C::new(0.0, 0.0)),
        Loop::Trivial => {
            let d = start.norm().min((start - 1.0).norm());
            if d == 0.0 {
                return Err(Error::Domain("loop cannot start at a singular point".into()));
            }
            let rho = 0.25 * d;
            let c = start + rho;
            return Ok(circle(c, start, steps));
        }
    };
    let radius = (start - centre).norm();
    if radius == 0.0 || radius >= (other - centre).norm() {
        return Err(Error::Domain(format!("loop through {start} would not isolate its singular point")));
    }
    Ok(circle(centre, start, steps))
}

fn circle(centre: C, start: C, steps: usize) -> Vec<C> {
    let d = start - centre;
    let (r, theta0) = d.to_polar();
    let mut pts: Vec<C> = (0..steps)
        .map(|k| centre + C::from_polar(r, theta0 + 2.0 * PI * k as f64 / steps as f64))
        .collect();
    pts[0] = start;
    pts.push(start);
    pts
}

/// One Taylor step of the equation from `c` to `c + dt`.
pub fn taylor_step(c: C, w: C, wp: C, dt: C) -> Result<(C, C)> {
    let p = c * (1.0 - c);
    let radius = c.norm().min((1.0 - c).norm());
    if p.norm() == 0.0 || dt.norm() >= 0.9 * radius {
        return Err(Error::NonConvergence(format!("step {dt} from {c} leaves the convergence disc")));
    }
    let q = 1.0 - 2.0 * c;
    let (mut a0, mut a1) = (w, wp);
    let mut val = a0 + a1 * dt;
    let mut der = a1;
    let mut dtn = dt; // dt^(n+1) for the a_{n+1} term
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let a2 = (-(q * (nf + 1.0) * (nf + 1.0)) * a1 + (nf + 0.5) * (nf + 0.5) * a0) / (p * (nf + 2.0) * (nf + 1.0));
        let term_d = (nf + 2.0) * a2 * dtn;
        dtn *= dt;
        let term_v = a2 * dtn;
        val += term_v;
        der += term_d;
        let small = term_v.norm() <= SERIES_REL_TOL * val.norm() && term_d.norm() <= SERIES_REL_TOL * der.norm();
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok((val, der));
        }
        a0 = a1;
        a1 = a2;
    }
    Err(Error::NonConvergence("Taylor re-expansion".into()))
}

/// Continue a solution `(w, w')` along a polygonal path.
pub fn continue_along(path: &[C], w: C, wp: C) -> Result<(C, C)> {
    let (mut w, mut wp) = (w, wp);
    for seg in path.windows(2) {
        let (nw, nwp) = taylor_step(seg[0], w, wp, seg[1] - seg[0])?;
        w = nw;
        wp = nwp;
    }
    Ok((w, wp))
}

/// Continue both basis functions along `path` from the basis value `b`
/// (which must sit at `path[0]`); returns the continued values.
pub fn continue_basis_value(b: &BasisValue, path: &[C]) -> Result<BasisValue> {
    let (w1, w1p) = continue_along(path, b.omega1, b.omega1_prime)?;
    let (w2, w2p) = continue_along(path, b.omega2, b.omega2_prime)?;
    Ok(BasisValue { omega1: w1, omega2: w2, omega1_prime: w1p, omega2_prime: w2p, ..*b })
}

pub type Mat2 = [[C; 2]; 2];

/// Matrix `M` with `(ω̃₁, ω̃₂)ᵀ = M (ω₁, ω₂)ᵀ` after continuing the chart-Zero
/// basis around `lp` from the base point.
pub fn continue_basis(lp: Loop) -> Result<Mat2> {
    continue_basis_path(&[lp])
}

/// As [`continue_basis`] for loops traversed in the listed order; the
/// resulting matrix is the product of the individual ones in that order.
pub fn continue_basis_path(loops: &[Loop]) -> Result<Mat2> {
    let x0 = C::new(BASE_POINT, 0.0);
    let b0 = basis_at(x0, Chart::Zero)?;
    let mut path = vec![x0];
    for &lp in loops {
        let p = loop_path(lp, x0, LOOP_STEPS)?;
        path.extend_from_slice(&p[1..]);
    }
    let b1 = continue_basis_value(&b0, &path)?;
    Ok(transition(&b0, &b1))
}

/// Solve `rows(b1) = M rows(b0)` where rows are `(ω_i, ω_i')`.
pub fn transition(b0: &BasisValue, b1: &BasisValue) -> Mat2 {
    let a = [[b0.omega1, b0.omega1_prime], [b0.omega2, b0.omega2_prime]];
    let t = [[b1.omega1, b1.omega1_prime], [b1.omega2, b1.omega2_prime]];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let inv = [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]];
    let mut m = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = t[i][0] * inv[0][j] + t[i][1] * inv[1][j];
        }
    }
    m
}
