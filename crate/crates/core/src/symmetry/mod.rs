//! Birational map between PVIμ and PVI(−μ), its obstruction locus, and the
//! elementary `(x, y)` symmetries.
//!
//! The map is
//!
//! ```text
//! ỹ = y (p₀y'² + p₁y' + p₂)² / (q₀y'⁴ + q₁y'³ + q₂y'² + q₃y' + q₄)
//! ```
//!
//! with polynomial coefficients in `(x, y, μ)` stored in [`tables`]. The
//! equation depends on μ only through `(2μ − 1)²`, so PVIμ and PVI(1−μ) are
//! the same equation; we index equations by the class `k = |2μ − 1|`. The
//! map at parameter μ sends class `|2μ − 1|` to class `|2μ + 1|`.

pub mod tables;

use num_complex::Complex64;
use num_rational::Rational64;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::verify::pvi_rhs;
use tables::{Factored, Term};

type C = Complex64;

/// `s1_transform` reports a Chazy-type point when `|den| < DEN_ZERO_TOL·(1 + |num|)`.
pub const DEN_ZERO_TOL: f64 = 1e-10;
/// Jets with `y` this close to 0, 1 or `x` (relative) are rejected.
pub const SINGULAR_TOL: f64 = 1e-12;

/// A point of the first jet space of a solution of PVIμ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint {
    pub x: C,
    pub y: C,
    pub yprime: C,
    pub mu: Rational64,
}

impl JetPoint {
    pub fn new(x: C, y: C, yprime: C, mu: Rational64) -> Result<Self> {
        check_mu(mu)?;
        let scale = 1.0 + x.norm();
        if x.norm() < SINGULAR_TOL || (x - 1.0).norm() < SINGULAR_TOL {
            return Err(Error::Domain(format!("x = {x} is a fixed singular point")));
        }
        for (v, name) in [(y, "0"), (y - 1.0, "1"), (y - x, "x")] {
            if v.norm() < SINGULAR_TOL * scale {
                return Err(Error::NearSingular(format!("y = {y} coincides with {name}")));
            }
        }
        Ok(JetPoint { x, y, yprime, mu })
    }
}

fn check_mu(mu: Rational64) -> Result<()> {
    if !(mu * 2).is_integer() {
        return Err(Error::InvalidParams(format!("2μ = {} is not an integer", mu * 2)));
    }
    Ok(())
}

/// Evaluate a table of `coef·aⁱ·bʲ·cᵏ` terms as nested Horner schemes: in
/// `c` innermost, then `a`, then `b`.
///
/// Coefficients of each power of `b` are formed before `b` enters, so a power
/// whose coefficient vanishes identically at the given `(a, c)` contributes
/// exactly zero. With `b = y` large (near a pole of the solution) this is what
/// keeps the map accurate; summing monomials directly loses all digits.
pub fn eval_table(table: &[Term], a: C, b: C, c: C) -> C {
    horner_grid(&coefficient_grid(table, c), a, b)
}

/// Coefficients of `aⁱbʲ` with `c` substituted, indexed `[j][i]`.
fn coefficient_grid(table: &[Term], c: C) -> Vec<Vec<C>> {
    let (ni, nj, nk) = table
        .iter()
        .fold((0, 0, 0), |(ni, nj, nk), &(_, i, j, k)| (ni.max(i as usize), nj.max(j as usize), nk.max(k as usize)));
    let mut coef = vec![vec![vec![0i64; nk + 1]; ni + 1]; nj + 1];
    for &(v, i, j, k) in table {
        coef[j as usize][i as usize][k as usize] += v;
    }
    coef.iter().map(|rows| rows.iter().map(|ks| horner_real(ks, c)).collect()).collect()
}

fn horner_grid<T>(grid: &[Vec<C>], a: T, b: T) -> T
where
    T: Copy + From<C> + Add<Output = T> + Mul<Output = T>,
{
    let asc = |cs: &[T], z: T| cs.iter().rev().fold(T::from(C::zero()), |acc, &v| acc * z + v);
    let by_b: Vec<T> = grid
        .iter()
        .map(|row| asc(&row.iter().map(|&v| T::from(v)).collect::<Vec<_>>(), a))
        .collect();
    asc(&by_b, b)
}

fn horner_real(coeffs: &[i64], z: C) -> C {
    coeffs.iter().rev().fold(C::zero(), |acc, &v| acc * z + v as f64)
}

/// Evaluate a factored coefficient. The explicit factors keep the value
/// accurate next to `y = 0`, `y = 1`; the inner part goes through
/// [`eval_table`].
pub fn eval_factored(f: &Factored, x: C, y: C, mu: C) -> C {
    x.powu(f.x) * (x - 1.0).powu(f.xm1) * y.powu(f.y) * (y - 1.0).powu(f.ym1) * eval_table(f.inner, x, y, mu)
}

/// `(p₀, p₁, p₂)` and `(q₀, …, q₄)` at `(x, y, μ)`.
pub fn s1_polynomials(x: C, y: C, mu: Rational64) -> ([C; 3], [C; 5]) {
    let m = C::new(mu.to_f64().unwrap_or(f64::NAN), 0.0);
    let p = [tables::P0, tables::P1, tables::P2].map(|t| eval_factored(&t, x, y, m));
    let q = [tables::Q0, tables::Q1, tables::Q2, tables::Q3, tables::Q4].map(|t| eval_factored(&t, x, y, m));
    (p, q)
}

fn horner(coeffs: &[C], z: C) -> C {
    coeffs.iter().fold(C::zero(), |acc, &c| acc * z + c)
}

/// Numerator `y·(p₀y'² + p₁y' + p₂)²` and denominator `Q` of the map.
pub fn s1_parts(j: &JetPoint) -> (C, C) {
    let (p, q) = s1_polynomials(j.x, j.y, j.mu);
    let n = horner(&p, j.yprime);
    (j.y * n * n, horner(&q, j.yprime))
}

/// The quartic-in-`y'` denominator `Q(y', y, x; μ)`.
pub fn q_denominator(j: &JetPoint) -> C {
    s1_parts(j).1
}

/// Scale-free size of `Q`: `|Q| / (|Q| + |y N²|)`, in `[0, 1]`.
///
/// Raw `|Q|` carries the factor `x⁴(x−1)⁴` of its leading coefficient and is
/// not comparable across sample points; relative to the numerator of the
/// map it equals `1/(1 + |ỹ|)`.
pub fn q_relative(j: &JetPoint) -> f64 {
    let (num, den) = s1_parts(j);
    let d = den.norm();
    if d == 0.0 {
        return 0.0;
    }
    d / (d + num.norm())
}

/// Image `ỹ` of the jet under the map; the image solves PVI(−μ).
pub fn s1_transform(j: &JetPoint) -> Result<C> {
    let (num, den) = s1_parts(j);
    if den.norm() < DEN_ZERO_TOL * (1.0 + num.norm()) || !den.is_finite() {
        return Err(Error::DenominatorZero { den: den.norm(), num: num.norm() });
    }
    Ok(num / den)
}

/// Value and gradient in `(x, y, y')`.
#[derive(Debug, Clone, Copy)]
struct Dual {
    v: C,
    d: [C; 3],
}

impl Dual {
    fn var(v: C, k: usize) -> Self {
        let mut d = [C::zero(); 3];
        d[k] = C::one();
        Dual { v, d }
    }

    fn powu(self, n: u32) -> Self {
        (0..n).fold(Dual::from(C::one()), |acc, _| acc * self)
    }
}

impl From<C> for Dual {
    fn from(v: C) -> Self {
        Dual { v, d: [C::zero(); 3] }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: [0, 1, 2].map(|k| self.d[k] + o.d[k]) }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: [0, 1, 2].map(|k| self.d[k] - o.d[k]) }
    }
}

impl Mul for Dual {
    type Output = Dual;
    // Product rule.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: [0, 1, 2].map(|k| self.d[k] * o.v + self.v * o.d[k]) }
    }
}

/// `(ỹ, dỹ/dx)` along the solution through `j`, with `y''` eliminated by
/// the equation at `j.mu`.
pub fn s1_transform_jet(j: &JetPoint) -> Result<(C, C)> {
    let m = C::new(j.mu.to_f64().unwrap_or(f64::NAN), 0.0);
    let (x, y, yp) = (Dual::var(j.x, 0), Dual::var(j.y, 1), Dual::var(j.yprime, 2));
    let one = Dual::from(C::one());
    let ev = |f: &Factored| {
        x.powu(f.x) * (x - one).powu(f.xm1) * y.powu(f.y) * (y - one).powu(f.ym1) * horner_grid(&coefficient_grid(f.inner, m), x, y)
    };
    let horner_d = |cs: &[Dual]| cs.iter().fold(Dual::from(C::zero()), |acc, &c| acc * yp + c);
    let p = [tables::P0, tables::P1, tables::P2].map(|t| ev(&t));
    let q = [tables::Q0, tables::Q1, tables::Q2, tables::Q3, tables::Q4].map(|t| ev(&t));
    let n = horner_d(&p);
    let num = y * n * n;
    let den = horner_d(&q);
    if den.v.norm() < DEN_ZERO_TOL * (1.0 + num.v.norm()) || !den.v.is_finite() {
        return Err(Error::DenominatorZero { den: den.v.norm(), num: num.v.norm() });
    }
    let val = num.v / den.v;
    let g = [0, 1, 2].map(|k| (num.d[k] - val * den.d[k]) / den.v);
    let ypp = pvi_rhs(j.x, j.y, j.yprime, m.re);
    Ok((val, g[0] + g[1] * j.yprime + g[2] * ypp))
}

/// The four branches of `Q(y', y, x; −1/2) = 0` solved for `y'`, principal
/// square roots, in the order `(−s, +a₊)`, `(−s, −a₊)`, `(+s, +a₋)`, `(+s, −a₋)`
/// where `s = √(y(y−1))` and `a± = √(2y − 1 ± 2s)`.
pub fn q_branch_roots(x: C, y: C) -> [C; 4] {
    let yy = y * (y - 1.0);
    let s = yy.sqrt();
    let t = (yy * (y - x)).sqrt();
    let ap = (2.0 * y - 1.0 + 2.0 * s).sqrt();
    let am = (2.0 * y - 1.0 - 2.0 * s).sqrt();
    let d = x * (x - 1.0);
    [
        (yy - s * (y - x) + t * ap) / d,
        (yy - s * (y - x) - t * ap) / d,
        (yy + s * (y - x) + t * am) / d,
        (yy + s * (y - x) - t * am) / d,
    ]
}

/// The three factors whose non-vanishing keeps `Q` away from zero on
/// Picard-type images.
pub fn obstruction_factors(x: C, y: C, yprime: C) -> [C; 3] {
    [tables::OBSTRUCTION_1, tables::OBSTRUCTION_2, tables::OBSTRUCTION_3].map(|t| eval_table(t, x, y, yprime))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    /// `x ↦ 1 − x`, `y ↦ 1 − y`.
    T01,
    /// `x ↦ 1/x`, `y ↦ y/x`.
    T0Inf,
}

/// Apply the listed substitutions in order.
pub fn elementary_symmetry(which: &[Elementary], x: C, y: C) -> Result<(C, C)> {
    let (mut x, mut y) = (x, y);
    for w in which {
        (x, y) = match w {
            Elementary::T01 => (1.0 - x, 1.0 - y),
            Elementary::T0Inf => {
                if x.norm() == 0.0 || (x - 1.0).norm() == 0.0 {
                    return Err(Error::Domain(format!("x = {x} excluded for x ↦ 1/x")));
                }
                (x.inv(), y / x)
            }
        };
    }
    Ok((x, y))
}

/// As [`elementary_symmetry`], carrying `y'` along.
pub fn elementary_symmetry_jet(which: &[Elementary], x: C, y: C, yp: C) -> Result<(C, C, C)> {
    let (mut x, mut y, mut yp) = (x, y, yp);
    for w in which {
        let (nx, ny) = elementary_symmetry(&[*w], x, y)?;
        yp = match w {
            Elementary::T01 => yp,
            Elementary::T0Inf => y - x * yp,
        };
        x = nx;
        y = ny;
    }
    Ok((x, y, yp))
}

/// Equation class `|2μ − 1|`.
pub fn equation_class(mu: Rational64) -> Rational64 {
    (mu * 2 - 1).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderStep {
    /// The birational map at parameter `mu`: PVIμ → PVI(−μ).
    S1 { mu: Rational64 },
    /// Same equation, other label: `μ ↦ 1 − μ`.
    Relabel { from: Rational64, to: Rational64 },
}

impl LadderStep {
    pub fn target(&self) -> Rational64 {
        match *self {
            LadderStep::S1 { mu } => -mu,
            LadderStep::Relabel { to, .. } => to,
        }
    }
}

/// A sequence of maps and relabelings turning solutions of PVI(start) into
/// solutions of PVI(target). Half-integer and integer parameters form two
/// separate ladders.
pub fn mu_ladder(start: Rational64, target: Rational64) -> Result<Vec<LadderStep>> {
    check_mu(start)?;
    check_mu(target)?;
    if !(start - target).is_integer() {
        return Err(Error::UnreachableTarget { start: start.to_string(), target: target.to_string() });
    }
    let half = Rational64::new(1, 2);
    let goal = equation_class(target);
    let mut steps = Vec::new();
    let mut mu = start;
    let relabel = |steps: &mut Vec<LadderStep>, mu: &mut Rational64, to: Rational64| {
        if *mu != to {
            steps.push(LadderStep::Relabel { from: *mu, to });
            *mu = to;
        }
    };
    loop {
        let k = equation_class(mu);
        if k == goal {
            break;
        }
        // Label (1 + k)/2 climbs to k + 2; label (1 − k)/2 descends to |k − 2|.
        let up = k < goal;
        let label = if up { (Rational64::one() + k) * half } else { (Rational64::one() - k) * half };
        relabel(&mut steps, &mut mu, label);
        steps.push(LadderStep::S1 { mu });
        mu = -mu;
        if steps.len() > 10_000 {
            return Err(Error::NonConvergence("ladder construction".into()));
        }
    }
    relabel(&mut steps, &mut mu, target);
    Ok(steps)
}
