//! Picard's two-parameter family at `μ = 1/2`:
//! `y(x) = ℘(ν₁ω₁ + ν₂ω₂; ω₁, ω₂) + (x + 1)/3` with `(ω₁, ω₂)` the
//! hypergeometric periods.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{basis_at, BasisValue, Chart};
use crate::weierstrass::{wp, PeriodPair};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardParams {
    pub nu1: C,
    pub nu2: C,
}

impl PicardParams {
    pub fn new(nu1: C, nu2: C) -> Result<Self> {
        if nu1 == C::new(0.0, 0.0) && nu2 == C::new(0.0, 0.0) {
            return Err(Error::InvalidParams("(ν₁, ν₂) = (0, 0) is excluded".into()));
        }
        Ok(PicardParams { nu1, nu2 })
    }

    pub fn real(nu1: f64, nu2: f64) -> Result<Self> {
        Self::new(C::new(nu1, 0.0), C::new(nu2, 0.0))
    }

    /// Representative with `0 ≤ Re νᵢ < 2`, using even shifts only.
    pub fn normalized(&self) -> Self {
        PicardParams { nu1: shift_even(self.nu1), nu2: shift_even(self.nu2) }
    }
}

fn shift_even(nu: C) -> C {
    let k = (nu.re / 2.0).floor();
    let mut r = nu - 2.0 * k;
    if r.re >= 2.0 {
        r -= 2.0;
    }
    if r.re < 0.0 {
        r += 2.0;
    }
    r
}

/// Integer matrix `[[a, b], [c, d]]` in Γ(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gamma2Element {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gamma2Element {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::InvalidParams(format!("det [[{a},{b}],[{c},{d}]] ≠ 1")));
        }
        if a.is_even() || d.is_even() || b.is_odd() || c.is_odd() {
            return Err(Error::InvalidParams(format!("[[{a},{b}],[{c},{d}]] is not ≡ 1 mod 2")));
        }
        Ok(Gamma2Element { a, b, c, d })
    }

    pub const IDENTITY: Gamma2Element = Gamma2Element { a: 1, b: 0, c: 0, d: 1 };
    /// Continuation matrix of the loop around 0.
    pub const GAMMA0: Gamma2Element = Gamma2Element { a: 1, b: 0, c: 2, d: 1 };
    /// Continuation matrix of the loop around 1.
    pub const GAMMA1: Gamma2Element = Gamma2Element { a: 1, b: -2, c: 0, d: 1 };

    pub fn mul(&self, o: &Gamma2Element) -> Gamma2Element {
        Gamma2Element {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Gamma2Element {
        Gamma2Element { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

/// `(aν₁ + cν₂, bν₁ + dν₂)` before normalisation.
pub fn gamma2_act_params_raw(m: &Gamma2Element, p: &PicardParams) -> PicardParams {
    let (a, b, c, d) = (m.a as f64, m.b as f64, m.c as f64, m.d as f64);
    PicardParams { nu1: a * p.nu1 + c * p.nu2, nu2: b * p.nu1 + d * p.nu2 }
}

/// Parameters of the branch obtained by continuing along the loop whose
/// basis matrix is `m`, normalised into `0 ≤ Re < 2`.
pub fn gamma2_act_params(m: &Gamma2Element, p: &PicardParams) -> PicardParams {
    gamma2_act_params_raw(m, p).normalized()
}

/// Picard solution from an already evaluated basis.
pub fn picard_from_basis(b: &BasisValue, p: &PicardParams) -> Result<C> {
    let u = p.nu1 * b.omega1 + p.nu2 * b.omega2;
    let w = wp(u, PeriodPair::new(b.omega1, b.omega2))?;
    Ok(w + (b.x + 1.0) / 3.0)
}

pub fn picard_eval(x: C, p: &PicardParams, chart: Chart) -> Result<C> {
    if p.nu1 == C::new(0.0, 0.0) && p.nu2 == C::new(0.0, 0.0) {
        return Err(Error::InvalidParams("(ν₁, ν₂) = (0, 0) is excluded".into()));
    }
    picard_from_basis(&basis_at(x, chart)?, p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    pub l0: C,
    pub l1: C,
    pub linf: C,
}

fn fold(t: C) -> C {
    if t.re <= 1.0 {
        t
    } else {
        2.0 - t
    }
}

/// Leading exponents: `y ~ a₀x^{l₀}`, `1 - y ~ a₁(1-x)^{l₁}`,
/// `y ~ a∞x^{1-l∞}`.
///
/// Every exponent is brought into `0 ≤ Re l ≤ 1`: `ν₂ - ν₁` is first moved
/// into `[0, 2)` and then folded by `t ↦ 2 - t` when `Re t > 1`.
pub fn picard_exponents(p: &PicardParams) -> Exponents {
    let p = p.normalized();
    let mut t = p.nu2 - p.nu1;
    if t.re < 0.0 {
        t += 2.0;
    }
    Exponents { l0: fold(p.nu2), l1: fold(p.nu1), linf: fold(t) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicLabel {
    pub m: u64,
    pub n: u64,
}

/// `N = lcm(q₁, q₂)`, `M = gcd(p₁N/q₁, p₂N/q₂)` for `νᵢ = pᵢ/qᵢ` in lowest
/// terms. Since `0 ≤ νᵢ < 2`, `M < 2N` and `gcd(M, N) = 1` hold automatically.
pub fn algebraic_label(nu1: Rational64, nu2: Rational64) -> Result<AlgebraicLabel> {
    let two = Rational64::from_integer(2);
    for nu in [nu1, nu2] {
        if nu.is_negative() || nu >= two {
            return Err(Error::InvalidParams(format!("ν = {nu} outside [0, 2)")));
        }
    }
    if nu1.is_zero() && nu2.is_zero() {
        return Err(Error::InvalidParams("(ν₁, ν₂) = (0, 0) is excluded".into()));
    }
    let n = nu1.denom().lcm(nu2.denom());
    let a = nu1.numer() * (n / nu1.denom());
    let b = nu2.numer() * (n / nu2.denom());
    let m = a.gcd(&b);
    Ok(AlgebraicLabel { m: m as u64, n: n as u64 })
}
