//! Exact arithmetic in the cyclotomic integers `ℤ[ζ_m]`, `ζ_m = e^{2πi/m}`.
//!
//! Elements are integer polynomials in `ζ` reduced modulo the `m`-th
//! cyclotomic polynomial, so equality is coefficient equality. Coefficients
//! are `i128` with checked arithmetic; overflow surfaces as `None`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

#[derive(Debug, PartialEq, Eq)]
struct Field {
    order: u32,
    /// Monic `Φ_m`, ascending coefficients.
    phi: Vec<i128>,
}

/// Ascending coefficients of `Φ_m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i128> {
    assert!(m > 0, "cyclotomic order must be positive");
    // z^m − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let (n, d) = (num.len() - 1, den.len() - 1);
    let mut rem = num.to_vec();
    let mut q = vec![0i128; n - d + 1];
    for k in (0..=n - d).rev() {
        let c = rem[k + d];
        q[k] = c;
        for j in 0..=d {
            rem[k + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// An element of `ℤ[ζ_m]`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<i128>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        self.field.order == o.field.order && self.coeffs == o.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.field.order.hash(h);
        self.coeffs.hash(h);
    }
}

/// Shared context for one order `m`.
#[derive(Debug, Clone)]
pub struct CyclotomicField(Arc<Field>);

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        CyclotomicField(Arc::new(Field { order, phi: cyclotomic_polynomial(order) }))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn degree(&self) -> usize {
        self.0.phi.len() - 1
    }

    fn reduce(&self, mut p: Vec<i128>) -> Option<Cyclotomic> {
        let phi = &self.0.phi;
        let n = phi.len() - 1;
        for k in (n..p.len()).rev() {
            let c = p[k];
            if c != 0 {
                for j in 0..=n {
                    p[k - n + j] = p[k - n + j].checked_sub(c.checked_mul(phi[j])?)?;
                }
            }
        }
        p.resize(n, 0);
        Some(Cyclotomic { field: self.0.clone(), coeffs: p })
    }

    pub fn integer(&self, v: i128) -> Cyclotomic {
        let mut p = vec![0; self.degree()];
        p[0] = v;
        Cyclotomic { field: self.0.clone(), coeffs: p }
    }

    pub fn zeta_power(&self, k: i64) -> Cyclotomic {
        let m = self.0.order as i64;
        let e = k.mod_floor(&m) as usize;
        let mut p = vec![0; e + 1];
        p[e] = 1;
        self.reduce(p).expect("unit coefficients cannot overflow")
    }

    /// `−2cos(πr)` for a rational `r` whose denominator divides `m/2`.
    pub fn neg_two_cos_pi(&self, r: Rational64) -> Option<Cyclotomic> {
        let m = self.0.order as i64;
        let (p, q) = (*r.numer(), *r.denom());
        if m % (2 * q) != 0 {
            return None;
        }
        // πr = 2π·k/m with k = p·m/(2q).
        let k = p * (m / (2 * q));
        self.zeta_power(k).add(&self.zeta_power(-k))?.neg()
    }
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    fn ctx(&self) -> CyclotomicField {
        CyclotomicField(self.field.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Cyclotomic) -> Option<Cyclotomic> {
        assert_eq!(self.field.order, o.field.order, "mixed cyclotomic orders");
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<_>>>()?;
        Some(Cyclotomic { field: self.field.clone(), coeffs: c })
    }

    pub fn sub(&self, o: &Cyclotomic) -> Option<Cyclotomic> {
        self.add(&o.neg()?)
    }

    pub fn neg(&self) -> Option<Cyclotomic> {
        let c = self.coeffs.iter().map(|a| a.checked_neg()).collect::<Option<Vec<_>>>()?;
        Some(Cyclotomic { field: self.field.clone(), coeffs: c })
    }

    pub fn mul(&self, o: &Cyclotomic) -> Option<Cyclotomic> {
        assert_eq!(self.field.order, o.field.order, "mixed cyclotomic orders");
        let n = self.coeffs.len();
        let mut p = vec![0i128; 2 * n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                p[i + j] = p[i + j].checked_add(a.checked_mul(b)?)?;
            }
        }
        self.ctx().reduce(p)
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| c as f64 * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m))
            .sum()
    }

    /// Total order: by real part of the complex value, then by coefficients.
    pub fn cmp_value(&self, o: &Cyclotomic) -> Ordering {
        let (a, b) = (self.to_complex(), o.to_complex());
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
            .then_with(|| self.coeffs.cmp(&o.coeffs))
    }
}
