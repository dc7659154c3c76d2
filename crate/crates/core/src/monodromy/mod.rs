//! Monodromy data for resonant μ: triples `(x₁, x₂, x₃)`, rational angle
//! triangles with `xᵢ = −2cos πrᵢ`, the braid-group actions on both, orbit
//! enumeration, the `ν ↔ r` dictionary, explicit monodromy matrices and the
//! dihedral classification of algebraic solutions.
//!
//! Triples coming from rational angles are kept exact in `ℤ[ζ_m]`; the
//! constraint `x₁² + x₂² + x₃² − x₁x₂x₃` is then compared as an algebraic
//! integer rather than a float.

pub mod cyclotomic;

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::Mat2;
use crate::verify::rational_solution_value;
pub use cyclotomic::{Cyclotomic, CyclotomicField};

type C = Complex64;

/// Default bound on the number of orbit classes.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
/// Rounding grid for identifying numeric triples.
pub const NUMERIC_KEY_SCALE: f64 = 1e8;
/// Numeric coordinates below this count as zero for admissibility.
pub const ZERO_TOL: f64 = 1e-12;
/// `|cos(πν₂/2)|` below this makes the matrices of a Picard solution
/// undefined.
pub const COS_DEGENERATE_TOL: f64 = 1e-12;

fn overflow() -> Error {
    Error::NonConvergence("exact coefficient overflow".into())
}

/// Rational angles `(r₁, r₂, r₃)`, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleAngles {
    pub r1: Rational64,
    pub r2: Rational64,
    pub r3: Rational64,
}

impl TriangleAngles {
    pub fn new(r1: Rational64, r2: Rational64, r3: Rational64) -> Result<Self> {
        for r in [r1, r2, r3] {
            if r.is_negative() || r > Rational64::one() {
                return Err(Error::Domain(format!("angle {r} outside [0, 1]")));
            }
        }
        Ok(TriangleAngles { r1, r2, r3 })
    }

    fn raw(r: [Rational64; 3]) -> Self {
        TriangleAngles { r1: r[0], r2: r[1], r3: r[2] }
    }

    pub fn as_array(&self) -> [Rational64; 3] {
        [self.r1, self.r2, self.r3]
    }

    pub fn sum(&self) -> Rational64 {
        self.r1 + self.r2 + self.r3
    }

    pub fn is_flat(&self) -> bool {
        self.sum() == Rational64::one()
    }

    /// The identity and the three ways of replacing two angles by `1 − r`
    /// (sign change of the corresponding pair of `x`'s).
    pub fn sign_patterns(&self) -> [TriangleAngles; 4] {
        let o = Rational64::one();
        let [a, b, c] = self.as_array();
        [
            Self::raw([a, b, c]),
            Self::raw([o - a, o - b, c]),
            Self::raw([o - a, b, o - c]),
            Self::raw([a, o - b, o - c]),
        ]
    }

    /// A flat triangle equivalent to this one, if any.
    pub fn flat_representative(&self) -> Option<TriangleAngles> {
        self.sign_patterns().into_iter().find(|t| t.is_flat())
    }

    pub fn permutations(&self) -> [TriangleAngles; 6] {
        let [a, b, c] = self.as_array();
        [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]].map(Self::raw)
    }

    /// Lexicographically smallest equivalent triangle, optionally also
    /// minimising over coordinate permutations.
    pub fn canonical(&self, permutations: bool) -> TriangleAngles {
        let base = if permutations { self.permutations().to_vec() } else { vec![*self] };
        base.iter().flat_map(|t| t.sign_patterns()).min().expect("non-empty")
    }

    /// Lowest common denominator of the three angles.
    pub fn denominator_lcm(&self) -> i64 {
        self.as_array().iter().fold(1, |acc, r| acc.lcm(r.denom()))
    }
}

/// Whether `x₁² + x₂² + x₃² − x₁x₂x₃ = 4 sin²πμ` is 4, 0 or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintClass {
    /// Value 4: half-integer μ.
    HalfInteger,
    /// Value 0: integer μ.
    Integer,
    Other,
}

/// A monodromy triple, exact when it comes from rational angles.
#[derive(Debug, Clone, PartialEq)]
pub enum MonodromyTriple {
    Exact([Cyclotomic; 3]),
    Numeric([C; 3]),
}

impl MonodromyTriple {
    pub fn numeric(x1: C, x2: C, x3: C) -> Self {
        MonodromyTriple::Numeric([x1, x2, x3])
    }

    pub fn to_complex(&self) -> [C; 3] {
        match self {
            MonodromyTriple::Exact(x) => [x[0].to_complex(), x[1].to_complex(), x[2].to_complex()],
            MonodromyTriple::Numeric(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MonodromyTriple::Exact(_))
    }

    /// `x₁² + x₂² + x₃² − x₁x₂x₃` exactly; `None` for numeric triples or on
    /// coefficient overflow.
    pub fn constraint_exact(&self) -> Option<Cyclotomic> {
        match self {
            MonodromyTriple::Exact([a, b, c]) => {
                let s = a.mul(a)?.add(&b.mul(b)?)?.add(&c.mul(c)?)?;
                s.sub(&a.mul(b)?.mul(c)?)
            }
            MonodromyTriple::Numeric(_) => None,
        }
    }

    pub fn constraint(&self) -> C {
        let [a, b, c] = self.to_complex();
        a * a + b * b + c * c - a * b * c
    }

    pub fn constraint_class(&self) -> ConstraintClass {
        match (self, self.constraint_exact()) {
            (MonodromyTriple::Exact(x), Some(v)) => {
                let f = CyclotomicField::new(x[0].order());
                if v == f.integer(4) {
                    ConstraintClass::HalfInteger
                } else if v.is_zero() {
                    ConstraintClass::Integer
                } else {
                    ConstraintClass::Other
                }
            }
            _ => {
                let v = self.constraint();
                let tol = 1e-9 * (1.0 + self.to_complex().iter().map(|z| z.norm_sqr()).sum::<f64>());
                if (v - 4.0).norm() < tol {
                    ConstraintClass::HalfInteger
                } else if v.norm() < tol {
                    ConstraintClass::Integer
                } else {
                    ConstraintClass::Other
                }
            }
        }
    }

    /// At most one coordinate vanishes.
    pub fn is_admissible(&self) -> bool {
        let zeros = match self {
            MonodromyTriple::Exact(x) => x.iter().filter(|v| v.is_zero()).count(),
            MonodromyTriple::Numeric(x) => x.iter().filter(|v| v.norm() < ZERO_TOL).count(),
        };
        zeros <= 1
    }

    fn map_coords<F: Fn(usize) -> usize>(&self, idx: F) -> Self {
        match self {
            MonodromyTriple::Exact(x) => MonodromyTriple::Exact([x[idx(0)].clone(), x[idx(1)].clone(), x[idx(2)].clone()]),
            MonodromyTriple::Numeric(x) => MonodromyTriple::Numeric([x[idx(0)], x[idx(1)], x[idx(2)]]),
        }
    }

    fn negate_pair(&self, skip: usize) -> Self {
        match self {
            MonodromyTriple::Exact(x) => {
                let mut y = x.clone();
                for (i, v) in y.iter_mut().enumerate() {
                    if i != skip {
                        *v = v.neg().expect("negation of bounded coefficients");
                    }
                }
                MonodromyTriple::Exact(y)
            }
            MonodromyTriple::Numeric(x) => {
                let mut y = *x;
                for (i, v) in y.iter_mut().enumerate() {
                    if i != skip {
                        *v = -*v;
                    }
                }
                MonodromyTriple::Numeric(y)
            }
        }
    }

    /// The triple and its three two-sign changes.
    pub fn sign_patterns(&self) -> [MonodromyTriple; 4] {
        [self.clone(), self.negate_pair(2), self.negate_pair(1), self.negate_pair(0)]
    }

    pub fn permutations(&self) -> [MonodromyTriple; 6] {
        const P: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        P.map(|p| self.map_coords(|i| p[i]))
    }

    /// Smallest equivalent triple (coordinate-wise by real part, imaginary
    /// part, then exact coefficients).
    pub fn canonical(&self, permutations: bool) -> MonodromyTriple {
        let base = if permutations { self.permutations().to_vec() } else { vec![self.clone()] };
        base.iter()
            .flat_map(|t| t.sign_patterns())
            .min_by(|a, b| a.cmp_coords(b))
            .expect("non-empty")
    }

    fn cmp_coords(&self, o: &Self) -> std::cmp::Ordering {
        match (self, o) {
            (MonodromyTriple::Exact(a), MonodromyTriple::Exact(b)) => {
                a.iter().zip(b).map(|(u, v)| u.cmp_value(v)).find(|c| c.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            }
            _ => self.numeric_key().cmp(&o.numeric_key()),
        }
    }

    /// Rounded coordinates used to identify numeric triples.
    pub fn numeric_key(&self) -> [i64; 6] {
        let x = self.to_complex();
        let r = |v: f64| (v * NUMERIC_KEY_SCALE).round() as i64;
        [r(x[0].re), r(x[0].im), r(x[1].re), r(x[1].im), r(x[2].re), r(x[2].im)]
    }

    /// Angles `r ∈ [0, 1]` with `xᵢ = −2cos πrᵢ`, when every coordinate of an
    /// exact triple has that form.
    pub fn angles(&self) -> Option<TriangleAngles> {
        let MonodromyTriple::Exact(x) = self else { return None };
        let f = CyclotomicField::new(x[0].order());
        let half = (f.order() / 2) as i64;
        let find = |v: &Cyclotomic| {
            (0..=half).map(|k| Rational64::new(k, half)).find(|&r| f.neg_two_cos_pi(r).as_ref() == Some(v))
        };
        Some(TriangleAngles::raw([find(&x[0])?, find(&x[1])?, find(&x[2])?]))
    }
}

/// `(x₁, x₂, x₃)` with `xᵢ = −2cos πrᵢ`, its constraint value and class.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleReport {
    pub triple: MonodromyTriple,
    pub constraint: Cyclotomic,
    pub class: ConstraintClass,
}

/// Exact triple of a rational triangle, in `ℤ[ζ_{2L}]` with `L` the common
/// denominator.
pub fn triple_from_angles(t: &TriangleAngles) -> TripleReport {
    let f = CyclotomicField::new(2 * t.denominator_lcm() as u32);
    let x = t.as_array().map(|r| f.neg_two_cos_pi(r).expect("denominator divides the order"));
    let triple = MonodromyTriple::Exact(x);
    let constraint = triple.constraint_exact().expect("cosine coefficients are bounded");
    let class = triple.constraint_class();
    TripleReport { triple, constraint, class }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Braid {
    Beta1,
    Beta2,
    Beta1Inv,
    Beta2Inv,
}

impl Braid {
    pub const ALL: [Braid; 4] = [Braid::Beta1, Braid::Beta2, Braid::Beta1Inv, Braid::Beta2Inv];

    pub fn inverse(self) -> Braid {
        match self {
            Braid::Beta1 => Braid::Beta1Inv,
            Braid::Beta2 => Braid::Beta2Inv,
            Braid::Beta1Inv => Braid::Beta1,
            Braid::Beta2Inv => Braid::Beta2,
        }
    }
}

/// Braid action on triples:
/// `β₁: (x₁, x₂, x₃) ↦ (−x₁, x₃ − x₁x₂, x₂)`,
/// `β₂: (x₁, x₂, x₃) ↦ (x₃, −x₂, x₁ − x₂x₃)`, and their inverses
/// `β₁⁻¹: (y₁, y₂, y₃) ↦ (−y₁, y₃, y₂ − y₁y₃)`,
/// `β₂⁻¹: (y₁, y₂, y₃) ↦ (y₃ − y₁y₂, −y₂, y₁)`.
///
/// Exact triples fail only on coefficient overflow.
pub fn braid_act(g: Braid, t: &MonodromyTriple) -> Result<MonodromyTriple> {
    match t {
        MonodromyTriple::Numeric([a, b, c]) => {
            let (a, b, c) = (*a, *b, *c);
            Ok(MonodromyTriple::Numeric(match g {
                Braid::Beta1 => [-a, c - a * b, b],
                Braid::Beta1Inv => [-a, c, b - a * c],
                Braid::Beta2 => [c, -b, a - b * c],
                Braid::Beta2Inv => [c - a * b, -b, a],
            }))
        }
        MonodromyTriple::Exact([a, b, c]) => {
            let out = (|| {
                Some(match g {
                    Braid::Beta1 => [a.neg()?, c.sub(&a.mul(b)?)?, b.clone()],
                    Braid::Beta1Inv => [a.neg()?, c.clone(), b.sub(&a.mul(c)?)?],
                    Braid::Beta2 => [c.clone(), b.neg()?, a.sub(&b.mul(c)?)?],
                    Braid::Beta2Inv => [c.sub(&a.mul(b)?)?, b.neg()?, a.clone()],
                })
            })();
            out.map(MonodromyTriple::Exact).ok_or_else(overflow)
        }
    }
}

/// Braid action on flat triangles:
/// `β₁: r ↦ (|1 − r₁|, |r₁ − r₂|, r₂)`, `β₂: r ↦ (r₃, |1 − r₂|, |r₃ − r₂|)`,
/// `β₁⁻¹: s ↦ (1 − s₁, s₃, |s₁ − s₃|)`, `β₂⁻¹: s ↦ (|s₁ − s₂|, 1 − s₂, s₁)`.
///
/// A non-flat input is first replaced by its flat equivalent; inputs with
/// none are rejected.
pub fn braid_act_angles(g: Braid, t: &TriangleAngles) -> Result<TriangleAngles> {
    let f = if t.is_flat() {
        *t
    } else {
        t.flat_representative()
            .ok_or_else(|| Error::Domain(format!("({}, {}, {}) has no flat equivalent", t.r1, t.r2, t.r3)))?
    };
    let o = Rational64::one();
    let [r1, r2, r3] = f.as_array();
    Ok(TriangleAngles::raw(match g {
        Braid::Beta1 => [(o - r1).abs(), (r1 - r2).abs(), r2],
        Braid::Beta1Inv => [o - r1, r3, (r1 - r3).abs()],
        Braid::Beta2 => [r3, (o - r2).abs(), (r3 - r2).abs()],
        Braid::Beta2Inv => [(r1 - r2).abs(), o - r2, r1],
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitOptions {
    pub cap: usize,
    /// Also identify triples differing by a coordinate permutation.
    pub permutations: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { cap: DEFAULT_ORBIT_CAP, permutations: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitStatus {
    Complete,
    CapExceeded,
    /// Exact coefficients or numeric values left the representable range.
    Overflow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<T> {
    /// Canonical representatives in BFS order.
    pub members: Vec<T>,
    pub status: OrbitStatus,
}

impl<T> Orbit<T> {
    pub fn is_finite(&self) -> bool {
        self.status == OrbitStatus::Complete
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn bfs<T, K, Step, Key>(start: T, cap: usize, step: Step, key: Key) -> Orbit<T>
where
    T: Clone,
    K: std::hash::Hash + Eq,
    Step: Fn(Braid, &T) -> Option<T>,
    Key: Fn(&T) -> K,
{
    let mut seen = HashSet::new();
    seen.insert(key(&start));
    let mut members = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for g in Braid::ALL {
            let Some(n) = step(g, &t) else {
                return Orbit { members, status: OrbitStatus::Overflow };
            };
            if seen.insert(key(&n)) {
                if members.len() >= cap {
                    return Orbit { members, status: OrbitStatus::CapExceeded };
                }
                members.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    Orbit { members, status: OrbitStatus::Complete }
}

/// Braid orbit of a flat-equivalent triangle, modulo the induced
/// equivalence `rᵢ ↦ 1 − rᵢ` on two coordinates.
pub fn orbit_angles(t: &TriangleAngles, opts: &OrbitOptions) -> Result<Orbit<TriangleAngles>> {
    if t.flat_representative().is_none() {
        return Err(Error::Domain("angle orbits need a flat-equivalent triangle".into()));
    }
    let p = opts.permutations;
    Ok(bfs(t.canonical(p), opts.cap, |g, s| braid_act_angles(g, s).ok().map(|n| n.canonical(p)), |s| *s))
}

/// Braid orbit of a triple modulo two-sign changes. Exact triples are
/// compared exactly, numeric ones on a grid of `1/NUMERIC_KEY_SCALE`.
pub fn orbit_triples(t: &MonodromyTriple, opts: &OrbitOptions) -> Orbit<MonodromyTriple> {
    let p = opts.permutations;
    let step = |g: Braid, s: &MonodromyTriple| {
        let n = braid_act(g, s).ok()?;
        if n.to_complex().iter().any(|z| !z.is_finite()) {
            return None;
        }
        Some(n.canonical(p))
    };
    match t {
        MonodromyTriple::Exact(_) => bfs(t.canonical(p), opts.cap, step, |s| match s {
            MonodromyTriple::Exact(x) => x.clone(),
            MonodromyTriple::Numeric(_) => unreachable!("exact orbits stay exact"),
        }),
        MonodromyTriple::Numeric(_) => bfs(t.canonical(p), opts.cap, step, |s| s.numeric_key()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitInput {
    Angles(TriangleAngles),
    Triple(MonodromyTriple),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub status: OrbitStatus,
    /// Angle representatives, when the orbit was enumerated on triangles.
    pub angles: Option<Vec<TriangleAngles>>,
    pub triples: Vec<MonodromyTriple>,
}

impl OrbitReport {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.status == OrbitStatus::Complete
    }
}

/// Orbit of either kind of input. Flat-equivalent triangles are enumerated
/// with the rational angle action; other triangles fall back to exact
/// triples. Inadmissible triples are rejected.
pub fn orbit(input: &OrbitInput, opts: &OrbitOptions) -> Result<OrbitReport> {
    match input {
        OrbitInput::Angles(t) if t.flat_representative().is_some() => {
            let o = orbit_angles(t, opts)?;
            let triples = o.members.iter().map(|a| triple_from_angles(a).triple).collect();
            Ok(OrbitReport { status: o.status, angles: Some(o.members), triples })
        }
        OrbitInput::Angles(t) => orbit(&OrbitInput::Triple(triple_from_angles(t).triple), opts),
        OrbitInput::Triple(t) => {
            if !t.is_admissible() {
                return Err(Error::Domain("triple has more than one zero coordinate".into()));
            }
            let o = orbit_triples(t, opts);
            Ok(OrbitReport { status: o.status, angles: None, triples: o.members })
        }
    }
}

fn check_nu(nu: Rational64) -> Result<()> {
    if nu.is_negative() || nu >= Rational64::from_integer(2) {
        return Err(Error::Domain(format!("ν = {nu} outside [0, 2)")));
    }
    Ok(())
}

/// Flat triangle of the Picard solution `(ν₁, ν₂)`:
/// `(ν₂/2, 1 − ν₁/2, (ν₁ − ν₂)/2)` for `ν₁ > ν₂`,
/// `(1 − ν₂/2, ν₁/2, (ν₂ − ν₁)/2)` for `ν₁ < ν₂`.
pub fn angles_from_nu(nu1: Rational64, nu2: Rational64) -> Result<TriangleAngles> {
    check_nu(nu1)?;
    check_nu(nu2)?;
    let (o, h) = (Rational64::one(), Rational64::new(1, 2));
    match nu1.cmp(&nu2) {
        std::cmp::Ordering::Greater => TriangleAngles::new(nu2 * h, o - nu1 * h, (nu1 - nu2) * h),
        std::cmp::Ordering::Less => TriangleAngles::new(o - nu2 * h, nu1 * h, (nu2 - nu1) * h),
        std::cmp::Ordering::Equal => Err(Error::Domain("ν₁ = ν₂ has no triangle".into())),
    }
}

/// `ν₁ = 2 − 2r₂`, `ν₂ = 2r₁` for a flat triangle.
///
/// Inverts [`angles_from_nu`] for `ν₁ > ν₂`; for `ν₁ < ν₂` it returns
/// `(2 − ν₁, 2 − ν₂)`, i.e. `−ν` modulo 2, which gives the same solution.
pub fn nu_from_angles(t: &TriangleAngles) -> Result<(Rational64, Rational64)> {
    if !t.is_flat() {
        return Err(Error::Domain("ν is read off flat triangles only".into()));
    }
    let two = Rational64::from_integer(2);
    Ok((two - two * t.r2, two * t.r1))
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[C::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

fn mat_det(a: &Mat2) -> C {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn mat_inv(a: &Mat2) -> Mat2 {
    let d = mat_det(a);
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

fn mat_trace(a: &Mat2) -> C {
    a[0][0] + a[1][1]
}

fn mat(a: C, b: C, c: C, d: C) -> Mat2 {
    [[a, b], [c, d]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixTriple {
    pub m1: Mat2,
    pub m2: Mat2,
    pub m3: Mat2,
}

/// Largest deviations from `det Mᵢ = 1`, `Tr Mᵢ = 2` and
/// `M∞M₃M₂M₁ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixDefects {
    pub det: f64,
    pub trace: f64,
    pub product: f64,
}

impl MatrixTriple {
    /// `M∞ = (M₃M₂M₁)⁻¹`.
    pub fn m_inf(&self) -> Mat2 {
        mat_inv(&mat_mul(&self.m3, &mat_mul(&self.m2, &self.m1)))
    }

    pub fn defects(&self) -> MatrixDefects {
        let ms = [self.m1, self.m2, self.m3];
        let det = ms.iter().map(|m| (mat_det(m) - 1.0).norm()).fold(0.0, f64::max);
        let trace = ms.iter().map(|m| (mat_trace(m) - 2.0).norm()).fold(0.0, f64::max);
        let p = mat_mul(&self.m_inf(), &mat_mul(&self.m3, &mat_mul(&self.m2, &self.m1)));
        let product = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (p[i][j] - if i == j { 1.0 } else { 0.0 }).norm())
            .fold(0.0, f64::max);
        MatrixDefects { det, trace, product }
    }

    /// `(Tr M₁M₂, Tr M₂M₃, Tr M₁M₃)`, which equal `2 − xᵢ²`.
    pub fn pair_traces(&self) -> [C; 3] {
        [
            mat_trace(&mat_mul(&self.m1, &self.m2)),
            mat_trace(&mat_mul(&self.m2, &self.m3)),
            mat_trace(&mat_mul(&self.m1, &self.m3)),
        ]
    }

    pub fn commute_pairwise(&self, tol: f64) -> bool {
        let ms = [self.m1, self.m2, self.m3];
        (0..3).all(|i| {
            (0..3).all(|j| {
                let (a, b) = (mat_mul(&ms[i], &ms[j]), mat_mul(&ms[j], &ms[i]));
                (0..2).all(|k| (0..2).all(|l| (a[k][l] - b[k][l]).norm() <= tol))
            })
        })
    }
}

/// Monodromy matrices of the Picard solution `(ν₁, ν₂)`.
pub fn picard_monodromy_matrices(nu1: C, nu2: C) -> Result<MatrixTriple> {
    let cos = |z: C| (z * PI / 2.0).cos();
    let (c1, c2, c12) = (cos(nu1), cos(nu2), cos(nu1 - nu2));
    if c2.norm() < COS_DEGENERATE_TOL {
        return Err(Error::DegenerateDenominator(format!("cos(πν₂/2) = 0 at ν₂ = {nu2}")));
    }
    let one = C::new(1.0, 0.0);
    let s = 2.0 * c1 * c12 / c2;
    Ok(MatrixTriple {
        m1: mat(one, -2.0 * c2, C::zero(), one),
        m2: mat(one, C::zero(), 2.0 * c2, one),
        m3: mat(one + s, -2.0 * c1 * c1 / c2, 2.0 * c12 * c12 / c2, one - s),
    })
}

/// The matrices of the Chazy family, the `ν → 0` limit of the Picard ones.
pub fn chazy_monodromy_matrices() -> MatrixTriple {
    let r = |v: f64| C::new(v, 0.0);
    MatrixTriple {
        m1: mat(r(1.0), r(-2.0), r(0.0), r(1.0)),
        m2: mat(r(1.0), r(0.0), r(2.0), r(1.0)),
        m3: mat(r(3.0), r(-2.0), r(2.0), r(-1.0)),
    }
}

/// Commuting unipotent triple with upper entries `iπa`, `iπ(1 − a)`, `iπ`.
pub fn commuting_family(a: C) -> MatrixTriple {
    let (one, z, ipi) = (C::new(1.0, 0.0), C::zero(), C::new(0.0, PI));
    MatrixTriple {
        m1: mat(one, ipi * a, z, one),
        m2: mat(one, ipi * (1.0 - a), z, one),
        m3: mat(one, ipi, z, one),
    }
}

/// `y = ax/(1 − (1 − a)x)`, the solutions at μ = 1 with commuting monodromy.
pub fn rational_solution_eval(a: C, x: C) -> Result<C> {
    rational_solution_value(a, x)
}

/// Dihedral reflection group of an algebraic solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralClass {
    pub n_hat: u64,
    pub m_hat: u64,
    /// `"D(N̂)"`.
    pub group: String,
    /// `A2`, `B2`, `G2` for the crystallographic polygons.
    pub root_system: Option<&'static str>,
    /// Defining triangle `(0, M/2N, 1 − M/2N)`.
    pub angles: TriangleAngles,
    /// Gram matrix `[[2, x₁, x₃], [x₁, 2, x₂], [x₃, x₂, 2]]`.
    pub gram: [[Cyclotomic; 3]; 3],
    /// `det g = 8 − 2(x₁² + x₂² + x₃² − x₁x₂x₃)`, exactly.
    pub gram_det: Cyclotomic,
}

impl DihedralClass {
    pub fn gram_numeric(&self) -> [[f64; 3]; 3] {
        self.gram.clone().map(|row| row.map(|v| v.to_complex().re))
    }
}

/// Gram matrix `[[2, x₁, x₃], [x₁, 2, x₂], [x₃, x₂, 2]]` of the mirrors of a
/// triangle, `xᵢ = −2cos πrᵢ`, with its determinant by cofactor expansion.
pub fn gram_matrix(t: &TriangleAngles) -> Result<([[Cyclotomic; 3]; 3], Cyclotomic)> {
    let MonodromyTriple::Exact([x1, x2, x3]) = triple_from_angles(t).triple else {
        unreachable!("angles give exact triples")
    };
    let two = CyclotomicField::new(x1.order()).integer(2);
    let g = [[two.clone(), x1.clone(), x3.clone()], [x1, two.clone(), x2.clone()], [x3, x2, two]];
    let minor = |i: usize, j: usize| -> Option<Cyclotomic> {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        g[r0][c0].mul(&g[r1][c1])?.sub(&g[r0][c1].mul(&g[r1][c0])?)
    };
    let det = (|| {
        let mut acc = g[0][0].mul(&minor(0, 0)?)?;
        acc = acc.add(&g[0][1].mul(&minor(0, 1)?)?)?;
        acc.add(&g[0][2].mul(&minor(0, 2)?)?)
    })()
    .ok_or_else(overflow)?;
    Ok((g, det))
}

/// `N̂ = N, M̂ = M/2` for even `M`; `N̂ = 2N, M̂ = M` for odd `M`.
pub fn dihedral_classify(m: u64, n: u64) -> Result<DihedralClass> {
    if n == 0 || m >= 2 * n || m.gcd(&n) != 1 {
        return Err(Error::InvalidParams(format!("(M, N) = ({m}, {n}) needs gcd 1 and 0 ≤ M < 2N")));
    }
    let (n_hat, m_hat) = if m.is_multiple_of(2) { (n, m / 2) } else { (2 * n, m) };
    let r = Rational64::new(m as i64, 2 * n as i64);
    let angles = TriangleAngles::new(Rational64::zero(), r, Rational64::one() - r)?;
    let (gram, gram_det) = gram_matrix(&angles)?;
    if !gram_det.is_zero() {
        return Err(Error::Domain("Gram matrix of the defining triangle is not singular".into()));
    }
    let root_system = match (n_hat, m_hat) {
        (3, 1) => Some("A2"),
        (4, 1) => Some("B2"),
        (6, 1) => Some("G2"),
        _ => None,
    };
    Ok(DihedralClass { n_hat, m_hat, group: format!("D({n_hat})"), root_system, angles, gram, gram_det })
}

/// Order `N̂` of the rotation subgroup generated by the mirrors of a
/// rational triangle: the common denominator of its angles. It is constant
/// along braid orbits.
pub fn dihedral_order(t: &TriangleAngles) -> u64 {
    t.denominator_lcm() as u64
}
