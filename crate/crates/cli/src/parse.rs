//! Token grammar: rationals as `p/q`, complex numbers as `a+bi`.

use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use painleve_core::chazy::{ChazyParam, SingularPoint};
use painleve_core::hypergeom::{Chart, Loop};
use painleve_core::verify::Curve;

pub fn rational(s: &str) -> Result<Rational64, String> {
    let t = s.trim();
    let r = Rational64::from_str(t).map_err(|_| format!("`{s}` is not a rational (expected p/q)"))?;
    Ok(r)
}

/// Real number, given as a float or as `p/q`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v = if t.contains('/') {
        let r = rational(t)?;
        *r.numer() as f64 / *r.denom() as f64
    } else {
        f64::from_str(t).map_err(|_| format!("`{s}` is not a number"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; each part may be `p/q`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(t)?, 0.0));
    };
    let bytes = body.as_bytes();
    // Split at the last sign that is not part of an exponent.
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => real(v.strip_prefix('+').unwrap_or(v)).map_err(|_| format!("`{s}` is not a complex number (expected a+bi)"))?,
    };
    Ok(Complex64::new(re, im))
}

/// A Chazy parameter: complex, or `inf`.
pub fn chazy_param(s: &str) -> Result<ChazyParam, String> {
    match s.trim() {
        "inf" | "∞" => Ok(ChazyParam::Infinity),
        t => complex(t).map(ChazyParam::Finite),
    }
}

pub fn chart(s: &str) -> Result<Chart, String> {
    match s {
        "zero" | "0" => Ok(Chart::Zero),
        "one" | "1" => Ok(Chart::One),
        "infinity" | "inf" => Ok(Chart::Infinity),
        _ => Err(format!("`{s}` is not a chart (zero|one|infinity)")),
    }
}

pub fn point(s: &str) -> Result<SingularPoint, String> {
    match chart(s)? {
        Chart::Zero => Ok(SingularPoint::Zero),
        Chart::One => Ok(SingularPoint::One),
        Chart::Infinity => Ok(SingularPoint::Infinity),
    }
}

pub fn lp(s: &str) -> Result<Loop, String> {
    match s {
        "gamma0" => Ok(Loop::Gamma0),
        "gamma1" => Ok(Loop::Gamma1),
        "trivial" => Ok(Loop::Trivial),
        _ => Err(format!("`{s}` is not a loop (gamma0|gamma1|trivial)")),
    }
}

pub fn curve(s: &str) -> Result<Curve, String> {
    match s.to_ascii_lowercase().as_str() {
        "a2" => Ok(Curve::A2),
        "b2" => Ok(Curve::B2),
        "g2" => Ok(Curve::G2),
        _ => Err(format!("`{s}` is not a curve (a2|b2|g2)")),
    }
}

/// Points of a `--line` segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment(pub Vec<Complex64>);

/// `from,to,n`: `n` equally spaced points on the segment, endpoints included.
pub fn segment(s: &str) -> Result<Segment, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("`{s}` is not a segment (expected from,to,n)"));
    };
    let (a, b) = (complex(a)?, complex(b)?);
    let n: usize = n.trim().parse().map_err(|_| format!("`{n}` is not a point count"))?;
    if n < 2 {
        return Err("a segment needs at least 2 points".into());
    }
    Ok(Segment((0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect()))
}
