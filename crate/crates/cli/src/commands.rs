//! One function per subcommand, each producing a [`CommandResult`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use painleve_core::chazy::{chazy_asymptotics, chazy_branch_coefficient, gamma2_act_moebius, ChazyParam, SingularPoint};
use painleve_core::hypergeom::{continue_basis, Chart, Loop, Mat2};
use painleve_core::monodromy::{
    chazy_monodromy_matrices, commuting_family, dihedral_classify, orbit, picard_monodromy_matrices,
    rational_solution_eval, triple_from_angles, ConstraintClass, MatrixTriple, MonodromyTriple, OrbitInput,
    OrbitOptions, OrbitStatus, TriangleAngles,
};
use painleve_core::picard::{algebraic_label, gamma2_act_params, picard_exponents, Gamma2Element};
use painleve_core::symmetry::{
    equation_class, mu_ladder, obstruction_factors, q_denominator, q_relative, s1_transform_jet, JetPoint, LadderStep,
};
use painleve_core::verify::{
    fit_exponent, loop_consistency, loop_matrix, pvi_residual, recover_parameters, FitOutcome, FitWindow,
    SolutionHandle,
};
use painleve_core::{picard::PicardParams, Error};
use serde_json::{json, Map, Value};

use crate::output::{cx, mat, rat, CommandResult, Diagnostic};
use crate::{Cli, CliError, Command, Kind, Samples, SolutionArgs};

type C = Complex64;
type Payload = (Map<String, Value>, Vec<Diagnostic>);
type Outcome = Result<Payload, CliError>;

const RESIDUAL_TOL: f64 = 1e-6;
const RATIONAL_RESIDUAL_TOL: f64 = 1e-10;
const EXPONENT_TOL: f64 = 0.02;
const LEADING_TOL: f64 = 0.1;
const LOG_COEFFICIENT_TOL: f64 = 0.05;
const LOOP_TOL: f64 = 1e-6;
const MATRIX_TOL: f64 = 1e-9;
const PICARD_WINDOW: (f64, f64) = (1e-6, 1e-4);
const CHAZY_WINDOW: (f64, f64) = (1e-10, 1e-5);

/// Runs the subcommand; also returns the payload keys that hold tables.
pub fn run(cli: &Cli, inputs: BTreeMap<String, Value>) -> Result<(CommandResult, &'static [&'static str]), CliError> {
    let tol = |default: f64| cli.tol.unwrap_or(default);
    let ((outputs, diagnostics), tables): (Payload, &'static [&'static str]) =
        match &cli.command {
            Command::Eval { solution, samples, chart } => (eval(solution, samples, *chart)?, &["samples"]),
            Command::Verify { solution, samples, step, loops } => {
                (verify(solution, samples, *step, *loops, &tol)?, &["samples"])
            }
            Command::Asymptotics { solution, point, rmin, rmax } => {
                (asymptotics(solution, point, *rmin, *rmax, &tol)?, &["points"])
            }
            Command::Continue { solution, loops } => (continuation(solution, loops, &tol)?, &["loops"]),
            Command::Transform { from, to, mu, x, y, yp } => (
                match (from, to, mu) {
                    (Some(f), Some(t), None) => ladder(*f, *t)?,
                    (None, None, Some(m)) => {
                        let need = |v: &Option<C>, flag: &str| {
                            v.ok_or_else(|| CliError::Usage(format!("the jet needs --{flag}")))
                        };
                        jet(*m, need(x, "x")?, need(y, "y")?, need(yp, "yp")?)?
                    }
                    _ => return Err(CliError::Usage("give either --from and --to, or --mu with --x --y --yp".into())),
                },
                &["steps"],
            ),
            Command::Classify { nu1, nu2 } => (classify(*nu1, *nu2)?, &[]),
            Command::Orbit { angles, triple, cap, permutations } => {
                (orbit_cmd(angles, triple, *cap, *permutations, &tol)?, &["classes"])
            }
            Command::Monodromy { nu1, nu2, chazy, angles } => (monodromy(*nu1, *nu2, *chazy, angles, &tol)?, &[]),
            Command::Dihedral { m, n } => (dihedral(*m, *n, &tol)?, &[]),
            Command::Rational { a, samples } => (rational(*a, samples, &tol)?, &["samples"]),
        };
    let res = CommandResult { command: cli.command.name().to_string(), inputs, outputs, diagnostics };
    Ok((res, tables))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn points(s: &Samples) -> Vec<C> {
    let mut xs = s.x.clone();
    if let Some(seg) = &s.line {
        xs.extend(&seg.0);
    }
    xs
}

/// Twenty points on four rings around 1/2, avoiding the real axis.
fn default_points() -> Vec<C> {
    let rings = [0.25, 0.45, 0.8, 1.5];
    (0..20).map(|k| C::new(0.5, 0.0) + C::from_polar(rings[k % 4], 0.15 + 2.0 * PI * k as f64 / 20.0)).collect()
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Picard => "picard",
        Kind::Chazy => "chazy",
        Kind::Rational => "rational",
        Kind::Algebraic => "algebraic",
    }
}

fn handle(s: &SolutionArgs, first: Option<C>) -> Result<SolutionHandle, CliError> {
    let kind = kind_name(s.kind);
    let given = [
        ("nu1", s.nu1.is_some()),
        ("nu2", s.nu2.is_some()),
        ("nu", s.nu.is_some()),
        ("a", s.a.is_some()),
        ("curve", s.curve.is_some()),
        ("seed", s.seed.is_some()),
    ];
    let allowed: &[&str] = match s.kind {
        Kind::Picard => &["nu1", "nu2"],
        Kind::Chazy => &["nu"],
        Kind::Rational => &["a"],
        Kind::Algebraic => &["curve", "seed"],
    };
    if let Some((flag, _)) = given.iter().find(|(f, g)| *g && !allowed.contains(f)) {
        return Err(usage(format!("--{flag} does not apply to --kind {kind}")));
    }
    let need = |flag: &str| usage(format!("--kind {kind} needs --{flag}"));
    let base = match s.kind {
        Kind::Picard => {
            SolutionHandle::Picard(PicardParams::new(s.nu1.ok_or_else(|| need("nu1"))?, s.nu2.ok_or_else(|| need("nu2"))?)?)
        }
        Kind::Chazy => SolutionHandle::Chazy(s.nu.ok_or_else(|| need("nu"))?),
        Kind::Rational => {
            let a = s.a.ok_or_else(|| need("a"))?;
            if a == C::new(0.0, 0.0) {
                return Err(Error::InvalidParams("a = 0 is excluded".into()).into());
            }
            SolutionHandle::RationalFamily { a }
        }
        Kind::Algebraic => {
            let curve = s.curve.ok_or_else(|| need("curve"))?;
            let seed = match s.seed {
                Some(v) => v,
                None => {
                    let x = first.ok_or_else(|| usage("--kind algebraic needs --seed or a sample point"))?;
                    *recover_parameters(curve, x)
                        .first()
                        .ok_or_else(|| Error::Domain(format!("no curve parameter found at x = {x}")))?
                }
            };
            SolutionHandle::ParametricAlgebraic { curve, seed }
        }
    };
    Ok(match s.to_mu {
        Some(to) => SolutionHandle::Transformed { steps: mu_ladder(base.mu(), to)?, base: Box::new(base) },
        None => base,
    })
}

fn chart_name(c: Chart) -> &'static str {
    match c {
        Chart::Zero => "zero",
        Chart::One => "one",
        Chart::Infinity => "infinity",
    }
}

fn point_name(p: SingularPoint) -> &'static str {
    chart_name(p.chart())
}

fn loop_name(l: Loop) -> &'static str {
    match l {
        Loop::Gamma0 => "gamma0",
        Loop::Gamma1 => "gamma1",
        Loop::Trivial => "trivial",
    }
}

fn chazy_value(nu: &ChazyParam) -> Value {
    match nu {
        ChazyParam::Finite(v) => cx(*v),
        ChazyParam::Infinity => Value::String("inf".into()),
    }
}

fn step_json(s: &LadderStep) -> Value {
    match *s {
        LadderStep::S1 { mu } => json!({ "kind": "s1", "mu": rat(mu), "target": rat(-mu) }),
        LadderStep::Relabel { from, to } => json!({ "kind": "relabel", "mu": rat(from), "target": rat(to) }),
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn eval(s: &SolutionArgs, samples: &Samples, chart: Option<Chart>) -> Outcome {
    let xs = points(samples);
    if xs.is_empty() {
        return Err(usage("no sample points: give --x or --line"));
    }
    let h = handle(s, xs.first().copied())?;
    let mut rows = Vec::with_capacity(xs.len());
    let mut first_err = None;
    for &x in &xs {
        let r = chart.map_or_else(|| Chart::choose(x), Ok).and_then(|c| Ok((c, h.eval_on(x, c)?)));
        rows.push(match r {
            Ok((c, y)) => json!({ "x": cx(x), "y": cx(y), "chart": chart_name(c) }),
            Err(e) => {
                let msg = e.to_string();
                first_err.get_or_insert(e);
                json!({ "x": cx(x), "y": Value::Null, "chart": Value::Null, "error": msg })
            }
        });
    }
    // A single failed point, or all of them, is a domain error.
    if let Some(e) = first_err {
        if rows.iter().all(|r| r.get("error").is_some()) {
            return Err(e.into());
        }
    }
    let mut out = Map::new();
    out.insert("mu".into(), rat(h.mu()));
    if let [row] = &rows[..] {
        for k in ["x", "y", "chart"] {
            out.insert(k.into(), row[k].clone());
        }
    }
    out.insert("samples".into(), Value::Array(rows));
    Ok((out, Vec::new()))
}

fn verify(s: &SolutionArgs, samples: &Samples, step: Option<f64>, loops: bool, tol: &dyn Fn(f64) -> f64) -> Outcome {
    let mut xs = points(samples);
    if xs.is_empty() {
        xs = default_points();
    }
    let h = handle(s, xs.first().copied())?;
    let t = tol(if s.kind == Kind::Rational && s.to_mu.is_none() { RATIONAL_RESIDUAL_TOL } else { RESIDUAL_TOL });
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    let mut worst = 0.0_f64;
    for (k, &x) in xs.iter().enumerate() {
        let r = pvi_residual(&h, x, step)?;
        worst = worst.max(r);
        rows.push(json!({ "x": cx(x), "y": cx(h.eval(x)?), "residual": r }));
        diags.push(Diagnostic::new(format!("residual[{k}]"), r, t));
    }
    let mut out = obj(json!({ "mu": rat(h.mu()), "max_residual": worst, "samples": rows }));
    if loops {
        let mut worst_loop = Map::new();
        for lp in [Loop::Gamma0, Loop::Gamma1] {
            let d = loop_consistency(&h, lp)?;
            worst_loop.insert(loop_name(lp).into(), json!(d));
            diags.push(Diagnostic::new(format!("loop_consistency[{}]", loop_name(lp)), d, tol(LOOP_TOL)));
        }
        out.insert("loop_consistency".into(), Value::Object(worst_loop));
    }
    Ok((out, diags))
}

fn asymptotics(
    s: &SolutionArgs,
    pts: &[SingularPoint],
    rmin: Option<f64>,
    rmax: Option<f64>,
    tol: &dyn Fn(f64) -> f64,
) -> Outcome {
    if s.to_mu.is_some() {
        return Err(usage("asymptotics applies to untransformed Picard and Chazy solutions"));
    }
    let h = handle(s, None)?;
    let default = match &h {
        SolutionHandle::Picard(_) => PICARD_WINDOW,
        SolutionHandle::Chazy(_) => CHAZY_WINDOW,
        _ => return Err(usage("asymptotics applies to --kind picard and --kind chazy")),
    };
    let window = FitWindow::new(rmin.unwrap_or(default.0), rmax.unwrap_or(default.1));
    let pts: Vec<SingularPoint> =
        if pts.is_empty() { vec![SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity] } else { pts.to_vec() };
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    for p in pts {
        let name = point_name(p);
        let fit = fit_exponent(&h, p, window)?;
        match (&h, fit) {
            (SolutionHandle::Picard(params), FitOutcome::Exponent(g)) => {
                let e = picard_exponents(params);
                let want = match p {
                    SingularPoint::Zero => e.l0,
                    SingularPoint::One => e.l1,
                    SingularPoint::Infinity => 1.0 - e.linf,
                };
                let err = (g.re - want.re).abs() / if want.re == 0.0 { 1.0 } else { want.re.abs() };
                rows.push(json!({ "point": name, "fitted": cx(g), "predicted": cx(want), "relative_error": err }));
                diags.push(Diagnostic::new(format!("exponent[{name}]"), err, tol(EXPONENT_TOL)));
            }
            (SolutionHandle::Chazy(nu), FitOutcome::LogSeries { leading, third_order }) => {
                let sign = if p == SingularPoint::One { 1.0 } else { -1.0 };
                let lead_err = (leading - sign).norm();
                let predicted = chazy_branch_coefficient(nu, p).ok();
                let published = chazy_asymptotics(nu, p).ok().map(|a| cx(a.b)).unwrap_or(Value::Null);
                let mut row = obj(json!({
                    "point": name,
                    "leading": cx(leading),
                    "third_order": cx(third_order),
                    "published_b": published,
                    "predicted_third_order": predicted.map(cx).unwrap_or(Value::Null),
                }));
                diags.push(Diagnostic::new(format!("leading[{name}]"), lead_err, tol(LEADING_TOL)));
                if let Some(want) = predicted {
                    let err = (third_order - want).norm() / want.norm();
                    row.insert("relative_error".into(), json!(err));
                    diags.push(Diagnostic::new(format!("third_order[{name}]"), err, tol(LOG_COEFFICIENT_TOL)));
                }
                rows.push(Value::Object(row));
            }
            _ => return Err(Error::Domain("unexpected fit form".into()).into()),
        }
    }
    let out = obj(json!({ "mu": rat(h.mu()), "window": [window.rmin, window.rmax], "points": rows }));
    Ok((out, diags))
}

fn int_mat(m: &Gamma2Element) -> Value {
    json!([[m.a, m.b], [m.c, m.d]])
}

fn continuation(s: &SolutionArgs, loops: &[Loop], tol: &dyn Fn(f64) -> f64) -> Outcome {
    if s.to_mu.is_some() {
        return Err(usage("continue applies to untransformed Picard and Chazy solutions"));
    }
    let h = handle(s, None)?;
    let loops: Vec<Loop> = if loops.is_empty() { vec![Loop::Gamma0, Loop::Gamma1] } else { loops.to_vec() };
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    for lp in loops {
        let name = loop_name(lp);
        let m = loop_matrix(lp);
        let basis = continue_basis(lp)?;
        let want = [[m.a, m.b], [m.c, m.d]];
        let dev = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (basis[i][j] - want[i][j] as f64).norm())
            .fold(0.0, f64::max);
        let params = match &h {
            SolutionHandle::Picard(p) => {
                let q = gamma2_act_params(&m, p);
                json!({ "nu1": cx(q.nu1), "nu2": cx(q.nu2) })
            }
            SolutionHandle::Chazy(nu) => json!({ "nu": chazy_value(&gamma2_act_moebius(&m, nu)) }),
            _ => return Err(usage("continue applies to --kind picard and --kind chazy")),
        };
        let d = loop_consistency(&h, lp)?;
        rows.push(json!({
            "loop": name,
            "matrix": int_mat(&m),
            "basis": mat(&basis),
            "basis_deviation": dev,
            "parameters": params,
            "discrepancy": d,
        }));
        diags.push(Diagnostic::new(format!("basis[{name}]"), dev, tol(LOOP_TOL)));
        diags.push(Diagnostic::new(format!("consistency[{name}]"), d, tol(LOOP_TOL)));
    }
    Ok((obj(json!({ "loops": rows })), diags))
}

fn ladder(from: num_rational::Rational64, to: num_rational::Rational64) -> Outcome {
    let steps = mu_ladder(from, to)?;
    let out = obj(json!({
        "from": rat(from),
        "to": rat(to),
        "class_from": rat(equation_class(from)),
        "class_to": rat(equation_class(to)),
        "steps": steps.iter().map(step_json).collect::<Vec<_>>(),
    }));
    Ok((out, Vec::new()))
}

fn jet(mu: num_rational::Rational64, x: C, y: C, yp: C) -> Outcome {
    let j = JetPoint::new(x, y, yp, mu)?;
    let (yt, ypt) = s1_transform_jet(&j)?;
    let out = obj(json!({
        "mu": rat(mu),
        "target_mu": rat(-mu),
        "y": cx(yt),
        "yp": cx(ypt),
        "q": cx(q_denominator(&j)),
        "q_relative": q_relative(&j),
        "obstruction": obstruction_factors(x, y, yp).map(cx),
    }));
    Ok((out, Vec::new()))
}

fn classify(nu1: num_rational::Rational64, nu2: num_rational::Rational64) -> Outcome {
    let l = algebraic_label(nu1, nu2)?;
    let d = dihedral_classify(l.m, l.n)?;
    Ok((obj(json!({ "M": l.m, "N": l.n, "Nhat": d.n_hat, "Mhat": d.m_hat, "group": d.group })), Vec::new()))
}

fn angles_json(t: &TriangleAngles) -> Value {
    Value::Array(t.as_array().iter().map(|&r| rat(r)).collect())
}

fn class_name(c: ConstraintClass) -> &'static str {
    match c {
        ConstraintClass::HalfInteger => "half_integer",
        ConstraintClass::Integer => "integer",
        ConstraintClass::Other => "other",
    }
}

fn triangle(r: &[num_rational::Rational64]) -> Result<TriangleAngles, CliError> {
    match *r {
        [a, b, c] => Ok(TriangleAngles::new(a, b, c)?),
        _ => Err(usage(format!("--angles needs three values, got {}", r.len()))),
    }
}

fn orbit_cmd(
    angles: &[num_rational::Rational64],
    triple: &[C],
    cap: usize,
    permutations: bool,
    tol: &dyn Fn(f64) -> f64,
) -> Outcome {
    let input = match (angles.is_empty(), triple) {
        (false, _) => OrbitInput::Angles(triangle(angles)?),
        (true, &[a, b, c]) => OrbitInput::Triple(MonodromyTriple::numeric(a, b, c)),
        (true, []) => return Err(usage("give --angles or --triple")),
        (true, t) => return Err(usage(format!("--triple needs three values, got {}", t.len()))),
    };
    let report = orbit(&input, &OrbitOptions { cap, permutations })?;
    let first = report.triples.first();
    let reference = first.map(|t| (t.constraint_exact(), t.constraint()));
    let mut drift = 0.0_f64;
    let mut classes = Vec::with_capacity(report.len());
    for (k, t) in report.triples.iter().enumerate() {
        let value = t.constraint_exact().map_or_else(|| t.constraint(), |v| v.to_complex());
        if let Some((exact0, numeric0)) = &reference {
            drift = drift.max(match (exact0, t.constraint_exact()) {
                (Some(a), Some(b)) if *a == b => 0.0,
                _ => (value - numeric0).norm(),
            });
        }
        let mut row = obj(json!({
            "index": k,
            "triple": t.to_complex().map(cx),
            "constraint": cx(value),
        }));
        if let Some(a) = report.angles.as_ref().and_then(|a| a.get(k)) {
            row.insert("angles".into(), angles_json(a));
        }
        classes.push(Value::Object(row));
    }
    let status = match report.status {
        OrbitStatus::Complete => "complete",
        OrbitStatus::CapExceeded => "cap_exceeded",
        OrbitStatus::Overflow => "overflow",
    };
    let out = obj(json!({
        "size": report.len(),
        "finite": report.is_finite(),
        "status": status,
        "constraint_class": first.map(|t| class_name(t.constraint_class())),
        "classes": classes,
    }));
    Ok((out, vec![Diagnostic::new("constraint_invariance", drift, tol(MATRIX_TOL))]))
}

fn matrices_json(m: &MatrixTriple) -> Map<String, Value> {
    obj(json!({
        "m1": mat(&m.m1),
        "m2": mat(&m.m2),
        "m3": mat(&m.m3),
        "m_inf": mat(&m.m_inf()),
        "pair_traces": m.pair_traces().map(cx),
    }))
}

fn defect_diagnostics(m: &MatrixTriple, tol: &dyn Fn(f64) -> f64) -> Vec<Diagnostic> {
    let d = m.defects();
    vec![
        Diagnostic::new("det", d.det, tol(MATRIX_TOL)),
        Diagnostic::new("trace", d.trace, tol(MATRIX_TOL)),
        Diagnostic::new("product", d.product, tol(MATRIX_TOL)),
    ]
}

fn monodromy(
    nu1: Option<C>,
    nu2: Option<C>,
    chazy: bool,
    angles: &[num_rational::Rational64],
    tol: &dyn Fn(f64) -> f64,
) -> Outcome {
    let m = match (nu1, nu2, chazy, angles.is_empty()) {
        (Some(a), Some(b), false, true) => picard_monodromy_matrices(a, b)?,
        (None, None, true, true) => chazy_monodromy_matrices(),
        (None, None, false, false) => {
            let r = triple_from_angles(&triangle(angles)?);
            let out = obj(json!({
                "triple": r.triple.to_complex().map(cx),
                "constraint": cx(r.constraint.to_complex()),
                "class": class_name(r.class),
            }));
            return Ok((out, Vec::new()));
        }
        _ => return Err(usage("give --nu1 and --nu2, --chazy, or --angles")),
    };
    Ok((matrices_json(&m), defect_diagnostics(&m, tol)))
}

fn dihedral(m: u64, n: u64, tol: &dyn Fn(f64) -> f64) -> Outcome {
    let d = dihedral_classify(m, n)?;
    let det = d.gram_det.to_complex();
    let out = obj(json!({
        "Nhat": d.n_hat,
        "Mhat": d.m_hat,
        "group": d.group,
        "root_system": d.root_system,
        "angles": angles_json(&d.angles),
        "gram": d.gram_numeric(),
        "gram_det": cx(det),
    }));
    Ok((out, vec![Diagnostic::new("gram_det", det.norm(), tol(MATRIX_TOL))]))
}

fn commutator_norm(m: &MatrixTriple) -> f64 {
    let mul = |a: &Mat2, b: &Mat2| -> Mat2 {
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    let ms = [m.m1, m.m2, m.m3];
    let mut worst = 0.0_f64;
    for a in &ms {
        for b in &ms {
            let (p, q) = (mul(a, b), mul(b, a));
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((p[i][j] - q[i][j]).norm());
                }
            }
        }
    }
    worst
}

fn rational(a: C, samples: &Samples, tol: &dyn Fn(f64) -> f64) -> Outcome {
    if a == C::new(0.0, 0.0) {
        return Err(Error::InvalidParams("a = 0 is excluded".into()).into());
    }
    let mut xs = points(samples);
    if xs.is_empty() {
        xs = default_points();
    }
    let h = SolutionHandle::RationalFamily { a };
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    for (k, &x) in xs.iter().enumerate() {
        let y = rational_solution_eval(a, x)?;
        let r = pvi_residual(&h, x, None)?;
        rows.push(json!({ "x": cx(x), "y": cx(y), "residual": r }));
        diags.push(Diagnostic::new(format!("residual[{k}]"), r, tol(RATIONAL_RESIDUAL_TOL)));
    }
    let fam = commuting_family(a);
    let c = commutator_norm(&fam);
    diags.push(Diagnostic::new("commutator", c, tol(MATRIX_TOL)));
    let mut out = obj(json!({ "mu": "1", "samples": rows }));
    out.insert("monodromy".into(), Value::Object(matrices_json(&fam)));
    Ok((out, diags))
}
