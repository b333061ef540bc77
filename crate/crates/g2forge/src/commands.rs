//! Subcommand implementations, generic over the scalar backend.

use std::fmt::Write as _;
use std::path::Path;

use g2forge_core::charts::{
    fd_structure_check, gradient_function_check, maurer_cartan_check, sample_points, structure_residuals, FdConfig,
    GRADIENT_TOL, MAURER_CARTAN_TOL,
};
use g2forge_core::connection::trichotomy_test;
use g2forge_core::exterior::{parse_form_of_degree, KForm};
use g2forge_core::flow::{coefficient_labels, integrate, FlowConfig, FlowTrace, Method};
use g2forge_core::g2::{classify_structure, erp_residual, exterior_derivative, hodge_laplacian, torsion, G2Structure, StructureClass};
use g2forge_core::liealg::{classify, parse_structure_equations, LieAlgebra};
use g2forge_core::soliton::{soliton_solve, GradientVerdict, SolitonCertificate, SolitonType};
use g2forge_core::{Error, Scalar};
use serde_json::{json, Value};

use crate::fixture::Fixture;
use crate::report::{form_json, matrix_json, scalars_json, vector_json, Check, JsonScalar};

/// What a command produced before it is wrapped in a report.
pub struct Output {
    pub results: Value,
    pub checks: Vec<Check>,
    pub text: String,
}

pub fn alg_check(fixture: &Fixture) -> Output {
    let alg = fixture.algebra_exact();
    let r = classify(alg);
    let mut props = vec![
        if r.unimodular { "unimodular" } else { "non-unimodular" }.to_string(),
        if r.solvable { "solvable" } else { "non-solvable" }.to_string(),
    ];
    props.push(match r.nilpotency_step {
        Some(k) => format!("nilpotent ({k}-step)"),
        None => "non-nilpotent".to_string(),
    });
    let brackets: Vec<Value> = alg
        .nonzero_brackets()
        .iter()
        .map(|(i, j, v)| json!({ "i": i + 1, "j": j + 1, "bracket": vector_json_dim(v.components(), alg.dim()) }))
        .collect();
    let dd = alg.dd_violation();
    let mut text = format!("{}: {}\n{}\n", fixture.name, fixture.salamon, props.join(", "));
    let traces: Vec<String> = r.trace_vector.iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "tr ad = ({})", traces.join(", "));
    let _ = writeln!(text, "derived series {:?}, lower central series {:?}", r.derived_series, r.lower_central_series);
    let results = json!({
        "name": fixture.name,
        "dim": r.dim,
        "salamon": fixture.salamon,
        "notes": fixture.notes,
        "trace_vector": scalars_json(&r.trace_vector),
        "unimodular": r.unimodular,
        "solvable": r.solvable,
        "nilpotent": r.nilpotent,
        "nilpotency_step": r.nilpotency_step,
        "abelian": r.abelian,
        "derived_series": r.derived_series,
        "lower_central_series": r.lower_central_series,
        "brackets": brackets,
    });
    let checks = vec![Check::new("d^2 = 0", dd.is_none(), dd.map_or("ok".to_string(), |k| format!("fails on e^{}", k + 1)))];
    Output { results, checks, text }
}

/// Report for input that is not a Lie algebra.
pub fn alg_invalid(name: &str, err: &Error) -> Output {
    Output {
        results: json!({ "name": name, "error": err.to_string() }),
        checks: vec![Check::new("lie algebra", false, err.to_string())],
        text: format!("{name}: {err}\n"),
    }
}

fn vector_json_dim<S: JsonScalar>(v: &[S], dim: usize) -> Value {
    scalars_json(&v[..dim])
}

pub fn g2_analyze<S: JsonScalar>(alg: &LieAlgebra<S>, phi: &KForm<S>) -> Result<Output, Error> {
    let class = classify_structure(alg, phi)?;
    let mut results = json!({ "class": class.as_str(), "phi": form_json(phi) });
    let mut text = format!("{}\n", class.as_str());
    let positive = class != StructureClass::NotPositive;
    let checks = vec![Check::new("positive", positive, class.as_str())];
    if !positive {
        return Ok(Output { results, checks, text });
    }
    let s = G2Structure::new(phi.clone())?;
    let g = s.metric();
    let d_phi = exterior_derivative(alg, phi)?;
    results["metric"] = matrix_json(g.gram());
    results["orientation"] = json!(g.orientation());
    results["det_g"] = g.det().to_json();
    results["d_phi"] = form_json(&d_phi);
    if matches!(class, StructureClass::ClosedWithTorsion | StructureClass::TorsionFree) {
        let td = torsion(alg, &s)?;
        let lap = hodge_laplacian(alg, g, phi)?;
        let erp = erp_residual(alg, &s)?;
        let erp_norm = g.norm_sq(&erp);
        let _ = writeln!(text, "tau = {}", td.tau);
        let _ = writeln!(text, "|tau|^2 = {}", td.norm_sq);
        let _ = writeln!(text, "laplacian = {lap}");
        let _ = writeln!(text, "|erp residual|^2 = {erp_norm}");
        results["tau"] = form_json(&td.tau);
        results["tau_norm_sq"] = td.norm_sq.to_json();
        results["torsion_endomorphism"] = matrix_json(&td.endomorphism);
        results["t"] = matrix_json(&td.t);
        results["laplacian"] = form_json(&lap);
        results["erp_residual"] = form_json(&erp);
        results["erp_residual_norm_sq"] = erp_norm.to_json();
    } else {
        let _ = writeln!(text, "dphi = {d_phi}");
    }
    Ok(Output { results, checks, text })
}

fn certificate_json<S: JsonScalar>(c: &SolitonCertificate<S>) -> Value {
    let kernel: Vec<Value> = c.kernel.iter().map(|(l, x)| json!({ "lambda": l.to_json(), "x": vector_json(x) })).collect();
    json!({
        "lambda": c.lambda.to_json(),
        "x": vector_json(&c.x),
        "residual": form_json(&c.residual),
        "residual_norm_sq": c.residual_norm_sq.to_json(),
        "type": c.soliton_type.as_str(),
        "kernel": kernel,
        "gradient": c.gradient.as_ref().map(gradient_json),
    })
}

fn gradient_json<S: JsonScalar>(v: &GradientVerdict<S>) -> Value {
    match v {
        GradientVerdict::NotGradient => json!({ "verdict": "NotGradient" }),
        GradientVerdict::Gradient { primitive } => json!({
            "verdict": "Gradient",
            "primitive": primitive.as_ref().map(|p| json!({ "coordinate": p.coordinate + 1, "slope": p.slope.to_json() })),
        }),
    }
}

fn certificate_text<S: JsonScalar>(c: &SolitonCertificate<S>) -> String {
    let mut text = String::new();
    if c.soliton_type == SolitonType::NotSoliton {
        let _ = writeln!(text, "NotSoliton: best fit lambda = {}, X = {}", c.lambda, c.x);
        let _ = writeln!(text, "|residual|^2 = {}", c.residual_norm_sq);
        return text;
    }
    let _ = writeln!(text, "{} soliton: lambda = {}, X = {}", c.soliton_type.as_str(), c.lambda, c.x);
    if !c.kernel.is_empty() {
        let _ = writeln!(text, "X is determined up to a {}-dimensional kernel", c.kernel.len());
    }
    match &c.gradient {
        Some(GradientVerdict::Gradient { primitive: Some(p) }) => {
            let _ = writeln!(text, "gradient: f = {}*x{} + b", p.slope, p.coordinate + 1);
        }
        Some(GradientVerdict::Gradient { primitive: None }) => text.push_str("gradient\n"),
        _ => text.push_str("not gradient\n"),
    }
    text
}

fn structure<S: Scalar>(phi: &KForm<S>) -> Result<G2Structure<S>, Error> {
    G2Structure::new(phi.clone())
}

pub fn soliton_solve_cmd<S: JsonScalar>(alg: &LieAlgebra<S>, phi: &KForm<S>) -> Result<Output, Error> {
    let cert = soliton_solve(alg, &structure(phi)?)?;
    let soliton = cert.soliton_type != SolitonType::NotSoliton;
    Ok(Output {
        results: certificate_json(&cert),
        checks: vec![Check::new("soliton", soliton, format!("|residual|^2 = {}", cert.residual_norm_sq))],
        text: certificate_text(&cert),
    })
}

pub fn soliton_classify_cmd<S: JsonScalar>(alg: &LieAlgebra<S>, phi: &KForm<S>) -> Result<Output, Error> {
    let s = structure(phi)?;
    let cert = soliton_solve(alg, &s)?;
    let tri = trichotomy_test(alg, &s)?;
    let soliton = cert.soliton_type != SolitonType::NotSoliton;
    let gradient = cert.gradient.as_ref().is_some_and(GradientVerdict::is_gradient);
    let label = match (soliton, gradient) {
        (false, _) => "NotSoliton".to_string(),
        (true, true) => format!("{} gradient soliton", cert.soliton_type.as_str()),
        (true, false) => format!("{} soliton", cert.soliton_type.as_str()),
    };
    let mut text = certificate_text(&cert);
    let _ = writeln!(text, "{label}; trichotomy: {} (div t = {})", tri.verdict.as_str(), tri.divergence.components);
    let results = json!({
        "classification": label,
        "certificate": certificate_json(&cert),
        "trichotomy": tri.verdict.as_str(),
        "divergence": vector_json(&tri.divergence.components),
        "divergence_route": format!("{:?}", tri.divergence.route),
    });
    Ok(Output {
        results,
        checks: vec![Check::new("soliton", soliton, label)],
        text,
    })
}

pub struct FlowParams<'a> {
    pub t_end: f64,
    pub dt: f64,
    pub method: Method,
    pub blowup_bound: f64,
    pub out: Option<&'a Path>,
}

pub fn flow_run(alg: &LieAlgebra<f64>, phi: &KForm<f64>, p: &FlowParams<'_>) -> Result<Output, Error> {
    let mut cfg = FlowConfig::new(p.t_end, p.dt, p.method);
    cfg.blowup_bound = p.blowup_bound;
    let cert = soliton_solve(alg, &structure(phi)?)?;
    if cert.soliton_type != SolitonType::NotSoliton {
        cfg.soliton = Some((cert.lambda, cert.x.clone()));
    }
    let trace = integrate(alg, phi, &cfg)?;
    let first = &trace.samples[0];
    let last = trace.last();
    let tau_drift = trace.samples.iter().map(|s| (s.tau_norm_sq - first.tau_norm_sq).abs()).fold(0.0, f64::max);
    let max_d_phi = trace.samples.iter().map(|s| s.d_phi_norm).fold(0.0, f64::max);
    let max_residual = trace.samples.iter().filter_map(|s| s.soliton_residual).reduce(f64::max);
    let completed = trace.termination == g2forge_core::flow::Termination::Completed;
    let mut text = format!(
        "{} with {} steps of dt = {}: {} at t = {}\n",
        trace.method.as_str(),
        trace.samples.len() - 1,
        trace.dt,
        trace.termination.as_str(),
        last.t
    );
    let _ = writeln!(text, "max ||tau|^2 - |tau_0|^2| = {tau_drift:e}, max |dphi| = {max_d_phi:e}");
    if let Some(r) = max_residual {
        let _ = writeln!(text, "max soliton residual = {r:e}");
    }
    if let Some(path) = p.out {
        write_csv(path, &trace).map_err(|_| Error::Config("cannot write the trace CSV"))?;
        let _ = writeln!(text, "trace written to {}", path.display());
    }
    let results = json!({
        "method": trace.method.as_str(),
        "dt": trace.dt,
        "t_end": p.t_end,
        "steps": trace.samples.len() - 1,
        "termination": trace.termination.as_str(),
        "t_final": last.t,
        "final_phi": form_json(&trace.final_phi()),
        "tau_norm_sq_initial": first.tau_norm_sq,
        "tau_norm_sq_drift": tau_drift,
        "max_d_phi_norm": max_d_phi,
        "det_g_final": last.det_g,
        "soliton_monitor": cfg.soliton.as_ref().map(|(l, x)| json!({ "lambda": l, "x": vector_json(x) })),
        "max_soliton_residual": max_residual,
    });
    Ok(Output {
        results,
        checks: vec![Check::new("completed", completed, trace.termination.as_str())],
        text,
    })
}

pub fn write_csv(path: &Path, trace: &FlowTrace) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = ["t", "tau_norm_sq", "det_g", "d_phi_norm", "soliton_residual"].map(String::from).into();
    header.extend(coefficient_labels().iter().map(ToString::to_string));
    w.write_record(&header)?;
    for s in &trace.samples {
        let mut row = vec![
            s.t.to_string(),
            s.tau_norm_sq.to_string(),
            s.det_g.to_string(),
            s.d_phi_norm.to_string(),
            s.soliton_residual.map(|r| r.to_string()).unwrap_or_default(),
        ];
        row.extend(s.coefficients.iter().map(ToString::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// The wrong-sign variant `de^3 = +e^{37}` that the chart must reject.
pub const SENTINEL: &str = "(0,0,37,47,2*14+57,-2*24+67,0)";

pub fn charts_verify(salamon: &str, cfg: &FdConfig) -> Result<Output, Error> {
    let eqs = parse_structure_equations::<f64>(salamon)?;
    let mut checks = Vec::new();
    let mut text = String::new();
    let mut results = json!({ "samples": cfg.samples, "seed": cfg.seed, "step": cfg.step, "tol": cfg.tol });

    match fd_structure_check(&eqs, cfg) {
        Ok(r) => {
            let _ = writeln!(text, "structure equations: max deviation {:e} over {} points", r.max_deviation, r.samples);
            results["per_equation"] = json!(r.per_equation);
            results["max_deviation"] = json!(r.max_deviation);
            checks.push(Check::new("structure equations", true, format!("max deviation {:e}", r.max_deviation)));
        }
        Err(Error::ToleranceExceeded { component, deviation, .. }) => {
            let _ = writeln!(text, "structure equations: de{component} deviates by {deviation:e}");
            results["max_deviation"] = json!(deviation);
            checks.push(Check::new("structure equations", false, format!("de{component} deviates by {deviation:e}")));
        }
        Err(e) => return Err(e),
    }

    let points = sample_points(cfg.samples, cfg.seed);
    let coarse = structure_residuals(&eqs, &points, 1e-2)?.max_deviation;
    let fine = structure_residuals(&eqs, &points, 1e-3)?.max_deviation;
    let ratio = coarse / fine;
    let _ = writeln!(text, "step 1e-2 -> 1e-3: residual ratio {ratio:.1}");
    results["convergence_ratio"] = json!(ratio);
    checks.push(Check::new("quadratic convergence", (50.0..=200.0).contains(&ratio), format!("ratio {ratio:.2}")));

    let sentinel = parse_structure_equations::<f64>(SENTINEL)?;
    let rejected = matches!(fd_structure_check(&sentinel, cfg), Err(Error::ToleranceExceeded { .. }));
    let _ = writeln!(text, "sign sentinel rejected: {rejected}");
    checks.push(Check::new("sign sentinel", rejected, SENTINEL));

    let mc = maurer_cartan_check(&points, cfg.step, MAURER_CARTAN_TOL);
    let mc_ok = mc.is_ok();
    let _ = writeln!(text, "maurer-cartan form left-invariant: {mc_ok}");
    if let Ok(r) = &mc {
        results["maurer_cartan_deviation"] = json!(r.max_deviation);
    }
    checks.push(Check::new("maurer-cartan", mc_ok, mc.err().map_or("ok".into(), |e| e.to_string())));

    let grad = points.iter().try_for_each(|x| gradient_function_check(x, 0.0, GRADIENT_TOL).map(|_| ()));
    let _ = writeln!(text, "grad(4*x7 + b) = -4*e7: {}", grad.is_ok());
    checks.push(Check::new("gradient potential", grad.is_ok(), grad.err().map_or("ok".into(), |e| e.to_string())));

    Ok(Output { results, checks, text })
}

pub fn parse_phi<S: Scalar>(text: &str) -> Result<KForm<S>, Error> {
    parse_form_of_degree(text, 3)
}
