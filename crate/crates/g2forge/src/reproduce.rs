//! The nine-item checklist for the steady gradient soliton on `h`, in exact
//! arithmetic.

use g2forge_core::connection::{koszul, trichotomy_test, Trichotomy};
use g2forge_core::exterior::{parse_form, KForm};
use g2forge_core::g2::{exterior_derivative, erp_residual, hodge_laplacian, torsion, G2Structure};
use g2forge_core::linalg::Matrix;
use g2forge_core::soliton::{soliton_solve, ChartPrimitive, GradientVerdict, SolitonType};
use g2forge_core::{fixtures, Rational, Scalar, Vector};
use serde_json::{json, Value};

use crate::report::{form_json, matrix_json, vector_json, Check, JsonScalar};

const TAU: &str = "2*e12 + 2*e34 - 4*e56";
const LAPLACIAN: &str = "-8*e146 - 8*e245 + 8*e567";

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// `T e_1 = 2e_2, T e_2 = -2e_1, T e_3 = 2e_4, T e_4 = -2e_3, T e_5 = -4e_6,
/// T e_6 = 4e_5, T e_7 = 0`, as columns.
fn expected_endomorphism() -> Matrix<Rational> {
    let images: [(usize, usize, i64); 6] = [(0, 1, 2), (1, 0, -2), (2, 3, 2), (3, 2, -2), (4, 5, -4), (5, 4, 4)];
    let mut t = Matrix::zeros(7, 7);
    for (from, to, c) in images {
        t[(to, from)] = q(c);
    }
    t
}

/// `∇_{e_k} e_k / e_7` for k = 1..7.
const NABLA_DIAGONAL: [i64; 7] = [0, 0, -1, 1, 1, 1, 0];

pub struct Reproduction {
    pub checks: Vec<Check>,
    pub results: Value,
}

pub fn reproduce() -> g2forge_core::Result<Reproduction> {
    let alg = fixtures::soliton_algebra::<Rational>();
    let phi: KForm<Rational> = parse_form("e127 + e347 + e567 + e135 - e146 - e236 - e245")?;
    let s = G2Structure::new(phi)?;
    let g = s.metric();
    let e7 = Vector::<Rational>::basis(6);
    let mut checks = Vec::new();

    let d_phi = exterior_derivative(&alg, s.phi())?;
    let td = torsion(&alg, &s)?;
    let tau: KForm<Rational> = parse_form(TAU)?;
    checks.push(Check::new(
        "torsion form",
        d_phi.is_zero() && td.tau == tau && *g.gram() == Matrix::identity(7),
        format!("dphi = {d_phi}, tau = {}", td.tau),
    ));

    let lap = hodge_laplacian(&alg, g, s.phi())?;
    let lap_expected: KForm<Rational> = parse_form(LAPLACIAN)?;
    checks.push(Check::new("hodge laplacian", lap == lap_expected, format!("laplacian = {lap}")));

    checks.push(Check::new(
        "torsion endomorphism",
        td.endomorphism == expected_endomorphism(),
        (0..7).map(|i| format!("T e{} = {}", i + 1, column(&td.endomorphism, i))).collect::<Vec<_>>().join(", "),
    ));

    let conn = koszul(&alg, g)?;
    let diagonal: Vec<Vector<Rational>> = (0..7).map(|k| conn.covariant(k, k)).collect();
    let nabla_ok = diagonal.iter().zip(NABLA_DIAGONAL).all(|(v, c)| *v == e7.scale(&q(c)));
    checks.push(Check::new(
        "levi-civita connection",
        nabla_ok,
        diagonal.iter().enumerate().map(|(k, v)| format!("nabla_e{0} e{0} = {1}", k + 1, v)).collect::<Vec<_>>().join(", "),
    ));

    let tri = trichotomy_test(&alg, &s)?;
    let div = &tri.divergence.components;
    checks.push(Check::new("divergence", *div == e7.scale(&q(-32)), format!("div t = {}", div)));

    let cert = soliton_solve(&alg, &s)?;
    checks.push(Check::new(
        "soliton constant",
        cert.lambda == q(0) && cert.residual_norm_sq == q(0) && cert.soliton_type == SolitonType::Steady,
        format!("lambda = {}, |residual|^2 = {}", cert.lambda, cert.residual_norm_sq),
    ));

    let x_expected = e7.scale(&q(-4));
    let x_ok = in_affine_span(&cert.x, &x_expected, &cert.kernel);
    let gradient_ok = cert.gradient
        == Some(GradientVerdict::Gradient { primitive: Some(ChartPrimitive { coordinate: 6, slope: q(4) }) });
    checks.push(Check::new(
        "soliton vector field",
        x_ok && gradient_ok,
        format!("X = {}, f = 4*x7 + b: {gradient_ok}", cert.x),
    ));

    checks.push(Check::new(
        "trichotomy",
        tri.verdict == Trichotomy::NotDivergenceFree,
        tri.verdict.as_str().to_string(),
    ));

    let erp = erp_residual(&alg, &s)?;
    let erp_norm = g.norm_sq(&erp);
    checks.push(Check::new("not extremally Ricci pinched", erp_norm.is_positive(), format!("|residual|^2 = {erp_norm}")));

    let results = json!({
        "tau": form_json(&td.tau),
        "tau_norm_sq": td.norm_sq.to_json(),
        "d_phi": form_json(&d_phi),
        "laplacian": form_json(&lap),
        "torsion_endomorphism": matrix_json(&td.endomorphism),
        "nabla_diagonal": diagonal.iter().map(vector_json).collect::<Vec<_>>(),
        "divergence": vector_json(div),
        "lambda": cert.lambda.to_json(),
        "x": vector_json(&cert.x),
        "kernel_dim": cert.kernel.len(),
        "trichotomy": tri.verdict.as_str(),
        "erp_residual": form_json(&erp),
        "erp_residual_norm_sq": erp_norm.to_json(),
    });
    Ok(Reproduction { checks, results })
}

fn column(m: &Matrix<Rational>, j: usize) -> String {
    Vector::from_slice(&(0..7).map(|i| m[(i, j)].clone()).collect::<Vec<_>>()).to_string()
}

/// `x - expected` lies in the span of the kernel's vector parts with zero
/// `λ` part.
fn in_affine_span(x: &Vector<Rational>, expected: &Vector<Rational>, kernel: &[(Rational, Vector<Rational>)]) -> bool {
    let diff = x.sub(expected);
    if diff.is_zero() {
        return true;
    }
    let basis: Vec<_> = kernel.iter().filter(|(l, _)| l.is_zero()).map(|(_, v)| v.components().to_vec()).collect();
    if basis.is_empty() {
        return false;
    }
    let a = Matrix::from_fn(7, basis.len(), |i, j| basis[j][i].clone());
    a.solve_any(diff.components()).is_some()
}
