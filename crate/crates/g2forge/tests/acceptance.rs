//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use g2forge_core::charts::{fd_structure_check, sample_points, structure_residuals, FdConfig};
use g2forge_core::connection::{koszul, trichotomy_test, Trichotomy};
use g2forge_core::exterior::{parse_form, KForm, MultiIndex};
use g2forge_core::flow::{integrate, step_halving, FlowConfig, Method, Termination};
use g2forge_core::g2::{erp_residual, exterior_derivative, hodge_laplacian, metric_from_phi, torsion, G2Structure};
use g2forge_core::liealg::{classify, parse_structure_equations, LieAlgebra};
use g2forge_core::linalg::Matrix;
use g2forge_core::soliton::{gradient_check, soliton_solve, ChartPrimitive, GradientVerdict};
use g2forge_core::{fixtures, Metric, Rational, Scalar, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn qr(p: i64, d: i64) -> Q {
    Q::from_ratio(p, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn form(text: &str) -> KForm<Q> {
    parse_form(text).unwrap()
}

fn golden_reproduction() -> Result<String, String> {
    let alg = fixtures::soliton_algebra::<Q>();
    let phi = form("e127 + e347 + e567 + e135 - e146 - e236 - e245");
    let s = G2Structure::new(phi.clone()).map_err(|e| e.to_string())?;
    let g = s.metric();
    ensure(*g.gram() == Matrix::identity(7), || "metric is not the identity".into())?;
    let d_phi = exterior_derivative(&alg, &phi).unwrap();
    ensure(d_phi.is_zero(), || format!("dphi = {d_phi}"))?;
    let td = torsion(&alg, &s).unwrap();
    ensure(td.tau == form("2*e12 + 2*e34 - 4*e56"), || format!("tau = {}", td.tau))?;
    let lap = hodge_laplacian(&alg, g, &phi).unwrap();
    ensure(lap == form("e146 + e245 - e567").scale(&q(-8)), || format!("laplacian = {lap}"))?;

    // T e_1 = 2e_2, T e_2 = -2e_1, T e_3 = 2e_4, T e_4 = -2e_3, T e_5 = -4e_6, T e_6 = 4e_5, T e_7 = 0
    let mut t = Matrix::zeros(7, 7);
    for (from, to, c) in [(0, 1, 2), (1, 0, -2), (2, 3, 2), (3, 2, -2), (4, 5, -4), (5, 4, 4)] {
        t[(to, from)] = q(c);
    }
    ensure(td.endomorphism == t, || "torsion endomorphism differs".into())?;

    let conn = koszul(&alg, g).unwrap();
    let e7 = Vector::<Q>::basis(6);
    for (k, c) in [0, 0, -1, 1, 1, 1, 0].into_iter().enumerate() {
        let v = conn.covariant(k, k);
        ensure(v == e7.scale(&q(c)), || format!("nabla_e{0} e{0} = {v}", k + 1))?;
    }
    let tri = trichotomy_test(&alg, &s).unwrap();
    let expected: Vec<Q> = [0, 0, 0, 0, 0, 0, -32].map(q).into();
    ensure(tri.divergence.components.components() == expected.as_slice(), || {
        format!("div t = {}", tri.divergence.components)
    })?;
    Ok(format!("tau = {}, laplacian = {lap}, div t = {}", td.tau, tri.divergence.components))
}

fn soliton_certificate() -> Result<String, String> {
    let alg = fixtures::soliton_algebra::<Q>();
    let s = G2Structure::new(fixtures::model_phi::<Q>()).unwrap();
    let cert = soliton_solve(&alg, &s).map_err(|e| e.to_string())?;
    ensure(cert.lambda == q(0), || format!("lambda = {}", cert.lambda))?;
    ensure(cert.residual_norm_sq == q(0) && cert.residual.is_zero(), || format!("residual {}", cert.residual))?;
    let diff = cert.x.sub(&Vector::basis(6).scale(&q(-4)));
    let in_kernel = diff.is_zero() || {
        let basis: Vec<_> = cert.kernel.iter().filter(|(l, _)| l.is_zero()).map(|(_, v)| v.clone()).collect();
        !basis.is_empty()
            && Matrix::from_fn(7, basis.len(), |i, j| basis[j].0[i].clone()).solve_any(diff.components()).is_some()
    };
    ensure(in_kernel, || format!("X = {}", cert.x))?;
    let verdict = gradient_check(&alg, s.metric(), &Vector::basis(6).scale(&q(-4))).unwrap();
    let expected = GradientVerdict::Gradient { primitive: Some(ChartPrimitive { coordinate: 6, slope: q(4) }) };
    ensure(verdict == expected, || format!("{verdict:?}"))?;
    Ok(format!("lambda = {}, X = {}, kernel dim {}, f = 4*x7 + b", cert.lambda, cert.x, cert.kernel.len()))
}

fn trichotomy() -> Result<String, String> {
    let s = G2Structure::new(fixtures::model_phi::<Q>()).unwrap();
    let h = trichotomy_test(&fixtures::soliton_algebra(), &s).unwrap().verdict;
    let flat = trichotomy_test(&fixtures::abelian(), &s).unwrap().verdict;
    ensure(h == Trichotomy::NotDivergenceFree, || format!("h: {}", h.as_str()))?;
    ensure(flat == Trichotomy::DivergenceFree, || format!("torsion-free: {}", flat.as_str()))?;
    Ok(format!("h: {}, torsion-free: {}", h.as_str(), flat.as_str()))
}

fn non_erp() -> Result<String, String> {
    let s = G2Structure::new(fixtures::model_phi::<Q>()).unwrap();
    let r = erp_residual(&fixtures::soliton_algebra(), &s).unwrap();
    let norm = s.metric().norm_sq(&r);
    ensure(norm.is_positive(), || format!("|residual|^2 = {norm}"))?;
    let flat = erp_residual(&fixtures::abelian(), &s).unwrap();
    ensure(flat.is_zero(), || format!("torsion-free residual {flat}"))?;
    Ok(format!("|residual|^2 = {norm} on h, 0 on the torsion-free fixture"))
}

/// Diagonal automorphisms of h, `a_5 = a_1 a_4`, `a_6 = a_2 a_4`, `a_7 = 1`,
/// applied to the model form.
fn automorphic_start(rng: &mut ChaCha8Rng) -> KForm<f64> {
    let a: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 });
    let d = [a[0], a[1], a[2], a[3], a[0] * a[3], a[1] * a[3], 1.0];
    let phi = fixtures::model_phi::<f64>();
    let mut out = KForm::zero(3);
    for (m, c) in phi.terms() {
        let scale: f64 = m.iter().map(|i| d[i]).product();
        out = out + KForm::term(m, c * scale);
    }
    out
}

fn flow_self_similarity() -> Result<String, String> {
    let alg = fixtures::soliton_algebra::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut starts = vec![fixtures::model_phi::<f64>()];
    starts.extend((0..4).map(|_| automorphic_start(&mut rng)));
    let (mut worst_tau, mut worst_d) = (0.0f64, 0.0f64);
    for phi in &starts {
        let trace = integrate(&alg, phi, &FlowConfig::new(0.5, 1e-3, Method::Rk4)).map_err(|e| e.to_string())?;
        ensure(trace.termination == Termination::Completed, || trace.termination.as_str().into())?;
        ensure((trace.last().t - 0.5).abs() < 1e-12, || format!("stopped at {}", trace.last().t))?;
        for s in &trace.samples {
            worst_tau = worst_tau.max((s.tau_norm_sq - 24.0).abs());
            worst_d = worst_d.max(s.d_phi_norm);
        }
    }
    ensure(worst_tau < 1e-6, || format!("max ||tau|^2 - 24| = {worst_tau:e}"))?;
    ensure(worst_d < 1e-9, || format!("max |dphi| = {worst_d:e}"))?;
    Ok(format!("{} starts, max ||tau|^2 - 24| = {worst_tau:.1e}, max |dphi| = {worst_d:.1e}", starts.len()))
}

fn integrator_order() -> Result<String, String> {
    let alg = fixtures::soliton_algebra::<f64>();
    let phi = fixtures::model_phi::<f64>();
    let rk4 = step_halving(&alg, &phi, Method::Rk4, 0.1, 1e-2).map_err(|e| e.to_string())?;
    let euler = step_halving(&alg, &phi, Method::Euler, 0.1, 1e-3).map_err(|e| e.to_string())?;
    ensure((12.0..=20.0).contains(&rk4.ratio), || format!("rk4 ratio {}", rk4.ratio))?;
    ensure((1.8..=2.2).contains(&euler.ratio), || format!("euler ratio {}", euler.ratio))?;
    Ok(format!("rk4 ratio {:.2} (dt 1e-2), euler ratio {:.3} (dt 1e-3)", rk4.ratio, euler.ratio))
}

fn chart_verification() -> Result<String, String> {
    let eqs = parse_structure_equations::<f64>(fixtures::SOLITON_ALGEBRA).unwrap();
    let cfg = FdConfig { samples: 100, tol: 1e-5, ..FdConfig::default() };
    let report = fd_structure_check(&eqs, &cfg).map_err(|e| e.to_string())?;
    let points = sample_points(100, cfg.seed);
    let coarse = structure_residuals(&eqs, &points, 1e-2).unwrap().max_deviation;
    let fine = structure_residuals(&eqs, &points, 1e-3).unwrap().max_deviation;
    let ratio = coarse / fine;
    ensure((50.0..=200.0).contains(&ratio), || format!("step ratio {ratio}"))?;
    let sentinel = parse_structure_equations::<f64>("(0,0,37,47,2*14+57,-2*24+67,0)").unwrap();
    ensure(fd_structure_check(&sentinel, &cfg).is_err(), || "sign sentinel passed".into())?;
    Ok(format!("max deviation {:.1e} at step {:e}, 10x step ratio {ratio:.1}, sentinel rejected", report.max_deviation, cfg.step))
}

fn jacobi_oracle(dim: usize, c: &[Q]) -> bool {
    let at = |i: usize, j: usize, k: usize| &c[(i * dim + j) * dim + k];
    // Σ_m c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj = 0
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                for l in 0..dim {
                    let mut sum = q(0);
                    for m in 0..dim {
                        sum = sum
                            + at(i, j, m).clone() * at(m, k, l).clone()
                            + at(j, k, m).clone() * at(m, i, l).clone()
                            + at(k, i, m).clone() * at(m, j, l).clone();
                    }
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn algebra_properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut lie, mut not_lie) = (0, 0);
    for n in 0..1000 {
        let dim = rng.random_range(3..=7);
        let mut c = vec![q(0); dim * dim * dim];
        for _ in 0..rng.random_range(1..=5) {
            let (i, j, k) = (rng.random_range(0..dim), rng.random_range(0..dim), rng.random_range(0..dim));
            if i == j {
                continue;
            }
            let v = q(rng.random_range(-2..=2));
            c[(i * dim + j) * dim + k] = c[(i * dim + j) * dim + k].clone() + v.clone();
            c[(j * dim + i) * dim + k] = c[(j * dim + i) * dim + k].clone() - v;
        }
        let jacobi = jacobi_oracle(dim, &c);
        let alg = LieAlgebra::new_unvalidated(dim, c).map_err(|e| e.to_string())?;
        let dd = alg.dd_violation().is_none();
        ensure(dd == jacobi, || format!("tensor {n}: dd = 0 is {dd}, Jacobi is {jacobi}"))?;
        if jacobi {
            lie += 1;
        } else {
            not_lie += 1;
        }
    }
    ensure(lie > 0 && not_lie > 0, || format!("degenerate sample: {lie} Lie, {not_lie} not"))?;

    let h = classify(&fixtures::soliton_algebra::<Q>());
    ensure(h.solvable && !h.nilpotent && !h.unimodular, || format!("{h:?}"))?;
    ensure(h.trace_vector[6] == q(2), || format!("tr ad_e7 = {}", h.trace_vector[6]))?;
    let n52 = classify(&fixtures::n52::<Q>());
    ensure(n52.nilpotency_step == Some(2), || format!("{n52:?}"))?;
    Ok(format!("1000 tensors agree ({lie} Lie, {not_lie} not); h solvable, non-nilpotent, tr ad_e7 = 2; n5,2 2-step nilpotent"))
}

fn random_form(rng: &mut ChaCha8Rng, basis: &[MultiIndex], degree: usize) -> KForm<Q> {
    let mut f = KForm::zero(degree);
    for _ in 0..rng.random_range(0..=6) {
        let m = basis[rng.random_range(0..basis.len())];
        f = f + KForm::term(m, qr(rng.random_range(-6..=6), rng.random_range(1..=3)));
    }
    f
}

fn leibniz_det(m: &[Vec<Q>]) -> Q {
    fn go(m: &[Vec<Q>], cols: &mut Vec<usize>, row: usize, sign: i64, acc: Q, total: &mut Q) {
        if row == m.len() {
            *total = total.clone() + acc * q(sign);
            return;
        }
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            let s = if idx % 2 == 0 { sign } else { -sign };
            go(m, cols, row + 1, s, acc.clone() * m[row][c].clone(), total);
            cols.insert(idx, c);
        }
    }
    let mut total = q(0);
    go(m, &mut (0..m.len()).collect(), 0, 1, q(1), &mut total);
    total
}

fn exterior_properties() -> Result<String, String> {
    let p = Matrix::from_fn(7, 7, |i, j| {
        q(match (i, j) {
            _ if i == j => 1 + (i as i64 % 3),
            (0, 1) | (2, 4) | (5, 6) => 1,
            (3, 0) => -1,
            _ => 0,
        })
    });
    let metrics = [Metric::<Q>::identity(), Metric::new(p.transpose().mul(&p)).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut oracle_cache: HashMap<(usize, u8, u8), Q> = HashMap::new();
    let mut cases = 0;
    for degree in 0..=7 {
        let basis = MultiIndex::all_of_degree(degree);
        for n in 0..1000 {
            let (gi, g) = (n % 2, &metrics[n % 2]);
            let a = random_form(&mut rng, &basis, degree);
            ensure(g.hodge_star(&g.hodge_star(&a)) == a, || format!("star star on {a}"))?;

            let (i, j) = (basis[rng.random_range(0..basis.len())], basis[rng.random_range(0..basis.len())]);
            let expected = oracle_cache
                .entry((gi, i.bits(), j.bits()))
                .or_insert_with(|| {
                    let (ii, jj) = (i.indices(), j.indices());
                    let sub: Vec<Vec<Q>> =
                        ii.iter().map(|&r| jj.iter().map(|&c| g.inverse()[(r, c)].clone()).collect()).collect();
                    leibniz_det(&sub)
                })
                .clone();
            ensure(g.pair_monomials(i, j) == expected, || format!("gram oracle on {i}, {j}"))?;

            let other_degree = rng.random_range(0..=7 - degree);
            let b = random_form(&mut rng, &MultiIndex::all_of_degree(other_degree), other_degree);
            let ab = a.wedge(&b).unwrap();
            let swap = if degree * other_degree % 2 == 0 { q(1) } else { q(-1) };
            ensure(ab == b.wedge(&a).unwrap().scale(&swap), || format!("graded commutativity on {a}, {b}"))?;
            if degree + other_degree > 0 {
                let x = Vector(std::array::from_fn(|_| qr(rng.random_range(-6..=6), rng.random_range(1..=3))));
                let lhs = ab.interior(&x).unwrap();
                let rhs = if degree == 0 {
                    a.wedge(&b.interior(&x).unwrap()).unwrap()
                } else if other_degree == 0 {
                    a.interior(&x).unwrap().wedge(&b).unwrap()
                } else {
                    let sign = if degree % 2 == 0 { q(1) } else { q(-1) };
                    a.interior(&x).unwrap().wedge(&b).unwrap() + a.wedge(&b.interior(&x).unwrap()).unwrap().scale(&sign)
                };
                ensure(lhs == rhs, || format!("interior antiderivation on {a}, {b}"))?;
            }
            cases += 1;
        }
    }

    let phi = fixtures::model_phi::<Q>();
    let g0 = metric_from_phi(&phi).unwrap();
    for _ in 0..20 {
        let lambda = qr(rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 }, rng.random_range(1..=9));
        let cube = lambda.clone() * lambda.clone() * lambda.clone();
        let g = metric_from_phi(&phi.scale(&cube)).map_err(|e| e.to_string())?;
        ensure(*g.gram() == g0.gram().scale(&(lambda.clone() * lambda.clone())), || format!("scaling law at {lambda}"))?;
        let sign = if lambda.is_negative() { -1 } else { 1 };
        ensure(g.orientation() == sign * g0.orientation(), || format!("orientation at {lambda}"))?;
    }
    Ok(format!("{cases} forms over 8 degrees, 20 scalings"))
}

struct Criterion {
    title: &'static str,
    budget: Option<Duration>,
    check: fn() -> Result<String, String>,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { title: "golden reproduction", budget: Some(Duration::from_secs(1)), check: golden_reproduction },
        Criterion { title: "soliton certificate", budget: None, check: soliton_certificate },
        Criterion { title: "trichotomy", budget: None, check: trichotomy },
        Criterion { title: "non-ERP", budget: None, check: non_erp },
        Criterion { title: "flow self-similarity", budget: Some(Duration::from_secs(30)), check: flow_self_similarity },
        Criterion { title: "integrator order", budget: None, check: integrator_order },
        Criterion { title: "chart verification", budget: None, check: chart_verification },
        Criterion { title: "algebra properties", budget: None, check: algebra_properties },
        Criterion { title: "exterior-calculus properties", budget: None, check: exterior_properties },
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (n, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {:.2} s, budget {} s", elapsed.as_secs_f64(), b.as_secs())),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failures += 1;
        }
        println!("{tag} {} {} ({:.2} s): {detail}", n + 1, c.title, elapsed.as_secs_f64());
    }
    let elapsed = total.elapsed().as_secs_f64();
    if elapsed > 60.0 {
        println!("FAIL total runtime {elapsed:.1} s exceeds 60 s");
        failures += 1;
    }
    println!("{} of {} criteria passed in {elapsed:.1} s", criteria.len() - failures.min(criteria.len()), criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
