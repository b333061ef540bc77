//! The soliton group as a matrix group in `GL(7, R)`, with its left-invariant
//! coframe in global coordinates `x_1..x_7` and finite-difference checks of
//! the structure equations.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::liealg::{LieAlgebra, StructureEquationSet};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::DIM;

pub type Point = [f64; DIM];

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_STEP: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-5;
pub const DEFAULT_SEED: u64 = 7;
pub const MAURER_CARTAN_TOL: f64 = 1e-6;
pub const GRADIENT_TOL: f64 = 1e-9;

/// Frame covectors that are globally `sign · dx_coordinate` in the chart,
/// as `(covector, coordinate, sign)`, 0-based.
const COORDINATE_COVECTORS: [(usize, usize, i8); 1] = [(6, 6, -1)];

/// `Some((coordinate, sign))` when `e^k = sign · dx_coordinate` on the
/// chart of `alg`, which must be the soliton algebra.
pub fn exact_covector<S: Scalar>(alg: &LieAlgebra<S>, k: usize) -> Option<(usize, i8)> {
    if *alg != fixtures::soliton_algebra::<S>() {
        return None;
    }
    COORDINATE_COVECTORS.iter().find(|c| c.0 == k).map(|c| (c.1, c.2))
}

/// The group element with parameters `x`.
pub fn group_element(x: &Point) -> Matrix<f64> {
    let [x1, x2, x3, x4, x5, x6, x7] = *x;
    let (ep, em) = (libm::exp(x7), libm::exp(-x7));
    Matrix::from_rows(alloc::vec![
        alloc::vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        alloc::vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        alloc::vec![0.0, 0.0, ep, 0.0, 0.0, 0.0, x2],
        alloc::vec![0.0, 0.0, 0.0, em, 0.0, 0.0, -x1],
        alloc::vec![2.0 * x1, 0.0, 0.0, x6, em, 0.0, x4],
        alloc::vec![0.0, -2.0 * x1, 0.0, x5, 0.0, em, x3],
        alloc::vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ])
}

/// Reads the parameters back from a matrix of the group's shape; `None`
/// if any fixed entry is off by more than `tol`.
pub fn group_parameters(h: &Matrix<f64>, tol: f64) -> Option<Point> {
    if h[(2, 2)] <= 0.0 {
        return None;
    }
    let x7 = libm::log(h[(2, 2)]);
    let x1 = h[(4, 0)] / 2.0;
    let x = [x1, h[(2, 6)], h[(5, 6)], h[(4, 6)], h[(5, 3)], h[(4, 3)], x7];
    let rebuilt = group_element(&x);
    let dev = (0..DIM * DIM).map(|n| libm::fabs(rebuilt[(n / DIM, n % DIM)] - h[(n / DIM, n % DIM)])).fold(0.0, f64::max);
    (dev <= tol).then_some(x)
}

/// Row `i` holds the components of `e^{i+1}` along `dx_1..dx_7`.
pub fn coframe(x: &Point) -> Matrix<f64> {
    let [_, _, _, _, x5, x6, x7] = *x;
    let (ep, em) = (libm::exp(x7), libm::exp(-x7));
    let mut e = Matrix::zeros(DIM, DIM);
    e[(0, 5)] = ep;
    e[(0, 6)] = ep * x6;
    e[(1, 4)] = -ep;
    e[(1, 6)] = -ep * x5;
    e[(2, 1)] = em;
    e[(3, 0)] = ep;
    e[(4, 0)] = 2.0 * ep * ep * x6;
    e[(4, 3)] = 2.0 * ep;
    e[(5, 0)] = 2.0 * ep * ep * x5;
    e[(5, 2)] = 2.0 * ep;
    e[(6, 6)] = -1.0;
    e
}

/// `n` points drawn uniformly from `[-2, 2]^7`.
pub fn sample_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| core::array::from_fn(|_| rng.random_range(-2.0..=2.0))).collect()
}

fn shifted(x: &Point, m: usize, h: f64) -> Point {
    let mut y = *x;
    y[m] += h;
    y
}

/// Central difference of a matrix-valued function along `x_m`.
fn partial(f: impl Fn(&Point) -> Matrix<f64>, x: &Point, m: usize, step: f64) -> Matrix<f64> {
    f(&shifted(x, m, step)).sub(&f(&shifted(x, m, -step))).scale(&(0.5 / step))
}

/// Expands a covector given along `dx` in the coframe at `x`:
/// `w = Σ_i a_i e^i`, solved through `E^{-1}`.
fn in_frame(e_inv: &Matrix<f64>, w: &[f64]) -> [f64; DIM] {
    core::array::from_fn(|i| (0..DIM).map(|m| e_inv[(m, i)] * w[m]).sum())
}

/// One entry of `h⁻¹dh` written in the coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct MaurerCartanEntry {
    /// 0-based matrix position.
    pub row: usize,
    pub col: usize,
    /// Coefficients along `e^1..e^7`.
    pub coefficients: [f64; DIM],
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaurerCartanReport {
    pub identification: Vec<MaurerCartanEntry>,
    /// Largest change of any identification coefficient across the points.
    pub max_deviation: f64,
}

fn maurer_cartan_at(x: &Point, step: f64) -> Vec<[f64; DIM]> {
    let h_inv = group_element(x).inverse().expect("group elements are invertible");
    let omegas: Vec<Matrix<f64>> = (0..DIM).map(|m| h_inv.mul(&partial(group_element, x, m, step))).collect();
    let e_inv = coframe(x).inverse().expect("coframe is invertible");
    (0..DIM * DIM)
        .map(|n| {
            let w: Vec<f64> = omegas.iter().map(|o| o[(n / DIM, n % DIM)]).collect();
            in_frame(&e_inv, &w)
        })
        .collect()
}

/// Expresses every entry of `h⁻¹dh` in the coframe at the first point,
/// then checks the same constant coefficients at every other point.
pub fn maurer_cartan_check(points: &[Point], step: f64, tol: f64) -> Result<MaurerCartanReport> {
    let Some(first) = points.first() else {
        return Err(Error::Config("no sample points"));
    };
    let reference = maurer_cartan_at(first, step);
    let mut max_deviation = 0.0f64;
    for p in points {
        for (n, a) in maurer_cartan_at(p, step).iter().enumerate() {
            for i in 0..DIM {
                let dev = libm::fabs(a[i] - reference[n][i]);
                if dev > max_deviation {
                    max_deviation = dev;
                }
                if dev > tol {
                    return Err(Error::ToleranceExceeded {
                        check: "maurer-cartan",
                        point: *p,
                        component: n,
                        deviation: dev,
                        tol,
                    });
                }
            }
        }
    }
    let identification = reference
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.iter().any(|c| libm::fabs(*c) > tol))
        .map(|(n, a)| MaurerCartanEntry {
            row: n / DIM,
            col: n % DIM,
            coefficients: a.map(|c| if libm::fabs(c) > tol { libm::round(c * 1e6) / 1e6 } else { 0.0 }),
        })
        .collect();
    Ok(MaurerCartanReport { identification, max_deviation })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FdReport {
    pub samples: usize,
    pub step: f64,
    /// Largest deviation for each `de^i`.
    pub per_equation: [f64; DIM],
    pub max_deviation: f64,
    pub worst_point: Point,
    /// 0-based index of the worst `de^i`.
    pub worst_component: usize,
}

/// Compares numerical `de^i` of the coframe with the wedge expressions of
/// `eqs` evaluated on the same coframe.
pub fn structure_residuals(eqs: &StructureEquationSet<f64>, points: &[Point], step: f64) -> Result<FdReport> {
    if eqs.dim() != DIM {
        return Err(Error::Dimension { expected: DIM, found: eqs.dim() });
    }
    let mut report = FdReport {
        samples: points.len(),
        step,
        per_equation: [0.0; DIM],
        max_deviation: 0.0,
        worst_point: [0.0; DIM],
        worst_component: 0,
    };
    for p in points {
        let e = coframe(p);
        let de: Vec<Matrix<f64>> = (0..DIM).map(|m| partial(coframe, p, m, step)).collect();
        for (i, target) in eqs.differentials.iter().enumerate() {
            for m in 0..DIM {
                for n in m + 1..DIM {
                    let numeric = de[m][(i, n)] - de[n][(i, m)];
                    let mut predicted = 0.0;
                    for (jk, c) in target.terms() {
                        let idx = jk.indices();
                        let (j, k) = (idx[0], idx[1]);
                        predicted += c * (e[(j, m)] * e[(k, n)] - e[(j, n)] * e[(k, m)]);
                    }
                    let dev = libm::fabs(numeric - predicted);
                    if dev > report.per_equation[i] {
                        report.per_equation[i] = dev;
                    }
                    if dev > report.max_deviation {
                        report.max_deviation = dev;
                        report.worst_point = *p;
                        report.worst_component = i;
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub samples: usize,
    pub step: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { samples: DEFAULT_SAMPLES, step: DEFAULT_STEP, tol: DEFAULT_TOL, seed: DEFAULT_SEED }
    }
}

/// [`structure_residuals`] on seeded sample points, failing when the
/// largest deviation exceeds `cfg.tol`.
pub fn fd_structure_check(eqs: &StructureEquationSet<f64>, cfg: &FdConfig) -> Result<FdReport> {
    if cfg.samples == 0 || !(cfg.step > 0.0) || !(cfg.tol > 0.0) {
        return Err(Error::Config("samples, step and tol must be positive"));
    }
    let report = structure_residuals(eqs, &sample_points(cfg.samples, cfg.seed), cfg.step)?;
    if report.max_deviation > cfg.tol {
        return Err(Error::ToleranceExceeded {
            check: "structure equations",
            point: report.worst_point,
            component: report.worst_component + 1,
            deviation: report.max_deviation,
            tol: cfg.tol,
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientReport {
    /// `df` along `dx_1..dx_7` for `f = 4 x_7 + b`.
    pub df: [f64; DIM],
    /// `df` along `e^1..e^7`.
    pub df_in_frame: [f64; DIM],
    /// `∇f` in the frame `e_1..e_7` for `g = Σ e^i ⊗ e^i`.
    pub gradient: [f64; DIM],
    /// Largest deviation of `∇f` from `−4 e_7`.
    pub deviation: f64,
}

/// Checks at `x` that `f = 4x_7 + b` has `df = −4e^7` and `∇f = −4e_7`.
pub fn gradient_function_check(x: &Point, b: f64, tol: f64) -> Result<GradientReport> {
    let f = |y: &Point| 4.0 * y[6] + b;
    let step = 1e-3;
    let df: [f64; DIM] = core::array::from_fn(|m| (f(&shifted(x, m, step)) - f(&shifted(x, m, -step))) / (2.0 * step));
    let e_inv = coframe(x).inverse().expect("coframe is invertible");
    let df_in_frame = in_frame(&e_inv, &df);
    let gradient = df_in_frame;
    let mut deviation = 0.0f64;
    let mut worst = 0;
    for (i, v) in gradient.iter().enumerate() {
        let expected = if i == 6 { -4.0 } else { 0.0 };
        let dev = libm::fabs(v - expected);
        if dev > deviation {
            deviation = dev;
            worst = i;
        }
    }
    if deviation > tol {
        return Err(Error::ToleranceExceeded { check: "gradient of 4x7 + b", point: *x, component: worst + 1, deviation, tol });
    }
    Ok(GradientReport { df, df_in_frame, gradient, deviation })
}
