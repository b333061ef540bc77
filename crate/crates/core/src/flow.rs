//! Fixed-step integration of the Laplacian flow `∂φ/∂t = Δ_φ φ` on
//! left-invariant 3-forms, in `f64`.
//!
//! The state is the full vector of 35 coefficients of `φ` in the
//! lexicographic basis of `Λ³`. Closedness is monitored, never enforced.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{KForm, MultiIndex, Vector};
use crate::g2::{coderivative, hodge_laplacian, G2Structure};
use crate::liealg::LieAlgebra;
use crate::soliton::lie_derivative;

pub const STATE_DIM: usize = 35;
pub const DEFAULT_BLOWUP_BOUND: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Euler,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rk4 => "rk4",
            Self::Euler => "euler",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowConfig {
    pub t_end: f64,
    pub dt: f64,
    pub method: Method,
    /// Largest admissible `|coefficient|`.
    pub blowup_bound: f64,
    /// Fixed `(λ, X)` whose soliton residual is recorded at every sample.
    pub soliton: Option<(f64, Vector<f64>)>,
}

impl FlowConfig {
    pub fn new(t_end: f64, dt: f64, method: Method) -> Self {
        Self { t_end, dt, method, blowup_bound: DEFAULT_BLOWUP_BOUND, soliton: None }
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config("t_end must be positive"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Config("dt must be positive"));
        }
        if !(self.blowup_bound > 0.0) {
            return Err(Error::Config("blowup bound must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowSample {
    pub t: f64,
    pub coefficients: Vec<f64>,
    /// `|τ|²`.
    pub tau_norm_sq: f64,
    pub det_g: f64,
    /// `|dφ|` in the metric of `φ`.
    pub d_phi_norm: f64,
    /// `|Δφ − λφ − L_X φ|` for the configured `(λ, X)`.
    pub soliton_residual: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Termination {
    Completed,
    PositivityLoss { t: f64 },
    NumericalBlowup { t: f64 },
    NonFinite { t: f64 },
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Completed => "Completed",
            Self::PositivityLoss { .. } => "PositivityLoss",
            Self::NumericalBlowup { .. } => "NumericalBlowup",
            Self::NonFinite { .. } => "NonFinite",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrace {
    pub method: Method,
    pub dt: f64,
    pub samples: Vec<FlowSample>,
    pub termination: Termination,
}

impl FlowTrace {
    pub fn last(&self) -> &FlowSample {
        self.samples.last().expect("a trace holds at least the initial sample")
    }

    pub fn final_phi(&self) -> KForm<f64> {
        KForm::from_dense(3, &self.last().coefficients)
    }
}

/// Monomial labels of the state vector, e.g. `e123`.
pub fn coefficient_labels() -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(3)
}

/// `Δ_φ φ` with the metric of the current `φ`.
pub fn flow_rhs(alg: &LieAlgebra<f64>, phi: &KForm<f64>) -> Result<KForm<f64>> {
    let s = G2Structure::new(phi.clone())?;
    hodge_laplacian(alg, s.metric(), s.phi())
}

fn rhs_dense(alg: &LieAlgebra<f64>, y: &[f64]) -> Result<Vec<f64>> {
    Ok(flow_rhs(alg, &KForm::from_dense(3, y))?.to_dense())
}

fn axpy(y: &[f64], a: f64, x: &[f64]) -> Vec<f64> {
    y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
}

/// One step of the chosen method.
pub fn step(alg: &LieAlgebra<f64>, y: &[f64], h: f64, method: Method) -> Result<Vec<f64>> {
    let k1 = rhs_dense(alg, y)?;
    match method {
        Method::Euler => Ok(axpy(y, h, &k1)),
        Method::Rk4 => {
            let k2 = rhs_dense(alg, &axpy(y, h / 2.0, &k1))?;
            let k3 = rhs_dense(alg, &axpy(y, h / 2.0, &k2))?;
            let k4 = rhs_dense(alg, &axpy(y, h, &k3))?;
            Ok(y.iter()
                .enumerate()
                .map(|(i, yi)| yi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect())
        }
    }
}

fn sample(alg: &LieAlgebra<f64>, t: f64, y: Vec<f64>, cfg: &FlowConfig) -> Result<FlowSample> {
    let s = G2Structure::new(KForm::from_dense(3, &y))?;
    let g = s.metric();
    let tau = coderivative(alg, g, s.phi())?;
    let d_phi = alg.ce_differential(s.phi())?;
    let soliton_residual = match &cfg.soliton {
        Some((lambda, x)) => {
            let r = hodge_laplacian(alg, g, s.phi())? - s.phi().scale(lambda) - lie_derivative(alg, x, s.phi())?;
            Some(libm::sqrt(g.norm_sq(&r)))
        }
        None => None,
    };
    Ok(FlowSample {
        t,
        coefficients: y,
        tau_norm_sq: g.norm_sq(&tau),
        det_g: *g.det(),
        d_phi_norm: libm::sqrt(g.norm_sq(&d_phi)),
        soliton_residual,
    })
}

/// Integrates from `phi0` to `cfg.t_end`, sampling monitors at every step.
/// The last step is shortened to land on `t_end`. Positivity loss, blowup
/// and non-finite values end the trace early with a marker.
pub fn integrate(alg: &LieAlgebra<f64>, phi0: &KForm<f64>, cfg: &FlowConfig) -> Result<FlowTrace> {
    cfg.validate()?;
    if phi0.degree() != 3 {
        return Err(Error::Degree { op: "integrate", degree: phi0.degree() });
    }
    let mut y = phi0.to_dense();
    let mut samples = alloc::vec![sample(alg, 0.0, y.clone(), cfg)?];
    let steps = libm::ceil(cfg.t_end / cfg.dt - 1e-9) as usize;
    let mut termination = Termination::Completed;
    let mut t = 0.0;
    for k in 1..=steps {
        let t_next = if k == steps { cfg.t_end } else { k as f64 * cfg.dt };
        let next = match step(alg, &y, t_next - t, cfg.method) {
            Ok(v) => v,
            Err(Error::NotPositive) => {
                termination = Termination::PositivityLoss { t: t_next };
                break;
            }
            Err(e) => return Err(e),
        };
        if next.iter().any(|c| !c.is_finite()) {
            termination = Termination::NonFinite { t: t_next };
            break;
        }
        if next.iter().any(|c| libm::fabs(*c) > cfg.blowup_bound) {
            termination = Termination::NumericalBlowup { t: t_next };
            break;
        }
        match sample(alg, t_next, next.clone(), cfg) {
            Ok(s) => samples.push(s),
            Err(Error::NotPositive) => {
                termination = Termination::PositivityLoss { t: t_next };
                break;
            }
            Err(e) => return Err(e),
        }
        y = next;
        t = t_next;
    }
    Ok(FlowTrace { method: cfg.method, dt: cfg.dt, samples, termination })
}

/// Final states at steps `dt`, `dt/2`, `dt/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepHalving {
    pub method: Method,
    pub dt: f64,
    pub t_end: f64,
    /// Max-norm distances `|φ_dt − φ_{dt/2}|` and `|φ_{dt/2} − φ_{dt/4}|`.
    pub errors: [f64; 2],
    /// `errors[0] / errors[1]`, close to `2^order`.
    pub ratio: f64,
}

pub fn step_halving(alg: &LieAlgebra<f64>, phi0: &KForm<f64>, method: Method, t_end: f64, dt: f64) -> Result<StepHalving> {
    let mut finals = Vec::with_capacity(3);
    for h in [dt, dt / 2.0, dt / 4.0] {
        let trace = integrate(alg, phi0, &FlowConfig::new(t_end, h, method))?;
        if trace.termination != Termination::Completed {
            return Err(Error::Config("flow stopped before t_end"));
        }
        finals.push(trace.last().coefficients.clone());
    }
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| libm::fabs(x - y)).fold(0.0, f64::max);
    let errors = [dist(&finals[0], &finals[1]), dist(&finals[1], &finals[2])];
    Ok(StepHalving { method, dt, t_end, errors, ratio: errors[0] / errors[1] })
}
