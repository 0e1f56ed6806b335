//! Fixed-step RK4 integration of the plant/observer pair and of the error
//! system e' = (A - LC) e. Produces time-series traces with the estimation
//! error norm per step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quat::Quat;
use crate::realization::StateSpace;

/// Input signal: zero or a constant quaternion step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputSignal {
    Zero,
    Step(Quat),
}

impl InputSignal {
    fn value(&self) -> Quat {
        match self {
            InputSignal::Zero => Quat::ZERO,
            InputSignal::Step(q) => *q,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimConfig {
    pub t_end: f64,
    pub dt: f64,
    pub u: InputSignal,
    pub x0: Vec<Quat>,
    pub xhat0: Vec<Quat>,
}

impl SimConfig {
    pub fn new(t_end: f64, dt: f64, u: InputSignal, x0: Vec<Quat>, xhat0: Vec<Quat>) -> Result<SimConfig> {
        if !(dt > 0.0) {
            return Err(Error::Dimension("dt must be positive".into()));
        }
        if t_end < dt {
            return Err(Error::Dimension("t_end must be at least dt".into()));
        }
        Ok(SimConfig {
            t_end,
            dt,
            u,
            x0,
            xhat0,
        })
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimTrace {
    pub times: Vec<f64>,
    pub x: Vec<Vec<Quat>>,
    pub xhat: Vec<Vec<Quat>>,
    pub y: Vec<Quat>,
    pub err_norm: Vec<f64>,
}

fn vec_norm(v: &[Quat]) -> f64 {
    v.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Quat], a: f64, x: &[Quat]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += xi.scale(a);
    }
}

/// One RK4 step of z' = f(z) with a time-invariant right-hand side.
fn rk4_step(z: &[Quat], dt: f64, f: &dyn Fn(&[Quat]) -> Vec<Quat>) -> Vec<Quat> {
    let k1 = f(z);
    let mut z2 = z.to_vec();
    axpy(&mut z2, dt / 2.0, &k1);
    let k2 = f(&z2);
    let mut z3 = z.to_vec();
    axpy(&mut z3, dt / 2.0, &k2);
    let k3 = f(&z3);
    let mut z4 = z.to_vec();
    axpy(&mut z4, dt, &k3);
    let k4 = f(&z4);
    let mut out = z.to_vec();
    axpy(&mut out, dt / 6.0, &k1);
    axpy(&mut out, dt / 3.0, &k2);
    axpy(&mut out, dt / 3.0, &k3);
    axpy(&mut out, dt / 6.0, &k4);
    out
}

fn mat_vec(m: &QMatrix, v: &[Quat]) -> Vec<Quat> {
    (0..m.rows())
        .map(|i| {
            let mut acc = Quat::ZERO;
            for j in 0..m.cols() {
                acc += m.get(i, j) * v[j];
            }
            acc
        })
        .collect()
}

/// Integrate the coupled plant/observer dynamics
/// x' = A x + B u, xhat' = A xhat + B u + L (y - C xhat), y = C x + D u.
pub fn simulate_observer(sys: &StateSpace, gain: &QMatrix, cfg: &SimConfig) -> Result<SimTrace> {
    let n = sys.dim();
    if cfg.x0.len() != n || cfg.xhat0.len() != n {
        return Err(Error::Dimension("initial states must have length n".into()));
    }
    if gain.rows() != n || gain.cols() != 1 {
        return Err(Error::Dimension(format!("gain must be {n}x1")));
    }
    let u = cfg.u.value();
    let bu: Vec<Quat> = (0..n).map(|i| sys.b.get(i, 0) * u).collect();
    let du = sys.d * u;
    let output = |x: &[Quat]| -> Quat {
        let mut y = du;
        for j in 0..n {
            y += sys.c.get(0, j) * x[j];
        }
        y
    };
    let deriv = |z: &[Quat]| -> Vec<Quat> {
        let (x, xhat) = z.split_at(n);
        let mut dx = mat_vec(&sys.a, x);
        axpy(&mut dx, 1.0, &bu);
        let y = output(x);
        let yhat = output(xhat);
        let innovation = y - yhat;
        let mut dxhat = mat_vec(&sys.a, xhat);
        axpy(&mut dxhat, 1.0, &bu);
        for i in 0..n {
            dxhat[i] += gain.get(i, 0) * innovation;
        }
        let mut out = dx;
        out.extend(dxhat);
        out
    };

    let steps = cfg.steps();
    let mut z: Vec<Quat> = cfg.x0.iter().chain(cfg.xhat0.iter()).copied().collect();
    let mut trace = SimTrace {
        times: Vec::with_capacity(steps + 1),
        x: Vec::with_capacity(steps + 1),
        xhat: Vec::with_capacity(steps + 1),
        y: Vec::with_capacity(steps + 1),
        err_norm: Vec::with_capacity(steps + 1),
    };
    for step in 0..=steps {
        let (x, xhat) = z.split_at(n);
        if !x.iter().chain(xhat).all(|q| q.is_finite()) {
            return Err(Error::Diverged(step));
        }
        let err: Vec<Quat> = x.iter().zip(xhat).map(|(a, b)| *a - *b).collect();
        trace.times.push(step as f64 * cfg.dt);
        trace.x.push(x.to_vec());
        trace.xhat.push(xhat.to_vec());
        trace.y.push(output(x));
        trace.err_norm.push(vec_norm(&err));
        if step < steps {
            z = rk4_step(&z, cfg.dt, &deriv);
        }
    }
    Ok(trace)
}

/// Integrate the error system e' = A_obs e alone. The trace stores e in the
/// `x` field; `xhat` and `y` are zero.
pub fn simulate_error(a_obs: &QMatrix, e0: &[Quat], cfg: &SimConfig) -> Result<SimTrace> {
    if !a_obs.is_square() {
        return Err(Error::Dimension("A_obs must be square".into()));
    }
    let n = a_obs.rows();
    if e0.len() != n {
        return Err(Error::Dimension("e0 must have length n".into()));
    }
    let deriv = |z: &[Quat]| mat_vec(a_obs, z);
    let steps = cfg.steps();
    let mut e = e0.to_vec();
    let mut trace = SimTrace {
        times: Vec::with_capacity(steps + 1),
        x: Vec::with_capacity(steps + 1),
        xhat: Vec::with_capacity(steps + 1),
        y: Vec::with_capacity(steps + 1),
        err_norm: Vec::with_capacity(steps + 1),
    };
    for step in 0..=steps {
        if !e.iter().all(|q| q.is_finite()) {
            return Err(Error::Diverged(step));
        }
        trace.times.push(step as f64 * cfg.dt);
        trace.x.push(e.clone());
        trace.xhat.push(vec![Quat::ZERO; n]);
        trace.y.push(Quat::ZERO);
        trace.err_norm.push(vec_norm(&e));
        if step < steps {
            e = rk4_step(&e, cfg.dt, &deriv);
        }
    }
    Ok(trace)
}
