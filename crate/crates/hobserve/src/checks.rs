//! Self-verification suites behind `hobserve verify`: the worked-example
//! suite reproduces every published value of the reference design problem,
//! and the random suite runs the property checks over seeded random systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{QMatrix, RightSpectrum};
use crate::observer::{place_ackermann, place_companion, place_dual, target_from_poles};
use crate::poly::QPoly;
use crate::quat::{Quat, SimilarityClass};
use crate::realization::StateSpace;
use crate::simulate::{simulate_observer, InputSignal, SimConfig};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, residual: f64, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed,
            residual,
            detail: detail.into(),
        }
    }
}

fn q(w: f64, x: f64, y: f64, z: f64) -> Quat {
    Quat::new(w, x, y, z)
}

/// The 2-state benchmark system: A = 1/4 [[-2+j, i], [i, -2-j]], C = [j, k],
/// B = [1, j]^T, D = 0.
pub fn benchmark_system() -> StateSpace {
    let a = QMatrix::from_rows(vec![
        vec![q(-0.5, 0.0, 0.25, 0.0), q(0.0, 0.25, 0.0, 0.0)],
        vec![q(0.0, 0.25, 0.0, 0.0), q(-0.5, 0.0, -0.25, 0.0)],
    ])
    .expect("static dims");
    StateSpace::new(
        a,
        QMatrix::column(vec![Quat::ONE, Quat::J]),
        QMatrix::row_vector(vec![Quat::J, Quat::K]),
        Quat::ZERO,
    )
    .expect("static dims")
}

fn check_matrix(name: &str, got: &QMatrix, want: &QMatrix, tol: f64) -> CheckResult {
    let dev = got.max_abs_diff(want);
    CheckResult::new(name, dev <= tol, dev, format!("max deviation {dev:.3e} (tol {tol:.0e})"))
}

fn check_spectrum(name: &str, got: &RightSpectrum, want: &RightSpectrum, tol: f64) -> CheckResult {
    let dev = got.max_deviation(want);
    CheckResult::new(
        name,
        got.matches(want, tol),
        dev,
        format!("achieved {got}, expected {want}"),
    )
}

/// Reproduce the published values of the benchmark design problem.
pub fn paper_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let sys = benchmark_system();

    let obs = sys.observability_matrix();
    match obs.inverse() {
        Ok(oinv) => {
            let want = QMatrix::from_rows(vec![
                vec![q(-0.5, 0.0, -1.5, 0.0), q(0.0, 0.0, -2.0, 0.0)],
                vec![q(0.0, 0.5, 0.0, 0.5), q(0.0, 0.0, 0.0, 2.0)],
            ])
            .unwrap();
            out.push(check_matrix("observability-inverse", &oinv, &want, 1e-9));
        }
        Err(e) => out.push(CheckResult::new("observability-inverse", false, f64::NAN, e.to_string())),
    }

    match sys.to_observable_companion() {
        Ok(cr) => {
            let want_t = QMatrix::from_rows(vec![
                vec![q(0.0, 0.0, -2.0, 0.0), q(0.5, 0.0, 0.5, 0.0)],
                vec![q(0.0, 0.0, 0.0, 2.0), q(0.0, -0.5, 0.0, -1.5)],
            ])
            .unwrap();
            out.push(check_matrix("similarity-T", &cr.t, &want_t, 1e-9));
            let want_ao = QMatrix::from_rows(vec![
                vec![Quat::ZERO, q(-0.25, 0.0, 0.25, 0.0)],
                vec![Quat::ONE, q(-1.0, 0.0, 0.5, 0.0)],
            ])
            .unwrap();
            out.push(check_matrix("companion-Ao", &cr.a_o, &want_ao, 1e-9));
            out.push(check_matrix(
                "companion-Co",
                &cr.c_o,
                &QMatrix::row_vector(vec![Quat::ZERO, Quat::ONE]),
                1e-9,
            ));
            let want_coeffs = QMatrix::column(vec![q(0.25, 0.0, -0.25, 0.0), q(1.0, 0.0, -0.5, 0.0)]);
            let got_coeffs = QMatrix::column(cr.poly.coeffs[..2].to_vec());
            out.push(check_matrix("companion-coefficients", &got_coeffs, &want_coeffs, 1e-9));
            let residual = cr.annihilation_residual();
            out.push(CheckResult::new(
                "annihilation",
                residual <= 1e-12,
                residual,
                format!("|a(Ao)_l|_F = {residual:.3e}"),
            ));
        }
        Err(e) => out.push(CheckResult::new("companion-form", false, f64::NAN, e.to_string())),
    }

    // Real target design, both routes.
    let target_a = QPoly::from_real(&[2.0, 3.0, 1.0]);
    let want_gain = QMatrix::column(vec![q(1.25, 0.0, -2.25, 0.0), q(0.0, -0.75, 0.0, 0.25)]);
    match place_companion(&sys, &target_a) {
        Ok(d) => {
            out.push(check_matrix("real-target-gain", &d.gain, &want_gain, 1e-9));
            let want = RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 0.0),
                SimilarityClass::new(-2.0, 0.0),
            ]);
            out.push(check_spectrum("real-target-spectrum", &d.achieved, &want, 1e-6));
        }
        Err(e) => out.push(CheckResult::new("real-target-gain", false, f64::NAN, e.to_string())),
    }
    match place_ackermann(&sys, &target_a, false) {
        Ok(d) => out.push(check_matrix("ackermann-gain", &d.gain, &want_gain, 1e-9)),
        Err(e) => out.push(CheckResult::new("ackermann-gain", false, f64::NAN, e.to_string())),
    }

    // Complex-pair target.
    match place_companion(&sys, &QPoly::from_real(&[2.0, 2.0, 1.0])) {
        Ok(d) => {
            let want = RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 1.0),
                SimilarityClass::new(-1.0, 1.0),
            ]);
            out.push(check_spectrum("complex-pair-spectrum", &d.achieved, &want, 1e-6));
        }
        Err(e) => out.push(CheckResult::new("complex-pair-spectrum", false, f64::NAN, e.to_string())),
    }

    // Quaternionic target.
    let quat_poles = [q(-1.0, 0.0, 1.0, 0.0), q(-2.0, 0.0, 0.0, 1.0)];
    match target_from_poles(&quat_poles, 2).and_then(|t| place_companion(&sys, &t)) {
        Ok(d) => {
            let want = RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 1.0),
                SimilarityClass::new(-2.0, 1.0),
            ]);
            out.push(check_spectrum("quaternionic-target-spectrum", &d.achieved, &want, 1e-6));
        }
        Err(e) => out.push(CheckResult::new(
            "quaternionic-target-spectrum",
            false,
            f64::NAN,
            e.to_string(),
        )),
    }

    // Forced Ackermann with the quaternionic target misplaces the poles.
    match target_from_poles(&quat_poles, 2).and_then(|t| place_ackermann(&sys, &t, true)) {
        Ok(d) => {
            let want = RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 1.0),
                SimilarityClass::new(-2.0, 1.0),
            ]);
            let dev = d.achieved.max_deviation(&want);
            out.push(CheckResult::new(
                "forced-ackermann-misplaces",
                dev >= 1e-2,
                dev,
                format!("class deviation {dev:.3e} (must be >= 1e-2)"),
            ));
        }
        Err(e) => out.push(CheckResult::new(
            "forced-ackermann-misplaces",
            false,
            f64::NAN,
            e.to_string(),
        )),
    }

    // Step-input observer simulation converges.
    match place_companion(&sys, &target_a).map(|d| d.gain) {
        Ok(gain) => {
            let cfg = SimConfig::new(
                10.0,
                1e-3,
                InputSignal::Step(q(1.0, -1.0, 2.0, -2.0)),
                vec![q(-1.0, 1.0, -2.0, 3.0), q(1.0, 2.0, -1.0, -2.0)],
                vec![Quat::ZERO, Quat::ZERO],
            )
            .unwrap();
            match simulate_observer(&sys, &gain, &cfg) {
                Ok(trace) => {
                    let ratio = trace.err_norm.last().unwrap() / trace.err_norm[0];
                    out.push(CheckResult::new(
                        "simulation-convergence",
                        ratio <= 1e-3,
                        ratio,
                        format!("err(10)/err(0) = {ratio:.3e}"),
                    ));
                }
                Err(e) => out.push(CheckResult::new("simulation-convergence", false, f64::NAN, e.to_string())),
            }
        }
        Err(e) => out.push(CheckResult::new("simulation-convergence", false, f64::NAN, e.to_string())),
    }

    out
}

fn random_quat(rng: &mut ChaCha8Rng) -> Quat {
    q(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn random_system(rng: &mut ChaCha8Rng, n: usize) -> StateSpace {
    let a = QMatrix::from_rows(
        (0..n).map(|_| (0..n).map(|_| random_quat(rng)).collect()).collect(),
    )
    .expect("n >= 1");
    let b = QMatrix::column((0..n).map(|_| random_quat(rng)).collect());
    let c = QMatrix::row_vector((0..n).map(|_| random_quat(rng)).collect());
    StateSpace::new(a, b, c, Quat::ZERO).expect("dims consistent")
}

pub fn random_observable(rng: &mut ChaCha8Rng, n: usize) -> StateSpace {
    loop {
        let sys = random_system(rng, n);
        if sys.is_observable() {
            return sys;
        }
    }
}

/// Seeded property checks over randomized systems.
pub fn random_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Spectral cross-oracle: companion route vs complex-adjoint route.
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let sys = random_observable(&mut rng, n);
        match (sys.spectrum_via_companion(), sys.a.right_spectrum()) {
            (Ok(via), Ok(direct)) => {
                let dev = via.max_deviation(&direct);
                worst = worst.max(dev);
                if !via.matches(&direct, 1e-5) {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    out.push(CheckResult::new(
        "spectral-cross-oracle",
        failures == 0,
        worst,
        format!("worst class deviation {worst:.3e} over 50 systems"),
    ));

    // Annihilation property on random companion matrices.
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let mut coeffs: Vec<Quat> = (0..n).map(|_| random_quat(&mut rng).scale(2.0)).collect();
        coeffs.push(Quat::ONE);
        let p = QPoly::new(coeffs);
        let ao = p.companion_matrix().expect("monic");
        let residual = p
            .left_substitute_matrix(&ao)
            .expect("square")
            .frobenius_norm();
        worst = worst.max(residual);
    }
    out.push(CheckResult::new(
        "random-annihilation",
        worst <= 1e-8,
        worst,
        format!("worst residual {worst:.3e} over 100 companion matrices"),
    ));

    // Method agreement on random stable real targets.
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..30 {
        let n = rng.gen_range(2..=5);
        let sys = random_observable(&mut rng, n);
        let poles: Vec<Quat> = (0..n).map(|_| Quat::real(-rng.gen_range(0.5..3.0))).collect();
        let target = target_from_poles(&poles, n).expect("real poles fill the degree");
        match (
            place_companion(&sys, &target),
            place_ackermann(&sys, &target, false),
            place_dual(&sys, &target),
        ) {
            (Ok(c), Ok(a), Ok(d)) => {
                let dev = c.gain.max_abs_diff(&a.gain).max(c.gain.max_abs_diff(&d.gain));
                worst = worst.max(dev);
                if dev > 1e-8 {
                    failures += 1;
                }
                if !c.achieved.matches(&target.right_root_classes().unwrap(), 1e-5) {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    out.push(CheckResult::new(
        "method-agreement",
        failures == 0,
        worst,
        format!("worst gain deviation {worst:.3e} over 30 designs"),
    ));

    // Duality identities.
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let sys = random_system(&mut rng, n);
        let dual = sys.dual();
        let dev = dual
            .observability_matrix()
            .max_abs_diff(&sys.controllability_matrix().adjoint());
        worst = worst.max(dev);
        if dev > 1e-12 || sys.is_observable() != dual.is_controllable() {
            failures += 1;
        }
    }
    out.push(CheckResult::new(
        "duality-identities",
        failures == 0,
        worst,
        format!("worst entrywise deviation {worst:.3e} over 50 systems"),
    ));

    out
}
