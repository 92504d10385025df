//! The trajectory integrator and strip extraction.

use super::{
    min_pairwise_or_origin, QuadError, QuadraticDifferential, RayLimit, RayRecord,
    Tolerances, TrajectoryReport,
};
use num_complex::Complex64;
use std::f64::consts::PI;

const TAU: f64 = 2.0 * PI;

/// Square root of the differential with branch continuity: among the two
/// values the one closer in direction to `hint` is returned.
pub(crate) fn sqrt_phi(phi: &QuadraticDifferential, z: Complex64, hint: Complex64) -> Complex64 {
    let m = (phi.n_gon - 2) as f64;
    let mut log_sum = Complex64::new(0.0, phi.phase * PI / 2.0);
    for a in &phi.zeros {
        log_sum += (z - a).ln() * (m / 2.0);
    }
    log_sum -= z.ln() * (m * phi.p as f64 / 2.0 + 1.0);
    let principal = log_sum.exp();
    // Direction comparison; magnitudes are irrelevant for the choice.
    let dot = principal.re * hint.re + principal.im * hint.im;
    if dot >= 0.0 {
        principal
    } else {
        -principal
    }
}

/// Coefficient and local ray directions at the zero `a_m`: near the zero
/// `phi ~ C (z - a_m)^{N-2} dz^2`, and the N horizontal rays leave along
/// `alpha_k = (2 k pi - 2 arg sqrt(C)) / N`.
pub(crate) fn zero_local(phi: &QuadraticDifferential, m: usize) -> (Complex64, Vec<f64>) {
    let a = phi.zeros[m];
    let deg = (phi.n_gon - 2) as f64;
    let mut log_c = Complex64::new(0.0, phi.phase * PI);
    for (k, b) in phi.zeros.iter().enumerate() {
        if k != m {
            log_c += (a - b).ln() * deg;
        }
    }
    log_c -= a.ln() * (deg * phi.p as f64 + 2.0);
    let c = log_c.exp();
    let arg_sqrt_c = log_c.im / 2.0;
    let n = phi.n_gon as f64;
    let rays = (0..phi.n_gon)
        .map(|k| (2.0 * PI * k as f64 - 2.0 * arg_sqrt_c) / n)
        .map(normalize_angle)
        .collect();
    (c, rays)
}

fn normalize_angle(a: f64) -> f64 {
    let mut a = a % TAU;
    if a < 0.0 {
        a += TAU;
    }
    a
}

/// Base distinguished direction at the pole 0 (in z) or at infinity (in
/// u = 1/z).  The remaining d directions sit at `base - 2 pi k / d` for
/// the boundary label k; the base varies continuously with the phase so
/// labels and windings do not jump along a wall-crossing sweep.
pub(crate) fn pole_base(phi: &QuadraticDifferential, at_zero: bool) -> f64 {
    let deg = (phi.n_gon - 2) as f64;
    let (order, arg_sqrt_a) = if at_zero {
        let order = (phi.n_gon - 2) * phi.p + 2;
        let mut log_a = Complex64::new(0.0, phi.phase * PI);
        for b in &phi.zeros {
            log_a += (-b).ln() * deg;
        }
        (order, log_a.im / 2.0)
    } else {
        let order = (phi.n_gon - 2) * (phi.rank - phi.p) + 2;
        (order, phi.phase * PI / 2.0)
    };
    let mu = order as f64 / 2.0 - 1.0;
    arg_sqrt_a / mu
}

/// Boundary label of a pole-bound trajectory from its asymptotic angle
/// (z-plane angle at 0, u-plane angle at infinity).  Labels run opposite
/// to the angular order, matching the orientation of the strip model.
pub(crate) fn direction_label(base: f64, size: usize, angle: f64) -> usize {
    let steps = (base - angle) * size as f64 / TAU;
    (steps.round() as i64).rem_euclid(size as i64) as usize
}

/// One traced curve with continuous argument and w-accumulation.
#[derive(Debug, Clone)]
pub(crate) struct Trace {
    pub points: Vec<Complex64>,
    /// Continuous arg(z) along the curve.
    pub args: Vec<f64>,
    /// Accumulated integral of sqrt(phi) dz along the curve.
    pub w: Vec<Complex64>,
    /// Branch of sqrt(phi) at each point.
    pub branch: Vec<Complex64>,
    pub end: TraceEnd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum TraceEnd {
    Pole0 { angle: f64 },
    PoleInf { angle: f64 },
    NearZero { zero: usize },
    Budget,
}

pub(crate) struct Scales {
    pub min_sep: f64,
    pub r0: f64,
    pub r_inf: f64,
    pub r_fine: f64,
    pub max_step: f64,
}

pub(crate) fn scales(phi: &QuadraticDifferential, tol: &Tolerances) -> Scales {
    let min_sep = min_pairwise_or_origin(&phi.zeros);
    let max_abs = phi.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Scales {
        min_sep,
        r0: tol.r0_factor * min_sep,
        r_inf: tol.rinf_factor * max_abs,
        r_fine: tol.fine_radius_factor * max_abs,
        max_step: tol.sample_spacing_factor * min_sep,
    }
}

/// Integrates the unit-speed flow `dz/ds = dir |sqrt phi| / sqrt phi`
/// (dir = e^{i pi theta}; theta = 0 horizontal, 1/2 vertical) from a
/// point near `origin_zero`, stopping at a pole, near a zero, or on
/// budget exhaustion.
#[allow(clippy::too_many_arguments)]
pub(crate) fn integrate(
    phi: &QuadraticDifferential,
    start: Complex64,
    start_hint: Complex64,
    dir: Complex64,
    origin_zero: Option<usize>,
    hit_radius: f64,
    tol: &Tolerances,
    sc: &Scales,
) -> Trace {
    let mut z = start;
    let mut hint = sqrt_phi(phi, z, start_hint);
    let mut arg = z.arg();
    // Local-model w-increment from the origin zero to the launch point.
    let mut w = match origin_zero {
        Some(m) => hint * (z - phi.zeros[m]) * 2.0 / phi.n_gon as f64,
        None => Complex64::new(0.0, 0.0),
    };
    let mut points = vec![z];
    let mut args = vec![arg];
    let mut ws = vec![w];
    let mut branches = vec![hint];
    // Re-arm the origin zero only after leaving its neighborhood.
    let rearm_radius = 8.0 * hit_radius.max(sc.min_sep * tol.launch_factor);
    let mut origin_armed = false;

    let mut h = sc.max_step.min(0.05 * sc.min_sep);
    let end = 'outer: loop {
        if points.len() > tol.max_steps {
            break TraceEnd::Budget;
        }
        // Distance guards.
        if z.norm() < sc.r0 {
            break TraceEnd::Pole0 { angle: arg };
        }
        if z.norm() > sc.r_inf {
            break TraceEnd::PoleInf { angle: arg };
        }
        for (k, a) in phi.zeros.iter().enumerate() {
            let d = (z - a).norm();
            if Some(k) == origin_zero && !origin_armed {
                continue;
            }
            if d < hit_radius {
                break 'outer TraceEnd::NearZero { zero: k };
            }
        }
        if let Some(k) = origin_zero {
            if !origin_armed && (z - phi.zeros[k]).norm() > rearm_radius {
                origin_armed = true;
            }
        }

        // Step size: a fraction of the distance to the nearest critical
        // point (so branch tracking stays sound), within the sampling cap
        // near the configuration; far away the cap grows with |z|.
        let crit_dist = phi
            .zeros
            .iter()
            .map(|a| (z - a).norm())
            .chain([z.norm()])
            .fold(f64::INFINITY, f64::min);
        let far = if z.norm() > sc.r_fine { 0.05 * z.norm() } else { 0.0 };
        let cap = (0.2 * crit_dist).min(sc.max_step.max(far));
        h = h.min(cap).max(1e-14 * sc.min_sep);

        // One controlled step (z and w both under the error estimate).
        let step = rk_step(phi, z, hint, dir, h);
        let scale = tol.rel_tol * (1.0 + z.norm());
        if step.err > scale && h > 1e-13 * sc.min_sep {
            h *= 0.5;
            continue;
        }
        w += step.dw;
        arg += (step.z / z).arg();
        z = step.z;
        hint = step.sp;
        points.push(z);
        args.push(arg);
        ws.push(w);
        branches.push(hint);
        if step.err < 0.25 * scale {
            h *= 1.6;
        }
    };

    Trace { points, args, w: ws, branch: branches, end }
}

pub(crate) struct StepResult {
    pub z: Complex64,
    pub sp: Complex64,
    pub dw: Complex64,
    pub err: f64,
}

/// RK4 on the unit-speed flow `z' = dir |sqrt phi| / sqrt phi`, carrying
/// `w' = dir |sqrt phi|` with the same stage weights, and a half-step
/// error estimate covering both components.
pub(crate) fn rk_step(
    phi: &QuadraticDifferential,
    z: Complex64,
    sp: Complex64,
    dir: Complex64,
    h: f64,
) -> StepResult {
    let plain = rk4_once(phi, z, sp, dir, h);
    let first = rk4_once(phi, z, sp, dir, 0.5 * h);
    let sp_mid = sqrt_phi(phi, first.0, sp);
    let second = rk4_once(phi, first.0, sp_mid, dir, 0.5 * h);
    let z_new = second.0;
    let dw = first.1 + second.1;
    let err = (plain.0 - z_new).norm() + (plain.1 - dw).norm();
    StepResult { z: z_new, sp: sqrt_phi(phi, z_new, sp_mid), dw, err }
}

fn rk4_once(
    phi: &QuadraticDifferential,
    z: Complex64,
    sp: Complex64,
    dir: Complex64,
    h: f64,
) -> (Complex64, Complex64) {
    let f = |zz: Complex64, hh: Complex64| -> (Complex64, f64, Complex64) {
        let s = sqrt_phi(phi, zz, hh);
        (dir * s.norm() / s, s.norm(), s)
    };
    let (k1, g1, s1) = f(z, sp);
    let (k2, g2, _) = f(z + 0.5 * h * k1, s1);
    let (k3, g3, _) = f(z + 0.5 * h * k2, s1);
    let (k4, g4, _) = f(z + h * k3, s1);
    let dz = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    let dw = dir * (h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    (z + dz, dw)
}

/// Launch data for the horizontal ray `k` or the vertical mid-sector ray
/// of sector `k` at zero `m`.
pub(crate) fn launch(
    phi: &QuadraticDifferential,
    m: usize,
    angle: f64,
    theta_half: bool,
    tol: &Tolerances,
    sc: &Scales,
) -> (Complex64, Complex64, Complex64) {
    let a = phi.zeros[m];
    let eps = tol.launch_factor * sc.min_sep;
    let start = a + Complex64::from_polar(eps, angle);
    // Pick the branch making dz/ds point outward along `angle`.
    let dir = if theta_half {
        Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    // dz/ds = dir |s|/s = e^{i angle}  =>  arg s = arg dir - angle.
    let hint = Complex64::from_polar(1.0, dir.arg() - angle);
    (start, hint, dir)
}

impl QuadraticDifferential {
    /// Traces every separatrix, classifies limits, detects saddles with
    /// certified re-integration, samples the strips and computes their
    /// periods and diagonals.
    pub fn trace(&self, tol: &Tolerances) -> Result<TrajectoryReport, QuadError> {
        let sc = scales(self, tol);
        let ext_base = pole_base(self, true);
        let int_base = pole_base(self, false);
        let d_p = (self.n_gon - 2) * self.p;
        let d_q = (self.n_gon - 2) * (self.rank - self.p);

        let mut rays = Vec::new();
        let mut saddles = Vec::new();
        let mut separatrices: Vec<Vec<Trace>> = Vec::new();
        let mut ray_dirs: Vec<Vec<f64>> = Vec::new();
        let mut curves: Vec<Vec<Complex64>> = Vec::new();
        let mut undetermined = None;

        for m in 0..self.rank {
            let (_, dirs) = zero_local(self, m);
            let mut per_zero = Vec::new();
            for (k, &alpha) in dirs.iter().enumerate() {
                let (start, hint, dir) = launch(self, m, alpha, false, tol, &sc);
                let mut tr = integrate(
                    self,
                    start,
                    hint,
                    dir,
                    Some(m),
                    tol.hit_factor * sc.min_sep,
                    tol,
                    &sc,
                );
                if let TraceEnd::NearZero { zero } = tr.end {
                    // Certify: rerun at tightened tolerance and radius.
                    let mut tighter = *tol;
                    tighter.rel_tol *= tol.certify_tol_factor;
                    let tr2 = integrate(
                        self,
                        start,
                        hint,
                        dir,
                        Some(m),
                        tol.certify_hit_factor * sc.min_sep,
                        &tighter,
                        &sc,
                    );
                    match tr2.end {
                        TraceEnd::NearZero { zero: z2 } => {
                            saddles.push((m.min(z2), m.max(z2)));
                            rays.push(RayRecord { zero: m, ray: k, limit: RayLimit::Zero(zero) });
                            curves.push(tr2.points.clone());
                            per_zero.push(tr2);
                            continue;
                        }
                        _ => tr = tr2,
                    }
                }
                let limit = match tr.end {
                    TraceEnd::Pole0 { angle } => {
                        RayLimit::PoleZeroDirection(direction_label(ext_base, d_p, angle))
                    }
                    TraceEnd::PoleInf { angle } => {
                        RayLimit::PoleInfinityDirection(direction_label(int_base, d_q, -angle))
                    }
                    TraceEnd::Budget => {
                        undetermined = Some((m, k));
                        RayLimit::Undetermined
                    }
                    TraceEnd::NearZero { zero } => RayLimit::Zero(zero),
                };
                rays.push(RayRecord { zero: m, ray: k, limit });
                curves.push(tr.points.clone());
                per_zero.push(tr);
            }
            separatrices.push(per_zero);
            ray_dirs.push(dirs);
        }

        saddles.sort();
        saddles.dedup();
        let saddle_free = saddles.is_empty() && undetermined.is_none();
        if let Some((zero, ray)) = undetermined {
            return Err(QuadError::UndeterminedTrajectory { zero, ray });
        }

        let mut strips = Vec::new();
        let mut hp0 = 0;
        let mut hp_inf = 0;
        if saddle_free {
            let (s, h0, hi, mut leaf_curves) =
                self.extract_strips(tol, &sc, &separatrices, &ray_dirs, ext_base, int_base)?;
            strips = s;
            hp0 = h0;
            hp_inf = hi;
            curves.append(&mut leaf_curves);
        }

        Ok(TrajectoryReport {
            rays,
            saddles,
            saddle_free,
            strips,
            halfplanes_at_zero: hp0,
            halfplanes_at_infinity: hp_inf,
            curves,
        })
    }
}
