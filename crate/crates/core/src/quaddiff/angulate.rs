//! Strip extraction: sector sampling, snapping traced leaves onto the
//! combinatorial annulus model, and period integration.
//!
//! The model coordinate is `x = -arg(z)/2pi` up to a per-boundary
//! constant aligning direction 0 with label 0; in this frame exterior
//! labels sit at `k/d_p` and interior labels at `-l/d_q`, and a traced
//! leaf's endpoints snap onto exact lattice positions.  The snap residue
//! doubles as a certificate that the classification is unambiguous.

use super::trace::{integrate, launch, rk_step, sqrt_phi, zero_local, Scales, Trace, TraceEnd};
use super::{QuadError, QuadraticDifferential, Strip, Tolerances, TrajectoryReport};
use crate::annulus::{Boundary, Diagonal, NAngulation};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const TAU: f64 = 2.0 * PI;
const SNAP_TOL: f64 = 0.15;

/// One end of a sampled leaf, snapped to the lattice.
#[derive(Debug, Clone, Copy)]
struct SnappedEnd {
    boundary: Boundary,
    /// Lift position in integer boundary steps (label-lattice units).
    steps: i64,
}

fn snap_end(
    phi: &QuadraticDifferential,
    end: &TraceEnd,
    arg_cont: f64,
    ext_base: f64,
    int_base: f64,
) -> Result<SnappedEnd, QuadError> {
    let (boundary, size, x_raw) = match end {
        TraceEnd::Pole0 { .. } => {
            let dp = (phi.n_gon - 2) * phi.p;
            (Boundary::Exterior, dp as f64, (ext_base - arg_cont) / TAU)
        }
        TraceEnd::PoleInf { .. } => {
            let dq = (phi.n_gon - 2) * (phi.rank - phi.p);
            (Boundary::Interior, dq as f64, -(arg_cont + int_base) / TAU)
        }
        other => {
            return Err(QuadError::StripStructure(format!(
                "leaf ended at {other:?}, not a pole"
            )))
        }
    };
    let scaled = x_raw * size;
    let steps = scaled.round();
    if (scaled - steps).abs() > SNAP_TOL {
        return Err(QuadError::StripStructure(format!(
            "endpoint does not snap to the label lattice (residue {:.3})",
            scaled - steps
        )));
    }
    Ok(SnappedEnd { boundary, steps: steps as i64 })
}

/// Builds the diagonal of a leaf from its two snapped ends.
fn diagonal_of_ends(
    phi: &QuadraticDifferential,
    a: SnappedEnd,
    b: SnappedEnd,
) -> Result<Diagonal, QuadError> {
    let annulus = phi.annulus();
    let to_lift = |e: &SnappedEnd| -> (Boundary, i64) {
        (e.boundary, e.steps * annulus.step(e.boundary))
    };
    Ok(Diagonal::from_lifts(&annulus, to_lift(&a), to_lift(&b))?)
}

/// A sampled generic leaf: both half-traces share the base point.
struct LeafSample {
    zero: usize,
    sector: usize,
    ends: (SnappedEnd, SnappedEnd),
    diagonal: Option<Diagonal>,
    curve: Vec<Complex64>,
}

impl QuadraticDifferential {
    #[allow(clippy::type_complexity)]
    pub(crate) fn extract_strips(
        &self,
        tol: &Tolerances,
        sc: &Scales,
        separatrices: &[Vec<Trace>],
        ray_dirs: &[Vec<f64>],
        ext_base: f64,
        int_base: f64,
    ) -> Result<(Vec<Strip>, usize, usize, Vec<Vec<Complex64>>), QuadError> {
        let mut samples: Vec<LeafSample> = Vec::new();

        for m in 0..self.rank {
            let dirs = &ray_dirs[m];
            for k in 0..self.n_gon {
                let mid = dirs[k] + PI / self.n_gon as f64;
                let (start, hint, dir) = launch(self, m, mid, false, tol, sc);
                let fwd = integrate(
                    self,
                    start,
                    hint,
                    dir,
                    Some(m),
                    tol.certify_hit_factor * sc.min_sep,
                    tol,
                    sc,
                );
                let bwd = integrate(
                    self,
                    start,
                    -hint,
                    dir,
                    Some(m),
                    tol.certify_hit_factor * sc.min_sep,
                    tol,
                    sc,
                );
                let snap = |t: &Trace| {
                    snap_end(self, &t.end, *t.args.last().expect("nonempty"), ext_base, int_base)
                };
                let (ea, eb) = (snap(&fwd)?, snap(&bwd)?);
                let mut curve: Vec<Complex64> =
                    bwd.points.iter().rev().copied().collect();
                curve.extend(fwd.points.iter().copied());
                let diagonal = if ea.boundary == eb.boundary && (ea.steps - eb.steps).abs() == 1 {
                    None // a halfplane leaf
                } else {
                    Some(diagonal_of_ends(self, eb, ea)?)
                };
                samples.push(LeafSample { zero: m, sector: k, ends: (eb, ea), diagonal, curve });
            }
        }

        let mut hp0 = 0usize;
        let mut hp_inf = 0usize;
        let mut by_diag: BTreeMap<Diagonal, Vec<usize>> = BTreeMap::new();
        for (idx, s) in samples.iter().enumerate() {
            match &s.diagonal {
                None => match s.ends.0.boundary {
                    Boundary::Exterior => hp0 += 1,
                    Boundary::Interior => hp_inf += 1,
                },
                Some(d) => by_diag.entry(*d).or_default().push(idx),
            }
        }

        if by_diag.len() != self.rank {
            return Err(QuadError::StripStructure(format!(
                "found {} strips, expected {}",
                by_diag.len(),
                self.rank
            )));
        }
        for (d, members) in &by_diag {
            if members.len() != 2 {
                return Err(QuadError::StripStructure(format!(
                    "strip of {d:?} sampled {} times, expected 2",
                    members.len()
                )));
            }
        }

        let mut strips = Vec::new();
        let mut leaf_curves = Vec::new();
        let grid = PointGrid::build(separatrices, sc.max_step);
        for members in by_diag.values() {
            let s0 = &samples[members[0]];
            let s1 = &samples[members[1]];
            let period = self.strip_period(s0, tol, sc, separatrices, &grid)?;
            strips.push(Strip {
                zeros: (s0.zero.min(s1.zero), s0.zero.max(s1.zero)),
                period,
                diagonal: s0.diagonal.expect("strip sample has a diagonal"),
            });
            leaf_curves.push(s0.curve.clone());
        }
        Ok((strips, hp0, hp_inf, leaf_curves))
    }

    /// Period of the standard saddle class of the strip sampled by `s`:
    /// integrate the vertical separatrix from the sample's zero through
    /// its sector until it meets the opposite boundary, then walk along
    /// that boundary separatrix back to its zero.
    fn strip_period(
        &self,
        s: &LeafSample,
        tol: &Tolerances,
        sc: &Scales,
        separatrices: &[Vec<Trace>],
        grid: &PointGrid,
    ) -> Result<Complex64, QuadError> {
        let (_, dirs) = zero_local(self, s.zero);
        let mid = dirs[s.sector] + PI / self.n_gon as f64;
        let (start, hint, dir) = launch(self, s.zero, mid, true, tol, sc);

        let prox = sc.max_step;
        let arm_radius = 4.0 * prox;
        let a0 = self.zeros[s.zero];

        let mut z = start;
        let mut sp = sqrt_phi(self, z, hint);
        // Launch correction: the local model gives the exact w-increment
        // from the zero to the launch point.
        let mut w = sp * (z - a0) * 2.0 / self.n_gon as f64;
        let mut armed = false;
        let mut steps = 0usize;
        let mut h = 0.1 * prox;
        loop {
            steps += 1;
            if steps > tol.max_steps {
                return Err(QuadError::StripStructure("period leg budget exhausted".into()));
            }
            if !armed && (z - a0).norm() > arm_radius {
                armed = true;
            }
            // A vertical leg stays inside its strip at bounded |w|, hence
            // bounded |z|; leaving the finely sampled region means the
            // boundary crossing was missed.
            if z.norm() < sc.r0 || z.norm() > sc.r_fine {
                return Err(QuadError::StripStructure(
                    "period leg left the working region".into(),
                ));
            }
            // Direct hit on a zero ends the leg (with the tail piece from
            // the local model at that zero).
            for (k, a) in self.zeros.iter().enumerate() {
                if (z - a).norm() < tol.hit_factor * sc.min_sep && (armed || k != s.zero) {
                    let tail = -sp * (z - a) * 2.0 / self.n_gon as f64;
                    return Ok(normalize_period(w + tail));
                }
            }
            if armed {
                if let Some((zb, idx_tr, idx_pt)) = grid.nearest(z, prox) {
                    let tr = &separatrices[zb][idx_tr];
                    // Project onto the polyline near the hit point.
                    let q_star = project_to_polyline(&tr.points, idx_pt, z);
                    // Link integral z -> q* with the leg's branch.
                    let link = segment_integral(self, z, q_star, sp);
                    let sp_at_q = sqrt_phi(self, q_star, sp);
                    // Walk correction along the separatrix p_idx -> q*.
                    let p0 = tr.points[idx_pt];
                    let sep_walk =
                        segment_integral(self, p0, q_star, tr.branch[idx_pt]);
                    let w_sep = tr.w[idx_pt] + sep_walk;
                    let q_branch = sqrt_phi(self, q_star, tr.branch[idx_pt]);
                    let dot = sp_at_q.re * q_branch.re + sp_at_q.im * q_branch.im;
                    let sign = if dot >= 0.0 { 1.0 } else { -1.0 };
                    let total = w + link - w_sep * sign;
                    return Ok(normalize_period(total));
                }
            }
            // One controlled step of the vertical flow, capped so the
            // landing detection cannot overshoot the boundary polyline.
            let crit = self
                .zeros
                .iter()
                .map(|a| (z - a).norm())
                .chain([z.norm()])
                .fold(f64::INFINITY, f64::min);
            let cap = (0.2 * crit).min(0.5 * prox);
            h = h.min(cap).max(1e-13 * sc.min_sep);
            let step = rk_step(self, z, sp, dir, h);
            let scale = tol.rel_tol * (1.0 + z.norm());
            if step.err > scale && h > 1e-12 * sc.min_sep {
                h *= 0.5;
                continue;
            }
            w += step.dw;
            z = step.z;
            sp = step.sp;
            if step.err < 0.25 * scale {
                h *= 1.6;
            }
        }
    }
}

fn normalize_period(w: Complex64) -> Complex64 {
    if w.im < 0.0 {
        -w
    } else {
        w
    }
}

/// Closest point to `z` on the polyline segments adjacent to `idx`.
fn project_to_polyline(points: &[Complex64], idx: usize, z: Complex64) -> Complex64 {
    let mut best = points[idx];
    let mut best_d = (z - best).norm();
    let lo = idx.saturating_sub(1);
    let hi = (idx + 1).min(points.len() - 1);
    for k in lo..hi {
        let (a, b) = (points[k], points[k + 1]);
        let ab = b - a;
        let len2 = ab.norm_sqr();
        if len2 == 0.0 {
            continue;
        }
        let t = (((z - a).re * ab.re + (z - a).im * ab.im) / len2).clamp(0.0, 1.0);
        let q = a + ab * t;
        let d = (z - q).norm();
        if d < best_d {
            best_d = d;
            best = q;
        }
    }
    best
}

/// Adaptive Simpson evaluation of the line integral of sqrt(phi) along
/// the straight segment from `a` to `b`, branch-chained from `hint`.
fn segment_integral(
    phi: &QuadraticDifferential,
    a: Complex64,
    b: Complex64,
    hint: Complex64,
) -> Complex64 {
    fn simpson(
        phi: &QuadraticDifferential,
        a: Complex64,
        sa: Complex64,
        b: Complex64,
        depth: usize,
    ) -> (Complex64, Complex64) {
        let m = 0.5 * (a + b);
        let sm = sqrt_phi(phi, m, sa);
        let sb = sqrt_phi(phi, b, sm);
        let whole = (sa + 4.0 * sm + sb) / 6.0 * (b - a);
        if depth == 0 {
            return (whole, sb);
        }
        let (left, _) = simpson(phi, a, sa, m, 0);
        let (right, _) = simpson(phi, m, sm, b, 0);
        let refined = left + right;
        if (refined - whole).norm() < 1e-13 * (1.0 + refined.norm()) || depth == 1 {
            (refined, sb)
        } else {
            let (l, _) = simpson(phi, a, sa, m, depth - 1);
            let (r, sb2) = simpson(phi, m, sm, b, depth - 1);
            (l + r, sb2)
        }
    }
    let sa = sqrt_phi(phi, a, hint);
    simpson(phi, a, sa, b, 16).0
}

/// Uniform-grid spatial index over the separatrix sample points.
pub(crate) struct PointGrid {
    cell: f64,
    buckets: BTreeMap<(i64, i64), Vec<(Complex64, (usize, usize, usize))>>,
}

impl PointGrid {
    pub(crate) fn build(separatrices: &[Vec<Trace>], cell: f64) -> PointGrid {
        let mut buckets: BTreeMap<(i64, i64), Vec<(Complex64, (usize, usize, usize))>> =
            BTreeMap::new();
        for (zb, traces) in separatrices.iter().enumerate() {
            for (ti, tr) in traces.iter().enumerate() {
                for (pi, p) in tr.points.iter().enumerate() {
                    let key = ((p.re / cell).floor() as i64, (p.im / cell).floor() as i64);
                    buckets.entry(key).or_default().push((*p, (zb, ti, pi)));
                }
            }
        }
        PointGrid { cell, buckets }
    }

    fn nearest(&self, z: Complex64, radius: f64) -> Option<(usize, usize, usize)> {
        debug_assert!(radius <= self.cell + 1e-12);
        let cx = (z.re / self.cell).floor() as i64;
        let cy = (z.im / self.cell).floor() as i64;
        let mut best: Option<(f64, (usize, usize, usize))> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = self.buckets.get(&(cx + dx, cy + dy)) else { continue };
                for (p, key) in bucket {
                    let d = (z - p).norm();
                    if d < radius && best.map_or(true, |(bd, _)| d < bd) {
                        best = Some((d, *key));
                    }
                }
            }
        }
        best.map(|(_, k)| k)
    }
}

impl TrajectoryReport {
    /// The N-angulation determined by the strips of a saddle-free
    /// differential.
    pub fn angulation(&self, phi: &QuadraticDifferential) -> Result<NAngulation, QuadError> {
        if !self.saddle_free {
            return Err(QuadError::NotSaddleFree);
        }
        let diagonals: Vec<Diagonal> = self.strips.iter().map(|s| s.diagonal).collect();
        Ok(NAngulation::new(phi.annulus(), diagonals)?)
    }
}
