//! Phase sweep through a wall: locates the saddle phase by bisection and
//! checks that the angulations on the two sides differ by one forward
//! flip matching the colored quiver mutation.

use super::{QuadError, QuadraticDifferential, Tolerances};
use crate::annulus::{Diagonal, NAngulation};
use crate::quiver::ColoredQuiver;

#[derive(Debug, Clone)]
pub struct WallcrossEvent {
    /// Phase of the wall (in units of t, i.e. the rotation is e^{i pi t}).
    pub t_star: f64,
    /// The diagonal of the after-wall angulation whose forward flip
    /// produces the before-wall angulation.
    pub flipped: Diagonal,
    pub before: NAngulation,
    pub after: NAngulation,
    /// Q(before) = mutate(Q(after)) at the flipped vertex, under the
    /// canonical diagonal bijection.
    pub quiver_ok: bool,
    /// Largest period jump between consecutive sweep samples within a
    /// chamber (branch bookkeeping aside, periods move continuously).
    pub max_period_jump: f64,
}

/// Sweeps `t` over `[0, t_max]` in `steps` increments, expecting exactly
/// one wall, and verifies the flip/mutation picture across it.
pub fn wallcross_demo(
    phi: &QuadraticDifferential,
    t_max: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<Vec<(f64, WallcrossEvent)>, QuadError> {
    assert!(steps >= 2 && t_max > 0.0);
    let sample = |t: f64| -> Result<Option<(NAngulation, Vec<(Diagonal, num_complex::Complex64)>)>, QuadError> {
        let rotated = phi.rotated(t);
        // Close to a wall the strip structure degenerates; treat any
        // non-certified trace as an on-wall sample.
        let report = match rotated.trace(tol) {
            Ok(r) => r,
            Err(QuadError::StripStructure(_)) | Err(QuadError::UndeterminedTrajectory { .. }) => {
                return Ok(None)
            }
            Err(e) => return Err(e),
        };
        if !report.saddle_free {
            return Ok(None);
        }
        let ang = report.angulation(&rotated)?;
        let periods = report.strips.iter().map(|s| (s.diagonal, s.period)).collect();
        Ok(Some((ang, periods)))
    };

    // Grid sweep.
    let mut samples: Vec<(f64, Option<(NAngulation, Vec<(Diagonal, num_complex::Complex64)>)>)> =
        Vec::new();
    for k in 0..=steps {
        let t = t_max * k as f64 / steps as f64;
        samples.push((t, sample(t)?));
    }

    // Period continuity within chambers.
    let mut max_jump = 0.0f64;
    for win in samples.windows(2) {
        if let (Some((a0, p0)), Some((a1, p1))) = (&win[0].1, &win[1].1) {
            if a0 == a1 {
                for (d, z0) in p0 {
                    if let Some((_, z1)) = p1.iter().find(|(d1, _)| d1 == d) {
                        max_jump = max_jump.max((z1 - z0).norm());
                    }
                }
            }
        }
    }

    // Find chamber boundaries: consecutive saddle-free samples with
    // different angulations (or an on-wall sample between them).
    let mut walls: Vec<(usize, usize)> = Vec::new();
    let mut last_ok: Option<usize> = None;
    for (k, (_, s)) in samples.iter().enumerate() {
        if s.is_some() {
            if let Some(prev) = last_ok {
                let a_prev = &samples[prev].1.as_ref().expect("saddle-free").0;
                let a_cur = s.as_ref().expect("saddle-free").0.clone();
                if *a_prev != a_cur {
                    walls.push((prev, k));
                }
            }
            last_ok = Some(k);
        }
    }
    if walls.is_empty() {
        return Err(QuadError::NoWallInRange);
    }
    if walls.len() > 1 {
        return Err(QuadError::MultipleWalls);
    }
    let (mut lo_idx, mut hi_idx) = walls[0];
    let mut t_lo = samples[lo_idx].0;
    let mut t_hi = samples[hi_idx].0;
    let ang_lo = samples[lo_idx].1.as_ref().expect("saddle-free").0.clone();
    let ang_hi = samples[hi_idx].1.as_ref().expect("saddle-free").0.clone();
    let _ = (&mut lo_idx, &mut hi_idx);

    // Bisect on the angulation.
    for _ in 0..48 {
        if t_hi - t_lo < 1e-9 {
            break;
        }
        let mid = 0.5 * (t_lo + t_hi);
        match sample(mid)? {
            Some((a, _)) if a == ang_lo => t_lo = mid,
            Some((a, _)) if a == ang_hi => t_hi = mid,
            Some(_) => return Err(QuadError::MultipleWalls),
            // On the wall itself: split the difference.
            None => break,
        }
    }
    let t_star = 0.5 * (t_lo + t_hi);

    // The two sides must differ in exactly one diagonal.
    let before = ang_lo;
    let after = ang_hi;
    let gone: Vec<Diagonal> = after
        .diagonals()
        .iter()
        .copied()
        .filter(|d| !before.contains(d))
        .collect();
    if gone.len() != 1 {
        return Err(QuadError::StripStructure(format!(
            "wall changes {} diagonals, expected exactly 1",
            gone.len()
        )));
    }
    let flipped = gone[0];
    let flipped_result = after.flip_forward(&flipped)?;
    if flipped_result != before {
        return Err(QuadError::StripStructure(
            "after-wall angulation does not forward-flip onto the before-wall one".into(),
        ));
    }
    let quiver_ok = ColoredQuiver::commutation_check(&after, &flipped)
        .map_err(|e| QuadError::StripStructure(e.to_string()))?;

    Ok(vec![(
        t_star,
        WallcrossEvent { t_star, flipped, before, after, quiver_ok, max_period_jump: max_jump },
    )])
}
