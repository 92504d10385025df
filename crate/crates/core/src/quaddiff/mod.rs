//! Numerical tracing of the horizontal foliation of
//! `phi(z) = e^{i pi t} [prod (z - a_i) / z^p]^{N-2} dz^2 / z^2`.
//!
//! Separatrices are launched from every zero along the N local
//! horizontal directions and classified by which pole they fall into;
//! generic trajectories sampled from the sectors between them identify
//! the horizontal strips, whose periods are integrated along a vertical
//! leg plus a walk down a boundary separatrix.

mod angulate;
mod svg;
mod trace;
mod wallcross;

pub use svg::render_svg;
pub use wallcross::{wallcross_demo, WallcrossEvent};

use crate::annulus::{Diagonal, MarkedAnnulus};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("zeros must be distinct, nonzero and match n (got {0})")]
    ZeroCollision(String),
    #[error("trajectory left undetermined after exhausting the budget (zero {zero}, ray {ray})")]
    UndeterminedTrajectory { zero: usize, ray: usize },
    #[error("the differential is not saddle-free")]
    NotSaddleFree,
    #[error("strip structure inconsistent: {0}")]
    StripStructure(String),
    #[error("no wall found in the swept range")]
    NoWallInRange,
    #[error("more than one wall (or a multi-saddle configuration) in range")]
    MultipleWalls,
    #[error(transparent)]
    Annulus(#[from] crate::annulus::AnnulusError),
    #[error("bad differential json: {0}")]
    BadJson(String),
}

/// The meromorphic quadratic differential, determined by `(N, n, p)`,
/// its zeros, and a phase rotation `e^{i pi t}`.
#[derive(Debug, Clone)]
pub struct QuadraticDifferential {
    pub n_gon: usize,
    pub rank: usize,
    pub p: usize,
    pub zeros: Vec<Complex64>,
    pub phase: f64,
}

impl QuadraticDifferential {
    pub fn new(
        n_gon: usize,
        rank: usize,
        p: usize,
        zeros: Vec<Complex64>,
        phase: f64,
    ) -> Result<Self, QuadError> {
        let annulus = MarkedAnnulus::new(n_gon, rank, p)
            .map_err(|e| QuadError::ZeroCollision(e.to_string()))?;
        let _ = annulus;
        if zeros.len() != rank {
            return Err(QuadError::ZeroCollision(format!(
                "expected {} zeros, got {}",
                rank,
                zeros.len()
            )));
        }
        let min_sep = min_pairwise_or_origin(&zeros);
        if min_sep <= 0.0 {
            return Err(QuadError::ZeroCollision(
                "zeros collide or touch the origin".into(),
            ));
        }
        Ok(QuadraticDifferential { n_gon, rank, p, zeros, phase })
    }

    pub fn annulus(&self) -> MarkedAnnulus {
        MarkedAnnulus::new(self.n_gon, self.rank, self.p).expect("validated at construction")
    }

    /// Pole orders at 0 and infinity.
    pub fn pole_orders(&self) -> (usize, usize) {
        (
            (self.n_gon - 2) * self.p + 2,
            (self.n_gon - 2) * (self.rank - self.p) + 2,
        )
    }

    pub fn rotated(&self, dt: f64) -> QuadraticDifferential {
        let mut out = self.clone();
        out.phase += dt;
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PhiJson {
            n_gon: self.n_gon,
            n: self.rank,
            p: self.p,
            zeros: self.zeros.iter().map(|z| [z.re, z.im]).collect(),
            phase: self.phase,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, QuadError> {
        let raw: PhiJson = serde_json::from_value(v.clone())
            .map_err(|e| QuadError::BadJson(e.to_string()))?;
        QuadraticDifferential::new(
            raw.n_gon,
            raw.n,
            raw.p,
            raw.zeros.iter().map(|z| Complex64::new(z[0], z[1])).collect(),
            raw.phase,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PhiJson {
    #[serde(rename = "N")]
    n_gon: usize,
    n: usize,
    p: usize,
    zeros: Vec<[f64; 2]>,
    phase: f64,
}

pub(crate) fn min_pairwise_or_origin(zeros: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for (i, a) in zeros.iter().enumerate() {
        m = m.min(a.norm());
        for b in &zeros[i + 1..] {
            m = m.min((a - b).norm());
        }
    }
    m
}

/// Integration controls.  Radii scale with the zero configuration as in
/// the local-model analysis: classification at `|z| < r0_factor min|a|`
/// and `|z| > rinf_factor max|a|`, saddle candidates within
/// `hit_factor min_sep` of another zero and certified by re-running at
/// `certify_tol_factor` times the tolerance against the tighter radius
/// `certify_hit_factor min_sep`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub r0_factor: f64,
    pub rinf_factor: f64,
    pub launch_factor: f64,
    pub hit_factor: f64,
    pub certify_hit_factor: f64,
    pub certify_tol_factor: f64,
    pub sample_spacing_factor: f64,
    /// Radius (times max |a_i|) of the finely sampled working region in
    /// which strip boundaries must be met.
    pub fine_radius_factor: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel_tol: 1e-10,
            r0_factor: 1e-4,
            rinf_factor: 1e4,
            launch_factor: 1e-4,
            hit_factor: 1e-3,
            certify_hit_factor: 1e-6,
            certify_tol_factor: 1e-3,
            sample_spacing_factor: 0.05,
            fine_radius_factor: 64.0,
            max_steps: 400_000,
        }
    }
}

impl Tolerances {
    pub fn halved(&self) -> Tolerances {
        let mut t = *self;
        t.rel_tol *= 0.5;
        t.sample_spacing_factor *= 0.5;
        t
    }
}

/// Where a traced ray ended up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RayLimit {
    /// Fell into the pole at 0, asymptotic to the labeled direction.
    PoleZeroDirection(usize),
    /// Fell into the pole at infinity.
    PoleInfinityDirection(usize),
    /// Hit another zero: a saddle trajectory.
    Zero(usize),
    Undetermined,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayRecord {
    pub zero: usize,
    pub ray: usize,
    pub limit: RayLimit,
}

/// A horizontal strip: its boundary zeros, the standard saddle-class
/// period, and the N-angulation diagonal its generic leaf traces out.
#[derive(Debug, Clone)]
pub struct Strip {
    pub zeros: (usize, usize),
    pub period: Complex64,
    pub diagonal: Diagonal,
}

#[derive(Debug, Clone)]
pub struct TrajectoryReport {
    pub rays: Vec<RayRecord>,
    /// Zero pairs joined by a detected saddle trajectory.
    pub saddles: Vec<(usize, usize)>,
    pub saddle_free: bool,
    pub strips: Vec<Strip>,
    pub halfplanes_at_zero: usize,
    pub halfplanes_at_infinity: usize,
    /// Traced polylines for rendering: separatrices and strip leaves.
    pub curves: Vec<Vec<Complex64>>,
}

impl TrajectoryReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "saddle_free": self.saddle_free,
            "rays": serde_json::to_value(&self.rays).expect("serializable"),
            "saddles": self.saddles,
            "halfplanes": {
                "pole_zero": self.halfplanes_at_zero,
                "pole_infinity": self.halfplanes_at_infinity,
            },
            "strips": self.strips.iter().map(|s| {
                serde_json::json!({
                    "zeros": [s.zeros.0, s.zeros.1],
                    "period": [s.period.re, s.period.im],
                })
            }).collect::<Vec<_>>(),
        })
    }
}
