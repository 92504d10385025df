//! N-angulations of the marked annulus.
//!
//! The annulus is modeled on its universal cover, the strip `R x [0,1]`
//! modulo the unit horizontal translation.  Exterior marked points sit on
//! the bottom line at `e/d_p`, interior marked points on the top line at
//! `-i/d_q` (labels run counterclockwise on the exterior boundary and
//! clockwise on the interior one, so both label orders advance by `+1`
//! along their boundary dart).  With this placement the strip orientation
//! agrees with the annulus orientation, and crossing, face extraction and
//! flips reduce to exact integer arithmetic on lifted endpoints.

mod cross;
mod faces;
mod flip;
mod graph;

pub use faces::{BoundarySide, Face, FaceSide};
pub use graph::{ExchangeGraph, GraphEdge};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which boundary circle of the annulus a label lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// Blow-up circle of the finite pole; `d_p = p (N-2)` marked points.
    Exterior,
    /// Blow-up circle of the pole at infinity; `d_q = (n-p)(N-2)` points.
    Interior,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnnulusError {
    #[error("invalid marked annulus: need N >= 3, n >= 2, 1 <= p <= n-1 (got N={n_gon}, n={rank}, p={p})")]
    InvalidAnnulus { n_gon: usize, rank: usize, p: usize },
    #[error("invalid diagonal {0}")]
    InvalidDiagonal(String),
    #[error("not an N-angulation: {0}")]
    NotAnNAngulation(String),
    #[error("diagonal not present in the angulation")]
    DiagonalNotPresent,
    #[error("the polygon swap requires d_p = d_q")]
    EpsilonRequiresEqualHalves,
}

/// The marked annulus `P_{d_p, d_q}`.
///
/// `n_gon` is the face size N, `rank` the number n of diagonals in any
/// N-angulation, and `p` splits the rank between the two boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedAnnulus {
    #[serde(rename = "N")]
    pub n_gon: usize,
    #[serde(rename = "n")]
    pub rank: usize,
    pub p: usize,
}

impl MarkedAnnulus {
    pub fn new(n_gon: usize, rank: usize, p: usize) -> Result<Self, AnnulusError> {
        if n_gon < 3 || rank < 2 || p == 0 || p >= rank {
            return Err(AnnulusError::InvalidAnnulus { n_gon, rank, p });
        }
        Ok(MarkedAnnulus { n_gon, rank, p })
    }

    /// Number of exterior marked points, `p (N-2)`.
    pub fn d_p(&self) -> usize {
        self.p * (self.n_gon - 2)
    }

    /// Number of interior marked points, `(n-p)(N-2)`.
    pub fn d_q(&self) -> usize {
        (self.rank - self.p) * (self.n_gon - 2)
    }

    pub fn boundary_size(&self, b: Boundary) -> usize {
        match b {
            Boundary::Exterior => self.d_p(),
            Boundary::Interior => self.d_q(),
        }
    }

    /// Common denominator for lifted x-coordinates: positions are stored
    /// as integer multiples of `1/L`.
    pub(crate) fn lift_unit(&self) -> i64 {
        lcm(self.d_p() as i64, self.d_q() as i64)
    }

    /// Width of one step along the given boundary, in lift units.
    pub(crate) fn step(&self, b: Boundary) -> i64 {
        self.lift_unit() / self.boundary_size(b) as i64
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// An isotopy class of (N-2)-diagonal on the marked annulus.
///
/// * `Bridge` connects exterior vertex `e` to interior vertex `i`; `w`
///   counts how many extra deck translations the chosen lift of the
///   interior endpoint carries relative to its base lift in `[0, 1)`.
/// * `Exterior`/`Interior` arcs run from `start` to `start + span`
///   (labels mod the boundary size) and cut off the `span - 1` marked
///   points strictly between, on the label-increasing side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diagonal {
    Bridge { e: usize, i: usize, w: i64 },
    Exterior { start: usize, span: usize },
    Interior { start: usize, span: usize },
}

impl Diagonal {
    pub fn is_bridge(&self) -> bool {
        matches!(self, Diagonal::Bridge { .. })
    }

    /// Validates labels, the Type 1 congruence `e = i (mod N-2)` and the
    /// Type 2/3 span constraint `span = 1 (mod N-2)`, `span >= N-1`.
    pub fn validate(&self, a: &MarkedAnnulus) -> Result<(), AnnulusError> {
        let m = a.n_gon - 2;
        match *self {
            Diagonal::Bridge { e, i, .. } => {
                if e >= a.d_p() || i >= a.d_q() {
                    return Err(AnnulusError::InvalidDiagonal(format!(
                        "bridge endpoint out of range: ({e}, {i})"
                    )));
                }
                if e % m != i % m {
                    return Err(AnnulusError::InvalidDiagonal(format!(
                        "bridge ({e}, {i}) violates the congruence mod {m}"
                    )));
                }
            }
            Diagonal::Exterior { start, span } | Diagonal::Interior { start, span } => {
                let b = if self.boundary() == Boundary::Exterior {
                    a.d_p()
                } else {
                    a.d_q()
                };
                if start >= b {
                    return Err(AnnulusError::InvalidDiagonal(format!(
                        "arc start {start} out of range"
                    )));
                }
                if span % m != 1 % m || span < a.n_gon - 1 || span > b {
                    return Err(AnnulusError::InvalidDiagonal(format!(
                        "arc span {span} invalid on a boundary of size {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn boundary(&self) -> Boundary {
        match self {
            Diagonal::Bridge { .. } => unreachable!("bridges touch both boundaries"),
            Diagonal::Exterior { .. } => Boundary::Exterior,
            Diagonal::Interior { .. } => Boundary::Interior,
        }
    }

    /// Lifted endpoint positions `(exterior_or_start, interior_or_end)`
    /// in units of `1/L`.  For a bridge the first component lies on the
    /// bottom line, the second on the top line.  For a peripheral arc
    /// both lie on its boundary line, ordered (start-end in label order).
    pub(crate) fn lift(&self, a: &MarkedAnnulus) -> (i64, i64) {
        let big_l = a.lift_unit();
        match *self {
            Diagonal::Bridge { e, i, w } => {
                let bottom = e as i64 * a.step(Boundary::Exterior);
                let dq = a.d_q() as i64;
                let base = ((dq - i as i64) % dq) * a.step(Boundary::Interior);
                (bottom, base + w * big_l)
            }
            Diagonal::Exterior { start, span } => {
                let u = a.step(Boundary::Exterior);
                (start as i64 * u, (start + span) as i64 * u)
            }
            Diagonal::Interior { start, span } => {
                // Interior labels advance toward -x on the top line.
                let u = a.step(Boundary::Interior);
                let dq = a.d_q() as i64;
                let base = ((dq - start as i64) % dq) * u;
                (base, base - span as i64 * u)
            }
        }
    }

    /// Rebuilds a diagonal from a pair of lifted corner positions.
    pub(crate) fn from_lifts(
        a: &MarkedAnnulus,
        c0: (Boundary, i64),
        c1: (Boundary, i64),
    ) -> Result<Diagonal, AnnulusError> {
        let big_l = a.lift_unit();
        match (c0.0, c1.0) {
            (Boundary::Exterior, Boundary::Interior) | (Boundary::Interior, Boundary::Exterior) => {
                let (bot, top) = if c0.0 == Boundary::Exterior {
                    (c0.1, c1.1)
                } else {
                    (c1.1, c0.1)
                };
                let up = a.step(Boundary::Exterior);
                let dp = a.d_p() as i64;
                let e = bot.div_euclid(up).rem_euclid(dp) as usize;
                // Shift both endpoints so the exterior one sits at its base lift.
                let shift = bot - e as i64 * up;
                debug_assert_eq!(shift.rem_euclid(big_l), 0);
                let top = top - shift;
                let uq = a.step(Boundary::Interior);
                let dq = a.d_q() as i64;
                let i = (-top.div_euclid(uq)).rem_euclid(dq) as usize;
                let base = ((dq - i as i64) % dq) * uq;
                let w = (top - base) / big_l;
                debug_assert_eq!(base + w * big_l, top);
                let d = Diagonal::Bridge { e, i, w };
                d.validate(a)?;
                Ok(d)
            }
            (Boundary::Exterior, Boundary::Exterior) => {
                let u = a.step(Boundary::Exterior);
                let dp = a.d_p() as i64;
                let (lo, hi) = (c0.1.min(c1.1), c0.1.max(c1.1));
                let span = (hi - lo) / u;
                debug_assert_eq!(lo.rem_euclid(u), 0);
                let start = lo.div_euclid(u).rem_euclid(dp) as usize;
                let d = Diagonal::Exterior { start, span: span as usize };
                d.validate(a)?;
                Ok(d)
            }
            (Boundary::Interior, Boundary::Interior) => {
                let u = a.step(Boundary::Interior);
                let dq = a.d_q() as i64;
                // Labels advance toward -x: the start corner has the larger x.
                let (lo, hi) = (c0.1.min(c1.1), c0.1.max(c1.1));
                let span = (hi - lo) / u;
                let start = (-hi.div_euclid(u)).rem_euclid(dq) as usize;
                let d = Diagonal::Interior { start, span: span as usize };
                d.validate(a)?;
                Ok(d)
            }
        }
    }
}

/// A maximal collection of pairwise non-crossing diagonals cutting the
/// annulus into N-gons.  Diagonals are kept sorted, which makes the value
/// hashable and the BFS of the exchange graph deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NAngulation {
    pub annulus: MarkedAnnulus,
    diagonals: Vec<Diagonal>,
}

/// Rotations of the marked annulus acting on angulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    /// `r_E`: exterior polygon one step clockwise.
    ExteriorStep,
    /// `r_I`: interior polygon one step counterclockwise.
    InteriorStep,
    /// `[s]`: exterior s steps clockwise and interior s steps counterclockwise.
    Bracket(i64),
    /// `epsilon`: swap the two polygons (needs `d_p = d_q`).
    Swap,
}

impl NAngulation {
    /// Builds and fully validates an N-angulation: cardinality, pairwise
    /// non-crossing, at least one bridge, and every face an N-gon.
    pub fn new(annulus: MarkedAnnulus, mut diagonals: Vec<Diagonal>) -> Result<Self, AnnulusError> {
        diagonals.sort();
        diagonals.dedup();
        for d in &diagonals {
            d.validate(&annulus)?;
        }
        if diagonals.len() != annulus.rank {
            return Err(AnnulusError::NotAnNAngulation(format!(
                "expected {} diagonals, got {}",
                annulus.rank,
                diagonals.len()
            )));
        }
        if !diagonals.iter().any(|d| d.is_bridge()) {
            return Err(AnnulusError::NotAnNAngulation(
                "no bridge diagonal present".into(),
            ));
        }
        for (k, d1) in diagonals.iter().enumerate() {
            for d2 in &diagonals[k + 1..] {
                if cross::crosses(d1, d2, &annulus) {
                    return Err(AnnulusError::NotAnNAngulation(format!(
                        "diagonals cross: {d1:?} x {d2:?}"
                    )));
                }
            }
        }
        let ang = NAngulation { annulus, diagonals };
        ang.faces()?;
        Ok(ang)
    }

    /// The canonical standard N-angulation: a staircase of `n` bridges.
    /// In the universal cover the k-th bridge runs from the bottom lift
    /// `min(k, p)(N-2)/d_p` to the top lift `max(0, k-p)(N-2)/d_q`, so the
    /// face between consecutive bridges picks up its N-2 boundary edges on
    /// the exterior for the first p faces and on the interior afterwards.
    pub fn standard(annulus: MarkedAnnulus) -> NAngulation {
        let m = (annulus.n_gon - 2) as i64;
        let up = annulus.step(Boundary::Exterior);
        let uq = annulus.step(Boundary::Interior);
        let mut out = Vec::new();
        for k in 0..annulus.rank {
            let bottom = k.min(annulus.p) as i64 * m * up;
            let top = k.saturating_sub(annulus.p) as i64 * m * uq;
            let d = Diagonal::from_lifts(
                &annulus,
                (Boundary::Exterior, bottom),
                (Boundary::Interior, top),
            )
            .expect("standard bridge is a valid diagonal");
            out.push(d);
        }
        NAngulation::new(annulus, out).expect("standard angulation is valid")
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    /// True iff the two diagonals intersect essentially in the interior.
    pub fn crosses(a: &Diagonal, b: &Diagonal, annulus: &MarkedAnnulus) -> bool {
        cross::crosses(a, b, annulus)
    }

    /// Applies a rotation, relabeling every diagonal.
    pub fn rotate(&self, which: Rotation) -> Result<NAngulation, AnnulusError> {
        let diagonals = match which {
            Rotation::ExteriorStep => self.diagonals.iter().map(|d| rotate_ext(d, &self.annulus)).collect(),
            Rotation::InteriorStep => self.diagonals.iter().map(|d| rotate_int(d, &self.annulus)).collect(),
            Rotation::Bracket(s) => {
                let mut ds: Vec<Diagonal> = self.diagonals.clone();
                let steps = s.rem_euclid(self.annulus.lift_unit()) as usize;
                for _ in 0..steps {
                    ds = ds.iter().map(|d| rotate_ext(d, &self.annulus)).collect();
                    ds = ds.iter().map(|d| rotate_int(d, &self.annulus)).collect();
                }
                ds
            }
            Rotation::Swap => {
                if self.annulus.d_p() != self.annulus.d_q() {
                    return Err(AnnulusError::EpsilonRequiresEqualHalves);
                }
                self.diagonals.iter().map(|d| swap_polygons(d, &self.annulus)).collect()
            }
        };
        NAngulation::new(self.annulus, diagonals)
    }

    /// Image of one diagonal under a rotation (without revalidating the
    /// whole collection).
    pub fn rotate_diagonal(d: &Diagonal, annulus: &MarkedAnnulus, which: Rotation) -> Diagonal {
        match which {
            Rotation::ExteriorStep => rotate_ext(d, annulus),
            Rotation::InteriorStep => rotate_int(d, annulus),
            Rotation::Swap => swap_polygons(d, annulus),
            Rotation::Bracket(s) => {
                let mut out = *d;
                for _ in 0..s.rem_euclid(annulus.lift_unit()) {
                    out = rotate_int(&rotate_ext(&out, annulus), annulus);
                }
                out
            }
        }
    }

    /// Decides whether `other` lies in the orbit of `self` under the
    /// rotation group `r_E^i r_I^j` (arbitrary integers `i = j (mod N-2)`,
    /// with the polygon swap when `d_p = d_q`).  Full turns act as the
    /// core Dehn twist, shifting every bridge winding by one, so orbits
    /// are compared after twist normalization.
    pub fn equivalent(&self, other: &NAngulation) -> bool {
        if self.annulus != other.annulus {
            return false;
        }
        self.orbit_canonical() == other.orbit_canonical()
    }

    /// Shifts every bridge winding by `t` (the t-th power of the core twist).
    fn twisted(&self, t: i64) -> NAngulation {
        let diagonals = self
            .diagonals
            .iter()
            .map(|d| match *d {
                Diagonal::Bridge { e, i, w } => Diagonal::Bridge { e, i, w: w + t },
                other => other,
            })
            .collect();
        NAngulation { annulus: self.annulus, diagonals }
    }

    /// Twist power making the smallest bridge winding zero.
    fn twist_normalized(&self) -> NAngulation {
        let min_w = self
            .diagonals
            .iter()
            .filter_map(|d| match d {
                Diagonal::Bridge { w, .. } => Some(*w),
                _ => None,
            })
            .min()
            .expect("an N-angulation has at least one bridge");
        self.twisted(-min_w)
    }

    /// Enumerates the finite set of twist-normalized orbit representatives.
    pub(crate) fn orbit(&self) -> Vec<NAngulation> {
        let m = self.annulus.n_gon - 2;
        let dp = self.annulus.d_p();
        let dq = self.annulus.d_q();
        let swaps: &[bool] = if dp == dq { &[false, true] } else { &[false] };
        let rotate_all = |a: &NAngulation, f: fn(&Diagonal, &MarkedAnnulus) -> Diagonal| {
            let mut v: Vec<Diagonal> = a.diagonals.iter().map(|d| f(d, &a.annulus)).collect();
            v.sort();
            NAngulation { annulus: a.annulus, diagonals: v }
        };
        let mut out = Vec::new();
        for &s in swaps {
            let start = if s {
                self.rotate(Rotation::Swap).expect("d_p = d_q checked")
            } else {
                self.clone()
            };
            let mut ext_turned = start;
            for i in 0..dp {
                let mut both = ext_turned.clone();
                for j in 0..dq {
                    if i % m == j % m {
                        out.push(both.twist_normalized());
                    }
                    if j + 1 < dq {
                        both = rotate_all(&both, rotate_int);
                    }
                }
                if i + 1 < dp {
                    ext_turned = rotate_all(&ext_turned, rotate_ext);
                }
            }
        }
        out
    }

    /// Canonical representative of the rotation orbit (lexicographic
    /// minimum of the twist-normalized sorted diagonal lists).
    pub fn orbit_canonical(&self) -> NAngulation {
        self.orbit()
            .into_iter()
            .min_by(|a, b| a.diagonals.cmp(&b.diagonals))
            .expect("orbit is nonempty")
    }
}

fn rotate_ext(d: &Diagonal, a: &MarkedAnnulus) -> Diagonal {
    let dp = a.d_p();
    match *d {
        Diagonal::Bridge { e, i, w } => Diagonal::Bridge {
            e: (e + dp - 1) % dp,
            i,
            w: w + if e == 0 { 1 } else { 0 },
        },
        Diagonal::Exterior { start, span } => Diagonal::Exterior {
            start: (start + dp - 1) % dp,
            span,
        },
        Diagonal::Interior { .. } => *d,
    }
}

fn rotate_int(d: &Diagonal, a: &MarkedAnnulus) -> Diagonal {
    let dq = a.d_q();
    match *d {
        Diagonal::Bridge { e, i, w } => {
            // The base lift of the interior endpoint wraps exactly when
            // (d_q - i) mod d_q = d_q - 1.
            let bump = (dq - i) % dq == dq - 1;
            Diagonal::Bridge {
                e,
                i: (i + dq - 1) % dq,
                w: w + if bump { 1 } else { 0 },
            }
        }
        Diagonal::Interior { start, span } => Diagonal::Interior {
            start: (start + dq - 1) % dq,
            span,
        },
        Diagonal::Exterior { .. } => *d,
    }
}

fn swap_polygons(d: &Diagonal, a: &MarkedAnnulus) -> Diagonal {
    debug_assert_eq!(a.d_p(), a.d_q());
    match *d {
        Diagonal::Bridge { e, i, w } => Diagonal::Bridge {
            e: i,
            i: e,
            w: w + i64::from(i >= 1) - i64::from(e >= 1),
        },
        Diagonal::Exterior { start, span } => Diagonal::Interior { start, span },
        Diagonal::Interior { start, span } => Diagonal::Exterior { start, span },
    }
}

// ---------------------------------------------------------------------------
// JSON encoding per the external schema: diagonals as {kind, i, j, w|k}.

#[derive(Serialize, Deserialize)]
struct DiagonalJson {
    kind: String,
    i: usize,
    j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct NAngulationJson {
    #[serde(rename = "N")]
    n_gon: usize,
    n: usize,
    p: usize,
    diagonals: Vec<DiagonalJson>,
}

impl NAngulation {
    pub fn to_json(&self) -> serde_json::Value {
        let m = self.annulus.n_gon - 2;
        let enc = |d: &Diagonal| match *d {
            Diagonal::Bridge { e, i, w } => DiagonalJson {
                kind: "bridge".into(),
                i: e,
                j: i,
                w: Some(w),
                k: None,
            },
            Diagonal::Exterior { start, span } => DiagonalJson {
                kind: "exterior".into(),
                i: start,
                j: (start + span) % self.annulus.d_p(),
                w: None,
                k: Some((span - 1) / m),
            },
            Diagonal::Interior { start, span } => DiagonalJson {
                kind: "interior".into(),
                i: start,
                j: (start + span) % self.annulus.d_q(),
                w: None,
                k: Some((span - 1) / m),
            },
        };
        serde_json::to_value(NAngulationJson {
            n_gon: self.annulus.n_gon,
            n: self.annulus.rank,
            p: self.annulus.p,
            diagonals: self.diagonals.iter().map(enc).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<NAngulation, AnnulusError> {
        let raw: NAngulationJson = serde_json::from_value(v.clone())
            .map_err(|e| AnnulusError::InvalidDiagonal(format!("bad angulation json: {e}")))?;
        let annulus = MarkedAnnulus::new(raw.n_gon, raw.n, raw.p)?;
        let m = annulus.n_gon - 2;
        let mut ds = Vec::new();
        for d in &raw.diagonals {
            let parsed = match d.kind.as_str() {
                "bridge" => Diagonal::Bridge {
                    e: d.i,
                    i: d.j,
                    w: d.w.ok_or_else(|| {
                        AnnulusError::InvalidDiagonal("bridge needs a winding".into())
                    })?,
                },
                "exterior" | "interior" => {
                    let k = d.k.ok_or_else(|| {
                        AnnulusError::InvalidDiagonal("peripheral arc needs k".into())
                    })?;
                    let span = k * m + 1;
                    if d.kind == "exterior" {
                        Diagonal::Exterior { start: d.i, span }
                    } else {
                        Diagonal::Interior { start: d.i, span }
                    }
                }
                other => {
                    return Err(AnnulusError::InvalidDiagonal(format!(
                        "unknown diagonal kind {other:?}"
                    )))
                }
            };
            ds.push(parsed);
        }
        NAngulation::new(annulus, ds)
    }
}
