//! Complementary faces of an N-angulation.
//!
//! Faces are traversed as orbits of darts.  At each marked point the
//! emanating darts are ordered by departure angle, computed exactly from
//! the lifted representatives: peripheral ends hug the boundary closer
//! than any bridge, nested peripheral ends are ordered by span, bridge
//! ends by the horizontal slope of their straight lift.  The next side of
//! a face (keeping the face on the left) is the first dart strictly
//! clockwise from the reversed arrival direction.

use super::{AnnulusError, Boundary, Diagonal, MarkedAnnulus, NAngulation};

/// One boundary edge of the annulus, from label `from` to `from + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundarySide {
    pub boundary: Boundary,
    pub from: usize,
}

/// A side of a face, in counterclockwise order around the face interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    /// Diagonal `index` (into the sorted diagonal list), traversed from
    /// its end `end` (0 = exterior/start end, 1 = interior/far end).
    Diagonal { index: usize, end: u8 },
    Boundary(BoundarySide),
}

/// A complementary N-gon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub sides: Vec<FaceSide>,
}

impl Face {
    pub fn diagonal_slots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sides.iter().enumerate().filter_map(|(pos, s)| match s {
            FaceSide::Diagonal { index, .. } => Some((pos, *index)),
            FaceSide::Boundary(_) => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Dart {
    Diag { index: usize, end: u8 },
    Boundary(BoundarySide),
}

pub(crate) type Vertex = (Boundary, usize);

impl Dart {
    pub(crate) fn reversed(&self) -> Option<Dart> {
        match *self {
            Dart::Diag { index, end } => Some(Dart::Diag { index, end: 1 - end }),
            Dart::Boundary(_) => None,
        }
    }
}

pub(crate) struct DartGeometry<'a> {
    ann: &'a MarkedAnnulus,
    diagonals: &'a [Diagonal],
}

impl<'a> DartGeometry<'a> {
    pub(crate) fn new(ann: &'a MarkedAnnulus, diagonals: &'a [Diagonal]) -> Self {
        DartGeometry { ann, diagonals }
    }

    pub(crate) fn tail(&self, d: &Dart) -> Vertex {
        match *d {
            Dart::Boundary(b) => (b.boundary, b.from),
            Dart::Diag { index, end } => {
                let diag = &self.diagonals[index];
                match (*diag, end) {
                    (Diagonal::Bridge { e, .. }, 0) => (Boundary::Exterior, e),
                    (Diagonal::Bridge { i, .. }, _) => (Boundary::Interior, i),
                    (Diagonal::Exterior { start, .. }, 0) => (Boundary::Exterior, start),
                    (Diagonal::Exterior { start, span }, _) => {
                        (Boundary::Exterior, (start + span) % self.ann.d_p())
                    }
                    (Diagonal::Interior { start, .. }, 0) => (Boundary::Interior, start),
                    (Diagonal::Interior { start, span }, _) => {
                        (Boundary::Interior, (start + span) % self.ann.d_q())
                    }
                }
            }
        }
    }

    pub(crate) fn head(&self, d: &Dart) -> Vertex {
        match *d {
            Dart::Boundary(b) => {
                let size = self.ann.boundary_size(b.boundary);
                (b.boundary, (b.from + 1) % size)
            }
            Dart::Diag { index, end } => self.tail(&Dart::Diag { index, end: 1 - end }),
        }
    }

    /// Horizontal displacement of the lifted dart, in lift units.
    pub(crate) fn walk(&self, d: &Dart) -> i64 {
        match *d {
            Dart::Boundary(b) => match b.boundary {
                Boundary::Exterior => self.ann.step(Boundary::Exterior),
                Boundary::Interior => -self.ann.step(Boundary::Interior),
            },
            Dart::Diag { index, end } => {
                let (x0, x1) = self.diagonals[index].lift(self.ann);
                if end == 0 {
                    x1 - x0
                } else {
                    x0 - x1
                }
            }
        }
    }

    /// Angular sort key of an emanating dart at its tail vertex.
    /// Keys ascend counterclockwise through the surface-side half-plane.
    fn key(&self, d: &Dart) -> (u8, i64) {
        match *d {
            Dart::Boundary(_) => (0, 0),
            Dart::Diag { index, end } => {
                let diag = &self.diagonals[index];
                let (x0, x1) = diag.lift(self.ann);
                match *diag {
                    Diagonal::Bridge { .. } => {
                        let boundary_of_end =
                            if end == 0 { Boundary::Exterior } else { Boundary::Interior };
                        match boundary_of_end {
                            // Bottom line: theta ascends as dx descends.
                            Boundary::Exterior => (2, -(x1 - x0)),
                            // Top line: theta ascends with dx.
                            Boundary::Interior => (2, x0 - x1),
                        }
                    }
                    Diagonal::Exterior { span, .. } | Diagonal::Interior { span, .. } => {
                        if end == 0 {
                            // Label-forward end: hugs the boundary ahead of
                            // every bridge; deeper (larger span) is farther
                            // from the boundary.
                            (1, span as i64)
                        } else {
                            (3, -(span as i64))
                        }
                    }
                }
            }
        }
    }

    fn vertex_fans(&self) -> std::collections::BTreeMap<Vertex, Vec<((u8, i64), Dart)>> {
        let mut fans: std::collections::BTreeMap<Vertex, Vec<((u8, i64), Dart)>> =
            std::collections::BTreeMap::new();
        let mut add = |this: &Self, d: Dart| {
            let v = this.tail(&d);
            fans.entry(v).or_default().push((this.key(&d), d));
        };
        for index in 0..self.diagonals.len() {
            add(self, Dart::Diag { index, end: 0 });
            add(self, Dart::Diag { index, end: 1 });
        }
        for boundary in [Boundary::Exterior, Boundary::Interior] {
            for from in 0..self.ann.boundary_size(boundary) {
                add(self, Dart::Boundary(BoundarySide { boundary, from }));
            }
        }
        for fan in fans.values_mut() {
            fan.sort();
            debug_assert!(fan.windows(2).all(|w| w[0].0 != w[1].0), "ambiguous fan");
        }
        fans
    }

    /// Orbits of the face-on-the-left successor map.
    pub(crate) fn face_cycles(&self) -> Result<Vec<Vec<Dart>>, AnnulusError> {
        let fans = self.vertex_fans();
        let next = |d: &Dart| -> Dart {
            let h = self.head(d);
            let fan = &fans[&h];
            // Position of the reversed dart in the fan; boundary reversals
            // sit past the end of the surface-side half-plane.
            let pos = match d.reversed() {
                Some(r) => fan
                    .iter()
                    .position(|(_, x)| *x == r)
                    .expect("reversed dart in fan"),
                None => fan.len(),
            };
            // First dart strictly clockwise: previous in cyclic order.
            fan[(pos + fan.len() - 1) % fan.len()].1
        };

        let mut all: Vec<Dart> = Vec::new();
        for index in 0..self.diagonals.len() {
            all.push(Dart::Diag { index, end: 0 });
            all.push(Dart::Diag { index, end: 1 });
        }
        for boundary in [Boundary::Exterior, Boundary::Interior] {
            for from in 0..self.ann.boundary_size(boundary) {
                all.push(Dart::Boundary(BoundarySide { boundary, from }));
            }
        }
        let mut seen: std::collections::HashSet<Dart> = std::collections::HashSet::new();
        let mut cycles = Vec::new();
        for start in all {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = start;
            loop {
                cur = next(&cur);
                if cur == start {
                    break;
                }
                if !seen.insert(cur) {
                    return Err(AnnulusError::NotAnNAngulation(
                        "face traversal merged two orbits".into(),
                    ));
                }
                cycle.push(cur);
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}

impl NAngulation {
    /// The complementary faces of the angulation, each an N-gon with sides
    /// listed counterclockwise.  Fails with `NotAnNAngulation` when some
    /// complementary region is not an N-gon.
    pub fn faces(&self) -> Result<Vec<Face>, AnnulusError> {
        let geo = DartGeometry::new(&self.annulus, self.diagonals());
        let cycles = geo.face_cycles()?;
        let n = self.annulus.n_gon;
        let mut out = Vec::new();
        for cycle in cycles {
            if cycle.len() != n {
                return Err(AnnulusError::NotAnNAngulation(format!(
                    "face with {} sides (expected {})",
                    cycle.len(),
                    n
                )));
            }
            let sides = cycle
                .iter()
                .map(|d| match *d {
                    Dart::Diag { index, end } => FaceSide::Diagonal { index, end },
                    Dart::Boundary(b) => FaceSide::Boundary(b),
                })
                .collect();
            out.push(Face { sides });
        }
        // Side accounting: every diagonal on exactly two faces, every
        // boundary edge on exactly one.
        let mut diag_uses = vec![0usize; self.diagonals().len()];
        for f in &out {
            for s in &f.sides {
                if let FaceSide::Diagonal { index, .. } = s {
                    diag_uses[*index] += 1;
                }
            }
        }
        if diag_uses.iter().any(|&u| u != 2) {
            return Err(AnnulusError::NotAnNAngulation(
                "a diagonal does not bound exactly two face sides".into(),
            ));
        }
        Ok(out)
    }
}
