//! Forward and backward flips.
//!
//! Removing a diagonal merges its two adjacent N-gons into a (2N-2)-gon;
//! the flip replaces it by the diameter one step clockwise (forward) or
//! counterclockwise (backward) from its endpoints along that polygon's
//! counterclockwise corner cycle.

use super::faces::{Dart, DartGeometry};
use super::{AnnulusError, Boundary, Diagonal, NAngulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FlipDir {
    Forward,
    Backward,
}

impl NAngulation {
    /// Forward flip: replaces `d` by rotating its endpoints one step
    /// clockwise along the merged (2N-2)-gon.
    pub fn flip_forward(&self, d: &Diagonal) -> Result<NAngulation, AnnulusError> {
        self.flip(d, FlipDir::Forward)
    }

    /// Backward flip, inverse to the forward flip.
    pub fn flip_backward(&self, d: &Diagonal) -> Result<NAngulation, AnnulusError> {
        self.flip(d, FlipDir::Backward)
    }

    /// The replacement diagonal of a flip, without rebuilding the angulation.
    pub fn flipped_diagonal(&self, d: &Diagonal, forward: bool) -> Result<Diagonal, AnnulusError> {
        let dir = if forward { FlipDir::Forward } else { FlipDir::Backward };
        self.flip_replacement(d, dir)
    }

    pub(crate) fn flip(&self, d: &Diagonal, dir: FlipDir) -> Result<NAngulation, AnnulusError> {
        let replacement = self.flip_replacement(d, dir)?;
        let mut ds: Vec<Diagonal> = self
            .diagonals()
            .iter()
            .copied()
            .filter(|x| x != d)
            .collect();
        ds.push(replacement);
        NAngulation::new(self.annulus, ds)
    }

    fn flip_replacement(&self, d: &Diagonal, dir: FlipDir) -> Result<Diagonal, AnnulusError> {
        let index = self
            .diagonals()
            .iter()
            .position(|x| x == d)
            .ok_or(AnnulusError::DiagonalNotPresent)?;

        let geo = DartGeometry::new(&self.annulus, self.diagonals());
        let cycles = geo.face_cycles()?;
        let find = |end: u8| -> Option<(usize, usize)> {
            for (f, cycle) in cycles.iter().enumerate() {
                if let Some(pos) = cycle.iter().position(|x| *x == Dart::Diag { index, end }) {
                    return Some((f, pos));
                }
            }
            None
        };
        let (f0, p0) = find(0).ok_or(AnnulusError::DiagonalNotPresent)?;
        let (f1, p1) = find(1).ok_or(AnnulusError::DiagonalNotPresent)?;
        if f0 == f1 {
            return Err(AnnulusError::NotAnNAngulation(
                "diagonal bounds the same face on both sides".into(),
            ));
        }

        // Merged counterclockwise boundary: the sides of the first face
        // after the diagonal dart, then the sides of the second face after
        // the reversed dart.
        let rest = |cycle: &[Dart], pos: usize| -> Vec<Dart> {
            (1..cycle.len()).map(|k| cycle[(pos + k) % cycle.len()]).collect()
        };
        let mut merged = rest(&cycles[f0], p0);
        merged.extend(rest(&cycles[f1], p1));
        let n = self.annulus.n_gon;
        debug_assert_eq!(merged.len(), 2 * n - 2);

        // Corner lifts along the merged polygon.  Corner k is the tail of
        // merged[k]; corner 0 is the head of the removed diagonal's dart 0,
        // placed at the far-endpoint lift of the canonical representative.
        let (_, start_lift) = self.diagonals()[index].lift(&self.annulus);
        let mut corners: Vec<(Boundary, i64)> = Vec::with_capacity(merged.len());
        let mut x = start_lift;
        for dart in &merged {
            corners.push((geo.tail(dart).0, x));
            x += geo.walk(dart);
        }
        debug_assert_eq!(x, start_lift, "merged polygon boundary must close up");

        // The removed diagonal joins corners 0 and N-1 of the merged cycle.
        // The forward flip advances both endpoints one corner along the
        // cycle; this is the direction that commutes with colored quiver
        // mutation (checked exhaustively by the acceptance suite).
        let len = merged.len();
        let (c_a, c_b) = match dir {
            FlipDir::Forward => (1, n % len),
            FlipDir::Backward => ((len - 1) % len, n - 2),
        };
        Diagonal::from_lifts(&self.annulus, corners[c_a], corners[c_b])
    }
}
