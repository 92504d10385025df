//! The colored quiver of an N-angulation.
//!
//! Vertices are the diagonals (in sorted order); every face contributes
//! one arrow for each ordered pair of its diagonal sides, colored by the
//! number of polygon edges strictly between them counterclockwise.

use super::{ColoredQuiver, QuiverError};
use crate::annulus::{AnnulusError, Diagonal, NAngulation};

#[derive(Debug, thiserror::Error)]
pub enum AngulationQuiverError {
    #[error(transparent)]
    Annulus(#[from] AnnulusError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

impl ColoredQuiver {
    /// Builds `Q_Delta`, with quiver vertex `k` corresponding to the k-th
    /// diagonal of the sorted diagonal list.
    pub fn of_angulation(ang: &NAngulation) -> Result<ColoredQuiver, AngulationQuiverError> {
        let faces = ang.faces()?;
        let n_gon = ang.annulus.n_gon;
        let mut q = ColoredQuiver::empty(n_gon, ang.diagonals().len());
        for face in &faces {
            let slots: Vec<(usize, usize)> = face.diagonal_slots().collect();
            for &(pa, da) in &slots {
                for &(pb, db) in &slots {
                    if pa == pb {
                        continue;
                    }
                    debug_assert_ne!(da, db, "a diagonal bounds a face twice");
                    let color = (pb + n_gon - pa - 1) % n_gon;
                    // Each unordered slot pair is visited in both orders and
                    // the colors are dual, so add only the (a -> b) arrow here.
                    q.q[da][db][color] += 1;
                }
            }
        }
        q.validate()?;
        Ok(q)
    }

    /// Does flipping `d` commute with mutation at its vertex?  Compares
    /// `Q(flip(ang, d))` with `mutate(Q(ang), v_d)` under the bijection
    /// sending unflipped diagonals to themselves and `d` to its image.
    pub fn commutation_check(ang: &NAngulation, d: &Diagonal) -> Result<bool, AngulationQuiverError> {
        let q = ColoredQuiver::of_angulation(ang)?;
        let v = ang
            .diagonals()
            .iter()
            .position(|x| x == d)
            .ok_or(AnnulusError::DiagonalNotPresent)?;
        let flipped = ang.flip_forward(d)?;
        let q_flipped = ColoredQuiver::of_angulation(&flipped)?;
        let mutated = q.mutate(v)?;

        // perm[k] = index in flipped of the image of diagonal k.
        let sharp = flipped
            .diagonals()
            .iter()
            .copied()
            .find(|x| !ang.contains(x))
            .expect("flip changes one diagonal");
        let mut perm = vec![0usize; ang.diagonals().len()];
        for (k, diag) in ang.diagonals().iter().enumerate() {
            let image = if k == v { sharp } else { *diag };
            perm[k] = flipped
                .diagonals()
                .iter()
                .position(|x| *x == image)
                .expect("image diagonal present");
        }
        Ok(mutated.relabel(&perm) == q_flipped)
    }
}
