//! Twist and rotation functors on complexes of projectives.

use super::algebra::{Flavor, PathElem};
use super::complex::{one, Coeff, ProjComplex, Summand};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl ProjComplex {
    /// Spherical twist at vertex `t`.
    ///
    /// Forward: the cone of the evaluation `Hom(P_t, X) (x) P_t -> X`,
    /// with the new column one homological step before `X` and its
    /// internal differential negated.  Inverse: the dual cone
    /// `X -> Hom(X, P_t)* (x) P_t` one step after.
    pub fn twist(&self, t: usize, dir: Direction) -> ProjComplex {
        assert!((1..=self.algebra.n).contains(&t), "twist vertex out of range");
        match dir {
            Direction::Forward => self.twist_forward(t),
            Direction::Inverse => self.twist_inverse(t),
        }
    }

    fn twist_forward(&self, t: usize) -> ProjComplex {
        let alg = self.algebra;
        // Copies: for each summand x and each basis map P_t -> P_{v_x}.
        let mut copies: Vec<(usize, PathElem)> = Vec::new();
        let mut copy_index: BTreeMap<(usize, PathElem), usize> = BTreeMap::new();
        let mut summands: Vec<Summand> = Vec::new();
        for (xi, x) in self.summands.iter().enumerate() {
            for b in alg.hom_basis(t, x.vertex) {
                let step = self.entry_step(b);
                let g = [x.g[0] - step[0], x.g[1] - step[1], x.g[2] - step[2]];
                copy_index.insert((xi, b), summands.len());
                copies.push((xi, b));
                summands.push(Summand { vertex: t, g });
            }
        }
        let offset = summands.len();
        summands.extend(self.summands.iter().copied());

        let mut entries: BTreeMap<(usize, usize), (Coeff, PathElem)> = BTreeMap::new();
        // X-part keeps its differential.
        for (&(x, y), (c, p)) in &self.entries {
            entries.insert((offset + x, offset + y), (c.clone(), *p));
        }
        // Evaluation: copy_b(x) -> x via the path b.
        for (ci, &(xi, b)) in copies.iter().enumerate() {
            entries.insert((ci, offset + xi), (one(), b));
        }
        // Induced differential on copies, negated: copy_b(x) -> copy_b'(y)
        // where compose(q, b) = b' for an entry q: x -> y.
        for (&(x, y), (c, q)) in &self.entries {
            for b in alg.hom_basis(t, self.summands[x].vertex) {
                let Some(b2) = alg.compose(*q, b) else { continue };
                let from = copy_index[&(x, b)];
                let to = copy_index[&(y, b2)];
                let slot = entries.entry((from, to)).or_insert((Coeff::zero(), PathElem::E(t)));
                slot.0 -= c;
            }
        }
        entries.retain(|_, (c, _)| !c.is_zero());
        let out = ProjComplex { algebra: alg, summands, entries };
        debug_assert_eq!(out.validate(), Ok(()));
        out
    }

    fn twist_inverse(&self, t: usize) -> ProjComplex {
        let alg = self.algebra;
        let mut copies: Vec<(usize, PathElem)> = Vec::new();
        let mut copy_index: BTreeMap<(usize, PathElem), usize> = BTreeMap::new();
        let mut summands: Vec<Summand> = self.summands.clone();
        for (xi, x) in self.summands.iter().enumerate() {
            // Maps P_{v_x} -> P_t: paths from t to v_x.
            for b in alg.hom_basis(x.vertex, t) {
                let step = self.entry_step(b);
                let g = [x.g[0] + step[0], x.g[1] + step[1], x.g[2] + step[2]];
                copy_index.insert((xi, b), summands.len());
                copies.push((xi, b));
                summands.push(Summand { vertex: t, g });
            }
        }

        let mut entries: BTreeMap<(usize, usize), (Coeff, PathElem)> = BTreeMap::new();
        for (&(x, y), (c, p)) in &self.entries {
            entries.insert((x, y), (c.clone(), *p));
        }
        // Coevaluation: x -> copy_b(x) via b.
        for (&(xi, b), &ci) in &copy_index {
            entries.insert((xi, ci), (one(), b));
        }
        // Induced differential on copies, negated: copy_b'(x) -> copy_b''(y)
        // with coefficient of b' in compose(b'', q) for q: x -> y.
        for (&(x, y), (c, q)) in &self.entries {
            for b2 in alg.hom_basis(self.summands[y].vertex, t) {
                let Some(b1) = alg.compose(b2, *q) else { continue };
                let from = copy_index[&(x, b1)];
                let to = copy_index[&(y, b2)];
                let slot = entries.entry((from, to)).or_insert((Coeff::zero(), PathElem::E(t)));
                slot.0 -= c;
            }
        }
        entries.retain(|_, (c, _)| !c.is_zero());
        let out = ProjComplex { algebra: alg, summands, entries };
        debug_assert_eq!(out.validate(), Ok(()));
        out
    }

    /// Rotation functor: relabels vertices cyclically and shifts the
    /// second grading on wrap-around, transporting entries along the
    /// path-shift automorphism.
    pub fn rho(&self, dir: Direction) -> ProjComplex {
        let alg = self.algebra;
        let inverse = dir == Direction::Inverse;
        let wrap_slot = match alg.flavor {
            Flavor::R => 1,
            Flavor::Rbar => 2,
        };
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let (vertex, bump) = if inverse {
                    (alg.prev(s.vertex), i64::from(s.vertex == 1))
                } else {
                    (alg.next(s.vertex), -i64::from(s.vertex == alg.n))
                };
                let mut g = s.g;
                g[wrap_slot] += bump;
                Summand { vertex, g }
            })
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|(&k, (c, p))| (k, (c.clone(), alg.shift_path(*p, inverse))))
            .collect();
        let out = ProjComplex { algebra: alg, summands, entries };
        debug_assert_eq!(out.validate(), Ok(()));
        out
    }
}
