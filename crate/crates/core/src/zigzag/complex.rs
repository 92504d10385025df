//! Bounded complexes of shifted projectives with exact rational
//! coefficients, and their Gaussian-elimination minimization.
//!
//! A summand carries a grade vector `g`.  For the `R` flavor the first
//! grading is cohomological, so `g = [shift1, shift2, 0]` and an entry
//! with path `b` from summand `x` to `y` must satisfy
//! `g_y - g_x = [deg1(b) - 1, deg2(b), 0]`.  For `Rbar` the homological
//! degree is separate: `g = [h, shift1, shift2]` and entries satisfy
//! `g_y - g_x = [1, deg1(b), deg2(b)]`.  In both cases an entry whose
//! path is an idempotent joins summands of the same underlying module
//! and is removable by Gaussian elimination.

use super::algebra::{Flavor, PathElem, Zigzag};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Coeff = BigRational;

pub fn one() -> Coeff {
    BigRational::one()
}

pub fn int(k: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(k))
}

/// A shifted projective summand `P_vertex(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub vertex: usize,
    pub g: [i64; 3],
}

/// A bounded complex of projective summands.
#[derive(Debug, Clone)]
pub struct ProjComplex {
    pub algebra: Zigzag,
    pub summands: Vec<Summand>,
    /// Differential entries: `(from, to) -> (coefficient, path)`.
    pub entries: BTreeMap<(usize, usize), (Coeff, PathElem)>,
}

impl ProjComplex {
    /// The plain projective `P_j`.
    pub fn projective(algebra: Zigzag, j: usize) -> ProjComplex {
        assert!((1..=algebra.n).contains(&j));
        ProjComplex {
            algebra,
            summands: vec![Summand { vertex: j, g: [0, 0, 0] }],
            entries: BTreeMap::new(),
        }
    }

    pub fn zero(algebra: Zigzag) -> ProjComplex {
        ProjComplex { algebra, summands: Vec::new(), entries: BTreeMap::new() }
    }

    /// Expected grade step of an entry with path `b`.
    pub fn entry_step(&self, b: PathElem) -> [i64; 3] {
        let (d1, d2) = self.algebra.degree(b);
        match self.algebra.flavor {
            Flavor::R => [d1 - 1, d2, 0],
            Flavor::Rbar => [1, d1, d2],
        }
    }

    /// Structural validation: endpoint, grading and `d^2 = 0` checks.
    pub fn validate(&self) -> Result<(), String> {
        let alg = &self.algebra;
        for (&(x, y), (coeff, b)) in &self.entries {
            if x >= self.summands.len() || y >= self.summands.len() {
                return Err(format!("entry ({x},{y}) out of range"));
            }
            if coeff.is_zero() {
                return Err(format!("stored zero entry at ({x},{y})"));
            }
            let (sx, sy) = (self.summands[x], self.summands[y]);
            // The entry is a map P_{v_x} -> P_{v_y}: a path from v_y to v_x.
            if alg.start(*b) != sy.vertex || alg.end(*b) != sx.vertex {
                return Err(format!("entry path {b} does not join {sx:?} -> {sy:?}"));
            }
            let step = self.entry_step(*b);
            for k in 0..3 {
                if sy.g[k] - sx.g[k] != step[k] {
                    return Err(format!(
                        "entry {b}: grade step {:?} vs expected {step:?}",
                        [sy.g[0] - sx.g[0], sy.g[1] - sx.g[1], sy.g[2] - sx.g[2]]
                    ));
                }
            }
        }
        // d^2 = 0.
        let mut square: BTreeMap<(usize, usize, PathElem), Coeff> = BTreeMap::new();
        for (&(x, y), (c1, p1)) in &self.entries {
            for (&(y2, z), (c2, p2)) in &self.entries {
                if y2 != y {
                    continue;
                }
                // Composite x -> z is phi_{p2} . phi_{p1} = phi_{compose(p2, p1)}.
                if let Some(p) = alg.compose(*p2, *p1) {
                    *square.entry((x, z, p)).or_insert_with(Coeff::zero) += c1 * c2;
                }
            }
        }
        for ((x, z, p), c) in square {
            if !c.is_zero() {
                return Err(format!("d^2 != 0 at ({x},{z}) via {p}"));
            }
        }
        Ok(())
    }

    /// Removes contractible pairs until the differential is radical
    /// (no idempotent entries remain).  Homotopy equivalent output.
    pub fn minimize(mut self) -> ProjComplex {
        loop {
            let pivot = self
                .entries
                .iter()
                .find(|(_, (c, p))| matches!(p, PathElem::E(_)) && !c.is_zero())
                .map(|(&(x, y), (c, _))| (x, y, c.clone()));
            let Some((px, py, pc)) = pivot else { break };

            // Gaussian elimination: d'(u,v) = d(u,v) - d(x,v) e^{-1} d(u,y).
            let row_from_x: Vec<(usize, Coeff, PathElem)> = self
                .entries
                .iter()
                .filter(|(&(x, v), _)| x == px && v != py)
                .map(|(&(_, v), (c, p))| (v, c.clone(), *p))
                .collect();
            let col_into_y: Vec<(usize, Coeff, PathElem)> = self
                .entries
                .iter()
                .filter(|(&(u, y), _)| y == py && u != px)
                .map(|(&(u, _), (c, p))| (u, c.clone(), *p))
                .collect();
            let inv = pc.recip();
            for (u, cu, pu) in &col_into_y {
                for (v, cv, pv) in &row_from_x {
                    // phi_{pv} . e^{-1} . phi_{pu} = (1/e) phi_{compose(pv, pu)}.
                    let Some(p) = self.algebra.compose(*pv, *pu) else { continue };
                    let delta = cv * &inv * cu;
                    let slot = self.entries.entry((*u, *v)).or_insert((Coeff::zero(), p));
                    debug_assert_eq!(slot.1, p, "mismatched paths in one entry slot");
                    slot.0 -= delta;
                }
            }
            self.entries.retain(|_, (c, _)| !c.is_zero());
            self.remove_pair(px, py);
        }
        debug_assert_eq!(self.validate(), Ok(()));
        self
    }

    fn remove_pair(&mut self, a: usize, b: usize) {
        let (lo, hi) = (a.min(b), a.max(b));
        let remap = |k: usize| -> usize {
            k - usize::from(k > lo) - usize::from(k > hi)
        };
        self.summands.remove(hi);
        self.summands.remove(lo);
        let old = std::mem::take(&mut self.entries);
        for ((x, y), v) in old {
            if x == a || x == b || y == a || y == b {
                continue;
            }
            self.entries.insert((remap(x), remap(y)), v);
        }
    }

    /// Sorted summand list; the isomorphism invariant of a minimal complex.
    pub fn summand_multiset(&self) -> Vec<Summand> {
        let mut v = self.summands.clone();
        v.sort();
        v
    }

    /// Is this exactly the single summand `P_j(g)` with zero differential?
    pub fn is_single(&self, vertex: usize, g: [i64; 3]) -> bool {
        self.entries.is_empty()
            && self.summands.len() == 1
            && self.summands[0] == Summand { vertex, g }
    }

    pub fn describe(&self) -> String {
        if self.summands.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for s in self.summand_multiset() {
            let label = match self.algebra.flavor {
                Flavor::R => format!("P{}[{}]<{}>", s.vertex, s.g[0], s.g[1]),
                Flavor::Rbar => {
                    format!("P{}[{}]{{{}}}<{}>", s.vertex, s.g[0], s.g[1], s.g[2])
                }
            };
            parts.push(label);
        }
        parts.join(" + ")
    }
}
