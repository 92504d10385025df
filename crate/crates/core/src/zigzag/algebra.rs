//! The zigzag algebra of the cyclic double quiver.
//!
//! Basis: idempotents `e_i`, clockwise arrows `(i|i+1)`, counterclockwise
//! arrows `(i|i-1)` and loops `l_i = (i|i+1|i) = (i|i-1|i)`, for `i`
//! modulo `n`.  Straight-through length-two paths vanish, so the algebra
//! has dimension `4n` and all structure constants are 0 or 1.
//!
//! Gradings.  In the `R` flavor the first degree doubles as the
//! cohomological degree: `deg1(i|i+1) = N-1`, `deg1(i|i-1) = 1`, loops in
//! degree N.  In the `Rbar` flavor `deg1(i|i+1) = 0`, `deg1(i|i-1) = 1`.
//! Both flavors put the second degree `+1` on the wrap-around arrow
//! `(n|1)` and `-1` on `(1|n)`; with the shift conventions used here this
//! makes the n-th power of the rotation functor exactly the second-degree
//! shift by -1.

use serde::{Deserialize, Serialize};

/// Which grading the algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// Bigraded; first degree is cohomological (CY-N profile).
    R,
    /// Trigraded complexes: separate homological degree.
    Rbar,
}

/// A basis path of the zigzag algebra.  Vertices are `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathElem {
    /// Idempotent at `i`.
    E(usize),
    /// Arrow `(i|i+1)`.
    F(usize),
    /// Arrow `(i|i-1)`.
    B(usize),
    /// Loop at `i`.
    L(usize),
}

/// The algebra context: rank `n` and Calabi-Yau weight `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zigzag {
    pub n: usize,
    pub n_gon: usize,
    pub flavor: Flavor,
}

impl Zigzag {
    pub fn new(n: usize, n_gon: usize, flavor: Flavor) -> Zigzag {
        assert!(n >= 2 && n_gon >= 3);
        Zigzag { n, n_gon, flavor }
    }

    pub fn next(&self, i: usize) -> usize {
        i % self.n + 1
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n - 2) % self.n + 1
    }

    pub fn start(&self, p: PathElem) -> usize {
        match p {
            PathElem::E(i) | PathElem::F(i) | PathElem::B(i) | PathElem::L(i) => i,
        }
    }

    pub fn end(&self, p: PathElem) -> usize {
        match p {
            PathElem::E(i) | PathElem::L(i) => i,
            PathElem::F(i) => self.next(i),
            PathElem::B(i) => self.prev(i),
        }
    }

    /// Concatenation `p` then `q`; `None` when the product vanishes.
    pub fn compose(&self, p: PathElem, q: PathElem) -> Option<PathElem> {
        if self.end(p) != self.start(q) {
            return None;
        }
        use PathElem::*;
        match (p, q) {
            (E(_), x) => Some(x),
            (x, E(_)) => Some(x),
            (F(i), B(_)) => Some(L(i)),
            (B(i), F(_)) => Some(L(i)),
            (F(_), F(_)) | (B(_), B(_)) => None,
            (L(_), _) | (_, L(_)) => None,
        }
    }

    /// Bidegree `(deg1, deg2)` of a basis path.
    pub fn degree(&self, p: PathElem) -> (i64, i64) {
        let forward_deg1: i64 = match self.flavor {
            Flavor::R => self.n_gon as i64 - 1,
            Flavor::Rbar => 0,
        };
        let loop_deg1: i64 = forward_deg1 + 1;
        match p {
            PathElem::E(_) => (0, 0),
            PathElem::F(i) => (forward_deg1, i64::from(i == self.n)),
            PathElem::B(i) => (1, -i64::from(i == 1)),
            PathElem::L(_) => (loop_deg1, 0),
        }
    }

    /// Basis of the morphism space `P_i -> P_j` (paths from j to i).
    pub fn hom_basis(&self, i: usize, j: usize) -> Vec<PathElem> {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        let mut out = Vec::new();
        if i == j {
            out.push(PathElem::E(i));
            out.push(PathElem::L(i));
        }
        if self.next(j) == i {
            out.push(PathElem::F(j));
        }
        if self.prev(j) == i {
            out.push(PathElem::B(j));
        }
        out
    }

    /// The path-shift ring automorphism `(i_1|...|i_k) -> (i_1+1|...)`,
    /// or its inverse.
    pub fn shift_path(&self, p: PathElem, inverse: bool) -> PathElem {
        let f = |i: usize| if inverse { self.prev(i) } else { self.next(i) };
        match p {
            PathElem::E(i) => PathElem::E(f(i)),
            PathElem::F(i) => PathElem::F(f(i)),
            PathElem::B(i) => PathElem::B(f(i)),
            PathElem::L(i) => PathElem::L(f(i)),
        }
    }
}

impl std::fmt::Display for PathElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathElem::E(i) => write!(f, "e{i}"),
            PathElem::F(i) => write!(f, "({i}|{i}+1)"),
            PathElem::B(i) => write!(f, "({i}|{i}-1)"),
            PathElem::L(i) => write!(f, "l{i}"),
        }
    }
}
