//! Combinatorics and homological algebra of the marked annulus.
//!
//! The crate has four subsystems:
//!
//! * [`annulus`] — N-angulations of the marked annulus `P_{d_p,d_q}`,
//!   their flips, rotations and the exchange graph.
//! * [`quiver`] — colored quivers, the 3-step colored mutation, the
//!   quiver of an N-angulation and the lattice bilinear form.
//! * [`zigzag`] — the bigraded zigzag algebra of the cyclic quiver,
//!   complexes of projectives, twist and rotation functors, Hom
//!   dimension counts and the braid-word triviality decider.
//! * [`quaddiff`] — a numerical tracer for the horizontal foliation of
//!   a meromorphic quadratic differential on the sphere with two poles,
//!   producing N-angulations, periods and wall-crossing flips.

pub mod annulus;
pub mod quaddiff;
pub mod quiver;
pub mod zigzag;

pub use annulus::{Diagonal, Face, MarkedAnnulus, NAngulation, Rotation};
pub use quiver::{ColoredQuiver, LatticeForm};
pub use zigzag::{BraidWord, Flavor, HalfInt, ProjComplex, Triviality, Zigzag};
pub use quaddiff::{QuadraticDifferential, Tolerances, TrajectoryReport};
