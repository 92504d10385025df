//! Exact crossing predicate in the universal cover.
//!
//! One lift of `a` is fixed and tested against every lift of `b` within a
//! winding window; straight/boundary-hugging representatives intersect
//! minimally, so a single proper intersection certifies an essential
//! crossing.  Endpoint sharing alone is never a crossing.

use super::{Boundary, Diagonal, MarkedAnnulus};

pub(crate) fn crosses(a: &Diagonal, b: &Diagonal, ann: &MarkedAnnulus) -> bool {
    use Diagonal::*;
    match (a, b) {
        (Bridge { .. }, Bridge { .. }) => bridge_bridge(a, b, ann),
        (Bridge { .. }, Exterior { .. } | Interior { .. }) => bridge_arc(a, b, ann),
        (Exterior { .. } | Interior { .. }, Bridge { .. }) => bridge_arc(b, a, ann),
        (Exterior { .. }, Interior { .. }) | (Interior { .. }, Exterior { .. }) => false,
        (Exterior { .. }, Exterior { .. }) => arc_arc(a, b, ann, Boundary::Exterior),
        (Interior { .. }, Interior { .. }) => arc_arc(a, b, ann, Boundary::Interior),
    }
}

/// Number of essential crossings (used by test oracles).
#[cfg(test)]
pub(crate) fn crossing_count(a: &Diagonal, b: &Diagonal, ann: &MarkedAnnulus) -> usize {
    use Diagonal::*;
    match (a, b) {
        (Bridge { .. }, Bridge { .. }) => {
            let (ab, at) = a.lift(ann);
            let (bb, bt) = b.lift(ann);
            window(a, b)
                .filter(|t| {
                    let s = t * ann.lift_unit();
                    (ab - bb - s) * (at - bt - s) < 0
                })
                .count()
        }
        _ => usize::from(crosses(a, b, ann)),
    }
}

fn window(a: &Diagonal, b: &Diagonal) -> std::ops::RangeInclusive<i64> {
    let wa = match a {
        Diagonal::Bridge { w, .. } => w.abs(),
        _ => 1,
    };
    let wb = match b {
        Diagonal::Bridge { w, .. } => w.abs(),
        _ => 1,
    };
    -(wa + wb + 2)..=(wa + wb + 2)
}

fn bridge_bridge(a: &Diagonal, b: &Diagonal, ann: &MarkedAnnulus) -> bool {
    let (ab, at) = a.lift(ann);
    let (bb, bt) = b.lift(ann);
    window(a, b).any(|t| {
        let s = t * ann.lift_unit();
        (ab - bb - s) * (at - bt - s) < 0
    })
}

/// A bridge crosses a peripheral arc iff its endpoint on the hugged
/// boundary is strictly inside the arc's cut-off interval.
fn bridge_arc(bridge: &Diagonal, arc: &Diagonal, ann: &MarkedAnnulus) -> bool {
    let (endpoint, start, span, size) = match (bridge, arc) {
        (Diagonal::Bridge { e, .. }, Diagonal::Exterior { start, span }) => {
            (*e, *start, *span, ann.d_p())
        }
        (Diagonal::Bridge { i, .. }, Diagonal::Interior { start, span }) => {
            (*i, *start, *span, ann.d_q())
        }
        _ => unreachable!(),
    };
    let r = (endpoint + size - start % size) % size;
    0 < r && r < span
}

fn arc_arc(a: &Diagonal, b: &Diagonal, ann: &MarkedAnnulus, boundary: Boundary) -> bool {
    let (sa, ma) = arc_parts(a);
    let (sb, mb) = arc_parts(b);
    let size = ann.boundary_size(boundary) as i64;
    // Label-space intervals; lifts of b shifted by multiples of the size.
    let (x1, x2) = (sa, sa + ma);
    for t in -2..=2 {
        let (y1, y2) = (sb + t * size, sb + mb + t * size);
        let linked = (x1 < y1 && y1 < x2 && x2 < y2) || (y1 < x1 && x1 < y2 && y2 < x2);
        if linked {
            return true;
        }
    }
    false
}

fn arc_parts(d: &Diagonal) -> (i64, i64) {
    match *d {
        Diagonal::Exterior { start, span } | Diagonal::Interior { start, span } => {
            (start as i64, span as i64)
        }
        _ => unreachable!(),
    }
}
