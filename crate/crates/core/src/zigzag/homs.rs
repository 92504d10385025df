//! Graded Hom-space dimensions between complexes of projectives.
//!
//! The Hom complex has one generator per pair of summands and basis map
//! between their projectives; its differential is `D(f) = d_Y f -
//! (-1)^{|f|} f d_X`.  Cohomology dimensions are computed gradewise by
//! exact rational rank.

use super::algebra::Flavor;
use super::complex::{Coeff, ProjComplex};
use super::linalg::rank;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Per-grade dimension table of the total Hom space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub flavor: Flavor,
    pub dims: BTreeMap<[i64; 3], usize>,
}

impl HomTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Euler characteristic with respect to the cohomological grade.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|(g, &d)| if g[0].rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    fn grade_labels(&self) -> &'static [&'static str] {
        match self.flavor {
            Flavor::R => &["s1", "s2"],
            Flavor::Rbar => &["r2", "r1", "r3"],
        }
    }

    fn grade_width(&self) -> usize {
        self.grade_labels().len()
    }

    /// Per-shift dimensions as CSV, one row per occupied grade.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.grade_labels().join(","));
        out.push_str(",dim\n");
        for (g, d) in &self.dims {
            let cols: Vec<String> = g[..self.grade_width()].iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{},{d}\n", cols.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .dims
            .iter()
            .map(|(g, d)| serde_json::json!({"shift": g[..self.grade_width()], "dim": d}))
            .collect();
        serde_json::json!({"total": self.total(), "dims": rows})
    }
}

/// Generator of the Hom complex: maps summand `x` of X to summand `y`
/// of Y through the basis path `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct HomGen {
    x: usize,
    y: usize,
    b: super::algebra::PathElem,
}

pub fn hom_table(xc: &ProjComplex, yc: &ProjComplex) -> HomTable {
    assert_eq!(xc.algebra, yc.algebra, "flavor mismatch");
    let alg = xc.algebra;

    // Enumerate generators, grouped by grade.
    let grade_of = |x: usize, y: usize, b: super::algebra::PathElem| -> [i64; 3] {
        let (d1, d2) = alg.degree(b);
        let (gx, gy) = (xc.summands[x].g, yc.summands[y].g);
        match alg.flavor {
            Flavor::R => [d1 + gx[0] - gy[0], d2 + gx[1] - gy[1], 0],
            Flavor::Rbar => [gy[0] - gx[0], d1 + gx[1] - gy[1], d2 + gx[2] - gy[2]],
        }
    };

    let mut by_grade: BTreeMap<[i64; 3], Vec<HomGen>> = BTreeMap::new();
    for x in 0..xc.summands.len() {
        for y in 0..yc.summands.len() {
            for b in alg.hom_basis(xc.summands[x].vertex, yc.summands[y].vertex) {
                by_grade
                    .entry(grade_of(x, y, b))
                    .or_default()
                    .push(HomGen { x, y, b });
            }
        }
    }
    for gens in by_grade.values_mut() {
        gens.sort();
    }

    // Differential of one generator, as (target, coefficient) pairs.
    let differential = |g: &HomGen, grade: [i64; 3]| -> Vec<(HomGen, Coeff)> {
        let mut out: BTreeMap<HomGen, Coeff> = BTreeMap::new();
        // d_Y . f
        for (&(y1, y2), (c, q)) in &yc.entries {
            if y1 != g.y {
                continue;
            }
            if let Some(p) = alg.compose(*q, g.b) {
                let gen = HomGen { x: g.x, y: y2, b: p };
                *out.entry(gen).or_insert_with(Coeff::zero) += c;
            }
        }
        // -(-1)^{|f|} f . d_X
        let sign = if grade[0].rem_euclid(2) == 0 { -1 } else { 1 };
        for (&(x1, x2), (c, q)) in &xc.entries {
            if x2 != g.x {
                continue;
            }
            if let Some(p) = alg.compose(g.b, *q) {
                let gen = HomGen { x: x1, y: g.y, b: p };
                *out.entry(gen).or_insert_with(Coeff::zero) +=
                    c * super::complex::int(sign);
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    };

    // Rank of D restricted to a grade slice.
    let step = [1i64, 0, 0];
    let slice_rank = |grade: [i64; 3]| -> usize {
        let Some(sources) = by_grade.get(&grade) else { return 0 };
        let target_grade = [grade[0] + step[0], grade[1] + step[1], grade[2] + step[2]];
        let Some(targets) = by_grade.get(&target_grade) else { return 0 };
        let tindex: BTreeMap<HomGen, usize> =
            targets.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut rows = Vec::with_capacity(sources.len());
        for g in sources {
            let mut row = vec![Coeff::zero(); targets.len()];
            for (tg, c) in differential(g, grade) {
                row[tindex[&tg]] = c;
            }
            rows.push(row);
        }
        rank(rows)
    };

    let mut dims: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    for (&grade, gens) in &by_grade {
        let below = [grade[0] - step[0], grade[1] - step[1], grade[2] - step[2]];
        let dim = gens.len() - slice_rank(grade) - slice_rank(below);
        if dim > 0 {
            dims.insert(grade, dim);
        }
    }
    HomTable { flavor: alg.flavor, dims }
}
