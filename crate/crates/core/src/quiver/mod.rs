//! Colored quivers and their mutation.
//!
//! Arrows carry colors in `{0, .., N-2}` subject to the duality
//! `q[i][j][c] = q[j][i][N-2-c]`.  Mutation at a vertex follows the
//! three-step rule: transfer through color-0 arrows, cancel mixed colors,
//! then shift colors at the mutated vertex cyclically (mod `N-1`).

mod canonical;
mod from_angulation;

pub use canonical::MutationClass;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid colored quiver: {0}")]
    Invalid(String),
    #[error("mutation class exceeded the bound of {0} quivers")]
    BoundExceeded(usize),
}

/// A colored quiver on vertices `0..n` with `N-1` colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredQuiver {
    pub n_gon: usize,
    /// `q[i][j][c]` = number of arrows `i -> j` of color `c`.
    q: Vec<Vec<Vec<u32>>>,
}

impl ColoredQuiver {
    pub fn empty(n_gon: usize, vertices: usize) -> ColoredQuiver {
        assert!(n_gon >= 3);
        ColoredQuiver {
            n_gon,
            q: vec![vec![vec![0; n_gon - 1]; vertices]; vertices],
        }
    }

    pub fn vertices(&self) -> usize {
        self.q.len()
    }

    pub fn colors(&self) -> usize {
        self.n_gon - 1
    }

    pub fn count(&self, from: usize, to: usize, color: usize) -> u32 {
        self.q[from][to][color]
    }

    /// Adds `mult` arrows `from -> to` of the given color together with
    /// the dual arrows `to -> from` of color `N-2-c`.
    pub fn add_arrow_pair(&mut self, from: usize, to: usize, color: usize, mult: u32) {
        assert_ne!(from, to, "colored quivers have no loops");
        let dual = self.n_gon - 2 - color;
        self.q[from][to][color] += mult;
        self.q[to][from][dual] += mult;
    }

    /// Checks duality, loop-freeness and the single-color normal form.
    pub fn validate(&self) -> Result<(), QuiverError> {
        let n = self.vertices();
        let m = self.n_gon - 2;
        for i in 0..n {
            for c in 0..=m {
                if self.q[i][i][c] != 0 {
                    return Err(QuiverError::Invalid(format!("loop at vertex {i}")));
                }
            }
            for j in 0..n {
                for c in 0..=m {
                    if self.q[i][j][c] != self.q[j][i][m - c] {
                        return Err(QuiverError::Invalid(format!(
                            "duality fails at ({i},{j},{c})"
                        )));
                    }
                }
                if i != j {
                    let present = (0..=m).filter(|&c| self.q[i][j][c] > 0).count();
                    if present > 1 {
                        return Err(QuiverError::Invalid(format!(
                            "mixed colors between {i} and {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Colored quiver mutation at `v`.
    pub fn mutate(&self, v: usize) -> Result<ColoredQuiver, QuiverError> {
        let n = self.vertices();
        if v >= n {
            return Err(QuiverError::VertexOutOfRange(v));
        }
        let m = self.n_gon - 2;
        let mut q = self.q.clone();

        // Step 1: for each pair a -(c)-> v -(0)-> g with a != g, add
        // a -(c)-> g and g -(N-2-c)-> a, once per pair of arrows.
        for a in 0..n {
            if a == v {
                continue;
            }
            for g in 0..n {
                if g == v || g == a {
                    continue;
                }
                let out0 = self.q[v][g][0];
                if out0 == 0 {
                    continue;
                }
                for c in 0..=m {
                    let mult = self.q[a][v][c] * out0;
                    if mult > 0 {
                        q[a][g][c] += mult;
                        q[g][a][m - c] += mult;
                    }
                }
            }
        }

        // Step 2: between every ordered pair, remove equal numbers of
        // arrows of each color until a single color remains.
        for a in 0..n {
            for g in 0..n {
                if a == g {
                    continue;
                }
                loop {
                    let present: Vec<usize> = (0..=m).filter(|&c| q[a][g][c] > 0).collect();
                    if present.len() <= 1 {
                        break;
                    }
                    let min = present.iter().map(|&c| q[a][g][c]).min().unwrap();
                    for &c in &present {
                        q[a][g][c] -= min;
                    }
                }
            }
        }

        // Step 3: colors into v gain one, colors out of v lose one,
        // cyclically in {0, .., N-2}.
        let mut shifted = q.clone();
        for a in 0..n {
            if a == v {
                continue;
            }
            for c in 0..=m {
                shifted[a][v][c] = q[a][v][(c + m) % (m + 1)];
                shifted[v][a][c] = q[v][a][(c + 1) % (m + 1)];
            }
        }

        let out = ColoredQuiver { n_gon: self.n_gon, q: shifted };
        out.validate()?;
        Ok(out)
    }

    /// Relabels vertices by `perm` (vertex `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> ColoredQuiver {
        let n = self.vertices();
        let mut out = ColoredQuiver::empty(self.n_gon, n);
        for i in 0..n {
            for j in 0..n {
                for c in 0..self.colors() {
                    out.q[perm[i]][perm[j]][c] = self.q[i][j][c];
                }
            }
        }
        out
    }

    /// The lattice of the quiver with its (skew-)symmetric bilinear form.
    pub fn form(&self) -> LatticeForm {
        let n = self.vertices();
        let m = self.n_gon - 2;
        let diag: i64 = if self.n_gon % 2 == 0 { 2 } else { 0 };
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for c in 0..=m {
                    let sign = if c % 2 == 0 { 1 } else { -1 };
                    s += sign * self.q[i][j][c] as i64;
                }
                gram[i][j] = if i == j { diag } else { -s };
            }
        }
        LatticeForm { n_gon: self.n_gon, gram }
    }

    /// The wall-crossing lattice map `F_v : L_{mu_v Q} -> L_Q`, as a matrix
    /// whose columns are the images of the mutated basis.  Basis vector j
    /// maps to `alpha_j + q0[v][j] alpha_v` for `j != v` and to `-alpha_v`
    /// for `j = v`.
    pub fn wallcross_map(&self, v: usize) -> Result<Vec<Vec<i64>>, QuiverError> {
        let n = self.vertices();
        if v >= n {
            return Err(QuiverError::VertexOutOfRange(v));
        }
        let mut f = vec![vec![0i64; n]; n];
        for j in 0..n {
            if j == v {
                f[v][v] = -1;
            } else {
                f[j][j] = 1;
                f[v][j] = self.q[v][j][0] as i64;
            }
        }
        Ok(f)
    }

    // -- JSON ---------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        let mut arrows = Vec::new();
        for i in 0..self.vertices() {
            for j in 0..self.vertices() {
                for c in 0..self.colors() {
                    if self.q[i][j][c] > 0 {
                        arrows.push(ArrowJson { from: i, to: j, color: c, mult: self.q[i][j][c] });
                    }
                }
            }
        }
        serde_json::to_value(QuiverJson {
            n_gon: self.n_gon,
            n: self.vertices(),
            arrows,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ColoredQuiver, QuiverError> {
        let raw: QuiverJson = serde_json::from_value(v.clone())
            .map_err(|e| QuiverError::Invalid(format!("bad quiver json: {e}")))?;
        if raw.n_gon < 3 {
            return Err(QuiverError::Invalid("need N >= 3".into()));
        }
        let mut q = ColoredQuiver::empty(raw.n_gon, raw.n);
        for a in &raw.arrows {
            if a.from >= raw.n || a.to >= raw.n {
                return Err(QuiverError::VertexOutOfRange(a.from.max(a.to)));
            }
            if a.color >= raw.n_gon - 1 {
                return Err(QuiverError::Invalid(format!("color {} out of range", a.color)));
            }
            q.q[a.from][a.to][a.color] += a.mult;
        }
        q.validate()?;
        Ok(q)
    }

    /// DOT rendering with color-labeled edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for i in 0..self.vertices() {
            out.push_str(&format!("  v{i};\n"));
        }
        for i in 0..self.vertices() {
            for j in 0..self.vertices() {
                for c in 0..self.colors() {
                    let mult = self.q[i][j][c];
                    if mult > 0 {
                        out.push_str(&format!("  v{i} -> v{j} [label=\"({c}) x{mult}\"];\n"));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    from: usize,
    to: usize,
    color: usize,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    #[serde(rename = "N")]
    n_gon: usize,
    n: usize,
    arrows: Vec<ArrowJson>,
}

/// Integer lattice with the bilinear form of a colored quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeForm {
    pub n_gon: usize,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeForm {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Bilinear extension `<x, y>`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        assert!(x.len() == n && y.len() == n);
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    /// True when the gram matrix has the parity required by N: symmetric
    /// for even N, skew-symmetric for odd N.
    pub fn parity_ok(&self) -> bool {
        let n = self.rank();
        let sign = if self.n_gon % 2 == 0 { 1 } else { -1 };
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == sign * self.gram[j][i]))
    }
}

/// Applies an integer matrix to a vector.
pub fn apply_matrix(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let n = m.len();
    let mut out = vec![0i64; n];
    for (i, row) in m.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate() {
            out[i] += mij * x[j];
        }
    }
    out
}

/// Determinant by fraction-free elimination (small matrices).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut denom = 1i128;
    for k in 0..n - 1 {
        let pivot_row = (k..n).find(|&r| a[r][k] != 0);
        let Some(pr) = pivot_row else { return 0 };
        if pr != k {
            a.swap(pr, k);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / denom;
            }
            a[r][k] = 0;
        }
        denom = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests;
