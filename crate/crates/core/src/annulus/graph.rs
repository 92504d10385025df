//! Breadth-first exploration of the oriented exchange graph of forward
//! flips, optionally quotiented by the rotation equivalence.

use super::{AnnulusError, Diagonal, NAngulation};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub flipped: Diagonal,
}

#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    pub nodes: Vec<NAngulation>,
    pub edges: Vec<GraphEdge>,
    /// Depth at which each node was first reached.
    pub depth: Vec<usize>,
}

impl ExchangeGraph {
    /// BFS of forward flips from `start` to the given depth.  With
    /// `quotient` the vertices are rotation-equivalence classes.
    pub fn explore(
        start: &NAngulation,
        depth: usize,
        quotient: bool,
    ) -> Result<ExchangeGraph, AnnulusError> {
        let canon = |a: &NAngulation| -> NAngulation {
            if quotient {
                a.orbit_canonical()
            } else {
                a.clone()
            }
        };
        let root = canon(start);
        let mut index: HashMap<NAngulation, usize> = HashMap::new();
        index.insert(root.clone(), 0);
        let mut nodes = vec![root];
        let mut depths = vec![0usize];
        let mut edges = Vec::new();
        let mut frontier = vec![0usize];
        for level in 0..depth {
            let mut next_frontier = Vec::new();
            for &u in &frontier {
                let node = nodes[u].clone();
                for d in node.diagonals().to_vec() {
                    let flipped = node.flip_forward(&d)?;
                    let rep = canon(&flipped);
                    let v = match index.get(&rep) {
                        Some(&v) => v,
                        None => {
                            let v = nodes.len();
                            index.insert(rep.clone(), v);
                            nodes.push(rep);
                            depths.push(level + 1);
                            next_frontier.push(v);
                            v
                        }
                    };
                    edges.push(GraphEdge { from: u, to: v, flipped: d });
                }
            }
            frontier = next_frontier;
        }
        Ok(ExchangeGraph { nodes, edges, depth: depths })
    }

    /// Stable DOT rendering; node names are hashes of the canonical form.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph exchange {\n");
        for (k, node) in self.nodes.iter().enumerate() {
            let name = node_name(node);
            out.push_str(&format!(
                "  n{k} [label=\"{name}\", tooltip=\"{}\"];\n",
                describe(node)
            ));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.from,
                e.to,
                diagonal_label(&e.flipped)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn diagonal_label(d: &Diagonal) -> String {
    match *d {
        Diagonal::Bridge { e, i, w } => format!("B({e},{i},{w})"),
        Diagonal::Exterior { start, span } => format!("E({start},+{span})"),
        Diagonal::Interior { start, span } => format!("I({start},+{span})"),
    }
}

fn describe(a: &NAngulation) -> String {
    a.diagonals()
        .iter()
        .map(diagonal_label)
        .collect::<Vec<_>>()
        .join(" ")
}

/// FNV-1a over the canonical description; stable across runs.
fn node_name(a: &NAngulation) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in describe(a).bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}
