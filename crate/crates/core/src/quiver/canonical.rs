//! Canonical labeling and mutation classes.
//!
//! The canonical form minimizes the serialized multiplicity tensor over
//! vertex permutations.  Vertices are first partitioned by a local
//! invariant (the multiset of incident colored degrees) and only
//! permutations respecting the partition are tried, which keeps the
//! search exhaustive but prunes most of the factorial blowup.

use super::{ColoredQuiver, QuiverError};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

impl ColoredQuiver {
    fn serialized(&self) -> Vec<u32> {
        let n = self.vertices();
        let mut out = Vec::with_capacity(n * n * self.colors());
        for i in 0..n {
            for j in 0..n {
                for c in 0..self.colors() {
                    out.push(self.count(i, j, c));
                }
            }
        }
        out
    }

    /// Invariant key of a vertex under relabeling.
    fn vertex_key(&self, v: usize) -> Vec<(usize, u32, u32)> {
        let mut counts: BTreeMap<usize, (u32, u32)> = BTreeMap::new();
        for u in 0..self.vertices() {
            if u == v {
                continue;
            }
            for c in 0..self.colors() {
                let e = counts.entry(c).or_default();
                e.0 += self.count(v, u, c);
                e.1 += self.count(u, v, c);
            }
        }
        let mut key: Vec<(usize, u32, u32)> = counts
            .into_iter()
            .map(|(c, (o, i))| (c, o, i))
            .collect();
        key.sort();
        key
    }

    /// Canonical form together with the permutation realizing it
    /// (`perm[i]` = canonical label of vertex `i`).
    pub fn canonical_form(&self) -> (ColoredQuiver, Vec<usize>) {
        let n = self.vertices();
        // Group vertices by invariant; blocks in key order.
        let mut blocks: BTreeMap<Vec<(usize, u32, u32)>, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            blocks.entry(self.vertex_key(v)).or_default().push(v);
        }
        let blocks: Vec<Vec<usize>> = blocks.into_values().collect();

        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        let mut assignment = vec![usize::MAX; n];
        let mut next_label = 0usize;
        permute_blocks(
            self,
            &blocks,
            0,
            &mut assignment,
            &mut next_label,
            &mut best,
        );
        let (_, perm) = best.expect("at least one labeling");
        (self.relabel(&perm), perm)
    }

    /// BFS of the mutation class modulo canonical form.  Errors out when
    /// more than `bound` distinct quivers appear.
    pub fn mutation_class(&self, bound: usize) -> Result<MutationClass, QuiverError> {
        let (root, _) = self.canonical_form();
        let mut seen: BTreeSet<ColoredQuiver> = BTreeSet::new();
        seen.insert(root.clone());
        let mut queue = VecDeque::from([root]);
        while let Some(q) = queue.pop_front() {
            for v in 0..q.vertices() {
                let (m, _) = q.mutate(v)?.canonical_form();
                if seen.insert(m.clone()) {
                    if seen.len() > bound {
                        return Err(QuiverError::BoundExceeded(bound));
                    }
                    queue.push_back(m);
                }
            }
        }
        Ok(MutationClass { quivers: seen.into_iter().collect() })
    }
}

fn permute_blocks(
    q: &ColoredQuiver,
    blocks: &[Vec<usize>],
    block: usize,
    assignment: &mut Vec<usize>,
    next_label: &mut usize,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    if block == blocks.len() {
        let candidate = q.relabel(assignment);
        let ser = candidate.serialized();
        let better = match best {
            None => true,
            Some((b, _)) => ser < *b,
        };
        if better {
            *best = Some((ser, assignment.clone()));
        }
        return;
    }
    let members = &blocks[block];
    permute_within(q, blocks, block, members, 0, assignment, next_label, best);
}

#[allow(clippy::too_many_arguments)]
fn permute_within(
    q: &ColoredQuiver,
    blocks: &[Vec<usize>],
    block: usize,
    members: &[usize],
    chosen: usize,
    assignment: &mut Vec<usize>,
    next_label: &mut usize,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    if chosen == members.len() {
        permute_blocks(q, blocks, block + 1, assignment, next_label, best);
        return;
    }
    for &v in members {
        if assignment[v] != usize::MAX {
            continue;
        }
        assignment[v] = *next_label;
        *next_label += 1;
        permute_within(q, blocks, block, members, chosen + 1, assignment, next_label, best);
        *next_label -= 1;
        assignment[v] = usize::MAX;
    }
}

/// The set of canonical forms reachable by mutation.
#[derive(Debug, Clone)]
pub struct MutationClass {
    pub quivers: Vec<ColoredQuiver>,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.quivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quivers.is_empty()
    }

    pub fn contains(&self, q: &ColoredQuiver) -> bool {
        let (c, _) = q.canonical_form();
        self.quivers.binary_search(&c).is_ok()
    }
}
