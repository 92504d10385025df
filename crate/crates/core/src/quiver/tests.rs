use super::*;
use crate::annulus::{Diagonal, MarkedAnnulus, NAngulation, Rotation};
use proptest::prelude::*;

/// Classical Fomin-Zelevinsky mutation of a skew-symmetric exchange
/// matrix; the independent oracle for the N=3 case.
pub(crate) fn fz_mutate(b: &[Vec<i64>], v: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == v || j == v {
                -b[i][j]
            } else {
                b[i][j] + b[i][v].signum() * (b[i][v] * b[v][j]).max(0)
            };
        }
    }
    out
}

/// Two-color dictionary: q^(0) = arrows, q^(1) = reversed arrows.
pub(crate) fn colored_of_matrix(b: &[Vec<i64>]) -> ColoredQuiver {
    let n = b.len();
    let mut q = ColoredQuiver::empty(3, n);
    for i in 0..n {
        for j in 0..n {
            if b[i][j] > 0 {
                q.add_arrow_pair(i, j, 0, b[i][j] as u32);
            }
        }
    }
    q
}

pub(crate) fn matrix_of_colored(q: &ColoredQuiver) -> Vec<Vec<i64>> {
    let n = q.vertices();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = q.count(i, j, 0) as i64 - q.count(j, i, 0) as i64;
        }
    }
    b
}

/// All skew matrices without 2-cycles on `n` vertices, entries in
/// `-max ..= max`.
pub(crate) fn skew_matrices(n: usize, max: i64) -> Vec<Vec<Vec<i64>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let vals: Vec<i64> = (-max..=max).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, vec![vec![0i64; n]; n])];
    while let Some((k, b)) = stack.pop() {
        if k == pairs.len() {
            out.push(b);
            continue;
        }
        let (i, j) = pairs[k];
        for &v in &vals {
            let mut nb = b.clone();
            nb[i][j] = v;
            nb[j][i] = -v;
            stack.push((k + 1, nb));
        }
    }
    out
}

#[test]
fn single_arrow_mutation_shifts_colors() {
    // q[0][1][0] = 1, mutate at 1: colors shift to 1 and N-3.
    for n_gon in [4usize, 5, 6] {
        let mut q = ColoredQuiver::empty(n_gon, 2);
        q.add_arrow_pair(0, 1, 0, 1);
        let m = q.mutate(1).unwrap();
        assert_eq!(m.count(0, 1, 1), 1);
        assert_eq!(m.count(1, 0, n_gon - 3), 1);
    }
}

#[test]
fn mutation_matches_classical_oracle_rank3() {
    for b in skew_matrices(3, 2) {
        let q = colored_of_matrix(&b);
        for v in 0..3 {
            let colored = q.mutate(v).unwrap();
            let classical = fz_mutate(&b, v);
            assert_eq!(
                matrix_of_colored(&colored),
                classical,
                "b = {b:?}, v = {v}"
            );
            // The dictionary image must be 2-acyclic again.
            for i in 0..3 {
                for j in 0..3 {
                    assert!(colored.count(i, j, 0) == 0 || colored.count(j, i, 0) == 0);
                }
            }
        }
    }
}

#[test]
fn n3_mutation_is_involutive() {
    for b in skew_matrices(3, 2) {
        let q = colored_of_matrix(&b);
        for v in 0..3 {
            assert_eq!(q.mutate(v).unwrap().mutate(v).unwrap(), q);
        }
    }
}

#[test]
fn mutation_commutes_with_relabeling() {
    let mut q = ColoredQuiver::empty(4, 3);
    q.add_arrow_pair(0, 1, 0, 1);
    q.add_arrow_pair(1, 2, 1, 2);
    let perm = vec![2usize, 0, 1];
    for v in 0..3 {
        let lhs = q.relabel(&perm).mutate(perm[v]).unwrap();
        let rhs = q.mutate(v).unwrap().relabel(&perm);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn form_diagonal_and_offdiagonal_values() {
    for n_gon in [3usize, 4, 5, 6] {
        let mut q = ColoredQuiver::empty(n_gon, 2);
        q.add_arrow_pair(0, 1, 0, 1);
        let f = q.form();
        let expect_diag = if n_gon % 2 == 0 { 2 } else { 0 };
        assert_eq!(f.gram[0][0], expect_diag);
        assert_eq!(f.gram[0][1], -1);
        let sign = if (n_gon - 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(f.gram[1][0], -sign);
        assert!(f.parity_ok());
        // pair is the bilinear extension.
        assert_eq!(f.pair(&[1, 0], &[0, 1]), f.gram[0][1]);
        assert_eq!(f.pair(&[1, 1], &[1, 1]), f.gram.iter().flatten().sum::<i64>());
    }
}

#[test]
fn wallcross_identity_off_v_column() {
    let q = ColoredQuiver::empty(5, 3);
    let f = q.wallcross_map(1).unwrap();
    assert_eq!(f[0], vec![1, 0, 0]);
    assert_eq!(f[1], vec![0, -1, 0]);
    assert_eq!(f[2], vec![0, 0, 1]);
    assert_eq!(det(&f), -1);
}

#[test]
fn wallcross_is_isometry_on_samples() {
    let mut samples: Vec<ColoredQuiver> = Vec::new();
    for n_gon in [3usize, 4, 5] {
        let mut q = ColoredQuiver::empty(n_gon, 3);
        q.add_arrow_pair(0, 1, 0, 1);
        q.add_arrow_pair(1, 2, 0, 1);
        samples.push(q.clone());
        let mut cur = q;
        for v in [0usize, 1, 2, 1, 0] {
            cur = cur.mutate(v).unwrap();
            samples.push(cur.clone());
        }
    }
    for q in &samples {
        let n = q.vertices();
        for v in 0..n {
            let f = q.wallcross_map(v).unwrap();
            assert_eq!(det(&f).abs(), 1, "F_v must be unimodular");
            let fq = q.form();
            let fm = q.mutate(v).unwrap().form();
            for i in 0..n {
                for j in 0..n {
                    let mut x = vec![0i64; n];
                    let mut y = vec![0i64; n];
                    x[i] = 1;
                    y[j] = 1;
                    let lhs = fq.pair(&apply_matrix(&f, &x), &apply_matrix(&f, &y));
                    let rhs = fm.pair(&x, &y);
                    assert_eq!(lhs, rhs, "N={}, v={v}, ({i},{j})", q.n_gon);
                }
            }
        }
    }
}

#[test]
fn canonical_form_is_idempotent() {
    let mut q = ColoredQuiver::empty(4, 4);
    q.add_arrow_pair(2, 0, 1, 1);
    q.add_arrow_pair(3, 1, 0, 2);
    let (c1, _) = q.canonical_form();
    let (c2, _) = c1.canonical_form();
    assert_eq!(c1, c2);
    // Canonical form is invariant under relabeling.
    let (c3, _) = q.relabel(&[3, 2, 1, 0]).canonical_form();
    assert_eq!(c1, c3);
}

#[test]
fn mutation_class_of_two_vertex_quiver_is_finite_and_closed() {
    let mut q = ColoredQuiver::empty(4, 2);
    q.add_arrow_pair(0, 1, 0, 1);
    let class = q.mutation_class(100).unwrap();
    assert!(!class.is_empty());
    assert!(class.len() <= 10);
    for member in &class.quivers {
        for v in 0..member.vertices() {
            assert!(class.contains(&member.mutate(v).unwrap()));
        }
    }
}

#[test]
fn mutation_class_bound_is_enforced() {
    let mut q = ColoredQuiver::empty(4, 2);
    q.add_arrow_pair(0, 1, 0, 1);
    assert!(matches!(
        q.mutation_class(1),
        Err(QuiverError::BoundExceeded(1))
    ));
}

#[test]
fn p11_quiver_is_the_kronecker() {
    let ann = MarkedAnnulus::new(3, 2, 1).unwrap();
    let ang = NAngulation::new(
        ann,
        vec![
            Diagonal::Bridge { e: 0, i: 0, w: 0 },
            Diagonal::Bridge { e: 0, i: 0, w: 1 },
        ],
    )
    .unwrap();
    let q = ColoredQuiver::of_angulation(&ang).unwrap();
    assert_eq!(q.count(0, 1, 0), 2);
    assert_eq!(q.count(1, 0, 1), 2);
    assert_eq!(q.count(0, 1, 1), 0);
    assert_eq!(q.count(1, 0, 0), 0);
}

#[test]
fn distant_diagonals_have_no_arrows() {
    let ann = MarkedAnnulus::new(3, 4, 2).unwrap();
    let ang = NAngulation::standard(ann);
    let q = ColoredQuiver::of_angulation(&ang).unwrap();
    let faces = ang.faces().unwrap();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let share_face = faces.iter().any(|f| {
                let slots: Vec<usize> = f.diagonal_slots().map(|(_, d)| d).collect();
                slots.contains(&i) && slots.contains(&j)
            });
            let arrows: u32 = (0..q.colors()).map(|c| q.count(i, j, c)).sum();
            assert_eq!(share_face, arrows > 0);
        }
    }
}

#[test]
fn bracket_rotation_preserves_quiver() {
    for (n_gon, rank, p) in [(3usize, 3usize, 1usize), (4, 3, 2), (5, 3, 1)] {
        let ann = MarkedAnnulus::new(n_gon, rank, p).unwrap();
        let ang = NAngulation::standard(ann);
        let q = ColoredQuiver::of_angulation(&ang).unwrap();
        let turned = ang.rotate(Rotation::Bracket(1)).unwrap();
        let q_turned = ColoredQuiver::of_angulation(&turned).unwrap();
        // Match vertices through the diagonal bijection d -> d[1].
        let mut perm = vec![0usize; rank];
        for (k, d) in ang.diagonals().iter().enumerate() {
            let image = NAngulation::rotate_diagonal(d, &ann, Rotation::Bracket(1));
            perm[k] = turned
                .diagonals()
                .iter()
                .position(|x| *x == image)
                .expect("rotated diagonal present");
        }
        assert_eq!(q.relabel(&perm), q_turned, "regime ({n_gon},{rank},{p})");
    }
}

#[test]
fn flip_commutes_with_mutation_on_small_regimes() {
    for (n_gon, rank, p) in [(3usize, 2usize, 1usize), (4, 2, 1), (5, 3, 1)] {
        let ann = MarkedAnnulus::new(n_gon, rank, p).unwrap();
        let ang = NAngulation::standard(ann);
        for d in ang.diagonals().to_vec() {
            assert!(
                ColoredQuiver::commutation_check(&ang, &d).unwrap(),
                "regime ({n_gon},{rank},{p}), diagonal {d:?}"
            );
        }
    }
}

#[test]
fn forward_then_backward_restores_quiver() {
    let ann = MarkedAnnulus::new(4, 3, 1).unwrap();
    let ang = NAngulation::standard(ann);
    let q = ColoredQuiver::of_angulation(&ang).unwrap();
    let d = ang.diagonals()[1];
    let flipped = ang.flip_forward(&d).unwrap();
    let sharp = flipped
        .diagonals()
        .iter()
        .copied()
        .find(|x| !ang.contains(x))
        .unwrap();
    let back = flipped.flip_backward(&sharp).unwrap();
    assert_eq!(ColoredQuiver::of_angulation(&back).unwrap(), q);
}

#[test]
fn json_round_trip() {
    let mut q = ColoredQuiver::empty(5, 3);
    q.add_arrow_pair(0, 2, 1, 2);
    q.add_arrow_pair(1, 2, 0, 1);
    let v = q.to_json();
    assert_eq!(ColoredQuiver::from_json(&v).unwrap(), q);
}

#[test]
fn json_rejects_duality_violations() {
    let v = serde_json::json!({
        "N": 4, "n": 2,
        "arrows": [{"from": 0, "to": 1, "color": 0, "mult": 1}]
    });
    assert!(ColoredQuiver::from_json(&v).is_err());
}

proptest! {
    #[test]
    fn mutation_preserves_duality_and_loops(
        arrows in proptest::collection::vec((0usize..4, 0usize..4, 0usize..3, 1u32..3), 0..5),
        v in 0usize..4,
    ) {
        let mut q = ColoredQuiver::empty(4, 4);
        for (i, j, c, mult) in arrows {
            if i != j && (0..q.colors()).all(|cc| q.count(i, j, cc) == 0 && q.count(j, i, cc) == 0) {
                q.add_arrow_pair(i, j, c, mult);
            }
        }
        let m = q.mutate(v).unwrap();
        prop_assert!(m.validate().is_ok());
    }
}

#[test]
fn quotient_classes_biject_with_reachable_quivers() {
    // The quiver map is injective on rotation classes: distinct quotient
    // vertices of the exchange graph carry distinct canonical quivers,
    // and flips land on mutated quivers (checked edge-wise elsewhere).
    use crate::annulus::ExchangeGraph;
    use std::collections::BTreeSet;
    for (n_gon, rank, p) in [(3usize, 2usize, 1usize), (4, 2, 1), (3, 3, 1)] {
        let ann = MarkedAnnulus::new(n_gon, rank, p).unwrap();
        let start = NAngulation::standard(ann);
        let graph = ExchangeGraph::explore(&start, 3, true).unwrap();
        let mut canon_quivers: BTreeSet<ColoredQuiver> = BTreeSet::new();
        for node in &graph.nodes {
            let (q, _) = ColoredQuiver::of_angulation(node).unwrap().canonical_form();
            canon_quivers.insert(q);
        }
        assert_eq!(
            canon_quivers.len(),
            graph.nodes.len(),
            "rotation classes must map injectively to quivers, regime ({n_gon},{rank},{p})"
        );
    }
}
