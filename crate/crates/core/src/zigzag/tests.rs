use super::*;
use proptest::prelude::*;

fn alg(n: usize, n_gon: usize) -> Zigzag {
    Zigzag::new(n, n_gon, Flavor::R)
}

fn albar(n: usize, n_gon: usize) -> Zigzag {
    Zigzag::new(n, n_gon, Flavor::Rbar)
}

#[test]
fn algebra_dimension_is_4n() {
    for n in 2..=5 {
        let a = alg(n, 4);
        let mut dim = 0;
        for i in 1..=n {
            for j in 1..=n {
                dim += a.hom_basis(i, j).len();
            }
        }
        assert_eq!(dim, 4 * n);
    }
}

#[test]
fn hom_basis_profile() {
    // (i)A(i) is two-dimensional with deg1 in {0, N}; distant pairs vanish.
    for n in [3usize, 4, 5] {
        for n_gon in [3usize, 4, 5] {
            let a = alg(n, n_gon);
            for i in 1..=n {
                let small = a.hom_basis(i, i);
                assert_eq!(small.len(), 2);
                let degs: Vec<i64> = small.iter().map(|&b| a.degree(b).0).collect();
                assert!(degs.contains(&0) && degs.contains(&(n_gon as i64)));
                for j in 1..=n {
                    let dist = (i as i64 - j as i64).rem_euclid(n as i64).min(
                        (j as i64 - i as i64).rem_euclid(n as i64),
                    );
                    if dist >= 2 {
                        assert!(a.hom_basis(i, j).is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn loops_have_zero_second_degree() {
    for n in 2..=5 {
        let a = alg(n, 5);
        for i in 1..=n {
            assert_eq!(a.degree(PathElem::L(i)), (5, 0));
        }
        let b = albar(n, 5);
        for i in 1..=n {
            assert_eq!(b.degree(PathElem::L(i)), (1, 0));
        }
    }
}

#[test]
fn products_respect_relations() {
    let a = alg(4, 4);
    // (i|i+1)(i+1|i) = (i|i-1|i) = loop at i, both ways.
    assert_eq!(a.compose(PathElem::F(1), PathElem::B(2)), Some(PathElem::L(1)));
    assert_eq!(a.compose(PathElem::B(1), PathElem::F(4)), Some(PathElem::L(1)));
    // Straight-through paths vanish.
    assert_eq!(a.compose(PathElem::F(1), PathElem::F(2)), None);
    assert_eq!(a.compose(PathElem::B(2), PathElem::B(1)), None);
    // Length three vanishes.
    assert_eq!(a.compose(PathElem::L(1), PathElem::F(1)), None);
    // Grading additivity on the surviving products.
    for i in 1..=4usize {
        let f = PathElem::F(i);
        let b = PathElem::B(a.next(i));
        let (d1f, d2f) = a.degree(f);
        let (d1b, d2b) = a.degree(b);
        assert_eq!((d1f + d1b, d2f + d2b), a.degree(PathElem::L(i)));
    }
}

#[test]
fn twist_of_own_projective_is_shift() {
    // minimize(T_i(P_i)) = P_i[1-N].
    for (n, n_gon) in [(3usize, 4usize), (4, 4), (5, 5), (3, 5), (2, 3)] {
        let a = alg(n, n_gon);
        for i in 1..=n {
            let t = a.projective(i).twist(i, Direction::Forward).minimize();
            assert!(
                t.is_single(i, [1 - n_gon as i64, 0, 0]),
                "n={n}, N={n_gon}, i={i}: got {}",
                t.describe()
            );
        }
    }
}

#[test]
fn twist_fixes_distant_projectives() {
    let a = alg(5, 4);
    let t = a.projective(3).twist(1, Direction::Forward).minimize();
    assert!(t.is_single(3, [0, 0, 0]));
}

#[test]
fn twist_inverse_cancels_twist() {
    for (n, n_gon) in [(3usize, 4usize), (4, 5), (5, 4), (2, 3)] {
        let a = alg(n, n_gon);
        for i in 1..=n {
            for j in 1..=n {
                let x = a.projective(j).twist(i, Direction::Forward);
                let back = x.twist(i, Direction::Inverse).minimize();
                assert!(
                    back.is_single(j, [0, 0, 0]),
                    "n={n}, N={n_gon}, i={i}, j={j}: got {}",
                    back.describe()
                );
            }
        }
    }
}

#[test]
fn rho_cycles_projectives() {
    let a = alg(4, 4);
    let r = a.projective(1).rho(Direction::Forward);
    assert!(r.is_single(2, [0, 0, 0]));
    let rn = a.projective(4).rho(Direction::Forward);
    assert!(rn.is_single(1, [0, -1, 0]));
    let inv = a.projective(1).rho(Direction::Forward).rho(Direction::Inverse);
    assert!(inv.is_single(1, [0, 0, 0]));
}

#[test]
fn rho_n_is_second_shift() {
    for (n, n_gon) in [(3usize, 4usize), (4, 4), (5, 5), (3, 5), (4, 3)] {
        let a = alg(n, n_gon);
        for i in 1..=n {
            let mut x = a.projective(i);
            for _ in 0..n {
                x = x.rho(Direction::Forward);
            }
            assert!(
                x.is_single(i, [0, -1, 0]),
                "n={n}, N={n_gon}, i={i}: got {}",
                x.describe()
            );
        }
    }
}

#[test]
fn minimize_kills_contractible_pair() {
    let a = alg(3, 4);
    // [P_1 --e--> P_1] with matching grades is contractible.
    let mut x = a.projective(1);
    x.summands.push(Summand { vertex: 1, g: [1, 0, 0] });
    x.entries
        .insert((1, 0), (complex_one(), PathElem::E(1)));
    assert!(x.validate().is_ok());
    let m = x.minimize();
    assert!(m.summands.is_empty());
}

fn complex_one() -> num_rational::BigRational {
    num_traits::One::one()
}

#[test]
fn minimize_is_idempotent() {
    let a = alg(3, 4);
    let x = a
        .projective(1)
        .twist(1, Direction::Forward)
        .twist(2, Direction::Forward);
    let m = x.minimize();
    let m2 = m.clone().minimize();
    assert_eq!(m.summand_multiset(), m2.summand_multiset());
}

#[test]
fn hom_of_projectives_matches_basis() {
    let a = alg(4, 5);
    let p1 = a.projective(1);
    let p2 = a.projective(2);
    let table = a.hom(&p1, &p1);
    assert_eq!(table.total(), 2);
    assert!(table.dims.contains_key(&[0, 0, 0]));
    assert!(table.dims.contains_key(&[5, 0, 0]));
    assert_eq!(a.hom(&p1, &p2).total(), 1);
    let p3 = a.projective(3);
    assert_eq!(a.hom(&p1, &p3).total(), 0);
}

#[test]
fn hom_total_invariant_under_minimize() {
    let a = alg(3, 4);
    let raw = a
        .projective(2)
        .twist(1, Direction::Forward)
        .twist(3, Direction::Inverse);
    let min = raw.clone().minimize();
    for k in 1..=3 {
        let pk = a.projective(k);
        assert_eq!(a.hom(&pk, &raw).dims, a.hom(&pk, &min).dims);
        assert_eq!(a.hom(&raw, &pk).dims, a.hom(&min, &pk).dims);
    }
}

#[test]
fn word_inverse_pair_is_identity() {
    let a = alg(3, 4);
    let w = BraidWord::new(vec![Letter::Sigma(1, false), Letter::Sigma(1, true)]);
    for j in 1..=3 {
        assert!(a.apply_word(&w, j).is_single(j, [0, 0, 0]));
    }
}

#[test]
fn braid_relation_objectwise() {
    for (n, n_gon) in [(3usize, 4usize), (3, 5), (4, 4)] {
        let a = alg(n, n_gon);
        for i in 1..=n {
            let ip = a.next(i);
            let lhs = BraidWord::new(vec![
                Letter::Sigma(i, false),
                Letter::Sigma(ip, false),
                Letter::Sigma(i, false),
            ]);
            let rhs = BraidWord::new(vec![
                Letter::Sigma(ip, false),
                Letter::Sigma(i, false),
                Letter::Sigma(ip, false),
            ]);
            for j in 1..=n {
                let x = a.apply_word(&lhs, j);
                let y = a.apply_word(&rhs, j);
                assert!(
                    a.isomorphic_minimized(&x, &y),
                    "n={n}, N={n_gon}, i={i}, j={j}: {} vs {}",
                    x.describe(),
                    y.describe()
                );
            }
        }
    }
}

#[test]
fn rho_conjugates_twists() {
    // rho sigma_i rho^{-1} acts like sigma_{i+1}.
    for (n, n_gon) in [(3usize, 4usize), (4, 5)] {
        let a = alg(n, n_gon);
        for i in 1..=n {
            let conj = BraidWord::new(vec![
                Letter::Rho(false),
                Letter::Sigma(i, false),
                Letter::Rho(true),
            ]);
            let plain = BraidWord::sigma(a.next(i));
            for j in 1..=n {
                let x = a.apply_word(&conj, j);
                let y = a.apply_word(&plain, j);
                assert!(
                    a.isomorphic_minimized(&x, &y),
                    "n={n}, N={n_gon}, i={i}, j={j}"
                );
            }
        }
    }
}

#[test]
fn intersection_base_values() {
    let a = alg(4, 4);
    let empty = BraidWord::default();
    // I(b_i, b_i) = 1, adjacent curves share an endpoint: 1/2, distant: 0.
    assert_eq!(a.intersection_doubled(&empty, 1, 1), 2);
    assert_eq!(a.intersection_doubled(&empty, 1, 2), 1);
    assert_eq!(a.intersection_doubled(&empty, 1, 3), 0);
}

#[test]
fn pi_compare_on_empty_and_generators() {
    for (n, n_gon) in [(3usize, 4usize), (4, 4)] {
        let a = alg(n, n_gon);
        let empty = BraidWord::default();
        for i in 1..=n {
            for j in 1..=n {
                assert!(a.pi_compare(&empty, i, j));
            }
        }
        for g in 1..=n {
            let w = BraidWord::sigma(g);
            for i in 1..=n {
                for j in 1..=n {
                    assert!(a.pi_compare(&w, i, j), "w=sigma_{g}, i={i}, j={j}");
                }
            }
        }
    }
}

#[test]
fn rbar_twist_shape() {
    let a = albar(3, 4);
    let t = a.projective(1).twist(1, Direction::Forward).minimize();
    assert!(t.is_single(1, [-1, -1, 0]), "got {}", t.describe());
}

#[test]
fn triviality_verdicts() {
    let a = alg(3, 4);
    // Braid relator conjugate: trivial.
    let w = BraidWord::new(vec![
        Letter::Sigma(1, false),
        Letter::Sigma(2, false),
        Letter::Sigma(1, false),
        Letter::Sigma(2, true),
        Letter::Sigma(1, true),
        Letter::Sigma(2, true),
    ]);
    assert_eq!(a.is_trivial(&w), Triviality::Trivial);
    // rho^n is central with nu = 1.
    assert_eq!(a.is_trivial(&BraidWord::rho_power(3)), Triviality::Central(1));
    assert_eq!(a.is_trivial(&BraidWord::rho_power(6)), Triviality::Central(2));
    // A single generator is not trivial.
    match a.is_trivial(&BraidWord::sigma(1)) {
        Triviality::NonTrivial { witness, image } => {
            assert_eq!(witness, 1);
            assert_eq!(image, "P1[-3]<0>");
        }
        other => panic!("expected NonTrivial, got {other:?}"),
    }
}

#[test]
fn euler_form_matches_cyclic_quiver_gram() {
    use crate::quiver::ColoredQuiver;
    for (n, n_gon) in [(3usize, 4usize), (4, 4), (3, 5), (5, 6)] {
        let a = alg(n, n_gon);
        let mut q = ColoredQuiver::empty(n_gon, n);
        for i in 0..n {
            q.add_arrow_pair(i, (i + 1) % n, 0, 1);
        }
        let gram = q.form();
        for i in 1..=n {
            for j in 1..=n {
                let table = a.hom(&a.projective(i), &a.projective(j));
                assert_eq!(
                    table.euler(),
                    gram.gram[i - 1][j - 1],
                    "n={n}, N={n_gon}, ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn word_json_round_trip() {
    let w = BraidWord::new(vec![
        Letter::Sigma(2, false),
        Letter::Rho(true),
        Letter::Sigma(1, true),
    ]);
    let v = w.to_json(3, 4);
    let (back, n, n_gon) = BraidWord::from_json(&v).unwrap();
    assert_eq!(back, w);
    assert_eq!((n, n_gon), (3, 4));
}

#[test]
fn word_json_expands_powers() {
    let v = serde_json::json!({
        "n": 3, "N": 4,
        "letters": [{"gen": "rho", "power": -2}, {"gen": "s", "index": 2, "power": 3}]
    });
    let (w, _, _) = BraidWord::from_json(&v).unwrap();
    assert_eq!(w.len(), 5);
    assert_eq!(w.letters[0], Letter::Rho(true));
    assert_eq!(w.letters[2], Letter::Sigma(2, false));
}

/// Endpoint-sharing parity oracle.  The curve `b_k` joins punctures `k`
/// and `k+1` (mod n); a word permutes punctures through its образ in the
/// symmetric group, so `2I(b_i, w(b_j))` is odd exactly when the curves
/// share an odd number of endpoints.
pub(crate) fn shared_endpoint_count(n: usize, w: &BraidWord, i: usize, j: usize) -> usize {
    let mut perm: Vec<usize> = (0..n).collect();
    // Match the group-action convention: rightmost letter acts first, and
    // each successive letter composes on the left (applies to values).
    for l in w.letters.iter().rev() {
        perm = match *l {
            Letter::Sigma(k, _) => {
                let (a, b) = (k - 1, k % n);
                perm.iter()
                    .map(|&v| if v == a { b } else if v == b { a } else { v })
                    .collect()
            }
            Letter::Rho(inv) => {
                let shift = if inv { n - 1 } else { 1 };
                perm.iter().map(|&v| (v + shift) % n).collect()
            }
        };
    }
    let ends_i = [i - 1, i % n];
    let ends_j = [perm[j - 1], perm[j % n]];
    ends_i.iter().filter(|e| ends_j.contains(e)).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_words_match_parity_and_flavors(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 3usize;
        let a = alg(n, 4);
        let len = rng.gen_range(0..5);
        let letters: Vec<Letter> = (0..len)
            .map(|_| match rng.gen_range(0..4) {
                0 => Letter::Sigma(rng.gen_range(1..=n), false),
                1 => Letter::Sigma(rng.gen_range(1..=n), true),
                2 => Letter::Rho(false),
                _ => Letter::Rho(true),
            })
            .collect();
        let w = BraidWord::new(letters);
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        let doubled = a.intersection_doubled(&w, i, j);
        prop_assert_eq!(doubled % 2, shared_endpoint_count(n, &w, i, j) % 2);
        prop_assert!(a.pi_compare(&w, i, j));
    }
}
