use std::collections::BTreeMap;

use proptest::prelude::*;

use khovhoch::graph::{euler_characteristic_check, graph_cochain_complex, graph_cohomology, Graph, Variant};
use khovhoch::hochschild::hochschild_complex;
use khovhoch::khovanov::{circle_steps_are_unit, kauffman_check, khovanov_complex, khovanov_homology};
use khovhoch::linalg::{elementary_divisors, smith_normal_form};
use khovhoch::{complex_homology, Algebra, BigradedHomology, Bimodule, Integer, IntegerMatrix, Sign, SignedPlaneGraph};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

/// Connected or not, loops and multi-edges allowed, at most six edges.
fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..5).prop_flat_map(|v| prop::collection::vec((0..v, 0..v), 0..=6).prop_map(move |edges| Graph::new(v, edges).unwrap()))
}

fn simple_graph() -> impl Strategy<Value = Graph> {
    (2usize..6).prop_flat_map(|v| {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        prop::sample::subsequence(pairs.clone(), 0..=pairs.len().min(6)).prop_map(move |edges| Graph::new(v, edges).unwrap())
    })
}

fn plane_graph() -> impl Strategy<Value = SignedPlaneGraph> {
    (simple_graph(), prop::collection::vec(any::<bool>(), 6)).prop_filter_map("planar", |(g, signs)| {
        let signs = signs[..g.edge_count()].iter().map(|&p| if p { Sign::Plus } else { Sign::Minus }).collect();
        SignedPlaneGraph::new(g, signs).ok()
    })
}

fn truncated() -> impl Strategy<Value = Algebra> {
    (2usize..4).prop_map(|m| Algebra::truncated(m).unwrap())
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_with_order() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    small_graph().prop_flat_map(|g| {
        let n = g.edge_count();
        (Just(g), shuffled(n))
    })
}

fn degree(h: &BigradedHomology, i: i64) -> BigradedHomology {
    h.iter().filter(|(k, _)| k.0 == i).map(|(k, v)| (*k, v.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_certified_factorization(rows in small_matrix()) {
        let a = IntegerMatrix::from_dense(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inverse).unwrap(), IntegerMatrix::identity(a.cols()));
        prop_assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| !x.is_negative()));
        prop_assert!(f.windows(2).all(|w| w[0].divides(&w[1])));
        let e = elementary_divisors(&a);
        prop_assert_eq!(e.rank, s.rank());
        let big: Vec<Integer> = f.into_iter().filter(|x| !x.is_one()).collect();
        prop_assert_eq!(e.torsion, big);
    }

    #[test]
    fn graph_differential_squares_to_zero(g in small_graph(), a in truncated(), hat in any::<bool>()) {
        let variant = if hat { Variant::PhiHat } else { Variant::Phi };
        let g = g.with_base(0);
        let c = graph_cochain_complex(&g, &a, &Bimodule::regular(&a), variant).unwrap();
        prop_assert!(c.check_square_zero().is_ok());
    }

    #[test]
    fn graph_cohomology_ignores_edge_order((g, order) in graph_with_order()) {
        let a = Algebra::truncated(2).unwrap();
        let m = Bimodule::regular(&a);
        let g = g.with_base(0);
        prop_assert_eq!(graph_cohomology(&g, &a, &m, Variant::Phi).unwrap(), graph_cohomology(&g.reorder_edges(&order), &a, &m, Variant::Phi).unwrap());
    }

    #[test]
    fn hat_agrees_with_phi_below_girth(g in small_graph(), a in truncated()) {
        let g = g.with_base(0);
        let m = Bimodule::regular(&a);
        let full = graph_cohomology(&g, &a, &m, Variant::Phi).unwrap();
        let hat = graph_cohomology(&g, &a, &m, Variant::PhiHat).unwrap();
        let limit = g.girth().map_or(g.edge_count() as i64 + 1, |l| l as i64 - 2);
        for i in 0..limit {
            prop_assert_eq!(degree(&full, i), degree(&hat, i), "i = {}", i);
        }
    }

    #[test]
    fn euler_characteristic_is_chromatic(g in small_graph(), a in truncated()) {
        let check = euler_characteristic_check(&g, &a).unwrap();
        prop_assert!(check.equal, "{:?}", check);
    }

    #[test]
    fn homology_ignores_basis_order(g in small_graph(), seed in any::<u64>()) {
        let a = Algebra::truncated(2).unwrap();
        let c = graph_cochain_complex(&g.with_base(0), &a, &Bimodule::regular(&a), Variant::Phi).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let perms: BTreeMap<(i64, i64), Vec<usize>> = c
            .ranks()
            .iter()
            .map(|(&k, &r)| {
                let mut p: Vec<usize> = (0..r).collect();
                rand::seq::SliceRandom::shuffle(p.as_mut_slice(), &mut rng);
                (k, p)
            })
            .collect();
        prop_assert_eq!(complex_homology(&c).unwrap(), complex_homology(&c.permuted(&perms)).unwrap());
    }

    #[test]
    fn polygon_vanishes_from_n_minus_one(n in 2usize..7, a in truncated()) {
        let h = graph_cohomology(&Graph::polygon(n).with_base(0), &a, &Bimodule::regular(&a), Variant::Phi).unwrap();
        prop_assert!(h.iter().filter(|(k, _)| k.0 >= n as i64 - 1).all(|(_, s)| s.is_zero()));
    }

    #[test]
    fn polygon_is_symmetric_under_rotation(n in 2usize..7, shift in 0usize..7) {
        let a = Algebra::truncated(2).unwrap();
        let m = Bimodule::regular(&a);
        let g = Graph::polygon(n).with_base(0);
        let rotated: Vec<(usize, usize)> = g.edges.iter().map(|&(u, v)| ((u + shift) % n, (v + shift) % n)).collect();
        let r = Graph::new(n, rotated).unwrap().with_base(0);
        prop_assert_eq!(graph_cohomology(&g, &a, &m, Variant::Phi).unwrap(), graph_cohomology(&r, &a, &m, Variant::Phi).unwrap());
    }

    #[test]
    fn khovanov_differential_squares_to_zero(g in plane_graph(), a in truncated()) {
        let c = khovanov_complex(&g, &a).unwrap();
        prop_assert!(c.check_square_zero().is_ok());
    }

    #[test]
    fn circles_change_by_one(g in plane_graph()) {
        prop_assert!(circle_steps_are_unit(&g));
    }

    #[test]
    fn khovanov_euler_is_the_state_sum(g in plane_graph()) {
        let check = kauffman_check(&g).unwrap();
        prop_assert!(check.equal, "{:?}", check);
    }

    #[test]
    fn khovanov_ignores_edge_order(g in plane_graph(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let a = Algebra::truncated(2).unwrap();
        prop_assert_eq!(khovanov_homology(&g, &a).unwrap(), khovanov_homology(&g.reorder_edges(&order).unwrap(), &a).unwrap());
    }

    #[test]
    fn hochschild_differential_squares_to_zero(c1 in -3i64..4, c2 in -3i64..4, deg in 1usize..4) {
        let coeffs: Vec<i64> = [c1, c2, 0][..deg].iter().copied().chain(std::iter::once(1)).collect();
        let a = Algebra::poly_quotient(&coeffs).unwrap();
        let c = hochschild_complex(&a, &Bimodule::regular(&a), 4).unwrap();
        prop_assert!(c.check_square_zero().is_ok());
    }

    #[test]
    fn opposite_is_an_involution(m in 1usize..5, n in 1usize..3) {
        for a in [Algebra::truncated(m).unwrap(), Algebra::upper_triangular(n + 1).unwrap(), Algebra::tensor_algebra(n, m as i64).unwrap()] {
            prop_assert_eq!(a.opposite().opposite(), a);
        }
    }
}
