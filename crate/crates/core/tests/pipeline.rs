use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropls::generate::{random_corank, random_stiefel};
use tropls::plucker::{corank_vector, hyperplane};
use tropls::sptree::{tree_space, tree_space_face_catalog, Tree, WeightedTree};
use tropls::subdivision::{all_faces, dual_vertex};
use tropls::tutte::beta;
use tropls::{binomial, Matroid, PlueckerVector, Point, Rat, Subdivision};

fn sample(kind: u8, n: usize, d: usize, seed: u64) -> PlueckerVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind % 3 {
        0 => random_stiefel(d, n, 4, &mut rng).unwrap(),
        1 => random_corank(n, d, &mut rng).unwrap(),
        _ => {
            let t = Tree::random_trivalent(n, &mut rng).unwrap();
            tree_space(&WeightedTree::random_lengths(t, 4, &mut rng), d).unwrap()
        }
    }
}

fn shape() -> impl Strategy<Value = (u8, usize, usize, u64)> {
    (any::<u8>(), 4usize..=6, any::<u64>()).prop_flat_map(|(k, n, s)| (Just(k), Just(n), 2..=n - 2, Just(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f_vectors_survive_symmetries((kind, n, d, seed) in shape(), shift in prop::collection::vec(-3i64..=3, 6)) {
        let p = sample(kind, n, d, seed);
        let f = Subdivision::new(&p).unwrap().bounded_f_vector();
        let perm: Vec<usize> = (1..=n).rev().collect();
        prop_assert_eq!(Subdivision::new(&p.relabel(&perm)).unwrap().bounded_f_vector(), f.clone());
        let moved = p.translate(&Point::from_integers(&shift[..n])).unwrap();
        prop_assert_eq!(Subdivision::new(&moved).unwrap().bounded_f_vector(), f.clone());
        prop_assert_eq!(p.dualize().dualize(), p.clone());
        prop_assert_eq!(Subdivision::new(&p.dualize()).unwrap().bounded_f_vector(), f);
    }

    #[test]
    fn dual_vertices_realise_their_facets((kind, n, d, seed) in shape()) {
        let p = sample(kind, n, d, seed);
        let sd = Subdivision::new(&p).unwrap();
        let total: u64 = sd.facet_matroids().map(|m| beta(m).unwrap()).sum();
        prop_assert_eq!(total, binomial(n - 2, d - 1));
        for m in sd.facet_matroids() {
            let w = dual_vertex(&p, m).unwrap();
            prop_assert_eq!(&p.minimizing_matroid(&w).unwrap(), m);
            prop_assert!(p.contains(&w).unwrap());
        }
    }

    #[test]
    fn every_face_is_a_matroid_of_the_subdivision((kind, n, d, seed) in shape()) {
        let p = sample(kind, n, d, seed);
        let faces = all_faces(&p).unwrap();
        let sd = Subdivision::new(&p).unwrap();
        let facets: Vec<&Matroid> = sd.facet_matroids().collect();
        for m in &faces {
            prop_assert!(facets.iter().any(|f| m.bases().iter().all(|b| f.is_basis(*b))));
        }
    }
}

#[test]
fn hyperplane_is_a_single_vertex() {
    let c: Vec<Rat> = [0, 2, -1, 5].iter().map(|&x| Rat::from_integer(x)).collect();
    let sd = Subdivision::new(&hyperplane(&c).unwrap()).unwrap();
    assert_eq!(sd.bounded_f_vector(), vec![1]);
}

#[test]
fn corank_vector_of_a_uniform_matroid_is_trivial() {
    let p = corank_vector(&Matroid::uniform(3, 6)).unwrap();
    let sd = Subdivision::new(&p).unwrap();
    assert_eq!(sd.facets().len(), 1);
    assert_eq!(sd.bounded_f_vector(), vec![1, 0, 0]);
}

#[test]
fn catalog_agrees_for_every_seven_leaf_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in Tree::all_shapes(7).unwrap() {
        for d in 2..=5 {
            let w = WeightedTree::random_lengths(t.clone(), 3, &mut rng);
            let sd = Subdivision::new(&tree_space(&w, d).unwrap()).unwrap();
            let catalog = tree_space_face_catalog(&t, d).unwrap();
            let ours: BTreeSet<Matroid> = sd.interior_faces().iter().map(|c| c.matroid.clone()).collect();
            assert_eq!(ours, catalog.matroids(), "shape {} d={d}", t.shape());
        }
    }
}
