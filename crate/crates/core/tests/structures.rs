//! Property tests for matrices, algebras and modules, checked against direct
//! entrywise or counting formulas.

use num_complex::Complex;
use proptest::prelude::*;
use threefold::coherence::instances::{random_algebra, random_ce, random_hom, random_map, random_module};
use threefold::cvna::{apply_ce, ce_from_positive_map, fibre_product, sqrt_ce, AlgebraElement, Hom};
use threefold::functors::{induce, induce_map, restrict, restrict_map};
use threefold::hmod::{
    associator, dual_map, fuse, fuse_maps, l2_fusion, lambda_iso, symmetry, unitor_l, unitor_r, Module, ModuleMap,
};
use threefold::linalg::{direct_sum, kron, random_matrix, random_unitary, seeded_rng};
use threefold::Matrix;

const EPS: f64 = 1e-12;

fn mat(seed: u64, rows: usize, cols: usize) -> Matrix {
    random_matrix(rows, cols, &mut seeded_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_entries(seed: u64, m in 1usize..4, n in 1usize..4, p in 1usize..4, q in 1usize..4) {
        let a = mat(seed, m, n);
        let b = mat(seed ^ 1, p, q);
        let k = kron(&a, &b);
        prop_assert_eq!(k.shape(), (m * p, n * q));
        for i in 0..m { for j in 0..n { for r in 0..p { for s in 0..q {
            prop_assert_eq!(k[(i * p + r, j * q + s)], a[(i, j)] * b[(r, s)]);
        }}}}
    }

    #[test]
    fn kron_mixed_product(seed: u64, m in 1usize..4, n in 1usize..4, k in 1usize..4) {
        let (a, c) = (mat(seed, m, n), mat(seed ^ 2, n, k));
        let (b, d) = (mat(seed ^ 3, k, m), mat(seed ^ 4, m, n));
        let lhs = kron(&a, &b).try_mul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.try_mul(&c).unwrap(), &b.try_mul(&d).unwrap());
        prop_assert!(lhs.distance(&rhs).unwrap() < EPS * 100.0);
    }

    #[test]
    fn adjoint_reverses_products(seed: u64, m in 1usize..5, n in 1usize..5, k in 1usize..5) {
        let (a, b) = (mat(seed, m, n), mat(seed ^ 5, n, k));
        let lhs = a.try_mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().try_mul(&a.adjoint()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() < EPS);
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn haar_unitaries(seed: u64, n in 1usize..7) {
        let u: Matrix = random_unitary(n, seed);
        prop_assert!(u.unitarity_residual().unwrap() < EPS);
        prop_assert_eq!(&u, &random_unitary(n, seed));
    }

    #[test]
    fn trace_of_sums_and_products(seed: u64, m in 1usize..4, n in 1usize..4) {
        let (a, b) = (mat(seed, m, m), mat(seed ^ 6, n, n));
        let s = direct_sum(&[a.clone(), b.clone()]);
        prop_assert!((s.trace() - (a.trace() + b.trace())).norm() < EPS);
        prop_assert!((kron(&a, &b).trace() - a.trace() * b.trace()).norm() < EPS * 10.0);
    }

    #[test]
    fn conditional_expectation_round_trip(seed: u64) {
        let mut rng = seeded_rng(seed, 1);
        let b = random_algebra(&mut rng, 6);
        let f = random_hom(&mut rng, &b, 6);
        let phi = random_ce(&mut rng, &f, true);
        let back = ce_from_positive_map(&sqrt_ce(&phi), &f, 1e-12).unwrap();
        for (x, y) in phi.weights().iter().zip(back.weights()) {
            prop_assert!((x - y).abs() < EPS);
        }
    }

    #[test]
    fn conditional_expectations_are_bimodular(seed: u64) {
        // φ(f(b) a) = b φ(a), elementwise on atoms.
        let mut rng = seeded_rng(seed, 2);
        let bb = random_algebra(&mut rng, 5);
        let f = random_hom(&mut rng, &bb, 6);
        let phi = random_ce(&mut rng, &f, true);
        let a_vals: Vec<f64> = (0..f.target().len()).map(|i| (i as f64 * 0.37 + seed as f64 % 3.0).sin()).collect();
        let b_vals: Vec<f64> = (0..bb.len()).map(|j| 1.0 + j as f64).collect();
        let a = AlgebraElement::from_real(f.target(), &a_vals).unwrap();
        let b = AlgebraElement::from_real(&bb, &b_vals).unwrap();
        let fb = f.apply(&b).unwrap();
        let prod: Vec<Complex<f64>> = fb.values().iter().zip(a.values()).map(|(x, y)| x * y).collect();
        let lhs = apply_ce(&phi, &AlgebraElement::new(f.target(), prod).unwrap()).unwrap();
        let rhs = apply_ce(&phi, &a).unwrap();
        for j in 0..bb.len() {
            prop_assert!((lhs.values()[j] - b.values()[j] * rhs.values()[j]).norm() < EPS * 10.0);
        }
    }

    #[test]
    fn hom_composition_is_associative(seed: u64) {
        let mut rng = seeded_rng(seed, 3);
        let a = random_algebra(&mut rng, 4);
        let f = random_hom(&mut rng, &a, 4);
        let g = random_hom(&mut rng, f.target(), 4);
        let h = random_hom(&mut rng, g.target(), 4);
        let left = Hom::compose(&Hom::compose(&h, &g).unwrap(), &f).unwrap();
        let right = Hom::compose(&h, &Hom::compose(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left.spec_map(), right.spec_map());
    }

    #[test]
    fn fibre_product_counts_matched_pairs(seed: u64) {
        let mut rng = seeded_rng(seed, 4);
        let c = random_algebra(&mut rng, 4);
        let f = random_hom(&mut rng, &c, 5);
        let g = random_hom(&mut rng, &c, 5);
        let expected: usize = (0..c.len()).map(|k| f.fiber(k).len() * g.fiber(k).len()).sum();
        match fibre_product(&f, &g) {
            Ok(sq) => {
                prop_assert_eq!(sq.pairs().len(), expected);
                prop_assert!(sq.commutes());
                prop_assert_eq!(l2_fusion(&sq).total_dim(), expected);
                let lambda: ModuleMap<f64> = lambda_iso(&sq).unwrap();
                prop_assert!(lambda.unitarity_residual().unwrap() < EPS);
            }
            Err(_) => prop_assert_eq!(expected, 0),
        }
    }

    #[test]
    fn module_dimensions(seed: u64) {
        let mut rng = seeded_rng(seed, 5);
        let b = random_algebra(&mut rng, 4);
        let f = random_hom(&mut rng, &b, 5);
        let m = random_module(&mut rng, f.target(), 3);
        let n = random_module(&mut rng, &b, 3);
        let res = restrict(&f, &m).unwrap();
        for j in 0..b.len() {
            let expected: usize = f.fiber(j).iter().map(|&i| m.dims()[i]).sum();
            prop_assert_eq!(res.dims()[j], expected);
        }
        let ind = induce(&f, &n).unwrap();
        for i in 0..f.target().len() {
            prop_assert_eq!(ind.dims()[i], n.dims()[f.spec(i)]);
        }
        let m2 = random_module(&mut rng, f.target(), 3);
        let fused = fuse(&m, &m2).unwrap();
        for i in 0..m.dims().len() {
            prop_assert_eq!(fused.dims()[i], m.dims()[i] * m2.dims()[i]);
        }
    }

    #[test]
    fn fusion_structure_maps_are_unitary(seed: u64) {
        let mut rng = seeded_rng(seed, 6);
        let a = random_algebra(&mut rng, 4);
        let (m, n, p) = (random_module(&mut rng, &a, 3), random_module(&mut rng, &a, 3), random_module(&mut rng, &a, 3));
        let maps: Vec<ModuleMap<f64>> = vec![
            associator(&m, &n, &p).unwrap(),
            symmetry(&m, &n).unwrap(),
            unitor_l(&m).unwrap(),
            unitor_r(&m).unwrap(),
        ];
        for u in &maps {
            prop_assert!(u.unitarity_residual().unwrap() < EPS);
        }
        let twice = symmetry::<f64>(&n, &m).unwrap().compose(&maps[1]).unwrap();
        prop_assert!(twice.distance(&ModuleMap::identity(&fuse(&m, &n).unwrap())).unwrap() < EPS);
    }

    #[test]
    fn functors_preserve_composition(seed: u64) {
        let mut rng = seeded_rng(seed, 7);
        let b = random_algebra(&mut rng, 4);
        let f = random_hom(&mut rng, &b, 5);
        let (m1, m2, m3) = (
            random_module(&mut rng, f.target(), 3),
            random_module(&mut rng, f.target(), 3),
            random_module(&mut rng, f.target(), 3),
        );
        let (h, k) = (random_map(&mut rng, &m1, &m2).unwrap(), random_map(&mut rng, &m2, &m3).unwrap());
        let kh = k.compose(&h).unwrap();
        let res = restrict_map(&f, &k).unwrap().compose(&restrict_map(&f, &h).unwrap()).unwrap();
        prop_assert!(restrict_map(&f, &kh).unwrap().distance(&res).unwrap() < EPS * 10.0);

        let (n1, n2) = (random_module(&mut rng, &b, 3), random_module(&mut rng, &b, 3));
        let (x, y) = (random_map(&mut rng, &n1, &n2).unwrap(), random_map(&mut rng, &n2, &n1).unwrap());
        let ind = induce_map(&f, &y).unwrap().compose(&induce_map(&f, &x).unwrap()).unwrap();
        prop_assert!(induce_map(&f, &y.compose(&x).unwrap()).unwrap().distance(&ind).unwrap() < EPS * 10.0);

        // Interchange: (k ⊠ k)(h ⊠ h) = kh ⊠ kh.
        let fused = fuse_maps(&kh, &kh).unwrap();
        let split = fuse_maps(&k, &k).unwrap().compose(&fuse_maps(&h, &h).unwrap()).unwrap();
        prop_assert!(fused.distance(&split).unwrap() < EPS * 100.0);
    }

    #[test]
    fn conjugation_is_a_contravariant_involution(seed: u64) {
        let mut rng = seeded_rng(seed, 8);
        let a = random_algebra(&mut rng, 4);
        let (m, n, p): (Module, Module, Module) =
            (random_module(&mut rng, &a, 3), random_module(&mut rng, &a, 3), random_module(&mut rng, &a, 3));
        let (h, k) = (random_map(&mut rng, &m, &n).unwrap(), random_map(&mut rng, &n, &p).unwrap());
        prop_assert!(dual_map(&dual_map(&h)).distance(&h).unwrap() < EPS);
        let lhs = dual_map(&k.compose(&h).unwrap());
        let rhs = dual_map(&h).compose(&dual_map(&k)).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() < EPS * 10.0);
    }
}
