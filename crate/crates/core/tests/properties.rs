//! Invariants checked on seeded random inputs.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qtilt::algebra::BasicAlgebra;
use qtilt::builtin;
use qtilt::complexes::{cone, homotopy_hom, random_complex, splits_into_homology, ChainMap, Complex, HomComplex};
use qtilt::modrep::{ext, hom, projective_resolution, Representation};
use qtilt::quiver::linear_quiver;
use qtilt::repclass::{classify_underlying_graph, DynkinType, GraphClass};
use qtilt::scalars::{ExactField, Matrix, Scalar};

fn fields() -> impl Strategy<Value = ExactField> {
    prop_oneof![Just(ExactField::Rationals), Just(ExactField::Prime(2)), Just(ExactField::Prime(101))]
}

fn algebra(which: bool, field: ExactField) -> Arc<BasicAlgebra> {
    Arc::new(if which { builtin::algebra_r(field) } else { builtin::algebra_s(field) })
}

fn euler_characteristic(c: &Complex) -> i64 {
    c.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * c.homology(n).dim() as i64).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn field_axioms(field in fields(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (field.random(&mut rng), field.random(&mut rng), field.random(&mut rng));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rank_nullity(field in fields(), rows in 0usize..6, cols in 0usize..6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::random(field, rows, cols, &mut rng);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), cols);
        prop_assert!((&m * &k).is_zero());
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(&m * &inv, Matrix::identity(field, rows));
        }
    }

    #[test]
    fn yoneda(which: bool, field in fields(), seed: u64) {
        let a = algebra(which, field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Representation::random(a.clone(), 3, &mut rng).unwrap();
        for i in 0..a.num_vertices() {
            prop_assert_eq!(hom(&Representation::projective(a.clone(), i), &m).unwrap().dim(), m.dims()[i]);
        }
    }

    #[test]
    fn euler_form_over_s(seed: u64) {
        let s = algebra(false, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Representation::random(s.clone(), 2, &mut rng).unwrap();
        let n = Representation::random(s.clone(), 2, &mut rng).unwrap();
        let (x, y) = (m.dims(), n.dims());
        let form = x.iter().zip(y).map(|(a, b)| (a * b) as i64).sum::<i64>()
            - s.quiver().arrows().iter().map(|a| (x[a.target] * y[a.source]) as i64).sum::<i64>();
        let e0 = hom(&m, &n).unwrap().dim() as i64;
        let e1 = ext(&m, &n, 1).unwrap().dim as i64;
        prop_assert_eq!(e0 - e1, form);
        prop_assert_eq!(ext(&m, &n, 2).unwrap().dim, 0);
    }

    #[test]
    fn resolutions_are_exact(which: bool, seed: u64) {
        let a = algebra(which, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Representation::random(a.clone(), 2, &mut rng).unwrap();
        let res = projective_resolution(&m, 4);
        prop_assert!(res.complete);
        let bound = if which { 3 } else { 2 };
        prop_assert!(res.len() <= bound);
        let p = Complex::from_resolution(&res);
        prop_assert!(p.d_squared_is_zero());
        for n in p.degrees() {
            let expected = if n == 0 { m.dim() } else { 0 };
            prop_assert_eq!(p.homology(n).dim(), expected);
        }
    }

    #[test]
    fn complexes_and_shifts(which: bool, seed: u64, l in -2i32..=2) {
        let a = algebra(which, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&a, -1, 1, 2, &mut rng).unwrap();
        prop_assert!(c.d_squared_is_zero());
        let s = c.shift(l);
        prop_assert!(s.d_squared_is_zero());
        for n in c.degrees() {
            prop_assert_eq!(s.homology(n - l).dim(), c.homology(n).dim());
        }
        prop_assert_eq!(s.shift(-l), c);
    }

    #[test]
    fn hom_complex_differential_squares_to_zero(which: bool, seed: u64) {
        let a = algebra(which, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&a, 0, 1, 2, &mut rng).unwrap();
        let d = random_complex(&a, 0, 1, 2, &mut rng).unwrap();
        let h = HomComplex::window(&c, &d, -2, 2).unwrap();
        for n in -2..1 {
            prop_assert!((&h.differential_matrix(n + 1) * &h.differential_matrix(n)).is_zero());
        }
    }

    #[test]
    fn identity_class(which: bool, seed: u64) {
        let a = algebra(which, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&a, 0, 2, 2, &mut rng).unwrap();
        let h = homotopy_hom(&c, &c, 0).unwrap();
        prop_assert!(h.class_of_chain_map(&ChainMap::identity(&c)).is_some());
        prop_assert_eq!(h.contains_identity_class(), !c.is_acyclic());
    }

    #[test]
    fn cone_euler_characteristic(which: bool, seed: u64) {
        let a = algebra(which, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&a, 0, 1, 2, &mut rng).unwrap();
        let d = random_complex(&a, 0, 1, 2, &mut rng).unwrap();
        let h = homotopy_hom(&c, &d, 0).unwrap();
        let mut f = ChainMap::zero(&c, &d);
        for k in 0..h.dim() {
            f = f.add(&h.to_chain_map(k));
        }
        let k = cone(&f).unwrap();
        prop_assert!(k.complex.d_squared_is_zero());
        prop_assert_eq!(euler_characteristic(&k.complex), euler_characteristic(&d) - euler_characteristic(&c));
        prop_assert!(cone(&ChainMap::identity(&c)).unwrap().complex.is_acyclic());
        prop_assert_eq!(k.complex.is_acyclic(), f.is_quasi_iso());
    }

    #[test]
    fn hereditary_complexes_split(seed: u64) {
        let s = algebra(false, ExactField::Prime(101));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&s, 0, 2, 3, &mut rng).unwrap();
        let cert = splits_into_homology(&c).unwrap();
        prop_assert!(cert.splits);
        prop_assert!(cert.witness.unwrap().is_quasi_iso());
    }

    #[test]
    fn linear_quivers_are_type_a(n in 1usize..12) {
        prop_assert_eq!(classify_underlying_graph(&linear_quiver(n)).unwrap(), GraphClass::Dynkin(DynkinType::A(n)));
    }
}

#[test]
fn scalar_parsing() {
    let q = ExactField::Rationals;
    assert_eq!(Scalar::parse(q, "-3/6"), q.from_fraction(-1, 2));
    assert_eq!(Scalar::parse(ExactField::Prime(7), "10"), Some(ExactField::Prime(7).from_i64(3)));
}
