//! The tilting complex over `R` end to end, with counts derived by hand from the path bases.

use std::sync::Arc;

use qtilt::builtin;
use qtilt::modrep::{ext, projective_dimension, Representation};
use qtilt::scalars::ExactField;
use qtilt::tilting::{example_generator_map, example_tilting, verify_tilting, RadicalMethod, VerifyOptions};

#[test]
fn projective_dimensions_of_r() {
    let r = Arc::new(builtin::algebra_r(ExactField::Rationals));
    // (P_v)_x = paths x -> v; the relation removes the paths 1 -> 9 and 1 -> 10.
    let dims: Vec<usize> = (0..10).map(|v| Representation::projective(r.clone(), v).dim()).collect();
    assert_eq!(dims, vec![1, 2, 3, 4, 5, 6, 7, 8, 8, 9]);
    assert_eq!(dims.iter().sum::<usize>(), 53);
}

#[test]
fn ext_between_simples_of_r() {
    let r = Arc::new(builtin::algebra_r(ExactField::Prime(101)));
    let s: Vec<Representation> = (0..10).map(|v| Representation::simple(r.clone(), v)).collect();
    for i in 0..10 {
        for j in 0..10 {
            // Ext^1 counts arrows j -> i; Ext^2 counts the relation 1 -> 9.
            let e1 = usize::from(i == j + 1);
            let e2 = usize::from(i == 8 && j == 0);
            assert_eq!(ext(&s[i], &s[j], 1).unwrap().dim, e1, "Ext^1(S{}, S{})", i + 1, j + 1);
            assert_eq!(ext(&s[i], &s[j], 2).unwrap().dim, e2, "Ext^2(S{}, S{})", i + 1, j + 1);
        }
    }
    assert_eq!(projective_dimension(&s[8], 5), Some(2));
    assert_eq!(projective_dimension(&s[9], 5), Some(1));
}

#[test]
fn tilting_over_f2_uses_the_off_diagonal_radical() {
    let f = ExactField::Prime(2);
    let r = Arc::new(builtin::algebra_r(f));
    let s = builtin::algebra_s(f);
    let t = example_tilting(&r).unwrap();
    let opts = VerifyOptions { target: Some(&s), generator_map: Some(&example_generator_map), ..Default::default() };
    let report = verify_tilting(&t, &opts).unwrap();
    assert!(report.pass);
    assert_eq!(report.endomorphism.presentation.radical_method, RadicalMethod::OffDiagonalIdeal.to_string());
    assert_eq!(report.endomorphism.dim, 53);
}
