//! The two algebras of the running example: `R = kA_10 / (a8*...*a1)` and `S = kE`.

use crate::algebra::{BasicAlgebra, Relation};
use crate::quiver::{linear_quiver, Quiver};
use crate::scalars::ExactField;

/// `1 -> 2 -> ... -> 10` with arrows `a1, ..., a9`.
pub fn quiver_a10() -> Quiver {
    linear_quiver(10)
}

/// The quiver `E`: the chain `2 -> 3 -> ... -> 10` (arrows `b2, ..., b9`) and the branch arrow `c: 8 -> 1`.
pub fn quiver_e() -> Quiver {
    let vertices: Vec<String> = (1..=10).map(|i| i.to_string()).collect();
    let mut arrows: Vec<(String, String, String)> =
        (2..10).map(|i| (format!("b{i}"), i.to_string(), (i + 1).to_string())).collect();
    arrows.push(("c".into(), "8".into(), "1".into()));
    Quiver::new(&vertices, &arrows).expect("well-formed quiver")
}

/// The single relation of `R`: the path `a8*a7*...*a1` from 1 to 9.
pub fn relation_r(q: &Quiver, field: ExactField) -> Relation {
    let names: Vec<String> = (1..=8).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Relation::monomial(field, q.path(&refs).expect("a1..a8 compose"))
}

pub fn algebra_r(field: ExactField) -> BasicAlgebra {
    let q = quiver_a10();
    let rel = relation_r(&q, field);
    BasicAlgebra::with_relations(q, field, vec![rel]).expect("monomial relation is admissible")
}

pub fn algebra_s(field: ExactField) -> BasicAlgebra {
    BasicAlgebra::path_algebra(quiver_e(), field).expect("E is acyclic")
}

/// `k A_n` without relations.
pub fn linear_path_algebra(n: usize, field: ExactField) -> BasicAlgebra {
    BasicAlgebra::path_algebra(linear_quiver(n), field).expect("linear quivers are acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for f in [ExactField::Rationals, ExactField::Prime(101), ExactField::Prime(2)] {
            assert_eq!(algebra_r(f).dim(), 53);
            assert_eq!(algebra_s(f).dim(), 53);
            assert_eq!(linear_path_algebra(10, f).dim(), 55);
        }
    }

    #[test]
    fn vanishing_table_of_r() {
        let r = algebra_r(ExactField::Rationals);
        for i in 0..10 {
            for j in i..10 {
                let n = r.basis_between(i, j).len();
                let expected = usize::from(!(i == 0 && j >= 8));
                assert_eq!(n, expected, "({}, {})", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn quivers_have_ten_vertices_and_nine_arrows() {
        for q in [quiver_a10(), quiver_e()] {
            assert_eq!((q.num_vertices(), q.num_arrows()), (10, 9));
            assert!(q.is_acyclic());
        }
    }
}
