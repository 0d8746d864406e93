//! The two-term tilting complex over `R` whose endomorphism algebra is `S = kE`, and the
//! generator maps used to compare endomorphism algebras with quiver algebras.

use std::sync::Arc;

use super::{EndomorphismAlgebra, GeneratorMap, Recipe, TiltingCandidate};
use crate::algebra::BasicAlgebra;
use crate::builtin;
use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::modrep::{canonical_map, left_multiplication_map, Representation};

/// `T = ⊕ T_i` over `R`:
/// * `T_1 = P_1` in degree 0;
/// * `T_j = (P_1 -> P_j)` in degrees 0 and 1 for `j = 2..8`, the map induced by the path `1 -> j`;
/// * `T_9 = P_9` and `T_10 = P_10` in degree 1.
pub fn example_tilting(r: &Arc<BasicAlgebra>) -> Result<TiltingCandidate> {
    build(r, false)
}

/// The same complex with the differential of `T_2` negated. `T_2` is still isomorphic to the
/// original, but the fixed generator map no longer consists of chain maps.
pub fn example_tilting_corrupted(r: &Arc<BasicAlgebra>) -> Result<TiltingCandidate> {
    build(r, true)
}

fn build(r: &Arc<BasicAlgebra>, corrupt: bool) -> Result<TiltingCandidate> {
    if **r != builtin::algebra_r(r.field()) {
        return Err(Error::AlgebraMismatch);
    }
    let p = |v: usize| Representation::projective(r.clone(), v);
    let mut summands = vec![Complex::stalk(&p(0), 0)];
    for j in 1..8 {
        let mut d = canonical_map(r, 0, j)?;
        if corrupt && j == 1 {
            d = d.scale(&-r.field().one());
        }
        summands.push(Complex::new(r.clone(), 0, vec![p(0), p(j)], vec![d])?);
    }
    summands.push(Complex::stalk(&p(8), 1));
    summands.push(Complex::stalk(&p(9), 1));
    let mut recipes = vec![Some(Recipe::Summand(0))];
    for j in 1..8 {
        recipes.push(Some(Recipe::Cone {
            source: Box::new(Recipe::Summand(j)),
            target: Box::new(Recipe::Summand(0)),
            map: to_first(&summands[j], &summands[0])?,
        }));
    }
    for j in 8..10 {
        recipes.push(Some(Recipe::Shift(Box::new(Recipe::Summand(j)), 1)));
    }
    TiltingCandidate::new(r.clone(), summands)?.with_recipes(recipes)
}

/// `T_j -> T_1`: the identity of `P_1` in degree 0.
fn to_first(tj: &Complex, t1: &Complex) -> Result<ChainMap> {
    ChainMap::new(tj, t1, vec![tj.object(0).identity_map(), tj.object(1).zero_map_to(&t1.object(1))])
}

/// Images of the generators of `S = kE` in `End_K(T)`: vertex `i` goes to the identity of `T_i`,
/// `b_i: i -> i+1` to the map `T_i -> T_{i+1}` that is the identity on `P_1` and the canonical
/// map `P_i -> P_{i+1}` in degree 1, and `c: 8 -> 1` to the identity of `P_1` in degree 0.
pub fn example_generator_map(end: &EndomorphismAlgebra, t: &TiltingCandidate) -> Result<GeneratorMap> {
    let r = &t.algebra;
    let s = &t.summands;
    if s.len() != 10 {
        return Err(Error::IncompleteGeneratorMap(format!("expected 10 summands, got {}", s.len())));
    }
    let vertices = (0..10).map(|i| end.algebra.idempotent(i).to_vec()).collect();
    let mut arrows = Vec::new();
    for i in 1..9 {
        let (src, tgt) = (&s[i], &s[i + 1]);
        let comps = src
            .degrees()
            .map(|n| match n {
                0 if i < 7 => Ok(src.object(0).identity_map()),
                1 => canonical_map(r, i, i + 1),
                _ => Ok(src.object(n).zero_map_to(&tgt.object(n))),
            })
            .collect::<Result<Vec<_>>>()?;
        arrows.push(end.element_of(i, i + 1, &ChainMap::new(src, tgt, comps)?)?);
    }
    arrows.push(end.element_of(7, 0, &to_first(&s[7], &s[0])?)?);
    Ok(GeneratorMap { vertices, arrows })
}

/// For `T = ⊕ P_i` over a quiver algebra `A`: vertices go to identities and each arrow
/// `α: i -> j` to left multiplication `P_i -> P_j` by `α`.
pub fn regular_generator_map(end: &EndomorphismAlgebra, t: &TiltingCandidate) -> Result<GeneratorMap> {
    let a = &t.algebra;
    let q = a.quiver();
    let vertices = (0..q.num_vertices()).map(|i| end.algebra.idempotent(i).to_vec()).collect();
    let arrows = (0..q.num_arrows())
        .map(|k| {
            let arrow = q.arrow(k);
            let (src, tgt) = (&t.summands[arrow.source], &t.summands[arrow.target]);
            let f = left_multiplication_map(a, arrow.source, arrow.target, &a.element_of_path(&q.arrow_path(k)));
            end.element_of(arrow.source, arrow.target, &ChainMap::new(src, tgt, vec![f])?)
        })
        .collect::<Result<_>>()?;
    Ok(GeneratorMap { vertices, arrows })
}
