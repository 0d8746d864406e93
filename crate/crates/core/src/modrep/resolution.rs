//! Projective covers, minimal projective resolutions and `Ext`.

use std::sync::Arc;

use super::{hom, same_algebra, ModuleMap, Representation};
use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar, Subquotient};

/// A projective cover `⊕ P_{v_k} -> M`, one summand per basis vector of `top M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Representation,
    /// The vertex `v_k` of every summand, in order.
    pub summands: Vec<usize>,
    pub map: ModuleMap,
}

/// Maps `⊕ P_{v_k} -> N` correspond to tuples `(n_k ∈ N_{v_k})`; this builds the map.
pub(crate) fn map_from_free(target: &Representation, summands: &[usize], values: &[Matrix]) -> ModuleMap {
    let parts: Vec<ModuleMap> = summands.iter().zip(values).map(|(&v, n)| target.map_from_projective(v, n)).collect();
    let refs: Vec<&ModuleMap> = parts.iter().collect();
    ModuleMap::copair(target.field(), target, &refs)
}

/// Per-summand positions of the generator `e_{v_k}` inside `(⊕ P)_{v_k}`.
pub(crate) fn generator_positions(algebra: &BasicAlgebra, summands: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0usize; algebra.num_vertices()];
    summands
        .iter()
        .map(|&v| {
            let lazy = algebra.basis_index(&crate::quiver::Path::lazy(v)).expect("idempotents are basis elements");
            let local = algebra.basis_between(v, v).iter().position(|&k| k == lazy).expect("lazy path present");
            let pos = offsets[v] + local;
            for (x, off) in offsets.iter_mut().enumerate() {
                *off += algebra.basis_between(x, v).len();
            }
            pos
        })
        .collect()
}

/// Direct sum of the indecomposable projectives at the given vertices.
pub fn free_module(algebra: &Arc<BasicAlgebra>, summands: &[usize]) -> Representation {
    let parts: Vec<Representation> = summands.iter().map(|&v| Representation::projective(algebra.clone(), v)).collect();
    let refs: Vec<&Representation> = parts.iter().collect();
    Representation::direct_sum(algebra.clone(), &refs).module
}

/// The projective cover of `m`.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let f = m.field();
    let rad = m.radical_spans();
    let mut summands = Vec::new();
    let mut values = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let sq = Subquotient::new(&Matrix::identity(f, m.dims()[v]), r);
        for k in 0..sq.dim() {
            summands.push(v);
            values.push(sq.lift.col(k));
        }
    }
    let projective = free_module(m.algebra(), &summands);
    let map = map_from_free(m, &summands, &values);
    ProjectiveCover { projective, summands, map }
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Representation,
    /// `terms[k] = P_k`.
    pub terms: Vec<Representation>,
    pub summands: Vec<Vec<usize>>,
    /// `differentials[k]: P_{k+1} -> P_k`.
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// True when the resolution reached a zero kernel within the length bound.
    pub complete: bool,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Projective dimension, if the resolution is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }
}

/// Resolves `m` up to `P_{max_len}`; terms past the first zero kernel are omitted.
pub fn projective_resolution(m: &Representation, max_len: usize) -> Resolution {
    let mut terms = Vec::new();
    let mut summands = Vec::new();
    let mut differentials = Vec::new();
    if m.is_zero() {
        return Resolution {
            module: m.clone(),
            terms,
            summands,
            differentials,
            augmentation: m.identity_map(),
            complete: true,
        };
    }
    let cover = projective_cover(m);
    let augmentation = cover.map.clone();
    let (mut kernel, mut incl) = cover.map.kernel(&cover.projective);
    terms.push(cover.projective);
    summands.push(cover.summands);
    let mut complete = kernel.is_zero();
    while !complete && terms.len() <= max_len {
        let c = projective_cover(&kernel);
        differentials.push(incl.compose(&c.map));
        let (k, i) = c.map.kernel(&c.projective);
        terms.push(c.projective);
        summands.push(c.summands);
        complete = k.is_zero();
        kernel = k;
        incl = i;
    }
    Resolution { module: m.clone(), terms, summands, differentials, augmentation, complete }
}

/// `pd M`, or `None` if it exceeds `bound`.
pub fn projective_dimension(m: &Representation, bound: usize) -> Option<usize> {
    projective_resolution(m, bound).projective_dimension()
}

/// Global dimension as the largest projective dimension of a simple module.
///
/// For an algebra given by an acyclic quiver with `n` vertices this is at most `n - 1`,
/// so the bound is never hit.
pub fn global_dimension(algebra: &Arc<BasicAlgebra>) -> usize {
    let n = algebra.num_vertices();
    (0..n)
        .map(|v| {
            projective_dimension(&Representation::simple(algebra.clone(), v), n)
                .expect("acyclic quivers have finite global dimension")
        })
        .max()
        .unwrap_or(0)
}

/// `dim Ext^i(M, N)` together with the resolution it was read from.
#[derive(Clone, Debug)]
pub struct ExtResult {
    pub dim: usize,
    pub resolution_length: usize,
}

/// Matrix of `f ↦ f ∘ d` on generator coordinates for `d: P' -> P`, both free.
fn precompose_matrix(
    n: &Representation,
    source_summands: &[usize],
    target_summands: &[usize],
    d: &ModuleMap,
) -> Matrix {
    let f = n.field();
    let algebra = n.algebra();
    let in_dims: Vec<usize> = target_summands.iter().map(|&v| n.dims()[v]).collect();
    let out_dims: Vec<usize> = source_summands.iter().map(|&v| n.dims()[v]).collect();
    let (rows, cols) = (out_dims.iter().sum::<usize>(), in_dims.iter().sum::<usize>());
    let gens = generator_positions(algebra, source_summands);
    let mut m = Matrix::zeros(f, rows, cols);
    let mut col = 0;
    for (k, &dk) in in_dims.iter().enumerate() {
        for e in 0..dk {
            let values: Vec<Matrix> = in_dims
                .iter()
                .enumerate()
                .map(|(j, &dj)| {
                    let mut v = Matrix::zeros(f, dj, 1);
                    if j == k {
                        v[(e, 0)] = f.one();
                    }
                    v
                })
                .collect();
            let phi = map_from_free(n, target_summands, &values).compose(d);
            let mut row = 0;
            for (l, &w) in source_summands.iter().enumerate() {
                let img = phi.components[w].col(gens[l]);
                for r in 0..out_dims[l] {
                    m[(row + r, col)] = img[(r, 0)].clone();
                }
                row += out_dims[l];
            }
            col += 1;
        }
    }
    m
}

/// `dim Ext^i(M, N)` from a minimal projective resolution of `M`.
pub fn ext(m: &Representation, n: &Representation, i: usize) -> Result<ExtResult> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let res = projective_resolution(m, i + 1);
    if i >= res.len() {
        if res.complete {
            return Ok(ExtResult { dim: 0, resolution_length: res.len() });
        }
        return Err(Error::Unsupported(format!("resolution truncated before degree {i}")));
    }
    let dim_at = |k: usize| res.summands[k].iter().map(|&v| n.dims()[v]).sum::<usize>();
    let outgoing_rank = if i + 1 < res.len() {
        precompose_matrix(n, &res.summands[i + 1], &res.summands[i], &res.differentials[i]).rank()
    } else {
        0
    };
    let incoming_rank = if i > 0 {
        precompose_matrix(n, &res.summands[i], &res.summands[i - 1], &res.differentials[i - 1]).rank()
    } else {
        0
    };
    Ok(ExtResult { dim: dim_at(i) - outgoing_rank - incoming_rank, resolution_length: res.len() })
}

/// For an exact `0 -> A -f-> B -g-> C -> 0`, whether it splits; `NotExact` otherwise.
pub fn is_split_exact(
    a: &Representation,
    b: &Representation,
    c: &Representation,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<bool> {
    if !f.is_homomorphism(a, b) || !g.is_homomorphism(b, c) {
        return Err(Error::InvalidMap("maps do not fit the modules".into()));
    }
    if f.rank() != a.dim() {
        return Err(Error::NotExact("first map is not injective".into()));
    }
    if g.rank() != c.dim() {
        return Err(Error::NotExact("second map is not surjective".into()));
    }
    if !g.compose(f).is_zero() || a.dim() + c.dim() != b.dim() {
        return Err(Error::NotExact("image differs from kernel".into()));
    }
    let h = hom(c, b)?;
    let field = a.field();
    let target: Vec<Scalar> = c.identity_map().vectorize();
    let cols: Vec<Matrix> = h.basis.iter().map(|s| Matrix::column(field, g.compose(s).vectorize())).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let system = Matrix::hstack(field, target.len(), &refs);
    Ok(system.solve(&Matrix::column(field, target))?.particular().is_some())
}
