//! Splitting a complex into its shifted homology, and random complexes of projectives.

use std::sync::Arc;

use rand::Rng;

use super::hom::element_to_chain_map;
use super::{ChainMap, Complex, HomComplex};
use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::modrep::{free_module, hom, projective_resolution, ModuleMap};
use crate::scalars::{Matrix, Scalar};

/// Outcome of [`splits_into_homology`].
#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub splits: bool,
    /// `⊕_i P(H^i)[-i]`: projective resolutions of the homology modules, each placed so that
    /// its degree-0 term sits in degree `i`.
    pub replacement: Complex,
    /// `⊕_i H^i[-i]`.
    pub homology_sum: Complex,
    /// The augmentation `replacement -> homology_sum`, a quasi-isomorphism.
    pub augmentation: ChainMap,
    /// A quasi-isomorphism `replacement -> C`, present exactly when `splits`.
    pub witness: Option<ChainMap>,
}

/// Decides whether `C ≅ ⊕_i H^i(C)[-i]` in the derived category.
///
/// Such an isomorphism exists iff some chain map `g: replacement -> C` induces on every
/// `H^i` the identification given by the augmentation (automorphisms of the `H^i` lift to
/// the replacement). This is a linear condition on the homotopy class of `g`, so the answer
/// is either a verified witness or an inconsistent linear system.
pub fn splits_into_homology(c: &Complex) -> Result<SplitCertificate> {
    let alg = c.algebra().clone();
    let bound = alg.dim();
    let mut pieces = Vec::new();
    let mut stalks = Vec::new();
    let mut augs = Vec::new();
    for i in c.degrees() {
        let h = c.homology(i);
        if h.is_zero() {
            continue;
        }
        let res = projective_resolution(&h, bound);
        if !res.complete {
            return Err(Error::Unsupported(format!("homology in degree {i} has no finite resolution")));
        }
        let p = Complex::from_resolution(&res).shift(-i);
        let s = Complex::stalk(&h, i);
        let aug = ChainMap::from_degree_maps(&p, &s, |n| {
            if n == i {
                res.augmentation.clone()
            } else {
                p.object(n).zero_map_to(&s.object(n))
            }
        });
        pieces.push(p);
        stalks.push(s);
        augs.push(aug);
    }
    let prefs: Vec<&Complex> = pieces.iter().collect();
    let srefs: Vec<&Complex> = stalks.iter().collect();
    let psum = Complex::direct_sum(alg.clone(), &prefs);
    let ssum = Complex::direct_sum(alg.clone(), &srefs);
    let mut augmentation = ChainMap::zero(&psum.complex, &ssum.complex);
    for (k, a) in augs.iter().enumerate() {
        let term = ssum.injections[k].compose(a).compose(&psum.projections[k]);
        augmentation = augmentation.add(&term);
    }
    let replacement = psum.complex;

    let classes = HomComplex::window(&replacement, c, -1, 1)?.homology(0);
    let field = alg.field();
    let rows_of = |g: &ChainMap| -> Vec<Scalar> {
        let mut v = Vec::new();
        for i in c.degrees() {
            let hc = c.homology_data(i);
            if hc.module.is_zero() {
                continue;
            }
            let hp = replacement.homology_data(i);
            v.extend(hc.project.compose(&g.component(i)).compose(&hp.lift).vectorize());
        }
        v
    };
    let cols: Vec<Matrix> =
        (0..classes.dim()).map(|k| Matrix::column(field, rows_of(&classes.to_chain_map(k)))).collect();
    // Right-hand side: the augmentation followed by the identification H^i(stalk) = H^i(C).
    let target = {
        let mut v = Vec::new();
        for i in c.degrees() {
            let hc = c.homology_data(i);
            if hc.module.is_zero() {
                continue;
            }
            let hp = replacement.homology_data(i);
            let hs = ssum.complex.homology_data(i);
            v.extend(hs.project.compose(&augmentation.component(i)).compose(&hp.lift).vectorize());
        }
        v
    };
    let refs: Vec<&Matrix> = cols.iter().collect();
    let system = Matrix::hstack(field, target.len(), &refs);
    let witness = match system.solve(&Matrix::column(field, target))?.particular() {
        None => None,
        Some(x) => {
            let mut g = ChainMap::zero(&replacement, c);
            for (k, coeff) in x.entries().iter().enumerate() {
                if !coeff.is_zero() {
                    g = g.add(&element_to_chain_map(&classes.representative(k), &replacement, c).scale(coeff));
                }
            }
            Some(g)
        }
    };
    let splits = witness.as_ref().is_some_and(|g| g.commutes() && g.is_quasi_iso()) && augmentation.is_quasi_iso();
    Ok(SplitCertificate { splits, replacement, homology_sum: ssum.complex, augmentation, witness })
}

/// A random complex of projectives in degrees `lo..=hi` with at most `max_summands`
/// indecomposable summands per degree; each differential is a random map killing the previous one.
pub fn random_complex<R: Rng + ?Sized>(
    algebra: &Arc<BasicAlgebra>,
    lo: i32,
    hi: i32,
    max_summands: usize,
    rng: &mut R,
) -> Result<Complex> {
    let n = algebra.num_vertices();
    let field = algebra.field();
    let objects: Vec<_> = (lo..=hi)
        .map(|_| {
            let k = rng.gen_range(0..=max_summands);
            let mut summands: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            summands.sort_unstable();
            free_module(algebra, &summands)
        })
        .collect();
    let mut differentials: Vec<ModuleMap> = Vec::new();
    for k in 0..objects.len().saturating_sub(1) {
        let h = hom(&objects[k], &objects[k + 1])?;
        let allowed: Vec<Vec<Scalar>> = match differentials.last() {
            None => (0..h.dim())
                .map(|j| (0..h.dim()).map(|t| if t == j { field.one() } else { field.zero() }).collect())
                .collect(),
            Some(prev) => {
                let cols: Vec<Matrix> =
                    h.basis.iter().map(|b| Matrix::column(field, b.compose(prev).vectorize())).collect();
                let refs: Vec<&Matrix> = cols.iter().collect();
                let rows = prev.components.iter().zip(objects[k + 1].dims()).map(|(m, d)| m.cols() * d).sum();
                let kernel = Matrix::hstack(field, rows, &refs).kernel_basis();
                (0..kernel.cols()).map(|j| kernel.col(j).entries().to_vec()).collect()
            }
        };
        let mut coeffs = vec![field.zero(); h.dim()];
        for v in &allowed {
            let c = field.random(rng);
            for (a, b) in coeffs.iter_mut().zip(v) {
                *a = &*a + &(&c * b);
            }
        }
        differentials.push(h.element(&coeffs));
    }
    Complex::new(algebra.clone(), lo, objects, differentials)
}
