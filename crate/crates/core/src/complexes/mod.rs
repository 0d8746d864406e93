//! Bounded cochain complexes of modules and chain maps between them.
//!
//! Sign conventions, used everywhere in the crate:
//! * `C[l]^n = C^{n+l}` with differential `(-1)^l d_C`;
//! * the Hom complex has `δ(f) = d_D ∘ f - (-1)^n f ∘ d_C` in degree `n`;
//! * `cone(f)^n = C^{n+1} ⊕ D^n` with differential `[[-d_C, 0], [f, d_D]]`.

mod hom;
mod split;

use std::sync::Arc;

pub use hom::{hom_complex, homotopy_hom, HomComplex, HomElement, HomotopyHom};
pub use split::{random_complex, splits_into_homology, SplitCertificate};

use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::modrep::{same_algebra, ModuleMap, Representation, Resolution, SubquotientModule};
use crate::scalars::Matrix;

/// A bounded cochain complex. `objects[k]` sits in degree `lo + k`; outside that range the
/// complex is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    algebra: Arc<BasicAlgebra>,
    lo: i32,
    objects: Vec<Representation>,
    /// `differentials[k]: objects[k] -> objects[k+1]`.
    differentials: Vec<ModuleMap>,
}

impl Complex {
    /// Checks shapes, that every differential is a module map, and `d ∘ d = 0`.
    pub fn new(
        algebra: Arc<BasicAlgebra>,
        lo: i32,
        objects: Vec<Representation>,
        differentials: Vec<ModuleMap>,
    ) -> Result<Complex> {
        if differentials.len() + 1 != objects.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} objects need {} differentials, got {}",
                objects.len(),
                objects.len().saturating_sub(1),
                differentials.len()
            )));
        }
        if objects.iter().any(|o| !same_algebra(o.algebra(), &algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        for (k, d) in differentials.iter().enumerate() {
            if !d.is_homomorphism(&objects[k], &objects[k + 1]) {
                return Err(Error::InvalidComplex(format!("d^{} is not a module map", lo + k as i32)));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].compose(&differentials[k - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d^{} ∘ d^{} ≠ 0", lo + k as i32, lo + k as i32 - 1)));
            }
        }
        Ok(Complex { algebra, lo, objects, differentials })
    }

    pub fn zero(algebra: Arc<BasicAlgebra>) -> Complex {
        Complex { algebra, lo: 0, objects: Vec::new(), differentials: Vec::new() }
    }

    /// `m` concentrated in degree `n`.
    pub fn stalk(m: &Representation, n: i32) -> Complex {
        Complex { algebra: m.algebra().clone(), lo: n, objects: vec![m.clone()], differentials: Vec::new() }
    }

    /// `P_0 <- P_1 <- ...` placed in degrees `0, -1, ...`.
    pub fn from_resolution(res: &Resolution) -> Complex {
        let algebra = res.module.algebra().clone();
        if res.terms.is_empty() {
            return Complex::zero(algebra);
        }
        let len = res.terms.len();
        let objects: Vec<Representation> = res.terms.iter().rev().cloned().collect();
        let differentials = (0..len - 1).map(|k| res.differentials[len - 2 - k].clone()).collect();
        Complex { algebra, lo: -(len as i32 - 1), objects, differentials }
    }

    pub fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.algebra
    }

    /// Lowest degree of the stored range.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree of the stored range (`lo - 1` when empty).
    pub fn hi(&self) -> i32 {
        self.lo + self.objects.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    /// Degrees holding a nonzero object.
    pub fn support(&self) -> Vec<i32> {
        self.degrees().filter(|&n| !self.object(n).is_zero()).collect()
    }

    pub fn object(&self, n: i32) -> Representation {
        self.object_ref(n).cloned().unwrap_or_else(|| Representation::zero(self.algebra.clone()))
    }

    fn object_ref(&self, n: i32) -> Option<&Representation> {
        usize::try_from(n - self.lo).ok().and_then(|k| self.objects.get(k))
    }

    /// `d^n: C^n -> C^{n+1}`.
    pub fn differential(&self, n: i32) -> ModuleMap {
        match usize::try_from(n - self.lo).ok().and_then(|k| self.differentials.get(k)) {
            Some(d) => d.clone(),
            None => self.object(n).zero_map_to(&self.object(n + 1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.objects.iter().all(Representation::is_zero)
    }

    pub fn total_dim(&self) -> usize {
        self.objects.iter().map(Representation::dim).sum()
    }

    pub fn is_projective(&self) -> bool {
        self.objects.iter().all(Representation::is_projective)
    }

    /// `d^{n+1} ∘ d^n = 0` in every degree.
    pub fn d_squared_is_zero(&self) -> bool {
        (self.lo - 1..=self.hi()).all(|n| self.differential(n + 1).compose(&self.differential(n)).is_zero())
    }

    /// `C[l]`: `C[l]^n = C^{n+l}` and `d_{C[l]} = (-1)^l d_C`.
    pub fn shift(&self, l: i32) -> Complex {
        let sign = self.algebra.field().sign(l as i64);
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo - l,
            objects: self.objects.clone(),
            differentials: self.differentials.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Homology in degree `n` with its lift to cycles and projection from cycles.
    pub fn homology_data(&self, n: i32) -> SubquotientModule {
        let obj = self.object(n);
        let cycles: Vec<Matrix> = self.differential(n).components.iter().map(Matrix::kernel_basis).collect();
        let boundaries: Vec<Matrix> = self.differential(n - 1).components.iter().map(Matrix::column_space).collect();
        obj.subquotient(&cycles, &boundaries)
    }

    pub fn homology(&self, n: i32) -> Representation {
        self.homology_data(n).module
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.homology(n).is_zero())
    }

    /// The direct sum with its injection and projection chain maps.
    pub fn direct_sum(algebra: Arc<BasicAlgebra>, parts: &[&Complex]) -> ComplexSum {
        let f = algebra.field();
        let nonempty: Vec<&&Complex> = parts.iter().filter(|c| !c.objects.is_empty()).collect();
        let lo = nonempty.iter().map(|c| c.lo).min().unwrap_or(0);
        let hi = nonempty.iter().map(|c| c.hi()).max().unwrap_or(-1);
        let mut objects = Vec::new();
        let mut inj: Vec<Vec<ModuleMap>> = vec![Vec::new(); parts.len()];
        let mut proj: Vec<Vec<ModuleMap>> = vec![Vec::new(); parts.len()];
        for n in lo..=hi {
            let objs: Vec<Representation> = parts.iter().map(|c| c.object(n)).collect();
            let refs: Vec<&Representation> = objs.iter().collect();
            let sum = Representation::direct_sum(algebra.clone(), &refs);
            for (k, (i, p)) in sum.injections.into_iter().zip(sum.projections).enumerate() {
                inj[k].push(i);
                proj[k].push(p);
            }
            objects.push(sum.module);
        }
        let differentials = (lo..hi)
            .map(|n| {
                let ds: Vec<ModuleMap> = parts.iter().map(|c| c.differential(n)).collect();
                let refs: Vec<&ModuleMap> = ds.iter().collect();
                ModuleMap::diagonal(f, &refs)
            })
            .collect();
        let complex = Complex { algebra, lo, objects, differentials };
        let injections = parts
            .iter()
            .zip(inj)
            .map(|(c, maps)| ChainMap::from_degree_maps(c, &complex, |n| maps[(n - lo) as usize].clone()))
            .collect();
        let projections = parts
            .iter()
            .zip(proj)
            .map(|(c, maps)| ChainMap::from_degree_maps(&complex, c, |n| maps[(n - lo) as usize].clone()))
            .collect();
        ComplexSum { complex, injections, projections }
    }

    /// Smart truncation at `n`: `τ≤n C = (... -> C^{n-1} -> Z^n -> 0)` and
    /// `τ>n C = (0 -> C^n / Z^n -> C^{n+1} -> ...)`, with the degreewise short exact
    /// sequence `0 -> τ≤n C -> C -> τ>n C -> 0`.
    pub fn truncate(&self, n: i32) -> Truncation {
        let alg = self.algebra.clone();
        let cycles: Vec<Matrix> = self.differential(n).components.iter().map(Matrix::kernel_basis).collect();
        let (z, z_incl) = self.object(n).submodule(&cycles);
        let (q, q_proj) = self.object(n).quotient(&cycles);
        let lo = self.lo.min(n);
        let hi = self.hi().max(n);

        let lower_objects: Vec<Representation> =
            (lo..=n).map(|k| if k == n { z.clone() } else { self.object(k) }).collect();
        let lower_diffs: Vec<ModuleMap> = (lo..n)
            .map(|k| {
                if k == n - 1 {
                    // d^{n-1} lands in Z^n; read it through the inclusion.
                    corestrict(&self.differential(k), &z_incl)
                } else {
                    self.differential(k)
                }
            })
            .collect();
        let lower = Complex { algebra: alg.clone(), lo, objects: lower_objects, differentials: lower_diffs };

        let upper_objects: Vec<Representation> =
            (n..=hi).map(|k| if k == n { q.clone() } else { self.object(k) }).collect();
        let upper_diffs: Vec<ModuleMap> = (n..hi)
            .map(|k| {
                if k == n {
                    factor_through_quotient(&self.differential(n), &q_proj, &q)
                } else {
                    self.differential(k)
                }
            })
            .collect();
        let upper = Complex { algebra: alg, lo: n, objects: upper_objects, differentials: upper_diffs };

        let inclusion = ChainMap::from_degree_maps(&lower, self, |k| {
            if k == n {
                z_incl.clone()
            } else {
                self.object(k).identity_map()
            }
        });
        let projection = ChainMap::from_degree_maps(self, &upper, |k| {
            if k == n {
                q_proj.clone()
            } else if k > n {
                self.object(k).identity_map()
            } else {
                self.object(k).zero_map_to(&upper.object(k))
            }
        });
        Truncation { lower, upper, inclusion, projection }
    }
}

/// Rewrites `f: X -> Y` with image inside a submodule `U ⊆ Y` as a map `X -> U`.
fn corestrict(f: &ModuleMap, incl: &ModuleMap) -> ModuleMap {
    ModuleMap {
        components: f
            .components
            .iter()
            .zip(&incl.components)
            .map(|(fv, iv)| {
                let sol = iv.solve(fv).expect("shapes agree");
                sol.particular().expect("image lies in the submodule").clone()
            })
            .collect(),
    }
}

/// Induces `Y/U -> Z` from `f: Y -> Z` vanishing on `U`, given the quotient map `Y -> Y/U`.
fn factor_through_quotient(f: &ModuleMap, proj: &ModuleMap, q: &Representation) -> ModuleMap {
    ModuleMap {
        components: f
            .components
            .iter()
            .zip(&proj.components)
            .enumerate()
            .map(|(v, (fv, pv))| {
                // Solve X · pv = fv for X: transpose to pvᵀ Xᵀ = fvᵀ.
                let sol = pv.transpose().solve(&fv.transpose()).expect("shapes agree");
                let x = sol.particular().expect("map vanishes on the kernel").transpose();
                debug_assert_eq!(x.cols(), q.dims()[v]);
                x
            })
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: Complex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub lower: Complex,
    pub upper: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// A chain map `f: C -> D`; `components[k]` is `f^n` for `n = source.lo() + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: Vec<ModuleMap>,
}

impl ChainMap {
    /// Checks that every component is a module map and that `f ∘ d_C = d_D ∘ f`.
    pub fn new(source: &Complex, target: &Complex, components: Vec<ModuleMap>) -> Result<ChainMap> {
        if components.len() != source.objects.len() {
            return Err(Error::InvalidChainMap(format!(
                "expected {} components, got {}",
                source.objects.len(),
                components.len()
            )));
        }
        let f = ChainMap { source: source.clone(), target: target.clone(), components };
        for n in source.degrees() {
            if !f.component(n).is_homomorphism(&source.object(n), &target.object(n)) {
                return Err(Error::InvalidChainMap(format!("f^{n} is not a module map")));
            }
        }
        if !f.commutes() {
            return Err(Error::InvalidChainMap("does not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_degree_maps(
        source: &Complex,
        target: &Complex,
        mut f: impl FnMut(i32) -> ModuleMap,
    ) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), components: source.degrees().map(&mut f).collect() }
    }

    pub fn identity(c: &Complex) -> ChainMap {
        Self::from_degree_maps(c, c, |n| c.object(n).identity_map())
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        Self::from_degree_maps(source, target, |n| source.object(n).zero_map_to(&target.object(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i32) -> ModuleMap {
        match usize::try_from(n - self.source.lo).ok().and_then(|k| self.components.get(k)) {
            Some(c) => c.clone(),
            None => self.source.object(n).zero_map_to(&self.target.object(n)),
        }
    }

    fn degree_span(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        lo - 1..=hi
    }

    pub fn commutes(&self) -> bool {
        self.degree_span().all(|n| {
            self.component(n + 1).compose(&self.source.differential(n))
                == self.target.differential(n).compose(&self.component(n))
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> ChainMap {
        Self::from_degree_maps(&g.source, &self.target, |n| self.component(n).compose(&g.component(n)))
    }

    pub fn add(&self, g: &ChainMap) -> ChainMap {
        Self::from_degree_maps(&self.source, &self.target, |n| self.component(n).add(&g.component(n)))
    }

    pub fn sub(&self, g: &ChainMap) -> ChainMap {
        Self::from_degree_maps(&self.source, &self.target, |n| self.component(n).sub(&g.component(n)))
    }

    pub fn scale(&self, s: &crate::scalars::Scalar) -> ChainMap {
        Self::from_degree_maps(&self.source, &self.target, |n| self.component(n).scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ModuleMap::is_zero)
    }

    /// `f[l]: C[l] -> D[l]` with `f[l]^n = f^{n+l}`.
    pub fn shift(&self, l: i32) -> ChainMap {
        let (s, t) = (self.source.shift(l), self.target.shift(l));
        ChainMap { source: s, target: t, components: self.components.clone() }
    }

    /// `H^n(f): H^n(C) -> H^n(D)`.
    pub fn induced_on_homology(&self, n: i32) -> ModuleMap {
        let hs = self.source.homology_data(n);
        let ht = self.target.homology_data(n);
        ht.project.compose(&self.component(n)).compose(&hs.lift)
    }

    /// True iff every induced map on homology is an isomorphism.
    pub fn is_quasi_iso(&self) -> bool {
        self.degree_span().all(|n| {
            let (hs, ht) = (self.source.homology(n), self.target.homology(n));
            hs.dims() == ht.dims() && self.induced_on_homology(n).is_isomorphism()
        })
    }

    /// `true` iff all components are isomorphisms.
    pub fn is_isomorphism(&self) -> bool {
        self.degree_span()
            .all(|n| self.source.object(n).dims() == self.target.object(n).dims() && self.component(n).is_isomorphism())
    }
}

/// The mapping cone of `f: C -> D` with its triangle maps `D -> cone(f) -> C[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cone(f)^n = C^{n+1} ⊕ D^n` with differential `[[-d_C, 0], [f, d_D]]`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    if !f.commutes() {
        return Err(Error::InvalidChainMap("cone of a non-chain map".into()));
    }
    let (c, d) = (&f.source, &f.target);
    let alg = c.algebra.clone();
    let field = alg.field();
    let lo = (c.lo - 1).min(d.lo);
    let hi = (c.hi() - 1).max(d.hi());
    let mut objects = Vec::new();
    let mut sums = Vec::new();
    for n in lo..=hi {
        let s = Representation::direct_sum(alg.clone(), &[&c.object(n + 1), &d.object(n)]);
        objects.push(s.module.clone());
        sums.push(s);
    }
    let differentials = (lo..hi)
        .map(|n| {
            let k = (n - lo) as usize;
            let (src, tgt) = (&sums[k], &sums[k + 1]);
            // Blocks: C^{n+1} -> C^{n+2} is -d_C, C^{n+1} -> D^{n+1} is f, D^n -> D^{n+1} is d_D.
            let cc = c.differential(n + 1).scale(&-field.one());
            let cd = f.component(n + 1);
            let dd = d.differential(n);
            let from_c = tgt.injections[0].compose(&cc).add(&tgt.injections[1].compose(&cd));
            let from_d = tgt.injections[1].compose(&dd);
            from_c.compose(&src.projections[0]).add(&from_d.compose(&src.projections[1]))
        })
        .collect();
    let complex = Complex { algebra: alg, lo, objects, differentials };
    let shifted = c.shift(1);
    let inclusion = ChainMap::from_degree_maps(d, &complex, |n| sums[(n - lo) as usize].injections[1].clone());
    let projection = ChainMap::from_degree_maps(&complex, &shifted, |n| sums[(n - lo) as usize].projections[0].clone());
    Ok(Cone { complex, inclusion, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::modrep::{canonical_map, projective_resolution};
    use crate::scalars::ExactField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r() -> Arc<BasicAlgebra> {
        Arc::new(builtin::algebra_r(ExactField::Rationals))
    }

    fn two_term(r: &Arc<BasicAlgebra>, i: usize, j: usize) -> Complex {
        let (pi, pj) = (Representation::projective(r.clone(), i), Representation::projective(r.clone(), j));
        Complex::new(r.clone(), 0, vec![pi, pj], vec![canonical_map(r, i, j).unwrap()]).unwrap()
    }

    #[test]
    fn invalid_complex_rejected() {
        let r = r();
        let p = Representation::projective(r.clone(), 1);
        let id = p.identity_map();
        let err = Complex::new(r.clone(), 0, vec![p.clone(), p.clone(), p.clone()], vec![id.clone(), id]);
        assert!(matches!(err, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn shift_and_homology() {
        let r = r();
        let t2 = two_term(&r, 0, 1);
        assert_eq!(t2.shift(0), t2);
        assert_eq!(t2.shift(1).shift(-1), t2);
        for l in -2..=2 {
            for n in -3..=3 {
                assert_eq!(t2.shift(l).homology(n).dims(), t2.homology(n + l).dims());
            }
        }
        // P_1 -> P_2 is injective with cokernel S_2.
        assert!(t2.homology(0).is_zero());
        assert_eq!(t2.homology(1).dims(), Representation::simple(r.clone(), 1).dims());
        let p = Representation::projective(r.clone(), 3);
        let acyclic = Complex::new(r.clone(), 0, vec![p.clone(), p.clone()], vec![p.identity_map()]).unwrap();
        assert!(acyclic.is_acyclic());
    }

    #[test]
    fn cone_of_identity_is_acyclic_and_of_zero_is_sum() {
        let r = r();
        let t = two_term(&r, 0, 4);
        let c = cone(&ChainMap::identity(&t)).unwrap();
        assert!(c.complex.d_squared_is_zero());
        assert!(c.complex.is_acyclic());
        let z = cone(&ChainMap::zero(&t, &t)).unwrap();
        let sum = Complex::direct_sum(r.clone(), &[&t.shift(1), &t]);
        for n in -2..=2 {
            assert_eq!(z.complex.object(n).dims(), sum.complex.object(n).dims());
            assert_eq!(z.complex.homology(n).dims(), sum.complex.homology(n).dims());
        }
        assert!(c.inclusion.commutes() && c.projection.commutes());
    }

    #[test]
    fn truncation_isolates_homology() {
        let r = r();
        let t = two_term(&r, 0, 8);
        // P_1 -> P_9 is zero, so H^0 = P_1 and H^1 = P_9.
        let tr = t.truncate(0);
        assert!(tr.lower.d_squared_is_zero() && tr.upper.d_squared_is_zero());
        assert_eq!(tr.lower.homology(0).dims(), t.homology(0).dims());
        assert!(tr.lower.homology(1).is_zero());
        assert_eq!(tr.upper.homology(1).dims(), t.homology(1).dims());
        assert!(tr.inclusion.commutes() && tr.projection.commutes());
        let top = t.truncate(5);
        assert_eq!(top.lower.total_dim(), t.total_dim());
        assert!(top.upper.is_zero());
    }

    #[test]
    fn resolution_augmentation_is_quasi_iso() {
        let r = r();
        let s9 = Representation::simple(r.clone(), 8);
        let res = projective_resolution(&s9, 10);
        let c = Complex::from_resolution(&res);
        assert_eq!((c.lo(), c.hi()), (-2, 0));
        assert!(c.d_squared_is_zero());
        let stalk = Complex::stalk(&s9, 0);
        let aug = ChainMap::new(
            &c,
            &stalk,
            vec![
                c.object(-2).zero_map_to(&Representation::zero(r.clone())),
                c.object(-1).zero_map_to(&Representation::zero(r.clone())),
                res.augmentation.clone(),
            ],
        )
        .unwrap();
        assert!(aug.is_quasi_iso());
        assert!(ChainMap::identity(&c).is_quasi_iso());
        assert!(!ChainMap::zero(&c, &stalk).is_quasi_iso());
    }

    #[test]
    fn random_complexes_satisfy_d_squared() {
        let r = r();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let c = random_complex(&r, -1, 1, 2, &mut rng).unwrap();
            assert!(c.d_squared_is_zero());
            assert!(c.is_projective());
        }
    }
}
