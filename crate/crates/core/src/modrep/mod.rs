//! Right modules over a [`BasicAlgebra`], realized as quiver representations.
//!
//! A right module `M` has one space `M_v = M e_v` per vertex. Right
//! multiplication by an arrow `α: x -> y` sends `M_y` to `M_x`, so the matrix
//! stored for `α` has shape `dim M_x × dim M_y`. The projective `P_v = e_v A`
//! has `(P_v)_x = e_v A e_x`, spanned by the paths `x -> v`, which makes
//! `Hom(P_i, M) ≅ M_i` and `Hom(P_i, P_j) ≅ e_j A e_i`.

mod decompose;
mod resolution;

use std::sync::Arc;

use rand::Rng;

pub use decompose::{decompose, is_isomorphic_indecomposable, Decomposition, Summand};
pub use resolution::{
    ext, free_module, global_dimension, is_split_exact, projective_cover, projective_dimension, projective_resolution,
    ExtResult, ProjectiveCover, Resolution,
};

use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::quiver::Path;
use crate::scalars::{ExactField, Matrix, Scalar, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<BasicAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

pub(crate) fn same_algebra(a: &Arc<BasicAlgebra>, b: &Arc<BasicAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Representation {
    /// Validates shapes and the algebra's relations.
    pub fn new(algebra: Arc<BasicAlgebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Representation> {
        let rep = Representation { algebra, dims, actions };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<()> {
        let q = self.algebra.quiver();
        if self.dims.len() != q.num_vertices() || self.actions.len() != q.num_arrows() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} vertex dims and {} arrow matrices",
                q.num_vertices(),
                q.num_arrows()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&self.actions) {
            if m.shape() != (self.dims[a.source], self.dims[a.target]) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    self.dims[a.source],
                    self.dims[a.target],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != self.algebra.field() {
                return Err(Error::InvalidRepresentation(format!("arrow `{}` uses another field", a.name)));
            }
        }
        for rel in self.algebra.relations() {
            let (_, p0) = &rel.terms[0];
            let mut sum = Matrix::zeros(self.field(), self.dims[p0.source], self.dims[p0.target]);
            for (c, p) in &rel.terms {
                sum = &sum + &self.path_action(p).scale(c);
            }
            if !sum.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation through {} is violated",
                    q.display_path(p0)
                )));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<BasicAlgebra>) -> Representation {
        let n = algebra.num_vertices();
        Self::with_zero_actions(algebra, vec![0; n])
    }

    fn with_zero_actions(algebra: Arc<BasicAlgebra>, dims: Vec<usize>) -> Representation {
        let f = algebra.field();
        let actions =
            algebra.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.source], dims[a.target])).collect();
        Representation { algebra, dims, actions }
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: Arc<BasicAlgebra>, v: usize) -> Representation {
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v] = 1;
        Self::with_zero_actions(algebra, dims)
    }

    /// The indecomposable projective `P_v = e_v A`.
    pub fn projective(algebra: Arc<BasicAlgebra>, v: usize) -> Representation {
        let q = algebra.quiver();
        let n = q.num_vertices();
        let spaces: Vec<Vec<usize>> = (0..n).map(|x| algebra.basis_between(x, v)).collect();
        let dims = spaces.iter().map(Vec::len).collect();
        let f = algebra.field();
        let st = algebra.structure();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let alpha = algebra.basis_index(&q.arrow_path(ai)).expect("arrows are normal");
                let (rows, cols) = (&spaces[a.source], &spaces[a.target]);
                let mut m = Matrix::zeros(f, rows.len(), cols.len());
                for (c, &p) in cols.iter().enumerate() {
                    for (k, s) in st.basis_product(p, alpha) {
                        let r = rows.iter().position(|x| x == k).expect("product stays in e_v A e_x");
                        m[(r, c)] = s.clone();
                    }
                }
                m
            })
            .collect();
        Representation { algebra, dims, actions }
    }

    /// Basis positions of `P_v` at vertex `x`, as algebra basis indices.
    pub fn projective_basis(algebra: &BasicAlgebra, v: usize, x: usize) -> Vec<usize> {
        algebra.basis_between(x, v)
    }

    /// Random module with vertex dimensions in `0..=max_dim`.
    ///
    /// Violated monomial relations are repaired by zeroing the first arrow of the relation path;
    /// algebras with non-monomial relations are retried a bounded number of times.
    pub fn random<R: Rng + ?Sized>(algebra: Arc<BasicAlgebra>, max_dim: usize, rng: &mut R) -> Result<Representation> {
        let dims: Vec<usize> = (0..algebra.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
        Self::random_with_dims(algebra, dims, rng)
    }

    pub fn random_with_dims<R: Rng + ?Sized>(
        algebra: Arc<BasicAlgebra>,
        dims: Vec<usize>,
        rng: &mut R,
    ) -> Result<Representation> {
        let f = algebra.field();
        for _ in 0..64 {
            let mut actions: Vec<Matrix> = algebra
                .quiver()
                .arrows()
                .iter()
                .map(|a| Matrix::random(f, dims[a.source], dims[a.target], rng))
                .collect();
            let mut rep = Representation { algebra: algebra.clone(), dims: dims.clone(), actions: actions.clone() };
            for rel in algebra.relations().iter().filter(|r| r.is_monomial()) {
                let p = &rel.terms[0].1;
                if !rep.path_action(p).is_zero() {
                    let a = p.arrows[0];
                    actions[a] = Matrix::zeros(f, actions[a].rows(), actions[a].cols());
                    rep.actions = actions.clone();
                }
            }
            if rep.validate().is_ok() {
                return Ok(rep);
            }
        }
        Err(Error::Unsupported("could not sample a module satisfying the relations".into()))
    }

    pub fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> ExactField {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.actions[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Right action of a path from `x` to `y`: a map `M_y -> M_x`.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[p.target]);
        for &a in p.arrows.iter().rev() {
            m = &self.actions[a] * &m;
        }
        m
    }

    /// Right action of `x ∈ e_j A e_i`, a map `M_j -> M_i`.
    pub fn element_action(&self, x: &[Scalar], i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dims[i], self.dims[j]);
        for (k, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let p = &self.algebra.basis()[k];
            if p.source == i && p.target == j {
                m = &m + &self.path_action(p).scale(c);
            }
        }
        m
    }

    /// The map `P_v -> self` sending the generator `e_v` to `m ∈ M_v` (Yoneda).
    pub fn map_from_projective(&self, v: usize, m: &Matrix) -> ModuleMap {
        let n = self.algebra.num_vertices();
        let components = (0..n)
            .map(|x| {
                let paths = self.algebra.basis_between(x, v);
                let cols: Vec<Matrix> =
                    paths.iter().map(|&p| &self.path_action(&self.algebra.basis()[p]) * m).collect();
                let refs: Vec<&Matrix> = cols.iter().collect();
                Matrix::hstack(self.field(), self.dims[x], &refs)
            })
            .collect();
        ModuleMap { components }
    }

    /// Direct sum with its injections and projections.
    pub fn direct_sum(algebra: Arc<BasicAlgebra>, parts: &[&Representation]) -> DirectSum {
        let f = algebra.field();
        let n = algebra.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let actions = (0..algebra.quiver().num_arrows())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.actions[a]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let module = Representation { algebra, dims: dims.clone(), actions };
        let mut offsets = vec![0usize; n];
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for p in parts {
            let inj = (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(f, dims[v], p.dims[v]);
                    m.set_block(offsets[v], 0, &Matrix::identity(f, p.dims[v]));
                    m
                })
                .collect::<Vec<_>>();
            let proj = inj.iter().map(Matrix::transpose).collect();
            for v in 0..n {
                offsets[v] += p.dims[v];
            }
            injections.push(ModuleMap { components: inj });
            projections.push(ModuleMap { components: proj });
        }
        DirectSum { module, injections, projections }
    }

    /// The subquotient `W / U` for submodules `U ⊆ W`, each given per vertex by spanning columns.
    pub fn subquotient(&self, whole: &[Matrix], sub: &[Matrix]) -> SubquotientModule {
        let f = self.field();
        let parts: Vec<Subquotient> = whole.iter().zip(sub).map(|(w, u)| Subquotient::new(w, u)).collect();
        let dims = parts.iter().map(Subquotient::dim).collect::<Vec<_>>();
        let actions = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let m = &(&parts[a.source].project * &self.actions[ai]) * &parts[a.target].lift;
                debug_assert_eq!(m.field(), f);
                m
            })
            .collect();
        let module = Representation { algebra: self.algebra.clone(), dims, actions };
        let lift = ModuleMap { components: parts.iter().map(|p| p.lift.clone()).collect() };
        let project = ModuleMap { components: parts.iter().map(|p| p.project.clone()).collect() };
        SubquotientModule { module, lift, project }
    }

    fn full_spans(&self) -> Vec<Matrix> {
        self.dims.iter().map(|&d| Matrix::identity(self.field(), d)).collect()
    }

    fn zero_spans(&self) -> Vec<Matrix> {
        self.dims.iter().map(|&d| Matrix::zeros(self.field(), d, 0)).collect()
    }

    /// Submodule spanned per vertex by the given columns, with its inclusion.
    pub fn submodule(&self, spans: &[Matrix]) -> (Representation, ModuleMap) {
        let sq = self.subquotient(spans, &self.zero_spans());
        (sq.module, sq.lift)
    }

    /// Quotient by the submodule spanned per vertex by the given columns, with the projection.
    pub fn quotient(&self, spans: &[Matrix]) -> (Representation, ModuleMap) {
        let sq = self.subquotient(&self.full_spans(), spans);
        (sq.module, sq.project)
    }

    /// Per-vertex spans of `rad M = M · J`.
    pub fn radical_spans(&self) -> Vec<Matrix> {
        let q = self.algebra.quiver();
        (0..q.num_vertices())
            .map(|v| {
                let imgs: Vec<&Matrix> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .map(|(i, _)| &self.actions[i])
                    .collect();
                Matrix::hstack(self.field(), self.dims[v], &imgs).column_space()
            })
            .collect()
    }

    /// The radical and its inclusion.
    pub fn radical(&self) -> (Representation, ModuleMap) {
        self.submodule(&self.radical_spans())
    }

    /// `M / rad M` and the projection.
    pub fn top(&self) -> (Representation, ModuleMap) {
        self.quotient(&self.radical_spans())
    }

    /// True when the module is a direct sum of indecomposable projectives.
    pub fn is_projective(&self) -> bool {
        projective_cover(self).projective.dim() == self.dim()
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap { components: self.full_spans() }
    }

    pub fn zero_map_to(&self, target: &Representation) -> ModuleMap {
        ModuleMap {
            components: (0..self.dims.len())
                .map(|v| Matrix::zeros(self.field(), target.dims[v], self.dims[v]))
                .collect(),
        }
    }
}

/// A direct sum `⊕ M_k` with injections `M_k -> ⊕` and projections `⊕ -> M_k`.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// A subquotient module `W/U` of some `M`: `lift: W/U -> M` picks representatives and
/// `project: M ⊇ W -> W/U` is valid on `W`.
#[derive(Clone, Debug)]
pub struct SubquotientModule {
    pub module: Representation,
    pub lift: ModuleMap,
    pub project: ModuleMap,
}

/// A module homomorphism as one matrix per vertex, `f_v: M_v -> N_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub components: Vec<Matrix>,
}

impl ModuleMap {
    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap { components: self.components.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        self.components
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()
            .map(|components| ModuleMap { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Matrix::rank).sum()
    }

    /// Shapes match and `f_{s(α)} ρ_M(α) = ρ_N(α) f_{t(α)}` for every arrow.
    pub fn is_homomorphism(&self, source: &Representation, target: &Representation) -> bool {
        let n = source.dims.len();
        if self.components.len() != n || (0..n).any(|v| self.components[v].shape() != (target.dims[v], source.dims[v]))
        {
            return false;
        }
        source.algebra.quiver().arrows().iter().enumerate().all(|(ai, a)| {
            &self.components[a.source] * &source.actions[ai] == &target.actions[ai] * &self.components[a.target]
        })
    }

    /// Concatenated row-major entries, vertex by vertex.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn from_vector(field: ExactField, source: &Representation, target: &Representation, v: &[Scalar]) -> ModuleMap {
        let mut off = 0;
        let components = (0..source.dims.len())
            .map(|x| {
                let (r, c) = (target.dims[x], source.dims[x]);
                let m = Matrix::from_scalars(field, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        ModuleMap { components }
    }

    /// `[f_1 f_2 ...]: ⊕ M_k -> N` for a direct sum built in the same order.
    pub fn copair(field: ExactField, target: &Representation, maps: &[&ModuleMap]) -> ModuleMap {
        let n = target.dims.len();
        ModuleMap {
            components: (0..n)
                .map(|v| {
                    let parts: Vec<&Matrix> = maps.iter().map(|m| &m.components[v]).collect();
                    Matrix::hstack(field, target.dims[v], &parts)
                })
                .collect(),
        }
    }

    /// `f_1 ⊕ f_2 ⊕ ...` between direct sums built in the same order.
    pub fn diagonal(field: ExactField, maps: &[&ModuleMap]) -> ModuleMap {
        let n = maps.first().map_or(0, |m| m.components.len());
        ModuleMap {
            components: (0..n)
                .map(|v| {
                    let parts: Vec<&Matrix> = maps.iter().map(|m| &m.components[v]).collect();
                    Matrix::block_diag(field, &parts)
                })
                .collect(),
        }
    }

    /// Kernel of `self: source -> target` with its inclusion.
    pub fn kernel(&self, source: &Representation) -> (Representation, ModuleMap) {
        source.submodule(&self.components.iter().map(Matrix::kernel_basis).collect::<Vec<_>>())
    }

    /// Image of `self` inside `target`, with its inclusion.
    pub fn image(&self, target: &Representation) -> (Representation, ModuleMap) {
        target.submodule(&self.components.iter().map(Matrix::column_space).collect::<Vec<_>>())
    }

    /// Cokernel of `self` with the projection from `target`.
    pub fn cokernel(&self, target: &Representation) -> (Representation, ModuleMap) {
        target.quotient(&self.components.iter().map(Matrix::column_space).collect::<Vec<_>>())
    }
}

/// A basis of `Hom(M, N)`, found as the solution space of the commutation equations.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<ModuleMap>,
    /// Left inverse of the vectorized basis, for coordinates.
    left_inverse: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in [`HomSpace::basis`].
    pub fn coordinates(&self, f: &ModuleMap) -> Vec<Scalar> {
        let v = Matrix::column(self.source.field(), f.vectorize());
        (&self.left_inverse * &v).entries().to_vec()
    }

    pub fn element(&self, coeffs: &[Scalar]) -> ModuleMap {
        let mut acc = self.source.zero_map_to(&self.target);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn contains_isomorphism(&self) -> bool {
        self.basis.iter().any(ModuleMap::is_isomorphism)
    }
}

/// All module maps `m -> n`.
pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let q = m.algebra.quiver();
    let nv = q.num_vertices();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offsets[nv];
    let mut eqs: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (am, an) = (&m.actions[ai], &n.actions[ai]);
        for r in 0..n.dims[s] {
            for c in 0..m.dims[t] {
                let mut row = Vec::new();
                for k in 0..m.dims[s] {
                    let coeff = &am[(k, c)];
                    if !coeff.is_zero() {
                        row.push((offsets[s] + r * m.dims[s] + k, coeff.clone()));
                    }
                }
                for k in 0..n.dims[t] {
                    let coeff = &an[(r, k)];
                    if !coeff.is_zero() {
                        row.push((offsets[t] + k * m.dims[t] + c, -coeff));
                    }
                }
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    let mut system = Matrix::zeros(f, eqs.len(), unknowns);
    for (i, row) in eqs.iter().enumerate() {
        for (j, c) in row {
            system[(i, *j)] = &system[(i, *j)] + c;
        }
    }
    let kernel = system.kernel_basis();
    let basis = (0..kernel.cols()).map(|j| ModuleMap::from_vector(f, m, n, kernel.col(j).entries())).collect();
    let left_inverse = left_inverse(&kernel);
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, left_inverse })
}

/// A left inverse of a matrix with independent columns.
pub(crate) fn left_inverse(b: &Matrix) -> Matrix {
    let comp = b.complement_basis();
    let full = Matrix::hstack(b.field(), b.rows(), &[b, &comp]);
    full.inverse().expect("completed basis").block(0, b.cols(), 0, b.rows())
}

/// The map `P_i -> P_j` given by left multiplication with `x ∈ e_j A e_i`.
pub fn left_multiplication_map(algebra: &Arc<BasicAlgebra>, i: usize, j: usize, x: &[Scalar]) -> ModuleMap {
    let pj = Representation::projective(algebra.clone(), j);
    let coords: Vec<Scalar> = algebra.basis_between(i, j).iter().map(|&k| x[k].clone()).collect();
    pj.map_from_projective(i, &Matrix::column(algebra.field(), coords))
}

/// The map `P_i -> P_j` induced by the unique quiver path `i -> j`; zero when that path lies in the ideal.
pub fn canonical_map(algebra: &Arc<BasicAlgebra>, i: usize, j: usize) -> Result<ModuleMap> {
    let q = algebra.quiver();
    let paths = q.paths_between(i, j)?;
    let name = |v: usize| q.vertex_name(v).to_string();
    match paths.as_slice() {
        [] => Err(Error::NoPath(name(i), name(j))),
        [p] => Ok(left_multiplication_map(algebra, i, j, &algebra.element_of_path(p))),
        _ => Err(Error::AmbiguousPath(name(i), name(j))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r() -> Arc<BasicAlgebra> {
        Arc::new(builtin::algebra_r(ExactField::Rationals))
    }

    #[test]
    fn projective_dimension_vectors_over_r() {
        let r = r();
        // (P_v)_x is spanned by the paths x -> v.
        assert_eq!(Representation::projective(r.clone(), 0).dims(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(Representation::projective(r.clone(), 7).dims(), &[1, 1, 1, 1, 1, 1, 1, 1, 0, 0]);
        assert_eq!(Representation::projective(r.clone(), 8).dims(), &[0, 1, 1, 1, 1, 1, 1, 1, 1, 0]);
        assert_eq!(Representation::projective(r.clone(), 9).dims(), &[0, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        for v in 0..10 {
            assert_eq!(Representation::projective(r.clone(), v).dims()[v], 1);
        }
    }

    #[test]
    fn hom_between_projectives_matches_corners() {
        let r = r();
        for i in 0..10 {
            for j in 0..10 {
                let h =
                    hom(&Representation::projective(r.clone(), i), &Representation::projective(r.clone(), j)).unwrap();
                assert_eq!(h.dim(), r.basis_between(i, j).len(), "Hom(P{}, P{})", i + 1, j + 1);
            }
        }
        let h = hom(&Representation::projective(r.clone(), 0), &Representation::projective(r.clone(), 8)).unwrap();
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn canonical_maps_vanish_exactly_at_1_9_and_1_10() {
        let r = r();
        for i in 0..10 {
            for j in i..10 {
                let f = canonical_map(&r, i, j).unwrap();
                let vanishes = i == 0 && (j == 8 || j == 9);
                assert_eq!(f.is_zero(), vanishes, "({}, {})", i + 1, j + 1);
                let (pi, pj) = (Representation::projective(r.clone(), i), Representation::projective(r.clone(), j));
                assert!(f.is_homomorphism(&pi, &pj));
            }
        }
        let id = canonical_map(&r, 3, 3).unwrap();
        assert_eq!(id, Representation::projective(r.clone(), 3).identity_map());
        assert!(matches!(canonical_map(&r, 5, 2), Err(Error::NoPath(_, _))));
    }

    #[test]
    fn hom_contains_identity() {
        let r = r();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let m = Representation::random(r.clone(), 2, &mut rng).unwrap();
            let h = hom(&m, &m).unwrap();
            let id = m.identity_map();
            assert_eq!(h.element(&h.coordinates(&id)), id);
            for b in &h.basis {
                assert!(b.is_homomorphism(&m, &m));
            }
        }
    }

    #[test]
    fn tops_and_radicals() {
        let r = r();
        for v in 0..10 {
            let p = Representation::projective(r.clone(), v);
            let (top, _) = p.top();
            assert_eq!(top.dims(), Representation::simple(r.clone(), v).dims());
            assert!(Representation::simple(r.clone(), v).radical().0.is_zero());
        }
        let (rad, incl) = Representation::projective(r.clone(), 7).radical();
        assert_eq!(rad.dims(), &[1, 1, 1, 1, 1, 1, 1, 0, 0, 0]);
        assert!(incl.is_homomorphism(&rad, &Representation::projective(r.clone(), 7)));
    }

    #[test]
    fn relation_violation_detected() {
        let r = r();
        let f = r.field();
        let dims = vec![1; 10];
        let actions = (0..9).map(|_| Matrix::identity(f, 1)).collect();
        assert!(matches!(Representation::new(r.clone(), dims, actions), Err(Error::InvalidRepresentation(_))));
        let bad_shape = vec![Matrix::zeros(f, 2, 2); 9];
        assert!(Representation::new(r, vec![1; 10], bad_shape).is_err());
    }

    #[test]
    fn kernel_image_cokernel_dimensions() {
        let r = r();
        let f = canonical_map(&r, 1, 4).unwrap();
        let (p2, p5) = (Representation::projective(r.clone(), 1), Representation::projective(r.clone(), 4));
        let (k, _) = f.kernel(&p2);
        let (im, _) = f.image(&p5);
        let (ck, proj) = f.cokernel(&p5);
        assert_eq!(k.dim() + im.dim(), p2.dim());
        assert_eq!(im.dim() + ck.dim(), p5.dim());
        assert!(proj.is_homomorphism(&p5, &ck));
    }
}
