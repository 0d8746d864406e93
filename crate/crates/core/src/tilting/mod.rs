//! Tilting complexes: self-orthogonality, generation certificates, endomorphism algebras and
//! comparison of their presentations with a target algebra.

mod endo;
mod example;
mod presentation;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use endo::EndomorphismAlgebra;
pub use example::{example_generator_map, example_tilting, example_tilting_corrupted, regular_generator_map};
pub use presentation::{
    generator_map_is_isomorphism, is_split_radical, jacobson_radical, match_presentation, presentations_isomorphic,
    quiver_presentation, GeneratorMap, MatchReport, Presentation, Radical, RadicalMethod,
};

use crate::algebra::BasicAlgebra;
use crate::complexes::{cone, homotopy_hom, ChainMap, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::modrep::{same_algebra, Representation};
use crate::scalars::{ExactField, Matrix};

/// How to obtain an indecomposable projective from the summands of a candidate.
#[derive(Clone, Debug)]
pub enum Recipe {
    Summand(usize),
    Shift(Box<Recipe>, i32),
    /// The cone of `map`, which must go from the result of `source` to the result of `target`.
    Cone {
        source: Box<Recipe>,
        target: Box<Recipe>,
        map: ChainMap,
    },
}

impl Recipe {
    pub fn execute(&self, t: &TiltingCandidate) -> Result<Complex> {
        match self {
            Recipe::Summand(i) => {
                t.summands.get(*i).cloned().ok_or_else(|| Error::InvalidComplex(format!("no summand {}", i + 1)))
            }
            Recipe::Shift(r, l) => Ok(r.execute(t)?.shift(*l)),
            Recipe::Cone { source, target, map } => {
                if map.source() != &source.execute(t)? || map.target() != &target.execute(t)? {
                    return Err(Error::InvalidChainMap("cone map does not match its recipe".into()));
                }
                Ok(cone(map)?.complex)
            }
        }
    }

    pub fn describe(&self, t: &TiltingCandidate) -> String {
        match self {
            Recipe::Summand(i) => t.labels.get(*i).cloned().unwrap_or_else(|| format!("#{}", i + 1)),
            Recipe::Shift(r, l) => format!("{}[{}]", r.describe(t), l),
            Recipe::Cone { source, target, .. } => {
                format!("cone({} -> {})", source.describe(t), target.describe(t))
            }
        }
    }
}

/// A candidate tilting complex `T = ⊕ T_i` of projectives, with optional recipes
/// (`recipes[v]` should produce `P_v` up to shift).
#[derive(Clone, Debug)]
pub struct TiltingCandidate {
    pub algebra: Arc<BasicAlgebra>,
    pub summands: Vec<Complex>,
    pub labels: Vec<String>,
    pub recipes: Vec<Option<Recipe>>,
}

impl TiltingCandidate {
    pub fn new(algebra: Arc<BasicAlgebra>, summands: Vec<Complex>) -> Result<TiltingCandidate> {
        if summands.iter().any(|c| !same_algebra(c.algebra(), &algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let labels = (1..=summands.len()).map(|i| format!("T{i}")).collect();
        let recipes = vec![None; algebra.num_vertices()];
        Ok(TiltingCandidate { algebra, summands, labels, recipes })
    }

    pub fn with_recipes(mut self, recipes: Vec<Option<Recipe>>) -> Result<TiltingCandidate> {
        if recipes.len() != self.algebra.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} recipes for {} vertices",
                recipes.len(),
                self.algebra.num_vertices()
            )));
        }
        self.recipes = recipes;
        Ok(self)
    }

    /// `⊕ P_i` as stalk complexes in degree 0, with the obvious recipes.
    pub fn regular(algebra: Arc<BasicAlgebra>) -> TiltingCandidate {
        let n = algebra.num_vertices();
        let summands = (0..n).map(|v| Complex::stalk(&Representation::projective(algebra.clone(), v), 0)).collect();
        let labels = (1..=n).map(|i| format!("P{i}")).collect();
        let recipes = (0..n).map(|v| Some(Recipe::Summand(v))).collect();
        TiltingCandidate { algebra, summands, labels, recipes }
    }

    pub fn total(&self) -> Complex {
        let refs: Vec<&Complex> = self.summands.iter().collect();
        Complex::direct_sum(self.algebra.clone(), &refs).complex
    }

    pub fn is_projective(&self) -> bool {
        self.summands.iter().all(Complex::is_projective)
    }
}

/// `dim Hom_K(T_i, T_j[l])` for all pairs and `l ∈ lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfOrthogonality {
    pub lo: i32,
    pub hi: i32,
    /// `table[i][j][l - lo]`.
    pub table: Vec<Vec<Vec<usize>>>,
}

impl SelfOrthogonality {
    pub fn dim(&self, i: usize, j: usize, l: i32) -> usize {
        self.table[i][j][(l - self.lo) as usize]
    }

    /// Pairs and shifts `l ≠ 0` with a nonzero Hom.
    pub fn violations(&self) -> Vec<(usize, usize, i32, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, dims) in row.iter().enumerate() {
                for (k, &d) in dims.iter().enumerate() {
                    let l = self.lo + k as i32;
                    if l != 0 && d != 0 {
                        out.push((i, j, l, d));
                    }
                }
            }
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Computes `Hom_K(T_i, T_j[l])` for `l ∈ lo..=hi`, one Hom complex per pair.
pub fn verify_self_orthogonal(t: &TiltingCandidate, lo: i32, hi: i32) -> Result<SelfOrthogonality> {
    let n = t.summands.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let dims: Vec<Vec<usize>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let hc = HomComplex::window(&t.summands[i], &t.summands[j], lo - 1, hi + 1)?;
            Ok((lo..=hi).map(|l| hc.homology(l).dim()).collect())
        })
        .collect::<Result<_>>()?;
    let mut table = vec![Vec::with_capacity(n); n];
    for ((i, _), d) in pairs.into_iter().zip(dims) {
        table[i].push(d);
    }
    Ok(SelfOrthogonality { lo, hi, table })
}

/// Outcome of trying to reach one indecomposable projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerationStatus {
    /// `P_v[-shift]` was produced, with a verified quasi-isomorphism from the stalk complex.
    Certified { shift: i32, method: String },
    /// `P_v` is provably outside the thick closure.
    Failed(String),
    /// No witness was found, but no obstruction is known either.
    NotCertified(String),
}

impl GenerationStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, GenerationStatus::Certified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationResult {
    pub vertex: usize,
    pub status: GenerationStatus,
}

/// If the homology of `x` is `P_v` in a single degree `s`, returns `s` after verifying a
/// quasi-isomorphism `P_v[-s] -> x`.
pub fn projective_endpoint(x: &Complex, v: usize) -> Option<i32> {
    let alg = x.algebra().clone();
    let support: Vec<i32> = x.degrees().filter(|&n| !x.homology(n).is_zero()).collect();
    let [s] = support.as_slice() else { return None };
    let hd = x.homology_data(*s);
    let pv = Representation::projective(alg.clone(), v);
    if hd.module.dims() != pv.dims() {
        return None;
    }
    let field = alg.field();
    let hv = hd.module.dims()[v];
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e4 ^ v as u64);
    let candidates = (0..hv)
        .map(|k| Matrix::from_fn(field, hv, 1, |r, _| if r == k { field.one() } else { field.zero() }))
        .chain((0..32).map(|_| Matrix::random(field, hv, 1, &mut rng)));
    for h in candidates {
        let lift = &hd.lift.components[v] * &h;
        let g = x.object(*s).map_from_projective(v, &lift);
        let stalk = Complex::stalk(&pv, *s);
        if let Ok(w) = ChainMap::new(&stalk, x, vec![g]) {
            if w.is_quasi_iso() {
                return Some(*s);
            }
        }
    }
    None
}

/// Multiplicity of `P_v` in a projective module: `dim top(M)_v`.
fn projective_multiplicity(m: &Representation, v: usize) -> usize {
    m.top().0.dims()[v]
}

/// Searches shifts `T_i[l]` and cones of basis maps `T_i -> T_j[l]` for `|l| <= 1`.
fn cone_search(t: &TiltingCandidate, v: usize) -> Result<Option<(i32, String)>> {
    let n = t.summands.len();
    for (i, c) in t.summands.iter().enumerate() {
        if let Some(s) = projective_endpoint(c, v) {
            return Ok(Some((s, t.labels[i].clone())));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in -1..=1 {
                let h = homotopy_hom(&t.summands[i], &t.summands[j], l)?;
                for k in 0..h.dim() {
                    let c = cone(&h.to_chain_map(k))?.complex;
                    if let Some(s) = projective_endpoint(&c, v) {
                        return Ok(Some((s, format!("cone({} -> {}[{}])", t.labels[i], t.labels[j], l))));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Tries to reach every `P_v`: by the recipe if one is given, otherwise by a bounded cone search.
/// A projective that is not a summand of any term is reported as failed, since the thick
/// closure of `T` lies in `K^b` of the additive closure of those terms.
pub fn verify_generation(t: &TiltingCandidate) -> Result<Vec<GenerationResult>> {
    let n = t.algebra.num_vertices();
    (0..n)
        .map(|v| {
            let status = match &t.recipes[v] {
                Some(r) => {
                    let x = r.execute(t)?;
                    match projective_endpoint(&x, v) {
                        Some(shift) => GenerationStatus::Certified { shift, method: r.describe(t) },
                        None => GenerationStatus::Failed(format!(
                            "recipe {} does not give a shift of P{}",
                            r.describe(t),
                            v + 1
                        )),
                    }
                }
                None => match cone_search(t, v)? {
                    Some((shift, method)) => GenerationStatus::Certified { shift, method },
                    None => {
                        let occurs = t
                            .summands
                            .iter()
                            .any(|c| c.degrees().any(|d| projective_multiplicity(&c.object(d), v) > 0));
                        if occurs {
                            GenerationStatus::NotCertified("no witness found by bounded cone search".into())
                        } else {
                            GenerationStatus::Failed(format!("P{} is not a summand of any term", v + 1))
                        }
                    }
                },
            };
            Ok(GenerationResult { vertex: v, status })
        })
        .collect()
}

/// A presentation in printable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationSummary {
    pub vertices: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<String>,
    pub radical_method: String,
}

impl From<&Presentation> for PresentationSummary {
    fn from(p: &Presentation) -> Self {
        let q = &p.quiver;
        PresentationSummary {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| (a.name.clone(), q.vertex_name(a.source).to_string(), q.vertex_name(a.target).to_string()))
                .collect(),
            relations: p.relations.clone(),
            radical_method: p.radical.method.to_string(),
        }
    }
}

/// Facts about `End_K(T)`.
#[derive(Clone, Debug)]
pub struct EndomorphismReport {
    pub dim: usize,
    /// `hom_table[i][j] = dim Hom_K(T_i, T_j)`.
    pub hom_table: Vec<Vec<usize>>,
    pub associative: bool,
    pub idempotents_complete: bool,
    pub presentation: PresentationSummary,
    pub target: Option<MatchReport>,
}

/// Everything checked by [`verify_tilting`].
#[derive(Clone, Debug)]
pub struct TiltingReport {
    pub field: ExactField,
    pub labels: Vec<String>,
    pub projective_terms: bool,
    pub self_orthogonality: SelfOrthogonality,
    pub generation: Vec<GenerationResult>,
    pub endomorphism: EndomorphismReport,
    pub pass: bool,
}

/// Builds the images of generators of the target algebra inside `End_K(T)`.
pub type GeneratorMapBuilder<'a> = &'a dyn Fn(&EndomorphismAlgebra, &TiltingCandidate) -> Result<GeneratorMap>;

/// Options for [`verify_tilting`].
pub struct VerifyOptions<'a> {
    pub lo: i32,
    pub hi: i32,
    pub target: Option<&'a BasicAlgebra>,
    pub generator_map: Option<GeneratorMapBuilder<'a>>,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        VerifyOptions { lo: -3, hi: 3, target: None, generator_map: None }
    }
}

/// Runs every check on `t`. The result passes iff the terms are projective, `Hom_K(T, T[l]) = 0`
/// for `l ≠ 0` in the window, every projective is certified as generated, `End_K(T)` is an
/// associative basic algebra with complete idempotents, and it matches the target if one is given.
pub fn verify_tilting(t: &TiltingCandidate, opts: &VerifyOptions<'_>) -> Result<TiltingReport> {
    let self_orthogonality = verify_self_orthogonal(t, opts.lo, opts.hi)?;
    let generation = verify_generation(t)?;
    let end = EndomorphismAlgebra::new(t)?;
    let associative = end.algebra.is_associative();
    let idempotents_complete = end.algebra.idempotents_are_complete();
    let presentation = quiver_presentation(&end.algebra)?;
    let target = match opts.target {
        None => None,
        Some(b) => Some(match opts.generator_map.map(|build| build(&end, t)) {
            None => match_presentation(&end.algebra, b, None)?,
            Some(Ok(map)) => match_presentation(&end.algebra, b, Some(&map))?,
            Some(Err(e)) => MatchReport {
                vertex_bijection: None,
                map_is_isomorphism: Some(false),
                detail: format!("generator map unavailable: {e}"),
                matches: false,
            },
        }),
    };
    let projective_terms = t.is_projective();
    let pass = projective_terms
        && self_orthogonality.holds()
        && generation.iter().all(|g| g.status.is_certified())
        && associative
        && idempotents_complete
        && target.as_ref().is_none_or(|m| m.matches);
    Ok(TiltingReport {
        field: t.algebra.field(),
        labels: t.labels.clone(),
        projective_terms,
        self_orthogonality,
        generation,
        endomorphism: EndomorphismReport {
            dim: end.algebra.dim(),
            hom_table: end.hom_table(),
            associative,
            idempotents_complete,
            presentation: (&presentation).into(),
            target,
        },
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn r(f: ExactField) -> Arc<BasicAlgebra> {
        Arc::new(builtin::algebra_r(f))
    }

    #[test]
    fn example_shape() {
        let t = example_tilting(&r(ExactField::Prime(101))).unwrap();
        assert_eq!(t.summands.len(), 10);
        assert!(t.is_projective());
        assert_eq!((t.summands[8].lo(), t.summands[8].hi()), (1, 1));
        assert!(!t.summands[1].differential(0).is_zero());
    }

    #[test]
    fn example_is_tilting_with_endomorphism_algebra_s() {
        for f in [ExactField::Prime(101), ExactField::Rationals] {
            let r = r(f);
            let s = builtin::algebra_s(f);
            let t = example_tilting(&r).unwrap();
            let opts =
                VerifyOptions { target: Some(&s), generator_map: Some(&example_generator_map), ..Default::default() };
            let report = verify_tilting(&t, &opts).unwrap();
            assert!(report.self_orthogonality.holds());
            assert!(report.generation.iter().all(|g| g.status.is_certified()));
            assert_eq!(report.endomorphism.dim, 53);
            for i in 0..10 {
                for j in 0..10 {
                    assert_eq!(report.endomorphism.hom_table[i][j], s.basis_between(i, j).len(), "({i}, {j})");
                }
            }
            assert!(report.endomorphism.presentation.relations.is_empty());
            let m = report.endomorphism.target.as_ref().unwrap();
            assert_eq!(m.map_is_isomorphism, Some(true));
            assert!(report.pass);
        }
    }

    #[test]
    fn corrupted_example_fails() {
        let f = ExactField::Prime(101);
        let s = builtin::algebra_s(f);
        let t = example_tilting_corrupted(&r(f)).unwrap();
        let opts =
            VerifyOptions { target: Some(&s), generator_map: Some(&example_generator_map), ..Default::default() };
        let report = verify_tilting(&t, &opts).unwrap();
        assert!(!report.pass);
        assert!(!report.endomorphism.target.unwrap().matches);
    }

    #[test]
    fn p1_and_its_shift_are_not_self_orthogonal() {
        let r = r(ExactField::Rationals);
        let p1 = Complex::stalk(&Representation::projective(r.clone(), 0), 0);
        let t = TiltingCandidate::new(r.clone(), vec![p1.clone(), p1.shift(1)]).unwrap();
        let so = verify_self_orthogonal(&t, -3, 3).unwrap();
        assert!(!so.holds());
        assert_eq!(so.dim(0, 1, -1), 1);
        let gen = verify_generation(&t).unwrap();
        assert!(gen[0].status.is_certified());
        assert!(matches!(gen[1].status, GenerationStatus::Failed(_)));
    }

    #[test]
    fn regular_candidates_recover_the_algebra() {
        let f = ExactField::Prime(101);
        for b in [builtin::algebra_r(f), builtin::algebra_s(f)] {
            let t = TiltingCandidate::regular(Arc::new(b.clone()));
            let opts =
                VerifyOptions { target: Some(&b), generator_map: Some(&regular_generator_map), ..Default::default() };
            let report = verify_tilting(&t, &opts).unwrap();
            assert!(report.pass);
            assert_eq!(report.endomorphism.dim, 53);
        }
    }

    #[test]
    fn recipes_are_checked() {
        let r = r(ExactField::Rationals);
        let t = example_tilting(&r).unwrap();
        let mut bad = t.clone();
        bad.recipes[1] = Some(Recipe::Summand(1));
        let gen = verify_generation(&bad).unwrap();
        assert!(matches!(gen[1].status, GenerationStatus::Failed(_)));
        assert_eq!(gen[8].status, GenerationStatus::Certified { shift: 0, method: "T9[1]".into() });
    }
}
