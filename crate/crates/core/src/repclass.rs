//! Representation type: Dynkin classification of underlying graphs, and interval modules of
//! equioriented linear quivers with monomial relations.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::modrep::{decompose, hom, is_isomorphic_indecomposable, Representation};
use crate::quiver::Quiver;
use crate::scalars::{ExactField, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => f.write_str("E6"),
            DynkinType::E7 => f.write_str("E7"),
            DynkinType::E8 => f.write_str("E8"),
        }
    }
}

/// Why an underlying graph is not a Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonDynkinWitness {
    /// A loop, a multiple edge, or a cycle through the named vertex.
    Cycle(String),
    /// Two or more vertices of degree at least 3.
    SeveralBranchVertices(Vec<String>),
    /// The unique branch vertex and its arm lengths (in edges), sorted.
    Arms { vertex: String, arms: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Dynkin(DynkinType),
    NotDynkin(NonDynkinWitness),
}

impl GraphClass {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, GraphClass::Dynkin(_))
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Dynkin(t) => write!(f, "Dynkin {t}"),
            GraphClass::NotDynkin(NonDynkinWitness::Cycle(v)) => write!(f, "not Dynkin: cycle through {v}"),
            GraphClass::NotDynkin(NonDynkinWitness::SeveralBranchVertices(vs)) => {
                write!(f, "not Dynkin: branch vertices {}", vs.join(", "))
            }
            GraphClass::NotDynkin(NonDynkinWitness::Arms { vertex, arms }) => {
                let a: Vec<String> = arms.iter().map(usize::to_string).collect();
                write!(f, "not Dynkin: arms ({}) at {vertex}", a.join(", "))
            }
        }
    }
}

/// Neighbour lists of the underlying simple graph, or a vertex on a loop or multiple edge.
fn neighbours(q: &Quiver) -> std::result::Result<Vec<Vec<usize>>, usize> {
    let mut adj = vec![Vec::new(); q.num_vertices()];
    for a in q.arrows() {
        if a.source == a.target || adj[a.source].contains(&a.target) {
            return Err(a.source);
        }
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Ok(adj)
}

/// Dynkin type of the underlying graph of a connected quiver, or a witness that it is not Dynkin.
pub fn classify_underlying_graph(q: &Quiver) -> Result<GraphClass> {
    let n = q.num_vertices();
    if n == 0 || q.components().len() != 1 {
        return Err(Error::Disconnected);
    }
    let adj = match neighbours(q) {
        Ok(adj) => adj,
        Err(v) => return Ok(GraphClass::NotDynkin(NonDynkinWitness::Cycle(q.vertex_name(v).to_string()))),
    };
    if q.num_arrows() != n - 1 {
        let v = (0..n).find(|&v| adj[v].len() >= 2).unwrap_or(0);
        return Ok(GraphClass::NotDynkin(NonDynkinWitness::Cycle(q.vertex_name(v).to_string())));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(GraphClass::Dynkin(DynkinType::A(n))),
        [b] => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        (prev, cur, len) = (cur, next, len + 1);
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            let class = match arms.as_slice() {
                [1, 1, k] => GraphClass::Dynkin(DynkinType::D(k + 3)),
                [1, 2, 2] => GraphClass::Dynkin(DynkinType::E6),
                [1, 2, 3] => GraphClass::Dynkin(DynkinType::E7),
                [1, 2, 4] => GraphClass::Dynkin(DynkinType::E8),
                _ => GraphClass::NotDynkin(NonDynkinWitness::Arms { vertex: q.vertex_name(*b).to_string(), arms }),
            };
            Ok(class)
        }
        _ => Ok(GraphClass::NotDynkin(NonDynkinWitness::SeveralBranchVertices(
            branch.iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        ))),
    }
}

/// The vertices of each component in path order, when every component is a path whose arrows
/// all point the same way along it.
fn linear_components(q: &Quiver) -> Result<Vec<Vec<usize>>> {
    let unsupported = || Error::Unsupported("interval enumeration needs equioriented linear quivers".into());
    let n = q.num_vertices();
    let mut out_arrow = vec![None; n];
    let mut has_in = vec![false; n];
    for (k, a) in q.arrows().iter().enumerate() {
        if a.source == a.target || out_arrow[a.source].is_some() || has_in[a.target] {
            return Err(unsupported());
        }
        out_arrow[a.source] = Some(k);
        has_in[a.target] = true;
    }
    let mut chains = Vec::new();
    let mut seen = vec![false; n];
    for start in (0..n).filter(|&v| !has_in[v]) {
        let mut chain = vec![start];
        seen[start] = true;
        let mut v = start;
        while let Some(k) = out_arrow[v] {
            v = q.arrow(k).target;
            seen[v] = true;
            chain.push(v);
        }
        chains.push(chain);
    }
    if seen.iter().any(|s| !s) {
        return Err(unsupported());
    }
    Ok(chains)
}

/// The module of an interval of a linear quiver: `k` on each vertex, identity along the interval.
#[derive(Clone, Debug)]
pub struct IntervalModule {
    /// Vertices of the interval in path order.
    pub vertices: Vec<usize>,
    pub module: Representation,
}

impl IntervalModule {
    pub fn label(&self, q: &Quiver) -> String {
        let (a, b) = (self.vertices[0], self.vertices[self.vertices.len() - 1]);
        format!("[{}, {}]", q.vertex_name(a), q.vertex_name(b))
    }
}

fn interval_module(alg: &Arc<BasicAlgebra>, vertices: &[usize]) -> Result<Representation> {
    let f = alg.field();
    let n = alg.num_vertices();
    let mut dims = vec![0; n];
    for &v in vertices {
        dims[v] = 1;
    }
    let actions = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| {
            let one = dims[a.source] == 1 && dims[a.target] == 1;
            Matrix::from_fn(f, dims[a.source], dims[a.target], |_, _| if one { f.one() } else { f.zero() })
        })
        .collect();
    Representation::new(alg.clone(), dims, actions)
}

/// The interval module from vertex `a` to vertex `b` of an equioriented linear quiver.
pub fn interval(alg: &Arc<BasicAlgebra>, a: usize, b: usize) -> Result<IntervalModule> {
    for chain in linear_components(alg.quiver())? {
        if let (Some(s), Some(t)) = (chain.iter().position(|&x| x == a), chain.iter().position(|&x| x == b)) {
            if s > t {
                break;
            }
            let vertices = chain[s..=t].to_vec();
            let module = interval_module(alg, &vertices)?;
            return Ok(IntervalModule { vertices, module });
        }
    }
    let q = alg.quiver();
    Err(Error::NoPath(q.vertex_name(a).to_string(), q.vertex_name(b).to_string()))
}

/// All interval modules of an equioriented linear quiver (or disjoint union of such) with
/// monomial relations: those intervals containing no relation path. Each is checked to
/// satisfy the relations and to have a one-dimensional endomorphism ring, and over a prime
/// field also to be indecomposable under [`decompose`].
pub fn enumerate_indecomposables(a: &Arc<BasicAlgebra>) -> Result<Vec<IntervalModule>> {
    if a.relations().iter().any(|r| !r.is_monomial()) {
        return Err(Error::Unsupported("interval enumeration needs monomial relations".into()));
    }
    let chains = linear_components(a.quiver())?;
    let relation_spans: Vec<(usize, usize)> =
        a.relations().iter().map(|r| (r.terms[0].1.source, r.terms[0].1.target)).collect();
    let mut intervals = Vec::new();
    for chain in &chains {
        let pos = |v: usize| chain.iter().position(|&x| x == v);
        for s in 0..chain.len() {
            for t in s..chain.len() {
                let killed = relation_spans.iter().any(|&(u, w)| match (pos(u), pos(w)) {
                    (Some(pu), Some(pw)) => s <= pu && pw <= t,
                    _ => false,
                });
                if !killed {
                    intervals.push(chain[s..=t].to_vec());
                }
            }
        }
    }
    intervals
        .into_par_iter()
        .map(|vertices| {
            let module = interval_module(a, &vertices)?;
            if hom(&module, &module)?.dim() != 1 {
                return Err(Error::InvalidRepresentation("interval module has a non-scalar endomorphism".into()));
            }
            if a.field().is_prime_field() && decompose(&module)?.summands.len() != 1 {
                return Err(Error::InvalidRepresentation("interval module decomposes".into()));
            }
            Ok(IntervalModule { vertices, module })
        })
        .collect()
}

/// Position of the interval isomorphic to an indecomposable `m`, if any.
pub fn find_interval(intervals: &[IntervalModule], m: &Representation) -> Option<usize> {
    intervals.iter().position(|iv| iv.module.dims() == m.dims() && is_isomorphic_indecomposable(&iv.module, m))
}

/// Result of decomposing a family of modules and matching summands against the intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheck {
    pub modules: usize,
    pub summands: usize,
    /// Summands not isomorphic to any interval module.
    pub unmatched: usize,
    /// How often each interval occurred as a summand.
    pub hits: Vec<usize>,
}

impl CrossCheck {
    fn merge(mut self, other: CrossCheck) -> CrossCheck {
        self.modules += other.modules;
        self.summands += other.summands;
        self.unmatched += other.unmatched;
        if self.hits.is_empty() {
            self.hits = other.hits;
        } else {
            for (a, b) in self.hits.iter_mut().zip(other.hits) {
                *a += b;
            }
        }
        self
    }

    fn of_module(intervals: &[IntervalModule], m: &Representation) -> Result<CrossCheck> {
        let d = decompose(m)?;
        let mut c = CrossCheck { modules: 1, summands: d.summands.len(), unmatched: 0, hits: vec![0; intervals.len()] };
        for s in &d.summands {
            match find_interval(intervals, &s.module) {
                Some(k) => c.hits[k] += 1,
                None => c.unmatched += 1,
            }
        }
        Ok(c)
    }

    pub fn intervals_seen(&self) -> usize {
        self.hits.iter().filter(|&&h| h > 0).count()
    }
}

/// Decomposes `count` seeded random modules with dimensions at most `max_dim`.
pub fn random_cross_check(
    a: &Arc<BasicAlgebra>,
    intervals: &[IntervalModule],
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Result<CrossCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modules: Vec<Representation> =
        (0..count).map(|_| Representation::random(a.clone(), max_dim, &mut rng)).collect::<Result<_>>()?;
    modules
        .par_iter()
        .map(|m| CrossCheck::of_module(intervals, m))
        .try_reduce(CrossCheck::default, |x, y| Ok(x.merge(y)))
}

/// Decomposes every module over `F_2` with all dimensions in `{0, 1}` that satisfies the relations.
pub fn exhaustive_binary_check(a: &Arc<BasicAlgebra>, intervals: &[IntervalModule]) -> Result<CrossCheck> {
    if a.field() != ExactField::Prime(2) {
        return Err(Error::FieldNotSupported);
    }
    let n = a.num_vertices();
    if n > 20 {
        return Err(Error::Unsupported("too many vertices for exhaustive enumeration".into()));
    }
    let arrows = a.quiver().arrows().to_vec();
    (0u32..1 << n)
        .into_par_iter()
        .map(|mask| {
            let dims: Vec<usize> = (0..n).map(|v| ((mask >> v) & 1) as usize).collect();
            let live: Vec<usize> =
                (0..arrows.len()).filter(|&k| dims[arrows[k].source] == 1 && dims[arrows[k].target] == 1).collect();
            let mut acc = CrossCheck { hits: vec![0; intervals.len()], ..Default::default() };
            for choice in 0u64..1 << live.len() {
                let actions = arrows
                    .iter()
                    .enumerate()
                    .map(|(k, ar)| {
                        let on = live.iter().position(|&x| x == k).is_some_and(|i| (choice >> i) & 1 == 1);
                        let f = a.field();
                        Matrix::from_fn(f, dims[ar.source], dims[ar.target], |_, _| if on { f.one() } else { f.zero() })
                    })
                    .collect();
                if let Ok(m) = Representation::new(a.clone(), dims.clone(), actions) {
                    acc = acc.merge(CrossCheck::of_module(intervals, &m)?);
                }
            }
            Ok(acc)
        })
        .try_reduce(CrossCheck::default, |x, y| Ok(x.merge(y)))
}

/// Conclusion of [`finite_type_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteType {
    /// Finitely many indecomposables, all listed.
    Certified {
        indecomposables: usize,
    },
    /// Finite by Gabriel's theorem for a relation-free algebra of Dynkin type; not enumerated.
    Dynkin,
    NotCertified(String),
}

#[derive(Clone, Debug)]
pub struct FiniteTypeReport {
    /// One class per connected component.
    pub components: Vec<GraphClass>,
    pub conclusion: FiniteType,
    pub intervals: Vec<String>,
    /// Present when the field is prime and a random sample was requested.
    pub random_check: Option<CrossCheck>,
}

impl FiniteTypeReport {
    pub fn is_finite(&self) -> bool {
        !matches!(self.conclusion, FiniteType::NotCertified(_))
    }
}

/// Certifies finite representation type by interval enumeration (with a seeded random
/// decomposition cross-check over prime fields), or by Gabriel's theorem for relation-free
/// Dynkin quivers. A relation-free non-Dynkin quiver is reported as not certified.
pub fn finite_type_certificate(a: &Arc<BasicAlgebra>, samples: usize, seed: u64) -> Result<FiniteTypeReport> {
    let q = a.quiver();
    let components =
        q.components().iter().map(|c| classify_underlying_graph(&q.full_subquiver(c))).collect::<Result<Vec<_>>>()?;
    let hereditary = a.relations().is_empty();
    match enumerate_indecomposables(a) {
        Ok(intervals) => {
            let random_check = if a.field().is_prime_field() && samples > 0 {
                Some(random_cross_check(a, &intervals, samples, 2, seed)?)
            } else {
                None
            };
            let conclusion = match &random_check {
                Some(c) if c.unmatched > 0 => {
                    FiniteType::NotCertified(format!("{} random summands are not interval modules", c.unmatched))
                }
                _ => FiniteType::Certified { indecomposables: intervals.len() },
            };
            Ok(FiniteTypeReport {
                components,
                conclusion,
                intervals: intervals.iter().map(|iv| iv.label(q)).collect(),
                random_check,
            })
        }
        Err(Error::Unsupported(reason)) => {
            let conclusion = if hereditary && components.iter().all(GraphClass::is_dynkin) {
                FiniteType::Dynkin
            } else if hereditary {
                FiniteType::NotCertified("relation-free with a non-Dynkin component, so of infinite type".into())
            } else {
                FiniteType::NotCertified(reason)
            };
            Ok(FiniteTypeReport { components, conclusion, intervals: Vec::new(), random_check: None })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::quiver::linear_quiver;

    #[test]
    fn classification_examples() {
        assert_eq!(classify_underlying_graph(&builtin::quiver_a10()).unwrap(), GraphClass::Dynkin(DynkinType::A(10)));
        let e = classify_underlying_graph(&builtin::quiver_e()).unwrap();
        assert_eq!(e, GraphClass::NotDynkin(NonDynkinWitness::Arms { vertex: "8".into(), arms: vec![1, 2, 6] }));
        assert_eq!(classify_underlying_graph(&linear_quiver(1)).unwrap(), GraphClass::Dynkin(DynkinType::A(1)));
        let two = Quiver::new(&["x", "y"], &[]).unwrap();
        assert!(matches!(classify_underlying_graph(&two), Err(Error::Disconnected)));
    }

    #[test]
    fn dynkin_trees_and_cycles() {
        let star = |arms: &[usize]| {
            let mut vs = vec!["c".to_string()];
            let mut es = Vec::new();
            for (i, &len) in arms.iter().enumerate() {
                let mut prev = "c".to_string();
                for k in 0..len {
                    let v = format!("v{i}_{k}");
                    vs.push(v.clone());
                    es.push((format!("e{i}_{k}"), prev.clone(), v.clone()));
                    prev = v;
                }
            }
            Quiver::new(&vs, &es).unwrap()
        };
        let class = |arms: &[usize]| classify_underlying_graph(&star(arms)).unwrap();
        assert_eq!(class(&[1, 1, 3]), GraphClass::Dynkin(DynkinType::D(6)));
        assert_eq!(class(&[1, 2, 2]), GraphClass::Dynkin(DynkinType::E6));
        assert_eq!(class(&[2, 3, 1]), GraphClass::Dynkin(DynkinType::E7));
        assert_eq!(class(&[4, 2, 1]), GraphClass::Dynkin(DynkinType::E8));
        assert!(!class(&[2, 2, 2]).is_dynkin());
        assert!(!class(&[1, 1, 1, 1]).is_dynkin());
        let tri = Quiver::new(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")]).unwrap();
        assert!(matches!(classify_underlying_graph(&tri).unwrap(), GraphClass::NotDynkin(NonDynkinWitness::Cycle(_))));
        let kron = Quiver::new(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b")]).unwrap();
        assert!(!classify_underlying_graph(&kron).unwrap().is_dynkin());
    }

    #[test]
    fn classification_ignores_orientation() {
        for q in [builtin::quiver_a10(), builtin::quiver_e()] {
            assert_eq!(classify_underlying_graph(&q).unwrap(), classify_underlying_graph(&q.opposite()).unwrap());
        }
    }

    #[test]
    fn interval_counts() {
        let f = ExactField::Prime(2);
        let r = Arc::new(builtin::algebra_r(f));
        let ivs = enumerate_indecomposables(&r).unwrap();
        assert_eq!(ivs.len(), 53);
        assert!(ivs.iter().all(|iv| !(iv.vertices[0] == 0 && iv.vertices.len() >= 9)));
        assert_eq!(enumerate_indecomposables(&Arc::new(builtin::linear_path_algebra(3, f))).unwrap().len(), 6);
        assert_eq!(enumerate_indecomposables(&Arc::new(builtin::linear_path_algebra(1, f))).unwrap().len(), 1);
        let s = Arc::new(builtin::algebra_s(f));
        assert!(matches!(enumerate_indecomposables(&s), Err(Error::Unsupported(_))));
        assert_eq!(interval(&r, 2, 5).unwrap().module.dims(), &[0, 0, 1, 1, 1, 1, 0, 0, 0, 0]);
        assert!(matches!(interval(&r, 0, 9), Err(Error::InvalidRepresentation(_))));
        assert!(matches!(interval(&r, 5, 2), Err(Error::NoPath(..))));
    }

    #[test]
    fn intervals_satisfy_relations() {
        let r = Arc::new(builtin::algebra_r(ExactField::Rationals));
        for iv in enumerate_indecomposables(&r).unwrap() {
            for rel in r.relations() {
                assert!(iv.module.path_action(&rel.terms[0].1).is_zero());
            }
        }
    }

    #[test]
    fn finite_type_reports() {
        let f = ExactField::Prime(2);
        let r = Arc::new(builtin::algebra_r(f));
        let rep = finite_type_certificate(&r, 20, 0).unwrap();
        assert_eq!(rep.conclusion, FiniteType::Certified { indecomposables: 53 });
        assert_eq!(rep.random_check.unwrap().unmatched, 0);
        let s = Arc::new(builtin::algebra_s(f));
        assert!(!finite_type_certificate(&s, 0, 0).unwrap().is_finite());
        let semisimple = Arc::new(BasicAlgebra::path_algebra(Quiver::new(&["1", "2", "3"], &[]).unwrap(), f).unwrap());
        let rep = finite_type_certificate(&semisimple, 5, 0).unwrap();
        assert_eq!(rep.conclusion, FiniteType::Certified { indecomposables: 3 });
        assert_eq!(rep.components.len(), 3);
    }

    #[test]
    fn exhaustive_check_on_small_algebra() {
        let a = Arc::new(builtin::linear_path_algebra(4, ExactField::Prime(2)));
        let ivs = enumerate_indecomposables(&a).unwrap();
        let c = exhaustive_binary_check(&a, &ivs).unwrap();
        assert_eq!(c.unmatched, 0);
        assert_eq!(c.intervals_seen(), 10);
        // Σ over vertex subsets of 2^(arrows inside): 1 + 4 + (3·2 + 3) + (2·4 + 2·2) + 8.
        assert_eq!(c.modules, 34);
    }
}
