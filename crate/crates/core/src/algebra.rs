//! Path algebras `kQ`, their quotients `kQ/I` by admissible relations, and
//! finite-dimensional algebras given by structure constants.
//!
//! Products follow path composition: for basis paths `p` and `q`, `p * q` is
//! "traverse `q`, then `p`" and vanishes when the endpoints do not match.
//! Relations are rewritten by a length-lexicographic system: the largest path
//! of a relation is its leading term, and it is replaced by the remaining
//! terms. Relation sets whose overlaps reduce to different normal forms are
//! rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};
use crate::scalars::{ExactField, Matrix, Scalar};

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn monomial(field: ExactField, path: Path) -> Relation {
        Relation { terms: vec![(field.one(), path)] }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Rule {
    lead: Path,
    tail: Vec<(Scalar, Path)>,
}

type Combination = BTreeMap<Path, Scalar>;

/// A finite-dimensional algebra on an explicit basis, with a chosen complete set of
/// orthogonal idempotents (one per "vertex").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: ExactField,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    idempotents: Vec<Vec<Scalar>>,
    /// `table[a][b]` is the sparse product `b_a * b_b`.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl FiniteAlgebra {
    pub fn new(
        field: ExactField,
        labels: Vec<String>,
        vertex_labels: Vec<String>,
        idempotents: Vec<Vec<Scalar>>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
    ) -> FiniteAlgebra {
        let dim = labels.len();
        assert_eq!(table.len(), dim);
        assert!(table.iter().all(|r| r.len() == dim));
        assert_eq!(vertex_labels.len(), idempotents.len());
        assert!(idempotents.iter().all(|e| e.len() == dim));
        FiniteAlgebra { field, labels, vertex_labels, idempotents, table }
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    pub fn idempotent(&self, i: usize) -> &[Scalar] {
        &self.idempotents[i]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[a] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.zero();
        for e in &self.idempotents {
            add_assign(&mut v, e);
        }
        v
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a][b]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let c = xa * yb;
                for (k, s) in &self.table[a][b] {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// `e_j x e_i`.
    pub fn sandwich(&self, j: usize, x: &[Scalar], i: usize) -> Vec<Scalar> {
        let left = self.multiply(&self.idempotents[j], x);
        self.multiply(&left, &self.idempotents[i])
    }

    /// Columns spanning `e_j A e_i`.
    pub fn corner(&self, i: usize, j: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|a| self.sandwich(j, &self.basis_vector(a), i)).collect();
        columns_to_matrix(self.field, self.dim(), &cols).column_space()
    }

    /// Matrix of `z ↦ x z` in the standard basis.
    pub fn left_multiplication(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.multiply(x, &self.basis_vector(b))).collect();
        columns_to_matrix(self.field, self.dim(), &cols)
    }

    /// Exhaustive check of `(ab)c = a(bc)` over all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.multiply(&self.basis_vector(a), &self.basis_vector(b));
                for c in 0..n {
                    let left = self.multiply(&ab, &self.basis_vector(c));
                    let bc = self.multiply(&self.basis_vector(b), &self.basis_vector(c));
                    let right = self.multiply(&self.basis_vector(a), &bc);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `e_i e_j = δ_ij e_i` and `Σ e_i = 1` (checked as a two-sided unit on the basis).
    pub fn idempotents_are_complete(&self) -> bool {
        let k = self.num_idempotents();
        for i in 0..k {
            for j in 0..k {
                let p = self.multiply(&self.idempotents[i], &self.idempotents[j]);
                let expected = if i == j { self.idempotents[i].clone() } else { self.zero() };
                if p != expected {
                    return false;
                }
            }
        }
        let one = self.one();
        (0..self.dim()).all(|a| {
            let b = self.basis_vector(a);
            self.multiply(&one, &b) == b && self.multiply(&b, &one) == b
        })
    }
}

pub(crate) fn add_assign(v: &mut [Scalar], w: &[Scalar]) {
    for (a, b) in v.iter_mut().zip(w) {
        *a = &*a + b;
    }
}

pub(crate) fn columns_to_matrix(field: ExactField, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
}

/// `kQ/I` for an acyclic quiver `Q` and an admissible, confluent set of relations.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    quiver: Quiver,
    field: ExactField,
    relations: Vec<Relation>,
    rules: Vec<Rule>,
    basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
    structure: FiniteAlgebra,
}

impl PartialEq for BasicAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.field == other.field && self.relations == other.relations
    }
}

impl Eq for BasicAlgebra {}

impl BasicAlgebra {
    /// The path algebra `kQ`; requires `Q` acyclic.
    pub fn path_algebra(quiver: Quiver, field: ExactField) -> Result<BasicAlgebra> {
        Self::with_relations(quiver, field, Vec::new())
    }

    /// `self / (rels)`, keeping the relations already present.
    pub fn quotient(&self, rels: Vec<Relation>) -> Result<BasicAlgebra> {
        let mut all = self.relations.clone();
        all.extend(rels);
        Self::with_relations(self.quiver.clone(), self.field, all)
    }

    pub fn with_relations(quiver: Quiver, field: ExactField, relations: Vec<Relation>) -> Result<BasicAlgebra> {
        let paths = quiver.enumerate_paths()?;
        let mut rules = Vec::new();
        for rel in &relations {
            rules.push(Self::rule_from(&quiver, field, rel)?);
        }
        let mut alg = BasicAlgebra {
            quiver,
            field,
            relations,
            rules,
            basis: Vec::new(),
            index: BTreeMap::new(),
            structure: FiniteAlgebra::new(field, vec![], vec![], vec![], vec![]),
        };
        alg.check_confluence()?;
        alg.basis = paths.into_iter().filter(|p| alg.is_normal(p)).collect();
        alg.index = alg.basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        alg.structure = alg.build_structure();
        Ok(alg)
    }

    fn rule_from(quiver: &Quiver, field: ExactField, rel: &Relation) -> Result<Rule> {
        let mut combo = Combination::new();
        let (mut s, mut t) = (None, None);
        for (c, p) in &rel.terms {
            if !field.contains(c) {
                return Err(Error::NotAdmissible("coefficient from another field".into()));
            }
            if p.len() < 2 {
                return Err(Error::NotAdmissible(format!(
                    "term {} has length {} < 2",
                    quiver.display_path(p),
                    p.len()
                )));
            }
            if *s.get_or_insert(p.source) != p.source || *t.get_or_insert(p.target) != p.target {
                return Err(Error::NotAdmissible(format!(
                    "term {} is not parallel to the others",
                    quiver.display_path(p)
                )));
            }
            let e = combo.entry(p.clone()).or_insert_with(|| field.zero());
            *e = &*e + c;
        }
        combo.retain(|_, c| !c.is_zero());
        let Some((lead, lc)) = combo.pop_last() else {
            return Err(Error::NotAdmissible("relation is zero".into()));
        };
        let inv = lc.inv().expect("nonzero");
        let tail = combo.into_iter().map(|(p, c)| (-(&c * &inv), p)).collect();
        Ok(Rule { lead, tail })
    }

    fn is_normal(&self, p: &Path) -> bool {
        self.rules.iter().all(|r| p.find_subpath(&r.lead).is_none())
    }

    /// Applies `rule` at arrow offset `pos` of `p`.
    fn apply_at(&self, p: &Path, rule: &Rule, pos: usize) -> Combination {
        let mut out = Combination::new();
        for (c, t) in &rule.tail {
            let mut arrows = p.arrows[..pos].to_vec();
            arrows.extend_from_slice(&t.arrows);
            arrows.extend_from_slice(&p.arrows[pos + rule.lead.len()..]);
            let q = Path { source: p.source, target: p.target, arrows };
            let e = out.entry(q).or_insert_with(|| self.field.zero());
            *e = &*e + c;
        }
        out
    }

    /// Normal form of a linear combination of paths.
    fn reduce(&self, mut todo: Combination) -> Combination {
        let mut done = Combination::new();
        while let Some((p, c)) = todo.pop_last() {
            if c.is_zero() {
                continue;
            }
            let hit = self.rules.iter().find_map(|r| p.find_subpath(&r.lead).map(|pos| (r, pos)));
            match hit {
                None => {
                    done.insert(p, c);
                }
                Some((rule, pos)) => {
                    for (q, d) in self.apply_at(&p, rule, pos) {
                        let e = todo.entry(q).or_insert_with(|| self.field.zero());
                        *e = &*e + &(&c * &d);
                    }
                }
            }
        }
        done.retain(|_, c| !c.is_zero());
        done
    }

    fn reduce_path(&self, p: &Path) -> Combination {
        self.reduce(Combination::from([(p.clone(), self.field.one())]))
    }

    /// Every overlap and inclusion between leading terms must resolve to one normal form.
    fn check_confluence(&self) -> Result<()> {
        let compare = |w: &Path, r1: &Rule, p1: usize, r2: &Rule, p2: usize| -> Result<()> {
            let a = self.reduce(self.apply_at(w, r1, p1));
            let b = self.reduce(self.apply_at(w, r2, p2));
            if a != b {
                return Err(Error::NotConfluent(self.quiver.display_path(w)));
            }
            Ok(())
        };
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (&ri.lead.arrows, &rj.lead.arrows);
                if i != j {
                    if let Some(pos) = ri.lead.find_subpath(&rj.lead) {
                        compare(&ri.lead, ri, 0, rj, pos)?;
                    }
                }
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let mut arrows = li.clone();
                        arrows.extend_from_slice(&lj[k..]);
                        let w = Path { source: ri.lead.source, target: rj.lead.target, arrows };
                        compare(&w, ri, 0, rj, li.len() - k)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn build_structure(&self) -> FiniteAlgebra {
        let n = self.basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (a, pa) in self.basis.iter().enumerate() {
            for (b, pb) in self.basis.iter().enumerate() {
                if let Ok(prod) = self.quiver.compose(pa, pb) {
                    table[a][b] = self.reduce_path(&prod).into_iter().map(|(p, c)| (self.index[&p], c)).collect();
                }
            }
        }
        let labels = self.basis.iter().map(|p| self.quiver.product_notation(p)).collect();
        let vertex_labels = self.quiver.vertices().to_vec();
        let idempotents = (0..self.quiver.num_vertices())
            .map(|v| {
                let mut e = vec![self.field.zero(); n];
                e[self.index[&Path::lazy(v)]] = self.field.one();
                e
            })
            .collect();
        FiniteAlgebra::new(self.field, labels, vertex_labels, idempotents, table)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn structure(&self) -> &FiniteAlgebra {
        &self.structure
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn is_hereditary_presentation(&self) -> bool {
        self.relations.is_empty()
    }

    /// Indices of the normal-form paths from `i` to `j`: a basis of `e_j A e_i`.
    pub fn basis_between(&self, i: usize, j: usize) -> Vec<usize> {
        self.basis.iter().enumerate().filter(|(_, p)| p.source == i && p.target == j).map(|(k, _)| k).collect()
    }

    /// Name-based variant of [`BasicAlgebra::basis_between`].
    pub fn basis_between_named(&self, i: &str, j: &str) -> Result<Vec<usize>> {
        Ok(self.basis_between(self.quiver.vertex(i)?, self.quiver.vertex(j)?))
    }

    /// The element represented by a path, in normal form (possibly zero).
    pub fn element_of_path(&self, p: &Path) -> Vec<Scalar> {
        let mut v = self.structure.zero();
        for (q, c) in self.reduce_path(p) {
            v[self.index[&q]] = c;
        }
        v
    }

    /// The element of a relation-style linear combination of paths.
    pub fn element_of_combination(&self, terms: &[(Scalar, Path)]) -> Vec<Scalar> {
        let mut v = self.structure.zero();
        for (c, p) in terms {
            let e = self.element_of_path(p);
            for (a, b) in v.iter_mut().zip(&e) {
                *a = &*a + &(c * b);
            }
        }
        v
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.structure.multiply(x, y)
    }

    pub fn idempotent(&self, v: usize) -> Vec<Scalar> {
        self.structure.idempotent(v).to_vec()
    }

    pub fn into_arc(self) -> Arc<BasicAlgebra> {
        Arc::new(self)
    }

    /// Human-readable element, e.g. `2*a2*a1 + e_3`.
    pub fn display_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let p = self.quiver.product_notation(&self.basis[k]);
                if c.is_one() {
                    p
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::linear_quiver;

    fn q() -> ExactField {
        ExactField::Rationals
    }

    #[test]
    fn path_algebra_of_linear_quiver() {
        let a = BasicAlgebra::path_algebra(linear_quiver(10), q()).unwrap();
        assert_eq!(a.dim(), 55);
        assert!(a.structure().idempotents_are_complete());
        // Non-composable product vanishes.
        let a1 = a.element_of_path(&a.quiver().arrow_path(0));
        let a3 = a.element_of_path(&a.quiver().arrow_path(2));
        assert!(a.multiply(&a1, &a3).iter().all(Scalar::is_zero));
    }

    #[test]
    fn linear_path_algebra_is_lower_triangular_matrices() {
        // Paths i -> j (i <= j) correspond to matrix units E_{j,i}, which multiply like composition.
        let n = 6;
        let a = BasicAlgebra::path_algebra(linear_quiver(n), q()).unwrap();
        assert_eq!(a.dim(), n * (n + 1) / 2);
        for (x, px) in a.basis().iter().enumerate() {
            for (y, py) in a.basis().iter().enumerate() {
                let prod = a.structure().basis_product(x, y);
                let expected = py.target == px.source;
                assert_eq!(!prod.is_empty(), expected);
                if expected {
                    let (k, c) = &prod[0];
                    assert!(c.is_one());
                    assert_eq!((a.basis()[*k].source, a.basis()[*k].target), (py.source, px.target));
                }
            }
        }
    }

    #[test]
    fn empty_quotient_is_identity() {
        let a = BasicAlgebra::path_algebra(linear_quiver(4), q()).unwrap();
        let b = a.quotient(vec![]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn short_relations_rejected() {
        let quiver = linear_quiver(3);
        let a = BasicAlgebra::path_algebra(quiver.clone(), q()).unwrap();
        let bad = Relation::monomial(q(), quiver.arrow_path(0));
        assert!(matches!(a.quotient(vec![bad]), Err(Error::NotAdmissible(_))));
        let lazy = Relation::monomial(q(), Path::lazy(0));
        assert!(matches!(a.quotient(vec![lazy]), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let quiver = linear_quiver(4);
        let a = BasicAlgebra::path_algebra(quiver.clone(), q()).unwrap();
        let r = Relation {
            terms: vec![
                (q().one(), quiver.path(&["a1", "a2"]).unwrap()),
                (q().one(), quiver.path(&["a2", "a3"]).unwrap()),
            ],
        };
        assert!(matches!(a.quotient(vec![r]), Err(Error::NotAdmissible(_))));
    }

    /// A commutative square: two parallel paths identified.
    fn square() -> Quiver {
        Quiver::new(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
            .unwrap()
    }

    #[test]
    fn commutativity_relation() {
        let quiver = square();
        let ba = quiver.path(&["a", "b"]).unwrap();
        let dc = quiver.path(&["c", "d"]).unwrap();
        let rel = Relation { terms: vec![(q().one(), ba.clone()), (-q().one(), dc.clone())] };
        let a = BasicAlgebra::with_relations(quiver, q(), vec![rel]).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert_eq!(a.element_of_path(&ba), a.element_of_path(&dc));
        assert!(a.structure().is_associative());
    }

    #[test]
    fn ambiguous_relations_rejected() {
        let quiver = square();
        let ba = quiver.path(&["a", "b"]).unwrap();
        let dc = quiver.path(&["c", "d"]).unwrap();
        // ba = dc and ba = 2 dc leave the overlap ba with two normal forms.
        let r1 = Relation { terms: vec![(q().one(), ba.clone()), (-q().one(), dc.clone())] };
        let r2 = Relation { terms: vec![(q().one(), ba), (q().from_i64(-2), dc)] };
        let res = BasicAlgebra::with_relations(quiver, q(), vec![r1, r2]);
        assert!(matches!(res, Err(Error::NotConfluent(_))));
    }

    #[test]
    fn overlapping_monomials_are_confluent() {
        let quiver = linear_quiver(5);
        let r1 = Relation::monomial(q(), quiver.path(&["a1", "a2"]).unwrap());
        let r2 = Relation::monomial(q(), quiver.path(&["a2", "a3"]).unwrap());
        let a = BasicAlgebra::with_relations(quiver, q(), vec![r1, r2]).unwrap();
        // 5 lazy + 4 arrows + a4*a3 only among length-2 paths.
        assert_eq!(a.dim(), 5 + 4 + 1);
        assert!(a.structure().is_associative());
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let quiver = Quiver::new(&["x"], &[("l", "x", "x")]).unwrap();
        assert!(matches!(BasicAlgebra::path_algebra(quiver, q()), Err(Error::CyclicQuiver(_))));
    }
}
