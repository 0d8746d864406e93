//! Jacobson radicals, quiver presentations of basic algebras, and comparison of presentations.

use crate::algebra::{columns_to_matrix, BasicAlgebra, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::scalars::{Matrix, Scalar};

/// How a radical was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Kernel of the trace form `(x, y) ↦ tr L(xy)`; exact in characteristic 0 or `p > dim`.
    TraceForm,
    /// Span of the off-diagonal corners `e_j A e_i` (`i ≠ j`), checked to be a nilpotent ideal
    /// with `A / N ≅ k^n`. Used in small characteristic.
    OffDiagonalIdeal,
}

impl std::fmt::Display for RadicalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RadicalMethod::TraceForm => "trace form",
            RadicalMethod::OffDiagonalIdeal => "off-diagonal nilpotent ideal",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Radical {
    /// Columns form a basis of `J` in the algebra's coordinates.
    pub basis: Matrix,
    pub method: RadicalMethod,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

fn column_vectors(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.cols()).map(|j| m.col(j).entries().to_vec()).collect()
}

fn span(a: &FiniteAlgebra, vectors: &[Vec<Scalar>]) -> Matrix {
    columns_to_matrix(a.field(), a.dim(), vectors).column_space()
}

/// Basis of `span{x y : x ∈ X, y ∈ Y}`.
fn products(a: &FiniteAlgebra, x: &Matrix, y: &Matrix) -> Matrix {
    let xs = column_vectors(x);
    let ys = column_vectors(y);
    let prods: Vec<Vec<Scalar>> = xs.iter().flat_map(|u| ys.iter().map(move |v| a.multiply(u, v))).collect();
    span(a, &prods)
}

/// Basis of `e_j X e_i`.
fn corner_of(a: &FiniteAlgebra, x: &Matrix, i: usize, j: usize) -> Matrix {
    let vs: Vec<Vec<Scalar>> = column_vectors(x).iter().map(|v| a.sandwich(j, v, i)).collect();
    span(a, &vs)
}

fn contains(space: &Matrix, v: &Matrix) -> bool {
    let both = Matrix::hstack(space.field(), space.rows(), &[space, v]);
    both.rank() == space.rank()
}

/// True iff `N` is a two-sided ideal, `N^k = 0` for some `k`, and `dim A - dim N` equals the
/// number of idempotents.
pub fn is_split_radical(a: &FiniteAlgebra, n: &Matrix) -> bool {
    if a.dim() - n.cols() != a.num_idempotents() {
        return false;
    }
    let all = Matrix::identity(a.field(), a.dim());
    if !contains(n, &products(a, &all, n)) || !contains(n, &products(a, n, &all)) {
        return false;
    }
    let mut power = n.clone();
    for _ in 0..=a.dim() {
        if power.cols() == 0 {
            return true;
        }
        power = products(a, &power, n);
    }
    power.cols() == 0
}

/// The Jacobson radical, by the trace form when the characteristic allows it.
pub fn jacobson_radical(a: &FiniteAlgebra) -> Result<Radical> {
    let p = a.field().characteristic();
    let n = a.dim();
    let (basis, method) = if p == 0 || p as usize > n {
        // t_k = tr L(b_k); G[a][b] = tr L(b_a b_b) = Σ_k (b_a b_b)_k t_k.
        let t: Vec<Scalar> = (0..n)
            .map(|k| {
                let mut acc = a.field().zero();
                for c in 0..n {
                    for (idx, s) in a.basis_product(k, c) {
                        if *idx == c {
                            acc = &acc + s;
                        }
                    }
                }
                acc
            })
            .collect();
        let g = Matrix::from_fn(a.field(), n, n, |x, y| {
            let mut acc = a.field().zero();
            for (k, s) in a.basis_product(x, y) {
                acc = &acc + &(s * &t[*k]);
            }
            acc
        });
        (g.transpose().kernel_basis(), RadicalMethod::TraceForm)
    } else {
        let k = a.num_idempotents();
        for i in 0..k {
            if a.corner(i, i).cols() != 1 {
                return Err(Error::Unsupported(
                    "radical in small characteristic needs one-dimensional diagonal corners".into(),
                ));
            }
        }
        let mut cols = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    cols.extend(column_vectors(&a.corner(i, j)));
                }
            }
        }
        (span(a, &cols), RadicalMethod::OffDiagonalIdeal)
    };
    if !is_split_radical(a, &basis) {
        return Err(Error::NotBasic(format!(
            "{method} candidate is not a nilpotent ideal with quotient k^{}",
            a.num_idempotents()
        )));
    }
    Ok(Radical { basis, method })
}

/// A quiver with relations recovered from an algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    /// Image in the algebra of every arrow, in quiver arrow order.
    pub arrow_elements: Vec<Vec<Scalar>>,
    /// `relation_counts[i][j]`: minimal relations from vertex `i` to vertex `j`.
    pub relation_counts: Vec<Vec<usize>>,
    /// Minimal relations written in the arrows of `quiver`.
    pub relations: Vec<String>,
    pub radical: Radical,
}

impl Presentation {
    pub fn num_relations(&self) -> usize {
        self.relation_counts.iter().flatten().sum()
    }

    /// `arrow_counts[i][j]` = number of arrows `i -> j`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for a in self.quiver.arrows() {
            c[a.source][a.target] += 1;
        }
        c
    }
}

/// Quiver with `dim e_j (J/J²) e_i` arrows `i -> j`, and relation counts
/// `dim e_j (I / (J_Q I + I J_Q)) e_i` for the kernel `I` of `kQ -> A`.
pub fn quiver_presentation(a: &FiniteAlgebra) -> Result<Presentation> {
    let radical = jacobson_radical(a)?;
    let j = &radical.basis;
    let j2 = products(a, j, j);
    let n = a.num_idempotents();
    let field = a.field();
    let mut arrows: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    for i in 0..n {
        for t in 0..n {
            let c1 = corner_of(a, j, i, t);
            let c2 = corner_of(a, &j2, i, t);
            let mut acc = c2.clone();
            for v in column_vectors(&c1) {
                let col = Matrix::column(field, v.clone());
                if !contains(&acc, &col) {
                    acc = Matrix::hstack(field, a.dim(), &[&acc, &col]);
                    arrows.push((i, t, v));
                }
            }
        }
    }
    let labels = a.vertex_labels();
    let arrow_specs: Vec<(String, String, String)> = arrows
        .iter()
        .enumerate()
        .map(|(k, (s, t, _))| (format!("x{}", k + 1), labels[*s].clone(), labels[*t].clone()))
        .collect();
    let quiver = Quiver::new(labels, &arrow_specs)?;
    let arrow_elements: Vec<Vec<Scalar>> = arrows.into_iter().map(|(_, _, v)| v).collect();

    let kq = BasicAlgebra::path_algebra(quiver.clone(), field)
        .map_err(|_| Error::Unsupported("presentation quiver has an oriented cycle".into()))?;
    let images: Vec<Vec<Scalar>> = kq.basis().iter().map(|p| evaluate_path(a, &arrow_elements, p)).collect();
    let phi = columns_to_matrix(field, a.dim(), &images);
    if phi.rank() != a.dim() {
        return Err(Error::NotBasic("arrows do not generate the algebra".into()));
    }
    let ideal = phi.kernel_basis();
    let ideal_vecs = column_vectors(&ideal);
    let mut gen = Vec::new();
    for k in 0..quiver.num_arrows() {
        let alpha = kq.element_of_path(&quiver.arrow_path(k));
        for x in &ideal_vecs {
            gen.push(kq.multiply(&alpha, x));
            gen.push(kq.multiply(x, &alpha));
        }
    }
    let kq_fin = kq.structure();
    let decomposable = columns_to_matrix(field, kq.dim(), &gen).column_space();
    let mut relation_counts = vec![vec![0; n]; n];
    let mut relations = Vec::new();
    for i in 0..n {
        for t in 0..n {
            let ci = corner_of(kq_fin, &ideal, i, t);
            let cd = corner_of(kq_fin, &decomposable, i, t);
            relation_counts[i][t] = ci.cols() - cd.cols();
            let mut acc = cd.clone();
            for v in column_vectors(&ci) {
                let col = Matrix::column(field, v.clone());
                if !contains(&acc, &col) {
                    acc = Matrix::hstack(field, kq.dim(), &[&acc, &col]);
                    relations.push(kq.display_element(&v));
                }
            }
        }
    }
    Ok(Presentation { quiver, arrow_elements, relation_counts, relations, radical })
}

/// Image of a path under "arrow ↦ element", lazy paths going to idempotents.
fn evaluate_path(a: &FiniteAlgebra, arrow_elements: &[Vec<Scalar>], p: &crate::quiver::Path) -> Vec<Scalar> {
    let mut acc = a.idempotent(p.source).to_vec();
    for &arrow in &p.arrows {
        acc = a.multiply(&arrow_elements[arrow], &acc);
    }
    acc
}

/// A vertex bijection `σ` with matching arrow and relation counts, by backtracking.
pub fn presentations_isomorphic(p: &Presentation, q: &Presentation) -> Option<Vec<usize>> {
    let n = p.quiver.num_vertices();
    if n != q.quiver.num_vertices()
        || p.quiver.num_arrows() != q.quiver.num_arrows()
        || p.num_relations() != q.num_relations()
    {
        return None;
    }
    let (pa, qa) = (p.arrow_counts(), q.arrow_counts());
    let (pr, qr) = (&p.relation_counts, &q.relation_counts);
    let signature = |a: &Vec<Vec<usize>>, r: &Vec<Vec<usize>>, v: usize| {
        let out: usize = a[v].iter().sum();
        let inc: usize = a.iter().map(|row| row[v]).sum();
        let rout: usize = r[v].iter().sum();
        let rin: usize = r.iter().map(|row| row[v]).sum();
        (out, inc, rout, rin)
    };
    let ps: Vec<_> = (0..n).map(|v| signature(&pa, pr, v)).collect();
    let qs: Vec<_> = (0..n).map(|v| signature(&qa, qr, v)).collect();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, &[usize]) -> bool,
    ) -> bool {
        if k == sigma.len() {
            return true;
        }
        for w in 0..sigma.len() {
            if used[w] || !ok(k, w, sigma) {
                continue;
            }
            sigma[k] = w;
            used[w] = true;
            if extend(k + 1, sigma, used, ok) {
                return true;
            }
            used[w] = false;
            sigma[k] = usize::MAX;
        }
        false
    }
    let ok = |v: usize, w: usize, sigma: &[usize]| {
        if ps[v] != qs[w] || pa[v][v] != qa[w][w] || pr[v][v] != qr[w][w] {
            return false;
        }
        (0..v).all(|u| {
            let x = sigma[u];
            pa[u][v] == qa[x][w] && pa[v][u] == qa[w][x] && pr[u][v] == qr[x][w] && pr[v][u] == qr[w][x]
        })
    };
    extend(0, &mut sigma, &mut used, &ok).then_some(sigma)
}

/// Images in `A` of the idempotents and arrows of a quiver algebra `B`.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub vertices: Vec<Vec<Scalar>>,
    pub arrows: Vec<Vec<Scalar>>,
}

/// Result of comparing an algebra `A` with a quiver algebra `B`.
#[derive(Clone, Debug)]
pub struct MatchReport {
    /// Vertex bijection between the quiver presentations, if one exists.
    pub vertex_bijection: Option<Vec<usize>>,
    /// Whether the supplied generator map extends to an algebra isomorphism `B -> A`.
    pub map_is_isomorphism: Option<bool>,
    pub detail: String,
    pub matches: bool,
}

/// Checks that the generator map extends to a multiplicative bijection `B -> A`.
pub fn generator_map_is_isomorphism(a: &FiniteAlgebra, b: &BasicAlgebra, map: &GeneratorMap) -> Result<bool> {
    let q = b.quiver();
    if map.vertices.len() != q.num_vertices() || map.arrows.len() != q.num_arrows() {
        return Err(Error::IncompleteGeneratorMap(format!(
            "need {} vertex and {} arrow images, got {} and {}",
            q.num_vertices(),
            q.num_arrows(),
            map.vertices.len(),
            map.arrows.len()
        )));
    }
    if map.vertices.iter().chain(&map.arrows).any(|v| v.len() != a.dim()) {
        return Err(Error::IncompleteGeneratorMap("image has the wrong length".into()));
    }
    let image = |p: &crate::quiver::Path| {
        let mut acc = map.vertices[p.source].clone();
        for &arrow in &p.arrows {
            acc = a.multiply(&map.arrows[arrow], &acc);
        }
        acc
    };
    let images: Vec<Vec<Scalar>> = b.basis().iter().map(image).collect();
    if a.dim() != b.dim() || columns_to_matrix(a.field(), a.dim(), &images).rank() != a.dim() {
        return Ok(false);
    }
    let bf = b.structure();
    for x in 0..b.dim() {
        for y in 0..b.dim() {
            let mut expected = a.zero();
            for (k, s) in bf.basis_product(x, y) {
                for (e, v) in expected.iter_mut().zip(&images[*k]) {
                    *e = &*e + &(s * v);
                }
            }
            if a.multiply(&images[x], &images[y]) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compares presentations and, when given, checks the generator map.
pub fn match_presentation(a: &FiniteAlgebra, b: &BasicAlgebra, map: Option<&GeneratorMap>) -> Result<MatchReport> {
    let pa = quiver_presentation(a)?;
    let pb = quiver_presentation(b.structure())?;
    let vertex_bijection = presentations_isomorphic(&pa, &pb);
    if vertex_bijection.is_none() {
        return Ok(MatchReport {
            vertex_bijection,
            map_is_isomorphism: None,
            detail: format!(
                "presentations differ: {} arrows / {} relations vs {} arrows / {} relations",
                pa.quiver.num_arrows(),
                pa.num_relations(),
                pb.quiver.num_arrows(),
                pb.num_relations()
            ),
            matches: false,
        });
    }
    let derived;
    let (map, source) = match map {
        Some(m) => (Some(m), "supplied generator map"),
        None => {
            derived = derived_generator_map(a, b, &pa, vertex_bijection.as_deref().unwrap_or_default());
            (derived.as_ref(), "generator map read off the presentation")
        }
    };
    let (map_is_isomorphism, detail) = match map {
        Some(m) => match generator_map_is_isomorphism(a, b, m) {
            Ok(true) => (Some(true), format!("{source} extends to an isomorphism")),
            Ok(false) => (Some(false), format!("{source} is not an isomorphism")),
            Err(e) => (Some(false), e.to_string()),
        },
        None => (None, "presentations isomorphic; multiple arrows leave the generator map undetermined".to_string()),
    };
    let matches = map_is_isomorphism == Some(true);
    Ok(MatchReport { vertex_bijection, map_is_isomorphism, detail, matches })
}

/// When arrows between any two vertices are unique, sends each arrow of `B` to the arrow of the
/// presentation of `A` between the corresponding vertices.
fn derived_generator_map(
    a: &FiniteAlgebra,
    b: &BasicAlgebra,
    pa: &Presentation,
    sigma: &[usize],
) -> Option<GeneratorMap> {
    let n = sigma.len();
    let mut inverse = vec![0; n];
    for (v, &w) in sigma.iter().enumerate() {
        inverse[w] = v;
    }
    let counts = pa.arrow_counts();
    let vertices = (0..n).map(|w| a.idempotent(inverse[w]).to_vec()).collect();
    let arrows = b
        .quiver()
        .arrows()
        .iter()
        .map(|arrow| {
            let (s, t) = (inverse[arrow.source], inverse[arrow.target]);
            if counts[s][t] != 1 {
                return None;
            }
            let k = pa.quiver.arrows().iter().position(|x| x.source == s && x.target == t)?;
            Some(pa.arrow_elements[k].clone())
        })
        .collect::<Option<Vec<_>>>()?;
    Some(GeneratorMap { vertices, arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::scalars::ExactField;

    #[test]
    fn presentation_of_r_has_one_relation() {
        for f in [ExactField::Rationals, ExactField::Prime(101), ExactField::Prime(2)] {
            let r = builtin::algebra_r(f);
            let p = quiver_presentation(r.structure()).unwrap();
            assert_eq!(p.quiver.num_arrows(), 9);
            assert_eq!(p.num_relations(), 1);
            assert_eq!(p.relation_counts[0][8], 1);
            let expected =
                if f.characteristic() == 2 { RadicalMethod::OffDiagonalIdeal } else { RadicalMethod::TraceForm };
            assert_eq!(p.radical.method, expected);
            assert_eq!(p.radical.dim(), 43);
        }
    }

    #[test]
    fn presentation_of_s_is_e() {
        let s = builtin::algebra_s(ExactField::Prime(101));
        let p = quiver_presentation(s.structure()).unwrap();
        assert_eq!(p.num_relations(), 0);
        let e = builtin::quiver_e();
        assert_eq!(p.arrow_counts(), {
            let mut c = vec![vec![0; 10]; 10];
            for a in e.arrows() {
                c[a.source][a.target] += 1;
            }
            c
        });
    }

    #[test]
    fn r_and_s_do_not_match() {
        let f = ExactField::Rationals;
        let r = builtin::algebra_r(f);
        let s = builtin::algebra_s(f);
        let report = match_presentation(r.structure(), &s, None).unwrap();
        assert!(!report.matches);
        assert!(report.vertex_bijection.is_none());
        let same = match_presentation(r.structure(), &builtin::algebra_r(f), None).unwrap();
        assert!(same.matches);
    }

    #[test]
    fn identity_generator_map_matches() {
        let f = ExactField::Prime(101);
        let s = builtin::algebra_s(f);
        let map = GeneratorMap {
            vertices: (0..10).map(|v| s.idempotent(v)).collect(),
            arrows: (0..9).map(|k| s.element_of_path(&s.quiver().arrow_path(k))).collect(),
        };
        let report = match_presentation(s.structure(), &s, Some(&map)).unwrap();
        assert!(report.matches);
        assert_eq!(report.map_is_isomorphism, Some(true));
        let mut bad = map.clone();
        bad.arrows.swap(0, 1);
        assert!(!generator_map_is_isomorphism(s.structure(), &s, &bad).unwrap());
        bad.arrows.pop();
        assert!(matches!(generator_map_is_isomorphism(s.structure(), &s, &bad), Err(Error::IncompleteGeneratorMap(_))));
    }

    #[test]
    fn isomorphism_search_respects_orientation() {
        let f = ExactField::Rationals;
        let a3 = builtin::linear_path_algebra(3, f);
        let rev = BasicAlgebra::path_algebra(crate::quiver::linear_quiver(3).opposite(), f).unwrap();
        let p = quiver_presentation(a3.structure()).unwrap();
        let q = quiver_presentation(rev.structure()).unwrap();
        assert_eq!(presentations_isomorphic(&p, &q), Some(vec![2, 1, 0]));
    }
}
