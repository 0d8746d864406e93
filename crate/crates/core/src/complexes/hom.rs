//! The Hom complex and morphisms in the homotopy category.

use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::modrep::{hom, same_algebra, HomSpace, ModuleMap};
use crate::scalars::{Matrix, Scalar, Subquotient};

/// A homogeneous element of degree `n` of `Hom(C, D)`: maps `f_i: C^i -> D^{i+n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub degree: i32,
    pub components: BTreeMap<i32, ModuleMap>,
}

/// `Hom(C, D)` in a window of degrees, as a complex of vector spaces.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: Complex,
    target: Complex,
    lo: i32,
    hi: i32,
    /// Degree `n` maps to the nonzero pieces `(i, Hom(C^i, D^{i+n}))`, ordered by `i`.
    pieces: BTreeMap<i32, Vec<(i32, HomSpace)>>,
}

/// The full Hom complex; degrees outside `[lo(D) - hi(C), hi(D) - lo(C)]` vanish.
pub fn hom_complex(c: &Complex, d: &Complex) -> Result<HomComplex> {
    HomComplex::window(c, d, d.lo() - c.hi(), d.hi() - c.lo())
}

impl HomComplex {
    /// Pieces for degrees `lo..=hi` only.
    pub fn window(c: &Complex, d: &Complex, lo: i32, hi: i32) -> Result<HomComplex> {
        if !same_algebra(c.algebra(), d.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut pieces = BTreeMap::new();
        for n in lo..=hi {
            let mut list = Vec::new();
            for i in c.degrees() {
                let (ci, dj) = (c.object(i), d.object(i + n));
                if ci.is_zero() || dj.is_zero() {
                    continue;
                }
                let h = hom(&ci, &dj)?;
                if h.dim() > 0 {
                    list.push((i, h));
                }
            }
            pieces.insert(n, list);
        }
        Ok(HomComplex { source: c.clone(), target: d.clone(), lo, hi, pieces })
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    fn pieces(&self, n: i32) -> &[(i32, HomSpace)] {
        self.pieces.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `Σ_i dim Hom(C^i, D^{i+n})`.
    pub fn dim(&self, n: i32) -> usize {
        self.pieces(n).iter().map(|(_, h)| h.dim()).sum()
    }

    pub fn element(&self, n: i32, coords: &[Scalar]) -> HomElement {
        let mut components = BTreeMap::new();
        let mut off = 0;
        for (i, h) in self.pieces(n) {
            components.insert(*i, h.element(&coords[off..off + h.dim()]));
            off += h.dim();
        }
        HomElement { degree: n, components }
    }

    /// Coordinates of an element whose components lie in the pieces of its degree.
    pub fn coordinates(&self, e: &HomElement) -> Vec<Scalar> {
        let mut out = Vec::new();
        for (i, h) in self.pieces(e.degree) {
            match e.components.get(i) {
                Some(f) => out.extend(h.coordinates(f)),
                None => out.extend(std::iter::repeat_n(self.source.algebra().field().zero(), h.dim())),
            }
        }
        out
    }

    /// `δ(f)_i = d_D^{i+n} ∘ f_i - (-1)^n f_{i+1} ∘ d_C^i`.
    pub fn apply_differential(&self, f: &HomElement) -> HomElement {
        let n = f.degree;
        let field = self.source.algebra().field();
        let sign = field.sign(n as i64);
        let mut components: BTreeMap<i32, ModuleMap> = BTreeMap::new();
        for (&i, fi) in &f.components {
            let a = self.target.differential(i + n).compose(fi);
            accumulate(&mut components, i, a);
            let b = fi.compose(&self.source.differential(i - 1)).scale(&-&sign);
            accumulate(&mut components, i - 1, b);
        }
        components.retain(|_, m| !m.is_zero());
        HomElement { degree: n + 1, components }
    }

    /// Matrix of `δ: Hom^n -> Hom^{n+1}` in the piece bases.
    pub fn differential_matrix(&self, n: i32) -> Matrix {
        let field = self.source.algebra().field();
        let (rows, cols) = (self.dim(n + 1), self.dim(n));
        let mut m = Matrix::zeros(field, rows, cols);
        for k in 0..cols {
            let mut e = vec![field.zero(); cols];
            e[k] = field.one();
            let image = self.apply_differential(&self.element(n, &e));
            for (r, c) in self.coordinates(&image).into_iter().enumerate() {
                m[(r, k)] = c;
            }
        }
        m
    }

    /// `H^l(Hom(C, D)) = Hom_K(C, D[l])`; needs degrees `l-1..=l+1` in the window.
    pub fn homology(&self, l: i32) -> HomotopyHom {
        assert!(self.lo < l && l < self.hi, "degree {l} needs a wider window");
        let field = self.source.algebra().field();
        let out = self.differential_matrix(l);
        let cycles = out.kernel_basis();
        let boundaries =
            if self.dim(l - 1) == 0 { Matrix::zeros(field, self.dim(l), 0) } else { self.differential_matrix(l - 1) };
        let quotient = Subquotient::new(&cycles, &boundaries);
        HomotopyHom { degree: l, complex: self.clone(), quotient }
    }
}

fn accumulate(map: &mut BTreeMap<i32, ModuleMap>, i: i32, m: ModuleMap) {
    match map.get_mut(&i) {
        Some(existing) => *existing = existing.add(&m),
        None => {
            map.insert(i, m);
        }
    }
}

/// `Hom_K(C, D[l])`: degree-`l` cycles of the Hom complex modulo boundaries.
#[derive(Clone, Debug)]
pub struct HomotopyHom {
    pub degree: i32,
    complex: HomComplex,
    quotient: Subquotient,
}

/// Chain maps `C -> D[l]` up to homotopy.
pub fn homotopy_hom(c: &Complex, d: &Complex, l: i32) -> Result<HomotopyHom> {
    Ok(HomComplex::window(c, d, l - 1, l + 1)?.homology(l))
}

impl HomotopyHom {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn source(&self) -> &Complex {
        &self.complex.source
    }

    pub fn target(&self) -> &Complex {
        &self.complex.target
    }

    /// Cycle representatives of a basis of classes.
    pub fn basis(&self) -> Vec<HomElement> {
        (0..self.dim()).map(|k| self.representative(k)).collect()
    }

    pub fn representative(&self, k: usize) -> HomElement {
        let coords = self.quotient.lift.col(k);
        self.complex.element(self.degree, coords.entries())
    }

    /// Coordinates of the class of a cycle; `None` if `f` is not a cycle.
    pub fn class_of(&self, f: &HomElement) -> Option<Vec<Scalar>> {
        if f.degree != self.degree || !self.complex.apply_differential(f).components.is_empty() {
            return None;
        }
        let field = self.complex.source.algebra().field();
        let v = Matrix::column(field, self.complex.coordinates(f));
        Some((&self.quotient.project * &v).entries().to_vec())
    }

    /// Class of a chain map `C -> D[l]`.
    pub fn class_of_chain_map(&self, g: &ChainMap) -> Option<Vec<Scalar>> {
        self.class_of(&chain_map_to_element(g, self.degree))
    }

    /// The `k`-th basis class as a chain map `C -> D[l]`.
    pub fn to_chain_map(&self, k: usize) -> ChainMap {
        element_to_chain_map(&self.representative(k), &self.complex.source, &self.complex.target)
    }

    /// True iff the chain map `C -> D[l]` is null-homotopic.
    pub fn is_null_homotopic(&self, g: &ChainMap) -> Option<bool> {
        self.class_of_chain_map(g).map(|c| c.iter().all(Scalar::is_zero))
    }

    pub fn contains_identity_class(&self) -> bool {
        let c = &self.complex.source;
        self.degree == 0
            && self.complex.source == self.complex.target
            && self.class_of_chain_map(&ChainMap::identity(c)).is_some_and(|v| v.iter().any(|x| !x.is_zero()))
    }
}

/// A chain map `g: C -> D[l]` read as a degree-`l` cycle of `Hom(C, D)`.
pub fn chain_map_to_element(g: &ChainMap, l: i32) -> HomElement {
    let components = g.source().degrees().map(|i| (i, g.component(i))).filter(|(_, m)| !m.is_zero()).collect();
    HomElement { degree: l, components }
}

/// A degree-`l` cycle of `Hom(C, D)` as a chain map `C -> D[l]`.
pub fn element_to_chain_map(e: &HomElement, c: &Complex, d: &Complex) -> ChainMap {
    let target = d.shift(e.degree);
    ChainMap::from_degree_maps(c, &target, |i| match e.components.get(&i) {
        Some(m) => m.clone(),
        None => c.object(i).zero_map_to(&target.object(i)),
    })
}
