//! Krull–Schmidt decomposition over prime fields by endomorphism splitting.
//!
//! A non-scalar endomorphism `φ` with an eigenvalue `λ` in `F_p` gives the Fitting
//! decomposition `M = ker (φ-λ)^N ⊕ im (φ-λ)^N`; both parts are submodules. When no
//! endomorphism splits `M`, locality of `End(M)` is certified by exhibiting the
//! nilpotent ideal `N` with `End(M) = F_p·1 ⊕ N`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom, ModuleMap, Representation};
use crate::error::{Error, Result};
use crate::scalars::{ExactField, Matrix, Scalar};

/// One indecomposable summand with its inclusion into and projection from the original module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `classes[k]` lists the summand indices in the k-th isomorphism class.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// The copairing of all inclusions, an isomorphism `⊕ summands -> M`.
    pub fn reassembly(&self, original: &Representation) -> ModuleMap {
        let incs: Vec<&ModuleMap> = self.summands.iter().map(|s| &s.inclusion).collect();
        ModuleMap::copair(original.field(), original, &incs)
    }

    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.classes.iter().map(|c| (c[0], c.len())).collect()
    }
}

/// Splits `m` into indecomposables. Only prime fields are supported.
pub fn decompose(m: &Representation) -> Result<Decomposition> {
    let p = match m.field() {
        ExactField::Prime(p) => p,
        ExactField::Rationals => return Err(Error::FieldNotSupported),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ m.dim() as u64);
    let mut done = Vec::new();
    let mut stack = vec![Summand { module: m.clone(), inclusion: m.identity_map(), projection: m.identity_map() }];
    while let Some(s) = stack.pop() {
        if s.module.is_zero() {
            continue;
        }
        match split(&s.module, p, &mut rng)? {
            None => done.push(s),
            Some([a, b]) => {
                for part in [b, a] {
                    stack.push(Summand {
                        inclusion: s.inclusion.compose(&part.inclusion),
                        projection: part.projection.compose(&s.projection),
                        module: part.module,
                    });
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in done.iter().enumerate() {
        match classes.iter_mut().find(|c| is_isomorphic_indecomposable(&done[c[0]].module, &s.module)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(Decomposition { summands: done, classes })
}

/// Isomorphism test for indecomposables with local endomorphism rings: some basis
/// element of `Hom(M, N)` must then be invertible.
pub fn is_isomorphic_indecomposable(m: &Representation, n: &Representation) -> bool {
    m.dims() == n.dims() && hom(m, n).map(|h| h.contains_isomorphism()).unwrap_or(false)
}

fn scalar_map(m: &Representation, s: &Scalar) -> ModuleMap {
    m.identity_map().scale(s)
}

fn power(f: &ModuleMap, e: u32) -> ModuleMap {
    ModuleMap { components: f.components.iter().map(|c| c.pow(e)).collect() }
}

/// Splits `m = U ⊕ V` along the Fitting decomposition of `psi`, if both parts are nonzero.
fn fitting_split(m: &Representation, psi: &ModuleMap) -> Option<[Summand; 2]> {
    let e = m.dims().iter().copied().max().unwrap_or(0) as u32;
    let big = power(psi, e.max(1));
    let ker: Vec<Matrix> = big.components.iter().map(Matrix::kernel_basis).collect();
    let img: Vec<Matrix> = big.components.iter().map(Matrix::column_space).collect();
    let kdim: usize = ker.iter().map(Matrix::cols).sum();
    if kdim == 0 || kdim == m.dim() {
        return None;
    }
    let f = m.field();
    let (ku, ki) = m.submodule(&ker);
    let (iu, ii) = m.submodule(&img);
    let mut pk = Vec::new();
    let mut pi = Vec::new();
    for v in 0..m.dims().len() {
        let basis = Matrix::hstack(f, m.dims()[v], &[&ki.components[v], &ii.components[v]]);
        let inv = basis.inverse().expect("Fitting decomposition is direct");
        let k = ki.components[v].cols();
        pk.push(inv.block(0, k, 0, m.dims()[v]));
        pi.push(inv.block(k, m.dims()[v], 0, m.dims()[v]));
    }
    Some([
        Summand { module: ku, inclusion: ki, projection: ModuleMap { components: pk } },
        Summand { module: iu, inclusion: ii, projection: ModuleMap { components: pi } },
    ])
}

/// All eigenvalues of `f` lying in `F_p`.
fn eigenvalues(f: &ModuleMap, p: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut roots = Vec::new();
    for c in &f.components {
        if c.rows() == 0 {
            continue;
        }
        let poly = charpoly(c, p);
        for r in poly_roots(&poly, p, rng) {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort_unstable();
    roots
}

enum Outcome {
    Split([Summand; 2]),
    /// `φ - λ` is nilpotent.
    Nilpotent(ModuleMap),
    /// No eigenvalue in `F_p`.
    NoEigenvalue,
}

fn examine(m: &Representation, phi: &ModuleMap, p: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let f = m.field();
    let eig = eigenvalues(phi, p, rng);
    let Some(&first) = eig.first() else {
        return Outcome::NoEigenvalue;
    };
    for &lam in &eig {
        let psi = phi.sub(&scalar_map(m, &f.from_i64(lam as i64)));
        if let Some(parts) = fitting_split(m, &psi) {
            return Outcome::Split(parts);
        }
    }
    Outcome::Nilpotent(phi.sub(&scalar_map(m, &f.from_i64(first as i64))))
}

/// `Some` splitting, or `None` when `End(m)` is certified local.
fn split(m: &Representation, p: u64, rng: &mut ChaCha8Rng) -> Result<Option<[Summand; 2]>> {
    let f = m.field();
    let end = hom(m, m)?;
    let mut nilpotents = Vec::new();
    let mut certifiable = true;
    for phi in &end.basis {
        match examine(m, phi, p, rng) {
            Outcome::Split(parts) => return Ok(Some(parts)),
            Outcome::Nilpotent(n) => nilpotents.push(n),
            Outcome::NoEigenvalue => certifiable = false,
        }
    }
    if certifiable && is_local_certificate(m, &nilpotents, end.dim()) {
        return Ok(None);
    }
    for _ in 0..64 {
        let coeffs: Vec<Scalar> = (0..end.dim()).map(|_| f.random(rng)).collect();
        if let Outcome::Split(parts) = examine(m, &end.element(&coeffs), p, rng) {
            return Ok(Some(parts));
        }
    }
    Err(Error::Unsupported("endomorphism ring is neither split by the search nor certified local".into()))
}

/// Checks that `N = span(nilpotents)` has codimension one in `End(m)`, is closed under
/// products and is nilpotent, so that `End(m)/N ≅ F_p`.
fn is_local_certificate(m: &Representation, nilpotents: &[ModuleMap], end_dim: usize) -> bool {
    let f = m.field();
    let cols: Vec<Matrix> = nilpotents.iter().map(|n| Matrix::column(f, n.vectorize())).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let len = m.identity_map().vectorize().len();
    let span = Matrix::hstack(f, len, &refs).column_space();
    if span.cols() + 1 != end_dim {
        return false;
    }
    let basis: Vec<ModuleMap> =
        (0..span.cols()).map(|j| ModuleMap::from_vector(f, m, m, span.col(j).entries())).collect();
    let in_span = |x: &ModuleMap| {
        let with = Matrix::hstack(f, len, &[&span, &Matrix::column(f, x.vectorize())]);
        with.rank() == span.cols()
    };
    if !basis.iter().all(|a| basis.iter().all(|b| in_span(&a.compose(b)))) {
        return false;
    }
    // Powers of N: N^k shrinks strictly until it vanishes.
    let mut layer = basis.clone();
    for _ in 0..=m.dim() {
        if layer.iter().all(ModuleMap::is_zero) {
            return true;
        }
        let prods: Vec<Matrix> =
            layer.iter().flat_map(|a| basis.iter().map(move |b| Matrix::column(f, a.compose(b).vectorize()))).collect();
        let refs: Vec<&Matrix> = prods.iter().collect();
        let next = Matrix::hstack(f, len, &refs).column_space();
        layer = (0..next.cols()).map(|j| ModuleMap::from_vector(f, m, m, next.col(j).entries())).collect();
    }
    layer.iter().all(ModuleMap::is_zero)
}

// Dense polynomials over F_p, coefficients lowest degree first.

fn modp(s: &Scalar) -> u64 {
    match s {
        Scalar::Modular { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("prime field only"),
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let c = r.last().copied().unwrap_or(0) * lead_inv % p;
        let shift = r.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        a.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), modulus, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
fn charpoly(a: &Matrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| modp(&a[(i, j)])).collect()).collect();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let t = h[i][m - 1] * inv % p;
            if t == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - t * h[m][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + t * row[i]) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = poly_mul(&[(p - h[k][k]) % p, 1], &polys[k], p);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % p;
            let c = prod * h[i][k] % p;
            if c != 0 {
                let term: Vec<u64> = polys[i].iter().map(|x| x * c % p).collect();
                next = poly_sub(&next, &term, p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

/// Distinct roots in `F_p`, by `gcd(f, x^p - x)` followed by random equal-degree splitting.
fn poly_roots(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    let xp = poly_powmod(&[0, 1], p, &f, p);
    let g = poly_gcd(&f, &poly_sub(&xp, &[0, 1], p), p);
    let mut out = Vec::new();
    split_linear(&g, p, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(g: &[u64], p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push((p - g[0] * inv_mod(g[1], p) % p) % p),
        _ if p == 2 => {
            for x in 0..2u64 {
                if g.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0 {
                    out.push(x);
                }
            }
        }
        _ => loop {
            let a = rng.gen_range(0..p);
            let h = poly_powmod(&[a, 1], (p - 1) / 2, g, p);
            let d = poly_gcd(g, &poly_sub(&h, &[1], p), p);
            if d.len() > 1 && d.len() < g.len() {
                let rest = poly_div(g, &d, p);
                split_linear(&d, p, rng, out);
                split_linear(&rest, p, rng, out);
                return;
            }
        },
    }
}

fn poly_div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    let mut q = vec![0u64; r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let c = r.last().copied().unwrap_or(0) * lead_inv % p;
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    trim(q)
}
