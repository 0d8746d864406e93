//! The endomorphism algebra `End_K(T)` of a complex `T = ⊕ T_i`, as an algebra with basis.

use rayon::prelude::*;

use super::TiltingCandidate;
use crate::algebra::FiniteAlgebra;
use crate::complexes::{homotopy_hom, ChainMap, HomotopyHom};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// `End_K(T)` with basis the union of bases of `Hom_K(T_i, T_j)`.
///
/// Basis element `b` from `Hom_K(T_i, T_j)` multiplies as composition: `b_a b_b = a ∘ b`, so
/// `e_j End(T) e_i = Hom_K(T_i, T_j)`, matching the convention for basic algebras.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: FiniteAlgebra,
    homs: Vec<Vec<HomotopyHom>>,
    offsets: Vec<Vec<usize>>,
}

impl EndomorphismAlgebra {
    pub fn new(t: &TiltingCandidate) -> Result<EndomorphismAlgebra> {
        let n = t.summands.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let computed: Vec<HomotopyHom> =
            pairs.par_iter().map(|&(i, j)| homotopy_hom(&t.summands[i], &t.summands[j], 0)).collect::<Result<_>>()?;
        let mut homs: Vec<Vec<HomotopyHom>> = vec![Vec::with_capacity(n); n];
        for ((i, _), h) in pairs.iter().zip(computed) {
            homs[*i].push(h);
        }
        let mut offsets = vec![vec![0; n]; n];
        let mut labels = Vec::new();
        let mut owner = Vec::new();
        for i in 0..n {
            for j in 0..n {
                offsets[i][j] = labels.len();
                for k in 0..homs[i][j].dim() {
                    labels.push(format!("{}->{}#{}", t.labels[i], t.labels[j], k + 1));
                    owner.push((i, j, k));
                }
            }
        }
        let dim = labels.len();
        let field = t.algebra.field();
        let reps: Vec<ChainMap> = owner.iter().map(|&(i, j, k)| homs[i][j].to_chain_map(k)).collect();
        let table: Vec<Vec<Vec<(usize, Scalar)>>> = (0..dim)
            .into_par_iter()
            .map(|a| {
                let (j, k, _) = owner[a];
                (0..dim)
                    .map(|b| {
                        let (i, j2, _) = owner[b];
                        if j2 != j {
                            return Ok(Vec::new());
                        }
                        let prod = reps[a].compose(&reps[b]);
                        let coords = homs[i][k]
                            .class_of_chain_map(&prod)
                            .ok_or_else(|| Error::InvalidChainMap("composite is not a chain map".into()))?;
                        Ok(coords
                            .into_iter()
                            .enumerate()
                            .filter(|(_, s)| !s.is_zero())
                            .map(|(c, s)| (offsets[i][k] + c, s))
                            .collect())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let idempotents = (0..n)
            .map(|i| {
                let id = ChainMap::identity(&t.summands[i]);
                let coords = homs[i][i]
                    .class_of_chain_map(&id)
                    .ok_or_else(|| Error::InvalidChainMap("identity is not a cycle".into()))?;
                let mut v = vec![field.zero(); dim];
                for (c, s) in coords.into_iter().enumerate() {
                    v[offsets[i][i] + c] = s;
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let algebra = FiniteAlgebra::new(field, labels, t.labels.clone(), idempotents, table);
        Ok(EndomorphismAlgebra { algebra, homs, offsets })
    }

    /// `dim Hom_K(T_i, T_j)`.
    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.homs[i][j].dim()
    }

    pub fn hom_table(&self) -> Vec<Vec<usize>> {
        self.homs.iter().map(|row| row.iter().map(HomotopyHom::dim).collect()).collect()
    }

    /// Coordinates of the class of a chain map `T_i -> T_j`.
    pub fn element_of(&self, i: usize, j: usize, g: &ChainMap) -> Result<Vec<Scalar>> {
        let h = &self.homs[i][j];
        if g.source() != h.source() || g.target() != h.target() {
            return Err(Error::InvalidChainMap(format!("map is not between summands {} and {}", i + 1, j + 1)));
        }
        let coords = h.class_of_chain_map(g).ok_or_else(|| {
            Error::InvalidChainMap(format!("map between summands {} and {} is not a chain map", i + 1, j + 1))
        })?;
        let mut v = self.algebra.zero();
        for (c, s) in coords.into_iter().enumerate() {
            v[self.offsets[i][j] + c] = s;
        }
        Ok(v)
    }
}
