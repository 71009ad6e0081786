//! Finite-dimensional algebras given by structure constants, and their modules.
//!
//! Conventions: modules are left modules. A basis element `b` with
//! `corner(b) = (h, t)` satisfies `b = e_h b e_t` and maps `e_t M` to `e_h M`.
//! For quiver algebras an arrow `a: i -> j` therefore has corner `(j, i)`, and a
//! product `p * q` means "first q, then p".

mod enumerate;
mod iso;
mod module;
mod quiver;

use std::sync::Arc;

pub use enumerate::{dimension_vectors, enumerate_representations, indecomposables_up_to, submodules};
pub use iso::{indecomposable_decomposition, is_indecomposable, is_isomorphic, Decomposition};
pub use module::{combine_homs, direct_sum, hom_dim, hom_space, power, DirectSum, FDModule, ModuleHom};
pub use quiver::{
    algebra_from_quiver, format_combination, parse_combination, Arrow, Path, Quiver, QuiverPresentation, Relation,
};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

pub type Alg = Arc<FDAlgebra>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    Idempotent(usize),
    Radical,
    Other,
}

/// A finite-dimensional algebra with a fixed basis containing a complete set of
/// primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    field: Field,
    n: usize,
    labels: Vec<String>,
    tags: Vec<BasisTag>,
    corners: Vec<(usize, usize)>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    idempotents: Vec<usize>,
    generators: Vec<usize>,
    presentation: Option<QuiverPresentation>,
}

impl PartialEq for FDAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.labels == other.labels
            && self.tags == other.tags
            && self.left == other.left
    }
}

impl FDAlgebra {
    /// Builds an algebra from its multiplication table: `table[i][j]` holds the
    /// coordinates of `b_i * b_j`. Every invariant is verified.
    pub fn from_table(
        field: Field,
        labels: Vec<String>,
        tags: Vec<BasisTag>,
        table: &[Vec<Vec<Scalar>>],
        generators: Option<Vec<usize>>,
    ) -> Result<FDAlgebra> {
        let d = labels.len();
        if tags.len() != d || table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidAlgebra("table size does not match basis".into()));
        }
        let mut idem: Vec<(usize, usize)> = tags
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                BasisTag::Idempotent(v) => Some((*v, i)),
                _ => None,
            })
            .collect();
        idem.sort();
        let n = idem.len();
        if idem.iter().enumerate().any(|(k, (v, _))| *v != k) {
            return Err(Error::InvalidAlgebra("idempotent tags must be 0..n without gaps".into()));
        }
        let idempotents: Vec<usize> = idem.into_iter().map(|(_, i)| i).collect();

        let mut left = Vec::with_capacity(d);
        for i in 0..d {
            let cols: Vec<Vec<Scalar>> = (0..d).map(|j| table[i][j].clone()).collect();
            if cols.iter().any(|c| c.len() != d) {
                return Err(Error::InvalidAlgebra("structure constant vector has wrong length".into()));
            }
            left.push(Matrix::from_columns(field, d, &cols));
        }
        let mut right = Vec::with_capacity(d);
        for j in 0..d {
            let cols: Vec<Vec<Scalar>> = (0..d).map(|i| table[i][j].clone()).collect();
            right.push(Matrix::from_columns(field, d, &cols));
        }
        let generators = generators.unwrap_or_else(|| (0..d).collect());
        let mut alg = FDAlgebra {
            field,
            n,
            labels,
            tags,
            corners: vec![(0, 0); d],
            left,
            right,
            idempotents,
            generators,
            presentation: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&mut self) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        // associativity on basis triples: L_{(ab)} = L_a L_b
        for a in 0..d {
            for b in 0..d {
                let ab = self.left[a].column(b);
                let lhs = self.left_of(&ab);
                let rhs = self.left[a].mul(&self.left[b]);
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "multiplication is not associative at ({}, {})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        // orthogonal idempotents summing to one
        let one = self.one();
        let id = Matrix::identity(f, d);
        if self.left_of(&one) != id || self.right_of(&one) != id {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        for (v, &i) in self.idempotents.iter().enumerate() {
            for (w, &j) in self.idempotents.iter().enumerate() {
                let prod = self.left[i].column(j);
                let expect = if v == w { self.basis_vec(i) } else { vec![f.zero(); d] };
                if prod != expect {
                    return Err(Error::InvalidAlgebra("idempotents are not orthogonal".into()));
                }
            }
        }
        // every basis element lies in one corner e_h A e_t
        for b in 0..d {
            let bv = self.basis_vec(b);
            let mut found = None;
            for h in 0..self.n {
                for t in 0..self.n {
                    let x = self.mul(
                        &self.mul(&self.basis_vec(self.idempotents[h]), &bv),
                        &self.basis_vec(self.idempotents[t]),
                    );
                    if x == bv {
                        found = Some((h, t));
                    } else if x.iter().any(|s| !s.is_zero()) {
                        return Err(Error::InvalidAlgebra(format!(
                            "basis element {} is not homogeneous for the idempotents",
                            self.labels[b]
                        )));
                    }
                }
            }
            self.corners[b] = found
                .ok_or_else(|| Error::InvalidAlgebra(format!("basis element {} lies in no corner", self.labels[b])))?;
        }
        // radical-tagged elements span a nilpotent two-sided ideal
        let rad: Vec<usize> = self.radical_indices();
        let in_rad = |x: &[Scalar]| x.iter().enumerate().all(|(k, s)| s.is_zero() || rad.contains(&k));
        for &r in &rad {
            for x in 0..d {
                if !in_rad(&self.left[r].column(x)) || !in_rad(&self.left[x].column(r)) {
                    return Err(Error::InvalidAlgebra("radical span is not an ideal".into()));
                }
            }
        }
        let mut power: Vec<Vec<Scalar>> = rad.iter().map(|&r| self.basis_vec(r)).collect();
        for _ in 0..=d {
            if power.is_empty() {
                return Ok(());
            }
            let mut next = Vec::new();
            for p in &power {
                for &r in &rad {
                    next.push(self.left[r].mul_vec(p));
                }
            }
            let m = Matrix::from_columns(f, d, &next);
            power = m.image_basis().columns();
        }
        Err(Error::InvalidAlgebra("radical is not nilpotent".into()))
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn n_vertices(&self) -> usize {
        self.n
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn tag(&self, i: usize) -> &BasisTag {
        &self.tags[i]
    }
    pub fn tags(&self) -> &[BasisTag] {
        &self.tags
    }
    /// `(head, tail)` with `b = e_head b e_tail`.
    pub fn corner(&self, i: usize) -> (usize, usize) {
        self.corners[i]
    }
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn presentation(&self) -> Option<&QuiverPresentation> {
        self.presentation.as_ref()
    }
    pub(crate) fn set_presentation(&mut self, p: QuiverPresentation) {
        self.presentation = Some(p);
    }

    /// Matrix of `x -> b_i x`.
    pub fn left_mul(&self, i: usize) -> &Matrix {
        &self.left[i]
    }
    /// Matrix of `x -> x b_i`.
    pub fn right_mul(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.tags[i] == BasisTag::Radical).collect()
    }

    /// Basis elements in `e_h A e_t`.
    pub fn corner_basis(&self, h: usize, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.corners[i] == (h, t)).collect()
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        for &i in &self.idempotents {
            v[i] = self.field.one();
        }
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let col = self.left[i].mul_vec(y);
            for (a, c) in acc.iter_mut().zip(col) {
                if !c.is_zero() {
                    *a = &*a + &(xi * &c);
                }
            }
        }
        acc
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.left, x)
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.right, x)
    }

    /// True when every basis element is an idempotent or radical, i.e. the algebra is basic
    /// with the given idempotents primitive.
    pub fn is_basic(&self) -> bool {
        self.tags.iter().all(|t| *t != BasisTag::Other)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.dim() == 0
    }
}

pub(crate) fn combine(field: Field, d: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut acc = Matrix::zeros(field, d, d);
    for (m, c) in mats.iter().zip(x) {
        acc.add_scaled(c, m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative_table() {
        let f = Field::Prime(5);
        // one idempotent e and a radical r with r*r = r: not nilpotent
        let z = f.zero();
        let o = f.one();
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), o.clone()]],
        ];
        let r = FDAlgebra::from_table(
            f,
            vec!["e".into(), "r".into()],
            vec![BasisTag::Idempotent(0), BasisTag::Radical],
            &table,
            None,
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }
}
