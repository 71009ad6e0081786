//! Modules as action matrices and homomorphisms between them.

use std::fmt;
use std::sync::Arc;

use super::{Alg, BasisTag};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A finite-dimensional left module. The total space is ordered vertex by vertex.
#[derive(Clone)]
pub struct FDModule {
    inner: Arc<ModuleData>,
}

struct ModuleData {
    alg: Alg,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for FDModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDModule{:?}", self.dims())
    }
}

impl PartialEq for FDModule {
    /// Equality of the concrete matrices, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims && self.inner.action == other.inner.action)
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    off.push(0);
    for d in dims {
        acc += d;
        off.push(acc);
    }
    off
}

impl FDModule {
    /// A module from the action of every basis element; the representation axioms
    /// are verified.
    pub fn new(alg: &Alg, dims: Vec<usize>, action: Vec<Matrix>) -> Result<FDModule> {
        let m = FDModule::from_parts(alg, dims, action)?;
        m.validate()?;
        Ok(m)
    }

    /// A module from actions on an ungraded space. Returns the module and the basis
    /// change whose columns are its coordinates in the original space.
    pub fn from_ungraded(alg: &Alg, d: usize, action: Vec<Matrix>) -> Result<(FDModule, Matrix)> {
        let f = alg.field();
        if action.len() != alg.dim() || action.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidModule("action matrices have the wrong shape".into()));
        }
        let pieces: Vec<Matrix> = (0..alg.n_vertices()).map(|v| action[alg.idempotent(v)].image_basis()).collect();
        let dims: Vec<usize> = pieces.iter().map(Matrix::cols).collect();
        let refs: Vec<&Matrix> = pieces.iter().collect();
        let q = if refs.is_empty() { Matrix::zeros(f, d, 0) } else { Matrix::hstack(&refs) };
        if q.cols() != d || !q.is_invertible() && d > 0 {
            return Err(Error::InvalidModule("idempotents do not decompose the space".into()));
        }
        let action = if d == 0 {
            action
        } else {
            let qi = q.inverse().expect("checked invertible");
            action.iter().map(|a| qi.mul(a).mul(&q)).collect()
        };
        Ok((FDModule::new(alg, dims, action)?, q))
    }

    fn from_parts(alg: &Alg, dims: Vec<usize>, action: Vec<Matrix>) -> Result<FDModule> {
        if dims.len() != alg.n_vertices() {
            return Err(Error::InvalidModule("dimension vector has the wrong length".into()));
        }
        let total: usize = dims.iter().sum();
        if action.len() != alg.dim() || action.iter().any(|m| m.rows() != total || m.cols() != total) {
            return Err(Error::InvalidModule("action matrices have the wrong shape".into()));
        }
        Ok(FDModule::unchecked(alg, dims, action))
    }

    pub(crate) fn unchecked(alg: &Alg, dims: Vec<usize>, action: Vec<Matrix>) -> FDModule {
        let offsets = offsets_of(&dims);
        FDModule { inner: Arc::new(ModuleData { alg: alg.clone(), dims, offsets, action }) }
    }

    fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        let total = self.total_dim();
        let f = alg.field();
        for v in 0..alg.n_vertices() {
            if *self.act(alg.idempotent(v)) != self.grading_projection(v) {
                return Err(Error::InvalidModule(format!("e{} does not act as the grading projection", v + 1)));
            }
        }
        for &g in alg.generators() {
            for b in 0..alg.dim() {
                let prod = self.act(g).mul(self.act(b));
                let expect = self.act_element(&alg.left_mul(g).column(b));
                if prod != expect {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative at ({}, {})",
                        alg.label(g),
                        alg.label(b)
                    )));
                }
            }
        }
        let one = self.act_element(&alg.one());
        if one != Matrix::identity(f, total) {
            return Err(Error::InvalidModule("unit does not act as identity".into()));
        }
        Ok(())
    }

    /// A module over a quiver algebra given by one matrix per arrow; matrix for
    /// `a: i -> j` has shape `dims[j] x dims[i]`.
    pub fn from_arrows(alg: &Alg, dims: Vec<usize>, arrows: &[Matrix]) -> Result<FDModule> {
        let pres =
            alg.presentation().ok_or_else(|| Error::InvalidModule("algebra has no quiver presentation".into()))?;
        let q = &pres.quiver;
        if arrows.len() != q.arrows.len() || dims.len() != q.n {
            return Err(Error::InvalidModule("wrong number of arrow matrices or vertices".into()));
        }
        let f = alg.field();
        let off = offsets_of(&dims);
        let total = off[q.n];
        let mut full = Vec::with_capacity(arrows.len());
        for (a, m) in arrows.iter().enumerate() {
            let (s, t) = (q.arrows[a].source, q.arrows[a].target);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::InvalidModule(format!("matrix for {} has the wrong shape", q.arrows[a].name)));
            }
            let mut big = Matrix::zeros(f, total, total);
            big.set_block(off[t], off[s], m);
            full.push(big);
        }
        let action: Vec<Matrix> = pres
            .basis_paths
            .iter()
            .map(|p| {
                if p.is_empty() {
                    let mut e = Matrix::zeros(f, total, total);
                    e.set_block(off[p.tail], off[p.tail], &Matrix::identity(f, dims[p.tail]));
                    e
                } else {
                    let mut acc = Matrix::identity(f, total);
                    for &a in &p.arrows {
                        acc = full[a].mul(&acc);
                    }
                    acc
                }
            })
            .collect();
        FDModule::new(alg, dims, action)
    }

    pub fn zero(alg: &Alg) -> FDModule {
        let f = alg.field();
        FDModule::unchecked(alg, vec![0; alg.n_vertices()], vec![Matrix::zeros(f, 0, 0); alg.dim()])
    }

    /// Simple module at vertex `v` (basic algebras only).
    pub fn simple(alg: &Alg, v: usize) -> FDModule {
        let f = alg.field();
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        let action = (0..alg.dim())
            .map(|b| match alg.tag(b) {
                BasisTag::Idempotent(w) if *w == v => Matrix::identity(f, 1),
                _ => Matrix::zeros(f, 1, 1),
            })
            .collect();
        FDModule::unchecked(alg, dims, action)
    }

    /// Algebra basis indices spanning `A e_v`, in module coordinate order.
    pub fn projective_basis(alg: &Alg, v: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..alg.dim()).filter(|&b| alg.corner(b).1 == v).collect();
        idx.sort_by_key(|&b| (alg.corner(b).0, b));
        idx
    }

    /// The indecomposable projective `A e_v`.
    pub fn projective(alg: &Alg, v: usize) -> FDModule {
        let idx = FDModule::projective_basis(alg, v);
        let mut dims = vec![0; alg.n_vertices()];
        for &b in &idx {
            dims[alg.corner(b).0] += 1;
        }
        let action = (0..alg.dim()).map(|c| alg.left_mul(c).select_rows(&idx).select_columns(&idx)).collect();
        FDModule::unchecked(alg, dims, action)
    }

    /// Algebra basis indices spanning `e_v A`, in module coordinate order of the injective.
    pub fn injective_basis(alg: &Alg, v: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..alg.dim()).filter(|&b| alg.corner(b).0 == v).collect();
        idx.sort_by_key(|&b| (alg.corner(b).1, b));
        idx
    }

    /// The indecomposable injective `D(e_v A)`; the dual basis vector of `b` sits at
    /// the tail vertex of `b`.
    pub fn injective(alg: &Alg, v: usize) -> FDModule {
        let idx = FDModule::injective_basis(alg, v);
        let mut dims = vec![0; alg.n_vertices()];
        for &b in &idx {
            dims[alg.corner(b).1] += 1;
        }
        let action =
            (0..alg.dim()).map(|c| alg.right_mul(c).select_rows(&idx).select_columns(&idx).transpose()).collect();
        FDModule::unchecked(alg, dims, action)
    }

    /// The regular module as the sum of the indecomposable projectives.
    pub fn regular(alg: &Alg) -> FDModule {
        let ps: Vec<FDModule> = (0..alg.n_vertices()).map(|v| FDModule::projective(alg, v)).collect();
        if ps.is_empty() {
            return FDModule::zero(alg);
        }
        direct_sum(&ps).module
    }

    /// `D(A)`, the sum of the indecomposable injectives.
    pub fn dual_regular(alg: &Alg) -> FDModule {
        let is: Vec<FDModule> = (0..alg.n_vertices()).map(|v| FDModule::injective(alg, v)).collect();
        if is.is_empty() {
            return FDModule::zero(alg);
        }
        direct_sum(&is).module
    }

    pub fn algebra(&self) -> &Alg {
        &self.inner.alg
    }
    pub fn field(&self) -> Field {
        self.inner.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }
    pub fn total_dim(&self) -> usize {
        *self.inner.offsets.last().unwrap()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn offset(&self, v: usize) -> usize {
        self.inner.offsets[v]
    }
    pub fn act(&self, b: usize) -> &Matrix {
        &self.inner.action[b]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.inner.action
    }

    pub fn act_element(&self, x: &[Scalar]) -> Matrix {
        super::combine(self.field(), self.total_dim(), &self.inner.action, x)
    }

    /// Block of `act(b)` from `e_t M` to `e_h M`, where `(h, t)` is the corner of `b`.
    pub fn act_block(&self, b: usize) -> Matrix {
        let (h, t) = self.algebra().corner(b);
        self.act(b).block(self.offset(h), self.offset(t), self.dims()[h], self.dims()[t])
    }

    pub fn grading_projection(&self, v: usize) -> Matrix {
        let f = self.field();
        let mut e = Matrix::zeros(f, self.total_dim(), self.total_dim());
        e.set_block(self.offset(v), self.offset(v), &Matrix::identity(f, self.dims()[v]));
        e
    }

    /// Vertex of each coordinate of the total space.
    pub fn coordinate_vertices(&self) -> Vec<usize> {
        (0..self.dims().len()).flat_map(|v| std::iter::repeat_n(v, self.dims()[v])).collect()
    }

    pub fn same_algebra(&self, other: &FDModule) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || **self.algebra() == **other.algebra()
    }

    pub fn identity(&self) -> ModuleHom {
        ModuleHom::unchecked(self, self, Matrix::identity(self.field(), self.total_dim()))
    }

    pub fn zero_hom(&self, target: &FDModule) -> ModuleHom {
        ModuleHom::unchecked(self, target, Matrix::zeros(self.field(), target.total_dim(), self.total_dim()))
    }

    pub fn zero_to(&self) -> ModuleHom {
        self.zero_hom(&FDModule::zero(self.algebra()))
    }

    pub fn zero_from(&self) -> ModuleHom {
        FDModule::zero(self.algebra()).zero_hom(self)
    }

    /// Submodule generated by the given vectors: the span of `b v` over all basis elements.
    pub fn generated_by(&self, vectors: &[Vec<Scalar>]) -> (FDModule, ModuleHom) {
        let mut cols = Vec::new();
        for v in vectors {
            for b in self.actions() {
                cols.push(b.mul_vec(v));
            }
        }
        let span = Matrix::from_columns(self.field(), self.total_dim(), &cols);
        self.submodule(&span).expect("generated span is a submodule")
    }

    /// The submodule spanned by the columns of `span`, which must be invariant.
    pub fn submodule(&self, span: &Matrix) -> Result<(FDModule, ModuleHom)> {
        let f = self.field();
        let n = self.dims().len();
        // split into graded pieces
        let mut blocks = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        for v in 0..n {
            let piece = span.block(self.offset(v), 0, self.dims()[v], span.cols()).image_basis();
            dims.push(piece.cols());
            blocks.push(piece);
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let incl = Matrix::block_diag(f, &refs);
        let total: usize = dims.iter().sum();
        if incl.rank() != total || Matrix::hstack(&[&incl, span]).rank() != total {
            return Err(Error::InvalidModule("span is not graded".into()));
        }
        let mut action = Vec::with_capacity(self.actions().len());
        for b in self.actions() {
            let img = b.mul(&incl);
            action.push(incl.coordinates(&img).map_err(|_| Error::InvalidModule("span is not invariant".into()))?);
        }
        let sub = FDModule::unchecked(self.algebra(), dims, action);
        let hom = ModuleHom::unchecked(&sub, self, incl);
        Ok((sub, hom))
    }

    /// Quotient by the image of an injective homomorphism into `self`.
    pub fn quotient(&self, inclusion: &ModuleHom) -> Result<(FDModule, ModuleHom)> {
        if inclusion.matrix.rank() != inclusion.source.total_dim() {
            return Err(Error::NotInjective);
        }
        Ok(self.quotient_by_span(&inclusion.matrix))
    }

    /// Quotient by the submodule spanned by the columns of `span` (assumed invariant).
    pub fn quotient_by_span(&self, span: &Matrix) -> (FDModule, ModuleHom) {
        let f = self.field();
        let n = self.dims().len();
        let mut projs = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        for v in 0..n {
            let piece = span.block(self.offset(v), 0, self.dims()[v], span.cols());
            let (c, d) = piece.cokernel_projection();
            // c is in reduced echelon form, so the unit vectors at its pivots give a section
            let pivots = c.rref().pivots;
            let mut s = Matrix::zeros(f, self.dims()[v], d);
            for (k, &p) in pivots.iter().enumerate() {
                s.set(p, k, f.one());
            }
            dims.push(d);
            projs.push(c);
            sections.push(s);
        }
        let pr: Vec<&Matrix> = projs.iter().collect();
        let se: Vec<&Matrix> = sections.iter().collect();
        let proj = Matrix::block_diag(f, &pr);
        let sect = Matrix::block_diag(f, &se);
        let action = self.actions().iter().map(|b| proj.mul(b).mul(&sect)).collect();
        let q = FDModule::unchecked(self.algebra(), dims, action);
        let hom = ModuleHom::unchecked(self, &q, proj);
        (q, hom)
    }

    /// `J M`, the radical.
    pub fn radical(&self) -> (FDModule, ModuleHom) {
        let alg = self.algebra().clone();
        let mut cols = Vec::new();
        for r in alg.radical_indices() {
            cols.extend(self.act(r).columns());
        }
        let span = Matrix::from_columns(self.field(), self.total_dim(), &cols);
        self.submodule(&span).expect("radical is a submodule")
    }

    /// `M / J M`.
    pub fn top(&self) -> (FDModule, ModuleHom) {
        let (_, incl) = self.radical();
        self.quotient_by_span(&incl.matrix)
    }

    /// Socle: common kernel of all radical elements.
    pub fn socle(&self) -> (FDModule, ModuleHom) {
        let alg = self.algebra().clone();
        let mats: Vec<&Matrix> = alg.radical_indices().into_iter().map(|r| self.act(r)).collect();
        let span = if mats.is_empty() {
            Matrix::identity(self.field(), self.total_dim())
        } else {
            Matrix::vstack(&mats).kernel_basis()
        };
        self.submodule(&span).expect("socle is a submodule")
    }

    /// Projective cover `P -> M`; `P` is a sum of indecomposable projectives whose
    /// vertex list (in order) is returned as well.
    pub fn projective_cover(&self) -> (Vec<usize>, FDModule, ModuleHom) {
        let alg = self.algebra().clone();
        let f = self.field();
        let (_, rad) = self.radical();
        let mut verts = Vec::new();
        let mut gens = Vec::new();
        for v in 0..alg.n_vertices() {
            let piece = rad.matrix.block(self.offset(v), 0, self.dims()[v], rad.matrix.cols());
            let (c, _) = piece.cokernel_projection();
            for p in c.rref().pivots {
                let mut g = vec![f.zero(); self.total_dim()];
                g[self.offset(v) + p] = f.one();
                verts.push(v);
                gens.push(g);
            }
        }
        let (p, map) = self.map_from_projectives(&verts, &gens);
        (verts, p, map)
    }

    /// The map `⊕ P_{v_k} -> M` sending the idempotent generator of the k-th summand
    /// to `gens[k]` (which must lie in `e_{v_k} M`).
    pub fn map_from_projectives(&self, verts: &[usize], gens: &[Vec<Scalar>]) -> (FDModule, ModuleHom) {
        let alg = self.algebra().clone();
        if verts.is_empty() {
            let z = FDModule::zero(&alg);
            let hom = z.zero_hom(self);
            return (z, hom);
        }
        let ps: Vec<FDModule> = verts.iter().map(|&v| FDModule::projective(&alg, v)).collect();
        let sum = direct_sum(&ps);
        let mut mat = Matrix::zeros(self.field(), self.total_dim(), sum.module.total_dim());
        for (k, (&v, g)) in verts.iter().zip(gens).enumerate() {
            let idx = FDModule::projective_basis(&alg, v);
            let mut block = Matrix::zeros(self.field(), self.total_dim(), idx.len());
            for (c, &b) in idx.iter().enumerate() {
                let img = self.act(b).mul_vec(g);
                for (r, x) in img.into_iter().enumerate() {
                    block.set(r, c, x);
                }
            }
            mat = mat.add(&block.mul(&sum.projections[k].matrix));
        }
        let hom = ModuleHom::unchecked(&sum.module, self, mat);
        (sum.module, hom)
    }

    /// Dimension vector of `e_v M` for every `v`, as a string like `(1,1,0)`.
    pub fn dim_string(&self) -> String {
        let parts: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Arrow matrices (quiver algebras only), in arrow order.
    pub fn arrow_matrices(&self) -> Option<Vec<Matrix>> {
        let pres = self.algebra().presentation()?;
        Some((0..pres.quiver.arrows.len()).map(|a| self.act_block(pres.arrow_basis_index(a))).collect())
    }

    /// Same module with the algebra reference swapped for an equal algebra.
    pub fn rebase(&self, alg: &Alg) -> FDModule {
        FDModule::unchecked(alg, self.dims().to_vec(), self.actions().to_vec())
    }
}

/// A module homomorphism, stored as a (target x source) matrix.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: &FDModule, target: &FDModule, matrix: Matrix) -> Result<ModuleHom> {
        if matrix.rows() != target.total_dim() || matrix.cols() != source.total_dim() {
            return Err(Error::DimensionMismatch("homomorphism matrix shape".into()));
        }
        let h = ModuleHom::unchecked(source, target, matrix);
        if !h.is_homomorphism() {
            return Err(Error::InvalidModule("matrix does not intertwine the actions".into()));
        }
        Ok(h)
    }

    pub(crate) fn unchecked(source: &FDModule, target: &FDModule, matrix: Matrix) -> ModuleHom {
        ModuleHom { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn is_homomorphism(&self) -> bool {
        let alg = self.source.algebra().clone();
        (0..alg.dim()).all(|b| self.matrix.mul(self.source.act(b)) == self.target.act(b).mul(&self.matrix))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom::unchecked(&other.source, &self.target, self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom::unchecked(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, s: &Scalar) -> ModuleHom {
        ModuleHom::unchecked(&self.source, &self.target, self.matrix.scale(s))
    }

    pub fn neg(&self) -> ModuleHom {
        ModuleHom::unchecked(&self.source, &self.target, self.matrix.neg())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }
    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn kernel(&self) -> (FDModule, ModuleHom) {
        let k = self.matrix.kernel_basis();
        self.source.submodule(&k).expect("kernel is a submodule")
    }

    pub fn image(&self) -> (FDModule, ModuleHom) {
        self.target.submodule(&self.matrix).expect("image is a submodule")
    }

    pub fn cokernel(&self) -> (FDModule, ModuleHom) {
        self.target.quotient_by_span(&self.matrix)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleHom> {
        let inv = self.matrix.inverse()?;
        Some(ModuleHom::unchecked(&self.target, &self.source, inv))
    }
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FDModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

/// Direct sum of modules over one algebra. Coordinates stay vertex-major: for each
/// vertex, the summands' pieces appear in order.
pub fn direct_sum(parts: &[FDModule]) -> DirectSum {
    assert!(!parts.is_empty(), "direct sum needs at least one summand; use FDModule::zero");
    let alg = parts[0].algebra().clone();
    let f = alg.field();
    let n = alg.n_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims()[v]).sum()).collect();
    let total: usize = dims.iter().sum();
    // position of (part k, local coordinate) in the sum
    let mut place: Vec<Vec<usize>> = parts.iter().map(|m| vec![0; m.total_dim()]).collect();
    let mut pos = 0;
    for v in 0..n {
        for (k, m) in parts.iter().enumerate() {
            for i in 0..m.dims()[v] {
                place[k][m.offset(v) + i] = pos;
                pos += 1;
            }
        }
    }
    let mut action = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        let mut big = Matrix::zeros(f, total, total);
        for (k, m) in parts.iter().enumerate() {
            let a = m.act(b);
            for r in 0..m.total_dim() {
                for c in 0..m.total_dim() {
                    let x = a.get(r, c);
                    if !x.is_zero() {
                        big.set(place[k][r], place[k][c], x.clone());
                    }
                }
            }
        }
        action.push(big);
    }
    let module = FDModule::unchecked(&alg, dims, action);
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for (k, m) in parts.iter().enumerate() {
        let mut inj = Matrix::zeros(f, total, m.total_dim());
        for (i, &p) in place[k].iter().enumerate() {
            inj.set(p, i, f.one());
        }
        projections.push(ModuleHom::unchecked(&module, m, inj.transpose()));
        injections.push(ModuleHom::unchecked(m, &module, inj));
    }
    DirectSum { module, injections, projections }
}

/// `M^k`.
pub fn power(m: &FDModule, k: usize) -> FDModule {
    if k == 0 {
        return FDModule::zero(m.algebra());
    }
    direct_sum(&vec![m.clone(); k]).module
}

/// Basis of `Hom(M, N)`, obtained as the kernel of the intertwining system on the
/// generators of the algebra. Homomorphisms are block-diagonal for the grading.
pub fn hom_space(m: &FDModule, n: &FDModule) -> Vec<ModuleHom> {
    let alg = m.algebra().clone();
    let f = alg.field();
    let nv = alg.n_vertices();
    let (dm, dn) = (m.dims(), n.dims());
    let mut var_off = vec![0; nv + 1];
    for v in 0..nv {
        var_off[v + 1] = var_off[v] + dn[v] * dm[v];
    }
    let nvars = var_off[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| var_off[v] + r * dm[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in alg.generators() {
        if matches!(alg.tag(g), BasisTag::Idempotent(_)) {
            continue;
        }
        let (h, t) = alg.corner(g);
        let mg = m.act_block(g);
        let ng = n.act_block(g);
        // F_h * mg - ng * F_t = 0, entry (r, c) with r < dn[h], c < dm[t]
        for r in 0..dn[h] {
            for c in 0..dm[t] {
                let mut row = vec![f.zero(); nvars];
                for k in 0..dm[h] {
                    let x = mg.get(k, c);
                    if !x.is_zero() {
                        let i = var(h, r, k);
                        row[i] = &row[i] + x;
                    }
                }
                for k in 0..dn[t] {
                    let x = ng.get(r, k);
                    if !x.is_zero() {
                        let i = var(t, k, c);
                        row[i] = &row[i] - x;
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(f, nvars, &rows);
    let ker = sys.kernel_basis();
    (0..ker.cols())
        .map(|k| {
            let mut mat = Matrix::zeros(f, n.total_dim(), m.total_dim());
            for v in 0..nv {
                for r in 0..dn[v] {
                    for c in 0..dm[v] {
                        mat.set(n.offset(v) + r, m.offset(v) + c, ker.get(var(v, r, c), k).clone());
                    }
                }
            }
            ModuleHom::unchecked(m, n, mat)
        })
        .collect()
}

pub fn hom_dim(m: &FDModule, n: &FDModule) -> usize {
    hom_space(m, n).len()
}

/// Linear combination of homomorphisms with the given coefficients.
pub fn combine_homs(homs: &[ModuleHom], coeffs: &[Scalar], source: &FDModule, target: &FDModule) -> ModuleHom {
    let mut mat = Matrix::zeros(source.field(), target.total_dim(), source.total_dim());
    for (h, c) in homs.iter().zip(coeffs) {
        mat.add_scaled(c, &h.matrix);
    }
    ModuleHom::unchecked(source, target, mat)
}
