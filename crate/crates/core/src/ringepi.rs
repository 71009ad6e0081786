//! Ring epimorphisms from presentations: the class where `Hom(ω, -)` is bijective,
//! reflections into it, the ring `End(r(A))^op`, quotient rings and torsion
//! reduction.

use std::sync::Arc;

use crate::algebra::{direct_sum, hom_dim, hom_space, Alg, BasisTag, FDAlgebra, FDModule, ModuleHom};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homalg::{
    complement_indices, ext1_dim, minimal_presentation, partial_tilting_from_set, pd_at_most_one, proj_sum,
    universal_extension, ApproxCaps, ProjMap,
};
use crate::matrix::Matrix;
use crate::morcat::{mor_to_t2, t2_algebra, t2_to_mor, MorObject};
use crate::par::par_map;
use crate::silting::{check_presentation, divisible_membership, gen_membership, is_partial_silting, SiltingCandidate};
use crate::torsion::{is_divisible, torsion_part, SigmaSet};

/// `Hom(ω, X)` is bijective.
pub fn xb_membership(omega: &ProjMap, x: &FDModule) -> bool {
    let h = omega.hom_map(x);
    h.rows() == h.cols() && h.rank() == h.rows()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReflectCaps {
    pub steps: usize,
    pub total_dim: usize,
}

impl Default for ReflectCaps {
    fn default() -> Self {
        ReflectCaps { steps: 64, total_dim: 4096 }
    }
}

/// One step of the reflection: gluing on `maps` copies of the codomain to extend
/// maps along `ω`, or killing the images of `maps` maps vanishing on `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflectStep {
    Glue { maps: usize, dim: usize },
    Kill { maps: usize, dim: usize },
}

impl ReflectStep {
    pub fn dim(&self) -> usize {
        match self {
            ReflectStep::Glue { dim, .. } | ReflectStep::Kill { dim, .. } => *dim,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub module: FDModule,
    pub reflected: FDModule,
    pub unit: ModuleHom,
    pub trace: Vec<ReflectStep>,
}

/// Splits a vector of `⊕_i e_{verts[i]} X` into elements of `X`.
fn embed_segments(x: &FDModule, verts: &[usize], u: &[Scalar]) -> Vec<Vec<Scalar>> {
    let f = x.field();
    let mut out = Vec::with_capacity(verts.len());
    let mut pos = 0;
    for &v in verts {
        let d = x.dims()[v];
        let mut g = vec![f.zero(); x.total_dim()];
        for k in 0..d {
            g[x.offset(v) + k] = u[pos + k].clone();
        }
        pos += d;
        out.push(g);
    }
    out
}

fn unit_vectors(f: Field, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        })
        .collect()
}

/// Reflection of `m` into the class where `Hom(ω, -)` is bijective: kill the images
/// of maps vanishing on `ω`, and once none are left, extend maps along `ω` by pushouts.
pub fn reflect(m: &FDModule, omega: &ProjMap, caps: ReflectCaps) -> Result<ReflectionResult> {
    let f = m.field();
    let mut cur = m.clone();
    let mut unit = m.identity();
    let mut trace: Vec<ReflectStep> = Vec::new();
    let divergent = |trace: &[ReflectStep], dim: usize| Error::Divergent {
        steps: trace.len(),
        dim,
        trace: trace.iter().map(ReflectStep::dim).collect(),
    };
    loop {
        let h = omega.hom_map(&cur);
        let r = h.rank();
        if r == h.rows() && r == h.cols() {
            return Ok(ReflectionResult { module: m.clone(), reflected: cur, unit, trace });
        }
        if trace.len() >= caps.steps {
            return Err(divergent(&trace, cur.total_dim()));
        }
        if r < h.cols() {
            let ker = h.kernel_basis().columns();
            let gens: Vec<Vec<Scalar>> = ker.iter().flat_map(|u| embed_segments(&cur, &omega.codomain, u)).collect();
            let (_, incl) = cur.generated_by(&gens);
            let (next, q) = cur.quotient(&incl)?;
            unit = q.compose(&unit);
            trace.push(ReflectStep::Kill { maps: ker.len(), dim: next.total_dim() });
            cur = next;
        } else {
            let std = unit_vectors(f, h.rows());
            let comp = complement_indices(f, &std, &h.image_basis().columns());
            let mut verts = Vec::new();
            let mut gens = Vec::new();
            for &k in &comp {
                verts.extend_from_slice(&omega.domain);
                gens.extend(embed_segments(&cur, &omega.domain, &std[k]));
            }
            let (pk, ev) = cur.map_from_projectives(&verts, &gens);
            let copies = vec![omega; comp.len()];
            let wk = ProjMap::direct_sum(&copies).to_hom();
            let sum = direct_sum(&[cur.clone(), wk.target.clone()]);
            let glue = sum.injections[0].matrix.mul(&ev.matrix).sub(&sum.injections[1].matrix.mul(&wk.matrix));
            let glue = ModuleHom { source: pk, target: sum.module.clone(), matrix: glue };
            let (next, q) = glue.cokernel();
            unit = q.compose(&sum.injections[0]).compose(&unit);
            trace.push(ReflectStep::Glue { maps: comp.len(), dim: next.total_dim() });
            cur = next;
        }
        if cur.total_dim() > caps.total_dim {
            return Err(divergent(&trace, cur.total_dim()));
        }
    }
}

/// For every listed `X` in the class, precomposition with the unit is a bijection
/// `Hom(r(M), X) -> Hom(M, X)`.
pub fn unit_is_universal(r: &ReflectionResult, omega: &ProjMap, modules: &[FDModule]) -> bool {
    let f = r.module.field();
    modules.iter().filter(|x| xb_membership(omega, x)).all(|x| {
        let homs = hom_space(&r.reflected, x);
        let restricted: Vec<Vec<Scalar>> = homs.iter().map(|h| h.compose(&r.unit).matrix.data().to_vec()).collect();
        let len = r.module.total_dim() * x.total_dim();
        let rank = if restricted.is_empty() { 0 } else { Matrix::from_columns(f, len, &restricted).rank() };
        rank == homs.len() && rank == hom_dim(&r.module, x)
    })
}

/// Algebra basis index of each coordinate of the regular module.
pub fn regular_order(alg: &Alg) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..alg.dim()).collect();
    idx.sort_by_key(|&b| (alg.corner(b).0, alg.corner(b).1, b));
    idx
}

fn left_of_table(f: Field, table: &[Vec<Vec<Scalar>>], x: &[Scalar]) -> Matrix {
    let d = table.len();
    let mut m = Matrix::zeros(f, d, d);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            m.add_scaled(c, &Matrix::from_columns(f, d, &table[i]));
        }
    }
    m
}

fn right_of_table(f: Field, table: &[Vec<Vec<Scalar>>], x: &[Scalar]) -> Matrix {
    let d = table.len();
    let mut m = Matrix::zeros(f, d, d);
    for (j, c) in x.iter().enumerate() {
        if !c.is_zero() {
            let cols: Vec<Vec<Scalar>> = (0..d).map(|i| table[i][j].clone()).collect();
            m.add_scaled(c, &Matrix::from_columns(f, d, &cols));
        }
    }
    m
}

/// An algebra from structure constants and a complete set of orthogonal
/// idempotents, rebased so that every basis element lies in one corner. Returns
/// the algebra and the basis change (columns are new basis vectors in old
/// coordinates).
pub fn algebra_with_idempotents(
    field: Field,
    table: &[Vec<Vec<Scalar>>],
    idempotents: &[Vec<Scalar>],
) -> Result<(FDAlgebra, Matrix)> {
    let d = table.len();
    let n = idempotents.len();
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    let mut labels = Vec::with_capacity(d);
    let mut tags = Vec::with_capacity(d);
    for h in 0..n {
        for t in 0..n {
            let proj = left_of_table(field, table, &idempotents[h]).mul(&right_of_table(field, table, &idempotents[t]));
            let mut chosen: Vec<Vec<Scalar>> = Vec::new();
            if h == t {
                chosen.push(idempotents[h].clone());
                labels.push(format!("e{}", h + 1));
                tags.push(BasisTag::Idempotent(h));
            }
            for c in proj.image_basis().columns() {
                let mut trial = chosen.clone();
                trial.push(c.clone());
                if Matrix::from_columns(field, d, &trial).rank() == trial.len() {
                    chosen.push(c);
                    labels.push(format!("b{}_{}_{}", h + 1, t + 1, chosen.len()));
                    tags.push(BasisTag::Other);
                }
            }
            basis.extend(chosen);
        }
    }
    if basis.len() != d {
        return Err(Error::InvalidAlgebra("idempotents do not decompose the algebra".into()));
    }
    let q = Matrix::from_columns(field, d, &basis);
    let qi = if d == 0 {
        q.clone()
    } else {
        q.inverse().ok_or_else(|| Error::InvalidAlgebra("corner bases overlap".into()))?
    };
    let new_table: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|i| (0..d).map(|j| qi.mul_vec(&left_of_table(field, table, &basis[i]).mul_vec(&basis[j]))).collect())
        .collect();
    Ok((FDAlgebra::from_table(field, labels, tags, &new_table, None)?, q))
}

/// A unital algebra map, stored as a `dim B x dim A` matrix, with the epimorphism
/// and `Tor_1` verdicts.
#[derive(Clone, Debug)]
pub struct RingHom {
    pub source: Alg,
    pub target: Alg,
    pub matrix: Matrix,
    pub epimorphism: bool,
    pub tor1_dim: usize,
    pub tor1_vanishes: bool,
}

impl RingHom {
    pub fn new(source: &Alg, target: &Alg, matrix: Matrix) -> Result<RingHom> {
        let (da, db) = (source.dim(), target.dim());
        if matrix.rows() != db || matrix.cols() != da {
            return Err(Error::DimensionMismatch("ring map matrix".into()));
        }
        if matrix.mul_vec(&source.one()) != target.one() {
            return Err(Error::InvalidInput("ring map is not unital".into()));
        }
        for i in 0..da {
            let fi = matrix.column(i);
            for j in 0..da {
                let lhs = matrix.mul_vec(&source.left_mul(i).column(j));
                if lhs != target.mul(&fi, &matrix.column(j)) {
                    return Err(Error::InvalidInput(format!(
                        "ring map is not multiplicative at ({}, {})",
                        source.label(i),
                        source.label(j)
                    )));
                }
            }
        }
        let mut hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
            epimorphism: false,
            tor1_dim: 0,
            tor1_vanishes: false,
        };
        let acts: Vec<Matrix> = (0..da).map(|a| hom.left_action(a)).collect();
        let (tensor, _) = hom.tensor(db, &acts, false);
        hom.epimorphism = tensor == db;
        let (b, _) = hom.target_module()?;
        hom.tor1_dim = ext1_dim(&b, &hom.right_dual()?);
        hom.tor1_vanishes = hom.tor1_dim == 0;
        Ok(hom)
    }

    pub fn identity(alg: &Alg) -> Result<RingHom> {
        RingHom::new(alg, alg, Matrix::identity(alg.field(), alg.dim()))
    }

    pub fn apply(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(a)
    }

    fn left_action(&self, a: usize) -> Matrix {
        self.target.left_of(&self.matrix.column(a))
    }

    fn right_action(&self, a: usize) -> Matrix {
        self.target.right_of(&self.matrix.column(a))
    }

    /// `B` as a left `A`-module, with the basis change from module coordinates to `B`.
    pub fn target_module(&self) -> Result<(FDModule, Matrix)> {
        let acts = (0..self.source.dim()).map(|a| self.left_action(a)).collect();
        FDModule::from_ungraded(&self.source, self.target.dim(), acts)
    }

    /// `D(B)` for `B` as a right `A`-module; a left `A`-module.
    pub fn right_dual(&self) -> Result<FDModule> {
        let acts = (0..self.source.dim()).map(|a| self.right_action(a).transpose()).collect();
        Ok(FDModule::from_ungraded(&self.source, self.target.dim(), acts)?.0)
    }

    /// `dim B ⊗_A M` for a module of dimension `dm` with the given action of each
    /// basis element, and whether `m -> 1 ⊗ m` is injective (when asked).
    fn tensor(&self, dm: usize, acts: &[Matrix], unit: bool) -> (usize, bool) {
        let f = self.source.field();
        let db = self.target.dim();
        let len = db * dm;
        if len == 0 {
            return (0, dm == 0);
        }
        let mut rels: Vec<Vec<Scalar>> = Vec::new();
        let mut gens: Vec<usize> = self.source.generators().to_vec();
        gens.extend((0..self.source.n_vertices()).map(|v| self.source.idempotent(v)));
        gens.sort_unstable();
        gens.dedup();
        for &a in &gens {
            let r = self.right_action(a);
            for b in 0..db {
                let bfa = r.column(b);
                for m in 0..dm {
                    let am = acts[a].column(m);
                    let mut v = vec![f.zero(); len];
                    for i in 0..db {
                        v[i * dm + m] = &v[i * dm + m] + &bfa[i];
                    }
                    for k in 0..dm {
                        v[b * dm + k] = &v[b * dm + k] - &am[k];
                    }
                    rels.push(v);
                }
            }
        }
        let rank = if rels.is_empty() { 0 } else { Matrix::from_columns(f, len, &rels).rank() };
        let dim = len - rank;
        if !unit {
            return (dim, false);
        }
        let one = self.target.one();
        let mut all = rels;
        for m in 0..dm {
            let mut v = vec![f.zero(); len];
            for i in 0..db {
                v[i * dm + m] = one[i].clone();
            }
            all.push(v);
        }
        let with = Matrix::from_columns(f, len, &all).rank();
        (dim, with - rank == dm)
    }

    /// `dim B ⊗_A X`.
    pub fn tensor_dim(&self, x: &FDModule) -> usize {
        self.tensor(x.total_dim(), x.actions(), false).0
    }

    /// `X` is restricted from a `B`-module: `X -> B ⊗_A X` is an isomorphism.
    pub fn is_b_module(&self, x: &FDModule) -> bool {
        let (dim, inj) = self.tensor(x.total_dim(), x.actions(), true);
        dim == x.total_dim() && inj
    }

    /// Membership of each listed module in the image of restriction.
    pub fn b_module_table(&self, modules: &[FDModule]) -> Vec<bool> {
        par_map(modules, |x| self.is_b_module(x))
    }
}

/// Whether `g: A -> C` factors through the epimorphism `f: A -> B`, decided by
/// `C -> B ⊗_A C` being bijective. `None` when `f` is not an epimorphism.
pub fn factors_through(g: &RingHom, f: &RingHom) -> Option<bool> {
    if !f.epimorphism || g.source != f.source {
        return None;
    }
    let c = g.target_module().ok()?.0;
    Some(f.is_b_module(&c))
}

/// Every universal extension of two listed `B`-modules is again a `B`-module.
pub fn extension_closed(f: &RingHom, modules: &[FDModule]) -> bool {
    let members: Vec<&FDModule> = modules.iter().filter(|x| f.is_b_module(x)).collect();
    let pairs: Vec<(usize, usize)> = (0..members.len()).flat_map(|i| (0..members.len()).map(move |j| (i, j))).collect();
    par_map(&pairs, |&(i, j)| {
        let u = universal_extension(members[j], members[i]);
        u.d == 0 || f.is_b_module(&u.module)
    })
    .into_iter()
    .all(|ok| ok)
}

/// The centre's dimension.
pub fn centre_dim(alg: &FDAlgebra) -> usize {
    let f = alg.field();
    let d = alg.dim();
    if d == 0 {
        return 0;
    }
    let blocks: Vec<Matrix> = (0..d).map(|i| alg.left_mul(i).sub(alg.right_mul(i))).collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let _ = f;
    d - Matrix::vstack(&refs).rank()
}

/// `Some(n)` when the idempotents are matrix-unit diagonals of `M_n(k)`: every
/// corner is one-dimensional and corner products never vanish.
pub fn full_matrix_size(alg: &FDAlgebra) -> Option<usize> {
    let n = alg.n_vertices();
    if alg.dim() != n * n || n == 0 {
        return None;
    }
    let unit = |h: usize, t: usize| -> Option<Vec<Scalar>> {
        let c = alg.corner_basis(h, t);
        (c.len() == 1).then(|| alg.basis_vec(c[0]))
    };
    for h in 0..n {
        for t in 0..n {
            let a = unit(h, t)?;
            for u in 0..n {
                let b = unit(t, u)?;
                if alg.mul(&a, &b).iter().all(Scalar::is_zero) {
                    return None;
                }
            }
        }
    }
    Some(n)
}

/// The ring map `A -> End(r(A))^op` from the reflection of the regular module.
#[derive(Clone, Debug)]
pub struct SiltingEpi {
    pub hom: RingHom,
    pub reflection: ReflectionResult,
    /// Membership by bijectivity of `Hom(ω, X)` on the listed modules.
    pub xb: Vec<bool>,
}

pub fn silting_ring_epi(t1: &FDModule, omega: &ProjMap, caps: ReflectCaps, modules: &[FDModule]) -> Result<SiltingEpi> {
    if !is_partial_silting(t1, omega)? {
        return Err(Error::InvalidInput("module is not partial silting for the presentation".into()));
    }
    ring_epi_of_presentation(omega, caps, modules)
}

/// [`silting_ring_epi`] without the partial silting precondition.
pub fn ring_epi_of_presentation(omega: &ProjMap, caps: ReflectCaps, modules: &[FDModule]) -> Result<SiltingEpi> {
    let alg = omega.algebra();
    let f = alg.field();
    let order = regular_order(alg);
    let reg = FDModule::regular(alg);
    let reflection = reflect(&reg, omega, caps)?;
    let r = &reflection.reflected;
    let ends = hom_space(r, r);
    let len = reg.total_dim() * r.total_dim();
    let restr: Vec<Vec<Scalar>> = ends.iter().map(|p| p.compose(&reflection.unit).matrix.data().to_vec()).collect();
    let rm = Matrix::from_columns(f, len, &restr);
    if rm.rank() != ends.len() {
        return Err(Error::OracleDisagreement("endomorphisms of the reflection are not determined by the unit".into()));
    }
    let coords = |m: &Matrix| -> Result<Vec<Scalar>> {
        if ends.is_empty() {
            return Ok(Vec::new());
        }
        Ok(rm.coordinates(&Matrix::column_vector(f, m.data()))?.column(0))
    };
    let mut fcols = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        let rho = alg.right_mul(b).select_rows(&order).select_columns(&order);
        fcols.push(coords(&reflection.unit.matrix.mul(&rho))?);
    }
    let fmat = Matrix::from_columns(f, ends.len(), &fcols);
    let mut table = Vec::with_capacity(ends.len());
    for i in 0..ends.len() {
        let mut row = Vec::with_capacity(ends.len());
        for j in 0..ends.len() {
            row.push(coords(&ends[j].compose(&ends[i]).compose(&reflection.unit).matrix)?);
        }
        table.push(row);
    }
    let idems: Vec<Vec<Scalar>> = (0..alg.n_vertices())
        .map(|v| fmat.column(alg.idempotent(v)))
        .filter(|e| e.iter().any(|s| !s.is_zero()))
        .collect();
    let (b, q) = algebra_with_idempotents(f, &table, &idems)?;
    let matrix = if ends.is_empty() { fmat } else { q.inverse().expect("basis change").mul(&fmat) };
    let hom = RingHom::new(alg, &Arc::new(b), matrix)?;
    let xb: Vec<bool> = par_map(modules, |x| xb_membership(omega, x));
    if hom.b_module_table(modules) != xb {
        return Err(Error::OracleDisagreement("ring-side membership differs from bijectivity of Hom(ω, -)".into()));
    }
    Ok(SiltingEpi { hom, reflection, xb })
}

/// A quotient `A/I` with the projection and the surviving vertices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Alg,
    pub projection: Matrix,
    /// New index of each old vertex, `None` if its idempotent lies in `I`.
    pub vertices: Vec<Option<usize>>,
    pub ideal: Vec<Vec<Scalar>>,
}

/// Two-sided ideal generated by the given elements.
pub fn two_sided_ideal(alg: &Alg, gens: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let f = alg.field();
    let d = alg.dim();
    let mut cols = Vec::new();
    for g in gens {
        for i in 0..d {
            let left = alg.left_mul(i).mul_vec(g);
            for j in 0..d {
                cols.push(alg.right_mul(j).mul_vec(&left));
            }
        }
    }
    if cols.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(f, d, &cols).image_basis().columns()
}

fn span_dim(f: Field, len: usize, vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        Matrix::from_columns(f, len, vs).rank()
    }
}

fn is_two_sided(alg: &Alg, ideal: &[Vec<Scalar>]) -> bool {
    let f = alg.field();
    let d = alg.dim();
    let base = span_dim(f, d, ideal);
    (0..d).all(|b| {
        let mut with = ideal.to_vec();
        with.extend(ideal.iter().map(|x| alg.right_mul(b).mul_vec(x)));
        with.extend(ideal.iter().map(|x| alg.left_mul(b).mul_vec(x)));
        span_dim(f, d, &with) == base
    })
}

/// `A/I` for a two-sided ideal spanned by `ideal`; the quotient keeps the algebra
/// basis elements completing `I`, with their labels and tags.
pub fn quotient_algebra(alg: &Alg, ideal: &[Vec<Scalar>]) -> Result<Quotient> {
    let f = alg.field();
    let d = alg.dim();
    if !is_two_sided(alg, ideal) {
        return Err(Error::NotTwoSidedIdeal);
    }
    let ideal = if ideal.is_empty() { Vec::new() } else { Matrix::from_columns(f, d, ideal).image_basis().columns() };
    let std = unit_vectors(f, d);
    let kept = complement_indices(f, &std, &ideal);
    let mut cols: Vec<Vec<Scalar>> = kept.iter().map(|&k| std[k].clone()).collect();
    cols.extend(ideal.iter().cloned());
    let full = Matrix::from_columns(f, d, &cols);
    let k = kept.len();
    let project = |x: &[Scalar]| -> Vec<Scalar> {
        let c = full.coordinates(&Matrix::column_vector(f, x)).expect("kept basis and ideal span").column(0);
        c[..k].to_vec()
    };
    let projection = Matrix::from_columns(f, k, &std.iter().map(|x| project(x)).collect::<Vec<_>>());
    let mut vertices = vec![None; alg.n_vertices()];
    let mut next = 0;
    let mut tags = Vec::with_capacity(k);
    for &b in &kept {
        tags.push(match alg.tag(b) {
            BasisTag::Idempotent(v) => {
                vertices[*v] = Some(next);
                next += 1;
                BasisTag::Idempotent(next - 1)
            }
            t => t.clone(),
        });
    }
    let labels = kept.iter().map(|&b| alg.label(b).to_string()).collect();
    let table: Vec<Vec<Vec<Scalar>>> =
        kept.iter().map(|&i| kept.iter().map(|&j| project(&alg.left_mul(i).column(j))).collect()).collect();
    let q = FDAlgebra::from_table(f, labels, tags, &table, None)?;
    Ok(Quotient { algebra: Arc::new(q), projection, vertices, ideal })
}

/// `A -> A/I` with `Tor_1` computed both through the ring map and as `I/I^2`.
#[derive(Clone, Debug)]
pub struct QuotientEpi {
    pub quotient: Quotient,
    pub hom: RingHom,
    pub ideal_dim: usize,
    pub square_dim: usize,
}

impl QuotientEpi {
    pub fn idempotent_ideal(&self) -> bool {
        self.ideal_dim == self.square_dim
    }
}

pub fn quotient_epi(alg: &Alg, ideal_gens: &[Vec<Scalar>]) -> Result<QuotientEpi> {
    let f = alg.field();
    let ideal = two_sided_ideal(alg, ideal_gens);
    let square: Vec<Vec<Scalar>> = ideal.iter().flat_map(|x| ideal.iter().map(|y| alg.mul(x, y))).collect();
    let (ideal_dim, square_dim) = (ideal.len(), span_dim(f, alg.dim(), &square));
    let quotient = quotient_algebra(alg, &ideal)?;
    let hom = RingHom::new(alg, &quotient.algebra, quotient.projection.clone())?;
    if hom.tor1_dim != ideal_dim - square_dim {
        return Err(Error::OracleDisagreement(format!(
            "Tor_1 has dimension {} but I/I^2 has dimension {}",
            hom.tor1_dim,
            ideal_dim - square_dim
        )));
    }
    Ok(QuotientEpi { quotient, hom, ideal_dim, square_dim })
}

/// `A -> A/AeA` for `e` the sum of the idempotents at `verts`; checks that the
/// ideal is idempotent and that the `B`-modules are those with `eX = 0`.
pub fn idempotent_quotient_epi(alg: &Alg, verts: &[usize], modules: &[FDModule]) -> Result<QuotientEpi> {
    let mut e = alg.zero_vec();
    for &v in verts {
        e[alg.idempotent(v)] = alg.field().one();
    }
    let q = quotient_epi(alg, &[e])?;
    if !q.idempotent_ideal() {
        return Err(Error::NotIdempotentIdeal);
    }
    let perp: Vec<bool> = modules.iter().map(|x| verts.iter().all(|&v| x.dims()[v] == 0)).collect();
    if q.hom.b_module_table(modules) != perp {
        return Err(Error::OracleDisagreement("quotient modules differ from the perpendicular class".into()));
    }
    Ok(q)
}

/// `A -> A/J` for the radical spanned by the radical-tagged basis.
pub fn radical_quotient_epi(alg: &Alg) -> Result<QuotientEpi> {
    let gens: Vec<Vec<Scalar>> = alg.radical_indices().into_iter().map(|b| alg.basis_vec(b)).collect();
    quotient_epi(alg, &gens)
}

/// `A_TF = A / t(A)` with the induced maps `Σ_TF`.
#[derive(Clone, Debug)]
pub struct TorsionReduction {
    pub quotient: Quotient,
    pub pi: RingHom,
    pub sigmas: SigmaSet,
}

/// Image of a map between projectives along a quotient.
pub fn push_proj_map(sigma: &ProjMap, q: &Quotient) -> Result<ProjMap> {
    let dom: Vec<usize> = (0..sigma.domain.len()).filter(|&i| q.vertices[sigma.domain[i]].is_some()).collect();
    let cod: Vec<usize> = (0..sigma.codomain.len()).filter(|&j| q.vertices[sigma.codomain[j]].is_some()).collect();
    let entries = cod.iter().map(|&j| dom.iter().map(|&i| q.projection.mul_vec(sigma.entry(j, i))).collect()).collect();
    ProjMap::new(
        &q.algebra,
        dom.iter().map(|&i| q.vertices[sigma.domain[i]].expect("kept")).collect(),
        cod.iter().map(|&j| q.vertices[sigma.codomain[j]].expect("kept")).collect(),
        entries,
    )
}

pub fn torsion_reduce(s: &SigmaSet) -> Result<TorsionReduction> {
    let alg = s.algebra();
    let f = alg.field();
    let order = regular_order(alg);
    let reg = FDModule::regular(alg);
    let tp = torsion_part(s, &reg);
    let ideal: Vec<Vec<Scalar>> = tp
        .inclusion
        .matrix
        .columns()
        .into_iter()
        .map(|c| {
            let mut v = vec![f.zero(); alg.dim()];
            for (k, x) in c.into_iter().enumerate() {
                v[order[k]] = x;
            }
            v
        })
        .collect();
    let quotient = quotient_algebra(alg, &ideal)?;
    let pi = RingHom::new(alg, &quotient.algebra, quotient.projection.clone())?;
    let maps: Vec<ProjMap> = s.maps().iter().map(|m| push_proj_map(m, &quotient)).collect::<Result<_>>()?;
    let reg_tf = FDModule::regular(&quotient.algebra);
    for m in &maps {
        let h = m.hom_map(&reg_tf);
        if h.rank() != h.cols() {
            return Err(Error::OracleDisagreement("a reduced map is not injective on Hom(-, A_TF)".into()));
        }
    }
    let sigmas = SigmaSet::new(&quotient.algebra, maps)?;
    Ok(TorsionReduction { quotient, pi, sigmas })
}

/// The silting module `B ⊕ B/f(A)` attached to a flat epimorphism with `pd B <= 1`.
#[derive(Clone, Debug)]
pub struct FlatEpiSilting {
    pub candidate: SiltingCandidate,
    /// Presentation of `B`.
    pub presentation: ProjMap,
    /// Presentation of `B/f(A)`.
    pub omega: ProjMap,
    pub quotient: FDModule,
    pub divisible_agree: bool,
    pub gen_agree: bool,
    pub xb_agree: bool,
}

impl FlatEpiSilting {
    pub fn verified(&self) -> bool {
        self.divisible_agree && self.gen_agree && self.xb_agree
    }
}

pub fn silting_from_flat_epi(f: &RingHom, inds: &[FDModule], complete: bool) -> Result<FlatEpiSilting> {
    if !f.epimorphism || !f.tor1_vanishes {
        return Err(Error::InvalidInput("ring map must be an epimorphism with vanishing Tor_1".into()));
    }
    let alg = &f.source;
    let field = alg.field();
    let (b, q) = f.target_module()?;
    if !pd_at_most_one(&b) {
        return Err(Error::PdTooLarge);
    }
    let pres = minimal_presentation(&b);
    let p = pres.sigma.clone();
    let one = if b.is_zero() { Vec::new() } else { q.inverse().expect("basis change").mul_vec(&f.target.one()) };
    let quotient = if b.is_zero() {
        b.clone()
    } else {
        let (_, incl) = b.generated_by(std::slice::from_ref(&one));
        b.quotient(&incl)?.0
    };
    let x = if b.is_zero() {
        Vec::new()
    } else {
        pres.cover.matrix.solve(&Matrix::column_vector(field, &one))?.particular.column(0)
    };
    let cod = proj_sum(alg, &p.codomain);
    let n = alg.n_vertices();
    let mut entries: Vec<Vec<Vec<Scalar>>> = p.entries().to_vec();
    for (j, &w) in p.codomain.iter().enumerate() {
        let local = cod.projections[j].matrix.mul_vec(&x);
        let mut y = alg.zero_vec();
        for (k, &bi) in FDModule::projective_basis(alg, w).iter().enumerate() {
            y[bi] = local[k].clone();
        }
        for v in 0..n {
            entries[j].push(alg.mul(&alg.basis_vec(alg.idempotent(v)), &y));
        }
    }
    let mut domain = p.domain.clone();
    domain.extend(0..n);
    let omega = ProjMap::new(alg, domain, p.codomain.clone(), entries)?;
    check_presentation(&quotient, &omega)?;
    let both = ProjMap::direct_sum(&[&p, &omega]);
    let t = if quotient.is_zero() { b.clone() } else { direct_sum(&[b.clone(), quotient.clone()]).module };
    let candidate = SiltingCandidate::evaluate(&t, &both, complete.then_some(inds))?;
    let d_omega = divisible_membership(std::slice::from_ref(&omega), inds);
    let d_both = divisible_membership(std::slice::from_ref(&both), inds);
    let gen = gen_membership(&t, inds);
    let xb = f.b_module_table(inds);
    let expected: Vec<bool> = inds.iter().zip(&d_omega).map(|(x, &d)| d && hom_dim(&quotient, x) == 0).collect();
    Ok(FlatEpiSilting {
        candidate,
        presentation: p,
        divisible_agree: d_both == d_omega,
        gen_agree: gen == d_omega,
        xb_agree: xb == expected,
        omega,
        quotient,
    })
}

/// One module's row in [`AgreementReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementRow {
    /// `Hom(ω, X)` bijective.
    pub xb: bool,
    pub divisible: bool,
    /// `Hom(Coker σ, X) = 0` for every `σ`.
    pub perp0: bool,
    /// For injective maps only: `Ext^1(Coker σ, X) = 0` for every `σ`.
    pub perp1: Option<bool>,
}

impl AgreementRow {
    pub fn agrees(&self) -> bool {
        self.xb == (self.divisible && self.perp0) && self.perp1.is_none_or(|p| p == self.divisible)
    }
}

/// Localisation at `Σ` versus the ring epimorphism of a partial silting module
/// obtained over the triangular ring.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub omega: ProjMap,
    pub module: FDModule,
    pub partial_tilting: Option<bool>,
    pub rows: Vec<AgreementRow>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.partial_tilting != Some(false) && self.rows.iter().all(AgreementRow::agrees)
    }
}

pub fn agreement(s: &SigmaSet, modules: &[FDModule], caps: ApproxCaps) -> Result<AgreementReport> {
    let alg = s.algebra();
    let t2 = t2_algebra(alg)?;
    let gens: Vec<FDModule> =
        s.maps().iter().map(|m| mor_to_t2(&MorObject::from_sigma(m), &t2)).collect::<Result<_>>()?;
    let (t1, _) = partial_tilting_from_set(&t2, &gens, caps)?;
    let omega = t2_to_mor(&t1, alg)?.sigma()?;
    let module = omega.cokernel().0;
    if !is_partial_silting(&module, &omega)? {
        return Err(Error::OracleDisagreement("transferred module is not partial silting".into()));
    }
    let injective = s.maps().iter().all(ProjMap::is_injective);
    let rows = par_map(modules, |x| AgreementRow {
        xb: xb_membership(&omega, x),
        divisible: is_divisible(s, x),
        perp0: s.cokernels().iter().all(|c| hom_dim(c, x) == 0),
        perp1: injective.then(|| s.cokernels().iter().all(|c| ext1_dim(c, x) == 0)),
    });
    let partial_tilting = injective.then(|| pd_at_most_one(&module) && ext1_dim(&module, &module) == 0);
    Ok(AgreementReport { omega, module, partial_tilting, rows })
}
