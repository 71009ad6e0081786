//! Maps between projectives, presentations, `Ext^1`, the AR translate and
//! approximation sequences.

use crate::algebra::{direct_sum, hom_space, is_isomorphic, power, Alg, DirectSum, FDModule, ModuleHom};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// `⊕ P_v` over a list of vertices; an empty list gives the zero module.
pub fn proj_sum(alg: &Alg, verts: &[usize]) -> DirectSum {
    if verts.is_empty() {
        return DirectSum { module: FDModule::zero(alg), injections: Vec::new(), projections: Vec::new() };
    }
    let ps: Vec<FDModule> = verts.iter().map(|&v| FDModule::projective(alg, v)).collect();
    direct_sum(&ps)
}

/// `⊕ I_v` over a list of vertices.
pub fn inj_sum(alg: &Alg, verts: &[usize]) -> DirectSum {
    if verts.is_empty() {
        return DirectSum { module: FDModule::zero(alg), injections: Vec::new(), projections: Vec::new() };
    }
    let is: Vec<FDModule> = verts.iter().map(|&v| FDModule::injective(alg, v)).collect();
    direct_sum(&is)
}

/// A map `⊕_i P_{domain[i]} -> ⊕_j P_{codomain[j]}`. Entry `(j, i)` is an element
/// `a` of `e_{domain[i]} A e_{codomain[j]}` acting by `x -> x a`.
#[derive(Clone, Debug)]
pub struct ProjMap {
    alg: Alg,
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    entries: Vec<Vec<Vec<Scalar>>>,
}

impl PartialEq for ProjMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.entries == other.entries
    }
}

impl ProjMap {
    pub fn new(alg: &Alg, domain: Vec<usize>, codomain: Vec<usize>, entries: Vec<Vec<Vec<Scalar>>>) -> Result<ProjMap> {
        let n = alg.n_vertices();
        if domain.iter().chain(&codomain).any(|&v| v >= n) {
            return Err(Error::InvalidInput("vertex out of range in projective map".into()));
        }
        if entries.len() != codomain.len() || entries.iter().any(|r| r.len() != domain.len()) {
            return Err(Error::DimensionMismatch("projective map entry grid".into()));
        }
        for (j, row) in entries.iter().enumerate() {
            for (i, a) in row.iter().enumerate() {
                if a.len() != alg.dim() {
                    return Err(Error::DimensionMismatch("entry length".into()));
                }
                for (b, x) in a.iter().enumerate() {
                    if !x.is_zero() && alg.corner(b) != (domain[i], codomain[j]) {
                        return Err(Error::InvalidInput(format!(
                            "entry ({}, {}) has a component {} outside e{} A e{}",
                            j + 1,
                            i + 1,
                            alg.label(b),
                            domain[i] + 1,
                            codomain[j] + 1
                        )));
                    }
                }
            }
        }
        Ok(ProjMap { alg: alg.clone(), domain, codomain, entries })
    }

    pub fn zero(alg: &Alg, domain: Vec<usize>, codomain: Vec<usize>) -> ProjMap {
        let entries = vec![vec![alg.zero_vec(); domain.len()]; codomain.len()];
        ProjMap { alg: alg.clone(), domain, codomain, entries }
    }

    pub fn identity(alg: &Alg, verts: Vec<usize>) -> ProjMap {
        let mut m = ProjMap::zero(alg, verts.clone(), verts.clone());
        for (k, &v) in verts.iter().enumerate() {
            m.entries[k][k] = alg.basis_vec(alg.idempotent(v));
        }
        m
    }

    /// The map `x -> x a` from `P_v` to `P_w`.
    pub fn single(alg: &Alg, v: usize, w: usize, a: Vec<Scalar>) -> Result<ProjMap> {
        ProjMap::new(alg, vec![v], vec![w], vec![vec![a]])
    }

    pub fn algebra(&self) -> &Alg {
        &self.alg
    }
    pub fn entry(&self, j: usize, i: usize) -> &[Scalar] {
        &self.entries[j][i]
    }
    pub fn entries(&self) -> &[Vec<Vec<Scalar>>] {
        &self.entries
    }

    pub fn domain_module(&self) -> DirectSum {
        proj_sum(&self.alg, &self.domain)
    }
    pub fn codomain_module(&self) -> DirectSum {
        proj_sum(&self.alg, &self.codomain)
    }

    /// Realisation as a module homomorphism.
    pub fn to_hom(&self) -> ModuleHom {
        let alg = &self.alg;
        let f = alg.field();
        let dom = self.domain_module();
        let cod = self.codomain_module();
        let mut mat = Matrix::zeros(f, cod.module.total_dim(), dom.module.total_dim());
        for (j, &w) in self.codomain.iter().enumerate() {
            let cidx = FDModule::projective_basis(alg, w);
            for (i, &v) in self.domain.iter().enumerate() {
                let a = &self.entries[j][i];
                if a.iter().all(Scalar::is_zero) {
                    continue;
                }
                let didx = FDModule::projective_basis(alg, v);
                let block = alg.right_of(a).select_rows(&cidx).select_columns(&didx);
                let placed = cod.injections[j].matrix.mul(&block).mul(&dom.projections[i].matrix);
                mat = mat.add(&placed);
            }
        }
        ModuleHom { source: dom.module, target: cod.module, matrix: mat }
    }

    /// Reads a homomorphism between sums of projectives (with the given vertex
    /// lists, as produced by [`proj_sum`]) back as a grid of algebra elements.
    pub fn from_module_hom(h: &ModuleHom, domain: Vec<usize>, codomain: Vec<usize>) -> Result<ProjMap> {
        let alg = h.source.algebra().clone();
        let dom = proj_sum(&alg, &domain);
        let cod = proj_sum(&alg, &codomain);
        if dom.module.dims() != h.source.dims() || cod.module.dims() != h.target.dims() {
            return Err(Error::DimensionMismatch("homomorphism does not match the projective lists".into()));
        }
        let mut entries = vec![vec![alg.zero_vec(); domain.len()]; codomain.len()];
        for (i, &v) in domain.iter().enumerate() {
            let didx = FDModule::projective_basis(&alg, v);
            let pos = didx.iter().position(|&b| b == alg.idempotent(v)).expect("idempotent generates");
            let mut gen = vec![alg.field().zero(); didx.len()];
            gen[pos] = alg.field().one();
            let g = dom.injections[i].matrix.mul_vec(&gen);
            let img = h.matrix.mul_vec(&g);
            for (j, &w) in codomain.iter().enumerate() {
                let local = cod.projections[j].matrix.mul_vec(&img);
                let cidx = FDModule::projective_basis(&alg, w);
                for (k, &b) in cidx.iter().enumerate() {
                    entries[j][i][b] = local[k].clone();
                }
            }
        }
        ProjMap::new(&alg, domain, codomain, entries)
    }

    pub fn cokernel(&self) -> (FDModule, ModuleHom) {
        self.to_hom().cokernel()
    }

    pub fn is_injective(&self) -> bool {
        self.to_hom().is_injective()
    }

    /// `Hom(self, X): ⊕_j e_{c_j} X -> ⊕_i e_{d_i} X`.
    pub fn hom_map(&self, x: &FDModule) -> Matrix {
        let f = self.alg.field();
        let dx = x.dims();
        let rows: usize = self.domain.iter().map(|&v| dx[v]).sum();
        let cols: usize = self.codomain.iter().map(|&w| dx[w]).sum();
        let mut mat = Matrix::zeros(f, rows, cols);
        let mut r0 = 0;
        for (i, &v) in self.domain.iter().enumerate() {
            let mut c0 = 0;
            for (j, &w) in self.codomain.iter().enumerate() {
                let a = &self.entries[j][i];
                if a.iter().any(|s| !s.is_zero()) {
                    let act = x.act_element(a);
                    mat.set_block(r0, c0, &act.block(x.offset(v), x.offset(w), dx[v], dx[w]));
                }
                c0 += dx[w];
            }
            r0 += dx[v];
        }
        mat
    }

    /// Block sum of maps.
    pub fn direct_sum(parts: &[&ProjMap]) -> ProjMap {
        let alg = parts[0].alg.clone();
        let domain: Vec<usize> = parts.iter().flat_map(|p| p.domain.clone()).collect();
        let codomain: Vec<usize> = parts.iter().flat_map(|p| p.codomain.clone()).collect();
        let mut m = ProjMap::zero(&alg, domain, codomain);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            for j in 0..p.codomain.len() {
                for i in 0..p.domain.len() {
                    m.entries[r + j][c + i] = p.entries[j][i].clone();
                }
            }
            r += p.codomain.len();
            c += p.domain.len();
        }
        m
    }

    /// The Nakayama functor applied to this map: `⊕ I_{d_i} -> ⊕ I_{c_j}`.
    pub fn nakayama(&self) -> ModuleHom {
        let alg = &self.alg;
        let f = alg.field();
        let dom = inj_sum(alg, &self.domain);
        let cod = inj_sum(alg, &self.codomain);
        let mut mat = Matrix::zeros(f, cod.module.total_dim(), dom.module.total_dim());
        for (j, &w) in self.codomain.iter().enumerate() {
            let cidx = FDModule::injective_basis(alg, w);
            for (i, &v) in self.domain.iter().enumerate() {
                let a = &self.entries[j][i];
                if a.iter().all(Scalar::is_zero) {
                    continue;
                }
                let didx = FDModule::injective_basis(alg, v);
                // Hom(self, A) on the (j, i) entry is y -> a y from e_w A to e_v A; dualise
                let block = alg.left_of(a).select_rows(&didx).select_columns(&cidx).transpose();
                let placed = cod.injections[j].matrix.mul(&block).mul(&dom.projections[i].matrix);
                mat = mat.add(&placed);
            }
        }
        ModuleHom { source: dom.module, target: cod.module, matrix: mat }
    }
}

/// A projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub sigma: ProjMap,
    pub module: FDModule,
    /// `P0 -> M`.
    pub cover: ModuleHom,
    pub minimal: bool,
}

pub fn minimal_presentation(m: &FDModule) -> ProjPresentation {
    let (verts0, _, cover) = m.projective_cover();
    let (_, kincl) = cover.kernel();
    let (verts1, _, kcover) = kincl.source.projective_cover();
    let sigma_hom = kincl.compose(&kcover);
    let sigma = ProjMap::from_module_hom(&sigma_hom, verts1, verts0).expect("covers are sums of projectives");
    ProjPresentation { sigma, module: m.clone(), cover, minimal: true }
}

/// A presentation of `Coker(sigma)`.
pub fn presentation_of(sigma: &ProjMap) -> ProjPresentation {
    let (module, cover) = sigma.cokernel();
    ProjPresentation { sigma: sigma.clone(), module, cover, minimal: false }
}

pub fn pd_at_most_one(m: &FDModule) -> bool {
    minimal_presentation(m).sigma.is_injective()
}

/// `Ext^1(M, N)` with representing cocycles `ΩM -> N`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// `ΩM -> P0`.
    pub syzygy: ModuleHom,
    /// `P0 -> M`.
    pub cover: ModuleHom,
    pub cocycles: Vec<ModuleHom>,
}

/// `Hom(ΩM, N)` modulo restrictions of maps `P0 -> N`.
pub fn ext1(m: &FDModule, n: &FDModule) -> Ext1 {
    let (_, _, cover) = m.projective_cover();
    let (omega, syzygy) = cover.kernel();
    let cocycles = if omega.is_zero() || n.is_zero() {
        Vec::new()
    } else {
        let h = hom_space(&omega, n);
        let restr: Vec<ModuleHom> = hom_space(&cover.source, n).iter().map(|g| g.compose(&syzygy)).collect();
        complement(&h, &restr)
    };
    Ext1 { dim: cocycles.len(), syzygy, cover, cocycles }
}

pub fn ext1_dim(m: &FDModule, n: &FDModule) -> usize {
    ext1(m, n).dim
}

/// Representatives of a basis of `span(basis) / span(sub)`, chosen canonically.
pub(crate) fn complement(basis: &[ModuleHom], sub: &[ModuleHom]) -> Vec<ModuleHom> {
    if basis.is_empty() {
        return Vec::new();
    }
    let f = basis[0].matrix.field();
    let flat = |hs: &[ModuleHom]| hs.iter().map(|h| h.matrix.data().to_vec()).collect::<Vec<_>>();
    complement_indices(f, &flat(basis), &flat(sub)).into_iter().map(|c| basis[c].clone()).collect()
}

/// Indices of the basis vectors completing `sub` to a basis of `span(basis)`.
/// `basis` must be linearly independent and contain `sub` in its span.
pub(crate) fn complement_indices(f: Field, basis: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> Vec<usize> {
    if basis.is_empty() {
        return Vec::new();
    }
    let len = basis[0].len();
    let hm = Matrix::from_columns(f, len, basis);
    let coords: Vec<Vec<Scalar>> = sub
        .iter()
        .map(|s| hm.coordinates(&Matrix::column_vector(f, s)).expect("subspace lies in the span").column(0))
        .collect();
    let k = basis.len();
    let pivots = if coords.is_empty() { Vec::new() } else { Matrix::from_rows(f, k, &coords).rref().pivots };
    (0..k).filter(|c| !pivots.contains(c)).collect()
}

pub fn is_projective(m: &FDModule) -> bool {
    let (_, p, _) = m.projective_cover();
    p.total_dim() == m.total_dim()
}

/// Maps `h_i` generating `Hom(X, T)` as a left `End(T)`-module (`left = true`) or
/// `Hom(T, X)` as a right `End(T)`-module, chosen greedily from the canonical basis.
pub fn approximation_generators(x: &FDModule, t: &FDModule, left: bool) -> Vec<ModuleHom> {
    let f = x.field();
    let end = hom_space(t, t);
    let homs = if left { hom_space(x, t) } else { hom_space(t, x) };
    let mut chosen = Vec::new();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    let mut rank = 0;
    for h in homs {
        let v = h.matrix.data().to_vec();
        let len = v.len();
        let mut trial = span.clone();
        trial.push(v);
        if Matrix::from_columns(f, len, &trial).rank() == rank {
            continue;
        }
        for e in &end {
            let p = if left { e.compose(&h) } else { h.compose(e) };
            span.push(p.matrix.data().to_vec());
        }
        span.push(h.matrix.data().to_vec());
        let m = Matrix::from_columns(f, len, &span);
        span = m.image_basis().columns();
        rank = span.len();
        chosen.push(h);
    }
    chosen
}

/// `c` with `e - c` nilpotent, when `End` is split local.
fn residue(e: &ModuleHom) -> Option<Scalar> {
    let f = e.source.field();
    let d = e.source.total_dim();
    let id = e.source.identity();
    let works = |c: &Scalar| e.add(&id.scale(&-c)).matrix.is_nilpotent();
    let tr = (0..d).fold(f.zero(), |acc, i| &acc + e.matrix.get(i, i));
    let by_trace = match f {
        Field::Rationals => true,
        Field::Prime(p) => !(d as u64).is_multiple_of(p as u64),
    };
    if by_trace {
        let c = &tr * &f.from_i64(d as i64).inv();
        return works(&c).then_some(c);
    }
    match f {
        Field::Prime(p) if p <= 257 => (0..p as i64).map(|x| f.from_i64(x)).find(works),
        _ => None,
    }
}

/// Radical of a split local endomorphism ring.
fn local_radical(t: &FDModule) -> Option<Vec<ModuleHom>> {
    let id = t.identity();
    hom_space(t, t).iter().map(|e| residue(e).map(|c| e.add(&id.scale(&-c)))).collect()
}

/// Minimal left `add T`-approximation `x -> ⊕ T_i^{m_i}` for pairwise non-isomorphic
/// indecomposables `T_i` with split local endomorphism rings; `None` otherwise.
pub fn minimal_left_approximation(x: &FDModule, summands: &[FDModule]) -> Option<(FDModule, ModuleHom)> {
    let f = x.field();
    let rads: Vec<Vec<ModuleHom>> = summands.iter().map(local_radical).collect::<Option<_>>()?;
    let from_x: Vec<Vec<ModuleHom>> = summands.iter().map(|t| hom_space(x, t)).collect();
    let mut gens: Vec<(usize, ModuleHom)> = Vec::new();
    for (i, ti) in summands.iter().enumerate() {
        if from_x[i].is_empty() {
            continue;
        }
        let mut sub = Vec::new();
        for (j, tj) in summands.iter().enumerate() {
            let rad = if i == j { rads[i].clone() } else { hom_space(tj, ti) };
            for r in &rad {
                for h in &from_x[j] {
                    sub.push(r.compose(h).matrix.data().to_vec());
                }
            }
        }
        let basis: Vec<Vec<Scalar>> = from_x[i].iter().map(|h| h.matrix.data().to_vec()).collect();
        let len = basis[0].len();
        let sub = if sub.is_empty() { sub } else { Matrix::from_columns(f, len, &sub).image_basis().columns() };
        for k in complement_indices(f, &basis, &sub) {
            gens.push((i, from_x[i][k].clone()));
        }
    }
    if gens.is_empty() {
        let zero = FDModule::zero(x.algebra());
        let map = x.zero_hom(&zero);
        return Some((zero, map));
    }
    let sum = direct_sum(&gens.iter().map(|(i, _)| summands[*i].clone()).collect::<Vec<_>>());
    let mut map = x.zero_hom(&sum.module);
    for (k, (_, h)) in gens.iter().enumerate() {
        map = map.add(&sum.injections[k].compose(h));
    }
    Some((sum.module, map))
}

/// `C` is a summand of some `T^n`: the right `add T`-approximation of `C` splits.
pub fn in_add(t: &FDModule, c: &FDModule) -> bool {
    if c.is_zero() {
        return true;
    }
    let f = c.field();
    let into = approximation_generators(c, t, false);
    let back = hom_space(c, t);
    let cols: Vec<Vec<Scalar>> =
        into.iter().flat_map(|h| back.iter().map(move |g| h.compose(g).matrix.data().to_vec())).collect();
    if cols.is_empty() {
        return false;
    }
    let id = c.identity().matrix.data().to_vec();
    Matrix::from_columns(f, id.len(), &cols).solve(&Matrix::column_vector(f, &id)).is_ok()
}

/// `Hom(sigma, X)` is surjective.
pub fn is_divisible_by(sigma: &ProjMap, x: &FDModule) -> bool {
    let m = sigma.hom_map(x);
    m.rank() == m.rows()
}

/// `Ext^1` from an arbitrary presentation: cocycles `P1 -> N` vanishing on the
/// kernel of `sigma`, modulo those factoring through `sigma`.
pub fn ext1_from_presentation(sigma: &ProjMap, n: &FDModule) -> usize {
    let alg = sigma.algebra().clone();
    let f = alg.field();
    let h = sigma.to_hom();
    let dom = sigma.domain_module();
    let ker = h.matrix.kernel_basis();
    let dn = n.dims();
    let nvars: usize = sigma.domain.iter().map(|&v| dn[v]).sum();
    if nvars == 0 {
        return 0;
    }
    // value of the cocycle with coordinates x on a vector y of P1
    let eval = |y: &[Scalar]| -> Matrix {
        let mut m = Matrix::zeros(f, n.total_dim(), nvars);
        let mut c0 = 0;
        for (i, &v) in sigma.domain.iter().enumerate() {
            let local = dom.projections[i].matrix.mul_vec(y);
            let idx = FDModule::projective_basis(&alg, v);
            let mut elem = alg.zero_vec();
            for (k, &b) in idx.iter().enumerate() {
                elem[b] = local[k].clone();
            }
            let act = n.act_element(&elem);
            m.set_block(0, c0, &act.block(0, n.offset(v), n.total_dim(), dn[v]));
            c0 += dn[v];
        }
        m
    };
    let conds: Vec<Matrix> = (0..ker.cols()).map(|c| eval(&ker.column(c))).collect();
    let z = if conds.is_empty() {
        nvars
    } else {
        let refs: Vec<&Matrix> = conds.iter().collect();
        Matrix::vstack(&refs).kernel_basis().cols()
    };
    z - sigma.hom_map(n).rank()
}

/// `τM` as the kernel of the Nakayama functor on a minimal presentation.
pub fn ar_translate(m: &FDModule) -> FDModule {
    let p = minimal_presentation(m);
    p.sigma.nakayama().kernel().0
}

/// An injective embedding `N -> ⊕_v I_v^{dim e_v N}`.
pub fn injective_embedding(n: &FDModule) -> ModuleHom {
    let alg = n.algebra().clone();
    let f = alg.field();
    let mut verts = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..alg.n_vertices() {
        for k in 0..n.dims()[v] {
            verts.push(v);
            // coordinate at basis b of e_v A: the k-th coordinate of b n
            let mut block = Vec::new();
            for b in FDModule::injective_basis(&alg, v) {
                block.push(n.act(b).row(n.offset(v) + k));
            }
            rows.push(block.into_iter().flatten().collect());
        }
    }
    let sum = inj_sum(&alg, &verts);
    let mut mat = Matrix::zeros(f, sum.module.total_dim(), n.total_dim());
    for (s, &v) in verts.iter().enumerate() {
        let len = FDModule::injective_basis(&alg, v).len();
        let block = Matrix::from_data(f, len, n.total_dim(), rows[s].clone());
        mat = mat.add(&sum.injections[s].matrix.mul(&block));
    }
    ModuleHom { source: n.clone(), target: sum.module, matrix: mat }
}

/// Dimension of `Hom(N, Y)` modulo maps factoring through an injective.
pub fn inj_stable_hom_dim(n: &FDModule, y: &FDModule) -> usize {
    let homs = hom_space(n, y);
    if homs.is_empty() {
        return 0;
    }
    let emb = injective_embedding(n);
    let through: Vec<ModuleHom> = hom_space(&emb.target, y).iter().map(|g| g.compose(&emb)).collect();
    complement(&homs, &through).len()
}

/// The universal extension `0 -> X -> E -> S^d -> 0`, `d = dim Ext^1(S, X)`.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub module: FDModule,
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
    pub d: usize,
}

pub fn universal_extension(x: &FDModule, s: &FDModule) -> UniversalExtension {
    let e = ext1(s, x);
    let d = e.dim;
    let omega = e.syzygy.source.clone();
    let p0 = e.cover.source.clone();
    let alg = x.algebra().clone();
    let f = alg.field();
    let omegas = power(&omega, d);
    let p0s = power(&p0, d);
    let target = direct_sum(&[x.clone(), p0s.clone()]);
    let mut mat = Matrix::zeros(f, target.module.total_dim(), omegas.total_dim());
    if d > 0 {
        let osum = direct_sum(&vec![omega.clone(); d]);
        let psum = direct_sum(&vec![p0.clone(); d]);
        for i in 0..d {
            let fi = e.cocycles[i].compose(&osum.projections[i]);
            let ii = psum.injections[i].compose(&e.syzygy).compose(&osum.projections[i]);
            mat = mat.add(&target.injections[0].matrix.mul(&fi.matrix));
            mat = mat.sub(&target.injections[1].matrix.mul(&ii.matrix));
        }
    }
    let glue = ModuleHom { source: omegas, target: target.module.clone(), matrix: mat };
    let (ext, q) = glue.cokernel();
    let inclusion = q.compose(&target.injections[0]);
    // E -> S^d: [(x, p)] -> cover(p), computed through the section-free description
    let sd = power(s, d);
    let mut cover_d = Matrix::zeros(f, sd.total_dim(), p0s.total_dim());
    if d > 0 {
        let ssum = direct_sum(&vec![s.clone(); d]);
        let psum = direct_sum(&vec![p0.clone(); d]);
        for i in 0..d {
            let c = ssum.injections[i].compose(&e.cover).compose(&psum.projections[i]);
            cover_d = cover_d.add(&c.matrix);
        }
    }
    let from_sum = cover_d.mul(&target.projections[1].matrix);
    // descend along the quotient map q: solve proj * q = from_sum
    let proj = q
        .matrix
        .transpose()
        .solve(&from_sum.transpose())
        .expect("map vanishes on the glued submodule")
        .particular
        .transpose();
    let projection = ModuleHom { source: ext.clone(), target: sd, matrix: proj };
    UniversalExtension { module: ext, inclusion, projection, d }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxCaps {
    pub iterations: usize,
    pub total_dim: usize,
}

impl Default for ApproxCaps {
    fn default() -> Self {
        ApproxCaps { iterations: 32, total_dim: 10_000 }
    }
}

/// `0 -> S -> ∇_S -> ∇_S/S -> 0` with `∇_S` in the right `Ext^1`-orthogonal of the
/// generators and `∇_S/S` filtered by generators.
#[derive(Clone, Debug)]
pub struct ApproxSequence {
    pub s: FDModule,
    pub middle: FDModule,
    pub inclusion: ModuleHom,
    pub quotient: FDModule,
    pub projection: ModuleHom,
    /// `(generator index, multiplicity)` per extension step, in order.
    pub certificate: Vec<(usize, usize)>,
}

pub fn approx_sequence(generators: &[FDModule], s: &FDModule, caps: ApproxCaps) -> Result<ApproxSequence> {
    if generators.iter().any(|g| !pd_at_most_one(g)) {
        return Err(Error::PdTooLarge);
    }
    let mut current = s.clone();
    let mut incl = s.identity();
    let mut certificate = Vec::new();
    let mut trace = vec![current.total_dim()];
    loop {
        let mut changed = false;
        for (gi, g) in generators.iter().enumerate() {
            let u = universal_extension(&current, g);
            if u.d == 0 {
                continue;
            }
            let (q, _) = u.inclusion.cokernel();
            if is_isomorphic(&q, &power(g, u.d))?.is_none() {
                return Err(Error::OracleDisagreement("extension quotient is not a generator power".into()));
            }
            certificate.push((gi, u.d));
            incl = u.inclusion.compose(&incl);
            current = u.module;
            trace.push(current.total_dim());
            changed = true;
            if certificate.len() >= caps.iterations || current.total_dim() > caps.total_dim {
                return Err(Error::Diverged { steps: certificate.len(), dim: current.total_dim(), trace });
            }
        }
        if !changed {
            break;
        }
    }
    let (quotient, projection) = incl.cokernel();
    Ok(ApproxSequence { s: s.clone(), middle: current, inclusion: incl, quotient, projection, certificate })
}

/// `T_1 = ⊕_S ∇_S` over the generators.
pub fn partial_tilting_from_set(
    alg: &Alg,
    generators: &[FDModule],
    caps: ApproxCaps,
) -> Result<(FDModule, Vec<ApproxSequence>)> {
    let mut seqs = Vec::with_capacity(generators.len());
    for g in generators {
        seqs.push(approx_sequence(generators, g, caps)?);
    }
    if seqs.is_empty() {
        return Ok((FDModule::zero(alg), seqs));
    }
    let middles: Vec<FDModule> = seqs.iter().map(|s| s.middle.clone()).collect();
    Ok((direct_sum(&middles).module, seqs))
}

/// `X ∈ S^{⊥1}` for every member of the set.
pub fn in_perp1(set: &[FDModule], x: &FDModule) -> bool {
    set.iter().all(|s| ext1_dim(s, x) == 0)
}

/// `X ∈ S^{⊥0}`.
pub fn in_perp0(set: &[FDModule], x: &FDModule) -> bool {
    set.iter().all(|s| hom_space(s, x).is_empty())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{algebra_from_quiver, Arrow, Quiver};
    use crate::field::Field;

    fn a2() -> Alg {
        Arc::new(algebra_from_quiver(&Quiver::linear(2), &[], Field::Prime(5), 8).unwrap())
    }

    fn dual_numbers() -> Alg {
        let f = Field::Prime(5);
        let q = Quiver::new(1, vec![Arrow { name: "x".into(), source: 0, target: 0 }]).unwrap();
        let xx = q.parse_path("x.x").unwrap();
        Arc::new(algebra_from_quiver(&q, &[vec![(f.one(), xx)]], f, 8).unwrap())
    }

    #[test]
    fn presentations() {
        let a = a2();
        let p1 = FDModule::projective(&a, 0);
        let pr = minimal_presentation(&p1);
        assert!(pr.sigma.domain.is_empty());
        assert_eq!(pr.sigma.codomain, vec![0]);
        let s1 = FDModule::simple(&a, 0);
        let pr = minimal_presentation(&s1);
        assert_eq!((pr.sigma.domain.clone(), pr.sigma.codomain.clone()), (vec![1], vec![0]));
        assert!(pr.sigma.is_injective());
        let d = dual_numbers();
        let k = FDModule::simple(&d, 0);
        let pr = minimal_presentation(&k);
        assert_eq!((pr.sigma.domain.len(), pr.sigma.codomain.len()), (1, 1));
        assert!(!pr.sigma.is_injective());
        assert!(!pd_at_most_one(&k));
        assert!(pd_at_most_one(&s1));
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let s1 = FDModule::simple(&a, 0);
        let s2 = FDModule::simple(&a, 1);
        let p1 = FDModule::projective(&a, 0);
        assert_eq!(ext1_dim(&s1, &s2), 1);
        assert_eq!(ext1_dim(&s1, &s1), 0);
        assert_eq!(ext1_dim(&p1, &s2), 0);
        // non-minimal presentation: add an identity summand
        let sig = minimal_presentation(&s1).sigma;
        let bigger = ProjMap::direct_sum(&[&sig, &ProjMap::identity(&a, vec![0])]);
        assert_eq!(ext1_from_presentation(&bigger, &s2), 1);
    }

    #[test]
    fn translates() {
        let a = a2();
        let s1 = FDModule::simple(&a, 0);
        let t = ar_translate(&s1);
        assert_eq!(t.dims(), &[0, 1]);
        assert!(ar_translate(&FDModule::projective(&a, 0)).is_zero());
    }

    #[test]
    fn universal_extension_of_simples() {
        let a = a2();
        let s1 = FDModule::simple(&a, 0);
        let s2 = FDModule::simple(&a, 1);
        let u = universal_extension(&s2, &s1);
        assert_eq!(u.d, 1);
        assert!(is_isomorphic(&u.module, &FDModule::projective(&a, 0)).unwrap().is_some());
        assert!(u.inclusion.is_homomorphism() && u.projection.is_homomorphism());
        assert!(u.projection.compose(&u.inclusion).is_zero());
        assert!(u.projection.is_surjective());
        let triv = universal_extension(&s1, &s1);
        assert_eq!(triv.d, 0);
        assert_eq!(triv.module.dims(), s1.dims());
    }
}
