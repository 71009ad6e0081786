//! The morphism category: objects are module maps `g: M -> N`, morphisms are
//! commutative squares. Realised as modules over the lower triangular matrix ring
//! `T2(A)`, and used to compute `Ext^1` between two-term complexes.

use std::sync::Arc;

use crate::algebra::{direct_sum, hom_space, Alg, BasisTag, FDAlgebra, FDModule, ModuleHom};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homalg::{complement_indices, ext1_dim, is_divisible_by, is_projective, ProjMap};
use crate::matrix::Matrix;

/// An object `Z_g` of the morphism category.
#[derive(Clone, Debug)]
pub struct MorObject {
    pub g: ModuleHom,
    ends_projective: (bool, bool),
}

impl MorObject {
    pub fn new(g: ModuleHom) -> MorObject {
        let ends_projective = (is_projective(&g.source), is_projective(&g.target));
        MorObject { g, ends_projective }
    }

    pub fn from_sigma(sigma: &ProjMap) -> MorObject {
        MorObject { g: sigma.to_hom(), ends_projective: (true, true) }
    }

    /// `Z_{(0 -> X)}`.
    pub fn zero_to(x: &FDModule) -> MorObject {
        MorObject::new(x.zero_from())
    }

    /// `Z_{id_X}`.
    pub fn identity(x: &FDModule) -> MorObject {
        let p = is_projective(x);
        MorObject { g: x.identity(), ends_projective: (p, p) }
    }

    pub fn source(&self) -> &FDModule {
        &self.g.source
    }
    pub fn target(&self) -> &FDModule {
        &self.g.target
    }
    pub fn algebra(&self) -> &Alg {
        self.g.source.algebra()
    }
    pub fn total_dim(&self) -> usize {
        self.source().total_dim() + self.target().total_dim()
    }

    /// Both ends finitely generated projective. For finite-dimensional modules
    /// this is the same as `in_bl`.
    pub fn in_l(&self) -> bool {
        self.in_bl()
    }

    pub fn in_bl(&self) -> bool {
        self.ends_projective.0 && self.ends_projective.1
    }

    pub fn cokernel(&self) -> FDModule {
        self.g.cokernel().0
    }

    /// The map as a grid of algebra elements between indecomposable projectives.
    pub fn sigma(&self) -> Result<ProjMap> {
        if !self.in_bl() {
            return Err(Error::NotInBL);
        }
        let (vp, _, cp) = self.source().projective_cover();
        let (vq, _, cq) = self.target().projective_cover();
        let cq_inv = cq.inverse().ok_or(Error::NotInBL)?;
        let h = cq_inv.compose(&self.g).compose(&cp);
        ProjMap::from_module_hom(&h, vp, vq)
    }

    pub fn direct_sum(parts: &[MorObject]) -> MorObject {
        let ms: Vec<FDModule> = parts.iter().map(|z| z.source().clone()).collect();
        let ns: Vec<FDModule> = parts.iter().map(|z| z.target().clone()).collect();
        let (sm, sn) = (direct_sum(&ms), direct_sum(&ns));
        let mut mat = Matrix::zeros(sm.module.field(), sn.module.total_dim(), sm.module.total_dim());
        for (k, z) in parts.iter().enumerate() {
            mat = mat.add(&sn.injections[k].matrix.mul(&z.g.matrix).mul(&sm.projections[k].matrix));
        }
        let proj =
            parts.iter().fold((true, true), |acc, z| (acc.0 && z.ends_projective.0, acc.1 && z.ends_projective.1));
        MorObject { g: ModuleHom::unchecked(&sm.module, &sn.module, mat), ends_projective: proj }
    }
}

/// A commutative square from `source` to `target`.
#[derive(Clone, Debug)]
pub struct MorMorphism {
    pub source: MorObject,
    pub target: MorObject,
    /// `M -> M'`.
    pub top: ModuleHom,
    /// `N -> N'`.
    pub bottom: ModuleHom,
}

impl MorMorphism {
    pub fn new(source: &MorObject, target: &MorObject, top: ModuleHom, bottom: ModuleHom) -> Result<MorMorphism> {
        let m = MorMorphism { source: source.clone(), target: target.clone(), top, bottom };
        if !m.top.is_homomorphism() || !m.bottom.is_homomorphism() {
            return Err(Error::InvalidModule("square components are not homomorphisms".into()));
        }
        if !m.commutes() {
            return Err(Error::InvalidModule("square does not commute".into()));
        }
        Ok(m)
    }

    pub fn commutes(&self) -> bool {
        self.target.g.compose(&self.top).matrix == self.bottom.compose(&self.source.g).matrix
    }

    pub fn identity(z: &MorObject) -> MorMorphism {
        MorMorphism { source: z.clone(), target: z.clone(), top: z.source().identity(), bottom: z.target().identity() }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MorMorphism) -> MorMorphism {
        MorMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            top: self.top.compose(&other.top),
            bottom: self.bottom.compose(&other.bottom),
        }
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        let mut v = self.top.matrix.data().to_vec();
        v.extend_from_slice(self.bottom.matrix.data());
        v
    }
}

fn combine(parts: &[ModuleHom], coeffs: &[Scalar], s: &FDModule, t: &FDModule) -> ModuleHom {
    let mut mat = Matrix::zeros(s.field(), t.total_dim(), s.total_dim());
    for (h, c) in parts.iter().zip(coeffs) {
        mat.add_scaled(c, &h.matrix);
    }
    ModuleHom::unchecked(s, t, mat)
}

/// Basis of the commutative squares `Z_g -> Z_h`.
pub fn mor_hom(a: &MorObject, b: &MorObject) -> Vec<MorMorphism> {
    let f = a.algebra().field();
    let alphas = hom_space(a.source(), b.source());
    let betas = hom_space(a.target(), b.target());
    let nvars = alphas.len() + betas.len();
    if nvars == 0 {
        return Vec::new();
    }
    let len = b.target().total_dim() * a.source().total_dim();
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(nvars);
    for al in &alphas {
        cols.push(b.g.compose(al).matrix.data().to_vec());
    }
    for be in &betas {
        cols.push(be.compose(&a.g).matrix.neg().data().to_vec());
    }
    let ker = if len == 0 { Matrix::identity(f, nvars) } else { Matrix::from_columns(f, len, &cols).kernel_basis() };
    (0..ker.cols())
        .map(|k| {
            let c = ker.column(k);
            let top = combine(&alphas, &c[..alphas.len()], a.source(), b.source());
            let bottom = combine(&betas, &c[alphas.len()..], a.target(), b.target());
            MorMorphism { source: a.clone(), target: b.clone(), top, bottom }
        })
        .collect()
}

pub fn mor_hom_dim(a: &MorObject, b: &MorObject) -> usize {
    mor_hom(a, b).len()
}

/// `0 -> P1 -> P0 -> Z_sigma -> 0` with `P1 = Z_{(0 -> P)}` and `P0 = Z_{(P -> Q ⊕ P)}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub p1: MorObject,
    pub p0: MorObject,
    pub inclusion: MorMorphism,
    pub cover: MorMorphism,
}

pub fn std_resolution(z: &MorObject) -> Result<Resolution> {
    if !z.in_bl() {
        return Err(Error::NotInBL);
    }
    let (p, q) = (z.source(), z.target());
    let qp = direct_sum(&[q.clone(), p.clone()]);
    let (inj_q, inj_p) = (&qp.injections[0], &qp.injections[1]);
    let (pr_q, pr_p) = (&qp.projections[0], &qp.projections[1]);
    let p1 = MorObject { g: p.zero_from(), ends_projective: (true, true) };
    let p0 = MorObject { g: inj_p.clone(), ends_projective: (true, true) };
    let incl_bottom = inj_p.add(&inj_q.compose(&z.g).neg());
    let inclusion = MorMorphism { source: p1.clone(), target: p0.clone(), top: p.zero_from(), bottom: incl_bottom };
    let cover_bottom = pr_q.add(&z.g.compose(pr_p));
    let cover = MorMorphism { source: p0.clone(), target: z.clone(), top: p.identity(), bottom: cover_bottom };
    Ok(Resolution { p1, p0, inclusion, cover })
}

/// `Ext^1(Z_sigma, Z_g)` as a quotient of `Hom(P, N)`: representatives of a
/// basis of the quotient, and a frame for reducing arbitrary maps.
#[derive(Clone, Debug)]
pub struct MorExt {
    pub dim: usize,
    pub classes: Vec<ChainMapClass>,
    frame: Option<Matrix>,
}

/// A map `h: P -> N` standing for the chain map class it represents.
#[derive(Clone, Debug)]
pub struct ChainMapClass {
    pub sigma: MorObject,
    pub g: MorObject,
    pub representative: ModuleHom,
}

impl MorExt {
    fn build(sigma: &MorObject, g: &MorObject, ambient: Vec<ModuleHom>, sub: Vec<Vec<Scalar>>) -> MorExt {
        let f = sigma.algebra().field();
        let flat: Vec<Vec<Scalar>> = ambient.iter().map(|h| h.matrix.data().to_vec()).collect();
        let keep = complement_indices(f, &flat, &sub);
        let classes: Vec<ChainMapClass> = keep
            .iter()
            .map(|&i| ChainMapClass { sigma: sigma.clone(), g: g.clone(), representative: ambient[i].clone() })
            .collect();
        let frame = if flat.is_empty() {
            None
        } else {
            let len = flat[0].len();
            let sub_basis =
                if sub.is_empty() { Vec::new() } else { Matrix::from_columns(f, len, &sub).image_basis().columns() };
            let mut cols: Vec<Vec<Scalar>> = keep.iter().map(|&i| flat[i].clone()).collect();
            cols.extend(sub_basis);
            Some(Matrix::from_columns(f, len, &cols))
        };
        MorExt { dim: classes.len(), classes, frame }
    }

    /// Coordinates of the class of `h: P -> N` in the basis `classes`.
    pub fn reduce(&self, h: &ModuleHom) -> Result<Vec<Scalar>> {
        let Some(frame) = &self.frame else {
            return Ok(Vec::new());
        };
        let f = frame.field();
        let c = frame.coordinates(&Matrix::column_vector(f, h.matrix.data()))?;
        Ok(c.column(0)[..self.dim].to_vec())
    }

    pub fn is_zero_class(&self, h: &ModuleHom) -> Result<bool> {
        Ok(self.reduce(h)?.iter().all(Scalar::is_zero))
    }
}

/// Cokernel of `Hom(P0(Z_sigma), Z_g) -> Hom(P1(Z_sigma), Z_g)`.
pub fn mor_ext1_resolution(sigma: &MorObject, g: &MorObject) -> Result<MorExt> {
    let res = std_resolution(sigma)?;
    let h1 = mor_hom(&res.p1, g);
    let restr: Vec<Vec<Scalar>> =
        mor_hom(&res.p0, g).iter().map(|h| h.compose(&res.inclusion).bottom.matrix.data().to_vec()).collect();
    let ambient: Vec<ModuleHom> = h1.into_iter().map(|h| h.bottom).collect();
    Ok(MorExt::build(sigma, g, ambient, restr))
}

/// `Hom(P, N)` modulo `{g u - v sigma}`.
pub fn mor_ext1_homotopy(sigma: &MorObject, g: &MorObject) -> Result<MorExt> {
    if !sigma.in_bl() {
        return Err(Error::NotInBL);
    }
    let (p, q) = (sigma.source(), sigma.target());
    let (m, n) = (g.source(), g.target());
    let mut sub: Vec<Vec<Scalar>> = hom_space(p, m).iter().map(|u| g.g.compose(u).matrix.data().to_vec()).collect();
    sub.extend(hom_space(q, n).iter().map(|v| v.compose(&sigma.g).matrix.data().to_vec()));
    Ok(MorExt::build(sigma, g, hom_space(p, n), sub))
}

/// Whether `h = g u - v sigma` for some `u`, `v`.
pub fn is_null_homotopic(class: &ChainMapClass) -> Result<bool> {
    mor_ext1_homotopy(&class.sigma, &class.g)?.is_zero_class(&class.representative)
}

/// `0 -> Z_g -> Z_e -> Z_sigma -> 0` with `e = [[g, h], [0, sigma]]`.
#[derive(Clone, Debug)]
pub struct ConeExtension {
    pub cone: MorObject,
    pub inclusion: MorMorphism,
    pub projection: MorMorphism,
}

pub fn mapping_cone_extension(class: &ChainMapClass) -> ConeExtension {
    let (sigma, g, h) = (&class.sigma, &class.g, &class.representative);
    let mp = direct_sum(&[g.source().clone(), sigma.source().clone()]);
    let nq = direct_sum(&[g.target().clone(), sigma.target().clone()]);
    let e = nq.injections[0]
        .compose(&g.g)
        .compose(&mp.projections[0])
        .add(&nq.injections[0].compose(h).compose(&mp.projections[1]))
        .add(&nq.injections[1].compose(&sigma.g).compose(&mp.projections[1]));
    let cone = MorObject::new(e);
    let inclusion = MorMorphism {
        source: g.clone(),
        target: cone.clone(),
        top: mp.injections[0].clone(),
        bottom: nq.injections[0].clone(),
    };
    let projection = MorMorphism {
        source: cone.clone(),
        target: sigma.clone(),
        top: mp.projections[1].clone(),
        bottom: nq.projections[1].clone(),
    };
    ConeExtension { cone, inclusion, projection }
}

fn solve_combination(basis: &[MorMorphism], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = target.first().map(|s| s.field())?;
    if basis.is_empty() {
        return if target.iter().all(Scalar::is_zero) { Some(Vec::new()) } else { None };
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.flatten()).collect();
    let a = Matrix::from_columns(f, target.len(), &cols);
    a.solve(&Matrix::column_vector(f, target)).ok().map(|s| s.particular.column(0))
}

impl ConeExtension {
    /// Whether the projection has a section in the morphism category.
    pub fn splits(&self) -> bool {
        let sections = mor_hom(&self.projection.target, &self.cone);
        let after: Vec<MorMorphism> = sections.iter().map(|s| self.projection.compose(s)).collect();
        let id = MorMorphism::identity(&self.projection.target).flatten();
        if id.is_empty() {
            return true;
        }
        solve_combination(&after, &id).is_some()
    }

    /// The class of this extension, read off by lifting the standard resolution.
    pub fn class(&self) -> Result<ModuleHom> {
        let sigma = &self.projection.target;
        let res = std_resolution(sigma)?;
        let lifts = mor_hom(&res.p0, &self.cone);
        let after: Vec<MorMorphism> = lifts.iter().map(|l| self.projection.compose(l)).collect();
        let target = res.cover.flatten();
        let n = self.inclusion.source.target().clone();
        let p = sigma.source().clone();
        if target.is_empty() {
            return Ok(p.zero_hom(&n));
        }
        let c = solve_combination(&after, &target).ok_or(Error::Inconsistent)?;
        let mut lift_b = res.p0.target().zero_hom(self.cone.target());
        for (l, x) in lifts.iter().zip(&c) {
            lift_b = lift_b.add(&l.bottom.scale(x));
        }
        let mu = lift_b.compose(&res.inclusion.bottom);
        let beta = self.inclusion.bottom.matrix.coordinates(&mu.matrix)?;
        Ok(ModuleHom::unchecked(&p, &n, beta))
    }
}

/// `Coker(g)` is divisible by every map in `sigmas`.
pub fn perp_membership(sigmas: &[ProjMap], g: &MorObject) -> bool {
    let c = g.cokernel();
    sigmas.iter().all(|s| is_divisible_by(s, &c))
}

/// The lower triangular matrix ring `[[A, 0], [A, A]]`. Basis: `(a,0;0,0)` for the
/// first `dim A` indices, then `(0,0;0,a)`, then `(0,0;a,0)`. Vertex `v` of `A`
/// becomes `v` (source side) and `n + v` (target side).
pub fn t2_algebra(alg: &Alg) -> Result<Alg> {
    let f = alg.field();
    let d = alg.dim();
    let n = alg.n_vertices();
    let mut labels = Vec::with_capacity(3 * d);
    let mut tags = Vec::with_capacity(3 * d);
    for b in 0..d {
        labels.push(format!("({},0;0,0)", alg.label(b)));
        tags.push(alg.tag(b).clone());
    }
    for b in 0..d {
        labels.push(format!("(0,0;0,{})", alg.label(b)));
        tags.push(match alg.tag(b) {
            BasisTag::Idempotent(v) => BasisTag::Idempotent(n + v),
            t => t.clone(),
        });
    }
    for b in 0..d {
        labels.push(format!("(0,0;{},0)", alg.label(b)));
        tags.push(BasisTag::Radical);
    }
    let place = |v: Vec<Scalar>, block: usize| -> Vec<Scalar> {
        let mut out = vec![f.zero(); 3 * d];
        for (k, s) in v.into_iter().enumerate() {
            out[block * d + k] = s;
        }
        out
    };
    let zero = vec![f.zero(); 3 * d];
    let mut table = vec![vec![zero.clone(); 3 * d]; 3 * d];
    for a in 0..d {
        for b in 0..d {
            let ab = alg.left_mul(a).column(b);
            table[a][b] = place(ab.clone(), 0);
            table[d + a][d + b] = place(ab.clone(), 1);
            table[2 * d + a][b] = place(ab.clone(), 2);
            table[d + a][2 * d + b] = place(ab, 2);
        }
    }
    let mut gens: Vec<usize> = Vec::new();
    for &g in alg.generators() {
        gens.push(g);
        gens.push(d + g);
    }
    for v in 0..n {
        gens.push(2 * d + alg.idempotent(v));
    }
    gens.sort_unstable();
    Ok(Arc::new(FDAlgebra::from_table(f, labels, tags, &table, Some(gens))?))
}

fn check_t2(base: &Alg, t2: &Alg) -> Result<()> {
    if t2.dim() != 3 * base.dim() || t2.n_vertices() != 2 * base.n_vertices() || t2.field() != base.field() {
        return Err(Error::DimensionMismatch("algebra is not the triangular ring of the base".into()));
    }
    Ok(())
}

/// `Z_g` as a module over `T2(A)`: `M` sits on the source vertices, `N` on the
/// target vertices, and `(0,0;a,0)` acts by `m -> a g(m)`.
pub fn mor_to_t2(z: &MorObject, t2: &Alg) -> Result<FDModule> {
    let base = z.algebra();
    check_t2(base, t2)?;
    let f = base.field();
    let d = base.dim();
    let (m, n) = (z.source(), z.target());
    let (mt, nt) = (m.total_dim(), n.total_dim());
    let tot = mt + nt;
    let mut dims = m.dims().to_vec();
    dims.extend_from_slice(n.dims());
    let mut action = Vec::with_capacity(3 * d);
    for b in 0..d {
        let mut x = Matrix::zeros(f, tot, tot);
        x.set_block(0, 0, m.act(b));
        action.push(x);
    }
    for b in 0..d {
        let mut y = Matrix::zeros(f, tot, tot);
        y.set_block(mt, mt, n.act(b));
        action.push(y);
    }
    for b in 0..d {
        let mut c = Matrix::zeros(f, tot, tot);
        c.set_block(mt, 0, &n.act(b).mul(&z.g.matrix));
        action.push(c);
    }
    FDModule::new(t2, dims, action)
}

/// Inverse of [`mor_to_t2`].
pub fn t2_to_mor(x: &FDModule, base: &Alg) -> Result<MorObject> {
    let t2 = x.algebra();
    check_t2(base, t2)?;
    let d = base.dim();
    let nv = base.n_vertices();
    let mt = x.offset(nv);
    let nt = x.total_dim() - mt;
    let m_act: Vec<Matrix> = (0..d).map(|b| x.act(b).block(0, 0, mt, mt)).collect();
    let n_act: Vec<Matrix> = (0..d).map(|b| x.act(d + b).block(mt, mt, nt, nt)).collect();
    let m = FDModule::new(base, x.dims()[..nv].to_vec(), m_act)?;
    let n = FDModule::new(base, x.dims()[nv..].to_vec(), n_act)?;
    let mut one = vec![base.field().zero(); 3 * d];
    for v in 0..nv {
        one[2 * d + base.idempotent(v)] = base.field().one();
    }
    let g = x.act_element(&one).block(mt, 0, nt, mt);
    Ok(MorObject::new(ModuleHom::new(&m, &n, g)?))
}

/// `Ext^1` of the images in `Mod T2(A)`.
pub fn t2_ext1_dim(sigma: &MorObject, g: &MorObject, t2: &Alg) -> Result<usize> {
    Ok(ext1_dim(&mor_to_t2(sigma, t2)?, &mor_to_t2(g, t2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_quiver, hom_dim, is_isomorphic, Quiver};
    use crate::field::Field;
    use crate::homalg::ext1_dim;

    fn a2() -> Alg {
        Arc::new(algebra_from_quiver(&Quiver::linear(2), &[], Field::Prime(5), 8).unwrap())
    }

    fn rad(a: &Alg) -> ProjMap {
        let arrow = a.presentation().unwrap().arrow_basis_index(0);
        ProjMap::single(a, 1, 0, a.basis_vec(arrow)).unwrap()
    }

    #[test]
    fn triangular_dimensions() {
        let k = Arc::new(algebra_from_quiver(&Quiver::linear(1), &[], Field::Prime(5), 8).unwrap());
        let t = t2_algebra(&k).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.n_vertices(), 2);
        assert!(t.is_basic());
        assert_eq!(t2_algebra(&a2()).unwrap().dim(), 9);
    }

    #[test]
    fn identity_object_is_projective() {
        let a = a2();
        let t = t2_algebra(&a).unwrap();
        let z = MorObject::identity(&FDModule::regular(&a));
        let x = mor_to_t2(&z, &t).unwrap();
        assert_eq!(x.total_dim(), 6);
        assert!(is_projective(&x));
        let p2 = FDModule::projective(&a, 1);
        let y = mor_to_t2(&MorObject::zero_to(&p2), &t).unwrap();
        assert_eq!(y.total_dim(), 1);
        assert!(is_projective(&y));
    }

    #[test]
    fn hom_from_identity_object() {
        let a = a2();
        let s = rad(&a);
        let z = MorObject::from_sigma(&s);
        let id = MorObject::identity(&FDModule::regular(&a));
        assert_eq!(mor_hom_dim(&id, &z), z.source().total_dim());
        let s1 = FDModule::simple(&a, 0);
        let s2 = FDModule::simple(&a, 1);
        assert_eq!(mor_hom_dim(&MorObject::zero_to(&s1), &MorObject::zero_to(&s2)), 0);
        let t = t2_algebra(&a).unwrap();
        for (x, y) in [(&id, &z), (&z, &id), (&z, &z)] {
            assert_eq!(mor_hom_dim(x, y), hom_dim(&mor_to_t2(x, &t).unwrap(), &mor_to_t2(y, &t).unwrap()));
        }
    }

    #[test]
    fn round_trip() {
        let a = a2();
        let t = t2_algebra(&a).unwrap();
        let z = MorObject::from_sigma(&rad(&a));
        let back = t2_to_mor(&mor_to_t2(&z, &t).unwrap(), &a).unwrap();
        assert_eq!(back.g.matrix, z.g.matrix);
        assert!(is_isomorphic(back.source(), z.source()).unwrap().is_some());
    }

    #[test]
    fn resolution_and_ext() {
        let a = a2();
        let t = t2_algebra(&a).unwrap();
        let z = MorObject::from_sigma(&rad(&a));
        let r = std_resolution(&z).unwrap();
        assert_eq!(r.p1.total_dim(), 1);
        assert_eq!(r.p0.total_dim(), 4);
        assert!(r.inclusion.commutes() && r.cover.commutes());
        let g2 = MorObject::zero_to(&FDModule::simple(&a, 1));
        let g1 = MorObject::zero_to(&FDModule::simple(&a, 0));
        for (g, want) in [(&g2, 1), (&g1, 0)] {
            assert_eq!(mor_ext1_resolution(&z, g).unwrap().dim, want);
            assert_eq!(mor_ext1_homotopy(&z, g).unwrap().dim, want);
            assert_eq!(t2_ext1_dim(&z, g, &t).unwrap(), want);
        }
        let sx = MorObject::zero_to(&FDModule::simple(&a, 0));
        assert!(matches!(std_resolution(&sx), Err(Error::NotInBL)));
    }

    #[test]
    fn cone_realises_class() {
        let a = a2();
        let z = MorObject::from_sigma(&rad(&a));
        let g = MorObject::zero_to(&FDModule::simple(&a, 1));
        let ext = mor_ext1_resolution(&z, &g).unwrap();
        let class = &ext.classes[0];
        let cone = mapping_cone_extension(class);
        assert!(cone.inclusion.commutes() && cone.projection.commutes());
        assert!(!cone.splits());
        assert_eq!(cone.cone.total_dim(), z.total_dim() + g.total_dim());
        let back = cone.class().unwrap();
        assert_eq!(ext.reduce(&back).unwrap(), ext.reduce(&class.representative).unwrap());

        let zero =
            ChainMapClass { representative: class.representative.scale(&Field::Prime(5).zero()), ..class.clone() };
        let split = mapping_cone_extension(&zero);
        assert!(split.splits());
        let sum = MorObject::direct_sum(&[g.clone(), z.clone()]);
        let t = t2_algebra(&a).unwrap();
        let lhs = mor_to_t2(&split.cone, &t).unwrap();
        let rhs = mor_to_t2(&sum, &t).unwrap();
        assert!(is_isomorphic(&lhs, &rhs).unwrap().is_some());
    }

    #[test]
    fn membership_examples() {
        let a = a2();
        let s = rad(&a);
        let p1 = FDModule::projective(&a, 0);
        assert!(!perp_membership(std::slice::from_ref(&s), &MorObject::zero_to(&FDModule::simple(&a, 1))));
        assert!(perp_membership(std::slice::from_ref(&s), &MorObject::zero_to(&p1)));
        assert!(perp_membership(&[ProjMap::identity(&a, vec![0, 1])], &MorObject::zero_to(&FDModule::simple(&a, 1))));
        let z = MorObject::from_sigma(&s);
        for g in [MorObject::zero_to(&FDModule::simple(&a, 1)), MorObject::zero_to(&p1)] {
            assert_eq!(perp_membership(std::slice::from_ref(&s), &g), mor_ext1_resolution(&z, &g).unwrap().dim == 0);
        }
        assert_eq!(ext1_dim(&p1, &p1), 0);
    }
}
