//! Silting and tilting modules, their transfer to the morphism category, Bongartz
//! completion and the census of silting classes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{
    algebra_from_quiver, direct_sum, hom_dim, indecomposable_decomposition, indecomposables_up_to, is_isomorphic, Alg,
    FDModule, Quiver,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::{
    approximation_generators, ar_translate, ext1_dim, in_add, is_divisible_by, minimal_left_approximation,
    minimal_presentation, partial_tilting_from_set, pd_at_most_one, universal_extension, ApproxCaps, ProjMap,
    UniversalExtension,
};
use crate::morcat::{mor_to_t2, t2_algebra, t2_to_mor, MorObject};
use crate::torsion::trace;

/// `Hom(T, τT) = 0`.
pub fn is_tau_rigid(t: &FDModule) -> bool {
    t.is_zero() || hom_dim(t, &ar_translate(t)) == 0
}

fn vertex_counts(n: usize, verts: &[usize]) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for &v in verts {
        c[v] += 1;
    }
    c
}

/// Multiplicity of `P_v -> 0` in `omega` beyond a minimal presentation of `t`.
pub fn p_part(t: &FDModule, omega: &ProjMap) -> Result<Vec<usize>> {
    let n = t.algebra().n_vertices();
    let min = minimal_presentation(t).sigma;
    let (d, c) = (vertex_counts(n, &omega.domain), vertex_counts(n, &omega.codomain));
    let (dm, cm) = (vertex_counts(n, &min.domain), vertex_counts(n, &min.codomain));
    (0..n)
        .map(|v| {
            let m = (d[v] - dm[v]) - (c[v] - cm[v]);
            usize::try_from(m).map_err(|_| Error::PresentationMismatch)
        })
        .collect()
}

/// Errors with `PresentationMismatch` unless `Coker(omega) ≅ t`.
pub fn check_presentation(t: &FDModule, omega: &ProjMap) -> Result<()> {
    let (c, _) = omega.cokernel();
    match is_isomorphic(&c, t)? {
        Some(_) => Ok(()),
        None => Err(Error::PresentationMismatch),
    }
}

fn divisible_with_cross_check(t: &FDModule, omega: &ProjMap, pp: &[usize]) -> Result<bool> {
    let direct = is_divisible_by(omega, t);
    let support_ok = pp.iter().enumerate().all(|(v, &m)| m == 0 || t.dims()[v] == 0);
    let via_tau = is_tau_rigid(t) && support_ok;
    if direct != via_tau {
        return Err(Error::OracleDisagreement(format!(
            "divisibility {direct} but tau-rigidity with support {via_tau}"
        )));
    }
    Ok(direct)
}

/// `T ∈ D_ω`; for finitely presented `ω` the class `D_ω` is always a torsion class.
pub fn is_partial_silting(t: &FDModule, omega: &ProjMap) -> Result<bool> {
    check_presentation(t, omega)?;
    let pp = p_part(t, omega)?;
    divisible_with_cross_check(t, omega, &pp)
}

/// Membership of each listed module in `Gen(T)`.
pub fn gen_membership(t: &FDModule, modules: &[FDModule]) -> Vec<bool> {
    crate::par::par_map(modules, |x| trace(std::slice::from_ref(t), x).0.total_dim() == x.total_dim())
}

/// Membership of each listed module in `D_Σ`.
pub fn divisible_membership(sigmas: &[ProjMap], modules: &[FDModule]) -> Vec<bool> {
    crate::par::par_map(modules, |x| sigmas.iter().all(|s| is_divisible_by(s, x)))
}

fn route_a(t: &FDModule, pp: &[usize], distinct: usize, partial: bool) -> bool {
    let n = t.algebra().n_vertices();
    let support = pp.iter().filter(|&&m| m > 0).count();
    partial && distinct + support == n
}

fn route_b(t: &FDModule, omega: &ProjMap, inds: &[FDModule]) -> bool {
    gen_membership(t, inds) == divisible_membership(std::slice::from_ref(omega), inds)
}

fn distinct_summands(t: &FDModule) -> Result<usize> {
    if t.is_zero() {
        return Ok(0);
    }
    Ok(indecomposable_decomposition(t)?.distinct())
}

/// `D_ω = Gen(T)`. Route (a) counts summands of the support τ-tilting pair; when a
/// complete list of indecomposables is given, route (b) compares the classes on it
/// and the two must agree.
pub fn is_silting(t: &FDModule, omega: &ProjMap, inds: Option<&[FDModule]>) -> Result<bool> {
    check_presentation(t, omega)?;
    let pp = p_part(t, omega)?;
    let partial = divisible_with_cross_check(t, omega, &pp)?;
    let a = route_a(t, &pp, distinct_summands(t)?, partial);
    if let Some(list) = inds {
        let b = route_b(t, omega, list);
        if a != b {
            return Err(Error::OracleDisagreement(format!("summand count says {a}, class comparison says {b}")));
        }
    }
    Ok(a)
}

/// Route (b) alone.
pub fn is_silting_by_classes(t: &FDModule, omega: &ProjMap, inds: Option<&[FDModule]>) -> Result<bool> {
    let list = inds.ok_or(Error::MissingIndecomposableList)?;
    check_presentation(t, omega)?;
    Ok(route_b(t, omega, list))
}

/// Projective dimension at most one and no self-extensions.
pub fn is_partial_tilting(t: &FDModule) -> bool {
    pd_at_most_one(t) && ext1_dim(t, t) == 0
}

/// Partial tilting, and `0 -> A -> T0 -> T1 -> 0` exists with `T0, T1 ∈ add T`,
/// found one indecomposable projective at a time from left `add T`-approximations.
pub fn is_tilting(t: &FDModule) -> bool {
    let alg = t.algebra();
    if !is_partial_tilting(t) {
        return false;
    }
    if t.is_zero() {
        return FDModule::regular(alg).is_zero();
    }
    let summands = match indecomposable_decomposition(t) {
        Ok(d) => d.summands.into_iter().map(|(m, _)| m).collect::<Vec<_>>(),
        Err(_) => return tilting_by_greedy_approximation(t),
    };
    let basic = direct_sum(&summands).module;
    let mut reg = Vec::new();
    for v in 0..alg.n_vertices() {
        let p = FDModule::projective(alg, v);
        match minimal_left_approximation(&p, &summands) {
            Some(approx) => reg.push((p, approx)),
            None => return tilting_by_greedy_approximation(t),
        }
    }
    reg.iter().all(|(_, (_, f))| f.is_injective() && in_add(&basic, &f.cokernel().0))
}

fn tilting_by_greedy_approximation(t: &FDModule) -> bool {
    let alg = t.algebra();
    (0..alg.n_vertices()).all(|v| {
        let p = FDModule::projective(alg, v);
        if p.is_zero() {
            return true;
        }
        let homs = approximation_generators(&p, t, true);
        if homs.is_empty() {
            return false;
        }
        let sum = direct_sum(&vec![t.clone(); homs.len()]);
        let mut f = p.zero_hom(&sum.module);
        for (k, h) in homs.iter().enumerate() {
            f = f.add(&sum.injections[k].compose(h));
        }
        f.is_injective() && in_add(t, &f.cokernel().0)
    })
}

/// A module with a presentation and every verdict about it.
#[derive(Clone, Debug)]
pub struct SiltingCandidate {
    pub module: FDModule,
    pub omega: ProjMap,
    /// Vertices `v` with a summand `P_v -> 0` in `omega`.
    pub support: Vec<usize>,
    pub tau_rigid: bool,
    pub partial_silting: bool,
    pub silting: bool,
    pub partial_tilting: bool,
    pub tilting: bool,
}

impl SiltingCandidate {
    pub fn evaluate(t: &FDModule, omega: &ProjMap, inds: Option<&[FDModule]>) -> Result<SiltingCandidate> {
        check_presentation(t, omega)?;
        SiltingCandidate::evaluate_unchecked(t, omega, inds, None)
    }

    fn evaluate_unchecked(
        t: &FDModule,
        omega: &ProjMap,
        inds: Option<&[FDModule]>,
        distinct: Option<usize>,
    ) -> Result<SiltingCandidate> {
        let pp = p_part(t, omega)?;
        let partial = divisible_with_cross_check(t, omega, &pp)?;
        let distinct = match distinct {
            Some(d) => d,
            None => distinct_summands(t)?,
        };
        let silting = route_a(t, &pp, distinct, partial);
        if let Some(list) = inds {
            if route_b(t, omega, list) != silting {
                return Err(Error::OracleDisagreement("silting routes disagree".into()));
            }
        }
        let partial_tilting = is_partial_tilting(t);
        Ok(SiltingCandidate {
            module: t.clone(),
            omega: omega.clone(),
            support: pp.iter().enumerate().filter(|(_, &m)| m > 0).map(|(v, _)| v).collect(),
            tau_rigid: is_tau_rigid(t),
            partial_silting: partial,
            silting,
            partial_tilting,
            tilting: partial_tilting && is_tilting(t),
        })
    }
}

/// `Z_ω`.
pub fn silting_to_mor(omega: &ProjMap) -> MorObject {
    MorObject::from_sigma(omega)
}

/// `Coker(ω)` and `ω` back from an object with projective ends.
pub fn mor_to_silting(z: &MorObject) -> Result<(FDModule, ProjMap)> {
    let omega = z.sigma()?;
    Ok((omega.cokernel().0, omega))
}

/// Verdicts on both sides of the transfer to the morphism category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub partial_silting: bool,
    pub partial_tilting_mor: bool,
    pub silting: bool,
    pub tilting_mor: bool,
}

impl TransferReport {
    pub fn agrees(&self) -> bool {
        self.partial_silting == self.partial_tilting_mor && self.silting == self.tilting_mor
    }
}

/// Evaluates both sides of the transfer: partial silting against `Z_ω` partial
/// tilting, silting against `Z_ω ⊕ Z_{id_A}` tilting, over the triangular ring `t2`.
pub fn transfer_report(c: &SiltingCandidate, t2: &Alg) -> Result<TransferReport> {
    let alg = c.module.algebra();
    let z = silting_to_mor(&c.omega);
    let zt = mor_to_t2(&z, t2)?;
    let both = MorObject::direct_sum(&[z, MorObject::identity(&FDModule::regular(alg))]);
    let bt = mor_to_t2(&both, t2)?;
    Ok(TransferReport {
        partial_silting: c.partial_silting,
        partial_tilting_mor: is_partial_tilting(&zt),
        silting: c.silting,
        tilting_mor: is_tilting(&bt),
    })
}

/// Like [`transfer_report`] but errors on disagreement.
pub fn check_transfer(c: &SiltingCandidate, t2: &Alg) -> Result<TransferReport> {
    let r = transfer_report(c, t2)?;
    if !r.agrees() {
        return Err(Error::OracleDisagreement(format!("transfer verdicts differ: {r:?}")));
    }
    Ok(r)
}

/// A tilting completion `E ⊕ Z` of a partial tilting module `Z`, where
/// `0 -> R -> E -> Z^r -> 0` is the universal extension of the regular module.
#[derive(Clone, Debug)]
pub struct Completion {
    pub module: FDModule,
    pub extension: UniversalExtension,
}

pub fn bongartz_complete(z: &FDModule) -> Result<Completion> {
    let reg = FDModule::regular(z.algebra());
    let extension = universal_extension(&reg, z);
    let e = extension.module.clone();
    if ext1_dim(z, &e) != 0 {
        return Err(Error::OracleDisagreement("completion still has extensions by the partial tilting module".into()));
    }
    let module = if z.is_zero() { e } else { direct_sum(&[e, z.clone()]).module };
    if !is_tilting(&module) {
        return Err(Error::OracleDisagreement("completion is not tilting".into()));
    }
    Ok(Completion { module, extension })
}

/// Silting module and presentation with `D_ω = D_Σ`, obtained over the
/// triangular ring: partial tilting from the objects `Z_σ`, then Bongartz
/// completion, read back as a map between projectives.
#[derive(Clone, Debug)]
pub struct SiltingFromSigma {
    pub module: FDModule,
    pub omega: ProjMap,
    pub tilting_mor: FDModule,
}

pub fn silting_from_sigma(alg: &Alg, sigmas: &[ProjMap], caps: ApproxCaps) -> Result<SiltingFromSigma> {
    let t2 = t2_algebra(alg)?;
    let gens: Vec<FDModule> =
        sigmas.iter().map(|s| mor_to_t2(&MorObject::from_sigma(s), &t2)).collect::<Result<_>>()?;
    let (t1, _) = partial_tilting_from_set(&t2, &gens, caps)?;
    let completion = bongartz_complete(&t1)?;
    let z = t2_to_mor(&completion.module, alg)?;
    if !z.in_bl() {
        return Err(Error::OracleDisagreement("tilting completion has a summand outside BL".into()));
    }
    let (module, omega) = mor_to_silting(&z)?;
    Ok(SiltingFromSigma { module, omega, tilting_mor: completion.module })
}

/// All candidates `(T, ω)` with `T` a basic sum of enumerated indecomposables and
/// `ω` a minimal presentation plus a sum of `P_v -> 0`, and the distinct classes
/// `Gen(T)` (as membership vectors on the indecomposables) of the silting ones.
#[derive(Clone, Debug)]
pub struct Census {
    pub indecomposables: Vec<FDModule>,
    pub candidates: Vec<SiltingCandidate>,
    pub classes: BTreeSet<Vec<bool>>,
}

/// The linear quiver algebra on `n` vertices over `field`.
pub fn linear_algebra(n: usize, field: Field) -> Result<Alg> {
    Ok(Arc::new(algebra_from_quiver(&Quiver::linear(n), &[], field, 16)?))
}

/// Census with the dimension-vector bound applied to indecomposable summands.
/// `complete` states that the enumerated list contains every indecomposable, which
/// enables the class-comparison route.
pub fn census(alg: &Alg, bound: &[usize], complete: bool) -> Result<Census> {
    let inds = indecomposables_up_to(alg, bound)?;
    let k = inds.len();
    let n = alg.n_vertices();
    if k > 16 {
        return Err(Error::InvalidInput(format!("{k} indecomposables is too many for a census")));
    }
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for subset in 0..(1usize << k) {
        for e in 0..(1usize << n) {
            jobs.push((subset, e));
        }
    }
    let list = if complete { Some(inds.as_slice()) } else { None };
    let results: Vec<Result<Option<SiltingCandidate>>> = crate::par::par_map(&jobs, |&(subset, e)| {
        let parts: Vec<FDModule> = (0..k).filter(|i| subset >> i & 1 == 1).map(|i| inds[i].clone()).collect();
        let t = if parts.is_empty() { FDModule::zero(alg) } else { direct_sum(&parts).module };
        let support: Vec<usize> = (0..n).filter(|v| e >> v & 1 == 1).collect();
        let min = minimal_presentation(&t).sigma;
        let omega = ProjMap::direct_sum(&[&min, &ProjMap::zero(alg, support, vec![])]);
        SiltingCandidate::evaluate_unchecked(&t, &omega, list, Some(parts.len())).map(Some)
    });
    let mut candidates = Vec::with_capacity(results.len());
    for r in results {
        if let Some(c) = r? {
            candidates.push(c);
        }
    }
    let classes = candidates.iter().filter(|c| c.silting).map(|c| gen_membership(&c.module, &inds)).collect();
    Ok(Census { indecomposables: inds, candidates, classes })
}

/// Dimension vector of the regular module.
pub fn regular_dims(alg: &Alg) -> Vec<usize> {
    FDModule::regular(alg).dims().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;

    fn a2() -> crate::format::Corpus {
        load("kA2").unwrap()
    }

    #[test]
    fn partial_silting_examples() {
        let c = a2();
        let a = &c.alg;
        let p1 = c.module("P1").unwrap();
        let s1 = c.module("S1").unwrap();
        let s2 = c.module("S2").unwrap();
        assert!(is_partial_silting(p1, &ProjMap::zero(a, vec![], vec![0])).unwrap());
        assert!(is_partial_silting(s1, &minimal_presentation(s1).sigma).unwrap());
        let min2 = minimal_presentation(s2).sigma;
        assert!(is_partial_silting(s2, &min2).unwrap());
        let bad = ProjMap::direct_sum(&[&min2, &ProjMap::zero(a, vec![1], vec![])]);
        assert!(!is_partial_silting(s2, &bad).unwrap());
        assert_eq!(is_partial_silting(s1, &min2), Err(Error::PresentationMismatch));
    }

    #[test]
    fn silting_examples() {
        let c = a2();
        let a = &c.alg;
        let inds = c.module_list();
        let reg = FDModule::regular(a);
        let id = ProjMap::zero(a, vec![], vec![0, 1]);
        assert!(is_silting(&reg, &id, Some(&inds)).unwrap());
        let t = direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
        assert!(is_silting(&t, &minimal_presentation(&t).sigma, Some(&inds)).unwrap());
        let s1 = c.module("S1").unwrap();
        assert!(!is_silting(s1, &minimal_presentation(s1).sigma, Some(&inds)).unwrap());
        assert_eq!(
            is_silting_by_classes(s1, &minimal_presentation(s1).sigma, None),
            Err(Error::MissingIndecomposableList)
        );
    }

    #[test]
    fn tilting_examples() {
        let c = a2();
        let reg = FDModule::regular(&c.alg);
        assert!(is_tilting(&reg));
        let t = direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
        assert!(is_tilting(&t));
        assert!(!is_tilting(c.module("S1").unwrap()));
    }

    #[test]
    fn bongartz_on_simple() {
        let c = a2();
        let s1 = c.module("S1").unwrap();
        let b = bongartz_complete(s1).unwrap();
        assert_eq!(b.extension.d, 1);
        assert_eq!(b.extension.module.dims(), &[2, 2]);
        let t = direct_sum(&[c.module("P1").unwrap().clone(), s1.clone()]).module;
        assert!(in_add(&t, &b.module) && in_add(&b.module, &t));
        let z = bongartz_complete(&FDModule::zero(&c.alg)).unwrap();
        assert!(is_isomorphic(&z.module, &FDModule::regular(&c.alg)).unwrap().is_some());
    }

    #[test]
    fn transfer_on_a2() {
        let c = a2();
        let t2 = t2_algebra(&c.alg).unwrap();
        let inds = c.module_list();
        let t = direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
        let cand = SiltingCandidate::evaluate(&t, &minimal_presentation(&t).sigma, Some(&inds)).unwrap();
        let r = check_transfer(&cand, &t2).unwrap();
        assert!(r.silting && r.tilting_mor);
        let zero = FDModule::zero(&c.alg);
        let kill = ProjMap::zero(&c.alg, vec![0, 1], vec![]);
        let cand = SiltingCandidate::evaluate(&zero, &kill, Some(&inds)).unwrap();
        assert!(cand.silting);
        check_transfer(&cand, &t2).unwrap();
    }

    #[test]
    fn from_sigma_examples() {
        let c = a2();
        let inds = c.module_list();
        let caps = ApproxCaps::default();
        for (set, expect) in [("rad", vec![true, true, false]), ("kill1", vec![false, false, true])] {
            let sig = c.sigma_set(set).unwrap();
            let r = silting_from_sigma(&c.alg, sig, caps).unwrap();
            assert_eq!(gen_membership(&r.module, &inds), expect, "{set}");
            assert_eq!(divisible_membership(sig, &inds), expect);
            assert!(is_silting(&r.module, &r.omega, Some(&inds)).unwrap());
        }
        let r = silting_from_sigma(&c.alg, &[], caps).unwrap();
        assert_eq!(gen_membership(&r.module, &inds), vec![true; 3]);
    }

    #[test]
    fn census_a2() {
        let a = linear_algebra(2, Field::Prime(2)).unwrap();
        let c = census(&a, &regular_dims(&a), true).unwrap();
        assert_eq!(c.indecomposables.len(), 3);
        assert_eq!(c.classes.len(), 5);
    }
}
