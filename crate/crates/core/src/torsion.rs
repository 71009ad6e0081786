//! Divisible, reduced, torsion and torsion-free modules attached to a set of maps
//! between projectives.

use crate::algebra::{hom_space, indecomposable_decomposition, is_isomorphic, submodules, Alg, FDModule, ModuleHom};
use crate::error::{Error, Result};
use crate::homalg::{is_divisible_by, ProjMap};
use crate::matrix::Matrix;

/// A set of maps together with their cokernels.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    alg: Alg,
    maps: Vec<ProjMap>,
    cokernels: Vec<FDModule>,
}

impl SigmaSet {
    pub fn new(alg: &Alg, maps: Vec<ProjMap>) -> Result<SigmaSet> {
        if maps.iter().any(|s| **s.algebra() != **alg) {
            return Err(Error::InvalidInput("maps over different algebras".into()));
        }
        let cokernels = maps.iter().map(|s| s.cokernel().0).collect();
        Ok(SigmaSet { alg: alg.clone(), maps, cokernels })
    }

    pub fn algebra(&self) -> &Alg {
        &self.alg
    }
    pub fn maps(&self) -> &[ProjMap] {
        &self.maps
    }
    pub fn cokernels(&self) -> &[FDModule] {
        &self.cokernels
    }
    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// `Hom(sigma, X)` surjective for every `sigma`.
pub fn is_divisible(s: &SigmaSet, x: &FDModule) -> bool {
    s.maps.iter().all(|m| is_divisible_by(m, x))
}

/// `Hom(sigma, X)` injective for every `sigma`.
pub fn is_torsionfree(s: &SigmaSet, x: &FDModule) -> bool {
    s.maps.iter().all(|m| {
        let h = m.hom_map(x);
        h.rank() == h.cols()
    })
}

/// `Hom(sigma, X)` bijective for every `sigma`.
pub fn is_local(s: &SigmaSet, x: &FDModule) -> bool {
    is_divisible(s, x) && is_torsionfree(s, x)
}

/// Sum of the images of all maps from the given modules into `x`.
pub fn trace(gens: &[FDModule], x: &FDModule) -> (FDModule, ModuleHom) {
    let mut cols = Vec::new();
    for g in gens {
        for h in hom_space(g, x) {
            cols.extend(h.matrix.columns());
        }
    }
    let span = Matrix::from_columns(x.field(), x.total_dim(), &cols);
    x.submodule(&span).expect("sum of images is a submodule")
}

/// The torsion part for the class generated by the cokernels, with the
/// corresponding torsion-free quotient.
#[derive(Clone, Debug)]
pub struct TorsionPart {
    pub sub: FDModule,
    pub inclusion: ModuleHom,
    pub quotient: FDModule,
    pub projection: ModuleHom,
    pub steps: usize,
}

/// Trace iteration: add the trace of the cokernels in the current quotient until
/// it vanishes.
pub fn torsion_part(s: &SigmaSet, x: &FDModule) -> TorsionPart {
    let mut projection = x.identity();
    let mut steps = 0;
    loop {
        let q = projection.target.clone();
        let (t, incl) = trace(&s.cokernels, &q);
        if t.is_zero() {
            break;
        }
        steps += 1;
        let (_, rho) = q.quotient(&incl).expect("trace is a submodule");
        projection = rho.compose(&projection);
    }
    let (sub, inclusion) = projection.kernel();
    TorsionPart { sub, inclusion, quotient: projection.target.clone(), projection, steps }
}

pub fn is_torsion(s: &SigmaSet, x: &FDModule) -> bool {
    torsion_part(s, x).quotient.is_zero()
}

/// How to find the largest divisible submodule.
#[derive(Clone, Debug)]
pub enum DivisibleStrategy {
    /// A silting module `T` with `Gen T` equal to the divisible class; the part is
    /// the trace of `T`.
    TraceOfSilting(FDModule),
    /// Sum of all divisible submodules, enumerating at most `cap` submodules.
    BruteForce {
        cap: usize,
    },
    None,
}

/// Largest divisible submodule of `x`.
pub fn divisible_part(s: &SigmaSet, x: &FDModule, strategy: &DivisibleStrategy) -> Result<(FDModule, ModuleHom)> {
    if is_divisible(s, x) {
        return Ok((x.clone(), x.identity()));
    }
    match strategy {
        DivisibleStrategy::TraceOfSilting(t) => Ok(trace(std::slice::from_ref(t), x)),
        DivisibleStrategy::BruteForce { cap } => {
            let mut cols = Vec::new();
            for (sub, incl) in submodules(x, *cap)? {
                if is_divisible(s, &sub) {
                    cols.extend(incl.matrix.columns());
                }
            }
            let span = Matrix::from_columns(x.field(), x.total_dim(), &cols);
            Ok(x.submodule(&span).expect("sum of submodules"))
        }
        DivisibleStrategy::None => {
            Err(Error::Undecided("divisible part needs a silting module or a brute-force cap".into()))
        }
    }
}

/// Membership of a module in every class attached to `s`.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub module: FDModule,
    pub divisible: bool,
    /// `None` when the divisible part could not be decided.
    pub reduced: Option<bool>,
    pub torsion: bool,
    pub torsionfree: bool,
    pub torsion_part: TorsionPart,
}

impl TorsionReport {
    pub fn is_local(&self) -> bool {
        self.divisible && self.torsionfree
    }
}

pub fn torsion_report(s: &SigmaSet, x: &FDModule, strategy: &DivisibleStrategy) -> TorsionReport {
    let tp = torsion_part(s, x);
    let reduced = match divisible_part(s, x, strategy) {
        Ok((d, _)) => Some(d.is_zero()),
        Err(_) => None,
    };
    TorsionReport {
        module: x.clone(),
        divisible: is_divisible(s, x),
        reduced,
        torsion: tp.quotient.is_zero(),
        torsionfree: tp.sub.is_zero(),
        torsion_part: tp,
    }
}

/// First violation found by [`verify_torsion_pair`]; indices refer to the input lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    NonzeroHom { torsion: usize, free: usize },
    NoSequence { module: usize },
}

/// `m` is a direct sum of modules isomorphic to members of `class`.
pub fn in_additive_closure(class: &[FDModule], m: &FDModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    for (summand, _) in indecomposable_decomposition(m)?.summands {
        let mut found = false;
        for c in class {
            if c.dims() == summand.dims() && is_isomorphic(c, &summand)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the indecomposable lists `torsion` and `free` form a torsion pair
/// on `modules`: no maps from the first to the second, and every module is an
/// extension of a sum of the second by a sum of the first.
pub fn verify_torsion_pair(
    torsion: &[FDModule],
    free: &[FDModule],
    modules: &[FDModule],
) -> Result<std::result::Result<(), PairViolation>> {
    for (i, t) in torsion.iter().enumerate() {
        for (j, f) in free.iter().enumerate() {
            if !hom_space(t, f).is_empty() {
                return Ok(Err(PairViolation::NonzeroHom { torsion: i, free: j }));
            }
        }
    }
    for (k, x) in modules.iter().enumerate() {
        let (sub, incl) = trace(torsion, x);
        let (q, _) = x.quotient(&incl)?;
        if !in_additive_closure(torsion, &sub)? || !in_additive_closure(free, &q)? {
            return Ok(Err(PairViolation::NoSequence { module: k }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;

    #[test]
    fn divisibility_examples() {
        let c = load("kA2").unwrap();
        let a = &c.alg;
        let add2 = SigmaSet::new(a, vec![c.sigma("add2").unwrap().clone()]).unwrap();
        let rad = SigmaSet::new(a, vec![c.sigma("rad").unwrap().clone()]).unwrap();
        let kill1 = SigmaSet::new(a, vec![c.sigma("kill1").unwrap().clone()]).unwrap();
        for m in c.module_list() {
            assert!(is_divisible(&add2, &m));
            assert!(is_torsionfree(&kill1, &m));
        }
        assert!(is_divisible(&rad, c.module("P1").unwrap()));
        assert!(!is_divisible(&rad, c.module("S2").unwrap()));
        assert!(!is_torsionfree(&rad, c.module("S1").unwrap()));
        let id = SigmaSet::new(a, vec![c.sigma("id1").unwrap().clone()]).unwrap();
        for m in c.module_list() {
            assert!(is_torsionfree(&id, &m) && is_divisible(&id, &m));
        }
    }

    #[test]
    fn torsion_parts() {
        let c = load("kA2").unwrap();
        let rad = SigmaSet::new(&c.alg, vec![c.sigma("rad").unwrap().clone()]).unwrap();
        let reg = FDModule::regular(&c.alg);
        assert!(torsion_part(&rad, &reg).sub.is_zero());
        let id = SigmaSet::new(&c.alg, vec![c.sigma("id1").unwrap().clone()]).unwrap();
        assert!(torsion_part(&id, &reg).sub.is_zero());

        let d = load("dual_numbers").unwrap();
        let x = SigmaSet::new(&d.alg, vec![d.sigma("x").unwrap().clone()]).unwrap();
        let a = d.module("A").unwrap();
        let tp = torsion_part(&x, a);
        assert_eq!(tp.sub.total_dim(), 2);
        assert_eq!(tp.steps, 2);
    }

    #[test]
    fn divisible_parts() {
        let c = load("kA2").unwrap();
        let rad = SigmaSet::new(&c.alg, vec![c.sigma("rad").unwrap().clone()]).unwrap();
        let p2 = FDModule::projective(&c.alg, 1);
        let t = crate::algebra::direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
        let (d, _) = divisible_part(&rad, &p2, &DivisibleStrategy::TraceOfSilting(t)).unwrap();
        assert!(d.is_zero());
        let (d, _) = divisible_part(&rad, &p2, &DivisibleStrategy::BruteForce { cap: 1000 }).unwrap();
        assert!(d.is_zero());
        assert!(matches!(divisible_part(&rad, &p2, &DivisibleStrategy::None), Err(Error::Undecided(_))));
        let empty = SigmaSet::new(&c.alg, vec![]).unwrap();
        let (d, _) = divisible_part(&empty, &p2, &DivisibleStrategy::None).unwrap();
        assert_eq!(d.total_dim(), 1);
    }

    #[test]
    fn torsion_pair_on_a2() {
        let c = load("kA2").unwrap();
        let rad = SigmaSet::new(&c.alg, vec![c.sigma("rad").unwrap().clone()]).unwrap();
        let inds = c.module_list();
        let tors: Vec<FDModule> = inds.iter().filter(|m| is_torsion(&rad, m)).cloned().collect();
        let free: Vec<FDModule> = inds.iter().filter(|m| is_torsionfree(&rad, m)).cloned().collect();
        assert_eq!(verify_torsion_pair(&tors, &free, &inds).unwrap(), Ok(()));
        assert_eq!(verify_torsion_pair(&inds, &[], &inds).unwrap(), Ok(()));
        assert_eq!(
            verify_torsion_pair(&tors, &tors, &inds).unwrap(),
            Err(PairViolation::NonzeroHom { torsion: 0, free: 0 })
        );
    }
}
