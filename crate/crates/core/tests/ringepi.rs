use siltloc::algebra::{direct_sum, FDModule};
use siltloc::corpus::load;
use siltloc::homalg::{ApproxCaps, ProjMap};
use siltloc::ringepi::*;
use siltloc::silting::gen_membership;
use siltloc::torsion::SigmaSet;
use siltloc::Error;

fn combined(maps: &[ProjMap]) -> ProjMap {
    let refs: Vec<&ProjMap> = maps.iter().collect();
    ProjMap::direct_sum(&refs)
}

#[test]
fn radical_map_gives_full_matrix_ring() {
    let c = load("kA2").unwrap();
    let rad = c.sigma("rad").unwrap();
    let e = silting_ring_epi(c.module("S1").unwrap(), rad, ReflectCaps::default(), &c.module_list()).unwrap();
    assert_eq!(e.hom.target.dim(), 4);
    assert_eq!(full_matrix_size(&e.hom.target), Some(2));
    assert!(e.hom.epimorphism);
}

#[test]
fn nilpotent_gives_zero_ring() {
    let d = load("dual_numbers").unwrap();
    let x = d.sigma("x").unwrap();
    let e = ring_epi_of_presentation(x, ReflectCaps::default(), &d.module_list()).unwrap();
    assert_eq!(e.hom.target.dim(), 0);
    let s = SigmaSet::new(&d.alg, vec![x.clone()]).unwrap();
    assert!(matches!(agreement(&s, &d.module_list(), ApproxCaps::default()), Err(Error::Diverged { .. })));
}

#[test]
fn agreement_on_linear_quivers() {
    for name in ["kA2", "kA3"] {
        let c = load(name).unwrap();
        let inds = c.module_list();
        for (set, maps) in &c.sigma_sets {
            let s = SigmaSet::new(&c.alg, maps.clone()).unwrap();
            let r = agreement(&s, &inds, ApproxCaps::default()).unwrap();
            assert!(r.agrees(), "{name}/{set}");
            assert_eq!(r.rows.len(), inds.len());
        }
    }
}

#[test]
fn flat_epi_to_matrix_ring() {
    let c = load("kA2").unwrap();
    let inds = c.module_list();
    let e = silting_ring_epi(c.module("S1").unwrap(), c.sigma("rad").unwrap(), ReflectCaps::default(), &inds).unwrap();
    let r = silting_from_flat_epi(&e.hom, &inds, true).unwrap();
    assert!(r.candidate.silting && r.verified());
    let p1s1 = direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
    assert_eq!(gen_membership(&r.candidate.module, &inds), gen_membership(&p1s1, &inds));
}

#[test]
fn tor_vanishing_matches_extension_closure() {
    let mut checked = 0;
    for name in ["kA2", "kA3", "dual_numbers", "kronecker"] {
        let c = load(name).unwrap();
        let inds = c.module_list();
        let mut homs = vec![RingHom::identity(&c.alg).unwrap(), radical_quotient_epi(&c.alg).unwrap().hom];
        for v in 0..c.alg.n_vertices() {
            homs.push(idempotent_quotient_epi(&c.alg, &[v], &inds).unwrap().hom);
        }
        for (_, maps) in &c.sigma_sets {
            if let Ok(e) = ring_epi_of_presentation(&combined(maps), ReflectCaps::default(), &inds) {
                homs.push(e.hom);
            }
        }
        for f in &homs {
            assert_eq!(f.tor1_vanishes, extension_closed(f, &inds), "{name}: {:?}", f.target.dim());
            checked += 1;
        }
    }
    assert!(checked >= 15);
}

#[test]
fn reflections_are_universal_on_corpus() {
    for name in ["kA2", "kA3"] {
        let c = load(name).unwrap();
        let inds = c.module_list();
        for (_, maps) in &c.sigma_sets {
            let omega = combined(maps);
            for m in &inds {
                let r = reflect(m, &omega, ReflectCaps::default()).unwrap();
                assert!(xb_membership(&omega, &r.reflected));
                assert!(unit_is_universal(&r, &omega, &inds));
            }
        }
    }
}

#[test]
fn zero_regular_module() {
    let c = load("kA2").unwrap();
    let q = idempotent_quotient_epi(&c.alg, &[0, 1], &c.module_list()).unwrap();
    assert!(FDModule::regular(&q.quotient.algebra).is_zero());
}
