use siltloc::cohnloc::*;
use siltloc::corpus::load;
use siltloc::ringepi::{centre_dim, factors_through, full_matrix_size, silting_ring_epi, ReflectCaps};
use siltloc::torsion::SigmaSet;

#[test]
fn radical_localisation_matches_silting_epi() {
    let c = load("kA2").unwrap();
    let rad = c.sigma("rad").unwrap();
    let r = normal_forms(&localisation_presentation(&c.alg, std::slice::from_ref(rad)).unwrap(), 6).unwrap();
    let l = finite_quotient(&r).unwrap();
    assert_eq!(l.algebra.dim(), 4);
    assert_eq!(full_matrix_size(&l.algebra), Some(2));
    let e = silting_ring_epi(c.module("S1").unwrap(), rad, ReflectCaps::default(), &c.module_list()).unwrap();
    assert_eq!(centre_dim(&l.algebra), centre_dim(&e.hom.target));
    assert_eq!(factors_through(&l.hom, &e.hom), Some(true));
    assert_eq!(factors_through(&e.hom, &l.hom), Some(true));
}

#[test]
fn torsionfree_reduction_keeps_counts() {
    for name in ["kA2", "kA3", "dual_numbers", "kronecker"] {
        let c = load(name).unwrap();
        for (set, maps) in &c.sigma_sets {
            let s = SigmaSet::new(&c.alg, maps.clone()).unwrap();
            let t = tf_consistency(&s, 6).unwrap();
            assert!(t.agrees(), "{name}/{set}: {:?} vs {:?}", t.full.counts(), t.reduced.counts());
        }
    }
    let d = load("dual_numbers").unwrap();
    let s = SigmaSet::new(&d.alg, vec![d.sigma("x").unwrap().clone()]).unwrap();
    assert_eq!(tf_consistency(&s, 6).unwrap().quotient_dim, 0);
}

#[test]
fn triangular_factorisation_on_corpus() {
    for name in ["kA2", "kA3", "dual_numbers"] {
        let c = load(name).unwrap();
        assert!(t2_factorisation_check(&c.alg, &[], 6).unwrap().agrees(), "{name}");
        for (set, maps) in &c.sigma_sets {
            let t = t2_factorisation_check(&c.alg, maps, 6).unwrap();
            assert!(t.agrees(), "{name}/{set}: {t:?}");
        }
    }
}

#[test]
fn universal_property_against_corpus_maps() {
    for name in ["kA2", "kA3"] {
        let c = load(name).unwrap();
        let inds = c.module_list();
        for (set, maps) in &c.sigma_sets {
            let p = localisation_presentation(&c.alg, maps).unwrap();
            let r = normal_forms(&p, 6).unwrap();
            let l = finite_quotient(&r).unwrap();
            assert!(l.witnesses.iter().all(|w| *w), "{name}/{set}");
            for (_, other) in &c.sigma_sets {
                let omega = siltloc::homalg::ProjMap::direct_sum(&other.iter().collect::<Vec<_>>());
                let Ok(e) = siltloc::ringepi::ring_epi_of_presentation(&omega, ReflectCaps::default(), &inds) else {
                    continue;
                };
                let inverts = maps.iter().all(|s| invertibility_check(&e.hom, s));
                let h = factorisation(&l, &p, &e.hom).unwrap();
                assert_eq!(h.is_some(), inverts, "{name}/{set}");
                assert_eq!(Some(inverts), factors_through(&e.hom, &l.hom), "{name}/{set}");
            }
        }
    }
}
