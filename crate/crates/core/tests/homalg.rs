use siltloc::algebra::{direct_sum, is_isomorphic, FDModule};
use siltloc::corpus::load;
use siltloc::homalg::*;
use siltloc::Error;

#[test]
fn tau_of_homogeneous_regular_is_itself() {
    let c = load("kronecker").unwrap();
    let r = c.module("R").unwrap();
    let t = ar_translate(r);
    assert!(is_isomorphic(&t, r).unwrap().is_some());
    assert_eq!(ext1_dim(r, r), 1);
}

#[test]
fn ar_duality_on_corpus() {
    for name in ["kA2", "kA3", "kronecker", "dual_numbers"] {
        let c = load(name).unwrap();
        let ms = c.module_list();
        for m in &ms {
            let tm = ar_translate(m);
            for n in &ms {
                assert_eq!(ext1_dim(m, n), inj_stable_hom_dim(n, &tm), "{name}: {:?} {:?}", m.dims(), n.dims());
            }
        }
    }
}

#[test]
fn presentation_independence() {
    for name in ["kA2", "kA3", "kronecker", "dual_numbers"] {
        let c = load(name).unwrap();
        let ms = c.module_list();
        for m in &ms {
            let minimal = minimal_presentation(m).sigma;
            let extra = ProjMap::identity(&c.alg, vec![0]);
            let padded = ProjMap::direct_sum(&[&minimal, &extra]);
            for n in &ms {
                let d = ext1_dim(m, n);
                assert_eq!(ext1_from_presentation(&minimal, n), d);
                assert_eq!(ext1_from_presentation(&padded, n), d);
            }
        }
    }
}

#[test]
fn dual_numbers_translate() {
    let c = load("dual_numbers").unwrap();
    let k = c.module("k").unwrap();
    assert!(!pd_at_most_one(k));
    assert!(is_isomorphic(&ar_translate(k), k).unwrap().is_some());
}

#[test]
fn approximation_sequences_on_a3() {
    let c = load("kA3").unwrap();
    let s1 = c.module("S1").unwrap().clone();
    let s2 = c.module("S2").unwrap().clone();
    let i2 = c.module("I2").unwrap();
    let gens = vec![s1.clone(), s2.clone()];
    let seq = approx_sequence(&gens, &s2, ApproxCaps::default()).unwrap();
    assert!(is_isomorphic(&seq.middle, i2).unwrap().is_some());
    assert_eq!(seq.certificate, vec![(0, 1)]);
    for g in &gens {
        assert_eq!(ext1_dim(g, &seq.middle), 0);
    }
    let seq1 = approx_sequence(&gens, &s1, ApproxCaps::default()).unwrap();
    assert!(seq1.certificate.is_empty());

    let (t1, _) = partial_tilting_from_set(&c.alg, &gens, ApproxCaps::default()).unwrap();
    let expect = direct_sum(&[s1.clone(), i2.clone()]).module;
    assert!(is_isomorphic(&t1, &expect).unwrap().is_some());
    for x in c.module_list() {
        assert_eq!(in_perp1(&gens, &x), in_perp1(std::slice::from_ref(&t1), &x));
    }
    let (z, _) = partial_tilting_from_set(&c.alg, &[], ApproxCaps::default()).unwrap();
    assert!(z.is_zero());
}

#[test]
fn kronecker_regular_diverges() {
    let c = load("kronecker").unwrap();
    let r = c.module("R").unwrap().clone();
    let caps = ApproxCaps { iterations: 10, total_dim: 10_000 };
    match approx_sequence(std::slice::from_ref(&r), &r, caps) {
        Err(Error::Diverged { steps, trace, .. }) => {
            assert_eq!(steps, 10);
            assert_eq!(trace, (1..=11).map(|k| 2 * k).collect::<Vec<_>>());
        }
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn universal_extension_in_a3() {
    let c = load("kA3").unwrap();
    let u = universal_extension(c.module("S2").unwrap(), c.module("S1").unwrap());
    assert_eq!(u.d, 1);
    assert!(is_isomorphic(&u.module, c.module("I2").unwrap()).unwrap().is_some());
    let s3 = FDModule::simple(&c.alg, 2);
    assert_eq!(universal_extension(&s3, c.module("S1").unwrap()).d, 0);
}
