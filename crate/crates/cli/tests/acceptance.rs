use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use siltloc::algebra::{direct_sum, is_isomorphic};
use siltloc::cohnloc::{finite_quotient, localisation_presentation, normal_forms, tf_consistency};
use siltloc::corpus::load;
use siltloc::field::Field;
use siltloc::homalg::{approx_sequence, in_perp0, in_perp1, partial_tilting_from_set, ApproxCaps, ProjMap};
use siltloc::morcat::{mor_ext1_homotopy, mor_ext1_resolution, perp_membership, t2_algebra, t2_ext1_dim, MorObject};
use siltloc::par::set_sequential;
use siltloc::random::{random_hom, random_module, random_sigma};
use siltloc::ringepi::{
    agreement, centre_dim, extension_closed, factors_through, full_matrix_size, idempotent_quotient_epi,
    radical_quotient_epi, ring_epi_of_presentation, silting_from_flat_epi, silting_ring_epi, torsion_reduce,
    ReflectCaps, RingHom,
};
use siltloc::silting::{census, gen_membership, linear_algebra, regular_dims, transfer_report, Census};
use siltloc::torsion::SigmaSet;
use siltloc::Error;
use siltloc_cli::{cmd_agreement, cmd_check, cmd_localize, cmd_ringepi, cmd_silting, Status};

const NAMES: [&str; 4] = ["kA2", "kA3", "kronecker", "dual_numbers"];

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn combined(maps: &[ProjMap]) -> ProjMap {
    ProjMap::direct_sum(&maps.iter().collect::<Vec<_>>())
}

fn random_pair(seed: u64) -> (MorObject, MorObject) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = load(NAMES[(seed % 4) as usize]).unwrap().alg;
    loop {
        let s = MorObject::from_sigma(&random_sigma(&alg, 2, 8, &mut rng));
        let m = random_module(&alg, 4, &mut rng);
        let n = random_module(&alg, 4, &mut rng);
        let g = MorObject::new(random_hom(&m, &n, &mut rng));
        if s.total_dim() <= 8 && g.total_dim() <= 8 {
            return (s, g);
        }
    }
}

fn corpus_objects(name: &str) -> (Vec<MorObject>, Vec<MorObject>) {
    let c = load(name).unwrap();
    let mut objects = Vec::new();
    for m in c.module_list() {
        objects.push(MorObject::zero_to(&m));
        objects.push(MorObject::identity(&m));
    }
    let sigmas: Vec<MorObject> = c.sigmas.iter().map(|(_, s)| MorObject::from_sigma(s)).collect();
    objects.extend(sigmas.iter().cloned());
    (sigmas, objects)
}

fn ext_routes(s: &MorObject, g: &MorObject, t2: &siltloc::algebra::Alg) -> Result<usize, String> {
    let d = ok(mor_ext1_resolution(s, g))?.dim;
    let h = ok(mor_ext1_homotopy(s, g))?.dim;
    let t = ok(t2_ext1_dim(s, g, t2))?;
    ensure!(d == h && h == t, "resolution {d}, homotopy {h}, T2 {t}");
    Ok(d)
}

fn ext_oracles() -> Verdict {
    let mut hist = [0usize; 8];
    let mut pairs = 0;
    for name in NAMES {
        let t2 = ok(t2_algebra(&load(name).unwrap().alg))?;
        let (sigmas, objects) = corpus_objects(name);
        for s in &sigmas {
            for g in &objects {
                let d = ext_routes(s, g, &t2).map_err(|e| format!("{name}: {e}"))?;
                hist[d.min(7)] += 1;
                pairs += 1;
            }
        }
    }
    let corpus_pairs = pairs;
    let t2s: Vec<_> = NAMES.iter().map(|n| t2_algebra(&load(n).unwrap().alg).unwrap()).collect();
    for seed in 0..240u64 {
        let (s, g) = random_pair(seed);
        ensure!(s.algebra().field() == Field::Prime(5), "seed {seed}: not over F5");
        let d = ext_routes(&s, &g, &t2s[(seed % 4) as usize]).map_err(|e| format!("seed {seed}: {e}"))?;
        hist[d.min(7)] += 1;
        pairs += 1;
    }
    Ok(format!("{corpus_pairs} corpus pairs, {} random pairs, Ext1 dims {hist:?}", pairs - corpus_pairs))
}

fn perp_biconditional() -> Verdict {
    let mut checked = 0;
    for name in NAMES {
        let c = load(name).unwrap();
        let (_, objects) = corpus_objects(name);
        for (set, maps) in &c.sigma_sets {
            let zs: Vec<MorObject> = maps.iter().map(MorObject::from_sigma).collect();
            for (k, g) in objects.iter().enumerate() {
                let mut vanish = true;
                for z in &zs {
                    vanish &= ok(mor_ext1_resolution(z, g))?.dim == 0;
                }
                ensure!(perp_membership(maps, g) == vanish, "{name}/{set}: object {k}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} memberships"))
}

fn census_of(n: usize) -> Result<Census, String> {
    let a = ok(linear_algebra(n, Field::Prime(2)))?;
    ok(census(&a, &regular_dims(&a), true))
}

fn census_counts(censuses: &[Census]) -> Verdict {
    let found: Vec<usize> = censuses.iter().map(|c| c.classes.len()).collect();
    ensure!(found == [5, 14], "classes {found:?}, expected [5, 14]");
    let out = cmd_silting("kA2", None, true, Some(2));
    ensure!(out.text.contains("5 silting classes"), "CLI census: {}", out.text);
    Ok(format!("kA2 {} classes, kA3 {} classes", found[0], found[1]))
}

fn transfer(censuses: &[Census]) -> Verdict {
    let mut checked = 0;
    for (n, c) in censuses.iter().enumerate() {
        let t2 = ok(t2_algebra(c.indecomposables[0].algebra()))?;
        for cand in &c.candidates {
            let r = ok(transfer_report(cand, &t2))?;
            ensure!(r.agrees(), "A{}: {:?}", n + 2, cand.omega);
            checked += 1;
        }
    }
    Ok(format!("{checked} candidates"))
}

fn radical_and_nilpotent() -> Verdict {
    let c = load("kA2").unwrap();
    let rad = c.sigma("rad").unwrap();
    let r = ok(normal_forms(&ok(localisation_presentation(&c.alg, std::slice::from_ref(rad)))?, 6))?;
    ensure!(r.stabilised && r.dim == Some(4), "cohnloc: {}", r.render());
    let l = ok(finite_quotient(&r))?;
    ensure!(full_matrix_size(&l.algebra) == Some(2), "cohnloc quotient is not M2(k)");
    let e = ok(silting_ring_epi(c.module("S1").unwrap(), rad, ReflectCaps::default(), &c.module_list()))?;
    ensure!(e.hom.target.dim() == 4 && full_matrix_size(&e.hom.target) == Some(2), "ring epi target");
    ensure!(centre_dim(&e.hom.target) == 1, "target not simple");
    ensure!(
        factors_through(&l.hom, &e.hom) == Some(true) && factors_through(&e.hom, &l.hom) == Some(true),
        "the two epimorphisms are not equivalent"
    );

    let d = load("dual_numbers").unwrap();
    let x = d.sigma("x").unwrap();
    let r = ok(normal_forms(&ok(localisation_presentation(&d.alg, std::slice::from_ref(x)))?, 6))?;
    ensure!(r.stabilised && r.dim == Some(0), "dual numbers cohnloc: {}", r.render());
    let e = ok(ring_epi_of_presentation(x, ReflectCaps::default(), &d.module_list()))?;
    ensure!(e.hom.target.dim() == 0, "dual numbers ring epi dim {}", e.hom.target.dim());
    Ok("M2(k) by both routes, zero ring by both routes".into())
}

fn agreement_pipeline() -> Verdict {
    let mut out = String::new();
    let mut non_injective = false;
    for name in ["kA2", "kA3"] {
        let c = load(name).unwrap();
        let inds = c.module_list();
        for (set, maps) in &c.sigma_sets {
            let s = ok(SigmaSet::new(&c.alg, maps.clone()))?;
            let r = ok(agreement(&s, &inds, ApproxCaps::default())).map_err(|e| format!("{name}/{set}: {e}"))?;
            ensure!(r.agrees(), "{name}/{set}: tables differ");
            non_injective |= maps.iter().any(|m| !m.is_injective());
            let _ = write!(out, "{name}/{set} ");
        }
    }
    ensure!(non_injective, "no non-injective sigma exercised");
    let cli = cmd_agreement("kA2", "kill1", (32, 10_000));
    ensure!(cli.status == Status::Ok, "CLI agreement: {}", cli.text);
    Ok(out.trim_end().to_string())
}

fn partial_tilting_and_divergence() -> Verdict {
    let c = load("kA3").unwrap();
    let s1 = c.module("S1").unwrap().clone();
    let gens = vec![s1.clone(), c.module("S2").unwrap().clone()];
    let (t1, _) = ok(partial_tilting_from_set(&c.alg, &gens, ApproxCaps::default()))?;
    let m110 = c.module_list().into_iter().find(|m| m.dims() == [1, 1, 0]).ok_or("no (1,1,0) module")?;
    let expect = direct_sum(&[s1, m110]).module;
    ensure!(ok(is_isomorphic(&t1, &expect))?.is_some(), "T1 has dims {:?}", t1.dims());
    let inds = c.module_list();
    ensure!(inds.len() == 6, "{} indecomposables", inds.len());
    for x in &inds {
        ensure!(in_perp1(&gens, x) == in_perp1(std::slice::from_ref(&t1), x), "perp1 differs at {:?}", x.dims());
        let left = |g: &[siltloc::algebra::FDModule]| {
            g.iter().all(|m| in_perp1(std::slice::from_ref(x), m) && in_perp0(std::slice::from_ref(x), m))
        };
        ensure!(left(&gens) == left(std::slice::from_ref(&t1)), "left perp differs at {:?}", x.dims());
    }
    let k = load("kronecker").unwrap();
    let r = k.module("R").unwrap().clone();
    match approx_sequence(std::slice::from_ref(&r), &r, ApproxCaps { iterations: 10, total_dim: 10_000 }) {
        Err(Error::Diverged { steps: 10, trace, .. }) => {
            Ok(format!("T1 dims {:?}, Kronecker trace {trace:?}", t1.dims()))
        }
        other => Err(format!("Kronecker: {:?}", other.map(|s| s.middle.dims().to_vec()))),
    }
}

fn torsionfree_counts() -> Verdict {
    let mut out = String::new();
    for name in NAMES {
        let c = load(name).unwrap();
        for (set, maps) in &c.sigma_sets {
            let s = ok(SigmaSet::new(&c.alg, maps.clone()))?;
            let t = ok(tf_consistency(&s, 6))?;
            ensure!(t.agrees(), "{name}/{set}: {:?} vs {:?}", t.full.counts(), t.reduced.counts());
            let _ = write!(out, "{name}/{set}:{:?} ", t.full.counts());
        }
    }
    let d = load("dual_numbers").unwrap();
    let s = ok(SigmaSet::new(&d.alg, vec![d.sigma("x").unwrap().clone()]))?;
    let red = ok(torsion_reduce(&s))?;
    ensure!(red.quotient.algebra.dim() == 0, "A_TF has dim {}", red.quotient.algebra.dim());
    Ok(out.trim_end().to_string())
}

fn flat_epi_construction() -> Verdict {
    let c = load("kA2").unwrap();
    let inds = c.module_list();
    let e = ok(silting_ring_epi(c.module("S1").unwrap(), c.sigma("rad").unwrap(), ReflectCaps::default(), &inds))?;
    let r = ok(silting_from_flat_epi(&e.hom, &inds, true))?;
    ensure!(r.candidate.silting, "not silting");
    let p1s1 = direct_sum(&[c.module("P1").unwrap().clone(), c.module("S1").unwrap().clone()]).module;
    ensure!(gen_membership(&r.candidate.module, &inds) == gen_membership(&p1s1, &inds), "Gen class differs");
    ensure!(r.xb_agree && r.divisible_agree && r.gen_agree, "membership tables differ");
    let table: Vec<bool> = e.hom.b_module_table(&inds);
    Ok(format!("T dims {:?}, X_B {table:?}", r.candidate.module.dims()))
}

fn tor_extension_closure() -> Verdict {
    let mut checked = 0;
    let mut vanishing = 0;
    for name in NAMES {
        let c = load(name).unwrap();
        let inds = c.module_list();
        let mut homs: Vec<RingHom> = vec![ok(RingHom::identity(&c.alg))?, ok(radical_quotient_epi(&c.alg))?.hom];
        for v in 0..c.alg.n_vertices() {
            homs.push(ok(idempotent_quotient_epi(&c.alg, &[v], &inds))?.hom);
        }
        for (_, maps) in &c.sigma_sets {
            if let Ok(e) = ring_epi_of_presentation(&combined(maps), ReflectCaps::default(), &inds) {
                homs.push(e.hom);
            }
        }
        for f in &homs {
            ensure!(f.tor1_vanishes == extension_closed(f, &inds), "{name}: target dim {}", f.target.dim());
            checked += 1;
            vanishing += f.tor1_vanishes as usize;
        }
    }
    Ok(format!("{checked} ring maps, {vanishing} with vanishing Tor1"))
}

fn cli_reports() -> String {
    let mut out = String::new();
    for o in [
        cmd_check("kA3"),
        cmd_localize("kA2", "rad", 6, true),
        cmd_ringepi("kA3", "s2_rad1", (64, 4096)),
        cmd_agreement("kA3", "s2_rad1", (32, 10_000)),
        cmd_agreement("dual_numbers", "x", (32, 10_000)),
    ] {
        let _ = writeln!(out, "{}\n{}", o.status as i32, o.text);
    }
    out
}

fn guarded(f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let start = Instant::now();
    let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    (v, start.elapsed())
}

struct Row {
    name: &'static str,
    budget: Duration,
    verdict: Verdict,
    elapsed: Duration,
}

fn suite() -> Vec<Row> {
    let mut rows = Vec::new();
    let mut push = |name, secs, (verdict, elapsed): (Verdict, Duration)| {
        rows.push(Row { name, budget: Duration::from_secs(secs), verdict, elapsed });
    };
    push("Ext1 oracle equivalence", 30, guarded(ext_oracles));
    push("perp membership biconditional", 5, guarded(perp_biconditional));
    let start = Instant::now();
    let censuses = catch_unwind(|| census_of(2).and_then(|a| census_of(3).map(|b| vec![a, b])))
        .unwrap_or_else(|_| Err("census panicked".into()));
    let census_time = start.elapsed();
    let (v, t) = match &censuses {
        Ok(c) => guarded(|| census_counts(c)),
        Err(e) => (Err(e.clone()), Duration::ZERO),
    };
    push("silting census", 120, (v, t + census_time));
    let (v, t) = match &censuses {
        Ok(c) => guarded(|| transfer(c)),
        Err(e) => (Err(e.clone()), Duration::ZERO),
    };
    push("transfer to T2(A)", 120, (v, t));
    push("radical and nilpotent localisations", 5, guarded(radical_and_nilpotent));
    push("agreement pipeline", 60, guarded(agreement_pipeline));
    push("partial tilting from a set", 10, guarded(partial_tilting_and_divergence));
    push("torsion-free reduction counts", 30, guarded(torsionfree_counts));
    push("flat epimorphism construction", 10, guarded(flat_epi_construction));
    push("Tor1 and extension closure", 30, guarded(tor_extension_closure));
    rows
}

fn render(rows: &[Row], cli: &str) -> String {
    let mut out = String::new();
    for (k, r) in rows.iter().enumerate() {
        let _ = writeln!(out, "{} {:?}", k + 1, r.verdict);
    }
    out.push_str(cli);
    out
}

fn main() {
    let mut failed = 0;
    let mut line = |k: usize, name: &str, pass: bool, detail: &str| {
        failed += !pass as usize;
        println!("{} criterion {k:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    };

    let start = Instant::now();
    let first = suite();
    let first_report = render(&first, &cli_reports());
    for (k, r) in first.iter().enumerate() {
        let secs = r.elapsed.as_secs_f64();
        let (pass, detail) = match &r.verdict {
            Ok(d) if r.elapsed <= r.budget => (true, format!("{d} ({secs:.1}s)")),
            Ok(d) => (false, format!("{d} but took {secs:.1}s, budget {}s", r.budget.as_secs())),
            Err(e) => (false, format!("{e} ({secs:.1}s)")),
        };
        line(k + 1, r.name, pass, &detail);
    }

    set_sequential(true);
    let second = suite();
    let second_report = render(&second, &cli_reports());
    set_sequential(false);
    let total = start.elapsed();
    let same = first_report == second_report;
    let detail =
        format!("{} report bytes, parallel then sequential run, {:.1}s total", first_report.len(), total.as_secs_f64());
    line(11, "determinism", same && total <= Duration::from_secs(300), &detail);

    if failed > 0 {
        std::process::exit(1);
    }
}
