//! Command-line front end: corpus loading, the subcommands, and plain-text reports.
//!
//! Every command returns an [`Outcome`]; reports are deterministic.

use std::fmt::Write as _;
use std::path::Path;

use siltloc::algebra::{Alg, FDModule};
use siltloc::cohnloc::{finite_quotient, localisation_presentation, normal_forms};
use siltloc::corpus;
use siltloc::format::{parse, Corpus};
use siltloc::homalg::{minimal_presentation, ApproxCaps, ProjMap};
use siltloc::morcat::{
    mapping_cone_extension, mor_ext1_homotopy, mor_ext1_resolution, t2_algebra, t2_ext1_dim, MorObject,
};
use siltloc::ringepi::{agreement, ring_epi_of_presentation, ReflectCaps, RingHom};
use siltloc::silting::{census, SiltingCandidate};
use siltloc::torsion::{torsion_report, DivisibleStrategy, SigmaSet};
use siltloc::{Error, Scalar};

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// An internal assertion failed.
    Failed = 1,
    /// Parse errors, unknown names, bad arguments.
    Input = 2,
    /// A bounded computation hit its caps.
    Diverged = 3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

impl Outcome {
    fn new(text: String, ok: bool) -> Outcome {
        Outcome { text, status: if ok { Status::Ok } else { Status::Failed } }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        let status = match e {
            Error::Diverged { .. } | Error::Divergent { .. } | Error::NotStabilised | Error::BoundExceeded { .. } => {
                Status::Diverged
            }
            _ => Status::Input,
        };
        let mut text = format!("error: {e}\n");
        if let Error::Diverged { trace, .. } | Error::Divergent { trace, .. } = &e {
            let _ = writeln!(text, "trace: {trace:?}");
        }
        Outcome { text, status }
    }
}

/// Runs a command body, turning errors into outcomes.
pub fn run(f: impl FnOnce() -> Result<Outcome, Error>) -> Outcome {
    f().unwrap_or_else(Outcome::from)
}

/// Reads an algebra file, or a bundled corpus entry when no such file exists.
pub fn load(arg: &str) -> Result<Corpus, Error> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return parse(&text)?.build(name);
    }
    if corpus::source(arg).is_some() {
        return corpus::load(arg);
    }
    Err(Error::InvalidInput(format!("no file or bundled corpus named {arg}")))
}

/// Parses `STEPS,DIM`.
pub fn parse_caps(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidInput(format!("caps must be STEPS,DIM, found {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// A sigma set or single sigma by name.
fn sigmas(c: &Corpus, name: &str) -> Result<Vec<ProjMap>, Error> {
    if let Some(s) = c.sigma_set(name) {
        return Ok(s.to_vec());
    }
    c.sigma(name)
        .map(|s| vec![s.clone()])
        .ok_or_else(|| Error::InvalidInput(format!("no sigma or sigmaset named {name}")))
}

fn module<'a>(c: &'a Corpus, name: &str) -> Result<&'a FDModule, Error> {
    c.module(name).ok_or_else(|| Error::InvalidInput(format!("no module named {name}")))
}

fn combined(maps: &[ProjMap], alg: &Alg) -> ProjMap {
    if maps.is_empty() {
        return ProjMap::zero(alg, Vec::new(), Vec::new());
    }
    ProjMap::direct_sum(&maps.iter().collect::<Vec<_>>())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dims(m: &FDModule) -> String {
    let d: Vec<String> = m.dims().iter().map(|x| x.to_string()).collect();
    format!("({})", d.join(","))
}

fn vertices(vs: &[usize]) -> String {
    if vs.is_empty() {
        return "0".into();
    }
    vs.iter().map(|v| format!("P{}", v + 1)).collect::<Vec<_>>().join("+")
}

/// A vector in the basis of `alg`, written with its labels.
pub fn format_element(alg: &Alg, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (b, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative() || (-c).is_one();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(alg.label(b));
        } else {
            let _ = write!(out, "{mag}*{}", alg.label(b));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Nonzero products of basis elements.
pub fn structure_constants(alg: &Alg) -> String {
    let mut out = String::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let p = alg.left_mul(i).column(j);
            if p.iter().any(|s| !s.is_zero()) {
                let _ = writeln!(out, "  {} * {} = {}", alg.label(i), alg.label(j), format_element(alg, &p));
            }
        }
    }
    out
}

fn ring_map(f: &RingHom) -> String {
    let mut out = String::new();
    for a in 0..f.source.dim() {
        let _ = writeln!(out, "  {} -> {}", f.source.label(a), format_element(&f.target, &f.matrix.column(a)));
    }
    let _ = writeln!(out, "epimorphism: {}", yn(f.epimorphism));
    let _ = writeln!(out, "Tor1 dim: {}", f.tor1_dim);
    out
}

fn max_dims(c: &Corpus) -> usize {
    c.modules.iter().flat_map(|(_, m)| m.dims().to_vec()).max().unwrap_or(0)
}

/// Validation report: the algebra axioms, the radical, and the file round trip.
pub fn cmd_check(file: &str) -> Outcome {
    run(|| {
        let text = if Path::new(file).exists() {
            std::fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("{file}: {e}")))?
        } else {
            corpus::source(file)
                .ok_or_else(|| Error::InvalidInput(format!("no file or bundled corpus named {file}")))?
                .to_string()
        };
        let doc = parse(&text)?;
        let c = doc.build(file)?;
        let alg = &c.alg;
        let mut out = String::new();
        let _ = writeln!(out, "field {}", alg.field());
        let _ = writeln!(out, "vertices {}, dimension {}", alg.n_vertices(), alg.dim());
        let _ = writeln!(out, "associativity: ok");
        let _ = writeln!(out, "idempotents: {} orthogonal, sum 1", alg.n_vertices());
        let nil = alg.presentation().map(|p| p.nilpotency).unwrap_or(0);
        let _ = writeln!(out, "radical: dim {}, nilpotent of index {nil}", alg.radical_indices().len());
        let round = parse(&doc.to_string())? == doc;
        let _ = writeln!(out, "round trip: {}", if round { "ok" } else { "FAIL" });
        for (n, m) in &c.modules {
            let _ = writeln!(out, "module {n} {}", dims(m));
        }
        for (n, s) in &c.sigmas {
            let _ = writeln!(out, "sigma {n}: {} -> {}", vertices(&s.domain), vertices(&s.codomain));
        }
        Ok(Outcome::new(out, round))
    })
}

/// Verdicts on one module with its minimal presentation, or the census with `--enumerate`.
pub fn cmd_silting(file: &str, module_name: Option<&str>, enumerate: bool, dim_bound: Option<usize>) -> Outcome {
    run(|| {
        let c = load(file)?;
        let inds = c.module_list();
        let list = c.indecomposables_complete.then_some(inds.as_slice());
        let mut out = String::new();
        if enumerate {
            let n = c.alg.n_vertices();
            let bound = match dim_bound {
                Some(b) => vec![b; n],
                None => siltloc::silting::regular_dims(&c.alg),
            };
            let complete = c.indecomposables_complete && bound.iter().all(|&b| b >= max_dims(&c));
            let cen = census(&c.alg, &bound, complete)?;
            let _ = writeln!(out, "{} indecomposables", cen.indecomposables.len());
            let _ = writeln!(out, "{} candidates", cen.candidates.len());
            let _ = writeln!(out, "{} silting classes", cen.classes.len());
            for cand in cen.candidates.iter().filter(|k| k.silting) {
                let parts: Vec<String> = cen
                    .indecomposables
                    .iter()
                    .zip(siltloc::silting::gen_membership(&cand.module, &cen.indecomposables))
                    .filter(|(_, g)| *g)
                    .map(|(m, _)| dims(m))
                    .collect();
                let _ = writeln!(
                    out,
                    "  T {} omega {} -> {} tilting {} Gen {{{}}}",
                    dims(&cand.module),
                    vertices(&cand.omega.domain),
                    vertices(&cand.omega.codomain),
                    yn(cand.tilting),
                    parts.join(" ")
                );
            }
            return Ok(Outcome::new(out, true));
        }
        let name = module_name.ok_or_else(|| Error::InvalidInput("give a module name or --enumerate".into()))?;
        let t = module(&c, name)?;
        let omega = minimal_presentation(t).sigma;
        let k = SiltingCandidate::evaluate(t, &omega, list)?;
        let _ = writeln!(out, "module {name} {}", dims(t));
        let _ = writeln!(out, "presentation {} -> {}", vertices(&omega.domain), vertices(&omega.codomain));
        let _ = writeln!(out, "tau-rigid: {}", yn(k.tau_rigid));
        let _ = writeln!(out, "partial silting: {}", yn(k.partial_silting));
        let _ = writeln!(out, "silting: {}", yn(k.silting));
        let _ = writeln!(out, "partial tilting: {}", yn(k.partial_tilting));
        let _ = writeln!(out, "tilting: {}", yn(k.tilting));
        Ok(Outcome::new(out, true))
    })
}

/// Normal forms of the localisation, the finite quotient when it stabilises, and
/// the invertibility witnesses.
pub fn cmd_localize(file: &str, sigma: &str, bound: usize, dump: bool) -> Outcome {
    run(|| {
        let c = load(file)?;
        let maps = sigmas(&c, sigma)?;
        let p = localisation_presentation(&c.alg, &maps)?;
        let mut out = String::new();
        if dump {
            out.push_str(&p.dump());
        }
        let r = normal_forms(&p, bound)?;
        out.push_str(&r.render());
        if !r.stabilised {
            return Ok(Outcome { text: out, status: Status::Diverged });
        }
        let l = finite_quotient(&r)?;
        let _ = writeln!(out, "structure constants:");
        out.push_str(&structure_constants(&l.algebra));
        let _ = writeln!(out, "map from A:");
        out.push_str(&ring_map(&l.hom));
        for (k, w) in l.witnesses.iter().enumerate() {
            let _ = writeln!(out, "inverts sigma {}: {}", k + 1, yn(*w));
        }
        let ok = l.witnesses.iter().all(|w| *w);
        Ok(Outcome::new(out, ok))
    })
}

/// The ring epimorphism attached to a presentation, with its flags and the
/// membership table of its image of restriction.
pub fn cmd_ringepi(file: &str, sigma: &str, caps: (usize, usize)) -> Outcome {
    run(|| {
        let c = load(file)?;
        let inds = c.module_list();
        let omega = combined(&sigmas(&c, sigma)?, &c.alg);
        let e = ring_epi_of_presentation(&omega, ReflectCaps { steps: caps.0, total_dim: caps.1 }, &inds)?;
        let b = &e.hom.target;
        let mut out = String::new();
        let _ = writeln!(out, "B: dim {}", b.dim());
        let _ = writeln!(out, "reflection steps: {}", e.reflection.trace.len());
        let _ = writeln!(out, "structure constants:");
        out.push_str(&structure_constants(b));
        let _ = writeln!(out, "map from A:");
        out.push_str(&ring_map(&e.hom));
        let _ = writeln!(out, "Tor1 vanishes: {}", yn(e.hom.tor1_vanishes));
        let _ = writeln!(out, "module | Hom(omega,X) bijective | B-module");
        let table = e.hom.b_module_table(&inds);
        let mut ok = true;
        for ((n, _), (x, t)) in c.modules.iter().zip(e.xb.iter().zip(&table)) {
            ok &= x == t;
            let _ = writeln!(out, "{n} | {} | {}", yn(*x), yn(*t));
        }
        Ok(Outcome::new(out, ok))
    })
}

/// Every universal localisation is a silting ring epimorphism: the localising
/// class of `Σ` against the classes read off the silting module built over the
/// triangular ring.
pub fn cmd_agreement(file: &str, sigma: &str, caps: (usize, usize)) -> Outcome {
    run(|| {
        let c = load(file)?;
        let inds = c.module_list();
        let s = SigmaSet::new(&c.alg, sigmas(&c, sigma)?)?;
        let r = agreement(&s, &inds, ApproxCaps { iterations: caps.0, total_dim: caps.1 })?;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "T1 {} with omega {} -> {}",
            dims(&r.module),
            vertices(&r.omega.domain),
            vertices(&r.omega.codomain)
        );
        if let Some(p) = r.partial_tilting {
            let _ = writeln!(out, "partial tilting: {}", yn(p));
        }
        let _ = writeln!(out, "module | X_B | D_sigma | perp0 | perp1 | verdict");
        for ((n, _), row) in c.modules.iter().zip(&r.rows) {
            let p1 = row.perp1.map(yn).unwrap_or("-");
            let v = if row.agrees() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{n} | {} | {} | {} | {p1} | {v}", yn(row.xb), yn(row.divisible), yn(row.perp0));
        }
        let ok = r.agrees();
        let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
        Ok(Outcome::new(out, ok))
    })
}

/// Torsion, torsion-free and divisible parts of one module.
pub fn cmd_torsion(file: &str, sigma: &str, module_name: &str) -> Outcome {
    run(|| {
        let c = load(file)?;
        let s = SigmaSet::new(&c.alg, sigmas(&c, sigma)?)?;
        let x = module(&c, module_name)?;
        let r = torsion_report(&s, x, &DivisibleStrategy::BruteForce { cap: 4096 });
        let mut out = String::new();
        let _ = writeln!(out, "module {module_name} {}", dims(x));
        let _ = writeln!(out, "divisible: {}", yn(r.divisible));
        match r.reduced {
            Some(b) => {
                let _ = writeln!(out, "reduced: {}", yn(b));
            }
            None => {
                let _ = writeln!(out, "reduced: undecided");
            }
        }
        let _ = writeln!(out, "torsion: {}", yn(r.torsion));
        let _ = writeln!(out, "torsion-free: {}", yn(r.torsionfree));
        let _ = writeln!(out, "local: {}", yn(r.is_local()));
        let tp = &r.torsion_part;
        let _ =
            writeln!(out, "torsion part {} after {} steps, quotient {}", dims(&tp.sub), tp.steps, dims(&tp.quotient));
        Ok(Outcome::new(out, true))
    })
}

fn mor_object(c: &Corpus, name: &str) -> Result<MorObject, Error> {
    if let Some(m) = name.strip_prefix("id:") {
        return Ok(MorObject::identity(module(c, m)?));
    }
    if let Some(s) = c.sigma(name) {
        return Ok(MorObject::from_sigma(s));
    }
    let m = name.strip_prefix("0:").unwrap_or(name);
    Ok(MorObject::zero_to(module(c, m)?))
}

/// `Ext^1(Z_σ, Z_g)` by the standard resolution, by homotopy classes, and over
/// the triangular ring. `g` names a sigma, a module `M` (for `0 -> M`) or `id:M`.
pub fn cmd_morcat(file: &str, sigma: &str, g: &str, cone: bool) -> Outcome {
    run(|| {
        let c = load(file)?;
        let s = MorObject::from_sigma(
            c.sigma(sigma).ok_or_else(|| Error::InvalidInput(format!("no sigma named {sigma}")))?,
        );
        let z = mor_object(&c, g)?;
        let t2 = t2_algebra(&c.alg)?;
        let res = mor_ext1_resolution(&s, &z)?;
        let hom = mor_ext1_homotopy(&s, &z)?;
        let tri = t2_ext1_dim(&s, &z, &t2)?;
        let mut out = String::new();
        let _ = writeln!(out, "Ext1 by resolution: {}", res.dim);
        let _ = writeln!(out, "Ext1 by homotopy classes: {}", hom.dim);
        let _ = writeln!(out, "Ext1 over T2(A): {tri}");
        let ok = res.dim == hom.dim && hom.dim == tri;
        let _ = writeln!(out, "{}", if ok { "agree" } else { "DISAGREE" });
        if cone {
            for (k, class) in res.classes.iter().enumerate() {
                let e = mapping_cone_extension(class);
                let _ = writeln!(
                    out,
                    "class {}: cone {} -> {}, splits {}",
                    k + 1,
                    dims(e.cone.source()),
                    dims(e.cone.target()),
                    yn(e.splits())
                );
            }
        }
        Ok(Outcome::new(out, ok))
    })
}
