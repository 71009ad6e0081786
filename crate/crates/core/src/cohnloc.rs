//! Universal localisation at the level of presentations: adjoin the entries of
//! inverse matrices as new arrows and compute normal forms by bounded
//! completion of the rewriting system.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Alg, BasisTag, FDAlgebra, Path};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homalg::ProjMap;
use crate::matrix::Matrix;
use crate::morcat::t2_algebra;
use crate::ringepi::{torsion_reduce, Quotient, RingHom};
use crate::torsion::SigmaSet;

/// A path in the quiver of symbols; `syms` in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub tail: usize,
    pub head: usize,
    pub syms: Vec<usize>,
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.syms.len(), &self.syms, self.tail).cmp(&(o.syms.len(), &o.syms, o.tail))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Word {
    pub fn trivial(v: usize) -> Word {
        Word { tail: v, head: v, syms: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.syms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }
}

/// A linear combination of words, largest word last.
pub type Poly = BTreeMap<Word, Scalar>;

fn add_term(p: &mut Poly, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn add_poly(p: &mut Poly, q: &Poly, s: &Scalar) {
    for (w, c) in q {
        add_term(p, w.clone(), s * c);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Generators and relations of a ring given by a quiver: trivial paths are the
/// vertex idempotents, symbols are arrows, relations are homogeneous.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub field: Field,
    pub n: usize,
    pub symbols: Vec<Symbol>,
    /// The first `arrows` symbols come from the algebra; the rest are inverse entries.
    pub arrows: usize,
    pub relations: Vec<Poly>,
    /// Image of each basis element of the source algebra.
    pub source_basis: Vec<Poly>,
    /// Presentation vertex of each source vertex.
    pub source_vertices: Vec<usize>,
    /// Maps whose inverses have been adjoined.
    pub inverted: Vec<ProjMap>,
    source: Alg,
}

impl RingPresentation {
    /// The presentation `kQ/I` an algebra was built from. Relations are
    /// `p - (normal form of p)` for every non-basis path up to the nilpotency index.
    pub fn of_algebra(alg: &Alg) -> Result<RingPresentation> {
        let pres =
            alg.presentation().ok_or_else(|| Error::InvalidInput("algebra has no quiver presentation".into()))?;
        let q = &pres.quiver;
        let f = alg.field();
        let symbols: Vec<Symbol> =
            q.arrows.iter().map(|a| Symbol { name: a.name.clone(), source: a.source, target: a.target }).collect();
        let word = |p: &Path| Word { tail: p.tail, head: p.head, syms: p.arrows.clone() };
        let source_basis: Vec<Poly> = pres.basis_paths.iter().map(|p| Poly::from([(word(p), f.one())])).collect();
        let mut relations = Vec::new();
        for len in 1..=pres.nilpotency {
            for p in q.paths_of_length(len) {
                if pres.basis_paths.contains(&p) {
                    continue;
                }
                let mut r = Poly::from([(word(&p), f.one())]);
                for (b, c) in pres.reduce(&p).iter().enumerate() {
                    add_poly(&mut r, &source_basis[b], &-c);
                }
                relations.push(r);
            }
        }
        Ok(RingPresentation {
            field: f,
            n: q.n,
            arrows: symbols.len(),
            symbols,
            relations,
            source_basis,
            source_vertices: (0..q.n).collect(),
            inverted: Vec::new(),
            source: alg.clone(),
        })
    }

    /// `T2(A)` as two copies of the quiver of `A` joined by arrows `c'v` from
    /// each source-side vertex to its target-side twin, with commutativity relations.
    pub fn of_t2(alg: &Alg, t2: &Alg) -> Result<RingPresentation> {
        let base = RingPresentation::of_algebra(alg)?;
        let (n, m, d) = (base.n, base.arrows, alg.dim());
        if t2.dim() != 3 * d || t2.n_vertices() != 2 * n {
            return Err(Error::DimensionMismatch("algebra is not the triangular ring of the base".into()));
        }
        let f = base.field;
        let mut symbols = base.symbols.clone();
        for s in &base.symbols {
            symbols.push(Symbol { name: format!("{}'", s.name), source: n + s.source, target: n + s.target });
        }
        for v in 0..n {
            symbols.push(Symbol { name: format!("c'{}", v + 1), source: v, target: n + v });
        }
        let lift = |p: &Poly, side: usize| -> Poly {
            p.iter()
                .map(|(w, c)| {
                    let syms = w.syms.iter().map(|&s| s + side * m).collect();
                    (Word { tail: w.tail + side * n, head: w.head + side * n, syms }, c.clone())
                })
                .collect()
        };
        let mut relations: Vec<Poly> = Vec::new();
        for r in &base.relations {
            relations.push(lift(r, 0));
            relations.push(lift(r, 1));
        }
        for (a, s) in base.symbols.iter().enumerate() {
            let mut r = Poly::new();
            add_term(&mut r, Word { tail: s.source, head: n + s.target, syms: vec![a, 2 * m + s.target] }, f.one());
            add_term(
                &mut r,
                Word { tail: s.source, head: n + s.target, syms: vec![2 * m + s.source, m + a] },
                -f.one(),
            );
            relations.push(r);
        }
        let mut source_basis: Vec<Poly> = base.source_basis.iter().map(|p| lift(p, 0)).collect();
        source_basis.extend(base.source_basis.iter().map(|p| lift(p, 1)));
        for b in 0..d {
            let h = alg.corner(b).0;
            let p = lift(&base.source_basis[b], 0)
                .into_iter()
                .map(|(mut w, c)| {
                    w.syms.push(2 * m + h);
                    w.head = n + h;
                    (w, c)
                })
                .collect();
            source_basis.push(p);
        }
        Ok(RingPresentation {
            field: f,
            n: 2 * n,
            arrows: symbols.len(),
            symbols,
            relations,
            source_basis,
            source_vertices: (0..2 * n).collect(),
            inverted: Vec::new(),
            source: t2.clone(),
        })
    }

    /// `A/I` presented by the quiver and relations of `A` together with a basis of `I`.
    pub fn of_quotient(alg: &Alg, q: &Quotient) -> Result<RingPresentation> {
        let mut p = RingPresentation::of_algebra(alg)?;
        let f = p.field;
        for x in &q.ideal {
            let mut r = Poly::new();
            for (b, c) in x.iter().enumerate() {
                add_poly(&mut r, &p.source_basis[b], c);
            }
            if !r.is_empty() {
                p.relations.push(r);
            }
        }
        let k = q.algebra.dim();
        let mut basis = Vec::with_capacity(k);
        for i in 0..k {
            let unit: Vec<Scalar> = (0..k).map(|j| if j == i { f.one() } else { f.zero() }).collect();
            let b = (0..alg.dim())
                .find(|&b| q.projection.column(b) == unit)
                .ok_or_else(|| Error::InvalidInput("quotient basis element has no standard lift".into()))?;
            basis.push(p.source_basis[b].clone());
        }
        let mut verts = vec![0; q.algebra.n_vertices()];
        for (old, new) in q.vertices.iter().enumerate() {
            if let Some(v) = new {
                verts[*v] = old;
            }
        }
        p.source_basis = basis;
        p.source_vertices = verts;
        p.source = q.algebra.clone();
        Ok(p)
    }

    pub fn source(&self) -> &Alg {
        &self.source
    }

    /// An element of the source algebra as a combination of words.
    pub fn element(&self, x: &[Scalar]) -> Poly {
        let mut p = Poly::new();
        for (b, c) in x.iter().enumerate() {
            add_poly(&mut p, &self.source_basis[b], c);
        }
        p
    }

    /// `u * v`: first `v`, then `u`.
    pub fn mul_words(&self, u: &Word, v: &Word) -> Option<Word> {
        if v.head != u.tail {
            return None;
        }
        let mut syms = v.syms.clone();
        syms.extend_from_slice(&u.syms);
        Some(Word { tail: v.tail, head: u.head, syms })
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (u, a) in p {
            for (v, b) in q {
                if let Some(w) = self.mul_words(u, v) {
                    add_term(&mut out, w, a * b);
                }
            }
        }
        out
    }

    /// Adjoins the entries of an inverse of each map. For `σ` with matrix
    /// `M` (`M[i][j]` the entry from domain summand `i` to codomain summand `j`)
    /// the new symbols `N[j][i]` satisfy `M N = 1` and `N M = 1` entrywise.
    pub fn localise(&self, sigmas: &[ProjMap]) -> Result<RingPresentation> {
        let mut p = self.clone();
        let f = p.field;
        for sigma in sigmas {
            if **sigma.algebra() != *self.source {
                return Err(Error::InvalidInput("map is not over the presented algebra".into()));
            }
            let k = p.inverted.len() + 1;
            let dom: Vec<usize> = sigma.domain.iter().map(|&v| self.source_vertices[v]).collect();
            let cod: Vec<usize> = sigma.codomain.iter().map(|&v| self.source_vertices[v]).collect();
            let single = dom.len() == 1 && cod.len() == 1;
            let mut inv: Vec<Vec<Poly>> = Vec::with_capacity(cod.len());
            for (j, &w) in cod.iter().enumerate() {
                let mut row = Vec::with_capacity(dom.len());
                for (i, &v) in dom.iter().enumerate() {
                    let name = if single { format!("inv{k}") } else { format!("inv{k}_{}_{}", j + 1, i + 1) };
                    p.symbols.push(Symbol { name, source: v, target: w });
                    let w = Word { tail: v, head: w, syms: vec![p.symbols.len() - 1] };
                    row.push(Poly::from([(w, f.one())]));
                }
                inv.push(row);
            }
            let m: Vec<Vec<Poly>> =
                (0..dom.len()).map(|i| (0..cod.len()).map(|j| self.element(sigma.entry(j, i))).collect()).collect();
            for (i, &ci) in dom.iter().enumerate() {
                for i2 in 0..dom.len() {
                    let mut r = Poly::new();
                    for j in 0..cod.len() {
                        add_poly(&mut r, &p.mul(&m[i][j], &inv[j][i2]), &f.one());
                    }
                    if i == i2 {
                        add_term(&mut r, Word::trivial(ci), -f.one());
                    }
                    if !r.is_empty() {
                        p.relations.push(r);
                    }
                }
            }
            for (j, &dj) in cod.iter().enumerate() {
                for j2 in 0..cod.len() {
                    let mut r = Poly::new();
                    for i in 0..dom.len() {
                        add_poly(&mut r, &p.mul(&inv[j][i], &m[i][j2]), &f.one());
                    }
                    if j == j2 {
                        add_term(&mut r, Word::trivial(dj), -f.one());
                    }
                    if !r.is_empty() {
                        p.relations.push(r);
                    }
                }
            }
            p.inverted.push(sigma.clone());
        }
        Ok(p)
    }

    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            return format!("e{}", w.tail + 1);
        }
        w.syms.iter().rev().map(|&s| self.symbols[s].name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn poly_string(&self, p: &Poly) -> String {
        let mut out = String::new();
        for (k, (w, c)) in p.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() || (-c).is_one() { (true, -c) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mag.is_one() {
                out.push_str(&self.word_name(w));
            } else {
                let _ = write!(out, "{mag}*{}", self.word_name(w));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Plain-text dump: symbols, then one relation per line (each `= 0`).
    pub fn dump(&self) -> String {
        let mut out = format!("field {}\nvertices {}\n", self.field, self.n);
        for (k, s) in self.symbols.iter().enumerate() {
            let kind = if k < self.arrows { "arrow" } else { "inverse" };
            let _ = writeln!(out, "{kind} {}: {} -> {}", s.name, s.source + 1, s.target + 1);
        }
        for r in &self.relations {
            let _ = writeln!(out, "relation {}", self.poly_string(r));
        }
        out
    }
}

/// `A` localised at `Σ`, as a presentation.
pub fn localisation_presentation(alg: &Alg, sigmas: &[ProjMap]) -> Result<RingPresentation> {
    RingPresentation::of_algebra(alg)?.localise(sigmas)
}

/// A rewriting system: each rule rewrites its leading word, and words through a
/// killed vertex are zero.
#[derive(Clone, Debug)]
struct System {
    one: Scalar,
    src: Vec<usize>,
    tgt: Vec<usize>,
    rules: Vec<(Word, Poly)>,
    killed: Vec<bool>,
}

impl System {
    fn new(p: &RingPresentation) -> System {
        System {
            one: p.field.one(),
            src: p.symbols.iter().map(|s| s.source).collect(),
            tgt: p.symbols.iter().map(|s| s.target).collect(),
            rules: Vec::new(),
            killed: vec![false; p.n],
        }
    }

    fn dead(&self, w: &Word) -> bool {
        self.killed[w.tail] || w.syms.iter().any(|&s| self.killed[self.tgt[s]])
    }

    fn word(&self, syms: Vec<usize>) -> Word {
        Word { tail: self.src[syms[0]], head: self.tgt[*syms.last().unwrap()], syms }
    }

    fn find(&self, w: &Word, skip: Option<usize>) -> Option<(usize, usize)> {
        for (r, (lead, _)) in self.rules.iter().enumerate() {
            if Some(r) == skip || lead.len() > w.len() {
                continue;
            }
            if let Some(pos) = w.syms.windows(lead.len()).position(|s| s == lead.syms.as_slice()) {
                return Some((r, pos));
            }
        }
        None
    }

    fn splice(&self, w: &Word, pos: usize, len: usize, u: &Word) -> Word {
        let mut syms = w.syms[..pos].to_vec();
        syms.extend_from_slice(&u.syms);
        syms.extend_from_slice(&w.syms[pos + len..]);
        if syms.is_empty() {
            Word::trivial(u.tail)
        } else {
            self.word(syms)
        }
    }

    fn reduce(&self, mut p: Poly, skip: Option<usize>) -> Poly {
        let mut out = Poly::new();
        while let Some((w, c)) = p.pop_last() {
            if self.dead(&w) {
                continue;
            }
            match self.find(&w, skip) {
                Some((r, pos)) => {
                    let (lead, rhs) = &self.rules[r];
                    for (u, d) in rhs {
                        add_term(&mut p, self.splice(&w, pos, lead.len(), u), &c * d);
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    fn rule_poly(&self, r: usize) -> Poly {
        let (lead, rhs) = &self.rules[r];
        let mut p: Poly = rhs.iter().map(|(w, c)| (w.clone(), -c)).collect();
        p.insert(lead.clone(), self.one.clone());
        p
    }

    /// Adds a reduced nonzero polynomial as a rule (or kills a vertex).
    fn insert(&mut self, mut p: Poly) {
        let (lead, c) = p.pop_last().expect("nonzero polynomial");
        if lead.is_empty() {
            self.killed[lead.tail] = true;
            return;
        }
        let s = -c.inv();
        let rhs = p.into_iter().map(|(w, d)| (w, &d * &s)).collect();
        self.rules.push((lead, rhs));
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = None;
            for r in 0..self.rules.len() {
                let p = self.rule_poly(r);
                let red = self.reduce(p.clone(), Some(r));
                if red != p {
                    changed = Some((r, red));
                    break;
                }
            }
            match changed {
                Some((r, red)) => {
                    self.rules.remove(r);
                    if !red.is_empty() {
                        self.insert(red);
                    }
                }
                None => break,
            }
        }
        self.rules.sort_by(|a, b| a.0.cmp(&b.0));
    }
}

const MAX_ROUNDS: usize = 10_000;

struct Completion {
    system: System,
    /// Some relation or overlap is longer than the bound.
    exceeded: bool,
}

fn complete(p: &RingPresentation, bound: usize) -> Completion {
    let mut sys = System::new(p);
    let mut pending: Vec<Poly> = p.relations.clone();
    let mut exceeded = p.relations.iter().any(|r| r.keys().any(|w| w.len() > bound));
    for _ in 0..MAX_ROUNDS {
        for r in std::mem::take(&mut pending) {
            let red = sys.reduce(r, None);
            if !red.is_empty() {
                sys.insert(red);
                sys.interreduce();
            }
        }
        let mut deferred = false;
        for (u, ru) in &sys.rules {
            for (v, rv) in &sys.rules {
                for k in 1..u.len().min(v.len()) {
                    if u.syms[u.len() - k..] != v.syms[..k] {
                        continue;
                    }
                    if u.len() + v.len() - k > bound {
                        deferred = true;
                        continue;
                    }
                    let mut s = Poly::new();
                    for (w, c) in ru {
                        let mut syms = w.syms.clone();
                        syms.extend_from_slice(&v.syms[k..]);
                        add_term(&mut s, sys.word(syms), c.clone());
                    }
                    for (w, c) in rv {
                        let mut syms = u.syms[..u.len() - k].to_vec();
                        syms.extend_from_slice(&w.syms);
                        add_term(&mut s, sys.word(syms), -c);
                    }
                    let red = sys.reduce(s, None);
                    if !red.is_empty() {
                        pending.push(red);
                    }
                }
            }
        }
        if pending.is_empty() {
            return Completion { system: sys, exceeded: exceeded || deferred };
        }
    }
    exceeded = true;
    Completion { system: sys, exceeded }
}

/// Normal words by degree after bounded completion.
#[derive(Clone, Debug)]
pub struct NormalFormReport {
    pub bound: usize,
    /// Normal words of each degree `0..=bound`.
    pub words: Vec<Vec<Word>>,
    pub stabilised: bool,
    pub dim: Option<usize>,
    /// Completion needed relations or overlaps longer than the bound.
    pub exceeded: bool,
    pub presentation: RingPresentation,
    system: System,
}

impl NormalFormReport {
    pub fn counts(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Normal form of a combination of words.
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.system.reduce(p.clone(), None)
    }

    pub fn rules(&self) -> Vec<String> {
        let p = &self.presentation;
        self.system
            .rules
            .iter()
            .map(|(lead, rhs)| format!("{} -> {}", p.word_name(lead), p.poly_string(rhs)))
            .chain(self.system.killed.iter().enumerate().filter(|(_, k)| **k).map(|(v, _)| format!("e{} -> 0", v + 1)))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, ws) in self.words.iter().enumerate() {
            let names: Vec<String> = ws.iter().map(|w| self.presentation.word_name(w)).collect();
            let _ = writeln!(out, "degree {k}: {} [{}]", ws.len(), names.join(", "));
        }
        match self.dim {
            Some(d) => {
                let _ = writeln!(out, "stabilised, dim {d}");
            }
            None if self.exceeded => {
                let _ = writeln!(out, "bound {} exceeded, {} normal forms so far", self.bound, self.total());
            }
            None => {
                let _ = writeln!(out, "not stabilised at bound {}", self.bound);
            }
        }
        out
    }
}

/// Bounded completion with deglex order (arrows before inverse symbols) and the
/// normal words up to degree `bound`.
pub fn normal_forms(p: &RingPresentation, bound: usize) -> Result<NormalFormReport> {
    if bound == 0 {
        return Err(Error::InvalidInput("degree bound must be at least 1".into()));
    }
    let Completion { system, exceeded } = complete(p, bound);
    let mut words: Vec<Vec<Word>> = vec![(0..p.n).filter(|&v| !system.killed[v]).map(Word::trivial).collect()];
    for k in 1..=bound {
        let mut next = Vec::new();
        for w in &words[k - 1] {
            for (s, sym) in p.symbols.iter().enumerate() {
                if sym.source != w.head || system.killed[sym.target] {
                    continue;
                }
                let mut syms = w.syms.clone();
                syms.push(s);
                let len = syms.len();
                let reducible =
                    system.rules.iter().any(|(lead, _)| lead.len() <= len && syms[len - lead.len()..] == lead.syms[..]);
                if !reducible {
                    next.push(Word { tail: w.tail, head: sym.target, syms });
                }
            }
        }
        next.sort();
        words.push(next);
    }
    let stabilised = !exceeded && (0..bound).any(|k| words[k].is_empty() && words[k + 1].is_empty());
    let dim = stabilised.then(|| words.iter().map(Vec::len).sum());
    Ok(NormalFormReport { bound, words, stabilised, dim, exceeded, presentation: p.clone(), system })
}

/// The finite-dimensional localisation with its ring map and invertibility witnesses.
#[derive(Clone, Debug)]
pub struct CohnLocalisation {
    pub algebra: Alg,
    pub hom: RingHom,
    pub basis: Vec<Word>,
    /// `A_Σ ⊗ σ` is bijective, for each inverted `σ`.
    pub witnesses: Vec<bool>,
}

fn coordinates(p: &Poly, index: &HashMap<Word, usize>, f: Field) -> Result<Vec<Scalar>> {
    let mut v = vec![f.zero(); index.len()];
    for (w, c) in p {
        let k = index.get(w).ok_or_else(|| Error::OracleDisagreement("normal form outside the basis".into()))?;
        v[*k] = c.clone();
    }
    Ok(v)
}

pub fn finite_quotient(report: &NormalFormReport) -> Result<CohnLocalisation> {
    if !report.stabilised {
        return Err(Error::NotStabilised);
    }
    let p = &report.presentation;
    let f = p.field;
    let basis: Vec<Word> = report.words.iter().flatten().cloned().collect();
    let index: HashMap<Word, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let d = basis.len();
    let mut table = vec![vec![vec![f.zero(); d]; d]; d];
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            if let Some(w) = p.mul_words(u, v) {
                table[i][j] = coordinates(&report.reduce(&Poly::from([(w, f.one())])), &index, f)?;
            }
        }
    }
    let mut next = 0;
    let tags: Vec<BasisTag> = basis
        .iter()
        .map(|w| {
            if w.is_empty() {
                next += 1;
                BasisTag::Idempotent(next - 1)
            } else {
                BasisTag::Other
            }
        })
        .collect();
    let labels = basis.iter().map(|w| p.word_name(w)).collect();
    let alg: Alg = Arc::new(FDAlgebra::from_table(f, labels, tags, &table, None)?);
    let cols: Vec<Vec<Scalar>> =
        p.source_basis.iter().map(|x| coordinates(&report.reduce(x), &index, f)).collect::<Result<_>>()?;
    let matrix = Matrix::from_columns(f, d, &cols);
    let hom = RingHom::new(p.source(), &alg, matrix)?;
    let witnesses = p.inverted.iter().map(|s| invertibility_check(&hom, s)).collect();
    Ok(CohnLocalisation { algebra: alg, hom, basis, witnesses })
}

/// `B ⊗_A σ: ⊕ B f(e_{c_i}) -> ⊕ B f(e_{d_j})` is bijective.
pub fn invertibility_check(f: &RingHom, sigma: &ProjMap) -> bool {
    let b = &f.target;
    let k = b.field();
    let db = b.dim();
    if db == 0 {
        return true;
    }
    let src = &f.source;
    let piece = |v: usize| b.right_of(&f.apply(&src.basis_vec(src.idempotent(v)))).image_basis();
    let dom: Vec<Matrix> = sigma.domain.iter().map(|&v| piece(v)).collect();
    let cod_dim: usize = sigma.codomain.iter().map(|&v| piece(v).cols()).sum();
    let dom_dim: usize = dom.iter().map(Matrix::cols).sum();
    if dom_dim != cod_dim {
        return false;
    }
    if dom_dim == 0 {
        return true;
    }
    let (p, q) = (sigma.domain.len(), sigma.codomain.len());
    let mut big = Matrix::zeros(k, q * db, p * db);
    for j in 0..q {
        for i in 0..p {
            big.set_block(j * db, i * db, &b.right_of(&f.apply(sigma.entry(j, i))));
        }
    }
    let refs: Vec<&Matrix> = dom.iter().collect();
    let u = Matrix::block_diag(k, &refs);
    big.mul(&u).rank() == dom_dim
}

/// The unique `h: A_Σ -> C` with `h f = g`, when `g` inverts every `σ`.
/// `None` when some `g ⊗ σ` has no inverse.
pub fn factorisation(loc: &CohnLocalisation, presentation: &RingPresentation, g: &RingHom) -> Result<Option<Matrix>> {
    let src = presentation.source();
    if *g.source != **src {
        return Err(Error::InvalidInput("ring map has a different source".into()));
    }
    let c = &g.target;
    let k = c.field();
    let dc = c.dim();
    let one_at = |v: usize| g.apply(&src.basis_vec(src.idempotent(v)));
    let mut vertex_image: Vec<Vec<Scalar>> = vec![vec![k.zero(); dc]; presentation.n];
    for (sv, &pv) in presentation.source_vertices.iter().enumerate() {
        vertex_image[pv] = one_at(sv);
    }
    let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(presentation.symbols.len());
    for s in 0..presentation.arrows {
        let sym = &presentation.symbols[s];
        let w = Word { tail: sym.source, head: sym.target, syms: vec![s] };
        let target = Poly::from([(w, k.one())]);
        let b = presentation
            .source_basis
            .iter()
            .position(|p| *p == target)
            .ok_or_else(|| Error::InvalidInput(format!("arrow {} is not a basis element", sym.name)))?;
        images.push(g.apply(&src.basis_vec(b)));
    }
    for sigma in &presentation.inverted {
        let (p, q) = (sigma.domain.len(), sigma.codomain.len());
        let unknowns = q * p * dc;
        let at = |j: usize, i: usize| (j * p + i) * dc;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        let m = |i: usize, j: usize| g.apply(sigma.entry(j, i));
        // M N = 1 on the domain
        for i in 0..p {
            for i2 in 0..p {
                let mut block = Matrix::zeros(k, dc, unknowns);
                for j in 0..q {
                    block.set_block(0, at(j, i2), &c.left_of(&m(i, j)));
                }
                let target = if i == i2 { one_at(sigma.domain[i]) } else { vec![k.zero(); dc] };
                rows.extend((0..dc).map(|r| block.row(r)));
                rhs.extend(target);
            }
        }
        // N M = 1 on the codomain
        for j in 0..q {
            for j2 in 0..q {
                let mut block = Matrix::zeros(k, dc, unknowns);
                for i in 0..p {
                    block.set_block(0, at(j, i), &c.right_of(&m(i, j2)));
                }
                let target = if j == j2 { one_at(sigma.codomain[j]) } else { vec![k.zero(); dc] };
                rows.extend((0..dc).map(|r| block.row(r)));
                rhs.extend(target);
            }
        }
        // each entry lies in its corner
        for j in 0..q {
            for i in 0..p {
                let proj = c.left_of(&one_at(sigma.codomain[j])).mul(&c.right_of(&one_at(sigma.domain[i])));
                let mut block = Matrix::zeros(k, dc, unknowns);
                block.set_block(0, at(j, i), &proj.sub(&Matrix::identity(k, dc)));
                rows.extend((0..dc).map(|r| block.row(r)));
                rhs.extend(vec![k.zero(); dc]);
            }
        }
        if unknowns == 0 {
            if rhs.iter().any(|s| !s.is_zero()) {
                return Ok(None);
            }
            images.extend(std::iter::repeat_n(Vec::new(), p * q));
            continue;
        }
        let a = Matrix::from_rows(k, unknowns, &rows);
        let sol = match a.solve(&Matrix::column_vector(k, &rhs)) {
            Ok(s) => s,
            Err(Error::Inconsistent) => return Ok(None),
            Err(e) => return Err(e),
        };
        if sol.nullspace.cols() != 0 {
            return Err(Error::OracleDisagreement("inverse entries are not unique".into()));
        }
        let x = sol.particular.column(0);
        for j in 0..q {
            for i in 0..p {
                images.push(x[at(j, i)..at(j, i) + dc].to_vec());
            }
        }
    }
    let word_image = |w: &Word| -> Vec<Scalar> {
        let mut acc = vertex_image[w.tail].clone();
        for &s in &w.syms {
            acc = c.mul(&images[s], &acc);
        }
        acc
    };
    let cols: Vec<Vec<Scalar>> = loc.basis.iter().map(word_image).collect();
    let h = Matrix::from_columns(k, dc, &cols);
    let b = &loc.algebra;
    let multiplicative = (0..b.dim())
        .all(|i| (0..b.dim()).all(|j| h.mul_vec(&b.left_mul(i).column(j)) == c.mul(&h.column(i), &h.column(j))));
    if !multiplicative || h.mul(&loc.hom.matrix) != g.matrix || h.mul_vec(&b.one()) != c.one() {
        return Err(Error::OracleDisagreement("induced map on the localisation is not a ring map".into()));
    }
    Ok(Some(h))
}

/// Per-degree normal-form counts of `T2(A)` localised at presentations of the
/// `Z_σ` and at `0 -> Z_{id_A}`, against those of `A_Σ`.
#[derive(Clone, Debug)]
pub struct T2Factorisation {
    pub t2_counts: Vec<usize>,
    pub base_counts: Vec<usize>,
    pub t2_dim: Option<usize>,
    pub base_dim: Option<usize>,
}

impl T2Factorisation {
    pub fn agrees(&self) -> bool {
        self.t2_counts == self.base_counts && self.t2_dim == self.base_dim
    }
}

/// The monomorphic presentation `⊕ T e_{n+c_i} -> ⊕ T e_{c_i} ⊕ ⊕ T e_{n+d_j}` of `Z_σ`.
pub fn t2_presentation_map(sigma: &ProjMap, t2: &Alg) -> Result<ProjMap> {
    let alg = sigma.algebra();
    let (n, d) = (alg.n_vertices(), alg.dim());
    let f = alg.field();
    let (p, q) = (sigma.domain.len(), sigma.codomain.len());
    let domain: Vec<usize> = sigma.domain.iter().map(|&v| n + v).collect();
    let mut codomain = sigma.domain.clone();
    codomain.extend(sigma.codomain.iter().map(|&w| n + w));
    let mut entries = vec![vec![vec![f.zero(); 3 * d]; p]; p + q];
    for i in 0..p {
        entries[i][i][2 * d + alg.idempotent(sigma.domain[i])] = f.one();
    }
    for j in 0..q {
        for i in 0..p {
            for (b, x) in sigma.entry(j, i).iter().enumerate() {
                entries[p + j][i][d + b] = -x;
            }
        }
    }
    ProjMap::new(t2, domain, codomain, entries)
}

pub fn t2_factorisation_check(alg: &Alg, sigmas: &[ProjMap], bound: usize) -> Result<T2Factorisation> {
    let t2 = t2_algebra(alg)?;
    let n = alg.n_vertices();
    let mut taus: Vec<ProjMap> = sigmas.iter().map(|s| t2_presentation_map(s, &t2)).collect::<Result<_>>()?;
    taus.push(ProjMap::new(&t2, Vec::new(), (0..n).collect(), vec![Vec::new(); n])?);
    let top = normal_forms(&RingPresentation::of_t2(alg, &t2)?.localise(&taus)?, bound)?;
    let base = normal_forms(&localisation_presentation(alg, sigmas)?, bound)?;
    if top.exceeded || base.exceeded {
        return Err(Error::BoundExceeded { bound });
    }
    Ok(T2Factorisation { t2_counts: top.counts(), base_counts: base.counts(), t2_dim: top.dim, base_dim: base.dim })
}

/// Normal-form counts of `A_Σ` and of `(A_TF)_{Σ_TF}`.
#[derive(Clone, Debug)]
pub struct TfConsistency {
    pub full: NormalFormReport,
    pub reduced: NormalFormReport,
    pub quotient_dim: usize,
}

impl TfConsistency {
    pub fn agrees(&self) -> bool {
        self.full.counts() == self.reduced.counts()
    }
}

pub fn tf_consistency(s: &SigmaSet, bound: usize) -> Result<TfConsistency> {
    let alg = s.algebra();
    let full = normal_forms(&localisation_presentation(alg, s.maps())?, bound)?;
    let r = torsion_reduce(s)?;
    let reduced = normal_forms(&RingPresentation::of_quotient(alg, &r.quotient)?.localise(r.sigmas.maps())?, bound)?;
    Ok(TfConsistency { full, reduced, quotient_dim: r.quotient.algebra.dim() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;
    use crate::ringepi::{full_matrix_size, ring_epi_of_presentation, ReflectCaps};

    #[test]
    fn plain_algebras() {
        let c = load("kA2").unwrap();
        let r = normal_forms(&RingPresentation::of_algebra(&c.alg).unwrap(), 5).unwrap();
        assert_eq!(r.dim, Some(3));
        let l = finite_quotient(&r).unwrap();
        assert!(l.hom.matrix.is_invertible());
        let c = load("kA3").unwrap();
        let r = normal_forms(&localisation_presentation(&c.alg, &[]).unwrap(), 6).unwrap();
        assert_eq!(r.dim, Some(6));
    }

    #[test]
    fn radical_map_of_a2() {
        let c = load("kA2").unwrap();
        let rad = c.sigma("rad").unwrap().clone();
        let p = localisation_presentation(&c.alg, std::slice::from_ref(&rad)).unwrap();
        let r = normal_forms(&p, 6).unwrap();
        assert_eq!(r.counts()[..3], [2, 2, 0]);
        assert_eq!(r.dim, Some(4));
        let l = finite_quotient(&r).unwrap();
        assert_eq!(full_matrix_size(&l.algebra), Some(2));
        assert_eq!(l.witnesses, vec![true]);
        assert!(l.hom.epimorphism && l.hom.tor1_vanishes);
        assert!(!invertibility_check(&RingHom::identity(&c.alg).unwrap(), &rad));
        let e = ring_epi_of_presentation(&rad, ReflectCaps::default(), &c.module_list()).unwrap();
        assert!(invertibility_check(&e.hom, &rad));
        let h = factorisation(&l, &p, &e.hom).unwrap().unwrap();
        assert!(h.is_invertible());
        assert_eq!(factorisation(&l, &p, &RingHom::identity(&c.alg).unwrap()).unwrap(), None);
    }

    #[test]
    fn nilpotent_collapses() {
        let d = load("dual_numbers").unwrap();
        let p = localisation_presentation(&d.alg, &[d.sigma("x").unwrap().clone()]).unwrap();
        let r = normal_forms(&p, 4).unwrap();
        assert_eq!(r.dim, Some(0));
        assert_eq!(finite_quotient(&r).unwrap().algebra.dim(), 0);
    }

    #[test]
    fn identity_and_empty_maps() {
        let c = load("kA2").unwrap();
        let id = c.sigma("id1").unwrap().clone();
        let r = normal_forms(&localisation_presentation(&c.alg, &[id]).unwrap(), 5).unwrap();
        assert_eq!(r.dim, Some(3));
        let kill = c.sigma("kill1").unwrap().clone();
        let r = normal_forms(&localisation_presentation(&c.alg, &[kill]).unwrap(), 5).unwrap();
        assert_eq!(r.dim, Some(1));
        assert!(finite_quotient(&r).unwrap().witnesses[0]);
    }

    #[test]
    fn t2_presentation_and_factorisation() {
        let c = load("kA2").unwrap();
        let t2 = t2_algebra(&c.alg).unwrap();
        let r = normal_forms(&RingPresentation::of_t2(&c.alg, &t2).unwrap(), 6).unwrap();
        assert_eq!(r.dim, Some(9));
        let l = finite_quotient(&r).unwrap();
        assert!(l.hom.matrix.is_invertible());
        let rad = c.sigma("rad").unwrap().clone();
        let tau = t2_presentation_map(&rad, &t2).unwrap();
        assert!(tau.is_injective());
        let z = crate::morcat::mor_to_t2(&crate::morcat::MorObject::from_sigma(&rad), &t2).unwrap();
        assert!(crate::algebra::is_isomorphic(&tau.cokernel().0, &z).unwrap().is_some());
        for sigmas in [vec![], vec![rad]] {
            let t = t2_factorisation_check(&c.alg, &sigmas, 6).unwrap();
            assert!(t.agrees(), "{t:?}");
        }
    }

    #[test]
    fn dump_lists_relations() {
        let c = load("kA2").unwrap();
        let p = localisation_presentation(&c.alg, &[c.sigma("rad").unwrap().clone()]).unwrap();
        let d = p.dump();
        assert!(d.contains("inverse inv1: 2 -> 1"));
        assert!(d.contains("relation a.inv1 - e2"));
        assert!(d.contains("relation inv1.a - e1"));
    }
}
