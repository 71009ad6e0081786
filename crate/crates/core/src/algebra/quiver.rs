//! Quivers, paths, and algebras `kQ/I` for admissible ideals `I`.

use std::collections::HashMap;
use std::fmt;

use super::{BasisTag, FDAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<Arrow>,
}

/// A path. `arrows` lists arrow indices in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub tail: usize,
    pub head: usize,
    pub arrows: Vec<usize>,
}

/// A linear combination of paths.
pub type Relation = Vec<(Scalar, Path)>;

impl Quiver {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        for (k, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidInput(format!("arrow {} has an endpoint out of range", a.name)));
            }
            if arrows[..k].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidInput(format!("duplicate arrow name {}", a.name)));
            }
            if a.name.starts_with('e') && a.name[1..].chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidInput(format!("arrow name {} clashes with idempotents", a.name)));
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Linear quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn linear(n: usize) -> Quiver {
        let arrows =
            (0..n.saturating_sub(1)).map(|i| Arrow { name: format!("a{}", i + 1), source: i, target: i + 1 }).collect();
        Quiver { n, arrows }
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path { tail: v, head: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { tail: ar.source, head: ar.target, arrows: vec![a] }
    }

    /// Builds a path from arrow indices in traversal order.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let first = arrows.first().ok_or_else(|| Error::InvalidInput("empty path".into()))?;
        let mut p = self.arrow_path(*first);
        for &a in &arrows[1..] {
            p = self
                .compose(&self.arrow_path(a), &p)
                .ok_or_else(|| Error::InvalidInput(format!("arrows do not compose at {}", self.arrows[a].name)))?;
        }
        Ok(p)
    }

    /// `p * q`: first `q`, then `p`. `None` when the endpoints do not match.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if q.head != p.tail {
            return None;
        }
        let mut arrows = q.arrows.clone();
        arrows.extend_from_slice(&p.arrows);
        Some(Path { tail: q.tail, head: p.head, arrows })
    }

    /// Parses `e3`, `a`, or `b.a` (composition order: `b.a` is `a` then `b`).
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix('e').and_then(|r| r.parse::<usize>().ok()) {
            if v == 0 || v > self.n {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            return Ok(self.trivial(v - 1));
        }
        let mut idx = Vec::new();
        for name in s.split('.').rev() {
            let name = name.trim();
            idx.push(self.arrow_index(name).ok_or_else(|| Error::InvalidInput(format!("unknown arrow {name}")))?);
        }
        self.path(&idx)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.tail + 1);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// All paths of length exactly `len`, sorted.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut cur: Vec<Path> = (0..self.n).map(|v| self.trivial(v)).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &cur {
                for (a, ar) in self.arrows.iter().enumerate() {
                    if ar.source == p.head {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { tail: p.tail, head: ar.target, arrows });
                    }
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// The quiver-with-relations data an algebra was built from, together with the
/// reduction of every path to the normal-path basis.
#[derive(Clone, Debug)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Paths of this length and longer are zero.
    pub nilpotency: usize,
    pub basis_paths: Vec<Path>,
    reduction: HashMap<Path, Vec<Scalar>>,
    field: Field,
}

impl QuiverPresentation {
    /// Coordinates of a path in the algebra basis.
    pub fn reduce(&self, p: &Path) -> Vec<Scalar> {
        self.reduction.get(p).cloned().unwrap_or_else(|| vec![self.field.zero(); self.basis_paths.len()])
    }

    pub fn reduce_combination(&self, r: &[(Scalar, Path)]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.basis_paths.len()];
        for (c, p) in r {
            for (a, x) in acc.iter_mut().zip(self.reduce(p)) {
                *a = &*a + &(c * &x);
            }
        }
        acc
    }

    pub fn arrow_basis_index(&self, a: usize) -> usize {
        let p = self.quiver.arrow_path(a);
        self.basis_paths.iter().position(|q| *q == p).expect("arrows are normal paths")
    }

    /// Parses `2*b.a - c + 1/2*e1` style expressions.
    pub fn parse_element(&self, s: &str) -> Result<Vec<Scalar>> {
        let terms = parse_combination(&self.quiver, self.field, s)?;
        Ok(self.reduce_combination(&terms))
    }

    pub fn format_relation(&self, r: &[(Scalar, Path)]) -> String {
        format_combination(&self.quiver, r)
    }
}

pub fn format_combination(q: &Quiver, r: &[(Scalar, Path)]) -> String {
    let mut out = String::new();
    for (k, (c, p)) in r.iter().enumerate() {
        let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag.is_one() {
            out.push_str(&q.path_name(p));
        } else {
            out.push_str(&format!("{mag}*{}", q.path_name(p)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a signed sum of `coeff*path` terms; a bare path has coefficient 1.
pub fn parse_combination(q: &Quiver, field: Field, s: &str) -> Result<Vec<(Scalar, Path)>> {
    let mut terms = Vec::new();
    let s = s.trim();
    if s == "0" {
        return Ok(terms);
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            chunks.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            neg ^= ch == '-';
        } else {
            cur.push(ch);
        }
    }
    chunks.push((neg, cur));
    for (neg, chunk) in chunks {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(Error::InvalidInput(format!("empty term in {s:?}")));
        }
        let (coeff, path) = match chunk.split_once('*') {
            Some((c, p)) => (field.parse(c).ok_or_else(|| Error::InvalidInput(format!("bad coefficient {c:?}")))?, p),
            None => (field.one(), chunk),
        };
        let coeff = if neg { -coeff } else { coeff };
        terms.push((coeff, q.parse_path(path)?));
    }
    Ok(terms)
}

/// Path order used for normal forms: longer paths are larger, ties broken lexicographically.
fn path_key(p: &Path) -> (usize, &[usize], usize, usize) {
    (p.arrows.len(), &p.arrows, p.tail, p.head)
}

/// Builds `kQ/(I + J^N)` for the smallest `N <= cap` with `J^N ⊆ I + J^(N+1)`.
pub fn algebra_from_quiver(quiver: &Quiver, relations: &[Relation], field: Field, cap: usize) -> Result<FDAlgebra> {
    for r in relations {
        for (_, p) in r {
            if p.len() < 2 {
                return Err(Error::NotAdmissible(format_combination(quiver, r)));
            }
        }
    }
    let mut by_len: Vec<Vec<Path>> = vec![quiver.paths_of_length(0)];
    for n in 1..=cap {
        by_len.push(quiver.paths_of_length(n));
        // all paths of length <= n, largest first
        let mut cols: Vec<Path> = by_len.iter().flatten().cloned().collect();
        cols.sort_by(|a, b| path_key(b).cmp(&path_key(a)));
        let index: HashMap<Path, usize> = cols.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let ideal = ideal_rows(quiver, relations, field, &by_len, n, &index, cols.len());
        let rank_i = ideal.rank();
        let mut with_top = ideal.clone();
        for p in &by_len[n] {
            let mut row = Matrix::zeros(field, 1, cols.len());
            row.set(0, index[p], field.one());
            with_top = Matrix::vstack(&[&with_top, &row]);
        }
        if with_top.rank() != rank_i {
            continue;
        }
        // J^n ⊆ I + J^(n+1): the algebra is spanned by paths of length < n
        let short: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].len() < n).collect();
        let projected = ideal.select_columns(&short).rref();
        let short_paths: Vec<Path> = short.iter().map(|&i| cols[i].clone()).collect();
        return Ok(build(quiver, relations, field, n, &short_paths, &projected));
    }
    Err(Error::NotFiniteDimensional(cap))
}

fn ideal_rows(
    quiver: &Quiver,
    relations: &[Relation],
    field: Field,
    by_len: &[Vec<Path>],
    n: usize,
    index: &HashMap<Path, usize>,
    ncols: usize,
) -> Matrix {
    let mut rows = Vec::new();
    for r in relations {
        let min_len = r.iter().map(|(_, p)| p.len()).min().unwrap_or(n + 1);
        if min_len > n {
            continue;
        }
        let spare = n - min_len;
        for lu in 0..=spare {
            for lw in 0..=(spare - lu) {
                for u in &by_len[lu] {
                    for w in &by_len[lw] {
                        let mut row = vec![field.zero(); ncols];
                        let mut nonzero = false;
                        for (c, p) in r {
                            let Some(pw) = quiver.compose(p, w) else { continue };
                            let Some(upw) = quiver.compose(u, &pw) else { continue };
                            if let Some(&k) = index.get(&upw) {
                                row[k] = &row[k] + c;
                                nonzero = true;
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(field, 0, ncols);
    }
    let m = Matrix::from_rows(field, ncols, &rows).rref();
    let keep: Vec<usize> = (0..m.rank).collect();
    m.matrix.select_rows(&keep)
}

fn build(
    quiver: &Quiver,
    relations: &[Relation],
    field: Field,
    nilpotency: usize,
    paths: &[Path],
    ideal: &crate::matrix::Rref,
) -> FDAlgebra {
    // Non-pivot columns are the normal paths.
    let normal: Vec<usize> = (0..paths.len()).filter(|c| !ideal.pivots.contains(c)).collect();
    let mut basis_paths: Vec<Path> = normal.iter().map(|&c| paths[c].clone()).collect();
    basis_paths
        .sort_by(|a, b| (!a.is_empty(), a.len(), &a.arrows, a.tail).cmp(&(!b.is_empty(), b.len(), &b.arrows, b.tail)));
    let d = basis_paths.len();
    let pos: HashMap<&Path, usize> = basis_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut reduction: HashMap<Path, Vec<Scalar>> = HashMap::new();
    for (c, p) in paths.iter().enumerate() {
        let mut v = vec![field.zero(); d];
        if let Some(r) = ideal.pivots.iter().position(|&pc| pc == c) {
            for &f in &normal {
                let x = ideal.matrix.get(r, f);
                if !x.is_zero() {
                    v[pos[&paths[f]]] = -x;
                }
            }
        } else {
            v[pos[p]] = field.one();
        }
        reduction.insert(p.clone(), v);
    }

    let zero = vec![field.zero(); d];
    let table: Vec<Vec<Vec<Scalar>>> = basis_paths
        .iter()
        .map(|p| {
            basis_paths
                .iter()
                .map(|q| match quiver.compose(p, q) {
                    Some(pq) => reduction.get(&pq).cloned().unwrap_or_else(|| zero.clone()),
                    None => zero.clone(),
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = basis_paths.iter().map(|p| quiver.path_name(p)).collect();
    let tags: Vec<BasisTag> = basis_paths
        .iter()
        .map(|p| if p.is_empty() { BasisTag::Idempotent(p.tail) } else { BasisTag::Radical })
        .collect();
    let mut generators: Vec<usize> = (0..quiver.n).collect();
    for a in 0..quiver.arrows.len() {
        generators.push(pos[&quiver.arrow_path(a)]);
    }
    let mut alg = FDAlgebra::from_table(field, labels, tags, &table, Some(generators))
        .expect("path algebra quotients satisfy the algebra axioms");
    alg.set_presentation(QuiverPresentation {
        quiver: quiver.clone(),
        relations: relations.to_vec(),
        nilpotency,
        basis_paths,
        reduction,
        field,
    });
    alg
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for a in &self.arrows {
            writeln!(f, "{}: {} -> {}", a.name, a.source + 1, a.target + 1)?;
        }
        Ok(())
    }
}
