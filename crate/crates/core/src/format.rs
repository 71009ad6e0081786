//! Plain-text algebra files.
//!
//! ```text
//! # comment
//! field F5
//! quiver
//!   vertices 2
//!   a: 1 -> 2
//! relations
//!   b.a - d.c
//! module S1
//!   dims 1 0
//!   a = [1 0; 0 1]
//! sigma rad
//!   domain 2
//!   codomain 1
//!   entry 1 1: a
//! sigmaset both: rad kill1
//! indecomposables complete
//! ```
//!
//! Vertices are numbered from 1. A path `b.a` means "first a, then b"; `e3` is the
//! trivial path at vertex 3. Arrow matrices have shape `dim(target) x dim(source)`;
//! omitted arrows act by zero. `entry j i` of a sigma is the component from the
//! i-th domain summand to the j-th codomain summand, an element of `e_{d_i} A e_{c_j}`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    algebra_from_quiver, format_combination, parse_combination, Alg, Arrow, FDModule, Quiver, Relation,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::ProjMap;
use crate::matrix::Matrix;

/// Length cap used when building algebras from files.
pub const PATH_LENGTH_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleSpec {
    pub dims: Vec<usize>,
    pub arrows: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaSpec {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    /// `(j, i, value)`, 0-based, sorted.
    pub entries: Vec<(usize, usize, Relation)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub modules: Vec<(String, ModuleSpec)>,
    pub sigmas: Vec<(String, SigmaSpec)>,
    pub sigma_sets: Vec<(String, Vec<String>)>,
    pub indecomposables_complete: bool,
}

/// A loaded document: the algebra with its named modules and maps.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    pub alg: Alg,
    pub modules: Vec<(String, FDModule)>,
    pub sigmas: Vec<(String, ProjMap)>,
    pub sigma_sets: Vec<(String, Vec<ProjMap>)>,
    pub indecomposables_complete: bool,
}

impl Corpus {
    pub fn module(&self, name: &str) -> Option<&FDModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
    pub fn sigma(&self, name: &str) -> Option<&ProjMap> {
        self.sigmas.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
    pub fn sigma_set(&self, name: &str) -> Option<&[ProjMap]> {
        self.sigma_sets.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_slice())
    }
    pub fn module_list(&self) -> Vec<FDModule> {
        self.modules.iter().map(|(_, m)| m.clone()).collect()
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn parse_usize(tok: &str, line: usize, col: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| perr(line, col, format!("expected a number, found {tok:?}")))
}

fn parse_vertex(tok: &str, n: usize, line: usize, col: usize) -> Result<usize> {
    let v = parse_usize(tok, line, col)?;
    if v == 0 || v > n {
        return Err(perr(line, col, format!("vertex {v} out of range 1..{n}")));
    }
    Ok(v - 1)
}

fn parse_matrix(field: Field, s: &str, rows: usize, cols: usize, line: usize, col: usize) -> Result<Matrix> {
    let s = s.trim();
    if s == "0" {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(line, col, "matrix must be written [a b; c d] or 0"))?;
    let mut data = Vec::new();
    let mut shape_rows = 0;
    if !inner.trim().is_empty() {
        for row in inner.split(';') {
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != cols {
                return Err(perr(line, col, format!("expected {cols} entries per row, found {}", toks.len())));
            }
            for t in toks {
                data.push(field.parse(t).ok_or_else(|| perr(line, col, format!("bad scalar {t:?}")))?);
            }
            shape_rows += 1;
        }
    }
    if shape_rows != rows && rows * cols != 0 {
        return Err(perr(line, col, format!("expected {rows} rows, found {shape_rows}")));
    }
    if rows * cols == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    Ok(Matrix::from_data(field, rows, cols, data))
}

struct Block<'a> {
    line: usize,
    head: &'a str,
    body: Vec<(usize, usize, &'a str)>,
}

pub fn parse(text: &str) -> Result<Document> {
    let mut blocks: Vec<Block> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if indent == 0 {
            blocks.push(Block { line, head: content.trim(), body: Vec::new() });
        } else {
            let b = blocks.last_mut().ok_or_else(|| perr(line, 1, "indented line outside a block"))?;
            b.body.push((line, indent + 1, content.trim()));
        }
    }
    let mut field = None;
    let mut quiver: Option<Quiver> = None;
    let mut rel_lines: Vec<(usize, usize, &str)> = Vec::new();
    let mut module_blocks = Vec::new();
    let mut sigma_blocks = Vec::new();
    let mut sigma_sets = Vec::new();
    let mut complete = false;
    for b in &blocks {
        let mut words = b.head.split_whitespace();
        let kw = words.next().unwrap_or("");
        match kw {
            "field" => {
                let name = words.next().ok_or_else(|| perr(b.line, 7, "missing field name"))?;
                field = Some(if name == "Q" {
                    Field::Rationals
                } else {
                    let p = name
                        .strip_prefix('F')
                        .and_then(|p| p.parse::<u32>().ok())
                        .ok_or_else(|| perr(b.line, 7, format!("unknown field {name:?}")))?;
                    Field::prime(p).map_err(|e| perr(b.line, 7, e.to_string()))?
                });
            }
            "quiver" => {
                let mut n = None;
                let mut arrows = Vec::new();
                for &(line, col, l) in &b.body {
                    if let Some(rest) = l.strip_prefix("vertices") {
                        n = Some(parse_usize(rest.trim(), line, col + 9)?);
                    } else {
                        let (name, ends) =
                            l.split_once(':').ok_or_else(|| perr(line, col, "expected `name: src -> tgt`"))?;
                        let (s, t) = ends.split_once("->").ok_or_else(|| perr(line, col, "expected `src -> tgt`"))?;
                        let nv = n.ok_or_else(|| perr(line, col, "`vertices` must come before arrows"))?;
                        arrows.push(Arrow {
                            name: name.trim().to_string(),
                            source: parse_vertex(s.trim(), nv, line, col)?,
                            target: parse_vertex(t.trim(), nv, line, col)?,
                        });
                    }
                }
                let nv = n.ok_or_else(|| perr(b.line, 1, "quiver without `vertices`"))?;
                quiver = Some(Quiver::new(nv, arrows).map_err(|e| perr(b.line, 1, e.to_string()))?);
            }
            "relations" => rel_lines.extend(b.body.iter().copied()),
            "module" => module_blocks.push(b),
            "sigma" => sigma_blocks.push(b),
            "sigmaset" => {
                let rest = b.head["sigmaset".len()..].trim();
                let (name, members) =
                    rest.split_once(':').ok_or_else(|| perr(b.line, 10, "expected `sigmaset name: s1 s2`"))?;
                sigma_sets.push((
                    name.trim().to_string(),
                    members.split_whitespace().map(str::to_string).collect::<Vec<_>>(),
                ));
            }
            "indecomposables" => {
                if words.next() != Some("complete") {
                    return Err(perr(b.line, 17, "expected `indecomposables complete`"));
                }
                complete = true;
            }
            other => return Err(perr(b.line, 1, format!("unknown section {other:?}"))),
        }
    }
    let field = field.ok_or_else(|| perr(1, 1, "missing `field` line"))?;
    let quiver = quiver.ok_or_else(|| perr(1, 1, "missing `quiver` section"))?;
    let mut relations = Vec::new();
    for (line, col, l) in rel_lines {
        relations.push(parse_combination(&quiver, field, l).map_err(|e| perr(line, col, e.to_string()))?);
    }
    let mut modules = Vec::new();
    for b in module_blocks {
        let name = b.head["module".len()..].trim().to_string();
        if name.is_empty() {
            return Err(perr(b.line, 8, "module needs a name"));
        }
        let mut dims = None;
        let mut arrows: Vec<Option<Matrix>> = vec![None; quiver.arrows.len()];
        for &(line, col, l) in &b.body {
            if let Some(rest) = l.strip_prefix("dims") {
                let d: Vec<usize> =
                    rest.split_whitespace().map(|t| parse_usize(t, line, col)).collect::<Result<_>>()?;
                if d.len() != quiver.n {
                    return Err(perr(line, col, format!("expected {} dimensions", quiver.n)));
                }
                dims = Some(d);
            } else {
                let (an, m) = l.split_once('=').ok_or_else(|| perr(line, col, "expected `arrow = [..]`"))?;
                let d = dims.as_ref().ok_or_else(|| perr(line, col, "`dims` must come first"))?;
                let a = quiver
                    .arrow_index(an.trim())
                    .ok_or_else(|| perr(line, col, format!("unknown arrow {:?}", an.trim())))?;
                let (s, t) = (quiver.arrows[a].source, quiver.arrows[a].target);
                arrows[a] = Some(parse_matrix(field, m, d[t], d[s], line, col + an.len() + 1)?);
            }
        }
        let dims = dims.ok_or_else(|| perr(b.line, 1, "module without `dims`"))?;
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.unwrap_or_else(|| Matrix::zeros(field, dims[quiver.arrows[a].target], dims[quiver.arrows[a].source]))
            })
            .collect();
        modules.push((name, ModuleSpec { dims, arrows }));
    }
    let mut sigmas = Vec::new();
    for b in sigma_blocks {
        let name = b.head["sigma".len()..].trim().to_string();
        let mut domain = Vec::new();
        let mut codomain = Vec::new();
        let mut entries = Vec::new();
        for &(line, col, l) in &b.body {
            if let Some(rest) = l.strip_prefix("domain") {
                domain =
                    rest.split_whitespace().map(|t| parse_vertex(t, quiver.n, line, col)).collect::<Result<_>>()?;
            } else if let Some(rest) = l.strip_prefix("codomain") {
                codomain =
                    rest.split_whitespace().map(|t| parse_vertex(t, quiver.n, line, col)).collect::<Result<_>>()?;
            } else if let Some(rest) = l.strip_prefix("entry") {
                let (pos, val) = rest.split_once(':').ok_or_else(|| perr(line, col, "expected `entry j i: value`"))?;
                let ij: Vec<usize> =
                    pos.split_whitespace().map(|t| parse_usize(t, line, col)).collect::<Result<_>>()?;
                if ij.len() != 2 || ij[0] == 0 || ij[1] == 0 || ij[0] > codomain.len() || ij[1] > domain.len() {
                    return Err(perr(line, col, "entry position out of range"));
                }
                let value = parse_combination(&quiver, field, val).map_err(|e| perr(line, col, e.to_string()))?;
                entries.push((ij[0] - 1, ij[1] - 1, value));
            } else {
                return Err(perr(line, col, format!("unexpected line {l:?}")));
            }
        }
        entries.sort_by_key(|(j, i, _)| (*j, *i));
        sigmas.push((name, SigmaSpec { domain, codomain, entries }));
    }
    Ok(Document { field, quiver, relations, modules, sigmas, sigma_sets, indecomposables_complete: complete })
}

impl Document {
    /// Builds the algebra and realises every module and map.
    pub fn build(&self, name: &str) -> Result<Corpus> {
        let alg: Alg = Arc::new(algebra_from_quiver(&self.quiver, &self.relations, self.field, PATH_LENGTH_CAP)?);
        let mut modules = Vec::new();
        for (n, spec) in &self.modules {
            let m = FDModule::from_arrows(&alg, spec.dims.clone(), &spec.arrows)
                .map_err(|e| Error::InvalidModule(format!("{n}: {e}")))?;
            modules.push((n.clone(), m));
        }
        let pres = alg.presentation().expect("built from a quiver");
        let mut sigmas = Vec::new();
        for (n, spec) in &self.sigmas {
            let mut grid = vec![vec![alg.zero_vec(); spec.domain.len()]; spec.codomain.len()];
            for (j, i, r) in &spec.entries {
                grid[*j][*i] = pres.reduce_combination(r);
            }
            let pm = ProjMap::new(&alg, spec.domain.clone(), spec.codomain.clone(), grid)
                .map_err(|e| Error::InvalidInput(format!("{n}: {e}")))?;
            sigmas.push((n.clone(), pm));
        }
        let mut sigma_sets = Vec::new();
        for (n, members) in &self.sigma_sets {
            let mut set = Vec::new();
            for m in members {
                let s = sigmas
                    .iter()
                    .find(|(k, _)| k == m)
                    .ok_or_else(|| Error::InvalidInput(format!("sigmaset {n} names unknown sigma {m}")))?;
                set.push(s.1.clone());
            }
            sigma_sets.push((n.clone(), set));
        }
        if self.sigma_sets.is_empty() {
            for (n, s) in &sigmas {
                sigma_sets.push((n.clone(), vec![s.clone()]));
            }
        }
        Ok(Corpus {
            name: name.to_string(),
            alg,
            modules,
            sigmas,
            sigma_sets,
            indecomposables_complete: self.indecomposables_complete,
        })
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Matrix) -> fmt::Result {
    write!(f, "[")?;
    for r in 0..m.rows() {
        if r > 0 {
            write!(f, "; ")?;
        }
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        write!(f, "{}", row.join(" "))?;
    }
    write!(f, "]")
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "quiver")?;
        writeln!(f, "  vertices {}", self.quiver.n)?;
        for a in &self.quiver.arrows {
            writeln!(f, "  {}: {} -> {}", a.name, a.source + 1, a.target + 1)?;
        }
        if !self.relations.is_empty() {
            writeln!(f, "relations")?;
            for r in &self.relations {
                writeln!(f, "  {}", format_combination(&self.quiver, r))?;
            }
        }
        for (name, m) in &self.modules {
            writeln!(f, "module {name}")?;
            let d: Vec<String> = m.dims.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  dims {}", d.join(" "))?;
            for (a, mat) in m.arrows.iter().enumerate() {
                if mat.rows() * mat.cols() > 0 && !mat.is_zero() {
                    write!(f, "  {} = ", self.quiver.arrows[a].name)?;
                    write_matrix(f, mat)?;
                    writeln!(f)?;
                }
            }
        }
        for (name, s) in &self.sigmas {
            writeln!(f, "sigma {name}")?;
            let d: Vec<String> = s.domain.iter().map(|x| (x + 1).to_string()).collect();
            let c: Vec<String> = s.codomain.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "  domain {}", d.join(" "))?;
            writeln!(f, "  codomain {}", c.join(" "))?;
            for (j, i, r) in &s.entries {
                writeln!(f, "  entry {} {}: {}", j + 1, i + 1, format_combination(&self.quiver, r))?;
            }
        }
        for (name, members) in &self.sigma_sets {
            writeln!(f, "sigmaset {name}: {}", members.join(" "))?;
        }
        if self.indecomposables_complete {
            writeln!(f, "indecomposables complete")?;
        }
        Ok(())
    }
}
