//! Exhaustive enumeration over finite fields: representations with a fixed
//! dimension vector, indecomposables up to a bound, and submodules.

use std::collections::HashSet;

use super::iso::{is_indecomposable, is_isomorphic};
use super::module::{FDModule, ModuleHom};
use super::Alg;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::par_range;

/// Largest number of arrow-matrix tuples enumerated for one dimension vector.
const REPRESENTATION_CAP: u64 = 1 << 20;

/// All representations with dimension vector `dims` (quiver algebras over a prime field).
/// Tuples violating the relations are skipped.
pub fn enumerate_representations(alg: &Alg, dims: &[usize]) -> Result<Vec<FDModule>> {
    let pres =
        alg.presentation().ok_or_else(|| Error::InvalidInput("enumeration needs a quiver presentation".into()))?;
    let field = alg.field();
    let p = field.order().ok_or_else(|| Error::InvalidInput("enumeration needs a finite field".into()))?;
    let q = &pres.quiver;
    let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = p
        .checked_pow(entries as u32)
        .filter(|&t| t <= REPRESENTATION_CAP)
        .ok_or_else(|| Error::InvalidInput(format!("{entries} matrix entries over F{p} is too many to enumerate")))?;
    let elems = field.elements();
    let found = par_range(total as usize, |code| {
        let mut code = code as u64;
        let mut mats = Vec::with_capacity(shapes.len());
        for &(r, c) in &shapes {
            let mut data = Vec::with_capacity(r * c);
            for _ in 0..r * c {
                data.push(elems[(code % p) as usize].clone());
                code /= p;
            }
            mats.push(Matrix::from_data(field, r, c, data));
        }
        FDModule::from_arrows(alg, dims.to_vec(), &mats).ok()
    });
    Ok(found.into_iter().flatten().collect())
}

/// Dimension vectors `0 < d <= bound` componentwise, ordered by total dimension then lexicographically.
pub fn dimension_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

/// One representative of each isomorphism class of indecomposables with dimension
/// vector bounded componentwise by `bound`.
pub fn indecomposables_up_to(alg: &Alg, bound: &[usize]) -> Result<Vec<FDModule>> {
    let mut reps: Vec<FDModule> = Vec::new();
    for dv in dimension_vectors(bound) {
        let all = enumerate_representations(alg, &dv)?;
        let flags: Vec<Result<bool>> = crate::par::par_map(&all, is_indecomposable);
        let mut local: Vec<FDModule> = Vec::new();
        'cand: for (m, flag) in all.into_iter().zip(flags) {
            if !flag? {
                continue;
            }
            for r in &local {
                if is_isomorphic(r, &m)?.is_some() {
                    continue 'cand;
                }
            }
            local.push(m);
        }
        reps.extend(local);
    }
    Ok(reps)
}

/// All submodules of `m` with their inclusions (finite fields only), the zero
/// submodule first. Fails with `Undecided` past `cap` submodules.
pub fn submodules(m: &FDModule, cap: usize) -> Result<Vec<(FDModule, ModuleHom)>> {
    let field = m.field();
    let p = field.order().ok_or_else(|| Error::Undecided("submodule enumeration needs a finite field".into()))?;
    let n = m.total_dim();
    let vectors = p
        .checked_pow(n as u32)
        .filter(|&t| t <= REPRESENTATION_CAP)
        .ok_or_else(|| Error::Undecided(format!("module of dimension {n} is too large to enumerate")))?;
    let elems = field.elements();
    let mut cyclic: Vec<Matrix> = Vec::new();
    let mut seen: HashSet<Matrix> = HashSet::new();
    for code in 1..vectors {
        let mut c = code;
        let v: Vec<_> = (0..n)
            .map(|_| {
                let x = elems[(c % p) as usize].clone();
                c /= p;
                x
            })
            .collect();
        let cols: Vec<_> = m.actions().iter().map(|a| a.mul_vec(&v)).collect();
        let span = Matrix::from_columns(field, n, &cols).image_basis();
        if seen.insert(span.clone()) {
            cyclic.push(span);
        }
    }
    let zero = Matrix::zeros(field, n, 0);
    let mut subs: Vec<Matrix> = vec![zero.clone()];
    let mut known: HashSet<Matrix> = HashSet::from([zero]);
    let mut i = 0;
    while i < subs.len() {
        let u = subs[i].clone();
        for c in &cyclic {
            let w = Matrix::hstack(&[&u, c]).image_basis();
            if known.insert(w.clone()) {
                if subs.len() >= cap {
                    return Err(Error::Undecided(format!("more than {cap} submodules")));
                }
                subs.push(w);
            }
        }
        i += 1;
    }
    subs.into_iter().map(|s| m.submodule(&s)).collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{algebra_from_quiver, Quiver};
    use crate::field::Field;

    #[test]
    fn a2_over_f2_has_three_indecomposables() {
        let a: Alg = Arc::new(algebra_from_quiver(&Quiver::linear(2), &[], Field::Prime(2), 8).unwrap());
        let ind = indecomposables_up_to(&a, &[1, 2]).unwrap();
        let dims: Vec<Vec<usize>> = ind.iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn a3_over_f2_has_six_indecomposables() {
        let a: Alg = Arc::new(algebra_from_quiver(&Quiver::linear(3), &[], Field::Prime(2), 8).unwrap());
        assert_eq!(indecomposables_up_to(&a, &[1, 2, 3]).unwrap().len(), 6);
    }

    #[test]
    fn submodules_of_p1() {
        let a: Alg = Arc::new(algebra_from_quiver(&Quiver::linear(2), &[], Field::Prime(3), 8).unwrap());
        let p1 = FDModule::projective(&a, 0);
        // 0, socle, P1
        assert_eq!(submodules(&p1, 100).unwrap().len(), 3);
        let s = FDModule::simple(&a, 1);
        let ss = crate::algebra::module::direct_sum(&[s.clone(), s]).module;
        // subspaces of F3^2: 1 + 4 + 1
        assert_eq!(submodules(&ss, 100).unwrap().len(), 6);
    }
}
