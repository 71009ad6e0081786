//! Isomorphism tests with explicit witnesses, and Krull-Schmidt decompositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{combine_homs, hom_space, FDModule, ModuleHom};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Largest number of coefficient vectors enumerated exhaustively.
const EXHAUSTIVE_CAP: u64 = 1 << 14;
const RANDOM_ATTEMPTS: usize = 96;
const SEED: u64 = 0x5117_10c0;

/// Coefficient vectors for a search over a `k`-dimensional space: exhaustive when
/// the field is small enough, otherwise `None`.
fn exhaustive(field: Field, k: usize) -> Option<Vec<Vec<Scalar>>> {
    let p = field.order()?;
    let total = p.checked_pow(k as u32)?;
    if total > EXHAUSTIVE_CAP {
        return None;
    }
    let elems = field.elements();
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(k);
        for _ in 0..k {
            v.push(elems[(code % p) as usize].clone());
            code /= p;
        }
        out.push(v);
    }
    Some(out)
}

fn random_coeffs(field: Field, k: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..k)
        .map(|_| match field {
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
            Field::Rationals => field.from_i64(rng.gen_range(-64..=64)),
        })
        .collect()
}

/// Returns `Some(witness)` when the modules are isomorphic, `None` when they are
/// certainly not, and `Undecided` when the witness search gives up.
pub fn is_isomorphic(m: &FDModule, n: &FDModule) -> Result<Option<ModuleHom>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(m.zero_hom(n)));
    }
    if m == n {
        return Ok(Some(m.identity()));
    }
    let homs = hom_space(m, n);
    let k = homs.len();
    if k == 0
        || hom_space(m, m).len() != k
        || hom_space(n, n).len() != k
        || hom_space(n, m).len() != k
        || m.top().0.dims() != n.top().0.dims()
        || m.socle().0.dims() != n.socle().0.dims()
    {
        return Ok(None);
    }
    for h in &homs {
        if h.is_iso() {
            return Ok(Some(h.clone()));
        }
    }
    let field = m.field();
    if let Some(all) = exhaustive(field, k) {
        for c in all {
            let h = combine_homs(&homs, &c, m, n);
            if h.is_iso() {
                return Ok(Some(h));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_ATTEMPTS {
        let h = combine_homs(&homs, &random_coeffs(field, k, &mut rng), m, n);
        if h.is_iso() {
            return Ok(Some(h));
        }
    }
    Err(Error::Undecided(format!("no invertible map among {RANDOM_ATTEMPTS} samples of a {k}-dimensional Hom space")))
}

/// Summands up to isomorphism with multiplicities, in order of discovery.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<(FDModule, usize)>,
}

impl Decomposition {
    /// Number of pairwise non-isomorphic indecomposable summands.
    pub fn distinct(&self) -> usize {
        self.summands.len()
    }
    pub fn total(&self) -> usize {
        self.summands.iter().map(|(_, k)| k).sum()
    }
}

enum Split {
    Local,
    By(ModuleHom),
}

fn classify(e: &ModuleHom) -> (bool, bool) {
    let nil = e.matrix.is_nilpotent();
    let inv = e.is_iso();
    (nil, inv)
}

/// Looks for an endomorphism that is neither nilpotent nor invertible, or certifies
/// that the endomorphism ring is local.
fn find_splitting(m: &FDModule) -> Result<Split> {
    let ends = hom_space(m, m);
    let k = ends.len();
    if k <= 1 {
        return Ok(Split::Local);
    }
    let field = m.field();
    let id = m.identity();
    let shifts: Vec<Scalar> = match field {
        Field::Prime(p) => (0..p.min(8) as i64).map(|x| field.from_i64(x)).collect(),
        Field::Rationals => (-3..=3).map(|x| field.from_i64(x)).collect(),
    };
    for e in &ends {
        for s in &shifts {
            let cand = e.add(&id.scale(&-s));
            let (nil, inv) = classify(&cand);
            if !nil && !inv {
                return Ok(Split::By(cand));
            }
        }
    }
    if local_certificate(m, &ends) {
        return Ok(Split::Local);
    }
    if let Some(all) = exhaustive(field, k) {
        for c in all {
            let cand = combine_homs(&ends, &c, m, m);
            let (nil, inv) = classify(&cand);
            if !nil && !inv {
                return Ok(Split::By(cand));
            }
        }
        return Ok(Split::Local);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xdec0);
    for _ in 0..RANDOM_ATTEMPTS {
        let cand = combine_homs(&ends, &random_coeffs(field, k, &mut rng), m, m);
        let (nil, inv) = classify(&cand);
        if !nil && !inv {
            return Ok(Split::By(cand));
        }
    }
    Err(Error::Undecided(format!("cannot decide whether a {k}-dimensional endomorphism ring is local")))
}

/// True when the common kernel of the vertexwise trace forms is a nilpotent ideal
/// of codimension one; then `End(M)/N = k` and `End(M)` is local.
fn local_certificate(m: &FDModule, ends: &[ModuleHom]) -> bool {
    let f = m.field();
    let k = ends.len();
    let mut rows = Vec::new();
    for v in 0..m.dims().len() {
        let (o, d) = (m.offset(v), m.dims()[v]);
        if d == 0 {
            continue;
        }
        for y in ends {
            let row: Vec<Scalar> = ends
                .iter()
                .map(|x| {
                    let prod = x.matrix.mul(&y.matrix).block(o, o, d, d);
                    (0..d).fold(f.zero(), |acc, i| &acc + prod.get(i, i))
                })
                .collect();
            rows.push(row);
        }
    }
    let form = Matrix::from_rows(f, k, &rows);
    let ker = form.kernel_basis();
    if ker.cols() + 1 != k {
        return false;
    }
    let n: Vec<ModuleHom> = (0..ker.cols()).map(|c| combine_homs(ends, &ker.column(c), m, m)).collect();
    // ideal: products with every endomorphism stay in N
    let span = Matrix::from_columns(
        f,
        m.total_dim() * m.total_dim(),
        &n.iter().map(|h| h.matrix.data().to_vec()).collect::<Vec<_>>(),
    );
    let in_n = |h: &Matrix| {
        let v = Matrix::column_vector(f, h.data());
        span.solve(&v).is_ok()
    };
    for x in &n {
        for y in ends {
            if !in_n(&x.matrix.mul(&y.matrix)) || !in_n(&y.matrix.mul(&x.matrix)) {
                return false;
            }
        }
    }
    // an ideal consisting of nilpotent elements spanned by nilpotents: check every
    // product of length dim M vanishes
    let mut power: Vec<Matrix> = n.iter().map(|h| h.matrix.clone()).collect();
    for _ in 0..m.total_dim() {
        if power.iter().all(Matrix::is_zero) {
            return true;
        }
        let mut next = Vec::new();
        for p in &power {
            for x in &n {
                next.push(p.mul(&x.matrix));
            }
        }
        let cols: Vec<Vec<Scalar>> = next.iter().map(|h| h.data().to_vec()).collect();
        let basis = Matrix::from_columns(f, m.total_dim() * m.total_dim(), &cols).image_basis();
        let t = m.total_dim();
        power = basis.columns().into_iter().map(|c| Matrix::from_data(f, t, t, c)).collect();
    }
    power.iter().all(Matrix::is_zero)
}

fn split_into(m: &FDModule, out: &mut Vec<FDModule>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    match find_splitting(m)? {
        Split::Local => out.push(m.clone()),
        Split::By(phi) => {
            let big = phi.matrix.pow(m.total_dim() as u32);
            let fit = ModuleHom { source: m.clone(), target: m.clone(), matrix: big };
            let (k, _) = fit.kernel();
            let (i, _) = fit.image();
            split_into(&k, out)?;
            split_into(&i, out)?;
        }
    }
    Ok(())
}

pub fn is_indecomposable(m: &FDModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(matches!(find_splitting(m)?, Split::Local))
}

/// Indecomposable summands grouped into isomorphism classes.
pub fn indecomposable_decomposition(m: &FDModule) -> Result<Decomposition> {
    let mut pieces = Vec::new();
    split_into(m, &mut pieces)?;
    let mut summands: Vec<(FDModule, usize)> = Vec::new();
    'outer: for p in pieces {
        for (rep, mult) in summands.iter_mut() {
            if is_isomorphic(rep, &p)?.is_some() {
                *mult += 1;
                continue 'outer;
            }
        }
        summands.push((p, 1));
    }
    Ok(Decomposition { summands })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::module::direct_sum;
    use crate::algebra::{algebra_from_quiver, Alg, Quiver};

    fn a2() -> Alg {
        Arc::new(algebra_from_quiver(&Quiver::linear(2), &[], Field::Prime(5), 8).unwrap())
    }

    #[test]
    fn iso_examples() {
        let a = a2();
        let p1 = FDModule::projective(&a, 0);
        let s1 = FDModule::simple(&a, 0);
        let s2 = FDModule::simple(&a, 1);
        assert!(is_isomorphic(&p1, &p1).unwrap().is_some());
        assert!(is_isomorphic(&s1, &s2).unwrap().is_none());
        let ss = direct_sum(&[s1.clone(), s2.clone()]).module;
        assert!(is_isomorphic(&p1, &ss).unwrap().is_none());
        let i2 = FDModule::injective(&a, 1);
        let w = is_isomorphic(&p1, &i2).unwrap().expect("P1 is injective");
        assert!(w.is_homomorphism() && w.is_iso());
    }

    #[test]
    fn decompositions() {
        let a = a2();
        let p1 = FDModule::projective(&a, 0);
        let p2 = FDModule::projective(&a, 1);
        let d = indecomposable_decomposition(&direct_sum(&[p1.clone(), p1.clone()]).module).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 2);
        let reg = indecomposable_decomposition(&FDModule::regular(&a)).unwrap();
        assert_eq!(reg.distinct(), 2);
        assert!(reg.summands.iter().any(|(m, k)| *k == 1 && is_isomorphic(m, &p1).unwrap().is_some()));
        assert!(reg.summands.iter().any(|(m, k)| *k == 1 && is_isomorphic(m, &p2).unwrap().is_some()));
        assert!(is_indecomposable(&p1).unwrap());
    }

    #[test]
    fn decomposition_over_rationals() {
        let a: Alg = Arc::new(algebra_from_quiver(&Quiver::linear(3), &[], Field::Rationals, 8).unwrap());
        let reg = FDModule::regular(&a);
        let d = indecomposable_decomposition(&reg).unwrap();
        assert_eq!(d.distinct(), 3);
        assert_eq!(d.total(), 3);
    }
}
