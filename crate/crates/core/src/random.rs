//! Seeded random instances for property tests and benchmarks.

use rand::Rng;

use crate::algebra::{hom_space, Alg, FDModule, ModuleHom};
use crate::field::Scalar;
use crate::homalg::{proj_sum, ProjMap};

fn random_scalar<R: Rng>(alg: &Alg, rng: &mut R) -> Scalar {
    let f = alg.field();
    match f.order() {
        Some(q) => f.from_i64(rng.gen_range(0..q as i64)),
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

/// A random element of `e_h A e_t`.
pub fn random_corner_element<R: Rng>(alg: &Alg, h: usize, t: usize, rng: &mut R) -> Vec<Scalar> {
    let mut v = alg.zero_vec();
    for b in alg.corner_basis(h, t) {
        v[b] = random_scalar(alg, rng);
    }
    v
}

pub fn random_proj_map<R: Rng>(alg: &Alg, domain: Vec<usize>, codomain: Vec<usize>, rng: &mut R) -> ProjMap {
    let entries =
        codomain.iter().map(|&w| domain.iter().map(|&v| random_corner_element(alg, v, w, rng)).collect()).collect();
    ProjMap::new(alg, domain, codomain, entries).expect("entries respect corners")
}

fn random_vertices<R: Rng>(alg: &Alg, max_len: usize, rng: &mut R) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..alg.n_vertices())).collect()
}

/// A random map between sums of at most `max_len` indecomposable projectives,
/// with domain and codomain of total dimension at most `max_dim` together.
pub fn random_sigma<R: Rng>(alg: &Alg, max_len: usize, max_dim: usize, rng: &mut R) -> ProjMap {
    loop {
        let d = random_vertices(alg, max_len, rng);
        let c = random_vertices(alg, max_len, rng);
        let dim = proj_sum(alg, &d).module.total_dim() + proj_sum(alg, &c).module.total_dim();
        if dim <= max_dim {
            return random_proj_map(alg, d, c, rng);
        }
    }
}

/// A random nonzero quotient of a small sum of projectives, of dimension at most `max_dim`.
pub fn random_module<R: Rng>(alg: &Alg, max_dim: usize, rng: &mut R) -> FDModule {
    loop {
        let verts: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..alg.n_vertices())).collect();
        let p = proj_sum(alg, &verts).module;
        let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(0..=2))
            .map(|_| {
                let v = rng.gen_range(0..alg.n_vertices());
                let mut x = vec![alg.field().zero(); p.total_dim()];
                for k in 0..p.dims()[v] {
                    x[p.offset(v) + k] = random_scalar(alg, rng);
                }
                x
            })
            .collect();
        let (_, incl) = p.generated_by(&gens);
        let (q, _) = p.quotient(&incl).expect("generated submodule");
        if !q.is_zero() && q.total_dim() <= max_dim {
            return q;
        }
    }
}

pub fn random_hom<R: Rng>(m: &FDModule, n: &FDModule, rng: &mut R) -> ModuleHom {
    let mut h = m.zero_hom(n);
    for b in hom_space(m, n) {
        h = h.add(&b.scale(&random_scalar(m.algebra(), rng)));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["kA2", "kA3", "kronecker", "dual_numbers"] {
            let alg = load(name).unwrap().alg;
            for _ in 0..5 {
                let s = random_sigma(&alg, 2, 8, &mut rng);
                assert!(s.to_hom().is_homomorphism());
                let m = random_module(&alg, 4, &mut rng);
                let n = random_module(&alg, 4, &mut rng);
                assert!(random_hom(&m, &n, &mut rng).is_homomorphism());
            }
        }
    }
}
