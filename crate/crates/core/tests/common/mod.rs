#![allow(dead_code)]

use nilcohopf::catalog::Catalog;
use nilcohopf::exactlin::{self, Mat, Rat};
use nilcohopf::malcev::{classify_endomorphism, exp_ad_automorphism};
use nilcohopf::StructureConstants;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn catalog() -> Catalog {
    Catalog::new()
}

/// Catalog entries on which `Z^n` is closed under the group law.
pub fn lattice_closed_entries() -> Vec<(&'static str, Option<usize>)> {
    vec![
        ("abelian", Some(3)),
        ("heisenberg_lattice", Some(1)),
        ("heisenberg_lattice", Some(2)),
        ("cn7", None),
        ("cn8", None),
        ("cn9", None),
    ]
}

pub fn all_entries() -> Vec<(&'static str, Option<usize>)> {
    let mut v = lattice_closed_entries();
    v.push(("filiform", Some(4)));
    v.push(("filiform", Some(6)));
    v
}

/// Loads an entry, or prints a skip notice when its data file is absent.
pub fn load(c: &Catalog, name: &str, p: Option<usize>) -> Option<StructureConstants> {
    if !c.is_available(name) {
        eprintln!(
            "SKIPPED: catalog entry {name} has no data file in {}",
            c.data_dir().display()
        );
        return None;
    }
    Some(c.get(name, p).unwrap_or_else(|e| panic!("{name}: {e}")))
}

pub fn int_vector(rng: &mut TestRng, n: usize, bound: i64) -> Vec<Rat> {
    (0..n).map(|_| exactlin::rat(rng.gen_range(-bound..=bound))).collect()
}

pub fn rat_vector(rng: &mut TestRng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| exactlin::frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect()
}

pub fn int_matrix(rng: &mut TestRng, rows: usize, cols: usize, bound: i64) -> Mat {
    let data = (0..rows * cols)
        .map(|_| exactlin::rat(rng.gen_range(-bound..=bound)))
        .collect();
    Mat::from_vec(rows, cols, data).unwrap()
}

/// Signed permutation matrices that are automorphisms. All of them for
/// `n <= 5`, sign changes only above.
pub fn signed_permutation_symmetries(sc: &StructureConstants) -> Vec<Mat> {
    let n = sc.dim();
    let mut out = Vec::new();
    let perms: Vec<Vec<usize>> = if n <= 5 {
        permutations(n)
    } else {
        vec![(0..n).collect()]
    };
    for p in perms {
        for signs in 0u32..(1 << n) {
            let mut m = Mat::zeros(n, n);
            for (j, &i) in p.iter().enumerate() {
                m[(i, j)] = exactlin::rat(if signs >> j & 1 == 1 { -1 } else { 1 });
            }
            if classify_endomorphism(&m, sc).unwrap().is_automorphism {
                out.push(m);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Product of one to three factors, each an inner automorphism with an
/// integral generator or a signed permutation symmetry.
pub fn random_unimodular_automorphism(rng: &mut TestRng, sc: &StructureConstants, symmetries: &[Mat]) -> Mat {
    let n = sc.dim();
    let mut f = Mat::identity(n);
    for _ in 0..rng.gen_range(1..=3) {
        let g = if rng.gen_bool(0.5) || symmetries.is_empty() {
            exp_ad_automorphism(&int_vector(rng, n, 2), sc).unwrap().matrix
        } else {
            symmetries[rng.gen_range(0..symmetries.len())].clone()
        };
        f = &f * &g;
    }
    f
}

/// Integer automorphism of `heisenberg_lattice(1)`:
/// `e1 -> (a,c,p)`, `e2 -> (b,d,q)`, `e3 -> (ad-bc) e3`.
pub fn heisenberg_automorphism(rng: &mut TestRng) -> Mat {
    loop {
        let [a, b, c, d, p, q]: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let det = a * d - b * c;
        if det != 0 {
            return Mat::from_i64(&[&[a, b, 0], &[c, d, 0], &[p, q, det]]);
        }
    }
}

/// Integer matrix with nonzero determinant: an automorphism of an abelian
/// algebra.
pub fn abelian_automorphism(rng: &mut TestRng, n: usize) -> Mat {
    loop {
        let m = int_matrix(rng, n, n, 3);
        if !num_traits::Zero::is_zero(&exactlin::det(&m).unwrap()) {
            return m;
        }
    }
}

/// Strictly upper triangular matrices with a few random entries, closed
/// under commutator.
pub fn random_triangular_lie_span(rng: &mut TestRng, n: usize) -> Vec<Mat> {
    let gens = rng.gen_range(1..=3);
    let mut basis: Vec<Mat> = Vec::new();
    for _ in 0..gens {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    m[(i, j)] = exactlin::rat(rng.gen_range(-2..=2));
                }
            }
        }
        basis.push(m);
    }
    lie_closure(n, basis)
}

/// Linearly independent spanning set of the Lie algebra generated by
/// `gens` under commutator.
pub fn lie_closure(n: usize, gens: Vec<Mat>) -> Vec<Mat> {
    let mut basis: Vec<Mat> = Vec::new();
    let mut span = nilcohopf::Subspace::zero(n * n);
    let mut queue = gens;
    while let Some(m) = queue.pop() {
        let flat = m.flatten();
        if span.contains(&flat) {
            continue;
        }
        span = span.sum(&nilcohopf::Subspace::span(n * n, [flat]));
        for b in &basis {
            queue.push(m.commutator(b));
        }
        basis.push(m);
    }
    basis
}
