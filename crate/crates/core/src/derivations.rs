//! Derivation algebras and characteristic nilpotency.
//!
//! `Der(L)` is the solution space of the Leibniz system
//! `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`, whose unknowns are the `n²`
//! entries of `D` in row-major order. Whether every derivation is nilpotent
//! is decided by an Engel flag recursion, which either produces a flag
//! shifted by every basis matrix or records the stage at which the common
//! kernel vanished.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::DerivationError;
use crate::exactlin::{self, is_zero_vec, Mat, Rat};
use crate::liealg::{self, StructureConstants, Subspace};

/// A basis of `Der(L)`.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    n: usize,
    basis: Vec<Mat>,
    span: Subspace,
}

impl DerivationSpace {
    /// Ambient dimension `n` of the algebra.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// The span as a subspace of Q^(n²).
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.span.contains(&m.flatten())
    }

    pub fn combination(&self, coeffs: &[Rat]) -> Mat {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = Mat::zeros(self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }
}

/// Leibniz identity on every basis pair.
pub fn is_derivation(d: &Mat, sc: &StructureConstants) -> bool {
    let n = sc.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let cols: Vec<Vec<Rat>> = (0..n).map(|i| d.column(i)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = d.apply(&sc.basis_bracket(i, j));
            let a = sc.bracket(&cols[i], &exactlin::unit_vec(n, j));
            let b = sc.bracket(&exactlin::unit_vec(n, i), &cols[j]);
            lhs == exactlin::vec_add(&a, &b)
        })
    })
}

/// The Leibniz constraint matrix: one row per `(i<j, m)` with a nonzero
/// coefficient somewhere, `n²` columns.
pub fn leibniz_system(sc: &StructureConstants) -> Mat {
    let n = sc.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = sc.basis_bracket(i, j);
            let kj: Vec<Vec<Rat>> = (0..n).map(|k| sc.basis_bracket(k, j)).collect();
            let ik: Vec<Vec<Rat>> = (0..n).map(|k| sc.basis_bracket(i, k)).collect();
            for m in 0..n {
                let mut row = exactlin::zero_vec(n * n);
                for k in 0..n {
                    if !cij[k].is_zero() {
                        row[m * n + k] += &cij[k];
                    }
                    if !kj[k][m].is_zero() {
                        row[k * n + i] -= &kj[k][m];
                    }
                    if !ik[k][m].is_zero() {
                        row[k * n + j] -= &ik[k][m];
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Mat::zeros(0, n * n);
    }
    Mat::from_rows(rows).expect("rows of length n²")
}

fn unflatten(n: usize, v: &[Rat]) -> Mat {
    Mat::from_vec(n, n, v.to_vec()).expect("n² entries")
}

/// Canonical basis of `Der(L)`: the RREF rows of the solution space.
///
/// Panics if the computed span is not closed under commutator, which would
/// mean the Leibniz system was assembled wrongly.
pub fn derivation_space(sc: &StructureConstants) -> DerivationSpace {
    let n = sc.dim();
    let system = leibniz_system(sc);
    let kernel = exactlin::kernel_basis(&system);
    let span = Subspace::span(n * n, kernel);
    let basis: Vec<Mat> = span.basis().iter().map(|v| unflatten(n, v)).collect();
    let ds = DerivationSpace { n, basis, span };
    if let Err(e) = check_commutator_closed(&ds.basis, &ds.span) {
        panic!("derivation space of {:?}: {e}", sc.name());
    }
    ds
}

fn check_commutator_closed(basis: &[Mat], span: &Subspace) -> Result<(), DerivationError> {
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let c = basis[a].commutator(&basis[b]);
            if !span.contains(&c.flatten()) {
                return Err(DerivationError::NotCommutatorClosed(a, b));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyVerdict {
    AllNilpotent,
    NotAllNilpotent,
}

/// Evidence for an Engel verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub verdict: NilpotencyVerdict,
    /// `V = F_0 ⊋ F_1 ⊋ ... ⊋ F_r = 0` with every basis matrix mapping
    /// `F_i` into `F_{i+1}`. Present iff all-nilpotent.
    pub flag: Option<Vec<Subspace>>,
    /// Number of kernel steps taken before the common kernel on the
    /// quotient vanished. Present iff not-all-nilpotent.
    pub failure_stage: Option<usize>,
    /// The invariant subspace `K` on whose quotient no basis matrix has a
    /// common kernel vector.
    pub stalled_at: Option<Subspace>,
    /// An explicit non-nilpotent element of the span, when one was found.
    pub witness: Option<Mat>,
}

impl NilpotencyCertificate {
    pub fn is_all_nilpotent(&self) -> bool {
        self.verdict == NilpotencyVerdict::AllNilpotent
    }

    /// Re-checks the certificate against the matrices it claims to cover.
    pub fn verify(&self, n: usize, basis: &[Mat]) -> bool {
        match self.verdict {
            NilpotencyVerdict::AllNilpotent => {
                let Some(flag) = &self.flag else { return false };
                let ends = flag.first().map(Subspace::dim) == Some(n) && flag.last().is_some_and(Subspace::is_zero);
                let strict = flag.windows(2).all(|w| w[1].dim() < w[0].dim());
                let shifted = flag.windows(2).all(|w| {
                    basis
                        .iter()
                        .all(|d| w[0].basis().iter().all(|v| w[1].contains(&d.apply(v))))
                });
                ends && strict && shifted
            }
            NilpotencyVerdict::NotAllNilpotent => {
                let witness_ok = self
                    .witness
                    .as_ref()
                    .is_none_or(|w| in_span(basis, w) && !w.pow(n as u32).is_zero());
                self.failure_stage.is_some() && witness_ok
            }
        }
    }
}

fn in_span(basis: &[Mat], m: &Mat) -> bool {
    let span = Subspace::span(m.entries().len(), basis.iter().map(Mat::flatten));
    span.contains(&m.flatten())
}

fn check_shapes(n: usize, basis: &[Mat]) -> Result<(), DerivationError> {
    for (index, m) in basis.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(DerivationError::MatrixShape {
                index,
                rows: m.rows(),
                cols: m.cols(),
                n,
            });
        }
    }
    Ok(())
}

/// Engel flag recursion over the span of `basis` acting on Q^n.
///
/// `K_0 = 0`, `K_{s+1} = { v : D v ∈ K_s for every D }`. The span is
/// nilpotent iff the chain reaches Q^n; then the reversed chain is the flag.
pub fn engel_all_nilpotent(n: usize, basis: &[Mat]) -> Result<NilpotencyCertificate, DerivationError> {
    check_shapes(n, basis)?;
    let span = Subspace::span(n * n, basis.iter().map(Mat::flatten));
    check_commutator_closed(basis, &span)?;

    let mut chain = vec![Subspace::zero(n)];
    loop {
        let cur = chain.last().expect("nonempty chain");
        if cur.dim() == n {
            let flag = chain.iter().rev().cloned().collect();
            return Ok(NilpotencyCertificate {
                verdict: NilpotencyVerdict::AllNilpotent,
                flag: Some(flag),
                failure_stage: None,
                stalled_at: None,
                witness: None,
            });
        }
        let next = preimage_of_all(n, basis, cur);
        if next.dim() == cur.dim() {
            let stage = chain.len() - 1;
            return Ok(NilpotencyCertificate {
                verdict: NilpotencyVerdict::NotAllNilpotent,
                flag: None,
                failure_stage: Some(stage),
                stalled_at: Some(cur.clone()),
                witness: find_non_nilpotent(n, basis),
            });
        }
        chain.push(next);
    }
}

/// `{ v : D v ∈ k for every D in basis }`
fn preimage_of_all(n: usize, basis: &[Mat], k: &Subspace) -> Subspace {
    let ann = k.annihilator();
    let mut rows = Vec::new();
    for d in basis {
        for f in &ann {
            // f·D
            let row: Vec<Rat> = (0..n)
                .map(|c| {
                    f.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .fold(Rat::zero(), |acc, (r, x)| acc + x * &d[(r, c)])
                })
                .collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    let m = Mat::from_rows(rows).expect("rows of length n");
    Subspace::span(n, exactlin::kernel_basis(&m))
}

fn is_nilpotent_matrix(m: &Mat) -> bool {
    m.pow(m.rows() as u32).is_zero()
}

/// Best-effort search for a non-nilpotent element of the span: a positive
/// integral diagonal element of least total weight first, then any nonzero
/// diagonal element, then basis elements and pairwise sums.
pub fn find_non_nilpotent(n: usize, basis: &[Mat]) -> Option<Mat> {
    if n == 0 || basis.is_empty() {
        return None;
    }
    let diagonals = diagonal_part(n, basis);
    if let Some(d) = least_positive_vector(&diagonals, 8 * n + 8) {
        return Some(Mat::diag(&d));
    }
    if let Some(row) = diagonals.basis().first() {
        return Some(Mat::diag(row));
    }
    if let Some(b) = basis.iter().find(|b| !is_nilpotent_matrix(b)) {
        return Some(b.clone());
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = &basis[i] + &basis[j];
            if !is_nilpotent_matrix(&s) {
                return Some(s);
            }
        }
    }
    None
}

/// Diagonals of the diagonal matrices in the span, as a subspace of Q^n.
fn diagonal_part(n: usize, basis: &[Mat]) -> Subspace {
    let m = basis.len();
    // Unknown coefficients t; each off-diagonal entry of sum t_i B_i vanishes.
    let mut rows = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r == c {
                continue;
            }
            let row: Vec<Rat> = basis.iter().map(|b| b[(r, c)].clone()).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    let ts = if rows.is_empty() {
        (0..m).map(|i| exactlin::unit_vec(m, i)).collect()
    } else {
        exactlin::kernel_basis(&Mat::from_rows(rows).expect("rows of length m"))
    };
    Subspace::span(
        n,
        ts.into_iter().map(|t| {
            (0..n)
                .map(|i| {
                    t.iter()
                        .zip(basis)
                        .fold(Rat::zero(), |acc, (c, b)| acc + c * &b[(i, i)])
                })
                .collect()
        }),
    )
}

/// Smallest-sum vector of `w` with all entries positive integers. The
/// pivot coordinates are enumerated by increasing total, at most `max_sum`,
/// and the search gives up after a fixed budget of candidates.
fn least_positive_vector(w: &Subspace, max_sum: usize) -> Option<Vec<Rat>> {
    const BUDGET: usize = 200_000;
    let r = w.dim();
    if r == 0 {
        return None;
    }
    let mut tried = 0;
    for total in r..=max_sum {
        let mut found: Option<Vec<Rat>> = None;
        for parts in compositions(total, r) {
            tried += 1;
            if tried > BUDGET {
                return None;
            }
            let mut v = exactlin::zero_vec(w.ambient());
            for (p, row) in parts.iter().zip(w.basis()) {
                exactlin::axpy(&mut v, &exactlin::rat(*p as i64), row);
            }
            if v.iter().all(|x| x.is_integer() && x.is_positive()) {
                found = Some(v);
                break;
            }
        }
        // Pivot entries are coordinates of the vector itself, so the first
        // total that admits a solution also minimizes the pivot sum.
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Compositions of `total` into `parts` positive summands, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=total - (parts - 1) {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Characteristic nilpotency decision with its consequences.
#[derive(Clone, Debug)]
pub struct CharNilReport {
    pub verdict: bool,
    pub certificate: NilpotencyCertificate,
    pub derivations: DerivationSpace,
    /// `C(L) ⊆ [L,L]`
    pub center_in_derived: bool,
    /// Lower central series of `Der(L)` as a matrix Lie algebra.
    pub der_series_dims: Vec<usize>,
    pub der_nilpotent: bool,
}

/// Every derivation nilpotent? On a positive verdict also checks that the
/// center lies in the derived subalgebra and that `Der(L)` is a nilpotent
/// Lie algebra; failure of either is reported as an inconsistency.
pub fn is_characteristically_nilpotent(sc: &StructureConstants) -> Result<CharNilReport, DerivationError> {
    let ds = derivation_space(sc);
    let certificate = engel_all_nilpotent(sc.dim(), ds.basis())?;
    let verdict = certificate.is_all_nilpotent();
    let center_in_derived = liealg::center(sc).is_subspace_of(&liealg::derived_subalgebra(sc));
    let (der_series_dims, der_nilpotent) = der_lie_lcs(&ds);
    if verdict && !center_in_derived {
        return Err(DerivationError::Inconsistent("C(L) ⊆ [L,L]"));
    }
    if verdict && !der_nilpotent {
        return Err(DerivationError::Inconsistent("nilpotency of Der(L)"));
    }
    Ok(CharNilReport {
        verdict,
        certificate,
        derivations: ds,
        center_in_derived,
        der_series_dims,
        der_nilpotent,
    })
}

/// Lower central series of the span of the derivation basis under
/// commutator. Returns the dimensions (ending in 0 when nilpotent) and
/// whether the series reached zero.
pub fn der_lie_lcs(ds: &DerivationSpace) -> (Vec<usize>, bool) {
    matrix_lie_lcs(ds.n(), ds.basis())
}

pub fn matrix_lie_lcs(n: usize, basis: &[Mat]) -> (Vec<usize>, bool) {
    let mut cur = Subspace::span(n * n, basis.iter().map(Mat::flatten));
    let mut dims = vec![cur.dim()];
    while !cur.is_zero() {
        let next = Subspace::span(
            n * n,
            basis.iter().flat_map(|b| {
                cur.basis()
                    .iter()
                    .map(move |y| b.commutator(&unflatten(n, y)).flatten())
            }),
        );
        if next.dim() == cur.dim() {
            return (dims, false);
        }
        dims.push(next.dim());
        cur = next;
    }
    (dims, true)
}

pub const TRACE_ORACLE_MAX_DIM: usize = 10;

type Monomial = Vec<u8>;
type Poly = HashMap<Monomial, Rat>;

fn poly_add_product(acc: &mut Poly, a: &Poly, b: &Poly) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = acc.entry(m).or_insert_with(Rat::zero);
            *e += ca * cb;
        }
    }
}

/// Independent check of all-nilpotency: with `X = Σ t_i D_i`, are the
/// polynomials `tr(X^k)`, `k = 1..n`, identically zero?
///
/// Expands `X^k` over all words of length `k` in the basis, sharing
/// prefixes: the coefficient of a monomial in `tr(X^k)` is the sum of
/// traces of the words with that content. In characteristic zero this
/// vanishing is equivalent to every element of the span being nilpotent.
pub fn trace_power_oracle(n: usize, basis: &[Mat]) -> Result<bool, DerivationError> {
    if n > TRACE_ORACLE_MAX_DIM {
        return Err(DerivationError::TooLarge {
            n,
            max: TRACE_ORACLE_MAX_DIM,
        });
    }
    check_shapes(n, basis)?;
    let m = basis.len();
    let var = |i: usize| {
        let mut mono = vec![0u8; m];
        mono[i] = 1;
        mono
    };
    // X as a matrix of linear polynomials.
    let x: Vec<Vec<Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    basis
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| !b[(r, c)].is_zero())
                        .map(|(i, b)| (var(i), b[(r, c)].clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut power = x.clone();
    for k in 1..=n {
        if k > 1 {
            let mut next: Vec<Vec<Poly>> = vec![vec![Poly::new(); n]; n];
            for r in 0..n {
                for c in 0..n {
                    let mut acc = Poly::new();
                    for j in 0..n {
                        if !power[r][j].is_empty() && !x[j][c].is_empty() {
                            poly_add_product(&mut acc, &power[r][j], &x[j][c]);
                        }
                    }
                    acc.retain(|_, v| !v.is_zero());
                    next[r][c] = acc;
                }
            }
            power = next;
        }
        let mut trace = Poly::new();
        for (i, row) in power.iter().enumerate() {
            for (mono, c) in &row[i] {
                *trace.entry(mono.clone()).or_insert_with(Rat::zero) += c;
            }
        }
        if trace.values().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `tr(D^k) ≠ 0` for some `k <= n`, i.e. `D` is not nilpotent.
pub fn has_nonzero_trace_power(d: &Mat) -> bool {
    let n = d.rows();
    let mut p = Mat::identity(n);
    (1..=n).any(|_| {
        p = &p * d;
        !p.trace().is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::abelian;
    use num_traits::One;

    fn heis() -> StructureConstants {
        StructureConstants::from_sparse(3, &[(1, 2, &[(3, 2)])]).unwrap()
    }

    fn filiform(n: usize) -> StructureConstants {
        crate::catalog::filiform(n)
    }

    fn strictly_upper(n: usize) -> Vec<Mat> {
        let mut out = Vec::new();
        for r in 0..n {
            for c in r + 1..n {
                let mut m = Mat::zeros(n, n);
                m[(r, c)] = Rat::one();
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn heisenberg_leibniz_rank() {
        let s = leibniz_system(&StructureConstants::from_sparse(3, &[(1, 2, &[(3, 1)])]).unwrap());
        assert_eq!(s.cols(), 9);
        assert_eq!(exactlin::rank(&s), 3);
        assert_eq!(exactlin::kernel_basis(&s).len(), 6);
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(derivation_space(&heis()).dimension(), 6);
        assert_eq!(derivation_space(&abelian(3)).dimension(), 9);
        let ds = derivation_space(&filiform(4));
        assert!(ds.contains(&Mat::diag_i64(&[1, 1, 2, 3])));
        assert!(is_derivation(&Mat::diag_i64(&[1, 1, 2, 3]), &filiform(4)));
        assert!(!is_derivation(&Mat::diag_i64(&[1, 1, 1, 1]), &filiform(4)));
        for b in ds.basis() {
            assert!(is_derivation(b, &filiform(4)));
        }
    }

    #[test]
    fn engel_strictly_upper() {
        let b = strictly_upper(4);
        let c = engel_all_nilpotent(4, &b).unwrap();
        assert!(c.is_all_nilpotent());
        let flag = c.flag.as_ref().unwrap();
        assert_eq!(flag.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![4, 3, 2, 1, 0]);
        // Coordinate flag: F_i = span(e_0..e_{3-i}).
        assert_eq!(flag[3], Subspace::span(4, [exactlin::unit_vec(4, 0)]));
        assert!(c.verify(4, &b));
        assert!(trace_power_oracle(4, &b).unwrap());
    }

    #[test]
    fn engel_identity() {
        let b = vec![Mat::identity(3)];
        let c = engel_all_nilpotent(3, &b).unwrap();
        assert_eq!(c.verdict, NilpotencyVerdict::NotAllNilpotent);
        assert_eq!(c.failure_stage, Some(0));
        assert_eq!(c.witness, Some(Mat::identity(3)));
        assert!(c.verify(3, &b));
        assert!(!trace_power_oracle(3, &b).unwrap());
    }

    #[test]
    fn engel_rejects_non_closed_span() {
        let mut a = Mat::zeros(2, 2);
        a[(0, 1)] = Rat::one();
        let b = a.transpose();
        assert_eq!(
            engel_all_nilpotent(2, &[a, b]),
            Err(DerivationError::NotCommutatorClosed(0, 1))
        );
    }

    #[test]
    fn filiform_grading_witness() {
        let ds = derivation_space(&filiform(4));
        let c = engel_all_nilpotent(4, ds.basis()).unwrap();
        assert!(!c.is_all_nilpotent());
        assert_eq!(c.failure_stage, Some(0));
        assert_eq!(c.witness, Some(Mat::diag_i64(&[1, 1, 2, 3])));
    }

    #[test]
    fn abelian_not_charnil() {
        for n in 1..=3 {
            let r = is_characteristically_nilpotent(&abelian(n)).unwrap();
            assert!(!r.verdict);
            assert_eq!(r.certificate.witness, Some(Mat::identity(n)));
        }
    }

    #[test]
    fn der_series() {
        let (dims, nil) = der_lie_lcs(&derivation_space(&abelian(2)));
        assert_eq!((dims, nil), (vec![4, 3], false));
        let (dims, nil) = der_lie_lcs(&derivation_space(&abelian(0)));
        assert_eq!((dims, nil), (vec![0], true));
    }

    #[test]
    fn empty_algebra_is_vacuously_nilpotent() {
        let c = engel_all_nilpotent(0, &[]).unwrap();
        assert!(c.is_all_nilpotent());
        assert!(trace_power_oracle(0, &[]).unwrap());
        assert!(is_characteristically_nilpotent(&abelian(0)).unwrap().verdict);
    }

    #[test]
    fn oracle_bounds() {
        assert!(matches!(
            trace_power_oracle(11, &[]),
            Err(DerivationError::TooLarge { n: 11, max: 10 })
        ));
    }

    #[test]
    fn compositions_enumerate() {
        let c = compositions(4, 3);
        assert_eq!(c, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }
}
