//! Nilpotent Lie algebras over Q in a fixed basis, and the subspace calculus
//! built on them: brackets of subspaces, lower central series, center.
//!
//! Indices are 0-based throughout the library. The text format and the CLI
//! use 1-based `e1..en`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::exactlin::{self, axpy, is_zero_vec, unit_vec, zero_vec, Mat, Rat};

/// `(i, j, [(k, c), ..])` meaning `[e_i, e_j] = Σ c e_k`, 1-based.
pub type SparseBracket<'a> = (usize, usize, &'a [(usize, i64)]);

/// Structure constants of a Lie algebra: `[e_i, e_j]` for `i < j`.
///
/// Antisymmetry is built in: only pairs `i < j` are stored, and
/// `[e_j, e_i] = -[e_i, e_j]`. Zero brackets are not stored.
#[derive(Clone)]
pub struct StructureConstants {
    dim: usize,
    table: BTreeMap<(usize, usize), Vec<Rat>>,
    terms: Vec<(usize, usize, usize, Rat)>,
    name: Option<String>,
}

impl StructureConstants {
    /// Builds the algebra from `(i, j) -> [e_i, e_j]` with 0-based `i < j`.
    pub fn new<I>(dim: usize, brackets: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rat>)>,
    {
        let mut table = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= dim {
                return Err(AlgebraError::BadPair {
                    i: i + 1,
                    j: j + 1,
                    dim,
                });
            }
            if v.len() != dim {
                return Err(AlgebraError::VectorLength {
                    i: i + 1,
                    j: j + 1,
                    found: v.len(),
                    dim,
                });
            }
            if table.contains_key(&(i, j)) {
                return Err(AlgebraError::DuplicatePair { i: i + 1, j: j + 1 });
            }
            if !is_zero_vec(&v) {
                table.insert((i, j), v);
            }
        }
        let terms = table
            .iter()
            .flat_map(|(&(i, j), v)| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(k, c)| (i, j, k, c.clone()))
            })
            .collect();
        Ok(StructureConstants {
            dim,
            table,
            terms,
            name: None,
        })
    }

    /// Convenience constructor from sparse integer triples
    /// `(i, j, [(k, c), ..])`, all 1-based as in `[e_i, e_j] = c e_k`.
    pub fn from_sparse(dim: usize, entries: &[SparseBracket]) -> Result<Self, AlgebraError> {
        let mut brackets = Vec::new();
        for &(i, j, comps) in entries {
            if i == 0 || j == 0 || comps.iter().any(|&(k, _)| k == 0 || k > dim) {
                return Err(AlgebraError::BadPair { i, j, dim });
            }
            let mut v = zero_vec(dim);
            for &(k, c) in comps {
                v[k - 1] += exactlin::rat(c);
            }
            brackets.push(((i - 1, j - 1), v));
        }
        Self::new(dim, brackets)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero table entries, `i < j`, 0-based.
    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<Rat>> {
        &self.table
    }

    /// Nonzero structure constants `(i, j, k, c)` with `[e_i, e_j] ∋ c e_k`, `i < j`.
    pub fn terms(&self) -> &[(usize, usize, usize, Rat)] {
        &self.terms
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// `[e_i, e_j]` for any ordered pair.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rat> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vec(self.dim),
            Less => self.table.get(&(i, j)).cloned().unwrap_or_else(|| zero_vec(self.dim)),
            Greater => self
                .table
                .get(&(j, i))
                .map(|v| exactlin::vec_neg(v))
                .unwrap_or_else(|| zero_vec(self.dim)),
        }
    }

    /// Bilinear extension of the table. Panics on length mismatch; see
    /// [`bracket`] for the checked form.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert!(x.len() == self.dim && y.len() == self.dim);
        let mut out = zero_vec(self.dim);
        for (i, j, k, c) in &self.terms {
            let a = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if !a.is_zero() {
                out[*k] += a * c;
            }
        }
        out
    }

    /// Matrix of `ad x = [x, -]`.
    pub fn ad(&self, x: &[Rat]) -> Mat {
        let cols: Vec<Vec<Rat>> = (0..self.dim).map(|j| self.bracket(x, &unit_vec(self.dim, j))).collect();
        Mat::from_columns(self.dim, &cols)
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`
    pub fn jacobiator(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vec<Rat> {
        let a = self.bracket(&self.bracket(x, y), z);
        let b = self.bracket(&self.bracket(y, z), x);
        let c = self.bracket(&self.bracket(z, x), y);
        a.iter().zip(&b).zip(&c).map(|((p, q), r)| p + q + r).collect()
    }

    /// The same algebra with every structure constant multiplied by `s`
    /// (an isomorphic algebra: the basis is rescaled by `1/s`).
    pub fn scaled(&self, s: &Rat) -> StructureConstants {
        let mut out = StructureConstants::new(
            self.dim,
            self.table.iter().map(|(&p, v)| (p, exactlin::vec_scale(s, v))),
        )
        .expect("rescaling keeps the table well formed");
        out.name = self.name.clone();
        out
    }
}

impl PartialEq for StructureConstants {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

impl Eq for StructureConstants {}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureConstants")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("brackets", &self.table.len())
            .finish()
    }
}

/// Checked bracket of two vectors.
pub fn bracket(x: &[Rat], y: &[Rat], sc: &StructureConstants) -> Result<Vec<Rat>, AlgebraError> {
    for v in [x, y] {
        if v.len() != sc.dim() {
            return Err(AlgebraError::Length {
                found: v.len(),
                dim: sc.dim(),
            });
        }
    }
    Ok(sc.bracket(x, y))
}

/// A subspace of Q^n, stored as the nonzero rows of its RREF basis so that
/// equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rat>>,
    {
        let mut rows: Vec<Vec<Rat>> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = exactlin::rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -r[p].clone();
                axpy(&mut r, &c, row);
            }
        }
        r
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !is_zero_vec(&self.reduce(v)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve a·A = b·B over the stacked bases.
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols: Vec<Vec<Rat>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| exactlin::vec_neg(v)));
        let m = Mat::from_columns(self.ambient, &cols);
        let kernel = exactlin::kernel_basis(&m);
        Subspace::span(
            self.ambient,
            kernel.into_iter().map(|k| {
                let mut v = zero_vec(self.ambient);
                for (c, row) in k[..a].iter().zip(&self.basis) {
                    axpy(&mut v, c, row);
                }
                v
            }),
        )
    }

    /// Rows spanning the annihilator: `{ f : f(v) = 0 for v in self }`.
    pub fn annihilator(&self) -> Vec<Vec<Rat>> {
        if self.basis.is_empty() {
            return (0..self.ambient).map(|i| unit_vec(self.ambient, i)).collect();
        }
        let m = Mat::from_rows(self.basis.clone()).expect("rows share the ambient length");
        exactlin::kernel_basis(&m)
    }

    /// Image of the subspace under a square matrix.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().map(|v| m.apply(v)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

/// Span of `[a_i, b_j]` over basis vectors of `a` and `b`.
pub fn subspace_bracket(a: &Subspace, b: &Subspace, sc: &StructureConstants) -> Result<Subspace, AlgebraError> {
    if a.ambient() != b.ambient() {
        return Err(AlgebraError::Ambient {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    if a.ambient() != sc.dim() {
        return Err(AlgebraError::Ambient {
            left: a.ambient(),
            right: sc.dim(),
        });
    }
    let brackets = a
        .basis()
        .iter()
        .flat_map(|x| b.basis().iter().map(move |y| sc.bracket(x, y)));
    Ok(Subspace::span(sc.dim(), brackets))
}

/// `[L, L]`
pub fn derived_subalgebra(sc: &StructureConstants) -> Subspace {
    Subspace::span(sc.dim(), sc.table().values().cloned())
}

/// Terms `L^1 = L, L^{k+1} = [L, L^k]` of the lower central series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    /// `L^1, L^2, ..., 0`; the final zero term is included.
    pub terms: Vec<Subspace>,
    /// Number of nonzero terms.
    pub class: usize,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

pub fn lower_central_series(sc: &StructureConstants) -> Result<CentralSeries, AlgebraError> {
    let n = sc.dim();
    let full = Subspace::full(n);
    let mut terms = vec![full.clone()];
    while !terms.last().expect("nonempty").is_zero() {
        let cur = terms.last().expect("nonempty");
        let next = subspace_bracket(&full, cur, sc)?;
        if next.dim() == cur.dim() {
            return Err(AlgebraError::NotNilpotent { stalled_at: cur.dim() });
        }
        terms.push(next);
    }
    let class = terms.len() - 1;
    Ok(CentralSeries { terms, class })
}

/// `{ x : [x, e_i] = 0 for all i }`
pub fn center(sc: &StructureConstants) -> Subspace {
    let n = sc.dim();
    // Row (i, m): sum_j x_j [e_j, e_i]_m = 0.
    let mut rows = Vec::with_capacity(n * n);
    let ad_cols: Vec<Vec<Vec<Rat>>> = (0..n)
        .map(|j| (0..n).map(|i| sc.basis_bracket(j, i)).collect())
        .collect();
    for i in 0..n {
        for m in 0..n {
            let row: Vec<Rat> = ad_cols.iter().map(|col| col[i][m].clone()).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    let m = Mat::from_rows(rows).expect("rows have length n");
    Subspace::span(n, exactlin::kernel_basis(&m))
}

/// Block sum `a ⊕ b`; basis of `b` is shifted by `dim a`.
pub fn direct_sum(a: &StructureConstants, b: &StructureConstants) -> StructureConstants {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let embed = |v: &[Rat], off: usize| {
        let mut w = zero_vec(n);
        for (k, c) in v.iter().enumerate() {
            w[off + k] = c.clone();
        }
        w
    };
    let brackets = a
        .table()
        .iter()
        .map(|(&(i, j), v)| ((i, j), embed(v, 0)))
        .chain(b.table().iter().map(|(&(i, j), v)| ((i + na, j + na), embed(v, na))));
    let sum = StructureConstants::new(n, brackets.collect::<Vec<_>>()).expect("block structure of two valid tables");
    match (a.name(), b.name()) {
        (Some(x), Some(y)) => sum.with_name(format!("{x}+{y}")),
        _ => sum,
    }
}

pub fn abelian(n: usize) -> StructureConstants {
    StructureConstants::new(n, Vec::new()).expect("empty table")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    /// 1-based basis triple.
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub jacobi_failures: Vec<JacobiFailure>,
    /// Series dimensions when the series reaches zero.
    pub series_dims: Option<Vec<usize>>,
    pub class: Option<usize>,
    /// Dimension at which the series stalled, for non-nilpotent input.
    pub stalled_at: Option<usize>,
}

impl ValidationReport {
    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }

    pub fn accepted(&self) -> bool {
        self.jacobi_failures.is_empty() && self.is_nilpotent()
    }
}

pub fn validate(sc: &StructureConstants) -> ValidationReport {
    let n = sc.dim();
    let e: Vec<Vec<Rat>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = sc.jacobiator(&e[i], &e[j], &e[k]);
                if !is_zero_vec(&r) {
                    failures.push(JacobiFailure {
                        triple: (i + 1, j + 1, k + 1),
                        residual: r,
                    });
                }
            }
        }
    }
    let (series_dims, class, stalled_at) = match lower_central_series(sc) {
        Ok(s) => (Some(s.dims()), Some(s.class), None),
        Err(AlgebraError::NotNilpotent { stalled_at }) => (None, None, Some(stalled_at)),
        Err(e) => unreachable!("series of a well-formed table: {e}"),
    };
    ValidationReport {
        dim: n,
        jacobi_failures: failures,
        series_dims,
        class,
        stalled_at,
    }
}

/// Validation as a gate: `Ok` only for a nilpotent Lie algebra.
pub fn ensure_valid(sc: &StructureConstants) -> Result<ValidationReport, AlgebraError> {
    let report = validate(sc);
    if let Some(f) = report.jacobi_failures.first() {
        let (i, j, k) = f.triple;
        return Err(AlgebraError::Jacobi {
            count: report.jacobi_failures.len(),
            i,
            j,
            k,
        });
    }
    if let Some(stalled_at) = report.stalled_at {
        return Err(AlgebraError::NotNilpotent { stalled_at });
    }
    Ok(report)
}

/// Numerical invariants of a nilpotent algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub rank: usize,
    pub class: usize,
    pub series_dims: Vec<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// `dim L/[L,L]`, also the minimal number of generators.
    pub abelianization_dim: usize,
    pub generator_count: usize,
}

pub fn invariant_report(sc: &StructureConstants) -> Result<InvariantReport, AlgebraError> {
    let series = lower_central_series(sc)?;
    let derived = series.terms.get(1).map_or(0, Subspace::dim);
    let ab = sc.dim() - derived;
    // A nilpotent algebra is generated by any lift of a basis of L/[L,L];
    // one generator would make it abelian.
    if !sc.is_abelian() {
        assert!(ab >= 2, "non-abelian nilpotent algebra with abelianization {ab}");
    }
    Ok(InvariantReport {
        rank: sc.dim(),
        class: series.class,
        series_dims: series.dims(),
        center_dim: center(sc).dim(),
        derived_dim: derived,
        abelianization_dim: ab,
        generator_count: ab,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vec, rat};

    fn heis(c: i64) -> StructureConstants {
        StructureConstants::from_sparse(3, &[(1, 2, &[(3, c)])]).unwrap()
    }

    fn filiform4() -> StructureConstants {
        StructureConstants::from_sparse(4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]).unwrap()
    }

    #[test]
    fn heisenberg_validates() {
        let r = validate(&heis(2));
        assert!(r.accepted());
        assert_eq!(r.class, Some(2));
        assert_eq!(r.series_dims, Some(vec![3, 1, 0]));
    }

    #[test]
    fn jacobi_residual_reported() {
        let sc = StructureConstants::from_sparse(3, &[(1, 2, &[(3, 1)]), (1, 3, &[(1, 1)])]).unwrap();
        let r = validate(&sc);
        assert!(!r.accepted());
        assert_eq!(
            r.jacobi_failures,
            vec![JacobiFailure {
                triple: (1, 2, 3),
                residual: int_vec(&[0, 0, -1]),
            }]
        );
    }

    #[test]
    fn non_nilpotent_rejected() {
        let sc = StructureConstants::from_sparse(2, &[(1, 2, &[(1, 1)])]).unwrap();
        let r = validate(&sc);
        assert!(r.jacobi_failures.is_empty());
        assert!(!r.accepted());
        assert_eq!(r.stalled_at, Some(1));
        assert_eq!(ensure_valid(&sc), Err(AlgebraError::NotNilpotent { stalled_at: 1 }));
    }

    #[test]
    fn table_errors() {
        assert!(matches!(
            StructureConstants::new(3, vec![((1, 0), int_vec(&[0, 0, 1]))]),
            Err(AlgebraError::BadPair { .. })
        ));
        assert!(matches!(
            StructureConstants::new(3, vec![((0, 1), int_vec(&[0, 1]))]),
            Err(AlgebraError::VectorLength { found: 2, dim: 3, .. })
        ));
        assert!(bracket(&int_vec(&[1]), &int_vec(&[0, 1, 0]), &heis(2)).is_err());
    }

    #[test]
    fn brackets() {
        let h = heis(2);
        let e = |i| unit_vec(3, i);
        assert_eq!(h.bracket(&e(0), &e(1)), int_vec(&[0, 0, 2]));
        assert_eq!(h.bracket(&e(1), &e(0)), int_vec(&[0, 0, -2]));
        assert_eq!(h.bracket(&e(2), &e(0)), zero_vec(3));
        let x = int_vec(&[3, -1, 7]);
        assert_eq!(h.bracket(&x, &x), zero_vec(3));
    }

    #[test]
    fn derived_and_series() {
        let h = heis(2);
        let full = Subspace::full(3);
        let d = subspace_bracket(&full, &full, &h).unwrap();
        assert_eq!(d, Subspace::span(3, [unit_vec(3, 2)]));
        assert!(subspace_bracket(&Subspace::full(4), &Subspace::full(4), &abelian(4))
            .unwrap()
            .is_zero());
        let f = filiform4();
        let d = subspace_bracket(&Subspace::full(4), &Subspace::full(4), &f).unwrap();
        assert_eq!(d, Subspace::span(4, [unit_vec(4, 2), unit_vec(4, 3)]));
        assert_eq!(lower_central_series(&f).unwrap().dims(), vec![4, 2, 1, 0]);
        assert_eq!(lower_central_series(&abelian(5)).unwrap().dims(), vec![5, 0]);
        assert_eq!(lower_central_series(&abelian(5)).unwrap().class, 1);
    }

    #[test]
    fn degenerate_dimensions() {
        let s0 = lower_central_series(&abelian(0)).unwrap();
        assert_eq!((s0.class, s0.dims()), (0, vec![0]));
        assert_eq!(lower_central_series(&abelian(1)).unwrap().class, 1);
        assert!(validate(&abelian(0)).accepted());
    }

    #[test]
    fn centers() {
        assert_eq!(center(&heis(2)), Subspace::span(3, [unit_vec(3, 2)]));
        assert_eq!(center(&abelian(3)), Subspace::full(3));
        assert_eq!(center(&filiform4()), Subspace::span(4, [unit_vec(4, 3)]));
    }

    #[test]
    fn sums() {
        assert_eq!(direct_sum(&abelian(1), &abelian(1)), abelian(2));
        let s = direct_sum(&heis(2), &abelian(1));
        let r = invariant_report(&s).unwrap();
        assert_eq!((r.rank, r.class, r.center_dim), (4, 2, 2));
    }

    #[test]
    fn invariants() {
        let r = invariant_report(&heis(2)).unwrap();
        assert_eq!((r.rank, r.class, r.abelianization_dim), (3, 2, 2));
        let r = invariant_report(&filiform4()).unwrap();
        assert_eq!((r.rank, r.class, r.abelianization_dim), (4, 3, 2));
        let r = invariant_report(&abelian(5)).unwrap();
        assert_eq!((r.rank, r.class, r.abelianization_dim), (5, 1, 5));
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, [int_vec(&[1, 1, 0]), int_vec(&[2, 2, 0])]);
        assert_eq!(a.dim(), 1);
        let b = Subspace::span(3, [int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])]);
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert!(a.intersection(&b).is_zero());
        let c = Subspace::span(3, [int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0])]);
        assert_eq!(c.intersection(&b), Subspace::span(3, [unit_vec(3, 1)]));
        assert_eq!(a.coordinates(&int_vec(&[3, 3, 0])), Some(vec![rat(3)]));
        assert_eq!(b.annihilator(), vec![int_vec(&[1, 0, 0])]);
    }
}
