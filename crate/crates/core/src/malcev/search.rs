//! The determinant criterion: witness checks, bounded witness search, and
//! certification through characteristic nilpotency.

use num_traits::{One, Zero};

use super::endo::{classify_endomorphism, image_index, LieEndomorphism};
use super::lattice::lattice_closure_check;
use crate::derivations::{is_characteristically_nilpotent, NilpotencyCertificate};
use crate::error::MalcevError;
use crate::exactlin::{self, Int, Mat, Rat};
use crate::liealg::{lower_central_series, StructureConstants, Subspace};

pub const DEFAULT_SEARCH_BOUND: i64 = 2;
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    WitnessFound,
    CertifiedCoHopfian,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::WitnessFound => "witness-found",
            VerdictKind::CertifiedCoHopfian => "certified-co-hopfian",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }
}

/// Bookkeeping of a bounded witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub bound: i64,
    /// Candidate columns tried.
    pub nodes: usize,
    /// The whole bounded space was searched (budget not hit).
    pub exhausted: bool,
    /// 1 for the uniform dilation pass, 2 for the exhaustive pass.
    pub phase: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoHopfVerdict {
    pub kind: VerdictKind,
    /// Lattice-preserving automorphism with `|det| > 1`.
    pub witness: Option<LieEndomorphism>,
    pub certificate: Option<NilpotencyCertificate>,
    /// `|det|` of the witness: the index of its image.
    pub index: Option<Int>,
    pub search: Option<SearchStats>,
    pub reason: String,
}

impl CoHopfVerdict {
    fn witness(f: LieEndomorphism, index: Int, search: Option<SearchStats>) -> Self {
        CoHopfVerdict {
            kind: VerdictKind::WitnessFound,
            reason: format!("proper self-embedding of index {index}"),
            witness: Some(f),
            certificate: None,
            index: Some(index),
            search,
        }
    }

    fn inconclusive(reason: impl Into<String>, search: Option<SearchStats>) -> Self {
        CoHopfVerdict {
            kind: VerdictKind::Inconclusive,
            witness: None,
            certificate: None,
            index: None,
            search,
            reason: reason.into(),
        }
    }

    pub fn is_witness(&self) -> bool {
        self.kind == VerdictKind::WitnessFound
    }
}

/// Applies the determinant criterion to one matrix. A lattice-preserving
/// automorphism with `|det| > 1` is a witness; one with `|det| = 1` maps
/// the lattice group onto itself and decides nothing.
pub fn cohopf_witness_check(f: &Mat, sc: &StructureConstants) -> Result<CoHopfVerdict, MalcevError> {
    let endo = classify_endomorphism(f, sc)?;
    if let Some((i, j)) = endo.failing_pair {
        return Err(MalcevError::NotHomomorphism(i, j));
    }
    if !endo.is_lattice_preserving {
        return Err(MalcevError::NotLatticePreserving);
    }
    if !endo.is_automorphism {
        return Err(MalcevError::Singular);
    }
    let index = image_index(&endo)?;
    if index.is_one() {
        return Ok(CoHopfVerdict::inconclusive(
            "not a witness: |det| = 1, the image is the whole group",
            None,
        ));
    }
    Ok(CoHopfVerdict::witness(endo, index, None))
}

/// Characteristic nilpotency first; otherwise a bounded witness search
/// (`bound = 0` disables it). The search needs `Z^n` closed under the
/// group law.
pub fn certify_cohopfian(sc: &StructureConstants, bound: i64) -> CoHopfVerdict {
    certify_cohopfian_with_budget(sc, bound, DEFAULT_NODE_BUDGET)
}

pub fn certify_cohopfian_with_budget(sc: &StructureConstants, bound: i64, budget: usize) -> CoHopfVerdict {
    let report = is_characteristically_nilpotent(sc).expect("derivation space of a validated algebra");
    if report.verdict {
        return CoHopfVerdict {
            kind: VerdictKind::CertifiedCoHopfian,
            witness: None,
            certificate: Some(report.certificate),
            index: None,
            search: None,
            reason: "every derivation is nilpotent".to_owned(),
        };
    }
    let mut verdict = if bound <= 0 {
        CoHopfVerdict::inconclusive("not characteristically nilpotent; witness search disabled", None)
    } else {
        let closure = lattice_closure_check(sc);
        if closure.closed {
            witness_search(sc, bound, budget)
        } else {
            CoHopfVerdict::inconclusive(
                format!("Z^n is not closed under the group law: {}", closure.evidence()),
                None,
            )
        }
    };
    if verdict.kind == VerdictKind::Inconclusive {
        // keep the non-nilpotent derivation as evidence
        verdict.certificate = Some(report.certificate);
    }
    verdict
}

/// How column `k` of a homomorphism follows from earlier columns:
/// `e_k = Σ c [e_i,e_j] + Σ d e_m` with `i, j, m < k`.
#[derive(Clone, Debug)]
struct Recipe {
    brackets: Vec<(usize, usize, Rat)>,
    linear: Vec<(usize, Rat)>,
}

#[derive(Clone, Debug)]
struct Schedule {
    recipes: Vec<Option<Recipe>>,
    /// Pairs whose homomorphism equation is checkable once column `k` is set.
    checks: Vec<Vec<(usize, usize)>>,
    /// Deepest lower-central term containing `e_k`.
    filtration: Vec<Subspace>,
}

/// A vector spanning the space that determines column `k`.
#[derive(Clone, Copy)]
enum Spanner {
    Basis(usize),
    Bracket(usize, usize),
}

impl Schedule {
    fn new(sc: &StructureConstants) -> Self {
        let n = sc.dim();
        let mut recipes = Vec::with_capacity(n);
        for k in 0..n {
            let mut gens: Vec<(Spanner, Vec<Rat>)> = Vec::new();
            for m in 0..k {
                gens.push((Spanner::Basis(m), exactlin::unit_vec(n, m)));
            }
            for i in 0..k {
                for j in i + 1..k {
                    let b = sc.basis_bracket(i, j);
                    if !exactlin::is_zero_vec(&b) {
                        gens.push((Spanner::Bracket(i, j), b));
                    }
                }
            }
            let mut cols: Vec<Vec<Rat>> = gens.iter().map(|g| g.1.clone()).collect();
            cols.push(exactlin::unit_vec(n, k));
            let aug = Mat::from_columns(n, &cols);
            let r = exactlin::rref(&aug);
            let last = gens.len();
            if r.pivot_columns.contains(&last) {
                recipes.push(None);
                continue;
            }
            let mut recipe = Recipe {
                brackets: Vec::new(),
                linear: Vec::new(),
            };
            for (row, &p) in r.pivot_columns.iter().enumerate() {
                let c = r.reduced[(row, last)].clone();
                if c.is_zero() {
                    continue;
                }
                match gens[p].0 {
                    Spanner::Bracket(i, j) => recipe.brackets.push((i, j, c)),
                    Spanner::Basis(m) => recipe.linear.push((m, c)),
                }
            }
            recipes.push(Some(recipe));
        }
        let mut checks = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let b = sc.basis_bracket(i, j);
                let ready = b
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, _)| k)
                    .fold(j, usize::max);
                checks[ready].push((i, j));
            }
        }
        let terms = lower_central_series(sc).expect("nilpotent").terms;
        let filtration = (0..n)
            .map(|k| {
                let e = exactlin::unit_vec(n, k);
                terms
                    .iter()
                    .rev()
                    .find(|t| t.contains(&e))
                    .cloned()
                    .unwrap_or_else(|| Subspace::full(n))
            })
            .collect();
        Schedule {
            recipes,
            checks,
            filtration,
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.recipes.len()).filter(|&k| self.recipes[k].is_none()).collect()
    }
}

struct Dfs<'a> {
    sc: &'a StructureConstants,
    schedule: Schedule,
    bound: i64,
    budget: usize,
    nodes: usize,
    out_of_budget: bool,
    /// `Some(t)`: free columns restricted to `t e_k`.
    dilation: Option<i64>,
    columns: Vec<Vec<Rat>>,
    found: Option<(LieEndomorphism, Int)>,
}

impl Dfs<'_> {
    fn column_ok(&self, k: usize, v: &[Rat]) -> bool {
        if !self.schedule.filtration[k].contains(v) {
            return false;
        }
        let span = Subspace::span(self.sc.dim(), self.columns.iter().cloned());
        if span.contains(v) {
            return false;
        }
        true
    }

    fn equations_hold(&self, k: usize) -> bool {
        self.schedule.checks[k].iter().all(|&(i, j)| {
            let lhs = self.image(&self.sc.basis_bracket(i, j));
            let rhs = self.sc.bracket(&self.columns[i], &self.columns[j]);
            lhs == rhs
        })
    }

    fn image(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = exactlin::zero_vec(self.sc.dim());
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                exactlin::axpy(&mut out, c, &self.columns[k]);
            }
        }
        out
    }

    fn determined(&self, recipe: &Recipe) -> Vec<Rat> {
        let mut out = exactlin::zero_vec(self.sc.dim());
        for (i, j, c) in &recipe.brackets {
            exactlin::axpy(&mut out, c, &self.sc.bracket(&self.columns[*i], &self.columns[*j]));
        }
        for (m, c) in &recipe.linear {
            exactlin::axpy(&mut out, c, &self.columns[*m]);
        }
        out
    }

    /// Returns `false` to stop the search.
    fn descend(&mut self, k: usize) -> bool {
        let n = self.sc.dim();
        if k == n {
            let f = Mat::from_columns(n, &self.columns);
            let endo = classify_endomorphism(&f, self.sc).expect("square");
            if endo.is_automorphism && endo.is_lattice_preserving {
                let index = image_index(&endo).expect("integral automorphism");
                if index > Int::one() {
                    self.found = Some((endo, index));
                    return false;
                }
            }
            return true;
        }
        if let Some(recipe) = self.schedule.recipes[k].clone() {
            let v = self.determined(&recipe);
            if !exactlin::is_integral_vec(&v) || !self.column_ok(k, &v) {
                return true;
            }
            self.columns.push(v);
            let go_on = !self.equations_hold(k) || self.descend(k + 1);
            self.columns.pop();
            return go_on;
        }
        let candidates: Box<dyn Iterator<Item = Vec<Rat>>> = match self.dilation {
            Some(t) => Box::new(std::iter::once(exactlin::vec_scale(
                &exactlin::rat(t),
                &exactlin::unit_vec(n, k),
            ))),
            None => Box::new(BoxIter::new(n, self.bound)),
        };
        for v in candidates {
            if self.nodes >= self.budget {
                self.out_of_budget = true;
                return false;
            }
            self.nodes += 1;
            if !self.column_ok(k, &v) {
                continue;
            }
            self.columns.push(v);
            let go_on = !self.equations_hold(k) || self.descend(k + 1);
            self.columns.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Integer vectors in `[-B, B]^n` in lexicographic order.
struct BoxIter {
    bound: i64,
    current: Option<Vec<i64>>,
}

impl BoxIter {
    fn new(n: usize, bound: i64) -> Self {
        BoxIter {
            bound,
            current: Some(vec![-bound; n]),
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<Rat>;

    fn next(&mut self) -> Option<Vec<Rat>> {
        let cur = self.current.as_mut()?;
        let out = exactlin::int_vec(cur);
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos] < self.bound {
                cur[pos] += 1;
                break;
            }
            cur[pos] = -self.bound;
        }
        Some(out)
    }
}

/// Bounded search for a lattice-preserving automorphism with `|det| > 1`.
///
/// Columns are filled in basis order. A column is free when `e_k` is not a
/// combination of earlier basis vectors and brackets of earlier basis
/// vectors; free columns range over `[-B, B]^n`, and the remaining columns
/// are forced by the homomorphism equations (their entries may exceed
/// `B`). Each partial assignment is pruned by integrality, linear
/// independence, the lower central filtration, and every homomorphism
/// equation whose columns are all set.
///
/// The first pass tries uniform dilations `F e_k = t e_k` (t = 2..B) on the
/// free columns; the second pass is exhaustive in lexicographic order and
/// returns the lexicographically least witness by free-column entries.
/// At most `budget` candidate columns are tried; hitting the budget gives
/// an inconclusive verdict.
pub fn witness_search(sc: &StructureConstants, bound: i64, budget: usize) -> CoHopfVerdict {
    let n = sc.dim();
    let mut dfs = Dfs {
        sc,
        schedule: Schedule::new(sc),
        bound,
        budget,
        nodes: 0,
        out_of_budget: false,
        dilation: None,
        columns: Vec::with_capacity(n),
        found: None,
    };
    if n == 0 {
        return CoHopfVerdict::inconclusive("zero-dimensional algebra: the trivial group is co-Hopfian", None);
    }
    for t in 2..=bound {
        dfs.dilation = Some(t);
        dfs.descend(0);
        if let Some((endo, index)) = dfs.found.take() {
            let stats = SearchStats {
                bound,
                nodes: dfs.nodes,
                exhausted: false,
                phase: Some(1),
            };
            return CoHopfVerdict::witness(endo, index, Some(stats));
        }
    }
    dfs.dilation = None;
    dfs.descend(0);
    let stats = SearchStats {
        bound,
        nodes: dfs.nodes,
        exhausted: !dfs.out_of_budget && dfs.found.is_none(),
        phase: dfs.found.as_ref().map(|_| 2),
    };
    match dfs.found.take() {
        Some((endo, index)) => CoHopfVerdict::witness(endo, index, Some(stats)),
        None if stats.exhausted => CoHopfVerdict::inconclusive(
            format!("no lattice automorphism with |det| > 1 and free columns in [-{bound}, {bound}]^{n}"),
            Some(stats),
        ),
        None => CoHopfVerdict::inconclusive(
            format!("search budget of {budget} candidate columns exhausted"),
            Some(stats),
        ),
    }
}

/// Free column indices of the witness search: a generating set of `L`
/// read off the basis order.
pub fn free_columns(sc: &StructureConstants) -> Vec<usize> {
    Schedule::new(sc).free_columns()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::abelian;

    fn heis() -> StructureConstants {
        StructureConstants::from_sparse(3, &[(1, 2, &[(3, 2)])]).unwrap()
    }

    fn filiform(n: usize) -> StructureConstants {
        crate::catalog::filiform(n)
    }

    #[test]
    fn witness_check_examples() {
        let h = heis();
        let v = cohopf_witness_check(&Mat::diag_i64(&[2, 2, 4]), &h).unwrap();
        assert_eq!(v.kind, VerdictKind::WitnessFound);
        assert_eq!(v.index, Some(Int::from(16)));
        let v = cohopf_witness_check(&Mat::identity(3), &h).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        assert!(v.witness.is_none());
        assert_eq!(
            cohopf_witness_check(&Mat::diag_i64(&[2, 1, 1]), &h),
            Err(MalcevError::NotHomomorphism(1, 2))
        );
        assert_eq!(cohopf_witness_check(&Mat::zeros(3, 3), &h), Err(MalcevError::Singular));
    }

    #[test]
    fn free_columns_are_generators() {
        assert_eq!(free_columns(&heis()), vec![0, 1]);
        assert_eq!(free_columns(&abelian(3)), vec![0, 1, 2]);
        assert_eq!(free_columns(&filiform(5)), vec![0, 1]);
    }

    #[test]
    fn search_finds_dilations() {
        let v = witness_search(&heis(), 2, DEFAULT_NODE_BUDGET);
        assert_eq!(v.witness.unwrap().matrix, Mat::diag_i64(&[2, 2, 4]));
        assert_eq!(v.index, Some(Int::from(16)));
        let v = witness_search(&abelian(3), 2, DEFAULT_NODE_BUDGET);
        assert_eq!(v.witness.unwrap().matrix, Mat::diag_i64(&[2, 2, 2]));
        assert_eq!(v.index, Some(Int::from(8)));
        let v = witness_search(&filiform(4), 2, DEFAULT_NODE_BUDGET);
        assert_eq!(v.witness.unwrap().matrix, Mat::diag_i64(&[2, 2, 4, 8]));
    }

    #[test]
    fn exhaustive_pass_is_lexicographic() {
        // B = 1 rules out dilations; the least witness starts with -e1.
        let v = witness_search(&abelian(2), 1, DEFAULT_NODE_BUDGET);
        let w = v.witness.unwrap();
        assert_eq!(v.search.unwrap().phase, Some(2));
        assert_eq!(w.matrix, Mat::from_i64(&[&[-1, -1], &[-1, 1]]));
        assert_eq!(v.index, Some(Int::from(2)));
    }

    #[test]
    fn search_budget_is_honest() {
        let v = witness_search(&filiform(5), 1, 50);
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        let s = v.search.unwrap();
        assert!(!s.exhausted && s.nodes == 50);
    }

    #[test]
    fn certify_runs_search_for_non_charnil() {
        let v = certify_cohopfian(&heis(), 2);
        assert_eq!(v.kind, VerdictKind::WitnessFound);
        assert!(v.certificate.is_none());
        let v = certify_cohopfian(&heis(), 0);
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        let unscaled = StructureConstants::from_sparse(3, &[(1, 2, &[(3, 1)])]).unwrap();
        let v = certify_cohopfian(&unscaled, 2);
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        assert!(v.reason.contains("not closed"));
    }
}
