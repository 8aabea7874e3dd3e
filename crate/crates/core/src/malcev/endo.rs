//! Linear maps of L classified as Lie homomorphisms and automorphisms, and
//! the index of the image lattice.

use num_traits::{Signed, Zero};

use crate::error::MalcevError;
use crate::exactlin::{self, Int, Mat, Rat};
use crate::liealg::{self, StructureConstants};

/// A square matrix acting on `L` together with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieEndomorphism {
    /// Column `j` is `F(e_j)`.
    pub matrix: Mat,
    pub det: Rat,
    /// `F[e_i,e_j] = [Fe_i,Fe_j]` on every pair.
    pub is_hom: bool,
    pub is_automorphism: bool,
    /// Integral entries, i.e. `F(Z^n) ⊆ Z^n`.
    pub is_lattice_preserving: bool,
    /// First pair `(i, j)`, 1-based, on which the homomorphism equation fails.
    pub failing_pair: Option<(usize, usize)>,
}

impl LieEndomorphism {
    pub fn is_lattice_automorphism(&self) -> bool {
        self.is_automorphism && self.is_lattice_preserving
    }
}

/// First basis pair (1-based) on which `F[e_i,e_j] = [Fe_i,Fe_j]` fails for
/// `F: src -> dst`.
pub(crate) fn first_failing_pair(
    f: &Mat,
    src: &StructureConstants,
    dst: &StructureConstants,
) -> Option<(usize, usize)> {
    let n = src.dim();
    let cols: Vec<Vec<Rat>> = (0..n).map(|j| f.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = f.apply(&src.basis_bracket(i, j));
            let rhs = dst.bracket(&cols[i], &cols[j]);
            if lhs != rhs {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

pub fn classify_endomorphism(f: &Mat, sc: &StructureConstants) -> Result<LieEndomorphism, MalcevError> {
    let n = sc.dim();
    if f.rows() != n || f.cols() != n {
        return Err(MalcevError::Size {
            rows: f.rows(),
            cols: f.cols(),
            dim: n,
        });
    }
    let failing_pair = first_failing_pair(f, sc, sc);
    let is_hom = failing_pair.is_none();
    let det = exactlin::det(f).expect("square");
    Ok(LieEndomorphism {
        matrix: f.clone(),
        is_automorphism: is_hom && !det.is_zero(),
        det,
        is_hom,
        is_lattice_preserving: f.is_integral(),
        failing_pair,
    })
}

/// Index of `F(Z^n)` in `Z^n`: the product of the Smith invariants, which
/// equals `|det F|`.
pub fn image_index(f: &LieEndomorphism) -> Result<Int, MalcevError> {
    if !f.is_lattice_preserving {
        return Err(MalcevError::NotLatticePreserving);
    }
    if f.det.is_zero() {
        return Err(MalcevError::Singular);
    }
    let snf = exactlin::smith_normal_form(&f.matrix).expect("integral matrix");
    let index = snf.product();
    debug_assert_eq!(Rat::from_integer(index.clone()), f.det.abs());
    Ok(index)
}

/// Outcome of [`same_rank_epi_check`]. Surjectivity is tracked both over Q
/// (as a linear map of the algebras) and on the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiVerdict {
    pub rank: usize,
    pub dim: usize,
    pub surjective_over_q: bool,
    pub injective: bool,
    /// `|Z^n : F(Z^n)|` for integral nonsingular `F`.
    pub lattice_index: Option<Int>,
}

impl EpiVerdict {
    pub fn is_epimorphism(&self) -> bool {
        self.surjective_over_q
    }

    pub fn is_isomorphism(&self) -> bool {
        self.surjective_over_q && self.injective
    }

    pub fn surjective_on_lattice(&self) -> Option<bool> {
        self.lattice_index.as_ref().map(|i| *i == Int::from(1))
    }
}

/// For a homomorphism between algebras of equal dimension: surjective
/// implies injective, checked through the rank.
pub fn same_rank_epi_check(
    f: &Mat,
    src: &StructureConstants,
    dst: &StructureConstants,
) -> Result<EpiVerdict, MalcevError> {
    let (n, m) = (src.dim(), dst.dim());
    if n != m {
        return Err(MalcevError::DimensionMismatch { src: n, dst: m });
    }
    if f.rows() != n || f.cols() != n {
        return Err(MalcevError::Size {
            rows: f.rows(),
            cols: f.cols(),
            dim: n,
        });
    }
    if let Some((i, j)) = first_failing_pair(f, src, dst) {
        return Err(MalcevError::NotHomomorphism(i, j));
    }
    let rank = exactlin::rank(f);
    let surjective_over_q = rank == n;
    let injective = exactlin::kernel_basis(f).is_empty();
    assert!(
        !surjective_over_q || injective,
        "surjective homomorphism of equal-dimensional algebras with a kernel"
    );
    let lattice_index = if f.is_integral() && injective {
        let snf = exactlin::smith_normal_form(f).expect("integral matrix");
        Some(snf.product())
    } else {
        None
    };
    Ok(EpiVerdict {
        rank,
        dim: n,
        surjective_over_q,
        injective,
        lattice_index,
    })
}

/// `exp(ad x) = Σ_{k<c} (ad x)^k / k!`, an inner automorphism.
///
/// Panics if the result fails to be a unipotent automorphism of determinant
/// one inducing the identity on `L/[L,L]`.
pub fn exp_ad_automorphism(x: &[Rat], sc: &StructureConstants) -> Result<LieEndomorphism, MalcevError> {
    let n = sc.dim();
    if x.len() != n {
        return Err(MalcevError::Length { found: x.len(), dim: n });
    }
    let class = liealg::lower_central_series(sc)?.class;
    let ad = sc.ad(x);
    let mut term = Mat::identity(n);
    let mut sum = Mat::identity(n);
    for k in 1..class.max(1) {
        term = (&term * &ad).scale(&Rat::new(Int::from(1), Int::from(k)));
        sum = &sum + &term;
    }
    debug_assert!((&term * &ad).is_zero() || class == 0);
    let f = classify_endomorphism(&sum, sc)?;
    assert!(f.is_automorphism, "exp(ad x) is not an automorphism");
    assert_eq!(f.det, Rat::from_integer(Int::from(1)), "exp(ad x) has determinant != 1");
    let shifted = &sum - &Mat::identity(n);
    assert!(shifted.pow(n as u32).is_zero(), "exp(ad x) is not unipotent");
    let derived = liealg::derived_subalgebra(sc);
    assert!(
        (0..n).all(|j| derived.contains(&shifted.column(j))),
        "exp(ad x) moves L/[L,L]"
    );
    Ok(f)
}

/// Whether `F` induces the identity on `L/[L,L]`.
pub fn induces_identity_on_abelianization(f: &Mat, sc: &StructureConstants) -> bool {
    let n = sc.dim();
    let derived = liealg::derived_subalgebra(sc);
    let shifted = f - &Mat::identity(n);
    (0..n).all(|j| derived.contains(&shifted.column(j)))
}

/// `L ⊕ Q` with `F = id ⊕ (2)`: a lattice automorphism of determinant 2,
/// whose image `G × 2Z` is a proper copy of `G × Z`.
pub fn product_with_line_witness(sc: &StructureConstants) -> (StructureConstants, LieEndomorphism) {
    let sum = liealg::direct_sum(sc, &liealg::abelian(1));
    let f = Mat::identity(sc.dim()).block_diag(&Mat::diag_i64(&[2]));
    let endo = classify_endomorphism(&f, &sum).expect("sizes agree");
    assert!(endo.is_lattice_automorphism());
    assert_eq!(endo.det, exactlin::rat(2));
    (sum, endo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vec, rat, unit_vec};

    fn heis() -> StructureConstants {
        StructureConstants::from_sparse(3, &[(1, 2, &[(3, 2)])]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let h = heis();
        let f = classify_endomorphism(&Mat::diag_i64(&[2, 2, 4]), &h).unwrap();
        assert!(f.is_automorphism && f.is_lattice_preserving);
        assert_eq!(f.det, rat(16));
        let g = classify_endomorphism(&Mat::diag_i64(&[2, 1, 1]), &h).unwrap();
        assert!(!g.is_hom);
        assert_eq!(g.failing_pair, Some((1, 2)));
        let z = classify_endomorphism(&Mat::zeros(3, 3), &h).unwrap();
        assert!(z.is_hom && !z.is_automorphism);
        assert!(matches!(
            classify_endomorphism(&Mat::identity(2), &h),
            Err(MalcevError::Size { .. })
        ));
    }

    #[test]
    fn indices() {
        let h = heis();
        let f = classify_endomorphism(&Mat::diag_i64(&[2, 2, 4]), &h).unwrap();
        assert_eq!(image_index(&f).unwrap(), Int::from(16));
        let a = classify_endomorphism(&Mat::diag_i64(&[2, 3]), &liealg::abelian(2)).unwrap();
        assert_eq!(image_index(&a).unwrap(), Int::from(6));
        let sing = classify_endomorphism(&Mat::zeros(2, 2), &liealg::abelian(2)).unwrap();
        assert_eq!(image_index(&sing), Err(MalcevError::Singular));
    }

    #[test]
    fn exp_ad() {
        let h = heis();
        let id = exp_ad_automorphism(&exactlin::zero_vec(3), &h).unwrap();
        assert_eq!(id.matrix, Mat::identity(3));
        let f = exp_ad_automorphism(&unit_vec(3, 0), &h).unwrap();
        assert_eq!(f.matrix.apply(&unit_vec(3, 1)), int_vec(&[0, 1, 2]));
        assert_eq!(f.det, rat(1));
    }

    #[test]
    fn line_witness() {
        let (sum, f) = product_with_line_witness(&heis());
        assert_eq!(sum.dim(), 4);
        assert_eq!(f.det, rat(2));
    }

    #[test]
    fn epi_examples() {
        let h = heis();
        let v = same_rank_epi_check(&Mat::identity(3), &h, &h).unwrap();
        assert!(v.is_isomorphism());
        assert_eq!(v.surjective_on_lattice(), Some(true));
        let v = same_rank_epi_check(&Mat::diag_i64(&[2, 2, 4]), &h, &h).unwrap();
        assert!(v.is_epimorphism() && v.injective);
        assert_eq!(v.lattice_index, Some(Int::from(16)));
        assert_eq!(v.surjective_on_lattice(), Some(false));
        let v = same_rank_epi_check(&Mat::zeros(3, 3), &h, &h).unwrap();
        assert!(!v.is_epimorphism());
        assert!(matches!(
            same_rank_epi_check(&Mat::diag_i64(&[2, 1, 1]), &h, &h),
            Err(MalcevError::NotHomomorphism(1, 2))
        ));
        assert!(matches!(
            same_rank_epi_check(&Mat::identity(3), &h, &liealg::abelian(2)),
            Err(MalcevError::DimensionMismatch { src: 3, dst: 2 })
        ));
    }
}
