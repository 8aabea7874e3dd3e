//! The lattice group `(Z^n, *)`: closure of the integer lattice under the
//! BCH law, and coset enumeration of image subgroups.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::bch::{monomial_name, symbolic_product, GroupLaw, Poly};
use super::endo::LieEndomorphism;
use crate::error::MalcevError;
use crate::exactlin::{self, Int, Rat};
use crate::liealg::StructureConstants;

pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// An integral point of `log G = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub coords: Vec<Int>,
}

impl LatticePoint {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticePoint { coords }
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        LatticePoint::new(xs.iter().map(|&x| Int::from(x)).collect())
    }

    /// `None` unless every entry is an integer.
    pub fn from_rat(v: &[Rat]) -> Option<Self> {
        exactlin::is_integral_vec(v).then(|| LatticePoint::new(v.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coords.iter().cloned().map(Rat::from_integer).collect()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// A non-integral coefficient of a BCH coordinate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Offender {
    /// 1-based output coordinate.
    pub coordinate: usize,
    pub monomial: String,
    pub coefficient: Rat,
}

/// An integral pair whose product leaves `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub x: LatticePoint,
    pub y: LatticePoint,
    pub product: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    /// Number of nonzero monomial coefficients inspected.
    pub monomials: usize,
    /// Set by the coefficient check on failure.
    pub offender: Option<Offender>,
    /// Set by the exact check on failure.
    pub counterexample: Option<Counterexample>,
    pub exact: bool,
}

impl ClosureReport {
    pub fn evidence(&self) -> String {
        if let Some(o) = &self.offender {
            format!(
                "coordinate {} has coefficient {} on monomial {}",
                o.coordinate, o.coefficient, o.monomial
            )
        } else if let Some(c) = &self.counterexample {
            format!(
                "x = {:?}, y = {:?} give x*y = [{}]",
                c.x.coords,
                c.y.coords,
                c.product.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            )
        } else if self.exact {
            "integer-valued on all of Z^n x Z^n".to_owned()
        } else {
            format!("all {} BCH coefficients are integers", self.monomials)
        }
    }
}

fn first_fractional(polys: &[Poly]) -> (usize, Option<Offender>) {
    let mut count = 0;
    for (k, p) in polys.iter().enumerate() {
        for (m, c) in p {
            count += 1;
            if !c.is_integer() {
                return (
                    count,
                    Some(Offender {
                        coordinate: k + 1,
                        monomial: monomial_name(m),
                        coefficient: c.clone(),
                    }),
                );
            }
        }
    }
    (count, None)
}

/// Sufficient check: every coefficient of every coordinate of `x * y`,
/// expanded as a polynomial in the coordinates of `x` and `y`, is an
/// integer.
pub fn lattice_closure_check(sc: &StructureConstants) -> ClosureReport {
    let law = GroupLaw::new(sc);
    let polys = symbolic_product(&law);
    let (monomials, offender) = first_fractional(&polys);
    ClosureReport {
        closed: offender.is_none(),
        monomials,
        offender,
        counterexample: None,
        exact: false,
    }
}

/// Exact check: whether the coordinate polynomials are integer-valued on
/// `Z^2n`. A polynomial of total degree at most `c` is integer-valued iff
/// it takes integer values at the nonnegative points of coordinate sum at
/// most `c` (its coefficients in the binomial basis are the finite
/// differences there). The number of points is `C(2n+c, c)`.
pub fn lattice_closure_check_exact(sc: &StructureConstants) -> ClosureReport {
    let law = GroupLaw::new(sc);
    let polys = symbolic_product(&law);
    let n = sc.dim();
    let degree = law.class().max(1);
    let mut monomials = 0;
    for p in &polys {
        monomials += p.len();
    }
    let counterexample = first_non_integer_value(&polys, 2 * n, degree as u32).map(|(pt, product)| {
        let ints: Vec<i64> = pt.iter().map(|&v| v as i64).collect();
        Counterexample {
            x: LatticePoint::from_i64(&ints[..n]),
            y: LatticePoint::from_i64(&ints[n..]),
            product,
        }
    });
    ClosureReport {
        closed: counterexample.is_none(),
        monomials,
        offender: None,
        counterexample,
        exact: true,
    }
}

/// First nonnegative point of coordinate sum at most `degree` at which some
/// polynomial takes a non-integer value.
fn first_non_integer_value(polys: &[Poly], vars: usize, degree: u32) -> Option<(Vec<u32>, Vec<Rat>)> {
    let mut point = vec![0u32; vars];
    let mut found = None;
    points_with_sum_at_most(&mut point, 0, degree, &mut |pt| {
        let values: Vec<Rat> = polys.iter().map(|p| eval_poly(p, pt)).collect();
        if values.iter().all(Rat::is_integer) {
            return true;
        }
        found = Some((pt.to_vec(), values));
        false
    });
    found
}

/// Visits all points with `Σ pt[i] ≤ budget`; the visitor returns `false`
/// to stop.
fn points_with_sum_at_most(pt: &mut [u32], pos: usize, budget: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    if pos == pt.len() {
        return visit(pt);
    }
    for v in 0..=budget {
        pt[pos] = v;
        if !points_with_sum_at_most(pt, pos + 1, budget - v, visit) {
            pt[pos] = 0;
            return false;
        }
    }
    pt[pos] = 0;
    true
}

fn eval_poly(p: &Poly, pt: &[u32]) -> Rat {
    let mut acc = Rat::zero();
    for (m, c) in p {
        let mut term = Int::one();
        for (&e, &v) in m.iter().zip(pt) {
            if e > 0 {
                term *= num_traits::pow(Int::from(v), e as usize);
            }
        }
        acc += c * Rat::from_integer(term);
    }
    acc
}

/// `[e_i,e_j] ∈ span(e_k : k > j)` for all `i < j`. In such a basis the
/// basis vectors generate the group `(Z^n, *)` whenever it is closed.
pub fn is_adapted_basis(sc: &StructureConstants) -> bool {
    sc.terms().iter().all(|(i, j, k, _)| k > i.max(j))
}

/// Number of right cosets of `H = F(Z^n)` in `(Z^n, *)`, by breadth-first
/// search from `0` under right multiplication by `±e_i`. A product `g`
/// joins the coset of representative `r` iff `F^{-1}(g * r^{-1})` is
/// integral.
///
/// Requires a lattice-closed algebra whose basis is adapted (see
/// [`is_adapted_basis`]), so that the generators reach every coset.
pub fn coset_index_oracle(f: &LieEndomorphism, sc: &StructureConstants, cap: usize) -> Result<usize, MalcevError> {
    let n = sc.dim();
    if f.matrix.rows() != n || f.matrix.cols() != n {
        return Err(MalcevError::Size {
            rows: f.matrix.rows(),
            cols: f.matrix.cols(),
            dim: n,
        });
    }
    if let Some((i, j)) = f.failing_pair {
        return Err(MalcevError::NotHomomorphism(i, j));
    }
    if !f.is_lattice_preserving {
        return Err(MalcevError::NotLatticePreserving);
    }
    let (_, inverse) = exactlin::det_inv(&f.matrix).expect("square");
    let inverse = inverse.ok_or(MalcevError::Singular)?;
    if let Some((i, j, _, _)) = sc.terms().iter().find(|(i, j, k, _)| k <= i.max(j)) {
        return Err(MalcevError::BasisNotAdapted(i + 1, j + 1));
    }
    let law = GroupLaw::new(sc);
    let mut generators = Vec::with_capacity(2 * n);
    for i in 0..n {
        generators.push(exactlin::unit_vec(n, i));
        generators.push(exactlin::vec_neg(&exactlin::unit_vec(n, i)));
    }
    let mut reps: Vec<Vec<Rat>> = vec![law.identity()];
    let mut rep_inverses: Vec<Vec<Rat>> = vec![law.identity()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        for s in &generators {
            let g = law.mul(&reps[r], s);
            if !exactlin::is_integral_vec(&g) {
                return Err(MalcevError::NotLatticeClosed(format!(
                    "product of lattice points has coordinates [{}]",
                    g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                )));
            }
            let known = rep_inverses
                .iter()
                .any(|ri| exactlin::is_integral_vec(&inverse.apply(&law.mul(&g, ri))));
            if !known {
                if reps.len() == cap {
                    return Err(MalcevError::BoundExceeded { cap });
                }
                rep_inverses.push(law.inverse(&g));
                reps.push(g);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    Ok(reps.len())
}
