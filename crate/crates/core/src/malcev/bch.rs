//! Baker-Campbell-Hausdorff group law on log coordinates.
//!
//! Dynkin's formula
//!
//! ```text
//! log(e^X e^Y) = Σ_k (-1)^(k-1)/k Σ [X^r1 Y^s1 ... X^rk Y^sk] / ((Σ r_i+s_i) Π r_i! s_i!)
//! ```
//!
//! with `[w]` the right-nested bracket of the word `w`. All terms of total
//! degree above the nilpotency class vanish, so the sum is finite. The
//! coefficients are merged per word once, and evaluation memoizes the
//! nested brackets of shared suffixes.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::exactlin::{self, Int, Rat};
use crate::liealg::{lower_central_series, StructureConstants};

/// A word over `{X, Y}`; `false` is `X`.
pub type Word = Vec<bool>;

/// Merged Dynkin coefficient per word, for words of length `1..=max_degree`.
/// Words whose nested bracket is identically zero (last two letters equal)
/// are dropped.
pub fn dynkin_coefficients(max_degree: usize) -> Vec<(Word, Rat)> {
    let mut acc: BTreeMap<Word, Rat> = BTreeMap::new();
    let mut factorial = vec![Int::one()];
    for i in 1..=max_degree {
        let next = &factorial[i - 1] * Int::from(i);
        factorial.push(next);
    }
    for d in 1..=max_degree {
        let mut pairs = Vec::new();
        collect_sequences(d, &mut pairs, &mut |seq| {
            let k = seq.len();
            let mut denom = Int::from(k) * Int::from(d);
            let mut word = Word::with_capacity(d);
            for &(r, s) in seq {
                denom *= &factorial[r] * &factorial[s];
                word.extend(std::iter::repeat_n(false, r));
                word.extend(std::iter::repeat_n(true, s));
            }
            if word.len() >= 2 && word[word.len() - 1] == word[word.len() - 2] {
                return;
            }
            let sign = if k % 2 == 1 { Int::one() } else { -Int::one() };
            *acc.entry(word).or_insert_with(Rat::zero) += Rat::new(sign, denom);
        });
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Calls `f` on every sequence of pairs `(r_i, s_i)`, `r_i + s_i >= 1`,
/// with total `Σ r_i + s_i = total`.
fn collect_sequences<F: FnMut(&[(usize, usize)])>(total: usize, prefix: &mut Vec<(usize, usize)>, f: &mut F) {
    if total == 0 {
        if !prefix.is_empty() {
            f(prefix);
        }
        return;
    }
    for len in 1..=total {
        for r in 0..=len {
            prefix.push((r, len - r));
            collect_sequences(total - len, prefix, f);
            prefix.pop();
        }
    }
}

/// Anything the Dynkin words can be evaluated in: rational vectors, or
/// vectors of polynomials in the coordinates.
pub(crate) trait BracketModule {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Rat, v: &Self::Elem);
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

pub(crate) fn evaluate<M: BracketModule>(module: &M, words: &[(Word, Rat)], x: &M::Elem, y: &M::Elem) -> M::Elem {
    let mut memo: HashMap<&[bool], M::Elem> = HashMap::new();
    let mut out = module.zero();
    for (w, c) in words {
        let v = nested(module, w, x, y, &mut memo);
        module.add_scaled(&mut out, c, &v);
    }
    out
}

fn nested<'w, M: BracketModule>(
    module: &M,
    w: &'w [bool],
    x: &M::Elem,
    y: &M::Elem,
    memo: &mut HashMap<&'w [bool], M::Elem>,
) -> M::Elem {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let letter = |b: bool| if b { y.clone() } else { x.clone() };
    let v = if w.len() == 1 {
        letter(w[0])
    } else {
        let tail = nested(module, &w[1..], x, y, memo);
        module.bracket(&letter(w[0]), &tail)
    };
    memo.insert(w, v.clone());
    v
}

struct Vectors<'a>(&'a StructureConstants);

impl BracketModule for Vectors<'_> {
    type Elem = Vec<Rat>;
    fn zero(&self) -> Vec<Rat> {
        exactlin::zero_vec(self.0.dim())
    }
    fn add_scaled(&self, acc: &mut Vec<Rat>, c: &Rat, v: &Vec<Rat>) {
        exactlin::axpy(acc, c, v);
    }
    fn bracket(&self, a: &Vec<Rat>, b: &Vec<Rat>) -> Vec<Rat> {
        self.0.bracket(a, b)
    }
}

/// The group law `x * y = log(exp x exp y)` of a nilpotent algebra.
#[derive(Clone, Debug)]
pub struct GroupLaw {
    sc: StructureConstants,
    class: usize,
    words: Vec<(Word, Rat)>,
}

impl GroupLaw {
    /// Panics on non-nilpotent input; validate first.
    pub fn new(sc: &StructureConstants) -> Self {
        let class = lower_central_series(sc)
            .expect("group law needs a nilpotent algebra")
            .class;
        GroupLaw {
            sc: sc.clone(),
            class,
            words: dynkin_coefficients(class.max(1)),
        }
    }

    pub fn algebra(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn words(&self) -> &[(Word, Rat)] {
        &self.words
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert!(x.len() == self.sc.dim() && y.len() == self.sc.dim());
        evaluate(&Vectors(&self.sc), &self.words, &x.to_vec(), &y.to_vec())
    }

    pub fn inverse(&self, x: &[Rat]) -> Vec<Rat> {
        exactlin::vec_neg(x)
    }

    pub fn identity(&self) -> Vec<Rat> {
        exactlin::zero_vec(self.sc.dim())
    }
}

/// BCH product of two vectors.
pub fn bch(x: &[Rat], y: &[Rat], sc: &StructureConstants) -> Vec<Rat> {
    GroupLaw::new(sc).mul(x, y)
}

/// Sparse polynomial in the `2n` coordinates `x_1..x_n, y_1..y_n`.
pub(crate) type Poly = BTreeMap<Vec<u8>, Rat>;

struct PolyVectors<'a> {
    sc: &'a StructureConstants,
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u8> = ma.iter().zip(mb).map(|(p, q)| p + q).collect();
            *out.entry(m).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add_scaled(acc: &mut Poly, c: &Rat, p: &Poly) {
    for (m, v) in p {
        *acc.entry(m.clone()).or_insert_with(Rat::zero) += c * v;
    }
    acc.retain(|_, v| !v.is_zero());
}

impl BracketModule for PolyVectors<'_> {
    type Elem = Vec<Poly>;
    fn zero(&self) -> Vec<Poly> {
        vec![Poly::new(); self.sc.dim()]
    }
    fn add_scaled(&self, acc: &mut Vec<Poly>, c: &Rat, v: &Vec<Poly>) {
        for (a, b) in acc.iter_mut().zip(v) {
            poly_add_scaled(a, c, b);
        }
    }
    fn bracket(&self, a: &Vec<Poly>, b: &Vec<Poly>) -> Vec<Poly> {
        let mut out = self.zero();
        for (i, j, k, c) in self.sc.terms() {
            if !a[*i].is_empty() && !b[*j].is_empty() {
                poly_add_scaled(&mut out[*k], c, &poly_mul(&a[*i], &b[*j]));
            }
            if !a[*j].is_empty() && !b[*i].is_empty() {
                poly_add_scaled(&mut out[*k], &-c.clone(), &poly_mul(&a[*j], &b[*i]));
            }
        }
        out
    }
}

/// Coordinates of `x * y` as polynomials in `x_1..x_n, y_1..y_n`.
pub(crate) fn symbolic_product(law: &GroupLaw) -> Vec<Poly> {
    let n = law.sc.dim();
    let var = |i: usize| {
        let mut m = vec![0u8; 2 * n];
        m[i] = 1;
        let mut p = Poly::new();
        p.insert(m, Rat::one());
        p
    };
    let x: Vec<Poly> = (0..n).map(var).collect();
    let y: Vec<Poly> = (0..n).map(|i| var(n + i)).collect();
    evaluate(&PolyVectors { sc: &law.sc }, &law.words, &x, &y)
}

/// Renders a monomial over `x_1..x_n, y_1..y_n`.
pub(crate) fn monomial_name(m: &[u8]) -> String {
    let n = m.len() / 2;
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = if i < n {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - n + 1)
        };
        parts.push(if e == 1 { v } else { format!("{v}^{e}") });
    }
    if parts.is_empty() {
        "1".to_owned()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int_vec, unit_vec};
    use crate::liealg::abelian;

    #[test]
    fn low_degree_coefficients() {
        let w = dynkin_coefficients(2);
        assert_eq!(
            w,
            vec![
                (vec![false], frac(1, 1)),
                (vec![false, true], frac(1, 4)),
                (vec![true], frac(1, 1)),
                (vec![true, false], frac(-1, 4)),
            ]
        );
    }

    #[test]
    fn third_order_term() {
        // x + y + 1/2[x,y] + 1/12[x,[x,y]] - 1/12[y,[x,y]]
        let f = StructureConstants::from_sparse(4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]).unwrap();
        let x = vec![frac(1, 3), frac(-2, 5), frac(7, 1), frac(3, 2)];
        let y = vec![frac(2, 1), frac(1, 7), frac(0, 1), frac(-1, 4)];
        let xy = f.bracket(&x, &y);
        let mut expect = exactlin::vec_add(&x, &y);
        exactlin::axpy(&mut expect, &frac(1, 2), &xy);
        exactlin::axpy(&mut expect, &frac(1, 12), &f.bracket(&x, &xy));
        exactlin::axpy(&mut expect, &frac(-1, 12), &f.bracket(&y, &xy));
        assert_eq!(bch(&x, &y, &f), expect);
    }

    #[test]
    fn abelian_law_is_addition() {
        let law = GroupLaw::new(&abelian(3));
        let x = int_vec(&[1, -2, 5]);
        let y = int_vec(&[4, 0, -1]);
        assert_eq!(law.mul(&x, &y), int_vec(&[5, -2, 4]));
    }

    #[test]
    fn heisenberg_lattice_product() {
        let h = StructureConstants::from_sparse(3, &[(1, 2, &[(3, 2)])]).unwrap();
        assert_eq!(bch(&unit_vec(3, 0), &unit_vec(3, 1), &h), int_vec(&[1, 1, 1]));
    }

    #[test]
    fn inverse_law_filiform() {
        let f = StructureConstants::from_sparse(4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]).unwrap();
        let law = GroupLaw::new(&f);
        let x = vec![frac(1, 3), frac(-2, 5), frac(7, 1), frac(3, 2)];
        assert_eq!(law.mul(&x, &law.inverse(&x)), law.identity());
    }

    #[test]
    fn symbolic_matches_numeric() {
        let h = StructureConstants::from_sparse(3, &[(1, 2, &[(3, 1)])]).unwrap();
        let law = GroupLaw::new(&h);
        let polys = symbolic_product(&law);
        // x3 + y3 + 1/2 x1 y2 - 1/2 x2 y1
        assert_eq!(polys[2].len(), 4);
        let m = |v: [u8; 6]| v.to_vec();
        assert_eq!(polys[2][&m([1, 0, 0, 0, 1, 0])], frac(1, 2));
        assert_eq!(polys[2][&m([0, 1, 0, 1, 0, 0])], frac(-1, 2));
        assert_eq!(monomial_name(&m([1, 0, 0, 0, 1, 0])), "x1*y2");
    }
}
