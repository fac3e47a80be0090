//! Exact integer polynomials in the upper-triangular variables `y_{i,j}`
//! (`i <= j`), the two expansions of `det(Y_D^C)`, and exact rank of a family
//! of such polynomials via fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Subset};
use crate::fillings::enumerate_fillings;
use crate::{Error, Result};

/// A monomial in the `y_{i,j}`: a sorted multiset of index pairs. Every pair
/// satisfies `i <= j` (the support of the upper-triangular matrix `Y`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct YMonomial {
    pairs: Vec<(usize, usize)>,
}

impl YMonomial {
    pub fn one() -> Self {
        YMonomial::default()
    }

    pub fn variable(i: usize, j: usize) -> Self {
        debug_assert!(i >= 1 && i <= j);
        YMonomial { pairs: vec![(i, j)] }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(pairs.iter().all(|&(i, j)| i >= 1 && i <= j));
        pairs.sort_unstable();
        YMonomial { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        pairs.extend_from_slice(&self.pairs);
        pairs.extend_from_slice(&other.pairs);
        pairs.sort_unstable();
        YMonomial { pairs }
    }

    /// Pairs grouped with exponents, e.g. `[(2,2,2), (1,3,1)]` for `y22^2 y13`.
    pub fn grouped(&self) -> Vec<(usize, usize, u32)> {
        let mut out: Vec<(usize, usize, u32)> = Vec::new();
        for &(i, j) in &self.pairs {
            match out.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += 1,
                _ => out.push((i, j, 1)),
            }
        }
        out
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, j, e)) in self.grouped().into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "y[{i},{j}]")?;
            } else {
                write!(f, "y[{i},{j}]^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct YTermRepr {
    monomial: Vec<(usize, usize, u32)>,
    coeff: String,
}

/// A sparse polynomial in the `y_{i,j}` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored; iteration order is the
/// canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<YTermRepr>", into = "Vec<YTermRepr>")]
pub struct YPolynomial {
    terms: BTreeMap<YMonomial, BigInt>,
}

impl YPolynomial {
    pub fn zero() -> Self {
        YPolynomial::default()
    }

    pub fn one() -> Self {
        YPolynomial::from_term(YMonomial::one(), BigInt::one())
    }

    pub fn from_term(m: YMonomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        YPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &YMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: YMonomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> YPolynomial {
        YPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &YPolynomial) -> YPolynomial {
        self.add(&other.neg())
    }

    pub fn scaled(&self, k: &BigInt) -> YPolynomial {
        if k.is_zero() {
            return YPolynomial::zero();
        }
        YPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<YTermRepr>> for YPolynomial {
    type Error = Error;
    fn try_from(v: Vec<YTermRepr>) -> Result<Self> {
        let mut out = YPolynomial::zero();
        for t in v {
            let mut pairs = Vec::new();
            for (i, j, e) in t.monomial {
                if i == 0 || i > j {
                    return Err(Error::Parse(format!(
                        "monomial index pair ({i},{j}) is not upper-triangular"
                    )));
                }
                for _ in 0..e {
                    pairs.push((i, j));
                }
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{}'", t.coeff)))?;
            out.add_term(YMonomial::from_pairs(pairs), &c);
        }
        Ok(out)
    }
}

impl From<YPolynomial> for Vec<YTermRepr> {
    fn from(p: YPolynomial) -> Self {
        p.terms
            .into_iter()
            .map(|(m, c)| YTermRepr {
                monomial: m.grouped(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// Determinant of the submatrix of `Y` with rows indexed by `rows` and columns
/// by `cols` (entry `y_{r,c}` when `r <= c`, zero otherwise), by direct
/// Leibniz expansion. The 0x0 determinant is 1.
pub fn det_y(rows: &Subset, cols: &Subset) -> Result<YPolynomial> {
    if rows.len() != cols.len() {
        return Err(Error::CardinalityMismatch(rows.len(), cols.len()));
    }
    let m = rows.len();
    let r = rows.elems();
    let c = cols.elems();
    let mut out = YPolynomial::zero();
    // backtrack over columns, assigning a distinct row index to each
    let mut assigned: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(
        t: usize,
        r: &[usize],
        c: &[usize],
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut YPolynomial,
    ) {
        let m = c.len();
        if t == m {
            // parity of the assignment as a permutation of row positions
            let mut inv = 0usize;
            for a in 0..m {
                for b in a + 1..m {
                    if assigned[a] > assigned[b] {
                        inv += 1;
                    }
                }
            }
            let pairs: Vec<(usize, usize)> = (0..m).map(|t| (r[assigned[t]], c[t])).collect();
            let coeff = if inv % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            out.add_term(YMonomial::from_pairs(pairs), &coeff);
            return;
        }
        for u in 0..m {
            if !used[u] && r[u] <= c[t] {
                used[u] = true;
                assigned.push(u);
                rec(t + 1, r, c, assigned, used, out);
                assigned.pop();
                used[u] = false;
            }
        }
    }
    rec(0, r, c, &mut assigned, &mut used, &mut out);
    Ok(out)
}

/// `det(Y_D^C)` as the product over columns of the per-column Leibniz
/// expansions. Empty columns contribute the multiplicative identity.
pub fn det_leibniz(d: &Diagram, c: &Diagram) -> Result<YPolynomial> {
    let mut out = YPolynomial::one();
    for j in 1..=d.n() {
        let (cj, dj) = (c.column(j), d.column(j));
        if cj.len() != dj.len() {
            return Err(Error::ContentMismatch {
                col: j,
                got: cj.len(),
                want: dj.len(),
            });
        }
        let col = det_y(cj, dj)?;
        if col.is_zero() {
            return Ok(YPolynomial::zero());
        }
        out = out.mul(&col);
    }
    Ok(out)
}

/// `det(Y_D^C)` as the signed sum over the flagged fillings of `D` with
/// column content `C`, with like monomials combined.
pub fn det_via_fillings(d: &Diagram, c: &Diagram) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    for filling in enumerate_fillings(d, c)? {
        let coeff = if filling.inv() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        out.add_term(filling.y_monomial(), &coeff);
    }
    Ok(out)
}

/// Dimension of the rational span of a family of polynomials: the coefficient
/// matrix (rows = polynomials, columns = the union of monomials in canonical
/// order) is reduced by fraction-free integer elimination.
pub fn rank_of_span(polys: &[YPolynomial]) -> usize {
    let mut cols: BTreeMap<&YMonomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = cols.len();
            cols.entry(m).or_insert(next);
        }
    }
    if cols.is_empty() {
        return 0;
    }
    // re-number columns in canonical (sorted) monomial order
    for (k, (_, v)) in cols.iter_mut().enumerate() {
        *v = k;
    }
    let ncols = cols.len();
    let matrix: Vec<Vec<BigInt>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigInt::zero(); ncols];
            for (m, c) in p.terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    bareiss_rank(matrix)
}

/// Rank of an integer matrix by Bareiss fraction-free elimination. All
/// intermediate divisions are exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for cc in c + 1..cols {
                let v = &pivot_row[c] * &row[cc] - &row[c] * &pivot_row[cc];
                row[cc] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gale_leq;

    fn sub(v: &[usize]) -> Subset {
        Subset::new(v.to_vec()).unwrap()
    }

    fn diag(n: usize, cols: &[&[usize]]) -> Diagram {
        Diagram::new(n, cols.iter().map(|c| sub(c)).collect()).unwrap()
    }

    fn yvar(i: usize, j: usize) -> YPolynomial {
        YPolynomial::from_term(YMonomial::variable(i, j), 1.into())
    }

    #[test]
    fn det_examples() {
        let d = diag(2, &[&[2], &[2]]);
        let c = diag(2, &[&[1], &[2]]);
        let expect = yvar(1, 2).mul(&yvar(2, 2));
        assert_eq!(det_via_fillings(&d, &c).unwrap(), expect);
        assert_eq!(det_leibniz(&d, &c).unwrap(), expect);

        // C not <= D in some column: zero polynomial
        let c = diag(2, &[&[2], &[2]]);
        let d2 = diag(2, &[&[1], &[2]]);
        assert!(det_via_fillings(&d2, &c).unwrap().is_zero());
        assert!(det_leibniz(&d2, &c).unwrap().is_zero());

        // D = C full columns: single diagonal term with coefficient +1
        let full = diag(2, &[&[1, 2], &[1, 2]]);
        let det = det_leibniz(&full, &full).unwrap();
        assert_eq!(det.num_terms(), 1);
        let m = YMonomial::from_pairs(vec![(1, 1), (2, 2), (1, 1), (2, 2)]);
        assert_eq!(det.coeff(&m), 1.into());
        assert_eq!(det_via_fillings(&full, &full).unwrap(), det);
    }

    #[test]
    fn single_column_two_by_two() {
        // D_j = {2,3}, C_j = {1,2}: y12*y23 - y22*y13
        let det = det_y(&sub(&[1, 2]), &sub(&[2, 3])).unwrap();
        let expect = yvar(1, 2)
            .mul(&yvar(2, 3))
            .sub(&yvar(2, 2).mul(&yvar(1, 3)));
        assert_eq!(det, expect);
    }

    #[test]
    fn empty_det_is_one() {
        assert_eq!(
            det_y(&Subset::empty(), &Subset::empty()).unwrap(),
            YPolynomial::one()
        );
    }

    #[test]
    fn det_nonzero_iff_gale_leq() {
        for n in 1..=4usize {
            let all: Vec<Subset> = (0u32..(1 << n))
                .map(|m| {
                    Subset::new((1..=n).filter(|&e| m >> (e - 1) & 1 == 1).collect()).unwrap()
                })
                .collect();
            for r in &all {
                for s in &all {
                    if r.len() != s.len() {
                        continue;
                    }
                    let nonzero = !det_y(r, s).unwrap().is_zero();
                    assert_eq!(nonzero, gale_leq(r, s).unwrap(), "R={r} S={s}");
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        let p = yvar(1, 2).mul(&yvar(2, 2));
        assert_eq!(rank_of_span(&[p.clone(), p.clone()]), 1);
        assert_eq!(rank_of_span(&[YPolynomial::zero()]), 0);
        assert_eq!(rank_of_span(&[]), 0);
        let a = yvar(1, 1);
        let b = yvar(1, 2);
        let c = a.add(&b);
        assert_eq!(rank_of_span(&[a, b, c]), 2);
    }

    #[test]
    fn bareiss_rank_small_cases() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(bareiss_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(
            bareiss_rank(m(&[&[2, 0, 1], &[0, 3, 1], &[2, 3, 2], &[4, 3, 3]])),
            2
        );
    }

    #[test]
    fn json_round_trip() {
        let p = yvar(1, 2)
            .mul(&yvar(2, 2))
            .scaled(&BigInt::from(-7))
            .add(&yvar(1, 3).mul(&yvar(1, 3)));
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<YPolynomial>(&js).unwrap(), p);
    }

    #[test]
    fn display_order_is_canonical() {
        let p = yvar(2, 2).add(&yvar(1, 2).scaled(&BigInt::from(-3)));
        assert_eq!(p.to_string(), "-3*y[1,2] + y[2,2]");
    }
}
