//! The dual character `chi_D(x)`, its lower and upper bounds, attainment
//! predicates, and the independent Schubert / key polynomial oracles.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{
    count_leq, find_pattern, subsets_leq, Composition, Diagram, PatternWitness, Permutation,
};
use crate::ypoly::{det_y, rank_of_span, YPolynomial};
use crate::{Error, Result};

/// A monomial `x^a`, an exponent vector of length `n`. Ordered by total
/// degree, then lexicographically on the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XMonomial {
    exps: Vec<u32>,
}

impl XMonomial {
    pub fn new(exps: Vec<u32>) -> Self {
        XMonomial { exps }
    }

    pub fn constant(nvars: usize) -> Self {
        XMonomial {
            exps: vec![0; nvars],
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{e}", k + 1)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct XTermRepr {
    exps: Vec<u32>,
    coeff: String,
}

/// A sparse polynomial in `x_1..x_n` with arbitrary-precision integer
/// coefficients; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<XTermRepr>", into = "Vec<XTermRepr>")]
pub struct XPolynomial {
    nvars: usize,
    terms: BTreeMap<XMonomial, BigInt>,
}

impl XPolynomial {
    pub fn zero(nvars: usize) -> Self {
        XPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        XPolynomial::from_term(XMonomial::constant(nvars), c)
    }

    pub fn from_term(m: XMonomial, c: BigInt) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        XPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &XMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: XMonomial, c: &BigInt) {
        debug_assert_eq!(m.nvars(), self.nvars);
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

    pub fn add(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> XPolynomial {
        XPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &XPolynomial) -> XPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps = m1
                    .exps
                    .iter()
                    .zip(&m2.exps)
                    .map(|(a, b)| a + b)
                    .collect();
                out.add_term(XMonomial::new(exps), &(c1 * c2));
            }
        }
        out
    }

    /// Multiply by the variable `x_i` (1-based).
    pub fn mul_var(&self, i: usize) -> XPolynomial {
        XPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps[i - 1] += 1;
                    (XMonomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Apply the transposition `s_i` swapping `x_i` and `x_{i+1}` (1-based).
    pub fn swap_vars(&self, i: usize) -> XPolynomial {
        XPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.swap(i - 1, i);
                    (XMonomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value at `x = (1,...,1)`.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficientwise `self <= other`.
    pub fn coeffwise_leq(&self, other: &XPolynomial) -> bool {
        self.terms.iter().all(|(m, c)| c <= &other.coeff(m))
    }

    pub fn support(&self) -> impl Iterator<Item = &XMonomial> {
        self.terms.keys()
    }

    /// Extend to `nvars` variables by appending zero exponents.
    pub fn pad_to(&self, nvars: usize) -> XPolynomial {
        assert!(nvars >= self.nvars);
        XPolynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.resize(nvars, 0);
                    (XMonomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// The divided difference `(f - s_i f) / (x_i - x_{i+1})`, computed by
    /// explicit exact polynomial division.
    pub fn divided_difference(&self, i: usize) -> XPolynomial {
        let g = self.sub(&self.swap_vars(i));
        div_by_var_difference(g, i)
    }

    /// The Demazure operator `pi_i f = d_i (x_i f)`.
    pub fn demazure(&self, i: usize) -> XPolynomial {
        self.mul_var(i).divided_difference(i)
    }
}

/// Exact division of `g` by `(x_i - x_{i+1})`. Panics if the division is not
/// exact; every call site divides an antisymmetrized polynomial, which always
/// is.
fn div_by_var_difference(mut g: XPolynomial, i: usize) -> XPolynomial {
    let nvars = g.nvars;
    let mut quotient = XPolynomial::zero(nvars);
    while !g.is_zero() {
        // leading term in an order where x_i dominates, so lt(divisor) = x_i
        let (m, c) = g
            .terms
            .iter()
            .max_by(|(a, _), (b, _)| {
                a.exps[i - 1]
                    .cmp(&b.exps[i - 1])
                    .then_with(|| a.cmp(b))
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero polynomial has a leading term");
        assert!(
            m.exps[i - 1] > 0,
            "polynomial is not divisible by x{i} - x{}",
            i + 1
        );
        let mut qexps = m.exps.clone();
        qexps[i - 1] -= 1;
        let qm = XMonomial::new(qexps);
        quotient.add_term(qm.clone(), &c);
        // g -= c * qm * (x_i - x_{i+1})
        g.add_term(m, &(-&c));
        let mut texps = qm.exps;
        texps[i] += 1;
        g.add_term(XMonomial::new(texps), &c);
    }
    quotient
}

impl fmt::Display for XPolynomial {
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

impl TryFrom<Vec<XTermRepr>> for XPolynomial {
    type Error = Error;
    fn try_from(v: Vec<XTermRepr>) -> Result<Self> {
        let nvars = v.first().map_or(0, |t| t.exps.len());
        let mut out = XPolynomial::zero(nvars);
        for t in v {
            if t.exps.len() != nvars {
                return Err(Error::Parse(
                    "inconsistent exponent vector lengths".into(),
                ));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{}'", t.coeff)))?;
            out.add_term(XMonomial::new(t.exps), &c);
        }
        Ok(out)
    }
}

impl From<XPolynomial> for Vec<XTermRepr> {
    fn from(p: XPolynomial) -> Self {
        p.terms
            .into_iter()
            .map(|(m, c)| XTermRepr {
                exps: m.exps,
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// The x-weight of a diagram: `a_i` = number of columns containing row `i`.
pub fn x_weight(c: &Diagram) -> XMonomial {
    let mut exps = vec![0u32; c.n()];
    for col in c.columns() {
        for &i in col.elems() {
            exps[i - 1] += 1;
        }
    }
    XMonomial::new(exps)
}

/// The Schubert polynomial of `w`, by divided-difference recursion from the
/// staircase monomial of the longest element. Independent of the diagram
/// machinery.
pub fn schubert(w: &Permutation) -> XPolynomial {
    let n = w.len();
    fn go(w: &Permutation, n: usize) -> XPolynomial {
        // first ascent; none means w is the longest element
        match (1..n).find(|&i| w.apply(i) < w.apply(i + 1)) {
            None => {
                let exps: Vec<u32> = (0..n).map(|k| (n - 1 - k) as u32).collect();
                XPolynomial::from_term(XMonomial::new(exps), BigInt::one())
            }
            Some(i) => go(&w.swap_positions(i), n).divided_difference(i),
        }
    }
    go(w, n)
}

/// The key polynomial of `alpha`, by Demazure-operator recursion from the
/// dominant (weakly decreasing) rearrangement. Independent of the diagram
/// machinery.
pub fn key(alpha: &Composition) -> XPolynomial {
    let parts = alpha.parts();
    let n = parts.len();
    match (0..n.saturating_sub(1)).find(|&i| parts[i] < parts[i + 1]) {
        None => {
            let exps: Vec<u32> = parts.iter().map(|&p| p as u32).collect();
            XPolynomial::from_term(XMonomial::new(exps), BigInt::one())
        }
        Some(i) => {
            let mut swapped = parts.to_vec();
            swapped.swap(i, i + 1);
            key(&Composition::new(swapped)).demazure(i + 1)
        }
    }
}

/// Per-column caches for enumerating `C <= D`: the Gale lower sets, their
/// determinants, and their row-count weights.
struct ColumnCache {
    dets: Vec<YPolynomial>,
    weights: Vec<Vec<u32>>,
}

fn column_cache(d: &Diagram) -> Result<Vec<ColumnCache>> {
    let n = d.n();
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let lows = subsets_leq(d.column(j), n);
        let mut dets = Vec::with_capacity(lows.len());
        let mut weights = Vec::with_capacity(lows.len());
        for r in &lows {
            dets.push(det_y(r, d.column(j))?);
            let mut w = vec![0u32; n];
            for &i in r.elems() {
                w[i - 1] += 1;
            }
            weights.push(w);
        }
        out.push(ColumnCache { dets, weights });
    }
    Ok(out)
}

/// Group the index tuples of the Cartesian product of per-column lower sets
/// by x-weight; tuples within a group are in enumeration order.
fn weight_groups(cache: &[ColumnCache], n: usize) -> BTreeMap<XMonomial, Vec<Vec<usize>>> {
    let mut groups: BTreeMap<XMonomial, Vec<Vec<usize>>> = BTreeMap::new();
    let ncols = cache.len();
    let mut idx = vec![0usize; ncols];
    loop {
        let mut w = vec![0u32; n];
        for (j, &k) in idx.iter().enumerate() {
            for (i, &v) in cache[j].weights[k].iter().enumerate() {
                w[i] += v;
            }
        }
        groups
            .entry(XMonomial::new(w))
            .or_default()
            .push(idx.clone());
        // odometer, last column fastest
        let mut pos = ncols;
        loop {
            if pos == 0 {
                return groups;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < cache[pos].dets.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn group_dets(cache: &[ColumnCache], tuples: &[Vec<usize>]) -> Vec<YPolynomial> {
    tuples
        .iter()
        .map(|idx| {
            let mut p = YPolynomial::one();
            for (j, &k) in idx.iter().enumerate() {
                p = p.mul(&cache[j].dets[k]);
            }
            p
        })
        .collect()
}

/// The dual character: the coefficient of `x^a` is the dimension of the span
/// of `{det(Y_D^C) : C <= D, x^C = x^a}`. Homogeneous of degree `|D|`.
pub fn dual_character(d: &Diagram) -> XPolynomial {
    let cache = column_cache(d).expect("lower-set determinants are always well formed");
    let groups = weight_groups(&cache, d.n());
    let mut chi = XPolynomial::zero(d.n());
    for (weight, tuples) in groups {
        let rank = if tuples.len() == 1 {
            // a single C <= D always has a nonzero determinant
            1
        } else {
            rank_of_span(&group_dets(&cache, &tuples))
        };
        chi.add_term(weight, &BigInt::from(rank));
    }
    chi
}

/// The coefficientwise lower bound: the sum of the distinct monomials
/// `x^C` over `C <= D`, each with coefficient 1.
pub fn lower_bound_poly(d: &Diagram) -> XPolynomial {
    let cache = column_cache(d).expect("lower-set determinants are always well formed");
    let groups = weight_groups(&cache, d.n());
    let mut out = XPolynomial::zero(d.n());
    for (weight, _) in groups {
        out.add_term(weight, &BigInt::one());
    }
    out
}

/// `#{C : C <= D}`, the product of per-column lower-set sizes. Never
/// enumerates the Cartesian product.
pub fn upper_bound_count(d: &Diagram) -> BigInt {
    BigInt::from(count_leq(d))
}

/// Whether `chi_D(1,...,1)` equals `#{C : C <= D}`, i.e. all determinant
/// generators are linearly independent. Checks weight groups one at a time
/// and stops at the first rank-deficient group.
pub fn attains_upper(d: &Diagram) -> bool {
    let cache = column_cache(d).expect("lower-set determinants are always well formed");
    let groups = weight_groups(&cache, d.n());
    for tuples in groups.values() {
        if tuples.len() == 1 {
            continue;
        }
        if rank_of_span(&group_dets(&cache, tuples)) < tuples.len() {
            return false;
        }
    }
    true
}

/// Whether every coefficient of `chi_D` is at most 1 (zero-one character).
pub fn attains_lower(d: &Diagram) -> bool {
    dual_character(d)
        .terms()
        .all(|(_, c)| c <= &BigInt::one())
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Everything the `character` CLI subcommand reports about one diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub chi: XPolynomial,
    pub lower: XPolynomial,
    #[serde(with = "bigint_string")]
    pub upper_count: BigInt,
    #[serde(with = "bigint_string")]
    pub chi_at_ones: BigInt,
    pub attains_upper: bool,
    pub attains_lower: bool,
    pub pattern: Option<PatternWitness>,
}

impl CharacterReport {
    pub fn compute(d: &Diagram) -> CharacterReport {
        let chi = dual_character(d);
        let lower = lower_bound_poly(d);
        let upper_count = upper_bound_count(d);
        let chi_at_ones = chi.eval_at_ones();
        let attains_upper = chi_at_ones == upper_count;
        let attains_lower = chi.terms().all(|(_, c)| c <= &BigInt::one());
        CharacterReport {
            chi,
            lower,
            upper_count,
            chi_at_ones,
            attains_upper,
            attains_lower,
            pattern: find_pattern(d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Subset;

    fn sub(v: &[usize]) -> Subset {
        Subset::new(v.to_vec()).unwrap()
    }

    fn diag(n: usize, cols: &[&[usize]]) -> Diagram {
        Diagram::new(n, cols.iter().map(|c| sub(c)).collect()).unwrap()
    }

    fn xpoly(nvars: usize, terms: &[(&[u32], i64)]) -> XPolynomial {
        let mut p = XPolynomial::zero(nvars);
        for (exps, c) in terms {
            p.add_term(XMonomial::new(exps.to_vec()), &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn x_weight_examples() {
        assert_eq!(x_weight(&diag(2, &[&[1], &[1]])).exps(), &[2, 0]);
        assert_eq!(x_weight(&diag(2, &[&[1, 2], &[]])).exps(), &[1, 1]);
        let fig1 = diag(4, &[&[2, 3, 4], &[], &[1, 2], &[3]]);
        assert_eq!(x_weight(&fig1).exps(), &[1, 2, 2, 1]);
    }

    #[test]
    fn dual_character_examples() {
        let d = diag(2, &[&[2], &[]]);
        assert_eq!(
            dual_character(&d),
            xpoly(2, &[(&[1, 0], 1), (&[0, 1], 1)])
        );

        let d = diag(2, &[&[2], &[2]]);
        assert_eq!(
            dual_character(&d),
            xpoly(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );

        let d = Diagram::empty(3).unwrap();
        assert_eq!(dual_character(&d), xpoly(3, &[(&[0, 0, 0], 1)]));
    }

    #[test]
    fn bound_examples() {
        let d = diag(2, &[&[2], &[2]]);
        assert_eq!(
            lower_bound_poly(&d),
            xpoly(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
        assert_eq!(upper_bound_count(&d), 4.into());
        assert!(!attains_upper(&d));

        let d = diag(2, &[&[2], &[1]]);
        assert_eq!(
            lower_bound_poly(&d),
            xpoly(2, &[(&[2, 0], 1), (&[1, 1], 1)])
        );
        assert_eq!(upper_bound_count(&d), 2.into());
        assert!(attains_upper(&d));

        let e = Diagram::empty(2).unwrap();
        assert_eq!(lower_bound_poly(&e), xpoly(2, &[(&[0, 0], 1)]));
        assert_eq!(upper_bound_count(&e), 1.into());
        assert!(attains_upper(&e));
        assert!(attains_lower(&e));
    }

    #[test]
    fn schubert_examples() {
        let id = Permutation::identity(2);
        assert_eq!(schubert(&id), xpoly(2, &[(&[0, 0], 1)]));

        let w = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(schubert(&w), xpoly(2, &[(&[1, 0], 1)]));

        let w0 = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(schubert(&w0), xpoly(3, &[(&[2, 1, 0], 1)]));
    }

    #[test]
    fn key_examples() {
        // weakly decreasing: the plain monomial
        let a = Composition::new(vec![3, 1, 0]);
        assert_eq!(key(&a), xpoly(3, &[(&[3, 1, 0], 1)]));

        let a = Composition::new(vec![0, 2]);
        assert_eq!(
            key(&a),
            xpoly(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
        assert_eq!(key(&a), dual_character(&diag(2, &[&[2], &[2]])));

        let a = Composition::new(vec![0, 1]);
        assert_eq!(key(&a), xpoly(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn divided_difference_basics() {
        // d_1 (x1^2) = x1 + x2
        let p = xpoly(2, &[(&[2, 0], 1)]);
        assert_eq!(
            p.divided_difference(1),
            xpoly(2, &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        // d_i of a symmetric polynomial vanishes
        let sym = xpoly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(sym.divided_difference(1).is_zero());
    }

    #[test]
    fn report_invariants_on_small_example() {
        let d = diag(2, &[&[2], &[2]]);
        let r = CharacterReport::compute(&d);
        assert!(r.lower.coeffwise_leq(&r.chi));
        assert_eq!(r.chi_at_ones, 3.into());
        assert_eq!(r.upper_count, 4.into());
        assert!(!r.attains_upper);
        assert!(r.attains_lower);
        assert!(r.pattern.is_some());
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CharacterReport>(&js).unwrap(), r);
    }

    #[test]
    fn xpolynomial_display_order() {
        let p = xpoly(2, &[(&[0, 2], 1), (&[1, 1], 2), (&[0, 0], -3)]);
        assert_eq!(p.to_string(), "-3 + x2^2 + 2*x1*x2");
    }
}
