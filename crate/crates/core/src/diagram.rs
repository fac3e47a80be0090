//! Diagrams in an `n x n` grid, the Gale order on subsets, lower-set
//! enumeration, the forbidden-configuration scan, and the Rothe/skyline
//! constructors.
//!
//! A diagram is stored per column: column `j` holds the set of occupied row
//! indices. Rows and columns are 1-based throughout, matching the usual
//! matrix coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A strictly increasing subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Subset {
    elems: Vec<usize>,
}

impl Subset {
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        if elems.first().is_some_and(|&e| e == 0) {
            return Err(Error::InvalidSubset("elements must be >= 1".into()));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!(
                "elements must be strictly increasing, got {elems:?}"
            )));
        }
        Ok(Subset { elems })
    }

    pub fn empty() -> Self {
        Subset { elems: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Subset::new(v)
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.elems
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elems.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Gale order: `R <= S` iff the subsets have equal cardinality and `r_i <= s_i`
/// componentwise. Comparing subsets of different cardinality is an error, not
/// `false`, because the order is only defined on equal-size subsets.
pub fn gale_leq(r: &Subset, s: &Subset) -> Result<bool> {
    if r.len() != s.len() {
        return Err(Error::CardinalityMismatch(r.len(), s.len()));
    }
    Ok(r.elems.iter().zip(&s.elems).all(|(a, b)| a <= b))
}

/// All subsets `R <= S` in the Gale order, in lexicographic order on the
/// element sequences.
pub fn subsets_leq(s: &Subset, n: usize) -> Vec<Subset> {
    debug_assert!(s.elems.last().is_none_or(|&e| e <= n));
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s.len());
    fn gen(bounds: &[usize], pos: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if pos == bounds.len() {
            out.push(Subset { elems: cur.clone() });
            return;
        }
        for v in min..=bounds[pos] {
            cur.push(v);
            gen(bounds, pos + 1, v + 1, cur, out);
            cur.pop();
        }
    }
    gen(&s.elems, 0, 1, &mut cur, &mut out);
    out
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    boxes: Vec<(usize, usize)>,
}

/// A diagram `D = (D_1, ..., D_n)` in the `n x n` grid; `D_j` is the set of
/// occupied rows of column `j`. The grid size is always explicit and never
/// inferred from the occupied boxes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct Diagram {
    n: usize,
    columns: Vec<Subset>,
}

impl Diagram {
    pub fn new(n: usize, columns: Vec<Subset>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDiagram("grid size must be positive".into()));
        }
        if columns.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "expected {n} columns, got {}",
                columns.len()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.elems.last().is_some_and(|&e| e > n) {
                return Err(Error::InvalidDiagram(format!(
                    "column {}: row index exceeds grid size {n}",
                    j + 1
                )));
            }
        }
        Ok(Diagram { n, columns })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Diagram::new(n, vec![Subset::empty(); n])
    }

    pub fn from_boxes(n: usize, boxes: &[(usize, usize)]) -> Result<Self> {
        let mut cols = vec![Vec::new(); n];
        for &(i, j) in boxes {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidDiagram(format!(
                    "box ({i},{j}) out of range for grid size {n}"
                )));
            }
            cols[j - 1].push(i);
        }
        let mut columns = Vec::with_capacity(n);
        for (j, mut c) in cols.into_iter().enumerate() {
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidDiagram(format!(
                    "duplicate box in column {}",
                    j + 1
                )));
            }
            columns.push(Subset { elems: c });
        }
        Diagram::new(n, columns)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Subset] {
        &self.columns
    }

    /// Occupied rows of column `j` (1-based).
    pub fn column(&self, j: usize) -> &Subset {
        &self.columns[j - 1]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.columns[j - 1].contains(i)
    }

    pub fn num_boxes(&self) -> usize {
        self.columns.iter().map(Subset::len).sum()
    }

    /// Boxes `(row, col)` in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut b: Vec<(usize, usize)> = (1..=self.n)
            .flat_map(|j| self.columns[j - 1].elems.iter().map(move |&i| (i, j)))
            .collect();
        b.sort_unstable();
        b
    }

    /// Replace column `j` (1-based).
    pub fn with_column(&self, j: usize, col: Subset) -> Result<Self> {
        let mut columns = self.columns.clone();
        columns[j - 1] = col;
        Diagram::new(self.n, columns)
    }

    /// Parse the ASCII format: `n` lines of `n` characters, `#` for a box and
    /// `.` for an empty cell, row 1 first. Lines may be separated by newlines
    /// or `/` (shell-friendly inline form).
    pub fn from_ascii(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let n = lines.len();
        if n == 0 {
            return Err(Error::Parse("empty diagram text".into()));
        }
        let mut boxes = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            if line.chars().count() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} cells, expected {n}",
                    i + 1,
                    line.chars().count()
                )));
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '#' => boxes.push((i + 1, j + 1)),
                    '.' => {}
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected character '{other}' at row {}, column {}",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Diagram::from_boxes(n, &boxes)
    }

    pub fn to_ascii(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for i in 1..=self.n {
            for j in 1..=self.n {
                s.push(if self.contains(i, j) { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    /// Componentwise Gale comparison of the columns; errors when some column
    /// pair has mismatched cardinality.
    pub fn gale_leq(&self, other: &Diagram) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::InvalidDiagram(format!(
                "grid size mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        for (c, d) in self.columns.iter().zip(&other.columns) {
            if !gale_leq(c, d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl TryFrom<DiagramRepr> for Diagram {
    type Error = Error;
    fn try_from(r: DiagramRepr) -> Result<Self> {
        Diagram::from_boxes(r.n, &r.boxes)
    }
}

impl From<Diagram> for DiagramRepr {
    fn from(d: Diagram) -> Self {
        DiagramRepr {
            n: d.n,
            boxes: d.boxes(),
        }
    }
}

// Display writes the ASCII rows joined by '/' so diagrams stay one-line in
// reports and diagnostics.
impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| if self.contains(i, j) { '#' } else { '.' })
                    .collect()
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Streaming iterator over all `C <= D`, the Cartesian product of the
/// per-column Gale lower sets, column 1 most significant.
pub struct DiagramsLeq {
    n: usize,
    choices: Vec<Vec<Subset>>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for DiagramsLeq {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.done {
            return None;
        }
        let columns: Vec<Subset> = self
            .choices
            .iter()
            .zip(&self.idx)
            .map(|(ch, &k)| ch[k].clone())
            .collect();
        // odometer: last column runs fastest
        let mut pos = self.n;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.choices[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(Diagram {
            n: self.n,
            columns,
        })
    }
}

pub fn diagrams_leq(d: &Diagram) -> DiagramsLeq {
    let choices: Vec<Vec<Subset>> = d.columns.iter().map(|c| subsets_leq(c, d.n)).collect();
    DiagramsLeq {
        n: d.n,
        idx: vec![0; choices.len()],
        choices,
        done: false,
    }
}

/// `#{C : C <= D}` as the product of per-column lower-set sizes, without
/// enumerating the product.
pub fn count_leq(d: &Diagram) -> num_bigint::BigUint {
    d.columns
        .iter()
        .map(|c| num_bigint::BigUint::from(subsets_leq(c, d.n).len()))
        .product()
}

/// An occurrence of the forbidden configuration: rows `i1 < i2` and columns
/// `j1 < j2` with both row-`i1` boxes absent and both row-`i2` boxes present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub i1: usize,
    pub i2: usize,
    pub j1: usize,
    pub j2: usize,
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i1={}, i2={}, j1={}, j2={})",
            self.i1, self.i2, self.j1, self.j2
        )
    }
}

/// Scan for the forbidden configuration; returns the occurrence with the
/// smallest `(i1, i2, j1, j2)` if any.
pub fn find_pattern(d: &Diagram) -> Option<PatternWitness> {
    let n = d.n;
    for i1 in 1..=n {
        for i2 in i1 + 1..=n {
            for j1 in 1..=n {
                for j2 in j1 + 1..=n {
                    if !d.contains(i1, j1)
                        && !d.contains(i1, j2)
                        && d.contains(i2, j1)
                        && d.contains(i2, j2)
                    {
                        return Some(PatternWitness { i1, i2, j1, j2 });
                    }
                }
            }
        }
    }
    None
}

pub fn avoids_pattern(d: &Diagram) -> bool {
    find_pattern(d).is_none()
}

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a permutation of [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    pub fn longest(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    pub fn inversions(&self) -> usize {
        let w = &self.one_line;
        let mut c = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Swap the values at positions `i`, `i+1` (1-based), i.e. `w * s_i`.
    pub fn swap_positions(&self, i: usize) -> Permutation {
        let mut v = self.one_line.clone();
        v.swap(i - 1, i);
        Permutation { one_line: v }
    }

    /// Rothe diagram: boxes `(i,j)` with `w(i) > j` and `w^{-1}(j) > i`.
    pub fn rothe_diagram(&self) -> Diagram {
        let n = self.len();
        let inv = self.inverse();
        let columns = (1..=n)
            .map(|j| Subset {
                elems: (1..=n)
                    .filter(|&i| self.apply(i) > j && inv.apply(j) > i)
                    .collect(),
            })
            .collect();
        Diagram { n, columns }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line
    }
}

/// A composition: a sequence of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Skyline diagram in the `n x n` grid: row `i` holds the left-justified
    /// boxes `(i,1), ..., (i, alpha_i)`.
    pub fn skyline_diagram(&self, n: usize) -> Result<Diagram> {
        if self.parts.len() > n {
            return Err(Error::InvalidDiagram(format!(
                "composition has {} parts but the grid size is {n}",
                self.parts.len()
            )));
        }
        if let Some(&p) = self.parts.iter().find(|&&p| p > n) {
            return Err(Error::PartTooLarge { part: p, n });
        }
        let columns = (1..=n)
            .map(|j| Subset {
                elems: self
                    .parts
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p >= j)
                    .map(|(i, _)| i + 1)
                    .collect(),
            })
            .collect();
        Ok(Diagram { n, columns })
    }
}
