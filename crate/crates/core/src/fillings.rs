//! Flagged fillings of a diagram with prescribed column content: enumeration,
//! inversion statistics, row-sum weights, and the greedy maximal filling.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::ypoly::YMonomial;
use crate::{Error, Result};

/// Number of inversion pairs of a word.
pub fn inversions(word: &[usize]) -> usize {
    let mut c = 0;
    for r in 0..word.len() {
        for s in r + 1..word.len() {
            if word[r] > word[s] {
                c += 1;
            }
        }
    }
    c
}

/// A flagged filling: each box of the diagram holds a positive integer, the
/// entry in box `(i,j)` is at most `i`, and entries within a column are
/// pairwise distinct. Entries are stored column-major, aligned with the sorted
/// box rows (top to bottom).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlaggedFilling {
    #[serde(skip)]
    diagram: Diagram,
    entries: Vec<Vec<usize>>,
}

impl FlaggedFilling {
    pub fn new(diagram: Diagram, entries: Vec<Vec<usize>>) -> Result<Self> {
        if entries.len() != diagram.n() {
            return Err(Error::InvalidDiagram(format!(
                "expected {} entry columns, got {}",
                diagram.n(),
                entries.len()
            )));
        }
        for j in 1..=diagram.n() {
            let rows = diagram.column(j).elems();
            let col = &entries[j - 1];
            if col.len() != rows.len() {
                return Err(Error::ContentMismatch {
                    col: j,
                    got: col.len(),
                    want: rows.len(),
                });
            }
            for (&entry, &row) in col.iter().zip(rows) {
                if entry == 0 || entry > row {
                    return Err(Error::NoFilling(format!(
                        "entry {entry} violates the flag condition in box ({row},{j})"
                    )));
                }
            }
            let distinct: BTreeSet<usize> = col.iter().copied().collect();
            if distinct.len() != col.len() {
                return Err(Error::NoFilling(format!(
                    "repeated entry in column {j}"
                )));
            }
        }
        Ok(FlaggedFilling { diagram, entries })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// The top-to-bottom reading word of column `j` (1-based).
    pub fn reading_word(&self, j: usize) -> &[usize] {
        &self.entries[j - 1]
    }

    /// Iterate `(row, col, entry)` over all boxes, column-major.
    pub fn boxes_with_entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (1..=self.diagram.n()).flat_map(move |j| {
            self.diagram
                .column(j)
                .elems()
                .iter()
                .zip(&self.entries[j - 1])
                .map(move |(&row, &entry)| (row, j, entry))
        })
    }

    /// The set of entries in each column, as a diagram `C <= D`.
    pub fn content(&self) -> Diagram {
        let boxes: Vec<(usize, usize)> = (1..=self.diagram.n())
            .flat_map(|j| self.entries[j - 1].iter().map(move |&e| (e, j)))
            .collect();
        Diagram::from_boxes(self.diagram.n(), &boxes).expect("column entries are distinct")
    }

    /// Sum over columns of the inversion numbers of the reading words.
    pub fn inv(&self) -> usize {
        self.entries.iter().map(|col| inversions(col)).sum()
    }

    /// `(-1)^{inv}`.
    pub fn sign(&self) -> i64 {
        if self.inv() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Row sums `f_i` = total of entries placed in row `i`.
    pub fn weight(&self) -> WeightVector {
        let mut f = vec![0usize; self.diagram.n()];
        for (row, _, entry) in self.boxes_with_entries() {
            f[row - 1] += entry;
        }
        WeightVector(f)
    }

    /// The monomial `prod_{(i,j) in D} y_{c_{ij}, i}`: first index the entry,
    /// second index the box row. The grid column never appears.
    pub fn y_monomial(&self) -> YMonomial {
        YMonomial::from_pairs(
            self.boxes_with_entries()
                .map(|(row, _, entry)| (entry, row))
                .collect(),
        )
    }
}

impl fmt::Display for FlaggedFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .entries
            .iter()
            .map(|col| col.iter().map(ToString::to_string).join(","))
            .collect();
        write!(f, "[{}]", words.join(" | "))
    }
}

/// Row-sum weight vector, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<usize>);

/// All legal entry columns for boxes at `rows` (sorted ascending) with entry
/// set `content`, in a fixed deterministic order.
fn column_fillings(rows: &[usize], content: &[usize]) -> Vec<Vec<usize>> {
    content
        .iter()
        .copied()
        .permutations(content.len())
        .filter(|perm| perm.iter().zip(rows).all(|(&e, &r)| e <= r))
        .collect()
}

/// All flagged fillings of `D` whose column-`j` entry set is exactly `C_j`.
/// Empty when the flag condition is unsatisfiable for some column (in
/// particular whenever `C` is not Gale-dominated by `D`); an error when some
/// column cardinality differs.
pub fn enumerate_fillings(d: &Diagram, c: &Diagram) -> Result<Vec<FlaggedFilling>> {
    let n = d.n();
    let mut per_column: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for j in 1..=n {
        let rows = d.column(j).elems();
        let content = c.column(j).elems();
        if rows.len() != content.len() {
            return Err(Error::ContentMismatch {
                col: j,
                got: content.len(),
                want: rows.len(),
            });
        }
        let cols = column_fillings(rows, content);
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        per_column.push(cols);
    }
    let fillings = per_column
        .into_iter()
        .multi_cartesian_product()
        .map(|entries| FlaggedFilling {
            diagram: d.clone(),
            entries,
        })
        .collect();
    Ok(fillings)
}

/// The unique filling of maximal lexicographic weight in `F_D(C)`: per
/// column, fill boxes top to bottom, each receiving the largest unused
/// element of `C_j` not exceeding the box row. Errors when the greedy rule
/// cannot place some element (exactly when `C` is not Gale-dominated by `D`).
pub fn f_max(d: &Diagram, c: &Diagram) -> Result<FlaggedFilling> {
    let n = d.n();
    let mut entries = Vec::with_capacity(n);
    for j in 1..=n {
        let rows = d.column(j).elems();
        let content = c.column(j).elems();
        if rows.len() != content.len() {
            return Err(Error::ContentMismatch {
                col: j,
                got: content.len(),
                want: rows.len(),
            });
        }
        let mut avail: BTreeSet<usize> = content.iter().copied().collect();
        let mut col = Vec::with_capacity(rows.len());
        for &row in rows {
            let Some(&pick) = avail.range(..=row).next_back() else {
                return Err(Error::NoFilling(format!(
                    "column {j}: no remaining element of {} fits in row {row}",
                    c.column(j)
                )));
            };
            avail.remove(&pick);
            col.push(pick);
        }
        entries.push(col);
    }
    Ok(FlaggedFilling {
        diagram: d.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Subset;
    use crate::ypoly::YMonomial;

    fn sub(v: &[usize]) -> Subset {
        Subset::new(v.to_vec()).unwrap()
    }

    fn diag(n: usize, cols: &[&[usize]]) -> Diagram {
        Diagram::new(n, cols.iter().map(|c| sub(c)).collect()).unwrap()
    }

    /// The filling of Figure 3: columns ({2,3,4},{2,3,4},{1},{3,4}) with
    /// reading words 231, 213, 1, 32.
    pub(crate) fn figure3() -> FlaggedFilling {
        let d = diag(4, &[&[2, 3, 4], &[2, 3, 4], &[1], &[3, 4]]);
        FlaggedFilling::new(d, vec![vec![2, 3, 1], vec![2, 1, 3], vec![1], vec![3, 2]]).unwrap()
    }

    #[test]
    fn figure3_statistics() {
        let f = figure3();
        assert_eq!(f.inv(), 4);
        assert_eq!(f.sign(), 1);
        assert_eq!(f.weight(), WeightVector(vec![1, 4, 7, 6]));
        let expected = YMonomial::from_pairs(vec![
            (1, 1),
            (2, 2),
            (2, 2),
            (1, 3),
            (3, 3),
            (3, 3),
            (1, 4),
            (2, 4),
            (3, 4),
        ]);
        assert_eq!(f.y_monomial(), expected);
    }

    #[test]
    fn inv_trivial_cases() {
        assert_eq!(inversions(&[3, 2]), 1);
        assert_eq!(inversions(&[1, 2, 3]), 0);
        let d = diag(3, &[&[1, 2, 3], &[], &[]]);
        let f = FlaggedFilling::new(d, vec![vec![1, 2, 3], vec![], vec![]]).unwrap();
        assert_eq!(f.inv(), 0);
        assert_eq!(f.sign(), 1);
    }

    #[test]
    fn enumerate_examples() {
        // D_j = {3,4}, C_j = {2,3}: two fillings, [3,2] and [2,3]
        let d = diag(4, &[&[3, 4], &[], &[], &[]]);
        let c = diag(4, &[&[2, 3], &[], &[], &[]]);
        let fs = enumerate_fillings(&d, &c).unwrap();
        let words: Vec<&[usize]> = fs.iter().map(|f| f.reading_word(1)).collect();
        assert_eq!(words.len(), 2);
        assert!(words.contains(&[3usize, 2].as_slice()));
        assert!(words.contains(&[2usize, 3].as_slice()));

        // flag violation: entry 3 cannot sit in row 2
        let d = diag(3, &[&[2], &[], &[]]);
        let c = diag(3, &[&[3], &[], &[]]);
        assert!(enumerate_fillings(&d, &c).unwrap().is_empty());

        // D = C = ({1,2}): the single filling [1,2]
        let d = diag(2, &[&[1, 2], &[]]);
        let fs = enumerate_fillings(&d, &d).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].reading_word(1), &[1, 2]);
    }

    #[test]
    fn enumerate_rejects_cardinality_mismatch() {
        let d = diag(2, &[&[1, 2], &[]]);
        let c = diag(2, &[&[1], &[]]);
        assert!(matches!(
            enumerate_fillings(&d, &c),
            Err(Error::ContentMismatch { col: 1, .. })
        ));
    }

    #[test]
    fn f_max_examples() {
        let d = diag(4, &[&[3, 4], &[], &[], &[]]);
        let c = diag(4, &[&[2, 3], &[], &[], &[]]);
        assert_eq!(f_max(&d, &c).unwrap().reading_word(1), &[3, 2]);

        // C = D: diagonal filling
        let d = diag(4, &[&[2, 4], &[1, 3], &[], &[]]);
        let f = f_max(&d, &d).unwrap();
        assert_eq!(f.reading_word(1), &[2, 4]);
        assert_eq!(f.reading_word(2), &[1, 3]);

        // D_j = {2,4}, C_j = {1,4}: 4 cannot go on top
        let d = diag(4, &[&[2, 4], &[], &[], &[]]);
        let c = diag(4, &[&[1, 4], &[], &[], &[]]);
        assert_eq!(f_max(&d, &c).unwrap().reading_word(1), &[1, 4]);

        // C not <= D: greedy fails
        let d = diag(4, &[&[2], &[], &[], &[]]);
        let c = diag(4, &[&[3], &[], &[], &[]]);
        assert!(matches!(f_max(&d, &c), Err(Error::NoFilling(_))));
    }

    #[test]
    fn weight_trivial_cases() {
        let d = Diagram::empty(3).unwrap();
        let f = enumerate_fillings(&d, &d).unwrap().pop().unwrap();
        assert_eq!(f.weight(), WeightVector(vec![0, 0, 0]));

        let d = diag(3, &[&[2], &[], &[]]);
        let f = FlaggedFilling::new(d, vec![vec![2], vec![], vec![]]).unwrap();
        assert_eq!(f.weight(), WeightVector(vec![0, 2, 0]));
    }

    #[test]
    fn y_monomial_single_box() {
        // box (3,2) filled with 1 -> y_{1,3}
        let d = diag(3, &[&[], &[3], &[]]);
        let f = FlaggedFilling::new(d, vec![vec![], vec![1], vec![]]).unwrap();
        assert_eq!(f.y_monomial(), YMonomial::variable(1, 3));
    }
}
