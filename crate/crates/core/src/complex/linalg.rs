//! Integer boundary matrices and exact rank over a field.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// A sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, r: usize, c: usize, x: i64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let v = self.entries.entry((r, c)).or_insert(0);
        *v += x;
        if *v == 0 {
            self.entries.remove(&(r, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for (&(r, c), &x) in &other.entries {
            by_row[r].push((c, x));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (&(r, k), &a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.add(r, c, a * b);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (&(r, c), &x) in &self.entries {
            out[r][c] = x;
        }
        out
    }

    /// Rank over the field `F`, by sparse row echelon reduction.
    pub fn rank<F: Field>(&self) -> usize {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
        let mut rows: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), &x) in &self.entries {
            rows[r].insert(c, F::from_int(x));
        }
        rows.sort_by_key(|r| r.len());
        for mut row in rows {
            while let Some((&lead, lead_val)) = row.iter().next() {
                let Some(pivot) = pivots.get(&lead) else {
                    break;
                };
                let factor = lead_val.clone() / pivot[&lead].clone();
                for (c, v) in pivot {
                    let entry = row.entry(*c).or_insert_with(F::zero);
                    *entry = entry.clone() - factor.clone() * v.clone();
                    if entry.is_zero() {
                        row.remove(c);
                    }
                }
            }
            if let Some(&lead) = row.keys().next() {
                pivots.insert(lead, row);
            }
        }
        pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_rational::Rational64;

    fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.add(r, c, x);
            }
        }
        m
    }

    #[test]
    fn ranks() {
        let m = from_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank::<Rational>(), 2);
        assert_eq!(m.rank::<Rational64>(), 2);
        assert_eq!(IntMatrix::zeros(3, 0).rank::<Rational>(), 0);
        // rank 1 mod 2 but 2 over the rationals
        let m = from_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank::<Rational>(), 2);
    }

    #[test]
    fn products() {
        let a = from_rows(&[&[1, -1]]);
        let b = from_rows(&[&[1], &[1]]);
        assert!(a.mul(&b).is_zero());
    }
}
