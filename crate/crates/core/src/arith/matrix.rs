//! Dense matrices over Gaussian rationals and exact row reduction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::gauss::GaussRat;

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussRat>,
}

/// Result of [`row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub reduced: GaussMatrix,
}

impl GaussMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GaussMatrix { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussRat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix");
        GaussMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| GaussRat::from_int(v)).collect()).collect())
    }

    pub fn row(&self, r: usize) -> &[GaussRat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<GaussRat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussRat::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        GaussMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<GaussMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = GaussMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = GaussRat::one();
        }
        let red = row_reduce(&aug);
        if red.pivot_columns.len() < n || red.pivot_columns[n - 1] != n - 1 {
            return None;
        }
        let mut inv = GaussMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red.reduced[(r, n + c)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for GaussMatrix {
    type Output = GaussRat;
    fn index(&self, (r, c): (usize, usize)) -> &GaussRat {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for GaussMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussRat {
        &mut self.data[r * self.cols + c]
    }
}

impl<'a> Mul<&'a GaussMatrix> for &'a GaussMatrix {
    type Output = GaussMatrix;
    fn mul(self, o: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = GaussMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a GaussMatrix> for &'a GaussMatrix {
    type Output = GaussMatrix;
    fn add(self, o: &GaussMatrix) -> GaussMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        GaussMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a GaussMatrix> for &'a GaussMatrix {
    type Output = GaussMatrix;
    fn sub(self, o: &GaussMatrix) -> GaussMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        GaussMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form. Pivot columns are strictly increasing and every
/// pivot entry is 1.
pub fn row_reduce(m: &GaussMatrix) -> RowReduction {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&k| !a[(k, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for k in 0..a.rows {
            if k == r || a[(k, c)].is_zero() {
                continue;
            }
            let f = a[(k, c)].clone();
            for j in c..a.cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &a[(k, j)] - &(&f * &a[(r, j)]);
                a[(k, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowReduction { rank: pivots.len(), pivot_columns: pivots, reduced: a }
}

/// Incrementally maintained basis of a subspace of `K^dim`, able to express
/// dependent vectors in terms of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    /// Echelon rows: (pivot column, vector, coordinates w.r.t. inserted generators).
    rows: Vec<(usize, Vec<GaussRat>, Vec<GaussRat>)>,
    generators: usize,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new(), generators: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current basis. Returns the residual and the
    /// combination `c` of accepted generators with `v = residual + sum c_k g_k`.
    fn reduce(&self, v: &[GaussRat]) -> (Vec<GaussRat>, Vec<GaussRat>) {
        let mut res = v.to_vec();
        let mut comb = vec![GaussRat::zero(); self.generators];
        for (p, row, coords) in &self.rows {
            if res[*p].is_zero() {
                continue;
            }
            let f = res[*p].clone();
            for (j, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    res[j] -= &(&f * val);
                }
            }
            for (j, val) in coords.iter().enumerate() {
                if !val.is_zero() {
                    comb[j] += &(&f * val);
                }
            }
        }
        (res, comb)
    }

    /// If `v` is in the span, the coefficients expressing it through the
    /// accepted generators (in insertion order).
    pub fn express(&self, v: &[GaussRat]) -> Option<Vec<GaussRat>> {
        let (res, comb) = self.reduce(v);
        res.iter().all(|c| c.is_zero()).then_some(comb)
    }

    pub fn contains(&self, v: &[GaussRat]) -> bool {
        self.express(v).is_some()
    }

    /// Inserts `v` if independent; returns whether it was accepted.
    pub fn insert(&mut self, v: &[GaussRat]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (res, comb) = self.reduce(v);
        let Some(p) = res.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = res[p].inv().expect("nonzero");
        let row: Vec<GaussRat> = res.iter().map(|c| c * &inv).collect();
        // coordinates of the new row: (v - sum comb_k g_k) / res[p]
        let mut coords: Vec<GaussRat> = comb.iter().map(|c| -(c * &inv)).collect();
        coords.push(inv);
        self.generators += 1;
        for (_, _, cs) in &mut self.rows {
            cs.push(GaussRat::zero());
        }
        // keep earlier rows reduced at the new pivot
        for k in 0..self.rows.len() {
            let f = self.rows[k].1[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    let v = &self.rows[k].1[j] - &(&f * &row[j]);
                    self.rows[k].1[j] = v;
                }
            }
            for j in 0..coords.len() {
                if !coords[j].is_zero() {
                    let v = &self.rows[k].2[j] - &(&f * &coords[j]);
                    self.rows[k].2[j] = v;
                }
            }
        }
        self.rows.push((p, row, coords));
        true
    }
}

/// Serialized as a list of rows of canonical entry strings.
impl serde::Serialize for GaussMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|r| self.row(r).iter().map(|c| c.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let r = row_reduce(&GaussMatrix::identity(3));
        assert_eq!((r.rank, r.pivot_columns), (3, vec![0, 1, 2]));
        let r = row_reduce(&GaussMatrix::zeros(2, 4));
        assert_eq!((r.rank, r.pivot_columns.len()), (0, 0));
    }

    #[test]
    fn dependent_gaussian_rows() {
        let m = GaussMatrix::from_rows(vec![
            vec![GaussRat::one(), GaussRat::i()],
            vec![GaussRat::i(), GaussRat::from_int(-1)],
        ]);
        assert_eq!(row_reduce(&m).rank, 1);
    }

    #[test]
    fn span_expresses_members() {
        let mut s = Span::new(3);
        let a = vec![GaussRat::one(), GaussRat::from_int(2), GaussRat::zero()];
        let b = vec![GaussRat::zero(), GaussRat::one(), GaussRat::i()];
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        let c: Vec<GaussRat> = a.iter().zip(&b).map(|(u, v)| u * &GaussRat::from_int(3) - v * &GaussRat::i()).collect();
        assert!(!s.insert(&c));
        assert_eq!(s.express(&c).unwrap(), vec![GaussRat::from_int(3), -GaussRat::i()]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = GaussMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, GaussMatrix::identity(2));
        assert!(GaussMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
