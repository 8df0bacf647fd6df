use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::Int;
use super::AlgebraError;

/// Dense rectangular integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[Int]) -> Result<Vec<Int>, AlgebraError> {
        if x.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = vec![Int::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += xi * a;
            }
        }
        Ok(out)
    }

    /// Rows that are not identically zero.
    pub fn nonzero_rows(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self
            .rows_iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        let mut m = IntMatrix::from_rows(&rows);
        m.cols = self.cols;
        m
    }

    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Ok(Int::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Whether the matrix is in row Hermite normal form: echelon shape,
    /// positive pivots, entries above each pivot reduced into `[0, pivot)`,
    /// zero rows last.
    pub fn is_hnf(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            match self.row(i).iter().position(|c| !c.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    let piv = &self[(i, p)];
                    if !piv.is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        let c = &self[(r, p)];
                        if c.is_negative() || c >= piv {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows_iter() {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn reduce(m: &mut IntMatrix, mut track: Option<&mut IntMatrix>) {
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        // Euclid on the column below pivot_row until a single nonzero entry remains.
        loop {
            let best = (pivot_row..m.rows)
                .filter(|&r| !m[(r, col)].is_zero())
                .min_by(|&a, &b| m[(a, col)].abs().cmp(&m[(b, col)].abs()));
            let Some(best) = best else { break };
            m.swap_rows(pivot_row, best);
            if let Some(u) = track.as_deref_mut() {
                u.swap_rows(pivot_row, best);
            }
            let mut done = true;
            for r in pivot_row + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let q = m[(r, col)].div_floor(&m[(pivot_row, col)]);
                m.sub_row_multiple(r, pivot_row, &q);
                if let Some(u) = track.as_deref_mut() {
                    u.sub_row_multiple(r, pivot_row, &q);
                }
                if !m[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(pivot_row, col)].is_zero() {
            continue;
        }
        if m[(pivot_row, col)].is_negative() {
            m.negate_row(pivot_row);
            if let Some(u) = track.as_deref_mut() {
                u.negate_row(pivot_row);
            }
        }
        for r in 0..pivot_row {
            let q = m[(r, col)].div_floor(&m[(pivot_row, col)]);
            m.sub_row_multiple(r, pivot_row, &q);
            if let Some(u) = track.as_deref_mut() {
                u.sub_row_multiple(r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
}

/// Row Hermite normal form `H = U·M` with `U` unimodular.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    reduce(&mut h, Some(&mut u));
    (h, u)
}

/// Nonzero rows of the Hermite normal form, without the transform.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    reduce(&mut h, None);
    h.nonzero_rows()
}

/// Integer `x` with `x·basis = v`.
///
/// `basis` rows are expected to be independent; with dependent rows some
/// solution is still returned when one exists.
pub fn lattice_coords(basis: &IntMatrix, v: &[Int]) -> Result<Vec<Int>, AlgebraError> {
    if v.len() != basis.ncols() {
        return Err(AlgebraError::DimensionMismatch {
            expected: basis.ncols(),
            found: v.len(),
        });
    }
    let (h, u) = hnf(basis);
    let y = echelon_coords(&h, v).ok_or(AlgebraError::NotInLattice)?;
    u.left_apply(&y)
}

/// Solve `y·H = v` for `H` in echelon form by forward substitution on pivots.
fn echelon_coords(h: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    let mut rest = v.to_vec();
    let mut y = vec![Int::zero(); h.nrows()];
    for (i, yi) in y.iter_mut().enumerate() {
        let Some(p) = h.row(i).iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let (q, r) = rest[p].div_rem(&h[(i, p)]);
        if !r.is_zero() {
            return None;
        }
        for (x, a) in rest.iter_mut().zip(h.row(i)) {
            *x -= &q * a;
        }
        *yi = q;
    }
    rest.iter().all(Zero::is_zero).then_some(y)
}
