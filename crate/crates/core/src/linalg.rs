//! Exact linear algebra over the coefficient fields: determinants, reduced
//! row spans, kernels. Pivoting always picks the first usable row/column, so
//! every output is deterministic.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElem};

/// Dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zero(field: &FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &FieldDescriptor, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for x in row {
                if x.descriptor() != *field {
                    return Err(Error::DescriptorMismatch {
                        expected: format!("{field}"),
                        found: format!("{}", x.descriptor()),
                    });
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let at = |m: &Vec<FieldElem>, r: usize, c: usize| m[r * n + c].clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !at(&m, r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(self.field.zero()),
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = det.neg();
            }
            let pv = at(&m, col, col);
            det = det.mul(&pv)?;
            let pv_inv = pv.inverse()?;
            for r in col + 1..n {
                let factor = at(&m, r, col).mul(&pv_inv)?;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&at(&m, col, c))?;
                    m[r * n + c] = at(&m, r, c).sub(&sub)?;
                }
            }
        }
        Ok(det)
    }

    /// Basis of the right kernel { v : M v = 0 }, one vector per free column,
    /// each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<FieldElem>>> {
        let mut rref: Vec<Vec<FieldElem>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let pivot_row = (row..rref.len()).find(|&r| !rref[r][col].is_zero());
            let pivot_row = match pivot_row {
                Some(p) => p,
                None => continue,
            };
            rref.swap(row, pivot_row);
            let inv = rref[row][col].inverse()?;
            for c in 0..self.cols {
                rref[row][c] = rref[row][c].mul(&inv)?;
            }
            for r in 0..rref.len() {
                if r != row && !rref[r][col].is_zero() {
                    let factor = rref[r][col].clone();
                    for c in 0..self.cols {
                        let sub = factor.mul(&rref[row][c])?;
                        rref[r][c] = rref[r][c].sub(&sub)?;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == rref.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rref[r][free].neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// One solution of M x = b, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if rhs.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let width = self.cols + 1;
        let mut aug: Vec<Vec<FieldElem>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let pivot_row = (row..aug.len()).find(|&r| !aug[r][col].is_zero());
            let pivot_row = match pivot_row {
                Some(p) => p,
                None => continue,
            };
            aug.swap(row, pivot_row);
            let inv = aug[row][col].inverse()?;
            for c in 0..width {
                aug[row][c] = aug[row][c].mul(&inv)?;
            }
            for r in 0..aug.len() {
                if r != row && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in 0..width {
                        let sub = factor.mul(&aug[row][c])?;
                        aug[r][c] = aug[r][c].sub(&sub)?;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == aug.len() {
                break;
            }
        }
        for r in row..aug.len() {
            if !aug[r][self.cols].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r][self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Incrementally maintained reduced row-echelon span. Inserting a vector
/// reports whether the dimension grew; the basis it exposes is canonical.
#[derive(Clone, Debug)]
pub struct RowSpan {
    ncols: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(ncols: usize) -> Self {
        RowSpan {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [FieldElem]) -> Result<()> {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for c in 0..self.ncols {
                let sub = factor.mul(&row[c])?;
                v[c] = v[c].sub(&sub)?;
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &[FieldElem]) -> Result<bool> {
        let mut w = v.to_vec();
        self.reduce(&mut w)?;
        Ok(w.iter().all(FieldElem::is_zero))
    }

    /// Insert a vector; returns true when it was independent of the span.
    pub fn insert(&mut self, v: Vec<FieldElem>) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        let mut w = v;
        self.reduce(&mut w)?;
        let pivot = match w.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return Ok(false),
        };
        let inv = w[pivot].inverse()?;
        for c in 0..self.ncols {
            w[c] = w[c].mul(&inv)?;
        }
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for c in 0..self.ncols {
                let sub = factor.mul(&w[c])?;
                row[c] = row[c].sub(&sub)?;
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&pc| pc > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, w);
        self.pivots.insert(at, pivot);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldDescriptor {
        FieldDescriptor::prime_field(5).unwrap()
    }

    fn mat(field: &FieldDescriptor, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.integer(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinants() {
        let f = f5();
        assert_eq!(mat(&f, &[&[2]]).determinant().unwrap(), f.integer(2));
        assert_eq!(
            mat(&f, &[&[1, 2], &[3, 4]]).determinant().unwrap(),
            f.integer(-2)
        );
        assert!(mat(&f, &[&[1, 2], &[2, 4]])
            .determinant()
            .unwrap()
            .is_zero());
        // row swap flips the sign
        assert_eq!(
            mat(&f, &[&[0, 1], &[1, 0]]).determinant().unwrap(),
            f.integer(-1)
        );
    }

    #[test]
    fn kernel_and_solve() {
        let f = f5();
        let m = mat(&f, &[&[1, 1]]);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k, vec![vec![f.integer(-1), f.integer(1)]]);

        let m = mat(&f, &[&[1, 2], &[3, 4]]);
        assert!(m.kernel_basis().unwrap().is_empty());
        let sol = m.solve(&[f.integer(1), f.integer(1)]).unwrap().unwrap();
        // check M * sol = rhs
        let r0 = sol[0].add(&sol[1].mul(&f.integer(2)).unwrap()).unwrap();
        let r1 = sol[0]
            .mul(&f.integer(3))
            .unwrap()
            .add(&sol[1].mul(&f.integer(4)).unwrap())
            .unwrap();
        assert_eq!((r0, r1), (f.integer(1), f.integer(1)));

        let singular = mat(&f, &[&[1, 2], &[2, 4]]);
        assert!(singular
            .solve(&[f.integer(1), f.integer(3)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn row_span_grows_deterministically() {
        let f = f5();
        let mut span = RowSpan::new(3);
        assert!(span
            .insert(vec![f.integer(0), f.integer(2), f.integer(0)])
            .unwrap());
        assert!(!span
            .insert(vec![f.integer(0), f.integer(4), f.integer(0)])
            .unwrap());
        assert!(span
            .insert(vec![f.integer(1), f.integer(1), f.integer(1)])
            .unwrap());
        assert_eq!(span.dim(), 2);
        // canonical reduced basis, sorted by pivot column
        assert_eq!(
            span.basis(),
            &[
                vec![f.integer(1), f.integer(0), f.integer(1)],
                vec![f.integer(0), f.integer(1), f.integer(0)],
            ]
        );
        assert!(span
            .contains(&[f.integer(2), f.integer(3), f.integer(2)])
            .unwrap());
        assert!(!span
            .contains(&[f.integer(0), f.integer(0), f.integer(1)])
            .unwrap());
    }
}
