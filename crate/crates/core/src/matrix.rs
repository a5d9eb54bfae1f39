//! Dense matrices over GF(p) with exact elimination.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, PrimeModulus};
use crate::spike::{Element, SpikeRep};
use crate::subset::IndexSet;

/// Desk-scale caps for [`basis_family`].
pub const BASIS_MAX_ROWS: usize = 10;
pub const BASIS_MAX_COLS: usize = 21;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    modulus: PrimeModulus,
}

impl MatrixGF {
    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        MatrixGF { rows, cols, entries: vec![0; rows * cols], modulus }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set_raw(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&v| modulus.reduce(v)).collect();
        MatrixGF { rows: r, cols: c, entries, modulus }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.modulus.elem(self.raw(r, c) as i64)
    }

    #[inline]
    pub fn raw(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set_raw(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        assert_eq!(v.modulus(), self.modulus, "arithmetic across different prime fields");
        self.set_raw(r, c, v.value());
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.raw(r, c)).collect()
    }

    pub fn set_column(&mut self, c: usize, col: &[u32]) {
        for (r, &v) in col.iter().enumerate() {
            self.set_raw(r, c, v);
        }
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(self.modulus, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set_raw(r, j, self.raw(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixGF) -> MatrixGF {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let m = self.modulus;
        let mut out = MatrixGF::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.raw(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.add(out.raw(i, j), m.mul(a, other.raw(k, j)));
                    out.set_raw(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale_row(&mut self, r: usize, s: u32) {
        let m = self.modulus;
        for c in 0..self.cols {
            let v = m.mul(self.raw(r, c), s);
            self.set_raw(r, c, v);
        }
    }

    pub fn scale_column(&mut self, c: usize, s: u32) {
        let m = self.modulus;
        for r in 0..self.rows {
            let v = m.mul(self.raw(r, c), s);
            self.set_raw(r, c, v);
        }
    }

    /// Row `dst += factor * row src`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: u32) {
        let m = self.modulus;
        for c in 0..self.cols {
            let v = m.add(self.raw(dst, c), m.mul(factor, self.raw(src, c)));
            self.set_raw(dst, c, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let m = self.modulus;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.raw(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, piv);
            let inv = m.inv(self.raw(row, col)).expect("pivot is nonzero");
            self.scale_row(row, inv);
            for r in 0..self.rows {
                let f = self.raw(r, col);
                if r != row && f != 0 {
                    self.add_row_multiple(r, row, m.neg(f));
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Rank of the submatrix spanned by `cols`.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        self.select_columns(cols).rank()
    }

    pub fn det(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let m = self.modulus;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a.raw(r, col) != 0) else {
                return Ok(m.zero());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = m.neg(det);
            }
            let d = a.raw(col, col);
            det = m.mul(det, d);
            let dinv = m.inv(d).expect("pivot is nonzero");
            for r in col + 1..n {
                let f = a.raw(r, col);
                if f != 0 {
                    a.add_row_multiple(r, col, m.neg(m.mul(f, dinv)));
                }
            }
        }
        Ok(m.elem(det as i64))
    }

    pub fn inverse(&self) -> Option<MatrixGF> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = MatrixGF::zeros(self.modulus, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set_raw(r, c, self.raw(r, c));
            }
            aug.set_raw(r, n + r, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&cols))
    }
}

impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.raw(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn det(m: &MatrixGF) -> Result<FieldElem> {
    m.det()
}

pub fn rank(m: &MatrixGF) -> usize {
    m.rank()
}

/// Determinant of `J + diag(x)` in closed form, `(1 + sum 1/x_i) * prod x_i`.
pub fn spike_det(x: &[FieldElem]) -> Result<FieldElem> {
    let Some(first) = x.first() else {
        return Err(Error::TooSmall(0));
    };
    let m = first.modulus();
    let mut sum = m.one();
    let mut prod = m.one();
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            return Err(Error::ZeroEntry(i + 1));
        }
        sum = sum + xi.inv()?;
        prod = prod * xi;
    }
    Ok(sum * prod)
}

/// The explicit matrix with `1 + x_i` on the diagonal and 1 elsewhere.
pub fn ones_plus_diagonal(x: &[FieldElem]) -> MatrixGF {
    let m = x[0].modulus();
    let n = x.len();
    let mut a = MatrixGF::zeros(m, n, n);
    for r in 0..n {
        for c in 0..n {
            let v = if r == c { m.add(1, x[r].value()) } else { 1 };
            a.set_raw(r, c, v);
        }
    }
    a
}

/// All bases of the column matroid, as bit patterns over the columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisFamily {
    pub n: usize,
    pub ground_size: usize,
    /// Sorted ascending; bit `c` set means column `c` (0-based) is in the basis.
    pub members: Vec<u32>,
}

impl BasisFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, bits: u32) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    /// Members as sorted 1-based column lists.
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|&b| IndexSet::from_bits(b).iter().collect())
            .collect()
    }
}

/// k-subsets of `0..n` in increasing numeric order (Gosper's hack).
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit = 1u64 << n;
    let mut s: u64 = (1u64 << k) - 1;
    while s < limit {
        out.push(s as u32);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

pub fn basis_family(m: &MatrixGF) -> Result<BasisFamily> {
    if m.rows() > BASIS_MAX_ROWS || m.cols() > BASIS_MAX_COLS {
        return Err(Error::TooLarge(format!(
            "{}x{} exceeds {}x{}",
            m.rows(),
            m.cols(),
            BASIS_MAX_ROWS,
            BASIS_MAX_COLS
        )));
    }
    let r = m.rank();
    if r != m.rows() {
        return Err(Error::RankDeficient { rank: r, rows: m.rows() });
    }
    let candidates = k_subsets(m.cols(), m.rows());
    let members: Vec<u32> = candidates
        .into_par_iter()
        .filter(|&bits| {
            let cols: Vec<usize> = (0..m.cols()).filter(|c| bits >> c & 1 == 1).collect();
            !m.select_columns(&cols).det().expect("square").is_zero()
        })
        .collect();
    Ok(BasisFamily { n: m.rows(), ground_size: m.cols(), members })
}

/// Moves the distinguished basis onto the conjugates at `swap_set` and restores
/// the special standard pattern by row and column scalings.
pub fn change_basis_standardize(rep: &SpikeRep, swap_set: IndexSet) -> Result<SpikeRep> {
    let n = rep.n();
    let a = rep.matrix();
    let m = a.modulus();
    if swap_set.is_empty() {
        return Ok(rep.clone());
    }
    let basis_cols: Vec<usize> = (0..n)
        .map(|i| if swap_set.contains(i + 1) { n + 1 + i } else { i })
        .collect();
    let conj_cols: Vec<usize> = (0..n)
        .map(|i| if swap_set.contains(i + 1) { i } else { n + 1 + i })
        .collect();
    let binv = a
        .select_columns(&basis_cols)
        .inverse()
        .ok_or_else(|| Error::DependentTransversal(swap_set.to_string()))?;

    let mut order = basis_cols.clone();
    order.push(n);
    order.extend_from_slice(&conj_cols);
    let mut b = binv.mul(&a.select_columns(&order));
    let labels: Vec<Element> = order.iter().map(|&c| rep.labels()[c]).collect();

    // tip column to all ones: scale row i by 1/c_i, basis column i by c_i
    for i in 0..n {
        let c = b.raw(i, n);
        let cinv = m.inv(c).expect("tip coordinate nonzero in a spike");
        b.scale_row(i, cinv);
        b.scale_column(i, c);
    }
    // off-diagonal entries of each conjugate column to one
    for j in 0..n {
        let col = n + 1 + j;
        let off = (0..n).find(|&r| r != j).map(|r| b.raw(r, col));
        if let Some(v) = off {
            let vinv = m.inv(v).expect("off-diagonal entry nonzero in a spike");
            b.scale_column(col, vinv);
        }
    }
    let out = SpikeRep::from_parts(b, labels);
    assert!(out.has_standard_pattern(), "re-standardized matrix lost the special standard pattern");
    Ok(out)
}
