//! Dense exact linear algebra over a fixed [`FieldCtx`].
//!
//! Everything downstream (hom spaces, spinning, algebra structure constants)
//! reduces to row reduction here. Vectors are stored as rows; the action of
//! a matrix on a vector is the usual left action A·v. The reduced
//! row-echelon form is the single canonical form for subspace identity.
//!
//! For GF(2) there is a bit-packed fast path for multiplication and row
//! reduction. It must be observationally identical to the generic path; a
//! differential test enforces this.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    ctx: FieldCtx,
    /// Row-major packed element codes, length rows*cols.
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over {}", self.rows, self.cols, self.ctx)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn zero(ctx: &FieldCtx, rows: usize, cols: usize) -> MatrixFq {
        MatrixFq { rows, cols, ctx: ctx.clone(), data: vec![0; rows * cols] }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> MatrixFq {
        let mut m = MatrixFq::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<u32>]) -> MatrixFq {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        MatrixFq { rows: r, cols: c, ctx: ctx.clone(), data }
    }

    pub fn from_fn(ctx: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> MatrixFq {
        let mut m = MatrixFq::zero(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Integer literals reduced into the prime subfield; negative values allowed.
    pub fn from_ints(ctx: &FieldCtx, rows: &[Vec<i64>]) -> MatrixFq {
        let as_codes: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| ctx.from_int(n).code()).collect())
            .collect();
        MatrixFq::from_rows(ctx, &as_codes)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn entries(&self) -> &[u32] {
        &self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Flattens row-major into a 1 x (rows*cols) matrix.
    pub fn flatten(&self) -> MatrixFq {
        MatrixFq { rows: 1, cols: self.rows * self.cols, ctx: self.ctx.clone(), data: self.data.clone() }
    }

    /// Inverse of flatten.
    pub fn unflatten(vec: &[u32], ctx: &FieldCtx, rows: usize, cols: usize) -> MatrixFq {
        assert_eq!(vec.len(), rows * cols);
        MatrixFq { rows, cols, ctx: ctx.clone(), data: vec.to_vec() }
    }

    fn check_ctx(&self, other: &MatrixFq) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx.to_string(), other.ctx.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_ctx(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.add_codes(a, b))
            .collect();
        Ok(MatrixFq { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data })
    }

    pub fn sub(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatrixFq {
        let data = self.data.iter().map(|&a| self.ctx.neg_code(a)).collect();
        MatrixFq { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data }
    }

    pub fn scalar_mul(&self, c: u32) -> MatrixFq {
        let data = self.data.iter().map(|&a| self.ctx.mul_codes(a, c)).collect();
        MatrixFq { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data }
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zero(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ctx.q() == 2 {
            return Ok(self.mul_gf2(other));
        }
        let mut out = MatrixFq::zero(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                let orow = other.row(l);
                let base = i * out.cols;
                if a == 1 {
                    for j in 0..other.cols {
                        out.data[base + j] = self.ctx.add_codes(out.data[base + j], orow[j]);
                    }
                } else {
                    for j in 0..other.cols {
                        let prod = self.ctx.mul_codes(a, orow[j]);
                        out.data[base + j] = self.ctx.add_codes(out.data[base + j], prod);
                    }
                }
            }
        }
        Ok(out)
    }

    fn mul_gf2(&self, other: &MatrixFq) -> MatrixFq {
        let words = other.cols.div_ceil(64);
        let mut packed = vec![0u64; other.rows * words];
        for i in 0..other.rows {
            for j in 0..other.cols {
                if other.get(i, j) != 0 {
                    packed[i * words + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        let mut out = MatrixFq::zero(&self.ctx, self.rows, other.cols);
        let mut acc = vec![0u64; words];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|w| *w = 0);
            for l in 0..self.cols {
                if self.get(i, l) != 0 {
                    let src = &packed[l * words..(l + 1) * words];
                    for (a, s) in acc.iter_mut().zip(src) {
                        *a ^= s;
                    }
                }
            }
            for j in 0..other.cols {
                if acc[j / 64] >> (j % 64) & 1 == 1 {
                    out.set(i, j, 1);
                }
            }
        }
        out
    }

    /// A·v for a vector given as a slice of codes (length = cols).
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            let row = self.row(i);
            for (a, &x) in row.iter().zip(v) {
                if *a != 0 && x != 0 {
                    acc = self.ctx.add_codes(acc, self.ctx.mul_codes(*a, x));
                }
            }
            *o = acc;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<MatrixFq> {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = MatrixFq::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        let mut acc = 0;
        for i in 0..self.rows {
            acc = self.ctx.add_codes(acc, self.get(i, i));
        }
        acc
    }

    pub fn hstack(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.rows, other.rows);
        let mut out = MatrixFq::zero(&self.ctx, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixFq { rows: self.rows + other.rows, cols: self.cols, ctx: self.ctx.clone(), data }
    }

    /// Kronecker product, (ar·br) x (ac·bc).
    pub fn kron(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_ctx(other)?;
        let mut out = MatrixFq::zero(&self.ctx, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b == 0 {
                            continue;
                        }
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, self.ctx.mul_codes(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Unique reduced row-echelon form together with the rank.
    pub fn rref(&self) -> (MatrixFq, usize) {
        if self.ctx.q() == 2 {
            return self.rref_gf2();
        }
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..m.rows {
                if m.get(r, col) != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pivot_row {
                for j in 0..m.cols {
                    let tmp = m.get(sel, j);
                    m.set(sel, j, m.get(pivot_row, j));
                    m.set(pivot_row, j, tmp);
                }
            }
            let inv = m.ctx.inv_code(m.get(pivot_row, col)).expect("pivot nonzero");
            if inv != 1 {
                for j in col..m.cols {
                    let v = m.ctx.mul_codes(m.get(pivot_row, j), inv);
                    m.set(pivot_row, j, v);
                }
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let sub = m.ctx.mul_codes(factor, m.get(pivot_row, j));
                    let v = m.ctx.sub_codes(m.get(r, j), sub);
                    m.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    fn rref_gf2(&self) -> (MatrixFq, usize) {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut w = vec![0u64; words];
            for j in 0..self.cols {
                if self.get(i, j) != 0 {
                    w[j / 64] |= 1u64 << (j % 64);
                }
            }
            rows.push(w);
        }
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == rows.len() {
                break;
            }
            let (w, b) = (col / 64, col % 64);
            let mut sel = None;
            for (r, row) in rows.iter().enumerate().skip(pivot_row) {
                if row[w] >> b & 1 == 1 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            rows.swap(sel, pivot_row);
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row[w] >> b & 1 == 1 {
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x ^= p;
                    }
                }
            }
            pivot_row += 1;
        }
        let mut out = MatrixFq::zero(&self.ctx, self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..self.cols {
                if row[j / 64] >> (j % 64) & 1 == 1 {
                    out.set(i, j, 1);
                }
            }
        }
        (out, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Right null space { v : A·v = 0 } as a subspace of F^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        let mut col = 0;
        for row in 0..rank {
            while col < self.cols && r.get(row, col) == 0 {
                col += 1;
            }
            pivots.push(col);
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis_rows: Vec<Vec<u32>> = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.ctx.neg_code(r.get(row, free));
            }
            basis_rows.push(v);
        }
        Subspace::from_rows(&MatrixFq::from_rows(&self.ctx, &basis_rows).with_cols(self.cols, &self.ctx))
    }

    fn with_cols(self, cols: usize, ctx: &FieldCtx) -> MatrixFq {
        if self.rows == 0 {
            MatrixFq::zero(ctx, 0, cols)
        } else {
            self
        }
    }

    /// Inverse of a square matrix, or None if singular.
    pub fn inverse(&self) -> Option<MatrixFq> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&MatrixFq::identity(&self.ctx, n));
        let (r, _) = aug.rref();
        for i in 0..n {
            if r.get(i, i) != 1 {
                return None;
            }
        }
        let mut inv = MatrixFq::zero(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Solves A·X = B exactly. Returns None when inconsistent; free
    /// variables are set to zero, so the result is unique when A has full
    /// column rank.
    pub fn solve(&self, b: &MatrixFq) -> Option<MatrixFq> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, _) = aug.rref();
        let mut pivots = Vec::new();
        for row in 0..r.rows {
            let mut col = 0;
            while col < r.cols && r.get(row, col) == 0 {
                col += 1;
            }
            if col == r.cols {
                break;
            }
            if col >= self.cols {
                return None; // pivot in the augmented block: inconsistent
            }
            pivots.push((row, col));
        }
        let mut x = MatrixFq::zero(&self.ctx, self.cols, b.cols);
        for &(row, col) in &pivots {
            for j in 0..b.cols {
                x.set(col, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }
}

/// A subspace of F^n held as a pivot-normalized RREF basis (rows = dim).
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixFq,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of F^{}: {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(ctx: &FieldCtx, ambient: usize) -> Subspace {
        Subspace { ambient, basis: MatrixFq::zero(ctx, 0, ambient) }
    }

    pub fn full(ctx: &FieldCtx, ambient: usize) -> Subspace {
        Subspace { ambient, basis: MatrixFq::identity(ctx, ambient) }
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn from_rows(m: &MatrixFq) -> Subspace {
        let (r, rank) = m.rref();
        let mut basis = MatrixFq::zero(m.ctx(), rank, m.cols());
        for i in 0..rank {
            for j in 0..m.cols() {
                basis.set(i, j, r.get(i, j));
            }
        }
        Subspace { ambient: m.cols(), basis }
    }

    pub fn from_vec(ctx: &FieldCtx, v: &[u32]) -> Subspace {
        Subspace::from_rows(&MatrixFq::from_rows(ctx, &[v.to_vec()]))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.basis.ctx()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Deterministic dedup key: dimension plus the RREF entries.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(2 + self.basis.entries().len());
        key.push(self.dim() as u32);
        key.extend_from_slice(self.basis.entries());
        key
    }

    /// Reduces `v` against the basis; returns the residual.
    fn reduce_vec(&self, v: &[u32]) -> Vec<u32> {
        let ctx = self.ctx();
        let mut w = v.to_vec();
        for i in 0..self.basis.rows() {
            let mut pc = 0;
            while pc < self.ambient && self.basis.get(i, pc) == 0 {
                pc += 1;
            }
            if pc == self.ambient {
                continue;
            }
            let c = w[pc];
            if c != 0 {
                for j in pc..self.ambient {
                    let sub = ctx.mul_codes(c, self.basis.get(i, j));
                    w[j] = ctx.sub_codes(w[j], sub);
                }
            }
        }
        w
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for i in 0..other.basis.rows() {
            if !self.contains_vec(other.basis.row(i)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the kernel of the concatenated constraint system
    /// (the Zassenhaus-style coefficient solve).
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ctx(), self.ambient));
        }
        // x in both spans: x = a·U = b·W, solve (a, b)·[U; -W] = 0.
        let stacked = self.basis.vstack(&other.basis.neg());
        let coeff_kernel = stacked.transpose().kernel();
        let d1 = self.dim();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for i in 0..coeff_kernel.dim() {
            let ab = coeff_kernel.basis().row(i);
            let a = &ab[..d1];
            // x = a · U
            let ctx = self.ctx();
            let mut x = vec![0u32; self.ambient];
            for (l, &al) in a.iter().enumerate() {
                if al == 0 {
                    continue;
                }
                for j in 0..self.ambient {
                    let prod = ctx.mul_codes(al, self.basis.get(l, j));
                    x[j] = ctx.add_codes(x[j], prod);
                }
            }
            rows.push(x);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.ctx(), self.ambient));
        }
        Ok(Subspace::from_rows(&MatrixFq::from_rows(self.ctx(), &rows)))
    }

    /// Pivot columns of the RREF basis.
    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.basis.rows() {
            let mut c = 0;
            while c < self.ambient && self.basis.get(i, c) == 0 {
                c += 1;
            }
            out.push(c);
        }
        out
    }

    /// Columns without a pivot, in ascending order. These coordinates index
    /// a complement of the subspace and carry quotient coordinates.
    pub fn free_cols(&self) -> Vec<usize> {
        let pivots: std::collections::HashSet<usize> = self.pivot_cols().into_iter().collect();
        (0..self.ambient).filter(|c| !pivots.contains(c)).collect()
    }

    /// Residual of `v` after reduction: its pivot coordinates vanish, and
    /// the free coordinates are the quotient coordinates of v mod this space.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let red = self.reduce_vec(v);
        self.free_cols().iter().map(|&c| red[c]).collect()
    }

    /// All q^dim member vectors (including zero). Caller is responsible for
    /// keeping q^dim within enumeration bounds.
    pub fn all_vectors(&self) -> Vec<Vec<u32>> {
        let q = self.ctx().q() as u32;
        let d = self.dim();
        let total = (q as u64).pow(d as u32);
        let ctx = self.ctx();
        let mut out = Vec::with_capacity(total as usize);
        for n in 0..total {
            let mut coeffs = Vec::with_capacity(d);
            let mut m = n;
            for _ in 0..d {
                coeffs.push((m % q as u64) as u32);
                m /= q as u64;
            }
            let mut v = vec![0u32; self.ambient];
            for (l, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in 0..self.ambient {
                    let prod = ctx.mul_codes(c, self.basis.get(l, j));
                    v[j] = ctx.add_codes(v[j], prod);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Finds all matrices X with A_i·X = X·B_i for every block (A_i, B_i).
/// Returns the solution space with X flattened row-major; use
/// [`solution_matrices`] to unpack basis vectors back into matrices.
pub fn solve_linear_system(blocks: &[(MatrixFq, MatrixFq)]) -> Result<Subspace> {
    assert!(!blocks.is_empty(), "need at least one constraint block");
    let (a0, b0) = &blocks[0];
    if !a0.is_square() || !b0.is_square() {
        return Err(Error::ShapeMismatch("constraint blocks must be square".into()));
    }
    let m = a0.rows();
    let n = b0.rows();
    let ctx = a0.ctx().clone();
    for (a, b) in blocks {
        if a.rows() != m || !a.is_square() || b.rows() != n || !b.is_square() {
            return Err(Error::ShapeMismatch("inconsistent block shapes".into()));
        }
        if *a.ctx() != ctx || *b.ctx() != ctx {
            return Err(Error::CtxMismatch(ctx.to_string(), a.ctx().to_string()));
        }
    }
    // X is m x n, unknowns indexed row-major: X[l][j] at l*n + j.
    let mut constraint = MatrixFq::zero(&ctx, blocks.len() * m * n, m * n);
    let mut row = 0;
    for (a, b) in blocks {
        for i in 0..m {
            for j in 0..n {
                // (A·X - X·B)[i][j] = sum_l A[i][l] X[l][j] - sum_l X[i][l] B[l][j]
                for l in 0..m {
                    let v = a.get(i, l);
                    if v != 0 {
                        let col = l * n + j;
                        constraint.set(row, col, ctx.add_codes(constraint.get(row, col), v));
                    }
                }
                for l in 0..n {
                    let v = b.get(l, j);
                    if v != 0 {
                        let col = i * n + l;
                        constraint.set(row, col, ctx.sub_codes(constraint.get(row, col), v));
                    }
                }
                row += 1;
            }
        }
    }
    Ok(constraint.kernel())
}

/// Unpacks the basis vectors of a flattened solution space into matrices.
pub fn solution_matrices(space: &Subspace, rows: usize, cols: usize) -> Vec<MatrixFq> {
    (0..space.dim())
        .map(|i| MatrixFq::unflatten(space.basis().row(i), space.ctx(), rows, cols))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: u32) -> FieldCtx {
        FieldCtx::new(p, k).unwrap()
    }

    fn random_matrix(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
        let q = ctx.q() as u32;
        MatrixFq::from_fn(ctx, rows, cols, |_, _| rng.random_range(0..q))
    }

    #[test]
    fn rref_identity_and_zero() {
        let f5 = gf(5, 1);
        let id = MatrixFq::identity(&f5, 3);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);

        let z = MatrixFq::zero(&gf(3, 1), 2, 4);
        let (r, rank) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_gf2_forced_reduction() {
        let f2 = gf(2, 1);
        let m = MatrixFq::from_rows(&f2, &[vec![1, 1], vec![1, 1]]);
        let (r, rank) = m.rref();
        assert_eq!(r, MatrixFq::from_rows(&f2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_is_idempotent_and_rank_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ctx in [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)] {
            for _ in 0..50 {
                let m = random_matrix(&ctx, 4, 6, &mut rng);
                let (r1, k1) = m.rref();
                let (r2, k2) = r1.rref();
                assert_eq!(r1, r2);
                assert_eq!(k1, k2);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let f3 = gf(3, 1);
        assert_eq!(MatrixFq::identity(&f3, 4).kernel().dim(), 0);
        assert_eq!(MatrixFq::zero(&f3, 2, 2).kernel().dim(), 2);

        let f2 = gf(2, 1);
        let m = MatrixFq::from_rows(&f2, &[vec![1, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains_vec(&[1, 1]));
    }

    #[test]
    fn rank_nullity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)] {
            for _ in 0..1000 {
                let rows = rng.random_range(1..6);
                let cols = rng.random_range(1..6);
                let m = random_matrix(&ctx, rows, cols, &mut rng);
                assert_eq!(m.kernel().dim() + m.rank(), cols);
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ctx = gf(2, 2);
        for _ in 0..100 {
            let m = random_matrix(&ctx, 3, 5, &mut rng);
            let ker = m.kernel();
            for i in 0..ker.dim() {
                let v = ker.basis().row(i);
                assert!(m.apply(v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn gf2_fast_paths_match_generic() {
        // differential test: bit-packed GF(2) mul/rref vs the generic path
        let f2 = gf(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let a = random_matrix(&f2, 5, 7, &mut rng);
            let b = random_matrix(&f2, 7, 4, &mut rng);

            let fast = a.mul(&b).unwrap();
            let mut slow = MatrixFq::zero(&f2, 5, 4);
            for i in 0..5 {
                for j in 0..4 {
                    let mut acc = 0u32;
                    for l in 0..7 {
                        acc ^= a.get(i, l) & b.get(l, j);
                    }
                    slow.set(i, j, acc);
                }
            }
            assert_eq!(fast, slow);

            let (rf, kf) = a.rref();
            let (rs, ks) = generic_rref(&a);
            assert_eq!(rf, rs);
            assert_eq!(kf, ks);
        }
    }

    // generic-path rref duplicated here so the differential test cannot be
    // short-circuited by the dispatch in MatrixFq::rref
    fn generic_rref(m: &MatrixFq) -> (MatrixFq, usize) {
        let ctx = m.ctx().clone();
        let mut m = m.clone();
        let mut pr = 0;
        for col in 0..m.cols() {
            if pr == m.rows() {
                break;
            }
            let sel = (pr..m.rows()).find(|&r| m.get(r, col) != 0);
            let Some(sel) = sel else { continue };
            for j in 0..m.cols() {
                let tmp = m.get(sel, j);
                m.set(sel, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = ctx.inv_code(m.get(pr, col)).unwrap();
            for j in col..m.cols() {
                let v = ctx.mul_codes(m.get(pr, j), inv);
                m.set(pr, j, v);
            }
            for r in 0..m.rows() {
                if r != pr && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for j in col..m.cols() {
                        let sub = ctx.mul_codes(f, m.get(pr, j));
                        let v = ctx.sub_codes(m.get(r, j), sub);
                        m.set(r, j, v);
                    }
                }
            }
            pr += 1;
        }
        (m, pr)
    }

    #[test]
    fn kron_examples() {
        let f3 = gf(3, 1);
        let i2 = MatrixFq::identity(&f3, 2);
        let i3 = MatrixFq::identity(&f3, 3);
        assert_eq!(i2.kron(&i3).unwrap(), MatrixFq::identity(&f3, 6));

        let a = MatrixFq::from_rows(&f3, &[vec![1, 2], vec![0, 1]]);
        let one = MatrixFq::from_rows(&f3, &[vec![1]]);
        assert_eq!(a.kron(&one).unwrap(), a);
    }

    #[test]
    fn kron_rank_is_multiplicative() {
        let f3 = gf(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let a = random_matrix(&f3, 2, 2, &mut rng);
            let b = random_matrix(&f3, 2, 2, &mut rng);
            assert_eq!(a.kron(&b).unwrap().rank(), a.rank() * b.rank());
        }
    }

    #[test]
    fn solve_linear_system_examples() {
        let f3 = gf(3, 1);
        // A = B = I_2: every 2x2 matrix commutes
        let i2 = MatrixFq::identity(&f3, 2);
        let sol = solve_linear_system(&[(i2.clone(), i2.clone())]).unwrap();
        assert_eq!(sol.dim(), 4);

        // A = I, B = 0: X = 0 only
        let z2 = MatrixFq::zero(&f3, 2, 2);
        let sol = solve_linear_system(&[(i2.clone(), z2)]).unwrap();
        assert_eq!(sol.dim(), 0);
    }

    #[test]
    fn solver_matches_brute_force_for_s3_permutation_images() {
        // images of the S_3 generators (1 2) and (1 2 3) on 3 points over GF(2)
        let f2 = gf(2, 1);
        let swap = MatrixFq::from_rows(&f2, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        let cycle = MatrixFq::from_rows(&f2, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let blocks = [(swap.clone(), swap.clone()), (cycle.clone(), cycle.clone())];
        let sol = solve_linear_system(&blocks).unwrap();

        // independent oracle: enumerate all 512 matrices over GF(2)
        let mut count = 0u32;
        for bits in 0..512u32 {
            let m = MatrixFq::from_fn(&f2, 3, 3, |i, j| bits >> (3 * i + j) & 1);
            let commutes = m.mul(&swap).unwrap() == swap.mul(&m).unwrap()
                && m.mul(&cycle).unwrap() == cycle.mul(&m).unwrap();
            if commutes {
                count += 1;
                assert!(sol.contains_vec(m.flatten().row(0)));
            }
        }
        assert_eq!(count, 1 << sol.dim());
        assert_eq!(sol.dim(), 2);
    }

    #[test]
    fn solver_matches_brute_force_small_ambient() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for ctx in [gf(2, 1), gf(3, 1)] {
            let q = ctx.q() as u32;
            for _ in 0..20 {
                let a = random_matrix(&ctx, 3, 3, &mut rng);
                let b = random_matrix(&ctx, 3, 3, &mut rng);
                let sol = solve_linear_system(&[(a.clone(), b.clone())]).unwrap();
                let mut count: u64 = 0;
                let total = (q as u64).pow(9);
                for n in 0..total {
                    let mut digits = Vec::with_capacity(9);
                    let mut m = n;
                    for _ in 0..9 {
                        digits.push((m % q as u64) as u32);
                        m /= q as u64;
                    }
                    let x = MatrixFq::from_fn(&ctx, 3, 3, |i, j| digits[3 * i + j]);
                    if a.mul(&x).unwrap() == x.mul(&b).unwrap() {
                        count += 1;
                    }
                }
                assert_eq!(count, (q as u64).pow(sol.dim() as u32));
            }
        }
    }

    #[test]
    fn subspace_ops_examples() {
        let f2 = gf(2, 1);
        let e1 = Subspace::from_vec(&f2, &[1, 0, 0]);
        let e2 = Subspace::from_vec(&f2, &[0, 1, 0]);
        let s = e1.sum(&e2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);

        let zero = Subspace::zero(&f2, 3);
        assert!(s.sum(&zero).unwrap().equal(&s).unwrap());
        let full = Subspace::full(&f2, 3);
        assert!(s.intersect(&full).unwrap().equal(&s).unwrap());
    }

    #[test]
    fn subspace_dimension_formula_random() {
        let f2 = gf(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let a = Subspace::from_rows(&random_matrix(&f2, 3, 6, &mut rng));
            let b = Subspace::from_rows(&random_matrix(&f2, 3, 6, &mut rng));
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
            assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
        }
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<u32>> {
            proptest::collection::vec(0..q, rows * cols)
        }

        proptest! {
            #[test]
            fn rref_idempotent_gf3(data in small_matrix(3, 4, 5)) {
                let ctx = FieldCtx::new(3, 1).unwrap();
                let m = MatrixFq::unflatten(&data, &ctx, 4, 5);
                let (r1, k1) = m.rref();
                let (r2, k2) = r1.rref();
                prop_assert_eq!(r1, r2);
                prop_assert_eq!(k1, k2);
            }

            #[test]
            fn rank_nullity_gf4(data in small_matrix(4, 4, 4)) {
                let ctx = FieldCtx::new(2, 2).unwrap();
                let m = MatrixFq::unflatten(&data, &ctx, 4, 4);
                prop_assert_eq!(m.kernel().dim() + m.rank(), 4);
            }

            #[test]
            fn kron_rank_multiplicative_gf2(a in small_matrix(2, 3, 3), b in small_matrix(2, 2, 2)) {
                let ctx = FieldCtx::new(2, 1).unwrap();
                let a = MatrixFq::unflatten(&a, &ctx, 3, 3);
                let b = MatrixFq::unflatten(&b, &ctx, 2, 2);
                prop_assert_eq!(a.kron(&b).unwrap().rank(), a.rank() * b.rank());
            }

            #[test]
            fn subspace_sum_contains_both_gf5(a in small_matrix(5, 2, 4), b in small_matrix(5, 2, 4)) {
                let ctx = FieldCtx::new(5, 1).unwrap();
                let sa = Subspace::from_rows(&MatrixFq::unflatten(&a, &ctx, 2, 4));
                let sb = Subspace::from_rows(&MatrixFq::unflatten(&b, &ctx, 2, 4));
                let sum = sa.sum(&sb).unwrap();
                prop_assert!(sum.contains(&sa).unwrap());
                prop_assert!(sum.contains(&sb).unwrap());
                let meet = sa.intersect(&sb).unwrap();
                prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
            }
        }
    }

    #[test]
    fn quotient_coords_vanish_on_members() {
        let f3 = gf(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let s = Subspace::from_rows(&random_matrix(&f3, 2, 5, &mut rng));
            for v in s.all_vectors() {
                assert!(s.quotient_coords(&v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f7 = gf(7, 1);
        let m = MatrixFq::from_ints(&f7, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatrixFq::identity(&f7, 2));

        let b = MatrixFq::from_ints(&f7, &[vec![5], vec![6]]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x).unwrap(), b);

        let singular = MatrixFq::from_ints(&f7, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        let bad = MatrixFq::from_ints(&f7, &[vec![1], vec![3]]);
        assert!(singular.solve(&bad).is_none());
    }

}
