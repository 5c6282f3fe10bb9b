//! Exact linear algebra over GF(2).
//!
//! Dense bit-packed matrices with XOR row operations. Row reduction keeps the
//! transformation transcript `Γ` (with `Γ·M = RR(M)`), which is what symmetry
//! discovery and the destabilizer solver both consume. Pivots are chosen as
//! the first nonzero entry in column order scanning rows top-down, so every
//! run of the toolkit reduces a given matrix identically.

use crate::bits::BinaryVector;

/// Dense GF(2) matrix, row-major and bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BinaryVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        let mask = 1u64 << (c % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row(&self, r: usize) -> BinaryVector {
        BinaryVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    /// XORs row `src` into row `dst`.
    pub fn xor_rows(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let (a, b) = if src < dst {
            let (lo, hi) = self.bits.split_at_mut(dst * self.words_per_row);
            (
                &lo[src * self.words_per_row..(src + 1) * self.words_per_row],
                &mut hi[..self.words_per_row],
            )
        } else {
            let (lo, hi) = self.bits.split_at_mut(src * self.words_per_row);
            let b = &mut lo[dst * self.words_per_row..(dst + 1) * self.words_per_row];
            (&hi[..self.words_per_row], &mut *b)
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d ^= s;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.bits
                .swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let va = self.get(r, a);
            let vb = self.get(r, b);
            self.set(r, a, vb);
            self.set(r, b, va);
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.row(r).iter_ones() {
                let src = rhs.row_words(k).to_vec();
                for (d, s) in out.row_words_mut(r).iter_mut().zip(&src) {
                    *d ^= s;
                }
            }
        }
        out
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BinaryVector) -> BinaryVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = BinaryVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (w, o) in self.row_words(r).iter().zip(v.words()) {
                acc ^= w & o;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn stack(top: &Self, bottom: &Self) -> Self {
        assert_eq!(top.cols, bottom.cols);
        let mut out = Self::zeros(top.rows + bottom.rows, top.cols);
        out.bits[..top.bits.len()].copy_from_slice(&top.bits);
        out.bits[top.bits.len()..].copy_from_slice(&bottom.bits);
        out
    }

    pub fn rank(&self) -> usize {
        rref_with_transform(self).rank
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of full row reduction with its transformation transcript.
pub struct Rref {
    /// Reduced row-echelon form of the input.
    pub reduced: BinaryMatrix,
    /// Invertible transform with `transform · input = reduced`.
    pub transform: BinaryMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Fully row-reduces `m`, returning `(R, Γ)` with `R = Γ·m` and `Γ` invertible.
pub fn rref_with_transform(m: &BinaryMatrix) -> Rref {
    let mut r = m.clone();
    let mut gamma = BinaryMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..m.cols() {
        let Some(src) = (pivot_row..m.rows()).find(|&i| r.get(i, col)) else {
            continue;
        };
        r.swap_rows(src, pivot_row);
        gamma.swap_rows(src, pivot_row);
        for i in 0..m.rows() {
            if i != pivot_row && r.get(i, col) {
                r.xor_rows(pivot_row, i);
                gamma.xor_rows(pivot_row, i);
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == m.rows() {
            break;
        }
    }
    Rref {
        reduced: r,
        transform: gamma,
        rank: pivots.len(),
        pivots,
    }
}

/// Basis of the right kernel: all `v` with `m·v = 0`.
pub fn kernel(m: &BinaryMatrix) -> Vec<BinaryVector> {
    let rref = rref_with_transform(m);
    let pivot_set: std::collections::HashSet<usize> = rref.pivots.iter().copied().collect();
    let mut basis = Vec::with_capacity(m.cols() - rref.rank);
    for free in 0..m.cols() {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = BinaryVector::zeros(m.cols());
        v.set(free, true);
        for (row, &pc) in rref.pivots.iter().enumerate() {
            if rref.reduced.get(row, free) {
                v.set(pc, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Linear solver with a cached reduction transcript, so repeated solves
/// against the same matrix are back-substitutions only.
pub struct Solver {
    rref: Rref,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(m: &BinaryMatrix) -> Self {
        Self {
            rref: rref_with_transform(m),
            rows: m.rows(),
            cols: m.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref.rank
    }

    /// Finds any particular `x` with `m·x = b`, or `None` if `b` is outside
    /// the column space.
    pub fn solve(&self, b: &BinaryVector) -> Option<BinaryVector> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let y = self.rref.transform.mul_vec(b);
        for r in self.rref.rank..self.rows {
            if y.get(r) {
                return None;
            }
        }
        let mut x = BinaryVector::zeros(self.cols);
        for (r, &pc) in self.rref.pivots.iter().enumerate() {
            if y.get(r) {
                x.set(pc, true);
            }
        }
        Some(x)
    }

    /// Membership test for the row space of the original matrix.
    pub fn in_row_space(&self, v: &BinaryVector) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        // Reduce v against the reduced rows; zero remainder <=> member.
        let mut rem = v.clone();
        for (r, &pc) in self.rref.pivots.iter().enumerate() {
            if rem.get(pc) {
                rem.xor_assign(&self.rref.reduced.row(r));
            }
        }
        rem.is_zero()
    }
}

/// Binary Smith normal form `m = u · d · w` with `u`, `w` invertible and `d`
/// an identity block of size `rank` followed by zeros.
pub struct Snf {
    pub u: BinaryMatrix,
    pub d: BinaryMatrix,
    pub w: BinaryMatrix,
    pub u_inv: BinaryMatrix,
    pub w_inv: BinaryMatrix,
    pub rank: usize,
}

pub fn smith_normal_form(m: &BinaryMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = BinaryMatrix::identity(rows);
    let mut u_inv = BinaryMatrix::identity(rows);
    let mut w = BinaryMatrix::identity(cols);
    let mut w_inv = BinaryMatrix::identity(cols);
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // First nonzero entry in the trailing block, scanning row-major.
        let pivot = (t..rows).find_map(|i| (t..cols).find(|&j| d.get(i, j)).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else {
            break;
        };
        if pi != t {
            // Row swap on d: u swaps columns, u_inv swaps rows.
            d.swap_rows(pi, t);
            u.swap_cols(pi, t);
            u_inv.swap_rows(pi, t);
        }
        if pj != t {
            d.swap_cols(pj, t);
            w.swap_rows(pj, t);
            w_inv.swap_cols(pj, t);
        }
        for r in 0..rows {
            if r != t && d.get(r, t) {
                // d <- E·d with E adding row t to row r; u <- u·E, u_inv <- E·u_inv.
                d.xor_rows(t, r);
                u.xor_cols(r, t);
                u_inv.xor_rows(t, r);
            }
        }
        for c in 0..cols {
            if c != t && d.get(t, c) {
                // d <- d·F with F adding column t to column c; w <- F·w, w_inv <- w_inv·F.
                d.xor_cols(t, c);
                w.xor_rows(c, t);
                w_inv.xor_cols(t, c);
            }
        }
        rank += 1;
    }
    Snf {
        u,
        d,
        w,
        u_inv,
        w_inv,
        rank,
    }
}

impl BinaryMatrix {
    /// XORs column `src` into column `dst`.
    pub fn xor_cols(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        for r in 0..self.rows {
            if self.get(r, src) {
                let v = self.get(r, dst);
                self.set(r, dst, !v);
            }
        }
    }

    /// Inverse of a square invertible matrix; panics if singular.
    pub fn inverse(&self) -> Self {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let rref = rref_with_transform(self);
        assert_eq!(rref.rank, self.rows, "inverse of singular matrix");
        rref.transform
    }
}

/// Incrementally built row space with membership and rank queries.
pub struct Span {
    len: usize,
    // (leading one position, reduced row)
    rows: Vec<(usize, BinaryVector)>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn from_rows<'a>(len: usize, rows: impl IntoIterator<Item = &'a BinaryVector>) -> Self {
        let mut span = Self::new(len);
        for r in rows {
            span.insert(r);
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after reduction against the span.
    pub fn reduce(&self, v: &BinaryVector) -> BinaryVector {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut rem = v.clone();
        for (lead, row) in &self.rows {
            if rem.get(*lead) {
                rem.xor_assign(row);
            }
        }
        rem
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank increased.
    pub fn insert(&mut self, v: &BinaryVector) -> bool {
        let rem = self.reduce(v);
        let lead = rem.iter_ones().next();
        match lead {
            None => false,
            Some(lead) => {
                self.rows.push((lead, rem));
                true
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod naive {
    //! Plain `Vec<Vec<bool>>` Gaussian elimination, kept deliberately
    //! independent of the bit-packed routines it cross-checks.

    pub fn rank(m: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = m.to_vec();
        let rows = m.len();
        if rows == 0 {
            return 0;
        }
        let cols = m[0].len();
        let mut rank = 0;
        for col in 0..cols {
            let Some(src) = (rank..rows).find(|&i| m[i][col]) else {
                continue;
            };
            m.swap(src, rank);
            for i in 0..rows {
                if i != rank && m[i][col] {
                    let pivot_row = m[rank].clone();
                    for (a, b) in m[i].iter_mut().zip(&pivot_row) {
                        *a ^= *b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
