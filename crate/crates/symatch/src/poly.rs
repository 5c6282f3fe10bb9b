//! Bivariate Laurent polynomials over GF(2) on a (possibly twisted) torus.
//!
//! Monomials denote translations about the lattice. Boundary conditions are
//! the relations `x^M = 1` and `x^α·y^N = 1`; a nonzero twist `α` makes
//! y-wraps pick up an x-shift, so twisted tori (GT240, D180) need no special
//! cases downstream. Every polynomial is kept in canonical form with term
//! exponents `0 ≤ j < M`, `0 ≤ k < N`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits::BinaryVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("invalid torus shape (M={m}, N={n}, alpha={alpha}): require M,N >= 1 and 0 <= alpha < M")]
    InvalidShape { m: usize, n: usize, alpha: usize },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Periodic boundary conditions `x^M = x^α·y^N = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusShape {
    m: usize,
    n: usize,
    alpha: usize,
}

impl TorusShape {
    pub fn new(m: usize, n: usize, alpha: usize) -> Result<Self, PolyError> {
        if m < 1 || n < 1 || alpha >= m {
            return Err(PolyError::InvalidShape { m, n, alpha });
        }
        Ok(Self { m, n, alpha })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Number of lattice sites `M·N`.
    #[inline]
    pub fn sites(&self) -> usize {
        self.m * self.n
    }

    /// Reduces arbitrary exponents to canonical form. Wraps in `y` convert to
    /// x-shifts through `y^N = x^(-α)`.
    pub fn canonicalize(&self, j: i64, k: i64) -> (usize, usize) {
        let n = self.n as i64;
        let m = self.m as i64;
        let k_canon = k.rem_euclid(n);
        let wraps = (k - k_canon) / n;
        let j_canon = (j - self.alpha as i64 * wraps).rem_euclid(m);
        (j_canon as usize, k_canon as usize)
    }

    /// Row-major site index `k·M + j`; one fixed convention shared by every
    /// module.
    #[inline]
    pub fn site_index(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < self.m && k < self.n);
        k * self.m + j
    }

    #[inline]
    pub fn site_coords(&self, idx: usize) -> (usize, usize) {
        debug_assert!(idx < self.sites());
        (idx % self.m, idx / self.m)
    }
}

/// Polynomial over GF(2) in canonical form on a torus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePoly {
    shape: TorusShape,
    terms: BTreeSet<(usize, usize)>,
}

impl LatticePoly {
    pub fn zero(shape: TorusShape) -> Self {
        Self {
            shape,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(shape: TorusShape) -> Self {
        Self::monomial(shape, 0, 0)
    }

    pub fn monomial(shape: TorusShape, j: i64, k: i64) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(shape.canonicalize(j, k));
        Self { shape, terms }
    }

    pub fn from_terms(shape: TorusShape, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero(shape);
        for (j, k) in terms {
            p.toggle(j, k);
        }
        p
    }

    #[inline]
    pub fn shape(&self) -> TorusShape {
        self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, j: i64, k: i64) -> bool {
        self.terms.contains(&self.shape.canonicalize(j, k))
    }

    /// GF(2) addition / subtraction of a single term.
    fn toggle(&mut self, j: i64, k: i64) {
        let t = self.shape.canonicalize(j, k);
        if !self.terms.insert(t) {
            self.terms.remove(&t);
        }
    }

    /// Addition over GF(2): symmetric difference of term sets.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape, "shape mismatch in add");
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .copied()
            .collect();
        Self {
            shape: self.shape,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape, "shape mismatch in mul");
        let mut out = Self::zero(self.shape);
        for &(aj, ak) in &self.terms {
            for &(bj, bk) in &other.terms {
                out.toggle(aj as i64 + bj as i64, ak as i64 + bk as i64);
            }
        }
        out
    }

    /// Translation by a monomial: `translate(p, m) = p·m`.
    pub fn translate(&self, dj: i64, dk: i64) -> Self {
        let mut out = Self::zero(self.shape);
        for &(j, k) in &self.terms {
            out.toggle(j as i64 + dj, k as i64 + dk);
        }
        out
    }

    /// Replaces every term with its inverse translation; involutive on
    /// untwisted tori.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.shape);
        for &(j, k) in &self.terms {
            out.toggle(-(j as i64), -(k as i64));
        }
        out
    }

    /// Frobenius square: `p² = p(x², y²)` in characteristic 2.
    pub fn square(&self) -> Self {
        let mut out = Self::zero(self.shape);
        for &(j, k) in &self.terms {
            out.toggle(2 * j as i64, 2 * k as i64);
        }
        out
    }

    /// Keeps the terms passing the filter.
    pub fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            shape: self.shape,
            terms: self.terms.iter().copied().filter(|&(j, k)| keep(j, k)).collect(),
        }
    }

    /// Site-indicator vector of length `M·N` using `idx = k·M + j`.
    pub fn to_site_vector(&self) -> BinaryVector {
        BinaryVector::from_indices(
            self.shape.sites(),
            self.terms.iter().map(|&(j, k)| self.shape.site_index(j, k)),
        )
    }

    pub fn from_site_vector(shape: TorusShape, v: &BinaryVector) -> Self {
        assert_eq!(v.len(), shape.sites(), "site vector length mismatch");
        let terms = v
            .iter_ones()
            .map(|idx| shape.site_coords(idx))
            .collect();
        Self { shape, terms }
    }

    /// Parses the textual syntax: terms separated by `+`, monomials written
    /// as products of `x^j` and `y^k` factors with optional negative
    /// exponents and optional `*` separators, e.g. `1 + x + x^-1*y^3`.
    pub fn parse(shape: TorusShape, input: &str) -> Result<Self, PolyError> {
        let err = |reason: &str| PolyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut poly = Self::zero(shape);
        let body = input.trim();
        if body.is_empty() {
            return Err(err("empty input"));
        }
        if body == "0" {
            return Ok(poly);
        }
        for raw_term in body.split('+') {
            let term: String = raw_term.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(err("empty term between '+' signs"));
            }
            let mut j: i64 = 0;
            let mut k: i64 = 0;
            let mut chars = term.chars().peekable();
            let mut saw_factor = false;
            while let Some(c) = chars.next() {
                match c {
                    '*' => continue,
                    '1' => {
                        saw_factor = true;
                    }
                    'x' | 'y' => {
                        let mut exp: i64 = 1;
                        if chars.peek() == Some(&'^') {
                            chars.next();
                            let mut digits = String::new();
                            if chars.peek() == Some(&'-') {
                                digits.push('-');
                                chars.next();
                            }
                            while let Some(d) = chars.peek() {
                                if d.is_ascii_digit() {
                                    digits.push(*d);
                                    chars.next();
                                } else {
                                    break;
                                }
                            }
                            exp = digits
                                .parse()
                                .map_err(|_| err("malformed exponent"))?;
                        }
                        if c == 'x' {
                            j += exp;
                        } else {
                            k += exp;
                        }
                        saw_factor = true;
                    }
                    _ => return Err(err(&format!("unexpected character {c:?}"))),
                }
            }
            if !saw_factor {
                return Err(err("term with no factors"));
            }
            poly.toggle(j, k);
        }
        Ok(poly)
    }
}

impl fmt::Display for LatticePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(j, k) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, k) {
                (0, 0) => write!(f, "1")?,
                (j, 0) => write_var(f, 'x', j)?,
                (0, k) => write_var(f, 'y', k)?,
                (j, k) => {
                    write_var(f, 'x', j)?;
                    write!(f, "*")?;
                    write_var(f, 'y', k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePoly({self})")
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, var: char, exp: usize) -> fmt::Result {
    if exp == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{exp}")
    }
}

/// Pauli support as a column vector of two polynomials, one per qubit
/// sublattice (left, right).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliVec {
    pub left: LatticePoly,
    pub right: LatticePoly,
}

impl PauliVec {
    pub fn new(left: LatticePoly, right: LatticePoly) -> Self {
        assert_eq!(left.shape(), right.shape(), "shape mismatch in PauliVec");
        Self { left, right }
    }

    pub fn shape(&self) -> TorusShape {
        self.left.shape()
    }

    /// Qubit-indicator vector of length `2·M·N`: L block then R block.
    pub fn to_qubit_vector(&self) -> BinaryVector {
        let sites = self.shape().sites();
        let mut v = BinaryVector::zeros(2 * sites);
        for (j, k) in self.left.terms() {
            v.set(self.shape().site_index(j, k), true);
        }
        for (j, k) in self.right.terms() {
            v.set(sites + self.shape().site_index(j, k), true);
        }
        v
    }

    pub fn from_qubit_vector(shape: TorusShape, v: &BinaryVector) -> Self {
        let sites = shape.sites();
        assert_eq!(v.len(), 2 * sites, "qubit vector length mismatch");
        let mut left = LatticePoly::zero(shape);
        let mut right = LatticePoly::zero(shape);
        for idx in v.iter_ones() {
            let (block, site) = if idx < sites {
                (&mut left, idx)
            } else {
                (&mut right, idx - sites)
            };
            let (j, k) = shape.site_coords(site);
            block.toggle(j as i64, k as i64);
        }
        Self { left, right }
    }
}
