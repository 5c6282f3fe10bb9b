//! Bivariate bicycle code construction.
//!
//! A code instance is fixed by polynomials `A`, `B` and a torus shape. The
//! Z-check at site `s` is supported on left qubits `s·a` for each term `a` of
//! `A` and right qubits `s·b` for each term `b` of `B`; with this convention
//! a set of checks `Σ` multiplies to the identity exactly when `Σ·A = Σ·B = 0`
//! in the quotient ring. Qubits are indexed with the L block in `[0, MN)` and
//! the R block in `[MN, 2MN)`, site index `k·M + j`.

use thiserror::Error;

use crate::bits::BinaryVector;
use crate::gf2::{self, BinaryMatrix, Solver, Span};
use crate::poly::{LatticePoly, PauliVec, TorusShape};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("stabilizers do not commute: H_X·H_Z^T != 0 (invalid polynomial pair)")]
    CommutationFailure,
    #[error("syndrome is outside the column space of H_Z")]
    NoSolution,
    #[error("error and correction have different syndromes")]
    SyndromeMismatch,
}

/// Bit-flip error support: length `2MN`, L block then R block.
pub type ErrorVec = BinaryVector;
/// Violated Z-checks: length `MN`.
pub type SyndromeVec = BinaryVector;

/// A constructed BB code instance.
pub struct BBCode {
    pub name: String,
    shape: TorusShape,
    a: LatticePoly,
    b: LatticePoly,
    h_z: BinaryMatrix,
    h_x: BinaryMatrix,
    n: usize,
    k: usize,
    /// Known distance, if any, with a caveat flag for distances the source
    /// reports with reservations.
    pub distance: Option<usize>,
    pub distance_caveat: bool,
    z_logicals: Vec<BinaryVector>,
    x_logicals: Vec<BinaryVector>,
    hz_solver: Solver,
    hx_solver: Solver,
    /// Z-checks touching each qubit (columns of H_Z as index lists).
    qubit_checks: Vec<Vec<u32>>,
}

impl BBCode {
    pub fn build(
        name: impl Into<String>,
        a: LatticePoly,
        b: LatticePoly,
    ) -> Result<Self, CodeError> {
        let shape = a.shape();
        assert_eq!(shape, b.shape(), "A and B must share a torus shape");
        let sites = shape.sites();
        let n = 2 * sites;

        let mut h_z = BinaryMatrix::zeros(sites, n);
        let mut h_x = BinaryMatrix::zeros(sites, n);
        let a_inv = a.antipode();
        let b_inv = b.antipode();
        for site in 0..sites {
            let (j, k) = shape.site_coords(site);
            let (j, k) = (j as i64, k as i64);
            for (tj, tk) in a.terms() {
                let q = shape.canonicalize(j + tj as i64, k + tk as i64);
                h_z.set(site, shape.site_index(q.0, q.1), true);
            }
            for (tj, tk) in b.terms() {
                let q = shape.canonicalize(j + tj as i64, k + tk as i64);
                h_z.set(site, sites + shape.site_index(q.0, q.1), true);
            }
            for (tj, tk) in b_inv.terms() {
                let q = shape.canonicalize(j + tj as i64, k + tk as i64);
                h_x.set(site, shape.site_index(q.0, q.1), true);
            }
            for (tj, tk) in a_inv.terms() {
                let q = shape.canonicalize(j + tj as i64, k + tk as i64);
                h_x.set(site, sites + shape.site_index(q.0, q.1), true);
            }
        }
        if !h_x.mul(&h_z.transpose()).is_zero() {
            return Err(CodeError::CommutationFailure);
        }

        let hz_solver = Solver::new(&h_z);
        let hx_solver = Solver::new(&h_x);
        let k = n - hz_solver.rank() - hx_solver.rank();

        let (z_logicals, x_logicals) = logical_basis(&h_z, &h_x, k);

        let mut qubit_checks = vec![Vec::new(); n];
        for row in 0..sites {
            for q in h_z.row(row).iter_ones() {
                qubit_checks[q].push(row as u32);
            }
        }

        Ok(Self {
            name: name.into(),
            shape,
            a,
            b,
            h_z,
            h_x,
            n,
            k,
            distance: None,
            distance_caveat: false,
            z_logicals,
            x_logicals,
            hz_solver,
            hx_solver,
            qubit_checks,
        })
    }

    #[inline]
    pub fn shape(&self) -> TorusShape {
        self.shape
    }

    pub fn a(&self) -> &LatticePoly {
        &self.a
    }

    pub fn b(&self) -> &LatticePoly {
        &self.b
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_sites(&self) -> usize {
        self.shape.sites()
    }

    #[inline]
    pub fn num_logicals(&self) -> usize {
        self.k
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    /// Canonically paired Z-logical representatives (`k` of them).
    pub fn z_logicals(&self) -> &[BinaryVector] {
        &self.z_logicals
    }

    /// X-logical representatives with `⟨Z̄_i, X̄_j⟩ = δ_ij`.
    pub fn x_logicals(&self) -> &[BinaryVector] {
        &self.x_logicals
    }

    /// Z-checks acting on qubit `q`.
    pub fn qubit_checks(&self, q: usize) -> &[u32] {
        &self.qubit_checks[q]
    }

    #[inline]
    pub fn left_qubit(&self, site: usize) -> usize {
        site
    }

    #[inline]
    pub fn right_qubit(&self, site: usize) -> usize {
        self.num_sites() + site
    }

    /// Syndrome of a bit-flip error: `s = H_Z·e`.
    pub fn syndrome(&self, e: &ErrorVec) -> SyndromeVec {
        assert_eq!(e.len(), self.n, "error vector length mismatch");
        self.h_z.mul_vec(e)
    }

    /// Syndrome of a sparse error given as qubit indices.
    pub fn syndrome_of_qubits(&self, qubits: &[usize]) -> SyndromeVec {
        let mut s = BinaryVector::zeros(self.num_sites());
        for &q in qubits {
            for &c in &self.qubit_checks[q] {
                s.flip(c as usize);
            }
        }
        s
    }

    /// Destabilizer-style initial correction: any `c` with `H_Z·c = s`.
    /// Back-substitution against the cached reduction transcript of `H_Z`.
    pub fn initial_correction(&self, s: &SyndromeVec) -> Result<ErrorVec, CodeError> {
        self.hz_solver.solve(s).ok_or(CodeError::NoSolution)
    }

    /// Whether an X-type operator is a product of X-stabilizers.
    pub fn is_x_stabilizer(&self, v: &ErrorVec) -> bool {
        self.hx_solver.in_row_space(v)
    }

    /// Whether a Z-type operator is a product of Z-stabilizers.
    pub fn is_z_stabilizer(&self, v: &ErrorVec) -> bool {
        self.hz_solver.in_row_space(v)
    }

    /// Per-logical commutator flags of the residual `e + c`, plus the overall
    /// failure flag. Requires `c` to reproduce the syndrome of `e`.
    pub fn is_logical_failure(
        &self,
        e: &ErrorVec,
        c: &ErrorVec,
    ) -> Result<(Vec<bool>, bool), CodeError> {
        let residual = e.xor(c);
        if !self.syndrome(&residual).is_zero() {
            return Err(CodeError::SyndromeMismatch);
        }
        let flags: Vec<bool> = self.z_logicals.iter().map(|z| residual.dot(z)).collect();
        let overall = flags.iter().any(|&f| f);
        Ok((flags, overall))
    }

    /// Support of a Pauli given as polynomial components.
    pub fn qubit_vector(&self, pauli: &PauliVec) -> ErrorVec {
        assert_eq!(pauli.shape(), self.shape);
        pauli.to_qubit_vector()
    }

    /// Certified minimum weight of a Z-logical (a kernel-of-`H_X` vector
    /// outside the row space of `H_Z`), searched up to `cap`.
    pub fn brute_force_distance(&self, cap: usize) -> DistanceResult {
        min_logical_weight(&self.h_x, &self.hz_solver, cap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceResult {
    Known(usize),
    /// The search bound was exhausted without certifying a distance <= cap.
    Unknown,
}

/// Extracts `k` Z-logicals (kernel of `H_X` modulo rows of `H_Z`) and `k`
/// X-logicals, transformed so the symplectic Gram matrix is the identity.
fn logical_basis(
    h_z: &BinaryMatrix,
    h_x: &BinaryMatrix,
    k: usize,
) -> (Vec<BinaryVector>, Vec<BinaryVector>) {
    let n = h_z.cols();
    let coset_reps = |kernel_of: &BinaryMatrix, modulo: &BinaryMatrix| -> Vec<BinaryVector> {
        let mut span = Span::new(n);
        for r in 0..modulo.rows() {
            span.insert(&modulo.row(r));
        }
        let mut reps = Vec::new();
        for v in gf2::kernel(kernel_of) {
            if span.insert(&v) {
                reps.push(v);
            }
        }
        reps
    };
    let z_raw = coset_reps(h_x, h_z);
    let x_raw = coset_reps(h_z, h_x);
    assert_eq!(z_raw.len(), k, "Z-logical count disagrees with k");
    assert_eq!(x_raw.len(), k, "X-logical count disagrees with k");

    // Symplectic Gram-Schmidt: x̄_j = Σ_m (G^-1)_{m,j} x_m gives ⟨z_i, x̄_j⟩ = δ_ij.
    let mut gram = BinaryMatrix::zeros(k, k);
    for (i, z) in z_raw.iter().enumerate() {
        for (j, x) in x_raw.iter().enumerate() {
            if z.dot(x) {
                gram.set(i, j, true);
            }
        }
    }
    let gram_inv = gram.inverse();
    let mut x_paired = Vec::with_capacity(k);
    for j in 0..k {
        let mut acc = BinaryVector::zeros(n);
        for m in 0..k {
            if gram_inv.get(m, j) {
                acc.xor_assign(&x_raw[m]);
            }
        }
        x_paired.push(acc);
    }
    for (i, z) in z_raw.iter().enumerate() {
        for (j, x) in x_paired.iter().enumerate() {
            debug_assert_eq!(z.dot(x), i == j, "symplectic pairing failed");
        }
    }
    (z_raw, x_paired)
}

/// Minimum weight over codewords of `ker(h_x)` that are not products of the
/// rows of the solver's matrix, certified by information-set enumeration.
///
/// Combinations of up to `a` basis rows are enumerated for each of a family
/// of disjoint information sets; once every unenumerated codeword provably
/// weighs at least the best logical found (or more than `cap`), the search
/// stops.
fn min_logical_weight(h_x: &BinaryMatrix, stab_solver: &Solver, cap: usize) -> DistanceResult {
    let n = h_x.cols();
    let basis = gf2::kernel(h_x);
    let k_dim = basis.len();
    if k_dim == 0 {
        return DistanceResult::Unknown;
    }

    // Greedily carve disjoint information sets out of the columns. Each set
    // yields a basis of the same code that is systematic on its columns and
    // zero on them beyond its rank.
    struct InfoSet {
        rows: Vec<BinaryVector>,
        deficiency: usize,
    }
    let mut sets: Vec<InfoSet> = Vec::new();
    let mut used = vec![false; n];
    loop {
        let mut rows: Vec<BinaryVector> = Vec::new();
        let mut work: Vec<BinaryVector> = basis.clone();
        let mut pivots: Vec<usize> = Vec::new();
        // Eliminate choosing pivots only among unused columns.
        for col in (0..n).filter(|&c| !used[c]) {
            let Some(pos) = work.iter().position(|r| r.get(col)) else {
                continue;
            };
            let pivot_row = work.swap_remove(pos);
            for r in work.iter_mut().chain(rows.iter_mut()) {
                if r.get(col) {
                    r.xor_assign(&pivot_row);
                }
            }
            rows.push(pivot_row);
            pivots.push(col);
        }
        let rank = rows.len();
        if rank == 0 {
            break;
        }
        for &c in &pivots {
            used[c] = true;
        }
        // Leftover rows are zero on this set's columns; keep them so that
        // combinations still cover the whole code.
        for r in work {
            debug_assert!(!r.is_zero());
            rows.push(r);
        }
        debug_assert_eq!(rows.len(), k_dim);
        sets.push(InfoSet {
            rows,
            deficiency: k_dim - rank,
        });
        if sets.len() >= 4 {
            break;
        }
    }

    let mut found = false;
    let mut best_w = usize::MAX;
    // DFS over combinations of exactly `depth` rows with incremental XOR.
    fn enumerate(
        rows: &[BinaryVector],
        start: usize,
        remaining: usize,
        acc: &mut BinaryVector,
        visit: &mut impl FnMut(&BinaryVector),
    ) {
        if remaining == 0 {
            visit(acc);
            return;
        }
        for i in start..=rows.len() - remaining {
            acc.xor_assign(&rows[i]);
            enumerate(rows, i + 1, remaining - 1, acc, visit);
            acc.xor_assign(&rows[i]);
        }
    }

    for a in 1..=k_dim {
        for set in &sets {
            let mut acc = BinaryVector::zeros(n);
            enumerate(&set.rows, 0, a, &mut acc, &mut |cw| {
                let w = cw.weight();
                if w < best_w && !stab_solver.in_row_space(cw) {
                    best_w = w;
                    found = true;
                }
            });
        }
        let lower_bound: usize = sets
            .iter()
            .map(|s| (a + 1).saturating_sub(s.deficiency))
            .sum();
        if lower_bound >= best_w.min(cap + 1) {
            break;
        }
    }
    if found && best_w <= cap {
        DistanceResult::Known(best_w)
    } else {
        DistanceResult::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    /// Exhaustive distance search by direct weight-w enumeration; the
    /// independent oracle for the information-set method.
    fn naive_distance(code: &BBCode, cap: usize) -> DistanceResult {
        let n = code.num_qubits();
        fn combos(
            n: usize,
            w: usize,
            start: usize,
            current: &mut Vec<usize>,
            visit: &mut impl FnMut(&[usize]) -> bool,
        ) -> bool {
            if current.len() == w {
                return visit(current);
            }
            for i in start..n {
                current.push(i);
                if combos(n, w, i + 1, current, visit) {
                    return true;
                }
                current.pop();
            }
            false
        }
        for w in 1..=cap {
            let mut found = false;
            combos(n, w, 0, &mut Vec::new(), &mut |qubits| {
                let v = BinaryVector::from_indices(n, qubits.iter().copied());
                if code.h_x().mul_vec(&v).is_zero() && !code.is_z_stabilizer(&v) {
                    found = true;
                    return true;
                }
                false
            });
            if found {
                return DistanceResult::Known(w);
            }
        }
        DistanceResult::Unknown
    }

    #[test]
    fn gross_code_parameters() {
        let code = registry::build_named("gross").unwrap();
        assert_eq!(code.num_qubits(), 144);
        assert_eq!(code.num_logicals(), 12);
    }

    #[test]
    fn toric_and_directional_parameters() {
        let toric = registry::build_named("tc:4").unwrap();
        assert_eq!(toric.num_qubits(), 32);
        assert_eq!(toric.num_logicals(), 2);
        let d36 = registry::build_named("d36").unwrap();
        assert_eq!(d36.num_qubits(), 36);
        assert_eq!(d36.num_logicals(), 4);
    }

    #[test]
    fn commutation_identity_holds_for_arbitrary_pairs() {
        let shape = TorusShape::new(5, 3, 0).unwrap();
        let a = LatticePoly::parse(shape, "1+x+y^2").unwrap();
        let b = LatticePoly::parse(shape, "1+x^2*y").unwrap();
        let code = BBCode::build("adhoc", a, b).unwrap();
        assert!(code.h_x().mul(&code.h_z().transpose()).is_zero());
    }

    #[test]
    fn syndrome_weights_of_single_flips() {
        let gross = registry::build_named("gross").unwrap();
        // Single L flip violates |A| = 3 checks.
        let e = BinaryVector::from_indices(144, [gross.left_qubit(0)]);
        assert_eq!(gross.syndrome(&e).weight(), 3);
        let d36 = registry::build_named("d36").unwrap();
        // D36's A has only two terms.
        let e = BinaryVector::from_indices(36, [d36.left_qubit(0)]);
        assert_eq!(d36.syndrome(&e).weight(), 2);
        // Zero error, zero syndrome.
        assert!(gross.syndrome(&BinaryVector::zeros(144)).is_zero());
    }

    #[test]
    fn syndrome_is_linear() {
        use rand::{Rng, SeedableRng};
        let code = registry::build_named("gross").unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let mut e1 = BinaryVector::zeros(144);
            let mut e2 = BinaryVector::zeros(144);
            for q in 0..144 {
                if rng.random_bool(0.1) {
                    e1.set(q, true);
                }
                if rng.random_bool(0.1) {
                    e2.set(q, true);
                }
            }
            assert_eq!(
                code.syndrome(&e1.xor(&e2)),
                code.syndrome(&e1).xor(&code.syndrome(&e2))
            );
        }
    }

    #[test]
    fn initial_correction_matches_syndrome() {
        use rand::{Rng, SeedableRng};
        let code = registry::build_named("gross").unwrap();
        let zero = BinaryVector::zeros(code.num_sites());
        assert!(code.syndrome(&code.initial_correction(&zero).unwrap()).is_zero());
        let mut rng = rand::rngs::StdRng::seed_from_u64(10);
        for _ in 0..20 {
            let mut e = BinaryVector::zeros(144);
            for q in 0..144 {
                if rng.random_bool(0.08) {
                    e.set(q, true);
                }
            }
            let s = code.syndrome(&e);
            let c = code.initial_correction(&s).unwrap();
            assert_eq!(code.syndrome(&c), s);
            // Residual has zero syndrome.
            assert!(code.syndrome(&e.xor(&c)).is_zero());
        }
    }

    #[test]
    fn logical_pairing_is_canonical() {
        for name in ["tc:4", "gross", "d36"] {
            let code = registry::build_named(name).unwrap();
            let k = code.num_logicals();
            for (i, z) in code.z_logicals().iter().enumerate() {
                assert!(code.h_x().mul_vec(z).is_zero(), "{name}: Z̄ must commute with H_X");
                assert!(!code.is_z_stabilizer(z), "{name}: Z̄ must not be a stabilizer");
                for (j, x) in code.x_logicals().iter().enumerate() {
                    assert_eq!(z.dot(x), i == j, "{name}: pairing Z̄_{i}·X̄_{j}");
                }
            }
            assert_eq!(code.z_logicals().len(), k);
        }
    }

    #[test]
    fn failure_flags_detect_logicals_and_ignore_stabilizers() {
        let code = registry::build_named("tc:4").unwrap();
        let e = BinaryVector::from_indices(32, [3, 17]);
        // c = e: no failure.
        let (flags, overall) = code.is_logical_failure(&e, &e).unwrap();
        assert!(!overall && flags.iter().all(|&f| !f));
        // c = e + stabilizer row: still no failure.
        let c = e.xor(&code.h_x().row(5));
        let (_, overall) = code.is_logical_failure(&e, &c).unwrap();
        assert!(!overall);
        // c = e + X-logical: exactly one flag raised by the paired Z-logical.
        let c = e.xor(&code.x_logicals()[0].clone());
        let (flags, overall) = code.is_logical_failure(&e, &c).unwrap();
        assert!(overall);
        assert_eq!(flags, vec![true, false]);
        // Mismatched syndromes are rejected.
        let bad = BinaryVector::from_indices(32, [0]);
        assert_eq!(
            code.is_logical_failure(&e, &bad).unwrap_err(),
            CodeError::SyndromeMismatch
        );
    }

    #[test]
    fn distance_toric_and_directional() {
        let toric = registry::build_named("tc:4").unwrap();
        assert_eq!(toric.brute_force_distance(6), DistanceResult::Known(4));
        assert_eq!(naive_distance(&toric, 4), DistanceResult::Known(4));
        let d36 = registry::build_named("d36").unwrap();
        assert_eq!(d36.brute_force_distance(6), DistanceResult::Known(4));
        assert_eq!(naive_distance(&d36, 4), DistanceResult::Known(4));
    }

    #[test]
    fn distance_cap_reports_unknown() {
        let toric = registry::build_named("tc:6").unwrap();
        assert_eq!(toric.brute_force_distance(3), DistanceResult::Unknown);
        assert_eq!(toric.brute_force_distance(8), DistanceResult::Known(6));
    }
}
