//! Discovery and verification of code symmetries and subsymmetries.
//!
//! A symmetry is a set of Z-checks multiplying to the identity; in polynomial
//! form a site polynomial `Σ` with `Σ·A = Σ·B = 0`, so every error violates
//! an even number of its checks. The canonical generating set comes from
//! Gaussian elimination on `H_Z`: the transform rows behind the all-zero rows
//! of `RR(H_Z)` are exactly the symmetries. A kernel-based discovery over the
//! stacked multiplication maps cross-validates the span.

use thiserror::Error;

use crate::bits::BinaryVector;
use crate::code::BBCode;
use crate::gf2::{self, BinaryMatrix, Span};
use crate::poly::LatticePoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("translated set is linearly dependent")]
    DependentSet,
    #[error("no power-of-two order up to 2^{0} for the defining polynomials")]
    NoPowerOfTwoOrder(u32),
}

/// A verified symmetry: the support polynomial marks the participating
/// Z-check sites; the label selects it within a generating set.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub support: LatticePoly,
    pub label: BinaryVector,
}

impl Symmetry {
    /// Indicator over check sites.
    pub fn site_vector(&self) -> BinaryVector {
        self.support.to_site_vector()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A symmetry with respect to errors confined to one qubit sublattice.
#[derive(Clone, Debug)]
pub struct Subsymmetry {
    pub side: Side,
    pub support: LatticePoly,
}

/// The defining condition `σΣ = 0`, i.e. `Σ·A = Σ·B = 0` in the quotient ring.
pub fn verify_symmetry(code: &BBCode, support: &LatticePoly) -> bool {
    support.mul(code.a()).is_zero() && support.mul(code.b()).is_zero()
}

/// The one-sided condition: `Σ·A = 0` for left subsymmetries (insensitive to
/// L-qubit errors), `Σ·B = 0` for right.
pub fn verify_subsymmetry(code: &BBCode, side: Side, support: &LatticePoly) -> bool {
    match side {
        Side::Left => support.mul(code.a()).is_zero(),
        Side::Right => support.mul(code.b()).is_zero(),
    }
}

/// Symmetry discovery through the row-reduction transcript: each all-zero row
/// of `RR(H_Z)` marks a transform row whose support is a symmetry. Returns
/// exactly `MN - rank(H_Z)` independent symmetries, ordered by pivot.
pub fn discover_symmetries_gauss(code: &BBCode) -> Vec<Symmetry> {
    let rref = gf2::rref_with_transform(code.h_z());
    let sites = code.num_sites();
    let count = sites - rref.rank;
    let mut out = Vec::with_capacity(count);
    for (i, row) in (rref.rank..sites).enumerate() {
        debug_assert!(rref.reduced.row_is_zero(row));
        let support = LatticePoly::from_site_vector(code.shape(), &rref.transform.row(row));
        debug_assert!(verify_symmetry(code, &support));
        debug_assert!(!support.is_zero());
        let label = BinaryVector::from_indices(count, [i]);
        out.push(Symmetry { support, label });
    }
    out
}

/// The multiplication-by-`p` map on site vectors as a matrix.
pub(crate) fn multiplication_matrix(p: &LatticePoly) -> BinaryMatrix {
    let shape = p.shape();
    let sites = shape.sites();
    let mut m = BinaryMatrix::zeros(sites, sites);
    for v in 0..sites {
        let (j, k) = shape.site_coords(v);
        for (tj, tk) in p.terms() {
            let q = shape.canonicalize(j as i64 + tj as i64, k as i64 + tk as i64);
            m.set(shape.site_index(q.0, q.1), v, true);
        }
    }
    m
}

/// Independent oracle for the Gaussian method: a basis of the simultaneous
/// kernel of multiplication by `A` and by `B`.
pub fn discover_symmetries_kernel(code: &BBCode) -> Vec<Symmetry> {
    let ma = multiplication_matrix(code.a());
    let mb = multiplication_matrix(code.b());
    let stacked = BinaryMatrix::stack(&ma, &mb);
    let basis = gf2::kernel(&stacked);
    let count = basis.len();
    basis
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let support = LatticePoly::from_site_vector(code.shape(), &v);
            debug_assert!(verify_symmetry(code, &support));
            Symmetry {
                support,
                label: BinaryVector::from_indices(count, [i]),
            }
        })
        .collect()
}

/// Kernel of the one-sided multiplication map: all subsymmetries of a side.
pub fn discover_subsymmetries(code: &BBCode, side: Side) -> Vec<Subsymmetry> {
    let m = match side {
        Side::Left => multiplication_matrix(code.a()),
        Side::Right => multiplication_matrix(code.b()),
    };
    gf2::kernel(&m)
        .into_iter()
        .map(|v| {
            let support = LatticePoly::from_site_vector(code.shape(), &v);
            debug_assert!(verify_subsymmetry(code, side, &support));
            Subsymmetry { side, support }
        })
        .collect()
}

/// Monomial translates of a symmetry, checked for independence.
pub fn translated_generating_set(
    code: &BBCode,
    sigma: &LatticePoly,
    translations: &[(i64, i64)],
) -> Result<Vec<Symmetry>, SymmetryError> {
    assert!(verify_symmetry(code, sigma), "input is not a symmetry");
    let mut span = Span::new(code.num_sites());
    let count = translations.len();
    let mut out = Vec::with_capacity(count);
    for (i, &(dj, dk)) in translations.iter().enumerate() {
        let support = sigma.translate(dj, dk);
        debug_assert!(verify_symmetry(code, &support));
        if !span.insert(&support.to_site_vector()) {
            return Err(SymmetryError::DependentSet);
        }
        out.push(Symmetry {
            support,
            label: BinaryVector::from_indices(count, [i]),
        });
    }
    Ok(out)
}

/// Geometric-series symmetry for codes whose polynomials have power-of-two
/// order after unit normalization: with `A = a₀(1+f)`, `B = b₀(1+g)` and
/// `f^Lf = g^Lg = 1` for `Lf = 2^lf`, `Lg = 2^lg`, the product
/// `Σ = (1+f)(1+f²)···(1+f^(Lf/2)) · (1+g)(1+g²)···(1+g^(Lg/2))`
/// satisfies `σΣ = 0`.
pub fn infinite_symmetry(code: &BBCode, bound_log2: u32) -> Result<Symmetry, SymmetryError> {
    let shape = code.shape();
    let one = LatticePoly::one(shape);
    let normalize = |p: &LatticePoly| -> LatticePoly {
        // A zero polynomial is 1+f with f = 1 (degenerate tori).
        let Some((j0, k0)) = p.terms().next() else {
            return one.clone();
        };
        // Divide by the first term so the constant term is 1, then drop it.
        let unit = p.translate(-(j0 as i64), -(k0 as i64));
        unit.add(&one)
    };
    let geometric = |f: &LatticePoly| -> Option<LatticePoly> {
        // Seeks f^(2^l) = 1; accumulates 1 + f + ... + f^(2^l - 1).
        let mut power = f.clone();
        let mut series = one.clone();
        for _ in 0..=bound_log2 {
            if power == one {
                return Some(series);
            }
            series = series.mul(&one.add(&power));
            power = power.square();
        }
        None
    };
    let f = normalize(code.a());
    let g = normalize(code.b());
    let sf = geometric(&f).ok_or(SymmetryError::NoPowerOfTwoOrder(bound_log2))?;
    let sg = geometric(&g).ok_or(SymmetryError::NoPowerOfTwoOrder(bound_log2))?;
    let support = sf.mul(&sg);
    assert!(
        verify_symmetry(code, &support),
        "geometric-series construction failed verification"
    );
    Ok(Symmetry {
        support,
        label: BinaryVector::from_indices(1, [0]),
    })
}

/// Span equality of two symmetry families over check sites.
pub fn spans_equal(a: &[Symmetry], b: &[Symmetry], sites: usize) -> bool {
    let vecs_a: Vec<BinaryVector> = a.iter().map(|s| s.site_vector()).collect();
    let vecs_b: Vec<BinaryVector> = b.iter().map(|s| s.site_vector()).collect();
    let span_a = Span::from_rows(sites, vecs_a.iter());
    let span_b = Span::from_rows(sites, vecs_b.iter());
    vecs_b.iter().all(|v| span_a.contains(v)) && vecs_a.iter().all(|v| span_b.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LatticePoly;
    use crate::registry;

    #[test]
    fn gross_has_six_independent_symmetries() {
        let code = registry::build_named("gross").unwrap();
        let syms = discover_symmetries_gauss(&code);
        assert_eq!(syms.len(), 6);
        for s in &syms {
            assert!(verify_symmetry(&code, &s.support));
            assert!(!s.support.is_zero());
        }
        let kernel_syms = discover_symmetries_kernel(&code);
        assert_eq!(kernel_syms.len(), 6);
        assert!(spans_equal(&syms, &kernel_syms, code.num_sites()));
    }

    #[test]
    fn toric_symmetry_is_all_checks() {
        let code = registry::build_named("tc:4").unwrap();
        let syms = discover_symmetries_kernel(&code);
        assert_eq!(syms.len(), 1);
        assert_eq!(syms[0].support.len(), code.num_sites());
        let gauss = discover_symmetries_gauss(&code);
        assert_eq!(gauss.len(), 1);
        assert_eq!(gauss[0].support.len(), code.num_sites());
    }

    #[test]
    fn gt98_symmetry_count_from_k() {
        let code = registry::build_named("gt98").unwrap();
        assert_eq!(code.num_logicals(), 6);
        assert_eq!(discover_symmetries_gauss(&code).len(), 3);
    }

    #[test]
    fn symmetry_space_closed_under_addition() {
        let code = registry::build_named("gross").unwrap();
        let syms = discover_symmetries_gauss(&code);
        let sum = syms[0].support.add(&syms[1].support);
        assert!(verify_symmetry(&code, &sum));
    }

    #[test]
    fn paper_symmetry_and_translates() {
        let code = registry::build_named("gross").unwrap();
        let shape = code.shape();
        let lead = LatticePoly::parse(shape, "x + y^2 + x^2*y").unwrap();
        let f = LatticePoly::parse(shape, "1 + x^6").unwrap();
        let g = LatticePoly::parse(shape, "1 + y^2").unwrap();
        let sigma = lead.mul(&f).mul(&g).mul(code.b());
        assert_eq!(sigma.len(), 36);
        assert!(verify_symmetry(&code, &sigma));
        // The generating translations {1, y, x^3, x^2y^3, x^3y^3, x^4y^-1}.
        let translations = [(0, 0), (0, 1), (3, 0), (2, 3), (3, 3), (4, -1)];
        let set = translated_generating_set(&code, &sigma, &translations).unwrap();
        assert_eq!(set.len(), 6);
        // They generate the full symmetry space.
        let gauss = discover_symmetries_gauss(&code);
        assert!(spans_equal(&set, &gauss, code.num_sites()));
        // Combinations include 32-, 36- and 48-check symmetries.
        let mut sizes = std::collections::BTreeSet::new();
        for mask in 1u32..64 {
            let mut acc = LatticePoly::zero(shape);
            for (i, s) in set.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.add(&s.support);
                }
            }
            sizes.insert(acc.len());
        }
        assert!(sizes.contains(&32) && sizes.contains(&36) && sizes.contains(&48));
        // Identity translation returns Σ itself.
        let same = translated_generating_set(&code, &sigma, &[(0, 0)]).unwrap();
        assert_eq!(same[0].support, sigma);
        // A duplicated translation is dependent.
        assert_eq!(
            translated_generating_set(&code, &sigma, &[(0, 0), (0, 0)]).unwrap_err(),
            SymmetryError::DependentSet
        );
    }

    #[test]
    fn gross_subsymmetries_contain_paper_forms() {
        let code = registry::build_named("gross").unwrap();
        let shape = code.shape();
        let f = LatticePoly::parse(shape, "1 + x^6").unwrap();
        // Σ^R = (1+x^6)(1+y^2)·B
        let sr = f
            .mul(&LatticePoly::parse(shape, "1 + y^2").unwrap())
            .mul(code.b());
        assert!(verify_subsymmetry(&code, Side::Right, &sr));
        let right = discover_subsymmetries(&code, Side::Right);
        let vecs: Vec<_> = right.iter().map(|s| s.support.to_site_vector()).collect();
        let span = Span::from_rows(code.num_sites(), vecs.iter());
        assert!(span.contains(&sr.to_site_vector()));
        // Σ^L = (1+x^6)(1+x^2)·A
        let sl = f
            .mul(&LatticePoly::parse(shape, "1 + x^2").unwrap())
            .mul(code.a());
        assert!(verify_subsymmetry(&code, Side::Left, &sl));
        let left = discover_subsymmetries(&code, Side::Left);
        let vecs: Vec<_> = left.iter().map(|s| s.support.to_site_vector()).collect();
        let span = Span::from_rows(code.num_sites(), vecs.iter());
        assert!(span.contains(&sl.to_site_vector()));
    }

    #[test]
    fn single_flips_respect_symmetries_and_sided_flips_respect_subsymmetries() {
        for name in ["gross", "d36"] {
            let code = registry::build_named(name).unwrap();
            let syms = discover_symmetries_gauss(&code);
            for q in 0..code.num_qubits() {
                let s = code.syndrome_of_qubits(&[q]);
                for sym in &syms {
                    assert_eq!(s.overlap(&sym.site_vector()) % 2, 0, "{name} qubit {q}");
                }
            }
            // L-only flips respect L-subsymmetries; some R flip violates one.
            let subs = discover_subsymmetries(&code, Side::Left);
            assert!(!subs.is_empty());
            for site in 0..code.num_sites() {
                let s = code.syndrome_of_qubits(&[code.left_qubit(site)]);
                for sub in &subs {
                    assert_eq!(s.overlap(&sub.support.to_site_vector()) % 2, 0);
                }
            }
            let witness = (0..code.num_sites()).any(|site| {
                let s = code.syndrome_of_qubits(&[code.right_qubit(site)]);
                subs.iter()
                    .any(|sub| s.overlap(&sub.support.to_site_vector()) % 2 == 1)
            });
            assert!(witness, "{name}: no R-error witness violating an L-subsymmetry");
        }
    }

    #[test]
    fn infinite_symmetry_examples() {
        // Toric (4,4): Σ = (1+x)(1+x^2)(1+y)(1+y^2) has full support.
        let toric = registry::build_named("tc:4").unwrap();
        let sym = infinite_symmetry(&toric, 10).unwrap();
        assert_eq!(sym.support.len(), 16);
        // Trivial torus: Σ = 1.
        let shape = crate::poly::TorusShape::new(1, 1, 0).unwrap();
        let a = LatticePoly::parse(shape, "1+x").unwrap();
        let b = LatticePoly::parse(shape, "1+y").unwrap();
        let code = crate::code::BBCode::build("trivial", a, b).unwrap();
        let sym = infinite_symmetry(&code, 4).unwrap();
        assert_eq!(sym.support, LatticePoly::one(shape));
        // LC162 has no power-of-two orders on a 9x9 torus.
        let lc = registry::build_named("lc162").unwrap();
        assert_eq!(
            infinite_symmetry(&lc, 10).unwrap_err(),
            SymmetryError::NoPowerOfTwoOrder(10)
        );
    }
}
