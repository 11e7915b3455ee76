//! Sequences whose transform has the same shape as the input, read as
//! modular eigensequences `N F = lambda F (mod m)`.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::ResidueMatrix;
use crate::modular::{inv_raw, Modulus, Residue};
use crate::nht::{NhtError, NhtSpec, ResidueVector};

/// Largest `m^(2n)` for which a composite modulus is scanned by brute force.
pub const BRUTE_FORCE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("column {column} has no invertible pivot modulo {modulus}")]
    NonUnitPivot { column: usize, modulus: u64 },
    #[error("composite modulus {modulus}: {space} vectors exceed the brute-force budget")]
    CompositeModulusUnsupported { modulus: u64, space: u128 },
    #[error("spec is not a valid transform (N N^T != I)")]
    InvalidSpec,
    #[error(transparent)]
    Nht(#[from] NhtError),
}

/// An eigenvalue with a basis (or, for composite moduli, a generating set)
/// of its eigenspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub lambda: Residue,
    pub basis: Vec<ResidueVector>,
}

impl EigenPair {
    /// Whether `v` lies in the span of the basis.
    pub fn spans(&self, v: &ResidueVector) -> bool {
        let m = self.lambda.modulus();
        if m.is_prime() {
            let mut rows: Vec<Vec<u64>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
            let before = rank_prime(rows.clone(), m);
            rows.push(v.entries().to_vec());
            rank_prime(rows, m) == before
        } else {
            span_closure(&self.basis, m).contains(v.entries())
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformPair {
    pub input: ResidueVector,
    pub output: ResidueVector,
}

/// Right nullspace of a square matrix over `Z_m` by Gauss-Jordan elimination.
///
/// Pivots must be units. For prime `m` that always holds; for composite `m`
/// a column whose remaining entries are nonzero but all non-invertible
/// yields [`ShapeError::NonUnitPivot`].
pub fn nullspace_mod(matrix: &ResidueMatrix) -> Result<Vec<ResidueVector>, ShapeError> {
    let m = matrix.modulus();
    let dim = matrix.dim();
    let mut rows: Vec<Vec<u64>> = matrix.rows().map(<[u64]>::to_vec).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        if r == dim {
            break;
        }
        let unit = (r..dim).find_map(|i| inv_raw(rows[i][col], m).map(|inv| (i, inv)));
        let Some((p, inv)) = unit else {
            if (r..dim).any(|i| rows[i][col] != 0) {
                return Err(ShapeError::NonUnitPivot {
                    column: col,
                    modulus: m.get(),
                });
            }
            continue;
        };
        rows.swap(r, p);
        for v in rows[r].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if i == r || factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = m.add(*x, m.neg(m.mul(factor, y)));
            }
        }
        pivot_cols.push(col);
        r += 1;
    }

    let mut basis = Vec::new();
    let mut is_pivot = vec![false; dim];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    for free in (0..dim).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; dim];
        v[free] = 1;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m.neg(rows[row][free]);
        }
        basis.push(ResidueVector::from_canonical(m, v));
    }
    Ok(basis)
}

fn rank_prime(mut rows: Vec<Vec<u64>>, m: Modulus) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_raw(rows[rank][col], m).expect("nonzero is a unit mod a prime");
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| m.mul(v, inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = m.add(*x, m.neg(m.mul(f, y)));
            }
        }
        rank += 1;
    }
    rank
}

fn span_closure(basis: &[ResidueVector], m: Modulus) -> HashSet<Vec<u64>> {
    let dim = basis.first().map_or(0, ResidueVector::len);
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; dim]]);
    for b in basis {
        extend_span(&mut span, b.entries(), m);
    }
    span
}

fn extend_span(span: &mut HashSet<Vec<u64>>, v: &[u64], m: Modulus) {
    let current: Vec<Vec<u64>> = span.iter().cloned().collect();
    for s in current {
        for t in 1..m.get() {
            span.insert(s.iter().zip(v).map(|(&a, &b)| m.add(a, m.mul(t, b))).collect());
        }
    }
}

/// Every `lambda` in `[1, m)` with a nonzero eigensequence, ascending.
///
/// Prime moduli scan `lambda` with one elimination each. Composite moduli
/// fall back to enumerating all of `Z_m^(2n)` when that is at most
/// [`BRUTE_FORCE_BUDGET`] vectors.
pub fn find_scalar_shape_pairs(spec: &NhtSpec) -> Result<Vec<EigenPair>, ShapeError> {
    if !spec.is_valid() {
        return Err(ShapeError::InvalidSpec);
    }
    let m = spec.modulus();
    if m.is_prime() {
        let n = spec.matrix().into_matrix();
        let pairs: Result<Vec<Option<EigenPair>>, ShapeError> = (1..m.get())
            .into_par_iter()
            .map(|lambda| {
                let basis = nullspace_mod(&n.shifted(lambda))?;
                Ok((!basis.is_empty()).then(|| EigenPair {
                    lambda: m.residue(lambda as i64),
                    basis,
                }))
            })
            .collect();
        return Ok(pairs?.into_iter().flatten().collect());
    }

    let space = (0..spec.size()).fold(1u128, |acc, _| acc.saturating_mul(m.get() as u128));
    if space > BRUTE_FORCE_BUDGET {
        return Err(ShapeError::CompositeModulusUnsupported {
            modulus: m.get(),
            space,
        });
    }
    Ok(brute_force_pairs(spec))
}

fn brute_force_pairs(spec: &NhtSpec) -> Vec<EigenPair> {
    let m = spec.modulus();
    let size = spec.size();
    let mut by_lambda: Vec<Vec<Vec<u64>>> = vec![Vec::new(); m.get() as usize];
    let mut f = vec![0u64; size];
    let mut g = vec![0u64; size];
    while increment(&mut f, m.get()) {
        spec.forward_into(&f, &mut g);
        for lambda in 1..m.get() {
            if f.iter().zip(&g).all(|(&x, &y)| m.mul(x, lambda) == y) {
                by_lambda[lambda as usize].push(f.clone());
            }
        }
    }
    let mut out = Vec::new();
    for (lambda, vectors) in by_lambda.into_iter().enumerate() {
        if vectors.is_empty() {
            continue;
        }
        let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; size]]);
        let mut basis = Vec::new();
        for v in vectors {
            if !span.contains(&v) {
                extend_span(&mut span, &v, m);
                basis.push(ResidueVector::from_canonical(m, v));
            }
        }
        out.push(EigenPair {
            lambda: m.residue(lambda as i64),
            basis,
        });
    }
    out
}

// Lexicographic odometer over Z_m^len, skipping the zero vector; false once exhausted.
fn increment(v: &mut [u64], m: u64) -> bool {
    for slot in v.iter_mut().rev() {
        *slot += 1;
        if *slot < m {
            return true;
        }
        *slot = 0;
    }
    false
}

pub fn transform_pair(spec: &NhtSpec, input: &ResidueVector) -> Result<TransformPair, NhtError> {
    let output = spec.forward(input)?;
    Ok(TransformPair {
        input: input.clone(),
        output,
    })
}

/// The alternating `1, -1, 1, ...` vector of length `len`.
pub fn alternating(m: Modulus, len: usize) -> ResidueVector {
    let v: Vec<i64> = (0..len).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    ResidueVector::new(m, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn spec14() -> NhtSpec {
        NhtSpec::new(md(29), &[3, 15, 22, 11, 20, 10, 5]).unwrap()
    }

    fn spec16() -> NhtSpec {
        NhtSpec::new(md(13), &[7, 11, 12, 6, 3, 8, 4, 2]).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_mod(&ResidueMatrix::identity(5, md(7))).unwrap().is_empty());
        let z = nullspace_mod(&ResidueMatrix::zeros(4, md(7))).unwrap();
        let units: Vec<ResidueVector> = (0..4).map(|i| ResidueVector::unit(md(7), 4, i)).collect();
        assert_eq!(z, units);
        let shifted = spec14().matrix().into_matrix().shifted(28);
        let basis = nullspace_mod(&shifted).unwrap();
        assert_eq!(basis, vec![ResidueVector::filled(md(29), 14, 1)]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = md(11);
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let a = ResidueMatrix::from_rows(&rows, m);
        let basis = nullspace_mod(&a).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(a.mul_vec(basis[0].entries()).iter().all(|&x| x == 0));
    }

    #[test]
    fn non_unit_pivot() {
        let a = ResidueMatrix::from_rows(&[vec![2, 0], vec![0, 1]], md(4));
        assert_eq!(
            nullspace_mod(&a),
            Err(ShapeError::NonUnitPivot { column: 0, modulus: 4 })
        );
        let ok = ResidueMatrix::from_rows(&[vec![3, 0], vec![0, 0]], md(4));
        assert_eq!(nullspace_mod(&ok).unwrap(), vec![ResidueVector::unit(md(4), 2, 1)]);
    }

    #[test]
    fn eigen_14() {
        let pairs = find_scalar_shape_pairs(&spec14()).unwrap();
        let ones = ResidueVector::filled(md(29), 14, 1);
        let alt = alternating(md(29), 14);
        let at = |l: u64| pairs.iter().find(|p| p.lambda.value() == l).unwrap();
        assert!(at(28).spans(&ones));
        assert!(at(1).spans(&alt));
        assert!(!at(1).spans(&ones));
        assert!(pairs.windows(2).all(|w| w[0].lambda.value() < w[1].lambda.value()));
    }

    #[test]
    fn eigen_16() {
        let pairs = find_scalar_shape_pairs(&spec16()).unwrap();
        let one = pairs.iter().find(|p| p.lambda.value() == 1).unwrap();
        assert!(one.spans(&ResidueVector::filled(md(13), 16, 1)));
        assert!(pairs.iter().any(|p| p.lambda.value() == 12));
    }

    #[test]
    fn eigen_rejects_invalid_and_large_composite() {
        let bad = NhtSpec::new(md(30), &[3, 15, 22, 11, 20, 10, 5]).unwrap();
        assert_eq!(find_scalar_shape_pairs(&bad), Err(ShapeError::InvalidSpec));
        // n = 4 over Z_15 is valid but 15^8 vectors is far over budget
        let sols = crate::solver::exhaustive_search(&crate::solver::SearchConfig::exhaustive(4, md(15))).unwrap();
        let s = sols.solutions.first().expect("n=4 mod 15 has solutions");
        assert!(matches!(
            find_scalar_shape_pairs(s),
            Err(ShapeError::CompositeModulusUnsupported { modulus: 15, .. })
        ));
    }

    #[test]
    fn composite_brute_force() {
        let s = NhtSpec::new(md(15), &[5, 6]).unwrap();
        assert!(s.is_valid());
        let pairs = find_scalar_shape_pairs(&s).unwrap();
        let sum = s.coefficient_sum();
        let p = pairs.iter().find(|p| p.lambda.value() == sum).unwrap();
        assert!(p.spans(&ResidueVector::filled(md(15), 4, 1)));
        for p in &pairs {
            for v in &p.basis {
                assert!(!v.is_zero());
                assert_eq!(s.forward(v).unwrap(), v.scaled(p.lambda.value()));
            }
        }
    }

    #[test]
    fn transform_pair_examples() {
        let s = spec14();
        let q = md(29);
        let f = ResidueVector::new(q, &[1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let p = transform_pair(&s, &f).unwrap();
        assert_eq!(
            p.output.entries(),
            &[11, 16, 23, 4, 18, 9, 6, 17, 12, 5, 24, 10, 19, 22]
        );
        assert_eq!(p.input, f);
        let ones = ResidueVector::filled(q, 14, 1);
        assert_eq!(transform_pair(&s, &ones).unwrap().output, ResidueVector::filled(q, 14, 28));
        let z = ResidueVector::zeros(q, 14);
        assert_eq!(transform_pair(&s, &z).unwrap().output, z);
        assert!(transform_pair(&s, &ResidueVector::zeros(q, 3)).is_err());
    }
}
