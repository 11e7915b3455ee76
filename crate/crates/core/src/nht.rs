//! Number theoretic Hilbert transforms of even size `2n`.
//!
//! A transform is keyed by a modulus `m` and `n` coefficients `c_0..c_{n-1}`.
//! The matrix `N` is circulant with first row `(0, c_0, 0, c_1, ..., 0, c_{n-1})`
//! and each later row is the previous one rotated right by one place. `N` is
//! orthogonal mod `m` (`N N^T = I`) exactly when the circular autocorrelation
//! of the coefficients is `1` at lag zero and `0` at every lag `1..=n/2`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ResidueMatrix;
use crate::modular::{ModularError, Modulus, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NhtError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error("a transform needs at least one coefficient")]
    NoCoefficients,
    #[error("coefficient {index} is zero mod {modulus} (pass allow-zero to permit)")]
    ZeroCoefficient { index: usize, modulus: u64 },
    #[error("size {size} must be twice the number of coefficients ({coefficients})")]
    SizeMismatch { size: u64, coefficients: usize },
    #[error("vector length {got} does not match transform size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector modulus {got} does not match transform modulus {expected}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error("malformed spec document: {0}")]
    Document(String),
    #[error("malformed vector: {0}")]
    Vector(String),
}

/// The full key of a transform: modulus and coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NhtSpec {
    modulus: Modulus,
    coeffs: Vec<u64>,
    allow_zero: bool,
}

impl NhtSpec {
    /// Strict constructor: every coefficient must be nonzero mod `m`.
    pub fn new(modulus: Modulus, coeffs: &[i64]) -> Result<Self, NhtError> {
        Self::build(modulus, coeffs, false)
    }

    /// Like [`NhtSpec::new`] but zero coefficients are accepted.
    pub fn new_allow_zero(modulus: Modulus, coeffs: &[i64]) -> Result<Self, NhtError> {
        Self::build(modulus, coeffs, true)
    }

    pub fn build(modulus: Modulus, coeffs: &[i64], allow_zero: bool) -> Result<Self, NhtError> {
        let coeffs: Vec<u64> = coeffs.iter().map(|&c| modulus.reduce(c)).collect();
        Self::from_residues(modulus, coeffs, allow_zero)
    }

    pub(crate) fn from_residues(
        modulus: Modulus,
        coeffs: Vec<u64>,
        allow_zero: bool,
    ) -> Result<Self, NhtError> {
        if coeffs.is_empty() {
            return Err(NhtError::NoCoefficients);
        }
        debug_assert!(coeffs.iter().all(|&c| c < modulus.get()));
        if !allow_zero {
            if let Some(index) = coeffs.iter().position(|&c| c == 0) {
                return Err(NhtError::ZeroCoefficient {
                    index,
                    modulus: modulus.get(),
                });
            }
        }
        Ok(NhtSpec {
            modulus,
            coeffs,
            allow_zero,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Number of coefficients, `n`.
    pub fn half_size(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of points, `2n`.
    pub fn size(&self) -> usize {
        2 * self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn allows_zero(&self) -> bool {
        self.allow_zero
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0, |acc, &c| self.modulus.add(acc, c))
    }

    /// `(0, c_0, 0, c_1, ..., 0, c_{n-1})`.
    pub fn first_row(&self) -> ResidueVector {
        let entries = self.coeffs.iter().flat_map(|&c| [0, c]).collect();
        ResidueVector {
            modulus: self.modulus,
            entries,
        }
    }

    pub fn matrix(&self) -> NhtMatrix {
        let size = self.size();
        let row0 = self.first_row().entries;
        let mut inner = ResidueMatrix::zeros(size, self.modulus);
        for i in 0..size {
            for j in 0..size {
                inner.set(i, j, row0[(j + size - i) % size]);
            }
        }
        NhtMatrix { inner }
    }

    fn check_vector(&self, v: &ResidueVector) -> Result<(), NhtError> {
        if v.modulus != self.modulus {
            return Err(NhtError::ModulusMismatch {
                expected: self.modulus.get(),
                got: v.modulus.get(),
            });
        }
        if v.len() != self.size() {
            return Err(NhtError::LengthMismatch {
                expected: self.size(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `G = N F mod m`, computed as two length-`n` circular correlations:
    /// even outputs read the odd inputs and odd outputs read the even inputs.
    pub fn forward(&self, f: &ResidueVector) -> Result<ResidueVector, NhtError> {
        self.check_vector(f)?;
        let mut out = vec![0; self.size()];
        self.forward_into(&f.entries, &mut out);
        Ok(ResidueVector {
            modulus: self.modulus,
            entries: out,
        })
    }

    /// Direct `O(N^2)` matrix-vector product; reference for [`NhtSpec::forward`].
    pub fn forward_reference(&self, f: &ResidueVector) -> Result<ResidueVector, NhtError> {
        self.check_vector(f)?;
        let entries = self.matrix().inner.mul_vec(&f.entries);
        Ok(ResidueVector {
            modulus: self.modulus,
            entries,
        })
    }

    /// `F = N^T G mod m`.
    pub fn inverse(&self, g: &ResidueVector) -> Result<ResidueVector, NhtError> {
        self.check_vector(g)?;
        let mut out = vec![0; self.size()];
        self.inverse_into(&g.entries, &mut out);
        Ok(ResidueVector {
            modulus: self.modulus,
            entries: out,
        })
    }

    // G[2a]   = sum_k c_k F[2((a+k) mod n) + 1]
    // G[2a+1] = sum_k c_k F[2((a+k+1) mod n)]
    pub(crate) fn forward_into(&self, input: &[u64], out: &mut [u64]) {
        let n = self.half_size();
        let m = self.modulus.get();
        debug_assert_eq!(input.len(), 2 * n);
        for a in 0..n {
            let (mut even, mut odd) = (0u64, 0u64);
            for (k, &c) in self.coeffs.iter().enumerate() {
                even = (even + c * input[2 * ((a + k) % n) + 1]) % m;
                odd = (odd + c * input[2 * ((a + k + 1) % n)]) % m;
            }
            out[2 * a] = even;
            out[2 * a + 1] = odd;
        }
    }

    // F[j] = sum_k c_k G[(j - 2k - 1) mod 2n]
    pub(crate) fn inverse_into(&self, input: &[u64], out: &mut [u64]) {
        let size = self.size();
        let m = self.modulus.get();
        debug_assert_eq!(input.len(), size);
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (k, &c) in self.coeffs.iter().enumerate() {
                acc = (acc + c * input[(j + 2 * size - 2 * k - 1) % size]) % m;
            }
            *slot = acc;
        }
    }

    /// `N N^T mod m`.
    pub fn gram(&self) -> ResidueMatrix {
        let n = self.matrix();
        n.inner.mul_transpose(&n.inner)
    }

    /// Unreduced lag sums `sum_i c_i c_{(i+k) mod n}` for `k = 0..=n/2`.
    pub fn lag_sums(&self) -> Vec<u128> {
        lag_sums(&self.coeffs)
    }

    pub fn conditions(&self) -> ConditionReport {
        let m = self.modulus.get() as u128;
        ConditionReport {
            modulus: self.modulus,
            n: self.half_size(),
            residues: self.lag_sums().iter().map(|&s| (s % m) as u64).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.conditions().is_satisfied()
    }

    /// Parses a `{"size", "modulus", "coefficients"}` JSON document.
    pub fn from_json(text: &str, allow_zero: bool) -> Result<Self, NhtError> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| NhtError::Document(e.to_string()))?;
        doc.into_spec(allow_zero)
    }

    pub fn to_document(&self) -> SpecDocument {
        SpecDocument {
            size: self.size() as u64,
            modulus: self.modulus.get() as i64,
            coefficients: self.coeffs.iter().map(|&c| c as i64).collect(),
        }
    }

    /// Compact single-line JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("spec documents always serialize")
    }
}

impl fmt::Display for NhtSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "{}-point mod {} [{}]", self.size(), self.modulus, cs.join(","))
    }
}

pub(crate) fn lag_sums(coeffs: &[u64]) -> Vec<u128> {
    let n = coeffs.len();
    (0..=n / 2)
        .map(|k| {
            (0..n)
                .map(|i| coeffs[i] as u128 * coeffs[(i + k) % n] as u128)
                .sum()
        })
        .collect()
}

/// On-disk form of a spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub size: u64,
    pub modulus: i64,
    pub coefficients: Vec<i64>,
}

impl SpecDocument {
    pub fn into_spec(self, allow_zero: bool) -> Result<NhtSpec, NhtError> {
        if self.modulus < 0 {
            return Err(ModularError::ModulusOutOfRange(self.modulus).into());
        }
        let modulus = Modulus::new(self.modulus as u64)?;
        if self.coefficients.is_empty() {
            return Err(NhtError::NoCoefficients);
        }
        if self.size != 2 * self.coefficients.len() as u64 {
            return Err(NhtError::SizeMismatch {
                size: self.size,
                coefficients: self.coefficients.len(),
            });
        }
        NhtSpec::build(modulus, &self.coefficients, allow_zero)
    }
}

/// A dense circulant realization of a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NhtMatrix {
    inner: ResidueMatrix,
}

impl NhtMatrix {
    pub fn size(&self) -> usize {
        self.inner.dim()
    }

    pub fn modulus(&self) -> Modulus {
        self.inner.modulus()
    }

    pub fn row(&self, i: usize) -> &[u64] {
        self.inner.row(i)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &ResidueMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ResidueMatrix {
        self.inner
    }
}

/// Residues `r_0..r_{n/2}` of the orthogonality congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub modulus: Modulus,
    pub n: usize,
    pub residues: Vec<u64>,
}

impl ConditionReport {
    pub fn is_satisfied(&self) -> bool {
        self.residues[0] == 1 && self.residues[1..].iter().all(|&r| r == 0)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "r = [{}]", rs.join(","))
    }
}

/// A data or transform block of canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueVector {
    modulus: Modulus,
    entries: Vec<u64>,
}

impl ResidueVector {
    pub fn new(modulus: Modulus, values: &[i64]) -> Self {
        ResidueVector {
            modulus,
            entries: values.iter().map(|&v| modulus.reduce(v)).collect(),
        }
    }

    pub(crate) fn from_canonical(modulus: Modulus, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus.get()));
        ResidueVector { modulus, entries }
    }

    pub fn zeros(modulus: Modulus, len: usize) -> Self {
        ResidueVector {
            modulus,
            entries: vec![0; len],
        }
    }

    pub fn filled(modulus: Modulus, len: usize, value: i64) -> Self {
        Self::new(modulus, &vec![value; len])
    }

    pub fn unit(modulus: Modulus, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(modulus, len);
        v.entries[index] = 1 % modulus.get();
        v
    }

    /// Parses comma- or whitespace-separated integers. The flag is true when
    /// any value was outside `[0, m)` and had to be reduced.
    pub fn parse(text: &str, modulus: Modulus) -> Result<(Self, bool), NhtError> {
        let mut values = Vec::new();
        for tok in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v: i64 = tok
                .parse()
                .map_err(|_| NhtError::Vector(format!("not an integer: {tok:?}")))?;
            values.push(v);
        }
        let reduced = values
            .iter()
            .any(|&v| v < 0 || v as u64 >= modulus.get());
        Ok((Self::new(modulus, &values), reduced))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Residue {
        self.modulus.residue(self.entries[i] as i64)
    }

    pub fn scaled(&self, s: u64) -> Self {
        let s = s % self.modulus.get();
        ResidueVector {
            modulus: self.modulus,
            entries: self.entries.iter().map(|&e| self.modulus.mul(e, s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Comma-separated residues.
    pub fn to_csv_line(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(u64::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const C14: [i64; 7] = [3, 15, 22, 11, 20, 10, 5];
    const C16: [i64; 8] = [7, 11, 12, 6, 3, 8, 4, 2];

    fn md(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn spec14() -> NhtSpec {
        NhtSpec::new(md(29), &C14).unwrap()
    }

    fn spec16() -> NhtSpec {
        NhtSpec::new(md(13), &C16).unwrap()
    }

    #[test]
    fn first_rows() {
        assert_eq!(
            spec14().first_row().entries(),
            &[0, 3, 0, 15, 0, 22, 0, 11, 0, 20, 0, 10, 0, 5]
        );
        assert_eq!(
            spec16().first_row().entries(),
            &[0, 7, 0, 11, 0, 12, 0, 6, 0, 3, 0, 8, 0, 4, 0, 2]
        );
        let tiny = NhtSpec::new(md(5), &[1]).unwrap();
        assert_eq!(tiny.first_row().entries(), &[0, 1]);
    }

    #[test]
    fn matrix_rows_rotate_right() {
        let n14 = spec14().matrix();
        assert_eq!(n14.row(0), spec14().first_row().entries());
        assert_eq!(n14.row(1), &[5, 0, 3, 0, 15, 0, 22, 0, 11, 0, 20, 0, 10, 0]);
        let n16 = spec16().matrix();
        assert_eq!(
            n16.row(15),
            &[7, 0, 11, 0, 12, 0, 6, 0, 3, 0, 8, 0, 4, 0, 2, 0]
        );
        for i in 0..16 {
            for j in 0..16 {
                if (i + j) % 2 == 0 {
                    assert_eq!(n16.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(NhtSpec::new(md(7), &[]), Err(NhtError::NoCoefficients));
        assert_eq!(
            NhtSpec::new(md(7), &[1, 7]),
            Err(NhtError::ZeroCoefficient { index: 1, modulus: 7 })
        );
        assert!(NhtSpec::new_allow_zero(md(7), &[1, 0]).is_ok());
    }

    #[test]
    fn forward_examples() {
        let s = spec14();
        let q = md(29);
        let ones = ResidueVector::filled(q, 14, 1);
        assert_eq!(s.forward(&ones).unwrap(), ResidueVector::filled(q, 14, 28));
        let e0 = ResidueVector::unit(q, 14, 0);
        assert_eq!(
            s.forward(&e0).unwrap().entries(),
            &[0, 5, 0, 10, 0, 20, 0, 11, 0, 22, 0, 15, 0, 3]
        );
        let z = ResidueVector::zeros(q, 14);
        assert_eq!(s.forward(&z).unwrap(), z);
    }

    #[test]
    fn inverse_examples() {
        let s = spec14();
        let q = md(29);
        let g = ResidueVector::new(q, &[0, 5, 0, 10, 0, 20, 0, 11, 0, 22, 0, 15, 0, 3]);
        assert_eq!(s.inverse(&g).unwrap(), ResidueVector::unit(q, 14, 0));
        let z = ResidueVector::zeros(q, 14);
        assert_eq!(s.inverse(&z).unwrap(), z);
        let g = ResidueVector::filled(q, 14, 28);
        assert_eq!(s.inverse(&g).unwrap(), ResidueVector::filled(q, 14, 1));
    }

    #[test]
    fn vector_errors() {
        let s = spec14();
        let short = ResidueVector::zeros(md(29), 13);
        assert_eq!(
            s.forward(&short),
            Err(NhtError::LengthMismatch { expected: 14, got: 13 })
        );
        let other = ResidueVector::zeros(md(31), 14);
        assert_eq!(
            s.inverse(&other),
            Err(NhtError::ModulusMismatch { expected: 29, got: 31 })
        );
        assert!(s.forward_reference(&short).is_err());
    }

    #[test]
    fn gram_examples() {
        assert!(spec14().gram().is_identity());
        assert!(spec16().gram().is_identity());
        let off = NhtSpec::new(md(30), &C14).unwrap();
        let g = off.gram();
        assert!(!g.is_identity());
        assert!((0..14).all(|i| g.get(i, i) == 14));
    }

    #[test]
    fn condition_examples() {
        let s = spec14();
        assert_eq!(s.lag_sums(), vec![1364, 1102, 986, 928]);
        assert_eq!(s.conditions().residues, vec![1, 0, 0, 0]);
        let s = spec16();
        assert_eq!(s.lag_sums(), vec![443, 377, 312, 325, 338]);
        assert_eq!(s.conditions().residues, vec![1, 0, 0, 0, 0]);
        let tiny = NhtSpec::new(md(3), &[1]).unwrap();
        assert_eq!(tiny.conditions().residues, vec![1]);
        assert_eq!(s.conditions().to_string(), "r = [1,0,0,0,0]");
    }

    #[test]
    fn validity_examples() {
        assert!(NhtSpec::new(md(7), &[6, 2, 1, 4, 2, 1, 4]).unwrap().is_valid());
        assert!(!NhtSpec::new(md(5), &[1, 1]).unwrap().is_valid());
        assert!(spec16().is_valid());
    }

    #[test]
    fn document_round_trip_and_validation() {
        let text = r#"{"size": 14, "modulus": 29, "coefficients": [3,15,22,11,20,10,5]}"#;
        let s = NhtSpec::from_json(text, false).unwrap();
        assert_eq!(s, spec14());
        assert_eq!(
            s.to_json(),
            r#"{"size":14,"modulus":29,"coefficients":[3,15,22,11,20,10,5]}"#
        );
        let neg = r#"{"size": 2, "modulus": 7, "coefficients": [-1]}"#;
        assert_eq!(NhtSpec::from_json(neg, false).unwrap().coefficients(), &[6]);

        let bad_size = r#"{"size": 12, "modulus": 29, "coefficients": [3,15,22,11,20,10,5]}"#;
        assert!(matches!(
            NhtSpec::from_json(bad_size, false),
            Err(NhtError::SizeMismatch { size: 12, coefficients: 7 })
        ));
        assert!(NhtSpec::from_json(r#"{"size":2,"modulus":1,"coefficients":[1]}"#, false).is_err());
        assert!(NhtSpec::from_json(r#"{"size":2,"modulus":-5,"coefficients":[1]}"#, false).is_err());
        assert!(NhtSpec::from_json(r#"{"size":0,"modulus":5,"coefficients":[]}"#, false).is_err());
        assert!(NhtSpec::from_json(r#"{"size":2,"modulus":5,"coefficients":[5]}"#, false).is_err());
        assert!(NhtSpec::from_json(r#"{"size":2,"modulus":5,"coefficients":[5]}"#, true).is_ok());
        assert!(NhtSpec::from_json(r#"{"size":2,"modulus":5,"coefficients":[1],"x":1}"#, false).is_err());
        assert!(NhtSpec::from_json("not json", false).is_err());
    }

    #[test]
    fn vector_parsing() {
        let q = md(29);
        let (v, reduced) = ResidueVector::parse("1, 2,3\n4 5", q).unwrap();
        assert_eq!(v.entries(), &[1, 2, 3, 4, 5]);
        assert!(!reduced);
        let (v, reduced) = ResidueVector::parse("-1,30", q).unwrap();
        assert_eq!(v.entries(), &[28, 1]);
        assert!(reduced);
        assert!(ResidueVector::parse("1,x", q).is_err());
        assert!(ResidueVector::parse("", q).unwrap().0.is_empty());
    }

    fn arb_spec() -> impl Strategy<Value = NhtSpec> {
        (2u64..60, 1usize..9).prop_flat_map(|(m, n)| {
            prop::collection::vec(0i64..m as i64, n)
                .prop_map(move |cs| NhtSpec::new_allow_zero(md(m), &cs).unwrap())
        })
    }

    fn rotate(cs: &[u64], by: usize) -> Vec<i64> {
        let n = cs.len();
        (0..n).map(|i| cs[(i + by) % n] as i64).collect()
    }

    proptest! {
        #[test]
        fn gram_has_parity_zeros_and_matches_conditions(s in arb_spec()) {
            let g = s.gram();
            let size = s.size();
            for i in 0..size {
                for j in 0..size {
                    if (i + j) % 2 == 1 {
                        prop_assert_eq!(g.get(i, j), 0);
                    }
                }
            }
            let r = s.conditions().residues;
            for (k, &rk) in r.iter().enumerate() {
                prop_assert_eq!(g.get(0, 2 * k), rk);
            }
            prop_assert_eq!(s.is_valid(), g.is_identity());
        }

        #[test]
        fn lag_symmetry(s in arb_spec()) {
            let n = s.half_size();
            let m = s.modulus().get();
            let c = s.coefficients();
            for k in 0..n {
                let a: u64 = (0..n).map(|i| c[i] * c[(i + k) % n] % m).sum::<u64>() % m;
                let b: u64 = (0..n).map(|i| c[i] * c[(i + n - k) % n] % m).sum::<u64>() % m;
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn conditions_invariant_under_rotation_and_reversal(s in arb_spec(), by in 0usize..8) {
            let c = s.coefficients();
            let rot = NhtSpec::new_allow_zero(s.modulus(), &rotate(c, by % c.len())).unwrap();
            prop_assert_eq!(rot.conditions(), s.conditions());
            let rev: Vec<i64> = c.iter().rev().map(|&v| v as i64).collect();
            let rev = NhtSpec::new_allow_zero(s.modulus(), &rev).unwrap();
            prop_assert_eq!(rev.conditions(), s.conditions());
        }

        #[test]
        fn scaling_covariance(s in arb_spec(), scale in 0i64..1000) {
            let q = s.modulus();
            let sc = q.reduce(scale);
            let scaled: Vec<i64> = s.coefficients().iter().map(|&c| q.mul(c, sc) as i64).collect();
            let t = NhtSpec::new_allow_zero(q, &scaled).unwrap();
            let s2 = q.mul(sc, sc);
            let expect: Vec<u64> = s.conditions().residues.iter().map(|&r| q.mul(r, s2)).collect();
            prop_assert_eq!(t.conditions().residues, expect);
        }

        #[test]
        fn fast_forward_matches_reference(s in arb_spec(), seed in any::<u64>()) {
            let q = s.modulus();
            let vals: Vec<i64> = (0..s.size() as u64)
                .map(|i| (seed.wrapping_mul(6364136223846793005).wrapping_add(i.wrapping_mul(1442695040888963407)) >> 17) as i64)
                .collect();
            let f = ResidueVector::new(q, &vals);
            prop_assert_eq!(s.forward(&f).unwrap(), s.forward_reference(&f).unwrap());
            let nt_g: Vec<u64> = {
                let n = s.matrix();
                (0..s.size()).map(|j| (0..s.size()).fold(0, |acc, i| (acc + n.get(i, j) * f.entries()[i]) % q.get())).collect()
            };
            let inv = s.inverse(&f).unwrap();
            prop_assert_eq!(inv.entries(), &nt_g[..]);
        }
    }
}
