use std::fmt;

use crate::modular::Modulus;

/// Dense square matrix of canonical residues, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueMatrix {
    modulus: Modulus,
    dim: usize,
    data: Vec<u64>,
}

impl ResidueMatrix {
    pub fn zeros(dim: usize, modulus: Modulus) -> Self {
        ResidueMatrix {
            modulus,
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize, modulus: Modulus) -> Self {
        let mut out = Self::zeros(dim, modulus);
        for i in 0..dim {
            out.set(i, i, 1);
        }
        out
    }

    /// Builds from rows of arbitrary signed integers, reducing each entry.
    /// Panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>], modulus: Modulus) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend(row.iter().map(|&v| modulus.reduce(v)));
        }
        ResidueMatrix { modulus, dim, data }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.modulus.get());
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: u64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let v = self.modulus.add(self.get(i, i), self.modulus.neg(lambda % self.modulus.get()));
            out.set(i, i, v);
        }
        out
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &ResidueMatrix) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.modulus, other.modulus);
        let m = self.modulus.get();
        let mut out = Self::zeros(self.dim, self.modulus);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(other.row(j))
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % m);
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.dim);
        let m = self.modulus.get();
        self.rows()
            .map(|row| row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a * b) % m))
            .collect()
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
