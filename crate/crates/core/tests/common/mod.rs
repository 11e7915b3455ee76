//! Independent oracles: plain `i128` arithmetic on explicitly built matrices,
//! sharing nothing with the library's transform or search code.

#![allow(dead_code)]

/// Circulant with first row `(0, c0, 0, c1, ...)`, row `i` rotated right by `i`.
pub fn circulant(coeffs: &[i64]) -> Vec<Vec<i128>> {
    let size = 2 * coeffs.len();
    let mut first = vec![0i128; size];
    for (k, &c) in coeffs.iter().enumerate() {
        first[2 * k + 1] = c as i128;
    }
    (0..size)
        .map(|i| (0..size).map(|j| first[(j + size - i) % size]).collect())
        .collect()
}

pub fn gram_is_identity(coeffs: &[i64], m: i64) -> bool {
    let n = circulant(coeffs);
    let m = m as i128;
    let size = n.len();
    for i in 0..size {
        for j in 0..size {
            let dot: i128 = (0..size).map(|k| n[i][k] * n[j][k]).sum();
            if dot.rem_euclid(m) != i128::from(i == j) {
                return false;
            }
        }
    }
    true
}

pub fn matvec(coeffs: &[i64], m: i64, f: &[i64]) -> Vec<u64> {
    circulant(coeffs)
        .iter()
        .map(|row| {
            let s: i128 = row.iter().zip(f).map(|(&a, &b)| a * b as i128).sum();
            s.rem_euclid(m as i128) as u64
        })
        .collect()
}

/// Every vector in `[1, m)^n` whose matrix passes [`gram_is_identity`], lexicographic.
pub fn brute_force_solutions(n: usize, m: i64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut c = vec![1i64; n];
    loop {
        if gram_is_identity(&c, m) {
            out.push(c.iter().map(|&v| v as u64).collect());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            c[i] += 1;
            if c[i] < m {
                break;
            }
            c[i] = 1;
        }
    }
}

pub fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}
