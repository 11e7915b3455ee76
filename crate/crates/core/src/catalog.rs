//! Published 14- and 16-point solutions and transform-pair inputs, embedded
//! so the regression report runs offline.

use crate::modular::Modulus;
use crate::nht::{NhtSpec, ResidueVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub modulus: u64,
    pub coefficients: &'static [i64],
}

impl CatalogEntry {
    pub fn spec(&self) -> NhtSpec {
        let m = Modulus::new(self.modulus).expect("catalog moduli are in range");
        NhtSpec::new(m, self.coefficients).expect("catalog coefficients are nonzero")
    }
}

pub const DISPLAYED_14: CatalogEntry = CatalogEntry {
    label: "14pt-displayed-m29",
    modulus: 29,
    coefficients: &[3, 15, 22, 11, 20, 10, 5],
};

pub const DISPLAYED_16: CatalogEntry = CatalogEntry {
    label: "16pt-displayed-m13",
    modulus: 13,
    coefficients: &[7, 11, 12, 6, 3, 8, 4, 2],
};

/// The five-row 14-point solution table.
pub const TABLE_14: [CatalogEntry; 5] = [
    CatalogEntry { label: "14pt-row1-m7", modulus: 7, coefficients: &[6, 2, 1, 4, 2, 1, 4] },
    CatalogEntry { label: "14pt-row2-m139", modulus: 139, coefficients: &[18, 8, 4, 2, 1, 70, 35] },
    CatalogEntry { label: "14pt-row3-m157", modulus: 157, coefficients: &[134, 110, 63, 126, 95, 33, 66] },
    CatalogEntry { label: "14pt-row4-m163", modulus: 163, coefficients: &[116, 68, 136, 109, 55, 110, 57] },
    CatalogEntry { label: "14pt-row5-m181", modulus: 181, coefficients: &[86, 171, 161, 141, 101, 21, 42] },
];

/// The five-row 16-point solution table, as printed.
pub const TABLE_16: [CatalogEntry; 5] = [
    CatalogEntry { label: "16pt-row1-m19", modulus: 19, coefficients: &[11, 14, 7, 13, 16, 4, 8, 2] },
    CatalogEntry { label: "16pt-row2-m89", modulus: 89, coefficients: &[34, 67, 45, 1, 2, 4, 8, 16] },
    CatalogEntry { label: "16pt-row3-m97", modulus: 97, coefficients: &[45, 89, 81, 65, 33, 66, 35, 70] },
    CatalogEntry { label: "16pt-row4-m101", modulus: 101, coefficients: &[10, 19, 38, 76, 51, 1, 2, 4] },
    CatalogEntry { label: "16pt-row5-m103", modulus: 103, coefficients: &[32, 63, 23, 46, 92, 81, 59, 15] },
];

pub const LARGE_14: CatalogEntry = CatalogEntry {
    label: "14pt-large-m211",
    modulus: 211,
    coefficients: &[155, 98, 196, 181, 151, 91, 182],
};

pub const LARGE_16: CatalogEntry = CatalogEntry {
    label: "16pt-large-m157",
    modulus: 157,
    coefficients: &[66, 133, 109, 61, 122, 87, 17, 34],
};

/// The printed m=19 row with its sixth and seventh coefficients exchanged.
/// This is the only transposition or single-entry edit that makes it valid.
pub const TABLE_16_ROW1_TRANSPOSED: CatalogEntry = CatalogEntry {
    label: "16pt-row1-m19-transposed",
    modulus: 19,
    coefficients: &[11, 14, 7, 13, 16, 8, 4, 2],
};

/// All twelve published specs plus the two displayed matrices, in report order.
pub fn published() -> Vec<CatalogEntry> {
    let mut out = vec![DISPLAYED_14, DISPLAYED_16];
    out.extend(TABLE_14);
    out.extend(TABLE_16);
    out.push(LARGE_14);
    out.push(LARGE_16);
    out
}

/// Inputs of the 14-point transform-pair table (modulus 29).
pub const PAIR_INPUTS_14: [[i64; 14]; 4] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 0],
];

/// Inputs of the 16-point transform-pair table (modulus 13).
pub const PAIR_INPUTS_16: [[i64; 16]; 5] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0],
];

/// `(spec, input)` for every transform-pair input, 14-point first.
pub fn pair_inputs() -> Vec<(NhtSpec, ResidueVector)> {
    let s14 = DISPLAYED_14.spec();
    let s16 = DISPLAYED_16.spec();
    let mut out: Vec<(NhtSpec, ResidueVector)> = PAIR_INPUTS_14
        .iter()
        .map(|f| (s14.clone(), ResidueVector::new(s14.modulus(), f)))
        .collect();
    out.extend(
        PAIR_INPUTS_16
            .iter()
            .map(|f| (s16.clone(), ResidueVector::new(s16.modulus(), f))),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let all = published();
        assert_eq!(all.len(), 14);
        for e in &all {
            let s = e.spec();
            assert!(s.size() == 14 || s.size() == 16, "{}", e.label);
        }
        assert_eq!(pair_inputs().len(), 9);
    }

    #[test]
    fn transposed_row_is_valid() {
        assert!(!TABLE_16[0].spec().is_valid());
        assert!(TABLE_16_ROW1_TRANSPOSED.spec().is_valid());
    }
}
