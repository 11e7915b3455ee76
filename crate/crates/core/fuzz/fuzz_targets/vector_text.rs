#![no_main]

use libfuzzer_sys::fuzz_target;
use nht_core::{Modulus, ResidueVector};

// The first byte picks the modulus, the rest is the vector text.
fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else {
        return;
    };
    let Ok(modulus) = Modulus::new(u64::from(m).max(2)) else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok((v, _)) = ResidueVector::parse(text, modulus) {
        assert!(v.entries().iter().all(|&x| x < modulus.get()));
        let (back, reduced) = ResidueVector::parse(&v.to_csv_line(), modulus).unwrap();
        assert!(!reduced);
        assert_eq!(back, v);
    }
});
