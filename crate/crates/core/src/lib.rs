//! Number theoretic Hilbert transforms over `Z_m`.
//!
//! An `2n`-point transform is a circulant matrix whose first row alternates
//! zeros with `n` coefficients and whose transpose is its inverse mod `m`:
//!
//! ```
//! use nht_core::{Modulus, NhtSpec, ResidueVector};
//!
//! let m = Modulus::new(29).unwrap();
//! let spec = NhtSpec::new(m, &[3, 15, 22, 11, 20, 10, 5]).unwrap();
//! assert!(spec.is_valid());
//!
//! let f = ResidueVector::new(m, &[1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
//! let g = spec.forward(&f).unwrap();
//! assert_eq!(spec.inverse(&g).unwrap(), f);
//! ```

pub mod catalog;
pub mod matrix;
pub mod modular;
pub mod nht;
pub mod scramble;
pub mod shapes;
pub mod solver;

pub use matrix::ResidueMatrix;
pub use modular::{mod_add, mod_inv, mod_mul, mod_pow, sqrt_of_unity_set, ModularError, Modulus, Residue};
pub use nht::{ConditionReport, NhtError, NhtMatrix, NhtSpec, ResidueVector, SpecDocument};
pub use scramble::{descramble, scramble, Frame, ScrambleError, ScrambleKey};
pub use shapes::{find_scalar_shape_pairs, nullspace_mod, transform_pair, EigenPair, ShapeError, TransformPair};
pub use solver::{
    canonicalize, exhaustive_search, orbit, random_search, verify_solution, SearchConfig, SearchError,
    SearchMode, SolutionStream, VerificationReport,
};
