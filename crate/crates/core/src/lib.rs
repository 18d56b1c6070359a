//! Exact computations with polynomial identities and central polynomials.
//!
//! The crate computes multilinear identities, central polynomials, codimensions
//! and cocharacters of the infinite-dimensional Grassmann algebra `G` and of the
//! full matrix algebras `M_k` over the rationals. Everything is exact: rationals
//! are `BigRational`, ranks come from fraction-free integer elimination.
//!
//! Module map:
//!
//! * [`combinatorics`]: partitions, tableaux, hook lengths, characters of `S_n`.
//! * [`symgroup`]: permutations and the group algebra `Q S_n`.
//! * [`linalg`]: exact sparse row-echelon forms.
//! * [`freealg`]: the free associative algebra and multilinear polynomials.
//! * [`grassmann`]: the Grassmann algebra and its identity/centrality tests.
//! * [`matalg`]: matrix algebras, Capelli-type central polynomials and the lower-bound construction.
//! * [`cochar`]: codimensions, cocharacters and the verification drivers.

pub mod cochar;
pub mod combinatorics;
pub mod error;
pub mod freealg;
pub mod grassmann;
pub mod linalg;
pub mod matalg;
pub mod symgroup;

pub use error::{Error, Result};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
