//! Exact multivariable Alexander polynomials of colored closed braids.
//!
//! - [`laurent`]: sparse Laurent polynomials over ℤ in `x, s, t`.
//! - [`braidmatrix`]: colored braid words, the generator matrices `C_i(a)`
//!   and `det(I - x·Γ)`.
//! - [`family`]: the braid family `B(q;k,m)`, its polynomial `Δ_{q;k,m}`
//!   by determinant and by closed form, and the term-count formula.
//! - [`swinv`]: Seiberg-Witten invariants, basic classes and the
//!   non-isotopy report.

pub mod braidmatrix;
pub mod family;
pub mod laurent;
pub mod swinv;

pub use braidmatrix::{BraidError, BraidLetter, ColoredBraidWord, PolyMatrix};
pub use family::{Embedding, EmbeddingKind, FamilyError, FamilyParams};
pub use laurent::{ExponentVector, LaurentError, LaurentPolynomial, Substitution, Var, VarNames};
pub use swinv::{DistinguishReport, HomologyClass, SwError, SwInvariant, Verdict};
