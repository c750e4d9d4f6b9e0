//! Realizing network codes over `GF(q)` as osculating spaces of rational curves.
//!
//! Given subspaces `U_s` of `F_q^n` (a network code), optionally with marked
//! points `Q_s in P(U_s)`, [`realize::realize`] builds a polynomial map
//! `f: P^1 -> P^{n-1}` and distinct points `t_s` such that `f(t_s) = Q_s`, `f`
//! is unramified at every `t_s`, and the osculating space of projective
//! dimension `dim U_s - 1` at `t_s` is `P(U_s)`. The result is re-checked by
//! [`realize::verify_realization`], which only looks at the output polynomials.
//!
//! Modules, bottom up:
//! - [`field`]: exact `GF(p^k)` arithmetic.
//! - [`subspace`]: matrices, RREF-canonical subspaces, projective points.
//! - [`netcode`]: codes, Hall's condition, marked-point selection, distances.
//! - [`curve`]: Hasse derivatives, local expansions, osculating flags.
//! - [`realize`]: planning, osculating blocks, projection, verification.
//! - [`format`]: JSON documents for the command-line tool.

pub mod curve;
pub mod field;
pub mod format;
pub mod netcode;
pub mod realize;
pub mod subspace;

pub use curve::{P1Point, PolyCurve, PolyFq};
pub use field::{Field, FieldElement, FieldSpec};
pub use netcode::{Member, NetworkCode};
pub use realize::{Mode, PlanOptions, Realization, VerificationReport};
pub use subspace::{MatrixFq, ProjPoint, Subspace};
