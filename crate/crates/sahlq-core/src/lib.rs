//! Finite-model workbench for intuitionistic Sahlqvist theory.
//!
//! The crate is organized around a small pipeline:
//!
//! - [`syntax`]: formula ASTs, a text grammar, polarity analysis, and the
//!   Sahlqvist-class recognizers for formulas and quasiequations.
//! - [`algebra`]: finite algebras presented by meet tables, class detection
//!   (PSL/ISL/HA/...), formula and quasiequation evaluation, the upset algebra
//!   `Up(X)` of a poset, and the `A⁺` completion on downsets of
//!   join-irreducibles.
//! - [`duality`]: filters, the meet-irreducible filter poset `A₋`, partial
//!   p-morphism classification, and the `f₋` / `Up(p)` constructions.
//! - [`correspondence`]: the Gödel–McKinsey–Tarski translation, the standard
//!   translation, and computation of first-order frame correspondents by
//!   second-order quantifier elimination (Ackermann's lemma).
//! - [`fomodel`]: first-order model checking over finite posets plus the
//!   enumeration oracles (posets and algebras up to isomorphism).
//! - [`metalogic`]: witness families, the `φᵏ` construction, metarule
//!   synthesis, characteristic theorem sets, `A(Φ)`, and the IPC profile.
//! - [`substructural`]: finite FL_e algebras, the intuitionistic linear logic
//!   witness families, characteristic formulas, and congruence spectra.

pub mod algebra;
pub mod correspondence;
pub mod duality;
pub mod fomodel;
pub mod metalogic;
pub mod substructural;
pub mod syntax;
