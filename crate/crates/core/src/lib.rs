//! Frobenian functions over explicit Galois extensions of `Q`.
//!
//! A catalog entry fixes a Galois extension `L/Q` by a defining polynomial
//! and its Galois group `G`, given as permutations of the roots. A class
//! function on a subgroup `H = Gal(L/E)` then defines a function on the
//! primes of the intermediate field `E`, and its induction to `G` defines a
//! function on rational primes. This crate provides:
//!
//! * [`group`]: permutation groups, conjugacy classes, cosets, and the
//!   action of a Frobenius element on `G/H`.
//! * [`classfn`]: exact rational class functions, induction, and the
//!   cyclic-subgroup construction behind [`density::cyclic_reduction`].
//! * [`splitting`]: sieving, factor-degree patterns mod p, and Frobenius
//!   classes.
//! * [`catalog`]: the validated catalog of extensions.
//! * [`density`]: exact prime sums normalized by `Li(x)`, the analytic
//!   variant, and CSV output.
//! * [`verify`]: the exact identity suites.
//!
//! Composition of permutations is right-to-left: `(a∘b)(x) = a(b(x))`.

pub mod catalog;
pub mod classfn;
pub mod density;
pub mod error;
pub mod group;
pub mod par;
pub mod perm;
pub mod phi;
pub mod splitting;
pub mod verify;

pub use catalog::{builtin_catalog, find_entry, load_catalog, FieldDescriptor, Resolver, SubfieldDescriptor};
pub use classfn::{sigma_phi, ClassFunction, Rational};
pub use error::Error;
pub use group::{all_subgroups, FiniteGroup, Subgroup};
pub use perm::Permutation;
