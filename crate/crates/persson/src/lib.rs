//! Exact-arithmetic toolkit for the moduli theory of Persson surfaces —
//! (ℤ/2ℤ)⁴-covers of P² branched along eight general lines — and their stable
//! degenerations.
//!
//! Everything here is computed over exact integers and rationals: no floating
//! point enters any predicate. The crate is organized around the pipeline
//!
//! * [`gf2`] — linear algebra over F₂: labels, characters, subgroups,
//!   stabilizers and pair partitions of the branch labels;
//! * [`cover`] — abelian-cover building data: solving line-bundle degrees from
//!   branch data, the canonical Persson and Z_L data, étale lifts, and the
//!   census of intermediate surfaces;
//! * [`invariants`] — numerical invariants (K², χ(𝒪), p_g, h¹¹, signature) and
//!   character-eigenspace Hodge triples;
//! * [`lattice`] — integral quadratic lattices, their complete invariants, and
//!   fixed/anti-fixed sublattices of involutions;
//! * [`polytope`] — hypersimplices, matroid polytopes, b-cuts, and the
//!   enumeration of matroid tilings classifying stable degenerations;
//! * [`stability`] — log-canonical and GIT stability of weighted line
//!   arrangements, and the wall/chamber structure of the weight domain;
//! * [`degeneration`] — classification of stable degenerations (Type 0/I/II)
//!   with per-component cover profiles and local singularity data.
//!
//! The exact rational simplex solver shared by the polytope predicates lives
//! in [`ratlp`].

pub mod cover;
pub mod degeneration;
pub mod gf2;
pub mod invariants;
pub mod lattice;
pub mod polytope;
pub mod ratlp;
pub mod stability;

/// The guide (`book/`) embedded chapter by chapter, so that every code
/// snippet in it is compiled and run by `cargo test --doc` — the book cannot
/// drift from the library.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/covers.md")]
    pub mod covers {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    pub mod invariants {}
    #[doc = include_str!("../../../book/src/stability.md")]
    pub mod stability {}
    #[doc = include_str!("../../../book/src/tilings.md")]
    pub mod tilings {}
    #[doc = include_str!("../../../book/src/degenerations.md")]
    pub mod degenerations {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    pub mod lattices {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

/// Exact rational scalar used throughout the crate.
pub type Rat = num::BigRational;

/// Convenience constructor for an integer as a [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience constructor for the exact fraction `p/q`.
///
/// Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(p.into(), q.into())
}
