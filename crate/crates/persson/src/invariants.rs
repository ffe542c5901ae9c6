//! Numerical invariants of abelian covers of P² branched along lines.
//!
//! Cohomology of the cover splits into character eigenspaces
//! H^i(X, 𝒪) = ⊕_χ H^i(P², L_χ^{-1}), so every invariant reduces to Bott's
//! formula on the plane plus the solved bundle degrees. All arithmetic is
//! exact; integrality of K² is asserted, not rounded.

use num::{BigInt, Signed, Zero};
use thiserror::Error;

use crate::cover::BuildingData;
use crate::gf2::Character;
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("K² = {0} is not an integer for this weight")]
    NonIntegralCanonicalSquare(Rat),
    #[error("double cover of the plane needs even degree, got {0}")]
    OddBranchDegree(i64),
    #[error("branch curve has a point of multiplicity ≥ 3")]
    NonGenericBranch,
}

/// h⁰(P², 𝒪(k)) = (k+1)(k+2)/2 for k ≥ 0, else 0.
pub fn h0_plane(k: i64) -> i64 {
    if k >= 0 {
        (k + 1) * (k + 2) / 2
    } else {
        0
    }
}

/// h¹(P², 𝒪(k)) = 0 for every k.
pub fn h1_plane(_k: i64) -> i64 {
    0
}

/// h²(P², 𝒪(k)) = h⁰(P², 𝒪(−k−3)) by Serre duality.
pub fn h2_plane(k: i64) -> i64 {
    h0_plane(-k - 3)
}

/// The full numerical-invariant package of a smooth abelian cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceInvariants {
    pub chi_oh: i64,
    pub k_squared: i64,
    pub p_g: i64,
    pub q: i64,
    pub chi_top: i64,
    pub h11: i64,
    /// Signature (b⁺, b⁻) of the intersection form on H².
    pub signature: (i64, i64),
}

impl SurfaceInvariants {
    /// Hirzebruch signature τ = b⁺ − b⁻ = (K² − 2χ_top)/3.
    pub fn tau(&self) -> i64 {
        self.signature.0 - self.signature.1
    }
}

/// Invariants of the smooth G-cover determined by the building datum, with
/// branch weight `w` on every branch divisor (½ for a (ℤ/2ℤ)^m-cover; the
/// pullback of D_g acquires multiplicity 1/w).
pub fn surface_invariants(b: &BuildingData, w: &Rat) -> Result<SurfaceInvariants, InvariantError> {
    let m = b.branch.m as u32;
    let order: i64 = 1 << m;

    // χ(𝒪_X) = Σ_χ χ(P², L_χ^{-1})
    let chi_oh: i64 = b
        .degrees()
        .values()
        .map(|&d| h0_plane(-d) - h1_plane(-d) + h2_plane(-d))
        .sum();

    // p_g = h⁰(K_X) = Σ_χ h⁰(P², 𝒪(deg L_χ − 3)); q from h¹ (vanishes).
    let p_g: i64 = b.degrees().values().map(|&d| h0_plane(d - 3)).sum();
    let q: i64 = 0;

    // K_X² = |G| · (K_{P²} + (1−w)·Σ deg D_g)² with w the branch weight.
    let inner = rat(-3) + (rat(1) - w.clone()) * rat(b.branch.total_degree());
    let ksq = rat(order) * inner.clone() * inner;
    if !ksq.is_integer() {
        return Err(InvariantError::NonIntegralCanonicalSquare(ksq));
    }
    let k_squared = big_to_i64(&ksq.to_integer());

    let chi_top = 12 * chi_oh - k_squared;
    let h11 = chi_top - 2 + 4 * q - 2 * p_g;
    let signature = (2 * p_g + 1, h11 - 1);
    Ok(SurfaceInvariants { chi_oh, k_squared, p_g, q, chi_top, h11, signature })
}

/// Invariants with the standard weight w = ½ of a (ℤ/2ℤ)^m-cover.
pub fn standard_invariants(b: &BuildingData) -> Result<SurfaceInvariants, InvariantError> {
    surface_invariants(b, &crate::ratio(1, 2))
}

fn big_to_i64(n: &BigInt) -> i64 {
    use num::ToPrimitive;
    n.to_i64().expect("invariant fits in i64")
}

/// Primitive Hodge numbers (h^{2,0}, h^{1,1}_prim, h^{0,2}) of the double
/// cover of P² branched along `n` lines in general position (no point of
/// multiplicity ≥ 3 among them), minimal resolution.
pub fn double_cover_prim_hodge(n: i64) -> Result<[i64; 3], InvariantError> {
    if n.rem_euclid(2) != 0 {
        return Err(InvariantError::OddBranchDegree(n));
    }
    let d = n / 2;
    let p_g = if d >= 2 { (d - 1) * (d - 2) / 2 } else { 0 };
    // The branch curve is n lines with δ = C(n,2) nodes, so χ(B) = 2n − δ
    // (each node glues two points to one); for the double cover
    // χ(X) = 2·χ(P² ∖ B) + χ(B) = 6 − χ(B).
    let delta = n * (n - 1) / 2;
    let chi_b = 2 * n - delta;
    let chi_top = 6 - chi_b;
    let h11 = chi_top - 2 - 2 * p_g;
    Ok([p_g, h11 - 1, p_g])
}

/// Eigenspace decomposition of the primitive Hodge structure of the cover:
/// for each nonzero character χ, the primitive Hodge triple of the double
/// cover branched along the lines where χ is nontrivial.
pub fn eigen_decomposition(
    b: &BuildingData,
) -> Result<Vec<(Character, [i64; 3])>, InvariantError> {
    let mut out = Vec::new();
    for (chi, &d) in b.degrees() {
        if chi.is_zero() {
            // the invariant part of H² is spanned by the hyperplane class,
            // which is not primitive
            out.push((*chi, [0, 0, 0]));
        } else {
            out.push((*chi, double_cover_prim_hodge(2 * d)?));
        }
    }
    Ok(out)
}

/// Dimension of the moduli of `n` general lines in P² modulo PGL₃:
/// 2(n − 4) for n ≥ 4.
pub fn deformation_dimension(n: i64) -> i64 {
    assert!(n >= 4, "need at least four lines");
    2 * (n - 4)
}

/// Sum of eigenspace triples, as (h^{2,0}, h^{1,1}, h^{0,2}) totals.
pub fn sum_triples<'a>(it: impl IntoIterator<Item = &'a [i64; 3]>) -> [i64; 3] {
    let mut acc = [0i64; 3];
    for t in it {
        for i in 0..3 {
            acc[i] += t[i];
        }
    }
    acc
}

/// True iff the rational is zero — convenience for exactness assertions.
pub fn is_exact_zero(r: &Rat) -> bool {
    r.numer().is_zero() && r.denom().is_positive()
}
