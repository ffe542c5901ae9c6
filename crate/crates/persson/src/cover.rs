//! Abelian-cover building data over G = (ℤ/2ℤ)^m on the base P².
//!
//! A cover is recorded by its branch data — lines labeled by nonzero group
//! elements, with integer degrees — and the line bundles L_χ solved from the
//! fundamental relation 2·deg L_χ = Σ_{χ(g)=−1} deg D_g (P² has torsion-free
//! Picard group, so degrees determine the bundles). On top of the solver sit
//! the canonical Persson datum (degrees {4, 2¹⁴, 0}), the étale (ℤ/2ℤ)⁵ lift
//! Z_L with degrees {4, 3⁴, 2²², 1⁴, 0}, and the census of intermediate
//! surfaces X/H for subgroups of the character group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{
    pairing, Character, Gf2Error, GroupElement, PairPartition, Subgroup,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("character {0} has half-integral line-bundle degree")]
    HalfIntegralDegree(Character),
    #[error("branch line with zero label")]
    ZeroLabel,
    #[error("duplicate line id {0}")]
    DuplicateLineId(u32),
    #[error("expected {expected} lines, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("label {0} used more than once")]
    LabelReuse(GroupElement),
    #[error(
        "swap mask {0:#06b} does not produce a valid étale lift (wrong parity class)"
    )]
    InvalidLift(u8),
    #[error("building datum is not a Persson datum: {0}")]
    NotPersson(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// One branch divisor: a line (by id) with its label and degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BranchLine {
    #[serde(with = "elt_string")]
    pub label: GroupElement,
    #[serde(rename = "line")]
    pub line_id: u32,
    #[serde(rename = "deg", default = "one")]
    pub degree: i64,
}

fn one() -> i64 {
    1
}

mod elt_string {
    use super::GroupElement;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &GroupElement, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(g)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GroupElement, D::Error> {
        let s = String::deserialize(d)?;
        GroupElement::parse(&s).map_err(D::Error::custom)
    }
}

/// The branch divisors of a G-cover: labeled lines with degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchData {
    pub m: usize,
    pub lines: Vec<BranchLine>,
}

impl BranchData {
    pub fn new(m: usize, lines: Vec<BranchLine>) -> Result<Self, CoverError> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &lines {
            if l.label.is_zero() {
                return Err(CoverError::ZeroLabel);
            }
            if l.label.m() != m {
                return Err(CoverError::Gf2(Gf2Error::LengthMismatch(l.label.m(), m)));
            }
            if !seen.insert(l.line_id) {
                return Err(CoverError::DuplicateLineId(l.line_id));
            }
        }
        Ok(Self { m, lines })
    }

    /// Total branch degree Σ deg D_g.
    pub fn total_degree(&self) -> i64 {
        self.lines.iter().map(|l| l.degree).sum()
    }

    /// True iff the labels with nonempty divisor generate the full group — the
    /// connectedness criterion for the cover.
    pub fn is_connected_cover(&self) -> bool {
        let gens: Vec<GroupElement> = self.lines.iter().map(|l| l.label).collect();
        match Subgroup::span(self.m, &gens) {
            Ok(s) => s.rank() == self.m,
            Err(_) => false,
        }
    }
}

/// Branch data together with the solved per-character line-bundle degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildingData {
    pub branch: BranchData,
    bundle_degree: BTreeMap<Character, i64>,
}

impl BuildingData {
    pub fn degree(&self, chi: &Character) -> i64 {
        self.bundle_degree[chi]
    }

    pub fn degrees(&self) -> &BTreeMap<Character, i64> {
        &self.bundle_degree
    }

    /// Sorted multiset of all 2^m bundle degrees.
    pub fn degree_multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.bundle_degree.values().copied().collect();
        v.sort();
        v
    }

    /// The distinguished character evaluating to −1 on every branch label, if
    /// there is exactly one (for Persson-type data this is χ₀).
    pub fn all_minus_character(&self) -> Option<Character> {
        let mut found = None;
        for chi in GroupElement::all(self.branch.m) {
            if chi.is_zero() {
                continue;
            }
            let all = self
                .branch
                .lines
                .iter()
                .all(|l| pairing(&chi, &l.label).expect("dimensions agree") == -1);
            if all {
                if found.is_some() {
                    return None;
                }
                found = Some(chi);
            }
        }
        found
    }
}

/// Solve the line-bundle degrees from branch data: deg L_χ = ½ Σ_{χ(g)=−1}
/// deg D_g for every character χ.
///
/// Fails with [`CoverError::HalfIntegralDegree`] when some sum is odd — the
/// parity obstruction to the branch data defining an abelian cover of P².
pub fn solve_line_bundles(branch: &BranchData) -> Result<BuildingData, CoverError> {
    let mut bundle_degree = BTreeMap::new();
    for chi in GroupElement::all(branch.m) {
        let sum: i64 = branch
            .lines
            .iter()
            .filter(|l| pairing(&chi, &l.label).expect("dimensions agree") == -1)
            .map(|l| l.degree)
            .sum();
        if sum.rem_euclid(2) != 0 {
            return Err(CoverError::HalfIntegralDegree(chi));
        }
        bundle_degree.insert(chi, sum / 2);
    }
    Ok(BuildingData { branch: branch.clone(), bundle_degree })
}

/// The canonical Persson building datum for the given eight lines: labels must
/// be a bijection onto {1}×F₂³. Solved degrees are {L₀ = 0, L_{χ₀} = 4,
/// fourteen bundles of degree 2}.
pub fn persson_building_data(lines: &[(u32, GroupElement)]) -> Result<BuildingData, CoverError> {
    if lines.len() != 8 {
        return Err(CoverError::WrongCardinality { expected: 8, got: lines.len() });
    }
    let mut seen = std::collections::BTreeSet::new();
    for (_, g) in lines {
        if !seen.insert(*g) {
            return Err(CoverError::LabelReuse(*g));
        }
    }
    let labels: Vec<GroupElement> = lines.iter().map(|(_, g)| *g).collect();
    let want: std::collections::BTreeSet<GroupElement> =
        crate::gf2::persson_labels().into_iter().collect();
    if labels.iter().copied().collect::<std::collections::BTreeSet<_>>() != want {
        return Err(CoverError::NotPersson(
            "labels are not a bijection onto {1}×F₂³".into(),
        ));
    }
    let branch = BranchData::new(
        4,
        lines
            .iter()
            .map(|&(line_id, label)| BranchLine { label, line_id, degree: 1 })
            .collect(),
    )?;
    solve_line_bundles(&branch)
}

/// The canonical Persson datum with line ids 1..8 in label order.
pub fn persson_canonical() -> BuildingData {
    let lines: Vec<(u32, GroupElement)> = crate::gf2::persson_labels()
        .into_iter()
        .enumerate()
        .map(|(i, g)| (i as u32 + 1, g))
        .collect();
    persson_building_data(&lines).expect("canonical datum is valid")
}

/// The étale double-cover datum Z_L over (ℤ/2ℤ)⁵: same eight lines, the 5th
/// coordinate assigned by `swap_mask` — bit k set means the *second* member of
/// the k-th pair of `p` gets 5th coordinate 1, otherwise the first member.
///
/// Exactly one parity class of masks yields a valid lift (eight of the
/// sixteen); the others fail with [`CoverError::InvalidLift`] because the
/// solved degrees contain no bundle of degree 3.
pub fn etale_lift(
    b: &BuildingData,
    p: &PairPartition,
    swap_mask: u8,
) -> Result<BuildingData, CoverError> {
    if b.branch.m != 4 || b.branch.lines.len() != 8 {
        return Err(CoverError::NotPersson("étale lift needs a Persson datum".into()));
    }
    let line_of = |g: &GroupElement| {
        b.branch
            .lines
            .iter()
            .find(|l| l.label == *g)
            .ok_or_else(|| CoverError::NotPersson(format!("label {g} missing")))
    };
    let mut lifted = Vec::with_capacity(8);
    for (k, (first, second)) in p.pairs().iter().enumerate() {
        for g in [first, second] {
            let line = line_of(g)?;
            let fifth = u8::from((g == second) == ((swap_mask >> k) & 1 == 1));
            let bits = g.bits() | (fifth << 4);
            lifted.push(BranchLine {
                label: GroupElement::from_bits(5, bits)?,
                line_id: line.line_id,
                degree: line.degree,
            });
        }
    }
    let branch = BranchData::new(5, lifted)?;
    let datum = solve_line_bundles(&branch)?;
    let threes = datum.bundle_degree.values().filter(|&&d| d == 3).count();
    if threes != 4 {
        return Err(CoverError::InvalidLift(swap_mask));
    }
    debug_assert_eq!(recovered_partition(&datum).as_ref(), Some(p));
    Ok(datum)
}

/// The pair partition encoded in a Z_L datum by its four degree-3 characters:
/// labels g̃_j, g̃_j′ of pair j are the two on which every degree-3 character
/// except χ̃_j evaluates to +1.
pub fn recovered_partition(b: &BuildingData) -> Option<PairPartition> {
    if b.branch.m != 5 || b.branch.lines.len() != 8 {
        return None;
    }
    let chis: Vec<Character> = b
        .bundle_degree
        .iter()
        .filter(|&(_, &d)| d == 3)
        .map(|(c, _)| *c)
        .collect();
    if chis.len() != 4 {
        return None;
    }
    let mut groups: BTreeMap<Vec<i8>, Vec<GroupElement>> = BTreeMap::new();
    for l in &b.branch.lines {
        let sig: Vec<i8> = chis
            .iter()
            .map(|c| pairing(c, &l.label).expect("dimensions agree"))
            .collect();
        // project back to the G-label by dropping the 5th coordinate
        let g4 = GroupElement::from_bits(4, l.label.bits() & 0b1111).expect("m fits");
        groups.entry(sig).or_default().push(g4);
    }
    if groups.len() != 4 || groups.values().any(|v| v.len() != 2) {
        return None;
    }
    let labels = crate::gf2::persson_labels();
    let parts = crate::gf2::partitions_into_parallel_pairs(&labels).ok()?;
    let pairs: std::collections::BTreeSet<(GroupElement, GroupElement)> = groups
        .values()
        .map(|v| {
            let (a, b) = (v[0], v[1]);
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    parts.into_iter().find(|p| {
        p.pairs().iter().all(|pr| pairs.contains(pr))
    })
}

/// All 5th-coordinate assignments (indexed by the bit i ↦ label order of the
/// canonical Persson labels) that produce a valid Z_L datum. The source counts
/// 7·2⁴ = 112, sixteen per recovered partition.
pub fn valid_lift_assignments() -> Vec<(u8, BuildingData)> {
    let labels = crate::gf2::persson_labels();
    let mut out = Vec::new();
    for mask in 0..=255u8 {
        let lines: Vec<BranchLine> = labels
            .iter()
            .enumerate()
            .map(|(i, g)| BranchLine {
                label: GroupElement::from_bits(5, g.bits() | (((mask >> i) & 1) << 4))
                    .expect("m fits"),
                line_id: i as u32 + 1,
                degree: 1,
            })
            .collect();
        let branch = BranchData::new(5, lines).expect("distinct ids");
        if let Ok(datum) = solve_line_bundles(&branch) {
            if datum.bundle_degree.values().filter(|&&d| d == 3).count() == 4 {
                out.push((mask, datum));
            }
        }
    }
    out
}

/// An explicit valid Z_L datum (labels g̃₁,…,g̃₈), fixed as the canonical lift.
pub fn zl_canonical() -> BuildingData {
    let labels = ["10000", "10011", "10100", "10110", "11001", "11010", "11101", "11111"];
    let lines: Vec<BranchLine> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| BranchLine {
            label: GroupElement::parse(s).expect("literal is valid"),
            line_id: i as u32 + 1,
            degree: 1,
        })
        .collect();
    let branch = BranchData::new(5, lines).expect("distinct ids");
    solve_line_bundles(&branch).expect("datum is consistent")
}

/// What an intermediate quotient cover is, as recognized from its induced
/// building data.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// (ℤ/2ℤ)³-cover branched along 7 lines: Campedelli surface (K² = 2, p_g = q = 0).
    Campedelli,
    /// (ℤ/2ℤ)²-cover branched along 6 lines: Enriques surface of base-point-free D₁₆ type.
    EnriquesD16,
    /// Double cover branched along 4 lines: degree-2 del Pezzo (weak, 3 A₁ on the model).
    DelPezzo2,
    /// Double cover branched along all 8 lines: special Horikawa surface (K² = 2, p_g = 3).
    HorikawaSpecial,
    /// Double cover branched along 6 lines: K3 of degree 2 (with A₁ points).
    K3double,
    /// Double cover branched along 2 lines: the weighted plane P(1,1,2).
    WeightedPlane112,
    Persson,
    ZL,
    Other,
}

/// Classification tag plus the note recording how it was recognized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceTag {
    pub kind: SurfaceKind,
    pub note: String,
}

/// The quotient cover X/H for H = annihilator of N: an N̂-cover of P² whose
/// branch lines are those pairing nontrivially with N. Returns the tag and the
/// induced building data over the group with character group N.
///
/// New labels are coordinates with respect to the chosen basis of N:
/// coordinate i of the image of g is ⟨χ_i, g⟩.
pub fn classify_intermediate(
    b: &BuildingData,
    n: &Subgroup,
) -> Result<(SurfaceTag, BuildingData), CoverError> {
    let r = n.rank();
    let basis = n.basis();
    let mut lines = Vec::new();
    for l in &b.branch.lines {
        let mut bits = 0u8;
        for (i, chi) in basis.iter().enumerate() {
            if pairing(chi, &l.label)? == -1 {
                bits |= 1 << i;
            }
        }
        if bits != 0 {
            lines.push(BranchLine {
                label: GroupElement::from_bits(r, bits)?,
                line_id: l.line_id,
                degree: l.degree,
            });
        }
    }
    let branch = BranchData::new(r, lines)?;
    let induced = solve_line_bundles(&branch)?;
    let branch_count = induced.branch.lines.len();
    let chi0 = b.all_minus_character();
    let contains_chi0 = chi0.map(|c| n.contains(&c)).unwrap_or(false);
    let kind = match r {
        1 => {
            let chi = basis[0];
            if Some(chi) == chi0 {
                SurfaceKind::HorikawaSpecial
            } else {
                match b.degree(&chi) {
                    3 => SurfaceKind::K3double,
                    2 => SurfaceKind::DelPezzo2,
                    1 => SurfaceKind::WeightedPlane112,
                    _ => SurfaceKind::Other,
                }
            }
        }
        2 if !contains_chi0 && branch_count == 6 => SurfaceKind::EnriquesD16,
        3 if !contains_chi0 && branch_count == 7 => SurfaceKind::Campedelli,
        _ => SurfaceKind::Other,
    };
    let note = format!(
        "rank {r} subgroup, {branch_count} branch lines{}",
        if contains_chi0 { ", contains χ₀" } else { "" }
    );
    Ok((SurfaceTag { kind, note }, induced))
}

/// Census of all intermediate covers over the proper nontrivial subgroups of
/// the character group, counted by kind.
pub fn intermediate_census(b: &BuildingData) -> Result<BTreeMap<SurfaceKind, usize>, CoverError> {
    let mut counts = BTreeMap::new();
    for r in 1..b.branch.m {
        for n in crate::gf2::enumerate_subgroups(b.branch.m, r, None)? {
            let (tag, _) = classify_intermediate(b, &n)?;
            *counts.entry(tag.kind).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// For a Z_L datum: split the degree-2 characters into (new, inherited) by
/// pullback membership — a character is inherited from the G-cover iff it is
/// trivial on the kernel of the projection G̃ → G, i.e. its 5th bit is 0.
pub fn zl_dp2_split(b: &BuildingData) -> Option<(usize, usize)> {
    if b.branch.m != 5 {
        return None;
    }
    let e5 = GroupElement::from_bits(5, 0b10000).expect("m fits");
    let (mut new, mut inherited) = (0usize, 0usize);
    for (chi, &d) in b.degrees() {
        if d == 2 && !chi.is_zero() {
            if pairing(chi, &e5).expect("dimensions agree") == -1 {
                new += 1;
            } else {
                inherited += 1;
            }
        }
    }
    Some((new, inherited))
}

/// Wire format for building data:
/// `{"m": 4, "lines": [{"label": "1010", "line": 3, "deg": 1}], "bundles": {"0110": 2}}`
/// with bit-strings most-significant-first.
#[derive(Serialize, Deserialize)]
pub struct BuildingDataJson {
    pub m: usize,
    pub lines: Vec<BranchLine>,
    pub bundles: BTreeMap<String, i64>,
}

impl From<&BuildingData> for BuildingDataJson {
    fn from(b: &BuildingData) -> Self {
        Self {
            m: b.branch.m,
            lines: b.branch.lines.clone(),
            bundles: b
                .bundle_degree
                .iter()
                .map(|(c, &d)| (c.to_string(), d))
                .collect(),
        }
    }
}

impl BuildingDataJson {
    pub fn into_building_data(self) -> Result<BuildingData, CoverError> {
        let branch = BranchData::new(self.m, self.lines)?;
        let solved = solve_line_bundles(&branch)?;
        for (k, v) in &self.bundles {
            let chi = GroupElement::parse(k).map_err(CoverError::Gf2)?;
            if solved.degree(&chi) != *v {
                return Err(CoverError::NotPersson(format!(
                    "bundle degree for {k} is {} but file says {v}",
                    solved.degree(&chi)
                )));
            }
        }
        Ok(solved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{partitions_into_parallel_pairs, persson_labels};

    #[test]
    fn persson_degrees() {
        let b = persson_canonical();
        let mut multiset = b.degree_multiset();
        multiset.sort();
        let mut want = vec![0, 4];
        want.extend(std::iter::repeat(2).take(14));
        want.sort();
        assert_eq!(multiset, want);
        let chi0 = GroupElement::parse("1000").unwrap();
        assert_eq!(b.degree(&chi0), 4);
        assert_eq!(b.all_minus_character(), Some(chi0));
    }

    #[test]
    fn parity_obstruction() {
        let branch = BranchData::new(
            1,
            vec![BranchLine { label: GroupElement::parse("1").unwrap(), line_id: 1, degree: 1 }],
        )
        .unwrap();
        assert!(matches!(
            solve_line_bundles(&branch),
            Err(CoverError::HalfIntegralDegree(_))
        ));
    }

    #[test]
    fn zl_degrees_match_the_32_bundle_list() {
        let b = zl_canonical();
        let mut counts = BTreeMap::new();
        for d in b.degree_multiset() {
            *counts.entry(d).or_insert(0usize) += 1;
        }
        assert_eq!(counts, BTreeMap::from([(0, 1), (1, 4), (2, 22), (3, 4), (4, 1)]));
        // the degree-4 character is χ̃₀ = (1,0,0,0,0)
        assert_eq!(b.degree(&GroupElement::parse("10000").unwrap()), 4);
        // the four degree-3 characters
        for s in ["01101", "11001", "11011", "11111"] {
            assert_eq!(b.degree(&GroupElement::parse(s).unwrap()), 3, "χ̃ = {s}");
        }
        // the four degree-1 characters
        for s in ["01001", "01011", "01111", "11101"] {
            assert_eq!(b.degree(&GroupElement::parse(s).unwrap()), 1, "χ̃ = {s}");
        }
    }

    #[test]
    fn connectedness() {
        let b = persson_canonical();
        assert!(b.branch.is_connected_cover());
        // labels of the form (1,*,*,0) span a rank-3 subspace only
        let lines: Vec<BranchLine> = ["1000", "1100", "1010", "1110"]
            .iter()
            .enumerate()
            .map(|(i, s)| BranchLine {
                label: GroupElement::parse(s).unwrap(),
                line_id: i as u32 + 1,
                degree: 2,
            })
            .collect();
        let partial = BranchData::new(4, lines).unwrap();
        assert!(!partial.is_connected_cover());
        assert!(!BranchData::new(2, vec![]).unwrap().is_connected_cover());
    }

    #[test]
    fn etale_lift_masks_and_count() {
        let b = persson_canonical();
        let parts = partitions_into_parallel_pairs(&persson_labels()).unwrap();
        let mut total_valid_masks = 0;
        for p in &parts {
            let valid: Vec<u8> =
                (0..16u8).filter(|&m| etale_lift(&b, p, m).is_ok()).collect();
            assert_eq!(valid.len(), 8, "eight valid masks per partition");
            // one parity class
            let parity = valid[0].count_ones() % 2;
            assert!(valid.iter().all(|m| m.count_ones() % 2 == parity));
            total_valid_masks += valid.len();
            let lift = etale_lift(&b, p, valid[0]).unwrap();
            assert_eq!(recovered_partition(&lift).as_ref(), Some(p));
            // restriction to the first four coordinates reproduces the input
            let restricted: Vec<BranchLine> = lift
                .branch
                .lines
                .iter()
                .map(|l| BranchLine {
                    label: GroupElement::from_bits(4, l.label.bits() & 0b1111).unwrap(),
                    line_id: l.line_id,
                    degree: l.degree,
                })
                .collect();
            let restricted =
                solve_line_bundles(&BranchData::new(4, restricted).unwrap()).unwrap();
            assert_eq!(restricted.degrees(), b.degrees());
            // complementing the mask flips every pair: still valid
            assert!(etale_lift(&b, p, valid[0] ^ 0b1111).is_ok());
        }
        assert_eq!(total_valid_masks, 56);
        // all valid 5th-coordinate assignments: 112, sixteen per partition
        let all = valid_lift_assignments();
        assert_eq!(all.len(), 112);
        let mut per_partition: BTreeMap<_, usize> = BTreeMap::new();
        for (_, datum) in &all {
            let p = recovered_partition(datum).expect("valid lift recovers a partition");
            *per_partition.entry(p).or_insert(0) += 1;
        }
        assert_eq!(per_partition.len(), 7);
        assert!(per_partition.values().all(|&c| c == 16));
    }

    #[test]
    fn zl_canonical_is_a_lift_of_its_partition() {
        let z = zl_canonical();
        let p = recovered_partition(&z).expect("partition recovered");
        // the canonical relabeling: g₁ = (1,0,0,0) pairs with g₁′ = (1,1,0,0)
        let a = GroupElement::parse("1000").unwrap();
        let b = GroupElement::parse("1100").unwrap();
        assert!(p.pairs().iter().any(|(x, y)| (*x, *y) == (a, b) || (*x, *y) == (b, a)));
    }

    #[test]
    fn persson_intermediate_census() {
        let b = persson_canonical();
        let census = intermediate_census(&b).unwrap();
        assert_eq!(census[&SurfaceKind::Campedelli], 8);
        assert_eq!(census[&SurfaceKind::EnriquesD16], 28);
        assert_eq!(census[&SurfaceKind::DelPezzo2], 14);
        assert_eq!(census[&SurfaceKind::HorikawaSpecial], 1);
    }

    #[test]
    fn zl_intermediate_census() {
        let z = zl_canonical();
        let census = intermediate_census(&z).unwrap();
        assert_eq!(census[&SurfaceKind::K3double], 4);
        assert_eq!(census[&SurfaceKind::WeightedPlane112], 4);
        assert_eq!(census[&SurfaceKind::DelPezzo2], 22);
        assert_eq!(zl_dp2_split(&z), Some((8, 14)));
        // every K3 intermediate is branched along six lines
        for n in crate::gf2::enumerate_subgroups(5, 1, None).unwrap() {
            let (tag, induced) = classify_intermediate(&z, &n).unwrap();
            if tag.kind == SurfaceKind::K3double {
                assert_eq!(induced.branch.lines.len(), 6);
            }
        }
    }

    #[test]
    fn enriques_and_campedelli_branch_counts() {
        let b = persson_canonical();
        let chi0 = GroupElement::parse("1000").unwrap();
        for n in crate::gf2::enumerate_subgroups(4, 2, Some(&chi0)).unwrap() {
            let (tag, induced) = classify_intermediate(&b, &n).unwrap();
            assert_eq!(tag.kind, SurfaceKind::EnriquesD16);
            assert_eq!(induced.branch.lines.len(), 6);
        }
        for n in crate::gf2::enumerate_subgroups(4, 3, Some(&chi0)).unwrap() {
            let (tag, induced) = classify_intermediate(&b, &n).unwrap();
            assert_eq!(tag.kind, SurfaceKind::Campedelli);
            assert_eq!(induced.branch.lines.len(), 7);
            // each of the seven branch lines has bundle-degree profile of a Campedelli
            assert_eq!(induced.degree_multiset(), vec![0, 2, 2, 2, 2, 2, 2, 2]);
        }
    }

    #[test]
    fn fundamental_relation_pairwise() {
        // deg L_χ + deg L_χ′ = deg L_{χ+χ′} + Σ_{χ(g)=χ′(g)=−1} deg D_g
        for datum in [persson_canonical(), zl_canonical()] {
            let m = datum.branch.m;
            for a in GroupElement::all(m) {
                for b in GroupElement::all(m) {
                    let overlap: i64 = datum
                        .branch
                        .lines
                        .iter()
                        .filter(|l| {
                            pairing(&a, &l.label).unwrap() == -1
                                && pairing(&b, &l.label).unwrap() == -1
                        })
                        .map(|l| l.degree)
                        .sum();
                    let lhs = datum.degree(&a) + datum.degree(&b);
                    let rhs = datum.degree(&a.add(&b).unwrap()) + overlap;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let b = persson_canonical();
        let json = serde_json::to_string(&BuildingDataJson::from(&b)).unwrap();
        let back: BuildingDataJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_building_data().unwrap(), b);
    }
}
