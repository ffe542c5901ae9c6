//! Linear algebra over F₂ and the finite-group combinatorics of branch labels.
//!
//! Group elements and characters of G = (ℤ/2ℤ)^m (m ≤ 8) are bit-vectors; the
//! pairing χ(g) = (−1)^⟨χ,g⟩ is the only way the two sorts interact. On top of
//! that sit the combinatorial counts the moduli theory runs on: subgroup
//! enumeration in reduced row-echelon canonical form, the order-1344 stabilizer
//! of the Persson label set (verified isomorphic to Aff(F₂,3)), the seven
//! partitions of the eight labels into parallel pairs with their order-192
//! stabilizers, the 112 étale label lifts to (ℤ/2ℤ)⁵, and the index-2
//! subgroup of pair swaps realized by the stabilizer.
//!
//! All group computations are exhaustive searches: every group in sight has at
//! most 20160 elements, and brute force keeps the verdicts auditable.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("rank {rank} out of range for ambient dimension {m}")]
    RankOutOfRange { m: usize, rank: usize },
    #[error("empty label set")]
    EmptyLabelSet,
    #[error("invalid label set: {0}")]
    BadLabelSet(String),
    #[error("invalid bit-vector literal {0:?}")]
    BadLiteral(String),
    #[error("ambient dimension {0} exceeds the supported maximum 8")]
    DimensionTooLarge(usize),
}

/// An element of G = (ℤ/2ℤ)^m, stored as a bit-vector of length `m ≤ 8`.
///
/// Coordinate 1 is the most significant position of the string form, so
/// `"1010"` is the element (1,0,1,0). Addition is coordinatewise XOR.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    m: usize,
    bits: u8,
}

/// A character of G, i.e. an element of G* = Hom(G, 𝔾_m), as a bit-vector.
///
/// The zero character evaluates to +1 everywhere.
pub type Character = GroupElement;

impl GroupElement {
    pub fn new(m: usize, coords: &[u8]) -> Result<Self, Gf2Error> {
        if m > 8 {
            return Err(Gf2Error::DimensionTooLarge(m));
        }
        if coords.len() != m {
            return Err(Gf2Error::LengthMismatch(coords.len(), m));
        }
        let mut bits = 0u8;
        for (i, &c) in coords.iter().enumerate() {
            if c & 1 == 1 {
                bits |= 1 << i;
            }
        }
        Ok(Self { m, bits })
    }

    /// Element from raw bits; bit `i` holds coordinate `i+1`.
    pub fn from_bits(m: usize, bits: u8) -> Result<Self, Gf2Error> {
        if m > 8 {
            return Err(Gf2Error::DimensionTooLarge(m));
        }
        let mask = if m == 8 { 0xff } else { (1u8 << m) - 1 };
        Ok(Self { m, bits: bits & mask })
    }

    /// Parse the string form, most significant (first) coordinate first.
    pub fn parse(s: &str) -> Result<Self, Gf2Error> {
        if s.is_empty() || s.len() > 8 {
            return Err(Gf2Error::BadLiteral(s.to_string()));
        }
        let mut bits = 0u8;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Gf2Error::BadLiteral(s.to_string())),
            }
        }
        Ok(Self { m: s.len(), bits })
    }

    pub fn zero(m: usize) -> Self {
        Self { m, bits: 0 }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` (1-based).
    pub fn coord(&self, i: usize) -> u8 {
        assert!((1..=self.m).contains(&i));
        (self.bits >> (i - 1)) & 1
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.m != other.m {
            return Err(Gf2Error::LengthMismatch(self.m, other.m));
        }
        Ok(Self { m: self.m, bits: self.bits ^ other.bits })
    }

    /// All 2^m elements of (ℤ/2ℤ)^m.
    pub fn all(m: usize) -> Vec<Self> {
        (0..1u16 << m).map(|b| Self { m, bits: b as u8 }).collect()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m {
            write!(f, "{}", self.coord(i))?;
        }
        Ok(())
    }
}

/// χ(g) = (−1)^⟨χ,g⟩ ∈ {+1, −1}.
pub fn pairing(chi: &Character, g: &GroupElement) -> Result<i8, Gf2Error> {
    if chi.m != g.m {
        return Err(Gf2Error::LengthMismatch(chi.m, g.m));
    }
    Ok(if (chi.bits & g.bits).count_ones() % 2 == 0 { 1 } else { -1 })
}

/// An invertible-or-not m×m matrix over F₂. Row `i` (0-based) gives the
/// coefficients producing output coordinate `i+1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearMapF2 {
    m: usize,
    rows: [u8; 8],
}

impl LinearMapF2 {
    pub fn new(m: usize, rows: &[u8]) -> Result<Self, Gf2Error> {
        if m > 8 {
            return Err(Gf2Error::DimensionTooLarge(m));
        }
        if rows.len() != m {
            return Err(Gf2Error::LengthMismatch(rows.len(), m));
        }
        let mask = if m == 8 { 0xff } else { (1u8 << m) - 1 };
        let mut r = [0u8; 8];
        for (i, &row) in rows.iter().enumerate() {
            r[i] = row & mask;
        }
        Ok(Self { m, rows: r })
    }

    pub fn identity(m: usize) -> Self {
        let mut rows = [0u8; 8];
        for (i, r) in rows.iter_mut().enumerate().take(m) {
            *r = 1 << i;
        }
        Self { m, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        assert_eq!(self.m, g.m);
        let mut bits = 0u8;
        for i in 0..self.m {
            if (self.rows[i] & g.bits).count_ones() % 2 == 1 {
                bits |= 1 << i;
            }
        }
        GroupElement { m: self.m, bits }
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        // self ∘ other: column j of the product is self applied to column j of other.
        let mut rows = [0u8; 8];
        for i in 0..self.m {
            for j in 0..self.m {
                let mut col_j = 0u8;
                for k in 0..self.m {
                    col_j |= ((other.rows[k] >> j) & 1) << k;
                }
                if (self.rows[i] & col_j).count_ones() % 2 == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        Self { m: self.m, rows }
    }

    pub fn is_invertible(&self) -> bool {
        let mut rows: Vec<u8> = self.rows[..self.m].to_vec();
        let mut rank = 0;
        for col in 0..self.m {
            if let Some(p) = (rank..self.m).find(|&r| (rows[r] >> col) & 1 == 1) {
                rows.swap(rank, p);
                for r in 0..self.m {
                    if r != rank && (rows[r] >> col) & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank == self.m
    }
}

/// An affine map x ↦ Ax + b on F₂^k.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AffineMapF2 {
    pub linear: LinearMapF2,
    pub translation: GroupElement,
}

impl AffineMapF2 {
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.linear.apply(x).add(&self.translation).expect("dimensions agree")
    }

    pub fn is_invertible(&self) -> bool {
        self.linear.is_invertible()
    }
}

/// A subgroup of (ℤ/2ℤ)^m, held as a reduced row-echelon basis — the canonical
/// form used for deduplication.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    m: usize,
    basis: Vec<GroupElement>,
}

impl Subgroup {
    /// Span of arbitrary generators, reduced to the canonical RREF basis.
    pub fn span(m: usize, gens: &[GroupElement]) -> Result<Self, Gf2Error> {
        for g in gens {
            if g.m != m {
                return Err(Gf2Error::LengthMismatch(g.m, m));
            }
        }
        let mut rows: Vec<u8> = gens.iter().map(|g| g.bits).collect();
        let mut basis: Vec<GroupElement> = Vec::new();
        // Forward elimination by leading (lowest-index) coordinate...
        let mut rank = 0usize;
        for col in 0..m {
            if let Some(p) = (rank..rows.len()).find(|&r| (rows[r] >> col) & 1 == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && (*row >> col) & 1 == 1 {
                        *row ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        // ...then the nonzero rows are already fully reduced.
        for &row in rows.iter().take(rank) {
            basis.push(GroupElement { m, bits: row });
        }
        Ok(Self { m, basis })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        1 << self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        let mut v = g.bits;
        for b in &self.basis {
            let lead = b.bits.trailing_zeros();
            if (v >> lead) & 1 == 1 {
                v ^= b.bits;
            }
        }
        v == 0
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let r = self.basis.len();
        (0..1u32 << r)
            .map(|mask| {
                let mut bits = 0u8;
                for (i, b) in self.basis.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        bits ^= b.bits;
                    }
                }
                GroupElement { m: self.m, bits }
            })
            .collect()
    }
}

/// All rank-`rank` subspaces of F₂^m, each in canonical RREF form, optionally
/// filtered to those *not* containing `exclude`.
///
/// The unfiltered count is the Gaussian binomial `[m choose rank]₂`; for
/// m = 4, rank = 2 excluding χ₀ this counts the 28 intermediate
/// (ℤ/2ℤ)²-covers.
pub fn enumerate_subgroups(
    m: usize,
    rank: usize,
    exclude: Option<&GroupElement>,
) -> Result<Vec<Subgroup>, Gf2Error> {
    if m > 8 {
        return Err(Gf2Error::DimensionTooLarge(m));
    }
    if rank > m {
        return Err(Gf2Error::RankOutOfRange { m, rank });
    }
    let mut out = Vec::new();
    // Enumerate RREF bases directly: choose pivot columns, then fill the free
    // entries (non-pivot columns to the right of each row's pivot).
    let pivot_sets: Vec<Vec<usize>> = combinations(m, rank);
    for pivots in pivot_sets {
        let mut free_slots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        for (i, &p) in pivots.iter().enumerate() {
            for col in p + 1..m {
                if !pivots.contains(&col) {
                    free_slots.push((i, col));
                }
            }
        }
        for assign in 0..1u64 << free_slots.len() {
            let mut rows = vec![0u8; rank];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i] |= 1 << p;
            }
            for (k, &(i, col)) in free_slots.iter().enumerate() {
                if (assign >> k) & 1 == 1 {
                    rows[i] |= 1 << col;
                }
            }
            let basis: Vec<GroupElement> =
                rows.into_iter().map(|b| GroupElement { m, bits: b }).collect();
            let sg = Subgroup { m, basis };
            if let Some(x) = exclude {
                if sg.contains(x) {
                    continue;
                }
            }
            out.push(sg);
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The subgroup of GL(F₂,m) fixing χ₀ = (1,0,…,0) and stabilizing a label set
/// setwise, produced by exhaustive search.
#[derive(Clone, Debug)]
pub struct LabelStabilizer {
    pub elements: Vec<LinearMapF2>,
    pub generators: Vec<LinearMapF2>,
    /// Set iff the stabilizer was verified isomorphic to Aff(F₂, m−1) by
    /// exhibiting the bijection M ↦ (A, b) with M(1,x) = (1, Ax+b).
    pub structure: Option<String>,
}

impl LabelStabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Stabilizer of a label set inside {M ∈ GL(F₂,m) : χ₀ ∘ M = χ₀}.
///
/// Fixing the first-coordinate functional forces the first row of M to be
/// (1,0,…,0); the remaining m(m−1) entries are searched exhaustively.
pub fn stabilizer_of_label_set(labels: &[GroupElement]) -> Result<LabelStabilizer, Gf2Error> {
    if labels.is_empty() {
        return Err(Gf2Error::EmptyLabelSet);
    }
    let m = labels[0].m;
    for g in labels {
        if g.m != m {
            return Err(Gf2Error::LengthMismatch(g.m, m));
        }
        if g.coord(1) != 1 {
            return Err(Gf2Error::BadLabelSet(format!(
                "label {g} does not satisfy χ₀(g) = −1"
            )));
        }
    }
    let label_set: BTreeSet<u8> = labels.iter().map(|g| g.bits).collect();
    let free = m * (m - 1);
    assert!(free <= 20, "exhaustive stabilizer search supports m ≤ 4");
    let mut elements = Vec::new();
    for assign in 0..1u64 << free {
        let mut rows = vec![0u8; m];
        rows[0] = 1; // first row fixed to e₁ so that χ₀ ∘ M = χ₀
        for i in 1..m {
            rows[i] = ((assign >> ((i - 1) * m)) & ((1 << m) - 1)) as u8;
        }
        let map = LinearMapF2::new(m, &rows)?;
        if !map.is_invertible() {
            continue;
        }
        let image: BTreeSet<u8> = labels.iter().map(|g| map.apply(g).bits).collect();
        if image == label_set {
            elements.push(map);
        }
    }
    let structure = verify_affine_structure(m, &label_set, &elements)
        .then(|| format!("Aff(F₂,{})", m - 1));
    let generators = small_generating_set(&elements);
    Ok(LabelStabilizer { elements, generators, structure })
}

/// Check that the stabilizer acts on the labels (1,x) exactly as the full
/// affine group x ↦ Ax + b of F₂^{m−1}: the block decomposition M ↦ (A,b) must
/// be a bijection onto all pairs (A ∈ GL(F₂,m−1), b).
fn verify_affine_structure(m: usize, labels: &BTreeSet<u8>, elements: &[LinearMapF2]) -> bool {
    // Only meaningful when the labels are all of {1} × F₂^{m−1}.
    if labels.len() != 1 << (m - 1) || !labels.iter().all(|b| b & 1 == 1) {
        return false;
    }
    let k = m - 1;
    let mut seen: BTreeSet<(Vec<u8>, u8)> = BTreeSet::new();
    for map in elements {
        // b = image of (1,0,…,0) with the leading 1 stripped; A columns from
        // images of (1, e_j) minus b.
        let b = map.apply(&GroupElement { m, bits: 1 }).bits >> 1;
        let mut a_rows = vec![0u8; k];
        for j in 0..k {
            let ej = GroupElement { m, bits: 1 | (1 << (j + 1)) };
            let col = (map.apply(&ej).bits >> 1) ^ b;
            for (i, row) in a_rows.iter_mut().enumerate() {
                *row |= ((col >> i) & 1) << j;
            }
        }
        let a = LinearMapF2::new(k, &a_rows).expect("dimension fits");
        if !a.is_invertible() {
            return false;
        }
        if !seen.insert((a_rows, b)) {
            return false;
        }
    }
    // |Aff(F₂,k)| = 2^k · ∏_{i=0}^{k−1} (2^k − 2^i)
    let mut expected = 1usize << k;
    for i in 0..k {
        expected *= (1 << k) - (1 << i);
    }
    elements.len() == expected
}

fn small_generating_set(elements: &[LinearMapF2]) -> Vec<LinearMapF2> {
    let Some(first) = elements.first() else { return Vec::new() };
    let m = first.m;
    let mut gens: Vec<LinearMapF2> = Vec::new();
    let mut span: BTreeSet<LinearMapF2> = BTreeSet::new();
    span.insert(LinearMapF2::identity(m));
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(*e);
        // close under multiplication
        loop {
            let mut new = Vec::new();
            for a in &span {
                for g in &gens {
                    let p = g.compose(a);
                    if !span.contains(&p) {
                        new.push(p);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            span.extend(new);
        }
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// A partition of the eight Persson labels into four "parallel" pairs: every
/// pair has the same nonzero difference vector v ∈ {0}×F₂³. These are in
/// bijection with the seven nontrivial 2-torsion line bundles on the cover.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PairPartition {
    pairs: [(GroupElement, GroupElement); 4],
}

impl PairPartition {
    pub fn pairs(&self) -> &[(GroupElement, GroupElement); 4] {
        &self.pairs
    }

    /// The common difference g + g′ of the four pairs.
    pub fn difference(&self) -> GroupElement {
        self.pairs[0].0.add(&self.pairs[0].1).expect("dimensions agree")
    }

    pub fn labels(&self) -> Vec<GroupElement> {
        let mut v = Vec::with_capacity(8);
        for (a, b) in &self.pairs {
            v.push(*a);
            v.push(*b);
        }
        v.sort();
        v
    }
}

/// Expect the full Persson label set {1}×F₂³ inside F₂⁴.
fn check_persson_labels(labels: &[GroupElement]) -> Result<(), Gf2Error> {
    let want: BTreeSet<u8> = (0..8u8).map(|x| 1 | (x << 1)).collect();
    let got: BTreeSet<u8> = labels.iter().filter(|g| g.m == 4).map(|g| g.bits).collect();
    if labels.len() != 8 || got != want {
        return Err(Gf2Error::BadLabelSet(
            "expected the eight labels {1}×F₂³ in (ℤ/2ℤ)⁴".into(),
        ));
    }
    Ok(())
}

/// The seven partitions of {1}×F₂³ into parallel pairs, one per nonzero
/// difference v ∈ {0}×F₂³, pairing (1,x) with (1,x+v).
pub fn partitions_into_parallel_pairs(
    labels: &[GroupElement],
) -> Result<Vec<PairPartition>, Gf2Error> {
    check_persson_labels(labels)?;
    let mut out = Vec::new();
    for v in 1..8u8 {
        let diff = v << 1; // nonzero vector with first coordinate 0
        let mut pairs = Vec::new();
        let mut used = BTreeSet::new();
        for g in labels {
            if used.contains(&g.bits) {
                continue;
            }
            let partner = GroupElement { m: 4, bits: g.bits ^ diff };
            used.insert(g.bits);
            used.insert(partner.bits);
            let (a, b) = if g.bits <= partner.bits { (*g, partner) } else { (partner, *g) };
            pairs.push((a, b));
        }
        pairs.sort();
        out.push(PairPartition { pairs: pairs.try_into().expect("four pairs") });
    }
    out.sort();
    Ok(out)
}

/// Stabilizer of a pair partition inside the 1344-element label stabilizer,
/// with its structure claim verified rather than looked up.
#[derive(Clone, Debug)]
pub struct PartitionStabilizer {
    pub elements: Vec<LinearMapF2>,
    /// Set iff verified: a normal elementary-abelian subgroup of order 8 was
    /// exhibited whose quotient acts on the four blocks as the full 𝔖₄.
    pub structure: Option<String>,
}

impl PartitionStabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The subgroup of the label stabilizer preserving a pair partition: blocks
/// may permute and elements within a block may swap.
pub fn stabilizer_of_partition(p: &PairPartition) -> Result<PartitionStabilizer, Gf2Error> {
    let labels = p.labels();
    let full = stabilizer_of_label_set(&labels)?;
    let blocks: BTreeSet<(u8, u8)> =
        p.pairs.iter().map(|(a, b)| (a.bits.min(b.bits), a.bits.max(b.bits))).collect();
    let preserves = |map: &LinearMapF2| {
        let image: BTreeSet<(u8, u8)> = p
            .pairs
            .iter()
            .map(|(a, b)| {
                let (x, y) = (map.apply(a).bits, map.apply(b).bits);
                (x.min(y), x.max(y))
            })
            .collect();
        image == blocks
    };
    let elements: Vec<LinearMapF2> = full.elements.into_iter().filter(|m| preserves(m)).collect();
    let structure =
        verify_partition_structure(p, &elements).then(|| "(ℤ/2ℤ)³⋊𝔖₄".to_string());
    Ok(PartitionStabilizer { elements, structure })
}

/// Verify the (ℤ/2ℤ)³⋊𝔖₄ claim: the kernel of the action on the four blocks
/// must be normal, elementary abelian of order 8, and the block action must be
/// the full symmetric group on the blocks.
fn verify_partition_structure(p: &PairPartition, elements: &[LinearMapF2]) -> bool {
    if elements.is_empty() {
        return false;
    }
    let block_of = |bits: u8| -> usize {
        p.pairs
            .iter()
            .position(|(a, b)| a.bits == bits || b.bits == bits)
            .expect("label belongs to a block")
    };
    let block_perm = |map: &LinearMapF2| -> [usize; 4] {
        let mut perm = [0usize; 4];
        for (i, (a, _)) in p.pairs.iter().enumerate() {
            perm[i] = block_of(map.apply(a).bits);
        }
        perm
    };
    let kernel: Vec<&LinearMapF2> =
        elements.iter().filter(|m| block_perm(m) == [0, 1, 2, 3]).collect();
    if kernel.len() != 8 {
        return false;
    }
    // elementary abelian: every kernel element squares to the identity and
    // kernel elements commute
    let id = LinearMapF2::identity(p.pairs[0].0.m);
    for a in &kernel {
        if a.compose(a) != id {
            return false;
        }
        for b in &kernel {
            if a.compose(b) != b.compose(a) {
                return false;
            }
        }
    }
    // normality: conjugates of kernel elements act trivially on blocks, which
    // is automatic since the kernel is the kernel of a homomorphism; check the
    // quotient instead: the block action must reach all 24 permutations.
    let perms: BTreeSet<[usize; 4]> = elements.iter().map(block_perm).collect();
    perms.len() == 24 && elements.len() == 8 * 24
}

/// Count the assignments of a fifth F₂ coordinate to the eight Persson labels
/// whose solved (ℤ/2ℤ)⁵ building data have exactly four characters of
/// line-bundle degree 3 (equivalently: genuinely étale lifts).
///
/// Exhaustive over all 2⁸ assignments; there are 7·2⁴ = 112 of them.
pub fn label_lift_count(labels: &[GroupElement]) -> Result<usize, Gf2Error> {
    check_persson_labels(labels)?;
    let mut sorted = labels.to_vec();
    sorted.sort();
    let mut count = 0usize;
    for mask in 0..256u16 {
        let lifted: Vec<GroupElement> = sorted
            .iter()
            .enumerate()
            .map(|(i, g)| GroupElement {
                m: 5,
                bits: g.bits | ((((mask >> i) & 1) as u8) << 4),
            })
            .collect();
        if lift_has_four_degree_three(&lifted) {
            count += 1;
        }
    }
    Ok(count)
}

/// Degrees of a degree-1-per-line datum are ½·#{g : χ(g) = −1}; a lift is
/// valid when all 32 degrees are integral and exactly four equal 3.
fn lift_has_four_degree_three(lifted: &[GroupElement]) -> bool {
    let mut threes = 0usize;
    for chi in GroupElement::all(5) {
        let minus = lifted
            .iter()
            .filter(|g| pairing(&chi, g).expect("dimensions agree") == -1)
            .count();
        if minus % 2 != 0 {
            return false;
        }
        if minus / 2 == 3 {
            threes += 1;
        }
    }
    threes == 4
}

/// Is the given permutation of the (ordered) Persson labels induced by some
/// element of the 1344-element label stabilizer?
///
/// `perm[i] = j` means the i-th label is sent to the j-th label.
pub fn is_induced_by_stabilizer(
    labels: &[GroupElement],
    perm: &[usize],
) -> Result<bool, Gf2Error> {
    check_persson_labels(labels)?;
    if perm.len() != 8 {
        return Err(Gf2Error::LengthMismatch(perm.len(), 8));
    }
    let stab = stabilizer_of_label_set(labels)?;
    Ok(stab.elements.iter().any(|map| {
        labels
            .iter()
            .enumerate()
            .all(|(i, g)| map.apply(g) == labels[perm[i]])
    }))
}

/// The permutation of `labels` swapping, for each set bit of `mask`, the two
/// members of the corresponding pair of `p`.
pub fn pair_swap_permutation(
    labels: &[GroupElement],
    p: &PairPartition,
    mask: u8,
) -> Result<Vec<usize>, Gf2Error> {
    check_persson_labels(labels)?;
    let index_of = |g: &GroupElement| labels.iter().position(|h| h == g).expect("label present");
    let mut perm: Vec<usize> = (0..8).collect();
    for (k, (a, b)) in p.pairs.iter().enumerate() {
        if (mask >> k) & 1 == 1 {
            perm[index_of(a)] = index_of(b);
            perm[index_of(b)] = index_of(a);
        }
    }
    Ok(perm)
}

/// Index of the stabilizer-induced permutations inside the group ⟨s₁,s₂,s₃,s₄⟩
/// of pair swaps of a partition — the combinatorial degree of Pardini's
/// period map. Single swaps sᵢ and triple swaps are never induced, double and
/// quadruple swaps always are, so the index is 2.
pub fn torelli_index(labels: &[GroupElement], p: &PairPartition) -> Result<usize, Gf2Error> {
    let mut induced = 0usize;
    for mask in 0..16u8 {
        let perm = pair_swap_permutation(labels, p, mask)?;
        if is_induced_by_stabilizer(labels, &perm)? {
            induced += 1;
        }
    }
    if induced == 0 || 16 % induced != 0 {
        return Err(Gf2Error::BadLabelSet(
            "swap group not compatible with the stabilizer".into(),
        ));
    }
    Ok(16 / induced)
}

/// The canonical Persson label set {1}×F₂³ in its canonical order.
pub fn persson_labels() -> Vec<GroupElement> {
    (0..8u8).map(|x| GroupElement { m: 4, bits: 1 | (x << 1) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupElement {
        GroupElement::parse(s).unwrap()
    }

    #[test]
    fn pairing_examples() {
        // χ₀ = (1,0,0,0) pairs to −1 with any label of first coordinate 1
        assert_eq!(pairing(&g("1000"), &g("1101")).unwrap(), -1);
        // the zero character evaluates to +1 everywhere
        for x in GroupElement::all(4) {
            assert_eq!(pairing(&GroupElement::zero(4), &x).unwrap(), 1);
        }
        // χ̃₁ = (0,1,1,0,1) against g̃₁ = (1,0,0,0,0)
        assert_eq!(pairing(&g("01101"), &g("10000")).unwrap(), 1);
        assert!(pairing(&g("101"), &g("1011")).is_err());
    }

    #[test]
    fn pairing_is_multiplicative() {
        for chi in GroupElement::all(4) {
            for a in GroupElement::all(4) {
                for b in GroupElement::all(4) {
                    let lhs = pairing(&chi, &a).unwrap() * pairing(&chi, &b).unwrap();
                    let rhs = pairing(&chi, &a.add(&b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn subgroup_counts_match_gaussian_binomials() {
        // [4 choose r]₂ = 1, 15, 35, 15, 1
        for (r, want) in [(0, 1), (1, 15), (2, 35), (3, 15), (4, 1)] {
            assert_eq!(enumerate_subgroups(4, r, None).unwrap().len(), want);
        }
        let chi0 = g("1000");
        assert_eq!(enumerate_subgroups(4, 2, Some(&chi0)).unwrap().len(), 28);
        assert_eq!(enumerate_subgroups(4, 3, Some(&chi0)).unwrap().len(), 8);
        assert_eq!(enumerate_subgroups(4, 0, None).unwrap().len(), 1);
    }

    #[test]
    fn subgroups_are_deduplicated_spans() {
        let a = Subgroup::span(4, &[g("1100"), g("0110")]).unwrap();
        let b = Subgroup::span(4, &[g("1010"), g("0110")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&g("1010")));
        assert!(!a.contains(&g("1000")));
    }

    #[test]
    fn persson_stabilizer_is_aff_f2_3() {
        let stab = stabilizer_of_label_set(&persson_labels()).unwrap();
        assert_eq!(stab.order(), 1344);
        assert_eq!((2usize.pow(4) - 2) * (16 - 4) * (16 - 8), 1344);
        assert_eq!(stab.structure.as_deref(), Some("Aff(F₂,3)"));
        // greedy generators at least double the span each time: ≤ ⌊log₂ 1344⌋ + 1
        assert!(!stab.generators.is_empty() && stab.generators.len() <= 11);
    }

    #[test]
    fn single_label_stabilizer_divides_1344() {
        let stab = stabilizer_of_label_set(&[g("1010")]).unwrap();
        assert_eq!(1344 % stab.order(), 0);
        let two = stabilizer_of_label_set(&[g("1000"), g("1110")]).unwrap();
        assert_eq!(1344 % two.order(), 0);
    }

    #[test]
    fn seven_pair_partitions() {
        let parts = partitions_into_parallel_pairs(&persson_labels()).unwrap();
        assert_eq!(parts.len(), 7);
        // the partition for v = (0,1,0,0) pairs (1,0,0,0) with (1,1,0,0)
        let p = parts
            .iter()
            .find(|p| p.difference() == g("0100"))
            .expect("difference vector occurs");
        assert!(p.pairs().contains(&(g("1000"), g("1100"))));
    }

    #[test]
    fn partition_stabilizer_has_order_192() {
        let parts = partitions_into_parallel_pairs(&persson_labels()).unwrap();
        for p in &parts {
            let s = stabilizer_of_partition(p).unwrap();
            assert_eq!(s.order(), 192);
            assert_eq!(s.structure.as_deref(), Some("(ℤ/2ℤ)³⋊𝔖₄"));
        }
        // orbit–stabilizer: 1344 = 192 × 7
        assert_eq!(192 * parts.len(), 1344);
    }

    #[test]
    fn lift_count_is_112() {
        assert_eq!(label_lift_count(&persson_labels()).unwrap(), 112);
    }

    #[test]
    fn swap_permutations_and_torelli_index() {
        let labels = persson_labels();
        let parts = partitions_into_parallel_pairs(&labels).unwrap();
        let p = &parts[0];
        // single swaps are not induced, double and quadruple swaps are
        assert!(!is_induced_by_stabilizer(&labels, &pair_swap_permutation(&labels, p, 0b0001).unwrap()).unwrap());
        assert!(is_induced_by_stabilizer(&labels, &pair_swap_permutation(&labels, p, 0b0011).unwrap()).unwrap());
        assert!(is_induced_by_stabilizer(&labels, &pair_swap_permutation(&labels, p, 0b1111).unwrap()).unwrap());
        assert!(!is_induced_by_stabilizer(&labels, &pair_swap_permutation(&labels, p, 0b0111).unwrap()).unwrap());
        assert_eq!(torelli_index(&labels, p).unwrap(), 2);
    }

    #[test]
    fn induced_permutations_form_a_subgroup() {
        let labels = persson_labels();
        let parts = partitions_into_parallel_pairs(&labels).unwrap();
        let p = &parts[0];
        let induced: Vec<u8> = (0..16u8)
            .filter(|&mask| {
                let perm = pair_swap_permutation(&labels, p, mask).unwrap();
                is_induced_by_stabilizer(&labels, &perm).unwrap()
            })
            .collect();
        assert_eq!(induced.len(), 8);
        // closed under composition (XOR of masks) and inverse (self-inverse)
        for &a in &induced {
            for &b in &induced {
                assert!(induced.contains(&(a ^ b)));
            }
        }
    }
}
