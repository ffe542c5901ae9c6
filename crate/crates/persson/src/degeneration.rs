//! Classification of stable degenerations of Persson surfaces.
//!
//! A matroid tiling of the cut hypersimplex Δ_b(3,8) with b = ½·1 determines a
//! stable degeneration of the pair (P², ½·8 lines), and hence of the Persson
//! cover. There are three symmetry classes:
//!
//! * **Type 0** — the trivial tiling; the ambient stays P².
//! * **Type I** — two pieces; the ambient breaks into P² ∪ F₁ glued along a
//!   double line (three lines become concurrent).
//! * **Type II** — three pieces; the ambient breaks into P² ∪ (P¹×P¹) ∪ P²
//!   with two double lines (two disjoint triples become concurrent).
//! * **Type II′** — Type II reached through the perturbed weight
//!   (½,…,½,½−ε); same geometry, recorded only as a marker.
//!
//! Each degenerate ambient component is encoded purely by a fixed Picard
//! basis with its integer intersection matrix, its canonical class, and the
//! restricted branch divisors (label, class, weight) — no toric machinery.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{pairing, GroupElement};
use crate::polytope::Tiling;
use crate::stability::EpsRat;
use crate::{rat, ratio, Rat};

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DegenerationError {
    #[error("classification needs a tiling of Δ_b(3,8), got (d, n) = ({0}, {1})")]
    WrongShape(usize, usize),
    #[error("tiling is not in the classified family: {0}")]
    UnclassifiedTiling(String),
    #[error("class vector has length {got}, the Picard basis has rank {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("branch labels yield a half-integral line-bundle degree for some character")]
    HalfIntegralDegree,
    #[error("total multiplicity {0} is outside 2..=4 (not log canonical at weight ½)")]
    MultiplicityOutOfRange(usize),
    #[error("component profiles are only computed for generic members of each type")]
    NonGeneric,
    #[error("Type II′ marker applies only to Type II degenerations")]
    NotTypeII,
    #[error("branch labels live in different groups")]
    MixedGroups,
}

/// The four degeneration types of stable Persson surfaces.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DegenerationTag {
    Type0,
    TypeI,
    TypeII,
    TypeIIPrime,
}

/// The three ambient surfaces occurring in stable degenerations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AmbientKind {
    P2,
    F1,
    P1xP1,
}

impl AmbientKind {
    pub fn name(self) -> &'static str {
        match self {
            AmbientKind::P2 => "P2",
            AmbientKind::F1 => "F1",
            AmbientKind::P1xP1 => "P1xP1",
        }
    }
}

/// One restricted branch divisor on a degenerate ambient component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchClass {
    pub label: GroupElement,
    /// Coordinates in the component's Picard basis.
    pub class: Vec<i64>,
    pub weight: Rat,
}

/// A degenerate ambient component: a fixed Picard basis with integer
/// intersection matrix, the canonical class, the restricted branch divisors,
/// and the classes of the double-locus curves on this component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmbientComponent {
    pub kind: AmbientKind,
    pub basis: Vec<&'static str>,
    pub intersection: Vec<Vec<i64>>,
    pub canonical_class: Vec<i64>,
    pub branch: Vec<BranchClass>,
    pub double_locus: Vec<Vec<i64>>,
}

impl AmbientComponent {
    /// P² with Picard basis (H), H² = 1, K = −3H.
    pub fn p2(branch: Vec<BranchClass>, double_locus: Vec<Vec<i64>>) -> Self {
        Self {
            kind: AmbientKind::P2,
            basis: vec!["H"],
            intersection: vec![vec![1]],
            canonical_class: vec![-3],
            branch,
            double_locus,
        }
    }

    /// F₁ with Picard basis (s₋, F): s₋² = −1, s₋·F = 1, F² = 0, K = −2s₋−3F.
    /// The positive section is s₊ = s₋ + F.
    pub fn f1(branch: Vec<BranchClass>, double_locus: Vec<Vec<i64>>) -> Self {
        Self {
            kind: AmbientKind::F1,
            basis: vec!["s-", "F"],
            intersection: vec![vec![-1, 1], vec![1, 0]],
            canonical_class: vec![-2, -3],
            branch,
            double_locus,
        }
    }

    /// P¹×P¹ with Picard basis (F₁, F₂), F₁·F₂ = 1, K = −2F₁−2F₂.
    pub fn p1xp1(branch: Vec<BranchClass>, double_locus: Vec<Vec<i64>>) -> Self {
        Self {
            kind: AmbientKind::P1xP1,
            basis: vec!["F1", "F2"],
            intersection: vec![vec![0, 1], vec![1, 0]],
            canonical_class: vec![-2, -2],
            branch,
            double_locus,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Intersection number of two integer classes in the Picard basis.
    pub fn dot(&self, x: &[i64], y: &[i64]) -> Result<i64, DegenerationError> {
        let r = self.rank();
        if x.len() != r || y.len() != r {
            return Err(DegenerationError::ClassLength {
                expected: r,
                got: if x.len() != r { x.len() } else { y.len() },
            });
        }
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += x[i] * self.intersection[i][j] * y[j];
            }
        }
        Ok(s)
    }

    /// Intersection number of rational classes.
    fn dot_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let r = self.rank();
        let mut s = rat(0);
        for i in 0..r {
            for j in 0..r {
                s += &x[i] * rat(self.intersection[i][j]) * &y[j];
            }
        }
        s
    }

    /// L = K + Σ weight·class as a rational class vector.
    pub fn log_canonical_class(&self) -> Result<Vec<Rat>, DegenerationError> {
        let r = self.rank();
        let mut l: Vec<Rat> = self.canonical_class.iter().map(|&k| rat(k)).collect();
        for b in &self.branch {
            if b.class.len() != r {
                return Err(DegenerationError::ClassLength { expected: r, got: b.class.len() });
            }
            for i in 0..r {
                l[i] += &b.weight * rat(b.class[i]);
            }
        }
        Ok(l)
    }
}

/// K² of the cover of one component: group_order · (K + Σ w·class)².
pub fn pullback_canonical_square(
    c: &AmbientComponent,
    group_order: i64,
) -> Result<Rat, DegenerationError> {
    let l = c.log_canonical_class()?;
    Ok(rat(group_order) * c.dot_rat(&l, &l))
}

/// χ(𝒪) of the full abelian cover of one component, summed over all
/// characters: χ(𝒪_X) = Σ_χ χ(𝒪_Y(−L_χ)) with L_χ = ½·Σ_{χ(g)=−1} [D_g],
/// and χ(𝒪_Y(D)) = 1 + D·(D−K)/2 on each rational ambient.
pub fn cover_euler_characteristic(c: &AmbientComponent) -> Result<Rat, DegenerationError> {
    let r = c.rank();
    let m = match c.branch.first() {
        Some(b) => b.label.m(),
        None => return Ok(rat(1)),
    };
    if c.branch.iter().any(|b| b.label.m() != m) {
        return Err(DegenerationError::MixedGroups);
    }
    let mut total = rat(0);
    for chi in GroupElement::all(m) {
        let mut deg = vec![0i64; r];
        for b in &c.branch {
            if b.class.len() != r {
                return Err(DegenerationError::ClassLength { expected: r, got: b.class.len() });
            }
            if pairing(&chi, &b.label).expect("same group") == -1 {
                for i in 0..r {
                    deg[i] += b.class[i];
                }
            }
        }
        if deg.iter().any(|d| d % 2 != 0) {
            return Err(DegenerationError::HalfIntegralDegree);
        }
        let d: Vec<i64> = deg.iter().map(|x| -x / 2).collect();
        let dd = c.dot(&d, &d)?;
        let dk = c.dot(&d, &c.canonical_class)?;
        total += ratio(2 + dd - dk, 2);
    }
    Ok(total)
}

/// A classified stable degeneration: its type, the ambient components with
/// their restricted branch data, and the concurrent-line index sets (1-based)
/// read off the defining 3-set constraints of the tiling.
#[derive(Clone, PartialEq, Debug)]
pub struct DegenerationType {
    pub tag: DegenerationTag,
    pub components: Vec<AmbientComponent>,
    pub concurrency: Vec<Vec<usize>>,
    /// Weight-a marker for Type II′; `None` otherwise.
    pub perturbation: Option<Vec<EpsRat>>,
}

impl DegenerationType {
    /// Mark a Type II degeneration as Type II′, recording the perturbed
    /// weight a = (½,…,½,½−ε) that reaches it by wall-crossing. The geometry
    /// is unchanged.
    pub fn into_type_ii_prime(mut self, a: Vec<EpsRat>) -> Result<Self, DegenerationError> {
        if self.tag != DegenerationTag::TypeII {
            return Err(DegenerationError::NotTypeII);
        }
        self.tag = DegenerationTag::TypeIIPrime;
        self.perturbation = Some(a);
        Ok(self)
    }
}

const HALF_WEIGHT: (i64, i64) = (1, 2);

/// The Persson label with the given tail in F₂³ (all labels have first
/// coordinate 1, so the character χ₀ is −1 on each branch divisor).
fn label(tail: usize) -> GroupElement {
    GroupElement::from_bits(4, (1 | (tail << 1)) as u8).expect("tail < 8")
}

fn half() -> Rat {
    ratio(HALF_WEIGHT.0, HALF_WEIGHT.1)
}

/// Canonical P² component of the generic Type 0 degeneration: eight
/// half-lines carrying all eight Persson labels.
fn type0_p2() -> AmbientComponent {
    let branch = (0..8)
        .map(|t| BranchClass { label: label(t), class: vec![1], weight: half() })
        .collect();
    AmbientComponent::p2(branch, Vec::new())
}

/// Canonical P² component of a Type I degeneration (also each end component
/// of Type II): the five surviving lines plus the double line, which joins
/// the branch divisor whose label is the sum of the three concurrent labels.
/// With the concurrent triple at tails {1,2,4}, the join has tail 7 and the
/// five lines have tails {0,3,5,6,7} — so the label 1|111 appears twice, once
/// on a line and once on the double curve, making every character degree
/// integral.
fn joined_p2() -> AmbientComponent {
    let mut branch: Vec<BranchClass> = [0usize, 3, 5, 6, 7]
        .iter()
        .map(|&t| BranchClass { label: label(t), class: vec![1], weight: half() })
        .collect();
    branch.push(BranchClass { label: label(7), class: vec![1], weight: half() });
    AmbientComponent::p2(branch, vec![vec![1]])
}

/// Canonical F₁ component of a Type I degeneration: the three concurrent
/// lines become sections s₊ = s₋ + F, the other five lines become rulings F,
/// and the double locus s₋ joins the divisor with tail 7.
fn type1_f1() -> AmbientComponent {
    let mut branch: Vec<BranchClass> = [1usize, 2, 4]
        .iter()
        .map(|&t| BranchClass { label: label(t), class: vec![1, 1], weight: half() })
        .collect();
    for &t in &[0usize, 3, 5, 6, 7] {
        branch.push(BranchClass { label: label(t), class: vec![0, 1], weight: half() });
    }
    branch.push(BranchClass { label: label(7), class: vec![1, 0], weight: half() });
    AmbientComponent::f1(branch, vec![vec![1, 0]])
}

/// Canonical middle P¹×P¹ component of a Type II degeneration: eight
/// distinct-labeled divisors, four of each ruling class. Each ruling class
/// carries one double curve together with the three lines whose labels sum
/// to the double curve's label, so both class groups are cosets and every
/// character degree is integral; the log-canonical class is 0.
fn type2_middle() -> AmbientComponent {
    let mut branch: Vec<BranchClass> = [1usize, 2, 4, 7]
        .iter()
        .map(|&t| BranchClass { label: label(t), class: vec![1, 0], weight: half() })
        .collect();
    for &t in &[3usize, 5, 6, 0] {
        branch.push(BranchClass { label: label(t), class: vec![0, 1], weight: half() });
    }
    AmbientComponent::p1xp1(branch, vec![vec![1, 0], vec![0, 1]])
}

/// Classify a matroid tiling of Δ_b(3,8), b = ½·1, as a degeneration type.
///
/// * one piece → Type 0 (ambient P²);
/// * two pieces → Type I: the piece cut by the 3-set constraint x_I ≤ 1 is
///   the P² side, the piece cut by the complementary 5-set constraint
///   x_{Iᶜ} ≤ 2 — the one whose defining 3-set constraint is absent — is the
///   F₁ side;
/// * three pieces → Type II: the middle piece carries the two 5-set
///   constraints and becomes P¹×P¹; the two end pieces are P²'s.
///
/// The defining 3-sets are recorded in `concurrency` as the concurrent-line
/// data. Any symmetry image of the enumerated tilings is accepted; anything
/// else is rejected.
pub fn classify_tiling(t: &Tiling) -> Result<DegenerationType, DegenerationError> {
    if t.d != 3 || t.n != 8 {
        return Err(DegenerationError::WrongShape(t.d, t.n));
    }
    let full: BTreeSet<usize> = (1..=8).collect();
    // (sorted constraint sets with levels) per piece
    let cons: Vec<Vec<(Vec<usize>, i64)>> = t
        .pieces
        .iter()
        .map(|p| p.constraints().iter().map(|c| (c.set.clone(), c.k)).collect())
        .collect();
    match cons.len() {
        1 => {
            if !cons[0].is_empty() {
                return Err(DegenerationError::UnclassifiedTiling(
                    "single piece must be the full hypersimplex".into(),
                ));
            }
            Ok(DegenerationType {
                tag: DegenerationTag::Type0,
                components: vec![type0_p2()],
                concurrency: Vec::new(),
                perturbation: None,
            })
        }
        2 => {
            let three = cons.iter().position(|c| {
                c.len() == 1 && c[0].0.len() == 3 && c[0].1 == 1
            });
            let five = cons.iter().position(|c| {
                c.len() == 1 && c[0].0.len() == 5 && c[0].1 == 2
            });
            let (Some(i3), Some(i5)) = (three, five) else {
                return Err(DegenerationError::UnclassifiedTiling(
                    "two pieces must be cut by one 3-set and one 5-set constraint".into(),
                ));
            };
            let set3: BTreeSet<usize> = cons[i3][0].0.iter().copied().collect();
            let set5: BTreeSet<usize> = cons[i5][0].0.iter().copied().collect();
            let complement: BTreeSet<usize> = full.difference(&set3).copied().collect();
            if set5 != complement {
                return Err(DegenerationError::UnclassifiedTiling(
                    "the 5-set constraint must be the complement of the 3-set".into(),
                ));
            }
            Ok(DegenerationType {
                tag: DegenerationTag::TypeI,
                components: vec![joined_p2(), type1_f1()],
                concurrency: vec![set3.into_iter().collect()],
                perturbation: None,
            })
        }
        3 => {
            let mut ends = Vec::new();
            let mut middle = None;
            for c in &cons {
                if c.len() == 1 && c[0].0.len() == 3 && c[0].1 == 1 {
                    ends.push(c[0].0.iter().copied().collect::<BTreeSet<usize>>());
                } else if c.len() == 2 && c.iter().all(|x| x.0.len() == 5 && x.1 == 2) {
                    middle = Some(
                        c.iter()
                            .map(|x| x.0.iter().copied().collect::<BTreeSet<usize>>())
                            .collect::<Vec<_>>(),
                    );
                } else {
                    return Err(DegenerationError::UnclassifiedTiling(
                        "three pieces must be two 3-set ends and one double-5-set middle".into(),
                    ));
                }
            }
            let (Some(mid), true) = (middle, ends.len() == 2) else {
                return Err(DegenerationError::UnclassifiedTiling(
                    "three pieces must be two 3-set ends and one double-5-set middle".into(),
                ));
            };
            if !ends[0].is_disjoint(&ends[1]) {
                return Err(DegenerationError::UnclassifiedTiling(
                    "the two concurrent triples must be disjoint".into(),
                ));
            }
            for e in &ends {
                let comp: BTreeSet<usize> = full.difference(e).copied().collect();
                if !mid.contains(&comp) {
                    return Err(DegenerationError::UnclassifiedTiling(
                        "middle 5-sets must be the complements of the end 3-sets".into(),
                    ));
                }
            }
            let mut concurrency: Vec<Vec<usize>> =
                ends.into_iter().map(|e| e.into_iter().collect()).collect();
            concurrency.sort();
            Ok(DegenerationType {
                tag: DegenerationTag::TypeII,
                components: vec![joined_p2(), type2_middle(), joined_p2()],
                concurrency,
                perturbation: None,
            })
        }
        k => Err(DegenerationError::UnclassifiedTiling(format!(
            "no classified degeneration has {k} pieces"
        ))),
    }
}

/// Count of singular points of one analytic type on a cover component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SingularityCount {
    #[serde(rename = "type")]
    pub kind: String,
    pub count: u32,
}

/// Per-component report of `component_cover_profile`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub ambient: String,
    #[serde(rename = "coverKind")]
    pub cover_kind: String,
    pub pg: i64,
    pub h11: i64,
    pub singularities: Vec<SingularityCount>,
    pub glue: Vec<String>,
}

/// The covers of the components of a generic member of each degeneration
/// type. Only generic members are in scope; `generic = false` is an error.
///
/// * Type 0: the Persson surface itself (general type, p_g = 3, h¹¹ = 24).
/// * Type I: a K3 with eight A₁-singularities over P², and an elliptic
///   surface (p_g = 2, h¹¹ = 22) with eight A₁-singularities over F₁, glued
///   along an elliptic curve. The eight A₁'s are the preimages of the point
///   where the double line meets the joined branch divisor.
/// * Type II: K3's with four A₃-singularities over the two P² ends (the A₃'s
///   over the point with three lines carrying two labels), and a smooth
///   surface over the middle P¹×P¹, glued along two elliptic curves.
pub fn component_cover_profile(
    dt: &DegenerationType,
    generic: bool,
) -> Result<Vec<ComponentReport>, DegenerationError> {
    if !generic {
        return Err(DegenerationError::NonGeneric);
    }
    let k3 = |ambient: &str, sing: Vec<SingularityCount>, glue: Vec<String>| ComponentReport {
        ambient: ambient.into(),
        cover_kind: "K3".into(),
        pg: 1,
        h11: 20,
        singularities: sing,
        glue,
    };
    let a = |kind: &str, count: u32| SingularityCount { kind: kind.into(), count };
    Ok(match dt.tag {
        DegenerationTag::Type0 => vec![ComponentReport {
            ambient: "P2".into(),
            cover_kind: "general type".into(),
            pg: 3,
            h11: 24,
            singularities: Vec::new(),
            glue: Vec::new(),
        }],
        DegenerationTag::TypeI => vec![
            k3("P2", vec![a("A1", 8)], vec!["elliptic curve".into()]),
            ComponentReport {
                ambient: "F1".into(),
                cover_kind: "elliptic".into(),
                pg: 2,
                h11: 22,
                singularities: vec![a("A1", 8)],
                glue: vec!["elliptic curve".into()],
            },
        ],
        DegenerationTag::TypeII | DegenerationTag::TypeIIPrime => vec![
            k3("P2", vec![a("A3", 4)], vec!["elliptic curve".into()]),
            k3(
                "P1xP1",
                Vec::new(),
                vec!["elliptic curve".into(), "elliptic curve".into()],
            ),
            k3("P2", vec![a("A3", 4)], vec!["elliptic curve".into()]),
        ],
    })
}

/// Relation class of the labels at a singular point of the arrangement.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RelationClass {
    NoRelation,
    Length4,
    Length3,
    /// Point on a double locus; the boundary tables (R-prefixed models)
    /// apply instead of the interior relation dichotomy.
    BoundaryVariant,
}

/// Labels at a point of the branch arrangement together with their relation
/// class and the candidate rows of the Alexeev–Pardini tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalSingularityDatum {
    pub labels: Vec<GroupElement>,
    pub relation_class: RelationClass,
    pub table_labels: Vec<String>,
    /// False when the local datum does not single out one table row; the
    /// full candidate list is returned in that case.
    pub resolved: bool,
}

#[derive(Deserialize)]
struct TableCell {
    context: String,
    labels: Vec<String>,
    resolved: bool,
}

#[derive(Deserialize)]
struct SingularityTable {
    cells: Vec<TableCell>,
}

fn table() -> &'static SingularityTable {
    static TABLE: OnceLock<SingularityTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        serde_json::from_str(include_str!("../data/singularity_table.json"))
            .expect("bundled singularity table parses")
    })
}

/// The model labels the tables allow for a context: `type0-interior`,
/// `typeI-double-line`, `typeII-double-line`, or `typeII-triple-point`.
pub fn singularity_table_labels(context: &str) -> Option<(Vec<String>, bool)> {
    table()
        .cells
        .iter()
        .find(|c| c.context == context)
        .map(|c| (c.labels.clone(), c.resolved))
}

/// Classify the labels at a singular point of the branch arrangement.
///
/// The relation class is `Length4` if some 4 of the labels (with
/// multiplicity) sum to zero, `Length3` if some 3 do, and `NoRelation`
/// otherwise; on a double locus the class is `BoundaryVariant` and the
/// boundary table applies. Total multiplicity must lie in 2..=4 — five or
/// more half-lines through a point are not log canonical.
pub fn local_singularity_class(
    labels: &[GroupElement],
    on_double_locus: bool,
) -> Result<LocalSingularityDatum, DegenerationError> {
    let mult = labels.len();
    if !(2..=4).contains(&mult) {
        return Err(DegenerationError::MultiplicityOutOfRange(mult));
    }
    let m = labels[0].m();
    if labels.iter().any(|g| g.m() != m) {
        return Err(DegenerationError::MixedGroups);
    }
    let sums_to_zero = |idx: &[usize]| -> bool {
        let mut s = GroupElement::zero(m);
        for &i in idx {
            s = s.add(&labels[i]).expect("same group");
        }
        s.is_zero()
    };
    let mut relation = RelationClass::NoRelation;
    if mult >= 3 {
        'outer: for i in 0..mult {
            for j in i + 1..mult {
                for k in j + 1..mult {
                    if sums_to_zero(&[i, j, k]) {
                        relation = RelationClass::Length3;
                        break 'outer;
                    }
                }
            }
        }
    }
    if relation == RelationClass::NoRelation && mult == 4 && sums_to_zero(&[0, 1, 2, 3]) {
        relation = RelationClass::Length4;
    }
    let context = if on_double_locus { "typeI-double-line" } else { "type0-interior" };
    let (table_labels, resolved) =
        singularity_table_labels(context).expect("bundled table has both contexts");
    Ok(LocalSingularityDatum {
        labels: labels.to_vec(),
        relation_class: if on_double_locus { RelationClass::BoundaryVariant } else { relation },
        table_labels,
        resolved,
    })
}
