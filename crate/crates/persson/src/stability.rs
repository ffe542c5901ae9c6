//! Log-canonical and GIT stability of weighted line arrangements, and the
//! wall-and-chamber structure of the weight domain.
//!
//! Verdicts depend only on the incidence structure (which lines coincide,
//! which pass through a common point), never on coordinates. Weights may
//! carry a symbolic infinitesimal ε, so perturbed weights like ½ − ε are
//! first-class and compare lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num::{Signed, Zero};
use thiserror::Error;

use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StabilityError {
    #[error("zero coefficient triple at index {0}")]
    ZeroTriple(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weights must lie in (0, 1]")]
    BadWeight,
    #[error("weight sum {0} is below the domain bound Σb ≥ d")]
    OutsideWeightDomain(String),
    #[error("weight lies on {} wall(s), first {}", .0.len(), .0[0])]
    OnWall(Vec<Wall>),
}

/// A rational with a symbolic infinitesimal: value + eps·ε, compared
/// lexicographically (ε is positive but smaller than any positive rational).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EpsRat {
    pub value: Rat,
    pub eps: Rat,
}

impl EpsRat {
    pub fn new(value: Rat, eps: Rat) -> Self {
        Self { value, eps }
    }

    pub fn from_rat(value: Rat) -> Self {
        Self { value, eps: Rat::zero() }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rat(rat(value))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.eps.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
            || (self.value.is_zero() && self.eps.is_positive())
    }

    pub fn scale(&self, f: &Rat) -> Self {
        Self { value: &self.value * f, eps: &self.eps * f }
    }
}

impl fmt::Display for EpsRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.value)
        } else if self.eps.is_positive() {
            write!(f, "{}+{}ε", self.value, self.eps)
        } else {
            write!(f, "{}-{}ε", self.value, -&self.eps)
        }
    }
}

impl Add for EpsRat {
    type Output = EpsRat;
    fn add(self, rhs: EpsRat) -> EpsRat {
        EpsRat { value: self.value + rhs.value, eps: self.eps + rhs.eps }
    }
}

impl AddAssign<&EpsRat> for EpsRat {
    fn add_assign(&mut self, rhs: &EpsRat) {
        self.value += &rhs.value;
        self.eps += &rhs.eps;
    }
}

impl Sub for EpsRat {
    type Output = EpsRat;
    fn sub(self, rhs: EpsRat) -> EpsRat {
        EpsRat { value: self.value - rhs.value, eps: self.eps - rhs.eps }
    }
}

impl Neg for EpsRat {
    type Output = EpsRat;
    fn neg(self) -> EpsRat {
        EpsRat { value: -self.value, eps: -self.eps }
    }
}

impl std::iter::Sum for EpsRat {
    fn sum<I: Iterator<Item = EpsRat>>(iter: I) -> EpsRat {
        let mut acc = EpsRat::from_int(0);
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// A distinct line of the arrangement: `multiplicity` original lines
/// coincide on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementLine {
    pub id: usize,
    pub multiplicity: u32,
}

/// An intersection point with its incident distinct lines (ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementPoint {
    pub id: usize,
    pub lines: Vec<usize>,
}

impl ArrangementPoint {
    /// Number of original lines through the point, counting coincidences.
    pub fn multiplicity(&self, arr: &WeightedArrangement) -> u32 {
        self.lines.iter().map(|&l| arr.lines[l].multiplicity).sum()
    }
}

/// A weighted line arrangement given purely by incidence data: distinct
/// lines with multiplicities and weights, and the points where at least two
/// distinct lines meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedArrangement {
    pub lines: Vec<ArrangementLine>,
    pub points: Vec<ArrangementPoint>,
    /// Weight of each distinct line (applied to every coincident copy).
    pub weights: Vec<EpsRat>,
}

impl WeightedArrangement {
    /// Incidence-only constructor; weights must match the line count.
    pub fn new(
        lines: Vec<ArrangementLine>,
        points: Vec<ArrangementPoint>,
        weights: Vec<EpsRat>,
    ) -> Result<Self, StabilityError> {
        if weights.len() != lines.len() {
            return Err(StabilityError::WeightCount {
                expected: lines.len(),
                got: weights.len(),
            });
        }
        for w in &weights {
            if !w.is_positive() || *w > EpsRat::from_int(1) {
                return Err(StabilityError::BadWeight);
            }
        }
        Ok(Self { lines, points, weights })
    }

    /// Replace all weights (one per distinct line).
    pub fn with_weights(mut self, weights: Vec<EpsRat>) -> Result<Self, StabilityError> {
        if weights.len() != self.lines.len() {
            return Err(StabilityError::WeightCount {
                expected: self.lines.len(),
                got: weights.len(),
            });
        }
        self.weights = weights;
        Ok(self)
    }

    /// The same rational weight on every distinct line.
    pub fn with_uniform_weight(self, w: Rat) -> Result<Self, StabilityError> {
        let n = self.lines.len();
        self.with_weights(vec![EpsRat::from_rat(w); n])
    }

    /// Total weighted degree Σ multiplicity·weight over the distinct lines.
    pub fn total_weight(&self) -> EpsRat {
        self.lines
            .iter()
            .map(|l| self.weights[l.id].scale(&rat(i64::from(l.multiplicity))))
            .sum()
    }

    /// Weight carried by one distinct line, counting coincident copies.
    pub fn line_weight(&self, id: usize) -> EpsRat {
        self.weights[id].scale(&rat(i64::from(self.lines[id].multiplicity)))
    }

    /// Weight of all original lines through a point.
    pub fn point_weight(&self, p: &ArrangementPoint) -> EpsRat {
        p.lines.iter().map(|&l| self.line_weight(l)).sum()
    }
}

/// Exact incidence structure of rational coefficient triples in P²:
/// proportional triples merge into one line with multiplicity; all pairwise
/// intersections are computed exactly and grouped by coincidence. Weights
/// are initialized to 1.
pub fn incidence_from_lines(
    triples: &[[Rat; 3]],
) -> Result<WeightedArrangement, StabilityError> {
    let mut canon_lines: Vec<[Rat; 3]> = Vec::new();
    let mut lines: Vec<ArrangementLine> = Vec::new();
    for (i, t) in triples.iter().enumerate() {
        let c = canonical_triple(t).ok_or(StabilityError::ZeroTriple(i))?;
        if let Some(j) = canon_lines.iter().position(|x| *x == c) {
            lines[j].multiplicity += 1;
        } else {
            lines.push(ArrangementLine { id: canon_lines.len(), multiplicity: 1 });
            canon_lines.push(c);
        }
    }
    // pairwise intersections of distinct lines, grouped by the point
    let mut by_point: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    for a in 0..canon_lines.len() {
        for b in a + 1..canon_lines.len() {
            let p = cross(&canon_lines[a], &canon_lines[b]);
            let p = canonical_triple(&p).expect("distinct lines meet in a point");
            let key: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            let e = by_point.entry(key).or_default();
            for l in [a, b] {
                if !e.contains(&l) {
                    e.push(l);
                }
            }
        }
    }
    let points: Vec<ArrangementPoint> = by_point
        .into_values()
        .enumerate()
        .map(|(id, mut ls)| {
            ls.sort_unstable();
            ArrangementPoint { id, lines: ls }
        })
        .collect();
    let n = lines.len();
    WeightedArrangement::new(lines, points, vec![EpsRat::from_int(1); n])
}

/// Scale a nonzero triple so the first nonzero coordinate is 1.
fn canonical_triple(t: &[Rat; 3]) -> Option<[Rat; 3]> {
    let lead = t.iter().find(|x| !x.is_zero())?;
    Some([&t[0] / lead, &t[1] / lead, &t[2] / lead])
}

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// One failed (or, for semistability, tight) numerical condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub locus: String,
    pub attained: EpsRat,
    pub bound: EpsRat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcVerdict {
    Lc,
    NotLc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcReport {
    pub verdict: LcVerdict,
    pub violations: Vec<Violation>,
}

/// Log-canonicity of (P², Σ w_i D_i): every distinct line carries weight at
/// most 1 (counting coincident copies) and every point weight at most 2.
/// Boundary equalities count as log canonical.
pub fn is_log_canonical(a: &WeightedArrangement) -> LcReport {
    let mut violations = Vec::new();
    for l in &a.lines {
        let s = a.line_weight(l.id);
        let bound = EpsRat::from_int(1);
        if s > bound {
            violations.push(Violation {
                locus: format!("line {} (multiplicity {})", l.id, l.multiplicity),
                attained: s,
                bound,
            });
        }
    }
    for p in &a.points {
        let s = a.point_weight(p);
        let bound = EpsRat::from_int(2);
        if s > bound {
            violations.push(Violation {
                locus: format!("point {} (lines {:?})", p.id, p.lines),
                attained: s,
                bound,
            });
        }
    }
    let verdict = if violations.is_empty() { LcVerdict::Lc } else { LcVerdict::NotLc };
    LcReport { verdict, violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GitVerdict {
    Stable,
    Semistable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitReport {
    pub verdict: GitVerdict,
    pub violations: Vec<Violation>,
}

/// The numerical GIT criterion for weighted line arrangements in P²:
/// semistable iff every point carries weight at most (2/3)Σw and every
/// distinct line at most (1/3)Σw; stable iff both inequalities are strict.
/// Violations are reported for the unstable case only.
pub fn is_git_semistable(a: &WeightedArrangement) -> GitReport {
    let total = a.total_weight();
    let point_bound = total.scale(&crate::ratio(2, 3));
    let line_bound = total.scale(&crate::ratio(1, 3));
    let mut violations = Vec::new();
    let mut tight = false;
    for l in &a.lines {
        let s = a.line_weight(l.id);
        match s.cmp(&line_bound) {
            Ordering::Greater => violations.push(Violation {
                locus: format!("line {} (multiplicity {})", l.id, l.multiplicity),
                attained: s,
                bound: line_bound.clone(),
            }),
            Ordering::Equal => tight = true,
            Ordering::Less => {}
        }
    }
    for p in &a.points {
        let s = a.point_weight(p);
        match s.cmp(&point_bound) {
            Ordering::Greater => violations.push(Violation {
                locus: format!("point {} (lines {:?})", p.id, p.lines),
                attained: s,
                bound: point_bound.clone(),
            }),
            Ordering::Equal => tight = true,
            Ordering::Less => {}
        }
    }
    let verdict = if !violations.is_empty() {
        GitVerdict::Unstable
    } else if tight {
        GitVerdict::Semistable
    } else {
        GitVerdict::Stable
    };
    GitReport { verdict, violations }
}

/// A wall {x_I = k} of the weight domain, 2 ≤ |I| ≤ n−2 and 1 ≤ k ≤ d−1;
/// `set` holds 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub set: Vec<usize>,
    pub k: i64,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{:?}}} = {}", self.set, self.k)
    }
}

fn all_walls(n: usize, d: usize) -> Vec<Wall> {
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let size = mask.count_ones() as usize;
        if size < 2 || size > n - 2 {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        for k in 1..=d as i64 - 1 {
            out.push(Wall { set: set.clone(), k });
        }
    }
    out.sort();
    out
}

fn wall_excess(b: &[EpsRat], w: &Wall) -> EpsRat {
    let s: EpsRat = w.set.iter().map(|&i| b[i - 1].clone()).sum();
    s - EpsRat::from_int(w.k)
}

fn check_domain(b: &[EpsRat], d: usize) -> Result<(), StabilityError> {
    let total: EpsRat = b.iter().cloned().sum();
    if total < EpsRat::from_int(d as i64) {
        return Err(StabilityError::OutsideWeightDomain(total.to_string()));
    }
    Ok(())
}

/// All walls containing the weight (Σ_{i∈I} b_i = k exactly).
pub fn walls_containing(b: &[EpsRat], d: usize) -> Result<Vec<Wall>, StabilityError> {
    check_domain(b, d)?;
    Ok(all_walls(b.len(), d)
        .into_iter()
        .filter(|w| wall_excess(b, w).is_zero())
        .collect())
}

/// Walls met along the segment from b1 to b2: `crossed` holds walls whose
/// excess changes sign strictly between the endpoints, `touched` walls
/// containing at least one endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentWalls {
    pub crossed: Vec<Wall>,
    pub touched: Vec<Wall>,
}

pub fn crossed_walls(
    b1: &[EpsRat],
    b2: &[EpsRat],
    d: usize,
) -> Result<SegmentWalls, StabilityError> {
    check_domain(b1, d)?;
    check_domain(b2, d)?;
    if b1.len() != b2.len() {
        return Err(StabilityError::WeightCount { expected: b1.len(), got: b2.len() });
    }
    let mut crossed = Vec::new();
    let mut touched = Vec::new();
    for w in all_walls(b1.len(), d) {
        let e1 = wall_excess(b1, &w);
        let e2 = wall_excess(b2, &w);
        if e1.is_zero() || e2.is_zero() {
            touched.push(w);
        } else if e1.is_positive() != e2.is_positive() {
            crossed.push(w);
        }
    }
    Ok(SegmentWalls { crossed, touched })
}

/// Do two off-wall weights lie in the same chamber? Exhaustive sign
/// comparison over all walls; an input on a wall is an error.
pub fn same_chamber(b1: &[EpsRat], b2: &[EpsRat], d: usize) -> Result<bool, StabilityError> {
    check_domain(b1, d)?;
    check_domain(b2, d)?;
    if b1.len() != b2.len() {
        return Err(StabilityError::WeightCount { expected: b1.len(), got: b2.len() });
    }
    for b in [b1, b2] {
        let on: Vec<Wall> = all_walls(b.len(), d)
            .into_iter()
            .filter(|w| wall_excess(b, w).is_zero())
            .collect();
        if !on.is_empty() {
            return Err(StabilityError::OnWall(on));
        }
    }
    Ok(all_walls(b1.len(), d)
        .into_iter()
        .all(|w| wall_excess(b1, &w).is_positive() == wall_excess(b2, &w).is_positive()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn generic_lines(n: usize) -> Vec<[Rat; 3]> {
        // points on the conic t ↦ (1 : t : t²) dualized: lines tangent to a
        // conic are pairwise non-concurrent in triples
        (1..=n as i64).map(|t| [rat(t * t), rat(-2 * t), rat(1)]).collect()
    }

    fn uniform(a: WeightedArrangement, num: i64, den: i64) -> WeightedArrangement {
        a.with_uniform_weight(ratio(num, den)).unwrap()
    }

    #[test]
    fn eps_arithmetic() {
        let half = EpsRat::from_rat(ratio(1, 2));
        let half_minus = EpsRat::new(ratio(1, 2), rat(-1));
        assert!(half_minus < half);
        assert!(half_minus > EpsRat::from_rat(ratio(49, 100)));
        assert!(EpsRat::new(Rat::zero(), rat(1)).is_positive());
        assert_eq!(
            (half.clone() + half_minus.clone()) - half.clone(),
            half_minus
        );
        assert_eq!(half_minus.to_string(), "1/2-1ε");
    }

    #[test]
    fn incidence_generic_eight() {
        let a = incidence_from_lines(&generic_lines(8)).unwrap();
        assert_eq!(a.lines.len(), 8);
        assert_eq!(a.points.len(), 28);
        assert!(a.points.iter().all(|p| p.lines.len() == 2));
    }

    fn five_concurrent_plus_three() -> WeightedArrangement {
        // five lines through (0:0:1): a·x + b·y = 0
        let mut ls: Vec<[Rat; 3]> = (1..=5)
            .map(|t| [rat(1), rat(t), rat(0)])
            .collect();
        ls.extend_from_slice(&generic_lines(3));
        incidence_from_lines(&ls).unwrap()
    }

    #[test]
    fn incidence_concurrent_pencil() {
        let a = five_concurrent_plus_three();
        assert_eq!(a.lines.len(), 8);
        let mult: Vec<u32> =
            a.points.iter().map(|p| p.multiplicity(&a)).collect();
        assert_eq!(mult.iter().filter(|&&m| m == 5).count(), 1);
        // 5·3 pencil-generic intersections + C(3,2) generic ones
        assert_eq!(a.points.len(), 1 + 15 + 3);
    }

    #[test]
    fn incidence_multiplicity_merge() {
        let a = incidence_from_lines(&[
            [rat(1), rat(0), rat(0)],
            [rat(2), rat(0), rat(0)],
            [rat(0), rat(1), rat(0)],
        ])
        .unwrap();
        assert_eq!(a.lines.len(), 2);
        assert_eq!(a.lines[0].multiplicity, 2);
        assert!(matches!(
            incidence_from_lines(&[[rat(0), rat(0), rat(0)]]),
            Err(StabilityError::ZeroTriple(0))
        ));
    }

    #[test]
    fn lc_examples() {
        let generic = uniform(incidence_from_lines(&generic_lines(8)).unwrap(), 1, 2);
        assert_eq!(is_log_canonical(&generic).verdict, LcVerdict::Lc);

        let pencil5 = uniform(five_concurrent_plus_three(), 1, 2);
        let rep = is_log_canonical(&pencil5);
        assert_eq!(rep.verdict, LcVerdict::NotLc);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].attained, EpsRat::from_rat(ratio(5, 2)));

        // four concurrent half-lines sit exactly on the boundary
        let mut ls: Vec<[Rat; 3]> =
            (1..=4).map(|t| [rat(1), rat(t), rat(0)]).collect();
        ls.extend_from_slice(&generic_lines(4));
        let pencil4 = uniform(incidence_from_lines(&ls).unwrap(), 1, 2);
        assert_eq!(is_log_canonical(&pencil4).verdict, LcVerdict::Lc);
    }

    #[test]
    fn git_examples() {
        // 8 half-weighted lines with 5 concurrent: not LC but GIT-stable
        let pencil5 = uniform(five_concurrent_plus_three(), 1, 2);
        let rep = is_git_semistable(&pencil5);
        assert_eq!(rep.verdict, GitVerdict::Stable);
        assert!(rep.violations.is_empty());

        // all 8 lines equal: line weight 4 > (1/3)·4
        let eight_equal = uniform(
            incidence_from_lines(&vec![[rat(1), rat(0), rat(0)]; 8]).unwrap(),
            1,
            2,
        );
        let rep = is_git_semistable(&eight_equal);
        assert_eq!(rep.verdict, GitVerdict::Unstable);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].attained, EpsRat::from_int(4));
        assert_eq!(rep.violations[0].bound, EpsRat::from_rat(ratio(4, 3)));

        // 6 concurrent half-lines are strictly worse than the point bound
        let mut ls: Vec<[Rat; 3]> =
            (1..=6).map(|t| [rat(1), rat(t), rat(0)]).collect();
        ls.extend_from_slice(&generic_lines(2));
        let pencil6 = uniform(incidence_from_lines(&ls).unwrap(), 1, 2);
        assert_eq!(is_git_semistable(&pencil6).verdict, GitVerdict::Unstable);
    }

    /// All abstract incidence types of 8 lines with a single distinguished
    /// worst point: a multiplicity vector with parts ≤ 2 summing to 8, and a
    /// sub-multiset of total ≥ 2 through the point.
    fn corpus() -> Vec<WeightedArrangement> {
        let mut out = Vec::new();
        for doubles in 0..=4u32 {
            let singles = 8 - 2 * doubles;
            let mults: Vec<u32> = std::iter::repeat_n(2, doubles as usize)
                .chain(std::iter::repeat_n(1, singles as usize))
                .collect();
            let k = mults.len();
            for sub in 0u32..1 << k {
                let lines: Vec<ArrangementLine> = mults
                    .iter()
                    .enumerate()
                    .map(|(id, &m)| ArrangementLine { id, multiplicity: m })
                    .collect();
                let through: Vec<usize> =
                    (0..k).filter(|i| sub >> i & 1 == 1).collect();
                let points = if through.len() >= 2 {
                    vec![ArrangementPoint { id: 0, lines: through }]
                } else {
                    Vec::new()
                };
                let weights = vec![EpsRat::from_rat(ratio(2, 5)); k];
                out.push(WeightedArrangement::new(lines, points, weights).unwrap());
            }
        }
        out
    }

    #[test]
    fn git_matches_lc_at_two_fifths() {
        let mut semistable = 0;
        let mut unstable = 0;
        for a in corpus() {
            let git = is_git_semistable(&a);
            let lc = is_log_canonical(&a);
            assert_eq!(
                git.verdict != GitVerdict::Unstable,
                lc.verdict == LcVerdict::Lc,
                "corpus mismatch on {a:?}"
            );
            if git.verdict == GitVerdict::Unstable {
                unstable += 1;
            } else {
                semistable += 1;
            }
        }
        assert!(semistable > 0 && unstable > 0);
    }

    #[test]
    fn walls_at_half() {
        let b = vec![EpsRat::from_rat(ratio(1, 2)); 8];
        let on = walls_containing(&b, 3).unwrap();
        // |I| = 2 with k = 1 (28 walls) and |I| = 4 with k = 2 (70 walls)
        assert_eq!(on.len(), 98);
        assert_eq!(on.iter().filter(|w| w.set.len() == 2).count(), 28);
        assert_eq!(on.iter().filter(|w| w.set.len() == 4).count(), 70);
        assert!(on.iter().all(|w| w.k as usize * 2 == w.set.len()));
        let err = same_chamber(&b, &b, 3).unwrap_err();
        assert!(matches!(err, StabilityError::OnWall(ws) if ws.len() == 98));
    }

    #[test]
    fn segment_two_fifths_to_half() {
        let b1 = vec![EpsRat::from_rat(ratio(2, 5)); 8];
        let b2 = vec![EpsRat::from_rat(ratio(1, 2)); 8];
        let seg = crossed_walls(&b1, &b2, 3).unwrap();
        assert!(seg.crossed.is_empty());
        // the endpoints lie on walls themselves: 98 at ½·1 (|I| ∈ {2,4})
        // and 56 at (2/5)·1 (|I| = 5, k = 2)
        assert_eq!(seg.touched.len(), 98 + 56);
        assert_eq!(crossed_walls(&b1, &b1, 3).unwrap().crossed, Vec::new());
    }

    #[test]
    fn chambers_and_eps_weights() {
        let a = vec![EpsRat::from_rat(ratio(9, 20)); 8];
        let b = vec![EpsRat::from_rat(ratio(47, 100)); 8];
        assert!(same_chamber(&a, &b, 3).unwrap());
        // (½,…,½,½−ε) leaves every wall involving the last coordinate but
        // stays on those among the first seven: its relatively open face
        // has ½·1 in its closure
        let mut perturbed = vec![EpsRat::from_rat(ratio(1, 2)); 8];
        perturbed[7] = EpsRat::new(ratio(1, 2), rat(-1));
        let on_face = walls_containing(&perturbed, 3).unwrap();
        assert_eq!(on_face.len(), 21 + 35); // C(7,2) + C(7,4)
        assert!(on_face.iter().all(|w| !w.set.contains(&8)));
        let half = vec![EpsRat::from_rat(ratio(1, 2)); 8];
        let on_half = walls_containing(&half, 3).unwrap();
        assert!(on_face.iter().all(|w| on_half.contains(w)));
        // being on walls, the perturbed weight has no chamber
        assert!(matches!(
            same_chamber(&a, &perturbed, 3),
            Err(StabilityError::OnWall(_))
        ));
        // domain check: Σb must reach d
        let low = vec![EpsRat::from_rat(ratio(1, 4)); 8];
        assert!(matches!(
            walls_containing(&low, 3),
            Err(StabilityError::OutsideWeightDomain(_))
        ));
    }

    #[test]
    fn lc_monotone_under_weight_decrease() {
        // decreasing any weight preserves LC
        let base = uniform(five_concurrent_plus_three(), 2, 5);
        assert_eq!(is_log_canonical(&base).verdict, LcVerdict::Lc);
        for i in 0..8 {
            let mut w = base.weights.clone();
            w[i] = EpsRat::from_rat(ratio(1, 5));
            let smaller = base.clone().with_weights(w).unwrap();
            assert_eq!(is_log_canonical(&smaller).verdict, LcVerdict::Lc);
        }
    }
}
