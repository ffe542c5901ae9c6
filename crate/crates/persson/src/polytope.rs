//! Hypersimplices, matroid polytopes, b-cuts, and matroid tilings.
//!
//! The hypersimplex Δ(d,n) is the convex hull of the indicator vectors of
//! d-subsets of {1,…,n}. Matroid subpolytopes are recognized by the
//! Gelfand–Goresky–MacPherson–Serganova edge criterion (every edge parallel
//! to some e_i − e_j), decided exactly: an LP adjacency oracle with a cheap
//! combinatorial certificate fast path. The b-cut Δ_b is the part of the
//! hypersimplex with 0 ≤ x_i ≤ b_i; [`enumerate_tilings`] finds all tilings
//! of Δ_b by face-fitting matroid pieces, up to the coordinate permutations
//! preserving b, with exact rational volumes certifying coverage.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::rc::Rc;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratlp::{min_equality_nonneg, Lp, LpOutcome, Relation};
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("need 1 ≤ d ≤ n ≤ 16, got d = {0}, n = {1}")]
    BadShape(usize, usize),
    #[error("constraint cuts the vertex set to nothing")]
    EmptyVertexSet,
    #[error("vertex set is empty or has mixed cardinalities")]
    BadVertexSet,
    #[error("zero vector in matroid realization")]
    ZeroVector,
    #[error("operands have different (d, n)")]
    ShapeMismatch,
    #[error("weight vector must have n entries in (0, 1]")]
    BadWeight,
    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
}

/// A weight vector b ∈ (0,1]^n defining the cut Δ_b = Δ(d,n) ∩ {x ≤ b}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight {
    b: Vec<Rat>,
}

impl Weight {
    pub fn new(b: Vec<Rat>) -> Result<Self, PolytopeError> {
        if b.is_empty()
            || b.iter().any(|v| !v.is_positive() || *v > Rat::one())
        {
            return Err(PolytopeError::BadWeight);
        }
        Ok(Self { b })
    }

    /// The constant weight (r, …, r) of length n.
    pub fn uniform(n: usize, r: Rat) -> Result<Self, PolytopeError> {
        Self::new(vec![r; n])
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.b[i]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.b
    }

    pub fn sum(&self) -> Rat {
        self.b.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.b.iter().all(|v| *v == self.b[0])
    }

    /// The permutations of {0,…,n−1} fixing b (all of 𝔖_n for uniform b).
    fn symmetry_group(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            if p.iter().enumerate().all(|(i, &j)| self.b[i] == self.b[j]) {
                perms.push(p.clone());
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
        perms
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The constraint x_I ≤ k on a hypersimplex, with I ⊂ {1,…,n} (1-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FlatConstraint {
    #[serde(rename = "I")]
    pub set: Vec<usize>,
    pub k: i64,
}

impl FlatConstraint {
    pub fn new(mut set: Vec<usize>, k: i64) -> Self {
        set.sort_unstable();
        set.dedup();
        Self { set, k }
    }

    pub fn mask(&self) -> u32 {
        self.set.iter().map(|&i| 1u32 << (i - 1)).sum()
    }

    fn from_mask(mask: u32, k: i64) -> Self {
        let set = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        Self { set, k }
    }

    /// Does the 0/1 vertex `v` (as a bitmask) satisfy x_I ≤ k?
    pub fn admits(&self, v: u32) -> bool {
        (v & self.mask()).count_ones() as i64 <= self.k
    }

    /// Is the constraint tight on the vertex?
    pub fn tight_on(&self, v: u32) -> bool {
        (v & self.mask()).count_ones() as i64 == self.k
    }
}

/// A subpolytope of Δ(d,n) presented by its 0/1 vertex set (as d-subset
/// bitmasks) together with the flat constraints that carved it out.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatroidPolytope {
    d: usize,
    n: usize,
    vertices: BTreeSet<u32>,
    constraints: Vec<FlatConstraint>,
}

/// All d-subset bitmasks of {0,…,n−1}.
pub fn hypersimplex_vertex_masks(d: usize, n: usize) -> Result<Vec<u32>, PolytopeError> {
    if d < 1 || d > n || n > 16 {
        return Err(PolytopeError::BadShape(d, n));
    }
    Ok((0u32..1 << n).filter(|m| m.count_ones() as usize == d).collect())
}

/// All C(n,d) vertices of Δ(d,n) as rational points.
pub fn hypersimplex_vertices(d: usize, n: usize) -> Result<Vec<Vec<Rat>>, PolytopeError> {
    Ok(hypersimplex_vertex_masks(d, n)?
        .into_iter()
        .map(|m| mask_point(m, n))
        .collect())
}

/// Indicator point of a subset bitmask.
pub fn mask_point(mask: u32, n: usize) -> Vec<Rat> {
    (0..n).map(|i| rat(i64::from(mask >> i & 1))).collect()
}

impl MatroidPolytope {
    /// The full hypersimplex Δ(d,n).
    pub fn full(d: usize, n: usize) -> Result<Self, PolytopeError> {
        Self::from_constraints(d, n, Vec::new())
    }

    /// The subpolytope of Δ(d,n) cut out by the given flat constraints
    /// (matroid polytopes have all their vertices among the e_I).
    pub fn from_constraints(
        d: usize,
        n: usize,
        cs: Vec<FlatConstraint>,
    ) -> Result<Self, PolytopeError> {
        let vertices: BTreeSet<u32> = hypersimplex_vertex_masks(d, n)?
            .into_iter()
            .filter(|&v| cs.iter().all(|c| c.admits(v)))
            .collect();
        if vertices.is_empty() {
            return Err(PolytopeError::EmptyVertexSet);
        }
        Ok(Self { d, n, vertices, constraints: cs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn constraints(&self) -> &[FlatConstraint] {
        &self.constraints
    }

    pub fn vertex_points(&self) -> Vec<Vec<Rat>> {
        self.vertices.iter().map(|&m| mask_point(m, self.n)).collect()
    }

    /// Affine dimension of the vertex set (full pieces have n − 1).
    pub fn affine_dim(&self) -> usize {
        affine_rank_masks(&self.vertices, self.n)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.n - 1
    }

    /// GGMS edge criterion on this piece's vertex set.
    pub fn is_matroid_polytope(&self) -> Result<bool, PolytopeError> {
        is_matroid_polytope(self.d, self.n, &self.vertices)
    }

    /// Basis-exchange axiom on the vertex set — equivalent to the GGMS edge
    /// criterion, and much faster; the enumeration hot path uses this.
    pub fn satisfies_exchange_axiom(&self) -> bool {
        exchange_axiom_holds(&self.vertices)
    }
}

/// Rank of the span of differences from the first point.
fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let n = points[0].len();
    let mut rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| (0..n).map(|i| &p[i] - &points[0][i]).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pi) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pi);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..n {
                    let s = &rows[rank][c] * &f;
                    rows[r][c] -= s;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Affine rank of a set of 0/1 vertices, by integer fraction-free (Bareiss)
/// elimination — entries stay bounded by minors of a ±1 matrix.
fn affine_rank_masks(vertices: &BTreeSet<u32>, n: usize) -> usize {
    let verts: Vec<u32> = vertices.iter().copied().collect();
    if verts.len() <= 1 {
        return 0;
    }
    let base = verts[0];
    let mut rows: Vec<Vec<i64>> = verts[1..]
        .iter()
        .map(|&v| {
            (0..n)
                .map(|i| i64::from(v >> i & 1) - i64::from(base >> i & 1))
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = 1i64;
    for col in 0..n {
        let Some(pi) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pi);
        let pivot = rows[rank][col];
        for r in rank + 1..rows.len() {
            let factor = rows[r][col];
            for c in 0..n {
                rows[r][c] = (rows[r][c] * pivot - rows[rank][c] * factor) / prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == rows.len() || rank == n {
            break;
        }
    }
    rank
}

/// Is the midpoint of (u, v) a convex combination of `others`? Exact LP.
fn midpoint_in_hull(others: &[u32], u: u32, v: u32, n: usize) -> bool {
    let target: Vec<Rat> = (0..n)
        .map(|i| {
            (rat(i64::from(u >> i & 1)) + rat(i64::from(v >> i & 1))) / rat(2)
        })
        .collect();
    convex_combination_feasible(
        &others.iter().map(|&m| mask_point(m, n)).collect::<Vec<_>>(),
        &target,
    )
}

fn convex_combination_feasible(points: &[Vec<Rat>], target: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = target.len();
    let cols = points.len();
    let mut a = vec![vec![Rat::zero(); cols]; n + 1];
    for (j, p) in points.iter().enumerate() {
        for i in 0..n {
            a[i][j] = p[i].clone();
        }
        a[n][j] = Rat::one();
    }
    let mut b: Vec<Rat> = target.to_vec();
    b.push(Rat::one());
    min_equality_nonneg(a, b, vec![Rat::zero(); cols]).is_some()
}

/// The GGMS criterion: every edge of conv(P) is parallel to some e_i − e_j.
///
/// Pairs at Hamming distance 2 are harmless. A pair (u,v) at larger distance
/// is first dismissed by a swap certificate (two vertices u′, v′ of the set
/// with u′ + v′ = u + v); only when no certificate exists does the exact LP
/// adjacency oracle decide whether the pair spans an edge.
pub fn is_matroid_polytope(
    d: usize,
    n: usize,
    vertices: &BTreeSet<u32>,
) -> Result<bool, PolytopeError> {
    if d < 1 || d > n || n > 16 {
        return Err(PolytopeError::BadShape(d, n));
    }
    if vertices.is_empty()
        || vertices.iter().any(|v| v.count_ones() as usize != d)
    {
        return Err(PolytopeError::BadVertexSet);
    }
    let verts: Vec<u32> = vertices.iter().copied().collect();
    for (ai, &u) in verts.iter().enumerate() {
        'pair: for &v in &verts[ai + 1..] {
            let diff = u ^ v;
            if diff.count_ones() <= 2 {
                continue;
            }
            let only_u = u & !v;
            let only_v = v & !u;
            for i in 0..n as u32 {
                if only_u >> i & 1 == 0 {
                    continue;
                }
                for j in 0..n as u32 {
                    if only_v >> j & 1 == 0 {
                        continue;
                    }
                    let u2 = (u & !(1 << i)) | (1 << j);
                    let v2 = (v & !(1 << j)) | (1 << i);
                    if vertices.contains(&u2) && vertices.contains(&v2) {
                        continue 'pair; // midpoint certificate: not an edge
                    }
                }
            }
            let others: Vec<u32> =
                verts.iter().copied().filter(|&w| w != u && w != v).collect();
            if !midpoint_in_hull(&others, u, v, n) {
                // (u, v) is an edge, and its direction has ≥ 4 nonzero entries
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Basis-exchange axiom on a family of equal-size subsets.
pub fn exchange_axiom_holds(vertices: &BTreeSet<u32>) -> bool {
    let verts: Vec<u32> = vertices.iter().copied().collect();
    let bits = verts.iter().map(|v| 32 - v.leading_zeros()).max().unwrap_or(0);
    let mut member = vec![false; 1usize << bits];
    for &v in &verts {
        member[v as usize] = true;
    }
    for &b1 in &verts {
        for &b2 in &verts {
            if b1 == b2 {
                continue;
            }
            let out = b1 & !b2;
            let inn = b2 & !b1;
            for x in 0..bits {
                if out >> x & 1 == 0 {
                    continue;
                }
                let stripped = b1 & !(1 << x);
                let ok = (0..bits).any(|y| {
                    inn >> y & 1 == 1 && member[(stripped | (1 << y)) as usize]
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// The matroid polytope realized by n vectors in ℚ^d: vertex e_I included iff
/// the d×d minor on I is nonsingular.
pub fn matroid_from_vectors(vectors: &[Vec<Rat>]) -> Result<MatroidPolytope, PolytopeError> {
    let n = vectors.len();
    if n == 0 {
        return Err(PolytopeError::BadVertexSet);
    }
    let d = vectors[0].len();
    if d < 1 || d > n || n > 16 || vectors.iter().any(|v| v.len() != d) {
        return Err(PolytopeError::BadShape(d, n));
    }
    if vectors.iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(PolytopeError::ZeroVector);
    }
    let vertices: BTreeSet<u32> = hypersimplex_vertex_masks(d, n)?
        .into_iter()
        .filter(|&mask| {
            let cols: Vec<&Vec<Rat>> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &vectors[i])
                .collect();
            !rational_det(&cols).is_zero()
        })
        .collect();
    if vertices.is_empty() {
        return Err(PolytopeError::EmptyVertexSet);
    }
    Ok(MatroidPolytope { d, n, vertices, constraints: Vec::new() })
}

fn rational_det(cols: &[&Vec<Rat>]) -> Rat {
    let d = cols.len();
    let mut m: Vec<Vec<Rat>> = (0..d)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut det = Rat::one();
    for k in 0..d {
        let Some(pi) = (k..d).find(|&r| !m[r][k].is_zero()) else {
            return Rat::zero();
        };
        if pi != k {
            m.swap(k, pi);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for r in k + 1..d {
            if !m[r][k].is_zero() {
                let f = &m[r][k] / &pivot;
                for c in k..d {
                    let s = &m[k][c] * &f;
                    m[r][c] -= s;
                }
            }
        }
    }
    det
}

/// Do two pieces intersect in a common proper face (possibly empty)?
///
/// Decided on V-descriptions only: F = shared vertices; an exposing
/// functional for F inside each piece is found (single-constraint fast path,
/// else LP), and an exact LP over the joint convex-combination system
/// verifies that every point of P∩Q lies on both exposed faces. Identical
/// pieces, or one piece being a face of the other, return false.
pub fn face_fitting(p: &MatroidPolytope, q: &MatroidPolytope) -> Result<bool, PolytopeError> {
    if p.d != q.d || p.n != q.n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let one = Weight::uniform(p.n, Rat::one())?;
    let vp: Vec<Vec<Rat>> = p.vertices.iter().map(|&m| mask_point(m, p.n)).collect();
    let vq: Vec<Vec<Rat>> = q.vertices.iter().map(|&m| mask_point(m, q.n)).collect();
    Ok(fitting_on_points(
        &vp,
        &piece_cut_constraints(p, &one),
        &vq,
        &piece_cut_constraints(q, &one),
    ))
}

/// Face-fitting of the cut pieces conv(P) ∩ Δ_b and conv(Q) ∩ Δ_b.
///
/// The pieces of a tiling of Δ_b need only glue along common faces inside
/// the cut, which is strictly weaker than [`face_fitting`] of the raw
/// matroid polytopes: e.g. the middle piece {x_{12345} ≤ 2, x_{45678} ≤ 2}
/// of the three-piece tiling of Δ_½(3,8) meets {x_{123} ≤ 1} in a common
/// facet of the cut pieces, while the raw pieces fail to fit because the
/// intersection is trimmed by the implied inequality x_{45} ≤ 1 — vacuous on
/// the cut, where every coordinate is at most ½.
pub fn cut_face_fitting(
    p: &MatroidPolytope,
    q: &MatroidPolytope,
    b: &Weight,
) -> Result<bool, PolytopeError> {
    if p.d != q.d || p.n != q.n {
        return Err(PolytopeError::ShapeMismatch);
    }
    if b.n() != p.n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let cons_p = piece_cut_constraints(p, b);
    let cons_q = piece_cut_constraints(q, b);
    let vp = cut_vertices(p, b, &cons_p);
    let vq = cut_vertices(q, b, &cons_q);
    Ok(fitting_on_points(&vp, &cons_p, &vq, &cons_q))
}

/// Face-fitting on V-descriptions with known defining inequalities.
fn fitting_on_points(
    vp: &[Vec<Rat>],
    cons_p: &[LinCon],
    vq: &[Vec<Rat>],
    cons_q: &[LinCon],
) -> bool {
    let sp: BTreeSet<&Vec<Rat>> = vp.iter().collect();
    let sq: BTreeSet<&Vec<Rat>> = vq.iter().collect();
    if sp == sq {
        return false;
    }
    let f: BTreeSet<&Vec<Rat>> = sp.intersection(&sq).copied().collect();
    if f == sp || f == sq {
        return false;
    }
    if f.is_empty() {
        // fitting iff the hulls are disjoint
        return !hulls_intersect(vp, vq);
    }
    let fp: BTreeSet<usize> = (0..vp.len()).filter(|&i| f.contains(&vp[i])).collect();
    let fq: BTreeSet<usize> = (0..vq.len()).filter(|&i| f.contains(&vq[i])).collect();
    let Some(func_p) = exposing_functional(vp, &fp, cons_p) else {
        return false;
    };
    let Some(func_q) = exposing_functional(vq, &fq, cons_q) else {
        return false;
    };
    face_contains_intersection(vp, vq, &func_p)
        && face_contains_intersection(vq, vp, &func_q)
}

fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).map(|(ai, xi)| ai * xi).sum()
}

/// A functional (f, c) with f·v = c on F and f·v ≤ c − 1 on the rest.
fn exposing_functional(
    verts: &[Vec<Rat>],
    f_set: &BTreeSet<usize>,
    cons: &[LinCon],
) -> Option<(Vec<Rat>, Rat)> {
    let n = verts[0].len();
    // fast path: F is exactly the tight set of one defining inequality
    for (a, c) in cons {
        let tight: BTreeSet<usize> =
            (0..verts.len()).filter(|&i| dot(a, &verts[i]) == *c).collect();
        if tight == *f_set {
            return Some((a.clone(), c.clone()));
        }
    }
    // general case: LP over (f, c) with margin 1 on the strict side (any
    // strictly exposing functional scales to margin 1, so this is exact)
    let mut lp = Lp::new(n + 1);
    for (i, v) in verts.iter().enumerate() {
        let mut row = v.clone();
        row.push(rat(-1));
        if f_set.contains(&i) {
            lp.add(row, Relation::Eq, rat(0));
        } else {
            lp.add(row, Relation::Le, rat(-1));
        }
    }
    let point = lp.feasible_point()?;
    let c = point[n].clone();
    Some((point[..n].to_vec(), c))
}

/// Joint convex-combination system: columns are λ (over vp) then μ (over
/// vq); rows force Σλu = Σμw coordinatewise, Σλ = 1, Σμ = 1.
fn joint_system(vp: &[Vec<Rat>], vq: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = vp[0].len();
    let cols = vp.len() + vq.len();
    let mut a = vec![vec![Rat::zero(); cols]; n + 2];
    for (j, u) in vp.iter().enumerate() {
        for i in 0..n {
            a[i][j] = u[i].clone();
        }
        a[n][j] = Rat::one();
    }
    for (j, w) in vq.iter().enumerate() {
        for i in 0..n {
            a[i][vp.len() + j] = -w[i].clone();
        }
        a[n + 1][vp.len() + j] = Rat::one();
    }
    let mut b = vec![Rat::zero(); n + 2];
    b[n] = Rat::one();
    b[n + 1] = Rat::one();
    (a, b)
}

fn hulls_intersect(vp: &[Vec<Rat>], vq: &[Vec<Rat>]) -> bool {
    let (a, b) = joint_system(vp, vq);
    let cols = a[0].len();
    min_equality_nonneg(a, b, vec![Rat::zero(); cols]).is_some()
}

/// Is every point of the hull intersection on the face exposed by (f, c)?
fn face_contains_intersection(
    vp: &[Vec<Rat>],
    vq: &[Vec<Rat>],
    (f, c): &(Vec<Rat>, Rat),
) -> bool {
    let (a, b) = joint_system(vp, vq);
    let cols = a[0].len();
    let mut cost = vec![Rat::zero(); cols];
    for (j, u) in vp.iter().enumerate() {
        cost[j] = dot(f, u);
    }
    match min_equality_nonneg(a, b, cost) {
        // f ≤ c everywhere on the first hull, so min = c forces f ≡ c on the
        // intersection
        Some((value, _)) => value == *c,
        None => true, // empty intersection
    }
}

/// Does conv(P) contain a point with 0 < x_i < b_i for all i?
pub fn bcut_interior_meets(p: &MatroidPolytope, b: &Weight) -> Result<bool, PolytopeError> {
    if b.n() != p.n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let verts: Vec<u32> = p.vertices.iter().copied().collect();
    Ok(open_cut_meets(&verts, p.n, b))
}

/// V-description LP: max t with Σλ = 1, λ ≥ 0, t ≤ x_i, x_i ≤ b_i − t where
/// x = Σλu; the hull meets the open box iff the optimum is positive.
fn open_cut_meets(verts: &[u32], n: usize, b: &Weight) -> bool {
    if verts.is_empty() {
        return false;
    }
    // fast path: the vertex barycenter is a hull point, often interior
    let count = rat(verts.len() as i64);
    if (0..n).all(|i| {
        let s: i64 = verts.iter().map(|&u| i64::from(u >> i & 1)).sum();
        let coord = rat(s) / &count;
        coord.is_positive() && coord < *b.get(i)
    }) {
        return true;
    }
    // columns: λ (|verts|), t, then slack s_i for x_i − t ≥ 0 and r_i for
    // x_i + t ≤ b_i; rows: Σλ = 1, then the 2n slack equations
    let cols = verts.len() + 1 + 2 * n;
    let rows = 1 + 2 * n;
    let mut a = vec![vec![Rat::zero(); cols]; rows];
    let mut rhs = vec![Rat::zero(); rows];
    let t_col = verts.len();
    for (j, &u) in verts.iter().enumerate() {
        a[0][j] = Rat::one();
        for i in 0..n {
            let vi = rat(i64::from(u >> i & 1));
            a[1 + i][j] = vi.clone();
            a[1 + n + i][j] = vi;
        }
    }
    rhs[0] = Rat::one();
    for i in 0..n {
        // x_i − t − s_i = 0
        a[1 + i][t_col] = -Rat::one();
        a[1 + i][t_col + 1 + i] = -Rat::one();
        // x_i + t + r_i = b_i
        a[1 + n + i][t_col] = Rat::one();
        a[1 + n + i][t_col + 1 + n + i] = Rat::one();
        rhs[1 + n + i] = b.get(i).clone();
    }
    let mut cost = vec![Rat::zero(); cols];
    cost[t_col] = -Rat::one(); // maximize t
    match min_equality_nonneg(a, rhs, cost) {
        Some((value, _)) => value.is_negative(),
        None => false,
    }
}

/// The hyperplanes x_I = k (2 ≤ |I| ≤ n−2, 1 ≤ k ≤ d−1) meeting the open cut
/// Δ°_b, one canonical (I, k) per hyperplane (x_I = k and x_{I^c} = d−k agree).
pub fn candidate_hyperplanes(
    d: usize,
    n: usize,
    b: &Weight,
) -> Result<Vec<(u32, i64)>, PolytopeError> {
    if d < 1 || d > n || n > 16 {
        return Err(PolytopeError::BadShape(d, n));
    }
    if b.n() != n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let full = (1u32 << n) - 1;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1..full {
        let size = mask.count_ones() as usize;
        if size < 2 || size > n - 2 {
            continue;
        }
        for k in 1..d as i64 {
            let comp = (full & !mask, d as i64 - k);
            let me = (mask, k);
            let canon = std::cmp::min_by_key(me, comp, |&(m, _)| {
                (m.count_ones(), m)
            });
            if !seen.insert(canon) {
                continue;
            }
            if hyperplane_meets_open_cut(d, n, b, canon.0, canon.1) {
                out.push(canon);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn hyperplane_meets_open_cut(d: usize, n: usize, b: &Weight, mask: u32, k: i64) -> bool {
    // free variables x_1..x_n and t; maximize t subject to Σx = d, x_I = k,
    // x_i ≥ t, x_i ≤ b_i − t
    let mut lp = Lp::new(n + 1);
    let mut ones = vec![rat(1); n];
    ones.push(rat(0));
    lp.add(ones, Relation::Eq, rat(d as i64));
    let mut sel: Vec<Rat> = (0..n).map(|i| rat(i64::from(mask >> i & 1))).collect();
    sel.push(rat(0));
    lp.add(sel, Relation::Eq, rat(k));
    for i in 0..n {
        let mut lo = vec![rat(0); n + 1];
        lo[i] = rat(1);
        lo[n] = rat(-1);
        lp.add(lo, Relation::Ge, rat(0));
        let mut hi = vec![rat(0); n + 1];
        hi[i] = rat(1);
        hi[n] = rat(1);
        lp.add(hi, Relation::Le, b.get(i).clone());
    }
    let mut obj = vec![rat(0); n + 1];
    obj[n] = rat(1);
    match lp.maximize(&obj) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// Options steering [`candidate_pool`] and [`enumerate_tilings`].
#[derive(Clone, Debug)]
pub struct TilingOptions {
    /// Drop pieces having a facet that misses the open b-cut (such facets
    /// only refine a tiling outside the cut and produce no new types).
    pub exclude_far_facets: bool,
    /// Abort when the breadth-first piece search admits more pieces.
    pub max_pool: usize,
    /// Abort when the covering search visits more nodes.
    pub max_nodes: usize,
}

impl Default for TilingOptions {
    fn default() -> Self {
        Self { exclude_far_facets: true, max_pool: 20_000, max_nodes: 200_000 }
    }
}

/// All candidate tiling pieces: full-dimensional matroid subpolytopes cut
/// from Δ(d,n) by the candidate halfspaces, meeting the open b-cut (and with
/// no far facet when the option is set).
pub fn candidate_pool(
    d: usize,
    n: usize,
    b: &Weight,
    opts: &TilingOptions,
) -> Result<Vec<MatroidPolytope>, PolytopeError> {
    let hyperplanes = candidate_hyperplanes(d, n, b)?;
    let full = (1u32 << n) - 1;
    let mut halfspaces: Vec<FlatConstraint> = Vec::new();
    for &(mask, k) in &hyperplanes {
        halfspaces.push(FlatConstraint::from_mask(mask, k));
        halfspaces.push(FlatConstraint::from_mask(full & !mask, d as i64 - k));
    }
    let start = MatroidPolytope::full(d, n)?;
    if !bcut_interior_meets(&start, b)? {
        return Ok(Vec::new());
    }
    let mut visited: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut pool: Vec<MatroidPolytope> = Vec::new();
    let mut queue: VecDeque<MatroidPolytope> = VecDeque::new();
    let has_far_facet = |p: &MatroidPolytope| -> bool {
        p.constraints.iter().any(|c| {
            let tight: Vec<u32> =
                p.vertices.iter().copied().filter(|&v| c.tight_on(v)).collect();
            !open_cut_meets(&tight, n, b)
        })
    };
    visited.insert(start.vertices.iter().copied().collect());
    pool.push(start.clone());
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        for h in &halfspaces {
            let verts: BTreeSet<u32> =
                p.vertices.iter().copied().filter(|&v| h.admits(v)).collect();
            if verts.is_empty() || verts == p.vertices {
                continue;
            }
            let key: Vec<u32> = verts.iter().copied().collect();
            if visited.contains(&key) {
                continue;
            }
            visited.insert(key);
            let mut cs = p.constraints.clone();
            cs.push(h.clone());
            let child = MatroidPolytope { d, n, vertices: verts, constraints: cs };
            // All prunes below are monotone, so the subtree can be dropped:
            // slicing never recovers full dimension or a point in the open
            // cut; tight sets only shrink, so a facet away from the cut
            // stays away; and a piece cut out by a compatible family of flat
            // halfspaces stays a matroid when any constraint is dropped, so
            // every admissible piece is reachable through matroid
            // intermediates.
            if !exchange_axiom_holds(&child.vertices)
                || !child.is_full_dimensional()
                || !bcut_interior_meets(&child, b)?
            {
                continue;
            }
            if opts.exclude_far_facets && has_far_facet(&child) {
                continue;
            }
            if pool.len() >= opts.max_pool {
                return Err(PolytopeError::SearchLimit(format!(
                    "piece search exceeded {} pieces",
                    opts.max_pool
                )));
            }
            pool.push(child.clone());
            queue.push_back(child);
        }
    }
    pool.sort_by(|a, c| a.vertices.cmp(&c.vertices));
    Ok(pool)
}

/// A face-fitting covering of Δ_b by matroid pieces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tiling {
    pub d: usize,
    pub n: usize,
    pub pieces: Vec<MatroidPolytope>,
}

/// One symmetry class of tilings: a canonical representative and the number
/// of distinct tilings in its orbit under the b-preserving permutations.
#[derive(Clone, Debug)]
pub struct TilingClass {
    pub representative: Tiling,
    pub orbit_size: u64,
}

/// Canonical invariant of an unordered pair of pieces under coordinate
/// permutations: the lexicographically smallest (over side order and
/// constraint orderings) vector of constraint counts, levels, and the sizes
/// of all Venn regions of the constraint sets. Two pairs with equal
/// signatures are related by a coordinate permutation: matching the regions
/// cell by cell defines one, and it maps each constraint set (with its
/// level) to its counterpart, hence one pair of pieces onto the other.
fn pair_signature(p: &MatroidPolytope, q: &MatroidPolytope) -> Option<Vec<i64>> {
    use itertools::Itertools;
    if p.constraints.len() > 3 || q.constraints.len() > 3 {
        return None; // factorial orderings: not worth it for deep pieces
    }
    let n = p.n;
    let full = (1u32 << n) - 1;
    let mut best: Option<Vec<i64>> = None;
    for (a, z) in [(p, q), (q, p)] {
        let ca: Vec<(u32, i64)> = a.constraints.iter().map(|c| (c.mask(), c.k)).collect();
        let cz: Vec<(u32, i64)> = z.constraints.iter().map(|c| (c.mask(), c.k)).collect();
        for pa in ca.iter().permutations(ca.len()) {
            for pz in cz.iter().permutations(cz.len()) {
                let mut sig = vec![pa.len() as i64, pz.len() as i64];
                sig.extend(pa.iter().map(|c| c.1));
                sig.extend(pz.iter().map(|c| c.1));
                let masks: Vec<u32> =
                    pa.iter().chain(pz.iter()).map(|c| c.0).collect();
                for t in 0..1u32 << masks.len() {
                    let mut region = full;
                    for (idx, &m) in masks.iter().enumerate() {
                        region &= if t >> idx & 1 == 1 { m } else { full & !m };
                    }
                    sig.push(i64::from(region.count_ones()));
                }
                if best.as_ref().map_or(true, |b| sig < *b) {
                    best = Some(sig);
                }
            }
        }
    }
    best
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &j) in perm.iter().enumerate() {
        // coordinate i of the image reads coordinate j of the source
        out |= (mask >> j & 1) << i;
    }
    out
}

/// All tilings of Δ_b(d,n) up to the coordinate permutations preserving b,
/// with orbit sizes. Exhaustive over the candidate pool; coverage certified
/// by exact volumes, gluing by exact face-fitting tests.
pub fn enumerate_tilings(
    d: usize,
    n: usize,
    b: &Weight,
    opts: &TilingOptions,
) -> Result<Vec<TilingClass>, PolytopeError> {
    if d < 1 || d > n || n > 10 {
        return Err(PolytopeError::BadShape(d, n));
    }
    if b.n() != n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let pool = candidate_pool(d, n, b, opts)?;
    if pool.is_empty() {
        return Ok(Vec::new());
    }
    let index_of: BTreeMap<Vec<u32>, usize> = pool
        .iter()
        .enumerate()
        .map(|(i, p)| (p.vertices.iter().copied().collect(), i))
        .collect();
    let perms = b.symmetry_group();
    let permute_piece = |i: usize, perm: &[usize]| -> usize {
        let key: Vec<u32> = {
            let mut v: Vec<u32> = pool[i]
                .vertices
                .iter()
                .map(|&m| permute_mask(m, perm))
                .collect();
            v.sort_unstable();
            v
        };
        *index_of.get(&key).expect("pool is closed under b-preserving permutations")
    };

    // volumes, shared along piece orbits
    let mut ctx = VolumeCtx::default();
    let mut volume: Vec<Option<Rat>> = vec![None; pool.len()];
    let mut orbit_reps: Vec<usize> = Vec::new();
    for i in 0..pool.len() {
        if volume[i].is_some() {
            continue;
        }
        orbit_reps.push(i);
        let v = cut_volume_with_ctx(&pool[i], b, &mut ctx);
        for perm in &perms {
            let j = permute_piece(i, perm);
            volume[j] = Some(v.clone());
        }
    }
    let volume: Vec<Rat> = volume.into_iter().map(Option::unwrap).collect();
    let target = {
        let full = MatroidPolytope::full(d, n)?;
        cut_volume_with_ctx(&full, b, &mut ctx)
    };
    if !target.is_positive() {
        return Ok(Vec::new());
    }

    // covering search: for each piece-orbit representative r, find all piece
    // sets containing r whose cut pieces pairwise face-fit and whose cut
    // volumes sum to the volume of Δ_b
    type CutData = (Vec<Vec<Rat>>, Vec<LinCon>);
    fn cut_of(
        pool: &[MatroidPolytope],
        b: &Weight,
        data: &mut [Option<Rc<CutData>>],
        i: usize,
    ) -> Rc<CutData> {
        if data[i].is_none() {
            let cons = piece_cut_constraints(&pool[i], b);
            let verts = cut_vertices(&pool[i], b, &cons);
            data[i] = Some(Rc::new((verts, cons)));
        }
        data[i].clone().expect("just filled")
    }
    let mut cut_data: Vec<Option<Rc<CutData>>> = vec![None; pool.len()];
    let mut fit_cache: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    // For a permutation-invariant b, fitting verdicts are shared along the
    // symmetry orbit of the unordered pair, recognized by its signature.
    let b_uniform = (1..n).all(|i| b.get(i) == b.get(0));
    let mut sig_cache: BTreeMap<Vec<i64>, bool> = BTreeMap::new();
    let mut fits = |i: usize, j: usize, cache: &mut BTreeMap<(usize, usize), bool>| {
        let key = (i.min(j), i.max(j));
        if let Some(&v) = cache.get(&key) {
            return v;
        }
        let sig = if b_uniform {
            pair_signature(&pool[key.0], &pool[key.1])
        } else {
            None
        };
        if let Some(s) = &sig {
            if let Some(&v) = sig_cache.get(s) {
                cache.insert(key, v);
                return v;
            }
        }
        let cp = cut_of(&pool, b, &mut cut_data, key.0);
        let cq = cut_of(&pool, b, &mut cut_data, key.1);
        let v = fitting_on_points(&cp.0, &cp.1, &cq.0, &cq.1);
        if let Some(s) = sig {
            sig_cache.insert(s, v);
        }
        cache.insert(key, v);
        v
    };
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut nodes = 0usize;
    for &r in &orbit_reps {
        // iterative DFS over extensions by pool index order
        let mut stack: Vec<(Vec<usize>, Rat, usize)> =
            vec![(vec![r], volume[r].clone(), 0)];
        while let Some((set, sum, from)) = stack.pop() {
            nodes += 1;
            if nodes > opts.max_nodes {
                return Err(PolytopeError::SearchLimit(format!(
                    "covering search exceeded {} nodes",
                    opts.max_nodes
                )));
            }
            if sum == target {
                let mut s = set.clone();
                s.sort_unstable();
                found.insert(s);
                continue;
            }
            for c in from..pool.len() {
                if c == r || set.contains(&c) {
                    continue;
                }
                let next = &sum + &volume[c];
                if next > target {
                    continue;
                }
                if set.iter().all(|&s| fits(s, c, &mut fit_cache)) {
                    let mut ns = set.clone();
                    ns.push(c);
                    stack.push((ns, next, c + 1));
                }
            }
        }
    }

    // classify the found tilings into orbits
    let mut classes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for t in &found {
        let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
        for perm in &perms {
            let mut img: Vec<usize> =
                t.iter().map(|&i| permute_piece(i, perm)).collect();
            img.sort_unstable();
            images.insert(img);
        }
        let canon = images.iter().next().expect("orbit nonempty").clone();
        classes.insert(canon, images.len() as u64);
    }
    let mut out: Vec<TilingClass> = classes
        .into_iter()
        .map(|(indices, orbit_size)| TilingClass {
            representative: Tiling {
                d,
                n,
                pieces: indices.iter().map(|&i| pool[i].clone()).collect(),
            },
            orbit_size,
        })
        .collect();
    out.sort_by_key(|c| {
        (
            c.representative.pieces.len(),
            c.representative
                .pieces
                .iter()
                .map(|p| p.vertices.iter().copied().collect::<Vec<u32>>())
                .collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// exact volumes of piece ∩ Δ_b
// ---------------------------------------------------------------------------

/// Shared vertex registry and face-triangulation memo for a batch of volume
/// computations (faces shared between pieces are triangulated once).
#[derive(Default)]
pub struct VolumeCtx {
    coords: Vec<Vec<Rat>>,
    ids: BTreeMap<Vec<Rat>, u32>,
    tri_memo: BTreeMap<Vec<u32>, Vec<Vec<u32>>>,
}

impl VolumeCtx {
    fn intern(&mut self, p: Vec<Rat>) -> u32 {
        if let Some(&id) = self.ids.get(&p) {
            return id;
        }
        let id = self.coords.len() as u32;
        self.coords.push(p.clone());
        self.ids.insert(p, id);
        id
    }
}

/// Normalized volume of conv(P) ∩ {0 ≤ x ≤ b}: the sum of |det| over a
/// simplicial decomposition in an affine chart of {Σx = d} (so (n−1)! times
/// the Euclidean chart volume — exact, and additive for coverage checks).
pub fn cut_volume(p: &MatroidPolytope, b: &Weight) -> Result<Rat, PolytopeError> {
    if b.n() != p.n {
        return Err(PolytopeError::ShapeMismatch);
    }
    let mut ctx = VolumeCtx::default();
    Ok(cut_volume_with_ctx(p, b, &mut ctx))
}

/// Linear constraint a·x ≤ c in ambient coordinates.
type LinCon = (Vec<Rat>, Rat);

fn piece_cut_constraints(p: &MatroidPolytope, b: &Weight) -> Vec<LinCon> {
    let n = p.n;
    let mut cs: Vec<LinCon> = Vec::new();
    for i in 0..n {
        let mut lo = vec![Rat::zero(); n];
        lo[i] = -Rat::one();
        cs.push((lo, Rat::zero())); // −x_i ≤ 0
        let mut hi = vec![Rat::zero(); n];
        hi[i] = Rat::one();
        cs.push((hi, b.get(i).clone())); // x_i ≤ b_i
    }
    for c in &p.constraints {
        let mask = c.mask();
        let row: Vec<Rat> = (0..n).map(|i| rat(i64::from(mask >> i & 1))).collect();
        cs.push((row, rat(c.k)));
    }
    cs
}

fn cut_volume_with_ctx(p: &MatroidPolytope, b: &Weight, ctx: &mut VolumeCtx) -> Rat {
    let n = p.n;
    let cons = piece_cut_constraints(p, b);
    let verts = cut_vertices(p, b, &cons);
    if verts.len() < n {
        return Rat::zero();
    }
    let ids: Vec<u32> = verts.into_iter().map(|v| ctx.intern(v)).collect();
    let points: Vec<Vec<Rat>> = ids.iter().map(|&i| ctx.coords[i as usize].clone()).collect();
    if affine_rank(&points) < n - 1 {
        return Rat::zero();
    }
    let mut face: Vec<u32> = ids;
    face.sort_unstable();
    let simplices = triangulate(&face, &cons, ctx);
    let mut total = Rat::zero();
    for s in &simplices {
        total += simplex_det(s, ctx);
    }
    total
}

/// Vertices of the H-polytope {Σx = d} ∩ cons: enumerate active sets — a
/// subset of tight flat constraints plus coordinates pinned to 0 or b_i —
/// solve the small square system, keep feasible solutions.
fn cut_vertices(p: &MatroidPolytope, b: &Weight, cons: &[LinCon]) -> Vec<Vec<Rat>> {
    let n = p.n;
    let d = rat(p.d as i64);
    let flats: Vec<&FlatConstraint> = p.constraints.iter().collect();
    let nf = flats.len();
    assert!(nf <= 12, "too many flat constraints for vertex enumeration");
    let mut out: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for tight_sel in 0u32..1 << nf {
        let t = tight_sel.count_ones() as usize;
        if t + 1 > n {
            continue;
        }
        let free_size = t + 1;
        // choose the free coordinate set
        for free_mask in 0u32..1 << n {
            if free_mask.count_ones() as usize != free_size {
                continue;
            }
            let fixed: Vec<usize> =
                (0..n).filter(|i| free_mask >> i & 1 == 0).collect();
            let free: Vec<usize> =
                (0..n).filter(|i| free_mask >> i & 1 == 1).collect();
            for assign in 0u32..1 << fixed.len() {
                let mut x = vec![Rat::zero(); n];
                for (bit, &i) in fixed.iter().enumerate() {
                    if assign >> bit & 1 == 1 {
                        x[i] = b.get(i).clone();
                    }
                }
                // rows: Σ_free x = d − Σ_fixed; tight flats
                let mut m: Vec<Vec<Rat>> = Vec::with_capacity(free_size);
                let mut rhs: Vec<Rat> = Vec::with_capacity(free_size);
                m.push(vec![Rat::one(); free_size]);
                rhs.push(&d - fixed.iter().map(|&i| x[i].clone()).sum::<Rat>());
                for (fi, fc) in flats.iter().enumerate() {
                    if tight_sel >> fi & 1 == 0 {
                        continue;
                    }
                    let mask = fc.mask();
                    m.push(
                        free.iter()
                            .map(|&i| rat(i64::from(mask >> i & 1)))
                            .collect(),
                    );
                    rhs.push(
                        rat(fc.k)
                            - fixed
                                .iter()
                                .filter(|&&i| mask >> i & 1 == 1)
                                .map(|&i| x[i].clone())
                                .sum::<Rat>(),
                    );
                }
                let Some(sol) = solve_square(m, rhs) else { continue };
                for (slot, &i) in sol.iter().zip(free.iter()) {
                    x[i] = slot.clone();
                }
                if cons.iter().all(|(a, c)| {
                    a.iter().zip(x.iter()).map(|(ai, xi)| ai * xi).sum::<Rat>() <= *c
                }) {
                    out.insert(x);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn solve_square(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let k = m.len();
    for col in 0..k {
        let pi = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pi);
        rhs.swap(col, pi);
        let pivot = m[col][col].clone();
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..k {
                    let s = &m[col][c] * &f;
                    m[r][c] -= s;
                }
                let s = &rhs[col] * &f;
                rhs[r] -= s;
            }
        }
    }
    Some((0..k).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Recursive boundary triangulation: the facets of a face are the maximal
/// proper tight sets of single constraints; each facet triangulation is
/// coned over an apex vertex. Memoized by vertex-id set, which is sound
/// because facets are geometric (presentation-independent).
fn triangulate(face: &[u32], cons: &[LinCon], ctx: &mut VolumeCtx) -> Vec<Vec<u32>> {
    if let Some(hit) = ctx.tri_memo.get(face) {
        return hit.clone();
    }
    let points: Vec<Vec<Rat>> =
        face.iter().map(|&i| ctx.coords[i as usize].clone()).collect();
    let rank = affine_rank(&points);
    if rank == 0 {
        return vec![vec![face[0]]];
    }
    if rank == 1 {
        // a segment: its endpoints are the extremes in any separating coord
        let result = vec![segment_endpoints(face, ctx)];
        ctx.tri_memo.insert(face.to_vec(), result.clone());
        return result;
    }
    let mut facets: BTreeSet<Vec<u32>> = BTreeSet::new();
    for (a, c) in cons {
        let tight: Vec<u32> = face
            .iter()
            .copied()
            .filter(|&id| {
                let x = &ctx.coords[id as usize];
                a.iter().zip(x.iter()).map(|(ai, xi)| ai * xi).sum::<Rat>() == *c
            })
            .collect();
        if tight.is_empty() || tight.len() == face.len() {
            continue;
        }
        let tp: Vec<Vec<Rat>> =
            tight.iter().map(|&i| ctx.coords[i as usize].clone()).collect();
        if affine_rank(&tp) == rank - 1 {
            facets.insert(tight);
        }
    }
    let apex = face[0];
    let mut simplices = Vec::new();
    for facet in &facets {
        if facet.contains(&apex) {
            continue;
        }
        for s in triangulate(facet, cons, ctx) {
            let mut simplex = s;
            simplex.push(apex);
            simplices.push(simplex);
        }
    }
    ctx.tri_memo.insert(face.to_vec(), simplices.clone());
    simplices
}

fn segment_endpoints(face: &[u32], ctx: &VolumeCtx) -> Vec<u32> {
    // order the collinear points by any coordinate where they differ
    let p0 = &ctx.coords[face[0] as usize];
    let n = p0.len();
    let coord = (0..n)
        .find(|&c| face.iter().any(|&i| ctx.coords[i as usize][c] != p0[c]))
        .expect("rank-1 face has a separating coordinate");
    let min = face
        .iter()
        .copied()
        .min_by(|&a, &bb| {
            ctx.coords[a as usize][coord].cmp(&ctx.coords[bb as usize][coord])
        })
        .unwrap();
    let max = face
        .iter()
        .copied()
        .max_by(|&a, &bb| {
            ctx.coords[a as usize][coord].cmp(&ctx.coords[bb as usize][coord])
        })
        .unwrap();
    vec![min, max]
}

/// |det| of the (n−1)×(n−1) matrix of edge vectors in the chart dropping the
/// last coordinate.
fn simplex_det(simplex: &[u32], ctx: &VolumeCtx) -> Rat {
    let v0 = &ctx.coords[simplex[0] as usize];
    let n = v0.len();
    let rows: Vec<Vec<Rat>> = simplex[1..]
        .iter()
        .map(|&i| {
            let v = &ctx.coords[i as usize];
            (0..n - 1).map(|c| &v[c] - &v0[c]).collect()
        })
        .collect();
    let refs: Vec<&Vec<Rat>> = rows.iter().collect();
    rational_det(&refs).abs()
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

/// Wire format for a tiling:
/// `{"d":3,"n":8,"pieces":[{"constraints":[{"I":[1,2,3],"k":1}]},…]}`.
#[derive(Serialize, Deserialize)]
pub struct TilingJson {
    pub d: usize,
    pub n: usize,
    pub pieces: Vec<PieceJson>,
}

#[derive(Serialize, Deserialize)]
pub struct PieceJson {
    pub constraints: Vec<FlatConstraint>,
}

impl From<&Tiling> for TilingJson {
    fn from(t: &Tiling) -> Self {
        Self {
            d: t.d,
            n: t.n,
            pieces: t
                .pieces
                .iter()
                .map(|p| PieceJson { constraints: p.constraints.clone() })
                .collect(),
        }
    }
}

impl TilingJson {
    pub fn into_tiling(self) -> Result<Tiling, PolytopeError> {
        let pieces: Result<Vec<MatroidPolytope>, PolytopeError> = self
            .pieces
            .into_iter()
            .map(|p| MatroidPolytope::from_constraints(self.d, self.n, p.constraints))
            .collect();
        Ok(Tiling { d: self.d, n: self.n, pieces: pieces? })
    }
}
