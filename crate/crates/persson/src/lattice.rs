//! Integral quadratic lattices given by exact Gram matrices.
//!
//! Lattices are built from expressions such as `"U^7 + E8(-1)^2 + U(2)^3"`
//! over the standard blocks U, A1, E8. Invariants — rank, signature, parity,
//! determinant, discriminant-group invariant factors — are computed with
//! exact integer and rational arithmetic (Bareiss determinants, Smith normal
//! form, symmetric congruence diagonalization), never numerically.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cannot parse lattice expression near `{0}`")]
    Parse(String),
    #[error("Gram matrix is not square/symmetric")]
    BadGram,
    #[error("degenerate lattice (determinant zero)")]
    Degenerate,
    #[error("no even unimodular lattice of signature ({0}, {1})")]
    NoSuchLattice(i64, i64),
    #[error("map is not an isometry of the lattice")]
    NotIsometry,
    #[error("map is not an involution")]
    NotInvolution,
}

type Mat = Vec<Vec<BigInt>>;

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, c) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(n, c);
    for i in 0..n {
        for j in 0..c {
            let mut s = BigInt::zero();
            for t in 0..k {
                s += &a[i][t] * &b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn transpose(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a[0].len());
    let mut out = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

/// An integral lattice presented by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: Mat,
}

/// Complete comparison key: rank, signature, parity, determinant, and the
/// nontrivial invariant factors of the discriminant group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub even: bool,
    pub determinant: BigInt,
    pub discriminant_factors: Vec<BigInt>,
}

impl fmt::Display for LatticeInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facs: Vec<String> =
            self.discriminant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(
            f,
            "rank {}, signature ({}, {}), {}, det {}, discriminant {}",
            self.rank,
            self.signature.0,
            self.signature.1,
            if self.even { "even" } else { "odd" },
            self.determinant,
            if facs.is_empty() { "0".to_string() } else { facs.join(" + ") },
        )
    }
}

impl Lattice {
    pub fn from_gram(gram: Mat) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::BadGram);
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::BadGram);
                }
            }
        }
        Ok(Self { gram })
    }

    /// Parse an orthogonal-sum expression: terms `NAME`, `NAME(s)`,
    /// `NAME^k`, `NAME(s)^k` joined by `+`, where NAME ∈ {U, A1, E8},
    /// `s` an integer scale and `k` a positive multiplicity.
    pub fn parse(expr: &str) -> Result<Self, LatticeError> {
        let mut blocks: Vec<Mat> = Vec::new();
        for term in expr.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(LatticeError::Parse(term.to_string()));
            }
            let (head, power) = match term.split_once('^') {
                Some((h, p)) => {
                    let k: usize =
                        p.trim().parse().map_err(|_| LatticeError::Parse(term.into()))?;
                    if k == 0 {
                        return Err(LatticeError::Parse(term.into()));
                    }
                    (h.trim(), k)
                }
                None => (term, 1),
            };
            let (name, scale) = match head.split_once('(') {
                Some((n, rest)) => {
                    let inner = rest
                        .strip_suffix(')')
                        .ok_or_else(|| LatticeError::Parse(term.to_string()))?;
                    let s: i64 = inner
                        .trim()
                        .parse()
                        .map_err(|_| LatticeError::Parse(term.to_string()))?;
                    (n.trim(), s)
                }
                None => (head, 1),
            };
            let base: Mat = match name {
                "U" => vec![vec![bi(0), bi(1)], vec![bi(1), bi(0)]],
                "A1" => vec![vec![bi(2)]],
                "E8" => e8_gram(),
                _ => return Err(LatticeError::Parse(term.to_string())),
            };
            let scaled: Mat = base
                .iter()
                .map(|row| row.iter().map(|x| x * bi(scale)).collect())
                .collect();
            for _ in 0..power {
                blocks.push(scaled.clone());
            }
        }
        Ok(Self::direct_sum_of(&blocks))
    }

    fn direct_sum_of(blocks: &[Mat]) -> Self {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut gram = zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.len() {
                for j in 0..b.len() {
                    gram[off + i][off + j] = b[i][j].clone();
                }
            }
            off += b.len();
        }
        Self { gram }
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Self::direct_sum_of(&[self.gram.clone(), other.gram.clone()])
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Even iff every diagonal entry is even (then (x,x) ∈ 2ℤ for all x).
    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| (&r[i] % bi(2)).is_zero())
    }

    /// Exact determinant of the Gram matrix (Bareiss fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        bareiss_det(&self.gram)
    }

    /// Signature (p, q): counts of positive and negative squares of any exact
    /// rational diagonalization (Sylvester). Requires nondegeneracy.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        if self.determinant().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let (mut p, mut q) = (0usize, 0usize);
        for k in 0..n {
            if a[k][k].is_zero() {
                // find j > k with a[k][j] ≠ 0 and add row+column j to k: the
                // pivot becomes a[j][j] + 2·a[k][j]. That can still vanish
                // (a[j][j] = −2·a[k][j]); adding row+column j once more then
                // yields 2·a[j][j], which is nonzero in that case.
                let j = (k + 1..n)
                    .find(|&j| !a[k][j].is_zero())
                    .expect("nondegenerate matrix has a usable pivot");
                while a[k][k].is_zero() {
                    for t in 0..n {
                        let v = a[j][t].clone();
                        a[k][t] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                }
            }
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                p += 1;
            } else {
                q += 1;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &pivot;
                for t in 0..n {
                    let v = &a[k][t] * &f;
                    a[i][t] -= v;
                }
                for row in a.iter_mut() {
                    let v = &row[k] * &f;
                    row[i] -= v.clone();
                }
            }
        }
        Ok((p, q))
    }

    /// Invariant factors d₁ | d₂ | … of the discriminant group Λ*/Λ
    /// (the Smith normal form diagonal entries that are ≠ 1, absolute values).
    pub fn discriminant_factors(&self) -> Vec<BigInt> {
        let (d, _, _) = smith_normal_form(&self.gram);
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            let v = d[i][i].abs();
            if !v.is_one() && !v.is_zero() {
                out.push(v);
            }
        }
        out
    }

    pub fn invariants(&self) -> Result<LatticeInvariants, LatticeError> {
        Ok(LatticeInvariants {
            rank: self.rank(),
            signature: self.signature()?,
            even: self.is_even(),
            determinant: self.determinant(),
            discriminant_factors: self.discriminant_factors(),
        })
    }

    /// True iff the two lattices have the same complete comparison key.
    pub fn same_invariants(&self, other: &Lattice) -> Result<bool, LatticeError> {
        Ok(self.invariants()? == other.invariants()?)
    }
}

/// Gram matrix of the (positive definite, unimodular) root lattice E8 in the
/// Bourbaki ordering: chain 1−3−4−5−6−7−8 with node 2 attached to node 4.
pub fn e8_gram() -> Mat {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = zeros(8, 8);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = bi(2);
    }
    for (a, b) in edges {
        g[a - 1][b - 1] = bi(-1);
        g[b - 1][a - 1] = bi(-1);
    }
    g
}

fn bareiss_det(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Mat = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form: returns (D, U, V) with U·M·V = D, U and V unimodular,
/// D diagonal with d₁ | d₂ | ….
pub fn smith_normal_form(m: &Mat) -> (Mat, Mat, Mat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // find a nonzero pivot in the remaining block
        let mut pivot = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // clear column t
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &a[t][j] * &q;
                        a[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &u[t][j] * &q;
                        u[i][j] -= s;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][j], &a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let s = &row[t] * &q;
                        row[j] -= s;
                    }
                    for row in v.iter_mut() {
                        let s = &row[t] * &q;
                        row[j] -= s;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[i][t].is_zero());
            let row_clear = (t + 1..cols).all(|j| a[t][j].is_zero());
            if col_clear && row_clear && !dirty {
                break;
            }
        }
        t += 1;
    }
    // enforce divisibility d_i | d_{i+1}
    let r = rows.min(cols);
    loop {
        let mut changed = false;
        for i in 0..r.saturating_sub(1) {
            let (x, y) = (a[i][i].clone(), a[i + 1][i + 1].clone());
            if x.is_zero() && !y.is_zero() {
                a[i][i] = y.clone();
                a[i + 1][i + 1] = BigInt::zero();
                u.swap(i, i + 1);
                for row in v.iter_mut() {
                    row.swap(i, i + 1);
                }
                changed = true;
            } else if !x.is_zero() && !(&y % &x).is_zero() {
                // fold the two diagonal entries to (gcd, lcm) via the
                // standard 2×2 dance, recorded in U and V
                // add column i+1 to column i:
                for row in a.iter_mut() {
                    let s = row[i + 1].clone();
                    row[i] += s;
                }
                for row in v.iter_mut() {
                    let s = row[i + 1].clone();
                    row[i] += s;
                }
                // re-reduce the 2×2 block via full elimination: easiest to
                // loop the whole outer pass again
                let sub = vec![
                    vec![a[i][i].clone(), a[i][i + 1].clone()],
                    vec![a[i + 1][i].clone(), a[i + 1][i + 1].clone()],
                ];
                let (d2, u2, v2) = smith_normal_form(&sub);
                apply_2x2(&mut a, &mut u, &mut v, i, &d2, &u2, &v2, rows, cols);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // normalize signs to nonnegative
    for i in 0..r {
        if a[i][i].is_negative() {
            for j in 0..cols {
                a[i][j] = -a[i][j].clone();
            }
            for j in 0..rows {
                u[i][j] = -u[i][j].clone();
            }
        }
    }
    (a, u, v)
}

#[allow(clippy::too_many_arguments)]
fn apply_2x2(
    a: &mut Mat,
    u: &mut Mat,
    v: &mut Mat,
    i: usize,
    d2: &Mat,
    u2: &Mat,
    v2: &Mat,
    rows: usize,
    cols: usize,
) {
    // replace rows/cols i, i+1 of the running decomposition by the 2×2 SNF
    for (bi_, br) in [i, i + 1].into_iter().enumerate() {
        for (bj, bc) in [i, i + 1].into_iter().enumerate() {
            a[br][bc] = d2[bi_][bj].clone();
        }
    }
    // U ← diag(…, u2, …)·U ; V ← V·diag(…, v2, …)
    let mut new_rows = vec![vec![BigInt::zero(); rows]; 2];
    for bi_ in 0..2 {
        for j in 0..rows {
            new_rows[bi_][j] =
                &u2[bi_][0] * &u[i][j] + &u2[bi_][1] * &u[i + 1][j];
        }
    }
    u[i] = new_rows[0].clone();
    u[i + 1] = new_rows[1].clone();
    let mut new_cols = vec![vec![BigInt::zero(); 2]; cols];
    for (row_idx, nc) in new_cols.iter_mut().enumerate() {
        for (bj, slot) in nc.iter_mut().enumerate() {
            *slot = &v[row_idx][i] * &v2[0][bj] + &v[row_idx][i + 1] * &v2[1][bj];
        }
    }
    for (row_idx, nc) in new_cols.iter().enumerate() {
        v[row_idx][i] = nc[0].clone();
        v[row_idx][i + 1] = nc[1].clone();
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient rounding toward the value minimizing |a − q·b|
    let q = a / b;
    let r = a - &q * b;
    if (&r * bi(2)).abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

/// The even unimodular lattice of signature (p, q), as an expression: exists
/// iff p, q ≥ 1 (indefinite) and p ≡ q mod 8, and then equals
/// U^min(p,q) + E8(ε)^{|p−q|/8}.
pub fn classify_even_unimodular(p: i64, q: i64) -> Result<String, LatticeError> {
    if p < 1 || q < 1 || (p - q).rem_euclid(8) != 0 {
        return Err(LatticeError::NoSuchLattice(p, q));
    }
    let a = p.min(q);
    let b = (p - q).abs() / 8;
    let eps = if p >= q { 1 } else { -1 };
    Ok(match (a, b) {
        (_, 0) => format!("U^{a}"),
        _ if eps == 1 => format!("U^{a} + E8^{b}"),
        _ => format!("U^{a} + E8(-1)^{b}"),
    })
}

/// An isometric involution of a lattice, given by its integer matrix in the
/// basis of the Gram matrix (columns are images of basis vectors).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Involution {
    matrix: Mat,
}

impl Involution {
    pub fn new(l: &Lattice, matrix: Mat) -> Result<Self, LatticeError> {
        let n = l.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(LatticeError::BadGram);
        }
        if mat_mul(&matrix, &matrix) != identity(n) {
            return Err(LatticeError::NotInvolution);
        }
        let g = l.gram();
        if mat_mul(&transpose(&matrix), &mat_mul(g, &matrix)) != *g {
            return Err(LatticeError::NotIsometry);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// The fixed lattice Λ^σ and anti-fixed lattice Λ^{−σ} with their induced
    /// Gram matrices. Bases are primitive (SNF kernel bases are saturated).
    pub fn fixed_and_antifixed(&self, l: &Lattice) -> (Lattice, Lattice) {
        let n = l.rank();
        let make = |sign: i64| -> Lattice {
            // kernel of (σ − sign·I)
            let mut a = self.matrix.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] -= bi(sign);
            }
            let (d, _, v) = smith_normal_form(&a);
            let mut basis_cols: Vec<usize> = Vec::new();
            for j in 0..n {
                if d[j][j].is_zero() {
                    basis_cols.push(j);
                }
            }
            let k = basis_cols.len();
            // B: n×k matrix of kernel basis vectors
            let mut b = zeros(n, k);
            for (jj, &j) in basis_cols.iter().enumerate() {
                for i in 0..n {
                    b[i][jj] = v[i][j].clone();
                }
            }
            let gram = mat_mul(&transpose(&b), &mat_mul(l.gram(), &b));
            Lattice::from_gram(gram).expect("restricted form is symmetric")
        };
        (make(1), make(-1))
    }
}

/// The rank-62 lattice Λ = U^15 + E8(-1)^4 carrying the relabeling involution.
pub fn big_lambda() -> Lattice {
    Lattice::parse("U^15 + E8(-1)^4").expect("literal expression")
}

/// The relabeling involution ι on [`big_lambda`]: swaps the first seven pairs
/// of U blocks, negates the fifteenth U block, and swaps the E8 blocks in
/// pairs.
pub fn relabel_involution() -> Involution {
    let l = big_lambda();
    let n = l.rank();
    let mut m = zeros(n, n);
    let mut set = |img: usize, src: usize, s: i64| m[img][src] = bi(s);
    // U blocks occupy coordinates 0..30, two per block
    for p in 0..7 {
        let (a, b) = (4 * p, 4 * p + 2);
        for t in 0..2 {
            set(b + t, a + t, 1);
            set(a + t, b + t, 1);
        }
    }
    for t in 0..2 {
        set(28 + t, 28 + t, -1);
    }
    // E8 blocks occupy 30..62, eight per block, swapped in pairs
    for p in 0..2 {
        let (a, b) = (30 + 16 * p, 30 + 16 * p + 8);
        for t in 0..8 {
            set(b + t, a + t, 1);
            set(a + t, b + t, 1);
        }
    }
    Involution::new(&l, m).expect("ι is an isometric involution")
}

/// The transcendental-type lattice T = U(2)^2 + A1(-1)^2 of rank 6.
pub fn small_t() -> Lattice {
    Lattice::parse("U(2)^2 + A1(-1)^2").expect("literal expression")
}
