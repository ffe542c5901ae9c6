//! Randomized property suites backing the exact predicates:
//!
//! * the multiplicative fundamental relation of building data, over all
//!   character pairs, for groups of rank up to 5;
//! * the GGMS edge criterion on realizable matroid polytopes, plus the
//!   explicit non-example;
//! * exact volume coverage of tilings;
//! * invariance of stability verdicts under projective coordinate changes;
//! * invariance of lattice invariants under unimodular congruences.

use proptest::prelude::*;

use persson::cover::{solve_line_bundles, BranchData, BranchLine};
use persson::gf2::{pairing, GroupElement};
use persson::lattice::Lattice;
use persson::polytope::{
    cut_volume, enumerate_tilings, matroid_from_vectors, MatroidPolytope, TilingOptions, Weight,
};
use persson::stability::{incidence_from_lines, is_git_semistable, is_log_canonical};
use persson::{rat, ratio, Rat};

// ---------------------------------------------------------------------------
// fundamental relation
// ---------------------------------------------------------------------------

/// Random branch data over (ℤ/2ℤ)^m with every character degree even: each
/// random labeled line is emitted twice, so Σ_{χ(g)=−1} deg D_g ≡ 0 (mod 2)
/// for every χ and the line-bundle solver always succeeds.
fn branch_strategy() -> impl Strategy<Value = BranchData> {
    (1usize..=5).prop_flat_map(|m| {
        let label = (1u32..(1 << m)).prop_map(move |bits| {
            GroupElement::from_bits(m, bits as u8).unwrap()
        });
        proptest::collection::vec((label, 1i64..=3), 1..=6).prop_map(move |raw| {
            let lines = raw
                .into_iter()
                .enumerate()
                .flat_map(|(i, (label, degree))| {
                    [
                        BranchLine { label: label.clone(), line_id: 2 * i as u32, degree },
                        BranchLine { label, line_id: 2 * i as u32 + 1, degree },
                    ]
                })
                .collect();
            BranchData::new(m, lines).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// deg L_χ + deg L_χ′ = deg L_{χ+χ′} + Σ_{χ(g)=χ′(g)=−1} deg D_g for all
    /// character pairs — exhaustive over Ĝ × Ĝ for each random datum.
    #[test]
    fn fundamental_relation(branch in branch_strategy()) {
        let b = solve_line_bundles(&branch).unwrap();
        let m = branch.m;
        for chi1 in GroupElement::all(m) {
            for chi2 in GroupElement::all(m) {
                let sum = chi1.add(&chi2).unwrap();
                let correction: i64 = branch
                    .lines
                    .iter()
                    .filter(|l| {
                        pairing(&chi1, &l.label).unwrap() == -1
                            && pairing(&chi2, &l.label).unwrap() == -1
                    })
                    .map(|l| l.degree)
                    .sum();
                prop_assert_eq!(
                    b.degree(&chi1) + b.degree(&chi2),
                    b.degree(&sum) + correction
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// GGMS edge criterion
// ---------------------------------------------------------------------------

fn vector_config_strategy() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    (2usize..=3).prop_flat_map(|d| {
        let n = d + 3;
        proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, d..=d),
            n..=n,
        )
        .prop_map(|vs| {
            vs.into_iter()
                .map(|v| {
                    let mut v: Vec<Rat> = v.into_iter().map(rat).collect();
                    if v.iter().all(|x| x == &rat(0)) {
                        v[0] = rat(1); // avoid zero vectors (loops)
                    }
                    v
                })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every polytope of a realizable matroid passes both the edge-direction
    /// criterion and the basis-exchange axiom.
    #[test]
    fn ggms_criterion_on_realizable_matroids(vectors in vector_config_strategy()) {
        match matroid_from_vectors(&vectors) {
            Ok(p) => {
                prop_assert!(p.is_matroid_polytope().unwrap());
                prop_assert!(p.satisfies_exchange_axiom());
            }
            // all length-d minors singular: rank < d, no polytope to test
            Err(_) => {}
        }
    }
}

#[test]
fn ggms_non_example() {
    // {12, 34} ⊂ Δ(2,4): the segment e₁+e₂ → e₃+e₄ is an edge with
    // direction e₃+e₄−e₁−e₂, not parallel to any e_i − e_j
    let verts: std::collections::BTreeSet<u32> = [0b0011u32, 0b1100].into_iter().collect();
    assert!(!persson::polytope::is_matroid_polytope(2, 4, &verts).unwrap());
    assert!(!persson::polytope::exchange_axiom_holds(&verts));
}

// ---------------------------------------------------------------------------
// tiling volume coverage
// ---------------------------------------------------------------------------

#[test]
fn tiling_volume_coverage() {
    // every enumerated tiling covers Δ_b with exact volume equality
    for (d, n) in [(3usize, 7usize), (2, 5)] {
        let b = Weight::uniform(n, ratio(1, 2)).unwrap();
        let full = MatroidPolytope::full(d, n).unwrap();
        let total = cut_volume(&full, &b).unwrap();
        assert!(total > rat(0));
        let classes = enumerate_tilings(d, n, &b, &TilingOptions::default()).unwrap();
        assert!(!classes.is_empty());
        for class in &classes {
            let sum: Rat = class
                .representative
                .pieces
                .iter()
                .map(|p| cut_volume(p, &b).unwrap())
                .sum();
            assert_eq!(sum, total, "coverage fails for (d, n) = ({d}, {n})");
        }
    }
}

// ---------------------------------------------------------------------------
// stability verdicts under projective changes
// ---------------------------------------------------------------------------

type Mat3 = [[i64; 3]; 3];

/// A random invertible integer matrix built from elementary operations, so
/// invertibility holds by construction.
fn gl3_strategy() -> impl Strategy<Value = Mat3> {
    proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..=8).prop_map(|ops| {
        let mut m: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j, k) in ops {
            if i != j {
                // row_j += k · row_i
                for c in 0..3 {
                    m[j][c] += k * m[i][c];
                }
            } else if k < 0 {
                for c in 0..3 {
                    m[i][c] = -m[i][c];
                }
            }
        }
        m
    })
}

fn apply(m: &Mat3, t: &[Rat; 3]) -> [Rat; 3] {
    // covector · matrix: incidences are preserved by any invertible change
    std::array::from_fn(|j| (0..3).map(|i| &t[i] * rat(m[i][j])).sum())
}

fn base_arrangements() -> Vec<Vec<[Rat; 3]>> {
    // tangent lines to a conic: no three concurrent
    let generic: Vec<[Rat; 3]> =
        (1..=8).map(|t| [rat(t * t), rat(-2 * t), rat(1)]).collect();
    // five lines through (0:0:1) plus three generic ones
    let mut concurrent: Vec<[Rat; 3]> =
        (1..=5).map(|t| [rat(1), rat(t), rat(0)]).collect();
    concurrent.extend((1..=3).map(|t| [rat(t * t), rat(-2 * t), rat(1)]));
    // a doubled line inside an otherwise generic arrangement
    let mut doubled = generic[..6].to_vec();
    doubled.push(generic[0].clone());
    doubled.push([rat(49), rat(-14), rat(1)]);
    vec![generic, concurrent, doubled]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// LC and GIT verdicts are projective invariants: any invertible linear
    /// substitution on the line coordinates leaves both reports' verdicts
    /// and violation counts unchanged.
    #[test]
    fn stability_verdicts_are_projective_invariants(m in gl3_strategy()) {
        for triples in base_arrangements() {
            let moved: Vec<[Rat; 3]> = triples.iter().map(|t| apply(&m, t)).collect();
            for w in [ratio(1, 2), ratio(2, 5)] {
                let a = incidence_from_lines(&triples)
                    .unwrap()
                    .with_uniform_weight(w.clone())
                    .unwrap();
                let b = incidence_from_lines(&moved)
                    .unwrap()
                    .with_uniform_weight(w)
                    .unwrap();
                let (lca, lcb) = (is_log_canonical(&a), is_log_canonical(&b));
                prop_assert_eq!(lca.verdict, lcb.verdict);
                prop_assert_eq!(lca.violations.len(), lcb.violations.len());
                let (ga, gb) = (is_git_semistable(&a), is_git_semistable(&b));
                prop_assert_eq!(ga.verdict, gb.verdict);
                prop_assert_eq!(ga.violations.len(), gb.violations.len());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// lattice invariants under unimodular congruences
// ---------------------------------------------------------------------------

fn unimodular_strategy(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(
        (0usize..rank, 0usize..rank, -2i64..=2),
        1..=12,
    )
    .prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, k) in ops {
            if i != j {
                for c in 0..rank {
                    u[j][c] += k * u[i][c];
                }
            } else if k < 0 {
                for c in 0..rank {
                    u[i][c] = -u[i][c];
                }
            }
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Rank, parity, signature, determinant and discriminant-group divisors
    /// are congruence invariants: L and UᵀLU agree for unimodular U.
    #[test]
    fn lattice_invariants_under_unimodular_congruence(
        u in unimodular_strategy(6),
        pick in 0usize..3,
    ) {
        let l = match pick {
            0 => Lattice::parse("U + U(2) + A1(-1)^2").unwrap(),
            1 => Lattice::parse("U(2)^3").unwrap(),
            _ => Lattice::parse("U^3").unwrap(),
        };
        let rank = l.rank();
        prop_assert_eq!(rank, 6);
        let g = l.gram();
        // g' = uᵀ g u
        let mut gp = vec![vec![num::BigInt::from(0); rank]; rank];
        for r in 0..rank {
            for c in 0..rank {
                let mut s = num::BigInt::from(0);
                for a in 0..rank {
                    for b in 0..rank {
                        s += num::BigInt::from(u[a][r]) * &g[a][b]
                            * num::BigInt::from(u[b][c]);
                    }
                }
                gp[r][c] = s;
            }
        }
        let lp = Lattice::from_gram(gp).unwrap();
        prop_assert!(l.same_invariants(&lp).unwrap());
        prop_assert_eq!(l.invariants().unwrap(), lp.invariants().unwrap());
    }
}
