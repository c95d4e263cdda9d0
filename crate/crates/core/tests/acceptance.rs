//! Acceptance suite: one test per headline guarantee. Each test prints a
//! `criterion N (...): PASS (x.xs)` line on success and enforces a
//! wall-clock budget, so a run with `--nocapture` doubles as a scorecard.
//!
//! The corpora are seeded and therefore identical on every run: random
//! well-positioned frameworks for the rank-versus-combinatorics
//! crosschecks, random signed quotient multigraphs for the sparsity
//! oracle, the exhaustive catalogue of small gain-tight graphs for
//! construction and realization, and a fixed set of reference frameworks
//! with known answers.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use gridrig_core::characterize::{characterize, crosscheck, crosscheck_plain};
use gridrig_core::geometry::{Colour, PlainFramework, QuadNorm, SymmetricFramework, Vec2};
use gridrig_core::moves::{enumerate_tight, extract_sequence, replay, switching_isomorphic, Mode};
use gridrig_core::quotient::{GainEdge, Sign, SignedQuotientGraph};
use gridrig_core::random::{random_quotient, random_symmetric_framework, rng};
use gridrig_core::rational::{q, qr};
use gridrig_core::realize::realize;
use gridrig_core::rigidity::{
    decompose_flex, lift_flex, orbit_matrix_anti, orbit_matrix_sym, plain_rigidity_matrix,
    rigidity_matrix, rigidity_report, summarize, trivial_flex_dims, FlexClass,
};
use gridrig_core::sparsity::{check_gain_sparsity, oracle_check_by_edge_subsets, SparsityVariant};
use gridrig_core::Q;

/// Seed for the shared random-framework corpus (criteria 1, 2 and 8).
const CORPUS_SEED: u64 = 20260819;

fn pass(criterion: usize, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!(
        "criterion {criterion} ({name}): PASS ({:.1}s)",
        elapsed.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {:.0}s budget: {:.1}s",
        budget.as_secs_f64(),
        elapsed.as_secs_f64()
    );
}

fn v2(x: i64, y: i64) -> Vec2 {
    Vec2::new(q(x), q(y))
}

fn vr(xn: i64, xd: i64, yn: i64, yd: i64) -> Vec2 {
    Vec2::new(qr(xn, xd), qr(yn, yd))
}

fn edge(id: &str, u: usize, v: usize, gain: Sign) -> GainEdge {
    GainEdge {
        id: id.to_string(),
        u,
        v,
        gain,
    }
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Q::is_zero)
}

/// Criterion 1: on 1,000 seeded random well-positioned ℓ∞ frameworks with
/// at most five orbits, the rank route and the monochrome-decomposition
/// route must agree on symmetric isostaticity in every single case.
#[test]
fn criterion_1_sym_theorem_crosscheck() {
    let start = Instant::now();
    let norm = QuadNorm::linf();
    let mut r = rng(CORPUS_SEED);
    for case in 0..1000 {
        let fw = random_symmetric_framework(&mut r, &norm, 5, 12);
        let check = crosscheck(&fw).expect("well-positioned by construction");
        assert!(
            check.sym_agree,
            "case {case}: rank says sym_isostatic = {}, combinatorics says {}",
            check.rank.sym_isostatic, check.combinatorial.sym_isostatic
        );
    }
    pass(
        1,
        "sym isostatic: rank agrees with monochrome criterion",
        start,
        Duration::from_secs(60),
    );
}

/// Criterion 2: on the same corpus (same seed), full agreement for
/// anti-symmetric isostaticity and for infinitesimal rigidity.
#[test]
fn criterion_2_anti_and_rigid_crosscheck() {
    let start = Instant::now();
    let norm = QuadNorm::linf();
    let mut r = rng(CORPUS_SEED);
    for case in 0..1000 {
        let fw = random_symmetric_framework(&mut r, &norm, 5, 12);
        let check = crosscheck(&fw).expect("well-positioned by construction");
        assert!(
            check.anti_agree,
            "case {case}: rank says anti_isostatic = {}, combinatorics says {}",
            check.rank.anti_isostatic, check.combinatorial.anti_isostatic
        );
        assert!(
            check.rigid_agree,
            "case {case}: rank says inf_rigid = {}, combinatorics says {}",
            check.rank.inf_rigid, check.combinatorial.inf_rigid
        );
    }
    pass(
        2,
        "anti isostatic and rigidity: rank agrees with combinatorics",
        start,
        Duration::from_secs(60),
    );
}

/// Criterion 3: for 500 random frameworks the rigidity matrix rank and
/// nullity split exactly across the two orbit matrices, and every kernel
/// vector decomposes into a symmetric and an anti-symmetric part that are
/// themselves kernel vectors summing back to the original.
#[test]
fn criterion_3_decomposition_laws() {
    let start = Instant::now();
    let norm = QuadNorm::linf();
    let mut r = rng(CORPUS_SEED + 1);
    for case in 0..500 {
        let fw = random_symmetric_framework(&mut r, &norm, 5, 12);
        let df = rigidity_matrix(&fw).unwrap().matrix;
        let o1 = orbit_matrix_sym(&fw).unwrap().matrix;
        let o2 = orbit_matrix_anti(&fw).unwrap().matrix;
        let sd = summarize(&df);
        let s1 = summarize(&o1);
        let s2 = summarize(&o2);
        assert_eq!(
            sd.rank,
            s1.rank + s2.rank,
            "case {case}: rank must be additive across the orbit matrices"
        );
        assert_eq!(
            sd.nullity,
            s1.nullity + s2.nullity,
            "case {case}: nullity must be additive across the orbit matrices"
        );
        for w in df.nullspace() {
            let (sym_part, anti_part) = decompose_flex(&fw, &w);
            let lifted_sym = lift_flex(&fw, FlexClass::Symmetric, &sym_part);
            let lifted_anti = lift_flex(&fw, FlexClass::AntiSymmetric, &anti_part);
            assert!(
                is_zero_vec(&df.mul_vec(&lifted_sym)),
                "case {case}: the symmetric part must again be a flex"
            );
            assert!(
                is_zero_vec(&df.mul_vec(&lifted_anti)),
                "case {case}: the anti-symmetric part must again be a flex"
            );
            let sum: Vec<Q> = lifted_sym
                .iter()
                .zip(&lifted_anti)
                .map(|(a, b)| a + b)
                .collect();
            assert_eq!(sum, w, "case {case}: the parts must reassemble the flex");
        }
    }
    pass(3, "flex decomposition laws", start, Duration::from_secs(30));
}

/// Criterion 4: on 1,000 random signed quotient multigraphs (at most five
/// orbits, twelve edges) the polynomial gain-sparsity check must agree
/// with the exhaustive edge-subset oracle for both count variants.
#[test]
fn criterion_4_sparsity_oracle_equivalence() {
    let start = Instant::now();
    let mut r = rng(CORPUS_SEED + 2);
    for case in 0..1000 {
        let quotient = random_quotient(&mut r, 5, 12);
        for variant in [SparsityVariant::TwoTwoOne, SparsityVariant::TwoTwoZero] {
            let checked = check_gain_sparsity(&quotient, variant).unwrap();
            let oracle = oracle_check_by_edge_subsets(&quotient, variant).unwrap();
            assert_eq!(
                checked.sparse,
                oracle.sparse,
                "case {case}, {} counts: checker and oracle disagree on {quotient:?}",
                variant.name()
            );
        }
    }
    pass(
        4,
        "gain-sparsity checker matches subset oracle",
        start,
        Duration::from_secs(120),
    );
}

/// Criterion 5: exhaustively over every gain-tight graph with at most four
/// orbits (up to switching isomorphism), a symmetric construction sequence
/// exists, an anti-symmetric one exists whenever the graph is loopless,
/// and replaying any extracted sequence rebuilds the input graph up to
/// switching isomorphism.
#[test]
fn criterion_5_construction_completeness() {
    let start = Instant::now();
    let mut classes = 0usize;
    let mut loopless_classes = 0usize;
    for n in 1..=4 {
        for quotient in enumerate_tight(n, false).unwrap() {
            let mut modes = vec![Mode::Symmetric];
            if !quotient.has_loops() {
                modes.push(Mode::AntiSymmetric);
                loopless_classes += 1;
            }
            classes += 1;
            for mode in modes {
                let seq = extract_sequence(&quotient, mode).unwrap_or_else(|e| {
                    panic!("{} extraction failed for {quotient:?}: {e}", mode.name())
                });
                let rebuilt = replay(&seq).unwrap();
                assert!(
                    switching_isomorphic(&rebuilt, &quotient).unwrap(),
                    "{} replay diverged for {quotient:?}",
                    mode.name()
                );
            }
        }
    }
    assert!(classes > 0 && loopless_classes > 0);
    println!("  covered {classes} tight classes ({loopless_classes} loopless)");
    pass(
        5,
        "construction extraction over all small tight graphs",
        start,
        Duration::from_secs(300),
    );
}

/// Criterion 6: every graph from criterion 5 realizes, in each mode its
/// sequence exists for, as a framework whose orbit matrix for that mode
/// has full rank 2·orbits − 1 and a one-dimensional kernel.
#[test]
fn criterion_6_realization_soundness() {
    let start = Instant::now();
    let norm = QuadNorm::linf();
    for n in 1..=4usize {
        for quotient in enumerate_tight(n, false).unwrap() {
            let mut modes = vec![Mode::Symmetric];
            if !quotient.has_loops() {
                modes.push(Mode::AntiSymmetric);
            }
            for mode in modes {
                let seq = extract_sequence(&quotient, mode).unwrap();
                let result = realize(&seq, &norm).unwrap_or_else(|e| {
                    panic!("{} realization failed for {quotient:?}: {e}", mode.name())
                });
                let report = &result.certificate.rank;
                let orbit = match mode {
                    Mode::Symmetric => &report.sym,
                    Mode::AntiSymmetric => &report.anti,
                };
                assert_eq!(
                    orbit.rank,
                    2 * n - 1,
                    "{} realization of {quotient:?} misses full orbit rank",
                    mode.name()
                );
                assert_eq!(
                    orbit.nullity,
                    1,
                    "{} realization of {quotient:?} keeps a non-trivial flex",
                    mode.name()
                );
            }
        }
    }
    pass(
        6,
        "certified realization over all small tight graphs",
        start,
        Duration::from_secs(300),
    );
}

/// The shared quotient of the two reference reflection frameworks: three
/// orbits, a parallel pair with opposite gains, a second parallel pair, and
/// one connecting edge — five edges, gain-tight.
fn reference_quotient() -> SignedQuotientGraph {
    SignedQuotientGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            edge("ab1", 0, 1, Sign::Plus),
            edge("ab2", 0, 1, Sign::Minus),
            edge("cb1", 2, 1, Sign::Plus),
            edge("cb2", 2, 1, Sign::Minus),
            edge("ca", 2, 0, Sign::Plus),
        ],
    )
    .unwrap()
}

/// Criterion 7: reference frameworks with known answers, checked exactly.
/// Three plain ℓ∞ frameworks with two, one and zero degrees of freedom
/// (rigidity-matrix nullities 4, 3, 2), then two reflection frameworks on
/// the shared five-edge quotient: one symmetrically isostatic, one
/// anti-symmetrically isostatic, neither infinitesimally rigid — five
/// orbit edges cannot reach the covering rank 2·(2·orbits) − 2.
#[test]
fn criterion_7_reference_frameworks() {
    let start = Instant::now();
    let norm = QuadNorm::linf();

    let two_dof = PlainFramework::new(
        norm.clone(),
        vec![v2(0, 0), v2(5, 1), v2(3, 5)],
        vec![(0, 1), (0, 2)],
    )
    .unwrap();
    let one_dof = PlainFramework::new(
        norm.clone(),
        vec![v2(0, 0), v2(5, 1), v2(3, 5)],
        vec![(0, 1), (0, 2), (1, 2)],
    )
    .unwrap();
    let rigid = PlainFramework::new(
        norm.clone(),
        vec![v2(0, 0), v2(5, 1), v2(-1, 5), v2(6, 7)],
        vec![(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 2)],
    )
    .unwrap();
    for (fw, expected_nullity) in [(&two_dof, 4), (&one_dof, 3), (&rigid, 2)] {
        let df = summarize(&plain_rigidity_matrix(fw).unwrap().matrix);
        assert_eq!(df.nullity, expected_nullity);
        let check = crosscheck_plain(fw).unwrap();
        assert!(check.rigid_agree && check.isostatic_agree);
    }

    let quotient = reference_quotient();
    let sym_fw = SymmetricFramework::new(
        norm.clone(),
        quotient.clone(),
        vec![v2(0, -2), vr(1, 2, -1, 1), vr(3, 2, -3, 2)],
    )
    .unwrap();
    let report = rigidity_report(&sym_fw).unwrap();
    assert!(report.sym_isostatic, "reference framework must be sym-isostatic");
    assert!(!report.anti_isostatic);
    assert!(!report.inf_rigid);
    let comb = characterize(&sym_fw).unwrap();
    assert!(comb.sym_isostatic && !comb.anti_isostatic && !comb.inf_rigid);

    let anti_fw = SymmetricFramework::new(
        norm,
        quotient,
        vec![vr(0, 1, -1, 2), vr(3, 2, -1, 2), vr(0, 1, -3, 2)],
    )
    .unwrap();
    let report = rigidity_report(&anti_fw).unwrap();
    assert!(report.anti_isostatic, "reference framework must be anti-isostatic");
    assert!(!report.sym_isostatic);
    assert!(!report.inf_rigid);
    let comb = characterize(&anti_fw).unwrap();
    assert!(comb.anti_isostatic && !comb.sym_isostatic && !comb.inf_rigid);

    pass(7, "reference frameworks", start, Duration::from_secs(30));
}

/// Criterion 8: structural invariants over every generated framework —
/// random ℓ∞ and ℓ¹ corpora plus realizations of the small tight graphs:
/// anti-isostatic frameworks have loopless quotients, fixed bars are
/// always coloured F1, the trivial-flex dimensions are always (2, 1, 1),
/// and the translations actually lie in the matching kernels. Violations
/// are counted and must number zero.
#[test]
fn criterion_8_structural_invariants() {
    let start = Instant::now();
    let mut corpus: Vec<SymmetricFramework> = Vec::new();
    let linf = QuadNorm::linf();
    let l1 = QuadNorm::l1();
    let mut r = rng(CORPUS_SEED);
    for _ in 0..500 {
        corpus.push(random_symmetric_framework(&mut r, &linf, 5, 12));
    }
    let mut r = rng(CORPUS_SEED + 3);
    for _ in 0..250 {
        corpus.push(random_symmetric_framework(&mut r, &l1, 5, 12));
    }
    for quotient in enumerate_tight(3, false).unwrap() {
        let mut modes = vec![Mode::Symmetric];
        if !quotient.has_loops() {
            modes.push(Mode::AntiSymmetric);
        }
        for mode in modes {
            let seq = extract_sequence(&quotient, mode).unwrap();
            corpus.push(realize(&seq, &linf).unwrap().framework);
        }
    }

    let mut violations = 0usize;
    for fw in &corpus {
        let report = rigidity_report(fw).unwrap();
        if report.anti_isostatic && fw.quotient().has_loops() {
            violations += 1;
        }
        let colours = fw.colour_edges().unwrap();
        for (k, e) in fw.quotient().edges().iter().enumerate() {
            if e.is_loop() && colours.quotient_colours[k] != Colour::F1 {
                violations += 1;
            }
        }
        if report.trivial_dims != (2, 1, 1) || trivial_flex_dims(fw.norm()) != (2, 1, 1) {
            violations += 1;
        }

        // The trivial flexes are flexes: both unit translations annihilate
        // the rigidity matrix; the mirror-parallel one, folded to an orbit
        // velocity field, lies in the symmetric orbit kernel and the
        // mirror-perpendicular one in the anti-symmetric orbit kernel.
        let df = rigidity_matrix(fw).unwrap().matrix;
        let n = fw.quotient().n_orbits();
        for translation in [v2(1, 0), v2(0, 1)] {
            let field: Vec<Q> = (0..2 * n)
                .flat_map(|_| [translation.x.clone(), translation.y.clone()])
                .collect();
            if !is_zero_vec(&df.mul_vec(&field)) {
                violations += 1;
            }
        }
        let parallel = fw.norm().denormalize(&Vec2::new(Q::zero(), Q::one()));
        let perpendicular = fw.norm().denormalize(&Vec2::new(Q::one(), Q::zero()));
        let orbit_field = |d: &Vec2| -> Vec<Q> {
            (0..n).flat_map(|_| [d.x.clone(), d.y.clone()]).collect()
        };
        let o1 = orbit_matrix_sym(fw).unwrap().matrix;
        let o2 = orbit_matrix_anti(fw).unwrap().matrix;
        if !is_zero_vec(&o1.mul_vec(&orbit_field(&parallel))) {
            violations += 1;
        }
        if !is_zero_vec(&o2.mul_vec(&orbit_field(&perpendicular))) {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "structural invariants must never be violated");
    println!("  checked {} frameworks", corpus.len());
    pass(8, "structural invariants", start, Duration::from_secs(120));
}
