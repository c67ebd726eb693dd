//! Acceptance suite: one test per acceptance criterion, each asserting
//! exact values (no tolerances anywhere — every check is set or table
//! equality). Expected values marked "brute force" below are frozen from
//! independent oracles written inside this file.

mod common;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use gmcr_core::cases::{load_case, CaseId};
use gmcr_core::model::{binary_to_b4, enumerate_states, LogicMode, DEFAULT_STATE_CAP};
use gmcr_core::oracle::oracle_check;
use gmcr_core::reach::reachable;
use gmcr_core::stability::{
    analyze, compare_reports, AnalyzeError, CompareColumn, Concept, Mark, RowLabel,
};
use gmcr_core::{DmId, MovePolicy, StateId, TruthValue};

fn ids(raw: &[usize]) -> BTreeSet<StateId> {
    raw.iter().map(|&n| StateId(n)).collect()
}

#[test]
fn criterion_1_b4_connectives_match_the_published_truth_table() {
    use TruthValue::{Both as B, False as F, Neither as N, True as T};
    // The published table, transcribed here in its own header order
    // (N, F, T, B) independently of the library's internal tables.
    let order = [N, F, T, B];
    let neg = [N, T, F, B];
    #[rustfmt::skip]
    let conj = [
        [N, F, N, F],
        [F, F, F, F],
        [N, F, T, B],
        [F, F, B, B],
    ];
    #[rustfmt::skip]
    let disj = [
        [N, N, T, T],
        [N, F, T, B],
        [T, T, T, T],
        [T, B, T, B],
    ];
    let mut checked = 0;
    for (i, &a) in order.iter().enumerate() {
        assert_eq!(a.negate(), neg[i], "negate({a})");
        checked += 1;
        for (j, &b) in order.iter().enumerate() {
            assert_eq!(a.conj(b), conj[i][j], "conj({a},{b})");
            assert_eq!(a.disj(b), disj[i][j], "disj({a},{b})");
            checked += 2;
        }
    }
    assert_eq!(checked, 4 + 16 + 16);
    println!("criterion 1 (B4 connectives, 36 exact entries): PASS");
}

#[test]
fn criterion_2_sixteen_state_generation_in_table_order() {
    use TruthValue::{Both as B, False as F, Neither as N, True as T};
    let space = enumerate_states(2, LogicMode::B4, DEFAULT_STATE_CAP).unwrap();
    let expected = [
        [T, T], [T, F], [T, N], [T, B],
        [F, T], [F, F], [F, N], [F, B],
        [N, T], [N, F], [N, N], [N, B],
        [B, T], [B, F], [B, N], [B, B],
    ];
    assert_eq!(space.len(), 16);
    for (i, row) in expected.iter().enumerate() {
        assert_eq!(space.states()[i].assignment, row, "row {}", i + 1);
        assert_eq!(space.states()[i].id.0, i + 1);
    }
    println!("criterion 2 (16-state generation in published row order): PASS");
}

/// Independent brute force for the drift rule: the nine states and the
/// seven allowed pairs are re-transcribed as bare characters, and a row
/// is computed by direct scanning — no library reachability involved.
mod seven_pair_brute_force {
    use std::collections::BTreeSet;

    pub const STATES: [(char, char); 9] = [
        ('T', 'T'),
        ('F', 'T'),
        ('T', 'F'),
        ('F', 'F'),
        ('T', 'N'),
        ('F', 'N'),
        ('T', 'B'),
        ('F', 'B'),
        ('N', 'B'),
    ];

    const PAIRS: [(char, char); 7] = [
        ('B', 'B'),
        ('B', 'F'),
        ('N', 'N'),
        ('N', 'F'),
        ('T', 'T'),
        ('T', 'B'),
        ('T', 'N'),
    ];

    /// Reachable row for `mover` (0 = first coordinate's owner) from the
    /// 1-based state `from`: the mover's own coordinate moves freely, the
    /// other coordinate must follow one of the seven pairs.
    pub fn row(mover: usize, from: usize) -> BTreeSet<usize> {
        let src = STATES[from - 1];
        let mut out = BTreeSet::new();
        for (j, dst) in STATES.iter().enumerate() {
            if j + 1 == from {
                continue;
            }
            let drifting = if mover == 0 {
                (src.1, dst.1)
            } else {
                (src.0, dst.0)
            };
            if PAIRS.contains(&drifting) {
                out.insert(j + 1);
            }
        }
        out
    }
}

#[test]
fn criterion_3_drift_reachability_rows() {
    let mut model = load_case(CaseId::PdB4_9);
    model.policy = MovePolicy::EntailmentDrift;

    let printed_r1: [&[usize]; 9] = [
        &[2, 5, 6, 7, 8, 9],
        &[1, 5, 6, 7, 8, 9],
        &[],
        &[],
        &[3, 4, 6],
        &[3, 4, 5],
        &[3, 4, 8, 9],
        &[3, 4, 7, 9],
        &[3, 4, 7, 8],
    ];
    let printed_r2: [&[usize]; 9] = [
        &[3, 5, 7],
        &[],
        &[1, 5, 7],
        &[],
        &[1, 3, 7],
        &[],
        &[1, 3, 5],
        &[],
        &[],
    ];

    for s in 1..=9usize {
        // The engine must agree with the independent brute force on
        // every row for both movers.
        let engine_r1 = reachable(&model, DmId(1), StateId(s)).unwrap();
        let brute_r1: BTreeSet<StateId> = seven_pair_brute_force::row(0, s)
            .into_iter()
            .map(StateId)
            .collect();
        assert_eq!(engine_r1, brute_r1, "R_1(s{s}) vs brute force");

        let engine_r2 = reachable(&model, DmId(2), StateId(s)).unwrap();
        let brute_r2: BTreeSet<StateId> = seven_pair_brute_force::row(1, s)
            .into_iter()
            .map(StateId)
            .collect();
        assert_eq!(engine_r2, brute_r2, "R_2(s{s}) vs brute force");

        // All nine R_1 rows equal the published table exactly.
        assert_eq!(engine_r1, ids(printed_r1[s - 1]), "R_1(s{s}) vs published");

        // R_2 rows equal the published table plus the documented s9
        // additions at s1, s3, s5, s7; the published empty rows at
        // s2/s4/s6/s8 are reproduced exactly. At s9 itself the rule
        // yields {s2,s4,s6,s8} where the published table prints an empty
        // row — frozen here from the brute force above.
        let expected_r2: BTreeSet<StateId> = match s {
            1 | 3 | 5 | 7 => {
                let mut row = ids(printed_r2[s - 1]);
                row.insert(StateId(9));
                row
            }
            9 => ids(&[2, 4, 6, 8]),
            _ => ids(printed_r2[s - 1]),
        };
        assert_eq!(engine_r2, expected_r2, "R_2(s{s}) vs frozen expectation");
    }
    println!("criterion 3 (drift rule vs published reachability rows): PASS");
}

#[test]
fn criterion_4_stability_reproduction_on_the_nine_state_case() {
    let model = load_case(CaseId::PdB4_9);
    let report = analyze(&model).unwrap();
    let expected: [(Concept, &[usize]); 8] = [
        (Concept::Nash, &[2, 4]),
        (Concept::Gmr, &[2, 3, 4]),
        (Concept::Smr, &[2, 3, 4]),
        (Concept::Seq, &[2, 3, 4]),
        (Concept::CNash, &[2, 4]),
        (Concept::CGmr, &[2, 3, 4]),
        (Concept::CSmr, &[2, 3, 4]),
        (Concept::CSeq, &[2, 3, 4]),
    ];
    for (concept, eq) in expected {
        assert_eq!(report.equilibria(concept), &ids(eq), "{concept}");
    }
    assert_eq!(report.pareto(), &ids(&[1, 2, 3, 7, 8]));
    println!("criterion 4 (nine-state stability table, exact set equality): PASS");
}

#[test]
fn criterion_5_binary_versus_four_valued_comparison_marks() {
    let binary = analyze(&load_case(CaseId::PdBinary)).unwrap();
    let b4 = analyze(&load_case(CaseId::PdB4_9)).unwrap();
    // Binary enumeration: s1=(T,T)=CC, s2=(T,F)=CD, s3=(F,T)=DC,
    // s4=(F,F)=DD. Nine-state ids: s1=(T,T), s2=(F,T), s3=(T,F), s4=(F,F).
    let mapping: BTreeMap<StateId, StateId> = [(1, 1), (2, 3), (3, 2), (4, 4)]
        .into_iter()
        .map(|(a, b)| (StateId(a), StateId(b)))
        .collect();
    let cmp = compare_reports(&binary, &b4, &mapping).unwrap();

    // The published grid: 'b' = equilibrium in both encodings,
    // 'B' = four-valued only, 'A' = binary only, '.' = neither.
    let expected: [(RowLabel, &str); 9] = [
        (RowLabel::Concept(Concept::Nash), ".B.b....."),
        (RowLabel::Concept(Concept::Gmr), "ABBb....."),
        (RowLabel::Concept(Concept::Smr), "ABBb....."),
        (RowLabel::Concept(Concept::Seq), "ABBb....."),
        (RowLabel::Concept(Concept::CNash), ".B.B....."),
        (RowLabel::Concept(Concept::CGmr), "ABBB....."),
        (RowLabel::Concept(Concept::CSmr), "ABBB....."),
        (RowLabel::Concept(Concept::CSeq), "ABBB....."),
        (RowLabel::Pareto, "bbb...BB."),
    ];
    assert_eq!(cmp.columns().len(), 9, "fully mapped grid has nine columns");
    for (row, marks) in expected {
        for (i, want) in marks.chars().enumerate() {
            let got = cmp.mark(row, CompareColumn::B(StateId(i + 1))).unwrap();
            let want = match want {
                'b' => Mark::Both,
                'A' => Mark::OnlyA,
                'B' => Mark::OnlyB,
                _ => Mark::Neither,
            };
            assert_eq!(got, want, "{row} at s{}", i + 1);
        }
    }
    println!("criterion 5 (binary vs four-valued equilibrium marks): PASS");
}

#[test]
fn criterion_6_elmira_binary_to_b4_reencoding() {
    use TruthValue::{Both as B, False as F, True as T};
    // The option-form table (rows = states, columns = modify, delay,
    // accept, abandon, insist) and its published four-valued re-encoding,
    // both transcribed here.
    let option_form = [
        "N Y N N N",
        "Y Y N N N",
        "N N Y N N",
        "Y N Y N N",
        "N Y N N Y",
        "Y Y N N Y",
        "N N Y N Y",
        "Y N Y N Y",
        "- - - Y -",
    ];
    #[rustfmt::skip]
    let reencoded = [
        [F, T, F, F, F],
        [T, T, F, F, F],
        [F, F, T, F, F],
        [T, F, T, F, F],
        [F, T, F, F, T],
        [T, T, F, F, T],
        [F, F, T, F, T],
        [T, F, T, F, T],
        [B, B, B, T, B],
    ];
    for (i, row) in option_form.iter().enumerate() {
        let marks = gmcr_core::model::parse_option_marks(row).unwrap();
        assert_eq!(binary_to_b4(&marks), reencoded[i], "column s{}", i + 1);
    }
    // The built-in cases carry exactly these nine columns.
    let from_marks = load_case(CaseId::ElmiraBinary);
    let direct = load_case(CaseId::ElmiraB4);
    for (i, expected) in reencoded.iter().enumerate() {
        assert_eq!(from_marks.space.states()[i].assignment, expected);
        assert_eq!(direct.space.states()[i].assignment, expected);
    }
    assert_eq!(direct.space.states()[8].assignment, [B, B, B, T, B]);
    println!("criterion 6 (option-form to B4 re-encoding, nine columns): PASS");
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut checked_cases = 0;
    for id in CaseId::ALL {
        let model = load_case(id);
        if model.has_preferences() {
            let discrepancies = oracle_check(&model).unwrap();
            assert!(discrepancies.is_empty(), "{id}: {discrepancies:?}");
            checked_cases += 1;
        } else {
            // Cases without published orders refuse analysis outright.
            assert_eq!(analyze(&model), Err(AnalyzeError::NoPreferences), "{id}");
        }
    }
    assert_eq!(checked_cases, 2);

    let mut by_policy = BTreeMap::new();
    for seed in 0..100u64 {
        let model = common::random_model(seed);
        *by_policy
            .entry(model.policy.kind_name())
            .or_insert(0usize) += 1;
        let discrepancies = oracle_check(&model).unwrap();
        assert!(discrepancies.is_empty(), "seed {seed}: {discrepancies:?}");
    }
    // The generator cycles the seed through all three policies.
    assert_eq!(by_policy.len(), 3, "policies covered: {by_policy:?}");
    println!("criterion 7 (oracle equivalence, built-ins + 100 random models): PASS");
}

#[test]
fn criterion_8_invariant_suite() {
    // Lattice laws of the four-valued connectives, exhaustively.
    let all = TruthValue::ENUM_ORDER;
    for a in all {
        assert_eq!(a.negate().negate(), a);
        assert_eq!(a.conj(a), a);
        assert_eq!(a.disj(a), a);
        for b in all {
            assert_eq!(a.conj(b), b.conj(a));
            assert_eq!(a.disj(b), b.disj(a));
            assert_eq!(a.conj(a.disj(b)), a);
            assert_eq!(a.disj(a.conj(b)), a);
            assert_eq!(a.conj(b).negate(), a.negate().disj(b.negate()));
            for c in all {
                assert_eq!(a.conj(b).conj(c), a.conj(b.conj(c)));
                assert_eq!(a.disj(b).disj(c), a.disj(b.disj(c)));
            }
        }
    }

    for seed in 0..100u64 {
        let model = common::random_model(seed);
        let report = analyze(&model).unwrap();

        // Inclusion chains per decision maker and state, and the
        // coalition-to-individual implication.
        for &s in report.states() {
            let nash = report.stable_dms(Concept::Nash, s);
            let gmr = report.stable_dms(Concept::Gmr, s);
            let smr = report.stable_dms(Concept::Smr, s);
            let seq = report.stable_dms(Concept::Seq, s);
            let cnash = report.stable_dms(Concept::CNash, s);
            assert!(nash.is_subset(smr), "seed {seed} {s}: Nash ⊆ SMR");
            assert!(smr.is_subset(gmr), "seed {seed} {s}: SMR ⊆ GMR");
            assert!(nash.is_subset(seq), "seed {seed} {s}: Nash ⊆ SEQ");
            assert!(seq.is_subset(gmr), "seed {seed} {s}: SEQ ⊆ GMR");
            assert!(cnash.is_subset(nash), "seed {seed} {s}: CNash ⊆ Nash");
        }

        // Pareto set is never empty.
        assert!(!report.pareto().is_empty(), "seed {seed}: empty Pareto set");

        // Relabeling invariance: analyze a permuted copy and map back.
        let mut rng = common::Rng::new(seed.wrapping_mul(0x5851_f42d_4c95_7f2d));
        let (relabeled, new_id_of) = common::relabel_model(&model, &mut rng);
        let permuted = analyze(&relabeled).unwrap();
        let map = |s: StateId| StateId(new_id_of[s.0 - 1]);
        for concept in Concept::ALL {
            let mapped: BTreeSet<StateId> =
                report.equilibria(concept).iter().map(|&s| map(s)).collect();
            assert_eq!(
                &mapped,
                permuted.equilibria(concept),
                "seed {seed}: {concept} not relabeling-invariant"
            );
        }
        let mapped_pareto: BTreeSet<StateId> = report.pareto().iter().map(|&s| map(s)).collect();
        assert_eq!(&mapped_pareto, permuted.pareto(), "seed {seed}: Pareto");

        // Monotone re-tiering leaves the whole report unchanged.
        let retiered = analyze(&common::retier_preserving(&model)).unwrap();
        assert_eq!(report, retiered, "seed {seed}: re-tiering changed the report");
    }
    println!("criterion 8 (invariant suite over 100 random models): PASS");
}
