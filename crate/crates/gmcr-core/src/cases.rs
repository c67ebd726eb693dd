//! Built-in conflict models, exactly as published: the prisoner's dilemma
//! in binary and four-valued form, the Elmira groundwater dispute, and
//! the Russia–Ukraine frame. Used by tests, demos, and the `case` CLI
//! subcommand; the same models also ship as files in `cases/`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::b4::OptionMark;
use crate::b4::TruthValue::{Both, False, Neither, True};
use crate::model::{
    binary_to_b4, enumerate_states, restrict_states, ConflictModel, DecisionMaker, DmId,
    LogicMode, OptionDef, PreferenceOrder, StateId, StateSpace, TransitionSet, DEFAULT_STATE_CAP,
};
use crate::reach::{Adjacency, MovePolicy};

/// Identifier of a built-in case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// Classical prisoner's dilemma: 2 DMs, one binary option each.
    PdBinary,
    /// Prisoner's dilemma over B4: the full 16-state frame, no preferences.
    PdB4_16,
    /// Prisoner's dilemma over B4 reduced to 9 states, with the published
    /// preference orders and the published reachability rows verbatim.
    PdB4_9,
    /// Elmira conflict in binary option form. The wildcard column forces
    /// the state space into B4 (state 9 imports as B everywhere except
    /// the abandon option), so the model's logic mode is `b4`; the name
    /// records the Y/N/- source form.
    ElmiraBinary,
    /// Elmira conflict re-encoded directly in B4.
    ElmiraB4,
    /// Russia–Ukraine frame: 2 DMs, one option each, all 16 B4 states,
    /// no preferences.
    RussiaUkraineB4,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::PdBinary,
        CaseId::PdB4_16,
        CaseId::PdB4_9,
        CaseId::ElmiraBinary,
        CaseId::ElmiraB4,
        CaseId::RussiaUkraineB4,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            CaseId::PdBinary => "pd-binary",
            CaseId::PdB4_16 => "pd-b4-16",
            CaseId::PdB4_9 => "pd-b4-9",
            CaseId::ElmiraBinary => "elmira-binary",
            CaseId::ElmiraB4 => "elmira-b4",
            CaseId::RussiaUkraineB4 => "russia-ukraine-b4",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An unrecognized case name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownCase;

impl fmt::Display for UnknownCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown case id")
    }
}

impl core::error::Error for UnknownCase {}

impl FromStr for CaseId {
    type Err = UnknownCase;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or(UnknownCase)
    }
}

/// Loads a built-in model. Every case validates with zero diagnostics;
/// cases without published preference orders carry none and refuse
/// stability analysis until orders are supplied.
pub fn load_case(id: CaseId) -> ConflictModel {
    match id {
        CaseId::PdBinary => pd_binary(),
        CaseId::PdB4_16 => pd_b4_16(),
        CaseId::PdB4_9 => pd_b4_9(),
        CaseId::ElmiraBinary => elmira(true),
        CaseId::ElmiraB4 => elmira(false),
        CaseId::RussiaUkraineB4 => russia_ukraine(),
    }
}

fn pd_dms() -> Vec<DecisionMaker> {
    vec![
        DecisionMaker { id: DmId(1), name: "DM1".into() },
        DecisionMaker { id: DmId(2), name: "DM2".into() },
    ]
}

fn pd_options() -> Vec<OptionDef> {
    vec![
        OptionDef::new("nc1", DmId(1), "Not Confess"),
        OptionDef::new("nc2", DmId(2), "Not Confess"),
    ]
}

fn pd_binary() -> ConflictModel {
    // States enumerate as s1=(T,T) s2=(T,F) s3=(F,T) s4=(F,F).
    // Each prisoner most prefers confessing alone, then mutual silence,
    // then mutual confession, and last being confessed on.
    ConflictModel {
        dms: pd_dms(),
        options: pd_options(),
        logic: LogicMode::Binary,
        space: enumerate_states(2, LogicMode::Binary, DEFAULT_STATE_CAP).unwrap(),
        preferences: Some(vec![
            PreferenceOrder::strict(DmId(1), &[3, 1, 4, 2].map(StateId)).unwrap(),
            PreferenceOrder::strict(DmId(2), &[2, 1, 4, 3].map(StateId)).unwrap(),
        ]),
        policy: MovePolicy::FixedOthers,
    }
}

fn pd_b4_16() -> ConflictModel {
    ConflictModel {
        dms: pd_dms(),
        options: pd_options(),
        logic: LogicMode::B4,
        space: enumerate_states(2, LogicMode::B4, DEFAULT_STATE_CAP).unwrap(),
        preferences: None,
        policy: MovePolicy::EntailmentDrift,
    }
}

/// The nine retained assignments, in published order.
fn nine_state_assignments() -> Vec<Vec<crate::b4::TruthValue>> {
    vec![
        vec![True, True],
        vec![False, True],
        vec![True, False],
        vec![False, False],
        vec![True, Neither],
        vec![False, Neither],
        vec![True, Both],
        vec![False, Both],
        vec![Neither, Both],
    ]
}

fn pd_b4_9() -> ConflictModel {
    let full = enumerate_states(2, LogicMode::B4, DEFAULT_STATE_CAP).unwrap();
    let space = restrict_states(&full, &nine_state_assignments()).unwrap();

    // The published reachability rows, verbatim. The four-valued drift
    // rule reproduces every R_1 row but not every R_2 row, so the case
    // pins the printed table as explicit data.
    let mut adjacency = Adjacency::new();
    let r1: [&[usize]; 9] = [
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
    let r2: [&[usize]; 9] = [
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
    for (i, row) in r1.iter().enumerate() {
        adjacency.insert_row(DmId(1), StateId(i + 1), row.iter().map(|&n| StateId(n)));
    }
    for (i, row) in r2.iter().enumerate() {
        adjacency.insert_row(DmId(2), StateId(i + 1), row.iter().map(|&n| StateId(n)));
    }

    ConflictModel {
        dms: pd_dms(),
        options: pd_options(),
        logic: LogicMode::B4,
        space,
        preferences: Some(vec![
            PreferenceOrder::strict(DmId(1), &[2, 1, 4, 3, 8, 6, 7, 5, 9].map(StateId)).unwrap(),
            PreferenceOrder::strict(DmId(2), &[7, 8, 9, 5, 6, 3, 1, 4, 2].map(StateId)).unwrap(),
        ]),
        policy: MovePolicy::Explicit(adjacency),
    }
}

/// The Elmira option-form table: one row per state, one mark per option
/// (modify, delay, accept, abandon, insist). State 9 is the abandonment
/// state, open on every other option.
pub const ELMIRA_MARKS: [[OptionMark; 5]; 9] = {
    use OptionMark::{No as N, Wildcard as W, Yes as Y};
    [
        [N, Y, N, N, N],
        [Y, Y, N, N, N],
        [N, N, Y, N, N],
        [Y, N, Y, N, N],
        [N, Y, N, N, Y],
        [Y, Y, N, N, Y],
        [N, N, Y, N, Y],
        [Y, N, Y, N, Y],
        [W, W, W, Y, W],
    ]
};

fn elmira(from_marks: bool) -> ConflictModel {
    let assignments: Vec<Vec<crate::b4::TruthValue>> = if from_marks {
        ELMIRA_MARKS.iter().map(|row| binary_to_b4(row)).collect()
    } else {
        // Direct four-valued encoding of the same nine states.
        vec![
            vec![False, True, False, False, False],
            vec![True, True, False, False, False],
            vec![False, False, True, False, False],
            vec![True, False, True, False, False],
            vec![False, True, False, False, True],
            vec![True, True, False, False, True],
            vec![False, False, True, False, True],
            vec![True, False, True, False, True],
            vec![Both, Both, Both, True, Both],
        ]
    };

    // Classical move structure of the dispute: the ministry's order
    // modification and Uniroyal's acceptance or abandonment are one-way
    // doors; delaying and insisting can be taken back. Abandonment
    // (state 9) ends the game for everyone.
    let mut adjacency = Adjacency::new();
    let arcs: [(usize, &[(usize, usize)]); 3] = [
        (1, &[(1, 2), (3, 4), (5, 6), (7, 8)]),
        (
            2,
            &[
                (1, 3),
                (1, 9),
                (2, 4),
                (2, 9),
                (3, 9),
                (4, 9),
                (5, 7),
                (5, 9),
                (6, 8),
                (6, 9),
                (7, 9),
                (8, 9),
            ],
        ),
        (
            3,
            &[
                (1, 5),
                (5, 1),
                (2, 6),
                (6, 2),
                (3, 7),
                (7, 3),
                (4, 8),
                (8, 4),
            ],
        ),
    ];
    for (dm, pairs) in arcs {
        for &(src, dst) in pairs {
            adjacency.insert(DmId(dm), StateId(src), StateId(dst));
        }
    }

    ConflictModel {
        dms: vec![
            DecisionMaker { id: DmId(1), name: "MoE".into() },
            DecisionMaker { id: DmId(2), name: "Uniroyal".into() },
            DecisionMaker { id: DmId(3), name: "Local".into() },
        ],
        options: vec![
            OptionDef::new("modify", DmId(1), "Modify")
                .with_transitions(TransitionSet::IRREVERSIBLE_SET),
            OptionDef::new("delay", DmId(2), "Delay"),
            OptionDef::new("accept", DmId(2), "Accept")
                .with_transitions(TransitionSet::IRREVERSIBLE_SET),
            OptionDef::new("abandon", DmId(2), "Abandon")
                .with_transitions(TransitionSet::IRREVERSIBLE_SET),
            OptionDef::new("insist", DmId(3), "Insist"),
        ],
        logic: LogicMode::B4,
        space: StateSpace::from_assignments(assignments),
        preferences: None,
        policy: MovePolicy::Explicit(adjacency),
    }
}

fn russia_ukraine() -> ConflictModel {
    // All sixteen four-valued combinations of the two attack options.
    // State 4 (T, B) is the frame's reading of the ongoing situation.
    ConflictModel {
        dms: vec![
            DecisionMaker { id: DmId(1), name: "Russia".into() },
            DecisionMaker { id: DmId(2), name: "Ukraine".into() },
        ],
        options: vec![
            OptionDef::new("attack-r", DmId(1), "Attack"),
            OptionDef::new("attack-u", DmId(2), "Attack"),
        ],
        logic: LogicMode::B4,
        space: enumerate_states(2, LogicMode::B4, DEFAULT_STATE_CAP).unwrap(),
        preferences: None,
        policy: MovePolicy::EntailmentDrift,
    }
}
