//! Independent verification of the stability engine.
//!
//! Everything in this module is a direct, uncached translation of the
//! stability definitions: single moves are rescanned from the model on
//! every use, legal sequences are explored by a plain depth-first walk,
//! and each concept is one literal quantifier chain. None of it shares
//! code with the memoized analysis path, so agreement between the two is
//! meaningful evidence.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{ConflictModel, DmId, StateId};
use crate::reach::MovePolicy;
use crate::stability::{analyze, AnalyzeError, RowLabel, StabilityReport};

/// Largest state space the oracle will grind through by default.
pub const DEFAULT_ORACLE_BOUND: usize = 64;

/// One disagreement between the engine and the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub row: RowLabel,
    /// `None` for the Pareto row, which has no decision-maker axis.
    pub dm: Option<DmId>,
    pub state: StateId,
    pub engine: bool,
    pub oracle: bool,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dm {
            Some(dm) => write!(
                f,
                "{} dm={} {}: engine says {}, oracle says {}",
                self.row, dm, self.state, self.engine, self.oracle
            ),
            None => write!(
                f,
                "{} {}: engine says {}, oracle says {}",
                self.row, self.state, self.engine, self.oracle
            ),
        }
    }
}

/// Errors from an oracle run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    BoundExceeded { states: usize, bound: usize },
    Analyze(AnalyzeError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BoundExceeded { states, bound } => {
                write!(f, "state space of {states} exceeds the oracle bound of {bound}")
            }
            OracleError::Analyze(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<AnalyzeError> for OracleError {
    fn from(e: AnalyzeError) -> Self {
        OracleError::Analyze(e)
    }
}

/// Recomputes every verdict of [`analyze`] by naive search and returns
/// all disagreements. An empty list is the expected outcome.
pub fn oracle_check(model: &ConflictModel) -> Result<Vec<Discrepancy>, OracleError> {
    oracle_check_with_bound(model, DEFAULT_ORACLE_BOUND)
}

/// As [`oracle_check`] with an explicit state-count bound.
pub fn oracle_check_with_bound(
    model: &ConflictModel,
    bound: usize,
) -> Result<Vec<Discrepancy>, OracleError> {
    let states = model.space.len();
    if states > bound {
        return Err(OracleError::BoundExceeded { states, bound });
    }
    let report = analyze(model)?;
    Ok(diff_against(model, &report))
}

fn diff_against(model: &ConflictModel, report: &StabilityReport) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for row in RowLabel::ALL {
        for s in model.space.ids() {
            match row {
                RowLabel::Concept(concept) => {
                    for dm in model.dm_ids() {
                        let engine = report.stable_dms(concept, s).contains(&dm);
                        let oracle = match concept {
                            crate::stability::Concept::Nash => o_nash(model, dm, s),
                            crate::stability::Concept::Gmr => o_gmr(model, dm, s),
                            crate::stability::Concept::Smr => o_smr(model, dm, s),
                            crate::stability::Concept::Seq => o_seq(model, dm, s),
                            crate::stability::Concept::CNash => o_cnash(model, dm, s),
                            crate::stability::Concept::CGmr => o_cgmr(model, dm, s),
                            crate::stability::Concept::CSmr => o_csmr(model, dm, s),
                            crate::stability::Concept::CSeq => o_cseq(model, dm, s),
                        };
                        if engine != oracle {
                            out.push(Discrepancy { row, dm: Some(dm), state: s, engine, oracle });
                        }
                    }
                }
                RowLabel::Pareto => {
                    let engine = report.pareto().contains(&s);
                    let oracle = o_pareto(model, s);
                    if engine != oracle {
                        out.push(Discrepancy { row, dm: None, state: s, engine, oracle });
                    }
                }
            }
        }
    }
    out
}

// ---- naive building blocks ------------------------------------------------

/// 0-based preference rank by scanning the tier list.
fn rank_of(model: &ConflictModel, dm: DmId, s: StateId) -> usize {
    let order = model.preference_for(dm).expect("oracle needs preferences");
    for (i, tier) in order.tiers().iter().enumerate() {
        if tier.contains(&s) {
            return i;
        }
    }
    unreachable!("state {s} missing from dm {dm}'s order");
}

fn strictly_better(model: &ConflictModel, dm: DmId, a: StateId, b: StateId) -> bool {
    rank_of(model, dm, a) < rank_of(model, dm, b)
}

/// Whether `x` is equally or less preferred than `s`, i.e. x ∈ φ^≃(s).
fn le_or_eq(model: &ConflictModel, dm: DmId, x: StateId, s: StateId) -> bool {
    rank_of(model, dm, x) >= rank_of(model, dm, s)
}

/// Single moves of one decision maker, rescanned per call.
fn single_moves(model: &ConflictModel, dm: DmId, s: StateId) -> Vec<StateId> {
    if let MovePolicy::Explicit(adjacency) = &model.policy {
        return adjacency
            .row(dm, s)
            .map(|set| set.iter().copied().collect())
            .unwrap_or_default();
    }
    let from = &model.space.get(s).expect("state in space").assignment;
    let mut out = Vec::new();
    for to in model.space.states() {
        if to.id == s {
            continue;
        }
        let ok = model.options.iter().enumerate().all(|(i, opt)| {
            if opt.controller == dm {
                opt.own_transitions.contains(from[i], to.assignment[i])
            } else {
                match model.policy {
                    MovePolicy::FixedOthers => to.assignment[i] == from[i],
                    MovePolicy::EntailmentDrift => from[i].move_allowed(to.assignment[i]),
                    MovePolicy::Explicit(_) => unreachable!(),
                }
            }
        });
        if ok {
            out.push(to.id);
        }
    }
    out
}

fn improving_moves(model: &ConflictModel, dm: DmId, s: StateId) -> Vec<StateId> {
    single_moves(model, dm, s)
        .into_iter()
        .filter(|&t| strictly_better(model, dm, t, s))
        .collect()
}

/// Depth-first closure of legal sequences by `members` from `s`: every
/// prefix endpoint counts, no member moves twice in a row.
fn sequence_reachable(
    model: &ConflictModel,
    members: &[DmId],
    s: StateId,
    improving: bool,
) -> BTreeSet<StateId> {
    fn walk(
        model: &ConflictModel,
        members: &[DmId],
        current: StateId,
        last: Option<DmId>,
        improving: bool,
        seen: &mut BTreeSet<(StateId, DmId)>,
    ) {
        for &dm in members {
            if last == Some(dm) {
                continue;
            }
            let moves = if improving {
                improving_moves(model, dm, current)
            } else {
                single_moves(model, dm, current)
            };
            for t in moves {
                if seen.insert((t, dm)) {
                    walk(model, members, t, Some(dm), improving, seen);
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    walk(model, members, s, None, improving, &mut seen);
    seen.into_iter().map(|(state, _)| state).collect()
}

fn others_of(model: &ConflictModel, dm: DmId) -> Vec<DmId> {
    model.dm_ids().filter(|&d| d != dm).collect()
}

fn others_of_group(model: &ConflictModel, group: &[DmId]) -> Vec<DmId> {
    model.dm_ids().filter(|d| !group.contains(d)).collect()
}

/// Every coalition containing `dm`, as plain member lists.
fn coalitions_containing(model: &ConflictModel, dm: DmId) -> Vec<Vec<DmId>> {
    let all: Vec<DmId> = model.dm_ids().collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << all.len()) {
        let members: Vec<DmId> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &d)| d)
            .collect();
        if members.contains(&dm) {
            out.push(members);
        }
    }
    out
}

/// States the coalition can reach that strictly benefit every member.
fn coalition_improvement(model: &ConflictModel, members: &[DmId], s: StateId) -> Vec<StateId> {
    sequence_reachable(model, members, s, false)
        .into_iter()
        .filter(|&t| members.iter().all(|&dm| strictly_better(model, dm, t, s)))
        .collect()
}

// ---- the concepts, one quantifier chain each ------------------------------

fn o_nash(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    improving_moves(model, dm, s).is_empty()
}

fn o_gmr(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    let others = others_of(model, dm);
    improving_moves(model, dm, s).into_iter().all(|target| {
        sequence_reachable(model, &others, target, false)
            .into_iter()
            .any(|x| le_or_eq(model, dm, x, s))
    })
}

fn o_smr(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    let others = others_of(model, dm);
    improving_moves(model, dm, s).into_iter().all(|target| {
        sequence_reachable(model, &others, target, false)
            .into_iter()
            .any(|sanction| {
                le_or_eq(model, dm, sanction, s)
                    && single_moves(model, dm, sanction)
                        .into_iter()
                        .all(|escape| le_or_eq(model, dm, escape, s))
            })
    })
}

fn o_seq(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    let others = others_of(model, dm);
    improving_moves(model, dm, s).into_iter().all(|target| {
        sequence_reachable(model, &others, target, true)
            .into_iter()
            .any(|x| le_or_eq(model, dm, x, s))
    })
}

fn o_cnash(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    coalitions_containing(model, dm)
        .into_iter()
        .all(|members| coalition_improvement(model, &members, s).is_empty())
}

fn o_cgmr(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    coalitions_containing(model, dm).into_iter().all(|members| {
        let outside = others_of_group(model, &members);
        coalition_improvement(model, &members, s)
            .into_iter()
            .all(|target| {
                !outside.is_empty()
                    && sequence_reachable(model, &outside, target, false)
                        .into_iter()
                        .any(|x| le_or_eq(model, dm, x, s))
            })
    })
}

fn o_csmr(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    coalitions_containing(model, dm).into_iter().all(|members| {
        let outside = others_of_group(model, &members);
        coalition_improvement(model, &members, s)
            .into_iter()
            .all(|target| {
                !outside.is_empty()
                    && sequence_reachable(model, &outside, target, false)
                        .into_iter()
                        .any(|sanction| {
                            le_or_eq(model, dm, sanction, s)
                                && sequence_reachable(model, &members, sanction, false)
                                    .into_iter()
                                    .all(|escape| le_or_eq(model, dm, escape, s))
                        })
            })
    })
}

fn o_cseq(model: &ConflictModel, dm: DmId, s: StateId) -> bool {
    coalitions_containing(model, dm).into_iter().all(|members| {
        let outside = others_of_group(model, &members);
        coalition_improvement(model, &members, s)
            .into_iter()
            .all(|target| {
                !outside.is_empty()
                    && sequence_reachable(model, &outside, target, true)
                        .into_iter()
                        .any(|x| le_or_eq(model, dm, x, s))
            })
    })
}

fn o_pareto(model: &ConflictModel, s: StateId) -> bool {
    !model.space.ids().any(|t| {
        t != s
            && model.dm_ids().all(|dm| !strictly_better(model, dm, s, t))
            && model.dm_ids().any(|dm| strictly_better(model, dm, t, s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::{load_case, CaseId};
    use crate::model::{enumerate_states, LogicMode, DEFAULT_STATE_CAP};

    #[test]
    fn oracle_agrees_on_the_nine_state_case() {
        let model = load_case(CaseId::PdB4_9);
        assert_eq!(oracle_check(&model), Ok(Vec::new()));
    }

    #[test]
    fn oracle_agrees_on_the_binary_dilemma() {
        let model = load_case(CaseId::PdBinary);
        assert_eq!(oracle_check(&model), Ok(Vec::new()));
    }

    #[test]
    fn oracle_agrees_under_overridden_policies() {
        use crate::reach::MovePolicy;
        // The nine-state case re-derived under drift instead of the
        // stored rows, and the binary dilemma under drift: the engine
        // and the oracle must still agree verdict for verdict.
        let mut drifted = load_case(CaseId::PdB4_9);
        drifted.policy = MovePolicy::EntailmentDrift;
        assert_eq!(oracle_check(&drifted), Ok(Vec::new()));

        let mut binary_drift = load_case(CaseId::PdBinary);
        binary_drift.policy = MovePolicy::EntailmentDrift;
        assert_eq!(oracle_check(&binary_drift), Ok(Vec::new()));

        let mut fixed = load_case(CaseId::PdB4_9);
        fixed.policy = MovePolicy::FixedOthers;
        assert_eq!(oracle_check(&fixed), Ok(Vec::new()));
    }

    #[test]
    fn oracle_refuses_oversized_spaces() {
        let mut model = load_case(CaseId::PdB4_16);
        model.space = enumerate_states(4, LogicMode::B4, DEFAULT_STATE_CAP).unwrap();
        let err = oracle_check(&model).unwrap_err();
        assert_eq!(err, OracleError::BoundExceeded { states: 256, bound: 64 });
        assert!(oracle_check_with_bound(&load_case(CaseId::PdB4_9), 4).is_err());
    }

    #[test]
    fn oracle_propagates_missing_preferences() {
        let model = load_case(CaseId::PdB4_16);
        assert_eq!(
            oracle_check(&model),
            Err(OracleError::Analyze(AnalyzeError::NoPreferences))
        );
    }
}
