//! Reachable lists, unilateral improvements, and coalition reachability
//! under three move policies, plus DOT export of the move graphs.
//!
//! Policies:
//!
//! - [`MovePolicy::FixedOthers`] — classical graph-model moves: the mover
//!   reselects its own options (within each option's transition set),
//!   everyone else's options keep their value.
//! - [`MovePolicy::EntailmentDrift`] — four-valued moves: the mover's own
//!   options follow their transition sets while every other decision
//!   maker's proposition may drift along the seven allowed entailment
//!   pairs of [`TruthValue::move_allowed`].
//! - [`MovePolicy::Explicit`] — a verbatim adjacency, for reproducing
//!   published reachability tables exactly as printed.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use core::fmt;
use core::fmt::Write as _;

use crate::model::{assignment_symbols, ConflictModel, DmId, StateId};

/// Explicit per-decision-maker adjacency: `dm -> src -> {dst, ...}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Adjacency {
    rows: BTreeMap<DmId, BTreeMap<StateId, BTreeSet<StateId>>>,
}

impl Adjacency {
    pub fn new() -> Adjacency {
        Adjacency::default()
    }

    pub fn insert(&mut self, dm: DmId, src: StateId, dst: StateId) {
        self.rows
            .entry(dm)
            .or_default()
            .entry(src)
            .or_default()
            .insert(dst);
    }

    /// Adds a whole row at once. Empty rows are not stored: an absent
    /// row and an empty one mean the same thing, and keeping only the
    /// former makes structural equality canonical.
    pub fn insert_row<I: IntoIterator<Item = StateId>>(&mut self, dm: DmId, src: StateId, dsts: I) {
        let mut dsts = dsts.into_iter().peekable();
        if dsts.peek().is_none() {
            return;
        }
        let row = self.rows.entry(dm).or_default().entry(src).or_default();
        row.extend(dsts);
    }

    pub fn row(&self, dm: DmId, src: StateId) -> Option<&BTreeSet<StateId>> {
        self.rows.get(&dm).and_then(|r| r.get(&src))
    }

    pub fn rows(&self) -> impl Iterator<Item = (&DmId, &BTreeMap<StateId, BTreeSet<StateId>>)> {
        self.rows.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.values().all(|r| r.values().all(BTreeSet::is_empty))
    }
}

/// How single moves are generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MovePolicy {
    FixedOthers,
    EntailmentDrift,
    Explicit(Adjacency),
}

impl MovePolicy {
    /// Short name as used on command lines and in files.
    pub fn kind_name(&self) -> &'static str {
        match self {
            MovePolicy::FixedOthers => "fixed",
            MovePolicy::EntailmentDrift => "drift",
            MovePolicy::Explicit(_) => "explicit",
        }
    }
}

/// A non-empty set of decision makers moving in cooperation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Coalition {
    members: BTreeSet<DmId>,
}

impl Coalition {
    /// Builds a coalition; returns `None` for the empty set.
    pub fn new<I: IntoIterator<Item = DmId>>(members: I) -> Option<Coalition> {
        let members: BTreeSet<_> = members.into_iter().collect();
        if members.is_empty() {
            None
        } else {
            Some(Coalition { members })
        }
    }

    pub fn singleton(dm: DmId) -> Coalition {
        Coalition {
            members: [dm].into_iter().collect(),
        }
    }

    pub fn members(&self) -> impl Iterator<Item = DmId> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, dm: DmId) -> bool {
        self.members.contains(&dm)
    }

    /// The coalition of everyone in `all` but not in `self`, or `None`
    /// when nobody is left.
    pub fn complement<I: IntoIterator<Item = DmId>>(&self, all: I) -> Option<Coalition> {
        Coalition::new(all.into_iter().filter(|dm| !self.contains(*dm)))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, dm) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{dm}")?;
        }
        f.write_str("}")
    }
}

/// Errors from reachability queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReachError {
    UnknownDm(DmId),
    UnknownState(StateId),
    /// The model carries no preference orders, so improvement-based
    /// queries are undefined.
    NoPreferences,
}

impl fmt::Display for ReachError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReachError::UnknownDm(dm) => write!(f, "unknown decision maker {dm}"),
            ReachError::UnknownState(s) => write!(f, "unknown state {s}"),
            ReachError::NoPreferences => f.write_str("model carries no preference orders"),
        }
    }
}

impl core::error::Error for ReachError {}

fn check_ids(model: &ConflictModel, dm: DmId, s: StateId) -> Result<(), ReachError> {
    if model.dm(dm).is_none() {
        return Err(ReachError::UnknownDm(dm));
    }
    if !model.space.contains(s) {
        return Err(ReachError::UnknownState(s));
    }
    Ok(())
}

/// R_i(s): the states decision maker `dm` can reach from `s` in one
/// unilateral move. Never contains `s` itself.
pub fn reachable(model: &ConflictModel, dm: DmId, s: StateId) -> Result<BTreeSet<StateId>, ReachError> {
    check_ids(model, dm, s)?;
    match &model.policy {
        MovePolicy::Explicit(adjacency) => {
            Ok(adjacency.row(dm, s).cloned().unwrap_or_default())
        }
        MovePolicy::FixedOthers => {
            let from = &model.space.get(s).unwrap().assignment;
            Ok(model
                .space
                .states()
                .iter()
                .filter(|to| {
                    to.id != s
                        && model.options.iter().enumerate().all(|(i, opt)| {
                            if opt.controller == dm {
                                opt.own_transitions.contains(from[i], to.assignment[i])
                            } else {
                                to.assignment[i] == from[i]
                            }
                        })
                })
                .map(|to| to.id)
                .collect())
        }
        MovePolicy::EntailmentDrift => {
            let from = &model.space.get(s).unwrap().assignment;
            Ok(model
                .space
                .states()
                .iter()
                .filter(|to| {
                    to.id != s
                        && model.options.iter().enumerate().all(|(i, opt)| {
                            if opt.controller == dm {
                                opt.own_transitions.contains(from[i], to.assignment[i])
                            } else {
                                from[i].move_allowed(to.assignment[i])
                            }
                        })
                })
                .map(|to| to.id)
                .collect())
        }
    }
}

/// R_i^+(s): the reachable states the mover strictly prefers to `s`.
pub fn unilateral_improvements(
    model: &ConflictModel,
    dm: DmId,
    s: StateId,
) -> Result<BTreeSet<StateId>, ReachError> {
    let mut out = reachable(model, dm, s)?;
    let order = model.preference_for(dm).ok_or(ReachError::NoPreferences)?;
    out.retain(|&t| order.strictly_prefers(t, s).unwrap_or(false));
    Ok(out)
}

fn coalition_closure(
    model: &ConflictModel,
    coalition: &Coalition,
    s: StateId,
    improvements_only: bool,
) -> Result<BTreeSet<StateId>, ReachError> {
    for dm in coalition.members() {
        check_ids(model, dm, s)?;
    }
    if improvements_only && !model.has_preferences() {
        return Err(ReachError::NoPreferences);
    }
    let step = |dm: DmId, from: StateId| -> Result<BTreeSet<StateId>, ReachError> {
        if improvements_only {
            unilateral_improvements(model, dm, from)
        } else {
            reachable(model, dm, from)
        }
    };
    // Fixed point over (state, last mover): a legal sequence may reuse a
    // decision maker, but never twice in a row.
    let mut visited: BTreeSet<(StateId, DmId)> = BTreeSet::new();
    let mut queue: VecDeque<(StateId, DmId)> = VecDeque::new();
    for dm in coalition.members() {
        for t in step(dm, s)? {
            if visited.insert((t, dm)) {
                queue.push_back((t, dm));
            }
        }
    }
    while let Some((current, last)) = queue.pop_front() {
        for dm in coalition.members().filter(|&dm| dm != last) {
            for t in step(dm, current)? {
                if visited.insert((t, dm)) {
                    queue.push_back((t, dm));
                }
            }
        }
    }
    Ok(visited.into_iter().map(|(state, _)| state).collect())
}

/// R_H(s): every state reachable from `s` by a finite legal sequence of
/// single moves by coalition members (no member moves twice in a row).
/// Contains `s` itself only when some non-trivial sequence returns to it.
pub fn coalition_reachable(
    model: &ConflictModel,
    coalition: &Coalition,
    s: StateId,
) -> Result<BTreeSet<StateId>, ReachError> {
    coalition_closure(model, coalition, s, false)
}

/// R_H^+(s): as [`coalition_reachable`], but every step must be a
/// unilateral improvement for the decision maker making it.
pub fn coalition_ui_reachable(
    model: &ConflictModel,
    coalition: &Coalition,
    s: StateId,
) -> Result<BTreeSet<StateId>, ReachError> {
    coalition_closure(model, coalition, s, true)
}

/// CI_H(s): the coalition-reachable states that every member strictly
/// prefers to `s`.
pub fn coalition_improvements(
    model: &ConflictModel,
    coalition: &Coalition,
    s: StateId,
) -> Result<BTreeSet<StateId>, ReachError> {
    let mut out = coalition_reachable(model, coalition, s)?;
    for dm in coalition.members() {
        let order = model.preference_for(dm).ok_or(ReachError::NoPreferences)?;
        out.retain(|&t| order.strictly_prefers(t, s).unwrap_or(false));
    }
    Ok(out)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Emits the move graph in DOT format: one node per state, one labeled
/// arc per `(dm, s -> s')` reachable pair. Node order is ascending state
/// id; arc order is ascending (source, dm, destination).
pub fn export_graph(model: &ConflictModel, only_dm: Option<DmId>) -> Result<String, ReachError> {
    if let Some(dm) = only_dm {
        if model.dm(dm).is_none() {
            return Err(ReachError::UnknownDm(dm));
        }
    }
    let mut out = String::new();
    out.push_str("digraph conflict {\n");
    out.push_str("  rankdir=LR;\n");
    for state in model.space.states() {
        let _ = writeln!(
            out,
            "  {} [label=\"{}: {}\"];",
            state.id,
            state.id,
            assignment_symbols(&state.assignment)
        );
    }
    for state in model.space.states() {
        for dm in &model.dms {
            if only_dm.is_some_and(|d| d != dm.id) {
                continue;
            }
            for dst in reachable(model, dm.id, state.id)? {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}\"];",
                    state.id,
                    dst,
                    dot_escape(&dm.name)
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
