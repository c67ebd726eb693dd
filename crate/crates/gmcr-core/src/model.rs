//! Conflict description: decision makers, options, states, state spaces,
//! preference orders, and the assembled [`ConflictModel`].

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::b4::{OptionMark, TruthValue};
use crate::reach::MovePolicy;

/// Default cap on the number of states a full enumeration may produce.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// 1-based decision-maker index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DmId(pub usize);

impl fmt::Display for DmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 1-based state index, written `s1`, `s2`, ... as in option-form tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A decision maker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionMaker {
    pub id: DmId,
    pub name: String,
}

/// Whether states range over the two classical values or all of B4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicMode {
    Binary,
    B4,
}

impl LogicMode {
    /// Number of values per option position.
    pub const fn arity(self) -> usize {
        match self {
            LogicMode::Binary => 2,
            LogicMode::B4 => 4,
        }
    }

    /// Digit order used by full enumeration.
    pub fn digits(self) -> &'static [TruthValue] {
        match self {
            LogicMode::Binary => &TruthValue::BINARY_ORDER,
            LogicMode::B4 => &TruthValue::ENUM_ORDER,
        }
    }
}

impl fmt::Display for LogicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicMode::Binary => "binary",
            LogicMode::B4 => "b4",
        })
    }
}

fn value_index(v: TruthValue) -> usize {
    TruthValue::ENUM_ORDER.iter().position(|&u| u == v).unwrap()
}

/// Bit position for the pair (src, dst), indices in enumeration order.
const fn pair_bit(src: usize, dst: usize) -> u16 {
    1 << (src * 4 + dst)
}

/// The set of `(src, dst)` value pairs a controller may apply to one of
/// its own options when moving. Always contains the four identity pairs,
/// so staying put on an option is never forbidden.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransitionSet(u16);

impl TransitionSet {
    /// Only the identity pairs: the option can never change value.
    pub const IDENTITY: TransitionSet = TransitionSet(
        pair_bit(0, 0) | pair_bit(1, 1) | pair_bit(2, 2) | pair_bit(3, 3),
    );

    /// All sixteen pairs: the option is fully reversible.
    pub const ALL: TransitionSet = TransitionSet(0xffff);

    /// Identity plus F→T: the option can be set but never cleared.
    pub const IRREVERSIBLE_SET: TransitionSet =
        TransitionSet(TransitionSet::IDENTITY.0 | pair_bit(1, 0));

    /// Identity plus T→F: the option can be cleared but never set.
    pub const IRREVERSIBLE_CLEAR: TransitionSet =
        TransitionSet(TransitionSet::IDENTITY.0 | pair_bit(0, 1));

    /// Builds a set from explicit pairs; the identity pairs are added
    /// unconditionally to preserve the type invariant.
    pub fn from_pairs<I>(pairs: I) -> TransitionSet
    where
        I: IntoIterator<Item = (TruthValue, TruthValue)>,
    {
        let mut set = TransitionSet::IDENTITY;
        for (src, dst) in pairs {
            set.0 |= pair_bit(value_index(src), value_index(dst));
        }
        set
    }

    pub fn contains(self, src: TruthValue, dst: TruthValue) -> bool {
        self.0 & pair_bit(value_index(src), value_index(dst)) != 0
    }

    /// All contained pairs in a fixed order (src then dst, `T,F,N,B`).
    pub fn pairs(self) -> impl Iterator<Item = (TruthValue, TruthValue)> {
        TruthValue::ENUM_ORDER.into_iter().flat_map(move |src| {
            TruthValue::ENUM_ORDER
                .into_iter()
                .filter(move |&dst| self.contains(src, dst))
                .map(move |dst| (src, dst))
        })
    }
}

impl Default for TransitionSet {
    fn default() -> Self {
        TransitionSet::ALL
    }
}

/// One option: an action under the control of exactly one decision maker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptionDef {
    /// Short unique key used in files and diagnostics.
    pub key: String,
    pub controller: DmId,
    pub label: String,
    pub own_transitions: TransitionSet,
}

impl OptionDef {
    pub fn new(key: &str, controller: DmId, label: &str) -> OptionDef {
        OptionDef {
            key: key.to_string(),
            controller,
            label: label.to_string(),
            own_transitions: TransitionSet::ALL,
        }
    }

    pub fn with_transitions(mut self, transitions: TransitionSet) -> OptionDef {
        self.own_transitions = transitions;
        self
    }
}

/// One state: a truth value for every option, in option order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub id: StateId,
    pub assignment: Vec<TruthValue>,
}

/// Renders an assignment as space-separated symbols, e.g. `T F B`.
pub fn assignment_symbols(assignment: &[TruthValue]) -> String {
    let mut out = String::new();
    for (i, v) in assignment.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push(v.symbol());
    }
    out
}

/// An ordered, duplicate-free collection of states with ids 1..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    states: Vec<State>,
}

impl StateSpace {
    /// Builds a space from assignments in order; ids are assigned 1..n.
    pub fn from_assignments(assignments: Vec<Vec<TruthValue>>) -> StateSpace {
        let states = assignments
            .into_iter()
            .enumerate()
            .map(|(i, assignment)| State {
                id: StateId(i + 1),
                assignment,
            })
            .collect();
        StateSpace { states }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn ids(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states.iter().map(|s| s.id)
    }

    pub fn get(&self, id: StateId) -> Option<&State> {
        if id.0 >= 1 && id.0 <= self.states.len() {
            Some(&self.states[id.0 - 1])
        } else {
            None
        }
    }

    pub fn contains(&self, id: StateId) -> bool {
        self.get(id).is_some()
    }

    /// Finds the state with exactly this assignment, if any.
    pub fn find(&self, assignment: &[TruthValue]) -> Option<StateId> {
        self.states
            .iter()
            .find(|s| s.assignment == assignment)
            .map(|s| s.id)
    }
}

/// Errors from full state enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateError {
    NoOptions,
    /// The enumeration would exceed the state cap.
    TooManyStates { options: usize, cap: usize },
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::NoOptions => f.write_str("cannot enumerate states with no options"),
            EnumerateError::TooManyStates { options, cap } => write!(
                f,
                "enumeration over {options} options exceeds the cap of {cap} states"
            ),
        }
    }
}

impl core::error::Error for EnumerateError {}

/// Fully enumerates the state space: `arity^n` states, first option most
/// significant, last option varying fastest, digit order `T, F` (binary)
/// or `T, F, N, B` (four-valued).
pub fn enumerate_states(
    option_count: usize,
    logic: LogicMode,
    cap: usize,
) -> Result<StateSpace, EnumerateError> {
    if option_count == 0 {
        return Err(EnumerateError::NoOptions);
    }
    let arity = logic.arity();
    let mut count: usize = 1;
    for _ in 0..option_count {
        count = count
            .checked_mul(arity)
            .filter(|&c| c <= cap)
            .ok_or(EnumerateError::TooManyStates {
                options: option_count,
                cap,
            })?;
    }
    let digits = logic.digits();
    let mut assignments = Vec::with_capacity(count);
    let mut current = vec![0usize; option_count];
    loop {
        assignments.push(current.iter().map(|&d| digits[d]).collect());
        // Increment with the last option varying fastest.
        let mut pos = option_count;
        loop {
            if pos == 0 {
                return Ok(StateSpace::from_assignments(assignments));
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < arity {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Errors from restricting a state space to an explicit keep-list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictError {
    UnknownAssignment(Vec<TruthValue>),
    DuplicateAssignment(Vec<TruthValue>),
}

impl fmt::Display for RestrictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictError::UnknownAssignment(a) => {
                write!(f, "assignment {} is not in the space", assignment_symbols(a))
            }
            RestrictError::DuplicateAssignment(a) => {
                write!(f, "assignment {} listed twice", assignment_symbols(a))
            }
        }
    }
}

impl core::error::Error for RestrictError {}

/// Restricts a space to the listed assignments, in listed order, with ids
/// renumbered from 1. Assignments are never altered.
pub fn restrict_states(
    space: &StateSpace,
    keep: &[Vec<TruthValue>],
) -> Result<StateSpace, RestrictError> {
    let mut seen: Vec<&[TruthValue]> = Vec::with_capacity(keep.len());
    let mut assignments = Vec::with_capacity(keep.len());
    for assignment in keep {
        if space.find(assignment).is_none() {
            return Err(RestrictError::UnknownAssignment(assignment.clone()));
        }
        if seen.contains(&assignment.as_slice()) {
            return Err(RestrictError::DuplicateAssignment(assignment.clone()));
        }
        seen.push(assignment);
        assignments.push(assignment.clone());
    }
    Ok(StateSpace::from_assignments(assignments))
}

/// Imports a binary option-form row into B4: Y→T, N→F, -→B.
pub fn binary_to_b4(marks: &[OptionMark]) -> Vec<TruthValue> {
    marks.iter().map(|m| m.to_truth()).collect()
}

/// Error from parsing a row of option marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkParseError {
    /// 1-based token position within the row.
    pub position: usize,
    pub found: String,
}

impl fmt::Display for MarkParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry {} at position {}: expected Y, N, or -",
            self.found, self.position
        )
    }
}

impl core::error::Error for MarkParseError {}

/// Parses a whitespace-separated row of `Y`/`N`/`-` marks.
pub fn parse_option_marks(row: &str) -> Result<Vec<OptionMark>, MarkParseError> {
    row.split_whitespace()
        .enumerate()
        .map(|(i, token)| {
            let mut chars = token.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => OptionMark::from_symbol(c),
                _ => None,
            }
            .ok_or(MarkParseError {
                position: i + 1,
                found: token.to_string(),
            })
        })
        .collect()
}

/// Outcome of comparing two states under one decision maker's order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preference {
    Preferred,
    Indifferent,
    Dispreferred,
}

impl Preference {
    /// The outcome of the comparison with arguments swapped.
    pub fn reversed(self) -> Preference {
        match self {
            Preference::Preferred => Preference::Dispreferred,
            Preference::Indifferent => Preference::Indifferent,
            Preference::Dispreferred => Preference::Preferred,
        }
    }
}

/// A state id that does not occur in the relevant space or order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknownState(pub StateId);

impl fmt::Display for UnknownState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown state {}", self.0)
    }
}

impl core::error::Error for UnknownState {}

/// One decision maker's complete, transitive, reflexive weak order over
/// the state space, kept as tiers: earlier tier = strictly preferred,
/// same tier = indifferent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceOrder {
    dm: DmId,
    tiers: Vec<Vec<StateId>>,
}

/// Errors from building a preference order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreferenceError {
    EmptyTier { tier: usize },
    DuplicateState(StateId),
}

impl fmt::Display for PreferenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreferenceError::EmptyTier { tier } => write!(f, "tier {tier} is empty"),
            PreferenceError::DuplicateState(s) => {
                write!(f, "state {s} appears in more than one tier")
            }
        }
    }
}

impl core::error::Error for PreferenceError {}

impl PreferenceOrder {
    /// Builds an order from tiers of state ids, best tier first. States
    /// within a tier are kept sorted; duplicates are rejected.
    pub fn new(dm: DmId, tiers: Vec<Vec<StateId>>) -> Result<PreferenceOrder, PreferenceError> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(tiers.len());
        for (i, mut tier) in tiers.into_iter().enumerate() {
            if tier.is_empty() {
                return Err(PreferenceError::EmptyTier { tier: i + 1 });
            }
            tier.sort();
            for &s in &tier {
                if !seen.insert(s) {
                    return Err(PreferenceError::DuplicateState(s));
                }
            }
            normalized.push(tier);
        }
        Ok(PreferenceOrder {
            dm,
            tiers: normalized,
        })
    }

    /// A strict order: one state per tier, best first.
    pub fn strict(dm: DmId, ranking: &[StateId]) -> Result<PreferenceOrder, PreferenceError> {
        PreferenceOrder::new(dm, ranking.iter().map(|&s| vec![s]).collect())
    }

    pub fn dm(&self) -> DmId {
        self.dm
    }

    pub fn tiers(&self) -> &[Vec<StateId>] {
        &self.tiers
    }

    /// 0-based tier index of a state; smaller is better.
    pub fn rank(&self, s: StateId) -> Result<usize, UnknownState> {
        self.tiers
            .iter()
            .position(|tier| tier.contains(&s))
            .ok_or(UnknownState(s))
    }

    /// Every state mentioned by the order.
    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.tiers.iter().flatten().copied()
    }

    /// How the order ranks `a` against `b`.
    pub fn compare(&self, a: StateId, b: StateId) -> Result<Preference, UnknownState> {
        let ra = self.rank(a)?;
        let rb = self.rank(b)?;
        Ok(match ra.cmp(&rb) {
            core::cmp::Ordering::Less => Preference::Preferred,
            core::cmp::Ordering::Equal => Preference::Indifferent,
            core::cmp::Ordering::Greater => Preference::Dispreferred,
        })
    }

    /// Whether `a` is strictly preferred to `b`.
    pub fn strictly_prefers(&self, a: StateId, b: StateId) -> Result<bool, UnknownState> {
        Ok(self.compare(a, b)? == Preference::Preferred)
    }

    /// φ^≃(s): the states found equally or less preferable than `s`.
    /// Always contains `s` itself.
    pub fn phi_less_or_equal(&self, s: StateId) -> Result<BTreeSet<StateId>, UnknownState> {
        let r = self.rank(s)?;
        Ok(self
            .tiers
            .iter()
            .skip(r)
            .flatten()
            .copied()
            .collect())
    }
}

/// A complete conflict description.
///
/// `preferences` is `None` for frames whose source supplies no orders;
/// such models validate cleanly but refuse stability analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictModel {
    pub dms: Vec<DecisionMaker>,
    pub options: Vec<OptionDef>,
    pub logic: LogicMode,
    pub space: StateSpace,
    pub preferences: Option<Vec<PreferenceOrder>>,
    pub policy: MovePolicy,
}

impl ConflictModel {
    pub fn dm_ids(&self) -> impl Iterator<Item = DmId> + '_ {
        self.dms.iter().map(|d| d.id)
    }

    pub fn dm(&self, id: DmId) -> Option<&DecisionMaker> {
        self.dms.iter().find(|d| d.id == id)
    }

    pub fn has_preferences(&self) -> bool {
        self.preferences.is_some()
    }

    pub fn preference_for(&self, dm: DmId) -> Option<&PreferenceOrder> {
        self.preferences
            .as_ref()
            .and_then(|orders| orders.iter().find(|o| o.dm() == dm))
    }

    /// Indices of the options controlled by `dm`, in option order.
    pub fn options_of(&self, dm: DmId) -> impl Iterator<Item = usize> + '_ {
        self.options
            .iter()
            .enumerate()
            .filter(move |(_, o)| o.controller == dm)
            .map(|(i, _)| i)
    }

    /// Checks every structural invariant, returning one diagnostic per
    /// violation. An empty list means the model is well-formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let mut diag = |location: String, message: String| {
            diags.push(Diagnostic { location, message });
        };

        if self.dms.len() < 2 {
            diag(
                "dms".into(),
                format!("a conflict needs at least 2 decision makers, found {}", self.dms.len()),
            );
        }
        for (i, dm) in self.dms.iter().enumerate() {
            if dm.id.0 != i + 1 {
                diag(
                    format!("dm {}", dm.name),
                    format!("ids must be contiguous from 1; position {} has id {}", i + 1, dm.id),
                );
            }
        }

        if self.options.is_empty() {
            diag("options".into(), "a conflict needs at least one option".into());
        }
        for (i, opt) in self.options.iter().enumerate() {
            if self.dm(opt.controller).is_none() {
                diag(
                    format!("option {}", opt.key),
                    format!("controller {} is not a decision maker", opt.controller),
                );
            }
            if self.options[..i].iter().any(|o| o.key == opt.key) {
                diag(format!("option {}", opt.key), "duplicate option key".into());
            }
            for v in TruthValue::ENUM_ORDER {
                if !opt.own_transitions.contains(v, v) {
                    diag(
                        format!("option {}", opt.key),
                        format!("own transitions must contain the identity pair ({v},{v})"),
                    );
                }
            }
        }

        if self.space.len() < 2 {
            diag(
                "states".into(),
                format!("a conflict needs at least 2 states, found {}", self.space.len()),
            );
        }
        for (i, state) in self.space.states().iter().enumerate() {
            if state.id.0 != i + 1 {
                diag(
                    format!("state {}", state.id),
                    format!("ids must be contiguous from 1; position {} has id {}", i + 1, state.id),
                );
            }
            if state.assignment.len() != self.options.len() {
                diag(
                    format!("state {}", state.id),
                    format!(
                        "assignment has {} entries but the model has {} options",
                        state.assignment.len(),
                        self.options.len()
                    ),
                );
            }
            if self.logic == LogicMode::Binary {
                for (j, v) in state.assignment.iter().enumerate() {
                    if !v.is_classical() {
                        diag(
                            format!("state {}", state.id),
                            format!("binary mode allows only T or F, found {v} at option {}", j + 1),
                        );
                    }
                }
            }
            for other in &self.space.states()[..i] {
                if other.assignment == state.assignment {
                    diag(
                        format!("state {}", state.id),
                        format!("duplicate assignment, identical to state {}", other.id),
                    );
                }
            }
        }

        if let Some(orders) = &self.preferences {
            for dm in &self.dms {
                let matching = orders.iter().filter(|o| o.dm() == dm.id).count();
                if matching == 0 {
                    diag(
                        format!("pref dm={}", dm.id),
                        format!("no preference order for decision maker {}", dm.name),
                    );
                } else if matching > 1 {
                    diag(
                        format!("pref dm={}", dm.id),
                        "more than one preference order for this decision maker".into(),
                    );
                }
            }
            for order in orders {
                if self.dm(order.dm()).is_none() {
                    diag(
                        format!("pref dm={}", order.dm()),
                        "preference order for an unknown decision maker".into(),
                    );
                }
                let mut covered = BTreeSet::new();
                for s in order.states() {
                    if !self.space.contains(s) {
                        diag(
                            format!("pref dm={}", order.dm()),
                            format!("order mentions unknown state {s}"),
                        );
                    }
                    covered.insert(s);
                }
                for id in self.space.ids() {
                    if !covered.contains(&id) {
                        diag(
                            format!("pref dm={}", order.dm()),
                            format!("order does not rank state {id}"),
                        );
                    }
                }
            }
        }

        if let MovePolicy::Explicit(adjacency) = &self.policy {
            for (dm, rows) in adjacency.rows() {
                if self.dm(*dm).is_none() {
                    diag(
                        format!("reach dm={dm}"),
                        "adjacency for an unknown decision maker".into(),
                    );
                }
                for (src, dsts) in rows {
                    if !self.space.contains(*src) {
                        diag(format!("reach dm={dm}"), format!("unknown source state {src}"));
                    }
                    for dst in dsts {
                        if !self.space.contains(*dst) {
                            diag(
                                format!("reach dm={dm}"),
                                format!("unknown destination state {dst} from {src}"),
                            );
                        }
                        if dst == src {
                            diag(
                                format!("reach dm={dm}"),
                                format!("self-loop at state {src} is not allowed"),
                            );
                        }
                    }
                }
            }
        }

        diags
    }
}

/// One validation finding: where, and what is wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}
