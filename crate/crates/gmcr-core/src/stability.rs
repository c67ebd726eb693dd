//! Individual and coalition stability analysis.
//!
//! A state is *stable* for a decision maker under a concept when the
//! concept's condition deters that decision maker from moving away; it
//! is an *equilibrium* under the concept when it is stable for everyone.
//!
//! Individual concepts quantify over the mover's unilateral improvements
//! and the countermoves of the coalition of all others:
//!
//! - Nash — no unilateral improvement exists.
//! - GMR — every improvement can be met by a countermove landing the
//!   mover somewhere no better than the original state.
//! - SMR — as GMR, with a countermove the mover cannot escape from.
//! - SEQ — as GMR, but the countermove must itself be a credible
//!   (improving) sequence for the counter-movers.
//!
//! The coalition concepts (CNash, CGMR, CSMR, CSEQ) replace unilateral
//! improvements with coalition improvements — states a coalition can
//! reach through a legal sequence that strictly benefit every member —
//! and sanctions come from the coalition of everyone else.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::model::{ConflictModel, Diagnostic, DmId, StateId};
use crate::reach::{
    coalition_improvements, coalition_reachable, coalition_ui_reachable, reachable,
    unilateral_improvements, Coalition, ReachError,
};

/// A stability concept evaluated per decision maker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Nash,
    Gmr,
    Smr,
    Seq,
    CNash,
    CGmr,
    CSmr,
    CSeq,
}

impl Concept {
    pub const ALL: [Concept; 8] = [
        Concept::Nash,
        Concept::Gmr,
        Concept::Smr,
        Concept::Seq,
        Concept::CNash,
        Concept::CGmr,
        Concept::CSmr,
        Concept::CSeq,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Concept::Nash => "Nash",
            Concept::Gmr => "GMR",
            Concept::Smr => "SMR",
            Concept::Seq => "SEQ",
            Concept::CNash => "CNash",
            Concept::CGmr => "CGMR",
            Concept::CSmr => "CSMR",
            Concept::CSeq => "CSEQ",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full result of analyzing one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    states: Vec<StateId>,
    dms: Vec<DmId>,
    stable: BTreeMap<Concept, BTreeMap<StateId, BTreeSet<DmId>>>,
    equilibria: BTreeMap<Concept, BTreeSet<StateId>>,
    pareto: BTreeSet<StateId>,
}

impl StabilityReport {
    /// States of the analyzed model, in id order.
    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    /// Decision makers of the analyzed model, in id order.
    pub fn dms(&self) -> &[DmId] {
        &self.dms
    }

    /// The decision makers for which `s` is stable under `concept`.
    pub fn stable_dms(&self, concept: Concept, s: StateId) -> &BTreeSet<DmId> {
        static EMPTY: BTreeSet<DmId> = BTreeSet::new();
        self.stable
            .get(&concept)
            .and_then(|by_state| by_state.get(&s))
            .unwrap_or(&EMPTY)
    }

    /// The equilibrium set of a concept: stable for every decision maker.
    pub fn equilibria(&self, concept: Concept) -> &BTreeSet<StateId> {
        &self.equilibria[&concept]
    }

    pub fn is_equilibrium(&self, concept: Concept, s: StateId) -> bool {
        self.equilibria[&concept].contains(&s)
    }

    /// The Pareto-optimal states.
    pub fn pareto(&self) -> &BTreeSet<StateId> {
        &self.pareto
    }
}

/// Errors from whole-model analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalyzeError {
    /// The model failed validation; the diagnostics are attached.
    Invalid(Vec<Diagnostic>),
    /// The model carries no preference orders.
    NoPreferences,
}

impl fmt::Display for AnalyzeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzeError::Invalid(diags) => {
                write!(f, "model failed validation with {} finding(s)", diags.len())
            }
            AnalyzeError::NoPreferences => {
                f.write_str("model carries no preference orders; supply them before analysis")
            }
        }
    }
}

impl core::error::Error for AnalyzeError {}

/// Per-run memo of reachability queries. All inputs are immutable; the
/// memo only ever caches pure results, so sharing it across the cells of
/// one analysis cannot change any verdict.
struct Session<'m> {
    model: &'m ConflictModel,
    reach: BTreeMap<(DmId, StateId), BTreeSet<StateId>>,
    improvements: BTreeMap<(DmId, StateId), BTreeSet<StateId>>,
    coalition_reach: BTreeMap<(Coalition, StateId), BTreeSet<StateId>>,
    coalition_ui: BTreeMap<(Coalition, StateId), BTreeSet<StateId>>,
    coalition_better: BTreeMap<(Coalition, StateId), BTreeSet<StateId>>,
    phi: BTreeMap<(DmId, StateId), BTreeSet<StateId>>,
}

impl<'m> Session<'m> {
    fn new(model: &'m ConflictModel) -> Session<'m> {
        Session {
            model,
            reach: BTreeMap::new(),
            improvements: BTreeMap::new(),
            coalition_reach: BTreeMap::new(),
            coalition_ui: BTreeMap::new(),
            coalition_better: BTreeMap::new(),
            phi: BTreeMap::new(),
        }
    }

    fn reachable(&mut self, dm: DmId, s: StateId) -> Result<BTreeSet<StateId>, ReachError> {
        if let Some(hit) = self.reach.get(&(dm, s)) {
            return Ok(hit.clone());
        }
        let out = reachable(self.model, dm, s)?;
        self.reach.insert((dm, s), out.clone());
        Ok(out)
    }

    fn improvements(&mut self, dm: DmId, s: StateId) -> Result<BTreeSet<StateId>, ReachError> {
        if let Some(hit) = self.improvements.get(&(dm, s)) {
            return Ok(hit.clone());
        }
        let out = unilateral_improvements(self.model, dm, s)?;
        self.improvements.insert((dm, s), out.clone());
        Ok(out)
    }

    fn coalition_reachable(
        &mut self,
        coalition: &Coalition,
        s: StateId,
    ) -> Result<BTreeSet<StateId>, ReachError> {
        let key = (coalition.clone(), s);
        if let Some(hit) = self.coalition_reach.get(&key) {
            return Ok(hit.clone());
        }
        let out = coalition_reachable(self.model, coalition, s)?;
        self.coalition_reach.insert(key, out.clone());
        Ok(out)
    }

    fn coalition_ui(
        &mut self,
        coalition: &Coalition,
        s: StateId,
    ) -> Result<BTreeSet<StateId>, ReachError> {
        let key = (coalition.clone(), s);
        if let Some(hit) = self.coalition_ui.get(&key) {
            return Ok(hit.clone());
        }
        let out = coalition_ui_reachable(self.model, coalition, s)?;
        self.coalition_ui.insert(key, out.clone());
        Ok(out)
    }

    fn coalition_improvements(
        &mut self,
        coalition: &Coalition,
        s: StateId,
    ) -> Result<BTreeSet<StateId>, ReachError> {
        let key = (coalition.clone(), s);
        if let Some(hit) = self.coalition_better.get(&key) {
            return Ok(hit.clone());
        }
        let out = coalition_improvements(self.model, coalition, s)?;
        self.coalition_better.insert(key, out.clone());
        Ok(out)
    }

    fn phi(&mut self, dm: DmId, s: StateId) -> Result<BTreeSet<StateId>, ReachError> {
        if let Some(hit) = self.phi.get(&(dm, s)) {
            return Ok(hit.clone());
        }
        let order = self
            .model
            .preference_for(dm)
            .ok_or(ReachError::NoPreferences)?;
        let out = order
            .phi_less_or_equal(s)
            .map_err(|e| ReachError::UnknownState(e.0))?;
        self.phi.insert((dm, s), out.clone());
        Ok(out)
    }

    /// The coalition of everyone except `dm`.
    fn others(&self, dm: DmId) -> Option<Coalition> {
        Coalition::singleton(dm).complement(self.model.dm_ids())
    }

    /// Every coalition containing `dm`, smallest first, in a fixed order.
    fn coalitions_containing(&self, dm: DmId) -> Vec<Coalition> {
        let all: Vec<DmId> = self.model.dm_ids().collect();
        let n = all.len();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let members = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &d)| d);
            if let Some(c) = Coalition::new(members) {
                if c.contains(dm) {
                    out.push(c);
                }
            }
        }
        out
    }

    fn nash(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        Ok(self.improvements(dm, s)?.is_empty())
    }

    fn gmr(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        let Some(others) = self.others(dm) else {
            return Ok(self.improvements(dm, s)?.is_empty());
        };
        for target in self.improvements(dm, s)? {
            let counters = self.coalition_reachable(&others, target)?;
            if counters.intersection(&phi).next().is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn smr(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        let Some(others) = self.others(dm) else {
            return Ok(self.improvements(dm, s)?.is_empty());
        };
        'improvements: for target in self.improvements(dm, s)? {
            let counters = self.coalition_reachable(&others, target)?;
            for sanction in counters.intersection(&phi) {
                // The sanction holds if the mover cannot escape above phi.
                if self.reachable(dm, *sanction)?.is_subset(&phi) {
                    continue 'improvements;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    fn seq(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        let Some(others) = self.others(dm) else {
            return Ok(self.improvements(dm, s)?.is_empty());
        };
        for target in self.improvements(dm, s)? {
            let credible = self.coalition_ui(&others, target)?;
            if credible.intersection(&phi).next().is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn cnash(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        for coalition in self.coalitions_containing(dm) {
            if !self.coalition_improvements(&coalition, s)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn cgmr(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        for coalition in self.coalitions_containing(dm) {
            let complement = coalition.complement(self.model.dm_ids());
            for target in self.coalition_improvements(&coalition, s)? {
                // With nobody left outside the coalition, no sanction exists.
                let Some(others) = complement.clone() else {
                    return Ok(false);
                };
                let counters = self.coalition_reachable(&others, target)?;
                if counters.intersection(&phi).next().is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn csmr(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        for coalition in self.coalitions_containing(dm) {
            let complement = coalition.complement(self.model.dm_ids());
            'targets: for target in self.coalition_improvements(&coalition, s)? {
                let Some(others) = complement.clone() else {
                    return Ok(false);
                };
                let counters = self.coalition_reachable(&others, target)?;
                for sanction in counters.intersection(&phi) {
                    if self.coalition_reachable(&coalition, *sanction)?.is_subset(&phi) {
                        continue 'targets;
                    }
                }
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn cseq(&mut self, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        let phi = self.phi(dm, s)?;
        for coalition in self.coalitions_containing(dm) {
            let complement = coalition.complement(self.model.dm_ids());
            for target in self.coalition_improvements(&coalition, s)? {
                let Some(others) = complement.clone() else {
                    return Ok(false);
                };
                let credible = self.coalition_ui(&others, target)?;
                if credible.intersection(&phi).next().is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn concept(&mut self, concept: Concept, dm: DmId, s: StateId) -> Result<bool, ReachError> {
        match concept {
            Concept::Nash => self.nash(dm, s),
            Concept::Gmr => self.gmr(dm, s),
            Concept::Smr => self.smr(dm, s),
            Concept::Seq => self.seq(dm, s),
            Concept::CNash => self.cnash(dm, s),
            Concept::CGmr => self.cgmr(dm, s),
            Concept::CSmr => self.csmr(dm, s),
            Concept::CSeq => self.cseq(dm, s),
        }
    }

    fn pareto_optimal(&mut self, s: StateId) -> Result<bool, ReachError> {
        if !self.model.space.contains(s) {
            return Err(ReachError::UnknownState(s));
        }
        let orders: Vec<_> = self
            .model
            .dms
            .iter()
            .map(|dm| {
                self.model
                    .preference_for(dm.id)
                    .ok_or(ReachError::NoPreferences)
            })
            .collect::<Result<_, _>>()?;
        'candidates: for other in self.model.space.ids() {
            if other == s {
                continue;
            }
            let mut strictly_better_for_one = false;
            for order in &orders {
                match order
                    .compare(other, s)
                    .map_err(|e| ReachError::UnknownState(e.0))?
                {
                    crate::model::Preference::Dispreferred => continue 'candidates,
                    crate::model::Preference::Preferred => strictly_better_for_one = true,
                    crate::model::Preference::Indifferent => {}
                }
            }
            if strictly_better_for_one {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Nash stability: no unilateral improvement exists for `dm` at `s`.
pub fn is_nash(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).nash(dm, s)
}

/// General metarationality: every improvement can be countered into the
/// mover's φ^≃ set.
pub fn is_gmr(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).gmr(dm, s)
}

/// Symmetric metarationality: as GMR, with a counter the mover cannot
/// escape from.
pub fn is_smr(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).smr(dm, s)
}

/// Sequential stability: every improvement is countered by a credible
/// (improving) sequence of the other decision makers.
pub fn is_seq(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).seq(dm, s)
}

/// Coalition Nash: no coalition containing `dm` has a coalition
/// improvement from `s`.
pub fn is_cnash(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).cnash(dm, s)
}

/// Coalition GMR: every coalition improvement is sanctionable by the
/// outsiders from `dm`'s point of view.
pub fn is_cgmr(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).cgmr(dm, s)
}

/// Coalition SMR: as CGMR, with a sanction the improving coalition
/// cannot escape from.
pub fn is_csmr(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).csmr(dm, s)
}

/// Coalition SEQ: as CGMR, with sanctions restricted to credible
/// countermoves.
pub fn is_cseq(model: &ConflictModel, dm: DmId, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).cseq(dm, s)
}

/// Pareto optimality: no alternative state is at least as good for every
/// decision maker and strictly better for at least one.
pub fn is_pareto_optimal(model: &ConflictModel, s: StateId) -> Result<bool, ReachError> {
    Session::new(model).pareto_optimal(s)
}

/// Evaluates every concept for every decision maker at every state.
pub fn analyze(model: &ConflictModel) -> Result<StabilityReport, AnalyzeError> {
    let diagnostics = model.validate();
    if !diagnostics.is_empty() {
        return Err(AnalyzeError::Invalid(diagnostics));
    }
    if !model.has_preferences() {
        return Err(AnalyzeError::NoPreferences);
    }
    let mut session = Session::new(model);
    let states: Vec<StateId> = model.space.ids().collect();
    let dms: Vec<DmId> = model.dm_ids().collect();
    let all_dms: BTreeSet<DmId> = dms.iter().copied().collect();

    let mut stable = BTreeMap::new();
    let mut equilibria = BTreeMap::new();
    for concept in Concept::ALL {
        let mut by_state: BTreeMap<StateId, BTreeSet<DmId>> = BTreeMap::new();
        let mut eq = BTreeSet::new();
        for &s in &states {
            let mut stable_dms = BTreeSet::new();
            for &dm in &dms {
                // Validation passed, so query errors cannot occur here.
                if session.concept(concept, dm, s).expect("validated model") {
                    stable_dms.insert(dm);
                }
            }
            if stable_dms == all_dms {
                eq.insert(s);
            }
            by_state.insert(s, stable_dms);
        }
        stable.insert(concept, by_state);
        equilibria.insert(concept, eq);
    }

    let mut pareto = BTreeSet::new();
    for &s in &states {
        if session.pareto_optimal(s).expect("validated model") {
            pareto.insert(s);
        }
    }

    Ok(StabilityReport {
        states,
        dms,
        stable,
        equilibria,
        pareto,
    })
}

/// One row of a cross-model comparison: a stability concept or the
/// Pareto set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowLabel {
    Concept(Concept),
    Pareto,
}

impl RowLabel {
    pub const ALL: [RowLabel; 9] = [
        RowLabel::Concept(Concept::Nash),
        RowLabel::Concept(Concept::Gmr),
        RowLabel::Concept(Concept::Smr),
        RowLabel::Concept(Concept::Seq),
        RowLabel::Concept(Concept::CNash),
        RowLabel::Concept(Concept::CGmr),
        RowLabel::Concept(Concept::CSmr),
        RowLabel::Concept(Concept::CSeq),
        RowLabel::Pareto,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            RowLabel::Concept(c) => c.name(),
            RowLabel::Pareto => "Pareto",
        }
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One column of a comparison grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CompareColumn {
    /// A state of report B, compared against its mapped partner in A
    /// (or against absence if unmapped).
    B(StateId),
    /// A state of report A with no partner in the mapping.
    AOnly(StateId),
}

impl fmt::Display for CompareColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareColumn::B(s) => write!(f, "{s}"),
            CompareColumn::AOnly(s) => write!(f, "A:{s}"),
        }
    }
}

/// Whether a state is an equilibrium in both reports, only one, or
/// neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Both,
    OnlyA,
    OnlyB,
    Neither,
}

/// A per-concept, per-state comparison of two reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    columns: Vec<CompareColumn>,
    rows: Vec<(RowLabel, Vec<Mark>)>,
}

impl ComparisonReport {
    pub fn columns(&self) -> &[CompareColumn] {
        &self.columns
    }

    pub fn rows(&self) -> impl Iterator<Item = (RowLabel, &[Mark])> {
        self.rows.iter().map(|(label, marks)| (*label, marks.as_slice()))
    }

    pub fn mark(&self, row: RowLabel, column: CompareColumn) -> Option<Mark> {
        let col = self.columns.iter().position(|&c| c == column)?;
        self.rows
            .iter()
            .find(|(label, _)| *label == row)
            .map(|(_, marks)| marks[col])
    }
}

/// Errors from report comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareError {
    /// Two mapped states share the same image.
    NotInjective(StateId),
    UnknownStateA(StateId),
    UnknownStateB(StateId),
}

impl fmt::Display for CompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareError::NotInjective(s) => {
                write!(f, "mapping is not injective: {s} is the image of two states")
            }
            CompareError::UnknownStateA(s) => write!(f, "mapping mentions {s}, unknown in report A"),
            CompareError::UnknownStateB(s) => write!(f, "mapping mentions {s}, unknown in report B"),
        }
    }
}

impl core::error::Error for CompareError {}

/// Compares the equilibrium sets of two reports under a partial,
/// injective state mapping from A-states to B-states. States outside
/// the mapping are compared against absence.
pub fn compare_reports(
    a: &StabilityReport,
    b: &StabilityReport,
    mapping: &BTreeMap<StateId, StateId>,
) -> Result<ComparisonReport, CompareError> {
    let mut b_to_a: BTreeMap<StateId, StateId> = BTreeMap::new();
    for (&sa, &sb) in mapping {
        if !a.states.contains(&sa) {
            return Err(CompareError::UnknownStateA(sa));
        }
        if !b.states.contains(&sb) {
            return Err(CompareError::UnknownStateB(sb));
        }
        if b_to_a.insert(sb, sa).is_some() {
            return Err(CompareError::NotInjective(sb));
        }
    }

    let mut columns: Vec<CompareColumn> = b.states.iter().map(|&s| CompareColumn::B(s)).collect();
    columns.extend(
        a.states
            .iter()
            .filter(|s| !mapping.contains_key(s))
            .map(|&s| CompareColumn::AOnly(s)),
    );

    let membership = |report: &StabilityReport, row: RowLabel, s: StateId| match row {
        RowLabel::Concept(c) => report.is_equilibrium(c, s),
        RowLabel::Pareto => report.pareto.contains(&s),
    };

    let mut rows = Vec::with_capacity(RowLabel::ALL.len());
    for row in RowLabel::ALL {
        let marks = columns
            .iter()
            .map(|column| {
                let (in_a, in_b) = match *column {
                    CompareColumn::B(sb) => {
                        let in_a = b_to_a
                            .get(&sb)
                            .is_some_and(|&sa| membership(a, row, sa));
                        (in_a, membership(b, row, sb))
                    }
                    CompareColumn::AOnly(sa) => (membership(a, row, sa), false),
                };
                match (in_a, in_b) {
                    (true, true) => Mark::Both,
                    (true, false) => Mark::OnlyA,
                    (false, true) => Mark::OnlyB,
                    (false, false) => Mark::Neither,
                }
            })
            .collect();
        rows.push((row, marks));
    }

    Ok(ComparisonReport { columns, rows })
}
