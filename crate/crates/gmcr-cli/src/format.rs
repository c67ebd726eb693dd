//! The `.gmcr` model file format: a line-oriented text grammar whose
//! reachability rows and preference chains read like the published
//! option-form tables.
//!
//! ```text
//! # comments run to end of line
//! [logic] b4                      # or: binary
//! [dm] 1 DM1
//! [option] nc1 dm=1 "Not Confess" reversible
//! [states] explicit               # or: enumerate | b4-import
//! s1 = T T                        # binary files use Y/N; b4-import uses Y/N/-
//! [policy] explicit               # or: fixed | drift
//! [reach] dm=1 s1 -> s2 s5 s6
//! [pref] dm=1 : s2 > s1 = s4 > s3
//! ```
//!
//! Sections may appear in any order; only the order of state rows is
//! meaningful (it assigns the 1-based ids). A file with no `[pref]`
//! lines describes a frame without preference orders.

use std::collections::BTreeMap;
use std::fmt;

use gmcr_core::b4::TruthValue;
use gmcr_core::model::{
    binary_to_b4, enumerate_states, parse_option_marks, ConflictModel, DecisionMaker, DmId,
    LogicMode, OptionDef, PreferenceOrder, StateId, StateSpace, TransitionSet, DEFAULT_STATE_CAP,
};
use gmcr_core::reach::{Adjacency, MovePolicy};

/// A move-policy name, as written in files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyKind {
    Fixed,
    Drift,
    Explicit,
}

impl PolicyKind {
    pub const fn name(self) -> &'static str {
        match self {
            PolicyKind::Fixed => "fixed",
            PolicyKind::Drift => "drift",
            PolicyKind::Explicit => "explicit",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A position-tagged parse failure. `line` is 1-based; 0 marks
/// whole-file problems such as a missing section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "file: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StatesMode {
    Enumerate,
    Explicit,
    B4Import,
}

/// Raw sections of one file, before semantic assembly.
struct ModelDoc {
    logic: Option<(usize, LogicMode)>,
    dms: Vec<DecisionMaker>,
    options: Vec<OptionDef>,
    states_mode: Option<(usize, StatesMode)>,
    state_rows: Vec<(usize, usize, String)>,
    policy: Option<(usize, PolicyKind)>,
    reach: Vec<(usize, DmId, StateId, Vec<StateId>)>,
    prefs: Vec<(usize, DmId, Vec<Vec<StateId>>)>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_state_token(token: &str, line: usize) -> Result<StateId, ParseError> {
    let digits = token
        .strip_prefix('s')
        .ok_or_else(|| ParseError::at(line, format!("expected a state like s3, found `{token}`")))?;
    let n: usize = digits
        .parse()
        .map_err(|_| ParseError::at(line, format!("expected a state like s3, found `{token}`")))?;
    if n == 0 {
        return Err(ParseError::at(line, "state ids start at s1"));
    }
    Ok(StateId(n))
}

fn parse_dm_token(token: &str, line: usize) -> Result<DmId, ParseError> {
    let digits = token.strip_prefix("dm=").ok_or_else(|| {
        ParseError::at(line, format!("expected dm=<id>, found `{token}`"))
    })?;
    let n: usize = digits
        .parse()
        .map_err(|_| ParseError::at(line, format!("expected dm=<id>, found `{token}`")))?;
    Ok(DmId(n))
}

fn parse_transitions(spec: &str, line: usize) -> Result<TransitionSet, ParseError> {
    match spec {
        "" | "reversible" => Ok(TransitionSet::ALL),
        "irreversible-set" => Ok(TransitionSet::IRREVERSIBLE_SET),
        "irreversible-clear" => Ok(TransitionSet::IRREVERSIBLE_CLEAR),
        other => {
            let list = other.strip_prefix("pairs=").ok_or_else(|| {
                ParseError::at(
                    line,
                    format!(
                        "expected reversible, irreversible-set, irreversible-clear, \
                         or pairs=..., found `{other}`"
                    ),
                )
            })?;
            let mut pairs = Vec::new();
            for item in list.split(',') {
                let mut chars = item.chars();
                let pair = match (chars.next(), chars.next(), chars.next()) {
                    (Some(a), Some(b), None) => {
                        TruthValue::from_symbol(a).zip(TruthValue::from_symbol(b))
                    }
                    _ => None,
                };
                let (src, dst) = pair.ok_or_else(|| {
                    ParseError::at(line, format!("bad transition pair `{item}`; expected e.g. FT"))
                })?;
                pairs.push((src, dst));
            }
            Ok(TransitionSet::from_pairs(pairs))
        }
    }
}

fn parse_option_line(rest: &str, line: usize) -> Result<OptionDef, ParseError> {
    let rest = rest.trim();
    let (key, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| ParseError::at(line, "expected `[option] <key> dm=<id> \"<label>\" ...`"))?;
    let rest = rest.trim_start();
    let (dm_token, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| ParseError::at(line, "missing dm=<id> on option line"))?;
    let controller = parse_dm_token(dm_token, line)?;
    let rest = rest.trim_start();
    let inner = rest
        .strip_prefix('"')
        .ok_or_else(|| ParseError::at(line, "option label must be quoted"))?;
    let (label, rest) = inner
        .split_once('"')
        .ok_or_else(|| ParseError::at(line, "unterminated option label"))?;
    let transitions = parse_transitions(rest.trim(), line)?;
    Ok(OptionDef::new(key, controller, label).with_transitions(transitions))
}

fn parse_pref_chain(rest: &str, line: usize) -> Result<(DmId, Vec<Vec<StateId>>), ParseError> {
    let rest = rest.trim();
    let (dm_token, chain) = rest
        .split_once(':')
        .ok_or_else(|| ParseError::at(line, "expected `[pref] dm=<id> : s.. > s..`"))?;
    let dm = parse_dm_token(dm_token.trim(), line)?;
    let mut tiers: Vec<Vec<StateId>> = Vec::new();
    let mut expect_state = true;
    for token in chain.split_whitespace() {
        match token {
            ">" | "=" if !expect_state => {
                if token == ">" {
                    tiers.push(Vec::new());
                }
                expect_state = true;
            }
            ">" | "=" => return Err(ParseError::at(line, "preference chain starts with an operator")),
            state if expect_state => {
                let id = parse_state_token(state, line)?;
                if tiers.is_empty() {
                    tiers.push(Vec::new());
                }
                tiers.last_mut().unwrap().push(id);
                expect_state = false;
            }
            other => {
                return Err(ParseError::at(
                    line,
                    format!("expected > or = between states, found `{other}`"),
                ))
            }
        }
    }
    if expect_state {
        return Err(ParseError::at(line, "preference chain ends with an operator"));
    }
    Ok((dm, tiers))
}

fn parse_doc(text: &str) -> Result<ModelDoc, ParseError> {
    let mut doc = ModelDoc {
        logic: None,
        dms: Vec::new(),
        options: Vec::new(),
        states_mode: None,
        state_rows: Vec::new(),
        policy: None,
        reach: Vec::new(),
        prefs: Vec::new(),
    };
    let mut in_states_block = false;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let (section, rest) = rest
                .split_once(']')
                .ok_or_else(|| ParseError::at(line_no, "unterminated [section] name"))?;
            let rest = rest.trim();
            in_states_block = false;
            match section {
                "logic" => {
                    let mode = match rest {
                        "binary" => LogicMode::Binary,
                        "b4" => LogicMode::B4,
                        other => {
                            return Err(ParseError::at(
                                line_no,
                                format!("logic must be binary or b4, found `{other}`"),
                            ))
                        }
                    };
                    if doc.logic.replace((line_no, mode)).is_some() {
                        return Err(ParseError::at(line_no, "duplicate [logic] section"));
                    }
                }
                "dm" => {
                    let (id_token, name) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| ParseError::at(line_no, "expected `[dm] <id> <name>`"))?;
                    let id: usize = id_token.parse().map_err(|_| {
                        ParseError::at(line_no, format!("bad decision-maker id `{id_token}`"))
                    })?;
                    doc.dms.push(DecisionMaker {
                        id: DmId(id),
                        name: name.trim().to_string(),
                    });
                }
                "option" => doc.options.push(parse_option_line(rest, line_no)?),
                "states" => {
                    let mode = match rest {
                        "enumerate" => StatesMode::Enumerate,
                        "explicit" => StatesMode::Explicit,
                        "b4-import" => StatesMode::B4Import,
                        other => {
                            return Err(ParseError::at(
                                line_no,
                                format!("states must be enumerate, explicit, or b4-import, found `{other}`"),
                            ))
                        }
                    };
                    if doc.states_mode.replace((line_no, mode)).is_some() {
                        return Err(ParseError::at(line_no, "duplicate [states] section"));
                    }
                    in_states_block = mode != StatesMode::Enumerate;
                }
                "policy" => {
                    let kind = match rest {
                        "fixed" => PolicyKind::Fixed,
                        "drift" => PolicyKind::Drift,
                        "explicit" => PolicyKind::Explicit,
                        other => {
                            return Err(ParseError::at(
                                line_no,
                                format!("policy must be fixed, drift, or explicit, found `{other}`"),
                            ))
                        }
                    };
                    if doc.policy.replace((line_no, kind)).is_some() {
                        return Err(ParseError::at(line_no, "duplicate [policy] section"));
                    }
                }
                "reach" => {
                    let mut tokens = rest.split_whitespace();
                    let dm = parse_dm_token(
                        tokens.next().ok_or_else(|| {
                            ParseError::at(line_no, "expected `[reach] dm=<id> s<k> -> ...`")
                        })?,
                        line_no,
                    )?;
                    let src = parse_state_token(
                        tokens
                            .next()
                            .ok_or_else(|| ParseError::at(line_no, "missing source state"))?,
                        line_no,
                    )?;
                    match tokens.next() {
                        Some("->") => {}
                        _ => return Err(ParseError::at(line_no, "expected -> after the source state")),
                    }
                    let dsts = tokens
                        .map(|t| parse_state_token(t, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    doc.reach.push((line_no, dm, src, dsts));
                }
                "pref" => {
                    let (dm, tiers) = parse_pref_chain(rest, line_no)?;
                    doc.prefs.push((line_no, dm, tiers));
                }
                other => {
                    return Err(ParseError::at(line_no, format!("unknown section [{other}]")))
                }
            }
        } else if in_states_block {
            let (state_token, values) = line.split_once('=').ok_or_else(|| {
                ParseError::at(line_no, "expected `s<k> = <values>` inside the states block")
            })?;
            let id = parse_state_token(state_token.trim(), line_no)?;
            doc.state_rows.push((line_no, id.0, values.trim().to_string()));
        } else {
            return Err(ParseError::at(
                line_no,
                "state rows are only allowed after `[states] explicit` or `[states] b4-import`",
            ));
        }
    }
    Ok(doc)
}

fn interpret_row(
    raw: &str,
    logic: LogicMode,
    mode: StatesMode,
    line: usize,
) -> Result<Vec<TruthValue>, ParseError> {
    match mode {
        StatesMode::B4Import => {
            let marks = parse_option_marks(raw).map_err(|e| ParseError::at(line, e.to_string()))?;
            Ok(binary_to_b4(&marks))
        }
        StatesMode::Explicit => raw
            .split_whitespace()
            .enumerate()
            .map(|(i, token)| {
                let value = match (logic, token) {
                    (LogicMode::Binary, "Y") => Some(TruthValue::True),
                    (LogicMode::Binary, "N") => Some(TruthValue::False),
                    (LogicMode::Binary, "-") => {
                        return Err(ParseError::at(
                            line,
                            "`-` entries need `[states] b4-import`",
                        ))
                    }
                    (LogicMode::Binary, _) => None,
                    (LogicMode::B4, t) => {
                        let mut chars = t.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => TruthValue::from_symbol(c),
                            _ => None,
                        }
                    }
                };
                value.ok_or_else(|| {
                    ParseError::at(
                        line,
                        format!(
                            "bad value `{token}` at position {}; expected {}",
                            i + 1,
                            match logic {
                                LogicMode::Binary => "Y or N",
                                LogicMode::B4 => "T, F, B, or N",
                            }
                        ),
                    )
                })
            })
            .collect(),
        StatesMode::Enumerate => unreachable!("enumerate has no rows"),
    }
}

/// Parses a model file. Structural problems are position-tagged errors;
/// semantic problems (coverage, duplicates across sections, id ranges)
/// are deferred to [`ConflictModel::validate`].
pub fn parse_model(text: &str) -> Result<ConflictModel, ParseError> {
    parse_model_with_policy(text, None)
}

/// As [`parse_model`], optionally overriding the file's `[policy]`.
pub fn parse_model_with_policy(
    text: &str,
    policy_override: Option<PolicyKind>,
) -> Result<ConflictModel, ParseError> {
    let doc = parse_doc(text)?;

    let (_, logic) = doc
        .logic
        .ok_or_else(|| ParseError::at(0, "missing [logic] section"))?;
    let (states_line, states_mode) = doc
        .states_mode
        .ok_or_else(|| ParseError::at(0, "missing [states] section"))?;

    let space = match states_mode {
        StatesMode::Enumerate => {
            if let Some((line, _, _)) = doc.state_rows.first() {
                return Err(ParseError::at(
                    *line,
                    "state rows are not allowed with `[states] enumerate`",
                ));
            }
            enumerate_states(doc.options.len(), logic, DEFAULT_STATE_CAP)
                .map_err(|e| ParseError::at(states_line, e.to_string()))?
        }
        mode => {
            if mode == StatesMode::B4Import && logic != LogicMode::B4 {
                return Err(ParseError::at(
                    states_line,
                    "`[states] b4-import` requires `[logic] b4`",
                ));
            }
            let mut assignments = Vec::with_capacity(doc.state_rows.len());
            for (line, index, raw) in &doc.state_rows {
                if *index != assignments.len() + 1 {
                    return Err(ParseError::at(
                        *line,
                        format!("state rows must be in order; expected s{}, found s{index}", assignments.len() + 1),
                    ));
                }
                assignments.push(interpret_row(raw, logic, mode, *line)?);
            }
            if assignments.is_empty() {
                return Err(ParseError::at(states_line, "no state rows follow [states]"));
            }
            StateSpace::from_assignments(assignments)
        }
    };

    let declared = doc
        .policy
        .map(|(_, kind)| kind)
        .ok_or_else(|| ParseError::at(0, "missing [policy] section"))?;
    let policy = match policy_override.unwrap_or(declared) {
        PolicyKind::Fixed => MovePolicy::FixedOthers,
        PolicyKind::Drift => MovePolicy::EntailmentDrift,
        PolicyKind::Explicit => {
            let mut adjacency = Adjacency::new();
            for (_, dm, src, dsts) in &doc.reach {
                adjacency.insert_row(*dm, *src, dsts.iter().copied());
            }
            MovePolicy::Explicit(adjacency)
        }
    };

    let mut preferences = Vec::new();
    for (line, dm, tiers) in doc.prefs {
        let order = PreferenceOrder::new(dm, tiers)
            .map_err(|e| ParseError::at(line, e.to_string()))?;
        preferences.push(order);
    }

    Ok(ConflictModel {
        dms: doc.dms,
        options: doc.options,
        logic,
        space,
        preferences: if preferences.is_empty() {
            None
        } else {
            Some(preferences)
        },
        policy,
    })
}

fn transitions_spec(set: TransitionSet) -> String {
    if set == TransitionSet::ALL {
        "reversible".to_string()
    } else if set == TransitionSet::IRREVERSIBLE_SET {
        "irreversible-set".to_string()
    } else if set == TransitionSet::IRREVERSIBLE_CLEAR {
        "irreversible-clear".to_string()
    } else {
        let pairs: Vec<String> = set
            .pairs()
            .map(|(src, dst)| format!("{}{}", src.symbol(), dst.symbol()))
            .collect();
        format!("pairs={}", pairs.join(","))
    }
}

/// Canonical serialization: explicit state rows (Y/N in binary mode),
/// sections in a fixed order, reachability only under the explicit
/// policy. `parse_model(serialize_model(m))` is structurally `m`.
pub fn serialize_model(model: &ConflictModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("[logic] {}\n", model.logic));
    for dm in &model.dms {
        out.push_str(&format!("[dm] {} {}\n", dm.id, dm.name));
    }
    for opt in &model.options {
        out.push_str(&format!(
            "[option] {} dm={} \"{}\" {}\n",
            opt.key,
            opt.controller,
            opt.label,
            transitions_spec(opt.own_transitions)
        ));
    }
    out.push_str("[states] explicit\n");
    for state in model.space.states() {
        let row: Vec<String> = state
            .assignment
            .iter()
            .map(|v| match model.logic {
                LogicMode::Binary => {
                    if *v == TruthValue::True { "Y".to_string() } else { "N".to_string() }
                }
                LogicMode::B4 => v.symbol().to_string(),
            })
            .collect();
        out.push_str(&format!("{} = {}\n", state.id, row.join(" ")));
    }
    out.push_str(&format!("[policy] {}\n", model.policy.kind_name()));
    if let MovePolicy::Explicit(adjacency) = &model.policy {
        for (dm, rows) in adjacency.rows() {
            for (src, dsts) in rows {
                if dsts.is_empty() {
                    continue;
                }
                let list: Vec<String> = dsts.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("[reach] dm={dm} {src} -> {}\n", list.join(" ")));
            }
        }
    }
    if let Some(orders) = &model.preferences {
        for order in orders {
            let chain: Vec<String> = order
                .tiers()
                .iter()
                .map(|tier| {
                    tier.iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join(" = ")
                })
                .collect();
            out.push_str(&format!("[pref] dm={} : {}\n", order.dm(), chain.join(" > ")));
        }
    }
    out
}

/// Parses a state-mapping file for `compare`: lines of `s<a> -> s<b>`,
/// with `#` comments.
pub fn parse_mapping(text: &str) -> Result<BTreeMap<StateId, StateId>, ParseError> {
    let mut mapping = BTreeMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once("->")
            .ok_or_else(|| ParseError::at(line_no, "expected `s<a> -> s<b>`"))?;
        let a = parse_state_token(a.trim(), line_no)?;
        let b = parse_state_token(b.trim(), line_no)?;
        if mapping.insert(a, b).is_some() {
            return Err(ParseError::at(line_no, format!("{a} is mapped twice")));
        }
    }
    Ok(mapping)
}
