//! Shared helpers for the integration suites: a tiny deterministic PRNG,
//! a randomized model generator, and model rewriting helpers.

// Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use gmcr_core::model::{
    enumerate_states, restrict_states, ConflictModel, DecisionMaker, DmId, LogicMode, OptionDef,
    PreferenceOrder, StateId, StateSpace, TransitionSet, DEFAULT_STATE_CAP,
};
use gmcr_core::reach::{Adjacency, MovePolicy};
use gmcr_core::TruthValue;

/// SplitMix64: small, seedable, good enough for test-case generation.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.wrapping_add(0x9e37_79b9_7f4a_7c15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

pub fn shuffle<T>(rng: &mut Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        items.swap(i, rng.below(i + 1));
    }
}

/// Generates a small random conflict: 2–3 decision makers with 1–2
/// options each, a random weak order per decision maker, and a policy
/// cycling through fixed, drift, and explicit with the seed. Spaces are
/// cut down to at most 8 (three DMs) or 16 (two DMs) states so the naive
/// oracle stays fast.
pub fn random_model(seed: u64) -> ConflictModel {
    let mut rng = Rng::new(seed);
    let dm_count = 2 + rng.below(2);
    let dms: Vec<DecisionMaker> = (1..=dm_count)
        .map(|i| DecisionMaker {
            id: DmId(i),
            name: format!("DM{i}"),
        })
        .collect();

    let mut options = Vec::new();
    for dm in 1..=dm_count {
        for j in 1..=(1 + rng.below(2)) {
            let mut def = OptionDef::new(&format!("o{dm}{j}"), DmId(dm), &format!("Option {dm}.{j}"));
            match rng.below(4) {
                0 => def = def.with_transitions(TransitionSet::IRREVERSIBLE_SET),
                1 => def = def.with_transitions(TransitionSet::IRREVERSIBLE_CLEAR),
                _ => {}
            }
            options.push(def);
        }
    }

    let logic = if rng.below(2) == 0 {
        LogicMode::Binary
    } else {
        LogicMode::B4
    };
    let full = enumerate_states(options.len(), logic, DEFAULT_STATE_CAP).unwrap();
    let max_states = if dm_count == 3 { 8 } else { 16 };
    let space = if full.len() > max_states {
        let mut all: Vec<Vec<TruthValue>> = full
            .states()
            .iter()
            .map(|s| s.assignment.clone())
            .collect();
        shuffle(&mut rng, &mut all);
        all.truncate(max_states);
        restrict_states(&full, &all).unwrap()
    } else {
        full
    };

    let preferences = dms
        .iter()
        .map(|dm| {
            let mut ids: Vec<StateId> = space.ids().collect();
            shuffle(&mut rng, &mut ids);
            let mut tiers: Vec<Vec<StateId>> = Vec::new();
            for s in ids {
                if tiers.is_empty() || rng.below(3) > 0 {
                    tiers.push(vec![s]);
                } else {
                    tiers.last_mut().unwrap().push(s);
                }
            }
            PreferenceOrder::new(dm.id, tiers).unwrap()
        })
        .collect();

    let policy = match seed % 3 {
        0 => MovePolicy::FixedOthers,
        1 => MovePolicy::EntailmentDrift,
        _ => {
            let mut adjacency = Adjacency::new();
            for dm in 1..=dm_count {
                for src in 1..=space.len() {
                    for dst in 1..=space.len() {
                        if src != dst && rng.below(4) == 0 {
                            adjacency.insert(DmId(dm), StateId(src), StateId(dst));
                        }
                    }
                }
            }
            MovePolicy::Explicit(adjacency)
        }
    };

    ConflictModel {
        dms,
        options,
        logic,
        space,
        preferences: Some(preferences),
        policy,
    }
}

/// Renames the states through a random permutation, remapping the
/// preference orders and any explicit adjacency. Returns the rewritten
/// model and the permutation as `new_id_of[old_id - 1]`.
pub fn relabel_model(model: &ConflictModel, rng: &mut Rng) -> (ConflictModel, Vec<usize>) {
    let n = model.space.len();
    let mut new_id_of: Vec<usize> = (1..=n).collect();
    shuffle(rng, &mut new_id_of);

    let mut assignments = vec![Vec::new(); n];
    for (old_index, state) in model.space.states().iter().enumerate() {
        assignments[new_id_of[old_index] - 1] = state.assignment.clone();
    }
    let map = |s: StateId| StateId(new_id_of[s.0 - 1]);

    let preferences = model.preferences.as_ref().map(|orders| {
        orders
            .iter()
            .map(|order| {
                let tiers = order
                    .tiers()
                    .iter()
                    .map(|tier| tier.iter().map(|&s| map(s)).collect())
                    .collect();
                PreferenceOrder::new(order.dm(), tiers).unwrap()
            })
            .collect()
    });

    let policy = match &model.policy {
        MovePolicy::Explicit(adjacency) => {
            let mut remapped = Adjacency::new();
            for (&dm, rows) in adjacency.rows() {
                for (&src, dsts) in rows {
                    for &dst in dsts {
                        remapped.insert(dm, map(src), map(dst));
                    }
                }
            }
            MovePolicy::Explicit(remapped)
        }
        other => other.clone(),
    };

    let relabeled = ConflictModel {
        dms: model.dms.clone(),
        options: model.options.clone(),
        logic: model.logic,
        space: StateSpace::from_assignments(assignments),
        preferences,
        policy,
    };
    (relabeled, new_id_of)
}

/// Rebuilds every preference order by pushing each tier through a
/// strictly monotone score and regrouping. The order relation is
/// untouched, so analysis results must not change.
pub fn retier_preserving(model: &ConflictModel) -> ConflictModel {
    let mut out = model.clone();
    out.preferences = model.preferences.as_ref().map(|orders| {
        orders
            .iter()
            .map(|order| {
                let mut scored: Vec<(u64, Vec<StateId>)> = order
                    .tiers()
                    .iter()
                    .enumerate()
                    .map(|(i, tier)| ((i as u64) * (i as u64) * 3 + 7, tier.clone()))
                    .collect();
                scored.sort_by_key(|(score, _)| *score);
                let tiers = scored.into_iter().map(|(_, tier)| tier).collect();
                PreferenceOrder::new(order.dm(), tiers).unwrap()
            })
            .collect()
    });
    out
}
