//! Deterministic finite automata with a total transition function.
//!
//! The product and lifting constructions assume δ is defined for every
//! (state, symbol) pair, so totality is part of the type's contract;
//! [`Dfa::completed`] turns a partial table into a total one by adding a
//! sink reject state.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::DefinitionError;
use crate::word::{StateId, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<StateId>,
    alphabet: Vec<Symbol>,
    start: StateId,
    finals: BTreeSet<StateId>,
    delta: BTreeMap<(StateId, Symbol), StateId>,
}

impl Dfa {
    /// Validates declarations and totality of δ.
    pub fn new(
        states: Vec<StateId>,
        alphabet: Vec<Symbol>,
        start: StateId,
        finals: BTreeSet<StateId>,
        delta: BTreeMap<(StateId, Symbol), StateId>,
    ) -> Result<Self, DefinitionError> {
        let state_set: BTreeSet<&StateId> = states.iter().collect();
        let symbol_set: BTreeSet<&Symbol> = alphabet.iter().collect();
        if !state_set.contains(&start) {
            return Err(DefinitionError::UndeclaredState(start));
        }
        for q in &finals {
            if !state_set.contains(q) {
                return Err(DefinitionError::UndeclaredState(q.clone()));
            }
        }
        for ((q, s), r) in &delta {
            if !state_set.contains(q) {
                return Err(DefinitionError::UndeclaredState(q.clone()));
            }
            if !state_set.contains(r) {
                return Err(DefinitionError::UndeclaredState(r.clone()));
            }
            if !symbol_set.contains(s) {
                return Err(DefinitionError::UndeclaredSymbol(s.clone()));
            }
        }
        for q in &states {
            for s in &alphabet {
                if !delta.contains_key(&(q.clone(), s.clone())) {
                    return Err(DefinitionError::MissingDfaStep(q.clone(), s.clone()));
                }
            }
        }
        Ok(Dfa {
            states,
            alphabet,
            start,
            finals,
            delta,
        })
    }

    /// Builds a DFA from a possibly partial table by routing every missing
    /// step to a fresh non-final sink.
    pub fn completed(
        mut states: Vec<StateId>,
        alphabet: Vec<Symbol>,
        start: StateId,
        finals: BTreeSet<StateId>,
        mut delta: BTreeMap<(StateId, Symbol), StateId>,
    ) -> Result<Self, DefinitionError> {
        let total = states
            .iter()
            .all(|q| alphabet.iter().all(|s| delta.contains_key(&(q.clone(), s.clone()))));
        if !total {
            let sink = fresh_state(&states, "sink");
            states.push(sink.clone());
            for q in &states {
                for s in &alphabet {
                    delta
                        .entry((q.clone(), s.clone()))
                        .or_insert_with(|| sink.clone());
                }
            }
        }
        Dfa::new(states, alphabet, start, finals, delta)
    }

    /// The one-state DFA accepting every word over `alphabet`.
    pub fn universal(alphabet: Vec<Symbol>) -> Self {
        let q = StateId::new("all");
        let delta = alphabet
            .iter()
            .map(|s| ((q.clone(), s.clone()), q.clone()))
            .collect();
        Dfa {
            states: alloc::vec![q.clone()],
            alphabet,
            start: q.clone(),
            finals: [q].into_iter().collect(),
            delta,
        }
    }

    /// The one-state DFA rejecting every word over `alphabet`.
    pub fn empty_language(alphabet: Vec<Symbol>) -> Self {
        let q = StateId::new("none");
        let delta = alphabet
            .iter()
            .map(|s| ((q.clone(), s.clone()), q.clone()))
            .collect();
        Dfa {
            states: alloc::vec![q.clone()],
            alphabet,
            start: q,
            finals: BTreeSet::new(),
            delta,
        }
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn start(&self) -> &StateId {
        &self.start
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn delta(&self) -> &BTreeMap<(StateId, Symbol), StateId> {
        &self.delta
    }

    pub fn step(&self, q: &StateId, s: &Symbol) -> Option<&StateId> {
        self.delta.get(&(q.clone(), s.clone()))
    }

    /// Runs the DFA. Words containing symbols outside the alphabet are
    /// rejected, not an error.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut q = self.start.clone();
        for s in w {
            match self.step(&q, s) {
                Some(r) => q = r.clone(),
                None => return false,
            }
        }
        self.finals.contains(&q)
    }
}

/// Picks a state name based on `hint` that does not collide with `taken`.
pub(crate) fn fresh_state(taken: &[StateId], hint: &str) -> StateId {
    if !taken.iter().any(|q| q.as_str() == hint) {
        return StateId::new(hint);
    }
    let mut n = 1usize;
    loop {
        let candidate: String = format!("{hint}{n}");
        if !taken.iter().any(|q| q.as_str() == candidate) {
            return StateId::new(&candidate);
        }
        n += 1;
    }
}
