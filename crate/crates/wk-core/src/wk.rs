//! Watson-Crick automata: two read heads over a complementary double strand,
//! driven by a single state.
//!
//! A machine is the 6-tuple (alphabet, complementarity relation, states,
//! start, finals, transitions). A transition `q (w1/w2) -> q'` consumes the
//! word `w1` on the upper strand and `w2` on the lower strand; either may be
//! empty. Acceptance holds when some point of the run has consumed both
//! strands completely in a final state.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{DefinitionError, RunError, StrandError};
use crate::word::{prefix_comparable, StateId, Symbol, Word};

/// The complementarity relation ρ ⊆ V × V, read as
/// (upper symbol, lower symbol).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementarityRelation {
    pairs: BTreeSet<(Symbol, Symbol)>,
}

impl ComplementarityRelation {
    pub fn new<I: IntoIterator<Item = (Symbol, Symbol)>>(pairs: I) -> Self {
        ComplementarityRelation {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// The identity relation on `alphabet`.
    pub fn identity(alphabet: &[Symbol]) -> Self {
        ComplementarityRelation::new(alphabet.iter().map(|s| (s.clone(), s.clone())))
    }

    pub fn contains(&self, upper: &Symbol, lower: &Symbol) -> bool {
        self.pairs.contains(&(upper.clone(), lower.clone()))
    }

    /// Lower-strand complements of `upper`, in token order.
    pub fn lowers_for<'a>(&'a self, upper: &'a Symbol) -> impl Iterator<Item = &'a Symbol> {
        self.pairs
            .iter()
            .filter(move |(u, _)| u == upper)
            .map(|(_, l)| l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Symbol, Symbol)> {
        self.pairs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True iff ρ maps every symbol of `alphabet` to exactly one complement
    /// and no two symbols share one — the reading of "injective" used for
    /// strong determinism.
    pub fn is_injective_function(&self, alphabet: &[Symbol]) -> bool {
        let mut seen_lower = BTreeSet::new();
        for upper in alphabet {
            let lowers: Vec<&Symbol> = self.lowers_for(upper).collect();
            if lowers.len() != 1 {
                return false;
            }
            if !seen_lower.insert(lowers[0].clone()) {
                return false;
            }
        }
        true
    }
}

/// One transition rule `from (upper/lower) -> to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub from: StateId,
    pub upper: Word,
    pub lower: Word,
    pub to: StateId,
}

impl Transition {
    pub fn new(from: StateId, upper: Word, lower: Word, to: StateId) -> Self {
        Transition {
            from,
            upper,
            lower,
            to,
        }
    }

    /// Total number of symbols the rule consumes across both strands.
    pub fn consumed(&self) -> usize {
        self.upper.len() + self.lower.len()
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}/{}) -> {}",
            self.from,
            crate::word::render_word(&self.upper),
            crate::word::render_word(&self.lower),
            self.to
        )
    }
}

/// A Watson-Crick automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WkAutomaton {
    alphabet: Vec<Symbol>,
    rho: ComplementarityRelation,
    states: Vec<StateId>,
    start: StateId,
    finals: BTreeSet<StateId>,
    transitions: Vec<Transition>,
}

impl WkAutomaton {
    /// Validates the 6-tuple: start and finals declared, transition states
    /// declared, transition words and ρ over the alphabet. Duplicate
    /// transitions collapse (δ is a set).
    pub fn new(
        alphabet: Vec<Symbol>,
        rho: ComplementarityRelation,
        states: Vec<StateId>,
        start: StateId,
        finals: BTreeSet<StateId>,
        mut transitions: Vec<Transition>,
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
        for (u, l) in rho.iter() {
            if !symbol_set.contains(u) {
                return Err(DefinitionError::UndeclaredSymbol(u.clone()));
            }
            if !symbol_set.contains(l) {
                return Err(DefinitionError::UndeclaredSymbol(l.clone()));
            }
        }
        for t in &transitions {
            for q in [&t.from, &t.to] {
                if !state_set.contains(q) {
                    return Err(DefinitionError::UndeclaredState(q.clone()));
                }
            }
            for s in t.upper.iter().chain(t.lower.iter()) {
                if !symbol_set.contains(s) {
                    return Err(DefinitionError::UndeclaredSymbol(s.clone()));
                }
            }
        }
        transitions.sort();
        transitions.dedup();
        Ok(WkAutomaton {
            alphabet,
            rho,
            states,
            start,
            finals,
            transitions,
        })
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn rho(&self) -> &ComplementarityRelation {
        &self.rho
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn start(&self) -> &StateId {
        &self.start
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transitions_from<'a>(&'a self, q: &'a StateId) -> impl Iterator<Item = &'a Transition> {
        self.transitions.iter().filter(move |t| &t.from == q)
    }

    /// Static determinism: no two distinct co-located rules are prefix
    /// comparable on both strands.
    pub fn is_deterministic(&self) -> bool {
        for (i, a) in self.transitions.iter().enumerate() {
            for b in &self.transitions[i + 1..] {
                if a.from != b.from {
                    continue;
                }
                if prefix_comparable(&a.upper, &b.upper) && prefix_comparable(&a.lower, &b.lower) {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates the structural subclass flags and both static determinism
    /// notions.
    pub fn classify(&self) -> Classification {
        let all_final = self.states.iter().all(|q| self.finals.contains(q));
        let stateless = self.states.len() == 1 && all_final;
        let simple = self
            .transitions
            .iter()
            .all(|t| t.upper.is_empty() || t.lower.is_empty());
        let one_limited = self.transitions.iter().all(|t| t.consumed() == 1);
        let deterministic = self.is_deterministic();
        let strongly_deterministic =
            deterministic && self.rho.is_injective_function(&self.alphabet);
        Classification {
            stateless,
            all_final,
            simple,
            one_limited,
            deterministic,
            strongly_deterministic,
        }
    }

    /// All rules usable at `cfg` on `strand`: source state matches and each
    /// rule word is a prefix of the corresponding unread suffix. On a
    /// deterministic machine the result never holds more than one rule.
    pub fn applicable_transitions<'a>(
        &'a self,
        strand: &DoubleStrand,
        cfg: &WkConfiguration,
    ) -> Vec<&'a Transition> {
        let upper_rest = &strand.upper()[cfg.upper_pos..];
        let lower_rest = &strand.lower()[cfg.lower_pos..];
        self.transitions
            .iter()
            .filter(|t| {
                t.from == cfg.state
                    && upper_rest.starts_with(&t.upper)
                    && lower_rest.starts_with(&t.lower)
            })
            .collect()
    }

    /// Runs the deterministic engine on a complete double strand.
    ///
    /// The run accepts as soon as it visits a configuration with both heads
    /// at the strand end and a final state; it rejects when no rule applies
    /// or when a λ/λ rule revisits a configuration (a stall). Errors if the
    /// machine is not deterministic or the strand violates ρ.
    pub fn run_on_strands(&self, strand: &DoubleStrand) -> Result<bool, RunError> {
        if !self.is_deterministic() {
            return Err(RunError::NonDeterministicMachine);
        }
        strand
            .check_against(&self.rho)
            .map_err(RunError::InvalidStrand)?;
        let end = strand.len();
        let mut cfg = WkConfiguration {
            state: self.start.clone(),
            upper_pos: 0,
            lower_pos: 0,
        };
        // Without λ/λ rules every step consumes a symbol, so a configuration
        // can never recur and stall tracking is unnecessary.
        let track_stalls = self.transitions.iter().any(|t| t.consumed() == 0);
        let mut visited: BTreeSet<(StateId, usize, usize)> = BTreeSet::new();
        loop {
            if cfg.upper_pos == end && cfg.lower_pos == end && self.finals.contains(&cfg.state) {
                return Ok(true);
            }
            if track_stalls && !visited.insert((cfg.state.clone(), cfg.upper_pos, cfg.lower_pos))
            {
                // λ/λ cycle: the run can make no further progress.
                return Ok(false);
            }
            let applicable = self.applicable_transitions(strand, &cfg);
            let step = match applicable.first() {
                None => return Ok(false),
                Some(t) => *t,
            };
            debug_assert!(applicable.len() <= 1, "determinism violated at runtime");
            cfg = WkConfiguration {
                state: step.to.clone(),
                upper_pos: cfg.upper_pos + step.upper.len(),
                lower_pos: cfg.lower_pos + step.lower.len(),
            };
        }
    }

    /// Unrestricted acceptance of an upper word: some complementary lower
    /// word completes a strand the machine runs to acceptance. Lower words
    /// stream lazily and the scan stops at the first accepting one.
    pub fn accepts(&self, upper: &[Symbol]) -> Result<bool, RunError> {
        if !self.is_deterministic() {
            return Err(RunError::NonDeterministicMachine);
        }
        for lower in crate::restriction::complements(&self.rho, upper) {
            let strand = DoubleStrand::new(upper.to_vec(), lower, &self.rho)
                .expect("complement streams satisfy rho by construction");
            if self.run_on_strands(&strand)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Bounded semi-decision of weak determinism: explores every valid
    /// double strand of length at most `max_len` and every configuration any
    /// run can reach, and reports whether more than one rule ever applies.
    pub fn check_weak_determinism_bounded(&self, max_len: usize) -> bool {
        let pairs: Vec<&(Symbol, Symbol)> = self.rho.iter().collect();
        for len in 0..=max_len {
            if pairs.is_empty() && len > 0 {
                break;
            }
            let mut odometer = alloc::vec![0usize; len];
            loop {
                let upper: Word = odometer.iter().map(|&i| pairs[i].0.clone()).collect();
                let lower: Word = odometer.iter().map(|&i| pairs[i].1.clone()).collect();
                let strand = DoubleStrand::new(upper, lower, &self.rho)
                    .expect("strand built from rho pairs");
                if !self.unique_continuation_everywhere(&strand) {
                    return false;
                }
                // Next odometer value, most significant digit leftmost.
                let mut pos = len;
                loop {
                    if pos == 0 {
                        odometer.clear();
                        break;
                    }
                    pos -= 1;
                    odometer[pos] += 1;
                    if odometer[pos] < pairs.len() {
                        break;
                    }
                    odometer[pos] = 0;
                }
                if odometer.is_empty() {
                    break;
                }
            }
        }
        true
    }

    fn unique_continuation_everywhere(&self, strand: &DoubleStrand) -> bool {
        let mut frontier = alloc::vec![WkConfiguration {
            state: self.start.clone(),
            upper_pos: 0,
            lower_pos: 0,
        }];
        let mut visited: BTreeSet<(StateId, usize, usize)> = BTreeSet::new();
        while let Some(cfg) = frontier.pop() {
            if !visited.insert((cfg.state.clone(), cfg.upper_pos, cfg.lower_pos)) {
                continue;
            }
            let applicable = self.applicable_transitions(strand, &cfg);
            if applicable.len() > 1 {
                return false;
            }
            for t in applicable {
                frontier.push(WkConfiguration {
                    state: t.to.clone(),
                    upper_pos: cfg.upper_pos + t.upper.len(),
                    lower_pos: cfg.lower_pos + t.lower.len(),
                });
            }
        }
        true
    }
}

/// A pair of equal-length words pointwise related by ρ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleStrand {
    upper: Word,
    lower: Word,
}

impl DoubleStrand {
    /// Validates both strand invariants against `rho`.
    pub fn new(upper: Word, lower: Word, rho: &ComplementarityRelation) -> Result<Self, StrandError> {
        let strand = DoubleStrand { upper, lower };
        strand.check_against(rho)?;
        Ok(strand)
    }

    fn check_against(&self, rho: &ComplementarityRelation) -> Result<(), StrandError> {
        if self.upper.len() != self.lower.len() {
            return Err(StrandError::LengthMismatch {
                upper: self.upper.len(),
                lower: self.lower.len(),
            });
        }
        for (i, (u, l)) in self.upper.iter().zip(self.lower.iter()).enumerate() {
            if !rho.contains(u, l) {
                return Err(StrandError::IncompatiblePair {
                    index: i,
                    upper: u.clone(),
                    lower: l.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn upper(&self) -> &[Symbol] {
        &self.upper
    }

    pub fn lower(&self) -> &[Symbol] {
        &self.lower
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }
}

/// A point of a run: current state plus both head positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WkConfiguration {
    pub state: StateId,
    pub upper_pos: usize,
    pub lower_pos: usize,
}

/// Subclass membership and determinism flags of one machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub stateless: bool,
    pub all_final: bool,
    pub simple: bool,
    pub one_limited: bool,
    pub deterministic: bool,
    pub strongly_deterministic: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stateless: {}\nall-final: {}\nsimple: {}\n1-limited: {}\ndeterministic: {}\nstrongly-deterministic: {}",
            self.stateless,
            self.all_final,
            self.simple,
            self.one_limited,
            self.deterministic,
            self.strongly_deterministic
        )
    }
}
