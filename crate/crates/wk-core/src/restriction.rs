//! Restriction languages and the restricted acceptance semantics.
//!
//! A restricted machine pairs a deterministic Watson-Crick automaton with a
//! language L over the lower strand: an upper word is accepted when some
//! complementary lower word lies in L and the (lower-)completed strand runs
//! to acceptance. Words none of whose complements lie in L are rejected
//! before the automaton executes at all.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::dfa::Dfa;
use crate::error::{ConstructionError, ResourceBound};
use crate::grammar::{Cfg, Csg, CykRecognizer};
use crate::wk::{DoubleStrand, WkAutomaton};
use crate::word::{Symbol, Word};

/// Engine budgets threaded through membership decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cap on distinct sentential forms during context-sensitive search.
    pub cs_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cs_budget: 1_000_000,
        }
    }
}

/// A context-free restriction: the grammar as declared plus a CYK
/// recognizer over its normal form, prepared once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfLanguage {
    grammar: Cfg,
    recognizer: CykRecognizer,
}

impl CfLanguage {
    pub fn new(grammar: Cfg) -> Self {
        let recognizer = CykRecognizer::new(&grammar.to_chomsky_normal_form());
        CfLanguage {
            grammar,
            recognizer,
        }
    }

    pub fn grammar(&self) -> &Cfg {
        &self.grammar
    }
}

/// The lower-strand language L, over the five classes the model is studied
/// with. Every variant answers membership exactly; only the
/// context-sensitive decider can run out of budget, which surfaces as a
/// [`ResourceBound`] rather than a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictionLanguage {
    Finite(BTreeSet<Word>),
    Regular(Dfa),
    UnaryRegular(Dfa),
    ContextFree(CfLanguage),
    ContextSensitive(Csg),
}

impl RestrictionLanguage {
    pub fn finite<I: IntoIterator<Item = Word>>(words: I) -> Self {
        RestrictionLanguage::Finite(words.into_iter().collect())
    }

    pub fn regular(dfa: Dfa) -> Self {
        RestrictionLanguage::Regular(dfa)
    }

    /// Like [`RestrictionLanguage::regular`] but requires a one-symbol
    /// alphabet.
    pub fn unary_regular(dfa: Dfa) -> Result<Self, crate::error::DefinitionError> {
        if dfa.alphabet().len() != 1 {
            return Err(crate::error::DefinitionError::NotUnaryAlphabet(
                dfa.alphabet().len(),
            ));
        }
        Ok(RestrictionLanguage::UnaryRegular(dfa))
    }

    pub fn context_free(grammar: Cfg) -> Self {
        RestrictionLanguage::ContextFree(CfLanguage::new(grammar))
    }

    pub fn context_sensitive(grammar: Csg) -> Self {
        RestrictionLanguage::ContextSensitive(grammar)
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            RestrictionLanguage::Finite(_) => "finite",
            RestrictionLanguage::Regular(_) => "regular",
            RestrictionLanguage::UnaryRegular(_) => "unary-regular",
            RestrictionLanguage::ContextFree(_) => "context-free",
            RestrictionLanguage::ContextSensitive(_) => "context-sensitive",
        }
    }

    /// The symbols the language is stated over: DFA alphabet, grammar
    /// terminals, or for finite sets the symbols the words use.
    pub fn symbols(&self) -> Vec<Symbol> {
        match self {
            RestrictionLanguage::Finite(words) => {
                let set: alloc::collections::BTreeSet<Symbol> =
                    words.iter().flatten().cloned().collect();
                set.into_iter().collect()
            }
            RestrictionLanguage::Regular(dfa) | RestrictionLanguage::UnaryRegular(dfa) => {
                dfa.alphabet().to_vec()
            }
            RestrictionLanguage::ContextFree(cf) => cf.grammar().terminals().to_vec(),
            RestrictionLanguage::ContextSensitive(csg) => csg.terminals().to_vec(),
        }
    }

    /// Exact membership with default budgets.
    pub fn contains(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        self.contains_with(w, &Limits::default())
    }

    /// Exact membership. Words using symbols the language never mentions are
    /// simply not members.
    pub fn contains_with(&self, w: &[Symbol], limits: &Limits) -> Result<bool, ResourceBound> {
        match self {
            RestrictionLanguage::Finite(words) => Ok(words.contains(w)),
            RestrictionLanguage::Regular(dfa) | RestrictionLanguage::UnaryRegular(dfa) => {
                Ok(dfa.accepts(w))
            }
            RestrictionLanguage::ContextFree(cf) => Ok(cf.recognizer.accepts(w)),
            RestrictionLanguage::ContextSensitive(csg) => {
                csg.derives_bounded(w, limits.cs_budget)
            }
        }
    }
}

/// Lazily yields every lower word complementary to `upper`, in lexicographic
/// order of the lower symbols. The stream is empty when some upper symbol
/// has no complement at all.
pub fn complements<'a>(
    rho: &crate::wk::ComplementarityRelation,
    upper: &'a [Symbol],
) -> Complements<'a> {
    let choices: Vec<Vec<Symbol>> = upper
        .iter()
        .map(|u| rho.lowers_for(u).cloned().collect())
        .collect();
    let empty = choices.iter().any(|c| c.is_empty());
    Complements {
        _upper: upper,
        choices,
        odometer: None,
        exhausted: empty,
    }
}

/// Single-consumer iterator over complementary lower words.
pub struct Complements<'a> {
    _upper: &'a [Symbol],
    choices: Vec<Vec<Symbol>>,
    odometer: Option<Vec<usize>>,
    exhausted: bool,
}

impl Iterator for Complements<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.exhausted {
            return None;
        }
        let odo = match &mut self.odometer {
            None => self.odometer.insert(alloc::vec![0; self.choices.len()]),
            Some(odo) => {
                // Advance the previous value; rightmost digit least
                // significant keeps the output lexicographic.
                let mut pos = odo.len();
                loop {
                    if pos == 0 {
                        self.exhausted = true;
                        return None;
                    }
                    pos -= 1;
                    odo[pos] += 1;
                    if odo[pos] < self.choices[pos].len() {
                        break;
                    }
                    odo[pos] = 0;
                }
                odo
            }
        };
        Some(
            odo.iter()
                .enumerate()
                .map(|(i, &k)| self.choices[i][k].clone())
                .collect(),
        )
    }
}

/// The 7-tuple: a deterministic Watson-Crick automaton plus the lower-strand
/// restriction L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedWkAutomaton {
    core: WkAutomaton,
    restriction: RestrictionLanguage,
}

/// What [`RestrictedWkAutomaton::accepts_detailed`] observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedRun {
    pub accepted: bool,
    /// True when the word was turned away without the automaton executing:
    /// no complementary lower word passed the restriction.
    pub rejected_before_run: bool,
    /// The lower word of the first accepting strand, if any.
    pub witness: Option<Word>,
}

impl RestrictedWkAutomaton {
    /// Requires the core to pass the static determinism condition.
    pub fn new(
        core: WkAutomaton,
        restriction: RestrictionLanguage,
    ) -> Result<Self, ConstructionError> {
        if !core.is_deterministic() {
            return Err(ConstructionError::NonDeterministicMachine);
        }
        Ok(RestrictedWkAutomaton { core, restriction })
    }

    pub fn core(&self) -> &WkAutomaton {
        &self.core
    }

    pub fn restriction(&self) -> &RestrictionLanguage {
        &self.restriction
    }

    pub fn into_parts(self) -> (WkAutomaton, RestrictionLanguage) {
        (self.core, self.restriction)
    }

    pub fn accepts(&self, upper: &[Symbol]) -> Result<bool, ResourceBound> {
        self.accepts_with(upper, &Limits::default())
    }

    pub fn accepts_with(
        &self,
        upper: &[Symbol],
        limits: &Limits,
    ) -> Result<bool, ResourceBound> {
        Ok(self.accepts_detailed(upper, limits)?.accepted)
    }

    /// The acceptance decision plus the short-circuit diagnostic: lower
    /// words are streamed lazily, the automaton runs only on those the
    /// restriction admits, and the stream stops at the first accepting one.
    pub fn accepts_detailed(
        &self,
        upper: &[Symbol],
        limits: &Limits,
    ) -> Result<RestrictedRun, ResourceBound> {
        let mut ran_machine = false;
        for lower in complements(self.core.rho(), upper) {
            if !self.restriction.contains_with(&lower, limits)? {
                continue;
            }
            ran_machine = true;
            let strand = DoubleStrand::new(upper.to_vec(), lower.clone(), self.core.rho())
                .expect("complement streams satisfy rho by construction");
            let accepted = self
                .core
                .run_on_strands(&strand)
                .expect("determinism checked at construction");
            if accepted {
                return Ok(RestrictedRun {
                    accepted: true,
                    rejected_before_run: false,
                    witness: Some(lower),
                });
            }
        }
        Ok(RestrictedRun {
            accepted: false,
            rejected_before_run: !ran_machine,
            witness: None,
        })
    }
}
