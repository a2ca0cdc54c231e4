//! Bounded enumeration and cross-machine equivalence checking.
//!
//! Every machine kind is wrapped behind [`Acceptor`], a uniform
//! "does it accept this word" capability, so language claims about
//! constructions reduce to comparing two acceptors on all words up to a
//! bound. Enumeration order is always length-then-declared-alphabet, which
//! keeps counterexamples identical across runs and platforms. A
//! [`ResourceBound`] on either side is never downgraded to a verdict; it
//! surfaces as an `Inconclusive` result naming the offending word.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::dfa::Dfa;
use crate::error::{ConstructionError, ResourceBound, RunError};
use crate::pda::Pda;
use crate::restriction::{Limits, RestrictedWkAutomaton, RestrictionLanguage};
use crate::wk::WkAutomaton;
use crate::word::{render_word, words_of_length, words_up_to, Symbol, Word};

/// Which machine family an acceptor wraps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptorKind {
    Wk,
    RestrictedWk,
    Dfa,
    Pda,
    Predicate,
}

/// A uniform word-acceptance capability over a fixed alphabet.
pub trait Acceptor {
    /// The upper alphabet, in declared order (drives enumeration order).
    fn alphabet(&self) -> &[Symbol];

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound>;

    fn kind(&self) -> AcceptorKind;
}

impl Acceptor for RestrictedWkAutomaton {
    fn alphabet(&self) -> &[Symbol] {
        self.core().alphabet()
    }

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        RestrictedWkAutomaton::accepts(self, w)
    }

    fn kind(&self) -> AcceptorKind {
        AcceptorKind::RestrictedWk
    }
}

impl Acceptor for Dfa {
    fn alphabet(&self) -> &[Symbol] {
        Dfa::alphabet(self)
    }

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        Ok(Dfa::accepts(self, w))
    }

    fn kind(&self) -> AcceptorKind {
        AcceptorKind::Dfa
    }
}

/// A deterministic Watson-Crick automaton under the unrestricted semantics:
/// a word is in the language when any complementary lower strand runs to
/// acceptance.
pub struct WkAcceptor<'a> {
    machine: &'a WkAutomaton,
}

impl<'a> WkAcceptor<'a> {
    pub fn new(machine: &'a WkAutomaton) -> Result<Self, RunError> {
        if !machine.is_deterministic() {
            return Err(RunError::NonDeterministicMachine);
        }
        Ok(WkAcceptor { machine })
    }
}

impl Acceptor for WkAcceptor<'_> {
    fn alphabet(&self) -> &[Symbol] {
        self.machine.alphabet()
    }

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        Ok(self
            .machine
            .accepts(w)
            .expect("determinism checked at construction"))
    }

    fn kind(&self) -> AcceptorKind {
        AcceptorKind::Wk
    }
}

/// A PDA under empty-stack acceptance with per-word engine caps.
///
/// The default policy is stack `|w| + 2` and steps `10·(|w|+2)·|Q|`, the
/// bounds the head-distance encoding never exceeds; fixed caps can be set
/// for generic machines.
pub struct PdaAcceptor<'a> {
    pda: &'a Pda,
    fixed_caps: Option<(usize, usize)>,
}

impl<'a> PdaAcceptor<'a> {
    pub fn new(pda: &'a Pda) -> Self {
        PdaAcceptor {
            pda,
            fixed_caps: None,
        }
    }

    pub fn with_caps(pda: &'a Pda, max_stack: usize, max_steps: usize) -> Self {
        PdaAcceptor {
            pda,
            fixed_caps: Some((max_stack, max_steps)),
        }
    }

    fn caps_for(&self, len: usize) -> (usize, usize) {
        self.fixed_caps
            .unwrap_or((len + 2, 10 * (len + 2) * self.pda.states().len()))
    }
}

impl Acceptor for PdaAcceptor<'_> {
    fn alphabet(&self) -> &[Symbol] {
        self.pda.input_alphabet()
    }

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        let (max_stack, max_steps) = self.caps_for(w.len());
        self.pda.accepts(w, max_stack, max_steps)
    }

    fn kind(&self) -> AcceptorKind {
        AcceptorKind::Pda
    }
}

/// A closed-form language given as a predicate, used as the independent side
/// of equivalence checks.
pub struct PredicateAcceptor<F> {
    alphabet: Vec<Symbol>,
    predicate: F,
}

impl<F: Fn(&[Symbol]) -> bool> PredicateAcceptor<F> {
    pub fn new(alphabet: Vec<Symbol>, predicate: F) -> Self {
        PredicateAcceptor {
            alphabet,
            predicate,
        }
    }
}

impl<F: Fn(&[Symbol]) -> bool> Acceptor for PredicateAcceptor<F> {
    fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    fn accepts(&self, w: &[Symbol]) -> Result<bool, ResourceBound> {
        Ok((self.predicate)(w))
    }

    fn kind(&self) -> AcceptorKind {
        AcceptorKind::Predicate
    }
}

/// Enumeration stopped because a word could not be decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationAborted {
    pub word: Word,
    pub bound: ResourceBound,
}

impl fmt::Display for EnumerationAborted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inconclusive at `{}`: {}",
            render_word(&self.word),
            self.bound
        )
    }
}

/// All accepted words of length at most `max_len`, in canonical order.
pub fn enumerate_accepted(
    a: &dyn Acceptor,
    max_len: usize,
) -> Result<Vec<Word>, EnumerationAborted> {
    let mut out = Vec::new();
    for w in words_up_to(a.alphabet(), max_len) {
        match a.accepts(&w) {
            Ok(true) => out.push(w),
            Ok(false) => {}
            Err(bound) => return Err(EnumerationAborted { word: w, bound }),
        }
    }
    Ok(out)
}

/// One length stratum of [`enumerate_accepted`]; strata can be evaluated
/// concurrently and concatenated in length order without changing the
/// canonical result.
pub fn accepted_of_length(
    a: &dyn Acceptor,
    len: usize,
) -> Result<Vec<Word>, EnumerationAborted> {
    let mut out = Vec::new();
    for w in words_of_length(a.alphabet(), len) {
        match a.accepts(&w) {
            Ok(true) => out.push(w),
            Ok(false) => {}
            Err(bound) => return Err(EnumerationAborted { word: w, bound }),
        }
    }
    Ok(out)
}

/// Outcome of a bounded language comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivResult {
    Equal,
    /// First word (in canonical order) on which the verdicts differ.
    Counterexample { word: Word, left: bool, right: bool },
    /// Some word could not be decided on one side.
    Inconclusive { word: Word, bound: ResourceBound },
}

impl fmt::Display for EquivResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivResult::Equal => write!(f, "equal"),
            EquivResult::Counterexample { word, left, right } => write!(
                f,
                "counterexample {} (left {}, right {})",
                render_word(word),
                verdict(*left),
                verdict(*right)
            ),
            EquivResult::Inconclusive { word, bound } => {
                write!(f, "inconclusive {} ({bound})", render_word(word))
            }
        }
    }
}

fn verdict(accepted: bool) -> &'static str {
    if accepted {
        "accepts"
    } else {
        "rejects"
    }
}

/// Compares two acceptors on every word up to `max_len`. Both must declare
/// the same alphabet as a set; enumeration uses the left one's order.
pub fn bounded_equiv(a: &dyn Acceptor, b: &dyn Acceptor, max_len: usize) -> EquivResult {
    let left: BTreeSet<&Symbol> = a.alphabet().iter().collect();
    let right: BTreeSet<&Symbol> = b.alphabet().iter().collect();
    assert_eq!(left, right, "acceptors compare over one alphabet");
    for w in words_up_to(a.alphabet(), max_len) {
        let l = match a.accepts(&w) {
            Ok(v) => v,
            Err(bound) => return EquivResult::Inconclusive { word: w, bound },
        };
        let r = match b.accepts(&w) {
            Ok(v) => v,
            Err(bound) => return EquivResult::Inconclusive { word: w, bound },
        };
        if l != r {
            return EquivResult::Counterexample {
                word: w,
                left: l,
                right: r,
            };
        }
    }
    EquivResult::Equal
}

/// The complete language of a machine with a finite restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    /// Zero when nothing is accepted.
    pub max_accepted_len: usize,
    pub accepted: Vec<Word>,
}

/// Enumerates exactly the word lengths a finite restriction permits: an
/// accepted upper word needs a complementary lower word in L, and
/// complements preserve length, so every other length is rejected outright.
/// The returned list is therefore the machine's whole language.
pub fn finiteness_check(
    m: &RestrictedWkAutomaton,
) -> Result<FinitenessReport, ConstructionError> {
    let words = match m.restriction() {
        RestrictionLanguage::Finite(words) => words,
        other => {
            return Err(ConstructionError::UnsupportedRestrictionClass {
                found: other.class_name(),
                required: "finite",
            })
        }
    };
    let lengths: BTreeSet<usize> = words.iter().map(|w| w.len()).collect();
    let mut accepted = Vec::new();
    for &len in &lengths {
        for w in words_of_length(m.core().alphabet(), len) {
            let ok = m
                .accepts_with(&w, &Limits::default())
                .expect("finite membership never exhausts a budget");
            if ok {
                accepted.push(w);
            }
        }
    }
    let max_accepted_len = accepted.iter().map(|w| w.len()).max().unwrap_or(0);
    Ok(FinitenessReport {
        max_accepted_len,
        accepted,
    })
}

/// Bounded non-regularity certificate: returns true when provably no
/// complete DFA with at most `max_states` states agrees with `a` on every
/// word of length at most `max_len`.
///
/// The certificate is `max_states + 1` prefixes that pairwise disagree on
/// some extension staying inside the bound; a DFA that small would have to
/// send two of them to the same state and then disagree with the sample.
/// `true` is a proof; `false` only means no certificate was found among
/// prefixes of length at most `max_len / 2`.
pub fn requires_more_dfa_states(
    a: &dyn Acceptor,
    max_len: usize,
    max_states: usize,
) -> Result<bool, EnumerationAborted> {
    let mut labels: BTreeMap<Word, bool> = BTreeMap::new();
    for w in words_up_to(a.alphabet(), max_len) {
        match a.accepts(&w) {
            Ok(v) => {
                labels.insert(w, v);
            }
            Err(bound) => return Err(EnumerationAborted { word: w, bound }),
        }
    }
    let pool: Vec<Word> = words_up_to(a.alphabet(), max_len / 2).collect();
    let n = pool.len();

    // incompatible[i][j]: some in-bound extension separates pool[i] from
    // pool[j], so no consistent DFA may merge them.
    let mut incompatible = alloc::vec![alloc::vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let budget = max_len - pool[i].len().max(pool[j].len());
            let separated = words_up_to(a.alphabet(), budget).any(|x| {
                let mut u = pool[i].clone();
                u.extend(x.iter().cloned());
                let mut v = pool[j].clone();
                v.extend(x.iter().cloned());
                labels[&u] != labels[&v]
            });
            incompatible[i][j] = separated;
            incompatible[j][i] = separated;
        }
    }

    // Look for a pairwise-incompatible set of max_states + 1 prefixes.
    fn extend_clique(
        incompatible: &[Vec<bool>],
        candidates: &[usize],
        need: usize,
    ) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if candidates.len() - pos < need {
                return false;
            }
            let narrowed: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&other| incompatible[c][other])
                .collect();
            if extend_clique(incompatible, &narrowed, need - 1) {
                return true;
            }
        }
        false
    }

    let all: Vec<usize> = (0..n).collect();
    Ok(extend_clique(&incompatible, &all, max_states + 1))
}
