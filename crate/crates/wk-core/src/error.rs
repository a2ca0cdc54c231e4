//! Error types shared across the crate.

use core::fmt;

use crate::word::{StateId, Symbol};

/// A machine definition refers to something it never declared, or its
/// declared parts contradict each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefinitionError {
    /// A transition or start/final set names a state outside `states`.
    UndeclaredState(StateId),
    /// A transition word, complementarity pair or rule uses a symbol
    /// outside the declared alphabet.
    UndeclaredSymbol(Symbol),
    /// A DFA transition function is missing an entry (it must be total).
    MissingDfaStep(StateId, Symbol),
    /// A unary-regular restriction was built over more than one symbol.
    NotUnaryAlphabet(usize),
    /// A grammar rule is malformed (empty left side, contracting
    /// right side, or left side without a nonterminal).
    BadGrammarRule(usize),
    /// A symbol was declared both terminal and nonterminal.
    OverlappingVocabulary(Symbol),
}

impl fmt::Display for DefinitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefinitionError::UndeclaredState(q) => write!(f, "undeclared state `{q}`"),
            DefinitionError::UndeclaredSymbol(s) => write!(f, "undeclared symbol `{s}`"),
            DefinitionError::MissingDfaStep(q, s) => {
                write!(f, "DFA transition function undefined for ({q}, {s})")
            }
            DefinitionError::NotUnaryAlphabet(n) => {
                write!(f, "unary restriction requires a 1-symbol alphabet, got {n}")
            }
            DefinitionError::BadGrammarRule(i) => write!(f, "malformed grammar rule #{i}"),
            DefinitionError::OverlappingVocabulary(s) => {
                write!(f, "symbol `{s}` is both a terminal and a nonterminal")
            }
        }
    }
}

/// Why a pair of words does not form a valid double strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrandError {
    /// The two strands differ in length.
    LengthMismatch { upper: usize, lower: usize },
    /// The symbols at `index` are not related by the complementarity
    /// relation.
    IncompatiblePair {
        index: usize,
        upper: Symbol,
        lower: Symbol,
    },
}

impl fmt::Display for StrandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandError::LengthMismatch { upper, lower } => {
                write!(f, "strand lengths differ: upper {upper}, lower {lower}")
            }
            StrandError::IncompatiblePair {
                index,
                upper,
                lower,
            } => write!(
                f,
                "symbols ({upper}, {lower}) at position {index} are not complementary"
            ),
        }
    }
}

/// Errors raised by the deterministic run engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    /// The machine fails the static determinism condition.
    NonDeterministicMachine,
    /// The strand does not satisfy the machine's complementarity relation.
    InvalidStrand(StrandError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::NonDeterministicMachine => write!(f, "machine is not deterministic"),
            RunError::InvalidStrand(e) => write!(f, "invalid strand: {e}"),
        }
    }
}

/// Errors raised by the machine-to-machine constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    /// The input machine fails the static determinism condition.
    NonDeterministicMachine,
    /// The construction requires a 1-limited machine.
    NotOneLimited,
    /// The construction requires a different restriction class.
    UnsupportedRestrictionClass {
        found: &'static str,
        required: &'static str,
    },
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::NonDeterministicMachine => {
                write!(f, "machine is not deterministic")
            }
            ConstructionError::NotOneLimited => write!(f, "machine is not 1-limited"),
            ConstructionError::UnsupportedRestrictionClass { found, required } => {
                write!(f, "restriction class {found} unsupported, need {required}")
            }
        }
    }
}

/// A search exhausted its configured budget. Distinct from rejection:
/// the question was not decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceBound {
    /// A PDA configuration exceeded the stack cap.
    PdaStack(usize),
    /// The PDA search expanded more configurations than allowed.
    PdaSteps(usize),
    /// The context-sensitive derivation search visited more distinct
    /// sentential forms than its budget.
    SententialForms(usize),
}

impl fmt::Display for ResourceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceBound::PdaStack(n) => write!(f, "stack bound {n} exceeded"),
            ResourceBound::PdaSteps(n) => write!(f, "step bound {n} exceeded"),
            ResourceBound::SententialForms(n) => {
                write!(f, "sentential-form budget {n} exceeded")
            }
        }
    }
}
