//! Symbols, state names and words.
//!
//! A symbol is an arbitrary non-whitespace token, not a single character, so
//! words are token sequences. Lexicographic orderings used by the oracles are
//! always over a machine's declared alphabet order, never over token text.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// One token of an alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(token: &str) -> Self {
        Symbol(Arc::from(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Symbol {
    fn from(token: &str) -> Self {
        Symbol::new(token)
    }
}

/// An opaque state name. Constructions derive fresh names from existing
/// ones and never rely on any numeric scheme.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(Arc<str>);

impl StateId {
    pub fn new(name: &str) -> Self {
        StateId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for StateId {
    fn from(name: &str) -> Self {
        StateId::new(name)
    }
}

/// A word over some alphabet; the empty word is the empty vector.
pub type Word = Vec<Symbol>;

/// Builds a word from whitespace-separated tokens. `word("a a b")` is the
/// three-token word, `word("")` is the empty word.
pub fn word(tokens: &str) -> Word {
    tokens.split_whitespace().map(Symbol::new).collect()
}

/// Renders a word as space-separated tokens, with `-` for the empty word.
pub fn render_word(w: &[Symbol]) -> String {
    if w.is_empty() {
        return String::from("-");
    }
    let mut out = String::new();
    for (i, s) in w.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(s.as_str());
    }
    out
}

/// True iff one word is a prefix of the other (including equality and the
/// empty word, which is a prefix of everything).
pub fn prefix_comparable(u: &[Symbol], v: &[Symbol]) -> bool {
    v.starts_with(u) || u.starts_with(v)
}

/// All words over `alphabet` of length at most `max_len`, in
/// length-then-lexicographic order. Lexicographic means the order in which
/// the alphabet was declared, so enumeration is reproducible across runs.
pub fn words_up_to(alphabet: &[Symbol], max_len: usize) -> WordsUpTo {
    WordsUpTo {
        alphabet: alphabet.to_vec(),
        max_len,
        next_len: 0,
        odometer: Vec::new(),
        done: false,
    }
}

/// All words over `alphabet` of exactly `len`, lexicographically.
pub fn words_of_length(alphabet: &[Symbol], len: usize) -> WordsUpTo {
    WordsUpTo {
        alphabet: alphabet.to_vec(),
        max_len: len,
        next_len: len,
        odometer: Vec::new(),
        done: false,
    }
}

/// Iterator over words in canonical (length, then declared-alphabet) order.
#[derive(Clone)]
pub struct WordsUpTo {
    alphabet: Vec<Symbol>,
    max_len: usize,
    next_len: usize,
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for WordsUpTo {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if self.odometer.len() != self.next_len {
            // Entering a new length stratum.
            if self.next_len > self.max_len || (self.alphabet.is_empty() && self.next_len > 0) {
                self.done = true;
                return None;
            }
            self.odometer = alloc::vec![0; self.next_len];
        }
        let out: Word = self
            .odometer
            .iter()
            .map(|&i| self.alphabet[i].clone())
            .collect();
        // Advance: rightmost digit is least significant.
        let mut pos = self.next_len;
        loop {
            if pos == 0 {
                self.next_len += 1;
                self.odometer.clear();
                if self.next_len > self.max_len {
                    self.done = true;
                }
                break;
            }
            pos -= 1;
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.alphabet.len() {
                break;
            }
            self.odometer[pos] = 0;
        }
        // An empty stratum odometer means we just emitted the empty word.
        if self.next_len == 0 {
            self.next_len = 1;
        }
        Some(out)
    }
}
