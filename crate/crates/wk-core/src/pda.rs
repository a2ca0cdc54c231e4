//! Nondeterministic pushdown automata accepting by empty stack.
//!
//! Acceptance requires the input to be fully consumed and the stack
//! (including the initial symbol) to be empty. The engine is a bounded
//! breadth-first search over configurations with an explicit visited set, so
//! λ-cycles terminate; exceeding the stack or step caps is reported as a
//! [`ResourceBound`], never as rejection.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{DefinitionError, ResourceBound};
use crate::word::{StateId, Symbol};

/// One rule `(from, input?, top) -> (to, push)`. The push string replaces
/// the matched top; its last symbol becomes the new top, and an empty push
/// is a pop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PdaRule {
    pub from: StateId,
    /// `None` reads no input (a λ-move).
    pub input: Option<Symbol>,
    pub top: Symbol,
    pub to: StateId,
    pub push: Vec<Symbol>,
}

/// Whether the machine is known to keep its stack linear in the input.
///
/// PDAs built from Watson-Crick machines encode the distance between the
/// two heads plus the bottom marker, so along every reachable configuration
/// the stack holds at most `|w| + 2` symbols; the engine asserts that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackDiscipline {
    General,
    DistanceBounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    states: Vec<StateId>,
    input_alphabet: Vec<Symbol>,
    stack_alphabet: Vec<Symbol>,
    start: StateId,
    initial_stack_symbol: Symbol,
    rules: Vec<PdaRule>,
    discipline: StackDiscipline,
}

impl Pda {
    pub fn new(
        states: Vec<StateId>,
        input_alphabet: Vec<Symbol>,
        stack_alphabet: Vec<Symbol>,
        start: StateId,
        initial_stack_symbol: Symbol,
        mut rules: Vec<PdaRule>,
        discipline: StackDiscipline,
    ) -> Result<Self, DefinitionError> {
        let state_set: BTreeSet<&StateId> = states.iter().collect();
        let inputs: BTreeSet<&Symbol> = input_alphabet.iter().collect();
        let stack_syms: BTreeSet<&Symbol> = stack_alphabet.iter().collect();
        if !state_set.contains(&start) {
            return Err(DefinitionError::UndeclaredState(start));
        }
        if !stack_syms.contains(&initial_stack_symbol) {
            return Err(DefinitionError::UndeclaredSymbol(initial_stack_symbol));
        }
        for r in &rules {
            for q in [&r.from, &r.to] {
                if !state_set.contains(q) {
                    return Err(DefinitionError::UndeclaredState(q.clone()));
                }
            }
            if let Some(x) = &r.input {
                if !inputs.contains(x) {
                    return Err(DefinitionError::UndeclaredSymbol(x.clone()));
                }
            }
            for g in core::iter::once(&r.top).chain(r.push.iter()) {
                if !stack_syms.contains(g) {
                    return Err(DefinitionError::UndeclaredSymbol(g.clone()));
                }
            }
        }
        rules.sort();
        rules.dedup();
        Ok(Pda {
            states,
            input_alphabet,
            stack_alphabet,
            start,
            initial_stack_symbol,
            rules,
            discipline,
        })
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn input_alphabet(&self) -> &[Symbol] {
        &self.input_alphabet
    }

    pub fn stack_alphabet(&self) -> &[Symbol] {
        &self.stack_alphabet
    }

    pub fn start(&self) -> &StateId {
        &self.start
    }

    pub fn initial_stack_symbol(&self) -> &Symbol {
        &self.initial_stack_symbol
    }

    pub fn rules(&self) -> &[PdaRule] {
        &self.rules
    }

    pub fn discipline(&self) -> StackDiscipline {
        self.discipline
    }

    /// Empty-stack acceptance of `w`, searching every branch breadth first.
    ///
    /// `max_stack` caps the stack of any explored configuration and
    /// `max_steps` caps how many configurations the search may expand;
    /// hitting either aborts with a [`ResourceBound`].
    pub fn accepts(
        &self,
        w: &[Symbol],
        max_stack: usize,
        max_steps: usize,
    ) -> Result<bool, ResourceBound> {
        let start = PdaConfiguration {
            state: self.start.clone(),
            input_pos: 0,
            stack: alloc::vec![self.initial_stack_symbol.clone()],
        };
        let mut visited: BTreeSet<(StateId, usize, Vec<Symbol>)> = BTreeSet::new();
        visited.insert(start.key());
        let mut queue: VecDeque<PdaConfiguration> = VecDeque::new();
        queue.push_back(start);
        let mut expanded = 0usize;
        while let Some(cfg) = queue.pop_front() {
            if cfg.input_pos == w.len() && cfg.stack.is_empty() {
                return Ok(true);
            }
            if expanded >= max_steps {
                return Err(ResourceBound::PdaSteps(max_steps));
            }
            expanded += 1;
            let top = match cfg.stack.last() {
                Some(top) => top.clone(),
                None => continue,
            };
            for rule in self.rules.iter().filter(|r| r.from == cfg.state) {
                if rule.top != top {
                    continue;
                }
                let consumed = match &rule.input {
                    None => 0,
                    Some(x) => {
                        if cfg.input_pos < w.len() && &w[cfg.input_pos] == x {
                            1
                        } else {
                            continue;
                        }
                    }
                };
                let mut stack = cfg.stack.clone();
                stack.pop();
                stack.extend(rule.push.iter().cloned());
                if stack.len() > max_stack {
                    return Err(ResourceBound::PdaStack(max_stack));
                }
                if let StackDiscipline::DistanceBounded = self.discipline {
                    debug_assert!(
                        stack.len() <= w.len() + 2,
                        "distance-encoded stack exceeded |w| + 2"
                    );
                }
                let next = PdaConfiguration {
                    state: rule.to.clone(),
                    input_pos: cfg.input_pos + consumed,
                    stack,
                };
                if visited.insert(next.key()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(false)
    }
}

/// A search node: state, input position, full stack (top at the end).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdaConfiguration {
    pub state: StateId,
    pub input_pos: usize,
    pub stack: Vec<Symbol>,
}

impl PdaConfiguration {
    fn key(&self) -> (StateId, usize, Vec<Symbol>) {
        (self.state.clone(), self.input_pos, self.stack.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn st(s: &str) -> StateId {
        StateId::new(s)
    }

    fn rule(
        from: &str,
        input: Option<&str>,
        top: &str,
        to: &str,
        push: &str,
    ) -> PdaRule {
        PdaRule {
            from: st(from),
            input: input.map(sym),
            top: sym(top),
            to: st(to),
            push: word(push),
        }
    }

    #[test]
    fn single_pop_rule_accepts_lambda() {
        let p = Pda::new(
            alloc::vec![st("q0")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![rule("q0", None, "$", "q0", "")],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(p.accepts(&word(""), 8, 100), Ok(true));
        assert_eq!(p.accepts(&word("a"), 8, 100), Ok(false));
    }

    #[test]
    fn no_move_means_reject() {
        let p = Pda::new(
            alloc::vec![st("q0")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![rule("q0", Some("a"), "$", "q0", "$")],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(p.accepts(&word(""), 8, 100), Ok(false));
    }

    #[test]
    fn all_branches_are_explored() {
        // Two λ-branches from the start; only the lexicographically later
        // one can empty the stack.
        let p = Pda::new(
            alloc::vec![st("q0"), st("dead"), st("win")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![
                rule("q0", None, "$", "dead", "$"),
                rule("q0", None, "$", "win", "$"),
                rule("win", None, "$", "win", ""),
            ],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(p.accepts(&word(""), 8, 100), Ok(true));
    }

    #[test]
    fn lambda_cycles_terminate() {
        let p = Pda::new(
            alloc::vec![st("q0"), st("q1")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![
                rule("q0", None, "$", "q1", "$"),
                rule("q1", None, "$", "q0", "$"),
            ],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(p.accepts(&word(""), 8, 100), Ok(false));
    }

    #[test]
    fn stack_growth_hits_the_cap() {
        let p = Pda::new(
            alloc::vec![st("q0")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![rule("q0", None, "$", "q0", "$ $")],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(
            p.accepts(&word(""), 4, 1000),
            Err(ResourceBound::PdaStack(4))
        );
    }

    #[test]
    fn step_budget_is_reported() {
        let p = Pda::new(
            alloc::vec![st("q0")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$"), sym("x")],
            st("q0"),
            sym("$"),
            alloc::vec![
                rule("q0", Some("a"), "$", "q0", "$ x"),
                rule("q0", Some("a"), "x", "q0", "x x"),
                rule("q0", None, "x", "q0", ""),
            ],
            StackDiscipline::General,
        )
        .unwrap();
        assert_eq!(
            p.accepts(&word("a a a a a a"), 64, 3),
            Err(ResourceBound::PdaSteps(3))
        );
    }

    #[test]
    fn validation_catches_undeclared_stack_symbols() {
        let err = Pda::new(
            alloc::vec![st("q0")],
            alloc::vec![sym("a")],
            alloc::vec![sym("$")],
            st("q0"),
            sym("$"),
            alloc::vec![rule("q0", None, "$", "q0", "z")],
            StackDiscipline::General,
        );
        assert_eq!(err, Err(DefinitionError::UndeclaredSymbol(sym("z"))));
    }
}
