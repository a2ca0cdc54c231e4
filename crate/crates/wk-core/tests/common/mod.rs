//! Shared fixtures, closed-form predicates, independent oracles and seeded
//! generators for the integration suites.
//!
//! The oracles here deliberately reimplement decisions by routes the library
//! does not use (derivation enumeration instead of CYK, subset simulation
//! instead of a DFA walk, derivation trees instead of the PDA search), so a
//! library bug cannot hide behind a matching bug in its own checker.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use wk_core::word::{prefix_comparable, word, Word};
use wk_core::{
    Cfg, CfgRule, ComplementarityRelation, Csg, CsgRule, Dfa, Pda, RestrictedWkAutomaton,
    RestrictionLanguage, StackDiscipline, StateId, Symbol, Transition, WkAutomaton,
};

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s)
}

pub fn st(s: &str) -> StateId {
    StateId::new(s)
}

// ---------------------------------------------------------------------------
// Golden machines
// ---------------------------------------------------------------------------

/// Core of the a^n b^n machine: q0 loops on (a/λ), each b consumes two lower
/// a's, ρ maps both symbols to a.
pub fn anbn_core() -> WkAutomaton {
    WkAutomaton::new(
        vec![sym("a"), sym("b")],
        ComplementarityRelation::new([(sym("a"), sym("a")), (sym("b"), sym("a"))]),
        vec![st("q0"), st("qf")],
        st("q0"),
        [st("qf")].into_iter().collect(),
        vec![
            Transition::new(st("q0"), word("a"), word(""), st("q0")),
            Transition::new(st("q0"), word("b"), word("a a"), st("qf")),
            Transition::new(st("qf"), word("b"), word("a a"), st("qf")),
        ],
    )
    .unwrap()
}

/// The a^n b^n machine restricted to a+ on the lower strand.
pub fn anbn_machine() -> RestrictedWkAutomaton {
    RestrictedWkAutomaton::new(
        anbn_core(),
        RestrictionLanguage::unary_regular(dfa_a_plus()).unwrap(),
    )
    .unwrap()
}

/// Core of the a^n b^n c^n machine. The complement string of a^n b^n c^n is
/// a^{2n} b^n, which the heads consume as (a/aa)^n (b/b)^n (c/λ)^n.
pub fn anbncn_core() -> WkAutomaton {
    WkAutomaton::new(
        vec![sym("a"), sym("b"), sym("c")],
        ComplementarityRelation::new([
            (sym("a"), sym("a")),
            (sym("b"), sym("a")),
            (sym("c"), sym("b")),
        ]),
        vec![st("q0"), st("q1"), st("qf")],
        st("q0"),
        [st("qf")].into_iter().collect(),
        vec![
            Transition::new(st("q0"), word("a"), word("a a"), st("q0")),
            Transition::new(st("q0"), word("b"), word("b"), st("q1")),
            Transition::new(st("q1"), word("b"), word("b"), st("q1")),
            Transition::new(st("q1"), word("c"), word(""), st("qf")),
            Transition::new(st("qf"), word("c"), word(""), st("qf")),
        ],
    )
    .unwrap()
}

/// The a^n b^n c^n machine with the context-free restriction a^{2n} b^n.
pub fn anbncn_machine() -> RestrictedWkAutomaton {
    RestrictedWkAutomaton::new(
        anbncn_core(),
        RestrictionLanguage::context_free(a2nbn_cfg()),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Grammars
// ---------------------------------------------------------------------------

/// S -> a a S b | a a b, generating { a^{2n} b^n | n >= 1 }.
pub fn a2nbn_cfg() -> Cfg {
    Cfg::new(
        vec![sym("S")],
        vec![sym("a"), sym("b")],
        sym("S"),
        vec![
            CfgRule {
                lhs: sym("S"),
                rhs: word("a a S b"),
            },
            CfgRule {
                lhs: sym("S"),
                rhs: word("a a b"),
            },
        ],
    )
    .unwrap()
}

/// S -> a S b | a b, generating { a^n b^n | n >= 1 }.
pub fn anbn_cfg() -> Cfg {
    Cfg::new(
        vec![sym("S")],
        vec![sym("a"), sym("b")],
        sym("S"),
        vec![
            CfgRule {
                lhs: sym("S"),
                rhs: word("a S b"),
            },
            CfgRule {
                lhs: sym("S"),
                rhs: word("a b"),
            },
        ],
    )
    .unwrap()
}

/// Even and odd palindromes over {a, b}, λ included.
pub fn palindrome_cfg() -> Cfg {
    let s = |r: &str| CfgRule {
        lhs: sym("S"),
        rhs: word(r),
    };
    Cfg::new(
        vec![sym("S")],
        vec![sym("a"), sym("b")],
        sym("S"),
        vec![s("a S a"), s("b S b"), s("a"), s("b"), s("")],
    )
    .unwrap()
}

/// Unit chain fixture: S -> A, A -> a.
pub fn unit_chain_cfg() -> Cfg {
    Cfg::new(
        vec![sym("S"), sym("A")],
        vec![sym("a")],
        sym("S"),
        vec![
            CfgRule {
                lhs: sym("S"),
                rhs: word("A"),
            },
            CfgRule {
                lhs: sym("A"),
                rhs: word("a"),
            },
        ],
    )
    .unwrap()
}

/// λ-only fixture: S -> λ.
pub fn lambda_only_cfg() -> Cfg {
    Cfg::new(
        vec![sym("S")],
        vec![sym("a")],
        sym("S"),
        vec![CfgRule {
            lhs: sym("S"),
            rhs: word(""),
        }],
    )
    .unwrap()
}

/// Noncontracting grammar for { a^n b^n c^n | n >= 1 }.
pub fn abc_csg() -> Csg {
    let rule = |l: &str, r: &str| CsgRule {
        lhs: word(l),
        rhs: word(r),
    };
    Csg::new(
        vec![sym("S"), sym("B"), sym("C")],
        vec![sym("a"), sym("b"), sym("c")],
        sym("S"),
        vec![
            rule("S", "a S B C"),
            rule("S", "a B C"),
            rule("C B", "B C"),
            rule("a B", "a b"),
            rule("b B", "b b"),
            rule("b C", "b c"),
            rule("c C", "c c"),
        ],
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// DFAs over {a, b}
// ---------------------------------------------------------------------------

pub fn dfa_a_plus() -> Dfa {
    let mut delta = BTreeMap::new();
    delta.insert((st("z"), sym("a")), st("s"));
    delta.insert((st("s"), sym("a")), st("s"));
    Dfa::new(
        vec![st("z"), st("s")],
        vec![sym("a")],
        st("z"),
        [st("s")].into_iter().collect(),
        delta,
    )
    .unwrap()
}

pub fn dfa_ab_star() -> Dfa {
    let mut delta = BTreeMap::new();
    delta.insert((st("e"), sym("a")), st("o"));
    delta.insert((st("o"), sym("b")), st("e"));
    Dfa::completed(
        vec![st("e"), st("o")],
        vec![sym("a"), sym("b")],
        st("e"),
        [st("e")].into_iter().collect(),
        delta,
    )
    .unwrap()
}

/// a* b over {a, b}.
pub fn dfa_a_star_b() -> Dfa {
    let mut delta = BTreeMap::new();
    delta.insert((st("h"), sym("a")), st("h"));
    delta.insert((st("h"), sym("b")), st("t"));
    Dfa::completed(
        vec![st("h"), st("t")],
        vec![sym("a"), sym("b")],
        st("h"),
        [st("t")].into_iter().collect(),
        delta,
    )
    .unwrap()
}

pub fn dfa_sigma_star() -> Dfa {
    Dfa::universal(vec![sym("a"), sym("b")])
}

pub fn dfa_empty() -> Dfa {
    Dfa::empty_language(vec![sym("a"), sym("b")])
}

/// Words with an even number of a's.
pub fn dfa_even_as() -> Dfa {
    let mut delta = BTreeMap::new();
    for (q, r) in [("even", "odd"), ("odd", "even")] {
        delta.insert((st(q), sym("a")), st(r));
        delta.insert((st(q), sym("b")), st(q));
    }
    Dfa::new(
        vec![st("even"), st("odd")],
        vec![sym("a"), sym("b")],
        st("even"),
        [st("even")].into_iter().collect(),
        delta,
    )
    .unwrap()
}

/// Unary DFA accepting odd-length words over {a}.
pub fn dfa_odd_as() -> Dfa {
    let mut delta = BTreeMap::new();
    delta.insert((st("even"), sym("a")), st("odd"));
    delta.insert((st("odd"), sym("a")), st("even"));
    Dfa::new(
        vec![st("even"), st("odd")],
        vec![sym("a")],
        st("even"),
        [st("odd")].into_iter().collect(),
        delta,
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Closed-form predicates
// ---------------------------------------------------------------------------

pub fn is_anbn(w: &[Symbol]) -> bool {
    let n_a = w.iter().take_while(|s| s.as_str() == "a").count();
    let rest = &w[n_a..];
    n_a >= 1 && rest.len() == n_a && rest.iter().all(|s| s.as_str() == "b")
}

pub fn is_anbncn(w: &[Symbol]) -> bool {
    if w.len() % 3 != 0 || w.is_empty() {
        return false;
    }
    let n = w.len() / 3;
    w[..n].iter().all(|s| s.as_str() == "a")
        && w[n..2 * n].iter().all(|s| s.as_str() == "b")
        && w[2 * n..].iter().all(|s| s.as_str() == "c")
}

pub fn is_palindrome(w: &[Symbol]) -> bool {
    w.iter().eq(w.iter().rev())
}

pub fn is_a2nbn(w: &[Symbol]) -> bool {
    let n_a = w.iter().take_while(|s| s.as_str() == "a").count();
    let rest = &w[n_a..];
    rest.iter().all(|s| s.as_str() == "b") && !rest.is_empty() && n_a == 2 * rest.len()
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Brute-force bounded language of a CFG by sentential-form search,
/// independent of the CYK/normal-form route. Sound for grammars whose
/// sentential forms stay within `max_len + 2` symbols and `max_len`
/// terminals, which holds for every fixture used here.
pub fn cfg_words_up_to(g: &Cfg, max_len: usize) -> BTreeSet<Word> {
    let terminals: BTreeSet<&Symbol> = g.terminals().iter().collect();
    let is_terminal_form = |f: &Word| f.iter().all(|s| terminals.contains(s));
    let start = vec![g.start().clone()];
    let mut visited: BTreeSet<Word> = [start.clone()].into_iter().collect();
    let mut frontier = vec![start];
    let mut out = BTreeSet::new();
    while let Some(form) = frontier.pop() {
        if is_terminal_form(&form) {
            if form.len() <= max_len {
                out.insert(form);
            }
            continue;
        }
        for rule in g.rules() {
            for pos in 0..form.len() {
                if form[pos] != rule.lhs {
                    continue;
                }
                let mut next = Vec::with_capacity(form.len() - 1 + rule.rhs.len());
                next.extend_from_slice(&form[..pos]);
                next.extend_from_slice(&rule.rhs);
                next.extend_from_slice(&form[pos + 1..]);
                let terminal_count = next.iter().filter(|s| terminals.contains(s)).count();
                if terminal_count > max_len || next.len() > max_len + 2 {
                    continue;
                }
                if visited.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    out
}

/// DFA acceptance by NFA-style subset simulation.
pub fn dfa_subset_accepts(d: &Dfa, w: &[Symbol]) -> bool {
    let mut current: BTreeSet<StateId> = [d.start().clone()].into_iter().collect();
    for s in w {
        current = current
            .iter()
            .filter_map(|q| d.step(q, s).cloned())
            .collect();
        if current.is_empty() {
            return false;
        }
    }
    current.iter().any(|q| d.finals().contains(q))
}

/// Empty-stack PDA acceptance by exhaustive derivation-tree exploration.
///
/// Valid for machines whose λ-rules strictly pop (the class
/// [`random_popping_pda`] generates): every move pops exactly one symbol, so
/// a run makes at most `1 + total pushes <= 1 + 2|w|` moves and the tree is
/// finite. Results are shared across subtrees, which cannot change them
/// because acceptance from a configuration does not depend on the path into
/// it.
pub fn pda_tree_accepts(p: &Pda, w: &[Symbol]) -> bool {
    type Node = (StateId, usize, Vec<Symbol>);
    fn explore(
        p: &Pda,
        w: &[Symbol],
        node: Node,
        depth: usize,
        memo: &mut BTreeMap<Node, bool>,
    ) -> bool {
        assert!(
            depth <= 2 * w.len() + 2,
            "pure-pop λ class admits no longer derivations"
        );
        if node.1 == w.len() && node.2.is_empty() {
            return true;
        }
        if let Some(&known) = memo.get(&node) {
            return known;
        }
        let (state, pos, stack) = &node;
        let mut accepted = false;
        if let Some(top) = stack.last() {
            for rule in p.rules() {
                if &rule.from != state || &rule.top != top {
                    continue;
                }
                let consumed = match &rule.input {
                    None => 0,
                    Some(x) => {
                        if *pos < w.len() && &w[*pos] == x {
                            1
                        } else {
                            continue;
                        }
                    }
                };
                let mut next_stack = stack.clone();
                next_stack.pop();
                next_stack.extend(rule.push.iter().cloned());
                let next = (rule.to.clone(), pos + consumed, next_stack);
                if explore(p, w, next, depth + 1, memo) {
                    accepted = true;
                    break;
                }
            }
        }
        memo.insert(node, accepted);
        accepted
    }
    let start = (
        p.start().clone(),
        0,
        vec![p.initial_stack_symbol().clone()],
    );
    explore(p, w, start, 0, &mut BTreeMap::new())
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

/// A random deterministic machine over {a, b}: at most 4 states, at most 6
/// transitions, words of at most 2 symbols per strand. Candidate rules that
/// would break the static determinism condition are discarded, so the result
/// always passes `is_deterministic`.
pub fn random_dwk(rng: &mut ChaCha8Rng) -> WkAutomaton {
    let symbols = [sym("a"), sym("b")];
    let mut rho = Vec::new();
    for u in &symbols {
        for l in &symbols {
            if rng.gen_bool(0.6) {
                rho.push((u.clone(), l.clone()));
            }
        }
    }
    if rho.is_empty() {
        rho.push((sym("a"), sym("a")));
    }
    let n_states = rng.gen_range(1..=4);
    let states: Vec<StateId> = (0..n_states).map(|i| st(&format!("s{i}"))).collect();
    let finals: BTreeSet<StateId> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    let budget = rng.gen_range(1..=6);
    let mut transitions: Vec<Transition> = Vec::new();
    for _ in 0..32 {
        if transitions.len() >= budget {
            break;
        }
        let rand_word = |rng: &mut ChaCha8Rng| -> Word {
            let len = rng.gen_range(0..=2);
            (0..len)
                .map(|_| symbols[rng.gen_range(0..symbols.len())].clone())
                .collect()
        };
        let candidate = Transition::new(
            states[rng.gen_range(0..n_states)].clone(),
            rand_word(rng),
            rand_word(rng),
            states[rng.gen_range(0..n_states)].clone(),
        );
        let conflicts = transitions.iter().any(|t| {
            t.from == candidate.from
                && prefix_comparable(&t.upper, &candidate.upper)
                && prefix_comparable(&t.lower, &candidate.lower)
        });
        if !conflicts {
            transitions.push(candidate);
        }
    }
    let m = WkAutomaton::new(
        vec![sym("a"), sym("b")],
        ComplementarityRelation::new(rho),
        states.clone(),
        states[0].clone(),
        finals,
        transitions,
    )
    .unwrap();
    assert!(m.is_deterministic());
    m
}

/// Like [`random_dwk`] but without the determinism filter: conflicting rules
/// are kept, so the result may be nondeterministic.
pub fn random_wk_any(rng: &mut ChaCha8Rng) -> WkAutomaton {
    let symbols = [sym("a"), sym("b")];
    let mut rho = Vec::new();
    for u in &symbols {
        for l in &symbols {
            if rng.gen_bool(0.6) {
                rho.push((u.clone(), l.clone()));
            }
        }
    }
    if rho.is_empty() {
        rho.push((sym("b"), sym("b")));
    }
    let n_states = rng.gen_range(1..=4);
    let states: Vec<StateId> = (0..n_states).map(|i| st(&format!("s{i}"))).collect();
    let finals: BTreeSet<StateId> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    let transitions = (0..rng.gen_range(0..=6))
        .map(|_| {
            let rand_word = |rng: &mut ChaCha8Rng| -> Word {
                let len = rng.gen_range(0..=2);
                (0..len)
                    .map(|_| symbols[rng.gen_range(0..symbols.len())].clone())
                    .collect()
            };
            Transition::new(
                states[rng.gen_range(0..n_states)].clone(),
                rand_word(rng),
                rand_word(rng),
                states[rng.gen_range(0..n_states)].clone(),
            )
        })
        .collect();
    WkAutomaton::new(
        vec![sym("a"), sym("b")],
        ComplementarityRelation::new(rho),
        states.clone(),
        states[0].clone(),
        finals,
        transitions,
    )
    .unwrap()
}

/// A random word over {a, b} of length at most `max_len`.
pub fn random_ab_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let symbols = [sym("a"), sym("b")];
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| symbols[rng.gen_range(0..symbols.len())].clone())
        .collect()
}

/// A random small PDA over input {a, b} and stack {Z, x} whose λ-rules all
/// strictly pop, the class [`pda_tree_accepts`] is exhaustive for.
pub fn random_popping_pda(rng: &mut ChaCha8Rng) -> Pda {
    let inputs = [sym("a"), sym("b")];
    let gammas = [sym("Z"), sym("x")];
    let n_states = rng.gen_range(1..=3);
    let states: Vec<StateId> = (0..n_states).map(|i| st(&format!("p{i}"))).collect();
    let n_rules = rng.gen_range(3..=7);
    let mut rules = Vec::new();
    for _ in 0..n_rules {
        let reads_input = rng.gen_bool(0.7);
        let push = if reads_input {
            let len = match rng.gen_range(0..10) {
                0..=3 => 0,
                4..=6 => 1,
                _ => 2,
            };
            (0..len)
                .map(|_| gammas[rng.gen_range(0..gammas.len())].clone())
                .collect()
        } else {
            Vec::new()
        };
        rules.push(wk_core::PdaRule {
            from: states[rng.gen_range(0..n_states)].clone(),
            input: reads_input.then(|| inputs[rng.gen_range(0..inputs.len())].clone()),
            top: gammas[rng.gen_range(0..gammas.len())].clone(),
            to: states[rng.gen_range(0..n_states)].clone(),
            push,
        });
    }
    Pda::new(
        states.clone(),
        inputs.to_vec(),
        gammas.to_vec(),
        states[0].clone(),
        sym("Z"),
        rules,
        StackDiscipline::General,
    )
    .unwrap()
}
