//! Machine-to-machine constructions, each bounded-equivalence-checkable
//! against its input via the oracle module.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dfa::{fresh_state, Dfa};
use crate::error::ConstructionError;
use crate::pda::{Pda, PdaRule, StackDiscipline};
use crate::restriction::{RestrictedWkAutomaton, RestrictionLanguage};
use crate::wk::{ComplementarityRelation, Transition, WkAutomaton};
use crate::word::{prefix_comparable, StateId, Symbol, Word};

/// Size accounting and free-form notes for one construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub input_states: usize,
    pub output_states: usize,
    pub output_transitions: usize,
    pub notes: Vec<String>,
}

/// A constructed machine together with its report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructed<T> {
    pub machine: T,
    pub report: ConstructionReport,
}

/// Pairs a deterministic machine with the universal restriction over its own
/// alphabet; acceptance is unchanged because the lower strand was already
/// unconstrained.
pub fn lift_to_restricted(
    m: &WkAutomaton,
) -> Result<Constructed<RestrictedWkAutomaton>, ConstructionError> {
    if !m.is_deterministic() {
        return Err(ConstructionError::NonDeterministicMachine);
    }
    let restriction = RestrictionLanguage::regular(Dfa::universal(m.alphabet().to_vec()));
    let machine = RestrictedWkAutomaton::new(m.clone(), restriction)
        .expect("determinism checked above");
    let report = ConstructionReport {
        input_states: m.states().len(),
        output_states: machine.core().states().len(),
        output_transitions: machine.core().transitions().len(),
        notes: Vec::new(),
    };
    Ok(Constructed { machine, report })
}

/// Rewrites the machine so every transition consumes exactly one symbol on
/// exactly one strand, keeping the restriction language and the accepted
/// language unchanged.
///
/// λ/λ rules go first: on a deterministic machine a state with a λ/λ rule
/// has no other rule, so such states simply forward; each state inherits the
/// rules of its forwarding target and becomes final when the forwarding
/// chain meets a final state. Longer rules are then unrolled one symbol at a
/// time through fresh states that record how far into each co-located rule
/// the machine has read. Tracking that lookahead — rather than expanding
/// each rule into a private chain — is what keeps the result deterministic
/// when co-located rules share word prefixes.
pub fn to_one_limited(m: &RestrictedWkAutomaton) -> Constructed<RestrictedWkAutomaton> {
    let mut notes = Vec::new();
    let (lambda_free, dropped) = eliminate_lambda_rules(m.core());
    if dropped > 0 {
        notes.push(format!("contracted {dropped} lambda/lambda rules"));
    }
    let core = unroll_rules(&lambda_free);
    let fresh = core.states().len() - lambda_free.states().len();
    if fresh > 0 {
        notes.push(format!("added {fresh} lookahead states"));
    }
    let report = ConstructionReport {
        input_states: m.core().states().len(),
        output_states: core.states().len(),
        output_transitions: core.transitions().len(),
        notes,
    };
    let machine = RestrictedWkAutomaton::new(core, m.restriction().clone())
        .expect("unrolling preserves determinism");
    Constructed { machine, report }
}

/// On a deterministic machine, a state carrying a λ/λ rule carries nothing
/// else (λ is prefix comparable with every word). Dropping those rules,
/// copying each forwarding chain's terminal rules back onto the chain, and
/// finalizing states whose chain passes a final state preserves runs
/// exactly.
fn eliminate_lambda_rules(m: &WkAutomaton) -> (WkAutomaton, usize) {
    let forwards: BTreeMap<&StateId, &StateId> = m
        .transitions()
        .iter()
        .filter(|t| t.consumed() == 0)
        .map(|t| (&t.from, &t.to))
        .collect();
    if forwards.is_empty() {
        return (m.clone(), 0);
    }
    debug_assert!(m
        .transitions()
        .iter()
        .filter(|t| t.consumed() > 0)
        .all(|t| !forwards.contains_key(&t.from)));

    // Walk each chain to its stable end (a state with no λ/λ rule), or note
    // that it cycles.
    let mut chains: BTreeMap<StateId, (BTreeSet<StateId>, Option<StateId>)> = BTreeMap::new();
    for q in m.states() {
        let mut seen: BTreeSet<StateId> = [q.clone()].into_iter().collect();
        let mut cur = q.clone();
        let stable = loop {
            match forwards.get(&cur) {
                None => break Some(cur),
                Some(next) => {
                    if !seen.insert((*next).clone()) {
                        break None;
                    }
                    cur = (*next).clone();
                }
            }
        };
        chains.insert(q.clone(), (seen, stable));
    }

    let finals: BTreeSet<StateId> = m
        .states()
        .iter()
        .filter(|q| chains[*q].0.iter().any(|s| m.finals().contains(s)))
        .cloned()
        .collect();
    let mut transitions = Vec::new();
    for t in m.transitions().iter().filter(|t| t.consumed() > 0) {
        for q in m.states() {
            if chains[q].1.as_ref() == Some(&t.from) {
                transitions.push(Transition::new(
                    q.clone(),
                    t.upper.clone(),
                    t.lower.clone(),
                    t.to.clone(),
                ));
            }
        }
    }
    let out = WkAutomaton::new(
        m.alphabet().to_vec(),
        m.rho().clone(),
        m.states().to_vec(),
        m.start().clone(),
        finals,
        transitions,
    )
    .expect("same vocabulary as the input");
    (out, forwards.len())
}

/// One-symbol unrolling of a λ/λ-free deterministic machine.
///
/// A lookahead state `(q, bu, bl)` means: the original machine sits in `q`
/// and the symbols `bu`/`bl` have been read off the strands but not yet
/// matched by a fired rule. Reading extends a buffer; whenever some rule's
/// words are fully buffered it fires (uniquely, by determinism) and the
/// leftover buffers carry over to its target. A state reads the lower strand
/// iff some live rule waits on lower input only — determinism forbids that
/// coexisting with a rule waiting on upper input only.
fn unroll_rules(m: &WkAutomaton) -> WkAutomaton {
    type Key = (StateId, Word, Word);

    let cascade = |mut q: StateId, mut bu: Word, mut bl: Word| -> Key {
        loop {
            let fired = {
                let mut fireable = m
                    .transitions_from(&q)
                    .filter(|t| bu.starts_with(&t.upper) && bl.starts_with(&t.lower));
                let first = fireable
                    .next()
                    .map(|t| (t.to.clone(), t.upper.len(), t.lower.len()));
                debug_assert!(fireable.next().is_none(), "two rules fired at once");
                first
            };
            match fired {
                None => return (q, bu, bl),
                Some((to, upper_len, lower_len)) => {
                    q = to;
                    bu = bu[upper_len..].to_vec();
                    bl = bl[lower_len..].to_vec();
                }
            }
        }
    };

    let empty_key = |q: &StateId| (q.clone(), Word::new(), Word::new());

    let mut names: BTreeMap<Key, StateId> = BTreeMap::new();
    let mut order: Vec<StateId> = Vec::new();
    let mut taken: Vec<StateId> = m.states().to_vec();
    let mut counters: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut queue: VecDeque<Key> = VecDeque::new();
    for q in m.states() {
        names.insert(empty_key(q), q.clone());
        order.push(q.clone());
        queue.push_back(empty_key(q));
    }

    let mut transitions = Vec::new();
    while let Some((q, bu, bl)) = queue.pop_front() {
        let live: Vec<&Transition> = m
            .transitions_from(&q)
            .filter(|t| prefix_comparable(&t.upper, &bu) && prefix_comparable(&t.lower, &bl))
            .collect();
        debug_assert!(
            live.iter()
                .all(|t| !(bu.starts_with(&t.upper) && bl.starts_with(&t.lower))),
            "cascade left a fireable rule"
        );
        if live.is_empty() {
            continue;
        }
        let lower_only = |t: &Transition| t.upper.len() <= bu.len() && t.lower.len() > bl.len();
        let upper_only = |t: &Transition| t.upper.len() > bu.len() && t.lower.len() <= bl.len();
        let read_lower = live.iter().any(|t| lower_only(t));
        debug_assert!(
            !(read_lower && live.iter().any(|t| upper_only(t))),
            "strand choice ambiguous on a deterministic machine"
        );
        let mut next_symbols: Vec<Symbol> = live
            .iter()
            .map(|t| {
                if read_lower {
                    t.lower[bl.len()].clone()
                } else {
                    t.upper[bu.len()].clone()
                }
            })
            .collect();
        next_symbols.sort();
        next_symbols.dedup();

        let from_name = names[&(q.clone(), bu.clone(), bl.clone())].clone();
        for x in next_symbols {
            let mut nbu = bu.clone();
            let mut nbl = bl.clone();
            if read_lower {
                nbl.push(x.clone());
            } else {
                nbu.push(x.clone());
            }
            let target = cascade(q.clone(), nbu, nbl);
            if !names.contains_key(&target) {
                let counter = counters.entry(target.0.clone()).or_insert(0);
                *counter += 1;
                let name = fresh_state(&taken, &format!("{}#{}", target.0, counter));
                taken.push(name.clone());
                names.insert(target.clone(), name.clone());
                order.push(name);
                queue.push_back(target.clone());
            }
            let to_name = names[&target].clone();
            let (up, low) = if read_lower {
                (Word::new(), alloc::vec![x])
            } else {
                (alloc::vec![x], Word::new())
            };
            transitions.push(Transition::new(from_name.clone(), up, low, to_name));
        }
    }

    let finals = m.finals().clone();
    WkAutomaton::new(
        m.alphabet().to_vec(),
        m.rho().clone(),
        order,
        m.start().clone(),
        finals,
        transitions,
    )
    .expect("fresh names validated")
}

/// Runs the restriction DFA inside the state, turning a 1-limited restricted
/// machine with a regular restriction into a plain deterministic machine:
/// states are pairs, upper reads freeze the DFA coordinate, lower reads step
/// it, and a pair is final when both halves are.
pub fn product_with_dfa(
    m: &RestrictedWkAutomaton,
) -> Result<Constructed<WkAutomaton>, ConstructionError> {
    if !m.core().classify().one_limited {
        return Err(ConstructionError::NotOneLimited);
    }
    let dfa = match m.restriction() {
        RestrictionLanguage::Regular(dfa) | RestrictionLanguage::UnaryRegular(dfa) => dfa,
        other => {
            return Err(ConstructionError::UnsupportedRestrictionClass {
                found: other.class_name(),
                required: "regular or unary-regular",
            })
        }
    };

    let mut notes = Vec::new();
    let pairs = pair_states(m.core().states(), dfa.states());
    let start = pairs[&(m.core().start().clone(), dfa.start().clone())].clone();
    let mut finals: BTreeSet<StateId> = BTreeSet::new();
    for qf in m.core().finals() {
        for kf in dfa.finals() {
            finals.insert(pairs[&(qf.clone(), kf.clone())].clone());
        }
    }

    let mut transitions = Vec::new();
    for t in m.core().transitions() {
        if let [x] = t.upper.as_slice() {
            for k in dfa.states() {
                transitions.push(Transition::new(
                    pairs[&(t.from.clone(), k.clone())].clone(),
                    alloc::vec![x.clone()],
                    Word::new(),
                    pairs[&(t.to.clone(), k.clone())].clone(),
                ));
            }
        } else if let [x] = t.lower.as_slice() {
            if !dfa.alphabet().contains(x) {
                notes.push(format!(
                    "lower read of `{x}` leaves the restriction alphabet; \
                     no product rule emitted"
                ));
                continue;
            }
            for k in dfa.states() {
                let l = dfa.step(k, x).expect("dfa is total").clone();
                transitions.push(Transition::new(
                    pairs[&(t.from.clone(), k.clone())].clone(),
                    Word::new(),
                    alloc::vec![x.clone()],
                    pairs[&(t.to.clone(), l)].clone(),
                ));
            }
        } else {
            unreachable!("1-limited checked above");
        }
    }

    let states: Vec<StateId> = pairs.values().cloned().collect();
    let mut ordered = Vec::new();
    for q in m.core().states() {
        for k in dfa.states() {
            ordered.push(pairs[&(q.clone(), k.clone())].clone());
        }
    }
    debug_assert_eq!(states.len(), ordered.len());
    let machine = WkAutomaton::new(
        m.core().alphabet().to_vec(),
        m.core().rho().clone(),
        ordered,
        start,
        finals,
        transitions,
    )
    .expect("pair names validated");
    let report = ConstructionReport {
        input_states: m.core().states().len(),
        output_states: machine.states().len(),
        output_transitions: machine.transitions().len(),
        notes,
    };
    Ok(Constructed { machine, report })
}

/// Embeds a DFA as a restricted machine whose lower strand just reads the
/// pad symbol: the upper strand simulates the DFA step for step, every
/// symbol's complement is the pad, and the restriction is the universal
/// unary language over the pad.
pub fn lift_dfa(dfa: &Dfa, pad: &Symbol) -> Constructed<RestrictedWkAutomaton> {
    let mut alphabet = dfa.alphabet().to_vec();
    if !alphabet.contains(pad) {
        alphabet.push(pad.clone());
    }
    let rho = ComplementarityRelation::new(alphabet.iter().map(|x| (x.clone(), pad.clone())));
    let transitions: Vec<Transition> = dfa
        .delta()
        .iter()
        .map(|((q, x), r)| {
            Transition::new(
                q.clone(),
                alloc::vec![x.clone()],
                alloc::vec![pad.clone()],
                r.clone(),
            )
        })
        .collect();
    let core = WkAutomaton::new(
        alphabet,
        rho,
        dfa.states().to_vec(),
        dfa.start().clone(),
        dfa.finals().clone(),
        transitions,
    )
    .expect("vocabulary copied from the dfa");
    let restriction =
        RestrictionLanguage::unary_regular(Dfa::universal(alloc::vec![pad.clone()]))
            .expect("single-symbol alphabet");
    let machine = RestrictedWkAutomaton::new(core, restriction)
        .expect("distinct upper symbols keep the lift deterministic");
    let report = ConstructionReport {
        input_states: dfa.states().len(),
        output_states: machine.core().states().len(),
        output_transitions: machine.core().transitions().len(),
        notes: Vec::new(),
    };
    Constructed { machine, report }
}

/// The one-state identity machine over `alphabet` restricted to `language`:
/// ρ is the identity, every symbol loops on the single final start state,
/// and acceptance degenerates to membership in the restriction.
pub fn stateless_identity(
    language: RestrictionLanguage,
    alphabet: &[Symbol],
) -> Constructed<RestrictedWkAutomaton> {
    let q0 = StateId::new("q0");
    let transitions = alphabet
        .iter()
        .map(|x| {
            Transition::new(
                q0.clone(),
                alloc::vec![x.clone()],
                alloc::vec![x.clone()],
                q0.clone(),
            )
        })
        .collect();
    let core = WkAutomaton::new(
        alphabet.to_vec(),
        ComplementarityRelation::identity(alphabet),
        alloc::vec![q0.clone()],
        q0.clone(),
        [q0].into_iter().collect(),
        transitions,
    )
    .expect("identity machine is well formed");
    let machine = RestrictedWkAutomaton::new(core, language)
        .expect("single-symbol identity rules are deterministic");
    let report = ConstructionReport {
        input_states: 1,
        output_states: 1,
        output_transitions: machine.core().transitions().len(),
        notes: Vec::new(),
    };
    Constructed { machine, report }
}

/// Simulates a 1-limited machine with a unary restriction by a pushdown
/// automaton accepting by empty stack.
///
/// The stack encodes how far one head is ahead of the other: pad marks mean
/// the upper head leads, lead marks mean the lower head leads, and the
/// bottom symbol alone means the heads are level. Upper reads consume input;
/// lower reads are λ-moves that also step the restriction DFA. The stack can
/// only be closed at a pair of final states with level heads, which is
/// exactly restricted acceptance.
pub fn to_pda(m: &RestrictedWkAutomaton) -> Result<Constructed<Pda>, ConstructionError> {
    if !m.core().classify().one_limited {
        return Err(ConstructionError::NotOneLimited);
    }
    let dfa = match m.restriction() {
        RestrictionLanguage::UnaryRegular(dfa) => dfa,
        other => {
            return Err(ConstructionError::UnsupportedRestrictionClass {
                found: other.class_name(),
                required: "unary-regular",
            })
        }
    };
    let pad = dfa.alphabet()[0].clone();
    let lead = fresh_stack_symbol(&[&pad], "b");
    let bottom = fresh_stack_symbol(&[&pad, &lead], "$");

    let mut notes = Vec::new();
    let pairs = pair_states(m.core().states(), dfa.states());
    let start = pairs[&(m.core().start().clone(), dfa.start().clone())].clone();

    let mut rules = Vec::new();
    for t in m.core().transitions() {
        if let [x] = t.upper.as_slice() {
            for k in dfa.states() {
                let from = pairs[&(t.from.clone(), k.clone())].clone();
                let to = pairs[&(t.to.clone(), k.clone())].clone();
                // Reading upper widens the lead (or narrows a lower lead).
                rules.push(PdaRule {
                    from: from.clone(),
                    input: Some(x.clone()),
                    top: pad.clone(),
                    to: to.clone(),
                    push: alloc::vec![pad.clone(), pad.clone()],
                });
                rules.push(PdaRule {
                    from: from.clone(),
                    input: Some(x.clone()),
                    top: bottom.clone(),
                    to: to.clone(),
                    push: alloc::vec![bottom.clone(), pad.clone()],
                });
                rules.push(PdaRule {
                    from,
                    input: Some(x.clone()),
                    top: lead.clone(),
                    to,
                    push: Vec::new(),
                });
            }
        } else if let [x] = t.lower.as_slice() {
            if *x != pad {
                notes.push(format!(
                    "lower read of `{x}` can never occur under the unary \
                     restriction; rule dropped"
                ));
                continue;
            }
            for k in dfa.states() {
                let l = dfa.step(k, &pad).expect("dfa is total");
                let from = pairs[&(t.from.clone(), k.clone())].clone();
                let to = pairs[&(t.to.clone(), l.clone())].clone();
                rules.push(PdaRule {
                    from: from.clone(),
                    input: None,
                    top: pad.clone(),
                    to: to.clone(),
                    push: Vec::new(),
                });
                rules.push(PdaRule {
                    from: from.clone(),
                    input: None,
                    top: bottom.clone(),
                    to: to.clone(),
                    push: alloc::vec![bottom.clone(), lead.clone()],
                });
                rules.push(PdaRule {
                    from,
                    input: None,
                    top: lead.clone(),
                    to,
                    push: alloc::vec![lead.clone(), lead.clone()],
                });
            }
        } else {
            unreachable!("1-limited checked above");
        }
    }
    for qf in m.core().finals() {
        for kf in dfa.finals() {
            let here = pairs[&(qf.clone(), kf.clone())].clone();
            rules.push(PdaRule {
                from: here.clone(),
                input: None,
                top: bottom.clone(),
                to: here,
                push: Vec::new(),
            });
        }
    }

    let mut ordered = Vec::new();
    for q in m.core().states() {
        for k in dfa.states() {
            ordered.push(pairs[&(q.clone(), k.clone())].clone());
        }
    }
    let machine = Pda::new(
        ordered,
        m.core().alphabet().to_vec(),
        alloc::vec![pad, lead, bottom.clone()],
        start,
        bottom,
        rules,
        StackDiscipline::DistanceBounded,
    )
    .expect("pair names validated");
    let report = ConstructionReport {
        input_states: m.core().states().len(),
        output_states: machine.states().len(),
        output_transitions: machine.rules().len(),
        notes,
    };
    Ok(Constructed { machine, report })
}

/// Names every (machine state, dfa state) pair, dodging collisions between
/// composite names and user-chosen ones.
fn pair_states(
    left: &[StateId],
    right: &[StateId],
) -> BTreeMap<(StateId, StateId), StateId> {
    let mut taken: Vec<StateId> = Vec::new();
    let mut pairs = BTreeMap::new();
    for q in left {
        for k in right {
            let name = fresh_state(&taken, &format!("({q},{k})"));
            taken.push(name.clone());
            pairs.insert((q.clone(), k.clone()), name);
        }
    }
    pairs
}

fn fresh_stack_symbol(taken: &[&Symbol], hint: &str) -> Symbol {
    if !taken.iter().any(|s| s.as_str() == hint) {
        return Symbol::new(hint);
    }
    let mut n = 1usize;
    loop {
        let candidate = format!("{hint}{n}");
        if !taken.iter().any(|s| s.as_str() == candidate) {
            return Symbol::new(&candidate);
        }
        n += 1;
    }
}
