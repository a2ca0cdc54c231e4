//! Context-free and context-sensitive grammars with exact membership
//! deciders.
//!
//! CF membership runs CYK over a Chomsky-normal-form copy of the grammar.
//! CS membership searches noncontracting derivations exhaustively: since no
//! rule shrinks a sentential form, every derivation of `w` stays within
//! length `|w|`, which makes the bounded search sound and complete (up to an
//! explicit budget on distinct forms).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{DefinitionError, ResourceBound};
use crate::word::Symbol;

/// One context-free rule `lhs -> rhs`, with `rhs` possibly empty (λ).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CfgRule {
    pub lhs: Symbol,
    pub rhs: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    nonterminals: Vec<Symbol>,
    terminals: Vec<Symbol>,
    start: Symbol,
    rules: Vec<CfgRule>,
}

impl Cfg {
    pub fn new(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        start: Symbol,
        rules: Vec<CfgRule>,
    ) -> Result<Self, DefinitionError> {
        let nts: BTreeSet<&Symbol> = nonterminals.iter().collect();
        let ts: BTreeSet<&Symbol> = terminals.iter().collect();
        if let Some(shared) = nonterminals.iter().find(|s| ts.contains(s)) {
            return Err(DefinitionError::OverlappingVocabulary(shared.clone()));
        }
        if !nts.contains(&start) {
            return Err(DefinitionError::UndeclaredSymbol(start));
        }
        for (i, rule) in rules.iter().enumerate() {
            if !nts.contains(&rule.lhs) {
                return Err(DefinitionError::BadGrammarRule(i));
            }
            for s in &rule.rhs {
                if !nts.contains(s) && !ts.contains(s) {
                    return Err(DefinitionError::UndeclaredSymbol(s.clone()));
                }
            }
        }
        Ok(Cfg {
            nonterminals,
            terminals,
            start,
            rules,
        })
    }

    pub fn nonterminals(&self) -> &[Symbol] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[Symbol] {
        &self.terminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[CfgRule] {
        &self.rules
    }

    /// Produces a weakly equivalent grammar in Chomsky normal form: every
    /// rule is `A -> B C` or `A -> a`, except for a possible `S -> λ` on the
    /// fresh start symbol when the original language contains λ.
    pub fn to_chomsky_normal_form(&self) -> Cfg {
        let mut taken: BTreeSet<Symbol> = self
            .nonterminals
            .iter()
            .chain(self.terminals.iter())
            .cloned()
            .collect();
        let mut nonterminals = self.nonterminals.clone();
        let add_nt = |hint: &str, taken: &mut BTreeSet<Symbol>, nts: &mut Vec<Symbol>| {
            let name = fresh_symbol(taken, hint);
            taken.insert(name.clone());
            nts.push(name.clone());
            name
        };

        // Fresh start symbol so λ can live on a rule nothing else references.
        let start = add_nt("S0", &mut taken, &mut nonterminals);
        let mut rules: Vec<CfgRule> = alloc::vec![CfgRule {
            lhs: start.clone(),
            rhs: alloc::vec![self.start.clone()],
        }];
        rules.extend(self.rules.iter().cloned());

        // TERM: terminals only occur alone on a right-hand side.
        let terminal_set: BTreeSet<Symbol> = self.terminals.iter().cloned().collect();
        let mut proxies: BTreeMap<Symbol, Symbol> = BTreeMap::new();
        for rule in &mut rules {
            if rule.rhs.len() < 2 {
                continue;
            }
            for s in &mut rule.rhs {
                if terminal_set.contains(s) {
                    let proxy = proxies.entry(s.clone()).or_insert_with(|| {
                        add_nt(&alloc::format!("T:{s}"), &mut taken, &mut nonterminals)
                    });
                    *s = proxy.clone();
                }
            }
        }
        for (terminal, proxy) in &proxies {
            rules.push(CfgRule {
                lhs: proxy.clone(),
                rhs: alloc::vec![terminal.clone()],
            });
        }

        // BIN: split long right-hand sides with chain nonterminals.
        let mut binarized = Vec::new();
        for rule in rules {
            if rule.rhs.len() <= 2 {
                binarized.push(rule);
                continue;
            }
            let mut lhs = rule.lhs.clone();
            let n = rule.rhs.len();
            for i in 0..n - 2 {
                let link = add_nt("B", &mut taken, &mut nonterminals);
                binarized.push(CfgRule {
                    lhs,
                    rhs: alloc::vec![rule.rhs[i].clone(), link.clone()],
                });
                lhs = link;
            }
            binarized.push(CfgRule {
                lhs,
                rhs: alloc::vec![rule.rhs[n - 2].clone(), rule.rhs[n - 1].clone()],
            });
        }
        let mut rules = binarized;

        // DEL: drop λ-rules, compensating in every rule that mentioned a
        // nullable symbol.
        let mut nullable: BTreeSet<Symbol> = BTreeSet::new();
        loop {
            let before = nullable.len();
            for rule in &rules {
                if rule.rhs.iter().all(|s| nullable.contains(s)) {
                    nullable.insert(rule.lhs.clone());
                }
            }
            if nullable.len() == before {
                break;
            }
        }
        let accepts_lambda = nullable.contains(&start);
        let mut expanded: BTreeSet<CfgRule> = BTreeSet::new();
        for rule in &rules {
            match rule.rhs.len() {
                0 => {}
                1 => {
                    expanded.insert(rule.clone());
                }
                _ => {
                    let (x, y) = (rule.rhs[0].clone(), rule.rhs[1].clone());
                    expanded.insert(rule.clone());
                    if nullable.contains(&y) {
                        expanded.insert(CfgRule {
                            lhs: rule.lhs.clone(),
                            rhs: alloc::vec![x.clone()],
                        });
                    }
                    if nullable.contains(&x) {
                        expanded.insert(CfgRule {
                            lhs: rule.lhs.clone(),
                            rhs: alloc::vec![y],
                        });
                    }
                }
            }
        }
        rules = expanded.into_iter().collect();

        // UNIT: close over chains A => B and inline B's non-unit rules.
        let nt_set: BTreeSet<Symbol> = nonterminals.iter().cloned().collect();
        let is_unit =
            |r: &CfgRule| r.rhs.len() == 1 && nt_set.contains(&r.rhs[0]);
        let mut reach: BTreeMap<Symbol, BTreeSet<Symbol>> = BTreeMap::new();
        for nt in &nonterminals {
            reach.insert(nt.clone(), [nt.clone()].into_iter().collect());
        }
        loop {
            let mut grew = false;
            for rule in rules.iter().filter(|r| is_unit(r)) {
                let targets = reach.get(&rule.rhs[0]).cloned().unwrap_or_default();
                let entry = reach.entry(rule.lhs.clone()).or_default();
                for t in targets {
                    grew |= entry.insert(t);
                }
            }
            if !grew {
                break;
            }
        }
        let mut finished: BTreeSet<CfgRule> = BTreeSet::new();
        for nt in &nonterminals {
            for target in &reach[nt] {
                for rule in rules.iter().filter(|r| &r.lhs == target && !is_unit(r)) {
                    finished.insert(CfgRule {
                        lhs: nt.clone(),
                        rhs: rule.rhs.clone(),
                    });
                }
            }
        }
        if accepts_lambda {
            finished.insert(CfgRule {
                lhs: start.clone(),
                rhs: Vec::new(),
            });
        }

        Cfg {
            nonterminals,
            terminals: self.terminals.clone(),
            start,
            rules: finished.into_iter().collect(),
        }
    }

    /// True iff every rule is `A -> B C`, `A -> a`, or `start -> λ` with the
    /// start symbol absent from every right-hand side.
    pub fn is_chomsky_normal_form(&self) -> bool {
        let nts: BTreeSet<&Symbol> = self.nonterminals.iter().collect();
        let ts: BTreeSet<&Symbol> = self.terminals.iter().collect();
        self.rules.iter().all(|r| match r.rhs.len() {
            0 => r.lhs == self.start,
            1 => ts.contains(&r.rhs[0]),
            2 => nts.contains(&r.rhs[0]) && nts.contains(&r.rhs[1]),
            _ => false,
        }) && (!self.rules.iter().any(|r| r.rhs.is_empty())
            || !self.rules.iter().any(|r| r.rhs.contains(&self.start)))
    }
}

/// CYK table recognizer over a CNF grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CykRecognizer {
    nt_count: usize,
    start: usize,
    accepts_lambda: bool,
    term_rules: BTreeMap<Symbol, Vec<usize>>,
    binary_rules: Vec<(usize, usize, usize)>,
}

impl CykRecognizer {
    /// `grammar` must already be in Chomsky normal form.
    pub(crate) fn new(grammar: &Cfg) -> Self {
        assert!(grammar.is_chomsky_normal_form());
        let index: BTreeMap<&Symbol, usize> = grammar
            .nonterminals
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut term_rules: BTreeMap<Symbol, Vec<usize>> = BTreeMap::new();
        let mut binary_rules = Vec::new();
        let mut accepts_lambda = false;
        for rule in &grammar.rules {
            match rule.rhs.len() {
                0 => accepts_lambda = true,
                1 => term_rules
                    .entry(rule.rhs[0].clone())
                    .or_default()
                    .push(index[&rule.lhs]),
                _ => binary_rules.push((
                    index[&rule.lhs],
                    index[&rule.rhs[0]],
                    index[&rule.rhs[1]],
                )),
            }
        }
        CykRecognizer {
            nt_count: grammar.nonterminals.len(),
            start: index[&grammar.start],
            accepts_lambda,
            term_rules,
            binary_rules,
        }
    }

    pub(crate) fn accepts(&self, w: &[Symbol]) -> bool {
        let n = w.len();
        if n == 0 {
            return self.accepts_lambda;
        }
        // cell(pos, len) owns a bool per nonterminal.
        let cell = |pos: usize, len: usize| (len - 1) * n + pos;
        let mut table = alloc::vec![false; n * n * self.nt_count];
        for (pos, s) in w.iter().enumerate() {
            match self.term_rules.get(s) {
                Some(nts) => {
                    for &nt in nts {
                        table[cell(pos, 1) * self.nt_count + nt] = true;
                    }
                }
                None => return false,
            }
        }
        for len in 2..=n {
            for pos in 0..=n - len {
                for split in 1..len {
                    for &(a, b, c) in &self.binary_rules {
                        if table[cell(pos, split) * self.nt_count + b]
                            && table[cell(pos + split, len - split) * self.nt_count + c]
                        {
                            table[cell(pos, len) * self.nt_count + a] = true;
                        }
                    }
                }
            }
        }
        table[cell(0, n) * self.nt_count + self.start]
    }
}

/// One noncontracting rule `lhs -> rhs` with `1 <= |lhs| <= |rhs|` and at
/// least one nonterminal on the left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CsgRule {
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csg {
    nonterminals: Vec<Symbol>,
    terminals: Vec<Symbol>,
    start: Symbol,
    rules: Vec<CsgRule>,
}

impl Csg {
    pub fn new(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        start: Symbol,
        rules: Vec<CsgRule>,
    ) -> Result<Self, DefinitionError> {
        let nts: BTreeSet<&Symbol> = nonterminals.iter().collect();
        let ts: BTreeSet<&Symbol> = terminals.iter().collect();
        if let Some(shared) = nonterminals.iter().find(|s| ts.contains(s)) {
            return Err(DefinitionError::OverlappingVocabulary(shared.clone()));
        }
        if !nts.contains(&start) {
            return Err(DefinitionError::UndeclaredSymbol(start));
        }
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty()
                || rule.lhs.len() > rule.rhs.len()
                || !rule.lhs.iter().any(|s| nts.contains(s))
            {
                return Err(DefinitionError::BadGrammarRule(i));
            }
            for s in rule.lhs.iter().chain(rule.rhs.iter()) {
                if !nts.contains(s) && !ts.contains(s) {
                    return Err(DefinitionError::UndeclaredSymbol(s.clone()));
                }
            }
        }
        Ok(Csg {
            nonterminals,
            terminals,
            start,
            rules,
        })
    }

    pub fn nonterminals(&self) -> &[Symbol] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[Symbol] {
        &self.terminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[CsgRule] {
        &self.rules
    }

    /// Decides `w ∈ L(G)` by exhausting all sentential forms of length at
    /// most `|w|`. `budget` caps the number of distinct forms visited;
    /// exceeding it is a [`ResourceBound`], never a silent reject.
    pub fn derives_bounded(&self, w: &[Symbol], budget: usize) -> Result<bool, ResourceBound> {
        let ts: BTreeSet<&Symbol> = self.terminals.iter().collect();
        if w.iter().any(|s| !ts.contains(s)) {
            return Ok(false);
        }
        if w.is_empty() {
            // Noncontracting rules cannot erase the start symbol.
            return Ok(false);
        }

        // Intern the vocabulary for cheap form comparison.
        let mut ids: BTreeMap<&Symbol, u16> = BTreeMap::new();
        for s in self.nonterminals.iter().chain(self.terminals.iter()) {
            let next = ids.len() as u16;
            ids.entry(s).or_insert(next);
        }
        let intern =
            |word: &[Symbol]| -> Vec<u16> { word.iter().map(|s| ids[s]).collect() };
        let target = intern(w);
        let rules: Vec<(Vec<u16>, Vec<u16>)> = self
            .rules
            .iter()
            .map(|r| (intern(&r.lhs), intern(&r.rhs)))
            .collect();

        let start_form = alloc::vec![ids[&self.start]];
        let mut visited: BTreeSet<Vec<u16>> = BTreeSet::new();
        visited.insert(start_form.clone());
        let mut frontier = alloc::vec![start_form];
        while let Some(form) = frontier.pop() {
            for (lhs, rhs) in &rules {
                if lhs.len() > form.len() || form.len() + rhs.len() - lhs.len() > target.len() {
                    continue;
                }
                for pos in 0..=form.len() - lhs.len() {
                    if &form[pos..pos + lhs.len()] != lhs.as_slice() {
                        continue;
                    }
                    let mut next = Vec::with_capacity(form.len() + rhs.len() - lhs.len());
                    next.extend_from_slice(&form[..pos]);
                    next.extend_from_slice(rhs);
                    next.extend_from_slice(&form[pos + lhs.len()..]);
                    debug_assert!(next.len() >= form.len());
                    if next == target {
                        return Ok(true);
                    }
                    if visited.contains(&next) {
                        continue;
                    }
                    if visited.len() >= budget {
                        return Err(ResourceBound::SententialForms(budget));
                    }
                    visited.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        Ok(false)
    }
}

fn fresh_symbol(taken: &BTreeSet<Symbol>, hint: &str) -> Symbol {
    if !taken.contains(&Symbol::new(hint)) {
        return Symbol::new(hint);
    }
    let mut n = 1usize;
    loop {
        let candidate: String = alloc::format!("{hint}{n}");
        if !taken.contains(&Symbol::new(&candidate)) {
            return Symbol::new(&candidate);
        }
        n += 1;
    }
}
