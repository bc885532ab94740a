//! Pattern compilation: Thompson NFA construction followed by subset
//! construction into a dense DFA over the 7-symbol coarse alphabet.
//!
//! Matching walks the transition table once per input symbol, so a scan
//! is linear in sentence length for a fixed pattern; there is no
//! backtracking.

use std::collections::{BTreeSet, HashMap};

use crate::preprocess::CoarseTag;

use super::pattern::PatternAst;

const DEAD: u32 = u32::MAX;

#[derive(Debug, Clone, Default)]
struct NfaState {
    epsilon: Vec<usize>,
    transition: Option<(CoarseTag, usize)>,
}

struct Nfa {
    states: Vec<NfaState>,
}

impl Nfa {
    fn push(&mut self) -> usize {
        self.states.push(NfaState::default());
        self.states.len() - 1
    }

    /// Thompson construction; returns (entry, exit) state ids.
    fn compile(&mut self, ast: &PatternAst) -> (usize, usize) {
        match ast {
            PatternAst::Symbol(tag) => {
                let entry = self.push();
                let exit = self.push();
                self.states[entry].transition = Some((*tag, exit));
                (entry, exit)
            }
            PatternAst::Concat(parts) => {
                let mut iter = parts.iter();
                let (entry, mut exit) =
                    self.compile(iter.next().expect("concat is non-empty"));
                for part in iter {
                    let (e, x) = self.compile(part);
                    self.states[exit].epsilon.push(e);
                    exit = x;
                }
                (entry, exit)
            }
            PatternAst::Alt(branches) => {
                let entry = self.push();
                let exit = self.push();
                for branch in branches {
                    let (e, x) = self.compile(branch);
                    self.states[entry].epsilon.push(e);
                    self.states[x].epsilon.push(exit);
                }
                (entry, exit)
            }
            PatternAst::Star(inner) => {
                let entry = self.push();
                let exit = self.push();
                let (e, x) = self.compile(inner);
                self.states[entry].epsilon.push(e);
                self.states[entry].epsilon.push(exit);
                self.states[x].epsilon.push(e);
                self.states[x].epsilon.push(exit);
                (entry, exit)
            }
            PatternAst::Plus(inner) => {
                let (e, x) = self.compile(inner);
                let exit = self.push();
                self.states[x].epsilon.push(e);
                self.states[x].epsilon.push(exit);
                (e, exit)
            }
        }
    }

    fn epsilon_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &next in &self.states[s].epsilon {
                if set.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
}

/// Deterministic automaton over coarse tags.
#[derive(Debug, Clone)]
pub struct Dfa {
    /// `transitions[state * 7 + symbol]`, DEAD when undefined.
    transitions: Vec<u32>,
    accepting: Vec<bool>,
    start: u32,
}

impl Dfa {
    pub fn from_ast(ast: &PatternAst) -> Dfa {
        let mut nfa = Nfa { states: Vec::new() };
        let (entry, exit) = nfa.compile(ast);

        let mut start_set = BTreeSet::from([entry]);
        nfa.epsilon_closure(&mut start_set);

        let mut ids: HashMap<BTreeSet<usize>, u32> = HashMap::new();
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let mut transitions: Vec<u32> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();

        ids.insert(start_set.clone(), 0);
        sets.push(start_set);
        transitions.extend([DEAD; CoarseTag::COUNT]);
        accepting.push(false);

        let mut next = 0usize;
        while next < sets.len() {
            let current = sets[next].clone();
            accepting[next] = current.contains(&exit);
            for tag in CoarseTag::ALL {
                let mut target: BTreeSet<usize> = BTreeSet::new();
                for &s in &current {
                    if let Some((t, to)) = nfa.states[s].transition {
                        if t == tag {
                            target.insert(to);
                        }
                    }
                }
                if target.is_empty() {
                    continue;
                }
                nfa.epsilon_closure(&mut target);
                let id = *ids.entry(target.clone()).or_insert_with(|| {
                    sets.push(target);
                    transitions.extend([DEAD; CoarseTag::COUNT]);
                    accepting.push(false);
                    (sets.len() - 1) as u32
                });
                transitions[next * CoarseTag::COUNT + tag.index()] = id;
            }
            next += 1;
        }

        Dfa { transitions, accepting, start: 0 }
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    #[inline]
    fn step(&self, state: u32, tag: CoarseTag) -> u32 {
        self.transitions[state as usize * CoarseTag::COUNT + tag.index()]
    }

    /// Whether the automaton accepts the whole sequence.
    pub fn accepts(&self, tags: &[CoarseTag]) -> bool {
        let mut state = self.start;
        for &t in tags {
            state = self.step(state, t);
            if state == DEAD {
                return false;
            }
        }
        self.accepting[state as usize]
    }

    /// Length of the longest non-empty accepted prefix of `tags`.
    pub fn longest_match_at(&self, tags: &[CoarseTag]) -> Option<usize> {
        let mut state = self.start;
        let mut best = None;
        for (i, &t) in tags.iter().enumerate() {
            state = self.step(state, t);
            if state == DEAD {
                break;
            }
            if self.accepting[state as usize] {
                best = Some(i + 1);
            }
        }
        best
    }

    /// Leftmost-longest, non-overlapping matches; scanning resumes after
    /// each match. Returned ranges are `[start, end)` token indices.
    pub fn leftmost_longest(&self, tags: &[CoarseTag]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < tags.len() {
            match self.longest_match_at(&tags[i..]) {
                Some(len) => {
                    out.push((i, i + len));
                    i += len;
                }
                None => i += 1,
            }
        }
        out
    }
}
