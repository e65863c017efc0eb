//! Power and pair automata with all singletons merged into one sink `s`.
//!
//! Read from the full state set `Q`, the power automaton accepts exactly the
//! synchronizing words of the base automaton, with `s` as the only final state.
//! Only subsets reachable from the initial designation are materialized.

use std::collections::{HashMap, VecDeque};

use crate::dfa::{render_dot, Dfa};
use crate::error::{Error, Result};
use crate::word::Letter;

pub const DEFAULT_SUBSET_LIMIT: usize = 1_000_000;

/// A subset of `0..m` as a fixed-width bit mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: Box<[u64]>,
}

impl StateSet {
    pub fn empty(m: usize) -> StateSet {
        StateSet {
            bits: vec![0; m.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    pub fn full(m: usize) -> StateSet {
        let mut s = StateSet::empty(m);
        for q in 0..m {
            s.insert(q);
        }
        s
    }

    pub fn from_states(m: usize, states: impl IntoIterator<Item = usize>) -> StateSet {
        let mut s = StateSet::empty(m);
        for q in states {
            s.insert(q);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, q: usize) {
        self.bits[q / 64] |= 1 << (q % 64);
    }

    #[inline]
    pub fn contains(&self, q: usize) -> bool {
        self.bits
            .get(q / 64)
            .is_some_and(|w| w & (1 << (q % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            (0..64)
                .filter(move |b| word & (1 << b) != 0)
                .map(move |b| i * 64 + b)
        })
    }

    /// `{ q·x : q ∈ self }`.
    pub fn image(&self, d: &Dfa, x: Letter) -> StateSet {
        let mut out = StateSet::empty(d.state_count());
        for q in self.iter() {
            out.insert(d.next(q, x));
        }
        out
    }
}

/// A state of a [`SubsetDfa`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetState {
    Sink,
    Set(StateSet),
}

impl SubsetState {
    fn normalized(set: StateSet) -> SubsetState {
        if set.len() <= 1 {
            SubsetState::Sink
        } else {
            SubsetState::Set(set)
        }
    }
}

/// Deterministic automaton over subsets of a base automaton's states.
///
/// The sink is always state `0`.
#[derive(Debug, Clone)]
pub struct SubsetDfa {
    base_state_count: usize,
    states: Vec<SubsetState>,
    index: HashMap<SubsetState, usize>,
    delta: Vec<[usize; 2]>,
    initial: Option<usize>,
}

impl SubsetDfa {
    pub const SINK: usize = 0;

    fn with_sink(base_state_count: usize) -> SubsetDfa {
        SubsetDfa {
            base_state_count,
            states: vec![SubsetState::Sink],
            index: HashMap::from([(SubsetState::Sink, 0)]),
            delta: vec![[0, 0]],
            initial: None,
        }
    }

    fn intern(&mut self, state: SubsetState) -> (usize, bool) {
        if let Some(&id) = self.index.get(&state) {
            return (id, false);
        }
        let id = self.states.len();
        self.states.push(state.clone());
        self.index.insert(state, id);
        self.delta.push([usize::MAX; 2]);
        (id, true)
    }

    pub fn base_state_count(&self) -> usize {
        self.base_state_count
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[SubsetState] {
        &self.states
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn next(&self, id: usize, x: Letter) -> usize {
        self.delta[id][x.index()]
    }

    /// Id of the state holding exactly `states`, with singletons meaning the sink.
    pub fn find(&self, states: &[usize]) -> Option<usize> {
        let set = StateSet::from_states(self.base_state_count, states.iter().copied());
        self.index.get(&SubsetState::normalized(set)).copied()
    }

    /// `{q1,q2,…}` for subsets, `s` for the sink.
    pub fn label(&self, id: usize) -> String {
        match &self.states[id] {
            SubsetState::Sink => "s".to_string(),
            SubsetState::Set(set) => {
                let parts: Vec<String> = set.iter().map(|q| q.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    /// The automaton as a plain DFA: same numbering, finals `{s}`, and the
    /// initial state when one is designated.
    pub fn to_dfa(&self) -> Dfa {
        let d = Dfa::from_rows(self.delta.clone())
            .and_then(|d| d.with_finals([Self::SINK]))
            .expect("subset automaton is complete");
        match self.initial {
            Some(q0) => d.with_initial(q0).expect("initial subset exists"),
            None => d,
        }
    }

    pub fn to_dot(&self) -> String {
        render_dot(&self.to_dfa(), |id| self.label(id))
    }
}

/// Reachable part of the power automaton, read from `Q`.
pub fn power_automaton(d: &Dfa, limit: usize) -> Result<SubsetDfa> {
    let m = d.state_count();
    let mut p = SubsetDfa::with_sink(m);
    let (start, _) = p.intern(SubsetState::normalized(StateSet::full(m)));
    p.initial = Some(start);
    if p.state_count() > limit {
        return Err(Error::SubsetLimit { limit });
    }
    let mut queue = VecDeque::from([start]);
    while let Some(id) = queue.pop_front() {
        let SubsetState::Set(set) = p.states[id].clone() else {
            continue;
        };
        for x in Letter::ALL {
            let (target, fresh) = p.intern(SubsetState::normalized(set.image(d, x)));
            if fresh {
                if p.state_count() > limit {
                    return Err(Error::SubsetLimit { limit });
                }
                queue.push_back(target);
            }
            p.delta[id][x.index()] = target;
        }
    }
    Ok(p)
}

/// All 2-element subsets of `Q`, in lexicographic order, plus the sink.
pub fn pair_automaton(d: &Dfa) -> SubsetDfa {
    let m = d.state_count();
    let mut p = SubsetDfa::with_sink(m);
    for low in 0..m {
        for high in low + 1..m {
            p.intern(SubsetState::Set(StateSet::from_states(m, [low, high])));
        }
    }
    for id in 1..p.state_count() {
        let SubsetState::Set(set) = p.states[id].clone() else {
            unreachable!("only the sink is a non-set state");
        };
        for x in Letter::ALL {
            let target = p.index[&SubsetState::normalized(set.image(d, x))];
            p.delta[id][x.index()] = target;
        }
    }
    p
}

/// Pairwise-collapse test: every pair of states can be merged by some word.
pub fn is_synchronizing(d: &Dfa) -> bool {
    if d.state_count() == 1 {
        return true;
    }
    let pairs = pair_automaton(d);
    let n = pairs.state_count();
    let mut predecessors = vec![Vec::new(); n];
    for id in 1..n {
        for x in Letter::ALL {
            predecessors[pairs.next(id, x)].push(id);
        }
    }
    let mut reached = vec![false; n];
    reached[SubsetDfa::SINK] = true;
    let mut queue = VecDeque::from([SubsetDfa::SINK]);
    let mut count = 1;
    while let Some(id) = queue.pop_front() {
        for &p in &predecessors[id] {
            if !reached[p] {
                reached[p] = true;
                count += 1;
                queue.push_back(p);
            }
        }
    }
    count == n
}

/// The power automaton as an acceptor of the synchronizing words of `d`.
pub fn syn_acceptor(d: &Dfa, limit: usize) -> Result<Dfa> {
    Ok(power_automaton(d, limit)?.to_dfa())
}

/// Does `w` map every state of `d` to one state?
pub fn is_reset_word(d: &Dfa, w: &[Letter]) -> bool {
    d.transformation_of(w).is_constant()
}

/// Result of comparing two acceptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// `witness` is a shortest, lexicographically least word in the
    /// symmetric difference.
    Distinct {
        witness: Vec<Letter>,
        accepted_by_first: bool,
    },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Breadth-first search of the product automaton for a word accepted by
/// exactly one side.
pub fn languages_equal(first: &Dfa, second: &Dfa) -> Result<Equivalence> {
    let missing_initial = Error::MissingDecoration("initial state");
    let start = (
        first.initial().ok_or(missing_initial)?,
        second
            .initial()
            .ok_or(Error::MissingDecoration("initial state"))?,
    );
    let f1 = first
        .finals()
        .ok_or(Error::MissingDecoration("final states"))?;
    let f2 = second
        .finals()
        .ok_or(Error::MissingDecoration("final states"))?;

    let m2 = second.state_count();
    let key = |(p, q): (usize, usize)| p * m2 + q;
    // parent[key] = (previous key, letter)
    let mut parent: HashMap<usize, Option<(usize, Letter)>> = HashMap::from([(key(start), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        let in_first = f1.contains(&p);
        if in_first != f2.contains(&q) {
            let mut witness = Vec::new();
            let mut cursor = key((p, q));
            while let Some(&Some((prev, x))) = parent.get(&cursor) {
                witness.push(x);
                cursor = prev;
            }
            witness.reverse();
            return Ok(Equivalence::Distinct {
                witness,
                accepted_by_first: in_first,
            });
        }
        for x in Letter::ALL {
            let next = (first.next(p, x), second.next(q, x));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(key(next)) {
                e.insert(Some((key((p, q)), x)));
                queue.push_back(next);
            }
        }
    }
    Ok(Equivalence::Equal)
}

/// A shortest reset word, lexicographically least among the shortest
/// (`a < b`). The empty word is returned for a one-state automaton; `None`
/// means `d` is not synchronizing.
pub fn shortest_sync_word(d: &Dfa, limit: usize) -> Result<Option<Vec<Letter>>> {
    if d.state_count() == 1 {
        return Ok(Some(Vec::new()));
    }
    if !is_synchronizing(d) {
        return Ok(None);
    }
    let power = power_automaton(d, limit)?;
    let start = power
        .initial()
        .expect("power automaton has an initial state");
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; power.state_count()];
    let mut seen = vec![false; power.state_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(id) = queue.pop_front() {
        if id == SubsetDfa::SINK {
            let mut word = Vec::new();
            let mut cursor = id;
            while let Some((prev, x)) = parent[cursor] {
                word.push(x);
                cursor = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for x in Letter::ALL {
            let next = power.next(id, x);
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((id, x));
                queue.push_back(next);
            }
        }
    }
    unreachable!("synchronizing automaton has a path from Q to the sink")
}
