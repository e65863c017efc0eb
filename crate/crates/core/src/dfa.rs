//! Complete deterministic automata over `{a, b}`.
//!
//! A [`Dfa`] is a total transition table `state × letter -> state`. When it is
//! used as an acceptor it additionally carries an initial state and a set of
//! final states; the purely combinatorial operations (word action, strong
//! connectivity, isomorphism) ignore those decorations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::word::Letter;

/// A complete DFA on states `0..state_count` over the binary alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    delta: Vec<[usize; 2]>,
    initial: Option<usize>,
    finals: Option<BTreeSet<usize>>,
}

impl Dfa {
    /// Builds an automaton from rows `[q·a, q·b]`, checking totality.
    pub fn from_rows(rows: Vec<[usize; 2]>) -> Result<Dfa> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidAutomaton(
                "an automaton needs at least one state".into(),
            ));
        }
        for (q, row) in rows.iter().enumerate() {
            for (x, &target) in row.iter().enumerate() {
                if target >= m {
                    return Err(Error::InvalidAutomaton(format!(
                        "transition {q}·{} = {target} leaves the state set 0..{m}",
                        Letter::from_index(x)
                    )));
                }
            }
        }
        Ok(Dfa {
            delta: rows,
            initial: None,
            finals: None,
        })
    }

    pub fn with_initial(mut self, initial: usize) -> Result<Dfa> {
        self.check_state(initial)?;
        self.initial = Some(initial);
        Ok(self)
    }

    pub fn with_finals(mut self, finals: impl IntoIterator<Item = usize>) -> Result<Dfa> {
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        for &f in &finals {
            self.check_state(f)?;
        }
        self.finals = Some(finals);
        Ok(self)
    }

    /// Drops the initial/final decorations.
    pub fn undecorated(&self) -> Dfa {
        Dfa {
            delta: self.delta.clone(),
            initial: None,
            finals: None,
        }
    }

    #[inline]
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn rows(&self) -> &[[usize; 2]] {
        &self.delta
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn finals(&self) -> Option<&BTreeSet<usize>> {
        self.finals.as_ref()
    }

    #[inline]
    pub fn next(&self, q: usize, x: Letter) -> usize {
        self.delta[q][x.index()]
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q >= self.state_count() {
            Err(Error::StateOutOfRange {
                state: q,
                state_count: self.state_count(),
            })
        } else {
            Ok(())
        }
    }

    /// `q·w`, the left-to-right fold of the transition table over `w`.
    pub fn apply_word(&self, q: usize, w: &[Letter]) -> Result<usize> {
        self.check_state(q)?;
        Ok(w.iter().fold(q, |p, &x| self.next(p, x)))
    }

    /// The map `q ↦ q·w` on the whole state set.
    pub fn transformation_of(&self, w: &[Letter]) -> Transformation {
        let mut image: Vec<usize> = (0..self.state_count()).collect();
        for &x in w {
            for p in image.iter_mut() {
                *p = self.next(*p, x);
            }
        }
        Transformation { image }
    }

    /// The transformation induced by a single letter.
    pub fn letter_transformation(&self, x: Letter) -> Transformation {
        Transformation {
            image: self.delta.iter().map(|row| row[x.index()]).collect(),
        }
    }

    /// Acceptance of `w` from the initial state.
    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        let q0 = self
            .initial
            .ok_or(Error::MissingDecoration("initial state"))?;
        let finals = self
            .finals
            .as_ref()
            .ok_or(Error::MissingDecoration("final states"))?;
        Ok(finals.contains(&self.apply_word(q0, w)?))
    }

    /// The same automaton with the roles of `a` and `b` exchanged.
    pub fn swap_letters(&self) -> Dfa {
        Dfa {
            delta: self.delta.iter().map(|&[a, b]| [b, a]).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }

    /// Strongly connected components of the transition digraph (Tarjan),
    /// listed in reverse topological order.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        const UNVISITED: usize = usize::MAX;
        let m = self.state_count();
        let mut index = vec![UNVISITED; m];
        let mut low = vec![0; m];
        let mut on_stack = vec![false; m];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut counter = 0;

        for root in 0..m {
            if index[root] != UNVISITED {
                continue;
            }
            // (vertex, next letter to explore)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut next_letter)) = call.last_mut() {
                if *next_letter < 2 {
                    let u = self.delta[v][*next_letter];
                    *next_letter += 1;
                    if index[u] == UNVISITED {
                        index[u] = counter;
                        low[u] = counter;
                        counter += 1;
                        stack.push(u);
                        on_stack[u] = true;
                        call.push((u, 0));
                    } else if on_stack[u] {
                        low[v] = low[v].min(index[u]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let u = stack.pop().expect("tarjan stack underflow");
                        on_stack[u] = false;
                        component.push(u);
                        if u == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
        components
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().len() == 1
    }

    /// Returns a bijection `φ` with `φ(q·x) = φ(q)·x` for every state and
    /// letter, if one exists. Decorations are ignored.
    pub fn isomorphism_to(&self, other: &Dfa) -> Option<Vec<usize>> {
        let m = self.state_count();
        if m != other.state_count() {
            return None;
        }
        let mut forward = vec![usize::MAX; m];
        let mut backward = vec![usize::MAX; m];
        if self.extend_isomorphism(other, &mut forward, &mut backward) {
            Some(forward)
        } else {
            None
        }
    }

    /// Backtracking over the image of the least unmapped state; every guess is
    /// propagated through both letter actions before branching again.
    fn extend_isomorphism(
        &self,
        other: &Dfa,
        forward: &mut Vec<usize>,
        backward: &mut Vec<usize>,
    ) -> bool {
        let Some(source) = forward.iter().position(|&t| t == usize::MAX) else {
            return true;
        };
        for target in 0..other.state_count() {
            if backward[target] != usize::MAX {
                continue;
            }
            let mut f = forward.clone();
            let mut b = backward.clone();
            if propagate(self, other, source, target, &mut f, &mut b)
                && self.extend_isomorphism(other, &mut f, &mut b)
            {
                *forward = f;
                *backward = b;
                return true;
            }
        }
        false
    }

    /// Moore partition refinement: `class[q]` identifies the Myhill–Nerode
    /// class of `q` with respect to the final-state set.
    pub fn state_equivalence(&self) -> Result<Vec<usize>> {
        let finals = self
            .finals
            .as_ref()
            .ok_or(Error::MissingDecoration("final states"))?;
        let m = self.state_count();
        let mut class: Vec<usize> = (0..m).map(|q| finals.contains(&q) as usize).collect();
        let mut class_count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut signatures = std::collections::HashMap::new();
            let refined: Vec<usize> = (0..m)
                .map(|q| {
                    let key = (class[q], class[self.delta[q][0]], class[self.delta[q][1]]);
                    let next_id = signatures.len();
                    *signatures.entry(key).or_insert(next_id)
                })
                .collect();
            let refined_count = signatures.len();
            class = refined;
            if refined_count == class_count {
                return Ok(class);
            }
            class_count = refined_count;
        }
    }

    /// Graphviz rendering with states named `q0, q1, …`.
    pub fn to_dot(&self) -> String {
        render_dot(self, |q| format!("q{q}"))
    }
}

fn propagate(
    left: &Dfa,
    right: &Dfa,
    source: usize,
    target: usize,
    forward: &mut [usize],
    backward: &mut [usize],
) -> bool {
    let mut queue = VecDeque::from([(source, target)]);
    while let Some((p, q)) = queue.pop_front() {
        match (forward[p], backward[q]) {
            (fp, bq) if fp == q && bq == p => continue,
            (usize::MAX, usize::MAX) => {
                forward[p] = q;
                backward[q] = p;
            }
            _ => return false,
        }
        for x in Letter::ALL {
            queue.push_back((left.next(p, x), right.next(q, x)));
        }
    }
    true
}

/// Shared DOT writer; `label` names each state.
pub(crate) fn render_dot(d: &Dfa, label: impl Fn(usize) -> String) -> String {
    let mut out = String::from("digraph {\n");
    for q in 0..d.state_count() {
        let mut attrs = vec![format!("label=\"{}\"", label(q))];
        if d.finals.as_ref().is_some_and(|f| f.contains(&q)) {
            attrs.push("shape=doublecircle".into());
        }
        if d.initial == Some(q) {
            attrs.push("style=bold".into());
        }
        let _ = writeln!(out, "  q{q} [{}];", attrs.join(", "));
    }
    for (q, &[ta, tb]) in d.delta.iter().enumerate() {
        if ta == tb {
            let _ = writeln!(out, "  q{q} -> q{ta} [label=\"a,b\"];");
        } else {
            let _ = writeln!(out, "  q{q} -> q{ta} [label=\"a\"];");
            let _ = writeln!(out, "  q{q} -> q{tb} [label=\"b\"];");
        }
    }
    out.push_str("}\n");
    out
}

/// A total self-map of `0..m`; `image[q]` is the image of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Vec<usize>,
}

impl Transformation {
    pub fn new(image: Vec<usize>) -> Result<Transformation> {
        let m = image.len();
        if let Some(&bad) = image.iter().find(|&&t| t >= m) {
            return Err(Error::StateOutOfRange {
                state: bad,
                state_count: m,
            });
        }
        Ok(Transformation { image })
    }

    pub fn identity(m: usize) -> Transformation {
        Transformation {
            image: (0..m).collect(),
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, q: usize) -> usize {
        self.image[q]
    }

    /// `self` first, then `next` (right action: `q·(uv) = (q·u)·v`).
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation {
            image: self.image.iter().map(|&p| next.image[p]).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.image.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of distinct values in the image.
    pub fn rank(&self) -> usize {
        self.image.iter().collect::<BTreeSet<_>>().len()
    }
}
