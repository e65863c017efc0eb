//! Strongly connected synchronizing automata with `Syn = Σ*wΣ*`.
//!
//! [`construct_sc`] builds an automaton `B` on states `0..=n` (`n = |w|`) whose
//! pair automaton contains a copy of the minimal automaton of `Σ*wΣ*`: the
//! prefix `w[1..i]` is associated with the pair `(p_i, q_i)`, where `p_0 = 0`,
//! `q_0 = 1` and `p_i = i + 1` for `i >= 1`, and `w` itself with the sink. Step
//! `i` fixes the two transitions of state `i`:
//!
//! * `i·w[i] = i + 1` (or `q_{n-1}·w[n]` on the last step, which collapses the
//!   pair into the sink) and `q_i = q_{i-1}·w[i]`;
//! * for `c` the other letter, let `w[1..j]` be the prefix reached from
//!   `w[1..i-1]` by `c` in the minimal automaton. Then `q_{i-1}·c` is one of
//!   `p_j`, `q_j`, and `i·c` is set to the other one.
//!
//! Words starting with `b` are handled by exchanging the letters.

use std::fmt;
use std::fmt::Write as _;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ideal::minimal_ideal_dfa;
use crate::word::{Letter, Word};

/// Wiring of states `0` and `1` on the first step.
///
/// Four wirings map `{0,1}` to `{1,2}` under `a` and fix it under `b`; only the
/// first (`0·a = 2, 0·b = 1, 1·a = 1, 1·b = 0`) is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstStepVariant {
    First,
}

/// Which code path produced the automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionMethod {
    /// `|w| = 1`: a merging letter and a swapping letter on two states.
    SingleLetter,
    /// `w = a^n`, explicit table.
    Unary,
    /// The general step-by-step pair association.
    Inductive,
}

/// The pair of `B` associated with a prefix of `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociatedPair {
    /// `(p, q)`; `p > q` except for the initial pair `(0, 1)`.
    Pair {
        p: usize,
        q: usize,
    },
    Sink,
}

impl fmt::Display for AssociatedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssociatedPair::Pair { p, q } => write!(f, "({p},{q})"),
            AssociatedPair::Sink => write!(f, "s"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub letter: Letter,
    pub to: usize,
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}={}", self.from, self.letter, self.to)
    }
}

/// Record of step `index`: the prefix `w[1..index]` and its pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    pub pair: AssociatedPair,
    /// `j` with `w[1..j] = w[1..index-1]·c` in the minimal automaton, for
    /// steps that resolve the complementary letter `c`.
    pub complement_target: Option<usize>,
    pub fixed: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub word: Word,
    pub letters_swapped: bool,
    pub variant: FirstStepVariant,
    pub method: ConstructionMethod,
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    /// The associated pairs, one per prefix length `0..=n`.
    pub fn pairs(&self) -> Vec<AssociatedPair> {
        self.steps.iter().map(|s| s.pair).collect()
    }

    /// Step-by-step table: `i`, prefix, pair, `j`, transitions fixed.
    pub fn to_table(&self) -> String {
        let n = self.word.len();
        let width = n.max(6);
        let mut out = format!(
            "{:>3}  {:<width$}  {:<9}  {:>3}  fixed\n",
            "i", "prefix", "(p,q)", "j"
        );
        for step in &self.steps {
            let prefix = if step.index == 0 {
                "ε".to_string()
            } else {
                self.word[..step.index]
                    .iter()
                    .map(|l| l.as_char())
                    .collect()
            };
            let j = step
                .complement_target
                .map_or("-".to_string(), |j| j.to_string());
            let fixed = if step.fixed.is_empty() {
                "-".to_string()
            } else {
                step.fixed
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(
                out,
                "{:>3}  {:<width$}  {:<9}  {:>3}  {}",
                step.index,
                prefix,
                step.pair.to_string(),
                j,
                fixed
            );
        }
        out
    }
}

/// Builds a strongly connected synchronizing automaton with `|w| + 1` states
/// whose synchronizing words are exactly `Σ*wΣ*`.
pub fn construct_sc(w: &Word) -> Result<(Dfa, ConstructionTrace)> {
    let swapped = w[0] == Letter::B;
    let canonical = w.canonical();
    let (rows, method, steps) = if canonical.len() == 1 {
        let rows = vec![[0, 1], [0, 0]];
        let steps = derive_steps(&canonical, &rows);
        (rows, ConstructionMethod::SingleLetter, steps)
    } else if canonical.iter().all(|&l| l == Letter::A) {
        let rows = unary_table(canonical.len());
        let steps = derive_steps(&canonical, &rows);
        (rows, ConstructionMethod::Unary, steps)
    } else {
        let (rows, steps) = inductive(&canonical)?;
        (rows, ConstructionMethod::Inductive, steps)
    };

    let mut dfa = Dfa::from_rows(rows)?;
    let mut steps = steps;
    if swapped {
        dfa = dfa.swap_letters();
        for step in &mut steps {
            for t in &mut step.fixed {
                t.letter = t.letter.complement();
            }
        }
    }
    let trace = ConstructionTrace {
        word: w.clone(),
        letters_swapped: swapped,
        variant: FirstStepVariant::First,
        method,
        steps,
    };
    Ok((dfa, trace))
}

/// `a^n`, `n >= 2`: `0·a = 2`, `1·a = n·a = 1`, `i·a = i+1` otherwise;
/// `1·b = 0` and every other state goes to `1` under `b`.
fn unary_table(n: usize) -> Vec<[usize; 2]> {
    (0..=n)
        .map(|i| {
            let a = match i {
                0 => 2,
                1 => 1,
                i if i == n => 1,
                i => i + 1,
            };
            let b = if i == 1 { 0 } else { 1 };
            [a, b]
        })
        .collect()
}

const FIRST_STEP: [Transition; 4] = [
    Transition {
        from: 0,
        letter: Letter::A,
        to: 2,
    },
    Transition {
        from: 0,
        letter: Letter::B,
        to: 1,
    },
    Transition {
        from: 1,
        letter: Letter::A,
        to: 1,
    },
    Transition {
        from: 1,
        letter: Letter::B,
        to: 0,
    },
];

/// Rebuilds the trace of a finished table by following the pair sequence.
fn derive_steps(w: &Word, rows: &[[usize; 2]]) -> Vec<TraceStep> {
    let n = w.len();
    let minimal = minimal_ideal_dfa(w);
    let transitions_of = |q: usize| {
        Letter::ALL
            .iter()
            .map(|&x| Transition {
                from: q,
                letter: x,
                to: rows[q][x.index()],
            })
            .collect::<Vec<_>>()
    };
    let mut steps = vec![TraceStep {
        index: 0,
        pair: AssociatedPair::Pair { p: 0, q: 1 },
        complement_target: None,
        fixed: Vec::new(),
    }];
    let mut q_prev = 1;
    for i in 1..=n {
        let x = w.at(i);
        let q_i = rows[q_prev][x.index()];
        let pair = if i == n {
            AssociatedPair::Sink
        } else {
            AssociatedPair::Pair { p: i + 1, q: q_i }
        };
        let (fixed, complement_target) = if i == 1 {
            let mut fixed = transitions_of(0);
            fixed.extend(transitions_of(1));
            (fixed, None)
        } else {
            (transitions_of(i), Some(minimal.next(i - 1, x.complement())))
        };
        steps.push(TraceStep {
            index: i,
            pair,
            complement_target,
            fixed,
        });
        q_prev = q_i;
    }
    steps
}

struct Builder {
    rows: Vec<[Option<usize>; 2]>,
    steps: Vec<TraceStep>,
}

impl Builder {
    fn set(&mut self, from: usize, letter: Letter, to: usize) {
        debug_assert!(self.rows[from][letter.index()].is_none());
        self.rows[from][letter.index()] = Some(to);
        self.steps
            .last_mut()
            .expect("a step is open")
            .fixed
            .push(Transition { from, letter, to });
    }

    fn get(&self, step: usize, from: usize, letter: Letter) -> Result<usize> {
        self.rows[from][letter.index()].ok_or_else(|| Error::Construction {
            step,
            detail: format!("transition {from}·{letter} is read before it is defined"),
            trace: self.partial_table(),
        })
    }

    fn partial_table(&self) -> String {
        self.steps
            .iter()
            .map(|s| {
                let fixed: Vec<String> = s.fixed.iter().map(|t| t.to_string()).collect();
                format!("step {}: {} {}", s.index, s.pair, fixed.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

type Steps = Vec<TraceStep>;

fn inductive(w: &Word) -> Result<(Vec<[usize; 2]>, Steps)> {
    let n = w.len();
    debug_assert!(n >= 2 && w[0] == Letter::A);
    let minimal = minimal_ideal_dfa(w);
    let mut b = Builder {
        rows: vec![[None; 2]; n + 1],
        steps: vec![TraceStep {
            index: 0,
            pair: AssociatedPair::Pair { p: 0, q: 1 },
            complement_target: None,
            fixed: Vec::new(),
        }],
    };
    // p[i], q[i] for the prefix of length i; p[0] = 0, q[0] = 1.
    let mut p = vec![0usize, 2];
    let mut q = vec![1usize, 1];

    b.steps.push(TraceStep {
        index: 1,
        pair: AssociatedPair::Pair { p: 2, q: 1 },
        complement_target: None,
        fixed: Vec::new(),
    });
    for t in FIRST_STEP {
        b.set(t.from, t.letter, t.to);
    }

    for i in 2..=n {
        let x = w.at(i);
        let c = x.complement();
        let q_prev = q[i - 1];
        let j = minimal.next(i - 1, c);
        let q_next = b.get(i, q_prev, x)?;
        let pair = if i < n {
            AssociatedPair::Pair {
                p: i + 1,
                q: q_next,
            }
        } else {
            AssociatedPair::Sink
        };
        b.steps.push(TraceStep {
            index: i,
            pair,
            complement_target: Some(j),
            fixed: Vec::new(),
        });

        if i < n {
            b.set(i, x, i + 1);
            p.push(i + 1);
            q.push(q_next);
        } else {
            // (n, q_{n-1}) collapses into the sink
            b.set(i, x, q_next);
        }

        let moved = b.get(i, q_prev, c)?;
        if moved == q[j] {
            b.set(i, c, p[j]);
        } else if moved == p[j] {
            b.set(i, c, q[j]);
        } else {
            return Err(Error::Construction {
                step: i,
                detail: format!(
                    "q_{{i-1}}·{c} = {moved} is neither p_{j} = {} nor q_{j} = {}",
                    p[j], q[j]
                ),
                trace: b.partial_table(),
            });
        }
    }

    let rows = b
        .rows
        .iter()
        .enumerate()
        .map(|(state, row)| match row {
            [Some(ta), Some(tb)] => Ok([*ta, *tb]),
            _ => Err(Error::Construction {
                step: n,
                detail: format!("state {state} left incomplete"),
                trace: b.partial_table(),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, b.steps))
}

/// The automaton `A_{n+1}` on states `0..=n` (`n >= 2`) with synchronizing
/// words `Σ*a^(n-1)bΣ*`.
pub fn family_a(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::Domain(format!("family A needs n >= 2, got {n}")));
    }
    let rows = (0..=n)
        .map(|i| {
            let a = match i {
                0 => 0,
                i if i == n => n,
                i => i + 1,
            };
            let b = if i == 0 || i == n { 1 } else { 0 };
            [a, b]
        })
        .collect();
    Dfa::from_rows(rows)
}

/// The automaton `B_{n+1}` on states `0..=n` (`n >= 3`), strongly connected,
/// with the same synchronizing words as [`family_a`] but not isomorphic to it.
pub fn family_b(n: usize) -> Result<Dfa> {
    if n < 3 {
        return Err(Error::Domain(format!("family B needs n >= 3, got {n}")));
    }
    let rows = if n % 2 == 1 {
        (0..=n)
            .map(|i| {
                let a = if i == n { n - 1 } else { i + 1 };
                let b = if i % 2 == 1 && i != n { 0 } else { 1 };
                [a, b]
            })
            .collect()
    } else {
        (0..=n)
            .map(|i| {
                let a = if i == 1 || i == n { 0 } else { i + 1 };
                let b = if i > 1 { 0 } else { 2 };
                [a, b]
            })
            .collect()
    };
    Dfa::from_rows(rows)
}
