//! The minimal automaton of a principal ideal `Σ*wΣ*`.
//!
//! States are the prefix lengths `0..=n` of `w`. State `i` moves to `i + 1` on
//! `w[i+1]`; on the other letter it falls back to the longest prefix of `w`
//! that is a suffix of `w[1..i]` followed by that letter. State `n` is a sink.

use crate::dfa::Dfa;
use crate::word::{Letter, Word};

/// `border[i - 1]` is the length of the longest proper border of `w[1..i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderTable {
    border: Vec<usize>,
}

impl BorderTable {
    /// KMP failure function, `O(n)`.
    pub fn new(w: &[Letter]) -> BorderTable {
        let mut border = vec![0; w.len()];
        let mut k = 0;
        for i in 1..w.len() {
            while k > 0 && w[i] != w[k] {
                k = border[k - 1];
            }
            if w[i] == w[k] {
                k += 1;
            }
            border[i] = k;
        }
        BorderTable { border }
    }

    /// Longest proper border of the prefix of length `i` (`1 <= i <= n`).
    pub fn of_prefix(&self, i: usize) -> usize {
        self.border[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.border
    }
}

pub fn border_table(w: &Word) -> BorderTable {
    BorderTable::new(w)
}

/// The `(n+1)`-state minimal DFA of `Σ*wΣ*`, initial `0`, final `{n}`.
pub fn minimal_ideal_dfa(w: &Word) -> Dfa {
    let n = w.len();
    let borders = BorderTable::new(w);
    let mut rows = vec![[0usize; 2]; n + 1];
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        for x in Letter::ALL {
            let mut k = i;
            let target = loop {
                if w[k] == x {
                    break k + 1;
                }
                if k == 0 {
                    break 0;
                }
                k = borders.of_prefix(k);
            };
            row[x.index()] = target;
        }
    }
    rows[n] = [n, n];
    Dfa::from_rows(rows)
        .and_then(|d| d.with_initial(0))
        .and_then(|d| d.with_finals([n]))
        .expect("prefix automaton is well formed")
}

/// Naive factor test: does `w` occur contiguously in `u`?
pub fn contains_factor(u: &[Letter], w: &[Letter]) -> bool {
    if w.len() > u.len() {
        return false;
    }
    (0..=u.len() - w.len()).any(|start| u[start..start + w.len()] == *w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Longest proper border by enumeration of every candidate length.
    fn border_by_enumeration(prefix: &[Letter]) -> usize {
        (0..prefix.len())
            .rev()
            .find(|&k| prefix[..k] == prefix[prefix.len() - k..])
            .unwrap()
    }

    #[test]
    fn border_table_examples() {
        assert_eq!(border_table(&w("aabab")).as_slice(), &[0, 1, 0, 1, 0]);
        assert_eq!(border_table(&w("aaaa")).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(border_table(&w("ab")).as_slice(), &[0, 0]);
    }

    #[test]
    fn border_table_matches_enumeration() {
        for word in Word::all_up_to(10) {
            let table = border_table(&word);
            for i in 1..=word.len() {
                let b = table.of_prefix(i);
                assert!(b < i);
                assert_eq!(b, border_by_enumeration(&word[..i]), "{word} prefix {i}");
            }
        }
    }

    #[test]
    fn minimal_dfa_tables() {
        assert_eq!(
            minimal_ideal_dfa(&w("aabab")).rows(),
            &[[1, 0], [2, 0], [2, 3], [4, 0], [2, 5], [5, 5]]
        );
        assert_eq!(minimal_ideal_dfa(&w("a")).rows(), &[[1, 0], [1, 1]]);
        assert_eq!(
            minimal_ideal_dfa(&w("ab")).rows(),
            &[[1, 0], [1, 2], [2, 2]]
        );
    }

    #[test]
    fn contains_factor_examples() {
        assert!(contains_factor(&w("baababa"), &w("aabab")));
        assert!(contains_factor(&w("aabab"), &w("aabab")));
        assert!(!contains_factor(&w("aaaa"), &w("aab")));
        assert!(!contains_factor(&[], &w("a")));
    }

    /// Every `u` with `|u| <= 2|w| + 2`, visited depth-first so the automaton
    /// state and the naive factor flag are both extended one letter at a time.
    fn check_recognition(gen: &Word) {
        let d = minimal_ideal_dfa(gen);
        let max = 2 * gen.len() + 2;
        let mut u = Vec::with_capacity(max);
        assert!(!d.accepts(&[]).unwrap());
        fn visit(d: &Dfa, gen: &Word, max: usize, u: &mut Vec<Letter>, state: usize, seen: bool) {
            if u.len() == max {
                return;
            }
            for x in Letter::ALL {
                u.push(x);
                let next = d.next(state, x);
                let tail = u.len().saturating_sub(gen.len());
                let seen_next = seen || contains_factor(&u[tail..], gen);
                assert_eq!(next == gen.len(), seen_next, "w = {gen}, u = {u:?}");
                visit(d, gen, max, u, next, seen_next);
                u.pop();
            }
        }
        visit(&d, gen, max, &mut u, 0, false);
    }

    #[test]
    fn recognizes_exactly_the_ideal() {
        for gen in Word::all_up_to(8) {
            check_recognition(&gen);
        }
    }

    #[test]
    fn minimal_dfa_is_minimal_with_sink() {
        for gen in Word::all_up_to(8) {
            let d = minimal_ideal_dfa(&gen);
            let n = gen.len();
            assert_eq!(d.state_count(), n + 1);
            assert_eq!(d.rows()[n], [n, n]);
            let class = d.state_equivalence().unwrap();
            let distinct: std::collections::BTreeSet<_> = class.iter().collect();
            assert_eq!(distinct.len(), n + 1, "{gen} has equivalent states");
        }
    }
}
