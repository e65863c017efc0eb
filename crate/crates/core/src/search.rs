//! Exhaustive search over small automata for presenters of `Σ*wΣ*`.
//!
//! A presenter is a DFA whose synchronizing words are exactly `Σ*wΣ*`. The
//! reset complexity of the ideal is the least state count of a presenter.
//! There are `k^(2k)` complete binary DFAs on `k` states, so the sweep is
//! capped; candidates are filtered by strong connectivity, then by the
//! pairwise synchronization test, then by full language equality.

use std::fmt::Write as _;

use serde_json::json;

use crate::dfa::Dfa;
use crate::document;
use crate::error::{Error, Result};
use crate::ideal::minimal_ideal_dfa;
use crate::subset::{is_synchronizing, languages_equal, syn_acceptor};
use crate::word::Word;
use crate::Limits;

/// Default enumeration budget, in states.
pub const DEFAULT_MAX_STATES: usize = 4;
/// No configuration may go beyond this (5^10 ≈ 9.8 million candidates).
pub const HARD_MAX_STATES: usize = 5;

/// Number of complete binary DFAs on `k` states, `k^(2k)`.
pub fn candidate_count(k: usize) -> u128 {
    (k as u128).pow(2 * k as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationFilter {
    pub synchronizing_only: bool,
    pub strongly_connected_only: bool,
}

impl EnumerationFilter {
    fn admits(&self, d: &Dfa) -> bool {
        (!self.strongly_connected_only || d.is_strongly_connected())
            && (!self.synchronizing_only || is_synchronizing(d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_states: usize,
    pub jobs: usize,
    pub limits: Limits,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_states: DEFAULT_MAX_STATES,
            jobs: 1,
            limits: Limits::default(),
        }
    }
}

fn check_budget(k: usize, max_states: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("automata need at least one state".into()));
    }
    let cap = max_states.min(HARD_MAX_STATES);
    if k > cap {
        return Err(Error::SearchRefused {
            states: k,
            candidates: candidate_count(k),
            max_states: cap,
        });
    }
    Ok(())
}

/// Every complete DFA on `k` states in lexicographic order of the flattened
/// table `[0·a, 0·b, 1·a, 1·b, …]`, optionally with the first row fixed.
#[derive(Debug, Clone)]
struct TableOdometer {
    k: usize,
    digits: Vec<usize>,
    frozen: usize,
    done: bool,
}

impl TableOdometer {
    fn new(k: usize, first_row: Option<[usize; 2]>) -> TableOdometer {
        let mut digits = vec![0; 2 * k];
        let frozen = match first_row {
            Some(row) => {
                digits[0] = row[0];
                digits[1] = row[1];
                2
            }
            None => 0,
        };
        TableOdometer {
            k,
            digits,
            frozen,
            done: false,
        }
    }
}

impl Iterator for TableOdometer {
    type Item = Dfa;

    fn next(&mut self) -> Option<Dfa> {
        if self.done {
            return None;
        }
        let rows = self.digits.chunks(2).map(|c| [c[0], c[1]]).collect();
        let d = Dfa::from_rows(rows).expect("odometer digits are below k");
        let mut pos = self.digits.len();
        loop {
            if pos == self.frozen {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.k {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(d)
    }
}

/// All complete binary DFAs on `k` states passing `filter`.
pub fn enumerate_dfas(
    k: usize,
    filter: EnumerationFilter,
    max_states: usize,
) -> Result<impl Iterator<Item = Dfa>> {
    check_budget(k, max_states)?;
    Ok(TableOdometer::new(k, None).filter(move |d| filter.admits(d)))
}

/// Statistics for one state count of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub states: usize,
    pub candidates: u128,
    /// Presenters before isomorphism deduplication.
    pub presenters_found: usize,
    /// Candidates whose power automaton hit the subset limit.
    pub subset_limit_hits: usize,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub word: Word,
    pub max_states: usize,
    pub strongly_connected_only: bool,
    pub candidates_examined: u128,
    pub levels: Vec<LevelStats>,
    /// Presenters at the least state count found, pairwise non-isomorphic,
    /// each the lexicographically least table of its class.
    pub presenters: Vec<Dfa>,
    pub rc_established: Option<usize>,
}

impl SearchReport {
    /// `rc >= ⌈√|w|⌉ + 1`, which any counterexample to the Černý bound
    /// would break. `None` when no presenter was found.
    pub fn cerny_bound_respected(&self) -> Option<bool> {
        self.rc_established.map(|rc| {
            let n = self.word.len();
            let root = (1..).find(|r| r * r >= n).expect("square root exists");
            rc > root
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "word": self.word.to_string(),
            "max_states": self.max_states,
            "strongly_connected_only": self.strongly_connected_only,
            "candidates_examined": u64::try_from(self.candidates_examined).unwrap_or(u64::MAX),
            "rc_established": self.rc_established,
            "levels": self.levels.iter().map(|l| json!({
                "states": l.states,
                "candidates": u64::try_from(l.candidates).unwrap_or(u64::MAX),
                "presenters_found": l.presenters_found,
                "subset_limit_hits": l.subset_limit_hits,
            })).collect::<Vec<_>>(),
            "presenters": self.presenters.iter().map(document::to_value).collect::<Vec<_>>(),
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "word                 {}", self.word);
        let _ = writeln!(out, "max states           {}", self.max_states);
        let _ = writeln!(out, "strongly connected   {}", self.strongly_connected_only);
        let _ = writeln!(out, "candidates examined  {}", self.candidates_examined);
        for l in &self.levels {
            let _ = writeln!(
                out,
                "  k={}  candidates={}  presenters={}  subset-limit hits={}",
                l.states, l.candidates, l.presenters_found, l.subset_limit_hits
            );
        }
        match self.rc_established {
            Some(rc) => {
                let _ = writeln!(out, "rc                   {rc}");
                let _ = writeln!(
                    out,
                    "non-isomorphic presenters at k={rc}: {}",
                    self.presenters.len()
                );
                for (i, d) in self.presenters.iter().enumerate() {
                    let rows: Vec<String> = d
                        .rows()
                        .iter()
                        .enumerate()
                        .map(|(q, r)| format!("{q}:[{},{}]", r[0], r[1]))
                        .collect();
                    let _ = writeln!(out, "  #{i}  {}", rows.join(" "));
                }
            }
            None => {
                let _ = writeln!(out, "rc                   > {}", self.max_states);
            }
        }
        out
    }
}

struct ChunkResult {
    presenters: Vec<Dfa>,
    subset_limit_hits: usize,
}

fn scan_chunk(
    k: usize,
    first_row: [usize; 2],
    minimal: &Dfa,
    sc_only: bool,
    limits: Limits,
) -> Result<ChunkResult> {
    let mut result = ChunkResult {
        presenters: Vec::new(),
        subset_limit_hits: 0,
    };
    for d in TableOdometer::new(k, Some(first_row)) {
        if sc_only && !d.is_strongly_connected() {
            continue;
        }
        if !is_synchronizing(&d) {
            continue;
        }
        let syn = match syn_acceptor(&d, limits.subset_limit) {
            Ok(syn) => syn,
            Err(Error::SubsetLimit { .. }) => {
                result.subset_limit_hits += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if languages_equal(&syn, minimal)?.is_equal() {
            result.presenters.push(d);
        }
    }
    Ok(result)
}

/// Scans all `k`-state candidates, `jobs` chunks at a time. Chunks are keyed by
/// the first table row and merged in that order, so the outcome does not
/// depend on `jobs`.
fn scan_level(
    w: &Word,
    k: usize,
    sc_only: bool,
    config: &SearchConfig,
) -> Result<(LevelStats, Vec<Dfa>)> {
    let minimal = minimal_ideal_dfa(w);
    let rows: Vec<[usize; 2]> = (0..k).flat_map(|a| (0..k).map(move |b| [a, b])).collect();
    let jobs = config.jobs.clamp(1, rows.len());
    let mut slots: Vec<Option<Result<ChunkResult>>> = (0..rows.len()).map(|_| None).collect();

    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|worker| {
                let rows = &rows;
                let minimal = &minimal;
                let limits = config.limits;
                scope.spawn(move || {
                    (worker..rows.len())
                        .step_by(jobs)
                        .map(|i| (i, scan_chunk(k, rows[i], minimal, sc_only, limits)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, r) in handle.join().expect("search worker panicked") {
                slots[i] = Some(r);
            }
        }
    });

    let mut stats = LevelStats {
        states: k,
        candidates: candidate_count(k),
        presenters_found: 0,
        subset_limit_hits: 0,
    };
    let mut classes: Vec<Dfa> = Vec::new();
    for slot in slots {
        let chunk = slot.expect("every chunk was scanned")?;
        stats.presenters_found += chunk.presenters.len();
        stats.subset_limit_hits += chunk.subset_limit_hits;
        for d in chunk.presenters {
            if !classes.iter().any(|c| c.isomorphism_to(&d).is_some()) {
                classes.push(d);
            }
        }
    }
    Ok((stats, classes))
}

/// Sweeps `k = 1..=k_max` and stops at the first state count with a presenter.
pub fn reset_complexity(
    w: &Word,
    k_max: usize,
    sc_only: bool,
    config: &SearchConfig,
) -> Result<SearchReport> {
    check_budget(k_max, config.max_states)?;
    let mut report = SearchReport {
        word: w.clone(),
        max_states: k_max,
        strongly_connected_only: sc_only,
        candidates_examined: 0,
        levels: Vec::new(),
        presenters: Vec::new(),
        rc_established: None,
    };
    for k in 1..=k_max {
        let (stats, presenters) = scan_level(w, k, sc_only, config)?;
        report.candidates_examined += stats.candidates;
        report.levels.push(stats);
        if !presenters.is_empty() {
            report.presenters = presenters;
            report.rc_established = Some(k);
            break;
        }
    }
    Ok(report)
}

/// All `k`-state presenters of `Σ*wΣ*` up to isomorphism.
pub fn find_msas(w: &Word, k: usize, sc_only: bool, config: &SearchConfig) -> Result<Vec<Dfa>> {
    check_budget(k, config.max_states)?;
    Ok(scan_level(w, k, sc_only, config)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let none = EnumerationFilter::default();
        assert_eq!(enumerate_dfas(1, none, 4).unwrap().count(), 1);
        assert_eq!(enumerate_dfas(2, none, 4).unwrap().count(), 16);
        assert_eq!(enumerate_dfas(3, none, 4).unwrap().count(), 729);
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        let tables: Vec<Vec<[usize; 2]>> = enumerate_dfas(2, EnumerationFilter::default(), 4)
            .unwrap()
            .map(|d| d.rows().to_vec())
            .collect();
        assert_eq!(tables[0], vec![[0, 0], [0, 0]]);
        assert_eq!(tables[1], vec![[0, 0], [0, 1]]);
        assert_eq!(tables[15], vec![[1, 1], [1, 1]]);
        let mut sorted = tables.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, tables);
    }

    #[test]
    fn filters_prune() {
        let sc = EnumerationFilter {
            strongly_connected_only: true,
            ..Default::default()
        };
        let sync = EnumerationFilter {
            synchronizing_only: true,
            ..Default::default()
        };
        for d in enumerate_dfas(3, sc, 4).unwrap() {
            assert!(d.is_strongly_connected());
        }
        for d in enumerate_dfas(3, sync, 4).unwrap() {
            assert!(is_synchronizing(&d));
        }
        assert!(enumerate_dfas(3, sc, 4).unwrap().count() < 729);
    }

    #[test]
    fn budget_refusal_reports_count() {
        match enumerate_dfas(5, EnumerationFilter::default(), 4) {
            Err(Error::SearchRefused {
                states: 5,
                candidates,
                max_states: 4,
            }) => assert_eq!(candidates, 9_765_625),
            Err(other) => panic!("unexpected {other:?}"),
            Ok(_) => panic!("5 states exceed the default budget"),
        }
        assert!(enumerate_dfas(6, EnumerationFilter::default(), 10).is_err());
        assert!(enumerate_dfas(0, EnumerationFilter::default(), 4).is_err());
    }

    #[test]
    fn no_two_state_presenter_of_ab() {
        assert!(find_msas(&w("ab"), 2, false, &SearchConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn job_count_does_not_change_results() {
        let one = SearchConfig::default();
        let four = SearchConfig { jobs: 4, ..one };
        let a = reset_complexity(&w("ab"), 3, false, &one).unwrap();
        let b = reset_complexity(&w("ab"), 3, false, &four).unwrap();
        assert_eq!(a.presenters, b.presenters);
        assert_eq!(a.levels, b.levels);
        assert_eq!(a.to_json(), b.to_json());
    }
}
