use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use synideal::construction::{construct_sc, family_a, family_b, AssociatedPair};
use synideal::ideal::minimal_ideal_dfa;
use synideal::search::{reset_complexity, SearchConfig};
use synideal::subset::{
    is_reset_word, languages_equal, shortest_sync_word, syn_acceptor, DEFAULT_SUBSET_LIMIT,
};
use synideal::syntactic::{
    homomorphism_check, inner_factor_count, inner_factor_count_naive, is_exceptional,
    predicted_sigma, staircase_sigma_formula, staircase_word, syntactic_complexity,
    transition_semigroup, DEFAULT_CLOSURE_LIMIT,
};
use synideal::{Dfa, Letter, Limits, Word};

const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const SIGMA_BUDGET: Duration = Duration::from_secs(30);
const STAIRCASE_BUDGET: Duration = Duration::from_secs(10);
const SEARCH_BUDGET: Duration = Duration::from_secs(5);

const STAIRCASE_K4_SIGMA: usize = 128;
const STAIRCASE_K6_SIGMA: usize = 575;

type Outcome = Result<(), String>;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Outcome {
    let spent = start.elapsed();
    ensure(spent <= budget, || {
        format!("{what} took {spent:?}, budget {budget:?}")
    })
}

fn presents(b: &Dfa, word: &Word) -> bool {
    let syn = syn_acceptor(b, DEFAULT_SUBSET_LIMIT).unwrap();
    languages_equal(&syn, &minimal_ideal_dfa(word))
        .unwrap()
        .is_equal()
}

/// Transition monoid minus the identity, by naive fixed-point iteration over
/// plain image vectors.
fn semigroup_size_oracle(d: &Dfa) -> usize {
    let m = d.state_count();
    let letters: Vec<Vec<usize>> = Letter::ALL
        .iter()
        .map(|&x| (0..m).map(|q| d.next(q, x)).collect())
        .collect();
    let mut seen: HashSet<Vec<usize>> = letters.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in &frontier {
            for l in &letters {
                let composed: Vec<usize> = t.iter().map(|&q| l[q]).collect();
                if seen.insert(composed.clone()) {
                    next.push(composed);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

fn criterion_1(presenters: &mut Vec<(Word, Dfa)>) -> Outcome {
    let start = Instant::now();
    let words: Vec<Word> = Word::all_up_to(8).collect();
    ensure(words.len() == 510, || format!("{} words", words.len()))?;
    for word in words {
        let (b, _) = construct_sc(&word).map_err(|e| format!("{word}: {e}"))?;
        ensure(b.state_count() == word.len() + 1, || {
            format!("{word}: {} states", b.state_count())
        })?;
        ensure(b.is_strongly_connected(), || {
            format!("{word}: not strongly connected")
        })?;
        ensure(presents(&b, &word), || format!("{word}: Syn differs"))?;
        presenters.push((word, b));
    }
    within(start, SWEEP_BUDGET, "construction sweep")
}

fn criterion_2() -> Outcome {
    let (b, trace) = construct_sc(&w("aabab")).map_err(|e| e.to_string())?;
    let expected = [[2, 1], [1, 0], [3, 1], [3, 4], [5, 0], [1, 1]];
    ensure(b.rows() == expected, || format!("table {:?}", b.rows()))?;
    let pairs: Vec<String> = trace
        .pairs()
        .iter()
        .map(AssociatedPair::to_string)
        .collect();
    ensure(
        pairs == ["(0,1)", "(2,1)", "(3,1)", "(4,0)", "(5,2)", "s"],
        || format!("pairs {pairs:?}"),
    )?;
    let a = minimal_ideal_dfa(&w("aabab"));
    let expected = [[1, 0], [2, 0], [2, 3], [4, 0], [2, 5], [5, 5]];
    ensure(a.rows() == expected, || format!("minimal {:?}", a.rows()))?;
    ensure(a.initial() == Some(0), || "initial".into())?;
    ensure(
        a.finals().map(|f| f.iter().copied().collect::<Vec<_>>()) == Some(vec![5]),
        || "finals".into(),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let words: Vec<Word> = Word::all_up_to(8).filter(|w| w.len() >= 2).collect();
    ensure(words.len() == 508, || format!("{} words", words.len()))?;
    for word in &words {
        let n = word.len();
        let computed =
            syntactic_complexity(word, DEFAULT_CLOSURE_LIMIT).map_err(|e| e.to_string())?;
        let oracle = semigroup_size_oracle(&minimal_ideal_dfa(word));
        ensure(computed == oracle, || {
            format!("{word}: closure {computed} vs oracle {oracle}")
        })?;
        let predicted = predicted_sigma(word).map_err(|e| e.to_string())?;
        ensure(computed == predicted, || {
            format!("{word}: computed {computed}, predicted {predicted}")
        })?;
        let shapes = [
            Word::power(Letter::A, n - 1).unwrap().concat(&w("b")),
            w("a").concat(&Word::power(Letter::B, n - 1).unwrap()),
            w("b").concat(&Word::power(Letter::A, n - 1).unwrap()),
            Word::power(Letter::B, n - 1).unwrap().concat(&w("a")),
        ];
        let shaped = shapes.contains(word);
        ensure(shaped == is_exceptional(word), || {
            format!("{word}: exceptional classification")
        })?;
        ensure((computed == n * n) == shaped, || {
            format!("{word}: σ = {computed}, n² = {}", n * n)
        })?;
    }
    within(start, SIGMA_BUDGET, "σ sweep")
}

fn criterion_4() -> Outcome {
    for (k, n, expected) in [(4, 10, STAIRCASE_K4_SIGMA), (6, 21, STAIRCASE_K6_SIGMA)] {
        let start = Instant::now();
        let word = staircase_word(k).map_err(|e| e.to_string())?;
        ensure(word.len() == n, || format!("k={k}: n = {}", word.len()))?;
        let brute = semigroup_size_oracle(&minimal_ideal_dfa(&word));
        let closure =
            syntactic_complexity(&word, DEFAULT_CLOSURE_LIMIT).map_err(|e| e.to_string())?;
        let formula = staircase_sigma_formula(k).map_err(|e| e.to_string())?;
        let from_factors = n * n + 1 + inner_factor_count(&word);
        ensure(
            brute == closure && closure == formula && formula == from_factors,
            || {
                format!(
                    "k={k}: brute {brute}, closure {closure}, formula {formula}, n²+1+N {from_factors}"
                )
            },
        )?;
        ensure(brute == expected, || {
            format!("k={k}: brute {brute}, stated {expected}")
        })?;
        within(start, STAIRCASE_BUDGET, &format!("staircase k={k}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for n in 3..=7 {
        let target = Word::power(Letter::A, n - 1).unwrap().concat(&w("b"));
        let fa = family_a(n).map_err(|e| e.to_string())?;
        let fb = family_b(n).map_err(|e| e.to_string())?;
        for (name, d) in [("A", &fa), ("B", &fb)] {
            ensure(d.state_count() == n + 1, || format!("{name}({n}) size"))?;
            ensure(d.is_strongly_connected(), || {
                format!("{name}({n}) not strongly connected")
            })?;
            ensure(presents(d, &target), || format!("{name}({n}): Syn differs"))?;
        }
        ensure(fa.isomorphism_to(&fb).is_none(), || {
            format!("A({n}) and B({n}) are isomorphic")
        })?;
    }
    Ok(())
}

fn criterion_6(presenters: &mut Vec<(Word, Dfa)>) -> Outcome {
    let start = Instant::now();
    let config = SearchConfig::default();
    for s in ["ab", "aa"] {
        let word = w(s);
        let report = reset_complexity(&word, 3, false, &config).map_err(|e| e.to_string())?;
        ensure(report.rc_established == Some(3), || {
            format!("{s}: rc {:?}", report.rc_established)
        })?;
        let lower: Vec<(usize, u128, usize)> = report
            .levels
            .iter()
            .filter(|l| l.states < 3)
            .map(|l| (l.states, l.candidates, l.presenters_found))
            .collect();
        ensure(lower == [(1, 1, 0), (2, 16, 0)], || {
            format!("{s}: lower levels {lower:?}")
        })?;
        ensure(!report.presenters.is_empty(), || {
            format!("{s}: no presenter")
        })?;
        for b in &report.presenters {
            ensure(b.state_count() == 3 && presents(b, &word), || {
                format!("{s}: bad presenter {:?}", b.rows())
            })?;
            presenters.push((word.clone(), b.clone()));
        }
    }
    within(start, SEARCH_BUDGET, "reset-complexity search")
}

fn criterion_7(presenters: &[(Word, Dfa)]) -> Outcome {
    ensure(!presenters.is_empty(), || "no presenters collected".into())?;
    let limits = Limits::default();
    for (word, b) in presenters {
        let ok = homomorphism_check(b, word, limits).map_err(|e| format!("{word}: {e}"))?;
        ensure(ok, || {
            format!("{word}: homomorphism check failed for {:?}", b.rows())
        })?;
        let sigma = syntactic_complexity(word, limits.closure_limit).map_err(|e| e.to_string())?;
        let size = transition_semigroup(b, limits.closure_limit)
            .map_err(|e| e.to_string())?
            .size();
        ensure(sigma <= size, || {
            format!("{word}: σ {sigma} > |S(B)| {size}")
        })?;
    }
    Ok(())
}

fn random_dfa(rng: &mut StdRng, m: usize) -> Dfa {
    let rows = (0..m)
        .map(|_| [rng.gen_range(0..m), rng.gen_range(0..m)])
        .collect();
    Dfa::from_rows(rows).unwrap()
}

fn random_word(rng: &mut StdRng, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter::ALL[rng.gen_range(0..2)]).collect()
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5EED);

    let mut sampled = 0;
    while sampled < 300 {
        let m = rng.gen_range(2..=7);
        let d = random_dfa(&mut rng, m);
        let Some(reset) =
            shortest_sync_word(&d, DEFAULT_SUBSET_LIMIT).map_err(|e| e.to_string())?
        else {
            continue;
        };
        sampled += 1;
        let syn = syn_acceptor(&d, DEFAULT_SUBSET_LIMIT).map_err(|e| e.to_string())?;
        let mut candidates = vec![reset];
        for _ in 0..20 {
            let len = rng.gen_range(0..=16);
            candidates.push(random_word(&mut rng, len));
        }
        for u in candidates {
            let in_syn = is_reset_word(&d, &u);
            ensure(syn.accepts(&u).unwrap() == in_syn, || {
                "acceptor disagrees".into()
            })?;
            if !in_syn {
                continue;
            }
            for x in Letter::ALL {
                let mut left = vec![x];
                left.extend_from_slice(&u);
                let mut right = u.clone();
                right.push(x);
                ensure(
                    is_reset_word(&d, &left) && is_reset_word(&d, &right),
                    || format!("{:?}: extension of a reset word is not reset", d.rows()),
                )?;
            }
        }
    }

    for word in Word::all_up_to(8) {
        let (b, _) = construct_sc(&word).map_err(|e| e.to_string())?;
        let found = shortest_sync_word(&b, DEFAULT_SUBSET_LIMIT).map_err(|e| e.to_string())?;
        ensure(found.as_deref() == Some(word.letters()), || {
            format!("{word}: shortest reset word {found:?}")
        })?;
    }

    let bound = |n: usize| if n < 2 { 0 } else { (n - 1) * (n - 2) / 2 };
    let mut words: Vec<Vec<Letter>> = Word::all_up_to(10).map(Word::into_letters).collect();
    for _ in 0..1000 {
        let len = rng.gen_range(1..=64);
        words.push(random_word(&mut rng, len));
    }
    for u in &words {
        let fast = inner_factor_count(u);
        let naive = inner_factor_count_naive(u);
        ensure(fast == naive, || {
            format!("{u:?}: N {fast} vs oracle {naive}")
        })?;
        ensure(fast <= bound(u.len()), || {
            format!("{u:?}: N {fast} exceeds {}", bound(u.len()))
        })?;
    }
    Ok(())
}

fn main() {
    let mut presenters = Vec::new();
    let mut search_presenters = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        (
            "1 construction correctness, |w| <= 8",
            criterion_1(&mut presenters),
        ),
        ("2 worked example aabab", criterion_2()),
        (
            "3 syntactic complexity formula, 2 <= |w| <= 8",
            criterion_3(),
        ),
        ("4 staircase k = 4, 6", criterion_4()),
        ("5 two non-isomorphic presenters of a^(n-1)b", criterion_5()),
        (
            "6 reset complexity of ab and aa",
            criterion_6(&mut search_presenters),
        ),
        ("7 homomorphism and σ <= |S(B)|", {
            presenters.extend(search_presenters);
            criterion_7(&presenters)
        }),
        ("8 property suites", criterion_8()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(()) => println!("PASS  criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
