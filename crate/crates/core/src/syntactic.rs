//! Transition semigroups and the syntactic complexity of `Σ*wΣ*`.
//!
//! The syntactic semigroup of `L = Σ*wΣ*` is the transition semigroup of its
//! minimal automaton restricted to nonempty words, so its size is obtained by
//! closing the two letter transformations under composition. For
//! `|w| = n >= 2` the size is `n²` when `w` is one of `a^(n-1)b`, `ab^(n-1)`,
//! `ba^(n-1)`, `b^(n-1)a`, and `n² + 1 + N(w)` otherwise, where `N(w)` counts
//! the distinct factors of `w[2..n-1]`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde_json::json;

use crate::dfa::{Dfa, Transformation};
use crate::error::{Error, Result};
use crate::ideal::minimal_ideal_dfa;
use crate::subset::{languages_equal, syn_acceptor, Equivalence};
use crate::word::{letters_to_string, Letter, Word};
use crate::Limits;

pub const DEFAULT_CLOSURE_LIMIT: usize = 2_000_000;

/// The transformations induced by nonempty words, each with a shortest
/// witness word (lexicographically least among the shortest).
#[derive(Debug, Clone)]
pub struct SemigroupClosure {
    elements: Vec<Transformation>,
    witnesses: Vec<Vec<Letter>>,
    index: HashMap<Transformation, usize>,
}

impl SemigroupClosure {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Transformation, &[Letter])> {
        self.elements
            .iter()
            .zip(self.witnesses.iter().map(Vec::as_slice))
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.contains_key(t)
    }

    pub fn witness(&self, t: &Transformation) -> Option<&[Letter]> {
        self.index.get(t).map(|&i| self.witnesses[i].as_slice())
    }
}

/// Breadth-first closure of the letter transformations of `d`.
pub fn transition_semigroup(d: &Dfa, limit: usize) -> Result<SemigroupClosure> {
    let generators = Letter::ALL.map(|x| d.letter_transformation(x));
    let mut closure = SemigroupClosure {
        elements: Vec::new(),
        witnesses: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    let admit = |closure: &mut SemigroupClosure, t: Transformation, witness: Vec<Letter>| {
        if closure.index.contains_key(&t) {
            return Ok(None);
        }
        if closure.elements.len() >= limit {
            return Err(Error::ClosureLimit { limit });
        }
        let id = closure.elements.len();
        closure.index.insert(t.clone(), id);
        closure.elements.push(t);
        closure.witnesses.push(witness);
        Ok(Some(id))
    };
    for x in Letter::ALL {
        if let Some(id) = admit(&mut closure, generators[x.index()].clone(), vec![x])? {
            queue.push_back(id);
        }
    }
    while let Some(id) = queue.pop_front() {
        for x in Letter::ALL {
            let t = closure.elements[id].then(&generators[x.index()]);
            let mut witness = closure.witnesses[id].clone();
            witness.push(x);
            if let Some(new_id) = admit(&mut closure, t, witness)? {
                queue.push_back(new_id);
            }
        }
    }
    Ok(closure)
}

/// `σ(Σ*wΣ*)`, the size of the syntactic semigroup.
pub fn syntactic_complexity(w: &Word, limit: usize) -> Result<usize> {
    Ok(transition_semigroup(&minimal_ideal_dfa(w), limit)?.size())
}

/// The part of `w` strictly inside its first and last letters.
fn inner_part(w: &[Letter]) -> &[Letter] {
    if w.len() <= 2 {
        &[]
    } else {
        &w[1..w.len() - 1]
    }
}

/// `N(w)`: distinct nonempty factors `u` with `w = tus`, `t, s` nonempty.
/// Counted with a suffix automaton of `w[2..n-1]`.
pub fn inner_factor_count(w: &[Letter]) -> usize {
    distinct_factor_count(inner_part(w))
}

/// `N(w)` by listing every inner factor in a set.
pub fn inner_factor_count_naive(w: &[Letter]) -> usize {
    let inner = inner_part(w);
    let mut factors = BTreeSet::new();
    for start in 0..inner.len() {
        for end in start + 1..=inner.len() {
            factors.insert(&inner[start..end]);
        }
    }
    factors.len()
}

/// Number of distinct nonempty factors of `s`, via its suffix automaton.
pub fn distinct_factor_count(s: &[Letter]) -> usize {
    struct State {
        len: usize,
        link: Option<usize>,
        next: [Option<usize>; 2],
    }
    let mut states = vec![State {
        len: 0,
        link: None,
        next: [None; 2],
    }];
    let mut last = 0;
    for &x in s {
        let c = x.index();
        let cur = states.len();
        states.push(State {
            len: states[last].len + 1,
            link: None,
            next: [None; 2],
        });
        let mut p = Some(last);
        while let Some(v) = p {
            if states[v].next[c].is_some() {
                break;
            }
            states[v].next[c] = Some(cur);
            p = states[v].link;
        }
        match p {
            None => states[cur].link = Some(0),
            Some(v) => {
                let q = states[v].next[c].expect("transition exists");
                if states[v].len + 1 == states[q].len {
                    states[cur].link = Some(q);
                } else {
                    let clone = states.len();
                    states.push(State {
                        len: states[v].len + 1,
                        link: states[q].link,
                        next: states[q].next,
                    });
                    let mut p = Some(v);
                    while let Some(u) = p {
                        if states[u].next[c] != Some(q) {
                            break;
                        }
                        states[u].next[c] = Some(clone);
                        p = states[u].link;
                    }
                    states[q].link = Some(clone);
                    states[cur].link = Some(clone);
                }
            }
        }
        last = cur;
    }
    states
        .iter()
        .skip(1)
        .map(|st| st.len - states[st.link.expect("non-root has a link")].len)
        .sum()
}

/// `w ∈ {a^(n-1)b, ab^(n-1), ba^(n-1), b^(n-1)a}` with `n >= 2`.
pub fn is_exceptional(w: &[Letter]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let first_then_rest = w[1..].iter().all(|&l| l == w[1]) && w[0] != w[1];
    let rest_then_last = w[..n - 1].iter().all(|&l| l == w[0]) && w[n - 1] != w[0];
    first_then_rest || rest_then_last
}

/// The closed formula for `σ(Σ*wΣ*)`, defined for `|w| >= 2`.
pub fn predicted_sigma(w: &Word) -> Result<usize> {
    let n = w.len();
    if n < 2 {
        return Err(Error::Domain(format!(
            "the syntactic complexity formula needs |w| >= 2, got |{w}| = {n}"
        )));
    }
    if is_exceptional(w) {
        Ok(n * n)
    } else {
        Ok(n * n + 1 + inner_factor_count(w))
    }
}

/// Predicted versus computed syntactic complexity of `Σ*wΣ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaReport {
    pub word: Word,
    pub n: usize,
    pub inner_factors: usize,
    /// Absent for `|w| = 1`, where the formula does not apply.
    pub sigma_predicted: Option<usize>,
    pub sigma_computed: usize,
    pub exceptional: bool,
}

impl SigmaReport {
    /// Computes the report on the `a`-initial representative of `w`; both
    /// `σ` and `N` are invariant under exchanging the letters.
    pub fn compute(w: &Word, closure_limit: usize) -> Result<SigmaReport> {
        let canonical = w.canonical();
        let n = canonical.len();
        Ok(SigmaReport {
            word: w.clone(),
            n,
            inner_factors: inner_factor_count(&canonical),
            sigma_predicted: if n >= 2 {
                Some(predicted_sigma(&canonical)?)
            } else {
                None
            },
            sigma_computed: syntactic_complexity(&canonical, closure_limit)?,
            exceptional: is_exceptional(&canonical),
        })
    }

    pub fn matches(&self) -> Option<bool> {
        self.sigma_predicted.map(|p| p == self.sigma_computed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "word": self.word.to_string(),
            "n": self.n,
            "inner_factors": self.inner_factors,
            "sigma_predicted": self.sigma_predicted,
            "sigma_computed": self.sigma_computed,
            "exceptional": self.exceptional,
            "match": self.matches(),
        })
    }

    pub fn to_table(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let rows = [
            ("word", self.word.to_string()),
            ("n", self.n.to_string()),
            ("inner_factors", self.inner_factors.to_string()),
            (
                "sigma_predicted",
                opt(self.sigma_predicted.map(|v| v.to_string())),
            ),
            ("sigma_computed", self.sigma_computed.to_string()),
            ("exceptional", self.exceptional.to_string()),
            ("match", opt(self.matches().map(|v| v.to_string()))),
        ];
        rows.iter().map(|(k, v)| format!("{k:<16}{v}\n")).collect()
    }
}

/// Checks that `{x}_B ↦ [x]_{A_w}` is a well-defined map from the transition
/// semigroup of `b` onto the syntactic semigroup of `Σ*wΣ*`.
///
/// `b` must synchronize exactly `Σ*wΣ*`; otherwise [`Error::NotPresenter`] is
/// returned. The generator pairs `(t_B(x), t_A(x))` are closed under
/// simultaneous composition, and the check fails as soon as one
/// transformation of `b` meets two different transformations of `A_w`.
pub fn homomorphism_check(b: &Dfa, w: &Word, limits: Limits) -> Result<bool> {
    let minimal = minimal_ideal_dfa(w);
    let syn = syn_acceptor(b, limits.subset_limit)?;
    if let Equivalence::Distinct { witness, .. } = languages_equal(&syn, &minimal)? {
        return Err(Error::NotPresenter(format!(
            "synchronizing words differ from Σ*{w}Σ* on {}",
            letters_to_string(&witness)
        )));
    }
    let generators: Vec<(Transformation, Transformation)> = Letter::ALL
        .iter()
        .map(|&x| (b.letter_transformation(x), minimal.letter_transformation(x)))
        .collect();
    let mut image: HashMap<Transformation, Transformation> = HashMap::new();
    let mut queue = VecDeque::new();
    for (tb, ta) in &generators {
        match image.get(tb) {
            Some(existing) if existing != ta => return Ok(false),
            Some(_) => {}
            None => {
                image.insert(tb.clone(), ta.clone());
                queue.push_back((tb.clone(), ta.clone()));
            }
        }
    }
    while let Some((tb, ta)) = queue.pop_front() {
        for (gb, ga) in &generators {
            let nb = tb.then(gb);
            let na = ta.then(ga);
            match image.get(&nb) {
                Some(existing) if *existing != na => return Ok(false),
                Some(_) => {}
                None => {
                    if image.len() >= limits.closure_limit {
                        return Err(Error::ClosureLimit {
                            limit: limits.closure_limit,
                        });
                    }
                    image.insert(nb.clone(), na.clone());
                    queue.push_back((nb, na));
                }
            }
        }
    }
    Ok(true)
}

fn check_staircase_k(k: usize) -> Result<()> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "staircase words need an even k >= 4, got {k}"
        )));
    }
    Ok(())
}

/// `a b² a³ b⁴ … a^(k-1) b^k`, of length `k(k+1)/2`.
pub fn staircase_word(k: usize) -> Result<Word> {
    check_staircase_k(k)?;
    let letters = (1..=k)
        .flat_map(|i| {
            let x = if i % 2 == 1 { Letter::A } else { Letter::B };
            std::iter::repeat_n(x, i)
        })
        .collect();
    Word::new(letters)
}

/// `3n²/2 + 5n/2 - kn - 3k + 5` with `n = k(k+1)/2`.
pub fn staircase_sigma_formula(k: usize) -> Result<usize> {
    check_staircase_k(k)?;
    let k = k as i128;
    let n = k * (k + 1) / 2;
    // n(3n + 5) is always even
    let value = n * (3 * n + 5) / 2 - k * n - 3 * k + 5;
    Ok(usize::try_from(value).expect("formula is positive for k >= 4"))
}

/// A staircase word padded to an arbitrary length `n >= 10`.
///
/// With `k` the largest even number such that `T(k) = k(k+1)/2 <= n`, this is
/// the staircase word itself when `n = T(k)`, the staircase followed by
/// `a^(n - T(k))` when `n <= T(k+1)`, and otherwise the staircase followed by
/// `a^(k+1) b^(n - T(k+1))`.
pub fn padded_staircase_word(n: usize) -> Result<Word> {
    if n < 10 {
        return Err(Error::Domain(format!(
            "padded staircase words need n >= 10, got {n}"
        )));
    }
    let triangle = |k: usize| k * (k + 1) / 2;
    let mut k = 4;
    while triangle(k + 2) <= n {
        k += 2;
    }
    let mut letters = staircase_word(k)?.into_letters();
    let base = triangle(k);
    if n <= triangle(k + 1) {
        letters.extend(std::iter::repeat_n(Letter::A, n - base));
    } else {
        letters.extend(std::iter::repeat_n(Letter::A, k + 1));
        letters.extend(std::iter::repeat_n(Letter::B, n - triangle(k + 1)));
    }
    Word::new(letters)
}
