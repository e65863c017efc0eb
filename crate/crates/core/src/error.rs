use thiserror::Error;

/// Errors produced by the automaton toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word: the generator of a principal ideal must be nonempty")]
    EmptyWord,

    #[error("invalid letter {found:?} at position {position}: words are over {{a, b}}")]
    InvalidLetter { position: usize, found: char },

    #[error("state {state} out of range for automaton with {state_count} states")]
    StateOutOfRange { state: usize, state_count: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("acceptor is missing its {0}")]
    MissingDecoration(&'static str),

    #[error("subset construction exceeded the limit of {limit} states (raise --subset-limit)")]
    SubsetLimit { limit: usize },

    #[error("semigroup closure exceeded the limit of {limit} elements (raise --closure-limit)")]
    ClosureLimit { limit: usize },

    #[error(
        "refusing to enumerate {states}-state automata ({candidates} candidates); \
         the configured maximum is {max_states} states"
    )]
    SearchRefused {
        states: usize,
        candidates: u128,
        max_states: usize,
    },

    #[error("not a synchronizing presenter of this ideal: {0}")]
    NotPresenter(String),

    #[error("construction invariant violated at step {step}: {detail}\n{trace}")]
    Construction {
        step: usize,
        detail: String,
        trace: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
