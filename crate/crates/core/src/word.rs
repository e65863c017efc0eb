//! Letters and words over the binary alphabet `{a, b}`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the binary alphabet, encoded `a = 0`, `b = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A = 0,
    B = 1,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::A, Letter::B];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(index: usize) -> Letter {
        match index {
            0 => Letter::A,
            1 => Letter::B,
            _ => panic!("letter index {index} outside the binary alphabet"),
        }
    }

    /// The other letter of the alphabet.
    #[inline]
    pub fn complement(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Renders a possibly empty letter sequence, using `ε` for the empty one.
pub fn letters_to_string(letters: &[Letter]) -> String {
    if letters.is_empty() {
        "ε".to_string()
    } else {
        letters.iter().map(|l| l.as_char()).collect()
    }
}

/// A nonempty word over `{a, b}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    /// `letter` repeated `count` times.
    pub fn power(letter: Letter, count: usize) -> Result<Word> {
        Word::new(vec![letter; count])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// 1-based access, `w[i]` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> Letter {
        self.0[i - 1]
    }

    /// The word with `a` and `b` exchanged.
    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|l| l.complement()).collect())
    }

    /// The representative of `{w, swapped(w)}` that starts with `a`.
    pub fn canonical(&self) -> Word {
        if self.0[0] == Letter::B {
            self.swapped()
        } else {
            self.clone()
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// All words of length exactly `n`, in lexicographic order (`a < b`).
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!((1..64).contains(&n), "word length {n} outside 1..64");
        (0u64..(1u64 << n)).map(move |bits| {
            Word(
                (0..n)
                    .map(|i| Letter::from_index(((bits >> (n - 1 - i)) & 1) as usize))
                    .collect(),
            )
        })
    }

    /// All words with length in `1..=max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (1..=max_len).flat_map(Word::all_of_length)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(position, found)| {
                Letter::from_char(found).ok_or(Error::InvalidLetter { position, found })
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}
