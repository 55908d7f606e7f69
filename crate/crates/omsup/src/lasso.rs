//! Ultimately periodic infinite strings represented as a finite stem followed
//! by a cycle repeated forever.

use thiserror::Error;

use crate::alphabet::{Alphabet, EventId};

/// Errors raised while constructing a [`Lasso`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LassoError {
    /// The cycle of a lasso must be non-empty.
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    /// An event name was not declared in the alphabet.
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
}

/// An ultimately periodic string `stem · cycle^ω`.
///
/// Two lassos may denote the same infinite string while differing
/// syntactically; [`Lasso::normalized`] maps every representation of a string
/// to one canonical form, so normalized lassos compare by denotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    stem: Vec<EventId>,
    cycle: Vec<EventId>,
}

impl Lasso {
    /// Builds a lasso; the cycle must be non-empty.
    pub fn new(stem: Vec<EventId>, cycle: Vec<EventId>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyCycle);
        }
        Ok(Lasso { stem, cycle })
    }

    /// Builds a lasso from event names.
    pub fn from_names(
        alphabet: &Alphabet,
        stem: &[&str],
        cycle: &[&str],
    ) -> Result<Self, LassoError> {
        let resolve = |names: &[&str]| -> Result<Vec<EventId>, LassoError> {
            names
                .iter()
                .map(|&n| {
                    alphabet
                        .id(n)
                        .ok_or_else(|| LassoError::UnknownEvent(n.to_string()))
                })
                .collect()
        };
        Lasso::new(resolve(stem)?, resolve(cycle)?)
    }

    /// The finite prefix before the cycle.
    pub fn stem(&self) -> &[EventId] {
        &self.stem
    }

    /// The eventually repeated segment.
    pub fn cycle(&self) -> &[EventId] {
        &self.cycle
    }

    /// The first `n` events of the infinite string.
    pub fn prefix(&self, n: usize) -> Vec<EventId> {
        self.stem
            .iter()
            .copied()
            .chain(self.cycle.iter().copied().cycle())
            .take(n)
            .collect()
    }

    /// Canonical representation of the denoted infinite string: the cycle is
    /// reduced to its primitive root, then stem events equal to the last
    /// cycle event are absorbed into the cycle by rotation. Two lassos denote
    /// the same infinite string exactly when their normalized forms are
    /// equal.
    pub fn normalized(&self) -> Lasso {
        let mut stem = self.stem.clone();
        let mut cycle = primitive_root(&self.cycle);
        while let (Some(&s), Some(&c)) = (stem.last(), cycle.last()) {
            if s != c {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        Lasso { stem, cycle }
    }

    /// Renders the lasso as `stem (cycle)^ω` with event names.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let cycle = alphabet.format_string(&self.cycle);
        if self.stem.is_empty() {
            format!("({cycle})^ω")
        } else {
            format!("{} ({cycle})^ω", alphabet.format_string(&self.stem))
        }
    }
}

/// The shortest word `r` with `word = r^k`; `word` itself when aperiodic.
fn primitive_root(word: &[EventId]) -> Vec<EventId> {
    for period in 1..word.len() {
        if word.len().is_multiple_of(period) && word.iter().zip(&word[period..]).all(|(a, b)| a == b) {
            return word[..period].to_vec();
        }
    }
    word.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn rejects_empty_cycle() {
        assert_eq!(Lasso::new(vec![0], vec![]).unwrap_err(), LassoError::EmptyCycle);
    }

    #[test]
    fn normalization_reduces_cycle_powers() {
        let l = Lasso::new(vec![], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(l.normalized(), Lasso::new(vec![], vec![0, 1]).unwrap());
    }

    #[test]
    fn normalization_peels_stem_into_cycle() {
        // a (b a)^ω denotes the same string as (a b)^ω.
        let l = Lasso::new(vec![0], vec![1, 0]).unwrap();
        assert_eq!(l.normalized(), Lasso::new(vec![], vec![0, 1]).unwrap());
    }

    #[test]
    fn normalization_identifies_equal_denotations() {
        // a b (a b)^ω vs (a b)^ω vs a (b a)^ω: all the same infinite string.
        let forms = [
            Lasso::new(vec![0, 1], vec![0, 1]).unwrap(),
            Lasso::new(vec![], vec![0, 1, 0, 1]).unwrap(),
            Lasso::new(vec![0], vec![1, 0]).unwrap(),
        ];
        let canon = forms[0].normalized();
        for f in &forms {
            assert_eq!(f.normalized(), canon);
        }
        // A genuinely different string normalizes differently.
        let other = Lasso::new(vec![1], vec![0, 1]).unwrap();
        assert_ne!(other.normalized(), canon);
    }

    #[test]
    fn prefix_unrolls_the_cycle() {
        let l = Lasso::new(vec![2], vec![0, 1]).unwrap();
        assert_eq!(l.prefix(5), vec![2, 0, 1, 0, 1]);
    }

    #[test]
    fn display_uses_event_names() {
        let ab = Alphabet::split(&["c1", "c3"], &["u1"]).unwrap();
        let l = Lasso::from_names(&ab, &["c1"], &["u1", "c3"]).unwrap();
        assert_eq!(l.display(&ab), "c1 (u1 c3)^ω");
        let no_stem = Lasso::from_names(&ab, &[], &["c1"]).unwrap();
        assert_eq!(no_stem.display(&ab), "(c1)^ω");
    }
}
