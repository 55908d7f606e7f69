//! Event alphabets partitioned into controllable and uncontrollable events,
//! and the control patterns a supervisor may issue over them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

/// Index of an event within its [`Alphabet`], in declaration order.
pub type EventId = usize;

/// Errors raised while constructing an [`Alphabet`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    /// An alphabet must declare at least one event.
    #[error("alphabet must declare at least one event")]
    Empty,
    /// Every event name must be unique across both partitions.
    #[error("duplicate event `{0}`")]
    DuplicateEvent(String),
}

/// A finite event set partitioned into controllable events (which a
/// supervisor may disable) and uncontrollable events (which it may not).
///
/// Events are identified by their declaration index ([`EventId`]); all
/// iteration across the toolkit follows this order, which keeps every
/// operation deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    controllable: Vec<bool>,
    index: BTreeMap<String, EventId>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, controllable)` pairs in declaration
    /// order.
    pub fn new<I, S>(events: I) -> Result<Arc<Self>, AlphabetError>
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut controllable = Vec::new();
        let mut index = BTreeMap::new();
        for (name, ctrl) in events {
            let name = name.into();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(AlphabetError::DuplicateEvent(name));
            }
            names.push(name);
            controllable.push(ctrl);
        }
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Arc::new(Alphabet {
            names,
            controllable,
            index,
        }))
    }

    /// Convenience constructor from name lists; the controllable block is
    /// declared first, so its events receive the lower ids.
    pub fn split(controllable: &[&str], uncontrollable: &[&str]) -> Result<Arc<Self>, AlphabetError> {
        Alphabet::new(
            controllable
                .iter()
                .map(|&n| (n, true))
                .chain(uncontrollable.iter().map(|&n| (n, false))),
        )
    }

    /// Number of events.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: construction rejects empty alphabets.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Looks up an event id by name.
    pub fn id(&self, name: &str) -> Option<EventId> {
        self.index.get(name).copied()
    }

    /// The name of an event.
    ///
    /// Panics when `event` is out of range.
    pub fn name(&self, event: EventId) -> &str {
        &self.names[event]
    }

    /// Whether an event may be disabled by a supervisor.
    ///
    /// Panics when `event` is out of range.
    pub fn is_controllable(&self, event: EventId) -> bool {
        self.controllable[event]
    }

    /// All event ids in declaration order.
    pub fn events(&self) -> std::ops::Range<EventId> {
        0..self.names.len()
    }

    /// Controllable event ids in declaration order.
    pub fn controllable_events(&self) -> impl Iterator<Item = EventId> + '_ {
        self.events().filter(|&e| self.controllable[e])
    }

    /// Uncontrollable event ids in declaration order.
    pub fn uncontrollable_events(&self) -> impl Iterator<Item = EventId> + '_ {
        self.events().filter(|&e| !self.controllable[e])
    }

    /// Formats an event string as space-separated names, `ε` when empty.
    pub fn format_string(&self, string: &[EventId]) -> String {
        if string.is_empty() {
            return "ε".to_string();
        }
        string
            .iter()
            .map(|&e| self.name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A set of events a supervisor enables after some history; always contains
/// every uncontrollable event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPattern {
    enabled: BTreeSet<EventId>,
}

impl ControlPattern {
    /// Builds a pattern enabling the given controllable events on top of the
    /// always-enabled uncontrollable ones. Uncontrollable ids in the input
    /// are accepted and ignored (they are enabled regardless).
    pub fn new(alphabet: &Alphabet, enabled_controllable: impl IntoIterator<Item = EventId>) -> Self {
        let mut enabled: BTreeSet<EventId> = alphabet.uncontrollable_events().collect();
        enabled.extend(
            enabled_controllable
                .into_iter()
                .filter(|&e| alphabet.is_controllable(e)),
        );
        ControlPattern { enabled }
    }

    /// Whether the pattern enables `event`.
    pub fn enables(&self, event: EventId) -> bool {
        self.enabled.contains(&event)
    }

    /// Enabled events in id order.
    pub fn enabled(&self) -> impl Iterator<Item = EventId> + '_ {
        self.enabled.iter().copied()
    }
}
