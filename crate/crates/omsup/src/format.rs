//! Reading and writing the textual automaton document format.
//!
//! A document is line-oriented. `#` starts a comment when it opens the
//! line or follows whitespace, blank lines are skipped, and every other
//! line is one directive:
//!
//! ```text
//! name robot-plant          # optional
//! role plant                # optional: plant | star | omega | supervisor
//! controllable c1 c2        # may be empty; declared first, lower ids
//! uncontrollable u1
//! states 3
//! initial 0                 # required when states >= 1
//! marker 0 2                # ids or `all`; omitted = empty
//! buchi all                 # ids or `all`; omitted = empty
//! trans 0 c1 1
//! trans 1 u1 2
//! label 0 idle              # optional override, default is the index
//! ```
//!
//! Directives may appear in any order. Parsing validates everything —
//! duplicate directives, undeclared events, out-of-range states,
//! nondeterministic transitions, a missing initial state — and reports
//! each problem with the line it sits on. The serializer writes the
//! canonical form: fixed directive order, transitions sorted by source
//! state and event id, labels only where they differ from the default.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::automaton::{Automaton, StateId};

/// A problem in a document, positioned on the 1-based line that carries it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

/// What a document's automaton is meant to be used as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// The open system under control; must sustain every run it generates,
    /// so its Büchi set has to cover all states.
    Plant,
    /// A bound on finite strings; only markers matter.
    Star,
    /// A bound on infinite behaviors; only the Büchi set matters.
    Omega,
    /// A synthesized controller; carries both views.
    Supervisor,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Plant => "plant",
            Role::Star => "star",
            Role::Omega => "omega",
            Role::Supervisor => "supervisor",
        }
    }

    pub fn parse(token: &str) -> Option<Role> {
        match token {
            "plant" => Some(Role::Plant),
            "star" => Some(Role::Star),
            "omega" => Some(Role::Omega),
            "supervisor" => Some(Role::Supervisor),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An automaton together with its declared role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonDocument {
    pub automaton: Automaton,
    pub role: Option<Role>,
}

impl AutomatonDocument {
    pub fn new(automaton: Automaton, role: Option<Role>) -> Self {
        AutomatonDocument { automaton, role }
    }
}

/// Cuts the comment off a line: a `#` that opens the line or follows
/// whitespace starts a comment, so labels may still contain embedded `#`.
fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return &line[..i];
        }
    }
    line
}

/// A marker/Büchi directive before the state count is known.
enum StateSet {
    All,
    Listed(Vec<StateId>),
}

fn parse_state_id(token: &str, line: usize) -> Result<StateId, FormatError> {
    token
        .parse::<StateId>()
        .map_err(|_| FormatError::new(line, format!("expected a state id, got `{token}`")))
}

fn parse_state_set(keyword: &str, tokens: &[&str], line: usize) -> Result<StateSet, FormatError> {
    if tokens == ["all"] {
        return Ok(StateSet::All);
    }
    let mut seen = BTreeSet::new();
    let mut listed = Vec::new();
    for token in tokens {
        let state = parse_state_id(token, line)?;
        if !seen.insert(state) {
            return Err(FormatError::new(
                line,
                format!("duplicate state {state} in `{keyword}` set"),
            ));
        }
        listed.push(state);
    }
    Ok(StateSet::Listed(listed))
}

fn resolve_state_set(
    set: Option<(usize, StateSet)>,
    num_states: usize,
) -> Result<BTreeSet<StateId>, FormatError> {
    match set {
        None => Ok(BTreeSet::new()),
        Some((_, StateSet::All)) => Ok((0..num_states).collect()),
        Some((line, StateSet::Listed(listed))) => listed
            .into_iter()
            .map(|state| {
                if state < num_states {
                    Ok(state)
                } else {
                    Err(FormatError::new(
                        line,
                        format!("state {state} out of range (the automaton has {num_states} states)"),
                    ))
                }
            })
            .collect(),
    }
}

/// Parses a document, reporting the first problem with its line number.
pub fn parse_document(text: &str) -> Result<AutomatonDocument, FormatError> {
    let mut name: Option<(usize, String)> = None;
    let mut role: Option<(usize, Role)> = None;
    let mut controllable: Option<(usize, Vec<String>)> = None;
    let mut uncontrollable: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, usize)> = None;
    let mut initial: Option<(usize, StateId)> = None;
    let mut marker: Option<(usize, StateSet)> = None;
    let mut buchi: Option<(usize, StateSet)> = None;
    let mut transitions: Vec<(usize, StateId, String, StateId)> = Vec::new();
    let mut labels: Vec<(usize, StateId, String)> = Vec::new();
    let mut last_line = 0;

    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = strip_comment(raw_line).trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let directive = tokens[0];
        let args = &tokens[1..];
        let reject_duplicate = |present: bool| -> Result<(), FormatError> {
            if present {
                Err(FormatError::new(
                    line,
                    format!("duplicate `{directive}` directive"),
                ))
            } else {
                Ok(())
            }
        };
        match directive {
            "name" => {
                reject_duplicate(name.is_some())?;
                let value = content["name".len()..].trim();
                if value.is_empty() {
                    return Err(FormatError::new(line, "directive `name` needs a value"));
                }
                name = Some((line, value.to_string()));
            }
            "role" => {
                reject_duplicate(role.is_some())?;
                let [token] = args else {
                    return Err(FormatError::new(
                        line,
                        "directive `role` takes exactly one of: plant, star, omega, supervisor",
                    ));
                };
                let parsed = Role::parse(token).ok_or_else(|| {
                    FormatError::new(
                        line,
                        format!("unknown role `{token}` (expected plant, star, omega, or supervisor)"),
                    )
                })?;
                role = Some((line, parsed));
            }
            "controllable" => {
                reject_duplicate(controllable.is_some())?;
                controllable = Some((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "uncontrollable" => {
                reject_duplicate(uncontrollable.is_some())?;
                uncontrollable = Some((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "states" => {
                reject_duplicate(states.is_some())?;
                let [token] = args else {
                    return Err(FormatError::new(line, "directive `states` takes one count"));
                };
                let count = token.parse::<usize>().map_err(|_| {
                    FormatError::new(line, format!("expected a state count, got `{token}`"))
                })?;
                states = Some((line, count));
            }
            "initial" => {
                reject_duplicate(initial.is_some())?;
                let [token] = args else {
                    return Err(FormatError::new(line, "directive `initial` takes one state id"));
                };
                initial = Some((line, parse_state_id(token, line)?));
            }
            "marker" => {
                reject_duplicate(marker.is_some())?;
                marker = Some((line, parse_state_set("marker", args, line)?));
            }
            "buchi" => {
                reject_duplicate(buchi.is_some())?;
                buchi = Some((line, parse_state_set("buchi", args, line)?));
            }
            "trans" => {
                let [from, event, to] = args else {
                    return Err(FormatError::new(
                        line,
                        "directive `trans` takes FROM EVENT TO",
                    ));
                };
                transitions.push((
                    line,
                    parse_state_id(from, line)?,
                    event.to_string(),
                    parse_state_id(to, line)?,
                ));
            }
            "label" => {
                if args.is_empty() {
                    return Err(FormatError::new(line, "directive `label` takes ID TEXT"));
                }
                let state = parse_state_id(args[0], line)?;
                let text_start = content.find(args[0]).expect("token comes from content")
                    + args[0].len();
                let text = content[text_start..].trim();
                if text.is_empty() {
                    return Err(FormatError::new(line, "directive `label` takes ID TEXT"));
                }
                labels.push((line, state, text.to_string()));
            }
            other => {
                return Err(FormatError::new(
                    line,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let eof = last_line.max(1);

    // The alphabet: controllable events first, then uncontrollable, so the
    // ids match the declaration order in the document.
    let ctrl_names = controllable.map(|(_, names)| names).unwrap_or_default();
    let (unc_line, unc_names) = match uncontrollable {
        Some((line, names)) => (line, names),
        None => (eof, Vec::new()),
    };
    let mut seen_events = BTreeSet::new();
    for name in &ctrl_names {
        if !seen_events.insert(name.clone()) {
            return Err(FormatError::new(
                eof,
                format!("event `{name}` declared twice"),
            ));
        }
    }
    for name in &unc_names {
        if !seen_events.insert(name.clone()) {
            return Err(FormatError::new(
                unc_line,
                format!("event `{name}` declared twice"),
            ));
        }
    }
    let (states_line, num_states) = states.ok_or_else(|| {
        FormatError::new(eof, "missing `states` directive")
    })?;
    let alphabet = Alphabet::new(
        ctrl_names
            .iter()
            .map(|n| (n.as_str(), true))
            .chain(unc_names.iter().map(|n| (n.as_str(), false))),
    )
    .map_err(|err| FormatError::new(states_line, err.to_string()))?;

    // Assemble and validate the automaton.
    let automaton = if num_states == 0 {
        if let Some((line, _)) = initial {
            return Err(FormatError::new(
                line,
                "`initial` given for an automaton with 0 states",
            ));
        }
        if let Some(&(line, _, _, _)) = transitions.first() {
            return Err(FormatError::new(
                line,
                "`trans` given for an automaton with 0 states",
            ));
        }
        if let Some(&(line, _, _)) = labels.first() {
            return Err(FormatError::new(
                line,
                "`label` given for an automaton with 0 states",
            ));
        }
        resolve_state_set(marker, 0)?;
        resolve_state_set(buchi, 0)?;
        Automaton::empty(alphabet)
    } else {
        let (initial_line, initial_state) = initial.ok_or_else(|| {
            FormatError::new(
                states_line,
                "missing `initial` directive (required when states >= 1)",
            )
        })?;
        if initial_state >= num_states {
            return Err(FormatError::new(
                initial_line,
                format!(
                    "initial state {initial_state} out of range (the automaton has {num_states} states)"
                ),
            ));
        }
        let marker = resolve_state_set(marker, num_states)?;
        let buchi = resolve_state_set(buchi, num_states)?;
        let mut resolved: Vec<(StateId, crate::alphabet::EventId, StateId)> = Vec::new();
        let mut defined: BTreeMap<(StateId, crate::alphabet::EventId), usize> = BTreeMap::new();
        for (line, from, event_name, to) in &transitions {
            for (&endpoint, which) in [(from, "source"), (to, "target")] {
                if endpoint >= num_states {
                    return Err(FormatError::new(
                        *line,
                        format!(
                            "{which} state {endpoint} out of range (the automaton has {num_states} states)"
                        ),
                    ));
                }
            }
            let event = alphabet.id(event_name).ok_or_else(|| {
                FormatError::new(*line, format!("undeclared event `{event_name}`"))
            })?;
            if let Some(first) = defined.insert((*from, event), *line) {
                return Err(FormatError::new(
                    *line,
                    format!(
                        "duplicate transition from state {from} on event `{event_name}` (first declared on line {first})"
                    ),
                ));
            }
            resolved.push((*from, event, *to));
        }
        let automaton = Automaton::new(
            Arc::clone(&alphabet),
            num_states,
            initial_state,
            resolved,
            marker,
            buchi,
        )
        .map_err(|err| FormatError::new(states_line, err.to_string()))?;
        let mut label_vec: Vec<String> = (0..num_states).map(|q| q.to_string()).collect();
        let mut labeled = BTreeSet::new();
        for (line, state, text) in labels {
            if state >= num_states {
                return Err(FormatError::new(
                    line,
                    format!("state {state} out of range (the automaton has {num_states} states)"),
                ));
            }
            if !labeled.insert(state) {
                return Err(FormatError::new(
                    line,
                    format!("state {state} labeled twice"),
                ));
            }
            label_vec[state] = text;
        }
        automaton.with_labels(label_vec)
    };

    let automaton = match name {
        Some((_, value)) => automaton.with_name(value),
        None => automaton,
    };
    if let Some((line, Role::Plant)) = role {
        if !automaton.has_full_buchi() {
            return Err(FormatError::new(
                line,
                "role `plant` requires the Büchi set to cover every state (use `buchi all`)",
            ));
        }
    }
    Ok(AutomatonDocument {
        automaton,
        role: role.map(|(_, r)| r),
    })
}

/// Writes the canonical form of a document. Parsing it back yields an
/// equal document, and serializing that parse reproduces the bytes.
pub fn serialize_document(doc: &AutomatonDocument) -> String {
    let a = &doc.automaton;
    let alphabet = a.alphabet();
    let n = a.num_states();
    let mut out = String::new();
    if let Some(name) = a.name() {
        writeln!(out, "name {name}").unwrap();
    }
    if let Some(role) = doc.role {
        writeln!(out, "role {role}").unwrap();
    }
    let mut line = String::from("controllable");
    for event in alphabet.controllable_events() {
        write!(line, " {}", alphabet.name(event)).unwrap();
    }
    out.push_str(&line);
    out.push('\n');
    let mut line = String::from("uncontrollable");
    for event in alphabet.uncontrollable_events() {
        write!(line, " {}", alphabet.name(event)).unwrap();
    }
    out.push_str(&line);
    out.push('\n');
    writeln!(out, "states {n}").unwrap();
    if let Some(initial) = a.initial() {
        writeln!(out, "initial {initial}").unwrap();
    }
    for (keyword, set) in [("marker", a.marker()), ("buchi", a.buchi())] {
        if set.is_empty() {
            continue;
        }
        if set.len() == n {
            writeln!(out, "{keyword} all").unwrap();
        } else {
            let ids: Vec<String> = set.iter().map(|q| q.to_string()).collect();
            writeln!(out, "{keyword} {}", ids.join(" ")).unwrap();
        }
    }
    for from in 0..n {
        for (event, to) in a.transitions_from(from) {
            writeln!(out, "trans {from} {} {to}", alphabet.name(event)).unwrap();
        }
    }
    for state in 0..n {
        let label = a.label(state);
        if label != state.to_string() {
            writeln!(out, "label {state} {label}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn round_trip(doc: &AutomatonDocument) {
        let text = serialize_document(doc);
        let parsed = parse_document(&text).expect("canonical form parses");
        assert_eq!(&parsed, doc);
        assert_eq!(serialize_document(&parsed), text, "canonical form is a fixpoint");
    }

    #[test]
    fn every_fixture_survives_the_round_trip() {
        round_trip(&AutomatonDocument::new(fixtures::robot_plant(), Some(Role::Plant)));
        round_trip(&AutomatonDocument::new(fixtures::robot_safety_spec(), Some(Role::Star)));
        round_trip(&AutomatonDocument::new(fixtures::robot_liveness_spec(), Some(Role::Omega)));
        round_trip(&AutomatonDocument::new(fixtures::robot_min_accept(), None));
        round_trip(&AutomatonDocument::new(fixtures::unsolvable_plant(), Some(Role::Plant)));
        round_trip(&AutomatonDocument::new(fixtures::unsolvable_safety_spec(), Some(Role::Star)));
        round_trip(&AutomatonDocument::new(
            fixtures::unsolvable_liveness_spec(),
            Some(Role::Omega),
        ));
    }

    #[test]
    fn comments_blank_lines_and_directive_order_are_free() {
        let text = "\
# a tiny machine
states 2

buchi all
initial 0      # start here
uncontrollable u
trans 1 u 0
controllable c
trans 0 c 1    # forward
label 1 busy station   # labels may hold spaces and a#b style text
marker 0
";
        let doc = parse_document(text).unwrap();
        let a = &doc.automaton;
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.label(1), "busy station");
        assert!(a.has_full_buchi());
        assert_eq!(a.marker().len(), 1);
        let c = a.alphabet().id("c").unwrap();
        assert!(a.alphabet().is_controllable(c));
        assert_eq!(a.successor(0, c), Some(1));
        round_trip(&doc);
    }

    #[test]
    fn labels_keep_embedded_hash_signs() {
        let text = "controllable c\nuncontrollable\nstates 1\ninitial 0\nlabel 0 cell#3\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.automaton.label(0), "cell#3");
        round_trip(&doc);
    }

    #[test]
    fn the_empty_automaton_has_a_document_form() {
        let text = "controllable c\nuncontrollable\nstates 0\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.automaton.num_states(), 0);
        assert_eq!(doc.automaton.initial(), None);
        round_trip(&doc);
    }

    #[test]
    fn duplicate_transitions_are_rejected_with_both_lines() {
        let text = "\
controllable c
uncontrollable u
states 2
initial 0
trans 0 c 1
trans 0 c 0
";
        let err = parse_document(text).unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.message.contains("duplicate transition"));
        assert!(err.message.contains("line 5"), "{}", err.message);
    }

    #[test]
    fn undeclared_events_and_states_are_positioned() {
        let base = "controllable c\nuncontrollable u\nstates 2\ninitial 0\n";
        let err = parse_document(&format!("{base}trans 0 x 1\n")).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("undeclared event `x`"));

        let err = parse_document(&format!("{base}trans 0 c 7\n")).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("state 7 out of range"));

        let err = parse_document(&format!("{base}marker 5\n")).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("state 5 out of range"));

        let err = parse_document("controllable c\nuncontrollable\nstates 1\ninitial 4\n")
            .unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("initial state 4 out of range"));
    }

    #[test]
    fn a_missing_initial_state_points_at_the_state_count() {
        let err = parse_document("controllable c\nuncontrollable\nstates 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("missing `initial`"));
    }

    #[test]
    fn junk_directives_duplicates_and_bad_roles_are_rejected() {
        let err = parse_document("flavor vanilla\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("unknown directive `flavor`"));

        let err = parse_document("states 1\nstates 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("duplicate `states`"));

        let err = parse_document("role queen\n").unwrap_err();
        assert!(err.message.contains("unknown role `queen`"));

        let err =
            parse_document("controllable c\nuncontrollable c\nstates 1\ninitial 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("declared twice"));
    }

    #[test]
    fn the_plant_role_demands_a_full_acceptance_set() {
        let text = "role plant\ncontrollable c\nuncontrollable\nstates 1\ninitial 0\n";
        let err = parse_document(text).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("role `plant`"));
        let ok = parse_document(&format!("{}buchi all\n", text.replace("role plant\n", "")));
        assert!(ok.is_ok());
    }

    #[test]
    fn malformed_numbers_never_panic() {
        for text in [
            "states x\n",
            "controllable c\nuncontrollable\nstates 1\ninitial zero\n",
            "controllable c\nuncontrollable\nstates 1\ninitial 0\ntrans a c 0\n",
            "controllable c\nuncontrollable\nstates 1\ninitial 0\nmarker one\n",
            "controllable c\nuncontrollable\nstates 1\ninitial 0\ntrans 0 c\n",
            "name\n",
            "label 0 x\nstates 0\ncontrollable c\nuncontrollable\n",
            "",
        ] {
            let result = parse_document(text);
            assert!(result.is_err(), "expected a positioned error for {text:?}");
        }
    }
}
