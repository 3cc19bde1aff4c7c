//! Plot-script data model and the line-oriented DSL front end.
//!
//! Grammar (one declaration line, then one action per line):
//!
//! ```text
//! characters: A=<name>, B=<name>
//! [but|then|so] <CharId> <action_id> <CharId>
//! ```
//!
//! `#` starts a comment; blank lines are skipped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kb::{ActionKB, EngineConfig, Role};
use crate::valence::{classify_connective, role_valence, Connective, ValenceState};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub id: String,
    pub display_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotAction {
    pub index: usize,
    pub action_id: String,
    /// Character id filling the agent role.
    pub agent: String,
    /// Character id filling the patient role.
    pub patient: String,
    pub connective_in: Option<Connective>,
    /// 1-based source line, for diagnostics.
    pub line: usize,
}

impl PlotAction {
    pub fn character(&self, role: Role) -> &str {
        match role {
            Role::Agent => &self.agent,
            Role::Patient => &self.patient,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    pub characters: Vec<Character>,
    pub actions: Vec<PlotAction>,
}

impl Script {
    pub fn character(&self, id: &str) -> Option<&Character> {
        self.characters.iter().find(|c| c.id == id)
    }

    /// Renders the script back into DSL source. Reparsing the result yields
    /// a structurally equal script.
    pub fn to_source(&self) -> String {
        let mut out = String::from("characters: ");
        let decls: Vec<String> = self
            .characters
            .iter()
            .map(|c| format!("{}={}", c.id, c.display_name))
            .collect();
        out.push_str(&decls.join(", "));
        out.push('\n');
        for action in &self.actions {
            if let Some(conn) = action.connective_in {
                out.push_str(conn.keyword());
                out.push(' ');
            }
            out.push_str(&format!(
                "{} {} {}\n",
                action.agent, action.action_id, action.patient
            ));
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

/// A validation finding; parse failures are [`ParseError`]s instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub message: String,
}

fn is_char_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_action_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || "._-".contains(c))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Column (1-based) of a token within the original line.
fn column_of(line: &str, token: &str) -> usize {
    line.find(token).map(|p| p + 1).unwrap_or(1)
}

fn parse_header(line: &str, line_no: usize) -> Result<Vec<Character>, ParseError> {
    let rest = line
        .strip_prefix("characters:")
        .ok_or_else(|| ParseError::new(line_no, 1, "expected `characters:` header line"))?;
    let mut characters: Vec<Character> = Vec::new();
    for decl in rest.split(',') {
        let decl = decl.trim();
        if decl.is_empty() {
            return Err(ParseError::new(
                line_no,
                column_of(line, rest.trim()),
                "empty character declaration; expected `<Id>=<name>`",
            ));
        }
        let (id, name) = decl.split_once('=').ok_or_else(|| {
            ParseError::new(
                line_no,
                column_of(line, decl),
                format!("expected `<Id>=<name>` in character declaration, got `{decl}`"),
            )
        })?;
        let (id, name) = (id.trim(), name.trim());
        if !is_char_id(id) || matches!(id, "but" | "then" | "so") {
            return Err(ParseError::new(
                line_no,
                column_of(line, decl),
                format!("invalid character id `{id}`"),
            ));
        }
        if name.is_empty() {
            return Err(ParseError::new(
                line_no,
                column_of(line, decl),
                format!("character `{id}` has an empty display name"),
            ));
        }
        if characters.iter().any(|c| c.id == id) {
            return Err(ParseError::new(
                line_no,
                column_of(line, decl),
                format!("duplicate character id `{id}`"),
            ));
        }
        characters.push(Character {
            id: id.to_string(),
            display_name: name.to_string(),
        });
    }
    if characters.len() != 2 {
        return Err(ParseError::new(
            line_no,
            1,
            format!(
                "scripts take exactly two focal characters, found {}",
                characters.len()
            ),
        ));
    }
    Ok(characters)
}

/// Parses DSL source into a validated [`Script`].
pub fn parse_script(source: &str) -> Result<Script, ParseError> {
    let mut characters: Option<Vec<Character>> = None;
    let mut actions: Vec<PlotAction> = Vec::new();

    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw_line);
        if line.trim().is_empty() {
            continue;
        }
        let Some(declared) = &characters else {
            characters = Some(parse_header(line.trim(), line_no)?);
            continue;
        };

        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        let connective_in = match tokens.first() {
            Some(&"but") => Some(Connective::But),
            Some(&"then") => Some(Connective::Then),
            Some(&"so") => Some(Connective::So),
            _ => None,
        };
        if connective_in.is_some() {
            tokens.remove(0);
        }
        if tokens.len() != 3 {
            return Err(ParseError::new(
                line_no,
                column_of(raw_line, tokens.first().copied().unwrap_or("")),
                "expected `[but|then|so] <CharId> <action_id> <CharId>`",
            ));
        }
        let (agent, action_id, patient) = (tokens[0], tokens[1], tokens[2]);
        for id in [agent, patient] {
            if !is_char_id(id) {
                return Err(ParseError::new(
                    line_no,
                    column_of(raw_line, id),
                    format!("invalid character id `{id}`"),
                ));
            }
            if !declared.iter().any(|c| c.id == id) {
                return Err(ParseError::new(
                    line_no,
                    column_of(raw_line, id),
                    format!("undeclared character `{id}`"),
                ));
            }
        }
        if !is_action_id(action_id) {
            return Err(ParseError::new(
                line_no,
                column_of(raw_line, action_id),
                format!("invalid action name `{action_id}`"),
            ));
        }
        if agent == patient {
            return Err(ParseError::new(
                line_no,
                column_of(raw_line, patient),
                format!("agent and patient must differ, both are `{agent}`"),
            ));
        }
        actions.push(PlotAction {
            index: actions.len(),
            action_id: action_id.to_string(),
            agent: agent.to_string(),
            patient: patient.to_string(),
            connective_in,
            line: line_no,
        });
    }

    let characters =
        characters.ok_or_else(|| ParseError::new(1, 1, "expected `characters:` header line"))?;
    if actions.is_empty() {
        return Err(ParseError::new(
            source.lines().count().max(1),
            1,
            "script declares no actions",
        ));
    }
    Ok(Script {
        characters,
        actions,
    })
}

/// Checks a parsed script against the knowledge base.
///
/// Unresolvable actions are errors; written connectives that disagree with
/// the valence-derived classification are warnings.
pub fn validate_script(script: &Script, kb: &ActionKB) -> Vec<Diagnostic> {
    let cfg = EngineConfig::default();
    let mut diagnostics = Vec::new();
    let mut states: Vec<(String, ValenceState)> = script
        .characters
        .iter()
        .map(|c| (c.id.clone(), ValenceState::new(c.id.clone())))
        .collect();

    for action in &script.actions {
        let Some(entry) = kb.get(&action.action_id) else {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                line: action.line,
                message: format!("unknown action `{}`", action.action_id),
            });
            continue;
        };
        // Track the agent's context to second-guess written connectives.
        for role in [Role::Agent, Role::Patient] {
            let character = action.character(role);
            let valence = role_valence(entry, role);
            let state = states
                .iter_mut()
                .find(|(id, _)| id == character)
                .map(|(_, s)| s)
                .expect("parse guarantees declared characters");
            let prev = state.context;
            state
                .update(valence, cfg.decay_weight)
                .expect("default decay weight is valid");
            if role == Role::Agent {
                if let Some(written) = action.connective_in {
                    let delta = state.history.last().map(|h| h.delta).unwrap_or(0.0);
                    let classified = classify_connective(prev, valence, delta, &cfg);
                    if written != classified {
                        diagnostics.push(Diagnostic {
                            severity: Severity::Warning,
                            line: action.line,
                            message: format!(
                                "connective `{}` disagrees with the emotional transition \
                                 (classified `{}`)",
                                written.keyword(),
                                classified.keyword()
                            ),
                        });
                    }
                }
            }
        }
    }
    diagnostics
}
