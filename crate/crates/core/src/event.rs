//! Events, terminal signals and transition labels.

use std::fmt;
use std::sync::Arc;

use crate::expr::IntExpr;

/// A (possibly compound) event name such as `a`, `a.b` or `restock.1.4`.
///
/// Atom parts always precede integer data components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventName {
    pub parts: Arc<[String]>,
    pub data: Vec<i64>,
}

/// One component of a flattened event name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component<'a> {
    Atom(&'a str),
    Int(i64),
}

impl EventName {
    /// Single-atom name. Panics on an empty atom.
    pub fn atom(name: &str) -> Self {
        assert!(is_valid_atom(name), "invalid event atom {name:?}");
        EventName {
            parts: vec![name.to_string()].into(),
            data: Vec::new(),
        }
    }

    pub fn new(parts: Vec<String>, data: Vec<i64>) -> Self {
        assert!(!parts.is_empty(), "event names need at least one atom");
        assert!(parts.iter().all(|p| is_valid_atom(p)), "invalid atom in {parts:?}");
        EventName { parts: parts.into(), data }
    }

    /// Parses the dotted display form, e.g. `restock.1.4`. Numeric parts
    /// become data components.
    pub fn parse(text: &str) -> Option<Self> {
        let mut parts = Vec::new();
        let mut data = Vec::new();
        for piece in text.split('.') {
            if let Ok(v) = piece.parse::<i64>() {
                data.push(v);
            } else if data.is_empty() && is_valid_atom(piece) {
                parts.push(piece.to_string());
            } else {
                return None;
            }
        }
        if parts.is_empty() {
            return None;
        }
        Some(EventName { parts: parts.into(), data })
    }

    pub fn with_data(&self, data: Vec<i64>) -> Self {
        let mut out = self.clone();
        out.data.extend(data);
        out
    }

    pub fn components(&self) -> impl Iterator<Item = Component<'_>> {
        self.parts
            .iter()
            .map(|p| Component::Atom(p.as_str()))
            .chain(self.data.iter().map(|&v| Component::Int(v)))
    }

    pub fn len(&self) -> usize {
        self.parts.len() + self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when `self` is a component-wise prefix of `other` (channel-set
    /// membership: `c` covers `c.1.2`).
    pub fn covers(&self, other: &EventName) -> bool {
        self.len() <= other.len() && self.components().zip(other.components()).all(|(a, b)| a == b)
    }

    /// Replaces the prefix `from` of `self` by `to`. Caller checks `from.covers(self)`.
    pub fn replace_prefix(&self, from: &EventName, to: &EventName) -> EventName {
        let mut parts = to.parts.to_vec();
        let mut data = to.data.clone();
        for c in self.components().skip(from.len()) {
            match c {
                Component::Atom(a) => parts.push(a.to_string()),
                Component::Int(v) => data.push(v),
            }
        }
        EventName { parts: parts.into(), data }
    }
}

pub(crate) fn is_valid_atom(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for EventName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.join("."))?;
        for d in &self.data {
            if *d < 0 {
                write!(f, ".({d})")?;
            } else {
                write!(f, ".{d}")?;
            }
        }
        Ok(())
    }
}

/// The three terminal signals. Declaration order is the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminalEvent {
    /// `!` internal fault
    Fault,
    /// `?` yield to an external interrupt
    Yield,
    /// `✓` successful termination
    Done,
}

impl TerminalEvent {
    pub const ALL: [TerminalEvent; 3] = [TerminalEvent::Fault, TerminalEvent::Yield, TerminalEvent::Done];

    pub fn symbol(self) -> &'static str {
        match self {
            TerminalEvent::Fault => "!",
            TerminalEvent::Yield => "?",
            TerminalEvent::Done => "✓",
        }
    }
}

impl fmt::Display for TerminalEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Composition of the terminal events of two branches finishing together:
/// fault dominates yield, which dominates success.
pub fn compose_terminal(w: TerminalEvent, w2: TerminalEvent) -> TerminalEvent {
    use TerminalEvent::*;
    match (w, w2) {
        (Fault, _) | (_, Fault) => Fault,
        (Yield, _) | (_, Yield) => Yield,
        (Done, Done) => Done,
    }
}

/// What a transition emits. The derived order is the successor order:
/// observable events (lexicographic) before `τ` before terminals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Observable(EventName),
    Tau,
    Terminal(TerminalEvent),
}

impl Label {
    pub fn event(name: &str) -> Label {
        Label::Observable(EventName::parse(name).expect("valid event name"))
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Label::Terminal(_))
    }

    pub fn terminal(&self) -> Option<TerminalEvent> {
        match self {
            Label::Terminal(w) => Some(*w),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Observable(e) => write!(f, "{e}"),
            Label::Tau => f.write_str("τ"),
            Label::Terminal(w) => write!(f, "{w}"),
        }
    }
}

/// A data field attached to an event occurrence in a process term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommField {
    /// `a.e`: data without direction
    Dot(IntExpr),
    /// `a!e`: output of a value
    Out(IntExpr),
    /// `a?v`: input bound to a data variable
    In(String),
}

/// An event as written in a process: a name followed by data fields.
/// A plain event has no fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommEvent {
    pub name: EventName,
    pub fields: Vec<CommField>,
}

impl CommEvent {
    pub fn plain(name: EventName) -> Self {
        CommEvent { name, fields: Vec::new() }
    }

    pub fn atom(name: &str) -> Self {
        CommEvent::plain(EventName::atom(name))
    }

    pub fn input(channel: EventName, var: &str) -> Self {
        CommEvent {
            name: channel,
            fields: vec![CommField::In(var.to_string())],
        }
    }

    pub fn output(channel: EventName, expr: IntExpr) -> Self {
        CommEvent {
            name: channel,
            fields: vec![CommField::Out(expr)],
        }
    }

    pub fn dotted(base: EventName, expr: IntExpr) -> Self {
        CommEvent {
            name: base,
            fields: vec![CommField::Dot(expr)],
        }
    }

    pub fn has_input(&self) -> bool {
        self.fields.iter().any(|f| matches!(f, CommField::In(_)))
    }
}

impl fmt::Display for CommEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for field in &self.fields {
            match field {
                CommField::Dot(e) => write!(f, ".{}", e.as_component())?,
                CommField::Out(e) => write!(f, "!{}", e.as_component())?,
                CommField::In(v) => write!(f, "?{v}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TerminalEvent::*;

    #[test]
    fn terminal_table() {
        assert_eq!(compose_terminal(Fault, Yield), Fault);
        assert_eq!(compose_terminal(Done, Done), Done);
        assert_eq!(compose_terminal(Yield, Done), Yield);
        for a in TerminalEvent::ALL {
            assert_eq!(compose_terminal(Fault, a), Fault);
            assert_eq!(compose_terminal(Done, a), a);
            for b in TerminalEvent::ALL {
                assert_eq!(compose_terminal(a, b), compose_terminal(b, a));
            }
        }
    }

    #[test]
    fn structural_equality() {
        assert_ne!(EventName::parse("a.3"), EventName::parse("a.4"));
        assert_ne!(EventName::parse("a.b"), EventName::parse("a"));
        assert!(EventName::atom("a").covers(&EventName::parse("a.b").unwrap()));
        assert!(!EventName::parse("a.b").unwrap().covers(&EventName::atom("a")));
    }

    #[test]
    fn label_order() {
        let mut v = [
            Label::Terminal(Done),
            Label::Tau,
            Label::Terminal(Fault),
            Label::event("b"),
            Label::event("a"),
            Label::Terminal(Yield),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["a", "b", "τ", "!", "?", "✓"]);
    }

    #[test]
    fn prefix_replacement() {
        let l = EventName::parse("c.1.2").unwrap();
        let r = l.replace_prefix(&EventName::atom("c"), &EventName::parse("d.e").unwrap());
        assert_eq!(r.to_string(), "d.e.1.2");
    }
}
