use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use crate::event::{Label, TerminalEvent};
use crate::semantics::Semantics;
use crate::store::Configuration;

use super::{build_lts, Bounds, ExploreError, Lts};

/// How a trace ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    Done,
    Fault,
    Yielded,
    Deadlock,
    Truncated,
}

impl Marker {
    pub fn after(w: TerminalEvent) -> Marker {
        match w {
            TerminalEvent::Done => Marker::Done,
            TerminalEvent::Fault => Marker::Fault,
            TerminalEvent::Yield => Marker::Yielded,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::Done => "DONE",
            Marker::Fault => "FAULT",
            Marker::Yielded => "YIELDED",
            Marker::Deadlock => "DEADLOCK",
            Marker::Truncated => "TRUNCATED",
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A maximal label sequence with its completion marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trace {
    pub labels: Vec<Label>,
    pub marker: Marker,
}

impl Trace {
    pub fn new(labels: Vec<Label>, marker: Marker) -> Self {
        Trace { labels, marker }
    }

    /// The labels without `τ` and terminal events.
    pub fn observable(&self) -> Vec<Label> {
        self.labels
            .iter()
            .filter(|l| matches!(l, Label::Observable(_)))
            .cloned()
            .collect()
    }

    pub fn strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l} ")?;
        }
        write!(f, "{}", self.marker)
    }
}

type Suffixes = Rc<BTreeSet<Trace>>;

/// Enumerates suffix trace sets over an explored LTS, sharing work between
/// paths that meet in the same state with the same remaining budget.
struct Walker<'a> {
    lts: &'a Lts,
    elide_tau: bool,
    memo: HashMap<(usize, usize, Option<TerminalEvent>), Suffixes>,
}

impl<'a> Walker<'a> {
    fn new(lts: &'a Lts, elide_tau: bool) -> Self {
        Walker {
            lts,
            elide_tau,
            memo: HashMap::new(),
        }
    }

    /// Traces from `state` with `remaining` steps left, the state having
    /// been entered by `arrived` when that was a terminal step.
    fn suffixes(&mut self, state: usize, remaining: usize, arrived: Option<TerminalEvent>) -> Suffixes {
        let key = (state, remaining, arrived);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let lts = self.lts;
        let mut set = BTreeSet::new();
        let cut = lts.truncated.contains(&state);
        let mut edges = lts.outgoing(state).peekable();
        if edges.peek().is_none() && !cut {
            let marker = match arrived {
                Some(w) if lts.states[state].is_nil() => Marker::after(w),
                _ => Marker::Deadlock,
            };
            set.insert(Trace::new(Vec::new(), marker));
        } else if remaining == 0 {
            set.insert(Trace::new(Vec::new(), Marker::Truncated));
        } else {
            if cut {
                set.insert(Trace::new(Vec::new(), Marker::Truncated));
            }
            let edges: Vec<(Label, usize)> = edges.map(|e| (e.label.clone(), e.dst)).collect();
            for (label, dst) in edges {
                let rest = self.suffixes(dst, remaining - 1, label.terminal());
                let keep = !(self.elide_tau && label == Label::Tau);
                for t in rest.iter() {
                    let mut labels = Vec::with_capacity(t.labels.len() + 1);
                    if keep {
                        labels.push(label.clone());
                    }
                    labels.extend(t.labels.iter().cloned());
                    set.insert(Trace::new(labels, t.marker));
                }
            }
        }
        let set = Rc::new(set);
        self.memo.insert(key, set.clone());
        set
    }
}

impl Lts {
    /// All maximal traces from the initial state within the depth bound.
    pub fn traces(&self, elide_tau: bool) -> BTreeSet<Trace> {
        let mut w = Walker::new(self, elide_tau);
        let set = w.suffixes(self.initial, self.bounds.max_depth, None);
        drop(w);
        Rc::try_unwrap(set).unwrap_or_else(|rc| (*rc).clone())
    }
}

pub fn traces(
    sem: &Semantics,
    init: Configuration,
    max_depth: usize,
    elide_tau: bool,
) -> Result<BTreeSet<Trace>, ExploreError> {
    let lts = build_lts(sem, init, Bounds::depth(max_depth))?;
    Ok(lts.traces(elide_tau))
}

/// A reachable stuck state with a shortest path to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deadlock {
    pub state: usize,
    pub path: Vec<Label>,
}

/// States with no transitions that were not reached as the completion of
/// a terminal step. Truncated states are never reported.
pub fn find_deadlocks(lts: &Lts) -> Vec<Deadlock> {
    // nodes are (state, entered by a terminal step)
    let mut seen: HashMap<(usize, bool), Option<((usize, bool), Label)>> = HashMap::new();
    let start = (lts.initial, false);
    seen.insert(start, None);
    let mut queue = VecDeque::from([start]);
    let mut found: Vec<(usize, bool)> = Vec::new();
    let mut reported = BTreeSet::new();
    while let Some(node @ (s, terminal)) = queue.pop_front() {
        let mut edges = lts.outgoing(s).peekable();
        if edges.peek().is_none() {
            let stuck = !lts.truncated.contains(&s) && !(terminal && lts.states[s].is_nil());
            if stuck && reported.insert(s) {
                found.push(node);
            }
            continue;
        }
        for e in edges {
            let next = (e.dst, e.label.is_terminal());
            if let Entry::Vacant(slot) = seen.entry(next) {
                slot.insert(Some((node, e.label.clone())));
                queue.push_back(next);
            }
        }
    }
    found
        .into_iter()
        .map(|node| {
            let mut path = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, l))) = seen.get(&cur) {
                path.push(l.clone());
                cur = *prev;
            }
            path.reverse();
            Deadlock { state: node.0, path }
        })
        .collect()
}
