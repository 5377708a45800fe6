use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use rustc_hash::FxHashMap;

use crate::event::Label;
use crate::process::StdProc;
use crate::semantics::Semantics;
use crate::store::Configuration;

use super::{Bounds, ExploreError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LtsEdge {
    pub src: usize,
    pub label: Label,
    pub rule: &'static str,
    pub dst: usize,
    /// Compensation activated when this step ended a transaction abnormally.
    pub activated: Option<StdProc>,
}

/// The reachable part of the transition relation, explored breadth first.
#[derive(Debug, Clone)]
pub struct Lts {
    pub states: Vec<Configuration>,
    pub transitions: Vec<LtsEdge>,
    pub initial: usize,
    /// States whose successors were cut by the depth or state budget.
    pub truncated: BTreeSet<usize>,
    /// Shortest distance from the initial state.
    pub depth: Vec<usize>,
    pub bounds: Bounds,
    out: Vec<Vec<usize>>,
}

pub fn build_lts(sem: &Semantics, init: Configuration, bounds: Bounds) -> Result<Lts, ExploreError> {
    let mut states = vec![init.clone()];
    let mut index: FxHashMap<Configuration, usize> = FxHashMap::default();
    index.insert(init, 0);
    let mut parent: Vec<Option<(usize, Label)>> = vec![None];
    let mut depth = vec![0usize];
    let mut transitions = Vec::new();
    let mut truncated = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);

    let path_to = |parent: &[Option<(usize, Label)>], mut i: usize| {
        let mut path = Vec::new();
        while let Some((p, l)) = &parent[i] {
            path.push(l.clone());
            i = *p;
        }
        path.reverse();
        path
    };

    while let Some(i) = queue.pop_front() {
        let step = sem.step(&states[i]);
        if depth[i] >= bounds.max_depth {
            if !matches!(&step, Ok(v) if v.is_empty()) {
                truncated.insert(i);
            }
            continue;
        }
        let succ = step.map_err(|error| ExploreError::Step {
            error,
            path: path_to(&parent, i),
        })?;
        for t in succ {
            let dst = match index.get(&t.target) {
                Some(&j) => j,
                None => {
                    if states.len() >= bounds.max_states {
                        truncated.insert(i);
                        continue;
                    }
                    let j = states.len();
                    index.insert(t.target.clone(), j);
                    states.push(t.target);
                    parent.push(Some((i, t.label.clone())));
                    depth.push(depth[i] + 1);
                    queue.push_back(j);
                    j
                }
            };
            transitions.push(LtsEdge {
                src: i,
                label: t.label,
                rule: t.rule,
                dst,
                activated: t.activated,
            });
        }
    }

    let mut out = vec![Vec::new(); states.len()];
    for (k, e) in transitions.iter().enumerate() {
        out[e.src].push(k);
    }
    Ok(Lts {
        states,
        transitions,
        initial: 0,
        truncated,
        depth,
        bounds,
        out,
    })
}

impl Lts {
    pub fn outgoing(&self, state: usize) -> impl Iterator<Item = &LtsEdge> {
        self.out[state].iter().map(move |&k| &self.transitions[k])
    }

    pub fn is_truncated(&self) -> bool {
        !self.truncated.is_empty()
    }

    /// States reached by a terminal step that can do nothing more.
    pub fn completion_states(&self) -> BTreeSet<usize> {
        self.transitions
            .iter()
            .filter(|e| e.label.is_terminal() && self.states[e.dst].is_nil())
            .map(|e| e.dst)
            .collect()
    }

    fn sorted_edges(&self) -> Vec<&LtsEdge> {
        let mut edges: Vec<&LtsEdge> = self.transitions.iter().collect();
        edges.sort();
        edges
    }

    /// Canonical text form: one line per state, transition and truncated
    /// state, each group sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "initial {}", self.initial);
        for (i, c) in self.states.iter().enumerate() {
            let _ = writeln!(s, "state {i} {} {} {}", c.proc, c.sigma, c.rho);
        }
        for e in self.sorted_edges() {
            let _ = writeln!(s, "trans {} {} {} {}", e.src, e.label, e.rule, e.dst);
        }
        for i in &self.truncated {
            let _ = writeln!(s, "truncated {i}");
        }
        s
    }

    /// One line `source | label rule | target` per transition, sorted and
    /// without duplicates. A state is its process followed by σ and ρ when
    /// they are not empty.
    pub fn to_table(&self) -> Vec<String> {
        let lines: BTreeSet<String> = self
            .transitions
            .iter()
            .map(|e| {
                format!(
                    "{} | {} {} | {}",
                    self.states[e.src].brief(),
                    e.label,
                    e.rule,
                    self.states[e.dst].brief()
                )
            })
            .collect();
        lines.into_iter().collect()
    }

    pub fn to_dot(&self) -> String {
        let done = self.completion_states();
        let mut s = String::from("digraph lts {\n  node [shape=box, fontname=monospace];\n");
        for (i, c) in self.states.iter().enumerate() {
            let mut attrs = format!("label=\"{}\"", dot_escape(&format!("{i}: {}", c.proc)));
            if done.contains(&i) {
                attrs.push_str(", style=filled, fillcolor=gray80");
            }
            if self.truncated.contains(&i) {
                attrs.push_str(", peripheries=2");
            }
            if i == self.initial {
                attrs.push_str(", penwidth=2");
            }
            let _ = writeln!(s, "  s{i} [{attrs}];");
        }
        for e in self.sorted_edges() {
            let _ = writeln!(
                s,
                "  s{} -> s{} [label=\"{}\"];",
                e.src,
                e.dst,
                dot_escape(&format!("{} ({})", e.label, e.rule))
            );
        }
        s.push_str("}\n");
        s
    }
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}
