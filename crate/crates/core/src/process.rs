//! Process terms: standard processes, compensable processes and the
//! internal forms the semantics produces while running them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

use rustc_hash::FxHasher;

use crate::event::{CommEvent, CommField, EventName, TerminalEvent};
use crate::expr::BoolExpr;

/// A set of observable events (synchronisation, hiding). Elements act as
/// channel prefixes: `c` covers `c.1`, `c.1.2`, ...
pub type EventSet = BTreeSet<EventName>;

/// A renaming relation; one source may map to several targets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RenamingRelation(pub BTreeSet<(EventName, EventName)>);

impl RenamingRelation {
    pub fn new(pairs: impl IntoIterator<Item = (EventName, EventName)>) -> Self {
        RenamingRelation(pairs.into_iter().collect())
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(EventName, EventName)> {
        self.0.iter()
    }
}

/// A shared subterm. Its hash is computed once, when it is built, so
/// hashing a term only visits the nodes above the shared ones.
pub struct Shared<T>(Arc<(u64, T)>);

impl<T: Hash> Shared<T> {
    pub fn new(t: T) -> Self {
        let mut h = FxHasher::default();
        t.hash(&mut h);
        Shared(Arc::new((h.finish(), t)))
    }
}

impl<T> Deref for Shared<T> {
    type Target = T;

    fn deref(&self) -> &T {
        &self.0 .1
    }
}

impl<T> Clone for Shared<T> {
    fn clone(&self) -> Self {
        Shared(self.0.clone())
    }
}

impl<T: PartialEq> PartialEq for Shared<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0 .0 == other.0 .0 && self.0 .1 == other.0 .1)
    }
}

impl<T: Eq> Eq for Shared<T> {}

impl<T: Hash> Hash for Shared<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0 .0);
    }
}

impl<T: Ord> PartialOrd for Shared<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Shared<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0 .1.cmp(&other.0 .1)
    }
}

impl<T: fmt::Debug> fmt::Debug for Shared<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0 .1.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StdProc {
    /// `∅` / `STOP`: no transitions.
    Nil,
    Skip,
    Throw,
    Yield,
    Atomic(CommEvent),
    Prefix(CommEvent, Shared<StdProc>),
    Seq(Shared<StdProc>, Shared<StdProc>),
    ExtChoice(Shared<StdProc>, Shared<StdProc>),
    IntChoice(Shared<StdProc>, Shared<StdProc>),
    Parallel(Shared<EventSet>, Shared<StdProc>, Shared<StdProc>),
    /// `p ▷ q`: `q` handles a fault of `p`.
    Interrupt(Shared<StdProc>, Shared<StdProc>),
    Hide(Shared<StdProc>, Shared<EventSet>),
    Rename(Shared<StdProc>, RenamingRelation),
    Transaction(Shared<CompProc>),
    If(BoolExpr, Shared<StdProc>, Shared<StdProc>),
    While(BoolExpr, Shared<StdProc>),
    Named(String),
    Assign(String, Shared<StdProc>),
    ProcVar(String),
    /// `⟨p, q⟩`: run `p`; when it terminates with ω, emit ω and continue as `q`.
    Aux(Shared<StdProc>, Shared<StdProc>),
    /// Performs the given terminal event once and stops.
    Emit(TerminalEvent),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompProc {
    /// `p ÷ q`
    Pair(Shared<StdProc>, Shared<StdProc>),
    /// `p ÷ X`
    VarPair(Shared<StdProc>, String),
    Seq(Shared<CompProc>, Shared<CompProc>),
    ExtChoice(Shared<CompProc>, Shared<CompProc>),
    IntChoice(Shared<CompProc>, Shared<CompProc>),
    Parallel(Shared<EventSet>, Shared<CompProc>, Shared<CompProc>),
    /// `pp ⊠ qq`
    Spec(Shared<CompProc>, Shared<CompProc>),
    Hide(Shared<CompProc>, Shared<EventSet>),
    Rename(Shared<CompProc>, RenamingRelation),
    If(BoolExpr, Shared<CompProc>, Shared<CompProc>),
    While(BoolExpr, Shared<CompProc>),
    Named(String),
    /// `⟨qq, p⟩`: `qq` still running, `p` the compensation installed so far.
    Aux(Shared<CompProc>, Shared<StdProc>),
}

/// Either kind of process, as held by a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Std(StdProc),
    Comp(CompProc),
}

impl From<StdProc> for Process {
    fn from(p: StdProc) -> Self {
        Process::Std(p)
    }
}

impl From<CompProc> for Process {
    fn from(p: CompProc) -> Self {
        Process::Comp(p)
    }
}

fn arc<T: Hash>(t: T) -> Shared<T> {
    Shared::new(t)
}

impl StdProc {
    pub fn atom(name: &str) -> StdProc {
        StdProc::Atomic(CommEvent::atom(name))
    }

    pub fn prefix(e: CommEvent, p: StdProc) -> StdProc {
        StdProc::Prefix(e, arc(p))
    }

    pub fn seq(p: StdProc, q: StdProc) -> StdProc {
        StdProc::Seq(arc(p), arc(q))
    }

    pub fn ext(p: StdProc, q: StdProc) -> StdProc {
        StdProc::ExtChoice(arc(p), arc(q))
    }

    pub fn int(p: StdProc, q: StdProc) -> StdProc {
        StdProc::IntChoice(arc(p), arc(q))
    }

    pub fn par(sync: EventSet, p: StdProc, q: StdProc) -> StdProc {
        StdProc::Parallel(arc(sync), arc(p), arc(q))
    }

    pub fn interrupt(p: StdProc, q: StdProc) -> StdProc {
        StdProc::Interrupt(arc(p), arc(q))
    }

    pub fn hide(p: StdProc, a: EventSet) -> StdProc {
        StdProc::Hide(arc(p), arc(a))
    }

    pub fn rename(p: StdProc, r: RenamingRelation) -> StdProc {
        StdProc::Rename(arc(p), r)
    }

    pub fn txn(pp: CompProc) -> StdProc {
        StdProc::Transaction(arc(pp))
    }

    pub fn cond(b: BoolExpr, p: StdProc, q: StdProc) -> StdProc {
        StdProc::If(b, arc(p), arc(q))
    }

    pub fn while_do(b: BoolExpr, p: StdProc) -> StdProc {
        StdProc::While(b, arc(p))
    }

    pub fn assign(var: &str, p: StdProc) -> StdProc {
        StdProc::Assign(var.to_string(), arc(p))
    }

    pub fn var(name: &str) -> StdProc {
        StdProc::ProcVar(name.to_string())
    }

    pub fn named(name: &str) -> StdProc {
        StdProc::Named(name.to_string())
    }

    pub fn aux(p: StdProc, q: StdProc) -> StdProc {
        StdProc::Aux(arc(p), arc(q))
    }
}

impl CompProc {
    pub fn pair(p: StdProc, q: StdProc) -> CompProc {
        CompProc::Pair(arc(p), arc(q))
    }

    pub fn var_pair(p: StdProc, x: &str) -> CompProc {
        CompProc::VarPair(arc(p), x.to_string())
    }

    pub fn skipp() -> CompProc {
        CompProc::pair(StdProc::Skip, StdProc::Skip)
    }

    pub fn throww() -> CompProc {
        CompProc::pair(StdProc::Throw, StdProc::Skip)
    }

    pub fn yieldd() -> CompProc {
        CompProc::pair(StdProc::Yield, StdProc::Skip)
    }

    pub fn seq(p: CompProc, q: CompProc) -> CompProc {
        CompProc::Seq(arc(p), arc(q))
    }

    pub fn ext(p: CompProc, q: CompProc) -> CompProc {
        CompProc::ExtChoice(arc(p), arc(q))
    }

    pub fn int(p: CompProc, q: CompProc) -> CompProc {
        CompProc::IntChoice(arc(p), arc(q))
    }

    pub fn par(sync: EventSet, p: CompProc, q: CompProc) -> CompProc {
        CompProc::Parallel(arc(sync), arc(p), arc(q))
    }

    pub fn spec(p: CompProc, q: CompProc) -> CompProc {
        CompProc::Spec(arc(p), arc(q))
    }

    pub fn hide(p: CompProc, a: EventSet) -> CompProc {
        CompProc::Hide(arc(p), arc(a))
    }

    pub fn rename(p: CompProc, r: RenamingRelation) -> CompProc {
        CompProc::Rename(arc(p), r)
    }

    pub fn cond(b: BoolExpr, p: CompProc, q: CompProc) -> CompProc {
        CompProc::If(b, arc(p), arc(q))
    }

    pub fn while_do(b: BoolExpr, p: CompProc) -> CompProc {
        CompProc::While(b, arc(p))
    }

    pub fn named(name: &str) -> CompProc {
        CompProc::Named(name.to_string())
    }

    pub fn aux(pp: CompProc, p: StdProc) -> CompProc {
        CompProc::Aux(arc(pp), arc(p))
    }
}

/// Convenience for building event sets in code and tests.
pub fn event_set<'a>(names: impl IntoIterator<Item = &'a str>) -> EventSet {
    names
        .into_iter()
        .map(|n| EventName::parse(n).expect("valid event name"))
        .collect()
}

/// Read-only traversal over every sub-term of a process.
pub trait Visit {
    fn std(&mut self, _p: &StdProc) {}
    fn comp(&mut self, _p: &CompProc) {}
}

pub fn walk_std(p: &StdProc, v: &mut dyn Visit) {
    v.std(p);
    match p {
        StdProc::Nil
        | StdProc::Skip
        | StdProc::Throw
        | StdProc::Yield
        | StdProc::Atomic(_)
        | StdProc::Named(_)
        | StdProc::ProcVar(_)
        | StdProc::Emit(_) => {}
        StdProc::Prefix(_, a)
        | StdProc::Hide(a, _)
        | StdProc::Rename(a, _)
        | StdProc::While(_, a)
        | StdProc::Assign(_, a) => walk_std(a, v),
        StdProc::Seq(a, b)
        | StdProc::ExtChoice(a, b)
        | StdProc::IntChoice(a, b)
        | StdProc::Parallel(_, a, b)
        | StdProc::Interrupt(a, b)
        | StdProc::If(_, a, b)
        | StdProc::Aux(a, b) => {
            walk_std(a, v);
            walk_std(b, v);
        }
        StdProc::Transaction(pp) => walk_comp(pp, v),
    }
}

pub fn walk_comp(p: &CompProc, v: &mut dyn Visit) {
    v.comp(p);
    match p {
        CompProc::Pair(a, b) => {
            walk_std(a, v);
            walk_std(b, v);
        }
        CompProc::VarPair(a, _) => walk_std(a, v),
        CompProc::Seq(a, b)
        | CompProc::ExtChoice(a, b)
        | CompProc::IntChoice(a, b)
        | CompProc::Parallel(_, a, b)
        | CompProc::Spec(a, b)
        | CompProc::If(_, a, b) => {
            walk_comp(a, v);
            walk_comp(b, v);
        }
        CompProc::Hide(a, _) | CompProc::Rename(a, _) | CompProc::While(_, a) => walk_comp(a, v),
        CompProc::Named(_) => {}
        CompProc::Aux(a, b) => {
            walk_comp(a, v);
            walk_std(b, v);
        }
    }
}

pub fn walk(p: &Process, v: &mut dyn Visit) {
    match p {
        Process::Std(s) => walk_std(s, v),
        Process::Comp(c) => walk_comp(c, v),
    }
}

#[derive(Default)]
struct ProcVars(BTreeSet<String>);

impl Visit for ProcVars {
    fn std(&mut self, p: &StdProc) {
        match p {
            StdProc::ProcVar(x) | StdProc::Assign(x, _) => {
                self.0.insert(x.clone());
            }
            _ => {}
        }
    }

    fn comp(&mut self, p: &CompProc) {
        if let CompProc::VarPair(_, x) = p {
            self.0.insert(x.clone());
        }
    }
}

/// Every process variable occurring in a variable compensation pair, a
/// retrieval or an assignment.
pub fn free_process_vars(p: &Process) -> BTreeSet<String> {
    let mut v = ProcVars::default();
    walk(p, &mut v);
    v.0
}

#[derive(Default)]
struct Internal(bool);

impl Visit for Internal {
    fn std(&mut self, p: &StdProc) {
        if matches!(p, StdProc::Aux(..) | StdProc::Emit(_)) {
            self.0 = true;
        }
    }

    fn comp(&mut self, p: &CompProc) {
        if matches!(p, CompProc::Aux(..)) {
            self.0 = true;
        }
    }
}

/// True if the term contains a form only the semantics may create.
pub fn has_internal_forms(p: &Process) -> bool {
    let mut v = Internal::default();
    walk(p, &mut v);
    v.0
}

#[derive(Default)]
struct DataVars {
    free: BTreeSet<String>,
    inputs: BTreeSet<String>,
}

impl DataVars {
    fn event(&mut self, e: &CommEvent) {
        for f in &e.fields {
            match f {
                CommField::Dot(x) | CommField::Out(x) => x.vars(&mut self.free),
                CommField::In(v) => {
                    self.inputs.insert(v.clone());
                }
            }
        }
    }
}

impl Visit for DataVars {
    fn std(&mut self, p: &StdProc) {
        match p {
            StdProc::Atomic(e) | StdProc::Prefix(e, _) => self.event(e),
            StdProc::If(b, ..) | StdProc::While(b, _) => b.vars(&mut self.free),
            _ => {}
        }
    }

    fn comp(&mut self, p: &CompProc) {
        if let CompProc::If(b, ..) | CompProc::While(b, _) = p {
            b.vars(&mut self.free);
        }
    }
}

/// Data variables read by the term and data variables bound by its inputs.
pub fn data_vars(p: &Process) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut v = DataVars::default();
    walk(p, &mut v);
    (v.free, v.inputs)
}

/// Replaces data-variable reads by values, leaving alone variables that
/// `lookup` does not know.
pub fn substitute_std(p: &StdProc, lookup: &dyn Fn(&str) -> Option<i64>) -> StdProc {
    let s = |q: &Shared<StdProc>| arc(substitute_std(q, lookup));
    match p {
        StdProc::Atomic(e) => StdProc::Atomic(substitute_event(e, lookup)),
        StdProc::Prefix(e, q) => StdProc::Prefix(substitute_event(e, lookup), s(q)),
        StdProc::Seq(a, b) => StdProc::Seq(s(a), s(b)),
        StdProc::ExtChoice(a, b) => StdProc::ExtChoice(s(a), s(b)),
        StdProc::IntChoice(a, b) => StdProc::IntChoice(s(a), s(b)),
        StdProc::Parallel(x, a, b) => StdProc::Parallel(x.clone(), s(a), s(b)),
        StdProc::Interrupt(a, b) => StdProc::Interrupt(s(a), s(b)),
        StdProc::Hide(a, x) => StdProc::Hide(s(a), x.clone()),
        StdProc::Rename(a, r) => StdProc::Rename(s(a), r.clone()),
        StdProc::Transaction(pp) => StdProc::Transaction(arc(substitute_comp(pp, lookup))),
        StdProc::If(b, x, y) => StdProc::If(b.substitute(lookup), s(x), s(y)),
        StdProc::While(b, x) => StdProc::While(b.substitute(lookup), s(x)),
        StdProc::Assign(v, a) => StdProc::Assign(v.clone(), s(a)),
        StdProc::Aux(a, b) => StdProc::Aux(s(a), s(b)),
        StdProc::Nil
        | StdProc::Skip
        | StdProc::Throw
        | StdProc::Yield
        | StdProc::Named(_)
        | StdProc::ProcVar(_)
        | StdProc::Emit(_) => p.clone(),
    }
}

pub fn substitute_comp(p: &CompProc, lookup: &dyn Fn(&str) -> Option<i64>) -> CompProc {
    let s = |q: &Shared<CompProc>| arc(substitute_comp(q, lookup));
    let ss = |q: &Shared<StdProc>| arc(substitute_std(q, lookup));
    match p {
        CompProc::Pair(a, b) => CompProc::Pair(ss(a), ss(b)),
        CompProc::VarPair(a, x) => CompProc::VarPair(ss(a), x.clone()),
        CompProc::Seq(a, b) => CompProc::Seq(s(a), s(b)),
        CompProc::ExtChoice(a, b) => CompProc::ExtChoice(s(a), s(b)),
        CompProc::IntChoice(a, b) => CompProc::IntChoice(s(a), s(b)),
        CompProc::Parallel(x, a, b) => CompProc::Parallel(x.clone(), s(a), s(b)),
        CompProc::Spec(a, b) => CompProc::Spec(s(a), s(b)),
        CompProc::Hide(a, x) => CompProc::Hide(s(a), x.clone()),
        CompProc::Rename(a, r) => CompProc::Rename(s(a), r.clone()),
        CompProc::If(b, x, y) => CompProc::If(b.substitute(lookup), s(x), s(y)),
        CompProc::While(b, x) => CompProc::While(b.substitute(lookup), s(x)),
        CompProc::Named(_) => p.clone(),
        CompProc::Aux(a, b) => CompProc::Aux(s(a), ss(b)),
    }
}

fn substitute_event(e: &CommEvent, lookup: &dyn Fn(&str) -> Option<i64>) -> CommEvent {
    CommEvent {
        name: e.name.clone(),
        fields: e
            .fields
            .iter()
            .map(|f| match f {
                CommField::Dot(x) => CommField::Dot(x.substitute(lookup)),
                CommField::Out(x) => CommField::Out(x.substitute(lookup)),
                CommField::In(v) => CommField::In(v.clone()),
            })
            .collect(),
    }
}

/// Substitutes literal values for an index variable (used when expanding
/// indexed parallel composition).
pub fn instantiate_index(p: &Process, var: &str, value: i64) -> Process {
    let lookup = |v: &str| (v == var).then_some(value);
    match p {
        Process::Std(s) => Process::Std(substitute_std(s, &lookup)),
        Process::Comp(c) => Process::Comp(substitute_comp(c, &lookup)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::IntExpr;

    #[test]
    fn free_vars_examples() {
        let p = Process::Comp(CompProc::var_pair(StdProc::atom("a"), "X"));
        assert_eq!(free_process_vars(&p), BTreeSet::from(["X".to_string()]));
        assert!(free_process_vars(&Process::Std(StdProc::Skip)).is_empty());
        let q = Process::Std(StdProc::seq(StdProc::assign("X", StdProc::Skip), StdProc::var("Y")));
        assert_eq!(
            free_process_vars(&q),
            BTreeSet::from(["X".to_string(), "Y".to_string()])
        );
    }

    #[test]
    fn internal_forms_detected() {
        let p = Process::Std(StdProc::aux(StdProc::Emit(TerminalEvent::Fault), StdProc::Skip));
        assert!(has_internal_forms(&p));
        assert!(!has_internal_forms(&Process::Comp(CompProc::throww())));
    }

    #[test]
    fn index_instantiation() {
        let body = Process::Std(StdProc::Atomic(CommEvent::dotted(EventName::atom("Pack"), IntExpr::var("i"))));
        let Process::Std(StdProc::Atomic(e)) = instantiate_index(&body, "i", 2) else {
            panic!()
        };
        assert_eq!(e.fields, vec![CommField::Dot(IntExpr::Lit(2))]);
    }
}
