//! Small-step transition relation over configurations.
//!
//! [`Semantics::step`] returns every transition a configuration can make.
//! Inputs are matched against outputs by handshake inside a parallel
//! composition that synchronises on their channel; an input that reaches
//! the top level unsynchronised fires once per value of its channel domain.

mod pattern;
pub mod rules;

use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hash;

use thiserror::Error;

pub use pattern::apply_renaming;
use pattern::{unify, Field, Membership, Pattern};

use crate::event::{compose_terminal, CommEvent, CommField, EventName, Label, TerminalEvent};
use crate::expr::{eval_bool, eval_int, EvalError};
use crate::process::{
    data_vars, substitute_std, CompProc, EventSet, Process, RenamingRelation, Shared, StdProc,
};
use crate::store::{Configuration, GlobalStore, LocalStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FaultLabelMode {
    /// A transaction ending in `!`/`?` emits that label outward.
    #[default]
    Propagate,
    /// The ending label becomes `τ`; the compensation runs in place.
    Contain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnassignedVarMode {
    #[default]
    Error,
    /// Retrieval of an unassigned process variable yields `SKIP`.
    DefaultSkip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EngineOptions {
    pub interruptible_atoms: bool,
    pub fault_label_mode: FaultLabelMode,
    pub unassigned_var_mode: UnassignedVarMode,
    /// Upper bound on the number of values a single unsynchronised input
    /// may enumerate.
    pub max_channel_enumeration: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            interruptible_atoms: false,
            fault_label_mode: FaultLabelMode::Propagate,
            unassigned_var_mode: UnassignedVarMode::Error,
            max_channel_enumeration: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("unbound data variable `{0}`")]
    UnboundDataVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("process variable `{0}` retrieved before any assignment")]
    UnboundProcessVariable(String),
    #[error("input on `{0}` fires unsynchronised but the channel has no declared domain")]
    UnsynchronizedInputWithoutDomain(EventName),
    #[error("input on `{channel}` would enumerate {count} values (limit {limit})")]
    ChannelEnumerationLimit {
        channel: EventName,
        count: usize,
        limit: usize,
    },
    #[error("undefined process `{0}`")]
    UndefinedProcess(String),
}

impl From<EvalError> for StepError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::UnboundDataVariable(v) => StepError::UnboundDataVariable(v),
            EvalError::DivisionByZero => StepError::DivisionByZero,
            EvalError::Overflow => StepError::Overflow,
        }
    }
}

/// One outgoing transition of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub label: Label,
    pub target: Configuration,
    /// The outermost rule of the derivation.
    pub rule: &'static str,
    /// Rule identifiers from the outermost operator inwards.
    pub derivation: Vec<&'static str>,
    /// Compensation activated by a transaction block ending in `!` or `?`.
    pub activated: Option<StdProc>,
}

impl Transition {
    pub fn used_rule(&self, id: &str) -> bool {
        self.derivation.contains(&id)
    }

    /// True when a transaction block ended abnormally in this step.
    pub fn ends_transaction(&self) -> bool {
        self.used_rule("txn-fault") || self.used_rule("txn-yield")
    }
}

/// Definitions and channel domains the transition relation consults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Definitions {
    pub standard: BTreeMap<String, StdProc>,
    pub compensable: BTreeMap<String, CompProc>,
    pub domains: BTreeMap<EventName, Vec<i64>>,
}

pub type StepResult<T> = Result<T, StepError>;

#[derive(Debug, Clone)]
enum Act {
    Obs(Pattern),
    Tau,
    Term(TerminalEvent),
}

/// Result of a compensable step: compensable while running, standard
/// (the compensation) once terminated.
#[derive(Debug, Clone)]
enum CNext {
    Comp(CompProc),
    Std(StdProc),
}

impl CNext {
    fn comp(self) -> CompProc {
        match self {
            CNext::Comp(c) => c,
            CNext::Std(s) => unreachable!("non-terminal compensable step produced {s:?}"),
        }
    }

    fn std(self) -> StdProc {
        match self {
            CNext::Std(s) => s,
            CNext::Comp(c) => unreachable!("terminal compensable step produced {c:?}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Move<T> {
    act: Act,
    next: T,
    binds: Vec<(String, i64)>,
    assign: Option<Box<(String, StdProc)>>,
    /// innermost first; reversed when the transition is built
    rules: Vec<&'static str>,
    activated: Option<Box<StdProc>>,
}

impl<T> Move<T> {
    fn leaf(act: Act, next: T, rule: &'static str) -> Self {
        Move {
            act,
            next,
            binds: Vec::new(),
            assign: None,
            rules: {
                let mut r = Vec::with_capacity(24);
                r.push(rule);
                r
            },
            activated: None,
        }
    }

    fn wrap<U>(self, rule: &'static str, next: U) -> Move<U> {
        let mut rules = self.rules;
        rules.push(rule);
        Move {
            act: self.act,
            next,
            binds: self.binds,
            assign: self.assign,
            rules,
            activated: self.activated,
        }
    }

    fn map_next<U>(self, f: impl FnOnce(T) -> U) -> Move<U> {
        Move {
            act: self.act,
            next: f(self.next),
            binds: self.binds,
            assign: self.assign,
            rules: self.rules,
            activated: self.activated,
        }
    }

    fn with_act(mut self, act: Act) -> Self {
        self.act = act;
        self
    }
}

fn arc<T: Hash>(t: T) -> Shared<T> {
    Shared::new(t)
}

fn seq_or_next(first: StdProc, then: &Shared<StdProc>) -> StdProc {
    if first == StdProc::Nil {
        (**then).clone()
    } else {
        StdProc::Seq(arc(first), then.clone())
    }
}

static NO_DEFS: Definitions = Definitions {
    standard: BTreeMap::new(),
    compensable: BTreeMap::new(),
    domains: BTreeMap::new(),
};

/// The transition relation for one set of definitions and options.
#[derive(Debug, Clone, Copy)]
pub struct Semantics<'a> {
    defs: &'a Definitions,
    opts: EngineOptions,
}

impl Semantics<'static> {
    /// Semantics without named definitions or channel domains.
    pub fn standalone(opts: EngineOptions) -> Self {
        Semantics { defs: &NO_DEFS, opts }
    }
}

impl<'a> Semantics<'a> {
    pub fn new(defs: &'a Definitions, opts: EngineOptions) -> Self {
        Semantics { defs, opts }
    }

    pub fn options(&self) -> EngineOptions {
        self.opts
    }

    pub fn definitions(&self) -> &'a Definitions {
        self.defs
    }

    /// All transitions of `config`, in deterministic order.
    pub fn step(&self, config: &Configuration) -> StepResult<Vec<Transition>> {
        let moves: Vec<Move<Process>> = match &config.proc {
            Process::Std(p) => self
                .step_std(p, &config.sigma, &config.rho)?
                .into_iter()
                .map(|m| m.map_next(Process::Std))
                .collect(),
            Process::Comp(pp) => self
                .step_comp(pp, &config.sigma, &config.rho)?
                .into_iter()
                .map(|m| {
                    m.map_next(|n| match n {
                        CNext::Comp(c) => Process::Comp(c),
                        CNext::Std(s) => Process::Std(s),
                    })
                })
                .collect(),
        };
        let mut out: Vec<Transition> = Vec::with_capacity(moves.len());
        for m in moves {
            for m in self.resolve(m)? {
                let label = match &m.act {
                    Act::Obs(p) => Label::Observable(p.to_name().expect("resolved pattern")),
                    Act::Tau => Label::Tau,
                    Act::Term(w) => Label::Terminal(*w),
                };
                let mut sigma = config.sigma.clone();
                for (var, v) in &m.binds {
                    sigma.set(var, *v);
                }
                let mut rho = config.rho.clone();
                if let Some((x, p)) = m.assign.as_deref() {
                    rho.set(x, p.clone());
                }
                let mut derivation = m.rules;
                derivation.reverse();
                let t = Transition {
                    label,
                    target: Configuration {
                        proc: m.next,
                        sigma,
                        rho,
                    },
                    rule: derivation[0],
                    derivation,
                    activated: m.activated.map(|b| *b),
                };
                if !out.iter().any(|o| o.label == t.label && o.target == t.target && o.derivation == t.derivation) {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    /// Gives pending inputs values from their channel domain.
    fn resolve<T: Clone>(&self, m: Move<T>) -> StepResult<Vec<Move<T>>> {
        let pat = match &m.act {
            Act::Obs(p) if p.is_pending() => p.clone(),
            _ => return Ok(vec![m]),
        };
        let channel = pat.channel();
        let domain = self
            .defs
            .domains
            .get(&channel)
            .ok_or_else(|| StepError::UnsynchronizedInputWithoutDomain(channel.clone()))?;
        let limit = self.opts.max_channel_enumeration;
        let count = (domain.len() as u128).saturating_pow(pat.pending_count() as u32);
        if count > limit as u128 {
            return Err(StepError::ChannelEnumerationLimit {
                channel,
                count: usize::try_from(count).unwrap_or(usize::MAX),
                limit,
            });
        }
        Ok(pat
            .instances(domain)
            .into_iter()
            .map(|(p, binds)| {
                let mut m2 = m.clone();
                m2.act = Act::Obs(p);
                m2.binds.extend(binds);
                m2
            })
            .collect())
    }

    fn event_pattern(&self, e: &CommEvent, sigma: &LocalStore) -> StepResult<Pattern> {
        let mut p = Pattern::concrete(&e.name);
        for f in &e.fields {
            p.fields.push(match f {
                CommField::Dot(x) | CommField::Out(x) => Field::Val(eval_int(x, sigma)?),
                CommField::In(v) => Field::Bind(vec![v.clone()]),
            });
        }
        Ok(p)
    }

    /// Hiding: observable steps covered by `hidden` become `τ`.
    fn hide_moves<T: Clone>(
        &self,
        moves: Vec<Move<T>>,
        hidden: &EventSet,
        pass: &'static str,
        hide: &'static str,
    ) -> StepResult<Vec<(Move<T>, &'static str)>> {
        let mut out = Vec::new();
        for m in moves {
            match &m.act {
                Act::Obs(p) => match p.member_of(hidden) {
                    Membership::Yes => out.push((m.with_act(Act::Tau), hide)),
                    Membership::No => out.push((m, pass)),
                    Membership::Depends => {
                        for r in self.resolve(m)? {
                            let inside = matches!(&r.act, Act::Obs(p) if p.member_of(hidden) == Membership::Yes);
                            if inside {
                                out.push((r.with_act(Act::Tau), hide));
                            } else {
                                out.push((r, pass));
                            }
                        }
                    }
                },
                _ => out.push((m, pass)),
            }
        }
        Ok(out)
    }

    fn rename_moves<T: Clone>(
        &self,
        moves: Vec<Move<T>>,
        r: &RenamingRelation,
    ) -> StepResult<Vec<(Move<T>, bool)>> {
        let mut out = Vec::new();
        for m in moves {
            let p = match &m.act {
                Act::Obs(p) => p.clone(),
                _ => {
                    out.push((m, false));
                    continue;
                }
            };
            let depends = r.pairs().any(|(from, _)| p.covered_by(from) == Membership::Depends);
            let resolved = if depends { self.resolve(m)? } else { vec![m] };
            for m in resolved {
                let Act::Obs(p) = &m.act else { unreachable!() };
                let targets: Vec<Pattern> = r
                    .pairs()
                    .filter(|(from, _)| p.covered_by(from) == Membership::Yes)
                    .map(|(from, to)| p.rename_prefix(from, to))
                    .collect();
                if targets.is_empty() {
                    out.push((m, true));
                } else {
                    for t in targets {
                        out.push((m.clone().with_act(Act::Obs(t)), true));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Shared parallel-composition logic for both process kinds.
    #[allow(clippy::too_many_arguments)]
    fn parallel<N: Clone, O>(
        &self,
        sync: &EventSet,
        left: Vec<Move<N>>,
        right: Vec<Move<N>>,
        names: [&'static str; 4],
        mk_left: impl Fn(N) -> O,
        mk_right: impl Fn(N) -> O,
        mk_sync: impl Fn(N, N) -> O,
        mk_term: impl Fn(N, N) -> O,
    ) -> StepResult<Vec<Move<O>>> {
        let [left_rule, right_rule, sync_rule, term_rule] = names;
        let split = |moves: Vec<Move<N>>| -> StepResult<(Vec<Move<N>>, Vec<Move<N>>, Vec<Move<N>>)> {
            let (mut free, mut synced, mut term) = (Vec::with_capacity(moves.len()), Vec::new(), Vec::new());
            for m in moves {
                match &m.act {
                    Act::Tau => free.push(m),
                    Act::Term(_) => term.push(m),
                    Act::Obs(p) => match p.member_of(sync) {
                        Membership::Yes => synced.push(m),
                        Membership::No => free.push(m),
                        Membership::Depends => {
                            for r in self.resolve(m)? {
                                let inside = matches!(&r.act, Act::Obs(p) if p.member_of(sync) == Membership::Yes);
                                if inside {
                                    synced.push(r);
                                } else {
                                    free.push(r);
                                }
                            }
                        }
                    },
                }
            }
            Ok((free, synced, term))
        };
        let (lf, ls, lt) = split(left)?;
        let (rf, rs, rt) = split(right)?;
        let mut out = Vec::with_capacity(lf.len() + rf.len() + ls.len() * rs.len() + lt.len() * rt.len());
        for m in lf {
            let next = mk_left(m.next.clone());
            out.push(m.wrap(left_rule, next));
        }
        for m in rf {
            let next = mk_right(m.next.clone());
            out.push(m.wrap(right_rule, next));
        }
        for a in &ls {
            for b in &rs {
                let (Act::Obs(pa), Act::Obs(pb)) = (&a.act, &b.act) else { unreachable!() };
                let Some((p, binds)) = unify(pa, pb) else { continue };
                let mut all = a.binds.clone();
                all.extend(b.binds.iter().cloned());
                all.extend(binds);
                let mut rules = Vec::with_capacity(a.rules.len() + b.rules.len() + 8);
                rules.extend(a.rules.iter().copied());
                rules.extend(b.rules.iter().copied());
                rules.push(sync_rule);
                out.push(Move {
                    act: Act::Obs(p),
                    next: mk_sync(a.next.clone(), b.next.clone()),
                    binds: all,
                    assign: a.assign.clone().or_else(|| b.assign.clone()),
                    rules,
                    activated: None,
                });
            }
        }
        for a in &lt {
            for b in &rt {
                let (Act::Term(wa), Act::Term(wb)) = (&a.act, &b.act) else { unreachable!() };
                let mut rules = Vec::with_capacity(a.rules.len() + b.rules.len() + 8);
                rules.extend(a.rules.iter().copied());
                rules.extend(b.rules.iter().copied());
                rules.push(term_rule);
                out.push(Move {
                    act: Act::Term(compose_terminal(*wa, *wb)),
                    next: mk_term(a.next.clone(), b.next.clone()),
                    binds: Vec::new(),
                    assign: None,
                    rules,
                    activated: a.activated.clone().or_else(|| b.activated.clone()),
                });
            }
        }
        Ok(out)
    }

    fn step_std(&self, p: &StdProc, sigma: &LocalStore, rho: &GlobalStore) -> StepResult<Vec<Move<StdProc>>> {
        use StdProc as S;
        let term = |w| Act::Term(w);
        Ok(match p {
            S::Nil => Vec::new(),
            S::Skip => vec![Move::leaf(term(TerminalEvent::Done), S::Nil, "skip")],
            S::Throw => vec![Move::leaf(term(TerminalEvent::Fault), S::Nil, "throw")],
            S::Yield => vec![
                Move::leaf(term(TerminalEvent::Yield), S::Nil, "yield"),
                Move::leaf(term(TerminalEvent::Done), S::Nil, "yield"),
            ],
            S::Emit(w) => vec![Move::leaf(term(*w), S::Nil, "emit")],
            S::Atomic(e) => {
                let pat = self.event_pattern(e, sigma)?;
                let mut v = vec![Move::leaf(Act::Obs(pat.clone()), S::Skip, "atom")];
                if self.opts.interruptible_atoms {
                    v.push(Move::leaf(term(TerminalEvent::Yield), S::Nil, "atom-interrupt-before"));
                    v.push(Move::leaf(Act::Obs(pat), S::Nil, "atom-interrupt-after"));
                }
                v
            }
            S::Prefix(e, q) => {
                let pat = self.event_pattern(e, sigma)?;
                vec![Move::leaf(Act::Obs(pat), (**q).clone(), "prefix")]
            }
            S::Seq(a, b) => self
                .step_std(a, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Done) => m.with_act(Act::Tau).wrap("seq-done", (**b).clone()),
                    Act::Term(_) => {
                        let next = m.next.clone();
                        m.wrap("seq-abort", next)
                    }
                    _ => {
                        let next = S::Seq(arc(m.next.clone()), b.clone());
                        m.wrap("seq-step", next)
                    }
                })
                .collect(),
            S::ExtChoice(a, b) => {
                let (left, right) = (self.step_std(a, sigma, rho)?, self.step_std(b, sigma, rho)?);
                let mut out = Vec::with_capacity(left.len() + right.len());
                for m in left {
                    if let Act::Tau = m.act {
                        let next = S::ExtChoice(arc(m.next.clone()), b.clone());
                        out.push(m.wrap("ext-tau-left", next));
                    } else {
                        let next = m.next.clone();
                        out.push(m.wrap("ext-left", next));
                    }
                }
                for m in right {
                    if let Act::Tau = m.act {
                        let next = S::ExtChoice(a.clone(), arc(m.next.clone()));
                        out.push(m.wrap("ext-tau-right", next));
                    } else {
                        let next = m.next.clone();
                        out.push(m.wrap("ext-right", next));
                    }
                }
                out
            }
            S::IntChoice(a, b) => vec![
                Move::leaf(Act::Tau, (**a).clone(), "int-left"),
                Move::leaf(Act::Tau, (**b).clone(), "int-right"),
            ],
            S::Interrupt(a, h) => self
                .step_std(a, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Fault) => {
                        let next = seq_or_next(m.next.clone(), h);
                        m.with_act(Act::Tau).wrap("handler-catch", next)
                    }
                    Act::Term(_) => {
                        let next = m.next.clone();
                        m.wrap("handler-end", next)
                    }
                    _ => {
                        let next = S::Interrupt(arc(m.next.clone()), h.clone());
                        m.wrap("handler-step", next)
                    }
                })
                .collect(),
            S::Parallel(sync, a, b) => {
                let left = self.step_std(a, sigma, rho)?;
                let right = self.step_std(b, sigma, rho)?;
                self.parallel(
                    sync,
                    left,
                    right,
                    ["par-left", "par-right", "par-sync", "par-term"],
                    |n| S::Parallel(sync.clone(), arc(n), b.clone()),
                    |n| S::Parallel(sync.clone(), a.clone(), arc(n)),
                    |x, y| S::Parallel(sync.clone(), arc(x), arc(y)),
                    |x, y| match (x, y) {
                        (S::Nil, rest) | (rest, S::Nil) => rest,
                        (x, y) => S::Parallel(sync.clone(), arc(x), arc(y)),
                    },
                )?
            }
            S::Hide(a, hidden) => {
                let moves = self.step_std(a, sigma, rho)?;
                self.hide_moves(moves, hidden, "hide-pass", "hide-hidden")?
                    .into_iter()
                    .map(|(m, rule)| {
                        if let Act::Term(_) = m.act {
                            let next = if m.next == S::Nil {
                                S::Nil
                            } else {
                                S::Hide(arc(m.next.clone()), hidden.clone())
                            };
                            m.wrap("hide-term", next)
                        } else {
                            let next = S::Hide(arc(m.next.clone()), hidden.clone());
                            m.wrap(rule, next)
                        }
                    })
                    .collect()
            }
            S::Rename(a, r) => {
                let moves = self.step_std(a, sigma, rho)?;
                self.rename_moves(moves, r)?
                    .into_iter()
                    .map(|(m, _)| match m.act {
                        Act::Term(_) => {
                            let next = if m.next == S::Nil {
                                S::Nil
                            } else {
                                S::Rename(arc(m.next.clone()), r.clone())
                            };
                            m.wrap("rename-term", next)
                        }
                        Act::Tau => {
                            let next = S::Rename(arc(m.next.clone()), r.clone());
                            m.wrap("rename-tau", next)
                        }
                        Act::Obs(_) => {
                            let next = S::Rename(arc(m.next.clone()), r.clone());
                            m.wrap("rename-map", next)
                        }
                    })
                    .collect()
            }
            S::Transaction(pp) => self
                .step_comp(pp, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Done) => m.wrap("txn-done", S::Nil),
                    Act::Term(w) => {
                        let rule = if w == TerminalEvent::Fault { "txn-fault" } else { "txn-yield" };
                        let comp = m.next.clone().std();
                        let act = match self.opts.fault_label_mode {
                            FaultLabelMode::Propagate => Act::Term(w),
                            FaultLabelMode::Contain => Act::Tau,
                        };
                        let mut m = m.with_act(act).wrap(rule, comp.clone());
                        m.activated = Some(Box::new(comp));
                        m
                    }
                    _ => {
                        let next = S::Transaction(arc(m.next.clone().comp()));
                        m.wrap("txn-step", next)
                    }
                })
                .collect(),
            S::If(b, x, y) => {
                if eval_bool(b, sigma)? {
                    vec![Move::leaf(Act::Tau, (**x).clone(), "if-true")]
                } else {
                    vec![Move::leaf(Act::Tau, (**y).clone(), "if-false")]
                }
            }
            S::While(b, body) => {
                let unfolded = S::If(b.clone(), arc(S::Seq(body.clone(), arc(p.clone()))), arc(S::Skip));
                vec![Move::leaf(Act::Tau, unfolded, "while-unfold")]
            }
            S::Named(n) => {
                let body = self
                    .defs
                    .standard
                    .get(n)
                    .ok_or_else(|| StepError::UndefinedProcess(n.clone()))?;
                vec![Move::leaf(Act::Tau, body.clone(), "named")]
            }
            S::Assign(x, value) => {
                let mut m = Move::leaf(Act::Tau, S::Skip, "assign");
                m.assign = Some(Box::new((x.clone(), capture(value, sigma))));
                vec![m]
            }
            S::ProcVar(x) => {
                let value = match (rho.get(x), self.opts.unassigned_var_mode) {
                    (Some(v), _) => v.clone(),
                    (None, UnassignedVarMode::DefaultSkip) => S::Skip,
                    (None, UnassignedVarMode::Error) => {
                        return Err(StepError::UnboundProcessVariable(x.clone()))
                    }
                };
                vec![Move::leaf(Act::Tau, value, "var-retrieve")]
            }
            S::Aux(a, then) => self
                .step_std(a, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(_) => m.wrap("aux-end", (**then).clone()),
                    _ => {
                        let next = S::Aux(arc(m.next.clone()), then.clone());
                        m.wrap("aux-step", next)
                    }
                })
                .collect(),
        })
    }

    fn step_comp(&self, pp: &CompProc, sigma: &LocalStore, rho: &GlobalStore) -> StepResult<Vec<Move<CNext>>> {
        use CompProc as C;
        use StdProc as S;
        Ok(match pp {
            C::Pair(fwd, comp) => self
                .step_std(fwd, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Done) => m.wrap("pair-done", CNext::Std((**comp).clone())),
                    Act::Term(_) => m.wrap("pair-abort", CNext::Std(S::Skip)),
                    _ => {
                        let next = CNext::Comp(C::Pair(arc(m.next.clone()), comp.clone()));
                        m.wrap("pair-step", next)
                    }
                })
                .collect(),
            C::VarPair(fwd, x) => self
                .step_std(fwd, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Done) => m.wrap("varpair-done", CNext::Std(S::ProcVar(x.clone()))),
                    Act::Term(_) => m.wrap("varpair-abort", CNext::Std(S::Skip)),
                    _ => {
                        let next = CNext::Comp(C::VarPair(arc(m.next.clone()), x.clone()));
                        m.wrap("varpair-step", next)
                    }
                })
                .collect(),
            C::Seq(a, b) => self
                .step_comp(a, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(TerminalEvent::Done) => {
                        let installed = m.next.clone().std();
                        m.with_act(Act::Tau)
                            .wrap("cseq-done", CNext::Comp(C::Aux(b.clone(), arc(installed))))
                    }
                    Act::Term(_) => {
                        let next = m.next.clone();
                        m.wrap("cseq-abort", next)
                    }
                    _ => {
                        let next = CNext::Comp(C::Seq(arc(m.next.clone().comp()), b.clone()));
                        m.wrap("cseq-step", next)
                    }
                })
                .collect(),
            C::Aux(rest, installed) => self
                .step_comp(rest, sigma, rho)?
                .into_iter()
                .map(|m| match m.act {
                    Act::Term(_) => {
                        let q = m.next.clone().std();
                        m.wrap("caux-end", CNext::Std(S::Seq(arc(q), installed.clone())))
                    }
                    _ => {
                        let next = CNext::Comp(C::Aux(arc(m.next.clone().comp()), installed.clone()));
                        m.wrap("caux-step", next)
                    }
                })
                .collect(),
            C::ExtChoice(a, b) => {
                let (left, right) = (self.step_comp(a, sigma, rho)?, self.step_comp(b, sigma, rho)?);
                let mut out = Vec::with_capacity(left.len() + right.len());
                for m in left {
                    let next = m.next.clone();
                    out.push(match m.act {
                        Act::Tau => {
                            let n = CNext::Comp(C::ExtChoice(arc(next.comp()), b.clone()));
                            m.wrap("cext-tau-left", n)
                        }
                        Act::Term(_) => m.wrap("cext-term-left", next),
                        Act::Obs(_) => m.wrap("cext-left", next),
                    });
                }
                for m in right {
                    let next = m.next.clone();
                    out.push(match m.act {
                        Act::Tau => {
                            let n = CNext::Comp(C::ExtChoice(a.clone(), arc(next.comp())));
                            m.wrap("cext-tau-right", n)
                        }
                        Act::Term(_) => m.wrap("cext-term-right", next),
                        Act::Obs(_) => m.wrap("cext-right", next),
                    });
                }
                out
            }
            C::IntChoice(a, b) => vec![
                Move::leaf(Act::Tau, CNext::Comp((**a).clone()), "cint-left"),
                Move::leaf(Act::Tau, CNext::Comp((**b).clone()), "cint-right"),
            ],
            C::Parallel(sync, a, b) => {
                let left = self.step_comp(a, sigma, rho)?;
                let right = self.step_comp(b, sigma, rho)?;
                self.parallel(
                    sync,
                    left,
                    right,
                    ["cpar-left", "cpar-right", "cpar-sync", "cpar-term"],
                    |n| CNext::Comp(C::Parallel(sync.clone(), arc(n.comp()), b.clone())),
                    |n| CNext::Comp(C::Parallel(sync.clone(), a.clone(), arc(n.comp()))),
                    |x, y| CNext::Comp(C::Parallel(sync.clone(), arc(x.comp()), arc(y.comp()))),
                    |x, y| CNext::Std(S::Parallel(sync.clone(), arc(x.std()), arc(y.std()))),
                )?
            }
            C::Spec(a, b) => {
                let left = self.step_comp(a, sigma, rho)?;
                let right = self.step_comp(b, sigma, rho)?;
                let mut out = Vec::new();
                let mut lt = Vec::new();
                let mut rt = Vec::new();
                for m in left {
                    if let Act::Term(_) = m.act {
                        lt.push(m);
                    } else {
                        let n = CNext::Comp(C::Spec(arc(m.next.clone().comp()), b.clone()));
                        out.push(m.wrap("spec-left", n));
                    }
                }
                for m in right {
                    if let Act::Term(_) = m.act {
                        rt.push(m);
                    } else {
                        let n = CNext::Comp(C::Spec(a.clone(), arc(m.next.clone().comp())));
                        out.push(m.wrap("spec-right", n));
                    }
                }
                for x in &lt {
                    for y in &rt {
                        let (Act::Term(wx), Act::Term(wy)) = (&x.act, &y.act) else { unreachable!() };
                        let p = x.next.clone().std();
                        let q = y.next.clone().std();
                        let done = TerminalEvent::Done;
                        let (act, next, rule) = match (*wx == done, *wy == done) {
                            (true, true) => (
                                Act::Term(done),
                                S::ExtChoice(arc(S::aux(q.clone(), p.clone())), arc(S::aux(p, q))),
                                "spec-both",
                            ),
                            (true, false) => (Act::Term(done), S::aux(q, p), "spec-left-wins"),
                            (false, true) => (Act::Term(done), S::aux(p, q), "spec-right-wins"),
                            (false, false) => {
                                let w = compose_terminal(*wx, *wy);
                                (
                                    Act::Term(w),
                                    S::aux(S::Emit(w), S::par(EventSet::new(), p, q)),
                                    "spec-fail",
                                )
                            }
                        };
                        let mut rules = Vec::with_capacity(x.rules.len() + y.rules.len() + 8);
                        rules.extend(x.rules.iter().copied());
                        rules.extend(y.rules.iter().copied());
                        rules.push(rule);
                        out.push(Move {
                            act,
                            next: CNext::Std(next),
                            binds: Vec::new(),
                            assign: None,
                            rules,
                            activated: None,
                        });
                    }
                }
                out
            }
            C::Hide(a, hidden) => {
                let moves = self.step_comp(a, sigma, rho)?;
                self.hide_moves(moves, hidden, "chide-pass", "chide-hidden")?
                    .into_iter()
                    .map(|(m, rule)| {
                        if let Act::Term(_) = m.act {
                            let next = CNext::Std(S::Hide(arc(m.next.clone().std()), hidden.clone()));
                            m.wrap("chide-term", next)
                        } else {
                            let next = CNext::Comp(C::Hide(arc(m.next.clone().comp()), hidden.clone()));
                            m.wrap(rule, next)
                        }
                    })
                    .collect()
            }
            C::Rename(a, r) => {
                let moves = self.step_comp(a, sigma, rho)?;
                self.rename_moves(moves, r)?
                    .into_iter()
                    .map(|(m, _)| match m.act {
                        Act::Term(_) => {
                            let next = CNext::Std(S::Rename(arc(m.next.clone().std()), r.clone()));
                            m.wrap("crename-term", next)
                        }
                        Act::Tau => {
                            let next = CNext::Comp(C::Rename(arc(m.next.clone().comp()), r.clone()));
                            m.wrap("crename-tau", next)
                        }
                        Act::Obs(_) => {
                            let next = CNext::Comp(C::Rename(arc(m.next.clone().comp()), r.clone()));
                            m.wrap("crename-map", next)
                        }
                    })
                    .collect()
            }
            C::If(b, x, y) => {
                if eval_bool(b, sigma)? {
                    vec![Move::leaf(Act::Tau, CNext::Comp((**x).clone()), "cif-true")]
                } else {
                    vec![Move::leaf(Act::Tau, CNext::Comp((**y).clone()), "cif-false")]
                }
            }
            C::While(b, body) => {
                let unfolded = C::If(
                    b.clone(),
                    arc(C::Seq(body.clone(), arc(pp.clone()))),
                    arc(CompProc::skipp()),
                );
                vec![Move::leaf(Act::Tau, CNext::Comp(unfolded), "cwhile-unfold")]
            }
            C::Named(n) => {
                let body = self
                    .defs
                    .compensable
                    .get(n)
                    .ok_or_else(|| StepError::UndefinedProcess(n.clone()))?;
                vec![Move::leaf(Act::Tau, CNext::Comp(body.clone()), "cnamed")]
            }
        })
    }
}

/// Value captured by `X := p`: data variables currently bound in σ are
/// replaced by their values, except those bound by inputs inside `p`.
fn capture(p: &StdProc, sigma: &LocalStore) -> StdProc {
    let (free, inputs) = data_vars(&Process::Std(p.clone()));
    let captured: BTreeSet<&String> = free.iter().filter(|v| !inputs.contains(*v)).collect();
    if captured.is_empty() {
        return p.clone();
    }
    let lookup = |v: &str| {
        if captured.iter().any(|c| c.as_str() == v) {
            sigma.get(v)
        } else {
            None
        }
    };
    substitute_std(p, &lookup)
}

#[cfg(test)]
mod tests;
