//! A naive reference interpreter for the data-free fragment.
//!
//! It has its own term type, a flat table of rules tried one by one
//! against every term, and enumerates traces path by path with no state
//! sharing. It never calls into the engine; `from_engine` only converts
//! terms.

use std::collections::{BTreeMap, BTreeSet};

use deccsp::process::{CompProc, Process, StdProc};
use deccsp::TerminalEvent;

#[derive(Clone, Debug, PartialEq)]
pub enum T {
    Nil,
    Skip,
    Throw,
    Yield,
    Emit(&'static str),
    Atom(String),
    Prefix(String, Box<T>),
    Seq(Box<T>, Box<T>),
    Ext(Box<T>, Box<T>),
    Int(Box<T>, Box<T>),
    Par(Vec<String>, Box<T>, Box<T>),
    Intr(Box<T>, Box<T>),
    Hide(Box<T>, Vec<String>),
    Ren(Box<T>, Vec<(String, String)>),
    Txn(Box<C>),
    Assign(String, Box<T>),
    Var(String),
    Aux(Box<T>, Box<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum C {
    Pair(Box<T>, Box<T>),
    VPair(Box<T>, String),
    Seq(Box<C>, Box<C>),
    Ext(Box<C>, Box<C>),
    Int(Box<C>, Box<C>),
    Par(Vec<String>, Box<C>, Box<C>),
    Spec(Box<C>, Box<C>),
    Hide(Box<C>, Vec<String>),
    Ren(Box<C>, Vec<(String, String)>),
    Aux(Box<C>, Box<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Any {
    S(T),
    P(C),
}

#[derive(Clone, Copy, Debug)]
pub struct Opts {
    pub interruptible: bool,
    pub contain: bool,
    pub default_skip: bool,
}

const TAU: &str = "τ";
const DONE: &str = "✓";
const FAULT: &str = "!";
const YIELD: &str = "?";

fn terminal(l: &str) -> bool {
    l == DONE || l == FAULT || l == YIELD
}

/// Fault beats yield beats success.
fn and(x: &'static str, y: &'static str) -> &'static str {
    if x == FAULT || y == FAULT {
        FAULT
    } else if x == YIELD || y == YIELD {
        YIELD
    } else {
        DONE
    }
}

fn label(l: &str) -> &'static str {
    match l {
        "✓" => DONE,
        "!" => FAULT,
        "?" => YIELD,
        _ => TAU,
    }
}

#[derive(Clone, Debug)]
struct Step<N> {
    label: String,
    next: N,
    assign: Option<(String, T)>,
}

fn step<N>(label: &str, next: N) -> Step<N> {
    Step {
        label: label.to_string(),
        next,
        assign: None,
    }
}

type Rho = BTreeMap<String, T>;

struct Ctx<'a> {
    rho: &'a Rho,
    opts: Opts,
}

type StdRule = fn(&T, &Ctx) -> Result<Vec<Step<T>>, String>;
type CompRule = fn(&C, &Ctx) -> Result<Vec<Step<Any>>, String>;

fn b<X>(x: X) -> Box<X> {
    Box::new(x)
}

fn std_of(a: Any) -> T {
    match a {
        Any::S(t) => t,
        Any::P(c) => panic!("expected a standard process, got {c:?}"),
    }
}

fn comp_of(a: Any) -> C {
    match a {
        Any::P(c) => c,
        Any::S(t) => panic!("expected a compensable process, got {t:?}"),
    }
}

fn hidden(l: &str, set: &[String]) -> bool {
    set.iter().any(|e| e == l)
}

/// Every standard rule, tried in turn against the term.
const STD_RULES: &[(&str, StdRule)] = &[
    ("SKIP -✓-> 0", |p, _| Ok(if *p == T::Skip { vec![step(DONE, T::Nil)] } else { vec![] })),
    ("THROW -!-> 0", |p, _| Ok(if *p == T::Throw { vec![step(FAULT, T::Nil)] } else { vec![] })),
    ("YIELD -?,✓-> 0", |p, _| {
        Ok(if *p == T::Yield { vec![step(YIELD, T::Nil), step(DONE, T::Nil)] } else { vec![] })
    }),
    ("EMIT(w) -w-> 0", |p, _| Ok(match p {
        T::Emit(w) => vec![step(w, T::Nil)],
        _ => vec![],
    })),
    ("a -a-> SKIP", |p, _| Ok(match p {
        T::Atom(a) => vec![step(a, T::Skip)],
        _ => vec![],
    })),
    ("a -?-> 0 and a -a-> 0 when atoms are interruptible", |p, c| Ok(match p {
        T::Atom(a) if c.opts.interruptible => vec![step(YIELD, T::Nil), step(a, T::Nil)],
        _ => vec![],
    })),
    ("a->p -a-> p", |p, _| Ok(match p {
        T::Prefix(a, q) => vec![step(a, (**q).clone())],
        _ => vec![],
    })),
    ("p;q", |p, c| {
        let T::Seq(x, y) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                DONE => Step { label: TAU.into(), next: (**y).clone(), assign: s.assign },
                l if terminal(l) => s,
                _ => Step { next: T::Seq(b(s.next), y.clone()), ..s },
            })
            .collect())
    }),
    ("p [] q", |p, c| {
        let T::Ext(x, y) = p else { return Ok(vec![]) };
        let mut out = Vec::new();
        for s in std_steps(x, c)? {
            out.push(if s.label == TAU { Step { next: T::Ext(b(s.next), y.clone()), ..s } } else { s });
        }
        for s in std_steps(y, c)? {
            out.push(if s.label == TAU { Step { next: T::Ext(x.clone(), b(s.next)), ..s } } else { s });
        }
        Ok(out)
    }),
    ("p |~| q -τ-> p, q", |p, _| Ok(match p {
        T::Int(x, y) => vec![step(TAU, (**x).clone()), step(TAU, (**y).clone())],
        _ => vec![],
    })),
    ("p [> h", |p, c| {
        let T::Intr(x, h) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                FAULT => {
                    let next = if s.next == T::Nil { (**h).clone() } else { T::Seq(b(s.next), h.clone()) };
                    Step { label: TAU.into(), next, assign: s.assign }
                }
                l if terminal(l) => s,
                _ => Step { next: T::Intr(b(s.next), h.clone()), ..s },
            })
            .collect())
    }),
    ("p ||A q", |p, c| {
        let T::Par(set, x, y) = p else { return Ok(vec![]) };
        let left = std_steps(x, c)?;
        let right = std_steps(y, c)?;
        let mut out = Vec::new();
        for s in &left {
            if !terminal(&s.label) && !hidden(&s.label, set) {
                out.push(Step { next: T::Par(set.clone(), b(s.next.clone()), y.clone()), ..s.clone() });
            }
        }
        for s in &right {
            if !terminal(&s.label) && !hidden(&s.label, set) {
                out.push(Step { next: T::Par(set.clone(), x.clone(), b(s.next.clone())), ..s.clone() });
            }
        }
        for l in &left {
            for r in &right {
                if hidden(&l.label, set) && l.label == r.label {
                    out.push(Step {
                        label: l.label.clone(),
                        next: T::Par(set.clone(), b(l.next.clone()), b(r.next.clone())),
                        assign: l.assign.clone().or(r.assign.clone()),
                    });
                }
                if terminal(&l.label) && terminal(&r.label) {
                    let next = match (&l.next, &r.next) {
                        (T::Nil, n) | (n, T::Nil) => n.clone(),
                        (m, n) => T::Par(set.clone(), b(m.clone()), b(n.clone())),
                    };
                    out.push(step(and(label(&l.label), label(&r.label)), next));
                }
            }
        }
        Ok(out)
    }),
    ("p \\ A", |p, c| {
        let T::Hide(x, set) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| {
                if terminal(&s.label) {
                    let next = if s.next == T::Nil { T::Nil } else { T::Hide(b(s.next), set.clone()) };
                    Step { next, ..s }
                } else if hidden(&s.label, set) {
                    Step { label: TAU.into(), next: T::Hide(b(s.next), set.clone()), assign: s.assign }
                } else {
                    Step { next: T::Hide(b(s.next), set.clone()), ..s }
                }
            })
            .collect())
    }),
    ("p [[R]]", |p, c| {
        let T::Ren(x, r) = p else { return Ok(vec![]) };
        let mut out = Vec::new();
        for s in std_steps(x, c)? {
            if terminal(&s.label) {
                let next = if s.next == T::Nil { T::Nil } else { T::Ren(b(s.next), r.clone()) };
                out.push(Step { next, ..s });
                continue;
            }
            let targets: Vec<&String> = r.iter().filter(|(from, _)| *from == s.label).map(|(_, to)| to).collect();
            let next = T::Ren(b(s.next.clone()), r.clone());
            if targets.is_empty() {
                out.push(Step { next, ..s });
            } else {
                for t in targets {
                    out.push(Step { label: t.clone(), next: next.clone(), assign: s.assign.clone() });
                }
            }
        }
        Ok(out)
    }),
    ("[pp]", |p, c| {
        let T::Txn(pp) = p else { return Ok(vec![]) };
        Ok(comp_steps(pp, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                DONE => Step { label: DONE.into(), next: T::Nil, assign: s.assign },
                l if terminal(l) => {
                    let label = if c.opts.contain { TAU.to_string() } else { s.label.clone() };
                    Step { label, next: std_of(s.next), assign: s.assign }
                }
                _ => Step { label: s.label, next: T::Txn(b(comp_of(s.next))), assign: s.assign },
            })
            .collect())
    }),
    ("X := p -τ-> SKIP", |p, _| Ok(match p {
        T::Assign(x, q) => vec![Step { label: TAU.into(), next: T::Skip, assign: Some((x.clone(), (**q).clone())) }],
        _ => vec![],
    })),
    ("X -τ-> rho(X)", |p, c| {
        let T::Var(x) = p else { return Ok(vec![]) };
        match c.rho.get(x) {
            Some(v) => Ok(vec![step(TAU, v.clone())]),
            None if c.opts.default_skip => Ok(vec![step(TAU, T::Skip)]),
            None => Err(format!("unassigned {x}")),
        }
    }),
    ("<p, q>", |p, c| {
        let T::Aux(x, q) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| {
                if terminal(&s.label) {
                    Step { next: (**q).clone(), ..s }
                } else {
                    Step { next: T::Aux(b(s.next), q.clone()), ..s }
                }
            })
            .collect())
    }),
];

/// Every compensable rule, tried in turn against the term.
const COMP_RULES: &[(&str, CompRule)] = &[
    ("p / q", |p, c| {
        let C::Pair(x, q) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                DONE => Step { label: s.label, next: Any::S((**q).clone()), assign: s.assign },
                l if terminal(l) => Step { label: s.label, next: Any::S(T::Skip), assign: s.assign },
                _ => Step { label: s.label, next: Any::P(C::Pair(b(s.next), q.clone())), assign: s.assign },
            })
            .collect())
    }),
    ("p / X", |p, c| {
        let C::VPair(x, v) = p else { return Ok(vec![]) };
        Ok(std_steps(x, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                DONE => Step { label: s.label, next: Any::S(T::Var(v.clone())), assign: s.assign },
                l if terminal(l) => Step { label: s.label, next: Any::S(T::Skip), assign: s.assign },
                _ => Step { label: s.label, next: Any::P(C::VPair(b(s.next), v.clone())), assign: s.assign },
            })
            .collect())
    }),
    ("pp;qq", |p, c| {
        let C::Seq(x, y) = p else { return Ok(vec![]) };
        Ok(comp_steps(x, c)?
            .into_iter()
            .map(|s| match s.label.as_str() {
                DONE => Step { label: TAU.into(), next: Any::P(C::Aux(y.clone(), b(std_of(s.next)))), assign: s.assign },
                l if terminal(l) => s,
                _ => Step { next: Any::P(C::Seq(b(comp_of(s.next)), y.clone())), ..s },
            })
            .collect())
    }),
    ("<qq, p>", |p, c| {
        let C::Aux(x, inst) = p else { return Ok(vec![]) };
        Ok(comp_steps(x, c)?
            .into_iter()
            .map(|s| {
                if terminal(&s.label) {
                    Step { next: Any::S(T::Seq(b(std_of(s.next)), inst.clone())), ..s }
                } else {
                    Step { next: Any::P(C::Aux(b(comp_of(s.next)), inst.clone())), ..s }
                }
            })
            .collect())
    }),
    ("pp [] qq", |p, c| {
        let C::Ext(x, y) = p else { return Ok(vec![]) };
        let mut out = Vec::new();
        for s in comp_steps(x, c)? {
            out.push(if s.label == TAU { Step { next: Any::P(C::Ext(b(comp_of(s.next)), y.clone())), ..s } } else { s });
        }
        for s in comp_steps(y, c)? {
            out.push(if s.label == TAU { Step { next: Any::P(C::Ext(x.clone(), b(comp_of(s.next)))), ..s } } else { s });
        }
        Ok(out)
    }),
    ("pp |~| qq", |p, _| Ok(match p {
        C::Int(x, y) => vec![step(TAU, Any::P((**x).clone())), step(TAU, Any::P((**y).clone()))],
        _ => vec![],
    })),
    ("pp ||A qq", |p, c| {
        let C::Par(set, x, y) = p else { return Ok(vec![]) };
        let left = comp_steps(x, c)?;
        let right = comp_steps(y, c)?;
        let mut out = Vec::new();
        for s in &left {
            if !terminal(&s.label) && !hidden(&s.label, set) {
                out.push(Step { next: Any::P(C::Par(set.clone(), b(comp_of(s.next.clone())), y.clone())), ..s.clone() });
            }
        }
        for s in &right {
            if !terminal(&s.label) && !hidden(&s.label, set) {
                out.push(Step { next: Any::P(C::Par(set.clone(), x.clone(), b(comp_of(s.next.clone())))), ..s.clone() });
            }
        }
        for l in &left {
            for r in &right {
                if hidden(&l.label, set) && l.label == r.label {
                    out.push(Step {
                        label: l.label.clone(),
                        next: Any::P(C::Par(set.clone(), b(comp_of(l.next.clone())), b(comp_of(r.next.clone())))),
                        assign: l.assign.clone().or(r.assign.clone()),
                    });
                }
                if terminal(&l.label) && terminal(&r.label) {
                    let next = T::Par(set.clone(), b(std_of(l.next.clone())), b(std_of(r.next.clone())));
                    out.push(step(and(label(&l.label), label(&r.label)), Any::S(next)));
                }
            }
        }
        Ok(out)
    }),
    ("pp <> qq", |p, c| {
        let C::Spec(x, y) = p else { return Ok(vec![]) };
        let left = comp_steps(x, c)?;
        let right = comp_steps(y, c)?;
        let mut out = Vec::new();
        for s in &left {
            if !terminal(&s.label) {
                out.push(Step { next: Any::P(C::Spec(b(comp_of(s.next.clone())), y.clone())), ..s.clone() });
            }
        }
        for s in &right {
            if !terminal(&s.label) {
                out.push(Step { next: Any::P(C::Spec(x.clone(), b(comp_of(s.next.clone())))), ..s.clone() });
            }
        }
        for l in left.iter().filter(|s| terminal(&s.label)) {
            for r in right.iter().filter(|s| terminal(&s.label)) {
                let p1 = std_of(l.next.clone());
                let q1 = std_of(r.next.clone());
                let aux = |a: &T, z: &T| T::Aux(b(a.clone()), b(z.clone()));
                let (lab, next) = match (l.label == DONE, r.label == DONE) {
                    (true, true) => (DONE, T::Ext(b(aux(&q1, &p1)), b(aux(&p1, &q1)))),
                    (true, false) => (DONE, aux(&q1, &p1)),
                    (false, true) => (DONE, aux(&p1, &q1)),
                    (false, false) => {
                        let w = and(label(&l.label), label(&r.label));
                        (w, T::Aux(b(T::Emit(w)), b(T::Par(vec![], b(p1), b(q1)))))
                    }
                };
                out.push(step(lab, Any::S(next)));
            }
        }
        Ok(out)
    }),
    ("pp \\ A", |p, c| {
        let C::Hide(x, set) = p else { return Ok(vec![]) };
        Ok(comp_steps(x, c)?
            .into_iter()
            .map(|s| {
                if terminal(&s.label) {
                    Step { next: Any::S(T::Hide(b(std_of(s.next)), set.clone())), ..s }
                } else if hidden(&s.label, set) {
                    Step { label: TAU.into(), next: Any::P(C::Hide(b(comp_of(s.next)), set.clone())), assign: s.assign }
                } else {
                    Step { next: Any::P(C::Hide(b(comp_of(s.next)), set.clone())), ..s }
                }
            })
            .collect())
    }),
    ("pp [[R]]", |p, c| {
        let C::Ren(x, r) = p else { return Ok(vec![]) };
        let mut out = Vec::new();
        for s in comp_steps(x, c)? {
            if terminal(&s.label) {
                out.push(Step { next: Any::S(T::Ren(b(std_of(s.next)), r.clone())), ..s });
                continue;
            }
            let next = Any::P(C::Ren(b(comp_of(s.next.clone())), r.clone()));
            let targets: Vec<&String> = r.iter().filter(|(from, _)| *from == s.label).map(|(_, to)| to).collect();
            if targets.is_empty() {
                out.push(Step { next, ..s });
            } else {
                for t in targets {
                    out.push(Step { label: t.clone(), next: next.clone(), assign: s.assign.clone() });
                }
            }
        }
        Ok(out)
    }),
];

fn std_steps(p: &T, c: &Ctx) -> Result<Vec<Step<T>>, String> {
    let mut out = Vec::new();
    for (_, rule) in STD_RULES {
        out.extend(rule(p, c)?);
    }
    Ok(out)
}

fn comp_steps(p: &C, c: &Ctx) -> Result<Vec<Step<Any>>, String> {
    let mut out = Vec::new();
    for (_, rule) in COMP_RULES {
        out.extend(rule(p, c)?);
    }
    Ok(out)
}

fn any_steps(p: &Any, c: &Ctx) -> Result<Vec<Step<Any>>, String> {
    match p {
        Any::S(t) => Ok(std_steps(t, c)?
            .into_iter()
            .map(|s| Step { label: s.label, next: Any::S(s.next), assign: s.assign })
            .collect()),
        Any::P(pp) => comp_steps(pp, c),
    }
}

fn marker(arrived: Option<&str>, p: &Any) -> &'static str {
    match arrived {
        Some(DONE) if *p == Any::S(T::Nil) => "DONE",
        Some(FAULT) if *p == Any::S(T::Nil) => "FAULT",
        Some(YIELD) if *p == Any::S(T::Nil) => "YIELDED",
        _ => "DEADLOCK",
    }
}

fn walk(
    p: &Any,
    rho: &Rho,
    remaining: usize,
    arrived: Option<&str>,
    prefix: &mut Vec<String>,
    opts: Opts,
    elide: bool,
    out: &mut BTreeSet<String>,
) -> Result<(), String> {
    let ctx = Ctx { rho, opts };
    let steps = any_steps(p, &ctx);
    let render = |prefix: &[String], m: &str| {
        let mut s = String::new();
        for l in prefix {
            s.push_str(l);
            s.push(' ');
        }
        s.push_str(m);
        s
    };
    if remaining == 0 {
        let m = match &steps {
            Ok(v) if v.is_empty() => marker(arrived, p),
            _ => "TRUNCATED",
        };
        out.insert(render(prefix, m));
        return Ok(());
    }
    let steps = steps?;
    if steps.is_empty() {
        out.insert(render(prefix, marker(arrived, p)));
        return Ok(());
    }
    for s in steps {
        let mut rho2 = rho.clone();
        if let Some((x, v)) = &s.assign {
            rho2.insert(x.clone(), v.clone());
        }
        let keep = !(elide && s.label == TAU);
        if keep {
            prefix.push(s.label.clone());
        }
        let arrived = terminal(&s.label).then_some(s.label.as_str());
        walk(&s.next, &rho2, remaining - 1, arrived, prefix, opts, elide, out)?;
        if keep {
            prefix.pop();
        }
    }
    Ok(())
}

/// All maximal traces within `depth` steps, rendered like the engine's.
pub fn oracle_traces(p: &Any, depth: usize, opts: Opts, elide: bool) -> Result<BTreeSet<String>, String> {
    let mut out = BTreeSet::new();
    walk(p, &Rho::new(), depth, None, &mut Vec::new(), opts, elide, &mut out)?;
    Ok(out)
}

/// The transitions of a term as `(label, next)` pairs, for spot checks.
pub fn oracle_step(p: &Any, opts: Opts) -> Result<Vec<(String, Any)>, String> {
    let rho = Rho::new();
    let ctx = Ctx { rho: &rho, opts };
    Ok(any_steps(p, &ctx)?.into_iter().map(|s| (s.label, s.next)).collect())
}

fn names(set: &deccsp::process::EventSet) -> Vec<String> {
    set.iter().map(|e| e.to_string()).collect()
}

fn pairs(r: &deccsp::process::RenamingRelation) -> Vec<(String, String)> {
    r.pairs().map(|(a, z)| (a.to_string(), z.to_string())).collect()
}

fn sym(w: TerminalEvent) -> &'static str {
    match w {
        TerminalEvent::Done => DONE,
        TerminalEvent::Fault => FAULT,
        TerminalEvent::Yield => YIELD,
    }
}

pub fn std_from(p: &StdProc) -> T {
    use StdProc as S;
    match p {
        S::Nil => T::Nil,
        S::Skip => T::Skip,
        S::Throw => T::Throw,
        S::Yield => T::Yield,
        S::Emit(w) => T::Emit(sym(*w)),
        S::Atomic(e) => {
            assert!(e.fields.is_empty(), "the oracle has no data");
            T::Atom(e.name.to_string())
        }
        S::Prefix(e, q) => {
            assert!(e.fields.is_empty(), "the oracle has no data");
            T::Prefix(e.name.to_string(), b(std_from(q)))
        }
        S::Seq(x, y) => T::Seq(b(std_from(x)), b(std_from(y))),
        S::ExtChoice(x, y) => T::Ext(b(std_from(x)), b(std_from(y))),
        S::IntChoice(x, y) => T::Int(b(std_from(x)), b(std_from(y))),
        S::Parallel(a, x, y) => T::Par(names(a), b(std_from(x)), b(std_from(y))),
        S::Interrupt(x, y) => T::Intr(b(std_from(x)), b(std_from(y))),
        S::Hide(x, a) => T::Hide(b(std_from(x)), names(a)),
        S::Rename(x, r) => T::Ren(b(std_from(x)), pairs(r)),
        S::Transaction(pp) => T::Txn(b(comp_from(pp))),
        S::Assign(x, q) => T::Assign(x.clone(), b(std_from(q))),
        S::ProcVar(x) => T::Var(x.clone()),
        S::Aux(x, y) => T::Aux(b(std_from(x)), b(std_from(y))),
        S::If(..) | S::While(..) | S::Named(_) => panic!("outside the oracle fragment: {p}"),
    }
}

pub fn comp_from(p: &CompProc) -> C {
    use CompProc as K;
    match p {
        K::Pair(x, y) => C::Pair(b(std_from(x)), b(std_from(y))),
        K::VarPair(x, v) => C::VPair(b(std_from(x)), v.clone()),
        K::Seq(x, y) => C::Seq(b(comp_from(x)), b(comp_from(y))),
        K::ExtChoice(x, y) => C::Ext(b(comp_from(x)), b(comp_from(y))),
        K::IntChoice(x, y) => C::Int(b(comp_from(x)), b(comp_from(y))),
        K::Parallel(a, x, y) => C::Par(names(a), b(comp_from(x)), b(comp_from(y))),
        K::Spec(x, y) => C::Spec(b(comp_from(x)), b(comp_from(y))),
        K::Hide(x, a) => C::Hide(b(comp_from(x)), names(a)),
        K::Rename(x, r) => C::Ren(b(comp_from(x)), pairs(r)),
        K::Aux(x, y) => C::Aux(b(comp_from(x)), b(std_from(y))),
        K::If(..) | K::While(..) | K::Named(_) => panic!("outside the oracle fragment: {p}"),
    }
}

pub fn from_engine(p: &Process) -> Any {
    match p {
        Process::Std(s) => Any::S(std_from(s)),
        Process::Comp(c) => Any::P(comp_from(c)),
    }
}
