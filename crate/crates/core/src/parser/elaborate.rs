//! From surface trees to process terms: name resolution, inference of
//! standard versus compensable, sugar expansion and indexed parallel.

use std::collections::{BTreeMap, BTreeSet};

use crate::event::{CommEvent, CommField, EventName};
use crate::expr::{eval_int, BoolExpr, IntExpr};
use crate::process::{instantiate_index, CompProc, EventSet, Process, RenamingRelation, StdProc};
use crate::store::LocalStore;

use super::error::{ParseError, ParseErrorKind};
use super::syntax::{BinOp, Const, Pos, SComp, SEvent, SField, SProc, SetElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Std,
    Comp,
}

type EResult<T> = Result<T, ParseError>;

fn err<T>(kind: ParseErrorKind, pos: Pos) -> EResult<T> {
    Err(ParseError::new(kind, pos.line, pos.col))
}

fn type_err<T>(msg: &str, pos: Pos) -> EResult<T> {
    err(ParseErrorKind::Type(msg.to_string()), pos)
}

/// All-uppercase identifiers name process variables.
pub(crate) fn is_proc_var_name(s: &str) -> bool {
    s.chars().any(|c| c.is_alphabetic()) && s.chars().all(|c| !c.is_lowercase())
}

pub(crate) fn pos_of(p: &SProc) -> Pos {
    match p {
        SProc::Ident(_, pos)
        | SProc::Const(_, pos)
        | SProc::Bin(.., pos)
        | SProc::Par(.., pos)
        | SProc::Hide(.., pos)
        | SProc::Rename(.., pos)
        | SProc::Txn(_, pos)
        | SProc::If(.., pos)
        | SProc::While(.., pos)
        | SProc::Assign(.., pos)
        | SProc::Mu(.., pos)
        | SProc::Indexed { pos, .. } => *pos,
        SProc::Event(e) | SProc::Prefix(e, _) => e.pos,
    }
}

/// Moves `mu N . body` binders out into named definitions.
pub(crate) fn lift_mu(p: SProc, out: &mut Vec<(String, SProc, Pos)>) -> SProc {
    let lift = |b: Box<SProc>, out: &mut Vec<(String, SProc, Pos)>| Box::new(lift_mu(*b, out));
    match p {
        SProc::Mu(name, body, pos) => {
            let body = lift_mu(*body, out);
            out.push((name.clone(), body, pos));
            SProc::Ident(name, pos)
        }
        SProc::Prefix(e, b) => SProc::Prefix(e, lift(b, out)),
        SProc::Bin(op, a, b, pos) => {
            let a = lift(a, out);
            SProc::Bin(op, a, lift(b, out), pos)
        }
        SProc::Par(s, a, b, pos) => {
            let a = lift(a, out);
            SProc::Par(s, a, lift(b, out), pos)
        }
        SProc::Hide(a, s, pos) => SProc::Hide(lift(a, out), s, pos),
        SProc::Rename(a, r, pos) => SProc::Rename(lift(a, out), r, pos),
        SProc::Txn(a, pos) => SProc::Txn(lift(a, out), pos),
        SProc::If(b, x, y, pos) => {
            let x = lift(x, out);
            SProc::If(b, x, lift(y, out), pos)
        }
        SProc::While(b, x, pos) => SProc::While(b, lift(x, out), pos),
        SProc::Assign(x, a, pos) => SProc::Assign(x, lift(a, out), pos),
        SProc::Indexed { var, lo, hi, body, pos } => SProc::Indexed {
            var,
            lo,
            hi,
            body: lift(body, out),
            pos,
        },
        other => other,
    }
}

/// Input variables anywhere in the tree.
pub(crate) fn collect_inputs(p: &SProc, out: &mut BTreeSet<String>) {
    let ev = |e: &SEvent, out: &mut BTreeSet<String>| {
        for f in &e.fields {
            if let SField::In(v) = f {
                out.insert(v.clone());
            }
        }
    };
    match p {
        SProc::Event(e) => ev(e, out),
        SProc::Prefix(e, b) => {
            ev(e, out);
            collect_inputs(b, out);
        }
        SProc::Bin(_, a, b, _) | SProc::Par(_, a, b, _) | SProc::If(_, a, b, _) => {
            collect_inputs(a, out);
            collect_inputs(b, out);
        }
        SProc::Hide(a, ..)
        | SProc::Rename(a, ..)
        | SProc::Txn(a, _)
        | SProc::While(_, a, _)
        | SProc::Assign(_, a, _)
        | SProc::Mu(_, a, _) => collect_inputs(a, out),
        SProc::Indexed { body, .. } => collect_inputs(body, out),
        SProc::Ident(..) | SProc::Const(..) => {}
    }
}

pub(crate) struct Elaborator<'a> {
    pub kinds: &'a BTreeMap<String, Option<Kind>>,
    pub aliases: &'a BTreeMap<String, EventSet>,
    /// Data variables: initial bindings and input variables.
    pub data_vars: &'a BTreeSet<String>,
    pub init: &'a LocalStore,
    /// Index variables in scope, with their current values.
    pub index: Vec<(String, i64)>,
}

impl Elaborator<'_> {
    fn is_data_var(&self, v: &str) -> bool {
        self.data_vars.contains(v) || self.index.iter().any(|(i, _)| i == v)
    }

    fn check_expr_vars(&self, vars: BTreeSet<String>, pos: Pos) -> EResult<()> {
        for v in vars {
            if !self.is_data_var(&v) {
                return err(ParseErrorKind::UnresolvedName(v), pos);
            }
        }
        Ok(())
    }

    fn int(&self, e: &IntExpr, pos: Pos) -> EResult<IntExpr> {
        let mut vars = BTreeSet::new();
        e.vars(&mut vars);
        self.check_expr_vars(vars, pos)?;
        Ok(e.clone())
    }

    fn boolean(&self, b: &BoolExpr, pos: Pos) -> EResult<BoolExpr> {
        let mut vars = BTreeSet::new();
        b.vars(&mut vars);
        self.check_expr_vars(vars, pos)?;
        Ok(b.clone())
    }

    /// Kind of a term, `None` while it depends only on names whose kind is
    /// not yet known.
    pub fn kind(&self, p: &SProc) -> Option<Kind> {
        let join = |a: Option<Kind>, b: Option<Kind>| a.or(b);
        match p {
            SProc::Ident(n, _) => match self.kinds.get(n) {
                Some(k) => *k,
                None => Some(Kind::Std),
            },
            SProc::Event(_) | SProc::Prefix(..) | SProc::Txn(..) | SProc::Assign(..) => Some(Kind::Std),
            SProc::Const(c, _) => Some(match c {
                Const::Skipp | Const::Throww | Const::Yieldd => Kind::Comp,
                _ => Kind::Std,
            }),
            SProc::Bin(BinOp::Pair | BinOp::Spec, ..) => Some(Kind::Comp),
            SProc::Bin(BinOp::Interrupt, ..) => Some(Kind::Std),
            SProc::Bin(_, a, b, _) | SProc::Par(_, a, b, _) | SProc::If(_, a, b, _) => {
                join(self.kind(a), self.kind(b))
            }
            SProc::Hide(a, ..) | SProc::Rename(a, ..) | SProc::While(_, a, _) | SProc::Mu(_, a, _) => self.kind(a),
            SProc::Indexed { body, .. } => self.kind(body),
        }
    }

    fn kind_or_std(&self, p: &SProc) -> Kind {
        self.kind(p).unwrap_or(Kind::Std)
    }

    pub fn elaborate(&mut self, p: &SProc) -> EResult<Process> {
        match self.kind_or_std(p) {
            Kind::Std => Ok(Process::Std(self.std(p)?)),
            Kind::Comp => Ok(Process::Comp(self.comp(p)?)),
        }
    }

    fn event_set(&self, elems: &[SetElem]) -> EventSet {
        let mut out = EventSet::new();
        for e in elems {
            let alias = (e.name.parts.len() == 1 && e.name.data.is_empty())
                .then(|| self.aliases.get(&e.name.parts[0]))
                .flatten();
            match alias {
                Some(set) => out.extend(set.iter().cloned()),
                None => {
                    out.insert(e.name.clone());
                }
            }
        }
        out
    }

    fn event(&self, e: &SEvent) -> EResult<CommEvent> {
        let mut parts = vec![e.head.clone()];
        let mut fields = Vec::new();
        for f in &e.fields {
            match f {
                SField::Dot(SComp::Name(n)) if fields.is_empty() && !self.is_data_var(n) => parts.push(n.clone()),
                SField::Dot(SComp::Name(n)) => {
                    if !self.is_data_var(n) {
                        return err(ParseErrorKind::UnresolvedName(n.clone()), e.pos);
                    }
                    fields.push(CommField::Dot(IntExpr::Var(n.clone())));
                }
                SField::Dot(SComp::Int(v)) => fields.push(CommField::Dot(IntExpr::Lit(*v))),
                SField::Dot(SComp::Expr(x)) => fields.push(CommField::Dot(self.int(x, e.pos)?)),
                SField::Out(x) => fields.push(CommField::Out(self.int(x, e.pos)?)),
                SField::In(v) => fields.push(CommField::In(v.clone())),
            }
        }
        Ok(CommEvent {
            name: EventName { parts: parts.into(), data: Vec::new() },
            fields,
        })
    }

    fn std(&mut self, p: &SProc) -> EResult<StdProc> {
        let want = "a compensable process where a standard process is expected";
        Ok(match p {
            SProc::Ident(n, pos) => match self.kinds.get(n) {
                Some(Some(Kind::Comp)) => return type_err(want, *pos),
                Some(_) => StdProc::Named(n.clone()),
                None if is_proc_var_name(n) => StdProc::ProcVar(n.clone()),
                None => StdProc::Atomic(self.event(&SEvent {
                    head: n.clone(),
                    fields: Vec::new(),
                    pos: *pos,
                })?),
            },
            SProc::Event(e) => StdProc::Atomic(self.event(e)?),
            SProc::Const(c, pos) => match c {
                Const::Stop => StdProc::Nil,
                Const::Skip => StdProc::Skip,
                Const::Throw => StdProc::Throw,
                Const::Yield => StdProc::Yield,
                _ => return type_err(want, *pos),
            },
            SProc::Prefix(e, body) => StdProc::prefix(self.event(e)?, self.std(body)?),
            SProc::Bin(op, a, b, pos) => {
                let (x, y) = (self.std(a)?, self.std(b)?);
                match op {
                    BinOp::Seq => StdProc::seq(x, y),
                    BinOp::Ext => StdProc::ext(x, y),
                    BinOp::Int => StdProc::int(x, y),
                    BinOp::Interrupt => StdProc::interrupt(x, y),
                    BinOp::Pair | BinOp::Spec => return type_err(want, *pos),
                }
            }
            SProc::Par(sync, a, b, _) => {
                let set = self.event_set(sync);
                StdProc::par(set, self.std(a)?, self.std(b)?)
            }
            SProc::Hide(a, set, _) => {
                let set = self.event_set(set);
                StdProc::hide(self.std(a)?, set)
            }
            SProc::Rename(a, pairs, _) => StdProc::rename(self.std(a)?, RenamingRelation::new(pairs.iter().cloned())),
            SProc::Txn(body, pos) => {
                if self.kind(body) == Some(Kind::Std) {
                    return type_err("a transaction block needs a compensable body", *pos);
                }
                StdProc::txn(self.comp(body)?)
            }
            SProc::If(b, x, y, pos) => StdProc::cond(self.boolean(b, *pos)?, self.std(x)?, self.std(y)?),
            SProc::While(b, body, pos) => StdProc::while_do(self.boolean(b, *pos)?, self.std(body)?),
            SProc::Assign(x, value, pos) => {
                if !is_proc_var_name(x) || self.kinds.contains_key(x) {
                    return type_err(&format!("`{x}` cannot be assigned; process variables are upper case"), *pos);
                }
                StdProc::assign(x, self.std(value)?)
            }
            SProc::Indexed { .. } => match self.indexed(p)? {
                Process::Std(s) => s,
                Process::Comp(_) => return type_err(want, pos_of(p)),
            },
            SProc::Mu(_, _, pos) => return type_err("unexpected binder", *pos),
        })
    }

    fn comp(&mut self, p: &SProc) -> EResult<CompProc> {
        let want = "a standard process where a compensable process is expected";
        Ok(match p {
            SProc::Ident(n, pos) => match self.kinds.get(n) {
                Some(Some(Kind::Std)) | None => return type_err(want, *pos),
                Some(_) => CompProc::Named(n.clone()),
            },
            SProc::Const(c, pos) => match c {
                Const::Skipp => CompProc::skipp(),
                Const::Throww => CompProc::throww(),
                Const::Yieldd => CompProc::yieldd(),
                _ => return type_err(want, *pos),
            },
            SProc::Bin(BinOp::Pair, a, b, _) => {
                let fwd = self.std(a)?;
                match &**b {
                    SProc::Ident(x, _) if !self.kinds.contains_key(x) && is_proc_var_name(x) => {
                        CompProc::var_pair(fwd, x)
                    }
                    _ => CompProc::pair(fwd, self.std(b)?),
                }
            }
            SProc::Bin(op, a, b, pos) => {
                let (x, y) = (self.comp(a)?, self.comp(b)?);
                match op {
                    BinOp::Seq => CompProc::seq(x, y),
                    BinOp::Ext => CompProc::ext(x, y),
                    BinOp::Int => CompProc::int(x, y),
                    BinOp::Spec => CompProc::spec(x, y),
                    BinOp::Interrupt => return type_err("the fault handler `[>` applies to standard processes only", *pos),
                    BinOp::Pair => unreachable!(),
                }
            }
            SProc::Par(sync, a, b, _) => {
                let set = self.event_set(sync);
                CompProc::par(set, self.comp(a)?, self.comp(b)?)
            }
            SProc::Hide(a, set, _) => {
                let set = self.event_set(set);
                CompProc::hide(self.comp(a)?, set)
            }
            SProc::Rename(a, pairs, _) => {
                CompProc::rename(self.comp(a)?, RenamingRelation::new(pairs.iter().cloned()))
            }
            SProc::If(b, x, y, pos) => CompProc::cond(self.boolean(b, *pos)?, self.comp(x)?, self.comp(y)?),
            SProc::While(b, body, pos) => CompProc::while_do(self.boolean(b, *pos)?, self.comp(body)?),
            SProc::Indexed { .. } => match self.indexed(p)? {
                Process::Comp(c) => c,
                Process::Std(_) => return type_err(want, pos_of(p)),
            },
            other => return type_err(want, pos_of(other)),
        })
    }

    fn bound(&self, e: &IntExpr, pos: Pos) -> EResult<i64> {
        let mut sigma = self.init.clone();
        for (v, x) in &self.index {
            sigma.set(v, *x);
        }
        eval_int(e, &sigma).map_err(|e| {
            ParseError::new(ParseErrorKind::IndexedBound(format!("unresolvable bound: {e}")), pos.line, pos.col)
        })
    }

    fn indexed(&mut self, p: &SProc) -> EResult<Process> {
        let SProc::Indexed { var, lo, hi, body, pos } = p else { unreachable!() };
        let (lo, hi) = (self.bound(lo, *pos)?, self.bound(hi, *pos)?);
        if hi < lo {
            return err(ParseErrorKind::IndexedBound(format!("empty range {lo}..{hi}")), *pos);
        }
        let mut copies = Vec::new();
        for v in lo..=hi {
            self.index.push((var.clone(), v));
            let copy = self.elaborate(body);
            self.index.pop();
            copies.push(instantiate_index(&copy?, var, v));
        }
        nest_parallel(copies).map_err(|m| ParseError::new(ParseErrorKind::Type(m), pos.line, pos.col))
    }
}

/// Right-nested parallel composition with an empty synchronisation set.
pub(crate) fn nest_parallel(mut copies: Vec<Process>) -> Result<Process, String> {
    let mut acc = copies.pop().ok_or("no copies")?;
    while let Some(p) = copies.pop() {
        acc = match (p, acc) {
            (Process::Std(a), Process::Std(b)) => Process::Std(StdProc::par(EventSet::new(), a, b)),
            (Process::Comp(a), Process::Comp(b)) => Process::Comp(CompProc::par(EventSet::new(), a, b)),
            _ => return Err("copies of an indexed parallel differ in kind".into()),
        };
    }
    Ok(acc)
}
