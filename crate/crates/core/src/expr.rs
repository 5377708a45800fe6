//! Integer and boolean data expressions over the local store.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::store::LocalStore;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntExpr {
    Lit(i64),
    Var(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
    Div(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolExpr {
    Const(bool),
    Cmp(CmpOp, IntExpr, IntExpr),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound data variable `{0}`")]
    UnboundDataVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
}

pub fn eval_int(e: &IntExpr, sigma: &LocalStore) -> Result<i64, EvalError> {
    let bin = |a: &IntExpr, b: &IntExpr| -> Result<(i64, i64), EvalError> {
        Ok((eval_int(a, sigma)?, eval_int(b, sigma)?))
    };
    match e {
        IntExpr::Lit(v) => Ok(*v),
        IntExpr::Var(name) => sigma
            .get(name)
            .ok_or_else(|| EvalError::UnboundDataVariable(name.clone())),
        IntExpr::Neg(a) => eval_int(a, sigma)?.checked_neg().ok_or(EvalError::Overflow),
        IntExpr::Add(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_add(y).ok_or(EvalError::Overflow)
        }
        IntExpr::Sub(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_sub(y).ok_or(EvalError::Overflow)
        }
        IntExpr::Mul(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_mul(y).ok_or(EvalError::Overflow)
        }
        IntExpr::Div(a, b) => {
            let (x, y) = bin(a, b)?;
            if y == 0 {
                return Err(EvalError::DivisionByZero);
            }
            // i64 `/` truncates toward zero
            x.checked_div(y).ok_or(EvalError::Overflow)
        }
    }
}

pub fn eval_bool(b: &BoolExpr, sigma: &LocalStore) -> Result<bool, EvalError> {
    match b {
        BoolExpr::Const(v) => Ok(*v),
        BoolExpr::Cmp(op, l, r) => {
            let (x, y) = (eval_int(l, sigma)?, eval_int(r, sigma)?);
            Ok(match op {
                CmpOp::Eq => x == y,
                CmpOp::Ne => x != y,
                CmpOp::Lt => x < y,
                CmpOp::Le => x <= y,
                CmpOp::Gt => x > y,
                CmpOp::Ge => x >= y,
            })
        }
        BoolExpr::Not(a) => Ok(!eval_bool(a, sigma)?),
        BoolExpr::And(a, c) => Ok(eval_bool(a, sigma)? && eval_bool(c, sigma)?),
        BoolExpr::Or(a, c) => Ok(eval_bool(a, sigma)? || eval_bool(c, sigma)?),
    }
}

impl IntExpr {
    pub fn var(name: &str) -> Self {
        IntExpr::Var(name.to_string())
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            IntExpr::Lit(_) => {}
            IntExpr::Var(v) => {
                out.insert(v.clone());
            }
            IntExpr::Neg(a) => a.vars(out),
            IntExpr::Add(a, b) | IntExpr::Sub(a, b) | IntExpr::Mul(a, b) | IntExpr::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    /// Replaces variables by the values `lookup` returns for them.
    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<i64>) -> IntExpr {
        let sub = |e: &IntExpr| Box::new(e.substitute(lookup));
        match self {
            IntExpr::Lit(v) => IntExpr::Lit(*v),
            IntExpr::Var(v) => lookup(v).map(IntExpr::Lit).unwrap_or_else(|| self.clone()),
            IntExpr::Neg(a) => IntExpr::Neg(sub(a)),
            IntExpr::Add(a, b) => IntExpr::Add(sub(a), sub(b)),
            IntExpr::Sub(a, b) => IntExpr::Sub(sub(a), sub(b)),
            IntExpr::Mul(a, b) => IntExpr::Mul(sub(a), sub(b)),
            IntExpr::Div(a, b) => IntExpr::Div(sub(a), sub(b)),
        }
    }

    /// Form usable directly after `.`, `!` in an event: literals and
    /// variables bare, anything else parenthesised.
    pub fn as_component(&self) -> String {
        match self {
            IntExpr::Lit(v) if *v >= 0 => v.to_string(),
            IntExpr::Var(v) => v.clone(),
            other => format!("({other})"),
        }
    }
}

impl BoolExpr {
    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Cmp(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
            BoolExpr::Not(a) => a.vars(out),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<i64>) -> BoolExpr {
        match self {
            BoolExpr::Const(v) => BoolExpr::Const(*v),
            BoolExpr::Cmp(op, a, b) => BoolExpr::Cmp(*op, a.substitute(lookup), b.substitute(lookup)),
            BoolExpr::Not(a) => BoolExpr::Not(Box::new(a.substitute(lookup))),
            BoolExpr::And(a, b) => BoolExpr::And(Box::new(a.substitute(lookup)), Box::new(b.substitute(lookup))),
            BoolExpr::Or(a, b) => BoolExpr::Or(Box::new(a.substitute(lookup)), Box::new(b.substitute(lookup))),
        }
    }
}

fn int_prec(e: &IntExpr) -> u8 {
    match e {
        IntExpr::Add(..) | IntExpr::Sub(..) => 1,
        IntExpr::Mul(..) | IntExpr::Div(..) => 2,
        IntExpr::Neg(_) => 3,
        IntExpr::Lit(v) if *v < 0 => 3,
        _ => 4,
    }
}

fn write_int(f: &mut fmt::Formatter<'_>, e: &IntExpr, min: u8) -> fmt::Result {
    let p = int_prec(e);
    if p < min {
        f.write_str("(")?;
    }
    match e {
        IntExpr::Lit(v) => write!(f, "{v}")?,
        IntExpr::Var(v) => f.write_str(v)?,
        IntExpr::Neg(a) => {
            f.write_str("-")?;
            write_int(f, a, 4)?;
        }
        IntExpr::Add(a, b) | IntExpr::Sub(a, b) | IntExpr::Mul(a, b) | IntExpr::Div(a, b) => {
            let op = match e {
                IntExpr::Add(..) => "+",
                IntExpr::Sub(..) => "-",
                IntExpr::Mul(..) => "*",
                _ => "/",
            };
            write_int(f, a, p)?;
            write!(f, " {op} ")?;
            // keeps `x - -1` from reading as a comment
            let right_min = if int_prec(b) == 3 { 4 } else { p + 1 };
            write_int(f, b, right_min)?;
        }
    }
    if p < min {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int(f, self, 0)
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        })
    }
}

fn bool_prec(b: &BoolExpr) -> u8 {
    match b {
        BoolExpr::Or(..) => 1,
        BoolExpr::And(..) => 2,
        BoolExpr::Not(_) => 3,
        _ => 4,
    }
}

fn write_bool(f: &mut fmt::Formatter<'_>, b: &BoolExpr, min: u8) -> fmt::Result {
    let p = bool_prec(b);
    if p < min {
        f.write_str("(")?;
    }
    match b {
        BoolExpr::Const(v) => write!(f, "{v}")?,
        BoolExpr::Cmp(op, l, r) => write!(f, "{l} {op} {r}")?,
        BoolExpr::Not(a) => {
            f.write_str("not ")?;
            write_bool(f, a, 3)?;
        }
        BoolExpr::And(a, c) => {
            write_bool(f, a, 2)?;
            f.write_str(" and ")?;
            write_bool(f, c, 3)?;
        }
        BoolExpr::Or(a, c) => {
            write_bool(f, a, 1)?;
            f.write_str(" or ")?;
            write_bool(f, c, 2)?;
        }
    }
    if p < min {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bool(f, self, 0)
    }
}
