//! Recursive-descent parser from tokens to the surface tree. Names are
//! resolved later, during elaboration.

use crate::event::EventName;
use crate::expr::{BoolExpr, CmpOp, IntExpr};

use super::error::{ParseError, ParseErrorKind};
use super::lexer::{Tok, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub(crate) enum SComp {
    Name(String),
    Int(i64),
    Expr(IntExpr),
}

#[derive(Debug, Clone)]
pub(crate) enum SField {
    Dot(SComp),
    Out(IntExpr),
    In(String),
}

#[derive(Debug, Clone)]
pub(crate) struct SEvent {
    pub head: String,
    pub fields: Vec<SField>,
    pub pos: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Const {
    Stop,
    Skip,
    Throw,
    Yield,
    Skipp,
    Throww,
    Yieldd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    Seq,
    Ext,
    Int,
    Interrupt,
    Pair,
    Spec,
}

#[derive(Debug, Clone)]
pub(crate) enum SProc {
    /// A bare identifier: a process name, a process variable or an event.
    Ident(String, Pos),
    Event(SEvent),
    Const(Const, Pos),
    Prefix(SEvent, Box<SProc>),
    Bin(BinOp, Box<SProc>, Box<SProc>, Pos),
    Par(Vec<SetElem>, Box<SProc>, Box<SProc>, Pos),
    Hide(Box<SProc>, Vec<SetElem>, Pos),
    Rename(Box<SProc>, Vec<(EventName, EventName)>, Pos),
    Txn(Box<SProc>, Pos),
    If(BoolExpr, Box<SProc>, Box<SProc>, Pos),
    While(BoolExpr, Box<SProc>, Pos),
    Assign(String, Box<SProc>, Pos),
    Indexed {
        var: String,
        lo: IntExpr,
        hi: IntExpr,
        body: Box<SProc>,
        pos: Pos,
    },
    Mu(String, Box<SProc>, Pos),
}

#[derive(Debug, Clone)]
pub(crate) struct SetElem {
    pub name: EventName,
}

#[derive(Debug, Clone)]
pub(crate) enum OptValue {
    Word(String),
    Int(i64),
}

#[derive(Debug, Clone)]
pub(crate) enum Item {
    Options(Vec<(String, OptValue, Pos)>),
    Domain(EventName, Vec<i64>, Pos),
    SyncSet(String, Vec<SetElem>, Pos),
    Def(String, SProc, Pos),
    Init(String, Vec<(String, i64)>, Pos),
}

const KEYWORDS: &[&str] = &[
    "SKIP", "STOP", "THROW", "YIELD", "SKIPP", "THROWW", "YIELDD", "if", "If", "then", "Then", "else",
    "Else", "while", "While", "do", "Do", "mu", "true", "false", "and", "or", "not", "options",
    "domain", "syncset", "init", "with",
];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
    eof: Pos,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(toks: Vec<Token>, src: &str) -> Self {
        let line = src.lines().count().max(1);
        let col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Parser {
            toks,
            i: 0,
            eof: Pos { line, col },
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.eof, |t| Pos {
            line: t.line,
            col: t.col,
        })
    }

    /// Tokens `i+k` and `i+k+1` are written without space between them.
    fn touching(&self, k: usize) -> bool {
        match (self.toks.get(self.i + k), self.toks.get(self.i + k + 1)) {
            (Some(a), Some(b)) => a.end == b.start,
            _ => false,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let p = self.pos();
        Err(ParseError::new(ParseErrorKind::Syntax(msg.into()), p.line, p.col))
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        match self.peek() {
            Some(t) => self.err(format!("expected {wanted}, found {}", describe(t))),
            None => self.err(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, wanted: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn eat_word(&mut self, words: &[&str]) -> bool {
        if words.iter().any(|w| self.is_word(w)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, wanted: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.i += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.unexpected("an integer"),
        }
    }

    pub fn finish(&self) -> PResult<()> {
        if self.peek().is_some() {
            return self.unexpected("end of input");
        }
        Ok(())
    }

    pub fn items(&mut self) -> PResult<Vec<Item>> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.item()?);
        }
        Ok(out)
    }

    fn item(&mut self) -> PResult<Item> {
        let pos = self.pos();
        if self.eat_word(&["options"]) {
            self.expect(&Tok::LBrace, "`{`")?;
            let mut opts = Vec::new();
            if !self.eat(&Tok::RBrace) {
                loop {
                    let p = self.pos();
                    let key = self.ident("an option name")?;
                    self.expect(&Tok::Eq, "`=`")?;
                    let value = match self.peek() {
                        Some(Tok::Int(v)) => OptValue::Int(*v),
                        Some(Tok::Ident(w)) => OptValue::Word(w.clone()),
                        _ => return self.unexpected("an option value"),
                    };
                    self.i += 1;
                    opts.push((key, value, p));
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `}`")?;
                }
            }
            return Ok(Item::Options(opts));
        }
        if self.eat_word(&["domain"]) {
            let chan = self.event_name(false)?;
            if !chan.data.is_empty() {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax("a channel domain is declared on a channel name".into()),
                    pos.line,
                    pos.col,
                ));
            }
            self.expect(&Tok::Eq, "`=`")?;
            let values = if self.eat(&Tok::LBrace) {
                let mut v = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        v.push(self.signed_int()?);
                        if self.eat(&Tok::RBrace) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `}`")?;
                    }
                }
                v.sort_unstable();
                v.dedup();
                v
            } else {
                let lo = self.signed_int()?;
                self.expect(&Tok::DotDot, "`..`")?;
                let hi = self.signed_int()?;
                if hi < lo {
                    return self.err("empty domain range");
                }
                (lo..=hi).collect()
            };
            return Ok(Item::Domain(chan, values, pos));
        }
        if self.eat_word(&["syncset"]) {
            let name = self.ident("a set name")?;
            self.expect(&Tok::Eq, "`=`")?;
            let set = self.event_set()?;
            return Ok(Item::SyncSet(name, set, pos));
        }
        if self.eat_word(&["init"]) {
            let name = self.ident("a process name")?;
            let mut binds = Vec::new();
            if self.eat_word(&["with"]) {
                loop {
                    let v = self.ident("a data variable")?;
                    self.expect(&Tok::Eq, "`=`")?;
                    binds.push((v, self.signed_int()?));
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            return Ok(Item::Init(name, binds, pos));
        }
        let name = self.ident("a definition, `options`, `domain`, `syncset` or `init`")?;
        self.expect(&Tok::Eq, "`=`")?;
        let body = self.proc()?;
        Ok(Item::Def(name, body, pos))
    }

    /// `a`, `a.b.1`, `c.(-2)`; no variables.
    fn event_name(&mut self, in_set: bool) -> PResult<EventName> {
        if in_set {
            match self.peek() {
                Some(Tok::Bang) => return self.terminal_in_set("!"),
                Some(Tok::Quest) => return self.terminal_in_set("?"),
                Some(Tok::Tick) => return self.terminal_in_set("✓"),
                _ => {}
            }
        }
        let head = self.ident("an event name")?;
        let mut parts = vec![head];
        let mut data = Vec::new();
        while self.eat(&Tok::Dot) {
            match self.peek().cloned() {
                Some(Tok::Ident(s)) if data.is_empty() && !is_keyword(&s) => {
                    self.i += 1;
                    parts.push(s);
                }
                Some(Tok::Int(v)) => {
                    self.i += 1;
                    data.push(v);
                }
                Some(Tok::LParen) => {
                    self.i += 1;
                    data.push(self.signed_int()?);
                    self.expect(&Tok::RParen, "`)`")?;
                }
                _ => return self.unexpected("an event component"),
            }
        }
        if in_set && matches!(self.peek(), Some(Tok::Bang | Tok::Quest)) {
            return self.err("communication fields are not allowed in an event set; list the channel");
        }
        Ok(EventName { parts: parts.into(), data })
    }

    fn terminal_in_set<T>(&self, sym: &str) -> PResult<T> {
        let p = self.pos();
        Err(ParseError::new(
            ParseErrorKind::SyncSetContainsTerminal(sym.into()),
            p.line,
            p.col,
        ))
    }

    fn event_set(&mut self) -> PResult<Vec<SetElem>> {
        self.expect(&Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            let name = self.event_name(true)?;
            out.push(SetElem { name });
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            self.expect(&Tok::Comma, "`,` or `}`")?;
        }
    }

    pub fn proc(&mut self) -> PResult<SProc> {
        let mut left = self.pair()?;
        loop {
            let pos = self.pos();
            if self.eat(&Tok::Par) {
                let sync = if self.peek() == Some(&Tok::LBrace) {
                    self.event_set()?
                } else {
                    Vec::new()
                };
                let right = self.pair()?;
                left = SProc::Par(sync, Box::new(left), Box::new(right), pos);
            } else if self.eat(&Tok::Spec) {
                let right = self.pair()?;
                left = SProc::Bin(BinOp::Spec, Box::new(left), Box::new(right), pos);
            } else {
                return Ok(left);
            }
        }
    }

    fn pair(&mut self) -> PResult<SProc> {
        let left = self.choice()?;
        let pos = self.pos();
        if self.eat(&Tok::Slash) {
            let right = self.choice()?;
            if self.peek() == Some(&Tok::Slash) {
                return self.err("compensation pairs do not chain; add parentheses");
            }
            return Ok(SProc::Bin(BinOp::Pair, Box::new(left), Box::new(right), pos));
        }
        Ok(left)
    }

    fn choice(&mut self) -> PResult<SProc> {
        let mut left = self.seq()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::LBrack) if self.peek_at(1) == Some(&Tok::RBrack) && self.touching(0) => {
                    self.i += 2;
                    BinOp::Ext
                }
                Some(Tok::IntChoice) => {
                    self.i += 1;
                    BinOp::Int
                }
                Some(Tok::Interrupt) => {
                    self.i += 1;
                    BinOp::Interrupt
                }
                _ => return Ok(left),
            };
            let right = self.seq()?;
            left = SProc::Bin(op, Box::new(left), Box::new(right), pos);
        }
    }

    fn seq(&mut self) -> PResult<SProc> {
        let mut left = self.prefix()?;
        loop {
            let pos = self.pos();
            if !self.eat(&Tok::Semi) {
                return Ok(left);
            }
            let right = self.prefix()?;
            left = SProc::Bin(BinOp::Seq, Box::new(left), Box::new(right), pos);
        }
    }

    fn prefix(&mut self) -> PResult<SProc> {
        let pos = self.pos();
        if let (Some(Tok::Ident(x)), Some(Tok::Assign)) = (self.peek(), self.peek_at(1)) {
            let x = x.clone();
            self.i += 2;
            let value = self.postfix()?;
            return Ok(SProc::Assign(x, Box::new(value), pos));
        }
        let operand = self.postfix()?;
        if !self.eat(&Tok::Arrow) {
            return Ok(operand);
        }
        let event = match operand {
            SProc::Ident(head, pos) => SEvent {
                head,
                fields: Vec::new(),
                pos,
            },
            SProc::Event(e) => e,
            _ => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax("the left operand of `->` must be an event".into()),
                    pos.line,
                    pos.col,
                ))
            }
        };
        let body = self.prefix()?;
        Ok(SProc::Prefix(event, Box::new(body)))
    }

    fn postfix(&mut self) -> PResult<SProc> {
        let mut p = self.primary()?;
        loop {
            let pos = self.pos();
            if self.eat(&Tok::Backslash) {
                let set = self.event_set()?;
                p = SProc::Hide(Box::new(p), set, pos);
            } else if self.peek() == Some(&Tok::LBrack)
                && self.peek_at(1) == Some(&Tok::LBrack)
                && self.touching(0)
            {
                self.i += 2;
                let mut pairs = Vec::new();
                loop {
                    let from = self.event_name(false)?;
                    self.expect(&Tok::LArrow, "`<-`")?;
                    let to = self.event_name(false)?;
                    pairs.push((from, to));
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                if !(self.peek() == Some(&Tok::RBrack) && self.peek_at(1) == Some(&Tok::RBrack)) {
                    return self.unexpected("`]]`");
                }
                self.i += 2;
                p = SProc::Rename(Box::new(p), pairs, pos);
            } else {
                return Ok(p);
            }
        }
    }

    fn primary(&mut self) -> PResult<SProc> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.i += 1;
                let p = self.proc()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(p)
            }
            Some(Tok::LBrack) => {
                self.i += 1;
                let p = self.proc()?;
                self.expect(&Tok::RBrack, "`]` closing the transaction block")?;
                Ok(SProc::Txn(Box::new(p), pos))
            }
            Some(Tok::Par) => {
                self.i += 1;
                let var = self.ident("an index variable")?;
                self.expect(&Tok::Eq, "`=`")?;
                let lo = self.int_expr()?;
                self.expect(&Tok::DotDot, "`..`")?;
                let hi = self.int_expr()?;
                self.expect(&Tok::At, "`@`")?;
                let body = self.proc()?;
                Ok(SProc::Indexed {
                    var,
                    lo,
                    hi,
                    body: Box::new(body),
                    pos,
                })
            }
            Some(Tok::Ident(w)) => {
                let c = match w.as_str() {
                    "STOP" => Some(Const::Stop),
                    "SKIP" => Some(Const::Skip),
                    "THROW" => Some(Const::Throw),
                    "YIELD" => Some(Const::Yield),
                    "SKIPP" => Some(Const::Skipp),
                    "THROWW" => Some(Const::Throww),
                    "YIELDD" => Some(Const::Yieldd),
                    _ => None,
                };
                if let Some(c) = c {
                    self.i += 1;
                    return Ok(SProc::Const(c, pos));
                }
                match w.as_str() {
                    "if" | "If" => {
                        self.i += 1;
                        let b = self.bool_expr()?;
                        if !self.eat_word(&["then", "Then"]) {
                            return self.unexpected("`then`");
                        }
                        let x = self.proc()?;
                        if !self.eat_word(&["else", "Else"]) {
                            return self.unexpected("`else`");
                        }
                        let y = self.proc()?;
                        Ok(SProc::If(b, Box::new(x), Box::new(y), pos))
                    }
                    "while" | "While" => {
                        self.i += 1;
                        let b = self.bool_expr()?;
                        if !self.eat_word(&["do", "Do"]) {
                            return self.unexpected("`do`");
                        }
                        let body = self.proc()?;
                        Ok(SProc::While(b, Box::new(body), pos))
                    }
                    "mu" => {
                        self.i += 1;
                        let name = self.ident("a process name")?;
                        self.expect(&Tok::Dot, "`.`")?;
                        let body = self.proc()?;
                        Ok(SProc::Mu(name, Box::new(body), pos))
                    }
                    _ => self.event_or_ident(),
                }
            }
            _ => self.unexpected("a process"),
        }
    }

    fn event_or_ident(&mut self) -> PResult<SProc> {
        let pos = self.pos();
        let head = self.ident("a process")?;
        let mut fields = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Dot) => {
                    self.i += 1;
                    let comp = match self.peek().cloned() {
                        Some(Tok::Ident(s)) if !is_keyword(&s) => {
                            self.i += 1;
                            SComp::Name(s)
                        }
                        Some(Tok::Int(v)) => {
                            self.i += 1;
                            SComp::Int(v)
                        }
                        Some(Tok::LParen) => {
                            self.i += 1;
                            let e = self.int_expr()?;
                            self.expect(&Tok::RParen, "`)`")?;
                            SComp::Expr(e)
                        }
                        _ => return self.unexpected("an event component"),
                    };
                    fields.push(SField::Dot(comp));
                }
                Some(Tok::Bang) => {
                    self.i += 1;
                    fields.push(SField::Out(self.int_atom()?));
                }
                Some(Tok::Quest) => {
                    self.i += 1;
                    fields.push(SField::In(self.ident("an input variable")?));
                }
                _ => break,
            }
        }
        if fields.is_empty() {
            Ok(SProc::Ident(head, pos))
        } else {
            Ok(SProc::Event(SEvent { head, fields, pos }))
        }
    }

    pub fn int_expr(&mut self) -> PResult<IntExpr> {
        let mut left = self.int_term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => IntExpr::Add,
                Some(Tok::Minus) => IntExpr::Sub,
                _ => return Ok(left),
            };
            self.i += 1;
            let right = self.int_term()?;
            left = op(Box::new(left), Box::new(right));
        }
    }

    fn int_term(&mut self) -> PResult<IntExpr> {
        let mut left = self.int_unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => IntExpr::Mul,
                Some(Tok::Slash) => IntExpr::Div,
                _ => return Ok(left),
            };
            self.i += 1;
            let right = self.int_unary()?;
            left = op(Box::new(left), Box::new(right));
        }
    }

    fn int_unary(&mut self) -> PResult<IntExpr> {
        if self.eat(&Tok::Minus) {
            if let Some(Tok::Int(v)) = self.peek() {
                let v = *v;
                self.i += 1;
                return Ok(IntExpr::Lit(-v));
            }
            return Ok(IntExpr::Neg(Box::new(self.int_unary()?)));
        }
        self.int_atom()
    }

    fn int_atom(&mut self) -> PResult<IntExpr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.i += 1;
                Ok(IntExpr::Lit(v))
            }
            Some(Tok::Ident(s)) if !is_keyword(&s) => {
                self.i += 1;
                Ok(IntExpr::Var(s))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.int_expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.unexpected("an integer expression"),
        }
    }

    pub fn bool_expr(&mut self) -> PResult<BoolExpr> {
        let mut left = self.bool_and()?;
        while self.eat_word(&["or"]) {
            let right = self.bool_and()?;
            left = BoolExpr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn bool_and(&mut self) -> PResult<BoolExpr> {
        let mut left = self.bool_not()?;
        while self.eat_word(&["and"]) {
            let right = self.bool_not()?;
            left = BoolExpr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn bool_not(&mut self) -> PResult<BoolExpr> {
        if self.eat_word(&["not"]) {
            return Ok(BoolExpr::Not(Box::new(self.bool_not()?)));
        }
        if self.eat_word(&["true"]) {
            return Ok(BoolExpr::Const(true));
        }
        if self.eat_word(&["false"]) {
            return Ok(BoolExpr::Const(false));
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.i;
            self.i += 1;
            if let Ok(b) = self.bool_expr() {
                if self.eat(&Tok::RParen) && !self.at_arith_or_cmp() {
                    return Ok(b);
                }
            }
            self.i = save;
        }
        let l = self.int_expr()?;
        let op = match self.peek() {
            Some(Tok::Eq) => CmpOp::Eq,
            Some(Tok::Ne) => CmpOp::Ne,
            Some(Tok::Lt) => CmpOp::Lt,
            Some(Tok::Le) => CmpOp::Le,
            Some(Tok::Gt) => CmpOp::Gt,
            Some(Tok::Ge) => CmpOp::Ge,
            _ => return self.unexpected("a comparison operator"),
        };
        self.i += 1;
        let r = self.int_expr()?;
        Ok(BoolExpr::Cmp(op, l, r))
    }

    fn at_arith_or_cmp(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge | Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash
            )
        )
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        other => format!("{other:?}"),
    }
}
