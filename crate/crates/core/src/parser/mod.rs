//! Model files: parsing, static checks and printing.
//!
//! ```text
//! model      = { item } ;
//! item       = options | domain | syncset | definition | init ;
//! options    = "options" "{" [ ident "=" value { "," ident "=" value } ] "}" ;
//! domain     = "domain" channel "=" ( int ".." int | "{" int { "," int } "}" ) ;
//! syncset    = "syncset" Ident "=" set ;
//! definition = Ident "=" proc ;
//! init       = "init" Ident [ "with" var "=" int { "," var "=" int } ] ;
//!
//! proc    = pair { ( "||" [ set ] | "<>" ) pair } ;
//! pair    = choice [ "/" choice ] ;
//! choice  = seq { ( "[]" | "|~|" | "[>" ) seq } ;
//! seq     = prefix { ";" prefix } ;
//! prefix  = VAR ":=" postfix | postfix [ "->" prefix ] ;
//! postfix = primary { "\" set | "[[" event "<-" event { "," event "<-" event } "]]" } ;
//! primary = "(" proc ")" | "[" proc "]" | event | Name | VAR
//!         | "STOP" | "SKIP" | "THROW" | "YIELD" | "SKIPP" | "THROWW" | "YIELDD"
//!         | "if" bexpr "then" proc "else" proc | "while" bexpr "do" proc
//!         | "mu" Name "." proc | "||" var "=" iexpr ".." iexpr "@" proc ;
//! event   = ident { "." comp | "!" iatom | "?" var } ;
//! set     = "{" [ event { "," event } ] "}" ;
//! ```
//!
//! The left operand of `->` must be an event. `if`, `while`, `mu` and
//! indexed parallel extend as far to the right as possible.
//!
//! An identifier names, in this order: a defined process; a process
//! variable when it is all upper case; an event otherwise. After the
//! first `.`, a lower-case identifier that is a data variable (bound by
//! `init`, by an input anywhere in the model, or an index) reads that
//! variable; otherwise it is part of the event name. Inside `{..}` a
//! lone identifier naming a `syncset` stands for its members.

mod elaborate;
mod error;
mod lexer;
mod pretty;
mod syntax;

use std::collections::{BTreeMap, BTreeSet};

pub use error::{ParseError, ParseErrorKind};
pub use pretty::{pretty_print, write_event_set};

use crate::process::{instantiate_index, walk, CompProc, EventSet, Process, Visit};
use crate::semantics::{Definitions, EngineOptions, FaultLabelMode, Semantics, UnassignedVarMode};
use crate::store::{Configuration, LocalStore};

use elaborate::{collect_inputs, lift_mu, nest_parallel, Elaborator, Kind};
use syntax::{Item, OptValue, Parser, Pos, SProc};

/// The initial process reference and data bindings of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialState {
    pub process: String,
    pub sigma: LocalStore,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelDefinition {
    /// Standard and compensable definitions, and channel domains.
    pub definitions: Definitions,
    pub sync_set_aliases: BTreeMap<String, EventSet>,
    pub options: EngineOptions,
    pub initial: Option<InitialState>,
}

impl ModelDefinition {
    pub fn semantics(&self) -> Semantics<'_> {
        Semantics::new(&self.definitions, self.options)
    }

    /// The body of the process named by `init`, with its bindings and an
    /// empty ρ.
    pub fn initial_configuration(&self) -> Option<Configuration> {
        let init = self.initial.as_ref()?;
        let proc = self.definition(&init.process)?;
        Some(Configuration::new(proc).with_sigma(init.sigma.clone()))
    }

    /// The definition body for `name`, of either kind.
    pub fn definition(&self, name: &str) -> Option<Process> {
        self.definitions
            .standard
            .get(name)
            .map(|p| Process::Std(p.clone()))
            .or_else(|| self.definitions.compensable.get(name).map(|p| Process::Comp(p.clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreshnessViolation {
    pub var: String,
    /// Number of variable pairs binding the variable.
    pub bindings: usize,
}

fn at<T>(kind: ParseErrorKind, pos: Pos) -> Result<T, ParseError> {
    Err(ParseError::new(kind, pos.line, pos.col))
}

fn apply_option(opts: &mut EngineOptions, key: &str, value: &OptValue, pos: Pos) -> Result<(), ParseError> {
    let bad = || at(ParseErrorKind::Syntax(format!("invalid value for option `{key}`")), pos);
    match (key, value) {
        ("interruptible_atoms", OptValue::Word(w)) if w == "true" || w == "false" => {
            opts.interruptible_atoms = w == "true";
        }
        ("fault_mode", OptValue::Word(w)) => {
            opts.fault_label_mode = match w.as_str() {
                "propagate" => FaultLabelMode::Propagate,
                "contain" => FaultLabelMode::Contain,
                _ => return bad(),
            }
        }
        ("unassigned_vars", OptValue::Word(w)) => {
            opts.unassigned_var_mode = match w.as_str() {
                "error" => UnassignedVarMode::Error,
                "skip" => UnassignedVarMode::DefaultSkip,
                _ => return bad(),
            }
        }
        ("max_channel_enumeration", OptValue::Int(n)) if *n > 0 => {
            opts.max_channel_enumeration = *n as usize;
        }
        ("interruptible_atoms" | "fault_mode" | "unassigned_vars" | "max_channel_enumeration", _) => return bad(),
        _ => return at(ParseErrorKind::Syntax(format!("unknown option `{key}`")), pos),
    }
    Ok(())
}

/// Parses and checks a model file.
pub fn parse_model(text: &str) -> Result<ModelDefinition, ParseError> {
    let tokens = lexer::lex(text)?;
    let items = Parser::new(tokens, text).items()?;

    let mut model = ModelDefinition::default();
    let mut defs: Vec<(String, SProc, Pos)> = Vec::new();
    let mut alias_items = Vec::new();
    let mut init_item = None;
    for item in items {
        match item {
            Item::Options(opts) => {
                for (k, v, pos) in &opts {
                    apply_option(&mut model.options, k, v, *pos)?;
                }
            }
            Item::Domain(chan, values, pos) => {
                if model.definitions.domains.insert(chan.clone(), values).is_some() {
                    return at(ParseErrorKind::DuplicateDefinition(format!("domain {chan}")), pos);
                }
            }
            Item::SyncSet(name, elems, pos) => alias_items.push((name, elems, pos)),
            Item::Def(name, body, pos) => {
                let mut lifted = Vec::new();
                let body = lift_mu(body, &mut lifted);
                defs.extend(lifted);
                defs.push((name, body, pos));
            }
            Item::Init(name, binds, pos) => {
                if init_item.is_some() {
                    return at(ParseErrorKind::DuplicateDefinition("init".into()), pos);
                }
                init_item = Some((name, binds, pos));
            }
        }
    }

    // aliases may mention earlier aliases
    for (name, elems, pos) in alias_items {
        if model.sync_set_aliases.contains_key(&name) {
            return at(ParseErrorKind::DuplicateDefinition(format!("syncset {name}")), pos);
        }
        let mut set = EventSet::new();
        for e in elems {
            let alias = (e.name.parts.len() == 1 && e.name.data.is_empty())
                .then(|| model.sync_set_aliases.get(&e.name.parts[0]))
                .flatten();
            match alias {
                Some(members) => set.extend(members.iter().cloned()),
                None => {
                    set.insert(e.name);
                }
            }
        }
        model.sync_set_aliases.insert(name, set);
    }

    let mut kinds: BTreeMap<String, Option<Kind>> = BTreeMap::new();
    for (name, _, pos) in &defs {
        if kinds.insert(name.clone(), None).is_some() {
            return at(ParseErrorKind::DuplicateDefinition(name.clone()), *pos);
        }
    }

    let sigma: LocalStore = init_item
        .as_ref()
        .map(|(_, binds, _)| binds.iter().cloned().collect())
        .unwrap_or_default();
    let mut data_vars: BTreeSet<String> = sigma.iter().map(|(k, _)| k.clone()).collect();
    for (_, body, _) in &defs {
        collect_inputs(body, &mut data_vars);
    }

    loop {
        let mut changed = false;
        for (name, body, _) in &defs {
            if kinds[name].is_some() {
                continue;
            }
            let e = Elaborator {
                kinds: &kinds,
                aliases: &model.sync_set_aliases,
                data_vars: &data_vars,
                init: &sigma,
                index: Vec::new(),
            };
            if let Some(k) = e.kind(body) {
                kinds.insert(name.clone(), Some(k));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for k in kinds.values_mut() {
        k.get_or_insert(Kind::Std);
    }

    for (name, body, _) in &defs {
        let mut e = Elaborator {
            kinds: &kinds,
            aliases: &model.sync_set_aliases,
            data_vars: &data_vars,
            init: &sigma,
            index: Vec::new(),
        };
        match e.elaborate(body)? {
            Process::Std(p) => {
                model.definitions.standard.insert(name.clone(), p);
            }
            Process::Comp(p) => {
                model.definitions.compensable.insert(name.clone(), p);
            }
        }
    }

    if let Some((name, _, pos)) = init_item {
        if !kinds.contains_key(&name) {
            return at(ParseErrorKind::UnresolvedName(name), pos);
        }
        model.initial = Some(InitialState { process: name, sigma });
    }

    if let Some(v) = check_freshness(&model).into_iter().next() {
        return Err(ParseError::new(ParseErrorKind::Freshness(v.var), 0, 0));
    }
    Ok(model)
}

/// Parses a single process term with no definitions in scope. Every
/// lower-case name bound by an input is a data variable.
pub fn parse_process(text: &str) -> Result<Process, ParseError> {
    let tokens = lexer::lex(text)?;
    let mut parser = Parser::new(tokens, text);
    let body = parser.proc()?;
    parser.finish()?;
    let mut lifted = Vec::new();
    let body = lift_mu(body, &mut lifted);
    if let Some((name, _, pos)) = lifted.into_iter().next() {
        return at(ParseErrorKind::Syntax(format!("`mu {name}` needs a model")), pos);
    }
    let mut data_vars = BTreeSet::new();
    collect_inputs(&body, &mut data_vars);
    let kinds = BTreeMap::new();
    let aliases = BTreeMap::new();
    let sigma = LocalStore::default();
    let mut e = Elaborator {
        kinds: &kinds,
        aliases: &aliases,
        data_vars: &data_vars,
        init: &sigma,
        index: Vec::new(),
    };
    e.elaborate(&body)
}

struct VarPairs(BTreeMap<String, usize>);

impl Visit for VarPairs {
    fn comp(&mut self, p: &CompProc) {
        if let CompProc::VarPair(_, x) = p {
            *self.0.entry(x.clone()).or_default() += 1;
        }
    }
}

/// Process variables bound by more than one variable pair in the model.
/// Assignments are not bindings.
pub fn check_freshness(model: &ModelDefinition) -> Vec<FreshnessViolation> {
    let mut v = VarPairs(BTreeMap::new());
    for p in model.definitions.standard.values() {
        walk(&Process::Std(p.clone()), &mut v);
    }
    for p in model.definitions.compensable.values() {
        walk(&Process::Comp(p.clone()), &mut v);
    }
    v.0.into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(var, bindings)| FreshnessViolation { var, bindings })
        .collect()
}

/// `|| var = lo .. hi @ body`: one copy of `body` per index value, composed
/// right-nested in parallel over the empty set.
pub fn expand_indexed_parallel(var: &str, lo: i64, hi: i64, body: &Process) -> Result<Process, ParseErrorKind> {
    if hi < lo {
        return Err(ParseErrorKind::IndexedBound(format!("empty range {lo}..{hi}")));
    }
    let copies = (lo..=hi).map(|v| instantiate_index(body, var, v)).collect();
    nest_parallel(copies).map_err(ParseErrorKind::Type)
}

/// Glyph table: surface syntax and the usual mathematical notation.
pub const GLYPHS: &[(&str, &str)] = &[
    ("a -> p", "a → p"),
    ("p ; q", "p ; q"),
    ("p [] q", "p □ q"),
    ("p |~| q", "p ⊓ q"),
    ("p [> q", "p ▷ q"),
    ("p ||{A} q", "p ∥_A q"),
    ("p || q", "p ∥ q (terminal events only)"),
    ("p / q", "p ÷ q"),
    ("p / X", "p ÷ X"),
    ("pp <> qq", "pp ⊠ qq"),
    ("p \\{A}", "p \\ A"),
    ("p [[a <- b]]", "p[[a ← b]]"),
    ("[ pp ]", "[pp]"),
    ("X := p", "X := p"),
    ("STOP", "∅"),
    ("SKIPP / THROWW / YIELDD", "SKIP ÷ SKIP / THROW ÷ SKIP / YIELD ÷ SKIP"),
    ("|| i = 1 .. n @ p", "∥_{i=1}^{n} p"),
    ("mu N . p", "μN.p"),
    ("<| p , q |>", "⟨p, q⟩ (internal)"),
    ("EMIT(!)", "the internal process that performs one terminal event"),
];
