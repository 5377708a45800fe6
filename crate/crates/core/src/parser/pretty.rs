//! Printing of process terms and models in the ASCII surface syntax.
//!
//! Binding levels, loosest first: `||` `||{..}` `<>`, then `/`, then
//! `[]` `|~|` `[>`, then `;`, then `->` and `:=`, then the postfix `\{..}`
//! and `[[..]]`. Binary operators group to the left.

use std::fmt::{self, Write};

use crate::event::EventName;
use crate::process::{CompProc, EventSet, Process, RenamingRelation, StdProc};
use crate::semantics::{FaultLabelMode, UnassignedVarMode};

use super::ModelDefinition;

const PAR: u8 = 1;
const PAIR: u8 = 2;
const CHOICE: u8 = 3;
const SEQ: u8 = 4;
const PREFIX: u8 = 5;
const POSTFIX: u8 = 6;
const ATOM: u8 = 7;

pub fn write_event_set(f: &mut impl Write, set: &EventSet) -> fmt::Result {
    f.write_char('{')?;
    for (i, e) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_char('}')
}

fn write_renaming(f: &mut impl Write, r: &RenamingRelation) -> fmt::Result {
    f.write_str("[[")?;
    for (i, (a, b)) in r.pairs().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a} <- {b}")?;
    }
    f.write_str("]]")
}

fn std_level(p: &StdProc) -> u8 {
    use StdProc::*;
    match p {
        Parallel(..) => PAR,
        ExtChoice(..) | IntChoice(..) | Interrupt(..) => CHOICE,
        Seq(..) => SEQ,
        Prefix(..) | Assign(..) => PREFIX,
        Hide(..) | Rename(..) => POSTFIX,
        // keyword forms extend as far right as possible
        If(..) | While(..) => 0,
        _ => ATOM,
    }
}

fn comp_level(p: &CompProc) -> u8 {
    use CompProc::*;
    match p {
        Parallel(..) | Spec(..) => PAR,
        Pair(..) | VarPair(..) => PAIR,
        ExtChoice(..) | IntChoice(..) => CHOICE,
        Seq(..) => SEQ,
        Hide(..) | Rename(..) => POSTFIX,
        If(..) | While(..) => 0,
        _ => ATOM,
    }
}

fn write_std(f: &mut impl Write, p: &StdProc, min: u8) -> fmt::Result {
    use StdProc::*;
    let level = std_level(p);
    let paren = level < min;
    if paren {
        f.write_char('(')?;
    }
    match p {
        Nil => f.write_str("STOP")?,
        Skip => f.write_str("SKIP")?,
        Throw => f.write_str("THROW")?,
        Yield => f.write_str("YIELD")?,
        Emit(w) => write!(f, "EMIT({w})")?,
        Atomic(e) => write!(f, "{e}")?,
        Prefix(e, q) => {
            write!(f, "{e} -> ")?;
            write_std(f, q, PREFIX)?;
        }
        Seq(a, b) => binary(f, a, " ; ", b, SEQ, |f, p, m| write_std(f, p, m))?,
        ExtChoice(a, b) => binary(f, a, " [] ", b, CHOICE, |f, p, m| write_std(f, p, m))?,
        IntChoice(a, b) => binary(f, a, " |~| ", b, CHOICE, |f, p, m| write_std(f, p, m))?,
        Interrupt(a, b) => binary(f, a, " [> ", b, CHOICE, |f, p, m| write_std(f, p, m))?,
        Parallel(sync, a, b) => {
            write_std(f, a, PAR)?;
            par_op(f, sync)?;
            write_std(f, b, PAR + 1)?;
        }
        Hide(a, set) => {
            write_std(f, a, POSTFIX)?;
            f.write_str(" \\")?;
            write_event_set(f, set)?;
        }
        Rename(a, r) => {
            write_std(f, a, POSTFIX)?;
            f.write_char(' ')?;
            write_renaming(f, r)?;
        }
        Transaction(pp) => {
            f.write_str("[ ")?;
            write_comp(f, pp, 0)?;
            f.write_str(" ]")?;
        }
        If(b, x, y) => {
            write!(f, "if {b} then ")?;
            write_std(f, x, 0)?;
            f.write_str(" else ")?;
            write_std(f, y, 0)?;
        }
        While(b, body) => {
            write!(f, "while {b} do ")?;
            write_std(f, body, 0)?;
        }
        Named(n) | ProcVar(n) => f.write_str(n)?,
        Assign(x, q) => {
            write!(f, "{x} := ")?;
            write_std(f, q, POSTFIX)?;
        }
        Aux(a, b) => {
            f.write_str("<| ")?;
            write_std(f, a, 0)?;
            f.write_str(" , ")?;
            write_std(f, b, 0)?;
            f.write_str(" |>")?;
        }
    }
    if paren {
        f.write_char(')')?;
    }
    Ok(())
}

fn write_comp(f: &mut impl Write, p: &CompProc, min: u8) -> fmt::Result {
    use CompProc::*;
    let level = comp_level(p);
    let paren = level < min;
    if paren {
        f.write_char('(')?;
    }
    match p {
        Pair(a, b) => {
            write_std(f, a, PAIR + 1)?;
            f.write_str(" / ")?;
            write_std(f, b, PAIR + 1)?;
        }
        VarPair(a, x) => {
            write_std(f, a, PAIR + 1)?;
            write!(f, " / {x}")?;
        }
        Seq(a, b) => binary(f, a, " ; ", b, SEQ, |f, p, m| write_comp(f, p, m))?,
        ExtChoice(a, b) => binary(f, a, " [] ", b, CHOICE, |f, p, m| write_comp(f, p, m))?,
        IntChoice(a, b) => binary(f, a, " |~| ", b, CHOICE, |f, p, m| write_comp(f, p, m))?,
        Spec(a, b) => binary(f, a, " <> ", b, PAR, |f, p, m| write_comp(f, p, m))?,
        Parallel(sync, a, b) => {
            write_comp(f, a, PAR)?;
            par_op(f, sync)?;
            write_comp(f, b, PAR + 1)?;
        }
        Hide(a, set) => {
            write_comp(f, a, POSTFIX)?;
            f.write_str(" \\")?;
            write_event_set(f, set)?;
        }
        Rename(a, r) => {
            write_comp(f, a, POSTFIX)?;
            f.write_char(' ')?;
            write_renaming(f, r)?;
        }
        If(b, x, y) => {
            write!(f, "if {b} then ")?;
            write_comp(f, x, 0)?;
            f.write_str(" else ")?;
            write_comp(f, y, 0)?;
        }
        While(b, body) => {
            write!(f, "while {b} do ")?;
            write_comp(f, body, 0)?;
        }
        Named(n) => f.write_str(n)?,
        Aux(a, b) => {
            f.write_str("<| ")?;
            write_comp(f, a, 0)?;
            f.write_str(" , ")?;
            write_std(f, b, 0)?;
            f.write_str(" |>")?;
        }
    }
    if paren {
        f.write_char(')')?;
    }
    Ok(())
}

fn binary<W: Write, T>(
    f: &mut W,
    a: &T,
    op: &str,
    b: &T,
    level: u8,
    each: impl Fn(&mut W, &T, u8) -> fmt::Result,
) -> fmt::Result {
    each(f, a, level)?;
    f.write_str(op)?;
    each(f, b, level + 1)
}

fn par_op(f: &mut impl Write, sync: &EventSet) -> fmt::Result {
    if sync.is_empty() {
        f.write_str(" || ")
    } else {
        f.write_str(" ||")?;
        write_event_set(f, sync)?;
        f.write_char(' ')
    }
}

impl fmt::Display for StdProc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_std(f, self, 0)
    }
}

impl fmt::Display for CompProc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comp(f, self, 0)
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Std(p) => write_std(f, p, 0),
            Process::Comp(p) => write_comp(f, p, 0),
        }
    }
}

fn write_domain(out: &mut String, chan: &EventName, values: &[i64]) -> fmt::Result {
    let contiguous = values.windows(2).all(|w| w[1] == w[0] + 1);
    if contiguous && !values.is_empty() {
        writeln!(out, "domain {chan} = {}..{}", values[0], values[values.len() - 1])
    } else {
        let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(out, "domain {chan} = {{{}}}", items.join(", "))
    }
}

/// The model in the surface syntax; parsing the result yields an equal model.
pub fn pretty_print(model: &ModelDefinition) -> String {
    let mut out = String::new();
    let o = model.options;
    let mode = match o.fault_label_mode {
        FaultLabelMode::Propagate => "propagate",
        FaultLabelMode::Contain => "contain",
    };
    let vars = match o.unassigned_var_mode {
        UnassignedVarMode::Error => "error",
        UnassignedVarMode::DefaultSkip => "skip",
    };
    let _ = writeln!(
        out,
        "options {{ interruptible_atoms = {}, fault_mode = {mode}, unassigned_vars = {vars}, max_channel_enumeration = {} }}",
        o.interruptible_atoms, o.max_channel_enumeration
    );
    for (chan, values) in &model.definitions.domains {
        let _ = write_domain(&mut out, chan, values);
    }
    for (name, set) in &model.sync_set_aliases {
        let _ = write!(out, "syncset {name} = ");
        let _ = write_event_set(&mut out, set);
        out.push('\n');
    }
    for (name, p) in &model.definitions.standard {
        let _ = writeln!(out, "{name} = {p}");
    }
    for (name, p) in &model.definitions.compensable {
        let _ = writeln!(out, "{name} = {p}");
    }
    if let Some(init) = &model.initial {
        let _ = write!(out, "init {}", init.process);
        let binds: Vec<String> = init.sigma.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        if !binds.is_empty() {
            let _ = write!(out, " with {}", binds.join(", "));
        }
        out.push('\n');
    }
    out
}
