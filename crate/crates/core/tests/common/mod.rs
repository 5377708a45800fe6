#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::collections::BTreeSet;

use deccsp::{build_lts, Bounds, Configuration, EngineOptions, FaultLabelMode, Process, Semantics, UnassignedVarMode};

pub fn engine_options(o: oracle::Opts) -> EngineOptions {
    EngineOptions {
        interruptible_atoms: o.interruptible,
        fault_label_mode: if o.contain { FaultLabelMode::Contain } else { FaultLabelMode::Propagate },
        unassigned_var_mode: if o.default_skip { UnassignedVarMode::DefaultSkip } else { UnassignedVarMode::Error },
        ..EngineOptions::default()
    }
}

pub fn all_opts() -> Vec<oracle::Opts> {
    let mut v = Vec::new();
    for i in 0..8 {
        v.push(oracle::Opts {
            interruptible: i & 1 != 0,
            contain: i & 2 != 0,
            default_skip: i & 4 != 0,
        });
    }
    v
}

/// Engine traces as strings, or `Err` with the message.
pub fn engine_traces(p: &Process, depth: usize, o: oracle::Opts, elide: bool) -> Result<BTreeSet<String>, String> {
    let sem = Semantics::standalone(engine_options(o));
    let bounds = Bounds { max_depth: depth, max_states: 10_000_000 };
    let lts = build_lts(&sem, Configuration::new(p.clone()), bounds).map_err(|e| e.to_string())?;
    Ok(lts.traces(elide).into_iter().map(|t| t.to_string()).collect())
}

/// Compares engine and oracle; `Ok(())` when they agree, errors counting as equal.
pub fn agree(p: &Process, depth: usize, o: oracle::Opts, elide: bool) -> Result<(), String> {
    let e = engine_traces(p, depth, o, elide);
    let r = oracle::oracle_traces(&oracle::from_engine(p), depth, o, elide);
    match (e, r) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        (Err(_), Err(_)) => Ok(()),
        (a, b) => Err(format!("{p} under {o:?}:\n engine {a:?}\n oracle {b:?}")),
    }
}
