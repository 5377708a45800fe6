use std::fmt::Write;
use std::fs;
use std::path::Path;

use deccsp::explorer::{compensation_phases, ExploreError, FaultSelector};
use deccsp::parser::{pretty_print, ParseError, ParseErrorKind};
use deccsp::semantics::StepError;
use deccsp::{
    build_lts, find_deadlocks, parse_model, Bounds, Configuration, EventName, FaultLabelMode, Label, Lts, Marker,
    ModelDefinition, Semantics, Trace, UnassignedVarMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Command, Common, Fail, Mode, EXIT_PARSE, EXIT_SEMANTIC};

pub fn load(common: &Common) -> Result<ModelDefinition, Fail> {
    let text = fs::read_to_string(&common.model)
        .map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", common.model.display())))?;
    let mut model = parse_model(&text).map_err(|e| parse_fail(&common.model, &e))?;
    let opts = &mut model.options;
    match common.mode {
        Some(Mode::Contain) => opts.fault_label_mode = FaultLabelMode::Contain,
        Some(Mode::Propagate) => opts.fault_label_mode = FaultLabelMode::Propagate,
        None => {}
    }
    if common.interruptible_atoms {
        opts.interruptible_atoms = true;
    }
    if common.default_skip_vars {
        opts.unassigned_var_mode = UnassignedVarMode::DefaultSkip;
    }
    Ok(model)
}

/// Lexical and syntax errors exit with 1, failed static checks with 2.
fn parse_fail(path: &Path, e: &ParseError) -> Fail {
    let code = match e.kind {
        ParseErrorKind::Lex(_) | ParseErrorKind::Syntax(_) => EXIT_PARSE,
        _ => EXIT_SEMANTIC,
    };
    Fail::new(code, format!("{}:{e}", path.display()))
}

pub fn initial(model: &ModelDefinition) -> Result<Configuration, Fail> {
    model
        .initial_configuration()
        .ok_or_else(|| Fail::new(EXIT_SEMANTIC, "the model has no `init` declaration"))
}

pub fn step_fail(e: StepError) -> Fail {
    Fail::new(EXIT_SEMANTIC, e.to_string())
}

fn explore_fail(e: ExploreError) -> Fail {
    Fail::new(EXIT_SEMANTIC, e.to_string())
}

pub fn bounds(common: &Common) -> Bounds {
    Bounds {
        max_depth: common.depth,
        max_states: common.max_states,
    }
}

fn explore(model: &ModelDefinition, common: &Common) -> Result<Lts, Fail> {
    let lts = build_lts(&model.semantics(), initial(model)?, bounds(common)).map_err(explore_fail)?;
    if let Some(path) = &common.dot {
        fs::write(path, lts.to_dot()).map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    }
    Ok(lts)
}

/// Runs a batch command and returns what it prints.
pub fn execute(cmd: &Command) -> Result<String, Fail> {
    match cmd {
        Command::Parse(c) => parse(c),
        Command::Run(c) => run(c),
        Command::Traces(c) => traces(c),
        Command::Lts(c) => lts(c),
        Command::Deadlocks(c) => deadlocks(c),
        Command::Compensations { common, through } => compensations(common, through),
        Command::Step { common, replay: Some(script) } => crate::repl::replay(common, script),
        Command::Step { replay: None, .. } | Command::Check { .. } => unreachable!("not a batch command"),
    }
}

fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialise");
    s.push('\n');
    s
}

fn parse(c: &Common) -> Result<String, Fail> {
    let model = load(c)?;
    let text = pretty_print(&model);
    if !c.json {
        return Ok(text);
    }
    let defs = |m: Vec<(String, String)>| Value::Object(m.into_iter().map(|(k, v)| (k, Value::String(v))).collect());
    let d = &model.definitions;
    Ok(render(json!({
        "standard": defs(d.standard.iter().map(|(k, p)| (k.clone(), p.to_string())).collect()),
        "compensable": defs(d.compensable.iter().map(|(k, p)| (k.clone(), p.to_string())).collect()),
        "init": model.initial.as_ref().map(|i| json!({"process": i.process, "sigma": i.sigma.to_string()})),
        "text": text,
    })))
}

fn trace_json(t: &Trace) -> Value {
    json!({"labels": t.strings(), "marker": t.marker.name()})
}

fn traces(c: &Common) -> Result<String, Fail> {
    let model = load(c)?;
    let lts = explore(&model, c)?;
    let set = lts.traces(c.elide_tau);
    if c.json {
        return Ok(render(Value::Array(set.iter().map(trace_json).collect())));
    }
    let mut out = String::new();
    for t in &set {
        let _ = writeln!(out, "{t}");
    }
    Ok(out)
}

fn lts(c: &Common) -> Result<String, Fail> {
    let model = load(c)?;
    let lts = explore(&model, c)?;
    if !c.json {
        return Ok(lts.to_text());
    }
    let mut edges: Vec<_> = lts.transitions.iter().collect();
    edges.sort();
    Ok(render(json!({
        "initial": lts.initial,
        "states": lts.states.iter().enumerate().map(|(i, s)| json!({
            "index": i,
            "process": s.proc.to_string(),
            "sigma": s.sigma.to_string(),
            "rho": s.rho.to_string(),
        })).collect::<Vec<_>>(),
        "transitions": edges.iter().map(|e| json!({
            "src": e.src,
            "label": e.label.to_string(),
            "rule": e.rule,
            "dst": e.dst,
        })).collect::<Vec<_>>(),
        "truncated": lts.truncated.iter().collect::<Vec<_>>(),
    })))
}

fn path_text(path: &[Label]) -> String {
    if path.is_empty() {
        return "(start)".into();
    }
    path.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn deadlocks(c: &Common) -> Result<String, Fail> {
    let model = load(c)?;
    let lts = explore(&model, c)?;
    let found = find_deadlocks(&lts);
    if c.json {
        return Ok(render(json!({
            "deadlocks": found.iter().map(|d| json!({
                "state": lts.states[d.state].brief(),
                "path": d.path.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "states": lts.states.len(),
            "truncated": lts.truncated.len(),
        })));
    }
    let mut out = String::new();
    for d in &found {
        let _ = writeln!(out, "deadlock {}", lts.states[d.state].brief());
        let _ = writeln!(out, "  after {}", path_text(&d.path));
    }
    let _ = writeln!(
        out,
        "{} deadlock(s) in {} states, {} truncated",
        found.len(),
        lts.states.len(),
        lts.truncated.len()
    );
    Ok(out)
}

fn compensations(c: &Common, through: &[String]) -> Result<String, Fail> {
    let model = load(c)?;
    let mut selector = FaultSelector::any();
    for e in through {
        let name = EventName::parse(e).ok_or_else(|| Fail::new(EXIT_SEMANTIC, format!("`{e}` is not an event name")))?;
        selector.through.push(name);
    }
    let lts = explore(&model, c)?;
    let phases = compensation_phases(&model.semantics(), &lts, &selector).map_err(explore_fail)?;
    if c.json {
        return Ok(render(Value::Array(
            phases
                .iter()
                .map(|p| json!({
                    "compensation": p.activated.brief(),
                    "traces": p.traces.iter().map(trace_json).collect::<Vec<_>>(),
                }))
                .collect(),
        )));
    }
    let mut out = String::new();
    if phases.is_empty() {
        out.push_str("no compensation is activated on a selected path\n");
    }
    for p in &phases {
        let _ = writeln!(out, "compensation {}", p.activated.brief());
        for t in &p.traces {
            let _ = writeln!(out, "  {t}");
        }
    }
    Ok(out)
}

/// How a path that can go no further ended.
pub fn stop_marker(state: &Configuration, arrived: Option<&Label>) -> Marker {
    match arrived.and_then(|l| l.terminal()) {
        Some(w) if state.is_nil() => Marker::after(w),
        _ => Marker::Deadlock,
    }
}

fn run(c: &Common) -> Result<String, Fail> {
    let model = load(c)?;
    let sem: Semantics = model.semantics();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut cur = initial(&model)?;
    let mut arrived: Option<Label> = None;
    let mut steps = Vec::new();
    let marker = loop {
        let ts = sem.step(&cur).map_err(step_fail)?;
        if ts.is_empty() {
            break stop_marker(&cur, arrived.as_ref());
        }
        if steps.len() == c.depth {
            break Marker::Truncated;
        }
        let t = ts[rng.gen_range(0..ts.len())].clone();
        steps.push((t.label.clone(), t.rule, t.target.brief()));
        arrived = Some(t.label);
        cur = t.target;
    };
    let start = initial(&model)?.brief();
    let shown: Vec<_> = steps.iter().filter(|(l, _, _)| !(c.elide_tau && *l == Label::Tau)).collect();
    if c.json {
        return Ok(render(json!({
            "initial": start,
            "steps": shown.iter().map(|(l, r, s)| json!({"label": l.to_string(), "rule": r, "state": s})).collect::<Vec<_>>(),
            "marker": marker.name(),
        })));
    }
    let mut out = format!("start {start}\n");
    for (l, r, s) in shown {
        let _ = writeln!(out, "{l} [{r}] {s}");
    }
    let _ = writeln!(out, "{marker}");
    Ok(out)
}
