use super::*;
use crate::event::TerminalEvent::{Done, Fault, Yield};
use crate::expr::{BoolExpr, IntExpr};
use crate::parser::{parse_model, parse_process};
use crate::process::event_set;

fn sem() -> Semantics<'static> {
    Semantics::standalone(EngineOptions::default())
}

fn cfg(p: impl Into<Process>) -> Configuration {
    Configuration::new(p)
}

fn labels(ts: &[Transition]) -> Vec<String> {
    ts.iter().map(|t| t.label.to_string()).collect()
}

fn step_src(src: &str) -> Vec<Transition> {
    sem().step(&cfg(parse_process(src).unwrap())).unwrap()
}

/// Follows the only transition each time, returning the labels.
fn run_unique(s: &Semantics, mut c: Configuration) -> Vec<String> {
    let mut out = Vec::new();
    loop {
        let ts = s.step(&c).unwrap();
        match ts.len() {
            0 => return out,
            1 => {
                out.push(ts[0].label.to_string());
                c = ts[0].target.clone();
            }
            n => panic!("{n} transitions from {c}"),
        }
    }
}

#[test]
fn primitives() {
    let s = sem();
    let one = |p: StdProc| s.step(&cfg(p)).unwrap();
    let t = one(StdProc::Skip);
    assert_eq!((t.len(), &t[0].label, t[0].target.is_nil()), (1, &Label::Terminal(Done), true));
    let t = one(StdProc::Throw);
    assert_eq!((t.len(), &t[0].label), (1, &Label::Terminal(Fault)));
    let t = one(StdProc::Yield);
    assert_eq!(labels(&t), ["?", "✓"]);
    assert!(t.iter().all(|t| t.target.is_nil()));
    assert!(one(StdProc::Nil).is_empty());
}

#[test]
fn pair_done_continues_with_compensation() {
    let s = sem();
    let ts = s.step(&cfg(CompProc::pair(StdProc::atom("a"), StdProc::atom("b")))).unwrap();
    assert_eq!(labels(&ts), ["a"]);
    let ts = s.step(&ts[0].target).unwrap();
    assert_eq!(labels(&ts), ["✓"]);
    assert_eq!(ts[0].rule, "pair-done");
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::atom("b")));
}

#[test]
fn assignment_and_retrieval() {
    let s = sem();
    let ts = s.step(&cfg(StdProc::assign("X", StdProc::atom("c")))).unwrap();
    assert_eq!(labels(&ts), ["τ"]);
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::Skip));
    assert_eq!(ts[0].target.rho.get("X"), Some(&StdProc::atom("c")));

    let rho: GlobalStore = [("X".to_string(), StdProc::atom("c"))].into_iter().collect();
    let ts = s.step(&cfg(StdProc::var("X")).with_rho(rho.clone())).unwrap();
    assert_eq!(labels(&ts), ["τ"]);
    assert_eq!(ts[0].target, cfg(StdProc::atom("c")).with_rho(rho));
}

#[test]
fn unassigned_variable_modes() {
    let err = sem().step(&cfg(StdProc::var("X"))).unwrap_err();
    assert_eq!(err, StepError::UnboundProcessVariable("X".into()));
    let opts = EngineOptions {
        unassigned_var_mode: UnassignedVarMode::DefaultSkip,
        ..Default::default()
    };
    let ts = Semantics::standalone(opts).step(&cfg(StdProc::var("X"))).unwrap();
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::Skip));
}

#[test]
fn sequence_runs_a_tau_b_done() {
    let p = StdProc::seq(StdProc::atom("a"), StdProc::atom("b"));
    assert_eq!(run_unique(&sem(), cfg(p)), ["a", "τ", "b", "✓"]);
}

#[test]
fn while_false_unfolds_then_skips() {
    let p = StdProc::while_do(BoolExpr::Const(false), StdProc::atom("a"));
    let s = sem();
    let ts = s.step(&cfg(p)).unwrap();
    assert_eq!((labels(&ts), ts[0].rule), (vec!["τ".to_string()], "while-unfold"));
    assert!(matches!(ts[0].target.proc, Process::Std(StdProc::If(..))));
    let ts = s.step(&ts[0].target).unwrap();
    assert_eq!((labels(&ts), ts[0].rule), (vec!["τ".to_string()], "if-false"));
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::Skip));
}

#[test]
fn unbound_data_variable_is_an_error() {
    let p = StdProc::cond(
        BoolExpr::Cmp(crate::expr::CmpOp::Eq, IntExpr::var("ns"), IntExpr::Lit(0)),
        StdProc::Skip,
        StdProc::Skip,
    );
    assert_eq!(sem().step(&cfg(p)).unwrap_err(), StepError::UnboundDataVariable("ns".into()));
}

#[test]
fn terminal_pairing_in_parallel() {
    for w in TerminalEvent::ALL {
        for w2 in TerminalEvent::ALL {
            let emit = |w: TerminalEvent| match w {
                Fault => StdProc::Throw,
                Yield => StdProc::Emit(Yield),
                Done => StdProc::Skip,
            };
            let ts = sem().step(&cfg(StdProc::par(EventSet::new(), emit(w), emit(w2)))).unwrap();
            assert_eq!(ts.len(), 1);
            assert_eq!(ts[0].label, Label::Terminal(compose_terminal(w, w2)));
            assert_eq!(ts[0].rule, "par-term");
            assert!(ts[0].target.is_nil());
        }
    }
}

#[test]
fn synchronised_prefixes() {
    let ts = step_src("(a -> SKIP) ||{a} (a -> SKIP)");
    assert_eq!(labels(&ts), ["a"]);
    let ts = sem().step(&ts[0].target).unwrap();
    assert_eq!(labels(&ts), ["✓"]);
}

#[test]
fn value_handshake_binds_receiver() {
    let m = parse_model("P = (CreditCheck!5 -> SKIP) ||{CreditCheck} (CreditCheck?n -> SKIP)\ninit P").unwrap();
    let s = m.semantics();
    let ts = s.step(&m.initial_configuration().unwrap()).unwrap();
    assert_eq!(labels(&ts), ["CreditCheck.5"]);
    assert_eq!(ts[0].rule, "par-sync");
    assert_eq!(ts[0].target.sigma.get("n"), Some(5));
}

#[test]
fn unsynchronised_input_needs_a_domain() {
    let err = step_src_err("c?v -> SKIP");
    assert_eq!(err, StepError::UnsynchronizedInputWithoutDomain(EventName::atom("c")));
    let m = parse_model("domain c = 1..3\nP = c?v -> SKIP\ninit P").unwrap();
    let s = m.semantics();
    let ts = s.step(&cfg(m.definitions.standard["P"].clone())).unwrap();
    assert_eq!(labels(&ts), ["c.1", "c.2", "c.3"]);
    assert_eq!(ts[2].target.sigma.get("v"), Some(3));

    let mut opts = m.options;
    opts.max_channel_enumeration = 2;
    let err = Semantics::new(&m.definitions, opts)
        .step(&cfg(m.definitions.standard["P"].clone()))
        .unwrap_err();
    assert!(matches!(err, StepError::ChannelEnumerationLimit { count: 3, limit: 2, .. }));
}

fn step_src_err(src: &str) -> StepError {
    sem().step(&cfg(parse_process(src).unwrap())).unwrap_err()
}

#[test]
fn hiding_and_renaming() {
    let ts = step_src("(a -> b -> SKIP) \\{a}");
    assert_eq!((labels(&ts), ts[0].rule), (vec!["τ".to_string()], "hide-hidden"));
    let ts = sem().step(&ts[0].target).unwrap();
    assert_eq!((labels(&ts), ts[0].rule), (vec!["b".to_string()], "hide-pass"));

    let ts = step_src("(a -> SKIP) [[a <- b, a <- c]]");
    assert_eq!(labels(&ts), ["b", "c"]);
    assert!(ts.iter().all(|t| t.rule == "rename-map"));
    let ts = step_src("(c.1 -> SKIP) [[c <- d.x]]");
    assert_eq!(labels(&ts), ["d.x.1"]);
}

#[test]
fn transaction_fault_activates_compensation() {
    let ts = step_src("[ THROWW ]");
    assert_eq!(labels(&ts), ["!"]);
    assert_eq!(ts[0].rule, "txn-fault");
    assert_eq!(ts[0].activated, Some(StdProc::Skip));
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::Skip));

    let ts = step_src("[ SKIPP ]");
    assert_eq!((labels(&ts), ts[0].target.is_nil()), (vec!["✓".to_string()], true));

    let contain = EngineOptions {
        fault_label_mode: FaultLabelMode::Contain,
        ..Default::default()
    };
    let ts = Semantics::standalone(contain)
        .step(&cfg(parse_process("[ THROWW ]").unwrap()))
        .unwrap();
    assert_eq!(labels(&ts), ["τ"]);
    assert!(ts[0].ends_transaction());
}

#[test]
fn compensations_run_in_reverse() {
    let p = parse_process("[ (a / a2) ; (b / b2) ; THROWW ]").unwrap();
    let trace = run_unique(&sem(), cfg(p));
    assert_eq!(trace, ["a", "τ", "b", "τ", "!", "τ", "b2", "τ", "a2", "✓"]);
}

#[test]
fn speculative_choice() {
    let ts = step_src("SKIPP <> THROWW");
    assert_eq!(labels(&ts), ["✓"]);
    assert_eq!(ts[0].rule, "spec-left-wins");
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::aux(StdProc::Skip, StdProc::Skip)));

    let ts = step_src("THROWW <> THROWW");
    assert_eq!(labels(&ts), ["!"]);
    let want = StdProc::aux(
        StdProc::Emit(Fault),
        StdProc::par(EventSet::new(), StdProc::Skip, StdProc::Skip),
    );
    assert_eq!(ts[0].target.proc, Process::Std(want));
    assert_eq!(run_unique(&sem(), ts[0].target.clone()), ["!", "✓"]);

    let ts = step_src("(a / a2) <> (b / b2)");
    assert_eq!(labels(&ts), ["a", "b"]);
    assert_eq!((ts[0].rule, ts[1].rule), ("spec-left", "spec-right"));

    let ts = step_src("SKIPP <> SKIPP");
    assert_eq!((labels(&ts), ts[0].rule), (vec!["✓".to_string()], "spec-both"));
}

#[test]
fn sugar_matches_pairs() {
    for (sugar, pair) in [
        ("SKIPP", "SKIP / SKIP"),
        ("THROWW", "THROW / SKIP"),
        ("YIELDD", "YIELD / SKIP"),
    ] {
        assert_eq!(labels(&step_src(sugar)), labels(&step_src(pair)));
    }
}

#[test]
fn interruptible_atoms_add_two_rules() {
    let opts = EngineOptions {
        interruptible_atoms: true,
        ..Default::default()
    };
    let ts = Semantics::standalone(opts).step(&cfg(StdProc::atom("a"))).unwrap();
    let got: Vec<_> = ts.iter().map(|t| (t.label.to_string(), t.rule)).collect();
    assert_eq!(
        got,
        [
            ("a".to_string(), "atom"),
            ("?".to_string(), "atom-interrupt-before"),
            ("a".to_string(), "atom-interrupt-after")
        ]
    );
    assert_eq!(labels(&step_src("a")), ["a"]);
}

#[test]
fn handler_catches_fault() {
    let ts = step_src("(a -> THROW) [> b");
    let ts = sem().step(&ts[0].target).unwrap();
    assert_eq!((labels(&ts), ts[0].rule), (vec!["τ".to_string()], "handler-catch"));
    assert_eq!(ts[0].target.proc, Process::Std(StdProc::atom("b")));
}

#[test]
fn every_rule_id_is_documented() {
    let ids: Vec<&str> = rules::RULES.iter().map(|r| r.0).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len(), "duplicate rule id");
    for t in step_src("(a -> SKIP) ||{a} (a -> SKIP) [] [ (b / c) <> THROWW ]") {
        assert!(t.derivation.iter().all(|r| rules::is_rule(r)));
    }
}

#[test]
fn nil_has_no_transitions_with_any_store() {
    let sigma: LocalStore = [("x".to_string(), 1)].into_iter().collect();
    let c = cfg(StdProc::Nil).with_sigma(sigma);
    assert!(sem().step(&c).unwrap().is_empty());
}

#[test]
fn stores_change_only_through_inputs_and_assignments() {
    let ts = step_src("(a -> SKIP) ||{} (X := b ; c)");
    for t in &ts {
        assert!(t.target.sigma.is_empty());
        assert_eq!(t.target.rho.is_empty(), !t.used_rule("assign"));
    }
    let _ = event_set(["a"]);
}

#[test]
fn assignment_captures_current_data() {
    let m = parse_model("P = X := restock.x.y\ninit P with x = 1, y = 4").unwrap();
    let s = m.semantics();
    let c = m.initial_configuration().unwrap();
    let ts = s.step(&c).unwrap();
    assert_eq!(ts[0].target.rho.get("X").unwrap().to_string(), "restock.1.4");
}
