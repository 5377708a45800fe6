//! Seeded random terms over events `a`, `b`, `c` and variables `X`, `Y`.

use deccsp::process::{event_set, CompProc, EventSet, Process, RenamingRelation, StdProc};
use deccsp::EventName;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const EVENTS: [&str; 3] = ["a", "b", "c"];
const VARS: [&str; 2] = ["X", "Y"];

fn event(rng: &mut ChaCha8Rng) -> &'static str {
    EVENTS.choose(rng).copied().unwrap()
}

fn set(rng: &mut ChaCha8Rng) -> EventSet {
    event_set(EVENTS.iter().copied().filter(|_| rng.gen_bool(0.4)))
}

fn renaming(rng: &mut ChaCha8Rng) -> RenamingRelation {
    let n = rng.gen_range(1..=2);
    RenamingRelation::new((0..n).map(|_| (EventName::atom(event(rng)), EventName::atom(event(rng)))))
}

pub fn std_term(rng: &mut ChaCha8Rng, depth: u32) -> StdProc {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => StdProc::Skip,
            1 => StdProc::Throw,
            2 => StdProc::Yield,
            3 => StdProc::Nil,
            4 => StdProc::var(VARS.choose(rng).unwrap()),
            _ => StdProc::atom(event(rng)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..12) {
        0 => StdProc::prefix(deccsp::event::CommEvent::atom(event(rng)), std_term(rng, d)),
        1 => StdProc::seq(std_term(rng, d), std_term(rng, d)),
        2 => StdProc::ext(std_term(rng, d), std_term(rng, d)),
        3 => StdProc::int(std_term(rng, d), std_term(rng, d)),
        4 => StdProc::par(set(rng), std_term(rng, d), std_term(rng, d)),
        5 => StdProc::interrupt(std_term(rng, d), std_term(rng, d)),
        6 => StdProc::hide(std_term(rng, d), set(rng)),
        7 => StdProc::rename(std_term(rng, d), renaming(rng)),
        8 | 9 => StdProc::txn(comp_term(rng, d)),
        10 => StdProc::assign(VARS.choose(rng).unwrap(), std_term(rng, d)),
        _ => StdProc::seq(StdProc::assign(VARS.choose(rng).unwrap(), std_term(rng, d)), std_term(rng, d)),
    }
}

pub fn comp_term(rng: &mut ChaCha8Rng, depth: u32) -> CompProc {
    if depth == 0 || rng.gen_bool(0.2) {
        let d = depth.saturating_sub(1);
        return if rng.gen_bool(0.2) {
            CompProc::var_pair(std_term(rng, d), VARS.choose(rng).unwrap())
        } else {
            CompProc::pair(std_term(rng, d), std_term(rng, d))
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 | 1 => CompProc::seq(comp_term(rng, d), comp_term(rng, d)),
        2 => CompProc::ext(comp_term(rng, d), comp_term(rng, d)),
        3 => CompProc::int(comp_term(rng, d), comp_term(rng, d)),
        4 => CompProc::par(set(rng), comp_term(rng, d), comp_term(rng, d)),
        5 => CompProc::spec(comp_term(rng, d), comp_term(rng, d)),
        6 => CompProc::hide(comp_term(rng, d), set(rng)),
        7 => CompProc::rename(comp_term(rng, d), renaming(rng)),
        _ => CompProc::pair(std_term(rng, d), std_term(rng, d)),
    }
}

pub fn term(rng: &mut ChaCha8Rng, depth: u32) -> Process {
    if rng.gen_bool(0.3) {
        Process::Comp(comp_term(rng, depth))
    } else {
        Process::Std(std_term(rng, depth))
    }
}
