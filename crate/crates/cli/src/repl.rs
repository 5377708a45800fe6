use std::io::{self, BufRead, IsTerminal, Write};

use deccsp::{Configuration, Label, Semantics, Transition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::{initial, load, step_fail, stop_marker};
use crate::{Common, Fail, EXIT_NOT_TTY};

const HELP: &str = "commands: <n> take transition n, u undo, r <n> random walk, q quit\n";

pub fn run(common: &Common) -> Result<(), Fail> {
    let stdin = io::stdin();
    if !stdin.is_terminal() {
        return Err(Fail::new(
            EXIT_NOT_TTY,
            "step needs an interactive terminal; pass --replay \"1,2,q\" to script a session",
        ));
    }
    let model = load(common)?;
    let sem = model.semantics();
    let mut session = Session::new(&sem, initial(&model)?, common.seed);
    let lines = stdin.lock().lines().map_while(Result::ok);
    session.drive(lines, &mut io::stdout().lock(), false)
}

/// Runs a comma-separated command script and returns the transcript.
pub fn replay(common: &Common, script: &str) -> Result<String, Fail> {
    let model = load(common)?;
    let sem = model.semantics();
    let mut session = Session::new(&sem, initial(&model)?, common.seed);
    let mut out = Vec::new();
    let cmds = script.split(',').map(|s| s.trim().to_string());
    session.drive(cmds, &mut out, true)?;
    Ok(String::from_utf8(out).expect("transcript is utf-8"))
}

/// A position in the transition relation with the way back.
pub struct Session<'a> {
    sem: &'a Semantics<'a>,
    cur: Configuration,
    arrived: Option<Label>,
    history: Vec<(Configuration, Option<Label>)>,
    rng: ChaCha8Rng,
}

impl<'a> Session<'a> {
    pub fn new(sem: &'a Semantics<'a>, init: Configuration, seed: u64) -> Self {
        Session {
            sem,
            cur: init,
            arrived: None,
            history: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn enabled(&self) -> Result<Vec<Transition>, Fail> {
        self.sem.step(&self.cur).map_err(step_fail)
    }

    fn menu(&self, w: &mut impl Write) -> Result<Vec<Transition>, Fail> {
        let ts = self.enabled()?;
        let _ = writeln!(w, "process {}", self.cur.proc);
        let _ = writeln!(w, "sigma   {}", self.cur.sigma);
        let _ = writeln!(w, "rho     {}", self.cur.rho);
        if ts.is_empty() {
            let _ = writeln!(w, "no transitions ({})", stop_marker(&self.cur, self.arrived.as_ref()));
        }
        for (i, t) in ts.iter().enumerate() {
            let _ = writeln!(w, "  {}  {} [{}] -> {}", i + 1, t.label, t.rule, t.target.brief());
        }
        Ok(ts)
    }

    fn take(&mut self, t: Transition) {
        let prev = std::mem::replace(&mut self.cur, t.target);
        self.history.push((prev, self.arrived.replace(t.label)));
    }

    /// Reads commands until `q` or the input ends.
    pub fn drive(&mut self, cmds: impl Iterator<Item = String>, w: &mut impl Write, echo: bool) -> Result<(), Fail> {
        let mut ts = self.menu(w)?;
        let _ = write!(w, "> ");
        let _ = w.flush();
        for cmd in cmds {
            if echo {
                let _ = writeln!(w, "{cmd}");
            }
            let mut words = cmd.split_whitespace();
            let moved = match (words.next(), words.next()) {
                (None, _) => false,
                (Some("q"), None) => return Ok(()),
                (Some("u"), None) => match self.history.pop() {
                    Some((c, a)) => {
                        self.cur = c;
                        self.arrived = a;
                        true
                    }
                    None => {
                        let _ = writeln!(w, "nothing to undo");
                        false
                    }
                },
                (Some("r"), n) => match n.map_or(Ok(1), str::parse::<usize>) {
                    Ok(n) => {
                        let mut taken = 0;
                        while taken < n {
                            let mut now = self.enabled()?;
                            if now.is_empty() {
                                break;
                            }
                            let i = self.rng.gen_range(0..now.len());
                            let t = now.swap_remove(i);
                            let _ = writeln!(w, "  {} [{}]", t.label, t.rule);
                            self.take(t);
                            taken += 1;
                        }
                        let _ = writeln!(w, "walked {taken} step(s)");
                        true
                    }
                    Err(_) => {
                        let _ = write!(w, "{HELP}");
                        false
                    }
                },
                (Some(n), None) => match n.parse::<usize>() {
                    Ok(i) if (1..=ts.len()).contains(&i) => {
                        let t = ts.swap_remove(i - 1);
                        self.take(t);
                        true
                    }
                    Ok(_) => {
                        let _ = writeln!(w, "no transition {n}");
                        false
                    }
                    Err(_) => {
                        let _ = write!(w, "{HELP}");
                        false
                    }
                },
                _ => {
                    let _ = write!(w, "{HELP}");
                    false
                }
            };
            if moved {
                ts = self.menu(w)?;
            }
            let _ = write!(w, "> ");
            let _ = w.flush();
        }
        let _ = writeln!(w);
        Ok(())
    }
}
