use std::collections::BTreeSet;
use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use deccsp::semantics::rules::RULES;
use deccsp::{build_lts, parse_model, Bounds, Configuration};
use similar::TextDiff;

use crate::commands::execute;
use crate::{Cli, Command, Fail, EXIT_MISMATCH, EXIT_PARSE};

fn bundled() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// One micro-model: the rules it claims, the transition table of its
/// initial process, and the rules its derivations used.
struct RuleModel {
    claimed: Vec<String>,
    table: Vec<String>,
    used: BTreeSet<&'static str>,
}

fn rule_model(path: &Path) -> Result<RuleModel, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let claimed = text
        .lines()
        .find_map(|l| l.strip_prefix("-- rules:"))
        .ok_or("no `-- rules:` header")?
        .split_whitespace()
        .map(String::from)
        .collect();
    let model = parse_model(&text).map_err(|e| e.to_string())?;
    let init = model.initial.as_ref().ok_or("no init declaration")?;
    let body = model.definition(&init.process).ok_or("init names no definition")?;
    let sem = model.semantics();
    let lts = build_lts(&sem, Configuration::new(body).with_sigma(init.sigma.clone()), Bounds::default())
        .map_err(|e| e.to_string())?;
    let mut used = BTreeSet::new();
    for s in &lts.states {
        for t in sem.step(s).map_err(|e| e.to_string())? {
            used.extend(t.derivation);
        }
    }
    Ok(RuleModel {
        claimed,
        table: lts.to_table(),
        used,
    })
}

fn diff(expected: &str, actual: &str) -> String {
    TextDiff::from_lines(expected, actual)
        .unified_diff()
        .context_radius(2)
        .header("golden", "actual")
        .to_string()
}

/// `name: command line` entries, paths relative to the corpus.
fn manifest(corpus: &Path) -> Result<Vec<(String, Vec<String>)>, Fail> {
    let path = corpus.join("commands.txt");
    let text = fs::read_to_string(&path).map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (name, cmd) = line
            .split_once(':')
            .ok_or_else(|| Fail::new(EXIT_PARSE, format!("commands.txt: no `name:` in `{line}`")))?;
        let args = shlex::split(cmd).ok_or_else(|| Fail::new(EXIT_PARSE, format!("commands.txt: bad quoting in `{line}`")))?;
        out.push((name.trim().to_string(), args));
    }
    Ok(out)
}

fn run_entry(corpus: &Path, args: &[String]) -> Result<String, String> {
    let argv = std::iter::once("deccsp".to_string()).chain(args.iter().cloned());
    let mut cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    match &mut cli.command {
        Command::Parse(c) | Command::Run(c) | Command::Traces(c) | Command::Lts(c) | Command::Deadlocks(c) => {
            c.model = corpus.join(&c.model)
        }
        Command::Compensations { common, .. } | Command::Step { common, replay: Some(_) } => {
            common.model = corpus.join(&common.model)
        }
        _ => return Err("only batch commands and scripted steps can be checked".into()),
    }
    execute(&cli.command).map_err(|f| format!("exit {}: {}", f.code, f.msg))
}

pub fn run(corpus: Option<PathBuf>, bless: bool) -> Result<(), Fail> {
    let corpus = corpus.unwrap_or_else(bundled);
    let mut report = String::new();
    let mut failed = 0usize;
    let mut passed = 0usize;
    let mut missing = Vec::new();

    let mut models: Vec<PathBuf> = fs::read_dir(corpus.join("rules"))
        .map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", corpus.join("rules").display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "dec"))
        .collect();
    models.sort();
    let mut claimed = BTreeSet::new();
    for path in &models {
        let name = format!("rules/{}", path.file_stem().unwrap_or_default().to_string_lossy());
        let golden = path.with_extension("expect");
        let Ok(expected) = fs::read_to_string(&golden) else {
            missing.push(golden.display().to_string());
            continue;
        };
        match rule_model(path) {
            Ok(m) => {
                let mut problems = String::new();
                for r in &m.claimed {
                    if !RULES.iter().any(|(id, _)| id == r) {
                        let _ = writeln!(problems, "  `{r}` is not a rule identifier");
                    } else if !m.used.contains(r.as_str()) {
                        let _ = writeln!(problems, "  no derivation uses `{r}`");
                    }
                    claimed.insert(r.clone());
                }
                let mut actual = m.table.join("\n");
                actual.push('\n');
                if actual != expected {
                    problems.push_str(&diff(&expected, &actual));
                }
                if problems.is_empty() {
                    passed += 1;
                    let _ = writeln!(report, "ok   {name}");
                } else {
                    failed += 1;
                    let _ = writeln!(report, "FAIL {name}\n{problems}");
                }
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(report, "FAIL {name}\n  {e}");
            }
        }
    }
    let unclaimed: Vec<&str> = RULES.iter().map(|(id, _)| *id).filter(|id| !claimed.contains(*id)).collect();
    if unclaimed.is_empty() {
        passed += 1;
        let _ = writeln!(report, "ok   rule coverage ({} rules)", RULES.len());
    } else {
        failed += 1;
        let _ = writeln!(report, "FAIL rule coverage\n  no micro-model for {}", unclaimed.join(", "));
    }

    for (name, args) in manifest(&corpus)? {
        let golden = corpus.join("golden").join(format!("{name}.out"));
        let actual = run_entry(&corpus, &args).unwrap_or_else(|e| format!("error: {e}\n"));
        match fs::read_to_string(&golden) {
            Ok(expected) if expected == actual => {
                passed += 1;
                let _ = writeln!(report, "ok   {name}");
            }
            found if bless => {
                fs::create_dir_all(corpus.join("golden"))
                    .and_then(|_| fs::write(&golden, &actual))
                    .map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", golden.display())))?;
                passed += 1;
                let verb = if found.is_ok() { "updated" } else { "recorded" };
                let _ = writeln!(report, "ok   {name} ({verb})");
            }
            Ok(expected) => {
                failed += 1;
                let _ = writeln!(report, "FAIL {name}\n{}", diff(&expected, &actual));
            }
            Err(_) => missing.push(golden.display().to_string()),
        }
    }

    print!("{report}");
    if !missing.is_empty() {
        return Err(Fail::new(
            EXIT_PARSE,
            format!(
                "golden files are missing:\n  {}\nrule goldens (.expect) hold hand-expanded transitions and must be \
                 written by hand; run `deccsp check --bless` to record command goldens",
                missing.join("\n  ")
            ),
        ));
    }
    println!("{passed} passed, {failed} failed");
    if failed > 0 {
        return Err(Fail::new(EXIT_MISMATCH, format!("{failed} corpus check(s) differ from their goldens")));
    }
    Ok(())
}
