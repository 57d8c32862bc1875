//! Running an external ASP solver on an emitted meta-program and comparing
//! its decoded answer sets with the native operators.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::change::{revise_se, Revision};
use crate::error::{Error, Result};
use crate::merge::{arbitrate_se, merge_basic_se};
use crate::se::{se_models, SeModelSet, SePair};
use crate::syntax::{Alphabet, BeliefProfile};

use super::{decode, emit_meta, instance_text, Dialect, Task};

/// Environment variable holding the default solver command.
pub const SOLVER_ENV: &str = "SECHANGE_SOLVER";

/// A solver command line. `{files}` stands for the meta-program and
/// instance files; without it they are appended after default options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub argv: Vec<String>,
    pub dialect: Dialect,
    pub timeout: Duration,
}

impl SolverConfig {
    /// Parses a whitespace-separated template. The dialect is DLV when the
    /// command mentions `dlv`, clingo otherwise.
    pub fn parse(template: &str, timeout: Duration) -> Result<SolverConfig> {
        let mut argv: Vec<String> = template.split_whitespace().map(str::to_string).collect();
        if argv.is_empty() {
            return Err(Error::Solver("empty solver command".into()));
        }
        let dialect = if argv.iter().any(|a| a.to_ascii_lowercase().contains("dlv")) {
            Dialect::Dlv
        } else {
            Dialect::Clingo
        };
        if !argv.iter().any(|a| a == "{files}") {
            match dialect {
                Dialect::Dlv => argv.push("-silent".into()),
                Dialect::Clingo => argv.extend(["-n", "0", "--opt-mode=optN"].map(String::from)),
            }
            argv.push("{files}".into());
        }
        Ok(SolverConfig { argv, dialect, timeout })
    }

    pub fn with_dialect(mut self, dialect: Dialect) -> SolverConfig {
        self.dialect = dialect;
        self
    }

    /// The command from the environment, else the first of `clingo` and
    /// `python3 -m clingo` that answers `--version`.
    pub fn detect(timeout: Duration) -> Option<SolverConfig> {
        if let Ok(cmd) = std::env::var(SOLVER_ENV) {
            return SolverConfig::parse(&cmd, timeout).ok();
        }
        ["clingo", "python3 -m clingo"].into_iter().find_map(|cmd| {
            let mut words = cmd.split_whitespace();
            let status = Command::new(words.next()?)
                .args(words)
                .arg("--version")
                .stdout(Stdio::null())
                .stderr(Stdio::null())
                .status()
                .ok()?;
            status.success().then(|| SolverConfig::parse(cmd, timeout).ok()).flatten()
        })
    }
}

fn write_temp(text: &str, suffix: &str) -> Result<tempfile::NamedTempFile> {
    let mut f = tempfile::Builder::new().prefix("sechange-").suffix(suffix).tempfile()?;
    f.write_all(text.as_bytes())?;
    f.flush()?;
    Ok(f)
}

fn drain(mut r: impl Read + Send + 'static) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut s = String::new();
        let _ = r.read_to_string(&mut s);
        s
    })
}

/// Runs the solver on `meta` plus `instance` and returns its optimal answer sets.
pub fn solve(cfg: &SolverConfig, meta: &str, instance: &str) -> Result<Vec<Vec<String>>> {
    let meta_file = write_temp(meta, ".lp")?;
    let facts_file = write_temp(instance, ".lp")?;
    let files = [meta_file.path(), facts_file.path()].map(|p| p.to_string_lossy().into_owned());
    let mut args = cfg.argv.iter().flat_map(|a| {
        if a == "{files}" {
            files.to_vec()
        } else {
            vec![a.clone()]
        }
    });
    let program = args.next().expect("non-empty command");
    let mut child = Command::new(&program)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| Error::Solver(format!("cannot start `{program}`: {e}")))?;
    let out = drain(child.stdout.take().expect("piped stdout"));
    let err = drain(child.stderr.take().expect("piped stderr"));
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if start.elapsed() > cfg.timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Err(Error::Solver(format!("timed out after {:.1} s", cfg.timeout.as_secs_f64())));
        }
        thread::sleep(Duration::from_millis(2));
    };
    let stdout = out.join().unwrap_or_default();
    let stderr = err.join().unwrap_or_default();
    // clingo reports satisfiability through exit codes 10, 20 and 30
    if !matches!(status.code(), Some(0 | 10 | 20 | 30)) {
        return Err(Error::Solver(format!("`{program}` failed ({status}): {}", stderr.trim())));
    }
    parse_answer_sets(&stdout)
}

fn split_atoms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let (mut depth, mut cur) = (0usize, String::new());
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && (c == ',' || c.is_whitespace()) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn integers(s: &str) -> Vec<i64> {
    s.split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter_map(|w| w.parse().ok())
        .collect()
}

/// DLV prints `<[w:l],...>`; the result lists weights by decreasing level.
fn dlv_cost(line: &str) -> Vec<i64> {
    let mut pairs: Vec<(i64, i64)> = line
        .split('[')
        .skip(2)
        .filter_map(|chunk| {
            let (w, l) = chunk.split_once(':')?;
            Some((w.trim().parse().ok()?, integers(l).first().copied()?))
        })
        .collect();
    pairs.sort_by(|a, b| b.1.cmp(&a.1));
    pairs.into_iter().map(|(w, _)| w).collect()
}

/// Answer sets from clingo (`Answer: n` blocks) or DLV (`{a, b}` lines)
/// output. When costs are reported only the cheapest answers are kept.
pub fn parse_answer_sets(output: &str) -> Result<Vec<Vec<String>>> {
    let mut answers: Vec<(Vec<String>, Option<Vec<i64>>)> = Vec::new();
    let mut lines = output.lines();
    while let Some(line) = lines.next() {
        let line = line.trim();
        if line.starts_with("Answer:") {
            let atoms = lines.next().unwrap_or("");
            answers.push((split_atoms(atoms), None));
        } else if let Some(rest) = line.strip_prefix("Optimization:") {
            if let Some(last) = answers.last_mut() {
                last.1 = Some(integers(rest));
            }
        } else if line.starts_with('{') || line.starts_with("Best model:") {
            let inner = line
                .trim_start_matches("Best model:")
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| Error::Solver(format!("cannot parse answer set line `{line}`")))?;
            answers.push((split_atoms(inner), None));
        } else if line.starts_with("Cost") {
            if let Some(last) = answers.last_mut() {
                last.1 = Some(dlv_cost(line));
            }
        }
    }
    let best = answers.iter().filter_map(|(_, c)| c.clone()).min();
    let mut kept: Vec<Vec<String>> = answers
        .into_iter()
        .filter(|(_, c)| best.is_none() || c == &best)
        .map(|(mut atoms, _)| {
            atoms.sort();
            atoms
        })
        .collect();
    kept.sort();
    kept.dedup();
    Ok(kept)
}

/// Native and solver results for one profile.
#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub task: Task,
    /// Atoms occurring in the profile.
    pub alphabet: Alphabet,
    pub native: SeModelSet,
    pub solver: SeModelSet,
    pub answer_sets: usize,
    pub elapsed: Duration,
}

impl CrossCheck {
    pub fn equal(&self) -> bool {
        self.native == self.solver
    }

    pub fn only_native(&self) -> Vec<SePair> {
        self.native.pairs().difference(self.solver.pairs()).copied().collect()
    }

    pub fn only_solver(&self) -> Vec<SePair> {
        self.solver.pairs().difference(self.native.pairs()).copied().collect()
    }
}

/// The native result of `task` on `psi` over `alphabet`.
pub fn native_result(psi: &BeliefProfile, task: Task, alphabet: &Alphabet) -> Result<SeModelSet> {
    if task.has_constraints() != psi.has_constraints {
        return Err(Error::Profile(if psi.has_constraints {
            format!("{task} takes no constraints program")
        } else {
            format!("{task} needs a constraints program")
        }));
    }
    let sets = psi
        .programs
        .iter()
        .map(|p| se_models(p, alphabet))
        .collect::<Result<Vec<_>>>()?;
    match task {
        Task::CardRevision | Task::SetRevision => {
            let [p, q] = &sets[..] else {
                return Err(Error::Profile(format!("{task} takes exactly two programs")));
            };
            let kind = if task == Task::CardRevision { Revision::Card } else { Revision::Set };
            revise_se(p, q, kind)
        }
        Task::BasicMerge => Ok(merge_basic_se(&sets)?.se),
        Task::Arbitration => Ok(arbitrate_se(&sets)?.se),
    }
}

/// Solves the task's meta-program on `psi` and compares the decoded SE
/// models with the native result over the atoms occurring in `psi`.
pub fn crosscheck(psi: &BeliefProfile, task: Task, cfg: &SolverConfig) -> Result<CrossCheck> {
    let alphabet = Alphabet::new(psi.programs.iter().flat_map(|p| p.occurring_atoms()));
    alphabet.check_capacity()?;
    let native = native_result(psi, task, &alphabet)?;
    let start = Instant::now();
    let answers = solve(cfg, &emit_meta(task, cfg.dialect).text, &instance_text(psi, cfg.dialect))?;
    let elapsed = start.elapsed();
    Ok(CrossCheck {
        task,
        solver: decode(&answers, &alphabet)?,
        alphabet,
        native,
        answer_sets: answers.len(),
        elapsed,
    })
}
