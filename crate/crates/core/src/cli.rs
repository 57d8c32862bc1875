//! The `sechange` command line.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::canonical::{canonical_dlp, canonical_glp, CanonicalProgram};
use crate::change::{expand, revise_with, ChangeResult, Revision};
use crate::encoding::{self, emit_meta, instance_text, Dialect, SolverConfig, Task};
use crate::error::Error;
use crate::merge::{arbitrate, merge_basic, MergeResult};
use crate::postulates::{run_suite, Suite, SuiteConfig};
use crate::se::{answer_sets, classical_models, entails_s, parse_se_set, se_models, se_set_to_json, strongly_equivalent};
use crate::se::{Interpretation, SeModelSet};
use crate::syntax::{effective_alphabet, parse_program, Alphabet, Atom, BeliefProfile, Limits, Program, DEFAULT_MAX_ATOMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_POSTULATE: i32 = 4;
pub const EXIT_SOLVER: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "sechange", version, about = "Belief change for logic programs via SE models")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Args)]
struct Global {
    /// Comma-separated alphabet; defaults to the atoms of the operands.
    #[arg(long, global = true, value_name = "ATOMS")]
    alphabet: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest alphabet the exhaustive enumerations accept.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATOMS)]
    max_atoms: usize,
    /// Solver timeout in seconds.
    #[arg(long, global = true, default_value_t = 60.0)]
    timeout: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Set,
    Weak,
    Card,
}

impl From<Op> for Revision {
    fn from(op: Op) -> Revision {
        match op {
            Op::Set => Revision::Set,
            Op::Weak => Revision::Weak,
            Op::Card => Revision::Card,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Classical models.
    Mod { file: PathBuf },
    /// SE models.
    Se { file: PathBuf },
    /// Answer sets.
    As { file: PathBuf },
    /// Strong equivalence of two programs.
    Equiv { p: PathBuf, q: PathBuf },
    /// Whether the first program strongly entails the second.
    Entails { p: PathBuf, q: PathBuf },
    /// Expansion P + Q.
    Expand { p: PathBuf, q: PathBuf },
    /// Revision of P by Q, set-containment based unless a flag says otherwise.
    Revise {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, conflicts_with = "card")]
        weak: bool,
        #[arg(long)]
        card: bool,
    },
    /// Arbitration of a profile.
    Arbitrate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Basic merging of a profile under constraints.
    Merge {
        #[arg(long, value_name = "FILE")]
        constraints: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Program with exactly the SE models listed in a file.
    Canonical {
        #[arg(long, value_name = "FILE")]
        from_se: PathBuf,
        /// Disjunctive program; the set must be complete.
        #[arg(long)]
        dlp: bool,
    },
    /// Seeded random checks of a postulate suite.
    CheckPostulates {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Op::Set)]
        op: Op,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Meta-program for a task, or with `--facts` the instance for a profile.
    Emit {
        #[arg(long)]
        task: Task,
        #[arg(long, default_value = "dlv")]
        dialect: Dialect,
        /// Profile files; for basic-merge the first one holds the constraints.
        #[arg(long, num_args = 1..)]
        facts: Vec<PathBuf>,
    },
    /// Runs an ASP solver on the task's encoding and compares with the native result.
    Crosscheck {
        #[arg(long)]
        task: Task,
        /// Solver command; `{files}` marks where the input files go.
        #[arg(long, value_name = "CMD")]
        solver_cmd: Option<String>,
        /// Profile files; for basic-merge the first one holds the constraints.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::AtomNotInAlphabet(_) | Error::NotWellDefined(_) | Error::NotComplete { .. } => {
            EXIT_PARSE
        }
        Error::Capacity { .. } | Error::TupleCapacity { .. } => EXIT_CAPACITY,
        Error::CorruptAnswerSet(_) | Error::Solver(_) => EXIT_SOLVER,
        Error::AlphabetMismatch | Error::Profile(_) | Error::Io(_) => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn in_file(path: &Path, e: Error) -> Failure {
    let code = exit_code(&e);
    Failure {
        code,
        message: format!("{}:{e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Program, Failure> {
    parse_program(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<Program>, Failure> {
    paths.iter().map(|p| load(p)).collect()
}

struct Ctx<'a> {
    global: &'a Global,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn limits(&self) -> Limits {
        Limits {
            max_atoms: self.global.max_atoms,
            ..Limits::default()
        }
    }

    fn override_alphabet(&self) -> Result<Option<Alphabet>, Failure> {
        let Some(spec) = &self.global.alphabet else {
            return Ok(None);
        };
        let atoms = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Atom::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::usage(format!("--alphabet: {e}")))?;
        Ok(Some(Alphabet::new(atoms)))
    }

    fn alphabet(&self, programs: &[&Program]) -> Result<Alphabet, Failure> {
        let a = effective_alphabet(programs, self.override_alphabet()?.as_ref())?.with_limits(self.limits());
        a.check_capacity()?;
        Ok(a)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
    }

    fn json(&mut self, value: &serde_json::Value) -> Result<(), Failure> {
        let text = serde_json::to_string(value).expect("plain data serializes");
        self.emit(&format!("{text}\n"))
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }
}

fn sorted_models(models: &BTreeSet<Interpretation>) -> Vec<Interpretation> {
    let mut v: Vec<Interpretation> = models.iter().copied().collect();
    v.sort_by_key(|i| (i.len(), i.bits()));
    v
}

fn models_out(ctx: &mut Ctx, a: &Alphabet, models: &BTreeSet<Interpretation>) -> Result<(), Failure> {
    let sorted = sorted_models(models);
    match ctx.global.format {
        Format::Text => {
            let text: String = sorted.iter().map(|i| format!("{}\n", i.display(a))).collect();
            ctx.emit(&text)
        }
        Format::Json => {
            let names: Vec<Vec<String>> = sorted.iter().map(|i| i.atoms(a).map(|x| x.to_string()).collect()).collect();
            let alphabet: Vec<String> = a.atoms().iter().map(|x| x.to_string()).collect();
            ctx.json(&json!({ "alphabet": alphabet, "models": names }))
        }
    }
}

fn bool_out(ctx: &mut Ctx, value: bool) -> Result<(), Failure> {
    match ctx.global.format {
        Format::Text => ctx.emit(&format!("{value}\n")),
        Format::Json => ctx.json(&json!({ "result": value })),
    }
}

/// SE set, a blank line, then the program; or one JSON object.
fn result_out(ctx: &mut Ctx, se: &SeModelSet, program: &CanonicalProgram) -> Result<(), Failure> {
    match ctx.global.format {
        Format::Text => ctx.emit(&format!("{}\n{}", se.to_text(), program.program)),
        Format::Json => ctx.emit(&format!("{}\n", se_set_to_json(se, Some(program.program.to_string())))),
    }
}

fn change_out(ctx: &mut Ctx, r: &ChangeResult) -> Result<(), Failure> {
    result_out(ctx, &r.se, &r.program)
}

fn merge_out(ctx: &mut Ctx, r: &MergeResult, first_index: usize) -> Result<(), Failure> {
    if !r.dropped.is_empty() {
        let names: Vec<String> = r.dropped.iter().map(|i| format!("#{}", i + first_index)).collect();
        ctx.warn(&format!("left out unsatisfiable profile members {}", names.join(", ")));
    }
    if let Some(w) = &r.warning {
        ctx.warn(w);
    }
    result_out(ctx, &r.se, &r.program)
}

fn profile_of(task: Task, programs: Vec<Program>) -> Result<BeliefProfile, Failure> {
    if task.has_constraints() {
        let mut it = programs.into_iter();
        let constraints = it.next().ok_or_else(|| Failure::usage("basic-merge needs a constraints file"))?;
        Ok(BeliefProfile::with_constraints(constraints, it.collect()))
    } else {
        Ok(BeliefProfile::new(programs))
    }
}

fn run_verb(ctx: &mut Ctx, verb: &Verb) -> Result<i32, Failure> {
    match verb {
        Verb::Mod { file } | Verb::Se { file } | Verb::As { file } => {
            let p = load(file)?;
            let a = ctx.alphabet(&[&p])?;
            match verb {
                Verb::Mod { .. } => models_out(ctx, &a, &classical_models(&p, &a)?)?,
                Verb::As { .. } => models_out(ctx, &a, &answer_sets(&p, &a)?)?,
                _ => {
                    let se = se_models(&p, &a)?;
                    match ctx.global.format {
                        Format::Text => ctx.emit(&se.to_text())?,
                        Format::Json => ctx.emit(&format!("{}\n", se_set_to_json(&se, None)))?,
                    }
                }
            }
        }
        Verb::Equiv { p, q } | Verb::Entails { p, q } => {
            let (p, q) = (load(p)?, load(q)?);
            let a = ctx.alphabet(&[&p, &q])?;
            let value = match verb {
                Verb::Equiv { .. } => strongly_equivalent(&p, &q, &a)?,
                _ => entails_s(&p, &q, &a)?,
            };
            bool_out(ctx, value)?;
        }
        Verb::Expand { p, q } => {
            let (p, q) = (load(p)?, load(q)?);
            let a = ctx.alphabet(&[&p, &q])?;
            change_out(ctx, &expand(&p, &q, &a)?)?;
        }
        Verb::Revise { p, q, weak, card } => {
            let (p, q) = (load(p)?, load(q)?);
            let a = ctx.alphabet(&[&p, &q])?;
            let kind = match (weak, card) {
                (true, _) => Revision::Weak,
                (_, true) => Revision::Card,
                _ => Revision::Set,
            };
            change_out(ctx, &revise_with(&p, &q, &a, kind)?)?;
        }
        Verb::Arbitrate { files } => {
            let psi = BeliefProfile::new(load_all(files)?);
            let a = ctx.alphabet(&psi.programs.iter().collect::<Vec<_>>())?;
            merge_out(ctx, &arbitrate(&psi, &a)?, 1)?;
        }
        Verb::Merge { constraints, files } => {
            let psi = BeliefProfile::with_constraints(load(constraints)?, load_all(files)?);
            let a = ctx.alphabet(&psi.programs.iter().collect::<Vec<_>>())?;
            merge_out(ctx, &merge_basic(&psi, &a)?, 0)?;
        }
        Verb::Canonical { from_se, dlp } => {
            let text = read(from_se)?;
            let over = ctx.override_alphabet()?;
            let s = parse_se_set(&text, over.as_ref()).map_err(|e| in_file(from_se, e))?;
            s.alphabet().clone().with_limits(ctx.limits()).check_capacity()?;
            let c = if *dlp { canonical_dlp(&s) } else { canonical_glp(&s) }.map_err(|e| in_file(from_se, e))?;
            match ctx.global.format {
                Format::Text => ctx.emit(&c.program.to_string())?,
                Format::Json => ctx.emit(&format!("{}\n", se_set_to_json(&s, Some(c.program.to_string()))))?,
            }
        }
        Verb::CheckPostulates {
            suite,
            op,
            trials,
            atoms,
            seed,
        } => {
            if *atoms > ctx.global.max_atoms {
                return Err(Error::Capacity {
                    atoms: *atoms,
                    max: ctx.global.max_atoms,
                }
                .into());
            }
            let summary = run_suite(&SuiteConfig::new(*suite, (*op).into(), *trials, *atoms, *seed))?;
            match ctx.global.format {
                Format::Text => ctx.emit(&summary.to_string())?,
                Format::Json => ctx.json(&serde_json::to_value(&summary).expect("plain data serializes"))?,
            }
            if summary.claimed_failures() > 0 {
                return Ok(EXIT_POSTULATE);
            }
        }
        Verb::Emit { task, dialect, facts } => {
            let text = if facts.is_empty() {
                emit_meta(*task, *dialect).text
            } else {
                instance_text(&profile_of(*task, load_all(facts)?)?, *dialect)
            };
            match ctx.global.format {
                Format::Text => ctx.emit(&text)?,
                Format::Json => ctx.json(&json!({
                    "task": task.name(),
                    "dialect": dialect,
                    "modules": task.module_names(),
                    "text": text,
                }))?,
            }
        }
        Verb::Crosscheck { task, solver_cmd, files } => {
            let psi = profile_of(*task, load_all(files)?)?;
            let timeout = Duration::from_secs_f64(ctx.global.timeout.max(0.001));
            let cfg = match solver_cmd {
                Some(cmd) => SolverConfig::parse(cmd, timeout)?,
                None => SolverConfig::detect(timeout).ok_or_else(|| {
                    Error::Solver(format!("no solver found; pass --solver-cmd or set {}", encoding::SOLVER_ENV))
                })?,
            };
            ctx.alphabet(&psi.programs.iter().collect::<Vec<_>>())?;
            let r = encoding::crosscheck(&psi, *task, &cfg)?;
            let a = &r.alphabet;
            let show = |v: Vec<crate::se::SePair>| v.into_iter().map(|p| p.display(a)).collect::<Vec<_>>();
            match ctx.global.format {
                Format::Text => {
                    let mut text = format!(
                        "{} {}: {} answer sets, {} native SE models, {} decoded\n",
                        task,
                        if r.equal() { "equal" } else { "unequal" },
                        r.answer_sets,
                        r.native.len(),
                        r.solver.len()
                    );
                    for p in show(r.only_native()) {
                        text.push_str(&format!("native only {p}\n"));
                    }
                    for p in show(r.only_solver()) {
                        text.push_str(&format!("solver only {p}\n"));
                    }
                    ctx.emit(&text)?;
                }
                Format::Json => ctx.json(&json!({
                    "task": task.name(),
                    "equal": r.equal(),
                    "alphabet": a.atoms().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "answer_sets": r.answer_sets,
                    "native_only": show(r.only_native()),
                    "solver_only": show(r.only_solver()),
                }))?,
            }
            if !r.equal() {
                return Ok(EXIT_SOLVER);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the verb; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx {
        global: &cli.global,
        out,
        err,
    };
    match run_verb(&mut ctx, &cli.verb) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}
