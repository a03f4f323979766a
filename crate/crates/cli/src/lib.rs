//! Command-line surface over `diffterm-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code with the text destined for standard output and standard error.
//! Exit codes: 0 positive verdict or success, 1 negative verdict, 2 usage
//! or input error.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use diffterm_core::commutator::{commutator_fast, commutator_matrices};
use diffterm_core::congruence::{all_congruences, principal_congruence};
use diffterm_core::construct::{build_dt_table_counted, verify_dt_table};
use diffterm_core::decision::{has_dto_witnesses, variety_has_dt_local, variety_has_dt_pentagon};
use diffterm_core::tct::{taylor_token, type_one_witness};
use diffterm_core::{Certificate, Error, FiniteAlgebra, Partition, Verdict as CoreVerdict};

use report::{digest, Report, Verdict};

#[derive(Parser, Debug)]
#[command(
    name = "diffterm",
    version,
    about = "Difference terms of finite idempotent algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra file and test idempotence.
    Check { file: PathBuf },
    /// Whether the variety generated by the algebra omits the unary type.
    #[command(name = "omits-type1")]
    OmitsType1 { file: PathBuf },
    /// Whether the algebra has a difference term operation.
    HasDto {
        file: PathBuf,
        /// Write the local witness term of every mixed pair here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Whether the variety generated by the algebra has a difference term.
    VarietyDt {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VarietyMethod::Local)]
        method: VarietyMethod,
    },
    /// Construct a difference term operation table.
    BuildDt {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check a ternary table against the difference term condition.
    VerifyDt { file: PathBuf, table: PathBuf },
    /// Principal congruence generated by a pair.
    Cg { file: PathBuf, a: usize, b: usize },
    /// Every congruence.
    Con { file: PathBuf },
    /// Commutator of two congruences.
    Commutator {
        file: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value_t = CommutatorChoice::Matrices)]
        method: CommutatorChoice,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VarietyMethod {
    Local,
    Pentagon,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CommutatorChoice {
    Matrices,
    Fast,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// An input or usage problem; always exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<Report, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis();
            Outcome {
                code: report.exit_code(),
                stdout: report.to_string(),
                stderr: String::new(),
            }
        }
        Err(Failure(message)) => Outcome::usage(format!("error: {message}\n")),
    }
}

fn read_input(path: &Path, report: &mut Report) -> Result<String, Failure> {
    let bytes =
        fs::read(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    report
        .inputs
        .push((path.display().to_string(), digest(&bytes)));
    String::from_utf8(bytes).map_err(|_| Failure(format!("{} is not UTF-8", path.display())))
}

fn load_algebra(path: &Path, report: &mut Report) -> Result<FiniteAlgebra, Failure> {
    let text = read_input(path, report)?;
    format::parse_algebra(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse_partition(text: &str, alg: &FiniteAlgebra) -> Result<Partition, Failure> {
    let p: Partition = text
        .parse()
        .map_err(|e: Error| Failure(format!("partition `{text}`: {e}")))?;
    if p.size() != alg.size() {
        return Err(Failure(format!(
            "partition `{text}` covers {} elements, algebra has {}",
            p.size(),
            alg.size()
        )));
    }
    Ok(p)
}

fn set_verdict(report: &mut Report, v: &CoreVerdict) {
    match v {
        CoreVerdict::Yes => report.verdict = Verdict::Yes,
        CoreVerdict::No(c) => {
            report.verdict = Verdict::No;
            report.certificate = Some(c.to_string());
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Check { file } => check(&file),
        Command::OmitsType1 { file } => {
            let mut r = Report::new("omits-type1");
            let alg = load_algebra(&file, &mut r)?;
            match type_one_witness(&alg)? {
                None => r.verdict = Verdict::Yes,
                Some(w) => {
                    r.verdict = Verdict::No;
                    r.certificate = Some(w.to_string());
                }
            }
            Ok(r)
        }
        Command::HasDto { file, witness } => has_dto_cmd(&file, witness.as_deref()),
        Command::VarietyDt { file, method } => variety(&file, method),
        Command::BuildDt { file, output } => build(&file, &output),
        Command::VerifyDt { file, table } => {
            let mut r = Report::new("verify-dt");
            let alg = load_algebra(&file, &mut r)?;
            let text = read_input(&table, &mut r)?;
            let (_, d) = format::parse_table(&text)
                .map_err(|e| Failure(format!("{}: {e}", table.display())))?;
            match verify_dt_table(&alg, &d)? {
                None => r.verdict = Verdict::Yes,
                Some(v) => {
                    r.verdict = Verdict::No;
                    r.certificate = Some(v.to_string());
                }
            }
            Ok(r)
        }
        Command::Cg { file, a, b } => {
            let mut r = Report::new("cg");
            let alg = load_algebra(&file, &mut r)?;
            r.results
                .push(principal_congruence(&alg, a, b)?.to_string());
            Ok(r)
        }
        Command::Con { file } => {
            let mut r = Report::new("con");
            let alg = load_algebra(&file, &mut r)?;
            let cons = all_congruences(&alg);
            r.results.push(format!("count {}", cons.len()));
            r.results.extend(cons.iter().map(Partition::to_string));
            Ok(r)
        }
        Command::Commutator {
            file,
            alpha,
            beta,
            method,
        } => {
            let mut r = Report::new("commutator");
            let alg = load_algebra(&file, &mut r)?;
            let alpha = parse_partition(&alpha, &alg)?;
            let beta = parse_partition(&beta, &alg)?;
            let value = match method {
                CommutatorChoice::Matrices => commutator_matrices(&alg, &alpha, &beta)?,
                CommutatorChoice::Fast => {
                    let token = taylor_token(&alg)?.ok_or_else(|| {
                        Failure("fast commutator needs the unary type to be omitted".into())
                    })?;
                    commutator_fast(&alg, &alpha, &beta, &token)?
                }
            };
            r.results.push(value.to_string());
            Ok(r)
        }
    }
}

fn check(file: &Path) -> CmdResult {
    let mut r = Report::new("check");
    let alg = load_algebra(file, &mut r)?;
    r.results.push(format!(
        "size {} operations {}",
        alg.size(),
        alg.operations().len()
    ));
    let n = alg.size();
    let bad = alg.operations().iter().enumerate().find_map(|(i, op)| {
        (0..n).find_map(|x| {
            let v = alg.apply(i, &vec![x; op.arity()]).ok()?;
            (v != x).then(|| format!("not idempotent: {}({x},…,{x}) = {v}", op.name()))
        })
    });
    match bad {
        None => r.verdict = Verdict::Yes,
        Some(c) => {
            r.verdict = Verdict::No;
            r.certificate = Some(c);
        }
    }
    Ok(r)
}

fn has_dto_cmd(file: &Path, witness: Option<&Path>) -> CmdResult {
    let mut r = Report::new("has-dto");
    let alg = load_algebra(file, &mut r)?;
    let (verdict, witnesses) = has_dto_witnesses(&alg)?;
    set_verdict(&mut r, &verdict);
    if let Some(path) = witness {
        let mut text = format!("witnesses {} {}\n", alg.name(), witnesses.len());
        for w in &witnesses {
            let _ = writeln!(text, "{} {} {}", w.zero, w.one, w.term);
        }
        fs::write(path, text)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
        r.results.push(format!("witnesses {}", witnesses.len()));
    }
    Ok(r)
}

fn variety(file: &Path, method: VarietyMethod) -> CmdResult {
    let mut r = Report::new("variety-dt");
    let alg = load_algebra(file, &mut r)?;
    let local = matches!(method, VarietyMethod::Local | VarietyMethod::Both)
        .then(|| variety_has_dt_local(&alg))
        .transpose()?;
    let pentagon = matches!(method, VarietyMethod::Pentagon | VarietyMethod::Both)
        .then(|| variety_has_dt_pentagon(&alg))
        .transpose()?;
    match (&local, &pentagon) {
        (Some(l), Some(p)) => {
            if l.is_yes() != p.is_yes() {
                return Err(Failure(format!(
                    "methods disagree: local {}, pentagon {}",
                    verdict_word(l),
                    verdict_word(p)
                )));
            }
            set_verdict(&mut r, l);
            if let Some(c) = p.certificate() {
                r.results.push(format!("pentagon {c}"));
            }
        }
        (Some(v), None) | (None, Some(v)) => set_verdict(&mut r, v),
        (None, None) => unreachable!("at least one method runs"),
    }
    Ok(r)
}

fn verdict_word(v: &CoreVerdict) -> &'static str {
    if v.is_yes() {
        "yes"
    } else {
        "no"
    }
}

fn build(file: &Path, output: &Path) -> CmdResult {
    let mut r = Report::new("build-dt");
    let alg = load_algebra(file, &mut r)?;
    match build_dt_table_counted(&alg) {
        Ok((d, calls)) => {
            fs::write(output, format::print_table(alg.name(), &d))
                .map_err(|e| Failure(format!("cannot write {}: {e}", output.display())))?;
            r.verdict = Verdict::Yes;
            r.results.push(format!("calls {calls}"));
            r.results.push(format!("table {}", output.display()));
        }
        Err(Error::NoLocalDifferenceTerm { zero, one }) => {
            r.verdict = Verdict::No;
            r.certificate = Some(Certificate::FailingPair { zero, one }.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}
