//! The `domdimlab` command line.
//!
//! Every command prints a [`RunReport`] (JSON by default, CSV with
//! `--format csv`) and exits with
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a checked claim was falsified |
//! | 2 | usage or input error |
//! | 3 | a predicate stayed undetermined or a value was not resolved below the cutoff |

mod report;
mod spec;
pub mod suites;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::exactmath::FieldSpec;
use crate::homology::{
    check_ideal_rigidity, delta, domdim, domdim_module, ideal_subspace, is_gendo_symmetric,
    nakayama_indecomposables, projective_injective_vertices, regular_bimodule, HomologyError,
    Representation, Resolution,
};
use crate::nakayama::{BoundedValue, NakAlgebra, NakModule, NakayamaError, Orientation};
use crate::quivalg::json::{AlgebraFile, TableFile};
use crate::quivalg::{
    is_local, preset, symmetric_form, AlgebraTable, Decision, QuivalgError, RelationExpr,
    SearchBudget,
};
use crate::rigidity::{
    is_k_rigid_nakayama, o_k, rigid_sequence_module, verify_main_inequality, GendoEvidence,
    NakayamaOracle, RigidityError, Verdict,
};

pub use report::RunReport;
pub use spec::ModuleSpec;
pub use suites::{gendo_corpus, run_suite, ItemOutcome, Suite};

pub const DEFAULT_CUTOFF: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Undetermined(_) => 3,
        }
    }
}

impl From<QuivalgError> for CliError {
    fn from(e: QuivalgError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::IndecomposabilityUndetermined(_) => {
                CliError::Undetermined(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<NakayamaError> for CliError {
    fn from(e: NakayamaError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RigidityError> for CliError {
    fn from(e: RigidityError) -> Self {
        match e {
            RigidityError::Unresolved(_) => CliError::Undetermined(e.to_string()),
            RigidityError::Homology(h) => h.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Dominant dimensions, Ext groups and rigid modules of finite-dimensional
/// algebras, computed exactly.
#[derive(Debug, Parser)]
#[command(name = "domdimlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nakayama algebras given by a Kupisch series, via closed formulas.
    Nakayama {
        #[command(subcommand)]
        command: NakCommand,
    },
    /// Algebras given by quiver and relations, a table file or a preset.
    Quiver {
        #[command(subcommand)]
        command: QuiverCommand,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Subcommand)]
pub enum NakCommand {
    /// Basic invariants: dimension, selfinjectivity, domdim, Δ.
    Info(NakArgs),
    /// dim Hom and dim Ext^t between two modules for t up to --degree.
    Ext(NakArgs),
    /// Dominant dimension of the algebra, or of the given module.
    Domdim(NakArgs),
    /// Whether the sum of the given modules is k-rigid.
    Rigid(NakArgs),
    /// o_k with a maximum rigid witness.
    Ok(NakArgs),
    /// Check (o_k + 2 - w)(k + 2) - 1 >= domdim for a gendo-symmetric algebra.
    VerifyMain(NakArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("orientation").required(true).args(["cycle", "line"]))]
pub struct NakArgs {
    /// Cyclic quiver.
    #[arg(long)]
    pub cycle: bool,
    /// Linear quiver.
    #[arg(long)]
    pub line: bool,
    /// Kupisch series, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub kupisch: Vec<usize>,
    /// Rigidity degree.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Search cutoff for dominant dimensions, φ and Δ.
    #[arg(long, env = "DOMDIMLAB_CUTOFF", default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Module spec; repeat for several summands or arguments.
    #[arg(long)]
    pub module: Vec<String>,
    /// Largest Ext degree.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// verify-main: take the gendo-symmetric hypothesis as given, recording
    /// this provenance, instead of running the bimodule test.
    #[arg(long, value_name = "PROVENANCE")]
    pub assert_gendo: Option<String>,
    /// verify-main: field for the bimodule test.
    #[arg(long, default_value = "F2")]
    pub field: FieldSpec,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Limits of the searches behind `Undetermined` outcomes.
#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Random linear combinations tried when searching for an isomorphism
    /// or a nondegenerate form.
    #[arg(long, default_value_t = 32)]
    pub random_trials: usize,
    /// Largest coefficient grid searched exhaustively before giving up.
    #[arg(long, default_value_t = 1 << 14)]
    pub max_combinations: u64,
    /// Seed of the random search.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            random_trials: self.random_trials,
            max_combinations: self.max_combinations,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum QuiverCommand {
    /// Compile to a structure-constant table file.
    Compile(QuiverArgs),
    /// Minimal projective resolution of a module.
    Resolve(QuiverArgs),
    /// dim Hom and dim Ext^t between two modules for t up to --degree.
    Ext(QuiverArgs),
    /// Dominant dimension of the algebra or of a module, and Δ.
    Domdim(QuiverArgs),
    /// Ext^1 of a two-sided ideal of a symmetric algebra.
    Ideal(QuiverArgs),
    /// Local, selfinjective, symmetric and gendo-symmetric predicates.
    Predicates(QuiverArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["preset", "algebra"]))]
pub struct QuiverArgs {
    /// Preset name, e.g. hopf-a5-f2 or truncated-poly(4,F3).
    #[arg(long)]
    pub preset: Option<String>,
    /// Algebra description file (JSON with kind quiver, table or nakayama).
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Module spec; the first is the source, the second the target.
    #[arg(long)]
    pub module: Vec<String>,
    /// Number of syzygies to compute; the resolution runs through P_{length-1}.
    #[arg(long, default_value_t = 4)]
    pub length: usize,
    /// Largest Ext degree.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Ideal generators as path expressions, separated by `;`.
    #[arg(long)]
    pub generators: Option<String>,
    /// ideal: also compute Ext^1 of A as a bimodule.
    #[arg(long)]
    pub enveloping: bool,
    /// Search cutoff for dominant dimensions, φ and Δ.
    #[arg(long, env = "DOMDIMLAB_CUTOFF", default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Outcome of a command before it is rendered.
pub struct Run {
    pub report: RunReport,
    pub exit_code: i32,
}

/// Runs a parsed command line. `command` is recorded in the report.
pub fn run(cli: &Cli, command: &str) -> Run {
    let inputs = input_files(cli);
    let contents: Vec<Vec<u8>> = inputs
        .iter()
        .map(|p| std::fs::read(p).unwrap_or_default())
        .collect();
    let refs: Vec<&[u8]> = contents.iter().map(Vec::as_slice).collect();
    let mut report = RunReport::new(command, &refs);
    let result = match &cli.command {
        Command::Nakayama { command } => nakayama(command, &mut report),
        Command::Quiver { command } => quiver(command, &mut report),
        Command::Verify { suite } => verify(*suite, &mut report),
    };
    let exit_code = settle(result, &mut report);
    Run { report, exit_code }
}

/// Exit code of a finished command; errors are recorded as failures.
fn settle(result: Result<(), CliError>, report: &mut RunReport) -> i32 {
    match result {
        Ok(()) if report.failures.is_empty() => 0,
        Ok(()) => 1,
        Err(e) => {
            report.fail(e.to_string());
            e.exit_code()
        }
    }
}

fn input_files(cli: &Cli) -> Vec<PathBuf> {
    let (args, specs): (Option<&QuiverArgs>, Vec<&String>) = match &cli.command {
        Command::Quiver { command } => {
            let a = quiver_args(command);
            (Some(a), a.module.iter().collect())
        }
        Command::Nakayama { command } => (None, nak_args(command).module.iter().collect()),
        Command::Verify { .. } => (None, Vec::new()),
    };
    let mut out: Vec<PathBuf> = args.and_then(|a| a.algebra.clone()).into_iter().collect();
    for s in specs {
        if let Some(path) = s.trim().strip_prefix("file:") {
            out.push(PathBuf::from(path));
        }
    }
    out
}

/// Entry point for the binary: parses `std::env::args`, prints the report,
/// reports wall time on stderr and returns the exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("--jobs must be positive");
            return 2;
        }
        // Only fails when a global pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let start = Instant::now();
    let command = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let Run { report, exit_code } = run(&cli, &command);
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    print!("{rendered}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if let Some(first) = report.failures.first() {
        eprintln!("error: {first}");
    }
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    exit_code
}

fn nak_args(c: &NakCommand) -> &NakArgs {
    match c {
        NakCommand::Info(a)
        | NakCommand::Ext(a)
        | NakCommand::Domdim(a)
        | NakCommand::Rigid(a)
        | NakCommand::Ok(a)
        | NakCommand::VerifyMain(a) => a,
    }
}

fn quiver_args(c: &QuiverCommand) -> &QuiverArgs {
    match c {
        QuiverCommand::Compile(a)
        | QuiverCommand::Resolve(a)
        | QuiverCommand::Ext(a)
        | QuiverCommand::Domdim(a)
        | QuiverCommand::Ideal(a)
        | QuiverCommand::Predicates(a) => a,
    }
}

fn parse_specs(specs: &[String]) -> Result<Vec<ModuleSpec>, CliError> {
    specs.iter().map(|s| s.parse()).collect()
}

fn nak_algebra(args: &NakArgs) -> Result<NakAlgebra, CliError> {
    let orientation = if args.line {
        Orientation::Line
    } else {
        Orientation::Cycle
    };
    Ok(NakAlgebra::validate(orientation, &args.kupisch)?)
}

fn pairs(ms: &[NakModule]) -> Vec<[usize; 2]> {
    ms.iter().map(|m| [m.vertex, m.length]).collect()
}

fn nakayama(command: &NakCommand, report: &mut RunReport) -> Result<(), CliError> {
    let args = nak_args(command);
    let a = nak_algebra(args)?;
    let specs = parse_specs(&args.module)?;
    match command {
        NakCommand::Info(_) => {
            let one_rigid = a.one_rigid_indecomposables().ok().map(|v| v.len());
            report.push(json!({
                "algebra": a.label(),
                "simples": a.n(),
                "dimension": a.dim(),
                "indecomposables": a.indecomposables().len(),
                "selfinjective": a.is_selfinjective(),
                "symmetric": a.is_symmetric(),
                "domdim": a.domdim(args.cutoff),
                "delta": a.delta(args.cutoff),
                "one_rigid_indecomposables": one_rigid,
                "dual_regular": pairs(&a.dual_regular()),
            }));
        }
        NakCommand::Ext(_) => {
            let (x, y) = two_nak_modules(&a, &specs)?;
            let hom: usize = x
                .iter()
                .flat_map(|&m| y.iter().map(move |&n| (m, n)))
                .map(|(m, n)| a.dim_hom(m, n))
                .sum();
            let ext: Vec<usize> = (1..=args.degree)
                .map(|t| {
                    x.iter()
                        .flat_map(|&m| y.iter().map(move |&n| (m, n)))
                        .map(|(m, n)| a.dim_ext(t, m, n))
                        .sum()
                })
                .collect();
            report.push(json!({
                "algebra": a.label(),
                "source": pairs(&x),
                "target": pairs(&y),
                "hom": hom,
                "ext": ext,
            }));
        }
        NakCommand::Domdim(_) => {
            let value = match specs.as_slice() {
                [] => a.domdim(args.cutoff),
                _ => {
                    let mut ms = Vec::new();
                    for s in &specs {
                        ms.extend(s.nakayama(&a)?);
                    }
                    ms.iter()
                        .map(|&m| a.domdim_module(m, args.cutoff))
                        .reduce(BoundedValue::min)
                        .expect("nonempty module")
                }
            };
            report.push(json!({ "algebra": a.label(), "domdim": value, "cutoff": args.cutoff }));
            if let BoundedValue::AtLeast(c) = value {
                return Err(CliError::Undetermined(format!(
                    "dominant dimension is at least {c}"
                )));
            }
        }
        NakCommand::Rigid(_) => {
            if specs.is_empty() {
                return Err(CliError::Usage("rigid needs at least one --module".into()));
            }
            let mut ms = Vec::new();
            for s in &specs {
                ms.extend(s.nakayama(&a)?);
            }
            ms.sort_unstable();
            ms.dedup();
            let rigid = is_k_rigid_nakayama(&a, &ms, args.k)?;
            report.push(
                json!({ "algebra": a.label(), "k": args.k, "modules": pairs(&ms), "rigid": rigid }),
            );
        }
        NakCommand::Ok(_) => {
            report.push(o_k(&NakayamaOracle::new(a.clone()), args.k)?);
        }
        NakCommand::VerifyMain(_) => {
            let evidence = match &args.assert_gendo {
                Some(p) => GendoEvidence::Asserted(p.clone()),
                None => {
                    let t = Arc::new(crate::quivalg::nakayama_to_table(&a, args.field)?);
                    GendoEvidence::Tested(is_gendo_symmetric(
                        &t,
                        args.cutoff,
                        &args.budget.budget(),
                    )?)
                }
            };
            if evidence == GendoEvidence::Tested(Decision::Undetermined) {
                return Err(CliError::Undetermined("gendo-symmetric test".into()));
            }
            let r = verify_main_inequality(&a, args.k, args.cutoff, evidence)?;
            let sequence = rigid_sequence_module(&a, args.k, args.cutoff)?;
            if r.verdict == Verdict::Fails {
                report.fail(format!(
                    "falsified on {}: ({} + 2 - {})({} + 2) - 1 = {} < {}",
                    r.algebra,
                    r.o_k,
                    a.n(),
                    r.k,
                    r.lhs,
                    r.rhs
                ));
            }
            if !sequence.rigid || !sequence.size_bound_holds {
                report.fail(format!(
                    "rigid sequence module check failed on {}",
                    a.label()
                ));
            }
            report.push(r);
            report.push(json!({
                "rigid_sequence": pairs(&sequence.summands),
                "q": sequence.q,
                "rigid": sequence.rigid,
                "size_bound_holds": sequence.size_bound_holds,
            }));
        }
    }
    Ok(())
}

fn two_nak_modules(
    a: &NakAlgebra,
    specs: &[ModuleSpec],
) -> Result<(Vec<NakModule>, Vec<NakModule>), CliError> {
    match specs {
        [x] => {
            let x = x.nakayama(a)?;
            Ok((x.clone(), x))
        }
        [x, y] => Ok((x.nakayama(a)?, y.nakayama(a)?)),
        _ => Err(CliError::Usage(
            "ext takes one or two --module specs".into(),
        )),
    }
}

fn load_algebra(args: &QuiverArgs) -> Result<Arc<AlgebraTable>, CliError> {
    let table = match (&args.preset, &args.algebra) {
        (Some(name), _) => preset(name)?,
        (None, Some(path)) => read_algebra_file(path)?.to_table()?,
        (None, None) => return Err(CliError::Usage("need --preset or --algebra".into())),
    };
    Ok(Arc::new(table))
}

fn read_algebra_file(path: &Path) -> Result<AlgebraFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(AlgebraFile::parse(&text)?)
}

fn table_modules(
    a: &Arc<AlgebraTable>,
    args: &QuiverArgs,
) -> Result<Vec<Representation>, CliError> {
    let specs = if args.module.is_empty() {
        vec![ModuleSpec::Simple(None)]
    } else {
        parse_specs(&args.module)?
    };
    specs.iter().map(|s| s.table(a)).collect()
}

fn require_decided(what: &str, d: Decision) -> Result<(), CliError> {
    if d == Decision::Undetermined {
        return Err(CliError::Undetermined(what.into()));
    }
    Ok(())
}

fn quiver(command: &QuiverCommand, report: &mut RunReport) -> Result<(), CliError> {
    let args = quiver_args(command);
    let a = load_algebra(args)?;
    match command {
        QuiverCommand::Compile(_) => {
            report.push(AlgebraFile::Table(TableFile::from_table(&a)));
        }
        QuiverCommand::Resolve(_) => {
            let m = table_modules(&a, args)?.remove(0);
            let r = Resolution::with_length(&m, args.length.saturating_sub(1))?;
            report.push(json!({
                "algebra": a.provenance(),
                "module_dim": m.dim(),
                "resolution": r.report(),
            }));
        }
        QuiverCommand::Ext(_) => {
            let ms = table_modules(&a, args)?;
            let (x, y) = match ms.as_slice() {
                [x] => (x, x),
                [x, y] => (x, y),
                _ => {
                    return Err(CliError::Usage(
                        "ext takes one or two --module specs".into(),
                    ))
                }
            };
            let r = Resolution::with_length(x, args.degree + 1)?;
            let table = r.ext_dims(y, args.degree)?;
            report.push(json!({
                "algebra": a.provenance(),
                "hom": table.hom(),
                "ext": table.dims[1..].to_vec(),
            }));
        }
        QuiverCommand::Domdim(_) => {
            if args.module.is_empty() {
                let d = domdim(&a, args.cutoff)?;
                let selfinjective = projective_injective_vertices(&a)?
                    .iter()
                    .all(Option::is_some);
                // Δ of a selfinjective algebra is only reported when the
                // indecomposables are known completely.
                let delta = if selfinjective {
                    match nakayama_indecomposables(&a) {
                        Ok(w) => Some(delta(&a, args.cutoff, &w, true)?),
                        Err(_) => None,
                    }
                } else {
                    Some(delta(&a, args.cutoff, &[], true)?)
                };
                report.push(json!({
                    "algebra": a.provenance(),
                    "domdim": d,
                    "selfinjective": selfinjective,
                    "delta": delta,
                    "cutoff": args.cutoff,
                }));
            } else {
                let m = table_modules(&a, args)?.remove(0);
                let d = domdim_module(&m, args.cutoff)?;
                report
                    .push(json!({ "algebra": a.provenance(), "domdim": d, "cutoff": args.cutoff }));
            }
        }
        QuiverCommand::Ideal(_) => {
            let text = args
                .generators
                .as_deref()
                .ok_or_else(|| CliError::Usage("ideal needs --generators".into()))?;
            let generators = text
                .split(';')
                .map(|g| a.evaluate(&RelationExpr::parse(g)?))
                .collect::<Result<Vec<_>, QuivalgError>>()?;
            let ideal = ideal_subspace(&a, &generators);
            let r = check_ideal_rigidity(&a, &ideal, &args.budget.budget())?;
            if !r.holds {
                report.fail(format!(
                    "falsified: Hom(X, A/X) = {} but Ext^1(X, X) = {}",
                    r.hom_to_quotient, r.ext1
                ));
            }
            report.push(json!({ "algebra": a.provenance(), "generators": text, "report": r }));
            if args.enveloping {
                let (_, bimodule) = regular_bimodule(&a)?;
                let ext1 = Resolution::with_length(&bimodule, 2)?.ext(&bimodule, 1)?;
                report.push(json!({ "enveloping_ext1": ext1 }));
            }
        }
        QuiverCommand::Predicates(_) => {
            let budget = args.budget.budget();
            let symmetric = symmetric_form(&a, &budget)?;
            let gendo = match a.is_semisimple()? {
                true => None,
                false => Some(is_gendo_symmetric(&a, args.cutoff, &budget)?),
            };
            let selfinjective = projective_injective_vertices(&a)?
                .iter()
                .all(Option::is_some);
            report.push(json!({
                "algebra": a.provenance(),
                "dimension": a.dim(),
                "simples": a.vertex_count(),
                "local": is_local(&a)?,
                "commutative": a.is_commutative(),
                "selfinjective": selfinjective,
                "symmetric": symmetric,
                "gendo_symmetric": gendo,
            }));
            require_decided("symmetric", symmetric.decision)?;
            if let Some(g) = gendo {
                require_decided("gendo-symmetric", g)?;
            }
        }
    }
    Ok(())
}

fn verify(suite: Suite, report: &mut RunReport) -> Result<(), CliError> {
    for item in run_suite(suite) {
        if !item.passed {
            report.fail(format!("item {}: {}", item.id, item.claim));
        }
        report.push(item);
    }
    Ok(())
}
