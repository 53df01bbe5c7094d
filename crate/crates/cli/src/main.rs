//! Command-line front end: build W-graph ideals, run the engine, verify,
//! and export artifacts.
//!
//! Exit codes: 0 success (all requested verifications pass), 1 verification
//! or golden failure, 2 usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use wgraph_core::coxeter::{CoxeterGroup, Dihedral, GenSet, TypeA};
use wgraph_core::export::{
    golden_compare_specht, ideal_json, report_json, to_dot, to_json, wgraph_doc, ExportError,
    GOLDEN_SPECHT_331,
};
use wgraph_core::ideal::{
    induced_specht_ideal, one_dim_ideal, parabolic_ideal, regular_ideal, specht_ideal, validate,
    Family, IdealTable, ParabolicVariant,
};
use wgraph_core::laurent::Coeff;
use wgraph_core::tableaux::Partition;
use wgraph_core::verify::{
    bar_oracle, c_basis_matrices, char_compare, check_braid, check_quadratic,
    default_char_words, seminormal_matrices, wgraphdef_conformance, OracleFamily, Report,
};
use wgraph_core::wgraph::{build_wgraph, choice_independence_audit, mu_scan};

#[derive(Parser)]
#[command(
    name = "wgraph",
    about = "W-graphs from W-graph ideals in Coxeter groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The regular ideal: the whole group, Kazhdan-Lusztig W-graph.
    Regular(JobArgs),
    /// Deodhar parabolic ideal D_J (psi or phi variant).
    Parabolic(JobArgs),
    /// Specht-module ideal for a partition (type A).
    Specht(JobArgs),
    /// Ideal induced from a Specht ideal on a consecutive generator run K.
    Induced(JobArgs),
    /// One-dimensional ideal with weak descents J1 and weak ascents J2.
    Onedim(JobArgs),
    /// Compare the (3,3,1) expansion table against a golden fixture.
    Golden {
        /// Fixture path; the built-in table is used when omitted.
        #[arg(long)]
        fixture: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    None,
    Json,
    Dot,
    Table,
    Ideal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    None,
    Relations,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatKind {
    None,
    MaxMu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffKind {
    /// Arbitrary-precision integers (safe default).
    Big,
    /// Checked 64-bit integers (fast; aborts on overflow).
    I64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Psi,
    Phi,
}

#[derive(Args)]
struct JobArgs {
    /// Symmetric group degree (type A backend); inferred from --lambda when
    /// omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Dihedral order parameter m for the I2(m) backend.
    #[arg(long)]
    m: Option<u32>,
    /// Partition, comma separated (specht / induced inner shape).
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    /// Generator indices of J, comma separated (parabolic).
    #[arg(long = "J", value_delimiter = ',')]
    j: Option<Vec<usize>>,
    /// Generator indices of K, comma separated (induced).
    #[arg(long = "K", value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Weak-descent set J1 (onedim).
    #[arg(long = "J1", value_delimiter = ',')]
    j1: Option<Vec<usize>>,
    /// Weak-ascent set J2 (onedim).
    #[arg(long = "J2", value_delimiter = ',')]
    j2: Option<Vec<usize>>,
    /// Parabolic variant.
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    #[arg(long, value_enum, default_value = "none")]
    export: ExportKind,
    #[arg(long, value_enum, default_value = "none")]
    verify: VerifyLevel,
    #[arg(long, value_enum, default_value = "none")]
    stat: StatKind,
    /// Allow jobs with more than 5000 ideal elements.
    #[arg(long)]
    slow_ok: bool,
    /// Worker threads (defaults to RAYON_NUM_THREADS or all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Coefficient backend.
    #[arg(long, value_enum, default_value = "big")]
    coeff: CoeffKind,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Golden { fixture } => {
            let text = match &fixture {
                None => GOLDEN_SPECHT_331.to_string(),
                Some(path) => match std::fs::read_to_string(path) {
                    Ok(t) => t,
                    Err(e) => return usage_error(&format!("cannot read fixture: {e}")),
                },
            };
            match golden_compare_specht::<BigInt>(&text) {
                Ok(()) => {
                    println!("golden: PASS (expansion table matches)");
                    ExitCode::SUCCESS
                }
                Err(ExportError::GoldenMismatch(detail)) => {
                    eprintln!("golden: FAIL: {detail}");
                    ExitCode::from(1)
                }
                Err(e) => usage_error(&format!("{e}")),
            }
        }
        Command::Regular(args) => run_family(FamilyKind::Regular, args),
        Command::Parabolic(args) => run_family(FamilyKind::Parabolic, args),
        Command::Specht(args) => run_family(FamilyKind::Specht, args),
        Command::Induced(args) => run_family(FamilyKind::Induced, args),
        Command::Onedim(args) => run_family(FamilyKind::OneDim, args),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FamilyKind {
    Regular,
    Parabolic,
    Specht,
    Induced,
    OneDim,
}

fn gen_set(v: &Option<Vec<usize>>) -> GenSet {
    GenSet::from_indices(v.as_deref().unwrap_or(&[]))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

fn run_family(kind: FamilyKind, args: JobArgs) -> ExitCode {
    if let Some(t) = args.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --threads ignored");
        }
    }

    // Size gate before any construction.
    let estimated: f64 = match kind {
        FamilyKind::Regular | FamilyKind::Parabolic => match (args.n, args.m) {
            (Some(n), None) => factorial(n),
            (None, Some(m)) => 2.0 * m as f64,
            _ => {
                return usage_error("exactly one of --n or --m is required");
            }
        },
        FamilyKind::Specht | FamilyKind::Induced => {
            let Some(lambda) = &args.lambda else {
                return usage_error("--lambda is required");
            };
            match Partition::new(lambda.clone()) {
                Ok(shape) => {
                    let inner = shape.hook_length_count() as f64;
                    if kind == FamilyKind::Induced {
                        let Some(n) = args.n else {
                            return usage_error("--n is required for induced ideals");
                        };
                        let k = gen_set(&args.k);
                        inner * factorial(n) / factorial(k.len() + 1)
                    } else {
                        inner
                    }
                }
                Err(e) => return usage_error(&format!("{e}")),
            }
        }
        FamilyKind::OneDim => 1.0,
    };
    if estimated > 5000.0 && !args.slow_ok {
        return usage_error(&format!(
            "estimated {estimated:.0} ideal elements exceeds 5000; rerun with --slow-ok"
        ));
    }

    match (args.n, args.m) {
        (_, None) => {
            let n = match kind {
                FamilyKind::Specht => {
                    let lambda = args.lambda.as_ref().expect("checked above");
                    let n_from_lambda: usize = lambda.iter().sum();
                    if let Some(n) = args.n {
                        if n != n_from_lambda {
                            return usage_error(&format!(
                                "--n {n} does not match |lambda| = {n_from_lambda}"
                            ));
                        }
                    }
                    n_from_lambda
                }
                _ => match args.n {
                    Some(n) => n,
                    None => return usage_error("--n or --m is required"),
                },
            };
            if !(1..=255).contains(&n) {
                return usage_error("--n must be between 1 and 255");
            }
            let group = TypeA::new(n);
            let table = match build_table(kind, &args, &group) {
                Ok(t) => t,
                Err(code) => return code,
            };
            dispatch_coeff(&args, &table)
        }
        (None, Some(m)) => {
            let group = match Dihedral::new(m) {
                Ok(g) => g,
                Err(e) => return usage_error(&format!("{e}")),
            };
            if matches!(kind, FamilyKind::Specht | FamilyKind::Induced) {
                return usage_error("specht/induced ideals need the type A backend (--n)");
            }
            let table = match build_table(kind, &args, &group) {
                Ok(t) => t,
                Err(code) => return code,
            };
            dispatch_coeff(&args, &table)
        }
        (Some(_), Some(_)) => usage_error("--n and --m are mutually exclusive"),
    }
}

trait BuildFamily: CoxeterGroup + Sized {
    fn specht(args: &JobArgs, group: &Self) -> Result<IdealTable<Self>, ExitCode>;
    fn induced(args: &JobArgs, group: &Self) -> Result<IdealTable<Self>, ExitCode>;
}

impl BuildFamily for TypeA {
    fn specht(args: &JobArgs, _group: &TypeA) -> Result<IdealTable<TypeA>, ExitCode> {
        let shape = Partition::new(args.lambda.clone().expect("checked"))
            .map_err(|e| usage_error(&format!("{e}")))?;
        Ok(specht_ideal(&shape))
    }

    fn induced(args: &JobArgs, group: &TypeA) -> Result<IdealTable<TypeA>, ExitCode> {
        let shape = Partition::new(args.lambda.clone().expect("checked"))
            .map_err(|e| usage_error(&format!("{e}")))?;
        let k = gen_set(&args.k);
        induced_specht_ideal(group, k, &shape).map_err(|e| usage_error(&format!("{e}")))
    }
}

impl BuildFamily for Dihedral {
    fn specht(_args: &JobArgs, _group: &Dihedral) -> Result<IdealTable<Dihedral>, ExitCode> {
        Err(usage_error("specht requires type A"))
    }

    fn induced(_args: &JobArgs, _group: &Dihedral) -> Result<IdealTable<Dihedral>, ExitCode> {
        Err(usage_error("induced requires type A"))
    }
}

fn build_table<G: BuildFamily>(
    kind: FamilyKind,
    args: &JobArgs,
    group: &G,
) -> Result<IdealTable<G>, ExitCode> {
    match kind {
        FamilyKind::Regular => Ok(regular_ideal(group)),
        FamilyKind::Parabolic => {
            let j = gen_set(&args.j);
            if !j.is_subset(GenSet::full(group.rank())) {
                return Err(usage_error("--J contains out-of-range generators"));
            }
            let variant = match args.variant {
                Some(Variant::Psi) | None => ParabolicVariant::Psi,
                Some(Variant::Phi) => ParabolicVariant::Phi,
            };
            Ok(parabolic_ideal(group, j, variant))
        }
        FamilyKind::Specht => G::specht(args, group),
        FamilyKind::Induced => G::induced(args, group),
        FamilyKind::OneDim => {
            let j1 = gen_set(&args.j1);
            let j2 = gen_set(&args.j2);
            one_dim_ideal(group, j1, j2).map_err(|e| usage_error(&format!("{e}")))
        }
    }
}

fn dispatch_coeff<G: CoxeterGroup>(args: &JobArgs, table: &IdealTable<G>) -> ExitCode {
    match args.coeff {
        CoeffKind::Big => run_job::<G, BigInt>(args, table),
        CoeffKind::I64 => run_job::<G, i64>(args, table),
    }
}

fn write_artifact(args: &JobArgs, text: &str) -> ExitCode {
    match &args.out {
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::File::create(path).and_then(|mut f| f.write_all(text.as_bytes())) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_error(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn run_job<G: CoxeterGroup, C: Coeff>(args: &JobArgs, table: &IdealTable<G>) -> ExitCode {
    // Pure mu statistics on a streaming run when nothing else is requested:
    // this is the memory-lean path for very large ideals.
    if args.stat == StatKind::MaxMu
        && args.export == ExportKind::None
        && args.verify == VerifyLevel::None
    {
        let scan = match mu_scan::<C>(table.core()) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("engine failure: {e}");
                return ExitCode::from(1);
            }
        };
        eprintln!(
            "ideal: {} elements; mu edges: {}; q-entries {} ({} terms; peak {} live columns / {} live entries)",
            table.dim(),
            scan.mu.edge_count(),
            scan.q_entries,
            scan.total_terms,
            scan.peak_live_columns,
            scan.peak_live_entries
        );
        println!("max |mu| = {}", scan.max_abs_mu);
        return ExitCode::SUCCESS;
    }

    let wg = match build_wgraph::<C>(table.core()) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("engine failure: {e}");
            return ExitCode::from(1);
        }
    };
    eprintln!(
        "ideal: {} elements; mu edges: {}",
        table.dim(),
        wg.mu.edge_count()
    );
    if args.stat == StatKind::MaxMu {
        println!("max |mu| = {}", wg.mu.max_abs());
    }

    let mut verification = Report::default();
    if args.verify != VerifyLevel::None {
        let invariants = validate(table);
        if invariants.is_empty() {
            verification.ok("table-invariants");
        } else {
            verification.fail("table-invariants", format!("{invariants:?}"));
        }
        let rep = c_basis_matrices(&wg, table.core());
        let spec = table.group().spec();
        verification.merge(check_quadratic(&rep));
        verification.merge(check_braid(&rep, |s, t| spec.coxeter_m(s, t)));
        verification.merge(wgraphdef_conformance(&rep, &wg));
        if args.verify == VerifyLevel::Full {
            match choice_independence_audit::<C>(table.core()) {
                Ok(()) => verification.ok("choice-independence"),
                Err(e) => verification.fail("choice-independence", format!("{e}")),
            }
            let oracle_family = match table.family() {
                Family::Regular => Some(OracleFamily::Regular),
                Family::Parabolic { variant, .. } => Some(match variant {
                    ParabolicVariant::Psi => OracleFamily::ParabolicPsi,
                    ParabolicVariant::Phi => OracleFamily::ParabolicPhi,
                }),
                Family::OneDim { .. } => Some(OracleFamily::OneDim),
                _ => None,
            };
            if let Some(fam) = oracle_family {
                match bar_oracle::<C>(table.core(), fam) {
                    Ok(oracle) => {
                        if oracle == wg.qtable {
                            verification.ok("bar-oracle");
                        } else {
                            verification.fail("bar-oracle", "q-tables differ");
                        }
                    }
                    Err(e) => verification.fail("bar-oracle", format!("{e}")),
                }
            }
            if let Family::Specht { lambda } = table.family() {
                let shape = Partition::new(lambda.clone()).expect("table built from it");
                match seminormal_matrices::<C>(&shape) {
                    Ok(semi) => {
                        let rank = table.group().rank();
                        let words: Vec<Vec<usize>> = default_char_words(rank)
                            .into_iter()
                            .filter(|w| w.len() <= 4)
                            .collect();
                        let report = char_compare(&rep, &semi, &words);
                        if report.pass() {
                            verification.ok("seminormal-characters");
                        } else {
                            let n = report.failures().count();
                            verification.fail("seminormal-characters", format!("{n} traces differ"));
                        }
                    }
                    Err(e) => verification.fail("seminormal-characters", format!("{e}")),
                }
            }
        }
        let passed = verification.pass();
        print!("{}", report_json(&verification));
        if !passed {
            return ExitCode::from(1);
        }
    }

    match args.export {
        ExportKind::None => ExitCode::SUCCESS,
        ExportKind::Json => write_artifact(args, &to_json(&wgraph_doc(table, &wg))),
        ExportKind::Dot => write_artifact(args, &to_dot(&wgraph_doc(table, &wg))),
        ExportKind::Ideal => write_artifact(args, &ideal_json(table)),
        ExportKind::Table => {
            let mut text = String::new();
            for line in wgraph_core::export::expansion_lines(&wg.qtable) {
                text.push_str(&line);
                text.push('\n');
            }
            write_artifact(args, &text)
        }
    }
}
