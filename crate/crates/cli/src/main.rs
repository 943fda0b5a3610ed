//! `autkit` — groups as graph symmetries, expanded symmetry models, and
//! point-bijection recovery, from one batch-friendly entry point.
//!
//! Every subcommand produces the same JSON report shape (`--json`); the
//! default text output is a rendering of that JSON. Exit code 0 means no
//! exact check failed — empirical findings never gate.

mod run;
mod source;

use autkit::report::{CheckReport, CheckStatus, RunReport};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "autkit",
    version,
    about = "Finite permutation groups, structure symmetries, amalgamation classes, and reconstruction"
)]
struct Cli {
    /// Emit the run report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Include a plain-language account of what the command verifies
    #[arg(long, global = true)]
    explain: bool,

    /// Seed for randomized harnesses
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Size bound for enumerations; each subcommand has its own default
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Closure operator: dcl, threshold:<t>, or class:<constraint file>
    #[arg(long, global = true, default_value = "dcl")]
    closure: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a permutation group or multiplication table
    Group(GroupArgs),
    /// Report on a finite relational structure
    #[command(name = "struct")]
    Structure(StructArgs),
    /// Amalgamation classes: membership, amalgams, symmetries, limits
    Class(ClassArgs),
    /// Build the expanded symmetry model and run its verifiers
    Exaut(ExautArgs),
    /// Build a graph whose symmetry group realizes a given group
    Frucht(FruchtArgs),
    /// Round-trip a group through its graph's relational class
    Outpipe(GroupOnly),
    /// Recover point bijections from abstract symmetry-group isomorphisms
    Reconstruct(ReconstructArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Catalog name (Z1..Z8, V4, S3, D4, Q8) or group/table file
    #[arg(long)]
    group: String,
    /// Enumerate the subgroup lattice
    #[arg(long)]
    subgroups: bool,
    /// Test abstract isomorphism against a second group
    #[arg(long, value_name = "NAME|FILE")]
    iso: Option<String>,
}

#[derive(Args)]
struct StructArgs {
    /// Playground name (pureset:5, c5, path:4, rook:3, ...) or file
    #[arg(long, value_name = "NAME|FILE")]
    playground: String,
    /// Comma-separated points to close under --closure
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
}

#[derive(Args)]
struct ClassArgs {
    #[command(subcommand)]
    action: ClassAction,
}

#[derive(Subcommand)]
enum ClassAction {
    /// Hereditary and free-amalgamation checks over small members
    Check(ClassSource),
    /// Enumerate members up to the size bound
    Members(ClassSource),
    /// Compute the group of signature symmetries
    Symmetry(ClassSource),
    /// Grow a finite stage with the small-extension property
    Generic(GenericArgs),
}

#[derive(Args)]
struct ClassSource {
    /// Built-in class: graphs, puresets, knfree:<n>, colored:<n>
    #[arg(long, conflicts_with_all = ["spec", "gamma"])]
    name: Option<String>,
    /// Class constraint file
    #[arg(long, conflicts_with = "gamma")]
    spec: Option<String>,
    /// Graph (playground name or file) whose decorated class to build
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Args)]
struct GenericArgs {
    #[command(flatten)]
    class: ClassSource,
    /// Stage budget for the growth loop
    #[arg(long, default_value_t = 12)]
    stages: usize,
}

#[derive(Args)]
struct ExautArgs {
    #[command(subcommand)]
    action: ExautAction,
}

#[derive(Subcommand)]
enum ExautAction {
    /// Build the model and run every structural verifier
    Verify(PlaygroundOnly),
    /// Does the setwise stabilizer restrict onto the induced symmetries?
    Star(StarArgs),
    /// List the closed sets reachable from small seeds
    Family(PlaygroundOnly),
}

#[derive(Args)]
struct PlaygroundOnly {
    /// Playground name or structure file
    #[arg(long, value_name = "NAME|FILE")]
    playground: String,
}

#[derive(Args)]
struct StarArgs {
    /// Playground name or structure file
    #[arg(long, value_name = "NAME|FILE")]
    playground: String,
    /// Comma-separated points of the set to test
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<usize>,
}

#[derive(Args)]
struct FruchtArgs {
    /// Catalog name (Z1..Z8, V4, S3, D4, Q8) or group/table file
    #[arg(long)]
    group: String,
    /// Where to write the graph file (default: frucht-<group>.graph)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupOnly {
    /// Catalog name (Z1..Z8, V4, S3, D4, Q8) or group/table file
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct ReconstructArgs {
    #[command(subcommand)]
    action: ReconstructAction,
}

#[derive(Subcommand)]
enum ReconstructAction {
    /// Scramble a playground, then recover the hidden relabeling
    Demo(DemoArgs),
    /// Recover a point bijection from files and generator images
    Run(RunArgs),
    /// The six-point boundary case where recovery must fail
    Sym6,
}

#[derive(Args)]
struct DemoArgs {
    /// Playground name or structure file
    #[arg(long, default_value = "c5", value_name = "NAME|FILE")]
    playground: String,
}

#[derive(Args)]
struct RunArgs {
    /// Source structure file
    #[arg(long)]
    m: PathBuf,
    /// Target structure file
    #[arg(long)]
    n: PathBuf,
    /// Generator-image file: `<perm> -> <perm>` per line, mapping
    /// symmetries of M to symmetries of N
    #[arg(long)]
    iso: PathBuf,
}

fn command_label(cmd: &Command) -> &'static str {
    match cmd {
        Command::Group(_) => "group",
        Command::Structure(_) => "struct",
        Command::Class(c) => match c.action {
            ClassAction::Check(_) => "class check",
            ClassAction::Members(_) => "class members",
            ClassAction::Symmetry(_) => "class symmetry",
            ClassAction::Generic(_) => "class generic",
        },
        Command::Exaut(e) => match e.action {
            ExautAction::Verify(_) => "exaut verify",
            ExautAction::Star(_) => "exaut star",
            ExautAction::Family(_) => "exaut family",
        },
        Command::Frucht(_) => "frucht",
        Command::Outpipe(_) => "outpipe",
        Command::Reconstruct(r) => match r.action {
            ReconstructAction::Demo(_) => "reconstruct demo",
            ReconstructAction::Run(_) => "reconstruct run",
            ReconstructAction::Sym6 => "reconstruct sym6",
        },
    }
}

fn dispatch(cli: &Cli) -> autkit::Result<RunReport> {
    let bound = |default: usize| cli.bound.unwrap_or(default);
    match &cli.command {
        Command::Group(a) => run::group(&a.group, a.subgroups, a.iso.as_deref()),
        Command::Structure(a) => run::structure(&a.playground, a.set.as_deref(), &cli.closure),
        Command::Class(c) => {
            let src = match &c.action {
                ClassAction::Check(s)
                | ClassAction::Members(s)
                | ClassAction::Symmetry(s) => s,
                ClassAction::Generic(g) => &g.class,
            };
            let (name, spec, gamma) =
                (src.name.as_deref(), src.spec.as_deref(), src.gamma.as_deref());
            match &c.action {
                ClassAction::Check(_) => run::class_check(name, spec, gamma, bound(4)),
                ClassAction::Members(_) => run::class_members(name, spec, gamma, bound(4)),
                ClassAction::Symmetry(_) => run::class_symmetry(name, spec, gamma, bound(3)),
                ClassAction::Generic(g) => {
                    run::class_generic(name, spec, gamma, bound(2), g.stages, cli.seed)
                }
            }
        }
        Command::Exaut(e) => match &e.action {
            ExautAction::Verify(a) => run::exaut_verify(&a.playground, &cli.closure, bound(2)),
            ExautAction::Star(a) => run::exaut_star(&a.playground, &a.set),
            ExautAction::Family(a) => run::exaut_family(&a.playground, &cli.closure, bound(2)),
        },
        Command::Frucht(a) => run::frucht(&a.group, a.out.as_deref()),
        Command::Outpipe(a) => run::outpipe(&a.group, bound(3)),
        Command::Reconstruct(r) => match &r.action {
            ReconstructAction::Demo(a) => run::reconstruct_demo(&a.playground, cli.seed),
            ReconstructAction::Run(a) => run::reconstruct_run(&a.m, &a.n, &a.iso),
            ReconstructAction::Sym6 => run::reconstruct_sym6(),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut report = dispatch(&cli).unwrap_or_else(|e| {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        let mut r = RunReport::new(command_label(&cli.command), None, json!({ "argv": argv }));
        r.push(CheckReport::new("run", CheckStatus::Error, e.to_string()));
        r
    });
    if cli.explain {
        report.explanation = Some(run::explanation(&report.command).to_string());
    }
    report.elapsed_ms = Some(started.elapsed().as_millis() as u64);

    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
    }
    std::process::exit(if report.all_exact_ok() { 0 } else { 1 });
}
