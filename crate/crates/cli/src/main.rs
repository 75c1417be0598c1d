use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rectpas::geometry::{validate_instance_packing, validate_misr_solution};
use rectpas::gknap::{kernel_2dkr, pas_2dkr, GknapKnobs};
use rectpas::hardness::{build_yes_packing, check_yes_packing, reduce_mss_to_2dkr};
use rectpas::io::{
    gen_guillotine, gen_misr_planted, gen_misr_with_opt, gen_mss, render_misr, render_packing, strip_trap,
    GknapSolution, GuillotineParams, InstanceFile, Metadata, MisrGenParams, MssInstance, Provenance, ReductionFile,
    SolutionBody, SolutionFile,
};
use rectpas::misr::{build_grid, kernel_misr, pas_misr, GridOutcome, MisrKnobs, MisrPasConfig};
use rectpas::oracle::{knapsack_exact, mis_rectangles_exact, OracleBudget, OracleError};
use rectpas::{Epsilon, KernelReport, PasOutcome};
use serde_json::json;

const OUT_DIR_VAR: &str = "RECTPAS_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "rectpas",
    version,
    about = "Approximation schemes, kernels and exact solvers for rectangle packing problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Shrink an instance to a kernel and report the surviving indices.
    Kernel(KernelArgs),
    /// Reduce Multi-Subset Sum to a knapsack instance.
    Reduce(ReduceArgs),
    /// Check a solution, a packing or a reduction file.
    Verify(VerifyArgs),
    /// Draw an instance, optionally with a solution.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted. Relative paths are resolved against
    /// $RECTPAS_OUT_DIR when it is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct Knobs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "1/2")]
    eps: Epsilon,
    /// Group-size cap c for the rectangle scheme.
    #[arg(long)]
    cap_c: Option<usize>,
    /// Block budget b for the rectangle scheme.
    #[arg(long)]
    cap_b: Option<usize>,
    /// Rounding parameter k̃ for the knapsack scheme.
    #[arg(long)]
    ktilde: Option<u128>,
    /// Largest k′ the knapsack scheme will search exactly.
    #[arg(long)]
    max_k_prime: Option<usize>,
    /// Time limit of exact searches, in seconds.
    #[arg(long)]
    budget: Option<u64>,
}

impl Knobs {
    fn budget(&self) -> OracleBudget {
        let mut b = OracleBudget { max_solution_size: 64, ..OracleBudget::default() };
        if let Some(s) = self.budget {
            b.time_limit = Duration::from_secs(s);
        }
        b
    }

    fn need_k(&self) -> Result<usize> {
        self.k.context("--k is required for this algorithm")
    }

    fn misr_knobs(&self) -> MisrKnobs {
        match (self.cap_c, self.cap_b) {
            (None, None) => MisrKnobs::theory(self.eps),
            (c, b) => MisrKnobs::custom(c.or(b).unwrap_or(1), b.or(c).unwrap_or(1)),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Misr,
    Gknap,
    StripTrap,
    Mss,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of rectangles, or of packed items.
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    planted: usize,
    #[arg(long, default_value_t = 100)]
    span: i64,
    #[arg(long, default_value_t = 30)]
    max_side: i64,
    /// Redraw until the exact optimum is at least this.
    #[arg(long)]
    opt_min: Option<usize>,
    /// Redraw until the exact optimum is at most this.
    #[arg(long)]
    opt_max: Option<usize>,
    /// Knapsack side N.
    #[arg(long, default_value_t = 1000)]
    side: i64,
    #[arg(long, default_value_t = 0)]
    extra: usize,
    #[arg(long, default_value_t = 0)]
    slack: u32,
    #[arg(long, default_value_t = 0)]
    floor: i64,
    #[arg(long)]
    rotate: bool,
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Total height of the bottom items of the strip-trap family.
    #[arg(long, default_value_t = 6)]
    delta: i64,
    #[arg(long, default_value_t = 5)]
    m: usize,
    #[arg(long, default_value_t = 50)]
    t_max: u64,
    /// Generate a Multi-Subset Sum no-instance.
    #[arg(long)]
    no: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    MisrPas,
    MisrExact,
    #[value(name = "2dkr-pas")]
    KnapsackPas,
    #[value(name = "2dkr-exact")]
    KnapsackExact,
}

#[derive(Args)]
struct SolveArgs {
    algorithm: Algorithm,
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    knobs: Knobs,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Misr,
    #[value(name = "2dkr")]
    Knapsack,
}

#[derive(Args)]
struct KernelArgs {
    problem: Problem,
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    #[value(name = "mss-to-2dkr")]
    MssTo2dkr,
}

#[derive(Args)]
struct ReduceArgs {
    reduction: Reduction,
    /// A Multi-Subset Sum file written by `gen mss`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    xs: Vec<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    /// Known solution; the packing built from it is included.
    #[arg(long, value_delimiter = ',')]
    solution: Vec<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Solution,
    Packing,
    Reduction,
}

#[derive(Args)]
struct VerifyArgs {
    kind: VerifyKind,
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long)]
    reduction: Option<PathBuf>,
    /// Time limit of the exact check of an "OPT < k" assertion, in seconds.
    #[arg(long, default_value_t = 60)]
    budget: u64,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Draw the grid built for this k (rectangle instances only).
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a successful command concluded.
enum Status {
    Done,
    OptBelowK,
    Rejected,
}

impl Status {
    fn code(self) -> ExitCode {
        match self {
            Status::Done => ExitCode::SUCCESS,
            Status::OptBelowK => ExitCode::from(2),
            Status::Rejected => ExitCode::from(3),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Kernel(a) => kernel(a),
        Command::Reduce(a) => reduce(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Some(p) => {
            let p = resolve(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    InstanceFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_solution(path: &Path) -> Result<SolutionFile> {
    SolutionFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn meta(pairs: &[(&str, serde_json::Value)]) -> Metadata {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn generate(a: GenArgs) -> Result<Status> {
    let text = match a.kind {
        GenKind::Misr => {
            let p = MisrGenParams { n: a.n, planted: a.planted, span: a.span, max_side: a.max_side, seed: a.seed };
            let inst = if a.opt_min.is_some() || a.opt_max.is_some() {
                let range = a.opt_min.unwrap_or(0)..=a.opt_max.unwrap_or(usize::MAX);
                gen_misr_with_opt(&p, range, 1000, &OracleBudget::default())?.0
            } else {
                gen_misr_planted(&p)?.0
            };
            let m = meta(&[("generator", json!("misr-planted")), ("params", json!(p))]);
            InstanceFile::from_misr(&inst, m).to_json()
        }
        GenKind::Gknap => {
            let p = GuillotineParams {
                n: a.side,
                items: a.n,
                extra: a.extra,
                slack_percent: a.slack,
                floor: a.floor,
                rotate: a.rotate,
                seed: a.seed,
            };
            let g = gen_guillotine(&p)?;
            let m = meta(&[
                ("generator", json!("guillotine")),
                ("params", json!(p)),
                ("reference_packing", json!(GknapSolution::from_packing(&g.packing))),
            ]);
            InstanceFile::from_knapsack(&g.instance, m).to_json()
        }
        GenKind::StripTrap => {
            let g = strip_trap(a.k, a.side, a.delta, a.seed)?;
            let m = meta(&[
                ("generator", json!("strip-trap")),
                ("params", json!({"k": a.k, "n": a.side, "delta": a.delta, "seed": a.seed})),
                ("reference_packing", json!(GknapSolution::from_packing(&g.packing))),
            ]);
            InstanceFile::from_knapsack(&g.instance, m).to_json()
        }
        GenKind::Mss => serde_json::to_string_pretty(&gen_mss(a.m, a.k, a.t_max, !a.no, a.seed)?)?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Done)
}

fn solve(a: SolveArgs) -> Result<Status> {
    let file = read_instance(&a.instance)?;
    let budget = a.knobs.budget();
    let eps = a.knobs.eps;
    let mut knobs = Metadata::new();
    knobs.insert("eps".into(), json!(eps.to_string()));
    if let Some(k) = a.knobs.k {
        knobs.insert("k".into(), json!(k));
    }
    let mut assertions = Vec::new();
    let (name, body) = match a.algorithm {
        Algorithm::MisrExact => {
            let inst = file.to_misr()?;
            let sol = mis_rectangles_exact(&inst, &budget)?;
            match a.knobs.k {
                Some(k) if sol.len() < k => ("misr-exact", SolutionBody::OptBelowK { k, sound: true }),
                _ => {
                    assertions.push(format!("optimum = {}", sol.len()));
                    knobs.insert("min_size".into(), json!(sol.len()));
                    ("misr-exact", SolutionBody::Misr { selected: sol })
                }
            }
        }
        Algorithm::MisrPas => {
            let inst = file.to_misr()?;
            let k = a.knobs.need_k()?;
            let cfg = MisrPasConfig { budget, ..MisrPasConfig::new(a.knobs.misr_knobs()) };
            let rep = pas_misr(&inst, k, eps, &cfg)?;
            knobs.insert("c".into(), json!(rep.knobs.c));
            knobs.insert("b".into(), json!(rep.knobs.b));
            knobs.insert("theory".into(), json!(rep.knobs.theory));
            knobs.insert("min_size".into(), json!(rep.target));
            let body = match rep.outcome {
                PasOutcome::Solution(sel) => SolutionBody::Misr { selected: sel },
                PasOutcome::OptBelowK { sound } => SolutionBody::OptBelowK { k, sound },
            };
            ("misr-pas", body)
        }
        Algorithm::KnapsackExact => {
            let inst = file.to_knapsack()?;
            let cap = a.knobs.k.unwrap_or(inst.items.len());
            let sol = knapsack_exact(&inst.items, inst.n, inst.n, cap, inst.rotations, &budget)?;
            match a.knobs.k {
                Some(k) if sol.len() < k => ("2dkr-exact", SolutionBody::OptBelowK { k, sound: true }),
                _ => {
                    assertions.push(format!("optimum capped at {cap} = {}", sol.len()));
                    knobs.insert("min_size".into(), json!(sol.len()));
                    let packing = rectpas::Packing { n: inst.n, placements: sol.placements };
                    ("2dkr-exact", SolutionBody::Gknap(GknapSolution::from_packing(&packing)))
                }
            }
        }
        Algorithm::KnapsackPas => {
            let inst = file.to_knapsack()?;
            let k = a.knobs.need_k()?;
            let gk = GknapKnobs {
                k_tilde: a.knobs.ktilde,
                max_k_prime: a.knobs.max_k_prime,
                budget,
                ..GknapKnobs::default()
            };
            let rep = pas_2dkr(&inst, k, eps, &gk)?;
            knobs.insert("k_prime".into(), json!(rep.k_prime));
            knobs.insert("k_tilde".into(), json!(rep.k_tilde.to_string()));
            knobs.insert("min_size".into(), json!(rep.k_prime));
            let body = match rep.outcome {
                PasOutcome::Solution(p) => SolutionBody::Gknap(GknapSolution::from_packing(&p)),
                PasOutcome::OptBelowK { sound } => SolutionBody::OptBelowK { k, sound },
            };
            ("2dkr-pas", body)
        }
    };
    let status = match &body {
        SolutionBody::OptBelowK { k, sound } => {
            assertions.push(format!("OPT < {k} ({})", if *sound { "proved" } else { "heuristic" }));
            eprintln!("asserted OPT < {k}");
            Status::OptBelowK
        }
        _ => Status::Done,
    };
    let sol = SolutionFile {
        instance_hash: file.hash(),
        solution: body,
        provenance: Provenance { algorithm: name.into(), knobs, assertions },
    };
    let text = match a.output.format {
        Format::Json => sol.to_json(),
        Format::Svg => render_file(&file, Some(&sol), None)?,
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(status)
}

fn kernel(a: KernelArgs) -> Result<Status> {
    let file = read_instance(&a.instance)?;
    let k = a.knobs.need_k()?;
    let report: KernelReport = match a.problem {
        Problem::Misr => {
            let cfg = MisrPasConfig { budget: a.knobs.budget(), ..MisrPasConfig::new(a.knobs.misr_knobs()) };
            kernel_misr(&file.to_misr()?, k, &cfg)?
        }
        Problem::Knapsack => {
            let gk = GknapKnobs { k_tilde: a.knobs.ktilde, max_k_prime: a.knobs.max_k_prime, ..GknapKnobs::default() };
            kernel_2dkr(&file.to_knapsack()?, k, a.knobs.eps, &gk)
        }
    };
    let text = serde_json::to_string_pretty(&json!({"instance_hash": file.hash(), "kernel": report}))?;
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Done)
}

fn reduce(a: ReduceArgs) -> Result<Status> {
    let Reduction::MssTo2dkr = a.reduction;
    let mss = match &a.input {
        Some(p) => {
            serde_json::from_str::<MssInstance>(&read(p)?).with_context(|| format!("parsing {}", p.display()))?
        }
        None => MssInstance {
            xs: a.xs.clone(),
            t: a.t.context("--t is required without --input")?,
            k: a.k.context("--k is required without --input")?,
            solution: None,
        },
    };
    let solution = if a.solution.is_empty() { mss.solution.clone() } else { Some(a.solution.clone()) };
    let red = reduce_mss_to_2dkr(&mss.xs, mss.t, mss.k)?;
    let packing = match &solution {
        Some(ys) => Some(build_yes_packing(&red, &mss.xs, ys)?.packing),
        None => None,
    };
    let m = meta(&[("generator", json!("mss-to-2dkr")), ("t", json!(mss.t)), ("k", json!(mss.k))]);
    let instance = InstanceFile::from_knapsack(&red.instance, m);
    let file = ReductionFile {
        xs: mss.xs.clone(),
        t: mss.t,
        k: mss.k,
        instance_hash: instance.hash(),
        instance,
        constants: red.constants,
        k_prime: red.k_prime,
        roles: red.roles.clone(),
        solution,
        packing: packing.as_ref().map(GknapSolution::from_packing),
    };
    let text = match a.output.format {
        Format::Json => file.to_json(),
        Format::Svg => render_packing(red.instance.n, &red.instance.items, packing.as_ref()),
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(Status::Done)
}

fn report(problems: &[String]) -> Status {
    if problems.is_empty() {
        println!("ok");
        Status::Done
    } else {
        for p in problems {
            println!("violation: {p}");
        }
        Status::Rejected
    }
}

fn verify(a: VerifyArgs) -> Result<Status> {
    match a.kind {
        VerifyKind::Reduction => {
            let path = a.reduction.as_deref().context("--reduction is required")?;
            let file = ReductionFile::parse(&read(path)?)?;
            Ok(report(&check_reduction(&file)?))
        }
        VerifyKind::Packing | VerifyKind::Solution => {
            let inst = read_instance(a.instance.as_deref().context("--instance is required")?)?;
            let sol = read_solution(a.solution.as_deref().context("--solution is required")?)?;
            let mut problems = Vec::new();
            if matches!(a.kind, VerifyKind::Solution) && sol.instance_hash != inst.hash() {
                problems.push(format!("instance hash {} does not match {}", sol.instance_hash, inst.hash()));
            }
            check_body(&inst, &sol, matches!(a.kind, VerifyKind::Solution), a.budget, &mut problems)?;
            Ok(report(&problems))
        }
    }
}

fn check_body(
    inst: &InstanceFile,
    sol: &SolutionFile,
    claims: bool,
    secs: u64,
    problems: &mut Vec<String>,
) -> Result<()> {
    let budget =
        OracleBudget { time_limit: Duration::from_secs(secs), max_solution_size: 64, ..OracleBudget::default() };
    let min_size = sol.provenance.knobs.get("min_size").and_then(|v| v.as_u64()).map(|v| v as usize);
    let short = |len: usize, problems: &mut Vec<String>| {
        if let Some(m) = min_size.filter(|&m| claims && len < m) {
            problems.push(format!("{len} objects, fewer than the claimed {m}"));
        }
    };
    match (&sol.solution, inst) {
        (SolutionBody::Misr { selected }, InstanceFile::Misr { .. }) => {
            let m = inst.to_misr()?;
            match validate_misr_solution(&m, selected) {
                Ok(true) => {}
                Ok(false) => problems.push("selected rectangles overlap".into()),
                Err(e) => problems.push(e.to_string()),
            }
            short(selected.len(), problems);
        }
        (SolutionBody::Gknap(g), InstanceFile::Gknap { .. }) => {
            let k = inst.to_knapsack()?;
            let packing = g.to_packing();
            if packing.n != k.n {
                problems.push(format!("packing side {} differs from N = {}", packing.n, k.n));
            }
            problems.extend(validate_instance_packing(&k, &packing).violations.iter().map(|v| format!("{v:?}")));
            short(packing.len(), problems);
        }
        (SolutionBody::OptBelowK { k, .. }, _) if claims => {
            let found = match inst {
                InstanceFile::Misr { .. } => mis_rectangles_exact(&inst.to_misr()?, &budget).map(|s| s.len()),
                InstanceFile::Gknap { .. } => {
                    let ki = inst.to_knapsack()?;
                    knapsack_exact(&ki.items, ki.n, ki.n, *k, ki.rotations, &budget).map(|s| s.len())
                }
            };
            match found {
                Ok(opt) if opt >= *k => problems.push(format!("asserted OPT < {k}, but {opt} objects fit")),
                Ok(_) => {}
                Err(OracleError::BudgetExceeded(why)) => eprintln!("assertion not checked: {why}"),
                Err(e) => return Err(e.into()),
            }
        }
        (SolutionBody::OptBelowK { .. }, _) => problems.push("no packing to check".into()),
        (body, _) => bail!("a {} instance cannot carry this solution: {body:?}", inst.kind()),
    }
    Ok(())
}

fn check_reduction(file: &ReductionFile) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    if file.instance.hash() != file.instance_hash {
        problems.push("instance hash mismatch".into());
    }
    let red = match reduce_mss_to_2dkr(&file.xs, file.t, file.k) {
        Ok(r) => r,
        Err(e) => {
            problems.push(e.to_string());
            return Ok(problems);
        }
    };
    if file.instance.to_knapsack()? != red.instance || file.roles != red.roles || file.constants != red.constants {
        problems.push("instance differs from the reduction of the given numbers".into());
    }
    if file.k_prime != red.k_prime {
        problems.push(format!("k′ = {} instead of {}", file.k_prime, red.k_prime));
    }
    if let Err(e) = red.check_invariants(&file.xs) {
        problems.push(e);
    }
    if let Some(ys) = &file.solution {
        match build_yes_packing(&red, &file.xs, ys) {
            Ok(yes) => {
                if file.packing.as_ref().is_some_and(|p| p.to_packing() != yes.packing) {
                    problems.push("stored packing differs from the constructed one".into());
                }
                if let Err(e) = check_yes_packing(&red, &yes) {
                    problems.push(e);
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    } else if let Some(p) = &file.packing {
        let packing = p.to_packing();
        problems.extend(validate_instance_packing(&red.instance, &packing).violations.iter().map(|v| format!("{v:?}")));
        if packing.len() != red.k_prime {
            problems.push(format!("{} placements instead of {}", packing.len(), red.k_prime));
        }
    }
    Ok(problems)
}

fn render_file(inst: &InstanceFile, sol: Option<&SolutionFile>, grid_k: Option<usize>) -> Result<String> {
    Ok(match inst {
        InstanceFile::Misr { .. } => {
            let m = inst.to_misr()?;
            let grid = match grid_k {
                Some(k) => match build_grid(&m, k)? {
                    GridOutcome::Grid(g) => Some(g),
                    GridOutcome::Independent(_) => None,
                },
                None => None,
            };
            let selected = match sol.map(|s| &s.solution) {
                Some(SolutionBody::Misr { selected }) => Some(selected.as_slice()),
                _ => None,
            };
            render_misr(&m, selected, grid.as_ref())
        }
        InstanceFile::Gknap { .. } => {
            let k = inst.to_knapsack()?;
            let packing = match sol.map(|s| &s.solution) {
                Some(SolutionBody::Gknap(g)) => Some(g.to_packing()),
                _ => None,
            };
            render_packing(k.n, &k.items, packing.as_ref())
        }
    })
}

fn render(a: RenderArgs) -> Result<Status> {
    let inst = read_instance(&a.instance)?;
    let sol = a.solution.as_deref().map(read_solution).transpose()?;
    emit(a.out.as_deref(), &render_file(&inst, sol.as_ref(), a.grid)?)?;
    Ok(Status::Done)
}
