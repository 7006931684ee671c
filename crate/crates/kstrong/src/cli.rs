//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kstrong_core::bounds::{build_p, build_q, solve_q, BoundReport};
use kstrong_core::lp::SolverOptions;
use kstrong_core::oracle::{
    group_best_response_dynamics, is_k_strong, tabulate, KStrongCheck, SystemCost, TieBreak,
};
use kstrong_core::ring::{analytic_costs, construct, estimate, verify_construction, DEFAULT_PLAYER_CAP};
use kstrong_core::{CongestionGame, CostTable, LatencyBasis, OracleConfig, Rational, Spoa, DEFAULT_TOLERANCE};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::json::{
    bound_json, game_to_string, parse_strategy, parse_theta, read_text, strategy_json, theta_entries,
    write_text, GameFile, JsonScalar, Sidecar,
};
use crate::parallel::{bound_grid, enumerate_parallel, pool};
use crate::sample::{random_joint, rng};

#[derive(Debug, Parser)]
#[command(name = "kstrong", version, about = "k-strong price of anarchy bounds for altruistic congestion games")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Use f64 arithmetic instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,
    /// Absolute comparison tolerance in float mode.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper and lower bound for one (class, n, k), as JSON.
    Bounds(BoundsArgs),
    /// Bound table over a grid of classes, n and k, as CSV.
    Sweep(SweepArgs),
    /// Enumerate the k-strong equilibria of a game and its exact k-strong price of anarchy.
    Oracle(OracleArgs),
    /// Check whether a joint strategy is a k-strong equilibrium.
    Verify(VerifyArgs),
    /// Build the ring game of a label weighting.
    Construct(ConstructArgs),
    /// Run group best-response dynamics to a k-strong equilibrium.
    Dynamics(DynamicsArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Write every program solved to this directory.
    #[arg(long, value_name = "DIR")]
    pub dump_lp: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Basis class; repeat for several classes.
    #[arg(long, required = true)]
    pub class: Vec<String>,
    /// Player count or inclusive range `a..b`.
    #[arg(long)]
    pub n: String,
    /// Group size or inclusive range; `1..n` follows each n.
    #[arg(long, default_value = "1..n")]
    pub k: String,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub dump_lp: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleLimits {
    #[arg(long, default_value_t = 1_000_000)]
    pub max_joint: u128,
    #[arg(long, default_value_t = 100_000_000)]
    pub max_checks: u128,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub limits: OracleLimits,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Joint strategy file (default: the first global minimizer of C).
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    #[command(flatten)]
    pub limits: OracleLimits,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// `from-lp` (the optimum of Q_k) or a theta file.
    #[arg(long, default_value = "from-lp")]
    pub theta: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Single basis function, e.g. `mono:1` for c(x) = x^2.
    #[arg(long)]
    pub class_fn: String,
    #[arg(long)]
    pub out_game: PathBuf,
    #[arg(long)]
    pub out_sidecar: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PLAYER_CAP)]
    pub max_players: usize,
    /// Also check the construction against its closed forms and the oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    First,
    Steepest,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Start strategy file (default: random from --seed).
    #[arg(long)]
    pub start: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TieArg::First)]
    pub tie: TieArg,
    #[command(flatten)]
    pub limits: OracleLimits,
}

/// Warnings go to `err`, results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let ctx = Context { cli, err };
    match &cli.command {
        Command::Bounds(args) => ctx.bounds(args, out),
        Command::Sweep(args) => ctx.sweep(args, out),
        Command::Oracle(args) => ctx.with_game(&args.game, out, OracleCommand(args)),
        Command::Verify(args) => ctx.with_game(&args.game, out, VerifyCommand(args)),
        Command::Construct(args) => ctx.construct(args, out),
        Command::Dynamics(args) => ctx.with_game(&args.game, out, DynamicsCommand(args)),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    err: &'a mut dyn Write,
}

/// Calls `$body` with `$s` bound to `f64` or `Rational`.
macro_rules! dispatch {
    ($float:expr, $s:ident => $body:expr) => {
        if $float {
            type $s = f64;
            $body
        } else {
            type $s = Rational;
            $body
        }
    };
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn parse_basis(spec: &str) -> Result<LatencyBasis> {
    Ok(spec.parse::<LatencyBasis>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Span {
    Fixed(usize, usize),
    UpToN(usize),
}

fn parse_span(text: &str, what: &str) -> Result<Span> {
    let bad = || CliError::Usage(format!("--{what} `{text}`: expected an integer or a range `a..b`"));
    let number = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let span = match text.split_once("..") {
        None => {
            let v = number(text)?;
            Span::Fixed(v, v)
        }
        Some((lo, "n")) if what == "k" => Span::UpToN(number(lo)?),
        Some((lo, hi)) => Span::Fixed(number(lo)?, number(hi)?),
    };
    match span {
        Span::Fixed(lo, hi) if lo == 0 || lo > hi => Err(bad()),
        Span::UpToN(0) => Err(bad()),
        span => Ok(span),
    }
}

fn file_stem(class: &str) -> String {
    class.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

impl Context<'_> {
    fn warn(&mut self, message: &str) {
        let _ = writeln!(self.err, "warning: {message}");
    }

    fn opts(&self) -> SolverOptions {
        SolverOptions { tolerance: self.cli.tol, ..SolverOptions::default() }
    }

    fn oracle_config(&self, limits: &OracleLimits) -> OracleConfig {
        OracleConfig { max_joint_strategies: limits.max_joint, max_deviation_checks: limits.max_checks, tolerance: self.cli.tol }
    }

    /// Float arithmetic if requested or if the basis cannot be evaluated exactly.
    fn use_float(&mut self, basis: &LatencyBasis) -> bool {
        if !self.cli.float && basis.requires_float() {
            self.warn(&format!("`{basis}` needs float arithmetic; switching to --float for it"));
            return true;
        }
        self.cli.float
    }

    fn bounds(mut self, args: &BoundsArgs, out: &mut dyn Write) -> Result<()> {
        let basis = parse_basis(&args.class)?;
        let float = self.use_float(&basis);
        if args.k == 0 || args.k > args.n {
            return Err(CliError::Usage(format!("--k {} must lie in 1..={}", args.k, args.n)));
        }
        dispatch!(float, S => {
            let reports = self.grid::<S>(&basis, &[(args.n, vec![args.k])], args.dump_lp.as_deref())?;
            emit(out, &report_json(&reports[0]))
        })
    }

    fn grid<S: JsonScalar>(
        &self,
        basis: &LatencyBasis,
        points: &[(usize, Vec<usize>)],
        dump: Option<&Path>,
    ) -> Result<Vec<BoundReport<S>>> {
        if let Some(dir) = dump {
            dump_programs::<S>(basis, points, dir)?;
        }
        bound_grid::<S>(basis, points, &self.opts(), &pool(self.cli.jobs)?)
    }

    fn sweep(mut self, args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
        let Span::Fixed(n_lo, n_hi) = parse_span(&args.n, "n")? else { unreachable!() };
        let k_span = parse_span(&args.k, "k")?;
        let mut classes = BTreeMap::new();
        for spec in &args.class {
            let basis = parse_basis(spec)?;
            classes.insert(basis.to_string(), basis);
        }
        let mut points = Vec::new();
        for n in n_lo..=n_hi {
            let (lo, hi) = match k_span {
                Span::Fixed(lo, hi) => (lo, hi),
                Span::UpToN(lo) => (lo, n),
            };
            if hi > n {
                self.warn(&format!("k range {lo}..{hi} clamped to 1..{n} for n = {n}"));
            }
            let ks: Vec<usize> = (lo..=hi.min(n)).collect();
            if !ks.is_empty() {
                points.push((n, ks));
            }
        }
        let mut rows = Vec::new();
        for basis in classes.values() {
            let float = self.use_float(basis);
            dispatch!(float, S => {
                for r in self.grid::<S>(basis, &points, args.dump_lp.as_deref())? {
                    rows.push(CsvRow::new(&r));
                }
            });
        }
        let mut buffer = csv::Writer::from_writer(Vec::new());
        for row in &rows {
            buffer.serialize(row)?;
        }
        if rows.is_empty() {
            buffer.write_record(CsvRow::HEADER)?;
        }
        let bytes = buffer.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        match &args.out {
            Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::io(path, e)),
            None => out.write_all(&bytes).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
        }
    }

    fn with_game<V: GameCommand>(mut self, path: &Path, out: &mut dyn Write, command: V) -> Result<()> {
        let text = read_text(path)?;
        let name = path.display().to_string();
        let file: GameFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse { path: name.clone(), line: e.line(), column: e.column(), message: e.to_string() })?;
        let float = self.use_float(&parse_basis(&file.basis)?);
        dispatch!(float, S => {
            let game = file.into_game::<S>(&name)?;
            command.call(&mut self, &game, out)
        })
    }

    fn oracle<S: JsonScalar>(&mut self, g: &CongestionGame<S>, args: &OracleArgs, out: &mut dyn Write) -> Result<()> {
        let cfg = self.oracle_config(&args.limits);
        let threads = pool(self.cli.jobs)?;
        let value = {
            let report = enumerate_parallel(g, args.k, &cfg, &threads)?;
            let spoa = match &report.spoa {
                Spoa::Ratio(r) => r.to_json(),
                Spoa::Infinite => Value::String("inf".into()),
            };
            json!({
                "k": args.k,
                "exact_mode": S::EXACT,
                "count": report.equilibria.len(),
                "equilibria": report.equilibria.iter().map(strategy_json).collect::<Vec<_>>(),
                "worst_cost": report.worst_cost.to_json(),
                "optimal_cost": report.optimal_cost.to_json(),
                "exact_spoa": spoa,
                "zero_optimum": report.zero_optimum,
            })
        };
        emit(out, &value)
    }

    fn verify<S: JsonScalar>(&mut self, g: &CongestionGame<S>, args: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
        let cfg = self.oracle_config(&args.limits);
        let strategy = match &args.strategy {
            Some(path) => Some(parse_strategy(&read_text(path)?, &path.display().to_string())?),
            None => None,
        };
        let value = {
            let s = match &strategy {
                Some(s) => s.clone(),
                None => {
                    let table = tabulate(g, &SystemCost, &cfg)?;
                    let tol = if S::EXACT { 0.0 } else { cfg.tolerance };
                    table.space().decode(table.minimizers(tol)[0])
                }
            };
            let check = is_k_strong(g, &s, args.k, &cfg)?;
            json!({
                "k": args.k,
                "strategy": strategy_json(&s),
                "cost": g.system_cost(&s)?.to_json(),
                "k_strong": check.is_stable(),
                "witness": witness_json(&check),
            })
        };
        emit(out, &value)
    }

    fn dynamics<S: JsonScalar>(&mut self, g: &CongestionGame<S>, args: &DynamicsArgs, out: &mut dyn Write) -> Result<()> {
        let cfg = self.oracle_config(&args.limits);
        let start = match &args.start {
            Some(path) => Some(parse_strategy(&read_text(path)?, &path.display().to_string())?),
            None => None,
        };
        let tie = match args.tie {
            TieArg::First => TieBreak::FirstImprovement,
            TieArg::Steepest => TieBreak::SteepestDescent,
        };
        let seed = self.cli.seed;
        let value = {
            let start = start.clone().unwrap_or_else(|| random_joint(g, &mut rng(seed)));
            let run = group_best_response_dynamics(g, args.k, tie, &start, &cfg)?;
            let steps: Vec<Value> = run
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "group": s.deviation.group,
                        "replacement": s.deviation.replacement,
                        "before": s.before.to_json(),
                        "after": s.after.to_json(),
                    })
                })
                .collect();
            let stable = is_k_strong(g, &run.terminal, args.k, &cfg)?.is_stable();
            json!({
                "k": args.k,
                "tie": match args.tie { TieArg::First => "first", TieArg::Steepest => "steepest" },
                "start": strategy_json(&start),
                "terminal": strategy_json(&run.terminal),
                "cost": run.cost.to_json(),
                "k_strong": stable,
                "steps": steps,
            })
        };
        emit(out, &value)
    }

    fn construct(mut self, args: &ConstructArgs, out: &mut dyn Write) -> Result<()> {
        let basis = parse_basis(&args.class_fn)?;
        if basis.len() != 1 {
            return Err(CliError::Usage(format!("--class-fn `{}` must name a single basis function", args.class_fn)));
        }
        if args.n == 0 || args.k == 0 || args.k > args.n {
            return Err(CliError::Usage(format!("need 1 <= k <= n, got n = {}, k = {}", args.n, args.k)));
        }
        let float = self.use_float(&basis);
        dispatch!(float, S => self.construct_with::<S>(&basis, args, out))
    }

    fn construct_with<S: JsonScalar>(&mut self, basis: &LatencyBasis, args: &ConstructArgs, out: &mut dyn Write) -> Result<()> {
        let (theta, lower) = if args.theta == "from-lp" {
            let costs = CostTable::<S>::new(basis, args.n)?;
            let q = solve_q(&costs, 0, args.k, &self.opts())?;
            (q.theta, Some(bound_json(&q.bound)))
        } else {
            let path = Path::new(&args.theta);
            (parse_theta::<S>(args.n, &read_text(path)?, &args.theta)?, None)
        };
        let support: Vec<_> = theta.support().map(|(l, _, _)| l).collect();
        let size = estimate(args.n, &support);
        let _ = writeln!(
            self.err,
            "ring construction: {} resources, {} strategy entries, about {} bytes",
            size.resources, size.strategy_entries, size.bytes
        );
        let ring = construct(&theta, basis, args.max_players)?;
        write_text(&args.out_game, &game_to_string(&ring.game))?;
        write_text(&args.out_sidecar, &Sidecar::new(&ring, args.k).to_text())?;
        let costs = analytic_costs(&ring, 1)?;
        let mut value = json!({
            "n": args.n,
            "k": args.k,
            "class_fn": basis.to_string(),
            "resources": ring.game.resource_count(),
            "theta": serde_json::to_value(theta_entries(&ring.theta)).expect("serializable"),
            "kne_cost": costs.kne.to_json(),
            "opt_cost": costs.opt.to_json(),
            "lower_bound": lower.unwrap_or(Value::Null),
        });
        if args.verify {
            let cfg = OracleConfig { tolerance: self.cli.tol, ..OracleConfig::default() };
            let report = verify_construction(&ring, args.k, &cfg)?;
            value["verification"] = json!({
                "passed": true,
                "ratio": bound_json(&report.ratio),
                "q_feasible": report.q_feasible,
                "k_strong": report.k_strong.is_stable(),
                "witness": witness_json(&report.k_strong),
                "group_costs": report.group_costs.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
            });
        }
        emit(out, &value)
    }
}

/// A command body generic over the arithmetic of the loaded game.
trait GameCommand {
    fn call<S: JsonScalar>(self, ctx: &mut Context<'_>, game: &CongestionGame<S>, out: &mut dyn Write) -> Result<()>;
}

macro_rules! game_command {
    ($name:ident, $args:ty, $method:ident) => {
        struct $name<'a>(&'a $args);

        impl GameCommand for $name<'_> {
            fn call<S: JsonScalar>(self, ctx: &mut Context<'_>, game: &CongestionGame<S>, out: &mut dyn Write) -> Result<()> {
                ctx.$method(game, self.0, out)
            }
        }
    };
}

game_command!(OracleCommand, OracleArgs, oracle);
game_command!(VerifyCommand, VerifyArgs, verify);
game_command!(DynamicsCommand, DynamicsArgs, dynamics);

fn witness_json<S: JsonScalar>(check: &KStrongCheck<S>) -> Value {
    match check.witness() {
        None => Value::Null,
        Some(w) => json!({
            "group": w.deviation.group,
            "replacement": w.deviation.replacement,
            "cost_before": w.before.to_json(),
            "cost_after": w.after.to_json(),
        }),
    }
}

pub fn report_json<S: JsonScalar>(r: &BoundReport<S>) -> Value {
    json!({
        "class": r.class,
        "n": r.n,
        "k": r.k,
        "exact_mode": r.exact,
        "upper": bound_json(&r.upper),
        "lower": bound_json(&r.lower),
        "upper_decimal": r.upper.decimal(),
        "lower_decimal": r.lower.decimal(),
        "zeta_star": r.zeta_star,
        "c_star": r.c_star,
        "rho_nu": r.rho_nu.iter().enumerate().map(|(i, (rho, nu))| json!({
            "zeta": i + 1, "rho": rho.to_json(), "nu": nu.to_json(),
        })).collect::<Vec<_>>(),
        "lambda_mu": r.lambda_mu.iter().enumerate().map(|(i, pair)| match pair {
            Some(p) => json!({
                "zeta": i + 1,
                "lambda": p.lambda.to_json(),
                "mu": p.mu.to_json(),
                "certificate": p.is_certificate(),
            }),
            None => json!({ "zeta": i + 1, "lambda": null, "mu": null, "certificate": false }),
        }).collect::<Vec<_>>(),
        "theta_star": r.theta_star.iter().enumerate().map(|(j, t)| json!({
            "basis_index": j,
            "theta": serde_json::to_value(theta_entries(t)).expect("serializable"),
        })).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Serialize)]
pub struct CsvRow {
    pub class: String,
    pub n: usize,
    pub k: usize,
    pub upper: String,
    pub lower: String,
    pub zeta_star: usize,
    pub c_star: usize,
    pub exact_mode: bool,
}

impl CsvRow {
    pub const HEADER: [&'static str; 8] = ["class", "n", "k", "upper", "lower", "zeta_star", "c_star", "exact_mode"];

    pub fn new<S: JsonScalar>(r: &BoundReport<S>) -> Self {
        Self {
            class: r.class.clone(),
            n: r.n,
            k: r.k,
            upper: r.upper.to_string(),
            lower: r.lower.to_string(),
            zeta_star: r.zeta_star,
            c_star: r.c_star,
            exact_mode: r.exact,
        }
    }
}

fn dump_programs<S: JsonScalar>(basis: &LatencyBasis, points: &[(usize, Vec<usize>)], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let stem = file_stem(&basis.to_string());
    for (n, ks) in points {
        let costs = CostTable::<S>::new(basis, *n)?;
        let max_k = ks.iter().copied().max().unwrap_or(0);
        for zeta in 1..=max_k {
            let path = dir.join(format!("{stem}_p_n{n}_zeta{zeta}.lp"));
            write_text(&path, &build_p(&costs, zeta)?.to_string())?;
        }
        for &k in ks {
            for j in 0..costs.len() {
                let path = dir.join(format!("{stem}_q_n{n}_k{k}_c{j}.lp"));
                write_text(&path, &build_q(&costs.local(j), *n, k)?.to_string())?;
            }
        }
    }
    Ok(())
}
