//! Thread-pool drivers: bound grids and equilibrium enumeration.
//!
//! Work is split into independent pieces and collected in input order, so results do not
//! depend on the number of threads.

use kstrong_core::bounds::{assemble, solve_p, solve_q, BoundReport, PSolution, QSolution};
use kstrong_core::lp::SolverOptions;
use kstrong_core::oracle::{prepare_enumeration, PartialReport, SystemCost};
use kstrong_core::{CongestionGame, CostTable, EquilibriumReport, LatencyBasis, OracleConfig, Scalar};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{CliError, Result};

/// `jobs = None` uses rayon's default thread count.
pub fn pool(jobs: Option<usize>) -> Result<ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(jobs);
    }
    builder.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

enum Task {
    P { point: usize, zeta: usize },
    Q { point: usize, k: usize, j: usize },
}

enum Solved<S> {
    P(PSolution<S>),
    Q(QSolution<S>),
}

/// One report per `(n, k)` in `points`, in order. Each `P_zeta` is solved once per `n`.
pub fn bound_grid<S: Scalar>(
    basis: &LatencyBasis,
    points: &[(usize, Vec<usize>)],
    opts: &SolverOptions,
    pool: &ThreadPool,
) -> Result<Vec<BoundReport<S>>> {
    let class = basis.to_string();
    let tables = points.iter().map(|(n, _)| CostTable::<S>::new(basis, *n)).collect::<Result<Vec<_>, _>>()?;
    let mut tasks = Vec::new();
    for (point, (_, ks)) in points.iter().enumerate() {
        let max_k = ks.iter().copied().max().unwrap_or(0);
        tasks.extend((1..=max_k).map(|zeta| Task::P { point, zeta }));
        for &k in ks {
            tasks.extend((0..basis.len()).map(|j| Task::Q { point, k, j }));
        }
    }
    let solved: Vec<Solved<S>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|task| match *task {
                Task::P { point, zeta } => solve_p(&tables[point], zeta, opts).map(Solved::P),
                Task::Q { point, k, j } => solve_q(&tables[point], j, k, opts).map(Solved::Q),
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut reports = Vec::new();
    let mut cursor = solved.into_iter();
    for (n, ks) in points {
        let max_k = ks.iter().copied().max().unwrap_or(0);
        let p: Vec<PSolution<S>> = cursor
            .by_ref()
            .take(max_k)
            .map(|s| match s {
                Solved::P(p) => p,
                Solved::Q(_) => unreachable!("task order"),
            })
            .collect();
        for &k in ks {
            let q: Vec<QSolution<S>> = cursor
                .by_ref()
                .take(basis.len())
                .map(|s| match s {
                    Solved::Q(q) => q,
                    Solved::P(_) => unreachable!("task order"),
                })
                .collect();
            reports.push(assemble(&class, *n, k, &p, &q, opts.tolerance)?);
        }
    }
    Ok(reports)
}

/// [`kstrong_core::oracle::enumerate_k_strong`] with the scan split into ranges.
pub fn enumerate_parallel<S: Scalar>(
    game: &CongestionGame<S>,
    k: usize,
    cfg: &OracleConfig,
    pool: &ThreadPool,
) -> Result<EquilibriumReport<S>> {
    let table = prepare_enumeration(game, k, &SystemCost, cfg)?;
    let tol = if S::EXACT { 0.0 } else { cfg.tolerance };
    let total = table.space().total();
    let pieces = (pool.current_num_threads() as u64 * 4).max(1);
    let chunk = total.div_ceil(pieces).max(1);
    let ranges: Vec<_> = (0..total).step_by(chunk as usize).map(|lo| lo..(lo + chunk).min(total)).collect();
    let part = pool.install(|| {
        ranges.into_par_iter().map(|r| table.scan(r, k, tol)).reduce(PartialReport::empty, PartialReport::merge)
    });
    Ok(table.report(part, tol))
}
