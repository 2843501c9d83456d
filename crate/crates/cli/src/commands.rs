//! One function per subcommand. Inputs are read and output paths checked
//! before any work starts.

use std::collections::BTreeMap;
use std::path::Path;

use indlab::constructions::{limit_density, plan_blowup, plan_separate, realize, recursive_lower_bound};
use indlab::counting::{HostIndex, PatternPlan, RoleStats};
use indlab::decomposition::audit;
use indlab::exact::{amgm, format_rat, int};
use indlab::optimizer::{beat_blowup, exact_search, hillclimb, rho, ClimbConfig, OptimizerError, Strategy};
use indlab::rng::DEFAULT_SEED;
use indlab::verifier::partition_product::DP_LIMIT;
use indlab::verifier::{inequality_battery, p_dp, p_exact, p_properties, BatteryConfig};
use indlab::GlobalStats;
use serde_json::{json, Value};

use crate::format::{read_graph, read_pattern, write_graph};
use crate::{
    AuditArgs, BlowupArgs, CliError, Command, Context, CountArgs, ExactArgs, Family, Outcome, SearchArgs,
    SearchMode, StrategyArg, VerifyArgs, EXIT_BUDGET, EXIT_INVARIANT, EXIT_OK,
};

/// Default exhaustive-search budget, in colorings generated.
pub const EXACT_BUDGET: u64 = 50_000_000;

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    match cmd {
        Command::Count(a) => count(a),
        Command::Blowup(a) => blowup(a),
        Command::Audit(a) => audit_cmd(a),
        Command::Search(a) => search(a, ctx),
        Command::Verify(a) => verify(a, ctx),
        Command::Exact(a) => exact(a),
    }
}

fn echo(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

/// An output file's directory must already exist.
fn check_output(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(CliError::Validation(format!("{}: directory does not exist", path.display())))
        }
        _ => Ok(()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

fn count(a: &CountArgs) -> Result<Outcome, CliError> {
    let p = read_pattern(&a.pattern)?;
    let h = read_graph(&a.graph)?;
    let plan = PatternPlan::new(&p);
    let stats = RoleStats::compute(&plan, &HostIndex::new(&h, p.palette()));
    let g = GlobalStats::from_stats(&stats);
    let per_vertex: Vec<Value> = (0..h.n())
        .map(|x| {
            json!({
                "vertex": x + 1,
                "copies": stats.copies_at(x),
                "embeddings": stats.d(x),
                "roleDegrees": (0..p.k()).map(|i| stats.d_role(x, i)).collect::<Vec<_>>(),
                "roleNeighbourhoods": (0..p.k()).map(|i| stats.nbhd(x, i).len()).collect::<Vec<_>>(),
                "secondLargest": stats.second_largest(x),
            })
        })
        .collect();
    Ok(Outcome {
        payload: json!({
            "k": p.k(),
            "n": h.n(),
            "automorphisms": stats.automorphisms(),
            "embeddings": stats.embeddings(),
            "I": g.copies,
            "rho": format_rat(&g.rho),
            "alpha": format_rat(&g.alpha),
            "beta": format_rat(&g.beta),
            "z": format_rat(&g.z),
            "perVertex": per_vertex,
        }),
        rows: Some("perVertex"),
        config: echo(&[("pattern", path_value(&a.pattern)), ("graph", path_value(&a.graph))]),
        exit: EXIT_OK,
    })
}

fn blowup(a: &BlowupArgs) -> Result<Outcome, CliError> {
    let p = read_pattern(&a.pattern)?;
    if let Some(out) = &a.out {
        check_output(out)?;
    }
    let (tree, family) = match a.family {
        Family::Iterated => (plan_blowup(&p, a.n), "iterated"),
        Family::Separate => (plan_separate(&p, a.n).map_err(|e| CliError::Validation(e.to_string()))?, "separate"),
    };
    let g = realize(&tree);
    let count = indlab::count_induced(&p, &g);
    let lower = match a.family {
        Family::Iterated => recursive_lower_bound(&p, &tree).ok().map(|v| v.to_string()),
        Family::Separate => None,
    };
    let density = limit_density(&p).ok();
    if let Some(out) = &a.out {
        write_graph(out, &g)?;
    }
    let mut config = echo(&[
        ("pattern", path_value(&a.pattern)),
        ("n", json!(a.n)),
        ("family", json!(family)),
    ]);
    if let Some(out) = &a.out {
        config.insert("out".into(), path_value(out));
    }
    Ok(Outcome {
        payload: json!({
            "k": p.k(),
            "n": a.n,
            "family": family,
            "tree": to_value(&tree),
            "exactCount": count,
            "recursiveLowerBound": lower,
            "rho": format_rat(&rho(count, a.n, p.k())),
            "a": density.as_ref().map(|d| format_rat(&d.a)),
            "density": density.as_ref().map(to_value),
        }),
        rows: None,
        config,
        exit: EXIT_OK,
    })
}

fn parse_partition(list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(CliError::Validation(format!("partition entry `{}` is not a positive integer", s.trim()))),
        })
        .collect()
}

fn audit_cmd(a: &AuditArgs) -> Result<Outcome, CliError> {
    let p = read_pattern(&a.pattern)?;
    let h = read_graph(&a.graph)?;
    let partition = a.partition.as_deref().map(parse_partition).transpose()?;
    let r = audit(&p, &h, partition).map_err(|e| CliError::Validation(e.to_string()))?;
    let clean = r.is_clean();
    let mut config = echo(&[("pattern", path_value(&a.pattern)), ("graph", path_value(&a.graph))]);
    if let Some(list) = &a.partition {
        config.insert("partition".into(), json!(list));
    }
    Ok(Outcome {
        payload: json!({
            "mode": to_value(&r.sided.mode),
            "copies": r.copies,
            "partitionSizes": r.partition_sizes,
            "hm": r.hm,
            "hg": r.hg,
            "hb": r.hb,
            "misaligned": r.misaligned,
            "d1": r.d1,
            "d2": r.d2,
            "delta": format_rat(&r.delta),
            "S": r.sided.s,
            "J": r.sided.j,
            "J1": r.sided.j1,
            "J2": r.sided.j2,
            "minPairsPerBadCopy": r.sided.min_pairs_per_bad_copy,
            "clean": clean,
            "boundMargins": to_value(&r.bounds.margins),
            "violations": to_value(&r.bounds.violations),
            "sidedViolations": to_value(&r.sided.violations),
        }),
        rows: Some("boundMargins"),
        config,
        exit: if clean { EXIT_OK } else { EXIT_INVARIANT },
    })
}

fn search(a: &SearchArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let p = read_pattern(&a.pattern)?;
    if let Some(out) = &a.out {
        check_output(out)?;
    }
    let f = &ctx.file;
    let mode = f.pick_or("mode", a.mode, SearchMode::Hillclimb)?;
    let zykov = !a.no_zykov && f.pick_or("zykov", None, true)?;
    let default_budget = if mode == SearchMode::Exact { EXACT_BUDGET } else { ClimbConfig::default().budget };
    let budget = f.pick_or("budget", a.budget, default_budget)?;
    let strategy = match f.pick_or("strategy", a.strategy, StrategyArg::First)? {
        StrategyArg::First => Strategy::First,
        StrategyArg::Steepest => Strategy::Steepest,
    };
    let cfg = ClimbConfig {
        seed: f.pick_or("seed", a.seed, DEFAULT_SEED)?,
        budget,
        restarts: f.pick_or("restarts", a.restarts, ClimbConfig::default().restarts)?,
        strategy,
        zykov,
        record_time: ctx.timestamps,
    };
    let mode_name = match mode {
        SearchMode::Hillclimb => "hillclimb",
        SearchMode::Exact => "exact",
        SearchMode::BeatBlowup => "beat-blowup",
    };
    let mut config = echo(&[
        ("pattern", path_value(&a.pattern)),
        ("n", json!(a.n)),
        ("mode", json!(mode_name)),
        ("budget", json!(budget)),
    ]);
    if mode != SearchMode::Exact {
        config.insert("seed".into(), json!(cfg.seed));
        config.insert("restarts".into(), json!(cfg.restarts));
        config.insert("strategy".into(), to_value(&cfg.strategy));
        config.insert("zykov".into(), json!(cfg.zykov));
    }
    if let Some(out) = &a.out {
        config.insert("out".into(), path_value(out));
    }
    let err = |e: OptimizerError| CliError::Validation(e.to_string());
    match mode {
        SearchMode::Hillclimb | SearchMode::BeatBlowup => {
            let r = if mode == SearchMode::Hillclimb { hillclimb(&p, a.n, &cfg) } else { beat_blowup(&p, a.n, &cfg) }
                .map_err(err)?;
            if let Some(out) = &a.out {
                write_graph(out, &r.best_graph.0)?;
            }
            Ok(Outcome { payload: to_value(&r), rows: Some("restarts"), config, exit: EXIT_OK })
        }
        SearchMode::Exact => match exact_search(&p, a.n, budget) {
            Ok(r) => {
                if let (Some(out), Some(w)) = (&a.out, r.witnesses.first()) {
                    write_graph(out, &w.0)?;
                }
                Ok(Outcome { payload: to_value(&r), rows: Some("levels"), config, exit: EXIT_OK })
            }
            Err(OptimizerError::BudgetExceeded(partial)) => Ok(Outcome {
                payload: json!({ "complete": false, "partial": to_value(&partial) }),
                rows: None,
                config,
                exit: EXIT_BUDGET,
            }),
            Err(e) => Err(err(e)),
        },
    }
}

fn verify(a: &VerifyArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let f = &ctx.file;
    let d = BatteryConfig::default();
    let cfg = BatteryConfig {
        kmin: f.pick_or("kmin", a.kmin, d.kmin)?,
        kmax: f.pick_or("kmax", a.kmax, d.kmax)?,
        bits: f.pick_or("bits", a.bits, d.bits)?,
        cover_cells: f.pick_or("cover-cells", None, d.cover_cells)?,
        samples: f.pick_or("samples", None, d.samples)?,
        random_points: f.pick_or("random-points", None, d.random_points)?,
        simplex_total: f.pick_or("simplex-total", None, d.simplex_total)?,
        ..d
    };
    let grid = f.pick_or("grid", a.grid, DP_LIMIT)?;
    if cfg.bits < 32 {
        return Err(CliError::Validation("bits must be at least 32".into()));
    }
    if cfg.cover_cells == 0 || cfg.samples < 2 {
        return Err(CliError::Validation("cover-cells must be positive and samples at least 2".into()));
    }
    let props = p_properties(grid, grid).map_err(|e| CliError::Validation(e.to_string()))?;
    let battery = inequality_battery(&cfg).map_err(|e| CliError::Validation(e.to_string()))?;
    let all_pass = battery.all_pass() && props.passed();
    let mut payload = to_value(&battery);
    if let Value::Object(m) = &mut payload {
        m.remove("config");
        m.insert("allPass".into(), json!(all_pass));
        m.insert("partitionProducts".into(), to_value(&props));
    }
    let mut config = echo(&[("kmin", json!(cfg.kmin)), ("kmax", json!(cfg.kmax)), ("grid", json!(grid))]);
    config.insert("battery".into(), to_value(&cfg));
    Ok(Outcome { payload, rows: Some("checks"), config, exit: if all_pass { EXIT_OK } else { EXIT_INVARIANT } })
}

fn exact(a: &ExactArgs) -> Result<Outcome, CliError> {
    let value = p_exact(a.q, a.t).map_err(|e| CliError::Validation(e.to_string()))?;
    let dp = (a.q <= DP_LIMIT && a.t <= DP_LIMIT).then(|| p_dp(a.q, a.t)).transpose().map_err(|e| CliError::Validation(e.to_string()))?;
    let agrees = dp.map(|d| value == d.into());
    let bound = amgm(&int(a.q), a.t as usize);
    let (lo, hi) = (a.q / a.t, a.q.div_ceil(a.t));
    let big = a.q % a.t;
    Ok(Outcome {
        payload: json!({
            "q": a.q,
            "t": a.t,
            "value": value.to_string(),
            "dp": dp.map(|d| d.to_string()),
            "agrees": agrees,
            "parts": { "ceil": hi, "ceilCount": big, "floor": lo, "floorCount": a.t - big },
            "amgmBound": format_rat(&bound),
        }),
        rows: None,
        config: echo(&[("q", json!(a.q)), ("t", json!(a.t))]),
        exit: if agrees == Some(false) { EXIT_INVARIANT } else { EXIT_OK },
    })
}
