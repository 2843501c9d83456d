//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p indlab-cli --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use indlab::constructions::{limit_density, plan_blowup, plan_frame_blowup, plan_separate, realize, recursive_lower_bound};
use indlab::counting::{binomial, count_induced_by_subsets, HostIndex, PatternPlan, RoleStats};
use indlab::decomposition::{audit, AuditMode};
use indlab::exact::{pow, rat, to_f64};
use indlab::instances::{perturbed_blowup, random_connected_pattern, random_host, random_pattern, shuffled};
use indlab::optimizer::{beat_blowup, blowup_comparator, exact_search, symmetrize, BlowupVerdict, ClimbConfig};
use indlab::rng::stream;
use indlab::verifier::{inequality_battery, p_properties, BatteryConfig};
use indlab::{count_induced, Color, ColoredGraph, Pattern};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if let false = $cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn seeded_pattern(i: u64, k: usize) -> Pattern {
    let mut rng = stream(0xacce, "pattern", i);
    match i % 4 {
        0 => Pattern::rainbow_clique(k),
        1 => Pattern::rainbow_path(k),
        2 if k >= 3 => Pattern::rainbow_cycle(k),
        _ => random_connected_pattern(&mut rng, k, 0.3),
    }
}

fn seeded_host(i: u64, p: &Pattern, n: usize) -> ColoredGraph {
    let mut rng = stream(0xacce, "host", i);
    if i % 3 == 2 {
        random_host(&mut rng, n, p.palette())
    } else {
        perturbed_blowup(&mut rng, p, n, (i % 9) as usize)
    }
}

fn counting_oracle() -> Result<String, String> {
    let mut checked = 0;
    let mut i = 0u64;
    while checked < 200 {
        i += 1;
        let k = 2 + (i % 4) as usize;
        let n = k + (i % 11) as usize;
        if binomial(n as u64, k as u64) > 100_000 {
            continue;
        }
        let mut rng = stream(0xc0de, "oracle", i);
        let p = random_pattern(&mut rng, k, 0.5);
        let h = match i % 3 {
            0 => random_host(&mut rng, n, p.palette()),
            1 => perturbed_blowup(&mut rng, &p, n, 4),
            _ => shuffled(&mut rng, &realize(&plan_blowup(&p, n))),
        };
        let fast = count_induced(&p, &h);
        let slow = count_induced_by_subsets(&p, &h);
        ensure!(fast == slow, "instance {i} (k={k}, n={n}): backtracking {fast} vs subsets {slow}");
        checked += 1;
    }
    Ok(format!("{checked} instances agree"))
}

fn blowup_counts() -> Result<String, String> {
    let k3 = Pattern::rainbow_clique(3);
    for (n, want) in [(6, 8u64), (9, 30)] {
        let tree = plan_blowup(&k3, n);
        let g = realize(&tree);
        let fast = count_induced(&k3, &g);
        let brute = count_induced_by_subsets(&k3, &g);
        let lower = recursive_lower_bound(&k3, &tree).map_err(|e| e.to_string())?;
        ensure!(fast == want && brute == want, "G({n}): count {fast}, brute force {brute}, expected {want}");
        ensure!(lower == want as u128, "G({n}): recursive lower bound {lower}, expected {want}");
    }
    let a = limit_density(&k3).map_err(|e| e.to_string())?.a;
    ensure!(a == rat(1, 4), "a(3) = {a}, expected 1/4");
    ensure!(rat(30, 84) >= a, "30/84 < a(3)");
    Ok("G(6) = 8, G(9) = 30, 30/84 >= 1/4".into())
}

fn beats_iterated_blowup() -> Result<String, String> {
    let k3 = Pattern::rainbow_clique(3);
    let mut k4 = ColoredGraph::empty(4, 4);
    for (u, v, c) in [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)] {
        k4.set(u, v, Color(c));
    }
    let proper = count_induced(&k3, &realize(&plan_frame_blowup(&k4, 8)));
    let iterated = blowup_comparator(&k3, 8);
    ensure!(proper == 32 && iterated == 20, "proper K4 blow-up {proper}, iterated {iterated}");
    let r = beat_blowup(&k3, 8, &ClimbConfig::default()).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Some(BlowupVerdict::Beaten), "verdict {:?}, best {}", r.verdict, r.best_count);
    ensure!(r.recount == Some(r.best_count), "recount {:?} vs reported {}", r.recount, r.best_count);
    Ok(format!("32 vs 20; search found {} (BEATEN)", r.best_count))
}

fn disconnected_patterns() -> Result<String, String> {
    let p = Pattern::from_edges(4, &[(0, 1), (2, 3)]).map_err(|e| e.to_string())?;
    let sep = count_induced(&p, &realize(&plan_separate(&p, 16).map_err(|e| e.to_string())?));
    let one = count_induced(&p, &realize(&plan_blowup(&p, 16)));
    ensure!(sep == 784 && sep > one, "separate {sep}, single {one}");
    let d = limit_density(&p).map_err(|e| e.to_string())?;
    ensure!(d.separate_coeff == rat(1, 64), "separate coefficient {}", d.separate_coeff);
    ensure!(d.one_blowup_coeff == rat(1, 144), "single coefficient {}", d.one_blowup_coeff);
    ensure!(d.separate_coeff > d.one_blowup_coeff, "1/64 <= 1/144");
    Ok(format!("784 > {one}; 1/64 > 1/144"))
}

fn decomposition_identities() -> Result<String, String> {
    let mut bad_copies = 0;
    for i in 0..100u64 {
        let k = 3 + (i % 3) as usize;
        let p = seeded_pattern(i, k);
        let n = k + (i % 8) as usize;
        let h = seeded_host(i, &p, n);
        let r = audit(&p, &h, None).map_err(|e| format!("instance {i}: {e}"))?;
        let total = count_induced(&p, &h);
        ensure!(r.hm + r.hg + r.hb == total, "instance {i}: {} + {} + {} != {total}", r.hm, r.hg, r.hb);
        ensure!(r.sided.violations.is_empty(), "instance {i}: {:?}", r.sided.violations);
        if r.hb > 0 {
            bad_copies += r.hb;
            let min = r.sided.min_pairs_per_bad_copy.unwrap_or(0);
            match r.sided.mode {
                AuditMode::Clique => {
                    ensure!(min >= k - 2, "instance {i}: a bad copy has {min} < {} pairs", k - 2);
                    ensure!(r.sided.s >= 2 * (k as u64 - 2) * r.hb, "instance {i}: S = {} < 2(k-2)h_b", r.sided.s);
                }
                AuditMode::Connected => ensure!(min >= 1, "instance {i}: a bad copy has no misaligned pair"),
            }
        }
    }
    for p in [Pattern::rainbow_clique(3), Pattern::rainbow_clique(4), Pattern::rainbow_path(4), Pattern::rainbow_cycle(5)] {
        for n in [p.k(), 2 * p.k(), 12] {
            let r = audit(&p, &realize(&plan_blowup(&p, n)), None).map_err(|e| e.to_string())?;
            ensure!(r.delta == rat(0, 1) && r.hb == 0, "natural blow-up k={} n={n}: delta {}, h_b {}", p.k(), r.delta, r.hb);
        }
    }
    Ok(format!("100 instances, {bad_copies} bad copies checked; natural blow-ups aligned"))
}

fn bound_audit_corpus() -> Result<String, String> {
    let mut evaluated = 0usize;
    let mut instances = 0;
    for i in 0..240u64 {
        let k = 2 + (i % 4) as usize;
        let p = seeded_pattern(i + 1000, k);
        let n = (k + (i % 11) as usize).min(12);
        let h = seeded_host(i + 1000, &p, n);
        let r = audit(&p, &h, None).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(r.bounds.violations.is_empty(), "instance {i} (k={k}, n={n}): {:?}", r.bounds.violations);
        evaluated += r.bounds.margins.iter().map(|m| m.evaluated).sum::<usize>();
        instances += 1;
    }
    Ok(format!("{instances} instances, {evaluated} inequalities, 0 violations"))
}

fn zykov_soundness() -> Result<String, String> {
    let mut steps = 0;
    for i in 0..50u64 {
        let mut rng = stream(0x2c0f, "zykov", i);
        let k = 2 + (i % 3) as usize;
        let n = k + 1 + (i % 6) as usize;
        let p = random_pattern(&mut rng, k, 0.6);
        let h = if i % 2 == 0 { perturbed_blowup(&mut rng, &p, n, 3) } else { random_host(&mut rng, n, p.palette()) };
        let plan = PatternPlan::new(&p);
        let stats = RoleStats::compute(&plan, &HostIndex::new(&h, p.palette()));
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let (step, g) = symmetrize(&plan, &stats, &h, x, y);
                let after = count_induced(&p, &g);
                let before = count_induced(&p, &h);
                ensure!(step.after == after && step.before == before, "instance {i} ({x},{y}): recount mismatch");
                ensure!(after as i64 - before as i64 >= step.bound, "instance {i} ({x},{y}): gain below bound {}", step.bound);
                steps += 1;
            }
        }
    }
    Ok(format!("{steps} symmetrizations over 50 instances"))
}

fn exact_monotone() -> Result<String, String> {
    let k3 = Pattern::rainbow_clique(3);
    let r4 = exact_search(&k3, 4, 50_000_000).map_err(|e| e.to_string())?;
    let r5 = exact_search(&k3, 5, 50_000_000).map_err(|e| e.to_string())?;
    ensure!(r5.rho <= r4.rho, "rho(5) = {} > rho(4) = {}", r5.rho, r4.rho);
    Ok(format!("optimum {} at n=4, {} at n=5; {} >= {}", r4.optimum, r5.optimum, r4.rho, r5.rho))
}

fn inequality_checks() -> Result<String, String> {
    let b = inequality_battery(&BatteryConfig::default()).map_err(|e| e.to_string())?;
    ensure!(b.all_pass(), "{} failed, {} indeterminate of {}", b.failed, b.indeterminate, b.total);
    let props = p_properties(60, 60).map_err(|e| e.to_string())?;
    ensure!(props.passed(), "partition products: {:?}", props);
    let lhs = (pow(&rat(11, 1), 10) - rat(1, 1)).recip();
    let rhs = rat(7, 5) * pow(&(rat(3, 5) / rat(9, 1)), 9);
    let ratio = to_f64(&(lhs / rhs));
    ensure!((ratio - 1.06).abs() < 0.005, "max-degree ratio at k=11 is {ratio}");
    let reported: f64 = b.max_degree_ratio_k11.as_deref().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN);
    ensure!((reported - ratio).abs() < 1e-4, "reported ratio {reported} vs {ratio}");
    Ok(format!("{} checks PASS; minimal C {}; ratio at k=11 {reported}", b.total, b.minimal_c))
}

fn deterministic_reports() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("indlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let pattern = dir.join("k3.txt");
    std::fs::write(&pattern, "pattern k=3\n1 2\n2 3\n1 3\n").map_err(|e| e.to_string())?;
    let go = |tag: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let out = dir.join(tag);
        let o = Command::new(env!("CARGO_BIN_EXE_indlab"))
            .args(["search", "--seed", "42", "--n", "8", "--pattern"])
            .arg(&pattern)
            .arg("--out-dir")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
        let file = std::fs::read(Path::new(&out).join("search.json")).map_err(|e| e.to_string())?;
        Ok((o.stdout, file))
    };
    let a = go("a")?;
    let b = go("b")?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure!(a.0 == b.0, "stdout differs between runs");
    ensure!(a.1 == b.1, "report files differ between runs");
    Ok(format!("{} identical bytes", a.1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Check); 10] = [
        ("counting oracle equivalence", Duration::from_secs(120), counting_oracle),
        ("blow-up counts", Duration::from_secs(30), blowup_counts),
        ("proper K4 blow-up beats iterated blow-up", Duration::from_secs(60), beats_iterated_blowup),
        ("separate blow-ups of disconnected patterns", Duration::from_secs(60), disconnected_patterns),
        ("decomposition identities", Duration::from_secs(300), decomposition_identities),
        ("bound audit", Duration::from_secs(300), bound_audit_corpus),
        ("symmetrization soundness", Duration::from_secs(120), zykov_soundness),
        ("exact search and monotonicity", Duration::from_secs(600), exact_monotone),
        ("inequality battery", Duration::from_secs(120), inequality_checks),
        ("determinism", Duration::from_secs(120), deterministic_reports),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {took:.1?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of 10 criteria pass", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
