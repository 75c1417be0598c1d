//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectpas::geometry::{validate_instance_packing, validate_misr_solution, validate_packing};
use rectpas::gknap::{
    build_visibility_graph, classify_items, free_strip, inflate_packing, pas_2dkr, prune_to_kernel, push_up,
    theory_k_tilde, GknapKnobs, Scale, StripCase, StripConfig,
};
use rectpas::hardness::{build_yes_packing, reduce_mss_to_2dkr, verify_interval_bounds};
use rectpas::io::{
    gen_guillotine, gen_misr_planted, gen_misr_with_opt, gen_mss, render_packing, GuillotineParams, MisrGenParams,
};
use rectpas::misr::{
    build_grid, kernel_misr, misr_kernel_bound, oracle_knobs, pas_misr, structure_pipeline, validate_grid_outcome,
    GridOutcome, MisrPasConfig,
};
use rectpas::oracle::{
    knapsack_exact, mis_rectangles_exact, mis_scan, mss_enumerate, mss_exact, packing_feasible_exact,
    packing_feasible_scan, OracleBudget,
};
use rectpas::planar::{check_drawing_planar, SeparatorConfig};
use rectpas::{Epsilon, Frac, Item, KnapsackInstance, MisrInstance, PasOutcome, Rect};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn budget() -> OracleBudget {
    OracleBudget { max_solution_size: 64, ..OracleBudget::default() }
}

fn misr_params(rng: &mut ChaCha8Rng, n_max: usize, planted_max: usize) -> MisrGenParams {
    let n = rng.random_range(planted_max.max(6)..=n_max);
    MisrGenParams {
        n,
        planted: rng.random_range(1..=planted_max),
        span: rng.random_range(40..=120),
        max_side: rng.random_range(10..=40),
        seed: rng.random(),
    }
}

/// Instances with their exact optimum, OPT in `1..=opt_max`.
fn misr_corpus(count: usize, n_max: usize, opt_max: usize, seed: u64) -> Vec<(MisrInstance, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = misr_params(&mut rng, n_max, opt_max);
        if let Ok(pair) = gen_misr_with_opt(&p, 1..=opt_max, 50, &budget()) {
            out.push(pair);
        }
    }
    out
}

fn grid_dichotomy() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    let (mut grids, mut sets) = (0, 0);
    for i in 0..200 {
        let mut p = misr_params(&mut rng, 40, 6);
        if i % 2 == 0 {
            p.planted = rng.random_range(0..=2);
            p.max_side = rng.random_range(p.span / 2..=p.span);
        }
        let (inst, _) = gen_misr_planted(&p).unwrap();
        let k = rng.random_range(2..=6);
        match build_grid(&inst, k) {
            Ok(out) => {
                match &out {
                    GridOutcome::Grid(_) => grids += 1,
                    GridOutcome::Independent(_) => sets += 1,
                }
                if !validate_grid_outcome(&inst, k, &out) {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures == 0 && elapsed < Duration::from_secs(5),
        format!("200 instances: {grids} grids, {sets} independent sets, {failures} failures, {elapsed:.2?} (< 5 s)"),
    )
}

fn embedding_planarity() -> Verdict {
    let eps = Epsilon::half();
    let cfg = SeparatorConfig::default();
    let mut failures = Vec::new();
    let mut drawings = 0;
    for (i, (inst, opt)) in misr_corpus(100, 30, 10, 2).iter().enumerate() {
        let GridOutcome::Grid(grid) = build_grid(inst, opt.len() + 1).unwrap() else {
            failures.push(format!("#{i}: grid step found OPT+1 disjoint rectangles"));
            continue;
        };
        let parts = structure_pipeline(inst, opt, &grid, eps, &cfg).unwrap();
        for (name, g) in [("G1", &parts.g1), ("G2", &parts.g2)] {
            drawings += 1;
            if check_drawing_planar(g) != Ok(true) {
                failures.push(format!("#{i} {name}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for i in 0..100 {
        let k = rng.random_range(2..=12usize);
        let n = rng.random_range(1_000..=1_000_000);
        let p =
            GuillotineParams { n, items: k, extra: 0, slack_percent: 30, floor: 0, rotate: true, seed: rng.random() };
        let packed = gen_guillotine(&p).unwrap();
        let items = &packed.instance.items;
        let indices = packed.packing.item_indices();
        for class in classify_items(items, n, k as u64, eps, Some(&indices)) {
            let rects: Vec<Rect> = packed
                .packing
                .placements
                .iter()
                .filter(|pl| class.large.binary_search(&pl.item).is_ok())
                .map(|pl| pl.rect(&items[pl.item]))
                .collect();
            let scale = Scale::new(n, k as u64);
            for (name, rs) in [("visibility", rects.clone()), ("pushed visibility", push_up(&rects, n))] {
                drawings += 1;
                let vg = build_visibility_graph(&rs, scale, class.b);
                if check_drawing_planar(&vg.embedding(&rs)) != Ok(true) {
                    failures.push(format!("packing #{i} B={} {name}", class.b));
                }
            }
        }
    }
    verdict(failures.is_empty(), format!("{drawings} drawings (G1, G2, visibility), failures: {failures:?}"))
}

fn structured_solution() -> Verdict {
    let eps = Epsilon::half();
    let cfg = SeparatorConfig::default();
    let corpus = misr_corpus(100, 30, 10, 3);
    let mut invalid = Vec::new();
    let mut enough = 0;
    for (i, (inst, opt)) in corpus.iter().enumerate() {
        let GridOutcome::Grid(grid) = build_grid(inst, opt.len() + 1).unwrap() else {
            invalid.push(format!("#{i}: no grid"));
            continue;
        };
        let g = structure_pipeline(inst, opt, &grid, eps, &cfg).unwrap().grouping;
        if let Err(e) = g.validate(inst, opt, &grid) {
            invalid.push(format!("#{i}: {e}"));
        }
        for cap in [2, 3, 5] {
            let small = structure_pipeline(inst, opt, &grid, eps, &SeparatorConfig::with_cap(cap)).unwrap();
            if let Err(e) = small.grouping.validate(inst, opt, &grid) {
                invalid.push(format!("#{i} cap {cap}: {e}"));
            }
        }
        if 2 * g.kept() >= opt.len() {
            enough += 1;
        }
    }
    verdict(
        invalid.is_empty() && enough >= 95,
        format!("cell-disjoint with groups ≤ c1·c2 on {}/100 (also with caps 2, 3, 5); |R′| ≥ (1−ε)|R*| on {enough}/100 (≥ 95) {invalid:?}", 100 - invalid.len()),
    )
}

fn misr_pas() -> Verdict {
    let start = Instant::now();
    let eps = Epsilon::half();
    let sep = SeparatorConfig::default();
    let mut problems = Vec::new();
    for (i, (inst, opt)) in misr_corpus(100, 25, 6, 4).iter().enumerate() {
        let k = opt.len();
        let knobs = oracle_knobs(inst, k, opt, eps, &sep).unwrap();
        let cfg = MisrPasConfig { budget: budget(), ..MisrPasConfig::new(knobs) };
        match pas_misr(inst, k, eps, &cfg).unwrap().outcome {
            PasOutcome::Solution(s) => {
                if !validate_misr_solution(inst, &s).unwrap_or(false) {
                    problems.push(format!("#{i}: infeasible output"));
                } else if s.len() < eps.ceil_keep(k) {
                    problems.push(format!("#{i}: {} < ⌈k/2⌉ for k = {k}", s.len()));
                }
            }
            PasOutcome::OptBelowK { .. } => problems.push(format!("#{i}: asserted OPT < {k} = OPT")),
        }
        // Target k for k = OPT + 1: ε = 1/(k+1) gives ⌈(1−ε)k⌉ = k.
        let k = opt.len() + 1;
        let tight = Epsilon::new(1, k as i64 + 1).unwrap();
        let knobs = oracle_knobs(inst, k, opt, tight, &sep).unwrap();
        let cfg = MisrPasConfig { budget: budget(), ..MisrPasConfig::new(knobs) };
        match pas_misr(inst, k, tight, &cfg).unwrap().outcome {
            PasOutcome::OptBelowK { .. } => {}
            PasOutcome::Solution(s) => {
                let ok = validate_misr_solution(inst, &s).unwrap_or(false);
                problems.push(format!("#{i}: k = OPT+1 returned {} rects (feasible: {ok})", s.len()));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        problems.is_empty() && elapsed < Duration::from_secs(120),
        format!("100 instances, k = OPT and k = OPT+1 (ε = 1/(k+1)): {elapsed:.2?} (< 2 min) {problems:?}"),
    )
}

fn misr_kernel() -> Verdict {
    let eps = Epsilon::half();
    let sep = SeparatorConfig::default();
    let mut problems = Vec::new();
    let mut largest = (0, 0u128);
    for (i, (inst, opt)) in misr_corpus(100, 25, 6, 4).iter().enumerate() {
        for k in [opt.len(), opt.len() + 1] {
            let knobs = oracle_knobs(inst, k, opt, eps, &sep).unwrap();
            let cfg = MisrPasConfig { budget: budget(), ..MisrPasConfig::new(knobs) };
            let kernel = kernel_misr(inst, k, &cfg).unwrap();
            let bound = misr_kernel_bound(knobs.c, k, knobs.b);
            if kernel.indices.len() > largest.0 {
                largest = (kernel.indices.len(), bound);
            }
            if kernel.indices.len() as u128 > bound {
                problems.push(format!("#{i} k={k}: size {} > {bound}", kernel.indices.len()));
            }
            let sub = inst.restrict(&kernel.indices);
            let best = mis_rectangles_exact(&sub, &budget()).unwrap().len();
            let need = eps.ceil_keep(k.min(opt.len()));
            if best < need {
                problems.push(format!("#{i} k={k}: kernel optimum {best} < {need}"));
            }
        }
    }
    verdict(
        problems.is_empty(),
        format!("200 kernels (k = OPT, OPT+1), largest {} vs bound {}: {problems:?}", largest.0, largest.1),
    )
}

fn strip_freeing() -> Verdict {
    let eps = Epsilon::half();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut within = 0;
    let mut cases = [0; 3];
    for i in 0..50 {
        let k = rng.random_range(8..=12usize);
        let n = rng.random_range(10_000..=1_000_000);
        let p = GuillotineParams {
            n,
            items: k,
            extra: 0,
            slack_percent: rng.random_range(0..=40),
            floor: 0,
            rotate: rng.random_bool(0.5),
            seed: rng.random(),
        };
        let packed = gen_guillotine(&p).unwrap();
        let items = &packed.instance.items;
        match free_strip(&packed.packing, items, k, eps, &StripConfig::default()) {
            Ok(rep) => {
                cases[rep.case as usize] += 1;
                let feasible = validate_packing(&rep.packing, items).is_ok();
                let clear = rep.strip_height > 0 && rep.packing.placements.iter().all(|pl| pl.y >= rep.strip_height);
                let deletion_ok = match rep.case {
                    StripCase::Path => rep.path.len() + rep.rect_deleted.len() <= rep.path_deletion_bound(),
                    _ => rep.path.is_empty() && rep.rect_deleted.is_empty(),
                };
                if !(feasible && clear && deletion_ok && rep.accounting_holds(&packed.packing)) {
                    failures.push(format!("#{i}: feasible {feasible}, clear {clear}, deletions {deletion_ok}"));
                }
                if rep.loss() <= eps.ceil_times(k) {
                    within += 1;
                }
            }
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    verdict(
        failures.is_empty() && within >= 45,
        format!(
            "50 packings (thin stack {}, clear {}, path {}): loss ≤ ⌈εk⌉ on {within}/50 (≥ 45), accounting exact {failures:?}",
            cases[0], cases[1], cases[2]
        ),
    )
}

fn inflation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for i in 0..100 {
        let k_prime = rng.random_range(1..=6usize);
        let k_tilde: u128 = rng.random_range(2..=40);
        let n = rng.random_range(100..=1_000_000i64);
        let floor = (n as u128).div_ceil(k_tilde) as i64;
        let p = GuillotineParams {
            n,
            items: k_prime,
            extra: 0,
            slack_percent: rng.random_range(0..=50),
            floor,
            rotate: rng.random_bool(0.5),
            seed: rng.random(),
        };
        let packed = gen_guillotine(&p).unwrap();
        let items = &packed.instance.items;
        let out = match inflate_packing(&packed.packing, items, k_prime, k_tilde) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let unit = Frac::new(n as i128, k_prime as i128 * k_tilde as i128);
        let feasible = validate_packing(&out.packing, &out.items).is_ok();
        let bounded = packed.packing.placements.iter().all(|pl| {
            let before = items[pl.item];
            let after = out.items[pl.item];
            [(before.w, after.w), (before.h, after.h)].iter().all(|&(b, a)| {
                let d = a - Frac::from_integer(b as i128);
                d >= Frac::from_integer(0) && d < unit
            })
        });
        if !(feasible && bounded) {
            failures.push(format!("#{i}: feasible {feasible}, increases in range {bounded}"));
        }
    }
    verdict(failures.is_empty(), format!("100 packings, every increase in [0, N/(k′k̃)) {failures:?}"))
}

fn small_knapsack(rng: &mut ChaCha8Rng, n_max: usize) -> KnapsackInstance {
    let n = rng.random_range(10..=60);
    let packed = rng.random_range(1..=4usize);
    let p = GuillotineParams {
        n,
        items: packed,
        extra: rng.random_range(0..=n_max - packed),
        slack_percent: rng.random_range(0..=60),
        floor: 0,
        rotate: rng.random_bool(0.5),
        seed: rng.random(),
    };
    let inst = gen_guillotine(&p).unwrap().instance;
    let rotations = rng.random_bool(0.7);
    KnapsackInstance::new(inst.n, inst.items, rotations).unwrap()
}

/// Largest integer height not above (1 − 1/k̃)·N.
fn restricted_height(n: i64, k_tilde: u128) -> i64 {
    n - (n as u128).div_ceil(k_tilde).min(n as u128) as i64
}

fn kernel_pruning() -> Verdict {
    let eps = Epsilon::half();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = Vec::new();
    for i in 0..100 {
        let inst = small_knapsack(&mut rng, 12);
        let k_prime = rng.random_range(1..=4usize);
        let k = 2 * k_prime;
        let k_tilde = theory_k_tilde(k, eps);
        let h = restricted_height(inst.n, k_tilde);
        let kernel = prune_to_kernel(&inst.items, inst.n, k_prime, k_tilde);
        let sub: Vec<Item> = kernel.indices.iter().map(|&j| inst.items[j]).collect();
        let full = knapsack_exact(&inst.items, inst.n, h, k_prime, inst.rotations, &budget()).unwrap().len();
        let pruned = knapsack_exact(&sub, inst.n, h, k_prime, inst.rotations, &budget()).unwrap().len();
        if full != pruned {
            mismatches.push(format!("#{i}: {pruned} vs {full}"));
        }
    }
    verdict(mismatches.is_empty(), format!("100 instances, k′ ≤ 4, default k̃: mismatches {mismatches:?}"))
}

/// Same comparison with k̃ = 2, where size classes are coarse. Reported only.
fn kernel_pruning_coarse() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = 0;
    for _ in 0..100 {
        let inst = small_knapsack(&mut rng, 12);
        let k_prime = rng.random_range(1..=4usize);
        let h = restricted_height(inst.n, 2);
        let kernel = prune_to_kernel(&inst.items, inst.n, k_prime, 2);
        let sub: Vec<Item> = kernel.indices.iter().map(|&j| inst.items[j]).collect();
        let full = knapsack_exact(&inst.items, inst.n, h, k_prime, inst.rotations, &budget()).unwrap().len();
        let pruned = knapsack_exact(&sub, inst.n, h, k_prime, inst.rotations, &budget()).unwrap().len();
        mismatches += usize::from(full != pruned);
    }
    format!("info  8  with k̃ = 2 (coarse classes): {mismatches}/100 mismatches")
}

fn knapsack_pas() -> Verdict {
    let start = Instant::now();
    let eps = Epsilon::half();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut problems = Vec::new();
    let (mut done, mut runs, mut positive) = (0, 0, 0);
    while done < 100 {
        let inst = small_knapsack(&mut rng, 12);
        let opt = knapsack_exact(&inst.items, inst.n, inst.n, inst.items.len(), inst.rotations, &budget()).unwrap();
        if opt.len() > 5 || opt.is_empty() {
            continue;
        }
        done += 1;
        for k in 1..=opt.len() + 2 {
            runs += 1;
            let rep = pas_2dkr(&inst, k, eps, &GknapKnobs::default()).unwrap();
            match rep.outcome {
                PasOutcome::OptBelowK { .. } if opt.len() >= k => {
                    problems.push(format!("#{done}: asserted OPT < {k} with OPT = {}", opt.len()));
                }
                PasOutcome::OptBelowK { .. } => {}
                PasOutcome::Solution(p) => {
                    positive += 1;
                    if !validate_instance_packing(&inst, &p).is_ok() {
                        problems.push(format!("#{done} k={k}: invalid packing"));
                    } else if p.len() < eps.ceil_keep(k) {
                        problems.push(format!("#{done} k={k}: {} items", p.len()));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        problems.is_empty() && elapsed < Duration::from_secs(300),
        format!("100 instances, {runs} runs ({positive} positive): {elapsed:.2?} (< 5 min) {problems:?}"),
    )
}

fn hardness() -> Verdict {
    let mut problems = Vec::new();
    for seed in 0..20 {
        let m = 4 + (seed as usize % 2);
        let mss = gen_mss(m, 4, 50, true, seed).unwrap();
        let ys = mss.solution.clone().unwrap();
        if mss_exact(&mss.xs, mss.t, 4).is_none() {
            problems.push(format!("yes #{seed}: oracle finds no solution"));
        }
        let red = reduce_mss_to_2dkr(&mss.xs, mss.t, 4).unwrap();
        let yes = build_yes_packing(&red, &mss.xs, &ys).unwrap();
        let items = &red.instance.items;
        let svg = render_packing(red.instance.n, items, Some(&yes.packing));
        let ok = red.k_prime == 41
            && yes.packing.len() == 41
            && validate_packing(&yes.packing, items).is_ok()
            && verify_interval_bounds(&yes, items, &red.constants).is_empty()
            && svg.matches("class=\"item\"").count() == 41;
        if !ok {
            problems.push(format!("yes #{seed}"));
        }
        let no = gen_mss(m, 4, 50, false, 100 + seed).unwrap();
        let red = reduce_mss_to_2dkr(&no.xs, no.t, 4).unwrap();
        if mss_exact(&no.xs, no.t, 4).is_some() || red.check_invariants(&no.xs).is_err() {
            problems.push(format!("no #{seed}"));
        }
    }
    verdict(problems.is_empty(), format!("20 yes-instances with 41 placements, 20 no-instances {problems:?}"))
}

fn oracles() -> Verdict {
    let mut problems = Vec::new();
    let b = OracleBudget { cross_check: false, ..budget() };
    let mut packing_cases = 0;
    let types: Vec<Item> = (1..=4).flat_map(|w| (1..=w).map(move |h| Item::new(w, h))).collect();
    let mut multisets: Vec<Vec<Item>> = Vec::new();
    fn extend(types: &[Item], from: usize, cur: &mut Vec<Item>, out: &mut Vec<Vec<Item>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == 4 {
            return;
        }
        for t in from..types.len() {
            cur.push(types[t]);
            extend(types, t, cur, out);
            cur.pop();
        }
    }
    extend(&types, 0, &mut Vec::new(), &mut multisets);
    for w in 1..=8 {
        for h in w..=8 {
            for set in &multisets {
                let area: i64 = set.iter().map(|it| it.w * it.h).sum();
                if area > w * h {
                    continue;
                }
                for rotations in [false, true] {
                    packing_cases += 1;
                    let fast = packing_feasible_exact(set, rotations, w, h, &b).unwrap();
                    let scan = packing_feasible_scan(set, rotations, w, h);
                    if fast.is_some() != scan.is_some() {
                        problems.push(format!("packing {set:?} in {w}x{h} rot={rotations}"));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..300 {
        let p = MisrGenParams {
            n: rng.random_range(1..=12),
            planted: 0,
            span: rng.random_range(5..=40),
            max_side: rng.random_range(2..=20),
            seed: rng.random(),
        };
        let (inst, _) = gen_misr_planted(&p).unwrap();
        let exact = mis_rectangles_exact(&inst, &b).unwrap();
        if exact.len() != mis_scan(&inst) || !validate_misr_solution(&inst, &exact).unwrap() {
            problems.push(format!("mis #{i}"));
        }
    }
    let mut mss_cases = 0;
    for i in 0..3000 {
        let m = rng.random_range(1..=5);
        let xs: Vec<u64> = (0..m).map(|_| rng.random_range(1..=60)).collect();
        let t = rng.random_range(1..=60);
        let k = rng.random_range(1..=4);
        mss_cases += 1;
        let dp = mss_exact(&xs, t, k);
        let witness_ok = dp
            .as_ref()
            .is_none_or(|ys| ys.len() == k && ys.iter().sum::<u64>() == t && ys.iter().all(|y| xs.contains(y)));
        if dp.is_some() != mss_enumerate(&xs, t, k) || !witness_ok {
            problems.push(format!("mss #{i}"));
        }
    }
    verdict(
        problems.is_empty(),
        format!("{packing_cases} packing cases, 300 MIS cases, {mss_cases} MSS cases: failures {problems:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("grid dichotomy", grid_dichotomy),
        ("embedding planarity", embedding_planarity),
        ("structured solution", structured_solution),
        ("MISR approximation scheme", misr_pas),
        ("MISR kernel", misr_kernel),
        ("strip freeing", strip_freeing),
        ("rounding and inflation", inflation),
        ("kernel pruning exactness", kernel_pruning),
        ("2DKR approximation scheme", knapsack_pas),
        ("hardness forward direction", hardness),
        ("oracle self-consistency", oracles),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        all &= v.pass;
        println!("{} {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
        if i == 7 {
            println!("{}", kernel_pruning_coarse());
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
