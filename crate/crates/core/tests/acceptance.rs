//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any fails.
//!
//! Run with `cargo test -p betti-core --test acceptance --release`.

use std::f64::consts::{PI, SQRT_2};
use std::panic;
use std::time::{Duration, Instant};

use betti_core::diagram::FiltrationGrid;
use betti_core::experiments::{
    example_diagrams, ratio_limit, run_batch_for, run_instability_sweep, run_ratio_curve, run_theorem_2_5_demo,
    Experiment, InstabilitySweep,
};
use betti_core::experiments::{Batch, ExperimentConfig};
use betti_core::filtration::build_rips;
use betti_core::homology::{betti_numbers_at, persistence, PersistenceDiagram};
use betti_core::metrics::{bottleneck, brute_force_bottleneck, brute_force_wasserstein, sup_distance, wasserstein};
use betti_core::pointcloud::{pairwise_distances, GeneratorKind, PointCloud};
use betti_core::rng::Stream;
use betti_core::vectorize::{lipschitz_constant, stable_betti};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio_curve() -> Outcome {
    let start = Instant::now();
    let curve = run_ratio_curve(1e-6, 1.0, 10_000);
    let elapsed = start.elapsed();
    let (arg, max) = curve
        .iter()
        .map(|c| (c.0, c.2))
        .fold((f64::NAN, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let target = 0.116440243790144;
    check((max - target).abs() <= 1e-9, || format!("sup ratio {max:.15} != {target}"))?;
    check((ratio_limit() - target).abs() <= 1e-9, || "limit constant off".into())?;
    let at_small = curve[0].2;
    check(max - at_small <= 1e-9 && curve[curve.len() - 1].2 < at_small, || {
        format!("sup not attained in the small-eps limit: ratio {at_small} at eps = {:e}", curve[0].0)
    })?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("sup = {max:.15} at eps = {arg:e}, {} points in {elapsed:.2?}", curve.len()))
}

fn instability_witness() -> Outcome {
    let mut worst_w1 = 0.0f64;
    let mut ratios = Vec::new();
    for eps in [1e-2, 1e-4, 1e-8] {
        let r = run_theorem_2_5_demo(eps, 4).map_err(|e| e.to_string())?;
        check(r.sup_dist == 1.0, || format!("eps {eps:e}: sup distance {}", r.sup_dist))?;
        // The shifted deaths τ_j ± ε/2 are themselves rounded, so W₁ can only
        // equal ε up to the spacing of doubles near τ_j.
        let err = (r.w1 - eps).abs();
        check(err <= 2.0 * f64::EPSILON, || format!("eps {eps:e}: |W1 - eps| = {err:e}"))?;
        worst_w1 = worst_w1.max(err);
        ratios.push(r.ratio);
        check((r.ratio * eps - 1.0).abs() <= 1e-7, || format!("eps {eps:e}: ratio {}", r.ratio))?;
    }
    check(ratios.windows(2).all(|w| w[1] > 10.0 * w[0]), || format!("ratios not growing: {ratios:?}"))?;
    Ok(format!("sup = 1, max |W1 - eps| = {worst_w1:.1e}, ratios {}", ratios.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>().join(", ")))
}

fn random_diagram(rng: &mut Stream, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            let b = rng.uniform(0.0, 0.95);
            (b, rng.uniform(b + 0.01, 1.0))
        })
        .collect()
}

fn lipschitz_suite() -> Outcome {
    let mut rng = Stream::new(0x5eed_3);
    let mut trials = 0;
    let mut worst = 0.0f64;
    for &n_bins in &[2usize, 10, 20] {
        let grid = FiltrationGrid::new(1.0, n_bins).unwrap();
        let c = lipschitz_constant(&grid) / n_bins as f64;
        for _ in 0..400 {
            let k = 1 + rng.index(20);
            let base = random_diagram(&mut rng, k);
            let moved: Vec<(f64, f64)> = base
                .iter()
                .map(|&(b, d)| (b + rng.uniform(-1e-3, 1e-3), d + rng.uniform(-1e-3, 1e-3)))
                .collect();
            let (x, y) = (PersistenceDiagram::from_points(1, &base), PersistenceDiagram::from_points(1, &moved));
            let w1 = wasserstein(&x, &y, 1.0).unwrap();
            let lhs = sup_distance(&stable_betti(&x, &grid), &stable_betti(&y, &grid)).unwrap();
            let bound = SQRT_2 * c * w1;
            check(lhs <= bound, || format!("N={n_bins}, k={k}: {lhs:e} > {bound:e}"))?;
            if w1 > 0.0 {
                worst = worst.max(lhs / bound);
            }
            trials += 1;
        }
    }
    Ok(format!("{trials} pairs, 0 violations, max lhs/bound = {worst:.3}"))
}

fn lattice_flip() -> Outcome {
    let cfg = InstabilitySweep.default_config();
    let start = Instant::now();
    let rows = run_instability_sweep(&cfg, GeneratorKind::PerturbedLattice).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(rows.len() == 100, || format!("{} rows", rows.len()))?;
    let first = rows[0].v1_stable;
    for r in &rows {
        let want = if r.epsilon < 0.0 { 0.5 } else { 0.0 };
        check(r.v1_original == want, || format!("eps {:e}: original v1 = {}", r.epsilon, r.v1_original))?;
        check((r.v1_stable - first).abs() <= 1e-12, || format!("eps {:e}: stable v1 = {}", r.epsilon, r.v1_stable))?;
    }
    check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("original 0.5 | 0 across eps = 0, stable v1 = {first:.6} throughout, {elapsed:.1?}"))
}

fn wasserstein_oracle() -> Outcome {
    let mut rng = Stream::new(0x5eed_5);
    let mut worst = 0.0f64;
    let pairs = 600;
    for t in 0..pairs {
        let (m, n) = (rng.index(6), rng.index(6));
        // Every tenth pair draws from a coarse grid to force ties.
        let mut draw = |k: usize| -> Vec<(f64, f64)> {
            if t % 10 == 0 {
                (0..k)
                    .map(|_| {
                        let b = rng.index(4) as f64 * 0.25;
                        (b, b + 0.25 * (1 + rng.index(3)) as f64)
                    })
                    .collect()
            } else {
                random_diagram(&mut rng, k)
            }
        };
        let x = PersistenceDiagram::from_points(1, &draw(m));
        let y = PersistenceDiagram::from_points(1, &draw(n));
        for p in [1.0, 2.0] {
            let d = (wasserstein(&x, &y, p).unwrap() - brute_force_wasserstein(&x, &y, p).unwrap()).abs();
            check(d <= 1e-12, || format!("pair {t}, p={p}: |delta| = {d:e}"))?;
            worst = worst.max(d);
        }
        let d = (bottleneck(&x, &y).unwrap() - brute_force_bottleneck(&x, &y).unwrap()).abs();
        check(d <= 1e-12, || format!("pair {t}, bottleneck: |delta| = {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!("{pairs} pairs x (W1, W2, bottleneck), max |delta| = {worst:.1e}"))
}

fn homology_oracle() -> Outcome {
    let mut rng = Stream::new(0x5eed_6);
    let clouds = 150;
    for c in 0..clouds {
        let n = 2 + rng.index(11);
        let points: Vec<[f64; 2]> = (0..n).map(|_| [rng.unit(), rng.unit()]).collect();
        let pc = PointCloud::from_points(points, c, GeneratorKind::Uniform).unwrap();
        let d = pairwise_distances(&pc);
        let fc = build_rips(&d, d.max_distance() * 1.01, 2).unwrap();
        let diagrams = persistence(&fc, &[0, 1]);
        for _ in 0..5 {
            let tau = rng.uniform(0.0, d.max_distance());
            let (b0, b1) = betti_numbers_at(&d, tau);
            let (a0, a1) = (diagrams[0].alive_count(tau), diagrams[1].alive_count(tau));
            check((a0, a1) == (b0, b1), || format!("cloud {c} (n={n}) tau {tau}: pairs ({a0},{a1}) vs ranks ({b0},{b1})"))?;
        }
    }
    Ok(format!("{clouds} clouds x 5 thresholds, H0 and H1 counts exact"))
}

fn hand_checked() -> Outcome {
    let square = PointCloud::from_points(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], 0, GeneratorKind::Uniform).unwrap();
    let fc = build_rips(&pairwise_distances(&square), 2.0, 2).unwrap();
    let h1 = &persistence(&fc, &[1])[0];
    check(h1.pairs.len() == 1, || format!("square H1 has {} pairs", h1.pairs.len()))?;
    let p = h1.pairs[0];
    check(p.birth == 1.0 && (p.death - SQRT_2).abs() <= f64::EPSILON, || format!("square H1 = ({}, {})", p.birth, p.death))?;

    let s = 1.0;
    let tri = PointCloud::from_points(vec![[0.0, 0.0], [s, 0.0], [s / 2.0, s * 3f64.sqrt() / 2.0]], 0, GeneratorKind::Uniform).unwrap();
    let fc = build_rips(&pairwise_distances(&tri), 2.0, 2).unwrap();
    let ds = persistence(&fc, &[0, 1]);
    check(ds[1].pairs.is_empty(), || format!("triangle H1 = {:?}", ds[1].pairs))?;
    let mut h0: Vec<(f64, f64)> = ds[0].pairs.iter().map(|p| (p.birth, p.death)).collect();
    h0.sort_by(|a, b| a.1.total_cmp(&b.1));
    check(h0.len() == 3, || format!("triangle H0 = {h0:?}"))?;
    check(h0[0].0 == 0.0 && (h0[0].1 - s).abs() <= f64::EPSILON, || format!("triangle H0 = {h0:?}"))?;
    check(h0[1].0 == 0.0 && (h0[1].1 - s).abs() <= f64::EPSILON, || format!("triangle H0 = {h0:?}"))?;
    check(h0[2] == (0.0, f64::INFINITY), || format!("triangle H0 = {h0:?}"))?;
    Ok("square H1 = {(1, sqrt 2)}; triangle H0 = {(0,1) x2, (0,inf)}, H1 empty".into())
}

fn closed_forms() -> Outcome {
    let grid = FiltrationGrid::new(1.0, 2).unwrap();
    let k = 1.0 / (2.0 * PI);
    let mut worst = 0.0f64;
    for eps in [0.01, 0.1, 0.5] {
        let (b, b2) = example_diagrams(eps);
        let (v, v2) = (stable_betti(&b, &grid).values, stable_betti(&b2, &grid).values);
        let v1 = k * ((-1.0 / 16.0 - eps * eps / 4.0).exp() + (-261.0f64 / 400.0).exp());
        let v2_b = k * ((-(5.0 / 16.0 + eps / 2.0 + eps * eps / 4.0)).exp() + (-41.0f64 / 400.0).exp());
        let v2_b2 = k * ((-(5.0 / 16.0 - eps / 2.0 + eps * eps / 4.0)).exp() + (-41.0f64 / 400.0).exp());
        for (got, want, what) in [(v[0], v1, "v1(B)"), (v2[0], v1, "v1(B')"), (v[1], v2_b, "v2(B)"), (v2[1], v2_b2, "v2(B')")] {
            let d = (got - want).abs();
            check(d <= 1e-12, || format!("eps {eps}: {what} = {got}, closed form {want}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("eps in {{0.01, 0.1, 0.5}}, max |delta| = {worst:.1e}"))
}

fn batch_dispersion() -> Outcome {
    let cfg: ExperimentConfig = Batch.default_config();
    let mut lines = Vec::new();
    let mut wins = 0;
    for &kind in &cfg.generators {
        let d = run_batch_for(&cfg, kind).map_err(|e| e.to_string())?.dispersion(1);
        if d.stable <= d.original {
            wins += 1;
        }
        lines.push(format!("{} {:.5}/{:.5}", kind, d.original, d.stable));
    }
    check(wins >= 3, || format!("stable more homogeneous on only {wins}/4: {}", lines.join(", ")))?;
    Ok(format!("stable <= original on {wins}/4 (original/stable: {})", lines.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("ratio curve", ratio_curve),
        ("instability witness", instability_witness),
        ("Lipschitz bound", lipschitz_suite),
        ("lattice flip", lattice_flip),
        ("Wasserstein oracle", wasserstein_oracle),
        ("homology oracle", homology_oracle),
        ("hand-checked complexes", hand_checked),
        ("closed forms", closed_forms),
        ("batch dispersion", batch_dispersion),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
