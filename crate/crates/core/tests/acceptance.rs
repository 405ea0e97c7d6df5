//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Pass criterion numbers as arguments to run a subset.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fiberlrc::code::CodeSpec;
use fiberlrc::distance::{self, exhaustive, Engine, Limits};
use fiberlrc::experiments::optimality_probability;
use fiberlrc::fixtures::{example1, nonoptimal};
use fiberlrc::matroid::{parity_check_matrix, verify_matroid_iso, MatroidOracle};
use fiberlrc::points::{
    distinct_below, rng_from_seed, sample_bundle, sample_plane, uniform_below, BundleSampling, PlaneBatch,
    PlanePoints, Rng,
};
use fiberlrc::recovery::{recover_symbol, recovery_sets, repair, ErasurePattern};
use fiberlrc::reproduce::{reproduce, Target};
use fiberlrc::{Code, Fe, PrimeField};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.1?}, limit {limit:?}"))
}

fn err(e: fiberlrc::Error) -> String {
    e.to_string()
}

fn plane(q: u64, b: usize, r: usize, z: usize, seed: u64) -> Result<Code, String> {
    let f = PrimeField::new(q).map_err(err)?;
    Code::build(CodeSpec::plane(f, r, z, sample_plane(&f, b, r, seed).map_err(err)?)).map_err(err)
}

fn reproduced(target: Target) -> Result<(), String> {
    let rep = reproduce(target).map_err(err)?;
    ensure(rep.pass, || rep.diff().join("; "))
}

/// `(x-6)(x-23)(y-4)(y-10)` evaluated with plain integer arithmetic.
fn example_poly(x: u64, y: u64) -> u64 {
    let f = |a: u64, c: u64| (a + 31 - c) % 31;
    f(x, 6) * f(x, 23) % 31 * f(y, 4) % 31 * f(y, 10) % 31
}

fn c1_example() -> Check {
    let start = Instant::now();
    let code = Code::build(example1::spec().map_err(err)?).map_err(err)?;
    let direct: Vec<u64> = example1::points().pairs().iter().map(|&(x, y)| example_poly(x, y)).collect();
    ensure(direct == example1::CODEWORD, || format!("direct evaluation gives {direct:?}"))?;
    let msg: Vec<Fe> = example1::POLY.iter().map(|&v| Fe(v)).collect();
    let word = code.encode(&msg).map_err(err)?;
    ensure(word.values() == example1::CODEWORD, || format!("encoded {:?}", word.values()))?;
    let rep = distance::min_distance(&code, Engine::Infoset, &Limits::default()).map_err(err)?;
    let check = distance::min_distance_structured(&code, 1_000_000).map_err(err)?;
    ensure(rep.d == 6 && check.d == 6 && rep.optimal, || format!("d = {} / {}, optimal {}", rep.d, check.d, rep.optimal))?;
    reproduced(Target::Example)?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("[16, 9, 6]_31 optimal, codeword matches ({:.2?})", start.elapsed()))
}

fn c2_tables() -> Check {
    let start = Instant::now();
    reproduced(Target::TableF31)?;
    let mid = start.elapsed();
    reproduced(Target::TableF37)?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("F_31 rows in {mid:.1?}, F_37 rows in {:.1?}", start.elapsed() - mid))
}

fn c3_counterexample() -> Check {
    let start = Instant::now();
    reproduced(Target::Counterexample)?;
    let f = PrimeField::new(nonoptimal::Q).map_err(err)?;
    let code = Code::build(CodeSpec::plane(f, 4, 0, nonoptimal::points())).map_err(err)?;
    // the stored word lies in the code
    let word: Vec<Fe> = nonoptimal::CODEWORD.iter().map(|&v| Fe(v)).collect();
    let sol = code.generator().transpose().solve(&word);
    ensure(sol.is_ok(), || "stored word is not a codeword".into())?;
    let rep = distance::min_distance_structured(&code, Limits::default().node_budget).map_err(err)?;
    ensure(rep.d <= 6 && rep.singleton_bound == 7, || format!("d = {}, bound {}", rep.d, rep.singleton_bound))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("on Z, weight-6 word matches, d = {} < 7 ({:.2?})", rep.d, start.elapsed()))
}

fn c4_plane_optimal() -> Check {
    let start = Instant::now();
    let mut rng = rng_from_seed(4);
    let mut seen = BTreeSet::new();
    let mut cross = 0;
    for trial in 0..200 {
        let r = 1 + uniform_below(&mut rng, 3) as usize;
        let q = [31, 37, 101][uniform_below(&mut rng, 3) as usize];
        let b_max = q as usize / (r + 1);
        let b = 3 + uniform_below(&mut rng, (b_max - 2) as u64) as usize;
        let code = plane(q, b, r, 0, rng_seed(&mut rng))?;
        if let Some(w) = distance::find_weight_at_most(&code, r + 2, Limits::default().node_budget).map_err(err)? {
            return Err(format!("trial {trial}: q={q} b={b} r={r} has a word of weight {}", w.weight()));
        }
        let witness = distance::weight_witness_r_plus_3(&code).map_err(err)?;
        ensure(witness.weight() == r + 3, || format!("trial {trial}: witness weight {}", witness.weight()))?;
        if code.k() <= 9 {
            let d = distance::min_distance_infoset(&code).map_err(err)?.d;
            ensure(d == r + 3, || format!("trial {trial}: information sets give d = {d}"))?;
            cross += 1;
        }
        seen.insert((q, r));
    }
    within(start, Duration::from_secs(900))?;
    Ok(format!(
        "200 codes over {} (q, r) pairs have d = r + 3, {cross} also by information sets ({:.1?})",
        seen.len(),
        start.elapsed()
    ))
}

fn rng_seed(rng: &mut Rng) -> u64 {
    use rand::RngCore;
    rng.next_u64()
}

fn c5_engines() -> Check {
    let start = Instant::now();
    let limits = Limits { exhaustive_budget: 1_000_000, node_budget: 10_000_000 };
    let mut codes = 0;
    for q in [3u64, 5, 7, 11, 13] {
        for r in 1..q as usize {
            for b in 2..=q as usize / (r + 1) {
                for z in 0..=b - 2 {
                    let k = (b - 1 - z) * r;
                    if exhaustive::projective_count(q, k) > limits.exhaustive_budget {
                        continue;
                    }
                    for seed in 0..5 {
                        let code = plane(q, b, r, z, seed)?;
                        let ex = distance::min_distance_exhaustive(&code, limits.exhaustive_budget).map_err(err)?;
                        let is = distance::min_distance_infoset(&code).map_err(err)?;
                        let st = distance::min_distance_structured(&code, limits.node_budget).map_err(err)?;
                        let oracle = MatroidOracle::new(parity_check_matrix(&code));
                        let (circ, _) = oracle.smallest_circuit(code.n()).map_err(err)?;
                        ensure(ex.d == is.d && ex.d == st.d && ex.d == circ, || {
                            format!("q={q} b={b} r={r} z={z} seed={seed}: {} {} {} circuit {circ}", ex.d, is.d, st.d)
                        })?;
                        codes += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{codes} codes, engines and smallest circuit agree ({:.1?})", start.elapsed()))
}

fn c6_matroid() -> Check {
    let start = Instant::now();
    let mut rng = rng_from_seed(6);
    for pair in 0..50 {
        let q = [31u64, 37][pair % 2];
        let r = 1 + uniform_below(&mut rng, 3) as usize;
        let b = 3 + uniform_below(&mut rng, 2) as usize;
        let code = plane(q, b, r, 0, rng_seed(&mut rng))?;
        let fiberlrc::CodeKind::Plane { points, .. } = &code.spec().kind else { unreachable!() };
        let xs: Vec<Fe> = distinct_below(&mut rng, q, b).into_iter().map(Fe).collect();
        let other = Code::build(CodeSpec::plane(code.field(), r, 0, points.with_xs(&xs))).map_err(err)?;
        let iso = verify_matroid_iso(&code, &other).map_err(err)?;
        ensure(iso.holds, || format!("pair {pair}: T G R != G'"))?;
        let d1 = distance::min_distance_infoset(&code).map_err(err)?.d;
        let d2 = distance::min_distance_infoset(&other).map_err(err)?.d;
        ensure(d1 == d2, || format!("pair {pair}: d = {d1} vs {d2}"))?;
    }
    Ok(format!("50 pairs, T G R = G' and equal d ({:.1?})", start.elapsed()))
}

fn random_message(rng: &mut Rng, code: &Code) -> Vec<Fe> {
    (0..code.k()).map(|_| Fe(uniform_below(rng, code.field().order()))).collect()
}

fn c7_recovery() -> Check {
    let start = Instant::now();
    let mut rng = rng_from_seed(7);
    let mut planes = Vec::new();
    for i in 0..20u64 {
        let (q, b, r) = [(31, 4, 3), (37, 5, 2), (101, 6, 4), (13, 3, 2)][i as usize % 4];
        planes.push(plane(q, b, r, (i as usize / 4) % (b - 1), i)?);
    }
    let mut bundles = Vec::new();
    for i in 0..10u64 {
        let q = [11u64, 13][i as usize % 2];
        let f = PrimeField::new(q).map_err(err)?;
        let b = 2 + i as usize % 2;
        let alpha = i as usize % 2;
        let pts = sample_bundle(&f, BundleSampling { b, t: 2, beta: 1, m: 2, max_attempts: 1000 }, i).map_err(err)?;
        bundles.push(Code::build(CodeSpec::bundle(f, 2, alpha, 1, pts)).map_err(err)?);
    }
    for (kind, codes) in [("plane", &planes), ("bundle", &bundles)] {
        for trial in 0..1000 {
            let code = &codes[uniform_below(&mut rng, codes.len() as u64) as usize];
            let msg = random_message(&mut rng, code);
            let word = code.encode(&msg).map_err(err)?.0;
            let i = 1 + uniform_below(&mut rng, code.n() as u64) as usize;
            let erased = ErasurePattern::new(code.n(), [i]).map_err(err)?;
            let mut damaged = word.clone();
            damaged[i - 1] = Fe(uniform_below(&mut rng, code.field().order()));
            let fixed = repair(code, &damaged, &erased).map_err(err)?;
            ensure(fixed.0 == word, || format!("{kind} trial {trial}: position {i} not repaired"))?;
            let sets = recovery_sets(code, i).map_err(err)?;
            ensure(sets.len() == code.t(), || format!("{kind} trial {trial}: {} recovery sets", sets.len()))?;
            for s in 1..=sets.len() {
                let v = recover_symbol(code, &damaged, &erased, i, s).map_err(err)?;
                ensure(v == word[i - 1], || format!("{kind} trial {trial}: set {s} gives a wrong value"))?;
            }
        }
    }
    Ok(format!("2000 single erasures repaired, both bundle recovery sets agree ({:.1?})", start.elapsed()))
}

fn c8_bundle_bound() -> Check {
    let start = Instant::now();
    let mut rng = rng_from_seed(8);
    let mut tight = 0;
    for i in 0..50 {
        let q = [11u64, 13][i % 2];
        let f = PrimeField::new(q).map_err(err)?;
        let alpha = uniform_below(&mut rng, 2) as usize;
        let b = alpha + 1 + uniform_below(&mut rng, (4 - alpha) as u64) as usize;
        let params = BundleSampling { b, t: 2, beta: 1, m: 2, max_attempts: 1000 };
        let pts = sample_bundle(&f, params, rng_seed(&mut rng)).map_err(err)?;
        let code = Code::build(CodeSpec::bundle(f, 2, alpha, 1, pts)).map_err(err)?;
        let d = distance::min_distance_exhaustive(&code, 1_000_000).map_err(err)?.d;
        let bound = (b - alpha) * ((code.t() - 1) * code.r() + 2);
        ensure(d >= bound, || format!("code {i}: q={q} b={b} alpha={alpha}: d = {d} < {bound}"))?;
        tight += usize::from(d == bound);
    }
    Ok(format!("50 bundle codes meet the bound, {tight} with equality ({:.1?})", start.elapsed()))
}

fn c9_monte_carlo() -> Check {
    let start = Instant::now();
    let mut notes = Vec::new();
    for seed in [1u64, 2] {
        let rep = optimality_probability(&[37, 101, 257], 4, 4, 200, seed).map_err(err)?;
        let fr: Vec<f64> = rep.rows.iter().map(|r| r.fraction.unwrap_or(0.0)).collect();
        let last = &rep.rows[2];
        let line = format!(
            "seed {seed}: {:.3} / {:.3} / {:.3}, CI at 257 [{:.3}, {:.3}]",
            fr[0], fr[1], fr[2], last.ci_low, last.ci_high
        );
        if fr[2] >= fr[0] && last.ci_high >= 0.9 {
            within(start, Duration::from_secs(1800))?;
            return Ok(format!("{line} ({:.1?})", start.elapsed()));
        }
        notes.push(line);
    }
    Err(notes.join("; "))
}

/// Every configuration of three batches of two points over `F_7`.
fn all_configurations(q: u64) -> Vec<PlanePoints> {
    let mut out = Vec::new();
    let ys: Vec<u64> = (0..q).collect();
    for x1 in 0..q {
        for x2 in x1 + 1..q {
            for x3 in x2 + 1..q {
                let xs = [x1, x2, x3];
                for perm in permutations_of_six(&ys) {
                    if perm[0] < perm[1] && perm[2] < perm[3] && perm[4] < perm[5] {
                        let batches = (0..3)
                            .map(|i| PlaneBatch { x: Fe(xs[i]), ys: vec![Fe(perm[2 * i]), Fe(perm[2 * i + 1])] })
                            .collect();
                        out.push(PlanePoints::new(batches));
                    }
                }
            }
        }
    }
    out
}

fn permutations_of_six(pool: &[u64]) -> Vec<[u64; 6]> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(pool: &[u64], cur: &mut Vec<u64>, out: &mut Vec<[u64; 6]>) {
        if cur.len() == 6 {
            out.push(cur.as_slice().try_into().unwrap());
            return;
        }
        for &v in pool {
            if !cur.contains(&v) {
                cur.push(v);
                go(pool, cur, out);
                cur.pop();
            }
        }
    }
    go(pool, &mut cur, &mut out);
    out
}

fn c10_fiber_vanishing() -> Check {
    let start = Instant::now();
    let (q, b, r) = (7u64, 3usize, 1usize);
    let f = PrimeField::new(q).map_err(err)?;
    let configs = all_configurations(q);
    let mut words = 0u64;
    for pts in &configs {
        for z in 0..=b - 2 {
            let code = Code::build(CodeSpec::plane(f, r, z, pts.clone())).map_err(err)?;
            let mut bad = None;
            exhaustive::for_each_codeword(code.generator(), 1 << 20, |_, word| {
                let zero_fibers = (0..b).filter(|&i| code.batch_range(i).all(|p| word[p].is_zero())).count();
                let zeros = word.iter().filter(|v| v.is_zero()).count();
                words += 1;
                if zero_fibers > b - 2 - z || (z == 0 && zeros > (b - 2) * (r + 1) + (r - 1)) {
                    bad = Some(format!("{:?} z={z}: {zero_fibers} zero fibers, {zeros} zeros", pts.pairs()));
                }
            })
            .map_err(err)?;
            if let Some(msg) = bad {
                return Err(msg);
            }
        }
    }
    Ok(format!(
        "{} point sets over F_7 (b = 3, r = 1; r = 2 needs 9 distinct y), {words} words ({:.1?})",
        configs.len(),
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("example code", c1_example),
        ("degree-drop tables", c2_tables),
        ("non-optimal b = r = 4 code", c3_counterexample),
        ("random plane codes are optimal", c4_plane_optimal),
        ("engine agreement", c5_engines),
        ("base-change equivalence", c6_matroid),
        ("local recovery", c7_recovery),
        ("bundle distance bound", c8_bundle_bound),
        ("optimality frequency trend", c9_monte_carlo),
        ("fiber vanishing bounds", c10_fiber_vanishing),
    ];
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
