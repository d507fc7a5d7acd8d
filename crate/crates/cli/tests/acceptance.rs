//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{brute_force_kernel_count, cli_json, golden_dir, golden_rows, laplace_det, mat_mul, random_unimodular, to_rows};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use stabilitylab::fieldrank::field_report;
use stabilitylab::grouptrace::{
    finite_dim_approximation, hs_distance, induce_trace_with, induction_in_stages_check, random_chain, random_unitary,
    FiniteGroup, LatticeProductElement, TraceFn, Transversal,
};
use stabilitylab::intlinalg::{char_poly, smith_normal_form};
use stabilitylab::polyclass::factor_over_integers;
use stabilitylab::verdict::recheck;
use stabilitylab::{IntMatrix, IntPoly};
use stabilitylab_cli::Output;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.2?}, limit {limit:?}", start.elapsed()))
}

fn inline(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
}

fn int(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => BigInt::from(n.as_i64().expect("integer")),
        Value::String(s) => s.parse().expect("integer string"),
        other => panic!("not an integer: {other}"),
    }
}

fn mat_pow_i64(a: &[Vec<i64>], n: u32) -> Vec<Vec<i64>> {
    let k = a.len();
    let mut r: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..n {
        r = (0..k).map(|i| (0..k).map(|j| (0..k).map(|l| r[i][l] * a[l][j]).sum()).collect()).collect();
    }
    r
}

/// Fixed-point counts against the determinant and against brute force.
fn periodic_count() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for case in 0..10u64 {
        let k = if case < 5 { 2 } else { 3 };
        let a = random_unimodular(k, 6, 1000 + case);
        for n in 1..=4u32 {
            let mut b = mat_pow_i64(&a, n);
            for (i, row) in b.iter_mut().enumerate() {
                row[i] -= 1;
            }
            let det = laplace_det(&to_rows(&IntMatrix::from_rows(&b).unwrap())).abs();
            if det.is_zero() {
                continue;
            }
            let v = cli_json(&["periodic", "--matrix", &inline(&a), "--n", &n.to_string(), "--enumerate"])?;
            let order = int(&v["result"]["order"]);
            ensure(order == det, || format!("A={a:?} n={n}: order {order} != |det| {det}"))?;
            let points = v["result"]["points"].as_array().map_or(0, Vec::len);
            ensure(BigInt::from(points) == det, || format!("A={a:?} n={n}: {points} points listed"))?;
            let d = i64::try_from(&det).unwrap();
            let brute = brute_force_kernel_count(&b, d);
            ensure(BigInt::from(brute) == det, || format!("A={a:?} n={n}: brute force {brute} != {det}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} (A, n) pairs exact in {:.2?}", start.elapsed()))
}

/// Dual-lattice membership `m ∈ (A^n - I)^T Z^k`, decided by the adjugate.
fn annihilates(b: &[Vec<i64>], m: &[i64]) -> bool {
    let rows = to_rows(&IntMatrix::from_rows(b).unwrap());
    let det = laplace_det(&rows);
    let k = b.len();
    // x = B^{-T} m = adj(B)^T m / det; m annihilates iff x is integral.
    (0..k).all(|i| {
        let mut s = BigInt::zero();
        for (j, mj) in m.iter().enumerate() {
            // adj(B)^T[i][j] = adj(B)[j][i] = cofactor C_ij of B
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            s += BigInt::from(sign * mj) * laplace_det(&minor);
        }
        s.is_multiple_of(&det)
    })
}

fn frequency_box(k: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (-m..=m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

fn dense_periodic_measures() -> Outcome {
    let start = Instant::now();
    let a = vec![vec![2, 1], vec![1, 1]];
    let v = cli_json(&["weakstar", "--matrix", "2,1;1,1", "--n-min", "1", "--n-max", "12", "--freq-box", "3"])?;
    let rows = v["result"]["rows"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 12, || format!("{} rows", rows.len()))?;
    let mut n0 = None;
    for row in rows {
        let n = row["n"].as_u64().unwrap() as u32;
        ensure(row["evaluation"] == "exact", || format!("row {n} not exact"))?;
        let d = row["d_n"].as_f64().ok_or(format!("row {n} has no D_n"))?;
        let mut b = mat_pow_i64(&a, n);
        b[0][0] -= 1;
        b[1][1] -= 1;
        let expected = if frequency_box(2, 3).iter().any(|m| annihilates(&b, m)) { 1.0 } else { 0.0 };
        ensure(d == expected, || format!("n={n}: D_n={d}, oracle {expected}"))?;
        if d == 0.0 {
            n0.get_or_insert(n);
        } else {
            n0 = None;
        }
    }
    within(start, Duration::from_secs(1))?;
    let n0 = n0.ok_or("D_n does not vanish up to n = 12")?;
    Ok(format!("D_n = 0 exactly for n >= {n0}"))
}

fn negative_control() -> Outcome {
    let phi5 = "0,0,0,-1;1,0,0,-1;0,1,0,-1;0,0,1,-1";
    let c = cli_json(&["classify", "--matrix", phi5])?;
    ensure(c["result"]["is_ergodic"] == false, || "companion of Phi_5 classified ergodic".into())?;
    ensure(c["result"]["unimodular"]["roots_of_unity"] == serde_json::json!([5]), || "missing 5th roots of unity".into())?;
    let v = cli_json(&["verdict", "--family", "toral", "--matrix", phi5])?;
    let id = v["result"]["verdict"]["citation"]["id"].as_str().unwrap_or("").to_string();
    ensure(id != "CorD.4", || "verdict cites the ergodic rule".into())?;
    let w = cli_json(&["weakstar", "--matrix", phi5, "--n-min", "1", "--n-max", "10", "--freq-box", "1"])?;
    let nonzero = w["result"]["rows"].as_array().unwrap().iter().filter(|r| r["d_n"].as_f64().is_some_and(|d| d > 0.0)).count();
    Ok(format!("non-ergodic, verdict cites {id}, {nonzero} rows with D_n > 0"))
}

/// Parses `(1 2 3)(4 5)` into images of `0..n`.
fn perm_from_label(label: &str, n: usize) -> Vec<usize> {
    let mut img: Vec<usize> = (0..n).collect();
    for cycle in label.split(')').map(|c| c.trim_start_matches('(')).filter(|c| !c.trim().is_empty()) {
        let pts: Vec<usize> = cycle.split_whitespace().map(|t| t.parse::<usize>().unwrap() - 1).collect();
        for (i, &p) in pts.iter().enumerate() {
            img[p] = pts[(i + 1) % pts.len()];
        }
    }
    img
}

/// Matrix of `σ` on the basis `e1 - e3, e2 - e3` of the sum-zero plane.
fn standard_rep(sigma: &[usize]) -> [[i64; 2]; 2] {
    let coords = |v: [i64; 3]| [v[0], v[1]]; // valid for sum-zero vectors
    let act = |v: [i64; 3]| {
        let mut w = [0; 3];
        for i in 0..3 {
            w[sigma[i]] += v[i];
        }
        w
    };
    let c0 = coords(act([1, 0, -1]));
    let c1 = coords(act([0, 1, -1]));
    [[c0[0], c1[0]], [c0[1], c1[1]]]
}

fn induction_correctness() -> Outcome {
    let start = Instant::now();
    let v = cli_json(&["induce", "--group", "S3", "--trace", "cyclic:(1 2 3):1"])?;
    let mut worst: f64 = 0.0;
    for row in v["result"]["values"].as_array().ok_or("no values")? {
        let label = row["element"].as_str().unwrap();
        let m = standard_rep(&perm_from_label(label, 3));
        let expected = (m[0][0] + m[1][1]) as f64 / 2.0;
        let got = Complex64::new(row["re"].as_f64().unwrap(), row["im"].as_f64().unwrap());
        worst = worst.max((got - expected).norm());
    }
    ensure(worst <= 1e-10, || format!("max error {worst:e}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("max error {worst:e} over S3"))
}

fn fuzz_corpus() -> Vec<(TraceFn, stabilitylab::grouptrace::Subgroup, stabilitylab::grouptrace::Subgroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    (0..200).map(|_| random_chain(&mut rng).expect("fuzzed chain")).collect()
}

fn induction_in_stages() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let corpus = fuzz_corpus();
    for (phi, middle, top) in &corpus {
        ensure(top.group().order() <= 48, || "group above order 48".into())?;
        worst = worst.max(induction_in_stages_check(phi, middle, top).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-10, || format!("residual {worst:e}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("max residual {worst:e} over {} chains in {:.2?}", corpus.len(), start.elapsed()))
}

fn transversal_independence() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, (phi, _, top)) in fuzz_corpus().iter().enumerate() {
        let a = induce_trace_with(phi, top, Transversal::Canonical).map_err(|e| e.to_string())?;
        let b = induce_trace_with(phi, top, Transversal::Seeded(i as u64 + 1)).map_err(|e| e.to_string())?;
        worst = worst.max(a.max_difference(&b).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-12, || format!("max difference {worst:e}"))?;
    Ok(format!("max difference {worst:e}"))
}

/// Independent count of window words over the box `0..n`.
fn word_counts(x: impl Fn(i64) -> u32, n: i64, len: i64) -> HashMap<Vec<u32>, i64> {
    let mut h = HashMap::new();
    for g in 0..n {
        *h.entry((0..len).map(|j| x(g + j)).collect()).or_insert(0) += 1;
    }
    h
}

fn bernoulli_periodization() -> Outcome {
    let start = Instant::now();
    let periods = [16u64, 32, 64, 128, 256];
    let mut worst_c: f64 = 0.0;
    for seed in 0..20u64 {
        let v = cli_json(&[
            "bernoulli", "--seed", &seed.to_string(), "--alphabet", "2", "--extent", "16", "--period", "16,32,64,128,256",
            "--window", "1,2,3",
        ])?;
        let report = &v["result"]["report"];
        let c = report["fitted_c"].as_f64().unwrap();
        worst_c = worst_c.max(c);
        let rows = report["rows"].as_array().unwrap();
        ensure(rows.len() == periods.len() * 3, || "missing rows".into())?;
        // Rebuild the pattern from the structured output of a one-row run is
        // not possible, so the oracle recounts words on the pattern the
        // library draws for the same seed.
        let pattern = stabilitylab::shiftdyn::Pattern::random(2, vec![16], seed).map_err(|e| e.to_string())?;
        use stabilitylab::shiftdyn::Configuration;
        let mut last: HashMap<i64, f64> = HashMap::new();
        for row in rows {
            let n = row["period"].as_u64().unwrap() as i64;
            let len = row["window"][0].as_i64().unwrap();
            let d = row["distance_f64"].as_f64().unwrap();
            let mu = word_counts(|g| pattern.at(&[g]), n, len);
            let nu = word_counts(|g| pattern.at(&[g.rem_euclid(n)]), n, len);
            let keys: std::collections::BTreeSet<_> = mu.keys().chain(nu.keys()).collect();
            let twice: i64 = keys.iter().map(|k| (mu.get(*k).unwrap_or(&0) - nu.get(*k).unwrap_or(&0)).abs()).sum();
            let exact = format!("{}", num_rational::Ratio::new(twice, 2 * n));
            ensure(row["distance"] == exact.as_str(), || format!("seed {seed} N={n} |W|={len}: {} vs oracle {exact}", row["distance"]))?;
            ensure(d <= c / n as f64 + 1e-15, || format!("seed {seed}: distance {d} above C/N"))?;
            if n >= 64 {
                ensure(d <= 0.05, || format!("seed {seed} N={n} |W|={len}: distance {d} > 0.05"))?;
                if let Some(&prev) = last.get(&len) {
                    ensure(d <= prev, || format!("seed {seed} |W|={len}: distance increased at N={n}"))?;
                }
                last.insert(len, d);
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("20 patterns, distances <= 0.05 from N = 64, fitted C <= {worst_c}"))
}

fn hs_metric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for n in [2usize, 3, 4] {
        for _ in 0..50 {
            let [u, v, w, x] = std::array::from_fn(|_| random_unitary(n, &mut rng));
            let d0 = hs_distance(&u, &v).map_err(|e| e.to_string())?;
            let d1 = hs_distance(&(&w * &u * &x), &(&w * &v * &x)).map_err(|e| e.to_string())?;
            worst = worst.max((d0 - d1).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("bi-invariance error {worst:e}"))?;
    let mut worst_defect: f64 = 0.0;
    for g in ["C6", "S3", "D4", "Q8", "A4"] {
        let v = cli_json(&["defect", "--group", g, "--eps", "0"])?;
        worst_defect = worst_defect.max(v["result"]["regular_defect"].as_f64().unwrap());
        worst_defect = worst_defect.max(v["result"]["defect"].as_f64().unwrap());
    }
    ensure(worst_defect <= 1e-12, || format!("representation defect {worst_defect:e}"))?;
    Ok(format!("bi-invariance error {worst:e}, representation defect {worst_defect:e}"))
}

fn finite_dim_realization() -> Outcome {
    let g = Arc::new(FiniteGroup::preset("C2").map_err(|e| e.to_string())?);
    let a = g.find("a").map_err(|e| e.to_string())?;
    let psi = TraceFn::cyclic_character(&g, a, 1).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for stage in 1..=6u32 {
        let fact: i64 = (1..=i64::from(stage)).product();
        let points: Vec<LatticeProductElement> =
            (-200..=200i64).flat_map(|m| (0..2).map(move |h| LatticeProductElement { lattice: vec![BigInt::from(m)], finite: h })).collect();
        let values = finite_dim_approximation(&psi, 1, stage, &points).map_err(|e| e.to_string())?;
        for (p, val) in points.iter().zip(values) {
            let m = i64::try_from(&p.lattice[0]).unwrap();
            if m == 0 {
                ensure(val == psi.extended(p.finite), || format!("stage {stage}: value {val} at (0, {})", p.finite))?;
                checked += 1;
            } else if fact > m.abs() {
                ensure(val == Complex64::zero(), || format!("stage {stage}: value {val} at ({m}, {})", p.finite))?;
                checked += 1;
            }
        }
    }
    ensure(psi.extended(a) == Complex64::new(-1.0, 0.0) || (psi.extended(a) + 1.0).norm() < 1e-15, || "not the sign character".into())?;
    Ok(format!("{checked} exact values over stages 1..=6"))
}

/// `sign(disc f) = (-1)^{r2}`, with the discriminant from the Sylvester
/// matrix of `f` and `f'`.
fn discriminant_sign(c: &[i64]) -> i32 {
    let n = c.len() - 1;
    let d: Vec<i64> = (1..=n).map(|i| i as i64 * c[i]).collect();
    let size = 2 * n - 1;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n - 1 {
        for (j, &x) in c.iter().rev().enumerate() {
            s[r][r + j] = BigInt::from(x);
        }
    }
    for r in 0..n {
        for (j, &x) in d.iter().rev().enumerate() {
            s[n - 1 + r][r + j] = BigInt::from(x);
        }
    }
    let res = laplace_det(&s);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    sign * if res.is_positive() { 1 } else if res.is_negative() { -1 } else { 0 }
}

fn unit_rank_trichotomy() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut rank_one = 0;
    for deg in 1..=4usize {
        let count = 7usize.pow(deg as u32);
        for idx in 0..count {
            let mut c: Vec<i64> = (0..deg).map(|i| ((idx / 7usize.pow(i as u32)) % 7) as i64 - 3).collect();
            c.push(1);
            let f = IntPoly::from_i64(&c);
            let fl = factor_over_integers(&f).map_err(|e| e.to_string())?;
            if !(fl.factors.len() == 1 && fl.factors[0].1 == 1) {
                continue;
            }
            total += 1;
            let r = field_report(&f).map_err(|e| e.to_string())?;
            let case = matches!((deg, r.r1, r.r2), (2, 2, 0) | (3, 1, 1) | (4, 0, 2));
            ensure((r.unit_rank == 1) == case, || format!("{f}: signature ({}, {}), unit rank {}", r.r1, r.r2, r.unit_rank))?;
            ensure(r.r1 + 2 * r.r2 == deg, || format!("{f}: bad signature"))?;
            if deg >= 2 {
                let parity = if r.r2 % 2 == 0 { 1 } else { -1 };
                ensure(discriminant_sign(&c) == parity, || format!("{f}: r2 = {} contradicts the discriminant sign", r.r2))?;
            }
            rank_one += usize::from(case);
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{total} irreducible polynomials, {rank_one} of unit rank one, {:.2?}", start.elapsed()))
}

fn golden_verdicts() -> Outcome {
    let rows = golden_rows();
    ensure(rows.len() == 6, || format!("{} golden rows", rows.len()))?;
    for (name, status, citation, args) in &rows {
        let mut argv: Vec<&str> = vec!["verdict", "--format", "structured"];
        argv.extend(args.iter().map(String::as_str));
        let (code, out, err) = common::cli(&argv);
        ensure(code == 0, || format!("{name}: exit {code}: {err}"))?;
        let want = std::fs::read_to_string(golden_dir().join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        ensure(out == want, || format!("{name}: output differs from the golden file"))?;
        let parsed: Output = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let Output::Verdict(v) = parsed else { return Err(format!("{name}: not a verdict")) };
        let st = serde_json::to_value(v.verdict.status).unwrap();
        ensure(st == status.as_str() && v.verdict.citation.id == *citation, || format!("{name}: {st} / {}", v.verdict.citation.id))?;
        ensure(recheck(&v.descriptor, &v.verdict).map_err(|e| e.to_string())?, || format!("{name}: evidence does not re-check"))?;
    }
    Ok("6 verdicts byte-identical, evidence re-checked".into())
}

fn cayley_hamilton_and_snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..100 {
        let n = rng.random_range(1..=5usize);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let ar = to_rows(&a);
        let p = char_poly(&a).map_err(|e| e.to_string())?;
        ensure(p.eval_matrix(&a).map_err(|e| e.to_string())?.is_zero(), || format!("case {case}: p(A) != 0"))?;
        let det = laplace_det(&ar);
        ensure(if n % 2 == 0 { p.coeff(0) == det } else { -p.coeff(0) == det }, || format!("case {case}: constant term"))?;
        let tr: BigInt = (0..n).map(|i| ar[i][i].clone()).sum();
        ensure(-p.coeff(n - 1) == tr, || format!("case {case}: trace coefficient"))?;
        let s = smith_normal_form(&a).map_err(|e| e.to_string())?;
        ensure(mat_mul(&mat_mul(&to_rows(&s.u), &ar), &to_rows(&s.v)) == to_rows(&s.d), || format!("case {case}: UAV != D"))?;
        ensure(laplace_det(&to_rows(&s.u)).abs().is_one() && laplace_det(&to_rows(&s.v)).abs().is_one(), || format!("case {case}: U or V not unimodular"))?;
        let f = s.invariant_factors();
        for w in f.windows(2) {
            ensure(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), || format!("case {case}: chain {f:?}"))?;
        }
        ensure(f.iter().product::<BigInt>() == det.abs(), || format!("case {case}: product of invariant factors"))?;
        let g = ar.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        ensure(f[0] == g, || format!("case {case}: d_1 != gcd of entries"))?;
    }
    Ok("100 matrices up to 5x5 exact".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("periodic-count identity", periodic_count),
        ("dense periodic measures for the cat map", dense_periodic_measures),
        ("negative control: companion of Phi_5", negative_control),
        ("induction from A3 to S3", induction_correctness),
        ("induction in stages", induction_in_stages),
        ("transversal independence", transversal_independence),
        ("Bernoulli periodization", bernoulli_periodization),
        ("HS metric", hs_metric),
        ("finite-dimensional approximation on Z x C2", finite_dim_realization),
        ("unit-rank trichotomy", unit_rank_trichotomy),
        ("golden verdict table", golden_verdicts),
        ("Cayley-Hamilton and SNF invariants", cayley_hamilton_and_snf),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
