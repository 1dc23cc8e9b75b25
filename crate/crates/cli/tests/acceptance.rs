//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Bounds are measured on the test profile, which is unoptimised, so they are
//! conservative for release builds.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use exotic_cli::run;
use exotic_core::conormal::{
    conormal_fiber, exotic_orbit, exotic_orbit_dim, psi_fiber_dimension, row_seed, rsk_table, verify_z_properties,
    RskConfig,
};
use exotic_core::golden::{table1_fixture, table2_rows, transcription_ok, TABLE2_CSV};
use exotic_core::orbit::{closure_necessary_leq, enumerate_r_prime, OrbitParam};
use exotic_core::qprime::{
    count_t_prime, enumerate_t_prime, exotic_orbit_dim_formula, orbit_count_formula, psi_fiber, z_stratum_dim_formula,
};
use exotic_core::rng::seeded;
use exotic_core::strips::{dimension_identity, strip_bijection_holds};
use exotic_core::symplectic::{orbit_dim, representative};
use exotic_core::{Partition, SymplecticSpace};

const SEED: u64 = 1;

/// Criterion 1: enumeration of all three sizes.
const BOUND_COUNTS: Duration = Duration::from_secs(1);
/// Criterion 2: the n = 2 table at the default 8 samples.
const BOUND_TABLE2: Duration = Duration::from_secs(5);
/// Criterion 3: the n = 3 table.
const BOUND_N3: Duration = Duration::from_secs(120);
/// Criterion 6.
const BOUND_REP: Duration = Duration::from_secs(10);

/// Samples per orbit for criterion 4.
fn samples_per_orbit(n: usize) -> usize {
    if n <= 2 {
        100
    } else {
        10
    }
}

type Verdict = Result<String, String>;

fn timed(bound: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f()?;
    let took = start.elapsed();
    let timing = format!("{:.2}s, bound {}s", took.as_secs_f64(), bound.as_secs());
    if took < bound {
        Ok(format!("{v}; {timing}"))
    } else {
        Err(format!("{v}; too slow: {timing}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts() -> Verdict {
    let mut sizes = Vec::new();
    for (n, want) in [(1, 3), (2, 21), (3, 215)] {
        let got = enumerate_r_prime(n).len();
        let formula = orbit_count_formula(n);
        ensure(got == want && got as u128 == formula, || {
            format!("n = {n}: {got} parameters, formula {formula}, expected {want}")
        })?;
        sizes.push(got.to_string());
    }
    let rows = table2_rows().map_err(|e| e.to_string())?.len();
    ensure(rows == 21, || format!("bundled table has {rows} rows"))?;
    Ok(format!(
        "|R'| = {}, formula agrees, bundled table rows = {rows}; exact",
        sizes.join(", ")
    ))
}

fn table2() -> Verdict {
    let rows = rsk_table(2, &RskConfig::default()).map_err(|e| e.to_string())?;
    let golden = table2_rows().map_err(|e| e.to_string())?;
    ensure(transcription_ok(), || "bundled table checksum mismatch".into())?;
    ensure(rows.len() == golden.len(), || {
        format!("{} rows vs {}", rows.len(), golden.len())
    })?;
    for (r, g) in rows.iter().zip(&golden) {
        let pair = r.pair();
        ensure(
            *r.param() == g.param && pair.bp == g.bp && pair.tab.descents() == g.descents,
            || format!("{} gave {pair}, table says {} {:?}", r.param(), g.bp, g.descents),
        )?;
    }
    Ok("21/21 rows match (bipartition and descents); exact; 8 samples".into())
}

fn bijectivity(n: usize, bound: Duration) -> Verdict {
    timed(bound, || {
        let rows = rsk_table(n, &RskConfig::default()).map_err(|e| e.to_string())?;
        let images: BTreeSet<_> = rows.iter().map(|r| r.pair().clone()).collect();
        let target = enumerate_t_prime(n);
        ensure(images == target && rows.len() == target.len(), || {
            format!(
                "n = {n}: {} rows, {} images, |T'| = {}",
                rows.len(),
                images.len(),
                target.len()
            )
        })?;
        Ok(format!("n = {n}: bijective onto {} tagged pairs", target.len()))
    })
}

fn global_bijectivity() -> Verdict {
    let mut parts = Vec::new();
    for n in 1..=2 {
        parts.push(bijectivity(n, BOUND_N3)?);
    }
    parts.push(bijectivity(3, BOUND_N3)?);
    Ok(parts.join("; "))
}

/// Criteria 4 and 5 share the samples; returns (property verdict, dimension verdict).
fn properties_and_dimensions() -> (Verdict, Verdict) {
    let mut total_samples = 0;
    let mut prop_fail = Vec::new();
    let mut dim_fail = Vec::new();
    let mut fibres = 0;
    for n in 1..=3 {
        let space = SymplecticSpace::standard(Default::default(), n);
        let total = 2 * n * n + n;
        for (i, p) in enumerate_r_prime(n).iter().enumerate() {
            let pt = match representative(p, &space, row_seed(SEED, i)) {
                Ok(pt) => pt,
                Err(e) => {
                    prop_fail.push(format!("{p}: {e}"));
                    continue;
                }
            };
            let fib = conormal_fiber(&pt);
            if orbit_dim(&pt) + fib.dim() != total {
                dim_fail.push(format!("{p}: orbit + conormal"));
            }
            let mut rng = seeded(row_seed(SEED ^ 0xACCE, i));
            for k in 0..samples_per_orbit(n) {
                let s = fib.sample(&mut rng);
                total_samples += 1;
                let r = verify_z_properties(&s);
                if !r.all_ok() {
                    prop_fail.push(format!("{p}#{k}: {r:?}"));
                    continue;
                }
                if k > 0 {
                    continue;
                }
                let y = s.y();
                let Ok(base) = exotic_orbit(&space, &s.v, &y) else {
                    dim_fail.push(format!("{p}: exotic orbit"));
                    continue;
                };
                let odim = exotic_orbit_dim(&space, &s.v, &y);
                if odim as i64 != exotic_orbit_dim_formula(&base) {
                    dim_fail.push(format!("{p}: exotic orbit dim {odim}"));
                }
                for target in psi_fiber(&base) {
                    fibres += 1;
                    let d = target.nu.size();
                    if psi_fiber_dimension(&space, &s.v, &y, &target).ok().flatten() != Some(d) {
                        dim_fail.push(format!("{p}: fibre over {target}"));
                    }
                    if (odim + d) as i64 != z_stratum_dim_formula(&target, d) {
                        dim_fail.push(format!("{p}: Z formula at {target}"));
                    }
                }
            }
        }
        match rsk_table(n, &RskConfig::default()) {
            Ok(rows) => {
                for r in rows.iter().filter(|r| r.z_dim + r.springer_dim != total) {
                    dim_fail.push(format!("{}: stratum sum", r.param()));
                }
            }
            Err(e) => dim_fail.push(e.to_string()),
        }
    }
    let props = if prop_fail.is_empty() {
        Ok(format!(
            "{total_samples} samples (100/orbit n <= 2, 10/orbit n = 3), 0 failures of orthogonality, \
             y self-adjoint and nilpotent, commuting square, Q' membership, balance system"
        ))
    } else {
        Err(format!("{} failures, first {}", prop_fail.len(), prop_fail[0]))
    };
    let dims = if dim_fail.is_empty() {
        Ok(format!(
            "orbit + conormal = 2n^2+n for all orbits, {fibres} psi fibres of dim |nu|, Z formula, \
             stratum sums; n <= 3; exact"
        ))
    } else {
        Err(format!("{} failures: {}", dim_fail.len(), dim_fail.join(", ")))
    };
    (props, dims)
}

fn rep_identity() -> Verdict {
    timed(BOUND_REP, || {
        let mut checked = 0;
        for n in 1..=4 {
            for lambda in Partition::all(2 * n) {
                for j in 0..=n {
                    ensure(strip_bijection_holds(&lambda, j) == Ok(true), || {
                        format!("strip bijection fails at {lambda}, j = {j}")
                    })?;
                    checked += 1;
                }
            }
        }
        let mut totals = Vec::new();
        for (n, want) in [(2, 21), (3, 215)] {
            let r = dimension_identity(n);
            ensure(r.ok() && r.lhs == want, || format!("n = {n}: {r:?}"))?;
            totals.push(format!("{} = {}", r.lhs, r.rhs));
            ensure(count_t_prime(n).ok(), || format!("n = {n}: tagged pair count"))?;
        }
        Ok(format!(
            "{checked} (lambda, j) cases up to |lambda| = 8, totals {}; exact",
            totals.join(", ")
        ))
    })
}

fn closure_necessity() -> Verdict {
    let poset = table1_fixture();
    let edges = poset.edges();
    for (hi, lo) in &edges {
        ensure(closure_necessary_leq(lo, hi) == Ok(true), || {
            format!("edge {lo} < {hi} violates necessity")
        })?;
    }
    let top: OrbitParam = "[3412]".parse().map_err(|e: exotic_core::Error| e.to_string())?;
    let bottom: OrbitParam = "1234".parse().map_err(|e: exotic_core::Error| e.to_string())?;
    ensure(poset.maximal() == vec![top.clone()], || {
        format!("maximal {:?}", poset.maximal())
    })?;
    ensure(poset.minimal() == vec![bottom.clone()], || {
        format!("minimal {:?}", poset.minimal())
    })?;
    Ok(format!(
        "{} edges satisfy necessity; unique max {top}, unique min {bottom}; exact",
        edges.len()
    ))
}

fn determinism() -> Verdict {
    let mut commands = Vec::new();
    for n in 1..=2 {
        commands.push(format!("enumerate --n {n}"));
        commands.push(format!("enumerate --n {n} --format json"));
        commands.push(format!("enumerate --n {n} --format csv"));
        commands.push(format!("rsk --n {n}"));
        commands.push(format!("rsk --n {n} --format json --seed 7"));
        commands.push(format!("verify --n {n}"));
        commands.push(format!("verify --n {n} --format json"));
        commands.push(format!("hasse --n {n}"));
        commands.push(format!("hasse --n {n} --format json"));
    }
    commands.push("rsk --n 2 --param [21]4[3] --format json --prime 1000000007".into());
    commands.push("rsk --n 3 --format json".into());
    commands.push("enumerate --n 3".into());
    commands.push("hasse --n 3".into());
    let exec = |args: &str| run(std::iter::once("exotic-rsk").chain(args.split_whitespace()));
    for c in &commands {
        let (a, b) = (exec(c), exec(c));
        ensure(a == b, || format!("`{c}` differs between runs"))?;
        ensure(a.code == 0, || format!("`{c}` exited {}", a.code))?;
    }
    // and across processes
    let bin = env!("CARGO_BIN_EXE_exotic-rsk");
    let spawn = || Command::new(bin).args(["rsk", "--n", "2", "--format", "json"]).output();
    let (a, b) = (spawn().map_err(|e| e.to_string())?, spawn().map_err(|e| e.to_string())?);
    ensure(a.stdout == b.stdout && a.stderr == b.stderr, || {
        "binary output differs between runs".into()
    })?;
    let csv = exec("rsk --n 2").stdout;
    ensure(csv == TABLE2_CSV, || {
        "default rsk output differs from the bundled table".into()
    })?;
    Ok(format!(
        "{} commands run twice in process plus 2 binary runs, byte-identical",
        commands.len()
    ))
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let mut results: Vec<(u8, &str, Verdict)> = Vec::new();
    results.push((1, "orbit counts", timed(BOUND_COUNTS, counts)));
    results.push((2, "golden table reproduction", timed(BOUND_TABLE2, table2)));
    results.push((3, "global bijectivity", global_bijectivity()));
    let (props, dims) = properties_and_dimensions();
    results.push((4, "property suite", props));
    results.push((5, "dimension identities", dims));
    results.push((6, "rep identity", rep_identity()));
    results.push((7, "closure-order necessity", closure_necessity()));
    results.push((8, "determinism", determinism()));

    let mut failed = 0;
    for (k, name, v) in &results {
        match v {
            Ok(detail) => println!("criterion {k} ({name}): PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} ({name}): FAIL - {detail}");
            }
        }
    }
    println!("acceptance: {}/{} passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
