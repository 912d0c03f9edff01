//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails. All comparisons are exact (tolerance 0).

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use equitri::ehrhart::{c1_general, c1_minimal_halved_variant};
use equitri::{
    aeqb_generate, build_frame, check_frame_vectors, count, count_with, enumerate_triples, table1,
    verify_campaign, CampaignConfig, CountOptions, EhrhartPoly, RoleMap, TriangleFamily, Triple,
    Vec3,
};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};

/// Exact match required everywhere.
const TOLERANCE: u64 = 0;

const CAMPAIGN_D_MAX: u64 = 33;
const CAMPAIGN_SHAPES: [(i64, i64); 4] = [(1, 0), (1, 1), (2, 1), (3, 2)];
const CAMPAIGN_T_MAX: u64 = 3;
const PROPERTY_D_MAX: u64 = 41;
const SHIFTS: [i64; 5] = [-2, -1, 1, 2, 3];
const INFLATE_PAD: u64 = 2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("table1 reproduction", table1_reproduction),
        ("oracle vs formula campaign", campaign),
        ("worked examples", worked_examples),
        ("d = 15 frame", frame_d15),
        ("equal-pair planes", equal_pair_planes),
        ("property suites", property_suites),
        ("variant adjudication", variant_adjudication),
    ];
    println!("acceptance (tolerance {TOLERANCE}, exact integer comparison)");
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown".into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn triple(a: i64, b: i64, c: i64) -> Triple {
    Triple::new(a, b, c).unwrap()
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

// ---------------------------------------------------------------- 1

struct GoldenRow {
    triples: BTreeMap<[i64; 3], usize>,
    e_size: usize,
    c1: BTreeSet<i64>,
}

fn parse_golden() -> BTreeMap<u64, GoldenRow> {
    let text = include_str!("data/table1.txt");
    let mut rows = BTreeMap::new();
    for line in text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        assert_eq!(cols.len(), 4, "bad golden line {line}");
        let mut triples = BTreeMap::new();
        for chunk in cols[1].split(']').filter(|c| c.contains('[')) {
            let nums: Vec<i64> = chunk
                .trim_start_matches([',', ' ', '['])
                .split(',')
                .map(|x| x.trim().parse().unwrap())
                .collect();
            let mut key = [nums[0], nums[1], nums[2]];
            key.sort();
            *triples.entry(key).or_insert(0) += 1;
        }
        let c1 = cols[3]
            .trim_matches(['{', '}'])
            .split(',')
            .map(|x| x.trim().parse().unwrap())
            .collect();
        rows.insert(
            cols[0].parse().unwrap(),
            GoldenRow {
                triples,
                e_size: cols[2].parse().unwrap(),
                c1,
            },
        );
    }
    rows
}

fn table1_reproduction() -> Outcome {
    let golden = parse_golden();
    let rows = table1(41).map_err(|e| e.to_string())?;
    ensure(golden.len() == 21, || {
        format!("golden file has {} rows", golden.len())
    })?;
    ensure(rows.len() == golden.len(), || {
        format!("{} computed rows", rows.len())
    })?;
    for row in &rows {
        let g = golden
            .get(&row.d)
            .ok_or(format!("d = {} missing from golden file", row.d))?;
        let mut computed = BTreeMap::new();
        for t in &row.triples {
            let key = t.coords().map(|x| i64::try_from(x).unwrap());
            *computed.entry(key).or_insert(0) += 1;
        }
        ensure(computed == g.triples, || {
            format!("d = {}: triples differ", row.d)
        })?;
        ensure(row.e_size == g.e_size, || {
            format!("d = {}: |E| {} vs {}", row.d, row.e_size, g.e_size)
        })?;
        let c1: BTreeSet<i64> = row
            .c1_set
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        ensure(c1 == g.c1, || {
            format!("d = {}: c1 {c1:?} vs {:?}", row.d, g.c1)
        })?;
    }
    Ok(format!("{} rows, odd d = 1..41, exact", rows.len()))
}

// ---------------------------------------------------------------- 2

fn run_campaign() -> Result<equitri::Campaign, String> {
    verify_campaign(&CampaignConfig {
        d_max: CAMPAIGN_D_MAX,
        mn_list: CAMPAIGN_SHAPES.to_vec(),
        t_max: CAMPAIGN_T_MAX,
        threads: None,
        count: CountOptions::default(),
    })
    .map_err(|e| e.to_string())
}

fn campaign() -> Outcome {
    let c = run_campaign()?;
    let triples: usize = (1..=CAMPAIGN_D_MAX)
        .map(|d| enumerate_triples(d).len())
        .sum();
    let expected = triples * CAMPAIGN_SHAPES.len() * CAMPAIGN_T_MAX as usize;
    ensure(c.records.len() == expected, || {
        format!("{} records, expected {expected}", c.records.len())
    })?;
    let failures: Vec<String> = c
        .failures()
        .map(|r| format!("{} ({},{}) t={}: {:?}", r.triple, r.m, r.n, r.t, r.error))
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} failures, first {}", failures.len(), failures[0])
    })?;
    Ok(format!(
        "{expected} checks over {triples} triples: total, boundary, per-side and Pick all exact"
    ))
}

// ---------------------------------------------------------------- 3

fn oracle_matches(
    p: Vec3,
    q: Vec3,
    t: &Triple,
    poly: &EhrhartPoly,
    dilations: &[u64],
) -> Result<(), String> {
    for &k in dilations {
        let got = count(&p, &q, t, k).map_err(|e| e.to_string())?.total;
        let want = poly.evaluate(&BigInt::from(k)).map_err(|e| e.to_string())?;
        ensure(want == BigInt::from(got), || {
            format!("{t}, t = {k}: oracle {got} vs formula {want}")
        })?;
    }
    Ok(())
}

fn worked_examples() -> Outcome {
    let target = EhrhartPoly::new(11, 13);

    let t1 = triple(5, 13, 13);
    let p1 = ehrhart_of(&t1)?;
    ensure(p1 == target, || format!("Δ₁ plane gives {p1}"))?;
    oracle_matches(
        Vec3::new(13, -8, 3),
        Vec3::new(0, -11, 11),
        &t1,
        &target,
        &[1, 2],
    )?;

    let t2 = triple(1, 1, 19);
    let p2 = ehrhart_of(&t2)?;
    ensure(p2 == target, || format!("Δ₂ plane gives {p2}"))?;
    oracle_matches(
        Vec3::new(4, 15, -1),
        Vec3::new(15, 4, -1),
        &t2,
        &target,
        &[1, 2],
    )?;

    let t3 = triple(245, 613, 713);
    let p3 = ehrhart_of(&t3)?;
    ensure(p3 == EhrhartPoly::new(561, 31), || {
        format!("Δ₃ plane gives {p3}")
    })?;
    let report = count(
        &Vec3::new(220, 539, -539),
        &Vec3::new(747, 12, -267),
        &t3,
        1,
    )
    .map_err(|e| e.to_string())?;
    let mut sides = [report.per_side.op, report.per_side.oq, report.per_side.pq];
    sides.sort();
    ensure(sides == [2, 10, 16], || {
        format!("Δ₃ side interiors {sides:?}")
    })?;
    ensure(report.total == 297, || format!("Δ₃ total {}", report.total))?;
    Ok("Δ₁, Δ₂ → (11, 13) with oracle at t = 1, 2; Δ₃ → (561, 31), sides {2, 10, 16}".into())
}

fn ehrhart_of(t: &Triple) -> Result<EhrhartPoly, String> {
    TriangleFamily::new(t)
        .and_then(|f| f.ehrhart(1, 0))
        .map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- 4

/// Frame checks in plain `i64`, independent of the library's checker.
fn frame_checks_i64(n: [i64; 3], d: i64, zeta: [i64; 3], eta: [i64; 3]) -> bool {
    let dot = |x: [i64; 3], y: [i64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let sigma = [0, 1, 2].map(|i| 2 * eta[i] - zeta[i]);
    dot(n, zeta) == 0
        && dot(n, eta) == 0
        && dot(zeta, zeta) == 2 * d * d
        && dot(sigma, sigma) == 6 * d * d
        && dot(zeta, sigma) == 0
}

fn frame_d15() -> Outcome {
    let t = triple(1, 7, 25);
    let f = build_frame(&t).map_err(|e| e.to_string())?;
    f.check().map_err(|e| e.to_string())?;
    let lib = check_frame_vectors(&t, &f.zeta, &f.eta);
    ensure(lib.passed(), || format!("constructed frame: {lib:?}"))?;
    let as_i64 = |v: &Vec3| v.components().map(|x| i64::try_from(x).unwrap());
    ensure(
        frame_checks_i64([1, 7, 25], 15, as_i64(&f.zeta), as_i64(&f.eta)),
        || "constructed frame fails the independent check".into(),
    )?;

    let (zeta, eta) = ([13, 16, -5], [21, -3, 0]);
    let lib = check_frame_vectors(&t, &Vec3::new(13, 16, -5), &Vec3::new(21, -3, 0));
    ensure(lib.passed(), || format!("printed vectors: {lib:?}"))?;
    ensure(frame_checks_i64([1, 7, 25], 15, zeta, eta), || {
        "printed vectors fail the independent check".into()
    })?;
    Ok(format!(
        "constructed ζ = {}, η = {}; printed ζ = (13, 16, -5), η = (21, -3, 0) valid",
        f.zeta, f.eta
    ))
}

// ---------------------------------------------------------------- 5

fn equal_pair_planes() -> Outcome {
    let mut generated = 0;
    for k in 1..=9i64 {
        for l in 1..=9i64 {
            let valid_pair = k % 2 == 1 && k.gcd(&l) == 1;
            let out = aeqb_generate(k, l);
            if !valid_pair {
                ensure(out.is_err(), || format!("({k}, {l}) accepted"))?;
                continue;
            }
            let out = out.map_err(|e| format!("({k}, {l}): {e}"))?;
            let d = 2 * l * l + k * k;
            let known = enumerate_triples(d as u64);
            for t in &out {
                let [a, b, c] = t.coords().map(|x| i64::try_from(x).unwrap());
                let equal = if a == b {
                    Some((a, c))
                } else if b == c {
                    Some((b, a))
                } else {
                    None
                };
                let (x, z) = equal.ok_or(format!("{t} has no equal pair"))?;
                ensure(2 * x * x + z * z == 3 * d * d, || {
                    format!("{t}: 2a² + c² ≠ 3d², d = {d}")
                })?;
                ensure(x.gcd(&z) == 1, || format!("{t} not primitive"))?;
                ensure(known.contains(t), || {
                    format!("{t} missing from enumeration of d = {d}")
                })?;
                generated += 1;
            }
        }
    }

    let mut pairs = BTreeSet::new();
    for l in 1..=32i64 {
        let k2 = 2011 - 2 * l * l;
        if k2 <= 0 {
            break;
        }
        let k = k2.sqrt();
        if k * k == k2 && k % 2 == 1 && k.gcd(&l) == 1 {
            for t in aeqb_generate(k, l).map_err(|e| e.to_string())? {
                pairs.insert(t);
            }
        }
    }
    let want = [triple(913, 913, 3235), triple(139, 2461, 2461)];
    for t in &want {
        ensure(pairs.contains(t), || {
            format!("{t} not generated for d = 2011")
        })?;
        let fam = TriangleFamily::new(t).map_err(|e| e.to_string())?;
        let poly = fam.ehrhart(1, 0).map_err(|e| e.to_string())?;
        ensure(poly == EhrhartPoly::new(2011, 2013), || {
            format!("{t}: {poly}")
        })?;
        let (p, q) = fam.vertices(1, 0).map_err(|e| e.to_string())?;
        let total = count(&p, &q, t, 1).map_err(|e| e.to_string())?.total;
        ensure(total == 2013, || format!("{t}: oracle L(1) = {total}"))?;
    }
    Ok(format!(
        "{generated} triples from k, l ≤ 9 valid; d = 2011 pairs → (2011, 2013), oracle L(1) = 2013"
    ))
}

// ---------------------------------------------------------------- 6

fn property_suites() -> Outcome {
    let shapes = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 2), (3, -1), (4, 1)];
    let mut n_triples = 0;
    for d in 1..=PROPERTY_D_MAX {
        for t in enumerate_triples(d) {
            n_triples += 1;
            let fam = TriangleFamily::new(&t).map_err(|e| e.to_string())?;
            let ab = fam.basis.alpha_beta();
            let dd = t.d();

            for &(m, n) in &shapes {
                let base = c1_general(&fam.frame, &ab, m, n).map_err(|e| e.to_string())?;
                for h in SHIFTS {
                    let shifted = ab.shifted(&fam.frame, &int(h));
                    ensure(&shifted.diophantine_value(&fam.frame) == dd, || {
                        format!("{t}: shift {h} off the line")
                    })?;
                    let c1 = c1_general(&fam.frame, &shifted, m, n).map_err(|e| e.to_string())?;
                    ensure(c1 == base, || {
                        format!("{t} ({m},{n}) shift {h}: {c1} vs {base}")
                    })?;
                }

                let poly = fam.ehrhart(m, n).map_err(|e| e.to_string())?;
                ensure((&poly.quad_num + &poly.lin_num).is_even(), || {
                    format!("{t} ({m},{n}): A + B odd")
                })?;
                for rm in RoleMap::all() {
                    let other = TriangleFamily::with_roles(&t, rm)
                        .and_then(|f| f.ehrhart(m, n))
                        .map_err(|e| e.to_string())?;
                    ensure(other == poly, || {
                        format!("{t} ({m},{n}) roles {rm}: {other} vs {poly}")
                    })?;
                }
            }

            let nu = fam.side_divisors(1, 0).map_err(|e| e.to_string())?;
            let nu = nu.as_array();
            for (i, x) in nu.iter().enumerate() {
                ensure(dd.is_multiple_of(x), || {
                    format!("{t}: ν = {x} does not divide d")
                })?;
                for y in &nu[i + 1..] {
                    ensure(x.gcd(y) == int(1), || {
                        format!("{t}: ν pair ({x}, {y}) not coprime")
                    })?;
                }
            }
        }
    }

    let mut inflated = 0;
    for d in 1..=15 {
        for t in enumerate_triples(d) {
            let fam = TriangleFamily::new(&t).map_err(|e| e.to_string())?;
            for &(m, n) in &[(1, 0), (2, 1), (3, 2)] {
                let (p, q) = fam.vertices(m, n).map_err(|e| e.to_string())?;
                for k in 1..=2 {
                    let plain = count(&p, &q, &t, k).map_err(|e| e.to_string())?;
                    let padded = CountOptions {
                        pad: INFLATE_PAD,
                        ..CountOptions::default()
                    };
                    let wide = count_with(&p, &q, &t, k, &padded).map_err(|e| e.to_string())?;
                    let full = CountOptions {
                        pad: INFLATE_PAD,
                        clip_rows: false,
                        parallel: false,
                    };
                    let full = count_with(&p, &q, &t, k, &full).map_err(|e| e.to_string())?;
                    let same = |r: &equitri::CountReport| {
                        (r.total, r.boundary, r.interior, r.per_side)
                            == (plain.total, plain.boundary, plain.interior, plain.per_side)
                    };
                    ensure(same(&wide) && same(&full), || {
                        format!("{t} ({m},{n}) t={k}: inflation changed counts")
                    })?;
                    inflated += 1;
                }
            }
        }
    }
    Ok(format!(
        "{n_triples} triples d ≤ {PROPERTY_D_MAX}: {} shifts, coprime ν | d, role invariance, parity; {inflated} inflated recounts",
        SHIFTS.len()
    ))
}

// ---------------------------------------------------------------- 7

fn variant_adjudication() -> Outcome {
    let c = run_campaign()?;
    let failures = c.failures().count();
    ensure(failures == 0, || {
        format!("unhalved α+β form: {failures} campaign failures")
    })?;

    // Informational only: how often the halved (α+β)/2 term would disagree
    // with direct boundary counts of minimal triangles.
    let (mut total, mut defined, mut disagree) = (0, 0, 0);
    for d in 1..=PROPERTY_D_MAX {
        for t in enumerate_triples(d) {
            let fam = TriangleFamily::new(&t).map_err(|e| e.to_string())?;
            total += 1;
            let Some(halved) = c1_minimal_halved_variant(&fam.frame, &fam.basis.alpha_beta())
            else {
                continue;
            };
            defined += 1;
            let (p, q) = fam.vertices(1, 0).map_err(|e| e.to_string())?;
            let boundary = count(&p, &q, &t, 1).map_err(|e| e.to_string())?.boundary;
            if halved != BigInt::from(boundary) {
                disagree += 1;
            }
        }
    }
    Ok(format!(
        "form used: third term gcd((r̃−s̃)/2, α+β), 0 failures in {} campaign checks; \
         halved (α+β)/2 variant undefined (α+β odd) for {} of {total} minimal triangles, \
         disagrees with the oracle in {disagree} of the {defined} where defined",
        c.records.len(),
        total - defined,
    ))
}
