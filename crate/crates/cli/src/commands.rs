use std::fmt::Write as _;

use equitri::catalog::{render_table, table1, verify_campaign, CampaignConfig};
use equitri::ehrhart::{c0_doubled, reduce_dilation};
use equitri::{
    aeqb_generate, check_frame_vectors, count_with, e_of_d, enumerate_triples, pick_check,
    CountOptions, EhrhartPoly, Result, TriangleFamily, Triple, Vec3, VerificationRecord,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::Command;

/// What a command produced: a machine payload plus its human rendering.
pub struct Outcome {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    /// Non-empty means exit code 1.
    pub failures: Vec<Value>,
    pub human: String,
}

impl Outcome {
    pub fn document(&self) -> Value {
        json!({
            "schema_version": "1",
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "failures": self.failures,
        })
    }
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Triples { .. } => "triples",
        Command::Frame { .. } => "frame",
        Command::Ehrhart { .. } => "ehrhart",
        Command::Count { .. } => "count",
        Command::Table1 { .. } => "table1",
        Command::Ed { .. } => "ed",
        Command::Verify { .. } => "verify",
        Command::Aeqb { .. } => "aeqb",
    }
}

pub fn inputs_of(cmd: &Command) -> Value {
    match cmd {
        Command::Triples { d } | Command::Ed { d } => json!({ "d": d.to_string() }),
        Command::Frame { a, b, c } => {
            json!({ "a": a.to_string(), "b": b.to_string(), "c": c.to_string() })
        }
        Command::Ehrhart { a, b, c, m, n, t } => json!({
            "a": a.to_string(), "b": b.to_string(), "c": c.to_string(),
            "m": m.to_string(), "n": n.to_string(), "t": t.map(|t| t.to_string()),
        }),
        Command::Count {
            a,
            b,
            c,
            m,
            n,
            t,
            inflate_check,
        } => json!({
            "a": a.to_string(), "b": b.to_string(), "c": c.to_string(),
            "m": m.to_string(), "n": n.to_string(), "t": t.to_string(),
            "inflate_check": inflate_check,
        }),
        Command::Table1 { d_max } => json!({ "d_max": d_max.to_string() }),
        Command::Verify {
            d_max,
            mn_list,
            t_max,
            parallel,
        } => json!({
            "d_max": d_max.to_string(),
            "mn_list": mn_list.0.iter().map(|&(m, n)| mn_json(m, n)).collect::<Vec<_>>(),
            "t_max": t_max.to_string(),
            "parallel": parallel.map(|p| p.to_string()),
        }),
        Command::Aeqb { k, l } => json!({ "k": k.to_string(), "l": l.to_string() }),
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    let (results, failures, human) = match cmd {
        Command::Triples { d } => triples(*d),
        Command::Frame { a, b, c } => frame(&Triple::new(a.clone(), b.clone(), c.clone())?)?,
        Command::Ehrhart { a, b, c, m, n, t } => {
            ehrhart(&Triple::new(a.clone(), b.clone(), c.clone())?, *m, *n, *t)?
        }
        Command::Count {
            a,
            b,
            c,
            m,
            n,
            t,
            inflate_check,
        } => count(
            &Triple::new(a.clone(), b.clone(), c.clone())?,
            *m,
            *n,
            *t,
            *inflate_check,
        )?,
        Command::Table1 { d_max } => table(*d_max)?,
        Command::Ed { d } => ed(*d)?,
        Command::Verify {
            d_max,
            mn_list,
            t_max,
            parallel,
        } => verify(*d_max, &mn_list.0, *t_max, *parallel)?,
        Command::Aeqb { k, l } => aeqb(k, l)?,
    };
    Ok(Outcome {
        command: command_name(cmd),
        inputs: inputs_of(cmd),
        results,
        failures,
        human,
    })
}

type Parts = (Value, Vec<Value>, String);

fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn vec_json(v: &Vec3) -> Value {
    json!(v.components().map(|x| x.to_string()))
}

fn triple_json(t: &Triple) -> Value {
    json!([t.a().to_string(), t.b().to_string(), t.c().to_string()])
}

fn mn_json(m: i64, n: i64) -> Value {
    json!([m.to_string(), n.to_string()])
}

fn poly_json(p: &EhrhartPoly) -> Value {
    json!({ "A": int(&p.quad_num), "B": int(&p.lin_num), "rendered": p.to_string() })
}

fn triples(d: u64) -> Parts {
    let list = enumerate_triples(d);
    let mut human = String::new();
    if list.is_empty() {
        let _ = writeln!(human, "no primitive triples for d = {d}");
    }
    for t in &list {
        let _ = writeln!(human, "{t}");
    }
    let results =
        json!({ "d": d.to_string(), "triples": list.iter().map(triple_json).collect::<Vec<_>>() });
    (results, Vec::new(), human)
}

fn frame(triple: &Triple) -> Result<Parts> {
    let fam = TriangleFamily::new(triple)?;
    let f = &fam.frame;
    let ab = fam.basis.alpha_beta();
    let check = check_frame_vectors(triple, &f.zeta, &f.eta);
    let orientation = f.orientation();
    let positive = orientation > BigInt::from(0);
    let eq8 = ab.diophantine_value(f);
    let eq8_ok = &eq8 == triple.d();

    let mut failures = Vec::new();
    if !check.passed() || !positive || !eq8_ok {
        failures.push(json!("frame invariant check failed"));
    }

    let g = &fam.generators;
    let results = json!({
        "triple": triple_json(triple),
        "d": int(triple.d()),
        "role_map": f.role_map.roles().map(|i| i.to_string()),
        "r": int(&f.r), "s": int(&f.s),
        "r_tilde": int(&f.r_t), "s_tilde": int(&f.s_t),
        "omega": int(&f.omega),
        "zeta": vec_json(&f.zeta), "sigma": vec_json(&f.sigma), "eta": vec_json(&f.eta),
        "generators": {
            "u": vec_json(&g.u), "v": vec_json(&g.v), "w": vec_json(&g.w),
            "bezout_k": int(&g.bezout_k), "bezout_l": int(&g.bezout_l),
        },
        "u": vec_json(&fam.basis.u), "tau": vec_json(&fam.basis.tau),
        "alpha": int(&ab.alpha), "beta": int(&ab.beta),
        "diophantine_value": int(&eq8),
        "checks": {
            "zeta_in_lattice": check.zeta_in_lattice,
            "eta_in_lattice": check.eta_in_lattice,
            "zeta_norm": check.zeta_norm,
            "sigma_norm": check.sigma_norm,
            "orthogonal": check.orthogonal,
            "positive_orientation": positive,
            "diophantine": eq8_ok,
        },
    });

    let mut h = String::new();
    let _ = writeln!(h, "triple {triple}, d = {}", triple.d());
    let _ = writeln!(
        h,
        "r = {}, s = {}, ω = {}, r̃ = {}, s̃ = {}",
        f.r, f.s, f.omega, f.r_t, f.s_t
    );
    let _ = writeln!(h, "ζ = {}", f.zeta);
    let _ = writeln!(h, "ς = {}", f.sigma);
    let _ = writeln!(h, "η = {}", f.eta);
    let _ = writeln!(h, "u = {}", fam.basis.u);
    let _ = writeln!(h, "τ = {}", fam.basis.tau);
    let _ = writeln!(h, "α = {}, β = {}", ab.alpha, ab.beta);
    let _ = writeln!(h, "α·r̃ + β·(r̃+s̃)/2 = {eq8}");
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let _ = writeln!(
        h,
        "ζ, η in lattice: {}",
        mark(check.zeta_in_lattice && check.eta_in_lattice)
    );
    let _ = writeln!(h, "|ζ|² = 2d²: {}", mark(check.zeta_norm));
    let _ = writeln!(h, "|ς|² = 6d²: {}", mark(check.sigma_norm));
    let _ = writeln!(h, "ζ ⟂ ς: {}", mark(check.orthogonal));
    let _ = writeln!(h, "orientation: {}", mark(positive));
    Ok((results, failures, h))
}

fn ehrhart(triple: &Triple, m: i64, n: i64, t: Option<u64>) -> Result<Parts> {
    let fam = TriangleFamily::new(triple)?;
    let poly = fam.ehrhart(m, n)?;
    let (m0, n0, g) = reduce_dilation(m, n)?;
    let sides = fam.side_divisors(m0, n0)?;
    let value = t.map(|t| poly.evaluate(&BigInt::from(t))).transpose()?;

    let results = json!({
        "triple": triple_json(triple),
        "d": int(triple.d()),
        "polynomial": poly_json(&poly),
        "reduced": { "m": m0.to_string(), "n": n0.to_string(), "g": g.to_string() },
        "side_divisors": {
            "OP": int(&sides.nu_op), "OQ": int(&sides.nu_oq), "PQ": int(&sides.nu_pq),
        },
        "value": value.as_ref().map(int),
    });
    let mut h = String::new();
    let _ = writeln!(h, "T({m}, {n}) in {triple}, d = {}", triple.d());
    let _ = writeln!(h, "A = {}, B = {}", poly.quad_num, poly.lin_num);
    let _ = writeln!(h, "L(t) = {poly}");
    let _ = writeln!(
        h,
        "side divisors OP/OQ/PQ = {}/{}/{} (×{g})",
        sides.nu_op, sides.nu_oq, sides.nu_pq
    );
    if let (Some(t), Some(v)) = (t, &value) {
        let _ = writeln!(h, "L({t}) = {v}");
    }
    Ok((results, Vec::new(), h))
}

fn count(triple: &Triple, m: i64, n: i64, t: u64, inflate_check: bool) -> Result<Parts> {
    let fam = TriangleFamily::new(triple)?;
    let (p, q) = fam.vertices(m, n)?;
    let report = count_with(&p, &q, triple, t, &CountOptions::default())?;
    let poly = fam.ehrhart(m, n)?;
    let t_big = BigInt::from(t);
    let formula = poly.evaluate(&t_big)?;
    let (m0, n0, g) = reduce_dilation(m, n)?;
    let sides = fam.side_divisors(m0, n0)?;
    let scale = BigInt::from(g) * &t_big;
    let expected = sides.as_array().map(|nu| nu * &scale - 1);
    let got = [report.per_side.op, report.per_side.oq, report.per_side.pq];

    let total_ok = formula == BigInt::from(report.total);
    let sides_ok = expected.iter().zip(got).all(|(e, o)| *e == BigInt::from(o));
    let pick_ok = pick_check(&report, &c0_doubled(triple.d(), m, n), t);
    let inflated = if inflate_check {
        let opts = CountOptions {
            pad: 2,
            ..CountOptions::default()
        };
        Some(count_with(&p, &q, triple, t, &opts)? == report)
    } else {
        None
    };

    let mut failures = Vec::new();
    if !total_ok {
        failures.push(json!(format!(
            "oracle total {} ≠ formula {formula}",
            report.total
        )));
    }
    if !sides_ok {
        failures.push(json!("per-side counts differ from ν·t − 1"));
    }
    if !pick_ok {
        failures.push(json!("pick check failed"));
    }
    if inflated == Some(false) {
        failures.push(json!("inflated bounding box changed the count"));
    }

    let results = json!({
        "triple": triple_json(triple),
        "d": int(triple.d()),
        "P": vec_json(&p), "Q": vec_json(&q),
        "t": t.to_string(),
        "report": {
            "total": report.total.to_string(),
            "boundary": report.boundary.to_string(),
            "interior": report.interior.to_string(),
            "vertices": report.vertices.to_string(),
            "candidates": report.candidates.to_string(),
            "per_side": {
                "OP": report.per_side.op.to_string(),
                "OQ": report.per_side.oq.to_string(),
                "PQ": report.per_side.pq.to_string(),
            },
        },
        "polynomial": poly_json(&poly),
        "formula": int(&formula),
        "expected_per_side": { "OP": int(&expected[0]), "OQ": int(&expected[1]), "PQ": int(&expected[2]) },
        "match": total_ok && sides_ok,
        "pick_ok": pick_ok,
        "inflate_ok": inflated,
    });

    let mut h = String::new();
    let _ = writeln!(h, "O, P = {p}, Q = {q} in {triple}, t = {t}");
    let _ = writeln!(
        h,
        "total {}, boundary {}, interior {}",
        report.total, report.boundary, report.interior
    );
    let _ = writeln!(
        h,
        "side interiors OP/OQ/PQ = {}/{}/{} (expected {}/{}/{})",
        got[0], got[1], got[2], expected[0], expected[1], expected[2]
    );
    let _ = writeln!(h, "formula {poly} at t = {t}: {formula}");
    let _ = writeln!(
        h,
        "{}",
        if total_ok && sides_ok {
            "MATCH"
        } else {
            "MISMATCH"
        }
    );
    let _ = writeln!(h, "pick: {}", if pick_ok { "ok" } else { "FAIL" });
    if let Some(ok) = inflated {
        let _ = writeln!(h, "inflated box: {}", if ok { "ok" } else { "FAIL" });
    }
    Ok((results, failures, h))
}

fn table(d_max: u64) -> Result<Parts> {
    let rows = table1(d_max)?;
    let text = render_table(&rows);
    let results = json!({
        "rows": rows.iter().map(|r| json!({
            "d": r.d.to_string(),
            "triples": r.triples.iter().map(triple_json).collect::<Vec<_>>(),
            "e_size": r.e_size.to_string(),
            "c1": r.c1_set.iter().map(int).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "table": text,
    });
    Ok((results, Vec::new(), text))
}

fn ed(d: u64) -> Result<Parts> {
    let polys = e_of_d(d)?;
    let mut h = String::new();
    let _ = writeln!(h, "|E({d})| = {}", polys.len());
    for p in &polys {
        let _ = writeln!(h, "{p}");
    }
    let results = json!({
        "d": d.to_string(),
        "size": polys.len().to_string(),
        "polynomials": polys.iter().map(poly_json).collect::<Vec<_>>(),
    });
    Ok((results, Vec::new(), h))
}

fn record_json(r: &VerificationRecord) -> Value {
    json!({
        "triple": triple_json(&r.triple),
        "mn": mn_json(r.m, r.n),
        "t": r.t.to_string(),
        "polynomial": r.polynomial.as_ref().map(poly_json),
        "formula": r.formula_count.as_ref().map(int),
        "oracle": r.oracle_count.map(|c| c.to_string()),
        "boundary_match": r.boundary_match,
        "sides_match": r.sides_match,
        "expected_sides": r.expected_sides.as_ref().map(|s| s.iter().map(int).collect::<Vec<_>>()),
        "oracle_sides": r.oracle_sides.map(|s| s.map(|x| x.to_string())),
        "pick_ok": r.pick_ok,
        "error": r.error,
        "passed": r.passed(),
    })
}

fn verify(d_max: u64, mn_list: &[(i64, i64)], t_max: u64, parallel: Option<u64>) -> Result<Parts> {
    let cfg = CampaignConfig {
        d_max,
        mn_list: mn_list.to_vec(),
        t_max,
        threads: parallel.map(|p| p as usize),
        count: CountOptions::default(),
    };
    let campaign = verify_campaign(&cfg)?;
    let failures: Vec<Value> = campaign.failures().map(record_json).collect();

    let mut h = String::new();
    for r in &campaign.records {
        let _ = writeln!(
            h,
            "{} {} ({},{}) t={} formula={} oracle={}{}",
            if r.passed() { "PASS" } else { "FAIL" },
            r.triple,
            r.m,
            r.n,
            r.t,
            r.formula_count
                .as_ref()
                .map_or("-".into(), ToString::to_string),
            r.oracle_count.map_or("-".into(), |c| c.to_string()),
            r.error
                .as_ref()
                .map_or(String::new(), |e| format!(" error: {e}")),
        );
    }
    let _ = writeln!(
        h,
        "{} checks, {} failures",
        campaign.records.len(),
        failures.len()
    );

    let results = json!({
        "checks": campaign.records.len().to_string(),
        "records": campaign.records.iter().map(record_json).collect::<Vec<_>>(),
    });
    Ok((results, failures, h))
}

fn aeqb(k: &BigInt, l: &BigInt) -> Result<Parts> {
    let triples = aeqb_generate(k.clone(), l.clone())?;
    let mut h = String::new();
    let mut rows = Vec::new();
    for t in &triples {
        let poly = TriangleFamily::new(t)?.ehrhart(1, 0)?;
        let _ = writeln!(h, "{t}, d = {}: {poly}", t.d());
        rows.push(
            json!({ "triple": triple_json(t), "d": int(t.d()), "polynomial": poly_json(&poly) }),
        );
    }
    Ok((json!({ "triples": rows }), Vec::new(), h))
}
