//! Batch layer: per-`d` catalog rows, the set `E(d)` of minimal-triangle
//! polynomials, and formula-versus-oracle verification campaigns.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ehrhart::{c0_doubled, reduce_dilation, EhrhartPoly};
use crate::error::Result;
use crate::family::TriangleFamily;
use crate::frame::enumerate_triples;
use crate::lattice::Triple;
use crate::oracle::{count_with, pick_check, CountOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub d: u64,
    pub triples: Vec<Triple>,
    pub e_size: usize,
    pub c1_set: BTreeSet<BigInt>,
}

impl CatalogRow {
    /// `d | [a, b, c], ... | |E(d)| | {c1, ...}`
    pub fn render(&self) -> String {
        let triples = self
            .triples
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let c1 = self
            .c1_set
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        format!("{} | {} | {} | {{{}}}", self.d, triples, self.e_size, c1)
    }
}

pub fn table1_row(d: u64) -> Result<CatalogRow> {
    let triples = enumerate_triples(d);
    let c1_set = triples
        .iter()
        .map(|t| Ok(TriangleFamily::new(t)?.ehrhart(1, 0)?.lin_num))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(CatalogRow {
        d,
        e_size: c1_set.len(),
        triples,
        c1_set,
    })
}

/// Rows for every odd `d ≤ d_max`.
pub fn table1(d_max: u64) -> Result<Vec<CatalogRow>> {
    (1..=d_max).step_by(2).map(table1_row).collect()
}

pub fn render_table(rows: &[CatalogRow]) -> String {
    let mut out = String::from("d | triples | |E(d)| | c1\n");
    for row in rows {
        let _ = writeln!(out, "{}", row.render());
    }
    out
}

/// Distinct minimal-triangle polynomials over all primitive triples of `d`.
pub fn e_of_d(d: u64) -> Result<BTreeSet<EhrhartPoly>> {
    enumerate_triples(d)
        .iter()
        .map(|t| TriangleFamily::new(t)?.ehrhart(1, 0))
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub triple: Triple,
    pub m: i64,
    pub n: i64,
    pub t: u64,
    pub polynomial: Option<EhrhartPoly>,
    pub formula_count: Option<BigInt>,
    pub oracle_count: Option<u64>,
    /// Oracle boundary equals `c₁·t`.
    pub boundary_match: bool,
    /// Oracle per-side counts equal `ν·t − 1`, ordered `(OP, OQ, PQ)`.
    pub sides_match: bool,
    pub expected_sides: Option<[BigInt; 3]>,
    pub oracle_sides: Option<[u64; 3]>,
    pub pick_ok: bool,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.formula_count.is_some()
            && self
                .formula_count
                .clone()
                .zip(self.oracle_count)
                .is_some_and(|(f, o)| f == BigInt::from(o))
            && self.boundary_match
            && self.sides_match
            && self.pick_ok
    }
}

/// Checks `T(m, n)` of `family` at dilation `t` against the oracle.
pub fn verify_one(
    family: &TriangleFamily,
    m: i64,
    n: i64,
    t: u64,
    opts: &CountOptions,
) -> VerificationRecord {
    let start = Instant::now();
    let mut record = VerificationRecord {
        triple: family.triple.clone(),
        m,
        n,
        t,
        polynomial: None,
        formula_count: None,
        oracle_count: None,
        boundary_match: false,
        sides_match: false,
        expected_sides: None,
        oracle_sides: None,
        pick_ok: false,
        error: None,
        elapsed: Duration::ZERO,
    };
    if let Err(e) = fill_record(&mut record, family, opts) {
        record.error = Some(e.to_string());
    }
    record.elapsed = start.elapsed();
    record
}

fn fill_record(
    record: &mut VerificationRecord,
    family: &TriangleFamily,
    opts: &CountOptions,
) -> Result<()> {
    let (m, n, t) = (record.m, record.n, record.t);
    let poly = family.ehrhart(m, n)?;
    let t_big = BigInt::from(t);
    record.formula_count = Some(poly.evaluate(&t_big)?);

    let (m0, n0, g) = reduce_dilation(m, n)?;
    let sides = family.side_divisors(m0, n0)?;
    let scale = BigInt::from(g) * &t_big;
    let expected = sides.as_array().map(|nu| nu * &scale - 1);

    let (p, q) = family.vertices(m, n)?;
    let report = count_with(&p, &q, &family.triple, t, opts)?;
    let oracle_sides = [report.per_side.op, report.per_side.oq, report.per_side.pq];

    record.oracle_count = Some(report.total);
    record.boundary_match = BigInt::from(report.boundary) == &poly.lin_num * &t_big;
    record.sides_match = expected
        .iter()
        .zip(oracle_sides)
        .all(|(e, o)| *e == BigInt::from(o));
    record.pick_ok = report.vertices == 3 && pick_check(&report, &c0_doubled(family.d(), m, n), t);
    record.expected_sides = Some(expected);
    record.oracle_sides = Some(oracle_sides);
    record.polynomial = Some(poly);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub d_max: u64,
    pub mn_list: Vec<(i64, i64)>,
    pub t_max: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub count: CountOptions,
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub records: Vec<VerificationRecord>,
}

impl Campaign {
    pub fn failures(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// One record per `(triple, (m, n), t)`, ordered by `d`, triple, position in
/// `mn_list`, then `t`.
pub fn verify_campaign(cfg: &CampaignConfig) -> Result<Campaign> {
    let triples: Vec<Triple> = (1..=cfg.d_max).flat_map(enumerate_triples).collect();
    let jobs: Vec<(usize, (i64, i64), u64)> = (0..triples.len())
        .flat_map(|ti| {
            cfg.mn_list
                .iter()
                .flat_map(move |&mn| (1..=cfg.t_max).map(move |t| (ti, mn, t)))
        })
        .collect();

    let run = || -> Vec<VerificationRecord> {
        let families: Vec<std::result::Result<TriangleFamily, String>> = triples
            .par_iter()
            .map(|t| TriangleFamily::new(t).map_err(|e| e.to_string()))
            .collect();
        jobs.par_iter()
            .map(|&(ti, (m, n), t)| match &families[ti] {
                Ok(fam) => verify_one(fam, m, n, t, &cfg.count),
                Err(e) => failed_record(&triples[ti], m, n, t, e.clone()),
            })
            .collect()
    };

    let records = match cfg.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    Ok(Campaign { records })
}

fn failed_record(triple: &Triple, m: i64, n: i64, t: u64, error: String) -> VerificationRecord {
    VerificationRecord {
        triple: triple.clone(),
        m,
        n,
        t,
        polynomial: None,
        formula_count: None,
        oracle_count: None,
        boundary_match: false,
        sides_match: false,
        expected_sides: None,
        oracle_sides: None,
        pick_ok: false,
        error: Some(error),
        elapsed: Duration::ZERO,
    }
}
