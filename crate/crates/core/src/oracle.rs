//! Direct lattice-point counting in a dilated triangle `t·(O, P, Q)`.
//!
//! The oracle shares nothing with the closed-form side except the lattice
//! basis `(u, τ)`. Containment of `X` is decided by the exact barycentric
//! numerators against the Gram determinant `D = |P|²|Q|² − (P·Q)²`:
//!
//! ```text
//! λ = (X·P)|Q|² − (X·Q)(P·Q) ≥ 0
//! μ = (X·Q)|P|² − (X·P)(P·Q) ≥ 0
//! λ + μ ≤ t·D
//! ```
//!
//! Candidates are `X = i·u + j·τ` over the `(i, j)` bounding box of the
//! dilated vertices. By default each row of the box is clipped to the exact
//! integer interval admitted by the three inequalities before its points are
//! tested, which keeps skewed bases (long `τ`) tractable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::Vec3;
use crate::error::{Error, Result};
use crate::lattice::{coordinates_in, generators, membership, tau_vector, Triple};

/// Boundary points strictly inside each side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SideCounts {
    pub op: u64,
    pub oq: u64,
    pub pq: u64,
}

impl SideCounts {
    pub fn sum(&self) -> u64 {
        self.op + self.oq + self.pq
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountReport {
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    pub per_side: SideCounts,
    pub vertices: u64,
    /// Points tested for containment.
    pub candidates: u64,
}

impl CountReport {
    fn merge(mut self, other: CountReport) -> CountReport {
        self.total += other.total;
        self.boundary += other.boundary;
        self.interior += other.interior;
        self.per_side.op += other.per_side.op;
        self.per_side.oq += other.per_side.oq;
        self.per_side.pq += other.per_side.pq;
        self.vertices += other.vertices;
        self.candidates += other.candidates;
        self
    }
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Extra rows and columns added on every side of the bounding box.
    pub pad: u64,
    /// Clip each row to the feasible interval before testing points.
    pub clip_rows: bool,
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            pad: 0,
            clip_rows: true,
            parallel: false,
        }
    }
}

pub fn count(p: &Vec3, q: &Vec3, triple: &Triple, t: u64) -> Result<CountReport> {
    count_with(p, q, triple, t, &CountOptions::default())
}

/// Linear form `i·ci + j·cj + k` on basis coordinates.
#[derive(Clone, Debug)]
struct Linear {
    ci: BigInt,
    cj: BigInt,
}

struct Setup {
    u: Vec3,
    tau: Vec3,
    p: Vec3,
    q: Vec3,
    g11: BigInt,
    g12: BigInt,
    g22: BigInt,
    limit: BigInt,
    lam: Linear,
    mu: Linear,
}

impl Setup {
    fn classify(&self, i: &BigInt, j: &BigInt) -> Option<Class> {
        let x = &self.u.scale(i) + &self.tau.scale(j);
        let xp = x.dot(&self.p);
        let xq = x.dot(&self.q);
        let lam = &xp * &self.g22 - &xq * &self.g12;
        let mu = &xq * &self.g11 - &xp * &self.g12;
        let sum = &lam + &mu;
        if lam.is_negative() || mu.is_negative() || sum > self.limit {
            return None;
        }
        let on_oq = lam.is_zero();
        let on_op = mu.is_zero();
        let on_pq = sum == self.limit;
        Some(match (on_op, on_oq, on_pq) {
            (false, false, false) => Class::Interior,
            (true, false, false) => Class::Op,
            (false, true, false) => Class::Oq,
            (false, false, true) => Class::Pq,
            _ => Class::Vertex,
        })
    }

    /// Feasible range of the free coordinate when the scanned one is fixed.
    /// `scan_is_i` selects which coordinate is fixed.
    fn row_interval(
        &self,
        fixed: &BigInt,
        scan_is_i: bool,
        lo: &BigInt,
        hi: &BigInt,
    ) -> Option<(BigInt, BigInt)> {
        let split = |f: &Linear| {
            if scan_is_i {
                (f.cj.clone(), &f.ci * fixed)
            } else {
                (f.ci.clone(), &f.cj * fixed)
            }
        };
        let (lam_c, lam_k) = split(&self.lam);
        let (mu_c, mu_k) = split(&self.mu);
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        // coef·x + k ≥ 0
        let mut at_least = |coef: BigInt, k: BigInt| -> bool {
            if coef.is_zero() {
                return !k.is_negative();
            }
            let bound = -k;
            if coef.is_positive() {
                lo = lo.clone().max(bound.div_ceil(&coef));
            } else {
                hi = hi.clone().min(bound.div_floor(&coef));
            }
            true
        };
        let feasible = at_least(lam_c.clone(), lam_k.clone())
            && at_least(mu_c.clone(), mu_k.clone())
            && at_least(-(lam_c + mu_c), &self.limit - (lam_k + mu_k));
        (feasible && lo <= hi).then_some((lo, hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Interior,
    Op,
    Oq,
    Pq,
    Vertex,
}

fn tally(report: &mut CountReport, class: Class) {
    report.total += 1;
    match class {
        Class::Interior => report.interior += 1,
        Class::Vertex => {
            report.vertices += 1;
            report.boundary += 1;
        }
        side => {
            report.boundary += 1;
            match side {
                Class::Op => report.per_side.op += 1,
                Class::Oq => report.per_side.oq += 1,
                _ => report.per_side.pq += 1,
            }
        }
    }
}

fn validate(p: &Vec3, q: &Vec3, triple: &Triple) -> Result<()> {
    let fail = |msg: String| Err(Error::NotEquilateral(msg));
    if p.is_zero() || q.is_zero() || p == q {
        return fail("vertices must be pairwise distinct".into());
    }
    if !membership(p, triple) || !membership(q, triple) {
        return fail(format!(
            "{p} or {q} is not in the plane lattice of {triple}"
        ));
    }
    let (pp, qq, pq) = (p.norm2(), q.norm2(), (p - q).norm2());
    if pp != qq || pp != pq {
        return fail(format!("squared sides {pp}, {qq}, {pq} differ"));
    }
    Ok(())
}

pub fn count_with(
    p: &Vec3,
    q: &Vec3,
    triple: &Triple,
    t: u64,
    opts: &CountOptions,
) -> Result<CountReport> {
    validate(p, q, triple)?;
    let gens = generators(triple);
    let u = gens.u.clone();
    let tau = tau_vector(&gens);
    let t_big = BigInt::from(t);

    let tp = p.scale(&t_big);
    let tq = q.scale(&t_big);
    let (Some(cp), Some(cq)) = (
        coordinates_in(&tp, &u, &tau, triple),
        coordinates_in(&tq, &u, &tau, triple),
    ) else {
        return Err(Error::NotEquilateral(
            "vertex has no basis coordinates".into(),
        ));
    };
    let zero = BigInt::zero();
    let pad = BigInt::from(opts.pad);
    let i_lo = zero.clone().min(cp.0.clone()).min(cq.0.clone()) - &pad;
    let i_hi = zero.clone().max(cp.0.clone()).max(cq.0.clone()) + &pad;
    let j_lo = zero.clone().min(cp.1.clone()).min(cq.1.clone()) - &pad;
    let j_hi = zero.max(cp.1.clone()).max(cq.1.clone()) + &pad;

    let g11 = p.norm2();
    let g12 = p.dot(q);
    let g22 = q.norm2();
    let det = &g11 * &g22 - &g12 * &g12;
    if !det.is_positive() {
        return Err(Error::NotEquilateral("degenerate Gram determinant".into()));
    }
    let form = |v: &Vec3| {
        (
            v.dot(p) * &g22 - v.dot(q) * &g12,
            v.dot(q) * &g11 - v.dot(p) * &g12,
        )
    };
    let (lam_u, mu_u) = form(&u);
    let (lam_tau, mu_tau) = form(&tau);
    let setup = Setup {
        u,
        tau,
        p: p.clone(),
        q: q.clone(),
        g11,
        g12,
        g22,
        limit: &t_big * &det,
        lam: Linear {
            ci: lam_u,
            cj: lam_tau,
        },
        mu: Linear {
            ci: mu_u,
            cj: mu_tau,
        },
    };

    // Scan the shorter axis row by row.
    let i_len = &i_hi - &i_lo;
    let j_len = &j_hi - &j_lo;
    let scan_is_i = i_len <= j_len;
    let (row_lo, row_hi, col_lo, col_hi) = if scan_is_i {
        (i_lo, i_hi, j_lo, j_hi)
    } else {
        (j_lo, j_hi, i_lo, i_hi)
    };
    let rows = (&row_hi - &row_lo + 1u32)
        .to_u64()
        .ok_or_else(|| Error::NotEquilateral("bounding box too large to scan".into()))?;

    let scan_row = |offset: u64| -> CountReport {
        let fixed = &row_lo + offset;
        let mut report = CountReport::default();
        let interval = if opts.clip_rows {
            setup.row_interval(&fixed, scan_is_i, &col_lo, &col_hi)
        } else {
            Some((col_lo.clone(), col_hi.clone()))
        };
        let Some((lo, hi)) = interval else {
            return report;
        };
        let mut other = lo;
        while other <= hi {
            report.candidates += 1;
            let (i, j) = if scan_is_i {
                (&fixed, &other)
            } else {
                (&other, &fixed)
            };
            if let Some(class) = setup.classify(i, j) {
                tally(&mut report, class);
            }
            other += 1;
        }
        report
    };

    let report = if opts.parallel {
        (0..rows)
            .into_par_iter()
            .map(scan_row)
            .reduce(CountReport::default, CountReport::merge)
    } else {
        (0..rows)
            .map(scan_row)
            .fold(CountReport::default(), CountReport::merge)
    };
    Ok(report)
}

/// Pick-type identity `A₂·t² = 2·interior + boundary − 2`, where `A₂` is
/// twice the normalized area of the undilated triangle.
pub fn pick_check(report: &CountReport, a2: &BigInt, t: u64) -> bool {
    let lhs = a2 * BigInt::from(t) * BigInt::from(t);
    let rhs = BigInt::from(2 * report.interior + report.boundary) - 2;
    lhs == rhs
}
