//! The `(ζ, ς, η)` frame parametrizing every equilateral triangle with one
//! vertex at the origin in a plane lattice, plus the coordinates `(α, β)` of
//! the second basis vector in that frame.
//!
//! Every triangle is `O, P = mζ − nη, Q = nζ + (m−n)η`. The frame is built
//! in role coordinates `(a, b, c)` chosen by a [`RoleMap`] from
//!
//! ```text
//! ζ = ( −(rac + dbs)/q, (das − bcr)/q, r )
//! ς = ( (3dbr − acs)/q, −(3dar + bcs)/q, s )     q = a² + b²,  2q = s² + 3r²
//! η = (ζ + ς)/2
//! ```
//!
//! where `(r, s)` is found by exhaustive search over the representations of
//! `2q`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::arith::{div_exact, gcd_nonneg, sqrt_exact, Vec3};
use crate::error::{Error, Result};
use crate::lattice::{membership, RoleMap, Triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub triple: Triple,
    pub role_map: RoleMap,
    pub zeta: Vec3,
    pub sigma: Vec3,
    pub eta: Vec3,
    pub r: BigInt,
    pub s: BigInt,
    /// `gcd` of the two coordinates in the `(a, b)` roles.
    pub omega: BigInt,
    /// `r / ω`
    pub r_t: BigInt,
    /// `s / ω`
    pub s_t: BigInt,
    /// `a² + b²` in role order.
    pub q: BigInt,
}

impl Frame {
    /// Builds the frame for an explicit `(r, s)`. Fails unless all six
    /// frame entries and `η` are integral and `ω` divides `r` and `s`.
    pub fn from_rs(triple: &Triple, role_map: RoleMap, r: BigInt, s: BigInt) -> Result<Self> {
        let [a, b, c, d] = role_map.oriented(triple);
        let q = &a * &a + &b * &b;
        let non_integral = || Error::NonIntegralFrame {
            r: r.clone(),
            s: s.clone(),
        };
        if &s * &s + BigInt::from(3) * &r * &r != BigInt::from(2) * &q {
            return Err(non_integral());
        }
        let ac = &a * &c;
        let bc = &b * &c;
        let da = &d * &a;
        let db = &d * &b;
        let three = BigInt::from(3);
        let exact = |num: BigInt| div_exact(&num, &q).ok_or_else(non_integral);
        let zeta = Vec3::new(
            exact(-(&r * &ac + &db * &s))?,
            exact(&da * &s - &bc * &r)?,
            r.clone(),
        );
        let sigma = Vec3::new(
            exact(&three * &db * &r - &ac * &s)?,
            exact(-(&three * &da * &r + &bc * &s))?,
            s.clone(),
        );
        let eta = (&zeta + &sigma)
            .div_exact(&BigInt::from(2))
            .ok_or_else(non_integral)?;

        let omega = gcd_nonneg(&a, &b);
        let (Some(r_t), Some(s_t)) = (div_exact(&r, &omega), div_exact(&s, &omega)) else {
            return Err(non_integral());
        };

        let frame = Frame {
            triple: triple.clone(),
            role_map,
            zeta: role_map.from_roles(zeta),
            sigma: role_map.from_roles(sigma),
            eta: role_map.from_roles(eta),
            r,
            s,
            omega,
            r_t,
            s_t,
            q,
        };
        frame.check()?;
        Ok(frame)
    }

    /// `(r̃ + s̃)/2`
    pub fn half_sum(&self) -> BigInt {
        (&self.r_t + &self.s_t) / 2
    }

    /// `(r̃ − s̃)/2`
    pub fn half_diff(&self) -> BigInt {
        (&self.r_t - &self.s_t) / 2
    }

    /// Verifies every frame invariant exactly.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::FrameInvariant(msg));
        let d = self.triple.d();
        let two_d2 = BigInt::from(2) * d * d;

        if &self.s * &self.s + BigInt::from(3) * &self.r * &self.r != BigInt::from(2) * &self.q {
            return fail(format!(
                "2q ≠ s² + 3r² for (r, s) = ({}, {})",
                self.r, self.s
            ));
        }
        let role_z = self.role_map.c_index();
        if self.zeta.components()[role_z] != &self.r || self.sigma.components()[role_z] != &self.s {
            return fail("ζ and ς do not carry r and s in the c-role coordinate".into());
        }
        if self.eta.scale(&BigInt::from(2)) != &self.zeta + &self.sigma {
            return fail("η ≠ (ζ + ς)/2".into());
        }
        let report = check_frame_vectors(&self.triple, &self.zeta, &self.eta);
        if !report.passed() {
            return fail(format!("{report:?}"));
        }
        if self.sigma.norm2() != BigInt::from(3) * &two_d2 {
            return fail("|ς|² ≠ 6d²".into());
        }
        if !membership(&self.sigma, &self.triple) {
            return fail("ς is not in the plane lattice".into());
        }
        if &self.omega * &self.r_t != self.r || &self.omega * &self.s_t != self.s {
            return fail("r, s are not ω·r̃, ω·s̃".into());
        }
        if (&self.r_t - &self.s_t).is_odd() {
            return fail("r̃ and s̃ have different parity".into());
        }
        Ok(())
    }

    /// Orientation of `(ζ, η)` relative to the plane normal; positive for
    /// every frame produced by this module.
    pub fn orientation(&self) -> BigInt {
        self.zeta.cross(&self.eta).dot(&self.triple.normal())
    }
}

/// Outcome of checking a candidate `(ζ, η)` pair against the frame
/// properties, independent of how the pair was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameCheck {
    pub zeta_in_lattice: bool,
    pub eta_in_lattice: bool,
    /// `|ζ|² = 2d²`
    pub zeta_norm: bool,
    /// `|2η − ζ|² = 6d²`
    pub sigma_norm: bool,
    /// `ζ · (2η − ζ) = 0`
    pub orthogonal: bool,
}

impl FrameCheck {
    pub fn passed(&self) -> bool {
        self.zeta_in_lattice
            && self.eta_in_lattice
            && self.zeta_norm
            && self.sigma_norm
            && self.orthogonal
    }
}

pub fn check_frame_vectors(triple: &Triple, zeta: &Vec3, eta: &Vec3) -> FrameCheck {
    let d = triple.d();
    let two_d2 = BigInt::from(2) * d * d;
    let sigma = &eta.scale(&BigInt::from(2)) - zeta;
    FrameCheck {
        zeta_in_lattice: membership(zeta, triple),
        eta_in_lattice: membership(eta, triple),
        zeta_norm: zeta.norm2() == two_d2,
        sigma_norm: sigma.norm2() == BigInt::from(3) * &two_d2,
        orthogonal: zeta.dot(&sigma).is_zero(),
    }
}

/// All canonical primitive triples for `d`, sorted lexicographically.
pub fn enumerate_triples(d: u64) -> Vec<Triple> {
    let d = d as u128;
    let target = 3 * d * d;
    let mut out = Vec::new();
    for a in 1..=d {
        let mut b = a;
        // c ≥ b  ⇔  a² + 2b² ≤ 3d²
        while a * a + 2 * b * b <= target {
            let rest = target - a * a - b * b;
            let c = rest.sqrt();
            if c * c == rest && a.gcd(&b).gcd(&c) == 1 {
                out.push(
                    Triple::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
                        .expect("enumerated triple is valid"),
                );
            }
            b += 1;
        }
    }
    out.sort();
    out
}

/// Canonical `(r, s)` for a triple under a role map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsChoice {
    pub r: BigInt,
    pub s: BigInt,
    pub role_map: RoleMap,
}

/// Every `(r, s)` with `2q = s² + 3r²` that yields an integral frame, in
/// scan order.
pub fn admissible_rs(t: &Triple, role_map: RoleMap) -> Vec<(BigInt, BigInt)> {
    let [a, b, ..] = role_map.oriented(t);
    let two_q = BigInt::from(2) * (&a * &a + &b * &b);
    let mut out = Vec::new();
    let mut r = BigInt::zero();
    loop {
        let three_r2 = BigInt::from(3) * &r * &r;
        if three_r2 > two_q {
            break;
        }
        if let Some(s) = sqrt_exact(&(&two_q - three_r2)).expect("nonnegative") {
            let rs = if r.is_zero() {
                vec![r.clone()]
            } else {
                vec![r.clone(), -&r]
            };
            let ss = if s.is_zero() {
                vec![s.clone()]
            } else {
                vec![s.clone(), -&s]
            };
            for r in &rs {
                for s in &ss {
                    if Frame::from_rs(t, role_map, r.clone(), s.clone()).is_ok() {
                        out.push((r.clone(), s.clone()));
                    }
                }
            }
        }
        r += 1;
    }
    out
}

pub fn find_rs(t: &Triple) -> Result<RsChoice> {
    find_rs_with_roles(t, RoleMap::IDENTITY)
}

/// Picks among [`admissible_rs`]: nonzero `r` and `s` first, then minimal
/// `|r|`, then `r ≥ 0`, then `s ≥ 0`.
pub fn find_rs_with_roles(t: &Triple, role_map: RoleMap) -> Result<RsChoice> {
    admissible_rs(t, role_map)
        .into_iter()
        .min_by_key(|(r, s)| {
            (
                r.is_zero() || s.is_zero(),
                r.abs(),
                r.is_negative(),
                s.is_negative(),
            )
        })
        .map(|(r, s)| RsChoice { r, s, role_map })
        .ok_or_else(|| {
            let [a, b, ..] = role_map.oriented(t);
            Error::NoRepresentation {
                two_q: BigInt::from(2) * (&a * &a + &b * &b),
            }
        })
}

pub fn build_frame(t: &Triple) -> Result<Frame> {
    build_frame_with_roles(t, RoleMap::IDENTITY)
}

pub fn build_frame_with_roles(t: &Triple, role_map: RoleMap) -> Result<Frame> {
    let rs = find_rs_with_roles(t, role_map)?;
    Frame::from_rs(t, role_map, rs.r, rs.s)
}

/// A particular solution of `((r̃+s̃)/2)·β + r̃·α = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaBeta {
    pub alpha: BigInt,
    pub beta: BigInt,
}

impl AlphaBeta {
    /// `((r̃+s̃)/2)·β + r̃·α`
    pub fn diophantine_value(&self, f: &Frame) -> BigInt {
        f.half_sum() * &self.beta + &f.r_t * &self.alpha
    }

    /// Moves along the homogeneous solutions: `(α + h·(r̃+s̃)/2, β − h·r̃)`.
    pub fn shifted(&self, f: &Frame, h: &BigInt) -> AlphaBeta {
        AlphaBeta {
            alpha: &self.alpha + h * f.half_sum(),
            beta: &self.beta - h * &f.r_t,
        }
    }
}

/// Solves `d·τ = α·ζ + β·η` exactly. The result satisfies
/// `|((r̃+s̃)/2)·β + r̃·α| = d`; the sign is whatever `τ`'s orientation gives.
pub fn solve_alpha_beta(f: &Frame, tau: &Vec3) -> Result<AlphaBeta> {
    let n = f.triple.normal();
    let d = f.triple.d();
    let d_tau = tau.scale(d);
    let den = f.zeta.cross(&f.eta).dot(&n);
    let mismatch = |msg: String| Error::FrameBasisMismatch(msg);
    if den.is_zero() {
        return Err(mismatch("ζ and η are parallel".into()));
    }
    let alpha = div_exact(&d_tau.cross(&f.eta).dot(&n), &den)
        .ok_or_else(|| mismatch(format!("α is not integral for τ = {tau}")))?;
    let beta = div_exact(&f.zeta.cross(&d_tau).dot(&n), &den)
        .ok_or_else(|| mismatch(format!("β is not integral for τ = {tau}")))?;
    if &f.zeta.scale(&alpha) + &f.eta.scale(&beta) != d_tau {
        return Err(mismatch(format!(
            "d·τ is not in the span of ζ, η for τ = {tau}"
        )));
    }
    let ab = AlphaBeta { alpha, beta };
    if ab.diophantine_value(f).abs() != *d {
        return Err(mismatch(format!(
            "((r̃+s̃)/2)β + r̃α = {} but d = {d}",
            ab.diophantine_value(f)
        )));
    }
    Ok(ab)
}

/// `P = mζ − nη`, `Q = nζ + (m−n)η`.
pub fn triangle_vertices(f: &Frame, m: i64, n: i64) -> Result<(Vec3, Vec3)> {
    if m == 0 && n == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let p = &(m * &f.zeta) - &(n * &f.eta);
    let q = &(n * &f.zeta) + &((m - n) * &f.eta);
    Ok((p, q))
}

/// Primitive solutions of `2a² + c² = 3d²` from a generator pair `(k, l)`
/// with `k` odd, `l > 0`, `gcd(k, l) = 1`. One or two triples, depending
/// on `k ± l mod 3`.
pub fn aeqb_generate(k: impl Into<BigInt>, l: impl Into<BigInt>) -> Result<Vec<Triple>> {
    let (k, l) = (k.into(), l.into());
    let invalid = |reason| Error::InvalidGeneratorPair {
        k: k.clone(),
        l: l.clone(),
        reason,
    };
    if !k.is_positive() || !l.is_positive() {
        return Err(invalid("k and l must be positive"));
    }
    if k.is_even() {
        return Err(invalid("k must be odd"));
    }
    if !gcd_nonneg(&k, &l).is_one() {
        return Err(invalid("k and l must be coprime"));
    }
    let three = BigInt::from(3);
    let (k2, l2, kl) = (&k * &k, &l * &l, &k * &l);
    let d = BigInt::from(2) * &l2 + &k2;
    let mut out = Vec::new();
    if !(&k - &l).mod_floor(&three).is_zero() {
        let a = (BigInt::from(2) * &l2 + BigInt::from(2) * &kl - &k2).abs();
        let c = (&k2 + BigInt::from(4) * &kl - BigInt::from(2) * &l2).abs();
        out.push((a, c));
    }
    if !(&k + &l).mod_floor(&three).is_zero() {
        let a = (BigInt::from(2) * &l2 - BigInt::from(2) * &kl - &k2).abs();
        let c = (&k2 - BigInt::from(4) * &kl - BigInt::from(2) * &l2).abs();
        out.push((a, c));
    }
    let mut triples = Vec::with_capacity(out.len());
    for (a, c) in out {
        let triple = Triple::with_d(a.clone(), a, c, d.clone())?;
        if !triples.contains(&triple) {
            triples.push(triple);
        }
    }
    Ok(triples)
}

/// Closed-form frame for a triple with two equal coordinates `a = b`:
/// `ζ = (−(d+c)/2, (d−c)/2, a)`, `η = ((d−c)/2, −(d+c)/2, a)`, where
/// `r̃ = s̃ = 1` and `(α, β) = (d, 0)` solves the Diophantine relation.
pub fn aeqb_frame(t: &Triple) -> Option<(Frame, AlphaBeta)> {
    let c_index = t.equal_pair_complement()?;
    let role_map = RoleMap::with_c_role(c_index);
    let [a, ..] = role_map.oriented(t);
    let frame = Frame::from_rs(t, role_map, a.clone(), a).ok()?;
    let ab = AlphaBeta {
        alpha: t.d().clone(),
        beta: BigInt::zero(),
    };
    Some((frame, ab))
}
