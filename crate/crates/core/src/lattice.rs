//! The plane lattice `{(x, y, z) ∈ ℤ³ : ax + by + cz = 0}` for a primitive
//! triple with `a² + b² + c² = 3d²`, its generators `u, v, w`, and the
//! two-element basis `(u, τ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{div_exact, extended_gcd, gcd_nonneg, sqrt_exact, Vec3};
use crate::error::{Error, Result};
use crate::frame::{solve_alpha_beta, AlphaBeta, Frame};

/// Primitive positive solution of `a² + b² + c² = 3d²`, stored in canonical
/// order `a ≤ b ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Triple {
    /// Validates and canonicalizes `(a, b, c)`; `d` is derived.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let mut coords = [a.into(), b.into(), c.into()];
        if coords.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidTriple(format!(
                "[{}, {}, {}] must have positive entries",
                coords[0], coords[1], coords[2]
            )));
        }
        coords.sort();
        let [a, b, c] = coords;
        let sum = &a * &a + &b * &b + &c * &c;
        let (d2, rem) = sum.div_rem(&BigInt::from(3));
        let d = if rem.is_zero() {
            sqrt_exact(&d2)?
        } else {
            None
        };
        let Some(d) = d else {
            return Err(Error::InvalidTriple(format!(
                "[{a}, {b}, {c}]: a² + b² + c² = {sum} is not of the form 3d²"
            )));
        };
        if !gcd_nonneg(&gcd_nonneg(&a, &b), &c).is_one() {
            return Err(Error::InvalidTriple(format!(
                "[{a}, {b}, {c}] is not primitive"
            )));
        }
        Ok(Triple { a, b, c, d })
    }

    /// Like [`Triple::new`] but also checks the caller's `d`.
    pub fn with_d(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let t = Self::new(a, b, c)?;
        let d = d.into();
        if t.d != d {
            return Err(Error::InvalidTriple(format!(
                "{t} has d = {}, not {d}",
                t.d
            )));
        }
        Ok(t)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Normal vector `(a, b, c)` of the lattice plane.
    pub fn normal(&self) -> Vec3 {
        Vec3::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// If two coordinates coincide, the index of the remaining one (the
    /// coordinate that takes the `c` role in the two-equal shortcut).
    pub fn equal_pair_complement(&self) -> Option<usize> {
        if self.b == self.c {
            Some(0)
        } else if self.a == self.b {
            Some(2)
        } else {
            None
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Assignment of the triple's coordinates to the `(a, b, c)` roles of the
/// frame construction. Only cyclic rotations are allowed, so every role map
/// preserves orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleMap {
    /// `roles[k]` is the coordinate index playing role `k`.
    roles: [usize; 3],
}

impl RoleMap {
    pub const IDENTITY: RoleMap = RoleMap { roles: [0, 1, 2] };

    /// The rotation in which coordinate `index` plays the `c` role.
    pub fn with_c_role(index: usize) -> Self {
        assert!(index < 3, "coordinate index out of range");
        RoleMap {
            roles: [(index + 1) % 3, (index + 2) % 3, index],
        }
    }

    pub fn all() -> [RoleMap; 3] {
        [
            Self::with_c_role(2),
            Self::with_c_role(0),
            Self::with_c_role(1),
        ]
    }

    pub fn roles(&self) -> [usize; 3] {
        self.roles
    }

    pub fn c_index(&self) -> usize {
        self.roles[2]
    }

    /// Triple coordinates in role order: `(a, b, c, d)` as used by the frame.
    pub fn oriented(&self, t: &Triple) -> [BigInt; 4] {
        let coords = t.coords();
        [
            coords[self.roles[0]].clone(),
            coords[self.roles[1]].clone(),
            coords[self.roles[2]].clone(),
            t.d().clone(),
        ]
    }

    /// Maps a vector written in role coordinates back to the triple's
    /// coordinates.
    pub fn from_roles(&self, v: Vec3) -> Vec3 {
        let mut out: [BigInt; 3] = Default::default();
        for (k, value) in v.into_array().into_iter().enumerate() {
            out[self.roles[k]] = value;
        }
        Vec3::from_array(out)
    }
}

impl Default for RoleMap {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for RoleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 3] = ['a', 'b', 'c'];
        write!(
            f,
            "(a,b,c) <- ({},{},{})",
            NAMES[self.roles[0]], NAMES[self.roles[1]], NAMES[self.roles[2]]
        )
    }
}

/// `u, v, w` spanning the plane lattice together with the Bézout data used
/// to build `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub u: Vec3,
    pub v: Vec3,
    pub w: Vec3,
    /// `gcd(a, b)` in role order.
    pub omega: BigInt,
    pub gcd_ac: BigInt,
    pub gcd_bc: BigInt,
    /// Smallest `k > 0` with `k·a + l·b = ω`.
    pub bezout_k: BigInt,
    pub bezout_l: BigInt,
    pub role_map: RoleMap,
}

pub fn generators(t: &Triple) -> GeneratorSet {
    generators_with_roles(t, RoleMap::IDENTITY)
}

pub fn generators_with_roles(t: &Triple, role_map: RoleMap) -> GeneratorSet {
    let [a, b, c, _] = role_map.oriented(t);
    let omega = gcd_nonneg(&a, &b);
    let gcd_ac = gcd_nonneg(&a, &c);
    let gcd_bc = gcd_nonneg(&b, &c);
    let exact = |v: Vec3, k: &BigInt| v.div_exact(k).expect("gcd divides its arguments");
    let u = exact(Vec3::new(-&b, a.clone(), 0), &omega);
    let v = exact(Vec3::new(-&c, 0, a.clone()), &gcd_ac);
    let w = exact(Vec3::new(0, -&c, b.clone()), &gcd_bc);

    // k is unique modulo b/ω; pick its representative in [1, b/ω].
    let bez = extended_gcd(&a, &b).expect("triple entries are positive");
    let period = &b / &omega;
    let bezout_k = (bez.p - BigInt::one()).mod_floor(&period) + BigInt::one();
    let bezout_l = div_exact(&(&omega - &bezout_k * &a), &b).expect("Bézout shift is exact");

    GeneratorSet {
        u: role_map.from_roles(u),
        v: role_map.from_roles(v),
        w: role_map.from_roles(w),
        omega,
        gcd_ac,
        gcd_bc,
        bezout_k,
        bezout_l,
        role_map,
    }
}

/// `τ = gcd(a,c)·k·v + gcd(b,c)·l·w`; together with `u` a basis of the
/// plane lattice.
pub fn tau_vector(g: &GeneratorSet) -> Vec3 {
    let kv = g.v.scale(&(&g.gcd_ac * &g.bezout_k));
    let lw = g.w.scale(&(&g.gcd_bc * &g.bezout_l));
    &kv + &lw
}

/// Basis `(u, τ)` with the coordinates `(α, β)` of `d·τ` in the `(ζ, η)`
/// frame. `τ` is stored with the orientation that makes
/// `((r̃+s̃)/2)·β + r̃·α = +d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPair {
    pub u: Vec3,
    pub tau: Vec3,
    pub alpha: BigInt,
    pub beta: BigInt,
}

impl BasisPair {
    pub fn new(gens: &GeneratorSet, frame: &Frame) -> Result<Self> {
        if gens.role_map != frame.role_map {
            return Err(Error::FrameBasisMismatch(format!(
                "generators use {} but frame uses {}",
                gens.role_map, frame.role_map
            )));
        }
        let d = frame.triple.d();
        // u = ((r̃+s̃)/2d)·ζ − (r̃/d)·η
        let du = &frame.zeta.scale(&frame.half_sum()) - &frame.eta.scale(&frame.r_t);
        if du != gens.u.scale(d) {
            return Err(Error::FrameBasisMismatch(format!(
                "u = {} is not ((r̃+s̃)/2d)ζ − (r̃/d)η",
                gens.u
            )));
        }
        let mut tau = tau_vector(gens);
        let mut ab = solve_alpha_beta(frame, &tau)?;
        if ab.diophantine_value(frame).is_negative() {
            tau = -&tau;
            ab = AlphaBeta {
                alpha: -ab.alpha,
                beta: -ab.beta,
            };
        }
        Ok(BasisPair {
            u: gens.u.clone(),
            tau,
            alpha: ab.alpha,
            beta: ab.beta,
        })
    }

    pub fn alpha_beta(&self) -> AlphaBeta {
        AlphaBeta {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }
}

/// `a·x + b·y + c·z = 0`.
pub fn membership(p: &Vec3, t: &Triple) -> bool {
    p.dot(&t.normal()).is_zero()
}

/// Integer coordinates `(i, j)` with `p = i·u + j·τ`, or `None` when `p` is
/// not in the plane lattice.
pub fn coordinates_in_basis(p: &Vec3, basis: &BasisPair, t: &Triple) -> Option<(BigInt, BigInt)> {
    coordinates_in(p, &basis.u, &basis.tau, t)
}

/// Same as [`coordinates_in_basis`] for an arbitrary pair `(u, τ)`.
pub fn coordinates_in(p: &Vec3, u: &Vec3, tau: &Vec3, t: &Triple) -> Option<(BigInt, BigInt)> {
    if !membership(p, t) {
        return None;
    }
    let n = t.normal();
    let den = u.cross(tau).dot(&n);
    let i = div_exact(&p.cross(tau).dot(&n), &den)?;
    let j = div_exact(&u.cross(p).dot(&n), &den)?;
    (&u.scale(&i) + &tau.scale(&j) == *p).then_some((i, j))
}
