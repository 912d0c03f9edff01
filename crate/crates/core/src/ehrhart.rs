//! Closed-form Ehrhart data for equilateral lattice triangles.
//!
//! For the triangle `T(m, n)` with `gcd(m, n) = 1` in the plane lattice of a
//! triple with scale `d`,
//!
//! ```text
//! L(t) = (d(m² − mn + n²)·t² + c₁·t)/2 + 1
//! ```
//!
//! where `c₁` is the number of lattice points on the boundary of the
//! undilated triangle: the sum of three side divisors, each a gcd of linear
//! forms in `(m, n)`, `(r̃, s̃)` and a particular solution `(α, β)` of
//! `((r̃+s̃)/2)·β + r̃·α = d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::gcd_nonneg;
use crate::error::{Error, Result};
use crate::family::TriangleFamily;
use crate::frame::{aeqb_frame, AlphaBeta, Frame};
use crate::lattice::Triple;

/// `L(t) = (A·t² + B·t)/2 + 1` with integer `A = 2c₀` and `B = c₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EhrhartPoly {
    pub quad_num: BigInt,
    pub lin_num: BigInt,
}

impl EhrhartPoly {
    pub fn new(quad_num: impl Into<BigInt>, lin_num: impl Into<BigInt>) -> Self {
        EhrhartPoly {
            quad_num: quad_num.into(),
            lin_num: lin_num.into(),
        }
    }

    /// Number of lattice points in the `t`-th dilate.
    pub fn evaluate(&self, t: &BigInt) -> Result<BigInt> {
        let parity = &self.quad_num + &self.lin_num;
        if parity.is_odd() {
            return Err(Error::MalformedPolynomial(parity));
        }
        let twice = &self.quad_num * t * t + &self.lin_num * t;
        Ok(twice / 2 + 1)
    }

    /// `L(g·t)` as a polynomial in `t`.
    pub fn dilated(&self, g: &BigInt) -> EhrhartPoly {
        EhrhartPoly {
            quad_num: &self.quad_num * g * g,
            lin_num: &self.lin_num * g,
        }
    }
}

impl fmt::Display for EhrhartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}t² + {}t)/2 + 1", self.quad_num, self.lin_num)
    }
}

/// Number of equal parts into which the lattice divides each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideDecomposition {
    pub nu_op: BigInt,
    pub nu_oq: BigInt,
    pub nu_pq: BigInt,
}

impl SideDecomposition {
    pub fn c1(&self) -> BigInt {
        &self.nu_op + &self.nu_oq + &self.nu_pq
    }

    /// Lattice points strictly inside each side, ordered `(OP, OQ, PQ)`.
    pub fn interior_counts(&self) -> [BigInt; 3] {
        [&self.nu_op - 1, &self.nu_oq - 1, &self.nu_pq - 1]
    }

    pub fn as_array(&self) -> [&BigInt; 3] {
        [&self.nu_op, &self.nu_oq, &self.nu_pq]
    }
}

/// `m² − mn + n²`
pub fn norm_form(m: i64, n: i64) -> BigInt {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    &m * &m - &m * &n + &n * &n
}

/// `2c₀ = d(m² − mn + n²)`.
pub fn c0_doubled(d: &BigInt, m: i64, n: i64) -> BigInt {
    d * norm_form(m, n)
}

fn require_coprime(m: i64, n: i64) -> Result<()> {
    if m == 0 && n == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let g = num_integer::gcd(m, n);
    if g != 1 {
        return Err(Error::NonCoprimeDilation(BigInt::from(g)));
    }
    Ok(())
}

pub fn side_divisors(f: &Frame, ab: &AlphaBeta, m: i64, n: i64) -> Result<SideDecomposition> {
    require_coprime(m, n)?;
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let (r, s) = (&f.r_t, &f.s_t);
    let half_sum = f.half_sum();
    let half_diff = f.half_diff();
    let half_rev = (s - r) / 2;
    let (alpha, beta) = (&ab.alpha, &ab.beta);
    let alpha_beta = alpha + beta;

    let nu_oq = gcd_nonneg(
        &(&m * &half_sum + &n * &half_diff),
        &(&m * alpha - &n * &alpha_beta),
    );
    let nu_op = gcd_nonneg(&(&m * r - &n * &half_sum), &(&m * beta + &n * alpha));
    let nu_pq = gcd_nonneg(&(&m * &half_rev + &n * r), &(&m * &alpha_beta - &n * beta));
    Ok(SideDecomposition {
        nu_op,
        nu_oq,
        nu_pq,
    })
}

pub fn c1_general(f: &Frame, ab: &AlphaBeta, m: i64, n: i64) -> Result<BigInt> {
    Ok(side_divisors(f, ab, m, n)?.c1())
}

/// The minimal-triangle form
/// `gcd(r̃, β) + gcd((r̃+s̃)/2, α) + gcd((r̃−s̃)/2, α+β)`.
pub fn c1_minimal(f: &Frame, ab: &AlphaBeta) -> BigInt {
    gcd_nonneg(&f.r_t, &ab.beta)
        + gcd_nonneg(&f.half_sum(), &ab.alpha)
        + gcd_nonneg(&f.half_diff(), &(&ab.alpha + &ab.beta))
}

/// `gcd(m, d) + gcd(n, d) + gcd(m − n, d)` for planes with two equal
/// coefficients.
pub fn c1_aeqb(d: &BigInt, m: i64, n: i64) -> Result<BigInt> {
    require_coprime(m, n)?;
    let (mb, nb) = (BigInt::from(m), BigInt::from(n));
    Ok(gcd_nonneg(&mb, d) + gcd_nonneg(&nb, d) + gcd_nonneg(&(&mb - &nb), d))
}

/// Ehrhart polynomial of `T(m, n)` in the plane lattice of `t`.
///
/// Non-coprime `(m, n)` reduce through `L(g·T, t) = L(T, g·t)`. For triples
/// with two equal coordinates the shortcut formula is used and checked
/// against the general one.
pub fn ehrhart_poly(t: &Triple, m: i64, n: i64) -> Result<EhrhartPoly> {
    TriangleFamily::new(t)?.ehrhart(m, n)
}

/// Splits `(m, n)` into `g = gcd(m, n)` and the coprime remainder.
pub fn reduce_dilation(m: i64, n: i64) -> Result<(i64, i64, i64)> {
    if m == 0 && n == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let g = num_integer::gcd(m, n);
    Ok((m / g, n / g, g))
}

pub(crate) fn assemble(family: &TriangleFamily, m: i64, n: i64) -> Result<EhrhartPoly> {
    let (m0, n0, g) = reduce_dilation(m, n)?;
    let d = family.triple.d();
    let ab = family.basis.alpha_beta();
    let c1 = c1_general(&family.frame, &ab, m0, n0)?;
    if let Some((aeqb, aeqb_ab)) = aeqb_frame(&family.triple) {
        let fast = c1_aeqb(d, m0, n0)?;
        let closed = c1_general(&aeqb, &aeqb_ab, m0, n0)?;
        if fast != c1 || closed != c1 {
            return Err(Error::ShortcutMismatch { fast, general: c1 });
        }
    }
    let base = EhrhartPoly {
        quad_num: c0_doubled(d, m0, n0),
        lin_num: c1,
    };
    Ok(base.dilated(&BigInt::from(g)))
}

/// `true` when `B ≥ 3` and `A + B` is even.
pub fn is_well_formed(p: &EhrhartPoly) -> bool {
    p.lin_num >= BigInt::from(3) && (&p.quad_num + &p.lin_num).is_even() && p.quad_num.is_positive()
}

/// Halved-sum variant of the third minimal-triangle term,
/// `gcd((r̃−s̃)/2, (α+β)/2)`, defined only when `α+β` is even. Kept for
/// reporting which variant agrees with direct counting.
pub fn c1_minimal_halved_variant(f: &Frame, ab: &AlphaBeta) -> Option<BigInt> {
    let sum = &ab.alpha + &ab.beta;
    if sum.is_odd() {
        return None;
    }
    let halved = sum / 2;
    Some(
        gcd_nonneg(&f.r_t, &ab.beta)
            + gcd_nonneg(&f.half_sum(), &ab.alpha)
            + gcd_nonneg(&f.half_diff(), &halved),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{build_frame, enumerate_triples, Frame};
    use crate::lattice::{generators, tau_vector, BasisPair, RoleMap};
    use num_traits::One;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn t(a: i64, b: i64, c: i64) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    const GRID: [(i64, i64); 4] = [(1, 0), (1, 1), (2, 1), (3, 2)];

    #[test]
    fn c0_examples() {
        assert_eq!(c0_doubled(&int(11), 1, 0), int(11));
        assert_eq!(c0_doubled(&int(7), 1, 1), int(7));
        assert_eq!(c0_doubled(&int(15), 2, 1), int(45));
    }

    #[test]
    fn side_divisors_d15_worked_example() {
        let tr = t(1, 7, 25);
        let f = Frame::from_rs(&tr, RoleMap::IDENTITY, int(-5), int(5)).unwrap();
        let ab = AlphaBeta {
            alpha: int(-3),
            beta: int(19),
        };
        let sd = side_divisors(&f, &ab, 1, 0).unwrap();
        assert_eq!(sd.nu_op, int(1)); // gcd(−5, 19)
        assert_eq!(sd.nu_oq, int(3)); // gcd(0, −3)
        assert_eq!(sd.nu_pq, int(1)); // gcd(5, 16)
        assert_eq!(sd.c1(), int(5));
        assert_eq!(c1_minimal(&f, &ab), int(5));
    }

    #[test]
    fn side_divisors_delta3() {
        let tr = t(245, 613, 713);
        let fam = TriangleFamily::new(&tr).unwrap();
        let sd = side_divisors(&fam.frame, &fam.basis.alpha_beta(), 1, 0).unwrap();
        let mut interior = sd.interior_counts().to_vec();
        interior.sort();
        assert_eq!(interior, vec![int(2), int(10), int(16)]);
        assert_eq!(sd.c1(), int(31));
    }

    #[test]
    fn side_divisors_d1() {
        let f = build_frame(&t(1, 1, 1)).unwrap();
        let ab = AlphaBeta {
            alpha: int(1),
            beta: int(0),
        };
        let sd = side_divisors(&f, &ab, 1, 0).unwrap();
        assert_eq!(sd.as_array(), [&int(1), &int(1), &int(1)]);
        assert!(matches!(
            side_divisors(&f, &ab, 2, 2),
            Err(Error::NonCoprimeDilation(_))
        ));
    }

    #[test]
    fn c1_examples() {
        assert_eq!(ehrhart_poly(&t(1, 7, 25), 1, 0).unwrap().lin_num, int(5));
        assert_eq!(ehrhart_poly(&t(5, 13, 13), 1, 0).unwrap().lin_num, int(13));
        assert_eq!(ehrhart_poly(&t(1, 1, 19), 1, 0).unwrap().lin_num, int(13));
        assert_eq!(
            ehrhart_poly(&t(245, 613, 713), 1, 0).unwrap().lin_num,
            int(31)
        );
    }

    #[test]
    fn c1_aeqb_examples() {
        assert_eq!(c1_aeqb(&int(3), 1, 0).unwrap(), int(5));
        assert_eq!(c1_aeqb(&int(2011), 1, 0).unwrap(), int(2013));
        assert_eq!(c1_aeqb(&int(17), 1, 1).unwrap(), int(19));
        assert!(c1_aeqb(&int(17), 2, 4).is_err());
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(
            ehrhart_poly(&t(5, 13, 13), 1, 0).unwrap(),
            EhrhartPoly::new(11, 13)
        );
        assert_eq!(
            ehrhart_poly(&t(1, 1, 1), 1, 0).unwrap(),
            EhrhartPoly::new(1, 3)
        );
        assert_eq!(
            ehrhart_poly(&t(245, 613, 713), 2, 0).unwrap(),
            EhrhartPoly::new(2244, 62)
        );
        assert_eq!(
            ehrhart_poly(&t(1, 1, 5), 1, 1).unwrap(),
            EhrhartPoly::new(3, 5)
        );
        assert!(matches!(
            ehrhart_poly(&t(1, 1, 1), 0, 0),
            Err(Error::DegenerateTriangle)
        ));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(EhrhartPoly::new(11, 13).evaluate(&int(1)).unwrap(), int(13));
        assert_eq!(
            EhrhartPoly::new(561, 31).evaluate(&int(1)).unwrap(),
            int(297)
        );
        assert_eq!(EhrhartPoly::new(561, 31).evaluate(&int(0)).unwrap(), int(1));
        assert!(matches!(
            EhrhartPoly::new(2, 3).evaluate(&int(1)),
            Err(Error::MalformedPolynomial(_))
        ));
    }

    #[test]
    fn render() {
        assert_eq!(EhrhartPoly::new(561, 31).to_string(), "(561t² + 31t)/2 + 1");
    }

    #[test]
    fn particular_solution_independence() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                let fam = TriangleFamily::new(&tr).unwrap();
                let ab = fam.basis.alpha_beta();
                for (m, n) in GRID {
                    let base = c1_general(&fam.frame, &ab, m, n).unwrap();
                    for h in [-7i64, -2, 1, 3, 11] {
                        let shifted = ab.shifted(&fam.frame, &int(h));
                        assert_eq!(shifted.diophantine_value(&fam.frame), tr.d().clone());
                        assert_eq!(c1_general(&fam.frame, &shifted, m, n).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_and_general_forms_agree() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                let fam = TriangleFamily::new(&tr).unwrap();
                let ab = fam.basis.alpha_beta();
                assert_eq!(
                    c1_general(&fam.frame, &ab, 1, 0).unwrap(),
                    c1_minimal(&fam.frame, &ab)
                );
            }
        }
    }

    #[test]
    fn aeqb_shortcut_agrees() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                if tr.equal_pair_complement().is_none() {
                    continue;
                }
                let fam = TriangleFamily::new(&tr).unwrap();
                for (m, n) in GRID {
                    assert_eq!(
                        c1_general(&fam.frame, &fam.basis.alpha_beta(), m, n).unwrap(),
                        c1_aeqb(tr.d(), m, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn side_divisor_structure_minimal_triangle() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                let fam = TriangleFamily::new(&tr).unwrap();
                let sd = side_divisors(&fam.frame, &fam.basis.alpha_beta(), 1, 0).unwrap();
                let nus = sd.as_array();
                for nu in nus {
                    assert!(tr.d().is_multiple_of(nu), "{nu} ∤ d for {tr}");
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        assert!(gcd_nonneg(nus[i], nus[j]).is_one(), "{tr}");
                    }
                }
            }
        }
    }

    #[test]
    fn role_maps_give_same_polynomial() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                for (m, n) in GRID.into_iter().chain([(3, 1), (5, 2), (4, -1)]) {
                    let polys: Vec<_> = RoleMap::all()
                        .into_iter()
                        .map(|rm| {
                            TriangleFamily::with_roles(&tr, rm)
                                .unwrap()
                                .ehrhart(m, n)
                                .unwrap()
                        })
                        .collect();
                    assert!(
                        polys.windows(2).all(|w| w[0] == w[1]),
                        "{tr} ({m},{n}): {polys:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn parity_everywhere() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                for (m, n) in GRID.into_iter().chain([(2, 0), (3, 3), (-1, 2)]) {
                    let p = ehrhart_poly(&tr, m, n).unwrap();
                    assert!(is_well_formed(&p), "{tr} ({m},{n}) {p}");
                }
            }
        }
    }

    #[test]
    fn basis_pair_invariants() {
        for d in 1..=41 {
            for tr in enumerate_triples(d) {
                let g = generators(&tr);
                let f = build_frame(&tr).unwrap();
                let b = BasisPair::new(&g, &f).unwrap();
                assert_eq!(b.alpha_beta().diophantine_value(&f), tr.d().clone());
                let d_tau = b.tau.scale(tr.d());
                assert_eq!(&f.zeta.scale(&b.alpha) + &f.eta.scale(&b.beta), d_tau);
                assert!(b.tau == tau_vector(&g) || b.tau == -&tau_vector(&g));
                assert_eq!(b.u.cross(&b.tau).norm2(), 3 * tr.d() * tr.d());
            }
        }
    }
}
