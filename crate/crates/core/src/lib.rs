//! Ehrhart polynomials of equilateral lattice triangles in ℤ³.
//!
//! Every equilateral triangle with integer vertices can be translated to
//! have a vertex at the origin; its other vertices then lie in the plane
//! lattice `ax + by + cz = 0` of a primitive triple with
//! `a² + b² + c² = 3d²`. This crate builds the lattice, the frame that
//! parametrizes all such triangles, and the closed-form Ehrhart polynomial
//! `L(t) = (A t² + B t)/2 + 1`, and checks it against direct counting.
//!
//! ```
//! use equitri::{ehrhart_poly, EhrhartPoly, Triple};
//!
//! let t = Triple::new(5, 13, 13).unwrap();
//! assert_eq!(ehrhart_poly(&t, 1, 0).unwrap(), EhrhartPoly::new(11, 13));
//! ```

pub mod arith;
pub mod catalog;
pub mod ehrhart;
pub mod error;
pub mod family;
pub mod frame;
pub mod lattice;
pub mod oracle;

pub use arith::{extended_gcd, gcd_nonneg, sqrt_exact, Bezout, Vec3};
pub use catalog::{
    e_of_d, render_table, table1, table1_row, verify_campaign, verify_one, Campaign,
    CampaignConfig, CatalogRow, VerificationRecord,
};
pub use ehrhart::{
    c0_doubled, c1_aeqb, c1_general, c1_minimal, ehrhart_poly, side_divisors, EhrhartPoly,
    SideDecomposition,
};
pub use error::{Error, Result};
pub use family::TriangleFamily;
pub use frame::{
    aeqb_frame, aeqb_generate, build_frame, check_frame_vectors, enumerate_triples, find_rs,
    solve_alpha_beta, triangle_vertices, AlphaBeta, Frame, FrameCheck,
};
pub use lattice::{
    coordinates_in_basis, generators, membership, tau_vector, BasisPair, GeneratorSet, RoleMap,
    Triple,
};
pub use oracle::{count, count_with, pick_check, CountOptions, CountReport, SideCounts};
