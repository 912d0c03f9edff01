//! All construction data for the equilateral triangles of one plane lattice.

use num_bigint::BigInt;

use crate::arith::Vec3;
use crate::ehrhart::{self, EhrhartPoly, SideDecomposition};
use crate::error::Result;
use crate::frame::{build_frame_with_roles, triangle_vertices, Frame};
use crate::lattice::{generators_with_roles, BasisPair, GeneratorSet, RoleMap, Triple};

#[derive(Clone, Debug)]
pub struct TriangleFamily {
    pub triple: Triple,
    pub generators: GeneratorSet,
    pub frame: Frame,
    pub basis: BasisPair,
}

impl TriangleFamily {
    pub fn new(triple: &Triple) -> Result<Self> {
        Self::with_roles(triple, RoleMap::IDENTITY)
    }

    pub fn with_roles(triple: &Triple, role_map: RoleMap) -> Result<Self> {
        let generators = generators_with_roles(triple, role_map);
        let frame = build_frame_with_roles(triple, role_map)?;
        let basis = BasisPair::new(&generators, &frame)?;
        Ok(TriangleFamily {
            triple: triple.clone(),
            generators,
            frame,
            basis,
        })
    }

    pub fn d(&self) -> &BigInt {
        self.triple.d()
    }

    pub fn vertices(&self, m: i64, n: i64) -> Result<(Vec3, Vec3)> {
        triangle_vertices(&self.frame, m, n)
    }

    pub fn side_divisors(&self, m: i64, n: i64) -> Result<SideDecomposition> {
        ehrhart::side_divisors(&self.frame, &self.basis.alpha_beta(), m, n)
    }

    pub fn ehrhart(&self, m: i64, n: i64) -> Result<EhrhartPoly> {
        ehrhart::assemble(self, m, n)
    }
}
