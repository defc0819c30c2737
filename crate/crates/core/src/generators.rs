//! Builtin fans: projective space and the pseudo-symmetric families.
//!
//! With `e_1..e_{2n}` the standard basis of `Z^{2n}`:
//!
//! * `x_i = e_i`, `x_{2n+1} = -(e_1 + ... + e_{2n})`
//! * `y_i = -e_i`, `y_{2n+1} = e_1 + ... + e_{2n}`
//!
//! `Ṽ^{2n}` has rays `x_1..x_{2n+1}, y_1..y_{2n}` and `V^{2n}` has all
//! `4n + 2` of them. Ray indices follow exactly this order.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::LatticeVector;
use crate::polytope::{fan_from_fan_polytope, LatticePolytope};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    ProjectiveSpace,
    PseudoDelPezzoTilde,
    PseudoDelPezzoV,
}

impl Family {
    /// Short names used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::ProjectiveSpace => "pd",
            Family::PseudoDelPezzoTilde => "tilde-v",
            Family::PseudoDelPezzoV => "v",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pd" | "projective" | "P" => Ok(Family::ProjectiveSpace),
            "tilde-v" | "vtilde" => Ok(Family::PseudoDelPezzoTilde),
            "v" | "V" => Ok(Family::PseudoDelPezzoV),
            other => Err(format!("unknown family {other:?} (expected pd, tilde-v or v)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BuiltinFamily {
    family: Family,
    dim: usize,
}

impl BuiltinFamily {
    pub fn new(family: Family, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall(0));
        }
        if family != Family::ProjectiveSpace && !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        Ok(BuiltinFamily { family, dim })
    }

    pub fn projective(dim: usize) -> Result<Self> {
        Self::new(Family::ProjectiveSpace, dim)
    }

    pub fn tilde_v(dim: usize) -> Result<Self> {
        Self::new(Family::PseudoDelPezzoTilde, dim)
    }

    pub fn v(dim: usize) -> Result<Self> {
        Self::new(Family::PseudoDelPezzoV, dim)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d / 2` for the pseudo-symmetric families.
    fn half(&self) -> usize {
        self.dim / 2
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::ProjectiveSpace => format!("P^{}", self.dim),
            Family::PseudoDelPezzoTilde => format!("tildeV^{}", self.dim),
            Family::PseudoDelPezzoV => format!("V^{}", self.dim),
        }
    }
}

pub fn gen_rays<T: Scalar>(b: &BuiltinFamily) -> Vec<LatticeVector<T>> {
    let d = b.dim;
    let basis: Vec<LatticeVector<T>> = (0..d).map(|i| LatticeVector::unit(d, i)).collect();
    let total = LatticeVector::sum(d, basis.iter());
    let mut rays = basis.clone();
    rays.push(-&total);
    match b.family {
        Family::ProjectiveSpace => {}
        Family::PseudoDelPezzoTilde => rays.extend(basis.iter().map(|e| -e)),
        Family::PseudoDelPezzoV => {
            rays.extend(basis.iter().map(|e| -e));
            rays.push(total);
        }
    }
    rays
}

/// Maximal cones of `V^{2n}`: `<x_I, y_J>` with `|I| = |J| = n` and
/// `I ∩ J = ∅`, indices in `1..=2n+1`.
fn v_cones(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n + 1;
    let mut cones = Vec::new();
    for xs in (0..m).combinations(n) {
        let rest: Vec<usize> = (0..m).filter(|i| !xs.contains(i)).collect();
        for ys in rest.into_iter().combinations(n) {
            let mut cone = xs.clone();
            cone.extend(ys.iter().map(|j| m + j));
            cones.push(cone);
        }
    }
    cones
}

pub fn gen_fan<T: Scalar>(b: &BuiltinFamily) -> Result<Fan<T>> {
    let d = b.dim;
    let rays = gen_rays::<T>(b);
    match b.family {
        Family::ProjectiveSpace => {
            let cones = (0..=d).map(|skip| (0..=d).filter(|&i| i != skip).collect()).collect();
            Fan::new(d, rays, cones)
        }
        Family::PseudoDelPezzoTilde => fan_from_fan_polytope(&LatticePolytope::new(d, rays)?),
        Family::PseudoDelPezzoV => Fan::new(d, rays, v_cones(b.half())),
    }
}

/// The V family built as the face fan of `conv(rays)` instead of from the
/// explicit cone list.
pub fn gen_fan_from_hull<T: Scalar>(b: &BuiltinFamily) -> Result<Fan<T>> {
    fan_from_fan_polytope(&LatticePolytope::new(b.dim, gen_rays::<T>(b))?)
}

/// `2 ch_2(V^{2n}) . S_τ = -6 + (2n - 2)(-2)` for the surface
/// `τ = <x_1..x_{n-1}, y_n..y_{2n-2}>`.
pub fn v_d_closed_form<T: Scalar>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(2 * n));
    }
    Ok(T::from_int(-6) + T::from_int(2 * n as i64 - 2) * T::from_int(-2))
}

/// Ray indices (in [`gen_rays`] order) of `<x_1..x_{n-1}, y_n..y_{2n-2}>` in `V^{2n}`.
pub fn vd_surface_tau(n: usize) -> Vec<usize> {
    let m = 2 * n + 1;
    let mut tau: Vec<usize> = (0..n - 1).collect();
    tau.extend((n - 1..2 * n - 2).map(|j| m + j));
    tau
}

/// Ray indices of `<x_1..x_{d-2}>` in `Ṽ^d`.
pub fn tilde_v_surface_tau(dim: usize) -> Vec<usize> {
    (0..dim - 2).collect()
}

/// Ṽ² and V² are the del Pezzo surfaces of degree 7 and 6, neither of which
/// is ch₂-positive. Recorded as a fact rather than computed.
pub const PSEUDO_SYMMETRIC_SURFACES_NOT_CH2_POSITIVE: bool = true;
