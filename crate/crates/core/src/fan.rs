//! Complete simplicial fans given by primitive rays and maximal cones.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{det_of_vectors, LatticeVector};
use crate::scalar::Scalar;

/// A fan `Σ` in `Z^dim`. Rays are the primitive generators `G(Σ)`; every
/// maximal cone is a sorted list of `dim` ray indices, and the cone list
/// itself is sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan<T = BigInt> {
    dim: usize,
    rays: Vec<LatticeVector<T>>,
    max_cones: Vec<Vec<usize>>,
}

/// A codimension-two cone `τ` and the maximal cones containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codim2Face {
    /// Sorted ray indices of `τ`.
    pub ray_indices: Vec<usize>,
    /// Indices into [`Fan::max_cones`], ascending.
    pub star: Vec<usize>,
}

impl Codim2Face {
    pub fn picard_number(&self) -> usize {
        self.star.len().saturating_sub(2)
    }
}

impl<T: Scalar> Fan<T> {
    pub fn new(dim: usize, rays: Vec<LatticeVector<T>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
            if !r.is_primitive() {
                return Err(Error::NonPrimitiveRay { index: i });
            }
            if !seen.insert(r) {
                return Err(Error::InvalidFan(format!("ray {r} listed twice")));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for mut cone in max_cones {
            cone.sort_unstable();
            if cone.len() != dim {
                let size = cone.len();
                return Err(Error::NonSimplicialCone { cone, size, dim });
            }
            if cone.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {cone:?} repeats a ray")));
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of range")));
            }
            cones.push(cone);
        }
        cones.sort_unstable();
        if let Some(w) = cones.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidFan(format!("cone {:?} listed twice", w[0])));
        }
        Ok(Fan { dim, rays, max_cones: cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector<T>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_rays(&self, cone: &[usize]) -> Vec<&LatticeVector<T>> {
        cone.iter().map(|&i| &self.rays[i]).collect()
    }

    pub fn cone_determinant(&self, cone: &[usize]) -> T {
        det_of_vectors(&self.cone_rays(cone))
    }

    /// Every maximal cone unimodular; reports the first offender otherwise.
    pub fn validate_smooth(&self) -> Result<()> {
        for cone in &self.max_cones {
            let det = self.cone_determinant(cone);
            if !det.abs().is_one() {
                return Err(Error::NonSmoothCone { cone: cone.clone(), det: det.to_string() });
            }
        }
        Ok(())
    }

    pub fn is_smooth(&self) -> bool {
        self.validate_smooth().is_ok()
    }

    /// Each wall (facet of a maximal cone) lies in exactly two maximal cones.
    pub fn validate_walls(&self) -> Result<()> {
        let mut walls: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for cone in &self.max_cones {
            for skip in 0..cone.len() {
                let wall: Vec<usize> =
                    cone.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &r)| r).collect();
                *walls.entry(wall).or_insert(0) += 1;
            }
        }
        match walls.into_iter().find(|&(_, c)| c != 2) {
            Some((wall, count)) => Err(Error::WallDefect { wall, count }),
            None => Ok(()),
        }
    }

    pub fn walls_ok(&self) -> bool {
        self.validate_walls().is_ok()
    }

    /// All `(d-2)`-cones with their stars, in lexicographic order of `τ`.
    pub fn enumerate_codim2(&self) -> Result<Vec<Codim2Face>> {
        if self.dim < 3 {
            return Err(Error::DimensionTooSmall(self.dim));
        }
        let mut faces: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for a in 0..cone.len() {
                for b in a + 1..cone.len() {
                    let tau: Vec<usize> = cone
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != a && j != b)
                        .map(|(_, &r)| r)
                        .collect();
                    faces.entry(tau).or_default().push(ci);
                }
            }
        }
        Ok(faces
            .into_iter()
            .map(|(ray_indices, star)| Codim2Face { ray_indices, star })
            .collect())
    }

    /// Codimension-two faces whose star has exactly four maximal cones,
    /// i.e. torus-invariant surfaces of Picard number two.
    pub fn picard_two_faces(&self) -> Result<Vec<Codim2Face>> {
        Ok(self.enumerate_codim2()?.into_iter().filter(|f| f.star.len() == 4).collect())
    }

    /// Rays of the star of `face` that are not in `τ`, ascending.
    pub fn star_extra_rays(&self, face: &Codim2Face) -> Vec<usize> {
        let mut extra: Vec<usize> = face
            .star
            .iter()
            .flat_map(|&c| self.max_cones[c].iter().copied())
            .filter(|r| face.ray_indices.binary_search(r).is_err())
            .collect();
        extra.sort_unstable();
        extra.dedup();
        extra
    }

    /// Same ray set and same maximal cones, regardless of ray numbering.
    pub fn is_equivalent_to(&self, other: &Fan<T>) -> bool {
        if self.dim != other.dim || self.rays.len() != other.rays.len() {
            return false;
        }
        fn canon<T: Scalar>(f: &Fan<T>) -> (Vec<&LatticeVector<T>>, Vec<Vec<&LatticeVector<T>>>) {
            let mut cones: Vec<Vec<&LatticeVector<T>>> = f
                .max_cones
                .iter()
                .map(|c| {
                    let mut rs = f.cone_rays(c);
                    rs.sort();
                    rs
                })
                .collect();
            cones.sort();
            let mut rays: Vec<&LatticeVector<T>> = f.rays.iter().collect();
            rays.sort();
            (rays, cones)
        }
        canon(self) == canon(other)
    }

    /// Index of a ray, if present.
    pub fn ray_index(&self, ray: &LatticeVector<T>) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }
}
