//! Lattice polytopes, exact facet enumeration, polar duality and the two
//! routes from a polytope to a fan.
//!
//! The hull is an incremental beneath-beyond construction over the integers.
//! Points are inserted in input order on top of the first `d + 1` affinely
//! independent ones; the boundary is kept as a triangulation and coplanar
//! pieces are merged into true facets at the end by their (primitive) normal.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{hyperplane_normal, rank, LatticeVector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope<T = BigInt> {
    dim: usize,
    vertices: Vec<LatticeVector<T>>,
}

impl<T: Scalar> LatticePolytope<T> {
    /// Builds `conv(vertices)`; points must share dimension `dim` and be distinct.
    pub fn new(dim: usize, vertices: Vec<LatticeVector<T>>) -> Result<Self> {
        let mut seen: HashMap<&LatticeVector<T>, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            if let Some(&first) = seen.get(v) {
                return Err(Error::DuplicateVertex { first, second: i });
            }
            seen.insert(v, i);
        }
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn from_i64s(dim: usize, vertices: &[&[i64]]) -> Result<Self> {
        Self::new(dim, vertices.iter().map(|v| LatticeVector::from_i64s(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticeVector<T>] {
        &self.vertices
    }

    /// Dimension of the affine span of the points.
    pub fn affine_rank(&self) -> usize {
        let Some(base) = self.vertices.first() else {
            return 0;
        };
        let diffs: Vec<Vec<T>> =
            self.vertices[1..].iter().map(|v| (v - base).into_coords()).collect();
        rank(&diffs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_rank() == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<T = BigInt> {
    /// Outward primitive normal.
    pub normal: LatticeVector<T>,
    pub rhs: T,
    /// Indices of the input points with `normal . p == rhs`, ascending.
    pub incidence: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetList<T = BigInt> {
    pub dim: usize,
    /// Sorted by normal.
    pub facets: Vec<Facet<T>>,
    /// Indices of the input points that are vertices of the hull, ascending.
    pub vertices: Vec<usize>,
}

impl<T: Scalar> FacetList<T> {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.rhs.is_positive())
    }
}

struct Simplex<T> {
    points: Vec<usize>,
    normal: LatticeVector<T>,
    rhs: T,
}

/// Hyperplane through the given points, oriented so that `interior_sum / k`
/// lies strictly on the negative side.
fn oriented_simplex<T: Scalar>(
    pts: &[LatticeVector<T>],
    mut points: Vec<usize>,
    interior_sum: &LatticeVector<T>,
    k: &T,
) -> Simplex<T> {
    points.sort_unstable();
    let refs: Vec<&LatticeVector<T>> = points.iter().map(|&i| &pts[i]).collect();
    let normal = hyperplane_normal(&refs).expect("boundary simplex is non-degenerate");
    let rhs = normal.dot(&pts[points[0]]);
    let side = normal.dot(interior_sum) - k.clone() * rhs.clone();
    debug_assert!(!side.is_zero(), "interior point on a boundary hyperplane");
    if side.is_positive() {
        Simplex { points, normal: -&normal, rhs: -rhs }
    } else {
        Simplex { points, normal, rhs }
    }
}

/// Complete, irredundant facet list of `conv(P)` with exact incidences.
pub fn facet_enumeration<T: Scalar>(p: &LatticePolytope<T>) -> Result<FacetList<T>> {
    let d = p.dim;
    let pts = &p.vertices;
    if d == 0 || pts.is_empty() {
        return Err(Error::DegeneratePolytope { rank: 0, dim: d });
    }

    // first d+1 affinely independent points in input order
    let mut initial = vec![0usize];
    let mut diffs: Vec<Vec<T>> = Vec::new();
    for (i, v) in pts.iter().enumerate().skip(1) {
        if initial.len() == d + 1 {
            break;
        }
        diffs.push((v - &pts[0]).into_coords());
        if rank(&diffs) == diffs.len() {
            initial.push(i);
        } else {
            diffs.pop();
        }
    }
    if initial.len() < d + 1 {
        return Err(Error::DegeneratePolytope { rank: initial.len() - 1, dim: d });
    }

    let k = T::from_int(d as i64 + 1);
    let interior_sum = LatticeVector::sum(d, initial.iter().map(|&i| &pts[i]));

    let mut hull: Vec<Simplex<T>> = (0..=d)
        .map(|skip| {
            let face = initial.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
            oriented_simplex(pts, face, &interior_sum, &k)
        })
        .collect();

    for (i, point) in pts.iter().enumerate() {
        if initial.contains(&i) {
            continue;
        }
        let (visible, kept): (Vec<_>, Vec<_>) =
            hull.into_iter().partition(|s| s.normal.dot(point) > s.rhs);
        hull = kept;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &visible {
            for skip in 0..d {
                let ridge: Vec<usize> =
                    s.points.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> =
            ridges.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
        horizon.sort_unstable();
        for mut ridge in horizon {
            ridge.push(i);
            hull.push(oriented_simplex(pts, ridge, &interior_sum, &k));
        }
    }

    let mut grouped: BTreeMap<LatticeVector<T>, T> = BTreeMap::new();
    for s in hull {
        grouped.entry(s.normal).or_insert(s.rhs);
    }
    let facets: Vec<Facet<T>> = grouped
        .into_iter()
        .map(|(normal, rhs)| {
            let incidence = pts
                .iter()
                .enumerate()
                .filter(|(_, v)| normal.dot(v) == rhs)
                .map(|(j, _)| j)
                .collect();
            Facet { normal, rhs, incidence }
        })
        .collect();

    let vertices = (0..pts.len())
        .filter(|&j| {
            let normals: Vec<Vec<T>> = facets
                .iter()
                .filter(|f| f.incidence.binary_search(&j).is_ok())
                .map(|f| f.normal.coords().to_vec())
                .collect();
            normals.len() >= d && rank(&normals) == d
        })
        .collect();

    Ok(FacetList { dim: d, facets, vertices })
}

/// Origin interior and every facet at lattice distance one.
pub fn is_reflexive<T: Scalar>(_p: &LatticePolytope<T>, f: &FacetList<T>) -> bool {
    !f.is_empty() && f.facets.iter().all(|facet| facet.rhs.is_one() && facet.normal.is_primitive())
}

fn require_reflexive<T: Scalar>(f: &FacetList<T>) -> Result<()> {
    if !f.origin_is_interior() {
        return Err(Error::NotReflexive("origin is not interior".into()));
    }
    if let Some(bad) = f.facets.iter().find(|facet| !facet.rhs.is_one()) {
        return Err(Error::NotReflexive(format!(
            "facet {} <= {} is not at lattice distance 1",
            bad.normal, bad.rhs
        )));
    }
    Ok(())
}

/// Vertices of the polar dual `Q*`, i.e. the facet normals of `Q`.
pub fn polar_dual_vertices<T: Scalar>(
    _q: &LatticePolytope<T>,
    f: &FacetList<T>,
) -> Result<Vec<LatticeVector<T>>> {
    require_reflexive(f)?;
    Ok(f.facets.iter().map(|facet| facet.normal.clone()).collect())
}

/// Normal fan of a reflexive polytope `Q`: rays are the facet normals, and
/// each vertex of `Q` contributes the cone of the facets through it.
pub fn fan_from_dual<T: Scalar>(q: &LatticePolytope<T>) -> Result<Fan<T>> {
    let f = facet_enumeration(q)?;
    require_reflexive(&f)?;
    let d = q.dim();
    let rays: Vec<LatticeVector<T>> = f.facets.iter().map(|facet| facet.normal.clone()).collect();
    let mut cones = Vec::with_capacity(f.vertices.len());
    for &v in &f.vertices {
        let cone: Vec<usize> = f
            .facets
            .iter()
            .enumerate()
            .filter(|(_, facet)| facet.incidence.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect();
        if cone.len() != d {
            let size = cone.len();
            return Err(Error::NonSimplicialCone { cone, size, dim: d });
        }
        cones.push(cone);
    }
    Fan::new(d, rays, cones)
}

/// Face fan of a fan polytope `P = conv(G)`: rays are the vertices of `P`
/// in input order, maximal cones are its facets.
pub fn fan_from_fan_polytope<T: Scalar>(p: &LatticePolytope<T>) -> Result<Fan<T>> {
    let f = facet_enumeration(p)?;
    if !f.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let d = p.dim();
    let mut ray_of_point = vec![usize::MAX; p.vertices().len()];
    let mut rays = Vec::with_capacity(f.vertices.len());
    for (r, &v) in f.vertices.iter().enumerate() {
        if !p.vertices()[v].is_primitive() {
            return Err(Error::NonPrimitiveRay { index: v });
        }
        ray_of_point[v] = r;
        rays.push(p.vertices()[v].clone());
    }
    let mut cones = Vec::with_capacity(f.len());
    for facet in &f.facets {
        let cone: Vec<usize> = facet
            .incidence
            .iter()
            .map(|&j| ray_of_point[j])
            .filter(|&r| r != usize::MAX)
            .collect();
        if cone.len() != d {
            let size = cone.len();
            return Err(Error::NonSimplicialCone { cone, size, dim: d });
        }
        cones.push(cone);
    }
    Fan::new(d, rays, cones)
}
