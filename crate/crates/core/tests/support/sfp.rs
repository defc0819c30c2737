//! Enumerates smooth Fano polytopes (fan polytopes) by wall crossing.
//!
//! Every polytope is grown from the facet `conv(e_1..e_d)`, taken to be a
//! special facet, which every smooth Fano polytope has. The open ridge
//! with the smallest index set is always closed next, either with an existing
//! vertex or a new lattice point of the box `[-b, b]^d`. All cones are kept as
//! facets of the hull of the current vertices (every other vertex strictly
//! below the facet hyperplane), so a closed complex is the full boundary of a
//! smooth Fano polytope. Isomorphism classes are separated by a normal form
//! over all (facet, vertex order) bases.
//!
//! Plain `i64`, no library code: it only produces inputs.

use std::collections::{BTreeMap, BTreeSet};

use super::ilin::{det, dot, unimodular_inverse, Point};

/// `c` with `c . x = det(rows..., x)`.
fn cofactor_functional(rows: &[&Point], d: usize) -> Point {
    (0..d)
        .map(|i| {
            let mut m: Vec<Point> = rows.iter().map(|r| (*r).clone()).collect();
            let mut e = vec![0; d];
            e[i] = 1;
            m.push(e);
            det(&m)
        })
        .collect()
}

#[derive(Clone)]
struct Cone {
    verts: Vec<usize>,
    normal: Point,
}

struct Search {
    d: usize,
    box_points: Vec<Point>,
    verts: Vec<Point>,
    cones: Vec<Cone>,
    ridges: BTreeMap<Vec<usize>, Vec<usize>>,
    found: Vec<Vec<Point>>,
    max_verts: usize,
    /// Remaining `d + sum of coordinate sums` of the non-start vertices.
    budget: i64,
}

impl Search {
    fn add_cone(&mut self, c: Cone) {
        let idx = self.cones.len();
        for skip in 0..self.d {
            let r: Vec<usize> = c.verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            self.ridges.entry(r).or_default().push(idx);
        }
        self.cones.push(c);
    }

    fn pop_cone(&mut self) {
        let c = self.cones.pop().expect("cone stack");
        let idx = self.cones.len();
        for skip in 0..self.d {
            let r: Vec<usize> = c.verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let owners = self.ridges.get_mut(&r).expect("ridge");
            owners.retain(|&o| o != idx);
            if owners.is_empty() {
                self.ridges.remove(&r);
            }
        }
    }

    fn open_ridge(&self) -> Option<(Vec<usize>, usize)> {
        self.ridges.iter().find(|(_, o)| o.len() == 1).map(|(r, o)| (r.clone(), o[0]))
    }

    fn run(&mut self) {
        let Some((ridge, owner)) = self.open_ridge() else {
            self.found.push(self.verts.clone());
            return;
        };
        let cone = self.cones[owner].clone();
        let v = *cone.verts.iter().find(|x| !ridge.contains(x)).expect("opposite vertex");
        let rows: Vec<&Point> = ridge.iter().map(|&i| &self.verts[i]).collect();
        let c = cofactor_functional(&rows, self.d);
        let target = -dot(&c, &self.verts[v]);
        debug_assert!(target.abs() == 1);

        // Existing vertices.
        for w in 0..self.verts.len() {
            if cone.verts.contains(&w) || dot(&c, &self.verts[w]) != target {
                continue;
            }
            let t = (1 - dot(&cone.normal, &self.verts[w])) * target;
            let normal: Point = cone.normal.iter().zip(&c).map(|(u, ci)| u + t * ci).collect();
            let mut verts = ridge.clone();
            verts.push(w);
            verts.sort_unstable();
            if self.ridges_closed_by(&verts) && self.is_facet(&verts, &normal) {
                self.add_cone(Cone { verts, normal });
                self.run();
                self.pop_cone();
            }
        }

        if self.verts.len() >= self.max_verts {
            return;
        }
        // New vertices.
        for p in 0..self.box_points.len() {
            let w = &self.box_points[p];
            let cost = -w.iter().sum::<i64>();
            if cost > self.budget || dot(&c, w) != target || self.verts.contains(w) {
                continue;
            }
            if self.cones.iter().any(|k| dot(&k.normal, w) >= 1) {
                continue;
            }
            let t = (1 - dot(&cone.normal, w)) * target;
            let normal: Point = cone.normal.iter().zip(&c).map(|(u, ci)| u + t * ci).collect();
            let w = w.clone();
            self.verts.push(w);
            self.budget -= cost;
            let wi = self.verts.len() - 1;
            let mut verts = ridge.clone();
            verts.push(wi);
            if self.is_facet(&verts, &normal) {
                self.add_cone(Cone { verts, normal });
                self.run();
                self.pop_cone();
            }
            self.verts.pop();
            self.budget += cost;
        }
    }

    /// No ridge of the new cone may already be shared by two cones.
    fn ridges_closed_by(&self, verts: &[usize]) -> bool {
        (0..self.d).all(|skip| {
            let r: Vec<usize> = verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            self.ridges.get(&r).is_none_or(|o| o.len() < 2)
        })
    }

    fn is_facet(&self, verts: &[usize], normal: &[i64]) -> bool {
        self.verts.iter().enumerate().all(|(i, x)| verts.contains(&i) || dot(normal, x) < 1)
    }
}

/// Vertex sets of all smooth Fano polytopes having `conv(e_1..e_d)` as a
/// special facet (the vertex sum lies in its cone, so the other vertices have
/// coordinate sums adding up to at least `-d`), with every vertex in
/// `[-b, b]^d` and at most `max_verts` vertices. Not deduplicated.
pub fn grow_all(d: usize, b: i64, max_verts: usize) -> Vec<Vec<Point>> {
    let mut box_points = vec![vec![]];
    for _ in 0..d {
        box_points = box_points
            .into_iter()
            .flat_map(|p: Point| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    box_points.retain(|p| p.iter().any(|&x| x != 0) && gcd_all(p) == 1 && p.iter().sum::<i64>() < 1);
    let start: Vec<Point> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            e
        })
        .collect();
    let mut s = Search {
        d,
        box_points,
        verts: start,
        cones: vec![],
        ridges: BTreeMap::new(),
        found: vec![],
        max_verts,
        budget: d as i64,
    };
    s.add_cone(Cone { verts: (0..d).collect(), normal: vec![1; d] });
    s.run();
    s.found
}

fn gcd_all(p: &[i64]) -> i64 {
    p.iter().fold(0i64, |g, &x| {
        let (mut a, mut b) = (g.abs(), x.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    })
}

/// Facets of a smooth Fano polytope given by its vertices: the `d`-subsets
/// whose affine hull supports every other vertex strictly below level 1.
pub fn facets(verts: &[Point]) -> Vec<Vec<usize>> {
    let d = verts[0].len();
    let mut out = vec![];
    let n = verts.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let m: Vec<Point> = idx.iter().map(|&i| verts[i].clone()).collect();
        if det(&m).abs() == 1 {
            // normal u with m u = 1
            let inv = unimodular_inverse(&m);
            let u: Point = (0..d).map(|r| inv[r].iter().sum()).collect();
            if (0..n).all(|i| idx.contains(&i) || dot(&u, &verts[i]) < 1) {
                out.push(idx.clone());
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - d + k {
                idx[k] += 1;
                for j in k + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least sorted vertex list over all bases given by an
/// ordered facet.
pub fn normal_form(verts: &[Point]) -> Vec<Point> {
    let d = verts[0].len();
    let perms = permutations(d);
    let mut best: Option<Vec<Point>> = None;
    for f in facets(verts) {
        for p in &perms {
            // columns = facet vertices in order p; new coords = M^{-1} v
            let cols: Vec<&Point> = p.iter().map(|&k| &verts[f[k]]).collect();
            let m: Vec<Point> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            let inv = unimodular_inverse(&m);
            let mut img: Vec<Point> =
                verts.iter().map(|v| inv.iter().map(|row| dot(row, v)).collect()).collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.expect("at least one facet")
}

/// Isomorphism classes of smooth Fano `d`-polytopes found in the box, as
/// normal forms in sorted order.
pub fn classes(d: usize, b: i64, max_verts: usize) -> Vec<Vec<Point>> {
    let set: BTreeSet<Vec<Point>> = grow_all(d, b, max_verts).iter().map(|v| normal_form(v)).collect();
    set.into_iter().collect()
}

/// Facet normals of a smooth Fano polytope: the vertices of its reflexive
/// polar dual, the kind of polytope stored in the smooth Fano database.
pub fn dual_vertices(verts: &[Point]) -> Vec<Point> {
    let d = verts[0].len();
    let mut out: Vec<Point> = facets(verts)
        .iter()
        .map(|f| {
            let m: Vec<Point> = f.iter().map(|&i| verts[i].clone()).collect();
            let inv = unimodular_inverse(&m);
            (0..d).map(|r| inv[r].iter().sum()).collect()
        })
        .collect();
    out.sort();
    out
}
