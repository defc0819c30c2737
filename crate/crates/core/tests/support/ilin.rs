//! Small-integer linear algebra for test oracles.

pub type Point = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Laplace expansion; fine for d <= 8.
pub fn det(m: &[Point]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for (j, &a) in m[0].iter().enumerate() {
        if a == 0 {
            continue;
        }
        let minor: Vec<Point> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        total += s * a * det(&minor);
    }
    total
}

/// Inverse of a unimodular integer matrix (rows), by adjugate.
pub fn unimodular_inverse(m: &[Point]) -> Vec<Point> {
    let n = m.len();
    let dm = det(m);
    assert!(dm.abs() == 1, "matrix is not unimodular");
    let mut inv = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Point> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = s * det(&minor) * dm;
        }
    }
    inv
}

/// Matrix with the given vectors as columns.
pub fn columns(cols: &[&Point]) -> Vec<Point> {
    let d = cols[0].len();
    (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

pub fn mat_vec(m: &[Point], v: &[i64]) -> Point {
    m.iter().map(|row| dot(row, v)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn primitive(v: &[i64]) -> Point {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    v.iter().map(|x| x / g).collect()
}

/// Rank by fraction-free elimination in `i128`.
pub fn rank(rows: &[Point]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = a * m[i][j] - b * m[r][j];
            }
            let g = m[i].iter().fold(0i128, |g, &x| {
                let (mut a, mut b) = (g.abs(), x.abs());
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                a
            });
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

/// Primitive normal and level of the affine hyperplane through `d` points,
/// if they are affinely independent.
pub fn hyperplane(points: &[&Point]) -> Option<(Point, i64)> {
    let d = points[0].len();
    let diffs: Vec<Point> = points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    let normal: Point = (0..d)
        .map(|i| {
            let mut m = diffs.clone();
            let mut e = vec![0; d];
            e[i] = 1;
            m.push(e);
            det(&m)
        })
        .collect();
    if normal.iter().all(|&x| x == 0) {
        return None;
    }
    let normal = primitive(&normal);
    let level = dot(&normal, points[0]);
    Some((normal, level))
}

/// All facets `(outer normal, level)` of `conv(points)`, sorted, by trying
/// every `d`-subset. Empty if the points are not full-dimensional.
pub fn brute_force_facets(points: &[Point]) -> Vec<(Point, i64)> {
    let d = points[0].len();
    let n = points.len();
    let mut out = std::collections::BTreeSet::new();
    if n < d {
        return vec![];
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let sel: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
        if let Some((u, h)) = hyperplane(&sel) {
            let vals: Vec<i64> = points.iter().map(|p| dot(&u, p)).collect();
            if vals.iter().all(|&v| v <= h) {
                out.insert((u, h));
            } else if vals.iter().all(|&v| v >= h) {
                out.insert((u.iter().map(|x| -x).collect(), -h));
            }
        }
        let mut k = d;
        loop {
            if k == 0 {
                return out.into_iter().collect();
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

/// Strict vertices of a planar point set (Andrew's monotone chain), sorted.
pub fn planar_hull_vertices(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &Point, a: &Point, b: &Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<Point> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull.sort();
    hull.dedup();
    hull
}

/// A random-looking unimodular matrix from a list of elementary operations.
pub fn unimodular_from_ops(d: usize, ops: &[(usize, usize, i64)], flips: &[bool]) -> Vec<Point> {
    let mut g: Vec<Point> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % d, j % d);
        if i != j {
            for c in 0..d {
                g[i][c] += k * g[j][c];
            }
        }
    }
    for (i, &f) in flips.iter().enumerate().take(d) {
        if f {
            g[i].iter_mut().for_each(|x| *x = -*x);
        }
    }
    g
}
