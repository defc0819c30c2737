//! `2 ch_2(X) . S_τ` by intersection theory on the toric surface `S_τ`.
//!
//! The star of `τ` projects to a complete smooth fan in `N / span(τ)` whose
//! rays `y_1..y_k`, taken in cyclic order, give the boundary curves `C_j`
//! with `C_j^2 = -b_j` where `p_{j-1} + p_{j+1} = b_j p_j`. On `S_τ` the
//! divisor `D_y` restricts to `C_j`, a divisor `D_x` with `x ∈ τ` restricts to
//! `-Σ_j <m_x, y_j> C_j` for the dual basis vector `m_x`, and every other
//! divisor restricts to zero. Then `2 ch_2 . S = Σ_ρ (D_ρ|_S)^2`.
//!
//! Works for any star size, not only Picard number two.

use super::ilin::{columns, mat_vec, unimodular_inverse, Point};

pub fn surface_ch2(rays: &[Point], cones: &[Vec<usize>], tau: &[usize]) -> i64 {
    let d = rays[0].len();
    assert_eq!(tau.len(), d - 2);
    let pairs: Vec<[usize; 2]> = cones
        .iter()
        .filter(|c| tau.iter().all(|t| c.contains(t)))
        .map(|c| {
            let e: Vec<usize> = c.iter().copied().filter(|r| !tau.contains(r)).collect();
            [e[0], e[1]]
        })
        .collect();
    assert!(pairs.len() >= 3, "star of {tau:?} is not a complete surface fan");

    // walk the cycle
    let mut cycle = vec![pairs[0][0], pairs[0][1]];
    while cycle.len() < pairs.len() {
        let last = cycle[cycle.len() - 1];
        let prev = cycle[cycle.len() - 2];
        let next = pairs
            .iter()
            .find_map(|p| {
                if p[0] == last && p[1] != prev {
                    Some(p[1])
                } else if p[1] == last && p[0] != prev {
                    Some(p[0])
                } else {
                    None
                }
            })
            .expect("cycle continues");
        cycle.push(next);
    }
    let k = cycle.len();

    let mut basis: Vec<&Point> = tau.iter().map(|&i| &rays[i]).collect();
    basis.push(&rays[cycle[0]]);
    basis.push(&rays[cycle[1]]);
    let inv = unimodular_inverse(&columns(&basis));
    let coords: Vec<Point> = cycle.iter().map(|&y| mat_vec(&inv, &rays[y])).collect();
    let proj: Vec<[i64; 2]> = coords.iter().map(|c| [c[d - 2], c[d - 1]]).collect();

    let b: Vec<i64> = (0..k)
        .map(|j| {
            let (l, m, r) = (proj[(j + k - 1) % k], proj[j], proj[(j + 1) % k]);
            let s = [l[0] + r[0], l[1] + r[1]];
            let i = if m[0] != 0 { 0 } else { 1 };
            let bj = s[i] / m[i];
            assert_eq!([bj * m[0], bj * m[1]], s, "star is not smooth");
            bj
        })
        .collect();
    let inter = |i: usize, j: usize| -> i64 {
        if i == j {
            -b[i]
        } else if (i + 1) % k == j || (j + 1) % k == i {
            1
        } else {
            0
        }
    };
    let square = |a: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..k {
            for j in 0..k {
                s += a[i] * a[j] * inter(i, j);
            }
        }
        s
    };

    let mut total: i64 = (0..k).map(|j| -b[j]).sum();
    for xi in 0..d - 2 {
        let a: Vec<i64> = coords.iter().map(|c| -c[xi]).collect();
        total += square(&a);
    }
    total
}
