//! The intersection number `2 ch_2(X) . S` for torus-invariant surfaces of
//! Picard number two.
//!
//! For a face `τ = <x_1..x_{d-2}>` whose star is the four cones
//! `τ+<y1,y3>`, `τ+<y2,y3>`, `τ+<y1,y4>`, `τ+<y2,y4>`, the wall relations
//!
//! ```text
//! y1 + y2 + c3 y3 + Σ a_i x_i = 0
//! y3 + y4 + c1 y1 + Σ e_i x_i = 0
//! ```
//!
//! give
//!
//! ```text
//! 2 ch_2(X) . S = -c1 (2 + c3² + Σ a_i²) + 2 (c1 + c3 + Σ a_i e_i) - c3 (2 + c1² + Σ e_i²)
//! ```

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fan::{Codim2Face, Fan};
use crate::linalg::{solve_linear, LatticeVector, RationalMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceStar<T = BigInt> {
    pub tau: Codim2Face,
    /// Generators `x_1..x_{d-2}` of `τ`.
    pub x: Vec<LatticeVector<T>>,
    /// `[y1, y2, y3, y4]`.
    pub y: [LatticeVector<T>; 4],
    /// Ray indices of `[y1, y2, y3, y4]`.
    pub y_indices: [usize; 4],
}

impl<T: Scalar> SurfaceStar<T> {
    pub fn y1(&self) -> &LatticeVector<T> {
        &self.y[0]
    }
    pub fn y2(&self) -> &LatticeVector<T> {
        &self.y[1]
    }
    pub fn y3(&self) -> &LatticeVector<T> {
        &self.y[2]
    }
    pub fn y4(&self) -> &LatticeVector<T> {
        &self.y[3]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCoefficients<T = BigInt> {
    pub c3: T,
    pub a: Vec<T>,
    pub c1: T,
    pub e: Vec<T>,
}

/// Which star cone plays `σ1` and in which order its two extra rays are
/// taken as `(y1, y3)`. The default picks the lexicographically first cone
/// and ascending ray order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StarChoice {
    /// Position within `tau.star` (0..4).
    pub first_cone: usize,
    pub swap: bool,
}

impl StarChoice {
    pub fn all() -> impl Iterator<Item = StarChoice> {
        (0..4).flat_map(|first_cone| [false, true].map(|swap| StarChoice { first_cone, swap }))
    }
}

fn extra_rays(cone: &[usize], base: &[usize]) -> Vec<usize> {
    cone.iter().copied().filter(|r| !base.contains(r)).collect()
}

pub fn build_star<T: Scalar>(fan: &Fan<T>, tau: &Codim2Face) -> Result<SurfaceStar<T>> {
    build_star_with(fan, tau, StarChoice::default())
}

/// Reconstructs `y1..y4` around a Picard-two face.
pub fn build_star_with<T: Scalar>(
    fan: &Fan<T>,
    tau: &Codim2Face,
    choice: StarChoice,
) -> Result<SurfaceStar<T>> {
    if tau.star.len() != 4 {
        return Err(Error::MalformedStar(format!(
            "face {:?} lies in {} maximal cones, expected 4",
            tau.ray_indices,
            tau.star.len()
        )));
    }
    if choice.first_cone >= 4 {
        return Err(Error::MalformedStar(format!("no star cone at position {}", choice.first_cone)));
    }
    let cones = fan.max_cones();
    let base = &tau.ray_indices;
    let first = tau.star[choice.first_cone];
    let pair = extra_rays(&cones[first], base);
    if pair.len() != 2 {
        return Err(Error::MalformedStar(format!("cone {:?} does not contain {:?}", cones[first], base)));
    }
    let (y1, y3) = if choice.swap { (pair[1], pair[0]) } else { (pair[0], pair[1]) };

    // the other star cone through tau + <pivot>, and its remaining ray
    let across = |pivot: usize, exclude: usize| -> Result<usize> {
        let mut found = tau.star.iter().filter(|&&c| c != first).filter_map(|&c| {
            let extra = extra_rays(&cones[c], base);
            extra.contains(&pivot).then(|| extra.into_iter().find(|&r| r != pivot))
        });
        match (found.next(), found.next()) {
            (Some(Some(r)), None) if r != exclude => Ok(r),
            _ => Err(Error::MalformedStar(format!(
                "wall {:?}+{pivot} is not shared by exactly two star cones",
                base
            ))),
        }
    };
    let y2 = across(y3, y1)?;
    let y4 = across(y1, y3)?;
    if y2 == y4 {
        return Err(Error::MalformedStar(format!("face {:?}: y2 and y4 coincide", base)));
    }
    let closing = tau.star.iter().any(|&c| {
        let extra = extra_rays(&cones[c], base);
        extra.contains(&y2) && extra.contains(&y4)
    });
    if !closing {
        return Err(Error::MalformedStar(format!("face {:?}: no cone over y2, y4", base)));
    }

    let rays = fan.rays();
    Ok(SurfaceStar {
        tau: tau.clone(),
        x: base.iter().map(|&i| rays[i].clone()).collect(),
        y: [rays[y1].clone(), rays[y2].clone(), rays[y3].clone(), rays[y4].clone()],
        y_indices: [y1, y2, y3, y4],
    })
}

/// Solves `lead + other_coef * other + Σ coef_i x_i = -opposite` and
/// returns `[coef_lead, other_coef, coef_x...]`, which must be integral
/// with `coef_lead == 1`.
fn solve_wall<T: Scalar>(
    lead: &LatticeVector<T>,
    other: &LatticeVector<T>,
    x: &[LatticeVector<T>],
    opposite: &LatticeVector<T>,
) -> Result<Vec<T>> {
    let mut columns = vec![lead, other];
    columns.extend(x.iter());
    let m = RationalMatrix::from_columns(&columns)?;
    let coef = solve_linear(&m, &-opposite)?;
    let coef: Vec<T> = coef
        .into_iter()
        .map(|q: Ratio<T>| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::InconsistentWall(format!("non-integral coefficient {q}")))
            }
        })
        .collect::<Result<_>>()?;
    if !coef[0].is_one() {
        return Err(Error::InconsistentWall(format!(
            "leading coefficient is {}, expected 1",
            coef[0]
        )));
    }
    Ok(coef)
}

pub fn wall_coefficients<T: Scalar>(star: &SurfaceStar<T>) -> Result<WallCoefficients<T>> {
    let first = solve_wall(star.y1(), star.y3(), &star.x, star.y2())?;
    let second = solve_wall(star.y3(), star.y1(), &star.x, star.y4())?;
    Ok(WallCoefficients {
        c3: first[1].clone(),
        a: first[2..].to_vec(),
        c1: second[1].clone(),
        e: second[2..].to_vec(),
    })
}

/// `(y1 + y2 + c3 y3 + Σ a_i x_i, y3 + y4 + c1 y1 + Σ e_i x_i)`; both are
/// zero for valid coefficients.
pub fn wall_residuals<T: Scalar>(
    star: &SurfaceStar<T>,
    w: &WallCoefficients<T>,
) -> (LatticeVector<T>, LatticeVector<T>) {
    let combine = |lead: &LatticeVector<T>, opp: &LatticeVector<T>, c: &T, other: &LatticeVector<T>, coef: &[T]| {
        let mut acc = &(lead + opp) + &other.scale(c);
        for (xi, ci) in star.x.iter().zip(coef) {
            acc = &acc + &xi.scale(ci);
        }
        acc
    };
    (
        combine(star.y1(), star.y2(), &w.c3, star.y3(), &w.a),
        combine(star.y3(), star.y4(), &w.c1, star.y1(), &w.e),
    )
}

/// `2 ch_2(X) . S` from the wall coefficients.
pub fn ch2_value<T: Scalar>(w: &WallCoefficients<T>) -> T {
    let two = T::from_int(2);
    let sq = |v: &[T]| v.iter().fold(T::zero(), |s, x| s + x.clone() * x.clone());
    let cross = w.a.iter().zip(&w.e).fold(T::zero(), |s, (a, e)| s + a.clone() * e.clone());
    let c1 = w.c1.clone();
    let c3 = w.c3.clone();
    -(c1.clone() * (two.clone() + c3.clone() * c3.clone() + sq(&w.a)))
        + two.clone() * (c1.clone() + c3.clone() + cross)
        - c3 * (two + c1.clone() * c1 + sq(&w.e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceValue<T = BigInt> {
    pub face: Codim2Face,
    /// `2 ch_2(X) . S_τ`.
    pub value: T,
}

pub fn surface_value<T: Scalar>(fan: &Fan<T>, face: &Codim2Face) -> Result<T> {
    surface_value_with(fan, face, StarChoice::default())
}

pub fn surface_value_with<T: Scalar>(fan: &Fan<T>, face: &Codim2Face, choice: StarChoice) -> Result<T> {
    let star = build_star_with(fan, face, choice)?;
    Ok(ch2_value(&wall_coefficients(&star)?))
}

/// Values for every Picard-two face in lexicographic order of `τ`. With
/// `stop_at_first_nonpositive` the scan ends after the first value `<= 0`.
pub fn scan_surfaces<T: Scalar>(fan: &Fan<T>, stop_at_first_nonpositive: bool) -> Result<Vec<SurfaceValue<T>>> {
    let mut out = Vec::new();
    for face in fan.picard_two_faces()? {
        let value = surface_value(fan, &face)?;
        let stop = stop_at_first_nonpositive && !value.is_positive();
        out.push(SurfaceValue { face, value });
        if stop {
            break;
        }
    }
    Ok(out)
}
