//! Per-fan verdicts and batch orchestration.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ch2::scan_surfaces;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::generators::{gen_rays, v_d_closed_form, vd_surface_tau, BuiltinFamily};
use crate::linalg::{det_of_vectors, solve_linear, LatticeVector, RationalMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Ch2PositiveProjectiveSpace,
    NotCh2Positive,
    Undetermined,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ch2PositiveProjectiveSpace => "Ch2Positive_ProjectiveSpace",
            Status::NotCh2Positive => "NotCh2Positive",
            Status::Undetermined => "Undetermined",
        }
    }

    /// What the reference polymake script prints for this outcome. It only
    /// knows about Picard-two witnesses, so projective space and the
    /// `V^d` pattern both fall into its second message.
    pub fn script_message(self, has_rho2_witness: bool) -> &'static str {
        if has_rho2_witness {
            "not ch_2-positive"
        } else {
            "cannot determine via surfaces of Picard number two"
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fingerprint {
    ProjectiveSpace,
    VdPattern,
    TildeVdPattern,
}

impl Fingerprint {
    pub fn as_str(self) -> &'static str {
        match self {
            Fingerprint::ProjectiveSpace => "ProjectiveSpace",
            Fingerprint::VdPattern => "VdPattern",
            Fingerprint::TildeVdPattern => "TildeVdPattern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub id: String,
    pub dim: usize,
    pub n_rays: usize,
    pub n_maxcones: usize,
    pub status: Status,
    pub witness_tau: Option<Vec<usize>>,
    /// `2 ch_2(X) . S` for the witness surface.
    pub witness_value: Option<BigInt>,
    pub fingerprints: BTreeSet<Fingerprint>,
    /// The witness comes from a Picard-two surface found by the scanner.
    pub rho2_witness: bool,
    pub runtime_ms: u64,
}

impl ClassificationRecord {
    pub fn has_fingerprint(&self, f: Fingerprint) -> bool {
        self.fingerprints.contains(&f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Stop at the first surface with `2 ch_2 . S <= 0`.
    pub stop_at_first_witness: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { stop_at_first_witness: true }
    }
}

/// `d + 1` rays summing to zero with every `d`-subset unimodular.
pub fn detect_projective_space<T: Scalar>(fan: &Fan<T>) -> bool {
    let d = fan.dim();
    let rays = fan.rays();
    if rays.len() != d + 1 || !LatticeVector::sum(d, rays.iter()).is_zero() {
        return false;
    }
    (0..=d).all(|skip| {
        let subset: Vec<&LatticeVector<T>> =
            rays.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r).collect();
        det_of_vectors(&subset).abs().is_one()
    })
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn closed_under_negation<T: Scalar>(rays: &[LatticeVector<T>]) -> bool {
    let set: HashSet<&LatticeVector<T>> = rays.iter().collect();
    rays.iter().all(|r| set.contains(&-r))
}

/// Fingerprint of `V^d`: even `d`, `2d + 2` rays closed under negation, no
/// Picard-two surface, and `C(d+1, d/2) C(d/2+1, d/2)` maximal cones.
///
/// This is a combinatorial heuristic, not a lattice isomorphism test.
pub fn detect_vd_pattern<T: Scalar>(fan: &Fan<T>) -> Result<bool> {
    let d = fan.dim();
    if !d.is_multiple_of(2) || fan.rays().len() != 2 * d + 2 || !closed_under_negation(fan.rays()) {
        return Ok(false);
    }
    let n = d / 2;
    if fan.max_cones().len() != binom(d + 1, n) * binom(n + 1, n) {
        return Ok(false);
    }
    Ok(fan.picard_two_faces()?.is_empty())
}

/// Fingerprint of `Ṽ^d`: even `d`, `2d + 1` rays of which `2d` form `d`
/// antipodal pairs, and the remaining ray is `-Σ ±p_i` over one ray `p_i`
/// from each pair.
pub fn detect_tilde_vd_pattern<T: Scalar>(fan: &Fan<T>) -> bool {
    let d = fan.dim();
    let rays = fan.rays();
    if !d.is_multiple_of(2) || rays.len() != 2 * d + 1 {
        return false;
    }
    let set: HashSet<&LatticeVector<T>> = rays.iter().collect();
    let unpaired: Vec<&LatticeVector<T>> = rays.iter().filter(|r| !set.contains(&-*r)).collect();
    let [odd] = unpaired[..] else {
        return false;
    };
    let mut reps: Vec<&LatticeVector<T>> = Vec::with_capacity(d);
    for r in rays {
        if r != odd && !reps.iter().any(|p| *p == r || **p == -r) {
            reps.push(r);
        }
    }
    if reps.len() != d {
        return false;
    }
    let Ok(m) = RationalMatrix::from_columns(&reps) else {
        return false;
    };
    match solve_linear(&m, &-odd) {
        Ok(coef) => coef.iter().all(|c| c.is_integer() && c.to_integer().abs().is_one()),
        Err(_) => false,
    }
}

/// If the fan has exactly the builtin `V^d` rays, the indices of the surface
/// used in the closed-form computation.
fn builtin_vd_tau<T: Scalar>(fan: &Fan<T>) -> Option<Vec<usize>> {
    let d = fan.dim();
    let builtin = BuiltinFamily::v(d).ok()?;
    let rays = gen_rays::<T>(&builtin);
    let mut tau: Vec<usize> = vd_surface_tau(d / 2)
        .into_iter()
        .map(|i| fan.ray_index(&rays[i]))
        .collect::<Option<_>>()?;
    if rays.iter().any(|r| fan.ray_index(r).is_none()) {
        return None;
    }
    tau.sort_unstable();
    Some(tau)
}

fn to_bigint<T: Scalar>(v: &T) -> BigInt {
    v.to_i128()
        .map(BigInt::from)
        .unwrap_or_else(|| v.to_string().parse().expect("integer display parses"))
}

pub fn classify<T: Scalar>(fan: &Fan<T>, id: &str) -> Result<ClassificationRecord> {
    classify_with(fan, id, ClassifyOptions::default())
}

/// Scan for a non-positive Picard-two surface; failing that, recognise
/// projective space or the `V^d` pattern; otherwise undetermined.
pub fn classify_with<T: Scalar>(fan: &Fan<T>, id: &str, opts: ClassifyOptions) -> Result<ClassificationRecord> {
    let start = Instant::now();
    let d = fan.dim();
    if d < 3 {
        return Err(Error::DimensionTooSmall(d));
    }
    fan.validate_smooth()?;
    fan.validate_walls()?;

    let scanned = scan_surfaces(fan, opts.stop_at_first_witness)?;
    let witness = scanned
        .iter()
        .filter(|s| !s.value.is_positive())
        .min_by(|a, b| a.face.ray_indices.cmp(&b.face.ray_indices));

    let mut fingerprints = BTreeSet::new();
    if detect_projective_space(fan) {
        fingerprints.insert(Fingerprint::ProjectiveSpace);
    }
    let vd = if scanned.is_empty() { detect_vd_pattern(fan)? } else { false };
    if vd {
        fingerprints.insert(Fingerprint::VdPattern);
    }
    if detect_tilde_vd_pattern(fan) {
        fingerprints.insert(Fingerprint::TildeVdPattern);
    }

    let (status, witness_tau, witness_value, rho2) = if let Some(w) = witness {
        (Status::NotCh2Positive, Some(w.face.ray_indices.clone()), Some(to_bigint(&w.value)), true)
    } else if fingerprints.contains(&Fingerprint::ProjectiveSpace) {
        (Status::Ch2PositiveProjectiveSpace, None, None, false)
    } else if vd {
        let value = v_d_closed_form::<BigInt>(d / 2)?;
        (Status::NotCh2Positive, builtin_vd_tau(fan), Some(value), false)
    } else {
        (Status::Undetermined, None, None, false)
    };

    Ok(ClassificationRecord {
        id: id.to_string(),
        dim: d,
        n_rays: fan.rays().len(),
        n_maxcones: fan.max_cones().len(),
        status,
        witness_tau,
        witness_value,
        fingerprints,
        rho2_witness: rho2,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// One input to a batch: its id and either a fan or the error that
/// prevented building one.
pub struct BatchItem<T = BigInt> {
    pub id: String,
    pub fan: Result<Fan<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordError {
    pub id: String,
    pub error: Error,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub projective_space: usize,
    pub not_positive: usize,
    pub not_positive_rho2: usize,
    pub not_positive_vd: usize,
    pub undetermined: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    /// One entry per input, in input order.
    pub records: Vec<std::result::Result<ClassificationRecord, RecordError>>,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r {
                Err(_) => s.errors += 1,
                Ok(rec) => match rec.status {
                    Status::Ch2PositiveProjectiveSpace => s.projective_space += 1,
                    Status::Undetermined => s.undetermined += 1,
                    Status::NotCh2Positive => {
                        s.not_positive += 1;
                        if rec.rho2_witness {
                            s.not_positive_rho2 += 1;
                        } else {
                            s.not_positive_vd += 1;
                        }
                    }
                },
            }
        }
        s
    }

    pub fn ok_records(&self) -> impl Iterator<Item = &ClassificationRecord> {
        self.records.iter().filter_map(|r| r.as_ref().ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = &RecordError> {
        self.records.iter().filter_map(|r| r.as_ref().err())
    }
}

/// Classifies every item on a pool of `jobs` threads; output order is input
/// order whatever `jobs` is.
pub fn batch_classify<T: Scalar>(items: Vec<BatchItem<T>>, jobs: usize, opts: ClassifyOptions) -> Result<Report> {
    let run = |item: &BatchItem<T>| match &item.fan {
        Ok(fan) => classify_with(fan, &item.id, opts)
            .map_err(|error| RecordError { id: item.id.clone(), error }),
        Err(e) => Err(RecordError { id: item.id.clone(), error: e.clone() }),
    };
    let records = if jobs <= 1 {
        items.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::WorkerPool(e.to_string()))?;
        pool.install(|| items.par_iter().map(run).collect())
    };
    Ok(Report { records })
}
