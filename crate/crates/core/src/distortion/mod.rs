//! The distortion method.
//!
//! Starting from the uniform measure `P_0` on `Z/QZ`, each prime `p_j` of
//! `Q` (in increasing order) yields a measure `P_j` that moves mass away
//! from `B_j`, the residues covered by classes whose modulus has largest
//! prime `p_j`. With `α_j` the share of each `Q_{j-1}`-fiber inside `B_j`,
//!
//! ```text
//! η = Σ_j min{ E_{j-1}[α_j], E_{j-1}[α_j²] / (4δ_j(1-δ_j)) }
//! ```
//!
//! and `η < 1` proves that the system leaves some integer uncovered.
//!
//! Measures are kept as fiber masses over `Z/Q_jZ`; all arithmetic is exact.

mod ap;
mod certificate;
mod ladder;
mod measure;
mod schedule;

use alloc::vec::Vec;

pub use ap::{ap_mass_bound_check, ApViolation};
pub use certificate::{Branch, Certificate, TermRecord, Verdict};
pub use ladder::PrimeLadder;
pub use measure::{level_set, moments, step_measure, Alpha, FiberMeasure, LevelSet};
pub use schedule::{default_delta_schedule, DeltaSchedule};

use crate::{CongruenceSystem, Error, Limits, Result};

/// Everything computed at one level `j`.
#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub level_set: LevelSet,
    pub alpha: Alpha,
    pub term: TermRecord,
}

/// The full sequence `P_0, ..., P_J` together with the per-level data.
#[derive(Clone, Debug)]
pub struct DistortionRun {
    pub ladder: PrimeLadder,
    pub schedule: DeltaSchedule,
    /// `measures[j]` is `P_j`.
    pub measures: Vec<FiberMeasure>,
    /// `levels[j - 1]` holds level `j`.
    pub levels: Vec<LevelTrace>,
}

impl DistortionRun {
    /// Runs the method and keeps every intermediate measure.
    pub fn trace(sys: &CongruenceSystem, schedule: &DeltaSchedule, limits: &Limits) -> Result<Self> {
        let ladder = prepare(sys, schedule, limits)?;
        let mut measures = alloc::vec![FiberMeasure::uniform()];
        let mut levels = Vec::with_capacity(ladder.len());
        for level in 1..=ladder.len() {
            let prev = measures.last().expect("P_0 is present");
            let (trace, next) = advance(sys, &ladder, schedule, prev, level, limits)?;
            levels.push(trace);
            measures.push(next);
        }
        Ok(Self {
            ladder,
            schedule: schedule.clone(),
            measures,
            levels,
        })
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::from_terms(self.levels.iter().map(|l| l.term.clone()).collect())
    }
}

fn prepare(sys: &CongruenceSystem, schedule: &DeltaSchedule, limits: &Limits) -> Result<PrimeLadder> {
    if let Some(c) = sys.classes().iter().find(|c| c.modulus() == 1) {
        return Err(Error::Domain(alloc::format!(
            "the distortion method needs every modulus >= 2, found {c}"
        )));
    }
    let ladder = PrimeLadder::new(sys.lcm_factorization()).map_err(|_| {
        Error::resource("distortion levels mod Q_j", sys.lcm_factorization(), limits.max_residues)
    })?;
    if schedule.len() != ladder.len() {
        return Err(Error::Domain(alloc::format!(
            "schedule has {} deltas but Q has {} distinct primes",
            schedule.len(),
            ladder.len()
        )));
    }
    if let Some(level) = (1..=ladder.len()).find(|&j| ladder.modulus(j) > limits.max_residues) {
        return Err(Error::resource(
            "distortion level mod Q_j",
            alloc::format!("Q_{level} = {}", ladder.modulus(level)),
            limits.max_residues,
        ));
    }
    Ok(ladder)
}

fn advance(
    sys: &CongruenceSystem,
    ladder: &PrimeLadder,
    schedule: &DeltaSchedule,
    prev: &FiberMeasure,
    level: usize,
    limits: &Limits,
) -> Result<(LevelTrace, FiberMeasure)> {
    let set = level_set(sys, ladder, level, limits)?;
    let alpha = Alpha::compute(&set, ladder);
    let (m1, m2) = moments(prev, &alpha)?;
    let delta = schedule.delta(level).clone();
    let next = step_measure(prev, &alpha, &delta, &set)?;
    let term = TermRecord::new(ladder.prime(level), ladder.exponent(level), delta, m1, m2);
    Ok((
        LevelTrace {
            level_set: set,
            alpha,
            term,
        },
        next,
    ))
}

/// Evaluates the distortion criterion for `sys` under `schedule`.
///
/// Only the current measure is kept in memory. When the verdict is
/// [`Verdict::NotCovering`] an uncovered residue is found by exhaustive
/// search and attached as the witness; if the search finds none the
/// computation is inconsistent and an error is returned.
pub fn certify(sys: &CongruenceSystem, schedule: &DeltaSchedule, limits: &Limits) -> Result<Certificate> {
    let ladder = prepare(sys, schedule, limits)?;
    let mut current = FiberMeasure::uniform();
    let mut terms = Vec::with_capacity(ladder.len());
    for level in 1..=ladder.len() {
        let (trace, next) = advance(sys, &ladder, schedule, &current, level, limits)?;
        terms.push(trace.term);
        // P_J is not needed for the last term
        if level < ladder.len() {
            current = next;
        }
    }
    let mut certificate = Certificate::from_terms(terms);
    if certificate.verdict == Verdict::NotCovering {
        let report = sys.covers_oracle(limits)?;
        if report.covers {
            return Err(Error::Inconsistent(alloc::format!(
                "eta = {} < 1 but the system covers every residue mod {}",
                certificate.eta,
                report.modulus
            )));
        }
        certificate.witness = report.witness;
    }
    Ok(certificate)
}
