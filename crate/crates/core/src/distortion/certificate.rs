use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Which side of `min{M1, M2/(4δ(1-δ))}` produced a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    FirstMoment,
    SecondMoment,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::FirstMoment => "first-moment",
            Branch::SecondMoment => "second-moment",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `η < 1`: the system provably misses some integer.
    NotCovering,
    /// `η >= 1`: the criterion says nothing.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotCovering => "NotCovering",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// The contribution of one prime `p_j` to `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRecord {
    pub prime: u64,
    pub exponent: u32,
    pub delta: BigRational,
    /// `E_{j-1}[α_j]`.
    pub m1: BigRational,
    /// `E_{j-1}[α_j^2]`.
    pub m2: BigRational,
    /// `M2 / (4δ(1-δ))`; `None` stands for `+∞` when `δ = 0`.
    pub second_moment_bound: Option<BigRational>,
    pub term: BigRational,
    pub branch: Branch,
}

impl TermRecord {
    pub fn new(prime: u64, exponent: u32, delta: BigRational, m1: BigRational, m2: BigRational) -> Self {
        let second_moment_bound = if delta.is_zero() {
            None
        } else {
            let four = BigRational::from_integer(4.into());
            Some(&m2 / (four * &delta * (BigRational::one() - &delta)))
        };
        let (term, branch) = match &second_moment_bound {
            Some(bound) if *bound < m1 => (bound.clone(), Branch::SecondMoment),
            _ => (m1.clone(), Branch::FirstMoment),
        };
        Self {
            prime,
            exponent,
            delta,
            m1,
            m2,
            second_moment_bound,
            term,
            branch,
        }
    }
}

/// Outcome of the distortion criterion for one system and schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<TermRecord>,
    pub eta: BigRational,
    pub verdict: Verdict,
    /// An uncovered residue mod `Q` found by exhaustive search, when the
    /// verdict is [`Verdict::NotCovering`] and `Q` is small enough.
    pub witness: Option<u64>,
}

impl Certificate {
    pub fn from_terms(terms: Vec<TermRecord>) -> Self {
        let eta = terms
            .iter()
            .fold(BigRational::zero(), |acc, t| acc + &t.term);
        let verdict = if eta < BigRational::one() {
            Verdict::NotCovering
        } else {
            Verdict::Inconclusive
        };
        Self {
            terms,
            eta,
            verdict,
            witness: None,
        }
    }
}
