//! Closed-form twisted cohomology.
//!
//! Under the CDO condition the cohomology of a sign local system is read off
//! the Betti numbers of the complement alone:
//!
//! ```text
//! H^i = 0                      for i = 0 (and i > n),
//! H^i = (ℤ/2)^{β_{i-1}}        for 1 ≤ i ≤ n-1,
//! H^n = ℤ^{β_n} ⊕ (ℤ/2)^{β_{n-1}},
//! ```
//!
//! with `β_i = |Σ_{k≤i} (-1)^k b_k|`. For a central arrangement whose total
//! monodromy is `-1` there is an independent identification
//! `H^i ≅ H^{i-1}(M*, ℤ/2)` through the Hopf fibration, with `M*` the
//! projectivized complement; both routes are implemented and must agree
//! whenever both apply.

use crate::abelian::AbelianGroup;
use crate::arrangement::Arrangement;
use crate::density::{cdo_check, Sign, SignLocalSystem};
use crate::error::Error;
use crate::poset::{projective_betti, IntersectionPoset};

/// Which pipeline produced a cohomology profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Combinatorial closed form, valid under the CDO condition.
    Theorem,
    /// Hopf-fibration identification for central arrangements.
    Lemma,
    /// Salvetti-complex Smith-normal-form computation.
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Theorem => "theorem",
            Method::Lemma => "lemma",
            Method::Oracle => "oracle",
        }
    }
}

/// Twisted cohomology groups in degrees `0..=n`, tagged with the pipeline
/// that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub groups: Vec<AbelianGroup>,
    pub method: Method,
    pub cdo_verdict: bool,
}

impl CohomologyProfile {
    /// Degree-wise agreement of the abstract groups.
    pub fn same_groups(&self, other: &CohomologyProfile) -> bool {
        self.groups == other.groups
    }
}

/// The alternating partial sums `β_i = |Σ_{k=0}^{i} (-1)^k b_k|`.
pub fn beta_sequence(betti: &[usize]) -> Vec<usize> {
    assert_eq!(betti.first(), Some(&1), "b_0 must be 1");
    let mut acc = 0i64;
    betti
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let signed = b as i64;
            acc += if k % 2 == 0 { signed } else { -signed };
            acc.unsigned_abs() as usize
        })
        .collect()
}

/// The closed-form profile, computed without checking the CDO gate. The
/// result is only asserted to be the twisted cohomology when the CDO
/// condition holds; callers wanting the gate should use
/// [`theorem_cohomology`].
pub fn theorem_formula(arrangement: &Arrangement) -> CohomologyProfile {
    let n = arrangement.dimension();
    let poset = IntersectionPoset::build(arrangement);
    let betti = poset.betti_numbers();
    let beta = beta_sequence(&betti);
    let beta_at = |i: isize| -> usize {
        if i < 0 {
            0
        } else {
            beta.get(i as usize).copied().unwrap_or(0)
        }
    };

    let mut groups = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let group = if i == n {
            AbelianGroup::with_two_torsion(beta_at(n as isize), beta_at(n as isize - 1))
        } else if i >= 1 {
            AbelianGroup::with_two_torsion(0, beta_at(i as isize - 1))
        } else {
            AbelianGroup::trivial()
        };
        groups.push(group);
    }
    CohomologyProfile { groups, method: Method::Theorem, cdo_verdict: true }
}

/// Twisted cohomology by the combinatorial closed form, gated on the CDO
/// condition. Outside that regime the formula is not asserted and the call
/// fails with the violating dense edges.
pub fn theorem_cohomology(
    arrangement: &Arrangement,
    ls: &SignLocalSystem,
) -> Result<CohomologyProfile, Error> {
    if ls.len() != arrangement.num_hyperplanes() {
        return Err(Error::SignCountMismatch {
            expected: arrangement.num_hyperplanes(),
            got: ls.len(),
        });
    }
    let outcome = cdo_check(arrangement, ls);
    if !outcome.passes {
        return Err(Error::CdoViolation { violations: outcome.violations });
    }
    Ok(theorem_formula(arrangement))
}

/// Twisted cohomology of a central arrangement with total monodromy `-1`,
/// via the Hopf fibration: `H^i ≅ H^{i-1}(M*, ℤ/2)` where `M*` is the
/// projectivized complement, so every group is an elementary abelian
/// 2-group of dimension `b_{i-1}(M*)`.
pub fn lemma_central_cohomology(
    central: &Arrangement,
    ls: &SignLocalSystem,
) -> Result<CohomologyProfile, Error> {
    if ls.len() != central.num_hyperplanes() {
        return Err(Error::SignCountMismatch {
            expected: central.num_hyperplanes(),
            got: ls.len(),
        });
    }
    if !central.is_central() {
        return Err(Error::NotCentral(
            "the Hopf identification needs a central arrangement".to_string(),
        ));
    }
    if ls.t0() != Sign::Minus {
        return Err(Error::TotalMonodromyNotMinusOne);
    }
    let star = projective_betti(central)?;
    let n = central.dimension();
    let groups = (0..=n)
        .map(|i| {
            if i == 0 {
                AbelianGroup::trivial()
            } else {
                AbelianGroup::with_two_torsion(0, star.get(i - 1).copied().unwrap_or(0))
            }
        })
        .collect();
    Ok(CohomologyProfile { groups, method: Method::Lemma, cdo_verdict: true })
}
