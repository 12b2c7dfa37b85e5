//! Sign local systems, dense edges of the projective closure, and the CDO
//! condition.
//!
//! A rank-one integer local system on the complement assigns a sign `t_i`
//! to the meridian of each hyperplane; the meridian of the hyperplane at
//! infinity is forced to `t_0 = ∏ t_i` because the meridian classes sum to
//! zero in first homology. An edge of the projective closure is dense when
//! the hyperplanes through it form a connected matroid. The CDO condition
//! asks for `t_X = -1` on every dense edge contained in the hyperplane at
//! infinity.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::arrangement::Arrangement;
use crate::matroid::is_irreducible;
use crate::poset::{Flat, IntersectionPoset};

/// A multiplicative sign, the value of a rank-one monodromy.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// Product of a collection of signs.
    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Plus, Mul::mul)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// A rank-one sign local system: one monodromy per hyperplane, with the
/// value at infinity derived from the product relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignLocalSystem {
    signs: Vec<Sign>,
}

impl SignLocalSystem {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    pub fn from_i8(values: &[i8]) -> Option<Self> {
        values.iter().map(|&v| Sign::from_i8(v)).collect::<Option<Vec<_>>>().map(Self::new)
    }

    /// The trivial system: every monodromy `+1`.
    pub fn trivial(d: usize) -> Self {
        Self { signs: vec![Sign::Plus; d] }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.signs[i]
    }

    /// Monodromy at infinity: `(∏ t_i)⁻¹`, which over signs is `∏ t_i`
    /// itself.
    pub fn t0(&self) -> Sign {
        Sign::product(self.signs.iter().copied())
    }

    /// Every sign system over `d` hyperplanes, in a fixed deterministic
    /// order. `d` must stay below the width of the enumeration mask.
    pub fn enumerate_all(d: usize) -> impl Iterator<Item = SignLocalSystem> {
        assert!(d < 31, "sign-system enumeration is limited to small arrangements");
        (0u32..1 << d).map(move |mask| {
            let signs = (0..d)
                .map(|i| if mask & (1 << i) != 0 { Sign::Minus } else { Sign::Plus })
                .collect();
            SignLocalSystem::new(signs)
        })
    }
}

/// A dense edge of the projective closure, reported in cone coordinates.
#[derive(Clone, Debug)]
pub struct DenseEdgeReport {
    /// The flat of the coned arrangement. Its hyperplane indices refer to
    /// the cone: original hyperplanes keep their index, and the hyperplane
    /// at infinity sits at index `d`.
    pub edge: Flat,
    /// Monodromy `t_X` of the edge, filled in when a local system is known.
    pub t_value: Option<Sign>,
    /// True when the edge lies inside the hyperplane at infinity.
    pub at_infinity: bool,
}

/// Outcome of the CDO check.
#[derive(Clone, Debug)]
pub struct CdoOutcome {
    pub passes: bool,
    /// Dense edges at infinity whose monodromy is `+1`.
    pub violations: Vec<DenseEdgeReport>,
}

/// Monodromy `t_X` of an edge of the cone: the product of `t_i` over every
/// hyperplane through the edge, where the index of the hyperplane at
/// infinity contributes `t_0`.
pub fn edge_monodromy(edge: &Flat, ls: &SignLocalSystem, infinity_index: usize) -> Sign {
    Sign::product(edge.hyperplanes.iter().map(|&i| {
        if i == infinity_index {
            ls.t0()
        } else {
            ls.sign(i)
        }
    }))
}

/// Dense edges of the projective closure that lie inside the hyperplane at
/// infinity, including the flat of the hyperplane at infinity itself.
/// Monodromies are left unfilled; `cdo_check` fills them.
pub fn dense_edges_at_infinity(arrangement: &Arrangement) -> Vec<DenseEdgeReport> {
    dense_edges(arrangement, false)
}

/// Dense edges of the projective closure. With `include_finite`, edges not
/// contained in the hyperplane at infinity are reported as well; these are
/// not consulted by the CDO check.
pub fn dense_edges(arrangement: &Arrangement, include_finite: bool) -> Vec<DenseEdgeReport> {
    let coned = arrangement.cone();
    let poset = IntersectionPoset::build(&coned.arrangement);
    let mut out = Vec::new();
    for (i, flat) in poset.flats().iter().enumerate() {
        if flat.is_ambient() {
            continue;
        }
        // The origin of the cone projectivizes to the empty set.
        if flat.subspace.dim() == 0 {
            continue;
        }
        let at_infinity = flat.hyperplanes.contains(&coned.infinity_index);
        if !at_infinity && !include_finite {
            continue;
        }
        if is_irreducible(&poset.localization(i)) {
            out.push(DenseEdgeReport { edge: flat.clone(), t_value: None, at_infinity });
        }
    }
    out
}

/// Checks the CDO condition: the monodromy of every dense edge at infinity
/// must be `-1`. Returns the verdict together with the violating edges.
///
/// # Panics
///
/// Panics when the sign count does not match the number of hyperplanes.
pub fn cdo_check(arrangement: &Arrangement, ls: &SignLocalSystem) -> CdoOutcome {
    assert_eq!(
        ls.len(),
        arrangement.num_hyperplanes(),
        "local system must carry one sign per hyperplane"
    );
    let infinity_index = arrangement.num_hyperplanes();
    let mut violations = Vec::new();
    let mut edges = dense_edges_at_infinity(arrangement);
    for report in edges.iter_mut() {
        let t = edge_monodromy(&report.edge, ls, infinity_index);
        report.t_value = Some(t);
        if t == Sign::Plus {
            violations.push(report.clone());
        }
    }
    CdoOutcome { passes: violations.is_empty(), violations }
}
