//! Stratification of real space by an arrangement: faces as realizable sign
//! vectors, each certified by an exact rational witness point.
//!
//! Realizability of a mixed system of equalities and strict inequalities is
//! decided by elimination: equalities are solved first, the strict
//! constraints are pushed into the resulting parameter space, and the
//! parameters are eliminated one at a time in the Fourier-Motzkin style.
//! Back-substitution through the elimination stack produces a witness,
//! which is re-checked against the requested sign vector before a face is
//! accepted.

use num_traits::{Signed, Zero};

use crate::arrangement::Arrangement;
use crate::matrix::{Rational, RationalMatrix};

/// One face of the stratification of real `n`-space.
#[derive(Clone, Debug)]
pub struct Face {
    /// Sign of `a_i·x - c_i` on the face, per hyperplane.
    pub signs: Vec<i8>,
    pub dim: usize,
    /// An interior rational point, kept for audit.
    pub witness: Vec<Rational>,
}

impl Face {
    pub fn is_chamber(&self) -> bool {
        self.signs.iter().all(|&s| s != 0)
    }

    /// Codimension of the face: the rank of the hyperplanes it lies on.
    pub fn codim(&self, ambient_dim: usize) -> usize {
        ambient_dim - self.dim
    }
}

/// Every realizable sign vector of the arrangement, exactly once, in a
/// deterministic order. Faces are grown hyperplane by hyperplane: each face
/// of the partial arrangement splits into at most three extensions, and only
/// the feasible ones survive.
pub fn enumerate_faces(arrangement: &Arrangement) -> Vec<Face> {
    let n = arrangement.dimension();
    let mut partial: Vec<Vec<i8>> = vec![Vec::new()];
    let mut witnesses: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]];

    for m in 0..arrangement.num_hyperplanes() {
        let mut next_signs = Vec::new();
        let mut next_witnesses = Vec::new();
        for (signs, witness) in partial.iter().zip(&witnesses) {
            let here = sign_of(&arrangement.hyperplanes()[m].eval(witness));
            for candidate in [-1i8, 0, 1] {
                let mut extended = signs.clone();
                extended.push(candidate);
                if candidate == here {
                    next_signs.push(extended);
                    next_witnesses.push(witness.clone());
                    continue;
                }
                if let Some(point) = witness_for(arrangement, &extended) {
                    next_signs.push(extended);
                    next_witnesses.push(point);
                }
            }
        }
        partial = next_signs;
        witnesses = next_witnesses;
    }

    partial
        .into_iter()
        .zip(witnesses)
        .map(|(signs, witness)| {
            let zero_rows: Vec<Vec<Rational>> = signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == 0)
                .map(|(i, _)| arrangement.hyperplanes()[i].normal.clone())
                .collect();
            let rank = RationalMatrix::from_rows(n, &zero_rows).rank();
            let face = Face { dim: n - rank, signs, witness };
            debug_assert!(face_matches(arrangement, &face));
            face
        })
        .collect()
}

fn sign_of(v: &Rational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn face_matches(arrangement: &Arrangement, face: &Face) -> bool {
    arrangement
        .hyperplanes()
        .iter()
        .zip(&face.signs)
        .all(|(h, &s)| sign_of(&h.eval(&face.witness)) == s)
}

/// A witness point realizing the sign prefix, or `None` when infeasible.
/// The prefix may be shorter than the arrangement; trailing hyperplanes are
/// unconstrained.
pub fn witness_for(arrangement: &Arrangement, signs: &[i8]) -> Option<Vec<Rational>> {
    let n = arrangement.dimension();
    let mut eq_rows = Vec::new();
    let mut eq_rhs = Vec::new();
    let mut stricts = Vec::new();
    for (i, &s) in signs.iter().enumerate() {
        let h = &arrangement.hyperplanes()[i];
        if s == 0 {
            eq_rows.push(h.normal.clone());
            eq_rhs.push(h.offset.clone());
        } else {
            // s·(a·x - c) > 0  ⇔  (s·a)·x > s·c
            let scale = Rational::from_integer(s.into());
            let coeffs: Vec<Rational> =
                h.normal.iter().map(|a| a.clone() * scale.clone()).collect();
            stricts.push(Constraint { coeffs, rhs: h.offset.clone() * scale });
        }
    }

    let equalities = RationalMatrix::from_rows(n, &eq_rows);
    let (particular, directions) = equalities.solve(&eq_rhs)?;
    let free = directions.len();

    // Push the strict constraints into the parameter space x = p + B s.
    let mut reduced = Vec::new();
    for c in stricts {
        let offset: Rational = c
            .coeffs
            .iter()
            .zip(&particular)
            .map(|(a, x)| a.clone() * x.clone())
            .sum();
        let coeffs: Vec<Rational> = directions
            .iter()
            .map(|dir| {
                c.coeffs
                    .iter()
                    .zip(dir)
                    .map(|(a, x)| a.clone() * x.clone())
                    .sum()
            })
            .collect();
        reduced.push(Constraint { coeffs, rhs: c.rhs - offset });
    }

    let params = strict_witness(reduced, free)?;
    let mut point = particular;
    for (dir, s) in directions.iter().zip(&params) {
        for (p, x) in point.iter_mut().zip(dir) {
            *p += s.clone() * x.clone();
        }
    }

    // Audit the witness against the requested signs.
    for (i, &s) in signs.iter().enumerate() {
        let value = arrangement.hyperplanes()[i].eval(&point);
        assert_eq!(sign_of(&value), s, "witness violates requested sign vector");
    }
    Some(point)
}

/// A strict linear constraint `coeffs · s > rhs`.
#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Constraint {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// For a constant constraint `0 > rhs`.
    fn constant_holds(&self) -> bool {
        self.rhs.is_negative()
    }
}

/// Solves a system of strict inequalities over `vars` rational unknowns,
/// returning any interior point.
fn strict_witness(constraints: Vec<Constraint>, vars: usize) -> Option<Vec<Rational>> {
    // levels[j] holds constraints mentioning only the first j variables.
    let mut levels: Vec<Vec<Constraint>> = Vec::with_capacity(vars + 1);
    levels.push(constraints);
    for j in (1..=vars).rev() {
        let current = levels.last().unwrap();
        let mut lowered = Vec::new();
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        for c in current {
            debug_assert_eq!(c.coeffs.len(), j);
            let lead = c.coeffs[j - 1].clone();
            if lead.is_zero() {
                lowered.push(Constraint {
                    coeffs: c.coeffs[..j - 1].to_vec(),
                    rhs: c.rhs.clone(),
                });
            } else if lead.is_positive() {
                lowers.push(c.clone());
            } else {
                uppers.push(c.clone());
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // lead(lo) > 0, lead(up) < 0; the combination
                // lead(lo)·up - lead(up)·lo keeps both strict inequalities
                // and eliminates the variable.
                let a = lo.coeffs[j - 1].clone();
                let b = up.coeffs[j - 1].clone();
                let coeffs: Vec<Rational> = (0..j - 1)
                    .map(|i| {
                        a.clone() * up.coeffs[i].clone() - b.clone() * lo.coeffs[i].clone()
                    })
                    .collect();
                let rhs = a.clone() * up.rhs.clone() - b.clone() * lo.rhs.clone();
                lowered.push(Constraint { coeffs, rhs });
            }
        }
        // Constant constraints decide feasibility immediately.
        let mut kept = Vec::new();
        for c in lowered {
            if c.is_constant() {
                if !c.constant_holds() {
                    return None;
                }
            } else {
                kept.push(c);
            }
        }
        levels.push(kept);
    }

    // Check the fully eliminated level (only possible when vars = 0 and the
    // input already contained constants).
    if let Some(bottom) = levels.last() {
        if bottom.iter().any(|c| c.is_constant() && !c.constant_holds()) {
            return None;
        }
    }

    // Back-substitute: pick each variable strictly between its bounds.
    let mut values: Vec<Rational> = Vec::with_capacity(vars);
    for j in 0..vars {
        let level = &levels[vars - 1 - j];
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for c in level {
            let partial: Rational = c.coeffs[..j]
                .iter()
                .zip(&values)
                .map(|(a, v)| a.clone() * v.clone())
                .sum();
            let lead = c.coeffs[j].clone();
            if lead.is_zero() {
                debug_assert!(partial > c.rhs, "eliminated constraint must hold");
                continue;
            }
            let bound = (c.rhs.clone() - partial) / lead.clone();
            if lead.is_positive() {
                lower = Some(match lower {
                    Some(cur) if cur >= bound => cur,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(cur) if cur <= bound => cur,
                    _ => bound,
                });
            }
        }
        let value = match (lower, upper) {
            (Some(lo), Some(hi)) => {
                debug_assert!(lo < hi, "projection guarantees an open interval");
                (lo + hi) / Rational::from_integer(2.into())
            }
            (Some(lo), None) => lo + Rational::from_integer(1.into()),
            (None, Some(hi)) => hi - Rational::from_integer(1.into()),
            (None, None) => Rational::zero(),
        };
        values.push(value);
    }
    Some(values)
}
