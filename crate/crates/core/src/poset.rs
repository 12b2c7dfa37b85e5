//! The intersection poset of an arrangement: flats, Möbius values, Betti
//! numbers, and the Poincaré-polynomial bookkeeping built on them.
//!
//! Flats are collected by iterative refinement - intersect every known flat
//! with every hyperplane and keep the nonempty results - rather than by
//! walking the full subset lattice. Each flat stores its closed set of
//! hyperplane indices, and distinct flats always have distinct closed sets,
//! so deduplication by closed set is exactly deduplication by subspace
//! equality.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::Error;
use crate::matrix::{AffineSubspace, Rational, RationalMatrix};

/// A nonempty intersection of hyperplanes (or the ambient space, for the
/// empty set of hyperplanes).
#[derive(Clone, Debug)]
pub struct Flat {
    /// Closed set: every hyperplane index whose hyperplane contains the
    /// subspace, in increasing order.
    pub hyperplanes: Vec<usize>,
    pub subspace: AffineSubspace,
    pub codim: usize,
}

impl Flat {
    pub fn is_ambient(&self) -> bool {
        self.hyperplanes.is_empty()
    }
}

/// The intersection poset, ordered by reverse inclusion of subspaces. The
/// ambient flat is the unique minimum; `flats[0]` always holds it.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    arrangement: Arrangement,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
    covers: Vec<Vec<usize>>,
}

impl IntersectionPoset {
    pub fn build(arrangement: &Arrangement) -> Self {
        let n = arrangement.dimension();
        let d = arrangement.num_hyperplanes();

        let ambient = Flat {
            hyperplanes: Vec::new(),
            subspace: AffineSubspace::ambient(n),
            codim: 0,
        };
        let mut flats = vec![ambient];
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        seen.insert(Vec::new(), 0);

        let mut next = 0;
        while next < flats.len() {
            let current = flats[next].clone();
            for h in 0..d {
                if current.hyperplanes.contains(&h) {
                    continue;
                }
                let Some(subspace) = intersect(arrangement, &current, h) else {
                    continue;
                };
                let closed = closed_set(arrangement, &subspace);
                if seen.contains_key(&closed) {
                    continue;
                }
                let codim = n - subspace.dim();
                seen.insert(closed.clone(), flats.len());
                flats.push(Flat { hyperplanes: closed, subspace, codim });
            }
            next += 1;
        }

        // Canonical order: by codimension, then by closed set.
        flats.sort_by(|a, b| {
            a.codim.cmp(&b.codim).then_with(|| a.hyperplanes.cmp(&b.hyperplanes))
        });

        let mobius = compute_mobius(&flats);
        let covers = compute_covers(&flats);
        Self { arrangement: arrangement.clone(), flats, mobius, covers }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self, flat_index: usize) -> i64 {
        self.mobius[flat_index]
    }

    /// Cover relations: `covers[i]` lists the flats immediately above flat
    /// `i` in the poset order.
    pub fn covers(&self, flat_index: usize) -> &[usize] {
        &self.covers[flat_index]
    }

    /// Poset order: flat `a` lies below flat `b` when the subspace of `b` is
    /// contained in the subspace of `a`, equivalently when the closed set of
    /// `a` is contained in the closed set of `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        subset(&self.flats[a].hyperplanes, &self.flats[b].hyperplanes)
    }

    /// Whitney's theorem: `b_i = Σ |μ(X)|` over flats of codimension `i`.
    /// Returns `[b_0, ..., b_n]`; entries above the rank are zero.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let n = self.arrangement.dimension();
        let mut betti = vec![0usize; n + 1];
        for (i, flat) in self.flats.iter().enumerate() {
            betti[flat.codim] += self.mobius[i].unsigned_abs() as usize;
        }
        betti
    }

    /// Normal vectors of the hyperplanes through the given flat: the central
    /// subarrangement obtained by localizing at it.
    pub fn localization(&self, flat_index: usize) -> Vec<Vec<Rational>> {
        self.flats[flat_index]
            .hyperplanes
            .iter()
            .map(|&i| self.arrangement.hyperplanes()[i].normal.clone())
            .collect()
    }

    /// Index of the flat with the given closed hyperplane set, if present.
    pub fn find_flat(&self, closed: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.hyperplanes == closed)
    }
}

fn intersect(arrangement: &Arrangement, flat: &Flat, h: usize) -> Option<AffineSubspace> {
    let hp = &arrangement.hyperplanes()[h];
    // Solve a·(p + B s) = c for s: (aᵀB) s = c - a·p inside the flat.
    let sub = &flat.subspace;
    let k = sub.dim();
    let mut coeffs = RationalMatrix::zeros(1, k);
    for (j, v) in sub.basis.iter().enumerate() {
        let dot: Rational = hp
            .normal
            .iter()
            .zip(v)
            .map(|(a, x)| a.clone() * x.clone())
            .sum();
        coeffs[(0, j)] = dot;
    }
    let rhs = -hp.eval(&sub.point);
    let (particular, kernel) = coeffs.solve(&[rhs])?;
    let point = add_combination(&sub.point, &sub.basis, &particular);
    let basis = kernel
        .iter()
        .map(|s| combination(&sub.basis, s))
        .collect();
    Some(AffineSubspace { point, basis })
}

fn add_combination(
    point: &[Rational],
    basis: &[Vec<Rational>],
    coeffs: &[Rational],
) -> Vec<Rational> {
    let mut out = point.to_vec();
    for (v, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c.clone() * x.clone();
        }
    }
    out
}

fn combination(basis: &[Vec<Rational>], coeffs: &[Rational]) -> Vec<Rational> {
    let n = basis.first().map_or(0, |v| v.len());
    let mut out = vec![Rational::zero(); n];
    for (v, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c.clone() * x.clone();
        }
    }
    out
}

/// All hyperplane indices whose hyperplane contains the subspace.
pub fn closed_set(arrangement: &Arrangement, subspace: &AffineSubspace) -> Vec<usize> {
    (0..arrangement.num_hyperplanes())
        .filter(|&i| {
            let h = &arrangement.hyperplanes()[i];
            h.eval(&subspace.point).is_zero()
                && subspace.basis.iter().all(|v| {
                    let dot: Rational = h
                        .normal
                        .iter()
                        .zip(v)
                        .map(|(a, x)| a.clone() * x.clone())
                        .sum();
                    dot.is_zero()
                })
        })
        .collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn compute_mobius(flats: &[Flat]) -> Vec<i64> {
    // Flats are sorted by codimension, so every strict predecessor of a flat
    // appears before it.
    let mut mobius = vec![0i64; flats.len()];
    for i in 0..flats.len() {
        if flats[i].is_ambient() {
            mobius[i] = 1;
            continue;
        }
        let mut acc = 0i64;
        for j in 0..i {
            if subset(&flats[j].hyperplanes, &flats[i].hyperplanes) {
                acc += mobius[j];
            }
        }
        mobius[i] = -acc;
    }
    mobius
}

fn compute_covers(flats: &[Flat]) -> Vec<Vec<usize>> {
    let mut covers = vec![Vec::new(); flats.len()];
    for i in 0..flats.len() {
        for j in 0..flats.len() {
            if i == j || !subset(&flats[i].hyperplanes, &flats[j].hyperplanes) {
                continue;
            }
            let direct = !(0..flats.len()).any(|k| {
                k != i
                    && k != j
                    && subset(&flats[i].hyperplanes, &flats[k].hyperplanes)
                    && subset(&flats[k].hyperplanes, &flats[j].hyperplanes)
            });
            if direct {
                covers[i].push(j);
            }
        }
    }
    covers
}

/// Betti numbers of the projectivized complement of a central arrangement:
/// the coefficients of `P(t) / (1 + t)` where `P` is the Poincaré polynomial
/// of the affine complement. The division is always exact for a central
/// arrangement; a nonzero remainder is an internal inconsistency.
pub fn projective_betti(central: &Arrangement) -> Result<Vec<usize>, Error> {
    if !central.is_central() {
        return Err(Error::NotCentral(
            "projective Betti numbers need a central arrangement".to_string(),
        ));
    }
    let poset = IntersectionPoset::build(central);
    let betti = poset.betti_numbers();
    divide_by_one_plus_t(&betti)
}

fn divide_by_one_plus_t(poly: &[usize]) -> Result<Vec<usize>, Error> {
    // q_0 = p_0, q_i = p_i - q_{i-1}; remainder must vanish.
    let mut quotient: Vec<i64> = Vec::new();
    let mut carry = 0i64;
    for (i, &p) in poly.iter().enumerate() {
        let q = p as i64 - carry;
        if i + 1 == poly.len() {
            if q != 0 {
                return Err(Error::InexactPoincareDivision(format!(
                    "remainder {q} dividing {poly:?} by (1+t)"
                )));
            }
            break;
        }
        if q < 0 {
            return Err(Error::InexactPoincareDivision(format!(
                "negative coefficient {q} dividing {poly:?} by (1+t)"
            )));
        }
        quotient.push(q);
        carry = q;
    }
    while quotient.last() == Some(&0) {
        quotient.pop();
    }
    Ok(quotient.into_iter().map(|q| q as usize).collect())
}
