//! Affine rational hyperplane arrangements and their projective closures.

use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{Rational, RationalMatrix};

/// A single affine hyperplane `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// Evaluates `normal · x - offset` at a point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.normal.len());
        let dot: Rational = self
            .normal
            .iter()
            .zip(point)
            .map(|(a, x)| a.clone() * x.clone())
            .sum();
        dot - self.offset.clone()
    }

    fn is_proportional_to(&self, other: &Hyperplane) -> bool {
        // (a, c) and (a', c') define the same affine set iff one augmented
        // vector is a nonzero scalar multiple of the other.
        let lhs: Vec<Rational> = self
            .normal
            .iter()
            .cloned()
            .chain(std::iter::once(self.offset.clone()))
            .collect();
        let rhs: Vec<Rational> = other
            .normal
            .iter()
            .cloned()
            .chain(std::iter::once(other.offset.clone()))
            .collect();
        let m = RationalMatrix::from_rows(lhs.len(), &[lhs, rhs]);
        m.rank() <= 1
    }
}

/// A finite arrangement of distinct affine hyperplanes in rational `n`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dimension: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dimension: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, Error> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dimension {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {i} has a normal of length {} in dimension {dimension}",
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(|a| a.is_zero()) {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {i} has a zero normal vector"
                )));
            }
        }
        for i in 0..hyperplanes.len() {
            for j in i + 1..hyperplanes.len() {
                if hyperplanes[i].is_proportional_to(&hyperplanes[j]) {
                    return Err(Error::InvalidArrangement(format!(
                        "hyperplanes {i} and {j} define the same affine set"
                    )));
                }
            }
        }
        Ok(Self { dimension, hyperplanes })
    }

    /// Convenience constructor from integer coefficient rows `(normal, offset)`.
    pub fn from_i64(dimension: usize, rows: &[(&[i64], i64)]) -> Result<Self, Error> {
        let hyperplanes = rows
            .iter()
            .map(|(normal, offset)| {
                Hyperplane::new(
                    normal.iter().map(|&v| crate::matrix::rat(v)).collect(),
                    crate::matrix::rat(*offset),
                )
            })
            .collect();
        Self::new(dimension, hyperplanes)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    /// True when every hyperplane passes through the origin.
    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset.is_zero())
    }

    /// Rank of the normal vectors. Works for non-essential arrangements,
    /// which need not have a common point.
    pub fn rank(&self) -> usize {
        self.normal_matrix().rank()
    }

    pub fn normal_matrix(&self) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> =
            self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        RationalMatrix::from_rows(self.dimension, &rows)
    }

    /// The projective closure as a central arrangement one dimension up.
    ///
    /// Each hyperplane `a·x = c` becomes `a·x - c·z = 0`, and the hyperplane
    /// at infinity `z = 0` is appended last. Flats of the cone other than
    /// the origin correspond bijectively to the edges of the projective
    /// arrangement.
    pub fn cone(&self) -> ConedArrangement {
        let n = self.dimension + 1;
        let mut hyperplanes: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let mut normal = h.normal.clone();
                normal.push(-h.offset.clone());
                Hyperplane::new(normal, Rational::zero())
            })
            .collect();
        let mut infinity = vec![Rational::zero(); n];
        infinity[n - 1] = Rational::from_integer(1.into());
        hyperplanes.push(Hyperplane::new(infinity, Rational::zero()));
        let infinity_index = hyperplanes.len() - 1;
        let arrangement = Arrangement { dimension: n, hyperplanes };
        ConedArrangement { arrangement, infinity_index }
    }
}

/// A central arrangement produced by coning, remembering which hyperplane is
/// the one at infinity.
#[derive(Clone, Debug)]
pub struct ConedArrangement {
    pub arrangement: Arrangement,
    pub infinity_index: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    #[test]
    fn rejects_zero_normal() {
        let h = Hyperplane::new(vec![rat(0), rat(0)], rat(1));
        assert!(matches!(
            Arrangement::new(2, vec![h]),
            Err(Error::InvalidArrangement(_))
        ));
    }

    #[test]
    fn rejects_duplicate_hyperplane() {
        // x = 1 and 2x = 2 are the same affine set.
        let a = Arrangement::from_i64(1, &[(&[1], 1), (&[2], 2)]);
        assert!(matches!(a, Err(Error::InvalidArrangement(_))));
    }

    #[test]
    fn parallel_hyperplanes_are_distinct() {
        let a = Arrangement::from_i64(1, &[(&[1], 0), (&[1], 1)]).unwrap();
        assert_eq!(a.num_hyperplanes(), 2);
        assert!(!a.is_central());
    }

    #[test]
    fn cone_of_point_in_line() {
        // {x = 1} in 1-space cones to {x - z = 0, z = 0} in the plane.
        let a = Arrangement::from_i64(1, &[(&[1], 1)]).unwrap();
        let coned = a.cone();
        assert_eq!(coned.arrangement.dimension(), 2);
        assert_eq!(coned.arrangement.num_hyperplanes(), 2);
        assert_eq!(coned.infinity_index, 1);
        assert!(coned.arrangement.is_central());
        let h0 = &coned.arrangement.hyperplanes()[0];
        assert_eq!(h0.normal, vec![rat(1), rat(-1)]);
    }

    #[test]
    fn rank_of_pencil() {
        let a = Arrangement::from_i64(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]).unwrap();
        assert_eq!(a.rank(), 2);
        assert!(a.is_central());
    }
}
