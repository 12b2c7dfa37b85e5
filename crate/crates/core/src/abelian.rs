//! Finitely generated abelian groups in invariant-factor form, and the
//! kernel-mod-image computation that turns a pair of integer matrices into
//! one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::Error;
use crate::matrix::{IntegerMatrix, Rational};
use crate::snf;

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d_1 ⊕ ... ⊕ ℤ/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// `ℤ^rank ⊕ (ℤ/2)^count`.
    pub fn with_two_torsion(rank: usize, count: usize) -> Self {
        Self { rank, torsion: vec![BigInt::from(2); count] }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of generators needed mod 2: rank plus the count of even
    /// invariant factors.
    pub fn mod2_dimension(&self) -> usize {
        self.rank + self.torsion.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // Group equal torsion factors into powers for readability.
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cohomology of one degree of a cochain complex: `ker(d_out) / im(d_in)`.
///
/// `d_in` maps into the degree and `d_out` maps out of it, so
/// `d_in.rows() == d_out.cols()` and the composite `d_out · d_in` must be
/// the zero matrix; anything else signals a broken complex and is rejected.
pub fn cohomology_of_pair(
    d_in: &IntegerMatrix,
    d_out: &IntegerMatrix,
) -> Result<AbelianGroup, Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::BrokenComplex(format!(
            "degree mismatch: d_in maps into rank {} but d_out consumes rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::BrokenComplex(
            "d_out ∘ d_in is not the zero map".to_string(),
        ));
    }

    // Kernel lattice of the outgoing map. The basis is saturated, so the
    // image columns below have exact integer coordinates in it.
    let kernel = snf::kernel_basis(d_out);
    let image_in_kernel = express_in_lattice(&kernel, d_in);
    let invariants = snf::smith_normal_form(&image_in_kernel);

    let rank = kernel.cols() - invariants.len();
    let torsion: Vec<BigInt> =
        invariants.into_iter().filter(|d| !d.is_one()).collect();
    Ok(AbelianGroup { rank, torsion })
}

/// Solves `K · X = M` where the columns of `K` form a basis of a saturated
/// lattice containing every column of `M`. The solution is unique and
/// integral.
fn express_in_lattice(k: &IntegerMatrix, m: &IntegerMatrix) -> IntegerMatrix {
    let kq = k.to_rational();
    let mut x = IntegerMatrix::zeros(k.cols(), m.cols());
    for j in 0..m.cols() {
        let rhs: Vec<Rational> = (0..m.rows())
            .map(|i| Rational::from_integer(m[(i, j)].clone()))
            .collect();
        let (sol, _) = kq
            .solve(&rhs)
            .expect("image column must lie in the kernel of the outgoing map");
        for (i, v) in sol.iter().enumerate() {
            assert!(
                v.is_integer(),
                "kernel lattice is saturated, coordinates must be integral"
            );
            x[(i, j)] = v.to_integer();
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn twisted_circle_torsion() {
        // d_in = [-2] into ℤ, d_out = 0: the quotient ℤ/2ℤ.
        let d_in = IntegerMatrix::from_i64(1, 1, &[-2]);
        let d_out = IntegerMatrix::zeros(0, 1);
        let g = cohomology_of_pair(&d_in, &d_out).unwrap();
        assert_eq!(g.rank, 0);
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn zero_maps_give_free_group() {
        let d_in = IntegerMatrix::zeros(3, 0);
        let d_out = IntegerMatrix::zeros(0, 3);
        let g = cohomology_of_pair(&d_in, &d_out).unwrap();
        assert_eq!(g, AbelianGroup::free(3));
    }

    #[test]
    fn injective_outgoing_map_kills_everything() {
        let d_in = IntegerMatrix::zeros(1, 0);
        let d_out = IntegerMatrix::from_i64(1, 1, &[3]);
        let g = cohomology_of_pair(&d_in, &d_out).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn three_term_zero_complex() {
        // 0 → ℤ^2 → ℤ^4 with zero maps in and out: H = ℤ^4 at the middle.
        let d_in = IntegerMatrix::zeros(4, 2);
        let d_out = IntegerMatrix::zeros(0, 4);
        let g = cohomology_of_pair(&d_in, &d_out).unwrap();
        assert_eq!(g, AbelianGroup::free(4));
    }

    #[test]
    fn rejects_non_complex() {
        let d_in = IntegerMatrix::from_i64(1, 1, &[1]);
        let d_out = IntegerMatrix::from_i64(1, 1, &[1]);
        assert!(matches!(
            cohomology_of_pair(&d_in, &d_out),
            Err(Error::BrokenComplex(_))
        ));
    }

    #[test]
    fn mixed_rank_and_torsion() {
        // im = span{(2,0,0)} inside ker = ℤ^3: H ≅ ℤ/2 ⊕ ℤ^2.
        let d_in = IntegerMatrix::from_i64(3, 1, &[2, 0, 0]);
        let d_out = IntegerMatrix::zeros(0, 3);
        let g = cohomology_of_pair(&d_in, &d_out).unwrap();
        assert_eq!(g.rank, 2);
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn display_formats() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::with_two_torsion(2, 3).to_string(), "Z^2 + (Z/2)^3");
        let g = AbelianGroup { rank: 0, torsion: vec![BigInt::from(2), BigInt::from(4)] };
        assert_eq!(g.to_string(), "Z/2 + Z/4");
        assert!(!BigInt::zero().is_one());
    }
}
