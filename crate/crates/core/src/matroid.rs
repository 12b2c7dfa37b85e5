//! Connectivity of the linear matroid on a set of normal vectors.
//!
//! A set of vectors is reducible when it splits into two nonempty parts
//! whose ranks add up to the rank of the whole; the finest such partition
//! gives the connected components. Localizations at desk scale are small,
//! so components are found by exhaustive bipartition search rather than a
//! circuit-based algorithm. Inputs above [`MAX_GROUND_SET`] elements are
//! rejected outright.

use crate::matrix::{Rational, RationalMatrix};

/// Upper bound on the ground-set size accepted by the exhaustive search.
pub const MAX_GROUND_SET: usize = 20;

/// The connected components of the linear matroid on the given nonzero
/// vectors, as a partition of indices. Blocks are sorted internally and
/// ordered by their smallest element.
///
/// # Panics
///
/// Panics when the ground set exceeds [`MAX_GROUND_SET`] elements (the
/// exhaustive bipartition search would be too slow) or when a vector is
/// zero.
pub fn matroid_components(normals: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    assert!(
        normals.len() <= MAX_GROUND_SET,
        "ground set of {} vectors exceeds the exhaustive connectivity bound of {}",
        normals.len(),
        MAX_GROUND_SET
    );
    for (i, v) in normals.iter().enumerate() {
        assert!(
            v.iter().any(|x| !num_traits::Zero::is_zero(x)),
            "vector {i} is zero; matroid connectivity needs loop-free input"
        );
    }
    let all: Vec<usize> = (0..normals.len()).collect();
    let mut blocks = split_recursively(normals, all);
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// True when the matroid on the vectors is connected, i.e. admits no
/// bipartition with additive rank. A single vector counts as irreducible.
pub fn is_irreducible(normals: &[Vec<Rational>]) -> bool {
    assert!(!normals.is_empty(), "irreducibility needs a nonempty set");
    matroid_components(normals).len() == 1
}

fn split_recursively(normals: &[Vec<Rational>], indices: Vec<usize>) -> Vec<Vec<usize>> {
    if indices.len() <= 1 {
        return vec![indices];
    }
    let total = rank_of(normals, &indices);
    // Anchor the first index in one side to halve the enumeration.
    let rest = &indices[1..];
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut side = vec![indices[0]];
        let mut other = Vec::new();
        for (bit, &idx) in rest.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                side.push(idx);
            } else {
                other.push(idx);
            }
        }
        if other.is_empty() {
            continue;
        }
        if rank_of(normals, &side) + rank_of(normals, &other) == total {
            let mut blocks = split_recursively(normals, side);
            blocks.extend(split_recursively(normals, other));
            return blocks;
        }
    }
    vec![indices]
}

/// Rank of a subset of the vectors.
pub fn rank_of(normals: &[Vec<Rational>], indices: &[usize]) -> usize {
    let dim = normals.first().map_or(0, |v| v.len());
    let rows: Vec<Vec<Rational>> = indices.iter().map(|&i| normals[i].clone()).collect();
    RationalMatrix::from_rows(dim, &rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    fn vecs(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn coordinate_normals_split() {
        let normals = vecs(&[&[1, 0], &[0, 1]]);
        assert_eq!(matroid_components(&normals), vec![vec![0], vec![1]]);
        assert!(!is_irreducible(&normals));
    }

    #[test]
    fn rank_two_pencil_is_connected() {
        let normals = vecs(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(matroid_components(&normals), vec![vec![0, 1, 2]]);
        assert!(is_irreducible(&normals));
    }

    #[test]
    fn single_vector_is_irreducible() {
        let normals = vecs(&[&[3, 5]]);
        assert_eq!(matroid_components(&normals), vec![vec![0]]);
        assert!(is_irreducible(&normals));
    }

    #[test]
    fn boolean_arrangement_fully_splits() {
        let normals = vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(matroid_components(&normals), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn pencil_plus_transverse_coordinate() {
        // Two vectors spanning a plane, plus an independent third direction:
        // splits into the plane block and the singleton.
        let normals = vecs(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(matroid_components(&normals), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn partition_covers_and_is_disjoint() {
        let normals = vecs(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1]]);
        let blocks = matroid_components(&normals);
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..normals.len()).collect::<Vec<_>>());
        let rank_sum: usize = blocks.iter().map(|b| rank_of(&normals, b)).sum();
        let indices: Vec<usize> = (0..normals.len()).collect();
        assert_eq!(rank_sum, rank_of(&normals, &indices));
    }

    /// Definition-level oracle: no bipartition of a connected block is
    /// rank-additive.
    #[test]
    fn blocks_admit_no_further_split() {
        let normals = vecs(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        for block in matroid_components(&normals) {
            if block.len() < 2 {
                continue;
            }
            let total = rank_of(&normals, &block);
            for mask in 1..(1u32 << block.len()) - 1 {
                let (mut s, mut t) = (Vec::new(), Vec::new());
                for (bit, &idx) in block.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        s.push(idx);
                    } else {
                        t.push(idx);
                    }
                }
                assert!(
                    rank_of(&normals, &s) + rank_of(&normals, &t) > total,
                    "block {block:?} splits as {s:?} | {t:?}"
                );
            }
        }
    }
}
