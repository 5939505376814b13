//! Finite simplicial complexes on at most 64 vertices, with reduced homology over a field.
//!
//! Faces are `u64` bitmasks. The void complex (no faces at all) and the empty complex `{∅}`
//! are distinct values.

use std::collections::HashMap;

use serde::Serialize;

use crate::field::FieldSpec;
use crate::graph::mask_to_vec;
use crate::linalg::{integer_rank, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

/// Face counts `f_{-1}, f_0, ..., f_{d-1}`; empty for the void complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl SimplicialComplex {
    /// Complex generated by the given faces; non-maximal ones are dropped.
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = u64>) -> Self {
        let mut faces: Vec<u64> = faces.into_iter().collect();
        faces.sort_by_key(|f| std::cmp::Reverse(f.count_ones()));
        let mut facets: Vec<u64> = Vec::new();
        for f in faces {
            if !facets.iter().any(|&g| f & g == f) {
                facets.push(f);
            }
        }
        facets.sort_by_key(|&f| mask_to_vec(f));
        SimplicialComplex { n, facets }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    pub fn simplex(n: usize) -> Self {
        Self::from_faces(n, [full_mask(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    /// Facets as sorted vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_to_vec(f)).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet cardinality (dimension plus one); `None` for the void complex.
    pub fn max_facet_size(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.count_ones() as usize).max()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    /// Every face, grouped by cardinality (index 0 holds the empty face).
    pub fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let Some(top) = self.max_facet_size() else {
            return Vec::new();
        };
        let mut seen: Vec<std::collections::BTreeSet<u64>> = vec![Default::default(); top + 1];
        for &f in &self.facets {
            // Every subset of the facet.
            let mut sub = f;
            loop {
                seen[sub.count_ones() as usize].insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        seen.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_size().iter().map(|l| l.len() as u64).collect())
    }

    /// Subcomplex of faces contained in `w`.
    pub fn induced(&self, w: u64) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        Self::from_faces(self.n, self.facets.iter().map(|&f| f & w))
    }

    /// Cone over this complex with apex `apex` (which must be a fresh vertex).
    pub fn cone(&self, apex: usize) -> SimplicialComplex {
        let n = self.n.max(apex + 1);
        SimplicialComplex {
            n,
            facets: self.facets.iter().map(|&f| f | 1 << apex).collect(),
        }
    }

    /// Reduced Betti numbers `β̃_{-1}, β̃_0, ..., β̃_{dim}` over the given field.
    pub fn reduced_homology(&self, field: FieldSpec) -> Vec<usize> {
        let faces = self.faces_by_size();
        reduced_betti(&faces, field, faces.len().saturating_sub(1))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Boundary columns of the faces of one cardinality against the next smaller cardinality.
pub(crate) fn boundary_columns(faces: &[u64], lower: &HashMap<u64, usize>) -> Vec<SparseVec<i64>> {
    faces
        .iter()
        .map(|&face| {
            let mut col: SparseVec<i64> = mask_to_vec(face)
                .into_iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (lower[&(face & !(1 << v))], sign)
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

fn index_map(faces: &[u64]) -> HashMap<u64, usize> {
    faces.iter().enumerate().map(|(i, &f)| (f, i)).collect()
}

/// Reduced Betti numbers from faces grouped by cardinality (`faces[k]` holds the faces of
/// dimension `k-1`); entry `k` of the result is the Betti number in degree `k-1`, for
/// `k <= max_card`.
pub(crate) fn reduced_betti(faces: &[Vec<u64>], field: FieldSpec, max_card: usize) -> Vec<usize> {
    let top = faces.len();
    if top == 0 {
        return Vec::new();
    }
    // Rank of the boundary map out of the faces of cardinality k.
    let rank_out = |k: usize| -> usize {
        if k == 0 || k >= top {
            return 0;
        }
        let lower = index_map(&faces[k - 1]);
        integer_rank(field, &boundary_columns(&faces[k], &lower))
    };
    let mut out = Vec::new();
    let mut r_here = rank_out(0);
    for k in 0..=max_card.min(top.saturating_sub(1)) {
        let r_next = rank_out(k + 1);
        out.push(faces[k].len() - r_here - r_next);
        r_here = r_next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_and_boundary() {
        let s = SimplicialComplex::simplex(3);
        assert_eq!(s.f_vector(), FVector(vec![1, 3, 3, 1]));
        assert_eq!(s.reduced_homology(FieldSpec::Rational), vec![0, 0, 0, 0]);
        // Boundary of the triangle: a circle.
        let circle = SimplicialComplex::from_faces(3, [0b011, 0b110, 0b101]);
        assert_eq!(circle.reduced_homology(FieldSpec::Rational), vec![0, 0, 1]);
        assert_eq!(circle.reduced_homology(FieldSpec::Prime(2)), vec![0, 0, 1]);
    }

    #[test]
    fn empty_and_void() {
        let empty = SimplicialComplex::from_faces(2, [0]);
        assert_eq!(empty.reduced_homology(FieldSpec::Rational), vec![1]);
        assert_eq!(empty.f_vector(), FVector(vec![1]));
        let void = SimplicialComplex::void(2);
        assert!(void.reduced_homology(FieldSpec::Rational).is_empty());
        assert_eq!(void.f_vector(), FVector(vec![]));
    }

    #[test]
    fn two_points() {
        let c = SimplicialComplex::from_faces(2, [0b01, 0b10]);
        assert_eq!(c.reduced_homology(FieldSpec::Prime(3)), vec![0, 1]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2.
        let tris: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let c = SimplicialComplex::from_faces(6, tris.iter().map(|t| t.iter().fold(0u64, |m, &v| m | 1 << v)));
        assert_eq!(c.reduced_homology(FieldSpec::Rational), vec![0, 0, 0, 0]);
        assert_eq!(c.reduced_homology(FieldSpec::Prime(2)), vec![0, 0, 1, 1]);
    }

    #[test]
    fn cones_are_acyclic() {
        let circle = SimplicialComplex::from_faces(4, [0b0011, 0b0110, 0b0101]);
        let cone = circle.cone(3);
        for f in [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(7)] {
            assert!(cone.reduced_homology(f).iter().all(|&b| b == 0));
        }
    }
}
