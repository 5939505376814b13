//! Stanley–Reisner invariants of monomial quotients: dimension, depth over a field,
//! Cohen–Macaulayness, f-vectors, Hilbert series and multiplicity.
//!
//! Non-squarefree ideals are polarized first. Polarization adds variables that form a regular
//! sequence of linear forms, so dimension and depth drop by the number of added variables while
//! the Hilbert numerator is unchanged.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{full_mask, reduced_betti, FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::MonomialIdeal;

/// Largest variable count (after polarization) accepted by [`depth`].
pub const DEPTH_VAR_LIMIT: usize = 14;

/// Largest variable count accepted when enumerating faces of a Stanley–Reisner complex.
pub const COMPLEX_VAR_LIMIT: usize = 40;

/// `numerator(t) / (1 - t)^denominator_power`, numerator coefficients from degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_power: usize,
}

impl HilbertSeries {
    /// Coefficients of the power series expansion in degrees `0..len`.
    pub fn expand(&self, len: usize) -> Vec<i64> {
        let mut coeffs: Vec<i64> = (0..len)
            .map(|j| self.numerator.get(j).copied().unwrap_or(0))
            .collect();
        // Divide by (1 - t) repeatedly: prefix sums.
        for _ in 0..self.denominator_power {
            for j in 1..len {
                coeffs[j] += coeffs[j - 1];
            }
        }
        coeffs
    }

    pub fn numerator_at_one(&self) -> i64 {
        self.numerator.iter().sum()
    }
}

/// Faces of the independence-style complex of a squarefree ideal, grouped by cardinality.
fn sr_faces(n: usize, gens: &[u64]) -> Vec<Vec<u64>> {
    if gens.contains(&0) {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<u64>> = vec![vec![0]];
    let mut frontier = vec![0u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &face in &frontier {
            let start = 64 - face.leading_zeros() as usize;
            for v in start..n {
                let cand = face | 1 << v;
                if gens.iter().all(|&g| g & (1 << v) == 0 || g & cand != g) {
                    next.push(cand);
                }
            }
        }
        if !next.is_empty() {
            by_size.push(next.clone());
        }
        frontier = next;
    }
    by_size
}

fn squarefree_masks(i: &MonomialIdeal) -> Result<Vec<u64>> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if i.nvars() > COMPLEX_VAR_LIMIT {
        return Err(Error::SizeLimit(format!(
            "{} variables exceed the limit of {COMPLEX_VAR_LIMIT}",
            i.nvars()
        )));
    }
    Ok(i.gens().iter().map(|g| g.support_mask()).collect())
}

pub fn stanley_reisner_complex(i: &MonomialIdeal) -> Result<SimplicialComplex> {
    let gens = squarefree_masks(i)?;
    let faces = sr_faces(i.nvars(), &gens);
    if faces.is_empty() {
        return Ok(SimplicialComplex::void(i.nvars()));
    }
    Ok(SimplicialComplex::from_faces(i.nvars(), faces.into_iter().flatten()))
}

/// Polarization if needed, together with the number of added variables.
fn squarefree_model(i: &MonomialIdeal) -> (MonomialIdeal, usize) {
    if i.is_squarefree() {
        (i.clone(), 0)
    } else {
        let p = i.polarize();
        let added = p.nvars() - i.nvars();
        (p, added)
    }
}

pub fn krull_dim(i: &MonomialIdeal) -> Result<usize> {
    let (p, added) = squarefree_model(i);
    let c = stanley_reisner_complex(&p)?;
    // The unit ideal has no faces; its quotient is the zero ring, given dimension 0 here.
    Ok(c.max_facet_size().map_or(0, |d| d - added))
}

/// Projective dimension of `S/I` for squarefree `I`, maximised over induced subcomplexes.
fn projective_dimension(n: usize, gens: &[u64], field: FieldSpec) -> usize {
    let faces = sr_faces(n, gens);
    let full = full_mask(n);
    let mut subsets: Vec<u64> = (0..=full)
        .filter(|&w| {
            // If some vertex of W lies in no generator inside W, Δ_W is a cone and acyclic.
            let covered = gens
                .iter()
                .filter(|&&g| g & w == g)
                .fold(0u64, |acc, &g| acc | g);
            covered == w
        })
        .collect();
    subsets.sort_by_key(|w| std::cmp::Reverse(w.count_ones()));

    // Process subsets of equal size in parallel; sizes in decreasing order so the pruning bound
    // only ever grows.
    let mut best = 0usize;
    let mut start = 0;
    while start < subsets.len() {
        let size = subsets[start].count_ones() as usize;
        let end = start + subsets[start..].partition_point(|w| w.count_ones() as usize == size);
        if size <= best {
            break;
        }
        let bound = best;
        let layer_best = subsets[start..end]
            .par_iter()
            .map(|&w| subset_pd(&faces, w, size, bound, field))
            .max()
            .unwrap_or(0);
        best = best.max(layer_best);
        start = end;
    }
    best
}

/// Largest `i > bound` with `β_{i,W} ≠ 0`, or 0 if there is none.
fn subset_pd(faces: &[Vec<u64>], w: u64, size: usize, bound: usize, field: FieldSpec) -> usize {
    // Homology degree j corresponds to i = |W| - j - 1; we need i > bound.
    let max_j = size as isize - bound as isize - 2;
    if max_j < -1 {
        return 0;
    }
    let keep = (max_j + 3) as usize; // cardinalities 0..=max_j+2
    let restricted: Vec<Vec<u64>> = faces
        .iter()
        .take(keep)
        .map(|layer| layer.iter().copied().filter(|&f| f & w == f).collect::<Vec<_>>())
        .take_while(|layer| !layer.is_empty())
        .collect();
    let betti = reduced_betti(&restricted, field, (max_j + 1) as usize);
    // betti[k] is the reduced Betti number in degree k - 1.
    for (k, &b) in betti.iter().enumerate() {
        let j = k as isize - 1;
        if j > max_j {
            break;
        }
        if b != 0 {
            return (size as isize - j - 1) as usize;
        }
    }
    0
}

pub fn depth(i: &MonomialIdeal, field: FieldSpec) -> Result<usize> {
    let (p, added) = squarefree_model(i);
    let n = p.nvars();
    if n > DEPTH_VAR_LIMIT {
        return Err(Error::SizeLimit(format!(
            "depth needs {n} variables after polarization, limit is {DEPTH_VAR_LIMIT}"
        )));
    }
    let gens = squarefree_masks(&p)?;
    if gens.contains(&0) {
        return Ok(0);
    }
    let pd = projective_dimension(n, &gens, field);
    Ok(n - pd - added)
}

pub fn is_cohen_macaulay(i: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    Ok(depth(i, field)? == krull_dim(i)?)
}

pub fn f_vector(c: &SimplicialComplex) -> FVector {
    c.f_vector()
}

/// Hilbert series of `S/I`; the numerator is computed from the f-vector of the (polarized)
/// Stanley–Reisner complex and the denominator power equals the Krull dimension.
pub fn hilbert_series(i: &MonomialIdeal) -> Result<HilbertSeries> {
    let (p, added) = squarefree_model(i);
    let f = stanley_reisner_complex(&p)?.f_vector().0;
    if f.is_empty() {
        return Ok(HilbertSeries { numerator: vec![], denominator_power: 0 });
    }
    let d = f.len() - 1;
    // h(t) = Σ_i f_{i-1} t^i (1-t)^{d-i}
    let mut h = vec![0i64; d + 1];
    for (i, &fi) in f.iter().enumerate() {
        let mut binom = 1i64;
        for k in 0..=(d - i) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            h[i + k] += sign * binom * fi as i64;
            binom = binom * (d - i - k) as i64 / (k as i64 + 1);
        }
    }
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    Ok(HilbertSeries { numerator: h, denominator_power: d - added })
}

/// Hilbert–Samuel multiplicity: the Hilbert numerator evaluated at 1.
pub fn multiplicity(i: &MonomialIdeal) -> Result<u64> {
    Ok(hilbert_series(i)?.numerator_at_one().max(0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::poly::{monomials_of_degree, Monomial};

    fn sigma(g: &Graph) -> MonomialIdeal {
        MonomialIdeal::edge_ideal(&g.whisker_all().unwrap()).unwrap()
    }

    const FIELDS: [FieldSpec; 2] = [FieldSpec::Rational, FieldSpec::Prime(2)];

    #[test]
    fn complexes_of_small_ideals() {
        let k2 = MonomialIdeal::edge_ideal(&Graph::complete(2).unwrap()).unwrap();
        let c = stanley_reisner_complex(&k2).unwrap();
        assert_eq!(c.facet_lists(), vec![vec![0], vec![1]]);
        assert_eq!(f_vector(&c), FVector(vec![1, 2]));

        // Vertices v1, v2, w1, w2 in that order.
        let s = stanley_reisner_complex(&sigma(&Graph::complete(2).unwrap())).unwrap();
        assert_eq!(s.facet_lists(), vec![vec![0, 3], vec![1, 2], vec![2, 3]]);
        assert_eq!(f_vector(&s), FVector(vec![1, 4, 3]));

        let z = MonomialIdeal::zero(vec!["a".into(), "b".into()]).unwrap();
        let c = stanley_reisner_complex(&z).unwrap();
        assert_eq!(c.facet_lists(), vec![vec![0, 1]]);
        assert_eq!(f_vector(&c), FVector(vec![1, 2, 1]));

        let sq = MonomialIdeal::parse(&["x"], &["x^2"]).unwrap();
        assert_eq!(stanley_reisner_complex(&sq), Err(Error::NotSquarefree));
    }

    #[test]
    fn dimension_and_depth_examples() {
        let sk2 = sigma(&Graph::complete(2).unwrap());
        assert_eq!(krull_dim(&sk2).unwrap(), 2);
        let kpp = MonomialIdeal::edge_ideal(&Graph::path(3).unwrap())
            .unwrap()
            .add_squares(&["v1", "v2"])
            .unwrap();
        assert_eq!(krull_dim(&kpp).unwrap(), 1);
        let tilde = MonomialIdeal::edge_ideal(
            &Graph::complete(2).unwrap().whisker_except(1).unwrap(),
        )
        .unwrap();
        for f in FIELDS {
            assert_eq!(depth(&sk2, f).unwrap(), 2);
            assert_eq!(depth(&tilde, f).unwrap(), 1);
            assert_eq!(depth(&kpp, f).unwrap(), 0);
            assert!(!is_cohen_macaulay(&kpp, f).unwrap());
        }
        for n in 0..4 {
            let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let z = MonomialIdeal::zero(vars).unwrap();
            assert_eq!(krull_dim(&z).unwrap(), n);
            assert_eq!(depth(&z, FieldSpec::Rational).unwrap(), n);
            assert!(is_cohen_macaulay(&z, FieldSpec::Prime(3)).unwrap());
        }
    }

    #[test]
    fn depth_of_reisner_example_depends_on_characteristic() {
        // Stanley–Reisner ideal of the six-vertex projective plane: CM only away from char 2.
        let tris: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets: Vec<u64> = tris.iter().map(|t| t.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let vars: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
        let mut gens = Vec::new();
        for d in 1..=3 {
            for m in monomials_of_degree(6, d) {
                if m.is_squarefree() && !facets.iter().any(|&f| m.support_mask() & f == m.support_mask()) {
                    gens.push(m);
                }
            }
        }
        let i = MonomialIdeal::new(vars, gens).unwrap();
        assert_eq!(krull_dim(&i).unwrap(), 3);
        assert!(is_cohen_macaulay(&i, FieldSpec::Rational).unwrap());
        assert!(is_cohen_macaulay(&i, FieldSpec::Prime(3)).unwrap());
        assert!(!is_cohen_macaulay(&i, FieldSpec::Prime(2)).unwrap());
    }

    #[test]
    fn hilbert_series_examples() {
        let x = MonomialIdeal::zero(vec!["x".into()]).unwrap();
        assert_eq!(
            hilbert_series(&x).unwrap(),
            HilbertSeries { numerator: vec![1], denominator_power: 1 }
        );
        let k2 = MonomialIdeal::edge_ideal(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(
            hilbert_series(&k2).unwrap(),
            HilbertSeries { numerator: vec![1, 1], denominator_power: 1 }
        );
        let sk2 = sigma(&Graph::complete(2).unwrap());
        assert_eq!(
            hilbert_series(&sk2).unwrap(),
            HilbertSeries { numerator: vec![1, 2], denominator_power: 2 }
        );
        assert_eq!(multiplicity(&x).unwrap(), 1);
        assert_eq!(multiplicity(&k2).unwrap(), 2);
        assert_eq!(multiplicity(&sk2).unwrap(), 3);
    }

    /// Brute-force Hilbert function: count standard monomials degree by degree.
    fn hilbert_function_oracle(i: &MonomialIdeal, len: usize) -> Vec<i64> {
        (0..len as u32)
            .map(|d| {
                monomials_of_degree(i.nvars(), d)
                    .into_iter()
                    .filter(|m| !i.contains(m))
                    .count() as i64
            })
            .collect()
    }

    #[test]
    fn series_matches_monomial_count() {
        let cases = [
            MonomialIdeal::parse(&["x", "y"], &["x^2", "x*y"]).unwrap(),
            MonomialIdeal::parse(&["x", "y", "z"], &["x*y", "y*z^3", "x^2*z"]).unwrap(),
            MonomialIdeal::edge_ideal(&Graph::path(3).unwrap())
                .unwrap()
                .add_squares(&["v1", "v2"])
                .unwrap(),
            sigma(&Graph::cycle(4).unwrap()),
        ];
        for i in cases {
            let s = hilbert_series(&i).unwrap();
            assert_eq!(s.expand(8), hilbert_function_oracle(&i, 8), "{:?}", i.render_gens());
            assert_eq!(s.denominator_power, krull_dim(&i).unwrap());
        }
    }

    /// Depth by the link criterion: for squarefree I, S/I is CM iff every link is
    /// acyclic below its top dimension (Reisner). Used as an independent CM oracle.
    fn reisner_cm(c: &SimplicialComplex, field: FieldSpec) -> bool {
        let faces: Vec<u64> = c.faces_by_size().into_iter().flatten().collect();
        faces.iter().all(|&face| {
            let link_faces: Vec<u64> = faces
                .iter()
                .copied()
                .filter(|&g| g & face == 0 && c.contains(g | face))
                .collect();
            let link = SimplicialComplex::from_faces(c.n(), link_faces);
            let h = link.reduced_homology(field);
            let top = h.len() - 1;
            h[..top].iter().all(|&b| b == 0)
        })
    }

    #[test]
    fn cm_agrees_with_link_criterion() {
        for g in crate::graph::corpus(5).unwrap() {
            let i = MonomialIdeal::edge_ideal(&g).unwrap();
            let c = stanley_reisner_complex(&i).unwrap();
            for f in FIELDS {
                assert_eq!(is_cohen_macaulay(&i, f).unwrap(), reisner_cm(&c, f), "{g:?}");
            }
        }
    }

    #[test]
    fn whiskered_graphs_are_cm() {
        for g in crate::graph::corpus(4).unwrap() {
            let i = sigma(&g);
            assert_eq!(krull_dim(&i).unwrap(), g.n());
            for f in FIELDS {
                assert!(is_cohen_macaulay(&i, f).unwrap());
            }
        }
    }

    #[test]
    fn depth_never_exceeds_dimension() {
        for g in crate::graph::corpus(4).unwrap() {
            let i = MonomialIdeal::edge_ideal(&g).unwrap().add_all_squares();
            assert!(depth(&i, FieldSpec::Prime(2)).unwrap() <= krull_dim(&i).unwrap());
        }
    }

    #[test]
    fn size_limit() {
        let vars: Vec<String> = (0..15).map(|i| format!("x{i}")).collect();
        let gens = vec![Monomial::var(15, 0).mul(&Monomial::var(15, 1))];
        let i = MonomialIdeal::new(vars, gens).unwrap();
        assert!(matches!(depth(&i, FieldSpec::Rational), Err(Error::SizeLimit(_))));
    }
}
