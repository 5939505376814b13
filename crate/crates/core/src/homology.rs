//! Minimal free resolutions over a [`LocalAlgebra`] and the invariants read off from them:
//! Betti and Bass numbers, Ext, Tor, total reflexivity and semidualizing checks.
//!
//! A free module `A^β` is handled through its k-basis `(j, b)` ↦ `j * dim A + b`. Syzygy
//! modules are kept as subspaces of the previous free module, so each step is sparse linear
//! algebra: a kernel, followed by a basis of `K / mK`.

use std::sync::Arc;

use serde::Serialize;

use crate::artin::LocalAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse_axpy, sparse_kernel, sparse_rank, to_sparse, SparseEchelon, SparseVec};
use crate::module::{merge_sparse, FPModule};

/// Largest homological index accepted by every bounded computation.
pub const MAX_BOUND: usize = 12;

fn check_bound(b: usize) -> Result<()> {
    if b > MAX_BOUND {
        Err(Error::BoundTooLarge(b))
    } else {
        Ok(())
    }
}

/// `F_len → ... → F_1 → F_0 → M → 0`, minimal.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    algebra: Arc<LocalAlgebra<F>>,
    betti: Vec<usize>,
    /// `differentials[i][c]` is the image of the `c`-th basis element of `F_{i+1}` in `F_i`.
    differentials: Vec<Vec<SparseVec<F::Elem>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub betti: Vec<usize>,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn len(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.betti.is_empty()
    }

    /// Entry `(r, c)` of the `i`-th differential `F_i → F_{i-1}`, an element of the algebra.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let d = self.algebra.dim();
        let mut out = vec![f.zero(); d];
        for (idx, x) in &self.differentials[i - 1][c] {
            if idx / d == r {
                out[idx % d] = x.clone();
            }
        }
        out
    }

    /// Images of the basis of `F_i` in `F_{i-1}`, `1 <= i <= len`.
    pub fn differential(&self, i: usize) -> &[SparseVec<F::Elem>] {
        &self.differentials[i - 1]
    }
}

/// `x_v · w` for `w` in a free module.
fn free_var_action<F: Field>(a: &LocalAlgebra<F>, v: usize, w: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let f = a.field();
    let d = a.dim();
    let mut out = Vec::new();
    for (idx, c) in w {
        let (j, b) = (idx / d, idx % d);
        for (k, y) in a.var_times(v, b) {
            out.push((j * d + k, f.mul(c, y)));
        }
    }
    merge_sparse(f, out)
}

/// `b · w` for every basis element `b` of the algebra, following the parent chain.
fn orbit<F: Field>(a: &LocalAlgebra<F>, w: &SparseVec<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut out: Vec<SparseVec<F::Elem>> = Vec::with_capacity(a.dim());
    for b in 0..a.dim() {
        let v = match a.parent(b) {
            None => w.clone(),
            Some((x, q)) => free_var_action(a, x, &out[q]),
        };
        out.push(v);
    }
    out
}

/// Basis of `K / mK` chosen greedily from `kernel`, where `K` is the span of `kernel`.
fn minimal_generators_of<F: Field>(a: &LocalAlgebra<F>, kernel: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut ech = SparseEchelon::new(a.field());
    for w in kernel {
        for v in 0..a.nvars() {
            ech.insert(free_var_action(a, v, w));
        }
    }
    kernel.iter().filter(|w| ech.insert((*w).clone())).cloned().collect()
}

fn combine<F: Field>(f: &F, coeffs: &SparseVec<F::Elem>, columns: &[SparseVec<F::Elem>]) -> SparseVec<F::Elem> {
    let mut out = Vec::new();
    for (i, c) in coeffs {
        out = sparse_axpy(f, &out, c, &columns[*i]);
    }
    out
}

/// Minimal free resolution with Betti numbers `β_0..=β_len`.
pub fn minimal_resolution<F: Field>(m: &FPModule<F>, len: usize) -> Result<Resolution<F>> {
    check_bound(len)?;
    let a = m.algebra().clone();
    let f = a.field();
    let d = a.dim();
    let gens = m.minimal_generators();
    let mut betti = vec![gens.len()];
    // Columns of the augmentation F_0 → M.
    let mut columns: Vec<SparseVec<F::Elem>> = Vec::with_capacity(gens.len() * d);
    for g in &gens {
        for act in m.basis_actions() {
            columns.push(to_sparse(f, &act.mul_vec(g)?));
        }
    }
    let mut differentials = Vec::new();
    for _ in 1..=len {
        let kernel = sparse_kernel(f, &columns);
        let next = minimal_generators_of(&a, &kernel);
        for g in &next {
            if g.iter().any(|(idx, _)| idx % d == 0) {
                return Err(Error::Internal("resolution differential has a unit entry".into()));
            }
            if !combine(f, g, &columns).is_empty() {
                return Err(Error::Internal("consecutive differentials do not compose to zero".into()));
            }
        }
        columns = next.iter().flat_map(|g| orbit(&a, g)).collect();
        betti.push(next.len());
        differentials.push(next);
    }
    Ok(Resolution { algebra: a, betti, differentials })
}

pub fn poincare_truncation<F: Field>(m: &FPModule<F>, b: usize) -> Result<Vec<usize>> {
    Ok(minimal_resolution(m, b)?.betti)
}

/// Rank of `δ^i: Hom(F_i, N) → Hom(F_{i+1}, N)` for `i = 0..len`, written as the span of rows
/// indexed by `(c, n')`: row `(c, n')` has block `r` equal to row `n'` of the action of
/// `d_{i+1}[r][c]` on `N`.
fn cochain_ranks<F: Field>(res: &Resolution<F>, n: &FPModule<F>) -> Vec<usize> {
    let f = n.field();
    let d = res.algebra.dim();
    let dn = n.dim();
    let acts = n.basis_actions();
    res.differentials
        .iter()
        .map(|gens| {
            let rows: Vec<SparseVec<F::Elem>> = gens
                .iter()
                .flat_map(|g| {
                    (0..dn).map(move |row| {
                        let mut out = Vec::new();
                        for (idx, c) in g {
                            let (r, b) = (idx / d, idx % d);
                            for (k, x) in acts[b].row(row).iter().enumerate() {
                                if !f.is_zero(x) {
                                    out.push((r * dn + k, f.mul(c, x)));
                                }
                            }
                        }
                        merge_sparse(f, out)
                    })
                })
                .collect();
            sparse_rank(f, &rows)
        })
        .collect()
}

/// Rank of `d_i ⊗ N: N^{β_i} → N^{β_{i-1}}` for `i = 1..=len`; column `(c, n)` has block `r`
/// equal to column `n` of the action of `d_i[r][c]`.
fn chain_ranks<F: Field>(res: &Resolution<F>, n: &FPModule<F>) -> Vec<usize> {
    let f = n.field();
    let d = res.algebra.dim();
    let dn = n.dim();
    let acts = n.basis_actions();
    res.differentials
        .iter()
        .map(|gens| {
            let cols: Vec<SparseVec<F::Elem>> = gens
                .iter()
                .flat_map(|g| {
                    (0..dn).map(move |col| {
                        let mut out = Vec::new();
                        for (idx, c) in g {
                            let (r, b) = (idx / d, idx % d);
                            for k in 0..dn {
                                let x = &acts[b][(k, col)];
                                if !f.is_zero(x) {
                                    out.push((r * dn + k, f.mul(c, x)));
                                }
                            }
                        }
                        merge_sparse(f, out)
                    })
                })
                .collect();
            sparse_rank(f, &cols)
        })
        .collect()
}

/// `dim Ext^i(M, N)` for `i = 0..upto`, from a resolution of length at least `upto + 1`.
pub fn ext_dims_from<F: Field>(res: &Resolution<F>, n: &FPModule<F>, upto: usize) -> Vec<usize> {
    assert!(res.len() > upto, "resolution too short");
    let ranks = cochain_ranks(res, n);
    (0..=upto)
        .map(|i| {
            let prev = if i == 0 { 0 } else { ranks[i - 1] };
            res.betti[i] * n.dim() - ranks[i] - prev
        })
        .collect()
}

/// `dim Tor_i(M, N)` for `i = 0..upto`, from a resolution of length at least `upto + 1`.
pub fn tor_dims_from<F: Field>(res: &Resolution<F>, n: &FPModule<F>, upto: usize) -> Vec<usize> {
    assert!(res.len() > upto, "resolution too short");
    let ranks = chain_ranks(res, n);
    (0..=upto)
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            res.betti[i] * n.dim() - out - ranks[i]
        })
        .collect()
}

pub fn ext<F: Field>(m: &FPModule<F>, n: &FPModule<F>, i: usize) -> Result<usize> {
    m.same_algebra_as(n)?;
    check_bound(i)?;
    let res = minimal_resolution(m, i + 1)?;
    Ok(ext_dims_from(&res, n, i)[i])
}

pub fn tor<F: Field>(m: &FPModule<F>, n: &FPModule<F>, i: usize) -> Result<usize> {
    m.same_algebra_as(n)?;
    check_bound(i)?;
    let res = minimal_resolution(m, i + 1)?;
    Ok(tor_dims_from(&res, n, i)[i])
}

/// `dim Ext^i(k, M)` for `i = 0..=b`.
pub fn bass_truncation<F: Field>(m: &FPModule<F>, b: usize) -> Result<Vec<usize>> {
    check_bound(b)?;
    let k = FPModule::residue_field(m.algebra());
    let res = minimal_resolution(&k, b + 1)?;
    Ok(ext_dims_from(&res, m, b))
}

/// Biduality plus `Ext^i(M, A) = 0 = Ext^i(M*, A)` for `1 <= i <= b`.
pub fn is_totally_reflexive_up_to<F: Field>(m: &FPModule<F>, b: usize) -> Result<bool> {
    check_bound(b)?;
    if !m.biduality_is_iso() {
        return Ok(false);
    }
    let a = FPModule::free(m.algebra(), 1);
    for module in [m.clone(), m.dual()] {
        let res = minimal_resolution(&module, b + 1)?;
        if ext_dims_from(&res, &a, b)[1..].iter().any(|&e| e != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Homothety `A → Hom(C, C)` bijective and `Ext^i(C, C) = 0` for `1 <= i <= b`.
pub fn is_semidualizing_up_to<F: Field>(c: &FPModule<F>, b: usize) -> Result<bool> {
    check_bound(b)?;
    if !c.homothety_is_iso() {
        return Ok(false);
    }
    let res = minimal_resolution(c, b + 1)?;
    Ok(ext_dims_from(&res, c, b)[1..].iter().all(|&e| e == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::ideal::Presentation;

    fn alg(vars: &[&str], gens: &[&str], n: u32) -> Arc<LocalAlgebra<Rationals>> {
        let p = Presentation::parse(vars, gens, FieldSpec::Rational).unwrap();
        Arc::new(LocalAlgebra::truncate(&Rationals, &p, n).unwrap())
    }

    fn alg2(vars: &[&str], gens: &[&str], n: u32) -> Arc<LocalAlgebra<PrimeField>> {
        let f = PrimeField::new(2).unwrap();
        let p = Presentation::parse(vars, gens, f.spec()).unwrap();
        Arc::new(LocalAlgebra::truncate(&f, &p, n).unwrap())
    }

    #[test]
    fn betti_of_residue_field() {
        let a = alg(&["x"], &["x^2"], 3);
        let k = FPModule::residue_field(&a);
        assert_eq!(minimal_resolution(&k, 5).unwrap().betti(), &[1, 1, 1, 1, 1, 1]);
        let s = alg(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let k = FPModule::residue_field(&s);
        assert_eq!(minimal_resolution(&k, 5).unwrap().betti(), &[1, 2, 4, 8, 16, 32]);
        let c = alg(&["x", "y"], &["x^2", "y^2"], 3);
        let k = FPModule::residue_field(&c);
        assert_eq!(minimal_resolution(&k, 5).unwrap().betti(), &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn bound_checked() {
        let a = alg(&["x"], &["x^2"], 3);
        let k = FPModule::residue_field(&a);
        assert_eq!(minimal_resolution(&k, 13).unwrap_err(), Error::BoundTooLarge(13));
    }

    #[test]
    fn poincare_examples() {
        let s = alg(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let free = FPModule::free(&s, 3);
        assert_eq!(poincare_truncation(&free, 3).unwrap(), vec![3, 0, 0, 0]);
        let r = alg(&["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2"], 4);
        let m = FPModule::cyclic_module(&r, &[r.parse_element("z").unwrap()]).unwrap();
        assert!(poincare_truncation(&m, 6).unwrap().iter().all(|&b| b > 0));
    }

    #[test]
    fn tor_matches_betti() {
        let s = alg2(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let k = FPModule::residue_field(&s);
        let res = minimal_resolution(&k, 6).unwrap();
        assert_eq!(tor_dims_from(&res, &k, 5), vec![1, 2, 4, 8, 16, 32]);
        let a = alg(&["x"], &["x^2"], 3);
        let k = FPModule::residue_field(&a);
        assert_eq!(tor(&k, &k, 1).unwrap(), 1);
        let n = FPModule::cyclic_module(&a, &[]).unwrap();
        assert_eq!(tor(&n, &k, 0).unwrap(), 1);
        assert_eq!(tor(&n, &FPModule::free(&a, 2), 0).unwrap(), 4);
    }

    #[test]
    fn ext_examples() {
        let a = alg(&["x"], &["x^2"], 3);
        let k = FPModule::residue_field(&a);
        assert_eq!(ext(&k, &k, 1).unwrap(), 1);
        let free = FPModule::free(&a, 1);
        assert_eq!(ext(&free, &k, 0).unwrap(), 1);
        assert_eq!(ext(&free, &free, 0).unwrap(), 2);
        let r = alg(&["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2"], 4);
        let m = FPModule::cyclic_module(&r, &[r.parse_element("z").unwrap()]).unwrap();
        let rr = FPModule::free(&r, 1);
        let res = minimal_resolution(&m, 7).unwrap();
        assert!(ext_dims_from(&res, &rr, 6)[1..].iter().all(|&e| e == 0));
    }

    #[test]
    fn bass_examples() {
        let a = alg(&["x"], &["x^2"], 3);
        assert_eq!(bass_truncation(&FPModule::free(&a, 1), 4).unwrap(), vec![1, 0, 0, 0, 0]);
        let s = alg(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        assert_eq!(bass_truncation(&FPModule::free(&s, 1), 3).unwrap()[0], 2);
        let w = FPModule::canonical_module(&s);
        assert_eq!(bass_truncation(&w, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn reflexivity_examples() {
        let r = alg(&["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2"], 4);
        let m = FPModule::cyclic_module(&r, &[r.parse_element("z").unwrap()]).unwrap();
        assert!(is_totally_reflexive_up_to(&m, 6).unwrap());
        assert!(is_totally_reflexive_up_to(&FPModule::free(&r, 2), 3).unwrap());
        let s = alg(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let k = FPModule::residue_field(&s);
        assert!(!is_totally_reflexive_up_to(&k, 6).unwrap());
        assert!(ext(&k, &FPModule::free(&s, 1), 1).unwrap() > 0);
    }

    #[test]
    fn semidualizing_examples() {
        let s = alg(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        assert!(is_semidualizing_up_to(&FPModule::free(&s, 1), 6).unwrap());
        assert!(is_semidualizing_up_to(&FPModule::canonical_module(&s), 6).unwrap());
        assert!(!is_semidualizing_up_to(&FPModule::residue_field(&s), 6).unwrap());
    }

    #[test]
    fn residue_field_betti_never_decrease() {
        let cases: [(&[&str], &[&str]); 4] = [
            (&["x"], &["x^3"]),
            (&["x", "y"], &["x^2", "y^3"]),
            (&["x", "y"], &["x^2", "x*y"]),
            (&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y*z"]),
        ];
        for (vars, gens) in cases {
            let a = alg2(vars, gens, 4);
            let b = poincare_truncation(&FPModule::residue_field(&a), 5).unwrap();
            assert!(b.windows(2).all(|w| w[1] >= w[0]), "{gens:?}: {b:?}");
        }
    }
}
