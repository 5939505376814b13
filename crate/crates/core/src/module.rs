//! Finite-dimensional modules over a [`LocalAlgebra`], stored as a k-basis with one action
//! matrix per variable. The action of any algebra element is derived from these, since the
//! basis monomials of the algebra are products of variables.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::artin::LocalAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse_kernel, to_dense, to_sparse, Matrix, SparseEchelon, SparseVec, Subspace};

#[derive(Clone)]
pub struct FPModule<F: Field> {
    algebra: Arc<LocalAlgebra<F>>,
    dim: usize,
    var_actions: Vec<Matrix<F>>,
    label: Option<String>,
    basis_actions: OnceLock<Vec<Matrix<F>>>,
}

impl<F: Field> fmt::Debug for FPModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FPModule")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("algebra", &self.algebra)
            .finish()
    }
}

/// `{"label": "k", "dim": 1, "actions": [[["0"]], [["0"]]]}`: one row-major action matrix per
/// algebra variable, entries written as integers or fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub actions: Vec<Vec<Vec<String>>>,
}

/// Whether two algebra handles describe the same algebra.
pub fn same_algebra<F: Field>(a: &Arc<LocalAlgebra<F>>, b: &Arc<LocalAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.presentation() == b.presentation()
            && a.trunc_order() == b.trunc_order()
            && a.field_spec() == b.field_spec())
}

impl<F: Field> FPModule<F> {
    /// Module with the given variable actions, checked against the algebra's relations.
    pub fn new(algebra: Arc<LocalAlgebra<F>>, var_actions: Vec<Matrix<F>>, label: Option<String>) -> Result<Self> {
        if var_actions.len() != algebra.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} variables",
                var_actions.len(),
                algebra.nvars()
            )));
        }
        let dim = var_actions.first().map_or(0, |m| m.rows());
        if var_actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("action matrices must be square of equal size".into()));
        }
        let m = Self::new_unchecked(algebra, var_actions, label);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<LocalAlgebra<F>>, var_actions: Vec<Matrix<F>>, label: Option<String>) -> Self {
        let dim = var_actions.first().map_or(0, |m| m.rows());
        FPModule {
            algebra,
            dim,
            var_actions,
            label,
            basis_actions: OnceLock::new(),
        }
    }

    /// Verifies that the variable actions commute and satisfy every relation of the algebra:
    /// `x · (action of b) = action of (x b)` for each variable `x` and basis monomial `b`.
    pub fn check(&self) -> Result<()> {
        let a = &self.algebra;
        for (i, x) in self.var_actions.iter().enumerate() {
            for y in &self.var_actions[i + 1..] {
                if x.mul(y)? != y.mul(x)? {
                    return Err(Error::Precondition("variable actions do not commute".into()));
                }
            }
        }
        let acts = self.basis_actions();
        for (v, x) in self.var_actions.iter().enumerate() {
            for (b, act) in acts.iter().enumerate() {
                let expected = self.action_of_sparse(a.var_times(v, b));
                if x.mul(act)? != expected {
                    return Err(Error::Precondition(format!(
                        "action violates a relation: {} times {}",
                        a.vars()[v],
                        a.basis()[b].render(a.vars())
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
    pub fn var_actions(&self) -> &[Matrix<F>] {
        &self.var_actions
    }

    /// Action matrices of every algebra basis element.
    pub fn basis_actions(&self) -> &[Matrix<F>] {
        self.basis_actions.get_or_init(|| {
            let a = &self.algebra;
            let mut out: Vec<Matrix<F>> = Vec::with_capacity(a.dim());
            for b in 0..a.dim() {
                let m = match a.parent(b) {
                    None => Matrix::identity(self.field(), self.dim),
                    Some((v, q)) => self.var_actions[v].mul(&out[q]).expect("square matrices"),
                };
                out.push(m);
            }
            out
        })
    }

    fn action_of_sparse(&self, e: &SparseVec<F::Elem>) -> Matrix<F> {
        let f = self.field();
        let acts = self.basis_actions();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (b, c) in e {
            out = out.add(&acts[*b].scale(c)).expect("equal shapes");
        }
        out
    }

    /// Matrix of the action of an algebra element.
    pub fn action_of(&self, e: &[F::Elem]) -> Matrix<F> {
        self.action_of_sparse(&to_sparse(self.field(), e))
    }

    /// Applies variable `v` to a module vector.
    pub fn apply_var(&self, v: usize, m: &[F::Elem]) -> Vec<F::Elem> {
        self.var_actions[v].mul_vec(m).expect("vector length matches the module")
    }

    pub fn to_json(&self) -> ModuleJson {
        let actions = self
            .var_actions
            .iter()
            .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.to_string()).collect()).collect())
            .collect();
        ModuleJson { label: self.label.clone(), dim: self.dim, actions }
    }

    /// Rebuilds a module over `algebra`, checking that the matrices define an action.
    pub fn from_json(algebra: &Arc<LocalAlgebra<F>>, json: &ModuleJson) -> Result<Self> {
        let f = algebra.field();
        if json.actions.len() != algebra.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} variables",
                json.actions.len(),
                algebra.nvars()
            )));
        }
        let acts = json
            .actions
            .iter()
            .map(|rows| {
                if rows.len() != json.dim || rows.iter().any(|r| r.len() != json.dim) {
                    return Err(Error::DimensionMismatch(format!("action matrix is not {0}x{0}", json.dim)));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|e| f.parse_elem(e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if json.dim == 0 {
                    Ok(Matrix::zeros(f, 0, 0))
                } else {
                    Matrix::from_rows(f, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra.clone(), acts, json.label.clone())
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(algebra: &Arc<LocalAlgebra<F>>) -> Self {
        let f = algebra.field();
        let acts = (0..algebra.nvars()).map(|_| Matrix::zeros(f, 1, 1)).collect();
        Self::new_unchecked(algebra.clone(), acts, Some("k".into()))
    }

    /// The free module `A^rank`.
    pub fn free(algebra: &Arc<LocalAlgebra<F>>, rank: usize) -> Self {
        let f = algebra.field();
        let d = algebra.dim();
        let acts = (0..algebra.nvars())
            .map(|v| {
                let mut m = Matrix::zeros(f, rank * d, rank * d);
                for j in 0..rank {
                    for c in 0..d {
                        for (r, x) in algebra.var_times(v, c) {
                            m[(j * d + r, j * d + c)] = x.clone();
                        }
                    }
                }
                m
            })
            .collect();
        let label = if rank == 1 { "A".to_string() } else { format!("A^{rank}") };
        Self::new_unchecked(algebra.clone(), acts, Some(label))
    }

    /// `A/(gens)`.
    pub fn cyclic_module(algebra: &Arc<LocalAlgebra<F>>, gens: &[Vec<F::Elem>]) -> Result<Self> {
        if gens.iter().any(|g| g.len() != algebra.dim()) {
            return Err(Error::DimensionMismatch("element length differs from the algebra dimension".into()));
        }
        if gens.iter().any(|g| !algebra.in_maximal_ideal(g)) {
            return Err(Error::Precondition("cyclic module generators must lie in m".into()));
        }
        let label = if gens.is_empty() {
            "A".to_string()
        } else {
            let names: Vec<String> = gens.iter().map(|g| algebra.render_element(g)).collect();
            format!("A/({})", names.join(", "))
        };
        Ok(Self::free(algebra, 1).quotient(gens)?.with_label(label))
    }

    /// The submodule generated by the given vectors, as a k-subspace.
    pub fn generated_subspace(&self, vectors: &[Vec<F::Elem>]) -> Result<Subspace<F>> {
        if vectors.iter().any(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch("vector length differs from the module dimension".into()));
        }
        let f = self.field();
        let mut ech = SparseEchelon::new(f);
        let mut accepted = Vec::new();
        let mut queue: Vec<Vec<F::Elem>> = vectors.to_vec();
        while let Some(v) = queue.pop() {
            if ech.insert(to_sparse(f, &v)) {
                for x in 0..self.var_actions.len() {
                    queue.push(self.apply_var(x, &v));
                }
                accepted.push(v);
            }
        }
        Subspace::spanned_by(f, self.dim, &accepted)
    }

    /// `M / N` where `N` is the submodule generated by `vectors`.
    pub fn quotient(&self, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let sub = self.generated_subspace(vectors)?;
        let free = sub.free_columns();
        let f = self.field();
        let acts = self
            .var_actions
            .iter()
            .map(|x| {
                let cols: Vec<Vec<F::Elem>> = free
                    .iter()
                    .map(|&c| sub.quotient_coordinates(&x.column(c)))
                    .collect();
                Matrix::from_columns(f, free.len(), &cols).expect("consistent lengths")
            })
            .collect();
        Ok(Self::new_unchecked(self.algebra.clone(), acts, None))
    }

    /// The submodule generated by `vectors`, with basis the reduced echelon basis of its span.
    pub fn submodule(&self, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let sub = self.generated_subspace(vectors)?;
        Ok(self.restrict_to(&sub))
    }

    /// Restriction to a subspace that is known to be a submodule.
    fn restrict_to(&self, sub: &Subspace<F>) -> Self {
        let f = self.field();
        let acts = self
            .var_actions
            .iter()
            .map(|x| {
                let cols: Vec<Vec<F::Elem>> = sub
                    .basis()
                    .iter()
                    .map(|b| {
                        sub.coordinates(&x.mul_vec(b).expect("length"))
                            .expect("subspace is closed under the action")
                    })
                    .collect();
                Matrix::from_columns(f, sub.dim(), &cols).expect("consistent lengths")
            })
            .collect();
        Self::new_unchecked(self.algebra.clone(), acts, None)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_algebra_as(other)?;
        let f = self.field();
        let (m, n) = (self.dim, other.dim);
        let acts = self
            .var_actions
            .iter()
            .zip(&other.var_actions)
            .map(|(x, y)| {
                let mut out = Matrix::zeros(f, m + n, m + n);
                for r in 0..m {
                    for c in 0..m {
                        out[(r, c)] = x[(r, c)].clone();
                    }
                }
                for r in 0..n {
                    for c in 0..n {
                        out[(m + r, m + c)] = y[(r, c)].clone();
                    }
                }
                out
            })
            .collect();
        Ok(Self::new_unchecked(self.algebra.clone(), acts, None))
    }

    pub(crate) fn same_algebra_as(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebras)
        }
    }

    /// A minimal generating set: basis vectors chosen greedily modulo `mM`.
    pub fn minimal_generators(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let mut ech = SparseEchelon::new(f);
        for x in &self.var_actions {
            for c in 0..self.dim {
                ech.insert(to_sparse(f, &x.column(c)));
            }
        }
        let mut gens = Vec::new();
        for c in 0..self.dim {
            let mut e = vec![f.zero(); self.dim];
            e[c] = f.one();
            if ech.insert(to_sparse(f, &e)) {
                gens.push(e);
            }
        }
        gens
    }

    pub fn num_generators(&self) -> usize {
        self.minimal_generators().len()
    }

    /// The canonical module `Hom_k(A, k)` with `(x·φ)(y) = φ(xy)`.
    pub fn canonical_module(algebra: &Arc<LocalAlgebra<F>>) -> Self {
        let regular = Self::free(algebra, 1);
        let acts = regular.var_actions.iter().map(Matrix::transpose).collect();
        Self::new_unchecked(algebra.clone(), acts, Some("omega".into()))
    }

    /// `M* = Hom_A(M, A)`.
    pub fn dual(&self) -> Self {
        let a = Self::free(&self.algebra, 1);
        let hom = hom_subspace(self, &a);
        let label = self.label.as_ref().map(|l| format!("{l}*"));
        let mut m = a.hom_module(self, &hom);
        m.label = label;
        m
    }

    /// `Hom_A(source, self)` as a module, acting through `self`.
    fn hom_module(&self, source: &Self, hom: &Subspace<F>) -> Self {
        let f = self.field();
        let (dn, dm) = (self.dim, source.dim);
        let acts = self
            .var_actions
            .iter()
            .map(|x| {
                let cols: Vec<Vec<F::Elem>> = hom
                    .basis()
                    .iter()
                    .map(|phi| {
                        let phi_m = Matrix::from_rows(f, phi.chunks(dm).map(<[_]>::to_vec).collect())
                            .expect("rectangular");
                        let img = x.mul(&phi_m).expect("shapes");
                        let flat: Vec<F::Elem> = (0..dn).flat_map(|r| img.row(r).to_vec()).collect();
                        hom.coordinates(&flat).expect("Hom is closed under the action")
                    })
                    .collect();
                Matrix::from_columns(f, hom.dim(), &cols).expect("consistent lengths")
            })
            .collect();
        Self::new_unchecked(self.algebra.clone(), acts, None)
    }

    /// Whether the evaluation map `M → M**` is bijective.
    pub fn biduality_is_iso(&self) -> bool {
        let a = Self::free(&self.algebra, 1);
        let hom1 = hom_subspace(self, &a);
        let dual = a.hom_module(self, &hom1);
        let hom2 = hom_subspace(&dual, &a);
        if hom2.dim() != self.dim {
            return false;
        }
        let f = self.field();
        let (da, dm) = (a.dim, self.dim);
        let k = hom1.dim();
        // ev(e_c) sends φ_j to column c of φ_j; flattened row-major as a da × k matrix.
        let images: Vec<SparseVec<F::Elem>> = (0..dm)
            .map(|c| {
                let mut flat = vec![f.zero(); da * k];
                for (j, phi) in hom1.basis().iter().enumerate() {
                    for r in 0..da {
                        flat[r * k + j] = phi[r * dm + c].clone();
                    }
                }
                to_sparse(f, &flat)
            })
            .collect();
        crate::linalg::sparse_rank(f, &images) == dm
    }

    /// Whether `A → Hom_A(C, C)`, `a ↦ (c ↦ ac)`, is bijective.
    pub fn homothety_is_iso(&self) -> bool {
        let f = self.field();
        if hom_dim(self, self) != self.algebra.dim() {
            return false;
        }
        let flat: Vec<SparseVec<F::Elem>> = self
            .basis_actions()
            .iter()
            .map(|m| {
                let v: Vec<F::Elem> = (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect();
                to_sparse(f, &v)
            })
            .collect();
        crate::linalg::sparse_rank(f, &flat) == self.algebra.dim()
    }
}

/// `Hom_A(m, n)` as a subspace of flattened `dim n × dim m` matrices (row-major), computed as
/// the maps commuting with every variable action.
pub fn hom_subspace<F: Field>(m: &FPModule<F>, n: &FPModule<F>) -> Subspace<F> {
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let nv = m.var_actions.len();
    // Unknown φ[a][b] has index a*dm + b; equation (x, r, c) has index (x*dn + r)*dm + c.
    let columns: Vec<SparseVec<F::Elem>> = (0..dn * dm)
        .map(|u| {
            let (a, b) = (u / dm, u % dm);
            let mut col: Vec<(usize, F::Elem)> = Vec::new();
            for x in 0..nv {
                let (xm, xn) = (&m.var_actions[x], &n.var_actions[x]);
                for c in 0..dm {
                    let v = &xm[(b, c)];
                    if !f.is_zero(v) {
                        col.push(((x * dn + a) * dm + c, v.clone()));
                    }
                }
                for r in 0..dn {
                    let v = &xn[(r, a)];
                    if !f.is_zero(v) {
                        col.push(((x * dn + r) * dm + b, f.neg(v)));
                    }
                }
            }
            merge_sparse(f, col)
        })
        .collect();
    let kernel: Vec<Vec<F::Elem>> = sparse_kernel(f, &columns)
        .iter()
        .map(|k| to_dense(f, k, dn * dm))
        .collect();
    Subspace::spanned_by(f, dn * dm, &kernel).expect("kernel vectors have the ambient length")
}

pub fn hom_dim<F: Field>(m: &FPModule<F>, n: &FPModule<F>) -> usize {
    hom_subspace(m, n).dim()
}

/// Sorts by index and adds up repeated entries.
pub(crate) fn merge_sparse<F: Field>(f: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = f.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}
