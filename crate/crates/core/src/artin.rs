//! Truncated local algebras `A = k[x]/(I + m^N)` as explicit finite-dimensional algebras.
//!
//! The k-basis consists of standard monomials: the monomials of degree `< N` that are not
//! lowest terms of elements of `I + m^N`, for the local order "degree ascending, then `x`
//! before `y`". Lowest terms of an ideal form a monomial ideal, so the basis is closed under
//! division and every basis monomial equals the product of its variables in `A`.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::ideal::{MonomialIdeal, Presentation};
use crate::linalg::{sparse_axpy, to_dense, to_sparse, Matrix, SparseEchelon, SparseVec, Subspace};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

/// Largest k-dimension of the truncated polynomial ring handled by the general path.
pub const MAX_AMBIENT_MONOMIALS: usize = 6000;
/// Largest algebra dimension accepted.
pub const MAX_ALGEBRA_DIM: usize = 4000;
/// Tables up to this dimension are verified on every triple; larger ones are sampled.
pub const EXHAUSTIVE_CHECK_DIM: usize = 60;
pub const SAMPLED_TRIPLES: usize = 1000;
/// Largest number of lines in `m/m^2` the pair search will enumerate.
pub const MAX_SEARCH_LINES: usize = 400;

enum Reducer<E> {
    Monomial(MonomialIdeal),
    General(HashMap<Monomial, SparseVec<E>>),
}

/// A commutative local algebra of finite dimension over `F`, with its multiplication table.
pub struct LocalAlgebra<F: Field> {
    field: F,
    presentation: Presentation,
    trunc_order: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reducer: Reducer<F::Elem>,
    /// `mult[i * dim + j]` is the product of basis elements `i` and `j`.
    mult: Vec<SparseVec<F::Elem>>,
    /// `var_mult[v][c]` is `x_v` times basis element `c`.
    var_mult: Vec<Vec<SparseVec<F::Elem>>>,
    /// For each non-unit basis monomial: a variable dividing it and the index of the quotient.
    parent: Vec<Option<(usize, usize)>>,
    filtration: Vec<usize>,
}

impl<F: Field> fmt::Debug for LocalAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalAlgebra")
            .field("field", &self.field.spec())
            .field("vars", &self.presentation.vars())
            .field("gens", &self.presentation.render_gens())
            .field("trunc_order", &self.trunc_order)
            .field("dim", &self.dim())
            .finish()
    }
}

/// Linear form `Σ c_i x_i` over the presentation variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<E> {
    pub coeffs: Vec<E>,
}

impl<E: fmt::Display + PartialEq> LinearForm<E> {
    pub fn render(&self, vars: &[String], zero: &E, one: &E) -> String {
        let terms: Vec<(String, String)> = self
            .coeffs
            .iter()
            .zip(vars)
            .filter(|(c, _)| *c != zero)
            .map(|(c, v)| (c.to_string(), if c == one { v.clone() } else { format!("{c}*{v}") }))
            .collect();
        join_terms(terms)
    }
}

fn join_terms(terms: Vec<(String, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (coeff, text)) in terms.into_iter().enumerate() {
        match (k, text.strip_prefix('-')) {
            (0, _) => out.push_str(&text),
            (_, Some(rest)) if coeff.starts_with('-') => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            _ => {
                out.push_str(" + ");
                out.push_str(&text);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Two independent linear forms with zero product.
    Necessary,
    /// Additionally `m = αA ⊕ α′A`.
    Full,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "necessary" => Ok(SearchMode::Necessary),
            "full" => Ok(SearchMode::Full),
            other => Err(Error::Parse(format!("unknown search mode '{other}'"))),
        }
    }
}

impl<F: Field> LocalAlgebra<F> {
    /// Builds `k[x]/(I + m^n)` for the presentation's ideal `I` over `field`.
    pub fn truncate(field: &F, p: &Presentation, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("truncation order must be at least 1".into()));
        }
        let presentation = p.with_field(field.spec());
        let (basis, reducer) = match presentation.as_monomial_ideal() {
            Some(ideal) => (monomial_basis(&ideal, n)?, Reducer::Monomial(ideal)),
            None => general_basis(field, &presentation, n)?,
        };
        let mut alg = LocalAlgebra {
            field: field.clone(),
            presentation,
            trunc_order: n,
            index: basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect(),
            basis,
            reducer,
            mult: Vec::new(),
            var_mult: Vec::new(),
            parent: Vec::new(),
            filtration: Vec::new(),
        };
        alg.build_tables();
        alg.verify_table()?;
        Ok(alg)
    }

    fn build_tables(&mut self) {
        let d = self.dim();
        let nv = self.nvars();
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i..d {
                let prod = self.reduce_monomial(&self.basis[i].mul(&self.basis[j]));
                mult[j * d + i] = prod.clone();
                mult[i * d + j] = prod;
            }
        }
        self.mult = mult;
        self.var_mult = (0..nv)
            .map(|v| {
                let x = Monomial::var(nv, v);
                (0..d).map(|c| self.reduce_monomial(&x.mul(&self.basis[c]))).collect()
            })
            .collect();
        self.parent = self
            .basis
            .iter()
            .map(|b| {
                let v = b.0.iter().position(|&e| e > 0)?;
                let q = b.div(&Monomial::var(nv, v)).expect("variable divides");
                Some((v, self.index[&q]))
            })
            .collect();
        let n = self.trunc_order as usize;
        self.filtration = (0..=n)
            .map(|j| self.basis.iter().filter(|b| b.degree() as usize >= j).count())
            .collect();
    }

    /// Normal form of a monomial, zero when its degree reaches the truncation order.
    fn reduce_monomial(&self, m: &Monomial) -> SparseVec<F::Elem> {
        if m.degree() >= self.trunc_order {
            return Vec::new();
        }
        match &self.reducer {
            Reducer::Monomial(ideal) => match self.index.get(m) {
                Some(&i) if !ideal.contains(m) => vec![(i, self.field.one())],
                _ => Vec::new(),
            },
            Reducer::General(nf) => nf[m].clone(),
        }
    }

    fn verify_table(&self) -> Result<()> {
        let d = self.dim();
        let f = &self.field;
        if d == 0 {
            return Err(Error::Internal("empty algebra".into()));
        }
        for i in 0..d {
            if self.mult[i] != vec![(i, f.one())] {
                return Err(Error::Internal(format!("unit fails on basis element {i}")));
            }
            for j in 0..d {
                if self.mult[i * d + j] != self.mult[j * d + i] {
                    return Err(Error::Internal(format!("table not commutative at ({i},{j})")));
                }
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let left = self.mul_sparse_basis(&self.mult[i * d + j], k);
            let right = self.mul_sparse_basis(&self.mult[j * d + k], i);
            if left != right {
                return Err(Error::Internal(format!("table not associative at ({i},{j},{k})")));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_CHECK_DIM {
            for i in 1..d {
                for j in i..d {
                    for k in 1..d {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a11e);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    fn mul_sparse_basis(&self, v: &SparseVec<F::Elem>, k: usize) -> SparseVec<F::Elem> {
        let d = self.dim();
        let mut out = Vec::new();
        for (i, c) in v {
            out = sparse_axpy(&self.field, &out, c, &self.mult[i * d + k]);
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn field_spec(&self) -> FieldSpec {
        self.field.spec()
    }
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
    pub fn vars(&self) -> &[String] {
        self.presentation.vars()
    }
    pub fn nvars(&self) -> usize {
        self.presentation.nvars()
    }
    pub fn trunc_order(&self) -> u32 {
        self.trunc_order
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
    /// Dimensions of `m^j` for `j = 0..=N`.
    pub fn filtration(&self) -> &[usize] {
        &self.filtration
    }
    pub fn is_monomial(&self) -> bool {
        matches!(self.reducer, Reducer::Monomial(_))
    }

    /// Product of basis elements `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.mult[i * self.dim() + j]
    }

    /// `x_v` times basis element `c`.
    pub fn var_times(&self, v: usize, c: usize) -> &SparseVec<F::Elem> {
        &self.var_mult[v][c]
    }

    /// For a non-unit basis monomial: a variable `v` and the index of `b / x_v`.
    pub fn parent(&self, b: usize) -> Option<(usize, usize)> {
        self.parent[b]
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.unit_vector(0)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn var_element(&self, v: usize) -> Vec<F::Elem> {
        let x = Monomial::var(self.nvars(), v);
        to_dense(&self.field, &self.reduce_monomial(&x), self.dim())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let c = f.mul(x, y);
                for (k, z) in &self.mult[i * d + j] {
                    f.add_mul_assign(&mut out[*k], &c, z);
                }
            }
        }
        out
    }

    /// Whether the element lies in the maximal ideal (zero coefficient on the unit).
    pub fn in_maximal_ideal(&self, a: &[F::Elem]) -> bool {
        self.field.is_zero(&a[0])
    }

    /// Image of a polynomial in the algebra.
    pub fn element(&self, p: &Polynomial) -> Result<Vec<F::Elem>> {
        if p.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch("polynomial ring differs from the algebra's".into()));
        }
        let f = &self.field;
        let mut out: SparseVec<F::Elem> = Vec::new();
        for (m, c) in p.terms() {
            let c = f.from_rational(c)?;
            out = sparse_axpy(f, &out, &c, &self.reduce_monomial(m));
        }
        Ok(to_dense(f, &out, self.dim()))
    }

    pub fn parse_element(&self, text: &str) -> Result<Vec<F::Elem>> {
        self.element(&Polynomial::parse(text, self.vars())?)
    }

    pub fn render_element(&self, a: &[F::Elem]) -> String {
        let f = &self.field;
        let terms = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                let m = self.basis[i].render(self.vars());
                let text = if f.is_one(c) {
                    m
                } else if self.basis[i].is_one() {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                };
                (c.to_string(), text)
            })
            .collect();
        join_terms(terms)
    }

    pub fn linear_form_element(&self, l: &LinearForm<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (v, c) in l.coeffs.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            for (i, x) in self.var_element(v).iter().enumerate() {
                f.add_mul_assign(&mut out[i], c, x);
            }
        }
        out
    }

    pub fn render_linear_form(&self, l: &LinearForm<F::Elem>) -> String {
        l.render(self.vars(), &self.field.zero(), &self.field.one())
    }

    /// Matrix of multiplication by `a` on the basis.
    pub fn left_mult_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let d = self.dim();
        let mut m = Matrix::zeros(f, d, d);
        for c in 0..d {
            let col = self.mul(a, &self.unit_vector(c));
            for (r, x) in col.into_iter().enumerate() {
                m[(r, c)] = x;
            }
        }
        m
    }

    /// Basis of the socle `{z : x_i z = 0 for every variable}`, in reduced echelon form.
    pub fn socle(&self) -> Vec<Vec<F::Elem>> {
        let d = self.dim();
        let columns: Vec<SparseVec<F::Elem>> = (0..d)
            .map(|c| {
                let mut col = Vec::new();
                for (v, images) in self.var_mult.iter().enumerate() {
                    col.extend(images[c].iter().map(|(r, x)| (v * d + r, x.clone())));
                }
                col
            })
            .collect();
        let kernel: Vec<Vec<F::Elem>> = crate::linalg::sparse_kernel(&self.field, &columns)
            .iter()
            .map(|k| to_dense(&self.field, k, d))
            .collect();
        Subspace::spanned_by(&self.field, d, &kernel)
            .expect("kernel vectors have the ambient length")
            .basis()
            .to_vec()
    }

    pub fn socle_dim(&self) -> usize {
        self.socle().len()
    }

    /// The socle basis as monomials, when every basis vector is a single basis monomial.
    pub fn socle_monomials(&self) -> Option<Vec<Monomial>> {
        self.socle()
            .iter()
            .map(|v| {
                let s = to_sparse(&self.field, v);
                match s.as_slice() {
                    [(i, c)] if self.field.is_one(c) => Some(self.basis[*i].clone()),
                    _ => None,
                }
            })
            .collect()
    }

    /// Dimensions of `m^j / m^{j+1}`, without trailing zeros.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut h: Vec<usize> = self.filtration.windows(2).map(|w| w[0] - w[1]).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// Whether `m^N` already lies in the ideal, i.e. the truncation changes nothing. By
    /// Nakayama this holds iff truncating at `N + 1` gives the same dimension.
    pub fn is_full_artinian(&self) -> Result<bool> {
        let next = LocalAlgebra::truncate(&self.field, &self.presentation, self.trunc_order + 1)?;
        Ok(next.dim() == self.dim())
    }

    pub fn is_gorenstein_artinian(&self) -> Result<bool> {
        if !self.is_full_artinian()? {
            return Err(Error::Precondition(format!(
                "the ideal does not contain m^{}; the ring is not the truncated algebra",
                self.trunc_order
            )));
        }
        Ok(self.socle_dim() == 1)
    }

    /// The ideal generated by the given elements, as a subspace.
    pub fn ideal_span(&self, gens: &[Vec<F::Elem>]) -> Subspace<F> {
        let d = self.dim();
        let vectors: Vec<Vec<F::Elem>> = gens
            .iter()
            .flat_map(|g| (0..d).map(move |b| self.mul(g, &self.unit_vector(b))))
            .collect();
        Subspace::spanned_by(&self.field, d, &vectors).expect("vectors have the ambient length")
    }

    /// Whether the ideals generated by `gens1` and `gens2` are nonzero and split the maximal
    /// ideal as a direct sum.
    pub fn ideal_direct_sum_check(&self, gens1: &[Vec<F::Elem>], gens2: &[Vec<F::Elem>]) -> Result<bool> {
        if gens1.iter().chain(gens2).any(|g| g.len() != self.dim()) {
            return Err(Error::DimensionMismatch("element length differs from the algebra dimension".into()));
        }
        if gens1.iter().chain(gens2).any(|g| !self.in_maximal_ideal(g)) {
            return Err(Error::Precondition("ideal generators must lie in m".into()));
        }
        let i = self.ideal_span(gens1);
        let j = self.ideal_span(gens2);
        if i.dim() == 0 || j.dim() == 0 {
            return Ok(false);
        }
        let mut both = i.basis().to_vec();
        both.extend_from_slice(j.basis());
        let sum = Subspace::spanned_by(&self.field, self.dim(), &both)?.dim();
        let m = self.dim() - 1;
        Ok(i.dim() + j.dim() == m && sum == m)
    }

    /// Exhaustive search over pairs of distinct lines in `m/m^2` for linear forms `α, α′` with
    /// `αα′ = 0` (and, in full mode, `m = αA ⊕ α′A`). The first witness in a fixed order of
    /// lines is returned, so the result is deterministic.
    pub fn pair_decomposition_search(
        &self,
        mode: SearchMode,
    ) -> Result<Option<(LinearForm<F::Elem>, LinearForm<F::Elem>)>> {
        let f = &self.field;
        let elements = f.elements().ok_or(Error::FieldNotFinite)?;
        // Degree-one basis monomials are variables and span m/m^2.
        let linear: Vec<usize> = self
            .basis
            .iter()
            .filter(|b| b.degree() == 1)
            .map(|b| b.0.iter().position(|&e| e == 1).expect("degree one"))
            .collect();
        let lines = projective_points(&elements, f, linear.len(), MAX_SEARCH_LINES)?;
        let forms: Vec<LinearForm<F::Elem>> = lines
            .iter()
            .map(|pt| {
                let mut coeffs = vec![f.zero(); self.nvars()];
                for (k, &v) in linear.iter().enumerate() {
                    coeffs[v] = pt[k].clone();
                }
                LinearForm { coeffs }
            })
            .collect();
        let elems: Vec<Vec<F::Elem>> = forms.iter().map(|l| self.linear_form_element(l)).collect();
        let found = (0..forms.len()).into_par_iter().find_map_first(|i| {
            (i + 1..forms.len()).find_map(|j| {
                if self.mul(&elems[i], &elems[j]).iter().any(|x| !f.is_zero(x)) {
                    return None;
                }
                if mode == SearchMode::Full
                    && !self
                        .ideal_direct_sum_check(&[elems[i].clone()], &[elems[j].clone()])
                        .unwrap_or(false)
                {
                    return None;
                }
                Some((i, j))
            })
        });
        Ok(found.map(|(i, j)| (forms[i].clone(), forms[j].clone())))
    }
}

/// Normalized representatives (first nonzero entry one) of the lines in `GF(p)^e`, ordered by
/// weight, then support, then coefficients.
fn projective_points<F: Field>(
    elements: &[F::Elem],
    f: &F,
    e: usize,
    limit: usize,
) -> Result<Vec<Vec<F::Elem>>> {
    let q = elements.len() as u128;
    let count = (0..e).fold(0u128, |acc, _| acc * q + 1);
    if count > limit as u128 {
        return Err(Error::SizeLimit(format!(
            "{count} lines in m/m^2 exceed the search limit of {limit}"
        )));
    }
    let mut points: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    // Enumerate coefficient index vectors (indices into `elements`).
    let total = (q as usize).pow(e as u32);
    for code in 0..total {
        let mut digits = Vec::with_capacity(e);
        let mut c = code;
        for _ in 0..e {
            digits.push(c % q as usize);
            c /= q as usize;
        }
        digits.reverse();
        let support: Vec<usize> = (0..e).filter(|&k| !f.is_zero(&elements[digits[k]])).collect();
        match support.first() {
            Some(&first) if f.is_one(&elements[digits[first]]) => {
                points.push((support.len(), support, digits));
            }
            _ => {}
        }
    }
    points.sort();
    Ok(points
        .into_iter()
        .map(|(_, _, digits)| digits.into_iter().map(|d| elements[d].clone()).collect())
        .collect())
}

fn monomial_basis(ideal: &MonomialIdeal, n: u32) -> Result<Vec<Monomial>> {
    let nv = ideal.nvars();
    let one = Monomial::one(nv);
    if ideal.contains(&one) {
        return Err(Error::Precondition("the ideal is the whole ring".into()));
    }
    let mut basis = vec![one.clone()];
    let mut frontier = vec![one];
    for _ in 1..n {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.0.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in start..nv {
                let cand = m.mul(&Monomial::var(nv, v));
                if !ideal.contains(&cand) {
                    next.push(cand);
                }
            }
        }
        basis.extend(next.iter().cloned());
        if basis.len() > MAX_ALGEBRA_DIM {
            return Err(Error::SizeLimit(format!(
                "algebra dimension exceeds {MAX_ALGEBRA_DIM}"
            )));
        }
        frontier = next;
    }
    basis.sort_by(|a, b| a.graded_cmp(b));
    Ok(basis)
}

type GeneralBasis<E> = (Vec<Monomial>, Reducer<E>);

fn general_basis<F: Field>(field: &F, p: &Presentation, n: u32) -> Result<GeneralBasis<F::Elem>> {
    let nv = p.nvars();
    let columns: Vec<Monomial> = (0..n).flat_map(|d| monomials_of_degree(nv, d)).collect();
    if columns.len() > MAX_AMBIENT_MONOMIALS {
        return Err(Error::SizeLimit(format!(
            "{} monomials of degree < {n} exceed {MAX_AMBIENT_MONOMIALS}",
            columns.len()
        )));
    }
    let col_index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = SparseEchelon::new(field);
    for g in p.gens() {
        let low = g.min_degree().unwrap_or(0);
        let terms: Vec<(Monomial, F::Elem)> = g
            .terms()
            .map(|(m, c)| Ok((m.clone(), field.from_rational(c)?)))
            .collect::<Result<_>>()?;
        for d in 0..n.saturating_sub(low) {
            for u in monomials_of_degree(nv, d) {
                let mut row: SparseVec<F::Elem> = terms
                    .iter()
                    .map(|(m, c)| (m.mul(&u), c.clone()))
                    .filter(|(m, _)| m.degree() < n)
                    .map(|(m, c)| (col_index[&m], c))
                    .filter(|(_, c)| !field.is_zero(c))
                    .collect();
                row.sort_by_key(|e| e.0);
                ech.insert(row);
            }
        }
    }
    // Fully reduce: collect rows into a dense matrix for the reduced echelon form.
    let rows = ech.rows_dense(columns.len());
    let (rref, pivots) = if rows.is_empty() {
        (Matrix::zeros(field, 0, columns.len()), Vec::new())
    } else {
        Matrix::from_rows(field, rows)?.rref()
    };
    let mut is_pivot = vec![None; columns.len()];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let basis_cols: Vec<usize> = (0..columns.len()).filter(|&c| is_pivot[c].is_none()).collect();
    if basis_cols.first() != Some(&0) {
        return Err(Error::Precondition("the ideal is the whole ring".into()));
    }
    let basis_pos: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut nf = HashMap::with_capacity(columns.len());
    for (c, m) in columns.iter().enumerate() {
        let v = match is_pivot[c] {
            None => vec![(basis_pos[&c], field.one())],
            Some(r) => basis_cols
                .iter()
                .filter(|&&bc| !field.is_zero(&rref[(r, bc)]))
                .map(|&bc| (basis_pos[&bc], field.neg(&rref[(r, bc)])))
                .collect(),
        };
        nf.insert(m.clone(), v);
    }
    let basis = basis_cols.iter().map(|&c| columns[c].clone()).collect();
    Ok((basis, Reducer::General(nf)))
}
