//! Monomial ideals and polynomial presentations `k[x_1..x_n]/(f_1..f_u)` of local rings.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::Graph;
use crate::poly::{is_valid_variable_name, Monomial, Polynomial};

fn check_vars(vars: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for v in vars {
        if !is_valid_variable_name(v) {
            return Err(Error::Parse(format!("invalid variable name `{v}`")));
        }
        if !seen.insert(v.as_str()) {
            return Err(Error::DuplicateVariable(v.clone()));
        }
    }
    if vars.len() > 64 {
        return Err(Error::SizeLimit(format!("{} variables (at most 64)", vars.len())));
    }
    Ok(())
}

fn var_index(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Removes generators divisible by another generator and sorts the rest in graded order.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(Monomial::graded_cmp);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// A monomial ideal stored by its unique minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        check_vars(&vars)?;
        if gens.iter().any(|g| g.nvars() != vars.len()) {
            return Err(Error::DimensionMismatch("monomial length differs from variable count".into()));
        }
        Ok(MonomialIdeal {
            gens: minimalize(gens),
            vars,
        })
    }

    pub fn zero(vars: Vec<String>) -> Result<Self> {
        Self::new(vars, Vec::new())
    }

    /// Parses generators such as `["x^2", "x*y"]`.
    pub fn parse(vars: &[&str], gens: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| {
                let p = Polynomial::parse(g, &vars)?;
                p.as_scaled_monomial().cloned().ok_or(Error::NotMonomial)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, gens)
    }

    /// I(G): generated by `v_i v_j` over the edges, in the ring on the graph's vertex labels.
    pub fn edge_ideal(g: &Graph) -> Result<Self> {
        let n = g.n();
        let gens = g
            .edges()
            .map(|(a, b)| {
                let mut e = vec![0; n];
                e[a] = 1;
                e[b] = 1;
                Monomial(e)
            })
            .collect();
        Self::new(g.labels().to_vec(), gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        var_index(&self.vars, name)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn render_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.vars)).collect()
    }

    /// The ideal plus the squares of the named variables.
    pub fn add_squares<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let mut gens = self.gens.clone();
        for v in vars {
            let i = self.var_index(v.as_ref())?;
            let mut e = vec![0; self.nvars()];
            e[i] = 2;
            gens.push(Monomial(e));
        }
        Self::new(self.vars.clone(), gens)
    }

    pub fn add_all_squares(&self) -> Self {
        self.add_squares(&self.vars.clone())
            .expect("every ambient variable is known")
    }

    /// Standard polarization. A variable `x` of maximal exponent `d` among the generators spawns
    /// `x§1 .. x§(d-1)`, appended after the original variables (by variable, then by index);
    /// `x^j` becomes `x * x§1 * ... * x§(j-1)`.
    pub fn polarize(&self) -> Self {
        let n = self.nvars();
        let max_exp: Vec<u32> = (0..n)
            .map(|i| self.gens.iter().map(|g| g.0[i]).max().unwrap_or(0))
            .collect();
        let mut vars = self.vars.clone();
        let mut fresh: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 1..max_exp[i].max(1) {
                fresh[i].push(vars.len());
                vars.push(format!("{}§{}", self.vars[i], j));
            }
        }
        let total = vars.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u32; total];
                for i in 0..n {
                    if g.0[i] > 0 {
                        e[i] = 1;
                        for &k in &fresh[i][..(g.0[i] - 1) as usize] {
                            e[k] = 1;
                        }
                    }
                }
                Monomial(e)
            })
            .collect();
        MonomialIdeal::new(vars, gens).expect("polarized names are fresh")
    }

    /// Renames variables; names absent from `map` are kept.
    pub fn rename<S: AsRef<str>>(&self, map: &[(S, S)]) -> Result<Self> {
        let mut vars = self.vars.clone();
        for (from, to) in map {
            let i = self.var_index(from.as_ref())?;
            vars[i] = to.as_ref().to_string();
        }
        Self::new(vars, self.gens.clone())
    }

    /// Equality as ideals of the same polynomial ring, ignoring the order of the variable list.
    pub fn equivalent(&self, other: &MonomialIdeal) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let Ok(map) = other
            .vars
            .iter()
            .map(|v| self.var_index(v))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        let remapped: BTreeSet<Monomial> = other
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0; self.nvars()];
                for (i, &x) in g.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                Monomial(e)
            })
            .collect();
        remapped == self.gens.iter().cloned().collect()
    }

    /// Applies a variable-to-variable substitution (see [`Presentation::substitute`]).
    pub fn substitute<S: AsRef<str>>(&self, map: &[(S, S)]) -> Result<Self> {
        let p = self.to_presentation(FieldSpec::Rational).substitute(map)?;
        p.as_monomial_ideal().ok_or(Error::NotMonomial)
    }

    pub fn to_presentation(&self, field: FieldSpec) -> Presentation {
        Presentation {
            vars: self.vars.clone(),
            gens: self.gens.iter().cloned().map(Polynomial::from_monomial).collect(),
            field,
        }
    }

    /// Looks for a splitting `m = (V1) ⊕ (V2)` of the maximal ideal by variables.
    ///
    /// Two variables are joined in the cross graph when their product is not in the ideal. If the
    /// cross graph is disconnected, every mixed monomial is divisible by a mixed quadratic that
    /// lies in the ideal, so the components split the maximal ideal of the monomial quotient.
    pub fn variable_partition_decomposable(&self) -> Result<Option<VariableSplit>> {
        if let Some(g) = self.gens.iter().find(|g| g.degree() == 1) {
            return Err(Error::NonMinimalPresentation(g.render(&self.vars)));
        }
        let n = self.nvars();
        if n < 2 {
            return Ok(None);
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = 1;
                if !self.contains(&Monomial(e)) {
                    edges.push((i, j));
                }
            }
        }
        let cross = Graph::new(n, edges)?;
        let components = cross.connected_components();
        if components.len() < 2 {
            return Ok(None);
        }
        let last = n - 1;
        let left = components
            .iter()
            .find(|c| c.contains(&last))
            .cloned()
            .expect("every vertex lies in a component");
        let right = (0..n).filter(|v| !left.contains(v)).collect();
        Ok(Some(VariableSplit {
            left,
            right,
            components,
        }))
    }
}

/// Certificate of a variable splitting of the maximal ideal; indices refer to the ambient
/// variables. `left` is the part containing the last variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableSplit {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// The finest splitting: connected components of the cross graph.
    pub components: Vec<Vec<usize>>,
}

impl VariableSplit {
    /// The two parts as an unordered pair of sets.
    pub fn parts(&self) -> BTreeSet<Vec<usize>> {
        [self.left.clone(), self.right.clone()].into_iter().collect()
    }

    /// True when `{var}` is one of the cross-graph components.
    pub fn isolates(&self, var: usize) -> bool {
        self.components.iter().any(|c| c == &[var])
    }
}

/// A presentation `k[vars]/(gens)` of a local ring with maximal ideal generated by the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    vars: Vec<String>,
    gens: Vec<Polynomial>,
    field: FieldSpec,
}

impl Presentation {
    pub fn new(vars: Vec<String>, gens: Vec<Polynomial>, field: FieldSpec) -> Result<Self> {
        check_vars(&vars)?;
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in gens {
            if g.nvars() != vars.len() {
                return Err(Error::DimensionMismatch("generator ring differs".into()));
            }
            if g.is_zero() || kept.contains(&g) {
                continue;
            }
            if !g.constant_term().is_zero() {
                return Err(Error::ConstantTerm(g.render(&vars)));
            }
            if g.as_scaled_monomial().is_some_and(|m| m.degree() == 1) {
                return Err(Error::NonMinimalPresentation(g.render(&vars)));
            }
            kept.push(g);
        }
        // Monomial presentations are kept minimal so ideal equality is generator-set equality.
        if kept.iter().all(|g| g.as_scaled_monomial().is_some()) {
            let monos = kept.iter().map(|g| g.as_scaled_monomial().unwrap().clone()).collect();
            kept = minimalize(monos).into_iter().map(Polynomial::from_monomial).collect();
        }
        Ok(Presentation { vars, gens: kept, field })
    }

    pub fn parse(vars: &[&str], gens: &[&str], field: FieldSpec) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| Polynomial::parse(g, &vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, gens, field)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        Presentation {
            field,
            ..self.clone()
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.as_scaled_monomial().is_some())
    }

    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.as_scaled_monomial().cloned())
            .collect::<Option<Vec<_>>>()?;
        MonomialIdeal::new(self.vars.clone(), gens).ok()
    }

    pub fn render_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.vars)).collect()
    }

    /// Substitutes variables for variables. A variable mapped to a different one is eliminated
    /// from the ambient ring; the targets must survive the substitution.
    pub fn substitute<S: AsRef<str>>(&self, map: &[(S, S)]) -> Result<Self> {
        let n = self.nvars();
        let mut image: Vec<usize> = (0..n).collect();
        for (from, to) in map {
            let a = var_index(&self.vars, from.as_ref())?;
            let b = var_index(&self.vars, to.as_ref())?;
            image[a] = b;
        }
        if (0..n).any(|i| image[image[i]] != image[i]) {
            return Err(Error::Precondition(
                "substitution targets must not themselves be substituted".into(),
            ));
        }
        let kept: Vec<usize> = (0..n).filter(|&i| image[i] == i).collect();
        let new_index: HashMap<usize, usize> =
            kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let remap: Vec<usize> = (0..n).map(|i| new_index[&image[i]]).collect();
        let vars = kept.iter().map(|&i| self.vars[i].clone()).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| g.remap(kept.len(), &remap))
            .collect();
        Self::new(vars, gens, self.field)
    }

    /// Presentation of the fiber product `S ×_k T`: the generators of both factors together with
    /// every cross product `x_i y_j`. Clashing names in `T` get primes appended.
    pub fn fiber_product(s: &Presentation, t: &Presentation) -> Result<Presentation> {
        if s.field != t.field {
            return Err(Error::Precondition("fiber product over different fields".into()));
        }
        let (ns, nt) = (s.nvars(), t.nvars());
        let mut vars = s.vars.clone();
        for v in &t.vars {
            let mut name = v.clone();
            while vars.contains(&name) || (name != *v && t.vars.contains(&name)) {
                name.push('\'');
            }
            vars.push(name);
        }
        let total = ns + nt;
        let left: Vec<usize> = (0..ns).collect();
        let right: Vec<usize> = (ns..total).collect();
        let mut gens: Vec<Polynomial> = s.gens.iter().map(|g| g.remap(total, &left)).collect();
        gens.extend(t.gens.iter().map(|g| g.remap(total, &right)));
        for i in 0..ns {
            for j in ns..total {
                let mut e = vec![0; total];
                e[i] = 1;
                e[j] = 1;
                gens.push(Polynomial::from_monomial(Monomial(e)));
            }
        }
        Self::new(vars, gens, s.field)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            vars: self.vars.clone(),
            gens: self.render_gens(),
            field: self.field.to_string(),
        }
    }

    pub fn from_json(json: &PresentationJson) -> Result<Self> {
        let vars: Vec<&str> = json.vars.iter().map(String::as_str).collect();
        let gens: Vec<&str> = json.gens.iter().map(String::as_str).collect();
        Self::parse(&vars, &gens, json.field.parse()?)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let json: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// `{"vars": ["x","y"], "gens": ["x^2", "x*y", "y^2"], "field": "q"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    #[serde(default = "default_field")]
    pub field: String,
}

fn default_field() -> String {
    "q".into()
}
