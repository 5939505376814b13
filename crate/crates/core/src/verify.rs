//! Theorem harness: each check builds the relevant rings, runs the computations and returns a
//! [`Report`] whose witness records the data the verdict was based on.
//!
//! Reports over corpora are computed in parallel and returned in enumeration order, so the same
//! input always produces the same sequence of reports.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::artin::{LocalAlgebra, SearchMode};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::graph::{corpus, Graph};
use crate::homology::{is_totally_reflexive_up_to, poincare_truncation, MAX_BOUND};
use crate::ideal::{MonomialIdeal, Presentation};
use crate::module::FPModule;
use crate::poly::Monomial;
use crate::rings;
use crate::sr;
use crate::with_field;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub instance: String,
    pub passed: bool,
    /// The computed data behind the verdict. A failing report lists the violated assertions
    /// under `"failures"`.
    pub witness: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    /// One line for table output.
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{verdict}  {:<22} {:<40} {:>9.3?}", self.check, self.instance, self.elapsed)
    }
}

/// Collects assertion outcomes for one report.
struct Checker {
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self, check: &str, instance: String, mut witness: Value, start: Instant) -> Report {
        let passed = self.failures.is_empty();
        if !passed {
            witness["failures"] = json!(self.failures);
        }
        Report {
            check: check.to_string(),
            instance,
            passed,
            witness,
            elapsed: start.elapsed(),
        }
    }
}

fn graph_instance(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{}{}", a + 1, b + 1)).collect();
    format!("n={} E={{{}}}", g.n(), edges.join(","))
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn no_star(g: &Graph) -> Error {
    Error::Precondition(format!("graph {} has no star vertex", graph_instance(g)))
}

/// Socle monomials of `k[G]'` (truncated at `n+1`, which changes nothing) against the maximal
/// cliques of the complement.
fn socle_vs_cliques(g: &Graph, field: FieldSpec, c: &mut Checker) -> Result<Value> {
    let p = rings::kprime(g)?.to_presentation(field);
    let n = g.n() as u32;
    let socle = with_field!(field, |f| {
        let a = LocalAlgebra::truncate(&f, &p, n + 1)?;
        a.socle_monomials()
    })
    .ok_or_else(|| Error::Internal("k[G]' is a monomial algebra".into()))?;
    let socle_sets: BTreeSet<Vec<usize>> = socle.iter().map(Monomial::support).collect();
    let cliques: BTreeSet<Vec<usize>> = g.complement().maximal_cliques().into_iter().collect();
    c.expect(socle_sets == cliques, "socle monomials differ from the maximal cliques of the complement");
    let vars: Vec<String> = g.labels().to_vec();
    Ok(json!({
        "socle": socle.iter().map(|m| m.render(&vars)).collect::<Vec<_>>(),
        "complement_cliques": cliques.iter().map(|q| labels(g, q)).collect::<Vec<_>>(),
    }))
}

/// `ΣG` is Cohen–Macaulay of dimension `n`, and `k[G]'` splits off every star vertex with
/// socle in bijection with the maximal cliques of the complement.
pub fn check_theorem_a(g: &Graph, field: FieldSpec) -> Result<Report> {
    let start = Instant::now();
    let stars = g.star_vertices();
    if stars.is_empty() {
        return Err(no_star(g));
    }
    let n = g.n();
    let mut c = Checker::new();

    let sigma = rings::sigma(g)?;
    let dim = sr::krull_dim(&sigma)?;
    let depth = sr::depth(&sigma, field)?;
    c.expect(dim == n, format!("dim k[ΣG] = {dim}, expected {n}"));
    c.expect(depth == dim, format!("k[ΣG] has depth {depth} < dim {dim}"));

    let kprime = rings::kprime(g)?;
    let kdim = sr::krull_dim(&kprime)?;
    c.expect(kdim == 0, format!("k[G]' has dimension {kdim}"));

    let split = kprime.variable_partition_decomposable()?;
    let split_json = match &split {
        Some(s) => {
            for &v in &stars {
                c.expect(s.isolates(v), format!("star vertex {} is not split off", g.label(v)));
            }
            json!(s.components.iter().map(|p| labels(g, p)).collect::<Vec<_>>())
        }
        None => {
            // A single variable cannot split; k[ΣK1] = k[v1,w1]/(v1 w1) is itself a fiber product.
            c.expect(n == 1, "k[G]' has no variable splitting");
            Value::Null
        }
    };
    let socle = socle_vs_cliques(g, field, &mut c)?;

    let witness = json!({
        "field": field,
        "star_vertices": labels(g, &stars),
        "sigma_dim": dim,
        "sigma_depth": depth,
        "sigma_cm": depth == dim,
        "kprime_dim": kdim,
        "split": split_json,
        "socle": socle["socle"],
        "complement_cliques": socle["complement_cliques"],
    });
    Ok(c.finish("thmA", format!("{} {field}", graph_instance(g)), witness, start))
}

/// `k[G̃]` has dimension `n` and depth `n-1`; `k[G]''` has dimension 1 and depth 0 and is the
/// quotient of `k[G̃]` by `v_i - w_i`; the star variable kills every other variable but not itself.
pub fn check_theorem_b(g: &Graph, star: usize, field: FieldSpec) -> Result<Report> {
    let start = Instant::now();
    if !g.is_star_vertex(star)? {
        return Err(Error::Precondition(format!("{} is not a star vertex", g.label(star))));
    }
    let n = g.n();
    if n < 2 {
        // k[G̃] = k[v1] is regular, so depth n-1 needs a second vertex.
        return Err(Error::Precondition("theorem B needs at least two vertices".into()));
    }
    let mut c = Checker::new();

    let tilde = rings::tilde(g, star)?;
    let t_dim = sr::krull_dim(&tilde)?;
    let t_depth = sr::depth(&tilde, field)?;
    c.expect(t_dim == n, format!("dim k[G̃] = {t_dim}, expected {n}"));
    c.expect(t_depth + 1 == n, format!("depth k[G̃] = {t_depth}, expected {}", n - 1));

    let kdp = rings::kdprime(g, star)?;
    let d_dim = sr::krull_dim(&kdp)?;
    let d_depth = sr::depth(&kdp, field)?;
    c.expect(d_dim == 1, format!("dim k[G]'' = {d_dim}, expected 1"));
    c.expect(d_depth == 0, format!("depth k[G]'' = {d_depth}, expected 0"));

    let whiskered = g.whisker_except(star)?;
    let subst: Vec<(&str, &str)> = (0..n)
        .filter(|&v| v != star)
        .enumerate()
        .map(|(k, v)| (whiskered.label(n + k), g.label(v)))
        .collect();
    let reduced = tilde.substitute(&subst)?;
    let same = reduced.equivalent(&kdp);
    c.expect(same, "k[G̃]/(v_i - w_i) differs from k[G]''");

    let p = kdp.to_presentation(field);
    let (kills, square) = with_field!(field, |f| {
        let a = LocalAlgebra::truncate(&f, &p, 3)?;
        let one = a.basis_index(&Monomial::var(n, star)).expect("variables survive");
        let kills: Vec<bool> = (0..n)
            .filter(|&v| v != star)
            .map(|v| a.var_times(v, one).is_empty())
            .collect();
        (kills, !a.var_times(star, one).is_empty())
    });
    c.expect(kills.iter().all(|&k| k), "the star variable times another variable is nonzero");
    c.expect(square, "the star variable squares to zero");

    let witness = json!({
        "field": field,
        "star": g.label(star),
        "tilde_dim": t_dim,
        "tilde_depth": t_depth,
        "kdprime_dim": d_dim,
        "kdprime_depth": d_depth,
        "substituted": reduced.render_gens(),
        "kdprime_gens": kdp.render_gens(),
        "star_square_nonzero": square,
    });
    Ok(c.finish("thmB", format!("{} star={} {field}", graph_instance(g), g.label(star)), witness, start))
}

/// Socle of `k[G]'` against the maximal cliques of the complement, for any graph.
pub fn check_socle_cliques(g: &Graph, field: FieldSpec) -> Result<Report> {
    let start = Instant::now();
    let mut c = Checker::new();
    let mut witness = socle_vs_cliques(g, field, &mut c)?;
    witness["field"] = json!(field);
    Ok(c.finish("socle-cliques", format!("{} {field}", graph_instance(g)), witness, start))
}

/// `k[G]'` splits by variables exactly when the complement is disconnected, and every star
/// vertex forms its own part.
pub fn check_star_factorization(g: &Graph) -> Result<Report> {
    let start = Instant::now();
    let mut c = Checker::new();
    let split = rings::kprime(g)?.variable_partition_decomposable()?;
    let disconnected = g.n() >= 2 && !g.complement().is_connected();
    c.expect(split.is_some() == disconnected, "splitting disagrees with connectivity of the complement");
    let stars = g.star_vertices();
    if let Some(s) = &split {
        for &v in &stars {
            c.expect(s.isolates(v), format!("star vertex {} is not split off", g.label(v)));
        }
    }
    let witness = json!({
        "complement_disconnected": disconnected,
        "split": split.as_ref().map(|s| s.components.iter().map(|p| labels(g, p)).collect::<Vec<_>>()),
        "star_vertices": labels(g, &stars),
    });
    Ok(c.finish("star-factorization", graph_instance(g), witness, start))
}

/// No `k[G]'` with a variable splitting of its maximal ideal is Gorenstein.
pub fn check_gorenstein_exclusion(graphs: &[Graph], field: FieldSpec) -> Result<Report> {
    let start = Instant::now();
    let rows: Vec<Option<(Graph, usize)>> = graphs
        .par_iter()
        .map(|g| -> Result<Option<(Graph, usize)>> {
            if g.n() < 2 {
                return Ok(None);
            }
            let kprime = rings::kprime(g)?;
            if kprime.variable_partition_decomposable()?.is_none() {
                return Ok(None);
            }
            let p = kprime.to_presentation(field);
            let n = g.n() as u32;
            let socle = with_field!(field, |f| LocalAlgebra::truncate(&f, &p, n + 1)?.socle_dim());
            Ok(Some((g.clone(), socle)))
        })
        .collect::<Result<_>>()?;
    let skipped = graphs.iter().filter(|g| g.n() < 2).count();
    let decomposable: Vec<&(Graph, usize)> = rows.iter().flatten().collect();
    let violations: Vec<String> = decomposable
        .iter()
        .filter(|(_, s)| *s < 2)
        .map(|(g, s)| format!("{} socle dim {s}", graph_instance(g)))
        .collect();
    let min_socle = decomposable.iter().map(|(_, s)| *s).min();
    let mut c = Checker::new();
    c.expect(violations.is_empty(), format!("{} decomposable Gorenstein rings", violations.len()));
    let witness = json!({
        "field": field,
        "graphs": graphs.len(),
        "skipped_single_vertex": skipped,
        "decomposable": decomposable.len(),
        "min_socle_dim": min_socle,
        "violations": violations,
    });
    Ok(c.finish("gorenstein", format!("{} graphs {field}", graphs.len()), witness, start))
}

/// `k[ΣG]` for `n` triangles at a hub `v`, modulo `v_ij - w_ij`, is the displayed ring
/// `k[Z, X, Y]/((X1_j, X2_j)^2, Z X, Z Y)`.
pub fn check_example_3_11(n: usize) -> Result<Report> {
    let start = Instant::now();
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("n = {n} is outside 1..=3")));
    }
    let mut c = Checker::new();
    let sigma = rings::ex311(n)?;
    let mut subst = Vec::new();
    let mut rename = vec![("v".to_string(), "Z".to_string()), ("w".to_string(), "Y".to_string())];
    for j in 1..=n {
        for i in 1..=2 {
            subst.push((format!("w{i}_{j}"), format!("v{i}_{j}")));
            rename.push((format!("v{i}_{j}"), format!("X{i}_{j}")));
        }
    }
    let reduced = sigma.substitute(&subst)?.rename(&rename)?;
    let target = rings::ex311_target(n)?;
    let matches = reduced.equivalent(&target);
    c.expect(matches, "the quotient does not match the displayed ring");
    let dim = sr::krull_dim(&reduced)?;
    c.expect(dim == 1, format!("dimension {dim}, expected 1"));
    let sigma_dim = sr::krull_dim(&sigma)?;
    c.expect(sigma_dim == 2 * n + 1, format!("dim k[ΣG] = {sigma_dim}, expected {}", 2 * n + 1));
    let witness = json!({
        "quotient": reduced.render_gens(),
        "expected": target.render_gens(),
        "dim": dim,
        "sigma_dim": sigma_dim,
    });
    Ok(c.finish("ex311", format!("n={n}"), witness, start))
}

fn search<F: Field>(f: &F, p: &Presentation, n: u32, mode: SearchMode) -> Result<Option<(String, String)>> {
    let a = LocalAlgebra::truncate(f, p, n)?;
    Ok(a.pair_decomposition_search(mode)?
        .map(|(l1, l2)| (a.render_linear_form(&l1), a.render_linear_form(&l2))))
}

/// Finite-field desk checks: `k[x,y]/(x^2 + y^2)` truncated at 4 decomposes when `-1` is a
/// square (`p ≡ 1 mod 4`); the two algebras with `x^2 = 0` truncated at 3 admit no pair of
/// independent linear forms with zero product.
pub fn check_example_4x(p: u64) -> Result<Report> {
    let start = Instant::now();
    if ![2, 3, 5, 7].contains(&p) {
        return Err(Error::Precondition(format!("p = {p} is not one of 2, 3, 5, 7")));
    }
    let field = FieldSpec::Prime(p);
    let mut c = Checker::new();
    let part_i = if p % 4 == 1 {
        let pres = rings::named_ring("ex45", field, None)?;
        let found = with_field!(field, |f| search(&f, &pres, 4, SearchMode::Full))?;
        c.expect(found.is_some(), "no decomposition of the truncated hypersurface");
        json!(found)
    } else {
        json!("not applicable: -1 is not a square with distinct roots")
    };
    let mut parts = Vec::new();
    for name in ["ex46a", "ex46b"] {
        let pres = rings::named_ring(name, field, None)?;
        let found = with_field!(field, |f| search(&f, &pres, 3, SearchMode::Necessary))?;
        c.expect(found.is_none(), format!("{name} has a zero-product pair"));
        parts.push(json!(found));
    }
    let witness = json!({
        "field": field,
        "ex45_full_witness": part_i,
        "ex46a_pair": parts[0],
        "ex46b_pair": parts[1],
    });
    Ok(c.finish("ex4x", format!("p={p}"), witness, start))
}

/// `R = k[x,y,z]/(x^2,xy,y^2,z^2)`, `M = R/(z)`: `S/(z)` splits as `{x} | {y}`, `R` is not
/// Gorenstein, `M` is totally reflexive through `b` and has infinite projective dimension.
pub fn check_example_5_4(b: usize, field: FieldSpec) -> Result<Report> {
    let start = Instant::now();
    if b > MAX_BOUND {
        return Err(Error::BoundTooLarge(b));
    }
    let mut c = Checker::new();
    let s = rings::named_ring("ex54S", field, None)?
        .as_monomial_ideal()
        .ok_or(Error::NotMonomial)?;
    let s_mod_z = kill_variable(&s, "z")?;
    let split = s_mod_z.variable_partition_decomposable()?;
    let parts = split.as_ref().map(|sp| {
        sp.components
            .iter()
            .map(|p| p.iter().map(|&v| s_mod_z.vars()[v].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    let expected = vec![vec!["x".to_string()], vec!["y".to_string()]];
    c.expect(parts.as_ref() == Some(&expected), "S/(z) does not split as {x} | {y}");

    let r = rings::named_ring("ex54R", field, None)?;
    let (socle, reflexive, betti) = with_field!(field, |f| ex54_module_data(&f, &r, b))?;
    c.expect(socle == 2, format!("socle dimension {socle}, expected 2"));
    c.expect(reflexive, "R/(z) is not totally reflexive");
    c.expect(betti.iter().all(|&x| x > 0), "a Betti number of R/(z) vanishes");
    let witness = json!({
        "field": field,
        "bound": b,
        "s_mod_z_split": parts,
        "r_socle_dim": socle,
        "totally_reflexive": reflexive,
        "betti": betti,
    });
    Ok(c.finish("ex54", format!("b={b} {field}"), witness, start))
}

fn ex54_module_data<F: Field>(f: &F, r: &Presentation, b: usize) -> Result<(usize, bool, Vec<usize>)> {
    let a = Arc::new(LocalAlgebra::truncate(f, r, 4)?);
    let m = FPModule::cyclic_module(&a, &[a.parse_element("z")?])?;
    Ok((a.socle_dim(), is_totally_reflexive_up_to(&m, b)?, poincare_truncation(&m, b)?))
}

/// `I + (x)` presented without `x`: generators divisible by `x` drop out.
fn kill_variable(i: &MonomialIdeal, var: &str) -> Result<MonomialIdeal> {
    let k = i.var_index(var)?;
    let vars: Vec<String> = i.vars().iter().enumerate().filter(|&(j, _)| j != k).map(|(_, v)| v.clone()).collect();
    let gens = i
        .gens()
        .iter()
        .filter(|g| g.0[k] == 0)
        .map(|g| Monomial(g.0.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &e)| e).collect()))
        .collect();
    MonomialIdeal::new(vars, gens)
}

fn star_graphs(max_n: usize) -> Result<Vec<Graph>> {
    Ok(corpus(max_n)?.into_iter().filter(|g| !g.star_vertices().is_empty()).collect())
}

/// Theorem A for every graph with a star vertex on at most `max_n` vertices.
pub fn run_theorem_a(max_n: usize, field: FieldSpec) -> Result<Vec<Report>> {
    star_graphs(max_n)?.par_iter().map(|g| check_theorem_a(g, field)).collect()
}

/// Theorem B for every (graph, star vertex) pair on 2 to `max_n` vertices.
pub fn run_theorem_b(max_n: usize, field: FieldSpec) -> Result<Vec<Report>> {
    let pairs: Vec<(Graph, usize)> = star_graphs(max_n)?
        .into_iter()
        .filter(|g| g.n() >= 2)
        .flat_map(|g| g.star_vertices().into_iter().map(move |s| (g.clone(), s)))
        .collect();
    pairs.par_iter().map(|(g, s)| check_theorem_b(g, *s, field)).collect()
}

pub fn run_socle_cliques(max_n: usize, field: FieldSpec) -> Result<Vec<Report>> {
    corpus(max_n)?.par_iter().map(|g| check_socle_cliques(g, field)).collect()
}

pub fn run_star_factorization(max_n: usize) -> Result<Vec<Report>> {
    corpus(max_n)?.par_iter().map(check_star_factorization).collect()
}

pub fn run_gorenstein(max_n: usize, field: FieldSpec) -> Result<Report> {
    check_gorenstein_exclusion(&corpus(max_n)?, field)
}

/// Every check once: corpus checks up to `max_n` over `field`, examples with bound `b`.
pub fn run_all(max_n: usize, field: FieldSpec, b: usize) -> Result<Vec<Report>> {
    let mut out = run_theorem_a(max_n, field)?;
    out.extend(run_theorem_b(max_n, field)?);
    out.push(run_gorenstein(max_n, field)?);
    for n in 1..=3 {
        out.push(check_example_3_11(n)?);
    }
    for p in [2, 3, 5, 7] {
        out.push(check_example_4x(p)?);
    }
    out.push(check_example_5_4(b, field)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;
    const F2: FieldSpec = FieldSpec::Prime(2);

    #[test]
    fn theorem_a_examples() {
        let r = check_theorem_a(&Graph::named("P3").unwrap(), Q).unwrap();
        assert!(r.passed, "{}", r.witness);
        let socle: BTreeSet<String> = serde_json::from_value(r.witness["socle"].clone()).unwrap();
        assert_eq!(socle, ["v2", "v1*v3"].map(String::from).into());
        let r = check_theorem_a(&Graph::named("K2").unwrap(), F2).unwrap();
        assert!(r.passed);
        assert_eq!(r.witness["sigma_dim"], 2);
        assert!(check_theorem_a(&Graph::named("K1").unwrap(), Q).unwrap().passed);
        assert!(matches!(check_theorem_a(&Graph::named("C4").unwrap(), Q), Err(Error::Precondition(_))));
    }

    #[test]
    fn theorem_b_examples() {
        let r = check_theorem_b(&Graph::named("K2").unwrap(), 1, Q).unwrap();
        assert!(r.passed, "{}", r.witness);
        assert_eq!((r.witness["tilde_dim"].clone(), r.witness["tilde_depth"].clone()), (json!(2), json!(1)));
        let r = check_theorem_b(&Graph::named("P3").unwrap(), 1, F2).unwrap();
        assert_eq!((r.witness["tilde_dim"].clone(), r.witness["tilde_depth"].clone()), (json!(3), json!(2)));
        assert!(check_theorem_b(&Graph::named("K3").unwrap(), 2, Q).unwrap().passed);
        assert!(check_theorem_b(&Graph::named("P3").unwrap(), 0, Q).is_err());
        assert!(check_theorem_b(&Graph::named("K1").unwrap(), 0, Q).is_err());
    }

    #[test]
    fn failing_reports_carry_failures() {
        let mut c = Checker::new();
        c.expect(false, "boom");
        let r = c.finish("x", "y".into(), json!({"k": 1}), Instant::now());
        assert!(!r.passed);
        assert_eq!(r.witness["failures"], json!(["boom"]));
        assert!(!serde_json::to_string(&r).unwrap().contains("elapsed"));
    }

    #[test]
    fn gorenstein_small_corpus() {
        let r = run_gorenstein(4, F2).unwrap();
        assert!(r.passed, "{}", r.witness);
        assert_eq!(r.witness["skipped_single_vertex"], 1);
        let k2 = check_gorenstein_exclusion(&[Graph::named("K2").unwrap()], Q).unwrap();
        assert_eq!(k2.witness["decomposable"], 1);
        assert_eq!(k2.witness["min_socle_dim"], 2);
    }

    #[test]
    fn examples() {
        for n in 1..=3 {
            let r = check_example_3_11(n).unwrap();
            assert!(r.passed, "{}", r.witness);
        }
        assert!(check_example_3_11(4).is_err());
        for p in [2, 3, 5, 7] {
            let r = check_example_4x(p).unwrap();
            assert!(r.passed, "{}", r.witness);
        }
        assert!(check_example_4x(5).unwrap().witness["ex45_full_witness"].is_array());
        assert!(check_example_4x(11).is_err());
        for f in [Q, F2] {
            let r = check_example_5_4(6, f).unwrap();
            assert!(r.passed, "{}", r.witness);
        }
        let r = check_example_5_4(0, Q).unwrap();
        assert!(r.passed);
        assert_eq!(r.witness["betti"], json!([1]));
        assert!(check_example_5_4(13, Q).is_err());
    }

    #[test]
    fn corpus_runs_are_deterministic() {
        let a = serde_json::to_string(&run_theorem_b(3, F2).unwrap()).unwrap();
        let b = serde_json::to_string(&run_theorem_b(3, F2).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(run_theorem_a(4, Q).unwrap().iter().all(|r| r.passed));
        assert!(run_star_factorization(4).unwrap().iter().all(|r| r.passed));
        assert!(run_socle_cliques(4, Q).unwrap().iter().all(|r| r.passed));
    }
}
