//! Named ring constructions built from graphs, plus a few fixed example rings.
//!
//! | name | ring |
//! |---|---|
//! | `sigma(G)` | `k[ΣG]`, the edge ring of the whiskered graph |
//! | `kprime(G)` | `k[G]' = k[v]/(I(G), v_1^2, ..., v_n^2)` |
//! | `kdprime(G,s)` | `k[G]'' = k[v]/(I(G), v_i^2 : i ≠ s)` |
//! | `tilde(G,s)` | `k[G̃]`, whiskers at every vertex except `s` |
//! | `ex311(n)` | `k[ΣG]` for `n` triangles sharing the vertex `v` |
//! | `ex45` | `k[x,y]/(x^2 + y^2)` |
//! | `ex46a` | `k[x,y,z]/(x^2)`, meant to be truncated at order 3 |
//! | `ex46b` | `k[x,u]/(x^2)`, meant to be truncated at order 3 |
//! | `ex54R` | `k[x,y,z]/(x^2, xy, y^2, z^2)` |
//! | `ex54S` | `k[x,y,z]/(x^2, xy, y^2)` |

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::Graph;
use crate::ideal::{MonomialIdeal, Presentation};

pub fn sigma(g: &Graph) -> Result<MonomialIdeal> {
    MonomialIdeal::edge_ideal(&g.whisker_all()?)
}

pub fn kprime(g: &Graph) -> Result<MonomialIdeal> {
    Ok(MonomialIdeal::edge_ideal(g)?.add_all_squares())
}

/// `k[G]''` with distinguished vertex `star` (0-based): every other vertex squared.
pub fn kdprime(g: &Graph, star: usize) -> Result<MonomialIdeal> {
    if star >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: star + 1, n: g.n() });
    }
    let others: Vec<&str> = (0..g.n()).filter(|&v| v != star).map(|v| g.label(v)).collect();
    MonomialIdeal::edge_ideal(g)?.add_squares(&others)
}

pub fn tilde(g: &Graph, star: usize) -> Result<MonomialIdeal> {
    MonomialIdeal::edge_ideal(&g.whisker_except(star)?)
}

/// `n` triangles `v-v1_j-v2_j` glued at the vertex `v`, which is a star vertex.
pub fn ex311_graph(n: usize) -> Result<Graph> {
    let mut labels = Vec::new();
    for j in 1..=n {
        labels.push(format!("v1_{j}"));
        labels.push(format!("v2_{j}"));
    }
    labels.push("v".to_string());
    let hub = 2 * n;
    let edges = (0..n).flat_map(|j| [(2 * j, 2 * j + 1), (2 * j, hub), (2 * j + 1, hub)]);
    Graph::with_labels(labels, edges)
}

pub fn ex311(n: usize) -> Result<MonomialIdeal> {
    sigma(&ex311_graph(n)?)
}

/// The ring `k[Z, X, Y]/((X1_j, X2_j)^2, Z X, Z Y)` that `ex311(n)` should reduce to.
pub fn ex311_target(n: usize) -> Result<MonomialIdeal> {
    let mut vars = vec!["Z".to_string()];
    let mut gens = Vec::new();
    for j in 1..=n {
        let (a, b) = (format!("X1_{j}"), format!("X2_{j}"));
        gens.extend([format!("{a}^2"), format!("{a}*{b}"), format!("{b}^2")]);
        gens.extend([format!("Z*{a}"), format!("Z*{b}")]);
        vars.extend([a, b]);
    }
    vars.push("Y".to_string());
    gens.push("Z*Y".to_string());
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    MonomialIdeal::parse(&v, &g)
}

fn fixed(name: &str, field: FieldSpec) -> Option<Result<Presentation>> {
    let (vars, gens): (&[&str], &[&str]) = match name {
        "ex45" => (&["x", "y"], &["x^2 + y^2"]),
        "ex46a" => (&["x", "y", "z"], &["x^2"]),
        "ex46b" => (&["x", "u"], &["x^2"]),
        "ex54R" => (&["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2"]),
        "ex54S" => (&["x", "y", "z"], &["x^2", "x*y", "y^2"]),
        _ => return None,
    };
    Some(Presentation::parse(vars, gens, field))
}

/// Parses `name(args)`; graph arguments are names such as `K3`, or `_` for `graph`.
pub fn named_ring(text: &str, field: FieldSpec, graph: Option<&Graph>) -> Result<Presentation> {
    let text = text.trim();
    if let Some(p) = fixed(text, field) {
        return p;
    }
    let bad = || Error::Parse(format!("unknown ring `{text}`"));
    let (name, args) = match text.split_once('(') {
        Some((n, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            (n.trim(), inner.split(',').map(str::trim).collect::<Vec<_>>())
        }
        None => (text, Vec::new()),
    };
    let graph_arg = |i: usize| -> Result<Graph> {
        match (args.get(i).copied(), graph) {
            (None | Some("_"), Some(g)) => Ok(g.clone()),
            (Some(a), _) if a != "_" => Graph::named(a),
            _ => Err(Error::Parse(format!("`{name}` needs a graph"))),
        }
    };
    let star_arg = |g: &Graph| -> Result<usize> {
        match args.get(1) {
            Some(a) => g.find_vertex(a),
            None => g
                .star_vertices()
                .last()
                .copied()
                .ok_or_else(|| Error::Precondition("graph has no star vertex".into())),
        }
    };
    let ideal = match name {
        "sigma" => sigma(&graph_arg(0)?)?,
        "kprime" => kprime(&graph_arg(0)?)?,
        "kdprime" => {
            let g = graph_arg(0)?;
            kdprime(&g, star_arg(&g)?)?
        }
        "tilde" => {
            let g = graph_arg(0)?;
            tilde(&g, star_arg(&g)?)?
        }
        "ex311" => {
            let n: usize = args.first().and_then(|a| a.parse().ok()).ok_or_else(bad)?;
            ex311(n)?
        }
        _ => return Err(bad()),
    };
    Ok(ideal.to_presentation(field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_rings() {
        let q = FieldSpec::Rational;
        let p = named_ring("sigma(K3)", q, None).unwrap();
        assert_eq!(p.gens().len(), 6);
        let p = named_ring("kprime(P3)", q, None).unwrap();
        assert_eq!(p.render_gens(), ["v1^2", "v1*v2", "v2^2", "v2*v3", "v3^2"].map(String::from));
        let p = named_ring("kdprime(P3, 2)", q, None).unwrap();
        assert_eq!(p.render_gens(), ["v1^2", "v1*v2", "v2*v3", "v3^2"].map(String::from));
        let g = Graph::path(3).unwrap();
        assert_eq!(named_ring("kdprime(_,v2)", q, Some(&g)).unwrap(), p);
        assert_eq!(named_ring("kdprime", q, Some(&g)).unwrap(), p);
        assert_eq!(named_ring("ex54R", FieldSpec::Prime(2), None).unwrap().field(), FieldSpec::Prime(2));
        assert!(named_ring("sigma", q, None).is_err());
        assert!(named_ring("nonsense(K2)", q, None).is_err());
        assert!(named_ring("kdprime(C4)", q, None).is_err());
    }

    #[test]
    fn ex311_shape() {
        let g = ex311_graph(2).unwrap();
        assert_eq!(g.star_vertices(), vec![4]);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(ex311_target(1).unwrap().gens().len(), 6);
    }
}
