//! Reading `--input` files and resolving ring and graph arguments.

use std::fs;

use ringlab::{rings, FieldSpec, Graph, MonomialIdeal, Presentation};

use crate::{CliError, CliResult, Options};

pub enum Input {
    Graph(Graph),
    Presentation(Presentation),
}

pub fn read_input(opts: &Options) -> CliResult<Option<Input>> {
    let Some(path) = &opts.input else {
        return Ok(None);
    };
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let is_presentation = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("vars").is_some())
        .unwrap_or(false);
    Ok(Some(if is_presentation {
        Input::Presentation(Presentation::parse_json(&text)?)
    } else {
        Input::Graph(Graph::parse(&text)?)
    }))
}

pub fn field(opts: &Options) -> FieldSpec {
    opts.field.unwrap_or(FieldSpec::Rational)
}

/// A named graph, or the `--input` graph.
pub fn graph(opts: &Options, name: Option<&str>) -> CliResult<Graph> {
    if let Some(name) = name {
        return Ok(Graph::named(name)?);
    }
    match read_input(opts)? {
        Some(Input::Graph(g)) => Ok(g),
        Some(Input::Presentation(_)) => Err(CliError::Usage("expected a graph, got a presentation".into())),
        None => Err(CliError::Usage("give a graph name or --input".into())),
    }
}

pub fn optional_graph(opts: &Options) -> CliResult<Option<Graph>> {
    match read_input(opts)? {
        Some(Input::Graph(g)) => Ok(Some(g)),
        Some(Input::Presentation(_)) => Err(CliError::Usage("expected a graph, got a presentation".into())),
        None => Ok(None),
    }
}

/// A named ring (graph arguments may come from `--input`), or the `--input` presentation, or
/// the edge ring of the `--input` graph. `--field` overrides the field of a JSON presentation.
pub fn presentation(opts: &Options, name: Option<&str>) -> CliResult<Presentation> {
    let input = read_input(opts)?;
    match (name, input) {
        (Some(name), Some(Input::Graph(g))) => Ok(rings::named_ring(name, field(opts), Some(&g))?),
        (Some(name), None) => Ok(rings::named_ring(name, field(opts), None)?),
        (Some(_), Some(Input::Presentation(_))) => {
            Err(CliError::Usage("a ring name and a presentation --input were both given".into()))
        }
        (None, Some(Input::Presentation(p))) => Ok(match opts.field {
            Some(f) => p.with_field(f),
            None => p,
        }),
        (None, Some(Input::Graph(g))) => Ok(MonomialIdeal::edge_ideal(&g)?.to_presentation(field(opts))),
        (None, None) => Err(CliError::Usage("give a ring name or --input".into())),
    }
}
