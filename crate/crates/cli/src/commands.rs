use std::sync::Arc;

use serde_json::{json, Value};
use ringlab::homology::{bass_truncation, is_semidualizing_up_to, is_totally_reflexive_up_to, poincare_truncation};
use ringlab::{sr, verify, with_field};
use ringlab::{FPModule, Field, FieldSpec, Graph, LocalAlgebra, ModuleJson, Presentation, Report, SearchMode};

use crate::input::{self, field};
use crate::{CliError, CliResult, GraphOp, Options, Output, RingOp, Suite};

/// Default truncation order for `artin` and `resolve`.
const DEFAULT_TRUNC: u32 = 3;

fn emit(opts: &Options, default: Output, value: &Value) {
    match opts.output.unwrap_or(default) {
        Output::Json => out!("{}", serde_json::to_string_pretty(value).expect("values serialize")),
        Output::Table => match value.as_object() {
            Some(map) => {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                for (k, v) in map {
                    out!("{k:<width$}  {v}");
                }
            }
            None => out!("{value}"),
        },
    }
}

fn emit_graph(opts: &Options, g: &Graph) {
    match opts.output.unwrap_or(Output::Table) {
        Output::Table => out!("{}", g.to_edge_list().trim_end()),
        Output::Json => emit(opts, Output::Json, &json!(g.to_json())),
    }
}

pub fn graph(opts: &Options, op: GraphOp) -> CliResult<()> {
    match op {
        GraphOp::Build { name } => emit_graph(opts, &Graph::named(&name)?),
        GraphOp::Complement { name } => emit_graph(opts, &input::graph(opts, name.as_deref())?.complement()),
        GraphOp::Whisker { name, except } => {
            let g = input::graph(opts, name.as_deref())?;
            let w = match except {
                Some(v) => g.whisker_except(g.find_vertex(&v)?)?,
                None => g.whisker_all()?,
            };
            emit_graph(opts, &w);
        }
        GraphOp::Cliques { name } => {
            let g = input::graph(opts, name.as_deref())?;
            let cliques: Vec<Vec<&str>> = g
                .maximal_cliques()
                .iter()
                .map(|c| c.iter().map(|&v| g.label(v)).collect())
                .collect();
            match opts.output.unwrap_or(Output::Table) {
                Output::Table => cliques.iter().for_each(|c| out!("{}", c.join(" "))),
                Output::Json => emit(opts, Output::Json, &json!(cliques)),
            }
        }
    }
    Ok(())
}

pub fn ring(opts: &Options, op: RingOp) -> CliResult<()> {
    match op {
        RingOp::Show { ring } => {
            let p = input::presentation(opts, ring.as_deref())?;
            emit(opts, Output::Json, &json!(p.to_json()));
        }
        RingOp::Invariants { ring } => {
            let p = input::presentation(opts, ring.as_deref())?;
            emit(opts, Output::Json, &ring_invariants(&p)?);
        }
    }
    Ok(())
}

fn ring_invariants(p: &Presentation) -> CliResult<Value> {
    let i = p.as_monomial_ideal().ok_or(ringlab::Error::NotMonomial)?;
    let dim = sr::krull_dim(&i)?;
    let depth_q = sr::depth(&i, FieldSpec::Rational)?;
    let depth_2 = sr::depth(&i, FieldSpec::Prime(2))?;
    let depth = match p.field() {
        FieldSpec::Rational => depth_q,
        FieldSpec::Prime(2) => depth_2,
        f => sr::depth(&i, f)?,
    };
    let squarefree = i.is_squarefree();
    let complex = sr::stanley_reisner_complex(&if squarefree { i.clone() } else { i.polarize() })?;
    let hs = sr::hilbert_series(&i)?;
    Ok(json!({
        "field": p.field(),
        "vars": p.vars(),
        "gens": p.render_gens(),
        "dim": dim,
        "depth": { "q": depth_q, "fp:2": depth_2, p.field().to_string(): depth },
        "cm": depth == dim,
        "f_vector": sr::f_vector(&complex).0,
        "f_vector_of": if squarefree { "ideal" } else { "polarization" },
        "hilbert_numerator": hs.numerator,
        "hilbert_denominator_power": hs.denominator_power,
        "multiplicity": sr::multiplicity(&i)?,
    }))
}

fn artin_report<F: Field>(f: &F, p: &Presentation, n: u32, mode: SearchMode) -> ringlab::Result<Value> {
    let a = LocalAlgebra::truncate(f, p, n)?;
    let full = a.is_full_artinian()?;
    let socle: Vec<String> = a.socle().iter().map(|s| a.render_element(s)).collect();
    let decomposition = if p.field().is_finite() {
        let found = a.pair_decomposition_search(mode)?;
        let witness: Vec<String> = found
            .iter()
            .flat_map(|(l1, l2)| [a.render_linear_form(l1), a.render_linear_form(l2)])
            .collect();
        json!({
            "found": found.is_some(),
            "witness": witness,
            "order": n,
            "mode": match mode { SearchMode::Necessary => "necessary", SearchMode::Full => "full" },
        })
    } else {
        Value::Null
    };
    let split = p.as_monomial_ideal().map(|i| i.variable_partition_decomposable()).transpose()?.flatten();
    Ok(json!({
        "field": p.field(),
        "gens": p.render_gens(),
        "trunc": n,
        "dim_k": a.dim(),
        "hilbert": a.hilbert_function(),
        "full_artinian": full,
        "socle_dim": socle.len(),
        "socle": socle,
        "gorenstein": if full { json!(a.is_gorenstein_artinian()?) } else { Value::Null },
        "variable_split": split.map(|s| s.components.iter()
            .map(|c| c.iter().map(|&v| p.vars()[v].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
        "decomposition": decomposition,
    }))
}

pub fn artin(opts: &Options, ring: Option<&str>, mode: SearchMode) -> CliResult<()> {
    let p = input::presentation(opts, ring)?;
    let n = opts.trunc.unwrap_or(DEFAULT_TRUNC);
    let report = with_field!(p.field(), |f| artin_report(&f, &p, n, mode))?;
    emit(opts, Output::Json, &report);
    Ok(())
}

fn build_module<F: Field>(a: &Arc<LocalAlgebra<F>>, spec: &str) -> CliResult<FPModule<F>> {
    Ok(match spec {
        "k" => FPModule::residue_field(a),
        "free" | "A" => FPModule::free(a, 1),
        "canonical" | "omega" => FPModule::canonical_module(a),
        _ => {
            if let Some(elems) = spec.strip_prefix("cyclic:") {
                let gens = elems
                    .split(';')
                    .map(|e| a.parse_element(e))
                    .collect::<ringlab::Result<Vec<_>>>()?;
                FPModule::cyclic_module(a, &gens)?
            } else {
                let text = std::fs::read_to_string(spec)
                    .map_err(|source| CliError::Io { path: spec.into(), source })?;
                let json: ModuleJson = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
                FPModule::from_json(a, &json)?
            }
        }
    })
}

fn resolve_report<F: Field>(f: &F, p: &Presentation, n: u32, spec: &str, b: usize) -> CliResult<Value> {
    let a = Arc::new(LocalAlgebra::truncate(f, p, n)?);
    if !a.is_full_artinian()? {
        eprintln!("warning: the truncation at order {n} differs from the ring; results describe the truncation");
    }
    let m = build_module(&a, spec)?;
    let up_to = |ok: bool| if ok { json!(b) } else { json!(false) };
    Ok(json!({
        "field": p.field(),
        "gens": p.render_gens(),
        "trunc": n,
        "module": m.label().unwrap_or(spec),
        "module_dim": m.dim(),
        "bound": b,
        "betti": poincare_truncation(&m, b)?,
        "bass": bass_truncation(&m, b)?,
        "totally_reflexive_up_to": up_to(is_totally_reflexive_up_to(&m, b)?),
        "semidualizing_up_to": up_to(is_semidualizing_up_to(&m, b)?),
    }))
}

pub fn resolve(opts: &Options, ring: Option<&str>, module: &str) -> CliResult<()> {
    let p = input::presentation(opts, ring)?;
    let n = opts.trunc.unwrap_or(DEFAULT_TRUNC);
    let report = with_field!(p.field(), |f| resolve_report(&f, &p, n, module, opts.bound))?;
    emit(opts, Output::Json, &report);
    Ok(())
}

fn run_suite(opts: &Options, suite: Suite) -> CliResult<Vec<Report>> {
    let f = field(opts);
    let single = input::optional_graph(opts)?;
    Ok(match suite {
        Suite::ThmA => match single {
            Some(g) => vec![verify::check_theorem_a(&g, f)?],
            None => verify::run_theorem_a(opts.max_n, f)?,
        },
        Suite::ThmB { star } => match single {
            Some(g) => {
                let s = match star {
                    Some(s) => g.find_vertex(&s)?,
                    None => *g
                        .star_vertices()
                        .last()
                        .ok_or_else(|| CliError::Usage("the graph has no star vertex".into()))?,
                };
                vec![verify::check_theorem_b(&g, s, f)?]
            }
            None => verify::run_theorem_b(opts.max_n, f)?,
        },
        Suite::Gorenstein => match single {
            Some(g) => vec![verify::check_gorenstein_exclusion(&[g], f)?],
            None => vec![verify::run_gorenstein(opts.max_n, f)?],
        },
        Suite::Ex311 { n } => match n {
            Some(n) => vec![verify::check_example_3_11(n)?],
            None => (1..=3).map(verify::check_example_3_11).collect::<ringlab::Result<_>>()?,
        },
        Suite::Ex4x { p } => match p {
            Some(p) => vec![verify::check_example_4x(p)?],
            None => [2, 3, 5, 7].into_iter().map(verify::check_example_4x).collect::<ringlab::Result<_>>()?,
        },
        Suite::Ex54 => vec![verify::check_example_5_4(opts.bound, f)?],
        Suite::All => verify::run_all(opts.max_n, f, opts.bound)?,
    })
}

/// Runs a suite; `Ok(false)` when some check failed.
pub fn verify(opts: &Options, suite: Suite) -> CliResult<bool> {
    let reports = run_suite(opts, suite)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    let summary = format!("{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed);
    match opts.output.unwrap_or(Output::Table) {
        Output::Json => {
            out!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            eprintln!("{summary}");
        }
        Output::Table => {
            for r in &reports {
                out!("{}", r.summary_line());
                if !r.passed {
                    out!("      {}", r.witness);
                }
            }
            out!("{summary}");
        }
    }
    Ok(failed == 0)
}
