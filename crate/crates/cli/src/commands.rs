use std::time::Instant;

use qcolour_core::analysis::{check_tight, gap_tuple, ramsey_check, record_gap, verify_lemma_constructions, GapGrid, GapSearch};
use qcolour_core::clique::{brute_force_clique, omega_sigma, omega_uncapped};
use qcolour_core::colouring::{exists_k_colouring, spectrum};
use qcolour_core::hypergraph::{
    build_complete, build_grid, build_ramsey, build_sigma_explicit, edge_type, GridShape, Hypergraph, SigmaStructure,
};
use qcolour_core::partitions::{
    build_family, classify_robust, enumerate_partitions, ex_closure, expand_once, rd_closure, reduce_once, Family,
};
use qcolour_core::sigma::{sigma_exists_k, sigma_spectrum};
use qcolour_core::{binomial, Decision, PatternSet, Verdict};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::catalog::{self, CatalogEntry, ENGINE_VERSION};
use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::inputs;
use crate::io::{hypergraph_to_string, parse_hypergraph, warn_duplicates, write_hypergraph};
use crate::json;

pub enum Body {
    Json(Value),
    /// Printed verbatim.
    Text(String),
}

pub struct Report {
    pub body: Body,
    /// Some decision ran out of budget.
    pub unknown: bool,
    /// Command name and canonical input, for results worth cataloguing.
    pub record: Option<(&'static str, Value)>,
}

impl Report {
    fn plain(body: Value) -> Self {
        Report {
            body: Body::Json(body),
            unknown: false,
            record: None,
        }
    }

    fn recorded(command: &'static str, input: Value, body: Value, unknown: bool) -> Self {
        Report {
            body: Body::Json(body),
            unknown,
            record: Some((command, input)),
        }
    }
}

/// Runs a command and appends catalogued results when a catalog is set.
pub fn execute(command: &Command, st: &Settings) -> Result<Report> {
    let start = Instant::now();
    let report = dispatch(command, st)?;
    if let (Some(path), Some((name, input)), Body::Json(result)) = (&st.catalog, &report.record, &report.body) {
        catalog::append(
            path,
            CatalogEntry {
                input_digest: catalog::digest(name, input),
                command: name.to_string(),
                input: input.clone(),
                result: result.clone(),
                engine_version: ENGINE_VERSION.to_string(),
                wall_time_ms: start.elapsed().as_millis() as u64,
                conflict: false,
            },
        )?;
    }
    Ok(report)
}

fn dispatch(command: &Command, st: &Settings) -> Result<Report> {
    match command {
        Command::Partitions { r, family } => {
            let set = match family {
                Some(f) => inputs::patterns(f, Some(*r))?,
                None => enumerate_partitions(*r)?,
            };
            Ok(Report::plain(json!({ "r": r, "count": set.len(), "partitions": json::patterns(&set) })))
        }
        Command::Closure(a) => closure(a),
        Command::Classify { q, r } => {
            let q = inputs::patterns(q, *r)?;
            let c = classify_robust(&q)?;
            Ok(Report::plain(json!({
                "r": q.r(),
                "Q": json::patterns(&q),
                "reduction_closed": c.reduction_closed,
                "expansion_closed": c.expansion_closed,
                "simply_closed": c.simply_closed,
                "robust": c.robust,
                "rd_closure": json::patterns(&rd_closure(&q)?),
                "ex_closure": json::patterns(&ex_closure(&q)?),
            })))
        }
        Command::Build(b) => build(b, st),
        Command::Spectrum(a) => spectrum_cmd(a, st),
        Command::Clique(a) => clique(a, st),
        Command::Tight(a) => {
            let s = sigma_structure(&a.sigma)?;
            let q = inputs::patterns(&a.q, Some(s.r()))?;
            let t = check_tight(&s, &q, || st.limits.start())?;
            let unknown = [t.verdict, t.spectrum_singleton, t.unique_up_to_relabel, t.equal_class_sizes, t.minimal_over_q]
                .contains(&Verdict::Unknown);
            let input = json!({ "sigma": json::sigma_structure(&s), "Q": json::patterns(&q) });
            Ok(Report::recorded("tight", input, json::tight(&t), unknown))
        }
        Command::Gaps(a) => gaps(a, st),
        Command::Ramsey(a) => ramsey(a, st),
        Command::Verify(a) => match a.suite {
            Suite::Lemmas => {
                let reports = verify_lemma_constructions(a.r, || st.limits.start())?;
                let verdict = reports.iter().fold(Verdict::True, |v, r| v.and(r.verdict));
                let unknown = reports.iter().any(|r| r.verdict == Verdict::Unknown);
                let body = json!({
                    "suite": "lemmas",
                    "r": a.r,
                    "reports": reports.iter().map(json::claim).collect::<Vec<_>>(),
                    "verdict": json::verdict(verdict),
                });
                Ok(Report::recorded("verify", json!({ "suite": "lemmas", "r": a.r }), body, unknown))
            }
        },
        Command::Catalog(c) => {
            let path = st
                .catalog
                .as_deref()
                .ok_or_else(|| CliError::input("no catalog configured (use --catalog or QCOL_CATALOG)"))?;
            Ok(Report::plain(match c {
                CatalogCommand::Query { digest } => json!({ "entry": catalog::query(path, digest)? }),
                CatalogCommand::List => json!({ "entries": catalog::load(path)? }),
            }))
        }
    }
}

fn closure(a: &ClosureArgs) -> Result<Report> {
    let (kind, text) = match (&a.rd, &a.ex) {
        (Some(t), None) => ("rd", t),
        (None, Some(t)) => ("ex", t),
        _ => return Err(CliError::input("give exactly one of --rd and --ex")),
    };
    let seed = inputs::patterns(text, a.r)?;
    if seed.is_empty() {
        return Err(CliError::input("the seed set must be non-empty"));
    }
    let mut body = json!({ "r": seed.r(), "kind": kind, "input": json::patterns(&seed) });
    if a.once {
        let mut out = PatternSet::empty(seed.r());
        for p in &seed {
            let step = if kind == "rd" { reduce_once(p) } else { expand_once(p) };
            out = out.union(&step)?;
        }
        body["derived"] = json::patterns(&out);
    } else {
        let c = if kind == "rd" { rd_closure(&seed)? } else { ex_closure(&seed)? };
        body["closure"] = json::patterns(&c);
    }
    Ok(Report::plain(body))
}

fn sigma_structure(a: &SigmaArgs) -> Result<SigmaStructure> {
    let p = inputs::sigma_params(&a.sigma)?;
    let sigma = inputs::patterns(&a.sigma_set, Some(p.r))?;
    Ok(SigmaStructure::new(p.n, p.r, p.q, sigma)?)
}

fn hypergraph_value(h: &Hypergraph) -> Value {
    let edges: Vec<&[u32]> = h.edges().collect();
    json!({ "r": h.r(), "vertices": h.vertex_count(), "edges": edges })
}

fn big(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn emit_hypergraph(h: &Hypergraph, out: &Option<std::path::PathBuf>) -> Result<Report> {
    match out {
        Some(path) => {
            write_hypergraph(h, path)?;
            Ok(Report::plain(json!({
                "path": path.display().to_string(),
                "r": h.r(),
                "vertices": h.vertex_count(),
                "edge_count": h.edge_count(),
            })))
        }
        None => Ok(Report {
            body: Body::Text(hypergraph_to_string(h)),
            unknown: false,
            record: None,
        }),
    }
}

fn build(b: &BuildCommand, st: &Settings) -> Result<Report> {
    match b {
        BuildCommand::Complete { n, r, out } => emit_hypergraph(&build_complete(*n, *r, st.build)?, out),
        BuildCommand::Ramsey { n, r, p, out } => emit_hypergraph(&build_ramsey(*n, *r, *p, st.build)?, out),
        BuildCommand::Grid {
            rows,
            cols,
            cell_size,
            r,
            row_patterns,
            col_patterns,
            out,
        } => {
            let shape = GridShape {
                rows: *rows,
                cols: *cols,
                cell_size: *cell_size,
            };
            let rp = inputs::patterns(row_patterns, Some(*r))?;
            let cp = inputs::patterns(col_patterns, Some(*r))?;
            emit_hypergraph(&build_grid(shape, &rp, &cp, *r, st.build)?, out)
        }
        BuildCommand::Sigma {
            sigma,
            explicit,
            edge,
            out,
        } => {
            let s = sigma_structure(sigma)?;
            if let Some(e) = edge {
                let mut e = inputs::vertex_list(e)?;
                e.sort_unstable();
                let t = edge_type(&s, &e)?;
                return Ok(Report::plain(json!({
                    "edge": e,
                    "type": json::partition(&t),
                    "is_edge": s.sigma().contains(&t),
                })));
            }
            if *explicit || out.is_some() {
                return emit_hypergraph(&build_sigma_explicit(&s, st.build)?, out);
            }
            let by_type: Vec<Value> = s
                .sigma()
                .iter()
                .map(|t| json!({ "type": json::partition(t), "edges": big(s.edges_of_type(t)) }))
                .collect();
            let mut body = json::sigma_structure(&s);
            body["vertices"] = json!(s.vertex_count());
            body["edge_count"] = big(s.edge_count());
            body["edges_by_type"] = Value::Array(by_type);
            body["unrealizable"] = Value::Array(s.unrealizable_types().iter().map(json::partition).collect());
            Ok(Report::plain(body))
        }
    }
}

enum Resolved {
    Explicit(Hypergraph),
    Sigma(SigmaStructure),
}

/// The target hypergraph and its canonical input description.
fn resolve_target(t: &Target, st: &Settings) -> Result<(Resolved, Value)> {
    if let Some(text) = &t.hypergraph {
        let (h, dups) = parse_hypergraph(&inputs::resolve(text)?)?;
        warn_duplicates(dups);
        let input = json!({ "hypergraph": hypergraph_value(&h) });
        return Ok((Resolved::Explicit(h), input));
    }
    let (Some(params), Some(set)) = (&t.sigma, &t.sigma_set) else {
        return Err(CliError::input("give --hypergraph, or --sigma with --Sigma"));
    };
    let s = sigma_structure(&SigmaArgs {
        sigma: params.clone(),
        sigma_set: set.clone(),
    })?;
    let input = json!({ "sigma": json::sigma_structure(&s), "explicit": t.explicit });
    if t.explicit {
        Ok((Resolved::Explicit(build_sigma_explicit(&s, st.build)?), input))
    } else {
        Ok((Resolved::Sigma(s), input))
    }
}

fn spectrum_cmd(a: &SpectrumArgs, st: &Settings) -> Result<Report> {
    let (target, mut input) = resolve_target(&a.target, st)?;
    let r = match &target {
        Resolved::Explicit(h) => h.r(),
        Resolved::Sigma(s) => s.r(),
    };
    let q = inputs::patterns(&a.q, Some(r))?;
    input["Q"] = json::patterns(&q);
    if let Some(k) = a.k {
        input["k"] = json!(k);
        let (status, witness) = match &target {
            Resolved::Explicit(h) => match exists_k_colouring(h, k, &q, &mut st.limits.start())? {
                Decision::Found(c) => (Verdict::True, json!({ "colouring": json::colouring(&c) })),
                Decision::Infeasible => (Verdict::False, Value::Null),
                Decision::Unknown => (Verdict::Unknown, Value::Null),
            },
            Resolved::Sigma(s) => match sigma_exists_k(s, &q, k, &mut st.limits.start())? {
                Decision::Found(d) => (
                    Verdict::True,
                    json!({ "distribution": json::matrix(&d), "colouring": json::colouring(&d.realize()) }),
                ),
                Decision::Infeasible => (Verdict::False, Value::Null),
                Decision::Unknown => (Verdict::Unknown, Value::Null),
            },
        };
        let body = json!({ "k": k, "feasible": json::verdict(status), "witness": witness });
        return Ok(Report::recorded("spectrum", input, body, status == Verdict::Unknown));
    }
    let sp = match &target {
        Resolved::Explicit(h) => spectrum(h, &q, a.k_max.unwrap_or(h.vertex_count()), || st.limits.start())?,
        Resolved::Sigma(s) => sigma_spectrum(s, &q, a.k_max.unwrap_or(s.vertex_count()), || st.limits.start())?,
    };
    input["k_max"] = json!(sp.probed_max);
    let unknown = !sp.is_complete();
    Ok(Report::recorded("spectrum", input, json::spectrum(&sp), unknown))
}

fn clique(a: &CliqueArgs, st: &Settings) -> Result<Report> {
    if a.uncapped {
        let set = a
            .target
            .sigma_set
            .as_deref()
            .ok_or_else(|| CliError::input("--uncapped needs --Sigma"))?;
        let r = match &a.target.sigma {
            Some(p) => Some(inputs::sigma_params(p)?.r),
            None => None,
        };
        let sigma = inputs::patterns(set, r)?;
        let limit = a.k_limit.expect("clap requires --k-limit");
        let o = omega_uncapped(&sigma, limit)?;
        let mut body = json::omega(&o);
        body["uncapped"] = json!(true);
        body["k_limit"] = json!(limit);
        return Ok(Report::plain(body));
    }
    let (target, input) = resolve_target(&a.target, st)?;
    let body = match &target {
        Resolved::Sigma(s) => json::omega(&omega_sigma(s)?),
        Resolved::Explicit(h) => {
            let brute = brute_force_clique(h, a.vertex_cap)?;
            let mut body = json!({ "omega": brute });
            if let (Some(p), Some(set)) = (&a.target.sigma, &a.target.sigma_set) {
                let s = sigma_structure(&SigmaArgs {
                    sigma: p.clone(),
                    sigma_set: set.clone(),
                })?;
                let o = omega_sigma(&s)?;
                body["formula"] = json::omega(&o);
                body["agree"] = json!(o.omega == brute);
            }
            body
        }
    };
    Ok(Report::recorded("clique", input, body, false))
}

fn gaps(a: &GapsArgs, st: &Settings) -> Result<Report> {
    let q = inputs::patterns(&a.q, a.r)?;
    if q.is_empty() {
        return Err(CliError::input("Q must be non-empty"));
    }
    let mut grid = GapGrid::rectangle(q.r(), a.n_max, a.q_max)?;
    if !a.sigma_sets.is_empty() {
        grid.sigmas = a
            .sigma_sets
            .iter()
            .map(|s| inputs::patterns(s, Some(q.r())))
            .collect::<Result<_>>()?;
        if grid.sigmas.iter().any(PatternSet::is_empty) {
            return Err(CliError::input("edge-type sets must be non-empty"));
        }
    }
    let tuples: Vec<(u32, u32, &PatternSet)> = grid.tuples().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(st.threads)
        .build()
        .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    let hits: Vec<_> = pool.install(|| {
        tuples
            .par_iter()
            .map(|&(n, size, sigma)| gap_tuple(n, size, sigma, &q, || st.limits.start()))
            .collect::<qcolour_core::Result<_>>()
    })?;
    let mut search = GapSearch::default();
    for h in hits {
        record_gap(&mut search, h);
    }
    let input = json!({
        "Q": json::patterns(&q),
        "n_max": a.n_max,
        "q_max": a.q_max,
        "Sigma": grid.sigmas.iter().map(json::patterns).collect::<Vec<_>>(),
    });
    let body = json!({
        "Q": json::patterns(&q),
        "examined": search.examined,
        "hits": search.hits.iter().map(json::gap_hit).collect::<Vec<_>>(),
        "inconclusive": search.inconclusive.iter().map(json::gap_hit).collect::<Vec<_>>(),
    });
    Ok(Report::recorded("gaps", input, body, !search.inconclusive.is_empty()))
}

fn ramsey(a: &RamseyArgs, st: &Settings) -> Result<Report> {
    if a.r == 0 || a.p <= a.r || a.n < a.p {
        return Err(CliError::input("ramsey needs n >= p >= r + 1 and r >= 1"));
    }
    let width = u32::try_from(binomial(a.p as u64, a.r as u64))
        .map_err(|_| CliError::input("the bundle hypergraph is too wide"))?;
    let q = match &a.q {
        Some(t) => inputs::patterns(t, Some(width))?,
        None => build_family(Family::ClassicalHypergraph, width)?,
    };
    let out = ramsey_check(a.n, a.r, a.p, a.k, &q, st.build, || st.limits.start())?;
    let colourable = match out.verdict {
        Verdict::True => Verdict::False,
        Verdict::False => Verdict::True,
        Verdict::Unknown => Verdict::Unknown,
    };
    let input = json!({ "n": a.n, "r": a.r, "p": a.p, "k": a.k, "Q": json::patterns(&q) });
    let body = json!({
        "instance": { "kind": "ramsey", "n": a.n, "r": a.r, "p": a.p, "k": a.k },
        "Q": json::patterns(&q),
        "verdict": json::verdict(out.verdict),
        "colourable": json::verdict(colourable),
        "witness": out.witness.as_ref().map(json::colouring),
    });
    Ok(Report::recorded("ramsey", input, body, out.verdict == Verdict::Unknown))
}
