//! JSON forms of core values.

use qcolour_core::analysis::{ClaimReport, GapHit, Instance, TightReport, Witness};
use qcolour_core::clique::{KFullWitness, Omega};
use qcolour_core::colouring::{Colouring, Spectrum};
use qcolour_core::hypergraph::SigmaStructure;
use qcolour_core::sigma::DistributionMatrix;
use qcolour_core::{Partition, PatternSet, Verdict};
use serde_json::{json, Value};

/// Pretty JSON that keeps arrays without objects on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        Value::Array(a) if has_object(v) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(depth + 1, out);
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn patterns(s: &PatternSet) -> Value {
    Value::Array(s.iter().map(partition).collect())
}

pub fn verdict(v: Verdict) -> Value {
    json!(v.as_str())
}

pub fn colouring(c: &Colouring) -> Value {
    json!({ "k": c.k(), "colours": c.colours() })
}

pub fn matrix(d: &DistributionMatrix) -> Value {
    let rows: Vec<Vec<u32>> = d.rows().map(<[u32]>::to_vec).collect();
    json!({ "n": d.n(), "q": d.q(), "k": d.k(), "counts": rows })
}

pub fn spectrum(s: &Spectrum) -> Value {
    json!({
        "feasible": s.feasible,
        "probed_max": s.probed_max,
        "gaps": s.gaps(),
        "unknown": s.unknown,
        "lower": s.lower(),
        "upper": s.upper(),
        "has_gap": verdict(s.has_gap()),
    })
}

pub fn sigma_structure(s: &SigmaStructure) -> Value {
    json!({ "n": s.n(), "r": s.r(), "q": s.q(), "Sigma": patterns(s.sigma()) })
}

pub fn k_full(w: &KFullWitness) -> Value {
    json!({ "k": w.k, "b": w.b, "patterns_used": patterns(&w.f) })
}

pub fn omega(o: &Omega) -> Value {
    json!({ "omega": o.omega, "witness": o.witness.as_ref().map(k_full) })
}

pub fn instance(i: &Instance) -> Value {
    match i {
        Instance::Complete { n, r } => json!({ "kind": "complete", "n": n, "r": r }),
        Instance::Sigma { n, r, q, sigma } => {
            json!({ "kind": "sigma", "n": n, "r": r, "q": q, "Sigma": patterns(sigma) })
        }
        Instance::Ramsey { n, r, p, k } => json!({ "kind": "ramsey", "n": n, "r": r, "p": p, "k": k }),
    }
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Colouring(c) => json!({ "colouring": colouring(c) }),
        Witness::Distribution(d) => json!({ "distribution": matrix(d) }),
    }
}

pub fn claim(r: &ClaimReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "expect_feasible": c.expect_feasible,
                "verdict": verdict(c.verdict),
                "witness": c.witness.as_ref().map(witness),
            })
        })
        .collect();
    let first = r.checks.iter().find_map(|c| c.witness.as_ref()).map(witness);
    json!({
        "claim": r.claim,
        "instance": instance(&r.instance),
        "Q": patterns(&r.patterns),
        "checks": checks,
        "verdict": verdict(r.verdict),
        "witness": first,
    })
}

pub fn tight(t: &TightReport) -> Value {
    let detail: Vec<Value> = t
        .minimal_detail
        .iter()
        .map(|(p, v)| json!({ "removed": partition(p), "verdict": verdict(*v) }))
        .collect();
    json!({
        "verdict": verdict(t.verdict),
        "k": t.k,
        "spectrum": spectrum(&t.spectrum),
        "matrix": t.matrix.as_ref().map(matrix),
        "conditions": {
            "spectrum_singleton": verdict(t.spectrum_singleton),
            "unique_up_to_relabel": verdict(t.unique_up_to_relabel),
            "equal_class_sizes": verdict(t.equal_class_sizes),
            "minimal_over_q": verdict(t.minimal_over_q),
        },
        "minimal_detail": detail,
    })
}

pub fn gap_hit(h: &GapHit) -> Value {
    json!({ "n": h.n, "q": h.q, "Sigma": patterns(&h.sigma), "spectrum": spectrum(&h.spectrum) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_round_trips() {
        let v = json!({ "a": [[3, 1], [2, 2]], "b": [{ "x": 1 }, { "y": [] }], "c": {}, "d": "q\"" });
        let text = render(&v);
        assert!(text.contains("\"a\": [[3,1],[2,2]]"));
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}
