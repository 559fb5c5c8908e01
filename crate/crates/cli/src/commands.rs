use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use hyperhom::dichotomy::{classify, Classification, HardnessWitness};
use hyperhom::evaluator::{evaluate, Strategy};
use hyperhom::gadgets::{
    component_separator, equality_eliminator, pad_to_arity, tilde_f, two_stretch, vertex_power, GadgetResult,
};
use hyperhom::model::{load_instance, load_symfunc, to_csp, AnyInstance};
use hyperhom::{CspInstance, Hypergraph, Instance, SymFunc};

use crate::report::{Failure, Outcome};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: hyperhom::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn load_function(path: &Path) -> Result<SymFunc, Failure> {
    with_path(path, load_symfunc(&read(path)?))
}

pub fn load_any(path: &Path) -> Result<AnyInstance, Failure> {
    with_path(path, load_instance(&read(path)?))
}

/// Instance as a hypergraph; scopes must have distinct variables.
fn load_edges(path: &Path) -> Result<Hypergraph, Failure> {
    let inst = load_any(path)?;
    if !inst.equalities().is_empty() {
        return Err(Failure::Input(format!("{}: equality constraints are not allowed here", path.display())));
    }
    with_path(path, Hypergraph::multi(inst.num_vars(), inst.scopes().to_vec()))
}

fn load_csp(path: &Path) -> Result<CspInstance, Failure> {
    Ok(to_csp(&load_any(path)?))
}

#[derive(Serialize)]
struct HardPayload<'a> {
    #[serde(flatten)]
    witness: &'a HardnessWitness,
    at: String,
    description: String,
}

pub fn run_classify(g_path: &Path) -> Result<Outcome, Failure> {
    let g = load_function(g_path)?;
    match classify(&g)? {
        Classification::Tractable(ts) => {
            let groups: Vec<String> = ts
                .components
                .iter()
                .map(|c| format!("{:?}", c.group.invariant_factors()))
                .collect();
            Ok(Outcome {
                status: "tractable",
                summary: format!("tractable: {} component(s), groups {}", ts.components.len(), groups.join(" ")),
                payload: serde_json::to_value(&ts)?,
            })
        }
        Classification::Hard(w) => Ok(Outcome {
            status: "hard",
            summary: format!("hard: {w}"),
            payload: serde_json::to_value(HardPayload {
                witness: &w,
                at: w.location(),
                description: w.to_string(),
            })?,
        }),
    }
}

pub fn run_eval(g_path: &Path, i_path: &Path, strategy: Strategy, cap: u64) -> Result<Outcome, Failure> {
    let g = load_function(g_path)?;
    let inst = load_any(i_path)?;
    let report = evaluate(&g, &inst, strategy, cap)?;
    Ok(Outcome {
        status: "value",
        summary: format!("Z = {} ({})", report.value, serde_json::to_value(report.method)?.as_str().unwrap_or("")),
        payload: serde_json::to_value(&report)?,
    })
}

/// Which construction to run.
pub enum GadgetRequest {
    Pad { input: PathBuf, k: Option<usize>, r: usize },
    Stretch { input: PathBuf },
    Tilde { g: PathBuf, k: usize },
    Power { input: PathBuf, j: usize },
    Separate { input: PathBuf, p: usize },
    EqElim { input: PathBuf, p: usize },
}

pub fn run_gadget(request: GadgetRequest, out: Option<&Path>) -> Result<Outcome, Failure> {
    let result: GadgetResult = match request {
        GadgetRequest::Tilde { g, k } => {
            let g = load_function(&g)?;
            let t = tilde_f(&g, k)?;
            let q = t.q();
            let rows: Vec<Vec<String>> = (0..q)
                .map(|x| (0..q).map(|y| t.weight(&[x, y]).to_string()).collect())
                .collect();
            return Ok(Outcome {
                status: "value",
                summary: format!("tilde f^({k}) on {q} elements"),
                payload: json!({ "construction": "tilde", "k": k, "table": rows }),
            });
        }
        GadgetRequest::Pad { input, k, r } => {
            let h = load_edges(&input)?;
            pad_to_arity(&h, k.unwrap_or(h.arity()), r)?
        }
        GadgetRequest::Stretch { input } => two_stretch(&load_csp(&input)?)?,
        GadgetRequest::Power { input, j } => vertex_power(&load_edges(&input)?, j)?,
        GadgetRequest::Separate { input, p } => component_separator(&load_edges(&input)?, p)?,
        GadgetRequest::EqElim { input, p } => equality_eliminator(&load_csp(&input)?, p)?,
    };
    let mut payload = serde_json::to_value(&result)?;
    let text = result.instance.to_text();
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let sidecar = sidecar_path(path);
            let mut doc = serde_json::to_string_pretty(&payload)?;
            doc.push('\n');
            fs::write(&sidecar, doc).map_err(|e| Failure::Input(format!("{}: {e}", sidecar.display())))?;
            payload["out"] = Value::String(path.display().to_string());
            payload["sidecar"] = Value::String(sidecar.display().to_string());
        }
        None => payload["hypergraph"] = Value::String(text),
    }
    Ok(Outcome {
        status: "value",
        summary: format!(
            "{}: {} vertices ({} fresh), {} edges",
            result.construction, result.vertices, result.fresh, result.edges
        ),
        payload,
    })
}

/// `out.hg` gets `out.hg.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_appends_json() {
        assert_eq!(sidecar_path(Path::new("out/g.hg")), PathBuf::from("out/g.hg.json"));
        assert_eq!(sidecar_path(Path::new("plain")), PathBuf::from("plain.json"));
    }
}
