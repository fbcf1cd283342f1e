//! Parsing of flag values.

use std::path::Path;

use qcolour_core::partitions::{build_family, enumerate_partitions, monochromatic_chain, Family};
use qcolour_core::{Partition, PatternSet};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// The flag value, or the contents of the file when it starts with `@`.
pub fn resolve(value: &str) -> Result<String> {
    match value.strip_prefix('@') {
        Some(path) => {
            let path = Path::new(path);
            std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
        }
        None => Ok(value.to_string()),
    }
}

pub fn partition(value: &str) -> Result<Partition> {
    let parts: Vec<u32> = serde_json::from_str(&resolve(value)?)
        .map_err(|e| CliError::input(format!("partition {value:?}: {e}")))?;
    Ok(Partition::new(parts)?)
}

/// A JSON list of partitions or a family name. `r` is required for names and
/// for the empty list, and is checked against the members otherwise.
pub fn patterns(value: &str, r: Option<u32>) -> Result<PatternSet> {
    let text = resolve(value)?;
    let text = text.trim();
    if text.starts_with('[') {
        let parts: Vec<Vec<u32>> =
            serde_json::from_str(text).map_err(|e| CliError::input(format!("pattern set {value:?}: {e}")))?;
        let members = parts.into_iter().map(Partition::new).collect::<qcolour_core::Result<Vec<_>>>()?;
        let r = match (r, members.first()) {
            (Some(r), _) => r,
            (None, Some(p)) => p.r(),
            (None, None) => return Err(CliError::input("an empty pattern set needs --r")),
        };
        return Ok(PatternSet::new(r, members)?);
    }
    let r = r.ok_or_else(|| CliError::input(format!("family {text:?} needs r")))?;
    family(text, r)
}

fn family(text: &str, r: u32) -> Result<PatternSet> {
    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (text, None),
    };
    let nums = |want: usize| -> Result<Vec<u32>> {
        let list: Vec<u32> = params
            .unwrap_or("")
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| CliError::input(format!("family {text:?} needs {want} integer parameters")))?;
        if list.len() != want {
            return Err(CliError::input(format!("family {text:?} needs {want} integer parameters")));
        }
        Ok(list)
    };
    let no_params = || match params {
        Some(_) => Err(CliError::input(format!("family {name:?} takes no parameters"))),
        None => Ok(()),
    };
    let f = match name {
        "all" => {
            no_params()?;
            return Ok(enumerate_partitions(r)?);
        }
        "ex-chain" => {
            no_params()?;
            return Ok(monochromatic_chain(r));
        }
        "classical-graph" => Family::ClassicalGraph,
        "classical-hypergraph" => Family::ClassicalHypergraph,
        "not-rainbow" => Family::NotRainbow,
        "nmnr" => Family::Nmnr,
        "conflict-free" => Family::ConflictFree,
        "alpha-beta" => {
            let p = nums(2)?;
            Family::AlphaBeta { alpha: p[0], beta: p[1] }
        }
        "stably-bounded" => {
            let p = nums(4)?;
            Family::StablyBounded {
                s: p[0],
                t: p[1],
                a: p[2],
                b: p[3],
            }
        }
        _ => return Err(CliError::input(format!("unknown pattern family {name:?}"))),
    };
    if !matches!(f, Family::AlphaBeta { .. } | Family::StablyBounded { .. }) {
        no_params()?;
    }
    Ok(build_family(f, r)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaParams {
    pub n: u32,
    pub r: u32,
    pub q: u32,
}

/// `"n=3,r=4,q=3"` or `{"n":3,"r":4,"q":3}`.
pub fn sigma_params(value: &str) -> Result<SigmaParams> {
    let text = resolve(value)?;
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| CliError::input(format!("sigma parameters: {e}")));
    }
    let (mut n, mut r, mut q) = (None, None, None);
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("expected key=value in sigma parameters, got {item:?}")))?;
        let val: u32 = val
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("{key} must be a non-negative integer")))?;
        let slot = match key.trim() {
            "n" => &mut n,
            "r" => &mut r,
            "q" => &mut q,
            other => return Err(CliError::input(format!("unknown sigma parameter {other:?}"))),
        };
        if slot.replace(val).is_some() {
            return Err(CliError::input(format!("sigma parameter {key} given twice")));
        }
    }
    match (n, r, q) {
        (Some(n), Some(r), Some(q)) => Ok(SigmaParams { n, r, q }),
        _ => Err(CliError::input("sigma parameters need n, r and q")),
    }
}

pub fn vertex_list(value: &str) -> Result<Vec<u32>> {
    serde_json::from_str(&resolve(value)?).map_err(|e| CliError::input(format!("vertex list {value:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_params_forms() {
        let want = SigmaParams { n: 3, r: 4, q: 3 };
        assert_eq!(sigma_params("n=3,r=4,q=3").unwrap(), want);
        assert_eq!(sigma_params(" q=3, n=3 ,r=4").unwrap(), want);
        assert_eq!(sigma_params(r#"{"n":3,"r":4,"q":3}"#).unwrap(), want);
        assert!(sigma_params("n=3,r=4").is_err());
        assert!(sigma_params("n=3,r=4,q=3,n=2").is_err());
        assert!(sigma_params("n=3,r=4,z=3").is_err());
    }

    #[test]
    fn pattern_forms() {
        let nmnr = patterns("nmnr", Some(4)).unwrap();
        assert_eq!(nmnr, patterns("[[3,1],[2,2],[2,1,1]]", None).unwrap());
        assert_eq!(patterns("stably-bounded:2,3,2,3", Some(4)).unwrap(), nmnr);
        assert!(patterns("nmnr", None).is_err());
        assert!(patterns("[[3,1],[2]]", None).is_err());
        assert!(patterns("[]", None).is_err());
        assert!(patterns("[]", Some(3)).unwrap().is_empty());
        assert!(patterns("alpha-beta:1", Some(3)).is_err());
        assert!(patterns("nmnr:1", Some(3)).is_err());
        assert!(patterns("[[3,0]]", None).is_err());
    }
}
