use std::path::Path;

use cluster_lab::compat::VariableRef;
use cluster_lab::matrix::{ExchangeMatrix, IntMat};
use cluster_lab::parse::{parse_int_vector, parse_matrix, parse_variable_ref, parse_word};
use cluster_lab::pattern::{CoefficientSpec, MutationWord};

/// Reads `source` as a file when one exists at that path, otherwise parses
/// it inline.
pub fn int_matrix(source: &str, what: &str) -> Result<IntMat, String> {
    let text = if Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| format!("{what}: cannot read {source}: {e}"))?
    } else {
        source.to_string()
    };
    parse_matrix(&text).map_err(|e| format!("{what}: {e}"))
}

pub fn exchange_matrix(source: &str) -> Result<ExchangeMatrix, String> {
    ExchangeMatrix::new(int_matrix(source, "--matrix")?).map_err(|e| format!("--matrix: {e}"))
}

pub fn word(s: &str, rank: usize) -> Result<MutationWord, String> {
    let w = parse_word(s).map_err(|e| format!("--word: {e}"))?;
    w.check_rank(rank).map_err(|e| format!("--word: {e}"))?;
    Ok(w)
}

pub fn variable(s: &str, flag: &str, rank: usize) -> Result<VariableRef, String> {
    let r = parse_variable_ref(s).map_err(|e| format!("{flag}: {e}"))?;
    r.check_rank(rank).map_err(|e| format!("{flag}: {e}"))?;
    Ok(r)
}

pub fn vector(s: &str, flag: &str) -> Result<Vec<i64>, String> {
    parse_int_vector(s).map_err(|e| format!("{flag}: {e}"))
}

pub fn coefficients(s: &str) -> Result<CoefficientSpec, String> {
    match s.trim() {
        "principal" => Ok(CoefficientSpec::Principal),
        "trivial" => Ok(CoefficientSpec::Trivial),
        other => Ok(CoefficientSpec::Tropical(int_matrix(other, "--coefficients")?)),
    }
}

/// 1-based index list such as "1,2" to 0-based indices.
pub fn index_set(s: &str, flag: &str, rank: usize) -> Result<Vec<usize>, String> {
    let v = vector(s, flag)?;
    v.iter()
        .map(|&i| {
            if i >= 1 && (i as usize) <= rank {
                Ok(i as usize - 1)
            } else {
                Err(format!("{flag}: index {i} is outside 1..={rank}"))
            }
        })
        .collect()
}
