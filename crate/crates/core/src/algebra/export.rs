use serde::Serialize;

use super::Algebra;
use crate::exact::format_scalar;

/// Sparse JSON form of the structure constants. Entries are
/// `[i, j, k, "p/q"]` with 0-based basis indices, `i ≤ j`, sorted by
/// `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraExport {
    pub kind: String,
    pub n: usize,
    pub beta: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
}

pub fn export_json(a: &Algebra) -> AlgebraExport {
    let mut structure = Vec::new();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            for (k, c) in a.sparse[i * a.dim() + j].iter() {
                structure.push((i, j, *k, format_scalar(c)));
            }
        }
    }
    AlgebraExport {
        kind: a.kind().to_string(),
        n: a.params().n,
        beta: format_scalar(&a.params().beta),
        dim: a.dim(),
        labels: a.labels().to_vec(),
        structure,
    }
}
