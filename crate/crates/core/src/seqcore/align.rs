use super::{AlignmentCostModel, Normalization, Sequence};
use crate::{Error, Result};

fn encode(s: &Sequence, cm: &AlignmentCostModel) -> Result<Vec<u8>> {
    s.residues()
        .iter()
        .enumerate()
        .map(|(position, &symbol)| {
            cm.index_of(symbol).map(|i| i as u8).ok_or_else(|| Error::UnknownSymbol {
                id: s.id().to_string(),
                position,
                symbol: symbol as char,
            })
        })
        .collect()
}

/// Global alignment cost of `s` against `t`.
///
/// Substitutions cost `c(a, b)`, insertions and deletions cost `g` each.
/// Under [`Normalization::ByMaxLength`] the total is divided by the longer
/// length (0 when both are empty).
pub fn levenshtein(s: &Sequence, t: &Sequence, cm: &AlignmentCostModel) -> Result<f64> {
    let a = encode(s, cm)?;
    let b = encode(t, cm)?;
    Ok(levenshtein_encoded(&a, &b, cm))
}

/// DP over alphabet indices with two rolling rows sized by the shorter input.
pub(crate) fn levenshtein_encoded(a: &[u8], b: &[u8], cm: &AlignmentCostModel) -> f64 {
    let (outer, inner) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let g = cm.gap_cost();

    let mut prev: Vec<f64> = (0..=inner.len()).map(|j| j as f64 * g).collect();
    let mut cur = vec![0.0; inner.len() + 1];
    for (i, &x) in outer.iter().enumerate() {
        cur[0] = (i + 1) as f64 * g;
        let row = cm.sub_row(x as usize);
        for (j, &y) in inner.iter().enumerate() {
            let diag = prev[j] + row[y as usize];
            let up = prev[j + 1] + g;
            let left = cur[j] + g;
            cur[j + 1] = diag.min(up).min(left);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let raw = prev[inner.len()];
    match cm.normalization() {
        Normalization::Raw => raw,
        Normalization::ByMaxLength if outer.is_empty() => 0.0,
        Normalization::ByMaxLength => raw / outer.len() as f64,
    }
}
