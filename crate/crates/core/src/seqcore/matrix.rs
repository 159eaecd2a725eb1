use crate::{Error, Result};

/// NCBI PAM120 in the distributed plain-text layout.
pub const PAM120_TEXT: &str = include_str!("../../data/PAM120");

const NO_INDEX: u8 = u8::MAX;

/// Square, symmetric integer substitution table over a symbol alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityMatrix {
    alphabet: Vec<u8>,
    scores: Vec<i32>,
    index: [u8; 256],
}

impl SimilarityMatrix {
    /// Builds a matrix from an alphabet and row-major scores, checking shape
    /// and symmetry.
    pub fn from_rows(alphabet: &[u8], rows: &[Vec<i32>]) -> Result<Self> {
        let k = alphabet.len();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::MatrixParse {
                line: 0,
                message: format!("table is not {k}x{k}"),
            });
        }
        let index = build_index(alphabet).map_err(|message| Error::MatrixParse { line: 0, message })?;
        let scores: Vec<i32> = rows.iter().flatten().copied().collect();
        let m = Self {
            alphabet: alphabet.to_vec(),
            scores,
            index,
        };
        m.check_symmetric(|_| 0)?;
        Ok(m)
    }

    pub fn pam120() -> Self {
        parse_similarity_matrix(PAM120_TEXT).expect("bundled PAM120 is well formed")
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        match self.index[symbol as usize] {
            NO_INDEX => None,
            i => Some(i as usize),
        }
    }

    /// Score by alphabet position.
    pub fn at(&self, i: usize, j: usize) -> i32 {
        self.scores[i * self.alphabet.len() + j]
    }

    pub fn score(&self, a: u8, b: u8) -> Option<i32> {
        Some(self.at(self.index_of(a)?, self.index_of(b)?))
    }

    fn check_symmetric(&self, line_of_row: impl Fn(usize) -> usize) -> Result<()> {
        let k = self.alphabet.len();
        for i in 0..k {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return Err(Error::MatrixParse {
                        line: line_of_row(i),
                        message: format!(
                            "asymmetric entries S({a},{b})={} but S({b},{a})={}",
                            self.at(i, j),
                            self.at(j, i),
                            a = self.alphabet[i] as char,
                            b = self.alphabet[j] as char,
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

fn build_index(alphabet: &[u8]) -> std::result::Result<[u8; 256], String> {
    if alphabet.len() >= NO_INDEX as usize {
        return Err("alphabet too large".into());
    }
    let mut index = [NO_INDEX; 256];
    for (i, &a) in alphabet.iter().enumerate() {
        if index[a as usize] != NO_INDEX {
            return Err(format!("duplicate symbol '{}' in header", a as char));
        }
        index[a as usize] = i as u8;
    }
    Ok(index)
}

/// Parses the NCBI matrix layout: `#` comments, one header row of symbols,
/// then one labelled row of integers per symbol. Rows may appear in any order.
pub fn parse_similarity_matrix(text: &str) -> Result<SimilarityMatrix> {
    let err = |line: usize, message: String| Error::MatrixParse { line, message };

    let mut alphabet: Option<Vec<u8>> = None;
    let mut index = [NO_INDEX; 256];
    let mut rows: Vec<Option<(usize, Vec<i32>)>> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let Some(alpha) = &alphabet else {
            let mut symbols = Vec::new();
            for tok in tokens {
                let &[b] = tok.as_bytes() else {
                    return Err(err(line_no, format!("header token '{tok}' is not a single symbol")));
                };
                symbols.push(b.to_ascii_uppercase());
            }
            index = build_index(&symbols).map_err(|m| err(line_no, m))?;
            rows = vec![None; symbols.len()];
            alphabet = Some(symbols);
            continue;
        };

        let label = tokens.next().expect("non-empty line has a token");
        let row_idx = match label.as_bytes() {
            &[b] => match index[b.to_ascii_uppercase() as usize] {
                NO_INDEX => None,
                i => Some(i as usize),
            },
            _ => None,
        }
        .ok_or_else(|| err(line_no, format!("unknown row symbol '{label}'")))?;
        if rows[row_idx].is_some() {
            return Err(err(line_no, format!("duplicate row for symbol '{label}'")));
        }
        let values = tokens
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| err(line_no, format!("malformed integer '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != alpha.len() {
            return Err(err(
                line_no,
                format!(
                    "non-square table: row '{label}' has {} entries, header has {}",
                    values.len(),
                    alpha.len()
                ),
            ));
        }
        rows[row_idx] = Some((line_no, values));
    }

    let alphabet = alphabet.ok_or_else(|| err(0, "no header row".into()))?;
    if let Some(missing) = rows.iter().position(Option::is_none) {
        return Err(err(
            text.lines().count(),
            format!(
                "non-square table: no row for symbol '{}'",
                alphabet[missing] as char
            ),
        ));
    }
    let rows: Vec<(usize, Vec<i32>)> = rows.into_iter().map(Option::unwrap).collect();
    let line_of_row: Vec<usize> = rows.iter().map(|(l, _)| *l).collect();
    let matrix = SimilarityMatrix {
        scores: rows.into_iter().flat_map(|(_, r)| r).collect(),
        alphabet,
        index,
    };
    matrix.check_symmetric(|i| line_of_row[i])?;
    Ok(matrix)
}
