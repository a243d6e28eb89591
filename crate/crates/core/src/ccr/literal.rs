//! Element literals such as `(1+2i)*e3.e1 + (0+1i)*1 - e2`, with 1-based letters.

use num::One;

use crate::numeric::{parse_cq, Cq};

use super::{CcrAlgebra, CcrElement, CcrError, Word};

/// Splits at top-level `+`/`-`, keeping each sign with its term.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut negative) = (0i32, 0usize, false);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let piece = s[start..i].trim();
                if piece.is_empty() {
                    // A unary sign.
                    negative ^= c == '-';
                } else {
                    out.push((negative, piece));
                    negative = c == '-';
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((negative, s[start..].trim()));
    out
}

fn parse_word(s: &str) -> Result<Word, CcrError> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|letter| {
            letter
                .trim()
                .strip_prefix('e')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(|k| k - 1)
                .ok_or_else(|| CcrError::Parse(format!("bad letter {letter:?}")))
        })
        .collect()
}

impl CcrAlgebra {
    pub fn parse(&self, s: &str) -> Result<CcrElement, CcrError> {
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let mut raw: Vec<(Word, Cq)> = Vec::new();
        for (negative, term) in split_terms(s) {
            if term.is_empty() {
                return Err(CcrError::Parse(format!("empty term in {s:?}")));
            }
            let (coeff, word) = match term.rfind('*') {
                Some(i) => {
                    let c = parse_cq(&term[..i]).map_err(|e| CcrError::Parse(e.to_string()))?;
                    (c, parse_word(term[i + 1..].trim())?)
                }
                None if term.starts_with('e') => (Cq::one(), parse_word(term)?),
                None => (parse_cq(term).map_err(|e| CcrError::Parse(e.to_string()))?, Vec::new()),
            };
            raw.push((word, if negative { -coeff } else { coeff }));
        }
        self.normal_form(raw.iter().map(|(w, c)| (w.as_slice(), c.clone())))
    }
}
