//! The universal Coxeter group on `a`, `b`, `c`: three involutions and no
//! other relations.
//!
//! Reduced words are exactly the words with no repeated adjacent letter,
//! and reflections are the odd palindromes. Exact reflection length uses
//! Dyer's theorem: for a reduced word `s1 ⋯ sm`, `ℓ_R(w)` is the fewest
//! letters whose deletion leaves the identity. Deleting positions
//! `j1 < ⋯ < jr` writes `w` as the product of the inversions
//! `t_{jr} ⋯ t_{j1}`, where `t_j = s1 ⋯ s_{j-1} s_j s_{j-1} ⋯ s1`. So the
//! search runs over subsets of the `ℓ_S(w)` inversions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Longest reduced word accepted by the exact search.
pub const UC_ENVELOPE: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UCWord(pub Vec<u8>);

impl FromStr for UCWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            match ch {
                'a' | 'b' | 'c' => out.push(ch as u8 - b'a'),
                'e' if s.len() == 1 => {}
                _ => {
                    return Err(Error::Parse {
                        position,
                        message: format!("expected a, b or c, found '{ch}'"),
                    })
                }
            }
        }
        Ok(UCWord(out))
    }
}

impl fmt::Display for UCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &x in &self.0 {
            write!(f, "{}", (b'a' + x) as char)?;
        }
        Ok(())
    }
}

impl Serialize for UCWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl UCWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> UCWord {
        UCWord(self.0.iter().rev().copied().collect())
    }

    /// Reduced product.
    pub fn mul(&self, other: &UCWord) -> UCWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        reduce(&UCWord(out))
    }

    /// `(abc)^n`.
    pub fn abc_power(n: usize) -> UCWord {
        UCWord([0, 1, 2].repeat(n))
    }
}

/// Cancels adjacent equal letters until none remain.
pub fn reduce(w: &UCWord) -> UCWord {
    let mut stack: Vec<u8> = Vec::with_capacity(w.len());
    for &x in &w.0 {
        if stack.last() == Some(&x) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    UCWord(stack)
}

pub fn is_reduced(w: &UCWord) -> bool {
    w.0.windows(2).all(|p| p[0] != p[1])
}

/// Standard length.
pub fn standard_length(w: &UCWord) -> usize {
    reduce(w).len()
}

/// Reduced odd palindromes are exactly the conjugates `u s u^{-1}`.
pub fn is_uc_reflection(w: &UCWord) -> bool {
    let r = reduce(w);
    r.len() % 2 == 1 && r.0.iter().eq(r.0.iter().rev())
}

/// Left inversions `t_j` of the reduced form, by position.
pub fn inversions(w: &UCWord) -> Vec<UCWord> {
    let r = reduce(w);
    (0..r.len())
        .map(|j| {
            let mut t = r.0[..=j].to_vec();
            t.extend(r.0[..j].iter().rev());
            UCWord(t)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UCReport {
    pub word: UCWord,
    pub reduced: UCWord,
    pub ls: usize,
    pub lr: usize,
    /// Reflections, leftmost first, whose product is the word.
    pub factorization: Vec<UCWord>,
}

/// Exact reflection length via the inversion set.
pub fn uc_reflection_length(w: &UCWord) -> Result<UCReport> {
    let reduced = reduce(w);
    let m = reduced.len();
    if m > UC_ENVELOPE {
        return Err(Error::Envelope(format!(
            "reduced length {m} exceeds {UC_ENVELOPE}"
        )));
    }
    let inv = inversions(&reduced);
    // Sanity gate: each t_j shortens w, and there are ℓ_S of them.
    for t in &inv {
        if !is_uc_reflection(t) || standard_length(&t.mul(&reduced)) >= m {
            return Err(Error::Internal(format!("{t} is not an inversion of {reduced}")));
        }
    }
    let mut chosen = Vec::new();
    for r in (m % 2..=m).step_by(2) {
        if let Some(subset) = choose(&inv, &reduced, r, 0, &mut chosen) {
            let factorization = subset.iter().rev().map(|&j| inv[j].clone()).collect();
            return Ok(UCReport {
                word: w.clone(),
                reduced,
                ls: m,
                lr: r,
                factorization,
            });
        }
    }
    Err(Error::Internal("deleting every letter must reach the identity".into()))
}

/// Increasing index subsets of size `r`; a subset `j1 < ⋯ < jr` works when
/// `t_{jr} ⋯ t_{j1} = w`.
fn choose(
    inv: &[UCWord],
    w: &UCWord,
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == r {
        let product = chosen
            .iter()
            .rev()
            .fold(UCWord::default(), |acc, &j| acc.mul(&inv[j]));
        return (product == *w).then(|| chosen.clone());
    }
    for j in start..inv.len() {
        if inv.len() - j < r - chosen.len() {
            break;
        }
        chosen.push(j);
        if let Some(found) = choose(inv, w, r, j + 1, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Every reflection whose reduced word has length at most `max_word`.
pub fn reflections_up_to(max_word: usize) -> Vec<UCWord> {
    let mut out = Vec::new();
    let mut prefixes = vec![UCWord::default()];
    for _ in 0..=max_word.saturating_sub(1) / 2 {
        let mut next = Vec::new();
        for u in &prefixes {
            for s in 0..3u8 {
                if u.0.last() == Some(&s) {
                    continue;
                }
                let mut t = u.0.clone();
                t.push(s);
                t.extend(u.0.iter().rev());
                out.push(UCWord(t));
                let mut v = u.0.clone();
                v.push(s);
                next.push(UCWord(v));
            }
        }
        prefixes = next;
    }
    out
}

/// Cross-check without Dyer: shortest product of reflections of word length
/// at most `2ℓ_S(w) - 1`, found by meeting in the middle. `None` if no
/// product of at most `max_len` of them works.
pub fn uc_reflection_length_unrestricted(w: &UCWord, max_len: usize) -> Option<usize> {
    let w = reduce(w);
    let alphabet = reflections_up_to((2 * w.len()).saturating_sub(1).max(1));
    let radius = max_len.div_ceil(2);
    let mut ball: HashMap<UCWord, usize> = HashMap::from([(UCWord::default(), 0)]);
    let mut frontier = vec![UCWord::default()];
    for h in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for t in &alphabet {
                let y = x.mul(t);
                if !ball.contains_key(&y) {
                    ball.insert(y.clone(), h);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    // w = y z^{-1} with y = w z.
    ball.iter()
        .filter_map(|(z, dz)| ball.get(&w.mul(z)).map(|dy| dy + dz))
        .filter(|&d| d <= max_len)
        .min()
}
