use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Node identifier such as `"3'"`, `"7^(1)''"` or `"12"`.
///
/// Ordering is numeric-aware: maximal digit runs compare as integers, so
/// `"2" < "10"`, and a label that is a proper prefix of another sorts first,
/// so `"3" < "3'"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Integer value for purely numeric labels (used by the cyclic categories).
    pub fn as_int(&self) -> Option<i64> {
        self.0.parse().ok()
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

enum Chunk<'a> {
    Num(&'a str),
    Text(char),
}

fn chunks(s: &str) -> Vec<Chunk<'_>> {
    let mut out = Vec::new();
    let mut iter = s.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if c.is_ascii_digit() {
            let mut end = i + 1;
            while let Some(&(j, d)) = iter.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                iter.next();
            }
            out.push(Chunk::Num(&s[i..end]));
        } else {
            out.push(Chunk::Text(c));
        }
    }
    out
}

fn cmp_digits(a: &str, b: &str) -> Ordering {
    let a = a.trim_start_matches('0');
    let b = b.trim_start_matches('0');
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (chunks(&self.0), chunks(&other.0));
        for (x, y) in a.iter().zip(&b) {
            let ord = match (x, y) {
                (Chunk::Num(p), Chunk::Num(q)) => cmp_digits(p, q),
                (Chunk::Num(_), Chunk::Text(_)) => Ordering::Less,
                (Chunk::Text(_), Chunk::Num(_)) => Ordering::Greater,
                (Chunk::Text(p), Chunk::Text(q)) => p.cmp(q),
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        a.len().cmp(&b.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_aware_order() {
        let mut v: Vec<Label> = ["10", "3'", "2", "3", "4'", "0", "4", "1"].map(Label::from).to_vec();
        v.sort();
        let s: Vec<&str> = v.iter().map(Label::as_str).collect();
        assert_eq!(s, ["0", "1", "2", "3", "3'", "4", "4'", "10"]);
    }

    #[test]
    fn decorated_labels() {
        assert!(Label::from("7^(1)") < Label::from("7^(1)'"));
        assert!(Label::from("7^(1)''") < Label::from("7^(2)"));
        assert!(Label::from("9") < Label::from("9'"));
        assert!(Label::from("I") < Label::from("X"));
    }
}
