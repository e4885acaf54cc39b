use std::fmt;

use serde::{Deserialize, Serialize};

/// A word in the free group on indexed generators; each letter is
/// `(generator, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        debug_assert!(letters.iter().all(|&(_, e)| e == 1 || e == -1));
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        Self {
            letters: vec![(g, 1)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Product `self · other`, freely reduced at the seam.
    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Self { letters: out }
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut out = Vec::new();
        for w in words {
            for &l in &w.letters {
                push_reduced(&mut out, l);
            }
        }
        Self { letters: out }
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.letters.iter().any(|&(h, _)| h == g)
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|&&(h, _)| h == g).count()
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Vec::new();
        for &(g, e) in &self.letters {
            let img = if e > 0 {
                images[g].clone()
            } else {
                images[g].inverse()
            };
            for l in img.letters {
                push_reduced(&mut out, l);
            }
        }
        Self { letters: out }
    }

    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for &(g, e) in &self.letters {
            v[g] += i64::from(e);
        }
        v
    }

    /// Cyclic conjugate starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Self { letters }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses space-separated `name` / `name^-1` tokens.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, String> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok.strip_suffix("^1").unwrap_or(tok), 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| format!("unknown generator `{name}`"))?;
            letters.push((g, e));
        }
        Ok(Self { letters })
    }
}

fn push_reduced(out: &mut Vec<(usize, i8)>, l: (usize, i8)) {
    if out.last() == Some(&(l.0, -l.1)) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[g])?;
            if e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in &w.letters {
        push_reduced(&mut out, l);
    }
    Word { letters: out }
}

/// Free reduction followed by cancelling matching ends.
pub fn cyclic_reduce(w: &Word) -> Word {
    let r = free_reduce(w);
    let (mut i, mut j) = (0, r.len());
    while j - i >= 2
        && r.letters[i].0 == r.letters[j - 1].0
        && r.letters[i].1 == -r.letters[j - 1].1
    {
        i += 1;
        j -= 1;
    }
    Word {
        letters: r.letters[i..j].to_vec(),
    }
}

/// Whether some cyclic rotation of the reduced word (or of its inverse) reads
/// `u v u⁻¹ v⁻¹` with `u`, `v` non-empty.
pub fn is_commutator_relator(w: &Word) -> bool {
    let r = free_reduce(w);
    let len = r.len();
    if len < 4 || !len.is_multiple_of(2) {
        return false;
    }
    for cand in [r.clone(), r.inverse()] {
        for k in 0..len {
            let rot = cand.rotate(k);
            let l = &rot.letters;
            for i in 1..len / 2 {
                let j = len / 2 - i;
                let (u, rest) = l.split_at(i);
                let (v, rest) = rest.split_at(j);
                let (ui, vi) = rest.split_at(i);
                let inv =
                    |s: &[(usize, i8)]| s.iter().rev().map(|&(g, e)| (g, -e)).collect::<Vec<_>>();
                if ui == inv(u).as_slice() && vi == inv(v).as_slice() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;

    fn w(letters: &[(usize, i8)]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&w(&[(A, 1), (A, -1), (B, 1)])), w(&[(B, 1)]));
        assert_eq!(free_reduce(&Word::empty()), Word::empty());
        assert_eq!(
            free_reduce(&w(&[(A, 1), (B, 1), (B, -1), (A, -1)])),
            Word::empty()
        );
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(cyclic_reduce(&w(&[(A, 1), (B, 1), (A, -1)])), w(&[(B, 1)]));
        assert_eq!(cyclic_reduce(&w(&[(A, 1), (A, 1)])), w(&[(A, 1), (A, 1)]));
    }

    #[test]
    fn commutator_shapes() {
        assert!(is_commutator_relator(&w(&[
            (A, 1),
            (B, 1),
            (A, -1),
            (B, -1)
        ])));
        assert!(!is_commutator_relator(&w(&[(A, 1), (A, 1)])));
        assert!(is_commutator_relator(&w(&[
            (B, -1),
            (A, 1),
            (B, 1),
            (A, -1)
        ])));
        // [ab, c]
        assert!(is_commutator_relator(&w(&[
            (0, 1),
            (1, 1),
            (2, 1),
            (1, -1),
            (0, -1),
            (2, -1)
        ])));
        assert!(!is_commutator_relator(&w(&[
            (A, 1),
            (B, 1),
            (A, 1),
            (B, -1)
        ])));
    }

    #[test]
    fn parse_and_print() {
        let names = vec!["a".to_string(), "b".to_string()];
        let word = Word::parse("a b^-1 a^-1", &names).unwrap();
        assert_eq!(word.display(&names).to_string(), "a b^-1 a^-1");
        assert_eq!(Word::empty().display(&names).to_string(), "1");
        assert!(Word::parse("c", &names).is_err());
    }

    #[test]
    fn substitution() {
        let images = vec![w(&[(B, 1), (B, 1)]), w(&[(A, 1)])];
        assert_eq!(
            w(&[(A, -1), (B, 1)]).substitute(&images),
            w(&[(B, -1), (B, -1), (A, 1)])
        );
    }
}
