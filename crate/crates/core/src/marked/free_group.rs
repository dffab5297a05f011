//! Reduced words in the free group on `a1, a2, ...`.
//!
//! A letter is a nonzero integer: `k` is `a_k` and `-k` its inverse, written
//! `A_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("bad word {0:?}, expected letters like a1 or A2")]
pub struct WordError(pub String);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: u32) -> Self {
        Word(vec![k as i32])
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            assert!(x != 0, "zero is not a letter");
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index appearing.
    pub fn rank_used(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, m: i64) -> Word {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..m.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `c⁻¹ self c`.
    pub fn conjugate(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    /// Splits as `p⁻¹ u p` with `u` cyclically reduced; returns `(p, u)`.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let w = &self.0;
        let mut i = 0;
        while w.len() >= 2 * (i + 1) && w[i] == -w[w.len() - 1 - i] {
            i += 1;
        }
        let p = Word(w[w.len() - i..].to_vec());
        let u = Word(w[i..w.len() - i].to_vec());
        (p, u)
    }

    /// The shortest `r` with `self = r^k`, for a cyclically reduced word.
    pub fn primitive_root(&self) -> Word {
        let n = self.0.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return Word(self.0[..d].to_vec());
            }
        }
        self.clone()
    }

    /// Replaces each `a_k` by `images[k - 1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &x in &self.0 {
            let img = &images[x.unsigned_abs() as usize - 1];
            out = if x > 0 { out.mul(img) } else { out.mul(&img.inverse()) };
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if x > 0 {
                write!(f, "a{x}")?;
            } else {
                write!(f, "A{}", -x)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in t.split_whitespace() {
            let bad = || WordError(s.to_string());
            let (sign, rest) = match tok.as_bytes()[0] {
                b'a' => (1, &tok[1..]),
                b'A' => (-1, &tok[1..]),
                _ => return Err(bad()),
            };
            let k: i32 = rest.parse().map_err(|_| bad())?;
            if k <= 0 {
                return Err(bad());
            }
            letters.push(sign * k);
        }
        Ok(Word::new(letters))
    }
}

/// Some `c` with `c⁻¹ u_i c = v_i` for every pair, if one exists.
pub fn simultaneous_conjugator(pairs: &[(Word, Word)]) -> Option<Word> {
    let Some(first) = pairs.iter().position(|(u, _)| !u.is_identity()) else {
        return pairs.iter().all(|(_, v)| v.is_identity()).then(Word::identity);
    };
    let (u, v) = &pairs[first];
    let (p, cu) = u.cyclic_reduction();
    let (q, cv) = v.cyclic_reduction();
    if cu.len() != cv.len() {
        return None;
    }
    // cv must be a rotation x y -> y x of cu; then x conjugates cu to cv.
    let n = cu.len();
    let shift = (0..n).find(|&i| (0..n).all(|j| cu.0[(i + j) % n] == cv.0[j]))?;
    let x = Word(cu.0[..shift].to_vec());
    let root = cu.primitive_root();
    let bound: i64 = pairs.iter().map(|(a, b)| (a.len() + b.len()) as i64).sum::<i64>() + 2;
    let candidate = |m: i64| p.inverse().mul(&root.pow(m)).mul(&x).mul(&q);
    let mut m = 0i64;
    loop {
        for c in [candidate(m), candidate(-m)] {
            if pairs.iter().all(|(a, b)| a.conjugate(&c) == *b) {
                return Some(c);
            }
        }
        m += 1;
        if m > bound {
            return None;
        }
    }
}

/// Expresses each generator `a_j` (for `j = 1..=rank`) as a word in the
/// letters `x_i` standing for `words[i - 1]`, or `None` when the words are
/// not a basis of the free group of that rank.
///
/// Works by Stallings folding of the rose spelled by `words`. Each edge also
/// carries a formal word in the `x_i`; folds adjust these by a change of
/// gauge at a non-base vertex, so closed paths at the base keep their value.
pub fn basis_inverse(words: &[Word], rank: u32) -> Option<Vec<Word>> {
    if words.len() != rank as usize {
        return None;
    }
    let mut edges: Vec<Option<FoldEdge>> = Vec::new();
    let mut num_vertices = 1usize;
    for (i, w) in words.iter().enumerate() {
        if w.is_identity() || w.rank_used() > rank {
            return None;
        }
        let mut at = 0usize;
        for (j, &x) in w.letters().iter().enumerate() {
            let to = if j + 1 == w.len() {
                0
            } else {
                num_vertices += 1;
                num_vertices - 1
            };
            let formal = if j == 0 { Word::generator(i as u32 + 1) } else { Word::identity() };
            edges.push(Some(FoldEdge {
                src: at,
                dst: to,
                letter: x,
                formal,
            }));
            at = to;
        }
    }
    while let Some(((e1, fwd1), (e2, fwd2))) = find_fold(&edges) {
        let d1 = edges[e1].as_ref().unwrap().view(fwd1);
        let d2 = edges[e2].as_ref().unwrap().view(fwd2);
        let (u1, u2) = (d1.0, d2.0);
        if u1 == u2 {
            // two distinct edges with equal label between the same vertices
            return None;
        }
        let (keep, gone, c) = if u2 != 0 {
            (u1, u2, d2.1.inverse().mul(&d1.1))
        } else {
            (u2, u1, d1.1.inverse().mul(&d2.1))
        };
        for e in edges.iter_mut().flatten() {
            let mut f = e.formal.clone();
            if e.src == gone {
                f = c.inverse().mul(&f);
            }
            if e.dst == gone {
                f = f.mul(&c);
            }
            e.formal = f;
        }
        for e in edges.iter_mut().flatten() {
            if e.src == gone {
                e.src = keep;
            }
            if e.dst == gone {
                e.dst = keep;
            }
        }
        edges[e2] = None;
    }
    let live: Vec<&FoldEdge> = edges.iter().flatten().collect();
    if live.len() != rank as usize || live.iter().any(|e| e.src != 0 || e.dst != 0) {
        return None;
    }
    let mut out: BTreeMap<u32, Word> = BTreeMap::new();
    for e in live {
        let (k, f) = if e.letter > 0 {
            (e.letter as u32, e.formal.clone())
        } else {
            ((-e.letter) as u32, e.formal.inverse())
        };
        out.insert(k, f);
    }
    (out.len() == rank as usize).then(|| out.into_values().collect())
}

/// True iff `words` is a basis of the free group of rank `words.len()`.
pub fn is_basis(words: &[Word]) -> bool {
    basis_inverse(words, words.len() as u32).is_some()
}

#[derive(Clone, Debug)]
struct FoldEdge {
    src: usize,
    dst: usize,
    letter: i32,
    formal: Word,
}

impl FoldEdge {
    /// Far endpoint and formal word, read forwards or backwards.
    fn view(&self, forward: bool) -> (usize, Word) {
        if forward {
            (self.dst, self.formal.clone())
        } else {
            (self.src, self.formal.inverse())
        }
    }
}

/// Two edges leaving one vertex with the same outgoing letter, each with
/// the orientation that reads that letter.
fn find_fold(edges: &[Option<FoldEdge>]) -> Option<((usize, bool), (usize, bool))> {
    let mut seen: BTreeMap<(usize, i32), (usize, bool)> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        let Some(e) = e else { continue };
        for (v, x, fwd) in [(e.src, e.letter, true), (e.dst, -e.letter, false)] {
            if let Some(&(j, fj)) = seen.get(&(v, x)) {
                if j != i {
                    return Some(((j, fj), (i, fwd)));
                }
            }
            seen.insert((v, x), (i, fwd));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_and_display() {
        assert_eq!(Word::new([1, 2, -2, -1, 3]), w("a3"));
        assert_eq!(w("a1 A2 a1").to_string(), "a1 A2 a1");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(w(""), Word::identity());
        assert!("b1".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
        assert_eq!(w("a1 a2").inverse(), w("A2 A1"));
    }

    #[test]
    fn cyclic() {
        let (p, u) = w("A3 a1 a2 a3").cyclic_reduction();
        assert_eq!(p, w("a3"));
        assert_eq!(u, w("a1 a2"));
        assert_eq!(u.conjugate(&p), w("A3 a1 a2 a3"));
        assert_eq!(w("a1 a2 a1 a2").primitive_root(), w("a1 a2"));
    }

    #[test]
    fn conjugators() {
        let c = w("a2 A1 a2");
        let us = [w("a1"), w("a2 a1 A2")];
        let pairs: Vec<(Word, Word)> = us.iter().map(|u| (u.clone(), u.conjugate(&c))).collect();
        let found = simultaneous_conjugator(&pairs).unwrap();
        for (u, v) in &pairs {
            assert_eq!(u.conjugate(&found), *v);
        }
        assert!(simultaneous_conjugator(&[(w("a1"), w("a1")), (w("a2"), w("a2 a1 A2"))]).is_none());
        assert!(simultaneous_conjugator(&[(w("a1"), w("a2"))]).is_none());
    }

    #[test]
    fn bases() {
        assert!(is_basis(&[w("a1"), w("a2")]));
        assert!(is_basis(&[w("a1"), w("a1 a2")]));
        assert!(is_basis(&[w("A2"), w("a1 a2 a2")]));
        assert!(!is_basis(&[w("a1 a1"), w("a2")]));
        assert!(!is_basis(&[w("a1"), w("a1")]));
        assert!(!is_basis(&[w("a1 a2 A1 A2"), w("a1")]));
        assert!(!is_basis(&[w("a1"), Word::identity()]));
        assert!(!is_basis(&[w("a1 a2 A1"), w("a1"), w("a3 a3 a2")]));
    }

    #[test]
    fn inverse_substitutes_back() {
        for words in [
            vec![w("a1 a2 a3"), w("a2 a3"), w("a3 a1 a2 a3")],
            vec![w("a1 a2 A1"), w("a1"), w("a3 a2")],
            vec![w("A2 a1 a2"), w("a1 a2")],
        ] {
            let inv = basis_inverse(&words, words.len() as u32).unwrap();
            for (j, x) in inv.iter().enumerate() {
                assert_eq!(x.substitute(&words), Word::generator(j as u32 + 1));
            }
        }
    }
}
