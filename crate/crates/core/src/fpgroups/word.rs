use std::collections::HashSet;
use std::fmt;

use super::FpError;

/// A generator or its inverse: `generator·2 + (1 if inverse)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A word in the generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        free_reduce(&Word(v))
    }

    /// `self^e`, reduced; negative exponents invert.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        free_reduce(&Word(v))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Strips inverse pairs between the two ends of a freely reduced word.
    pub fn cyclically_reduced(&self) -> Word {
        let w = free_reduce(self);
        let v = &w.0;
        let (mut lo, mut hi) = (0, v.len());
        while hi - lo >= 2 && v[lo] == v[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(v[lo..hi].to_vec())
    }

    /// Least rotation of the word or of its inverse; equal for any two
    /// relators that define the same normal subgroup generator up to
    /// conjugation and inversion.
    pub(crate) fn canonical_key(&self) -> Vec<u32> {
        [self.clone(), self.inverse()]
            .into_iter()
            .map(|w| {
                let v: Vec<u32> = w.0.iter().map(|l| l.0).collect();
                let s = least_rotation(&v);
                v[s..].iter().chain(&v[..s]).copied().collect::<Vec<u32>>()
            })
            .min()
            .unwrap_or_default()
    }
}

/// Start of the lexicographically least rotation (Booth's algorithm).
fn least_rotation(v: &[u32]) -> usize {
    let n = v.len();
    let at = |i: usize| v[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if sj != at(k + (i + 1) as usize) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

/// Free reduction: cancels adjacent `x·x⁻¹` pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Generators and cyclically reduced, deduplicated relators.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Reduces every relator cyclically, drops empty ones and repeats (up to
    /// rotation and inversion), keeping first occurrences in order.
    pub fn new(name: impl Into<String>, generators: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let mut seen_names = HashSet::new();
        for g in &generators {
            if !seen_names.insert(g.as_str()) {
                return Err(FpError::DuplicateGenerator(g.clone()));
            }
        }
        let mut p = Presentation { name: name.into(), generators, relators: Vec::new() };
        let mut seen = HashSet::new();
        for r in relators {
            p.check_word(&r)?;
            p.push_relator(r, &mut seen);
        }
        Ok(p)
    }

    pub(crate) fn empty(name: String, generators: Vec<String>) -> Self {
        Presentation { name, generators, relators: Vec::new() }
    }

    /// Appends a relator, returning whether it was kept.
    pub(crate) fn push_relator(&mut self, r: Word, seen: &mut HashSet<Vec<u32>>) -> bool {
        let r = r.cyclically_reduced();
        if r.is_empty() || !seen.insert(r.canonical_key()) {
            return false;
        }
        self.relators.push(r);
        true
    }

    pub fn check_word(&self, w: &Word) -> Result<(), FpError> {
        let count = self.generators.len();
        match w.0.iter().find(|l| l.generator() >= count) {
            Some(l) => Err(FpError::GeneratorOutOfRange { index: l.generator(), count }),
            None => Ok(()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a word in the presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        super::parse::parse_word_with(text, &self.generators)
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w.0[i];
            let mut run = 1;
            while i + run < w.len() && w.0[i + run] == l {
                run += 1;
            }
            let name = &self.generators[l.generator()];
            let e = if l.is_inverse() { -(run as i64) } else { run as i64 };
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join("*")
    }

    /// The presentation in the native file format.
    pub fn to_native(&self) -> String {
        let mut out = format!("group {}\ngens {}\nrels\n", self.name, self.generators.join(" "));
        for r in &self.relators {
            out.push_str(&self.display_word(r));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.display_word(r)).collect();
        write!(f, "{}<{} | {}>", self.name, self.generators.join(","), rels.join(", "))
    }
}

/// The presentation with `words` appended as relators; it presents the
/// quotient by their normal closure.
pub fn normal_closure_quotient(p: &Presentation, words: &[Word]) -> Result<Presentation, FpError> {
    for w in words {
        p.check_word(w)?;
    }
    let mut q = p.clone();
    let mut seen: HashSet<Vec<u32>> = q.relators.iter().map(|r| r.canonical_key()).collect();
    for w in words {
        q.push_relator(w.clone(), &mut seen);
    }
    Ok(q)
}

/// Same generators, first `k` relators. The result surjects onto the group
/// presented by `p`, so its finite quotient orders are multiples of the true
/// ones.
pub fn truncate_presentation(p: &Presentation, k: usize) -> Result<Presentation, FpError> {
    if k == 0 || k > p.relators.len() {
        return Err(FpError::TruncationOutOfRange { k, count: p.relators.len() });
    }
    let mut q = p.clone();
    q.relators.truncate(k);
    Ok(q)
}
