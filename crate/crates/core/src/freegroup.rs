//! Words in free groups: parsing, free reduction, substitution homomorphisms,
//! the two iteration schemes and subgroup rank by Stallings folding.
//!
//! Text syntax: `a`, `b`, `c`, ... are the generators `x_1, x_2, x_3, ...`
//! and the matching uppercase letters are their inverses. Whitespace is
//! ignored. For two-letter words `a` plays the role of `x` and `b` of `y`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest alphabet the text syntax can express.
pub const MAX_ALPHABET: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("alphabet of size {0} exceeds the {MAX_ALPHABET} letters of the text syntax")]
    AlphabetTooLarge(usize),
    #[error("character {ch:?} is outside the alphabet of size {alphabet_size}")]
    OutsideAlphabet { ch: char, alphabet_size: usize },
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("images live on different alphabets")]
    MixedAlphabets,
    #[error("word is freely trivial")]
    TrivialWord,
    #[error("iteration count must be at least 1")]
    ZeroIterations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub usize);

impl Generator {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A generator together with an exponent of `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: Generator(generator),
            inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    fn to_char(self) -> char {
        let c = (b'a' + self.generator.0 as u8) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A (not necessarily reduced) word over `alphabet_size` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet_size: usize,
}

fn check_alphabet(alphabet_size: usize) -> Result<(), WordError> {
    if alphabet_size == 0 {
        return Err(WordError::EmptyAlphabet);
    }
    if alphabet_size > MAX_ALPHABET {
        return Err(WordError::AlphabetTooLarge(alphabet_size));
    }
    Ok(())
}

impl Word {
    /// Builds a word from letters. Letters must index into the alphabet.
    pub fn new(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self, WordError> {
        check_alphabet(alphabet_size)?;
        if let Some(l) = letters.iter().find(|l| l.generator.0 >= alphabet_size) {
            return Err(WordError::OutsideAlphabet {
                ch: if l.generator.0 < MAX_ALPHABET {
                    l.to_char()
                } else {
                    '?'
                },
                alphabet_size,
            });
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: usize) -> Result<Self, WordError> {
        Word::new(Vec::new(), alphabet_size)
    }

    /// The single-letter word `x_{index+1}`.
    pub fn generator(index: usize, alphabet_size: usize) -> Result<Self, WordError> {
        Word::new(vec![Letter::new(index, false)], alphabet_size)
    }

    /// Parses the letter sequence exactly as written, without reducing it.
    pub fn parse(text: &str, alphabet_size: usize) -> Result<Self, WordError> {
        check_alphabet(alphabet_size)?;
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            let idx = match ch {
                'a'..='z' => (ch as u8 - b'a') as usize,
                'A'..='Z' => (ch as u8 - b'A') as usize,
                _ => usize::MAX,
            };
            if idx >= alphabet_size {
                return Err(WordError::OutsideAlphabet { ch, alphabet_size });
            }
            letters.push(Letter::new(idx, ch.is_ascii_uppercase()));
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    /// Smallest alphabet that contains every letter of `text` (at least 1).
    pub fn infer_alphabet(text: &str) -> usize {
        text.chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| (c.to_ascii_lowercase() as u8 - b'a') as usize + 1)
            .max()
            .unwrap_or(1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters, viewed in a larger alphabet.
    pub fn widen(&self, alphabet_size: usize) -> Result<Self, WordError> {
        Word::new(self.letters.clone(), alphabet_size.max(self.alphabet_size))
    }

    /// Unique freely reduced representative (single stack pass).
    pub fn reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word {
            letters: stack,
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn is_trivial(&self) -> bool {
        self.reduce().is_empty()
    }

    /// Formal inverse (reversed, letters inverted).
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
            alphabet_size: self.alphabet_size,
        }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
        }
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        self.concat(other).reduce()
    }

    /// The commutator `[u, v] = u^-1 v^-1 u v`, reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse()
            .concat(&v.inverse())
            .concat(u)
            .concat(v)
            .reduce()
    }

    /// Signed number of occurrences of `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Number of letters `g` or `g^-1`.
    pub fn occurrences(&self, g: Generator) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    /// Number of inverse letters of `g`.
    pub fn inverse_occurrences(&self, g: Generator) -> usize {
        self.letters
            .iter()
            .filter(|l| l.generator == g && l.inverse)
            .count()
    }

    /// Applies the homomorphism sending generator `i` to `images[i]` and
    /// returns the reduced result.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, WordError> {
        if images.len() != self.alphabet_size {
            return Err(WordError::ArityMismatch {
                expected: self.alphabet_size,
                got: images.len(),
            });
        }
        let target = images[0].alphabet_size;
        if images.iter().any(|w| w.alphabet_size != target) {
            return Err(WordError::MixedAlphabets);
        }
        let inverses: Vec<Word> = images.iter().map(|w| w.inverse()).collect();
        let mut stack: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let img = if l.inverse {
                &inverses[l.generator.0]
            } else {
                &images[l.generator.0]
            };
            for &m in &img.letters {
                match stack.last() {
                    Some(&top) if top.cancels(m) => {
                        stack.pop();
                    }
                    _ => stack.push(m),
                }
            }
        }
        Ok(Word {
            letters: stack,
            alphabet_size: target,
        })
    }

    /// `w_{∘n}`: the previous iterate is substituted for the first letter,
    /// every other letter stays fixed. Reduced after every step.
    pub fn iterate_first(&self, n: usize) -> Result<Word, WordError> {
        if n == 0 {
            return Err(WordError::ZeroIterations);
        }
        let m = self.alphabet_size;
        let mut images: Vec<Word> = (0..m)
            .map(|i| Word::generator(i, m))
            .collect::<Result<_, _>>()?;
        let base = self.reduce();
        let mut current = base.clone();
        for _ in 1..n {
            images[0] = current;
            current = base.substitute(&images)?;
        }
        Ok(current)
    }

    /// Replaces `x_1 -> x`, `x_j -> y^j x y^-j` for `j >= 2`, landing in `F_2`.
    ///
    /// Words already on one or two letters are only reduced (and widened to
    /// two letters). Errors on freely trivial input.
    pub fn two_letter_reduction(&self) -> Result<Word, WordError> {
        let reduced = self.reduce();
        if reduced.is_empty() {
            return Err(WordError::TrivialWord);
        }
        if self.alphabet_size <= 2 {
            return reduced.widen(2);
        }
        let images: Vec<Word> = (0..self.alphabet_size)
            .map(|i| {
                if i == 0 {
                    Word::parse("a", 2)
                } else {
                    let j = i + 1;
                    let text = format!("{}a{}", "b".repeat(j), "B".repeat(j));
                    Word::parse(&text, 2)
                }
            })
            .collect::<Result<_, _>>()?;
        reduced.substitute(&images)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Free reduction as a free function.
pub fn free_reduce(w: &Word) -> Word {
    w.reduce()
}

/// A tuple of `s` words on `s` letters, read as the endomorphism
/// `x_i -> w_i` of the free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSystem {
    words: Vec<Word>,
}

impl WordSystem {
    pub fn new(words: Vec<Word>) -> Result<Self, WordError> {
        let s = words.len();
        if s == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        for w in &words {
            if w.alphabet_size != s {
                return Err(WordError::ArityMismatch {
                    expected: s,
                    got: w.alphabet_size,
                });
            }
        }
        Ok(WordSystem { words })
    }

    /// Parses comma separated words; the alphabet size is the number of words.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let parts: Vec<&str> = text.split(',').collect();
        let s = parts.len();
        let words = parts
            .iter()
            .map(|p| Word::parse(p, s))
            .collect::<Result<Vec<_>, _>>()?;
        WordSystem::new(words)
    }

    /// The identity endomorphism on `s` letters.
    pub fn identity(s: usize) -> Result<Self, WordError> {
        WordSystem::new(
            (0..s)
                .map(|i| Word::generator(i, s))
                .collect::<Result<_, _>>()?,
        )
    }

    /// The tuple `w_1 = [x_1, x_n]`, `w_i = [x_{i-1}, x_n]` (`i >= 2`):
    /// nontrivial up to iterate `n - 1`, trivial from iterate `n` on.
    pub fn collapsing_example(n: usize) -> Result<Self, WordError> {
        if n < 2 {
            return Err(WordError::ArityMismatch { expected: 2, got: n });
        }
        let last = Word::generator(n - 1, n)?;
        let words = (0..n)
            .map(|i| {
                let first = Word::generator(i.saturating_sub(1), n)?;
                Ok(Word::commutator(&first, &last))
            })
            .collect::<Result<Vec<_>, WordError>>()?;
        WordSystem::new(words)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Composition `self ∘ inner`: coordinate `i` is `w_i(inner_1, ..., inner_s)`.
    pub fn compose(&self, inner: &WordSystem) -> Result<WordSystem, WordError> {
        let words = self
            .words
            .iter()
            .map(|w| w.substitute(&inner.words))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WordSystem { words })
    }

    /// The `n`-th iterate of the endomorphism, with one flag per coordinate
    /// that is `true` when the coordinate is freely trivial.
    pub fn iterate(&self, n: usize) -> Result<(WordSystem, Vec<bool>), WordError> {
        if n == 0 {
            return Err(WordError::ZeroIterations);
        }
        let base = WordSystem {
            words: self.words.iter().map(|w| w.reduce()).collect(),
        };
        let mut current = base.clone();
        for _ in 1..n {
            current = base.compose(&current)?;
        }
        let flags = current.words.iter().map(|w| w.is_empty()).collect();
        Ok((current, flags))
    }
}

impl fmt::Display for WordSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Labeled directed graph used for Stallings folding. Edge `(u, g, v)` reads
/// generator `g` forwards from `u` to `v`.
#[derive(Clone, Debug)]
pub struct FoldingGraph {
    vertex_count: usize,
    edges: Vec<(usize, Generator, usize)>,
    base: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl FoldingGraph {
    /// Bouquet of closed paths at the base vertex, one per nonempty word.
    pub fn from_words(words: &[Word]) -> Self {
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        for w in words.iter().map(|w| w.reduce()) {
            if w.is_empty() {
                continue;
            }
            let mut at = 0;
            let n = w.len();
            for (i, l) in w.letters().iter().enumerate() {
                let next = if i + 1 == n {
                    0
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                if l.inverse {
                    edges.push((next, l.generator, at));
                } else {
                    edges.push((at, l.generator, next));
                }
                at = next;
            }
        }
        FoldingGraph {
            vertex_count,
            edges,
            base: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, Generator, usize)] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Folds until no vertex has two outgoing (or two incoming) edges with
    /// the same label; vertices are renumbered densely.
    pub fn fold(&self) -> FoldingGraph {
        let mut uf = UnionFind::new(self.vertex_count);
        loop {
            let mut merged = false;
            let mut outgoing: HashMap<(usize, Generator), usize> = HashMap::new();
            let mut incoming: HashMap<(usize, Generator), usize> = HashMap::new();
            for &(u, g, v) in &self.edges {
                let (u, v) = (uf.find(u), uf.find(v));
                if let Some(&t) = outgoing.get(&(u, g)) {
                    merged |= uf.union(t, v);
                } else {
                    outgoing.insert((u, g), v);
                }
                let v = uf.find(v);
                let u = uf.find(u);
                if let Some(&s) = incoming.get(&(v, g)) {
                    merged |= uf.union(s, u);
                } else {
                    incoming.insert((v, g), u);
                }
            }
            if !merged {
                break;
            }
        }
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let base_root = uf.find(self.base);
        relabel.insert(base_root, 0);
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            let next = relabel.len();
            relabel.entry(r).or_insert(next);
        }
        let mut edges: Vec<(usize, Generator, usize)> = self
            .edges
            .iter()
            .map(|&(u, g, v)| (relabel[&uf.find(u)], g, relabel[&uf.find(v)]))
            .collect();
        edges.sort();
        edges.dedup();
        FoldingGraph {
            vertex_count: relabel.len(),
            edges,
            base: 0,
        }
    }

    /// `edges - vertices + 1`; the graph is connected through the base.
    pub fn rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertex_count)
    }
}

/// Rank of the subgroup generated by `words` in the ambient free group.
pub fn subgroup_rank(words: &[Word]) -> usize {
    FoldingGraph::from_words(words).fold().rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, m: usize) -> Word {
        Word::parse(text, m).unwrap()
    }

    #[test]
    fn parse_literal() {
        let word = w("aA", 1);
        assert_eq!(word.len(), 2);
        assert_eq!(word.letters()[0], Letter::new(0, false));
        assert_eq!(word.letters()[1], Letter::new(0, true));
        assert_eq!(w("AB ab", 2).to_string(), "ABab");
        assert_eq!(
            Word::parse("abc", 2),
            Err(WordError::OutsideAlphabet {
                ch: 'c',
                alphabet_size: 2
            })
        );
        assert_eq!(Word::parse("a", 0), Err(WordError::EmptyAlphabet));
        assert!(Word::parse("a1", 2).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("aAb", 2).reduce().to_string(), "b");
        assert_eq!(w("ABab", 2).reduce().to_string(), "ABab");
        assert!(w("abBA", 2).reduce().is_empty());
    }

    #[test]
    fn exponent_sums() {
        let c = w("ABab", 2);
        assert_eq!(c.exponent_sum(Generator(0)), 0);
        assert_eq!(c.exponent_sum(Generator(1)), 0);
        assert_eq!(w("aab", 2).exponent_sum(Generator(0)), 2);
    }

    #[test]
    fn substitution_examples() {
        let images = [w("a", 2), w("a", 2)];
        assert_eq!(w("ab", 2).substitute(&images).unwrap().to_string(), "aa");
        assert_eq!(
            w("A", 1).substitute(&[w("ab", 2)]).unwrap().to_string(),
            "BA"
        );
        assert_eq!(
            w("ab", 2).substitute(&[w("a", 2)]),
            Err(WordError::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
        let nested = w("ABab", 2).substitute(&[w("ABab", 2), w("b", 2)]).unwrap();
        assert_eq!(nested.to_string(), "BAbaBABabb");
    }

    #[test]
    fn iterate_first_examples() {
        assert_eq!(w("ab", 2).iterate_first(2).unwrap().to_string(), "abb");
        for n in 1..5 {
            assert_eq!(w("a", 1).iterate_first(n).unwrap().to_string(), "a");
        }
        let second = w("ABab", 2).iterate_first(2).unwrap();
        assert_eq!(second.len(), 10);
        assert_eq!(second, Word::commutator(&w("ABab", 2), &w("b", 2)));
        assert_eq!(w("ab", 2).iterate_first(0), Err(WordError::ZeroIterations));
    }

    #[test]
    fn system_examples() {
        let sys = WordSystem::parse("ABab,ABab").unwrap();
        let (it, flags) = sys.iterate(2).unwrap();
        assert_eq!(flags, vec![true, true]);
        assert!(it.words().iter().all(|w| w.is_empty()));

        let id = WordSystem::identity(3).unwrap();
        for n in 1..4 {
            assert_eq!(id.iterate(n).unwrap().0, id);
        }
    }

    #[test]
    fn collapsing_example_three() {
        let sys = WordSystem::collapsing_example(3).unwrap();
        assert_eq!(sys.to_string(), "ACac,ACac,BCbc");
        let (_, flags2) = sys.iterate(2).unwrap();
        assert_eq!(flags2, vec![false; 3]);
        let (_, flags3) = sys.iterate(3).unwrap();
        assert_eq!(flags3, vec![true; 3]);
    }

    #[test]
    fn two_letter_examples() {
        // x_1 x_2 read inside a three letter alphabet goes through the embedding
        let r = w("ab", 3).two_letter_reduction().unwrap();
        assert_eq!(r.to_string(), "abbaBB");
        assert_eq!(r.alphabet_size(), 2);
        assert_eq!(w("abAB", 2).two_letter_reduction().unwrap().to_string(), "abAB");
        assert_eq!(
            w("aA", 3).two_letter_reduction(),
            Err(WordError::TrivialWord)
        );
        let one = w("aa", 1).two_letter_reduction().unwrap();
        assert_eq!(one.alphabet_size(), 2);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(subgroup_rank(&[w("a", 2), w("b", 2)]), 2);
        assert_eq!(subgroup_rank(&[w("aa", 2), w("aaa", 2)]), 1);
        assert_eq!(subgroup_rank(&[w("ABab", 2), w("b", 2)]), 2);
        assert_eq!(subgroup_rank(&[]), 0);
        assert_eq!(subgroup_rank(&[w("ab", 2), w("ab", 2)]), 1);
        // x, y x y^-1, y^2 x y^-2 freely generate
        assert_eq!(
            subgroup_rank(&[w("a", 2), w("baB", 2), w("bbaBB", 2)]),
            3
        );
    }

    #[test]
    fn folded_graph_is_deterministic_automaton() {
        let g = FoldingGraph::from_words(&[w("ABab", 2), w("abba", 2), w("b", 2)]).fold();
        let mut out = std::collections::HashSet::new();
        let mut inc = std::collections::HashSet::new();
        for &(u, gen, v) in g.edges() {
            assert!(out.insert((u, gen)));
            assert!(inc.insert((v, gen)));
        }
    }
}
