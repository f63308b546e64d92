//! Word combinatorics over a finite ordered alphabet.
//!
//! The alphabet is listed in **descending** order: index 0 names the greatest
//! letter. Two orders are in play everywhere downstream and their conventions
//! are easy to get backwards, so all order-sensitive code routes through
//! [`lex_compare`], [`gamma_compare`] and [`hall_compare`]:
//!
//! * the lexicographic order compares letters left to right, and a **proper
//!   prefix is greater** than its extensions (so `x > x.x`, while `x.y < x.x.y`
//!   when `y < x`);
//! * the Hall (deg-lex) order compares constitutions first, then falls back to
//!   the lexicographic order. Unlike plain lex it is monoidal.
//!
//! `Word` deliberately does not implement `Ord`; picking the wrong convention
//! silently breaks every PBW computation built on top.

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordsError {
    #[error("alphabet names must be unique and non-empty")]
    BadAlphabet,
    #[error("letter index {0} out of range for alphabet of size {1}")]
    BadLetter(usize, usize),
}

/// Generator names in strictly descending order (first = greatest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordsError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.iter().any(|n| n.is_empty()) {
            return Err(WordsError::BadAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(WordsError::BadAlphabet);
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.0 as usize]
    }

    pub fn letter_of(&self, name: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u16))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Index into an [`Alphabet`]; index 0 is the greatest letter.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub struct Letter(pub u16);

impl Letter {
    /// Alphabet order: smaller index means greater letter.
    pub fn cmp_alpha(self, other: Letter) -> Ordering {
        other.0.cmp(&self.0)
    }
}

/// A (possibly empty) sequence of letters.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_indices(ix: &[u16]) -> Self {
        Word(ix.iter().map(|&i| Letter(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, lo: usize, hi: usize) -> Word {
        Word(self.0[lo..hi].to_vec())
    }

    pub fn max_index(&self) -> Option<u16> {
        self.0.iter().map(|l| l.0).max()
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| alphabet.name(l).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Letter multiplicities, indexed like the alphabet (entry 0 counts the
/// greatest letter). The derived `Ord` is exactly the order on the degree
/// monoid: the first differing multiplicity, scanning from the greatest
/// letter, decides.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    pub fn zero(k: usize) -> Self {
        DegreeVector(vec![0; k])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        DegreeVector(counts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total length of any word with this constitution.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &DegreeVector) -> DegreeVector {
        assert_eq!(self.0.len(), other.0.len(), "mismatched alphabets");
        DegreeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, m: u32) -> DegreeVector {
        DegreeVector(self.0.iter().map(|&c| c * m).collect())
    }

    pub fn checked_sub(&self, other: &DegreeVector) -> Option<DegreeVector> {
        assert_eq!(self.0.len(), other.0.len(), "mismatched alphabets");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DegreeVector)
    }

    pub fn componentwise_le(&self, other: &DegreeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c > 0 {
                parts.push(format!("{}^{}", alphabet.name(Letter(i as u16)), c));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(".")
        }
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Number of occurrences of each letter in `w`, over an alphabet of size `k`.
pub fn constitution(w: &Word, k: usize) -> DegreeVector {
    let mut counts = vec![0u32; k];
    for l in w.letters() {
        counts[l.0 as usize] += 1;
    }
    DegreeVector(counts)
}

/// Order on the degree monoid: the first differing multiplicity, scanning
/// letters in descending alphabet order, decides.
pub fn gamma_compare(a: &DegreeVector, b: &DegreeVector) -> Ordering {
    assert_eq!(a.len(), b.len(), "mismatched alphabets");
    a.cmp(b)
}

/// Lexicographic order with the proper-prefix-is-greater convention.
pub fn lex_compare(u: &Word, v: &Word) -> Ordering {
    for (a, b) in u.letters().iter().zip(v.letters()) {
        match a.cmp_alpha(*b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    // One is a prefix of the other: the shorter (proper prefix) is greater.
    v.len().cmp(&u.len())
}

/// Hall (deg-lex) order: by constitution, then by [`lex_compare`].
pub fn hall_compare(u: &Word, v: &Word) -> Ordering {
    let k = u.max_index().max(v.max_index()).map_or(0, |m| m as usize + 1);
    match gamma_compare(&constitution(u, k), &constitution(v, k)) {
        Ordering::Equal => lex_compare(u, v),
        ord => ord,
    }
}

/// Standard (Lyndon-Shirshov) test straight from the definition: `vw > wv`
/// for every proper split. Panics on the empty word.
pub fn is_standard(u: &Word) -> bool {
    assert!(!u.is_empty(), "standardness is undefined for the empty word");
    let n = u.len();
    for cut in 1..n {
        let rotated = u.slice(cut, n).concat(&u.slice(0, cut));
        if lex_compare(u, &rotated) != Ordering::Greater {
            return false;
        }
    }
    true
}

/// The canonical split `u = vw` of a standard word with `v` standard of
/// minimal length and `w` standard. Panics unless `u` is standard with
/// length at least 2.
pub fn shirshov_factorize(u: &Word) -> (Word, Word) {
    assert!(u.len() >= 2, "factorization needs length >= 2");
    assert!(is_standard(u), "factorization needs a standard word");
    for cut in 1..u.len() {
        let v = u.slice(0, cut);
        let w = u.slice(cut, u.len());
        if is_standard(&v) && is_standard(&w) {
            return (v, w);
        }
    }
    unreachable!("every standard word of length >= 2 has a standard split");
}

/// Nonassociative frame of a standard word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketingTree {
    Leaf(Letter),
    Node(Box<BracketingTree>, Box<BracketingTree>),
}

impl BracketingTree {
    /// Shirshov bracketing via recursive minimal-prefix factorization.
    pub fn build(u: &Word) -> BracketingTree {
        if u.len() == 1 {
            return BracketingTree::Leaf(u.letters()[0]);
        }
        let (v, w) = shirshov_factorize(u);
        BracketingTree::Node(
            Box::new(BracketingTree::build(&v)),
            Box::new(BracketingTree::build(&w)),
        )
    }

    pub fn flatten(&self) -> Word {
        match self {
            BracketingTree::Leaf(l) => Word::single(*l),
            BracketingTree::Node(a, b) => a.flatten().concat(&b.flatten()),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            BracketingTree::Leaf(l) => alphabet.name(*l).to_string(),
            BracketingTree::Node(a, b) => {
                format!("[{},{}]", a.render(alphabet), b.render(alphabet))
            }
        }
    }
}

/// All standard words of length 1..=bound over a `k`-letter alphabet, sorted
/// ascending under [`hall_compare`].
///
/// Generation is Duval's algorithm on letter indices: with the descending
/// alphabet convention, a word is standard exactly when its index sequence is
/// a classical Lyndon word under the natural integer order.
pub fn standard_words(k: usize, bound: usize) -> Vec<Word> {
    assert!(bound >= 1, "bound must be positive");
    assert!(k >= 1 && k <= u16::MAX as usize, "unsupported alphabet size");
    let mut out: Vec<Word> = Vec::new();
    let mut w: Vec<u16> = vec![0];
    loop {
        if w.len() <= bound {
            out.push(Word::from_indices(&w));
        }
        // Extend periodically to the bound, then increment the last
        // incrementable position.
        let n = w.len();
        let mut ext = Vec::with_capacity(bound);
        for i in 0..bound {
            ext.push(w[i % n]);
        }
        w = ext;
        while let Some(&last) = w.last() {
            if last == (k - 1) as u16 {
                w.pop();
            } else {
                break;
            }
        }
        if w.is_empty() {
            break;
        }
        *w.last_mut().unwrap() += 1;
    }
    out.sort_by(|a, b| hall_compare(a, b));
    out
}

/// Monotonous restricted word in an ordered list of abstract letters: strictly
/// ascending letters with positive exponents below each letter's height.
pub type LetterPowerWord = Vec<(usize, u32)>;

/// Enumerate the monotonous restricted words of a given constitution.
///
/// `letters` must be strictly ascending in the intended letter order; each
/// entry carries the letter's underlying word (for degrees and flattening)
/// and its height (`None` for unbounded). The result is sorted ascending by
/// [`hall_compare`] of the flattened words.
pub fn enumerate_basis_words(
    letters: &[(Word, Option<u64>)],
    gamma: &DegreeVector,
    k: usize,
) -> Vec<LetterPowerWord> {
    let degrees: Vec<DegreeVector> = letters.iter().map(|(w, _)| constitution(w, k)).collect();
    let mut out = Vec::new();
    let mut current: LetterPowerWord = Vec::new();
    fn recurse(
        letters: &[(Word, Option<u64>)],
        degrees: &[DegreeVector],
        from: usize,
        remaining: &DegreeVector,
        current: &mut LetterPowerWord,
        out: &mut Vec<LetterPowerWord>,
    ) {
        if remaining.is_zero() {
            out.push(current.clone());
            return;
        }
        for i in from..letters.len() {
            let d = &degrees[i];
            if d.is_zero() || !d.componentwise_le(remaining) {
                continue;
            }
            let mut left = remaining.clone();
            let mut n = 0u32;
            loop {
                match left.checked_sub(d) {
                    Some(next) => {
                        left = next;
                        n += 1;
                    }
                    None => break,
                }
                if let Some(h) = letters[i].1 {
                    if n as u64 >= h {
                        break;
                    }
                }
                current.push((i, n));
                recurse(letters, degrees, i + 1, &left, current, out);
                current.pop();
            }
        }
    }
    recurse(letters, &degrees, 0, gamma, &mut current, &mut out);
    let flatten = |bw: &LetterPowerWord| -> Word {
        let mut w = Word::empty();
        for &(i, n) in bw {
            w = w.concat(&letters[i].0.repeat(n as usize));
        }
        w
    };
    out.sort_by(|a, b| hall_compare(&flatten(a), &flatten(b)));
    out
}
