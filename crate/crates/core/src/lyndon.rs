//! Lyndon words over graded, totally ordered alphabets.
//!
//! Letters are small integers ordered by value; each letter also carries a
//! positive grade (the letter `R_j` has grade `j` when words are built from
//! correction operators). Order never looks at grades.
//!
//! The bracketing `λ` sends a Lyndon word to the iterated commutator built
//! from its standard factorization. Expanding `λ(l)` in the word basis gives
//! `l` with coefficient one plus strictly larger words only, which is what
//! makes Lyndon words a valid choice of independent conditions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Letter = u32;

/// A finite sequence of letters, compared lexicographically with a proper
/// prefix sorting before its extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Nonempty word.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("words must be nonempty".into()));
        }
        Ok(Word(letters))
    }

    /// The empty word, the unit of the free monoid. Only series use it.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Ordered symbols with positive grades. Letter `i` is the `i`-th symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlphabet {
    names: Vec<String>,
    grades: Vec<u32>,
}

impl GradedAlphabet {
    pub fn new(names: Vec<String>, grades: Vec<u32>) -> Result<Self> {
        if names.is_empty() || names.len() != grades.len() {
            return Err(Error::InvalidArgument(
                "alphabet needs one grade per symbol and at least one symbol".into(),
            ));
        }
        if grades.contains(&0) {
            return Err(Error::InvalidArgument("grades must be positive".into()));
        }
        Ok(GradedAlphabet { names, grades })
    }

    /// All symbols of grade one.
    pub fn uniform<S: AsRef<str>>(names: &[S]) -> Self {
        GradedAlphabet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            grades: vec![1; names.len()],
        }
    }

    /// Symbols `R_{g_1} < R_{g_2} < ...` with grade equal to the index.
    pub fn correction_operators(indices: &[u32]) -> Result<Self> {
        let names = indices.iter().map(|g| format!("R{g}")).collect();
        Self::new(names, indices.to_vec())
    }

    /// Parses `x,y,z` (grade one each) or `R1:1,R3:3` style specs.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut grades = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, grade) = match item.split_once(':') {
                Some((n, g)) => {
                    let g = g
                        .trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad grade in {item:?}: {e}")))?;
                    (n.trim().to_string(), g)
                }
                None => (item.to_string(), 1),
            };
            if names.contains(&name) {
                return Err(Error::Parse(format!("duplicate symbol {name:?}")));
            }
            names.push(name);
            grades.push(grade);
        }
        Self::new(names, grades)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn grade_of(&self, letter: Letter) -> u32 {
        self.grades[letter as usize]
    }

    pub fn name_of(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn grade(&self, word: &Word) -> u32 {
        word.letters().iter().map(|&l| self.grade_of(l)).sum()
    }

    pub fn min_grade(&self) -> u32 {
        *self.grades.iter().min().expect("nonempty alphabet")
    }

    /// Spells a word with the symbol names, separated when any name is
    /// longer than one character.
    pub fn spell(&self, word: &Word) -> String {
        let sep = if self.names.iter().any(|n| n.chars().count() > 1) {
            " "
        } else {
            ""
        };
        word.letters()
            .iter()
            .map(|&l| self.name_of(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// True iff `w` is nonempty and strictly smaller than each proper rotation.
pub fn is_lyndon(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| {
        let rotated = w[i..].iter().chain(w[..i].iter());
        w.iter().lt(rotated)
    })
}

/// A word known to be Lyndon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(word: Word) -> Result<Self> {
        if is_lyndon(word.letters()) {
            Ok(LyndonWord(word))
        } else {
            Err(Error::NotLyndon(format!("{:?}", word.letters())))
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        Self::new(Word::from(letters))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// All Lyndon words of total grade at most `max_grade`, ordered by
/// `(grade, word)`.
///
/// Words are produced in lexicographic order by the Duval successor rule up
/// to the longest length any word of admissible grade can have, then
/// filtered by grade.
pub fn generate_lyndon(alphabet: &GradedAlphabet, max_grade: u32) -> Vec<LyndonWord> {
    if max_grade == 0 {
        return Vec::new();
    }
    let k = alphabet.size() as Letter;
    let max_len = (max_grade / alphabet.min_grade()) as usize;
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![0];
    loop {
        let word = Word(w.clone());
        if alphabet.grade(&word) <= max_grade {
            out.push(LyndonWord(word));
        }
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| {
        (alphabet.grade(a.word()), a.word()).cmp(&(alphabet.grade(b.word()), b.word()))
    });
    out
}

/// `(u, v)` with `l = uv` and `v` the longest proper Lyndon suffix.
pub fn standard_factorization(l: &LyndonWord) -> Result<(LyndonWord, LyndonWord)> {
    let w = l.letters();
    if w.len() < 2 {
        return Err(Error::SingleLetter);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("the last letter is always a Lyndon suffix");
    Ok((
        LyndonWord(Word::from(&w[..split])),
        LyndonWord(Word::from(&w[split..])),
    ))
}

/// Iterated commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn bracket(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    /// Leaves read left to right.
    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            BracketTree::Leaf(l) => out.push(*l),
            BracketTree::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// `[x,[[x,y],y]]` style rendering with the alphabet's symbol names.
    pub fn render(&self, alphabet: &GradedAlphabet) -> String {
        match self {
            BracketTree::Leaf(l) => alphabet.name_of(*l).to_string(),
            BracketTree::Node(a, b) => {
                format!("[{},{}]", a.render(alphabet), b.render(alphabet))
            }
        }
    }
}

/// `λ(l)`: leaf for a letter, otherwise `[λ(u), λ(v)]` over the standard
/// factorization `(u, v)`.
pub fn bracketing(l: &LyndonWord) -> BracketTree {
    match standard_factorization(l) {
        Err(_) => BracketTree::Leaf(l.letters()[0]),
        Ok((u, v)) => BracketTree::bracket(bracketing(&u), bracketing(&v)),
    }
}

/// Linear combination of words with coefficients in `C`. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPoly<C = i64> {
    terms: BTreeMap<Word, C>,
}

impl<C> Default for WordPoly<C> {
    fn default() -> Self {
        WordPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C> WordPoly<C>
where
    C: Clone + Zero + PartialEq,
{
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(word: Word, coeff: C) -> Self {
        let mut p = Self::new();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.clone() + coeff;
                c.is_zero()
            }
            None => {
                self.terms.insert(word.clone(), coeff);
                false
            }
        };
        if remove {
            self.terms.remove(&word);
        }
    }

    /// Coefficient of `w`, zero when absent.
    pub fn coefficient(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest word with a nonzero coefficient.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    /// All stored words have the same length (grade for uniform alphabets).
    pub fn is_homogeneous_in(&self, alphabet: &GradedAlphabet) -> bool {
        let mut grades = self.terms.keys().map(|w| alphabet.grade(w));
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    pub fn scale(&self, c: &C) -> Self
    where
        C: Mul<Output = C>,
    {
        let mut out = Self::new();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<D, F>(&self, f: F) -> WordPoly<D>
    where
        D: Clone + Zero + PartialEq,
        F: Fn(&C) -> D,
    {
        let mut out = WordPoly::new();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), f(v));
        }
        out
    }

    /// Words read right to left.
    pub fn reversed(&self) -> Self {
        let mut out = Self::new();
        for (w, v) in &self.terms {
            out.add_term(w.reversed(), v.clone());
        }
        out
    }

    pub fn render(&self, alphabet: &GradedAlphabet) -> String
    where
        C: fmt::Display + One,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    alphabet.spell(w)
                };
                if c.is_one() {
                    word
                } else {
                    format!("({c}) {word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<C> Add for &WordPoly<C>
where
    C: Clone + Zero + PartialEq,
{
    type Output = WordPoly<C>;
    fn add(self, rhs: &WordPoly<C>) -> WordPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C> AddAssign<&WordPoly<C>> for WordPoly<C>
where
    C: Clone + Zero + PartialEq,
{
    fn add_assign(&mut self, rhs: &WordPoly<C>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<C> Neg for &WordPoly<C>
where
    C: Clone + Zero + PartialEq + Neg<Output = C>,
{
    type Output = WordPoly<C>;
    fn neg(self) -> WordPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C> Sub for &WordPoly<C>
where
    C: Clone + Zero + PartialEq + Neg<Output = C>,
{
    type Output = WordPoly<C>;
    fn sub(self, rhs: &WordPoly<C>) -> WordPoly<C> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

/// Concatenation product.
impl<C> Mul for &WordPoly<C>
where
    C: Clone + Zero + PartialEq + Mul<Output = C>,
{
    type Output = WordPoly<C>;
    fn mul(self, rhs: &WordPoly<C>) -> WordPoly<C> {
        let mut out = WordPoly::new();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        out
    }
}

/// Expands nested commutators into words, `[u, v] = uv - vu`.
pub fn expand_bracket(t: &BracketTree) -> WordPoly<i64> {
    match t {
        BracketTree::Leaf(l) => WordPoly::monomial(Word(vec![*l]), 1),
        BracketTree::Node(a, b) => {
            let u = expand_bracket(a);
            let v = expand_bracket(b);
            &(&u * &v) - &(&v * &u)
        }
    }
}

/// Lyndon words whose letters are correction-operator indices with the
/// given multiplicities (`content[i]` copies of `R_i`), in lexicographic
/// order.
pub fn lyndon_index_sequences(content: &BTreeMap<u32, usize>) -> Vec<Vec<u32>> {
    let mut letters: Vec<u32> = content
        .iter()
        .flat_map(|(&i, &n)| std::iter::repeat_n(i, n))
        .collect();
    if letters.is_empty() {
        return Vec::new();
    }
    letters.sort_unstable();
    let mut out = Vec::new();
    loop {
        if is_lyndon(&letters) {
            out.push(letters.clone());
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    out
}

/// Advances to the next lexicographic permutation of a multiset.
fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
