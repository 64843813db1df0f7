//! Braid words, their closures, and the word-level surgery that splits a
//! braid along a shared Seifert circle.
//!
//! Generators are 1-based: `σ_i` crosses the strands at positions `i` and
//! `i + 1`. In `σ_i^{+1}` the strand entering at position `i` passes over
//! the strand entering at position `i + 1`; in `σ_i^{-1}` it passes under.
//! Every module shares this convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One generator `σ_index^{sign}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Self { index, sign }
    }

    pub fn pos(index: usize) -> Self {
        Self::new(index, Sign::Positive)
    }

    pub fn neg(index: usize) -> Self {
        Self::new(index, Sign::Negative)
    }

    /// Signed integer form used by the text format.
    pub fn to_signed(self) -> i64 {
        self.index as i64 * self.sign.value()
    }

    pub fn inverse(self) -> Self {
        Self::new(self.index, self.sign.flipped())
    }

    fn shifted(self, by: usize) -> Self {
        Self::new(self.index + by, self.sign)
    }
}

/// A braid word on a fixed number of strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.index == 0 {
                return Err(Error::ZeroGenerator);
            }
            if l.index >= strands {
                return Err(Error::GeneratorOutOfRange { index: l.index, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// The trivial braid on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        Self { strands: strands.max(1), letters: Vec::new() }
    }

    /// Builds a word from signed generator indices, inferring the strand count.
    pub fn from_signed(tokens: &[i64]) -> Result<Self> {
        let letters = tokens
            .iter()
            .map(|&x| letter_from_signed(x))
            .collect::<Result<Vec<_>>>()?;
        let strands = letters.iter().map(|l| l.index).max().unwrap_or(0) + 1;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Number of letters with generator index `index`.
    pub fn count_index(&self, index: usize) -> usize {
        self.letters.iter().filter(|l| l.index == index).count()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Same letters on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<Self> {
        Self::new(strands, self.letters.clone())
    }

    /// Markov stabilisation: appends `σ_n^{sign}` on `n + 1` strands.
    pub fn stabilized(&self, sign: Sign) -> Self {
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.strands, sign));
        Self { strands: self.strands + 1, letters }
    }

    /// Flips the sign of the letter at `position` (0-based).
    pub fn with_flip(&self, position: usize) -> Result<Self> {
        let mut letters = self.letters.clone();
        let l = letters
            .get_mut(position)
            .ok_or(Error::PositionOutOfRange { position, len: self.letters.len() })?;
        l.sign = l.sign.flipped();
        Ok(Self { strands: self.strands, letters })
    }

    /// Cyclic rotation by `r` letters (a conjugate braid).
    pub fn rotated(&self, r: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let r = r % letters.len();
            letters.rotate_left(r);
        }
        Self { strands: self.strands, letters }
    }

    /// `true` if no two adjacent letters cancel.
    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Position (0-based) each strand occupies after passing through the
    /// whole word: `perm[p]` is the exit position of the strand entering at `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[position] = strand
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        cycles(&self.permutation()).len()
    }
}

fn letter_from_signed(x: i64) -> Result<Letter> {
    match x {
        0 => Err(Error::ZeroGenerator),
        x if x > 0 => Ok(Letter::pos(x as usize)),
        x => Ok(Letter::neg(x.unsigned_abs() as usize)),
    }
}

/// Parses whitespace-separated signed generator indices (`"1 -2 1 -2"`).
///
/// The strand count defaults to the largest index plus one; an explicit
/// `strands` overrides it. Empty text is the trivial braid on one strand
/// (or on `strands` strands when given). Both ASCII `-` and `−` are
/// accepted as minus signs.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        let norm = tok.replace('−', "-");
        let x: i64 = norm
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator token `{tok}`")))?;
        letters.push(letter_from_signed(x)?);
    }
    let inferred = letters.iter().map(|l| l.index).max().unwrap_or(0) + 1;
    BraidWord::new(strands.unwrap_or(inferred), letters)
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s, None)
    }
}

/// Canonical text form: signed indices separated by single spaces.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_signed().to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Cycle decomposition of a permutation, each cycle starting at its
/// smallest element; cycles ordered by that element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cyc.push(p);
            p = perm[p];
        }
        out.push(cyc);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureData {
    /// `permutation[p]` = exit position of the strand entering at `p` (0-based).
    pub permutation: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub components: usize,
    pub writhe: i64,
    /// Euler characteristic of the canonical surface: strands - letters.
    pub euler_char: i64,
}

pub fn closure_data(w: &BraidWord) -> ClosureData {
    let permutation = w.permutation();
    let cycles = cycles(&permutation);
    ClosureData {
        components: cycles.len(),
        cycles,
        permutation,
        writhe: w.writhe(),
        euler_char: w.strands() as i64 - w.len() as i64,
    }
}

/// Splits `w` along the Seifert circle at position `k + 1`.
///
/// Returns `(outer, inner)`: `outer` keeps the letters with index `>= k+1`,
/// reindexed by `-k`, on `strands - k` strands; `inner` keeps the letters
/// with index `<= k` on `k + 1` strands. Letter order is preserved.
pub fn split_braid(w: &BraidWord, k: usize) -> Result<(BraidWord, BraidWord)> {
    if k < 1 || k + 2 > w.strands() {
        return Err(Error::SplitIndexOutOfRange { k, strands: w.strands() });
    }
    let outer = w
        .letters()
        .iter()
        .filter(|l| l.index > k)
        .map(|l| Letter::new(l.index - k, l.sign))
        .collect();
    let inner = w.letters().iter().filter(|l| l.index <= k).copied().collect();
    Ok((
        BraidWord { strands: w.strands() - k, letters: outer },
        BraidWord { strands: k + 1, letters: inner },
    ))
}

/// An interleaving of two letter sequences: `false` takes the next letter
/// of the inner word, `true` the next letter of the outer word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shuffle(pub Vec<bool>);

impl Shuffle {
    /// All inner letters, then all outer letters.
    pub fn concatenation(inner_len: usize, outer_len: usize) -> Self {
        Self(std::iter::repeat(false).take(inner_len).chain(std::iter::repeat(true).take(outer_len)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn outer_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Recovers the interleaving pattern of a composite word split at `k`.
    pub fn of_composite(word: &BraidWord, k: usize) -> Self {
        Self(word.letters().iter().map(|l| l.index > k).collect())
    }
}

impl FromStr for Shuffle {
    type Err = Error;

    /// Binary string: `0` = next inner letter, `1` = next outer letter.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MalformedShuffle(format!("unexpected character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Shuffle)
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A braid word realising a Murasugi sum of the closures of its two
/// halves, split at generator index `split_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositeBraid {
    pub word: BraidWord,
    pub split_index: usize,
    /// Size of the summing polygon on the shared Seifert circle:
    /// twice the number of band feet on it.
    pub gon_size: usize,
    pub inner_letter_count: usize,
    pub outer_letter_count: usize,
}

impl CompositeBraid {
    /// Reads a composite off an existing word and split index.
    pub fn from_word(word: BraidWord, k: usize) -> Result<Self> {
        if k < 1 || k + 2 > word.strands() {
            return Err(Error::SplitIndexOutOfRange { k, strands: word.strands() });
        }
        let gon_size = 2 * (word.count_index(k) + word.count_index(k + 1));
        let inner_letter_count = word.letters().iter().filter(|l| l.index <= k).count();
        Ok(Self {
            outer_letter_count: word.len() - inner_letter_count,
            inner_letter_count,
            gon_size,
            split_index: k,
            word,
        })
    }

    pub fn shuffle(&self) -> Shuffle {
        Shuffle::of_composite(&self.word, self.split_index)
    }
}

/// Places `inner` (on `k + 1` strands) and `outer` (shifted up by `k`)
/// on a common braid so the closure is a Murasugi sum along Seifert
/// circle `k + 1`. `shuffle` defaults to plain concatenation.
pub fn murasugi_concat(inner: &BraidWord, outer: &BraidWord, shuffle: Option<&Shuffle>) -> Result<CompositeBraid> {
    if inner.strands() < 2 || outer.strands() < 2 {
        return Err(Error::NoSharedStrand);
    }
    let k = inner.strands() - 1;
    let default;
    let shuffle = match shuffle {
        Some(s) => s,
        None => {
            default = Shuffle::concatenation(inner.len(), outer.len());
            &default
        }
    };
    if shuffle.len() != inner.len() + outer.len() || shuffle.outer_count() != outer.len() {
        return Err(Error::MalformedShuffle(format!(
            "pattern `{shuffle}` does not interleave {} inner and {} outer letters",
            inner.len(),
            outer.len()
        )));
    }
    let mut inner_it = inner.letters().iter();
    let mut outer_it = outer.letters().iter();
    let letters = shuffle
        .0
        .iter()
        .map(|&take_outer| {
            if take_outer {
                outer_it.next().unwrap().shifted(k)
            } else {
                *inner_it.next().unwrap()
            }
        })
        .collect();
    let word = BraidWord { strands: k + outer.strands(), letters };
    CompositeBraid::from_word(word, k)
}

/// Deletes adjacent `σ_i σ_i^{-1}` and `σ_i^{-1} σ_i` pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord { strands: w.strands(), letters: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = bw("1 1 1");
        assert_eq!(w.strands(), 2);
        assert_eq!(w.letters(), &[Letter::pos(1); 3]);
        let w = bw("1 -2 1 -2");
        assert_eq!(w.strands(), 3);
        assert_eq!(w.to_signed(), vec![1, -2, 1, -2]);
        assert_eq!(bw("1 −2").to_signed(), vec![1, -2]);
        assert_eq!("0".parse::<BraidWord>(), Err(Error::ZeroGenerator));
        assert!("1 x".parse::<BraidWord>().is_err());
    }

    #[test]
    fn parse_empty_and_override() {
        let w = bw("");
        assert_eq!((w.strands(), w.len()), (1, 0));
        assert_eq!(parse_braid("1", Some(4)).unwrap().strands(), 4);
        assert_eq!(
            parse_braid("1 3", Some(3)),
            Err(Error::GeneratorOutOfRange { index: 3, strands: 3 })
        );
        assert_eq!(parse_braid("", Some(3)).unwrap().strands(), 3);
    }

    #[test]
    fn closure_examples() {
        let c = closure_data(&bw("1 1 1"));
        assert_eq!((c.components, c.writhe, c.euler_char), (1, 3, -1));
        let c = closure_data(&BraidWord::identity(3));
        assert_eq!((c.components, c.writhe), (3, 0));
        assert_eq!(c.cycles, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(closure_data(&bw("1 1")).components, 2);
        // σ1 σ2: strand at 0 -> 1 -> 2? the strand entering at 0 ends at 1 after σ1, then 2 after σ2
        assert_eq!(bw("1 2").permutation(), vec![2, 0, 1]);
    }

    #[test]
    fn split_examples() {
        let (outer, inner) = split_braid(&bw("1 2 1 2"), 1).unwrap();
        assert_eq!(outer, bw("1 1"));
        assert_eq!(inner, bw("1 1"));
        let (outer, inner) = split_braid(&BraidWord::identity(4), 2).unwrap();
        assert_eq!((outer.strands(), outer.len(), inner.strands(), inner.len()), (2, 0, 3, 0));
        assert_eq!(
            split_braid(&bw("1 2"), 2),
            Err(Error::SplitIndexOutOfRange { k: 2, strands: 3 })
        );
        assert!(split_braid(&bw("1 2"), 0).is_err());
    }

    #[test]
    fn concat_examples() {
        let c = murasugi_concat(&bw("1"), &bw("1"), None).unwrap();
        assert_eq!(c.word, bw("1 2"));
        assert_eq!((c.split_index, c.gon_size), (1, 4));
        let c = murasugi_concat(&bw("1 1"), &bw("1 1"), None).unwrap();
        assert_eq!(c.word, bw("1 1 2 2"));
        assert_eq!(c.gon_size, 8);
        // degenerate inner summand
        let c = murasugi_concat(&BraidWord::identity(2), &bw("1 2 -1"), None).unwrap();
        assert_eq!(c.word.to_signed(), vec![2, 3, -2]);
        assert_eq!(c.gon_size, 4);
        assert_eq!(murasugi_concat(&BraidWord::identity(1), &bw("1"), None), Err(Error::NoSharedStrand));
    }

    #[test]
    fn concat_with_shuffle_round_trips() {
        let inner = bw("1 1 -1");
        let outer = bw("1 -1 1");
        let s: Shuffle = "010101".parse().unwrap();
        let c = murasugi_concat(&inner, &outer, Some(&s)).unwrap();
        assert_eq!(c.word.to_signed(), vec![1, 2, 1, -2, -1, 2]);
        assert_eq!(c.shuffle(), s);
        assert_eq!(split_braid(&c.word, 1).unwrap(), (outer, inner));
        assert!(murasugi_concat(&bw("1"), &bw("1"), Some(&"00".parse().unwrap())).is_err());
        assert!("01x".parse::<Shuffle>().is_err());
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&bw("1 -1")).is_empty());
        assert_eq!(free_reduce(&bw("1 2 -2 1")).to_signed(), vec![1, 1]);
        assert_eq!(free_reduce(&bw("1 2 -1")).to_signed(), vec![1, 2, -1]);
        assert_eq!(free_reduce(&bw("1 2 -2 1")).strands(), 3);
    }
}
