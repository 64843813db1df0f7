//! Constructions on braid words: descending-walk unknotting sets,
//! crossing changes recorded as twisted-annulus plumbings, and a search
//! harness that finds braid words realising a Murasugi sum of three
//! prescribed knots.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::braid::{murasugi_concat, split_braid, BraidWord, CompositeBraid, Letter, Shuffle, Sign};
use crate::error::{Error, Result};
use crate::invariants::{determinant_of_braid, identify, profile_of_braid, InvariantProfile};
use crate::knot_table::{canonical_name, KnotTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Positive,
    Negative,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Positive => "+",
            Side::Negative => "-",
        })
    }
}

/// An unknotted annulus with `full_twists` full twists plumbed on to
/// change one crossing. `R+` has side `Positive`, `R-` side `Negative`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistAnnulus {
    pub full_twists: i64,
    pub side: Side,
}

impl TwistAnnulus {
    pub fn new(full_twists: i64, side: Side) -> Self {
        assert!(full_twists != 0, "a twist annulus needs a nonzero twist");
        Self { full_twists, side }
    }

    /// Size of the polygon along which one annulus is plumbed.
    pub fn gon_contribution(&self) -> u64 {
        4
    }

    /// The annulus that turns a crossing of sign `from` into its opposite.
    pub fn for_flip(from: Sign) -> Self {
        match from.flipped() {
            Sign::Positive => Self::new(1, Side::Positive),
            Sign::Negative => Self::new(-1, Side::Negative),
        }
    }
}

impl fmt::Display for TwistAnnulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}({:+})", self.side, self.full_twists)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Visit {
    Over,
    Under,
}

/// Walks the closed braid from the top of strand position `basepoint`
/// (1-based), returning for each letter the kind of its first visit.
fn first_visits(w: &BraidWord, basepoint: usize) -> Result<Vec<Visit>> {
    let components = w.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    if basepoint == 0 || basepoint > w.strands() {
        return Err(Error::InvalidBasepoint { basepoint, strands: w.strands() });
    }
    let mut first = vec![None; w.len()];
    let mut pos = basepoint;
    for _ in 0..w.strands() {
        for (i, l) in w.letters().iter().enumerate() {
            let visit = if pos == l.index {
                pos += 1;
                // the strand from position i goes over in σ_i^+
                if l.sign == Sign::Positive { Visit::Over } else { Visit::Under }
            } else if pos == l.index + 1 {
                pos -= 1;
                if l.sign == Sign::Positive { Visit::Under } else { Visit::Over }
            } else {
                continue;
            };
            first[i].get_or_insert(visit);
        }
    }
    debug_assert_eq!(pos, basepoint);
    Ok(first.into_iter().map(|v| v.expect("a knot walk visits every crossing")).collect())
}

/// Letters whose first visit, walking from the top of `basepoint`, is on
/// the under-strand. Flipping them makes the diagram descending, so the
/// closure becomes the unknot.
///
/// Walking the other way selects exactly the complement, which is equally
/// valid; the smaller of the two sets is returned, so its size never
/// exceeds half the letters.
pub fn unknotting_crossing_set(w: &BraidWord, basepoint: usize) -> Result<BTreeSet<usize>> {
    let visits = first_visits(w, basepoint)?;
    let under: BTreeSet<usize> = (0..w.len()).filter(|&i| visits[i] == Visit::Under).collect();
    if 2 * under.len() > w.len() {
        Ok((0..w.len()).filter(|i| !under.contains(i)).collect())
    } else {
        Ok(under)
    }
}

/// `true` if walking from `basepoint` in either direction meets every
/// crossing first on the over-strand.
pub fn is_descending(w: &BraidWord, basepoint: usize) -> Result<bool> {
    let visits = first_visits(w, basepoint)?;
    Ok(visits.iter().all(|&v| v == Visit::Over) || visits.iter().all(|&v| v == Visit::Under))
}

/// Flips the signs at `positions` (a repeated position flips twice) and
/// records one twisted annulus per flip.
pub fn apply_crossing_changes(w: &BraidWord, positions: &[usize]) -> Result<(BraidWord, Vec<TwistAnnulus>)> {
    let mut word = w.clone();
    let mut annuli = Vec::with_capacity(positions.len());
    for &p in positions {
        let from = word
            .letters()
            .get(p)
            .ok_or(Error::PositionOutOfRange { position: p, len: w.len() })?
            .sign;
        word = word.with_flip(p)?;
        annuli.push(TwistAnnulus::for_flip(from));
    }
    Ok((word, annuli))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknotCertificate {
    /// The diagram is descending from some basepoint, hence an unknot.
    CertifiedDescending,
    /// `Δ = 1`, `σ = 0`, `det = 1`; not a proof.
    InvariantConsistent,
    Inconsistent,
}

impl fmt::Display for UnknotCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknotCertificate::CertifiedDescending => "certified_descending",
            UnknotCertificate::InvariantConsistent => "invariant_consistent",
            UnknotCertificate::Inconsistent => "inconsistent",
        })
    }
}

pub fn certify_unknot(w: &BraidWord) -> UnknotCertificate {
    if w.components() == 1 && (1..=w.strands()).any(|b| is_descending(w, b).unwrap_or(false)) {
        return UnknotCertificate::CertifiedDescending;
    }
    if profile_of_braid(w).is_unknot_consistent() {
        UnknotCertificate::InvariantConsistent
    } else {
        UnknotCertificate::Inconsistent
    }
}

/// Everything produced by unknotting a braid closure along the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknottingWitness {
    pub basepoint: usize,
    pub positions: BTreeSet<usize>,
    pub flipped: BraidWord,
    pub annuli: Vec<TwistAnnulus>,
    pub flipped_profile: InvariantProfile,
    pub certificate: UnknotCertificate,
}

pub fn unknotting_witness(w: &BraidWord, basepoint: usize) -> Result<UnknottingWitness> {
    let positions = unknotting_crossing_set(w, basepoint)?;
    let list: Vec<usize> = positions.iter().copied().collect();
    let (flipped, annuli) = apply_crossing_changes(w, &list)?;
    Ok(UnknottingWitness {
        basepoint,
        certificate: certify_unknot(&flipped),
        flipped_profile: profile_of_braid(&flipped),
        positions,
        flipped,
        annuli,
    })
}

/// Which closure of a triple is meant: `K1` is the outer summand, `K2`
/// the inner summand and `K3` the composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleRole {
    K1,
    K2,
    K3,
}

impl fmt::Display for TripleRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleRole::K1 => "K1 (outer summand)",
            TripleRole::K2 => "K2 (inner summand)",
            TripleRole::K3 => "K3 (composite)",
        })
    }
}

/// A braid word whose closure `K3` is a Murasugi sum of the closures `K1`
/// and `K2` of its two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleWitness {
    pub composite: CompositeBraid,
    /// `W1`: letters of index `> k`, reindexed.
    pub outer: BraidWord,
    /// `W2`: letters of index `<= k`.
    pub inner: BraidWord,
    /// Profiles of `K1`, `K2`, `K3` in that order.
    pub profiles: [InvariantProfile; 3],
    /// Table names matching each profile.
    pub names: [Vec<String>; 3],
    /// Set when the shared circle carries no band feet.
    pub degenerate: bool,
}

impl TripleWitness {
    pub fn gon_size(&self) -> usize {
        self.composite.gon_size
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleFailure {
    /// `None` when the split itself failed.
    pub role: Option<TripleRole>,
    pub reason: String,
    pub gon_size: Option<usize>,
}

impl fmt::Display for TripleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Some(r) => write!(f, "{r}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleOutcome {
    Witness(Box<TripleWitness>),
    Failure(TripleFailure),
}

/// Splits `w3` at `k`, profiles all three closures and checks each against
/// the expected names `[K1, K2, K3]`.
pub fn verify_triple(w3: &BraidWord, k: usize, expected: [&str; 3]) -> TripleOutcome {
    let composite = match CompositeBraid::from_word(w3.clone(), k) {
        Ok(c) => c,
        Err(e) => return TripleOutcome::Failure(TripleFailure { role: None, reason: e.to_string(), gon_size: None }),
    };
    let (outer, inner) = split_braid(w3, k).expect("split index already validated");
    let profiles = [profile_of_braid(&outer), profile_of_braid(&inner), profile_of_braid(w3)];
    let roles = [TripleRole::K1, TripleRole::K2, TripleRole::K3];
    let names = profiles.clone().map(|p| identify(&p));
    for i in 0..3 {
        let fail = |reason: String| {
            TripleOutcome::Failure(TripleFailure { role: Some(roles[i]), reason, gon_size: Some(composite.gon_size) })
        };
        if !profiles[i].is_knot() {
            return fail(format!("closure has {} components", profiles[i].components));
        }
        let want = canonical_name(expected[i]);
        if !names[i].iter().any(|n| n == want) {
            let got = if names[i].is_empty() { "no table knot".to_string() } else { names[i].join(", ") };
            return fail(format!("expected {want}, profile matches {got}"));
        }
    }
    TripleOutcome::Witness(Box::new(TripleWitness {
        degenerate: composite.gon_size == 0,
        composite,
        outer,
        inner,
        profiles,
        names,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total letters of the composite word.
    pub max_letters: usize,
    /// Strands of the composite word (at least 3).
    pub max_strands: usize,
    /// Stop after the first length level that reaches this many witnesses.
    pub max_witnesses: usize,
    /// Composite words examined, across all levels.
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_letters: 10, max_strands: 5, max_witnesses: 8, max_states: 2_000_000 }
    }
}

impl fmt::Display for SearchBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "letters <= {}, strands <= {}, witnesses <= {}, states <= {}",
            self.max_letters, self.max_strands, self.max_witnesses, self.max_states
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub witnesses: Vec<TripleWitness>,
    pub states_explored: usize,
    /// Set when the state budget stopped the search early.
    pub budget_exhausted: bool,
    pub budget: SearchBudget,
}

/// All freely reduced words of length `len` on `strands` strands.
fn reduced_words(strands: usize, len: usize) -> Vec<BraidWord> {
    let alphabet: Vec<Letter> = (1..strands)
        .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
        .collect();
    let mut words = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                alphabet
                    .iter()
                    .filter(|&&l| w.last() != Some(&l.inverse()))
                    .map(|&l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    words
        .into_iter()
        .map(|letters| BraidWord::new(strands, letters).expect("letters within range"))
        .collect()
}

/// Shuffles of `a` inner and `b` outer letters in lexicographic order.
fn shuffles(a: usize, b: usize) -> Vec<Shuffle> {
    fn go(a: usize, b: usize, prefix: &mut Vec<bool>, out: &mut Vec<Shuffle>) {
        if a == 0 && b == 0 {
            out.push(Shuffle(prefix.clone()));
            return;
        }
        for (take_outer, left) in [(false, a), (true, b)] {
            if left > 0 {
                prefix.push(take_outer);
                if take_outer { go(a, b - 1, prefix, out) } else { go(a - 1, b, prefix, out) }
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(a, b, &mut Vec::new(), &mut out);
    out
}

/// Orders by length, strands, split index, then letters by index with
/// `σ_i` before `σ_i^-1`.
fn sort_key(w: &TripleWitness) -> (usize, usize, usize, Vec<(usize, bool)>) {
    let c = &w.composite;
    let letters = c.word.letters().iter().map(|l| (l.index, l.sign == Sign::Negative)).collect();
    (c.word.len(), c.word.strands(), c.split_index, letters)
}

/// Enumerates composite braids `murasugi_concat(inner, outer, shuffle)`
/// whose outer closure is `K1`, inner closure `K2` and whole closure `K3`.
///
/// Words are enumerated by total length. At each length every strand count
/// and split index is tried, with all freely reduced summand words that
/// close to the right knots and all of their shuffles. The search stops
/// after the first length at which `max_witnesses` is reached; witnesses
/// are sorted by (length, strands, split index, word), so the output does
/// not depend on thread scheduling.
pub fn search_triples(targets: [&str; 3], budget: SearchBudget) -> Result<SearchReport> {
    let table = KnotTable::builtin();
    let entries: Vec<_> = targets.iter().map(|t| table.lookup(t)).collect::<Result<_>>()?;
    let names: Vec<String> = entries.iter().map(|e| e.name.clone()).collect();
    let dets: Vec<u64> = entries.iter().map(|e| e.profile.determinant).collect();

    // closures of candidate summand words, keyed by (strands, letters, role)
    let mut cache: HashMap<(usize, usize, usize), Vec<BraidWord>> = HashMap::new();
    let mut candidates = |strands: usize, len: usize, role: usize| -> Vec<BraidWord> {
        let (name, det) = (names[role].as_str(), dets[role]);
        cache
            .entry((strands, len, role))
            .or_insert_with(|| {
                reduced_words(strands, len)
                    .into_par_iter()
                    .filter(|w| {
                        w.components() == 1
                            && determinant_of_braid(w) == det
                            && identify(&profile_of_braid(w)).iter().any(|n| n == name)
                    })
                    .collect()
            })
            .clone()
    };

    let mut witnesses = Vec::new();
    let mut states = 0usize;
    let mut exhausted = false;
    'levels: for total in 0..=budget.max_letters {
        let mut jobs = Vec::new();
        for strands in 3..=budget.max_strands {
            for k in 1..=strands - 2 {
                for inner_len in 0..=total {
                    let outer_len = total - inner_len;
                    let inner = candidates(k + 1, inner_len, 1);
                    if inner.is_empty() {
                        continue;
                    }
                    let outer = candidates(strands - k, outer_len, 0);
                    for i in &inner {
                        for o in &outer {
                            jobs.push((i.clone(), o.clone()));
                        }
                    }
                }
            }
        }
        let per_job: Vec<usize> = jobs.iter().map(|(i, o)| binomial(i.len() + o.len(), i.len())).collect();
        let level_states: usize = per_job.iter().sum();
        if states + level_states > budget.max_states {
            exhausted = true;
            break 'levels;
        }
        states += level_states;
        let expected = [names[0].as_str(), names[1].as_str(), names[2].as_str()];
        let k3_det = dets[2];
        let mut found: Vec<TripleWitness> = jobs
            .par_iter()
            .flat_map_iter(|(inner, outer)| {
                shuffles(inner.len(), outer.len()).into_iter().filter_map(move |s| {
                    let c = murasugi_concat(inner, outer, Some(&s)).ok()?;
                    if !c.word.is_freely_reduced() || c.word.components() != 1 || determinant_of_braid(&c.word) != k3_det {
                        return None;
                    }
                    if !identify(&profile_of_braid(&c.word)).iter().any(|n| n == expected[2]) {
                        return None;
                    }
                    match verify_triple(&c.word, c.split_index, expected) {
                        TripleOutcome::Witness(w) => Some(*w),
                        TripleOutcome::Failure(_) => None,
                    }
                })
            })
            .collect();
        found.sort_by_key(sort_key);
        witnesses.extend(found);
        if witnesses.len() >= budget.max_witnesses {
            witnesses.truncate(budget.max_witnesses);
            break;
        }
    }
    Ok(SearchReport { witnesses, states_explored: states, budget_exhausted: exhausted, budget })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_walk() {
        let w = bw("1 1 1");
        let set = unknotting_crossing_set(&w, 1).unwrap();
        assert_eq!(set.len(), 1);
        let (flipped, annuli) = apply_crossing_changes(&w, &set.iter().copied().collect::<Vec<_>>()).unwrap();
        assert!(profile_of_braid(&flipped).is_unknot_consistent());
        assert_eq!(annuli, vec![TwistAnnulus::new(-1, Side::Negative)]);
        assert_eq!(certify_unknot(&flipped), UnknotCertificate::CertifiedDescending);
    }

    #[test]
    fn descending_input() {
        let w = bw("1");
        assert!(unknotting_crossing_set(&w, 1).unwrap().is_empty());
        assert!(is_descending(&w, 1).unwrap());
    }

    #[test]
    fn figure_eight_walk() {
        let w = bw("1 -2 1 -2");
        let wit = unknotting_witness(&w, 1).unwrap();
        assert!(!wit.positions.is_empty());
        assert!(wit.flipped_profile.is_unknot_consistent());
    }

    #[test]
    fn walk_rejects_links_and_bad_basepoints() {
        assert_eq!(unknotting_crossing_set(&bw("1 1"), 1), Err(Error::NotAKnot { components: 2 }));
        assert_eq!(
            unknotting_crossing_set(&bw("1 1 1"), 3),
            Err(Error::InvalidBasepoint { basepoint: 3, strands: 2 })
        );
    }

    #[test]
    fn crossing_changes() {
        let w = bw("1 1 1");
        let (f, rec) = apply_crossing_changes(&w, &[0]).unwrap();
        assert_eq!(f.to_string(), "-1 1 1");
        assert_eq!(crate::braid::free_reduce(&f).to_string(), "1");
        assert_eq!(rec.len(), 1);
        let (back, _) = apply_crossing_changes(&f, &[0]).unwrap();
        assert_eq!(back, w);
        assert_eq!(apply_crossing_changes(&w, &[]).unwrap(), (w.clone(), vec![]));
        assert!(apply_crossing_changes(&w, &[3]).is_err());
    }

    #[test]
    fn verify_examples() {
        match verify_triple(&bw("1 2"), 1, ["O", "O", "O"]) {
            TripleOutcome::Witness(w) => assert_eq!(w.gon_size(), 4),
            TripleOutcome::Failure(f) => panic!("{f}"),
        }
        match verify_triple(&bw("1 2 1 2"), 1, ["O", "O", "4_1"]) {
            TripleOutcome::Failure(f) => assert!(matches!(f.role, Some(TripleRole::K1 | TripleRole::K2))),
            TripleOutcome::Witness(_) => panic!("outer split closes to a link"),
        }
        assert!(matches!(verify_triple(&bw("1 1 1"), 1, ["O", "O", "O"]), TripleOutcome::Failure(TripleFailure { role: None, .. })));
    }

    #[test]
    fn enumeration_helpers() {
        assert_eq!(reduced_words(2, 3).len(), 2);
        assert_eq!(reduced_words(3, 2).len(), 4 * 3);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(2, 1)[0].to_string(), "001");
        assert_eq!(binomial(10, 5), 252);
    }

    #[test]
    fn search_unknot_triple() {
        let r = search_triples(["O", "O", "O"], SearchBudget { max_letters: 2, max_witnesses: 1, ..Default::default() })
            .unwrap();
        assert_eq!(r.witnesses[0].composite.word.to_string(), "1 2");
    }
}
