//! Linear plumbings `S[a1, …, an]` of unknotted annuli and the boundary
//! preserving rewrite calculus on them.
//!
//! Rules, with `~` meaning "same boundary link":
//!
//! 1. `S[a…] ⋆4 S[b…] = S[a…, b…]` (plumbing concatenates);
//! 2. `S[a1…an] ~ S[a1…an, x, 0]` for any even `x`;
//! 3. `S[…, ai, 0, a(i+2), …] ~ S[…, ai + a(i+2), …]`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::invariants::{profile_from_seifert, InvariantProfile, SeifertMatrix};
use crate::knot_table::KnotTable;

/// `S[a1, …, an]`: the `i`th annulus carries `ai` half-twists, all `ai` even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlumbingWord {
    twists: Vec<i64>,
}

impl PlumbingWord {
    pub fn new(twists: Vec<i64>) -> Result<Self> {
        if let Some(&odd) = twists.iter().find(|a| a.is_odd()) {
            return Err(Error::OddTwist(odd));
        }
        Ok(Self { twists })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    /// The plumbing is a minimal genus surface iff no annulus is untwisted.
    pub fn is_minimal_genus(&self) -> bool {
        self.twists.iter().all(|&a| a != 0)
    }

    /// Seifert matrix of the plumbing: `-ai/2` on the diagonal (positive
    /// twists give positive crossings) and a single `1` above the diagonal
    /// for each plumbed pair.
    pub fn seifert_matrix(&self) -> SeifertMatrix {
        let n = self.len();
        let mut v = vec![vec![0i64; n]; n];
        for (i, &a) in self.twists.iter().enumerate() {
            v[i][i] = -a / 2;
            if i + 1 < n {
                v[i][i + 1] = 1;
            }
        }
        SeifertMatrix::new(v, 1)
    }
}

impl FromStr for PlumbingWord {
    type Err = Error;

    /// Parses `S[2,2,-2,0]`; whitespace and `−` are tolerated, the `S` is optional.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('−', "-");
        let body = norm.strip_prefix('S').unwrap_or(&norm).trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected S[a1,...,an], got `{s}`")))?;
        let twists = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad twist `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(twists)
    }
}

impl fmt::Display for PlumbingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.twists.iter().map(i64::to_string).collect();
        write!(f, "S[{}]", parts.join(","))
    }
}

/// Rule (1): plumbing along a 4-gon concatenates the twist lists.
pub fn star4(p: &PlumbingWord, q: &PlumbingWord) -> PlumbingWord {
    let mut twists = p.twists.clone();
    twists.extend_from_slice(&q.twists);
    PlumbingWord { twists }
}

/// Rule (2): `forward` appends `(a, 0)`; backward removes a trailing `(x, 0)`.
pub fn apply_rule2(p: &PlumbingWord, a: i64, forward: bool) -> Result<PlumbingWord> {
    if forward {
        if a.is_odd() {
            return Err(Error::OddTwist(a));
        }
        let mut twists = p.twists.clone();
        twists.extend([a, 0]);
        Ok(PlumbingWord { twists })
    } else {
        let n = p.len();
        if n < 2 || p.twists[n - 1] != 0 {
            return Err(Error::RuleNotApplicable(format!("{p} does not end in (x, 0)")));
        }
        Ok(PlumbingWord { twists: p.twists[..n - 2].to_vec() })
    }
}

/// Rule (3): merges `a[i]` and `a[i+2]` across the zero at `i + 1` (0-based).
pub fn apply_rule3(p: &PlumbingWord, i: usize) -> Result<PlumbingWord> {
    if i + 2 >= p.len() || p.twists[i + 1] != 0 {
        return Err(Error::RuleNotApplicable(format!("{p} has no interior zero at position {}", i + 1)));
    }
    let mut twists = p.twists[..i].to_vec();
    twists.push(p.twists[i] + p.twists[i + 2]);
    twists.extend_from_slice(&p.twists[i + 3..]);
    Ok(PlumbingWord { twists })
}

/// Inverse of rule (3): replaces `a[i]` by `(left, 0, a[i] - left)`.
pub fn apply_rule3_inverse(p: &PlumbingWord, i: usize, left: i64) -> Result<PlumbingWord> {
    if i >= p.len() {
        return Err(Error::PositionOutOfRange { position: i, len: p.len() });
    }
    if left.is_odd() {
        return Err(Error::OddTwist(left));
    }
    let mut twists = p.twists[..i].to_vec();
    twists.extend([left, 0, p.twists[i] - left]);
    twists.extend_from_slice(&p.twists[i + 1..]);
    Ok(PlumbingWord { twists })
}

/// Invariant profile of the boundary link of the plumbing.
pub fn boundary_profile(p: &PlumbingWord) -> InvariantProfile {
    let v = p.seifert_matrix();
    let components = v.boundary_components_if_connected();
    // χ = 1 - n = 2 - 2g - components
    let genus = (p.len() + 1 - components) / 2;
    profile_from_seifert(&v, components, genus as u64)
}

/// One boundary-preserving rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteStep {
    /// Rule 2: append `(twist, 0)`.
    AppendPair { twist: i64 },
    /// Rule 2 inverse: drop a trailing `(x, 0)`.
    RemovePair,
    /// Rule 3 at `position`.
    MergeAcrossZero { position: usize },
    /// Rule 3 inverse at `position`.
    SplitAtZero { position: usize, left: i64 },
}

impl RewriteStep {
    pub fn rule_id(&self) -> &'static str {
        match self {
            RewriteStep::AppendPair { .. } => "2",
            RewriteStep::RemovePair => "2^-1",
            RewriteStep::MergeAcrossZero { .. } => "3",
            RewriteStep::SplitAtZero { .. } => "3^-1",
        }
    }

    pub fn apply(&self, p: &PlumbingWord) -> Result<PlumbingWord> {
        match *self {
            RewriteStep::AppendPair { twist } => apply_rule2(p, twist, true),
            RewriteStep::RemovePair => apply_rule2(p, 0, false),
            RewriteStep::MergeAcrossZero { position } => apply_rule3(p, position),
            RewriteStep::SplitAtZero { position, left } => apply_rule3_inverse(p, position, left),
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteStep::AppendPair { twist } => write!(f, "rule 2 (append {twist},0)"),
            RewriteStep::RemovePair => write!(f, "rule 2^-1 (drop trailing pair)"),
            RewriteStep::MergeAcrossZero { position } => write!(f, "rule 3 at {position}"),
            RewriteStep::SplitAtZero { position, left } => write!(f, "rule 3^-1 at {position} (left {left})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: PlumbingWord,
    pub end: PlumbingWord,
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    /// Replays every step from `start` and returns the intermediate words
    /// including both ends.
    pub fn replay(&self) -> Result<Vec<PlumbingWord>> {
        let mut words = vec![self.start.clone()];
        for step in &self.steps {
            let next = step.apply(words.last().unwrap())?;
            words.push(next);
        }
        Ok(words)
    }

    pub fn is_consistent(&self) -> bool {
        self.replay().is_ok_and(|w| w.last() == Some(&self.end))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteBudget {
    pub max_len: usize,
    pub max_twist: i64,
    pub max_states: usize,
}

impl Default for RewriteBudget {
    fn default() -> Self {
        Self { max_len: 10, max_twist: 8, max_states: 1_000_000 }
    }
}

impl fmt::Display for RewriteBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "length <= {}, |twist| <= {}, states <= {}", self.max_len, self.max_twist, self.max_states)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteOutcome {
    Found(RewriteTrace),
    NotFound { states_explored: usize, budget: RewriteBudget, reason: String },
}

/// Breadth-first search over rules 2 and 3 and their inverses for a
/// minimal-genus word (no zero twists) whose boundary profile matches
/// `target`.
///
/// Moves are generated in a fixed order (merges by position, pair removal,
/// splits by position then left twist, pair appends by twist), so the
/// returned trace is deterministic and of minimal length. Because the
/// rules preserve the boundary, a start whose profile differs from the
/// target is rejected without searching.
pub fn rewrite_search(start: &PlumbingWord, target: &InvariantProfile, budget: RewriteBudget) -> RewriteOutcome {
    let matches = |w: &PlumbingWord| w.is_minimal_genus() && boundary_profile(w).same_link_invariants(target);

    if !boundary_profile(start).same_link_invariants(target) {
        return RewriteOutcome::NotFound {
            states_explored: 0,
            budget,
            reason: format!("boundary of {start} does not match the target profile; rewrites preserve it"),
        };
    }
    if start.is_minimal_genus() {
        return RewriteOutcome::Found(RewriteTrace { start: start.clone(), end: start.clone(), steps: vec![] });
    }

    struct Node {
        word: PlumbingWord,
        parent: usize,
        step: Option<RewriteStep>,
    }
    let mut nodes = vec![Node { word: start.clone(), parent: 0, step: None }];
    let mut seen: HashSet<PlumbingWord> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([0usize]);
    let within = |w: &PlumbingWord| w.len() <= budget.max_len && w.twists.iter().all(|a| a.abs() <= budget.max_twist);

    while let Some(idx) = queue.pop_front() {
        let word = nodes[idx].word.clone();
        for step in candidate_steps(&word, &budget) {
            if nodes.len() >= budget.max_states {
                return RewriteOutcome::NotFound {
                    states_explored: nodes.len(),
                    budget,
                    reason: "state budget exhausted".into(),
                };
            }
            let Ok(next) = step.apply(&word) else { continue };
            if !within(&next) || !seen.insert(next.clone()) {
                continue;
            }
            nodes.push(Node { word: next.clone(), parent: idx, step: Some(step) });
            if matches(&next) {
                let mut steps = Vec::new();
                let mut at = nodes.len() - 1;
                while let Some(s) = nodes[at].step {
                    steps.push(s);
                    at = nodes[at].parent;
                }
                steps.reverse();
                return RewriteOutcome::Found(RewriteTrace { start: start.clone(), end: next, steps });
            }
            queue.push_back(nodes.len() - 1);
        }
    }
    RewriteOutcome::NotFound {
        states_explored: nodes.len(),
        budget,
        reason: "search space exhausted within the length and twist bounds".into(),
    }
}

fn candidate_steps(w: &PlumbingWord, budget: &RewriteBudget) -> Vec<RewriteStep> {
    let n = w.len();
    let twists = (-budget.max_twist..=budget.max_twist).filter(|a| a.is_even());
    let mut steps: Vec<RewriteStep> = (0..n.saturating_sub(2))
        .filter(|&i| w.twists[i + 1] == 0)
        .map(|position| RewriteStep::MergeAcrossZero { position })
        .collect();
    if n >= 2 && w.twists[n - 1] == 0 {
        steps.push(RewriteStep::RemovePair);
    }
    if n + 2 <= budget.max_len {
        for position in 0..n {
            for left in twists.clone() {
                steps.push(RewriteStep::SplitAtZero { position, left });
            }
        }
        steps.extend(twists.map(|twist| RewriteStep::AppendPair { twist }));
    }
    steps
}

/// Rewrites `p` to a minimal-genus word with the same boundary.
pub fn normalize(p: &PlumbingWord, budget: RewriteBudget) -> RewriteOutcome {
    rewrite_search(p, &boundary_profile(p), budget)
}

/// Outcome of searching towards a table knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSearch {
    pub target: String,
    /// Set when the boundary matches the mirror of the table entry, in
    /// which case the mirrored profile was the search target.
    pub mirrored: bool,
    pub outcome: RewriteOutcome,
}

/// [`rewrite_search`] towards the table knot `name`, accepting either
/// chirality.
pub fn search_to_knot(start: &PlumbingWord, name: &str, budget: RewriteBudget) -> Result<KnotSearch> {
    let entry = KnotTable::builtin().lookup(name)?;
    let here = boundary_profile(start);
    let mirrored = !here.same_link_invariants(&entry.profile) && here.same_link_invariants(&entry.profile.mirrored());
    let target = if mirrored { entry.profile.mirrored() } else { entry.profile.clone() };
    Ok(KnotSearch { target: entry.name.clone(), mirrored, outcome: rewrite_search(start, &target, budget) })
}

/// The two-bridge link `b(p, q)` bounded by a linear plumbing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoBridge {
    /// `p >= 0`; equals the boundary determinant.
    pub p: i64,
    /// `q` reduced into `[0, p)` (`q = 0` when `p <= 1`).
    pub q: i64,
    /// 1 for a knot (`p` odd), 2 otherwise.
    pub components: usize,
}

impl TwoBridge {
    pub fn is_knot(&self) -> bool {
        self.components == 1
    }
}

impl fmt::Display for TwoBridge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Continuant of `[a1, …, an]` under `a1 - 1/(a2 - 1/(… - 1/an))`.
fn minus_continuant(a: &[i64]) -> i64 {
    let (mut prev, mut cur) = (0i64, 1i64);
    for &x in a.iter().rev() {
        (prev, cur) = (cur, x * cur - prev);
    }
    cur
}

/// Evaluates the negative continued fraction `[a1, …, an]^-` as `p/q` with
/// `p = K(a1..an)`, `q = K(a2..an)`, then normalises `p >= 0` and reduces `q`.
pub fn two_bridge_fraction(w: &PlumbingWord) -> TwoBridge {
    let a = w.twists();
    let mut p = minus_continuant(a);
    let mut q = if a.is_empty() { 0 } else { minus_continuant(&a[1..]) };
    if p < 0 {
        p = -p;
        q = -q;
    }
    let q = if p <= 1 { 0 } else { q.rem_euclid(p) };
    TwoBridge { p, q, components: if p.is_odd() { 1 } else { 2 } }
}

/// Schubert's classification, mirror-insensitive:
/// `b(p, q) = b(p, q')` iff `q' ≡ ±q^{±1} (mod p)`.
pub fn schubert_equivalent(x: &TwoBridge, y: &TwoBridge) -> bool {
    if x.p != y.p {
        return false;
    }
    let p = x.p;
    if p <= 1 {
        return true;
    }
    let inv = mod_inverse(x.q, p);
    [Some(x.q), inv]
        .into_iter()
        .flatten()
        .any(|c| (c - y.q).rem_euclid(p) == 0 || (c + y.q).rem_euclid(p) == 0)
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> PlumbingWord {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("S[2,2,-2,0]").twists(), &[2, 2, -2, 0]);
        assert_eq!(s("S[2, −2]").to_string(), "S[2,-2]");
        assert_eq!(s("S[]"), PlumbingWord::empty());
        assert_eq!("S[3]".parse::<PlumbingWord>(), Err(Error::OddTwist(3)));
        assert!("S(2)".parse::<PlumbingWord>().is_err());
        assert!(s("S[2,4]").is_minimal_genus());
        assert!(!s("S[2,0]").is_minimal_genus());
    }

    #[test]
    fn star4_examples() {
        assert_eq!(star4(&s("S[2,2]"), &s("S[2,2]")), s("S[2,2,2,2]"));
        assert_eq!(star4(&s("S[2,0]"), &s("S[0,2]")), s("S[2,0,0,2]"));
        assert_eq!(star4(&s("S[]"), &s("S[2]")), s("S[2]"));
    }

    #[test]
    fn rule2_examples() {
        assert_eq!(apply_rule2(&s("S[2,2]"), -2, true).unwrap(), s("S[2,2,-2,0]"));
        assert_eq!(apply_rule2(&s("S[2,2,-2,0]"), 0, false).unwrap(), s("S[2,2]"));
        assert!(matches!(apply_rule2(&s("S[2]"), 0, false), Err(Error::RuleNotApplicable(_))));
        assert!(apply_rule2(&s("S[2]"), 1, true).is_err());
    }

    #[test]
    fn rule3_examples() {
        let once = apply_rule3(&s("S[2,0,0,2]"), 0).unwrap();
        assert_eq!(once, s("S[2,2]"));
        assert_eq!(apply_rule3(&s("S[2,2,0,2]"), 1).unwrap(), s("S[2,4]"));
        assert_eq!(apply_rule3(&s("S[2,-2,0,2]"), 1).unwrap(), s("S[2,0]"));
        assert!(apply_rule3(&s("S[2,2,0,2]"), 0).is_err());
        assert!(apply_rule3(&s("S[2,0]"), 0).is_err());
        assert_eq!(apply_rule3_inverse(&s("S[2,4]"), 1, 2).unwrap(), s("S[2,2,0,2]"));
    }

    #[test]
    fn boundary_profiles() {
        let p = boundary_profile(&s("S[2,2]"));
        assert_eq!((p.determinant, p.signature.abs(), p.components), (3, 2, 1));
        assert_eq!(p.signature, -2);
        assert_eq!(boundary_profile(&s("S[]")), InvariantProfile::unknot());
        let p = boundary_profile(&s("S[2,0]"));
        assert!(p.is_unknot_consistent());
        assert_eq!(boundary_profile(&s("S[2,-2]")).signature, 0);
        let link = boundary_profile(&s("S[2]"));
        assert_eq!((link.components, link.determinant), (2, 2));
    }

    #[test]
    fn two_bridge_examples() {
        assert_eq!(two_bridge_fraction(&s("S[2,2]")).p, 3);
        assert_eq!(two_bridge_fraction(&s("S[2,4]")).p, 7);
        assert_eq!(two_bridge_fraction(&s("S[2,2,2,2]")).p, 5);
        let hopf = two_bridge_fraction(&s("S[2]"));
        assert_eq!((hopf.p, hopf.components), (2, 2));
        assert!(schubert_equivalent(
            &two_bridge_fraction(&s("S[2,2]")),
            &two_bridge_fraction(&s("S[-2,-2]"))
        ));
        assert!(!schubert_equivalent(
            &two_bridge_fraction(&s("S[2,2,2,2]")),
            &two_bridge_fraction(&s("S[2,-2]"))
        ));
    }

    #[test]
    fn search_already_minimal() {
        let target = boundary_profile(&s("S[2,2]"));
        match rewrite_search(&s("S[2,2]"), &target, RewriteBudget::default()) {
            RewriteOutcome::Found(t) => assert!(t.steps.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn search_to_mirror_image() {
        let r = search_to_knot(&s("S[-2,0,0,-2]"), "3_1", RewriteBudget::default()).unwrap();
        assert!(r.mirrored);
        assert!(matches!(r.outcome, RewriteOutcome::Found(t) if t.end == s("S[-2,-2]")));
        assert!(search_to_knot(&s("S[2]"), "9_99", RewriteBudget::default()).is_err());
    }

    #[test]
    fn search_rejects_wrong_target() {
        let target = boundary_profile(&s("S[2,-2]"));
        assert!(matches!(
            rewrite_search(&s("S[2,2]"), &target, RewriteBudget::default()),
            RewriteOutcome::NotFound { states_explored: 0, .. }
        ));
    }
}
