//! Embedded reference table of small knots.
//!
//! The table is a plain-text file (`data/knot_table.txt`) with one
//! `|`-separated record per knot:
//!
//! ```text
//! name | crossings | braid | u | e | det | signature | alexander | source
//! ```
//!
//! Every cached invariant is recomputed from the braid word when the
//! table is loaded, and loading fails on any mismatch.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::braid::{parse_braid, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::{profile_of_braid, InvariantProfile};
use crate::laurent::LaurentPolynomial;

const BUILTIN: &str = include_str!("../data/knot_table.txt");

pub const UNKNOT: &str = "unknot";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub crossings: u32,
    pub braid: BraidWord,
    /// Unknotting number.
    pub u: u32,
    /// Nakanishi index, if recorded.
    pub e: Option<u32>,
    pub profile: InvariantProfile,
    pub source: String,
}

/// Result of load-time checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: usize,
    /// Entries whose `u <= 1` is witnessed by a single letter flip of the
    /// table braid that gives an unknot-consistent closure.
    pub single_flip_witnessed: Vec<String>,
    /// `u = 1` entries whose table braid admits no such flip. Not an error:
    /// the unknotting crossing need not appear in this particular diagram.
    pub single_flip_unwitnessed: Vec<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} entries validated (profiles recomputed, names and fingerprints unique)", self.entries)?;
        writeln!(f, "u <= 1 witnessed by a single flip: {}", self.single_flip_witnessed.join(", "))?;
        write!(f, "u = 1 not witnessed in the table diagram: {}", list_or_none(&self.single_flip_unwitnessed))
    }
}

fn list_or_none(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

#[derive(Clone, Debug)]
pub struct KnotTable {
    entries: Vec<KnotTableEntry>,
    by_name: HashMap<String, usize>,
    report: ValidationReport,
}

/// Maps accepted aliases of the unknot to its table name.
pub fn canonical_name(name: &str) -> &str {
    match name.trim() {
        "O" | "0_1" | "unknot" => UNKNOT,
        other => other,
    }
}

impl KnotTable {
    /// The validated table shipped with the crate.
    pub fn builtin() -> &'static KnotTable {
        static TABLE: OnceLock<KnotTable> = OnceLock::new();
        TABLE.get_or_init(|| KnotTable::parse(BUILTIN).unwrap_or_else(|e| panic!("built-in knot table: {e}")))
    }

    /// Parses and validates a table file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            entries.push(parse_entry(line).map_err(|message| Error::InvalidData { line: n + 1, message })?);
        }
        Self::from_entries(entries)
    }

    fn from_entries(entries: Vec<KnotTableEntry>) -> Result<Self> {
        let mut by_name = HashMap::new();
        let mut report = ValidationReport { entries: entries.len(), ..Default::default() };
        for (i, e) in entries.iter().enumerate() {
            if by_name.insert(e.name.clone(), i).is_some() {
                return Err(Error::TableValidation(format!("duplicate name {}", e.name)));
            }
            let computed = profile_of_braid(&e.braid);
            if !computed.is_knot() {
                return Err(Error::TableValidation(format!(
                    "{}: braid closes to {} components",
                    e.name, computed.components
                )));
            }
            if !computed.same_link_invariants(&e.profile) {
                return Err(Error::TableValidation(format!(
                    "{}: cached ({}) differs from computed ({})",
                    e.name, e.profile, computed
                )));
            }
            // |σ|/2 <= u
            if computed.signature.unsigned_abs() > 2 * u64::from(e.u) {
                return Err(Error::TableValidation(format!(
                    "{}: u = {} is below the signature bound |σ|/2 = {}",
                    e.name,
                    e.u,
                    computed.signature.abs() / 2
                )));
            }
            if e.u == 1 {
                if single_flip_unknots(&e.braid) {
                    report.single_flip_witnessed.push(e.name.clone());
                } else {
                    report.single_flip_unwitnessed.push(e.name.clone());
                }
            }
        }
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                if a.profile.matches_up_to_mirror(&b.profile) {
                    return Err(Error::TableValidation(format!(
                        "{} and {} share the fingerprint (det, |σ|, Δ)",
                        a.name, b.name
                    )));
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|mut e| {
                e.profile = profile_of_braid(&e.braid);
                e
            })
            .collect();
        Ok(Self { entries, by_name, report })
    }

    pub fn entries(&self) -> &[KnotTableEntry] {
        &self.entries
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Looks up a knot by name; `O` and `0_1` are accepted for the unknot.
    pub fn lookup(&self, name: &str) -> Result<&KnotTableEntry> {
        self.by_name
            .get(canonical_name(name))
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownKnot(name.to_string()))
    }

    /// Names of entries matching `p` up to mirror image. Empty for links.
    pub fn match_profile(&self, p: &InvariantProfile) -> Vec<String> {
        if !p.is_knot() {
            return Vec::new();
        }
        self.entries
            .iter()
            .filter(|e| e.profile.matches_up_to_mirror(p))
            .map(|e| e.name.clone())
            .collect()
    }
}

fn single_flip_unknots(w: &BraidWord) -> bool {
    (0..w.len()).any(|i| {
        w.with_flip(i)
            .map(|f| profile_of_braid(&f).is_unknot_consistent())
            .unwrap_or(false)
    })
}

fn parse_entry(line: &str) -> std::result::Result<KnotTableEntry, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    let [name, crossings, braid, u, e, det, signature, alexander, source] = fields[..] else {
        return Err(format!("expected 9 `|`-separated fields, found {}", fields.len()));
    };
    let num = |field: &str, what: &str| field.parse::<i64>().map_err(|_| format!("bad {what} `{field}`"));
    let braid = parse_braid(braid, None).map_err(|e| e.to_string())?;
    let alexander = LaurentPolynomial::from_pairs_str(alexander).map_err(|e| e.to_string())?;
    let e = match e {
        "-" => None,
        v => Some(num(v, "e")? as u32),
    };
    let determinant = num(det, "det")?;
    let profile = InvariantProfile {
        alexander,
        signature: num(signature, "signature")?,
        determinant: u64::try_from(determinant).map_err(|_| "negative det".to_string())?,
        canonical_genus_bound: 0,
        components: 1,
    };
    Ok(KnotTableEntry {
        name: name.to_string(),
        crossings: num(crossings, "crossing number")? as u32,
        braid,
        u: u32::try_from(num(u, "u")?).map_err(|_| "negative u".to_string())?,
        e,
        profile,
        source: source.to_string(),
    })
}
