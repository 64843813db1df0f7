//! Command-line front end. [`run`] parses arguments, calls the library and
//! renders the result as text or as versioned JSON.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use murasugi_core::braid::{closure_data, murasugi_concat, parse_braid, split_braid, BraidWord, Shuffle};
use murasugi_core::construction::{
    search_triples, unknotting_witness, verify_triple, SearchBudget, TripleOutcome, TripleWitness,
};
use murasugi_core::distance::{dm_interval, gon_merge, plan_for_knots, DMInterval, DistanceData, GonPlan, KnotInput};
use murasugi_core::invariants::{identify, profile_of_braid, InvariantProfile};
use murasugi_core::knot_table::KnotTable;
use murasugi_core::plumbing::{
    boundary_profile, normalize, search_to_knot, two_bridge_fraction, PlumbingWord, RewriteBudget, RewriteOutcome,
};
use murasugi_core::Error;

/// Version of the JSON output schema.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "murasugi", version, about = "Murasugi sums, plumbing rewrites and knot invariants")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,

    /// Distance data file replacing the built-in defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub data: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of a braid closure ("1 -2 1 -2") or plumbing boundary ("S[2,4]").
    Invariants {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Strand count for a braid (default: largest index + 1).
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Split a braid along Seifert circle k + 1.
    Split {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        #[arg(long = "at")]
        k: usize,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Murasugi-sum two braids: INNER keeps its indices, OUTER is shifted up.
    Concat {
        #[arg(allow_hyphen_values = true)]
        inner: String,
        #[arg(allow_hyphen_values = true)]
        outer: String,
        /// Interleaving as a 0/1 string (0 = inner letter, 1 = outer letter).
        #[arg(long)]
        shuffle: Option<String>,
    },
    /// Crossings to flip so the closure becomes a descending diagram.
    UnknotSet {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        /// Strand position (1-based) at whose top the walk starts.
        #[arg(long, default_value_t = 1)]
        basepoint: usize,
    },
    /// Bounds on the minimal Murasugi-sum size d_M(K1, K2; K3).
    DmBounds {
        k1: String,
        k2: String,
        k3: String,
        /// Also print the polygon plan behind the upper bound.
        #[arg(long)]
        plan: bool,
    },
    /// Linear plumbings S[a1,...,an].
    Plumbing {
        #[command(subcommand)]
        command: PlumbingCommand,
    },
    /// Check that a braid splits into the expected knots.
    VerifyTriple {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        #[arg(long = "at")]
        k: usize,
        /// Expected names K1,K2,K3 (outer summand, inner summand, composite).
        #[arg(long, value_delimiter = ',', required = true)]
        expect: Vec<String>,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Search for braids realising K3 as a Murasugi sum of K1 and K2.
    SearchTriples {
        k1: String,
        k2: String,
        k3: String,
        #[command(flatten)]
        budget: TripleBudgetArgs,
    },
    /// Merge polygon sizes sharing a summing disk.
    GonMerge {
        #[arg(required = true)]
        sizes: Vec<u64>,
        /// The boundary is a knot, so the merged polygon reduces.
        #[arg(long)]
        knot: bool,
    },
    /// List the knot table and its load-time validation report.
    Table,
}

#[derive(Subcommand, Debug)]
pub enum PlumbingCommand {
    /// Boundary invariants and two-bridge fraction.
    Boundary { word: String },
    /// Rewrite to a minimal-genus plumbing with the same boundary.
    Normalize {
        word: String,
        #[command(flatten)]
        budget: RewriteBudgetArgs,
    },
    /// Rewrite to a minimal-genus plumbing bounding a table knot.
    Search {
        word: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        budget: RewriteBudgetArgs,
    },
}

#[derive(Args, Debug)]
pub struct RewriteBudgetArgs {
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_twist: Option<i64>,
    #[arg(long)]
    max_states: Option<usize>,
}

impl RewriteBudgetArgs {
    fn budget(&self) -> RewriteBudget {
        let d = RewriteBudget::default();
        RewriteBudget {
            max_len: self.max_len.unwrap_or(d.max_len),
            max_twist: self.max_twist.unwrap_or(d.max_twist),
            max_states: self.max_states.unwrap_or(d.max_states),
        }
    }
}

#[derive(Args, Debug)]
pub struct TripleBudgetArgs {
    #[arg(long)]
    max_letters: Option<usize>,
    #[arg(long)]
    max_strands: Option<usize>,
    #[arg(long)]
    max_witnesses: Option<usize>,
    #[arg(long)]
    max_states: Option<usize>,
}

impl TripleBudgetArgs {
    fn budget(&self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            max_letters: self.max_letters.unwrap_or(d.max_letters),
            max_strands: self.max_strands.unwrap_or(d.max_strands),
            max_witnesses: self.max_witnesses.unwrap_or(d.max_witnesses),
            max_states: self.max_states.unwrap_or(d.max_states),
        }
    }
}

/// Exit status and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced: JSON body, human text, and whether the
/// verification or search it ran succeeded.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Output { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => {
                    let mut body = report.json;
                    body["version"] = json!(SCHEMA_VERSION);
                    body["ok"] = json!(report.ok);
                    format!("{}\n", serde_json::to_string_pretty(&body).expect("JSON values serialise"))
                }
                Format::Human => report.text,
            };
            Output { code: if report.ok { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Invariants { input, strands } => invariants(input, *strands),
        Command::Split { braid, k, strands } => split(&parse_braid(braid, *strands)?, *k),
        Command::Concat { inner, outer, shuffle } => concat(inner, outer, shuffle.as_deref()),
        Command::UnknotSet { braid, basepoint } => unknot_set(&parse_braid(braid, None)?, *basepoint),
        Command::DmBounds { k1, k2, k3, plan } => {
            let data = match &cli.data {
                Some(path) => DistanceData::load(path)?,
                None => DistanceData::builtin(),
            };
            dm_bounds(k1, k2, k3, *plan, &data)
        }
        Command::Plumbing { command } => match command {
            PlumbingCommand::Boundary { word } => plumbing_boundary(&word.parse()?),
            PlumbingCommand::Normalize { word, budget } => {
                let p: PlumbingWord = word.parse()?;
                Ok(rewrite_report(&normalize(&p, budget.budget()), None))
            }
            PlumbingCommand::Search { word, target, budget } => {
                let r = search_to_knot(&word.parse()?, target, budget.budget())?;
                Ok(rewrite_report(&r.outcome, Some((&r.target, r.mirrored))))
            }
        },
        Command::VerifyTriple { braid, k, expect, strands } => {
            let [k1, k2, k3] = expect.as_slice() else {
                return Err(Error::Parse(format!("--expect takes three names K1,K2,K3, got {}", expect.len())));
            };
            let w = parse_braid(braid, *strands)?;
            let names = [k1.as_str(), k2.as_str(), k3.as_str()];
            for n in names {
                KnotTable::builtin().lookup(n)?;
            }
            Ok(verify(&w, *k, names))
        }
        Command::SearchTriples { k1, k2, k3, budget } => search(k1, k2, k3, budget.budget()),
        Command::GonMerge { sizes, knot } => {
            let m = gon_merge(sizes, *knot)?;
            let sizes_text: Vec<String> = sizes.iter().map(u64::to_string).collect();
            Ok(Report::ok(
                json!({ "command": "gon-merge", "sizes": sizes, "knot_boundary": knot, "gon": m }),
                format!("{} -> {m}-gon{}\n", sizes_text.join(" + "), if *knot { " (knot boundary)" } else { "" }),
            ))
        }
        Command::Table => Ok(table()),
    }
}

pub fn braid_json(w: &BraidWord) -> Value {
    let c = closure_data(w);
    json!({
        "text": w.to_string(),
        "strands": w.strands(),
        "letters": w.to_signed(),
        "cycles": c.cycles,
        "components": c.components,
        "writhe": c.writhe,
        "euler_char": c.euler_char,
    })
}

pub fn profile_json(p: &InvariantProfile) -> Value {
    json!({
        "alexander": p.alexander.to_pairs_string(),
        "alexander_text": p.alexander.to_string(),
        "signature": p.signature,
        "determinant": p.determinant,
        "canonical_genus_bound": p.canonical_genus_bound,
        "components": p.components,
    })
}

fn profile_text(p: &InvariantProfile) -> String {
    let mut s = format!(
        "  alexander:   {}\n  signature:   {}\n  determinant: {}\n  genus bound: {}\n  components:  {}\n",
        p.alexander, p.signature, p.determinant, p.canonical_genus_bound, p.components
    );
    if p.is_knot() {
        s += &format!("  identified:  {}\n", names_text(&identify(p)));
    }
    s
}

fn names_text(names: &[String]) -> String {
    if names.is_empty() {
        "no table knot".into()
    } else {
        format!("{} (up to mirror image)", names.join(", "))
    }
}

fn invariants(input: &str, strands: Option<usize>) -> Result<Report, Error> {
    let trimmed = input.trim();
    if trimmed.starts_with('S') || trimmed.starts_with('[') {
        return plumbing_boundary(&trimmed.parse()?);
    }
    let w = parse_braid(trimmed, strands)?;
    let p = profile_of_braid(&w);
    let names = if p.is_knot() { identify(&p) } else { vec![] };
    Ok(Report::ok(
        json!({
            "command": "invariants",
            "braid": braid_json(&w),
            "profile": profile_json(&p),
            "identified": names,
        }),
        format!("braid {} on {} strands\n{}", w, w.strands(), profile_text(&p)),
    ))
}

fn split(w: &BraidWord, k: usize) -> Result<Report, Error> {
    let (outer, inner) = split_braid(w, k)?;
    let (po, pi) = (profile_of_braid(&outer), profile_of_braid(&inner));
    let side = |w: &BraidWord, p: &InvariantProfile| {
        json!({ "braid": braid_json(w), "profile": profile_json(p), "identified": identify(p) })
    };
    Ok(Report::ok(
        json!({ "command": "split", "k": k, "outer": side(&outer, &po), "inner": side(&inner, &pi) }),
        format!(
            "outer (W1, indices > {k}): {} on {} strands\n{}inner (W2, indices <= {k}): {} on {} strands\n{}",
            outer,
            outer.strands(),
            profile_text(&po),
            inner,
            inner.strands(),
            profile_text(&pi)
        ),
    ))
}

fn concat(inner: &str, outer: &str, shuffle: Option<&str>) -> Result<Report, Error> {
    let (wi, wo) = (parse_braid(inner, None)?, parse_braid(outer, None)?);
    let shuffle: Option<Shuffle> = shuffle.map(str::parse).transpose()?;
    let c = murasugi_concat(&wi, &wo, shuffle.as_ref())?;
    let p = profile_of_braid(&c.word);
    Ok(Report::ok(
        json!({
            "command": "concat",
            "word": braid_json(&c.word),
            "k": c.split_index,
            "gon_size": c.gon_size,
            "shuffle": c.shuffle().to_string(),
            "inner_letter_count": c.inner_letter_count,
            "outer_letter_count": c.outer_letter_count,
            "profile": profile_json(&p),
            "identified": identify(&p),
        }),
        format!(
            "{} on {} strands, k = {}, gon size {}\nshuffle {}\n{}",
            c.word,
            c.word.strands(),
            c.split_index,
            c.gon_size,
            c.shuffle(),
            profile_text(&p)
        ),
    ))
}

fn unknot_set(w: &BraidWord, basepoint: usize) -> Result<Report, Error> {
    let u = unknotting_witness(w, basepoint)?;
    let positions: Vec<usize> = u.positions.iter().copied().collect();
    let annuli: Vec<Value> =
        u.annuli.iter().map(|a| json!({ "full_twists": a.full_twists, "side": a.side.to_string() })).collect();
    let annuli_text: Vec<String> = u.annuli.iter().map(ToString::to_string).collect();
    Ok(Report::ok(
        json!({
            "command": "unknot-set",
            "braid": braid_json(w),
            "basepoint": basepoint,
            "positions": positions,
            "flipped": braid_json(&u.flipped),
            "annuli": annuli,
            "flipped_profile": profile_json(&u.flipped_profile),
            "certificate": u.certificate.to_string(),
        }),
        format!(
            "positions (0-based): {positions:?}\nflipped word: {}\nannuli: {}\ncertificate: {}\n",
            u.flipped,
            if annuli_text.is_empty() { "none".into() } else { annuli_text.join(" ") },
            u.certificate
        ),
    ))
}

fn interval_json(i: &DMInterval) -> Value {
    let steps: Vec<Value> = i
        .derivation
        .iter()
        .map(|s| json!({ "bound": s.bound, "value": s.value, "inputs": s.inputs }))
        .collect();
    json!({
        "lower": i.lower,
        "upper": i.upper,
        "connected_sum_status": i.status.to_string(),
        "derivation": steps,
        "notes": i.notes,
    })
}

fn plan_json(p: &GonPlan) -> Value {
    json!({
        "p": p.p,
        "q": p.q,
        "first_gon": p.first_gon,
        "second_gon": p.second_gon,
        "combined_gon": p.combined_gon,
        "final_gon": p.final_gon,
        "steps": p.steps,
    })
}

fn dm_bounds(k1: &str, k2: &str, k3: &str, plan: bool, data: &DistanceData) -> Result<Report, Error> {
    let (a, b, c) = (KnotInput::named(k1)?, KnotInput::named(k2)?, KnotInput::named(k3)?);
    let i = dm_interval(&a, &b, &c, data)?;
    let mut json = json!({
        "command": "dm-bounds",
        "knots": [a.name, b.name, c.name],
        "interval": interval_json(&i),
    });
    let mut text = format!("d_M({}, {}; {}) in {i}\nconnected sum: {}\n", a.name, b.name, c.name, i.status);
    for s in &i.derivation {
        text += &format!("  {s}\n");
    }
    for n in &i.notes {
        text += &format!("  note: {n}\n");
    }
    if plan {
        let p = plan_for_knots(&a, &b, &c, data)?;
        text += &format!("plan (p = {}, q = {}):\n", p.p, p.q);
        for s in &p.steps {
            text += &format!("  {s}\n");
        }
        json["plan"] = plan_json(&p);
    }
    Ok(Report::ok(json, text))
}

fn plumbing_boundary(p: &PlumbingWord) -> Result<Report, Error> {
    let prof = boundary_profile(p);
    let names = if prof.is_knot() { identify(&prof) } else { vec![] };
    let f = two_bridge_fraction(p);
    Ok(Report::ok(
        json!({
            "command": "plumbing-boundary",
            "word": p.to_string(),
            "minimal_genus": p.is_minimal_genus(),
            "profile": profile_json(&prof),
            "identified": names,
            "two_bridge": { "p": f.p, "q": f.q, "components": f.components },
        }),
        format!(
            "{p} (minimal genus: {})\n{}  two-bridge:  b({}, {})\n",
            p.is_minimal_genus(),
            profile_text(&prof),
            f.p,
            f.q
        ),
    ))
}

fn rewrite_report(outcome: &RewriteOutcome, target: Option<(&str, bool)>) -> Report {
    let target_json = target.map(|(name, mirrored)| json!({ "name": name, "mirrored": mirrored }));
    let target_text = target
        .map(|(name, m)| format!("target {name}{}\n", if m { " (mirror image)" } else { "" }))
        .unwrap_or_default();
    match outcome {
        RewriteOutcome::Found(t) => {
            let words = t.replay().expect("search traces replay");
            let steps: Vec<Value> = t
                .steps
                .iter()
                .zip(&words[1..])
                .map(|(s, w)| json!({ "rule": s.rule_id(), "step": s.to_string(), "result": w.to_string() }))
                .collect();
            let mut text = target_text;
            text += &format!("{}\n", t.start);
            for (s, w) in t.steps.iter().zip(&words[1..]) {
                text += &format!("  -> {w}   [{s}]\n");
            }
            let n = t.steps.len();
            text += &format!("end: {} ({n} step{})\n", t.end, if n == 1 { "" } else { "s" });
            Report::ok(
                json!({
                    "command": "plumbing-rewrite",
                    "found": true,
                    "target": target_json,
                    "start": t.start.to_string(),
                    "end": t.end.to_string(),
                    "steps": steps,
                }),
                text,
            )
        }
        RewriteOutcome::NotFound { states_explored, budget, reason } => Report {
            json: json!({
                "command": "plumbing-rewrite",
                "found": false,
                "target": target_json,
                "reason": reason,
                "states_explored": states_explored,
                "budget": { "max_len": budget.max_len, "max_twist": budget.max_twist, "max_states": budget.max_states },
            }),
            text: format!("{target_text}not found: {reason}\nstates explored: {states_explored}\nbudget: {budget}\n"),
            ok: false,
        },
    }
}

pub fn witness_json(w: &TripleWitness) -> Value {
    let c = &w.composite;
    json!({
        "word": braid_json(&c.word),
        "k": c.split_index,
        "gon_size": c.gon_size,
        "shuffle": c.shuffle().to_string(),
        "outer": w.outer.to_string(),
        "inner": w.inner.to_string(),
        "profiles": w.profiles.iter().map(profile_json).collect::<Vec<_>>(),
        "identified": w.names,
        "degenerate": w.degenerate,
    })
}

fn witness_text(w: &TripleWitness) -> String {
    let c = &w.composite;
    format!(
        "{} on {} strands, k = {}, gon size {}{}\n  K1 = closure of {}: {}\n  K2 = closure of {}: {}\n  K3: {}\n",
        c.word,
        c.word.strands(),
        c.split_index,
        c.gon_size,
        if w.degenerate { " (degenerate)" } else { "" },
        w.outer,
        names_text(&w.names[0]),
        w.inner,
        names_text(&w.names[1]),
        names_text(&w.names[2])
    )
}

fn verify(w: &BraidWord, k: usize, expected: [&str; 3]) -> Report {
    match verify_triple(w, k, expected) {
        TripleOutcome::Witness(wit) => Report::ok(
            json!({ "command": "verify-triple", "verified": true, "witness": witness_json(&wit) }),
            format!("verified\n{}", witness_text(&wit)),
        ),
        TripleOutcome::Failure(f) => Report {
            json: json!({
                "command": "verify-triple",
                "verified": false,
                "failure": {
                    "closure": f.role.map(|r| format!("{r:?}")),
                    "reason": f.reason,
                    "gon_size": f.gon_size,
                },
            }),
            text: format!("not verified: {f}\n"),
            ok: false,
        },
    }
}

fn search(k1: &str, k2: &str, k3: &str, budget: SearchBudget) -> Result<Report, Error> {
    let r = search_triples([k1, k2, k3], budget)?;
    let b = json!({
        "max_letters": budget.max_letters,
        "max_strands": budget.max_strands,
        "max_witnesses": budget.max_witnesses,
        "max_states": budget.max_states,
    });
    let mut text = String::new();
    for w in &r.witnesses {
        text += &witness_text(w);
    }
    if r.witnesses.is_empty() {
        text += "no witness found\n";
    }
    text += &format!("states explored: {}\n", r.states_explored);
    if r.witnesses.is_empty() || r.budget_exhausted {
        text += &format!("budget: {budget}{}\n", if r.budget_exhausted { " (exhausted)" } else { "" });
    }
    Ok(Report {
        json: json!({
            "command": "search-triples",
            "witnesses": r.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
            "states_explored": r.states_explored,
            "budget_exhausted": r.budget_exhausted,
            "budget": b,
        }),
        text,
        ok: !r.witnesses.is_empty(),
    })
}

fn table() -> Report {
    let t = KnotTable::builtin();
    let entries: Vec<Value> = t
        .entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "crossings": e.crossings,
                "braid": e.braid.to_string(),
                "u": e.u,
                "e": e.e,
                "profile": profile_json(&e.profile),
                "source": e.source,
            })
        })
        .collect();
    let mut text = String::new();
    for e in t.entries() {
        text += &format!(
            "{:<7} {:<22} u={} det={:<3} σ={:<3} Δ={}\n",
            e.name,
            e.braid.to_string(),
            e.u,
            e.profile.determinant,
            e.profile.signature,
            e.profile.alexander
        );
    }
    text += &format!("{}\n", t.report());
    let r = t.report();
    Report::ok(
        json!({
            "command": "table",
            "entries": entries,
            "report": {
                "entries": r.entries,
                "single_flip_witnessed": r.single_flip_witnessed,
                "single_flip_unwitnessed": r.single_flip_unwitnessed,
            },
        }),
        text,
    )
}
