//! Classical invariants of braid closures and linear plumbing boundaries.
//!
//! Two independent routes to the Alexander polynomial are provided: the
//! Seifert matrix of the canonical surface of a closed braid, and the
//! reduced Burau representation. They share no code beyond the Laurent
//! polynomial arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::braid::{free_reduce, BraidWord, Sign};
use crate::knot_table::KnotTable;
use crate::laurent::LaurentPolynomial;
use crate::matrix::{inertia, integer_determinant, laurent_determinant, rational_rank, small_determinant};
use crate::plumbing::PlumbingWord;

/// Seifert matrix `V` with `V[a][b] = lk(a, b⁺)` on a basis of first
/// homology of a Seifert surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    /// Connected components of the underlying surface. A surface with more
    /// than one component bounds a split link.
    surface_components: usize,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>, surface_components: usize) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "Seifert matrix must be square");
        Self { entries, surface_components: surface_components.max(1) }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn surface_components(&self) -> usize {
        self.surface_components
    }

    fn combine(&self, f: impl Fn(i64, i64) -> i64) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(f(self.entries[i][j], self.entries[j][i]))).collect())
            .collect()
    }

    /// `V + Vᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<BigInt>> {
        self.combine(|a, b| a + b)
    }

    /// `V - Vᵀ`, the intersection form.
    pub fn intersection_form(&self) -> Vec<Vec<BigInt>> {
        self.combine(|a, b| a - b)
    }

    /// `det(V - t Vᵀ)` before normalisation.
    pub fn alexander_determinant(&self) -> LaurentPolynomial {
        let t = LaurentPolynomial::t();
        let m = (0..self.size())
            .map(|i| {
                (0..self.size())
                    .map(|j| {
                        let a = LaurentPolynomial::constant(self.entries[i][j]);
                        let b = LaurentPolynomial::constant(self.entries[j][i]);
                        &a - &(&t * &b)
                    })
                    .collect()
            })
            .collect();
        laurent_determinant(m)
    }

    /// Normalised Alexander polynomial of the boundary. Zero when the surface
    /// is disconnected (split boundary).
    pub fn alexander(&self) -> LaurentPolynomial {
        if self.surface_components > 1 {
            return LaurentPolynomial::zero();
        }
        self.alexander_determinant().normalized()
    }

    /// Boundary components of a connected surface: `1 + nullity(V - Vᵀ)`.
    pub fn boundary_components_if_connected(&self) -> usize {
        1 + self.size() - rational_rank(&self.intersection_form())
    }
}

/// Seifert matrix of the canonical surface of the closed braid.
///
/// The surface has one disk per strand and one half-twisted band per
/// letter. Homology is generated by one loop per pair of consecutive
/// letters with the same index (no wrap-around). Linking numbers:
///
/// * a loop through bands of signs `e1`, `e2` has self-linking `-(e1+e2)/2`;
/// * consecutive loops on one index sharing a band of sign `+` link `+1`
///   (earlier with later), sharing a band of sign `-` link `-1` (later
///   with earlier);
/// * loops on indices `i` (bands `a < b`) and `i+1` (bands `c < d`) link
///   `+1` when `a < c < b < d` and `-1` when `c < a < d < b`.
pub fn seifert_matrix_of_braid(w: &BraidWord) -> SeifertMatrix {
    struct Gen {
        index: usize,
        first: usize,
        second: usize,
    }
    let letters = w.letters();
    let mut gens = Vec::new();
    let mut used = vec![false; w.strands()];
    for index in 1..w.strands() {
        let pos: Vec<usize> = (0..letters.len()).filter(|&p| letters[p].index == index).collect();
        used[index] = !pos.is_empty();
        for pair in pos.windows(2) {
            gens.push(Gen { index, first: pair[0], second: pair[1] });
        }
    }
    let sign = |p: usize| letters[p].sign.value();
    let n = gens.len();
    let mut v = vec![vec![0i64; n]; n];
    for (x, g) in gens.iter().enumerate() {
        v[x][x] = -(sign(g.first) + sign(g.second)) / 2;
        for (y, h) in gens.iter().enumerate() {
            if h.index == g.index && h.first == g.second {
                if letters[g.second].sign == Sign::Positive {
                    v[x][y] += 1;
                } else {
                    v[y][x] -= 1;
                }
            } else if h.index == g.index + 1 {
                let (a, b, c, d) = (g.first, g.second, h.first, h.second);
                if a < c && c < b && b < d {
                    v[x][y] += 1;
                } else if c < a && a < d && d < b {
                    v[x][y] -= 1;
                }
            }
        }
    }
    let unused = (1..w.strands()).filter(|&i| !used[i]).count();
    SeifertMatrix::new(v, 1 + unused)
}

/// Alexander polynomial from the reduced Burau representation:
/// `Δ ≐ det(I - B(w)) (1 - t) / (1 - t^n)`, normalised.
///
/// Independent oracle for [`SeifertMatrix::alexander`].
pub fn alexander_via_burau(w: &BraidWord) -> LaurentPolynomial {
    let n = w.strands();
    if n == 1 {
        return LaurentPolynomial::one();
    }
    let m = n - 1;
    let t = LaurentPolynomial::t();
    let t_inv = LaurentPolynomial::monomial(1, -1);
    let zero = LaurentPolynomial::zero();
    let one = LaurentPolynomial::one();
    let mut b: Vec<Vec<LaurentPolynomial>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { LaurentPolynomial::one() } else { zero.clone() }).collect())
        .collect();
    // Right-multiplying by a generator matrix only rewrites column `a`.
    for l in w.letters() {
        let a = l.index - 1;
        let (left, diag, right) = match l.sign {
            Sign::Positive => (&t, -&t, &one),
            Sign::Negative => (&one, -&t_inv, &t_inv),
        };
        for row in b.iter_mut() {
            let mut col = &row[a] * &diag;
            if a > 0 {
                col = &col + &(&row[a - 1] * left);
            }
            if a + 1 < m {
                col = &col + &(&row[a + 1] * right);
            }
            row[a] = col;
        }
    }
    let i_minus_b = b
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| if i == j { &LaurentPolynomial::one() - x } else { -x })
                .collect()
        })
        .collect();
    let det = laurent_determinant(i_minus_b);
    let one_minus_t = &LaurentPolynomial::one() - &t;
    let one_minus_tn = &LaurentPolynomial::one() - &LaurentPolynomial::monomial(1, n as i64);
    (&det * &one_minus_t)
        .div_exact(&one_minus_tn)
        .expect("(1 - t^n) divides det(I - B)(1 - t)")
        .normalized()
}

/// Signature of `V + Vᵀ`.
pub fn signature(v: &SeifertMatrix) -> i64 {
    inertia(&v.symmetrized()).signature()
}

/// The invariant fingerprint of a link.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    /// Normalised Alexander polynomial.
    pub alexander: LaurentPolynomial,
    pub signature: i64,
    /// `|Δ(-1)|`.
    pub determinant: u64,
    /// Genus of the canonical (or plumbing) surface used; an upper bound
    /// for the Seifert genus, not a link invariant.
    pub canonical_genus_bound: u64,
    pub components: usize,
}

impl InvariantProfile {
    pub fn unknot() -> Self {
        Self {
            alexander: LaurentPolynomial::one(),
            signature: 0,
            determinant: 1,
            canonical_genus_bound: 0,
            components: 1,
        }
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    /// `Δ = 1, σ = 0, det = 1` on a knot.
    pub fn is_unknot_consistent(&self) -> bool {
        self.is_knot() && self.alexander.is_one() && self.signature == 0 && self.determinant == 1
    }

    /// Equality of the boundary-link invariants (Alexander polynomial,
    /// signature, determinant, component count). Ignores the surface-dependent
    /// genus bound.
    pub fn same_link_invariants(&self, other: &Self) -> bool {
        self.alexander == other.alexander
            && self.signature == other.signature
            && self.determinant == other.determinant
            && self.components == other.components
    }

    /// Profile of the mirror image: `Δ(t⁻¹)` and `-σ`.
    pub fn mirrored(&self) -> Self {
        Self { alexander: self.alexander.mirror().normalized(), signature: -self.signature, ..self.clone() }
    }

    /// Equality up to mirror image: `|σ|`, determinant, and `Δ` up to `t ↔ t⁻¹`.
    pub fn matches_up_to_mirror(&self, other: &Self) -> bool {
        self.components == other.components
            && self.determinant == other.determinant
            && self.signature.abs() == other.signature.abs()
            && (self.alexander == other.alexander || self.alexander == other.alexander.mirror().normalized())
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Δ = {}, σ = {}, det = {}, genus bound = {}, components = {}",
            self.alexander, self.signature, self.determinant, self.canonical_genus_bound, self.components
        )
    }
}

/// Assembles a profile from a Seifert matrix of a surface with the given
/// boundary component count and genus.
pub fn profile_from_seifert(v: &SeifertMatrix, components: usize, genus: u64) -> InvariantProfile {
    let alexander = v.alexander();
    let determinant = alexander
        .eval_at_minus_one()
        .abs()
        .to_u64()
        .expect("determinant fits in u64");
    InvariantProfile {
        signature: signature(v),
        alexander,
        determinant,
        canonical_genus_bound: genus,
        components,
    }
}

/// Profile of a braid closure, computed on the freely reduced word.
pub fn profile_of_braid(w: &BraidWord) -> InvariantProfile {
    let reduced = free_reduce(w);
    let components = reduced.components();
    let v = seifert_matrix_of_braid(&reduced);
    // χ = strands - letters = 2·(surface components) - 2g - (boundary components)
    let s = v.surface_components() as i64;
    let twice_genus = 2 * s - components as i64 - reduced.strands() as i64 + reduced.len() as i64;
    debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
    profile_from_seifert(&v, components, (twice_genus / 2) as u64)
}

/// `|det(V + Vᵀ)|` of the closure, without the rest of the profile.
/// Agrees with [`InvariantProfile::determinant`].
pub fn determinant_of_braid(w: &BraidWord) -> u64 {
    let v = seifert_matrix_of_braid(&free_reduce(w));
    if v.surface_components() > 1 {
        return 0;
    }
    let sym: Vec<Vec<i64>> = (0..v.size())
        .map(|i| (0..v.size()).map(|j| v.entries[i][j] + v.entries[j][i]).collect())
        .collect();
    match small_determinant(&sym) {
        Some(d) => d.unsigned_abs() as u64,
        None => integer_determinant(&v.symmetrized()).abs().to_u64().expect("determinant fits in u64"),
    }
}

/// Either kind of presentation the toolkit can fingerprint.
#[derive(Clone, Copy, Debug)]
pub enum Presentation<'a> {
    Braid(&'a BraidWord),
    Plumbing(&'a PlumbingWord),
}

pub fn profile(p: Presentation<'_>) -> InvariantProfile {
    match p {
        Presentation::Braid(w) => profile_of_braid(w),
        Presentation::Plumbing(s) => crate::plumbing::boundary_profile(s),
    }
}

/// Names of built-in table knots matching the profile (chirality-blind).
/// Links always give an empty list.
pub fn identify(profile: &InvariantProfile) -> Vec<String> {
    KnotTable::builtin().match_profile(profile)
}
