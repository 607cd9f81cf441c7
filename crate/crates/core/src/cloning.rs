//! The cloning-system abstraction and the derived actions of groups on
//! forests.
//!
//! Maps are written on the right: `g^{λ_ℓ λ_k}` applies `κ_ℓ` first and then
//! `κ_k`. A group element `g ∈ G_n` and a forest `E` of rank at most `n`
//! satisfy `g E = (g·E) g^E` in the Zappa–Szép product.

use std::fmt::Debug;

use rand_chacha::ChaCha8Rng;

use crate::forest::{Forest, Subgraph};
use crate::perm::Perm;

/// A directed system of groups `G_1 ≤ G_2 ≤ …` with `ρ_n: G_n → S_n` and
/// cloning maps `κ_k: G_n → G_{n+1}`.
pub trait CloningSystem: Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn name(&self) -> String;

    fn identity(&self, n: usize) -> Self::Elem;

    /// The `n` with `g ∈ G_n` as stored.
    fn degree(&self, g: &Self::Elem) -> usize;

    /// Product of two elements of the same degree.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Equality; `None` when the system cannot decide.
    fn decide_eq(&self, a: &Self::Elem, b: &Self::Elem) -> Option<bool>;

    /// Equality for systems where it is decidable.
    ///
    /// Panics when the system reports the question as undecided.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.decide_eq(a, b)
            .unwrap_or_else(|| panic!("{}: equality undecided for {a:?} and {b:?}", self.name()))
    }

    /// The inclusion `ι_{m,n}` for `m = degree(g) ≤ n`.
    fn include(&self, g: &Self::Elem, n: usize) -> Self::Elem;

    /// Preimage under `ι_{m,n}`; `None` if not in the image. Systems that
    /// cannot decide membership return `Err(())`.
    #[allow(clippy::result_unit_err)]
    fn restrict(&self, _g: &Self::Elem, _m: usize) -> Result<Option<Self::Elem>, ()> {
        Err(())
    }

    fn rho(&self, g: &Self::Elem) -> Perm;

    /// `(g)κ_k` for `1 ≤ k ≤ degree(g)`.
    fn kappa(&self, g: &Self::Elem, k: usize) -> Self::Elem;

    /// Preimage under `κ_k`; outer `None` when unsupported.
    fn unclone(&self, _h: &Self::Elem, _k: usize) -> Option<Option<Self::Elem>> {
        None
    }

    /// Whether `ρ` is identically trivial.
    fn rho_trivial(&self) -> bool {
        false
    }

    /// `|G_n|` when finite.
    fn order(&self, _n: usize) -> Option<u128> {
        None
    }

    /// All elements of `G_n` in a fixed order, for finite groups.
    fn elements(&self, _n: usize) -> Option<Vec<Self::Elem>> {
        None
    }

    fn generators(&self, n: usize) -> Vec<Self::Elem>;

    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn format(&self, g: &Self::Elem) -> String;

    fn parse(&self, s: &str, n: usize) -> Result<Self::Elem, String>;

    /// Cloning along a spanning subgraph of `L_n` with `m` components,
    /// mapping `G_m → G_n`.
    fn kappa_subgraph(&self, g: &Self::Elem, gamma: &Subgraph) -> Self::Elem {
        clone_by_forest(self, g, &gamma.forest())
    }

    /// Canonical representative of the dangling class of `(g, Γ)` if the
    /// system knows one directly.
    fn dangling_rep(&self, _g: &Self::Elem, _gamma: &Subgraph) -> Option<(Self::Elem, Subgraph)> {
        None
    }

    /// Canonical representatives of every dangling class `[g, Γ]` with this
    /// `Γ`, when the system can list them without searching orbits.
    fn dangling_classes(&self, _gamma: &Subgraph) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Checks driven by a presentation, for systems verified that way.
    fn presentation_checks(&self, _n_max: usize) -> Option<Vec<crate::axioms::AxiomLine>> {
        None
    }
}

/// `g^E`: clone along the word of `E`, first letter first.
pub fn clone_by_forest<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, e: &Forest) -> S::Elem {
    let mut h = g.clone();
    for &k in e.word() {
        h = sys.kappa(&h, k);
    }
    h
}

/// Clone along an arbitrary (not necessarily normal) word.
pub fn clone_by_word<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, word: &[usize]) -> S::Elem {
    let mut h = g.clone();
    for &k in word {
        h = sys.kappa(&h, k);
    }
    h
}

/// `(g·E, g^E)`, computed along `g·(λ_k E') = λ_{ρ(g)k} ((g)κ_k · E')`.
pub fn act_and_clone<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, e: &Forest) -> (Forest, S::Elem) {
    let mut h = g.clone();
    let mut word = Vec::with_capacity(e.len());
    for &k in e.word() {
        word.push(sys.rho(&h).apply(k));
        h = sys.kappa(&h, k);
    }
    (Forest::from_word(&word), h)
}

/// `g·E`.
pub fn act_on_forest<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, e: &Forest) -> Forest {
    act_and_clone(sys, g, e).0
}

/// Error for forests that do not fit the degree of the group element.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("forest of rank {rank} does not fit degree {degree}")]
pub struct RankError {
    pub rank: usize,
    pub degree: usize,
}

pub fn check_rank<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, e: &Forest) -> Result<(), RankError> {
    let (rank, degree) = (e.rank(), sys.degree(g));
    if rank > degree {
        Err(RankError { rank, degree })
    } else {
        Ok(())
    }
}

/// Word for a product of generators, extended to arbitrary words by
/// `(gh)κ_k = (g)κ_{ρ(h)k} (h)κ_k`, evaluated right to left.
pub fn clone_word_by_fcs1<G, R, K>(word: &[G], k: usize, rho: R, kappa_gen: K) -> Vec<G>
where
    G: Clone,
    R: Fn(&G, usize) -> usize,
    K: Fn(&G, usize) -> Vec<G>,
{
    let mut pieces: Vec<Vec<G>> = Vec::with_capacity(word.len());
    let mut pos = k;
    for g in word.iter().rev() {
        pieces.push(kappa_gen(g, pos));
        pos = rho(g, pos);
    }
    pieces.into_iter().rev().flatten().collect()
}
