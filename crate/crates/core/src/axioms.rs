//! Machine checks of the cloning axioms and of proper grading.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cloning::{clone_by_word, CloningSystem};
use crate::perm::{symm_clone, Perm};

/// Groups up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Undecided,
    NotChecked,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
            Status::NotChecked => "not-checked",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomLine {
    pub axiom: String,
    pub n: usize,
    pub status: Status,
    pub witness: String,
    /// Informational lines do not affect the overall verdict.
    pub info: bool,
}

impl AxiomLine {
    pub fn new(axiom: &str, n: usize, status: Status, witness: String) -> AxiomLine {
        AxiomLine { axiom: axiom.to_string(), n, status, witness, info: false }
    }

    pub fn info(axiom: &str, n: usize, status: Status, witness: String) -> AxiomLine {
        AxiomLine { axiom: axiom.to_string(), n, status, witness, info: true }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub system: String,
    pub notes: Vec<String>,
    pub lines: Vec<AxiomLine>,
}

impl AxiomReport {
    /// No failing line; undecided and unchecked lines do not count as passes.
    pub fn passed(&self) -> bool {
        self.lines.iter().filter(|l| !l.info).all(|l| l.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&AxiomLine> {
        self.lines.iter().filter(|l| !l.info && l.status == Status::Fail).collect()
    }

    pub fn line(&self, axiom: &str, n: usize) -> Option<&AxiomLine> {
        self.lines.iter().find(|l| l.axiom == axiom && l.n == n)
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for note in &self.notes {
            let _ = writeln!(s, "# {note}");
        }
        s.push_str("axiom\tn\tstatus\twitness\n");
        for l in &self.lines {
            let name = if l.info { format!("{} (info)", l.axiom) } else { l.axiom.clone() };
            let _ = writeln!(s, "{}\t{}\t{}\t{}", name, l.n, l.status.as_str(), l.witness);
        }
        s
    }
}

/// How non-exhaustive checks pick elements.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    pub seed: u64,
    /// Random products added to the generators.
    pub samples: usize,
    /// Maximal number of generator factors in a random product.
    pub word_len: usize,
}

impl Default for Sampler {
    fn default() -> Sampler {
        Sampler { seed: 1, samples: 40, word_len: 6 }
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Undecided(String),
}

fn merge(results: impl Iterator<Item = Outcome>) -> (Status, String) {
    let mut undecided = None;
    for r in results {
        match r {
            Outcome::Pass => {}
            Outcome::Fail(w) => return (Status::Fail, w),
            Outcome::Undecided(w) => {
                undecided.get_or_insert(w);
            }
        }
    }
    match undecided {
        Some(w) => (Status::Undecided, w),
        None => (Status::Pass, String::new()),
    }
}

fn compare<S: CloningSystem + ?Sized>(sys: &S, a: &S::Elem, b: &S::Elem, witness: impl FnOnce() -> String) -> Outcome {
    match sys.decide_eq(a, b) {
        Some(true) => Outcome::Pass,
        Some(false) => Outcome::Fail(witness()),
        None => Outcome::Undecided(witness()),
    }
}

/// Element set used for degree `n`: everything if small, else generators
/// plus seeded random products.
pub fn sample_set<S: CloningSystem + ?Sized>(sys: &S, n: usize, sampler: &Sampler) -> (Vec<S::Elem>, bool) {
    if sys.order(n).is_some_and(|o| o <= EXHAUSTIVE_LIMIT) {
        if let Some(all) = sys.elements(n) {
            return (all, true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let gens = sys.generators(n);
    let mut set = vec![sys.identity(n)];
    set.extend(gens.iter().cloned());
    for _ in 0..sampler.samples {
        if gens.is_empty() {
            set.push(sys.random(n, &mut rng));
            continue;
        }
        let len = rng.gen_range(1..=sampler.word_len.max(1));
        let mut g = sys.identity(n);
        for _ in 0..len {
            let x = &gens[rng.gen_range(0..gens.len())];
            let x = if rng.gen_bool(0.5) { sys.inv(x) } else { x.clone() };
            g = sys.mul(&g, &x);
        }
        set.push(g);
    }
    (set, false)
}

/// Check ρ-homomorphism, (FCS1)–(FCS3), injectivity of cloning and, as
/// information, strict compatibility and the hedge relation.
pub fn check_axioms<S: CloningSystem + ?Sized>(sys: &S, n_max: usize, sampler: &Sampler) -> AxiomReport {
    let mut rep = AxiomReport { system: sys.name(), ..Default::default() };
    rep.notes.push(format!("system {} seed {}", sys.name(), sampler.seed));
    for n in 1..=n_max {
        let (set, exhaustive) = sample_set(sys, n, sampler);
        rep.notes.push(format!(
            "n={n}: {} over {} elements",
            if exhaustive { "exhaustive" } else { "sampled" },
            set.len()
        ));
        let fmt = |g: &S::Elem| sys.format(g);

        let (st, w) = merge(
            set.par_iter()
                .flat_map_iter(|g| {
                    set.iter().map(move |h| {
                        let lhs = sys.rho(&sys.mul(g, h));
                        let rhs = sys.rho(g).mul(&sys.rho(h));
                        if lhs.extend(n) == rhs.extend(n) {
                            Outcome::Pass
                        } else {
                            Outcome::Fail(format!("g={};h={}", fmt(g), fmt(h)))
                        }
                    })
                })
                .filter(|o| !matches!(o, Outcome::Pass))
                .collect::<Vec<_>>()
                .into_iter(),
        );
        rep.lines.push(AxiomLine::new("rho-hom", n, st, w));

        let (st, w) = merge(
            set.par_iter()
                .flat_map_iter(|g| {
                    set.iter().flat_map(move |h| {
                        (1..=n).map(move |k| {
                            let lhs = sys.kappa(&sys.mul(g, h), k);
                            let k2 = sys.rho(h).apply(k);
                            let rhs = sys.mul(&sys.kappa(g, k2), &sys.kappa(h, k));
                            compare(sys, &lhs, &rhs, || format!("g={};h={};k={k}", fmt(g), fmt(h)))
                        })
                    })
                })
                .filter(|o| !matches!(o, Outcome::Pass))
                .collect::<Vec<_>>()
                .into_iter(),
        );
        rep.lines.push(AxiomLine::new("FCS1", n, st, w));

        let (st, w) = merge(
            set.par_iter()
                .flat_map_iter(|g| {
                    (1..=n).flat_map(move |k| {
                        (k + 1..=n).map(move |l| {
                            let lhs = clone_by_word(sys, g, &[l, k]);
                            let rhs = clone_by_word(sys, g, &[k, l + 1]);
                            compare(sys, &lhs, &rhs, || format!("g={};k={k};l={l}", fmt(g)))
                        })
                    })
                })
                .filter(|o| !matches!(o, Outcome::Pass))
                .collect::<Vec<_>>()
                .into_iter(),
        );
        rep.lines.push(AxiomLine::new("FCS2", n, st, w));

        let mut relaxed = Vec::new();
        let mut strict = Vec::new();
        for g in &set {
            let r = sys.rho(g).extend(n);
            for k in 1..=n {
                let lhs = sys.rho(&sys.kappa(g, k)).extend(n + 1);
                let rhs = symm_clone(&r, k);
                for i in 1..=n + 1 {
                    if lhs.apply(i) != rhs.apply(i) {
                        let w = format!("g={};k={k};i={i}", fmt(g));
                        if i != k && i != k + 1 {
                            relaxed.push(Outcome::Fail(w.clone()));
                        }
                        strict.push(Outcome::Fail(w));
                    }
                }
            }
        }
        let (st, w) = merge(relaxed.into_iter());
        rep.lines.push(AxiomLine::new("FCS3", n, st, w));
        let (st, w) = merge(strict.into_iter());
        rep.lines.push(AxiomLine::info("FCS3-strict", n, st, w));

        if exhaustive {
            let mut st = Status::Pass;
            let mut wit = String::new();
            'outer: for k in 1..=n {
                let mut seen = std::collections::HashMap::new();
                for g in &set {
                    let key = fmt(&sys.kappa(g, k));
                    if let Some(prev) = seen.insert(key, fmt(g)) {
                        st = Status::Fail;
                        wit = format!("g={};h={prev};k={k}", fmt(g));
                        break 'outer;
                    }
                }
            }
            rep.lines.push(AxiomLine::new("kappa-injective", n, st, wit));
        } else {
            rep.lines.push(AxiomLine::new("kappa-injective", n, Status::NotChecked, "group too large".into()));
        }

        let (st, w) = merge(
            set.iter()
                .flat_map(|g| {
                    (1..=n).map(move |k| {
                        let lhs = clone_by_word(sys, g, &[k, k]);
                        let rhs = clone_by_word(sys, g, &[k, k + 1]);
                        compare(sys, &lhs, &rhs, || format!("g={};k={k}", fmt(g)))
                    })
                })
                .filter(|o| !matches!(o, Outcome::Pass))
                .collect::<Vec<_>>()
                .into_iter(),
        );
        rep.lines.push(AxiomLine::info("hedge", n, st, w));
    }
    rep
}

/// The pullback condition: if `(h)κ_k ∈ im ι` then `h = (h̄)ι` with
/// `(h̄)κ_k` the corresponding preimage. Checked for `1 ≤ k < n ≤ n_max`.
pub fn check_properly_graded<S: CloningSystem + ?Sized>(sys: &S, n_max: usize) -> AxiomReport {
    let mut rep = AxiomReport { system: sys.name(), ..Default::default() };
    for n in 2..=n_max {
        let Some(all) = sys.order(n).filter(|&o| o <= EXHAUSTIVE_LIMIT).and_then(|_| sys.elements(n)) else {
            rep.lines.push(AxiomLine::new("properly-graded", n, Status::NotChecked, "group infinite or too large".into()));
            continue;
        };
        let results: Vec<Outcome> = all
            .par_iter()
            .flat_map_iter(|h| {
                (1..n).map(move |k| {
                    let g = sys.kappa(h, k);
                    let wit = || format!("h={};k={k}", sys.format(h));
                    match sys.restrict(&g, n) {
                        Err(()) => Outcome::Undecided("membership in the inclusion image unsupported".into()),
                        Ok(None) => Outcome::Pass,
                        Ok(Some(gbar)) => match sys.restrict(h, n - 1) {
                            Err(()) => Outcome::Undecided(wit()),
                            Ok(None) => Outcome::Fail(wit()),
                            Ok(Some(hbar)) => compare(sys, &sys.kappa(&hbar, k), &gbar, wit),
                        },
                    }
                })
            })
            .collect();
        let (st, w) = merge(results.into_iter());
        let st = if st == Status::Undecided { Status::NotChecked } else { st };
        rep.lines.push(AxiomLine::new("properly-graded", n, st, w));
    }
    rep
}

/// Wraps a system and swaps the cloning outputs of two elements, to confirm
/// that the checker notices.
pub struct SwappedKappa<S: CloningSystem> {
    pub inner: S,
    pub a: S::Elem,
    pub b: S::Elem,
}

impl<S: CloningSystem> CloningSystem for SwappedKappa<S> {
    type Elem = S::Elem;

    fn name(&self) -> String {
        format!("swapped({})", self.inner.name())
    }
    fn identity(&self, n: usize) -> S::Elem {
        self.inner.identity(n)
    }
    fn degree(&self, g: &S::Elem) -> usize {
        self.inner.degree(g)
    }
    fn mul(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.inner.mul(a, b)
    }
    fn inv(&self, a: &S::Elem) -> S::Elem {
        self.inner.inv(a)
    }
    fn decide_eq(&self, a: &S::Elem, b: &S::Elem) -> Option<bool> {
        self.inner.decide_eq(a, b)
    }
    fn include(&self, g: &S::Elem, n: usize) -> S::Elem {
        self.inner.include(g, n)
    }
    fn rho(&self, g: &S::Elem) -> Perm {
        self.inner.rho(g)
    }
    fn kappa(&self, g: &S::Elem, k: usize) -> S::Elem {
        let same = |x: &S::Elem| self.inner.degree(x) == self.inner.degree(g) && self.inner.eq(x, g);
        if same(&self.a) {
            let b = self.inner.include(&self.b, self.inner.degree(g));
            self.inner.kappa(&b, k)
        } else if same(&self.b) {
            let a = self.inner.include(&self.a, self.inner.degree(g));
            self.inner.kappa(&a, k)
        } else {
            self.inner.kappa(g, k)
        }
    }
    fn order(&self, n: usize) -> Option<u128> {
        self.inner.order(n)
    }
    fn elements(&self, n: usize) -> Option<Vec<S::Elem>> {
        self.inner.elements(n)
    }
    fn generators(&self, n: usize) -> Vec<S::Elem> {
        self.inner.generators(n)
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> S::Elem {
        self.inner.random(n, rng)
    }
    fn format(&self, g: &S::Elem) -> String {
        self.inner.format(g)
    }
    fn parse(&self, s: &str, n: usize) -> Result<S::Elem, String> {
        self.inner.parse(s, n)
    }
}
