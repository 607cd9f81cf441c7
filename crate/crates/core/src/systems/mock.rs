//! Mock symmetric groups: generated by involutions `s(i,j)`, `i < j`, where
//! disjoint intervals commute and an interval conjugates a nested one to
//! its mirror image.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{AxiomLine, Status};
use crate::cloning::{clone_word_by_fcs1, CloningSystem};
use crate::perm::{symm_clone, Perm};
use crate::rewriting::{complete, Caps, Rewriting, Word};

pub type Gen = (u8, u8);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MockWord {
    pub n: usize,
    pub word: Vec<Gen>,
}

/// The involution reversing `[i, j]`.
pub fn reversal(n: usize, (i, j): Gen) -> Perm {
    let mut img: Vec<usize> = (1..=n.max(j as usize)).collect();
    for m in i as usize..=j as usize {
        img[m - 1] = i as usize + j as usize - m;
    }
    Perm::from_images(img).expect("reversal is a permutation")
}

/// Cloning of a single generator at `k`.
pub fn clone_gen((i, j): Gen, k: usize) -> Vec<Gen> {
    let k = k as u8;
    if j < k {
        vec![(i, j)]
    } else if i <= k {
        vec![(i, j + 1), (k, k + 1)]
    } else {
        vec![(i + 1, j + 1)]
    }
}

fn mirror((k, l): Gen, (i, j): Gen) -> Gen {
    (k + l - j, k + l - i)
}

fn contains((k, l): Gen, (i, j): Gen) -> bool {
    k <= i && j <= l && (k, l) != (i, j)
}

fn disjoint((i, j): Gen, (k, l): Gen) -> bool {
    j < k || l < i
}

/// Cancel adjacent equal letters.
pub fn free_cancel(w: &[Gen]) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// The defining relations at degree `n` as pairs of words; squares are
/// listed as `(s s, ε)`.
pub fn relations(n: usize) -> Vec<(Vec<Gen>, Vec<Gen>)> {
    let gens = generators_of(n);
    let mut out = Vec::new();
    for &s in &gens {
        out.push((vec![s, s], vec![]));
    }
    for &a in &gens {
        for &b in &gens {
            if a.1 < b.0 {
                out.push((vec![a, b], vec![b, a]));
            }
            if contains(a, b) {
                out.push((vec![a, b], vec![mirror(a, b), a]));
            }
        }
    }
    out
}

fn generators_of(n: usize) -> Vec<Gen> {
    let mut g = Vec::new();
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            g.push((i, j));
        }
    }
    g
}

/// Letters of degree `n` ordered by interval length, then position.
fn alphabet(n: usize) -> Vec<Gen> {
    let mut g = generators_of(n);
    g.sort_by_key(|&(i, j)| (j - i, i));
    g
}

/// Word-problem machinery for one degree.
#[derive(Debug)]
pub struct Completion {
    pub letters: Vec<Gen>,
    pub outcome: Result<Rewriting, String>,
}

impl Completion {
    fn encode(&self, w: &[Gen]) -> Word {
        w.iter().map(|g| self.letters.iter().position(|x| x == g).expect("letter out of range") as u16).collect()
    }

    fn decode(&self, w: &[u16]) -> Vec<Gen> {
        w.iter().map(|&i| self.letters[i as usize]).collect()
    }
}

pub fn attempt_completion(n: usize, caps: Caps) -> Completion {
    let letters = alphabet(n);
    let enc = |w: &[Gen]| -> Word { w.iter().map(|g| letters.iter().position(|x| x == g).unwrap() as u16).collect() };
    let eqs: Vec<(Word, Word)> = relations(n).iter().map(|(a, b)| (enc(a), enc(b))).collect();
    let outcome = complete(&eqs, caps).map_err(|e| e.to_string());
    Completion { letters, outcome }
}

/// Result of reducing a word by relation moves and cancellations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveReduction {
    /// Lexicographically least word of the move class of a word none of
    /// whose move-equivalents contains a square.
    Reduced(Vec<Gen>),
    OverBudget,
}

/// Length-preserving relation moves on the adjacent pair `(x, y)`.
fn moves(x: Gen, y: Gen) -> Option<(Gen, Gen)> {
    if disjoint(x, y) {
        Some((y, x))
    } else if contains(x, y) {
        Some((mirror(x, y), x))
    } else if contains(y, x) {
        Some((y, mirror(y, x)))
    } else {
        None
    }
}

pub fn move_reduce(w: &[Gen], budget: usize) -> MoveReduction {
    let mut cur = free_cancel(w);
    'outer: loop {
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        while let Some(u) = queue.pop_front() {
            for p in 0..u.len().saturating_sub(1) {
                if let Some((a, b)) = moves(u[p], u[p + 1]) {
                    let mut v = u.clone();
                    v[p] = a;
                    v[p + 1] = b;
                    if v.windows(2).any(|x| x[0] == x[1]) {
                        cur = free_cancel(&v);
                        continue 'outer;
                    }
                    if seen.insert(v.clone()) {
                        if seen.len() > budget {
                            return MoveReduction::OverBudget;
                        }
                        queue.push_back(v);
                    }
                }
            }
        }
        return MoveReduction::Reduced(seen.into_iter().min().unwrap_or_default());
    }
}

/// The mock symmetric groups with their cloning maps.
#[derive(Debug)]
pub struct Mock {
    pub caps: Caps,
    /// Largest move class explored before giving up.
    pub search_budget: usize,
    /// Degrees for which completion is attempted; larger ones go straight
    /// to the move search.
    pub completion_max_n: usize,
    cache: Mutex<HashMap<usize, Arc<Completion>>>,
}

impl Default for Mock {
    fn default() -> Mock {
        Mock { caps: Caps::default(), search_budget: 200_000, completion_max_n: 5, cache: Mutex::new(HashMap::new()) }
    }
}

impl Mock {
    pub fn new() -> Mock {
        Mock::default()
    }

    pub fn completion(&self, n: usize) -> Arc<Completion> {
        let mut cache = self.cache.lock().expect("completion cache poisoned");
        cache
            .entry(n)
            .or_insert_with(|| {
                if n <= self.completion_max_n {
                    Arc::new(attempt_completion(n, self.caps))
                } else {
                    Arc::new(Completion { letters: alphabet(n), outcome: Err("not attempted".into()) })
                }
            })
            .clone()
    }

    pub fn word(&self, n: usize, w: &[Gen]) -> MockWord {
        MockWord { n, word: free_cancel(w) }
    }

    pub fn gen(&self, n: usize, i: u8, j: u8) -> MockWord {
        assert!(i < j && j as usize <= n, "generator s({i},{j}) out of range for degree {n}");
        MockWord { n, word: vec![(i, j)] }
    }

    /// Shortlex normal form when the completion at this degree succeeded.
    pub fn normal_form(&self, g: &MockWord) -> Option<Vec<Gen>> {
        let c = self.completion(g.n);
        let rw = c.outcome.as_ref().ok()?;
        Some(c.decode(&rw.reduce(&c.encode(&g.word))))
    }

    /// Per-degree outcomes of the completion attempts, as text.
    pub fn completion_summary(&self, n_max: usize) -> Vec<String> {
        (1..=n_max)
            .map(|n| match &self.completion(n).outcome {
                Ok(rw) => format!("degree {n}: completion confluent with {} rules", rw.len()),
                Err(e) => format!("degree {n}: completion stopped ({e}); move search fallback"),
            })
            .collect()
    }
}

impl CloningSystem for Mock {
    type Elem = MockWord;

    fn name(&self) -> String {
        "mock".into()
    }
    fn identity(&self, n: usize) -> MockWord {
        MockWord { n, word: Vec::new() }
    }
    fn degree(&self, g: &MockWord) -> usize {
        g.n
    }
    fn mul(&self, a: &MockWord, b: &MockWord) -> MockWord {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        MockWord { n: a.n.max(b.n), word: free_cancel(&w) }
    }
    fn inv(&self, a: &MockWord) -> MockWord {
        MockWord { n: a.n, word: a.word.iter().rev().copied().collect() }
    }
    fn decide_eq(&self, a: &MockWord, b: &MockWord) -> Option<bool> {
        let n = a.n.max(b.n);
        let (u, v) = (free_cancel(&a.word), free_cancel(&b.word));
        if u == v {
            return Some(true);
        }
        // every relation preserves length parity and ρ
        if u.len() % 2 != v.len() % 2 || self.rho(a).extend(n) != self.rho(b).extend(n) {
            return Some(false);
        }
        let c = self.completion(n);
        if let Ok(rw) = &c.outcome {
            return Some(rw.reduce(&c.encode(&u)) == rw.reduce(&c.encode(&v)));
        }
        match (move_reduce(&u, self.search_budget), move_reduce(&v, self.search_budget)) {
            (MoveReduction::Reduced(x), MoveReduction::Reduced(y)) if x == y => Some(true),
            _ => None,
        }
    }
    fn include(&self, g: &MockWord, n: usize) -> MockWord {
        MockWord { n: n.max(g.n), word: g.word.clone() }
    }
    fn rho(&self, g: &MockWord) -> Perm {
        g.word.iter().fold(Perm::identity(g.n), |acc, &s| acc.mul(&reversal(g.n, s)))
    }
    fn kappa(&self, g: &MockWord, k: usize) -> MockWord {
        assert!(k >= 1 && k <= g.n, "cloning index {k} out of range for degree {}", g.n);
        let w = clone_word_by_fcs1(&g.word, k, |s, p| reversal(g.n, *s).apply(p), |s, p| clone_gen(*s, p));
        MockWord { n: g.n + 1, word: free_cancel(&w) }
    }
    fn order(&self, n: usize) -> Option<u128> {
        (n <= 2).then_some(if n == 2 { 2 } else { 1 })
    }
    fn elements(&self, n: usize) -> Option<Vec<MockWord>> {
        match n {
            0 | 1 => Some(vec![self.identity(n)]),
            2 => Some(vec![self.identity(2), self.gen(2, 1, 2)]),
            _ => None,
        }
    }
    fn generators(&self, n: usize) -> Vec<MockWord> {
        generators_of(n).into_iter().map(|s| MockWord { n, word: vec![s] }).collect()
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> MockWord {
        let gens = generators_of(n);
        if gens.is_empty() {
            return self.identity(n);
        }
        let len = rng.gen_range(0..=3);
        let w: Vec<Gen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        MockWord { n, word: free_cancel(&w) }
    }
    fn format(&self, g: &MockWord) -> String {
        if g.word.is_empty() {
            return "1".into();
        }
        g.word.iter().map(|(i, j)| format!("s({i},{j})")).collect()
    }
    /// Words such as `s(1,5)s(3,4)`; `1` is the identity.
    fn parse(&self, s: &str, n: usize) -> Result<MockWord, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "1" {
            return Ok(self.identity(n));
        }
        let mut word = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix("s(").ok_or_else(|| format!("expected s(i,j) in {s:?}"))?;
            let close = body.find(')').ok_or_else(|| format!("unclosed generator in {s:?}"))?;
            let (i, j) = body[..close].split_once(',').ok_or_else(|| format!("bad generator in {s:?}"))?;
            let (i, j): (u8, u8) = (i.parse().map_err(|_| "bad index")?, j.parse().map_err(|_| "bad index")?);
            if !(1 <= i && i < j && j as usize <= n) {
                return Err(format!("generator s({i},{j}) out of range for degree {n}"));
            }
            word.push((i, j));
            rest = &body[close + 1..];
        }
        Ok(MockWord { n, word })
    }

    /// Checks on generators and relators: ρ respects the relations, cloning
    /// of generators satisfies (FCS2) and strict compatibility, and (FCS1)
    /// holds for each defining relation.
    fn presentation_checks(&self, n_max: usize) -> Option<Vec<AxiomLine>> {
        let mut lines = Vec::new();
        for n in 1..=n_max {
            let rel = relations(n);
            let mut rho_bad = None;
            for (u, v) in &rel {
                let (u, v) = (MockWord { n, word: u.clone() }, MockWord { n, word: v.clone() });
                if self.rho(&u) != self.rho(&v) {
                    rho_bad.get_or_insert_with(|| format!("{}={}", self.format(&u), self.format(&v)));
                }
            }
            lines.push(match rho_bad {
                None => AxiomLine::new("rho-relations", n, Status::Pass, String::new()),
                Some(w) => AxiomLine::new("rho-relations", n, Status::Fail, w),
            });

            let mut fcs2 = Verdict::default();
            let mut fcs3 = Verdict::default();
            for g in self.generators(n) {
                for k in 1..=n {
                    let lhs = self.rho(&self.kappa(&g, k));
                    if lhs != symm_clone(&self.rho(&g), k) {
                        fcs3.fail(format!("g={};k={k}", self.format(&g)));
                    }
                    for l in k + 1..=n {
                        let a = self.kappa(&self.kappa(&g, l), k);
                        let b = self.kappa(&self.kappa(&g, k), l + 1);
                        fcs2.record(self.decide_eq(&a, &b), || format!("g={};k={k};l={l}", self.format(&g)));
                    }
                }
            }
            lines.push(fcs2.line("FCS2-generators", n));
            lines.push(fcs3.line("FCS3-generators", n));

            let mut fcs1 = Verdict::default();
            for (u, v) in &rel {
                // relators are cloned letter by letter, without cancelling first
                let (u, v) = (MockWord { n, word: u.clone() }, MockWord { n, word: v.clone() });
                for p in 1..=n {
                    let a = self.kappa(&u, p);
                    let b = self.kappa(&v, p);
                    fcs1.record(self.decide_eq(&a, &b), || {
                        format!("{}={};p={p}", self.format(&u), self.format(&v))
                    });
                }
            }
            lines.push(fcs1.line("FCS1-relators", n));
        }
        Some(lines)
    }
}

#[derive(Default)]
struct Verdict {
    fail: Option<String>,
    undecided: Option<String>,
}

impl Verdict {
    fn fail(&mut self, w: String) {
        self.fail.get_or_insert(w);
    }

    fn record(&mut self, r: Option<bool>, w: impl FnOnce() -> String) {
        match r {
            Some(true) => {}
            Some(false) => {
                self.fail.get_or_insert_with(w);
            }
            None => {
                self.undecided.get_or_insert_with(w);
            }
        }
    }

    fn line(self, axiom: &str, n: usize) -> AxiomLine {
        match (self.fail, self.undecided) {
            (Some(w), _) => AxiomLine::new(axiom, n, Status::Fail, w),
            (None, Some(w)) => AxiomLine::new(axiom, n, Status::Undecided, w),
            (None, None) => AxiomLine::new(axiom, n, Status::Pass, String::new()),
        }
    }
}

/// Distinct elements reachable by words of length at most `len`, via the
/// completion at degree `n` (for tests and counts).
pub fn ball(sys: &Mock, n: usize, len: usize) -> Option<BTreeSet<Vec<Gen>>> {
    let gens = generators_of(n);
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Vec::new()];
    seen.insert(Vec::new());
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &gens {
                let mut x: Vec<Gen> = w.clone();
                x.push(g);
                let nf = sys.normal_form(&MockWord { n, word: x })?;
                if seen.insert(nf.clone()) {
                    next.push(nf);
                }
            }
        }
        frontier = next;
    }
    Some(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_cloning() {
        let m = Mock::new();
        let g = m.gen(4, 1, 4);
        assert_eq!(m.format(&m.kappa(&g, 3)), "s(1,5)s(3,4)");
        assert_eq!(m.rho(&g).apply(3), 2);
        assert_eq!(m.rho(&g).to_string(), "(1 4)(2 3)");
        assert_eq!(m.format(&m.kappa(&m.gen(5, 2, 3), 5)), "s(2,3)");
        assert_eq!(m.format(&m.kappa(&m.gen(5, 2, 3), 1)), "s(3,4)");
    }

    #[test]
    fn relation_example() {
        let m = Mock::new();
        let a = m.parse("s(1,5)s(3,4)", 5).unwrap();
        let b = m.parse("s(2,3)s(1,5)", 5).unwrap();
        assert_eq!(m.decide_eq(&a, &b), Some(true));
        let sq = m.parse("s(2,4)s(2,4)", 4).unwrap();
        assert_eq!(m.decide_eq(&sq, &m.identity(4)), Some(true));
    }

    #[test]
    fn small_completions() {
        let m = Mock::new();
        for n in 1..=4 {
            assert!(m.completion(n).outcome.is_ok(), "degree {n}");
        }
        // MS_2 = Z/2, MS_3 has s12, s23 free-ish modulo s13 conjugation
        assert_eq!(ball(&m, 2, 3).unwrap().len(), 2);
    }

    #[test]
    fn move_search_agrees_with_completion() {
        let m = Mock::new();
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for n in 3..=4 {
            let c = m.completion(n);
            let rw = c.outcome.as_ref().unwrap();
            for _ in 0..300 {
                let len = rng.gen_range(0..8);
                let gens = generators_of(n);
                let w: Vec<Gen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
                let nf = c.decode(&rw.reduce(&c.encode(&w)));
                let MoveReduction::Reduced(r) = move_reduce(&w, 100_000) else { panic!("budget") };
                // reduced words have the length of the normal form
                assert_eq!(r.len(), nf.len(), "{w:?}");
                let MoveReduction::Reduced(r2) = move_reduce(&nf, 100_000) else { panic!("budget") };
                assert_eq!(r, r2, "{w:?}");
            }
        }
    }

    #[test]
    fn rho_is_well_defined() {
        let m = Mock::new();
        for n in 1..=6 {
            for (u, v) in relations(n) {
                assert_eq!(m.rho(&MockWord { n, word: u }), m.rho(&MockWord { n, word: v }));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = Mock::new();
        let g = m.parse("s(1,3) s(2,4)", 4).unwrap();
        assert_eq!(m.format(&g), "s(1,3)s(2,4)");
        assert_eq!(m.format(&m.identity(3)), "1");
        assert!(m.parse("s(3,3)", 4).is_err());
    }
}
