//! Loop braid groups as symmetric automorphisms of free groups, and the
//! pure loop braid groups as the kernel of the induced permutation.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{AxiomLine, Status};
use crate::cloning::{clone_word_by_fcs1, CloningSystem};
use crate::perm::{symm_clone, Perm};

/// Reduced word in the free group; letter `±i` is `x_i^{±1}`.
pub type FreeWord = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn free_inv(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|x| -x).collect()
}

/// Automorphism of `F_n` by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeAut {
    pub images: Vec<FreeWord>,
}

impl FreeAut {
    pub fn identity(n: usize) -> FreeAut {
        FreeAut { images: (1..=n as i32).map(|i| vec![i]).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn extend(&self, n: usize) -> FreeAut {
        let mut images = self.images.clone();
        images.extend((images.len() as i32 + 1..=n as i32).map(|i| vec![i]));
        FreeAut { images }
    }

    pub fn apply(&self, w: &[i32]) -> FreeWord {
        let mut out = Vec::new();
        for &x in w {
            let i = x.unsigned_abs() as usize;
            let img = if i <= self.images.len() { self.images[i - 1].clone() } else { vec![x.abs()] };
            if x > 0 {
                out.extend(img);
            } else {
                out.extend(free_inv(&img));
            }
        }
        free_reduce(&out)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &FreeAut) -> FreeAut {
        let n = self.rank().max(o.rank());
        let o = o.extend(n);
        FreeAut { images: o.images.iter().map(|w| self.apply(w)).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `β_i`, the strand `i+1` passes through strand `i`.
    B,
    /// `σ_i`, the two loops swap.
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LbGen {
    pub kind: Kind,
    pub i: u8,
    pub inverse: bool,
}

impl LbGen {
    pub fn beta(i: u8) -> LbGen {
        LbGen { kind: Kind::B, i, inverse: false }
    }
    pub fn beta_inv(i: u8) -> LbGen {
        LbGen { kind: Kind::B, i, inverse: true }
    }
    pub fn sigma(i: u8) -> LbGen {
        LbGen { kind: Kind::T, i, inverse: false }
    }

    fn inv(self) -> LbGen {
        match self.kind {
            Kind::B => LbGen { inverse: !self.inverse, ..self },
            Kind::T => self,
        }
    }

    fn with_index(self, i: u8) -> LbGen {
        LbGen { i, ..self }
    }

    pub fn aut(self, n: usize) -> FreeAut {
        let i = self.i as i32;
        let mut a = FreeAut::identity(n.max(self.i as usize + 1));
        let (x, y) = (i, i + 1);
        match (self.kind, self.inverse) {
            (Kind::T, _) => {
                a.images[x as usize - 1] = vec![y];
                a.images[y as usize - 1] = vec![x];
            }
            (Kind::B, false) => {
                a.images[x as usize - 1] = vec![y];
                a.images[y as usize - 1] = vec![-y, x, y];
            }
            (Kind::B, true) => {
                // inverse of x ↦ y, y ↦ y⁻¹xy
                a.images[x as usize - 1] = vec![x, y, -x];
                a.images[y as usize - 1] = vec![x];
            }
        }
        a
    }

    fn clone_at(self, k: usize) -> Vec<LbGen> {
        let i = self.i as usize;
        if k < i {
            vec![self.with_index(self.i + 1)]
        } else if k == i {
            vec![self, self.with_index(self.i + 1)]
        } else if k == i + 1 {
            vec![self.with_index(self.i + 1), self]
        } else {
            vec![self]
        }
    }

    fn transposition(self) -> (usize, usize) {
        (self.i as usize, self.i as usize + 1)
    }
}

pub fn cancel(w: &[LbGen]) -> Vec<LbGen> {
    let mut out: Vec<LbGen> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x.inv()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LbElem {
    pub n: usize,
    pub word: Vec<LbGen>,
    pub aut: FreeAut,
}

/// Automorphism of a word `g₁⋯g_r`: `φ_{g_r} ∘ ⋯ ∘ φ_{g₁}`, i.e. automorphisms
/// act on the right.
pub fn word_aut(n: usize, w: &[LbGen]) -> FreeAut {
    w.iter().fold(FreeAut::identity(n), |acc, g| g.aut(n).compose(&acc))
}

/// The eight families of defining relations at degree `n`.
pub fn relations(n: usize) -> Vec<(&'static str, Vec<LbGen>, Vec<LbGen>)> {
    use LbGen as G;
    let mut out = Vec::new();
    let m = n.saturating_sub(1) as u8;
    for i in 1..=m {
        out.push(("sigma-square", vec![G::sigma(i), G::sigma(i)], vec![]));
        out.push(("beta-inverse", vec![G::beta(i), G::beta_inv(i)], vec![]));
        out.push(("beta-inverse", vec![G::beta_inv(i), G::beta(i)], vec![]));
        for j in 1..=m {
            if i + 1 < j {
                out.push(("beta-commute", vec![G::beta(i), G::beta(j)], vec![G::beta(j), G::beta(i)]));
                out.push(("sigma-commute", vec![G::sigma(i), G::sigma(j)], vec![G::sigma(j), G::sigma(i)]));
            }
            if i.abs_diff(j) > 1 {
                out.push(("mixed-commute", vec![G::beta(i), G::sigma(j)], vec![G::sigma(j), G::beta(i)]));
            }
        }
        if i < m {
            let (a, b) = (i, i + 1);
            out.push(("beta-braid", vec![G::beta(a), G::beta(b), G::beta(a)], vec![G::beta(b), G::beta(a), G::beta(b)]));
            out.push((
                "sigma-braid",
                vec![G::sigma(a), G::sigma(b), G::sigma(a)],
                vec![G::sigma(b), G::sigma(a), G::sigma(b)],
            ));
            out.push((
                "mixed-sigma-sigma-beta",
                vec![G::sigma(a), G::sigma(b), G::beta(a)],
                vec![G::beta(b), G::sigma(a), G::sigma(b)],
            ));
            out.push((
                "mixed-beta-beta-sigma",
                vec![G::beta(a), G::beta(b), G::sigma(a)],
                vec![G::sigma(b), G::beta(a), G::beta(b)],
            ));
        }
    }
    out
}

/// `LB_n`, or its pure subgroup when `pure` is set.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoopBraid {
    pub pure: bool,
}

impl LoopBraid {
    pub fn new() -> LoopBraid {
        LoopBraid { pure: false }
    }

    pub fn pure() -> LoopBraid {
        LoopBraid { pure: true }
    }

    pub fn elem(&self, n: usize, w: &[LbGen]) -> LbElem {
        let word = cancel(w);
        LbElem { n, aut: word_aut(n, &word), word }
    }

    fn raw(&self, n: usize, w: &[LbGen]) -> LbElem {
        LbElem { n, aut: word_aut(n, w), word: w.to_vec() }
    }

    fn word_rho(n: usize, w: &[LbGen]) -> Perm {
        w.iter().fold(Perm::identity(n), |acc, g| {
            let (a, b) = g.transposition();
            acc.mul(&Perm::transposition(n.max(b), a, b))
        })
    }

    /// A σ-word realizing `p`.
    fn sigma_word(p: &Perm) -> Vec<LbGen> {
        // bubble sort the image list; each swap is a σ on the right
        let mut img = p.images().to_vec();
        let mut out = Vec::new();
        let n = img.len();
        for pass in 0..n {
            for i in 0..n.saturating_sub(1 + pass) {
                if img[i] > img[i + 1] {
                    img.swap(i, i + 1);
                    out.push(LbGen::sigma(i as u8 + 1));
                }
            }
        }
        out.reverse();
        out
    }
}

impl CloningSystem for LoopBraid {
    type Elem = LbElem;

    fn name(&self) -> String {
        if self.pure { "pureloopbraid" } else { "loopbraid" }.into()
    }
    fn identity(&self, n: usize) -> LbElem {
        LbElem { n, word: Vec::new(), aut: FreeAut::identity(n) }
    }
    fn degree(&self, g: &LbElem) -> usize {
        g.n
    }
    fn mul(&self, a: &LbElem, b: &LbElem) -> LbElem {
        let n = a.n.max(b.n);
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        LbElem { n, word: cancel(&w), aut: b.aut.extend(n).compose(&a.aut.extend(n)) }
    }
    fn inv(&self, a: &LbElem) -> LbElem {
        let w: Vec<LbGen> = a.word.iter().rev().map(|g| g.inv()).collect();
        self.elem(a.n, &w)
    }
    fn decide_eq(&self, a: &LbElem, b: &LbElem) -> Option<bool> {
        let n = a.n.max(b.n);
        Some(a.aut.extend(n) == b.aut.extend(n))
    }
    fn include(&self, g: &LbElem, n: usize) -> LbElem {
        let n = n.max(g.n);
        LbElem { n, word: g.word.clone(), aut: g.aut.extend(n) }
    }
    fn rho(&self, g: &LbElem) -> Perm {
        LoopBraid::word_rho(g.n, &g.word)
    }
    fn rho_trivial(&self) -> bool {
        self.pure
    }
    fn kappa(&self, g: &LbElem, k: usize) -> LbElem {
        assert!(k >= 1 && k <= g.n, "cloning index {k} out of range for degree {}", g.n);
        let w = clone_word_by_fcs1(&g.word, k, |s, p| {
            let (a, b) = s.transposition();
            Perm::transposition(b, a, b).apply(p)
        }, |s, p| s.clone_at(p));
        self.elem(g.n + 1, &w)
    }
    fn generators(&self, n: usize) -> Vec<LbElem> {
        let m = n.saturating_sub(1) as u8;
        if self.pure {
            // β_iσ_i and its conjugates by σ-words
            let mut out = Vec::new();
            for i in 1..=m {
                for j in i..=m {
                    let conj: Vec<LbGen> = (i + 1..=j).map(LbGen::sigma).collect();
                    let mut w: Vec<LbGen> = conj.iter().rev().copied().collect();
                    w.push(LbGen::beta(i));
                    w.push(LbGen::sigma(i));
                    w.extend(conj.iter().copied());
                    out.push(self.elem(n, &w));
                }
            }
            return out;
        }
        (1..=m).flat_map(|i| [self.elem(n, &[LbGen::beta(i)]), self.elem(n, &[LbGen::sigma(i)])]).collect()
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> LbElem {
        if n < 2 {
            return self.identity(n);
        }
        let len = rng.gen_range(0..=4);
        let mut w: Vec<LbGen> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n) as u8;
                match rng.gen_range(0..3) {
                    0 => LbGen::beta(i),
                    1 => LbGen::beta_inv(i),
                    _ => LbGen::sigma(i),
                }
            })
            .collect();
        if self.pure {
            // correct by a σ-word for the inverse permutation
            let p = LoopBraid::word_rho(n, &w).inv();
            w.extend(LoopBraid::sigma_word(&p));
        }
        self.elem(n, &w)
    }
    fn format(&self, g: &LbElem) -> String {
        if g.word.is_empty() {
            return "1".into();
        }
        g.word
            .iter()
            .map(|x| match (x.kind, x.inverse) {
                (Kind::B, false) => format!("b({})", x.i),
                (Kind::B, true) => format!("b({})^-1", x.i),
                (Kind::T, _) => format!("t({})", x.i),
            })
            .collect()
    }
    /// Words such as `t(1)b(2)b(2)^-1`; `1` is the identity.
    fn parse(&self, s: &str, n: usize) -> Result<LbElem, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "1" {
            return Ok(self.identity(n));
        }
        let mut w = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (kind, body) = if let Some(b) = rest.strip_prefix("b(") {
                (Kind::B, b)
            } else if let Some(b) = rest.strip_prefix("t(") {
                (Kind::T, b)
            } else {
                return Err(format!("expected b(i) or t(i) in {s:?}"));
            };
            let close = body.find(')').ok_or_else(|| format!("unclosed generator in {s:?}"))?;
            let i: u8 = body[..close].parse().map_err(|_| format!("bad index in {s:?}"))?;
            if i == 0 || i as usize >= n {
                return Err(format!("generator index {i} out of range for degree {n}"));
            }
            rest = &body[close + 1..];
            let inverse = if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                true
            } else {
                false
            };
            let g = LbGen { kind, i, inverse: inverse && kind == Kind::B };
            w.push(g);
        }
        let g = self.elem(n, &w);
        if self.pure && !self.rho(&g).is_identity() {
            return Err("element is not pure".into());
        }
        Ok(g)
    }

    /// The relations hold as automorphisms, (FCS2) and strict compatibility
    /// hold on generators, and (FCS1) holds for every defining relation.
    fn presentation_checks(&self, n_max: usize) -> Option<Vec<AxiomLine>> {
        let sys = LoopBraid::new();
        let mut lines = Vec::new();
        for n in 2..=n_max {
            let rels = relations(n);
            let bad = rels.iter().find(|(_, u, v)| word_aut(n, u) != word_aut(n, v));
            lines.push(verdict("relations", n, bad.map(|(name, u, v)| fmt_rel(&sys, n, name, u, v))));
            let bad = rels.iter().find(|(_, u, v)| LoopBraid::word_rho(n, u) != LoopBraid::word_rho(n, v));
            lines.push(verdict("rho-relations", n, bad.map(|(name, u, v)| fmt_rel(&sys, n, name, u, v))));

            let m = (n - 1) as u8;
            let gens: Vec<LbGen> =
                (1..=m).flat_map(|i| [LbGen::beta(i), LbGen::beta_inv(i), LbGen::sigma(i)]).collect();
            let mut fcs2 = None;
            let mut fcs3 = None;
            for &g in &gens {
                let e = sys.raw(n, &[g]);
                for k in 1..=n {
                    if sys.rho(&sys.kappa(&e, k)) != symm_clone(&sys.rho(&e), k) {
                        fcs3.get_or_insert_with(|| format!("g={};k={k}", sys.format(&e)));
                    }
                    for l in k + 1..=n {
                        let a = sys.kappa(&sys.kappa(&e, l), k);
                        let b = sys.kappa(&sys.kappa(&e, k), l + 1);
                        if a.aut != b.aut {
                            fcs2.get_or_insert_with(|| format!("g={};k={k};l={l}", sys.format(&e)));
                        }
                    }
                }
            }
            lines.push(verdict("FCS2-generators", n, fcs2));
            lines.push(verdict("FCS3-generators", n, fcs3));

            let mut fcs1 = None;
            for (name, u, v) in &rels {
                for p in 1..=n {
                    let a = sys.kappa(&sys.raw(n, u), p);
                    let b = sys.kappa(&sys.raw(n, v), p);
                    if a.aut != b.aut {
                        fcs1.get_or_insert_with(|| format!("{};p={p}", fmt_rel(&sys, n, name, u, v)));
                    }
                }
            }
            lines.push(verdict("FCS1-relators", n, fcs1));
        }
        Some(lines)
    }
}

fn fmt_rel(sys: &LoopBraid, n: usize, name: &str, u: &[LbGen], v: &[LbGen]) -> String {
    format!("{name}:{}={}", sys.format(&sys.raw(n, u)), sys.format(&sys.raw(n, v)))
}

fn verdict(axiom: &str, n: usize, bad: Option<String>) -> AxiomLine {
    match bad {
        None => AxiomLine::new(axiom, n, Status::Pass, String::new()),
        Some(w) => AxiomLine::new(axiom, n, Status::Fail, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generator_actions() {
        let b = LbGen::beta(1).aut(2);
        assert_eq!(b.images, vec![vec![2], vec![-2, 1, 2]]);
        let bi = LbGen::beta_inv(1).aut(2);
        // the other composition order breaks a mixed relation
        let left: Vec<LbGen> = vec![LbGen::beta(1), LbGen::beta(2), LbGen::sigma(1)];
        let right: Vec<LbGen> = vec![LbGen::sigma(2), LbGen::beta(1), LbGen::beta(2)];
        let fold = |w: &[LbGen]| w.iter().fold(FreeAut::identity(3), |acc, g| acc.compose(&g.aut(3)));
        assert_ne!(fold(&left), fold(&right));
        assert_eq!(b.compose(&bi), FreeAut::identity(2));
        assert_eq!(bi.compose(&b), FreeAut::identity(2));
    }

    #[test]
    fn all_relations_hold() {
        for n in 2..=6 {
            for (name, u, v) in relations(n) {
                assert_eq!(word_aut(n, &u), word_aut(n, &v), "{name} {u:?} {v:?}");
            }
        }
        // the β-only words satisfy the braid relation and σ² = 1
        let sys = LoopBraid::new();
        let s = sys.parse("t(2)t(2)", 3).unwrap();
        assert_eq!(sys.decide_eq(&s, &sys.identity(3)), Some(true));
        let l = sys.parse("b(1)b(2)t(1)", 3).unwrap();
        let r = sys.parse("t(2)b(1)b(2)", 3).unwrap();
        assert_eq!(sys.decide_eq(&l, &r), Some(true));
    }

    #[test]
    fn figure_cloning() {
        let sys = LoopBraid::new();
        let b1 = sys.parse("b(1)", 2).unwrap();
        assert_eq!(sys.format(&sys.kappa(&b1, 2)), "b(2)b(1)");
        let g = sys.parse("t(1)b(2)", 3).unwrap();
        assert_eq!(sys.format(&sys.kappa(&g, 3)), "t(2)t(1)b(3)b(2)");
        assert_eq!(sys.rho(&g).apply(3), 1);
    }

    #[test]
    fn pure_samples_are_pure() {
        let sys = LoopBraid::pure();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let g = sys.random(4, &mut rng);
            assert!(sys.rho(&g).is_identity());
            for k in 1..=4 {
                assert!(sys.rho(&sys.kappa(&g, k)).is_identity());
            }
        }
        for g in sys.generators(4) {
            assert!(sys.rho(&g).is_identity());
        }
    }
}
