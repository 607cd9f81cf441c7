//! Arithmetic in the Thompson group `𝒯(G₊)` of a cloning system.
//!
//! An element is a triple `[E₋, g, E₊]` of two semisimple forests with `n`
//! feet and `g ∈ G_n`, standing for `E₋ g E₊⁻¹`. Triples are compared by
//! aligning their right forests at the least common right multiple.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cloning::{act_and_clone, CloningSystem};
use crate::forest::{Forest, Tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<E> {
    pub left: Forest,
    pub mid: E,
    pub right: Forest,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ElementError {
    #[error("forests must be semisimple")]
    NotSemisimple,
    #[error("feet mismatch: left {0}, group degree {1}, right {2}")]
    Feet(usize, usize, usize),
    #[error("forest of rank {0} does not fit {1} feet")]
    Rank(usize, usize),
    #[error("{0}")]
    Parse(String),
}

impl<E> Element<E> {
    pub fn feet(&self) -> usize {
        self.left.feet()
    }
}

/// Build `[E₋, g, E₊]`, checking shapes.
pub fn element<S: CloningSystem + ?Sized>(sys: &S, left: Forest, mid: S::Elem, right: Forest) -> Result<Element<S::Elem>, ElementError> {
    if !left.is_semisimple() || !right.is_semisimple() {
        return Err(ElementError::NotSemisimple);
    }
    let (a, d, b) = (left.feet(), sys.degree(&mid), right.feet());
    if a != d || b != d {
        return Err(ElementError::Feet(a, d, b));
    }
    Ok(Element { left, mid, right })
}

/// `[T, g, T]` for a tree with `degree(g)` leaves.
pub fn embed_group<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, t: &Tree) -> Result<Element<S::Elem>, ElementError> {
    let f = Forest::from_tree(t);
    element(sys, f.clone(), g.clone(), f)
}

pub fn identity<S: CloningSystem + ?Sized>(sys: &S) -> Element<S::Elem> {
    Element { left: Forest::empty(), mid: sys.identity(1), right: Forest::empty() }
}

/// `(E₋(g·F), g^F, E₊F)`.
pub fn expand<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>, f: &Forest) -> Result<Element<S::Elem>, ElementError> {
    if f.rank() > t.feet() {
        return Err(ElementError::Rank(f.rank(), t.feet()));
    }
    let (gf, clone) = act_and_clone(sys, &t.mid, f);
    Ok(Element { left: t.left.mul(&gf), mid: clone, right: t.right.mul(f) })
}

fn expand_fit<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>, f: &Forest) -> Element<S::Elem> {
    expand(sys, t, f).expect("complement of a semisimple forest fits")
}

/// One reduction step at the caret joining right leaves `k` and `k+1`.
fn reduce_at<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>, k: usize) -> Option<Element<S::Elem>> {
    let right = t.right.strip_caret(k)?;
    let g0 = match sys.unclone(&t.mid, k) {
        Some(found) => found?,
        // Without inverse cloning only the identity is recognized.
        None => {
            let n = sys.degree(&t.mid);
            if sys.decide_eq(&t.mid, &sys.identity(n)) == Some(true) {
                sys.identity(n - 1)
            } else {
                return None;
            }
        }
    };
    let l = sys.rho(&g0).apply(k);
    let left = t.left.strip_caret(l)?;
    Some(Element { left, mid: g0, right })
}

/// Remove carets greedily, highest right leaf first, until none applies.
///
/// With inverse cloning available the result admits no further reduction;
/// otherwise only carets over identity middles are removed.
pub fn reduce<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>) -> Element<S::Elem> {
    let mut cur = t.clone();
    'outer: loop {
        for k in (1..cur.feet()).rev() {
            if let Some(r) = reduce_at(sys, &cur, k) {
                cur = r;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Equality in `𝒯(G₊)`; `None` when the middle comparison is undecided.
pub fn decide_eq<S: CloningSystem + ?Sized>(sys: &S, s: &Element<S::Elem>, t: &Element<S::Elem>) -> Option<bool> {
    let (_, ca, cb) = s.right.lcm_right(&t.right);
    let (s2, t2) = (expand_fit(sys, s, &ca), expand_fit(sys, t, &cb));
    if s2.left != t2.left {
        return Some(false);
    }
    sys.decide_eq(&s2.mid, &t2.mid)
}

/// Equality; panics if the system cannot decide.
pub fn eq<S: CloningSystem + ?Sized>(sys: &S, s: &Element<S::Elem>, t: &Element<S::Elem>) -> bool {
    decide_eq(sys, s, t).unwrap_or_else(|| panic!("{}: equality undecided", sys.name()))
}

pub fn mul<S: CloningSystem + ?Sized>(sys: &S, s: &Element<S::Elem>, t: &Element<S::Elem>) -> Element<S::Elem> {
    let (_, ca, cb) = s.right.lcm_right(&t.left);
    let s2 = expand_fit(sys, s, &ca);
    let t2 = expand_fit(sys, &inv(sys, t), &cb);
    Element { left: s2.left, mid: sys.mul(&s2.mid, &sys.inv(&t2.mid)), right: t2.left }
}

pub fn inv<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>) -> Element<S::Elem> {
    Element { left: t.right.clone(), mid: sys.inv(&t.mid), right: t.left.clone() }
}

/// Expand at the first leaf until both trees have more than `n` leaves.
pub fn truncate_rewrite<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>, n: usize) -> Element<S::Elem> {
    let mut cur = t.clone();
    while cur.feet() <= n {
        cur = expand_fit(sys, &cur, &Forest::caret(1));
    }
    cur
}

/// Image under the map induced by a morphism of cloning systems.
pub fn apply_morphism<S, T, F>(_src: &S, t: &Element<S::Elem>, phi: F) -> Element<T::Elem>
where
    S: CloningSystem + ?Sized,
    T: CloningSystem + ?Sized,
    F: Fn(&S::Elem) -> T::Elem,
{
    Element { left: t.left.clone(), mid: phi(&t.mid), right: t.right.clone() }
}

/// Check the morphism identities `φ(gh) = φ(g)φ(h)`, `φ((g)κ_k) = (φ(g))κ_k`
/// and `ρ(φ(g)) = ρ(g)` on the given elements; returns a witness on failure.
pub fn check_morphism<S, T, F>(src: &S, dst: &T, phi: F, samples: &[S::Elem]) -> Result<(), String>
where
    S: CloningSystem + ?Sized,
    T: CloningSystem + ?Sized,
    F: Fn(&S::Elem) -> T::Elem,
{
    for g in samples {
        let pg = phi(g);
        let n = src.degree(g);
        if dst.rho(&pg) != src.rho(g) {
            return Err(format!("rho differs at {}", src.format(g)));
        }
        for k in 1..=n {
            if dst.decide_eq(&phi(&src.kappa(g, k)), &dst.kappa(&pg, k)) != Some(true) {
                return Err(format!("cloning differs at {} k={k}", src.format(g)));
            }
        }
        for h in samples.iter().filter(|h| src.degree(h) == n) {
            if dst.decide_eq(&phi(&src.mul(g, h)), &dst.mul(&pg, &phi(h))) != Some(true) {
                return Err(format!("not multiplicative at {} {}", src.format(g), src.format(h)));
            }
        }
    }
    Ok(())
}

/// Random semisimple forest with `n` feet.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Forest {
    let mut w = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        w.push(rng.gen_range(1..=i));
    }
    Forest::from_word(&w)
}

/// Random triple with between 1 and `max_feet` feet.
pub fn random_element<S: CloningSystem + ?Sized>(sys: &S, max_feet: usize, rng: &mut ChaCha8Rng) -> Element<S::Elem> {
    let n = rng.gen_range(1..=max_feet.max(1));
    let left = random_tree(n, rng);
    let right = random_tree(n, rng);
    Element { left, mid: sys.random(n, rng), right }
}

/// Outcome of checking the splitting `𝒯(G₊) = 𝒯K(G₊) ⋊ F` for `ρ = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplittingReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

/// For a system with trivial `ρ`, check that the section `F → 𝒯(G₊)` followed
/// by the projection is the identity, and that `t·s(π(t))⁻¹` lies in the
/// kernel (equal left and right forests).
pub fn kernel_splitting_check<S: CloningSystem + ?Sized>(sys: &S, samples: &[Element<S::Elem>]) -> SplittingReport {
    let mut rep = SplittingReport { samples: samples.len(), ..Default::default() };
    if !sys.rho_trivial() {
        rep.failures.push("rho is not trivial".into());
        return rep;
    }
    let triv = crate::systems::Trivial;
    let project = |t: &Element<S::Elem>| apply_morphism::<S, crate::systems::Trivial, _>(sys, t, |g| sys.degree(g));
    let section = |f: &Element<usize>| apply_morphism::<_, S, _>(&triv, f, |&n| sys.identity(n));
    for t in samples {
        let f = project(t);
        let back = project(&section(&f));
        if !eq(&triv, &back, &f) {
            rep.failures.push(format!("section then projection moves {}", format(&triv, &f)));
        }
        let k = mul(sys, t, &inv(sys, &section(&f)));
        if k.left != k.right {
            rep.failures.push(format!("kernel part {} has distinct forests", format(sys, &k)));
        }
    }
    rep
}

/// `left_tree | mid | right_tree`.
pub fn format<S: CloningSystem + ?Sized>(sys: &S, t: &Element<S::Elem>) -> String {
    format!("{} | {} | {}", t.left.tree(), sys.format(&t.mid), t.right.tree())
}

pub fn parse<S: CloningSystem + ?Sized>(sys: &S, s: &str) -> Result<Element<S::Elem>, ElementError> {
    let (a, rest) = s.split_once('|').ok_or_else(|| ElementError::Parse(format!("expected 'left | mid | right' in {s:?}")))?;
    let (m, b) = rest.rsplit_once('|').ok_or_else(|| ElementError::Parse(format!("expected 'left | mid | right' in {s:?}")))?;
    let tree = |x: &str| -> Result<Forest, ElementError> {
        let t: Tree = x.trim().parse().map_err(|e: crate::forest::ForestError| ElementError::Parse(e.to_string()))?;
        Ok(Forest::from_tree(&t))
    };
    let (left, right) = (tree(a)?, tree(b)?);
    let mid = sys.parse(m.trim(), left.feet()).map_err(ElementError::Parse)?;
    element(sys, left, mid, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::systems::{Borel, DirectPower, Exact, Symmetric, Trivial};
    use rand::SeedableRng;

    fn caret() -> Forest {
        Forest::caret(1)
    }

    #[test]
    fn transposition_has_order_two() {
        let v = Symmetric;
        let sigma = element(&v, caret(), Perm::transposition(2, 1, 2), caret()).unwrap();
        assert!(eq(&v, &mul(&v, &sigma, &sigma), &identity(&v)));
        assert!(!eq(&v, &sigma, &identity(&v)));
        let one = element(&v, caret(), Perm::identity(2), caret()).unwrap();
        assert_eq!(decide_eq(&v, &sigma, &one), Some(false));
    }

    fn x0() -> Element<usize> {
        // ((·,·),·) over (·,(·,·))
        element(&Trivial, Forest::from_word(&[1, 1]), 3, Forest::from_word(&[1, 2])).unwrap()
    }

    fn x1() -> Element<usize> {
        element(&Trivial, Forest::from_word(&[1, 2, 2]), 4, Forest::from_word(&[1, 2, 3])).unwrap()
    }

    #[test]
    fn thompson_f_relator() {
        let f = Trivial;
        let (a, b) = (x0(), x1());
        let ai = inv(&f, &a);
        assert!(!eq(&f, &mul(&f, &b, &ai), &identity(&f)));
        let u = mul(&f, &a, &inv(&f, &b));
        let v = mul(&f, &mul(&f, &ai, &b), &a);
        let comm = mul(&f, &mul(&f, &u, &v), &mul(&f, &inv(&f, &u), &inv(&f, &v)));
        assert!(eq(&f, &comm, &identity(&f)));
        assert_eq!(reduce(&f, &comm), identity(&f), "{}", format(&f, &comm));
    }

    #[test]
    fn matrix_expansion_and_back() {
        let sys = Borel::new(Exact::Rationals);
        let g = sys.parse("[1,2,3;0,4,5;0,0,6]", 3).unwrap();
        let tree = Forest::from_word(&[1, 1]);
        let t = element(&sys, tree.clone(), g, tree).unwrap();
        let e = expand(&sys, &t, &Forest::caret(2)).unwrap();
        assert_eq!(sys.format(&e.mid), "[1,2,2,3;0,4,0,0;0,0,4,5;0,0,0,6]");
        assert_eq!(reduce(&sys, &e), t);
    }

    #[test]
    fn symmetric_expansion() {
        let v = Symmetric;
        let t = element(&v, Forest::from_word(&[1]), Perm::transposition(2, 1, 2), Forest::caret(1)).unwrap();
        let t3 = expand(&v, &embed_group(&v, &Perm::transposition(3, 1, 2), &"((·,·),·)".parse().unwrap()).unwrap(), &Forest::caret(2)).unwrap();
        assert_eq!(v.format(&t3.mid), "(1 3 2)");
        let e = expand(&v, &t, &Forest::caret(2)).unwrap();
        assert!(eq(&v, &e, &t));
        assert_eq!(reduce(&v, &e), t);
    }

    #[test]
    fn inverse_formula() {
        let v = Symmetric;
        let t = parse(&v, "((·,·),·) | (1 2 3) | (·,(·,·))").unwrap();
        assert_eq!(format(&v, &inv(&v, &t)), "(·,(·,·)) | (1 3 2) | ((·,·),·)");
    }

    #[test]
    fn truncation_keeps_class() {
        let v = Symmetric;
        let t = element(&v, caret(), Perm::transposition(2, 1, 2), caret()).unwrap();
        let u = truncate_rewrite(&v, &t, 2);
        assert_eq!(u.feet(), 3);
        assert!(eq(&v, &u, &t));
    }

    #[test]
    fn text_round_trip() {
        let v = Symmetric;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t = random_element(&v, 5, &mut rng);
            assert_eq!(parse(&v, &format(&v, &t)).unwrap(), t);
        }
        assert!(parse(&v, "(·,·) | (1 2)").is_err());
        assert!(matches!(parse(&v, "(·,·) | (1 2) | ·"), Err(ElementError::Feet(..))));
    }

    #[test]
    fn splitting_for_power() {
        let sys = DirectPower::new(6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples: Vec<_> = (0..50).map(|_| random_element(&sys, 5, &mut rng)).collect();
        assert!(kernel_splitting_check(&sys, &samples).failures.is_empty());
    }
}
