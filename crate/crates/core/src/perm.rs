//! Permutations of `{1..n}` and the symmetric cloning maps.
//!
//! Composition is `(g∘h)(x) = g(h(x))`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (1..=n).collect() }
    }

    /// From the image list `[g(1), …, g(n)]`.
    pub fn from_images(img: Vec<usize>) -> Option<Perm> {
        let n = img.len();
        let mut seen = vec![false; n + 1];
        for &x in &img {
            if x == 0 || x > n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { img })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Perm> {
        let mut img: Vec<usize> = (1..=n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x == 0 || x > n {
                    return None;
                }
                img[x - 1] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.img.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// Image of `x`; points beyond the degree are fixed.
    pub fn apply(&self, x: usize) -> usize {
        if x <= self.img.len() {
            self.img[x - 1]
        } else {
            x
        }
    }

    pub fn extend(&self, n: usize) -> Perm {
        let mut img = self.img.clone();
        img.extend(img.len() + 1..=n);
        Perm { img }
    }

    /// `self ∘ o`, on the larger of the two degrees.
    pub fn mul(&self, o: &Perm) -> Perm {
        let n = self.degree().max(o.degree());
        Perm { img: (1..=n).map(|x| self.apply(o.apply(x))).collect() }
    }

    pub fn inv(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x - 1] = i + 1;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Largest moved point, 0 for the identity.
    pub fn support(&self) -> usize {
        (1..=self.img.len()).rev().find(|&x| self.apply(x) != x).unwrap_or(0)
    }

    /// Preimage under the inclusion from degree `m`, if `self` fixes every point above `m`.
    pub fn restrict(&self, m: usize) -> Option<Perm> {
        if self.support() > m {
            return None;
        }
        let mut img = self.img.clone();
        img.resize(m, 0);
        for (i, x) in img.iter_mut().enumerate() {
            if *x == 0 {
                *x = i + 1;
            }
        }
        Some(Perm { img })
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.img.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Perm {
        let mut img: Vec<usize> = (1..=n).collect();
        img.shuffle(rng);
        Perm { img }
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm { img: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Parse cycle notation such as `(1 3 2)(4 5)`; `()`, `1` or `id` is the identity.
    pub fn parse(s: &str, n: usize) -> Result<Perm, String> {
        let t = s.trim();
        if t.is_empty() || t == "id" || t == "()" || t == "1" {
            return Ok(Perm::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' in {s:?}"))?;
            let close = open.find(')').ok_or_else(|| format!("unclosed cycle in {s:?}"))?;
            let body = &open[..close];
            let c: Result<Vec<usize>, _> = body
                .split([' ', ','])
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<usize>())
                .collect();
            let c = c.map_err(|_| format!("bad cycle {body:?}"))?;
            cycles.push(c);
            rest = open[close + 1..].trim_start();
        }
        let need = cycles.iter().flatten().copied().max().unwrap_or(0);
        if need > n {
            return Err(format!("point {need} exceeds degree {n}"));
        }
        Perm::from_cycles(n, &cycles).ok_or_else(|| format!("not a permutation: {s:?}"))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// The symmetric cloning map `S_n → S_{n+1}`: strand `k` is doubled.
pub fn symm_clone(g: &Perm, k: usize) -> Perm {
    let n = g.degree().max(k);
    let g = g.extend(n);
    let gk = g.apply(k);
    let img = (1..=n + 1)
        .map(|m| {
            if m <= k {
                let gm = g.apply(m);
                if gm <= gk {
                    gm
                } else {
                    // m < k here since gk is the boundary case
                    gm + 1
                }
            } else {
                let gp = g.apply(m - 1);
                if gp < gk {
                    gp
                } else {
                    gp + 1
                }
            }
        })
        .collect();
    Perm { img }
}

/// Inverse of [`symm_clone`] on its image.
pub fn symm_unclone(h: &Perm, k: usize) -> Option<Perm> {
    let n1 = h.degree();
    if n1 < 2 || k >= n1 {
        return None;
    }
    let hk = h.apply(k);
    if h.apply(k + 1) != hk + 1 {
        return None;
    }
    let img = (1..n1)
        .map(|m| {
            let x = h.apply(if m <= k { m } else { m + 1 });
            if x <= hk {
                x
            } else {
                x - 1
            }
        })
        .collect();
    let g = Perm::from_images(img)?;
    (symm_clone(&g, k) == *h).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clone_example() {
        let g = Perm::parse("(1 2)", 3).unwrap();
        let c = symm_clone(&g, 2);
        assert_eq!(c.to_string(), "(1 3 2)");
        assert_eq!(c.degree(), 4);
        let s2 = Perm::parse("(1 2)", 2).unwrap();
        assert_eq!(symm_clone(&s2, 1).images(), &[2, 3, 1]);
        assert_eq!(symm_clone(&Perm::identity(4), 3), Perm::identity(5));
    }

    #[test]
    fn unclone_example() {
        let h = Perm::parse("(1 3 2)", 4).unwrap();
        assert_eq!(symm_unclone(&h, 2).unwrap(), Perm::parse("(1 2)", 3).unwrap());
        assert_eq!(symm_unclone(&Perm::identity(4), 1), Some(Perm::identity(3)));
        assert_eq!(symm_unclone(&Perm::transposition(4, 2, 3), 2), None);
    }

    #[test]
    fn strand_doubling() {
        // Oracle: double strand k of g and read off where each new strand lands.
        for g in Perm::all(4) {
            for k in 1..=4 {
                let mut img = Vec::new();
                for m in 1..=4 {
                    let t = g.apply(m);
                    let gk = g.apply(k);
                    let lift = |x: usize| if x > gk { x + 1 } else { x };
                    if m == k {
                        img.push(gk);
                        img.push(gk + 1);
                    } else {
                        img.push(lift(t));
                    }
                }
                assert_eq!(symm_clone(&g, k).images(), &img[..]);
            }
        }
    }

    #[test]
    fn cycle_text() {
        let p = Perm::parse("(1 4)(2 3)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 4)(2 3)");
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
        assert!(Perm::parse("(1 5)", 4).is_err());
        assert_eq!(p.mul(&p.inv()), Perm::identity(4));
    }

    #[test]
    fn counts() {
        assert_eq!(Perm::all(5).len(), 120);
        assert_eq!(Perm::all(0).len(), 1);
    }
}
