//! The trivial system (giving F), the symmetric system (giving V) and
//! direct powers of a cyclic group.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cloning::CloningSystem;
use crate::forest::Subgraph;
use crate::perm::{symm_clone, symm_unclone, Perm};

/// Trivial groups; an element is just its degree.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl CloningSystem for Trivial {
    type Elem = usize;

    fn name(&self) -> String {
        "trivial".into()
    }
    fn identity(&self, n: usize) -> usize {
        n
    }
    fn degree(&self, g: &usize) -> usize {
        *g
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        *a.max(b)
    }
    fn inv(&self, a: &usize) -> usize {
        *a
    }
    fn decide_eq(&self, _a: &usize, _b: &usize) -> Option<bool> {
        Some(true)
    }
    fn include(&self, _g: &usize, n: usize) -> usize {
        n
    }
    fn restrict(&self, _g: &usize, m: usize) -> Result<Option<usize>, ()> {
        Ok(Some(m))
    }
    fn rho(&self, g: &usize) -> Perm {
        Perm::identity(*g)
    }
    fn kappa(&self, g: &usize, _k: usize) -> usize {
        g + 1
    }
    fn unclone(&self, h: &usize, _k: usize) -> Option<Option<usize>> {
        Some((*h >= 2).then(|| h - 1))
    }
    fn rho_trivial(&self) -> bool {
        true
    }
    fn order(&self, _n: usize) -> Option<u128> {
        Some(1)
    }
    fn elements(&self, n: usize) -> Option<Vec<usize>> {
        Some(vec![n])
    }
    fn generators(&self, _n: usize) -> Vec<usize> {
        Vec::new()
    }
    fn random(&self, n: usize, _rng: &mut ChaCha8Rng) -> usize {
        n
    }
    fn format(&self, _g: &usize) -> String {
        "1".into()
    }
    fn parse(&self, s: &str, n: usize) -> Result<usize, String> {
        match s.trim() {
            "" | "1" | "id" | "()" => Ok(n),
            t => Err(format!("trivial group has only the identity, got {t:?}")),
        }
    }
    fn kappa_subgraph(&self, _g: &usize, gamma: &Subgraph) -> usize {
        gamma.n()
    }
    fn dangling_rep(&self, g: &usize, gamma: &Subgraph) -> Option<(usize, Subgraph)> {
        Some((*g, gamma.clone()))
    }
    fn dangling_classes(&self, gamma: &Subgraph) -> Option<Vec<usize>> {
        Some(vec![gamma.n()])
    }
}

/// Symmetric groups with strand-doubling cloning.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symmetric;

impl CloningSystem for Symmetric {
    type Elem = Perm;

    fn name(&self) -> String {
        "symmetric".into()
    }
    fn identity(&self, n: usize) -> Perm {
        Perm::identity(n)
    }
    fn degree(&self, g: &Perm) -> usize {
        g.degree()
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.mul(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inv()
    }
    fn decide_eq(&self, a: &Perm, b: &Perm) -> Option<bool> {
        let n = a.degree().max(b.degree());
        Some(a.extend(n) == b.extend(n))
    }
    fn include(&self, g: &Perm, n: usize) -> Perm {
        g.extend(n)
    }
    fn restrict(&self, g: &Perm, m: usize) -> Result<Option<Perm>, ()> {
        Ok(g.restrict(m))
    }
    fn rho(&self, g: &Perm) -> Perm {
        g.clone()
    }
    fn kappa(&self, g: &Perm, k: usize) -> Perm {
        symm_clone(g, k)
    }
    fn unclone(&self, h: &Perm, k: usize) -> Option<Option<Perm>> {
        Some(symm_unclone(h, k))
    }
    fn order(&self, n: usize) -> Option<u128> {
        (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b))
    }
    fn elements(&self, n: usize) -> Option<Vec<Perm>> {
        Some(Perm::all(n))
    }
    fn generators(&self, n: usize) -> Vec<Perm> {
        (1..n).map(|i| Perm::transposition(n, i, i + 1)).collect()
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> Perm {
        Perm::random(n, rng)
    }
    fn format(&self, g: &Perm) -> String {
        g.to_string()
    }
    fn parse(&self, s: &str, n: usize) -> Result<Perm, String> {
        Perm::parse(s, n)
    }
}

/// `G_n = (ℤ/m)^n`. With `diagonal` cloning duplicates a coordinate; without
/// it cloning is the inclusion, which is not properly graded.
#[derive(Clone, Copy, Debug)]
pub struct DirectPower {
    pub modulus: u64,
    pub diagonal: bool,
}

impl DirectPower {
    pub fn new(modulus: u64) -> DirectPower {
        assert!(modulus >= 1, "modulus must be positive");
        DirectPower { modulus, diagonal: true }
    }

    /// The system whose cloning maps are the inclusions `g ↦ (g, 0)`.
    pub fn inclusion_cloning(modulus: u64) -> DirectPower {
        DirectPower { modulus, diagonal: false }
    }
}

impl CloningSystem for DirectPower {
    type Elem = Vec<u64>;

    fn name(&self) -> String {
        if self.diagonal {
            format!("power:Z/{}", self.modulus)
        } else {
            format!("power-iota:Z/{}", self.modulus)
        }
    }
    fn identity(&self, n: usize) -> Vec<u64> {
        vec![0; n]
    }
    fn degree(&self, g: &Vec<u64>) -> usize {
        g.len()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.modulus)
            .collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.modulus - x) % self.modulus).collect()
    }
    fn decide_eq(&self, a: &Vec<u64>, b: &Vec<u64>) -> Option<bool> {
        let n = a.len().max(b.len());
        Some(self.include(a, n) == self.include(b, n))
    }
    fn include(&self, g: &Vec<u64>, n: usize) -> Vec<u64> {
        let mut out = g.clone();
        out.resize(n.max(g.len()), 0);
        out
    }
    fn restrict(&self, g: &Vec<u64>, m: usize) -> Result<Option<Vec<u64>>, ()> {
        if g.iter().skip(m).any(|&x| x != 0) {
            return Ok(None);
        }
        Ok(Some(self.include(&g[..m.min(g.len())].to_vec(), m)))
    }
    fn rho(&self, g: &Vec<u64>) -> Perm {
        Perm::identity(g.len())
    }
    fn rho_trivial(&self) -> bool {
        true
    }
    fn kappa(&self, g: &Vec<u64>, k: usize) -> Vec<u64> {
        assert!(k >= 1 && k <= g.len(), "cloning index {k} out of range");
        let mut out = g.clone();
        if self.diagonal {
            out.insert(k, g[k - 1]);
        } else {
            out.push(0);
        }
        out
    }
    fn unclone(&self, h: &Vec<u64>, k: usize) -> Option<Option<Vec<u64>>> {
        if h.len() < 2 || k >= h.len() {
            return Some(None);
        }
        if self.diagonal {
            if h[k - 1] != h[k] {
                return Some(None);
            }
            let mut g = h.clone();
            g.remove(k);
            Some(Some(g))
        } else {
            Some((h[h.len() - 1] == 0).then(|| h[..h.len() - 1].to_vec()))
        }
    }
    fn order(&self, n: usize) -> Option<u128> {
        (self.modulus as u128).checked_pow(n as u32)
    }
    fn elements(&self, n: usize) -> Option<Vec<Vec<u64>>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..self.modulus).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }
    fn generators(&self, n: usize) -> Vec<Vec<u64>> {
        if self.modulus == 1 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect()
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
        (0..n).map(|_| rng.gen_range(0..self.modulus)).collect()
    }
    fn format(&self, g: &Vec<u64>) -> String {
        let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
    fn parse(&self, s: &str, n: usize) -> Result<Vec<u64>, String> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Result<Vec<u64>, _> = if t.trim().is_empty() {
            Ok(Vec::new())
        } else {
            t.split(',').map(|x| x.trim().parse::<i64>().map(|x| x.rem_euclid(self.modulus as i64) as u64)).collect()
        };
        let v = v.map_err(|_| format!("bad tuple {s:?}"))?;
        if v.len() != n {
            return Err(format!("expected a tuple of length {n}, got {}", v.len()));
        }
        Ok(v)
    }
    fn kappa_subgraph(&self, g: &Vec<u64>, gamma: &Subgraph) -> Vec<u64> {
        if !self.diagonal {
            return self.include(g, gamma.n());
        }
        let comps = gamma.components();
        assert_eq!(comps.len(), g.len(), "tuple length must equal the number of components");
        comps.iter().zip(g).flat_map(|(&(_, size), &x)| std::iter::repeat_n(x, size)).collect()
    }
}
