//! Upper triangular matrices modulo everything from the second
//! off-diagonal on: only the diagonal and first off-diagonal survive.

use rand_chacha::ChaCha8Rng;

use super::matrix::{Mat, MatOps};
use super::ring::Ring;
use crate::cloning::CloningSystem;
use crate::forest::Subgraph;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BBarElem<E> {
    pub diag: Vec<E>,
    /// Entries `(i, i+1)`, length `n - 1` (0 when `n = 0`).
    pub off: Vec<E>,
}

#[derive(Clone, Debug)]
pub struct BBar<R: Ring> {
    pub ops: MatOps<R>,
}

impl<R: Ring> BBar<R> {
    pub fn new(ring: R) -> BBar<R> {
        BBar { ops: MatOps { ring } }
    }

    fn ring(&self) -> &R {
        &self.ops.ring
    }

    pub fn lift(&self, x: &BBarElem<R::E>) -> Mat<R::E> {
        let n = x.diag.len();
        let mut m = self.ops.zero(n);
        for i in 1..=n {
            m.set(i, i, x.diag[i - 1].clone());
            if i < n {
                m.set(i, i + 1, x.off[i - 1].clone());
            }
        }
        m
    }

    pub fn project(&self, m: &Mat<R::E>) -> BBarElem<R::E> {
        let n = m.n();
        BBarElem {
            diag: (1..=n).map(|i| m.get(i, i).clone()).collect(),
            off: (1..n).map(|i| m.get(i, i + 1).clone()).collect(),
        }
    }

    /// Canonical representative of `x·κ_Γ(B̄_m)`: diagonal 1 at stable
    /// vertices, first off-diagonal 0 between components, and every
    /// component scaled by the inverse of its stable diagonal entry.
    pub fn reduce(&self, x: &BBarElem<R::E>, gamma: &Subgraph) -> BBarElem<R::E> {
        let r = self.ring();
        let mut out = x.clone();
        for (s, z) in gamma.components() {
            let stable = s + z - 1;
            let h = r.unit_inv(&x.diag[stable - 1]).expect("diagonal entry is not a unit");
            for v in s..=stable {
                out.diag[v - 1] = r.mul(&x.diag[v - 1], &h);
                if v < stable {
                    out.off[v - 1] = r.mul(&x.off[v - 1], &h);
                }
            }
            if stable < x.diag.len() {
                out.off[stable - 1] = r.zero();
            }
        }
        out
    }

    /// Every reduced representative for `Γ`, in enumeration order.
    pub fn reduced_reps(&self, gamma: &Subgraph) -> Option<Vec<BBarElem<R::E>>> {
        let r = self.ring();
        let (els, units) = (r.elements()?, r.units()?);
        let n = gamma.n();
        let mut slots: Vec<(bool, usize, Vec<R::E>)> = Vec::new();
        for (s, z) in gamma.components() {
            let stable = s + z - 1;
            for v in s..stable {
                slots.push((true, v, units.clone()));
                slots.push((false, v, els.clone()));
            }
        }
        let mut out = Vec::new();
        let mut cur = self.identity(n);
        fn go<E: Clone>(slots: &[(bool, usize, Vec<E>)], at: usize, cur: &mut BBarElem<E>, out: &mut Vec<BBarElem<E>>) {
            if at == slots.len() {
                out.push(cur.clone());
                return;
            }
            let (is_diag, v, vals) = &slots[at];
            for val in vals {
                if *is_diag {
                    cur.diag[v - 1] = val.clone();
                } else {
                    cur.off[v - 1] = val.clone();
                }
                go(slots, at + 1, cur, out);
            }
        }
        go(&slots, 0, &mut cur, &mut out);
        Some(out)
    }
}

impl<R: Ring> CloningSystem for BBar<R> {
    type Elem = BBarElem<R::E>;

    fn name(&self) -> String {
        format!("bbar:{}", self.ring().name())
    }
    fn identity(&self, n: usize) -> Self::Elem {
        let r = self.ring();
        BBarElem { diag: vec![r.one(); n], off: vec![r.zero(); n.saturating_sub(1)] }
    }
    fn degree(&self, g: &Self::Elem) -> usize {
        g.diag.len()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.diag.len().max(b.diag.len());
        let (a, b) = (self.include(a, n), self.include(b, n));
        let r = self.ring();
        BBarElem {
            diag: (0..n).map(|i| r.mul(&a.diag[i], &b.diag[i])).collect(),
            off: (0..n.saturating_sub(1))
                .map(|i| r.add(&r.mul(&a.diag[i], &b.off[i]), &r.mul(&a.off[i], &b.diag[i + 1])))
                .collect(),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let r = self.ring();
        let d: Vec<R::E> = a.diag.iter().map(|x| r.unit_inv(x).expect("diagonal entry is not a unit")).collect();
        let off = (0..a.off.len()).map(|i| r.neg(&r.mul(&r.mul(&d[i], &a.off[i]), &d[i + 1]))).collect();
        BBarElem { diag: d, off }
    }
    fn decide_eq(&self, a: &Self::Elem, b: &Self::Elem) -> Option<bool> {
        let n = a.diag.len().max(b.diag.len());
        Some(self.include(a, n) == self.include(b, n))
    }
    fn include(&self, g: &Self::Elem, n: usize) -> Self::Elem {
        let r = self.ring();
        let mut out = g.clone();
        if n > g.diag.len() {
            if !g.diag.is_empty() {
                out.off.push(r.zero());
            }
            out.diag.resize(n, r.one());
            out.off.resize(n - 1, r.zero());
        }
        out
    }
    fn restrict(&self, g: &Self::Elem, m: usize) -> Result<Option<Self::Elem>, ()> {
        let r = self.ring();
        if m > g.diag.len() || g.diag.iter().skip(m).any(|x| *x != r.one()) || g.off.iter().skip(m.saturating_sub(1)).any(|x| !r.is_zero(x)) {
            return Ok(None);
        }
        Ok(Some(BBarElem { diag: g.diag[..m].to_vec(), off: g.off[..m.saturating_sub(1)].to_vec() }))
    }
    fn rho(&self, g: &Self::Elem) -> Perm {
        Perm::identity(g.diag.len())
    }
    fn rho_trivial(&self) -> bool {
        true
    }
    fn kappa(&self, g: &Self::Elem, k: usize) -> Self::Elem {
        self.project(&self.ops.kappa(&self.lift(g), k))
    }
    fn unclone(&self, h: &Self::Elem, k: usize) -> Option<Option<Self::Elem>> {
        let n1 = h.diag.len();
        if n1 < 2 || k >= n1 || h.diag[k - 1] != h.diag[k] || !self.ring().is_zero(&h.off[k - 1]) {
            return Some(None);
        }
        let mut g = h.clone();
        g.diag.remove(k);
        g.off.remove(k - 1);
        Some((self.kappa(&g, k) == *h).then_some(g))
    }
    fn order(&self, n: usize) -> Option<u128> {
        let q = self.ring().size()?;
        Some((q - 1).pow(n as u32) * q.pow(n.saturating_sub(1) as u32))
    }
    fn elements(&self, n: usize) -> Option<Vec<Self::Elem>> {
        let all = Subgraph::any(n, (1..n).collect()).ok()?;
        // with everything in one component only the last diagonal entry is pinned
        let reps = self.reduced_reps(&all)?;
        let units = self.ring().units()?;
        let mut out = Vec::new();
        for u in &units {
            for x in &reps {
                let mut y = x.clone();
                if n > 0 {
                    y.diag[n - 1] = u.clone();
                }
                out.push(y);
            }
        }
        out.sort();
        Some(out)
    }
    fn generators(&self, n: usize) -> Vec<Self::Elem> {
        let r = self.ring();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut x = self.identity(n);
            x.off[i] = r.one();
            out.push(x);
        }
        if let Some(units) = r.units() {
            for i in 0..n {
                for u in units.iter().filter(|u| **u != r.one()).take(2) {
                    let mut x = self.identity(n);
                    x.diag[i] = u.clone();
                    out.push(x);
                }
            }
        }
        out
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> Self::Elem {
        let r = self.ring();
        BBarElem {
            diag: (0..n).map(|_| r.random_unit(rng)).collect(),
            off: (0..n.saturating_sub(1)).map(|_| r.random(rng)).collect(),
        }
    }
    fn format(&self, g: &Self::Elem) -> String {
        let r = self.ring();
        let d: Vec<String> = g.diag.iter().map(|x| r.format(x)).collect();
        let o: Vec<String> = g.off.iter().map(|x| r.format(x)).collect();
        format!("[{};{}]", d.join(","), o.join(","))
    }
    /// `[d1,…,dn;o1,…,o(n-1)]`.
    fn parse(&self, s: &str, n: usize) -> Result<Self::Elem, String> {
        let r = self.ring();
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (d, o) = t.split_once(';').ok_or_else(|| format!("expected diagonal;offdiagonal in {s:?}"))?;
        let list = |x: &str| -> Result<Vec<R::E>, String> {
            if x.trim().is_empty() {
                Ok(Vec::new())
            } else {
                x.split(',').map(|e| r.parse(e)).collect()
            }
        };
        let (diag, off) = (list(d)?, list(o)?);
        if diag.len() != n || off.len() != n.saturating_sub(1) {
            return Err(format!("expected {n} diagonal and {} off-diagonal entries", n.saturating_sub(1)));
        }
        if diag.iter().any(|x| !r.is_unit(x)) {
            return Err("diagonal entries must be units".into());
        }
        Ok(BBarElem { diag, off })
    }
    fn dangling_rep(&self, g: &Self::Elem, gamma: &Subgraph) -> Option<(Self::Elem, Subgraph)> {
        Some((self.reduce(g, gamma), gamma.clone()))
    }
    fn dangling_classes(&self, gamma: &Subgraph) -> Option<Vec<Self::Elem>> {
        self.reduced_reps(gamma)
    }
}
