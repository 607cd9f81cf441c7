//! Invertible upper triangular matrices over an exact ring, with the block
//! cloning maps, Abels subgroups, and reduced coset representatives.

use rand_chacha::ChaCha8Rng;

use super::ring::Ring;
use crate::cloning::CloningSystem;
use crate::forest::Subgraph;
use crate::perm::Perm;

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat<E> {
    n: usize,
    a: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Mat<E> {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.a[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.a[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.a.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }
}

/// Matrix operations over a ring.
#[derive(Clone, Debug)]
pub struct MatOps<R: Ring> {
    pub ring: R,
}

impl<R: Ring> MatOps<R> {
    pub fn identity(&self, n: usize) -> Mat<R::E> {
        let mut a = vec![self.ring.zero(); n * n];
        for i in 0..n {
            a[i * n + i] = self.ring.one();
        }
        Mat { n, a }
    }

    pub fn zero(&self, n: usize) -> Mat<R::E> {
        Mat { n, a: vec![self.ring.zero(); n * n] }
    }

    pub fn is_upper_invertible(&self, m: &Mat<R::E>) -> bool {
        let r = &self.ring;
        (1..=m.n).all(|i| r.is_unit(m.get(i, i)) && (1..i).all(|j| r.is_zero(m.get(i, j))))
    }

    /// Product of upper triangular matrices.
    pub fn mul(&self, x: &Mat<R::E>, y: &Mat<R::E>) -> Mat<R::E> {
        assert_eq!(x.n, y.n, "size mismatch");
        let n = x.n;
        let r = &self.ring;
        let mut out = self.zero(n);
        for i in 1..=n {
            for j in i..=n {
                let mut s = r.zero();
                for l in i..=j {
                    let (a, b) = (x.get(i, l), y.get(l, j));
                    if !r.is_zero(a) && !r.is_zero(b) {
                        s = r.add(&s, &r.mul(a, b));
                    }
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Inverse of an invertible upper triangular matrix.
    pub fn inv(&self, x: &Mat<R::E>) -> Mat<R::E> {
        let n = x.n;
        let r = &self.ring;
        let mut out = self.zero(n);
        let dinv: Vec<R::E> = (1..=n).map(|i| r.unit_inv(x.get(i, i)).expect("diagonal entry is not a unit")).collect();
        for j in 1..=n {
            out.set(j, j, dinv[j - 1].clone());
            for i in (1..j).rev() {
                let mut s = r.zero();
                for l in i + 1..=j {
                    s = r.add(&s, &r.mul(x.get(i, l), out.get(l, j)));
                }
                out.set(i, j, r.neg(&r.mul(&dinv[i - 1], &s)));
            }
        }
        out
    }

    /// Block-diagonal inclusion into size `n`.
    pub fn include(&self, x: &Mat<R::E>, n: usize) -> Mat<R::E> {
        let mut out = self.identity(n);
        for i in 1..=x.n {
            for j in 1..=x.n {
                out.set(i, j, x.get(i, j).clone());
            }
        }
        out
    }

    /// Preimage under inclusion from size `m`.
    pub fn restrict(&self, x: &Mat<R::E>, m: usize) -> Option<Mat<R::E>> {
        let n = x.n;
        let id = self.identity(n);
        for i in 1..=n {
            for j in 1..=n {
                if (i > m || j > m) && x.get(i, j) != id.get(i, j) {
                    return None;
                }
            }
        }
        let mut out = self.zero(m);
        for i in 1..=m {
            for j in 1..=m {
                out.set(i, j, x.get(i, j).clone());
            }
        }
        Some(out)
    }

    /// The single cloning map at `k`: column `k` is doubled above row `k`,
    /// row `k` keeps only its diagonal entry and row `k+1` continues it.
    pub fn kappa(&self, x: &Mat<R::E>, k: usize) -> Mat<R::E> {
        let n = x.n;
        assert!(k >= 1 && k <= n, "cloning index {k} out of range for size {n}");
        let r = &self.ring;
        let pi = |i: usize| if i <= k { i } else { i - 1 };
        let mut out = self.zero(n + 1);
        for i in 1..=n + 1 {
            for j in i..=n + 1 {
                let v = if i < k {
                    x.get(i, pi(j)).clone()
                } else if i == k {
                    if j == k {
                        x.get(k, k).clone()
                    } else {
                        r.zero()
                    }
                } else {
                    x.get(i - 1, pi(j)).clone()
                };
                out.set(i, j, v);
            }
        }
        out
    }

    /// Cloning along a spanning subgraph: diagonal blocks are scalar, blocks
    /// above the diagonal carry the entry along their bottom row.
    pub fn kappa_subgraph(&self, x: &Mat<R::E>, gamma: &Subgraph) -> Mat<R::E> {
        let comps = gamma.components();
        assert_eq!(comps.len(), x.n, "matrix size must equal the number of components");
        let n = gamma.n();
        let mut out = self.zero(n);
        for (c, &(sc, zc)) in comps.iter().enumerate() {
            let stable = sc + zc - 1;
            for v in sc..=stable {
                out.set(v, v, x.get(c + 1, c + 1).clone());
            }
            for (d, &(sd, zd)) in comps.iter().enumerate().skip(c + 1) {
                for w in sd..sd + zd {
                    out.set(stable, w, x.get(c + 1, d + 1).clone());
                }
            }
        }
        out
    }

    /// Stable-stable minor: rows and columns at the rightmost vertex of each component.
    pub fn stable_minor(&self, x: &Mat<R::E>, gamma: &Subgraph) -> Mat<R::E> {
        let st: Vec<usize> = gamma.components().iter().map(|&(s, z)| s + z - 1).collect();
        let m = st.len();
        let mut out = self.zero(m);
        for i in 1..=m {
            for j in 1..=m {
                out.set(i, j, x.get(st[i - 1], st[j - 1]).clone());
            }
        }
        out
    }

    /// The representative of `x·κ_Γ(B_m)` with `x - I` modeled on `Γ`:
    /// right multiplication by `κ_Γ(h)` multiplies the stable minor by `h`,
    /// so `h` is the inverse of that minor.
    pub fn reduce(&self, x: &Mat<R::E>, gamma: &Subgraph) -> Mat<R::E> {
        let h = self.inv(&self.stable_minor(x, gamma));
        self.mul(x, &self.kappa_subgraph(&h, gamma))
    }

    /// Whether `x - I` vanishes at every stable-stable position.
    pub fn modeled_on(&self, x: &Mat<R::E>, gamma: &Subgraph) -> bool {
        let id = self.identity(x.n);
        (1..=x.n).all(|i| {
            (1..=x.n).all(|j| !(gamma.is_stable(i) && gamma.is_stable(j)) || x.get(i, j) == id.get(i, j))
        })
    }

    pub fn unclone(&self, y: &Mat<R::E>, k: usize) -> Option<Mat<R::E>> {
        let n1 = y.n;
        if n1 < 2 || k >= n1 {
            return None;
        }
        let n = n1 - 1;
        let mut x = self.zero(n);
        for i in 1..=n {
            for j in i..=n {
                let (si, sj) = (if i < k { i } else { i + 1 }, if j < k { j } else { j + 1 });
                x.set(i, j, y.get(si, sj).clone());
            }
        }
        if !self.is_upper_invertible(&x) {
            return None;
        }
        (self.kappa(&x, k) == *y).then_some(x)
    }

    pub fn format(&self, x: &Mat<R::E>) -> String {
        let rows: Vec<String> = x
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| self.ring.format(e)).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }

    /// `[a,b,c;0,d,e;0,0,f]`; outer brackets optional.
    pub fn parse(&self, s: &str) -> Result<Mat<R::E>, String> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let rows: Result<Vec<Vec<R::E>>, String> = t
            .split(';')
            .map(|row| row.split(',').map(|e| self.ring.parse(e)).collect())
            .collect();
        let rows = rows?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(format!("matrix {s:?} is not square"));
        }
        Ok(Mat::from_rows(rows))
    }
}

/// `B_n(R)`, or the Abels groups when `abels` is set (corner entries 1).
#[derive(Clone, Debug)]
pub struct Borel<R: Ring> {
    pub ops: MatOps<R>,
    pub abels: bool,
}

impl<R: Ring> Borel<R> {
    pub fn new(ring: R) -> Borel<R> {
        Borel { ops: MatOps { ring }, abels: false }
    }

    pub fn abels(ring: R) -> Borel<R> {
        Borel { ops: MatOps { ring }, abels: true }
    }

    fn corner_fixed(&self, i: usize, n: usize) -> bool {
        self.abels && (i == 1 || i == n)
    }

    /// Reduced representatives of all dangling classes `[g, Γ]`: diagonal
    /// entries at stable positions 1, other stable-stable entries 0.
    pub fn reduced_reps(&self, gamma: &Subgraph) -> Option<Vec<Mat<R::E>>> {
        let r = &self.ops.ring;
        let (els, units) = (r.elements()?, r.units()?);
        let n = gamma.n();
        let mut slots: Vec<(usize, usize, Vec<R::E>)> = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                if gamma.is_stable(i) && gamma.is_stable(j) {
                    continue;
                }
                slots.push((i, j, if i == j { units.clone() } else { els.clone() }));
            }
        }
        let mut out = Vec::new();
        let mut cur = self.ops.identity(n);
        fill(&slots, 0, &mut cur, &mut out);
        Some(out)
    }
}

fn fill<E: Clone>(slots: &[(usize, usize, Vec<E>)], at: usize, cur: &mut Mat<E>, out: &mut Vec<Mat<E>>) {
    if at == slots.len() {
        out.push(cur.clone());
        return;
    }
    let (i, j, vals) = &slots[at];
    for v in vals {
        cur.set(*i, *j, v.clone());
        fill(slots, at + 1, cur, out);
    }
}

impl<R: Ring> CloningSystem for Borel<R> {
    type Elem = Mat<R::E>;

    fn name(&self) -> String {
        format!("{}:{}", if self.abels { "abels" } else { "borel" }, self.ops.ring.name())
    }
    fn identity(&self, n: usize) -> Mat<R::E> {
        self.ops.identity(n)
    }
    fn degree(&self, g: &Mat<R::E>) -> usize {
        g.n
    }
    fn mul(&self, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
        let n = a.n.max(b.n);
        if a.n == b.n {
            self.ops.mul(a, b)
        } else {
            self.ops.mul(&self.ops.include(a, n), &self.ops.include(b, n))
        }
    }
    fn inv(&self, a: &Mat<R::E>) -> Mat<R::E> {
        self.ops.inv(a)
    }
    fn decide_eq(&self, a: &Mat<R::E>, b: &Mat<R::E>) -> Option<bool> {
        let n = a.n.max(b.n);
        Some(self.ops.include(a, n) == self.ops.include(b, n))
    }
    fn include(&self, g: &Mat<R::E>, n: usize) -> Mat<R::E> {
        self.ops.include(g, n)
    }
    fn restrict(&self, g: &Mat<R::E>, m: usize) -> Result<Option<Mat<R::E>>, ()> {
        let r = self.ops.restrict(g, m);
        if self.abels {
            // the corner of the smaller matrix must stay 1
            return Ok(r.filter(|x| m == 0 || *x.get(m, m) == self.ops.ring.one()));
        }
        Ok(r)
    }
    fn rho(&self, g: &Mat<R::E>) -> Perm {
        Perm::identity(g.n)
    }
    fn rho_trivial(&self) -> bool {
        true
    }
    fn kappa(&self, g: &Mat<R::E>, k: usize) -> Mat<R::E> {
        self.ops.kappa(g, k)
    }
    fn unclone(&self, h: &Mat<R::E>, k: usize) -> Option<Option<Mat<R::E>>> {
        Some(self.ops.unclone(h, k))
    }
    fn order(&self, n: usize) -> Option<u128> {
        let q = self.ops.ring.size()?;
        let units = q - 1; // prime fields
        let free_diag = (1..=n).filter(|&i| !self.corner_fixed(i, n)).count() as u32;
        Some(units.pow(free_diag) * q.pow((n * (n.saturating_sub(1)) / 2) as u32))
    }
    fn elements(&self, n: usize) -> Option<Vec<Mat<R::E>>> {
        let r = &self.ops.ring;
        let (els, units) = (r.elements()?, r.units()?);
        let mut slots = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                let vals = if i != j {
                    els.clone()
                } else if self.corner_fixed(i, n) {
                    vec![r.one()]
                } else {
                    units.clone()
                };
                slots.push((i, j, vals));
            }
        }
        let mut out = Vec::new();
        let mut cur = self.ops.identity(n);
        fill(&slots, 0, &mut cur, &mut out);
        Some(out)
    }
    fn generators(&self, n: usize) -> Vec<Mat<R::E>> {
        let r = &self.ops.ring;
        let mut out = Vec::new();
        for i in 1..n {
            let mut m = self.ops.identity(n);
            m.set(i, i + 1, r.one());
            out.push(m);
        }
        let unit_samples: Vec<R::E> = match r.units() {
            Some(u) => u.into_iter().filter(|u| *u != r.one()).take(2).collect(),
            None => {
                let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
                (0..3).map(|_| r.random_unit(&mut rng)).filter(|u| *u != r.one()).collect()
            }
        };
        for i in 1..=n {
            if self.corner_fixed(i, n) {
                continue;
            }
            for u in &unit_samples {
                let mut m = self.ops.identity(n);
                m.set(i, i, u.clone());
                out.push(m);
            }
        }
        out
    }
    fn random(&self, n: usize, rng: &mut ChaCha8Rng) -> Mat<R::E> {
        let r = &self.ops.ring;
        let mut m = self.ops.identity(n);
        for i in 1..=n {
            if !self.corner_fixed(i, n) {
                m.set(i, i, r.random_unit(rng));
            }
            for j in i + 1..=n {
                m.set(i, j, r.random(rng));
            }
        }
        m
    }
    fn format(&self, g: &Mat<R::E>) -> String {
        self.ops.format(g)
    }
    fn parse(&self, s: &str, n: usize) -> Result<Mat<R::E>, String> {
        let m = self.ops.parse(s)?;
        if m.n != n {
            return Err(format!("expected a {n}x{n} matrix"));
        }
        if !self.ops.is_upper_invertible(&m) {
            return Err("matrix is not invertible upper triangular".into());
        }
        if self.abels && n > 0 && (*m.get(1, 1) != self.ops.ring.one() || *m.get(n, n) != self.ops.ring.one()) {
            return Err("Abels matrices have corner entries 1".into());
        }
        Ok(m)
    }
    fn kappa_subgraph(&self, g: &Mat<R::E>, gamma: &Subgraph) -> Mat<R::E> {
        self.ops.kappa_subgraph(g, gamma)
    }
    fn dangling_rep(&self, g: &Mat<R::E>, gamma: &Subgraph) -> Option<(Mat<R::E>, Subgraph)> {
        if self.abels {
            return None;
        }
        Some((self.ops.reduce(g, gamma), gamma.clone()))
    }
    fn dangling_classes(&self, gamma: &Subgraph) -> Option<Vec<Mat<R::E>>> {
        if self.abels {
            return None;
        }
        self.reduced_reps(gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloning::clone_by_forest;
    use crate::forest::matchings;
    use crate::systems::ring::{Exact, Fp};

    fn q() -> MatOps<Exact> {
        MatOps { ring: Exact::Rationals }
    }

    #[test]
    fn expansion_example() {
        let ops = q();
        let a = ops.parse("[1,2,3;0,4,5;0,0,6]").unwrap();
        let b = ops.kappa(&a, 2);
        assert_eq!(ops.format(&b), "[1,2,2,3;0,4,0,0;0,0,4,5;0,0,0,6]");
        assert_eq!(ops.unclone(&b, 2), Some(a));
        assert_eq!(ops.kappa(&ops.identity(3), 1), ops.identity(4));
    }

    #[test]
    fn block_map_matches_iterated() {
        let sys = Borel::new(Fp::new(2).unwrap());
        for gamma in matchings(5) {
            let m = gamma.components().len();
            for g in sys.elements(m).unwrap() {
                let direct = sys.ops.kappa_subgraph(&g, &gamma);
                assert_eq!(direct, clone_by_forest(&sys, &g, &gamma.forest()));
            }
        }
        // a subgraph with components of sizes 2, 4, 3
        let ops = q();
        let gamma = Subgraph::any(9, vec![1, 3, 4, 5, 7, 8]).unwrap();
        let a = ops.parse("[1,2,3;0,4,5;0,0,6]").unwrap();
        let big = ops.kappa_subgraph(&a, &gamma);
        let sys = Borel::new(Exact::Rationals);
        assert_eq!(big, clone_by_forest(&sys, &a, &gamma.forest()));
        assert_eq!(
            ops.format(&big),
            "[1,0,0,0,0,0,0,0,0;0,1,2,2,2,2,3,3,3;0,0,4,0,0,0,0,0,0;0,0,0,4,0,0,0,0,0;\
             0,0,0,0,4,0,0,0,0;0,0,0,0,0,4,5,5,5;0,0,0,0,0,0,6,0,0;0,0,0,0,0,0,0,6,0;0,0,0,0,0,0,0,0,6]"
        );
    }

    #[test]
    fn inverse_and_product() {
        let ops = q();
        let a = ops.parse("[2,1/2,3;0,-1,5;0,0,7]").unwrap();
        assert_eq!(ops.mul(&a, &ops.inv(&a)), ops.identity(3));
    }

    #[test]
    fn reduction_is_coset_canonical() {
        // brute force over B_3(F_2) and every subgraph of L_3
        let sys = Borel::new(Fp::new(2).unwrap());
        for edges in [vec![], vec![1], vec![2], vec![1, 2]] {
            let gamma = Subgraph::any(3, edges).unwrap();
            let m = gamma.components().len();
            let small = sys.elements(m).unwrap();
            for g in sys.elements(3).unwrap() {
                let red = sys.ops.reduce(&g, &gamma);
                assert!(sys.ops.modeled_on(&red, &gamma));
                let coset: Vec<_> = small.iter().map(|h| sys.ops.mul(&g, &sys.ops.kappa_subgraph(h, &gamma))).collect();
                assert!(coset.contains(&red));
                for c in &coset {
                    assert_eq!(sys.ops.reduce(c, &gamma), red);
                }
            }
        }
    }

    #[test]
    fn orders() {
        let f2 = Borel::new(Fp::new(2).unwrap());
        assert_eq!(f2.order(4), Some(64));
        assert_eq!(f2.elements(3).unwrap().len(), 8);
        let f3 = Borel::new(Fp::new(3).unwrap());
        assert_eq!(f3.order(3), Some(216));
        assert_eq!(f3.elements(3).unwrap().len(), 216);
        let ab = Borel::abels(Fp::new(3).unwrap());
        assert_eq!(ab.order(3), Some(2 * 27));
        assert_eq!(ab.elements(3).unwrap().len(), 54);
    }

    #[test]
    fn abels_closed_under_cloning() {
        let ab = Borel::abels(Fp::new(3).unwrap());
        for g in ab.elements(3).unwrap() {
            for k in 1..=3 {
                let c = ab.kappa(&g, k);
                assert_eq!(*c.get(1, 1), 1);
                assert_eq!(*c.get(4, 4), 1);
            }
        }
    }
}
