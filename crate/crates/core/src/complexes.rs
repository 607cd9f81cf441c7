//! Finite simplicial complexes: matching complexes of (multi-)linear graphs,
//! descending links built from dangling classes, small Stein–Farley balls,
//! and exact reduced homology.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cloning::{act_on_forest, CloningSystem};
use crate::forest::{forests, matchings, Forest, Subgraph};
use crate::systems::ring::{Exact, Fp, Ring};
use crate::systems::BBar;

/// Hard cap on the number of simplices a complex may have.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("projected size {projected} exceeds budget {budget}")]
    Budget { projected: u64, budget: u64 },
    #[error("the groups of {0} are not enumerable at this size")]
    NotEnumerable(String),
    #[error("two classes share the vertex set {0}")]
    NotSimplicial(String),
}

/// Vertices with labels and all simplices, grouped by dimension; each
/// simplex is a sorted list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub labels: Vec<String>,
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Complex generated by the given simplices (faces are added).
    pub fn generated(labels: Vec<String>, gens: &[Vec<u32>]) -> SimplicialComplex {
        let mut per: Vec<HashSet<Vec<u32>>> = Vec::new();
        for g in gens {
            let mut g = g.clone();
            g.sort_unstable();
            g.dedup();
            let k = g.len();
            for mask in 1u64..(1u64 << k) {
                let s: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| g[i]).collect();
                let d = s.len() - 1;
                if per.len() <= d {
                    per.resize_with(d + 1, HashSet::new);
                }
                per[d].insert(s);
            }
        }
        let simplices = per
            .into_iter()
            .map(|set| {
                let mut v: Vec<Vec<u32>> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        SimplicialComplex { labels, simplices }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.iter().rposition(|s| !s.is_empty()).map_or(-1, |d| d as isize)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Whether every face of every simplex is present.
    pub fn is_closed(&self) -> bool {
        let sets: Vec<HashSet<&Vec<u32>>> = self.simplices.iter().map(|s| s.iter().collect()).collect();
        self.simplices.iter().enumerate().skip(1).all(|(d, list)| {
            list.iter().all(|s| (0..s.len()).all(|i| sets[d - 1].contains(&drop(s, i))))
        })
    }

    /// Simplices that are not faces of larger ones.
    pub fn maximal(&self) -> Vec<Vec<u32>> {
        let mut faces: HashSet<Vec<u32>> = HashSet::new();
        for list in self.simplices.iter().skip(1) {
            for s in list {
                for i in 0..s.len() {
                    faces.insert(drop(s, i));
                }
            }
        }
        let mut out: Vec<Vec<u32>> = self.simplices.iter().flatten().filter(|s| !faces.contains(*s)).cloned().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `dim <d> vertices <v>`, then `k v₁ … v_k` per maximal simplex with
    /// 1-based vertex ids.
    pub fn export(&self) -> String {
        let mut s = format!("dim {} vertices {}\n", self.dim(), self.vertex_count());
        for m in self.maximal() {
            let ids: Vec<String> = m.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "{} {}", m.len(), ids.join(" "));
        }
        s
    }
}

fn drop(s: &[u32], i: usize) -> Vec<u32> {
    let mut f = s.to_vec();
    f.remove(i);
    f
}

/// Simplices of the matching complex of `sL_n`: multigraph matchings, with
/// `s` parallel edges between consecutive vertices.
pub fn projected_matching_size(n: usize, s: usize) -> u64 {
    (1..=n / 2).fold(0u64, |acc, k| acc.saturating_add(matchings_with(n, k).saturating_mul((s as u64).saturating_pow(k as u32))))
}

/// Number of `k`-edge matchings of `L_n`, `C(n-k, k)`, saturating.
fn matchings_with(n: usize, k: usize) -> u64 {
    if 2 * k > n {
        return 0;
    }
    let top = (n - k) as u128;
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (top - i) / (i + 1);
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

/// The matching complex of `sL_n`. Vertex `(i-1)·s + c` is the `c`th edge
/// (0-based) between vertices `i` and `i+1`.
pub fn build_matching_complex(n: usize, s: usize, budget: u64) -> Result<SimplicialComplex, ComplexError> {
    let projected = projected_matching_size(n, s);
    if projected > budget {
        return Err(ComplexError::Budget { projected, budget });
    }
    let mut labels = Vec::new();
    for i in 1..n {
        for c in 0..s {
            labels.push(if s == 1 { format!("e{i}") } else { format!("e{i}:{c}") });
        }
    }
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
    for m in matchings(n) {
        let edges = m.edges();
        if edges.is_empty() {
            continue;
        }
        let d = edges.len() - 1;
        if simplices.len() <= d {
            simplices.resize_with(d + 1, Vec::new);
        }
        let mut colors = vec![0usize; edges.len()];
        loop {
            simplices[d].push(edges.iter().zip(&colors).map(|(&e, &c)| ((e - 1) * s + c) as u32).collect());
            let mut p = 0;
            while p < colors.len() {
                colors[p] += 1;
                if colors[p] < s {
                    break;
                }
                colors[p] = 0;
                p += 1;
            }
            if p == colors.len() {
                break;
            }
        }
    }
    for list in simplices.iter_mut() {
        list.sort_unstable();
    }
    Ok(SimplicialComplex { labels, simplices })
}

/// Canonical representative of the dangling class of `(g, Γ)`: the system's
/// own choice if it has one, otherwise the least `(g, Γ)` in text order over
/// the orbit `(g·κ_Γ(u)⁻¹, u·Γ)`, `u ∈ G_m` with `m` the number of
/// components of `Γ`.
pub fn canonical_class<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, gamma: &Subgraph) -> Result<(S::Elem, Subgraph), ComplexError> {
    if let Some(r) = sys.dangling_rep(g, gamma) {
        return Ok(r);
    }
    let orbit = class_orbit(sys, g, gamma)?;
    Ok(orbit.into_iter().min_by(|a, b| (sys.format(&a.0), a.1.edges()).cmp(&(sys.format(&b.0), b.1.edges()))).expect("orbit contains the element"))
}

fn class_orbit<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, gamma: &Subgraph) -> Result<Vec<(S::Elem, Subgraph)>, ComplexError> {
    let m = gamma.n() - gamma.edges().len();
    let us = sys.elements(m).ok_or_else(|| ComplexError::NotEnumerable(sys.name()))?;
    let e = gamma.forest();
    Ok(us
        .iter()
        .map(|u| {
            let moved = act_on_forest(sys, u, &e).to_matching(gamma.n()).expect("groups act on elementary forests");
            (sys.mul(g, &sys.inv(&sys.kappa_subgraph(u, gamma))), moved)
        })
        .collect())
}

fn class_key<S: CloningSystem + ?Sized>(sys: &S, g: &S::Elem, gamma: &Subgraph) -> (String, Vec<usize>) {
    (sys.format(g), gamma.edges().to_vec())
}

/// A descending link together with the representative of each vertex.
#[derive(Clone, Debug)]
pub struct Dlk<E> {
    pub complex: SimplicialComplex,
    pub vertex_reps: Vec<(E, Subgraph)>,
}

/// `Σ_Γ |G_n| / |G_m|` over nonempty matchings, when the orders are known.
pub fn projected_dlk_size<S: CloningSystem + ?Sized>(sys: &S, n: usize) -> Option<u64> {
    let gn = sys.order(n)?;
    let mut total: u128 = 0;
    for k in 1..=n / 2 {
        total = total.saturating_add((matchings_with(n, k) as u128).saturating_mul(gn / sys.order(n - k)?));
    }
    Some(total.min(u64::MAX as u128) as u64)
}

/// The descending link on `n` feet: one simplex per dangling class `[g, Γ]`
/// with `Γ` a nonempty matching of `L_n`, its vertices being the classes
/// `[g, {e}]` for the edges `e ∈ Γ`.
pub fn build_dlk<S: CloningSystem + ?Sized>(sys: &S, n: usize, budget: u64) -> Result<Dlk<S::Elem>, ComplexError> {
    let projected = projected_dlk_size(sys, n).ok_or_else(|| ComplexError::NotEnumerable(sys.name()))?;
    if projected > budget {
        return Err(ComplexError::Budget { projected, budget });
    }
    let gammas: Vec<Subgraph> = matchings(n).into_iter().filter(|m| !m.edges().is_empty()).collect();
    let listed = gammas.first().is_none_or(|g| sys.dangling_classes(g).is_some());
    // classes per Γ, as canonical representatives
    let classes: Vec<Vec<S::Elem>> = if listed {
        gammas.par_iter().map(|g| sys.dangling_classes(g).expect("listed")).collect()
    } else {
        let all = sys.elements(n).ok_or_else(|| ComplexError::NotEnumerable(sys.name()))?;
        let mut seen: HashSet<(String, Vec<usize>)> = HashSet::new();
        let mut per: HashMap<Vec<usize>, Vec<S::Elem>> = HashMap::new();
        for gamma in &gammas {
            for g in &all {
                if seen.contains(&class_key(sys, g, gamma)) {
                    continue;
                }
                let orbit = class_orbit(sys, g, gamma)?;
                let (rep, rg) = orbit
                    .iter()
                    .min_by(|a, b| (sys.format(&a.0), a.1.edges()).cmp(&(sys.format(&b.0), b.1.edges())))
                    .cloned()
                    .expect("nonempty orbit");
                for (h, hg) in &orbit {
                    seen.insert(class_key(sys, h, hg));
                }
                per.entry(rg.edges().to_vec()).or_default().push(rep);
            }
        }
        gammas.iter().map(|g| per.remove(g.edges()).unwrap_or_default()).collect()
    };
    // vertices: classes with one edge, in edge order
    let mut vertex_reps = Vec::new();
    let mut vid: HashMap<(String, Vec<usize>), u32> = HashMap::new();
    for (gamma, reps) in gammas.iter().zip(&classes) {
        if gamma.edges().len() != 1 {
            continue;
        }
        for g in reps {
            vid.insert(class_key(sys, g, gamma), vertex_reps.len() as u32);
            vertex_reps.push((g.clone(), gamma.clone()));
        }
    }
    let lookup = |g: &S::Elem, e: usize| -> Result<u32, ComplexError> {
        let single = Subgraph::new(n, vec![e]).expect("single edge");
        let (h, hg) = canonical_class(sys, g, &single)?;
        Ok(*vid.get(&class_key(sys, &h, &hg)).expect("vertex classes are complete"))
    };
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
    for (gamma, reps) in gammas.iter().zip(&classes) {
        let d = gamma.edges().len() - 1;
        if simplices.len() <= d {
            simplices.resize_with(d + 1, Vec::new);
        }
        let sets: Result<Vec<Vec<u32>>, ComplexError> = reps
            .par_iter()
            .map(|g| {
                let mut s = gamma.edges().iter().map(|&e| lookup(g, e)).collect::<Result<Vec<u32>, _>>()?;
                s.sort_unstable();
                Ok(s)
            })
            .collect();
        simplices[d].extend(sets?);
    }
    for list in simplices.iter_mut() {
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        if list.len() != before {
            return Err(ComplexError::NotSimplicial(format!("in dimension {}", list.first().map_or(0, |s| s.len() - 1))));
        }
    }
    let labels = vertex_reps.iter().map(|(g, gamma)| format!("{} {}", sys.format(g), gamma)).collect();
    Ok(Dlk { complex: SimplicialComplex { labels, simplices }, vertex_reps })
}

/// Explicit isomorphism from the descending link of `B̄₊(𝔽_p)` on `n` feet to
/// the matching complex of `sL_n` with `s = (p-1)p`: the vertex `[g, {e_i}]`
/// in reduced form goes to the parallel edge labelled by the pair
/// `(diagonal entry i, off-diagonal entry i)`. Returns the vertex map.
pub fn dlk_bbar_isomorphism(n: usize, p: u32, budget: u64) -> Result<Vec<u32>, String> {
    let sys = BBar::new(Fp::new(p)?);
    let dlk = build_dlk(&sys, n, budget).map_err(|e| e.to_string())?;
    let s = ((p - 1) * p) as usize;
    let target = build_matching_complex(n, s, budget).map_err(|e| e.to_string())?;
    let map: Vec<u32> = dlk
        .vertex_reps
        .iter()
        .map(|(g, gamma)| {
            let i = gamma.edges()[0];
            let color = (g.diag[i - 1] as usize - 1) * p as usize + g.off[i - 1] as usize;
            ((i - 1) * s + color) as u32
        })
        .collect();
    let mut hit = vec![false; target.vertex_count()];
    for &v in &map {
        if std::mem::replace(&mut hit[v as usize], true) {
            return Err(format!("vertex {v} of the matching complex is hit twice"));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err("vertex map is not onto".into());
    }
    if dlk.complex.counts() != target.counts() {
        return Err(format!("simplex counts differ: {:?} vs {:?}", dlk.complex.counts(), target.counts()));
    }
    for (d, list) in dlk.complex.simplices.iter().enumerate() {
        let targets: HashSet<&Vec<u32>> = target.simplices[d].iter().collect();
        for simplex in list {
            let mut img: Vec<u32> = simplex.iter().map(|&v| map[v as usize]).collect();
            img.sort_unstable();
            if !targets.contains(&img) {
                return Err(format!("simplex {simplex:?} maps to a non-simplex"));
            }
        }
    }
    Ok(map)
}

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Q,
    Fp(u32),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field, String> {
        match s.trim() {
            "Q" => Ok(Field::Q),
            "F2" => Ok(Field::Fp(2)),
            t => {
                let p = t.strip_prefix("Fp:").or_else(|| t.strip_prefix('F')).ok_or_else(|| format!("unknown field {t:?}"))?;
                let p: u32 = p.parse().map_err(|_| format!("unknown field {t:?}"))?;
                Fp::new(p)?;
                Ok(Field::Fp(p))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Q => "Q".into(),
            Field::Fp(p) => format!("F{p}"),
        }
    }
}

/// Boundary of each `d`-simplex as signed faces `(row, ±1)`, rows indexing
/// the `(d-1)`-simplices.
fn boundary_columns(cx: &SimplicialComplex, d: usize) -> Vec<Vec<(u32, i8)>> {
    let index: HashMap<&Vec<u32>, u32> = cx.simplices[d - 1].iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    cx.simplices[d]
        .par_iter()
        .map(|s| {
            let mut col: Vec<(u32, i8)> = (0..s.len())
                .map(|i| (*index.get(&drop(s, i)).expect("complex is closed under faces"), if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Panics unless `∂_{d-1} ∘ ∂_d = 0` for every `d`.
pub fn assert_boundary_squares_to_zero(cx: &SimplicialComplex) {
    for d in 2..cx.simplices.len() {
        let lower = boundary_columns(cx, d - 1);
        boundary_columns(cx, d).par_iter().for_each(|col| {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(r, sign) in col {
                for &(q, t) in &lower[r as usize] {
                    *acc.entry(q).or_default() += (sign * t) as i64;
                }
            }
            assert!(acc.values().all(|&v| v == 0), "boundary of a boundary is nonzero in dimension {d}");
        });
    }
}

/// Rank of a sparse matrix given by columns, by column reduction on the
/// lowest nonzero row.
fn rank<R: Ring>(ring: &R, cols: &[Vec<(u32, i8)>]) -> usize {
    let lift = |x: i8| if x > 0 { ring.one() } else { ring.neg(&ring.one()) };
    let mut pivots: HashMap<u32, Vec<(u32, R::E)>> = HashMap::new();
    for c in cols {
        let mut col: Vec<(u32, R::E)> = c.iter().map(|&(r, x)| (r, lift(x))).collect();
        while let Some((low, val)) = col.last().cloned() {
            let Some(piv) = pivots.get(&low) else {
                pivots.insert(low, col);
                break;
            };
            let factor = ring.neg(&ring.mul(&val, &ring.unit_inv(&piv.last().unwrap().1).expect("pivot is a unit")));
            col = axpy(ring, &col, &factor, piv);
        }
    }
    pivots.len()
}

/// `a + f·b` for sorted sparse vectors.
fn axpy<R: Ring>(ring: &R, a: &[(u32, R::E)], f: &R::E, b: &[(u32, R::E)]) -> Vec<(u32, R::E)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, ring.mul(f, &b[j].1)));
            j += 1;
        } else {
            let v = ring.add(&a[i].1, &ring.mul(f, &b[j].1));
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn boundary_rank(cx: &SimplicialComplex, d: usize, field: Field) -> usize {
    let cols = boundary_columns(cx, d);
    match field {
        Field::Q => rank(&Exact::Rationals, &cols),
        Field::Fp(p) => rank(&Fp::new(p).expect("prime"), &cols),
    }
}

/// Reduced Betti numbers `H̃_0, …, H̃_dim` over the field; empty for the
/// empty complex.
pub fn betti(cx: &SimplicialComplex, field: Field) -> Vec<usize> {
    if cx.dim() < 0 {
        return Vec::new();
    }
    assert_boundary_squares_to_zero(cx);
    let top = cx.dim() as usize;
    let ranks: Vec<usize> = (0..=top + 1)
        .into_par_iter()
        .map(|d| if d == 0 || d > top { 0 } else { boundary_rank(cx, d, field) })
        .collect();
    (0..=top)
        .map(|i| {
            let c = cx.simplices[i].len();
            let aug = usize::from(i == 0);
            c - ranks[i] - ranks[i + 1] - aug
        })
        .collect()
}

/// Largest `d` with `H̃_i = 0` for all `i ≤ d`, from reduced Betti numbers:
/// `-1` for a nonempty complex with `H̃_0 ≠ 0`, `-2` for the empty complex,
/// and the dimension when everything vanishes. This is a homological bound
/// only; fundamental groups are not examined.
pub fn homological_connectivity(betti: &[usize]) -> isize {
    if betti.is_empty() {
        return -2;
    }
    betti.iter().position(|&b| b != 0).map_or(betti.len() as isize - 1, |i| i as isize - 1)
}

/// `⌊(n-2)/3⌋`.
pub fn nu(n: usize) -> isize {
    (n as isize - 2).div_euclid(3)
}

/// `⌊(m-1)/4⌋`.
pub fn eta(m: usize) -> isize {
    (m as isize - 1).div_euclid(4)
}

/// Upward part of a Stein–Farley complex: the vertices `x·E` above a vertex
/// `x` with `n` feet, for forests `E` of rank at most `n` with at most
/// `feet_max` feet in total, and the cubes `[y, y·F]` for nonempty
/// elementary `F` inside this range. Up to dangling these do not depend on
/// the groups `G_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinBall {
    pub base_feet: usize,
    pub vertices: Vec<Forest>,
    /// Number of cubes of each dimension, vertices included.
    pub cubes: Vec<usize>,
}

impl SteinBall {
    pub fn euler(&self) -> i64 {
        self.cubes.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

/// Elementary forests of rank at most `r` with `1 ≤ len ≤ max_len`.
fn elementary_up_to(r: usize, max_len: usize) -> Vec<Forest> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << r) {
        if mask.count_ones() as usize > max_len {
            continue;
        }
        let mut w = Vec::new();
        for t in 0..r {
            if mask >> t & 1 == 1 {
                w.push(t + 1 + w.len());
            }
        }
        out.push(Forest::from_word(&w));
    }
    out
}

pub fn build_stein_ball(base_feet: usize, feet_max: usize, budget: u64) -> Result<SteinBall, ComplexError> {
    let mut vertices = Vec::new();
    for len in 0..=feet_max.saturating_sub(base_feet) {
        vertices.extend(forests(len, base_feet));
        if vertices.len() as u64 > budget {
            return Err(ComplexError::Budget { projected: vertices.len() as u64, budget });
        }
    }
    let mut cubes = vec![vertices.len()];
    for v in &vertices {
        let feet = base_feet + v.len();
        for f in elementary_up_to(feet, feet_max - feet) {
            let d = f.len();
            if cubes.len() <= d {
                cubes.resize(d + 1, 0);
            }
            cubes[d] += 1;
        }
    }
    if cubes.iter().sum::<usize>() as u64 > budget {
        return Err(ComplexError::Budget { projected: cubes.iter().sum::<usize>() as u64, budget });
    }
    Ok(SteinBall { base_feet, vertices, cubes })
}

/// Euler characteristic of the order complex of the vertex poset
/// (`x·E ≤ x·E'` iff `E` is a left factor of `E'`), by counting chains.
pub fn order_complex_euler(ball: &SteinBall) -> i64 {
    let mut vs: Vec<&Forest> = ball.vertices.iter().collect();
    vs.sort_by_key(|f| f.len());
    // signed count of chains ending at each vertex
    let mut c: Vec<i64> = Vec::with_capacity(vs.len());
    for (i, v) in vs.iter().enumerate() {
        let below: i64 = (0..i).filter(|&j| vs[j].len() < v.len() && vs[j].left_divides(v).is_some()).map(|j| c[j]).sum();
        c.push(1 - below);
    }
    c.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{Borel, Symmetric, Trivial};

    fn betti_q(cx: &SimplicialComplex) -> Vec<usize> {
        betti(cx, Field::Q)
    }

    #[test]
    fn small_matching_complexes() {
        let m4 = build_matching_complex(4, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(m4.vertex_count(), 3);
        assert_eq!(m4.counts(), vec![3, 1]);
        assert_eq!(homological_connectivity(&betti_q(&m4)), -1);
        let m2 = build_matching_complex(2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(betti_q(&m2), vec![0]);
        let m5 = build_matching_complex(5, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(betti_q(&m5)[0], 0);
        assert_eq!(homological_connectivity(&[]), -2);
    }

    #[test]
    fn circle() {
        let cx = SimplicialComplex::generated(vec!["a".into(), "b".into(), "c".into()], &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(betti(&cx, Field::Q), vec![0, 1]);
        assert_eq!(betti(&cx, Field::Fp(2)), vec![0, 1]);
        assert!(cx.is_closed());
        assert_eq!(cx.export(), "dim 1 vertices 3\n2 1 2\n2 1 3\n2 2 3\n");
    }

    #[test]
    fn trivial_dlk_is_matching_complex() {
        for n in 2..=8 {
            let d = build_dlk(&Trivial, n, DEFAULT_BUDGET).unwrap();
            let m = build_matching_complex(n, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(d.complex.simplices, m.simplices, "n={n}");
        }
    }

    #[test]
    fn symmetric_dlk_vertices() {
        let d = build_dlk(&Symmetric, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.complex.vertex_count(), 12);
        assert_eq!(d.complex.counts().iter().map(|&c| c as u64).sum::<u64>(), projected_dlk_size(&Symmetric, 4).unwrap());
    }

    #[test]
    fn bbar_isomorphism_small() {
        for n in 2..=4 {
            dlk_bbar_isomorphism(n, 2, DEFAULT_BUDGET).unwrap();
        }
        dlk_bbar_isomorphism(3, 3, DEFAULT_BUDGET).unwrap();
    }

    #[test]
    fn borel_dlk_vertex_count() {
        let sys = Borel::new(Fp::new(2).unwrap());
        let d = build_dlk(&sys, 4, DEFAULT_BUDGET).unwrap();
        // |B_4| / |B_3| = 2^6 / 2^3 per edge
        assert_eq!(d.complex.vertex_count(), 3 * 8);
    }

    #[test]
    fn stein_balls() {
        let b = build_stein_ball(1, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.vertices.len(), 4);
        assert_eq!(b.euler(), 1);
        assert_eq!(order_complex_euler(&b), 1);
        let single = build_stein_ball(2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(single.cubes, vec![1]);
        assert_eq!(build_stein_ball(2, 4, DEFAULT_BUDGET).unwrap().euler(), 1);
    }

    #[test]
    fn fields() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Q);
        assert_eq!(Field::parse("F2").unwrap(), Field::Fp(2));
        assert_eq!(Field::parse("Fp:5").unwrap(), Field::Fp(5));
        assert!(Field::parse("Fp:4").is_err());
    }
}
