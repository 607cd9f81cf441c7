//! The forest monoid: normal forms, products, common multiples and factors,
//! hedges, and the correspondence between elementary forests and matchings
//! of the linear graph.
//!
//! A forest is stored as its normal-form word `λ_{k1}⋯λ_{kr}` with
//! `k1 ≤ … ≤ kr`. The word is read left to right: `λ_k` splits the `k`th leaf
//! of the forest built so far, so `λ_j λ_i = λ_i λ_{j+1}` for `i < j`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("bad forest syntax: {0}")]
    Syntax(String),
    #[error("forest is not elementary")]
    NotElementary,
    #[error("subgraph has an edge out of range for {0} vertices")]
    EdgeRange(usize),
    #[error("edges e{0} and e{1} share a vertex")]
    NotMatching(usize, usize),
}

/// Finite rooted full binary tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn caret(a: Tree, b: Tree) -> Tree {
        Tree::Caret(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn carets(&self) -> usize {
        self.leaves() - 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    fn union(&self, o: &Tree) -> Tree {
        match (self, o) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Caret(a, b), Tree::Caret(c, d)) => Tree::caret(a.union(c), b.union(d)),
        }
    }

    fn meet(&self, o: &Tree) -> Tree {
        match (self, o) {
            (Tree::Caret(a, b), Tree::Caret(c, d)) => Tree::caret(a.meet(c), b.meet(d)),
            _ => Tree::Leaf,
        }
    }

    /// Whether `self` is a top part of `m`, i.e. `m` is obtained from `self`
    /// by hanging trees below its leaves.
    fn below(&self, m: &Tree) -> bool {
        match (self, m) {
            (Tree::Leaf, _) => true,
            (Tree::Caret(a, b), Tree::Caret(c, d)) => a.below(c) && b.below(d),
            _ => false,
        }
    }

    /// Subtrees of `m` hanging below the leaves of `self`; requires `self.below(m)`.
    fn hanging(&self, m: &Tree, out: &mut Vec<Tree>) {
        match (self, m) {
            (Tree::Leaf, t) => out.push(t.clone()),
            (Tree::Caret(a, b), Tree::Caret(c, d)) => {
                a.hanging(c, out);
                b.hanging(d, out);
            }
            _ => unreachable!("hanging called on a tree that is not below"),
        }
    }

    /// Split the leaf with 0-based position `k`; returns false if out of range.
    fn split_leaf(&mut self, k: usize) -> Result<(), usize> {
        match self {
            Tree::Leaf => {
                if k == 0 {
                    *self = Tree::caret(Tree::Leaf, Tree::Leaf);
                    Ok(())
                } else {
                    Err(k - 1)
                }
            }
            Tree::Caret(a, b) => match a.split_leaf(k) {
                Ok(()) => Ok(()),
                Err(rest) => b.split_leaf(rest),
            },
        }
    }

    /// Preorder caret indices: each caret contributes one plus the number of
    /// leaves strictly to its left.
    fn preorder(&self, left: usize, out: &mut Vec<usize>) {
        if let Tree::Caret(a, b) = self {
            out.push(left + 1);
            a.preorder(left, out);
            b.preorder(left + a.leaves(), out);
        }
    }

    fn write(&self, s: &mut String) {
        match self {
            Tree::Leaf => s.push('·'),
            Tree::Caret(a, b) => {
                s.push('(');
                a.write(s);
                s.push(',');
                b.write(s);
                s.push(')');
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for Tree {
    type Err = ForestError;

    /// Balanced parentheses with `·` (or `.`) as the leaf, e.g. `((·,·),·)`.
    fn from_str(s: &str) -> Result<Tree, ForestError> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(ForestError::Syntax(format!("trailing input in {s:?}")));
        }
        Ok(t)
    }
}

fn parse_tree(c: &[char], pos: &mut usize) -> Result<Tree, ForestError> {
    match c.get(*pos) {
        Some('·') | Some('.') | Some('*') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let a = parse_tree(c, pos)?;
            if c.get(*pos) != Some(&',') {
                return Err(ForestError::Syntax(format!("expected ',' at {}", *pos)));
            }
            *pos += 1;
            let b = parse_tree(c, pos)?;
            if c.get(*pos) != Some(&')') {
                return Err(ForestError::Syntax(format!("expected ')' at {}", *pos)));
            }
            *pos += 1;
            Ok(Tree::caret(a, b))
        }
        other => Err(ForestError::Syntax(format!("unexpected {other:?} at {}", *pos))),
    }
}

/// Rewrite a word over the generators to its nondecreasing normal form.
pub fn normal_form(word: &[usize]) -> Vec<usize> {
    assert!(word.iter().all(|&k| k >= 1), "generator indices start at 1");
    let mut w = word.to_vec();
    // Insertion: move each letter left past larger ones, bumping them.
    for p in 1..w.len() {
        let mut q = p;
        while q > 0 && w[q - 1] > w[q] {
            let (j, i) = (w[q - 1], w[q]);
            w[q - 1] = i;
            w[q] = j + 1;
            q -= 1;
        }
    }
    w
}

/// Element of the forest monoid in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    idx: Vec<usize>,
}

impl Forest {
    pub fn empty() -> Forest {
        Forest { idx: Vec::new() }
    }

    /// The single caret `λ_k`.
    pub fn caret(k: usize) -> Forest {
        assert!(k >= 1);
        Forest { idx: vec![k] }
    }

    /// Normal form of an arbitrary word `λ_{w1}⋯λ_{wr}`.
    pub fn from_word(word: &[usize]) -> Forest {
        Forest { idx: normal_form(word) }
    }

    pub fn word(&self) -> &[usize] {
        &self.idx
    }

    pub fn len(&self) -> usize {
        self.idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idx.is_empty()
    }

    /// The trees of the forest, up to the last nontrivial one.
    pub fn trees(&self) -> Vec<Tree> {
        let mut trees: Vec<Tree> = Vec::new();
        for &k in &self.idx {
            let mut left = k - 1;
            let mut done = false;
            for t in trees.iter_mut() {
                match t.split_leaf(left) {
                    Ok(()) => {
                        done = true;
                        break;
                    }
                    Err(rest) => left = rest,
                }
            }
            if !done {
                trees.extend(std::iter::repeat_n(Tree::Leaf, left));
                trees.push(Tree::caret(Tree::Leaf, Tree::Leaf));
            }
        }
        trees
    }

    pub fn from_trees(trees: &[Tree]) -> Forest {
        let mut idx = Vec::new();
        let mut left = 0;
        for t in trees {
            t.preorder(left, &mut idx);
            left += t.leaves();
        }
        Forest { idx }
    }

    pub fn from_tree(t: &Tree) -> Forest {
        Forest::from_trees(std::slice::from_ref(t))
    }

    /// First tree; the whole forest when semisimple.
    pub fn tree(&self) -> Tree {
        self.trees().into_iter().next().unwrap_or(Tree::Leaf)
    }

    /// Least `m` such that all carets lie in the first `m` trees.
    pub fn rank(&self) -> usize {
        self.trees().len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.rank() <= 1
    }

    /// `rank + len`, with the trivial forest counted as having one foot.
    pub fn feet(&self) -> usize {
        self.rank().max(1) + self.len()
    }

    /// Every tree has at most two leaves.
    pub fn is_elementary(&self) -> bool {
        self.idx.windows(2).all(|w| w[1] > w[0] + 1)
    }

    pub fn mul(&self, o: &Forest) -> Forest {
        let mut w = self.idx.clone();
        w.extend_from_slice(&o.idx);
        Forest::from_word(&w)
    }

    /// Least common right multiple `m = self·ca = o·cb`.
    pub fn lcm_right(&self, o: &Forest) -> (Forest, Forest, Forest) {
        let (a, b) = (self.trees(), o.trees());
        let n = a.len().max(b.len());
        let leaf = Tree::Leaf;
        let m: Vec<Tree> = (0..n)
            .map(|i| a.get(i).unwrap_or(&leaf).union(b.get(i).unwrap_or(&leaf)))
            .collect();
        let ca = complement(&a, &m);
        let cb = complement(&b, &m);
        (Forest::from_trees(&m), ca, cb)
    }

    /// Greatest common left factor.
    pub fn gcf_left(&self, o: &Forest) -> Forest {
        let (a, b) = (self.trees(), o.trees());
        let m: Vec<Tree> = a.iter().zip(b.iter()).map(|(x, y)| x.meet(y)).collect();
        Forest::from_trees(&m)
    }

    /// If `self` is a left factor of `m`, the complement `c` with `self·c = m`.
    pub fn left_divides(&self, m: &Forest) -> Option<Forest> {
        let (a, t) = (self.trees(), m.trees());
        let leaf = Tree::Leaf;
        for (i, x) in a.iter().enumerate() {
            if !x.below(t.get(i).unwrap_or(&leaf)) {
                return None;
            }
        }
        Some(complement(&a, &t))
    }

    /// The forest `f` with `f·λ_k = self`, if leaves `k` and `k+1` hang from
    /// a common caret with no further carets below it.
    pub fn strip_caret(&self, k: usize) -> Option<Forest> {
        fn go(t: &mut Tree, left: usize, k: usize) -> bool {
            match t {
                Tree::Leaf => false,
                Tree::Caret(a, b) => {
                    if a.is_leaf() && b.is_leaf() {
                        if left + 1 == k {
                            *t = Tree::Leaf;
                            return true;
                        }
                        return false;
                    }
                    let la = a.leaves();
                    if k <= left + la {
                        go(a, left, k)
                    } else {
                        go(b, left + la, k)
                    }
                }
            }
        }
        let mut trees = self.trees();
        let mut left = 0;
        for i in 0..trees.len() {
            let l = trees[i].leaves();
            if k <= left + l {
                return go(&mut trees[i], left, k).then(|| Forest::from_trees(&trees));
            }
            left += l;
        }
        None
    }

    /// The hedge `c(E)`: leaf `m` goes to the root of its tree.
    pub fn hedge(&self) -> Hedge {
        let mut h = Hedge::identity();
        for &k in &self.idx {
            h = h.mul(&Hedge::generator(k));
        }
        h
    }

    /// The matching of `L_n` whose edges join leaves of a common caret.
    pub fn to_matching(&self, n: usize) -> Result<Subgraph, ForestError> {
        if !self.is_elementary() {
            return Err(ForestError::NotElementary);
        }
        Subgraph::new(n, self.idx.clone())
    }

    pub fn from_subgraph(g: &Subgraph) -> Forest {
        g.forest()
    }
}

fn complement(a: &[Tree], m: &[Tree]) -> Forest {
    let leaf = Tree::Leaf;
    let mut out = Vec::new();
    for (i, t) in m.iter().enumerate() {
        a.get(i).unwrap_or(&leaf).hanging(t, &mut out);
    }
    while out.last().is_some_and(|t| t.is_leaf()) {
        out.pop();
    }
    Forest::from_trees(&out)
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.idx.iter().map(|k| k.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Forest {
    type Err = ForestError;

    /// Comma-separated generator indices in any order, e.g. `3,1`.
    fn from_str(s: &str) -> Result<Forest, ForestError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Forest::empty());
        }
        let mut w = Vec::new();
        for part in s.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| ForestError::Syntax(format!("bad index {part:?}")))?;
            if k == 0 {
                return Err(ForestError::Syntax("indices start at 1".into()));
            }
            w.push(k);
        }
        Ok(Forest::from_word(&w))
    }
}

/// Monotone surjection of the positive integers that is a shift `m ↦ m - c`
/// from some point on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hedge {
    values: Vec<usize>,
    shift: usize,
}

impl Hedge {
    pub fn identity() -> Hedge {
        Hedge { values: Vec::new(), shift: 0 }
    }

    /// `η_k`: fixes `m ≤ k` and sends `m > k` to `m - 1`.
    pub fn generator(k: usize) -> Hedge {
        Hedge { values: (1..=k).collect(), shift: 1 }.trimmed()
    }

    pub fn apply(&self, m: usize) -> usize {
        if m <= self.values.len() {
            self.values[m - 1]
        } else {
            m - self.shift
        }
    }

    /// Composition `self ∘ o`.
    pub fn mul(&self, o: &Hedge) -> Hedge {
        let len = o.values.len().max(self.values.len() + o.shift);
        let values = (1..=len).map(|m| self.apply(o.apply(m))).collect();
        Hedge { values, shift: self.shift + o.shift }.trimmed()
    }

    fn trimmed(mut self) -> Hedge {
        while let Some(&v) = self.values.last() {
            let m = self.values.len();
            if m > self.shift && v == m - self.shift {
                self.values.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Image values on `1..=len`.
    pub fn values(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|m| self.apply(m)).collect()
    }
}

/// Spanning subgraph of the linear graph `L_n`; edge `i` joins `i` and `i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    n: usize,
    edges: Vec<usize>,
}

impl Subgraph {
    /// Matching with the given edges; rejects adjacent edges.
    pub fn new(n: usize, mut edges: Vec<usize>) -> Result<Subgraph, ForestError> {
        edges.sort_unstable();
        edges.dedup();
        for w in edges.windows(2) {
            if w[1] == w[0] + 1 {
                return Err(ForestError::NotMatching(w[0], w[1]));
            }
        }
        Subgraph::any(n, edges)
    }

    /// Arbitrary spanning subgraph.
    pub fn any(n: usize, mut edges: Vec<usize>) -> Result<Subgraph, ForestError> {
        edges.sort_unstable();
        edges.dedup();
        if edges.iter().any(|&e| e == 0 || e >= n) {
            return Err(ForestError::EdgeRange(n));
        }
        Ok(Subgraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn is_matching(&self) -> bool {
        self.edges.windows(2).all(|w| w[1] > w[0] + 1)
    }

    /// Components as `(first vertex, size)`, left to right.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut v = 1;
        while v <= self.n {
            let start = v;
            while self.edges.binary_search(&v).is_ok() {
                v += 1;
            }
            out.push((start, v - start + 1));
            v += 1;
        }
        out
    }

    /// A vertex is stable if it is the rightmost vertex of its component.
    pub fn is_stable(&self, v: usize) -> bool {
        self.edges.binary_search(&v).is_err()
    }

    /// Forest whose trees have the component sizes as leaf counts (left
    /// combs); for a matching this is the elementary forest of the matching.
    pub fn forest(&self) -> Forest {
        let mut w = Vec::new();
        for (start, size) in self.components() {
            for _ in 1..size {
                w.push(start);
            }
        }
        Forest { idx: w }
    }

    pub fn sub(&self, edges: Vec<usize>) -> Subgraph {
        Subgraph { n: self.n, edges }
    }
}

impl fmt::Display for Subgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.edges.iter().map(|e| format!("e{e}")).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// All matchings of `L_n` (including the empty one), in lexicographic order
/// of their edge lists.
pub fn matchings(n: usize) -> Vec<Subgraph> {
    fn rec(n: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Subgraph>) {
        out.push(Subgraph { n, edges: cur.clone() });
        for e in from..n {
            cur.push(e);
            rec(n, e + 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// All forests of length `len` with rank at most `rank`.
pub fn forests(len: usize, rank: usize) -> Vec<Forest> {
    fn rec(len: usize, rank: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Forest>) {
        if cur.len() == len {
            out.push(Forest { idx: cur.clone() });
            return;
        }
        // A caret at index k keeps rank ≤ r only while k ≤ r + carets so far.
        for k in min..=rank + cur.len() {
            cur.push(k);
            rec(len, rank, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, rank, 1, &mut Vec::new(), &mut out);
    out.retain(|f| f.rank() <= rank);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_basics() {
        assert_eq!(normal_form(&[3, 1]), vec![1, 4]);
        assert_eq!(normal_form(&[1, 2]), vec![1, 2]);
        assert_eq!(Forest::from_word(&[2]).mul(&Forest::caret(1)).word(), &[1, 3]);
        let e = Forest::from_word(&[4, 2, 1]);
        assert_eq!(Forest::from_word(e.word()), e);
    }

    #[test]
    fn trees_round_trip() {
        for len in 0..5 {
            for f in forests(len, 3) {
                assert_eq!(Forest::from_trees(&f.trees()), f);
            }
        }
    }

    #[test]
    fn tree_text() {
        let t: Tree = "((·,·),·)".parse().unwrap();
        assert_eq!(t.to_string(), "((·,·),·)");
        assert_eq!(Forest::from_tree(&t).word(), &[1, 1]);
        let t: Tree = "(.,(.,.))".parse().unwrap();
        assert_eq!(Forest::from_tree(&t).word(), &[1, 2]);
        assert!("(·,·".parse::<Tree>().is_err());
    }

    #[test]
    fn caret_then_left_leaf() {
        // caret at root 1, then a caret on its first leaf
        assert_eq!(Forest::caret(1).mul(&Forest::caret(1)).word(), &[1, 1]);
        assert_eq!(Forest::caret(1).mul(&Forest::caret(1)).tree().to_string(), "((·,·),·)");
    }

    #[test]
    fn rank_and_feet() {
        let f = Forest::from_word(&[1, 3]);
        assert_eq!(f.rank(), 2);
        assert_eq!(f.feet(), 4);
        let t = Forest::from_word(&[1, 1, 2]);
        assert!(t.is_semisimple());
        assert_eq!(t.feet(), 4);
        assert_eq!(Forest::empty().feet(), 1);
    }

    #[test]
    fn lcm_examples() {
        let (m, ca, cb) = Forest::caret(1).lcm_right(&Forest::caret(2));
        assert_eq!(m.word(), &[1, 3]);
        assert_eq!(ca, Forest::caret(3));
        assert_eq!(cb, Forest::caret(1));
        let e = Forest::from_word(&[1, 2, 5]);
        assert_eq!(e.lcm_right(&e), (e.clone(), Forest::empty(), Forest::empty()));
        assert_eq!(Forest::empty().lcm_right(&e), (e.clone(), e.clone(), Forest::empty()));
    }

    #[test]
    fn strip_caret_inverts_caret() {
        for f in forests(3, 2) {
            for k in 1..=f.feet() {
                let g = f.mul(&Forest::caret(k));
                assert_eq!(g.strip_caret(k).as_ref(), Some(&f), "{f} {k}");
            }
        }
        assert_eq!(Forest::from_word(&[1, 1]).strip_caret(2), None);
        assert_eq!(Forest::caret(1).strip_caret(2), None);
    }

    #[test]
    fn gcf_examples() {
        let a = Forest::from_word(&[1, 2]);
        let b = Forest::from_word(&[1, 3]);
        assert_eq!(a.gcf_left(&b), Forest::caret(1));
        assert_eq!(a.gcf_left(&a), a);
        assert_eq!(Forest::caret(1).gcf_left(&Forest::caret(2)), Forest::empty());
    }

    #[test]
    fn matching_forest() {
        let g = Subgraph::new(4, vec![1, 3]).unwrap();
        assert_eq!(g.forest().word(), &[1, 3]);
        assert_eq!(g.forest().to_matching(4).unwrap(), g);
        assert!(Subgraph::new(4, vec![1, 2]).is_err());
        assert_eq!(Subgraph::new(4, vec![]).unwrap().forest(), Forest::empty());
        assert_eq!(Forest::from_word(&[1, 2]).to_matching(4), Err(ForestError::NotElementary));
        for m in matchings(6) {
            assert_eq!(m.forest().to_matching(6).unwrap(), m);
            assert!(m.forest().feet() <= 6);
        }
    }

    #[test]
    fn hedges() {
        assert_eq!(Forest::caret(2).hedge().apply(3), 2);
        assert_eq!(Forest::empty().hedge(), Hedge::identity());
        assert_eq!(Forest::from_word(&[1, 1]).hedge(), Forest::from_word(&[1, 2]).hedge());
        let h = Forest::caret(1).hedge();
        assert_eq!(h.values(4), vec![1, 1, 2, 3]);
    }

    #[test]
    fn components() {
        let g = Subgraph::any(9, vec![1, 3, 4, 5, 7, 8]).unwrap();
        assert_eq!(g.components(), vec![(1, 2), (3, 4), (7, 3)]);
        assert!(g.is_stable(2) && g.is_stable(6) && g.is_stable(9) && !g.is_stable(3));
        assert_eq!(g.forest().word(), &[1, 3, 3, 3, 7, 7]);
    }

    #[test]
    fn matching_counts() {
        // Fibonacci numbers
        let counts: Vec<usize> = (1..=8).map(|n| matchings(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21, 34]);
    }
}
