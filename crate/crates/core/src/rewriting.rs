//! Knuth–Bendix completion for string rewriting systems under shortlex order.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

pub type Word = Vec<u16>;

/// Limits for a completion attempt.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_rules: usize,
    pub max_len: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_rules: 10_000, max_len: 40 }
    }
}

pub fn shortlex(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A confluent, terminating rewriting system.
#[derive(Clone, Debug, Default)]
pub struct Rewriting {
    rules: Vec<(Word, Word)>,
    index: HashMap<Word, usize>,
    lens: Vec<usize>,
}

impl Rewriting {
    fn from_rules(rules: Vec<(Word, Word)>) -> Rewriting {
        let mut rw = Rewriting::default();
        for r in rules {
            rw.push(r);
        }
        rw
    }

    fn push(&mut self, r: (Word, Word)) {
        if !self.lens.contains(&r.0.len()) {
            self.lens.push(r.0.len());
            self.lens.sort_unstable();
        }
        self.index.insert(r.0.clone(), self.rules.len());
        self.rules.push(r);
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Position and rule of the leftmost-ending redex.
    fn find(&self, w: &[u16]) -> Option<(usize, usize)> {
        for end in 1..=w.len() {
            for &l in &self.lens {
                if l > end {
                    break;
                }
                if let Some(&r) = self.index.get(&w[end - l..end]) {
                    return Some((end - l, r));
                }
            }
        }
        None
    }

    pub fn reduce(&self, w: &[u16]) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        let mut stack: Vec<u16> = w.iter().rev().copied().collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &l in &self.lens {
                if l > out.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&out[out.len() - l..]) {
                    out.truncate(out.len() - l);
                    stack.extend(self.rules[r].1.iter().rev());
                    break;
                }
            }
        }
        out
    }

    pub fn is_reduced(&self, w: &[u16]) -> bool {
        self.find(w).is_none()
    }
}

/// Why a completion attempt stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionError {
    TooManyRules(usize),
    RuleTooLong(usize),
}

impl std::fmt::Display for CompletionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompletionError::TooManyRules(n) => write!(f, "more than {n} rules"),
            CompletionError::RuleTooLong(n) => write!(f, "rule longer than {n}"),
        }
    }
}

struct State {
    rules: Vec<Option<(Word, Word)>>,
    live: Rewriting,
}

impl State {
    fn rebuild(&mut self) {
        self.live = Rewriting::from_rules(self.rules.iter().flatten().cloned().collect());
    }
}

/// Complete the equations `u = v` under shortlex order.
pub fn complete(equations: &[(Word, Word)], caps: Caps) -> Result<Rewriting, CompletionError> {
    let mut st = State { rules: Vec::new(), live: Rewriting::default() };
    let mut pending: VecDeque<(Word, Word)> = equations.iter().cloned().collect();
    let mut i = 0;
    loop {
        while let Some((a, b)) = pending.pop_front() {
            let (a, b) = (st.live.reduce(&a), st.live.reduce(&b));
            let (lhs, rhs) = match shortlex(&a, &b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            if lhs.len() > caps.max_len {
                return Err(CompletionError::RuleTooLong(caps.max_len));
            }
            let probe = Rewriting::from_rules(vec![(lhs.clone(), rhs.clone())]);
            // rules whose left side the new rule rewrites go back to the queue
            let mut changed = false;
            for slot in st.rules.iter_mut() {
                if let Some((l, r)) = slot {
                    if !probe.is_reduced(l) {
                        pending.push_back((l.clone(), r.clone()));
                        *slot = None;
                        changed = true;
                    } else {
                        let nr = probe.reduce(r);
                        if nr != *r {
                            *r = nr;
                            changed = true;
                        }
                    }
                }
            }
            st.rules.push(Some((lhs, rhs)));
            if changed {
                st.rebuild();
            } else {
                let r = st.rules.last().unwrap().clone().unwrap();
                st.live.push(r);
            }
            if st.live.len() > caps.max_rules {
                return Err(CompletionError::TooManyRules(caps.max_rules));
            }
        }
        if i >= st.rules.len() {
            break;
        }
        let Some(ri) = st.rules[i].clone() else {
            i += 1;
            continue;
        };
        for j in 0..=i {
            let Some(rj) = st.rules[j].clone() else { continue };
            for (x, y) in [(&ri, &rj), (&rj, &ri)] {
                critical_pairs(x, y, &mut pending);
            }
        }
        i += 1;
    }
    let rules: Vec<(Word, Word)> = st.rules.into_iter().flatten().collect();
    Ok(Rewriting::from_rules(rules))
}

/// Overlaps of a suffix of `x.0` with a prefix of `y.0`, and `y.0` inside `x.0`.
fn critical_pairs(x: &(Word, Word), y: &(Word, Word), out: &mut VecDeque<(Word, Word)>) {
    let (a, b) = (&x.0, &y.0);
    for k in 1..a.len().min(b.len() + 1) {
        if a[a.len() - k..] == b[..k] && k < b.len() {
            let mut u = x.1.clone();
            u.extend_from_slice(&b[k..]);
            let mut v = a[..a.len() - k].to_vec();
            v.extend_from_slice(&y.1);
            out.push_back((u, v));
        }
    }
    if b.len() < a.len() {
        for s in 0..=a.len() - b.len() {
            if a[s..s + b.len()] == b[..] {
                let u = x.1.clone();
                let mut v = a[..s].to_vec();
                v.extend_from_slice(&y.1);
                v.extend_from_slice(&a[s + b.len()..]);
                out.push_back((u, v));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_abelian_rank_two() {
        // a=0, A=1, b=2, B=3
        let eqs = vec![
            (vec![0, 1], vec![]),
            (vec![1, 0], vec![]),
            (vec![2, 3], vec![]),
            (vec![3, 2], vec![]),
            (vec![2, 0], vec![0, 2]),
        ];
        let rw = complete(&eqs, Caps::default()).unwrap();
        assert_eq!(rw.reduce(&[2, 0, 3, 1]), Vec::<u16>::new());
        assert_eq!(rw.reduce(&[2, 2, 0]), vec![0, 2, 2]);
        assert_eq!(rw.reduce(&[3, 0]), rw.reduce(&[0, 3]));
    }

    #[test]
    fn symmetric_group_s3() {
        // s=0, t=1 with s²=t²=1, sts=tst
        let eqs = vec![(vec![0, 0], vec![]), (vec![1, 1], vec![]), (vec![1, 0, 1], vec![0, 1, 0])];
        let rw = complete(&eqs, Caps::default()).unwrap();
        // six elements: enumerate reduced words up to length 4
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                seen.insert(rw.reduce(w));
                for g in 0..2u16 {
                    let mut x: Vec<u16> = w.clone();
                    x.push(g);
                    next.push(x);
                }
            }
            frontier = next;
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn caps_are_reported() {
        let eqs = vec![(vec![0, 1, 0], vec![1, 0, 1])];
        let err = complete(&eqs, Caps { max_rules: 5, max_len: 40 }).unwrap_err();
        assert!(matches!(err, CompletionError::TooManyRules(5) | CompletionError::RuleTooLong(_)));
    }
}
