//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p cloneforge-cli --release --test acceptance -- --nocapture`.

use std::collections::{BTreeSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cloneforge::axioms::{check_axioms, check_properly_graded, Sampler, Status, SwappedKappa};
use cloneforge::cloning::{clone_by_forest, CloningSystem};
use cloneforge::complexes::{betti, build_dlk, build_matching_complex, dlk_bbar_isomorphism, nu, Field, DEFAULT_BUDGET};
use cloneforge::forest::{forests, normal_form, Forest, Tree};
use cloneforge::perm::Perm;
use cloneforge::systems::{BBar, Borel, DirectPower, Exact, Fp, Mock, Symmetric, SystemSpec, Trivial};
use cloneforge::thompson::{self, Element};
use cloneforge::{systems::LoopBraid, with_system};

type Check = Result<String, String>;
type Criterion = (usize, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- criterion 1: forest normal forms against congruence closure ----

/// All words congruent to `w` under λ_j λ_i = λ_i λ_{j+1} (i < j), both directions.
fn congruence_class(w: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([w.to_vec()]);
    seen.insert(w.to_vec());
    while let Some(u) = queue.pop_front() {
        for p in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[p], u[p + 1]);
            let mut next = Vec::new();
            if b < a {
                next.push((b, a + 1));
            }
            if a + 1 < b {
                next.push((b - 1, a));
            }
            for (x, y) in next {
                let mut v = u.clone();
                v[p] = x;
                v[p + 1] = y;
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

fn all_words(max_len: usize, letters: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 1..=letters {
                let mut v: Vec<usize> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn criterion_1() -> Check {
    let words = all_words(6, 4);
    for w in &words {
        let nf = normal_form(w);
        ensure(nf.windows(2).all(|p| p[0] <= p[1]), || format!("{w:?} -> {nf:?} not nondecreasing"))?;
        let class = congruence_class(w);
        ensure(class.contains(&nf), || format!("{w:?} -> {nf:?} not congruent"))?;
        let sorted: Vec<_> = class.iter().filter(|u| u.windows(2).all(|p| p[0] <= p[1])).collect();
        ensure(sorted == vec![&nf], || format!("{w:?}: nondecreasing members {sorted:?}"))?;
        ensure(Forest::from_word(w).word() == nf.as_slice(), || format!("{w:?}: forest word differs"))?;
    }
    Ok(format!("{} words", words.len()))
}

// ---- criterion 2: cloning axioms ----

fn axioms_pass<S: CloningSystem>(sys: &S, n: usize) -> Result<(), String> {
    let rep = check_axioms(sys, n, &Sampler::default());
    ensure(rep.passed(), || format!("{} failed:\n{}", sys.name(), rep.to_tsv()))
}

fn presentation_pass<S: CloningSystem>(sys: &S, n: usize) -> Result<usize, String> {
    let lines = sys.presentation_checks(n).ok_or_else(|| format!("{}: no presentation checks", sys.name()))?;
    let bad: Vec<_> = lines.iter().filter(|l| !l.info && l.status != Status::Pass).collect();
    ensure(bad.is_empty(), || format!("{}: {bad:?}", sys.name()))?;
    Ok(lines.len())
}

fn criterion_2() -> Check {
    axioms_pass(&Symmetric, 6)?;
    axioms_pass(&Borel::new(Fp::new(2)?), 4)?;
    axioms_pass(&Borel::new(Fp::new(3)?), 3)?;
    axioms_pass(&DirectPower::new(3), 4)?;
    let mock = presentation_pass(&Mock::new(), 5)?;
    let lb = presentation_pass(&LoopBraid::new(), 5)?;
    let canary = SwappedKappa {
        inner: Symmetric,
        a: Perm::transposition(3, 1, 2),
        b: Perm::transposition(3, 2, 3),
    };
    let rep = check_axioms(&canary, 4, &Sampler::default());
    ensure(!rep.failures().is_empty(), || "corrupted system passed".into())?;
    Ok(format!("mock {mock} lines, loopbraid {lb} lines, canary fails"))
}

// ---- criterion 3: worked examples ----

fn criterion_3() -> Check {
    let mut checks: Vec<(String, String)> = Vec::new();
    let g = Perm::parse("(1 2)", 2)?;
    checks.push((clone_by_forest(&Symmetric, &g, &Forest::caret(2)).to_string(), "(1 3 2)".into()));

    let b = Borel::new(Exact::Rationals);
    let m = b.parse("[1,2,3;0,4,5;0,0,6]", 3)?;
    checks.push((b.format(&b.kappa(&m, 2)), "[1,2,2,3;0,4,0,0;0,0,4,5;0,0,0,6]".into()));

    let mock = Mock::new();
    let s = mock.gen(4, 1, 4);
    checks.push((mock.format(&mock.kappa(&s, 3)), "s(1,5)s(3,4)".into()));
    checks.push((mock.rho(&s).apply(3).to_string(), "2".into()));

    let lb = LoopBraid::new();
    let b1 = lb.parse("b(1)", 2)?;
    checks.push((lb.format(&lb.kappa(&b1, 2)), "b(2)b(1)".into()));
    let w = lb.parse("t(1)b(2)", 3)?;
    checks.push((lb.format(&lb.kappa(&w, 3)), "t(2)t(1)b(3)b(2)".into()));
    checks.push((lb.rho(&w).apply(3).to_string(), "1".into()));

    for (got, want) in &checks {
        ensure(got == want, || format!("got {got}, expected {want}"))?;
    }
    Ok(format!("{} exact matches", checks.len()))
}

// ---- criterion 4: group laws ----

fn decided<S: CloningSystem>(sys: &S, a: &Element<S::Elem>, b: &Element<S::Elem>, what: &str) -> Result<(), String> {
    match thompson::decide_eq(sys, a, b) {
        Some(true) => Ok(()),
        Some(false) => Err(format!("{}: {what} fails: {} vs {}", sys.name(), thompson::format(sys, a), thompson::format(sys, b))),
        None => Err(format!("{}: {what} undecided", sys.name())),
    }
}

fn group_laws<S: CloningSystem>(sys: &S, triples: usize, max_feet: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = thompson::identity(sys);
    for _ in 0..triples {
        let a = thompson::random_element(sys, max_feet, &mut rng);
        let b = thompson::random_element(sys, max_feet, &mut rng);
        let c = thompson::random_element(sys, max_feet, &mut rng);
        let left = thompson::mul(sys, &thompson::mul(sys, &a, &b), &c);
        let right = thompson::mul(sys, &a, &thompson::mul(sys, &b, &c));
        decided(sys, &left, &right, "associativity")?;
        decided(sys, &thompson::mul(sys, &a, &id), &a, "right unit")?;
        decided(sys, &thompson::mul(sys, &id, &a), &a, "left unit")?;
        decided(sys, &thompson::mul(sys, &a, &thompson::inv(sys, &a)), &id, "inverse")?;
    }
    Ok(())
}

/// Breakpoints of the leaves of `t` as subintervals of [0, 1].
fn intervals(t: &Tree, lo: f64, len: f64, out: &mut Vec<(f64, f64)>) {
    match t {
        Tree::Leaf => out.push((lo, len)),
        Tree::Caret(a, b) => {
            intervals(a, lo, len / 2.0, out);
            intervals(b, lo + len / 2.0, len / 2.0, out);
        }
    }
}

/// Piecewise-linear homeomorphism of [0, 1] sending the leaves of the right
/// tree to those of the left tree.
fn pl_map(t: &Element<usize>) -> impl Fn(f64) -> f64 {
    let (mut dom, mut cod) = (Vec::new(), Vec::new());
    intervals(&t.right.tree(), 0.0, 1.0, &mut dom);
    intervals(&t.left.tree(), 0.0, 1.0, &mut cod);
    move |x: f64| {
        if x >= 1.0 {
            return 1.0;
        }
        let i = dom.iter().rposition(|&(lo, _)| lo <= x).unwrap();
        cod[i].0 + (x - dom[i].0) * cod[i].1 / dom[i].1
    }
}

fn test_points() -> Vec<f64> {
    (0..=1024).map(|k| k as f64 / 1024.0).collect()
}

fn thompson_f() -> Result<(), String> {
    let f = Trivial;
    let pts = test_points();
    let x0 = thompson::element(&f, Forest::from_word(&[1, 1]), 3, Forest::from_word(&[1, 2])).map_err(|e| e.to_string())?;
    let x1 = thompson::element(&f, Forest::from_word(&[1, 2, 2]), 4, Forest::from_word(&[1, 2, 3])).map_err(|e| e.to_string())?;
    let u = thompson::mul(&f, &x0, &thompson::inv(&f, &x1));
    let v = thompson::mul(&f, &thompson::mul(&f, &thompson::inv(&f, &x0), &x1), &x0);
    let comm = thompson::mul(&f, &thompson::mul(&f, &u, &v), &thompson::mul(&f, &thompson::inv(&f, &u), &thompson::inv(&f, &v)));
    let id = thompson::identity(&f);
    decided(&f, &comm, &id, "F relator")?;
    let m = pl_map(&comm);
    ensure(pts.iter().all(|&x| m(x) == x), || "relator is not the identity map".into())?;
    let m0 = pl_map(&x0);
    ensure(pts.iter().any(|&x| m0(x) != x), || "x0 acts trivially".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let a = thompson::random_element(&f, 6, &mut rng);
        let b = thompson::random_element(&f, 6, &mut rng);
        let (ma, mb, mab) = (pl_map(&a), pl_map(&b), pl_map(&thompson::mul(&f, &a, &b)));
        ensure(pts.iter().all(|&x| mab(x) == ma(mb(x))), || "product disagrees with composition".into())?;
        let same = pts.iter().all(|&x| ma(x) == mb(x));
        ensure(thompson::eq(&f, &a, &b) == same, || "equality disagrees with the maps".into())?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let names = [
        "trivial", "symmetric", "power:Z/3", "power-iota:2", "borel:Q", "borel:F2", "abels:F3", "bbar:F2", "mock", "loopbraid",
        "pureloopbraid",
    ];
    for (i, name) in names.iter().enumerate() {
        let spec = SystemSpec::parse(name)?;
        let feet = if *name == "mock" { 3 } else { 4 };
        with_system!(&spec, |sys| group_laws(&sys, 300, feet, 100 + i as u64))?;
    }
    thompson_f()?;

    let v = Symmetric;
    let sigma = thompson::parse(&v, "(·,·) | (1 2) | (·,·)").map_err(|e| e.to_string())?;
    decided(&v, &thompson::mul(&v, &sigma, &sigma), &thompson::identity(&v), "sigma squared")?;

    // retraction to the first coordinate, exhaustively over Z/6 and small expansions
    let pw = DirectPower::new(6);
    let mut expansions = 0;
    for g in 0..6u64 {
        let t = thompson::element(&pw, Forest::empty(), vec![g], Forest::empty()).map_err(|e| e.to_string())?;
        for len in 0..=3 {
            for e in forests(len, 1) {
                let x = thompson::expand(&pw, &t, &e).map_err(|e| e.to_string())?;
                ensure(x.mid[0] == g, || format!("retraction moves {g}"))?;
                ensure(thompson::eq(&pw, &x, &t), || "expansion changed the class".into())?;
                expansions += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let a = thompson::random_element(&pw, 4, &mut rng);
        let b = thompson::random_element(&pw, 4, &mut rng);
        let p = thompson::mul(&pw, &a, &b);
        ensure(p.mid[0] == (a.mid[0] + b.mid[0]) % 6, || "retraction is not multiplicative".into())?;
    }

    let samples: Vec<_> = (0..100).map(|_| thompson::random_element(&pw, 5, &mut rng)).collect();
    let rep = thompson::kernel_splitting_check(&pw, &samples);
    ensure(rep.failures.is_empty(), || format!("splitting: {:?}", rep.failures))?;

    for _ in 0..100 {
        let t = thompson::random_element(&v, 5, &mut rng);
        let u = thompson::truncate_rewrite(&v, &t, 3);
        ensure(u.feet() >= 4, || "truncation left too few leaves".into())?;
        decided(&v, &u, &t, "truncation")?;
    }
    Ok(format!("{} systems x 300 triples, {expansions} retraction checks", names.len()))
}

// ---- criteria 5-7: homology ----

fn vanishes_through(b: &[usize], top: isize) -> bool {
    (0..=top).all(|i| b.get(i as usize).copied().unwrap_or(0) == 0)
}

fn criterion_5() -> Check {
    let mut rows = Vec::new();
    for n in 2..=10 {
        let cx = build_matching_complex(n, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let (q, f2) = (betti(&cx, Field::Q), betti(&cx, Field::Fp(2)));
        let top = nu(n) - 1;
        ensure(vanishes_through(&q, top) && vanishes_through(&f2, top), || format!("n={n}: Q {q:?} F2 {f2:?}"))?;
        rows.push(format!("{n}:{q:?}"));
    }
    Ok(rows.join(" "))
}

fn criterion_6() -> Check {
    for n in 1..=6 {
        dlk_bbar_isomorphism(n, 2, DEFAULT_BUDGET).map_err(|e| format!("n={n}: {e}"))?;
    }
    let sys = BBar::new(Fp::new(2)?);
    let mut rows = Vec::new();
    for n in 2..=7 {
        let d = build_dlk(&sys, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let (q, f2) = (betti(&d.complex, Field::Q), betti(&d.complex, Field::Fp(2)));
        ensure(vanishes_through(&q, nu(n) - 1) && vanishes_through(&f2, nu(n) - 1), || format!("n={n}: Q {q:?} F2 {f2:?}"))?;
        rows.push(format!("{n}:{q:?}"));
    }
    Ok(format!("isomorphic for n<=6; {}", rows.join(" ")))
}

/// |B_n(F_q)| = (q-1)^n q^{n(n-1)/2}.
fn borel_order(q: u128, n: u32) -> u128 {
    (q - 1).pow(n) * q.pow(n * (n - 1) / 2)
}

fn criterion_7() -> Check {
    let sys = Borel::new(Fp::new(2)?);
    let mut rows = Vec::new();
    for n in 2..=7usize {
        let d = build_dlk(&sys, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let want = (n as u128 - 1) * borel_order(2, n as u32) / borel_order(2, n as u32 - 1);
        ensure(d.complex.vertex_count() as u128 == want, || format!("n={n}: {} vertices, expected {want}", d.complex.vertex_count()))?;
        let b = betti(&d.complex, Field::Fp(2));
        if n >= 6 {
            ensure(b.first() == Some(&0), || format!("n={n}: reduced H0 = {:?}", b.first()))?;
        }
        rows.push(format!("{n}:H1={}", b.get(1).copied().unwrap_or(0)));
    }
    Ok(rows.join(" "))
}

// ---- criterion 8: properly graded ----

fn graded<S: CloningSystem>(sys: &S, n: usize) -> Result<(), String> {
    let rep = check_properly_graded(sys, n);
    ensure(rep.passed(), || format!("{}:\n{}", sys.name(), rep.to_tsv()))
}

fn criterion_8() -> Check {
    graded(&Symmetric, 6)?;
    graded(&Borel::new(Fp::new(2)?), 4)?;
    graded(&Borel::new(Fp::new(3)?), 3)?;
    graded(&DirectPower::new(3), 4)?;
    graded(&DirectPower::new(6), 3)?;
    let rep = check_properly_graded(&DirectPower::inclusion_cloning(2), 3);
    let bad = rep.failures();
    ensure(!bad.is_empty() && !bad[0].witness.is_empty(), || "inclusion-cloning system was not rejected".into())?;
    Ok(format!("counterexample witness {}", bad[0].witness))
}

// ---- criterion 9: determinism ----

fn criterion_9() -> Check {
    let bin = env!("CARGO_BIN_EXE_cloneforge");
    let runs: &[&[&str]] = &[
        &["nf", "--forest", "3,1,2"],
        &["nf", "--system", "symmetric", "--element", "((·,·),·) | (1 2 3) | (·,(·,·))"],
        &["mul", "--system", "symmetric", "(·,·) | (1 2) | (·,·)", "((·,·),·) | (1 2 3) | (·,(·,·))"],
        &["inv", "--system", "borel", "--ring", "F3", "(·,·) | [1,2;0,2] | (·,·)"],
        &["eq", "--system", "trivial", "(·,·) | 1 | (·,·)", "· | 1 | ·"],
        &["--seed", "7", "verify", "--system", "borel", "--ring", "Q", "--nmax", "3"],
        &["--seed", "7", "verify", "--system", "mock", "--relators", "--nmax", "4"],
        &["homology", "--matching", "--n", "2..7"],
        &["homology", "--dlk", "--system", "bbar", "--ring", "F2", "--n", "2..5"],
    ];
    for args in runs {
        let go = || Command::new(bin).args(*args).output().map_err(|e| e.to_string());
        let (a, b) = (go()?, go()?);
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || format!("{args:?} differs"))?;
        ensure(!a.stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(format!("{} commands", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, criterion_1, Duration::from_secs(60)),
        (2, criterion_2, Duration::from_secs(600)),
        (3, criterion_3, Duration::from_secs(60)),
        (4, criterion_4, Duration::from_secs(300)),
        (5, criterion_5, Duration::from_secs(300)),
        (6, criterion_6, Duration::from_secs(600)),
        (7, criterion_7, Duration::from_secs(1200)),
        (8, criterion_8, Duration::from_secs(600)),
        (9, criterion_9, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (k, run, limit) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|s| {
            if took <= limit {
                Ok(s)
            } else {
                Err(format!("took {took:.1?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS ({:.1}s) {detail}", took.as_secs_f64()),
            Err(why) => {
                println!("criterion {k}: FAIL ({:.1}s) {why}", took.as_secs_f64());
                failed.push(k);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
