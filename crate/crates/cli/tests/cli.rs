use std::fs;

use cloneforge_cli::{run_args, EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> cloneforge_cli::Outcome {
    run_args(std::iter::once("cloneforge").chain(args.iter().copied()))
}

#[test]
fn forest_normal_form() {
    let o = run(&["nf", "--forest", "3,1"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().next(), Some("1,4"));
    assert_eq!(run(&["nf", "--forest", "0,2"]).code, EXIT_USAGE);
}

#[test]
fn element_arithmetic() {
    let sigma = "(·,·) | (1 2) | (·,·)";
    let o = run(&["mul", "--system", "symmetric", sigma, sigma]);
    assert_eq!((o.code, o.stdout.trim()), (EXIT_OK, "· | () | ·"));
    let o = run(&["inv", "--system", "symmetric", "((·,·),·) | (1 2 3) | (·,(·,·))"]);
    assert_eq!(o.stdout.trim(), "(·,(·,·)) | (1 3 2) | ((·,·),·)");
    assert_eq!(run(&["eq", "--system", "symmetric", sigma, sigma]).code, EXIT_OK);
    assert_eq!(run(&["eq", "--system", "symmetric", sigma, "· | () | ·"]).code, EXIT_FALSE);
    let o = run(&["nf", "--system", "borel", "--ring", "Q", "--element", "(·,(·,·)) | [1,2,2;0,1,0;0,0,1] | (·,(·,·))"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), "(·,·) | [1,2;0,1] | (·,·)");
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--system", "symmetric", "--nmax", "4"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.starts_with("# cloneforge verify system="));
    let o = run(&["verify", "--system", "power-iota:2", "--nmax", "3"]);
    assert_eq!(o.code, EXIT_FALSE);
    assert!(o.stdout.contains("fail"));
}

#[test]
fn homology_table_and_export() {
    let dir = std::env::temp_dir().join(format!("cloneforge-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out = dir.join("m.txt");
    let o = run(&["homology", "--matching", "--n", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let rows: Vec<&str> = o.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n\tdim\trank_Q\trank_F2\tbound\twithin_bound");
    assert!(rows[2].starts_with("6\t1\t1\t1"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("dim 2 vertices 5\n"));
    fs::remove_dir_all(&dir).unwrap();

    let a = run(&["homology", "--dlk", "--system", "trivial", "--n", "2..=6"]);
    let b = run(&["homology", "--matching", "--n", "2..6"]);
    let body = |s: &str| s.lines().filter(|l| !l.starts_with("# cloneforge")).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&a.stdout), body(&b.stdout));
}

#[test]
fn budgets_and_usage_errors() {
    assert_eq!(run(&["--budget", "10", "homology", "--matching", "--n", "12"]).code, EXIT_BUDGET);
    assert_eq!(run(&["homology", "--dlk", "--system", "mock", "--n", "4"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["mul", "--system", "nonsense", "a", "b"]).code, EXIT_USAGE);
}

#[test]
fn seeds_change_only_sampled_output() {
    let a = run(&["--seed", "1", "verify", "--system", "borel", "--ring", "Q", "--nmax", "3"]);
    let b = run(&["--seed", "1", "verify", "--system", "borel", "--ring", "Q", "--nmax", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("seed=1"));
}
