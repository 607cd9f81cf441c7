//! Browser bindings: forest normal forms, products in Thompson-like groups,
//! and Betti numbers of matching complexes.

use wasm_bindgen::prelude::*;

use cloneforge::complexes::{betti, build_matching_complex, homological_connectivity, Field};
use cloneforge::forest::Forest;
use cloneforge::systems::SystemSpec;
use cloneforge::{thompson, with_system};

/// Largest complex the page will build.
const PAGE_BUDGET: u64 = 200_000;

/// Normal form of a comma-separated caret word, with the first tree drawn in
/// parentheses.
#[wasm_bindgen]
pub fn forest_normal_form(word: &str) -> Result<String, String> {
    let f: Forest = word.parse().map_err(|e: cloneforge::forest::ForestError| e.to_string())?;
    let trees: Vec<String> = f.trees().iter().map(|t| t.to_string()).collect();
    Ok(format!("{f}\n{}", if trees.is_empty() { "·".to_string() } else { trees.join(" ") }))
}

/// Reduced product of two elements `left | mid | right` of the named system.
#[wasm_bindgen]
pub fn thompson_product(system: &str, a: &str, b: &str) -> Result<String, String> {
    let spec = SystemSpec::parse(system)?;
    with_system!(&spec, |sys| {
        let x = thompson::parse(&sys, a).map_err(|e| e.to_string())?;
        let y = thompson::parse(&sys, b).map_err(|e| e.to_string())?;
        let p = thompson::mul(&sys, &x, &y);
        Ok(thompson::format(&sys, &thompson::reduce(&sys, &p)))
    })
}

/// Reduced Betti numbers over Q of the matching complex of `sL_n`, one line
/// per degree, then the homological connectivity.
#[wasm_bindgen]
pub fn matching_betti(n: u32, s: u32) -> Result<String, String> {
    if n == 0 || s == 0 {
        return Err("n and s must be positive".into());
    }
    let cx = build_matching_complex(n as usize, s as usize, PAGE_BUDGET).map_err(|e| e.to_string())?;
    let b = betti(&cx, Field::Q);
    let mut out: Vec<String> = b.iter().enumerate().map(|(d, r)| format!("H~{d} = {r}")).collect();
    out.push(format!("homological connectivity {}", homological_connectivity(&b)));
    Ok(out.join("\n"))
}
