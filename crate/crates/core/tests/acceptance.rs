//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use curvgraph::cli::{canonicalize_expression, parse_expression, IndexExpression, Term};
use curvgraph::fuzzy::{
    domination_set, fuzzy_riemann_graph, fuzzy_union, levi_civita, strong_arcs, LeviCivitaLoop, LeviCivitaValue,
};
use curvgraph::graphana::{Membership, RiemannGraphSpec};
use curvgraph::petrov::{
    assemble_six_matrix, eigen, ricci_flat_residuals, trace_b, EigenvalueClass, OmegaMatrix, DEFAULT_TOL,
};
use curvgraph::symcore::{
    binomial, independent_component_count, orbit_type_count, symmetry_space_dimension_oracle, IndexQuad,
    RiemannComponents, DEFAULT_INGEST_TOL,
};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counting() -> Outcome {
    let start = Instant::now();
    let closed = independent_component_count(4);
    ensure(closed == 20, || format!("closed form gave {closed}"))?;
    for (n, want) in [(2, 1), (3, 6), (4, 20)] {
        let got = symmetry_space_dimension_oracle(n);
        ensure(got == want, || format!("oracle({n}) = {got}, expected {want}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("20 == oracle(4); oracle(2)=1, oracle(3)=6 in {elapsed:.2?}"))
}

fn identity() -> Outcome {
    for n in 2..=8u64 {
        let lhs = binomial(n, 2) + 3 * binomial(n, 3) + 2 * binomial(n, 4);
        let rhs = n * n * (n * n - 1) / 12;
        ensure(
            lhs == rhs && orbit_type_count(n) == independent_component_count(n),
            || format!("n={n}: {lhs} vs {rhs}"),
        )?;
    }
    Ok("orbit sum equals n^2(n^2-1)/12 for n=2..8".into())
}

fn bianchi_samples() -> Vec<RiemannComponents> {
    (0..50).map(|s| RiemannComponents::random(1000 + s, false)).collect()
}

fn symmetry_exhaustion() -> Outcome {
    let mut worst = 0.0f64;
    for (k, r) in bianchi_samples().iter().enumerate() {
        ensure(r.is_bianchi_enforced(), || format!("sample {k} not enforced"))?;
        for q in IndexQuad::all(4) {
            let v = r.get(q);
            ensure(v == -r.get(q.swap_first()) && v == -r.get(q.swap_second()), || {
                format!("sample {k}: antisymmetry broken at {q}")
            })?;
            ensure(v == r.get(q.swap_blocks()), || {
                format!("sample {k}: block symmetry broken at {q}")
            })?;
            worst = worst.max(r.cyclic_sum(q).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("max cyclic sum {worst:e}"))?;
    Ok(format!("50 tensors x 256 quads exact; max cyclic sum {worst:.1e}"))
}

fn trace_of_b() -> Outcome {
    let mut worst = 0.0f64;
    for r in bianchi_samples() {
        let s = assemble_six_matrix(&r).map_err(|e| e.to_string())?;
        worst = worst.max(trace_b(&s).abs());
    }
    ensure(worst <= 1e-12, || format!("max |tr B| {worst:e}"))?;
    let control = RiemannComponents::zero(4).with_component(IndexQuad::new(0, 1, 2, 3), 1.0);
    let ctrl = trace_b(&assemble_six_matrix(&control).map_err(|e| e.to_string())?).abs();
    ensure(ctrl > 1e-6, || format!("unenforced control gave |tr B| = {ctrl:e}"))?;
    Ok(format!("max |tr B| {worst:.1e}; control {ctrl:.3}"))
}

fn ricci_flat_relations() -> Outcome {
    let mut worst = 0.0f64;
    for s in 0..100 {
        let r = RiemannComponents::random(5000 + s, true);
        let res = ricci_flat_residuals(&r).map_err(|e| e.to_string())?;
        let m = res
            .trace_psi
            .max(res.sigma_asymmetry)
            .max(res.psi_plus_lambda)
            .max(res.trace_omega);
        ensure(m <= 1e-10, || format!("seed {}: residual {m:e}", 5000 + s))?;
        worst = worst.max(m);
    }
    let control = ricci_flat_residuals(&RiemannComponents::random(5000, false)).map_err(|e| e.to_string())?;
    let ctrl = control
        .trace_psi
        .max(control.sigma_asymmetry)
        .max(control.psi_plus_lambda)
        .max(control.trace_omega);
    ensure(ctrl > 1e-6, || format!("control residual only {ctrl:e}"))?;
    Ok(format!("100 samples, max residual {worst:.1e}; control {ctrl:.3}"))
}

fn petrov_fixtures_check() -> Outcome {
    let mut lines = Vec::new();
    for f in petrov_fixtures() {
        let w = OmegaMatrix::new(f.matrix);
        let sol = eigen(&w, DEFAULT_TOL).map_err(|e| format!("{}: {e}", f.name))?;
        let got = curvgraph::petrov::classify(&w, DEFAULT_TOL).map_err(|e| e.to_string())?;
        ensure(got == f.expected, || {
            format!("{}: classified {got}, expected {}", f.name, f.expected)
        })?;

        let cp = charpoly(&f.matrix);
        let cd = max_coeff_diff(&cp, &poly_from_roots(&f.eigenvalues));
        ensure(cd <= 1e-8, || {
            format!("{}: characteristic polynomial off by {cd:e}", f.name)
        })?;
        let dist = root_set_distance(&sol.eigenvalues, &f.eigenvalues);
        ensure(dist <= 1e-8, || format!("{}: eigenvalues off by {dist:e}", f.name))?;
        if sol.class == EigenvalueClass::Distinct {
            let dk = root_set_distance(&sol.eigenvalues, &durand_kerner(&cp));
            ensure(dk <= 1e-8, || format!("{}: Durand-Kerner disagreement {dk:e}", f.name))?;
        }
        for d in &sol.distinct {
            let blocks = jordan_blocks(&f.matrix, d.value, 1e-9);
            let alg: usize = blocks.iter().sum();
            ensure(
                alg == d.algebraic as usize && blocks.len() == d.geometric as usize,
                || {
                    format!(
                        "{}: Jordan blocks {blocks:?} vs multiplicities {}/{}",
                        f.name, d.algebraic, d.geometric
                    )
                },
            )?;
        }
        lines.push(format!("{}={got}", f.name));
    }
    Ok(lines.join(", "))
}

fn levi_civita_parity() -> Outcome {
    let mut nonzero = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                let parity = if a == b || b == c || a == c {
                    0
                } else {
                    let inversions = [(a, b), (a, c), (b, c)].iter().filter(|(x, y)| x > y).count();
                    if inversions % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                };
                let v = levi_civita(a, b, c).map_err(|e| e.to_string())?;
                ensure(v.as_i8() == parity, || {
                    format!("eps({a},{b},{c}) = {v:?}, parity {parity}")
                })?;
                if v != LeviCivitaValue::Zero {
                    nonzero += 1;
                }
            }
        }
    }
    Ok(format!("27 triples match, {nonzero} nonzero"))
}

fn fuzzy_exactness() -> Outcome {
    let spec = RiemannGraphSpec::standard();
    let g = fuzzy_riemann_graph(&spec);
    let one = Membership::new(1, 1);
    let third = Membership::new(1, 3);
    ensure(g.sigma(0) == Some(one), || "fixed vertex membership".into())?;
    for v in 1..=3 {
        ensure(g.sigma(v) == Some(third), || {
            format!("vertex {v} membership {:?}", g.sigma(v))
        })?;
    }
    let dom = domination_set(&g, 0);
    ensure(dom.len() == 1 && dom.contains(&1), || format!("domination set {dom:?}"))?;
    let strong = strong_arcs(&g);
    ensure(strong.len() == 4 && g.arcs().count() == 4, || {
        format!("strong arcs {strong:?}")
    })?;
    let u = fuzzy_union(&LeviCivitaLoop { vertex: 1 }, &g, 3).map_err(|e| e.to_string())?;
    let ninth = Membership::new(1, 9);
    ensure(u.sigma(1) == Some(ninth), || {
        format!("bridge after union {:?}", u.sigma(1))
    })?;
    ensure(u.respects_bound(), || "union violates arc bound".into())?;
    Ok("memberships {1, 1/3}; union 1/9; domination {v2}; 4 strong arcs".into())
}

fn random_expression(rng: &mut ChaCha8Rng) -> String {
    const NAMES: [&str; 3] = ["R", "W", "C2"];
    const SYMBOLS: [char; 8] = ['i', 'k', 'l', 'm', '0', '1', '2', '3'];
    let n = rng.gen_range(1..=5);
    let mut s = String::new();
    for k in 0..n {
        let num: i64 = rng.gen_range(1..=7);
        let den: i64 = rng.gen_range(1..=4);
        let neg = rng.gen_bool(0.5);
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if num != 1 || den != 1 || rng.gen_bool(0.3) {
            if den == 1 {
                s.push_str(&format!("{num}*"));
            } else {
                s.push_str(&format!("{num}/{den}*"));
            }
        }
        let name = NAMES[if rng.gen_bool(0.7) { 0 } else { rng.gen_range(1..3) }];
        let idx: String = (0..4).map(|_| SYMBOLS[rng.gen_range(0..8)]).collect();
        s.push_str(&format!("{name}_{{{idx}}}"));
    }
    s
}

fn evaluates_equal(a: &IndexExpression, b: &IndexExpression, r: &RiemannComponents) -> bool {
    let (x, y) = (a.evaluate(r), b.evaluate(r));
    (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()))
}

fn parser() -> Outcome {
    let cyclic = parse_expression("R_{iklm}+R_{ilmk}+R_{imkl}").map_err(|e| e.to_string())?;
    let zero = canonicalize_expression(&cyclic, true);
    ensure(zero.to_string() == "0", || {
        format!("cyclic sum canonicalized to {zero}")
    })?;
    let swapped = canonicalize_expression(&parse_expression("R_{lmik}").map_err(|e| e.to_string())?, false);
    let want = IndexExpression {
        terms: vec![Term {
            coeff: Rational64::from_integer(1),
            name: "R".into(),
            quad: IndexQuad::new(0, 1, 2, 3),
        }],
    };
    ensure(swapped == want, || format!("R_{{lmik}} canonicalized to {swapped}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let tensor = RiemannComponents::random(77, false);
    for case in 0..200 {
        let text = random_expression(&mut rng);
        let e = parse_expression(&text).map_err(|err| format!("case {case} `{text}`: {err}"))?;
        let printed = e.to_string();
        let back = parse_expression(&printed).map_err(|err| format!("case {case} reprint `{printed}`: {err}"))?;
        ensure(back == e, || format!("case {case}: `{text}` reprinted as `{printed}`"))?;
        for bianchi in [false, true] {
            let canon = canonicalize_expression(&e, bianchi);
            let reparsed = parse_expression(&canon.to_string()).map_err(|err| err.to_string())?;
            ensure(reparsed == canon, || {
                format!("case {case}: canonical form `{canon}` does not reparse")
            })?;
            ensure(canonicalize_expression(&canon, bianchi) == canon, || {
                format!("case {case}: canonicalization not idempotent on `{canon}`")
            })?;
            ensure(evaluates_equal(&e, &canon, &tensor), || {
                format!("case {case}: `{text}` and `{canon}` evaluate differently")
            })?;
        }
    }
    Ok("cyclic sum -> 0; R_{lmik} -> R_{0123}; 200 generated cases round-trip".into())
}

fn end_to_end() -> Outcome {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ricci_flat.json");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_curvgraph"))
        .args(["classify", "--input", fixture])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let tag = report["petrov_type"].as_str().unwrap_or_default().to_owned();
    ensure(["I", "II", "D", "III", "N", "O"].contains(&tag.as_str()), || {
        format!("tag {tag:?}")
    })?;
    let residuals = report["residuals"].as_object().ok_or("missing residuals")?;
    for key in ["trace_psi", "sigma_asymmetry", "psi_plus_lambda", "trace_omega"] {
        let v = residuals
            .get(key)
            .and_then(|v| v.as_f64())
            .ok_or(format!("missing {key}"))?;
        ensure(v < 1e-10, || format!("{key} = {v:e}"))?;
    }
    let text = std::fs::read_to_string(fixture).map_err(|e| e.to_string())?;
    let r = curvgraph::cli::ingest(&text, DEFAULT_INGEST_TOL, false).map_err(|e| e.to_string())?;
    ensure(r.ricci_residual() <= 1e-10, || "fixture is not Ricci-flat".into())?;
    Ok(format!("type {tag} in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("counting", counting),
        ("identity", identity),
        ("symmetry-exhaustion", symmetry_exhaustion),
        ("trace-b", trace_of_b),
        ("ricci-flat", ricci_flat_relations),
        ("petrov-fixtures", petrov_fixtures_check),
        ("levi-civita", levi_civita_parity),
        ("fuzzy-exactness", fuzzy_exactness),
        ("parser", parser),
        ("end-to-end", end_to_end),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
