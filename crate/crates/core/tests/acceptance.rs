//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use isozeta::arith::sturm::all_roots_real_within_sqrt;
use isozeta::arith::{charpoly, poly_exact_div, IntMatrix, IntPolynomial};
use isozeta::elliptic::supersingular_j_invariants;
use isozeta::field::{FieldElement, FieldTower};
use isozeta::graph::{brandt_matrix, build_vertices, ihara_zeta, LevelGraph};
use isozeta::modsym::{hecke_charpoly, ManinSpace};
use isozeta::verify::{verify_hecke_module_iso, VerificationJob};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn trace_norm(tower: &FieldTower, j: &FieldElement) -> (i64, i64) {
    let f = tower.level(2);
    let conj = f.frobenius(j, 1);
    let base = |x: FieldElement| {
        let c = x.coords();
        assert!(c[1..].iter().all(|v| *v == 0), "trace or norm outside F_q");
        c[0] as i64
    };
    (base(f.add(j, &conj)), base(f.mul(j, &conj)))
}

fn criterion_1() -> Outcome {
    let primes = [13u64, 37, 61, 73, 97, 109];
    let mut library = Duration::ZERO;
    for &q in &primes {
        let t = Instant::now();
        let tower = FieldTower::new(q, 0).map_err(|e| e.to_string())?;
        let js = supersingular_j_invariants(&tower).map_err(|e| e.to_string())?;
        library += t.elapsed();
        ensure(js.len() as u64 == (q - 1) / 12, || format!("q = {q}: {} invariants", js.len()))?;
        let mut ours: Vec<(i64, i64)> = js.iter().map(|j| trace_norm(&tower, j)).collect();
        ours.sort();
        let oracle = common::supersingular_by_point_count(q as i64);
        ensure(ours == oracle, || format!("q = {q}: disagrees with point counting"))?;
    }
    Ok(format!(
        "q in {primes:?}, counts (q-1)/12 and point-count oracle agree, enumeration {:.2} s",
        library.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for q in [13u64, 37, 61] {
        let tower = FieldTower::new(q, 0).map_err(|e| e.to_string())?;
        for n in [1u64, 2, 3, 5] {
            let vertices = build_vertices(&tower, n).map_err(|e| e.to_string())?;
            let want = (q - 1) * common::cyclic_subgroup_count(n) / 12;
            ensure(vertices.len() as u64 == want, || format!("q={q} N={n}: {} vertices, want {want}", vertices.len()))?;
            let mut mats: Vec<(u64, IntMatrix)> = Vec::new();
            for l in [2u64, 3, 5, 7] {
                if (q * n) % l == 0 {
                    continue;
                }
                let b = brandt_matrix(&tower, &vertices, l).map_err(|e| e.to_string())?;
                ensure(b.row_sums().iter().all(|s| *s == (l + 1).into()), || format!("q={q} N={n} ℓ={l}: row sums"))?;
                ensure(b.is_symmetric(), || format!("q={q} N={n} ℓ={l}: not symmetric"))?;
                mats.push((l, b));
            }
            for (l1, a) in &mats {
                for (l2, b) in &mats {
                    if l1 < l2 {
                        let ab = a.mul(b).map_err(|e| e.to_string())?;
                        let ba = b.mul(a).map_err(|e| e.to_string())?;
                        ensure(ab == ba, || format!("q={q} N={n}: B_{l1}, B_{l2} do not commute"))?;
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (q, N) pairs: vertex counts, row sums, symmetry, commutation"))
}

fn criterion_3() -> Outcome {
    let tower = FieldTower::new(13, 0).map_err(|e| e.to_string())?;
    let g = LevelGraph::build(&tower, 2, 1).map_err(|e| e.to_string())?;
    ensure(g.brandt == IntMatrix::from_rows(&[vec![3]]).unwrap(), || format!("B = {:?}", g.brandt))?;
    let z = ihara_zeta(&g).map_err(|e| e.to_string())?;
    let expected = &IntPolynomial::from_i64s(&[1, -1]) * &IntPolynomial::from_i64s(&[1, -2]);
    ensure(z.denominator == expected, || format!("denominator {}", z.denominator.display_with("S")))?;
    ensure(z.euler_char_times_2 == -1, || format!("2χ = {}", z.euler_char_times_2))?;
    let report = VerificationJob::new(2, 13, 1, 0).map_err(|e| e.to_string())?.run();
    let check = |name: &str| report.checks.iter().find(|c| c.identity == name).cloned();
    let lemma = check("lemma_brandt_weil").ok_or("no lemma check")?;
    let want = expected.display_with("S");
    ensure(lemma.passed && lemma.lhs == want && lemma.rhs == want, || format!("brandt-weil: {} vs {}", lemma.lhs, lemma.rhs))?;
    let thm = check("theorem_a_squared").ok_or("no theorem check")?;
    ensure(thm.passed, || format!("squared zeta identity: {} vs {}", thm.lhs, thm.rhs))?;
    Ok("B = [3], denominator (1-S)(1-2S), 2χ = -1, Brandt-Weil and squared zeta identities hold".into())
}

fn criterion_4() -> Outcome {
    let oracle = common::charpoly_from_curves(&[common::E37A, common::E37B], 2);
    ensure(oracle == IntPolynomial::from_i64s(&[0, 2, 1]), || format!("oracle gave {oracle}"))?;
    let plus = hecke_charpoly(37, 2).map_err(|e| e.to_string())?;
    ensure(plus == oracle, || format!("hecke_charpoly(37, 2) = {plus}"))?;
    let tower = FieldTower::new(37, 0).map_err(|e| e.to_string())?;
    let vertices = build_vertices(&tower, 1).map_err(|e| e.to_string())?;
    let b2 = brandt_matrix(&tower, &vertices, 2).map_err(|e| e.to_string())?;
    let div0 = poly_exact_div(&charpoly(&b2).map_err(|e| e.to_string())?, &IntPolynomial::from_i64s(&[-3, 1]))
        .map_err(|e| e.to_string())?;
    ensure(div0 == oracle, || format!("charpoly(B_2 | Div0) = {div0}"))?;
    for c in verify_hecke_module_iso(37, 1, &[2, 3, 5]).map_err(|e| e.to_string())? {
        ensure(c.passed, || format!("ℓ = {:?}: {} vs {}", c.ell, c.lhs, c.rhs))?;
    }
    Ok("x(x+2) from point counts, modular symbols and Div0; module iso for ℓ = 2, 3, 5".into())
}

fn grid() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for q in [13u64, 37, 61] {
            for n in [1u64, 2, 3] {
                if (q * n) % p != 0 && n % q != 0 {
                    out.push((p, q, n));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let tuples = grid();
    let mut slowest = Duration::ZERO;
    let mut unsquared = 0;
    for &(p, q, n) in &tuples {
        let t = Instant::now();
        let report = VerificationJob::new(p, q, n, 0).map_err(|e| e.to_string())?.run();
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        ensure(elapsed < Duration::from_secs(120), || format!("({p},{q},{n}) took {elapsed:?}"))?;
        let by_name: BTreeMap<&str, bool> = report
            .checks
            .iter()
            .filter(|c| c.identity.starts_with("theorem_a") || c.identity == "lemma_brandt_weil")
            .map(|c| (c.identity.as_str(), c.passed))
            .collect();
        ensure(by_name.get("theorem_a_squared") == Some(&true), || format!("({p},{q},{n}): squared form\n{}", report.to_text()))?;
        ensure(by_name.get("lemma_brandt_weil") == Some(&true), || format!("({p},{q},{n}): lemma\n{}", report.to_text()))?;
        let tower = FieldTower::new(q, 0).map_err(|e| e.to_string())?;
        let g = LevelGraph::build(&tower, p, n).map_err(|e| e.to_string())?;
        if g.euler_char_times_2() % 2 == 0 {
            ensure(by_name.get("theorem_a") == Some(&true), || format!("({p},{q},{n}): unsquared form"))?;
            unsquared += 1;
        }
    }
    Ok(format!(
        "{} tuples, squared form everywhere, unsquared in {unsquared} even-2χ cases, slowest {:.2} s",
        tuples.len(),
        slowest.as_secs_f64()
    ))
}

fn criterion_6() -> Outcome {
    let mut levels: Vec<u64> = grid().iter().flat_map(|&(_, q, n)| [q * n, n]).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut eigen_checks = 0;
    for &m in &levels {
        let space = ManinSpace::new(m).map_err(|e| e.to_string())?;
        let g = common::genus_oracle(m) as usize;
        ensure(space.cuspidal_dimension() == 2 * g, || format!("M = {m}: dim {} vs 2g = {}", space.cuspidal_dimension(), 2 * g))?;
        for l in [2u64, 3, 5, 7] {
            if m % l == 0 {
                continue;
            }
            let chi = space.hecke_charpoly(l).map_err(|e| e.to_string())?;
            ensure(chi.degree().finite().unwrap_or(0) == g, || format!("M = {m}, ℓ = {l}: degree"))?;
            ensure(all_roots_real_within_sqrt(&chi, &(4 * l).into()), || format!("M = {m}, ℓ = {l}: {chi} violates |λ| ≤ 2√ℓ"))?;
            eigen_checks += 1;
        }
    }
    Ok(format!("{} levels, dim = 2g, {eigen_checks} charpolys within 2√ℓ", levels.len()))
}

fn criterion_7() -> Outcome {
    let dir = std::env::temp_dir().join(format!("isozeta-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let manifest = dir.join("grid.json");
    let jobs: Vec<serde_json::Value> = grid()
        .iter()
        .map(|&(p, q, n)| serde_json::json!({"p": p, "q": q, "N": n}))
        .collect();
    std::fs::write(&manifest, serde_json::json!({ "jobs": jobs }).to_string()).map_err(|e| e.to_string())?;
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_isozeta"))
            .args(["sweep", "--manifest"])
            .arg(&manifest)
            .args(["--jobs", threads])
            .env_remove("ISOZETA_SEED")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("--jobs {threads}: exit {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let one = run("1")?;
    let eight = run("8")?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(one == eight, || "reports differ between --jobs 1 and --jobs 8".into())?;
    Ok(format!("sweep reports byte-identical ({} bytes)", one.len()))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("supersingular enumeration", criterion_1, 10),
        ("graph shape", criterion_2, 120),
        ("worked 1-vertex case", criterion_3, 1),
        ("level-37 cross-pipeline check", criterion_4, 30),
        ("zeta identity over the grid", criterion_5, 1800),
        ("Eichler-Shimura self-consistency", criterion_6, 60),
        ("determinism across --jobs", criterion_7, 3600),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(detail) if secs > *budget as f64 => Err(format!("{detail}; over the {budget} s budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
