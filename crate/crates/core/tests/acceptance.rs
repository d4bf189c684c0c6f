//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use magicstar_core::{epsilon, jacobi, props, star};
use magicstar_core::{AlgebraId, Family, MagicStarAlgebra, Mode, RootSystem, SimpleBasis, VerifyReport};

const EXCEPTIONAL: [Family; 3] = [Family::E6, Family::E7, Family::E8];

type Check = Result<String, String>;

fn id(f: Family, n: u32) -> AlgebraId {
    AlgebraId::new(f, n).unwrap()
}

fn sys(f: Family, n: u32) -> RootSystem {
    RootSystem::generate(id(f, n)).unwrap()
}

fn alg(f: Family, n: u32) -> MagicStarAlgebra {
    MagicStarAlgebra::new(id(f, n)).unwrap()
}

/// Fails with the first failure line of `r`.
fn ok(r: &VerifyReport) -> Result<(), String> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!("{} {}: {} ({})", r.suite, r.algebra.map(|a| a.to_string()).unwrap_or_default(), f.check, f.witness)),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {t:?}, limit {limit:?}"))
    }
}

fn baselines() -> Check {
    let start = Instant::now();
    let expected = [(Family::E8, 240), (Family::E7, 126), (Family::E6, 72), (Family::F4, 48), (Family::G2, 12)];
    for (f, count) in expected {
        let got = sys(f, 1).len();
        if got != count {
            return Err(format!("{f}: {got} roots, expected {count}"));
        }
    }
    within(start, Duration::from_secs(1), "generation")?;
    Ok("240/126/72/48/12".into())
}

fn lie_at_level_one() -> Check {
    let start = Instant::now();
    let mut dims = Vec::new();
    let mut checks = 0;
    for f in EXCEPTIONAL {
        let a = alg(f, 1);
        let r = jacobi::check_full_jacobi(&a);
        ok(&r)?;
        dims.push(a.dim().to_string());
        checks += r.checks;
    }
    if dims != ["78", "133", "248"] {
        return Err(format!("dimensions {dims:?}"));
    }
    within(start, Duration::from_secs(300), "full Jacobi")?;
    Ok(format!("dims {}, {checks} ordered triples", dims.join("/")))
}

fn tables() -> Check {
    for n in 1..=4 {
        for f in Family::ALL {
            let s = sys(f, n);
            ok(&star::verify_tables(&s))?;
        }
    }
    let e8 = sys(Family::E8, 2).len();
    if e8 != 2312 {
        return Err(format!("e8 n=2 has {e8} roots"));
    }
    Ok("all families, n = 1..4; e8 n=2 total 2312".into())
}

fn weyl() -> Check {
    let mut witnesses = Vec::new();
    for n in 1..=4 {
        for f in Family::ALL {
            let mode = if n <= 2 { Mode::Exhaustive } else { Mode::Sampled { samples: 100_000, seed: 1 } };
            let s = sys(f, n);
            ok(&props::check_weyl(&s, mode))?;
            if n >= 2 && EXCEPTIONAL.contains(&f) {
                let w = props::weyl_witness(&s).ok_or_else(|| format!("{f} n={n}: no escaping spinor reflection"))?;
                // every root has coordinates of size at most 1
                if w.max_coordinate() <= num_rational::Rational64::from_integer(1) {
                    return Err(format!("{f} n={n}: witness image stays bounded"));
                }
                if f == Family::E8 {
                    witnesses.push(format!("n={n}: s_{}(x_{}) max|coord| {}", w.rho, w.x, w.max_coordinate()));
                }
            }
        }
    }
    Ok(witnesses.join("; "))
}

fn simple_roots() -> Check {
    for f in EXCEPTIONAL {
        for n in 1..=3 {
            let mode = if n <= 2 { Mode::Exhaustive } else { Mode::Sampled { samples: 1_000_000, seed: 3 } };
            let s = sys(f, n);
            ok(&props::check_simple(&s, &SimpleBasis::new(s.id()).unwrap(), mode))?;
        }
    }
    Ok("exhaustive n ≤ 2, 10^6 samples at n = 3".into())
}

fn sums() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 1..=2 {
        for f in EXCEPTIONAL {
            let r = props::check_sums(&sys(f, n), Mode::Exhaustive);
            ok(&r)?;
            if f == Family::E8 && n == 2 {
                pairs = r.checks;
            }
        }
    }
    within(start, Duration::from_secs(60), "sum criteria")?;
    Ok(format!("e8 n=2: {pairs} checks"))
}

fn asymmetry() -> Check {
    let mut total = 0;
    for n in 1..=2 {
        for f in EXCEPTIONAL {
            let a = alg(f, n);
            let r = epsilon::check_sign_properties(&a, Mode::Exhaustive, 100_000, 5);
            ok(&r)?;
            let r2 = epsilon::check_root_sign_identities(&a, Mode::Exhaustive);
            ok(&r2)?;
            total += r.checks + r2.checks;
        }
    }
    Ok(format!("{total} checks, 10^5 lattice triples per algebra"))
}

fn derivations() -> Check {
    let a = alg(Family::E8, 2);
    let r = jacobi::check_derivations(&a, Mode::Exhaustive);
    ok(&r)?;
    let spin = a.system().spinorial_range();
    if spin.len() != 2048 {
        return Err(format!("{} spinorial roots", spin.len()));
    }
    for s in spin {
        let w = a.jacobi_witness(s, jacobi::WITNESS_INDICES).map_err(|e| e.to_string())?;
        if !w.is_expected() {
            return Err(format!("spinor {s}: J = {}", w.value));
        }
    }
    for f in [Family::E6, Family::E7] {
        ok(&jacobi::check_derivations(&alg(f, 2), Mode::Exhaustive))?;
    }
    Ok("orthogonal generators derive at n=2; 2048/2048 spinor witnesses give ±x_{α+β+γ}".into())
}

fn two_sums() -> Check {
    for n in 1..=2 {
        for f in EXCEPTIONAL {
            ok(&jacobi::check_two_sums(&alg(f, n), Mode::Exhaustive))?;
        }
    }
    Ok("e6/e7/e8 at n = 1, 2".into())
}

fn nested() -> Check {
    for n in 1..=3 {
        ok(&star::verify_nested_star(n).map_err(|e| e.to_string())?)?;
        ok(&star::verify_e7_decomposition(n).map_err(|e| e.to_string())?)?;
    }
    Ok("n = 1..3, three (r,s) choices".into())
}

fn gradings() -> Check {
    for n in 1..=4 {
        for f in EXCEPTIONAL {
            let mode = if n <= 2 { Mode::Exhaustive } else { Mode::Sampled { samples: 100_000, seed: 11 } };
            ok(&star::check_gradings(&sys(f, n), mode))?;
        }
    }
    Ok("sizes n = 1..4, additivity exhaustive n ≤ 2".into())
}

fn outputs(threads: usize) -> (String, String, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let s = sys(Family::E8, 2);
        let sc = alg(Family::E8, 2).structure_constants().to_text();
        let svg = star::star_svg("e8", &star::project_axes(&s, star::Axes::K123).unwrap());
        (s.to_tsv(), sc, svg)
    })
}

fn determinism() -> Check {
    let a = outputs(1);
    let b = outputs(1);
    let c = outputs(4);
    if a != b {
        return Err("two single-threaded runs differ".into());
    }
    if a != c {
        return Err("1-thread and 4-thread outputs differ".into());
    }
    Ok("root TSV, structure constants and SVG identical at 1 and 4 threads".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("n=1 baselines", baselines),
        ("n=1 Lie check", lie_at_level_one),
        ("table verification", tables),
        ("Weyl closure and spinor escape", weyl),
        ("simple-root decomposition", simple_roots),
        ("sum and difference criteria", sums),
        ("asymmetry properties", asymmetry),
        ("derivations", derivations),
        ("two-sum identity", two_sums),
        ("nested star and e7 decomposition", nested),
        ("gradings", gradings),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({t:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.1}s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
