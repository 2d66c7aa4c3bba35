//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test --test acceptance`.

use std::time::{Duration, Instant};

use cvghz::cli;
use cvghz::comb::{
    convergence_study, quadrature_check, weyl_expectation, CombParams, GaussianComb, Peak, ProductStateSum,
    QuadratureGrid,
};
use cvghz::oracle::{check_set, joint_eigenvector, represent, OracleConfig};
use cvghz::paradox::{canonical_form, lhv_value, LhvAssignment, SearchSpace};
use cvghz::{builtin, verify, LatticeParams, PartyExponent, RationalPhase, WeylWord};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("cvghz").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn exact_builtin(name: &str, n_ops: usize, n_parties: usize) -> Outcome {
    let start = Instant::now();
    let set = builtin(name).map_err(|e| e.to_string())?;
    let r = verify(&set).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let pairs = r.pairwise_phases.iter().flatten().filter(|p| p.is_zero()).count();
    check(pairs == n_ops * n_ops, format!("{pairs} of {} phases zero", n_ops * n_ops))?;
    check(r.column_sums.len() == n_parties, "wrong party count")?;
    check(r.column_sums.iter().all(|c| c.is_identity()), "nonzero column sum")?;
    check(r.product_phase == Some(RationalPhase::HALF), format!("product phase {:?}", r.product_phase))?;
    check(r.is_paradox, "not reported as a paradox")?;
    let (code, text) = run_cli(&["verify", "--set", name]);
    check(code == 0 && text.contains("1/2 turn (-1)"), format!("cli exit {code}"))?;
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("{} pairwise phases 0, column sums 0, product -I, {elapsed:?}", n_ops * (n_ops - 1) / 2))
}

fn lhv_contradiction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for name in ["v4", "w6"] {
        let set = builtin(name).unwrap();
        let r = verify(&set).unwrap();
        check(r.product_phase == Some(RationalPhase::HALF), format!("{name}: quantum product is not -I"))?;
        for _ in 0..100 {
            let n = set.n_parties();
            let a = LhvAssignment::new(
                (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect(),
                (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect(),
            );
            let v = lhv_value(&set, &a).map_err(|e| e.to_string())?;
            worst = worst.max((v - Complex64::new(1.0, 0.0)).norm());
        }
    }
    check(worst < 1e-12, format!("max |lhv - 1| = {worst:e}"))?;
    Ok(format!("200 assignments, max |lhv - 1| = {worst:.1e}, quantum -1"))
}

fn random_word(rng: &mut ChaCha8Rng, params: LatticeParams, n: usize) -> WeylWord {
    let exps: Vec<PartyExponent> =
        (0..n).map(|_| PartyExponent::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5))).collect();
    let phase = RationalPhase::new(rng.gen_range(0..24), 24);
    WeylWord::from_exponents(params, exps, phase)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for d in [2, 3, 4] {
        let params = LatticeParams::new(d).unwrap();
        for n in 1..=3 {
            for _ in 0..60 {
                let a = random_word(&mut rng, params, n);
                let b = random_word(&mut rng, params, n);
                let ab = represent(&a.multiply(&b).unwrap(), 4096).unwrap();
                let prod = represent(&a, 4096).unwrap().dot(&represent(&b, 4096).unwrap());
                worst = worst.max(ab.distance(&prod));
                pairs += 1;
            }
        }
    }
    check(pairs >= 500, format!("only {pairs} pairs"))?;
    check(worst < 1e-10, format!("homomorphism defect {worst:e}"))?;

    let mut timings = Vec::new();
    for (name, dim) in [("v4", 8), ("w6", 1024)] {
        let start = Instant::now();
        let r = check_set(&builtin(name).unwrap(), &OracleConfig::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(r.dimension == dim, format!("{name}: dimension {}", r.dimension))?;
        check(r.max_commutator_norm < 1e-10, format!("{name}: commutator {:e}", r.max_commutator_norm))?;
        check(r.agrees(1e-10), format!("{name}: numeric/symbolic mismatch"))?;
        check(r.product_deviation.is_some_and(|x| x < 1e-10), format!("{name}: product"))?;
        check(elapsed < Duration::from_secs(60), format!("{name}: took {elapsed:?}"))?;
        timings.push(format!("{name} {elapsed:.1?}"));
    }
    Ok(format!("{pairs} pairs, defect {worst:.1e}; {}", timings.join(", ")))
}

fn eigenvalue_product() -> Outcome {
    let je = joint_eigenvector(&builtin("v4").unwrap(), &OracleConfig::default()).map_err(|e| e.to_string())?;
    check(je.eigenvalues.len() == 4, "expected four eigenvalues")?;
    let modulus = je.eigenvalues.iter().map(|l| (l.norm() - 1.0).abs()).fold(0.0, f64::max);
    check(modulus < 1e-8, format!("modulus defect {modulus:e}"))?;
    let p = je.eigenvalue_product();
    let dev = (p + Complex64::new(1.0, 0.0)).norm();
    check(dev < 1e-8, format!("product {p}"))?;
    Ok(format!("product {:.12} ({dev:.1e} from -1), residual {:.1e}", p.re, je.residual))
}

fn search_rediscovery() -> Outcome {
    let start = Instant::now();
    let params = LatticeParams::new(2).unwrap();
    let outcome = SearchSpace::boxed(params, 3, 4, 1).and_then(|s| s.run()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let v4 = canonical_form(&builtin("v4").unwrap());
    check(outcome.sets.contains(&v4), "v4 class missing")?;
    check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("{} classes incl. v4, {elapsed:.1?}", outcome.sets.len()))
}

fn convergence() -> Outcome {
    let params = CombParams { width: 0.2, n_peaks: 20, envelope_width: 10.0 };
    let table = convergence_study(&[0.2, 0.1, 0.05], &params, &OracleConfig::default()).map_err(|e| e.to_string())?;
    let devs: Vec<f64> = table.rows.iter().map(|r| r.deviation).collect();
    check(table.is_monotone(), format!("not non-increasing: {devs:?}"))?;
    let last = table.final_deviation().unwrap_or(f64::INFINITY);
    check(last < 0.05, format!("final deviation {last}"))?;
    Ok(format!("deviations {:.4} / {:.4} / {:.4}", devs[0], devs[1], devs[2]))
}

fn quadrature_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for kind in ["X", "Y", "mixed"] {
        for _ in 0..8 {
            let d = rng.gen_range(2..=4);
            let width = rng.gen_range(0.1..0.3);
            let n_peaks = rng.gen_range(1..=5);
            let peaks = (0..n_peaks)
                .map(|_| Peak {
                    center: rng.gen_range(-3.0..3.0),
                    weight: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                })
                .collect();
            let state = ProductStateSum::new(vec![(
                Complex64::new(1.0, 0.0),
                vec![GaussianComb::new(peaks, width).map_err(|e| e.to_string())?],
            )])
            .map_err(|e| e.to_string())?;
            let mut k = || [-2, -1, 1, 2][rng.gen_range(0..4)];
            let (m, n) = match kind {
                "X" => (k(), 0),
                "Y" => (0, k()),
                _ => (k(), k()),
            };
            let word = WeylWord::from_exponents(
                LatticeParams::new(d).unwrap(),
                [PartyExponent::new(m, n)],
                RationalPhase::ZERO,
            );
            let closed = weyl_expectation(&state, &word).map_err(|e| e.to_string())?;
            let grid = QuadratureGrid::covering(&state, &word, 8);
            let numeric = quadrature_check(&state, &word, &grid).map_err(|e| e.to_string())?;
            worst = worst.max((closed - numeric).norm());
            cases += 1;
        }
    }
    check(cases >= 20, format!("only {cases} cases"))?;
    check(worst < 1e-8, format!("max deviation {worst:e}"))?;
    Ok(format!("{cases} cases (X, Y, mixed), max deviation {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact v4", || exact_builtin("v4", 4, 3)),
        ("exact w6", || exact_builtin("w6", 6, 5)),
        ("lhv contradiction", lhv_contradiction),
        ("oracle equivalence", oracle_equivalence),
        ("eigenvalue product", eigenvalue_product),
        ("search rediscovery", search_rediscovery),
        ("finite-width convergence", convergence),
        ("quadrature agreement", quadrature_agreement),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
