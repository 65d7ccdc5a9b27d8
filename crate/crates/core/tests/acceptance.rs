//! Acceptance criteria A1-A9. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line.

mod common;

use std::collections::BTreeMap;
use std::io::Write;

use loopsplit::cli;
use loopsplit::loops::{self, loop_of, product, smash, sphere, wedge, HomotopyExpr};
use loopsplit::manifold::{self, BundleData, SphereBundle};
use loopsplit::pitables::{pi_manifold, SphereTable};
use loopsplit::rational::{self, quadratic, sullivan, Coformality};
use loopsplit::series::{pbw_expand, pbw_invert, GradedLieDims, Rational, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn d1() -> SphereBundle {
    SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap()
}

fn over_s4(p1: i64) -> SphereBundle {
    SphereBundle::from_classes(vec![], &[], p1).unwrap()
}

fn random_pool(seed: u64, ds: &[usize], per_d: usize) -> Vec<SphereBundle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ds.iter()
        .flat_map(|&d| (0..per_d).map(move |_| d))
        .map(|d| common::random_bundle(&mut rng, d, 10))
        .collect()
}

fn a1() -> Check {
    let got = loops::decompose(&d1()).map_err(|e| e.to_string())?.expr.to_string();
    ensure!(got == "S^1 x Loop(S^2) x Loop(S^5)", "d=1 gave {got}");
    let s2s3 = || loop_of(product(vec![sphere(2), sphere(3)]));
    for sb in random_pool(1, &[2, 3, 4, 5, 6], 4) {
        let d = sb.d();
        let expr = loops::decompose(&sb).map_err(|e| e.to_string())?.expr;
        let mut factors = vec![HomotopyExpr::Circle, loop_of(sphere(2)), s2s3()];
        if d >= 3 {
            let j = wedge((0..d - 2).flat_map(|_| [sphere(2), sphere(3)]).collect());
            factors.push(loop_of(wedge(vec![
                j.clone(),
                smash(vec![j, loop_of(product(vec![sphere(2), sphere(3)]))]),
            ])));
        }
        let expected = product(factors).normalize();
        ensure!(expr == expected, "d={d}: {expr} != {expected}");
        if d == 2 {
            ensure!(expr.to_string() == "S^1 x Loop(S^2) x Loop(S^2 x S^3)", "d=2 gave {expr}");
        }
    }
    Ok("d=1 golden; 20 random bundles with d in 2..=6 match the structural form".into())
}

fn a2() -> Check {
    let anchor = TruncatedSeries::from_ints([1, -1], 12).mul(&TruncatedSeries::from_ints([1, -3, 1], 12));
    ensure!(
        anchor == TruncatedSeries::from_ints([1, -4, 4, -1], 12),
        "(1-t)(1-3t+t^2) expanded to {anchor}"
    );
    let mut count = 0;
    for sb in random_pool(2, &[2, 3, 4, 5, 6], 3) {
        let d = sb.d() as i64;
        let expr = loops::decompose(&sb).map_err(|e| e.to_string())?.expr;
        let lhs = loops::loop_homology_series(&expr, 12).map_err(|e| e.to_string())?;
        let p = quadratic::quadratic_presentation(&sb.ring()).map_err(|e| e.to_string())?;
        let hilbert = quadratic::hilbert_series(&p, 12);
        ensure!(
            hilbert == TruncatedSeries::from_ints([1, d + 1, d + 1, 1], 12),
            "d={d}: Hilbert series {hilbert}"
        );
        let rhs = hilbert.at_neg().reciprocal().map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "d={d}: {lhs} != {rhs}");
        if d == 3 {
            ensure!(
                lhs.truncate(4) == TruncatedSeries::from_ints([1, 4, 12, 33, 88], 4),
                "d=3 anchor: {lhs}"
            );
        }
        count += 1;
    }
    Ok(format!("{count} bundles, d in 2..=6, equal through degree 12; d=3 anchor 1, 4, 12, 33, 88"))
}

fn a3() -> Check {
    let mut count = 0;
    for sb in random_pool(3, &[2, 3, 4, 5, 6], 3) {
        let p = quadratic::quadratic_presentation(&sb.ring()).map_err(|e| e.to_string())?;
        let lie = rational::lie_dims(&p, 10, false).map_err(|e| e.to_string())?;
        let factors = loops::loop_factors(&sb, 10).map_err(|e| e.to_string())?;
        let ranks = rational::ranks_from_decomposition(&factors, 10).map_err(|e| e.to_string())?;
        ensure!(lie == ranks, "d={}: {:?} != {:?}", sb.d(), lie.as_slice(), ranks.as_slice());
        count += 1;
    }
    Ok(format!("{count} bundles, d in 2..=6, equal through degree 10"))
}

fn a4() -> Check {
    let sb = d1();
    let p = quadratic::QuadraticPresentation::from_ring_unchecked(&sb.ring());
    let naive = quadratic::naive_dual_series(&p, 8);
    ensure!(
        naive.truncate(3) == TruncatedSeries::from_ints([1, 2, 2, 1], 3),
        "naive dual series {naive}"
    );
    let expr = loops::decompose(&sb).map_err(|e| e.to_string())?.expr;
    let actual = loops::loop_homology_series(&expr, 8).map_err(|e| e.to_string())?;
    let first = (0..=8).find(|&n| naive.coeff(n) != actual.coeff(n));
    ensure!(first == Some(3), "first disagreement at {first:?}");
    ensure!(
        *naive.coeff(3) == Rational::from_integer(1.into()) && *actual.coeff(3) == Rational::from_integer(2.into()),
        "degree 3: {} vs {}",
        naive.coeff(3),
        actual.coeff(3)
    );
    let check = rational::coformality_check(&sb, 8).map_err(|e| e.to_string())?;
    ensure!(check.verdict == Coformality::NotCoformal, "verdict {:?}", check.verdict);
    ensure!(check.witness == "dx=c^3", "witness {}", check.witness);
    for k in [-3, 0, 1, 7] {
        let m = sullivan::d1_total_space(Rational::from_integer(k.into()));
        let h = rational::cdga_cohomology(&m, 6).map_err(|e| e.to_string())?;
        ensure!(h == vec![1, 0, 2, 0, 2, 0, 1], "k={k}: cohomology {h:?}");
    }
    Ok("first mismatch at degree 3 (1 vs 2); not coformal, witness dx=c^3; model cohomology 1,0,2,0,2,0,1".into())
}

fn a5() -> Check {
    let table = SphereTable::default_table();
    let sb = over_s4(60);
    ensure!(manifold::d0_cell_structure(&sb).map_err(|e| e.to_string())?.k == 15, "k != 15");
    let expr = loops::decompose(&sb).map_err(|e| e.to_string())?.expr;
    ensure!(expr.to_string() == "S^1 x S^3{3} x S^3{5} x Loop(S^7)", "k=15: {expr}");
    let factors = loops::loop_factors(&sb, 4).map_err(|e| e.to_string())?;
    let pi3 = pi_manifold(&factors, &table, 3).map_err(|e| e.to_string())?;
    ensure!(pi3.to_string() == "Z/15", "pi_3 = {pi3}");
    let expr = loops::decompose(&over_s4(32)).map_err(|e| e.to_string())?.expr;
    ensure!(expr.to_string() == "S^1 x S^3{8} x Loop(S^7)", "k=8: {expr}");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (k, reason) in [(6, loops::REASON_MIXED), (2, loops::REASON_K2), (4, loops::REASON_K4)] {
        let path = dir.path().join(format!("k{k}.json"));
        std::fs::write(&path, format!(r#"{{"intersection_form": [], "p1": {}}}"#, 4 * k)).unwrap();
        let (code, out) = cli::run(["loopsplit", "decompose", path.to_str().unwrap()]);
        ensure!(code == 3, "k={k}: exit {code}");
        ensure!(out.contains(reason), "k={k}: output {out:?} lacks the reason");
    }
    ensure!(loops::REASON_MIXED.contains("much more difficult"), "reason string");
    Ok("k=15 and k=8 goldens, pi_3 = Z/15; k = 6, 2, 4 exit 3 with reasons".into())
}

fn a6() -> Check {
    let table = SphereTable::default_table();
    let factors = loops::loop_factors(&d1(), 8).map_err(|e| e.to_string())?;
    let pi6 = pi_manifold(&factors, &table, 6).map_err(|e| e.to_string())?;
    ensure!(pi6.to_string() == "Z/12 + Z/2", "pi_6 = {pi6}");
    let pi3 = pi_manifold(&factors, &table, 3).map_err(|e| e.to_string())?;
    ensure!(pi3.to_string() == "Z", "pi_3 = {pi3}");
    for sb in random_pool(6, &[1, 2, 3, 4, 5, 6], 2) {
        let f = loops::loop_factors(&sb, 4).map_err(|e| e.to_string())?;
        let pi2 = pi_manifold(&f, &table, 2).map_err(|e| e.to_string())?;
        let betti2 = sb.ring().betti()[1] as u32;
        ensure!(
            pi2.torsion.is_empty() && pi2.free_rank == sb.d() as u32 + 1 && pi2.free_rank == betti2,
            "d={}: pi_2 = {pi2}",
            sb.d()
        );
    }
    Ok("d=1: pi_6 = Z/12 + Z/2; pi_2 = Z^(d+1) = H_2 for d in 1..=6".into())
}

fn a7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let d = rng.gen_range(0..=5);
        let sb = common::random_bundle(&mut rng, d, 10);
        let q = sb.base.form();
        ensure!(q.iter().flatten().all(|x| x.abs() <= 10), "entry bound");
        let ring = sb.ring();
        ensure!(ring.is_associative(), "trial {trial}: not associative");
        ensure!(ring.is_graded_commutative(), "trial {trial}: not commutative");
        let det = ring.pairing_determinant();
        let det_q = Rational::from_integer(sb.base.det().into());
        ensure!(det == det_q || det == -det_q.clone(), "trial {trial}: pairing det {det} vs {det_q}");
        ensure!(sb.base.det().abs() == 1, "det Q = {det_q}");
        if d == 0 {
            continue;
        }
        // another lift of w2
        let alpha: Vec<i64> = sb.bundle.alpha.iter().map(|a| a + 2 * rng.gen_range(-1..=1)).collect();
        let other = BundleData::with_lift(&sb.base, &sb.bundle.w2, sb.bundle.p1, alpha).map_err(|e| e.to_string())?;
        let ring2 = SphereBundle::new(sb.base.clone(), other).ring();
        ensure!(ring2.betti() == ring.betti(), "Betti numbers changed with the lift");
        let h1 = quadratic::hilbert_series(&quadratic::QuadraticPresentation::from_ring_unchecked(&ring), 6);
        let h2 = quadratic::hilbert_series(&quadratic::QuadraticPresentation::from_ring_unchecked(&ring2), 6);
        ensure!(h1 == h2, "trial {trial}: Hilbert series {h1} vs {h2} under change of lift");
    }
    Ok("200 random bundles (d <= 5, |entries| <= 10): associative, commutative, pairing det = +-det Q, lift-invariant".into())
}

fn a8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let dims: Vec<u64> = (0..14).map(|_| rng.gen_range(0..4)).collect();
        let dims = GradedLieDims::from_degrees(dims);
        let back = pbw_invert(&pbw_expand(&dims)).map_err(|e| e.to_string())?;
        ensure!(back == dims, "round trip {:?} -> {:?}", dims.as_slice(), back.as_slice());
    }
    // Omega(S^2 v S^3): the multidegree (3,1) contributes a second Omega S^6
    let hm = loops::hilton_milnor(&BTreeMap::from([(2, 1), (3, 1)]), 5);
    let mults: Vec<u64> = (2..=6).map(|n| hm.multiplicity(n)).collect();
    ensure!(mults == vec![1, 1, 1, 1, 2], "Hilton-Milnor multiplicities {mults:?}");
    let expected = TruncatedSeries::from_ints([1, -1, -1], 5).reciprocal().unwrap();
    let mut from_factors = TruncatedSeries::one(5);
    for (&n, &m) in &hm.sphere_loops {
        let e = product((0..m).map(|_| loop_of(sphere(n))).collect());
        from_factors = from_factors.mul(&loops::loop_homology_series(&e, 5).map_err(|e| e.to_string())?);
    }
    ensure!(from_factors == expected, "factor series {from_factors} vs 1/(1-t-t^2) = {expected}");
    let free = rational::free_graded_lie_dims(&[1, 1], 8).map_err(|e| e.to_string())?;
    for n in 1..=8 {
        let oracle = common::graded_free_lie_oracle(2, n);
        ensure!(free.get(n) == oracle, "degree {n}: {} vs Lyndon count {oracle}", free.get(n));
    }
    Ok("100 PBW round trips; Hilton-Milnor on S^2 v S^3 gives Omega S^2..S^5 x1, Omega S^6 x2; free Lie {1,1} = Lyndon oracle through degree 8".into())
}

fn a9() -> Check {
    let pool = random_pool(9, &[1, 2, 3, 4], 3);
    let pool = &pool[..10];
    let mut pairs = 0;
    for a in pool {
        for b in pool {
            let rigid = manifold::loop_rigidity_equivalent(a, b).map_err(|e| e.to_string())?;
            let ea = loops::decompose(a).map_err(|e| e.to_string())?.expr;
            let eb = loops::decompose(b).map_err(|e| e.to_string())?.expr;
            ensure!(rigid == (ea == eb), "d={} vs d={}: rigidity {rigid}", a.d(), b.d());
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs from 10 bundles with d in 1..=4"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
    ];
    let mut failed = 0;
    let stdout = std::io::stdout();
    for (name, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let mut out = stdout.lock();
        match outcome {
            Ok(detail) => writeln!(out, "{name} PASS  ({secs:.1}s) {detail}").unwrap(),
            Err(detail) => {
                failed += 1;
                writeln!(out, "{name} FAIL  ({secs:.1}s) {detail}").unwrap();
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
