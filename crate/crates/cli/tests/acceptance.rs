//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cmorbit_cli::{dispatch, RunConfig};
use cmorbit_core::arith::{lambda_const, min_faithful_char_count, weight};
use cmorbit_core::classical::{class_number_iq, reduced_form_count, shyr_consistency, FundamentalDiscriminant};
use cmorbit_core::cmgroup::{dodson_decompose, normalize_cm_type, CmType, SignVector};
use cmorbit_core::localinv::{
    block_diagonal, cyclotomic_companion, h1_cyclic, h1_general, matrix_order, tame_conductor_check, LatticeAction,
};
use cmorbit_core::reciprocity::{
    analyze_datum, cochar_left_action, enumerate_cm_data, kernel_component_group, make_family, Family,
};
use cmorbit_core::IntegerMatrix;
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Id, title, check and runtime limit in seconds.
type Criterion = (&'static str, &'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Weight by trial division, independent of the library factorizer.
fn naive_weight(n: u64) -> u64 {
    let (mut m, mut p, mut total, mut two_exact) = (n, 2u64, 0u64, false);
    while m > 1 {
        if m % p == 0 {
            let mut pk = 1;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                pk *= p;
                k += 1;
            }
            total += pk - pk / p;
            if p == 2 && k == 1 {
                two_exact = true;
            }
        }
        p += 1;
    }
    total - u64::from(two_exact && n != 2)
}

/// `λ(s)` by brute force: every `n` of weight `≤ s` is built from prime
/// powers with `φ(p^k) ≤ s + 1`, hence is at most their product.
fn naive_lambda(s: u64) -> Ratio<u64> {
    let mut bound = 1u64;
    for p in 2..=2 * s + 3 {
        if (2..p).all(|q| p % q != 0) {
            let mut pk = 1;
            while (pk * p) - pk <= s + 1 {
                pk *= p;
            }
            bound *= pk;
        }
    }
    let psi = (2..=bound).rev().find(|&n| naive_weight(n) <= s).unwrap();
    (2..=psi).map(|n| Ratio::new(naive_weight(n), n - 1)).min().unwrap()
}

fn ac1() -> Check {
    let l = |s| lambda_const(s).map(|x| x.ratio()).map_err(err);
    for (s, num, den) in [(1, 1, 1), (2, 2, 5), (3, 2, 5), (4, 4, 11), (5, 4, 11)] {
        ensure(l(s)? == Ratio::new(num, den), || format!("lambda({s}) = {}", l(s).unwrap()))?;
    }
    ensure(l(6)? == l(7)?, || "lambda(6) != lambda(7)".into())?;
    for s in 1..=10 {
        ensure(l(s as u32)? == naive_lambda(s), || format!("lambda({s}) differs from the naive oracle"))?;
    }
    for k in 1..=15 {
        ensure(l(2 * k)? == l(2 * k + 1)?, || format!("lambda({}) != lambda({})", 2 * k, 2 * k + 1))?;
    }
    Ok(format!("lambda(6) = lambda(7) = {}", l(6)?))
}

fn ac2() -> Check {
    let mut violations = 0;
    for n in 2..=300u64 {
        if min_faithful_char_count(n).map_err(err)? < weight(n).map_err(err)?.weight {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("0 violations for 2 <= n <= 300".into())
}

fn ac3() -> Check {
    let mut counts = Vec::new();
    for g in 1..=3 {
        let data = enumerate_cm_data(g).map_err(err)?;
        for d in &data {
            let r = analyze_datum(&d.group, &d.cm_type).map_err(err)?;
            ensure(r.connected, || format!("g = {g}, order {}: factors {:?}", r.order, r.invariant_factors))?;
            if g == 3 {
                ensure(r.v != 2, || "g = 3 datum with v = 2".into())?;
                ensure(((1u64 << r.v) - 2).is_multiple_of(3), || format!("3 does not divide 2^{} - 2", r.v))?;
            }
        }
        counts.push(data.len());
    }
    Ok(format!("data counts g=1..3: {counts:?}, all connected"))
}

fn ac4() -> Check {
    let mut checked = 0;
    for g in 1..=4 {
        for d in enumerate_cm_data(g).map_err(err)? {
            let r = analyze_datum(&d.group, &d.cm_type).map_err(err)?;
            if r.v as usize == g {
                ensure(r.full_lattice, || format!("g = {g}, order {} not full", r.order))?;
                checked += 1;
            }
        }
    }
    for g in 1..=6 {
        let (c, t) = make_family(Family::FullCg { g }).map_err(err)?;
        let k = kernel_component_group(&c, &t).map_err(err)?;
        ensure(k.full_lattice && k.rank_l_mu == g + 1, || format!("full_cg({g}) not full"))?;
        checked += 1;
    }
    Ok(format!("{checked} data with v = g, all full"))
}

fn ac5() -> Check {
    let factors = |f| -> Result<(Vec<BigInt>, usize), String> {
        let (c, t) = make_family(f).map_err(err)?;
        let k = kernel_component_group(&c, &t).map_err(err)?;
        Ok((k.invariant_factors, k.rank_l_mu))
    };
    ensure(factors(Family::KleinG4)?.0 == vec![BigInt::from(2)], || "klein_g4 is not [2]".into())?;
    let (f3, r3) = factors(Family::Cyclic2p { p: 3 })?;
    ensure(f3.is_empty() && r3 == 4, || format!("cyclic_2p(3): {f3:?}, rank {r3}"))?;
    for p in [5u32, 7, 11, 13] {
        let (f, r) = factors(Family::Cyclic2p { p })?;
        ensure(f == vec![BigInt::from(p - 2)] && r == p as usize + 1, || format!("cyclic_2p({p}): {f:?}, rank {r}"))?;
    }
    Ok("klein_g4 -> [2]; cyclic_2p(p) -> [p-2], rank p+1".into())
}

fn ac6() -> Check {
    let mut checked = 0;
    for g in 1..=4 {
        for d in enumerate_cm_data(g).map_err(err)? {
            for b in 0..1u32 << g {
                let t = CmType::from_flip(g, SignVector(b));
                // Orbit of the set Σ under the group, counted directly.
                let orbit: BTreeSet<Vec<i32>> =
                    d.group.elements().iter().map(|x| t.image(x).points().to_vec()).collect();
                let norm = normalize_cm_type(&d.group, &t);
                let dd = dodson_decompose(&norm.group).map_err(err)?;
                let fg_sigma = dd.fg_sigma().len();
                ensure(dd.g0_order() % fg_sigma == 0, || "Fg_Sigma order does not divide |Fg0|".into())?;
                let rhs = (1usize << dd.v) * dd.g0_order() / fg_sigma;
                ensure(orbit.len() == rhs, || {
                    format!("g = {g}: 2g' = {} but 2^v [Fg0:Fg_Sigma] = {rhs}", orbit.len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("identity holds for {checked} (group, CM type) pairs"))
}

fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(d);
    let mut q = IntegerMatrix::identity(d);
    for _ in 0..rng.gen_range(0..8) {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i == j {
            continue;
        }
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntegerMatrix::identity(d);
        e.set(i, j, BigInt::from(s));
        let mut e_inv = IntegerMatrix::identity(d);
        e_inv.set(i, j, BigInt::from(-s));
        p = &p * &e;
        q = &e_inv * &q;
    }
    (p, q)
}

/// Random faithful cyclic action from cyclotomic and sign blocks, conjugated
/// by a random unimodular matrix.
fn random_cyclic(rng: &mut ChaCha8Rng, max_dim: usize, max_order: usize) -> IntegerMatrix {
    loop {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for _ in 0..rng.gen_range(1..=3) {
            let c = cyclotomic_companion(rng.gen_range(1..=12));
            if dim + c.rows() <= max_dim {
                dim += c.rows();
                blocks.push(c);
            }
        }
        if blocks.is_empty() {
            continue;
        }
        let sigma = block_diagonal(&blocks);
        if matrix_order(&sigma).unwrap() > max_order || sigma.is_identity() {
            continue;
        }
        let (p, q) = random_unimodular(rng, dim);
        return &(&q * &sigma) * &p;
    }
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    for i in 0..50 {
        let sigma = random_cyclic(&mut rng, 6, 12);
        let a = h1_cyclic(&sigma).map_err(err)?;
        let b = h1_general(&LatticeAction::cyclic(&sigma).map_err(err)?).map_err(err)?;
        ensure(a == b, || format!("case {i}: cyclic {a} vs cochains {b}\n{sigma}"))?;
    }
    let neg = IntegerMatrix::from_i64(1, 1, &[-1]).unwrap();
    let h = h1_general(&LatticeAction::cyclic(&neg).map_err(err)?).map_err(err)?;
    ensure(h.factors() == [BigInt::from(2)], || format!("H1(+-1, Z) = {h}"))?;
    for i in 0..20 {
        let sigma = random_cyclic(&mut rng, 6, 12);
        let (p, q) = random_unimodular(&mut rng, sigma.rows());
        let base = h1_general(&LatticeAction::cyclic(&sigma).map_err(err)?).map_err(err)?;
        let moved = LatticeAction::cyclic(&sigma).map_err(err)?.conjugate(&p, &q).map_err(err)?;
        let h = h1_general(&moved).map_err(err)?;
        ensure(h.torsion_order() == base.torsion_order() && h == base, || format!("conjugate {i}: {h} vs {base}"))?;
    }
    Ok("50 cyclic cases agree; H1(+-1, Z) = Z/2; 20 conjugates invariant".into())
}

fn ac8() -> Check {
    for (d, h) in [(-4, 1), (-15, 2), (-23, 3), (-163, 1)] {
        let fd = FundamentalDiscriminant::new(d).map_err(err)?;
        ensure(class_number_iq(fd, 50).map_err(err)? == h, || format!("h({d}) != {h}"))?;
    }
    let mut count = 0;
    for d in -10_000i64..0 {
        let Ok(fd) = FundamentalDiscriminant::new(d) else { continue };
        let rep = shyr_consistency(fd, 50).map_err(err)?;
        ensure(rep.h_dirichlet == reduced_form_count(fd), || format!("D = {d}: {} vs forms", rep.h_dirichlet))?;
        ensure(rep.consistent, || format!("D = {d}: class number formula inconsistent"))?;
        count += 1;
    }
    Ok(format!("{count} fundamental discriminants, both routes and the torus formula agree"))
}

fn ac9() -> Check {
    let mut checked = 0;
    for d in enumerate_cm_data(3).map_err(err)? {
        for x in d.group.elements() {
            if x.is_identity() {
                continue;
            }
            let sigma = cochar_left_action(x);
            let e = x.order();
            ensure(matrix_order(&sigma).map_err(err)? == e, || format!("{x:?} does not act faithfully"))?;
            let rep = tame_conductor_check(&sigma, e).map_err(err)?;
            ensure(rep.holds, || format!("{x:?}: a = {} < {}", rep.conductor, rep.bound))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for i in 0..50 {
        let sigma = random_cyclic(&mut rng, 6, 60);
        let e = matrix_order(&sigma).map_err(err)?;
        let rep = tame_conductor_check(&sigma, e).map_err(err)?;
        ensure(rep.holds, || format!("random case {i}: a = {} < {}", rep.conductor, rep.bound))?;
        checked += 1;
    }
    Ok(format!("{checked} cyclic actions, zero violations"))
}

fn ac10() -> Check {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let group = dir.join("acceptance_group.json");
    let action = dir.join("acceptance_action.json");
    std::fs::write(&group, r#"{"g": 3, "generators": [[-1, -2, -3], [2, 3, -1]], "cm_type": [1, -2, 3]}"#)
        .map_err(err)?;
    std::fs::write(&action, r#"{"dim": 2, "generators": [[0, -1, 1, -1], [-1, 0, 0, -1]]}"#).map_err(err)?;
    let (g, a) = (group.display().to_string(), action.display().to_string());
    let runs: Vec<Vec<&str>> = vec![
        vec!["lambda", "--max-s", "9"],
        vec!["cm", "enumerate", "-g", "3"],
        vec!["cm", "enumerate", "-g", "4"],
        vec!["cm", "analyze", "--input", &g],
        vec!["reciprocity", "family", "--cyclic-2p", "7"],
        vec!["reciprocity", "family", "--klein-g4"],
        vec!["cohomology", "h1", "--input", &a],
        vec!["cohomology", "h2", "--input", &a],
        vec!["classical", "shyr", "-D", "-163"],
        vec!["bound", "--d", "2", "--DL", "1000", "--eps", "1/100", "--iT", "2", "--B", "3/2"],
        vec!["quasidisc", "--dim", "2", "--aT", "4", "--a", "0", "--b", "1", "--c", "0"],
    ];
    for run in &runs {
        let outputs: Vec<String> = ["1", "4", "1"]
            .iter()
            .map(|jobs| {
                let mut argv =
                    vec!["cmorbit".to_string(), "--jobs".into(), jobs.to_string(), "--output".into(), "json".into()];
                argv.extend(run.iter().map(|s| s.to_string()));
                let out = dispatch(&argv, Some(RunConfig::default()));
                if out.code == 0 {
                    Ok(out.stdout)
                } else {
                    Err(format!("{run:?} exited {}: {}", out.code, out.stderr))
                }
            })
            .collect::<Result<_, _>>()?;
        ensure(outputs.iter().all(|o| *o == outputs[0]), || format!("{run:?} output differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across 3 runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "lambda table regression", ac1, 10),
        ("AC2", "faithful character count vs weight", ac2, 30),
        ("AC3", "connected kernels for g <= 3", ac3, 300),
        ("AC4", "v = g gives the full lattice", ac4, 120),
        ("AC5", "named family regressions", ac5, 60),
        ("AC6", "reflex degree identity", ac6, 300),
        ("AC7", "cohomology oracle equivalence", ac7, 120),
        ("AC8", "classical class numbers end to end", ac8, 120),
        ("AC9", "tame conductor inequality", ac9, 60),
        ("AC10", "deterministic JSON output", ac10, 120),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(limit) => Err(format!("{msg}; exceeded {limit}s")),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(msg) => ("PASS", msg.clone()),
            Err(msg) => ("FAIL", msg.clone()),
        };
        if result.is_err() {
            failed += 1;
        }
        println!("[{tag}] {id:<5} {name:<38} {:>8.2}s (limit {limit}s)  {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
