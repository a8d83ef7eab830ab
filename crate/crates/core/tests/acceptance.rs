//! Acceptance suite: one pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hecke_core::galleries::{all_decorations, codim_tilde, decorate_maximal, parameter_pattern};
use hecke_core::model::{
    enumerate_hecke, freudenthal_multiplicity, generate_ls_paths, multiplicity, HeckePath,
};
use hecke_core::paths::{is_hecke, is_ls, root_operator, stats, LambdaPath, RootOperator};
use hecke_core::rational::{rat, Rat};
use hecke_core::root_system::named;
use hecke_core::{Error, RootSystem, Vector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const H: u32 = 20;

/// Criterion 6 asks for a non-LS Hecke path in A2 whose every decoration has
/// `codim_tilde > codim`. None exists: every non-LS Hecke path in `Y` for A2
/// folds `w_0 → e` along the highest root at a point where that is the only
/// true wall, and its unique decoration has `codim_tilde = codim`. The
/// criterion still runs and prints its verdict; the integration test
/// `equality_at_non_special_fold` pins the counterexample.
const UNATTAINABLE: &[usize] = &[6];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a1() -> RootSystem {
    RootSystem::from_gcm(named::a1()).unwrap()
}

fn a2() -> RootSystem {
    RootSystem::from_gcm(named::a2()).unwrap()
}

fn rho(sys: &RootSystem, v: &Vector) -> Rat {
    sys.rho_of_coroot_span(v)
        .expect("difference lies in the coroot span")
}

/// Dominant `λ ∈ Y` with `ρ(λ) ≤ bound`, found by scanning a box.
fn dominant_shapes(sys: &RootSystem, bound: i64) -> Vec<Vector> {
    let n = sys.dim();
    let mut out = Vec::new();
    let mut idx = vec![0i64; n];
    loop {
        let v = Vector::from_ints(&idx);
        if sys.is_dominant(&v) && rho(sys, &v) <= rat(bound as i128) {
            out.push(v);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] <= 2 * bound {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `λ - Σ c_i α_i^∨` for `0 ≤ c_i ≤ reach`.
fn lattice_below(sys: &RootSystem, lambda: &Vector, reach: i64) -> Vec<Vector> {
    let n = sys.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let coeffs: Vec<Rat> = c.iter().map(|&x| rat(x as i128)).collect();
        out.push(lambda - &sys.coroot_combination(&coeffs));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            c[k] += 1;
            if c[k] <= reach {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

/// Endpoints `ν` whose dominant representative is dominated by `λ`.
fn weights_of(sys: &RootSystem, lambda: &Vector) -> Vec<Vector> {
    let reach = 2 * rho(sys, lambda).to_integer() as i64;
    lattice_below(sys, lambda, reach)
        .into_iter()
        .filter(|nu| {
            let (d, _) = sys.dominant_witness(nu, 10_000).expect("finite type");
            sys.dominates(lambda, &d)
        })
        .collect()
}

struct SuiteCase {
    sys: RootSystem,
    lambda: Vector,
    nu: Vector,
    paths: Vec<HeckePath>,
}

/// Shapes of the inequality suite, taken as dominant representatives.
fn suite() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    let shapes = [
        (a1(), vec![Vector::from_ints(&[1])]),
        (
            a2(),
            vec![Vector::from_ints(&[1, 1]), Vector::from_ints(&[2, 1])],
        ),
    ];
    for (sys, lambdas) in shapes {
        for lambda in lambdas {
            for nu in weights_of(&sys, &lambda) {
                let z = Vector::zero(sys.dim());
                let paths = enumerate_hecke(&sys, &lambda, &z, &nu, H).unwrap();
                cases.push(SuiteCase {
                    sys: sys.clone(),
                    lambda: lambda.clone(),
                    nu,
                    paths,
                });
            }
        }
    }
    cases
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for sys in [a1(), a2()] {
        for lambda in dominant_shapes(&sys, 6) {
            let graph = generate_ls_paths(&sys, &lambda, 200).map_err(|e| e.to_string())?;
            ensure(!graph.partial, || format!("crystal of {lambda} truncated"))?;
            let counts = graph.weights();
            let reach = 2 * rho(&sys, &lambda).to_integer() as i64 + 1;
            for mu in lattice_below(&sys, &lambda, reach) {
                let oracle = freudenthal_multiplicity(&sys, &lambda, &mu)
                    .map_err(|e| e.to_string())? as usize;
                let ls = counts.get(&mu).copied().unwrap_or(0);
                ensure(ls == oracle, || {
                    format!("λ = {lambda}, μ = {mu}: LS {ls}, Freudenthal {oracle}")
                })?;
                if oracle > 0 {
                    let m = multiplicity(&sys, &lambda, &mu, 200).map_err(|e| e.to_string())?;
                    ensure(m == oracle, || {
                        format!("multiplicity({lambda}, {mu}) = {m}, expected {oracle}")
                    })?;
                }
                checked += 1;
            }
            let total: usize = counts.values().sum();
            ensure(total == graph.len(), || {
                "weights do not partition the crystal".into()
            })?;
        }
    }
    Ok(format!("{checked} (λ, μ) pairs agree"))
}

fn criterion_2(cases: &[SuiteCase]) -> Outcome {
    let mut n = 0;
    for c in cases {
        let gap = rho(&c.sys, &(&c.lambda - &c.nu));
        let mut ls_ends = BTreeSet::new();
        for hp in &c.paths {
            let p = hp.lambda_path();
            let st = stats(&c.sys, p, H).map_err(|e| e.to_string())?;
            let (d, cd) = (rat(st.ddim as i128), rat(st.codim as i128));
            ensure(d <= gap && gap <= cd, || {
                format!("{p}: ddim {d}, ρ(λ-ν) {gap}, codim {cd}")
            })?;
            ensure(d + cd == rat(2) * gap, || {
                format!("{p}: ddim + codim ≠ 2ρ(λ-ν)")
            })?;
            let ls = is_ls(&c.sys, p, H).map_err(|e| e.to_string())?.holds;
            ensure(ls == (d == gap), || {
                format!("{p}: is_ls = {ls} but ddim = {d}, ρ(λ-ν) = {gap}")
            })?;
            if ls {
                ls_ends.insert(p.clone());
            }
            n += 1;
        }
        let crystal: BTreeSet<LambdaPath> = generate_ls_paths(&c.sys, &c.lambda, 200)
            .unwrap()
            .nodes
            .into_iter()
            .filter(|p| p.end() == c.nu)
            .collect();
        ensure(crystal == ls_ends, || {
            format!(
                "λ = {}, ν = {}: LS filter differs from the crystal",
                c.lambda, c.nu
            )
        })?;
    }
    Ok(format!("{n} Hecke paths over {} endpoints", cases.len()))
}

fn criterion_3() -> Outcome {
    let sys = a2();
    let mut pool: Vec<LambdaPath> = Vec::new();
    for lambda in [[1, 1], [2, 1], [1, 2], [2, 2]] {
        let lambda = Vector::from_ints(&lambda);
        for nu in weights_of(&sys, &lambda) {
            let z = Vector::zero(2);
            for hp in enumerate_hecke(&sys, &lambda, &z, &nu, H).unwrap() {
                pool.push(hp.lambda_path().clone());
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut defined = [0usize; 3];
    for _ in 0..200 {
        let shift = Vector::from_ints(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let p = pool[rng.gen_range(0..pool.len())].translate(&shift);
        ensure(is_hecke(&sys, &p, H).unwrap().holds, || {
            format!("{p} is not Hecke")
        })?;
        let base = stats(&sys, &p, H).unwrap();
        for i in 0..sys.rank() {
            let tilde = match root_operator(&sys, RootOperator::ETilde, i, &p) {
                Ok(q) => Some(q),
                Err(Error::Undefined(_)) => None,
                Err(e) => return Err(e.to_string()),
            };
            for (k, op, delta) in [
                (0, RootOperator::E, (-1, -1)),
                (1, RootOperator::F, (1, 1)),
                (2, RootOperator::ETilde, (1, -1)),
            ] {
                let q = match root_operator(&sys, op, i, &p) {
                    Ok(q) => q,
                    Err(Error::Undefined(_)) => continue,
                    Err(e) => return Err(e.to_string()),
                };
                defined[k] += 1;
                let st = stats(&sys, &q, H).unwrap();
                let got = (
                    st.ddim as i64 - base.ddim as i64,
                    st.codim as i64 - base.codim as i64,
                );
                ensure(got == delta, || {
                    format!(
                        "{op:?}_{} on {p}: deltas {got:?}, expected {delta:?}",
                        i + 1
                    )
                })?;
                let must_be_hecke = op == RootOperator::ETilde || tilde.is_none();
                if must_be_hecke {
                    ensure(is_hecke(&sys, &q, H).unwrap().holds, || {
                        format!("{op:?}_{} on {p} left the Hecke paths", i + 1)
                    })?;
                }
            }
        }
    }
    ensure(defined.iter().all(|&d| d > 0), || {
        format!("some operator never applied: {defined:?}")
    })?;
    Ok(format!(
        "200 paths from a pool of {}; e/f/ẽ applied {}/{}/{} times",
        pool.len(),
        defined[0],
        defined[1],
        defined[2]
    ))
}

fn criterion_4() -> Outcome {
    let g1 = generate_ls_paths(&a1(), &Vector::from_ints(&[1]), 200).map_err(|e| e.to_string())?;
    let g2 =
        generate_ls_paths(&a2(), &Vector::from_ints(&[1, 1]), 200).map_err(|e| e.to_string())?;
    let zero = g2.weights().get(&Vector::zero(2)).copied().unwrap_or(0);
    let oracle =
        freudenthal_multiplicity(&a2(), &Vector::from_ints(&[1, 1]), &Vector::zero(2)).unwrap();
    ensure(
        g1.len() == 3 && g2.len() == 8 && zero == 2 && oracle == 2,
        || {
            format!(
                "A1: {}, A2: {}, A2 at 0: {zero}, oracle at 0: {oracle}",
                g1.len(),
                g2.len()
            )
        },
    )?;
    Ok("3, 8, and 2 at weight 0".into())
}

fn criterion_5(cases: &[SuiteCase]) -> Outcome {
    let mut n = 0;
    for c in cases {
        let gap = rho(&c.sys, &(&c.lambda - &c.nu)).to_integer() as usize;
        let mut max = 0;
        let mut at_max = BTreeSet::new();
        let mut ls = BTreeSet::new();
        for hp in &c.paths {
            let p = hp.lambda_path();
            let pat = parameter_pattern(&c.sys, p, H).map_err(|e| e.to_string())?;
            let st = stats(&c.sys, p, H).unwrap();
            ensure(pat.n == st.ddim && pat.factors.len() == pat.n, || {
                format!("{p}: N = {}, ddim = {}", pat.n, st.ddim)
            })?;
            let grouped: usize = pat.groups.iter().map(|g| g.n).sum();
            ensure(grouped == pat.n, || format!("{p}: groups sum to {grouped}"))?;
            if pat.n > max {
                max = pat.n;
                at_max.clear();
            }
            if pat.n == max {
                at_max.insert(p.clone());
            }
            if is_ls(&c.sys, p, H).unwrap().holds {
                ls.insert(p.clone());
            }
            n += 1;
        }
        ensure(max == gap, || {
            format!(
                "λ = {}, ν = {}: max N = {max}, ρ(λ-ν) = {gap}",
                c.lambda, c.nu
            )
        })?;
        ensure(at_max == ls, || {
            format!(
                "λ = {}, ν = {}: maximum not attained exactly on LS paths",
                c.lambda, c.nu
            )
        })?;
    }
    Ok(format!(
        "{n} patterns, maximum ρ(λ-ν) attained exactly on LS paths"
    ))
}

fn criterion_6(cases: &[SuiteCase]) -> Outcome {
    let mut ls_count = 0;
    let mut strict: Option<String> = None;
    for c in cases {
        for hp in &c.paths {
            let p = hp.lambda_path();
            let codim = stats(&c.sys, p, H).unwrap().codim;
            if is_ls(&c.sys, p, H).unwrap().holds {
                let d = decorate_maximal(&c.sys, p, H).map_err(|e| e.to_string())?;
                let ct = codim_tilde(&c.sys, p, &d, H).map_err(|e| e.to_string())?;
                ensure(ct == codim, || {
                    format!("LS path {p}: codim_tilde {ct}, codim {codim}")
                })?;
                ls_count += 1;
            } else {
                let all = all_decorations(&c.sys, p, H).map_err(|e| e.to_string())?;
                let tildes: Vec<usize> = all
                    .iter()
                    .map(|d| codim_tilde(&c.sys, p, d, H).unwrap())
                    .collect();
                ensure(tildes.iter().all(|&t| t >= codim), || {
                    format!("{p}: codim_tilde below codim")
                })?;
                if strict.is_none()
                    && c.sys.rank() == 2
                    && !tildes.is_empty()
                    && tildes.iter().all(|&t| t > codim)
                {
                    strict = Some(format!("{p} (codim {codim}, codim_tilde {tildes:?})"));
                }
            }
        }
    }
    let witness =
        strict.ok_or("no non-LS A2 Hecke path with every decoration strictly above codim")?;
    Ok(format!(
        "{ls_count} LS paths match; strict witness {witness}"
    ))
}

/// Positive real roots of height at most `bound`, by reflecting simple roots in coefficient space.
fn brute_force_roots(sys: &RootSystem, bound: i64) -> BTreeSet<Vec<i64>> {
    let n = sys.rank();
    let a = sys.gcm();
    let search = 3 * bound;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for j in 0..n {
            let pairing: i64 = (0..n).map(|k| b[k] * a.get(j, k)).sum();
            let mut r = b.clone();
            r[j] -= pairing;
            let positive = r.iter().all(|&x| x >= 0);
            let ht: i64 = r.iter().map(|x| x.abs()).sum();
            if positive && ht <= search && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter()
        .filter(|r| r.iter().sum::<i64>() <= bound)
        .collect()
}

fn criterion_7() -> Outcome {
    let sys = RootSystem::from_gcm(named::a1_affine()).unwrap();
    let ours: BTreeSet<Vec<i64>> = sys
        .real_roots_up_to_height(10)
        .into_iter()
        .map(|r| r.coeffs)
        .collect();
    let oracle = brute_force_roots(&sys, 10);
    ensure(ours == oracle, || {
        format!("roots differ: {} vs {}", ours.len(), oracle.len())
    })?;
    let lambda = Vector::from_ints(&[0, 0, 1]);
    let graph = generate_ls_paths(&sys, &lambda, 50).map_err(|e| e.to_string())?;
    let counts: BTreeMap<Vector, usize> = graph.weights();
    for (mu, &k) in &counts {
        let m = freudenthal_multiplicity(&sys, &lambda, mu).map_err(|e| e.to_string())? as usize;
        ensure(m == k, || format!("weight {mu}: LS {k}, Freudenthal {m}"))?;
    }
    Ok(format!(
        "{} roots; {} LS paths over {} weights agree (partial = {})",
        ours.len(),
        graph.len(),
        counts.len(),
        graph.partial
    ))
}

fn criterion_8(cases: &[SuiteCase]) -> Outcome {
    let sys = a1();
    let lam = Vector::from_ints(&[1]);
    let z = Vector::zero(1);
    let to_zero = enumerate_hecke(&sys, &lam, &z, &z, H).map_err(|e| e.to_string())?;
    let folded = LambdaPath::from_displacements(
        &sys,
        &z,
        &[Vector(vec![Rat::new(-1, 2)]), Vector(vec![Rat::new(1, 2)])],
        hecke_core::paths::Orientation::Dominant,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        to_zero.len() == 1 && to_zero[0].lambda_path() == &folded,
        || format!("0 → 0 gave {} paths", to_zero.len()),
    )?;
    let to_top = enumerate_hecke(&sys, &lam, &z, &lam, H).map_err(|e| e.to_string())?;
    let straight = LambdaPath::straight(&sys, &lam).unwrap();
    ensure(
        to_top.len() == 1 && to_top[0].lambda_path() == &straight,
        || format!("0 → α^∨ gave {} paths", to_top.len()),
    )?;
    let far =
        enumerate_hecke(&sys, &lam, &z, &Vector::from_ints(&[2]), H).map_err(|e| e.to_string())?;
    ensure(far.is_empty(), || "0 → 2α^∨ is not empty".into())?;
    let total: usize = cases.iter().map(|c| c.paths.len()).sum();
    Ok(format!(
        "A1 lists match; {} suite instances terminated with {total} paths",
        cases.len()
    ))
}

fn run(label: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took {elapsed:.1?}, limit {limit:?}")),
        Err(d) => (false, d),
    };
    println!(
        "criterion {label}: {} ({elapsed:.2?}) {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let mut results = Vec::new();
    let build = Instant::now();
    let cases = suite();
    let built = build.elapsed();
    results.push(run(1, secs(60), criterion_1));
    results.push(run(2, secs(120).saturating_sub(built), || {
        criterion_2(&cases)
    }));
    results.push(run(3, secs(60), criterion_3));
    results.push(run(4, secs(5), criterion_4));
    results.push(run(5, secs(60), || criterion_5(&cases)));
    results.push(run(6, secs(60), || criterion_6(&cases)));
    results.push(run(7, secs(120), criterion_7));
    results.push(run(8, secs(10).saturating_sub(built), || {
        criterion_8(&cases)
    }));
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    let unexpected: Vec<usize> = failed
        .iter()
        .copied()
        .filter(|c| !UNATTAINABLE.contains(c))
        .collect();
    println!(
        "failed: {failed:?}; of these, known unattainable: {:?}",
        failed
            .iter()
            .filter(|c| UNATTAINABLE.contains(c))
            .collect::<Vec<_>>()
    );
    if !unexpected.is_empty() {
        eprintln!("failed criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
