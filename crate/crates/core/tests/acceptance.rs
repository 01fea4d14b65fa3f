//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS or FAIL line; exits nonzero if any criterion fails.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rado_forge::classifier::{
    classify, classify_in, exclusive_variables, rado_condition, replay, Injective,
    NonlinearPayload, Payload, Ring, Status, Theorem,
};
use rado_forge::corpus;
use rado_forge::poly::{format_terms, Exponents, Monomial, Polynomial, Variable};
use rado_forge::report::{OutcomeJson, ThresholdJson, VerdictJson};
use rado_forge::search::{find_bad_coloring, rado_number, Outcome, SearchConfig};
use rado_forge::witness::{
    nlp_lift, reduct_lift, solution_tuples, symbolic_nlp_residual, symbolic_reduct_residual,
    to_lev_form, EnumerationLimits,
};

type Check = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn var(name: &str) -> Variable {
    Variable::new(name).expect("valid variable name")
}

fn poly(text: &str) -> Polynomial {
    text.parse().expect("valid polynomial")
}

/// Direct evaluation from the exponent maps; no use of `Polynomial::evaluate`.
fn oracle_value(p: &Polynomial, values: &BTreeMap<Variable, BigInt>) -> BigInt {
    p.monomials()
        .iter()
        .map(|m| {
            let mut acc = m.coefficient.clone();
            for (v, e) in m.exponents.iter() {
                for _ in 0..e {
                    acc *= &values[v];
                }
            }
            acc
        })
        .sum()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> i64 {
    let a = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        a
    } else {
        -a
    }
}

// ---------------------------------------------------------------------------
// random instance generators

struct LevInstance {
    p: Polynomial,
    /// alpha for each linear variable `x{i}`
    alpha: BTreeMap<Variable, BigInt>,
}

/// `sum a_i x_i prod_{j in F_i} y_j` with a planted reduct solution.
fn random_lev(rng: &mut ChaCha8Rng) -> LevInstance {
    loop {
        let k = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=4);
        let mut alpha: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(1..=1000)).collect();
        let mut coeffs: Vec<i64> = (0..k - 1).map(|_| nonzero_coeff(rng)).collect();
        let s: i64 = coeffs.iter().zip(&alpha).map(|(a, x)| a * x).sum();
        if s == 0 {
            continue;
        }
        let ds: Vec<u64> = divisors(s.unsigned_abs())
            .into_iter()
            .filter(|&d| d <= 9)
            .collect();
        let d = *ds.choose(rng).unwrap() as i64;
        coeffs.push(-s.signum() * d);
        alpha.push(s.abs() / d);
        let terms: Vec<Monomial> = (0..k)
            .map(|i| {
                let mut e = Exponents::from_pairs([(var(&format!("x{}", i + 1)), 1)]);
                for j in 0..m {
                    if rng.gen_bool(0.5) {
                        e.add(&var(&format!("y{}", j + 1)), 1);
                    }
                }
                Monomial::new(coeffs[i], e)
            })
            .collect();
        let p = Polynomial::from_terms(terms).expect("distinct monomials");
        let alpha = alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| (var(&format!("x{}", i + 1)), BigInt::from(a)))
            .collect();
        return LevInstance { p, alpha };
    }
}

struct NlpShape {
    p: Polynomial,
    /// nonlinear variable names, in name order
    ys: Vec<Variable>,
}

/// A polynomial of the nonlinear exclusive-variable shape: every monomial
/// carries `m_i` exclusive degree-1 variables, and possibly one more.
/// With `zero_sum_all`, the coefficients sum to zero.
fn random_nlp_shape(rng: &mut ChaCha8Rng, zero_sum_all: bool) -> NlpShape {
    loop {
        let k = rng.gen_range(3..=5);
        let h = rng.gen_range(1..=3);
        let mut exps: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                (0..h)
                    .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=3) })
                    .collect()
            })
            .collect();
        for s in 0..h {
            if exps.iter().all(|row| row[s] < 2) {
                let i = rng.gen_range(0..k);
                exps[i][s] = rng.gen_range(2..=3);
            }
        }
        let d: Vec<u32> = (0..h).map(|s| exps.iter().map(|r| r[s]).max().unwrap()).collect();
        let mut coeffs: Vec<i64> = (0..k).map(|_| nonzero_coeff(rng)).collect();
        if zero_sum_all {
            let s: i64 = coeffs[..k - 1].iter().sum();
            if s == 0 {
                continue;
            }
            coeffs[k - 1] = -s;
        } else if rng.gen_bool(0.8) {
            // plant a zero-sum subset ending at a random position
            let last = rng.gen_range(1..k);
            let s: i64 = (0..last).filter(|_| rng.gen_bool(0.6)).map(|i| coeffs[i]).sum();
            if s == 0 {
                continue;
            }
            coeffs[last] = -s;
        }
        let terms: Vec<Monomial> = (0..k)
            .map(|i| {
                let l = (0..h).map(|s| d[s] - exps[i][s]).max().unwrap();
                let mi = l.max(1);
                let mut e = Exponents::new();
                for s in 0..h {
                    if exps[i][s] > 0 {
                        e.add(&var(&format!("y{}", s + 1)), exps[i][s]);
                    }
                }
                for j in 0..mi {
                    e.add(&var(&format!("x{}_{}", i + 1, j + 1)), 1);
                }
                if rng.gen_bool(0.3) {
                    e.add(&var(&format!("z{}", i + 1)), 1);
                }
                Monomial::new(coeffs[i], e)
            })
            .collect();
        let p = Polynomial::from_terms(terms).expect("distinct monomials");
        let ys = (0..h).map(|s| var(&format!("y{}", s + 1))).collect();
        return NlpShape { p, ys };
    }
}

struct NlpInstance {
    p: Polynomial,
    payload: NonlinearPayload,
    alpha_beta: BTreeMap<Variable, BigInt>,
    g: Vec<BigInt>,
}

fn nonlinear_payload(p: &Polynomial) -> Result<NonlinearPayload, String> {
    let v = classify(p);
    match v.certificate.map(|c| c.payload) {
        Some(Payload::Nonlinear(pl)) if v.status == Status::PartitionRegular => Ok(pl),
        other => Err(format!("{p}: expected a nonlinear certificate, got {other:?}")),
    }
}

/// A nonlinear instance with a planted solution of P-tilde: the coefficients
/// sum to zero and every monomial of P-tilde takes the same value `t`.
fn random_nlp(rng: &mut ChaCha8Rng, primes: Option<&[u64]>) -> Result<NlpInstance, String> {
    let shape = random_nlp_shape(rng, true);
    let p = shape.p;
    let payload = nonlinear_payload(&p)?;
    let ys: BTreeSet<&Variable> = shape.ys.iter().collect();
    let t: u64 = rng.gen_range(2..=1_000_000);
    let mut alpha_beta = BTreeMap::new();
    for m in p.monomials() {
        let vars: Vec<&Variable> = m.exponents.variables().filter(|v| !ys.contains(v)).collect();
        let mut rest = t;
        for (n, v) in vars.iter().enumerate() {
            let value = if n + 1 == vars.len() {
                rest
            } else {
                *divisors(rest).choose(rng).unwrap()
            };
            rest /= value;
            alpha_beta.insert((*v).clone(), BigInt::from(value));
        }
    }
    let mut g: Vec<u64> = Vec::new();
    while g.len() < shape.ys.len() {
        let c = match primes {
            Some(ps) => *ps.choose(rng).unwrap(),
            None => rng.gen_range(2..=1_000_000),
        };
        if !g.contains(&c) {
            g.push(c);
        }
    }
    Ok(NlpInstance {
        p,
        payload,
        alpha_beta,
        g: g.into_iter().map(BigInt::from).collect(),
    })
}

fn worked_example() -> Polynomial {
    poly("x11*y1^2*y2^2 + x21*x22*z1*y2^2 - 2*x31*x32*z2*y1 + x41*x42")
}

// ---------------------------------------------------------------------------
// criteria

fn corpus_golden() -> Check {
    let results = corpus::run(&corpus::bundled());
    let diff = corpus::diff(&results);
    check!(diff.is_empty(), "corpus mismatches: {}", diff.join("; "));

    let expected: [(&str, &str, Option<&str>); 9] = [
        ("x1+x2-y1*y2", "PR", Some("LevExclusive")),
        ("2*x1+3*x2*y1*y2-5*x3*y1+x4*y2*y3", "PR", Some("LevExclusive")),
        ("x1*y1+x2*y1*y2-x3", "PR", Some("LevExclusive")),
        ("t1*t2*x^2+t3*t4*y^2-t5*t6*z^2", "PR", Some("NonlinearExclusive")),
        ("x*y+x*z-y*z", "UNKNOWN", None),
        ("x+y-z^2", "UNKNOWN", None),
        ("x+y-3*z", "NOT_PR", Some("LinearNecessity")),
        ("x-y", "PR", Some("RadoLinear")),
        ("2*x^2-3*y^2", "NOT_PR", Some("HomogeneousNecessity")),
    ];
    for (text, status, theorem) in expected {
        let v = classify(&poly(text));
        check!(v.status.code() == status, "{text}: status {}", v.status.code());
        check!(
            v.theorem().map(Theorem::name) == theorem,
            "{text}: criterion {:?}",
            v.theorem()
        );
    }
    let v = classify(&poly("x-y"));
    check!(v.injective == Injective::No, "x-y: injective {:?}", v.injective);
    let v = classify(&poly("x*y+x*z-y*z"));
    check!(!v.notes.is_empty(), "x*y+x*z-y*z carries no literature note");
    let v = classify(&poly("x+y-z^2"));
    check!(
        v.trace.iter().any(|t| t.contains("exclusive variable(s) of degree 1")),
        "x+y-z^2 trace lacks the degree-1 failure: {:?}",
        v.trace
    );

    let worked = worked_example();
    let v = classify(&worked);
    check!(
        v.theorem() == Some(Theorem::NonlinearExclusive),
        "worked example: {:?}",
        v.theorem()
    );
    let pl = nonlinear_payload(&worked)?;
    check!(pl.multiplicities == [1, 2, 2, 2], "worked example m = {:?}", pl.multiplicities);
    Ok(format!("{} fixtures", results.len()))
}

fn identity_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d3a);
    let mut symbolic = 0;
    for n in 0..1000 {
        let inst = random_lev(&mut rng);
        let p = &inst.p;
        let ex = exclusive_variables(p).ok_or_else(|| format!("{p}: no exclusive set"))?;
        let form = to_lev_form(p, &ex).map_err(|e| format!("{p}: {e}"))?;
        let alpha: Vec<BigInt> = p
            .monomials()
            .iter()
            .map(|m| {
                let x = m
                    .exponents
                    .variables()
                    .find(|v| v.as_str().starts_with('x'))
                    .expect("one x per monomial");
                inst.alpha[x].clone()
            })
            .collect();
        let y: Vec<BigInt> = form
            .product_vars
            .iter()
            .map(|_| BigInt::from(rng.gen_range(1..=1_000_000u64)))
            .collect();
        let w = reduct_lift(&form, &alpha, &y).map_err(|e| format!("{p}: {e}"))?;
        check!(w.value.is_zero(), "{p}: reduct lift value {}", w.value);
        check!(
            oracle_value(p, &w.assignment).is_zero(),
            "{p}: oracle value nonzero at {:?}",
            w.assignment
        );
        for (i, x) in form.linear_vars.iter().enumerate() {
            let mut want = alpha[i].clone();
            for (j, yv) in y.iter().enumerate() {
                if !form.index_sets[i].contains(&j) {
                    want *= yv;
                }
            }
            check!(w.assignment[x] == want, "{p}: {x} = {}, want {want}", w.assignment[x]);
        }
        if n % 5 == 0 {
            let residual = symbolic_reduct_residual(&form, &alpha);
            check!(residual.is_empty(), "{p}: symbolic residual {}", format_terms(&residual));
            symbolic += 1;
        }
    }

    for _ in 0..200 {
        let inst = random_nlp(&mut rng, None)?;
        let p = &inst.p;
        let w = nlp_lift(p, &inst.payload, &inst.alpha_beta, &inst.g)
            .map_err(|e| format!("{p}: {e}"))?;
        check!(w.value.is_zero(), "{p}: nlp lift value {}", w.value);
        check!(oracle_value(p, &w.assignment).is_zero(), "{p}: oracle value nonzero");
        let residual = symbolic_nlp_residual(p, &inst.payload, &inst.alpha_beta)
            .map_err(|e| format!("{p}: {e}"))?;
        check!(residual.is_empty(), "{p}: symbolic residual {}", format_terms(&residual));
    }

    let worked = worked_example();
    let pl = nonlinear_payload(&worked)?;
    let any: BTreeMap<Variable, BigInt> = worked
        .variables()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, BigInt::from(i as i64 + 3)))
        .collect();
    let residual = symbolic_nlp_residual(&worked, &pl, &any).map_err(|e| e.to_string())?;
    check!(residual.is_empty(), "worked example residual {}", format_terms(&residual));
    Ok(format!(
        "1000 reduct lifts, 200 nlp lifts, {} symbolic checks",
        symbolic + 201
    ))
}

fn trace_laws() -> Check {
    let primes = small_primes(2000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
    for _ in 0..200 {
        let inst = random_nlp(&mut rng, Some(&primes))?;
        let p = &inst.p;
        let w = nlp_lift(p, &inst.payload, &inst.alpha_beta, &inst.g)
            .map_err(|e| format!("{p}: {e}"))?;
        let ys = &inst.payload.nonlinear;
        let d: Vec<u32> = ys
            .iter()
            .map(|y| p.monomials().iter().map(|m| m.degree_of(y)).max().unwrap())
            .collect();
        let mut eta = BigInt::one();
        for (gs, &ds) in inst.g.iter().zip(&d) {
            eta *= gs.pow(ds);
        }
        check!(w.trace.eta.as_ref() == Some(&eta), "{p}: eta");
        for (i, m) in p.monomials().iter().enumerate() {
            let gaps: Vec<u32> = ys.iter().zip(&d).map(|(y, &ds)| ds - m.degree_of(y)).collect();
            let l = gaps.iter().copied().max().unwrap_or(0);
            check!(inst.payload.levels[i] == l, "{p}: l_{} = {}", i + 1, inst.payload.levels[i]);
            let mi = l.max(1) as usize;

            // exponent of each (prime) g_s in eta_i, read off by division
            let eta_i = &w.trace.eta_i[i];
            for (s, gs) in inst.g.iter().enumerate() {
                let mut rest = eta_i.clone();
                let mut e = 0;
                while (&rest % gs).is_zero() {
                    rest /= gs;
                    e += 1;
                }
                check!(e == gaps[s], "{p}: exponent of g_{} in eta_{}", s + 1, i + 1);
                check!(e <= l, "{p}: exponent {e} in eta_{} exceeds l = {l}", i + 1);
            }

            let mut product = BigInt::one();
            let mut previous: Option<BTreeSet<usize>> = None;
            for j in 0..mi {
                let set: BTreeSet<usize> = w.trace.index_sets[&(i, j)].iter().copied().collect();
                let want: BTreeSet<usize> =
                    (0..ys.len()).filter(|&s| gaps[s] > j as u32).collect();
                check!(set == want, "{p}: I_{{{},{}}} = {set:?}", i + 1, j + 1);
                if let Some(prev) = &previous {
                    check!(set.is_subset(prev), "{p}: I sets not nested at monomial {}", i + 1);
                }
                let gamma: BigInt = set.iter().map(|&s| &inst.g[s]).product();
                check!(w.trace.gamma[&(i, j)] == gamma, "{p}: gamma_{{{},{}}}", i + 1, j + 1);
                product *= gamma;
                previous = Some(set);
            }
            check!(&product == eta_i, "{p}: product of gammas {product} != eta_{} {eta_i}", i + 1);
        }
    }
    Ok("200 instances".into())
}

/// All solutions in `[1, n]` over the name-sorted variables, by full grid.
fn grid_solutions(p: &Polynomial, n: u32, injective: bool) -> Vec<Vec<u32>> {
    let vars: Vec<Variable> = p.variables().into_iter().collect();
    let terms: Vec<(i128, Vec<(usize, u32)>)> = p
        .monomials()
        .iter()
        .map(|m| {
            let c: i128 = m.coefficient.to_string().parse().unwrap();
            let e = m
                .exponents
                .iter()
                .map(|(v, k)| (vars.iter().position(|w| w == v).unwrap(), k))
                .collect();
            (c, e)
        })
        .collect();
    let mut out = Vec::new();
    let mut point = vec![1u32; vars.len()];
    loop {
        let value: i128 = terms
            .iter()
            .map(|(c, e)| c * e.iter().map(|&(i, k)| (point[i] as i128).pow(k)).product::<i128>())
            .sum();
        let distinct = point.iter().collect::<BTreeSet<_>>().len() == point.len();
        if value == 0 && (!injective || distinct) {
            out.push(point.clone());
        }
        let mut i = point.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if point[i] < n {
                point[i] += 1;
                break;
            }
            point[i] = 1;
        }
    }
}

/// Whether every 2-coloring of `[1, n]` has a monochromatic solution.
fn forced_by_enumeration(solutions: &[Vec<u32>], n: u32) -> bool {
    let sets: Vec<u64> = solutions
        .iter()
        .filter(|s| s.iter().all(|&v| v <= n))
        .map(|s| s.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
        .collect();
    (0u64..1 << n).all(|coloring| {
        sets.iter()
            .any(|&s| coloring & s == s || coloring & s == 0)
    })
}

fn schur_threshold() -> Check {
    let p = poly("x + y - z");
    let cfg = SearchConfig::default();
    let report = rado_number(&p, 2, 10, false, &cfg).map_err(|e| e.to_string())?;
    check!(report.threshold() == Some(5), "threshold {:?}", report.result);
    let sols = grid_solutions(&p, 9, false);
    for n in 1..=5u32 {
        let forced = forced_by_enumeration(&sols, n);
        let searched = report.outcomes[n as usize - 1].outcome == Outcome::Forced;
        check!(forced == searched, "N = {n}: enumeration {forced}, backtracking {searched}");
        check!(forced == (n == 5), "N = {n}: enumeration says forced = {forced}");
    }
    let inj = rado_number(&p, 2, 12, true, &cfg).map_err(|e| e.to_string())?;
    // weak Schur number WS(2) = 8
    check!(inj.threshold() == Some(9), "injective threshold {:?}", inj.result);
    let inj_sols = grid_solutions(&p, 9, true);
    for n in 1..=9u32 {
        let forced = forced_by_enumeration(&inj_sols, n);
        let searched = inj.outcomes[n as usize - 1].outcome == Outcome::Forced;
        check!(forced == searched, "injective N = {n}: enumeration {forced}, backtracking {searched}");
    }
    Ok("non-injective 5, injective 9".into())
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a1c1e);
    for _ in 0..3000 {
        let k = rng.gen_range(1..=12);
        let a: Vec<i64> = (0..k).map(|_| nonzero_coeff(&mut rng)).collect();
        let exhaustive = (1u32..1 << k)
            .any(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum::<i64>() == 0);
        let coeffs: Vec<BigInt> = a.iter().copied().map(BigInt::from).collect();
        match rado_condition(&coeffs) {
            Some(j) => {
                check!(exhaustive, "{a:?}: subset reported where none exists");
                check!(
                    !j.is_empty() && j.iter().map(|&i| a[i]).sum::<i64>() == 0,
                    "{a:?}: subset {j:?} does not sum to 0"
                );
            }
            None => check!(!exhaustive, "{a:?}: zero-sum subset missed"),
        }
    }

    let cfg = SearchConfig::default();
    let shapes = [
        "x + y - z",
        "x + 2*y - z",
        "x + y - 2*z",
        "x + y - 3*z",
        "x + y + z - w",
        "x*y - z",
        "x^2 + y^2 - z^2",
        "x - 2*y",
        "x*y + x*z - y*z",
    ];
    let mut searches = 0;
    for text in shapes {
        let p = poly(text);
        for injective in [false, true] {
            let sols = grid_solutions(&p, 12, injective);
            for n in 1..=12u32 {
                let o = find_bad_coloring(&p, 2, n, injective, &cfg).map_err(|e| e.to_string())?;
                let forced = forced_by_enumeration(&sols, n);
                match &o.outcome {
                    Outcome::Forced => check!(forced, "{text} N={n} inj={injective}: bad coloring missed"),
                    Outcome::BadColoring(c) => {
                        check!(!forced, "{text} N={n} inj={injective}: forced but search returned {:?}", c.colors);
                        let mono = sols.iter().filter(|s| s.iter().all(|&v| v <= n)).any(|s| {
                            s.iter().all(|&v| c.color(v) == c.color(s[0]))
                        });
                        check!(!mono, "{text} N={n}: returned coloring is not bad");
                    }
                    Outcome::Inconclusive => return Err(format!("{text} N={n}: inconclusive")),
                }
                searches += 1;
            }
        }
    }

    let names = ["a", "b", "c", "d"];
    let mut compared = 0;
    while compared < 150 {
        let width = rng.gen_range(1..=4);
        let count = rng.gen_range(2..=4);
        let isolate = rng.gen_bool(0.6);
        let mut terms = Vec::new();
        for t in 0..count {
            let mut e = Exponents::new();
            for (w, name) in names.iter().enumerate().take(width) {
                if isolate && w + 1 == width && t + 1 != count {
                    continue;
                }
                let k = rng.gen_range(0..=2);
                if k > 0 {
                    e.add(&var(name), k);
                }
            }
            if e.is_empty() {
                e.add(&var(names[0]), 1);
            }
            let c = rng.gen_range(1..=6) * if t % 2 == 0 { 1 } else { -1 };
            terms.push(Monomial::new(c, e));
        }
        let Ok(p) = Polynomial::from_terms(terms) else { continue };
        let n = rng.gen_range(1..=15);
        let injective = rng.gen_bool(0.3);
        let got = solution_tuples(&p, n, injective, None, EnumerationLimits::default())
            .map_err(|e| format!("{p}: {e}"))?;
        let want = grid_solutions(&p, n, injective);
        check!(got == want, "{p} N={n} inj={injective}: {} vs {} solutions", got.len(), want.len());
        compared += 1;
    }
    Ok(format!("3000 subset checks, {searches} searches, {compared} enumerations"))
}

fn strip(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("input");
            map.remove("ms");
            map.values_mut().for_each(strip);
        }
        Value::Array(items) => items.iter_mut().for_each(strip),
        _ => {}
    }
}

fn digest<T: serde::Serialize>(value: &T) -> u64 {
    let mut v = serde_json::to_value(value).expect("serializable");
    strip(&mut v);
    let mut h = DefaultHasher::new();
    v.to_string().hash(&mut h);
    h.finish()
}

fn reorderings(p: &Polynomial, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut out = vec![p.to_string()];
    let mut reversed = p.monomials().to_vec();
    reversed.reverse();
    out.push(format_terms(&reversed));
    let mut shuffled = p.monomials().to_vec();
    shuffled.shuffle(rng);
    out.push(format_terms(&shuffled));
    out
}

fn determinism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
    let mut polys: Vec<(Polynomial, Ring)> = corpus::bundled()
        .into_iter()
        .map(|f| (f.polynomial, f.ring))
        .collect();
    for _ in 0..30 {
        polys.push((random_lev(&mut rng).p, Ring::Naturals));
        polys.push((random_nlp_shape(&mut rng, false).p, Ring::Naturals));
    }
    for (p, ring) in &polys {
        let mut seen = BTreeSet::new();
        for text in reorderings(p, &mut rng) {
            let q = poly(&text);
            seen.insert(digest(&VerdictJson::new(&text, &q, *ring, &classify_in(&q, *ring))));
        }
        check!(seen.len() == 1, "{p}: classification depends on term order");
    }

    let searches = [
        ("x + y - z", 3, 13, false),
        ("x + y - z", 2, 4, false),
        ("x + y - z", 2, 8, true),
        ("x + 2*y - z", 3, 14, false),
        ("x*y + x*z - y*z", 2, 12, false),
    ];
    for (text, r, n, injective) in searches {
        let p = poly(text);
        let mut seen = BTreeSet::new();
        for workers in [1, 2, 8] {
            let cfg = SearchConfig {
                workers,
                ..SearchConfig::default()
            };
            for t in reorderings(&p, &mut rng) {
                let q = poly(&t);
                let o = find_bad_coloring(&q, r, n, injective, &cfg).map_err(|e| e.to_string())?;
                seen.insert(digest(&OutcomeJson::new(&o)));
            }
            let t = rado_number(&p, r, n, injective, &cfg).map_err(|e| e.to_string())?;
            seen.insert(digest(&ThresholdJson::new(&t)));
        }
        check!(seen.len() == 2, "{text} r={r} N={n}: {} distinct digests", seen.len());
    }
    Ok(format!("{} classifications, {} search settings", polys.len(), searches.len()))
}

fn certificate_replay() -> Check {
    let mut pr = 0;
    for f in corpus::bundled() {
        let v = classify_in(&f.polynomial, f.ring);
        if let Some(cert) = &v.certificate {
            replay(&f.polynomial, cert).map_err(|e| format!("{}: {e}", f.polynomial))?;
            pr += usize::from(v.status == Status::PartitionRegular);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e91a7);
    let mut generated = 0;
    let mut rejected = 0;
    while generated < 500 {
        let p = random_nlp_shape(&mut rng, false).p;
        let v = classify(&p);
        if v.status != Status::PartitionRegular {
            continue;
        }
        let cert = v.certificate.expect("PR carries a certificate");
        check!(
            cert.theorem == Theorem::NonlinearExclusive,
            "{p}: certified by {}",
            cert.theorem.name()
        );
        replay(&p, &cert).map_err(|e| format!("{p}: {e}"))?;
        // a tampered certificate must be refused
        let mut bad = cert.clone();
        if let Payload::Nonlinear(pl) = &mut bad.payload {
            pl.multiplicities[0] += 1;
        }
        check!(replay(&p, &bad).is_err(), "{p}: tampered certificate accepted");
        rejected += 1;
        generated += 1;
    }
    Ok(format!(
        "{pr} corpus PR verdicts, {generated} generated, {rejected} tampered rejected"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<Duration>); 7] = [
        ("corpus classification", corpus_golden, Some(Duration::from_secs(1))),
        ("lift identities", identity_suite, Some(Duration::from_secs(30))),
        ("nlp trace laws", trace_laws, None),
        ("Schur threshold", schur_threshold, Some(Duration::from_secs(10))),
        ("oracle equivalence", oracle_equivalence, None),
        ("determinism", determinism, None),
        ("certificate replay", certificate_replay, None),
    ];
    let mut failed = 0;
    for (n, (name, run, limit)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let elapsed = started.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({} ms)", n + 1, elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({} ms)", n + 1, elapsed.as_millis());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
