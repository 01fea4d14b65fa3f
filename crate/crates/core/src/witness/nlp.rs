use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{product_of_powers, LiftTrace, Provenance, Result, Witness, WitnessError};
use crate::classifier::NonlinearPayload;
use crate::poly::{combine_terms, Exponents, Monomial, Polynomial, Variable};

/// `P` with every nonlinear variable set to 1.
pub fn p_tilde(p: &Polynomial, payload: &NonlinearPayload) -> Result<Polynomial> {
    let map: BTreeMap<Variable, Monomial> = payload
        .nonlinear
        .iter()
        .map(|y| (y.clone(), Monomial::constant(1)))
        .collect();
    Ok(Polynomial::from_terms(p.substitute(&map))?)
}

/// Index data shared by the numeric and symbolic lifts.
struct Layout {
    /// `d(y_s)` for each nonlinear variable.
    degrees: Vec<u32>,
    /// `gaps[i][s] = d(y_s) - d_i(y_s)`.
    gaps: Vec<Vec<u32>>,
    /// `sets[i][j] = I_{i,j+1}`.
    sets: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    fn new(p: &Polynomial, payload: &NonlinearPayload) -> Result<Layout> {
        let profile = p.degree_profile();
        let expected: Vec<&Variable> = profile.nonlinear.iter().collect();
        if payload.nonlinear.iter().collect::<Vec<_>>() != expected {
            return Err(WitnessError::InvalidInput(
                "payload nonlinear variables do not match the polynomial".into(),
            ));
        }
        if payload.chosen.len() != p.len() || payload.levels != profile.levels {
            return Err(WitnessError::InvalidInput(
                "payload does not match the polynomial's monomials".into(),
            ));
        }
        let degrees: Vec<u32> = payload
            .nonlinear
            .iter()
            .map(|y| profile.degree(y))
            .collect();
        let mut gaps = Vec::with_capacity(p.len());
        let mut sets = Vec::with_capacity(p.len());
        for (i, m) in p.monomials().iter().enumerate() {
            let g: Vec<u32> = payload
                .nonlinear
                .iter()
                .zip(&degrees)
                .map(|(y, &d)| d - m.degree_of(y))
                .collect();
            let count = payload.chosen[i].len();
            if count != payload.multiplicities[i] as usize {
                return Err(WitnessError::InvalidInput(format!(
                    "monomial {} needs {} chosen variables, payload has {count}",
                    i + 1,
                    payload.multiplicities[i]
                )));
            }
            for x in &payload.chosen[i] {
                if m.degree_of(x) != 1 || p.support_of(x) != [i] {
                    return Err(WitnessError::InvalidInput(format!(
                        "{x} is not an exclusive degree-1 variable of monomial {}",
                        i + 1
                    )));
                }
            }
            let s: Vec<Vec<usize>> = (1..=count as u32)
                .map(|j| (0..g.len()).filter(|&s| g[s] >= j).collect())
                .collect();
            gaps.push(g);
            sets.push(s);
        }
        Ok(Layout {
            degrees,
            gaps,
            sets,
        })
    }
}

/// Lift a solution of `P-tilde` to a solution of `P`.
///
/// `alpha_beta` assigns the chosen variables and the remaining
/// non-nonlinear variables; `g` assigns the nonlinear variables in name
/// order and must consist of distinct integers at least 2.
pub fn nlp_lift(
    p: &Polynomial,
    payload: &NonlinearPayload,
    alpha_beta: &BTreeMap<Variable, BigInt>,
    g: &[BigInt],
) -> Result<Witness> {
    let layout = Layout::new(p, payload)?;
    if g.len() != payload.nonlinear.len() {
        return Err(WitnessError::InvalidInput(format!(
            "expected {} values for the nonlinear variables, got {}",
            payload.nonlinear.len(),
            g.len()
        )));
    }
    if g.iter().collect::<BTreeSet<_>>().len() != g.len() {
        return Err(WitnessError::GValuesNotDistinct);
    }
    if g.iter().any(|v| v < &BigInt::from(2)) {
        return Err(WitnessError::InvalidInput(
            "values for the nonlinear variables must be at least 2".into(),
        ));
    }
    let tilde = p_tilde(p, payload)?;
    for v in tilde.variables() {
        match alpha_beta.get(&v) {
            None => return Err(WitnessError::InvalidInput(format!("no value for {v}"))),
            Some(x) if !x.is_positive() => {
                return Err(WitnessError::InvalidInput(format!(
                    "value for {v} must be positive"
                )))
            }
            Some(_) => {}
        }
    }
    let tilde_value = tilde.evaluate(alpha_beta)?;
    if !tilde_value.is_zero() {
        return Err(WitnessError::NotAPTildeSolution(tilde_value));
    }

    let eta = product_of_powers(g.iter().zip(layout.degrees.iter().copied()));
    let mut trace = LiftTrace {
        eta: Some(eta.clone()),
        ..LiftTrace::default()
    };
    let mut assignment: BTreeMap<Variable, BigInt> = tilde
        .variables()
        .into_iter()
        .map(|v| {
            let x = alpha_beta[&v].clone();
            (v, x)
        })
        .collect();
    for (i, m) in p.monomials().iter().enumerate() {
        let eta_i = product_of_powers(g.iter().zip(layout.gaps[i].iter().copied()));
        let mut prod = BigInt::one();
        for (j, x) in payload.chosen[i].iter().enumerate() {
            let set = &layout.sets[i][j];
            let gamma: BigInt = set.iter().map(|&s| &g[s]).product();
            if payload.levels[i] >= 1 {
                let lifted = &alpha_beta[x] * &gamma;
                assignment.insert(x.clone(), lifted);
            }
            prod *= &gamma;
            trace.gamma.insert((i, j), gamma);
            trace.index_sets.insert((i, j), set.clone());
        }
        if prod != eta_i {
            return Err(WitnessError::IdentityViolated(format!(
                "product of gammas for monomial {} is {prod}, expected {eta_i}",
                i + 1
            )));
        }
        let nl_part = product_of_powers(
            payload
                .nonlinear
                .iter()
                .zip(g)
                .map(|(y, v)| (v, m.degree_of(y))),
        );
        if &prod * &nl_part != eta {
            return Err(WitnessError::IdentityViolated(format!(
                "monomial {} is not scaled by eta",
                i + 1
            )));
        }
        trace.eta_i.push(eta_i);
    }
    for (y, v) in payload.nonlinear.iter().zip(g) {
        assignment.insert(y.clone(), v.clone());
    }
    let value = p.evaluate(&assignment)?;
    if value != &eta * &tilde_value {
        return Err(WitnessError::IdentityViolated(format!(
            "P at the lifted point is {value}, expected eta * P-tilde = 0"
        )));
    }
    Ok(Witness {
        assignment,
        value,
        provenance: Provenance::NlpLift,
        trace,
    })
}

/// `P(lift) - eta * P-tilde(alpha, beta)` with the nonlinear variables kept
/// formal. Empty when the lifting identity holds; `alpha_beta` need not solve
/// `P-tilde`.
pub fn symbolic_nlp_residual(
    p: &Polynomial,
    payload: &NonlinearPayload,
    alpha_beta: &BTreeMap<Variable, BigInt>,
) -> Result<Vec<Monomial>> {
    let layout = Layout::new(p, payload)?;
    let tilde = p_tilde(p, payload)?;
    let mut map: BTreeMap<Variable, Monomial> = BTreeMap::new();
    for v in tilde.variables() {
        let c = alpha_beta
            .get(&v)
            .ok_or_else(|| WitnessError::InvalidInput(format!("no value for {v}")))?;
        map.insert(v, Monomial::constant(c.clone()));
    }
    let tilde_value: BigInt = tilde
        .substitute(&map)
        .into_iter()
        .map(|m| m.coefficient)
        .sum();
    for (i, chosen) in payload.chosen.iter().enumerate() {
        if payload.levels[i] == 0 {
            continue;
        }
        for (j, x) in chosen.iter().enumerate() {
            let e = Exponents::from_pairs(
                layout.sets[i][j]
                    .iter()
                    .map(|&s| (payload.nonlinear[s].clone(), 1)),
            );
            map.insert(x.clone(), Monomial::new(alpha_beta[x].clone(), e));
        }
    }
    let lifted = p.substitute(&map);
    let eta = Exponents::from_pairs(
        payload
            .nonlinear
            .iter()
            .zip(&layout.degrees)
            .map(|(y, &d)| (y.clone(), d)),
    );
    let scaled = Monomial::new(-tilde_value, eta);
    Ok(combine_terms(lifted.into_iter().chain(std::iter::once(scaled))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, Payload};

    const EXAMPLE: &str = "x11*y1^2*y2^2 + x21*x22*z1*y2^2 - 2*x31*x32*z2*y1 + x41*x42";

    fn payload(p: &Polynomial) -> NonlinearPayload {
        match classify(p).certificate.unwrap().payload {
            Payload::Nonlinear(n) => n,
            other => panic!("unexpected payload {other:?}"),
        }
    }

    fn values(pairs: &[(&str, i64)]) -> BTreeMap<Variable, BigInt> {
        pairs
            .iter()
            .map(|(k, v)| (Variable::new(*k).unwrap(), BigInt::from(*v)))
            .collect()
    }

    fn example_alpha() -> BTreeMap<Variable, BigInt> {
        values(&[
            ("x11", 2),
            ("x21", 1),
            ("x22", 1),
            ("z1", 2),
            ("x31", 1),
            ("x32", 3),
            ("z2", 1),
            ("x41", 1),
            ("x42", 2),
        ])
    }

    #[test]
    fn p_tilde_of_example() {
        let p: Polynomial = EXAMPLE.parse().unwrap();
        let t = p_tilde(&p, &payload(&p)).unwrap();
        let expected: Polynomial = "x11 + x21*x22*z1 - 2*x31*x32*z2 + x41*x42".parse().unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn worked_example_lift() {
        let p: Polynomial = EXAMPLE.parse().unwrap();
        let pl = payload(&p);
        assert_eq!(pl.levels, vec![0, 2, 2, 2]);
        let g = [BigInt::from(2), BigInt::from(3)];
        let w = nlp_lift(&p, &pl, &example_alpha(), &g).unwrap();
        assert_eq!(w.trace.eta, Some(BigInt::from(36)));
        let expected = values(&[
            ("x11", 2),
            ("x21", 2),
            ("x22", 2),
            ("z1", 2),
            ("x31", 6),
            ("x32", 9),
            ("z2", 1),
            ("x41", 6),
            ("x42", 12),
            ("y1", 2),
            ("y2", 3),
        ]);
        assert_eq!(w.assignment, expected);
        assert!(w.value.is_zero());
        // x21 = 2 coincides with y1 = 2
        assert!(!w.is_injective());
    }

    #[test]
    fn worked_example_index_sets() {
        let p: Polynomial = EXAMPLE.parse().unwrap();
        let pl = payload(&p);
        let w = nlp_lift(&p, &pl, &example_alpha(), &[BigInt::from(2), BigInt::from(3)]).unwrap();
        let idx = |name: &str| {
            let v = Variable::new(name).unwrap();
            p.monomials()
                .iter()
                .position(|m| m.exponents.contains(&v))
                .unwrap()
        };
        let second = idx("x21");
        let third = idx("x31");
        // I_{2,1} = I_{2,2} = {y1}; I_{3,1} = {y1, y2}, I_{3,2} = {y2}
        assert_eq!(w.trace.index_sets[&(second, 0)], vec![0]);
        assert_eq!(w.trace.index_sets[&(second, 1)], vec![0]);
        assert_eq!(w.trace.index_sets[&(third, 0)], vec![0, 1]);
        assert_eq!(w.trace.index_sets[&(third, 1)], vec![1]);
        assert_eq!(w.trace.gamma[&(third, 0)], BigInt::from(6));
        assert_eq!(w.trace.gamma[&(third, 1)], BigInt::from(3));
    }

    #[test]
    fn worked_example_symbolic() {
        let p: Polynomial = EXAMPLE.parse().unwrap();
        let pl = payload(&p);
        assert!(symbolic_nlp_residual(&p, &pl, &example_alpha())
            .unwrap()
            .is_empty());
        let mut other = example_alpha();
        other.insert(Variable::new("z2").unwrap(), BigInt::from(17));
        assert!(symbolic_nlp_residual(&p, &pl, &other).unwrap().is_empty());
    }

    #[test]
    fn lift_errors() {
        let p: Polynomial = EXAMPLE.parse().unwrap();
        let pl = payload(&p);
        let g = [BigInt::from(2), BigInt::from(2)];
        assert_eq!(
            nlp_lift(&p, &pl, &example_alpha(), &g),
            Err(WitnessError::GValuesNotDistinct)
        );
        let mut bad = example_alpha();
        bad.insert(Variable::new("x11").unwrap(), BigInt::from(3));
        let g = [BigInt::from(2), BigInt::from(3)];
        assert_eq!(
            nlp_lift(&p, &pl, &bad, &g),
            Err(WitnessError::NotAPTildeSolution(BigInt::from(1)))
        );
    }
}
