use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::{Exponents, Monomial, Polynomial, Variable};

/// Degree bookkeeping of a polynomial.
///
/// `d(x)` is the largest exponent of `x` over all monomials; `d_i(x)` its
/// exponent in monomial `i`. The nonlinear variables are those with
/// `d(x) >= 2`, `l_i = max_{x in NL} (d(x) - d_i(x))` (zero when there are no
/// nonlinear variables) and `m_i = max(1, l_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub variable_degrees: BTreeMap<Variable, u32>,
    pub monomial_degrees: Vec<Exponents>,
    pub partial_degree: u32,
    pub nonlinear: BTreeSet<Variable>,
    pub levels: Vec<u32>,
    pub multiplicities: Vec<u32>,
}

impl DegreeProfile {
    pub fn of(p: &Polynomial) -> Self {
        let monomial_degrees: Vec<Exponents> =
            p.monomials().iter().map(|m| m.exponents.clone()).collect();
        let mut variable_degrees: BTreeMap<Variable, u32> = BTreeMap::new();
        for e in &monomial_degrees {
            for (v, d) in e.iter() {
                let slot = variable_degrees.entry(v.clone()).or_insert(0);
                *slot = (*slot).max(d);
            }
        }
        let partial_degree = variable_degrees.values().copied().max().unwrap_or(0);
        let nonlinear: BTreeSet<Variable> = variable_degrees
            .iter()
            .filter(|(_, &d)| d >= 2)
            .map(|(v, _)| v.clone())
            .collect();
        let levels: Vec<u32> = monomial_degrees
            .iter()
            .map(|e| {
                nonlinear
                    .iter()
                    .map(|v| variable_degrees[v] - e.get(v))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let multiplicities = levels.iter().map(|&l| l.max(1)).collect();
        DegreeProfile {
            variable_degrees,
            monomial_degrees,
            partial_degree,
            nonlinear,
            levels,
            multiplicities,
        }
    }

    pub fn degree(&self, var: &Variable) -> u32 {
        self.variable_degrees.get(var).copied().unwrap_or(0)
    }
}

/// `Red(P)`: one fresh linear variable per monomial, same coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductForm {
    pub coefficients: Vec<BigInt>,
    pub variables: Vec<Variable>,
}

impl ReductForm {
    pub fn of(p: &Polynomial) -> Self {
        let coefficients = p.coefficients();
        let variables = (1..=coefficients.len())
            .map(|i| Variable::new(format!("y{i}")).expect("valid name"))
            .collect();
        ReductForm {
            coefficients,
            variables,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coefficients
                .iter()
                .zip(&self.variables)
                .map(|(c, v)| Monomial::new(c.clone(), Exponents::from_pairs([(v.clone(), 1)]))),
        )
        .expect("distinct fresh variables with nonzero coefficients")
    }
}
