//! Explicit integer solutions.
//!
//! The two lifting constructions turn a solution of a linear (or l.e.v.)
//! auxiliary equation into a solution of the original polynomial and verify
//! the underlying algebraic identities exactly:
//!
//! * [`reduct_lift`]: for `P = sum a_i x_i Q_{F_i}(y)`, a solution `alpha` of
//!   `sum a_i alpha_i = 0` and any `y`, setting `x_i = alpha_i * prod_{j not
//!   in F_i} y_j` gives `P(x, y) = (prod_j y_j) * sum a_i alpha_i = 0`.
//! * [`nlp_lift`]: the nonlinear analogue, scaling the chosen exclusive
//!   variables by products of the values assigned to the nonlinear variables.
//!
//! [`brute_force_solutions`] is an exhaustive enumerator used as an oracle
//! and by the coloring search.

mod brute;
mod generate;
mod nlp;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classifier::ExclusiveAssignment;
use crate::poly::{combine_terms, Exponents, Monomial, PolyError, Polynomial, Variable};

pub use brute::{brute_force_solutions, solution_tuples, EnumerationLimits};
pub use generate::{find_reduct_solution, nlp_witness, primes_above, reduct_witness};
pub use nlp::{nlp_lift, p_tilde, symbolic_nlp_residual};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("alpha is not a solution of the reduct: sum a_i alpha_i = {0}")]
    NotAReductSolution(BigInt),
    #[error("alpha/beta is not a solution of P-tilde: value {0}")]
    NotAPTildeSolution(BigInt),
    #[error("the values for the nonlinear variables must be pairwise distinct")]
    GValuesNotDistinct,
    #[error("polynomial has no set of exclusive variables")]
    NoExclusiveSet,
    #[error("polynomial is not linear in each variable")]
    NotLev,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("construction not applicable: {0}")]
    Inapplicable(String),
    #[error("no positive solution of the reduct found with entries up to {0}")]
    NoReductSolution(u32),
    #[error("search space of {points} points exceeds the bound {bound}")]
    SearchSpaceTooLarge { points: u128, bound: u128 },
    #[error("identity check failed: {0}")]
    IdentityViolated(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, WitnessError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ReductLift,
    NlpLift,
    BruteForce,
    Negated,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::ReductLift => "ReductLift",
            Provenance::NlpLift => "NlpLift",
            Provenance::BruteForce => "BruteForce",
            Provenance::Negated => "Negated",
        }
    }
}

/// Intermediate quantities of a lift. Indices are 0-based: `gamma[(i, j)]` is
/// the factor for the `j`-th chosen variable of monomial `i`, and
/// `index_sets[(i, j)]` lists positions in NL(P).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LiftTrace {
    pub eta: Option<BigInt>,
    pub eta_i: Vec<BigInt>,
    pub gamma: BTreeMap<(usize, usize), BigInt>,
    pub index_sets: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: BTreeMap<Variable, BigInt>,
    pub value: BigInt,
    pub provenance: Provenance,
    pub trace: LiftTrace,
}

impl Witness {
    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<&BigInt> = self.assignment.values().collect();
        distinct.len() == self.assignment.len()
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.assignment.values().cloned().collect()
    }
}

/// `sum a_i x_i Q_{F_i}(y_1, ..., y_m)`: one designated linear variable per
/// monomial and the index set of product variables multiplying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevForm {
    pub coefficients: Vec<BigInt>,
    pub linear_vars: Vec<Variable>,
    pub product_vars: Vec<Variable>,
    /// `index_sets[i]` holds 0-based positions into `product_vars`.
    pub index_sets: Vec<Vec<usize>>,
}

impl LevForm {
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.coefficients.iter().enumerate().map(|(i, a)| {
            let mut e = Exponents::from_pairs([(self.linear_vars[i].clone(), 1)]);
            for &j in &self.index_sets[i] {
                e.add(&self.product_vars[j], 1);
            }
            Monomial::new(a.clone(), e)
        }))
        .expect("designated variables keep monomials distinct")
    }

    fn check_alpha(&self, alpha: &[BigInt]) -> Result<()> {
        if alpha.len() != self.coefficients.len() {
            return Err(WitnessError::InvalidInput(format!(
                "expected {} alpha values, got {}",
                self.coefficients.len(),
                alpha.len()
            )));
        }
        let s: BigInt = self.coefficients.iter().zip(alpha).map(|(a, x)| a * x).sum();
        if s.is_zero() {
            Ok(())
        } else {
            Err(WitnessError::NotAReductSolution(s))
        }
    }
}

/// Put an l.e.v. polynomial with exclusive variables into [`LevForm`],
/// designating the alphabetically first exclusive variable of each monomial.
pub fn to_lev_form(p: &Polynomial, exclusives: &ExclusiveAssignment) -> Result<LevForm> {
    if !p.is_lev() {
        return Err(WitnessError::NotLev);
    }
    if exclusives.per_monomial.len() != p.len() || !exclusives.is_complete() {
        return Err(WitnessError::NoExclusiveSet);
    }
    let linear_vars: Vec<Variable> = exclusives
        .per_monomial
        .iter()
        .map(|v| v[0].clone())
        .collect();
    let designated: BTreeSet<&Variable> = linear_vars.iter().collect();
    let product_vars: Vec<Variable> = p
        .variables()
        .into_iter()
        .filter(|v| !designated.contains(v))
        .collect();
    let index_sets = p
        .monomials()
        .iter()
        .map(|m| {
            product_vars
                .iter()
                .enumerate()
                .filter(|(_, y)| m.exponents.contains(y))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(LevForm {
        coefficients: p.coefficients(),
        linear_vars,
        product_vars,
        index_sets,
    })
}

/// Lift a reduct solution: `x_i = alpha_i * prod_{j not in F_i} y_j`.
pub fn reduct_lift(form: &LevForm, alpha: &[BigInt], y_values: &[BigInt]) -> Result<Witness> {
    form.check_alpha(alpha)?;
    if y_values.len() != form.product_vars.len() {
        return Err(WitnessError::InvalidInput(format!(
            "expected {} y values, got {}",
            form.product_vars.len(),
            y_values.len()
        )));
    }
    if alpha.iter().chain(y_values).any(|v| !v.is_positive()) {
        return Err(WitnessError::InvalidInput(
            "alpha and y values must be positive".into(),
        ));
    }
    let mut assignment = BTreeMap::new();
    let mut eta_i = Vec::with_capacity(alpha.len());
    for (i, x) in form.linear_vars.iter().enumerate() {
        let factor: BigInt = (0..y_values.len())
            .filter(|j| !form.index_sets[i].contains(j))
            .map(|j| &y_values[j])
            .product();
        assignment.insert(x.clone(), &alpha[i] * &factor);
        eta_i.push(factor);
    }
    for (y, v) in form.product_vars.iter().zip(y_values) {
        assignment.insert(y.clone(), v.clone());
    }
    let eta: BigInt = y_values.iter().product();
    let value = form.to_polynomial().evaluate(&assignment)?;
    let s: BigInt = form.coefficients.iter().zip(alpha).map(|(a, x)| a * x).sum();
    if value != &eta * s {
        return Err(WitnessError::IdentityViolated(format!(
            "P(x, y) = {value} but (prod y) * sum a_i alpha_i = 0"
        )));
    }
    Ok(Witness {
        assignment,
        value,
        provenance: Provenance::ReductLift,
        trace: LiftTrace {
            eta: Some(eta),
            eta_i,
            ..LiftTrace::default()
        },
    })
}

/// `P(x(y), y) - (prod_j y_j) * sum a_i alpha_i` with the `y_j` kept formal.
/// Empty when the lifting identity holds; `alpha` need not solve the reduct.
pub fn symbolic_reduct_residual(form: &LevForm, alpha: &[BigInt]) -> Vec<Monomial> {
    let m = form.product_vars.len();
    let mut map = BTreeMap::new();
    for (i, x) in form.linear_vars.iter().enumerate() {
        let e = Exponents::from_pairs(
            (0..m)
                .filter(|j| !form.index_sets[i].contains(j))
                .map(|j| (form.product_vars[j].clone(), 1)),
        );
        map.insert(x.clone(), Monomial::new(alpha[i].clone(), e));
    }
    let lifted = form.to_polynomial().substitute(&map);
    let s: BigInt = form.coefficients.iter().zip(alpha).map(|(a, x)| a * x).sum();
    let all_y = Exponents::from_pairs(form.product_vars.iter().map(|y| (y.clone(), 1)));
    combine_terms(
        lifted
            .into_iter()
            .chain(std::iter::once(Monomial::new(-s, all_y))),
    )
}

/// Map a solution `v` of `P` to the solution `-v` of `Q(x) = P(-x)`.
/// Returns `Q` together with the negated witness.
pub fn negate_transform(p: &Polynomial, w: &Witness) -> Result<(Polynomial, Witness)> {
    if !w.value.is_zero() || !p.evaluate(&w.assignment)?.is_zero() {
        return Err(WitnessError::InvalidInput(
            "witness does not solve the polynomial".into(),
        ));
    }
    let flipped = p.sign_flipped();
    let assignment: BTreeMap<Variable, BigInt> = w
        .assignment
        .iter()
        .map(|(k, v)| (k.clone(), -v))
        .collect();
    let value = flipped.evaluate(&assignment)?;
    if !value.is_zero() {
        return Err(WitnessError::IdentityViolated(format!(
            "negated assignment evaluates to {value}"
        )));
    }
    Ok((
        flipped,
        Witness {
            assignment,
            value,
            provenance: Provenance::Negated,
            trace: w.trace.clone(),
        },
    ))
}

pub(crate) fn product_of_powers<'a, I>(pairs: I) -> BigInt
where
    I: IntoIterator<Item = (&'a BigInt, u32)>,
{
    pairs
        .into_iter()
        .fold(BigInt::one(), |acc, (b, e)| acc * num_traits::Pow::pow(b, e))
}
