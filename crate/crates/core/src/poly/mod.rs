//! Canonical multivariate integer polynomials.
//!
//! A [`Polynomial`] is a non-empty sum of [`Monomial`]s with distinct exponent
//! maps and no constant term. Monomials are kept in lexicographic order: the
//! variables are sorted by name and, at the first variable where two exponent
//! maps differ, the one with the larger exponent comes first. This keeps the
//! monomial indices stable (`x + y - z^2` has the square as its third
//! monomial) and makes printing deterministic.

mod degree;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use degree::{DegreeProfile, ReductForm};
pub use parse::{parse, parse_affine, AffinePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("constant term {constant} is not allowed (polynomials must have zero constant term)")]
    ConstantTerm { constant: BigInt },
    #[error("all terms cancel; the zero polynomial is not accepted")]
    EmptyPolynomial,
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(Variable),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// A variable name: ASCII letter followed by letters, digits or underscores.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if valid {
            Ok(Variable(name))
        } else {
            Err(PolyError::InvalidVariable(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Variable {
    type Error = PolyError;

    fn try_from(value: String) -> Result<Self> {
        Variable::new(value)
    }
}

impl From<Variable> for String {
    fn from(v: Variable) -> String {
        v.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exponent map of a monic monomial. Zero exponents are never stored.
///
/// The `Ord` implementation is the canonical monomial order described in the
/// module docs, so `a < b` means `a` is printed before `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponents(BTreeMap<Variable, u32>);

impl Exponents {
    pub fn new() -> Self {
        Exponents(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut e = Exponents::new();
        for (v, d) in pairs {
            e.add(&v, d);
        }
        e
    }

    pub fn get(&self, var: &Variable) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn add(&mut self, var: &Variable, exp: u32) {
        if exp == 0 {
            return;
        }
        *self.0.entry(var.clone()).or_insert(0) += exp;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, u32)> {
        self.0.iter().map(|(v, &d)| (v, d))
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.0.keys()
    }

    pub fn contains(&self, var: &Variable) -> bool {
        self.0.contains_key(var)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Exponent-wise minimum.
    pub fn gcd(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .filter_map(|(v, &d)| {
                    let e = other.get(v).min(d);
                    (e > 0).then(|| (v.clone(), e))
                })
                .collect(),
        )
    }

    /// Whether `self` divides `other`, i.e. exponent-wise `<=`.
    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().all(|(v, &d)| other.get(v) >= d)
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide.
    pub fn quotient(&self, divisor: &Exponents) -> Option<Exponents> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Exponents(
            self.0
                .iter()
                .filter_map(|(v, &d)| {
                    let e = d - divisor.get(v);
                    (e > 0).then(|| (v.clone(), e))
                })
                .collect(),
        ))
    }

    pub fn product(&self, other: &Exponents) -> Exponents {
        let mut out = self.clone();
        for (v, d) in other.iter() {
            out.add(v, d);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Exponents {
        if k == 0 {
            return Exponents::new();
        }
        Exponents(self.0.iter().map(|(v, &d)| (v.clone(), d * k)).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        let vars: BTreeSet<&Variable> = self.0.keys().chain(other.0.keys()).collect();
        for v in vars {
            match other.get(v).cmp(&self.get(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, d)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *d == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{d}")?;
            }
        }
        Ok(())
    }
}

/// A coefficient times a monic monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coefficient: BigInt,
    pub exponents: Exponents,
}

impl Monomial {
    pub fn new(coefficient: impl Into<BigInt>, exponents: Exponents) -> Self {
        Monomial {
            coefficient: coefficient.into(),
            exponents,
        }
    }

    pub fn monic(exponents: Exponents) -> Self {
        Monomial::new(1, exponents)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Monomial::new(c, Exponents::new())
    }

    pub fn var(v: &Variable) -> Self {
        Monomial::monic(Exponents::from_pairs([(v.clone(), 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.exponents.degree()
    }

    pub fn degree_of(&self, var: &Variable) -> u32 {
        self.exponents.get(var)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            coefficient: &self.coefficient * &other.coefficient,
            exponents: self.exponents.product(&other.exponents),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            coefficient: Pow::pow(&self.coefficient, k),
            exponents: self.exponents.pow(k),
        }
    }

    /// Value of the monic part at `assignment`.
    pub fn evaluate_monic(&self, assignment: &BTreeMap<Variable, BigInt>) -> Result<BigInt> {
        let mut acc = BigInt::one();
        for (v, d) in self.exponents.iter() {
            let x = assignment
                .get(v)
                .ok_or_else(|| PolyError::MissingVariable(v.clone()))?;
            acc *= Pow::pow(x, d);
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        if self.exponents.is_empty() {
            return write!(f, "{c}");
        }
        if c.is_one() {
            write!(f, "{}", self.exponents)
        } else if (-c).is_one() {
            write!(f, "-{}", self.exponents)
        } else {
            write!(f, "{c}*{}", self.exponents)
        }
    }
}

/// Greatest common divisor of two monic monomials (coefficients are ignored).
pub fn monomial_gcd(m1: &Monomial, m2: &Monomial) -> Monomial {
    Monomial::monic(m1.exponents.gcd(&m2.exponents))
}

/// Combine like terms and drop zero coefficients; the result is in canonical
/// order and may be empty or contain a constant monomial.
pub fn combine_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Vec<Monomial> {
    let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.exponents).or_insert_with(BigInt::zero) += t.coefficient;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Monomial::new(c, e))
        .collect()
}

/// Render a list of terms the same way [`Polynomial`] prints itself.
pub fn format_terms(terms: &[Monomial]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let negative = t.coefficient.is_negative();
        let abs = Monomial::new(t.coefficient.abs(), t.exponents.clone());
        match (k, negative) {
            (0, false) => out.push_str(&abs.to_string()),
            (0, true) => {
                out.push('-');
                out.push_str(&abs.to_string());
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&abs.to_string());
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&abs.to_string());
            }
        }
    }
    out
}

/// A canonical polynomial with integer coefficients and zero constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    monomials: Vec<Monomial>,
}

impl Polynomial {
    /// Canonicalize `terms` into a polynomial.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Result<Self> {
        let monomials = combine_terms(terms);
        if monomials.is_empty() {
            return Err(PolyError::EmptyPolynomial);
        }
        if let Some(c) = monomials.iter().find(|m| m.exponents.is_empty()) {
            return Err(PolyError::ConstantTerm {
                constant: c.coefficient.clone(),
            });
        }
        Ok(Polynomial { monomials })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Number of monomials (k).
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        self.monomials.iter().map(|m| m.coefficient.clone()).collect()
    }

    /// V(P), sorted by name.
    pub fn variables(&self) -> BTreeSet<Variable> {
        self.monomials
            .iter()
            .flat_map(|m| m.exponents.variables().cloned())
            .collect()
    }

    /// Indices of the monomials in which `var` occurs.
    pub fn support_of(&self, var: &Variable) -> Vec<usize> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| m.exponents.contains(var))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        self.monomials.iter().all(|m| m.degree() == 1)
    }

    /// Linear in each variable: every variable has degree one.
    pub fn is_lev(&self) -> bool {
        self.monomials
            .iter()
            .all(|m| m.exponents.iter().all(|(_, d)| d == 1))
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.monomials[0].degree();
        self.monomials.iter().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }

    pub fn reduct(&self) -> ReductForm {
        ReductForm::of(self)
    }

    /// Exact value of the polynomial at `assignment`.
    pub fn evaluate(&self, assignment: &BTreeMap<Variable, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for m in &self.monomials {
            total += &m.coefficient * m.evaluate_monic(assignment)?;
        }
        Ok(total)
    }

    /// Replace variables by monomials and expand. Unmapped variables are kept.
    /// The result is canonical but may be empty or contain a constant.
    pub fn substitute(&self, map: &BTreeMap<Variable, Monomial>) -> Vec<Monomial> {
        combine_terms(self.monomials.iter().map(|m| {
            let mut acc = Monomial::constant(m.coefficient.clone());
            for (v, d) in m.exponents.iter() {
                let image = map.get(v).cloned().unwrap_or_else(|| Monomial::var(v));
                acc = acc.mul(&image.pow(d));
            }
            acc
        }))
    }

    /// The polynomial `Q` with `Q(-x) = P(x)`: monomials of odd total degree
    /// change sign.
    pub fn sign_flipped(&self) -> Polynomial {
        Polynomial {
            monomials: self
                .monomials
                .iter()
                .map(|m| {
                    let c = if m.degree() % 2 == 1 {
                        -m.coefficient.clone()
                    } else {
                        m.coefficient.clone()
                    };
                    Monomial::new(c, m.exponents.clone())
                })
                .collect(),
        }
    }

    /// `-P`.
    pub fn negated(&self) -> Polynomial {
        Polynomial {
            monomials: self
                .monomials
                .iter()
                .map(|m| Monomial::new(-m.coefficient.clone(), m.exponents.clone()))
                .collect(),
        }
    }

    /// Rename variables. Fails if two variables collapse onto one and cancel.
    pub fn rename(&self, map: &BTreeMap<Variable, Variable>) -> Result<Polynomial> {
        let subst = map
            .iter()
            .map(|(k, v)| (k.clone(), Monomial::var(v)))
            .collect();
        Polynomial::from_terms(self.substitute(&subst))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.monomials))
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
