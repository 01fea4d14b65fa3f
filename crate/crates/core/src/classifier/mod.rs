//! Decision procedures for partition regularity.
//!
//! Each procedure checks the hypotheses of one known criterion and, when they
//! hold, returns a [`Verdict`] whose [`Certificate`] carries the combinatorial
//! data needed to re-check it (see [`replay`]). Procedures that do not apply
//! leave a line in the verdict trace saying which hypothesis failed.

mod exclusive;
mod literature;
mod rado;
pub mod replay;
mod rules;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Exponents, Polynomial, Variable};
use crate::witness::LevForm;

pub use exclusive::{exclusive_table, exclusive_variables, ExclusiveAssignment};
pub use rado::rado_condition;
pub use replay::replay;
pub use rules::{
    classify_affine, classify_k2, classify_lev, classify_linear, classify_multiplicative,
    classify_nonlinear,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("polynomial is not linear")]
    NotLinear,
    #[error("polynomial is not linear in each variable")]
    NotLev,
    #[error("polynomial does not have exactly two monomials")]
    NotTwoMonomials,
    #[error("polynomial has no constant term; use the linear classifier")]
    NoConstantTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    PartitionRegular,
    NotPartitionRegular,
    Unknown,
}

impl Status {
    pub fn code(self) -> &'static str {
        match self {
            Status::PartitionRegular => "PR",
            Status::NotPartitionRegular => "NOT_PR",
            Status::Unknown => "UNKNOWN",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        [
            Status::PartitionRegular,
            Status::NotPartitionRegular,
            Status::Unknown,
        ]
        .into_iter()
        .find(|s| s.code() == code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Injective {
    Yes,
    No,
    Unknown,
}

impl Injective {
    pub fn code(self) -> &'static str {
        match self {
            Injective::Yes => "yes",
            Injective::No => "no",
            Injective::Unknown => "unknown",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        [Injective::Yes, Injective::No, Injective::Unknown]
            .into_iter()
            .find(|s| s.code() == code)
    }
}

/// Which criterion a certificate appeals to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Linear polynomial with a zero-sum coefficient subset.
    RadoLinear,
    /// Linear polynomial plus a nonzero constant.
    RadoAffine,
    /// `prod x_i^a_i - prod y_j^b_j` with equal subset sums of exponents.
    MultiplicativeRado,
    /// L.e.v. polynomial in the form `sum a_i x_i Q_{F_i}(y)` with a
    /// partition regular reduct.
    LevExclusive,
    /// At least `m_i` exclusive degree-one variables in every monomial.
    NonlinearExclusive,
    /// Two monomials: factor out their gcd and decide the quotient difference.
    K2Analysis,
    /// Homogeneous polynomial failing Rado's condition.
    HomogeneousNecessity,
    /// Linear polynomial failing Rado's condition.
    LinearNecessity,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::RadoLinear => "RadoLinear",
            Theorem::RadoAffine => "RadoAffine",
            Theorem::MultiplicativeRado => "MultiplicativeRado",
            Theorem::LevExclusive => "LevExclusive",
            Theorem::NonlinearExclusive => "NonlinearExclusive",
            Theorem::K2Analysis => "K2Analysis",
            Theorem::HomogeneousNecessity => "HomogeneousNecessity",
            Theorem::LinearNecessity => "LinearNecessity",
        }
    }

    pub const ALL: [Theorem; 8] = [
        Theorem::RadoLinear,
        Theorem::RadoAffine,
        Theorem::MultiplicativeRado,
        Theorem::LevExclusive,
        Theorem::NonlinearExclusive,
        Theorem::K2Analysis,
        Theorem::HomogeneousNecessity,
        Theorem::LinearNecessity,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Certificate data for the linear-in-each-variable criterion. The `form`
/// designates one exclusive variable per monomial; indices in `subset` are
/// 0-based monomial indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevPayload {
    pub form: LevForm,
    pub subset: Vec<usize>,
}

/// Certificate data for the nonlinear exclusive-variable criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonlinearPayload {
    pub coefficients: Vec<BigInt>,
    pub subset: Vec<usize>,
    pub levels: Vec<u32>,
    pub multiplicities: Vec<u32>,
    /// `chosen[i]` are the variables `x_{i,1}, ..., x_{i,m_i}`.
    pub chosen: Vec<Vec<Variable>>,
    /// NL(P) in name order: `y_1, ..., y_h`.
    pub nonlinear: Vec<Variable>,
    /// Everything else: `z_1, ..., z_r`.
    pub others: Vec<Variable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Subset {
        coefficients: Vec<BigInt>,
        subset: Vec<usize>,
    },
    Affine {
        coefficients: Vec<BigInt>,
        constant: BigInt,
        diagonal_root: Option<BigInt>,
        subset: Option<Vec<usize>>,
    },
    Multiplicative {
        left: Vec<(Variable, u32)>,
        right: Vec<(Variable, u32)>,
        /// 0-based indices into `left` / `right`; empty when no equal sums exist.
        left_subset: Vec<usize>,
        right_subset: Vec<usize>,
    },
    Lev(LevPayload),
    Nonlinear(NonlinearPayload),
    TwoMonomial {
        coefficient: BigInt,
        gcd: Exponents,
        quotients: (Exponents, Exponents),
        inner: Option<Box<Certificate>>,
    },
    Necessity {
        coefficients: Vec<BigInt>,
        degree: u32,
    },
    /// Verdict obtained for `flipped(x) = P(-x)` and transported to Z.
    Negated {
        flipped: Polynomial,
        sign_map: BTreeMap<Variable, i8>,
        inner: Box<Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub theorem: Theorem,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ring {
    #[default]
    Naturals,
    Integers,
}

impl Ring {
    pub fn code(self) -> &'static str {
        match self {
            Ring::Naturals => "N",
            Ring::Integers => "Z",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "N" => Some(Ring::Naturals),
            "Z" => Some(Ring::Integers),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub injective: Injective,
    pub certificate: Option<Certificate>,
    /// Hypothesis checks that failed along the way.
    pub trace: Vec<String>,
    /// Facts surfaced for information only; never used as proof.
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status, injective: Injective, certificate: Certificate) -> Self {
        Verdict {
            status,
            injective,
            certificate: Some(certificate),
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn unknown() -> Self {
        Verdict {
            status: Status::Unknown,
            injective: Injective::Unknown,
            certificate: None,
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn theorem(&self) -> Option<Theorem> {
        self.certificate.as_ref().map(|c| c.theorem)
    }

    fn with_trace(mut self, mut trace: Vec<String>) -> Self {
        trace.append(&mut self.trace);
        self.trace = trace;
        self
    }
}

/// Run every procedure in order and return the first conclusive verdict.
///
/// Order: linear, two-monomial, multiplicative, l.e.v., nonlinear, then the
/// homogeneous necessity check. Falls back to `Unknown`.
pub fn classify(p: &Polynomial) -> Verdict {
    let mut trace = Vec::new();
    let mut verdict = dispatch(p, &mut trace).with_trace(trace);
    verdict.notes.extend(literature::notes_for(p));
    verdict
}

fn dispatch(p: &Polynomial, trace: &mut Vec<String>) -> Verdict {
    if p.is_linear() {
        return rules::classify_linear(p).expect("checked linear");
    }
    trace.push("linear: not all monomials have degree 1".into());
    if p.len() == 2 {
        if let Some(v) = rules::k2_traced(p, trace) {
            return v;
        }
    } else {
        trace.push(format!("two-monomial: polynomial has {} monomials", p.len()));
    }
    if let Some(v) = rules::multiplicative_traced(p, trace) {
        return v;
    }
    if p.is_lev() {
        if let Some(v) = rules::lev_traced(p, trace) {
            return v;
        }
    } else {
        trace.push("lev: some variable has degree >= 2".into());
    }
    if let Some(v) = rules::nonlinear_traced(p, trace) {
        return v;
    }
    if let Some(d) = p.homogeneous_degree() {
        if rado_condition(&p.coefficients()).is_none() {
            return Verdict::new(
                Status::NotPartitionRegular,
                Injective::No,
                Certificate {
                    theorem: Theorem::HomogeneousNecessity,
                    payload: Payload::Necessity {
                        coefficients: p.coefficients(),
                        degree: d,
                    },
                },
            );
        }
        trace.push(format!(
            "homogeneous-necessity: homogeneous of degree {d} but Rado's condition holds"
        ));
    } else {
        trace.push("homogeneous-necessity: polynomial is not homogeneous".into());
    }
    Verdict::unknown()
}

/// [`classify`] over the chosen ring. Over Z a polynomial is reported
/// partition regular when it is so over N, or when `Q(x) = P(-x)` is
/// partition regular over N (negating a monochromatic solution of `Q`).
pub fn classify_in(p: &Polynomial, ring: Ring) -> Verdict {
    let base = classify(p);
    if ring == Ring::Naturals {
        return base;
    }
    if base.status == Status::PartitionRegular {
        let mut v = base;
        v.notes
            .push("partition regular on N, hence on Z by restricting colorings".into());
        return v;
    }
    let flipped = p.sign_flipped();
    let mut trace = base.trace.clone();
    if flipped != *p {
        let w = classify(&flipped);
        if w.status == Status::PartitionRegular {
            let inner = w.certificate.clone().expect("PR verdicts are certified");
            let sign_map = p.variables().into_iter().map(|v| (v, -1)).collect();
            let mut v = Verdict::new(
                Status::PartitionRegular,
                w.injective,
                Certificate {
                    theorem: inner.theorem,
                    payload: Payload::Negated {
                        flipped,
                        sign_map,
                        inner: Box::new(inner),
                    },
                },
            );
            v.trace = trace;
            v.notes = base.notes;
            v.notes
                .push("partition regular on Z via the negation map x -> -x".into());
            return v;
        }
        trace.push(format!(
            "negation: P(-x) = {flipped} is not certified partition regular on N"
        ));
    } else {
        trace.push("negation: every monomial has even degree, P(-x) = P(x)".into());
    }
    if base.status == Status::NotPartitionRegular && p.is_homogeneous() {
        let mut v = base;
        v.notes.push(
            "homogeneous: the necessity of Rado's condition holds on Z as well"
                .into(),
        );
        return v;
    }
    let mut v = Verdict::unknown();
    v.trace = trace;
    let reason = base.theorem().map_or("", Theorem::name);
    if base.status == Status::NotPartitionRegular {
        let note = format!(
            "not partition regular on N ({reason}); this does not transfer to Z for non-homogeneous polynomials"
        );
        v.notes = base.notes;
        v.notes.push(note);
    } else {
        v.notes = base.notes;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(s: &str) -> Verdict {
        classify(&s.parse().unwrap())
    }

    #[test]
    fn corpus_style_verdicts() {
        let v = verdict("x1 + x2 - y1*y2");
        assert_eq!(v.status, Status::PartitionRegular);
        assert_eq!(v.theorem(), Some(Theorem::LevExclusive));
        assert_eq!(v.injective, Injective::Yes);

        let v = verdict("t1*t2*x^2 + t3*t4*y^2 - t5*t6*z^2");
        assert_eq!(v.theorem(), Some(Theorem::NonlinearExclusive));

        let v = verdict("x*y + x*z - y*z");
        assert_eq!(v.status, Status::Unknown);
        assert!(!v.notes.is_empty());

        let v = verdict("x + y - z^2");
        assert_eq!(v.status, Status::Unknown);
        assert!(v.trace.iter().any(|t| t.contains("degree 1")), "{:?}", v.trace);

        let v = verdict("2*x^2 - 3*y^2");
        assert_eq!(v.status, Status::NotPartitionRegular);
        assert_eq!(v.theorem(), Some(Theorem::HomogeneousNecessity));

        let v = verdict("x^2 + y^2 - z^2");
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn single_monomial_is_not_pr() {
        let v = verdict("x*y");
        assert_eq!(v.status, Status::NotPartitionRegular);
        assert_eq!(v.theorem(), Some(Theorem::HomogeneousNecessity));
    }

    #[test]
    fn integers_via_negation() {
        let p: Polynomial = "x1*y1 + x2*y2 + x3".parse().unwrap();
        assert_eq!(classify(&p).status, Status::Unknown);
        let v = classify_in(&p, Ring::Integers);
        assert_eq!(v.status, Status::PartitionRegular);
        match &v.certificate.as_ref().unwrap().payload {
            Payload::Negated {
                flipped, sign_map, ..
            } => {
                assert_eq!(flipped.to_string(), "x1*y1 + x2*y2 - x3");
                assert!(sign_map.values().all(|&s| s == -1));
            }
            other => panic!("unexpected payload {other:?}"),
        }
        assert!(replay(&p, v.certificate.as_ref().unwrap()).is_ok());
    }

    #[test]
    fn integers_keep_homogeneous_negative() {
        let p: Polynomial = "x + y - 3*z".parse().unwrap();
        let v = classify_in(&p, Ring::Integers);
        assert_eq!(v.status, Status::NotPartitionRegular);
        let q: Polynomial = "x^2*y + y^3 + 5*z".parse().unwrap();
        assert_eq!(classify_in(&q, Ring::Integers).status, Status::Unknown);
    }
}
