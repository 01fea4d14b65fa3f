use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{
    exclusive_table, rado_condition, Certificate, ClassifyError, Injective, LevPayload,
    NonlinearPayload, Payload, Status, Theorem, Verdict,
};
use crate::poly::{monomial_gcd, AffinePolynomial, Exponents, Monomial, Polynomial, Variable};
use crate::witness::to_lev_form;

fn one_based(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn list(v: &[BigInt]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(","))
}

/// Rado's theorem: a linear polynomial is partition regular iff some nonempty
/// set of its coefficients sums to zero. Every such polynomial except the
/// two-variable `c*(x - y)` is also injectively partition regular.
pub fn classify_linear(p: &Polynomial) -> Result<Verdict, ClassifyError> {
    if !p.is_linear() {
        return Err(ClassifyError::NotLinear);
    }
    let coefficients = p.coefficients();
    Ok(match rado_condition(&coefficients) {
        Some(subset) => {
            let injective = if p.len() == 2 {
                Injective::No
            } else {
                Injective::Yes
            };
            Verdict::new(
                Status::PartitionRegular,
                injective,
                Certificate {
                    theorem: Theorem::RadoLinear,
                    payload: Payload::Subset {
                        coefficients,
                        subset,
                    },
                },
            )
        }
        None => Verdict::new(
            Status::NotPartitionRegular,
            Injective::No,
            Certificate {
                theorem: Theorem::LinearNecessity,
                payload: Payload::Necessity {
                    coefficients,
                    degree: 1,
                },
            },
        ),
    })
}

/// Rado's criterion for `sum a_i x_i + c` with `c != 0`: partition regular iff
/// the diagonal `P(t, ..., t) = 0` has a root `t >= 1`, or an integer root
/// together with Rado's condition.
pub fn classify_affine(a: &AffinePolynomial) -> Result<Verdict, ClassifyError> {
    if a.constant.is_zero() {
        return Err(ClassifyError::NoConstantTerm);
    }
    if !a.part.is_linear() {
        return Err(ClassifyError::NotLinear);
    }
    let coefficients = a.part.coefficients();
    let sum: BigInt = coefficients.iter().sum();
    let mut trace = Vec::new();
    let diagonal_root = if sum.is_zero() {
        trace.push("affine: coefficients sum to 0, so the diagonal has no root".to_string());
        None
    } else {
        let (q, r) = (-&a.constant).div_rem(&sum);
        if r.is_zero() {
            Some(q)
        } else {
            trace.push(format!(
                "affine: diagonal root {}/{} is not an integer",
                -&a.constant,
                sum
            ));
            None
        }
    };
    let subset = rado_condition(&coefficients);
    let status = match (&diagonal_root, &subset) {
        (Some(t), _) if t.is_positive() => Status::PartitionRegular,
        (Some(_), Some(_)) => Status::PartitionRegular,
        (Some(t), None) => {
            trace.push(format!(
                "affine: diagonal root {t} is not positive and Rado's condition fails"
            ));
            Status::NotPartitionRegular
        }
        (None, _) => Status::NotPartitionRegular,
    };
    let injective = if status == Status::PartitionRegular {
        Injective::Unknown
    } else {
        Injective::No
    };
    let mut v = Verdict::new(
        status,
        injective,
        Certificate {
            theorem: Theorem::RadoAffine,
            payload: Payload::Affine {
                coefficients,
                constant: a.constant.clone(),
                diagonal_root,
                subset,
            },
        },
    );
    v.trace = trace;
    Ok(v)
}

/// Split a two-monomial polynomial `c*M1 - c*M2` into its monic halves,
/// positive side first.
fn difference_of_monomials(p: &Polynomial) -> Option<(BigInt, Exponents, Exponents)> {
    let [m1, m2] = p.monomials() else {
        return None;
    };
    if m1.coefficient != -m2.coefficient.clone() {
        return None;
    }
    let (pos, neg) = if m1.coefficient.is_positive() {
        (m1, m2)
    } else {
        (m2, m1)
    };
    Some((
        pos.coefficient.clone(),
        pos.exponents.clone(),
        neg.exponents.clone(),
    ))
}

pub(super) fn multiplicative_traced(p: &Polynomial, trace: &mut Vec<String>) -> Option<Verdict> {
    let Some((_, left, right)) = difference_of_monomials(p) else {
        trace.push("multiplicative: not of the form c*M1 - c*M2".into());
        return None;
    };
    if left.variables().any(|v| right.contains(v)) {
        trace.push("multiplicative: the two monomials share a variable".into());
        return None;
    }
    let left: Vec<(Variable, u32)> = left.iter().map(|(v, d)| (v.clone(), d)).collect();
    let right: Vec<(Variable, u32)> = right.iter().map(|(v, d)| (v.clone(), d)).collect();
    let combined: Vec<BigInt> = left
        .iter()
        .map(|(_, d)| BigInt::from(*d))
        .chain(right.iter().map(|(_, d)| -BigInt::from(*d)))
        .collect();
    let n = left.len();
    let (status, injective, left_subset, right_subset) = match rado_condition(&combined) {
        // exponents are positive on the left and negative on the right, so a
        // zero-sum subset always meets both sides
        Some(j) => {
            let (l, r): (Vec<usize>, Vec<usize>) = j.into_iter().partition(|&i| i < n);
            let injective = if left.len() + right.len() >= 3 {
                Injective::Yes
            } else {
                Injective::No
            };
            (
                Status::PartitionRegular,
                injective,
                l,
                r.into_iter().map(|i| i - n).collect(),
            )
        }
        None => (Status::NotPartitionRegular, Injective::No, vec![], vec![]),
    };
    Some(Verdict::new(
        status,
        injective,
        Certificate {
            theorem: Theorem::MultiplicativeRado,
            payload: Payload::Multiplicative {
                left,
                right,
                left_subset,
                right_subset,
            },
        },
    ))
}

/// `prod x_i^a_i - prod y_j^b_j` (disjoint variables) is partition regular iff
/// some nonempty subset sum of the `a_i` equals one of the `b_j`. Returns
/// `None` when `p` is not of that shape.
pub fn classify_multiplicative(p: &Polynomial) -> Option<Verdict> {
    multiplicative_traced(p, &mut Vec::new())
}

pub(super) fn lev_traced(p: &Polynomial, trace: &mut Vec<String>) -> Option<Verdict> {
    let k = p.len();
    if k == 2 {
        return multiplicative_traced(p, trace);
    }
    if k < 3 {
        trace.push(format!("lev: needs at least 3 monomials, has {k}"));
        return None;
    }
    let table = exclusive_table(p);
    if let Some(i) = table.per_monomial.iter().position(Vec::is_empty) {
        trace.push(format!(
            "lev: monomial {} ({}) has no exclusive variable",
            i + 1,
            Monomial::monic(p.monomials()[i].exponents.clone())
        ));
        return None;
    }
    let coefficients = p.coefficients();
    let Some(subset) = rado_condition(&coefficients) else {
        trace.push(format!(
            "lev: Rado's condition fails for coefficients {}",
            list(&coefficients)
        ));
        return None;
    };
    let form = to_lev_form(p, &table).expect("l.e.v. with a complete exclusive table");
    trace.push(format!(
        "lev: every monomial has an exclusive variable; coefficients {} have zero-sum subset {}",
        list(&coefficients),
        one_based(&subset)
    ));
    Some(Verdict::new(
        Status::PartitionRegular,
        Injective::Yes,
        Certificate {
            theorem: Theorem::LevExclusive,
            payload: Payload::Lev(LevPayload { form, subset }),
        },
    ))
}

/// L.e.v. polynomials with at least three monomials, an exclusive variable in
/// every monomial and Rado's condition are injectively partition regular.
/// Two-monomial polynomials are handed to [`classify_multiplicative`].
pub fn classify_lev(p: &Polynomial) -> Result<Option<Verdict>, ClassifyError> {
    if !p.is_lev() {
        return Err(ClassifyError::NotLev);
    }
    Ok(lev_traced(p, &mut Vec::new()))
}

pub(super) fn nonlinear_traced(p: &Polynomial, trace: &mut Vec<String>) -> Option<Verdict> {
    let k = p.len();
    if k < 3 {
        trace.push(format!("nonlinear: needs at least 3 monomials, has {k}"));
        return None;
    }
    let coefficients = p.coefficients();
    let Some(subset) = rado_condition(&coefficients) else {
        trace.push(format!(
            "nonlinear: Rado's condition fails for coefficients {}",
            list(&coefficients)
        ));
        return None;
    };
    let profile = p.degree_profile();
    let table = exclusive_table(p);
    let mut failed = false;
    for (i, need) in profile.multiplicities.iter().enumerate() {
        let have = table.degree_one[i].len();
        if have < *need as usize {
            failed = true;
            let all: Vec<String> = table.per_monomial[i]
                .iter()
                .map(|v| format!("{v} (degree {})", p.monomials()[i].degree_of(v)))
                .collect();
            trace.push(format!(
                "nonlinear: monomial {} ({}) needs {} exclusive variable(s) of degree 1, has {}; exclusive: [{}]",
                i + 1,
                Monomial::monic(p.monomials()[i].exponents.clone()),
                need,
                have,
                all.join(", ")
            ));
        }
    }
    if failed {
        return None;
    }
    let chosen: Vec<Vec<Variable>> = table
        .degree_one
        .iter()
        .zip(&profile.multiplicities)
        .map(|(vars, &m)| vars[..m as usize].to_vec())
        .collect();
    let nonlinear: Vec<Variable> = profile.nonlinear.iter().cloned().collect();
    let others: Vec<Variable> = p
        .variables()
        .into_iter()
        .filter(|v| !profile.nonlinear.contains(v) && !chosen.iter().flatten().any(|c| c == v))
        .collect();
    trace.push(format!(
        "nonlinear: multiplicities m = {}; coefficients {} have zero-sum subset {}",
        list(&profile.multiplicities.iter().map(|&m| BigInt::from(m)).collect::<Vec<_>>()),
        list(&coefficients),
        one_based(&subset)
    ));
    Some(Verdict::new(
        Status::PartitionRegular,
        Injective::Yes,
        Certificate {
            theorem: Theorem::NonlinearExclusive,
            payload: Payload::Nonlinear(NonlinearPayload {
                coefficients,
                subset,
                levels: profile.levels,
                multiplicities: profile.multiplicities,
                chosen,
                nonlinear,
                others,
            }),
        },
    ))
}

/// At least three monomials, Rado's condition, and in every monomial `i` at
/// least `m_i = max(1, l_i)` exclusive variables of degree one.
pub fn classify_nonlinear(p: &Polynomial) -> Option<Verdict> {
    nonlinear_traced(p, &mut Vec::new())
}

pub(super) fn k2_traced(p: &Polynomial, trace: &mut Vec<String>) -> Option<Verdict> {
    let Some((coefficient, m1, m2)) = difference_of_monomials(p) else {
        trace.push(format!(
            "two-monomial: coefficients {} are not of the form (c, -c)",
            list(&p.coefficients())
        ));
        return None;
    };
    let gcd = monomial_gcd(&Monomial::monic(m1.clone()), &Monomial::monic(m2.clone())).exponents;
    let q1 = m1.quotient(&gcd).expect("gcd divides");
    let q2 = m2.quotient(&gcd).expect("gcd divides");
    if q1.is_empty() || q2.is_empty() {
        trace.push("two-monomial: one monomial divides the other".into());
        return None;
    }
    let note = format!("P = ({gcd})*({q1} - {q2}); P is partition regular iff {q1} - {q2} is");
    let single = |q: &Exponents| q.len() == 1 && q.degree() == 1;
    let reduced = Polynomial::from_terms([Monomial::monic(q1.clone()), Monomial::new(-1, q2.clone())])
        .expect("coprime quotients do not cancel");
    let (status, injective, inner) = if single(&q1) && single(&q2) {
        (Status::PartitionRegular, Injective::No, None)
    } else {
        let inner = multiplicative_traced(&reduced, trace).expect("coprime difference of monomials");
        if gcd.is_empty() {
            return Some(inner);
        }
        (inner.status, inner.injective, inner.certificate.map(Box::new))
    };
    let mut v = Verdict::new(
        status,
        injective,
        Certificate {
            theorem: Theorem::K2Analysis,
            payload: Payload::TwoMonomial {
                coefficient,
                gcd,
                quotients: (q1, q2),
                inner,
            },
        },
    );
    v.notes.push(note);
    Some(v)
}

/// Two monomials `c*M1 - c*M2`: with `D = gcd(M1, M2)` and `Q_i = M_i / D`,
/// `P` is partition regular iff `Q1 - Q2` is. `Q1 - Q2 = x_i - x_j` is
/// partition regular but not injectively; every other case is decided by the
/// multiplicative criterion.
pub fn classify_k2(p: &Polynomial) -> Result<Option<Verdict>, ClassifyError> {
    if p.len() != 2 {
        return Err(ClassifyError::NotTwoMonomials);
    }
    Ok(k2_traced(p, &mut Vec::new()))
}
