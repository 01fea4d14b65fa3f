//! Independent re-validation of certificates.
//!
//! Nothing here calls back into the classifier's own procedures: degrees,
//! exclusivity and subset sums are recomputed directly from the exponent maps
//! of the polynomial, and negative claims are re-checked by exhaustive subset
//! enumeration.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Certificate, Payload, Theorem};
use crate::poly::{Exponents, Polynomial, Variable};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Largest list for which negative claims are re-checked exhaustively.
const EXHAUSTIVE_LIMIT: usize = 22;

fn zero_sum_exists(values: &[BigInt]) -> Result<bool, String> {
    ensure(values.len() <= EXHAUSTIVE_LIMIT, || {
        format!("{} coefficients: too many to enumerate", values.len())
    })?;
    Ok((1u64..(1u64 << values.len())).any(|mask| {
        values
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a)
            .sum::<BigInt>()
            .is_zero()
    }))
}

fn check_subset(coefficients: &[BigInt], subset: &[usize]) -> Check {
    ensure(!subset.is_empty(), || "empty subset".into())?;
    let distinct: BTreeSet<usize> = subset.iter().copied().collect();
    ensure(distinct.len() == subset.len(), || "repeated index".into())?;
    ensure(subset.iter().all(|&i| i < coefficients.len()), || {
        "subset index out of range".into()
    })?;
    let s: BigInt = subset.iter().map(|&i| &coefficients[i]).sum();
    ensure(s.is_zero(), || format!("subset sums to {s}, not 0"))
}

fn check_coefficients(p: &Polynomial, coefficients: &[BigInt]) -> Check {
    ensure(p.coefficients() == coefficients, || {
        "payload coefficients differ from the polynomial".into()
    })
}

/// Re-check `cert` against `p`. `Ok(())` means every hypothesis holds.
pub fn replay(p: &Polynomial, cert: &Certificate) -> Check {
    match (&cert.theorem, &cert.payload) {
        (_, Payload::Negated {
            flipped,
            sign_map,
            inner,
        }) => {
            ensure(*flipped == p.sign_flipped(), || {
                "flipped polynomial is not P(-x)".into()
            })?;
            let vars: BTreeSet<&Variable> = sign_map.keys().collect();
            ensure(
                vars == p.variables().iter().collect() && sign_map.values().all(|&s| s == -1),
                || "sign map must negate every variable".into(),
            )?;
            ensure(inner.theorem == cert.theorem, || "theorem tag mismatch".into())?;
            replay(flipped, inner)
        }
        (Theorem::RadoLinear, Payload::Subset {
            coefficients,
            subset,
        }) => {
            ensure(p.monomials().iter().all(|m| m.exponents.degree() == 1), || {
                "not linear".into()
            })?;
            check_coefficients(p, coefficients)?;
            check_subset(coefficients, subset)
        }
        (Theorem::LinearNecessity, Payload::Necessity {
            coefficients,
            degree,
        }) => {
            ensure(*degree == 1 && p.monomials().iter().all(|m| m.exponents.degree() == 1), || {
                "not linear".into()
            })?;
            check_coefficients(p, coefficients)?;
            ensure(!zero_sum_exists(coefficients)?, || "a zero-sum subset exists".into())
        }
        (Theorem::HomogeneousNecessity, Payload::Necessity {
            coefficients,
            degree,
        }) => {
            ensure(p.monomials().iter().all(|m| m.exponents.degree() == *degree), || {
                format!("not homogeneous of degree {degree}")
            })?;
            check_coefficients(p, coefficients)?;
            ensure(!zero_sum_exists(coefficients)?, || "a zero-sum subset exists".into())
        }
        (Theorem::RadoAffine, Payload::Affine {
            coefficients,
            constant,
            diagonal_root,
            subset,
        }) => {
            check_coefficients(p, coefficients)?;
            ensure(!constant.is_zero(), || "constant term is zero".into())?;
            let sum: BigInt = coefficients.iter().sum();
            match diagonal_root {
                Some(t) => {
                    ensure((&sum * t + constant).is_zero(), || {
                        format!("{t} is not a diagonal root")
                    })?;
                    if !t.is_positive() {
                        match subset {
                            Some(j) => check_subset(coefficients, j)?,
                            None => ensure(!zero_sum_exists(coefficients)?, || {
                                "a zero-sum subset exists".into()
                            })?,
                        }
                    }
                    Ok(())
                }
                None => ensure(sum.is_zero() || !(constant % &sum).is_zero(), || {
                    "the diagonal has an integer root".into()
                }),
            }
        }
        (Theorem::MultiplicativeRado, Payload::Multiplicative {
            left,
            right,
            left_subset,
            right_subset,
        }) => {
            check_difference_shape(p, left, right)?;
            let l: Vec<BigInt> = left.iter().map(|(_, d)| BigInt::from(*d)).collect();
            let r: Vec<BigInt> = right.iter().map(|(_, d)| BigInt::from(*d)).collect();
            if left_subset.is_empty() && right_subset.is_empty() {
                let combined: Vec<BigInt> = l.iter().cloned().chain(r.iter().map(|b| -b)).collect();
                ensure(!zero_sum_exists(&combined)?, || {
                    "equal subset sums exist".into()
                })
            } else {
                ensure(!left_subset.is_empty() && !right_subset.is_empty(), || {
                    "both subsets must be nonempty".into()
                })?;
                let pick = |v: &[BigInt], s: &[usize]| -> Result<BigInt, String> {
                    let uniq: BTreeSet<usize> = s.iter().copied().collect();
                    ensure(uniq.len() == s.len() && s.iter().all(|&i| i < v.len()), || {
                        "bad subset index".into()
                    })?;
                    Ok(s.iter().map(|&i| &v[i]).sum())
                };
                let a = pick(&l, left_subset)?;
                let b = pick(&r, right_subset)?;
                ensure(a == b, || format!("subset sums differ: {a} vs {b}"))
            }
        }
        (Theorem::LevExclusive, Payload::Lev(lev)) => {
            let form = &lev.form;
            let k = p.len();
            ensure(k >= 3, || "fewer than 3 monomials".into())?;
            ensure(
                p.monomials().iter().all(|m| m.exponents.iter().all(|(_, d)| d == 1)),
                || "not linear in each variable".into(),
            )?;
            check_coefficients(p, &form.coefficients)?;
            ensure(form.linear_vars.len() == k && form.index_sets.len() == k, || {
                "form size mismatch".into()
            })?;
            let designated: BTreeSet<&Variable> = form.linear_vars.iter().collect();
            ensure(designated.len() == k, || "designated variables repeat".into())?;
            let expected_y: Vec<Variable> = p
                .variables()
                .into_iter()
                .filter(|v| !designated.contains(v))
                .collect();
            ensure(expected_y == form.product_vars, || {
                "product variables are not V(P) minus the designated ones".into()
            })?;
            for (i, m) in p.monomials().iter().enumerate() {
                let x = &form.linear_vars[i];
                for (j, other) in p.monomials().iter().enumerate() {
                    ensure((other.exponents.get(x) >= 1) == (i == j), || {
                        format!("{x} is not exclusive to monomial {}", i + 1)
                    })?;
                }
                let mut rebuilt = Exponents::from_pairs([(x.clone(), 1)]);
                for &j in &form.index_sets[i] {
                    let y = form
                        .product_vars
                        .get(j)
                        .ok_or_else(|| "F index out of range".to_string())?;
                    rebuilt.add(y, 1);
                }
                ensure(rebuilt == m.exponents, || {
                    format!("monomial {} is not x_i * Q_F_i", i + 1)
                })?;
            }
            check_subset(&form.coefficients, &lev.subset)
        }
        (Theorem::NonlinearExclusive, Payload::Nonlinear(nl)) => {
            let k = p.len();
            ensure(k >= 3, || "fewer than 3 monomials".into())?;
            check_coefficients(p, &nl.coefficients)?;
            check_subset(&nl.coefficients, &nl.subset)?;
            // d(x) as the largest exponent over monomials
            let mut d: BTreeMap<&Variable, u32> = BTreeMap::new();
            for m in p.monomials() {
                for (v, e) in m.exponents.iter() {
                    let slot = d.entry(v).or_insert(0);
                    *slot = (*slot).max(e);
                }
            }
            let nonlinear: Vec<&Variable> =
                d.iter().filter(|(_, &e)| e >= 2).map(|(v, _)| *v).collect();
            ensure(
                nonlinear.len() == nl.nonlinear.len()
                    && nonlinear.iter().zip(&nl.nonlinear).all(|(a, b)| *a == b),
                || "NL(P) mismatch".into(),
            )?;
            ensure(nl.chosen.len() == k, || "chosen list size mismatch".into())?;
            let mut used: BTreeSet<&Variable> = BTreeSet::new();
            for (i, m) in p.monomials().iter().enumerate() {
                let level = nonlinear
                    .iter()
                    .map(|v| d[v] - m.exponents.get(v))
                    .max()
                    .unwrap_or(0);
                let need = level.max(1) as usize;
                ensure(nl.levels.get(i) == Some(&level), || {
                    format!("level of monomial {} should be {level}", i + 1)
                })?;
                ensure(nl.multiplicities.get(i) == Some(&(need as u32)), || {
                    format!("multiplicity of monomial {} should be {need}", i + 1)
                })?;
                ensure(nl.chosen[i].len() >= need, || {
                    format!("monomial {} needs {need} exclusive variables", i + 1)
                })?;
                for x in &nl.chosen[i] {
                    ensure(used.insert(x), || format!("{x} chosen twice"))?;
                    ensure(m.exponents.get(x) == 1, || {
                        format!("{x} does not have degree 1 in monomial {}", i + 1)
                    })?;
                    for (j, other) in p.monomials().iter().enumerate() {
                        ensure(j == i || !other.exponents.contains(x), || {
                            format!("{x} also occurs in monomial {}", j + 1)
                        })?;
                    }
                }
            }
            let others: Vec<Variable> = p
                .variables()
                .into_iter()
                .filter(|v| !used.contains(v) && !nonlinear.contains(&v))
                .collect();
            ensure(others == nl.others, || "z variables mismatch".into())
        }
        (Theorem::K2Analysis, Payload::TwoMonomial {
            coefficient,
            gcd,
            quotients: (q1, q2),
            inner,
        }) => {
            let [m1, m2] = p.monomials() else {
                return Err("not two monomials".into());
            };
            ensure(m1.coefficient == -m2.coefficient.clone(), || {
                "coefficients are not (c, -c)".into()
            })?;
            let (pos, neg) = if m1.coefficient.is_positive() { (m1, m2) } else { (m2, m1) };
            ensure(pos.coefficient == *coefficient, || "coefficient mismatch".into())?;
            ensure(
                gcd.product(q1) == pos.exponents && gcd.product(q2) == neg.exponents,
                || "M_i != D * Q_i".into(),
            )?;
            ensure(q1.variables().all(|v| !q2.contains(v)), || {
                "quotients share a variable".into()
            })?;
            ensure(!q1.is_empty() && !q2.is_empty(), || "a quotient is 1".into())?;
            match inner {
                None => ensure(
                    q1.len() == 1 && q1.degree() == 1 && q2.len() == 1 && q2.degree() == 1,
                    || "no inner certificate but R is not x_i - x_j".into(),
                ),
                Some(inner) => {
                    let reduced = Polynomial::from_terms([
                        crate::poly::Monomial::monic(q1.clone()),
                        crate::poly::Monomial::new(-1, q2.clone()),
                    ])
                    .map_err(|e| e.to_string())?;
                    replay(&reduced, inner)
                }
            }
        }
        (t, _) => Err(format!("payload does not match theorem {t}")),
    }
}

fn check_difference_shape(
    p: &Polynomial,
    left: &[(Variable, u32)],
    right: &[(Variable, u32)],
) -> Check {
    let [m1, m2] = p.monomials() else {
        return Err("not two monomials".into());
    };
    ensure(m1.coefficient == -m2.coefficient.clone(), || {
        "coefficients are not (c, -c)".into()
    })?;
    let (pos, neg) = if m1.coefficient.is_positive() { (m1, m2) } else { (m2, m1) };
    let l = Exponents::from_pairs(left.iter().cloned());
    let r = Exponents::from_pairs(right.iter().cloned());
    ensure(l == pos.exponents && r == neg.exponents, || {
        "payload exponents do not match the polynomial".into()
    })?;
    ensure(left.iter().all(|(v, _)| !r.contains(v)), || {
        "monomials share a variable".into()
    })
}
