//! Exhaustive enumeration of solutions in `[1, N]^V`.
//!
//! Variables are ordered by name and tuples are produced in lexicographic
//! order. When the last variable occurs in exactly one monomial it is solved
//! for instead of enumerated: writing `P = r * v^e + s` with `r`, `s` free of
//! `v`, the candidate is the positive integer `e`-th root of `-s / r`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{LiftTrace, Provenance, Result, Witness, WitnessError};
use crate::poly::{Polynomial, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest number of enumerated points accepted before giving up.
    pub max_points: u128,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_points: 50_000_000,
        }
    }
}

/// Monomials as (coefficient, [(variable position, exponent)]).
struct Compiled {
    terms: Vec<(BigInt, Option<i128>, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(p: &Polynomial, vars: &[Variable]) -> Compiled {
        let terms = p
            .monomials()
            .iter()
            .map(|m| {
                let powers = m
                    .exponents
                    .iter()
                    .map(|(v, e)| (vars.binary_search(v).expect("variable of p"), e))
                    .collect();
                (m.coefficient.clone(), m.coefficient.to_i128(), powers)
            })
            .collect();
        Compiled { terms }
    }

    fn term_i128(&self, t: usize, vals: &[u32]) -> Option<i128> {
        let (_, c, powers) = &self.terms[t];
        let mut acc = (*c)?;
        for &(i, e) in powers {
            let p = (vals[i] as i128).checked_pow(e)?;
            acc = acc.checked_mul(p)?;
        }
        Some(acc)
    }

    fn term_big(&self, t: usize, vals: &[u32]) -> BigInt {
        let (c, _, powers) = &self.terms[t];
        let mut acc = c.clone();
        for &(i, e) in powers {
            acc *= num_traits::Pow::pow(BigInt::from(vals[i]), e);
        }
        acc
    }

    /// Sum of all terms except `skip`.
    fn sum_except(&self, skip: Option<usize>, vals: &[u32]) -> BigInt {
        let fast = (0..self.terms.len())
            .filter(|&t| Some(t) != skip)
            .try_fold(0i128, |acc, t| acc.checked_add(self.term_i128(t, vals)?));
        match fast {
            Some(v) => BigInt::from(v),
            None => (0..self.terms.len())
                .filter(|&t| Some(t) != skip)
                .map(|t| self.term_big(t, vals))
                .sum(),
        }
    }

    fn is_zero_at(&self, vals: &[u32]) -> bool {
        self.sum_except(None, vals).is_zero()
    }
}

struct Solver {
    compiled: Compiled,
    /// (monomial index, exponent) of the isolated last variable.
    isolated: Option<(usize, u32)>,
    n: u32,
    injective: bool,
    width: usize,
}

impl Solver {
    /// Value of the isolated variable completing `vals[..width-1]`.
    fn solve_last(&self, vals: &mut [u32]) -> Option<u32> {
        let (t, e) = self.isolated?;
        let last = self.width - 1;
        vals[last] = 1;
        let r = self.compiled.term_big(t, vals);
        let s = self.compiled.sum_except(Some(t), vals);
        let (q, rem) = (-s).div_rem(&r);
        if !rem.is_zero() || !q.is_positive() {
            return None;
        }
        let root = q.nth_root(e);
        if num_traits::Pow::pow(&root, e) != q {
            return None;
        }
        let v = root.to_u32()?;
        (v >= 1 && v <= self.n).then_some(v)
    }

    fn run_prefix(&self, first: u32, limit: Option<usize>) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut vals = vec![0u32; self.width];
        vals[0] = first;
        self.extend(1, &mut vals, limit, &mut out);
        out
    }

    fn extend(&self, pos: usize, vals: &mut Vec<u32>, limit: Option<usize>, out: &mut Vec<Vec<u32>>) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let enumerated = if self.isolated.is_some() {
            self.width - 1
        } else {
            self.width
        };
        if pos == enumerated {
            if self.isolated.is_some() {
                match self.solve_last(vals) {
                    Some(v) => vals[pos] = v,
                    None => return,
                }
                if self.injective && vals[..pos].contains(&vals[pos]) {
                    return;
                }
                out.push(vals.clone());
            } else if self.compiled.is_zero_at(vals) {
                out.push(vals.clone());
            }
            return;
        }
        for v in 1..=self.n {
            if self.injective && vals[..pos].contains(&v) {
                continue;
            }
            vals[pos] = v;
            self.extend(pos + 1, vals, limit, out);
            if limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
    }
}

/// All solutions in `[1, n]` as value tuples over the name-sorted variables,
/// in lexicographic order, optionally stopping after `limit` of them.
pub fn solution_tuples(
    p: &Polynomial,
    n: u32,
    injective: bool,
    limit: Option<usize>,
    limits: EnumerationLimits,
) -> Result<Vec<Vec<u32>>> {
    let vars: Vec<Variable> = p.variables().into_iter().collect();
    let width = vars.len();
    if n == 0 || limit == Some(0) {
        return Ok(Vec::new());
    }
    let isolated = (width >= 2)
        .then(|| {
            let last = &vars[width - 1];
            let support = p.support_of(last);
            (support.len() == 1).then(|| (support[0], p.monomials()[support[0]].degree_of(last)))
        })
        .flatten();
    let enumerated = width - usize::from(isolated.is_some());
    let points = (n as u128).checked_pow(enumerated as u32).unwrap_or(u128::MAX);
    if points > limits.max_points {
        return Err(WitnessError::SearchSpaceTooLarge {
            points,
            bound: limits.max_points,
        });
    }
    let solver = Solver {
        compiled: Compiled::new(p, &vars),
        isolated,
        n,
        injective,
        width,
    };
    if enumerated == 0 {
        unreachable!("a polynomial has at least one variable");
    }
    let batch = (rayon::current_num_threads() * 2).max(1) as u32;
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut start = 1u32;
    while start <= n {
        let end = n.min(start.saturating_add(batch - 1));
        let chunks: Vec<Vec<Vec<u32>>> = (start..=end)
            .into_par_iter()
            .map(|first| solver.run_prefix(first, limit))
            .collect();
        for c in chunks {
            out.extend(c);
        }
        if let Some(l) = limit {
            if out.len() >= l {
                out.truncate(l);
                break;
            }
        }
        start = end + 1;
    }
    Ok(out)
}

/// Solutions of `P = 0` with all values in `[1, n]`, lexicographic in the
/// name-sorted variables.
pub fn brute_force_solutions(
    p: &Polynomial,
    n: u32,
    injective: bool,
    limit: Option<usize>,
) -> Result<Vec<Witness>> {
    let vars: Vec<Variable> = p.variables().into_iter().collect();
    let tuples = solution_tuples(p, n, injective, limit, EnumerationLimits::default())?;
    Ok(tuples
        .into_iter()
        .map(|t| {
            let assignment: BTreeMap<Variable, BigInt> = vars
                .iter()
                .cloned()
                .zip(t.into_iter().map(BigInt::from))
                .collect();
            debug_assert!(
                !injective || assignment.values().collect::<BTreeSet<_>>().len() == vars.len()
            );
            Witness {
                assignment,
                value: BigInt::zero(),
                provenance: Provenance::BruteForce,
                trace: LiftTrace::default(),
            }
        })
        .collect())
}
