//! Default parameter choices for the lifts.
//!
//! Reduct solutions are found by depth-first search over positive integers up
//! to a bound, solving for the last entry. The product variables and the
//! nonlinear variables then receive distinct primes larger than every value
//! already in use; with reduct entries pairwise distinct and at least 2 this
//! makes the lifted solution injective.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use super::{
    nlp_lift, p_tilde, reduct_lift, to_lev_form, Result, Witness, WitnessError,
};
use crate::classifier::{exclusive_variables, NonlinearPayload};
use crate::poly::Polynomial;

pub const DEFAULT_REDUCT_BOUND: u32 = 20;
const NODE_BUDGET: u64 = 20_000_000;

/// First positive solution of `sum a_i alpha_i = 0` in lexicographic order
/// with entries in `[1, bound]`, or in `[2, bound]` pairwise distinct when
/// `injective` is set.
pub fn find_reduct_solution(coeffs: &[BigInt], bound: u32, injective: bool) -> Option<Vec<BigInt>> {
    let a: Vec<i128> = coeffs.iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
    if a.is_empty() || a.iter().any(|&c| c == 0 || c.unsigned_abs() > (1u128 << 80)) {
        return None;
    }
    let lo: i128 = if injective { 2 } else { 1 };
    let hi = bound as i128;
    if hi < lo {
        return None;
    }
    // suffix ranges of sum_{j >= i} a_j v_j with v_j in [lo, hi]
    let k = a.len();
    let mut min_suffix = vec![0i128; k + 1];
    let mut max_suffix = vec![0i128; k + 1];
    for i in (0..k).rev() {
        let (x, y) = (a[i] * lo, a[i] * hi);
        min_suffix[i] = min_suffix[i + 1] + x.min(y);
        max_suffix[i] = max_suffix[i + 1] + x.max(y);
    }
    let mut search = ReductSearch {
        a: &a,
        lo,
        hi,
        injective,
        min_suffix,
        max_suffix,
        values: Vec::with_capacity(k),
        nodes: 0,
    };
    if search.dfs(0) {
        Some(search.values.into_iter().map(BigInt::from).collect())
    } else {
        None
    }
}

struct ReductSearch<'a> {
    a: &'a [i128],
    lo: i128,
    hi: i128,
    injective: bool,
    min_suffix: Vec<i128>,
    max_suffix: Vec<i128>,
    values: Vec<i128>,
    nodes: u64,
}

impl ReductSearch<'_> {
    fn dfs(&mut self, partial: i128) -> bool {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return false;
        }
        let i = self.values.len();
        let k = self.a.len();
        let need = -partial;
        if need < self.min_suffix[i] || need > self.max_suffix[i] {
            return false;
        }
        if i + 1 == k {
            if need % self.a[i] != 0 {
                return false;
            }
            let v = need / self.a[i];
            if v < self.lo || v > self.hi || (self.injective && self.values.contains(&v)) {
                return false;
            }
            self.values.push(v);
            return true;
        }
        for v in self.lo..=self.hi {
            if self.injective && self.values.contains(&v) {
                continue;
            }
            self.values.push(v);
            if self.dfs(partial + self.a[i] * v) {
                return true;
            }
            self.values.pop();
            if self.nodes > NODE_BUDGET {
                return false;
            }
        }
        false
    }
}

fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(n) = n.to_u64() {
        if n < 4 {
            return true;
        }
        if n % 2 == 0 {
            return false;
        }
        let r = n.sqrt();
        return (3..=r).step_by(2).all(|d| n % d != 0);
    }
    let r = n.sqrt();
    let mut d = BigInt::from(2);
    while d <= r {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// The `count` smallest primes strictly greater than `min`.
pub fn primes_above(min: &BigInt, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut n = min + BigInt::one();
    while out.len() < count {
        if is_prime(&n) {
            out.push(n.clone());
        }
        n += 1;
    }
    out
}

/// Solution of an l.e.v. polynomial with exclusive variables (linear
/// polynomials included) through the reduct lift. Prefers an injective
/// solution.
pub fn reduct_witness(p: &Polynomial) -> Result<Witness> {
    if !p.is_lev() {
        return Err(WitnessError::NotLev);
    }
    let ex = exclusive_variables(p).ok_or(WitnessError::NoExclusiveSet)?;
    let form = to_lev_form(p, &ex)?;
    let alpha = find_reduct_solution(&form.coefficients, DEFAULT_REDUCT_BOUND, true)
        .or_else(|| find_reduct_solution(&form.coefficients, DEFAULT_REDUCT_BOUND, false))
        .ok_or(WitnessError::NoReductSolution(DEFAULT_REDUCT_BOUND))?;
    let max = alpha.iter().max().cloned().unwrap_or_else(BigInt::one);
    let y = primes_above(&max, form.product_vars.len());
    reduct_lift(&form, &alpha, &y)
}

/// Solution of a polynomial certified by the nonlinear criterion: solve
/// `P-tilde` through the reduct lift, then lift with primes for the
/// nonlinear variables.
pub fn nlp_witness(p: &Polynomial, payload: &NonlinearPayload) -> Result<Witness> {
    let tilde = p_tilde(p, payload)?;
    let base = reduct_witness(&tilde)?;
    let max = base
        .assignment
        .values()
        .max()
        .cloned()
        .unwrap_or_else(BigInt::one);
    let g = primes_above(&max, payload.nonlinear.len());
    debug_assert_eq!(g.iter().collect::<BTreeSet<_>>().len(), g.len());
    nlp_lift(p, payload, &base.assignment, &g)
}
