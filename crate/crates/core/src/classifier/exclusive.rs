use crate::poly::{Polynomial, Variable};

/// Exclusive variables per monomial: a variable is exclusive for monomial `i`
/// when it occurs in monomial `i` and in no other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusiveAssignment {
    /// All exclusive variables of each monomial, sorted by name.
    pub per_monomial: Vec<Vec<Variable>>,
    /// The subset of `per_monomial[i]` with exponent exactly 1.
    pub degree_one: Vec<Vec<Variable>>,
}

impl ExclusiveAssignment {
    pub fn is_complete(&self) -> bool {
        self.per_monomial.iter().all(|v| !v.is_empty())
    }

    pub fn degree_one_counts(&self) -> Vec<usize> {
        self.degree_one.iter().map(Vec::len).collect()
    }
}

/// The exclusive-variable table, whether or not every monomial has one.
pub fn exclusive_table(p: &Polynomial) -> ExclusiveAssignment {
    let k = p.len();
    let mut per_monomial = vec![Vec::new(); k];
    let mut degree_one = vec![Vec::new(); k];
    for var in p.variables() {
        if let [i] = p.support_of(&var)[..] {
            if p.monomials()[i].degree_of(&var) == 1 {
                degree_one[i].push(var.clone());
            }
            per_monomial[i].push(var);
        }
    }
    ExclusiveAssignment {
        per_monomial,
        degree_one,
    }
}

/// The exclusive-variable table if every monomial has at least one.
pub fn exclusive_variables(p: &Polynomial) -> Option<ExclusiveAssignment> {
    let table = exclusive_table(p);
    table.is_complete().then_some(table)
}
