//! Known results about specific small polynomials, matched up to renaming of
//! variables and overall sign. These are reported as notes only.

use std::collections::BTreeMap;

use crate::poly::{Polynomial, Variable};

const KNOWN: &[(&str, &str)] = &[
    (
        "x*y + x*z - y*z",
        "known result (Csikvari, Gyarmati, Sarkozy): partition regular, in fact injectively, \
         although it has no exclusive variables; not used as a certificate",
    ),
    (
        "x + y - z^2",
        "known result (Csikvari, Gyarmati, Sarkozy): not partition regular on N even though \
         Rado's condition holds; not used as a certificate",
    ),
];

pub(super) fn notes_for(p: &Polynomial) -> Vec<String> {
    KNOWN
        .iter()
        .filter(|(text, _)| {
            let known: Polynomial = text.parse().expect("valid literature polynomial");
            equivalent_up_to_renaming(p, &known)
        })
        .map(|(_, note)| note.to_string())
        .collect()
}

fn equivalent_up_to_renaming(p: &Polynomial, q: &Polynomial) -> bool {
    let pv: Vec<Variable> = p.variables().into_iter().collect();
    let qv: Vec<Variable> = q.variables().into_iter().collect();
    if pv.len() != qv.len() || p.len() != q.len() || pv.len() > 6 {
        return false;
    }
    let negated = q.negated();
    permutations(qv.len()).into_iter().any(|perm| {
        let map: BTreeMap<Variable, Variable> = pv
            .iter()
            .cloned()
            .zip(perm.iter().map(|&i| qv[i].clone()))
            .collect();
        match p.rename(&map) {
            Ok(r) => r == *q || r == negated,
            Err(_) => false,
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(pos, n - 1);
            out.push(perm);
        }
    }
    out
}
