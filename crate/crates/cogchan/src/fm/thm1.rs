//! Re-derivation of the main inner bound from the rate-splitting region.
//!
//! The rate-splitting region lives in (R1, R21, R22) with R2 = R21 + R22;
//! eliminating R21 and R22 must reproduce the five (R1, R2) bounds of the
//! main inner bound plus the validity condition on the private layer — an
//! exact syntactic match after canonicalization and the chain-rule merge.

use super::{Atom, Constant, Inequality, LinearInequalitySystem};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

fn mi(a: &[&str], b: &[&str], c: &[&str]) -> Constant {
    Constant::atom(Atom::new(a, b, c))
}

fn minus(mut lhs: Constant, rhs: Constant) -> Constant {
    for (k, v) in rhs.atoms {
        lhs.add_atom(k, -v);
    }
    lhs.scalar -= rhs.scalar;
    lhs
}

/// The rate-splitting achievable system over (R1, R2, R21, R22):
/// five mutual-information bounds, split-rate nonnegativity, and the
/// coupling R2 = R21 + R22.
pub fn lemma1_system() -> LinearInequalitySystem {
    let mut sys = LinearInequalitySystem::new(&["R1", "R2", "R21", "R22"]);
    let a = minus(mi(&["T", "U", "X1"], &["Y"], &[]), mi(&["T", "U"], &["S"], &["X1"]));
    let b = minus(
        mi(&["V"], &["Z"], &["U", "T", "X1"]),
        mi(&["V"], &["S"], &["U", "T", "X1"]),
    );
    let c = minus(
        mi(&["U", "V"], &["Z"], &["X1", "T"]),
        mi(&["U", "V"], &["S"], &["X1", "T"]),
    );
    let d = minus(
        mi(&["T", "U", "V"], &["Z"], &["X1"]),
        mi(&["T", "U", "V"], &["S"], &["X1"]),
    );
    let e = minus(
        mi(&["T", "U", "V", "X1"], &["Z"], &[]),
        mi(&["T", "U", "V"], &["S"], &["X1"]),
    );
    sys.add(&[("R1", 1), ("R21", 1)], a).unwrap();
    sys.add(&[("R22", 1)], b).unwrap();
    sys.add(&[("R21", 1), ("R22", 1)], c).unwrap();
    sys.add(&[("R21", 1), ("R22", 1)], d).unwrap();
    sys.add(&[("R1", 1), ("R21", 1), ("R22", 1)], e).unwrap();
    sys.add(&[("R21", -1)], Constant::zero()).unwrap();
    sys.add(&[("R22", -1)], Constant::zero()).unwrap();
    sys.add(&[("R2", 1), ("R21", -1), ("R22", -1)], Constant::zero()).unwrap();
    sys.add(&[("R2", -1), ("R21", 1), ("R22", 1)], Constant::zero()).unwrap();
    sys
}

/// The main inner bound's stated system over (R1, R2): five bounds plus the
/// validity condition as the constant row `0 ≤ I(V;Z|UTX1) − I(V;S|UTX1)`.
pub fn expected_thm1_system() -> LinearInequalitySystem {
    let mut sys = LinearInequalitySystem::new(&["R1", "R2"]);
    sys.add(
        &[("R1", 1)],
        minus(mi(&["X1", "T", "U"], &["Y"], &[]), mi(&["T", "U"], &["S"], &["X1"])),
    )
    .unwrap();
    sys.add(
        &[("R2", 1)],
        minus(
            mi(&["U", "V"], &["Z"], &["X1", "T"]),
            mi(&["U", "V"], &["S"], &["X1", "T"]),
        ),
    )
    .unwrap();
    sys.add(
        &[("R2", 1)],
        minus(
            mi(&["T", "U", "V"], &["Z"], &["X1"]),
            mi(&["T", "U", "V"], &["S"], &["X1"]),
        ),
    )
    .unwrap();
    sys.add(
        &[("R1", 1), ("R2", 1)],
        minus(
            mi(&["X1", "T", "U", "V"], &["Z"], &[]),
            mi(&["T", "U", "V"], &["S"], &["X1"]),
        ),
    )
    .unwrap();
    let mut sum_b = mi(&["X1", "T", "U"], &["Y"], &[]);
    sum_b = sum_b.plus(&mi(&["V"], &["Z"], &["X1", "T", "U"]));
    sum_b = minus(sum_b, mi(&["T", "U", "V"], &["S"], &["X1"]));
    sys.add(&[("R1", 1), ("R2", 1)], sum_b).unwrap();
    sys.add(
        &[],
        minus(
            mi(&["V"], &["Z"], &["U", "T", "X1"]),
            mi(&["V"], &["S"], &["U", "T", "X1"]),
        ),
    )
    .unwrap();
    sys
}

/// Outcome of matching a derived system against an expected one.
#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub matched: Vec<String>,
    pub extra: Vec<String>,
    pub missing: Vec<String>,
}

impl MatchReport {
    pub fn exact(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

fn canonical_rows(sys: &LinearInequalitySystem) -> Vec<(Vec<BigRational>, String)> {
    let mut rows: Vec<(Vec<BigRational>, String)> = sys
        .rows
        .iter()
        .map(|r| {
            let mut row = Inequality {
                coeffs: r.coeffs.clone(),
                constant: r.constant.merge_chain_rule(),
                strict: r.strict,
            };
            row.normalize();
            let key = format!(
                "{} | {}",
                row.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
                row.constant
            );
            (row.coeffs, key)
        })
        .collect();
    rows.sort_by(|a, b| a.1.cmp(&b.1));
    rows
}

/// Eliminate R21 and R22 from a rate-splitting system, prune redundancy
/// under rate nonnegativity, and match against the expected inner bound.
pub fn project_and_match(
    lemma: &LinearInequalitySystem,
) -> (LinearInequalitySystem, MatchReport) {
    let after_r21 = lemma.eliminate("R21").expect("R21 present");
    let after_r22 = after_r21.eliminate("R22").expect("R22 present");
    let assumptions = after_r22
        .nonneg_assumptions(&["R1", "R2"])
        .expect("rate variables present");
    let pruned = after_r22.prune(&assumptions);
    let derived = canonical_rows(&pruned);
    let expected = canonical_rows(&expected_thm1_system());
    let mut matched = Vec::new();
    let mut extra = Vec::new();
    let mut missing = Vec::new();
    for (_, key) in &derived {
        if expected.iter().any(|(_, k)| k == key) {
            matched.push(key.clone());
        } else {
            extra.push(key.clone());
        }
    }
    for (_, key) in &expected {
        if !derived.iter().any(|(_, k)| k == key) {
            missing.push(key.clone());
        }
    }
    (pruned, MatchReport { matched, extra, missing })
}

/// Full derivation: build the rate-splitting system internally, eliminate,
/// prune, and report the match against the stated inner bound.
pub fn derive_thm1() -> (LinearInequalitySystem, MatchReport) {
    project_and_match(&lemma1_system())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::format_system;

    #[test]
    fn derivation_matches_exactly() {
        let (sys, report) = derive_thm1();
        assert!(
            report.exact(),
            "extra: {:?}, missing: {:?}\n{}",
            report.extra,
            report.missing,
            format_system(&sys)
        );
        assert_eq!(report.matched.len(), 6);
        assert_eq!(sys.rows.len(), 6);
    }

    #[test]
    fn dropping_a_facet_breaks_the_match() {
        let mut lemma = lemma1_system();
        // Remove the R22 >= 0 facet: the projection changes shape.
        let before = lemma.rows.len();
        lemma.rows.retain(|r| {
            !(r.coeffs[3] == -BigRational::one()
                && r.coeffs.iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() == 1)
        });
        assert_eq!(lemma.rows.len(), before - 1);
        let (_, report) = project_and_match(&lemma);
        assert!(!report.exact());
    }
}
