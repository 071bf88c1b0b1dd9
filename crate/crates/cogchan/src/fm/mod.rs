//! Exact-rational Fourier–Motzkin elimination over rate variables with
//! symbolic mutual-information atoms as constants.
//!
//! An inequality is `a·x ≤ b` where `x` are named rate variables with
//! rational coefficients and `b` is a rational combination of formal
//! conditional-MI atoms plus a rational scalar. Atom algebra is purely
//! formal: no information identities are applied during elimination, and
//! equality of constants means equality of the signed atom multisets. The
//! one sanctioned rewrite is a chain-rule merge used when matching a derived
//! system against a theorem's stated form:
//!
//! ```text
//! c·I(G1; B | W) + c·I(G2; B | W ∪ G1)  →  c·I(G1 ∪ G2; B | W)
//! ```
//!
//! Redundancy pruning is certified by exact rational (in)feasibility of the
//! violation system, eliminating every variable — rates and atoms alike —
//! with strictness tracking.

mod parse;
mod thm1;

pub use parse::{format_system, parse_system};
pub use thm1::{derive_thm1, expected_thm1_system, lemma1_system, MatchReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FmError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A formal conditional mutual information `I(A; B | C)` over named
/// variables. Stored with sorted parts and `A ≤ B` lexicographically, since
/// the quantity is symmetric in its first two argument sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    a: Vec<String>,
    b: Vec<String>,
    c: Vec<String>,
}

impl Atom {
    pub fn new(a: &[&str], b: &[&str], c: &[&str]) -> Atom {
        let mut a: Vec<String> = a.iter().map(|s| s.to_string()).collect();
        let mut b: Vec<String> = b.iter().map(|s| s.to_string()).collect();
        let mut c: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        a.sort();
        a.dedup();
        b.sort();
        b.dedup();
        c.sort();
        c.dedup();
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        Atom { a, b, c }
    }

    pub fn parts(&self) -> (&[String], &[String], &[String]) {
        (&self.a, &self.b, &self.c)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({};{}", self.a.join(""), self.b.join(""))?;
        if !self.c.is_empty() {
            write!(f, "|{}", self.c.join(""))?;
        }
        write!(f, ")")
    }
}

/// The constant side of an inequality: a rational combination of atoms plus
/// a rational scalar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Constant {
    pub atoms: BTreeMap<Atom, BigRational>,
    pub scalar: BigRational,
}

impl Constant {
    pub fn zero() -> Constant {
        Constant::default()
    }

    pub fn from_scalar(x: BigRational) -> Constant {
        Constant { atoms: BTreeMap::new(), scalar: x }
    }

    pub fn atom(a: Atom) -> Constant {
        let mut m = BTreeMap::new();
        m.insert(a, BigRational::one());
        Constant { atoms: m, scalar: BigRational::zero() }
    }

    pub fn add_atom(&mut self, a: Atom, coef: BigRational) {
        let entry = self.atoms.entry(a.clone()).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.atoms.remove(&a);
        }
    }

    fn scaled(&self, f: &BigRational) -> Constant {
        if f.is_zero() {
            return Constant::zero();
        }
        Constant {
            atoms: self.atoms.iter().map(|(k, v)| (k.clone(), v * f)).collect(),
            scalar: &self.scalar * f,
        }
    }

    pub fn plus(&self, other: &Constant) -> Constant {
        let mut out = self.clone();
        for (k, v) in &other.atoms {
            out.add_atom(k.clone(), v.clone());
        }
        out.scalar += &other.scalar;
        out
    }

    /// Apply the chain-rule merge table until fixpoint (used only for
    /// matching against a theorem's stated form). The rule works on either
    /// orientation of the symmetric atoms.
    pub fn merge_chain_rule(&self) -> Constant {
        let mut cur = self.clone();
        loop {
            let atoms: Vec<(Atom, BigRational)> =
                cur.atoms.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            let mut merged = None;
            'outer: for (i, (p, cp)) in atoms.iter().enumerate() {
                for (q, cq) in atoms.iter().skip(i + 1) {
                    if cp != cq {
                        continue;
                    }
                    // Orientations: each atom read as I(G; B | C) with
                    // (G, B) either (a, b) or (b, a).
                    let orient = |x: &Atom| {
                        [(x.a.clone(), x.b.clone(), x.c.clone()), (x.b.clone(), x.a.clone(), x.c.clone())]
                    };
                    for (first, second) in [(p, q), (q, p)] {
                        for (g1, b1, c1) in orient(first) {
                            for (g2, b2, c2) in orient(second) {
                                if b1 != b2 {
                                    continue;
                                }
                                let mut want = c1.clone();
                                want.extend(g1.iter().cloned());
                                want.sort();
                                want.dedup();
                                if c2 == want {
                                    let mut g = g1.clone();
                                    g.extend(g2.iter().cloned());
                                    let gr: Vec<&str> = g.iter().map(|s| s.as_str()).collect();
                                    let br: Vec<&str> = b1.iter().map(|s| s.as_str()).collect();
                                    let cr: Vec<&str> = c1.iter().map(|s| s.as_str()).collect();
                                    merged = Some((
                                        first.clone(),
                                        second.clone(),
                                        Atom::new(&gr, &br, &cr),
                                        cp.clone(),
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            match merged {
                Some((p, q, m, coef)) => {
                    cur.add_atom(p, -coef.clone());
                    cur.add_atom(q, -coef.clone());
                    cur.add_atom(m, coef);
                }
                None => return cur,
            }
        }
    }

    /// Substitute numeric values for every atom.
    pub fn instantiate(&self, values: &BTreeMap<Atom, BigRational>) -> Option<Constant> {
        let mut scalar = self.scalar.clone();
        for (a, c) in &self.atoms {
            scalar += c * values.get(a)?;
        }
        Some(Constant::from_scalar(scalar))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (a, c) in &self.atoms {
            if c.is_zero() {
                continue;
            }
            if c.abs() == BigRational::one() {
                write!(f, "{}{}", if c.is_negative() { "-" } else { "+" }, a)?;
            } else {
                write!(f, "{}{}*{}", if c.is_negative() { "-" } else { "+" }, c.abs(), a)?;
            }
            wrote = true;
        }
        if !self.scalar.is_zero() || !wrote {
            if self.scalar.is_negative() {
                write!(f, "-{}", self.scalar.abs())?;
            } else if wrote {
                write!(f, "+{}", self.scalar)?;
            } else {
                write!(f, "{}", self.scalar)?;
            }
        }
        Ok(())
    }
}

/// One inequality `Σ coeffs[i]·vars[i] ≤ constant` (strict when flagged;
/// strictness is internal to the feasibility tester).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub constant: Constant,
    pub strict: bool,
}

impl Inequality {
    /// Canonical form: clear denominators, then divide through by the gcd of
    /// all integer coefficients (variables, atoms, and scalar).
    pub fn normalize(&mut self) {
        let mut denom_lcm = BigInt::one();
        for c in self
            .coeffs
            .iter()
            .chain(self.constant.atoms.values())
            .chain(std::iter::once(&self.constant.scalar))
        {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let scale = BigRational::from(denom_lcm);
        for c in &mut self.coeffs {
            *c *= &scale;
        }
        for v in self.constant.atoms.values_mut() {
            *v *= &scale;
        }
        self.constant.scalar *= &scale;
        let mut g = BigInt::zero();
        for c in self
            .coeffs
            .iter()
            .chain(self.constant.atoms.values())
            .chain(std::iter::once(&self.constant.scalar))
        {
            g = num_integer::gcd(g, c.numer().abs());
        }
        if g > BigInt::one() {
            let down = BigRational::from(g);
            for c in &mut self.coeffs {
                *c /= &down;
            }
            for v in self.constant.atoms.values_mut() {
                *v /= &down;
            }
            self.constant.scalar /= &down;
        }
    }

    fn is_trivially_true(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
            && self.constant.atoms.is_empty()
            && (self.constant.scalar > BigRational::zero()
                || (!self.strict && self.constant.scalar.is_zero()))
    }
}

/// A system of inequalities over ordered rate variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearInequalitySystem {
    pub vars: Vec<String>,
    pub rows: Vec<Inequality>,
}

impl LinearInequalitySystem {
    pub fn new(vars: &[&str]) -> Self {
        LinearInequalitySystem { vars: vars.iter().map(|s| s.to_string()).collect(), rows: vec![] }
    }

    pub fn var_index(&self, name: &str) -> Result<usize, FmError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| FmError::UnknownVariable(name.to_string()))
    }

    /// Add `Σ coeff·var ≤ constant` given sparse integer coefficients.
    pub fn add(&mut self, terms: &[(&str, i64)], constant: Constant) -> Result<(), FmError> {
        let mut coeffs = vec![BigRational::zero(); self.vars.len()];
        for (name, c) in terms {
            let i = self.var_index(name)?;
            coeffs[i] += BigRational::from(BigInt::from(*c));
        }
        self.rows.push(Inequality { coeffs, constant, strict: false });
        Ok(())
    }

    pub fn normalize(&mut self) {
        for r in &mut self.rows {
            r.normalize();
        }
        self.rows.sort_by(row_order);
        self.rows.dedup();
        self.rows.retain(|r| !r.is_trivially_true());
    }

    /// Fourier–Motzkin elimination of one variable: combine every positive
    /// row with every negative row; rows not mentioning the variable carry
    /// over. Atoms add as formal multisets.
    pub fn eliminate(&self, var: &str) -> Result<LinearInequalitySystem, FmError> {
        let vi = self.var_index(var)?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for row in &self.rows {
            let c = &row.coeffs[vi];
            if c.is_zero() {
                rest.push(row.clone());
            } else if c > &BigRational::zero() {
                pos.push(row.clone());
            } else {
                neg.push(row.clone());
            }
        }
        let mut out = LinearInequalitySystem {
            vars: self
                .vars
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != vi)
                .map(|(_, v)| v.clone())
                .collect(),
            rows: Vec::new(),
        };
        let drop_var = |row: &Inequality| -> Inequality {
            Inequality {
                coeffs: row
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != vi)
                    .map(|(_, c)| c.clone())
                    .collect(),
                constant: row.constant.clone(),
                strict: row.strict,
            }
        };
        for row in &rest {
            out.rows.push(drop_var(row));
        }
        for p in &pos {
            for n in &neg {
                let cp = p.coeffs[vi].clone();
                let cn = -n.coeffs[vi].clone();
                // cn·p + cp·n cancels the variable.
                let mut coeffs = Vec::with_capacity(self.vars.len().saturating_sub(1));
                for i in 0..self.vars.len() {
                    if i == vi {
                        continue;
                    }
                    coeffs.push(&p.coeffs[i] * &cn + &n.coeffs[i] * &cp);
                }
                let constant = p.constant.scaled(&cn).plus(&n.constant.scaled(&cp));
                out.rows.push(Inequality { coeffs, constant, strict: p.strict || n.strict });
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Is the system — with every atom treated as a free variable, subject
    /// to `assumptions` — infeasible over the rationals?
    pub fn infeasible(&self, assumptions: &[Inequality]) -> bool {
        let mut atoms: Vec<Atom> = Vec::new();
        for r in self.rows.iter().chain(assumptions.iter()) {
            for a in r.constant.atoms.keys() {
                if !atoms.contains(a) {
                    atoms.push(a.clone());
                }
            }
        }
        let nv = self.vars.len();
        let total = nv + atoms.len();
        let lift = |r: &Inequality| -> Inequality {
            // a·x ≤ Σ c_k·atom_k + s  becomes  a·x − Σ c_k·atom_k ≤ s.
            let mut coeffs = vec![BigRational::zero(); total];
            coeffs[..r.coeffs.len()].clone_from_slice(&r.coeffs);
            for (k, a) in atoms.iter().enumerate() {
                if let Some(c) = r.constant.atoms.get(a) {
                    coeffs[nv + k] = -c.clone();
                }
            }
            Inequality {
                coeffs,
                constant: Constant::from_scalar(r.constant.scalar.clone()),
                strict: r.strict,
            }
        };
        let mut sys = LinearInequalitySystem {
            vars: (0..total).map(|i| format!("v{i}")).collect(),
            rows: self.rows.iter().chain(assumptions.iter()).map(lift).collect(),
        };
        let false_row = |r: &Inequality| {
            r.coeffs.iter().all(|c| c.is_zero())
                && r.constant.atoms.is_empty()
                && (r.constant.scalar < BigRational::zero()
                    || (r.strict && r.constant.scalar.is_zero()))
        };
        if sys.rows.iter().any(false_row) {
            return true;
        }
        for _ in 0..total {
            let name = sys.vars[0].clone();
            sys = sys.eliminate(&name).expect("variable present");
            if sys.rows.iter().any(false_row) {
                return true;
            }
        }
        false
    }

    /// Remove rows implied by the remaining rows plus `assumptions`
    /// (inequalities over the same variables and atoms, e.g. nonnegativity
    /// of rates or of single MI atoms). Implication of `g·x ≤ h` is
    /// certified exactly: the violation system `{rest, g·x > h}` must be
    /// infeasible. Rows are visited in canonical order, so the result is
    /// deterministic.
    pub fn prune(&self, assumptions: &[Inequality]) -> LinearInequalitySystem {
        let mut sys = self.clone();
        sys.normalize();
        let mut keep: Vec<bool> = vec![true; sys.rows.len()];
        for i in 0..sys.rows.len() {
            let row = &sys.rows[i];
            // Violation row: g·x > h encoded as -(g·x) < -(h).
            let viol = Inequality {
                coeffs: row.coeffs.iter().map(|c| -c.clone()).collect(),
                constant: row.constant.scaled(&-BigRational::one()),
                strict: true,
            };
            let rest: Vec<Inequality> = sys
                .rows
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && keep[*k])
                .map(|(_, r)| r.clone())
                .chain(std::iter::once(viol))
                .collect();
            let test = LinearInequalitySystem { vars: sys.vars.clone(), rows: rest };
            if test.infeasible(assumptions) {
                keep[i] = false;
            }
        }
        let rows =
            sys.rows.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
        LinearInequalitySystem { vars: sys.vars, rows }
    }

    /// Substitute numeric atom values into every row.
    pub fn instantiate(
        &self,
        values: &BTreeMap<Atom, BigRational>,
    ) -> Option<LinearInequalitySystem> {
        let rows: Option<Vec<Inequality>> = self
            .rows
            .iter()
            .map(|r| {
                Some(Inequality {
                    coeffs: r.coeffs.clone(),
                    constant: r.constant.instantiate(values)?,
                    strict: r.strict,
                })
            })
            .collect();
        Some(LinearInequalitySystem { vars: self.vars.clone(), rows: rows? })
    }

    /// Nonnegativity assumptions `var ≥ 0` for the named variables.
    pub fn nonneg_assumptions(&self, names: &[&str]) -> Result<Vec<Inequality>, FmError> {
        let mut out = Vec::new();
        for name in names {
            let i = self.var_index(name)?;
            let mut coeffs = vec![BigRational::zero(); self.vars.len()];
            coeffs[i] = -BigRational::one();
            out.push(Inequality { coeffs, constant: Constant::zero(), strict: false });
        }
        Ok(out)
    }
}

fn row_order(a: &Inequality, b: &Inequality) -> std::cmp::Ordering {
    format!("{a:?}").cmp(&format!("{b:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar(x: i64) -> Constant {
        Constant::from_scalar(BigRational::from(BigInt::from(x)))
    }

    #[test]
    fn textbook_elimination() {
        // {x <= A, -x <= 0, y - x <= B}  eliminate x  ->  {0 <= A, y <= A + B}
        let mut sys = LinearInequalitySystem::new(&["x", "y"]);
        let a = Constant::atom(Atom::new(&["A"], &["W"], &[]));
        let b = Constant::atom(Atom::new(&["B"], &["W"], &[]));
        sys.add(&[("x", 1)], a).unwrap();
        sys.add(&[("x", -1)], Constant::zero()).unwrap();
        sys.add(&[("y", 1), ("x", -1)], b).unwrap();
        let out = sys.eliminate("x").unwrap();
        assert_eq!(out.vars, vec!["y".to_string()]);
        assert_eq!(out.rows.len(), 2);
        // One row binds y by A + B, the other is the sign fact 0 <= A.
        let has_sum = out.rows.iter().any(|r| r.constant.atoms.len() == 2);
        let has_sign = out.rows.iter().any(|r| {
            r.coeffs.iter().all(|c| c.is_zero()) && r.constant.atoms.len() == 1
        });
        assert!(has_sum && has_sign);
    }

    #[test]
    fn eliminate_empty_system() {
        let sys = LinearInequalitySystem::new(&["x"]);
        let out = sys.eliminate("x").unwrap();
        assert!(out.rows.is_empty());
    }

    #[test]
    fn prune_duplicates_and_dominated() {
        let mut sys = LinearInequalitySystem::new(&["x"]);
        sys.add(&[("x", 1)], scalar(2)).unwrap();
        sys.add(&[("x", 1)], scalar(2)).unwrap();
        sys.add(&[("x", 2)], scalar(10)).unwrap(); // implied by x <= 2
        let pruned = sys.prune(&[]);
        assert_eq!(pruned.rows.len(), 1);
    }

    #[test]
    fn prune_zero_leq_atom_under_nonneg() {
        // 0 <= A is pruned once A >= 0 is assumed.
        let mut sys = LinearInequalitySystem::new(&["x"]);
        let atom = Atom::new(&["A"], &["W"], &[]);
        let mut lhs = Constant::zero();
        lhs.add_atom(atom.clone(), BigRational::one());
        sys.add(&[], lhs).unwrap();
        sys.add(&[("x", 1)], scalar(1)).unwrap();
        // Assumption: -A <= 0.
        let mut neg = Constant::zero();
        neg.add_atom(atom, BigRational::one());
        let assume = Inequality {
            coeffs: vec![BigRational::zero()],
            constant: neg,
            strict: false,
        };
        // The assumption row reads 0·x <= A, i.e. A >= 0.
        let pruned = sys.prune(&[assume]);
        assert_eq!(pruned.rows.len(), 1, "{}", format_system(&pruned));
    }

    #[test]
    fn chain_rule_merge() {
        let mut c = Constant::zero();
        c.add_atom(Atom::new(&["T", "U"], &["S"], &["X1"]), -BigRational::one());
        c.add_atom(Atom::new(&["V"], &["S"], &["T", "U", "X1"]), -BigRational::one());
        let merged = c.merge_chain_rule();
        assert_eq!(merged.atoms.len(), 1);
        let (atom, coef) = merged.atoms.iter().next().unwrap();
        assert_eq!(*coef, -BigRational::one());
        assert_eq!(*atom, Atom::new(&["T", "U", "V"], &["S"], &["X1"]));
    }

    #[test]
    fn soundness_on_random_numeric_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let mut sys = LinearInequalitySystem::new(&["x", "y", "z"]);
            for _ in 0..6 {
                let t: Vec<(&str, i64)> = vec![
                    ("x", rng.gen_range(-3..=3)),
                    ("y", rng.gen_range(-3..=3)),
                    ("z", rng.gen_range(-3..=3)),
                ];
                sys.add(&t, scalar(rng.gen_range(0..8))).unwrap();
            }
            let projected = sys.eliminate("z").unwrap();
            for _ in 0..200 {
                let p: Vec<BigRational> =
                    (0..3).map(|_| BigRational::from(BigInt::from(rng.gen_range(-4..=4)))).collect();
                let sat_in = sys.rows.iter().all(|r| {
                    let lhs: BigRational = r.coeffs.iter().zip(&p).map(|(c, v)| c * v).sum();
                    lhs <= r.constant.scalar
                });
                if !sat_in {
                    continue;
                }
                for r in &projected.rows {
                    let lhs: BigRational =
                        r.coeffs.iter().zip(p.iter().take(2)).map(|(c, v)| c * v).sum();
                    assert!(lhs <= r.constant.scalar, "projection unsound");
                }
            }
        }
    }

    #[test]
    fn completeness_every_output_point_lifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let mut sys = LinearInequalitySystem::new(&["x", "y", "z"]);
            sys.add(&[("z", 1)], scalar(5)).unwrap();
            sys.add(&[("z", -1)], scalar(5)).unwrap();
            for _ in 0..5 {
                let t: Vec<(&str, i64)> = vec![
                    ("x", rng.gen_range(-2..=2)),
                    ("y", rng.gen_range(-2..=2)),
                    ("z", rng.gen_range(-2..=2)),
                ];
                sys.add(&t, scalar(rng.gen_range(0..6))).unwrap();
            }
            let projected = sys.eliminate("z").unwrap();
            let zi = sys.var_index("z").unwrap();
            for _ in 0..100 {
                let pt: Vec<BigRational> =
                    (0..2).map(|_| BigRational::from(BigInt::from(rng.gen_range(-4..=4)))).collect();
                let sat_out = projected.rows.iter().all(|r| {
                    let lhs: BigRational = r.coeffs.iter().zip(&pt).map(|(c, v)| c * v).sum();
                    lhs <= r.constant.scalar
                });
                if !sat_out {
                    continue;
                }
                let mut lo: Option<BigRational> = None;
                let mut hi: Option<BigRational> = None;
                let mut ok = true;
                for r in &sys.rows {
                    let cz = &r.coeffs[zi];
                    let fixed: BigRational = r
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != zi)
                        .map(|(i, c)| c * &pt[if i < zi { i } else { i - 1 }])
                        .sum();
                    let slack = &r.constant.scalar - fixed;
                    if cz.is_zero() {
                        ok &= slack >= BigRational::zero();
                    } else if cz > &BigRational::zero() {
                        let bound = slack / cz;
                        hi = Some(hi.map_or(bound.clone(), |h: BigRational| h.min(bound)));
                    } else {
                        let bound = slack / cz;
                        lo = Some(lo.map_or(bound.clone(), |l: BigRational| l.max(bound)));
                    }
                }
                assert!(ok, "zero-coefficient row fails at an output point");
                if let (Some(lo), Some(hi)) = (lo, hi) {
                    assert!(lo <= hi, "output point does not lift");
                }
            }
        }
    }
}
