//! Text format for inequality systems: a `vars:` header, then one
//! inequality per line as `<coeffs> | <signed atoms or rational>`.
//!
//! ```text
//! vars: R1 R2
//! 1 0 | +I(TUX1;Y)-I(TU;S|X1)
//! 1 1 | 3/2
//! ```

use super::{Atom, Constant, FmError, Inequality, LinearInequalitySystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

pub fn format_system(sys: &LinearInequalitySystem) -> String {
    let mut out = format!("vars: {}\n", sys.vars.join(" "));
    for row in &sys.rows {
        let coeffs: Vec<String> = row.coeffs.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{} | {}\n", coeffs.join(" "), row.constant));
    }
    out
}

pub fn parse_system(text: &str) -> Result<LinearInequalitySystem, FmError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| FmError::Parse("empty input".into()))?;
    let header = header
        .trim()
        .strip_prefix("vars:")
        .ok_or_else(|| FmError::Parse("missing vars: header".into()))?;
    let vars: Vec<&str> = header.split_whitespace().collect();
    let mut sys = LinearInequalitySystem::new(&vars);
    for line in lines {
        let (lhs, rhs) = line
            .split_once('|')
            .ok_or_else(|| FmError::Parse(format!("missing | in {line:?}")))?;
        let coeffs: Result<Vec<BigRational>, FmError> =
            lhs.split_whitespace().map(parse_rational).collect();
        let coeffs = coeffs?;
        if coeffs.len() != sys.vars.len() {
            return Err(FmError::Parse(format!(
                "expected {} coefficients in {line:?}",
                sys.vars.len()
            )));
        }
        let constant = parse_constant(rhs.trim())?;
        sys.rows.push(Inequality { coeffs, constant, strict: false });
    }
    Ok(sys)
}

fn parse_rational(s: &str) -> Result<BigRational, FmError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| FmError::Parse(format!("bad number {s:?}")))?;
    let d = BigInt::from_str(den).map_err(|_| FmError::Parse(format!("bad number {s:?}")))?;
    if d.is_zero() {
        return Err(FmError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

fn parse_constant(s: &str) -> Result<Constant, FmError> {
    if !s.contains('I') {
        return Ok(Constant::from_scalar(parse_rational(s)?));
    }
    let mut out = Constant::zero();
    let bytes = s.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut sign = BigRational::one();
        if c == '+' {
            i += 1;
        } else if c == '-' {
            sign = -sign;
            i += 1;
        }
        // Optional rational multiplier like 3/2*.
        let rest = &s[i..];
        if let Some(star) = rest.find('*') {
            if rest[..star].chars().all(|ch| ch.is_ascii_digit() || ch == '/') && star > 0 {
                sign *= parse_rational(&rest[..star])?;
                i += star + 1;
            }
        }
        let rest = &s[i..];
        if !rest.starts_with("I(") {
            return Err(FmError::Parse(format!("expected atom at {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| FmError::Parse(format!("unclosed atom at {rest:?}")))?;
        let inner = &rest[2..close];
        out.add_atom(parse_atom(inner)?, sign);
        i += close + 1;
    }
    Ok(out)
}

fn parse_atom(inner: &str) -> Result<Atom, FmError> {
    let (ab, c) = match inner.split_once('|') {
        Some((ab, c)) => (ab, Some(c)),
        None => (inner, None),
    };
    let (a, b) = ab
        .split_once(';')
        .ok_or_else(|| FmError::Parse(format!("atom missing ';' in {inner:?}")))?;
    let names = |part: &str| -> Result<Vec<String>, FmError> {
        let mut out = Vec::new();
        let mut cur = String::new();
        for ch in part.chars() {
            if ch.is_ascii_uppercase() {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                cur.push(ch);
            } else if ch.is_ascii_digit() && !cur.is_empty() {
                cur.push(ch);
            } else if !ch.is_whitespace() {
                return Err(FmError::Parse(format!("bad variable name in {part:?}")));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        Ok(out)
    };
    let av = names(a)?;
    let bv = names(b)?;
    let cv = match c {
        Some(c) => names(c)?,
        None => vec![],
    };
    let ar: Vec<&str> = av.iter().map(|s| s.as_str()).collect();
    let br: Vec<&str> = bv.iter().map(|s| s.as_str()).collect();
    let cr: Vec<&str> = cv.iter().map(|s| s.as_str()).collect();
    Ok(Atom::new(&ar, &br, &cr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "vars: R1 R2\n1 0 | +I(TUX1;Y)-I(TU;S|X1)\n1 1 | 3/2\n0 1 | -2\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.rows.len(), 3);
        let printed = format_system(&sys);
        let back = parse_system(&printed).unwrap();
        assert_eq!(sys, back);
    }

    #[test]
    fn atom_canonicalization_in_parse() {
        // Symmetric arguments normalize to one representative.
        let a = parse_constant("+I(Y;TUX1)").unwrap();
        let b = parse_constant("+I(TUX1;Y)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_coefficients() {
        let c = parse_constant("+3/2*I(A;B)-I(B;C)").unwrap();
        assert_eq!(c.atoms.len(), 2);
    }
}
