//! Text forms for complex numbers: `1.5`, `-0.3i`, `0.5+0.25i`, `1e-3-2e-2i`,
//! `i`, `-i`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parses a complex literal. A trailing `i` marks the imaginary term; the real
/// term, when present, comes first: `a`, `bi`, `a+bi`, `a-bi`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let bad = || Error::Parse(format!("cannot read `{s}` as a complex number"));

    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Either pure imaginary or real+imaginary; split at the sign that
        // starts the imaginary term (not a leading sign, not an exponent sign).
        if let Some(pos) = split_point(body) {
            let re: f64 = body[..pos].parse().map_err(|_| bad())?;
            let im = parse_signed_unit(&body[pos..]).ok_or_else(bad)?;
            return finite(Complex64::new(re, im), s);
        }
        let im = parse_signed_unit(body).ok_or_else(bad)?;
        return finite(Complex64::new(0.0, im), s);
    }

    let re: f64 = s.parse().map_err(|_| bad())?;
    finite(Complex64::new(re, 0.0), s)
}

/// Coefficient of the imaginary unit: "", "+", "-" or any float literal.
fn parse_signed_unit(body: &str) -> Option<f64> {
    match body {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        other => other.parse().ok(),
    }
}

/// Position of the `+`/`-` separating real and imaginary terms, if any.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    for pos in (1..bytes.len()).rev() {
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            let prev = bytes[pos - 1];
            if prev != b'e' && prev != b'E' {
                return Some(pos);
            }
        }
    }
    None
}

fn finite(z: Complex64, s: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Parse(format!("`{s}` is not finite")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(s: &str) -> Complex64 {
        parse_complex(s).unwrap()
    }

    #[test]
    fn real_only() {
        assert_eq!(ok("1.5"), Complex64::new(1.5, 0.0));
        assert_eq!(ok("-2"), Complex64::new(-2.0, 0.0));
        assert_eq!(ok("1e-3"), Complex64::new(1e-3, 0.0));
    }

    #[test]
    fn imaginary_only() {
        assert_eq!(ok("0.3i"), Complex64::new(0.0, 0.3));
        assert_eq!(ok("-0.75i"), Complex64::new(0.0, -0.75));
        assert_eq!(ok("i"), Complex64::new(0.0, 1.0));
        assert_eq!(ok("-i"), Complex64::new(0.0, -1.0));
        assert_eq!(ok("+i"), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn full_literals() {
        assert_eq!(ok("0.5+0.25i"), Complex64::new(0.5, 0.25));
        assert_eq!(ok("0.5-0.25i"), Complex64::new(0.5, -0.25));
        assert_eq!(ok("-0.5-i"), Complex64::new(-0.5, -1.0));
        assert_eq!(ok("1e-3-2e-2i"), Complex64::new(1e-3, -2e-2));
        assert_eq!(ok(" 0.3 "), Complex64::new(0.3, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1+2", "i2", "1++2i", "nan", "infi"] {
            assert!(parse_complex(s).is_err(), "accepted `{s}`");
        }
    }
}
