use abcalc::C64;

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, exponents like `1e-3+2e-1i`).
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("invalid complex literal '{s}' (expected a+bi)");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5+0.4i").unwrap(), C64::new(0.5, 0.4));
        assert_eq!(parse_complex("-1-2i").unwrap(), C64::new(-1.0, -2.0));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), C64::new(1e-3, 0.2));
        assert_eq!(parse_complex("1e-3").unwrap(), C64::new(1e-3, 0.0));
        assert_eq!(parse_complex("-2.5e+1i").unwrap(), C64::new(0.0, -25.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }
}
