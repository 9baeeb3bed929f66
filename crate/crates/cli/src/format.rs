//! Number formatting shared by the human and structured outputs.

/// `x` rounded to 10 significant digits, without trailing zeros.
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (9 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Numeric value of [`sig10`], for structured records.
pub fn round10(x: f64) -> f64 {
    sig10(x).parse().unwrap_or(x)
}

pub fn join_sig10(xs: &[f64]) -> String {
    xs.iter().map(|&x| sig10(x)).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig10_examples() {
        assert_eq!(sig10(3.0), "3");
        assert_eq!(sig10(-0.9999999999999998), "-1");
        assert_eq!(sig10(-1e-17), "-0.00000000000000001");
        assert_eq!(sig10(-0.0), "0");
        assert_eq!(sig10(2.855772506626), "2.855772507");
        assert_eq!(sig10(1234567.891234), "1234567.891");
        assert_eq!(sig10(0.000123456789012), "0.000123456789");
        assert_eq!(sig10(0.0), "0");
    }
}
