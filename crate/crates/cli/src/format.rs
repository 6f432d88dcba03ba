//! Fixed float formatting for tables.

/// C's `%.9g`: nine significant digits, trailing zeros removed, exponent
/// notation outside `1e-4 <= |x| < 1e9`.
pub fn g9(x: f64) -> String {
    const PRECISION: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    // the exponent after rounding to nine digits decides the style
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Comma-joined `%.9g` row.
pub fn csv_row(values: &[f64]) -> String {
    values.iter().map(|v| g9(*v)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333"),
            (0.947710286158174, "0.947710286"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.9999999999, "10"),
            (1e-300, "1e-300"),
            (-1.5e20, "-1.5e+20"),
            (0.600423599106272, "0.600423599"),
        ];
        for (x, want) in cases {
            assert_eq!(g9(x), want, "{x}");
        }
    }

    #[test]
    fn row_joins_with_commas() {
        assert_eq!(csv_row(&[0.5, 2.0, -0.25]), "0.5,2,-0.25");
    }
}
