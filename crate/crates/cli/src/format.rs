//! Numeric output at 12 significant digits.

/// Rounds to 12 significant digits. [`num`] prints the shortest text that
/// parses back to the same value.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> String {
    let r = round12(x);
    let magnitude = r.abs();
    if r == 0.0 {
        "0".to_string()
    } else if !(1e-5..1e16).contains(&magnitude) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), num)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(2.0 / 3.0), "0.666666666667");
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(123456.7890123456), "123456.789012");
        assert_eq!(num(1.234567890123456e-7), "1.23456789012e-7");
        assert_eq!(num(-5.551115123125783e-17), "-5.55111512313e-17");
        assert_eq!(round12(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(opt_num(None), "none");
    }

    #[test]
    fn round_trip_is_exact() {
        for x in [0.1, 2.0 / 3.0, 1e-300, -7.77e12, 0.878_258_851_314_61, 1.0] {
            let printed = num(x);
            let parsed: f64 = printed.parse().unwrap();
            assert_eq!(num(parsed), printed);
            assert_eq!(round12(parsed), parsed);
        }
    }
}
