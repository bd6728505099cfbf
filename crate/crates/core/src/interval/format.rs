//! Directed decimal rendering of interval endpoints: 17 significant digits,
//! lower endpoints rounded toward −∞ and upper endpoints toward +∞, so the
//! printed interval always encloses the stored one.

pub const SIGNIFICANT_DIGITS: usize = 17;

/// Exact decimal digits of `|x|` and the decimal exponent of the first digit.
fn exact_digits(x: f64) -> (Vec<u8>, i32) {
    // 767 fractional digits cover the longest exact expansion of a double.
    let s = format!("{:.767e}", x.abs());
    let (mant, exp) = s.split_once('e').expect("exponent marker");
    let digits = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    (digits, exp.parse().expect("exponent"))
}

/// Significant digits of `|x|`, truncated (`away == false`) or rounded away
/// from zero (`away == true`).
fn directed_digits(x: f64, away: bool) -> (Vec<u8>, i32) {
    let (digits, mut exp) = exact_digits(x);
    let mut head: Vec<u8> = digits[..SIGNIFICANT_DIGITS].to_vec();
    let inexact = digits[SIGNIFICANT_DIGITS..].iter().any(|&d| d != 0);
    if away && inexact {
        let mut k = head.len();
        loop {
            if k == 0 {
                head.insert(0, 1);
                head.pop();
                exp += 1;
                break;
            }
            k -= 1;
            if head[k] == 9 {
                head[k] = 0;
            } else {
                head[k] += 1;
                break;
            }
        }
    }
    (head, exp)
}

fn render(negative: bool, digits: &[u8], exp: i32) -> String {
    let d: String = digits.iter().map(|&v| char::from(b'0' + v)).collect();
    let sign = if negative { "-" } else { "" };
    if (-5..=16).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            format!("{sign}{}.{}", &d[..int_len], &d[int_len..])
                .trim_end_matches('.')
                .to_string()
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("{sign}0.{zeros}{d}")
        }
    } else {
        format!("{sign}{}.{}e{exp}", &d[..1], &d[1..])
    }
}

fn format_directed(x: f64, toward_neg_inf: bool) -> String {
    if x == 0.0 {
        return render(false, &[0; SIGNIFICANT_DIGITS], 0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let negative = x < 0.0;
    // Rounding toward −∞ moves negative numbers away from zero.
    let away = negative == toward_neg_inf;
    let (digits, exp) = directed_digits(x, away);
    render(negative, &digits, exp)
}

/// Largest 17-digit decimal not above `x`.
pub fn format_down(x: f64) -> String {
    format_directed(x, true)
}

/// Smallest 17-digit decimal not below `x`.
pub fn format_up(x: f64) -> String {
    format_directed(x, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> f64 {
        s.parse().unwrap()
    }

    #[test]
    fn exact_values_print_identically() {
        assert_eq!(format_down(1.5), "1.5000000000000000");
        assert_eq!(format_up(-2.0), "-2.0000000000000000");
        assert_eq!(format_down(0.0), "0.0000000000000000");
        assert_eq!(format_up(0.25), "0.25000000000000000");
    }

    #[test]
    fn inexact_values_are_directed() {
        // 0.1 is slightly above 1/10 in binary.
        assert_eq!(format_down(0.1), "0.10000000000000000");
        assert_eq!(format_up(0.1), "0.10000000000000001");
        assert_eq!(format_down(-0.1), "-0.10000000000000001");
        assert_eq!(format_up(-0.1), "-0.10000000000000000");
    }

    #[test]
    fn carry_propagates() {
        let x = 0.999_999_999_999_999_9_f64; // rounds to a double just below 1
        let up = format_up(x);
        assert!(parse(&up) >= x);
    }

    #[test]
    fn scientific_for_extremes() {
        assert!(format_down(1e-300).contains('e'));
        assert!(format_up(6.02e23).contains('e'));
        assert!(parse(&format_down(1e-300)) <= 1e-300);
    }

    #[test]
    fn directed_bounds_bracket_the_value() {
        for &x in &[
            std::f64::consts::PI,
            -std::f64::consts::E,
            1.0 / 3.0,
            -1e-7 / 3.0,
            12345.678,
        ] {
            assert!(parse(&format_down(x)) <= x);
            assert!(parse(&format_up(x)) >= x);
        }
    }
}
