//! Lossless text encoding of `f64` as C-style hexadecimal float literals
//! (`0x1.8p+1` is 3.0). Only the canonical form written by [`format`] is
//! accepted back by [`parse`].

const FRAC_BITS: u32 = 52;
const FRAC_MASK: u64 = (1 << FRAC_BITS) - 1;
const FRAC_DIGITS: usize = 13;
const EXP_BIAS: i64 = 1023;

pub fn format(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> FRAC_BITS) & 0x7ff) as i64;
    let frac = bits & FRAC_MASK;
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    let dot = if digits.is_empty() { "" } else { "." };
    match (biased, frac) {
        (0, 0) => format!("{sign}0x0p+0"),
        (0, _) => format!("{sign}0x0{dot}{digits}p-1022"),
        _ => format!("{sign}0x1{dot}{digits}p{:+}", biased - EXP_BIAS),
    }
}

pub fn parse(s: &str) -> Option<f64> {
    match s {
        "nan" => return Some(f64::NAN),
        "inf" => return Some(f64::INFINITY),
        "-inf" => return Some(f64::NEG_INFINITY),
        _ => {}
    }
    let (negative, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let rest = rest.strip_prefix("0x")?;
    let (mantissa, exponent) = rest.split_once('p')?;
    if !exponent.starts_with(['+', '-']) {
        return None;
    }
    let exponent: i64 = exponent.parse().ok()?;
    let (lead, digits) = match mantissa.split_once('.') {
        Some((lead, digits)) if !digits.is_empty() => (lead, digits),
        Some(_) => return None,
        None => (mantissa, ""),
    };
    if digits.len() > FRAC_DIGITS || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    let frac = if digits.is_empty() {
        0
    } else {
        u64::from_str_radix(digits, 16).ok()? << (4 * (FRAC_DIGITS - digits.len()))
    };
    let magnitude = match lead {
        "1" if (-1022..=1023).contains(&exponent) => {
            (((exponent + EXP_BIAS) as u64) << FRAC_BITS) | frac
        }
        "0" if frac == 0 && exponent == 0 => 0,
        "0" if frac != 0 && exponent == -1022 => frac,
        _ => return None,
    };
    let sign = if negative { 1u64 << 63 } else { 0 };
    Some(f64::from_bits(sign | magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert_eq!(format(3.0), "0x1.8p+1");
        assert_eq!(format(1.0), "0x1p+0");
        assert_eq!(format(0.5), "0x1p-1");
        assert_eq!(format(0.0), "0x0p+0");
        assert_eq!(format(-0.0), "-0x0p+0");
        assert_eq!(format(f64::MIN_POSITIVE / 2.0), "0x0.8p-1022");
        assert_eq!(parse("0x1.8p+1"), Some(3.0));
        assert_eq!(parse("-0x1p-1"), Some(-0.5));
    }

    #[test]
    fn rejects_non_canonical_text() {
        for bad in ["", "1.5", "0x1.8", "0x2p+0", "0x1.p+0", "0x1.8p1", "0x0.8p-1021", "0x1.zzp+0"] {
            assert_eq!(parse(bad), None, "{bad}");
        }
    }

    proptest! {
        #[test]
        fn round_trips_every_non_nan_bit_pattern(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(!x.is_nan());
            let back = parse(&format(x)).unwrap();
            prop_assert_eq!(back.to_bits(), bits);
        }
    }
}
