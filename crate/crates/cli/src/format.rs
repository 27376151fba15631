//! Number and CSV rendering shared by all subcommands.

use std::fmt::Write;

/// `printf("%.9g", v)`.
pub fn g9(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    const PRECISION: i32 = 9;
    // the exponent after rounding to nine significant digits
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        strip_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.9g`, or the empty string for an absent value.
pub fn opt_g9(v: Option<f64>) -> String {
    v.map(g9).unwrap_or_default()
}

/// Comma-joined CSV line with a trailing `\n`. Fields are numbers or
/// fixed identifiers and never need quoting.
pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (i, f) in fields.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(f.as_ref());
    }
    out.push('\n');
    out
}

/// Fixed six-decimal rendering used for single-value reports.
pub fn fixed6(v: f64) -> String {
    let mut s = String::new();
    write!(s, "{v:.6}").expect("write to string");
    s
}
