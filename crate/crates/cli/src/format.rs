//! Fixed-format number rendering shared by CSV and text output.

/// Significant digits in every CSV cell.
pub const CSV_SIG_DIGITS: usize = 12;
/// Significant digits in human-readable reports.
pub const REPORT_SIG_DIGITS: usize = 4;

/// Plain decimal (never exponent) with `sig` significant digits.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sig = sig.max(1);
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Drop the sign of values that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn fmt_csv(x: f64) -> String {
    fmt_sig(x, CSV_SIG_DIGITS)
}

/// Report rendering: 4 significant figures, or shortest round-trip form.
pub fn fmt_report(x: f64, full: bool) -> String {
    if full {
        format!("{x:?}")
    } else {
        fmt_sig(x, REPORT_SIG_DIGITS)
    }
}
