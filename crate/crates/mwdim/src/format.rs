//! Number formatting shared by the text outputs.

/// `x` with 12 significant digits, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.11e}");
        match s.split_once('e') {
            Some((m, exp)) => format!("{}e{exp}", trim(m.to_string())),
            None => s,
        }
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Largest multiple of 0.001 not above `x`.
pub fn round_down3(x: f64) -> f64 {
    (x * 1000.0).floor() / 1000.0
}

/// Smallest multiple of 0.001 not below `x`.
pub fn round_up3(x: f64) -> f64 {
    (x * 1000.0).ceil() / 1000.0
}

/// `lo < dim < hi` with the ends rounded outward to three decimals.
pub fn bracket(lo: f64, hi: f64) -> String {
    format!("{:.3} < dim < {:.3}", round_down3(lo), round_up3(hi))
}
