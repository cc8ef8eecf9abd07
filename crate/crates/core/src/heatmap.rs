//! Plain (P2) portable graymap rendering of a scan.

use std::fmt::Write as _;

use crate::scan::LandscapeScan;

pub const MAX_GRAY: u32 = 255;

/// One image row per γ value, one column per β value; the minimum maps to
/// black and the maximum to white. A flat scan renders black.
pub fn to_pgm(scan: &LandscapeScan) -> String {
    let res = scan.res();
    let (lo, hi) = scan.range();
    let span = hi - lo;
    let mut out = String::new();
    let _ = writeln!(out, "P2\n{} {}\n{MAX_GRAY}", res.beta, res.gamma);
    for u in 0..res.gamma {
        let row: Vec<String> = scan
            .row(u)
            .iter()
            .map(|&x| {
                let level = if span > 0.0 {
                    ((x - lo) / span * MAX_GRAY as f64).round() as u32
                } else {
                    0
                };
                level.min(MAX_GRAY).to_string()
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
