//! Figure datasets as CSV: the qubit coherence split over the Bloch ball at
//! `x = 0.4` (fig2), the `z` sweep at `x = 0.4, y = 0.2` (fig3) and the
//! bit-flip duality sweep (fig5).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::basis::Basis;
use crate::channels::bitflip_duality_sweep;
use crate::coherence::{qubit_split, Axis};
use crate::error::{QcohError, Result};
use crate::qstate::BlochVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig5,
}

impl FromStr for Figure {
    type Err = QcohError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig5" => Ok(Figure::Fig5),
            other => Err(QcohError::InvalidArgument(format!("unknown figure {other:?}; expected fig2, fig3 or fig5"))),
        }
    }
}

pub const FIG2_HEADER: &[&str] = &["y", "z", "C", "C_comp", "res_comp", "C_x", "res_x"];
pub const FIG3_HEADER: &[&str] = &["z", "C", "C_comp", "res_comp", "C_x", "res_x"];
pub const FIG5_HEADER: &[&str] = &["p", "wave", "particle", "entanglement"];

pub const FIG_X: f64 = 0.4;
pub const FIG3_Y: f64 = 0.2;
pub const FIG2_STEP: f64 = 0.02;
pub const FIG3_STEP: f64 = 0.005;
pub const FIG5_STEP: f64 = 0.01;

/// `(C, C_comp, res_comp, C_x, res_x)` for one Bloch vector.
fn split_row(v: BlochVector) -> Result<[f64; 5]> {
    let z = qubit_split(v, Axis::Z)?;
    let x = qubit_split(v, Axis::X)?;
    Ok([z.total, z.basis_part, z.residual, x.basis_part, x.residual])
}

fn inside(x: f64, y: f64, z: f64) -> bool {
    x * x + y * y + z * z <= 1.0 + crate::tol::BLOCH
}

pub fn fig2_rows() -> Result<Vec<Vec<f64>>> {
    let n = (1.0 / FIG2_STEP).round() as i64;
    let mut rows = Vec::new();
    for iy in -n..=n {
        let y = iy as f64 * FIG2_STEP;
        for iz in -n..=n {
            let z = iz as f64 * FIG2_STEP;
            if !inside(FIG_X, y, z) {
                continue;
            }
            let s = split_row(BlochVector::new(FIG_X, y, z)?)?;
            rows.push([&[y, z][..], &s[..]].concat());
        }
    }
    Ok(rows)
}

pub fn fig3_rows() -> Result<Vec<Vec<f64>>> {
    let zmax = (1.0 - FIG_X * FIG_X - FIG3_Y * FIG3_Y).sqrt();
    let n = (zmax / FIG3_STEP + 1e-9).floor() as i64;
    (-n..=n)
        .map(|k| {
            let z = k as f64 * FIG3_STEP;
            let s = split_row(BlochVector::new(FIG_X, FIG3_Y, z)?)?;
            Ok([&[z][..], &s[..]].concat())
        })
        .collect()
}

pub fn fig5_rows() -> Result<Vec<Vec<f64>>> {
    let n = (1.0 / FIG5_STEP).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    Ok(bitflip_duality_sweep(&grid, &Basis::computational(2))?
        .into_iter()
        .map(|r| vec![r.p, r.wave, r.particle, r.entanglement])
        .collect())
}

pub fn figure_rows(which: Figure) -> Result<(&'static [&'static str], Vec<Vec<f64>>)> {
    Ok(match which {
        Figure::Fig2 => (FIG2_HEADER, fig2_rows()?),
        Figure::Fig3 => (FIG3_HEADER, fig3_rows()?),
        Figure::Fig5 => (FIG5_HEADER, fig5_rows()?),
    })
}

/// `%.10g`: ten significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-5, 1e10)`.
pub fn format_sig10(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    // rounding can bump the exponent (9.9999999999 -> 10.00000000)
    let exp = {
        let s = format!("{:.9e}", v);
        s.split('e').nth(1).and_then(|e| e.parse::<i32>().ok()).unwrap_or(exp)
    };
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, v);
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{:.9e}", v);
        let (mant, e) = s.split_once('e').unwrap();
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        let e: i32 = e.parse().unwrap();
        format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    }
}

pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|&v| format_sig10(v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn figure_csv(which: Figure) -> Result<String> {
    let (header, rows) = figure_rows(which)?;
    Ok(to_csv(header, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig10_formatting() {
        assert_eq!(format_sig10(0.0), "0");
        assert_eq!(format_sig10(1.0), "1");
        assert_eq!(format_sig10(-0.02), "-0.02");
        assert_eq!(format_sig10(0.118709155), "0.118709155");
        assert_eq!(format_sig10(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_sig10(2.0f64.sqrt()), "1.414213562");
        assert_eq!(format_sig10(1.23456789012e-7), "1.23456789e-07");
        assert_eq!(format_sig10(-1e-12), "-1e-12");
        assert_eq!(format_sig10(9.99999999999), "10");
        assert_eq!(format_sig10(-1e-17 * 0.0), "0");
    }

    #[test]
    fn figure_names() {
        assert_eq!("fig3".parse::<Figure>().unwrap(), Figure::Fig3);
        assert!("fig4".parse::<Figure>().is_err());
    }

    #[test]
    fn grid_extents() {
        let f3 = fig3_rows().unwrap();
        assert_eq!(f3.len(), 357);
        assert!((f3[0][0] + 0.89).abs() < 1e-12);
        assert_eq!(fig5_rows().unwrap().len(), 101);
        let f2 = fig2_rows().unwrap();
        assert!(f2.iter().all(|r| FIG_X * FIG_X + r[0] * r[0] + r[1] * r[1] <= 1.0 + 1e-12));
        let has = |y: f64, z: f64| f2.iter().any(|r| (r[0] - y).abs() < 1e-12 && (r[1] - z).abs() < 1e-12);
        assert!(has(0.0, 0.9) && !has(0.0, 0.92) && has(0.9, 0.0));
    }
}
