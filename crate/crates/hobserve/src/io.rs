//! File formats and flag parsing: JSON system files, design reports, run
//! manifests, the quaternion literal grammar, and CSV trace output.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::observer::{Method, ObserverDesign};
use crate::quat::{Quat, SimilarityClass};
use crate::realization::StateSpace;
use crate::simulate::SimTrace;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk system description: {"A": [[..]], "B": [..], "C": [..], "D": ..}
/// with quaternions as 4-arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default = "default_format_version")]
    pub format_version: u32,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Quat>>,
    #[serde(rename = "B")]
    pub b: Vec<Quat>,
    #[serde(rename = "C")]
    pub c: Vec<Quat>,
    #[serde(rename = "D")]
    pub d: Quat,
}

fn default_format_version() -> u32 {
    FORMAT_VERSION
}

impl SystemFile {
    pub fn from_system(sys: &StateSpace) -> SystemFile {
        SystemFile {
            format_version: FORMAT_VERSION,
            a: sys.a.clone().into(),
            b: sys.b.column_slice(0),
            c: (0..sys.c.cols()).map(|j| sys.c.get(0, j)).collect(),
            d: sys.d,
        }
    }

    pub fn into_system(self) -> Result<StateSpace> {
        StateSpace::new(
            QMatrix::from_rows(self.a)?,
            QMatrix::column(self.b),
            QMatrix::row_vector(self.c),
            self.d,
        )
    }
}

pub fn read_system(path: &Path) -> Result<StateSpace> {
    let text = std::fs::read_to_string(path)?;
    let file: SystemFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.into_system()
}

/// Serialized observer design.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DesignReport {
    pub format_version: u32,
    pub method: Method,
    pub gain: Vec<Quat>,
    pub gain_companion_coords: Vec<Quat>,
    pub target_coeffs: Vec<Quat>,
    pub achieved_classes: Vec<SimilarityClass>,
    pub stable: bool,
    /// Named residuals/deviations recorded during the design run.
    pub residuals: serde_json::Map<String, Value>,
}

impl DesignReport {
    pub fn from_design(design: &ObserverDesign, residuals: serde_json::Map<String, Value>) -> DesignReport {
        DesignReport {
            format_version: FORMAT_VERSION,
            method: design.method,
            gain: design.gain.column_slice(0),
            gain_companion_coords: design.gain_companion.column_slice(0),
            target_coeffs: design.target.coeffs.clone(),
            achieved_classes: design.achieved.classes.clone(),
            stable: design.achieved.classes.iter().all(|c| c.re < 0.0),
            residuals,
        }
    }

    pub fn gain_matrix(&self) -> QMatrix {
        QMatrix::column(self.gain.clone())
    }
}

pub fn read_design(path: &Path) -> Result<DesignReport> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Every run writes a manifest next to its outputs, including failures.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub format_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input: Option<String>,
    pub options: serde_json::Map<String, Value>,
    pub outputs: Vec<String>,
    pub tolerances: serde_json::Map<String, Value>,
    pub status: String,
    pub exit_code: i32,
}

/// Quaternion literal: `a(+|-)bi(+|-)cj(+|-)dk` with optional terms, e.g.
/// `-1`, `-1+1i`, `-1+0i+1j+0k`, `2.5-0.5k`.
pub fn parse_quat_literal(s: &str) -> Result<Quat> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty quaternion literal".into()));
    }
    let mut q = Quat::ZERO;
    let mut seen = [false; 4];
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        // Optional sign.
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            pos += 1;
        }
        // Digits / dot / exponent.
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if c.is_ascii_digit() || c == '.' {
                pos += 1;
            } else if (c == 'e' || c == 'E')
                && pos + 1 < bytes.len()
                && (bytes[pos + 1].is_ascii_digit() || bytes[pos + 1] == b'+' || bytes[pos + 1] == b'-')
            {
                pos += 2;
            } else {
                break;
            }
        }
        let num_str = &s[start..pos];
        // Unit suffix.
        let (unit, idx) = if pos < bytes.len() {
            match bytes[pos] as char {
                'i' => ('i', 1),
                'j' => ('j', 2),
                'k' => ('k', 3),
                _ => (' ', 0),
            }
        } else {
            (' ', 0)
        };
        if unit != ' ' {
            pos += 1;
        }
        let value: f64 = if num_str.is_empty() || num_str == "+" || num_str == "-" {
            if unit == ' ' {
                return Err(Error::Parse(format!("invalid quaternion literal `{s}`")));
            }
            if num_str == "-" {
                -1.0
            } else {
                1.0
            }
        } else {
            num_str
                .parse()
                .map_err(|_| Error::Parse(format!("invalid number `{num_str}` in `{s}`")))?
        };
        if seen[idx] {
            return Err(Error::Parse(format!("repeated component in `{s}`")));
        }
        seen[idx] = true;
        match idx {
            0 => q.w = value,
            1 => q.x = value,
            2 => q.y = value,
            3 => q.z = value,
            _ => unreachable!(),
        }
        if pos == start {
            return Err(Error::Parse(format!("invalid quaternion literal `{s}`")));
        }
    }
    Ok(q)
}

/// Parse a comma-separated pole list. Complex literals (nonzero i part,
/// zero j and k parts) expand to conjugate pairs; real and fully
/// quaternionic literals pass through unchanged.
pub fn parse_pole_list(s: &str) -> Result<Vec<Quat>> {
    let mut poles = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let q = parse_quat_literal(item)?;
        if q.x != 0.0 && q.y == 0.0 && q.z == 0.0 {
            poles.push(q);
            poles.push(q.conj());
        } else {
            poles.push(q);
        }
    }
    if poles.is_empty() {
        return Err(Error::Parse("empty pole list".into()));
    }
    Ok(poles)
}

/// Parse a comma-separated coefficient list (ascending degree) of
/// quaternion literals.
pub fn parse_coeff_list(s: &str) -> Result<Vec<Quat>> {
    let coeffs: Result<Vec<Quat>> = s
        .split(',')
        .map(|c| parse_quat_literal(c.trim()))
        .collect();
    let coeffs = coeffs?;
    if coeffs.len() < 2 {
        return Err(Error::Parse("polynomial needs at least two coefficients".into()));
    }
    Ok(coeffs)
}

/// Parse a comma-separated quaternion state vector.
pub fn parse_state_vector(s: &str) -> Result<Vec<Quat>> {
    s.split(',').map(|c| parse_quat_literal(c.trim())).collect()
}

/// CSV trace: header `t,x{i}_{w|x|y|z},xhat{i}_{w|x|y|z},err_norm`, one row
/// per step, 17 significant digits.
pub fn write_trace_csv<W: Write>(w: &mut W, trace: &SimTrace) -> Result<()> {
    let n = trace.x.first().map_or(0, |x| x.len());
    let mut header = vec!["t".to_string()];
    for i in 1..=n {
        for comp in ["w", "x", "y", "z"] {
            header.push(format!("x{i}_{comp}"));
        }
    }
    for i in 1..=n {
        for comp in ["w", "x", "y", "z"] {
            header.push(format!("xhat{i}_{comp}"));
        }
    }
    header.push("err_norm".to_string());
    writeln!(w, "{}", header.join(","))?;
    for (step, t) in trace.times.iter().enumerate() {
        let mut row = vec![format!("{:.17e}", t)];
        for q in &trace.x[step] {
            for c in [q.w, q.x, q.y, q.z] {
                row.push(format!("{:.17e}", c));
            }
        }
        for q in &trace.xhat[step] {
            for c in [q.w, q.x, q.y, q.z] {
                row.push(format!("{:.17e}", c));
            }
        }
        row.push(format!("{:.17e}", trace.err_norm[step]));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
